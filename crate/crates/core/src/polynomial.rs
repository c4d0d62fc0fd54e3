//! Sparse bivariate polynomials with arbitrary-precision integer coefficients.
//!
//! `x` marks a Left (vertical) domino and `y` a Right (horizontal) domino, so
//! the coefficient of `x^a * y^b` in a census polynomial is the number of
//! positions with `a` Left pieces and `b` Right pieces.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exponent pair `(a, b)` of the monomial `x^a * y^b`.
pub type Exponents = (u32, u32);

/// A polynomial in `x` and `y` with integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    terms: BTreeMap<Exponents, BigInt>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `coeff * x^a * y^b`.
    pub fn monomial(coeff: impl Into<BigInt>, a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((a, b), coeff.into());
        p
    }

    /// Builds a polynomial from `(a, b, coeff)` triples; repeated exponent
    /// pairs are summed.
    pub fn from_terms<C, I>(terms: I) -> Self
    where
        C: Into<BigInt>,
        I: IntoIterator<Item = (u32, u32, C)>,
    {
        let mut p = Self::zero();
        for (a, b, c) in terms {
            p.add_term((a, b), c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^a * y^b` (zero when absent).
    pub fn coeff(&self, a: u32, b: u32) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Terms in ascending `(a, b)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Exponents, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Largest exponent of `x` among the terms, if any.
    pub fn max_x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    pub fn max_y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    fn add_term(&mut self, exps: Exponents, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += a * b` without materializing the product.
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        for (&(ea, fa), ca) in &a.terms {
            for (&(eb, fb), cb) in &b.terms {
                let key = (ea + eb, fa + fb);
                match self.terms.entry(key) {
                    Entry::Vacant(v) => {
                        v.insert(ca * cb);
                    }
                    Entry::Occupied(mut o) => {
                        *o.get_mut() += ca * cb;
                    }
                }
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// Exact evaluation at `(x, y) = (xv, yv)`.
    pub fn eval(&self, xv: &BigInt, yv: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c * num_traits::pow(xv.clone(), a as usize) * num_traits::pow(yv.clone(), b as usize))
            .sum()
    }

    /// Sum of all coefficients, i.e. the value at `(1, 1)`.
    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes `y = x`, giving the univariate polynomial in `t` whose
    /// coefficient of `t^k` is the sum of coefficients with `a + b = k`.
    pub fn collapse(&self) -> UnivariatePolynomial {
        let mut coeffs: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            *coeffs.entry(a + b).or_default() += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        UnivariatePolynomial { coeffs }
    }

    /// Keeps the terms with `|a - b + offset| <= 1`.
    ///
    /// With `offset = 0` these are the play positions: the piece counts of the
    /// two players differ by at most one.
    pub fn play_filter(&self, offset: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(&(a, b), _)| (a as i64 - b as i64 + offset).abs() <= 1)
            .map(|(&e, c)| (e, c.clone()))
            .collect();
        Self { terms }
    }

    /// Exchanges `x` and `y`.
    pub fn swap_vars(&self) -> Self {
        let terms = self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect();
        Self { terms }
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// First term (in descending display order) carrying a negative
    /// coefficient.
    pub fn first_negative(&self) -> Option<(Exponents, &BigInt)> {
        self.terms.iter().rev().find(|(_, c)| c.is_negative()).map(|(&e, c)| (e, c))
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariatePolynomial({self})")
    }
}

/// Terms in descending `x` exponent, then descending `y` exponent, written
/// `C*x^A*y^B` with unit coefficients and exponents elided.
impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            let mut factors: Vec<String> = Vec::with_capacity(3);
            if !mag.is_one() || (a == 0 && b == 0) {
                factors.push(mag.to_string());
            }
            match a {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{a}")),
            }
            match b {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{b}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Parses the display syntax. Also accepts juxtaposed factors and braced
/// exponents (`46x^3y^2`, `x^{10}y^{11}`), so printed tables can be pasted in
/// directly.
impl FromStr for BivariatePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::PolyParse("empty input".into()));
        }
        let mut p = Self::zero();
        let mut i = 0;
        let err = |msg: &str, at: usize| Error::PolyParse(format!("{msg} at offset {at} in {s:?}"));

        let read_int = |i: &mut usize| -> Option<BigInt> {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            (start < *i).then(|| chars[start..*i].iter().collect::<String>().parse().unwrap())
        };

        while i < chars.len() {
            let mut sign = BigInt::one();
            if i == 0 && chars[i] == '-' {
                sign = -sign;
                i += 1;
            } else if i > 0 {
                match chars[i] {
                    '+' => i += 1,
                    '-' => {
                        sign = -sign;
                        i += 1;
                    }
                    _ => return Err(err("expected '+' or '-'", i)),
                }
            }
            let lead = read_int(&mut i);
            let mut saw_factor = lead.is_some();
            let mut coeff = lead.unwrap_or_else(BigInt::one);
            let (mut a, mut b) = (0u32, 0u32);
            loop {
                if i < chars.len() && chars[i] == '*' {
                    i += 1;
                }
                if i >= chars.len() {
                    break;
                }
                let var = chars[i];
                if var != 'x' && var != 'y' {
                    if chars[i].is_ascii_digit() {
                        let more = read_int(&mut i).unwrap();
                        coeff *= more;
                        saw_factor = true;
                        continue;
                    }
                    break;
                }
                i += 1;
                let mut exp = 1u32;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let braced = i < chars.len() && chars[i] == '{';
                    if braced {
                        i += 1;
                    }
                    let e = read_int(&mut i).ok_or_else(|| err("expected exponent", i))?;
                    exp = u32::try_from(e).map_err(|_| err("exponent too large", i))?;
                    if braced {
                        if i >= chars.len() || chars[i] != '}' {
                            return Err(err("expected '}'", i));
                        }
                        i += 1;
                    }
                }
                if var == 'x' {
                    a += exp;
                } else {
                    b += exp;
                }
                saw_factor = true;
            }
            if !saw_factor {
                return Err(err("empty term", i));
            }
            p.add_term((a, b), sign * coeff);
        }
        Ok(p)
    }
}

impl AddAssign<&BivariatePolynomial> for BivariatePolynomial {
    fn add_assign(&mut self, rhs: &BivariatePolynomial) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(mut self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        self += &rhs;
        self
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn neg(self) -> BivariatePolynomial {
        let terms = self.terms.iter().map(|(&e, c)| (e, -c)).collect();
        BivariatePolynomial { terms }
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Sub for BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn sub(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self - &rhs
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Mul for BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn mul(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for BivariatePolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for BivariatePolynomial {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| &acc * &p)
    }
}

/// A polynomial in a single variable `t`, produced by [`BivariatePolynomial::collapse`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnivariatePolynomial {
    coeffs: BTreeMap<u32, BigInt>,
}

impl UnivariatePolynomial {
    pub fn from_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = (u32, C)>) -> Self {
        let mut map: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (k, c) in coeffs {
            *map.entry(k).or_default() += c.into();
        }
        map.retain(|_, c| !c.is_zero());
        Self { coeffs: map }
    }

    pub fn coeff(&self, k: u32) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BivariatePolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p("1+x") + &BivariatePolynomial::zero(), p("1+x"));
        assert_eq!(&p("y+1") + &p("y"), p("2y+1"));
        assert_eq!(&p("x^2+2x") + &p("2y+1"), p("x^2+2x+2y+1"));
    }

    #[test]
    fn add_term_merge_matches_explicit_map() {
        let left = [((2, 0), 1), ((1, 0), 2)];
        let right = [((0, 1), 2), ((0, 0), 1), ((1, 0), -2)];
        let mut merged: BTreeMap<Exponents, i64> = BTreeMap::new();
        for (e, c) in left.iter().chain(right.iter()) {
            *merged.entry(*e).or_default() += c;
        }
        merged.retain(|_, c| *c != 0);
        let expected = BivariatePolynomial::from_terms(merged.into_iter().map(|((a, b), c)| (a, b, c)));
        let lp = BivariatePolynomial::from_terms(left.iter().map(|&((a, b), c)| (a, b, c)));
        let rp = BivariatePolynomial::from_terms(right.iter().map(|&((a, b), c)| (a, b, c)));
        assert_eq!(&lp + &rp, expected);
        assert_eq!((&lp + &rp).coeff(1, 0), BigInt::zero());
    }

    #[test]
    fn mul_and_identity() {
        assert_eq!(&p("1+x") * &p("1+y"), p("1+x+y+xy"));
        assert_eq!(&p("3x^2y+y") * &BivariatePolynomial::one(), p("3x^2y+y"));
        assert!((&p("1+x") * &BivariatePolynomial::zero()).is_zero());
    }

    #[test]
    fn eval_and_total() {
        let d22 = p("1+2x+2y+x^2+y^2");
        assert_eq!(d22.eval(&1.into(), &1.into()), BigInt::from(7));
        assert_eq!(d22.total(), BigInt::from(7));
        assert_eq!(BivariatePolynomial::one().eval(&5.into(), &(-3).into()), BigInt::one());
        assert_eq!(p("x^2y").eval(&2.into(), &3.into()), BigInt::from(12));
    }

    #[test]
    fn collapse_merges_total_degrees() {
        assert_eq!(p("x+y").collapse(), UnivariatePolynomial::from_coeffs([(1, 2)]));
        let c = p("1+2x+2y+x^2+y^2").collapse();
        assert_eq!(c, UnivariatePolynomial::from_coeffs([(0, 1), (1, 4), (2, 2)]));
        assert_eq!(c.leading_coeff(), Some(&BigInt::from(2)));
        assert_eq!(c.degree(), Some(2));
    }

    #[test]
    fn play_filter_with_offset() {
        let q = p("x^3 + x^2y + xy + y^2 + 1");
        assert_eq!(q.play_filter(0), p("x^2y + xy + 1"));
        assert_eq!(q.play_filter(-1), p("x^2y + xy + 1"));
        assert_eq!(q.play_filter(2), p("y^2"));
        assert_eq!(BivariatePolynomial::one().play_filter(0), BivariatePolynomial::one());
    }

    #[test]
    fn swap_and_sub() {
        assert_eq!(p("x^2y").swap_vars(), p("xy^2"));
        assert_eq!(p("1+y").swap_vars(), p("1+x"));
        let q = p("3x^4y + 2");
        assert!((&q - &q).is_zero());
        let d = &p("x") - &p("2x + y");
        assert_eq!(d, p("-x - y"));
        assert!(!d.has_nonnegative_coefficients());
        assert_eq!(d.first_negative().map(|(e, _)| e), Some((1, 0)));
    }

    #[test]
    fn display_order_and_syntax() {
        assert_eq!(p("y^3 + 2x^2 + 2x^2y").to_string(), "2*x^2*y + 2*x^2 + y^3");
        assert_eq!(p("1 + 9x^5 + x^6").to_string(), "x^6 + 9*x^5 + 1");
        assert_eq!(BivariatePolynomial::zero().to_string(), "0");
        assert_eq!(p("-x + 1").to_string(), "-x + 1");
        assert_eq!(p("x - 2y").to_string(), "x - 2*y");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("x^{10}y^{11} + 17"), BivariatePolynomial::from_terms([(10, 11, 1), (0, 0, 17)]));
        assert_eq!(p("2*x*y^2"), p("2xy^2"));
        assert_eq!(p("x*2"), p("2x"));
        assert!("".parse::<BivariatePolynomial>().is_err());
        assert!("x++y".parse::<BivariatePolynomial>().is_err());
        assert!("x^".parse::<BivariatePolynomial>().is_err());
        assert!("z".parse::<BivariatePolynomial>().is_err());
    }

    #[test]
    fn big_coefficients_survive() {
        let big: BigInt = "424273291301040427702718109".parse().unwrap();
        let q = BivariatePolynomial::monomial(big.clone(), 3, 1);
        assert_eq!((&q + &q).coeff(3, 1), &big * 2);
        assert_eq!(q.to_string().parse::<BivariatePolynomial>().unwrap(), q);
    }
}
