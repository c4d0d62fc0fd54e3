//! Named position counts: all positions, maximal positions, Left and Right
//! ends, play positions, and mid-game analysis.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::barstate::{BarFamily, BarStates, LabelProjection};
use crate::board::{board_poly, chain_poly, components, Board};
use crate::error::{Error, Result};
use crate::polymatrix::{label_digits, PolyMatrix};
use crate::polynomial::BivariatePolynomial as Poly;

/// A class of positions to count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CensusKind {
    /// Every legal placement of non-overlapping dominoes.
    All,
    /// Neither player can move.
    Maximal,
    /// Right (horizontal) cannot move.
    RightEnd,
    /// Left (vertical) cannot move.
    LeftEnd,
}

impl CensusKind {
    pub const ALL: [CensusKind; 4] = [CensusKind::All, CensusKind::Maximal, CensusKind::RightEnd, CensusKind::LeftEnd];

    pub fn name(self) -> &'static str {
        match self {
            CensusKind::All => "all",
            CensusKind::Maximal => "maximal",
            CensusKind::RightEnd => "right-end",
            CensusKind::LeftEnd => "left-end",
        }
    }
}

impl fmt::Display for CensusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CensusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CensusKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidPattern(format!("unknown census kind {s:?}")))
    }
}

/// One line of the play-position table for the `n x n` board.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayRow {
    pub n: usize,
    pub play: BigInt,
    pub all: BigInt,
    /// `play / all` truncated to five decimals, or `"1"` when they are equal.
    pub ratio: String,
}

/// A component of a position together with its polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub board: Board,
    pub poly: Poly,
}

/// Decomposition of a position into independent components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionReport {
    pub components: Vec<ComponentReport>,
    /// Product of the component polynomials: all positions reachable from here.
    pub product: Poly,
    /// `product` restricted to play positions.
    pub play: Poly,
}

impl PositionReport {
    /// Number of vertical moves available to Left right now.
    pub fn left_moves(&self) -> BigInt {
        self.product.coeff(1, 0)
    }

    /// Number of horizontal moves available to Right right now.
    pub fn right_moves(&self) -> BigInt {
        self.product.coeff(0, 1)
    }
}

/// `play / all` truncated (never rounded) to five decimals.
pub fn truncated_ratio(play: &BigInt, all: &BigInt) -> String {
    if play == all {
        return "1".to_string();
    }
    let scaled: BigInt = play * BigInt::from(100_000) / all;
    format!("0.{scaled:0>5}")
}

/// Census entry points over a shared bar-state cache.
#[derive(Clone, Copy, Debug)]
pub struct Census<'a> {
    bars: &'a BarStates,
}

impl Census<'static> {
    /// Census over the process-wide cache.
    pub fn global() -> Self {
        Census { bars: BarStates::global() }
    }
}

impl<'a> Census<'a> {
    pub fn new(bars: &'a BarStates) -> Self {
        Census { bars }
    }

    pub fn bars(&self) -> &'a BarStates {
        self.bars
    }

    /// All positions on the `m x n` board: entry (1, 1) of `G_{0,n}^m`.
    pub fn rect_general(&self, m: usize, n: usize) -> Result<Poly> {
        check_size(m, n)?;
        if m == 1 {
            return self.single_row(BarFamily::General, n, LabelProjection::Fix(0));
        }
        let bar = self.bars.general(n)?;
        Ok(top_left_of_powers(&bar.g0, m).pop().expect("m >= 1"))
    }

    /// Maximal positions on the `m x n` board.
    ///
    /// Sums entries `(r, 1)` of `(M_{0,n} + M'_{0,n})^m` over the rows `r`
    /// whose label `r - 1` has no ternary digit 2: the top edge is all 0 and
    /// each bottom edge label may be 0 or 1.
    pub fn rect_maximal(&self, m: usize, n: usize) -> Result<Poly> {
        check_size(m, n)?;
        if m == 1 {
            return self.single_row(BarFamily::Maximal, n, LabelProjection::Sum(vec![0, 1]));
        }
        let bar = self.bars.maximal(n)?;
        let stacked = bar.boundary();
        let mut column = unit_vector(stacked.rows());
        for _ in 0..m {
            column = stacked.mul_vector(&column)?;
        }
        Ok(column
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !label_digits(*i, 3, n).contains(&2))
            .map(|(_, p)| p)
            .sum())
    }

    /// Right ends on the `m x n` board: entry (1, 1) of `(RE_{0,n} + RE'_{0,n})^m`.
    pub fn rect_right_ends(&self, m: usize, n: usize) -> Result<Poly> {
        check_size(m, n)?;
        if m == 1 {
            return self.single_row(BarFamily::RightEnd, n, LabelProjection::Fix(0));
        }
        let bar = self.bars.right_end(n)?;
        Ok(top_left_of_powers(&bar.boundary(), m).pop().expect("m >= 1"))
    }

    /// Left ends on `m x n` are Right ends on `n x m` with the players swapped.
    pub fn rect_left_ends(&self, m: usize, n: usize) -> Result<Poly> {
        Ok(self.rect_right_ends(n, m)?.swap_vars())
    }

    // A `1 x n` board needs only the projection of one bar onto all-zero top
    // labels, so the full matrix is never built.
    fn single_row(&self, family: BarFamily, n: usize, bottom: LabelProjection) -> Result<Poly> {
        let m = self.bars.projected(family, &vec![bottom; n], &vec![LabelProjection::Fix(0); n])?;
        m.entry(1, 1)
    }

    pub fn rect(&self, kind: CensusKind, m: usize, n: usize) -> Result<Poly> {
        match kind {
            CensusKind::All => self.rect_general(m, n),
            CensusKind::Maximal => self.rect_maximal(m, n),
            CensusKind::RightEnd => self.rect_right_ends(m, n),
            CensusKind::LeftEnd => self.rect_left_ends(m, n),
        }
    }

    /// Positions that are a Left end or a Right end (or both).
    pub fn ends_union(&self, m: usize, n: usize) -> Result<Poly> {
        let left = self.rect_left_ends(m, n)?;
        let right = self.rect_right_ends(m, n)?;
        let both = self.rect_maximal(m, n)?;
        let union = &(&left + &right) - &both;
        if let Some(((a, b), c)) = union.first_negative() {
            return Err(Error::NegativeCoefficient { context: "ends union", a, b, coeff: c.to_string() });
        }
        Ok(union)
    }

    /// Polynomial of an arbitrary board for any kind.
    ///
    /// Left ends use the transposed board's Right ends with the players
    /// swapped.
    pub fn board(&self, kind: CensusKind, b: &Board) -> Result<Poly> {
        match kind {
            CensusKind::All => board_poly(b, self.bars),
            CensusKind::Maximal => chain_poly(b, BarFamily::Maximal, self.bars),
            CensusKind::RightEnd => chain_poly(b, BarFamily::RightEnd, self.bars),
            CensusKind::LeftEnd => Ok(chain_poly(&b.transpose(), BarFamily::RightEnd, self.bars)?.swap_vars()),
        }
    }

    /// Play-position counts for `1 x 1` through `n_max x n_max`, computed
    /// lazily one row at a time.
    pub fn play_rows(&self, n_max: usize) -> impl Iterator<Item = Result<PlayRow>> + 'a {
        let census = *self;
        (1..=n_max).map(move |n| {
            let all = census.rect_general(n, n)?;
            let play = all.play_filter(0).total();
            let all = all.total();
            let ratio = truncated_ratio(&play, &all);
            Ok(PlayRow { n, play, all, ratio })
        })
    }

    pub fn play_table(&self, n_max: usize) -> Result<Vec<PlayRow>> {
        self.play_rows(n_max).collect()
    }

    /// Right-end counts on `m x n` for `m` in `1..=m_max`, from a single
    /// sweep of powers.
    pub fn right_end_column(&self, n: usize, m_max: usize) -> Result<Vec<BigInt>> {
        check_size(m_max, n)?;
        let bar = self.bars.right_end(n)?;
        Ok(top_left_of_powers(&bar.boundary(), m_max).iter().map(Poly::total).collect())
    }

    /// Right-end counts; `table[m - 1][n - 1]` is the `m x n` count.
    pub fn right_end_table(&self, m_max: usize, n_max: usize) -> Result<Vec<Vec<BigInt>>> {
        let mut table = vec![vec![BigInt::zero(); n_max]; m_max];
        for n in 1..=n_max {
            for (m, count) in self.right_end_column(n, m_max)?.into_iter().enumerate() {
                table[m][n - 1] = count;
            }
        }
        Ok(table)
    }

    /// Splits a position into components, counts each, and multiplies.
    pub fn analyze_position(&self, b: &Board) -> Result<PositionReport> {
        let components = components(b)
            .into_iter()
            .map(|board| Ok(ComponentReport { poly: board_poly(&board, self.bars)?, board }))
            .collect::<Result<Vec<_>>>()?;
        let product: Poly = components.iter().map(|c| c.poly.clone()).product();
        let play = product.play_filter(0);
        Ok(PositionReport { components, product, play })
    }
}

fn check_size(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidSize(m, n));
    }
    Ok(())
}

fn unit_vector(len: usize) -> Vec<Poly> {
    let mut v = vec![Poly::zero(); len];
    v[0] = Poly::one();
    v
}

/// Entry (1, 1) of `a^k` for `k = 1..=m`, via the first row `e_1^T a^k`.
fn top_left_of_powers(a: &PolyMatrix, m: usize) -> Vec<Poly> {
    let at = a.transpose();
    let mut row = unit_vector(a.rows());
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        row = at.mul_vector(&row).expect("square matrix");
        out.push(row[0].clone());
    }
    out
}

/// `D_{m,n}` from the global cache.
pub fn rect_general(m: usize, n: usize) -> Result<Poly> {
    Census::global().rect_general(m, n)
}

/// `F_{m,n}` from the global cache.
pub fn rect_maximal(m: usize, n: usize) -> Result<Poly> {
    Census::global().rect_maximal(m, n)
}

pub fn rect_right_ends(m: usize, n: usize) -> Result<Poly> {
    Census::global().rect_right_ends(m, n)
}

pub fn rect_left_ends(m: usize, n: usize) -> Result<Poly> {
    Census::global().rect_left_ends(m, n)
}

pub fn ends_union(m: usize, n: usize) -> Result<Poly> {
    Census::global().ends_union(m, n)
}

pub fn play_table(n_max: usize) -> Result<Vec<PlayRow>> {
    Census::global().play_table(n_max)
}

pub fn analyze_position(b: &Board) -> Result<PositionReport> {
    Census::global().analyze_position(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    const D43: &str = "x^6 + 9x^5 + 6x^4y^2 + 20x^4y + 30x^4 + 46x^3y^2 + 84x^3y + 45x^3 \
                       + 4x^2y^4 + 24x^2y^3 + 100x^2y^2 + 100x^2y + 30x^2 + 24xy^4 \
                       + 72xy^3 + 90xy^2 + 48xy + 9x + 16y^4 + 32y^3 + 24y^2 + 8y + 1";

    #[test]
    fn general_examples() {
        let d43 = rect_general(4, 3).unwrap();
        assert_eq!(d43, p(D43));
        assert_eq!(d43.coeff(1, 2), 90.into());
        assert_eq!(d43.len(), 23);
        assert!(rect_general(1, 1).unwrap().is_one());
        assert_eq!(rect_general(2, 2).unwrap(), p("1+2x+2y+x^2+y^2"));
        assert_eq!(rect_general(2, 1).unwrap(), p("1+x"));
        assert_eq!(rect_general(1, 2).unwrap(), p("1+y"));
    }

    #[test]
    fn play_positions_of_four_by_three() {
        let play = rect_general(4, 3).unwrap().play_filter(0);
        assert_eq!(play, p("46x^3y^2+24x^2y^3+100x^2y^2+100x^2y+90xy^2+48xy+9x+8y+1"));
        assert_eq!(play.total(), 426.into());
    }

    #[test]
    fn power_matches_iteration() {
        let bars = BarStates::default();
        let g03 = bars.general(3).unwrap();
        let direct = g03.g0.pow(4).unwrap().entry(1, 1).unwrap();
        assert_eq!(direct, Census::new(&bars).rect_general(4, 3).unwrap());
    }

    #[test]
    fn maximal_examples() {
        assert_eq!(rect_maximal(3, 2).unwrap(), p("2x^2y + 2x^2 + y^3"));
        assert!(rect_maximal(1, 1).unwrap().is_one());
        assert_eq!(rect_maximal(2, 2).unwrap(), p("x^2 + y^2"));
    }

    #[test]
    fn right_and_left_end_examples() {
        assert_eq!(rect_right_ends(3, 3).unwrap().total(), 48.into());
        assert_eq!(rect_right_ends(5, 5).unwrap().total(), 140_555.into());
        assert_eq!(rect_right_ends(1, 2).unwrap(), Poly::y());
        let fib: Vec<BigInt> = (1..=8).map(|m| rect_right_ends(m, 1).unwrap().total()).collect();
        assert_eq!(fib, [1, 2, 3, 5, 8, 13, 21, 34].map(BigInt::from));
        let fib_t: Vec<BigInt> = (1..=8).map(|m| rect_left_ends(1, m).unwrap().total()).collect();
        assert_eq!(fib, fib_t);
        assert!(rect_left_ends(1, 1).unwrap().is_one());
    }

    #[test]
    fn right_end_column_matches_single_calls() {
        let census = Census::global();
        let col = census.right_end_column(3, 5).unwrap();
        let singles: Vec<BigInt> = (1..=5).map(|m| census.rect_right_ends(m, 3).unwrap().total()).collect();
        assert_eq!(col, singles);
    }

    #[test]
    fn ends_union_small() {
        assert!(ends_union(1, 1).unwrap().is_one());
        assert!(ends_union(3, 3).unwrap().has_nonnegative_coefficients());
    }

    #[test]
    fn ratio_truncates() {
        assert_eq!(truncated_ratio(&1.into(), &1.into()), "1");
        assert_eq!(truncated_ratio(&5.into(), &7.into()), "0.71428");
        assert_eq!(truncated_ratio(&2.into(), &3.into()), "0.66666");
        assert_eq!(truncated_ratio(&1.into(), &200_000.into()), "0.00000");
    }

    #[test]
    fn play_table_head() {
        let rows = play_table(3).unwrap();
        let got: Vec<(usize, BigInt, String)> = rows.into_iter().map(|r| (r.n, r.play, r.ratio)).collect();
        assert_eq!(
            got,
            vec![(1, 1.into(), "1".into()), (2, 5.into(), "0.71428".into()), (3, 75.into(), "0.57251".into())]
        );
    }

    #[test]
    fn size_errors() {
        assert_eq!(rect_general(0, 3).unwrap_err(), Error::InvalidSize(0, 3));
        let bars = BarStates::new(crate::barstate::SizeLimits::uniform(2));
        let census = Census::new(&bars);
        assert!(matches!(census.rect_general(2, 3), Err(Error::SizeLimit { .. })));
        assert!(census.rect_general(50, 2).is_ok());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in CensusKind::ALL {
            assert_eq!(k.name().parse::<CensusKind>().unwrap(), k);
        }
        assert!("ends".parse::<CensusKind>().is_err());
    }

    #[test]
    fn analyze_trivial_positions() {
        let blocked = Board::parse("##\n##").unwrap();
        let report = analyze_position(&blocked).unwrap();
        assert!(report.components.is_empty());
        assert!(report.product.is_one());

        let two = Board::parse("..#\n..#\n###\n..#").unwrap();
        let report = analyze_position(&two).unwrap();
        assert_eq!(report.components.len(), 2);
        assert_eq!(report.product, &p("1+2x+2y+x^2+y^2") * &p("1+y"));
        assert_eq!(report.left_moves(), 2.into());
        assert_eq!(report.right_moves(), 3.into());
    }
}
