//! Sparse matrices over the bivariate polynomial ring.
//!
//! Rows and columns of a bar-state matrix are indexed by edge-label strings.
//! Index `i` (1-based) carries the label string obtained by writing `i - 1` in
//! the family's radix, most significant digit first, zero-padded to the bar
//! length; this makes the natural index order the lexicographic label order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polynomial::BivariatePolynomial as Poly;

type SparseRow = Vec<(usize, Poly)>;

/// A `rows x cols` matrix of polynomials. Zero entries are not stored.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    // per row, (0-based column, entry) sorted by column
    data: Vec<SparseRow>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, Poly::one())]).collect();
        Self { rows: n, cols: n, data }
    }

    /// The `1 x 1` matrix `[p]`.
    pub fn scalar(p: Poly) -> Self {
        Self::from_sparse_rows(1, 1, vec![vec![(0, p)]])
    }

    /// Builds a matrix from 1-based `((row, col), entry)` pairs. Entries at the
    /// same position are summed.
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Poly)>,
    {
        let mut maps: Vec<BTreeMap<usize, Poly>> = vec![BTreeMap::new(); rows];
        for ((i, j), p) in entries {
            if i == 0 || j == 0 || i > rows || j > cols {
                return Err(Error::IndexOutOfRange { row: i, col: j, rows, cols });
            }
            *maps[i - 1].entry(j - 1).or_default() += &p;
        }
        let data = maps.into_iter().map(|m| m.into_iter().filter(|(_, p)| !p.is_zero()).collect()).collect();
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a dense row-major grid.
    pub fn from_dense(grid: Vec<Vec<Poly>>) -> Result<Self> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        if let Some(bad) = grid.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { op: "from_dense", left: (rows, cols), right: (1, bad.len()) });
        }
        let data = grid
            .into_iter()
            .map(|r| r.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect())
            .collect();
        Ok(Self { rows, cols, data })
    }

    fn from_sparse_rows(rows: usize, cols: usize, mut data: Vec<SparseRow>) -> Self {
        for row in &mut data {
            row.retain(|(_, p)| !p.is_zero());
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Entry at 1-based `(i, j)`, or `None` when it is zero or out of range.
    pub fn get(&self, i: usize, j: usize) -> Option<&Poly> {
        if i == 0 || j == 0 || i > self.rows || j > self.cols {
            return None;
        }
        let row = &self.data[i - 1];
        row.binary_search_by_key(&(j - 1), |(c, _)| *c).ok().map(|k| &row[k].1)
    }

    /// Entry at 1-based `(i, j)`; zero when nothing is stored there.
    pub fn entry(&self, i: usize, j: usize) -> Result<Poly> {
        if i == 0 || j == 0 || i > self.rows || j > self.cols {
            return Err(Error::IndexOutOfRange { row: i, col: j, rows: self.rows, cols: self.cols });
        }
        Ok(self.get(i, j).cloned().unwrap_or_default())
    }

    /// Stored entries as 1-based `((row, col), entry)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Poly)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, p)| ((i + 1, j + 1), p)))
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch { op: "add", left: self.dims(), right: other.dims() });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut merged: BTreeMap<usize, Poly> = a.iter().cloned().collect();
                for (j, p) in b {
                    *merged.entry(*j).or_default() += p;
                }
                merged.into_iter().collect()
            })
            .collect();
        Ok(Self::from_sparse_rows(self.rows, self.cols, data))
    }

    /// `self * other`. Output rows are computed in parallel; each row's
    /// accumulation order is fixed, so the result does not depend on
    /// scheduling.
    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { op: "mul", left: self.dims(), right: other.dims() });
        }
        let data: Vec<SparseRow> = self
            .data
            .par_iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        acc.entry(*j).or_default().add_product(a, b);
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        Ok(Self::from_sparse_rows(self.rows, other.cols, data))
    }

    /// `self^m` by repeated left-to-right multiplication; `m = 0` gives the
    /// identity.
    pub fn pow(&self, m: u32) -> Result<PolyMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut acc = PolyMatrix::identity(self.rows);
        for _ in 0..m {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `self * v` for a column vector `v` of length `cols`.
    pub fn mul_vector(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { op: "mul_vector", left: self.dims(), right: (v.len(), 1) });
        }
        Ok(self
            .data
            .par_iter()
            .map(|row| {
                let mut acc = Poly::zero();
                for (j, a) in row {
                    acc.add_product(a, &v[*j]);
                }
                acc
            })
            .collect())
    }

    /// Multiplies every entry by `p`.
    pub fn scale(&self, p: &Poly) -> PolyMatrix {
        let data = self.data.iter().map(|row| row.iter().map(|(j, e)| (*j, p * e)).collect()).collect();
        Self::from_sparse_rows(self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut data: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, p) in row {
                data[*j].push((i, p.clone()));
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    /// Applies `f` to every stored entry.
    pub fn map_entries(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        let data = self.data.iter().map(|row| row.iter().map(|(j, p)| (*j, f(p))).collect()).collect();
        Self::from_sparse_rows(self.rows, self.cols, data)
    }

    /// Assembles a block matrix. Every block in a grid row must share a row
    /// count and every block in a grid column a column count.
    pub fn from_blocks(grid: &[&[&PolyMatrix]]) -> Result<PolyMatrix> {
        let width = grid.first().map_or(0, |r| r.len());
        if grid.is_empty() || width == 0 {
            return Err(Error::BlockShape("empty block grid".into()));
        }
        if grid.iter().any(|r| r.len() != width) {
            return Err(Error::BlockShape("ragged block grid".into()));
        }
        let heights: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        for (bi, row) in grid.iter().enumerate() {
            for (bj, block) in row.iter().enumerate() {
                if block.rows != heights[bi] || block.cols != widths[bj] {
                    return Err(Error::BlockShape(format!(
                        "block ({}, {}) is {}x{}, expected {}x{}",
                        bi + 1,
                        bj + 1,
                        block.rows,
                        block.cols,
                        heights[bi],
                        widths[bj]
                    )));
                }
            }
        }
        let col_offsets: Vec<usize> = widths.iter().scan(0, |acc, w| {
            let o = *acc;
            *acc += w;
            Some(o)
        }).collect();
        let mut data: Vec<SparseRow> = Vec::with_capacity(heights.iter().sum());
        for row in grid {
            for i in 0..row[0].rows {
                let mut out = Vec::new();
                for (bj, block) in row.iter().enumerate() {
                    out.extend(block.data[i].iter().map(|(j, p)| (j + col_offsets[bj], p.clone())));
                }
                data.push(out);
            }
        }
        Ok(Self { rows: heights.iter().sum(), cols: widths.iter().sum(), data })
    }

    /// Kronecker product `self ⊗ other`: the block matrix whose `(i, j)` block
    /// is `self[i][j] * other`.
    pub fn kronecker(&self, other: &PolyMatrix) -> PolyMatrix {
        let (pr, pc) = other.dims();
        let mut data: Vec<SparseRow> = Vec::with_capacity(self.rows * pr);
        for arow in &self.data {
            for brow in &other.data {
                let mut out = Vec::with_capacity(arow.len() * brow.len());
                for (ja, a) in arow {
                    for (jb, b) in brow {
                        out.push((ja * pc + jb, a * b));
                    }
                }
                data.push(out);
            }
        }
        Self::from_sparse_rows(self.rows * pr, self.cols * pc, data)
    }

    /// Keeps only the rows (bottom labels) matching `rows` and the columns
    /// (top labels) matching `cols`. `None` keeps everything on that side.
    /// Surviving indices keep their relative order.
    pub fn restrict(
        &self,
        rows: Option<&LabelPattern>,
        cols: Option<&LabelPattern>,
        radix: u8,
    ) -> Result<PolyMatrix> {
        let keep_rows = surviving_indices(self.rows, rows, radix)?;
        let keep_cols = surviving_indices(self.cols, cols, radix)?;
        let mut col_map = vec![usize::MAX; self.cols];
        for (new, &old) in keep_cols.iter().enumerate() {
            col_map[old] = new;
        }
        let data = keep_rows
            .iter()
            .map(|&i| {
                self.data[i]
                    .iter()
                    .filter(|(j, _)| col_map[*j] != usize::MAX)
                    .map(|(j, p)| (col_map[*j], p.clone()))
                    .collect()
            })
            .collect();
        Ok(Self { rows: keep_rows.len(), cols: keep_cols.len(), data })
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            let mut dense = vec!["0".to_string(); self.cols];
            for (j, p) in row {
                dense[*j] = p.to_string();
            }
            writeln!(f, "  [{}]", dense.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `Some(L)` when `dim == radix^L`.
pub fn label_length(dim: usize, radix: u8) -> Option<usize> {
    let r = radix as usize;
    let (mut len, mut pow) = (0, 1usize);
    while pow < dim {
        pow = pow.checked_mul(r)?;
        len += 1;
    }
    (pow == dim).then_some(len)
}

/// Label string of 0-based index `index`: its base-`radix` digits, most
/// significant first, zero-padded to `len`.
pub fn label_digits(index: usize, radix: u8, len: usize) -> Vec<u8> {
    let mut digits = vec![0u8; len];
    let mut rest = index;
    for d in digits.iter_mut().rev() {
        *d = (rest % radix as usize) as u8;
        rest /= radix as usize;
    }
    digits
}

fn surviving_indices(dim: usize, pattern: Option<&LabelPattern>, radix: u8) -> Result<Vec<usize>> {
    let Some(pattern) = pattern else {
        return Ok((0..dim).collect());
    };
    let len = label_length(dim, radix).ok_or(Error::NonPowerDimension { dim, radix })?;
    if pattern.len() != len {
        return Err(Error::PatternLength { expected: len, found: pattern.len() });
    }
    if pattern.symbols().iter().any(|s| matches!(s, LabelSymbol::Fixed(d) if *d >= radix)) {
        return Err(Error::InvalidPattern(format!("{pattern} uses a digit outside radix {radix}")));
    }
    Ok((0..dim).filter(|&i| pattern.matches(&label_digits(i, radix, len))).collect())
}

/// One position of a [`LabelPattern`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LabelSymbol {
    Fixed(u8),
    Free,
}

/// A label string with some positions fixed and others (`_`) left free,
/// e.g. `_0__`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LabelPattern {
    symbols: Vec<LabelSymbol>,
}

impl LabelPattern {
    pub fn new(symbols: Vec<LabelSymbol>) -> Self {
        Self { symbols }
    }

    /// All positions free.
    pub fn free(len: usize) -> Self {
        Self { symbols: vec![LabelSymbol::Free; len] }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[LabelSymbol] {
        &self.symbols
    }

    pub fn is_all_free(&self) -> bool {
        self.symbols.iter().all(|s| *s == LabelSymbol::Free)
    }

    pub fn matches(&self, digits: &[u8]) -> bool {
        digits.len() == self.symbols.len()
            && self.symbols.iter().zip(digits).all(|(s, d)| match s {
                LabelSymbol::Free => true,
                LabelSymbol::Fixed(f) => f == d,
            })
    }
}

impl FromStr for LabelPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '_' => Ok(LabelSymbol::Free),
                '0'..='2' => Ok(LabelSymbol::Fixed(c as u8 - b'0')),
                _ => Err(Error::InvalidPattern(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for LabelPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            match s {
                LabelSymbol::Free => f.write_str("_")?,
                LabelSymbol::Fixed(d) => write!(f, "{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    pub(crate) fn dense(rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_dense(rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect()).unwrap()
    }

    fn g01() -> PolyMatrix {
        dense(&[&["1", "x"], &["1", "0"]])
    }

    #[test]
    fn add_examples() {
        let a = g01();
        assert_eq!(a.add(&PolyMatrix::zero(2, 2)).unwrap(), a);
        let re = dense(&[&["0", "x"], &["1", "0"]]);
        let re_prime = dense(&[&["1", "0"], &["0", "0"]]);
        assert_eq!(re.add(&re_prime).unwrap(), dense(&[&["1", "x"], &["1", "0"]]));
        assert!(matches!(a.add(&PolyMatrix::zero(1, 2)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn mul_examples() {
        let a = g01();
        assert_eq!(PolyMatrix::identity(2).mul(&a).unwrap(), a);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.entry(1, 1).unwrap(), p("1+x"));
        assert!(matches!(a.mul(&PolyMatrix::zero(3, 1)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn pow_examples() {
        let a = g01();
        assert_eq!(a.pow(1).unwrap(), a);
        assert_eq!(a.pow(0).unwrap(), PolyMatrix::identity(2));
        assert_eq!(a.pow(3).unwrap(), a.mul(&a).unwrap().mul(&a).unwrap());
        assert!(matches!(PolyMatrix::zero(2, 3).pow(2), Err(Error::NotSquare(2, 3))));
        // Fibonacci along the first column of (RE_{0,1} + RE'_{0,1})^m.
        let fib: Vec<u32> = (1..=8)
            .map(|m| {
                let t = a.pow(m).unwrap().entry(1, 1).unwrap().total();
                u32::try_from(t).unwrap()
            })
            .collect();
        assert_eq!(fib, [1, 2, 3, 5, 8, 13, 21, 34]);
    }

    #[test]
    fn mul_vector_matches_mul() {
        let a = dense(&[&["1", "x", "y"], &["0", "xy", "1"]]);
        let v = vec![p("1+y"), p("x"), p("2")];
        let col = PolyMatrix::from_dense(v.iter().map(|e| vec![e.clone()]).collect()).unwrap();
        let prod = a.mul(&col).unwrap();
        let got = a.mul_vector(&v).unwrap();
        for (i, e) in got.iter().enumerate() {
            assert_eq!(*e, prod.entry(i + 1, 1).unwrap());
        }
        assert!(a.mul_vector(&v[..2]).is_err());
    }

    #[test]
    fn scale_examples() {
        let a = g01();
        assert_eq!(a.scale(&Poly::one()), a);
        assert_eq!(a.scale(&Poly::x()), dense(&[&["x", "x^2"], &["x", "0"]]));
        assert_eq!(a.scale(&Poly::y()), dense(&[&["y", "xy"], &["y", "0"]]));
    }

    #[test]
    fn blocks_assemble() {
        let g00 = PolyMatrix::scalar(Poly::one());
        let g10 = PolyMatrix::zero(1, 1);
        let sum = g00.add(&g10).unwrap();
        let xg = g00.scale(&Poly::x());
        let got = PolyMatrix::from_blocks(&[&[&sum, &xg], &[&g00, &g10]]).unwrap();
        assert_eq!(got, g01());

        let z = PolyMatrix::zero(2, 2);
        let zeros = PolyMatrix::from_blocks(&[&[&z, &z], &[&z, &z]]).unwrap();
        assert_eq!(zeros, PolyMatrix::zero(4, 4));

        let tall = PolyMatrix::zero(3, 2);
        assert!(matches!(PolyMatrix::from_blocks(&[&[&z, &tall]]), Err(Error::BlockShape(_))));
        assert!(PolyMatrix::from_blocks(&[]).is_err());
    }

    #[test]
    fn kronecker_examples() {
        let b = dense(&[&["1", "x"], &["y", "2"]]);
        assert_eq!(PolyMatrix::scalar(Poly::one()).kronecker(&b), b);
        let right = dense(&[&["y+1", "x", "x", "x^2"], &["1", "x", "0", "0"]]);
        let expected = dense(&[
            &["y+1", "x", "x", "x^2", "xy+x", "x^2", "x^2", "x^3"],
            &["1", "x", "0", "0", "x", "x^2", "0", "0"],
            &["y+1", "x", "x", "x^2", "0", "0", "0", "0"],
            &["1", "x", "0", "0", "0", "0", "0", "0"],
        ]);
        assert_eq!(g01().kronecker(&right), expected);
    }

    #[test]
    fn restrict_examples() {
        let g02 = dense(&[
            &["y+1", "x", "x", "x^2"],
            &["1", "0", "x", "0"],
            &["1", "x", "0", "0"],
            &["1", "0", "0", "0"],
        ]);
        let free: LabelPattern = "__".parse().unwrap();
        assert_eq!(g02.restrict(Some(&free), Some(&free), 2).unwrap(), g02);
        assert_eq!(g02.restrict(None, None, 2).unwrap(), g02);
        let sub: LabelPattern = "_0".parse().unwrap();
        assert_eq!(
            g02.restrict(Some(&sub), None, 2).unwrap(),
            dense(&[&["y+1", "x", "x", "x^2"], &["1", "x", "0", "0"]])
        );
        let zeros: LabelPattern = "00".parse().unwrap();
        assert_eq!(g02.restrict(Some(&zeros), Some(&zeros), 2).unwrap(), dense(&[&["y+1"]]));

        let three: LabelPattern = "___".parse().unwrap();
        assert!(matches!(g02.restrict(Some(&three), None, 2), Err(Error::PatternLength { expected: 2, found: 3 })));
        assert!(matches!(
            PolyMatrix::zero(3, 3).restrict(Some(&sub), None, 2),
            Err(Error::NonPowerDimension { dim: 3, radix: 2 })
        ));
        let two: LabelPattern = "2_".parse().unwrap();
        assert!(g02.restrict(Some(&two), None, 2).is_err());
    }

    #[test]
    fn entry_bounds() {
        let id = PolyMatrix::identity(3);
        assert!(id.entry(1, 2).unwrap().is_zero());
        assert!(id.entry(3, 3).unwrap().is_one());
        assert!(matches!(id.entry(0, 1), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(id.entry(1, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn label_helpers() {
        assert_eq!(label_length(8, 2), Some(3));
        assert_eq!(label_length(9, 3), Some(2));
        assert_eq!(label_length(1, 3), Some(0));
        assert_eq!(label_length(6, 2), None);
        assert_eq!(label_digits(5, 2, 3), vec![1, 0, 1]);
        assert_eq!(label_digits(7, 3, 2), vec![2, 1]);
        let pat: LabelPattern = "_0_".parse().unwrap();
        assert_eq!(pat.to_string(), "_0_");
        assert!(pat.matches(&[1, 0, 1]));
        assert!(!pat.matches(&[1, 1, 1]));
        assert!("0a".parse::<LabelPattern>().is_err());
    }

    #[test]
    fn from_entries_checks_range_and_sums() {
        let m = PolyMatrix::from_entries(2, 2, [((1, 1), p("x")), ((1, 1), p("y")), ((2, 1), p("0"))]).unwrap();
        assert_eq!(m.entry(1, 1).unwrap(), p("x+y"));
        assert_eq!(m.nnz(), 1);
        assert!(PolyMatrix::from_entries(2, 2, [((3, 1), p("1"))]).is_err());
    }

    #[test]
    fn transpose_twice_is_identity() {
        let a = dense(&[&["1", "x", "y"], &["0", "xy", "1"]]);
        assert_eq!(a.transpose().dims(), (3, 2));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().entry(2, 2).unwrap(), p("xy"));
    }
}
