//! Recursive bar-state matrices.
//!
//! A bar is a `1 x q` row of edge-labelled tiles. Entry `(i, j)` of a
//! bar-state matrix is the generating polynomial of the bars whose bottom
//! labels spell row `i` and whose top labels spell column `j`, with the left
//! and right end labels fixed by which matrix of the family it is. Each family
//! is defined by a block recursion on the leftmost tile, so tiles are never
//! enumerated explicitly.
//!
//! * General positions use binary top/bottom labels: `G_{0,q}` and `G_{1,q}`
//!   (left label 0 or 1, right label 0).
//! * Maximal positions use ternary labels: `M_{k,q}` (right label 0) and
//!   `M'_{k,q}` (right label 1) for left labels `k` in `0..3`.
//! * Right ends use binary top/bottom labels and ternary end labels:
//!   `RE_{k,q}` and `RE'_{k,q}`.

use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::polymatrix::PolyMatrix;
use crate::polynomial::BivariatePolynomial as Poly;

/// Environment variable overriding the maximum bar length.
pub const MAX_Q_ENV: &str = "DOMCENSUS_MAX_Q";

/// Which tile set a bar-state matrix family encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BarFamily {
    General,
    Maximal,
    RightEnd,
}

impl BarFamily {
    /// Radix of the top/bottom label strings, which index the matrices.
    pub fn radix(self) -> u8 {
        match self {
            BarFamily::General | BarFamily::RightEnd => 2,
            BarFamily::Maximal => 3,
        }
    }

    /// Number of matrices per bar length.
    pub fn matrices_per_length(self) -> usize {
        match self {
            BarFamily::General => 2,
            BarFamily::Maximal | BarFamily::RightEnd => 6,
        }
    }
}

/// `G_{0,q}` and `G_{1,q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralBar {
    pub g0: PolyMatrix,
    pub g1: PolyMatrix,
}

impl GeneralBar {
    pub fn base() -> Self {
        Self { g0: PolyMatrix::scalar(Poly::one()), g1: PolyMatrix::zero(1, 1) }
    }

    /// The bar one tile longer.
    pub fn extend(&self) -> Self {
        let (g0, g1) = (&self.g0, &self.g1);
        let z = PolyMatrix::zero(g0.rows(), g0.cols());
        let both = g0.add(g1).expect("G_0 and G_1 share dimensions");
        let xg0 = g0.scale(&Poly::x());
        let yg0 = g0.scale(&Poly::y());
        Self {
            g0: PolyMatrix::from_blocks(&[&[&both, &xg0], &[g0, &z]]).expect("square blocks"),
            g1: PolyMatrix::from_blocks(&[&[&yg0, &z], &[&z, &z]]).expect("square blocks"),
        }
    }

    pub fn length(&self) -> usize {
        crate::polymatrix::label_length(self.g0.rows(), 2).expect("power-of-two dimension")
    }
}

/// Six matrices indexed by left end label `k` and right end label 0 or 1,
/// shared by the maximal and right-end families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndLabelledBar {
    /// `[X_{0,q}, X_{1,q}, X_{2,q}]`: right end label 0.
    pub right_zero: [PolyMatrix; 3],
    /// `[X'_{0,q}, X'_{1,q}, X'_{2,q}]`: right end label 1.
    pub right_one: [PolyMatrix; 3],
}

impl EndLabelledBar {
    pub fn base() -> Self {
        let one = || PolyMatrix::scalar(Poly::one());
        let zero = || PolyMatrix::zero(1, 1);
        Self { right_zero: [one(), zero(), zero()], right_one: [zero(), one(), zero()] }
    }

    /// Bars with left label 0 and right label 0 or 1: the matrix stacked to
    /// build rectangles.
    pub fn boundary(&self) -> PolyMatrix {
        self.right_zero[0].add(&self.right_one[0]).expect("same dimensions")
    }

    /// All six matrices in the order `X_0, X_1, X_2, X'_0, X'_1, X'_2`.
    pub fn all(&self) -> impl Iterator<Item = &PolyMatrix> {
        self.right_zero.iter().chain(self.right_one.iter())
    }

    fn extend_with(&self, step: fn(&[PolyMatrix; 3]) -> [PolyMatrix; 3]) -> Self {
        Self { right_zero: step(&self.right_zero), right_one: step(&self.right_one) }
    }

    /// Next maximal-family bar.
    pub fn extend_maximal(&self) -> Self {
        self.extend_with(maximal_step)
    }

    /// Next right-end-family bar.
    pub fn extend_right_end(&self) -> Self {
        self.extend_with(right_end_step)
    }
}

// Block rows are the bottom label of the leftmost tile, block columns its top
// label. The primed and unprimed matrices obey the same recursion.
fn maximal_step(m: &[PolyMatrix; 3]) -> [PolyMatrix; 3] {
    let [m0, m1, m2] = m;
    let z = PolyMatrix::zero(m0.rows(), m0.cols());
    let xm0 = m0.scale(&Poly::x());
    let ym0 = m0.scale(&Poly::y());
    let blocks = |grid: &[&[&PolyMatrix]]| PolyMatrix::from_blocks(grid).expect("square blocks");
    [
        blocks(&[&[m2, m2, &xm0], &[m1, &z, &z], &[m0, m0, &z]]),
        blocks(&[&[m2, m2, &xm0], &[&z, &z, &z], &[m0, m0, &z]]),
        blocks(&[&[&ym0, &ym0, &z], &[&z, &z, &z], &[&z, &z, &z]]),
    ]
}

fn right_end_step(r: &[PolyMatrix; 3]) -> [PolyMatrix; 3] {
    let [r0, r1, r2] = r;
    let z = PolyMatrix::zero(r0.rows(), r0.cols());
    let xr0 = r0.scale(&Poly::x());
    let yr0 = r0.scale(&Poly::y());
    let r12 = r1.add(r2).expect("same dimensions");
    let blocks = |grid: &[&[&PolyMatrix]]| PolyMatrix::from_blocks(grid).expect("square blocks");
    [
        blocks(&[&[&r12, &xr0], &[r0, &z]]),
        blocks(&[&[r2, &xr0], &[r0, &z]]),
        blocks(&[&[&yr0, &z], &[&z, &z]]),
    ]
}

/// How one position of a label string is treated when projecting a bar
/// matrix onto a subset of its rows or columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelProjection {
    /// Every label value stays a separate index.
    Keep,
    /// Only this label value survives.
    Fix(u8),
    /// The listed label values are added into a single index.
    Sum(Vec<u8>),
}

impl LabelProjection {
    fn groups(&self, radix: u8) -> Vec<Vec<u8>> {
        match self {
            LabelProjection::Keep => (0..radix).map(|d| vec![d]).collect(),
            LabelProjection::Fix(d) => vec![vec![*d]],
            LabelProjection::Sum(ds) => vec![ds.clone()],
        }
    }
}

// Applies the leading-digit projections to a matrix made of
// `radix x radix` blocks of size `br x bc`.
fn project_blocks(m: &PolyMatrix, radix: u8, br: usize, bc: usize, rows: &[Vec<u8>], cols: &[Vec<u8>]) -> PolyMatrix {
    let mut entries = Vec::new();
    for ((i, j), p) in m.iter() {
        let (di, ri) = ((i - 1) / br, (i - 1) % br);
        let (dj, rj) = ((j - 1) / bc, (j - 1) % bc);
        debug_assert!(di < radix as usize && dj < radix as usize);
        for (gi, _) in rows.iter().enumerate().filter(|(_, g)| g.contains(&(di as u8))) {
            for (gj, _) in cols.iter().enumerate().filter(|(_, g)| g.contains(&(dj as u8))) {
                entries.push(((gi * br + ri + 1, gj * bc + rj + 1), p.clone()));
            }
        }
    }
    PolyMatrix::from_entries(rows.len() * br, cols.len() * bc, entries).expect("indices in range")
}

/// Upper bounds on bar length, per label radix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeLimits {
    pub binary: usize,
    pub ternary: usize,
}

impl Default for SizeLimits {
    fn default() -> Self {
        Self { binary: 12, ternary: 8 }
    }
}

impl SizeLimits {
    /// Both limits set to the same value.
    pub fn uniform(q: usize) -> Self {
        Self { binary: q, ternary: q }
    }

    /// Defaults, overridden by `DOMCENSUS_MAX_Q` when it holds an integer.
    pub fn from_env() -> Self {
        std::env::var(MAX_Q_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map_or_else(Self::default, Self::uniform)
    }

    pub fn for_family(&self, family: BarFamily) -> usize {
        match family.radix() {
            2 => self.binary,
            _ => self.ternary,
        }
    }

    pub fn check(&self, family: BarFamily, q: usize) -> Result<()> {
        let max = self.for_family(family);
        if q > max {
            return Err(Error::SizeLimit { q, max, radix: family.radix() });
        }
        Ok(())
    }
}

/// Append-only memo of bar-state matrices for every family.
///
/// Each family's list is extended under its own lock, so concurrent requests
/// for the same length compute it once and all observe the same value.
#[derive(Debug)]
pub struct BarStates {
    limits: SizeLimits,
    general: Mutex<Vec<Arc<GeneralBar>>>,
    maximal: Mutex<Vec<Arc<EndLabelledBar>>>,
    right_end: Mutex<Vec<Arc<EndLabelledBar>>>,
}

impl Default for BarStates {
    fn default() -> Self {
        Self::new(SizeLimits::default())
    }
}

impl BarStates {
    pub fn new(limits: SizeLimits) -> Self {
        Self {
            limits,
            general: Mutex::new(vec![Arc::new(GeneralBar::base())]),
            maximal: Mutex::new(vec![Arc::new(EndLabelledBar::base())]),
            right_end: Mutex::new(vec![Arc::new(EndLabelledBar::base())]),
        }
    }

    /// Process-wide cache with limits read from the environment.
    pub fn global() -> &'static BarStates {
        static GLOBAL: OnceLock<BarStates> = OnceLock::new();
        GLOBAL.get_or_init(|| BarStates::new(SizeLimits::from_env()))
    }

    pub fn limits(&self) -> SizeLimits {
        self.limits
    }

    pub fn general(&self, q: usize) -> Result<Arc<GeneralBar>> {
        self.limits.check(BarFamily::General, q)?;
        Ok(grow(&self.general, q, GeneralBar::extend))
    }

    pub fn maximal(&self, q: usize) -> Result<Arc<EndLabelledBar>> {
        self.limits.check(BarFamily::Maximal, q)?;
        Ok(grow(&self.maximal, q, EndLabelledBar::extend_maximal))
    }

    pub fn right_end(&self, q: usize) -> Result<Arc<EndLabelledBar>> {
        self.limits.check(BarFamily::RightEnd, q)?;
        Ok(grow(&self.right_end, q, EndLabelledBar::extend_right_end))
    }

    /// The boundary bar matrix of length `rows.len()` (`G_{0,q}`, or
    /// `X_{0,q} + X'_{0,q}` for the end-labelled families) projected on its
    /// bottom labels by `rows` and top labels by `cols`.
    ///
    /// The projection is applied at every level of the recursion, so fixed or
    /// summed positions never materialise the full matrix. Not cached.
    pub fn projected(&self, family: BarFamily, rows: &[LabelProjection], cols: &[LabelProjection]) -> Result<PolyMatrix> {
        let q = rows.len();
        if cols.len() != q {
            return Err(Error::PatternLength { expected: q, found: cols.len() });
        }
        self.limits.check(family, q)?;
        let radix = family.radix();
        for p in rows.iter().chain(cols) {
            let bad = match p {
                LabelProjection::Keep => None,
                LabelProjection::Fix(d) => (*d >= radix).then_some(*d),
                LabelProjection::Sum(ds) => ds.iter().copied().find(|d| *d >= radix),
            };
            if let Some(d) = bad {
                return Err(Error::InvalidPattern(format!("label {d} out of range for radix {radix}")));
            }
        }
        let project = |next: &PolyMatrix, (br, bc): (usize, usize), pos: usize| {
            project_blocks(next, radix, br, bc, &rows[pos].groups(radix), &cols[pos].groups(radix))
        };
        match family {
            BarFamily::General => {
                let mut bar = GeneralBar::base();
                for pos in (0..q).rev() {
                    let shape = bar.g0.dims();
                    let next = bar.extend();
                    bar = GeneralBar { g0: project(&next.g0, shape, pos), g1: project(&next.g1, shape, pos) };
                }
                Ok(bar.g0)
            }
            BarFamily::Maximal | BarFamily::RightEnd => {
                let step = if family == BarFamily::Maximal { maximal_step } else { right_end_step };
                let mut bar = EndLabelledBar::base();
                for pos in (0..q).rev() {
                    let shape = bar.right_zero[0].dims();
                    let next = bar.extend_with(step);
                    let proj = |ms: &[PolyMatrix; 3]| [0, 1, 2].map(|k| project(&ms[k], shape, pos));
                    bar = EndLabelledBar { right_zero: proj(&next.right_zero), right_one: proj(&next.right_one) };
                }
                Ok(bar.boundary())
            }
        }
    }

    /// Number of cached lengths per family (general, maximal, right end).
    pub fn cached_lengths(&self) -> (usize, usize, usize) {
        (cached_len(&self.general), cached_len(&self.maximal), cached_len(&self.right_end))
    }
}

fn cached_len<T>(cache: &Mutex<Vec<T>>) -> usize {
    cache.lock().unwrap_or_else(|e| e.into_inner()).len()
}

fn grow<T>(cache: &Mutex<Vec<Arc<T>>>, q: usize, step: fn(&T) -> T) -> Arc<T> {
    let mut bars = cache.lock().unwrap_or_else(|e| e.into_inner());
    while bars.len() <= q {
        let next = step(bars.last().expect("base case is always present"));
        bars.push(Arc::new(next));
    }
    Arc::clone(&bars[q])
}

/// `(G_{0,q}, G_{1,q})` from the global cache.
pub fn general_bar(q: usize) -> Result<(PolyMatrix, PolyMatrix)> {
    let bar = BarStates::global().general(q)?;
    Ok((bar.g0.clone(), bar.g1.clone()))
}

/// `(M_0, M_1, M_2, M'_0, M'_1, M'_2)` at length `q` from the global cache.
pub fn maximal_bar(q: usize) -> Result<EndLabelledBar> {
    Ok(BarStates::global().maximal(q)?.as_ref().clone())
}

/// `(RE_0, RE_1, RE_2, RE'_0, RE'_1, RE'_2)` at length `q` from the global cache.
pub fn rightend_bar(q: usize) -> Result<EndLabelledBar> {
    Ok(BarStates::global().right_end(q)?.as_ref().clone())
}
