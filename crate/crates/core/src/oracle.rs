//! Exhaustive enumeration of domino placements.
//!
//! Independent of the transfer-matrix code; used to cross-check it on small
//! boards.

use num_bigint::BigInt;

use crate::board::Board;
use crate::census::CensusKind;
use crate::error::{Error, Result};
use crate::polynomial::BivariatePolynomial as Poly;

/// Default limit on playable cells for [`brute_poly`].
pub const DEFAULT_CAP: usize = 20;

/// A single placement, visible to [`for_each_position`] callbacks.
#[derive(Debug)]
pub struct Placement<'a> {
    board: &'a Board,
    used: &'a [bool],
    /// Vertical dominoes.
    pub left: u32,
    /// Horizontal dominoes.
    pub right: u32,
}

impl Placement<'_> {
    fn empty(&self, r: usize, c: usize) -> bool {
        self.board.is_playable(r as isize, c as isize) && !self.used[r * self.board.cols() + c]
    }

    /// Whether `(r, c)` is a playable cell not covered by a domino.
    pub fn is_empty(&self, r: usize, c: usize) -> bool {
        r < self.board.rows() && c < self.board.cols() && self.empty(r, c)
    }

    /// Right has no horizontal move.
    pub fn is_right_end(&self) -> bool {
        let (rows, cols) = (self.board.rows(), self.board.cols());
        (0..rows).all(|r| (0..cols.saturating_sub(1)).all(|c| !(self.empty(r, c) && self.empty(r, c + 1))))
    }

    /// Left has no vertical move.
    pub fn is_left_end(&self) -> bool {
        let (rows, cols) = (self.board.rows(), self.board.cols());
        (0..rows.saturating_sub(1)).all(|r| (0..cols).all(|c| !(self.empty(r, c) && self.empty(r + 1, c))))
    }

    pub fn matches(&self, kind: CensusKind) -> bool {
        match kind {
            CensusKind::All => true,
            CensusKind::Maximal => self.is_left_end() && self.is_right_end(),
            CensusKind::RightEnd => self.is_right_end(),
            CensusKind::LeftEnd => self.is_left_end(),
        }
    }
}

/// Calls `visit` once for every legal placement of non-overlapping dominoes.
///
/// Cells are scanned in row-major order; the first free cell is either left
/// empty, covered by a vertical domino hanging below it, or covered by a
/// horizontal domino extending to its right. Each placement is produced
/// exactly once.
pub fn for_each_position<F: FnMut(&Placement<'_>)>(b: &Board, mut visit: F) {
    let mut used = vec![false; b.rows() * b.cols()];
    walk(b, 0, &mut used, 0, 0, &mut visit);
}

fn walk<F: FnMut(&Placement<'_>)>(b: &Board, k: usize, used: &mut [bool], left: u32, right: u32, visit: &mut F) {
    let cols = b.cols();
    let total = b.rows() * cols;
    let mut k = k;
    while k < total && (used[k] || !b.is_playable((k / cols) as isize, (k % cols) as isize)) {
        k += 1;
    }
    if k == total {
        visit(&Placement { board: b, used, left, right });
        return;
    }
    let (r, c) = (k / cols, k % cols);

    walk(b, k + 1, used, left, right, visit);

    if b.is_playable(r as isize + 1, c as isize) {
        let below = k + cols;
        debug_assert!(!used[below]);
        used[k] = true;
        used[below] = true;
        walk(b, k + 1, used, left + 1, right, visit);
        used[k] = false;
        used[below] = false;
    }
    if b.is_playable(r as isize, c as isize + 1) && !used[k + 1] {
        used[k] = true;
        used[k + 1] = true;
        walk(b, k + 2, used, left, right + 1, visit);
        used[k] = false;
        used[k + 1] = false;
    }
}

/// Polynomial of `kind` positions on `b` by exhaustive enumeration.
///
/// Refuses boards with more than `cap` playable cells.
pub fn brute_poly(b: &Board, kind: CensusKind, cap: usize) -> Result<Poly> {
    let cells = b.playable_count();
    if cells > cap {
        return Err(Error::OracleCap { cells, cap });
    }
    let mut counts = std::collections::BTreeMap::<(u32, u32), u64>::new();
    for_each_position(b, |p| {
        if p.matches(kind) {
            *counts.entry((p.left, p.right)).or_default() += 1;
        }
    });
    Ok(Poly::from_terms(counts.into_iter().map(|((a, bb), c)| (a, bb, BigInt::from(c)))))
}

/// Total `kind` counts on `m x n` rectangles; `table[m - 1][n - 1]`.
pub fn brute_count_table(kind: CensusKind, m_max: usize, n_max: usize, cap: usize) -> Result<Vec<Vec<BigInt>>> {
    (1..=m_max)
        .map(|m| (1..=n_max).map(|n| Ok(brute_poly(&Board::rectangle(m, n)?, kind, cap)?.total())).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn covered_cells_match_domino_counts() {
        let b = Board::parse("...\n.#.\n...").unwrap();
        let mut count = 0usize;
        for_each_position(&b, |p| {
            count += 1;
            let covered = p.used.iter().filter(|u| **u).count() as u32;
            assert_eq!(covered, 2 * (p.left + p.right));
            assert!(!p.is_empty(1, 1));
        });
        assert_eq!(count, 47);
    }

    #[test]
    fn distinct_as_domino_sets() {
        let b = Board::rectangle(3, 3).unwrap();
        let mut sets = HashSet::new();
        let mut total = 0;
        enumerate_sets(&b, &mut |s| {
            total += 1;
            sets.insert(s);
        });
        assert_eq!(sets.len(), total);
        assert_eq!(total, 131);
    }

    // Re-enumerates with explicit domino lists to compare whole sets.
    fn enumerate_sets(b: &Board, out: &mut dyn FnMut(Vec<(usize, usize, bool)>)) {
        fn go(b: &Board, k: usize, used: &mut Vec<bool>, acc: &mut Vec<(usize, usize, bool)>, out: &mut dyn FnMut(Vec<(usize, usize, bool)>)) {
            let cols = b.cols();
            let mut k = k;
            while k < used.len() && used[k] {
                k += 1;
            }
            if k == used.len() {
                let mut s = acc.clone();
                s.sort();
                out(s);
                return;
            }
            let (r, c) = (k / cols, k % cols);
            go(b, k + 1, used, acc, out);
            if r + 1 < b.rows() && !used[k + cols] {
                used[k] = true;
                used[k + cols] = true;
                acc.push((r, c, true));
                go(b, k + 1, used, acc, out);
                acc.pop();
                used[k] = false;
                used[k + cols] = false;
            }
            if c + 1 < cols && !used[k + 1] {
                used[k] = true;
                used[k + 1] = true;
                acc.push((r, c, false));
                go(b, k + 2, used, acc, out);
                acc.pop();
                used[k] = false;
                used[k + 1] = false;
            }
        }
        let mut used = vec![false; b.rows() * b.cols()];
        go(b, 0, &mut used, &mut Vec::new(), out);
    }

    #[test]
    fn small_rectangles() {
        let b = Board::rectangle(2, 2).unwrap();
        assert_eq!(brute_poly(&b, CensusKind::All, DEFAULT_CAP).unwrap(), "1+2x+2y+x^2+y^2".parse().unwrap());
        let b = Board::rectangle(3, 2).unwrap();
        assert_eq!(brute_poly(&b, CensusKind::Maximal, DEFAULT_CAP).unwrap(), "2x^2y+2x^2+y^3".parse().unwrap());
        assert_eq!(brute_poly(&b, CensusKind::Maximal, DEFAULT_CAP).unwrap().total(), 5.into());
    }

    #[test]
    fn right_end_block() {
        let table = brute_count_table(CensusKind::RightEnd, 4, 4, DEFAULT_CAP).unwrap();
        let expected = [[1, 1, 2, 2], [2, 4, 11, 25], [3, 9, 48, 172], [5, 25, 227, 1427]];
        for (row, exp) in table.iter().zip(expected) {
            assert_eq!(row, &exp.map(BigInt::from).to_vec());
        }
    }

    #[test]
    fn blocked_cells_and_cap() {
        let b = Board::parse("##.\n...").unwrap();
        assert_eq!(brute_poly(&b, CensusKind::All, DEFAULT_CAP).unwrap(), "1+x+2y+xy".parse().unwrap());
        let empty = Board::parse("##").unwrap();
        assert!(brute_poly(&empty, CensusKind::Maximal, DEFAULT_CAP).unwrap().is_one());
        let big = Board::rectangle(5, 5).unwrap();
        assert_eq!(brute_poly(&big, CensusKind::All, 20).unwrap_err(), Error::OracleCap { cells: 25, cap: 20 });
    }
}
