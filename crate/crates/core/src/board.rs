//! Boards with missing or occupied squares, and the row-by-row transfer
//! matrices that count positions on them.
//!
//! A board is a rectangle of cells, each playable or blocked. Blocked cells
//! model holes in a non-rectangular board as well as squares already covered
//! by dominoes in a mid-game position. Row 1 is the top row.
//!
//! Each row splits into maximal runs of playable cells (segments). A segment
//! of length `q` takes the family's length-`q` boundary bar matrix, restricted
//! so that any edge facing a blocked cell or the board edge carries label 0;
//! the segments of a row are combined with the Kronecker product, left to
//! right. Multiplying the row matrices with the bottom row leftmost leaves a
//! `1 x 1` matrix holding the board's polynomial.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::barstate::{BarFamily, BarStates, LabelProjection};
use crate::error::{Error, Result};
use crate::polymatrix::{LabelPattern, LabelSymbol, PolyMatrix};
use crate::polynomial::BivariatePolynomial as Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Playable,
    Blocked,
}

/// A rectangular grid of cells. Cell coordinates are 0-based `(row, col)`
/// with row 0 at the top; row-numbered operations such as [`plan_row`] take
/// 1-based rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Board {
    rows: usize,
    cols: usize,
    cells: Vec<Cell>,
}

impl Board {
    /// The fully playable `rows x cols` board.
    pub fn rectangle(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidSize(rows, cols));
        }
        Ok(Self { rows, cols, cells: vec![Cell::Playable; rows * cols] })
    }

    /// The `0 x 0` board. Its polynomial is 1.
    pub fn empty() -> Self {
        Self { rows: 0, cols: 0, cells: Vec::new() }
    }

    pub fn from_cells(rows: usize, cols: usize, cells: Vec<Cell>) -> Result<Self> {
        if (rows == 0) != (cols == 0) {
            return Err(Error::InvalidSize(rows, cols));
        }
        if cells.len() != rows * cols {
            return Err(Error::DimensionMismatch { op: "from_cells", left: (rows, cols), right: (cells.len(), 1) });
        }
        Ok(Self { rows, cols, cells })
    }

    /// Parses lines of `.` (playable) and `#` (blocked). Lines starting with
    /// `%` are comments; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut grid: Vec<Vec<Cell>> = Vec::new();
        let mut width = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r').trim_end();
            if line.starts_with('%') || line.is_empty() {
                continue;
            }
            let row = line
                .chars()
                .map(|c| match c {
                    '.' => Ok(Cell::Playable),
                    '#' => Ok(Cell::Blocked),
                    other => Err(Error::BoardParse {
                        line: lineno + 1,
                        message: format!("illegal character {other:?}"),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(Error::BoardParse {
                        line: lineno + 1,
                        message: format!("line has {} cells, expected {w}", row.len()),
                    })
                }
                Some(_) => {}
            }
            grid.push(row);
        }
        let Some(cols) = width else {
            return Err(Error::BoardParse { line: 0, message: "empty board".into() });
        };
        Ok(Self { rows: grid.len(), cols, cells: grid.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell(&self, row: usize, col: usize) -> Cell {
        self.cells[row * self.cols + col]
    }

    /// Whether `(row, col)` is inside the board and playable. Signed so that
    /// callers can probe neighbours off the edge.
    pub fn is_playable(&self, row: isize, col: isize) -> bool {
        row >= 0
            && col >= 0
            && (row as usize) < self.rows
            && (col as usize) < self.cols
            && self.cell(row as usize, col as usize) == Cell::Playable
    }

    pub fn playable_count(&self) -> usize {
        self.cells.iter().filter(|c| **c == Cell::Playable).count()
    }

    /// True when every cell is playable (and the board is nonempty).
    pub fn is_full_rectangle(&self) -> bool {
        self.rows > 0 && self.cells.iter().all(|c| *c == Cell::Playable)
    }

    fn map_cells(&self, rows: usize, cols: usize, source: impl Fn(usize, usize) -> (usize, usize)) -> Board {
        let mut cells = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let (sr, sc) = source(r, c);
                cells.push(self.cell(sr, sc));
            }
        }
        Board { rows, cols, cells }
    }

    /// Mirror in the main diagonal; swaps the roles of the two players.
    pub fn transpose(&self) -> Board {
        self.map_cells(self.cols, self.rows, |r, c| (c, r))
    }

    /// Quarter turn clockwise.
    pub fn rotate(&self) -> Board {
        let rows = self.rows;
        self.map_cells(self.cols, self.rows, |r, c| (rows - 1 - c, r))
    }

    /// Left-right mirror image.
    pub fn reflect(&self) -> Board {
        let cols = self.cols;
        self.map_cells(self.rows, self.cols, |r, c| (r, cols - 1 - c))
    }

    /// Top-bottom mirror image.
    pub fn flip(&self) -> Board {
        let rows = self.rows;
        self.map_cells(self.rows, self.cols, |r, c| (rows - 1 - r, c))
    }
}

impl FromStr for Board {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Board::parse(s)
    }
}

impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.cell(r, c) == Cell::Playable { "." } else { "#" })?;
            }
            if r + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Board {}x{}:\n{}", self.rows, self.cols, self)
    }
}

/// Parses the board text format.
pub fn parse_board(text: &str) -> Result<Board> {
    Board::parse(text)
}

/// A maximal run of playable cells in one row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    /// 1-based column of the leftmost cell.
    pub start: usize,
    pub len: usize,
    /// Top labels: `0` where the cell above is blocked or off the board.
    pub top: LabelPattern,
    /// Bottom labels: `0` where the cell below is blocked or off the board.
    pub bottom: LabelPattern,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RowPlan {
    pub segments: Vec<Segment>,
}

/// Splits 1-based row `r` into segments and derives their edge restrictions.
pub fn plan_row(b: &Board, r: usize) -> RowPlan {
    assert!(r >= 1 && r <= b.rows, "row {r} out of range 1..={}", b.rows);
    let row = (r - 1) as isize;
    let edge = |dr: isize, c: usize| {
        if b.is_playable(row + dr, c as isize) {
            LabelSymbol::Free
        } else {
            LabelSymbol::Fixed(0)
        }
    };
    let mut segments = Vec::new();
    let mut c = 0;
    while c < b.cols {
        if !b.is_playable(row, c as isize) {
            c += 1;
            continue;
        }
        let start = c;
        while c < b.cols && b.is_playable(row, c as isize) {
            c += 1;
        }
        segments.push(Segment {
            start: start + 1,
            len: c - start,
            top: LabelPattern::new((start..c).map(|k| edge(-1, k)).collect()),
            bottom: LabelPattern::new((start..c).map(|k| edge(1, k)).collect()),
        });
    }
    RowPlan { segments }
}

/// Transfer matrix of 1-based row `r` for the given tile family.
///
/// Columns are indexed by the labels on the row's open top edges and rows by
/// the labels on its open bottom edges. For the maximal family a cell with
/// nothing playable below may be empty, so its bottom label ranges over 0 and
/// 1 and is summed out rather than fixed.
pub fn row_matrix(b: &Board, r: usize, family: BarFamily, bars: &BarStates) -> Result<PolyMatrix> {
    let plan = plan_row(b, r);
    let mut acc = PolyMatrix::scalar(Poly::one());
    for seg in &plan.segments {
        let m = segment_matrix(seg, family, bars)?;
        acc = acc.kronecker(&m);
    }
    Ok(acc)
}

fn segment_matrix(seg: &Segment, family: BarFamily, bars: &BarStates) -> Result<PolyMatrix> {
    if seg.top.is_all_free() && seg.bottom.is_all_free() {
        return Ok(match family {
            BarFamily::General => bars.general(seg.len)?.g0.clone(),
            BarFamily::Maximal => bars.maximal(seg.len)?.boundary(),
            BarFamily::RightEnd => bars.right_end(seg.len)?.boundary(),
        });
    }
    let rows: Vec<LabelProjection> = seg
        .bottom
        .symbols()
        .iter()
        .map(|s| match (s, family) {
            (LabelSymbol::Free, _) => LabelProjection::Keep,
            (LabelSymbol::Fixed(_), BarFamily::Maximal) => LabelProjection::Sum(vec![0, 1]),
            (LabelSymbol::Fixed(d), _) => LabelProjection::Fix(*d),
        })
        .collect();
    let cols: Vec<LabelProjection> = seg
        .top
        .symbols()
        .iter()
        .map(|s| match s {
            LabelSymbol::Free => LabelProjection::Keep,
            LabelSymbol::Fixed(d) => LabelProjection::Fix(*d),
        })
        .collect();
    bars.projected(family, &rows, &cols)
}

/// Polynomial of `b` under the given family: the sole entry of
/// `R_m * ... * R_1`.
pub fn chain_poly(b: &Board, family: BarFamily, bars: &BarStates) -> Result<Poly> {
    let mut acc = PolyMatrix::scalar(Poly::one());
    for r in (1..=b.rows).rev() {
        let m = row_matrix(b, r, family, bars)?;
        acc = acc.mul(&m)?;
    }
    debug_assert_eq!(acc.dims(), (1, 1));
    acc.entry(1, 1)
}

/// Generating polynomial of all positions on `b`.
pub fn board_poly(b: &Board, bars: &BarStates) -> Result<Poly> {
    chain_poly(b, BarFamily::General, bars)
}

/// 4-connected components of the playable cells, each cropped to its
/// bounding box with every other cell blocked. Ordered by each component's
/// topmost, then leftmost, cell.
pub fn components(b: &Board) -> Vec<Board> {
    let mut seen = vec![false; b.rows * b.cols];
    let mut out = Vec::new();
    for start in 0..b.rows * b.cols {
        if seen[start] || b.cells[start] != Cell::Playable {
            continue;
        }
        let mut members = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(idx) = queue.pop_front() {
            members.push(idx);
            let (r, c) = ((idx / b.cols) as isize, (idx % b.cols) as isize);
            for (dr, dc) in [(-1, 0), (1, 0), (0, -1), (0, 1)] {
                let (nr, nc) = (r + dr, c + dc);
                if b.is_playable(nr, nc) {
                    let n = nr as usize * b.cols + nc as usize;
                    if !seen[n] {
                        seen[n] = true;
                        queue.push_back(n);
                    }
                }
            }
        }
        let rows = members.iter().map(|i| i / b.cols);
        let cols = members.iter().map(|i| i % b.cols);
        let (r0, r1) = (rows.clone().min().unwrap(), rows.max().unwrap());
        let (c0, c1) = (cols.clone().min().unwrap(), cols.max().unwrap());
        let (h, w) = (r1 - r0 + 1, c1 - c0 + 1);
        let mut cells = vec![Cell::Blocked; h * w];
        for i in members {
            cells[(i / b.cols - r0) * w + (i % b.cols - c0)] = Cell::Playable;
        }
        out.push(Board { rows: h, cols: w, cells });
    }
    out
}
