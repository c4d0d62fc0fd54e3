//! Exact counts of Domineering positions.
//!
//! Positions are counted by a bivariate polynomial whose `x^a y^b`
//! coefficient is the number of positions with `a` vertical (Left) and `b`
//! horizontal (Right) dominoes. Rectangles use powers of bar-state transfer
//! matrices; boards with holes use per-row restricted Kronecker products.
//!
//! ```
//! use domcensus::census::rect_general;
//!
//! let d = rect_general(4, 3).unwrap();
//! assert_eq!(d.coeff(1, 2), 90.into());
//! assert_eq!(d.total(), 823.into());
//! ```

pub mod barstate;
pub mod board;
pub mod census;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod polymatrix;
pub mod polynomial;

pub use barstate::{BarFamily, BarStates, LabelProjection, SizeLimits};
pub use board::{board_poly, components, parse_board, Board, Cell};
pub use census::{Census, CensusKind, PlayRow, PositionReport};
pub use error::{Error, Result};
pub use oracle::brute_poly;
pub use polymatrix::{LabelPattern, LabelSymbol, PolyMatrix};
pub use polynomial::{BivariatePolynomial, UnivariatePolynomial};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/bar-states.md")]
    mod bar_states {}
    #[doc = include_str!("../../../book/src/rectangles.md")]
    mod rectangles {}
    #[doc = include_str!("../../../book/src/boards.md")]
    mod boards {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
