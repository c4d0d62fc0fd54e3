mod common;

use proptest::prelude::*;

use domcensus::oracle::{brute_poly, DEFAULT_CAP};
use domcensus::{Board, Cell, Census, CensusKind};

#[test]
fn rectangles_up_to_twenty_cells() {
    let census = Census::global();
    for m in 1..=5 {
        for n in 1..=5 {
            if m * n > DEFAULT_CAP {
                continue;
            }
            let b = Board::rectangle(m, n).unwrap();
            for kind in CensusKind::ALL {
                let oracle = brute_poly(&b, kind, DEFAULT_CAP).unwrap();
                assert_eq!(census.rect(kind, m, n).unwrap(), oracle, "{kind} {m}x{n}");
                assert_eq!(census.board(kind, &b).unwrap(), oracle, "{kind} {m}x{n} as a board");
            }
        }
    }
}

#[test]
fn bundled_corpus() {
    let census = Census::global();
    for b in common::corpus() {
        for kind in CensusKind::ALL {
            assert_eq!(census.board(kind, &b).unwrap(), brute_poly(&b, kind, DEFAULT_CAP).unwrap(), "{kind} on\n{b}");
        }
    }
}

#[test]
fn ends_union_matches_enumeration() {
    let census = Census::global();
    for m in 1..=4 {
        for n in 1..=4 {
            let b = Board::rectangle(m, n).unwrap();
            let left = brute_poly(&b, CensusKind::LeftEnd, DEFAULT_CAP).unwrap();
            let right = brute_poly(&b, CensusKind::RightEnd, DEFAULT_CAP).unwrap();
            let both = brute_poly(&b, CensusKind::Maximal, DEFAULT_CAP).unwrap();
            assert_eq!(census.ends_union(m, n).unwrap(), &(&left + &right) - &both);
        }
    }
}

fn sparse_board() -> impl Strategy<Value = Board> {
    (1usize..=6, 1usize..=6)
        .prop_flat_map(|(r, c)| (Just((r, c)), prop::collection::vec(prop::bool::weighted(0.6), r * c)))
        .prop_filter_map("at most 16 playable cells", |((r, c), cells)| {
            (cells.iter().filter(|p| **p).count() <= 16).then(|| {
                let cells = cells.into_iter().map(|p| if p { Cell::Playable } else { Cell::Blocked }).collect();
                Board::from_cells(r, c, cells).unwrap()
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_boards_agree(b in sparse_board()) {
        let census = Census::global();
        for kind in CensusKind::ALL {
            prop_assert_eq!(census.board(kind, &b).unwrap(), brute_poly(&b, kind, DEFAULT_CAP).unwrap(), "{} on\n{}", kind, b);
        }
    }
}
