#![allow(dead_code)]

use std::path::PathBuf;

use domcensus::cli::parse_corpus;
use domcensus::{BivariatePolynomial, Board};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn poly_file(name: &str) -> BivariatePolynomial {
    data(name).trim().parse().unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn board_file(name: &str) -> Board {
    Board::parse(&data(name)).unwrap()
}

pub fn corpus() -> Vec<Board> {
    parse_corpus(&data("corpus.boards")).unwrap()
}

/// The `rows x cols` board with only the given sub-rectangle playable.
pub fn embedded_rectangle(rows: usize, cols: usize, top: usize, left: usize, h: usize, w: usize) -> Board {
    let text: Vec<String> = (0..rows)
        .map(|r| {
            (0..cols)
                .map(|c| if (top..top + h).contains(&r) && (left..left + w).contains(&c) { '.' } else { '#' })
                .collect()
        })
        .collect();
    Board::parse(&text.join("\n")).unwrap()
}
