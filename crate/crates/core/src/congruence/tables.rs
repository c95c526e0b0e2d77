//! Embedded constant tables and their printed layouts.

use std::fmt::Write;

/// θ(λ, μ) for 0 ≤ μ ≤ 4 (rows) and 0 ≤ λ ≤ 10 (columns).
pub const THETA: [[u8; 11]; 5] = [
    [0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 0],
    [1, 1, 0, 1, 0, 0, 0, 1, 1, 0, 0],
    [1, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 1, 1, 0, 0, 0],
];

/// δ(μ, ν) indexed by μ mod 5 (rows) and ν mod 5 (columns).
pub const DELTA: [[i32; 5]; 5] = [
    [-1, 8, 7, 6, 15],
    [0, 9, 8, 2, 11],
    [1, 10, 4, 13, 12],
    [2, 6, 5, 4, 13],
    [3, 7, 6, 5, 9],
];

/// α by residue of c + 11d mod 120: row i holds residues 24i + 1 ..= 24i + 24.
pub const ALPHA: [[u8; 24]; 5] = [
    [2, 1, 2, 1, 1, 1, 2, 2, 1, 1, 2, 2, 1, 2, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0],
    [1, 1, 1, 1, 2, 2, 1, 1, 2, 2, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 0, 0],
    [1, 1, 2, 2, 1, 1, 1, 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0],
    [2, 1, 1, 1, 2, 1, 2, 1, 2, 1, 2, 2, 1, 1, 1, 2, 1, 2, 1, 2, 1, 1, 1, 0],
    [0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 0, 0],
];

/// Replacement for the last column of [`ALPHA`] when c + 11d < 0, rows in order.
pub const ALPHA_NEGATIVE_LAST_COLUMN: [u8; 5] = [2, 2, 2, 0, 2];

pub fn render_theta() -> String {
    let mut out = String::from("theta(lambda, mu)\nmu\\lambda");
    for l in 0..11 {
        write!(out, " {l:>2}").unwrap();
    }
    out.push('\n');
    for (mu, row) in THETA.iter().enumerate() {
        write!(out, "{mu:>9}").unwrap();
        for v in row {
            write!(out, " {v:>2}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn render_delta() -> String {
    let mut out = String::from("delta(mu, nu)\nmu\\nu");
    for nu in 0..5 {
        write!(out, " {nu:>3}").unwrap();
    }
    out.push('\n');
    for (mu, row) in DELTA.iter().enumerate() {
        write!(out, "{mu:>5}").unwrap();
        for v in row {
            write!(out, " {v:>3}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Prints an α grid with rows labelled 0, 24, ..., 96 and columns 1..24,
/// followed by the negative last column.
pub fn render_alpha(grid: &[[u8; 24]; 5], negative_last_column: &[u8; 5]) -> String {
    let mut out = String::from("alpha(c + 11d mod 120)\n    ");
    for j in 1..=24 {
        write!(out, " {j:>2}").unwrap();
    }
    out.push('\n');
    for (i, row) in grid.iter().enumerate() {
        write!(out, "{:>4}", 24 * i).unwrap();
        for v in row {
            write!(out, " {v:>2}").unwrap();
        }
        out.push('\n');
    }
    let neg: Vec<String> = negative_last_column.iter().map(u8::to_string).collect();
    writeln!(out, "last column when c + 11d < 0: {}", neg.join(", ")).unwrap();
    out
}
