//! Built-in matrices addressable by name.

use super::{validate_gcm, CartanMatrix};

const ENTRIES: &[(&str, &[&[i64]])] = &[
    ("A1", &[&[2]]),
    ("A2", &[&[2, -1], &[-1, 2]]),
    ("A1xA1", &[&[2, 0], &[0, 2]]),
    ("A3", &[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]),
    ("B2", &[&[2, -2], &[-1, 2]]),
    ("G2", &[&[2, -1], &[-3, 2]]),
    ("A1^(1)", &[&[2, -2], &[-2, 2]]),
];

/// The finite-type entries of the catalog.
pub const FINITE_TYPE: &[&str] = &["A1", "A2", "A1xA1", "A3", "B2", "G2"];

pub fn catalog_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(n, _)| *n).collect()
}

/// Looks up a catalog matrix; `affine-A1` and `A1(1)` alias `A1^(1)`.
pub fn catalog(name: &str) -> Option<CartanMatrix> {
    let key = match name {
        "affine-A1" | "A1(1)" | "A1_1" => "A1^(1)",
        other => other,
    };
    ENTRIES
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(key))
        .map(|(_, rows)| validate_gcm(rows.iter().map(|r| r.to_vec()).collect()).expect("catalog entries are valid"))
}
