//! Dense exact linear systems over Q.

use num_traits::Zero;

use super::field::{Field, Rational};

/// Solves `A x = b` by reduced row echelon form. Free variables are set to
/// zero, so the answer is deterministic. `None` if inconsistent.
pub fn solve_linear(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut v = r.clone();
            v.push(x.clone());
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv()?;
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn unique_and_free() {
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert_eq!(solve_linear(&a, &[int(3), int(1)]), Some(vec![int(2), int(1)]));
        let a = vec![vec![int(1), int(1)]];
        assert_eq!(solve_linear(&a, &[int(3)]), Some(vec![int(3), int(0)]));
        let a = vec![vec![int(1)], vec![int(1)]];
        assert_eq!(solve_linear(&a, &[int(1), int(2)]), None);
    }
}
