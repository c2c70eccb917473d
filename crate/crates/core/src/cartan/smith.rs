//! Smith normal form over the integers with unimodular transforms.

/// `left * A * right = diag(diagonal, 0, ..., 0)`, with `left` and `right`
/// unimodular and positive diagonal entries each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub left: Vec<Vec<i64>>,
    pub right: Vec<Vec<i64>>,
    pub diagonal: Vec<i64>,
    pub rank: usize,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

// row_i -= f * row_k, mirrored on the left transform
fn row_op(a: &mut [Vec<i64>], p: &mut [Vec<i64>], i: usize, k: usize, f: i64) {
    for rows in [&mut *a, &mut *p] {
        let src = rows[k].clone();
        for (x, y) in rows[i].iter_mut().zip(&src) {
            *x -= f * y;
        }
    }
}

// col_j -= f * col_k, mirrored on the right transform
fn col_op(a: &mut [Vec<i64>], r: &mut [Vec<i64>], j: usize, k: usize, f: i64) {
    for rows in [&mut *a, &mut *r] {
        for row in rows.iter_mut() {
            row[j] -= f * row[k];
        }
    }
}

fn swap_cols(a: &mut [Vec<i64>], j: usize, k: usize) {
    for row in a.iter_mut() {
        row.swap(j, k);
    }
}

pub fn smith_normal_form(m: &[Vec<i64>]) -> Smith {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let mut p = identity(rows);
    let mut r = identity(cols);
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        p.swap(t, bi);
        swap_cols(&mut a, t, bj);
        swap_cols(&mut r, t, bj);
        loop {
            let piv = a[t][t];
            for i in t + 1..rows {
                let f = a[i][t].div_euclid(piv);
                if f != 0 {
                    row_op(&mut a, &mut p, i, t, f);
                }
            }
            for j in t + 1..cols {
                let f = a[t][j].div_euclid(piv);
                if f != 0 {
                    col_op(&mut a, &mut r, j, t, f);
                }
            }
            let mut smaller: Option<(usize, usize)> = None;
            for i in t + 1..rows {
                if a[i][t] != 0 && smaller.is_none_or(|(x, y)| a[i][t].abs() < a[x][y].abs()) {
                    smaller = Some((i, t));
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 && smaller.is_none_or(|(x, y)| a[t][j].abs() < a[x][y].abs()) {
                    smaller = Some((t, j));
                }
            }
            if let Some((i, j)) = smaller {
                if i != t {
                    a.swap(t, i);
                    p.swap(t, i);
                } else {
                    swap_cols(&mut a, t, j);
                    swap_cols(&mut r, t, j);
                }
                continue;
            }
            // divisibility of the trailing block
            let piv = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % piv != 0));
            match bad {
                Some(i) => row_op(&mut a, &mut p, t, i, -1),
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut().chain(p[t].iter_mut()) {
                *x = -*x;
            }
        }
        diagonal.push(a[t][t]);
    }
    let rank = diagonal.len();
    Smith {
        left: p,
        right: r,
        diagonal,
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        (0..a.len())
            .map(|i| {
                (0..b[0].len())
                    .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    fn check(m: Vec<Vec<i64>>) -> Smith {
        let s = smith_normal_form(&m);
        let d = mul(&mul(&s.left, &m), &s.right);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = if i == j && i < s.rank { s.diagonal[i] } else { 0 };
                assert_eq!(x, want, "entry ({i},{j}) of {d:?}");
            }
        }
        for w in s.diagonal.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        s
    }

    #[test]
    fn affine_a1() {
        let s = check(vec![vec![2, -2], vec![-2, 2]]);
        assert_eq!(s.diagonal, vec![2]);
    }

    #[test]
    fn invertible_and_degenerate() {
        assert_eq!(check(vec![vec![2, -1], vec![-1, 2]]).diagonal, vec![1, 3]);
        assert_eq!(check(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]).rank, 2);
        assert_eq!(check(vec![vec![2, -4], vec![-1, 2]]).rank, 1);
        assert_eq!(check(vec![vec![6, 4], vec![4, 6]]).diagonal, vec![2, 10]);
    }
}
