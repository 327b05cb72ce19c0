//! Dense tableau simplex for `max c.x` subject to `A x <= b`, `x >= 0`, with
//! `b >= 0` so the slack basis is feasible from the start. Bland's rule
//! prevents cycling.

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: f64, x: Vec<f64> },
    Unbounded,
}

pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    assert!(b.iter().all(|&v| v >= 0.0), "origin must be feasible");
    let width = n + m + 1;
    // rows 0..m constraints, row m objective (reduced costs, negated)
    let mut t = vec![vec![0.0; width]; m + 1];
    for i in 0..m {
        assert_eq!(a[i].len(), n);
        t[i][..n].copy_from_slice(&a[i]);
        t[i][n + i] = 1.0;
        t[i][width - 1] = b[i];
    }
    for j in 0..n {
        t[m][j] = -c[j];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let eps = 1e-13;

    while let Some(col) = (0..n + m).find(|&j| t[m][j] < -eps) {
        let mut pivot: Option<(usize, f64)> = None;
        for i in 0..m {
            if t[i][col] > eps {
                let ratio = t[i][width - 1] / t[i][col];
                pivot = match pivot {
                    None => Some((i, ratio)),
                    Some((pi, pr)) => {
                        if ratio < pr - 1e-15 || (ratio <= pr + 1e-15 && basis[i] < basis[pi]) {
                            Some((i, ratio))
                        } else {
                            Some((pi, pr))
                        }
                    }
                };
            }
        }
        let Some((row, _)) = pivot else {
            return LpOutcome::Unbounded;
        };
        let p = t[row][col];
        for v in t[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = t[row].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != row && r[col] != 0.0 {
                let f = r[col];
                for (v, pv) in r.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        basis[row] = col;
    }

    let mut x = vec![0.0; n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1];
        }
    }
    LpOutcome::Optimal {
        value: t[m][width - 1],
        x,
    }
}

/// `max_{m in simplex} min_j m_j e_j`, posed as an LP in `(t, m_1..m_k)`.
/// Infinite `e_j` impose no constraint.
pub fn max_min_allocation(e: &[f64]) -> f64 {
    let k = e.len();
    let mut c = vec![0.0; k + 1];
    c[0] = 1.0;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (j, &ej) in e.iter().enumerate() {
        if ej.is_finite() {
            let mut row = vec![0.0; k + 1];
            row[0] = 1.0;
            row[j + 1] = -ej;
            a.push(row);
            b.push(0.0);
        }
    }
    let mut total = vec![1.0; k + 1];
    total[0] = 0.0;
    a.push(total);
    b.push(1.0);
    match maximize(&c, &a, &b) {
        LpOutcome::Optimal { value, .. } => value,
        LpOutcome::Unbounded => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_lp() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
        let out = maximize(
            &[3.0, 5.0],
            &[vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 2.0]],
            &[4.0, 12.0, 18.0],
        );
        match out {
            LpOutcome::Optimal { value, x } => {
                assert!((value - 36.0).abs() < 1e-12);
                assert!((x[0] - 2.0).abs() < 1e-12 && (x[1] - 6.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn allocation_examples() {
        assert!((max_min_allocation(&[1.0, 3.0]) - 0.75).abs() < 1e-14);
        assert!((max_min_allocation(&[2.0, 2.0]) - 1.0).abs() < 1e-14);
        assert_eq!(max_min_allocation(&[f64::INFINITY, 4.0]), 4.0);
        assert_eq!(max_min_allocation(&[f64::INFINITY]), f64::INFINITY);
    }
}
