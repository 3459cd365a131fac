//! Gaussian elimination over ℚ and over `F_p`.

use num_traits::{One, Zero};

use super::modp;
use super::rational::Rational;

/// Solves `A x = b` for `A` given by columns. Returns one solution (free variables zero).
pub fn solve_columns_q(columns: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let rows = rhs.len();
    let cols = columns.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = reduce_q(&mut m, cols);
    for row in m.iter().skip(pivots.len()) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Reduced row echelon form on the first `cols` columns; returns pivot columns.
fn reduce_q(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (pivot_row, other) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (o, pv) in other.iter_mut().zip(pivot_row.iter()) {
                    *o -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of the vectors `vs` over ℚ.
pub fn rank_q(vs: &[Vec<Rational>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let cols = vs[0].len();
    let mut m: Vec<Vec<Rational>> = vs.to_vec();
    reduce_q(&mut m, cols).len()
}

/// Solves `A x = b` over `F_p` for `A` given by columns.
pub fn solve_columns_fp(columns: &[Vec<u64>], rhs: &[u64], p: u64) -> Option<Vec<u64>> {
    let rows = rhs.len();
    let cols = columns.len();
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            let mut row: Vec<u64> = columns.iter().map(|c| c[i] % p).collect();
            row.push(rhs[i] % p);
            row
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = modp::inv(m[r][c], p).expect("nonzero pivot");
        for v in m[r].iter_mut() {
            *v = modp::mul(*v, inv, p);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (o, &pv) in row.iter_mut().zip(pivot_row.iter()) {
                    *o = modp::sub(*o, modp::mul(f, pv, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m.iter().skip(r).any(|row| row[cols] != 0) {
        return None;
    }
    let mut x = vec![0; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols];
    }
    Some(x)
}

/// Rank of the vectors `vs` over `F_p`.
pub fn rank_fp(vs: &[Vec<u64>], p: u64) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let cols = vs[0].len();
    let mut m: Vec<Vec<u64>> = vs
        .iter()
        .map(|v| v.iter().map(|c| c % p).collect())
        .collect();
    let rows = m.len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = modp::inv(m[r][c], p).expect("nonzero pivot");
        let pivot_row: Vec<u64> = m[r].iter().map(|&v| modp::mul(v, inv, p)).collect();
        for row in m.iter_mut().skip(r + 1) {
            let f = row[c];
            if f != 0 {
                for (o, &pv) in row.iter_mut().zip(pivot_row.iter()) {
                    *o = modp::sub(*o, modp::mul(f, pv, p), p);
                }
            }
        }
        r += 1;
    }
    r
}

pub fn identity_q(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn rational_system() {
        let cols = vec![vec![rat(1), rat(3)], vec![rat(2), rat(4)]];
        let x = solve_columns_q(&cols, &[rat(5), rat(6)]).unwrap();
        assert_eq!(x, vec![rat(-4), Rational::new(9.into(), 2.into())]);
        let dependent = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert!(solve_columns_q(&dependent, &[rat(1), rat(1)]).is_none());
        assert_eq!(rank_q(&dependent), 1);
    }

    #[test]
    fn prime_field_system() {
        let cols = vec![vec![1, 0], vec![2, 1]];
        assert_eq!(solve_columns_fp(&cols, &[1, 2], 3), Some(vec![0, 2]));
        assert_eq!(rank_fp(&[vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(rank_fp(&[vec![1, 2], vec![2, 1]], 3), 1);
    }
}
