//! Exact linear algebra over Q: fraction-free rank and rational solving.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ncalg::Q;

/// Sparse row: column index to nonzero rational entry.
pub type SparseRow = BTreeMap<usize, Q>;

/// Clears denominators row by row and runs Bareiss elimination.
pub fn rank(rows: &[SparseRow], ncols: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let l = r.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let mut dense = vec![BigInt::zero(); ncols];
            for (&j, c) in r {
                dense[j] = c.numer() * (&l / c.denom());
            }
            dense
        })
        .collect();
    bareiss_rank(&mut m, ncols)
}

fn bareiss_rank(m: &mut [Vec<BigInt>], ncols: usize) -> usize {
    let nrows = m.len();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Solves `A x = b` over Q. Returns one solution (free variables set to
/// zero) or `None` if inconsistent.
pub fn solve(a: &[SparseRow], b: &[Q], ncols: usize) -> Option<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut dense = vec![Q::zero(); ncols + 1];
            for (&j, c) in row {
                dense[j] = c.clone();
            }
            dense[ncols] = rhs.clone();
            dense
        })
        .collect();
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for j in c..=ncols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=ncols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    Some(x)
}
