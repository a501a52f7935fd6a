//! Exact linear algebra over the rationals: overdetermined solves with a
//! residual check, null directions for diagnostics, and univariate
//! interpolation.

use num_traits::{One, Zero};

use crate::error::LinearError;
use crate::scalar::Rat;

/// Row-reduce in place; returns the pivot columns.
fn row_reduce(m: &mut [Vec<Rat>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    row_reduce(&mut m, ncols).len()
}

/// A nonzero vector `v` with `rows * v = 0`, if the columns are dependent.
pub fn null_vector(rows: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m, ncols);
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rat::zero(); ncols];
    v[free] = Rat::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][free].clone();
    }
    Some(v)
}

/// Solve `rows * x = rhs` for a system with full column rank. Extra rows must
/// be satisfied exactly.
pub fn solve_exact(rows: &[Vec<Rat>], rhs: &[Rat]) -> Result<Vec<Rat>, LinearError> {
    assert_eq!(rows.len(), rhs.len());
    let ncols = rows.first().map_or(0, Vec::len);
    let r = rank(rows);
    if r < ncols {
        return Err(LinearError::RankDeficient {
            rank: r,
            unknowns: ncols,
            null_direction: null_vector(rows).unwrap_or_default(),
        });
    }
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut v = row.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = row_reduce(&mut aug, ncols);
    debug_assert_eq!(pivots.len(), ncols);
    let x: Vec<Rat> = (0..ncols).map(|i| aug[i][ncols].clone()).collect();
    for (i, (row, b)) in rows.iter().zip(rhs).enumerate() {
        let lhs = row.iter().zip(&x).fold(Rat::zero(), |acc, (a, xi)| acc + a * xi);
        if &lhs != b {
            return Err(LinearError::Inconsistent {
                row: i,
                residual: lhs - b,
            });
        }
    }
    Ok(x)
}

/// Coefficients (lowest degree first) of the unique polynomial of degree
/// `< points.len()` through the given points.
pub fn interpolate(points: &[(Rat, Rat)]) -> Result<Vec<Rat>, LinearError> {
    let n = points.len();
    let rows: Vec<Vec<Rat>> = points
        .iter()
        .map(|(x, _)| {
            let mut row = Vec::with_capacity(n);
            let mut p = Rat::one();
            for _ in 0..n {
                row.push(p.clone());
                p = &p * x;
            }
            row
        })
        .collect();
    let rhs: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
    solve_exact(&rows, &rhs)
}
