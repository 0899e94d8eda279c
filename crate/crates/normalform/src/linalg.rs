//! Minimal exact linear algebra over the rationals: just enough for the
//! order-by-order solves (rank, null-space membership, dense solve).

use diffpoly::Rat;
use num_traits::Zero;

use crate::{Error, Result};

/// Row-reduces `m` in place (Gauss–Jordan with exact pivots) and returns its
/// rank.  Column order is preserved; no pivoting strategy is needed since
/// arithmetic is exact.
pub fn row_reduce(m: &mut Vec<Vec<Rat>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = {
            let p = &m[rank][col];
            Rat::from_integer(1.into()) / p
        };
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in 0..cols {
                let delta = &factor * &m[rank][c];
                m[r][c] = &m[r][c] - &delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a rational matrix.
pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut work = m.to_vec();
    row_reduce(&mut work)
}

/// Solves the square system `a x = rhs` exactly.  Errors if `a` is singular
/// or the dimensions disagree.
pub fn solve_square(a: &[Vec<Rat>], rhs: &[Rat]) -> Result<Vec<Rat>> {
    let n = a.len();
    if n == 0 || a.iter().any(|row| row.len() != n) || rhs.len() != n {
        return Err(Error::Singular(format!(
            "expected a square {n}x{n} system with matching right-hand side"
        )));
    }
    // Augment with the right-hand side and reduce.
    let mut work: Vec<Vec<Rat>> = a
        .iter()
        .zip(rhs.iter())
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let rank = row_reduce(&mut work);
    if rank < n {
        return Err(Error::Singular(format!(
            "coefficient matrix has rank {rank} < {n}"
        )));
    }
    // After full reduction the augmented matrix is [I | x].
    Ok(work.into_iter().map(|row| row[n].clone()).collect())
}

/// Matrix–vector product `m v` (rows of `m` dotted with `v`).
pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v.iter())
                .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

/// Dot product of two rational vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b.iter())
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}
