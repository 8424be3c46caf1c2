//! Small matrices with polynomial entries.

use crate::error::{Error, Result};

use super::poly::Poly;
use super::ring::{EvenBlock, Ring};

pub type Matrix = Vec<Vec<Poly>>;

/// The generic block `X11` or `X22` of factor `copy`.
pub fn block_matrix(ring: &Ring, copy: usize, block: EvenBlock) -> Result<Matrix> {
    let idx: Vec<usize> = ring.block_range(block).collect();
    idx.iter()
        .map(|&i| idx.iter().map(|&j| ring.gen(copy, i, j)).collect())
        .collect()
}

fn check_square(a: &Matrix) -> Result<usize> {
    let k = a.len();
    if a.iter().any(|row| row.len() != k) {
        return Err(Error::ShapeMismatch(format!(
            "{k}-row matrix is not square"
        )));
    }
    Ok(k)
}

/// Laplace expansion along the first row. Entries must commute with each other.
pub fn det(ring: &Ring, a: &Matrix) -> Result<Poly> {
    let k = check_square(a)?;
    if k == 0 {
        return Ok(ring.one());
    }
    let mut out = ring.zero();
    for c in 0..k {
        if a[0][c].is_zero() {
            continue;
        }
        let minor = remove(a, 0, c);
        let term = a[0][c].mul(&det(ring, &minor)?)?;
        out = if c % 2 == 0 {
            out.add(&term)?
        } else {
            out.sub(&term)?
        };
    }
    Ok(out)
}

fn remove(a: &Matrix, row: usize, col: usize) -> Matrix {
    a.iter()
        .enumerate()
        .filter(|&(r, _)| r != row)
        .map(|(_, line)| {
            line.iter()
                .enumerate()
                .filter(|&(c, _)| c != col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

pub fn adjugate(ring: &Ring, a: &Matrix) -> Result<Matrix> {
    let k = check_square(a)?;
    let mut adj = vec![vec![ring.zero(); k]; k];
    for r in 0..k {
        for c in 0..k {
            let cof = det(ring, &remove(a, r, c))?;
            adj[c][r] = if (r + c) % 2 == 0 { cof } else { cof.neg() };
        }
    }
    Ok(adj)
}

/// Inverse of a generic even diagonal block: its adjugate times the inverted determinant.
pub fn invert_even_block(ring: &Ring, copy: usize, block: EvenBlock) -> Result<Matrix> {
    let a = block_matrix(ring, copy, block)?;
    let d = ring.den_inv(copy, block);
    adjugate(ring, &a)?
        .into_iter()
        .map(|row| row.iter().map(|x| x.mul(&d)).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let inner = b.len();
    if a.iter().any(|row| row.len() != inner) {
        return Err(Error::ShapeMismatch("inner dimensions differ".into()));
    }
    let Some(ring) = a.iter().chain(b).flatten().next().map(|p| p.ring().clone()) else {
        return Ok(vec![Vec::new(); a.len()]);
    };
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![ring.zero(); cols]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for j in 0..cols {
            for (k, x) in row.iter().enumerate() {
                out[i][j] = out[i][j].add(&x.mul(&b[k][j])?)?;
            }
        }
    }
    Ok(out)
}

pub fn identity(ring: &Ring, k: usize) -> Matrix {
    (0..k)
        .map(|i| (0..k).map(|j| ring.from_i64((i == j) as i64)).collect())
        .collect()
}

/// Entrywise equality modulo denominators.
pub fn matrices_equal(a: &Matrix, b: &Matrix) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for (ra, rb) in a.iter().zip(b) {
        if ra.len() != rb.len() {
            return Ok(false);
        }
        for (x, y) in ra.iter().zip(rb) {
            if !x.equals(y)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
