//! Localized supercommutative polynomial rings `K[x_ij][D^{-1}]` and their
//! tensor powers.

mod invariance;
mod matrix;
mod morphism;
mod poly;
mod ring;

pub use invariance::{
    check_invariant_mod_l, l_monomials, l_tensor_membership, z_element, CertificateGroup,
    InvarianceCertificate,
};
pub use matrix::{
    adjugate, block_matrix, det, identity, invert_even_block, mat_mul, matrices_equal, Matrix,
};
pub use morphism::Morphism;
pub use poly::{Monomial, Poly};
pub use ring::{permutations, EvenBlock, Ring, RingParams, Symbol, DEFAULT_MAX_DEGREE};

use crate::arith::Scalar;
use crate::error::Result;
use crate::linalg::exact_rank;

/// Coefficient rows of the given elements over a common denominator.
pub fn coefficient_rows(polys: &[Poly]) -> Result<Vec<Vec<Scalar>>> {
    let Some(first) = polys.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let mut levels = vec![0u16; ring.nden()];
    for p in polys {
        if p.ring() != &ring {
            return Err(crate::error::Error::ContextMismatch);
        }
        for (l, d) in levels.iter_mut().zip(p.den_levels()) {
            *l = (*l).max(d);
        }
    }
    let cleared: Vec<Poly> = polys
        .iter()
        .map(|p| p.clear_to(&levels))
        .collect::<Result<_>>()?;
    let mut index = std::collections::BTreeMap::new();
    for p in &cleared {
        for mono in p.terms().keys() {
            let next = index.len();
            index.entry(mono.clone()).or_insert(next);
        }
    }
    Ok(cleared
        .iter()
        .map(|p| {
            let mut row = vec![ring.field().zero(); index.len()];
            for (mono, c) in p.terms() {
                row[index[mono]] = c.clone();
            }
            row
        })
        .collect())
}

/// Exact rank of the span of the given elements.
pub fn independence_rank(polys: &[Poly]) -> Result<usize> {
    let Some(first) = polys.first() else {
        return Ok(0);
    };
    let field = *first.ring().field();
    Ok(exact_rank(&field, &coefficient_rows(polys)?))
}

#[cfg(test)]
mod tests;
