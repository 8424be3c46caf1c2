//! The odd elements `z_ij = (Y21 Y11^{-1})_ij` of the parabolic and their
//! invariance modulo `L ⊗ K[P^-]`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{FieldConfig, Scalar};
use crate::error::{Error, Result};
use crate::linalg::LinearSystem;

use super::matrix::invert_even_block;
use super::morphism::Morphism;
use super::poly::{Monomial, Poly};
use super::ring::{EvenBlock, Ring, Symbol};

/// `z_ij = Σ_k y_ik (Y11^{-1})_kj` for `m < i ≤ m+n`, `1 ≤ j ≤ m`.
pub fn z_element(ring: &Ring, i: usize, j: usize) -> Result<Poly> {
    let (m, s) = (ring.m(), ring.size());
    if !(m < i && i <= s && 1 <= j && j <= m) {
        return Err(Error::IndexOutOfRange(format!(
            "z_{i}{j} needs {m} < i <= {s} and 1 <= j <= {m}"
        )));
    }
    let inv = invert_even_block(ring, 0, EvenBlock::B11)?;
    let mut out = ring.zero();
    for k in 1..=m {
        out = out.add(&ring.gen(0, i, k)?.mul(&inv[k - 1][j - 1])?)?;
    }
    Ok(out)
}

/// Products of the generators `y_uv · (Y11^{-1})_st` (`u, v > m ≥ s, t`) of
/// degree `1..=max_degree`, labelled.
pub fn l_monomials(ring: &Ring, max_degree: u32) -> Result<Vec<(String, Poly)>> {
    let (m, s) = (ring.m(), ring.size());
    let inv = invert_even_block(ring, 0, EvenBlock::B11)?;
    let mut gens = Vec::new();
    for u in m + 1..=s {
        for v in m + 1..=s {
            for a in 1..=m {
                for b in 1..=m {
                    let label = format!("y{u}{v}*y(-1){a}{b}");
                    gens.push((label, ring.gen(0, u, v)?.mul(&inv[a - 1][b - 1])?));
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut layer: Vec<(usize, String, Poly)> = vec![(0, String::new(), ring.one())];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for (start, label, p) in &layer {
            for (g, (gl, gp)) in gens.iter().enumerate().skip(*start) {
                let l = if label.is_empty() {
                    gl.clone()
                } else {
                    format!("{label}*{gl}")
                };
                next.push((g, l, p.mul(gp)?));
            }
        }
        out.extend(next.iter().map(|(_, l, p)| (l.clone(), p.clone())));
        layer = next;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateGroup {
    /// Right tensor factor, over the common denominator.
    pub right: String,
    /// `(L-monomial, coefficient)` pairs reproducing the left factor.
    pub expansion: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceCertificate {
    pub i: usize,
    pub j: usize,
    pub m: usize,
    pub n: usize,
    pub holds: bool,
    /// Smallest `L` truncation degree that sufficed, if any did.
    pub degree: Option<u32>,
    pub difference: String,
    pub groups: Vec<CertificateGroup>,
}

/// Decides whether an element of `K[P^-] ⊗ K[P^-]` lies in `L ⊗ K[P^-]`,
/// using `L` truncated at degree `max_degree`.
///
/// Returns the degree that sufficed together with the per-right-factor expansions.
pub fn l_tensor_membership(
    f: &Poly,
    max_degree: u32,
) -> Result<Option<(u32, Vec<CertificateGroup>)>> {
    let ring2 = f.ring();
    if ring2.copies() != 2 || !ring2.is_parabolic() {
        return Err(Error::ContextMismatch);
    }
    if f.is_zero() {
        return Ok(Some((0, Vec::new())));
    }
    let ring1 = ring2.with_copies(1);
    let half = ring1.nvars();
    let cleared = f.clear_to(&f.den_levels())?;
    let left_den = cleared.den_levels()[..2].to_vec();
    let mut groups: BTreeMap<Monomial, Poly> = BTreeMap::new();
    for (mono, c) in cleared.terms() {
        let right = Monomial::new(mono.exps()[half..].to_vec(), mono.den()[2..].to_vec());
        let left = Monomial::new(mono.exps()[..half].to_vec(), left_den.clone());
        groups
            .entry(right)
            .or_insert_with(|| ring1.zero())
            .add_term(left, c.clone());
    }
    for d in 1..=max_degree {
        let basis = l_monomials(&ring1, d)?;
        let mut levels = left_den.clone();
        for (_, p) in &basis {
            for (l, x) in levels.iter_mut().zip(p.den_levels()) {
                *l = (*l).max(x);
            }
        }
        let cleared_basis: Vec<Poly> = basis
            .iter()
            .map(|(_, p)| p.clear_to(&levels))
            .collect::<Result<_>>()?;
        let cleared_targets: Vec<Poly> = groups
            .values()
            .map(|p| p.clear_to(&levels))
            .collect::<Result<_>>()?;
        let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
        for p in cleared_basis.iter().chain(&cleared_targets) {
            for mono in p.terms().keys() {
                let next = index.len();
                index.entry(mono.clone()).or_insert(next);
            }
        }
        let field = *ring1.field();
        let vector = |p: &Poly| -> Vec<Scalar> {
            let mut v = vec![field.zero(); index.len()];
            for (mono, c) in p.terms() {
                v[index[mono]] = c.clone();
            }
            v
        };
        let columns: Vec<Vec<Scalar>> = cleared_basis.iter().map(vector).collect();
        let system = LinearSystem::new(field, index.len(), &columns);
        let mut certificate = Vec::new();
        let mut all = true;
        for ((right, _), target) in groups.iter().zip(&cleared_targets) {
            match system.solve(&vector(target)) {
                Some(x) => {
                    let expansion = basis
                        .iter()
                        .zip(&x)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|((label, _), c)| (label.clone(), c.to_string()))
                        .collect();
                    certificate.push(CertificateGroup {
                        right: right.format(&ring1),
                        expansion,
                    });
                }
                None => {
                    all = false;
                    break;
                }
            }
        }
        if all {
            return Ok(Some((d, certificate)));
        }
    }
    Ok(None)
}

/// Checks `Δ(z_ij) - z_ij ⊗ 1 ∈ L ⊗ K[P^-]`.
pub fn check_invariant_mod_l(
    m: usize,
    n: usize,
    field: &FieldConfig,
    i: usize,
    j: usize,
    max_degree: u32,
) -> Result<InvarianceCertificate> {
    let ring = Ring::parabolic(m, n, Symbol::Y, *field)?;
    let z = z_element(&ring, i, j)?;
    let delta = Morphism::comultiply(&ring, 0)?.apply(&z)?;
    let diff = delta.sub(&z.tensor(&ring.one())?)?;
    let found = l_tensor_membership(&diff, max_degree)?;
    Ok(InvarianceCertificate {
        i,
        j,
        m,
        n,
        holds: found.is_some(),
        degree: found.as_ref().map(|(d, _)| *d),
        difference: diff.to_string(),
        groups: found.map(|(_, g)| g).unwrap_or_default(),
    })
}
