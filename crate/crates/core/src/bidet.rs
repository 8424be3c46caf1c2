//! Generalized bideterminants: products of column minors of the even blocks
//! `Y11` and `Y22` times powers of their determinants.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{FieldConfig, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{exact_rank, LinearSystem};
use crate::superpoly::{coefficient_rows, det, EvenBlock, Morphism, Poly, Ring, Symbol};
use crate::tableaux::{enumerate_standard, hook_content_count, shape_data, Partition, Tableau};
use crate::weights::{dominated_block, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BideterminantIndex {
    pub mu: Weight,
    pub a: i64,
    pub b: i64,
    pub i_plus: Tableau,
    pub j_plus: Tableau,
    pub i_minus: Tableau,
    pub j_minus: Tableau,
}

impl BideterminantIndex {
    pub fn new(
        mu: Weight,
        a: i64,
        b: i64,
        [i_plus, j_plus, i_minus, j_minus]: [Tableau; 4],
    ) -> Result<Self> {
        if a > 0 || b > 0 {
            return Err(Error::InvalidInput(format!(
                "determinant exponents ({a},{b}) must be nonpositive"
            )));
        }
        let mu_plus = Partition::from_weight_block(mu.plus())?;
        let mu_minus = Partition::from_weight_block(mu.minus())?;
        let (m, n) = (mu.m() as u32, mu.n() as u32);
        for (t, shape, bound) in [
            (&i_plus, &mu_plus, m),
            (&j_plus, &mu_plus, m),
            (&i_minus, &mu_minus, n),
            (&j_minus, &mu_minus, n),
        ] {
            if &t.shape() != shape || t.bound() != bound {
                return Err(Error::ShapeMismatch(format!(
                    "tableau {t} does not fit shape {shape} with bound {bound}"
                )));
            }
        }
        Ok(BideterminantIndex {
            mu,
            a,
            b,
            i_plus,
            j_plus,
            i_minus,
            j_minus,
        })
    }

    pub fn is_standard(&self) -> bool {
        [&self.i_plus, &self.j_plus, &self.i_minus, &self.j_minus]
            .iter()
            .all(|t| t.is_standard())
    }
}

impl std::fmt::Display for BideterminantIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}:{}|{}:{}]",
            self.i_plus, self.j_plus, self.i_minus, self.j_minus
        )?;
        if self.a != 0 || self.b != 0 {
            write!(f, "*D^({},{})", self.a, self.b)?;
        }
        Ok(())
    }
}

fn block_offset(ring: &Ring, block: EvenBlock) -> usize {
    match block {
        EvenBlock::B11 => 0,
        EvenBlock::B22 => ring.m(),
    }
}

fn block_size(ring: &Ring, block: EvenBlock) -> usize {
    match block {
        EvenBlock::B11 => ring.m(),
        EvenBlock::B22 => ring.n(),
    }
}

fn check_indices(ring: &Ring, block: EvenBlock, rows: &[u32], cols: &[u32]) -> Result<()> {
    if rows.len() != cols.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} rows vs {} columns",
            rows.len(),
            cols.len()
        )));
    }
    let size = block_size(ring, block) as u32;
    if rows.iter().chain(cols).any(|&x| x == 0 || x > size) {
        return Err(Error::IndexOutOfRange(format!(
            "minor indices must lie in 1..={size}"
        )));
    }
    Ok(())
}

/// Determinant of the submatrix of a diagonal block with the given rows and
/// columns, taken in the order given (block-local, 1-based).
pub fn minor(ring: &Ring, block: EvenBlock, rows: &[u32], cols: &[u32]) -> Result<Poly> {
    check_indices(ring, block, rows, cols)?;
    let off = block_offset(ring, block);
    let sub: Vec<Vec<Poly>> = rows
        .iter()
        .map(|&r| {
            cols.iter()
                .map(|&c| ring.gen(0, off + r as usize, off + c as usize))
                .collect()
        })
        .collect::<Result<_>>()?;
    det(ring, &sub)
}

/// Coefficient of `w_{rows}` in `Λ^k(Y)(w_{cols})`, computed by expanding
/// `Y w_{c_1} ∧ … ∧ Y w_{c_k}` in the exterior algebra.
pub fn trace_formula(ring: &Ring, block: EvenBlock, rows: &[u32], cols: &[u32]) -> Result<Poly> {
    check_indices(ring, block, rows, cols)?;
    let off = block_offset(ring, block);
    let size = block_size(ring, block) as u32;
    // sorted basis word -> coefficient
    let mut state: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
    state.insert(Vec::new(), ring.one());
    for &c in cols {
        let mut next: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (word, coeff) in &state {
            for r in 1..=size {
                if word.contains(&r) {
                    continue;
                }
                // Moving w_r from the right end into sorted position passes the larger letters.
                let passes = word.iter().filter(|&&x| x > r).count();
                let mut new_word = word.clone();
                new_word.push(r);
                new_word.sort_unstable();
                let mut term = coeff.mul(&ring.gen(0, off + r as usize, off + c as usize)?)?;
                if passes % 2 == 1 {
                    term = term.neg();
                }
                let slot = next.entry(new_word).or_insert_with(|| ring.zero());
                *slot = slot.add(&term)?;
            }
        }
        state = next;
    }
    let mut target = rows.to_vec();
    target.sort_unstable();
    if target.windows(2).any(|w| w[0] == w[1]) {
        return Ok(ring.zero());
    }
    let passes = (0..rows.len())
        .map(|i| (i + 1..rows.len()).filter(|&j| rows[i] > rows[j]).count())
        .sum::<usize>();
    let value = state.remove(&target).unwrap_or_else(|| ring.zero());
    Ok(if passes % 2 == 1 { value.neg() } else { value })
}

/// The generalized bideterminant named by `idx`, in the `Y` ring.
pub fn bideterminant(ring: &Ring, idx: &BideterminantIndex) -> Result<Poly> {
    if ring.m() != idx.mu.m() || ring.n() != idx.mu.n() {
        return Err(Error::ContextMismatch);
    }
    let mut out = ring.one();
    for (block, ti, tj) in [
        (EvenBlock::B11, &idx.i_plus, &idx.j_plus),
        (EvenBlock::B22, &idx.i_minus, &idx.j_minus),
    ] {
        for (rows, cols) in ti.columns().iter().zip(tj.columns()) {
            out = out.mul(&minor(ring, block, rows, &cols)?)?;
        }
    }
    if idx.a < 0 {
        out = out.mul(&ring.den_inv_pow(0, EvenBlock::B11, (-idx.a) as u16))?;
    }
    if idx.b < 0 {
        out = out.mul(&ring.den_inv_pow(0, EvenBlock::B22, (-idx.b) as u16))?;
    }
    Ok(out)
}

/// All standard indices with the given partition blocks and determinant exponents.
pub fn standard_indices(mu: &Weight, a: i64, b: i64) -> Result<Vec<BideterminantIndex>> {
    let plus = enumerate_standard(&Partition::from_weight_block(mu.plus())?, mu.m() as u32);
    let minus = enumerate_standard(&Partition::from_weight_block(mu.minus())?, mu.n() as u32);
    let mut out = Vec::with_capacity(plus.len() * plus.len() * minus.len() * minus.len());
    for ip in &plus {
        for jp in &plus {
            for im in &minus {
                for jm in &minus {
                    out.push(BideterminantIndex::new(
                        mu.clone(),
                        a,
                        b,
                        [ip.clone(), jp.clone(), im.clone(), jm.clone()],
                    )?);
                }
            }
        }
    }
    Ok(out)
}

/// Weights whose blocks are partitions strictly below `mu` in the strong order.
pub fn strictly_smaller_shapes(mu: &Weight) -> Vec<Weight> {
    let mut out = Vec::new();
    for p in dominated_block(mu.plus()) {
        for q in dominated_block(mu.minus()) {
            let w = Weight::from_blocks(&p, &q);
            if &w != mu && w.entries().iter().all(|&x| x >= 0) {
                out.push(w);
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Straightening {
    pub input: BideterminantIndex,
    pub terms: Vec<(BideterminantIndex, Scalar)>,
    pub residual_zero: bool,
}

/// Expresses bideterminants of one shape in the standard ones of that shape
/// and of strictly smaller shapes, by exact linear algebra.
pub struct Straightener {
    ring: Ring,
    spanning: Vec<BideterminantIndex>,
    polys: Vec<Poly>,
    index: BTreeMap<crate::superpoly::Monomial, usize>,
    levels: Vec<u16>,
    system: LinearSystem,
}

impl Straightener {
    pub fn new(field: &FieldConfig, mu: &Weight, a: i64, b: i64) -> Result<Self> {
        let ring = Ring::general(mu.m(), mu.n(), Symbol::Y, *field)?;
        let mut spanning = standard_indices(mu, a, b)?;
        for smaller in strictly_smaller_shapes(mu) {
            spanning.extend(standard_indices(&smaller, a, b)?);
        }
        let polys: Vec<Poly> = spanning
            .iter()
            .map(|idx| bideterminant(&ring, idx))
            .collect::<Result<_>>()?;
        let mut levels = vec![0u16; ring.nden()];
        levels[0] = (-a) as u16;
        levels[1] = (-b) as u16;
        let cleared: Vec<Poly> = polys
            .iter()
            .map(|p| p.clear_to(&levels))
            .collect::<Result<_>>()?;
        let mut index = BTreeMap::new();
        for p in &cleared {
            for mono in p.terms().keys() {
                let next = index.len();
                index.entry(mono.clone()).or_insert(next);
            }
        }
        let columns: Vec<Vec<Scalar>> = cleared
            .iter()
            .map(|p| {
                let mut v = vec![field.zero(); index.len()];
                for (mono, c) in p.terms() {
                    v[index[mono]] = c.clone();
                }
                v
            })
            .collect();
        let system = LinearSystem::new(*field, index.len(), &columns);
        Ok(Straightener {
            ring,
            spanning,
            polys,
            index,
            levels,
            system,
        })
    }

    pub fn spanning_set(&self) -> &[BideterminantIndex] {
        &self.spanning
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn straighten(&self, idx: &BideterminantIndex) -> Result<Straightening> {
        let target = bideterminant(&self.ring, idx)?;
        let cleared = target.clear_to(&self.levels)?;
        let field = self.ring.field();
        let mut rhs = vec![field.zero(); self.index.len()];
        for (mono, c) in cleared.terms() {
            let Some(&row) = self.index.get(mono) else {
                return Err(Error::Inconsistent(format!(
                    "{idx} involves a monomial outside the spanning set"
                )));
            };
            rhs[row] = c.clone();
        }
        let x = self.system.solve(&rhs).ok_or_else(|| {
            Error::Inconsistent(format!(
                "{idx} is not in the span of standard bideterminants"
            ))
        })?;
        let mut residual = target.clone();
        let mut terms = Vec::new();
        for ((sidx, p), c) in self.spanning.iter().zip(&self.polys).zip(x) {
            if !c.is_zero() {
                residual = residual.sub(&p.scale(&c))?;
                terms.push((sidx.clone(), c));
            }
        }
        Ok(Straightening {
            input: idx.clone(),
            terms,
            residual_zero: residual.equals(&self.ring.zero())?,
        })
    }
}

/// Every index of shape `mu` (standard or not) with the given exponents.
pub fn all_indices(mu: &Weight, a: i64, b: i64) -> Result<Vec<BideterminantIndex>> {
    use crate::tableaux::enumerate_all;
    let plus = enumerate_all(&Partition::from_weight_block(mu.plus())?, mu.m() as u32);
    let minus = enumerate_all(&Partition::from_weight_block(mu.minus())?, mu.n() as u32);
    let mut out = Vec::new();
    for ip in &plus {
        for jp in &plus {
            for im in &minus {
                for jm in &minus {
                    out.push(BideterminantIndex::new(
                        mu.clone(),
                        a,
                        b,
                        [ip.clone(), jp.clone(), im.clone(), jm.clone()],
                    )?);
                }
            }
        }
    }
    Ok(out)
}

/// Exact rank of a list of elements, over their ring's field.
pub fn independence_rank(elements: &[Poly]) -> Result<usize> {
    let Some(first) = elements.first() else {
        return Ok(0);
    };
    Ok(exact_rank(
        first.ring().field(),
        &coefficient_rows(elements)?,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorBasisElement {
    /// Odd positions `(i, j)` of `Y`, row-major.
    pub pattern: Vec<(usize, usize)>,
    pub index: BideterminantIndex,
}

impl FactorBasisElement {
    pub fn parity(&self) -> u8 {
        (self.pattern.len() % 2) as u8
    }
}

pub struct FactorBasis {
    pub lambda: Weight,
    pub elements: Vec<FactorBasisElement>,
    /// `φ*`-images in the `X` ring, aligned with `elements`.
    pub images: Vec<Poly>,
}

/// `(2^{mn} c_+ c_-)^2` with `c_±` the hook-content counts of the shape blocks.
pub fn expected_factor_count(lambda: &Weight) -> Result<num_bigint::BigInt> {
    let sd = shape_data(lambda)?;
    let c = hook_content_count(&sd.mu_plus, lambda.m() as u32)
        * hook_content_count(&sd.mu_minus, lambda.n() as u32);
    let d = c << (lambda.m() * lambda.n());
    Ok(&d * &d)
}

/// All odd patterns crossed with all standard quadruples of the shape of `lambda`,
/// with their images under the factorization map.
pub fn assemble_factor_basis(lambda: &Weight, field: &FieldConfig) -> Result<FactorBasis> {
    let sd = shape_data(lambda)?;
    let (m, n) = (lambda.m(), lambda.n());
    let y = Ring::general(m, n, Symbol::Y, *field)?;
    let x = Ring::general(m, n, Symbol::X, *field)?;
    let phi = Morphism::phi_star(&y, &x)?;
    let odd: Vec<(usize, usize)> = (1..=m + n)
        .flat_map(|i| (1..=m + n).map(move |j| (i, j)))
        .filter(|&(i, j)| (i <= m) != (j <= m))
        .collect();
    let indices = standard_indices(&sd.mu, sd.a, sd.b)?;
    let bidet_images: Vec<Poly> = indices
        .par_iter()
        .map(|idx| phi.apply(&bideterminant(&y, idx)?))
        .collect::<Result<_>>()?;
    let patterns: Vec<Vec<(usize, usize)>> = (0u64..1 << odd.len())
        .map(|mask| {
            odd.iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect();
    let pattern_images: Vec<Poly> = patterns
        .par_iter()
        .map(|pat| {
            let mut p = x.one();
            for &(i, j) in pat {
                p = p.mul(&phi.apply(&y.gen(0, i, j)?)?)?;
            }
            Ok(p)
        })
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..patterns.len())
        .flat_map(|a| (0..indices.len()).map(move |b| (a, b)))
        .collect();
    let images: Vec<Poly> = pairs
        .par_iter()
        .map(|&(a, b)| pattern_images[a].mul(&bidet_images[b]))
        .collect::<Result<_>>()?;
    let elements = pairs
        .iter()
        .map(|&(a, b)| FactorBasisElement {
            pattern: patterns[a].clone(),
            index: indices[b].clone(),
        })
        .collect();
    Ok(FactorBasis {
        lambda: lambda.clone(),
        elements,
        images,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorBasisReport {
    pub lambda: Weight,
    pub mu: Weight,
    pub a: i64,
    pub b: i64,
    pub count: usize,
    pub rank: usize,
    pub field: String,
    pub elapsed_ms: u64,
}

impl FactorBasisReport {
    pub fn is_basis(&self) -> bool {
        self.count == self.rank
    }
}

/// Assembles the basis for `lambda` and computes the rank of its images.
/// `elapsed_ms` is only filled in when `timing` is set, so that reports are reproducible.
pub fn factor_basis_report(
    lambda: &Weight,
    field: &FieldConfig,
    timing: bool,
) -> Result<FactorBasisReport> {
    let start = Instant::now();
    let sd = shape_data(lambda)?;
    let basis = assemble_factor_basis(lambda, field)?;
    let rank = independence_rank(&basis.images)?;
    Ok(FactorBasisReport {
        lambda: lambda.clone(),
        mu: sd.mu,
        a: sd.a,
        b: sd.b,
        count: basis.elements.len(),
        rank,
        field: field.label(),
        elapsed_ms: if timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        },
    })
}
