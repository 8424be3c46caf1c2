use std::collections::HashMap;

use crate::error::{Error, Result};

use super::matrix::{invert_even_block, mat_mul, Matrix};
use super::poly::Poly;
use super::ring::{EvenBlock, Ring};

/// A parity-preserving algebra morphism given by the images of the
/// generators and of the inverted determinants.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: Ring,
    target: Ring,
    images: Vec<Option<Poly>>,
    den_images: Vec<Option<Poly>>,
}

impl Morphism {
    pub fn new(
        source: Ring,
        target: Ring,
        images: Vec<Option<Poly>>,
        den_images: Vec<Option<Poly>>,
    ) -> Result<Self> {
        if images.len() != source.nvars() || den_images.len() != source.nden() {
            return Err(Error::ShapeMismatch(
                "morphism data does not match the source ring".into(),
            ));
        }
        if images
            .iter()
            .chain(&den_images)
            .flatten()
            .any(|p| p.ring() != &target)
        {
            return Err(Error::ContextMismatch);
        }
        Ok(Morphism {
            source,
            target,
            images,
            den_images,
        })
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if f.ring() != &self.source {
            return Err(Error::ContextMismatch);
        }
        let mut var_powers: HashMap<(usize, u16), Poly> = HashMap::new();
        let mut den_powers: HashMap<(usize, u16), Poly> = HashMap::new();
        let mut out = self.target.zero();
        for (mono, c) in f.terms() {
            let mut acc = self.target.constant(c.clone());
            for (v, &e) in mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = self.images[v].as_ref().ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "no image for generator {}",
                        self.source.var_name(v)
                    ))
                })?;
                let p = cached_power(&mut var_powers, (v, e), img, &self.target)?;
                acc = acc.mul(p)?;
            }
            for (slot, &e) in mono.den().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = self.den_images[slot].as_ref().ok_or_else(|| {
                    Error::UnsupportedDenominator(format!(
                        "{}^-1 has no image",
                        self.source.den_name(slot)
                    ))
                })?;
                let p = cached_power(&mut den_powers, (slot, e), img, &self.target)?;
                acc = acc.mul(p)?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Comultiplication applied to factor `copy`: `x_ij ↦ Σ_k x_ik ⊗ x_kj`.
    ///
    /// Inverted determinants are group-like only on the parabolic, so the full
    /// ring has no image for them.
    pub fn comultiply(source: &Ring, copy: usize) -> Result<Morphism> {
        if copy >= source.copies() {
            return Err(Error::IndexOutOfRange(format!("factor {copy}")));
        }
        let target = source.with_copies(source.copies() + 1);
        let s = source.size();
        let shift = |c: usize| if c > copy { c + 1 } else { c };
        let mut images = Vec::with_capacity(source.nvars());
        for v in 0..source.nvars() {
            if !source.is_present(v) {
                images.push(None);
                continue;
            }
            let (c, i, j) = source.position(v);
            if c != copy {
                images.push(Some(target.gen(shift(c), i, j)?));
                continue;
            }
            let mut sum = target.zero();
            for k in 1..=s {
                if source.has_position(i, k) && source.has_position(k, j) {
                    sum = sum.add(&target.gen(c, i, k)?.mul(&target.gen(c + 1, k, j)?)?)?;
                }
            }
            images.push(Some(sum));
        }
        let mut den_images = Vec::with_capacity(source.nden());
        for slot in 0..source.nden() {
            let (c, block) = (
                slot / 2,
                if slot % 2 == 0 {
                    EvenBlock::B11
                } else {
                    EvenBlock::B22
                },
            );
            if c != copy {
                den_images.push(Some(target.den_inv(shift(c), block)));
            } else if source.is_parabolic() {
                den_images.push(Some(
                    target
                        .den_inv(c, block)
                        .mul(&target.den_inv(c + 1, block))?,
                ));
            } else {
                den_images.push(None);
            }
        }
        Morphism::new(source.clone(), target, images, den_images)
    }

    /// Counit on factor `copy`: `x_ij ↦ δ_ij`, `D ↦ 1`.
    pub fn counit(source: &Ring, copy: usize) -> Result<Morphism> {
        if copy >= source.copies() {
            return Err(Error::IndexOutOfRange(format!("factor {copy}")));
        }
        let target = source.with_copies(source.copies() - 1);
        let mut images = Vec::with_capacity(source.nvars());
        for v in 0..source.nvars() {
            if !source.is_present(v) {
                images.push(None);
                continue;
            }
            let (c, i, j) = source.position(v);
            images.push(Some(match c.cmp(&copy) {
                std::cmp::Ordering::Less => target.gen(c, i, j)?,
                std::cmp::Ordering::Greater => target.gen(c - 1, i, j)?,
                std::cmp::Ordering::Equal => target.from_i64((i == j) as i64),
            }));
        }
        let mut den_images = Vec::with_capacity(source.nden());
        for slot in 0..source.nden() {
            let (c, block) = (
                slot / 2,
                if slot % 2 == 0 {
                    EvenBlock::B11
                } else {
                    EvenBlock::B22
                },
            );
            den_images.push(Some(match c.cmp(&copy) {
                std::cmp::Ordering::Less => target.den_inv(c, block),
                std::cmp::Ordering::Greater => target.den_inv(c - 1, block),
                std::cmp::Ordering::Equal => target.one(),
            }));
        }
        Morphism::new(source.clone(), target, images, den_images)
    }

    /// The factorization map from the `Y` ring to the `X` ring:
    /// `Y11 ↦ X11`, `Y21 ↦ X21 X11^{-1}`, `Y12 ↦ X11^{-1} X12`,
    /// `Y22 ↦ X22 - X21 X11^{-1} X12`.
    pub fn phi_star(y: &Ring, x: &Ring) -> Result<Morphism> {
        let (m, n) = (x.m(), x.n());
        if y.m() != m
            || y.n() != n
            || y.copies() != 1
            || x.copies() != 1
            || y.is_parabolic()
            || x.is_parabolic()
        {
            return Err(Error::ContextMismatch);
        }
        let s = m + n;
        let entry = |i: usize, j: usize| x.gen(0, i, j);
        let x21: Matrix = (m + 1..=s)
            .map(|i| (1..=m).map(|j| entry(i, j)).collect())
            .collect::<Result<_>>()?;
        let x12: Matrix = (1..=m)
            .map(|i| (m + 1..=s).map(|j| entry(i, j)).collect())
            .collect::<Result<_>>()?;
        let inv11 = invert_even_block(x, 0, EvenBlock::B11)?;
        let a = mat_mul(&x21, &inv11)?;
        let b = mat_mul(&inv11, &x12)?;
        let c = mat_mul(&a, &x12)?;
        let mut images = Vec::with_capacity(y.nvars());
        for v in 0..y.nvars() {
            let (_, i, j) = y.position(v);
            images.push(Some(match (i <= m, j <= m) {
                (true, true) => entry(i, j)?,
                (false, true) => a[i - m - 1][j - 1].clone(),
                (true, false) => b[i - 1][j - m - 1].clone(),
                (false, false) => entry(i, j)?.sub(&c[i - m - 1][j - m - 1])?,
            }));
        }
        let pre = Morphism::new(
            y.clone(),
            x.clone(),
            images.clone(),
            vec![Some(x.den_inv(0, EvenBlock::B11)), None],
        )?;
        let det22 = pre.apply(&y.block_det(0, EvenBlock::B22))?;
        let inv22 = det22.invert_with_body_inverse(&x.den_inv(0, EvenBlock::B22))?;
        Morphism::new(
            y.clone(),
            x.clone(),
            images,
            vec![Some(x.den_inv(0, EvenBlock::B11)), Some(inv22)],
        )
    }
}

fn cached_power<'a>(
    cache: &'a mut HashMap<(usize, u16), Poly>,
    key: (usize, u16),
    base: &Poly,
    target: &Ring,
) -> Result<&'a Poly> {
    if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(key) {
        let mut p = target.one();
        for _ in 0..key.1 {
            p = p.mul(base)?;
        }
        e.insert(p);
    }
    Ok(&cache[&key])
}
