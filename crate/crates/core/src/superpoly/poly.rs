use std::collections::BTreeMap;
use std::fmt;

use crate::arith::Scalar;
use crate::error::{Error, Result};

use super::ring::{EvenBlock, Ring};

/// Exponents of the generators plus exponents of the inverted block determinants.
///
/// Odd exponents are 0 or 1; the monomial denotes the product of its
/// generators in increasing index order, times `D^{-den}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u16>,
    den: Vec<u16>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>, den: Vec<u16>) -> Self {
        Monomial { exps, den }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn den(&self) -> &[u16] {
        &self.den
    }

    pub(crate) fn exps_mut(&mut self) -> &mut Vec<u16> {
        &mut self.exps
    }

    pub(crate) fn den_mut(&mut self) -> &mut Vec<u16> {
        &mut self.den
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn odd_count(&self, ring: &Ring) -> usize {
        ring.odd_vars()
            .iter()
            .filter(|&&v| self.exps[v] > 0)
            .count()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.iter().all(|&d| d == 0)
    }

    /// Product with its Koszul sign; `None` when an odd generator would repeat.
    pub fn mul(&self, other: &Monomial, ring: &Ring) -> Option<(Monomial, bool)> {
        let mut swaps = 0usize;
        let odd = ring.odd_vars();
        for (pos, &v) in odd.iter().enumerate() {
            if other.exps[v] == 0 {
                continue;
            }
            if self.exps[v] > 0 {
                return None;
            }
            swaps += odd[pos + 1..].iter().filter(|&&w| self.exps[w] > 0).count();
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        let den = self
            .den
            .iter()
            .zip(&other.den)
            .map(|(a, b)| a + b)
            .collect();
        Some((Monomial { exps, den }, swaps % 2 == 1))
    }

    pub fn format(&self, ring: &Ring) -> String {
        let mut factors = Vec::new();
        for (v, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(ring.var_name(v)),
                _ => factors.push(format!("{}^{e}", ring.var_name(v))),
            }
        }
        for (slot, &e) in self.den.iter().enumerate() {
            if e > 0 {
                factors.push(format!("{}^-{e}", ring.den_name(slot)));
            }
        }
        factors.join("*")
    }
}

/// Element of a localized supercommutative ring: a finite map from
/// monomials to nonzero scalars.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(ring: &Ring, mono: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(ring);
        p.add_term(mono, c);
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let limit = self.ring.max_degree();
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some((mono, negative)) = ma.mul(mb, &self.ring) else {
                    continue;
                };
                let degree = mono.degree();
                if degree > limit {
                    return Err(Error::DegreeGuard { degree, limit });
                }
                let c = ca * cb;
                out.add_term(mono, if negative { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Poly> {
        let mut out = self.ring.one();
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `Some(0)` or `Some(1)` for homogeneous elements, `None` for mixed ones.
    /// Zero counts as even.
    pub fn parity(&self) -> Option<u8> {
        let mut parities = self
            .terms
            .keys()
            .map(|m| (m.odd_count(&self.ring) % 2) as u8);
        let first = parities.next().unwrap_or(0);
        parities.all(|p| p == first).then_some(first)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Largest denominator exponent per slot.
    pub fn den_levels(&self) -> Vec<u16> {
        let mut levels = vec![0u16; self.ring.nden()];
        for m in self.terms.keys() {
            for (l, &d) in levels.iter_mut().zip(m.den()) {
                *l = (*l).max(d);
            }
        }
        levels
    }

    /// The same element rewritten over the common denominator `D^{-levels}`.
    pub fn clear_to(&self, levels: &[u16]) -> Result<Poly> {
        let mut det_powers: Vec<Vec<Poly>> = Vec::new();
        for slot in 0..self.ring.nden() {
            let block = if slot % 2 == 0 {
                EvenBlock::B11
            } else {
                EvenBlock::B22
            };
            det_powers.push(vec![self.ring.one(), self.ring.block_det(slot / 2, block)]);
        }
        let mut out = Poly::zero(&self.ring);
        for (mono, c) in &self.terms {
            let mut base = mono.clone();
            let mut factor = self.ring.one();
            for slot in 0..self.ring.nden() {
                let d = mono.den()[slot];
                let target = levels[slot];
                if d > target {
                    return Err(Error::InvalidInput(format!(
                        "denominator level {d} above target {target}"
                    )));
                }
                let need = (target - d) as usize;
                while det_powers[slot].len() <= need {
                    let next = det_powers[slot].last().unwrap().mul(&det_powers[slot][1])?;
                    det_powers[slot].push(next);
                }
                factor = factor.mul(&det_powers[slot][need])?;
                base.den_mut()[slot] = target;
            }
            let term = Poly::monomial(&self.ring, base, c.clone()).mul(&factor)?;
            for (m, v) in term.terms {
                out.add_term(m, v);
            }
        }
        Ok(out)
    }

    /// Equality in the localized ring, comparing numerators over a common denominator.
    pub fn equals(&self, other: &Poly) -> Result<bool> {
        let diff = self.sub(other)?;
        if diff.is_zero() {
            return Ok(true);
        }
        Ok(diff.clear_to(&diff.den_levels())?.is_zero())
    }

    /// Terms that contain no odd generator.
    pub fn body(&self) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.odd_count(&self.ring) == 0 {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Inverse of `self`, given an inverse of its body; the remainder is nilpotent
    /// so the geometric series terminates.
    pub fn invert_with_body_inverse(&self, body_inv: &Poly) -> Result<Poly> {
        let nil = self.sub(&self.body())?;
        let t = body_inv.mul(&nil)?.neg();
        let mut sum = self.ring.one();
        let mut power = self.ring.one();
        for _ in 0..=self.ring.odd_vars().len() {
            power = power.mul(&t)?;
            if power.is_zero() {
                return body_inv.mul(&sum);
            }
            sum = sum.add(&power)?;
        }
        Err(Error::Precondition("remainder is not nilpotent".into()))
    }

    /// Coefficient of a generator-free constant term.
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&self.ring.unit_monomial())
            .cloned()
            .unwrap_or_else(|| self.ring.field().zero())
    }

    /// `self ⊗ other` in the ring with the factors of both concatenated.
    pub fn tensor(&self, other: &Poly) -> Result<Poly> {
        let (a, b) = (self.ring.params(), other.ring.params());
        if (a.m, a.n, a.symbol, a.parabolic, &a.field)
            != (b.m, b.n, b.symbol, b.parabolic, &b.field)
        {
            return Err(Error::ContextMismatch);
        }
        let target = self.ring.with_copies(a.copies + b.copies);
        let mut out = Poly::zero(&target);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps = ma.exps().iter().chain(mb.exps()).copied().collect();
                let den = ma.den().iter().chain(mb.den()).copied().collect();
                out.add_term(Monomial::new(exps, den), ca * cb);
            }
        }
        Ok(out)
    }
}

impl PartialEq for Poly {
    /// Structural equality of the stored terms; use [`Poly::equals`] for
    /// equality modulo denominators.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (mono, c) in &self.terms {
            let body = mono.format(&self.ring);
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            match (body.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{sign}{mag}")?,
                (false, true) => write!(f, "{sign}{body}")?,
                (false, false) => write!(f, "{sign}{mag}*{body}")?,
            }
        }
        Ok(())
    }
}
