//! Exact scalars and the binomial / idempotent value functions.
//!
//! Coefficients live either in a prime field `F_p` (`p >= 3`) or in `Q`. A
//! prime power `q = p^r` only ever appears as a modulus for congruence
//! classes; it is never a coefficient field.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field plus the Frobenius exponent `r` used for `q = p^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldConfig {
    characteristic: u64,
    r: u32,
}

impl FieldConfig {
    pub fn rational() -> Self {
        FieldConfig {
            characteristic: 0,
            r: 0,
        }
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::prime_power(p, 1)
    }

    pub fn prime_power(p: u64, r: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidInput(format!(
                "characteristic must be a prime >= 3, got {p}"
            )));
        }
        if r == 0 {
            return Err(Error::InvalidInput("exponent r must be positive".into()));
        }
        if p.checked_pow(r).is_none() {
            return Err(Error::InvalidInput(format!("{p}^{r} overflows")));
        }
        Ok(FieldConfig {
            characteristic: p,
            r,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    /// `q = p^r`; `None` in characteristic zero.
    pub fn q(&self) -> Option<u64> {
        (!self.is_rational()).then(|| self.characteristic.pow(self.r))
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            p => Scalar::Fp {
                value: v.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::from_integer(v.clone())),
            p => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Fp {
                    value: r.to_u64().expect("residue fits"),
                    p,
                }
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let d = self.from_i64(den);
        if d.is_zero() {
            return Err(Error::InvalidInput(format!(
                "{den} is not invertible in {self}"
            )));
        }
        Ok(self.from_i64(num) / d)
    }

    /// Parses an integer or `a/b` literal.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("bad scalar literal '{s}'"));
        match s.split_once('/') {
            Some((a, b)) => {
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: i64 = b.trim().parse().map_err(|_| bad())?;
                self.from_ratio(a, b)
            }
            None => {
                let v: BigInt = s.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&v))
            }
        }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { value: u64, p: u64 },
    Rat(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn field(&self) -> FieldConfig {
        match self {
            Scalar::Fp { p, .. } => FieldConfig {
                characteristic: *p,
                r: 1,
            },
            Scalar::Rat(_) => FieldConfig::rational(),
        }
    }

    /// True when the canonical printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Fp { .. } => false,
            Scalar::Rat(r) => r.is_negative(),
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Fp { value, p } => Scalar::Fp {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            },
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field_one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn field_one(&self) -> Scalar {
        match self {
            Scalar::Fp { p, .. } => Scalar::Fp { value: 1, p: *p },
            Scalar::Rat(_) => Scalar::Rat(BigRational::one()),
        }
    }

    /// For rationals: the pair (numerator, denominator).
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Fp { .. } => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp { value, .. } => Some(*value),
            Scalar::Rat(_) => None,
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { value, .. } => write!(f, "{value}"),
            Scalar::Rat(r) => write!(f, "{r}"),
        }
    }
}

fn field_mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => Scalar::Fp {
                value: (a + b) % p,
                p: *p,
            },
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => field_mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => Scalar::Fp {
                value: (a + p - b) % p,
                p: *p,
            },
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => field_mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => Scalar::Fp {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => field_mismatch(self, rhs),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { value, p } => Scalar::Fp {
                value: (p - value) % p,
                p: *p,
            },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Splits a prime power `q = p^r` into `(p, r)`.
pub fn prime_power_parts(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::InvalidInput(format!("{q} is not a prime power")));
    }
    let p = (2..=q)
        .find(|d| q.is_multiple_of(*d))
        .expect("q >= 2 has a divisor");
    let mut rest = q;
    let mut r = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidInput(format!("{q} is not a prime power")));
    }
    Ok((p, r))
}

/// Generalised binomial coefficient `binom(b, a)` for any integer top.
///
/// Negative tops use `binom(b, a) = (-1)^a binom(a - b - 1, a)`.
pub fn binom_int(b: i64, a: u64) -> BigInt {
    if b < 0 {
        let top = a as i64 - b - 1;
        let v = binom_int(top, a);
        return if a.is_multiple_of(2) { v } else { -v };
    }
    let b = b as u64;
    if a > b {
        return BigInt::zero();
    }
    let a = a.min(b - a);
    let mut acc = BigInt::one();
    for i in 0..a {
        acc *= BigInt::from(b - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// `binom(b, a) mod p` via Lucas' theorem on base-`p` digits.
///
/// A negative top is first moved to its representative modulo `p^r` with
/// `p^r > a`; `binom(x, a) mod p` is periodic in `x` with that period.
pub fn binom_mod_p(b: i64, a: u64, p: u64) -> Scalar {
    debug_assert!(p >= 3 && is_prime(p));
    let mut period: i128 = p as i128;
    while period <= a as i128 {
        period *= p as i128;
    }
    let mut top = (b as i128).rem_euclid(period) as u128;
    let mut bottom = a as u128;
    let pp = p as u128;
    let mut acc = 1u64;
    while bottom > 0 {
        let (td, bd) = ((top % pp) as u64, (bottom % pp) as u64);
        if bd > td {
            return Scalar::Fp { value: 0, p };
        }
        acc = ((acc as u128 * small_binom_mod(td, bd, p) as u128) % pp) as u64;
        top /= pp;
        bottom /= pp;
    }
    Scalar::Fp { value: acc, p }
}

fn small_binom_mod(b: u64, a: u64, p: u64) -> u64 {
    // b < p, so every factor below is invertible.
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..a {
        num = num * ((b - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * pow_mod(den, p - 2, p) % p
}

/// Binomial coefficient as an element of the given field.
pub fn binom_in(field: &FieldConfig, b: i64, a: u64) -> Scalar {
    match field.characteristic() {
        0 => field.from_bigint(&binom_int(b, a)),
        p => binom_mod_p(b, a, p),
    }
}

fn check_q(t: u64, q: u64) -> Result<u64> {
    let (p, _) = prime_power_parts(q)?;
    if p < 3 {
        return Err(Error::InvalidInput(format!(
            "q = {q} must be a power of an odd prime"
        )));
    }
    if t >= q {
        return Err(Error::InvalidInput(format!(
            "t = {t} must be below q = {q}"
        )));
    }
    Ok(p)
}

/// `h_t^{(q)}(x) = sum_{t<=k<q} (-1)^{k-t} binom(k, t) binom(x, k)` in `F_p`.
pub fn h_sum(t: u64, q: u64, x: i64) -> Result<Scalar> {
    let p = check_q(t, q)?;
    let mut acc = Scalar::Fp { value: 0, p };
    for k in t..q {
        let term = &binom_mod_p(k as i64, t, p) * &binom_mod_p(x, k, p);
        if (k - t).is_multiple_of(2) {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    Ok(acc)
}

/// Closed form of [`h_sum`]: the indicator of `x ≡ t (mod q)`.
pub fn h_closed(t: u64, q: u64, x: i64) -> Result<Scalar> {
    let p = check_q(t, q)?;
    let hit = x.rem_euclid(q as i64) as u64 == t;
    Ok(Scalar::Fp {
        value: u64::from(hit),
        p,
    })
}

/// `h_alpha^{(q)}(mu)`: product of the coordinate indicators.
pub fn h_weight(alpha: &[u64], q: u64, mu: &[i64]) -> Result<Scalar> {
    if alpha.len() != mu.len() {
        return Err(Error::ShapeMismatch(format!(
            "alpha has {} entries, weight has {}",
            alpha.len(),
            mu.len()
        )));
    }
    let (p, _) = prime_power_parts(q)?;
    let mut acc = Scalar::Fp { value: 1, p };
    for (&a, &x) in alpha.iter().zip(mu) {
        acc *= &h_closed(a, q, x)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}
