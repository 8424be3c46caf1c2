use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{FieldConfig, Scalar};
use crate::error::{Error, Result};

use super::poly::{Monomial, Poly};

pub const DEFAULT_MAX_DEGREE: u32 = 24;

/// Letter used when printing generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Symbol {
    X,
    Y,
}

impl Symbol {
    fn letter(self) -> char {
        match self {
            Symbol::X => 'x',
            Symbol::Y => 'y',
        }
    }
}

/// The two even diagonal blocks whose determinants are inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EvenBlock {
    B11,
    B22,
}

impl EvenBlock {
    pub fn index(self) -> usize {
        match self {
            EvenBlock::B11 => 0,
            EvenBlock::B22 => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingParams {
    pub m: usize,
    pub n: usize,
    pub symbol: Symbol,
    /// Number of tensor factors.
    pub copies: usize,
    /// Drop the upper-right odd block (the parabolic `P^-`).
    pub parabolic: bool,
    pub field: FieldConfig,
    pub max_degree: u32,
}

#[derive(Debug)]
struct Inner {
    params: RingParams,
    odd: Vec<bool>,
    present: Vec<bool>,
    odd_vars: Vec<usize>,
}

/// Variable context of a (tensor power of a) localized generic supermatrix ring.
///
/// Generator `(i, j)` of factor `c` has index `c*(m+n)^2 + (i-1)*(m+n) + (j-1)`;
/// odd generators anticommute across factors, which realizes the tensor sign rule.
#[derive(Clone, Debug)]
pub struct Ring(Arc<Inner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.params == other.0.params
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new(params: RingParams) -> Result<Ring> {
        if params.m + params.n == 0 {
            return Err(Error::InvalidInput("m + n must be positive".into()));
        }
        let s = params.m + params.n;
        let mut odd = Vec::with_capacity(params.copies * s * s);
        let mut present = Vec::with_capacity(params.copies * s * s);
        for _ in 0..params.copies {
            for i in 1..=s {
                for j in 1..=s {
                    odd.push((i <= params.m) != (j <= params.m));
                    present.push(!(params.parabolic && i <= params.m && j > params.m));
                }
            }
        }
        let odd_vars = (0..odd.len()).filter(|&v| odd[v] && present[v]).collect();
        Ok(Ring(Arc::new(Inner {
            params,
            odd,
            present,
            odd_vars,
        })))
    }

    /// `K[GL(m|n)]`.
    pub fn general(m: usize, n: usize, symbol: Symbol, field: FieldConfig) -> Result<Ring> {
        Ring::new(RingParams {
            m,
            n,
            symbol,
            copies: 1,
            parabolic: false,
            field,
            max_degree: DEFAULT_MAX_DEGREE,
        })
    }

    /// `K[P^-]`, the block lower triangular parabolic.
    pub fn parabolic(m: usize, n: usize, symbol: Symbol, field: FieldConfig) -> Result<Ring> {
        Ring::new(RingParams {
            m,
            n,
            symbol,
            copies: 1,
            parabolic: true,
            field,
            max_degree: DEFAULT_MAX_DEGREE,
        })
    }

    pub fn with_copies(&self, copies: usize) -> Ring {
        Ring::new(RingParams {
            copies,
            ..self.0.params.clone()
        })
        .expect("params already validated")
    }

    pub fn with_max_degree(&self, max_degree: u32) -> Ring {
        Ring::new(RingParams {
            max_degree,
            ..self.0.params.clone()
        })
        .expect("params already validated")
    }

    pub fn params(&self) -> &RingParams {
        &self.0.params
    }

    pub fn m(&self) -> usize {
        self.0.params.m
    }

    pub fn n(&self) -> usize {
        self.0.params.n
    }

    pub fn size(&self) -> usize {
        self.0.params.m + self.0.params.n
    }

    pub fn copies(&self) -> usize {
        self.0.params.copies
    }

    pub fn field(&self) -> &FieldConfig {
        &self.0.params.field
    }

    pub fn is_parabolic(&self) -> bool {
        self.0.params.parabolic
    }

    pub fn max_degree(&self) -> u32 {
        self.0.params.max_degree
    }

    pub fn nvars(&self) -> usize {
        self.0.odd.len()
    }

    pub fn nden(&self) -> usize {
        2 * self.copies()
    }

    pub fn is_odd(&self, var: usize) -> bool {
        self.0.odd[var]
    }

    pub fn is_present(&self, var: usize) -> bool {
        self.0.present[var]
    }

    pub(crate) fn odd_vars(&self) -> &[usize] {
        &self.0.odd_vars
    }

    /// Whether `(i, j)` is a generator of this ring (1-based).
    pub fn has_position(&self, i: usize, j: usize) -> bool {
        let s = self.size();
        (1..=s).contains(&i)
            && (1..=s).contains(&j)
            && !(self.is_parabolic() && i <= self.m() && j > self.m())
    }

    pub fn var(&self, copy: usize, i: usize, j: usize) -> Result<usize> {
        let s = self.size();
        if copy >= self.copies() || !self.has_position(i, j) {
            return Err(Error::IndexOutOfRange(format!(
                "generator ({i},{j}) of factor {copy}"
            )));
        }
        Ok(copy * s * s + (i - 1) * s + (j - 1))
    }

    /// `(copy, i, j)` of a variable index.
    pub fn position(&self, var: usize) -> (usize, usize, usize) {
        let s = self.size();
        (var / (s * s), (var % (s * s)) / s + 1, var % s + 1)
    }

    pub fn den_slot(&self, copy: usize, block: EvenBlock) -> usize {
        2 * copy + block.index()
    }

    pub fn block_range(&self, block: EvenBlock) -> std::ops::RangeInclusive<usize> {
        match block {
            EvenBlock::B11 => 1..=self.m(),
            EvenBlock::B22 => self.m() + 1..=self.size(),
        }
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self)
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field().one())
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        Poly::monomial(self, self.unit_monomial(), c)
    }

    pub fn from_i64(&self, c: i64) -> Poly {
        self.constant(self.field().from_i64(c))
    }

    pub(crate) fn unit_monomial(&self) -> Monomial {
        Monomial::new(vec![0; self.nvars()], vec![0; self.nden()])
    }

    /// The generator `x_ij` (or `y_ij`) of factor `copy`.
    pub fn gen(&self, copy: usize, i: usize, j: usize) -> Result<Poly> {
        let v = self.var(copy, i, j)?;
        let mut mono = self.unit_monomial();
        mono.exps_mut()[v] = 1;
        Ok(Poly::monomial(self, mono, self.field().one()))
    }

    /// `det(X11)^{-1}` or `det(X22)^{-1}` of factor `copy`.
    pub fn den_inv(&self, copy: usize, block: EvenBlock) -> Poly {
        self.den_inv_pow(copy, block, 1)
    }

    pub fn den_inv_pow(&self, copy: usize, block: EvenBlock, e: u16) -> Poly {
        let mut mono = self.unit_monomial();
        mono.den_mut()[self.den_slot(copy, block)] = e;
        Poly::monomial(self, mono, self.field().one())
    }

    /// Expanded determinant of a diagonal even block of factor `copy`.
    pub fn block_det(&self, copy: usize, block: EvenBlock) -> Poly {
        let idx: Vec<usize> = self.block_range(block).collect();
        let mut out = self.zero();
        for (perm, negative) in permutations(idx.len()) {
            let mut mono = self.unit_monomial();
            for (r, &c) in perm.iter().enumerate() {
                let v = self
                    .var(copy, idx[r], idx[c])
                    .expect("diagonal blocks are always present");
                mono.exps_mut()[v] += 1;
            }
            let c = if negative {
                -self.field().one()
            } else {
                self.field().one()
            };
            out.add_term(mono, c);
        }
        out
    }

    pub fn var_name(&self, var: usize) -> String {
        let (copy, i, j) = self.position(var);
        let sep = if self.size() >= 10 { "," } else { "" };
        let mut s = format!("{}{i}{sep}{j}", self.0.params.symbol.letter());
        if self.copies() > 1 {
            s.push_str(&format!("@{}", copy + 1));
        }
        s
    }

    pub fn den_name(&self, slot: usize) -> String {
        let mut s = format!("D{}", slot % 2 + 1);
        if self.copies() > 1 {
            s.push_str(&format!("@{}", slot / 2 + 1));
        }
        s
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = &self.0.params;
        let base = if params.parabolic { "P-" } else { "GL" };
        write!(f, "K[{base}({}|{})]", params.m, params.n)?;
        if params.copies != 1 {
            write!(f, "^{}", params.copies)?;
        }
        write!(f, " over {}", params.field)
    }
}

/// All permutations of `0..k` with their sign (`true` = odd).
pub fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(
        cur: &mut Vec<usize>,
        used: &mut Vec<bool>,
        inversions: usize,
        out: &mut Vec<(Vec<usize>, bool)>,
    ) {
        let k = used.len();
        if cur.len() == k {
            out.push((cur.clone(), inversions % 2 == 1));
            return;
        }
        for x in 0..k {
            if !used[x] {
                let added = (x + 1..k).filter(|&y| used[y]).count();
                used[x] = true;
                cur.push(x);
                rec(cur, used, inversions + added, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], 0, &mut out);
    out
}
