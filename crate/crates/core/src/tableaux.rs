//! Partitions, semistandard tableaux and the shape data attached to a
//! dominant weight.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{is_dominant, Weight};

/// A partition; trailing zeros are dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn from_weight_block(block: &[i64]) -> Result<Self> {
        if block.iter().any(|&x| x < 0) {
            return Err(Error::InvalidInput(format!("{block:?} has negative parts")));
        }
        Partition::new(block.iter().map(|&x| x as u32).collect())
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Column lengths, i.e. the conjugate partition's parts.
    pub fn column_lengths(&self) -> Vec<u32> {
        conjugate(self).0
    }

    /// All partitions of `size` with at most `max_rows` rows, in decreasing lexicographic order.
    pub fn all_of_size(size: u32, max_rows: usize) -> Vec<Partition> {
        fn rec(rem: u32, cap: u32, rows_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if rows_left == 0 {
                return;
            }
            for part in (1..=cap.min(rem)).rev() {
                cur.push(part);
                rec(rem - part, part, rows_left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, size, max_rows, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Transpose of the Young diagram.
pub fn conjugate(p: &Partition) -> Partition {
    let first = p.0.first().copied().unwrap_or(0);
    Partition(
        (1..=first)
            .map(|c| p.0.iter().filter(|&&r| r >= c).count() as u32)
            .collect(),
    )
}

/// A filling of a Young diagram with letters in `1..=bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
    bound: u32,
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>, bound: u32) -> Result<Self> {
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) || rows.iter().any(Vec::is_empty) {
            return Err(Error::InvalidInput(format!(
                "{rows:?} is not a Young diagram filling"
            )));
        }
        if rows.iter().flatten().any(|&x| x == 0 || x > bound) {
            return Err(Error::InvalidInput(format!(
                "entries of {rows:?} must lie in 1..={bound}"
            )));
        }
        Ok(Tableau { rows, bound })
    }

    /// Reads `11/2` (rows separated by `/`, one digit per box) or `1,10/2` when
    /// entries need more digits; `-` or the empty string is the empty tableau.
    pub fn parse(s: &str, bound: u32) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Tableau::empty(bound));
        }
        let bad = || Error::InvalidInput(format!("cannot parse tableau '{s}'"));
        let rows = s
            .split('/')
            .map(|row| {
                if row.contains(',') {
                    row.split(',')
                        .map(|x| x.trim().parse().map_err(|_| bad()))
                        .collect()
                } else {
                    row.chars()
                        .map(|c| c.to_digit(10).ok_or_else(bad))
                        .collect()
                }
            })
            .collect::<Result<Vec<Vec<u32>>>>()?;
        Tableau::new(rows, bound)
    }

    pub fn empty(bound: u32) -> Self {
        Tableau {
            rows: Vec::new(),
            bound,
        }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    /// Entries of column `c`, top to bottom.
    pub fn column(&self, c: usize) -> Vec<u32> {
        self.rows
            .iter()
            .take_while(|r| r.len() > c)
            .map(|r| r[c])
            .collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width).map(|c| self.column(c)).collect()
    }

    pub fn reading_word(&self) -> Vec<u32> {
        self.rows.iter().flatten().copied().collect()
    }

    /// Rows weakly increase, columns strictly increase.
    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|pair| pair[1].iter().zip(&pair[0]).all(|(lo, hi)| lo > hi));
        rows_ok && cols_ok
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.rows.iter().flatten().any(|&x| x > 9) {
            ","
        } else {
            ""
        };
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(sep))
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

/// Every standard tableau of the given shape, ordered lexicographically by reading word.
pub fn enumerate_standard(shape: &Partition, bound: u32) -> Vec<Tableau> {
    let cells: Vec<(usize, usize)> = shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<u32>> = shape.parts().iter().map(|&l| vec![0; l as usize]).collect();
    let mut out = Vec::new();
    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        rows: &mut Vec<Vec<u32>>,
        bound: u32,
        out: &mut Vec<Tableau>,
    ) {
        if k == cells.len() {
            out.push(Tableau {
                rows: rows.clone(),
                bound,
            });
            return;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { rows[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        for x in lo_row.max(lo_col)..=bound {
            rows[r][c] = x;
            fill(k + 1, cells, rows, bound, out);
        }
        rows[r][c] = 0;
    }
    fill(0, &cells, &mut rows, bound, &mut out);
    out
}

/// Every filling (standard or not) of the shape with letters in `1..=bound`.
pub fn enumerate_all(shape: &Partition, bound: u32) -> Vec<Tableau> {
    let cells = shape.size() as usize;
    let mut out = Vec::new();
    let mut word = vec![1u32; cells];
    if bound == 0 {
        return if cells == 0 {
            vec![Tableau::empty(bound)]
        } else {
            out
        };
    }
    loop {
        let mut it = word.iter().copied();
        let rows = shape
            .parts()
            .iter()
            .map(|&l| it.by_ref().take(l as usize).collect())
            .collect();
        out.push(Tableau { rows, bound });
        let mut k = cells;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if word[k] < bound {
                word[k] += 1;
                for x in word.iter_mut().skip(k + 1) {
                    *x = 1;
                }
                break;
            }
        }
    }
}

/// Number of standard tableaux via the hook-content formula.
pub fn hook_content_count(shape: &Partition, bound: u32) -> BigInt {
    let conj = conjugate(shape);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (r, &len) in shape.parts().iter().enumerate() {
        for c in 0..len as usize {
            let content = bound as i64 + c as i64 - r as i64;
            if content <= 0 {
                return BigInt::zero();
            }
            let arm = len as i64 - c as i64 - 1;
            let leg = conj.parts()[c] as i64 - r as i64 - 1;
            num *= content;
            den *= arm + leg + 1;
        }
    }
    num / den
}

/// Shape data of a dominant weight: the determinant exponents and the
/// partition pair left after removing them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeData {
    /// Exponent of `det(Y11)`: `min(λ_m, 0)`.
    pub a: i64,
    /// Exponent of `det(Y22)`: `min(λ_{m+n}, 0)`.
    pub b: i64,
    pub mu: Weight,
    pub mu_plus: Partition,
    pub mu_minus: Partition,
    /// `(μ_+' | μ_-')`
    pub nu_plus: Partition,
    pub nu_minus: Partition,
}

pub fn shape_data(lambda: &Weight) -> Result<ShapeData> {
    if !is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let (m, n) = (lambda.m(), lambda.n());
    if m + n == 0 {
        return Err(Error::InvalidInput("shape data needs m + n >= 1".into()));
    }
    let a = if m > 0 {
        lambda.entries()[m - 1].min(0)
    } else {
        0
    };
    let b = if n > 0 {
        lambda.entries()[m + n - 1].min(0)
    } else {
        0
    };
    let mut entries = lambda.entries().to_vec();
    for x in &mut entries[..m] {
        *x -= a;
    }
    for x in &mut entries[m..] {
        *x -= b;
    }
    let mu = Weight::new(m, n, entries)?;
    let mu_plus = Partition::from_weight_block(mu.plus())?;
    let mu_minus = Partition::from_weight_block(mu.minus())?;
    Ok(ShapeData {
        a,
        b,
        nu_plus: conjugate(&mu_plus),
        nu_minus: conjugate(&mu_minus),
        mu,
        mu_plus,
        mu_minus,
    })
}
