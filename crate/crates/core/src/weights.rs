//! Weights of GL(m|n): dominance and strong orders, weight ideals, admissible
//! decompositions, special filtrations and congruent predecessors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integral weight `(λ_+ | λ_-)` with `m` even and `n` odd coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
pub struct Weight {
    m: usize,
    entries: Vec<i64>,
}

impl Weight {
    pub fn new(m: usize, n: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != m + n {
            return Err(Error::ShapeMismatch(format!(
                "expected {} entries for GL({m}|{n}), got {}",
                m + n,
                entries.len()
            )));
        }
        Ok(Weight { m, entries })
    }

    pub fn from_blocks(plus: &[i64], minus: &[i64]) -> Self {
        let mut entries = plus.to_vec();
        entries.extend_from_slice(minus);
        Weight {
            m: plus.len(),
            entries,
        }
    }

    pub fn zero(m: usize, n: usize) -> Self {
        Weight {
            m,
            entries: vec![0; m + n],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.entries.len() - self.m
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn plus(&self) -> &[i64] {
        &self.entries[..self.m]
    }

    pub fn minus(&self) -> &[i64] {
        &self.entries[self.m..]
    }

    /// `|λ|`
    pub fn size(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn plus_size(&self) -> i64 {
        self.plus().iter().sum()
    }

    pub fn minus_size(&self) -> i64 {
        self.minus().iter().sum()
    }

    fn same_shape(&self, other: &Weight) -> Result<()> {
        if self.m != other.m || self.len() != other.len() {
            return Err(Error::ShapeMismatch(format!("{self} vs {other}")));
        }
        Ok(())
    }

    /// `λ - l(ε_m - ε_{m+1})`
    pub fn shift_across(&self, l: i64) -> Weight {
        let mut w = self.clone();
        if self.m > 0 && self.n() > 0 {
            w.entries[self.m - 1] -= l;
            w.entries[self.m] += l;
        }
        w
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[i64]| xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(self.plus()), join(self.minus()))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses `2,0|1`. Either block may be empty.
    fn from_str(s: &str) -> Result<Self> {
        let (l, r) = s.split_once('|').ok_or_else(|| {
            Error::InvalidInput(format!("weight '{s}' lacks the '|' block separator"))
        })?;
        let parse = |part: &str| -> Result<Vec<i64>> {
            let part = part.trim();
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|x| {
                    x.trim().parse::<i64>().map_err(|_| {
                        Error::InvalidInput(format!("bad weight entry '{x}' in '{s}'"))
                    })
                })
                .collect()
        };
        Ok(Weight::from_blocks(&parse(l)?, &parse(r)?))
    }
}

fn weakly_decreasing(xs: &[i64]) -> bool {
    xs.windows(2).all(|w| w[0] >= w[1])
}

pub fn is_dominant(lambda: &Weight) -> bool {
    weakly_decreasing(lambda.plus()) && weakly_decreasing(lambda.minus())
}

/// Prefix-sum dominance on plain integer vectors of equal length.
fn vector_leq(mu: &[i64], lambda: &[i64]) -> bool {
    if mu.iter().sum::<i64>() != lambda.iter().sum::<i64>() {
        return false;
    }
    let mut acc = 0i64;
    for (a, b) in lambda.iter().zip(mu).take(mu.len().saturating_sub(1)) {
        acc += a - b;
        if acc < 0 {
            return false;
        }
    }
    true
}

/// `μ ⊴ λ`: equal size and every proper prefix sum of `λ - μ` is nonnegative.
pub fn dominance_leq(mu: &Weight, lambda: &Weight) -> Result<bool> {
    mu.same_shape(lambda)?;
    Ok(vector_leq(mu.entries(), lambda.entries()))
}

/// `μ ⊴_s λ`: dominance within the even block and within the odd block.
pub fn strong_leq(mu: &Weight, lambda: &Weight) -> Result<bool> {
    mu.same_shape(lambda)?;
    Ok(vector_leq(mu.plus(), lambda.plus()) && vector_leq(mu.minus(), lambda.minus()))
}

/// All weakly decreasing integer vectors dominated by the weakly decreasing `top`.
pub fn dominated_block(top: &[i64]) -> Vec<Vec<i64>> {
    fn rec(top: &[i64], prefix: &mut Vec<i64>, acc_diff: i64, out: &mut Vec<Vec<i64>>) {
        let k = prefix.len();
        let len = top.len();
        if k + 1 == len {
            // Last entry is forced by the size constraint.
            let last = top[k] + acc_diff;
            if prefix.last().is_none_or(|&p| p >= last) {
                let mut v = prefix.clone();
                v.push(last);
                out.push(v);
            }
            return;
        }
        let hi = prefix
            .last()
            .copied()
            .unwrap_or(i64::MAX)
            .min(top[k] + acc_diff);
        let lo = *top.last().expect("nonempty");
        let mut x = hi;
        while x >= lo {
            prefix.push(x);
            rec(top, prefix, acc_diff + top[k] - x, out);
            prefix.pop();
            x -= 1;
        }
    }
    let mut out = Vec::new();
    if top.is_empty() {
        out.push(Vec::new());
        return out;
    }
    rec(top, &mut Vec::new(), 0, &mut out);
    out
}

/// Every dominant `μ` with `μ ⊴_s λ` (λ need only be blockwise weakly decreasing).
pub fn strong_down_set(lambda: &Weight) -> Vec<Weight> {
    let plus = dominated_block(lambda.plus());
    let minus = dominated_block(lambda.minus());
    let mut out = Vec::with_capacity(plus.len() * minus.len());
    for p in &plus {
        for q in &minus {
            out.push(Weight::from_blocks(p, q));
        }
    }
    out.sort();
    out
}

/// A finitely generated ideal of dominant weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightIdeal {
    generators: Vec<Weight>,
}

impl WeightIdeal {
    /// Normalises the generating set: duplicates and dominated generators are dropped.
    pub fn new(generators: Vec<Weight>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidInput(
                "an ideal needs at least one generator".into(),
            ));
        };
        for g in &generators {
            g.same_shape(first)?;
            if !is_dominant(g) {
                return Err(Error::NotDominant(g.to_string()));
            }
        }
        let mut gens: Vec<Weight> = generators
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let snapshot = gens.clone();
        gens.retain(|g| {
            !snapshot
                .iter()
                .any(|h| h != g && vector_leq(g.entries(), h.entries()))
        });
        Ok(WeightIdeal { generators: gens })
    }

    pub fn generators(&self) -> &[Weight] {
        &self.generators
    }

    pub fn contains(&self, mu: &Weight) -> bool {
        is_dominant(mu)
            && self
                .generators
                .iter()
                .any(|g| g.same_shape(mu).is_ok() && vector_leq(mu.entries(), g.entries()))
    }
}

/// An admissible pair `(a, b)` together with the generator and shift that produce it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissiblePair {
    pub a: i64,
    pub b: i64,
    pub generator: usize,
    pub shift: u64,
}

/// One block `Γ_{a,b}` of an admissible decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleBlock {
    pub pair: AdmissiblePair,
    pub weights: Vec<Weight>,
}

/// The admissible pairs reachable with shifts `l <= l_max`, each with its full
/// (finite) set `Γ_{a,b}` of members with `|μ_+| = a`, `|μ_-| = b`.
pub fn admissible_decomposition(ideal: &WeightIdeal, l_max: u64) -> Result<Vec<AdmissibleBlock>> {
    let mut pairs: BTreeMap<(i64, i64), AdmissiblePair> = BTreeMap::new();
    for (i, g) in ideal.generators().iter().enumerate() {
        if !is_dominant(g) {
            return Err(Error::NotDominant(g.to_string()));
        }
        for l in 0..=l_max {
            let a = g.plus_size() - l as i64;
            let b = g.minus_size() + l as i64;
            pairs.entry((a, b)).or_insert(AdmissiblePair {
                a,
                b,
                generator: i,
                shift: l,
            });
            if g.m() == 0 || g.n() == 0 {
                break;
            }
        }
    }
    let mut blocks = Vec::new();
    for (&(a, b), pair) in pairs.iter().rev() {
        let mut set = BTreeSet::new();
        for g in ideal.generators() {
            let l = g.plus_size() - a;
            if l < 0 || g.minus_size() + l != b {
                continue;
            }
            for mu in strong_down_set(&g.shift_across(l)) {
                set.insert(mu);
            }
        }
        blocks.push(AdmissibleBlock {
            pair: *pair,
            weights: set.into_iter().rev().collect(),
        });
    }
    Ok(blocks)
}

/// Orders a finite `⊴_s`-ideal by repeatedly removing a maximal element.
/// Among several maximal elements the lexicographically largest goes first.
pub fn special_filtration(set: &[Weight]) -> Result<Vec<Weight>> {
    let members: BTreeSet<Weight> = set.iter().cloned().collect();
    for w in &members {
        if !is_dominant(w) {
            return Err(Error::NotDominant(w.to_string()));
        }
        for below in strong_down_set(w) {
            if !members.contains(&below) {
                return Err(Error::NotDownwardClosed(below.to_string()));
            }
        }
    }
    let mut remaining: Vec<Weight> = members.into_iter().collect();
    let mut order = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let idx = (0..remaining.len())
            .rev()
            .find(|&i| {
                let w = &remaining[i];
                !remaining
                    .iter()
                    .any(|o| o != w && strong_leq(w, o).unwrap_or(false))
            })
            .expect("a finite poset has a maximal element");
        order.push(remaining.remove(idx));
    }
    Ok(order)
}

/// Largest integer `<= bound` congruent to `residue` mod `q`.
fn largest_congruent(bound: i64, residue: i64, q: i64) -> i64 {
    bound - (bound - residue).rem_euclid(q)
}

/// Smallest integer `>= bound` congruent to `residue` mod `q`.
fn smallest_congruent(bound: i64, residue: i64, q: i64) -> i64 {
    bound + (residue - bound).rem_euclid(q)
}

/// A dominant `μ ⊴ λ` with `μ_i ≡ α_i (mod q)` for every coordinate.
///
/// Even coordinates are chosen greedily from the top (largest admissible
/// values), odd coordinates greedily from the bottom (smallest admissible
/// values); `μ_m` is lowered by `q·t` with the least `t` that makes the
/// balancing coordinate `μ_{m+1}` large enough for dominance.
pub fn congruent_predecessor(lambda: &Weight, alpha: &[u64], q: u64) -> Result<Weight> {
    let (m, n) = (lambda.m(), lambda.n());
    if alpha.len() != m + n {
        return Err(Error::ShapeMismatch(format!(
            "alpha has {} entries, expected {}",
            alpha.len(),
            m + n
        )));
    }
    if !is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput(
            "congruent predecessor needs m, n >= 1".into(),
        ));
    }
    if q < 2 || alpha.iter().any(|&a| a >= q) {
        return Err(Error::InvalidInput(format!(
            "alpha entries must lie in [0, {q})"
        )));
    }
    let qi = q as i64;
    let alpha_sum: i64 = alpha.iter().map(|&a| a as i64).sum();
    if (alpha_sum - lambda.size()).rem_euclid(qi) != 0 {
        return Err(Error::Precondition(format!(
            "|alpha| = {alpha_sum} is not congruent to |lambda| = {} mod {q}",
            lambda.size()
        )));
    }
    let l = lambda.entries();
    let a: Vec<i64> = alpha.iter().map(|&x| x as i64).collect();
    let mut mu = vec![0i64; m + n];
    let mut bound = i64::MAX;
    for i in 0..m {
        mu[i] = largest_congruent(bound.min(l[i]), a[i], qi);
        bound = mu[i];
    }
    let mut floor = i64::MIN;
    for i in (m + 1..m + n).rev() {
        mu[i] = smallest_congruent(floor.max(l[i]), a[i], qi);
        floor = mu[i];
    }
    let plus_sum: i64 = mu[..m].iter().sum();
    let tail_sum: i64 = mu[m + 1..].iter().sum();
    let balance = lambda.size() - plus_sum - tail_sum;
    // Lowering μ_m by q·t raises μ_{m+1} by q·t.
    let t = if n >= 2 && balance < mu[m + 1] {
        (mu[m + 1] - balance + qi - 1) / qi
    } else {
        0
    };
    mu[m - 1] -= qi * t;
    mu[m] = balance + qi * t;
    let out = Weight::new(m, n, mu)?;
    debug_assert!(is_dominant(&out));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let x = w("2,0|1");
        assert_eq!((x.m(), x.n()), (2, 1));
        assert_eq!(x.to_string(), "2,0|1");
        assert_eq!(w(" -1 , 3 | -5 ").entries(), &[-1, 3, -5]);
        assert!("1,2".parse::<Weight>().is_err());
        assert!("1,x|2".parse::<Weight>().is_err());
    }

    #[test]
    fn dominance_examples() {
        assert!(is_dominant(&w("2,0|1")));
        assert!(!is_dominant(&w("0,1|0")));
        assert!(is_dominant(&w("3,3|-1,-5")));
        assert!(dominance_leq(&w("1,1|0"), &w("2,0|0")).unwrap());
        assert!(dominance_leq(&w("1|1,0"), &w("2|0,0")).unwrap());
        assert!(dominance_leq(&w("1,0|1"), &w("1,0|1")).unwrap());
        assert!(!dominance_leq(&w("1,0|1"), &w("1,0|0")).unwrap());
        assert!(dominance_leq(&w("1,0|0"), &w("1|0,0")).is_err());
    }

    #[test]
    fn strong_order_examples() {
        assert!(strong_leq(&w("1,1|0"), &w("2,0|0")).unwrap());
        assert!(!strong_leq(&w("1,0|1,0"), &w("2,0|0,0")).unwrap());
        assert!(dominance_leq(&w("1,0|1,0"), &w("2,0|0,0")).unwrap());
        assert!(strong_leq(&w("3|1"), &w("3|1")).unwrap());
    }

    #[test]
    fn dominated_block_enumerates_partitions_below() {
        let below = dominated_block(&[3, 0, 0]);
        assert_eq!(below, vec![vec![3, 0, 0], vec![2, 1, 0], vec![1, 1, 1]]);
        assert_eq!(dominated_block(&[1, -1]), vec![vec![1, -1], vec![0, 0]]);
        assert_eq!(dominated_block(&[5]), vec![vec![5]]);
    }

    #[test]
    fn ideal_normalises_generators() {
        let ideal = WeightIdeal::new(vec![w("2,0|0"), w("1,1|0"), w("2,0|0")]).unwrap();
        assert_eq!(ideal.generators(), &[w("2,0|0")]);
        assert!(ideal.contains(&w("1,0|1")));
        assert!(!ideal.contains(&w("0,1|1")));
        assert!(WeightIdeal::new(vec![w("0,1|0")]).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let ideal = WeightIdeal::new(vec![w("1|0")]).unwrap();
        let blocks = admissible_decomposition(&ideal, 1).unwrap();
        let got: Vec<_> = blocks
            .iter()
            .map(|b| ((b.pair.a, b.pair.b), b.weights.clone()))
            .collect();
        assert_eq!(
            got,
            vec![((1, 0), vec![w("1|0")]), ((0, 1), vec![w("0|1")])]
        );

        let ideal = WeightIdeal::new(vec![w("0|0")]).unwrap();
        let blocks = admissible_decomposition(&ideal, 0).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].weights, vec![w("0|0")]);

        let ideal = WeightIdeal::new(vec![w("1,0|0")]).unwrap();
        let blocks = admissible_decomposition(&ideal, 0).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!((blocks[0].pair.a, blocks[0].pair.b), (1, 0));
        assert_eq!(blocks[0].weights, vec![w("1,0|0")]);
    }

    /// Brute force over a box: dominant, in the ideal, grouped by block sizes.
    fn brute_blocks(
        ideal: &WeightIdeal,
        m: usize,
        n: usize,
        lo: i64,
        hi: i64,
    ) -> BTreeMap<(i64, i64), BTreeSet<Weight>> {
        let mut out: BTreeMap<(i64, i64), BTreeSet<Weight>> = BTreeMap::new();
        let len = m + n;
        let mut cur = vec![lo; len];
        loop {
            let mu = Weight::new(m, n, cur.clone()).unwrap();
            if ideal.contains(&mu) {
                out.entry((mu.plus_size(), mu.minus_size()))
                    .or_default()
                    .insert(mu);
            }
            let mut k = 0;
            while k < len && cur[k] == hi {
                cur[k] = lo;
                k += 1;
            }
            if k == len {
                break;
            }
            cur[k] += 1;
        }
        out
    }

    #[test]
    fn decomposition_matches_brute_force() {
        let cases = [
            (vec![w("2,0|1")], 2u64),
            (vec![w("1,1|0,0"), w("2,-1|1,0")], 2),
            (vec![w("2|1,-1")], 3),
        ];
        for (gens, lmax) in cases {
            let ideal = WeightIdeal::new(gens).unwrap();
            let (m, n) = (ideal.generators()[0].m(), ideal.generators()[0].n());
            let brute = brute_blocks(&ideal, m, n, -6, 6);
            for block in admissible_decomposition(&ideal, lmax).unwrap() {
                let set: BTreeSet<_> = block.weights.iter().cloned().collect();
                assert_eq!(
                    Some(&set),
                    brute.get(&(block.pair.a, block.pair.b)),
                    "{:?}",
                    block.pair
                );
                for mu in &block.weights {
                    assert!(is_dominant(mu));
                }
            }
        }
    }

    #[test]
    fn filtration_examples() {
        assert_eq!(special_filtration(&[w("0|0")]).unwrap(), vec![w("0|0")]);
        assert_eq!(
            special_filtration(&[w("1,1|0"), w("2,0|0")]).unwrap(),
            vec![w("2,0|0"), w("1,1|0")]
        );
        let chain = [w("1,1,1|0"), w("3,0,0|0"), w("2,1,0|0")];
        assert_eq!(
            special_filtration(&chain).unwrap(),
            vec![w("3,0,0|0"), w("2,1,0|0"), w("1,1,1|0")]
        );
        assert!(matches!(
            special_filtration(&[w("2,0|0")]),
            Err(Error::NotDownwardClosed(_))
        ));
    }

    #[test]
    fn filtration_prefix_complements_are_ideals() {
        let ideal = WeightIdeal::new(vec![w("2,0|1,0"), w("1,1|2,-1")]).unwrap();
        for block in admissible_decomposition(&ideal, 2).unwrap() {
            let order = special_filtration(&block.weights).unwrap();
            for k in 0..order.len() {
                let rest: BTreeSet<_> = order[k..].iter().cloned().collect();
                for x in &rest {
                    for y in strong_down_set(x) {
                        assert!(rest.contains(&y));
                    }
                }
            }
        }
    }

    #[test]
    fn predecessor_example() {
        let mu = congruent_predecessor(&w("2|1"), &[0, 0], 3).unwrap();
        assert_eq!(mu, w("0|3"));
        // λ already in the class of α.
        let mu = congruent_predecessor(&w("4,1|0"), &[1, 1, 0], 3).unwrap();
        assert_eq!(mu, w("4,1|0"));
        assert!(matches!(
            congruent_predecessor(&w("2|1"), &[1, 0], 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn incomparable_across_sizes() {
        assert!(!dominance_leq(&w("1,0|0"), &w("1,0|1")).unwrap());
        assert!(!dominance_leq(&w("1,0|1"), &w("1,0|0")).unwrap());
    }
}
