//! End-to-end acceptance run: one PASS/FAIL line per criterion, each under its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superschur_core::arith::{h_closed, h_sum, h_weight, FieldConfig};
use superschur_core::bidet::{
    all_indices, bideterminant, factor_basis_report, minor, trace_formula, Straightener,
};
use superschur_core::dist::{
    char0_annihilation, char0_witness, commutation_suite, idempotent_suite, kernel_suite,
    kernel_witness,
    sample::{random_alpha, random_element},
    DistContext, MixedModule, TensorVector, DEFAULT_BASIS_LIMIT,
};
use superschur_core::superpoly::{check_invariant_mod_l, EvenBlock, Ring, Symbol};
use superschur_core::tableaux::{enumerate_all, enumerate_standard, hook_content_count};
use superschur_core::weights::{congruent_predecessor, is_dominant};
use superschur_core::{Partition, Result, Weight};

type Check = fn() -> Result<std::result::Result<String, String>>;

fn rat() -> FieldConfig {
    FieldConfig::rational()
}

fn fp(p: u64) -> FieldConfig {
    FieldConfig::prime(p).unwrap()
}

fn c1_idempotent_values() -> Result<std::result::Result<String, String>> {
    let mut checked = 0;
    for q in [3u64, 5, 9, 25, 27] {
        let qi = q as i64;
        for t in 0..q {
            for x in -3 * qi..=3 * qi {
                if h_sum(t, q, x)? != h_closed(t, q, x)? {
                    return Ok(Err(format!("q={q} t={t} x={x}")));
                }
                checked += 1;
            }
        }
    }
    Ok(Ok(format!("{checked} values")))
}

fn c2_idempotent_algebra() -> Result<std::result::Result<String, String>> {
    for (m, n) in [(1, 1), (2, 1)] {
        let ctx = DistContext::new(m, n, fp(3))?;
        let r = idempotent_suite(&ctx, 3, MixedModule::new(2, 1), DEFAULT_BASIS_LIMIT)?;
        if !r.passed() {
            return Ok(Err(format!("GL({m}|{n}): {:?}", r.counterexample)));
        }
    }
    Ok(Ok("V^2 W^1, q = 3".into()))
}

fn c3_commutation() -> Result<std::result::Result<String, String>> {
    let mut total = 0;
    for (m, n) in [(1, 1), (2, 1), (2, 2)] {
        for q in [3u64, 9] {
            let ctx = DistContext::new(m, n, fp(3))?;
            let records = commutation_suite(&ctx, q, MixedModule::new(2, 1), DEFAULT_BASIS_LIMIT)?;
            if let Some(bad) = records.iter().find(|r| !r.passed()) {
                return Ok(Err(serde_json::to_string(bad).unwrap()));
            }
            total += records.len();
        }
    }
    Ok(Ok(format!("{total} identities")))
}

/// Prefix sums of `λ - μ` over the concatenated coordinates.
fn dominated(mu: &[i64], lambda: &[i64]) -> bool {
    let mut acc = 0;
    for (a, b) in lambda.iter().zip(mu) {
        acc += a - b;
        if acc < 0 {
            return false;
        }
    }
    acc == 0
}

fn c4_congruent_predecessor() -> Result<std::result::Result<String, String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..200 {
        let (m, n) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let q = [3u64, 5, 9][rng.gen_range(0..3)];
        let mut plus: Vec<i64> = (0..m).map(|_| rng.gen_range(-6..=6)).collect();
        let mut minus: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
        plus.sort_unstable_by(|a, b| b.cmp(a));
        minus.sort_unstable_by(|a, b| b.cmp(a));
        let lambda = Weight::from_blocks(&plus, &minus);
        let alpha = random_alpha(&mut rng, m + n, q, lambda.size());
        let mu = congruent_predecessor(&lambda, &alpha, q)?;
        let congruent = mu
            .entries()
            .iter()
            .zip(&alpha)
            .all(|(&x, &a)| x.rem_euclid(q as i64) == a as i64);
        if !is_dominant(&mu) || !dominated(mu.entries(), lambda.entries()) || !congruent {
            return Ok(Err(format!(
                "case {case}: λ={lambda} α={alpha:?} q={q} gave {mu}"
            )));
        }
    }
    Ok(Ok("200 instances, seed 4".into()))
}

fn c5_kernel_char_p() -> Result<std::result::Result<String, String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut witnesses = 0;
    for (m, n) in [(1, 1), (2, 1)] {
        for q in [3u64, 5] {
            let ctx = DistContext::new(m, n, fp(q))?;
            for l in [-1i64, 0, 1] {
                if let Some(bad) = kernel_suite(&ctx, l, q, 2, DEFAULT_BASIS_LIMIT)?
                    .iter()
                    .find(|r| !r.passed())
                {
                    return Ok(Err(serde_json::to_string(bad).unwrap()));
                }
                for _ in 0..20 {
                    let u = random_element(&mut rng, &ctx, 3, 3, false)?;
                    let alpha = random_alpha(&mut rng, m + n, q, l);
                    let w = match kernel_witness(&ctx, &u, &alpha, q, l) {
                        Ok(w) => w,
                        Err(e) => {
                            return Ok(Err(format!(
                                "GL({m}|{n}) q={q} l={l} u={u} α={alpha:?}: {e}"
                            )))
                        }
                    };
                    // recheck through the closed form of the idempotent and a fresh action
                    let fixed = h_weight(&alpha, q, &w.z.weight(m + n))?.is_one();
                    let image = u.apply(&ctx, &TensorVector::basis(&ctx.field, w.z.clone()))?;
                    let degree = w.z.v.len() as i64 - w.z.w.len() as i64;
                    if !fixed || image.is_zero() || degree != l {
                        return Ok(Err(format!(
                            "bad witness {}",
                            serde_json::to_string(&w).unwrap()
                        )));
                    }
                    witnesses += 1;
                }
            }
        }
    }
    Ok(Ok(format!("{witnesses} witnesses, seed 5")))
}

fn c6_kernel_char0() -> Result<std::result::Result<String, String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (m, n) in [(1, 1), (2, 1)] {
        let ctx = DistContext::new(m, n, rat())?;
        for l in [-1i64, 0, 1] {
            let r = char0_annihilation(&ctx, l, 2, DEFAULT_BASIS_LIMIT)?;
            if !r.passed() {
                return Ok(Err(serde_json::to_string(&r).unwrap()));
            }
        }
        for case in 0..10 {
            let l = [-1i64, 0, 1][case % 3];
            let u = random_element(&mut rng, &ctx, 3, 3, true)?;
            if u.terms
                .iter()
                .all(|t| t.diag.as_ref().is_none_or(|g| g.is_constant()))
            {
                return Ok(Err(format!("sampled {u} without a diagonal part")));
            }
            let w = match char0_witness(&ctx, &u, l, None, 12) {
                Ok(w) => w,
                Err(e) => return Ok(Err(format!("GL({m}|{n}) l={l} u={u}: {e}"))),
            };
            let image = u.apply(&ctx, &TensorVector::basis(&ctx.field, w.z.clone()))?;
            if image.is_zero() || w.z.weight(m + n).iter().sum::<i64>() != l {
                return Ok(Err(format!(
                    "bad witness {}",
                    serde_json::to_string(&w).unwrap()
                )));
            }
        }
    }
    Ok(Ok("20 witnesses, seed 6".into()))
}

fn c7_factor_basis() -> Result<std::result::Result<String, String>> {
    let cases = [
        ("1|0", 1, 1, 4),
        ("0|1", 1, 1, 4),
        ("1|1", 1, 1, 4),
        ("1,0|0", 2, 1, 64),
    ];
    let mut lines = Vec::new();
    for (text, m, n, count) in cases {
        let lambda: Weight = text.parse()?;
        assert_eq!((lambda.m(), lambda.n()), (m, n));
        for field in [fp(3), fp(5), rat()] {
            let r = factor_basis_report(&lambda, &field, false)?;
            if r.count != count || r.rank != count {
                return Ok(Err(format!(
                    "λ={text} over {}: count {} rank {}",
                    field.label(),
                    r.count,
                    r.rank
                )));
            }
        }
        lines.push(format!("{text}:{count}"));
    }
    Ok(Ok(lines.join(" ")))
}

fn subsets(n: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((1..=n).filter(|&i| mask & (1 << (i - 1)) != 0).collect());
        }
    }
    out
}

fn c8_trace_formula() -> Result<std::result::Result<String, String>> {
    let mut checked = 0;
    for size in 1..=3usize {
        let ring = Ring::general(size, size, Symbol::Y, rat())?;
        for block in [EvenBlock::B11, EvenBlock::B22] {
            for k in 1..=size {
                for rows in subsets(size as u32, k) {
                    for cols in subsets(size as u32, k) {
                        let a = trace_formula(&ring, block, &rows, &cols)?;
                        let b = minor(&ring, block, &rows, &cols)?;
                        if !a.equals(&b)? {
                            return Ok(Err(format!("{block:?} rows {rows:?} cols {cols:?}")));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(Ok(format!("{checked} minors")))
}

fn c9_straightening() -> Result<std::result::Result<String, String>> {
    let mut done = 0;
    for text in ["1,1|", "2,1,0|"] {
        let mu: Weight = text.parse()?;
        let s = Straightener::new(&rat(), &mu, 0, 0)?;
        let ring = Ring::general(mu.m(), mu.n(), Symbol::Y, rat())?;
        for idx in all_indices(&mu, 0, 0)?
            .into_iter()
            .filter(|i| !i.is_standard())
        {
            let st = s.straighten(&idx)?;
            let mut rebuilt = ring.zero();
            for (term, c) in &st.terms {
                rebuilt = rebuilt.add(&bideterminant(&ring, term)?.scale(c))?;
            }
            if !st.residual_zero || !rebuilt.equals(&bideterminant(&ring, &idx)?)? {
                return Ok(Err(format!("{idx}")));
            }
            done += 1;
        }
    }
    Ok(Ok(format!("{done} non-standard indices")))
}

fn c10_invariance() -> Result<std::result::Result<String, String>> {
    let mut checked = 0;
    for (m, n) in [(1usize, 1usize), (2, 1), (2, 2)] {
        for i in 1..=m + n {
            for j in 1..=m + n {
                if (i <= m) == (j <= m) {
                    continue;
                }
                // z_ij lives in the lower-left block of the parabolic ring
                if i <= m {
                    continue;
                }
                let cert = check_invariant_mod_l(m, n, &rat(), i, j, 2)?;
                if !cert.holds {
                    return Ok(Err(format!("GL({m}|{n}) z_{i}{j}")));
                }
                checked += 1;
            }
        }
    }
    Ok(Ok(format!("{checked} elements")))
}

fn c11_tableau_counts() -> Result<std::result::Result<String, String>> {
    let mut shapes = 0;
    for size in 0..=6u32 {
        for shape in Partition::all_of_size(size, 6) {
            for bound in 1..=4u32 {
                let standard = enumerate_standard(&shape, bound);
                let brute = enumerate_all(&shape, bound)
                    .into_iter()
                    .filter(|t| t.is_standard())
                    .count();
                let formula = hook_content_count(&shape, bound);
                if num_bigint::BigInt::from(standard.len()) != formula || brute != standard.len() {
                    return Ok(Err(format!(
                        "{shape} bound {bound}: {} vs {formula}",
                        standard.len()
                    )));
                }
            }
            shapes += 1;
        }
    }
    Ok(Ok(format!("{shapes} shapes x 4 bounds")))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, Check); 11] = [
        ("1 idempotent values", 1, c1_idempotent_values),
        ("2 idempotent algebra", 10, c2_idempotent_algebra),
        ("3 commutation formulae", 120, c3_commutation),
        ("4 congruent predecessor", 5, c4_congruent_predecessor),
        ("5 kernel, char p", 120, c5_kernel_char_p),
        ("6 kernel, char 0", 60, c6_kernel_char0),
        ("7 factor bases", 300, c7_factor_basis),
        ("8 trace formula", 5, c8_trace_formula),
        ("9 straightening", 60, c9_straightening),
        ("10 invariance mod L", 120, c10_invariance),
        ("11 tableau counts", 5, c11_tableau_counts),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, limit, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(limit);
        let (pass, detail) = match outcome {
            Ok(Ok(msg)) if within => (true, msg),
            Ok(Ok(msg)) => (false, format!("{msg}; over the {limit} s limit")),
            Ok(Err(msg)) => (false, msg),
            Err(e) => (false, format!("error: {e}")),
        };
        println!(
            "{} criterion {name} ({:.2} s / {limit} s): {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        failed += usize::from(!pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
