use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use superschur_core::arith::{binom_in, h_closed, h_sum, prime_power_parts, FieldConfig};
use superschur_core::bidet::{
    all_indices, assemble_factor_basis, factor_basis_report, minor, trace_formula,
    BideterminantIndex, Straightener,
};
use superschur_core::dist::{
    char0_annihilation, char0_witness, commutation_suite, idempotent_suite, kernel_annihilation,
    kernel_suite, kernel_witness,
    sample::{random_alpha, random_element},
    AnnihilationRecord, DistContext, DistElement, MixedModule,
};
use superschur_core::superpoly::{check_invariant_mod_l, EvenBlock, Morphism, Ring, Symbol};
use superschur_core::tableaux::{enumerate_standard, hook_content_count, shape_data};
use superschur_core::weights::{
    admissible_decomposition, congruent_predecessor, dominance_leq, is_dominant,
    special_filtration, strong_leq,
};
use superschur_core::{Error, Partition, Tableau, Weight, WeightIdeal};

use crate::args::*;
use crate::output::Report;
use crate::Failure;

type Run = Result<Report, Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn weight(g: &Global, s: &str) -> Result<Weight, Failure> {
    let w: Weight = s.parse()?;
    if g.m.is_some_and(|m| m != w.m()) || g.n.is_some_and(|n| n != w.n()) {
        return Err(input(format!(
            "weight {w} does not have {}|{} coordinates",
            g.m.unwrap_or(w.m()),
            g.n.unwrap_or(w.n())
        )));
    }
    Ok(w)
}

fn numbers<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, Failure> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| input(format!("'{x}' is not a valid number")))
        })
        .collect()
}

fn dims(g: &Global) -> (usize, usize) {
    (g.m.unwrap_or(1), g.n.unwrap_or(1))
}

/// The field from `--p/--r/--rational`, or from `q` when only that is known.
fn field(g: &Global, q: Option<u64>) -> Result<FieldConfig, Failure> {
    if g.rational {
        if q.is_some() {
            return Err(input(
                "q-idempotents need a field of positive characteristic",
            ));
        }
        return Ok(FieldConfig::rational());
    }
    match (g.p, q) {
        (Some(p), Some(q)) => {
            let (qp, _) = prime_power_parts(q)?;
            if qp != p {
                return Err(Error::CharacteristicMismatch(format!(
                    "q = {q} is not a power of p = {p}"
                ))
                .into());
            }
            Ok(FieldConfig::prime_power(p, g.r)?)
        }
        (Some(p), None) => Ok(FieldConfig::prime_power(p, g.r)?),
        (None, Some(q)) => {
            let (p, r) = prime_power_parts(q)?;
            Ok(FieldConfig::prime_power(p, r)?)
        }
        (None, None) => Ok(FieldConfig::rational()),
    }
}

fn rng(g: &Global) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(g.seed)
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

pub fn run(cli: &Cli) -> Run {
    let g = &cli.global;
    match &cli.command {
        Command::Weights(c) => weights(g, c),
        Command::Tableaux(c) => tableaux(c),
        Command::Arith(c) => arith(g, c),
        Command::Bidet(c) => bidet(g, c),
        Command::Poly(c) => poly(g, c),
        Command::Dist(c) => dist(g, c),
    }
}

fn weights(g: &Global, cmd: &WeightsCmd) -> Run {
    let mut r = Report::new();
    match cmd {
        WeightsCmd::Dominant { weight: w } => {
            let w = weight(g, w)?;
            let d = is_dominant(&w);
            r.push(&json!({ "weight": w, "dominant": d }), d.to_string());
        }
        WeightsCmd::Leq { mu, lambda } | WeightsCmd::Sleq { mu, lambda } => {
            let (mu, lambda) = (weight(g, mu)?, weight(g, lambda)?);
            let strong = matches!(cmd, WeightsCmd::Sleq { .. });
            let v = if strong {
                strong_leq(&mu, &lambda)?
            } else {
                dominance_leq(&mu, &lambda)?
            };
            let order = if strong { "strong" } else { "dominance" };
            r.push(
                &json!({ "mu": mu, "lambda": lambda, "order": order, "leq": v }),
                v.to_string(),
            );
        }
        WeightsCmd::Decompose { gens } => {
            let gens = gens
                .iter()
                .map(|s| weight(g, s))
                .collect::<Result<Vec<_>, _>>()?;
            for block in admissible_decomposition(&WeightIdeal::new(gens)?, g.lmax)? {
                let members: Vec<String> = block.weights.iter().map(ToString::to_string).collect();
                let p = block.pair;
                r.push(
                    &block,
                    format!(
                        "Γ({},{}) [generator {}, shift {}]: {}",
                        p.a,
                        p.b,
                        p.generator,
                        p.shift,
                        members.join(" ")
                    ),
                );
            }
        }
        WeightsCmd::Filtration { weights } => {
            let set = weights
                .iter()
                .map(|s| weight(g, s))
                .collect::<Result<Vec<_>, _>>()?;
            for (k, w) in special_filtration(&set)?.into_iter().enumerate() {
                r.push(
                    &json!({ "step": k + 1, "weight": w }),
                    format!("{}: {w}", k + 1),
                );
            }
        }
        WeightsCmd::Pred {
            lambda,
            alpha,
            q,
            samples,
        } => match samples {
            None => {
                let lambda = weight(g, lambda.as_deref().unwrap_or_default())?;
                let alpha: Vec<u64> = numbers(alpha.as_deref().unwrap_or_default())?;
                let mu = congruent_predecessor(&lambda, &alpha, *q)?;
                r.push(
                    &json!({ "lambda": lambda, "alpha": alpha, "q": q, "mu": mu }),
                    mu.to_string(),
                );
            }
            Some(count) => {
                let (m, n) = (g.m.unwrap_or(2), g.n.unwrap_or(1));
                let mut rng = rng(g);
                for _ in 0..*count {
                    let mut block = |len: usize| {
                        let mut v: Vec<i64> = (0..len).map(|_| rng.gen_range(-6..=6)).collect();
                        v.sort_unstable_by(|a, b| b.cmp(a));
                        v
                    };
                    let (plus, minus) = (block(m), block(n));
                    let lambda = Weight::from_blocks(&plus, &minus);
                    let alpha = random_alpha(&mut rng, m + n, *q, lambda.size());
                    let mu = congruent_predecessor(&lambda, &alpha, *q)?;
                    let congruent = mu
                        .entries()
                        .iter()
                        .zip(&alpha)
                        .all(|(&x, &a)| x.rem_euclid(*q as i64) == a as i64);
                    let ok = is_dominant(&mu) && dominance_leq(&mu, &lambda)? && congruent;
                    r.check(ok);
                    r.push(
                        &json!({ "lambda": lambda, "alpha": alpha, "q": q, "mu": mu, "status": status(ok) }),
                        format!("{} λ={lambda} α={alpha:?} -> {mu}", status(ok)),
                    );
                }
            }
        },
    }
    Ok(r)
}

fn partition(s: &str) -> Result<Partition, Failure> {
    Ok(Partition::new(numbers(s)?)?)
}

fn tableaux(cmd: &TableauxCmd) -> Run {
    let mut r = Report::new();
    match cmd {
        TableauxCmd::List { shape, bound } => {
            for t in enumerate_standard(&partition(shape)?, *bound) {
                let text = t.to_string();
                r.push(&t, text);
            }
        }
        TableauxCmd::Count { shape, bound } => {
            let shape = partition(shape)?;
            let listed = enumerate_standard(&shape, *bound).len();
            let formula = hook_content_count(&shape, *bound);
            let ok = formula == listed.into();
            r.check(ok);
            r.push(
                &json!({ "shape": shape, "bound": bound, "enumerated": listed, "hook_content": formula.to_string(), "status": status(ok) }),
                format!("{shape} bound {bound}: enumerated {listed}, hook-content {formula}"),
            );
        }
        TableauxCmd::Shape { lambda } => {
            let sd = shape_data(&lambda.parse()?)?;
            let text = format!(
                "a={} b={} mu={} mu+={} mu-={} nu+={} nu-={}",
                sd.a, sd.b, sd.mu, sd.mu_plus, sd.mu_minus, sd.nu_plus, sd.nu_minus
            );
            r.push(&sd, text);
        }
    }
    Ok(r)
}

fn arith(g: &Global, cmd: &ArithCmd) -> Run {
    let mut r = Report::new();
    match cmd {
        ArithCmd::Binom { top, bottom } => {
            let f = field(g, None)?;
            let v = binom_in(&f, *top, *bottom);
            r.push(
                &json!({ "top": top, "bottom": bottom, "field": f.label(), "value": v }),
                v.to_string(),
            );
        }
        ArithCmd::H { t, q, x } => {
            let (sum, closed) = (h_sum(*t, *q, *x)?, h_closed(*t, *q, *x)?);
            let ok = sum == closed;
            r.check(ok);
            r.push(
                &json!({ "t": t, "q": q, "x": x, "sum": sum, "closed": closed, "status": status(ok) }),
                format!("h_{t}^({q})({x}) = {sum} (closed form {closed})"),
            );
        }
        ArithCmd::Check { q } => {
            let qi = *q as i64;
            let mut bad = Vec::new();
            let mut checked = 0;
            for t in 0..*q {
                for x in -3 * qi..=3 * qi {
                    if h_sum(t, *q, x)? != h_closed(t, *q, x)? {
                        bad.push((t, x));
                    }
                    checked += 1;
                }
            }
            r.check(bad.is_empty());
            r.push(
                &json!({ "q": q, "checked": checked, "mismatches": bad, "status": status(bad.is_empty()) }),
                format!("{} q={q}: {checked} values, {} mismatches", status(bad.is_empty()), bad.len()),
            );
        }
    }
    Ok(r)
}

fn block(b: Block) -> EvenBlock {
    match b {
        Block::B11 => EvenBlock::B11,
        Block::B22 => EvenBlock::B22,
    }
}

fn bidet(g: &Global, cmd: &BidetCmd) -> Run {
    let mut r = Report::new();
    match cmd {
        BidetCmd::Basis { lambda, elements } => {
            let lambda = weight(g, lambda)?;
            let f = field(g, None)?;
            let rep = factor_basis_report(&lambda, &f, g.timing)?;
            r.check(rep.is_basis());
            let mut text = format!(
                "lambda {} (mu {}, a {}, b {}) over {}: count {}, rank {}",
                rep.lambda, rep.mu, rep.a, rep.b, rep.field, rep.count, rep.rank
            );
            if g.timing {
                text.push_str(&format!(", {} ms", rep.elapsed_ms));
            }
            r.push(&rep, text);
            if *elements {
                for e in assemble_factor_basis(&lambda, &f)?.elements {
                    let pattern: Vec<String> =
                        e.pattern.iter().map(|(i, j)| format!("y{i}{j}")).collect();
                    let text = format!(
                        "{} {}",
                        if pattern.is_empty() {
                            "1".into()
                        } else {
                            pattern.join("*")
                        },
                        e.index
                    );
                    r.push(&e, text);
                }
            }
        }
        BidetCmd::Straighten {
            mu,
            a,
            b,
            index,
            all,
        } => {
            let mu = weight(g, mu)?;
            let s = Straightener::new(&field(g, None)?, &mu, *a, *b)?;
            let targets: Vec<BideterminantIndex> = match index {
                Some(t) => {
                    let (m, n) = (mu.m() as u32, mu.n() as u32);
                    let tabs = [
                        Tableau::parse(&t[0], m)?,
                        Tableau::parse(&t[1], m)?,
                        Tableau::parse(&t[2], n)?,
                        Tableau::parse(&t[3], n)?,
                    ];
                    vec![BideterminantIndex::new(mu.clone(), *a, *b, tabs)?]
                }
                None if *all => all_indices(&mu, *a, *b)?
                    .into_iter()
                    .filter(|i| !i.is_standard())
                    .collect(),
                None => return Err(input("give --index I+ J+ I- J- or --all")),
            };
            for idx in targets {
                let st = s.straighten(&idx)?;
                r.check(st.residual_zero);
                let terms: Vec<String> = st.terms.iter().map(|(t, c)| format!("{c}*{t}")).collect();
                let text = format!(
                    "{} = {}",
                    st.input,
                    if terms.is_empty() {
                        "0".into()
                    } else {
                        terms.join(" + ")
                    }
                );
                r.push(&st, text);
            }
        }
        BidetCmd::Trace {
            block: b,
            rows,
            cols,
        }
        | BidetCmd::Minor {
            block: b,
            rows,
            cols,
        } => {
            let (m, n) = dims(g);
            let ring = Ring::general(m, n, Symbol::Y, field(g, None)?)?;
            let (rows, cols): (Vec<u32>, Vec<u32>) = (numbers(rows)?, numbers(cols)?);
            let det = minor(&ring, block(*b), &rows, &cols)?;
            if matches!(cmd, BidetCmd::Minor { .. }) {
                r.push(
                    &json!({ "rows": rows, "cols": cols, "minor": det.to_string() }),
                    det.to_string(),
                );
            } else {
                let trace = trace_formula(&ring, block(*b), &rows, &cols)?;
                let ok = trace.equals(&det)?;
                r.check(ok);
                r.push(
                    &json!({ "rows": rows, "cols": cols, "trace": trace.to_string(), "minor": det.to_string(), "status": status(ok) }),
                    format!("{} trace {trace} / minor {det}", status(ok)),
                );
            }
        }
    }
    Ok(r)
}

fn poly(g: &Global, cmd: &PolyCmd) -> Run {
    let mut r = Report::new();
    let (m, n) = dims(g);
    let f = field(g, None)?;
    match cmd {
        PolyCmd::Zcheck { i, j, degree } => {
            let positions: Vec<(usize, usize)> = match (i, j) {
                (Some(i), Some(j)) => vec![(*i, *j)],
                (None, None) => (m + 1..=m + n)
                    .flat_map(|i| (1..=m).map(move |j| (i, j)))
                    .collect(),
                _ => return Err(input("give both --i and --j, or neither")),
            };
            for (i, j) in positions {
                let cert = check_invariant_mod_l(m, n, &f, i, j, *degree)?;
                r.check(cert.holds);
                let text = match cert.degree {
                    Some(d) => format!("z_{i}{j}: invariant modulo L (degree {d})"),
                    None => format!("z_{i}{j}: not found in L up to degree {degree}"),
                };
                r.push(&cert, text);
            }
        }
        PolyCmd::Phi { generator } => {
            let y = Ring::general(m, n, Symbol::Y, f)?;
            let x = Ring::general(m, n, Symbol::X, f)?;
            let source = match generator.as_str() {
                "D1^-1" => y.den_inv(0, EvenBlock::B11),
                "D2^-1" => y.den_inv(0, EvenBlock::B22),
                s => {
                    let ij: Vec<usize> = s
                        .strip_prefix('y')
                        .map(|d| {
                            d.chars()
                                .filter_map(|c| c.to_digit(10).map(|v| v as usize))
                                .collect()
                        })
                        .unwrap_or_default();
                    match ij[..] {
                        [i, j] if s.len() == 3 => y.gen(0, i, j)?,
                        _ => return Err(input(format!("'{s}' is not yij, D1^-1 or D2^-1"))),
                    }
                }
            };
            let image = Morphism::phi_star(&y, &x)?.apply(&source)?;
            r.push(
                &json!({ "generator": generator, "image": image.to_string() }),
                image.to_string(),
            );
        }
    }
    Ok(r)
}

fn annihilation_text(a: &AnnihilationRecord) -> String {
    let what = match a.q {
        Some(q) => format!("h_{:?}^({q})", a.alpha),
        None => format!("Σe_i - {}", a.l),
    };
    let mut s = format!("{} {what} on {}", a.status, a.modules.join(", "));
    if let Some(c) = &a.counterexample {
        s.push_str(&format!(": nonzero on {c}"));
    }
    s
}

fn dist(g: &Global, cmd: &DistCmd) -> Run {
    let mut r = Report::new();
    let (m, n) = dims(g);
    let limit = g.max_basis;
    match cmd {
        DistCmd::Commute { q, module } => {
            let ctx = DistContext::new(m, n, field(g, Some(*q))?)?;
            let module: MixedModule = module.parse()?;
            let records = commutation_suite(&ctx, *q, module, limit)?;
            let failed = records.iter().filter(|c| !c.passed()).count();
            for c in &records {
                r.check(c.passed());
                let mut text = format!(
                    "{} {} e{}{}^({}) s={} a={} on {}",
                    c.status, c.clause, c.i, c.j, c.t, c.s, c.a, c.module
                );
                if let Some(w) = &c.counterexample {
                    text.push_str(&format!(": differs on {w}"));
                }
                r.push(c, text);
            }
            r.text
                .push(format!("{} identities, {failed} failed", records.len()));
        }
        DistCmd::Idempotent { q, module } => {
            let ctx = DistContext::new(m, n, field(g, Some(*q))?)?;
            let rep = idempotent_suite(&ctx, *q, module.parse()?, limit)?;
            r.check(rep.passed());
            let text = format!(
                "{} {} idempotents on {}: idempotent {}, orthogonal {}, sum to identity {}",
                status(rep.passed()),
                rep.idempotents,
                rep.module,
                rep.idempotent,
                rep.orthogonal,
                rep.partition_of_unity
            );
            r.push(&rep, text);
        }
        DistCmd::Kernel { l, q, alpha } => {
            let ctx = DistContext::new(m, n, field(g, Some(*q))?)?;
            let records = match alpha {
                Some(a) => vec![kernel_annihilation(
                    &ctx,
                    *l,
                    *q,
                    &numbers::<u64>(a)?,
                    g.kmax,
                    limit,
                )?],
                None => kernel_suite(&ctx, *l, *q, g.kmax, limit)?,
            };
            for a in &records {
                r.check(a.passed());
                r.push(a, annihilation_text(a));
            }
        }
        DistCmd::Witness {
            l,
            q,
            u,
            alpha,
            samples,
        } => {
            let ctx = DistContext::new(m, n, field(g, Some(*q))?)?;
            let cases: Vec<(DistElement, Vec<u64>)> = match samples {
                None => vec![(
                    DistElement::parse(&ctx, u.as_deref().unwrap_or_default())?,
                    numbers(alpha.as_deref().unwrap_or_default())?,
                )],
                Some(count) => {
                    let mut rng = rng(g);
                    (0..*count)
                        .map(|_| {
                            let u = random_element(&mut rng, &ctx, 3, 3, false)?;
                            Ok((u, random_alpha(&mut rng, m + n, *q, *l)))
                        })
                        .collect::<Result<_, Error>>()?
                }
            };
            for (u, alpha) in cases {
                match kernel_witness(&ctx, &u, &alpha, *q, *l) {
                    Ok(w) => {
                        let text = format!(
                            "u = {} α = {:?}: z = {} in {}, u z has {} terms",
                            w.u, w.alpha, w.z, w.module, w.result_terms
                        );
                        r.push(&w, text);
                    }
                    Err(e @ Error::ConstructionFailure(_)) if samples.is_some() => {
                        r.check(false);
                        let msg = e.to_string();
                        r.push(
                            &json!({ "u": u.to_string(), "alpha": alpha, "status": "fail", "error": msg }),
                            format!("fail u = {u} α = {alpha:?}: {msg}"),
                        );
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
        DistCmd::Char0 {
            l,
            mode,
            u,
            big_n,
            nmax,
            samples,
        } => {
            if g.p.is_some() {
                return Err(input("char0 works over the rationals"));
            }
            let ctx = DistContext::new(m, n, FieldConfig::rational())?;
            if *mode == Char0Mode::Annihilate {
                let a = char0_annihilation(&ctx, *l, g.kmax, limit)?;
                r.check(a.passed());
                r.push(&a, annihilation_text(&a));
                return Ok(r);
            }
            let given_n = big_n.as_deref().map(numbers::<u64>).transpose()?;
            let elements: Vec<DistElement> = match (u, samples) {
                (Some(u), _) => vec![DistElement::parse(&ctx, u)?],
                (None, Some(count)) => {
                    let mut rng = rng(g);
                    (0..*count)
                        .map(|_| random_element(&mut rng, &ctx, 3, 3, true))
                        .collect::<Result<_, Error>>()?
                }
                (None, None) => return Err(input("witness mode needs --u or --samples")),
            };
            for u in elements {
                match char0_witness(&ctx, &u, *l, given_n.clone(), *nmax) {
                    Ok(w) => {
                        let text = format!(
                            "u = {} N = {:?}: z = {} in {}, g(μ) = {}, u z has {} terms",
                            w.u, w.big_n, w.z, w.module, w.g_value, w.result_terms
                        );
                        r.push(&w, text);
                    }
                    Err(e @ Error::ConstructionFailure(_)) => {
                        r.check(false);
                        let msg = e.to_string();
                        r.push(
                            &json!({ "u": u.to_string(), "status": "fail", "error": msg }),
                            format!("fail u = {u}: {msg}"),
                        );
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    Ok(r)
}
