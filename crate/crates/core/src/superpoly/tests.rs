use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::arith::FieldConfig;

fn q() -> FieldConfig {
    FieldConfig::rational()
}

fn x(ring: &Ring, i: usize, j: usize) -> Poly {
    ring.gen(0, i, j).unwrap()
}

/// Reference product: concatenate generator words and bubble-sort them,
/// flipping the sign whenever two odd generators pass each other.
fn oracle_product(ring: &Ring, a: &Poly, b: &Poly) -> Poly {
    let word = |m: &Monomial| -> Vec<usize> {
        m.exps()
            .iter()
            .enumerate()
            .flat_map(|(v, &e)| std::iter::repeat_n(v, e as usize))
            .collect()
    };
    let mut out = ring.zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut w: Vec<usize> = word(ma).into_iter().chain(word(mb)).collect();
            let mut negative = false;
            for end in (1..w.len()).rev() {
                for k in 0..end {
                    if w[k] > w[k + 1] {
                        if ring.is_odd(w[k]) && ring.is_odd(w[k + 1]) {
                            negative = !negative;
                        }
                        w.swap(k, k + 1);
                    }
                }
            }
            if w.windows(2).any(|p| p[0] == p[1] && ring.is_odd(p[0])) {
                continue;
            }
            let mut mono = ring.unit_monomial();
            for v in w {
                mono.exps_mut()[v] += 1;
            }
            for (slot, (da, db)) in ma.den().iter().zip(mb.den()).enumerate() {
                mono.den_mut()[slot] = da + db;
            }
            let c = ca * cb;
            out.add_term(mono, if negative { -c } else { c });
        }
    }
    out
}

fn random_poly(ring: &Ring, rng: &mut ChaCha8Rng, terms: usize, max_factors: usize) -> Poly {
    let vars: Vec<usize> = (0..ring.nvars()).filter(|&v| ring.is_present(v)).collect();
    let mut out = ring.zero();
    for _ in 0..terms {
        let mut p = ring.from_i64(rng.gen_range(-3..=3));
        for _ in 0..rng.gen_range(0..=max_factors) {
            let (c, i, j) = ring.position(vars[rng.gen_range(0..vars.len())]);
            p = p.mul(&ring.gen(c, i, j).unwrap()).unwrap();
        }
        out = out.add(&p).unwrap();
    }
    out
}

fn random_homogeneous(ring: &Ring, rng: &mut ChaCha8Rng, parity: usize) -> Poly {
    loop {
        let p = random_poly(ring, rng, 1, 3);
        if !p.is_zero() && p.parity() == Some(parity as u8) {
            return p;
        }
    }
}

#[test]
fn odd_generators_anticommute() {
    let r = Ring::general(1, 1, Symbol::X, q()).unwrap();
    assert!(x(&r, 1, 2).mul(&x(&r, 1, 2)).unwrap().is_zero());
    let a = x(&r, 1, 2).mul(&x(&r, 2, 1)).unwrap();
    let b = x(&r, 2, 1).mul(&x(&r, 1, 2)).unwrap();
    assert_eq!(a, b.neg());
    assert_eq!(a.to_string(), "+x12*x21");
    assert_eq!(b.to_string(), "-x12*x21");
}

#[test]
fn product_matches_sorting_oracle() {
    let r = Ring::general(1, 1, Symbol::X, q()).unwrap();
    let f = x(&r, 1, 1).add(&x(&r, 1, 2)).unwrap();
    let g = x(&r, 1, 1).sub(&x(&r, 1, 2)).unwrap();
    let prod = f.mul(&g).unwrap();
    assert_eq!(prod, oracle_product(&r, &f, &g));
    // x12·x11 = x11·x12 since x11 is even, so the cross terms cancel.
    assert_eq!(prod.to_string(), "+x11^2");

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (m, n) in [(1, 1), (2, 1), (1, 2)] {
        let r = Ring::general(m, n, Symbol::X, q()).unwrap().with_copies(2);
        for _ in 0..40 {
            let a = random_poly(&r, &mut rng, 3, 3);
            let b = random_poly(&r, &mut rng, 3, 3);
            assert_eq!(a.mul(&b).unwrap(), oracle_product(&r, &a, &b));
        }
    }
}

#[test]
fn supercommutativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let r = Ring::general(2, 1, Symbol::X, q()).unwrap();
    for _ in 0..40 {
        let pa = rng.gen_range(0..2);
        let pb = rng.gen_range(0..2);
        let a = random_homogeneous(&r, &mut rng, pa);
        let b = random_homogeneous(&r, &mut rng, pb);
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        assert_eq!(ab, if pa * pb == 1 { ba.neg() } else { ba });
    }
}

#[test]
fn comultiplication_of_generator() {
    let r = Ring::general(1, 1, Symbol::X, q()).unwrap();
    let delta = Morphism::comultiply(&r, 0).unwrap();
    let r2 = delta.target().clone();
    let expected = r2
        .gen(0, 1, 1)
        .unwrap()
        .mul(&r2.gen(1, 1, 1).unwrap())
        .unwrap()
        .add(
            &r2.gen(0, 1, 2)
                .unwrap()
                .mul(&r2.gen(1, 2, 1).unwrap())
                .unwrap(),
        )
        .unwrap();
    assert_eq!(delta.apply(&x(&r, 1, 1)).unwrap(), expected);
    assert_eq!(delta.apply(&r.one()).unwrap(), r2.one());
    assert!(matches!(
        delta.apply(&r.den_inv(0, EvenBlock::B11)),
        Err(crate::Error::UnsupportedDenominator(_))
    ));
}

#[test]
fn counit_and_coassociativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (m, n) in [(1, 1), (2, 1), (1, 2)] {
        let r = Ring::general(m, n, Symbol::X, q()).unwrap();
        let delta = Morphism::comultiply(&r, 0).unwrap();
        let r2 = delta.target().clone();
        let left = Morphism::comultiply(&r2, 0).unwrap();
        let right = Morphism::comultiply(&r2, 1).unwrap();
        let eps_left = Morphism::counit(&r2, 0).unwrap();
        let eps_right = Morphism::counit(&r2, 1).unwrap();
        let mut samples: Vec<Poly> = (1..=m + n)
            .flat_map(|i| (1..=m + n).map(move |j| (i, j)))
            .map(|(i, j)| x(&r, i, j))
            .collect();
        samples.extend((0..30).map(|_| random_poly(&r, &mut rng, 2, 4)));
        for f in &samples {
            let d = delta.apply(f).unwrap();
            assert_eq!(eps_left.apply(&d).unwrap(), *f);
            assert_eq!(eps_right.apply(&d).unwrap(), *f);
            assert_eq!(left.apply(&d).unwrap(), right.apply(&d).unwrap());
        }
    }
}

#[test]
fn parabolic_determinants_are_grouplike() {
    let r = Ring::parabolic(2, 1, Symbol::Y, q()).unwrap();
    let delta = Morphism::comultiply(&r, 0).unwrap();
    let r2 = delta.target().clone();
    for block in [EvenBlock::B11, EvenBlock::B22] {
        let lhs = delta.apply(&r.block_det(0, block)).unwrap();
        let rhs = r2.block_det(0, block).mul(&r2.block_det(1, block)).unwrap();
        assert_eq!(lhs, rhs);
        let inv = delta.apply(&r.den_inv(0, block)).unwrap();
        assert!(inv.mul(&lhs).unwrap().equals(&r2.one()).unwrap());
    }
}

#[test]
fn block_inverse() {
    for m in 1..=3 {
        let r = Ring::general(m, 1, Symbol::X, q()).unwrap();
        let a = block_matrix(&r, 0, EvenBlock::B11).unwrap();
        let inv = invert_even_block(&r, 0, EvenBlock::B11).unwrap();
        assert!(matrices_equal(&mat_mul(&a, &inv).unwrap(), &identity(&r, m)).unwrap());
        assert!(matrices_equal(&mat_mul(&inv, &a).unwrap(), &identity(&r, m)).unwrap());
    }
    let r = Ring::general(1, 1, Symbol::X, q()).unwrap();
    let inv = invert_even_block(&r, 0, EvenBlock::B11).unwrap();
    assert_eq!(inv[0][0].to_string(), "+D1^-1");
    assert!(inv[0][0]
        .mul(&x(&r, 1, 1))
        .unwrap()
        .equals(&r.one())
        .unwrap());
}

#[test]
fn phi_star_images() {
    let y = Ring::general(1, 1, Symbol::Y, q()).unwrap();
    let xr = Ring::general(1, 1, Symbol::X, q()).unwrap();
    let phi = Morphism::phi_star(&y, &xr).unwrap();
    assert_eq!(phi.apply(&x(&y, 1, 1)).unwrap(), x(&xr, 1, 1));
    let expected = x(&xr, 2, 2)
        .sub(
            &x(&xr, 2, 1)
                .mul(&xr.den_inv(0, EvenBlock::B11))
                .unwrap()
                .mul(&x(&xr, 1, 2))
                .unwrap(),
        )
        .unwrap();
    assert_eq!(phi.apply(&x(&y, 2, 2)).unwrap(), expected);
    assert_eq!(
        phi.apply(&x(&y, 2, 2)).unwrap().to_string(),
        "+x22+x12*x21*D1^-1"
    );
}

#[test]
fn phi_star_is_a_morphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (m, n) in [(1, 1), (2, 1), (1, 2)] {
        let y = Ring::general(m, n, Symbol::Y, q()).unwrap();
        let xr = Ring::general(m, n, Symbol::X, q()).unwrap();
        let phi = Morphism::phi_star(&y, &xr).unwrap();
        for _ in 0..30 {
            let a = random_poly(&y, &mut rng, 2, 2);
            let b = random_poly(&y, &mut rng, 2, 2);
            let lhs = phi.apply(&a.mul(&b).unwrap()).unwrap();
            let rhs = phi.apply(&a).unwrap().mul(&phi.apply(&b).unwrap()).unwrap();
            assert!(lhs.equals(&rhs).unwrap());
        }
        for v in 0..y.nvars() {
            let (_, i, j) = y.position(v);
            let img = phi.apply(&x(&y, i, j)).unwrap();
            assert_eq!(img.parity(), Some(y.is_odd(v) as u8));
        }
        let det = phi.apply(&y.block_det(0, EvenBlock::B22)).unwrap();
        let inv = phi.apply(&y.den_inv(0, EvenBlock::B22)).unwrap();
        assert!(det.mul(&inv).unwrap().equals(&xr.one()).unwrap());
    }
}

#[test]
fn phi_star_is_injective_on_small_monomials() {
    for (m, n) in [(1, 1), (2, 1)] {
        let y = Ring::general(m, n, Symbol::Y, q()).unwrap();
        let xr = Ring::general(m, n, Symbol::X, q()).unwrap();
        let phi = Morphism::phi_star(&y, &xr).unwrap();
        let gens: Vec<Poly> = (0..y.nvars())
            .map(|v| y.position(v))
            .map(|(_, i, j)| x(&y, i, j))
            .collect();
        let mut basis = vec![y.one()];
        for a in 0..gens.len() {
            basis.push(gens[a].clone());
            for b in a..gens.len() {
                let p = gens[a].mul(&gens[b]).unwrap();
                if !p.is_zero() {
                    basis.push(p);
                }
            }
        }
        let images: Vec<Poly> = basis.iter().map(|p| phi.apply(p).unwrap()).collect();
        assert_eq!(independence_rank(&images).unwrap(), basis.len());
    }
}

#[test]
fn z_elements() {
    let r = Ring::parabolic(1, 1, Symbol::Y, q()).unwrap();
    let z = z_element(&r, 2, 1).unwrap();
    assert_eq!(z.to_string(), "+y21*D1^-1");
    assert_eq!(z.parity(), Some(1));
    let r = Ring::parabolic(2, 1, Symbol::Y, q()).unwrap();
    let z = z_element(&r, 3, 1).unwrap();
    assert_eq!(z.to_string(), "+y22*y31*D1^-1-y21*y32*D1^-1");
    assert!(z_element(&r, 1, 1).is_err());
    assert!(r.gen(0, 1, 3).is_err());
}

#[test]
fn invariance_modulo_l() {
    let cert = check_invariant_mod_l(1, 1, &q(), 2, 1, 2).unwrap();
    assert!(cert.holds);
    assert_eq!(cert.degree, Some(1));
    assert_eq!(cert.groups.len(), 1);
    assert_eq!(
        cert.groups[0].expansion,
        vec![("y22*y(-1)11".to_string(), "1".to_string())]
    );
    let cert = check_invariant_mod_l(2, 1, &q(), 3, 2, 2).unwrap();
    assert!(cert.holds);
}

#[test]
fn z_tensor_one_is_not_in_l() {
    let r = Ring::parabolic(1, 1, Symbol::Y, q()).unwrap();
    let z = z_element(&r, 2, 1).unwrap();
    assert!(l_tensor_membership(&z.tensor(&r.one()).unwrap(), 2)
        .unwrap()
        .is_none());
}

#[test]
fn degree_guard() {
    let r = Ring::general(1, 1, Symbol::X, q())
        .unwrap()
        .with_max_degree(3);
    let a = x(&r, 1, 1).pow(2).unwrap();
    assert!(matches!(
        a.mul(&a),
        Err(crate::Error::DegreeGuard {
            degree: 4,
            limit: 3
        })
    ));
}

#[test]
fn equality_modulo_denominators() {
    let r = Ring::general(1, 1, Symbol::X, q()).unwrap();
    let f = x(&r, 1, 1).mul(&r.den_inv(0, EvenBlock::B11)).unwrap();
    assert!(f.equals(&r.one()).unwrap());
    assert_ne!(f, r.one());
    let other = Ring::general(1, 1, Symbol::Y, q()).unwrap();
    assert!(matches!(
        f.add(&other.one()),
        Err(crate::Error::ContextMismatch)
    ));
}
