//! Property tests. Structured inputs come from the seeded generators in
//! `common`, driven by proptest seeds.

mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use ptri_core::cells::{MonomialCell, MonomialFn};
use ptri_core::complex::{build_retraction, PadicSimplex};
use ptri_core::direction::{certify_direction, find_direction, leading_form, Polynomial};
use ptri_core::dispatch::{build_lift, dispatch, verify};
use ptri_core::gamma::{project, Extension, Gamma, IndexSet};
use ptri_core::io;
use ptri_core::oracle::{enumerate_closure, enumerate_members, fitting_oracle, sample_padic, Rng, Window};
use ptri_core::padic::{pow_p, vp_u64, PadicNumber, SubgroupSpec};
use ptri_core::rat::{self, Q};

use common::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn nonzero_rational(p: u64) -> impl Strategy<Value = PadicNumber> {
    (-500i64..500, 1i64..500, -4i64..4)
        .prop_filter("nonzero", |(a, _, _)| *a != 0)
        .prop_map(move |(a, b, k)| PadicNumber::from_rational(p, Q::new(BigInt::from(a), BigInt::from(b))).shift(k))
}

fn subsets(s: &IndexSet) -> Vec<IndexSet> {
    let v: Vec<usize> = s.iter().copied().collect();
    (0..1u32 << v.len()).map(|mask| v.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect()).collect()
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn ac_is_multiplicative((p, x, y) in prime().prop_flat_map(|p| (Just(p), nonzero_rational(p), nonzero_rational(p))), m in 1u32..8) {
        let modulus = pow_p(p, m);
        let lhs = x.mul(&y).ac(m).unwrap();
        let rhs = (x.ac(m).unwrap() * y.ac(m).unwrap()) % &modulus;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nth_root_round_trip(p in prime(), e in 2u64..7, r in -300i64..300, d in 1i64..300, k in -3i64..3) {
        prop_assume!(d as u64 % p != 0);
        let s = vp_u64(p, e);
        let unit = Q::one() + rat::big(pow_p(p, 2 * s + 1)) * Q::new(BigInt::from(r), BigInt::from(d));
        let x = PadicNumber::from_rational(p, unit).shift(e as i64 * k);
        let y = x.nth_root(e).unwrap();
        let back = y.pow(e as i64).unwrap();
        prop_assert_eq!(back.valuation(), x.valuation());
        prop_assert!(back.agrees(&x).unwrap());
    }

    #[test]
    fn subgroups_are_closed((p, x, y) in prime().prop_flat_map(|p| (Just(p), nonzero_rational(p), nonzero_rational(p))),
                            kind in 0usize..4, n in 1u64..4, m in 1u32..4) {
        let spec = match kind {
            0 => SubgroupSpec::P { n },
            1 => SubgroupSpec::Q { n, m },
            2 => SubgroupSpec::U { e: n, n: m },
            _ => SubgroupSpec::D { m },
        };
        let (ix, iy) = (x.in_subgroup(&spec).unwrap(), y.in_subgroup(&spec).unwrap());
        if ix && iy {
            prop_assert!(x.mul(&y).in_subgroup(&spec).unwrap());
        }
        // D^M R lies in the valuation ring: closed under products only.
        if ix && kind != 3 {
            prop_assert!(PadicNumber::one(p).div(&x).unwrap().in_subgroup(&spec).unwrap());
        }
    }

    #[test]
    fn image_law(p in prime(), e in 2u64..6, n in 1u64..4, extra in 0u32..3, r in -300i64..300, d in 1i64..300, k in -3i64..3) {
        prop_assume!(d as u64 % p != 0);
        let s = vp_u64(p, e);
        let m = s + 1 + extra;
        let unit = Q::one() + rat::big(pow_p(p, m)) * Q::new(BigInt::from(r), BigInt::from(d));
        let y = PadicNumber::from_rational(p, unit).shift(n as i64 * k);
        let (before, after) = (SubgroupSpec::Q { n, m }, SubgroupSpec::Q { n: e * n, m: s + m });
        prop_assert!(y.in_subgroup(&before).unwrap());
        prop_assert!(y.pow(e as i64).unwrap().in_subgroup(&after).unwrap());
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn faces_compose(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let q = rng.range(1, 3) as usize;
        let a = random_polytope(&mut rng, q, 4);
        let supp = a.support();
        let jj = random_subset(&mut rng, &supp);
        let j = random_subset(&mut rng, &jj);
        if let (Ok(Some(outer)), Ok(Some(direct))) = (a.face(&jj), a.face(&j)) {
            if let Ok(Some(inner)) = outer.face(&j) {
                prop_assert!(inner.set_eq(&direct));
            } else {
                prop_assert!(false, "face of a face is missing");
            }
        }
    }

    #[test]
    fn membership_and_faces_match_the_window(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let q = rng.range(1, 3) as usize;
        let a = random_polytope(&mut rng, q, 4);
        let w = Window::new(8, q);
        let members = enumerate_members(&a, &w).unwrap();
        for x in &members {
            prop_assert!(a.member(x));
        }
        let closure = enumerate_closure(&a, &w).unwrap();
        for j in subsets(&a.support()) {
            let face = a.face(&j).unwrap();
            let seen = closure.iter().any(|x| x.iter().enumerate().all(|(i, g)| j.contains(&(i + 1)) == (*g != Gamma::Inf)));
            if face.is_none() {
                prop_assert!(!seen, "empty face {:?} has window points", j);
            }
        }
    }

    #[test]
    fn finite_extensions_factor(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let q = rng.range(1, 3) as usize;
        let a = random_polytope(&mut rng, q, 4);
        let f = random_affine(&mut rng, &a.support(), 4);
        let j = random_subset(&mut rng, &a.support());
        if let Ok(Extension::Finite(g)) = a.extend_to_face(&f, &j) {
            for x in enumerate_members(&a, &Window::new(10, q)).unwrap() {
                prop_assert_eq!(f.eval(&x), g.eval(&project(&x, &j)));
            }
        }
    }

    #[test]
    fn proper_faces_partition_the_frontier(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let q = rng.range(1, 3) as usize;
        let a = random_polytope(&mut rng, q, 3);
        let supp = a.support();
        let proper: Vec<_> = a.faces().unwrap().into_iter().filter(|(j, _)| *j != supp).map(|(_, f)| f).collect();
        let w = Window::new(6, q);
        for x in enumerate_closure(&a, &w).unwrap() {
            let hits = proper.iter().filter(|f| f.member(&x)).count();
            if a.member(&x) {
                prop_assert_eq!(hits, 0);
            } else {
                prop_assert_eq!(hits, 1, "frontier point {:?} lies in {} faces", x, hits);
            }
        }
        let closure = enumerate_closure(&a, &w).unwrap();
        for f in &proper {
            for x in enumerate_members(f, &w).unwrap() {
                prop_assert!(closure.contains(&x));
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_sound(seed in any::<u64>(), p in prime()) {
        let mut rng = Rng::new(seed);
        let q = rng.range(1, 3) as usize;
        let s = PadicSimplex::new(2, random_staircase(&mut rng, q)).unwrap();
        let a = sample_padic(&s, p, 5, 10, seed);
        prop_assert_eq!(&a, &sample_padic(&s, p, 5, 10, seed));
        for x in &a {
            prop_assert!(s.member(x).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn retraction_laws(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let c = random_closed_complex(&mut rng);
        let target = random_lower_subset(&mut rng, &c);
        let p = *rng.pick(&PRIMES);
        let r = build_retraction(&c, &target, p).unwrap();
        prop_assert!(r.check_shapes());
        for (b, block) in c.blocks.iter().enumerate() {
            for (i, s) in block.simplexes.iter().enumerate() {
                for x in sample_padic(s, p, 5, 4, seed ^ i as u64) {
                    let (bb, y) = r.eval(b, &x).unwrap();
                    prop_assert!(target.contains(&(bb, r.locate(bb, &y).unwrap())));
                    prop_assert_eq!(r.eval(bb, &y).unwrap(), (bb, y.clone()));
                    if target.contains(&(b, i)) {
                        prop_assert_eq!((bb, y), (b, x));
                    }
                }
            }
        }
    }

    #[test]
    fn closed_complexes_contain_their_closures(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let c = random_closed_complex(&mut rng);
        for block in &c.blocks {
            for s in &block.simplexes {
                let faces = s.faces_of();
                for x in enumerate_closure(s.shape(), &Window::new(6, s.dim())).unwrap() {
                    prop_assert!(faces.iter().any(|f| f.shape().member(&x)));
                    prop_assert!(block.simplexes.iter().any(|t| t.shape().member(&x)));
                }
            }
        }
    }

    #[test]
    fn fitting_matches_congruence(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let p = *rng.pick(&PRIMES);
        let n = rng.range(1, 3) as u64;
        let q = rng.range(0, 2) as usize;
        let socle = PadicSimplex::new(2, random_staircase(&mut rng, q)).unwrap();
        let mut exps = BTreeMap::new();
        for i in socle.support() {
            if rng.coin() {
                exps.insert(i, n as i64 * rng.range(0, 2));
            }
        }
        let mu = MonomialFn::mono(PadicNumber::p_power(p, rng.range(-2, 3)), exps);
        let lambda = PadicNumber::p_power(p, rng.range(0, n as i64 - 1));
        if let Ok(cell) = MonomialCell::new(socle, MonomialFn::Zero, MonomialFn::Zero, mu, lambda, n, 2) {
            prop_assert_eq!(cell.is_fitting(), fitting_oracle(&cell, 5, 16, seed).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn lift_laws(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let (m, params) = random_monoplex(&mut rng);
        let parent = m.parents().unwrap();
        let d = dispatch(&m).unwrap();
        prop_assert!(verify(&m, &parent, &d).is_ok());
        let l = build_lift(&m, &d).unwrap();
        prop_assert!(l.certificates.iter().all(|(_, ok)| *ok));
        for (i, x) in l.simplexes.iter().enumerate() {
            for (j, y) in l.simplexes.iter().enumerate() {
                let below = i == j || m.ancestors(&parent, i).contains(&j);
                prop_assert_eq!(y.support().is_subset(&x.support()), below);
                prop_assert_eq!(x.has_face(y), below);
            }
        }
        for (a, s) in l.simplexes.iter().enumerate() {
            for y in sample_padic(s, params.p, 6, 4, seed ^ a as u64) {
                let (a2, x, t) = l.eval_phi(&y).unwrap();
                prop_assert_eq!(a2, a);
                let back = l.invert_phi(a, &x, &t).unwrap();
                for (u, v) in back.iter().zip(&y) {
                    prop_assert_eq!(u.valuation(), v.valuation());
                    prop_assert!(u.agrees(v).unwrap());
                }
            }
        }
    }

    #[test]
    fn directions_are_sound(seed in any::<u64>(), s in 0u32..=8) {
        let mut rng = Rng::new(seed);
        let nvars = rng.range(2, 3) as usize;
        let family: Vec<Polynomial> = (0..rng.range(1, 3))
            .map(|_| {
                let terms = (0..rng.range(1, 4))
                    .map(|_| {
                        let mut e = vec![0u32; nvars];
                        for _ in 0..rng.range(0, 3) {
                            e[rng.below(nvars as u64) as usize] += 1;
                        }
                        (e, rat::int(rng.range(-3, 3)))
                    })
                    .collect();
                Polynomial::from_terms(nvars, terms)
            })
            .filter(|f| !f.is_zero())
            .collect();
        prop_assume!(!family.is_empty());
        let p = *rng.pick(&PRIMES);
        let eta = find_direction(&family, s, p).unwrap();
        prop_assert!(certify_direction(&family, &eta, seed).is_ok());
    }

    #[test]
    fn leading_form_is_homogeneous(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let f = Polynomial::from_terms(2, vec![
            (vec![rng.range(0, 2) as u32, 1], rat::int(rng.range(1, 3))),
            (vec![1, rng.range(0, 2) as u32], rat::int(rng.range(-3, -1))),
            (vec![0, 0], rat::int(1)),
        ]);
        let lead = leading_form(std::slice::from_ref(&f)).unwrap();
        let d = lead.degree() as i64;
        let c = Q::new(BigInt::from(rng.range(-5, 5)), BigInt::from(rng.range(1, 4)));
        let b = vec![rat::int(rng.range(-4, 4)), rat::int(rng.range(-4, 4))];
        let cb: Vec<Q> = b.iter().map(|x| &c * x).collect();
        prop_assert_eq!(lead.eval(&cb), (0..d).fold(Q::one(), |acc, _| acc * &c) * lead.eval(&b));
    }

    #[test]
    fn io_round_trips(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let q = rng.range(1, 3) as usize;
        let a = random_polytope(&mut rng, q, 4);
        let back = io::parse_polytope(&io::write_polytope(&a)).unwrap();
        prop_assert_eq!(&back, &a);
        let (m, params) = random_monoplex(&mut rng);
        let v = io::write_monoplex(&m);
        let back = io::parse_monoplex(params.p, &v).unwrap();
        prop_assert_eq!(io::write_monoplex(&back), v);
        let x = PadicNumber::p_power(params.p, rng.range(-3, 3));
        prop_assert_eq!(io::parse_padic(params.p, &io::write_padic(&x)).unwrap(), x);
    }
}
