use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cartesian::algebra::random::{random_nonconstant, random_nonzero, random_polynomial, RandomPolySpec};
use cartesian::algebra::{
    coefficient_decompose, div_exact, divide_single, gcd, gcd_all, is_squarefree, squarefree_part, BasePair, GaussRational,
    MonomialOrder, OrderKind, Polynomial, Var, VarSet,
};
use cartesian::cli::parse_polynomial;
use cartesian::constructions::{cartesian_saturation, graph_points, random_graph_curve, SaturationSpec};
use cartesian::geometry::{
    count_intersections, incidence_graph, kst_free_check, partition_rich, repeated_values, specialize, CountOptions,
    Point, PointSet, Side, DEFAULT_BUDGET,
};
use cartesian::nullstellensatz::{cartesian_test, degenerate_points, trivial_cartesian_probe, Decomposition};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn poly(r: &mut ChaCha8Rng, vars: VarSet, deg: u32, terms: usize) -> Polynomial {
    random_nonzero(r, &RandomPolySpec::new(vars, deg, terms))
}

fn deg(p: &Polynomial) -> i64 {
    p.total_degree().map(|d| d as i64).unwrap_or(-1)
}

fn rational_point(r: &mut ChaCha8Rng) -> Point {
    let mut c = || GaussRational::from_fraction(r.gen_range(-9..=9), r.gen_range(1..=4));
    Point::new(c(), c())
}

fn random_points(r: &mut ChaCha8Rng, label: &str, n: usize) -> PointSet {
    let mut pts: Vec<Point> = Vec::new();
    while pts.len() < n {
        let p = rational_point(r);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    PointSet::new(label, pts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_identity(seed in any::<u64>(), kind in 0..3usize) {
        let mut r = rng(seed);
        let f = poly(&mut r, VarSet::ALL, 6, 8);
        let g = poly(&mut r, VarSet::ALL, 3, 4);
        let order = MonomialOrder::new([OrderKind::Lex, OrderKind::Grlex, OrderKind::Grevlex][kind]);
        let (q, rem) = divide_single(&f, &g, &order).unwrap();
        prop_assert_eq!(&(&(&g * &q) + &rem), &f);
        let (lm, _) = g.leading_term_in(&order).unwrap();
        for (m, _) in rem.terms() {
            prop_assert!(lm.quotient_of(m).is_none());
        }
        if kind != 0 && !q.is_zero() {
            prop_assert!(deg(&q) <= deg(&f) - deg(&g));
        }
    }

    #[test]
    fn gcd_divides_and_scales(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = poly(&mut r, VarSet::ALL, 2, 3);
        let b = poly(&mut r, VarSet::ALL, 2, 3);
        let c = poly(&mut r, VarSet::ALL, 2, 3);
        let g = gcd(&a, &b).unwrap();
        prop_assert!(div_exact(&a, &g).unwrap().is_some());
        prop_assert!(div_exact(&b, &g).unwrap().is_some());
        let gc = gcd(&(&a * &c), &(&b * &c)).unwrap();
        prop_assert_eq!(gc, (&g * &c).monic());
    }

    #[test]
    fn squarefree_part_properties(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = poly(&mut r, VarSet::ALL, 2, 3);
        let b = poly(&mut r, VarSet::ALL, 2, 3);
        let f = &(&a * &a) * &b;
        let (sf, _) = squarefree_part(&f).unwrap();
        prop_assert!(is_squarefree(&sf).unwrap());
        let mut family = vec![sf.clone()];
        family.extend(Var::ALL.iter().map(|&v| sf.derivative(v)).filter(|d| !d.is_zero()));
        prop_assert!(gcd_all(&family).unwrap().is_constant());
        for _ in 0..100 {
            let pt: [GaussRational; 4] = std::array::from_fn(|_| GaussRational::from_fraction(r.gen_range(-5..=5), r.gen_range(1..=3)));
            prop_assert_eq!(f.eval_at(&pt).is_zero(), sf.eval_at(&pt).is_zero());
        }
    }

    #[test]
    fn decompose_reassembles(seed in any::<u64>(), st in any::<bool>()) {
        let mut r = rng(seed);
        let f = random_polynomial(&mut r, &RandomPolySpec::new(VarSet::ALL, 5, 10));
        let base = if st { BasePair::ST } else { BasePair::XY };
        let dec = coefficient_decompose(&f, base);
        let (a, b) = base.vars();
        let mut back = Polynomial::zero();
        for (&(i, j), c) in &dec.coefficients {
            prop_assert!(c.uses_only(base.complement().var_set()));
            back = &back + &(&(&Polynomial::var(a).pow(i) * &Polynomial::var(b).pow(j)) * c);
        }
        prop_assert_eq!(back, f);
    }

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut f = random_polynomial(&mut r, &RandomPolySpec::new(VarSet::ALL, 4, 6));
        f = f.scale(&GaussRational::new(
            num_rational::BigRational::new(r.gen_range(-7i64..=7).into(), r.gen_range(1i64..=5).into()),
            num_rational::BigRational::new(r.gen_range(-3i64..=3).into(), 1.into()),
        ));
        prop_assert_eq!(parse_polynomial(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn cartesian_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = loop {
            let g = random_nonconstant(&mut r, &RandomPolySpec::new(VarSet::FIRST, 3, 3));
            if is_squarefree(&g).unwrap() { break g; }
        };
        let k = loop {
            let k = random_nonconstant(&mut r, &RandomPolySpec::new(VarSet::SECOND, 3, 3));
            if is_squarefree(&k).unwrap() { break k; }
        };
        let h = poly(&mut r, VarSet::ALL, 3, 4);
        let l = poly(&mut r, VarSet::ALL, 3, 4);
        let f = &(&g * &h) + &(&k * &l);
        prop_assume!(!f.is_zero());
        let out = cartesian_test(&f, &g, &k).unwrap();
        let w = out.decomposition.witness().expect("witness");
        prop_assert!(w.certifies(&f));
        prop_assert!(deg(&w.h) <= deg(&f) - deg(&g));
        prop_assert!(deg(&w.l) <= deg(&f) - deg(&k));

        // A perturbed F either still passes (and then re-multiplies) or yields a real certificate.
        let bad = &f + &poly(&mut r, VarSet::ALL, 2, 2);
        if bad.is_zero() { return Ok(()); }
        match cartesian_test(&bad, &g, &k).unwrap().decomposition {
            Decomposition::Witness(w) => prop_assert!(w.certifies(&bad)),
            Decomposition::Failure(c) => prop_assert!(div_exact(&c.residue, &k).unwrap().is_none()),
        }
    }

    #[test]
    fn degenerate_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_nonconstant(&mut r, &RandomPolySpec::new(VarSet::ALL, 4, 6));
        let cands = random_points(&mut r, "Q", 40);
        let d = f.total_degree().unwrap() as usize;
        match degenerate_points(&f, &cands) {
            Ok(found) => {
                if trivial_cartesian_probe(&f).unwrap().is_none() {
                    prop_assert!(found.len() <= d * d);
                }
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn duality(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = rational_point(&mut r);
        let q = rational_point(&mut r);
        let mut f = poly(&mut r, VarSet::ALL, 3, 5);
        if seed % 3 == 0 {
            let v = f.eval_at(&[p.u.clone(), p.v.clone(), q.u.clone(), q.v.clone()]);
            f = &f - &Polynomial::constant(v);
        }
        if seed % 5 == 0 {
            let (_, _, s, t) = cartesian::algebra::vars();
            let a = poly(&mut r, VarSet::ALL, 2, 3);
            f = &(&(&s - &Polynomial::constant(q.u.clone())) * &f) + &(&(&t - &Polynomial::constant(q.v.clone())) * &a);
        }
        prop_assume!(!f.is_zero());
        let cq = specialize(&f, &q, Side::Second).unwrap();
        let cp = specialize(&f, &p, Side::First).unwrap();
        prop_assert_eq!(cq.contains(&p), cp.contains(&q));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn count_matches_double_loop(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = poly(&mut r, VarSet::ALL, 2, 4);
        let p = random_points(&mut r, "P", 12);
        let q = random_points(&mut r, "Q", 12);
        let mut naive = 0;
        for a in p.iter() {
            for b in q.iter() {
                naive += f.eval_at(&[a.u.clone(), a.v.clone(), b.u.clone(), b.v.clone()]).is_zero() as u64;
            }
        }
        let par = count_intersections(std::slice::from_ref(&f), &p, &q, &CountOptions { parallel: true, emit_pairs: true }).unwrap();
        let seq = count_intersections(std::slice::from_ref(&f), &p, &q, &CountOptions { parallel: false, emit_pairs: true }).unwrap();
        prop_assert_eq!(par.count, naive);
        prop_assert_eq!(&par, &seq);
    }

    #[test]
    fn repeated_is_shifted_count(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = poly(&mut r, VarSet::ALL, 2, 4);
        let p = random_points(&mut r, "P", 10);
        let a = GaussRational::from_integer(r.gen_range(-3..=3));
        let rep = repeated_values(&f, &p, &a, &CountOptions::default()).unwrap();
        let shifted = &f - &Polynomial::constant(a);
        prop_assume!(!shifted.is_zero());
        let direct = count_intersections(&[shifted], &p, &p, &CountOptions::default()).unwrap();
        prop_assert_eq!(rep.count, direct.count);
    }

    #[test]
    fn saturation_counts_everything(seed in any::<u64>(), n in 1usize..12) {
        let mut r = rng(seed);
        let spec = SaturationSpec::new(random_graph_curve(&mut r, Var::X, 3), random_graph_curve(&mut r, Var::S, 3));
        let inst = cartesian_saturation(&spec, n, seed);
        let c = count_intersections(&inst.system, &inst.p, &inst.q, &CountOptions::default()).unwrap();
        prop_assert_eq!(c.count, (n * n) as u64);
        let w = inst.witness.unwrap();
        let out = cartesian_test(&inst.system[0], &w.g, &w.k).unwrap();
        prop_assert!(out.decomposition.witness().is_some());
        // Points of Z(G) and Z(K) beyond the instance also satisfy F.
        let more_p = graph_points("P", &spec.gamma, Var::X, n + 15);
        let more_q = graph_points("Q", &spec.kappa, Var::S, n + 15);
        let c = count_intersections(&inst.system, &more_p, &more_q, &CountOptions::default()).unwrap();
        prop_assert_eq!(c.count, ((n + 15) * (n + 15)) as u64);
    }

    #[test]
    fn partition_parts_avoid_kst(seed in any::<u64>(), m in 2usize..4) {
        let mut r = rng(seed);
        let f = poly(&mut r, VarSet::ALL, 2, 4);
        let p = random_points(&mut r, "P", 14);
        let q = random_points(&mut r, "Q", 14);
        let part = partition_rich(&f, &p, &q, m).unwrap();
        prop_assert!(part.verified);
        let g = incidence_graph(&f, &p, &q, false).unwrap();
        for pi in &part.p_parts {
            for qj in &part.q_parts {
                let sub = g.subgraph(pi, qj);
                prop_assert!(kst_free_check(&sub, 2, part.tau, DEFAULT_BUDGET).unwrap().is_none());
                prop_assert!(kst_free_check(&sub, part.tau, 2, DEFAULT_BUDGET).unwrap().is_none());
            }
        }
    }
}
