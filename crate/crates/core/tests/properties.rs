use proptest::prelude::*;

use stci::exec::Execution;
use stci::field::{Field, PrimeField, Rationals};
use stci::groebner::{self, GbConfig, IdealGens};
use stci::monomial_curve::{binomial_in_toric, Binomial, MonomialParametrization};
use stci::polyring::{Monomial, MonomialOrder, Polynomial, Ring, RingRef, VariableSet};
use stci::random;
use stci::schmitt_vogel::SvSystem;
use stci::scroll::BarredMatrix;
use stci::varieties;

const N: usize = 3;

fn ring<F: Field>(field: F, order: MonomialOrder) -> RingRef<F> {
    Ring::new(field, VariableSet::indexed("X", N).unwrap(), order).unwrap()
}

fn raw_terms(max_terms: usize, max_exp: u32) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    prop::collection::vec((-9i64..=9, prop::collection::vec(0..=max_exp, N)), 0..=max_terms)
}

fn poly<F: Field>(r: &RingRef<F>, raw: &[(i64, Vec<u32>)]) -> Polynomial<F> {
    let terms = raw
        .iter()
        .map(|(c, e)| (r.field().from_i64(*c), Monomial::new(e).unwrap()))
        .collect();
    Polynomial::from_terms(r, terms).unwrap()
}

fn orders() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::DegRevLex),
        Just(MonomialOrder::elimination(vec![0])),
        Just(MonomialOrder::elimination(vec![1, 2])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in raw_terms(5, 3), b in raw_terms(5, 3), c in raw_terms(5, 3), order in orders()) {
        let r = ring(Rationals, order);
        let (a, b, c) = (poly(&r, &a), poly(&r, &b), poly(&r, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &r_one(&r), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in raw_terms(5, 3), b in raw_terms(5, 3), x in prop::collection::vec(0u64..97, N)) {
        let f = PrimeField::new(97).unwrap();
        let r = ring(f, MonomialOrder::DegRevLex);
        let (a, b) = (poly(&r, &a), poly(&r, &b));
        let pt: Vec<u64> = x;
        let ea = a.eval(&pt).unwrap();
        let eb = b.eval(&pt).unwrap();
        prop_assert_eq!((&a * &b).eval(&pt).unwrap(), f.mul(&ea, &eb));
        prop_assert_eq!((&a + &b).eval(&pt).unwrap(), f.add(&ea, &eb));
    }

    #[test]
    fn orders_are_monomial_orders(a in prop::collection::vec(0u32..4, N), b in prop::collection::vec(0u32..4, N), c in prop::collection::vec(0u32..4, N), order in orders()) {
        let (a, b, c) = (Monomial::new(&a).unwrap(), Monomial::new(&b).unwrap(), Monomial::new(&c).unwrap());
        let before = order.compare(&a, &b);
        prop_assert_eq!(order.compare(&a.mul(&c).unwrap(), &b.mul(&c).unwrap()), before);
        prop_assert_ne!(order.compare(&a.mul(&c).unwrap(), &a), std::cmp::Ordering::Less);
        prop_assert_eq!(order.compare(&b, &a), before.reverse());
    }

    #[test]
    fn normalization_is_idempotent(a in raw_terms(8, 3)) {
        let r = ring(Rationals, MonomialOrder::DegRevLex);
        let p = poly(&r, &a);
        prop_assert!(p.is_normalized());
        prop_assert_eq!(p.normalized(), p.clone());
        let mut rev = a.clone();
        rev.reverse();
        prop_assert_eq!(poly(&r, &rev), p);
    }

    #[test]
    fn field_transfer_commutes(a in raw_terms(5, 3), b in raw_terms(5, 3)) {
        let q = ring(Rationals, MonomialOrder::DegRevLex);
        let f = PrimeField::new(101).unwrap();
        let g = q.with_field(f);
        let (a, b) = (poly(&q, &a), poly(&q, &b));
        let prod = (&a * &b).to_field(&g).unwrap();
        prop_assert_eq!(prod, &a.to_field(&g).unwrap() * &b.to_field(&g).unwrap());
    }
}

fn r_one<F: Field>(r: &RingRef<F>) -> Polynomial<F> {
    Polynomial::from_terms(r, vec![(r.field().one(), Monomial::one(r.nvars()))]).unwrap()
}

/// Roomier than the defaults: Lex bases of small random ideals can pass
/// through high-degree intermediates.
fn roomy() -> GbConfig {
    GbConfig {
        max_degree: 400,
        ..GbConfig::default()
    }
}

/// A cap is a legitimate outcome; any other error is not.
fn answered<T>(r: stci::Result<T>) -> Result<Option<T>, TestCaseError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_cap() => Ok(None),
        Err(e) => Err(TestCaseError::fail(e.to_string())),
    }
}

fn small_ideal() -> impl Strategy<Value = Vec<Vec<(i64, Vec<u32>)>>> {
    prop::collection::vec(raw_terms(3, 2), 1..=3)
}

fn ideal<F: Field>(r: &RingRef<F>, gens: &[Vec<(i64, Vec<u32>)>]) -> Option<IdealGens<F>> {
    let polys: Vec<_> = gens.iter().map(|g| poly(r, g)).filter(|p| !p.is_zero()).collect();
    (!polys.is_empty()).then(|| IdealGens::new(r, "I", polys).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn groebner_bases_pass_the_audit(gens in small_ideal(), order in orders()) {
        let r = ring(PrimeField::new(32003).unwrap(), order);
        if let Some(i) = ideal(&r, &gens) {
            let Some(gb) = answered(groebner::groebner_basis(&i, &roomy()))? else { return Ok(()) };
            prop_assert!(gb.audit().is_ok(), "{:?}", gb.audit());
            for g in i.gens() {
                prop_assert!(gb.contains(g).unwrap());
            }
        }
    }

    #[test]
    fn combinations_are_members(gens in small_ideal(), seed in any::<u64>()) {
        let r = ring(Rationals, MonomialOrder::DegRevLex);
        if let Some(i) = ideal(&r, &gens) {
            let f = random::combination(&mut random::rng(seed), &i, 2).unwrap();
            prop_assert!(groebner::ideal_contains(&i, &f, &GbConfig::default()).unwrap());
        }
    }

    #[test]
    fn orders_agree_on_membership(gens in small_ideal(), f in raw_terms(3, 2)) {
        let cfg = roomy();
        let f32003 = PrimeField::new(32003).unwrap();
        let mut answers = Vec::new();
        for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
            let r = ring(f32003, order);
            let Some(i) = ideal(&r, &gens) else { return Ok(()) };
            let f = poly(&r, &f);
            let Some(member) = answered(groebner::ideal_contains(&i, &f, &cfg))? else { return Ok(()) };
            let Some(radical) = answered(groebner::radical_contains(&i, &f, &cfg))? else { return Ok(()) };
            answers.push((member, radical));
        }
        prop_assert_eq!(answers[0], answers[1]);
        prop_assert!(!answers[0].0 || answers[0].1);
    }

    #[test]
    fn radical_membership_matches_points(gens in small_ideal(), f in raw_terms(3, 2)) {
        // f in sqrt(I) over GF(p) forces f to vanish on V(I) in GF(p)^N
        let fld = PrimeField::new(5).unwrap();
        let r = ring(fld, MonomialOrder::DegRevLex);
        let Some(i) = ideal(&r, &gens) else { return Ok(()) };
        let f = poly(&r, &f);
        if groebner::radical_contains(&i, &f, &GbConfig::default()).unwrap() {
            let pts = varieties::enumerate_points(&i, 5, 1000, Execution::Sequential).unwrap();
            for x in pts.points() {
                prop_assert_eq!(f.eval(x).unwrap(), 0);
            }
        }
    }

    #[test]
    fn adding_generators_never_adds_points(gens in small_ideal(), extra in raw_terms(3, 2)) {
        let r = ring(Rationals, MonomialOrder::DegRevLex);
        let Some(i) = ideal(&r, &gens) else { return Ok(()) };
        let e = poly(&r, &extra);
        prop_assume!(!e.is_zero());
        let bigger = i.union(&IdealGens::new(&r, "e", vec![e]).unwrap(), "I+e").unwrap();
        let small = varieties::enumerate_points(&i, 3, 1000, Execution::Parallel).unwrap();
        let big = varieties::enumerate_points(&bigger, 3, 1000, Execution::Parallel).unwrap();
        prop_assert!(big.points().iter().all(|x| small.contains(x)));
        prop_assert!(big.reverify(&bigger).unwrap());
    }
}

/// Layers of distinct monomials in four variables.
fn monomial_layers() -> impl Strategy<Value = Vec<Vec<Vec<u32>>>> {
    (
        prop::collection::vec(0u32..=2, 4),
        prop::collection::vec(prop::collection::vec(prop::collection::vec(0u32..=2, 4), 1..=3), 0..=2),
    )
        .prop_map(|(first, rest)| {
            let mut layers = vec![vec![first]];
            layers.extend(rest);
            layers
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verified_monomial_systems_satisfy_the_claim(layers in monomial_layers()) {
        let r = Ring::new(Rationals, VariableSet::indexed("X", 4).unwrap(), MonomialOrder::DegRevLex).unwrap();
        let mut seen: Vec<Vec<u32>> = Vec::new();
        let mut polys = Vec::new();
        for layer in &layers {
            let mut l = Vec::new();
            for e in layer {
                if e.iter().all(|&x| x == 0) || seen.contains(e) {
                    continue;
                }
                seen.push(e.clone());
                l.push(Polynomial::from_terms(&r, vec![(r.field().one(), Monomial::new(e).unwrap())]).unwrap());
            }
            if !l.is_empty() {
                polys.push(l);
            }
        }
        prop_assume!(!polys.is_empty() && polys[0].len() == 1);
        let sys = SvSystem::new(&r, polys).unwrap();
        let cfg = GbConfig::default();
        if sys.verify_conditions(16, &cfg).unwrap().passed() {
            prop_assert!(sys.check_radical_claim(&cfg).unwrap().passed());
        }
    }

    #[test]
    fn layer_sums_ignore_element_order(layers in monomial_layers()) {
        let r = Ring::new(Rationals, VariableSet::indexed("X", 4).unwrap(), MonomialOrder::DegRevLex).unwrap();
        let mut seen = Vec::new();
        let mut polys: Vec<Vec<Polynomial<Rationals>>> = Vec::new();
        for layer in &layers {
            let l: Vec<_> = layer
                .iter()
                .filter(|e| !seen.contains(*e) && { seen.push((*e).clone()); true })
                .map(|e| Polynomial::from_terms(&r, vec![(r.field().from_i64(2), Monomial::new(e).unwrap())]).unwrap())
                .collect();
            if !l.is_empty() {
                polys.push(l);
            }
        }
        prop_assume!(!polys.is_empty());
        let forward = SvSystem::new(&r, polys.clone()).unwrap().build_sums().unwrap();
        for l in &mut polys {
            l.reverse();
        }
        let backward = SvSystem::new(&r, polys).unwrap().build_sums().unwrap();
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn random_matrices_round_trip(seed in any::<u64>()) {
        let m = random::simple_barred_matrix(&mut random::rng(seed), 4, 3).unwrap();
        let back = BarredMatrix::from_json(&m.to_json()).unwrap();
        let (j1, j2) = (m.ideal_j().unwrap(), back.ideal_j().unwrap());
        prop_assert_eq!(j1.gens(), j2.gens());
        prop_assert_eq!(m.stci_system().unwrap().len(), m.expected_height());
    }

    #[test]
    fn toric_membership_ignores_sides(rows in prop::collection::vec(prop::collection::vec(0u64..600, 2), 3), a in prop::collection::vec(0u64..50, 3), b in prop::collection::vec(0u64..50, 3)) {
        prop_assume!(rows.iter().all(|r| r.iter().any(|&x| x > 0)));
        let big = |v: &[u64]| v.iter().map(|&x| x.into()).collect::<Vec<num_bigint::BigUint>>();
        let p = MonomialParametrization::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec!["u".into(), "v".into()],
            rows.iter().map(|r| big(r)).collect(),
        ).unwrap();
        let fwd = Binomial { plus: big(&a), minus: big(&b) };
        let back = Binomial { plus: big(&b), minus: big(&a) };
        prop_assert_eq!(binomial_in_toric(&p, &fwd).unwrap(), binomial_in_toric(&p, &back).unwrap());
        let same = Binomial { plus: big(&a), minus: big(&a) };
        prop_assert!(binomial_in_toric(&p, &same).unwrap());
    }
}
