use std::sync::Arc;

use fixedbitset::FixedBitSet;
use proptest::prelude::*;
use slspec::arith::divisors;
use slspec::instance::{parse_instance, print_instance};
use slspec::module::{build_module, is_submodule_set, FiniteModule};
use slspec::naive::{recheck, Recheck};
use slspec::ring::FiniteRing;
use slspec::spectrum::ModuleAnalysis;
use slspec::theorems::{select, verify_all, Fact, PointSet, Status, VerifyConfig, VerifyContext, Witness};
use slspec::variety::{build_space, SpaceKind};

fn ring_strategy() -> impl Strategy<Value = FiniteRing> {
    prop::collection::vec(2u64..=24, 1..=2).prop_map(|m| FiniteRing::new(m).unwrap())
}

/// Modules with one or two nonzero cyclic factors and at most 48 elements.
fn module_strategy() -> impl Strategy<Value = FiniteModule> {
    (prop::collection::vec(2u64..=12, 1..=2), prop::collection::vec(prop::collection::vec(any::<usize>(), 2), 1..=2))
        .prop_filter_map("zero factor or too large", |(moduli, picks)| {
            let ring = FiniteRing::new(moduli.clone()).ok()?;
            let mut factors = Vec::new();
            for pick in &picks {
                let gens: Vec<u64> = moduli.iter().zip(pick).map(|(&n, &k)| {
                    let ds = divisors(n);
                    ds[k % ds.len()]
                }).collect();
                if gens.iter().all(|&g| g == 1) {
                    return None;
                }
                factors.push(ring.ideal(&gens).ok()?);
            }
            let m = build_module(&ring, &factors).ok()?;
            (m.order() <= 48).then_some(m)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(ring in ring_strategy(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let n = ring.order();
        let (a, b, c) = (ring.element_at(a % n), ring.element_at(b % n), ring.element_at(c % n));
        prop_assert_eq!(ring.mul(&a, &b), ring.mul(&b, &a));
        prop_assert_eq!(ring.add(&a, &b), ring.add(&b, &a));
        prop_assert_eq!(ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c)));
        prop_assert_eq!(ring.mul(&a, &ring.add(&b, &c)), ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c)));
        prop_assert_eq!(ring.mul(&a, &ring.one()), a.clone());
        prop_assert_eq!(ring.add(&a, &ring.neg(&a)), ring.zero());
        prop_assert_eq!(ring.index_of(&a) < n, true);
    }

    #[test]
    fn ideal_laws(ring in ring_strategy()) {
        let ideals = ring.ideals();
        for i in &ideals {
            prop_assert_eq!(i.radical().radical(), i.radical());
            prop_assert!(i.is_subset(&i.radical()));
            if i.is_prime() {
                prop_assert!(i.is_primary());
                prop_assert_eq!(i.radical(), i.clone());
            }
            for r in i.elements() {
                for s in ring.elements() {
                    prop_assert!(i.contains(&ring.mul(&r, &s)));
                }
            }
        }
        for i in &ideals {
            for j in &ideals {
                let (sum, meet) = (i.sum(j).unwrap(), i.intersection(j).unwrap());
                prop_assert!(i.is_subset(&sum) && j.is_subset(&sum));
                prop_assert!(meet.is_subset(i) && meet.is_subset(j));
                prop_assert_eq!(sum.order() * meet.order(), i.order() * j.order());
            }
        }
    }

    #[test]
    fn parse_print_round_trip(m in module_strategy(), spaces in prop::collection::vec(0usize..3, 64)) {
        let text = print_instance(&m);
        let back = parse_instance(&text, false).unwrap().module;
        prop_assert_eq!(print_instance(&back), text.clone());
        prop_assert_eq!(&back, &m);
        // whitespace anywhere between characters is ignored
        let spaced: String = text.chars().zip(spaces.iter().cycle()).map(|(c, &k)| format!("{c}{}", " ".repeat(k))).collect();
        prop_assert_eq!(parse_instance(&spaced, false).unwrap().module, m);
    }

    #[test]
    fn lattice_is_a_lattice(m in module_strategy()) {
        let a = ModuleAnalysis::new(&m).unwrap();
        let l = a.lattice();
        for x in l.ids() {
            prop_assert!(is_submodule_set(&m, l.set(x)));
            for y in l.ids() {
                let (s, i) = (l.sum(x, y), l.intersection(x, y));
                prop_assert!(l.is_subset(x, s) && l.is_subset(y, s));
                prop_assert!(l.is_subset(i, x) && l.is_subset(i, y));
                let mut meet = l.set(x).clone();
                meet.intersect_with(l.set(y));
                prop_assert_eq!(l.set(i), &meet);
            }
        }
    }

    #[test]
    fn spectra_and_fibers(m in module_strategy()) {
        let a = ModuleAnalysis::new(&m).unwrap();
        for &s in a.spec_s() {
            prop_assert!(a.in_spec_l(s));
            prop_assert!(a.ann(s).is_prime());
        }
        // the fibers over primes of R partition Spec^L
        let mut seen = vec![0usize; a.spec_l().len()];
        for p in slspec::ring::ring_spec(m.ring()) {
            for id in a.fiber(&p).unwrap() {
                seen[a.spec_l_position(id).unwrap()] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn closure_operator(m in module_strategy(), picks in prop::collection::vec(any::<usize>(), 0..6)) {
        let a = ModuleAnalysis::new(&m).unwrap();
        let sl = build_space(&a, SpaceKind::Sl).unwrap();
        let n = sl.len();
        let mut y = FixedBitSet::with_capacity(n);
        y.extend(picks.iter().map(|k| k % n));
        let cl = sl.closure(&y);
        prop_assert!(y.is_subset(&cl));
        prop_assert_eq!(sl.closure(&cl), cl.clone());
        prop_assert!(sl.is_closed(&cl));
        prop_assert_eq!(&cl, &a.nu_s(a.socle_sum(&y)));
        for c in sl.closed_sets() {
            for d in sl.closed_sets() {
                let mut u = c.clone();
                u.union_with(d);
                prop_assert!(sl.is_closed(&u));
                let mut i = c.clone();
                i.intersect_with(d);
                prop_assert!(sl.is_closed(&i));
            }
        }
    }

    #[test]
    fn closure_witness_rechecks(m in module_strategy(), pick in any::<usize>()) {
        let a = ModuleAnalysis::new(&m).unwrap();
        let k = pick % a.spec_l().len();
        let point = a.submodule(a.spec_l()[k]);
        let closure = PointSet::Closure { of: vec![point.clone()] };
        let true_fact = Fact::SetsEqual { left: closure.clone(), right: PointSet::NuS { of: point.clone() }, holds: true };
        prop_assert_eq!(recheck(&Witness::new("true", vec![true_fact]), &m).unwrap(), Recheck::Confirmed);
        let false_fact = Fact::SetsEqual { left: closure, right: PointSet::NuS { of: point }, holds: false };
        prop_assert_eq!(recheck(&Witness::new("false", vec![false_fact]), &m).unwrap(), Recheck::Refuted(vec![0]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn registry_never_fails_and_is_deterministic(m in module_strategy()) {
        let a = Arc::new(ModuleAnalysis::new(&m).unwrap());
        let entries = select(&[]).unwrap();
        let ctx = VerifyContext::new(a.clone(), VerifyConfig::default()).unwrap();
        let first = verify_all(&ctx, &entries).unwrap();
        for r in &first {
            prop_assert_ne!(r.status, Status::Fail, "{} on {}: {:?}", r.result_id, m, r.witness);
            if r.status == Status::SkippedHypothesis {
                let h = r.skipped.as_ref().unwrap();
                prop_assert!(r.hypotheses.iter().any(|x| &x.name == h && !x.holds));
            }
        }
        let again = verify_all(&VerifyContext::new(a, VerifyConfig::default()).unwrap(), &entries).unwrap();
        prop_assert_eq!(first, again);
    }
}
