//! Closures, irreducibility, components and separation axioms.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::ring::{prime_set_intersection, Ideal};
use crate::variety::SpaceKind;

use super::context::VerifyContext;
use super::witness::{Fact, PointSet, PrimeSet, Witness};
use super::Check;

fn points_set(ctx: &VerifyContext, y: &FixedBitSet) -> PointSet {
    PointSet::Points { points: ctx.points(y) }
}

fn singleton(n: usize, k: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert(k);
    s
}

/// Position of M itself in Spec^L(M), if it is a point.
fn whole_position(ctx: &VerifyContext) -> Option<usize> {
    ctx.analysis().spec_l_position(ctx.analysis().lattice().whole())
}

/// Ann_R(soc(K)) for the Spec^L point at position `k`.
fn socle_prime(ctx: &VerifyContext, k: usize) -> &Ideal {
    let a = ctx.analysis();
    a.ann(a.socle(a.spec_l()[k]))
}

fn socle_prime_facts(ctx: &VerifyContext, k: usize) -> Vec<Fact> {
    let a = ctx.analysis();
    let soc = a.socle(a.spec_l()[k]);
    vec![
        Fact::Socle { of: ctx.point(k), socle: ctx.sub(soc) },
        Fact::Annihilator { of: ctx.sub(soc), ideal: a.ann(soc).clone() },
    ]
}

/// Minimal among the primes of R containing Ann_R(M), i.e. minimal in R̄.
fn is_minimal_prime(ctx: &VerifyContext, p: &Ideal) -> bool {
    ctx.base_primes().contains(p) && !ctx.base_primes().iter().any(|q| q != p && q.is_subset(p))
}

pub fn p4_1(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let a = ctx.analysis();
    let sl = ctx.sl();
    let whole = whole_position(ctx);
    for y in ctx.subsets("P4.1 subsets", check) {
        let h = a.socle_sum(&y);
        let closure = sl.closure(&y);
        let formula = ctx.nu(h);
        let h_fact = || Fact::SocleSum { of: ctx.points(&y), sum: ctx.sub(h) };
        if closure != *formula {
            check.expect(false, || {
                Witness::new(
                    "Cl(Y) = nu_s(H(Y))",
                    vec![
                        h_fact(),
                        Fact::SetsEqual { left: PointSet::Closure { of: ctx.points(&y) }, right: PointSet::NuS { of: ctx.sub(h) }, holds: false },
                    ],
                )
            });
            break;
        }
        if sl.is_closed(&y) != (*formula == y) {
            check.expect(false, || {
                Witness::new(
                    "Y closed ⇔ nu_s(H(Y)) = Y",
                    vec![
                        h_fact(),
                        Fact::Closed { space: SpaceKind::Sl, set: points_set(ctx, &y), holds: sl.is_closed(&y) },
                        Fact::SetsEqual { left: PointSet::NuS { of: ctx.sub(h) }, right: points_set(ctx, &y), holds: *formula == y },
                    ],
                )
            });
            break;
        }
        if let Some(w) = whole {
            if y.contains(w) && closure.count_ones(..) != ctx.n_l() {
                check.expect(false, || {
                    Witness::new(
                        "M ∈ Y makes Y dense",
                        vec![
                            Fact::SetsEqual { left: PointSet::Closure { of: ctx.points(&y) }, right: PointSet::SpecL, holds: false },
                            ctx.member(w, points_set(ctx, &y), true),
                        ],
                    )
                });
                break;
            }
        }
    }
    Ok(())
}

pub fn t4_2(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let a = ctx.analysis();
    let sl = ctx.sl();
    for (k, &id) in a.spec_l().iter().enumerate() {
        let nu = ctx.nu(id);
        let nu_set = || PointSet::NuS { of: ctx.point(k) };
        if sl.point_closure(k) != nu {
            check.expect(false, || {
                Witness::new(
                    "Cl({K}) = nu_s(K)",
                    vec![Fact::SetsEqual { left: PointSet::Closure { of: vec![ctx.point(k)] }, right: nu_set(), holds: false }],
                )
            });
            return Ok(());
        }
        if !sl.is_closed(nu) || !sl.is_irreducible(nu) {
            check.expect(false, || {
                Witness::new(
                    "nu_s(K) is irreducible and closed",
                    vec![
                        Fact::Closed { space: SpaceKind::Sl, set: nu_set(), holds: sl.is_closed(nu) },
                        Fact::Irreducible { set: nu_set(), holds: sl.is_irreducible(nu) },
                    ],
                )
            });
            return Ok(());
        }
    }
    if let Some(w) = whole_position(ctx) {
        let mut full = FixedBitSet::with_capacity(ctx.n_l());
        full.insert_range(..);
        check.expect(sl.is_irreducible(&full), || {
            Witness::new(
                "M ∈ Spec^L(M) makes Spec^L(M) irreducible",
                vec![ctx.member(w, PointSet::SpecL, true), Fact::Irreducible { set: PointSet::SpecL, holds: false }],
            )
        });
    }
    Ok(())
}

pub fn c4_3(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let a = ctx.analysis();
    let sl = ctx.sl();
    for y in ctx.subsets("C4.3 subsets", check) {
        let h = a.socle_sum(&y);
        let p = a.rad_ann(h);
        if !p.is_prime() {
            continue;
        }
        let fiber = ctx.fiber(p);
        if fiber.is_clear() || sl.is_irreducible(&y) {
            continue;
        }
        let k = fiber.ones().next().expect("nonempty fiber");
        check.expect(false, || {
            Witness::new(
                "√Ann_R(H(Y)) = p prime with Spec^L_p(M) nonempty makes Y irreducible",
                vec![
                    Fact::SocleSum { of: ctx.points(&y), sum: ctx.sub(h) },
                    Fact::RadicalAnnihilator { of: ctx.sub(h), ideal: p.clone() },
                    Fact::Prime { ideal: p.clone(), holds: true },
                    ctx.member(k, PointSet::Fiber { prime: p.clone() }, true),
                    Fact::Irreducible { set: points_set(ctx, &y), holds: false },
                ],
            )
        });
        break;
    }
    Ok(())
}

pub fn t4_4(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let a = ctx.analysis();
    let sl = ctx.sl();
    let ring = ctx.module().ring();
    let ring_top = ctx.ring_top();
    for y in ctx.subsets("T4.4 subsets", check) {
        let h = a.socle_sum(&y);
        let irreducible = sl.is_irreducible(&y);
        // (1)
        if a.is_secondary(h) && !irreducible {
            check.expect(false, || {
                Witness::new(
                    "H(Y) secondary makes Y irreducible",
                    vec![
                        Fact::SocleSum { of: ctx.points(&y), sum: ctx.sub(h) },
                        Fact::Secondary { of: ctx.sub(h), holds: true },
                        Fact::Irreducible { set: points_set(ctx, &y), holds: false },
                    ],
                )
            });
            break;
        }
        if !irreducible {
            continue;
        }
        // (2)
        let upsilon: BTreeSet<Ideal> = y.ones().map(|k| socle_prime(ctx, k).clone()).collect();
        let primes: Vec<Ideal> = upsilon.iter().cloned().collect();
        let xi = prime_set_intersection(ring, &primes)?;
        let mut positions = FixedBitSet::with_capacity(ctx.ring_primes().len());
        positions.extend((0..ctx.ring_primes().len()).filter(|&k| upsilon.contains(&ctx.ring_primes()[k])));
        let closed = ring_top.is_closed(&positions) && positions.count_ones(..) == upsilon.len();
        let ok = closed && ring_top.is_irreducible(&positions) && &xi == a.ann(h) && xi.is_prime();
        if !ok {
            check.expect(false, || {
                let mut facts = vec![
                    Fact::Irreducible { set: points_set(ctx, &y), holds: true },
                    Fact::SocleSum { of: ctx.points(&y), sum: ctx.sub(h) },
                    Fact::Annihilator { of: ctx.sub(h), ideal: a.ann(h).clone() },
                    Fact::Prime { ideal: a.ann(h).clone(), holds: a.ann(h).is_prime() },
                ];
                for k in y.ones() {
                    facts.extend(socle_prime_facts(ctx, k));
                }
                facts.push(Fact::PrimeClosed { set: PrimeSet::Primes { primes }, holds: closed });
                Witness::new("Y irreducible makes {Ann_R(soc K)} irreducible closed with ξ = Ann_R(H(Y)) prime", facts)
            });
            break;
        }
    }
    Ok(())
}

pub fn t4_5(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    if !check.require("phi-surjective", ctx.phi_report().surjective) {
        return Ok(());
    }
    let a = ctx.analysis();
    let sl = ctx.sl();
    let nus: BTreeMap<&FixedBitSet, usize> = a.spec_l().iter().enumerate().map(|(k, &id)| (ctx.nu(id), k)).collect();
    // only closed sets can satisfy either side, so the closed family covers
    // every subset Y
    for c in sl.closed_sets() {
        let irreducible = sl.is_irreducible(c);
        let of_point = nus.get(c).copied();
        if irreducible != of_point.is_some() {
            check.expect(false, || {
                let mut facts = vec![
                    Fact::PhiSurjective { holds: true },
                    Fact::Closed { space: SpaceKind::Sl, set: points_set(ctx, c), holds: true },
                    Fact::Irreducible { set: points_set(ctx, c), holds: irreducible },
                ];
                if let Some(k) = of_point {
                    facts.push(Fact::SetsEqual { left: PointSet::NuS { of: ctx.point(k) }, right: points_set(ctx, c), holds: true });
                }
                Witness::new("Y irreducible closed ⇔ Y = nu_s(K) for some K ∈ Spec^L(M)", facts)
            });
            return Ok(());
        }
        if irreducible && sl.generic_points(c)?.is_empty() {
            check.expect(false, || {
                Witness::new(
                    "irreducible closed sets have a generic point",
                    vec![Fact::Irreducible { set: points_set(ctx, c), holds: true }],
                )
            });
            return Ok(());
        }
    }
    Ok(())
}

pub fn t4_6(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let a = ctx.analysis();
    let surjective = check.hypothesis("phi-surjective", ctx.phi_report().surjective);
    let components: BTreeSet<FixedBitSet> = ctx.sl().irreducible_components().into_iter().collect();
    for (k, &id) in a.spec_l().iter().enumerate() {
        let p = socle_prime(ctx, k);
        let minimal = is_minimal_prime(ctx, p);
        let component = components.contains(ctx.nu(id));
        if (minimal && !component) || (surjective && component && !minimal) {
            check.expect(false, || {
                let mut facts = socle_prime_facts(ctx, k);
                facts.push(Fact::MinimalPrime { ideal: p.clone(), holds: minimal });
                facts.push(Fact::Component { set: PointSet::NuS { of: ctx.point(k) }, holds: component });
                if surjective {
                    facts.push(Fact::PhiSurjective { holds: true });
                }
                Witness::new("Ann_R(soc K) minimal over Ann_R(M) ⇔ nu_s(K) an irreducible component", facts)
            });
            break;
        }
    }
    Ok(())
}

pub fn c4_7(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    if !check.require("phi-surjective", ctx.phi_report().surjective) {
        return Ok(());
    }
    let a = ctx.analysis();
    let components = ctx.sl().irreducible_components();
    let mut image: BTreeMap<Ideal, usize> = BTreeMap::new();
    for (c, comp) in components.iter().enumerate() {
        let ks: Vec<usize> = (0..ctx.n_l()).filter(|&k| ctx.nu(a.spec_l()[k]) == comp).collect();
        let primes: BTreeSet<&Ideal> = ks.iter().map(|&k| socle_prime(ctx, k)).collect();
        if primes.len() != 1 {
            check.expect(false, || {
                let mut facts = vec![Fact::PhiSurjective { holds: true }, Fact::Component { set: points_set(ctx, comp), holds: true }];
                for &k in ks.iter().take(2) {
                    facts.push(Fact::SetsEqual { left: PointSet::NuS { of: ctx.point(k) }, right: points_set(ctx, comp), holds: true });
                    facts.extend(socle_prime_facts(ctx, k));
                }
                Witness::new("each irreducible component is nu_s(K) with a well-defined Ann_R(soc K)", facts)
            });
            return Ok(());
        }
        let p = (*primes.iter().next().expect("one prime")).clone();
        if let Some(&other) = image.get(&p) {
            check.expect(false, || {
                Witness::new(
                    "distinct components give distinct minimal primes",
                    vec![
                        Fact::Component { set: points_set(ctx, &components[other]), holds: true },
                        Fact::Component { set: points_set(ctx, comp), holds: true },
                        Fact::PrimeSetsEqual {
                            left: PrimeSet::PhiImage { of: points_set(ctx, &components[other]) },
                            right: PrimeSet::PhiImage { of: points_set(ctx, comp) },
                            holds: true,
                        },
                    ],
                )
            });
            return Ok(());
        }
        image.insert(p, c);
    }
    for p in ctx.base_primes() {
        let minimal = is_minimal_prime(ctx, p);
        if minimal != image.contains_key(p) {
            check.expect(false, || {
                Witness::new(
                    "components correspond to the minimal primes of R̄",
                    vec![
                        Fact::PhiSurjective { holds: true },
                        Fact::MinimalPrime { ideal: p.clone(), holds: minimal },
                    ],
                )
            });
            return Ok(());
        }
    }
    Ok(())
}

pub fn c4_8(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    if !check.require("phi-surjective", ctx.phi_report().surjective) || !check.require("spec-l-nonempty", ctx.n_l() > 0) {
        return Ok(());
    }
    let a = ctx.analysis();
    let sl = ctx.sl();
    let set_a: Vec<usize> = (0..ctx.n_l()).filter(|&k| is_minimal_prime(ctx, socle_prime(ctx, k))).collect();
    let claim = "covers by the nu_s(K), V(Ann_R(K)) and V^s(K) with Ann_R(soc K) minimal";
    // (1)
    if set_a.is_empty() {
        check.expect(false, || {
            let mut facts = vec![Fact::PhiSurjective { holds: true }];
            for k in 0..ctx.n_l() {
                facts.extend(socle_prime_facts(ctx, k));
            }
            Witness::new("A is nonempty", facts)
        });
        return Ok(());
    }
    // (2)
    let from_a: BTreeSet<FixedBitSet> = set_a.iter().map(|&k| ctx.nu(a.spec_l()[k]).clone()).collect();
    let components: BTreeSet<FixedBitSet> = sl.irreducible_components().into_iter().collect();
    if from_a != components {
        check.expect(false, || {
            let facts = match set_a.iter().find(|&&k| !components.contains(ctx.nu(a.spec_l()[k]))) {
                Some(&k) => {
                    let mut f = socle_prime_facts(ctx, k);
                    f.push(Fact::MinimalPrime { ideal: socle_prime(ctx, k).clone(), holds: true });
                    f.push(Fact::Component { set: PointSet::NuS { of: ctx.point(k) }, holds: false });
                    f
                }
                None => {
                    let c = components.iter().find(|c| !from_a.contains(*c)).expect("sets differ");
                    vec![Fact::Component { set: points_set(ctx, c), holds: true }]
                }
            };
            Witness::new(claim, facts)
        });
        return Ok(());
    }
    // (3)
    let mut union = FixedBitSet::with_capacity(ctx.n_l());
    for &k in &set_a {
        union.union_with(ctx.nu(a.spec_l()[k]));
    }
    if let Some(missing) = (0..ctx.n_l()).find(|&k| !union.contains(k)) {
        check.expect(false, || {
            let facts = set_a.iter().map(|&k| ctx.member(missing, PointSet::NuS { of: ctx.point(k) }, false)).collect();
            Witness::new("Spec^L(M) is the union of nu_s(K), K ∈ A", facts)
        });
        return Ok(());
    }
    // (4)
    let mut union = FixedBitSet::with_capacity(ctx.base_primes().len());
    for &k in &set_a {
        union.union_with(&ctx.base_v(a.ann(a.spec_l()[k])));
    }
    if let Some(missing) = (0..ctx.base_primes().len()).find(|&j| !union.contains(j)) {
        check.expect(false, || {
            let p = ctx.base_primes()[missing].clone();
            let mut facts = Vec::new();
            for &k in &set_a {
                let ann = a.ann(a.spec_l()[k]).clone();
                facts.push(Fact::Annihilator { of: ctx.point(k), ideal: ann.clone() });
                facts.push(Fact::PrimeMember { prime: p.clone(), set: PrimeSet::VBar { ideal: ann }, holds: false });
            }
            Witness::new("Spec(R̄) is the union of V(Ann_R(K)), K ∈ A", facts)
        });
        return Ok(());
    }
    // (5)
    let mut union = FixedBitSet::with_capacity(ctx.n_s());
    for &k in &set_a {
        union.union_with(ctx.v(a.spec_l()[k]));
    }
    if let Some(missing) = (0..ctx.n_s()).find(|&j| !union.contains(j)) {
        check.expect(false, || {
            let facts = set_a.iter().map(|&k| ctx.s_member(missing, PointSet::VS { of: ctx.point(k) }, false)).collect();
            Witness::new("Spec^s(M) is the union of V^s(K), K ∈ A", facts)
        });
        return Ok(());
    }
    // (6)
    if let Some(w) = whole_position(ctx) {
        let mut full = FixedBitSet::with_capacity(ctx.n_l());
        full.insert_range(..);
        let only_whole = components.len() == 1 && components.contains(&full);
        check.expect(only_whole, || {
            Witness::new(
                "M ∈ Spec^L(M) makes Spec^L(M) its only component",
                vec![ctx.member(w, PointSet::SpecL, true), Fact::Component { set: PointSet::SpecL, holds: false }],
            )
        });
    }
    Ok(())
}

pub fn t4_9(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let t0 = ctx.sl().is_t0();
    let fibers = ctx.fibers_at_most_one().is_ok();
    check.expect(t0 == fibers, || {
        Witness::new("T0 ⇔ fibers have at most one point", vec![Fact::T0 { holds: t0 }, Fact::FibersAtMostOne { holds: fibers }])
    });
    Ok(())
}

pub fn c4_10(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let t0 = ctx.sl().is_t0();
    let (separates, fibers, injective, mut facts) = super::maps::injectivity_facts(ctx);
    check.expect(t0 == fibers && fibers == separates && separates == injective, || {
        facts.insert(0, Fact::T0 { holds: t0 });
        Witness::new("T0 ⇔ fibers at most one point ⇔ nu_s separates points ⇔ phi injective", facts)
    });
    Ok(())
}

pub fn t4_11(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    if !check.require("phi-surjective", ctx.phi_report().surjective) {
        return Ok(());
    }
    let p = ctx.sl().properties();
    check.expect(p.spectral == p.t0, || {
        Witness::new(
            "phi surjective: spectral ⇔ T0",
            vec![Fact::PhiSurjective { holds: true }, Fact::Spectral { holds: p.spectral }, Fact::T0 { holds: p.t0 }],
        )
    });
    Ok(())
}

pub fn c4_12(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    if !check.require("phi-surjective", ctx.phi_report().surjective) {
        return Ok(());
    }
    let p = ctx.sl().properties();
    let fibers = ctx.fibers_at_most_one().is_ok();
    let r = ctx.phi_report();
    let all = [p.spectral, p.t0, fibers, r.injective, r.homeomorphism];
    check.expect(all.iter().all(|&x| x == all[0]), || {
        Witness::new(
            "phi surjective: spectral ⇔ T0 ⇔ fibers at most one point ⇔ phi injective ⇔ phi homeomorphism",
            vec![
                Fact::PhiSurjective { holds: true },
                Fact::Spectral { holds: p.spectral },
                Fact::T0 { holds: p.t0 },
                Fact::FibersAtMostOne { holds: fibers },
                Fact::PhiInjective { holds: r.injective },
                Fact::PhiHomeomorphism { holds: r.homeomorphism },
            ],
        )
    });
    if all[0] {
        check.note("all five conditions hold");
    } else {
        check.note("all five conditions fail");
    }
    Ok(())
}

pub fn p4_13(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    if !check.require("spec-l-nonempty", ctx.n_l() > 0) {
        return Ok(());
    }
    let spectral = ctx.sl().properties().spectral;
    let fibers = ctx.fibers_at_most_one().is_ok();
    check.expect(spectral == fibers, || {
        Witness::new(
            "finite Spec^L(M): spectral ⇔ fibers have at most one point",
            vec![Fact::Spectral { holds: spectral }, Fact::FibersAtMostOne { holds: fibers }],
        )
    });
    Ok(())
}

/// Every secondary submodule contains a minimal submodule.
fn secondary_contains_minimal(ctx: &VerifyContext) -> bool {
    let a = ctx.analysis();
    let minimal = a.minimal_submodules();
    a.lattice().ids().filter(|&id| a.is_secondary(id)).all(|id| minimal.iter().any(|&m| a.lattice().is_subset(m, id)))
}

fn is_minimal(ctx: &VerifyContext, id: usize) -> bool {
    ctx.analysis().minimal_submodules().contains(&id)
}

pub fn l4_14(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    if !check.require("secondary-contains-minimal", secondary_contains_minimal(ctx)) {
        return Ok(());
    }
    let a = ctx.analysis();
    let minimal = a.minimal_submodules();
    for (k, &id) in a.spec_l().iter().enumerate() {
        let closed = ctx.sl().is_closed(&singleton(ctx.n_l(), k));
        let p = ctx.prime_of(k).clone();
        let fiber = ctx.fiber(&p);
        let is_min = minimal.contains(&id);
        let alone = fiber.count_ones(..) == 1;
        if closed != (is_min && alone) {
            check.expect(false, || {
                let mut facts = vec![
                    Fact::Closed { space: SpaceKind::Sl, set: PointSet::Points { points: vec![ctx.point(k)] }, holds: closed },
                    Fact::Minimal { of: ctx.point(k), holds: is_min },
                    Fact::RadicalAnnihilator { of: ctx.point(k), ideal: p.clone() },
                ];
                if let Some(j) = fiber.ones().find(|&j| j != k) {
                    facts.push(ctx.member(j, PointSet::Fiber { prime: p.clone() }, true));
                }
                Witness::new("{K} closed ⇔ K minimal and Spec^L_p(M) = {K}", facts)
            });
            break;
        }
    }
    Ok(())
}

pub fn l4_15(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let a = ctx.analysis();
    let lat = a.lattice();
    for p in ctx.ring_primes() {
        let fiber: Vec<usize> = ctx.fiber(p).ones().collect();
        for (i, j) in ctx.pairs(fiber.len(), &format!("L4.15 pairs over {p}"), check) {
            let (x, y) = (fiber[i], fiber[j]);
            let sum = lat.sum(a.spec_l()[x], a.spec_l()[y]);
            let inside = a.spec_l_position(sum).is_some_and(|s| ctx.prime_of(s) == p);
            if !inside {
                check.expect(false, || {
                    Witness::new(
                        "K1, K2 ∈ Spec^L_p(M) implies K1 + K2 ∈ Spec^L_p(M)",
                        vec![
                            ctx.member(x, PointSet::Fiber { prime: p.clone() }, true),
                            ctx.member(y, PointSet::Fiber { prime: p.clone() }, true),
                            Fact::Sum { left: ctx.point(x), right: ctx.point(y), sum: ctx.sub(sum) },
                            Fact::Member { point: ctx.sub(sum), set: PointSet::Fiber { prime: p.clone() }, holds: false },
                        ],
                    )
                });
                return Ok(());
            }
        }
    }
    Ok(())
}

pub fn c4_16(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    if !check.require("secondary-contains-minimal", secondary_contains_minimal(ctx)) {
        return Ok(());
    }
    let a = ctx.analysis();
    let t1 = ctx.sl().is_t1();
    let min_is_spec = a.minimal_submodules() == a.spec_l().iter().copied().filter(|&id| is_minimal(ctx, id)).collect::<Vec<_>>()
        && a.spec_l().iter().all(|&id| is_minimal(ctx, id));
    check.expect(t1 == min_is_spec, || {
        Witness::new(
            "T1 ⇔ Min(M) = Spec^L(M)",
            vec![Fact::T1 { holds: t1 }, Fact::SetsEqual { left: PointSet::Min, right: PointSet::SpecL, holds: min_is_spec }],
        )
    });
    Ok(())
}
