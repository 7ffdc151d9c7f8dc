//! Statements about φ, ψ, connectedness and the maps induced by
//! monomorphisms.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::maps::SpectrumMap;
use crate::ring::{ring_idempotents, Ideal};
use crate::topology::{complement, find_homeomorphism, FiniteTopology, HomeomorphismSearch};
use crate::variety::SpaceKind;

use super::context::{rho_assignment, MonoFamily, VerifyContext};
use super::witness::{Fact, MapRef, PointSet, PrimeSet, Witness};
use super::Check;

/// The first pair of Spec^L points with the same ν^s, if any.
fn nu_collision(ctx: &VerifyContext) -> Option<(usize, usize)> {
    let mut seen: BTreeMap<&FixedBitSet, usize> = BTreeMap::new();
    for (k, &id) in ctx.analysis().spec_l().iter().enumerate() {
        if let Some(&j) = seen.get(ctx.nu(id)) {
            return Some((j, k));
        }
        seen.insert(ctx.nu(id), k);
    }
    None
}

fn phi_collision(ctx: &VerifyContext) -> Option<(usize, usize)> {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, &y) in ctx.phi().assignment.iter().enumerate() {
        if let Some(&j) = seen.get(&y) {
            return Some((j, k));
        }
        seen.insert(y, k);
    }
    None
}

/// Facts for the three equivalent injectivity conditions.
pub(super) fn injectivity_facts(ctx: &VerifyContext) -> (bool, bool, bool, Vec<Fact>) {
    let nu = |k| PointSet::NuS { of: ctx.point(k) };
    let mut facts = Vec::new();
    let separates = match nu_collision(ctx) {
        Some((j, k)) => {
            facts.push(Fact::SetsEqual { left: nu(j), right: nu(k), holds: true });
            false
        }
        None => true,
    };
    facts.push(Fact::NuSSeparates { holds: separates });
    let fibers = match ctx.fibers_at_most_one() {
        Err((p, j, k)) => {
            facts.push(ctx.member(j, PointSet::Fiber { prime: p.clone() }, true));
            facts.push(ctx.member(k, PointSet::Fiber { prime: p }, true));
            false
        }
        Ok(()) => true,
    };
    facts.push(Fact::FibersAtMostOne { holds: fibers });
    let injective = match phi_collision(ctx) {
        Some((j, k)) => {
            facts.push(Fact::RadicalAnnihilator { of: ctx.point(j), ideal: ctx.prime_of(j).clone() });
            facts.push(Fact::RadicalAnnihilator { of: ctx.point(k), ideal: ctx.prime_of(k).clone() });
            false
        }
        None => true,
    };
    facts.push(Fact::PhiInjective { holds: injective });
    (separates, fibers, injective, facts)
}

pub fn p2_6(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let (one, two, three, facts) = injectivity_facts(ctx);
    check.expect(one == two && two == three, || {
        Witness::new("nu_s separates Spec^L(M) ⇔ fibers have at most one point ⇔ phi injective", facts)
    });
    Ok(())
}

pub fn c2_7(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let singletons = ctx.ring_primes().iter().all(|p| ctx.fiber(p).count_ones(..) == 1);
    if !check.require("fibers-exactly-one", singletons) {
        return Ok(());
    }
    let r = ctx.phi_report();
    check.expect(r.injective && r.surjective, || {
        Witness::new(
            "singleton fibers make phi bijective",
            vec![
                Fact::FibersExactlyOne { holds: true },
                Fact::PhiInjective { holds: r.injective },
                Fact::PhiSurjective { holds: r.surjective },
            ],
        )
    });
    Ok(())
}

/// Ideals of R containing Ann_R(M).
fn ideals_above(ctx: &VerifyContext) -> Vec<Ideal> {
    let ann = ctx.module().annihilator();
    ctx.module().ring().ideals().into_iter().filter(|i| ann.is_subset(i)).collect()
}

/// Preimages of V(Ī) equal the variety of Ann_M(I), and are closed.
fn preimage_identity(ctx: &VerifyContext, check: &mut Check, which: SpaceKind) -> Result<()> {
    let a = ctx.analysis();
    let (map, space, n): (&SpectrumMap, &FiniteTopology, usize) = match which {
        SpaceKind::Sl => (ctx.phi(), ctx.sl(), ctx.n_l()),
        _ => (ctx.psi(), ctx.second(), ctx.n_s()),
    };
    for i in ideals_above(ctx) {
        let killed = a.annihilated(&i)?;
        let pre = map.preimage(&ctx.base_v(&i));
        let (expected, pre_set, variety) = match which {
            SpaceKind::Sl => (ctx.nu(killed), PointSet::PhiPreimageV { ideal: i.clone() }, PointSet::NuS { of: ctx.sub(killed) }),
            _ => (ctx.v(killed), PointSet::PsiPreimageV { ideal: i.clone() }, PointSet::VS { of: ctx.sub(killed) }),
        };
        if let Some(k) = VerifyContext::first_difference(&pre, expected) {
            let point = match which {
                SpaceKind::Sl => ctx.point(k),
                _ => ctx.s_point(k),
            };
            check.expect(false, || {
                Witness::new(
                    "the preimage of V(Ī) is the variety of Ann_M(I)",
                    vec![
                        Fact::Annihilated { ideal: i.clone(), submodule: ctx.sub(killed) },
                        Fact::Member { point: point.clone(), set: pre_set.clone(), holds: pre.contains(k) },
                        Fact::Member { point, set: variety.clone(), holds: expected.contains(k) },
                    ],
                )
            });
            return Ok(());
        }
        if !space.is_closed(&pre) {
            check.expect(false, || {
                Witness::new("the map is continuous", vec![Fact::Closed { space: which, set: pre_set, holds: false }])
            });
            return Ok(());
        }
        debug_assert_eq!(pre.len(), n);
    }
    Ok(())
}

/// Under surjectivity: images of varieties and of their complements, and
/// openness and closedness.
fn image_identity(ctx: &VerifyContext, check: &mut Check, which: SpaceKind) {
    let a = ctx.analysis();
    let (map, space_set) = match which {
        SpaceKind::Sl => (ctx.phi(), PointSet::SpecL),
        _ => (ctx.psi(), PointSet::SpecS),
    };
    let image_of = |set: PointSet| match which {
        SpaceKind::Sl => PrimeSet::PhiImage { of: set },
        _ => PrimeSet::PsiImage { of: set },
    };
    for id in a.lattice().ids() {
        let (variety, variety_set) = match which {
            SpaceKind::Sl => (ctx.nu(id), PointSet::NuS { of: ctx.sub(id) }),
            _ => (ctx.v(id), PointSet::VS { of: ctx.sub(id) }),
        };
        let v_ann = ctx.base_v(a.ann(id));
        let image = map.image(variety);
        let rest = map.image(&complement(variety));
        let ann = a.ann(id).clone();
        if image != v_ann {
            check.expect(false, || {
                Witness::new(
                    "the image of a variety of N is V(Ann_R(N))",
                    vec![
                        Fact::Annihilator { of: ctx.sub(id), ideal: ann.clone() },
                        Fact::PrimeSetsEqual { left: image_of(variety_set), right: PrimeSet::VBar { ideal: ann }, holds: false },
                    ],
                )
            });
            return;
        }
        if rest != complement(&v_ann) {
            check.expect(false, || {
                Witness::new(
                    "the image of the complement of a variety of N is Spec(R̄) − V(Ann_R(N))",
                    vec![
                        Fact::Annihilator { of: ctx.sub(id), ideal: ann.clone() },
                        Fact::PrimeSetsEqual {
                            left: image_of(PointSet::complement_in(variety_set, space_set.clone())),
                            right: PrimeSet::complement(PrimeSet::VBar { ideal: ann }),
                            holds: false,
                        },
                    ],
                )
            });
            return;
        }
        if !ctx.base().is_closed(&image) {
            check.expect(false, || {
                Witness::new("the map is closed", vec![Fact::PrimeClosed { set: image_of(variety_set), holds: false }])
            });
            return;
        }
        if !ctx.base().is_open(&rest) {
            check.expect(false, || {
                Witness::new(
                    "the map is open",
                    vec![Fact::PrimeClosed {
                        set: PrimeSet::complement(image_of(PointSet::complement_in(variety_set, space_set.clone()))),
                        holds: false,
                    }],
                )
            });
            return;
        }
    }
}

pub fn l2_8(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    preimage_identity(ctx, check, SpaceKind::SecondZariski)?;
    if check.hypothesis("psi-surjective", ctx.psi_report().surjective) {
        image_identity(ctx, check, SpaceKind::SecondZariski);
    }
    Ok(())
}

pub fn p2_9(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    preimage_identity(ctx, check, SpaceKind::Sl)
}

pub fn p2_10(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    if check.require("phi-surjective", ctx.phi_report().surjective) {
        image_identity(ctx, check, SpaceKind::Sl);
    }
    Ok(())
}

pub fn c2_11(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let r = ctx.phi_report();
    let bijective = r.injective && r.surjective;
    check.expect(bijective == r.homeomorphism, || {
        Witness::new(
            "phi bijective ⇔ phi homeomorphism",
            vec![
                Fact::PhiInjective { holds: r.injective },
                Fact::PhiSurjective { holds: r.surjective },
                Fact::PhiHomeomorphism { holds: r.homeomorphism },
            ],
        )
    });
    Ok(())
}

pub fn t2_12(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    if !check.require("phi-surjective", ctx.phi_report().surjective) {
        return Ok(());
    }
    let psi_surjective = check.hypothesis("psi-surjective", ctx.psi_report().surjective);
    let s1 = ctx.second().is_connected();
    let s2 = ctx.sl().is_connected();
    let s3 = ctx.base().is_connected();
    let s4 = ring_idempotents(ctx.module().quotient().ring()).len() == 2;
    let ok = (!s1 || s2) && s2 == s3 && s3 == s4 && (!psi_surjective || s1 == s2);
    check.expect(ok, || {
        Witness::new(
            "connectedness of Spec^s(M), Spec^L(M), Spec(R̄) and trivial idempotents",
            vec![
                Fact::PhiSurjective { holds: true },
                Fact::PsiSurjective { holds: psi_surjective },
                Fact::Connected { space: SpaceKind::SecondZariski, holds: s1 },
                Fact::Connected { space: SpaceKind::Sl, holds: s2 },
                Fact::Connected { space: SpaceKind::BaseRingSpec, holds: s3 },
                Fact::TrivialIdempotents { holds: s4 },
            ],
        )
    });
    if ok {
        if !s2 {
            check.note("disconnected branch: Spec^L(M), Spec(R̄) and the idempotents of R̄ all witness a splitting");
        }
        if s2 && !s1 {
            check.note("Spec^L(M) is connected while Spec^s(M) is not; the converse of (1) ⇒ (2) is not claimed without psi-surjectivity");
        }
    }
    Ok(())
}

/// f(K) leaves Spec^L(M′) for the Spec^L point `k` of M.
fn escape_facts(map: &MapRef, src: &crate::spectrum::ModuleAnalysis, tgt: &crate::spectrum::ModuleAnalysis, k: usize, image: usize) -> Vec<Fact> {
    let point = src.submodule(src.spec_l()[k]);
    vec![
        Fact::Image { map: map.clone(), of: point.clone(), image: tgt.submodule(image) },
        Fact::Member { point, set: PointSet::SpecL, holds: true },
        Fact::Member { point: tgt.submodule(image), set: PointSet::SpecL, holds: false },
    ]
}

/// L2.13 on one family. Returns false after recording a failure.
fn l2_13_family(fam: &MonoFamily, check: &mut Check) -> bool {
    let (src, tgt) = (&fam.source.analysis, &fam.target.analysis);
    let mut whole = src.module().empty_set();
    whole.insert_range(..);
    for f in &fam.maps {
        let map = MapRef(f.clone());
        // (2)
        if let Err((k, image)) = rho_assignment(f, src, tgt) {
            check.expect(false, || Witness::new("N ∈ Spec^L(M) implies f(N) ∈ Spec^L(M')", escape_facts(&map, src, tgt, k, image)));
            return false;
        }
        // (1)
        let image_id = tgt.lattice().id_of(&f.image_of(&whole)).expect("f(M) is a submodule");
        for &n in tgt.spec_l() {
            if !tgt.lattice().is_subset(n, image_id) {
                continue;
            }
            let pre = src.lattice().id_of(&f.preimage_of(tgt.lattice().set(n))).expect("preimages are submodules");
            if !src.in_spec_l(pre) {
                check.expect(false, || {
                    Witness::new(
                        "N' ∈ Spec^L(M') with N' ⊆ f(M) implies f^-1(N') ∈ Spec^L(M)",
                        vec![
                            Fact::Image { map: map.clone(), of: src.submodule(src.lattice().whole()), image: tgt.submodule(image_id) },
                            Fact::Sum { left: tgt.submodule(n), right: tgt.submodule(image_id), sum: tgt.submodule(image_id) },
                            Fact::Preimage { map: map.clone(), of: tgt.submodule(n), preimage: src.submodule(pre) },
                            Fact::Member { point: tgt.submodule(n), set: PointSet::SpecL, holds: true },
                            Fact::Member { point: src.submodule(pre), set: PointSet::SpecL, holds: false },
                        ],
                    )
                });
                return false;
            }
        }
    }
    true
}

fn families<'a>(ctx: &'a VerifyContext, check: &mut Check) -> Result<&'a [MonoFamily]> {
    let fams = ctx.monos()?;
    for fam in fams {
        if let Some(b) = &fam.bound {
            check.bound(b.clone());
        }
    }
    let pairs: Vec<String> = fams.iter().map(|f| format!("{} => {} ({})", f.source.module(), f.target.module(), f.maps.len())).collect();
    check.note(format!("monomorphism families: {}", pairs.join("; ")));
    Ok(fams)
}

pub fn l2_13(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    for fam in families(ctx, check)? {
        if !l2_13_family(fam, check) {
            break;
        }
    }
    Ok(())
}

/// Whether a bijection between point sets carries the closed sets of `a`
/// onto those of `b`.
fn carries_closed_sets(a: &FiniteTopology, b: &FiniteTopology, assignment: &[usize]) -> bool {
    let mut images: Vec<FixedBitSet> = a.closed_sets().iter().map(|c| a.image(assignment, c, b.len())).collect();
    images.sort();
    images.dedup();
    let mut target: Vec<FixedBitSet> = b.closed_sets().to_vec();
    target.sort();
    images == target
}

/// Spec^L(M) and Spec^L(M') homeomorphic, trying ρ first. `None` when the
/// search is over its size limit.
fn homeomorphic(a: &FiniteTopology, b: &FiniteTopology, rho: Option<&[usize]>) -> Option<bool> {
    if let Some(rho) = rho {
        if a.len() == b.len() && carries_closed_sets(a, b, rho) {
            return Some(true);
        }
    }
    match find_homeomorphism(a, b) {
        HomeomorphismSearch::Found(_) => Some(true),
        HomeomorphismSearch::NotHomeomorphic => Some(false),
        HomeomorphismSearch::NotAttempted => None,
    }
}

pub fn t2_14(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    'families: for fam in families(ctx, check)? {
        let (src, tgt) = (&fam.source, &fam.target);
        let mut homeomorphic_known: Option<Option<bool>> = None;
        for f in &fam.maps {
            let map = MapRef(f.clone());
            let rho = match rho_assignment(f, &src.analysis, &tgt.analysis) {
                Ok(rho) => rho,
                Err((k, image)) => {
                    check.expect(false, || {
                        Witness::new("rho maps Spec^L(M) into Spec^L(M')", escape_facts(&map, &src.analysis, &tgt.analysis, k, image))
                    });
                    break 'families;
                }
            };
            let mut seen = FixedBitSet::with_capacity(tgt.sl.len());
            let mut injective = true;
            for &y in &rho {
                injective &= !seen.put(y);
            }
            if !injective {
                check.expect(false, || Witness::new("rho is injective", vec![Fact::RhoInjective { map: map.clone(), holds: false }]));
                break 'families;
            }
            let continuous = tgt.sl.closed_sets().iter().all(|c| {
                let mut pre = FixedBitSet::with_capacity(rho.len());
                pre.extend((0..rho.len()).filter(|&k| c.contains(rho[k])));
                src.sl.is_closed(&pre)
            });
            if !continuous {
                check.expect(false, || Witness::new("rho is continuous", vec![Fact::RhoContinuous { map: map.clone(), holds: false }]));
                break 'families;
            }
            if seen.count_ones(..) == tgt.sl.len() {
                let h = *homeomorphic_known.get_or_insert_with(|| homeomorphic(&src.sl, &tgt.sl, Some(&rho)));
                match h {
                    Some(true) => {}
                    Some(false) => {
                        check.expect(false, || {
                            Witness::new(
                                "rho surjective implies Spec^L(M) ≅ Spec^L(M')",
                                vec![
                                    Fact::RhoInjective { map: map.clone(), holds: true },
                                    Fact::Homeomorphic { left: src.module().clone(), right: tgt.module().clone(), holds: false },
                                ],
                            )
                        });
                        break 'families;
                    }
                    None => check.bound(format!(
                        "homeomorphism search between Spec^L({}) and Spec^L({}) exceeds its size limit",
                        src.module(),
                        tgt.module()
                    )),
                }
            }
        }
    }
    Ok(())
}

pub fn c2_15(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let mut isomorphisms = 0;
    for fam in families(ctx, check)? {
        let (src, tgt) = (&fam.source, &fam.target);
        if src.module().order() != tgt.module().order() {
            continue;
        }
        let mut checked_existence = false;
        for f in &fam.maps {
            isomorphisms += 1;
            let map = MapRef(f.clone());
            let rho = rho_assignment(f, &src.analysis, &tgt.analysis).ok();
            let rho_homeomorphism = rho.as_deref().is_some_and(|r| src.sl.len() == tgt.sl.len() && carries_closed_sets(&src.sl, &tgt.sl, r));
            if rho_homeomorphism || checked_existence {
                continue;
            }
            checked_existence = true;
            match homeomorphic(&src.sl, &tgt.sl, None) {
                Some(true) => check.note(format!("{}: rho is not a homeomorphism, another bijection is", map.0.describe())),
                Some(false) => {
                    check.expect(false, || {
                        Witness::new(
                            "isomorphic modules have homeomorphic secondary-like spectra",
                            vec![
                                Fact::RhoHomeomorphism { map: map.clone(), holds: false },
                                Fact::Homeomorphic { left: src.module().clone(), right: tgt.module().clone(), holds: false },
                            ],
                        )
                    });
                    return Ok(());
                }
                None => check.bound(format!(
                    "homeomorphism search between Spec^L({}) and Spec^L({}) exceeds its size limit",
                    src.module(),
                    tgt.module()
                )),
            }
        }
    }
    check.note(format!("{isomorphisms} isomorphisms checked"));
    Ok(())
}
