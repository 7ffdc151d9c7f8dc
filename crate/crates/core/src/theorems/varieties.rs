//! Statements about the four varieties and the two union-closure properties.

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::variety::{is_cotop, is_secondary_cotop};

use super::context::VerifyContext;
use super::witness::{Fact, PointSet, Witness};
use super::Check;

fn is_union_subset(a: &FixedBitSet, b: &FixedBitSet, c: &FixedBitSet) -> Option<usize> {
    a.union(b).find(|&k| !c.contains(k))
}

pub fn t2_1(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let a = ctx.analysis();
    let lat = a.lattice();
    let (zero, whole) = (lat.zero(), lat.whole());
    let star = |id| PointSet::NuSStar { of: ctx.sub(id) };

    check.expect(ctx.nu_star(whole).count_ones(..) == ctx.n_l(), || {
        Witness::new("nu_s*(M) = Spec^L(M)", vec![Fact::SetsEqual { left: star(whole), right: PointSet::SpecL, holds: false }])
    });
    if let Some(k) = ctx.nu_star(zero).ones().next() {
        check.expect(false, || {
            Witness::new("nu_s*(0) is empty", vec![ctx.member(k, star(zero), true)])
        });
    }

    let mut strict = None;
    for (x, y) in ctx.pairs(ctx.n_lattice(), "T2.1 submodule pairs", check) {
        // (2), families by induction from pairs
        let meet = lat.intersection(x, y);
        let mut both = ctx.nu_star(x).clone();
        both.intersect_with(ctx.nu_star(y));
        if let Some(k) = VerifyContext::first_difference(&both, ctx.nu_star(meet)) {
            check.expect(false, || {
                Witness::new(
                    "nu_s*(N) ∩ nu_s*(L) = nu_s*(N ∩ L)",
                    vec![
                        Fact::Intersection { left: ctx.sub(x), right: ctx.sub(y), meet: ctx.sub(meet) },
                        ctx.member(k, star(x), ctx.nu_star(x).contains(k)),
                        ctx.member(k, star(y), ctx.nu_star(y).contains(k)),
                        ctx.member(k, star(meet), ctx.nu_star(meet).contains(k)),
                    ],
                )
            });
            break;
        }
        // (3)
        let sum = lat.sum(x, y);
        if let Some(k) = is_union_subset(ctx.nu_star(x), ctx.nu_star(y), ctx.nu_star(sum)) {
            check.expect(false, || {
                Witness::new(
                    "nu_s*(N) ∪ nu_s*(L) ⊆ nu_s*(N + L)",
                    vec![
                        Fact::Sum { left: ctx.sub(x), right: ctx.sub(y), sum: ctx.sub(sum) },
                        ctx.member(k, PointSet::union(star(x), star(y)), true),
                        ctx.member(k, star(sum), false),
                    ],
                )
            });
            break;
        }
        if strict.is_none() {
            let mut u = ctx.nu_star(x).clone();
            u.union_with(ctx.nu_star(y));
            if let Some(k) = ctx.nu_star(sum).ones().find(|&k| !u.contains(k)) {
                strict = Some((x, y, k));
            }
        }
        // (4)
        for (lo, hi) in [(x, y), (y, x)] {
            if lat.is_subset(lo, hi) && !ctx.nu_star(lo).is_subset(ctx.nu_star(hi)) {
                let k = ctx.nu_star(lo).difference(ctx.nu_star(hi)).next().expect("not a subset");
                check.expect(false, || {
                    Witness::new(
                        "N1 ⊆ N2 implies nu_s*(N1) ⊆ nu_s*(N2)",
                        vec![
                            Fact::Sum { left: ctx.sub(lo), right: ctx.sub(hi), sum: ctx.sub(hi) },
                            ctx.member(k, star(lo), true),
                            ctx.member(k, star(hi), false),
                        ],
                    )
                });
            }
        }
        if check.failed() {
            break;
        }
    }

    // (5)
    for id in lat.ids() {
        let soc = a.socle(id);
        if ctx.nu_star(soc) != ctx.nu_star(id) {
            check.expect(false, || {
                Witness::new(
                    "nu_s*(soc(N)) = nu_s*(N)",
                    vec![
                        Fact::Socle { of: ctx.sub(id), socle: ctx.sub(soc) },
                        Fact::SetsEqual { left: star(soc), right: star(id), holds: false },
                    ],
                )
            });
            break;
        }
    }

    if let Some((x, y, k)) = strict {
        check.note(format!(
            "union inclusion is strict: {} lies in nu_s*({} + {}) but in neither nu_s*({}) nor nu_s*({})",
            ctx.point(k),
            ctx.sub(x),
            ctx.sub(y),
            ctx.sub(x),
            ctx.sub(y)
        ));
    }
    Ok(())
}

pub fn t2_2(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    if !check.require("comultiplication", ctx.analysis().is_comultiplication()) {
        return Ok(());
    }
    let cotop = is_secondary_cotop(ctx.analysis());
    check.expect(cotop.holds, || {
        let mut facts = vec![Fact::Comultiplication { holds: true }, Fact::SecondaryCotop { holds: false }];
        if let Some((x, y)) = cotop.witness {
            let sum = ctx.analysis().lattice().sum(x, y);
            facts.push(Fact::Sum { left: ctx.sub(x), right: ctx.sub(y), sum: ctx.sub(sum) });
        }
        Witness::new("comultiplication modules are secondary cotop", facts)
    });
    Ok(())
}

pub fn t2_3(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let a = ctx.analysis();
    let lat = a.lattice();
    let (zero, whole) = (lat.zero(), lat.whole());
    let nu = |id| PointSet::NuS { of: ctx.sub(id) };

    check.expect(ctx.nu(whole).count_ones(..) == ctx.n_l(), || {
        Witness::new("nu_s(M) = Spec^L(M)", vec![Fact::SetsEqual { left: nu(whole), right: PointSet::SpecL, holds: false }])
    });
    if let Some(k) = ctx.nu(zero).ones().next() {
        check.expect(false, || Witness::new("nu_s(0) is empty", vec![ctx.member(k, nu(zero), true)]));
    }

    for (x, y) in ctx.pairs(ctx.n_lattice(), "T2.3 submodule pairs", check) {
        // (2): ν(N1) ∩ ν(N2) = ν(D(N1) ∩ D(N2)) with D = Ann_M ∘ Ann_R, and
        // D fixes D(N1) ∩ D(N2), which carries the identity to any family.
        let (dx, dy) = (a.double_annihilator(x), a.double_annihilator(y));
        let meet = lat.intersection(dx, dy);
        let mut both = ctx.nu(x).clone();
        both.intersect_with(ctx.nu(y));
        if let Some(k) = VerifyContext::first_difference(&both, ctx.nu(meet)) {
            check.expect(false, || {
                Witness::new(
                    "nu_s(N1) ∩ nu_s(N2) = nu_s(Ann_M(Ann_R(N1)) ∩ Ann_M(Ann_R(N2)))",
                    vec![
                        Fact::Annihilator { of: ctx.sub(x), ideal: a.ann(x).clone() },
                        Fact::Annihilated { ideal: a.ann(x).clone(), submodule: ctx.sub(dx) },
                        Fact::Annihilator { of: ctx.sub(y), ideal: a.ann(y).clone() },
                        Fact::Annihilated { ideal: a.ann(y).clone(), submodule: ctx.sub(dy) },
                        Fact::Intersection { left: ctx.sub(dx), right: ctx.sub(dy), meet: ctx.sub(meet) },
                        ctx.member(k, nu(x), ctx.nu(x).contains(k)),
                        ctx.member(k, nu(y), ctx.nu(y).contains(k)),
                        ctx.member(k, nu(meet), ctx.nu(meet).contains(k)),
                    ],
                )
            });
            break;
        }
        if a.double_annihilator(meet) != meet {
            check.expect(false, || {
                Witness::new(
                    "Ann_M(Ann_R(X)) = X for X an intersection of double annihilators",
                    vec![
                        Fact::Intersection { left: ctx.sub(dx), right: ctx.sub(dy), meet: ctx.sub(meet) },
                        Fact::Annihilator { of: ctx.sub(meet), ideal: a.ann(meet).clone() },
                        Fact::Annihilated { ideal: a.ann(meet).clone(), submodule: ctx.sub(a.double_annihilator(meet)) },
                    ],
                )
            });
            break;
        }
        // (3)
        let sum = lat.sum(x, y);
        let mut u = ctx.nu(x).clone();
        u.union_with(ctx.nu(y));
        if let Some(k) = VerifyContext::first_difference(&u, ctx.nu(sum)) {
            check.expect(false, || {
                Witness::new(
                    "nu_s(N1) ∪ nu_s(N2) = nu_s(N1 + N2)",
                    vec![
                        Fact::Sum { left: ctx.sub(x), right: ctx.sub(y), sum: ctx.sub(sum) },
                        ctx.member(k, PointSet::union(nu(x), nu(y)), u.contains(k)),
                        ctx.member(k, nu(sum), ctx.nu(sum).contains(k)),
                    ],
                )
            });
            break;
        }
    }
    Ok(())
}

pub fn l2_4(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let a = ctx.analysis();
    let lat = a.lattice();
    let ring = ctx.module().ring();
    let s_in_l = a.spec_s_in_spec_l();
    let comult = check.hypothesis("comultiplication", a.is_comultiplication());
    let nu = |id| PointSet::NuS { of: ctx.sub(id) };
    let star = |id| PointSet::NuSStar { of: ctx.sub(id) };
    let restrict = |set: &FixedBitSet| {
        let mut out = FixedBitSet::with_capacity(ctx.n_s());
        out.extend((0..ctx.n_s()).filter(|&k| set.contains(s_in_l[k])));
        out
    };

    for id in lat.ids() {
        // (1), (2)
        let vs = restrict(ctx.nu(id));
        if let Some(k) = VerifyContext::first_difference(&vs, ctx.v(id)) {
            check.expect(false, || {
                Witness::new(
                    "V^s(N) = nu_s(N) ∩ Spec^s(M)",
                    vec![ctx.s_member(k, nu(id), vs.contains(k)), ctx.s_member(k, PointSet::VS { of: ctx.sub(id) }, ctx.v(id).contains(k))],
                )
            });
            return Ok(());
        }
        let vs = restrict(ctx.nu_star(id));
        if let Some(k) = VerifyContext::first_difference(&vs, ctx.v_star(id)) {
            check.expect(false, || {
                Witness::new(
                    "V^s*(N) = nu_s*(N) ∩ Spec^s(M)",
                    vec![
                        ctx.s_member(k, star(id), vs.contains(k)),
                        ctx.s_member(k, PointSet::VSStar { of: ctx.sub(id) }, ctx.v_star(id).contains(k)),
                    ],
                )
            });
            return Ok(());
        }
        // (4)
        if let Some(k) = ctx.nu_star(id).difference(ctx.nu(id)).next() {
            check.expect(false, || {
                Witness::new("nu_s*(N) ⊆ nu_s(N)", vec![ctx.member(k, star(id), true), ctx.member(k, nu(id), false)])
            });
            return Ok(());
        }
        if comult && ctx.nu_star(id) != ctx.nu(id) {
            check.expect(false, || {
                Witness::new(
                    "comultiplication gives nu_s*(N) = nu_s(N)",
                    vec![Fact::Comultiplication { holds: true }, Fact::SetsEqual { left: star(id), right: nu(id), holds: false }],
                )
            });
            return Ok(());
        }
        // (6)
        let d = a.double_annihilator(id);
        let dr = a.annihilated(&a.rad_ann(id).clone())?;
        for (other, set) in [(d, ctx.nu(d)), (dr, ctx.nu(dr)), (d, ctx.nu_star(d)), (dr, ctx.nu_star(dr))] {
            if set != ctx.nu(id) {
                check.expect(false, || {
                    let right = if set == ctx.nu(other) { nu(other) } else { star(other) };
                    Witness::new(
                        "nu_s(N) = nu_s(Ann_M(Ann_R(N))) = nu_s(Ann_M(√Ann_R(N))) = nu_s*(…) = nu_s*(…)",
                        vec![
                            Fact::Annihilator { of: ctx.sub(id), ideal: a.ann(id).clone() },
                            Fact::RadicalAnnihilator { of: ctx.sub(id), ideal: a.rad_ann(id).clone() },
                            Fact::Annihilated { ideal: a.ann(id).clone(), submodule: ctx.sub(d) },
                            Fact::Annihilated { ideal: a.rad_ann(id).clone(), submodule: ctx.sub(dr) },
                            Fact::SetsEqual { left: nu(id), right, holds: false },
                        ],
                    )
                });
                return Ok(());
            }
        }
        // (7)
        let soc = a.socle(id);
        if (a.in_spec_l(id) || comult) && ctx.nu(id) != ctx.nu(soc) {
            check.expect(false, || {
                let mut facts = vec![
                    Fact::Socle { of: ctx.sub(id), socle: ctx.sub(soc) },
                    Fact::SetsEqual { left: nu(id), right: nu(soc), holds: false },
                ];
                if a.in_spec_l(id) {
                    facts.push(Fact::Member { point: ctx.sub(id), set: PointSet::SpecL, holds: true });
                } else {
                    facts.push(Fact::Comultiplication { holds: true });
                }
                Witness::new("N ∈ Spec^L(M) or comultiplication gives nu_s(N) = nu_s(soc(N))", facts)
            });
            return Ok(());
        }
    }

    // (3): equal radicals give equal ν^s; grouping by radical is exact since
    // equality is transitive.
    let mut by_rad: std::collections::BTreeMap<&crate::ring::Ideal, usize> = Default::default();
    for id in lat.ids() {
        let rep = *by_rad.entry(a.rad_ann(id)).or_insert(id);
        if ctx.nu(rep) != ctx.nu(id) {
            check.expect(false, || {
                Witness::new(
                    "√Ann_R(N) = √Ann_R(N') implies nu_s(N) = nu_s(N')",
                    vec![
                        Fact::RadicalAnnihilator { of: ctx.sub(rep), ideal: a.rad_ann(rep).clone() },
                        Fact::RadicalAnnihilator { of: ctx.sub(id), ideal: a.rad_ann(id).clone() },
                        Fact::SetsEqual { left: nu(rep), right: nu(id), holds: false },
                    ],
                )
            });
            return Ok(());
        }
    }
    // converse on Spec^L: equal ν^s give equal radicals
    let mut by_nu: std::collections::BTreeMap<&FixedBitSet, usize> = Default::default();
    for &id in a.spec_l() {
        let rep = *by_nu.entry(ctx.nu(id)).or_insert(id);
        if a.rad_ann(rep) != a.rad_ann(id) {
            check.expect(false, || {
                Witness::new(
                    "for N, N' ∈ Spec^L(M), nu_s(N) = nu_s(N') implies √Ann_R(N) = √Ann_R(N')",
                    vec![
                        Fact::SetsEqual { left: nu(rep), right: nu(id), holds: true },
                        Fact::RadicalAnnihilator { of: ctx.sub(rep), ideal: a.rad_ann(rep).clone() },
                        Fact::RadicalAnnihilator { of: ctx.sub(id), ideal: a.rad_ann(id).clone() },
                    ],
                )
            });
            return Ok(());
        }
    }

    // (5), over every ideal of R
    for i in ring.ideals() {
        let ai = a.annihilated(&i)?;
        let ar = a.annihilated(&i.radical())?;
        let sets = [ctx.nu(ai), ctx.nu(ar), ctx.nu_star(ai), ctx.nu_star(ar)];
        if sets.iter().any(|s| *s != sets[0]) {
            check.expect(false, || {
                let right = [nu(ar), star(ai), star(ar)]
                    .into_iter()
                    .zip(&sets[1..])
                    .find(|(_, s)| **s != sets[0])
                    .map(|(p, _)| p)
                    .expect("some set differs");
                Witness::new(
                    "nu_s(Ann_M(I)) = nu_s(Ann_M(√I)) = nu_s*(Ann_M(I)) = nu_s*(Ann_M(√I))",
                    vec![
                        Fact::Annihilated { ideal: i.clone(), submodule: ctx.sub(ai) },
                        Fact::Annihilated { ideal: i.radical(), submodule: ctx.sub(ar) },
                        Fact::SetsEqual { left: nu(ai), right, holds: false },
                    ],
                )
            });
            return Ok(());
        }
    }
    Ok(())
}

pub fn c2_5(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let secondary = is_secondary_cotop(ctx.analysis());
    if !check.require("secondary-cotop", secondary.holds) {
        return Ok(());
    }
    let cotop = is_cotop(ctx.analysis());
    check.expect(cotop.holds, || {
        Witness::new(
            "secondary cotop modules are cotop",
            vec![Fact::SecondaryCotop { holds: true }, Fact::Cotop { holds: false }],
        )
    });
    Ok(())
}
