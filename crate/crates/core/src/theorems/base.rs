//! Statements about the basic open sets E_r.

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::ring::{units_and_nilradical, RingElement};
use crate::topology::complement;
use crate::variety::{base_e, verify_base, SpaceKind};

use super::context::VerifyContext;
use super::witness::{Fact, PointSet, PrimeSet, Witness};
use super::Check;

/// E_r for every element of R, in element order.
fn all_e(ctx: &VerifyContext) -> Vec<(RingElement, FixedBitSet)> {
    ctx.module().ring().elements().map(|r| {
        let e = base_e(ctx.analysis(), &r);
        (r, e)
    }).collect()
}

/// D_r̄ over the base points.
fn base_d(ctx: &VerifyContext, r: &RingElement) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(ctx.base_primes().len());
    set.extend((0..ctx.base_primes().len()).filter(|&k| !ctx.base_primes()[k].contains(r)));
    set
}

pub fn t3_1(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    check.expect(verify_base(ctx.analysis()), || Witness::new("{E_r} is a base of the SL-topology", vec![Fact::EBase { holds: false }]));
    // each E_r is open
    for (r, e) in all_e(ctx) {
        if !ctx.sl().is_open(&e) {
            check.expect(false, || {
                Witness::new(
                    "E_r is open",
                    vec![Fact::Closed {
                        space: SpaceKind::Sl,
                        set: PointSet::complement_in(PointSet::BaseE { r: r.clone() }, PointSet::SpecL),
                        holds: false,
                    }],
                )
            });
            break;
        }
    }
    Ok(())
}

pub fn p3_2(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    let ring = ctx.module().ring();
    let surjective = check.hypothesis("phi-surjective", ctx.phi_report().surjective);
    let (units, nil) = units_and_nilradical(ring);
    let es = all_e(ctx);
    let n = ctx.n_l();
    for (r, e) in &es {
        // (1)
        let d = base_d(ctx, r);
        let pre = ctx.phi().preimage(&d);
        if let Some(k) = VerifyContext::first_difference(&pre, e) {
            check.expect(false, || {
                Witness::new(
                    "phi^-1(D_r̄) = E_r",
                    vec![
                        ctx.member(k, PointSet::PhiPreimageD { r: r.clone() }, pre.contains(k)),
                        ctx.member(k, PointSet::BaseE { r: r.clone() }, e.contains(k)),
                    ],
                )
            });
            return Ok(());
        }
        // (2)
        let image = ctx.phi().image(e);
        if let Some(k) = image.difference(&d).next() {
            let p = ctx.base_primes()[k].clone();
            check.expect(false, || {
                Witness::new(
                    "phi(E_r) ⊆ D_r̄",
                    vec![
                        Fact::PrimeMember { prime: p.clone(), set: PrimeSet::PhiImage { of: PointSet::BaseE { r: r.clone() } }, holds: true },
                        Fact::PrimeMember { prime: p, set: PrimeSet::DBar { r: r.clone() }, holds: false },
                    ],
                )
            });
            return Ok(());
        }
        if surjective && image != d {
            check.expect(false, || {
                Witness::new(
                    "phi surjective gives phi(E_r) = D_r̄",
                    vec![
                        Fact::PhiSurjective { holds: true },
                        Fact::PrimeSetsEqual {
                            left: PrimeSet::PhiImage { of: PointSet::BaseE { r: r.clone() } },
                            right: PrimeSet::DBar { r: r.clone() },
                            holds: false,
                        },
                    ],
                )
            });
            return Ok(());
        }
        // (4), (5)
        if nil.contains(r) && !e.is_clear() {
            let k = e.ones().next().expect("nonempty");
            check.expect(false, || {
                Witness::new(
                    "r nilpotent gives E_r = ∅",
                    vec![Fact::Nilpotent { r: r.clone(), holds: true }, ctx.member(k, PointSet::BaseE { r: r.clone() }, true)],
                )
            });
            return Ok(());
        }
        if units.contains(r) && e.count_ones(..) != n {
            let k = complement(e).ones().next().expect("missing point");
            check.expect(false, || {
                Witness::new(
                    "r a unit gives E_r = Spec^L(M)",
                    vec![Fact::Unit { r: r.clone(), holds: true }, ctx.member(k, PointSet::BaseE { r: r.clone() }, false)],
                )
            });
            return Ok(());
        }
    }
    // (3), all ordered pairs of elements (the statement is symmetric)
    for (i, (x, ex)) in es.iter().enumerate() {
        for (y, ey) in &es[i..] {
            let xy = ring.mul(x, y);
            let exy = &es[ring.index_of(&xy) as usize].1;
            let mut both = ex.clone();
            both.intersect_with(ey);
            if let Some(k) = VerifyContext::first_difference(&both, exy) {
                check.expect(false, || {
                    Witness::new(
                        "E_a ∩ E_b = E_ab",
                        vec![
                            ctx.member(k, PointSet::BaseE { r: x.clone() }, ex.contains(k)),
                            ctx.member(k, PointSet::BaseE { r: y.clone() }, ey.contains(k)),
                            ctx.member(k, PointSet::BaseE { r: xy.clone() }, exy.contains(k)),
                        ],
                    )
                });
                return Ok(());
            }
        }
    }
    Ok(())
}

pub fn c3_3(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    if !check.require("R-field", ctx.module().ring().is_field()) {
        return Ok(());
    }
    let sl = ctx.sl();
    if let Some(c) = sl.closed_sets().iter().find(|c| !c.is_clear() && c.count_ones(..) != sl.len()) {
        let points = ctx.points(c);
        check.expect(false, || {
            Witness::new(
                "over a field the SL-topology is trivial",
                vec![Fact::Closed { space: SpaceKind::Sl, set: PointSet::Points { points }, holds: true }],
            )
        });
    }
    Ok(())
}

/// Finite spaces are quasi-compact; what is checked is the route the
/// statement takes: E_r = φ^{-1}(D_r̄) and φ(E_r) = D_r̄ for every r, so
/// basic covers of E_r and of D_r̄ correspond, and Spec^L(M) = E_1.
pub fn t3_4(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    if !check.require("phi-surjective", ctx.phi_report().surjective) {
        return Ok(());
    }
    let es = all_e(ctx);
    for (r, e) in &es {
        let d = base_d(ctx, r);
        if ctx.phi().image(e) != d || ctx.phi().preimage(&d) != *e {
            check.expect(false, || {
                Witness::new(
                    "E_r corresponds to D_r̄ under phi",
                    vec![
                        Fact::PhiSurjective { holds: true },
                        Fact::PrimeSetsEqual {
                            left: PrimeSet::PhiImage { of: PointSet::BaseE { r: r.clone() } },
                            right: PrimeSet::DBar { r: r.clone() },
                            holds: ctx.phi().image(e) == d,
                        },
                        Fact::SetsEqual {
                            left: PointSet::PhiPreimageD { r: r.clone() },
                            right: PointSet::BaseE { r: r.clone() },
                            holds: ctx.phi().preimage(&d) == *e,
                        },
                    ],
                )
            });
            return Ok(());
        }
    }
    let one = base_e(ctx.analysis(), &ctx.module().ring().one());
    check.expect(one.count_ones(..) == ctx.n_l(), || {
        Witness::new(
            "Spec^L(M) = E_1",
            vec![Fact::SetsEqual { left: PointSet::BaseE { r: ctx.module().ring().one() }, right: PointSet::SpecL, holds: false }],
        )
    });
    Ok(())
}

pub fn t3_5(ctx: &VerifyContext, check: &mut Check) -> Result<()> {
    if !check.require("phi-surjective", ctx.phi_report().surjective) {
        return Ok(());
    }
    // every open set of a finite space is quasi-compact, so the statement is
    // that the open sets are closed under finite intersection and the E_r
    // refine every open set
    let sl = ctx.sl();
    let closed = sl.closed_sets();
    for (i, a) in closed.iter().enumerate() {
        for b in &closed[i..] {
            let mut u = a.clone();
            u.union_with(b);
            if !sl.is_closed(&u) {
                let (pa, pb) = (ctx.points(a), ctx.points(b));
                check.expect(false, || {
                    Witness::new(
                        "quasi-compact opens are closed under finite intersection",
                        vec![
                            Fact::Closed { space: SpaceKind::Sl, set: PointSet::Points { points: pa.clone() }, holds: true },
                            Fact::Closed { space: SpaceKind::Sl, set: PointSet::Points { points: pb.clone() }, holds: true },
                            Fact::Closed {
                                space: SpaceKind::Sl,
                                set: PointSet::union(PointSet::Points { points: pa }, PointSet::Points { points: pb }),
                                holds: false,
                            },
                        ],
                    )
                });
                return Ok(());
            }
        }
    }
    check.expect(verify_base(ctx.analysis()), || {
        Witness::new("quasi-compact opens form a base", vec![Fact::EBase { holds: false }])
    });
    Ok(())
}
