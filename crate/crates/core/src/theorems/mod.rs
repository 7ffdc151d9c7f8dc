//! Per-result verifiers and the registry that names them.
//!
//! Each verifier evaluates one numbered statement on one instance. Every
//! quantified variable is enumerated exhaustively unless a budget applies, in
//! which case the result is marked PASS-BOUNDED and the bound is reported.
//! A FAIL carries a witness of atomic facts that `crate::naive` rechecks.

mod base;
pub mod context;
pub mod corpus;
mod maps;
mod points;
mod varieties;
pub mod witness;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::naive::{recheck, Recheck};
pub use context::{VerifyConfig, VerifyContext};
pub use witness::{Fact, PointSet, PrimeSet, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "PASS-BOUNDED")]
    PassBounded,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED-HYPOTHESIS")]
    SkippedHypothesis,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::PassBounded => "PASS-BOUNDED",
            Status::Fail => "FAIL",
            Status::SkippedHypothesis => "SKIPPED-HYPOTHESIS",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RecheckStatus {
    Confirmed,
    Refuted,
    Unchecked,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationResult {
    pub result_id: String,
    pub instance: String,
    pub status: Status,
    pub hypotheses: Vec<Hypothesis>,
    /// The unmet hypothesis, for SKIPPED-HYPOTHESIS.
    pub skipped: Option<String>,
    pub bounds: Vec<String>,
    pub notes: Vec<String>,
    pub witness: Option<Witness>,
    pub recheck: Option<RecheckStatus>,
}

/// Accumulates the outcome of one verifier run.
#[derive(Debug, Default)]
pub struct Check {
    hypotheses: Vec<Hypothesis>,
    skipped: Option<String>,
    bounds: Vec<String>,
    notes: Vec<String>,
    witness: Option<Witness>,
}

impl Check {
    /// Records a hypothesis of one part of the statement.
    pub fn hypothesis(&mut self, name: &str, holds: bool) -> bool {
        if !self.hypotheses.iter().any(|h| h.name == name) {
            self.hypotheses.push(Hypothesis { name: name.to_string(), holds });
        }
        holds
    }

    /// Records a hypothesis of the whole statement; the result is skipped when
    /// it fails.
    pub fn require(&mut self, name: &str, holds: bool) -> bool {
        self.hypothesis(name, holds);
        if !holds && self.skipped.is_none() {
            self.skipped = Some(name.to_string());
        }
        holds
    }

    /// Records a failure with its witness unless `ok`; returns `ok`.
    pub fn expect(&mut self, ok: bool, witness: impl FnOnce() -> Witness) -> bool {
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
        ok
    }

    pub fn bound(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.bounds.contains(&note) {
            self.bounds.push(note);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    fn status(&self) -> Status {
        if self.witness.is_some() {
            Status::Fail
        } else if self.skipped.is_some() {
            Status::SkippedHypothesis
        } else if !self.bounds.is_empty() {
            Status::PassBounded
        } else {
            Status::Pass
        }
    }
}

type Verifier = fn(&VerifyContext, &mut Check) -> Result<()>;

pub struct Entry {
    pub id: &'static str,
    pub title: &'static str,
    run: Verifier,
}

macro_rules! registry {
    ($($id:literal, $title:literal, $run:path;)*) => {
        pub static REGISTRY: &[Entry] = &[$(Entry { id: $id, title: $title, run: $run }),*];
    };
}

registry! {
    "T2.1", "properties of the nu_s* varieties", varieties::t2_1;
    "T2.2", "comultiplication modules are secondary cotop", varieties::t2_2;
    "T2.3", "nu_s varieties are the closed sets of a topology", varieties::t2_3;
    "L2.4", "relations between V_s, V_s*, nu_s and nu_s*", varieties::l2_4;
    "C2.5", "secondary cotop modules are cotop", varieties::c2_5;
    "P2.6", "fibers of phi and injectivity", maps::p2_6;
    "C2.7", "singleton fibers make phi bijective", maps::c2_7;
    "L2.8", "continuity, openness and closedness of psi", maps::l2_8;
    "P2.9", "phi pulls V back to nu_s and is continuous", maps::p2_9;
    "P2.10", "surjective phi is open and closed", maps::p2_10;
    "C2.11", "phi bijective iff homeomorphism", maps::c2_11;
    "T2.12", "connectedness and idempotents", maps::t2_12;
    "L2.13", "monomorphisms preserve secondary-like points", maps::l2_13;
    "T2.14", "induced map rho is injective and continuous", maps::t2_14;
    "C2.15", "isomorphic modules have homeomorphic spectra", maps::c2_15;
    "T3.1", "E_r is a base", base::t3_1;
    "P3.2", "properties of E_r", base::p3_2;
    "C3.3", "over a field the topology is trivial", base::c3_3;
    "T3.4", "E_r quasi-compact", base::t3_4;
    "T3.5", "quasi-compact opens closed under intersection and a base", base::t3_5;
    "P4.1", "closure formula Cl(Y) = nu_s(H(Y))", points::p4_1;
    "T4.2", "point closures are irreducible", points::t4_2;
    "C4.3", "prime radical of H(Y) gives irreducibility", points::c4_3;
    "T4.4", "irreducibility and H(Y)", points::t4_4;
    "T4.5", "irreducible closed sets have generic points", points::t4_5;
    "T4.6", "components from minimal primes", points::t4_6;
    "C4.7", "components biject with minimal primes", points::c4_7;
    "C4.8", "covers by components", points::c4_8;
    "T4.9", "T0 iff fibers have at most one point", points::t4_9;
    "C4.10", "equivalent forms of T0", points::c4_10;
    "T4.11", "spectral iff T0", points::t4_11;
    "C4.12", "spectral, T0, injective, homeomorphic", points::c4_12;
    "P4.13", "finite spectral iff fibers at most one point", points::p4_13;
    "L4.14", "closed points are minimal submodules", points::l4_14;
    "L4.15", "fibers are closed under sums", points::l4_15;
    "C4.16", "T1 iff every point is minimal", points::c4_16;
}

pub fn result_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|e| e.id).collect()
}

pub fn entry(id: &str) -> Result<&'static Entry> {
    REGISTRY
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownResult { id: id.to_string(), valid: result_ids().join(", ") })
}

/// Resolves a list of ids; "all" or an empty list selects the registry.
pub fn select(ids: &[String]) -> Result<Vec<&'static Entry>> {
    if ids.is_empty() || ids.iter().any(|i| i.eq_ignore_ascii_case("all")) {
        return Ok(REGISTRY.iter().collect());
    }
    ids.iter().map(|i| entry(i)).collect()
}

pub fn verify(ctx: &VerifyContext, id: &str) -> Result<VerificationResult> {
    run_entry(ctx, entry(id)?)
}

pub fn run_entry(ctx: &VerifyContext, entry: &Entry) -> Result<VerificationResult> {
    let mut check = Check::default();
    (entry.run)(ctx, &mut check)?;
    let recheck = match &check.witness {
        Some(w) => Some(match recheck(w, ctx.analysis().module())? {
            Recheck::Confirmed => RecheckStatus::Confirmed,
            Recheck::Refuted(_) => RecheckStatus::Refuted,
            Recheck::Unchecked => RecheckStatus::Unchecked,
        }),
        None => None,
    };
    let status = check.status();
    Ok(VerificationResult {
        result_id: entry.id.to_string(),
        instance: ctx.label().to_string(),
        status,
        hypotheses: check.hypotheses,
        skipped: if status == Status::SkippedHypothesis { check.skipped } else { None },
        bounds: check.bounds,
        notes: check.notes,
        witness: check.witness,
        recheck,
    })
}

pub fn verify_all(ctx: &VerifyContext, entries: &[&Entry]) -> Result<Vec<VerificationResult>> {
    entries.iter().map(|e| run_entry(ctx, e)).collect()
}
