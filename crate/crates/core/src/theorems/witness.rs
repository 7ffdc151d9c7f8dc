//! Counterexample payloads. A witness is a list of atomic facts computed on
//! the fast paths; `crate::naive` recomputes each fact from the definitions.

use serde::{Serialize, Serializer};

use crate::hom::Homomorphism;
use crate::module::{FiniteModule, Submodule};
use crate::ring::{Ideal, RingElement};
use crate::variety::SpaceKind;

/// A set of points of Spec^L(M) or Spec^s(M), described by how it is built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "set", rename_all = "snake_case")]
pub enum PointSet {
    SpecL,
    SpecS,
    NuS { of: Submodule },
    NuSStar { of: Submodule },
    VS { of: Submodule },
    VSStar { of: Submodule },
    Fiber { prime: Ideal },
    /// Closure of a point set in the SL-topology.
    Closure { of: Vec<Submodule> },
    Points { points: Vec<Submodule> },
    BaseE { r: RingElement },
    /// The minimal submodules of M.
    Min,
    /// φ^{-1}(V(Ī)).
    PhiPreimageV { ideal: Ideal },
    /// ψ^{-1}(V(Ī)).
    PsiPreimageV { ideal: Ideal },
    /// φ^{-1}(D_r̄).
    PhiPreimageD { r: RingElement },
    Union { left: Box<PointSet>, right: Box<PointSet> },
    Complement { of: Box<PointSet>, within: Box<PointSet> },
}

/// A set of primes of R̄, each lifted to the prime of R above Ann_R(M).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "set", rename_all = "snake_case")]
pub enum PrimeSet {
    SpecBar,
    VBar { ideal: Ideal },
    DBar { r: RingElement },
    PhiImage { of: PointSet },
    PsiImage { of: PointSet },
    Primes { primes: Vec<Ideal> },
    /// Relative to Spec(R̄).
    Complement { of: Box<PrimeSet> },
}

/// A monomorphism as it appears in a witness.
#[derive(Debug, Clone)]
pub struct MapRef(pub Homomorphism);

impl PartialEq for MapRef {
    fn eq(&self, other: &Self) -> bool {
        self.0.source() == other.0.source() && self.0.target() == other.0.target() && self.0.table() == other.0.table()
    }
}

impl Eq for MapRef {}

impl Serialize for MapRef {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&format_args!("{} => {}: {}", self.0.source(), self.0.target(), self.0.describe()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "fact", rename_all = "snake_case")]
pub enum Fact {
    Member { point: Submodule, set: PointSet, holds: bool },
    PrimeMember { prime: Ideal, set: PrimeSet, holds: bool },
    SetsEqual { left: PointSet, right: PointSet, holds: bool },
    PrimeSetsEqual { left: PrimeSet, right: PrimeSet, holds: bool },
    Annihilator { of: Submodule, ideal: Ideal },
    RadicalAnnihilator { of: Submodule, ideal: Ideal },
    Annihilated { ideal: Ideal, submodule: Submodule },
    Socle { of: Submodule, socle: Submodule },
    SocleSum { of: Vec<Submodule>, sum: Submodule },
    Sum { left: Submodule, right: Submodule, sum: Submodule },
    Intersection { left: Submodule, right: Submodule, meet: Submodule },
    Second { of: Submodule, holds: bool },
    Secondary { of: Submodule, holds: bool },
    Minimal { of: Submodule, holds: bool },
    Prime { ideal: Ideal, holds: bool },
    /// Minimal among the primes of R containing Ann_R(M).
    MinimalPrime { ideal: Ideal, holds: bool },
    /// Closed in the SL-topology or in the Zariski topology on Spec^s(M).
    Closed { space: SpaceKind, set: PointSet, holds: bool },
    PrimeClosed { set: PrimeSet, holds: bool },
    Irreducible { set: PointSet, holds: bool },
    Component { set: PointSet, holds: bool },
    Connected { space: SpaceKind, holds: bool },
    T0 { holds: bool },
    T1 { holds: bool },
    Spectral { holds: bool },
    /// 0̄ and 1̄ are the only idempotents of R̄.
    TrivialIdempotents { holds: bool },
    Comultiplication { holds: bool },
    Nilpotent { r: RingElement, holds: bool },
    Unit { r: RingElement, holds: bool },
    /// {E_r} is a base of the SL-topology with E_0 = ∅ and E_1 = Spec^L(M).
    EBase { holds: bool },
    /// {ν^{s*}(N)} closed under finite union.
    SecondaryCotop { holds: bool },
    /// {V^{s*}(N)} closed under finite union.
    Cotop { holds: bool },
    /// |Spec^L_p(M)| <= 1 for every prime p of R.
    FibersAtMostOne { holds: bool },
    /// |Spec^L_p(M)| = 1 for every prime p of R.
    FibersExactlyOne { holds: bool },
    /// ν^s(K) = ν^s(K') implies K = K' on Spec^L(M).
    NuSSeparates { holds: bool },
    PhiInjective { holds: bool },
    PhiSurjective { holds: bool },
    PsiSurjective { holds: bool },
    PhiHomeomorphism { holds: bool },
    Image { map: MapRef, of: Submodule, image: Submodule },
    Preimage { map: MapRef, of: Submodule, preimage: Submodule },
    RhoInjective { map: MapRef, holds: bool },
    RhoContinuous { map: MapRef, holds: bool },
    /// ρ(K) = f(K) is a homeomorphism Spec^L(M) → Spec^L(M′).
    RhoHomeomorphism { map: MapRef, holds: bool },
    /// Spec^L(M) and Spec^L(M′) are homeomorphic by some bijection.
    Homeomorphic { left: FiniteModule, right: FiniteModule, holds: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub claim: String,
    pub facts: Vec<Fact>,
}

impl Witness {
    pub fn new(claim: impl Into<String>, facts: Vec<Fact>) -> Self {
        Witness { claim: claim.into(), facts }
    }
}

impl PointSet {
    pub fn union(left: PointSet, right: PointSet) -> Self {
        PointSet::Union { left: Box::new(left), right: Box::new(right) }
    }

    pub fn complement_in(of: PointSet, within: PointSet) -> Self {
        PointSet::Complement { of: Box::new(of), within: Box::new(within) }
    }
}

impl PrimeSet {
    pub fn complement(of: PrimeSet) -> Self {
        PrimeSet::Complement { of: Box::new(of) }
    }
}
