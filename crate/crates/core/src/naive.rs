//! Definition-level recomputation of witness facts.
//!
//! Nothing here reads the tables of `ModuleAnalysis`. Second and secondary
//! submodules come from scalar scans, socles from sums of second submodules,
//! radicals from power scans, primes from pair scans, and every topological
//! predicate from the raw closed-set family. Only the submodule list itself
//! is shared with the fast path; it is checked against a subset-filter
//! oracle in the lattice tests.

use std::collections::{BTreeSet, HashMap};

use crate::error::Result;
use crate::lattice::{enumerate_submodules, SubmoduleLattice, DEFAULT_MAX_ELEMENTS};
use crate::module::{annihilated_submodule, annihilator_of_submodule, is_second, is_secondary, submodule_sum};
use crate::module::{FiniteModule, Submodule};
use crate::ring::{FiniteRing, Ideal, RingElement};
use crate::theorems::witness::{Fact, MapRef, PointSet, PrimeSet, Witness};
use crate::variety::SpaceKind;

type Ids = BTreeSet<usize>;

/// Exhaustive pair scan: I proper and ab ∈ I ⇒ a ∈ I or b ∈ I.
pub fn naive_is_prime(ideal: &Ideal) -> bool {
    let ring = ideal.ring();
    if ideal.is_whole() {
        return false;
    }
    let elems: Vec<RingElement> = ring.elements().collect();
    elems.iter().all(|a| {
        ideal.contains(a) || elems.iter().all(|b| !ideal.contains(&ring.mul(a, b)) || ideal.contains(b))
    })
}

/// {r : r^k ∈ I for some k ≤ |R|}, matched against the ideal list.
pub fn naive_radical(ideal: &Ideal) -> Ideal {
    let ring = ideal.ring();
    let bound = ring.order();
    let mut members = BTreeSet::new();
    for r in ring.elements() {
        let mut power = r.clone();
        for _ in 0..bound {
            if ideal.contains(&power) {
                members.insert(ring.index_of(&r));
                break;
            }
            power = ring.mul(&power, &r);
        }
    }
    ring.ideals()
        .into_iter()
        .find(|j| j.elements().iter().map(|x| ring.index_of(x)).collect::<BTreeSet<_>>() == members)
        .expect("the radical of an ideal is an ideal")
}

/// A finite space given by its closed sets over point labels.
struct Space {
    points: Ids,
    closed: Vec<Ids>,
}

impl Space {
    fn new(points: Ids, closed: impl IntoIterator<Item = Ids>) -> Self {
        let mut closed: Vec<Ids> = closed.into_iter().collect();
        closed.sort();
        closed.dedup();
        Space { points, closed }
    }

    fn is_closed(&self, y: &Ids) -> bool {
        self.closed.contains(y)
    }

    fn closure(&self, y: &Ids) -> Ids {
        let mut out = self.points.clone();
        for c in &self.closed {
            if y.is_subset(c) {
                out = out.intersection(c).copied().collect();
            }
        }
        out
    }

    fn is_irreducible(&self, y: &Ids) -> bool {
        if y.is_empty() {
            return false;
        }
        self.closed.iter().all(|a| {
            self.closed.iter().all(|b| {
                let covered = y.iter().all(|p| a.contains(p) || b.contains(p));
                !covered || y.is_subset(a) || y.is_subset(b)
            })
        })
    }

    fn is_component(&self, y: &Ids) -> bool {
        self.is_closed(y)
            && self.is_irreducible(y)
            && !self.closed.iter().any(|c| c != y && y.is_subset(c) && self.is_irreducible(c))
    }

    fn is_connected(&self) -> bool {
        !self.closed.iter().any(|c| {
            let rest: Ids = self.points.difference(c).copied().collect();
            !c.is_empty() && !rest.is_empty() && self.is_closed(&rest)
        })
    }

    fn point_closure(&self, p: usize) -> Ids {
        self.closure(&BTreeSet::from([p]))
    }

    fn is_t0(&self) -> bool {
        let closures: Vec<Ids> = self.points.iter().map(|&p| self.point_closure(p)).collect();
        let distinct: BTreeSet<&Ids> = closures.iter().collect();
        distinct.len() == closures.len()
    }

    fn is_t1(&self) -> bool {
        self.points.iter().all(|&p| self.is_closed(&BTreeSet::from([p])))
    }

    fn is_sober(&self) -> bool {
        self.closed
            .iter()
            .filter(|f| self.is_irreducible(f))
            .all(|f| self.points.iter().filter(|&&p| &self.point_closure(p) == f).count() == 1)
    }
}

/// Everything about one module, from the definitions.
pub struct NaiveModel {
    module: FiniteModule,
    lattice: SubmoduleLattice,
    subs: Vec<Submodule>,
    ann: Vec<Ideal>,
    rad: Vec<Ideal>,
    socle: Vec<usize>,
    spec_l: Ids,
    spec_s: Ids,
    ann_m: Ideal,
    primes: Vec<Ideal>,
}

impl NaiveModel {
    pub fn new(module: &FiniteModule) -> Result<Self> {
        let lattice = enumerate_submodules(module, DEFAULT_MAX_ELEMENTS)?;
        let subs = lattice.submodules();
        let ann: Vec<Ideal> = subs.iter().map(annihilator_of_submodule).collect();
        let rad = ann.iter().map(naive_radical).collect::<Vec<_>>();
        let second: Vec<bool> = subs.iter().map(is_second).collect();
        let mut socle = Vec::with_capacity(subs.len());
        for n in &subs {
            let mut acc = Submodule::zero(module);
            for (s, _) in subs.iter().zip(&second).filter(|(s, &sec)| sec && s.is_subset(n)) {
                acc = submodule_sum(&acc, s)?;
            }
            socle.push(lattice.id_of_submodule(&acc).expect("sums of submodules are submodules"));
        }
        let spec_l = (0..subs.len())
            .filter(|&k| is_secondary(&subs[k]) && ann[socle[k]] == rad[k])
            .collect();
        let spec_s = (0..subs.len()).filter(|&k| second[k]).collect();
        let ann_m = annihilator_of_submodule(&Submodule::whole(module));
        let primes = module.ring().ideals().into_iter().filter(|p| ann_m.is_subset(p) && naive_is_prime(p)).collect();
        Ok(NaiveModel { module: module.clone(), lattice, subs, ann, rad, socle, spec_l, spec_s, ann_m, primes })
    }

    fn ring(&self) -> &FiniteRing {
        self.module.ring()
    }

    fn id(&self, n: &Submodule) -> usize {
        self.lattice.id_of_submodule(n).expect("witness submodules belong to the module")
    }

    fn ids(&self, ns: &[Submodule]) -> Ids {
        ns.iter().map(|n| self.id(n)).collect()
    }

    fn kernel(&self, r: &RingElement) -> usize {
        let set = (0..self.module.order()).filter(|&x| self.module.scale(r, x) == 0);
        let mut bits = self.module.empty_set();
        bits.extend(set);
        self.lattice.id_of(&bits).expect("Ann_M(r) is a submodule")
    }

    fn nu_s(&self, n: usize) -> Ids {
        self.spec_l.iter().copied().filter(|&k| self.ann[n].is_subset(&self.rad[k])).collect()
    }

    fn nu_s_star(&self, n: usize) -> Ids {
        self.spec_l.iter().copied().filter(|&k| self.subs[self.socle[k]].is_subset(&self.subs[n])).collect()
    }

    fn v_s(&self, n: usize) -> Ids {
        self.spec_s.iter().copied().filter(|&k| self.ann[n].is_subset(&self.ann[k])).collect()
    }

    fn v_s_star(&self, n: usize) -> Ids {
        self.spec_s.iter().copied().filter(|&k| self.subs[k].is_subset(&self.subs[n])).collect()
    }

    fn sl(&self) -> Space {
        Space::new(self.spec_l.clone(), (0..self.subs.len()).map(|n| self.nu_s(n)))
    }

    fn second_zariski(&self) -> Space {
        Space::new(self.spec_s.clone(), (0..self.subs.len()).map(|n| self.v_s(n)))
    }

    /// Spec(R̄) with points labelled by positions in `primes`.
    fn base_spec(&self) -> Space {
        let points = (0..self.primes.len()).collect();
        let closed = self
            .ring()
            .ideals()
            .into_iter()
            .map(|i| (0..self.primes.len()).filter(|&k| i.is_subset(&self.primes[k])).collect::<Ids>());
        Space::new(points, closed)
    }

    fn space(&self, which: SpaceKind) -> Space {
        match which {
            SpaceKind::Sl => self.sl(),
            SpaceKind::SecondZariski => self.second_zariski(),
            SpaceKind::BaseRingSpec => self.base_spec(),
        }
    }

    pub fn point_set(&self, set: &PointSet) -> Ids {
        let l = || self.spec_l.iter().copied();
        match set {
            PointSet::SpecL => self.spec_l.clone(),
            PointSet::SpecS => self.spec_s.clone(),
            PointSet::NuS { of } => self.nu_s(self.id(of)),
            PointSet::NuSStar { of } => self.nu_s_star(self.id(of)),
            PointSet::VS { of } => self.v_s(self.id(of)),
            PointSet::VSStar { of } => self.v_s_star(self.id(of)),
            PointSet::Fiber { prime } => l().filter(|&k| &self.rad[k] == prime).collect(),
            PointSet::Closure { of } => self.sl().closure(&self.ids(of)),
            PointSet::Points { points } => self.ids(points),
            PointSet::BaseE { r } => {
                let nu = self.nu_s(self.kernel(r));
                l().filter(|k| !nu.contains(k)).collect()
            }
            PointSet::Min => (0..self.subs.len())
                .filter(|&k| {
                    let n = &self.subs[k];
                    !n.is_zero() && !self.subs.iter().any(|s| !s.is_zero() && s.len() < n.len() && s.is_subset(n))
                })
                .collect(),
            PointSet::PhiPreimageV { ideal } => l().filter(|&k| ideal.is_subset(&self.rad[k])).collect(),
            PointSet::PsiPreimageV { ideal } => {
                self.spec_s.iter().copied().filter(|&k| ideal.is_subset(&self.ann[k])).collect()
            }
            PointSet::PhiPreimageD { r } => l().filter(|&k| !self.rad[k].contains(r)).collect(),
            PointSet::Union { left, right } => self.point_set(left).union(&self.point_set(right)).copied().collect(),
            PointSet::Complement { of, within } => {
                self.point_set(within).difference(&self.point_set(of)).copied().collect()
            }
        }
    }

    pub fn prime_set(&self, set: &PrimeSet) -> BTreeSet<Ideal> {
        let all = || self.primes.iter().cloned();
        match set {
            PrimeSet::SpecBar => all().collect(),
            PrimeSet::VBar { ideal } => all().filter(|p| ideal.is_subset(p)).collect(),
            PrimeSet::DBar { r } => all().filter(|p| !p.contains(r)).collect(),
            PrimeSet::PhiImage { of } => self.point_set(of).into_iter().map(|k| self.rad[k].clone()).collect(),
            PrimeSet::PsiImage { of } => self.point_set(of).into_iter().map(|k| self.ann[k].clone()).collect(),
            PrimeSet::Primes { primes } => primes.iter().cloned().collect(),
            PrimeSet::Complement { of } => {
                let inner = self.prime_set(of);
                all().filter(|p| !inner.contains(p)).collect()
            }
        }
    }

    fn is_minimal_prime(&self, p: &Ideal) -> bool {
        self.primes.contains(p) && !self.primes.iter().any(|q| q != p && q.is_subset(p))
    }

    fn trivial_idempotents(&self) -> bool {
        let ring = self.ring();
        let one = ring.one();
        ring.elements().all(|e| {
            let square_minus = ring.add(&ring.mul(&e, &e), &ring.neg(&e));
            !self.ann_m.contains(&square_minus)
                || self.ann_m.contains(&e)
                || self.ann_m.contains(&ring.add(&e, &ring.neg(&one)))
        })
    }

    fn union_closed(&self, family: Vec<Ids>) -> bool {
        let distinct: BTreeSet<Ids> = family.into_iter().collect();
        distinct.iter().all(|a| distinct.iter().all(|b| distinct.contains(&a.union(b).copied().collect::<Ids>())))
    }

    /// E_0 = ∅, E_1 = Spec^L(M), and each open set is the union of the E_r inside it.
    fn e_base(&self) -> bool {
        let ring = self.ring();
        let e = |r: &RingElement| self.point_set(&PointSet::BaseE { r: r.clone() });
        let base: Vec<Ids> = ring.elements().map(|r| e(&r)).collect();
        if !e(&ring.zero()).is_empty() || e(&ring.one()) != self.spec_l {
            return false;
        }
        self.sl().closed.iter().all(|c| {
            let open: Ids = self.spec_l.difference(c).copied().collect();
            let covered: Ids = base.iter().filter(|b| b.is_subset(&open)).flatten().copied().collect();
            covered == open
        })
    }

    /// Fiber sizes over every prime of R, primes found by pair scan.
    fn fiber_sizes(&self) -> Vec<usize> {
        self.ring()
            .ideals()
            .into_iter()
            .filter(naive_is_prime)
            .map(|p| self.spec_l.iter().filter(|&&k| self.rad[k] == p).count())
            .collect()
    }

    fn phi_images(&self) -> Vec<&Ideal> {
        self.spec_l.iter().map(|&k| &self.rad[k]).collect()
    }

    fn phi_injective(&self) -> bool {
        let images = self.phi_images();
        images.iter().collect::<BTreeSet<_>>().len() == images.len()
    }

    fn phi_surjective(&self) -> bool {
        let images: BTreeSet<&Ideal> = self.phi_images().into_iter().collect();
        self.primes.iter().all(|p| images.contains(p))
    }

    fn psi_surjective(&self) -> bool {
        let images: BTreeSet<&Ideal> = self.spec_s.iter().map(|&k| &self.ann[k]).collect();
        self.primes.iter().all(|p| images.contains(p))
    }

    /// φ is a bijection carrying the closed sets of Spec^L(M) onto those of Spec(R̄).
    fn phi_homeomorphism(&self) -> bool {
        if !self.phi_injective() || !self.phi_surjective() {
            return false;
        }
        let position = |k: usize| self.primes.iter().position(|p| *p == self.rad[k]).expect("φ lands in Spec(R̄)");
        let mut images: Vec<Ids> = self.sl().closed.iter().map(|c| c.iter().map(|&k| position(k)).collect()).collect();
        images.sort();
        images.dedup();
        images == self.base_spec().closed
    }

    fn prime_positions(&self, primes: &BTreeSet<Ideal>) -> Ids {
        (0..self.primes.len()).filter(|&k| primes.contains(&self.primes[k])).collect()
    }
}

fn elements(n: &Submodule) -> Ids {
    n.elements().ones().collect()
}

/// Outcome of rechecking a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recheck {
    /// Every fact agrees with the definitions.
    Confirmed,
    /// Indices of facts the definitions contradict.
    Refuted(Vec<usize>),
    /// Some fact was too large to recheck; the others agreed.
    Unchecked,
}

/// Rechecks facts for one primary module, caching models per module.
pub struct Checker {
    primary: FiniteModule,
    models: HashMap<String, NaiveModel>,
}

impl Checker {
    pub fn new(primary: &FiniteModule) -> Self {
        Checker { primary: primary.clone(), models: HashMap::new() }
    }

    fn model(&mut self, module: &FiniteModule) -> Result<&NaiveModel> {
        let key = module.to_string();
        if !self.models.contains_key(&key) {
            self.models.insert(key.clone(), NaiveModel::new(module)?);
        }
        Ok(&self.models[&key])
    }

    /// `Some(agrees)`, or `None` when the fact is too large to recheck.
    pub fn fact(&mut self, fact: &Fact) -> Result<Option<bool>> {
        let primary = self.primary.clone();
        let agrees = match fact {
            Fact::Member { point, set, holds } => {
                let m = self.model(point.module())?;
                m.point_set(set).contains(&m.id(point)) == *holds
            }
            Fact::PrimeMember { prime, set, holds } => self.model(&primary)?.prime_set(set).contains(prime) == *holds,
            Fact::SetsEqual { left, right, holds } => {
                let m = self.model(&primary)?;
                (m.point_set(left) == m.point_set(right)) == *holds
            }
            Fact::PrimeSetsEqual { left, right, holds } => {
                let m = self.model(&primary)?;
                (m.prime_set(left) == m.prime_set(right)) == *holds
            }
            Fact::Annihilator { of, ideal } => &annihilator_of_submodule(of) == ideal,
            Fact::RadicalAnnihilator { of, ideal } => &naive_radical(&annihilator_of_submodule(of)) == ideal,
            Fact::Annihilated { ideal, submodule } => &annihilated_submodule(submodule.module(), ideal)? == submodule,
            Fact::Socle { of, socle } => {
                let m = self.model(of.module())?;
                m.subs[m.socle[m.id(of)]] == *socle
            }
            Fact::SocleSum { of, sum } => {
                let m = self.model(sum.module())?;
                let mut acc = Submodule::zero(sum.module());
                for k in of {
                    acc = submodule_sum(&acc, &m.subs[m.socle[m.id(k)]])?;
                }
                acc == *sum
            }
            Fact::Sum { left, right, sum } => &submodule_sum(left, right)? == sum,
            Fact::Intersection { left, right, meet } => {
                elements(left).intersection(&elements(right)).copied().collect::<Ids>() == elements(meet)
            }
            Fact::Second { of, holds } => is_second(of) == *holds,
            Fact::Secondary { of, holds } => is_secondary(of) == *holds,
            Fact::Minimal { of, holds } => {
                let m = self.model(of.module())?;
                let minimal = !of.is_zero() && !m.subs.iter().any(|s| !s.is_zero() && s.len() < of.len() && s.is_subset(of));
                minimal == *holds
            }
            Fact::Prime { ideal, holds } => naive_is_prime(ideal) == *holds,
            Fact::MinimalPrime { ideal, holds } => self.model(&primary)?.is_minimal_prime(ideal) == *holds,
            Fact::Closed { space, set, holds } => {
                let m = self.model(&primary)?;
                m.space(*space).is_closed(&m.point_set(set)) == *holds
            }
            Fact::PrimeClosed { set, holds } => {
                let m = self.model(&primary)?;
                m.base_spec().is_closed(&m.prime_positions(&m.prime_set(set))) == *holds
            }
            Fact::Irreducible { set, holds } => {
                let m = self.model(&primary)?;
                m.sl().is_irreducible(&m.point_set(set)) == *holds
            }
            Fact::Component { set, holds } => {
                let m = self.model(&primary)?;
                m.sl().is_component(&m.point_set(set)) == *holds
            }
            Fact::Connected { space, holds } => self.model(&primary)?.space(*space).is_connected() == *holds,
            Fact::T0 { holds } => self.model(&primary)?.sl().is_t0() == *holds,
            Fact::T1 { holds } => self.model(&primary)?.sl().is_t1() == *holds,
            Fact::Spectral { holds } => {
                let s = self.model(&primary)?.sl();
                (s.is_t0() && s.is_sober()) == *holds
            }
            Fact::TrivialIdempotents { holds } => self.model(&primary)?.trivial_idempotents() == *holds,
            Fact::Comultiplication { holds } => {
                let m = self.model(&primary)?;
                let mut all = true;
                for n in &m.subs {
                    all &= &annihilated_submodule(&m.module, &annihilator_of_submodule(n))? == n;
                }
                all == *holds
            }
            Fact::Nilpotent { r, holds } => {
                let ring = primary.ring();
                let mut power = r.clone();
                let mut nilpotent = false;
                for _ in 0..ring.order() {
                    nilpotent |= power.is_zero();
                    power = ring.mul(&power, r);
                }
                nilpotent == *holds
            }
            Fact::Unit { r, holds } => {
                let ring = primary.ring();
                let one = ring.one();
                ring.elements().any(|s| ring.mul(r, &s) == one) == *holds
            }
            Fact::EBase { holds } => self.model(&primary)?.e_base() == *holds,
            Fact::SecondaryCotop { holds } => {
                let m = self.model(&primary)?;
                m.union_closed((0..m.subs.len()).map(|n| m.nu_s_star(n)).collect()) == *holds
            }
            Fact::Cotop { holds } => {
                let m = self.model(&primary)?;
                m.union_closed((0..m.subs.len()).map(|n| m.v_s_star(n)).collect()) == *holds
            }
            Fact::FibersAtMostOne { holds } => self.model(&primary)?.fiber_sizes().iter().all(|&n| n <= 1) == *holds,
            Fact::FibersExactlyOne { holds } => self.model(&primary)?.fiber_sizes().iter().all(|&n| n == 1) == *holds,
            Fact::NuSSeparates { holds } => {
                let m = self.model(&primary)?;
                let sets: BTreeSet<Ids> = m.spec_l.iter().map(|&k| m.nu_s(k)).collect();
                (sets.len() == m.spec_l.len()) == *holds
            }
            Fact::PhiInjective { holds } => self.model(&primary)?.phi_injective() == *holds,
            Fact::PhiSurjective { holds } => self.model(&primary)?.phi_surjective() == *holds,
            Fact::PsiSurjective { holds } => self.model(&primary)?.psi_surjective() == *holds,
            Fact::PhiHomeomorphism { holds } => self.model(&primary)?.phi_homeomorphism() == *holds,
            Fact::Image { map, of, image } => {
                map.0.image_of(of.elements()).ones().collect::<Ids>() == elements(image)
            }
            Fact::Preimage { map, of, preimage } => {
                let pre: Ids = (0..map.0.source().order()).filter(|&x| of.contains(map.0.apply(x))).collect();
                pre == elements(preimage)
            }
            Fact::RhoInjective { map, holds } => {
                let injective = match self.rho(map)? {
                    Some(rho) => rho.values().collect::<BTreeSet<_>>().len() == rho.len(),
                    None => false,
                };
                injective == *holds
            }
            Fact::RhoContinuous { map, holds } => {
                let continuous = match self.rho(map)? {
                    Some(rho) => {
                        let source = self.models[&map.0.source().to_string()].sl();
                        let target = self.models[&map.0.target().to_string()].sl();
                        target.closed.iter().all(|c| {
                            source.is_closed(&rho.iter().filter(|(_, y)| c.contains(y)).map(|(&k, _)| k).collect())
                        })
                    }
                    None => false,
                };
                continuous == *holds
            }
            Fact::RhoHomeomorphism { map, holds } => {
                let homeomorphism = match self.rho(map)? {
                    Some(rho) => {
                        let s = &self.models[&map.0.source().to_string()];
                        let t = &self.models[&map.0.target().to_string()];
                        let image: Ids = rho.values().copied().collect();
                        // A bijection is a homeomorphism iff it maps the closed
                        // sets onto the closed sets.
                        let mut images: Vec<Ids> =
                            s.sl().closed.iter().map(|c| c.iter().map(|k| rho[k]).collect()).collect();
                        images.sort();
                        images.dedup();
                        image == t.spec_l && image.len() == rho.len() && images == t.sl().closed
                    }
                    None => false,
                };
                homeomorphism == *holds
            }
            Fact::Homeomorphic { left, right, holds } => match self.homeomorphic(left, right)? {
                Some(h) => h == *holds,
                None => return Ok(None),
            },
        };
        Ok(Some(agrees))
    }

    /// ρ on Spec^L points as lattice ids, or `None` if some f(K) leaves Spec^L(M′).
    fn rho(&mut self, map: &MapRef) -> Result<Option<std::collections::BTreeMap<usize, usize>>> {
        let (src, tgt) = (map.0.source().clone(), map.0.target().clone());
        self.model(&src)?;
        self.model(&tgt)?;
        let s = &self.models[&src.to_string()];
        let t = &self.models[&tgt.to_string()];
        let mut rho = std::collections::BTreeMap::new();
        for &k in &s.spec_l {
            match t.lattice.id_of(&map.0.image_of(s.subs[k].elements())) {
                Some(id) if t.spec_l.contains(&id) => rho.insert(k, id),
                _ => return Ok(None),
            };
        }
        Ok(Some(rho))
    }

    fn homeomorphic(&mut self, left: &FiniteModule, right: &FiniteModule) -> Result<Option<bool>> {
        self.model(left)?;
        self.model(right)?;
        let a = self.models[&left.to_string()].sl();
        let b = self.models[&right.to_string()].sl();
        if a.points.len() != b.points.len() || a.closed.len() != b.closed.len() {
            return Ok(Some(false));
        }
        if a.points.len() > 8 {
            return Ok(None);
        }
        let pa: Vec<usize> = a.points.iter().copied().collect();
        let pb: Vec<usize> = b.points.iter().copied().collect();
        let mut perm: Vec<usize> = (0..pb.len()).collect();
        let found = permutations(&mut perm, 0, &mut |perm| {
            let map = |c: &Ids| c.iter().map(|p| pb[perm[pa.iter().position(|q| q == p).unwrap()]]).collect::<Ids>();
            let mut images: Vec<Ids> = a.closed.iter().map(map).collect();
            images.sort();
            images == b.closed
        });
        Ok(Some(found))
    }

    pub fn witness(&mut self, witness: &Witness) -> Result<Recheck> {
        let mut refuted = Vec::new();
        let mut unchecked = false;
        for (i, fact) in witness.facts.iter().enumerate() {
            match self.fact(fact)? {
                Some(true) => {}
                Some(false) => refuted.push(i),
                None => unchecked = true,
            }
        }
        Ok(if !refuted.is_empty() {
            Recheck::Refuted(refuted)
        } else if unchecked {
            Recheck::Unchecked
        } else {
            Recheck::Confirmed
        })
    }
}

fn permutations(perm: &mut Vec<usize>, k: usize, test: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == perm.len() {
        return test(perm);
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if permutations(perm, k + 1, test) {
            perm.swap(k, i);
            return true;
        }
        perm.swap(k, i);
    }
    false
}

pub fn recheck(witness: &Witness, module: &FiniteModule) -> Result<Recheck> {
    Checker::new(module).witness(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::build_module;
    use crate::ring::build_ring;
    use crate::spectrum::ModuleAnalysis;

    fn module(moduli: &[u64], factors: &[&[u64]]) -> FiniteModule {
        let r = build_ring(moduli).unwrap();
        let fs: Vec<Ideal> = factors.iter().map(|g| r.ideal(g).unwrap()).collect();
        build_module(&r, &fs).unwrap()
    }

    #[test]
    fn naive_primes_and_radicals_match_structure() {
        for moduli in [vec![8], vec![12], vec![6, 4], vec![9, 2]] {
            let r = build_ring(&moduli).unwrap();
            for i in r.ideals() {
                assert_eq!(naive_is_prime(&i), i.is_prime(), "{i}");
                assert_eq!(naive_radical(&i), i.radical(), "{i}");
            }
        }
    }

    #[test]
    fn naive_model_matches_analysis() {
        for m in [
            module(&[8], &[&[0]]),
            module(&[6], &[&[0]]),
            module(&[2], &[&[0], &[0]]),
            module(&[4], &[&[0], &[2]]),
            module(&[6, 2], &[&[0, 0]]),
            module(&[12], &[&[0]]),
        ] {
            let a = ModuleAnalysis::new(&m).unwrap();
            let n = NaiveModel::new(&m).unwrap();
            assert_eq!(n.spec_l.iter().copied().collect::<Vec<_>>(), a.spec_l());
            assert_eq!(n.spec_s.iter().copied().collect::<Vec<_>>(), a.spec_s());
            for id in a.lattice().ids() {
                assert_eq!(n.socle[id], a.socle(id));
                let fast: Ids = a.nu_s(id).ones().map(|k| a.spec_l()[k]).collect();
                assert_eq!(n.nu_s(id), fast);
            }
            assert_eq!(n.primes, a.primes());
        }
    }

    #[test]
    fn true_facts_confirm_and_false_facts_refute() {
        let m = module(&[2], &[&[0], &[0]]);
        let a = ModuleAnalysis::new(&m).unwrap();
        let whole = Submodule::whole(&m);
        let line1 = a.submodule(1);
        let line2 = a.submodule(2);
        let sum = submodule_sum(&line1, &line2).unwrap();
        let good = Witness::new(
            "union of nu_s* varieties is not a variety",
            vec![
                Fact::Sum { left: line1.clone(), right: line2.clone(), sum: sum.clone() },
                Fact::Member { point: whole.clone(), set: PointSet::NuSStar { of: sum }, holds: true },
                Fact::Member { point: whole.clone(), set: PointSet::NuSStar { of: line1 }, holds: false },
                Fact::Member { point: whole.clone(), set: PointSet::NuSStar { of: line2 }, holds: false },
                Fact::SecondaryCotop { holds: false },
                Fact::T0 { holds: false },
                Fact::Connected { space: SpaceKind::Sl, holds: true },
            ],
        );
        assert_eq!(recheck(&good, &m).unwrap(), Recheck::Confirmed);
        let bad = Witness::new("wrong", vec![Fact::T0 { holds: true }, Fact::Second { of: whole, holds: true }]);
        assert_eq!(recheck(&bad, &m).unwrap(), Recheck::Refuted(vec![0]));
    }

    #[test]
    fn rho_and_homeomorphism_facts() {
        let m = module(&[6], &[&[0]]);
        let five = crate::hom::Homomorphism::from_images(&m, &m, vec![5]).unwrap();
        let w = Witness::new(
            "rho",
            vec![
                Fact::RhoHomeomorphism { map: MapRef(five), holds: true },
                Fact::Homeomorphic { left: m.clone(), right: m.clone(), holds: true },
                Fact::T1 { holds: true },
                Fact::Spectral { holds: true },
                Fact::TrivialIdempotents { holds: false },
            ],
        );
        assert_eq!(recheck(&w, &m).unwrap(), Recheck::Confirmed);
    }
}
