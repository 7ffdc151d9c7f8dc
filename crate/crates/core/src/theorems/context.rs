//! Shared per-instance state for the verifiers: the analysis, the three
//! spaces, φ and ψ, variety tables over the whole lattice, and the
//! monomorphism families used by the relational statements.

use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::{enumerate_homomorphisms, Homomorphism, DEFAULT_HOM_CAP};
use crate::maps::{map_report, phi_map, psi_map, MapReport, SpectrumMap};
use crate::module::{build_module, FiniteModule, Submodule};
use crate::ring::{zariski_on_spec, Ideal};
use crate::spectrum::ModuleAnalysis;
use crate::topology::{FiniteTopology, Point};
use crate::variety::{build_space, SpaceKind};

use super::witness::{Fact, PointSet};
use super::Check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    /// Largest |Spec^L| whose full powerset is enumerated.
    pub subset_cap: usize,
    pub seed: u64,
    /// Largest number of unordered pairs enumerated exhaustively.
    pub pair_budget: usize,
    /// Largest number of candidate image tuples in a homomorphism search.
    pub hom_cap: usize,
    /// Sampled subsets when the powerset is too large.
    pub sample_size: usize,
    /// Largest derived partner module, in elements.
    pub partner_limit: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            subset_cap: 12,
            seed: 0,
            pair_budget: 1 << 18,
            hom_cap: DEFAULT_HOM_CAP,
            sample_size: 4096,
            partner_limit: 128,
        }
    }
}

/// A module with its analysis and SL-space.
#[derive(Debug)]
pub struct Partner {
    pub analysis: Arc<ModuleAnalysis>,
    pub sl: FiniteTopology,
}

impl Partner {
    pub fn new(analysis: Arc<ModuleAnalysis>) -> Result<Self> {
        let sl = build_space(&analysis, SpaceKind::Sl)?;
        Ok(Partner { analysis, sl })
    }

    pub fn module(&self) -> &FiniteModule {
        self.analysis.module()
    }
}

/// All monomorphisms between two modules, or a fallback list when the search
/// is over budget.
#[derive(Debug)]
pub struct MonoFamily {
    pub source: Arc<Partner>,
    pub target: Arc<Partner>,
    pub maps: Vec<Homomorphism>,
    pub bound: Option<String>,
}

pub struct VerifyContext {
    analysis: Arc<ModuleAnalysis>,
    config: VerifyConfig,
    label: String,
    corpus_partners: Vec<Arc<ModuleAnalysis>>,
    primary: Arc<Partner>,
    second: FiniteTopology,
    base: FiniteTopology,
    base_primes: Vec<Ideal>,
    ring_top: FiniteTopology,
    ring_primes: Vec<Ideal>,
    phi: SpectrumMap,
    psi: SpectrumMap,
    phi_report: MapReport,
    psi_report: MapReport,
    nu: OnceLock<Vec<FixedBitSet>>,
    nu_star: OnceLock<Vec<FixedBitSet>>,
    v: OnceLock<Vec<FixedBitSet>>,
    v_star: OnceLock<Vec<FixedBitSet>>,
    monos: OnceLock<Result<Vec<MonoFamily>>>,
}

pub(crate) fn fnv1a(text: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

impl VerifyContext {
    pub fn new(analysis: Arc<ModuleAnalysis>, config: VerifyConfig) -> Result<Self> {
        let label = analysis.module().to_string();
        Self::with_partners(analysis, config, label, Vec::new())
    }

    /// `partners` are further modules over the same ring to pair with this
    /// one in the monomorphism statements.
    pub fn with_partners(
        analysis: Arc<ModuleAnalysis>,
        config: VerifyConfig,
        label: String,
        partners: Vec<Arc<ModuleAnalysis>>,
    ) -> Result<Self> {
        let primary = Arc::new(Partner::new(analysis.clone())?);
        let second = build_space(&analysis, SpaceKind::SecondZariski)?;
        let base = build_space(&analysis, SpaceKind::BaseRingSpec)?;
        let q = analysis.module().quotient();
        let base_primes = base
            .points()
            .iter()
            .map(|p| match p {
                Point::Prime(p) => q.lift_ideal(p),
                Point::Submodule(_) => Err(Error::Invariant("base space point is not a prime".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        let ring = analysis.module().ring();
        let ring_top = zariski_on_spec(ring);
        let ring_primes = ring_top
            .points()
            .iter()
            .filter_map(|p| match p {
                Point::Prime(p) => Some(p.clone()),
                Point::Submodule(_) => None,
            })
            .collect();
        let phi = phi_map(&analysis)?;
        let psi = psi_map(&analysis)?;
        let phi_report = map_report(&phi);
        let psi_report = map_report(&psi);
        let corpus_partners = partners
            .into_iter()
            .filter(|p| p.module().ring() == ring && p.module() != analysis.module())
            .collect();
        Ok(VerifyContext {
            analysis,
            config,
            label,
            corpus_partners,
            primary,
            second,
            base,
            base_primes,
            ring_top,
            ring_primes,
            phi,
            psi,
            phi_report,
            psi_report,
            nu: OnceLock::new(),
            nu_star: OnceLock::new(),
            v: OnceLock::new(),
            v_star: OnceLock::new(),
            monos: OnceLock::new(),
        })
    }

    pub fn analysis(&self) -> &ModuleAnalysis {
        &self.analysis
    }

    pub fn module(&self) -> &FiniteModule {
        self.analysis.module()
    }

    pub fn config(&self) -> &VerifyConfig {
        &self.config
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn sl(&self) -> &FiniteTopology {
        &self.primary.sl
    }

    pub fn second(&self) -> &FiniteTopology {
        &self.second
    }

    /// Spec(R̄), with points in the order of [`Self::base_primes`].
    pub fn base(&self) -> &FiniteTopology {
        &self.base
    }

    /// The primes of R containing Ann_R(M), one per point of Spec(R̄).
    pub fn base_primes(&self) -> &[Ideal] {
        &self.base_primes
    }

    /// Spec(R) with its Zariski topology.
    pub fn ring_top(&self) -> &FiniteTopology {
        &self.ring_top
    }

    pub fn ring_primes(&self) -> &[Ideal] {
        &self.ring_primes
    }

    pub fn phi(&self) -> &SpectrumMap {
        &self.phi
    }

    pub fn psi(&self) -> &SpectrumMap {
        &self.psi
    }

    pub fn phi_report(&self) -> &MapReport {
        &self.phi_report
    }

    pub fn psi_report(&self) -> &MapReport {
        &self.psi_report
    }

    pub fn n_lattice(&self) -> usize {
        self.analysis.lattice().len()
    }

    pub fn n_l(&self) -> usize {
        self.analysis.spec_l().len()
    }

    pub fn n_s(&self) -> usize {
        self.analysis.spec_s().len()
    }

    pub fn sub(&self, id: usize) -> Submodule {
        self.analysis.submodule(id)
    }

    /// The Spec^L point at position `k`.
    pub fn point(&self, k: usize) -> Submodule {
        self.analysis.submodule(self.analysis.spec_l()[k])
    }

    pub fn points(&self, set: &FixedBitSet) -> Vec<Submodule> {
        set.ones().map(|k| self.point(k)).collect()
    }

    /// The Spec^s point at position `k`.
    pub fn s_point(&self, k: usize) -> Submodule {
        self.analysis.submodule(self.analysis.spec_s()[k])
    }

    /// √Ann_R(K) for the Spec^L point at position `k`.
    pub fn prime_of(&self, k: usize) -> &Ideal {
        self.analysis.rad_ann(self.analysis.spec_l()[k])
    }

    pub fn nu(&self, id: usize) -> &FixedBitSet {
        &self.nu.get_or_init(|| self.analysis.lattice().ids().map(|i| self.analysis.nu_s(i)).collect())[id]
    }

    pub fn nu_star(&self, id: usize) -> &FixedBitSet {
        &self.nu_star.get_or_init(|| self.analysis.lattice().ids().map(|i| self.analysis.nu_s_star(i)).collect())[id]
    }

    pub fn v(&self, id: usize) -> &FixedBitSet {
        &self.v.get_or_init(|| self.analysis.lattice().ids().map(|i| self.analysis.v_s(i)).collect())[id]
    }

    pub fn v_star(&self, id: usize) -> &FixedBitSet {
        &self.v_star.get_or_init(|| self.analysis.lattice().ids().map(|i| self.analysis.v_s_star(i)).collect())[id]
    }

    /// Spec^L positions in the fiber over the prime `p` of R.
    pub fn fiber(&self, p: &Ideal) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.n_l());
        set.extend((0..self.n_l()).filter(|&k| self.prime_of(k) == p));
        set
    }

    /// Whether every fiber over a prime of R has at most one point, with a
    /// violating prime and two of its points otherwise.
    pub fn fibers_at_most_one(&self) -> std::result::Result<(), (Ideal, usize, usize)> {
        for p in &self.ring_primes {
            let f = self.fiber(p);
            let mut ones = f.ones();
            if let (Some(a), Some(b)) = (ones.next(), ones.next()) {
                return Err((p.clone(), a, b));
            }
        }
        Ok(())
    }

    /// The point of Spec(R̄) for a prime of R containing Ann_R(M).
    pub fn base_position(&self, p: &Ideal) -> Option<usize> {
        self.base_primes.iter().position(|q| q == p)
    }

    pub fn base_set(&self, primes: impl IntoIterator<Item = Ideal>) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.base_primes.len());
        for p in primes {
            if let Some(k) = self.base_position(&p) {
                set.insert(k);
            }
        }
        set
    }

    /// V^R̄(Ī) over the base points, for an ideal I of R.
    pub fn base_v(&self, ideal: &Ideal) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.base_primes.len());
        set.extend((0..self.base_primes.len()).filter(|&k| ideal.is_subset(&self.base_primes[k])));
        set
    }

    pub fn member(&self, k: usize, set: PointSet, holds: bool) -> Fact {
        Fact::Member { point: self.point(k), set, holds }
    }

    pub fn s_member(&self, k: usize, set: PointSet, holds: bool) -> Fact {
        Fact::Member { point: self.s_point(k), set, holds }
    }

    /// A point in exactly one of two sets, if any.
    pub fn first_difference(a: &FixedBitSet, b: &FixedBitSet) -> Option<usize> {
        a.symmetric_difference(b).next()
    }

    pub fn rng(&self, tag: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed ^ fnv1a(&format!("{}#{}", self.label, tag)))
    }

    /// Unordered pairs (i, j), i ≤ j < n: all of them within the pair
    /// budget, otherwise a seeded sample and a bound on `check`.
    pub fn pairs(&self, n: usize, tag: &str, check: &mut Check) -> Vec<(usize, usize)> {
        let total = n * (n + 1) / 2;
        if total <= self.config.pair_budget {
            return (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        }
        check.bound(format!("{tag}: {} of {total} pairs sampled", self.config.pair_budget));
        let mut rng = self.rng(tag);
        (0..self.config.pair_budget)
            .map(|_| {
                let i = (rng.next_u64() % n as u64) as usize;
                let j = (rng.next_u64() % n as u64) as usize;
                (i.min(j), i.max(j))
            })
            .collect()
    }

    /// Subsets of Spec^L: the full powerset up to the subset cap, otherwise
    /// the empty set, the whole space, all singletons and a seeded sample.
    pub fn subsets(&self, tag: &str, check: &mut Check) -> Vec<FixedBitSet> {
        let n = self.n_l();
        if n <= self.config.subset_cap {
            return (0u64..1 << n)
                .map(|mask| {
                    let mut set = FixedBitSet::with_capacity(n);
                    set.extend((0..n).filter(|&k| mask >> k & 1 == 1));
                    set
                })
                .collect();
        }
        check.bound(format!(
            "{tag}: |Spec^L| = {n} exceeds the subset cap {}; {} sampled subsets plus the empty set, the whole space and singletons",
            self.config.subset_cap, self.config.sample_size
        ));
        let mut out = vec![FixedBitSet::with_capacity(n)];
        let mut full = FixedBitSet::with_capacity(n);
        full.insert_range(..);
        out.push(full);
        for k in 0..n {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert(k);
            out.push(s);
        }
        let mut rng = self.rng(tag);
        let mut order: Vec<usize> = (0..n).collect();
        for _ in 0..self.config.sample_size {
            let size = (rng.next_u64() % (n as u64 + 1)) as usize;
            for i in 0..size {
                let j = i + (rng.next_u64() % (n - i) as u64) as usize;
                order.swap(i, j);
            }
            let mut s = FixedBitSet::with_capacity(n);
            s.extend(order[..size].iter().copied());
            out.push(s);
        }
        out
    }

    /// Monomorphism families for the relational statements, computed once.
    pub fn monos(&self) -> Result<&[MonoFamily]> {
        match self.monos.get_or_init(|| self.build_monos()) {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    fn derived(&self, module: FiniteModule) -> Result<Arc<Partner>> {
        if &module == self.module() {
            return Ok(self.primary.clone());
        }
        Ok(Arc::new(Partner::new(Arc::new(ModuleAnalysis::new(&module)?))?))
    }

    fn build_monos(&self) -> Result<Vec<MonoFamily>> {
        let m = self.module();
        let ring = m.ring();
        let factors = m.factors();
        let mut out = Vec::new();

        // M → M, with the identity as fallback
        out.push(self.family(self.primary.clone(), self.primary.clone(), || vec![Homomorphism::identity(m)])?);

        // M → M with the factors reversed
        if factors.len() > 1 {
            let reversed: Vec<Ideal> = factors.iter().rev().cloned().collect();
            let rev = build_module(ring, &reversed)?;
            if &rev != m {
                let target = self.derived(rev.clone())?;
                let n = factors.len();
                out.push(self.family(self.primary.clone(), target, || {
                    let images = (0..n).map(|j| rev.factor_generator(n - 1 - j)).collect();
                    vec![Homomorphism::from_images(m, &rev, images).expect("factor swap is a homomorphism")]
                })?);
            }
        }

        // M → M ⊕ R/A_0
        let extra_order: u64 = factors[0].generators().iter().product();
        if m.order() * extra_order as usize <= self.config.partner_limit {
            let mut bigger = factors.to_vec();
            bigger.push(factors[0].clone());
            let sum = build_module(ring, &bigger)?;
            let target = self.derived(sum.clone())?;
            out.push(self.family(self.primary.clone(), target, || {
                let extra = sum.coords().len() - m.coords().len();
                let images = (0..factors.len())
                    .map(|j| {
                        let mut digits = m.digits(m.factor_generator(j));
                        digits.extend(std::iter::repeat_n(0, extra));
                        sum.index(&digits).expect("inclusion digits are in range")
                    })
                    .collect();
                vec![Homomorphism::from_images(m, &sum, images).expect("inclusion is a homomorphism")]
            })?);
        }

        // R/A_j → M for each distinct factor
        if factors.len() > 1 {
            let mut seen: Vec<&Ideal> = Vec::new();
            for (j, a) in factors.iter().enumerate() {
                if seen.contains(&a) {
                    continue;
                }
                seen.push(a);
                let cyclic = build_module(ring, std::slice::from_ref(a))?;
                let source = self.derived(cyclic.clone())?;
                out.push(self.family(source, self.primary.clone(), || {
                    vec![Homomorphism::from_images(&cyclic, m, vec![m.factor_generator(j)])
                        .expect("factor inclusion is a homomorphism")]
                })?);
            }
        }

        // corpus partners, both directions
        for p in &self.corpus_partners {
            let partner = Arc::new(Partner::new(p.clone())?);
            for (s, t) in [(self.primary.clone(), partner.clone()), (partner.clone(), self.primary.clone())] {
                if s.module().order() <= t.module().order() {
                    out.push(self.family(s, t, Vec::new)?);
                }
            }
        }
        Ok(out)
    }

    fn family(
        &self,
        source: Arc<Partner>,
        target: Arc<Partner>,
        fallback: impl FnOnce() -> Vec<Homomorphism>,
    ) -> Result<MonoFamily> {
        match enumerate_homomorphisms(source.module(), target.module(), true, self.config.hom_cap) {
            Ok(maps) => Ok(MonoFamily { source, target, maps, bound: None }),
            Err(Error::TooLarge { size, limit }) => {
                let bound = Some(format!(
                    "monomorphisms {} => {}: {size} candidate image tuples exceed the cap {limit}; explicit maps only",
                    source.module(),
                    target.module()
                ));
                Ok(MonoFamily { source, target, maps: fallback(), bound })
            }
            Err(e) => Err(e),
        }
    }
}

/// ρ(K) = f(K) as Spec^L positions, or the first point whose image leaves
/// Spec^L(M′).
pub fn rho_assignment(f: &Homomorphism, source: &ModuleAnalysis, target: &ModuleAnalysis) -> std::result::Result<Vec<usize>, (usize, usize)> {
    source
        .spec_l()
        .iter()
        .enumerate()
        .map(|(k, &id)| {
            let image = target.lattice().id_of(&f.image_of(source.lattice().set(id))).expect("images are submodules");
            target.spec_l_position(image).ok_or((k, image))
        })
        .collect()
}
