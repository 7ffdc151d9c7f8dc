//! Point maps between finite spaces: φ, ψ, the induced ρ, and their
//! topological properties.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::ring::Ideal;
use crate::spectrum::ModuleAnalysis;
use crate::topology::{complement, preimage, FiniteTopology, Point};
use crate::variety::{build_space, SpaceKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapLabel {
    Phi,
    Psi,
    Rho,
    Custom,
}

#[derive(Debug, Clone)]
pub struct SpectrumMap {
    pub source: FiniteTopology,
    pub target: FiniteTopology,
    pub assignment: Vec<usize>,
    pub label: MapLabel,
    /// Set when the source space is empty.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum MapWitness {
    /// Two source points with one image.
    Injective { points: (usize, usize) },
    /// A target point with no preimage.
    Surjective { point: usize },
    /// A closed target set whose preimage is not closed.
    Continuous { closed_set: Vec<usize> },
    /// A closed source set whose image is not closed.
    ClosedMap { closed_set: Vec<usize> },
    /// An open source set whose image is not open.
    OpenMap { open_set: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapReport {
    pub injective: bool,
    pub surjective: bool,
    pub continuous: bool,
    pub open_map: bool,
    pub closed_map: bool,
    pub homeomorphism: bool,
    pub witnesses: Vec<MapWitness>,
}

impl SpectrumMap {
    pub fn new(source: FiniteTopology, target: FiniteTopology, assignment: Vec<usize>, label: MapLabel) -> Result<Self> {
        if assignment.len() != source.len() || assignment.iter().any(|&y| y >= target.len()) {
            return Err(Error::Invariant("assignment does not map source points into the target".into()));
        }
        let degenerate = source.is_empty();
        Ok(SpectrumMap { source, target, assignment, label, degenerate })
    }

    pub fn image(&self, set: &FixedBitSet) -> FixedBitSet {
        self.source.image(&self.assignment, set, self.target.len())
    }

    pub fn preimage(&self, set: &FixedBitSet) -> FixedBitSet {
        preimage(&self.assignment, set)
    }
}

fn prime_position(target: &FiniteTopology, p: &Ideal) -> usize {
    target
        .points()
        .iter()
        .position(|q| matches!(q, Point::Prime(q) if q == p))
        .expect("image is a prime of the quotient ring")
}

/// φ: Spec^L(M) → Spec(R̄), K ↦ √Ann_R(K)/Ann_R(M).
pub fn phi_map(analysis: &ModuleAnalysis) -> Result<SpectrumMap> {
    let source = build_space(analysis, SpaceKind::Sl)?;
    let target = build_space(analysis, SpaceKind::BaseRingSpec)?;
    let q = analysis.module().quotient();
    let assignment = analysis
        .spec_l()
        .iter()
        .map(|&id| Ok(prime_position(&target, &q.push_ideal(analysis.rad_ann(id))?)))
        .collect::<Result<Vec<_>>>()?;
    SpectrumMap::new(source, target, assignment, MapLabel::Phi)
}

/// ψ: Spec^s(M) → Spec(R̄), S ↦ Ann_R(S)/Ann_R(M).
pub fn psi_map(analysis: &ModuleAnalysis) -> Result<SpectrumMap> {
    let source = build_space(analysis, SpaceKind::SecondZariski)?;
    let target = build_space(analysis, SpaceKind::BaseRingSpec)?;
    let q = analysis.module().quotient();
    let assignment = analysis
        .spec_s()
        .iter()
        .map(|&id| Ok(prime_position(&target, &q.push_ideal(analysis.ann(id))?)))
        .collect::<Result<Vec<_>>>()?;
    SpectrumMap::new(source, target, assignment, MapLabel::Psi)
}

pub fn map_report(m: &SpectrumMap) -> MapReport {
    let mut witnesses = Vec::new();

    let mut first_with_image = vec![None; m.target.len()];
    let mut injective = true;
    for (x, &y) in m.assignment.iter().enumerate() {
        match first_with_image[y] {
            Some(w) if injective => {
                injective = false;
                witnesses.push(MapWitness::Injective { points: (w, x) });
            }
            None => first_with_image[y] = Some(x),
            _ => {}
        }
    }
    let surjective = match first_with_image.iter().position(Option::is_none) {
        Some(point) => {
            witnesses.push(MapWitness::Surjective { point });
            false
        }
        None => true,
    };
    let continuous = match m.target.closed_sets().iter().find(|c| !m.source.is_closed(&m.preimage(c))) {
        Some(c) => {
            witnesses.push(MapWitness::Continuous { closed_set: c.ones().collect() });
            false
        }
        None => true,
    };
    let open_map = match m.source.closed_sets().iter().map(complement).find(|o| !m.target.is_open(&m.image(o))) {
        Some(o) => {
            witnesses.push(MapWitness::OpenMap { open_set: o.ones().collect() });
            false
        }
        None => true,
    };
    let closed_map = match m.source.closed_sets().iter().find(|c| !m.target.is_closed(&m.image(c))) {
        Some(c) => {
            witnesses.push(MapWitness::ClosedMap { closed_set: c.ones().collect() });
            false
        }
        None => true,
    };
    let homeomorphism = injective && surjective && continuous && open_map;
    MapReport { injective, surjective, continuous, open_map, closed_map, homeomorphism, witnesses }
}

/// Preimage of V^R̄(Ī) under φ or ψ, checked against ν^s(Ann_M(I)) for φ and
/// V^s(Ann_M(I)) for ψ.
pub fn preimage_closed(analysis: &ModuleAnalysis, m: &SpectrumMap, ideal: &Ideal) -> Result<FixedBitSet> {
    let ann_m = analysis.module().annihilator();
    if !ann_m.is_subset(ideal) {
        return Err(Error::BelowAnnihilator { ideal: ideal.to_string(), annihilator: ann_m.to_string() });
    }
    let pushed = analysis.module().quotient().push_ideal(ideal)?;
    let mut v = FixedBitSet::with_capacity(m.target.len());
    for (k, p) in m.target.points().iter().enumerate() {
        if matches!(p, Point::Prime(p) if pushed.is_subset(p)) {
            v.insert(k);
        }
    }
    let pre = m.preimage(&v);
    let killed = analysis.annihilated(ideal)?;
    let expected = match m.label {
        MapLabel::Phi => analysis.nu_s(killed),
        MapLabel::Psi => analysis.v_s(killed),
        _ => return Ok(pre),
    };
    if pre == expected {
        Ok(pre)
    } else {
        Err(Error::Invariant(format!("preimage of V({ideal}) differs from the variety of Ann_M({ideal})")))
    }
}

/// ρ: Spec^L(M) → Spec^L(M′), K ↦ f(K), for a monomorphism f.
pub fn induced_rho(f: &Homomorphism, source: &ModuleAnalysis, target: &ModuleAnalysis) -> Result<SpectrumMap> {
    if source.module() != f.source() || target.module() != f.target() {
        return Err(Error::ParentMismatch);
    }
    if let Some(x) = f.kernel_witness() {
        return Err(Error::NotInjective(format!("{} maps to 0", f.source().element_text(x))));
    }
    let assignment = source
        .spec_l()
        .iter()
        .map(|&id| {
            let image = f.image_of(source.lattice().set(id));
            let image_id = target.lattice().id_of(&image).expect("the image of a submodule is a submodule");
            target.spec_l_position(image_id).ok_or_else(|| Error::NotInSpectrum(target.text(image_id)))
        })
        .collect::<Result<Vec<_>>>()?;
    let src = build_space(source, SpaceKind::Sl)?;
    let tgt = build_space(target, SpaceKind::Sl)?;
    SpectrumMap::new(src, tgt, assignment, MapLabel::Rho)
}

/// f^{-1}(N′) for N′ ∈ Spec^L(M′) inside f(M); the result must lie in Spec^L(M).
pub fn preimage_point_spectrum(
    f: &Homomorphism,
    source: &ModuleAnalysis,
    target: &ModuleAnalysis,
    n_prime: usize,
) -> Result<usize> {
    if !target.in_spec_l(n_prime) {
        return Err(Error::NotInSpectrum(target.text(n_prime)));
    }
    let mut whole = f.source().empty_set();
    whole.insert_range(..);
    if !target.lattice().set(n_prime).is_subset(&f.image_of(&whole)) {
        return Err(Error::NotInImage(target.text(n_prime)));
    }
    let pre = f.preimage_of(target.lattice().set(n_prime));
    let id = source.lattice().id_of(&pre).expect("preimages of submodules are submodules");
    if source.in_spec_l(id) {
        Ok(id)
    } else {
        Err(Error::Invariant(format!("f^-1({}) = {} is not in Spec^L", target.text(n_prime), source.text(id))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{enumerate_homomorphisms, DEFAULT_HOM_CAP};
    use crate::module::{build_module, FiniteModule};
    use crate::ring::build_ring;

    fn module(moduli: &[u64], factors: &[&[u64]]) -> FiniteModule {
        let r = build_ring(moduli).unwrap();
        let fs: Vec<Ideal> = factors.iter().map(|g| r.ideal(g).unwrap()).collect();
        build_module(&r, &fs).unwrap()
    }

    fn analysis(moduli: &[u64], factors: &[&[u64]]) -> ModuleAnalysis {
        ModuleAnalysis::new(&module(moduli, factors)).unwrap()
    }

    #[test]
    fn phi_for_z8() {
        let a = analysis(&[8], &[&[0]]);
        let phi = phi_map(&a).unwrap();
        assert_eq!(phi.assignment, vec![0, 0, 0]);
        let r = map_report(&phi);
        assert!(r.continuous && r.surjective && !r.injective && !r.homeomorphism);
        assert_eq!(r.witnesses[0], MapWitness::Injective { points: (0, 1) });
        let ring = a.module().ring().clone();
        assert_eq!(preimage_closed(&a, &phi, &ring.ideal(&[2]).unwrap()).unwrap().count_ones(..), 3);
        assert_eq!(preimage_closed(&a, &phi, &ring.zero_ideal()).unwrap().count_ones(..), 3);
    }

    #[test]
    fn phi_and_psi_for_z6() {
        let a = analysis(&[6], &[&[0]]);
        let phi = phi_map(&a).unwrap();
        let r = map_report(&phi);
        assert!(r.homeomorphism && r.open_map && r.closed_map && r.witnesses.is_empty());
        let psi = psi_map(&a).unwrap();
        let r = map_report(&psi);
        assert!(r.injective && r.surjective);
        let ring = a.module().ring().clone();
        let pre = preimage_closed(&a, &phi, &ring.ideal(&[2]).unwrap()).unwrap();
        assert_eq!(a.spec_l_text(&pre), vec!["{0,3}"]);
        preimage_closed(&a, &psi, &ring.ideal(&[3]).unwrap()).unwrap();
    }

    #[test]
    fn preimage_requires_annihilator() {
        let a = analysis(&[8], &[&[4]]);
        let phi = phi_map(&a).unwrap();
        let ring = a.module().ring().clone();
        assert!(matches!(
            preimage_closed(&a, &phi, &ring.ideal(&[8]).unwrap()),
            Err(Error::BelowAnnihilator { .. })
        ));
    }

    #[test]
    fn vector_space_phi_constant() {
        let a = analysis(&[3], &[&[0], &[0]]);
        let phi = phi_map(&a).unwrap();
        assert!(phi.assignment.iter().all(|&y| y == 0));
        assert_eq!(phi.target.len(), 1);
    }

    #[test]
    fn rho_maps() {
        let z6 = analysis(&[6], &[&[0]]);
        let five = Homomorphism::from_images(z6.module(), z6.module(), vec![5]).unwrap();
        let rho = induced_rho(&five, &z6, &z6).unwrap();
        assert_eq!(rho.assignment, vec![0, 1]);
        assert!(map_report(&rho).homeomorphism);
        let id = Homomorphism::identity(z6.module());
        assert_eq!(induced_rho(&id, &z6, &z6).unwrap().assignment, vec![0, 1]);
        let two = Homomorphism::from_images(z6.module(), z6.module(), vec![2]).unwrap();
        assert!(matches!(induced_rho(&two, &z6, &z6), Err(Error::NotInjective(_))));

        let r = build_ring(&[8]).unwrap();
        let z2 = ModuleAnalysis::new(&build_module(&r, &[r.ideal(&[2]).unwrap()]).unwrap()).unwrap();
        let z8 = ModuleAnalysis::new(&build_module(&r, &[r.zero_ideal()]).unwrap()).unwrap();
        let f = enumerate_homomorphisms(z2.module(), z8.module(), true, DEFAULT_HOM_CAP).unwrap().remove(0);
        let four = z8.lattice().ids().find(|&i| z8.text(i) == "{0,4}").unwrap();
        let pre = preimage_point_spectrum(&f, &z2, &z8, four).unwrap();
        assert_eq!(pre, z2.lattice().whole());
        let k = z8.lattice().ids().find(|&i| z8.text(i) == "{0,2,4,6}").unwrap();
        assert!(matches!(preimage_point_spectrum(&f, &z2, &z8, k), Err(Error::NotInImage(_))));
        let rho = induced_rho(&f, &z2, &z8).unwrap();
        let rep = map_report(&rho);
        assert!(rep.injective && rep.continuous);
    }
}
