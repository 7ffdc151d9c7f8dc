//! Module homomorphisms M → M′ between direct sums of cyclics.
//!
//! A homomorphism is fixed by the images y_j of the factor generators, and
//! y_j is admissible exactly when A_j kills it. The full element table is
//! materialized for every map.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::module::FiniteModule;
use crate::ring::RingElement;
use crate::spectrum::ideal_generators;

pub const DEFAULT_HOM_CAP: usize = 4096;

#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: FiniteModule,
    target: FiniteModule,
    images: Vec<usize>,
    table: Vec<usize>,
}

/// The coefficient ring elements r_j with x = Σ_j r_j g_j.
fn coefficients(module: &FiniteModule, x: usize) -> Vec<RingElement> {
    let ring = module.ring();
    let mut residues = vec![vec![0u64; ring.arity()]; module.factors().len()];
    for (c, d) in module.coords().iter().zip(module.digits(x)) {
        residues[c.factor][c.component] = d;
    }
    residues.into_iter().map(|r| ring.element(r).expect("digits are below the moduli")).collect()
}

/// Elements of `target` killed by the factor ideal A_j of `source`.
fn admissible_images(source: &FiniteModule, target: &FiniteModule, j: usize) -> Vec<usize> {
    let gens = ideal_generators(&source.factors()[j]);
    (0..target.order()).filter(|&y| gens.iter().all(|g| target.scale(g, y) == 0)).collect()
}

impl Homomorphism {
    pub fn from_images(source: &FiniteModule, target: &FiniteModule, images: Vec<usize>) -> Result<Self> {
        source.ring().check_same(target.ring())?;
        if images.len() != source.factors().len() {
            return Err(Error::NotHomomorphism(format!(
                "{} generator images for {} factors",
                images.len(),
                source.factors().len()
            )));
        }
        for (j, &y) in images.iter().enumerate() {
            if y >= target.order() {
                return Err(Error::NoSuchElement(y as u64));
            }
            for g in ideal_generators(&source.factors()[j]) {
                if target.scale(&g, y) != 0 {
                    return Err(Error::NotHomomorphism(format!(
                        "image {} of generator {j} is not killed by {}",
                        target.element_text(y),
                        source.factors()[j]
                    )));
                }
            }
        }
        let table = (0..source.order())
            .map(|x| {
                coefficients(source, x)
                    .iter()
                    .zip(&images)
                    .fold(0, |acc, (r, &y)| target.add(acc, target.scale(r, y)))
            })
            .collect();
        Ok(Homomorphism { source: source.clone(), target: target.clone(), images, table })
    }

    pub fn identity(module: &FiniteModule) -> Self {
        let images = (0..module.factors().len()).map(|j| module.factor_generator(j)).collect();
        Self::from_images(module, module, images).expect("generators map to themselves")
    }

    pub fn source(&self) -> &FiniteModule {
        &self.source
    }

    pub fn target(&self) -> &FiniteModule {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// A nonzero kernel element, if any.
    pub fn kernel_witness(&self) -> Option<usize> {
        (1..self.source.order()).find(|&x| self.table[x] == 0)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_witness().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = self.target.empty_set();
        for &y in &self.table {
            hit.insert(y);
        }
        hit.is_full()
    }

    pub fn image_of(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.target.empty_set();
        for x in set.ones() {
            out.insert(self.table[x]);
        }
        out
    }

    pub fn preimage_of(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.source.empty_set();
        for (x, &y) in self.table.iter().enumerate() {
            if set.contains(y) {
                out.insert(x);
            }
        }
        out
    }

    /// Additivity and R-linearity over every element pair and scalar.
    pub fn check_exhaustively(&self) -> bool {
        let (m, n) = (&self.source, &self.target);
        (0..m.order()).all(|a| {
            (0..m.order()).all(|b| self.table[m.add(a, b)] == n.add(self.table[a], self.table[b]))
                && m.ring().elements().all(|r| self.table[m.scale(&r, a)] == n.scale(&r, self.table[a]))
        })
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(j, &y)| format!("g{} -> {}", j + 1, self.target.element_text(y)))
            .collect();
        parts.join(", ")
    }
}

/// All homomorphisms M → M′ in lexicographic order of generator images,
/// optionally only the injective ones. Fails when the number of candidate
/// image tuples exceeds `cap`.
pub fn enumerate_homomorphisms(
    source: &FiniteModule,
    target: &FiniteModule,
    injective_only: bool,
    cap: usize,
) -> Result<Vec<Homomorphism>> {
    source.ring().check_same(target.ring())?;
    let choices: Vec<Vec<usize>> = (0..source.factors().len()).map(|j| admissible_images(source, target, j)).collect();
    let count: u128 = choices.iter().map(|c| c.len() as u128).product();
    if count > cap as u128 {
        return Err(Error::TooLarge { size: count, limit: cap });
    }
    if injective_only && source.order() > target.order() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut tuple = vec![0usize; choices.len()];
    loop {
        let images = tuple.iter().zip(&choices).map(|(&k, c)| c[k]).collect();
        let f = Homomorphism::from_images(source, target, images)?;
        if !injective_only || f.is_injective() {
            out.push(f);
        }
        // odometer, last position fastest
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < choices[pos].len() {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::build_module;
    use crate::ring::{build_ring, Ideal};

    fn module(moduli: &[u64], factors: &[&[u64]]) -> FiniteModule {
        let r = build_ring(moduli).unwrap();
        let fs: Vec<Ideal> = factors.iter().map(|g| r.ideal(g).unwrap()).collect();
        build_module(&r, &fs).unwrap()
    }

    #[test]
    fn endomorphisms_of_z6() {
        let m = module(&[6], &[&[0]]);
        let all = enumerate_homomorphisms(&m, &m, false, DEFAULT_HOM_CAP).unwrap();
        let images: Vec<usize> = all.iter().map(|f| f.images()[0]).collect();
        assert_eq!(images, vec![0, 1, 2, 3, 4, 5]);
        let mono = enumerate_homomorphisms(&m, &m, true, DEFAULT_HOM_CAP).unwrap();
        let images: Vec<usize> = mono.iter().map(|f| f.images()[0]).collect();
        assert_eq!(images, vec![1, 5]);
        assert!(all.iter().any(|f| f.table() == Homomorphism::identity(&m).table()));
    }

    #[test]
    fn z2_into_z8() {
        let r = build_ring(&[8]).unwrap();
        let z2 = build_module(&r, &[r.ideal(&[2]).unwrap()]).unwrap();
        let z8 = build_module(&r, &[r.zero_ideal()]).unwrap();
        let mono = enumerate_homomorphisms(&z2, &z8, true, DEFAULT_HOM_CAP).unwrap();
        assert_eq!(mono.len(), 1);
        assert_eq!(mono[0].images(), &[4]);
        assert!(Homomorphism::from_images(&z2, &z8, vec![2]).is_err());
    }

    #[test]
    fn enumerated_maps_are_homomorphisms() {
        let pairs = [
            (module(&[4], &[&[0], &[2]]), module(&[4], &[&[0]])),
            (module(&[6, 2], &[&[2, 1], &[0, 0]]), module(&[6, 2], &[&[0, 0]])),
            (module(&[2], &[&[0], &[0]]), module(&[2], &[&[0], &[0]])),
        ];
        for (m, n) in pairs {
            let all = enumerate_homomorphisms(&m, &n, false, DEFAULT_HOM_CAP).unwrap();
            assert!(!all.is_empty());
            for f in &all {
                assert!(f.check_exhaustively());
            }
            // count matches a brute-force count of additive R-linear tables
            // on generators: every admissible image tuple gives a distinct map
            let mut tables: Vec<&[usize]> = all.iter().map(|f| f.table()).collect();
            tables.sort();
            tables.dedup();
            assert_eq!(tables.len(), all.len());
        }
        let f2 = module(&[2], &[&[0], &[0]]);
        // GL_2(F_2) has 6 elements
        assert_eq!(enumerate_homomorphisms(&f2, &f2, true, DEFAULT_HOM_CAP).unwrap().len(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let m = module(&[8], &[&[0], &[0], &[0]]);
        assert!(enumerate_homomorphisms(&m, &m, false, 1000).is_err());
    }
}
