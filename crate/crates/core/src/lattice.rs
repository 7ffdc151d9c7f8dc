//! The complete submodule lattice of a finite module.
//!
//! Enumeration walks covering relations upwards from the zero submodule. If
//! A ⊂ B is a cover then B/A is simple, so B = A + Rc for any c ∈ B \ A and
//! m·c ⊆ A for a maximal ideal m of R̄. Conversely every such c gives a cover
//! A + Rc = A + Zc, because R̄/m is a prime field generated by 1. Every
//! submodule is reached along some composition series from 0, so the walk is
//! complete. Each lattice element is stored as a bitset over element indices
//! together with the generators picked up along the way.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::arith::prime_factors;
use crate::error::Result;
use crate::module::{canonical_cmp, extend_by_cyclic, extend_by_multiples, set_text, FiniteModule, Submodule};

pub const DEFAULT_MAX_ELEMENTS: usize = 4096;

#[derive(Debug, Clone)]
pub struct SubmoduleLattice {
    module: FiniteModule,
    sets: Vec<FixedBitSet>,
    generators: Vec<Vec<usize>>,
    sizes: Vec<usize>,
    index: HashMap<FixedBitSet, usize>,
}

/// A maximal ideal m of R̄ given by the R̄-scalars that generate it.
struct MaximalIdeal {
    scalars: Vec<usize>,
}

fn maximal_ideals(module: &FiniteModule) -> Vec<MaximalIdeal> {
    let rbar = module.quotient().ring();
    let k = rbar.arity();
    let idempotent = |i: usize, value: u64| {
        let mut residues = vec![0; k];
        residues[i] = value % rbar.moduli()[i];
        rbar.index_of(&rbar.element(residues).expect("reduced residues")) as usize
    };
    let mut out = Vec::new();
    for (i, &d) in rbar.moduli().iter().enumerate() {
        for p in prime_factors(d) {
            let mut scalars = vec![idempotent(i, p)];
            scalars.extend((0..k).filter(|&l| l != i).map(|l| idempotent(l, 1)));
            out.push(MaximalIdeal { scalars });
        }
    }
    out
}

/// Every submodule in canonical order, via the cover walk.
pub fn enumerate_submodules(module: &FiniteModule, max_elements: usize) -> Result<SubmoduleLattice> {
    module.check_size(max_elements)?;
    let n = module.order();
    let actions = module.actions();
    let maximal = maximal_ideals(module);

    let mut zero = module.empty_set();
    zero.insert(0);
    let mut sets = vec![zero.clone()];
    let mut generators: Vec<Vec<usize>> = vec![Vec::new()];
    let mut index: HashMap<FixedBitSet, usize> = HashMap::from([(zero, 0)]);

    let mut next = 0;
    while next < sets.len() {
        let a = sets[next].clone();
        let mut handled = a.clone();
        for c in 0..n {
            if handled.contains(c) {
                continue;
            }
            let covers = maximal.iter().any(|m| m.scalars.iter().all(|&s| a.contains(actions.act(s, c))));
            if !covers {
                continue;
            }
            let mut b = a.clone();
            extend_by_multiples(module, &mut b, c);
            handled.union_with(&b);
            if !index.contains_key(&b) {
                let mut g = generators[next].clone();
                g.push(c);
                index.insert(b.clone(), sets.len());
                sets.push(b);
                generators.push(g);
            }
        }
        next += 1;
    }

    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by(|&x, &y| canonical_cmp(&sets[x], &sets[y]));
    let mut sorted_sets = Vec::with_capacity(sets.len());
    let mut sorted_gens = Vec::with_capacity(sets.len());
    for &old in &order {
        sorted_sets.push(std::mem::take(&mut sets[old]));
        sorted_gens.push(std::mem::take(&mut generators[old]));
    }
    let index = sorted_sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let sizes = sorted_sets.iter().map(|s| s.count_ones(..)).collect();
    Ok(SubmoduleLattice { module: module.clone(), sets: sorted_sets, generators: sorted_gens, sizes, index })
}

impl SubmoduleLattice {
    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn ids(&self) -> std::ops::Range<usize> {
        0..self.sets.len()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn whole(&self) -> usize {
        self.sets.len() - 1
    }

    pub fn set(&self, id: usize) -> &FixedBitSet {
        &self.sets[id]
    }

    pub fn sets(&self) -> &[FixedBitSet] {
        &self.sets
    }

    pub fn size(&self, id: usize) -> usize {
        self.sizes[id]
    }

    pub fn generators(&self, id: usize) -> &[usize] {
        &self.generators[id]
    }

    pub fn submodule(&self, id: usize) -> Submodule {
        Submodule::from_parts(&self.module, self.sets[id].clone(), self.generators[id].clone())
    }

    pub fn submodules(&self) -> Vec<Submodule> {
        self.ids().map(|id| self.submodule(id)).collect()
    }

    pub fn id_of(&self, set: &FixedBitSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn id_of_submodule(&self, n: &Submodule) -> Option<usize> {
        if n.module() != &self.module {
            return None;
        }
        self.id_of(n.elements())
    }

    pub fn is_subset(&self, a: usize, b: usize) -> bool {
        self.sizes[a] <= self.sizes[b] && self.sets[a].is_subset(&self.sets[b])
    }

    pub fn sum(&self, a: usize, b: usize) -> usize {
        if self.is_subset(a, b) {
            return b;
        }
        if self.is_subset(b, a) {
            return a;
        }
        let mut set = self.sets[a].clone();
        for &g in &self.generators[b] {
            extend_by_cyclic(&self.module, &mut set, g);
        }
        self.id_of(&set).expect("a sum of submodules is a submodule")
    }

    pub fn sum_all(&self, ids: impl IntoIterator<Item = usize>) -> usize {
        ids.into_iter().fold(self.zero(), |acc, id| self.sum(acc, id))
    }

    pub fn intersection(&self, a: usize, b: usize) -> usize {
        let mut set = self.sets[a].clone();
        set.intersect_with(&self.sets[b]);
        self.id_of(&set).expect("an intersection of submodules is a submodule")
    }

    pub fn text(&self, id: usize) -> String {
        set_text(&self.module, &self.sets[id])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{build_module, is_submodule_set};
    use crate::ring::{build_ring, Ideal};

    fn module(moduli: &[u64], factors: &[&[u64]]) -> FiniteModule {
        let r = build_ring(moduli).unwrap();
        let fs: Vec<Ideal> = factors.iter().map(|g| r.ideal(g).unwrap()).collect();
        build_module(&r, &fs).unwrap()
    }

    fn texts(l: &SubmoduleLattice) -> Vec<String> {
        l.ids().map(|i| l.text(i)).collect()
    }

    /// Subset filter: every element set containing 0 that is closed under
    /// addition and the scalar action.
    fn oracle(m: &FiniteModule) -> Vec<FixedBitSet> {
        let n = m.order();
        let mut out = Vec::new();
        for mask in 0u32..(1 << (n - 1)) {
            let mut set = m.empty_set();
            set.insert(0);
            for x in 1..n {
                if mask >> (x - 1) & 1 == 1 {
                    set.insert(x);
                }
            }
            if is_submodule_set(m, &set) {
                out.push(set);
            }
        }
        out.sort_by(canonical_cmp);
        out
    }

    #[test]
    fn small_lattices() {
        let l = enumerate_submodules(&module(&[8], &[&[0]]), DEFAULT_MAX_ELEMENTS).unwrap();
        assert_eq!(texts(&l), vec!["{0}", "{0,4}", "{0,2,4,6}", "{0,1,2,3,4,5,6,7}"]);
        let l = enumerate_submodules(&module(&[6], &[&[0]]), DEFAULT_MAX_ELEMENTS).unwrap();
        assert_eq!(texts(&l), vec!["{0}", "{0,3}", "{0,2,4}", "{0,1,2,3,4,5}"]);
        assert_eq!(enumerate_submodules(&module(&[2], &[&[0], &[0]]), 4096).unwrap().len(), 5);
    }

    #[test]
    fn known_counts() {
        assert_eq!(enumerate_submodules(&module(&[4], &[&[0], &[0]]), 4096).unwrap().len(), 15);
        assert_eq!(enumerate_submodules(&module(&[8], &[&[0], &[0]]), 4096).unwrap().len(), 37);
        // subspaces of F_3^3: 1 + 13 + 13 + 1
        assert_eq!(enumerate_submodules(&module(&[3], &[&[0], &[0], &[0]]), 4096).unwrap().len(), 28);
    }

    #[test]
    fn size_guard() {
        let m = module(&[8], &[&[0], &[0], &[0], &[0]]);
        assert!(enumerate_submodules(&m, 1000).is_err());
    }

    #[test]
    fn matches_subset_oracle() {
        let cases: Vec<FiniteModule> = vec![
            module(&[8], &[&[0]]),
            module(&[12], &[&[0]]),
            module(&[16], &[&[0]]),
            module(&[2], &[&[0], &[0], &[0], &[0]]),
            module(&[4], &[&[2], &[0]]),
            module(&[4], &[&[0], &[0]]),
            module(&[2, 3], &[&[0, 0]]),
            module(&[2, 4], &[&[0, 0], &[1, 2]]),
            module(&[6, 2], &[&[2, 1], &[2, 0]]),
            module(&[3, 3], &[&[0, 1], &[1, 0]]),
        ];
        for m in cases {
            let l = enumerate_submodules(&m, 4096).unwrap();
            let expected: Vec<String> = oracle(&m).iter().map(|s| set_text(&m, s)).collect();
            assert_eq!(texts(&l), expected, "{m}");
            for id in l.ids() {
                let regenerated = Submodule::generated(&m, l.generators(id)).unwrap();
                assert_eq!(regenerated.elements(), l.set(id));
            }
        }
    }

    #[test]
    fn sums_and_intersections() {
        let m = module(&[4], &[&[0], &[2]]);
        let l = enumerate_submodules(&m, 4096).unwrap();
        for a in l.ids() {
            for b in l.ids() {
                let mut pairwise = m.empty_set();
                for x in l.set(a).ones() {
                    for y in l.set(b).ones() {
                        pairwise.insert(m.add(x, y));
                    }
                }
                assert_eq!(l.set(l.sum(a, b)), &pairwise);
                let mut meet = l.set(a).clone();
                meet.intersect_with(l.set(b));
                assert_eq!(l.set(l.intersection(a, b)), &meet);
            }
        }
    }
}
