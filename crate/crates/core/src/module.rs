//! Finite modules M = R/A_1 ⊕ ... ⊕ R/A_k over a [`FiniteRing`].
//!
//! An element is a tuple over the flattened coordinates (factor j, ring
//! component i) whose modulus is the generator d_{j,i} of A_j at i; trivial
//! coordinates (d = 1) are dropped. Elements are indexed in mixed radix with
//! the first coordinate most significant, so index order is lexicographic.
//!
//! The free functions on [`Submodule`] follow the definitions directly by
//! scanning scalars and elements. [`crate::spectrum::ModuleAnalysis`] holds
//! the fast routes used for whole-lattice work.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::arith::{divisors, lcm};
use crate::error::{Error, Result};
use crate::ring::{quotient_ring, FiniteRing, Ideal, QuotientRing, RingElement};

/// Hard ceiling on module order, independent of the configurable guard.
const ABSOLUTE_ELEMENT_LIMIT: u128 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coord {
    pub factor: usize,
    pub component: usize,
    pub modulus: u64,
}

#[derive(Debug)]
struct ModuleData {
    ring: FiniteRing,
    factors: Vec<Ideal>,
    coords: Vec<Coord>,
    order: usize,
    annihilator: Ideal,
    quotient: QuotientRing,
    actions: OnceLock<ActionTable>,
}

/// Cheap to clone; clones share one underlying module.
#[derive(Debug, Clone)]
pub struct FiniteModule(Arc<ModuleData>);

impl PartialEq for FiniteModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.ring == other.0.ring && self.0.factors == other.0.factors)
    }
}

impl Eq for FiniteModule {}

pub fn build_module(ring: &FiniteRing, factors: &[Ideal]) -> Result<FiniteModule> {
    if factors.is_empty() {
        return Err(Error::ZeroModule);
    }
    for a in factors {
        ring.check_same(&a.ring())?;
        if a.is_whole() {
            return Err(Error::ZeroFactor);
        }
    }
    let mut coords = Vec::new();
    for (j, a) in factors.iter().enumerate() {
        for (i, &d) in a.generators().iter().enumerate() {
            if d > 1 {
                coords.push(Coord { factor: j, component: i, modulus: d });
            }
        }
    }
    let size: u128 = coords.iter().map(|c| c.modulus as u128).product();
    if size > ABSOLUTE_ELEMENT_LIMIT {
        return Err(Error::TooLarge { size, limit: ABSOLUTE_ELEMENT_LIMIT as usize });
    }
    // Ann_R(⊕ R/A_j) = ∩ A_j
    let annihilator = factors.iter().skip(1).try_fold(factors[0].clone(), |acc, a| acc.intersection(a))?;
    let quotient = quotient_ring(ring, &annihilator)?;
    Ok(FiniteModule(Arc::new(ModuleData {
        ring: ring.clone(),
        factors: factors.to_vec(),
        coords,
        order: size as usize,
        annihilator,
        quotient,
        actions: OnceLock::new(),
    })))
}

impl FiniteModule {
    pub fn ring(&self) -> &FiniteRing {
        &self.0.ring
    }

    pub fn factors(&self) -> &[Ideal] {
        &self.0.factors
    }

    pub fn coords(&self) -> &[Coord] {
        &self.0.coords
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    /// Ann_R(M), the intersection of the factor ideals.
    pub fn annihilator(&self) -> &Ideal {
        &self.0.annihilator
    }

    /// R̄ = R/Ann_R(M).
    pub fn quotient(&self) -> &QuotientRing {
        &self.0.quotient
    }

    pub fn check_size(&self, max_elements: usize) -> Result<()> {
        if self.order() > max_elements {
            Err(Error::TooLarge { size: self.order() as u128, limit: max_elements })
        } else {
            Ok(())
        }
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn digits(&self, mut x: usize) -> Vec<u64> {
        let mut out = vec![0; self.0.coords.len()];
        for (slot, c) in out.iter_mut().zip(&self.0.coords).rev() {
            let m = c.modulus as usize;
            *slot = (x % m) as u64;
            x /= m;
        }
        out
    }

    pub fn index(&self, digits: &[u64]) -> Result<usize> {
        if digits.len() != self.0.coords.len() {
            return Err(Error::Arity { expected: self.0.coords.len(), got: digits.len() });
        }
        let mut x = 0usize;
        for (&d, c) in digits.iter().zip(&self.0.coords) {
            if d >= c.modulus {
                return Err(Error::Residue { residue: d, modulus: c.modulus });
            }
            x = x * c.modulus as usize + d as usize;
        }
        Ok(x)
    }

    /// Applies `f(coordinate, digit_a, digit_b)` digitwise.
    #[inline]
    fn zip_digits(&self, mut a: usize, mut b: usize, f: impl Fn(&Coord, u64, u64) -> u64) -> usize {
        let mut out = 0;
        let mut place = 1;
        for c in self.0.coords.iter().rev() {
            let m = c.modulus as usize;
            let d = f(c, (a % m) as u64, (b % m) as u64) as usize;
            out += d * place;
            place *= m;
            a /= m;
            b /= m;
        }
        out
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.zip_digits(a, b, |c, x, y| (x + y) % c.modulus)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.zip_digits(a, 0, |c, x, _| (c.modulus - x) % c.modulus)
    }

    pub fn scale(&self, r: &RingElement, a: usize) -> usize {
        let rs = r.residues();
        self.zip_digits(a, 0, |c, x, _| rs[c.component] % c.modulus * x % c.modulus)
    }

    /// The generator of factor j (1 in each of its coordinates).
    pub fn factor_generator(&self, j: usize) -> usize {
        let digits: Vec<u64> = self.0.coords.iter().map(|c| u64::from(c.factor == j)).collect();
        self.index(&digits).expect("unit digits are in range")
    }

    pub fn element_text(&self, x: usize) -> String {
        let digits = self.digits(x);
        match digits.as_slice() {
            [d] => d.to_string(),
            ds => format!("({})", ds.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        let digits = t
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|_| Error::Parse { column: 0, message: format!("bad element {text:?}") }))
            .collect::<Result<Vec<_>>>()?;
        self.index(&digits)
    }

    pub fn actions(&self) -> &ActionTable {
        self.0.actions.get_or_init(|| ActionTable::new(self))
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.order())
    }
}

impl fmt::Display for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | ", self.ring())?;
        for (j, a) in self.factors().iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl Serialize for FiniteModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Scalar action of R̄ on M as a lookup table. Scalars are the elements of
/// R̄ in enumeration order, each represented by its canonical lift to R.
#[derive(Debug)]
pub struct ActionTable {
    scalars: Vec<RingElement>,
    table: Vec<u32>,
    order: usize,
}

impl ActionTable {
    fn new(module: &FiniteModule) -> Self {
        let q = module.quotient();
        let scalars: Vec<RingElement> =
            q.ring().elements().map(|r| q.lift_element(&r)).collect();
        let order = module.order();
        let mut table = Vec::with_capacity(scalars.len() * order);
        for r in &scalars {
            table.extend((0..order).map(|x| module.scale(r, x) as u32));
        }
        ActionTable { scalars, table, order }
    }

    pub fn scalars(&self) -> &[RingElement] {
        &self.scalars
    }

    pub fn len(&self) -> usize {
        self.scalars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scalars.is_empty()
    }

    #[inline]
    pub fn act(&self, scalar: usize, x: usize) -> usize {
        self.table[scalar * self.order + x] as usize
    }

    pub fn row(&self, scalar: usize) -> &[u32] {
        &self.table[scalar * self.order..(scalar + 1) * self.order]
    }
}

/// A submodule: its element set plus a generating list.
#[derive(Debug, Clone)]
pub struct Submodule {
    module: FiniteModule,
    elements: FixedBitSet,
    generators: Vec<usize>,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.module == other.module && self.elements == other.elements
    }
}

impl Eq for Submodule {}

impl PartialOrd for Submodule {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Submodule {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(&self.elements, &other.elements)
    }
}

/// Cardinality first, then lexicographic on the sorted element lists. With
/// equal cardinalities the first difference of the sorted lists is the least
/// element of the symmetric difference, and the set holding it comes first.
pub fn canonical_cmp(a: &FixedBitSet, b: &FixedBitSet) -> Ordering {
    a.count_ones(..).cmp(&b.count_ones(..)).then_with(|| {
        for (&x, &y) in a.as_slice().iter().zip(b.as_slice()) {
            let diff = x ^ y;
            if diff != 0 {
                let low = diff & diff.wrapping_neg();
                return if x & low != 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        a.len().cmp(&b.len())
    })
}

pub fn set_text(module: &FiniteModule, set: &FixedBitSet) -> String {
    let parts: Vec<String> = set.ones().map(|x| module.element_text(x)).collect();
    format!("{{{}}}", parts.join(","))
}

impl Submodule {
    /// Wraps an element set after checking submodule closure.
    pub fn from_set(module: &FiniteModule, elements: FixedBitSet) -> Result<Self> {
        if elements.len() != module.order() || !is_submodule_set(module, &elements) {
            return Err(Error::NotHomomorphism("element set is not a submodule".into()));
        }
        let generators = elements.ones().collect();
        Ok(Submodule { module: module.clone(), elements, generators })
    }

    pub(crate) fn from_parts(module: &FiniteModule, elements: FixedBitSet, generators: Vec<usize>) -> Self {
        Submodule { module: module.clone(), elements, generators }
    }

    pub fn generated(module: &FiniteModule, gens: &[usize]) -> Result<Self> {
        let mut set = module.empty_set();
        set.insert(0);
        for &g in gens {
            if g >= module.order() {
                return Err(Error::NoSuchElement(g as u64));
            }
            extend_by_cyclic(module, &mut set, g);
        }
        Ok(Submodule { module: module.clone(), elements: set, generators: gens.to_vec() })
    }

    pub fn zero(module: &FiniteModule) -> Self {
        Self::generated(module, &[]).expect("no generators")
    }

    pub fn whole(module: &FiniteModule) -> Self {
        let gens: Vec<usize> = (0..module.factors().len()).map(|j| module.factor_generator(j)).collect();
        Self::generated(module, &gens).expect("factor generators are elements")
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn elements(&self) -> &FixedBitSet {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.count_ones(..)
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(x)
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.elements.is_subset(&other.elements)
    }

    /// rN as an element set.
    pub fn scaled(&self, r: &RingElement) -> FixedBitSet {
        let mut out = self.module.empty_set();
        for x in self.elements.ones() {
            out.insert(self.module.scale(r, x));
        }
        out
    }
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&set_text(&self.module, &self.elements))
    }
}

impl Serialize for Submodule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn is_submodule_set(module: &FiniteModule, set: &FixedBitSet) -> bool {
    if !set.contains(0) {
        return false;
    }
    let ring = module.ring();
    set.ones().all(|a| {
        set.ones().all(|b| set.contains(module.add(a, b))) && ring.elements().all(|r| set.contains(module.scale(&r, a)))
    })
}

/// H + <g> for a subgroup H: the union of the cosets H + k g.
pub fn extend_by_multiples(module: &FiniteModule, set: &mut FixedBitSet, g: usize) {
    if set.contains(g) {
        return;
    }
    let base: Vec<usize> = set.ones().collect();
    let mut shift = g;
    while !set.contains(shift) {
        for &h in &base {
            set.insert(module.add(h, shift));
        }
        shift = module.add(shift, g);
    }
}

/// N + Rg for a submodule N, using Rg = Σ_i Z·(e_i g).
pub fn extend_by_cyclic(module: &FiniteModule, set: &mut FixedBitSet, g: usize) {
    let ring = module.ring();
    for i in 0..ring.arity() {
        let e = ring.component_idempotent(i);
        extend_by_multiples(module, set, module.scale(&e, g));
    }
}

pub fn cyclic_submodule(module: &FiniteModule, m: usize) -> Result<Submodule> {
    if m >= module.order() {
        return Err(Error::NoSuchElement(m as u64));
    }
    let mut set = module.empty_set();
    for r in module.ring().elements() {
        set.insert(module.scale(&r, m));
    }
    Ok(Submodule { module: module.clone(), elements: set, generators: vec![m] })
}

fn check_parent(a: &Submodule, b: &Submodule) -> Result<()> {
    if a.module == b.module {
        Ok(())
    } else {
        Err(Error::ParentMismatch)
    }
}

pub fn submodule_sum(a: &Submodule, b: &Submodule) -> Result<Submodule> {
    check_parent(a, b)?;
    let mut set = a.module.empty_set();
    for x in a.elements.ones() {
        for y in b.elements.ones() {
            set.insert(a.module.add(x, y));
        }
    }
    let mut gens = a.generators.clone();
    gens.extend_from_slice(&b.generators);
    Ok(Submodule { module: a.module.clone(), elements: set, generators: gens })
}

pub fn submodule_intersection(a: &Submodule, b: &Submodule) -> Result<Submodule> {
    check_parent(a, b)?;
    let mut set = a.elements.clone();
    set.intersect_with(&b.elements);
    let gens = set.ones().collect();
    Ok(Submodule { module: a.module.clone(), elements: set, generators: gens })
}

/// Ann_R(N) by scanning, per component i, the scalars d·e_i for divisors d
/// of n_i in increasing order; the first that kills N generates that
/// component of the annihilator.
pub fn annihilator_of_submodule(n: &Submodule) -> Ideal {
    let module = &n.module;
    let ring = module.ring();
    let gens: Vec<u64> = ring
        .moduli()
        .iter()
        .enumerate()
        .map(|(i, &modulus)| {
            divisors(modulus)
                .into_iter()
                .find(|&d| {
                    let mut residues = vec![0; ring.arity()];
                    residues[i] = d % modulus;
                    let r = ring.element(residues).expect("reduced residues");
                    n.elements.ones().all(|x| module.scale(&r, x) == 0)
                })
                .expect("n_i kills every component")
        })
        .collect();
    ring.ideal(&gens).expect("divisors of the moduli")
}

/// Ann_M(I): the elements killed by every generator g_i e_i of I.
pub fn annihilated_submodule(module: &FiniteModule, ideal: &Ideal) -> Result<Submodule> {
    module.ring().check_same(&ideal.ring())?;
    let ring = module.ring();
    let scalars: Vec<RingElement> = (0..ring.arity())
        .map(|i| {
            let mut residues = vec![0; ring.arity()];
            residues[i] = ideal.generators()[i] % ring.moduli()[i];
            ring.element(residues).expect("reduced residues")
        })
        .collect();
    let mut set = module.empty_set();
    for x in 0..module.order() {
        if scalars.iter().all(|r| module.scale(r, x) == 0) {
            set.insert(x);
        }
    }
    let gens = set.ones().collect();
    Ok(Submodule { module: module.clone(), elements: set, generators: gens })
}

/// Nonzero, and every scalar either fixes N or kills it.
pub fn is_second(n: &Submodule) -> bool {
    if n.is_zero() {
        return false;
    }
    let zero = n.module.empty_set().tap_insert(0);
    n.module.ring().elements().all(|r| {
        let rn = n.scaled(&r);
        rn == n.elements || rn == zero
    })
}

/// Nonzero, and every scalar either fixes N or has a power killing N.
pub fn is_secondary(n: &Submodule) -> bool {
    if n.is_zero() {
        return false;
    }
    let ring = n.module.ring();
    let bound = ring.order();
    ring.elements().all(|r| {
        n.scaled(&r) == n.elements
            || (1..=bound).any(|m| {
                let rm = ring.pow(&r, m);
                n.elements.ones().all(|x| n.module.scale(&rm, x) == 0)
            })
    })
}

trait TapInsert {
    fn tap_insert(self, x: usize) -> Self;
}

impl TapInsert for FixedBitSet {
    fn tap_insert(mut self, x: usize) -> Self {
        self.insert(x);
        self
    }
}

/// Every submodule equals Ann_M(Ann_R(N)).
pub fn is_comultiplication_over(module: &FiniteModule, subs: &[Submodule]) -> bool {
    subs.iter().all(|n| {
        let back = annihilated_submodule(module, &annihilator_of_submodule(n)).expect("same ring");
        back.elements == n.elements
    })
}

/// Ann_R(M) computed as lcm of the factor generators, componentwise.
pub fn module_annihilator_by_lcm(module: &FiniteModule) -> Vec<u64> {
    let ring = module.ring();
    (0..ring.arity())
        .map(|i| module.factors().iter().fold(1, |acc, a| lcm(acc, a.generators()[i])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;

    pub(crate) fn module(moduli: &[u64], factors: &[&[u64]]) -> FiniteModule {
        let r = build_ring(moduli).unwrap();
        let fs: Vec<Ideal> = factors.iter().map(|g| r.ideal(g).unwrap()).collect();
        build_module(&r, &fs).unwrap()
    }

    fn set_of(m: &FiniteModule, xs: &[usize]) -> Submodule {
        Submodule::generated(m, xs).unwrap()
    }

    #[test]
    fn construction_errors() {
        let r = build_ring(&[8]).unwrap();
        assert_eq!(build_module(&r, &[]).unwrap_err(), Error::ZeroModule);
        assert_eq!(build_module(&r, &[r.whole_ideal()]).unwrap_err(), Error::ZeroFactor);
        let m = module(&[8], &[&[0], &[0], &[0], &[0]]);
        assert_eq!(m.order(), 4096);
        assert_eq!(module(&[2], &[&[0], &[0]]).order(), 4);
        assert_eq!(module(&[6, 2], &[&[2, 1], &[0, 0]]).order(), 24);
    }

    #[test]
    fn element_arithmetic_is_a_module() {
        for m in [module(&[6], &[&[0]]), module(&[6, 2], &[&[2, 1], &[3, 0]]), module(&[4], &[&[2], &[0]])] {
            let ring = m.ring().clone();
            for a in 0..m.order() {
                assert_eq!(m.index(&m.digits(a)).unwrap(), a);
                assert_eq!(m.add(a, m.neg(a)), 0);
                for b in 0..m.order() {
                    assert_eq!(m.add(a, b), m.add(b, a));
                    for r in ring.elements() {
                        assert_eq!(m.scale(&r, m.add(a, b)), m.add(m.scale(&r, a), m.scale(&r, b)));
                    }
                }
                for r in ring.elements() {
                    for s in ring.elements() {
                        assert_eq!(m.scale(&ring.mul(&r, &s), a), m.scale(&r, m.scale(&s, a)));
                        assert_eq!(m.scale(&ring.add(&r, &s), a), m.add(m.scale(&r, a), m.scale(&s, a)));
                    }
                }
                assert_eq!(m.scale(&ring.one(), a), a);
            }
        }
    }

    #[test]
    fn cyclic_and_lattice_ops() {
        let z8 = module(&[8], &[&[0]]);
        assert!(cyclic_submodule(&z8, 0).unwrap().is_zero());
        assert_eq!(cyclic_submodule(&z8, 2).unwrap().to_string(), "{0,2,4,6}");
        assert_eq!(cyclic_submodule(&z8, 4).unwrap().to_string(), "{0,4}");

        let z6 = module(&[6], &[&[0]]);
        let s = submodule_sum(&set_of(&z6, &[3]), &set_of(&z6, &[2])).unwrap();
        assert_eq!(s, Submodule::whole(&z6));
        let n = set_of(&z6, &[2]);
        assert_eq!(submodule_sum(&n, &Submodule::zero(&z6)).unwrap(), n);
        assert_eq!(submodule_intersection(&n, &Submodule::whole(&z6)).unwrap(), n);

        let f2 = module(&[2], &[&[0], &[0]]);
        let s = submodule_sum(&set_of(&f2, &[1]), &set_of(&f2, &[2])).unwrap();
        assert_eq!(s, Submodule::whole(&f2));
        assert_eq!(submodule_sum(&n, &set_of(&f2, &[1])).unwrap_err(), Error::ParentMismatch);
    }

    #[test]
    fn annihilators() {
        let z8 = module(&[8], &[&[0]]);
        assert_eq!(annihilator_of_submodule(&set_of(&z8, &[2])).to_string(), "(4)");
        let z6 = module(&[6], &[&[0]]);
        assert_eq!(annihilator_of_submodule(&set_of(&z6, &[3])).to_string(), "(2)");
        let f3 = module(&[3], &[&[0], &[0]]);
        assert!(annihilator_of_submodule(&Submodule::whole(&f3)).is_zero());
        assert!(annihilator_of_submodule(&Submodule::zero(&z8)).is_whole());

        let r8 = z8.ring().clone();
        assert_eq!(annihilated_submodule(&z8, &r8.zero_ideal()).unwrap(), Submodule::whole(&z8));
        assert_eq!(annihilated_submodule(&z8, &r8.ideal(&[2]).unwrap()).unwrap().to_string(), "{0,4}");
        assert_eq!(annihilated_submodule(&z8, &r8.ideal(&[4]).unwrap()).unwrap().to_string(), "{0,2,4,6}");
    }

    #[test]
    fn second_and_secondary() {
        let z8 = module(&[8], &[&[0]]);
        assert!(is_second(&set_of(&z8, &[4])));
        assert!(!is_second(&set_of(&z8, &[2])));
        assert!(!is_second(&Submodule::zero(&z8)));
        assert!(is_secondary(&set_of(&z8, &[2])));
        let z6 = module(&[6], &[&[0]]);
        assert!(!is_secondary(&Submodule::whole(&z6)));
        assert!(is_second(&set_of(&z6, &[2])) && is_secondary(&set_of(&z6, &[2])));
    }

    #[test]
    fn canonical_order() {
        let z8 = module(&[8], &[&[0]]);
        let mut subs = [Submodule::whole(&z8), set_of(&z8, &[2]), Submodule::zero(&z8), set_of(&z8, &[4])];
        subs.sort();
        let text: Vec<String> = subs.iter().map(|s| s.to_string()).collect();
        assert_eq!(text, vec!["{0}", "{0,4}", "{0,2,4,6}", "{0,1,2,3,4,5,6,7}"]);
        let f2 = module(&[2], &[&[0], &[0]]);
        assert_eq!(set_of(&f2, &[1]).to_string(), "{(0,0),(0,1)}");
        assert!(set_of(&f2, &[1]) < set_of(&f2, &[2]));
        assert_eq!(f2.parse_element("(1,0)").unwrap(), 2);
    }

    #[test]
    fn quotient_and_actions() {
        let m = module(&[8], &[&[2], &[4]]);
        assert_eq!(m.annihilator().to_string(), "(4)");
        assert_eq!(module_annihilator_by_lcm(&m), vec![4]);
        let t = m.actions();
        assert_eq!(t.len(), 4);
        for s in 0..t.len() {
            for x in 0..m.order() {
                assert_eq!(t.act(s, x), m.scale(&t.scalars()[s], x));
            }
        }
    }
}
