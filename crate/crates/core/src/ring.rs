//! Finite commutative rings Z_{n_1} x ... x Z_{n_k} and their ideals.
//!
//! Every ideal of such a ring is a product of principal component ideals, so
//! an ideal is stored as one canonical generator d_i | n_i per component
//! (d_i = n_i is the zero component ideal). Prime, primary and radical
//! computations use that structure directly; the tests compare them with
//! exhaustive element scans.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::arith::{divisors, gcd, is_prime, is_prime_power, lcm, squarefree_kernel};
use crate::error::{Error, Result};
use crate::topology::{complement, BaseOpen, FiniteTopology, Point};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteRing {
    moduli: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    residues: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    moduli: Vec<u64>,
    gens: Vec<u64>,
}

pub fn build_ring(moduli: &[u64]) -> Result<FiniteRing> {
    FiniteRing::new(moduli.to_vec())
}

impl FiniteRing {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::EmptyRing);
        }
        if let Some(&n) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::TrivialComponent(n));
        }
        let order: u128 = moduli.iter().map(|&n| n as u128).product();
        if order > u32::MAX as u128 {
            return Err(Error::RingOverflow(order));
        }
        Ok(FiniteRing { moduli })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn arity(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn element(&self, residues: Vec<u64>) -> Result<RingElement> {
        if residues.len() != self.arity() {
            return Err(Error::Arity { expected: self.arity(), got: residues.len() });
        }
        for (&r, &n) in residues.iter().zip(&self.moduli) {
            if r >= n {
                return Err(Error::Residue { residue: r, modulus: n });
            }
        }
        Ok(RingElement { residues })
    }

    /// Reduces arbitrary integers into the ring.
    pub fn reduce(&self, values: &[u64]) -> RingElement {
        RingElement { residues: values.iter().zip(&self.moduli).map(|(&v, &n)| v % n).collect() }
    }

    /// The element at position `index` of the lexicographic enumeration.
    pub fn element_at(&self, mut index: u64) -> RingElement {
        let mut residues = vec![0; self.arity()];
        for (slot, &n) in residues.iter_mut().zip(&self.moduli).rev() {
            *slot = index % n;
            index /= n;
        }
        RingElement { residues }
    }

    pub fn index_of(&self, x: &RingElement) -> u64 {
        x.residues.iter().zip(&self.moduli).fold(0, |acc, (&r, &n)| acc * n + r)
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.order()).map(|i| self.element_at(i))
    }

    pub fn zero(&self) -> RingElement {
        RingElement { residues: vec![0; self.arity()] }
    }

    pub fn one(&self) -> RingElement {
        RingElement { residues: vec![1; self.arity()] }
    }

    /// The idempotent e_i with 1 in component `i` and 0 elsewhere.
    pub fn component_idempotent(&self, i: usize) -> RingElement {
        let mut residues = vec![0; self.arity()];
        residues[i] = 1;
        RingElement { residues }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.zip(a, b, |x, y, n| (x + y) % n)
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.zip(a, b, |x, y, n| x * y % n)
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        RingElement { residues: a.residues.iter().zip(&self.moduli).map(|(&x, &n)| (n - x) % n).collect() }
    }

    pub fn pow(&self, a: &RingElement, e: u64) -> RingElement {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    fn zip(&self, a: &RingElement, b: &RingElement, f: impl Fn(u64, u64, u64) -> u64) -> RingElement {
        let residues = a.residues.iter().zip(&b.residues).zip(&self.moduli).map(|((&x, &y), &n)| f(x, y, n)).collect();
        RingElement { residues }
    }

    pub fn is_unit(&self, a: &RingElement) -> bool {
        a.residues.iter().zip(&self.moduli).all(|(&x, &n)| gcd(x, n) == 1)
    }

    pub fn is_field(&self) -> bool {
        self.arity() == 1 && is_prime(self.moduli[0])
    }

    pub fn whole_ideal(&self) -> Ideal {
        Ideal { moduli: self.moduli.clone(), gens: vec![1; self.arity()] }
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal { moduli: self.moduli.clone(), gens: self.moduli.clone() }
    }

    /// Ideal from canonical generators: each must divide its modulus, with 0
    /// accepted for the zero component.
    pub fn ideal(&self, gens: &[u64]) -> Result<Ideal> {
        if gens.len() != self.arity() {
            return Err(Error::Arity { expected: self.arity(), got: gens.len() });
        }
        let mut canon = Vec::with_capacity(gens.len());
        for (&g, &n) in gens.iter().zip(&self.moduli) {
            if g == 0 {
                canon.push(n);
            } else if n % g == 0 {
                canon.push(g);
            } else {
                return Err(Error::NotADivisor { generator: g, modulus: n });
            }
        }
        Ok(Ideal { moduli: self.moduli.clone(), gens: canon })
    }

    pub fn principal_ideal(&self, r: &RingElement) -> Ideal {
        let gens = r.residues.iter().zip(&self.moduli).map(|(&x, &n)| gcd(x, n)).collect();
        Ideal { moduli: self.moduli.clone(), gens }
    }

    /// All ideals, sorted by generator lists.
    pub fn ideals(&self) -> Vec<Ideal> {
        let mut out = vec![Vec::new()];
        for &n in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    divisors(n).into_iter().map(move |d| {
                        let mut g = prefix.clone();
                        g.push(d);
                        g
                    })
                })
                .collect();
        }
        out.into_iter().map(|gens| Ideal { moduli: self.moduli.clone(), gens }).collect()
    }

    pub fn check_same(&self, other: &FiniteRing) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.to_string(), right: other.to_string() })
        }
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.moduli.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

impl RingElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.residues.as_slice() {
            [r] => write!(f, "{r}"),
            rs => {
                f.write_str("(")?;
                for (i, r) in rs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{r}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Ideal {
    pub fn ring(&self) -> FiniteRing {
        FiniteRing { moduli: self.moduli.clone() }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Canonical generators d_i | n_i (d_i = n_i for a zero component).
    pub fn generators(&self) -> &[u64] {
        &self.gens
    }

    fn check_same(&self, other: &Ideal) -> Result<()> {
        if self.moduli == other.moduli {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.ring().to_string(), right: other.ring().to_string() })
        }
    }

    fn combine(&self, other: &Ideal, f: impl Fn(u64, u64, u64) -> u64) -> Result<Ideal> {
        self.check_same(other)?;
        let gens = self.gens.iter().zip(&other.gens).zip(&self.moduli).map(|((&a, &b), &n)| f(a, b, n)).collect();
        Ok(Ideal { moduli: self.moduli.clone(), gens })
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.combine(other, |a, b, _| gcd(a, b))
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.combine(other, |a, b, _| lcm(a, b))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.combine(other, |a, b, n| gcd(a * b, n))
    }

    /// r^m lies in d Z_n exactly when rad(d) divides r.
    pub fn radical(&self) -> Ideal {
        Ideal { moduli: self.moduli.clone(), gens: self.gens.iter().map(|&d| squarefree_kernel(d)).collect() }
    }

    pub fn contains(&self, r: &RingElement) -> bool {
        r.residues.iter().zip(&self.gens).all(|(&x, &d)| x % d == 0)
    }

    /// Inclusion `self ⊆ other`; false for ideals over different rings.
    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.moduli == other.moduli && self.gens.iter().zip(&other.gens).all(|(&a, &b)| a % b == 0)
    }

    pub fn is_whole(&self) -> bool {
        self.gens.iter().all(|&d| d == 1)
    }

    pub fn is_zero(&self) -> bool {
        self.gens == self.moduli
    }

    pub fn is_proper(&self) -> bool {
        !self.is_whole()
    }

    /// Exactly one component is a prime-generated ideal, the rest are whole.
    pub fn is_prime(&self) -> bool {
        let nontrivial: Vec<u64> = self.gens.iter().copied().filter(|&d| d != 1).collect();
        nontrivial.len() == 1 && is_prime(nontrivial[0])
    }

    /// Exactly one component is generated by a prime power, the rest are whole.
    pub fn is_primary(&self) -> bool {
        let nontrivial: Vec<u64> = self.gens.iter().copied().filter(|&d| d != 1).collect();
        nontrivial.len() == 1 && is_prime_power(nontrivial[0])
    }

    pub fn order(&self) -> u64 {
        self.gens.iter().zip(&self.moduli).map(|(&d, &n)| n / d).product()
    }

    pub fn elements(&self) -> Vec<RingElement> {
        let ring = self.ring();
        ring.elements().filter(|r| self.contains(r)).collect()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (&d, &n)) in self.gens.iter().zip(&self.moduli).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if d == n {
                f.write_str("0")?;
            } else {
                write!(f, "{d}")?;
            }
        }
        f.write_str(")")
    }
}

impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// U(R) by inverse scan and N(R) as an ideal.
pub fn units_and_nilradical(ring: &FiniteRing) -> (Vec<RingElement>, Ideal) {
    let one = ring.one();
    let units = ring.elements().filter(|x| ring.elements().any(|y| ring.mul(x, &y) == one)).collect();
    (units, ring.zero_ideal().radical())
}

pub fn ring_idempotents(ring: &FiniteRing) -> Vec<RingElement> {
    ring.elements().filter(|x| ring.mul(x, x) == *x).collect()
}

pub fn ideal_intersection(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.intersection(j)
}

pub fn ideal_radical(i: &Ideal) -> Ideal {
    i.radical()
}

pub fn is_prime_ideal(i: &Ideal) -> bool {
    i.is_prime()
}

pub fn is_primary_ideal(i: &Ideal) -> bool {
    i.is_primary()
}

pub fn ring_spec(ring: &FiniteRing) -> Vec<Ideal> {
    ring.ideals().into_iter().filter(Ideal::is_prime).collect()
}

/// V^R(I) as a point set over `primes`.
pub fn variety_of_ideal(primes: &[Ideal], i: &Ideal) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(primes.len());
    for (k, p) in primes.iter().enumerate() {
        if i.is_subset(p) {
            set.insert(k);
        }
    }
    set
}

/// Spec(R) with closed sets V^R(I) and the principal open base D_r. Base
/// members are deduplicated by point set, each labelled by the first r in
/// element order that produces it.
pub fn zariski_on_spec(ring: &FiniteRing) -> FiniteTopology {
    let primes = ring_spec(ring);
    let family = ring.ideals().iter().map(|i| variety_of_ideal(&primes, i)).collect();
    let mut base: Vec<BaseOpen> = Vec::new();
    for r in ring.elements() {
        let set = complement(&variety_of_ideal(&primes, &ring.principal_ideal(&r)));
        if !base.iter().any(|b| b.set == set) {
            base.push(BaseOpen { label: format!("D_{r}"), set });
        }
    }
    let points = primes.into_iter().map(Point::Prime).collect();
    FiniteTopology::new(points, family)
        .and_then(|t| t.with_base(base))
        .expect("Zariski closed sets of a finite ring form a topology with base D_r")
}

pub fn prime_set_intersection(ring: &FiniteRing, ys: &[Ideal]) -> Result<Ideal> {
    ys.iter().try_fold(ring.whole_ideal(), |acc, p| acc.intersection(p))
}

/// R/I re-expressed as the product of the Z_{d_i} with d_i > 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRing {
    source: FiniteRing,
    ideal: Ideal,
    ring: FiniteRing,
    kept: Vec<usize>,
}

pub fn quotient_ring(ring: &FiniteRing, ideal: &Ideal) -> Result<QuotientRing> {
    ring.check_same(&ideal.ring())?;
    if ideal.is_whole() {
        return Err(Error::ZeroQuotient);
    }
    let kept: Vec<usize> = (0..ring.arity()).filter(|&i| ideal.gens[i] > 1).collect();
    let moduli = kept.iter().map(|&i| ideal.gens[i]).collect();
    Ok(QuotientRing { source: ring.clone(), ideal: ideal.clone(), ring: FiniteRing::new(moduli)?, kept })
}

impl QuotientRing {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn source(&self) -> &FiniteRing {
        &self.source
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// The surjection r ↦ r̄.
    pub fn map_element(&self, r: &RingElement) -> RingElement {
        let residues = self.kept.iter().map(|&i| r.residues[i] % self.ideal.gens[i]).collect();
        RingElement { residues }
    }

    /// The canonical lift: residues kept, collapsed components set to 0.
    pub fn lift_element(&self, r: &RingElement) -> RingElement {
        let mut residues = vec![0; self.source.arity()];
        for (k, &i) in self.kept.iter().enumerate() {
            residues[i] = r.residues[k];
        }
        RingElement { residues }
    }

    /// J ↦ J/I for J ⊇ I.
    pub fn push_ideal(&self, j: &Ideal) -> Result<Ideal> {
        if !self.ideal.is_subset(j) {
            return Err(Error::BelowAnnihilator { ideal: j.to_string(), annihilator: self.ideal.to_string() });
        }
        let gens = self.kept.iter().map(|&i| j.gens[i]).collect();
        Ok(Ideal { moduli: self.ring.moduli.clone(), gens })
    }

    /// The ideal of R containing I that corresponds to an ideal of R/I.
    pub fn lift_ideal(&self, j: &Ideal) -> Result<Ideal> {
        if j.moduli != self.ring.moduli {
            return Err(Error::RingMismatch { left: j.ring().to_string(), right: self.ring.to_string() });
        }
        let mut gens = vec![1; self.source.arity()];
        for (k, &i) in self.kept.iter().enumerate() {
            gens[i] = j.gens[k];
        }
        Ok(Ideal { moduli: self.source.moduli.clone(), gens })
    }
}
