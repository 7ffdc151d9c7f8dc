//! Finite topological spaces given by their family of closed sets.
//!
//! A space is stored as an indexed point list plus the deduplicated, sorted
//! family of closed sets (bitsets over point indices). Construction checks
//! the closed-set axioms exhaustively. Everything derived from the family
//! (point closures, the specialization preorder, separation properties) is
//! computed once at construction.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::Ideal;

/// Families at most this large get the all-subfamily intersection check.
const SUBFAMILY_CHECK_LIMIT: usize = 16;
/// Families at most this large use the pair scan for irreducibility.
const PAIR_SCAN_LIMIT: usize = 64;
/// Largest space handed to the homeomorphism search.
pub const HOMEOMORPHISM_SEARCH_LIMIT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Point {
    /// Index into the submodule lattice of the module the space was built from.
    Submodule(usize),
    Prime(Ideal),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseOpen {
    pub label: String,
    pub set: FixedBitSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TopoProperties {
    pub connected: bool,
    pub t0: bool,
    pub t1: bool,
    pub sober: bool,
    /// T0 and sober. Quasi-compactness and the quasi-compact open base
    /// condition hold for every finite space.
    pub spectral: bool,
    pub quasi_compact: bool,
}

#[derive(Debug, Clone)]
pub struct FiniteTopology {
    points: Vec<Point>,
    closed: Vec<FixedBitSet>,
    base: Option<Vec<BaseOpen>>,
    point_closure: Vec<usize>,
    closures: Vec<FixedBitSet>,
}

pub fn empty_set(n: usize) -> FixedBitSet {
    FixedBitSet::with_capacity(n)
}

pub fn full_set(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

pub fn complement(set: &FixedBitSet) -> FixedBitSet {
    let mut c = set.clone();
    c.toggle_range(..);
    c
}

pub fn singleton(n: usize, i: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert(i);
    s
}

pub fn indices(set: &FixedBitSet) -> Vec<usize> {
    set.ones().collect()
}

fn axiom(msg: impl Into<String>) -> Error {
    Error::Topology(msg.into())
}

impl FiniteTopology {
    /// Builds a space from a (possibly redundant) list of closed sets and
    /// verifies the closed-set axioms.
    pub fn new(points: Vec<Point>, family: Vec<FixedBitSet>) -> Result<Self> {
        let n = points.len();
        let mut closed = family;
        for c in &closed {
            if c.len() != n {
                return Err(axiom(format!("closed set over {} points, space has {n}", c.len())));
            }
        }
        closed.sort();
        closed.dedup();

        let mut space = FiniteTopology { points, closed, base: None, point_closure: Vec::new(), closures: Vec::new() };
        space.check_axioms()?;
        space.compute_point_closures();
        Ok(space)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        if !self.is_closed(&empty_set(n)) {
            return Err(axiom("the empty set is not closed"));
        }
        if !self.is_closed(&full_set(n)) {
            return Err(axiom("the whole space is not closed"));
        }
        for (i, a) in self.closed.iter().enumerate() {
            for b in &self.closed[i + 1..] {
                let mut u = a.clone();
                u.union_with(b);
                if !self.is_closed(&u) {
                    return Err(axiom("closed sets are not closed under finite union"));
                }
            }
        }
        if self.closed.len() <= SUBFAMILY_CHECK_LIMIT {
            // every nonempty subfamily, depth first
            fn walk(space: &FiniteTopology, from: usize, acc: &FixedBitSet) -> bool {
                (from..space.closed.len()).all(|j| {
                    let mut next = acc.clone();
                    next.intersect_with(&space.closed[j]);
                    space.is_closed(&next) && walk(space, j + 1, &next)
                })
            }
            if !walk(self, 0, &full_set(n)) {
                return Err(axiom("closed sets are not closed under intersection"));
            }
        } else {
            for (i, a) in self.closed.iter().enumerate() {
                for b in &self.closed[i + 1..] {
                    let mut x = a.clone();
                    x.intersect_with(b);
                    if !self.is_closed(&x) {
                        return Err(axiom("closed sets are not closed under intersection"));
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_point_closures(&mut self) {
        let n = self.len();
        let words = self.closed.len().div_ceil(64);
        let mut by_signature: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut point_closure = Vec::with_capacity(n);
        let mut closures = Vec::new();
        for x in 0..n {
            let mut sig = vec![0u64; words];
            for (j, c) in self.closed.iter().enumerate() {
                if c.contains(x) {
                    sig[j / 64] |= 1 << (j % 64);
                }
            }
            let next = closures.len();
            let id = *by_signature.entry(sig).or_insert_with_key(|sig| {
                let mut cl = full_set(n);
                for (j, c) in self.closed.iter().enumerate() {
                    if sig[j / 64] >> (j % 64) & 1 == 1 {
                        cl.intersect_with(c);
                    }
                }
                closures.push(cl);
                next
            });
            point_closure.push(id);
        }
        self.point_closure = point_closure;
        self.closures = closures;
    }

    /// Attaches a labelled open base after checking that its members are open
    /// and that every open set is the union of the base members inside it.
    pub fn with_base(mut self, base: Vec<BaseOpen>) -> Result<Self> {
        let n = self.len();
        for b in &base {
            if b.set.len() != n || !self.is_open(&b.set) {
                return Err(axiom(format!("base member {} is not open", b.label)));
            }
        }
        for c in &self.closed {
            let open = complement(c);
            let mut covered = empty_set(n);
            for b in &base {
                if b.set.is_subset(&open) {
                    covered.union_with(&b.set);
                }
            }
            if covered != open {
                return Err(axiom("base does not generate the topology"));
            }
        }
        self.base = Some(base);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn closed_sets(&self) -> &[FixedBitSet] {
        &self.closed
    }

    pub fn base(&self) -> Option<&[BaseOpen]> {
        self.base.as_deref()
    }

    pub fn open_sets(&self) -> Vec<FixedBitSet> {
        let mut open: Vec<_> = self.closed.iter().map(complement).collect();
        open.sort();
        open
    }

    pub fn is_closed(&self, set: &FixedBitSet) -> bool {
        self.closed.binary_search(set).is_ok()
    }

    pub fn is_open(&self, set: &FixedBitSet) -> bool {
        self.is_closed(&complement(set))
    }

    /// Smallest closed superset.
    pub fn closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut cl = full_set(self.len());
        for c in &self.closed {
            if set.is_subset(c) {
                cl.intersect_with(c);
            }
        }
        cl
    }

    pub fn point_closure(&self, x: usize) -> &FixedBitSet {
        &self.closures[self.point_closure[x]]
    }

    /// `x` specializes `y`: x lies in the closure of y.
    pub fn specializes(&self, x: usize, y: usize) -> bool {
        self.point_closure(y).contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.closed.len() <= 2
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|x| self.point_closure(x).count_ones(..) == 1)
            && self.closed.len() == 1usize.checked_shl(self.len() as u32).unwrap_or(usize::MAX)
    }

    /// Subspace irreducibility: nonempty and not covered by two closed sets
    /// neither of which covers it.
    pub fn is_irreducible(&self, set: &FixedBitSet) -> bool {
        if set.is_clear() {
            return false;
        }
        if self.closed.len() > PAIR_SCAN_LIMIT {
            return self.is_irreducible_by_points(set);
        }
        let proper: Vec<&FixedBitSet> = self.closed.iter().filter(|c| !set.is_subset(c)).collect();
        for (i, a) in proper.iter().enumerate() {
            for b in &proper[i..] {
                let mut u = (*a).clone();
                u.union_with(b);
                if set.is_subset(&u) {
                    return false;
                }
            }
        }
        true
    }

    /// In a finite space a nonempty set is irreducible exactly when one of its
    /// points has the whole set in its closure.
    pub fn is_irreducible_by_points(&self, set: &FixedBitSet) -> bool {
        set.ones().any(|y| set.is_subset(self.point_closure(y)))
    }

    /// Maximal irreducible closed sets, in family order.
    pub fn irreducible_components(&self) -> Vec<FixedBitSet> {
        let candidates: Vec<&FixedBitSet> = if self.closed.len() <= PAIR_SCAN_LIMIT {
            self.closed.iter().filter(|c| self.is_irreducible(c)).collect()
        } else {
            let mut c: Vec<&FixedBitSet> = self.closures.iter().collect();
            c.sort();
            c
        };
        candidates
            .iter()
            .filter(|c| !candidates.iter().any(|d| d != *c && c.is_subset(d)))
            .map(|c| (*c).clone())
            .collect()
    }

    pub fn generic_points(&self, set: &FixedBitSet) -> Result<Vec<usize>> {
        if !self.is_closed(set) {
            return Err(Error::NotClosed);
        }
        Ok(set.ones().filter(|&x| self.point_closure(x) == set).collect())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        let empty = empty_set(n);
        let full = full_set(n);
        !self.closed.iter().any(|c| *c != empty && *c != full && self.is_closed(&complement(c)))
    }

    pub fn is_t0(&self) -> bool {
        self.closures.len() == self.len()
    }

    pub fn is_t1(&self) -> bool {
        (0..self.len()).all(|x| self.point_closure(x).count_ones(..) == 1)
    }

    pub fn is_sober(&self) -> bool {
        let irreducible_closed: Vec<&FixedBitSet> = if self.closed.len() <= PAIR_SCAN_LIMIT {
            self.closed.iter().filter(|c| self.is_irreducible(c)).collect()
        } else {
            self.closures.iter().collect()
        };
        irreducible_closed
            .into_iter()
            .all(|f| f.ones().filter(|&x| self.point_closure(x) == f).count() == 1)
    }

    pub fn properties(&self) -> TopoProperties {
        let t0 = self.is_t0();
        let sober = self.is_sober();
        TopoProperties {
            connected: self.is_connected(),
            t0,
            t1: self.is_t1(),
            sober,
            spectral: t0 && sober,
            quasi_compact: true,
        }
    }

    pub fn image(&self, assignment: &[usize], set: &FixedBitSet, target_len: usize) -> FixedBitSet {
        let mut out = empty_set(target_len);
        for x in set.ones() {
            out.insert(assignment[x]);
        }
        out
    }
}

pub fn preimage(assignment: &[usize], set: &FixedBitSet) -> FixedBitSet {
    let mut out = empty_set(assignment.len());
    for (x, &y) in assignment.iter().enumerate() {
        if set.contains(y) {
            out.insert(x);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomeomorphismSearch {
    Found(Vec<usize>),
    NotHomeomorphic,
    /// The spaces exceed [`HOMEOMORPHISM_SEARCH_LIMIT`].
    NotAttempted,
}

/// Searches for a bijection preserving the specialization preorder (which
/// determines a finite topology), pruning by closure-size and up-set-size
/// fingerprints.
pub fn find_homeomorphism(a: &FiniteTopology, b: &FiniteTopology) -> HomeomorphismSearch {
    let n = a.len();
    if n != b.len() || a.closed_sets().len() != b.closed_sets().len() {
        return HomeomorphismSearch::NotHomeomorphic;
    }
    if n > HOMEOMORPHISM_SEARCH_LIMIT {
        return HomeomorphismSearch::NotAttempted;
    }
    let fingerprint = |s: &FiniteTopology, x: usize| {
        let down = s.point_closure(x).count_ones(..);
        let up = (0..s.len()).filter(|&y| s.specializes(x, y)).count();
        (down, up)
    };
    let fa: Vec<_> = (0..n).map(|x| fingerprint(a, x)).collect();
    let fb: Vec<_> = (0..n).map(|x| fingerprint(b, x)).collect();
    let mut sa = fa.clone();
    let mut sb = fb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return HomeomorphismSearch::NotHomeomorphic;
    }

    fn extend(
        a: &FiniteTopology,
        b: &FiniteTopology,
        fa: &[(usize, usize)],
        fb: &[(usize, usize)],
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let x = map.len();
        if x == a.len() {
            return true;
        }
        for y in 0..b.len() {
            if used[y] || fa[x] != fb[y] {
                continue;
            }
            let consistent = (0..x).all(|w| {
                let v = map[w];
                a.specializes(x, w) == b.specializes(y, v) && a.specializes(w, x) == b.specializes(v, y)
            });
            if !consistent {
                continue;
            }
            used[y] = true;
            map.push(y);
            if extend(a, b, fa, fb, map, used) {
                return true;
            }
            map.pop();
            used[y] = false;
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(a, b, &fa, &fb, &mut map, &mut used) {
        HomeomorphismSearch::Found(map)
    } else {
        HomeomorphismSearch::NotHomeomorphic
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> FixedBitSet {
        let mut s = empty_set(n);
        for &x in xs {
            s.insert(x);
        }
        s
    }

    fn pts(n: usize) -> Vec<Point> {
        (0..n).map(Point::Submodule).collect()
    }

    fn sierpinski() -> FiniteTopology {
        // closed: {}, {0}, {0,1}
        FiniteTopology::new(pts(2), vec![set(2, &[]), set(2, &[0]), set(2, &[0, 1])]).unwrap()
    }

    #[test]
    fn rejects_non_topologies() {
        let missing_union = vec![set(3, &[]), set(3, &[0]), set(3, &[1]), set(3, &[0, 1, 2])];
        assert!(FiniteTopology::new(pts(3), missing_union).is_err());
        let missing_whole = vec![set(2, &[])];
        assert!(FiniteTopology::new(pts(2), missing_whole).is_err());
        let missing_meet = vec![set(3, &[]), set(3, &[0, 1]), set(3, &[1, 2]), set(3, &[0, 1, 2])];
        assert!(FiniteTopology::new(pts(3), missing_meet).is_err());
    }

    #[test]
    fn sierpinski_space() {
        let s = sierpinski();
        let p = s.properties();
        assert!(p.connected && p.t0 && !p.t1 && p.sober && p.spectral);
        assert_eq!(s.closure(&set(2, &[1])), set(2, &[0, 1]));
        assert_eq!(s.generic_points(&set(2, &[0, 1])).unwrap(), vec![1]);
        assert_eq!(s.irreducible_components(), vec![set(2, &[0, 1])]);
        assert!(s.generic_points(&set(2, &[1])).is_err());
    }

    #[test]
    fn trivial_and_discrete() {
        let trivial = FiniteTopology::new(pts(3), vec![set(3, &[]), full_set(3)]).unwrap();
        assert!(trivial.is_trivial() && !trivial.is_t0());
        assert_eq!(trivial.generic_points(&full_set(3)).unwrap(), vec![0, 1, 2]);
        let p = trivial.properties();
        assert!(p.connected && !p.sober && !p.spectral);

        let discrete =
            FiniteTopology::new(pts(2), vec![set(2, &[]), set(2, &[0]), set(2, &[1]), full_set(2)]).unwrap();
        assert!(discrete.is_discrete());
        let p = discrete.properties();
        assert!(!p.connected && p.t0 && p.t1 && p.spectral);
        assert!(!discrete.is_irreducible(&full_set(2)));
        assert!(discrete.is_irreducible(&set(2, &[1])));
        assert_eq!(discrete.irreducible_components().len(), 2);
    }

    #[test]
    fn empty_space_conventions() {
        let e = FiniteTopology::new(vec![], vec![empty_set(0)]).unwrap();
        assert!(e.is_connected());
        assert!(!e.is_irreducible(&empty_set(0)));
        assert!(e.irreducible_components().is_empty());
    }

    #[test]
    fn base_is_checked() {
        let s = sierpinski();
        let good = vec![BaseOpen { label: "U".into(), set: set(2, &[1]) }, BaseOpen { label: "X".into(), set: full_set(2) }];
        assert!(s.clone().with_base(good).is_ok());
        let not_open = vec![BaseOpen { label: "V".into(), set: set(2, &[0]) }];
        assert!(s.clone().with_base(not_open).is_err());
        let too_small = vec![BaseOpen { label: "X".into(), set: full_set(2) }];
        assert!(s.with_base(too_small).is_err());
    }

    #[test]
    fn homeomorphism_search() {
        let a = sierpinski();
        let b = FiniteTopology::new(pts(2), vec![set(2, &[]), set(2, &[1]), set(2, &[0, 1])]).unwrap();
        assert_eq!(find_homeomorphism(&a, &b), HomeomorphismSearch::Found(vec![1, 0]));
        let d = FiniteTopology::new(pts(2), vec![set(2, &[]), set(2, &[0]), set(2, &[1]), full_set(2)]).unwrap();
        assert_eq!(find_homeomorphism(&a, &d), HomeomorphismSearch::NotHomeomorphic);
    }

    #[test]
    fn irreducibility_routes_agree() {
        // chain 0 <= 1 <= 2 plus an isolated point 3
        let fam = vec![
            set(4, &[]),
            set(4, &[0]),
            set(4, &[0, 1]),
            set(4, &[0, 1, 2]),
            set(4, &[3]),
            set(4, &[0, 3]),
            set(4, &[0, 1, 3]),
            full_set(4),
        ];
        let s = FiniteTopology::new(pts(4), fam).unwrap();
        for mask in 0u32..16 {
            let y: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
            let y = set(4, &y);
            assert_eq!(s.is_irreducible(&y), !y.is_clear() && s.is_irreducible_by_points(&y));
        }
        assert_eq!(s.irreducible_components().len(), 2);
    }
}
