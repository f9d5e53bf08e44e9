//! Finite lattices: validation, meets and joins, element classification,
//! dismantlability and crown detection.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::poset::{CoverDigraph, Element};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Meet,
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("the empty poset is not a lattice")]
    Empty,
    #[error("elements {x} and {y} have no unique {missing:?}")]
    NotALattice { x: Element, y: Element, missing: Bound },
    #[error("element {label} is out of range for a lattice on {n} elements")]
    LabelOutOfRange { label: Element, n: usize },
    #[error("{a} is not below {b}")]
    NotComparable { a: Element, b: Element },
}

/// A validated lattice with its order relation and meet/join tables cached.
#[derive(Clone, Debug)]
pub struct Lattice {
    digraph: CoverDigraph,
    leq: Vec<bool>,
    meet: Vec<Element>,
    join: Vec<Element>,
    bottom: Element,
    top: Element,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.digraph == other.digraph
    }
}

impl Eq for Lattice {}

/// Partition of the elements into reducible and doubly irreducible ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementClassification {
    pub red: BTreeSet<Element>,
    pub irr: BTreeSet<Element>,
    /// Doubly irreducible elements with exactly one upper and one lower cover.
    pub irr_star: BTreeSet<Element>,
}

impl Lattice {
    pub fn new(digraph: CoverDigraph) -> Result<Self, LatticeError> {
        let n = digraph.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let leq = digraph.order_matrix();
        let down_size: Vec<usize> = (0..n)
            .map(|x| (0..n).filter(|&z| leq[z * n + x]).count())
            .collect();

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let m = extremal_bound(n, &leq, &down_size, x, y, Bound::Meet)
                    .ok_or(LatticeError::NotALattice { x, y, missing: Bound::Meet })?;
                let j = extremal_bound(n, &leq, &down_size, x, y, Bound::Join)
                    .ok_or(LatticeError::NotALattice { x, y, missing: Bound::Join })?;
                meet[x * n + y] = m;
                meet[y * n + x] = m;
                join[x * n + y] = j;
                join[y * n + x] = j;
            }
        }
        let bottom = (0..n).find(|&x| down_size[x] == 1).expect("nonempty lattice has a bottom");
        let top = (0..n).find(|&x| down_size[x] == n).expect("nonempty lattice has a top");
        Ok(Lattice {
            digraph,
            leq,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn chain(len: usize) -> Self {
        Lattice::new(CoverDigraph::chain(len)).expect("nonempty chains are lattices")
    }

    pub fn digraph(&self) -> &CoverDigraph {
        &self.digraph
    }

    pub fn into_digraph(self) -> CoverDigraph {
        self.digraph
    }

    pub fn len(&self) -> usize {
        self.digraph.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edge_count(&self) -> usize {
        self.digraph.edge_count()
    }

    pub fn bottom(&self) -> Element {
        self.bottom
    }

    pub fn top(&self) -> Element {
        self.top
    }

    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn lt(&self, x: Element, y: Element) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: Element, y: Element) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn meet(&self, x: Element, y: Element) -> Element {
        self.meet[x * self.len() + y]
    }

    pub fn join(&self, x: Element, y: Element) -> Element {
        self.join[x * self.len() + y]
    }

    /// `(x ∧ y, x ∨ y)`.
    pub fn meet_join(&self, x: Element, y: Element) -> (Element, Element) {
        (self.meet(x, y), self.join(x, y))
    }

    pub fn is_join_reducible(&self, x: Element) -> bool {
        let n = self.len();
        (0..n).any(|y| y != x && (y + 1..n).any(|z| z != x && self.join(y, z) == x))
    }

    pub fn is_meet_reducible(&self, x: Element) -> bool {
        let n = self.len();
        (0..n).any(|y| y != x && (y + 1..n).any(|z| z != x && self.meet(y, z) == x))
    }

    pub fn is_reducible(&self, x: Element) -> bool {
        self.is_join_reducible(x) || self.is_meet_reducible(x)
    }

    pub fn classify_elements(&self) -> ElementClassification {
        let mut red = BTreeSet::new();
        let mut irr = BTreeSet::new();
        let mut irr_star = BTreeSet::new();
        for x in 0..self.len() {
            if self.is_reducible(x) {
                red.insert(x);
            } else {
                irr.insert(x);
                if self.digraph.is_irr_star(x) {
                    irr_star.insert(x);
                }
            }
        }
        ElementClassification { red, irr, irr_star }
    }

    pub fn reducible_count(&self) -> usize {
        (0..self.len()).filter(|&x| self.is_reducible(x)).count()
    }

    pub fn is_chain(&self) -> bool {
        self.digraph.is_chain()
    }

    /// A block has a meet-reducible bottom and a join-reducible top.
    pub fn is_block(&self) -> bool {
        self.digraph.upper_covers(self.bottom).len() >= 2
            && self.digraph.lower_covers(self.top).len() >= 2
    }

    pub fn dual(&self) -> Lattice {
        Lattice::new(self.digraph.dual()).expect("the dual of a lattice is a lattice")
    }

    pub fn relabel(&self, perm: &[Element]) -> Lattice {
        Lattice::new(self.digraph.relabel(perm)).expect("relabelling preserves lattices")
    }

    fn check_label(&self, x: Element) -> Result<(), LatticeError> {
        if x >= self.len() {
            return Err(LatticeError::LabelOutOfRange { label: x, n: self.len() });
        }
        Ok(())
    }

    /// Whether the lattice can be taken down to a single element by
    /// removing, one at a time, an element that is doubly irreducible in the
    /// current sublattice.
    ///
    /// Exhaustive over removal orders (memoized on the remaining set), so it
    /// does not rely on any particular order being safe. Oracle scale only:
    /// at most 64 elements.
    pub fn is_dismantlable(&self) -> bool {
        let n = self.len();
        assert!(n <= 64, "dismantlability search is limited to 64 elements");
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut dead = HashSet::new();
        self.dismantle_from(full, &mut dead)
    }

    fn dismantle_from(&self, alive: u64, dead: &mut HashSet<u64>) -> bool {
        if alive.count_ones() <= 1 {
            return true;
        }
        if dead.contains(&alive) {
            return false;
        }
        let members: Vec<Element> = (0..self.len()).filter(|&x| alive >> x & 1 == 1).collect();
        for &x in &members {
            let reducible = members.iter().any(|&y| {
                y != x
                    && members.iter().any(|&z| {
                        z != x && z != y && (self.join(y, z) == x || self.meet(y, z) == x)
                    })
            });
            if !reducible && self.dismantle_from(alive & !(1u64 << x), dead) {
                return true;
            }
        }
        dead.insert(alive);
        false
    }

    /// Whether some subposet is a crown: `x1 < y1 > x2 < y2 > ... > xk < yk > x1`
    /// with `k >= 3` and no other comparabilities among the `2k` elements.
    ///
    /// Exhaustive search; only intended for oracle-sized lattices.
    pub fn contains_crown(&self) -> bool {
        let n = self.len();
        // The bounds are comparable to everything, so they never occur.
        let candidates: Vec<Element> = (0..n)
            .filter(|&x| x != self.bottom && x != self.top)
            .collect();
        let mut path = Vec::with_capacity(n);
        for &start in &candidates {
            path.clear();
            path.push(start);
            if self.extend_crown(&candidates, &mut path) {
                return true;
            }
        }
        false
    }

    /// `path` alternates lower (even index) and upper (odd index) elements.
    fn extend_crown(&self, candidates: &[Element], path: &mut Vec<Element>) -> bool {
        let t = path.len();
        let prev = path[t - 1];
        let first = path[0];
        let want_upper = t % 2 == 1;
        for &c in candidates {
            // Smallest lower element is the starting point.
            if path.contains(&c) || (!want_upper && c < first) {
                continue;
            }
            let linked = if want_upper { self.lt(prev, c) } else { self.lt(c, prev) };
            if !linked {
                continue;
            }
            let free = path.iter().take(t - 1).skip(1).all(|&e| !self.comparable(e, c));
            if !free {
                continue;
            }
            let touches_first = t >= 2 && self.comparable(first, c);
            if want_upper && touches_first {
                // Closing edge back to x1; needs at least three lower elements.
                if t >= 5 && self.lt(first, c) {
                    return true;
                }
                continue;
            }
            if touches_first {
                continue;
            }
            path.push(c);
            if self.extend_crown(candidates, path) {
                return true;
            }
            path.pop();
        }
        false
    }

    /// All maximal chains of the interval `[a, b]`, each listed from `a` up to `b`.
    pub fn maximal_chains_in_interval(
        &self,
        a: Element,
        b: Element,
    ) -> Result<Vec<Vec<Element>>, LatticeError> {
        self.check_label(a)?;
        self.check_label(b)?;
        if !self.leq(a, b) {
            return Err(LatticeError::NotComparable { a, b });
        }
        let mut out = Vec::new();
        let mut current = vec![a];
        self.chains_dfs(b, &mut current, &mut out);
        Ok(out)
    }

    fn chains_dfs(&self, b: Element, current: &mut Vec<Element>, out: &mut Vec<Vec<Element>>) {
        let last = *current.last().expect("chain is never empty");
        if last == b {
            out.push(current.clone());
            return;
        }
        for &u in self.digraph.upper_covers(last) {
            if self.leq(u, b) {
                current.push(u);
                self.chains_dfs(b, current, out);
                current.pop();
            }
        }
    }
}

/// The greatest common lower bound (or least common upper bound) of `x`
/// and `y`, if it exists.
fn extremal_bound(
    n: usize,
    leq: &[bool],
    down_size: &[usize],
    x: Element,
    y: Element,
    which: Bound,
) -> Option<Element> {
    let is_bound = |z: Element| match which {
        Bound::Meet => leq[z * n + x] && leq[z * n + y],
        Bound::Join => leq[x * n + z] && leq[y * n + z],
    };
    let bounds: Vec<Element> = (0..n).filter(|&z| is_bound(z)).collect();
    let best = match which {
        Bound::Meet => bounds.iter().copied().max_by_key(|&z| down_size[z])?,
        Bound::Join => bounds.iter().copied().min_by_key(|&z| down_size[z])?,
    };
    let dominates = bounds.iter().all(|&z| match which {
        Bound::Meet => leq[z * n + best],
        Bound::Join => leq[best * n + z],
    });
    dominates.then_some(best)
}

/// Validates `p` as a lattice.
pub fn as_lattice(p: CoverDigraph) -> Result<Lattice, LatticeError> {
    Lattice::new(p)
}

pub fn meet_join(l: &Lattice, x: Element, y: Element) -> (Element, Element) {
    l.meet_join(x, y)
}

pub fn classify_elements(l: &Lattice) -> ElementClassification {
    l.classify_elements()
}

pub fn is_dismantlable(l: &Lattice) -> bool {
    l.is_dismantlable()
}

pub fn contains_crown(l: &Lattice) -> bool {
    l.contains_crown()
}

pub fn maximal_chains_in_interval(
    l: &Lattice,
    a: Element,
    b: Element,
) -> Result<Vec<Vec<Element>>, LatticeError> {
    l.maximal_chains_in_interval(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::poset::build_poset;

    #[test]
    fn chain_and_diamond_are_lattices() {
        let c = Lattice::chain(3);
        assert_eq!((c.bottom(), c.top()), (0, 2));
        assert!(c.is_chain());
        let m2 = named::m2();
        assert_eq!(m2.meet_join(1, 2), (0, 3));
        assert_eq!(c.meet_join(0, 2), (0, 2));
    }

    #[test]
    fn v_shape_is_not_a_lattice() {
        let v = build_poset(4, &[(0, 1), (0, 2), (1, 3)]).unwrap();
        // 2 and 3 are both maximal: no join.
        let err = Lattice::new(v).unwrap_err();
        assert!(matches!(err, LatticeError::NotALattice { missing: Bound::Join, .. }));

        let two_max = build_poset(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(
            Lattice::new(two_max).unwrap_err(),
            LatticeError::NotALattice { x: 1, y: 2, missing: Bound::Join }
        );
        assert_eq!(Lattice::new(build_poset(0, &[]).unwrap()), Err(LatticeError::Empty));
    }

    #[test]
    fn bottom_and_top_are_discovered() {
        let p = build_poset(3, &[(2, 0), (0, 1)]).unwrap();
        let l = Lattice::new(p).unwrap();
        assert_eq!((l.bottom(), l.top()), (2, 1));
    }

    #[test]
    fn f1_meet_join() {
        // 0, a, a1, a2, b, 1
        let f1 = named::f1();
        assert_eq!(f1.meet_join(2, 3), (1, 5));
        assert_eq!(f1.meet_join(1, 4), (0, 5));
    }

    #[test]
    fn classification_examples() {
        let c = Lattice::chain(5).classify_elements();
        assert!(c.red.is_empty());
        assert_eq!(c.irr_star, (1..4).collect());

        let m2 = named::m2().classify_elements();
        assert_eq!(m2.red, [0, 3].into_iter().collect());

        let f1 = named::f1().classify_elements();
        assert_eq!(f1.red, [0, 1, 5].into_iter().collect());
        assert_eq!(f1.irr.len(), 3);
    }

    #[test]
    fn reducibility_matches_cover_degrees() {
        for l in [named::m2(), named::f1(), named::f2(), named::f3(), named::f4(), named::boolean_cube()] {
            for x in 0..l.len() {
                assert_eq!(l.is_join_reducible(x), l.digraph().lower_covers(x).len() >= 2);
                assert_eq!(l.is_meet_reducible(x), l.digraph().upper_covers(x).len() >= 2);
            }
        }
    }

    #[test]
    fn dismantlability_and_crowns() {
        assert!(Lattice::chain(4).is_dismantlable());
        assert!(!Lattice::chain(4).contains_crown());
        assert!(named::f3().is_dismantlable());
        assert!(!named::f1().contains_crown());
        let cube = named::boolean_cube();
        assert!(!cube.is_dismantlable());
        assert!(cube.contains_crown());
        assert!(Lattice::chain(1).is_dismantlable());
    }

    #[test]
    fn maximal_chain_examples() {
        let c = Lattice::chain(4);
        assert_eq!(c.maximal_chains_in_interval(0, 3).unwrap().len(), 1);
        assert_eq!(named::m2().maximal_chains_in_interval(0, 3).unwrap().len(), 2);
        let f1 = named::f1();
        assert_eq!(
            f1.maximal_chains_in_interval(1, 5).unwrap(),
            vec![vec![1, 2, 5], vec![1, 3, 5]]
        );
        assert_eq!(
            named::m2().maximal_chains_in_interval(1, 2),
            Err(LatticeError::NotComparable { a: 1, b: 2 })
        );
    }
}
