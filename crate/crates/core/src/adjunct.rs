//! Adjunct sums, direct sums and adjunct representations.
//!
//! An [`AdjunctRep`] is a spine chain with further chains glued into gaps
//! between spine elements. Every lattice whose reducible elements are
//! pairwise comparable has such a representation, and [`decompose`] finds
//! one whose spine runs through all reducible elements.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Lattice, LatticeError};
use crate::poset::{CoverDigraph, Element};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjunctError {
    #[error("{a} is covered by {b}; an adjunct pair must not be a cover")]
    PairIsCover { a: Element, b: Element },
    #[error("{a} is not strictly below {b}")]
    PairNotComparable { a: Element, b: Element },
    #[error("element {label} is out of range for {n} elements")]
    LabelOutOfRange { label: Element, n: usize },
    #[error("chains must have at least one element")]
    EmptyChain,
    #[error("attachment {index}: {source}")]
    Attachment {
        index: usize,
        #[source]
        source: Box<AdjunctError>,
    },
    #[error("lattice is not dismantlable")]
    NotDismantlable,
    #[error("reducible elements {x} and {y} are incomparable")]
    IncomparableReducibles { x: Element, y: Element },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Glues `l2` into the gap between `a` and `b` of `l1`.
///
/// The elements of `l2` are relabelled to `l1.len()..`, and the two new
/// covers are `a ≺ bottom(l2)` and `top(l2) ≺ b`.
pub fn adjunct_sum(
    l1: &Lattice,
    l2: &Lattice,
    a: Element,
    b: Element,
) -> Result<Lattice, AdjunctError> {
    let n1 = l1.len();
    for label in [a, b] {
        if label >= n1 {
            return Err(AdjunctError::LabelOutOfRange { label, n: n1 });
        }
    }
    if !l1.lt(a, b) {
        return Err(AdjunctError::PairNotComparable { a, b });
    }
    if l1.digraph().is_cover(a, b) {
        return Err(AdjunctError::PairIsCover { a, b });
    }
    let mut covers: Vec<(Element, Element)> = l1.digraph().covers().to_vec();
    covers.extend(l2.digraph().covers().iter().map(|&(x, y)| (x + n1, y + n1)));
    covers.push((a, l2.bottom() + n1));
    covers.push((l2.top() + n1, b));
    let p = CoverDigraph::new(n1 + l2.len(), covers).expect("adjunct sum keeps covers irredundant");
    Ok(Lattice::new(p).expect("adjunct sum of lattices is a lattice"))
}

/// Ordered sum: every element of `n` sits above every element of `m`.
///
/// Elements of `n` are relabelled to `m.len()..`. Covers join each maximal
/// element of `m` to each minimal element of `n`.
pub fn direct_sum(m: &CoverDigraph, n: &CoverDigraph) -> CoverDigraph {
    let shift = m.len();
    let mut covers: Vec<(Element, Element)> = m.covers().to_vec();
    covers.extend(n.covers().iter().map(|&(x, y)| (x + shift, y + shift)));
    for hi in m.maximal_elements() {
        for lo in n.minimal_elements() {
            covers.push((hi, lo + shift));
        }
    }
    CoverDigraph::new(m.len() + n.len(), covers).expect("ordered sum is a valid cover relation")
}

/// A gap in the spine, given as spine heights: `a < b` with `b - a >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AdjunctPair {
    pub a: usize,
    pub b: usize,
}

/// A chain of `len` elements glued into the gap `pair` of the spine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Attachment {
    pub pair: AdjunctPair,
    pub len: usize,
}

/// Spine chain of `spine` elements (heights `0..spine`) plus attached chains.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AdjunctRep {
    pub spine: usize,
    pub attachments: Vec<Attachment>,
}

impl AdjunctRep {
    pub fn chain(len: usize) -> Self {
        AdjunctRep {
            spine: len,
            attachments: Vec::new(),
        }
    }

    pub fn attach(mut self, a: usize, b: usize, len: usize) -> Self {
        self.attachments.push(Attachment {
            pair: AdjunctPair { a, b },
            len,
        });
        self
    }

    /// Chain lengths, spine first.
    pub fn chain_lengths(&self) -> Vec<usize> {
        std::iter::once(self.spine)
            .chain(self.attachments.iter().map(|t| t.len))
            .collect()
    }

    pub fn chain_count(&self) -> usize {
        1 + self.attachments.len()
    }

    pub fn element_count(&self) -> usize {
        self.spine + self.attachments.iter().map(|t| t.len).sum::<usize>()
    }

    pub fn pairs(&self) -> Vec<AdjunctPair> {
        self.attachments.iter().map(|t| t.pair).collect()
    }

    /// How often each pair occurs.
    pub fn multiplicities(&self) -> Vec<(AdjunctPair, usize)> {
        let mut pairs = self.pairs();
        pairs.sort();
        let mut out: Vec<(AdjunctPair, usize)> = Vec::new();
        for p in pairs {
            match out.last_mut() {
                Some((q, k)) if *q == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Same lattice, attachments sorted.
    pub fn normalized(mut self) -> Self {
        self.attachments.sort();
        self
    }
}

impl fmt::Display for AdjunctRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.spine)?;
        for t in &self.attachments {
            write!(f, " ]({},{}) C{}", t.pair.a, t.pair.b, t.len)?;
        }
        Ok(())
    }
}

/// Builds the lattice of `rep`: spine elements get labels `0..spine` by
/// height, then each attached chain gets the next consecutive labels.
pub fn realize(rep: &AdjunctRep) -> Result<Lattice, AdjunctError> {
    if rep.spine == 0 {
        return Err(AdjunctError::EmptyChain);
    }
    let mut acc = Lattice::chain(rep.spine);
    for (index, t) in rep.attachments.iter().enumerate() {
        let wrap = |source| AdjunctError::Attachment {
            index,
            source: Box::new(source),
        };
        if t.len == 0 {
            return Err(wrap(AdjunctError::EmptyChain));
        }
        acc = adjunct_sum(&acc, &Lattice::chain(t.len), t.pair.a, t.pair.b).map_err(wrap)?;
    }
    Ok(acc)
}

/// Number of times `(a, b)` occurs as an adjunct pair: one less than the
/// largest family of maximal chains of `[a, b]` whose interiors pairwise
/// meet in `a` and join in `b`. Zero when `(a, b)` is no adjunct pair.
pub fn pair_multiplicity(l: &Lattice, a: Element, b: Element) -> Result<usize, LatticeError> {
    let chains = l.maximal_chains_in_interval(a, b)?;
    if a == b {
        return Ok(0);
    }
    let interiors: Vec<&[Element]> = chains.iter().map(|c| &c[1..c.len() - 1]).collect();
    if interiors.iter().any(|i| i.is_empty()) {
        return Ok(0);
    }
    let k = interiors.len();
    let compatible = |i: usize, j: usize| {
        interiors[i]
            .iter()
            .all(|&x| interiors[j].iter().all(|&y| l.meet_join(x, y) == (a, b)))
    };
    let adjacency: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| i != j && compatible(i, j)).collect())
        .collect();
    let clique = max_clique(&adjacency, &mut Vec::new(), 0);
    Ok(clique.saturating_sub(1))
}

fn max_clique(adjacency: &[Vec<bool>], chosen: &mut Vec<usize>, from: usize) -> usize {
    let mut best = chosen.len();
    for v in from..adjacency.len() {
        if chosen.iter().all(|&u| adjacency[u][v]) {
            chosen.push(v);
            best = best.max(max_clique(adjacency, chosen, v + 1));
            chosen.pop();
        }
    }
    best
}

/// Adjunct representation with the lexicographically smallest maximal
/// chain through all reducible elements as spine; attachments normalized.
pub fn decompose(l: &Lattice) -> Result<AdjunctRep, AdjunctError> {
    if !l.is_dismantlable() {
        return Err(AdjunctError::NotDismantlable);
    }
    let p = l.digraph();
    let mut red = p.reducible_elements();
    for (i, &x) in red.iter().enumerate() {
        if let Some(&y) = red[i + 1..].iter().find(|&&y| !l.comparable(x, y)) {
            return Err(AdjunctError::IncomparableReducibles { x, y });
        }
    }
    red.sort_by_key(|&x| (0..l.len()).filter(|&z| l.leq(z, x)).count());

    let spine = spine_through(l, &red);
    let mut height = vec![None; l.len()];
    for (h, &x) in spine.iter().enumerate() {
        height[x] = Some(h);
    }

    let mut attachments = Vec::new();
    for &x in &spine {
        for &start in p.upper_covers(x) {
            if height[start].is_some() {
                continue;
            }
            // Off-spine elements are doubly irreducible: walk the path up.
            let mut len = 1;
            let mut cur = start;
            let end = loop {
                let up = p.upper_covers(cur)[0];
                if let Some(h) = height[up] {
                    break h;
                }
                cur = up;
                len += 1;
            };
            attachments.push(Attachment {
                pair: AdjunctPair {
                    a: height[x].expect("x is on the spine"),
                    b: end,
                },
                len,
            });
        }
    }
    Ok(AdjunctRep {
        spine: spine.len(),
        attachments,
    }
    .normalized())
}

/// Greedy smallest-label maximal chain visiting `targets` (sorted upward).
fn spine_through(l: &Lattice, targets: &[Element]) -> Vec<Element> {
    let p = l.digraph();
    let mut chain = vec![l.bottom()];
    let mut cur = l.bottom();
    while cur != l.top() {
        let goal = targets
            .iter()
            .copied()
            .find(|&t| l.lt(cur, t))
            .unwrap_or(l.top());
        cur = p
            .upper_covers(cur)
            .iter()
            .copied()
            .filter(|&u| l.leq(u, goal))
            .min()
            .expect("some upper cover lies below the goal");
        chain.push(cur);
    }
    chain
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_certificate;
    use crate::named;

    fn cert(l: &Lattice) -> crate::canon::Certificate {
        canonical_certificate(l.digraph())
    }

    #[test]
    fn adjunct_of_three_chain_is_diamond() {
        let l = adjunct_sum(&Lattice::chain(3), &Lattice::chain(1), 0, 2).unwrap();
        assert_eq!(cert(&l), cert(&named::m2()));
        assert_eq!(l.edge_count(), 2 + 0 + 2);
        assert_eq!(
            adjunct_sum(&Lattice::chain(3), &Lattice::chain(1), 0, 1),
            Err(AdjunctError::PairIsCover { a: 0, b: 1 })
        );
        assert_eq!(
            adjunct_sum(&named::m2(), &Lattice::chain(1), 1, 2),
            Err(AdjunctError::PairNotComparable { a: 1, b: 2 })
        );
    }

    #[test]
    fn direct_sum_examples() {
        let c = direct_sum(&CoverDigraph::chain(2), &CoverDigraph::chain(2));
        assert_eq!(c, CoverDigraph::chain(4));
        let s = direct_sum(named::m2().digraph(), &CoverDigraph::chain(1));
        assert_eq!(s.edge_count(), 5);
        let l = Lattice::new(s).unwrap();
        assert_eq!(l.classify_elements().red, [0, 3].into_iter().collect());
    }

    #[test]
    fn realize_examples() {
        let f1 = realize(&AdjunctRep::chain(4).attach(1, 3, 1).attach(0, 3, 1)).unwrap();
        assert_eq!(cert(&f1), cert(&named::f1()));
        assert_eq!(realize(&AdjunctRep::chain(5)).unwrap(), Lattice::chain(5));
        let mut rep = AdjunctRep::chain(3);
        for _ in 0..4 {
            rep = rep.attach(0, 2, 1);
        }
        let block = realize(&rep).unwrap();
        assert_eq!(block.digraph().nullity(), 4);
        assert!(matches!(
            realize(&AdjunctRep::chain(3).attach(0, 1, 1)),
            Err(AdjunctError::Attachment { index: 0, .. })
        ));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(pair_multiplicity(&named::m2(), 0, 3), Ok(1));
        assert_eq!(pair_multiplicity(&Lattice::chain(4), 0, 3), Ok(0));
        let f3 = named::f3();
        assert_eq!(pair_multiplicity(&f3, 0, 3), Ok(1));
        assert_eq!(pair_multiplicity(&f3, 3, 6), Ok(1));
        assert_eq!(pair_multiplicity(&f3, 0, 6), Ok(0));
        let f1 = named::f1();
        assert_eq!(pair_multiplicity(&f1, 0, 5), Ok(1));
        assert_eq!(pair_multiplicity(&f1, 0, 1), Ok(0));
        assert_eq!(
            pair_multiplicity(&f1, 2, 3),
            Err(LatticeError::NotComparable { a: 2, b: 3 })
        );
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&Lattice::chain(4)).unwrap(), AdjunctRep::chain(4));
        assert_eq!(
            decompose(&named::m2()).unwrap(),
            AdjunctRep::chain(3).attach(0, 2, 1)
        );
        let f4 = decompose(&named::f4()).unwrap();
        assert_eq!(f4.spine, 5);
        assert_eq!(
            f4.pairs(),
            vec![
                AdjunctPair { a: 0, b: 2 },
                AdjunctPair { a: 0, b: 4 },
                AdjunctPair { a: 2, b: 4 }
            ]
        );
        assert_eq!(
            decompose(&named::boolean_cube()),
            Err(AdjunctError::NotDismantlable)
        );
    }

    #[test]
    fn decompose_round_trips() {
        for l in [named::m2(), named::f1(), named::f2(), named::f3(), named::f4()] {
            let rep = decompose(&l).unwrap();
            let back = realize(&rep).unwrap();
            assert_eq!(cert(&back), cert(&l));
            assert_eq!(back.edge_count(), l.len() + rep.chain_count() - 2);
        }
    }
}
