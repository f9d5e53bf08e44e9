//! Retractions, basic blocks and fundamental basic blocks.
//!
//! A lattice whose reducible elements are pairwise comparable shrinks, by
//! contracting redundant paths and pruning pendant vertices, to a basic
//! block; keeping at most two ears per adjunct pair then yields its
//! fundamental basic block. With two reducible elements that is always the
//! diamond, with three it is one of four small blocks.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adjunct::{decompose, AdjunctError};
use crate::canon::{canonical_certificate, canonize, Certificate};
use crate::lattice::{Lattice, LatticeError};
use crate::named;
use crate::poset::{CoverDigraph, Element};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("element {0} is not doubly irreducible")]
    NotDoublyIrreducible(Element),
    #[error("element {label} is out of range for {n} elements")]
    LabelOutOfRange { label: Element, n: usize },
    #[error("expected 2 or 3 reducible elements, found {0}")]
    UnsupportedReducibleCount(usize),
    #[error("fundamental basic block {0} is none of the known classes")]
    UnexpectedClass(Certificate),
    #[error(transparent)]
    Adjunct(#[from] AdjunctError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Isomorphism class of a fundamental basic block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FbbClass {
    M2,
    F1,
    F2,
    F3,
    F4,
    Other,
}

impl FbbClass {
    pub const THREE_REDUCIBLE: [FbbClass; 4] = [FbbClass::F1, FbbClass::F2, FbbClass::F3, FbbClass::F4];

    pub fn of_certificate(cert: &Certificate) -> FbbClass {
        known_classes()
            .iter()
            .find(|(c, _)| c == cert)
            .map_or(FbbClass::Other, |&(_, class)| class)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FbbClass::M2 => "M2",
            FbbClass::F1 => "F1",
            FbbClass::F2 => "F2",
            FbbClass::F3 => "F3",
            FbbClass::F4 => "F4",
            FbbClass::Other => "Other",
        }
    }

    /// The class of the dual block.
    pub fn dual(self) -> FbbClass {
        match self {
            FbbClass::F1 => FbbClass::F2,
            FbbClass::F2 => FbbClass::F1,
            other => other,
        }
    }
}

impl fmt::Display for FbbClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn known_classes() -> &'static [(Certificate, FbbClass)] {
    static KNOWN: OnceLock<Vec<(Certificate, FbbClass)>> = OnceLock::new();
    KNOWN.get_or_init(|| {
        [
            (named::m2(), FbbClass::M2),
            (named::f1(), FbbClass::F1),
            (named::f2(), FbbClass::F2),
            (named::f3(), FbbClass::F3),
            (named::f4(), FbbClass::F4),
        ]
        .into_iter()
        .map(|(l, class)| (canonical_certificate(l.digraph()), class))
        .collect()
    })
}

fn is_red(p: &CoverDigraph, x: Element) -> bool {
    !p.is_doubly_irreducible(x)
}

/// Whether the doubly irreducible `x` can be contracted away: either it
/// does not sit between two reducible elements, or it is the only way
/// between them.
pub fn is_retractible(p: &CoverDigraph, x: Element) -> Result<bool, ReductionError> {
    if x >= p.len() {
        return Err(ReductionError::LabelOutOfRange { label: x, n: p.len() });
    }
    if !p.is_doubly_irreducible(x) {
        return Err(ReductionError::NotDoublyIrreducible(x));
    }
    let (Some(&y), Some(&z)) = (p.lower_covers(x).first(), p.upper_covers(x).first()) else {
        return Ok(true);
    };
    if !(is_red(p, y) && is_red(p, z)) {
        return Ok(true);
    }
    Ok(!reaches_avoiding(p, y, z, x))
}

/// Directed path from `from` to `to` that does not pass through `avoid`.
fn reaches_avoiding(p: &CoverDigraph, from: Element, to: Element, avoid: Element) -> bool {
    let mut seen = vec![false; p.len()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        for &u in p.upper_covers(v) {
            if u == to {
                return true;
            }
            if u != avoid && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    false
}

/// Removes `x` and relabels; `labels` tracks original names.
fn remove(p: &CoverDigraph, labels: &[Element], x: Element) -> (CoverDigraph, Vec<Element>) {
    let (q, keep) = p.without(&[x]);
    let labels = keep.iter().map(|&k| labels[k]).collect();
    (q, labels)
}

/// The eligible element with the smallest canonical position.
fn first_by_rank(p: &CoverDigraph, eligible: impl Iterator<Item = Element>) -> Option<Element> {
    let eligible: Vec<Element> = eligible.collect();
    if eligible.len() <= 1 {
        return eligible.first().copied();
    }
    let labelling = canonize(p).labelling;
    eligible.into_iter().min_by_key(|&x| labelling[x])
}

fn retract_step(p: &CoverDigraph) -> Option<Element> {
    let eligible = (0..p.len())
        .filter(|&x| p.is_irr_star(x) && is_retractible(p, x).expect("Irr* elements qualify"));
    first_by_rank(p, eligible)
}

fn pendant_step(p: &CoverDigraph) -> Option<Element> {
    first_by_rank(p, (0..p.len()).filter(|&x| p.degree(x) == 1))
}

/// Contracts retractible elements with one lower and one upper cover until
/// none is left. Also returns, for each surviving element, its label in `p`.
pub fn basic_retract_with_labels(p: &CoverDigraph) -> (CoverDigraph, Vec<Element>) {
    let mut cur = p.clone();
    let mut labels: Vec<Element> = (0..p.len()).collect();
    while let Some(x) = retract_step(&cur) {
        (cur, labels) = remove(&cur, &labels, x);
    }
    (cur, labels)
}

pub fn basic_retract(p: &CoverDigraph) -> CoverDigraph {
    basic_retract_with_labels(p).0
}

/// Alternates retraction and pendant removal until neither applies.
pub fn basic_block_with_labels(p: &CoverDigraph) -> (CoverDigraph, Vec<Element>) {
    let (mut cur, mut labels) = basic_retract_with_labels(p);
    while let Some(x) = pendant_step(&cur) {
        (cur, labels) = remove(&cur, &labels, x);
        let (next, kept) = basic_retract_with_labels(&cur);
        labels = kept.iter().map(|&k| labels[k]).collect();
        cur = next;
    }
    (cur, labels)
}

pub fn basic_block_of(p: &CoverDigraph) -> CoverDigraph {
    basic_block_with_labels(p).0
}

/// Whether deleting any doubly irreducible element lowers the nullity by
/// exactly one (vacuous for a single element).
pub fn is_basic_block(p: &CoverDigraph) -> bool {
    if p.len() <= 1 {
        return true;
    }
    let eta = p.nullity();
    (0..p.len())
        .filter(|&x| p.is_doubly_irreducible(x))
        .all(|x| p.without(&[x]).0.nullity() + 1 == eta)
}

/// A path `a ≺ v1 ≺ ... ≺ vk ≺ b` whose interior has only elements with
/// one lower and one upper cover.
struct Ear {
    a: Element,
    b: Element,
    interior: Vec<Element>,
}

fn ears(p: &CoverDigraph) -> Vec<Ear> {
    let mut out = Vec::new();
    for a in (0..p.len()).filter(|&x| !p.is_irr_star(x)) {
        for &start in p.upper_covers(a) {
            if !p.is_irr_star(start) {
                continue;
            }
            let mut interior = vec![start];
            let mut cur = start;
            let b = loop {
                let up = p.upper_covers(cur)[0];
                if !p.is_irr_star(up) {
                    break up;
                }
                interior.push(up);
                cur = up;
            };
            out.push(Ear { a, b, interior });
        }
    }
    out
}

/// Reduces the basic block of `l` so that no adjunct pair repeats.
///
/// For each pair `(a, b)` two ears survive when the open interval `(a, b)`
/// is doubly irreducible throughout, one otherwise. Shorter ears are kept
/// first, ties going to the smaller canonical position.
pub fn fundamental_basic_block_of(l: &Lattice) -> Result<Lattice, ReductionError> {
    // Refuses the same inputs as decomposition does.
    decompose(l)?;
    let block = Lattice::new(basic_block_of(l.digraph()))?;
    let p = block.digraph();
    let labelling = canonize(p).labelling;

    let mut by_pair: BTreeMap<(Element, Element), Vec<Ear>> = BTreeMap::new();
    for ear in ears(p) {
        by_pair.entry((ear.a, ear.b)).or_default().push(ear);
    }
    let mut removed = Vec::new();
    for ((a, b), mut group) in by_pair {
        let open_irreducible = (0..p.len())
            .filter(|&x| block.lt(a, x) && block.lt(x, b))
            .all(|x| p.is_doubly_irreducible(x));
        let keep = if open_irreducible { 2 } else { 1 };
        group.sort_by_key(|e| (e.interior.len(), e.interior.iter().map(|&x| labelling[x]).min()));
        for ear in group.iter().skip(keep) {
            removed.extend_from_slice(&ear.interior);
        }
    }
    let (reduced, _) = p.without(&removed);
    Ok(Lattice::new(reduced)?)
}

/// The class of the fundamental basic block of a lattice with two or three
/// reducible elements.
pub fn classify_fbb(l: &Lattice) -> Result<FbbClass, ReductionError> {
    let r = l.reducible_count();
    if !(2..=3).contains(&r) {
        return Err(ReductionError::UnsupportedReducibleCount(r));
    }
    let fbb = fundamental_basic_block_of(l)?;
    let cert = canonical_certificate(fbb.digraph());
    match FbbClass::of_certificate(&cert) {
        FbbClass::Other => Err(ReductionError::UnexpectedClass(cert)),
        class => Ok(class),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjunct::{direct_sum, realize, AdjunctRep};
    use crate::poset::build_poset;

    fn cert(p: &CoverDigraph) -> Certificate {
        canonical_certificate(p)
    }

    #[test]
    fn retractible_examples() {
        let chain = CoverDigraph::chain(4);
        assert_eq!(is_retractible(&chain, 0), Ok(true));
        assert_eq!(is_retractible(&chain, 1), Ok(true));
        // Two routes from 0 up to 2: through 1, or through the diamond 3, 4, 5.
        let parallel = build_poset(6, &[(0, 1), (1, 2), (0, 3), (0, 4), (3, 5), (4, 5), (5, 2)])
            .unwrap();
        assert_eq!(is_retractible(&parallel, 1), Ok(false));
        let m2 = named::m2();
        assert_eq!(is_retractible(m2.digraph(), 1), Ok(false));
        assert_eq!(
            is_retractible(m2.digraph(), 0),
            Err(ReductionError::NotDoublyIrreducible(0))
        );
        // Two stacked diamonds joined only through 4.
        let bridge = build_poset(
            9,
            &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (5, 7), (6, 8), (7, 8)],
        )
        .unwrap();
        assert_eq!(is_retractible(&bridge, 4), Ok(true));
        let lone = build_poset(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        assert_eq!(is_retractible(&lone, 4), Ok(true));
    }

    #[test]
    fn retract_examples() {
        assert_eq!(basic_retract(&CoverDigraph::chain(5)), CoverDigraph::chain(2));
        assert_eq!(basic_block_of(&CoverDigraph::chain(5)), CoverDigraph::chain(1));
        let subdivided = build_poset(5, &[(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)]).unwrap();
        let m2 = named::m2();
        assert_eq!(cert(&basic_retract(&subdivided)), cert(m2.digraph()));
        let f1 = named::f1();
        assert_eq!(basic_retract(f1.digraph()), *f1.digraph());
    }

    #[test]
    fn block_examples() {
        let padded = direct_sum(
            &direct_sum(&CoverDigraph::chain(3), named::m2().digraph()),
            &CoverDigraph::chain(2),
        );
        assert_eq!(cert(&basic_block_of(&padded)), cert(named::m2().digraph()));
        let f4 = named::f4();
        assert_eq!(basic_block_of(f4.digraph()), *f4.digraph());
        assert!(is_basic_block(f4.digraph()));
    }

    #[test]
    fn fundamental_examples() {
        let f3_plus = realize(
            &AdjunctRep::chain(5)
                .attach(0, 2, 1)
                .attach(2, 4, 1)
                .attach(2, 4, 1),
        )
        .unwrap();
        let fbb = fundamental_basic_block_of(&f3_plus).unwrap();
        assert_eq!(cert(fbb.digraph()), cert(named::f3().digraph()));
        let f1 = named::f1();
        assert_eq!(fundamental_basic_block_of(&f1).unwrap(), f1);
        let wide = realize(&AdjunctRep::chain(4).attach(0, 3, 2).attach(0, 3, 5).attach(0, 3, 1))
            .unwrap();
        assert_eq!(classify_fbb(&wide), Ok(FbbClass::M2));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_fbb(&named::f2()), Ok(FbbClass::F2));
        let long_f1 = realize(&AdjunctRep::chain(6).attach(2, 5, 3).attach(0, 5, 2)).unwrap();
        assert_eq!(classify_fbb(&long_f1), Ok(FbbClass::F1));
        assert_eq!(classify_fbb(&named::f4()), Ok(FbbClass::F4));
        assert_eq!(
            classify_fbb(&Lattice::chain(3)),
            Err(ReductionError::UnsupportedReducibleCount(0))
        );
    }
}
