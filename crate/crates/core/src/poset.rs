//! Finite posets stored as an irredundant cover relation.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Elements are dense labels `0..n`.
pub type Element = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("label {label} is out of range for a poset on {n} elements")]
    LabelOutOfRange { label: Element, n: usize },
    #[error("cover relation has a cycle through element {0}")]
    CycleDetected(Element),
    #[error("cover ({0}, {1}) is implied by transitivity or listed twice")]
    RedundantCover(Element, Element),
}

/// A finite poset given by its element count and its cover relation.
///
/// Covers are kept sorted, which makes structural equality and hashing
/// meaningful for equally labelled posets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoverDigraph {
    n: usize,
    covers: Vec<(Element, Element)>,
    upper: Vec<Vec<Element>>,
    lower: Vec<Vec<Element>>,
}

impl CoverDigraph {
    /// Validates `covers` as the cover relation of a poset on `n` elements.
    pub fn new<I>(n: usize, covers: I) -> Result<Self, PosetError>
    where
        I: IntoIterator<Item = (Element, Element)>,
    {
        let mut covers: Vec<(Element, Element)> = covers.into_iter().collect();
        for &(lo, hi) in &covers {
            for label in [lo, hi] {
                if label >= n {
                    return Err(PosetError::LabelOutOfRange { label, n });
                }
            }
            if lo == hi {
                return Err(PosetError::CycleDetected(lo));
            }
        }
        covers.sort_unstable();
        if let Some(w) = covers.windows(2).find(|w| w[0] == w[1]) {
            return Err(PosetError::RedundantCover(w[0].0, w[0].1));
        }
        let p = Self::from_sorted_unchecked(n, covers);
        let order = p.topological_order()?;
        let leq = p.closure_from_order(&order);
        for &(lo, hi) in &p.covers {
            let implied = p.upper[lo]
                .iter()
                .any(|&mid| mid != hi && leq[mid * n + hi]);
            if implied {
                return Err(PosetError::RedundantCover(lo, hi));
            }
        }
        Ok(p)
    }

    /// The chain `0 < 1 < ... < len-1`.
    pub fn chain(len: usize) -> Self {
        let covers = (1..len).map(|i| (i - 1, i)).collect();
        Self::from_sorted_unchecked(len, covers)
    }

    /// Builds the cover relation (transitive reduction) of a partial order
    /// given as a dense reflexive `n x n` matrix.
    ///
    /// The matrix must describe a partial order; this is checked only in
    /// debug builds.
    pub fn from_order(n: usize, leq: &[bool]) -> Self {
        debug_assert_eq!(leq.len(), n * n);
        let mut covers = Vec::new();
        for lo in 0..n {
            for hi in 0..n {
                if lo == hi || !leq[lo * n + hi] {
                    continue;
                }
                debug_assert!(!leq[hi * n + lo], "order matrix is not antisymmetric");
                let between = (0..n).any(|m| {
                    m != lo && m != hi && leq[lo * n + m] && leq[m * n + hi]
                });
                if !between {
                    covers.push((lo, hi));
                }
            }
        }
        Self::from_sorted_unchecked(n, covers)
    }

    pub(crate) fn from_sorted_unchecked(n: usize, covers: Vec<(Element, Element)>) -> Self {
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for &(lo, hi) in &covers {
            upper[lo].push(hi);
            lower[hi].push(lo);
        }
        CoverDigraph {
            n,
            covers,
            upper,
            lower,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Sorted list of cover pairs `(lo, hi)` with `lo ≺ hi`.
    pub fn covers(&self) -> &[(Element, Element)] {
        &self.covers
    }

    pub fn edge_count(&self) -> usize {
        self.covers.len()
    }

    pub fn upper_covers(&self, x: Element) -> &[Element] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: Element) -> &[Element] {
        &self.lower[x]
    }

    /// Degree of `x` in the (undirected) cover graph.
    pub fn degree(&self, x: Element) -> usize {
        self.upper[x].len() + self.lower[x].len()
    }

    pub fn is_cover(&self, lo: Element, hi: Element) -> bool {
        self.upper[lo].contains(&hi)
    }

    /// At most one lower and at most one upper cover.
    pub fn is_doubly_irreducible(&self, x: Element) -> bool {
        self.upper[x].len() <= 1 && self.lower[x].len() <= 1
    }

    /// Exactly one lower and exactly one upper cover.
    pub fn is_irr_star(&self, x: Element) -> bool {
        self.upper[x].len() == 1 && self.lower[x].len() == 1
    }

    /// Elements with two or more lower covers or two or more upper covers.
    pub fn reducible_elements(&self) -> Vec<Element> {
        (0..self.n)
            .filter(|&x| !self.is_doubly_irreducible(x))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<Element> {
        (0..self.n).filter(|&x| self.lower[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<Element> {
        (0..self.n).filter(|&x| self.upper[x].is_empty()).collect()
    }

    pub fn is_chain(&self) -> bool {
        self.n <= 1
            || (self.edge_count() == self.n - 1
                && (0..self.n).all(|x| self.is_doubly_irreducible(x))
                && self.component_count() == 1)
    }

    /// Kahn's algorithm; fails on a cycle.
    fn topological_order(&self) -> Result<Vec<Element>, PosetError> {
        let mut indeg: Vec<usize> = self.lower.iter().map(Vec::len).collect();
        let mut queue: VecDeque<Element> = (0..self.n).filter(|&x| indeg[x] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in &self.upper[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if order.len() < self.n {
            let stuck = (0..self.n).find(|&x| indeg[x] > 0).unwrap_or(0);
            return Err(PosetError::CycleDetected(stuck));
        }
        Ok(order)
    }

    fn closure_from_order(&self, order: &[Element]) -> Vec<bool> {
        let n = self.n;
        let mut leq = vec![false; n * n];
        for &x in order.iter().rev() {
            leq[x * n + x] = true;
            for &y in &self.upper[x] {
                for z in 0..n {
                    if leq[y * n + z] {
                        leq[x * n + z] = true;
                    }
                }
            }
        }
        leq
    }

    /// Elements listed so that every cover goes forward.
    pub fn linear_extension(&self) -> Vec<Element> {
        self.topological_order()
            .expect("validated cover digraphs are acyclic")
    }

    /// Dense reflexive-transitive order matrix, row-major: `leq[x * n + y]`.
    pub fn order_matrix(&self) -> Vec<bool> {
        self.closure_from_order(&self.linear_extension())
    }

    /// Length of the longest chain from a minimal element up to each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.n];
        for x in self.linear_extension() {
            for &y in &self.upper[x] {
                h[y] = h[y].max(h[x] + 1);
            }
        }
        h
    }

    /// Length of the longest chain from each element up to a maximal element.
    pub fn depths(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for x in self.linear_extension().into_iter().rev() {
            for &y in &self.upper[x] {
                d[x] = d[x].max(d[y] + 1);
            }
        }
        d
    }

    /// Number of connected components of the cover graph.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.n;
        for &(a, b) in &self.covers {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components
    }

    /// Cycle rank of the cover graph: edges − vertices + components.
    pub fn nullity(&self) -> usize {
        self.edge_count() + self.component_count() - self.n
    }

    /// The order dual: every cover reversed.
    pub fn dual(&self) -> Self {
        let mut covers: Vec<_> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        Self::from_sorted_unchecked(self.n, covers)
    }

    /// Renames element `x` to `perm[x]`.
    ///
    /// # Panics
    ///
    /// If `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[Element]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation has the wrong length");
        let mut seen = vec![false; self.n];
        for &p in perm {
            assert!(p < self.n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let mut covers: Vec<_> = self
            .covers
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        covers.sort_unstable();
        Self::from_sorted_unchecked(self.n, covers)
    }

    /// The subposet induced on `keep`, relabelled `keep[i] -> i`.
    ///
    /// Covers of the result are recomputed from the induced order, so
    /// removing an element with one lower cover `y` and one upper cover `z`
    /// re-joins `y ≺ z` when nothing else lies between them.
    pub fn induced(&self, keep: &[Element]) -> Self {
        let n = self.n;
        let leq = self.order_matrix();
        let k = keep.len();
        let mut sub = vec![false; k * k];
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                sub[i * k + j] = leq[x * n + y];
            }
        }
        Self::from_order(k, &sub)
    }

    /// Removes the listed elements, keeping the rest in label order.
    pub fn without(&self, removed: &[Element]) -> (Self, Vec<Element>) {
        let keep: Vec<Element> = (0..self.n).filter(|x| !removed.contains(x)).collect();
        (self.induced(&keep), keep)
    }
}

impl fmt::Debug for CoverDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoverDigraph(n={}, covers={:?})", self.n, self.covers)
    }
}

/// Builds and validates a poset from its cover list.
pub fn build_poset(n: usize, covers: &[(Element, Element)]) -> Result<CoverDigraph, PosetError> {
    CoverDigraph::new(n, covers.iter().copied())
}

/// Cycle rank of the cover graph of `p`.
pub fn nullity(p: &CoverDigraph) -> usize {
    p.nullity()
}
