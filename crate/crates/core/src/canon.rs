//! Canonical labelling of cover digraphs up to isomorphism.
//!
//! Individualization-refinement: colour classes are seeded by
//! (height, depth, in-degree, out-degree), refined by the multisets of
//! neighbouring colours, and the remaining ties are broken by backtracking.
//! Among all leaves the lexicographically smallest adjacency encoding wins.
//! Automorphisms found along the way prune branches that would only
//! reproduce an already explored subtree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poset::{CoverDigraph, Element};

/// Canonical byte string of an isomorphism class of cover digraphs.
///
/// Layout: element count as big-endian `u16`, then the cover matrix of the
/// canonical labelling, row-major, packed eight bits per byte (MSB first).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn element_count(&self) -> usize {
        usize::from(u16::from_be_bytes([self.0[0], self.0[1]]))
    }

    /// The canonical representative this certificate encodes.
    pub fn to_digraph(&self) -> CoverDigraph {
        let n = self.element_count();
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let bit = i * n + j;
                if self.0[2 + bit / 8] >> (7 - bit % 8) & 1 == 1 {
                    covers.push((i, j));
                }
            }
        }
        CoverDigraph::from_sorted_unchecked(n, covers)
    }

    fn encode(p: &CoverDigraph, labelling: &[Element]) -> Self {
        let n = p.len();
        let count = u16::try_from(n).expect("certificates support at most 65535 elements");
        let mut bytes = vec![0u8; 2 + (n * n).div_ceil(8)];
        bytes[..2].copy_from_slice(&count.to_be_bytes());
        for &(a, b) in p.covers() {
            let bit = labelling[a] * n + labelling[b];
            bytes[2 + bit / 8] |= 1 << (7 - bit % 8);
        }
        Certificate(bytes)
    }
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Certificate({self})")
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// Result of canonization: `labelling[x]` is the canonical position of `x`.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub certificate: Certificate,
    pub labelling: Vec<Element>,
}

impl Canonical {
    /// The input relabelled into canonical position.
    pub fn form(&self) -> CoverDigraph {
        self.certificate.to_digraph()
    }
}

pub fn canonize(p: &CoverDigraph) -> Canonical {
    let mut search = Search {
        p,
        best: None,
        automorphisms: Vec::new(),
    };
    let colours = refine(p, initial_colours(p));
    let mut prefix = Vec::new();
    search.explore(colours, &mut prefix);
    let (certificate, labelling) = search.best.expect("search visits at least one leaf");
    Canonical {
        certificate,
        labelling,
    }
}

pub fn canonical_certificate(p: &CoverDigraph) -> Certificate {
    canonize(p).certificate
}

pub fn canonical_form(p: &CoverDigraph) -> CoverDigraph {
    canonize(p).form()
}

fn initial_colours(p: &CoverDigraph) -> Vec<usize> {
    let heights = p.heights();
    let depths = p.depths();
    let keys: Vec<_> = (0..p.len())
        .map(|x| {
            (
                heights[x],
                depths[x],
                p.lower_covers(x).len(),
                p.upper_covers(x).len(),
            )
        })
        .collect();
    rank(&keys)
}

/// Replaces each key by its rank among the distinct keys.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut distinct: Vec<K> = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("key is present"))
        .collect()
}

/// Equitable refinement. Cells keep their relative order; a cell only
/// splits according to the colours seen across its covers.
fn refine(p: &CoverDigraph, mut colours: Vec<usize>) -> Vec<usize> {
    let mut cells = colours.iter().max().map_or(0, |&m| m + 1);
    loop {
        let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..p.len())
            .map(|x| {
                let mut below: Vec<usize> = p.lower_covers(x).iter().map(|&y| colours[y]).collect();
                let mut above: Vec<usize> = p.upper_covers(x).iter().map(|&y| colours[y]).collect();
                below.sort_unstable();
                above.sort_unstable();
                (colours[x], below, above)
            })
            .collect();
        let next = rank(&keys);
        let next_cells = next.iter().max().map_or(0, |&m| m + 1);
        colours = next;
        if next_cells == cells {
            return colours;
        }
        cells = next_cells;
    }
}

/// Splits `v` off in front of the rest of its cell.
fn individualize(colours: &[usize], v: Element) -> Vec<usize> {
    let c = colours[v];
    colours
        .iter()
        .enumerate()
        .map(|(x, &k)| {
            if x == v || k < c {
                k
            } else {
                k + 1
            }
        })
        .collect()
}

struct Search<'a> {
    p: &'a CoverDigraph,
    best: Option<(Certificate, Vec<Element>)>,
    automorphisms: Vec<Vec<Element>>,
}

impl Search<'_> {
    fn explore(&mut self, colours: Vec<usize>, prefix: &mut Vec<Element>) {
        let n = self.p.len();
        let Some(target) = first_nontrivial_cell(&colours) else {
            self.leaf(colours);
            return;
        };
        let cell: Vec<Element> = (0..n).filter(|&x| colours[x] == target).collect();
        let mut explored: Vec<Element> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() {
                let orbit_of = self.orbits_fixing(prefix);
                if explored.iter().any(|&u| orbit_of[u] == orbit_of[v]) {
                    continue;
                }
            }
            explored.push(v);
            prefix.push(v);
            let next = refine(self.p, individualize(&colours, v));
            self.explore(next, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, labelling: Vec<Element>) {
        let cert = Certificate::encode(self.p, &labelling);
        match &self.best {
            None => self.best = Some((cert, labelling)),
            Some((best, best_labelling)) => {
                if cert < *best {
                    self.best = Some((cert, labelling));
                } else if cert == *best {
                    // Equal encodings differ by an automorphism.
                    let mut inverse = vec![0; labelling.len()];
                    for (x, &pos) in best_labelling.iter().enumerate() {
                        inverse[pos] = x;
                    }
                    let auto: Vec<Element> = labelling.iter().map(|&pos| inverse[pos]).collect();
                    if auto.iter().enumerate().any(|(x, &y)| x != y) {
                        self.automorphisms.push(auto);
                    }
                }
            }
        }
    }

    /// Orbit representatives under the known automorphisms that fix
    /// `prefix` pointwise.
    fn orbits_fixing(&self, prefix: &[Element]) -> Vec<usize> {
        let n = self.p.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for auto in &self.automorphisms {
            if prefix.iter().any(|&x| auto[x] != x) {
                continue;
            }
            for (x, &y) in auto.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        (0..n).map(|x| find(&mut parent, x)).collect()
    }
}

fn first_nontrivial_cell(colours: &[usize]) -> Option<usize> {
    let mut counts = vec![0usize; colours.len()];
    for &c in colours {
        counts[c] += 1;
    }
    counts.iter().position(|&k| k > 1)
}
