//! Every lattice on `n` elements, up to isomorphism.
//!
//! Removing a coatom from a lattice with at least three elements leaves a
//! lattice, so every lattice on `s + 1` elements arises from one on `s`
//! elements by inserting a new coatom `c`. The strict down-set of `c` is the
//! down-closure of a nonempty antichain avoiding the top. Each candidate is
//! validated as a lattice and deduplicated by certificate.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{OracleError, ALL_LATTICES_LIMIT};
use crate::canon::{canonical_certificate, Certificate};
use crate::lattice::Lattice;
use crate::poset::CoverDigraph;

/// Certificates of all lattices on `n` elements.
pub fn enumerate_all_lattices(n: usize) -> Result<BTreeSet<Certificate>, OracleError> {
    Ok(lattices_up_to(n)?.pop().unwrap_or_default())
}

/// Entry `s` holds the certificates of all lattices on `s` elements.
pub fn lattices_up_to(n_max: usize) -> Result<Vec<BTreeSet<Certificate>>, OracleError> {
    if n_max > ALL_LATTICES_LIMIT {
        return Err(OracleError::SizeLimitExceeded {
            n: n_max,
            limit: ALL_LATTICES_LIMIT,
        });
    }
    let mut levels: Vec<BTreeSet<Certificate>> = vec![BTreeSet::new()];
    for s in 1..=n_max.min(2) {
        levels.push([canonical_certificate(&CoverDigraph::chain(s))].into());
    }
    for _ in 3..=n_max {
        let prev = levels.last().expect("levels start nonempty");
        let next: BTreeSet<Certificate> = prev
            .par_iter()
            .map(|cert| coatom_extensions(&cert.to_digraph()))
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        levels.push(next);
    }
    levels.truncate(n_max + 1);
    Ok(levels)
}

fn coatom_extensions(k: &CoverDigraph) -> BTreeSet<Certificate> {
    let s = k.len();
    let leq = k.order_matrix();
    let top = (0..s)
        .find(|&x| (0..s).all(|y| leq[y * s + x]))
        .expect("a lattice has a top");
    let rest: Vec<usize> = (0..s).filter(|&x| x != top).collect();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << rest.len()) {
        let chosen: Vec<usize> = (0..rest.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| rest[i])
            .collect();
        let antichain = chosen.iter().enumerate().all(|(i, &x)| {
            chosen[i + 1..]
                .iter()
                .all(|&y| !leq[x * s + y] && !leq[y * s + x])
        });
        if !antichain {
            continue;
        }
        // New element `s` sits above the down-closure of `chosen`, below top.
        let t = s + 1;
        let mut order = vec![false; t * t];
        for x in 0..s {
            for y in 0..s {
                order[x * t + y] = leq[x * s + y];
            }
            order[x * t + s] = chosen.iter().any(|&a| leq[x * s + a]);
        }
        order[s * t + s] = true;
        order[s * t + top] = true;
        let p = CoverDigraph::from_order(t, &order);
        if Lattice::new(p.clone()).is_ok() {
            out.insert(canonical_certificate(&p));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_totals() {
        let levels = lattices_up_to(7).unwrap();
        let sizes: Vec<usize> = levels.iter().map(|l| l.len()).collect();
        assert_eq!(sizes, vec![0, 1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn guard() {
        assert_eq!(
            enumerate_all_lattices(11),
            Err(OracleError::SizeLimitExceeded { n: 11, limit: 10 })
        );
    }
}
