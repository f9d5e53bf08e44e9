//! Lattices with two or three reducible elements, built as adjunct sums of
//! chains.
//!
//! A block with `r` reducible elements is a spine chain carrying the
//! reducible elements as anchors, plus chains glued between pairs of
//! anchors. A lattice is a block padded by chains below and above. The
//! generator walks anchor gaps, attachment multiplicities per anchor pair
//! and non-decreasing chain lengths per pair, then keeps candidates with
//! exactly `r` reducible elements. Certificates remove the remaining
//! duplicates.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{OracleError, ADJUNCT_LIMIT};
use crate::adjunct::{direct_sum, realize, AdjunctRep};
use crate::canon::{canonical_certificate, Certificate};
use crate::poset::CoverDigraph;

fn check(n: usize, r: usize) -> Result<(), OracleError> {
    if n > ADJUNCT_LIMIT {
        return Err(OracleError::SizeLimitExceeded {
            n,
            limit: ADJUNCT_LIMIT,
        });
    }
    if !(2..=3).contains(&r) {
        return Err(OracleError::UnsupportedReducibleCount(r));
    }
    Ok(())
}

/// Certificates of all blocks on `m` elements with exactly `r` reducible
/// elements.
pub fn enumerate_blocks(m: usize, r: usize) -> Result<BTreeSet<Certificate>, OracleError> {
    check(m, r)?;
    if m < r + 2 {
        return Ok(BTreeSet::new());
    }
    let mut jobs = Vec::new();
    for gaps in compositions(m - r, r - 1) {
        let heights = anchor_heights(&gaps);
        let pairs: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
            .filter(|&(i, j)| heights[j] - heights[i] >= 2)
            .collect();
        let free = m - r - gaps.iter().sum::<usize>();
        // Every attachment takes at least one element; nullity stays <= m - 3.
        let max_attach = free.min(m - 3);
        for mult in bounded_vectors(pairs.len(), max_attach) {
            if mult.iter().sum::<usize>() >= 1 {
                jobs.push((heights.clone(), pairs.clone(), mult, free));
            }
        }
    }
    let found = jobs
        .par_iter()
        .map(|(heights, pairs, mult, free)| {
            let mut out = BTreeSet::new();
            let spine = heights[heights.len() - 1] + 1;
            for lengths in length_assignments(mult, *free) {
                let mut rep = AdjunctRep::chain(spine);
                for (p, lens) in pairs.iter().zip(&lengths) {
                    for &len in lens {
                        rep = rep.attach(heights[p.0], heights[p.1], len);
                    }
                }
                let l = realize(&rep).expect("anchor gaps are never covers");
                if l.reducible_count() == r && l.is_block() {
                    out.insert(canonical_certificate(l.digraph()));
                }
            }
            out
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(found)
}

/// Certificates of all lattices on `n` elements with exactly `r` reducible
/// elements.
pub fn enumerate_by_reducible(n: usize, r: usize) -> Result<BTreeSet<Certificate>, OracleError> {
    check(n, r)?;
    let mut out = BTreeSet::new();
    for m in r + 2..=n {
        for block in enumerate_blocks(m, r)? {
            let b = block.to_digraph();
            for below in 0..=n - m {
                let padded = direct_sum(
                    &direct_sum(&CoverDigraph::chain(below), &b),
                    &CoverDigraph::chain(n - m - below),
                );
                out.insert(canonical_certificate(&padded));
            }
        }
    }
    Ok(out)
}

fn anchor_heights(gaps: &[usize]) -> Vec<usize> {
    let mut heights = vec![0];
    for g in gaps {
        let last = *heights.last().expect("starts at zero");
        heights.push(last + g + 1);
    }
    heights
}

/// All `parts`-tuples of non-negative integers with sum at most `total`.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    bounded_vectors(parts, total)
}

fn bounded_vectors(len: usize, budget: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=budget {
        for mut rest in bounded_vectors(len - 1, budget - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// For each pair, a non-decreasing list of `mult[p]` positive lengths; all
/// lengths together sum to `total`.
fn length_assignments(mult: &[usize], total: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    assign(mult, total, &mut current, &mut out);
    out
}

fn assign(mult: &[usize], total: usize, current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
    let Some((&k, rest)) = mult.split_first() else {
        if total == 0 {
            out.push(current.clone());
        }
        return;
    };
    let reserve: usize = rest.iter().sum();
    if total < k + reserve {
        return;
    }
    for share in k..=total - reserve {
        for lens in sorted_parts(share, k, 1) {
            current.push(lens);
            assign(rest, total - share, current, out);
            current.pop();
        }
    }
}

/// Non-decreasing `k`-tuples with entries `>= min` summing to `total`.
fn sorted_parts(total: usize, k: usize, min: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut first = min;
    while first * k <= total {
        for mut tail in sorted_parts(total - first, k - 1, first) {
            tail.insert(0, first);
            out.push(tail);
        }
        first += 1;
    }
    out
}
