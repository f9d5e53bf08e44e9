//! Partitions of `n` into exactly `k` positive parts.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Dense table of `P(n, k)` for `0 <= k <= n <= n_max`.
///
/// Built once by the recurrence `P(n, k) = P(n-1, k-1) + P(n-k, k)` and
/// read-only afterwards, so a shared reference can serve many threads.
#[derive(Debug, Clone)]
pub struct PartitionTable {
    rows: Vec<Vec<BigUint>>,
}

impl PartitionTable {
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=n_max {
            let mut row = vec![BigUint::zero(); n + 1];
            for k in 1..=n {
                let mut v = rows[n - 1].get(k - 1).cloned().unwrap_or_default();
                if let Some(x) = rows[n - k].get(k) {
                    v += x;
                }
                row[k] = v;
            }
            rows.push(row);
        }
        PartitionTable { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `P(n, k)`, zero whenever either index is negative or `k > n`.
    ///
    /// # Panics
    ///
    /// If `n` exceeds the table size.
    pub fn get(&self, n: i64, k: i64) -> BigUint {
        if n < 0 || k < 0 || k > n {
            return BigUint::zero();
        }
        let row = self
            .rows
            .get(n as usize)
            .unwrap_or_else(|| panic!("partition table holds n <= {}, asked for {n}", self.n_max()));
        row[k as usize].clone()
    }
}

/// `P(n, k)` computed from a fresh table.
pub fn partition_count(n: usize, k: usize) -> BigUint {
    PartitionTable::new(n).get(n as i64, k as i64)
}

/// All non-decreasing `k`-tuples of positive integers summing to `n`, in
/// lexicographic order.
pub fn enumerate_partitions(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = Vec::with_capacity(k);
    extend(n, k, 1, &mut current, &mut out);
    out
}

fn extend(rest: usize, slots: usize, min: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if slots == 1 {
        if rest >= min {
            current.push(rest);
            out.push(current.clone());
            current.pop();
        }
        return;
    }
    // Remaining slots each take at least `part`.
    let mut part = min;
    while part * slots <= rest {
        current.push(part);
        extend(rest - part, slots - 1, part, current, out);
        current.pop();
        part += 1;
    }
}
