//! Closed-form counts of lattices and blocks with two or three reducible
//! elements.
//!
//! Every sum keeps its stated index bounds. Arguments outside
//! a formula's range give zero. Evaluation first runs in checked `u128`
//! arithmetic and falls back to [`BigUint`] if anything would overflow, so
//! results are always exact.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::partitions::PartitionTable;

/// Exact count.
pub type Count = BigUint;

/// The two equivalent closed forms for lattices with two reducible elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoReducibleForm {
    /// Sum over the number of parts first, weighted by the padding length.
    PartsFirst,
    /// Sum over the block size first, weighted by the number of paddings.
    BlockFirst,
}

trait Exact: Clone {
    fn nothing() -> Self;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn small(v: i64) -> Self;
    fn into_count(self) -> Count;
}

impl Exact for u128 {
    fn nothing() -> Self {
        0
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn small(v: i64) -> Self {
        u128::try_from(v).expect("weights are non-negative")
    }
    fn into_count(self) -> Count {
        BigUint::from(self)
    }
}

impl Exact for BigUint {
    fn nothing() -> Self {
        Zero::zero()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn small(v: i64) -> Self {
        BigUint::from(u64::try_from(v).expect("weights are non-negative"))
    }
    fn into_count(self) -> Count {
        self
    }
}

/// Partition numbers in the working number type; `p(n, k)` is zero for
/// every index pair outside `0 <= k <= n`.
struct Table<T> {
    rows: Vec<Vec<T>>,
    zero: T,
}

impl<T: Exact> Table<T> {
    fn p(&self, n: i64, k: i64) -> &T {
        if n < 0 || k < 0 || k > n {
            return &self.zero;
        }
        &self.rows[n as usize][k as usize]
    }
}

fn u128_table(base: &PartitionTable) -> Option<Table<u128>> {
    let n_max = base.n_max() as i64;
    let rows = (0..=n_max)
        .map(|n| (0..=n).map(|k| base.get(n, k).to_u128()).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    Some(Table { rows, zero: 0 })
}

fn big_table(base: &PartitionTable) -> Table<BigUint> {
    let n_max = base.n_max() as i64;
    let rows = (0..=n_max)
        .map(|n| (0..=n).map(|k| base.get(n, k)).collect())
        .collect();
    Table {
        rows,
        zero: BigUint::default(),
    }
}

/// Runs `f` in `u128` when possible and in `BigUint` otherwise. Every
/// partition index a formula touches is bounded by `n`.
macro_rules! evaluate {
    ($n:expr, $f:ident $(, $arg:expr)*) => {{
        let base = PartitionTable::new($n.max(0) as usize);
        match u128_table(&base).and_then(|t| $f(&t $(, $arg)*)) {
            Some(v) => v.into_count(),
            None => $f(&big_table(&base) $(, $arg)*)
                .expect("arbitrary precision never overflows")
                .into_count(),
        }
    }};
}

/// `Σ_{i=lo}^{hi} f(i)`; zero when `lo > hi`.
fn sum<T: Exact>(lo: i64, hi: i64, mut f: impl FnMut(i64) -> Option<T>) -> Option<T> {
    let mut acc = T::nothing();
    for i in lo..=hi {
        acc = acc.add(&f(i)?)?;
    }
    Some(acc)
}

fn prod<T: Exact>(factors: &[&T]) -> Option<T> {
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = acc.mul(f)?;
    }
    Some(acc)
}

fn to_i64(v: usize) -> i64 {
    i64::try_from(v).expect("size fits in i64")
}

// ---------------------------------------------------------------------------
// Two reducible elements

/// Blocks on `m` elements with two reducible elements and `m + k` covers.
pub fn two_reducible_blocks(m: usize, k: usize) -> Count {
    let (m, k) = (to_i64(m), to_i64(k));
    if m < 4 || k > m - 4 {
        return Count::default();
    }
    PartitionTable::new(m as usize).get(m - 2, k + 2)
}

/// Lattices on `n` elements with exactly two reducible elements.
pub fn two_reducible_lattices(n: usize, form: TwoReducibleForm) -> Count {
    let n = to_i64(n);
    if n < 4 {
        return Count::default();
    }
    match form {
        TwoReducibleForm::PartsFirst => evaluate!(n, parts_first_sum, n),
        TwoReducibleForm::BlockFirst => evaluate!(n, block_first_sum, n),
    }
}

fn parts_first_sum<T: Exact>(t: &Table<T>, n: i64) -> Option<T> {
    sum(2, n - 2, |k| {
        sum(1, n - k - 1, |j| T::small(j).mul(t.p(n - j - 1, k)))
    })
}

fn block_first_sum<T: Exact>(t: &Table<T>, n: i64) -> Option<T> {
    sum(0, n - 4, |i| {
        sum(0, n - i - 4, |k| T::small(i + 1).mul(t.p(n - i - 2, k + 2)))
    })
}

// ---------------------------------------------------------------------------
// Three reducible elements: blocks

/// Blocks on `m` elements with nullity `k + 1` whose reduced form is the
/// diamond-on-top shape (or, dually, diamond-at-bottom).
pub fn b1_blocks(m: usize, k: usize) -> Count {
    let (m, k) = (to_i64(m), to_i64(k));
    if m < 6 || k < 1 || k > m - 5 {
        return Count::default();
    }
    evaluate!(m, b1_sum, m, k)
}

fn b1_sum<T: Exact>(t: &Table<T>, m: i64, k: i64) -> Option<T> {
    let first = sum(1, m - 5, |l| {
        sum(1, m - l - 4, |i| Some(t.p(m - l - i - 2, k + 1).clone()))
    })?;
    let second = sum(5, m - 2, |r| {
        sum(1, k - 1, |s| {
            sum(1, r - 4, |i| prod(&[t.p(r - i - 2, s + 1), t.p(m - r, k - s + 1)]))
        })
    })?;
    first.add(&second)
}

/// Blocks on `m` elements with nullity `k + 1` reducing to two stacked
/// diamonds.
pub fn b3_blocks(m: usize, k: usize) -> Count {
    let (m, k) = (to_i64(m), to_i64(k));
    if m < 7 || k < 1 || k > m - 6 {
        return Count::default();
    }
    evaluate!(m, b3_sum, m, k)
}

fn b3_sum<T: Exact>(t: &Table<T>, m: i64, k: i64) -> Option<T> {
    sum(4, m - 3, |l| {
        sum(1, k, |s| prod(&[t.p(l - 2, s + 1), t.p(m - l - 1, k - s + 2)]))
    })
}

/// Blocks on `m` elements with nullity `k + 1` reducing to two stacked
/// diamonds with a side chain from bottom to top.
///
/// The second sum uses `P(m-r-l-1, k-s-t+2)`: the third chain group has
/// `k - s` members split between the two diamonds.
pub fn b4_blocks(m: usize, k: usize) -> Count {
    let (m, k) = (to_i64(m), to_i64(k));
    if m < 8 || k < 2 || k > m - 6 {
        return Count::default();
    }
    evaluate!(m, b4_sum, m, k)
}

fn b4_sum<T: Exact>(t: &Table<T>, m: i64, k: i64) -> Option<T> {
    let first = sum(1, m - 7, |r| {
        sum(4, m - r - 3, |l| {
            sum(1, k - 1, |s| prod(&[t.p(l - 2, s + 1), t.p(m - r - l - 1, k - s + 1)]))
        })
    })?;
    let second = sum(2, m - 7, |r| {
        sum(2, k - 1, |s| {
            sum(4, m - r - 3, |l| {
                sum(1, k - s, |u| {
                    prod(&[
                        t.p(l - 2, u + 1),
                        t.p(m - r - l - 1, k - s - u + 2),
                        t.p(r, s),
                    ])
                })
            })
        })
    })?;
    first.add(&second)
}

/// Total number of blocks of each family on `m` elements, summed over all
/// nullities.
pub fn b1_family(m: usize) -> Count {
    let m = to_i64(m);
    if m < 6 {
        return Count::default();
    }
    evaluate!(m, b1_family_sum, m)
}

fn b1_family_sum<T: Exact>(t: &Table<T>, m: i64) -> Option<T> {
    let first = sum(1, m - 5, |k| {
        sum(1, m - 5, |l| {
            sum(1, m - l - 4, |i| Some(t.p(m - l - i - 2, k + 1).clone()))
        })
    })?;
    let second = sum(2, m - 5, |k| b1_second(t, m, k))?;
    first.add(&second)
}

fn b1_second<T: Exact>(t: &Table<T>, m: i64, k: i64) -> Option<T> {
    sum(5, m - 2, |r| {
        sum(1, k - 1, |s| {
            sum(1, r - 4, |i| prod(&[t.p(r - i - 2, s + 1), t.p(m - r, k - s + 1)]))
        })
    })
}

pub fn b3_family(m: usize) -> Count {
    let m = to_i64(m);
    if m < 7 {
        return Count::default();
    }
    evaluate!(m, b3_family_sum, m)
}

fn b3_family_sum<T: Exact>(t: &Table<T>, m: i64) -> Option<T> {
    sum(1, m - 6, |k| b3_sum(t, m, k))
}

pub fn b4_family(m: usize) -> Count {
    let m = to_i64(m);
    if m < 8 {
        return Count::default();
    }
    evaluate!(m, b4_family_sum, m)
}

fn b4_family_sum<T: Exact>(t: &Table<T>, m: i64) -> Option<T> {
    let first = sum(2, m - 6, |k| {
        sum(1, m - 7, |r| {
            sum(4, m - r - 3, |l| {
                sum(1, k - 1, |s| prod(&[t.p(l - 2, s + 1), t.p(m - r - l - 1, k - s + 1)]))
            })
        })
    })?;
    let second = sum(3, m - 6, |k| {
        sum(2, m - 7, |r| {
            sum(2, k - 1, |s| {
                sum(4, m - r - 3, |l| {
                    sum(1, k - s, |u| {
                        prod(&[
                            t.p(l - 2, u + 1),
                            t.p(m - r - l - 1, k - s - u + 2),
                            t.p(r, s),
                        ])
                    })
                })
            })
        })
    })?;
    first.add(&second)
}

// ---------------------------------------------------------------------------
// Three reducible elements: lattices

/// Lattices on `n` elements in the first (equivalently, by duality, the
/// second) three-reducible class.
pub fn l1_lattices(n: usize) -> Count {
    let n = to_i64(n);
    if n < 6 {
        return Count::default();
    }
    evaluate!(n, l1_sum, n)
}

/// Same count as [`l1_lattices`]; the two classes are dual to each other.
pub fn l2_lattices(n: usize) -> Count {
    l1_lattices(n)
}

fn l1_sum<T: Exact>(t: &Table<T>, n: i64) -> Option<T> {
    let first = sum(0, n - 6, |j| {
        sum(1, n - j - 5, |k| {
            sum(1, n - j - 5, |l| {
                sum(1, n - j - l - 4, |i| {
                    T::small(j + 1).mul(t.p(n - j - l - i - 2, k + 1))
                })
            })
        })
    })?;
    let second = sum(0, n - 6, |j| {
        sum(2, n - j - 5, |k| {
            sum(5, n - j - 2, |r| {
                sum(1, k - 1, |s| {
                    sum(1, r - 4, |i| {
                        prod(&[
                            &T::small(j + 1),
                            t.p(r - i - 2, s + 1),
                            t.p(n - j - r, k - s + 1),
                        ])
                    })
                })
            })
        })
    })?;
    first.add(&second)
}

pub fn l3_lattices(n: usize) -> Count {
    let n = to_i64(n);
    if n < 7 {
        return Count::default();
    }
    evaluate!(n, l3_sum, n)
}

fn l3_sum<T: Exact>(t: &Table<T>, n: i64) -> Option<T> {
    sum(0, n - 7, |j| {
        sum(1, n - j - 6, |k| {
            sum(4, n - j - 3, |l| {
                sum(1, k, |s| {
                    prod(&[
                        &T::small(j + 1),
                        t.p(l - 2, s + 1),
                        t.p(n - j - l - 1, k - s + 2),
                    ])
                })
            })
        })
    })
}

pub fn l4_lattices(n: usize) -> Count {
    let n = to_i64(n);
    if n < 8 {
        return Count::default();
    }
    evaluate!(n, l4_sum, n)
}

fn l4_sum<T: Exact>(t: &Table<T>, n: i64) -> Option<T> {
    let first = sum(0, n - 8, |j| {
        sum(2, n - j - 6, |k| {
            sum(1, n - j - 7, |r| {
                sum(4, n - j - r - 3, |l| {
                    sum(1, k - 1, |s| {
                        prod(&[
                            &T::small(j + 1),
                            t.p(l - 2, s + 1),
                            t.p(n - j - r - l - 1, k - s + 1),
                        ])
                    })
                })
            })
        })
    })?;
    let second = sum(0, n - 8, |j| {
        sum(3, n - j - 6, |k| {
            sum(2, n - j - 7, |r| {
                sum(2, k - 1, |s| {
                    sum(4, n - j - r - 3, |l| {
                        sum(1, k - s, |u| {
                            prod(&[
                                &T::small(j + 1),
                                t.p(l - 2, u + 1),
                                t.p(n - j - r - l - 1, k - s - u + 2),
                                t.p(r, s),
                            ])
                        })
                    })
                })
            })
        })
    })?;
    first.add(&second)
}

/// Lattices on `n` elements with exactly three reducible elements, as one
/// five-term sum.
pub fn three_reducible_lattices(n: usize) -> Count {
    let n = to_i64(n);
    if n < 6 {
        return Count::default();
    }
    evaluate!(n, five_sum, n)
}

fn five_sum<T: Exact>(t: &Table<T>, n: i64) -> Option<T> {
    let w = |j: i64| T::small(j + 1);
    let w2 = |j: i64| T::small(2 * (j + 1));
    let terms = [
        sum(0, n - 6, |j| {
            sum(1, n - j - 5, |k| {
                sum(1, n - j - 5, |l| {
                    sum(1, n - j - l - 4, |i| w2(j).mul(t.p(n - j - l - i - 2, k + 1)))
                })
            })
        })?,
        sum(0, n - 6, |j| {
            sum(2, n - j - 5, |k| {
                sum(5, n - j - 2, |r| {
                    sum(1, k - 1, |s| {
                        sum(1, r - 4, |i| {
                            prod(&[&w2(j), t.p(r - i - 2, s + 1), t.p(n - j - r, k - s + 1)])
                        })
                    })
                })
            })
        })?,
        sum(0, n - 7, |j| {
            sum(1, n - j - 6, |k| {
                sum(4, n - j - 3, |l| {
                    sum(1, k, |u| {
                        prod(&[&w(j), t.p(l - 2, u + 1), t.p(n - j - l - 1, k - u + 2)])
                    })
                })
            })
        })?,
        sum(0, n - 8, |j| {
            sum(2, n - j - 6, |k| {
                sum(1, n - j - 7, |r| {
                    sum(4, n - j - r - 3, |l| {
                        sum(1, k - 1, |u| {
                            prod(&[&w(j), t.p(l - 2, u + 1), t.p(n - j - r - l - 1, k - u + 1)])
                        })
                    })
                })
            })
        })?,
        sum(0, n - 8, |j| {
            sum(3, n - j - 6, |k| {
                sum(2, n - j - 7, |r| {
                    sum(2, k - 1, |s| {
                        sum(4, n - j - r - 3, |l| {
                            sum(1, k - s, |u| {
                                prod(&[
                                    &w(j),
                                    t.p(l - 2, u + 1),
                                    t.p(n - j - r - l - 1, k - s - u + 2),
                                    t.p(r, s),
                                ])
                            })
                        })
                    })
                })
            })
        })?,
    ];
    sum(0, 4, |i| Some(terms[i as usize].clone()))
}

/// `2 * l1 + l3 + l4`, assembled from the per-class counts.
pub fn three_reducible_by_class(n: usize) -> Count {
    let l1 = l1_lattices(n);
    &l1 + &l1 + l3_lattices(n) + l4_lattices(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    #[test]
    fn two_reducible_values() {
        assert_eq!(two_reducible_blocks(4, 0), c(1));
        assert_eq!(two_reducible_blocks(6, 2), c(1));
        assert_eq!(two_reducible_blocks(5, 2), c(0));
        assert_eq!(two_reducible_blocks(3, 0), c(0));
        for form in [TwoReducibleForm::PartsFirst, TwoReducibleForm::BlockFirst] {
            let v: Vec<Count> = (3..=6).map(|n| two_reducible_lattices(n, form)).collect();
            assert_eq!(v, vec![c(0), c(1), c(4), c(11)]);
        }
    }

    #[test]
    fn block_values() {
        assert_eq!(b1_blocks(6, 1), c(1));
        assert_eq!(b1_blocks(7, 1), c(3));
        assert_eq!(b1_blocks(7, 2), c(2));
        assert_eq!(b1_blocks(6, 0), c(0));
        assert_eq!(b3_blocks(7, 1), c(1));
        assert_eq!(b3_blocks(7, 2), c(0));
        assert_eq!(b4_blocks(8, 2), c(1));
        assert_eq!(b4_blocks(8, 1), c(0));
    }

    #[test]
    fn lattice_values() {
        assert_eq!(l1_lattices(6), c(1));
        assert_eq!(l1_lattices(7), c(7));
        assert_eq!(l3_lattices(7), c(1));
        assert_eq!(l4_lattices(7), c(0));
        assert_eq!(l4_lattices(8), c(1));
        assert_eq!(three_reducible_lattices(5), c(0));
        assert_eq!(three_reducible_lattices(6), c(2));
        assert_eq!(three_reducible_lattices(7), c(15));
    }

    #[test]
    fn families_sum_their_strata() {
        for m in 0..=16 {
            let s1: Count = (0..=m).map(|k| b1_blocks(m, k)).sum();
            let s3: Count = (0..=m).map(|k| b3_blocks(m, k)).sum();
            let s4: Count = (0..=m).map(|k| b4_blocks(m, k)).sum();
            assert_eq!(b1_family(m), s1, "m = {m}");
            assert_eq!(b3_family(m), s3, "m = {m}");
            assert_eq!(b4_family(m), s4, "m = {m}");
        }
    }

    #[test]
    fn big_and_small_arithmetic_agree() {
        for n in 6..=20i64 {
            let base = PartitionTable::new(n as usize);
            let small = u128_table(&base).unwrap();
            let big = big_table(&base);
            assert_eq!(
                l4_sum(&small, n).unwrap().into_count(),
                l4_sum(&big, n).unwrap()
            );
            assert_eq!(
                five_sum(&small, n).unwrap().into_count(),
                five_sum(&big, n).unwrap()
            );
        }
    }
}
