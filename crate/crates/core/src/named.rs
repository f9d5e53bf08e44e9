//! Small lattices that recur throughout: the diamond, the four minimal
//! three-reducible blocks, and the Boolean cube.

use crate::lattice::Lattice;
use crate::poset::{build_poset, Element};

fn lattice(n: usize, covers: &[(Element, Element)]) -> Lattice {
    let p = build_poset(n, covers).expect("hard-coded cover set is valid");
    Lattice::new(p).expect("hard-coded poset is a lattice")
}

/// The diamond: `0 < 1, 2 < 3`.
pub fn m2() -> Lattice {
    lattice(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])
}

/// Labels `0:0, 1:a, 2:a1, 3:a2, 4:b, 5:1`. A diamond on `[a, 1]` with
/// a side chain from the bottom to the top.
pub fn f1() -> Lattice {
    lattice(6, &[(0, 1), (1, 2), (1, 3), (2, 5), (3, 5), (0, 4), (4, 5)])
}

/// The dual of [`f1`]. Labels `0:0, 1:a1, 2:a2, 3:a, 4:b, 5:1`.
pub fn f2() -> Lattice {
    lattice(6, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 5), (0, 4), (4, 5)])
}

/// Two stacked diamonds. Labels `0:0, 1:b1, 2:b2, 3:a, 4:a1, 5:a2, 6:1`.
pub fn f3() -> Lattice {
    lattice(
        7,
        &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6)],
    )
}

/// Two stacked diamonds plus a side chain from bottom to top.
/// Labels `0:0, 1:x1, 2:x2, 3:a, 4:x3, 5:x4, 6:x5, 7:1`.
pub fn f4() -> Lattice {
    lattice(
        8,
        &[
            (0, 1),
            (0, 2),
            (1, 3),
            (2, 3),
            (3, 4),
            (3, 5),
            (4, 7),
            (5, 7),
            (0, 6),
            (6, 7),
        ],
    )
}

/// The subsets of a 3-element set; element `i` is the bitmask `i`.
pub fn boolean_cube() -> Lattice {
    let mut covers = Vec::new();
    for x in 0..8usize {
        for bit in 0..3 {
            if x & (1 << bit) == 0 {
                covers.push((x, x | (1 << bit)));
            }
        }
    }
    lattice(8, &covers)
}
