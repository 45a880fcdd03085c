//! Shared unit-test fixtures: the 7 x 6 worked example in all four object
//! families, and a 3 x 3 involution example.

use crate::callan::parse_tokens;
use crate::tableaux::{AltTableau, Arrow, PackedTableau};
use crate::{CallanPerm, DoubleTree};

/// The 7 x 6 alternative tableau with stair weight 2.
pub(crate) fn worked_tableau() -> AltTableau {
    AltTableau::new(
        7,
        6,
        [
            ((1, 6), Arrow::Left),
            ((2, 6), Arrow::Left),
            ((3, 4), Arrow::Left),
            ((4, 4), Arrow::Down),
            ((4, 2), Arrow::Down),
            ((5, 1), Arrow::Left),
            ((6, 3), Arrow::Left),
            ((7, 3), Arrow::Down),
            ((7, 1), Arrow::Left),
        ],
    )
    .unwrap()
}

/// The matching packed tableau: one extra left arrow at (4, 0) and bottom
/// down arrows in columns 1, 5, 6.
pub(crate) fn worked_packed() -> PackedTableau {
    worked_tableau().pad()
}

/// The matching double alternative tree.
pub(crate) fn worked_tree() -> DoubleTree {
    let rp = parse_tokens("b1 b3 b1 b0 b4 b6 b6").unwrap();
    let bp = parse_tokens("r0 r4 r1 r4 r0 r0").unwrap();
    DoubleTree::new(7, 6, rp, bp).unwrap()
}

/// The double Callan permutation reached from the tree side; carries
/// `weight_lr = 2` and `weight_br = 2`.
pub(crate) fn worked_callan_tree_side() -> CallanPerm {
    CallanPerm::from_strs(7, 6, "b6 r7 r6 b5 b1 r3 r1 b3 r2", "r4 b4 r5 b2").unwrap()
}

/// The double Callan permutation that maps to the same tableau through the
/// stepwise column construction; carries `weight_rl = 3`.
pub(crate) fn worked_callan_stepwise() -> CallanPerm {
    CallanPerm::from_strs(7, 6, "b6 r2 r1 b4 r4 b5", "r7 r6 b3 b2 r5 r3 b1").unwrap()
}

/// A 3 x 3 packed tableau and its image under the involution.
pub(crate) fn involution_example() -> (PackedTableau, PackedTableau) {
    let input = PackedTableau::new(
        3,
        3,
        [
            ((1, 2), Arrow::Left),
            ((2, 0), Arrow::Left),
            ((2, 1), Arrow::Down),
            ((2, 2), Arrow::Down),
            ((3, 3), Arrow::Left),
            ((4, 3), Arrow::Down),
        ],
    )
    .unwrap();
    let output = PackedTableau::new(
        3,
        3,
        [
            ((1, 2), Arrow::Left),
            ((2, 1), Arrow::Left),
            ((2, 2), Arrow::Down),
            ((3, 0), Arrow::Left),
            ((3, 3), Arrow::Down),
            ((4, 1), Arrow::Down),
        ],
    )
    .unwrap();
    (input, output)
}
