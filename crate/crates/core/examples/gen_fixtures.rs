use polybern_core::callan::parse_tokens;
use polybern_core::tableaux::{AltTableau, Arrow, PackedTableau};
use polybern_core::{CallanPerm, DoubleTree, ExcPerm};
use std::fs;

fn write(name: &str, json: String) {
    let path = format!("crates/core/tests/fixtures/{name}");
    fs::write(&path, json + "\n").unwrap();
    println!("wrote {path}");
}

fn main() {
    let tree_side =
        CallanPerm::from_strs(7, 6, "b6 r7 r6 b5 b1 r3 r1 b3 r2", "r4 b4 r5 b2").unwrap();
    write("callan_76_tree_side.json", serde_json::to_string(&tree_side).unwrap());

    let stepwise =
        CallanPerm::from_strs(7, 6, "b6 r2 r1 b4 r4 b5", "r7 r6 b3 b2 r5 r3 b1").unwrap();
    write("callan_76_stepwise.json", serde_json::to_string(&stepwise).unwrap());

    // the full reduction chain starting from the stepwise permutation
    let mut chain = vec![stepwise.clone()];
    let mut cur = stepwise.clone();
    while cur.k() > 0 {
        cur = cur.phi().unwrap();
        chain.push(cur.clone());
    }
    write("phi_chain_76.json", serde_json::to_string(&chain).unwrap());

    let tableau = AltTableau::new(
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
    .unwrap();
    write("tableau_76.json", serde_json::to_string(&tableau).unwrap());
    write("packed_76.json", serde_json::to_string(&tableau.pad()).unwrap());

    let tree = DoubleTree::new(
        7,
        6,
        parse_tokens("b1 b3 b1 b0 b4 b6 b6").unwrap(),
        parse_tokens("r0 r4 r1 r4 r0 r0").unwrap(),
    )
    .unwrap();
    write("tree_76.json", serde_json::to_string(&tree).unwrap());

    let exc24 = ExcPerm::from_values(vec![7, 5, 3, 2, 4, 6, 1]).unwrap();
    write("exc_24_weight2.json", serde_json::to_string(&exc24).unwrap());

    let rook_callan = CallanPerm::from_strs(3, 3, "b2 b1 r3", "r2 b3 r1").unwrap();
    write("callan_33_rook.json", serde_json::to_string(&rook_callan).unwrap());
    let rook_image = ExcPerm::from_values(vec![7, 5, 4, 1, 3, 6, 2]).unwrap();
    write("exc_33_rook_image.json", serde_json::to_string(&rook_image).unwrap());

    let inv_in = PackedTableau::new(
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
    let inv_out = PackedTableau::new(
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
    write("involution_33_input.json", serde_json::to_string(&inv_in).unwrap());
    write("involution_33_output.json", serde_json::to_string(&inv_out).unwrap());
}
