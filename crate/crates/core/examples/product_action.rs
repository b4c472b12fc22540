//! Degree 12 from degrees 4 and 3: the product of the best groups of each
//! prime-power degree is again the best.

use std::fmt::Write;

use nilbound::bounds::combine_multiplicative;
use nilbound::constructions::product_action;
use nilbound::search::fnil_exact;
use nilbound::PermGroup;

pub fn run_example() -> String {
    let mut out = String::new();
    let two = fnil_exact(2, 2, 2).unwrap();
    let three = fnil_exact(3, 1, 2).unwrap();
    let g = PermGroup::from_json(&two.witnesses[1]).unwrap();
    let h = PermGroup::from_json(&three.witnesses[1]).unwrap();
    let prod = product_action(&g, &h);
    let expected = combine_multiplicative([
        (4, u64::from(two.exponents[1])),
        (3, u64::from(three.exponents[1])),
    ])
    .unwrap();
    writeln!(
        out,
        "degree {}, transitive {}, class {}, order {} (expected {expected})",
        prod.degree(),
        prod.is_transitive(),
        prod.nilpotency_class().unwrap(),
        prod.order()
    )
    .unwrap();
    out
}

fn main() {
    print!("{}", run_example());
}
