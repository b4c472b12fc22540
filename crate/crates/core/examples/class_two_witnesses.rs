//! Groups of class two that reach the largest possible order at degree p^k.

use std::fmt::Write;

use nilbound::bounds::class2_exponent;
use nilbound::constructions::{abelian_class2_group, affine_unitriangular};
use nilbound::group::exact_log;

pub fn run_example() -> String {
    let mut out = String::new();
    for (p, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        let g = affine_unitriangular(p, k, k / 2).unwrap();
        let order = g.order();
        let z = g.center().unwrap();
        writeln!(
            out,
            "affine p={p} k={k}: log order {} (max {}), class {}, center p^{}",
            exact_log(&order, p).unwrap(),
            class2_exponent(k).unwrap(),
            g.nilpotency_class().unwrap(),
            exact_log(&z.order(), p).unwrap(),
        )
        .unwrap();
    }
    let g = abelian_class2_group(3, 3, 1, 1).unwrap();
    writeln!(
        out,
        "C9 x C3 extended: degree {}, order {}, class {}",
        g.degree(),
        g.order(),
        g.nilpotency_class().unwrap()
    )
    .unwrap();
    out
}

fn main() {
    print!("{}", run_example());
}
