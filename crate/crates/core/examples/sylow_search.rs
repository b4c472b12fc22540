//! Exhaustive search for the largest transitive 2-groups of each class on
//! 8 points, with an audit of the resulting row.

use std::fmt::Write;

use nilbound::search::{audit_row, enumerate_subgroups, fnil_exact, EnumerateOptions};
use nilbound::constructions::iterated_wreath_sylow;

pub fn run_example() -> String {
    let mut out = String::new();
    let sylow = iterated_wreath_sylow(2, 3).unwrap();
    let lattice = enumerate_subgroups(&sylow, &EnumerateOptions::default()).unwrap();
    writeln!(
        out,
        "Sylow 2-subgroup of Sym(8): order {}, {} conjugacy classes of subgroups",
        sylow.order(),
        lattice.len()
    )
    .unwrap();

    let row = fnil_exact(2, 3, 8).unwrap();
    writeln!(out, "log_2 F_Nil(8, c) for c = 1..8: {:?}", row.exponents).unwrap();
    let audit = audit_row(&row);
    for check in &audit.checks {
        writeln!(out, "  {:<16} {}", check.name, if check.passed { "ok" } else { "FAILED" }).unwrap();
    }
    out
}

fn main() {
    print!("{}", run_example());
}
