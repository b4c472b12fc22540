//! Regular 2-groups of every class: a dihedral group times an elementary
//! abelian group.

use std::fmt::Write;

use nilbound::constructions::dihedral_times_abelian;

pub fn run_example() -> String {
    let mut out = String::new();
    for (k, c) in [(3, 2), (4, 2), (4, 3), (5, 4)] {
        let g = dihedral_times_abelian(k, c).unwrap();
        writeln!(
            out,
            "k={k} c={c}: order {}, regular {}, class {}",
            g.order(),
            g.is_regular(),
            g.nilpotency_class().unwrap()
        )
        .unwrap();
    }
    out
}

fn main() {
    print!("{}", run_example());
}
