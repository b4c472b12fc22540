//! Permutations, group order and the lower central series of the dihedral
//! group of order 8 acting on the corners of a square.

use std::fmt::Write;

use nilbound::{compose, PermGroup, Permutation};

pub fn run_example() -> String {
    let mut out = String::new();
    let r = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
    let s = Permutation::from_cycles(4, &[&[1, 3]]).unwrap();
    writeln!(out, "r = {r}, s = {s}, r*s = {}", compose(&r, &s).unwrap()).unwrap();

    let d4 = PermGroup::new(4, vec![r.clone(), s]).unwrap();
    writeln!(out, "order {}", d4.order()).unwrap();
    writeln!(out, "stabilizer of 0 has order {}", d4.point_stabilizer(0).unwrap().order()).unwrap();

    let series = d4.lower_central_series();
    let orders: Vec<String> = series.orders().iter().map(|o| o.to_string()).collect();
    writeln!(out, "lower central series {}", orders.join(" > ")).unwrap();
    writeln!(out, "class {:?}", series.class).unwrap();
    writeln!(out, "center order {}", d4.center().unwrap().order()).unwrap();
    writeln!(
        out,
        "normal closure of r^2 has order {}",
        d4.normal_closure(&[r.pow(2)]).unwrap().order()
    )
    .unwrap();
    out
}

fn main() {
    print!("{}", run_example());
}
