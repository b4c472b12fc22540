//! The composition bound F(k,c), the quantities it is compared against,
//! and its growth for large k.

use std::fmt::Write;

use nilbound::bounds::{asymptotic_coefficient, f_closed, f_upper, BoundReport};
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub fn run_example() -> String {
    let mut out = String::new();
    writeln!(out, " k | c=1 c=2 c=3 c=4").unwrap();
    for k in 1..=8 {
        let row: Vec<String> = (1..=4)
            .map(|c| {
                let v = f_upper(k, c).unwrap().value;
                assert_eq!(v, f_closed(k, c).unwrap());
                format!("{v:>3}")
            })
            .collect();
        writeln!(out, "{k:>2} | {}", row.join(" ")).unwrap();
    }

    let report = BoundReport::new(2, 6, 4).unwrap();
    writeln!(
        out,
        "F(6,4) = {} at composition {:?}",
        report.f_upper,
        report.witness_composition.parts()
    )
    .unwrap();

    let k = 300;
    for c in [2, 3] {
        let f = BigRational::from_integer(f_upper(k, c).unwrap().value.into());
        let lead = asymptotic_coefficient(c).unwrap()
            * BigRational::from_integer(num_bigint::BigInt::from(k).pow(c));
        let ratio = (f / lead).to_f64().unwrap();
        writeln!(out, "F({k},{c}) / leading term = {ratio:.4}").unwrap();
    }
    out
}

fn main() {
    print!("{}", run_example());
}
