//! Polynomial maps of bounded degree as a lower-bound witness, realized when
//! small and predicted when not.

use std::fmt::Write;

use nilbound::bounds::binomial_lower;
use nilbound::constructions::{wreath_polynomial_group, ConstructionError, GroupBlueprint};

pub fn run_example() -> String {
    let mut out = String::new();
    let g = wreath_polynomial_group(2, 2, 2, 2).unwrap();
    writeln!(
        out,
        "p=2 u=2 v=2 c=2: degree {}, order {}, class {}, lower bound 2^{}",
        g.degree(),
        g.order(),
        g.nilpotency_class().unwrap(),
        binomial_lower(4, 2).unwrap()
    )
    .unwrap();

    let bp = GroupBlueprint::WreathPolynomial { p: 2, u: 4, v: 4, c: 2 };
    match bp.realize() {
        Err(ConstructionError::TooLarge { prediction, .. }) => writeln!(
            out,
            "p=2 u=4 v=4 c=2: degree {} is too large, predicted log order {:?}",
            prediction.degree, prediction.log_p_order
        )
        .unwrap(),
        other => panic!("unexpected {other:?}"),
    }
    out
}

fn main() {
    print!("{}", run_example());
}
