//! Reading and writing groups as JSON, and building one from a blueprint.

use std::fmt::Write;

use nilbound::constructions::GroupBlueprint;
use nilbound::{GroupJson, PermGroup};

pub fn run_example() -> String {
    let mut out = String::new();
    let text = r#"{"degree": 4, "generators": [[1, 2, 3, 0], [0, 3, 2, 1]]}"#;
    let json: GroupJson = serde_json::from_str(text).unwrap();
    let g = PermGroup::from_json(&json).unwrap();
    writeln!(out, "loaded group of order {}", g.order()).unwrap();

    let bad: GroupJson = serde_json::from_str(r#"{"degree": 3, "generators": [[0, 0, 1]]}"#).unwrap();
    writeln!(out, "rejected: {}", PermGroup::from_json(&bad).unwrap_err()).unwrap();

    let bp: GroupBlueprint =
        serde_json::from_str(r#"{"kind": "sylow-wreath", "params": {"p": 3, "k": 2}}"#).unwrap();
    let prediction = bp.predict().unwrap();
    let h = bp.realize().unwrap();
    writeln!(
        out,
        "sylow-wreath 3^2: predicted order {}, actual {}",
        prediction.order,
        h.order()
    )
    .unwrap();
    writeln!(out, "{}", serde_json::to_string(&h.to_json()).unwrap()).unwrap();
    out
}

fn main() {
    print!("{}", run_example());
}
