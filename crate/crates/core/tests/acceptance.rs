//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on any FAIL.

#[path = "common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use nilbound::bounds::{
    asymptotic_coefficient, binomial_lower, class2_exponent, combine_multiplicative, f_closed,
    f_upper,
};
use nilbound::constructions::{
    abelian_class2_group, affine_unitriangular, cyclic_group, dihedral_times_abelian,
    iterated_wreath_sylow, product_action, wreath_polynomial_group,
};
use nilbound::group::exact_log;
use nilbound::search::{fnil_exact, reference_row, SearchRow};
use nilbound::PermGroup;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn log_order(g: &PermGroup, p: u64) -> Result<u32, String> {
    exact_log(&g.order(), p).ok_or_else(|| format!("order {} is not a power of {p}", g.order()))
}

fn class(g: &PermGroup) -> Result<usize, String> {
    g.nilpotency_class().map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    for c in 1..=4 {
        for k in 1..=40 {
            let upper = f_upper(k, c).map_err(|e| e.to_string())?.value;
            let closed = f_closed(k, c).map_err(|e| e.to_string())?;
            ensure(upper == closed, || format!("F({k},{c}): {upper} vs closed form {closed}"))?;
        }
    }
    let f24 = f_upper(2, 4).unwrap().value;
    let f64_ = f_upper(6, 4).unwrap().value;
    ensure(f24 == 5u32.into() && f64_ == 188u32.into(), || {
        format!("F(2,4) = {f24}, F(6,4) = {f64_}")
    })?;
    Ok("160 entries agree, F(2,4)=5, F(6,4)=188".into())
}

fn exact_rows() -> Result<Vec<SearchRow>, String> {
    (1..=3)
        .map(|k| fnil_exact(2, k, 8).map_err(|e| e.to_string()))
        .collect()
}

fn criterion_2(rows: &[SearchRow]) -> Outcome {
    let expected: [&[u32]; 3] = [&[1; 8], &[2, 3, 3, 3, 3, 3, 3, 3], &[3, 5, 6, 7, 7, 7, 7, 7]];
    for (row, want) in rows.iter().zip(expected) {
        ensure(row.exponents == want, || {
            format!("k={}: {:?} != {want:?}", row.k, row.exponents)
        })?;
    }
    Ok("rows k=1,2,3 match".into())
}

fn criterion_3() -> Outcome {
    for (p, k) in [(2u64, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        let m = k / 2;
        let g = affine_unitriangular(p, k, m).map_err(|e| e.to_string())?;
        ensure(g.is_transitive() && g.degree() as u64 == p.pow(k), || {
            format!("({p},{k}) not transitive of degree p^k")
        })?;
        ensure(class(&g)? == 2, || format!("({p},{k}) class != 2"))?;
        let e = log_order(&g, p)?;
        ensure(BigUint::from(e) == class2_exponent(k).unwrap(), || {
            format!("({p},{k}) log order {e}")
        })?;
        let z = g.center().map_err(|e| e.to_string())?;
        let gamma2 = &g.lower_central_series().terms[1];
        ensure(z.same_elements(gamma2), || format!("({p},{k}) Z(G) != gamma_2"))?;
        ensure(log_order(&z, p)? == m, || format!("({p},{k}) |Z| != p^{m}"))?;
    }
    Ok("6 groups: class 2, maximal order, Z(G) = gamma_2 of order p^floor(k/2)".into())
}

/// The subgroup of translations by the `Z` coordinates: the `p`-th powers of
/// the first `a` quotient coordinates and the complement coordinates.
fn z_subgroup(p: u64, k: u32, m: u32, a: u32) -> PermGroup {
    let (p, k, m, a) = (p as usize, k as usize, m as usize, a as usize);
    let mut radices = vec![p * p; a];
    radices.extend(std::iter::repeat_n(p, k - m - a + m - a));
    let degree: usize = radices.iter().product();
    let shift = |coord: usize, by: usize| {
        let images: Vec<usize> = (0..degree)
            .map(|x| {
                let mut digits = Vec::new();
                let mut y = x;
                for &r in &radices {
                    digits.push(y % r);
                    y /= r;
                }
                digits[coord] = (digits[coord] + by) % radices[coord];
                digits.iter().zip(&radices).rev().fold(0, |acc, (&d, &r)| acc * r + d)
            })
            .collect();
        common::perm(&images)
    };
    let mut gens: Vec<_> = (0..a).map(|t| shift(t, p)).collect();
    gens.extend((0..m - a).map(|j| shift(k - m + j, 1)));
    PermGroup::new(degree, gens).unwrap()
}

fn criterion_4() -> Outcome {
    let mut n = 0;
    for p in [2u64, 3, 5] {
        for k in (2u32..).take_while(|&k| p.pow(k) <= 27) {
            for m in [k / 2, k.div_ceil(2)] {
                for a in 0..=m.min(k - m) {
                    let g = abelian_class2_group(p, k, m, a).map_err(|e| e.to_string())?;
                    let tag = format!("({p},{k},{m},{a})");
                    ensure(class(&g)? == 2, || format!("{tag} class != 2"))?;
                    ensure(BigUint::from(log_order(&g, p)?) == class2_exponent(k).unwrap(), || {
                        format!("{tag} order")
                    })?;
                    let z = g.center().map_err(|e| e.to_string())?;
                    let gamma2 = &g.lower_central_series().terms[1];
                    ensure(z.same_elements(gamma2), || format!("{tag} Z(G) != gamma_2"))?;
                    ensure(z.same_elements(&z_subgroup(p, k, m, a)), || format!("{tag} Z(G) != Z"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} parameter sets with k >= 2"))
}

fn criterion_5(rows: &[SearchRow]) -> Outcome {
    let d4 = PermGroup::from_json(&rows[1].witnesses[1]).map_err(|e| e.to_string())?;
    let three = fnil_exact(3, 1, 2).map_err(|e| e.to_string())?;
    let c3 = PermGroup::from_json(&three.witnesses[1]).map_err(|e| e.to_string())?;
    ensure(c3.same_elements(&cyclic_group(3).unwrap()), || "degree-3 witness".into())?;
    let g = product_action(&d4, &c3);
    let expected = combine_multiplicative([
        (4, u64::from(rows[1].exponents[1])),
        (3, u64::from(three.exponents[1])),
    ])
    .map_err(|e| e.to_string())?;
    ensure(expected == 24u32.into(), || format!("combined {expected}"))?;
    ensure(g.degree() == 12 && g.is_transitive(), || "not transitive of degree 12".into())?;
    ensure(class(&g)? == 2, || "class != 2".into())?;
    ensure(g.order() == expected, || format!("order {}", g.order()))?;
    Ok("degree 12, class 2, order 24".into())
}

fn criterion_6() -> Outcome {
    let g = wreath_polynomial_group(2, 2, 2, 2).map_err(|e| e.to_string())?;
    let e = log_order(&g, 2)?;
    ensure(g.degree() == 16 && g.is_transitive(), || "degree/transitivity".into())?;
    ensure(e == 8 && class(&g)? == 2, || format!("log order {e}"))?;
    ensure(BigUint::from(e) == class2_exponent(4).unwrap(), || "class-two value".into())?;
    ensure(BigUint::from(e) >= binomial_lower(4, 2).unwrap(), || "binomial bound".into())?;
    Ok("degree 16, order 2^8, class 2, >= lower bound 4".into())
}

fn criterion_7(rows: &[SearchRow]) -> Outcome {
    let mut groups: Vec<(u64, PermGroup)> = common::corpus()
        .into_iter()
        .map(|(_, g)| g)
        .filter_map(|g| {
            let n = g.degree() as u64;
            let p = (2..=n).find(|q| n.is_multiple_of(*q))?;
            exact_log(&BigUint::from(n), p)?;
            exact_log(&g.order(), p)?;
            Some((p, g))
        })
        .collect();
    for (p, k) in [(2u64, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        groups.push((p, affine_unitriangular(p, k, k / 2).unwrap()));
        groups.push((p, abelian_class2_group(p, k, k / 2, 0).unwrap()));
    }
    for (p, k) in [(2u64, 3u32), (2, 4), (3, 2), (3, 3), (5, 2)] {
        groups.push((p, iterated_wreath_sylow(p, k).unwrap()));
    }
    for (k, c) in [(3, 2), (4, 2), (4, 3), (5, 4)] {
        groups.push((2, dihedral_times_abelian(k, c).unwrap()));
    }
    for (p, u, v, c) in [(2, 2, 2, 2), (2, 1, 3, 3), (2, 2, 3, 2), (3, 1, 1, 3)] {
        groups.push((p, wreath_polynomial_group(p, u, v, c).unwrap()));
    }
    let mut extra = vec![fnil_exact(3, 1, 4), fnil_exact(3, 2, 4)];
    extra.push(fnil_exact(5, 1, 2));
    for row in rows.iter().cloned().map(Ok).chain(extra) {
        let row = row.map_err(|e| e.to_string())?;
        for w in &row.witnesses {
            groups.push((row.p, PermGroup::from_json(w).map_err(|e| e.to_string())?));
        }
    }
    let mut violations = Vec::new();
    for (p, g) in &groups {
        let k = exact_log(&BigUint::from(g.degree()), *p).unwrap();
        if k == 0 {
            continue;
        }
        let c = class(g)?.max(1) as u32;
        let e = log_order(g, *p)?;
        if BigUint::from(e) > f_upper(k, c).unwrap().value {
            violations.push(format!("degree {} class {c} log {e}", g.degree()));
        }
    }
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!("{} groups, 0 violations", groups.len()))
}

fn criterion_8() -> Outcome {
    let k = 300u32;
    let mut parts = Vec::new();
    for c in [3u32, 2] {
        let f = BigRational::from_integer(f_upper(k, c).unwrap().value.into());
        let lead = asymptotic_coefficient(c).unwrap() * BigRational::from_integer(BigInt::from(k).pow(c));
        let ratio = (f / lead).to_f64().unwrap();
        ensure((ratio - 1.0).abs() <= 0.05, || format!("c={c}: ratio {ratio}"))?;
        parts.push(format!("c={c}: {ratio:.4}"));
    }
    Ok(parts.join(", "))
}

fn criterion_9() -> Outcome {
    for (k, c) in [(3u32, 2u32), (4, 2), (4, 3), (5, 4)] {
        let g = dihedral_times_abelian(k, c).map_err(|e| e.to_string())?;
        ensure(g.is_regular() && g.order() == BigUint::from(1u32 << k), || {
            format!("({k},{c}) not regular of order 2^k")
        })?;
        ensure(class(&g)? == c as usize, || format!("({k},{c}) class"))?;
    }
    Ok("4 groups regular with exact class".into())
}

fn criterion_10() -> Outcome {
    let corpus = common::corpus();
    ensure(corpus.len() >= 20, || "corpus too small".into())?;
    let mut violations = Vec::new();
    for (name, g) in &corpus {
        let naive = common::naive_closure(g.degree(), g.generators());
        if g.order() != BigUint::from(naive.len()) {
            violations.push(format!("{name}: order"));
        }
        for point in 0..g.degree() {
            let orbit = g.orbit(point).unwrap().len();
            let stab = g.point_stabilizer(point).unwrap().order();
            if g.order() != stab * orbit {
                violations.push(format!("{name}: orbit-stabilizer at {point}"));
            }
        }
        if g.is_transitive() {
            for v in &naive {
                let x = common::perm(v);
                let central = g.generators().iter().all(|s| x.commutes_with(s));
                if central && !x.is_identity() && (0..g.degree()).any(|p| x.fixes(p)) {
                    violations.push(format!("{name}: central element {x} fixes a point"));
                }
            }
        }
    }
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!("{} groups, 0 violations", corpus.len()))
}

/// Degree-16 and degree-32 constructions never beat the published rows.
fn reference_consistency() -> Outcome {
    let mut groups = vec![
        affine_unitriangular(2, 4, 2).unwrap(),
        affine_unitriangular(2, 5, 2).unwrap(),
        abelian_class2_group(2, 4, 2, 2).unwrap(),
        abelian_class2_group(2, 5, 2, 1).unwrap(),
        wreath_polynomial_group(2, 2, 2, 2).unwrap(),
        wreath_polynomial_group(2, 1, 3, 2).unwrap(),
        wreath_polynomial_group(2, 1, 3, 3).unwrap(),
        wreath_polynomial_group(2, 2, 3, 2).unwrap(),
        wreath_polynomial_group(2, 1, 4, 2).unwrap(),
        wreath_polynomial_group(2, 1, 4, 3).unwrap(),
        iterated_wreath_sylow(2, 4).unwrap(),
        iterated_wreath_sylow(2, 5).unwrap(),
    ];
    for (k, c) in [(4, 1), (4, 2), (4, 3), (5, 2), (5, 3), (5, 4)] {
        groups.push(dihedral_times_abelian(k, c).unwrap());
    }
    let mut tight = 0;
    for g in &groups {
        let k = exact_log(&BigUint::from(g.degree()), 2).unwrap();
        let row = reference_row(2, k).ok_or("missing reference row")?;
        let c = class(g)?;
        let e = log_order(g, 2)?;
        ensure(row.dominates(c, e), || {
            format!("degree {} class {c}: log order {e} exceeds reference", g.degree())
        })?;
        if row.exponents[(c - 1).min(row.exponents.len() - 1)] == e {
            tight += 1;
        }
    }
    Ok(format!("{} constructions dominated ({tight} attain the entry)", groups.len()))
}

fn run(name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panic: {msg}"))
    });
    let elapsed = start.elapsed();
    let outcome = match (outcome, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
        (o, _) => o,
    };
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("{tag} {name} [{elapsed:.2?}] {detail}");
    outcome.is_ok()
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let mut ok = true;
    ok &= run("1 table-one agreement", secs(5), criterion_1);

    let mut rows = Vec::new();
    ok &= run("2 table-two exhaustive rows", secs(60), || {
        rows = exact_rows()?;
        criterion_2(&rows)
    });

    ok &= run("3 class-two affine witnesses", secs(30), criterion_3);
    ok &= run("4 class-two abelian-base family", None, criterion_4);
    ok &= run("5 product action at degree 12", None, || criterion_5(&rows));
    ok &= run("6 polynomial wreath certificate", secs(30), criterion_6);
    ok &= run("7 upper-bound audit", None, || criterion_7(&rows));
    ok &= run("8 asymptotic ratio", secs(10), criterion_8);
    ok &= run("9 regular dihedral products", None, criterion_9);
    ok &= run("10 engine oracles", None, criterion_10);
    ok &= run("reference rows k=4,5 dominate constructions", None, reference_consistency);
    if !ok {
        std::process::exit(1);
    }
}
