#![allow(dead_code)]

use std::collections::BTreeSet;

use nilbound::constructions::{
    abelian_class2_group, affine_unitriangular, cyclic_group, dihedral_times_abelian,
    iterated_wreath_sylow, product_action, wreath_polynomial_group,
};
use nilbound::{PermGroup, Permutation};

pub const NAIVE_LIMIT: usize = 10_000;

pub fn perm(images: &[usize]) -> Permutation {
    Permutation::from_images(images.to_vec()).unwrap()
}

pub fn cycles(n: usize, cs: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, cs).unwrap()
}

pub fn group(n: usize, gens: Vec<Permutation>) -> PermGroup {
    PermGroup::new(n, gens).unwrap()
}

/// Every element reachable from the identity by right multiplication with
/// generators. Panics past `NAIVE_LIMIT` elements.
pub fn naive_closure(degree: usize, gens: &[Permutation]) -> BTreeSet<Vec<usize>> {
    let id: Vec<usize> = (0..degree).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y: Vec<usize> = x.iter().map(|&i| g.apply(i)).collect();
            if seen.insert(y.clone()) {
                assert!(seen.len() <= NAIVE_LIMIT, "naive closure too large");
                stack.push(y);
            }
        }
    }
    seen
}

pub fn naive_elements(g: &PermGroup) -> Vec<Permutation> {
    naive_closure(g.degree(), g.generators())
        .into_iter()
        .map(|v| perm(&v))
        .collect()
}

fn symmetric(n: usize) -> PermGroup {
    let all: Vec<usize> = (0..n).collect();
    group(n, vec![cycles(n, &[&[0, 1]]), cycles(n, &[&all])])
}

fn alternating(n: usize) -> PermGroup {
    let gens = (2..n).map(|i| cycles(n, &[&[0, 1, i]])).collect();
    group(n, gens)
}

fn dihedral(n: usize) -> PermGroup {
    let rot: Vec<usize> = (0..n).collect();
    group(n, vec![cycles(n, &[&rot]), perm(&(0..n).map(|i| (n - i) % n).collect::<Vec<_>>())])
}

/// Affine maps `x -> a x + b` of `Z/q` for prime `q`.
fn affine_line(q: usize, a: usize) -> PermGroup {
    group(
        q,
        vec![
            perm(&(0..q).map(|x| (x + 1) % q).collect::<Vec<_>>()),
            perm(&(0..q).map(|x| a * x % q).collect::<Vec<_>>()),
        ],
    )
}

fn quaternion_regular() -> PermGroup {
    // right regular action of Q8 = {±1, ±i, ±j, ±k}, indices 0..8 as
    // 1, i, j, k, -1, -i, -j, -k
    let table = |x: usize, y: usize| -> usize {
        let (sx, ux) = (x / 4, x % 4);
        let (sy, uy) = (y / 4, y % 4);
        // unit products (sign, unit)
        let (s, u) = match (ux, uy) {
            (0, u) | (u, 0) => (0, u),
            (a, b) if a == b => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        };
        ((sx + sy + s) % 2) * 4 + u
    };
    let right = |g: usize| perm(&(0..8).map(|x| table(x, g)).collect::<Vec<_>>());
    group(8, vec![right(1), right(2)])
}

/// Named groups of order at most `NAIVE_LIMIT`.
pub fn corpus() -> Vec<(&'static str, PermGroup)> {
    let c2 = cyclic_group(2).unwrap();
    let c3 = cyclic_group(3).unwrap();
    vec![
        ("trivial-1", PermGroup::trivial(1)),
        ("trivial-3", PermGroup::trivial(3)),
        ("C2", c2.clone()),
        ("C7", cyclic_group(7).unwrap()),
        ("C2xC3", product_action(&c2, &c3)),
        ("V4", group(4, vec![cycles(4, &[&[0, 1], &[2, 3]]), cycles(4, &[&[0, 2], &[1, 3]])])),
        ("S3", symmetric(3)),
        ("S4", symmetric(4)),
        ("S5", symmetric(5)),
        ("S7", symmetric(7)),
        ("A4", alternating(4)),
        ("A5", alternating(5)),
        ("A6", alternating(6)),
        ("D4", dihedral(4)),
        ("D5", dihedral(5)),
        ("D6", dihedral(6)),
        ("AGL(1,7)", affine_line(7, 3)),
        ("Q8", quaternion_regular()),
        ("intransitive", group(5, vec![cycles(5, &[&[0, 1]]), cycles(5, &[&[2, 3, 4]])])),
        ("S3xS3", product_action(&symmetric(3), &symmetric(3))),
        ("affine(2,2,1)", affine_unitriangular(2, 2, 1).unwrap()),
        ("affine(2,3,1)", affine_unitriangular(2, 3, 1).unwrap()),
        ("affine(2,4,2)", affine_unitriangular(2, 4, 2).unwrap()),
        ("affine(3,2,1)", affine_unitriangular(3, 2, 1).unwrap()),
        ("abelian-class2(3,2,1,1)", abelian_class2_group(3, 2, 1, 1).unwrap()),
        ("abelian-class2(2,3,1,1)", abelian_class2_group(2, 3, 1, 1).unwrap()),
        ("sylow(2,3)", iterated_wreath_sylow(2, 3).unwrap()),
        ("sylow(3,2)", iterated_wreath_sylow(3, 2).unwrap()),
        ("wreath-poly(2,2,2,2)", wreath_polynomial_group(2, 2, 2, 2).unwrap()),
        ("dihedral-abelian(4,3)", dihedral_times_abelian(4, 3).unwrap()),
        ("dihedral-abelian(5,2)", dihedral_times_abelian(5, 2).unwrap()),
    ]
}

/// Commutator-closure class computed from a full element list.
pub fn naive_class(elements: &[Permutation]) -> Option<usize> {
    let degree = elements[0].degree();
    let mut gamma: BTreeSet<Vec<usize>> = elements.iter().map(|e| e.images().to_vec()).collect();
    let mut class = 0;
    while gamma.len() > 1 {
        let seeds: Vec<Permutation> = gamma
            .iter()
            .flat_map(|a| {
                let a = perm(a);
                elements.iter().map(move |g| a.commutator(g))
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let next = naive_closure(degree, &seeds);
        if next == gamma {
            return None;
        }
        gamma = next;
        class += 1;
    }
    Some(class)
}
