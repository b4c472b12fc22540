//! Exhaustive search for the largest transitive subgroups of bounded class.
//!
//! Every transitive `p`-subgroup of `Sym(p^k)` is conjugate to a subgroup of
//! one fixed Sylow `p`-subgroup, and conjugation preserves order, class and
//! transitivity. So the search only enumerates the subgroups of
//! [`iterated_wreath_sylow`].
//!
//! Subgroups are built level by level. In a `p`-group every subgroup `K > 1`
//! has a normal subgroup `H` of index `p`, and then `K = H<g>` for any
//! `g` in `K \ H`. Extending each subgroup `H` of order `p^i` by elements
//! `g` that normalize `H` with `g^p` in `H` therefore reaches every
//! subgroup of order `p^(i+1)`.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{class2_exponent, f_upper, is_prime, prime_power};
use crate::constructions::{iterated_wreath_sylow, ConstructionError};
use crate::group::{exact_log, GroupError, GroupJson, PermGroup};
use crate::perm::Permutation;

/// Largest group order accepted by [`enumerate_subgroups`].
pub const ENUMERATION_ORDER_LIMIT: u64 = 128;
/// Largest degree accepted by [`fnil_exact`].
pub const EXHAUSTIVE_DEGREE_LIMIT: u64 = 9;
/// Default cap on the number of stored subgroups.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error(
        "degree {degree} is beyond the exhaustive search limit {limit}; \
         use the constructions for lower bounds and `bound` for upper bounds"
    )]
    DegreeTooLarge { degree: u64, limit: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group order {0} is not a prime power")]
    NotPGroup(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// How duplicate subgroups are recognized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dedupe {
    /// Every subgroup once.
    Set,
    /// One subgroup per conjugacy class in the ambient group.
    #[default]
    Conjugacy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub dedupe: Dedupe,
    pub max_count: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            dedupe: Dedupe::default(),
            max_count: DEFAULT_BUDGET,
        }
    }
}

/// The elements of a small `p`-group, sorted by image array, with a full
/// multiplication table.
///
/// Subgroups are bitsets over element indices. Because the element order is
/// fixed, a bitset is a canonical key for the sorted element list.
pub struct ElementTable {
    p: u64,
    degree: usize,
    elements: Vec<Permutation>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl ElementTable {
    pub fn new(group: &PermGroup) -> Result<Self, SearchError> {
        let order = group.order();
        let small = order.to_u64().filter(|&n| n <= ENUMERATION_ORDER_LIMIT);
        let Some(n) = small else {
            return Err(SearchError::BudgetExceeded(format!(
                "group order {order} exceeds the enumeration limit {ENUMERATION_ORDER_LIMIT}"
            )));
        };
        let p = if n == 1 {
            1
        } else {
            prime_power(n)
                .ok_or_else(|| SearchError::NotPGroup(order.to_string()))?
                .0
        };
        let mut elements = group.elements();
        elements.sort();
        let index = |g: &Permutation| elements.binary_search(g).expect("closed under products");
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                mul[a * n + b] = index(&x.then(y)) as u32;
            }
        }
        let inv = elements.iter().map(|x| index(&x.inverse()) as u32).collect();
        Ok(ElementTable {
            p,
            degree: group.degree(),
            elements,
            mul,
            inv,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b] as usize
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    fn pow(&self, a: usize, e: u64) -> usize {
        // the identity is the least image array
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    fn singleton_identity(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert(0);
        s
    }

    /// Subgroup generated by the elements of `seeds`.
    fn closure(&self, seeds: &FixedBitSet) -> FixedBitSet {
        let gens: Vec<usize> = seeds.ones().filter(|&g| g != 0).collect();
        let mut set = self.singleton_identity();
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !set.put(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// Greedy generating set: members in index order, kept when new.
    fn generating_set(&self, members: &FixedBitSet) -> Vec<usize> {
        let mut gens = FixedBitSet::with_capacity(self.len());
        let mut span = self.singleton_identity();
        for x in members.ones() {
            if !span.contains(x) {
                gens.insert(x);
                span = self.closure(&gens);
            }
        }
        gens.ones().collect()
    }

    /// The subgroup as a permutation group on the ambient points.
    pub fn to_group(&self, members: &FixedBitSet) -> PermGroup {
        let gens = self
            .generating_set(members)
            .into_iter()
            .map(|i| self.elements[i].clone())
            .collect();
        PermGroup::new(self.degree, gens).expect("elements share the ambient degree")
    }

    fn is_transitive(&self, members: &FixedBitSet) -> bool {
        let mut orbit = FixedBitSet::with_capacity(self.degree);
        for x in members.ones() {
            orbit.insert(self.elements[x].apply(0));
        }
        orbit.count_ones(..) == self.degree
    }

    /// Nilpotency class of a subgroup, or `None` if its lower central series
    /// stalls above the identity.
    fn class(&self, members: &FixedBitSet) -> Option<usize> {
        let all: Vec<usize> = members.ones().collect();
        let mut gamma = members.clone();
        let mut class = 0;
        while gamma.count_ones(..) > 1 {
            let mut seeds = FixedBitSet::with_capacity(self.len());
            for a in gamma.ones() {
                for &g in &all {
                    let ag = self.mul(self.inv(a), self.mul(self.inv(g), self.mul(a, g)));
                    seeds.insert(ag);
                }
            }
            let next = self.closure(&seeds);
            if next == gamma {
                return None;
            }
            gamma = next;
            class += 1;
        }
        Some(class)
    }

    fn log_order(&self, members: &FixedBitSet) -> u32 {
        let n = members.count_ones(..) as u64;
        if n == 1 {
            0
        } else {
            prime_power(n).expect("subgroup order divides a prime power").1
        }
    }

    /// Index-`p` extensions `H<g>` of `h`, in order of the least new element.
    fn extensions(&self, h: &FixedBitSet) -> Vec<FixedBitSet> {
        let members: Vec<usize> = h.ones().collect();
        let mut covered = h.clone();
        let mut out = Vec::new();
        for g in 0..self.len() {
            if covered.contains(g) || !h.contains(self.pow(g, self.p)) {
                continue;
            }
            if !members.iter().all(|&x| h.contains(self.conj(x, g))) {
                continue;
            }
            let mut k = h.clone();
            let mut gj = g;
            for _ in 1..self.p {
                for &x in &members {
                    k.insert(self.mul(x, gj));
                }
                gj = self.mul(gj, g);
            }
            covered.union_with(&k);
            out.push(k);
        }
        out
    }

    /// Least conjugate of `h` under the ambient group.
    fn canonical_conjugate(&self, h: &FixedBitSet) -> FixedBitSet {
        let members: Vec<usize> = h.ones().collect();
        (0..self.len())
            .map(|g| {
                let mut c = FixedBitSet::with_capacity(self.len());
                c.extend(members.iter().map(|&x| self.conj(x, g)));
                c
            })
            .min()
            .expect("the ambient group is not empty")
    }
}

/// All subgroups of a small `p`-group, grouped by order.
pub struct SubgroupLattice {
    table: ElementTable,
    levels: Vec<Vec<FixedBitSet>>,
}

impl SubgroupLattice {
    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Subgroups of order `p^i` for each `i`.
    pub fn levels(&self) -> &[Vec<FixedBitSet>] {
        &self.levels
    }

    pub fn members(&self) -> impl Iterator<Item = &FixedBitSet> {
        self.levels.iter().flatten()
    }

    pub fn groups(&self) -> impl Iterator<Item = PermGroup> + '_ {
        self.members().map(|m| self.table.to_group(m))
    }
}

/// Enumerates the subgroups of `s`, one per subgroup or one per conjugacy
/// class depending on `options.dedupe`.
pub fn enumerate_subgroups(
    s: &PermGroup,
    options: &EnumerateOptions,
) -> Result<SubgroupLattice, SearchError> {
    let table = ElementTable::new(s)?;
    let mut levels = vec![vec![table.singleton_identity()]];
    let mut count = 1usize;
    loop {
        let frontier = levels.last().expect("at least the trivial level");
        let found: Vec<Vec<FixedBitSet>> = frontier
            .par_iter()
            .map(|h| {
                let ext = table.extensions(h);
                match options.dedupe {
                    Dedupe::Set => ext,
                    Dedupe::Conjugacy => ext.iter().map(|k| table.canonical_conjugate(k)).collect(),
                }
            })
            .collect();
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for k in found.into_iter().flatten() {
            if seen.insert(k.clone()) {
                next.push(k);
                count += 1;
                if count > options.max_count {
                    return Err(SearchError::BudgetExceeded(format!(
                        "more than {} subgroups",
                        options.max_count
                    )));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    Ok(SubgroupLattice { table, levels })
}

/// Maximum orders of transitive subgroups of class at most `c`, for each
/// `c` up to `c_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRow {
    pub p: u64,
    pub k: u32,
    pub c_max: u32,
    /// `exponents[c-1]` is the largest `log_p |G|` found for class `<= c`.
    pub exponents: Vec<u32>,
    /// One group attaining each exponent.
    pub witnesses: Vec<GroupJson>,
}

fn check_degree(p: u64, k: u32) -> Result<u64, SearchError> {
    if !is_prime(p) {
        return Err(SearchError::NotPrime(p));
    }
    if k == 0 {
        return Err(SearchError::InvalidParameters("k must be positive".into()));
    }
    let degree = p.checked_pow(k).unwrap_or(u64::MAX);
    if degree > EXHAUSTIVE_DEGREE_LIMIT {
        return Err(SearchError::DegreeTooLarge {
            degree,
            limit: EXHAUSTIVE_DEGREE_LIMIT,
        });
    }
    Ok(degree)
}

/// Exact `log_p F_Nil(p^k, c)` for `c = 1..=c_max` with default options.
pub fn fnil_exact(p: u64, k: u32, c_max: u32) -> Result<SearchRow, SearchError> {
    fnil_exact_with(p, k, c_max, &EnumerateOptions::default())
}

pub fn fnil_exact_with(
    p: u64,
    k: u32,
    c_max: u32,
    options: &EnumerateOptions,
) -> Result<SearchRow, SearchError> {
    check_degree(p, k)?;
    if c_max == 0 {
        return Err(SearchError::InvalidParameters("c_max must be positive".into()));
    }
    let sylow = iterated_wreath_sylow(p, k)?;
    let lattice = enumerate_subgroups(&sylow, options)?;
    let table = lattice.table();

    // (log order, class, members) of each transitive subgroup
    let candidates: Vec<&FixedBitSet> = lattice
        .members()
        .filter(|m| table.is_transitive(m))
        .collect();
    let analyzed: Vec<(u32, usize, &FixedBitSet)> = candidates
        .par_iter()
        .filter_map(|m| table.class(m).map(|c| (table.log_order(m), c, *m)))
        .collect();

    let mut exponents = Vec::new();
    let mut witnesses = Vec::new();
    for c in 1..=c_max as usize {
        let best = analyzed
            .iter()
            .filter(|(_, class, _)| *class <= c)
            .max_by(|x, y| x.0.cmp(&y.0).then_with(|| y.2.cmp(x.2)))
            .expect("the regular cyclic subgroup is abelian and transitive");
        exponents.push(best.0);
        witnesses.push(table.to_group(best.2).to_json());
    }
    Ok(SearchRow {
        p,
        k,
        c_max,
        exponents,
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AuditReport {
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(AuditCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Checks a row against the known invariants and re-derives every witness
/// from its generators. Failures are reported, never raised.
pub fn audit_row(row: &SearchRow) -> AuditReport {
    let mut report = AuditReport::default();
    let k = row.k;

    match row.exponents.first() {
        Some(&e) if e == k => report.record("abelian-regular", true, format!("exponent {e} = k")),
        other => report.record(
            "abelian-regular",
            false,
            format!("abelian-regular violation: class-1 exponent {other:?}, expected {k}"),
        ),
    }

    for (i, &e) in row.exponents.iter().enumerate() {
        let c = i as u32 + 1;
        let name = format!("upper-bound c={c}");
        match f_upper(k, c) {
            Ok(b) if b.value >= e.into() => {
                report.record(name, true, format!("{e} <= F({k},{c}) = {}", b.value))
            }
            Ok(b) => report.record(
                name,
                false,
                format!("F(k,c) bound violation: {e} > F({k},{c}) = {}", b.value),
            ),
            Err(err) => report.record(name, false, err.to_string()),
        }
    }

    if let Some(&e) = row.exponents.get(1) {
        match class2_exponent(k) {
            Ok(v) if v == e.into() => report.record("class-two", true, format!("{e} = {v}")),
            Ok(v) => report.record(
                "class-two",
                false,
                format!("class-two violation: {e} != {v}"),
            ),
            Err(err) => report.record("class-two", false, err.to_string()),
        }
    }

    let monotone = row.exponents.windows(2).all(|w| w[0] <= w[1]);
    report.record(
        "monotone",
        monotone,
        if monotone {
            "non-decreasing in c".to_string()
        } else {
            format!("monotonicity violation: {:?}", row.exponents)
        },
    );

    let sylow_exp: u64 = (0..k).map(|i| row.p.saturating_pow(i)).sum();
    let capped = row.exponents.iter().all(|&e| u64::from(e) <= sylow_exp);
    report.record(
        "sylow-cap",
        capped,
        format!("exponents at most {sylow_exp}"),
    );

    if row.witnesses.len() != row.exponents.len() {
        report.record(
            "witness-count",
            false,
            format!(
                "{} witnesses for {} exponents",
                row.witnesses.len(),
                row.exponents.len()
            ),
        );
    }
    for (i, (w, &e)) in row.witnesses.iter().zip(&row.exponents).enumerate() {
        let c = i + 1;
        report.record(format!("witness c={c}"), true, String::new());
        let slot = report.checks.last_mut().expect("just pushed");
        match check_witness(w, row.p, k, c, e) {
            Ok(detail) => slot.detail = detail,
            Err(detail) => {
                slot.passed = false;
                slot.detail = detail;
            }
        }
    }
    report
}

fn check_witness(w: &GroupJson, p: u64, k: u32, c: usize, e: u32) -> Result<String, String> {
    let g = PermGroup::from_json(w).map_err(|err| format!("witness does not load: {err}"))?;
    let degree = p.pow(k) as usize;
    if g.degree() != degree {
        return Err(format!("degree {} != {degree}", g.degree()));
    }
    if !g.is_transitive() {
        return Err("witness is not transitive".into());
    }
    let order = g.order();
    if exact_log(&order, p) != Some(e) {
        return Err(format!("order {order} is not {p}^{e}"));
    }
    match g.lower_central_series().class {
        Some(class) if class <= c => Ok(format!("order {p}^{e}, class {class}")),
        Some(class) => Err(format!("class {class} exceeds {c}")),
        None => Err("witness is not nilpotent".into()),
    }
}

/// Published `log_2 F_Nil(2^k, c)` for `c = 1..=16`, beyond exhaustive reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRow {
    pub p: u64,
    pub k: u32,
    pub exponents: &'static [u32],
}

pub const REFERENCE_ROWS: [ReferenceRow; 2] = [
    ReferenceRow {
        p: 2,
        k: 4,
        exponents: &[4, 8, 10, 12, 13, 14, 14, 15, 15, 15, 15, 15, 15, 15, 15, 15],
    },
    ReferenceRow {
        p: 2,
        k: 5,
        exponents: &[5, 11, 17, 19, 22, 25, 26, 27, 28, 29, 29, 30, 30, 30, 30, 31],
    },
];

pub fn reference_row(p: u64, k: u32) -> Option<&'static ReferenceRow> {
    REFERENCE_ROWS.iter().find(|r| r.p == p && r.k == k)
}

impl ReferenceRow {
    /// Whether a group of this degree with the given class and order
    /// exponent is consistent with the row. Classes past the row use its
    /// last entry.
    pub fn dominates(&self, class: usize, log_order: u32) -> bool {
        let idx = class.clamp(1, self.exponents.len()) - 1;
        log_order <= self.exponents[idx]
    }
}
