//! Permutation groups given by generators.
//!
//! A [`PermGroup`] is immutable. Its stabilizer chain is built on first use
//! behind a [`OnceLock`], so a group can be shared across threads and queried
//! concurrently.

use std::collections::VecDeque;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::StabChain;
use crate::perm::{PermError, Permutation};

/// Largest order for which the element-scan center computation runs.
pub const CENTER_SCAN_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator {index}: {source}")]
    BadGenerator { index: usize, source: PermError },
    #[error("degree mismatch: group has degree {expected}, generator {index} has degree {found}")]
    DegreeMismatch {
        expected: usize,
        found: usize,
        index: usize,
    },
    #[error("groups must have positive degree")]
    ZeroDegree,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("{what} is not contained in the group")]
    NotMember { what: String },
    #[error("not nilpotent")]
    NotNilpotent,
    #[error("too large for center scan: order {order} exceeds {limit}")]
    TooLargeForCenterScan { order: BigUint, limit: u64 },
}

/// Interchange format: `{"degree": n, "generators": [[img_0, ..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

/// Lower central series `G = terms[0] >= terms[1] >= ...`.
#[derive(Debug, Clone)]
pub struct CentralSeries {
    pub terms: Vec<PermGroup>,
    /// `None` when the series stabilizes at a nontrivial subgroup.
    pub class: Option<usize>,
}

impl CentralSeries {
    pub fn is_nilpotent(&self) -> bool {
        self.class.is_some()
    }

    pub fn orders(&self) -> Vec<BigUint> {
        self.terms.iter().map(PermGroup::order).collect()
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// The group generated by `gens` on `degree` points.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::ZeroDegree);
        }
        if let Some((index, g)) = gens.iter().enumerate().find(|(_, g)| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
                index,
            });
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group of positive degree")
    }

    fn with_chain(degree: usize, generators: Vec<Permutation>, chain: StabChain) -> Self {
        let lock = OnceLock::new();
        let _ = lock.set(chain);
        PermGroup {
            degree,
            generators,
            chain: lock,
        }
    }

    pub fn from_json(json: &GroupJson) -> Result<Self, GroupError> {
        let gens = json
            .generators
            .iter()
            .enumerate()
            .map(|(index, images)| {
                if images.len() != json.degree {
                    return Err(GroupError::DegreeMismatch {
                        expected: json.degree,
                        found: images.len(),
                        index,
                    });
                }
                Permutation::from_images(images.clone())
                    .map_err(|source| GroupError::BadGenerator { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(json.degree, gens)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            degree: self.degree,
            generators: self
                .generators
                .iter()
                .map(|g| g.images().to_vec())
                .collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::from_generators(self.degree, &[], &self.generators))
    }

    /// Forces construction of the stabilizer chain.
    pub fn build(&self) -> &Self {
        self.chain();
        self
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain().strong_generators()
    }

    /// True when every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Same element set.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    fn check_point(&self, point: usize) -> Result<(), GroupError> {
        if point >= self.degree {
            return Err(GroupError::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// The orbit of `point`, sorted ascending.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>, GroupError> {
        self.check_point(point)?;
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = VecDeque::from([point]);
        let mut orbit = vec![point];
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// All orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let orbit = self.orbit(p).expect("point in range");
                for &q in &orbit {
                    seen[q] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == BigUint::from(self.degree)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// The stabilizer of `point`.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup, GroupError> {
        self.pointwise_stabilizer(&[point])
    }

    /// The subgroup fixing every point of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup, GroupError> {
        for &p in points {
            self.check_point(p)?;
        }
        let chain = StabChain::from_generators(self.degree, points, &self.generators);
        let mut distinct = points.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        PermGroup::new(self.degree, chain.stabilizer_generators(distinct.len()))
    }

    fn check_members(&self, gens: &[Permutation], what: &str) -> Result<(), GroupError> {
        for (i, g) in gens.iter().enumerate() {
            if g.degree() != self.degree {
                return Err(GroupError::DegreeMismatch {
                    expected: self.degree,
                    found: g.degree(),
                    index: i,
                });
            }
            if !self.contains(g) {
                return Err(GroupError::NotMember {
                    what: format!("{what} {i} ({g})"),
                });
            }
        }
        Ok(())
    }

    /// Smallest normal subgroup of `self` containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermGroup, GroupError> {
        self.check_members(seeds, "seed")?;
        Ok(self.normal_closure_unchecked(seeds.to_vec()))
    }

    fn normal_closure_unchecked(&self, seeds: Vec<Permutation>) -> PermGroup {
        let mut chain = StabChain::new(self.degree, &[]);
        let mut gens = Vec::new();
        let mut queue = VecDeque::new();
        for s in seeds {
            if chain.insert(s.clone()) {
                gens.push(s.clone());
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = x.conjugate_by(g);
                if chain.insert(y.clone()) {
                    gens.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        PermGroup::with_chain(self.degree, gens, chain)
    }

    /// `[A, B]`, the normal closure in `<A, B>` of the commutators of
    /// generator pairs. `A` and `B` must be subgroups of `self`.
    pub fn commutator_subgroup(&self, a: &PermGroup, b: &PermGroup) -> Result<PermGroup, GroupError> {
        self.check_members(&a.generators, "generator of A")?;
        self.check_members(&b.generators, "generator of B")?;
        Ok(commutator_unchecked(a, b))
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        commutator_unchecked(self, self)
    }

    pub fn lower_central_series(&self) -> CentralSeries {
        let mut terms = vec![self.clone()];
        loop {
            let last = terms.last().expect("nonempty");
            if last.is_trivial() || last.order().is_one() {
                return CentralSeries {
                    class: Some(terms.len() - 1),
                    terms,
                };
            }
            let next = commutator_unchecked(last, self);
            if next.order() == last.order() {
                return CentralSeries { terms, class: None };
            }
            terms.push(next);
        }
    }

    /// Least `c` with `gamma_{c+1} = 1`; the trivial group has class 0.
    pub fn nilpotency_class(&self) -> Result<usize, GroupError> {
        self.lower_central_series()
            .class
            .ok_or(GroupError::NotNilpotent)
    }

    /// Visits every element. Callers guard the order themselves.
    pub fn for_each_element(&self, f: impl FnMut(&Permutation)) {
        self.chain().for_each_element(f);
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        self.for_each_element(|g| out.push(g.clone()));
        out
    }

    /// Permutations of the point set commuting with every generator.
    ///
    /// For a transitive group such a permutation is fixed by the image of
    /// point 0, so there are at most `degree` candidates. Returns `None` for
    /// intransitive groups.
    pub fn symmetric_centralizer(&self) -> Option<Vec<Permutation>> {
        if !self.is_transitive() {
            return None;
        }
        // transversal for the orbit of 0: point b = 0^{reps[b]}
        let mut reps: Vec<Option<Permutation>> = vec![None; self.degree];
        reps[0] = Some(self.identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(x);
                if reps[y].is_none() {
                    reps[y] = Some(reps[x].as_ref().unwrap().then(g));
                    queue.push_back(y);
                }
            }
        }
        let reps: Vec<Permutation> = reps.into_iter().map(|r| r.unwrap()).collect();
        let mut out = Vec::new();
        for target in 0..self.degree {
            let images: Vec<usize> = reps.iter().map(|u| u.apply(target)).collect();
            let Ok(z) = Permutation::from_images(images) else {
                continue;
            };
            if self.generators.iter().all(|g| z.commutes_with(g)) {
                out.push(z);
            }
        }
        Some(out)
    }

    /// The center `Z(G)`.
    ///
    /// Transitive groups use [`PermGroup::symmetric_centralizer`]; other
    /// groups fall back to scanning elements, refused above
    /// [`CENTER_SCAN_LIMIT`].
    pub fn center(&self) -> Result<PermGroup, GroupError> {
        let members: Vec<Permutation> = match self.symmetric_centralizer() {
            Some(cands) => cands.into_iter().filter(|z| self.contains(z)).collect(),
            None => {
                let order = self.order();
                if order > BigUint::from(CENTER_SCAN_LIMIT) {
                    return Err(GroupError::TooLargeForCenterScan {
                        order,
                        limit: CENTER_SCAN_LIMIT,
                    });
                }
                let mut found = Vec::new();
                self.for_each_element(|z| {
                    if self.generators.iter().all(|g| z.commutes_with(g)) {
                        found.push(z.clone());
                    }
                });
                found
            }
        };
        let mut chain = StabChain::new(self.degree, &[]);
        let gens: Vec<Permutation> = members
            .into_iter()
            .filter(|z| chain.insert(z.clone()))
            .collect();
        Ok(PermGroup::with_chain(self.degree, gens, chain))
    }
}

fn commutator_unchecked(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let mut seeds = Vec::new();
    for x in &a.generators {
        for y in &b.generators {
            let c = x.commutator(y);
            if !c.is_identity() {
                seeds.push(c);
            }
        }
    }
    let mut join = a.generators.clone();
    join.extend(b.generators.iter().cloned());
    let join = PermGroup::new(a.degree, join).expect("same degree");
    join.normal_closure_unchecked(seeds)
}

/// Builds `<gens>` on `degree` points.
pub fn group_from_generators(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup, GroupError> {
    PermGroup::new(degree, gens)
}

/// `log_p(n)` when `n` is a power of `p`.
pub fn exact_log(n: &BigUint, p: u64) -> Option<u32> {
    if p < 2 {
        return None;
    }
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut e = 0;
    while !n.is_one() {
        if (&n % &p) != BigUint::from(0u32) {
            return None;
        }
        n /= &p;
        e += 1;
    }
    Some(e)
}
