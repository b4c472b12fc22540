//! Base and strong generating set, built incrementally.
//!
//! The chain follows Knuth's formulation of the Schreier-Sims method: every
//! point of `{0, .., n-1}` is a base point (an optional prefix fixes the first
//! ones), level `j` stores coset representatives `u` with `base[j]^u = beta`
//! for the group generated by the level's strong generators, and every
//! Schreier generator is sifted into the next level.

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::Permutation;

#[derive(Debug, Clone)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    reps: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

enum Task {
    Add(usize, Permutation),
    Extend(usize, Permutation),
}

#[derive(Debug, Clone)]
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Empty chain (trivial group) whose base begins with `prefix`; the
    /// remaining points follow in increasing order.
    pub(crate) fn new(degree: usize, prefix: &[usize]) -> Self {
        let mut used = vec![false; degree];
        let mut base = Vec::with_capacity(degree);
        for &p in prefix {
            if !used[p] {
                used[p] = true;
                base.push(p);
            }
        }
        base.extend((0..degree).filter(|&p| !used[p]));
        let levels = base
            .into_iter()
            .map(|point| {
                let mut reps = vec![None; degree];
                reps[point] = Some(Permutation::identity(degree));
                Level {
                    point,
                    gens: Vec::new(),
                    reps,
                    orbit: vec![point],
                }
            })
            .collect();
        StabChain { degree, levels }
    }

    pub(crate) fn from_generators(degree: usize, prefix: &[usize], gens: &[Permutation]) -> Self {
        let mut chain = StabChain::new(degree, prefix);
        for g in gens {
            chain.insert(g.clone());
        }
        chain
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it went all the way down).
    fn sift_from(&self, from: usize, g: &Permutation) -> (Permutation, usize) {
        let mut g = g.clone();
        for j in from..self.levels.len() {
            let level = &self.levels[j];
            let beta = g.apply(level.point);
            if beta == level.point {
                continue;
            }
            match &level.reps[beta] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(0, g).0.is_identity()
    }

    /// Adds `g` to the group. Returns false when `g` was already a member.
    pub(crate) fn insert(&mut self, g: Permutation) -> bool {
        if self.contains(&g) {
            return false;
        }
        let mut stack = vec![Task::Add(0, g)];
        while let Some(task) = stack.pop() {
            match task {
                Task::Add(j, g) => {
                    if self.sift_from(j, &g).0.is_identity() {
                        continue;
                    }
                    let level = &mut self.levels[j];
                    for &beta in &level.orbit {
                        let t = level.reps[beta].as_ref().expect("orbit point has rep");
                        stack.push(Task::Extend(j, t.then(&g)));
                    }
                    level.gens.push(g);
                }
                Task::Extend(j, t) => {
                    let level = &mut self.levels[j];
                    let beta = t.apply(level.point);
                    match &level.reps[beta] {
                        Some(u) => {
                            let schreier = t.then(&u.inverse());
                            if !schreier.is_identity() {
                                stack.push(Task::Add(j + 1, schreier));
                            }
                        }
                        None => {
                            for s in &level.gens {
                                stack.push(Task::Extend(j, t.then(s)));
                            }
                            level.reps[beta] = Some(t);
                            level.orbit.push(beta);
                        }
                    }
                }
            }
        }
        true
    }

    pub(crate) fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Strong generators fixing the first `depth` base points; they generate
    /// the pointwise stabilizer of those points.
    pub(crate) fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        self.levels
            .get(depth)
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    pub(crate) fn strong_generators(&self) -> Vec<Permutation> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    pub(crate) fn base(&self) -> Vec<usize> {
        self.levels
            .iter()
            .filter(|l| l.orbit.len() > 1)
            .map(|l| l.point)
            .collect()
    }

    /// Visits every element once, as products of coset representatives.
    pub(crate) fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        let nontrivial: Vec<&Level> = self.levels.iter().filter(|l| l.orbit.len() > 1).collect();
        fn walk(
            levels: &[&Level],
            acc: &Permutation,
            f: &mut dyn FnMut(&Permutation),
        ) {
            match levels.split_last() {
                None => f(acc),
                Some((last, rest)) => {
                    for &beta in &last.orbit {
                        let u = last.reps[beta].as_ref().expect("orbit point has rep");
                        walk(rest, &acc.then(u), f);
                    }
                }
            }
        }
        walk(&nontrivial, &Permutation::identity(self.degree), &mut f);
    }
}
