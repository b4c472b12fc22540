//! Explicit witness groups as permutation groups.
//!
//! Point encodings are fixed so that generator lists are reproducible:
//!
//! * a vector `(v_0, .., v_{k-1})` of `F_p^k` is the point `sum_i v_i p^i`;
//! * mixed-radix tuples use the same little-endian rule with per-coordinate
//!   radices;
//! * a pair `(x, y)` in a product of point sets `X x Y` is `x * |Y| + y`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bignum;
use crate::bounds::{is_prime, monomial_count};
use crate::group::{exact_log, GroupError, PermGroup};
use crate::perm::Permutation;

/// Largest degree for which the Sylow tower is realized.
pub const SYLOW_DEGREE_LIMIT: usize = 32;
/// Largest degree for which the polynomial wreath witness is realized.
pub const WREATH_POLYNOMIAL_DEGREE_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("degree {degree} exceeds the realization limit {limit}; prediction only")]
    TooLarge {
        degree: BigUint,
        limit: usize,
        prediction: Box<Prediction>,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn invalid(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::InvalidParameters(msg.into())
}

fn check_prime(p: u64) -> Result<(), ConstructionError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ConstructionError::NotPrime(p))
    }
}

fn checked_degree(p: u64, e: u32) -> Option<usize> {
    (p as usize).checked_pow(e)
}

/// Little-endian digits of `x` in the given radices.
fn digits(mut x: usize, radices: &[usize]) -> Vec<usize> {
    radices
        .iter()
        .map(|&r| {
            let d = x % r;
            x /= r;
            d
        })
        .collect()
}

fn undigits(ds: &[usize], radices: &[usize]) -> usize {
    ds.iter()
        .zip(radices)
        .rev()
        .fold(0, |acc, (&d, &r)| acc * r + d)
}

/// Permutation of the points encoded in `radices`, given as a map on digit
/// tuples.
fn digit_map(radices: &[usize], f: impl Fn(&mut Vec<usize>)) -> Permutation {
    let degree = radices.iter().product();
    Permutation::from_fn(degree, |x| {
        let mut ds = digits(x, radices);
        f(&mut ds);
        undigits(&ds, radices)
    })
}

/// The regular cyclic group generated by `(0 1 .. n-1)`.
pub fn cyclic_group(n: usize) -> Result<PermGroup, ConstructionError> {
    if n == 0 {
        return Err(invalid("degree must be positive"));
    }
    let gens = if n == 1 {
        Vec::new()
    } else {
        vec![Permutation::from_fn(n, |x| (x + 1) % n)]
    };
    Ok(PermGroup::new(n, gens)?)
}

fn check_half(k: u32, m: u32) -> Result<(), ConstructionError> {
    if m != k / 2 && m != k.div_ceil(2) {
        return Err(invalid(format!(
            "m = {m} must be floor(k/2) or ceil(k/2) for k = {k}"
        )));
    }
    Ok(())
}

/// Affine group `v -> v h + w` on `F_p^k`, with `h` ranging over the
/// block unitriangular matrices `[[I_m, 0], [A, I_(k-m)]]`.
///
/// Generators: the `k` unit translations, then for every row `r >= m` and
/// column `s < m` the elementary matrix `I + E_(r,s)`, which adds `v_r` to
/// `v_s`.
pub fn affine_unitriangular(p: u64, k: u32, m: u32) -> Result<PermGroup, ConstructionError> {
    check_prime(p)?;
    if k == 0 || m == 0 || m > k {
        return Err(invalid(format!("need 1 <= m <= k, got k = {k}, m = {m}")));
    }
    check_half(k, m)?;
    let degree = checked_degree(p, k).ok_or_else(|| invalid("degree overflow"))?;
    let (p, k, m) = (p as usize, k as usize, m as usize);
    let radices = vec![p; k];
    let mut gens = Vec::new();
    for i in 0..k {
        gens.push(digit_map(&radices, |v| v[i] = (v[i] + 1) % p));
    }
    for r in m..k {
        for s in 0..m {
            gens.push(digit_map(&radices, |v| v[s] = (v[s] + v[r]) % p));
        }
    }
    Ok(PermGroup::new(degree, gens)?)
}

/// `V x| H` acting on `V = C_(p^2)^a x C_p^(k-2a)`.
///
/// Coordinates of `V`: `x_1..x_(k-m)` for the generators `v_i` modulo `Z`
/// (the first `a` of order `p^2`, the rest of order `p`), then `y_1..y_(m-a)`
/// for the generators `w_j` of the complement `Z'`. `Z` has basis
/// `v_1^p, .., v_a^p, w_1, .., w_(m-a)`. `H` is generated by the automorphisms
/// `v_i -> v_i z` (one `i`, one basis element `z`) that fix every other
/// generator.
pub fn abelian_class2_group(
    p: u64,
    k: u32,
    m: u32,
    a: u32,
) -> Result<PermGroup, ConstructionError> {
    check_prime(p)?;
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    check_half(k, m)?;
    if a > m.min(k - m) {
        return Err(invalid(format!(
            "a = {a} exceeds min(m, k - m) = {}",
            m.min(k - m)
        )));
    }
    let degree = checked_degree(p, k).ok_or_else(|| invalid("degree overflow"))?;
    let (p, k, m, a) = (p as usize, k as usize, m as usize, a as usize);
    let quotient_rank = k - m;
    let complement_rank = m - a;
    let mut radices = vec![p * p; a];
    radices.extend(std::iter::repeat_n(p, quotient_rank - a + complement_rank));
    debug_assert_eq!(radices.iter().product::<usize>(), degree);

    let mut gens = Vec::new();
    for j in 0..radices.len() {
        let r = radices[j];
        gens.push(digit_map(&radices, |x| x[j] = (x[j] + 1) % r));
    }
    for i in 0..quotient_rank {
        // z = v_t^p for t < a
        for t in 0..a {
            let r = radices[t];
            gens.push(digit_map(&radices, |x| x[t] = (x[t] + p * (x[i] % p)) % r));
        }
        // z = w_j
        for j in 0..complement_rank {
            let coord = quotient_rank + j;
            gens.push(digit_map(&radices, |x| x[coord] = (x[coord] + x[i]) % p));
        }
    }
    Ok(PermGroup::new(degree, gens)?)
}

/// `G x H` acting coordinatewise on pairs, pair `(i, j)` encoded as
/// `i * deg(H) + j`.
pub fn product_action(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let (dg, dh) = (g.degree(), h.degree());
    let degree = dg * dh;
    let mut gens: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|x| Permutation::from_fn(degree, |pt| x.apply(pt / dh) * dh + pt % dh))
        .collect();
    gens.extend(
        h.generators()
            .iter()
            .map(|y| Permutation::from_fn(degree, |pt| (pt / dh) * dh + y.apply(pt % dh))),
    );
    PermGroup::new(degree, gens).expect("lifted generators have the product degree")
}

/// Sylow `p`-subgroup of `Sym(p^k)`, the `k`-fold iterated wreath product of
/// `C_p`.
///
/// Generator `t_l` adds one to digit `l` of a point whose lower digits are
/// all zero. Every transitive `p`-subgroup of `Sym(p^k)` is conjugate into
/// this group.
pub fn iterated_wreath_sylow(p: u64, k: u32) -> Result<PermGroup, ConstructionError> {
    check_prime(p)?;
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let degree = checked_degree(p, k).filter(|&d| d <= SYLOW_DEGREE_LIMIT);
    let Some(degree) = degree else {
        return Err(ConstructionError::TooLarge {
            degree: BigUint::from(p).pow(k),
            limit: SYLOW_DEGREE_LIMIT,
            prediction: Box::new(GroupBlueprint::SylowWreath { p, k }.predict()?),
        });
    };
    let p = p as usize;
    let radices = vec![p; k as usize];
    let gens = (0..k as usize)
        .map(|l| {
            digit_map(&radices, |d| {
                if d[..l].iter().all(|&x| x == 0) {
                    d[l] = (d[l] + 1) % p;
                }
            })
        })
        .collect();
    Ok(PermGroup::new(degree, gens)?)
}

/// Exponent vectors in `{0..p-1}^v` of total degree `< c`, by degree then
/// lexicographically.
pub fn reduced_monomials(p: u64, v: u32, c: u32) -> Vec<Vec<u32>> {
    let cap = (p - 1) as u32;
    let mut all: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..v {
        all = all
            .into_iter()
            .flat_map(|e| {
                (0..=cap).map(move |x| {
                    let mut e = e.clone();
                    e.push(x);
                    e
                })
            })
            .collect();
    }
    all.retain(|e| e.iter().sum::<u32>() < c);
    all.sort_by(|x, y| {
        x.iter()
            .sum::<u32>()
            .cmp(&y.iter().sum::<u32>())
            .then_with(|| x.cmp(y))
    });
    all
}

/// Maps `(x, y) -> (x + f(y), y + t)` on `F_p^u x F_p^v`, with `f` a reduced
/// polynomial map of total degree at most `c - 1`.
///
/// Generators: the `v` unit translations of `y`, then one generator per
/// basis vector of `F_p^u` and reduced monomial of degree `< c`. The group
/// has order `p^(v + u M)` with `M` the number of such monomials.
pub fn wreath_polynomial_group(
    p: u64,
    u: u32,
    v: u32,
    c: u32,
) -> Result<PermGroup, ConstructionError> {
    let blueprint = GroupBlueprint::WreathPolynomial { p, u, v, c };
    let prediction = blueprint.predict()?;
    let degree = checked_degree(p, u + v).filter(|&d| d <= WREATH_POLYNOMIAL_DEGREE_LIMIT);
    let Some(degree) = degree else {
        return Err(ConstructionError::TooLarge {
            degree: BigUint::from(p).pow(u + v),
            limit: WREATH_POLYNOMIAL_DEGREE_LIMIT,
            prediction: Box::new(prediction),
        });
    };
    let pu = p as usize;
    let ysize = pu.pow(v);
    let yradices = vec![pu; v as usize];
    let xradices = vec![pu; u as usize];
    let split = |pt: usize| (digits(pt / ysize, &xradices), digits(pt % ysize, &yradices));
    let join = |x: &[usize], y: &[usize]| undigits(x, &xradices) * ysize + undigits(y, &yradices);

    let mut gens = Vec::new();
    for j in 0..v as usize {
        gens.push(Permutation::from_fn(degree, |pt| {
            let (x, mut y) = split(pt);
            y[j] = (y[j] + 1) % pu;
            join(&x, &y)
        }));
    }
    for mono in reduced_monomials(p, v, c) {
        for b in 0..u as usize {
            gens.push(Permutation::from_fn(degree, |pt| {
                let (mut x, y) = split(pt);
                let value = mono
                    .iter()
                    .zip(&y)
                    .fold(1usize, |acc, (&e, &yj)| acc * yj.pow(e) % pu);
                x[b] = (x[b] + value) % pu;
                join(&x, &y)
            }));
        }
    }
    Ok(PermGroup::new(degree, gens)?)
}

/// `D_(2^(c+1)) x C_2^(k-c-1)` in its right regular action on `2^k` points.
///
/// The dihedral element `r^i s^e` is `e 2^c + i` and a group element
/// `(d, b)` is the point `d 2^(k-c-1) + b`. For `c = 1` the dihedral factor
/// is the Klein four-group.
pub fn dihedral_times_abelian(k: u32, c: u32) -> Result<PermGroup, ConstructionError> {
    if c == 0 || c >= k {
        return Err(invalid(format!("need 1 <= c <= k - 1, got k = {k}, c = {c}")));
    }
    if k >= usize::BITS - 1 {
        return Err(invalid("degree overflow"));
    }
    let rot = 1usize << c;
    let elem = 1usize << (k - c - 1);
    let degree = 1usize << k;
    let split = |pt: usize| {
        let (d, b) = (pt / elem, pt % elem);
        (d % rot, d / rot, b)
    };
    let join = |i: usize, e: usize, b: usize| (e * rot + i) * elem + b;
    // (i, e) * (j, f) = (i + (-1)^e j, e + f)
    let times_dihedral = |j: usize, f: usize| {
        Permutation::from_fn(degree, move |pt| {
            let (i, e, b) = split(pt);
            let i2 = if e == 0 { (i + j) % rot } else { (i + rot - j) % rot };
            join(i2, e ^ f, b)
        })
    };
    let mut gens = vec![times_dihedral(1, 0), times_dihedral(0, 1)];
    for bit in 0..(k - c - 1) as usize {
        gens.push(Permutation::from_fn(degree, |pt| {
            let (i, e, b) = split(pt);
            join(i, e, b ^ (1 << bit))
        }));
    }
    Ok(PermGroup::new(degree, gens)?)
}

/// A reproducible description of one construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "kebab-case")]
pub enum GroupBlueprint {
    AffineUnitriangular { p: u64, k: u32, m: u32 },
    #[serde(rename = "abelian-class2")]
    AbelianClass2 { p: u64, k: u32, m: u32, a: u32 },
    Product {
        left: Box<GroupBlueprint>,
        right: Box<GroupBlueprint>,
    },
    SylowWreath { p: u64, k: u32 },
    WreathPolynomial { p: u64, u: u32, v: u32, c: u32 },
    DihedralAbelian { k: u32, c: u32 },
}

/// Closed-form expectations for a blueprint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    #[serde(with = "bignum")]
    pub degree: BigUint,
    /// The prime when the order is a prime power.
    pub p: Option<u64>,
    pub log_p_order: Option<u64>,
    #[serde(with = "bignum")]
    pub order: BigUint,
    pub class_bound: u32,
    /// Whether the class is predicted exactly or only bounded above.
    pub class_exact: bool,
}

impl Prediction {
    fn prime_power(p: u64, degree_exp: u32, log: u64, class: u32, exact: bool) -> Self {
        Prediction {
            degree: BigUint::from(p).pow(degree_exp),
            p: Some(p),
            log_p_order: Some(log),
            order: BigUint::from(p).pow(log.to_u32().expect("log fits u32")),
            class_bound: class,
            class_exact: exact,
        }
    }
}

/// What a realized group actually has.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observed {
    pub degree: usize,
    #[serde(with = "bignum")]
    pub order: BigUint,
    pub log_p_order: Option<u64>,
    pub transitive: bool,
    pub class: Option<usize>,
}

impl Observed {
    pub fn of(group: &PermGroup, p: Option<u64>) -> Self {
        let order = group.order();
        Observed {
            degree: group.degree(),
            log_p_order: p.and_then(|p| exact_log(&order, p)).map(u64::from),
            order,
            transitive: group.is_transitive(),
            class: group.lower_central_series().class,
        }
    }

    /// Differences from `prediction`, empty when everything matches.
    pub fn mismatches(&self, prediction: &Prediction) -> Vec<String> {
        let mut out = Vec::new();
        if BigUint::from(self.degree) != prediction.degree {
            out.push(format!(
                "degree {} != predicted {}",
                self.degree, prediction.degree
            ));
        }
        if self.order != prediction.order {
            out.push(format!(
                "order {} != predicted {}",
                self.order, prediction.order
            ));
        }
        match self.class {
            None => out.push("group is not nilpotent".to_string()),
            Some(c) if c > prediction.class_bound as usize => out.push(format!(
                "class {c} exceeds bound {}",
                prediction.class_bound
            )),
            Some(c) if prediction.class_exact && c != prediction.class_bound as usize => {
                out.push(format!("class {c} != predicted {}", prediction.class_bound))
            }
            _ => {}
        }
        if !self.transitive {
            out.push("group is not transitive".to_string());
        }
        out
    }
}

impl GroupBlueprint {
    pub fn predict(&self) -> Result<Prediction, ConstructionError> {
        use GroupBlueprint::*;
        Ok(match *self {
            AffineUnitriangular { p, k, m } | AbelianClass2 { p, k, m, .. } => {
                check_prime(p)?;
                if k == 0 || m > k {
                    return Err(invalid(format!("need m <= k and k >= 1, got k = {k}, m = {m}")));
                }
                check_half(k, m)?;
                match *self {
                    AffineUnitriangular { .. } if m == 0 => {
                        return Err(invalid("m must be positive"))
                    }
                    AbelianClass2 { a, .. } if a > m.min(k - m) => {
                        return Err(invalid(format!(
                            "a = {a} exceeds min(m, k - m) = {}",
                            m.min(k - m)
                        )))
                    }
                    _ => {}
                }
                let log = k as u64 + m as u64 * (k - m) as u64;
                Prediction::prime_power(p, k, log, if k > 1 { 2 } else { 1 }, true)
            }
            SylowWreath { p, k } => {
                check_prime(p)?;
                if k == 0 {
                    return Err(invalid("k must be positive"));
                }
                // 1 + p + .. + p^(k-1)
                let log = (0..k).map(|i| p.pow(i)).sum();
                let class = p.pow(k - 1).to_u32().ok_or_else(|| invalid("class overflow"))?;
                Prediction::prime_power(p, k, log, class, true)
            }
            WreathPolynomial { p, u, v, c } => {
                check_prime(p)?;
                if u == 0 || v == 0 || c == 0 {
                    return Err(invalid("u, v and c must be positive"));
                }
                let monomials: BigUint = (0..c).map(|i| monomial_count(v, i, p)).sum();
                let log = (BigUint::from(v) + BigUint::from(u) * monomials)
                    .to_u64()
                    .ok_or_else(|| invalid("order exponent overflow"))?;
                Prediction::prime_power(p, u + v, log, c, false)
            }
            DihedralAbelian { k, c } => {
                if c == 0 || c >= k {
                    return Err(invalid(format!("need 1 <= c <= k - 1, got k = {k}, c = {c}")));
                }
                Prediction::prime_power(2, k, k as u64, c, true)
            }
            Product {
                ref left,
                ref right,
            } => {
                let (l, r) = (left.predict()?, right.predict()?);
                let same_prime = l.p.is_some() && l.p == r.p;
                Prediction {
                    degree: &l.degree * &r.degree,
                    p: if same_prime { l.p } else { None },
                    log_p_order: match (same_prime, l.log_p_order, r.log_p_order) {
                        (true, Some(a), Some(b)) => Some(a + b),
                        _ => None,
                    },
                    order: &l.order * &r.order,
                    class_bound: l.class_bound.max(r.class_bound),
                    class_exact: l.class_exact && r.class_exact,
                }
            }
        })
    }

    pub fn realize(&self) -> Result<PermGroup, ConstructionError> {
        use GroupBlueprint::*;
        match *self {
            AffineUnitriangular { p, k, m } => affine_unitriangular(p, k, m),
            AbelianClass2 { p, k, m, a } => abelian_class2_group(p, k, m, a),
            Product {
                ref left,
                ref right,
            } => Ok(product_action(&left.realize()?, &right.realize()?)),
            SylowWreath { p, k } => iterated_wreath_sylow(p, k),
            WreathPolynomial { p, u, v, c } => wreath_polynomial_group(p, u, v, c),
            DihedralAbelian { k, c } => dihedral_times_abelian(k, c),
        }
    }
}
