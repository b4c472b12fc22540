//! Exact bound arithmetic.
//!
//! Everything here is integer or rational arithmetic on [`BigUint`] and
//! [`BigRational`]. The central object is the composition maximum
//! `F(k, c)`: over all ways to write `k = a_1 + .. + a_c` with non-negative
//! parts, maximize `sum_i a_i * (1 + s_i + s_i^2 + .. + s_i^(i-1))` where
//! `s_i = a_1 + .. + a_(i-1)`. Zero parts are allowed and the ratio
//! `(s^i - 1)/(s - 1)` is always read as the geometric sum, so `s = 0` gives
//! 1 and `s = 1` gives `i`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bignum::{self, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("divisibility required: c = {c} does not divide k = {k}")]
    DivisibilityRequired { k: u32, c: u32 },
    #[error("table formula mismatch at k = {k}, c = {c}: non-integral value {value}")]
    TableFormulaMismatch { k: u32, c: u32, value: String },
    #[error("closed forms exist only for 1 <= c <= 4, got c = {0}")]
    UnsupportedClass(u32),
    #[error("{name} must be positive")]
    NonPositive { name: &'static str },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("prime {0} appears more than once")]
    RepeatedPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Parts `(a_1, .., a_c)` of a composition of `k` into `c` non-negative parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn k(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    pub fn c(&self) -> usize {
        self.0.len()
    }

    /// All compositions of `k` into `c` non-negative parts, lexicographic.
    pub fn all(k: u32, c: u32) -> Compositions {
        Compositions::new(k, c)
    }
}

/// Lexicographic iterator over compositions of `k` into `c` parts.
pub struct Compositions {
    k: u32,
    current: Option<Vec<u32>>,
}

impl Compositions {
    fn new(k: u32, c: u32) -> Self {
        let current = (c > 0).then(|| {
            let mut v = vec![0; c as usize];
            v[c as usize - 1] = k;
            v
        });
        Compositions { k, current }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.current.take()?;
        let out = Composition(cur.clone());
        // successor: bump the rightmost non-final part whose prefix sum is
        // below k, zero the parts after it and put the remainder last
        let c = cur.len();
        if c >= 2 {
            let mut next = cur;
            let mut prefix: u32 = next.iter().sum::<u32>() - next[c - 1];
            for i in (0..c - 1).rev() {
                prefix -= next[i];
                let used = prefix + next[i];
                if used < self.k {
                    next[i] += 1;
                    for slot in next.iter_mut().skip(i + 1) {
                        *slot = 0;
                    }
                    next[c - 1] = self.k - prefix - next[i];
                    self.current = Some(next);
                    break;
                }
            }
        }
        Some(out)
    }
}

/// `1 + s + .. + s^(terms-1)`.
pub fn geometric_sum(s: u64, terms: u32) -> BigUint {
    let s = BigUint::from(s);
    let mut acc = BigUint::zero();
    let mut power = BigUint::one();
    for _ in 0..terms {
        acc += &power;
        power *= &s;
    }
    acc
}

/// The summand `sum_i a_i * S(s_i, i)` for one composition.
pub fn composition_value(a: &Composition) -> BigUint {
    let mut total = BigUint::zero();
    let mut prefix = 0u64;
    for (i, &part) in a.0.iter().enumerate() {
        if part > 0 {
            total += geometric_sum(prefix, i as u32 + 1) * BigUint::from(part);
        }
        prefix += part as u64;
    }
    total
}

/// `F(k, c)` together with the lexicographically least maximizing composition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    #[serde(with = "bignum")]
    pub value: BigUint,
    pub witness: Composition,
}

fn check_positive(k: u32, c: u32) -> Result<(), BoundsError> {
    if k == 0 {
        return Err(BoundsError::NonPositive { name: "k" });
    }
    if c == 0 {
        return Err(BoundsError::NonPositive { name: "c" });
    }
    Ok(())
}

/// Reference computation of `F(k, c)` by enumerating every composition.
pub fn f_upper_exhaustive(k: u32, c: u32) -> Result<UpperBound, BoundsError> {
    check_positive(k, c)?;
    let mut best: Option<UpperBound> = None;
    for comp in Composition::all(k, c) {
        let value = composition_value(&comp);
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(UpperBound {
                value,
                witness: comp,
            });
        }
    }
    Ok(best.expect("at least one composition"))
}

/// `F(k, c)` by dynamic programming over prefix sums.
///
/// `best[i][s]` is the largest contribution of parts `i..c` given that the
/// earlier parts sum to `s`. Agrees with [`f_upper_exhaustive`], including
/// the choice of witness.
pub fn f_upper(k: u32, c: u32) -> Result<UpperBound, BoundsError> {
    check_positive(k, c)?;
    let (k, c) = (k as usize, c as usize);
    // weight[i][s] = S(s, i+1)
    let weight: Vec<Vec<BigUint>> = (0..c)
        .map(|i| (0..=k).map(|s| geometric_sum(s as u64, i as u32 + 1)).collect())
        .collect();
    let mut best: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); k + 1]; c + 1];
    for i in (0..c).rev() {
        for s in 0..=k {
            best[i][s] = if i == c - 1 {
                &weight[i][s] * BigUint::from(k - s)
            } else {
                (0..=k - s)
                    .map(|a| &weight[i][s] * BigUint::from(a) + &best[i + 1][s + a])
                    .max()
                    .expect("nonempty range")
            };
        }
    }
    let mut parts = Vec::with_capacity(c);
    let mut s = 0usize;
    for i in 0..c {
        let a = if i == c - 1 {
            k - s
        } else {
            (0..=k - s)
                .find(|&a| &weight[i][s] * BigUint::from(a) + &best[i + 1][s + a] == best[i][s])
                .expect("maximizer exists")
        };
        parts.push(a as u32);
        s += a;
    }
    Ok(UpperBound {
        value: best[0][0].clone(),
        witness: Composition(parts),
    })
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Tabulated closed forms of `F(k, c)` for `c <= 4`.
pub fn f_closed(k: u32, c: u32) -> Result<BigUint, BoundsError> {
    check_positive(k, c)?;
    let kk = BigRational::from_integer(BigInt::from(k));
    let poly = |coeffs: &[(i64, i64)]| -> BigRational {
        // coeffs from the highest power down to the constant term
        let mut acc = BigRational::zero();
        for &(n, d) in coeffs {
            acc = acc * &kk + rat(n, d);
        }
        acc
    };
    let value = match c {
        1 => kk.clone(),
        2 => {
            let floor = k / 2;
            let ceil = k - floor;
            BigRational::from_integer(BigInt::from(floor as u64 * ceil as u64 + k as u64))
        }
        3 => match k % 3 {
            0 => poly(&[(4, 27), (1, 3), (1, 1), (0, 1)]),
            1 => poly(&[(4, 27), (1, 3), (8, 9), (-10, 27)]),
            _ => poly(&[(4, 27), (1, 3), (8, 9), (-8, 27)]),
        },
        4 => match (k, k % 4) {
            (2, _) => rat(5, 1),
            (6, _) => rat(188, 1),
            (_, 0) => poly(&[(27, 256), (13, 64), (3, 8), (1, 1), (0, 1)]),
            (_, 1) => poly(&[(27, 256), (13, 64), (41, 128), (53, 64), (-117, 256)]),
            (_, 2) => poly(&[(27, 256), (13, 64), (1, 8), (7, 16), (-11, 16)]),
            _ => poly(&[(27, 256), (13, 64), (37, 128), (57, 64), (-77, 256)]),
        },
        _ => return Err(BoundsError::UnsupportedClass(c)),
    };
    if !value.is_integer() || value < BigRational::zero() {
        return Err(BoundsError::TableFormulaMismatch {
            k,
            c,
            value: value.to_string(),
        });
    }
    Ok(value
        .to_integer()
        .to_biguint()
        .expect("non-negative integer"))
}

/// `k * (1 + k + .. + k^(c-1))`, which is `k (k^c - 1)/(k - 1)` for `k > 1`
/// and `c` at `k = 1`.
pub fn elementary_bound(k: u32, c: u32) -> Result<BigUint, BoundsError> {
    check_positive(k, c)?;
    Ok(BigUint::from(k) * geometric_sum(k as u64, c))
}

/// `k + floor(k/2) * ceil(k/2)`, the exact exponent at class two.
pub fn class2_exponent(k: u32) -> Result<BigUint, BoundsError> {
    check_positive(k, 1)?;
    let floor = (k / 2) as u64;
    let ceil = k as u64 - floor;
    Ok(BigUint::from(k as u64 + floor * ceil))
}

/// `C(n, r)` exactly.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `(k/c) * C(k(c-1)/c, c-1)` for `c | k`.
pub fn binomial_lower(k: u32, c: u32) -> Result<BigUint, BoundsError> {
    check_positive(k, c)?;
    if !k.is_multiple_of(c) {
        return Err(BoundsError::DivisibilityRequired { k, c });
    }
    let u = (k / c) as u64;
    let v = k as u64 - u;
    Ok(BigUint::from(u) * binomial(v, c as u64 - 1))
}

/// `(c-1)^(c-1) / c^c`, with `0^0 = 1`.
pub fn asymptotic_coefficient(c: u32) -> Result<BigRational, BoundsError> {
    check_positive(1, c)?;
    let num = BigInt::from(c - 1).pow(c - 1);
    let den = BigInt::from(c).pow(c);
    Ok(BigRational::new(num, den))
}

/// Number of monomials in `v` variables of total degree `i` with every
/// exponent at most `p - 1`: the coefficient of `x^i` in
/// `(1 + x + .. + x^(p-1))^v`.
pub fn monomial_count(v: u32, i: u32, p: u64) -> BigUint {
    let i = i as usize;
    let cap = p.saturating_sub(1) as usize;
    let mut coeffs = vec![BigUint::zero(); i + 1];
    coeffs[0] = BigUint::one();
    for _ in 0..v {
        let mut next = vec![BigUint::zero(); i + 1];
        for (d, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for e in 0..=cap.min(i - d) {
                next[d + e] += c;
            }
        }
        coeffs = next;
    }
    coeffs.swap_remove(i)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `n` as `p^alpha` with `p` prime.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut alpha = 0;
    while m.is_multiple_of(p) {
        m /= p;
        alpha += 1;
    }
    (m == 1).then_some((p, alpha))
}

/// `prod p_i^(e_i)` for entries `p_i^(alpha_i) -> e_i` with distinct primes.
pub fn combine_multiplicative<I>(factors: I) -> Result<BigUint, BoundsError>
where
    I: IntoIterator<Item = (u64, u64)>,
{
    let mut by_prime: BTreeMap<u64, u64> = BTreeMap::new();
    for (q, exponent) in factors {
        let (p, _) = prime_power(q).ok_or(BoundsError::NotPrimePower(q))?;
        if by_prime.insert(p, exponent).is_some() {
            return Err(BoundsError::RepeatedPrime(p));
        }
    }
    Ok(by_prime
        .into_iter()
        .fold(BigUint::one(), |acc, (p, e)| {
            acc * BigUint::from(p).pow(e.to_u32().expect("exponent fits u32"))
        }))
}

/// Every bound exponent for one `(p, k, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub p: u64,
    pub k: u32,
    pub c: u32,
    /// `F(k, c)`: upper bound on `log_p` of the maximum order.
    #[serde(with = "bignum")]
    pub f_upper: BigUint,
    /// The weaker elementary upper bound.
    #[serde(with = "bignum")]
    pub elementary: BigUint,
    /// Exact value at class two, `k + floor(k/2) ceil(k/2)`; shown for `c >= 2`.
    #[serde(with = "bignum::option")]
    pub class2_exact: Option<BigUint>,
    /// Lower bound from the wreath-product witness; present when `c | k`.
    #[serde(with = "bignum::option")]
    pub binomial_lower: Option<BigUint>,
    pub witness_composition: Composition,
    /// Leading coefficient of `F(k, c)` as a polynomial in `k`.
    pub asymptotic_coefficient: ExactRational,
}

impl BoundReport {
    pub fn new(p: u64, k: u32, c: u32) -> Result<Self, BoundsError> {
        if !is_prime(p) {
            return Err(BoundsError::NotPrime(p));
        }
        let upper = f_upper(k, c)?;
        Ok(BoundReport {
            p,
            k,
            c,
            f_upper: upper.value,
            elementary: elementary_bound(k, c)?,
            class2_exact: (c >= 2).then(|| class2_exponent(k)).transpose()?,
            binomial_lower: k.is_multiple_of(c).then(|| binomial_lower(k, c)).transpose()?,
            witness_composition: upper.witness,
            asymptotic_coefficient: ExactRational::from(&asymptotic_coefficient(c)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn composition_values() {
        assert_eq!(composition_value(&Composition(vec![7])), big(7));
        // 2 + 2 * (1 + 2)
        assert_eq!(composition_value(&Composition(vec![2, 2])), big(8));
        // 0 + 0 + 1*1 + 1*(1+1+1+1)
        assert_eq!(composition_value(&Composition(vec![0, 0, 1, 1])), big(5));
    }

    #[test]
    fn compositions_enumerate_in_lex_order() {
        let all: Vec<Vec<u32>> = Composition::all(2, 3).map(|c| c.0).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0, 2],
                vec![0, 1, 1],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![1, 1, 0],
                vec![2, 0, 0]
            ]
        );
        assert_eq!(Composition::all(5, 1).count(), 1);
        // C(k + c - 1, c - 1)
        assert_eq!(Composition::all(6, 4).count(), 84);
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(f_upper(3, 3).unwrap().value, big(10));
        assert_eq!(f_upper(6, 4).unwrap().value, big(188));
        for k in 1..10 {
            assert_eq!(f_upper(k, 1).unwrap().value, big(k as u64));
        }
        let f24 = f_upper(2, 4).unwrap();
        assert_eq!(f24.value, big(5));
        assert_eq!(f24.witness, Composition(vec![0, 0, 1, 1]));
        assert_eq!(f_upper_exhaustive(2, 4).unwrap(), f24);
        assert!(f_upper(0, 2).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(f_closed(4, 2).unwrap(), big(8));
        assert_eq!(f_closed(7, 3).unwrap(), big(73));
        assert_eq!(f_upper(7, 3).unwrap().value, big(73));
        assert_eq!(f_closed(2, 4).unwrap(), big(5));
        assert_eq!(f_closed(6, 4).unwrap(), big(188));
        assert_eq!(f_closed(3, 5), Err(BoundsError::UnsupportedClass(5)));
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary_bound(2, 2).unwrap(), big(6));
        for c in 1..8 {
            assert_eq!(elementary_bound(1, c).unwrap(), big(c as u64));
        }
        assert_eq!(elementary_bound(3, 3).unwrap(), big(39));
    }

    #[test]
    fn class_two_examples() {
        assert_eq!(class2_exponent(4).unwrap(), big(8));
        assert_eq!(class2_exponent(5).unwrap(), big(11));
        assert_eq!(class2_exponent(1).unwrap(), big(1));
    }

    #[test]
    fn binomial_lower_examples() {
        assert_eq!(binomial_lower(4, 2).unwrap(), big(4));
        assert_eq!(binomial_lower(6, 3).unwrap(), big(12));
        for k in 1..10 {
            assert_eq!(binomial_lower(k, 1).unwrap(), big(k as u64));
        }
        let err = binomial_lower(5, 2).unwrap_err();
        assert!(err.to_string().contains("divisibility required"));
    }

    #[test]
    fn asymptotic_examples() {
        assert_eq!(asymptotic_coefficient(2).unwrap(), rat(1, 4));
        assert_eq!(asymptotic_coefficient(3).unwrap(), rat(4, 27));
        assert_eq!(asymptotic_coefficient(1).unwrap(), rat(1, 1));
        assert_eq!(asymptotic_coefficient(4).unwrap(), rat(27, 256));
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(monomial_count(2, 1, 2), big(2));
        assert_eq!(monomial_count(2, 2, 2), big(1));
        assert_eq!(monomial_count(3, 2, 3), big(6));
        assert_eq!(monomial_count(3, 0, 2), big(1));
        assert_eq!(monomial_count(2, 3, 2), big(0));
    }

    #[test]
    fn multiplicative_examples() {
        assert_eq!(combine_multiplicative([(8, 5)]).unwrap(), big(32));
        assert_eq!(combine_multiplicative([(4, 3), (3, 1)]).unwrap(), big(24));
        assert_eq!(
            combine_multiplicative([(2, 1), (3, 1), (5, 1)]).unwrap(),
            big(30)
        );
        assert_eq!(
            combine_multiplicative([(2, 1), (4, 3)]),
            Err(BoundsError::RepeatedPrime(2))
        );
        assert_eq!(
            combine_multiplicative([(6, 1)]),
            Err(BoundsError::NotPrimePower(6))
        );
    }

    #[test]
    fn report_fields() {
        let r = BoundReport::new(5, 4, 2).unwrap();
        assert_eq!(r.f_upper, big(8));
        assert_eq!(r.binomial_lower, Some(big(4)));
        assert_eq!(r.class2_exact, Some(big(8)));
        let r = BoundReport::new(2, 1, 1).unwrap();
        assert_eq!((r.f_upper.clone(), r.elementary.clone()), (big(1), big(1)));
        assert_eq!(r.binomial_lower, Some(big(1)));
        assert_eq!(r.class2_exact, None);
        assert_eq!(BoundReport::new(4, 2, 2), Err(BoundsError::NotPrime(4)));
        let json = serde_json::to_value(BoundReport::new(2, 6, 4).unwrap()).unwrap();
        assert_eq!(json["f_upper"], serde_json::json!(188));
        assert_eq!(json["witness_composition"], serde_json::json!([1, 2, 1, 2]));
    }
}
