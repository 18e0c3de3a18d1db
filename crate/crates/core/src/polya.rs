//! Pólya counting for the Jevons group (input permutations and input shifts).
//!
//! Everything is exact: coefficients are `BigRational` and counts are `BigUint`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Largest arity accepted by [`cycle_index_jevons`] and [`count_nbar`].
pub const MAX_POLYA_ARITY: usize = 8;

/// Largest argument accepted by [`a_func`]; keeps `2^k` inside `i128`.
pub const MAX_DIVISOR_SUM_ARG: u64 = 64;

/// `mu(m)`.
pub fn moebius_mu(m: u64) -> Result<i32> {
    if m == 0 {
        return Err(Error::ValueOutOfRange {
            what: "Möbius argument",
            value: 0,
        });
    }
    let (mut m, mut sign, mut p) = (m, 1, 2u64);
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    Ok(sign)
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

fn exact_quotient(sum: i128, k: u64, what: &'static str) -> u64 {
    let k = i128::from(k);
    assert_eq!(sum % k, 0, "{what} sum is not divisible by its argument");
    u64::try_from(sum / k).expect("divisor sum is non-negative")
}

/// `a(k) = (1/k) sum_{d | k} 2^d mu(k/d)`.
pub fn a_func(k: u64) -> Result<u64> {
    if k == 0 || k > MAX_DIVISOR_SUM_ARG {
        return Err(Error::ValueOutOfRange {
            what: "a(k) argument",
            value: k as i64,
        });
    }
    let mut sum = 0i128;
    for d in divisors(k) {
        sum += (1i128 << d) * i128::from(moebius_mu(k / d)?);
    }
    Ok(exact_quotient(sum, k, "a(k)"))
}

/// `b(m) = (1/m) sum_{d | m, d does not divide m/2} 2^(d/2) mu(m/d)` for even `m`.
pub fn b_func(m: u64) -> Result<u64> {
    if m == 0 || m % 2 == 1 || m > 2 * MAX_DIVISOR_SUM_ARG {
        return Err(Error::ValueOutOfRange {
            what: "b(m) argument",
            value: m as i64,
        });
    }
    let mut sum = 0i128;
    for d in divisors(m)
        .into_iter()
        .filter(|d| !(m / 2).is_multiple_of(*d))
    {
        sum += (1i128 << (d / 2)) * i128::from(moebius_mu(m / d)?);
    }
    Ok(exact_quotient(sum, m, "b(m)"))
}

/// A product `x_p1^k1 x_p2^k2 ...` with strictly increasing variables and positive powers.
///
/// Ordered lexicographically with `x1 > x2 > ...`, so `x1^8` sorts before `x1^4*x2^2`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(u32, u64)>,
}

impl Monomial {
    /// The empty product.
    pub fn unit() -> Self {
        Monomial::default()
    }

    /// `x_var^power`; a zero power gives the empty product.
    pub fn var(var: u32, power: u64) -> Self {
        Monomial::from_factors([(var, power)])
    }

    /// Multiplies the given powers together, merging repeated variables.
    pub fn from_factors(factors: impl IntoIterator<Item = (u32, u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, k) in factors {
            *map.entry(v).or_insert(0) += k;
        }
        Monomial {
            factors: map.into_iter().filter(|&(_, k)| k > 0).collect(),
        }
    }

    pub fn factors(&self) -> &[(u32, u64)] {
        &self.factors
    }

    pub fn power(&self, var: u32) -> u64 {
        self.factors.iter().find(|f| f.0 == var).map_or(0, |f| f.1)
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// `sum_p p * power(x_p)`, the total cycle length.
    pub fn weight(&self) -> u64 {
        self.factors.iter().map(|&(p, k)| u64::from(p) * k).sum()
    }

    /// `x_p^n (x) x_q^m = x_lcm(p,q)^(n m gcd(p,q))`, taken over all factor pairs.
    /// The empty product is the identity.
    pub fn cross(&self, other: &Monomial) -> Monomial {
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let mut pairs = Vec::with_capacity(self.factors.len() * other.factors.len());
        for &(p, n) in &self.factors {
            for &(q, m) in &other.factors {
                pairs.push((p.lcm(&q), n * m * u64::from(p.gcd(&q))));
            }
        }
        Monomial::from_factors(pairs)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.factors.iter().zip(&other.factors) {
            if a.0 != b.0 {
                // The side holding the smaller variable has the larger exponent there.
                return a.0.cmp(&b.0);
            }
            if a.1 != b.1 {
                return b.1.cmp(&a.1);
            }
        }
        other.factors.len().cmp(&self.factors.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        Monomial::from_factors(self.factors.iter().chain(&rhs.factors).copied())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        for (i, &(p, k)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if k == 1 {
                write!(f, "x{p}")?;
            } else {
                write!(f, "x{p}^{k}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial with exact rational coefficients; zero terms are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CycleIndexPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl CycleIndexPoly {
    pub fn zero() -> Self {
        CycleIndexPoly::default()
    }

    pub fn one() -> Self {
        CycleIndexPoly::term(BigRational::one(), Monomial::unit())
    }

    pub fn term(coeff: BigRational, monomial: Monomial) -> Self {
        let mut p = CycleIndexPoly::zero();
        p.add_term(coeff, monomial);
        p
    }

    pub fn monomial(monomial: Monomial) -> Self {
        CycleIndexPoly::term(BigRational::one(), monomial)
    }

    pub fn add_term(&mut self, coeff: BigRational, monomial: Monomial) {
        let entry = self.terms.entry(monomial).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> BigRational {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> CycleIndexPoly {
        let mut out = CycleIndexPoly::zero();
        for (m, k) in &self.terms {
            out.add_term(k * c, m.clone());
        }
        out
    }

    pub fn coefficient_sum(&self) -> BigRational {
        self.terms
            .values()
            .fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// `self (x) self (x) ... (x) self`, `times` factors; zero factors give the unit.
    pub fn cross_power(&self, times: usize) -> CycleIndexPoly {
        (0..times).fold(CycleIndexPoly::one(), |acc, _| cross_product(&acc, self))
    }
}

impl Add for &CycleIndexPoly {
    type Output = CycleIndexPoly;

    fn add(self, rhs: &CycleIndexPoly) -> CycleIndexPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl fmt::Display for CycleIndexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let c = c.abs();
            if m.is_unit() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Bilinear extension of [`Monomial::cross`].
pub fn cross_product(p: &CycleIndexPoly, q: &CycleIndexPoly) -> CycleIndexPoly {
    let mut out = CycleIndexPoly::zero();
    for (m1, c1) in &p.terms {
        for (m2, c2) in &q.terms {
            out.add_term(c1 * c2, m1.cross(m2));
        }
    }
    out
}

/// A partition of `n` as weakly decreasing parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `c[k-1]` = number of parts equal to `k`, for `k = 1..=n`.
    pub fn cvector(&self) -> Vec<usize> {
        let mut c = vec![0; self.total()];
        for &p in &self.parts {
            c[p - 1] += 1;
        }
        c
    }
}

/// All partitions of `n`, in reverse lexicographic order starting from `(n)`.
pub fn partitions(n: usize) -> Vec<IntegerPartition> {
    fn go(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
        if rest == 0 {
            out.push(IntegerPartition {
                parts: current.clone(),
            });
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            current.push(part);
            go(rest - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// `prod_{d | i} x_d^a(d) + prod_{d | 2i, d does not divide i} x_d^b(d)`.
fn jevons_factor(i: u64) -> Result<CycleIndexPoly> {
    let mut first = Vec::new();
    for d in divisors(i) {
        first.push((d as u32, a_func(d)?));
    }
    let mut second = Vec::new();
    for d in divisors(2 * i)
        .into_iter()
        .filter(|d| !i.is_multiple_of(*d))
    {
        second.push((d as u32, b_func(d)?));
    }
    Ok(&CycleIndexPoly::monomial(Monomial::from_factors(first))
        + &CycleIndexPoly::monomial(Monomial::from_factors(second)))
}

/// Cycle index of the Jevons group acting on `V_n`.
pub fn cycle_index_jevons(n: usize) -> Result<CycleIndexPoly> {
    if n == 0 {
        return Err(Error::ArityTooSmall { n, min: 1 });
    }
    if n > MAX_POLYA_ARITY {
        return Err(Error::ArityTooLarge {
            n,
            max: MAX_POLYA_ARITY,
            what: "cycle index",
        });
    }
    let factors: Vec<CycleIndexPoly> = (1..=n as u64).map(jevons_factor).collect::<Result<_>>()?;
    let mut total = CycleIndexPoly::zero();
    for partition in partitions(n) {
        let c = partition.cvector();
        let mut product = CycleIndexPoly::one();
        let mut denom = BigInt::one();
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            product = cross_product(&product, &factors[i].cross_power(ci));
            let fact: BigInt = (1..=ci).map(BigInt::from).product();
            denom *= fact * BigInt::from(2 * (i + 1)).pow(ci as u32);
        }
        let weight = BigRational::new(BigInt::one(), denom);
        total = &total + &product.scale(&weight);
    }
    Ok(total)
}

/// Evaluates `p` with `x_k` replaced by `values[k]`.
pub fn substitute(p: &CycleIndexPoly, values: &BTreeMap<u32, BigRational>) -> Result<BigRational> {
    let mut sum = BigRational::zero();
    for (m, c) in &p.terms {
        let mut term = c.clone();
        for &(v, k) in &m.factors {
            let x = values.get(&v).ok_or(Error::MissingVariable(v))?;
            let k = i32::try_from(k).map_err(|_| Error::ValueOutOfRange {
                what: "power",
                value: k as i64,
            })?;
            term *= num_traits::pow::Pow::pow(x, k);
        }
        sum += term;
    }
    Ok(sum)
}

/// Variables occurring in `p`.
pub fn variables(p: &CycleIndexPoly) -> Vec<u32> {
    let mut vars: Vec<u32> = p
        .terms
        .keys()
        .flat_map(|m| m.factors.iter().map(|f| f.0))
        .collect();
    vars.sort_unstable();
    vars.dedup();
    vars
}

/// Orbits of functions `X -> Y` under `G x H`, with `G` given by its cycle index and
/// `H` by the cycle types of its elements on `Y` (`c[j-1]` = number of `j`-cycles).
///
/// Each `h` contributes `Z_G` at `x_i = sum_{j | i} j c_j(h)`; the result is the mean.
pub fn count_two_sided(z: &CycleIndexPoly, output_cycle_types: &[Vec<u64>]) -> Result<BigRational> {
    if output_cycle_types.is_empty() {
        return Err(Error::LengthMismatch {
            expected: 1,
            got: 0,
        });
    }
    let vars = variables(z);
    let mut sum = BigRational::zero();
    for c in output_cycle_types {
        let values = vars
            .iter()
            .map(|&i| {
                let m: u64 = c
                    .iter()
                    .enumerate()
                    .map(|(j, &cj)| (j as u64 + 1, cj))
                    .filter(|&(j, _)| u64::from(i) % j == 0)
                    .map(|(j, cj)| j * cj)
                    .sum();
                (i, BigRational::from_integer(BigInt::from(m)))
            })
            .collect();
        sum += substitute(z, &values)?;
    }
    Ok(sum / BigRational::from_integer(BigInt::from(output_cycle_types.len())))
}

/// Classes of `F_n` under input permutations, input shifts and output negation.
pub fn count_nbar(n: usize) -> Result<BigUint> {
    let z = cycle_index_jevons(n)?;
    // Identity on Z_2 has two fixed points; negation is one 2-cycle.
    let count = count_two_sided(&z, &[vec![2], vec![0, 1]])?;
    assert!(count.is_integer(), "orbit count must be an integer");
    Ok(count
        .to_integer()
        .to_biguint()
        .expect("orbit count is positive"))
}

/// `count_nbar` as a `u64` when it fits.
pub fn count_nbar_u64(n: usize) -> Result<Option<u64>> {
    Ok(count_nbar(n)?.to_u64())
}
