//! Bell inequalities `sum_u W_f(u) E(u) <= 2^n`, their maximal quantum
//! violation, and the Mermin family that attains the largest violation.

use std::f64::consts::{FRAC_PI_4, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolfn::{check_same_arity, check_table_arity, degree, symmetric_function, TruthTable};
use crate::spectral::{wht_fast, WalshSpectrum};
use crate::{Error, Result};

/// Largest arity accepted by [`max_violation`].
pub const MAX_VIOLATION_ARITY: usize = 8;

const CORRELATION_SLACK: f64 = 1e-12;

/// Expectations `E(u)` of products `A_1(u_1) ... A_n(u_n)`, indexed by `b_n(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationVector {
    n: u8,
    entries: Vec<f64>,
}

impl CorrelationVector {
    /// Rejects any entry with `|E(u)| > 1` instead of clipping it.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        let len = entries.len();
        if !len.is_power_of_two() {
            return Err(Error::LengthMismatch {
                expected: len.next_power_of_two(),
                got: len,
            });
        }
        if let Some((index, &value)) = entries
            .iter()
            .enumerate()
            .find(|(_, e)| e.is_nan() || e.abs() > 1.0 + CORRELATION_SLACK)
        {
            return Err(Error::InvalidCorrelation { index, value });
        }
        Ok(CorrelationVector {
            n: len.trailing_zeros() as u8,
            entries,
        })
    }

    /// Correlations of independent sites: `E(u) = q_1(u_1) ... q_n(u_n)` with
    /// `q_i = (q_i(0), q_i(1))`.
    pub fn product_state(q: &[(f64, f64)]) -> Result<Self> {
        let n = q.len();
        let entries = (0..1u32 << n)
            .map(|u| {
                q.iter()
                    .enumerate()
                    .map(|(i, &(q0, q1))| if (u >> (n - 1 - i)) & 1 == 1 { q1 } else { q0 })
                    .product()
            })
            .collect();
        Self::new(entries)
    }

    pub fn arity(&self) -> usize {
        usize::from(self.n)
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

/// Phase settings `phi_1, ..., phi_n`, each reduced to `[0, 2 pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVector {
    phases: Vec<f64>,
}

impl PhaseVector {
    pub fn new(phases: Vec<f64>) -> Self {
        let phases = phases
            .into_iter()
            .map(|p| {
                let r = p.rem_euclid(TAU);
                // rem_euclid can round up to exactly TAU for tiny negative inputs.
                if r >= TAU {
                    0.0
                } else {
                    r
                }
            })
            .collect();
        PhaseVector { phases }
    }

    pub fn uniform(n: usize, phase: f64) -> Self {
        Self::new(vec![phase; n])
    }

    pub fn arity(&self) -> usize {
        self.phases.len()
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }
}

/// Best value found by [`max_violation`] and where it was attained.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationResult {
    pub value: f64,
    pub phases: PhaseVector,
    pub starts_used: usize,
}

/// Knobs of the multi-start coordinate ascent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViolationOptions {
    /// A start stops once a full sweep improves the objective by less than this.
    pub tol: f64,
    /// Pseudo-random starts on top of `(pi/4, ..., pi/4)` and `0`.
    pub random_starts: usize,
    pub seed: u64,
    pub max_sweeps: usize,
}

impl Default for ViolationOptions {
    fn default() -> Self {
        ViolationOptions {
            tol: 1e-12,
            random_starts: 32,
            seed: 0x0B0E_11F0,
            max_sweeps: 10_000,
        }
    }
}

/// Coefficients of the Bell inequality of `f`: its Walsh spectrum.
pub fn bell_coefficients(t: &TruthTable) -> WalshSpectrum {
    wht_fast(t)
}

/// Left-hand side `sum_u W_f(u) E(u)`; classical correlations keep it `<= 2^n`.
pub fn bell_lhs(t: &TruthTable, e: &CorrelationVector) -> Result<f64> {
    check_same_arity(t.arity(), e.arity())?;
    let w = bell_coefficients(t);
    Ok(w.coeffs()
        .iter()
        .zip(&e.entries)
        .map(|(&c, &x)| c as f64 * x)
        .sum())
}

/// `|sum_x (-1)^f(x) prod_k (-i)^(x_k) t_(x_k)(phi_k)|` with `t_0 = cos`, `t_1 = sin`.
pub fn violation_objective(t: &TruthTable, phases: &PhaseVector) -> Result<f64> {
    check_same_arity(t.arity(), phases.arity())?;
    let amps = product_amplitudes(phases.phases());
    Ok(t.signs()
        .iter()
        .zip(&amps)
        .map(|(&s, a)| a * s as f64)
        .sum::<Complex64>()
        .norm())
}

/// `prod_k g_k(x_k)` for every `x`, with `g(0) = cos phi`, `g(1) = -i sin phi`.
fn product_amplitudes(phases: &[f64]) -> Vec<Complex64> {
    let mut amps = vec![Complex64::new(1.0, 0.0)];
    for &phi in phases {
        let (g0, g1) = site_factors(phi);
        amps = amps.iter().flat_map(|&a| [a * g0, a * g1]).collect();
    }
    amps
}

fn site_factors(phi: f64) -> (Complex64, Complex64) {
    let (s, c) = phi.sin_cos();
    (Complex64::new(c, 0.0), Complex64::new(0.0, -s))
}

/// Maximal quantum violation `v_f` by multi-start exact coordinate ascent.
///
/// With every phase but `phi_k` fixed the sum is `P cos phi_k + Q sin phi_k`,
/// whose modulus squared is a quadratic form on the unit circle; each step
/// jumps to its top eigenvector. Starts are `(pi/4, ..., pi/4)`, `0`, and
/// `random_starts` seeded draws, identical for every function.
pub fn max_violation(t: &TruthTable) -> Result<ViolationResult> {
    max_violation_with(t, &ViolationOptions::default())
}

pub fn max_violation_with(t: &TruthTable, opts: &ViolationOptions) -> Result<ViolationResult> {
    let n = t.arity();
    if n > MAX_VIOLATION_ARITY {
        return Err(Error::ArityTooLarge {
            n,
            max: MAX_VIOLATION_ARITY,
            what: "violation search",
        });
    }
    let signs: Vec<f64> = t.signs().into_iter().map(|s| s as f64).collect();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let starts = start_schedule(n, opts);
    let starts_used = starts.len();
    for start in starts {
        let (value, phases) = ascend(&signs, n, start, opts);
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, phases));
        }
    }
    let (value, phases) = best.expect("at least one start");
    Ok(ViolationResult {
        value,
        phases: PhaseVector::new(phases),
        starts_used,
    })
}

fn start_schedule(n: usize, opts: &ViolationOptions) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut starts = vec![vec![FRAC_PI_4; n], vec![0.0; n]];
    for _ in 0..opts.random_starts {
        starts.push((0..n).map(|_| rng.gen_range(0.0..TAU)).collect());
    }
    starts
}

fn objective(signs: &[f64], phases: &[f64]) -> f64 {
    let amps = product_amplitudes(phases);
    signs
        .iter()
        .zip(&amps)
        .map(|(&s, a)| a * s)
        .sum::<Complex64>()
        .norm()
}

fn ascend(
    signs: &[f64],
    n: usize,
    mut phases: Vec<f64>,
    opts: &ViolationOptions,
) -> (f64, Vec<f64>) {
    let mut value = objective(signs, &phases);
    if n == 0 {
        return (value, phases);
    }
    for _ in 0..opts.max_sweeps {
        for k in 0..n {
            phases[k] = best_phase(signs, &phases, k);
        }
        let next = objective(signs, &phases);
        let improvement = next - value;
        value = next;
        if improvement < opts.tol {
            break;
        }
    }
    (value, phases)
}

/// Maximiser of `|P cos phi + Q sin phi|` for coordinate `k` (0-based, i.e. `x_(k+1)`).
fn best_phase(signs: &[f64], phases: &[f64], k: usize) -> f64 {
    let n = phases.len();
    let bit = n - 1 - k;
    let factors: Vec<(Complex64, Complex64)> = phases.iter().map(|&p| site_factors(p)).collect();
    let (mut p, mut q) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for (x, &s) in signs.iter().enumerate() {
        let mut amp = Complex64::new(s, 0.0);
        for (j, &(g0, g1)) in factors.iter().enumerate() {
            if j != k {
                amp *= if (x >> (n - 1 - j)) & 1 == 1 { g1 } else { g0 };
            }
        }
        if (x >> bit) & 1 == 1 {
            q += amp * Complex64::new(0.0, -1.0);
        } else {
            p += amp;
        }
    }
    // |P c + Q s|^2 = a c^2 + 2 b c s + d s^2.
    let a = p.norm_sqr();
    let d = q.norm_sqr();
    let b = (p * q.conj()).re;
    if a == d && b == 0.0 {
        return phases[k];
    }
    (0.5 * (2.0 * b).atan2(a - d)).rem_euclid(TAU)
}

/// Which closed form produced a Mermin function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MerminForm {
    /// Odd `n`, carrying `n mod 8`.
    Odd(u8),
    /// Even `n`, built from the odd case on the first `n - 1` variables.
    EvenRecursion,
}

impl MerminForm {
    pub fn of_arity(n: usize) -> Self {
        if n % 2 == 1 {
            MerminForm::Odd((n % 8) as u8)
        } else {
            MerminForm::EvenRecursion
        }
    }
}

/// Mermin coefficients `M(u)`, indexed by `b_n(u)`.
pub fn mermin_coefficients(n: usize) -> Result<WalshSpectrum> {
    if n == 0 {
        return Err(Error::ArityTooSmall { n, min: 1 });
    }
    check_table_arity(n)?;
    let coeffs = if n % 2 == 1 {
        (0..1u32 << n)
            .map(|u| odd_mermin_coefficient(n, u))
            .collect()
    } else {
        let m = n - 1;
        let mask = (1u32 << m) - 1;
        (0..1u32 << n)
            .map(|u| {
                let head = u >> 1;
                let (a, b) = (
                    odd_mermin_coefficient(m, head),
                    odd_mermin_coefficient(m, !head & mask),
                );
                if u & 1 == 0 {
                    a + b
                } else {
                    a - b
                }
            })
            .collect()
    };
    WalshSpectrum::from_coeffs(coeffs)
}

fn odd_mermin_coefficient(n: usize, u: u32) -> i64 {
    let w = u.count_ones();
    if w.is_multiple_of(2) {
        return 0;
    }
    let magnitude = 1i64 << n.div_ceil(2);
    if ((w - 1) / 2).is_multiple_of(2) {
        magnitude
    } else {
        -magnitude
    }
}

/// The boolean function `m` of the Mermin inequality in closed form.
pub fn mermin_function(n: usize) -> Result<TruthTable> {
    if n == 0 {
        return Err(Error::ArityTooSmall { n, min: 1 });
    }
    check_table_arity(n)?;
    TruthTable::from_fn(n, |x| mermin_value(n, x))
}

fn mermin_value(n: usize, x: u32) -> bool {
    if n.is_multiple_of(2) {
        let head = x >> 1;
        let tail = x & 1 == 1;
        return mermin_value(n - 1, head) ^ (tail && head.count_ones() % 2 == 1);
    }
    let w = x.count_ones() as usize;
    let s1 = w % 2 == 1;
    let s2 = (w * w.saturating_sub(1) / 2) % 2 == 1;
    match n % 8 {
        1 => s1 ^ s2,
        3 => s2,
        5 => !(s1 ^ s2),
        7 => !s2,
        _ => unreachable!("odd n"),
    }
}

/// Whether `f = a + s_2` for some affine `a`.
pub fn is_mermin_class(t: &TruthTable) -> bool {
    degree(&(t ^ &quadratic_part(t.arity()))) <= 1
}

/// `s_2` on `n` variables; identically zero below two variables.
pub(crate) fn quadratic_part(n: usize) -> TruthTable {
    if n < 2 {
        TruthTable::zero(n).expect("arity below 2")
    } else {
        symmetric_function(n, 2).expect("2 <= n")
    }
}
