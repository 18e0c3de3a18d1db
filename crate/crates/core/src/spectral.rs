//! Walsh-Hadamard spectra and the quantities derived from them.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::boolfn::{check_same_arity, check_table_arity, table_from_index, TruthTable};
use crate::{Error, Result, MAX_SWEEP_ARITY};

/// Above this arity [`is_valid_spectrum`] checks validity through one inverse
/// transform instead of the quadratic cross-sum.
const DIRECT_VALIDITY_MAX_ARITY: usize = 8;

/// `W_f(u)` for every `u`, indexed by `b_n(u)`.
///
/// Spectra produced by [`wht_fast`] have even entries bounded by `2^n` and
/// satisfy Parseval; arbitrary coefficient vectors (e.g. candidate Bell
/// coefficients) can also be wrapped and checked with [`is_valid_spectrum`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WalshSpectrum {
    n: u8,
    coeffs: Vec<i64>,
}

impl WalshSpectrum {
    pub fn from_coeffs(coeffs: Vec<i64>) -> Result<Self> {
        let n = arity_of_len(coeffs.len())?;
        Ok(WalshSpectrum { n: n as u8, coeffs })
    }

    pub fn arity(&self) -> usize {
        usize::from(self.n)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    pub fn get(&self, u: u32) -> i64 {
        self.coeffs[u as usize]
    }

    /// `NW_f`, the number of nonzero entries.
    pub fn support_size(&self) -> u64 {
        self.coeffs.iter().filter(|&&w| w != 0).count() as u64
    }

    pub fn max_abs(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|w| w.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    pub fn is_valid(&self) -> bool {
        is_valid_spectrum(&self.coeffs)
    }
}

/// `Delta_{f,g}(u)` for every `u`, indexed by `b_n(u)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutocorrSpectrum {
    n: u8,
    coeffs: Vec<i64>,
}

impl AutocorrSpectrum {
    pub fn arity(&self) -> usize {
        usize::from(self.n)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn get(&self, u: u32) -> i64 {
        self.coeffs[u as usize]
    }

    /// `N Delta_f`, the number of nonzero entries.
    pub fn support_size(&self) -> u64 {
        self.coeffs.iter().filter(|&&d| d != 0).count() as u64
    }
}

/// Reference transform straight from the definition, `O(4^n)`.
pub fn wht_naive(t: &TruthTable) -> WalshSpectrum {
    let len = t.len() as u32;
    let coeffs = (0..len)
        .map(|u| {
            (0..len)
                .map(|x| {
                    let parity = t.get(x) ^ ((x & u).count_ones() & 1 == 1);
                    if parity {
                        -1
                    } else {
                        1
                    }
                })
                .sum()
        })
        .collect();
    WalshSpectrum {
        n: t.arity() as u8,
        coeffs,
    }
}

/// Fast transform, `n 2^(n-1)` butterflies.
pub fn wht_fast(t: &TruthTable) -> WalshSpectrum {
    let mut coeffs = t.signs();
    fwht_in_place(&mut coeffs);
    WalshSpectrum {
        n: t.arity() as u8,
        coeffs,
    }
}

/// Unnormalised in-place Walsh-Hadamard butterfly over a buffer of length `2^n`.
///
/// Stage `k` pairs `j 2^k + i` with `j 2^k + 2^(k-1) + i`.
pub fn fwht_in_place<T>(x: &mut [T])
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T>,
{
    let len = x.len();
    assert!(
        len.is_power_of_two(),
        "buffer length {len} is not a power of two"
    );
    let mut half = 1;
    while half < len {
        for block in x.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*a + *b, *a - *b);
                *a = s;
                *b = d;
            }
        }
        half *= 2;
    }
}

/// Recovers `f` from `W_f`; fails unless every reconstructed value is `+-1`.
pub fn wht_inverse(w: &WalshSpectrum) -> Result<TruthTable> {
    let n = w.arity();
    check_table_arity(n)?;
    let scale = 1i64 << n;
    if w.coeffs.iter().any(|c| c.unsigned_abs() > scale as u64) {
        return Err(Error::InvalidSpectrum);
    }
    let mut z = w.coeffs.clone();
    fwht_in_place(&mut z);
    let mut t = TruthTable::zero(n)?;
    for (x, &v) in z.iter().enumerate() {
        match v {
            v if v == scale => {}
            v if v == -scale => t.set(x as u32, true),
            _ => return Err(Error::InvalidSpectrum),
        }
    }
    Ok(t)
}

/// Whether `w` is the spectrum of some boolean function, i.e.
/// `sum_u W(u) W(u+v) = 2^(2n) [v = 0]` for every `v`.
pub fn is_valid_spectrum(w: &[i64]) -> bool {
    let Ok(n) = arity_of_len(w.len()) else {
        return false;
    };
    if n > DIRECT_VALIDITY_MAX_ARITY {
        return WalshSpectrum::from_coeffs(w.to_vec()).is_ok_and(|s| wht_inverse(&s).is_ok());
    }
    let target = 1i128 << (2 * n);
    (0..w.len()).all(|v| {
        let sum = (0..w.len()).try_fold(0i128, |acc, u| {
            let p = i128::from(w[u]).checked_mul(i128::from(w[u ^ v]))?;
            acc.checked_add(p)
        });
        sum == Some(if v == 0 { target } else { 0 })
    })
}

/// `N_f = 2^(n-1) - max |W_f| / 2`.
pub fn nonlinearity(t: &TruthTable) -> u64 {
    nonlinearity_of_spectrum(&wht_fast(t))
}

pub fn nonlinearity_of_spectrum(w: &WalshSpectrum) -> u64 {
    if w.arity() == 0 {
        return 0;
    }
    (1u64 << (w.arity() - 1)) - w.max_abs() / 2
}

/// `Delta_{f,g}(u) = sum_x (-1)^(f(x) + g(x+u))`, straight from the definition.
pub fn autocorrelation(f: &TruthTable, g: &TruthTable) -> Result<AutocorrSpectrum> {
    check_same_arity(f.arity(), g.arity())?;
    let len = f.len() as u32;
    let coeffs = (0..len)
        .map(|u| {
            (0..len)
                .map(|x| if f.get(x) ^ g.get(x ^ u) { -1 } else { 1 })
                .sum()
        })
        .collect();
    Ok(AutocorrSpectrum {
        n: f.arity() as u8,
        coeffs,
    })
}

/// `Delta_{f,g}(u) = 2^-n sum_v (-1)^<u,v> W_f(v) W_g(v)`, in `O(n 2^n)`.
pub fn autocorrelation_via_spectrum(f: &TruthTable, g: &TruthTable) -> Result<AutocorrSpectrum> {
    check_same_arity(f.arity(), g.arity())?;
    let n = f.arity();
    let (wf, wg) = (wht_fast(f), wht_fast(g));
    let mut prod: Vec<i128> = wf
        .coeffs
        .iter()
        .zip(&wg.coeffs)
        .map(|(&a, &b)| i128::from(a) * i128::from(b))
        .collect();
    fwht_in_place(&mut prod);
    let coeffs = prod.into_iter().map(|d| (d >> n) as i64).collect();
    Ok(AutocorrSpectrum { n: n as u8, coeffs })
}

/// The counts entering the uncertainty `U(f) = NW_f N Delta_f / 2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Uncertainty {
    pub nw: u64,
    pub ndelta: u64,
    pub value: Ratio<u64>,
}

pub fn uncertainty_parts(t: &TruthTable) -> Uncertainty {
    let nw = wht_fast(t).support_size();
    let ndelta = autocorrelation_via_spectrum(t, t)
        .expect("same table on both sides")
        .support_size();
    Uncertainty {
        nw,
        ndelta,
        value: Ratio::new(nw * ndelta, 1u64 << t.arity()),
    }
}

pub fn uncertainty(t: &TruthTable) -> Ratio<u64> {
    uncertainty_parts(t).value
}

/// `U(f)` for every `f` in `F_n`, indexed by `B_n(f)`.
pub fn uncertainty_sweep(n: usize) -> Result<Vec<Ratio<u64>>> {
    sweep(n, |t| uncertainty(&t))
}

/// Applies `metric` to every function of arity `n <= 4`, in index order.
pub(crate) fn sweep<T, F>(n: usize, metric: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(TruthTable) -> T + Sync + Send,
{
    if n > MAX_SWEEP_ARITY {
        return Err(Error::ArityTooLarge {
            n,
            max: MAX_SWEEP_ARITY,
            what: "exhaustive sweeps",
        });
    }
    let count = 1u64 << (1u32 << n);
    let eval = |b: u64| metric(table_from_index(n, b).expect("index below 2^(2^n)"));
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok((0..count).into_par_iter().map(eval).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok((0..count).map(eval).collect())
    }
}

/// A dense square matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigRational::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigRational::one();
        }
        RationalMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.dim + col]
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut entries = vec![BigRational::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += a * other.get(k, j);
                }
            }
        }
        RationalMatrix { dim: d, entries }
    }

    pub fn trace(&self) -> BigRational {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    /// Determinant by Gaussian elimination over the rationals.
    pub fn determinant(&self) -> BigRational {
        let d = self.dim;
        let mut a = self.entries.clone();
        let mut det = BigRational::one();
        for col in 0..d {
            let Some(pivot) = (col..d).find(|&r| !a[r * d + col].is_zero()) else {
                return BigRational::zero();
            };
            if pivot != col {
                for j in 0..d {
                    a.swap(pivot * d + j, col * d + j);
                }
                det = -det;
            }
            let p = a[col * d + col].clone();
            det *= &p;
            for r in col + 1..d {
                let factor = &a[r * d + col] / &p;
                if factor.is_zero() {
                    continue;
                }
                for j in col..d {
                    let delta = &factor * &a[col * d + j];
                    a[r * d + j] -= delta;
                }
            }
        }
        det
    }
}

/// Largest arity accepted by [`walsh_matrix`].
pub const MAX_MATRIX_ARITY: usize = 4;

/// The matrix `(W_f(u + v) / 2^n)_{u,v}`; `f -> W_f` is a representation of
/// the additive group of `F_n`.
pub fn walsh_matrix(t: &TruthTable) -> Result<RationalMatrix> {
    let n = t.arity();
    if n > MAX_MATRIX_ARITY {
        return Err(Error::ArityTooLarge {
            n,
            max: MAX_MATRIX_ARITY,
            what: "Walsh matrices",
        });
    }
    let w = wht_fast(t);
    let dim = t.len();
    let denom = BigInt::from(dim);
    let entries = (0..dim * dim)
        .map(|k| {
            let (u, v) = (k / dim, k % dim);
            BigRational::new(BigInt::from(w.coeffs[u ^ v]), denom.clone())
        })
        .collect();
    Ok(RationalMatrix { dim, entries })
}

fn arity_of_len(len: usize) -> Result<usize> {
    if !len.is_power_of_two() {
        return Err(Error::LengthMismatch {
            expected: len.next_power_of_two(),
            got: len,
        });
    }
    Ok(len.trailing_zeros() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{affine_functions, linear, symmetric_function, table_from_index};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_table(rng: &mut ChaCha8Rng, n: usize) -> TruthTable {
        TruthTable::from_values(&(0..1usize << n).map(|_| rng.gen()).collect::<Vec<bool>>())
            .unwrap()
    }

    fn and2() -> TruthTable {
        table_from_index(2, 8).unwrap()
    }

    #[test]
    fn naive_examples() {
        assert_eq!(
            wht_naive(&TruthTable::zero(2).unwrap()).coeffs(),
            &[4, 0, 0, 0]
        );
        assert_eq!(wht_naive(&and2()).coeffs(), &[2, 2, 2, -2]);
        for n in 1..=5 {
            for c in 0..(1u32 << n) {
                let w = wht_naive(&linear(n, c).unwrap());
                for u in 0..(1u32 << n) {
                    assert_eq!(w.get(u), if u == c { 1 << n } else { 0 });
                }
            }
        }
    }

    #[test]
    fn fast_matches_naive_small_exhaustive() {
        for n in 0..=3 {
            for b in 0..(1u64 << (1 << n)) {
                let t = table_from_index(n, b).unwrap();
                assert_eq!(wht_fast(&t), wht_naive(&t));
            }
        }
        assert_eq!(wht_fast(&and2()).coeffs(), &[2, 2, 2, -2]);
    }

    #[test]
    fn fast_matches_naive_random_n10() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let t = random_table(&mut rng, 10);
            assert_eq!(wht_fast(&t), wht_naive(&t));
        }
    }

    #[test]
    fn inverse_examples() {
        let w = WalshSpectrum::from_coeffs(vec![4, 0, 0, 0]).unwrap();
        assert_eq!(wht_inverse(&w).unwrap(), TruthTable::zero(2).unwrap());
        let bad = WalshSpectrum::from_coeffs(vec![2, 2, 2, 2]).unwrap();
        assert_eq!(wht_inverse(&bad), Err(Error::InvalidSpectrum));
        let huge = WalshSpectrum::from_coeffs(vec![i64::MAX, 0, 0, 0]).unwrap();
        assert_eq!(wht_inverse(&huge), Err(Error::InvalidSpectrum));
        assert!(WalshSpectrum::from_coeffs(vec![1, 2, 3]).is_err());
        for n in 0..=4 {
            for b in 0..(1u64 << (1 << n)) {
                let t = table_from_index(n, b).unwrap();
                assert_eq!(wht_inverse(&wht_fast(&t)).unwrap(), t);
            }
        }
    }

    #[test]
    fn validity_examples() {
        for n in 0..=3 {
            for b in 0..(1u64 << (1 << n)) {
                assert!(is_valid_spectrum(
                    wht_fast(&table_from_index(n, b).unwrap()).coeffs()
                ));
            }
        }
        // v = (0,1): 2*2 + 2*2 + 2*2 + 2*2 = 16.
        assert!(!is_valid_spectrum(&[2, 2, 2, 2]));
        assert!(!is_valid_spectrum(&[4, 0, 0]));
        assert!(!is_valid_spectrum(&[i64::MAX, i64::MAX]));
    }

    #[test]
    fn validity_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [9, 10] {
            let t = random_table(&mut rng, n);
            let mut w = wht_fast(&t).into_coeffs();
            assert!(is_valid_spectrum(&w));
            w.swap(1, 2);
            // Swapping two unequal entries breaks the cross-sum condition.
            if w[1] != w[2] {
                assert!(!is_valid_spectrum(&w));
            }
        }
        // The direct check at n = 8 and the inverse check agree on a perturbed spectrum.
        let t = random_table(&mut rng, 8);
        let mut w = wht_fast(&t).into_coeffs();
        w[0] += 2;
        w[3] -= 2;
        let by_inverse = wht_inverse(&WalshSpectrum::from_coeffs(w.clone()).unwrap()).is_ok();
        assert_eq!(is_valid_spectrum(&w), by_inverse);
    }

    fn nonlinearity_by_distance(t: &TruthTable) -> u64 {
        affine_functions(t.arity())
            .unwrap()
            .iter()
            .map(|a| t.distance(a).unwrap())
            .min()
            .unwrap()
    }

    #[test]
    fn nonlinearity_examples() {
        for n in 1..=4 {
            for a in affine_functions(n).unwrap() {
                assert_eq!(nonlinearity(&a), 0);
            }
        }
        assert_eq!(nonlinearity(&and2()), 1);
        assert_eq!(nonlinearity_by_distance(&and2()), 1);
        assert_eq!(nonlinearity(&symmetric_function(4, 2).unwrap()), 6);
        assert_eq!(6, (1 << 3) - (1 << 1));
    }

    #[test]
    fn nonlinearity_is_distance_to_affine_exhaustive() {
        for n in 1..=3 {
            for b in 0..(1u64 << (1 << n)) {
                let t = table_from_index(n, b).unwrap();
                assert_eq!(nonlinearity(&t), nonlinearity_by_distance(&t));
            }
        }
    }

    #[test]
    fn nonlinearity_bounds() {
        for n in 1..=3usize {
            for b in 0..(1u64 << (1 << n)) {
                let t = table_from_index(n, b).unwrap();
                let nl = nonlinearity(&t) as f64;
                let nw = wht_fast(&t).support_size() as f64;
                let half = (1u64 << (n - 1)) as f64;
                assert!(nl <= half - half / nw.sqrt() + 1e-12);
            }
        }
        for n in 1..=4usize {
            let bound = 2f64.powi(n as i32 - 1) - 2f64.powf(n as f64 / 2.0 - 1.0);
            let best = (0..1u64 << (1 << n))
                .map(|b| nonlinearity(&table_from_index(n, b).unwrap()))
                .max()
                .unwrap();
            assert!(best as f64 <= bound + 1e-12);
            if n % 2 == 0 {
                assert_eq!(best as f64, bound);
            }
        }
    }

    #[test]
    fn spectrum_invariants_exhaustive_n4() {
        for b in 0..(1u64 << 16) {
            let t = table_from_index(4, b).unwrap();
            let w = wht_fast(&t);
            assert!(w.coeffs().iter().all(|c| c % 2 == 0 && c.abs() <= 16));
            assert_eq!(w.coeffs().iter().map(|c| c * c).sum::<i64>(), 256);
            let comp = wht_fast(&!&t);
            assert!(comp.coeffs().iter().zip(w.coeffs()).all(|(a, b)| *a == -*b));
            let row_sum: i64 = w.coeffs().iter().sum();
            assert_eq!(row_sum, if t.get(0) { -16 } else { 16 });
        }
    }

    #[test]
    fn autocorrelation_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=8 {
            let f = random_table(&mut rng, n);
            assert_eq!(autocorrelation(&f, &f).unwrap().get(0), 1 << n);
        }
        let s2 = symmetric_function(3, 2).unwrap();
        let d = autocorrelation(&s2, &s2).unwrap();
        for u in 0..8u32 {
            assert_eq!(d.get(u) != 0, u == 0 || u == 7, "u={u}");
        }
        assert!(autocorrelation(&s2, &and2()).is_err());
    }

    #[test]
    fn autocorrelation_routes_agree_exhaustive() {
        for n in 0..=2 {
            let count = 1u64 << (1 << n);
            for a in 0..count {
                for b in 0..count {
                    let f = table_from_index(n, a).unwrap();
                    let g = table_from_index(n, b).unwrap();
                    let direct = autocorrelation(&f, &g).unwrap();
                    assert_eq!(direct, autocorrelation_via_spectrum(&f, &g).unwrap());
                    assert_eq!(direct, autocorrelation(&g, &f).unwrap());
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let f = table_from_index(3, rng.gen_range(0..256)).unwrap();
            let g = table_from_index(3, rng.gen_range(0..256)).unwrap();
            assert_eq!(
                autocorrelation(&f, &g).unwrap(),
                autocorrelation_via_spectrum(&f, &g).unwrap()
            );
        }
    }

    #[test]
    fn uncertainty_values() {
        for b in 0..16 {
            assert_eq!(
                uncertainty(&table_from_index(2, b).unwrap()),
                Ratio::from_integer(1)
            );
        }
        let mut values: Vec<_> = uncertainty_sweep(3).unwrap();
        values.sort();
        values.dedup();
        assert_eq!(values, vec![Ratio::from_integer(1), Ratio::from_integer(8)]);
    }

    #[test]
    fn uncertainty_relation_exhaustive() {
        for n in 0..=3 {
            for b in 0..(1u64 << (1 << n)) {
                let u = uncertainty_parts(&table_from_index(n, b).unwrap());
                assert!(u.nw * u.ndelta >= 1 << n);
            }
        }
    }

    #[test]
    fn sweep_refuses_n5() {
        assert!(matches!(
            uncertainty_sweep(5),
            Err(Error::ArityTooLarge { .. })
        ));
    }

    #[test]
    fn walsh_matrix_square_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let id = RationalMatrix::identity(8);
        for _ in 0..20 {
            let f = random_table(&mut rng, 3);
            let m = walsh_matrix(&f).unwrap();
            assert_eq!(m.mul(&m), id);
        }
    }

    #[test]
    fn walsh_matrix_is_representation() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let f = random_table(&mut rng, 3);
            let g = random_table(&mut rng, 3);
            let lhs = walsh_matrix(&f).unwrap().mul(&walsh_matrix(&g).unwrap());
            assert_eq!(lhs, walsh_matrix(&(&f ^ &g)).unwrap());
        }
    }

    #[test]
    fn walsh_matrix_determinant_and_trace() {
        for b in 0..16 {
            let f = table_from_index(2, b).unwrap();
            let m = walsh_matrix(&f).unwrap();
            let sign = if f.weight().is_multiple_of(2) { 1 } else { -1 };
            assert_eq!(
                m.determinant(),
                BigRational::from_integer(BigInt::from(sign))
            );
            // Eigenvalues are (-1)^f(w), so the trace is their sum.
            assert_eq!(
                m.trace(),
                BigRational::from_integer(BigInt::from(wht_fast(&f).get(0)))
            );
        }
        for b in [0u64, 1, 23, 232, 255] {
            let f = table_from_index(3, b).unwrap();
            let w0 = wht_fast(&f).get(0);
            assert_eq!(
                walsh_matrix(&f).unwrap().trace(),
                BigRational::from_integer(BigInt::from(w0))
            );
        }
        assert!(walsh_matrix(&TruthTable::zero(5).unwrap()).is_err());
    }
}
