//! Boolean vectors and truth tables.
//!
//! A vector `x = (x_1, ..., x_n)` is numbered by `b_n(x) = sum x_i 2^(n-i)`, so
//! `x_1` is the most significant bit. A function `f` is numbered by
//! `B_n(f) = sum f(x) 2^(b_n(x))`: bit `b_n(x)` of the index holds `f(x)` and
//! the least significant bit is `f(0)`.

use std::fmt;
use std::ops::{BitXor, Not};

use crate::{Error, Result, MAX_INDEX_ARITY};

/// Largest arity of a [`BoolVec`].
pub const MAX_VECTOR_ARITY: usize = 32;

/// Largest arity of a [`TruthTable`] (2^24 bits = 2 MiB).
pub const MAX_TABLE_ARITY: usize = 24;

const WORD_BITS: usize = 64;
const LOG_WORD_BITS: usize = 6;

/// Bits with the `s`-th index bit clear, for `s < 6`.
const LOW_HALF_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// An element of `V_n`, stored by its number `b_n(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolVec {
    n: u8,
    bits: u32,
}

impl BoolVec {
    pub fn new(n: usize, index: u32) -> Result<Self> {
        check_vector_arity(n)?;
        if n < 32 && index >> n != 0 {
            return Err(Error::IndexOutOfRange {
                n,
                index: u64::from(index),
            });
        }
        Ok(BoolVec {
            n: n as u8,
            bits: index,
        })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    /// Builds `(x_1, ..., x_n)` from its components, `x_1` first.
    pub fn from_components(components: &[bool]) -> Result<Self> {
        check_vector_arity(components.len())?;
        let bits = components
            .iter()
            .fold(0u32, |acc, &c| (acc << 1) | u32::from(c));
        Ok(BoolVec {
            n: components.len() as u8,
            bits,
        })
    }

    pub fn arity(&self) -> usize {
        usize::from(self.n)
    }

    /// `b_n(x)`.
    pub fn index(&self) -> u32 {
        self.bits
    }

    /// Component `x_i`, 1-based.
    pub fn component(&self, i: usize) -> bool {
        assert!(
            i >= 1 && i <= self.arity(),
            "component {i} out of 1..={}",
            self.n
        );
        (self.bits >> (self.arity() - i)) & 1 == 1
    }

    pub fn components(&self) -> Vec<bool> {
        (1..=self.arity()).map(|i| self.component(i)).collect()
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn xor(&self, other: &BoolVec) -> Result<BoolVec> {
        check_same_arity(self.arity(), other.arity())?;
        Ok(BoolVec {
            n: self.n,
            bits: self.bits ^ other.bits,
        })
    }

    /// Scalar product `<x, y>` over Z_2.
    pub fn dot(&self, other: &BoolVec) -> Result<bool> {
        check_same_arity(self.arity(), other.arity())?;
        Ok((self.bits & other.bits).count_ones() & 1 == 1)
    }
}

impl fmt::Display for BoolVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 1..=self.arity() {
            if i > 1 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(self.component(i)))?;
        }
        write!(f, ")")
    }
}

pub fn index_of_vector(v: &BoolVec) -> u32 {
    v.index()
}

pub fn vector_of_index(n: usize, index: u32) -> Result<BoolVec> {
    BoolVec::new(n, index)
}

pub fn weight(v: &BoolVec) -> u32 {
    v.weight()
}

/// Hamming distance between two vectors of equal arity.
pub fn distance(v: &BoolVec, w: &BoolVec) -> Result<u32> {
    Ok(v.xor(w)?.weight())
}

/// A boolean function `f: V_n -> Z_2`, bit-packed by `b_n(x)`.
///
/// Bits past `2^n` in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u8,
    words: Vec<u64>,
}

impl TruthTable {
    /// The constant-0 function.
    pub fn zero(n: usize) -> Result<Self> {
        check_table_arity(n)?;
        Ok(TruthTable {
            n: n as u8,
            words: vec![0; word_count(n)],
        })
    }

    /// The constant-1 function.
    pub fn one(n: usize) -> Result<Self> {
        Ok(!&Self::zero(n)?)
    }

    /// Tabulates `f` at every `b_n(x)` in `0..2^n`.
    pub fn from_fn(n: usize, f: impl Fn(u32) -> bool) -> Result<Self> {
        let mut t = Self::zero(n)?;
        for x in 0..(1u32 << n) {
            if f(x) {
                t.set(x, true);
            }
        }
        Ok(t)
    }

    /// Builds a table from its values listed at `b_n(x) = 0, 1, ...`.
    pub fn from_values(values: &[bool]) -> Result<Self> {
        let len = values.len();
        if !len.is_power_of_two() {
            return Err(Error::LengthMismatch {
                expected: len.next_power_of_two(),
                got: len,
            });
        }
        let n = len.trailing_zeros() as usize;
        Self::from_fn(n, |x| values[x as usize])
    }

    /// The function with number `B_n(f) = index`.
    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        if n > MAX_INDEX_ARITY {
            return Err(Error::ArityTooLarge {
                n,
                max: MAX_INDEX_ARITY,
                what: "function indices",
            });
        }
        if n < MAX_INDEX_ARITY && index >> (1u32 << n) != 0 {
            return Err(Error::IndexOutOfRange { n, index });
        }
        Ok(TruthTable {
            n: n as u8,
            words: vec![index],
        })
    }

    /// `B_n(f)`, available for `n <= 6`.
    pub fn index(&self) -> Result<u64> {
        if self.arity() > MAX_INDEX_ARITY {
            return Err(Error::ArityTooLarge {
                n: self.arity(),
                max: MAX_INDEX_ARITY,
                what: "function indices",
            });
        }
        Ok(self.words[0])
    }

    pub fn arity(&self) -> usize {
        usize::from(self.n)
    }

    /// Number of points, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `f(x)` for `x = b_n^{-1}(index)`.
    #[inline]
    pub fn get(&self, x: u32) -> bool {
        let x = x as usize;
        debug_assert!(x < self.len());
        (self.words[x >> LOG_WORD_BITS] >> (x & (WORD_BITS - 1))) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: u32, value: bool) {
        let x = x as usize;
        assert!(x < self.len(), "point {x} out of range for n = {}", self.n);
        let bit = 1u64 << (x & (WORD_BITS - 1));
        if value {
            self.words[x >> LOG_WORD_BITS] |= bit;
        } else {
            self.words[x >> LOG_WORD_BITS] &= !bit;
        }
    }

    /// Values `f(x)` in `b_n` order.
    pub fn values(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len() as u32).map(move |x| self.get(x))
    }

    /// `(-1)^f(x)` in `b_n` order.
    pub fn signs(&self) -> Vec<i64> {
        self.values().map(|v| if v { -1 } else { 1 }).collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// `wt(f)`, the number of points where `f = 1`.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == (self.len() as u64) / 2
    }

    pub fn xor(&self, other: &TruthTable) -> Result<TruthTable> {
        check_same_arity(self.arity(), other.arity())?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(TruthTable { n: self.n, words })
    }

    /// Hamming distance `d(f, g) = wt(f + g)`.
    pub fn distance(&self, other: &TruthTable) -> Result<u64> {
        check_same_arity(self.arity(), other.arity())?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| u64::from((a ^ b).count_ones()))
            .sum())
    }

    fn tail_mask(&self) -> u64 {
        if self.len() >= WORD_BITS {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, ", self.n)?;
        for v in self.values().take(64) {
            write!(f, "{}", u8::from(v))?;
        }
        if self.len() > 64 {
            write!(f, "...")?;
        }
        write!(f, ")")
    }
}

impl Not for &TruthTable {
    type Output = TruthTable;

    /// The complement `1 + f`.
    fn not(self) -> TruthTable {
        let mask = self.tail_mask();
        let words = self.words.iter().map(|w| !w & mask).collect();
        TruthTable { n: self.n, words }
    }
}

impl BitXor for &TruthTable {
    type Output = TruthTable;

    /// Pointwise sum; panics on an arity mismatch, use [`TruthTable::xor`] to
    /// get an error instead.
    fn bitxor(self, rhs: &TruthTable) -> TruthTable {
        self.xor(rhs)
            .expect("xor of truth tables with different arities")
    }
}

/// Coefficients `g_f(y)` of the algebraic normal form
/// `f(x) = XOR_y g_f(y) x^y`, bit-packed by `b_n(y)` like a truth table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnfForm {
    coeffs: TruthTable,
}

impl AnfForm {
    pub fn arity(&self) -> usize {
        self.coeffs.arity()
    }

    pub fn coefficient(&self, y: u32) -> bool {
        self.coeffs.get(y)
    }

    /// The `b_n(y)` of every monomial `x^y` present, ascending.
    pub fn monomials(&self) -> Vec<u32> {
        (0..self.coeffs.len() as u32)
            .filter(|&y| self.coeffs.get(y))
            .collect()
    }

    pub fn degree(&self) -> u32 {
        self.monomials()
            .into_iter()
            .map(u32::count_ones)
            .max()
            .unwrap_or(0)
    }

    /// The coefficient vector viewed as a function `g_f`.
    pub fn as_table(&self) -> &TruthTable {
        &self.coeffs
    }

    /// Back to the truth table; the transform is its own inverse.
    pub fn to_truth_table(&self) -> TruthTable {
        mobius_in_place(self.coeffs.clone())
    }
}

/// `f` for `B_n(f) = index`.
pub fn table_from_index(n: usize, index: u64) -> Result<TruthTable> {
    TruthTable::from_index(n, index)
}

pub fn index_of_table(t: &TruthTable) -> Result<u64> {
    t.index()
}

/// Möbius transform: `g_f(y) = XOR_{x <= y} f(x)`.
pub fn mobius(t: &TruthTable) -> AnfForm {
    AnfForm {
        coeffs: mobius_in_place(t.clone()),
    }
}

fn mobius_in_place(mut t: TruthTable) -> TruthTable {
    let n = t.arity();
    for (s, mask) in LOW_HALF_MASKS.iter().enumerate().take(n.min(LOG_WORD_BITS)) {
        let shift = 1 << s;
        for w in &mut t.words {
            *w ^= (*w & mask) << shift;
        }
    }
    for s in LOG_WORD_BITS..n {
        let stride = 1usize << (s - LOG_WORD_BITS);
        for j in 0..t.words.len() {
            if j & stride != 0 {
                t.words[j] ^= t.words[j ^ stride];
            }
        }
    }
    t
}

/// Algebraic degree; the zero function has degree 0.
pub fn degree(t: &TruthTable) -> u32 {
    mobius(t).degree()
}

/// The `k`-th elementary symmetric function `s_k`.
pub fn symmetric_function(n: usize, k: usize) -> Result<TruthTable> {
    if k > n {
        return Err(Error::ValueOutOfRange {
            what: "symmetric function order",
            value: k as i64,
        });
    }
    // s_k(x) = C(wt(x), k) mod 2, odd exactly when k's bits are a subset of wt's (Lucas).
    TruthTable::from_fn(n, |x| {
        let w = x.count_ones() as usize;
        w & k == k
    })
}

/// `a(x) = c0 + <c, x>` with `c` given by `b_n(c)`.
pub fn affine(n: usize, c0: bool, c: u32) -> Result<TruthTable> {
    let c = BoolVec::new(n, c)?;
    TruthTable::from_fn(n, |x| c0 ^ ((x & c.index()).count_ones() & 1 == 1))
}

/// `l(x) = <c, x>`.
pub fn linear(n: usize, c: u32) -> Result<TruthTable> {
    affine(n, false, c)
}

/// All `2^(n+1)` affine functions, ordered by `(c0, b_n(c))`.
pub fn affine_functions(n: usize) -> Result<Vec<TruthTable>> {
    let mut out = Vec::with_capacity(2 << n);
    for c0 in [false, true] {
        for c in 0..(1u32 << n) {
            out.push(affine(n, c0, c)?);
        }
    }
    Ok(out)
}

pub fn is_balanced(t: &TruthTable) -> bool {
    t.is_balanced()
}

pub fn is_affine(t: &TruthTable) -> bool {
    degree(t) <= 1
}

fn word_count(n: usize) -> usize {
    (1usize << n).div_ceil(WORD_BITS)
}

fn check_vector_arity(n: usize) -> Result<()> {
    if n > MAX_VECTOR_ARITY {
        return Err(Error::ArityTooLarge {
            n,
            max: MAX_VECTOR_ARITY,
            what: "boolean vectors",
        });
    }
    Ok(())
}

pub(crate) fn check_table_arity(n: usize) -> Result<()> {
    if n > MAX_TABLE_ARITY {
        return Err(Error::ArityTooLarge {
            n,
            max: MAX_TABLE_ARITY,
            what: "truth tables",
        });
    }
    Ok(())
}

pub(crate) fn check_same_arity(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::ArityMismatch { left, right });
    }
    Ok(())
}
