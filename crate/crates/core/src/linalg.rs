//! Exact matrix rank over the integers/rationals and over prime fields.
//!
//! The elimination routines are generic over the scalar. Integral domains
//! (`i64`, `BigInt`) are reduced fraction-free: a target row is replaced by
//! `s·row − t·pivot` with `s ≠ 0`, which never changes the rank over the
//! fraction field. Fields (`Ratio<BigInt>`, [`Fp`]) use ordinary division.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arithmetic overflow inside a fixed-width elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overflow;

/// A scalar that supports row elimination.
pub trait EliminationScalar: Clone + PartialEq + Zero + One + fmt::Debug {
    fn from_i64(v: i64) -> Option<Self>;

    /// Multipliers `(s, t)` with `s ≠ 0` and `s·entry = t·pivot`, so that
    /// `s·row − t·pivot_row` clears the entry.
    fn cancel(pivot: &Self, entry: &Self) -> Option<(Self, Self)>;

    /// `s·a − t·b`, or `None` on overflow.
    fn mul_sub(a: &Self, s: &Self, b: &Self, t: &Self) -> Option<Self>;

    /// Rescales a freshly reduced row (content removal, monic lead, ...).
    fn normalize(_row: &mut [(usize, Self)]) {}
}

fn gcd_cancel<T: Integer + Signed + Clone>(pivot: &T, entry: &T) -> (T, T) {
    let g = pivot.gcd(entry);
    (pivot.clone() / g.clone(), entry.clone() / g)
}

fn content_normalize<T: Integer + Signed + Clone>(row: &mut [(usize, T)]) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.abs();
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    let flip = first.1.is_negative();
    if !g.is_one() || flip {
        let g = if flip { -g } else { g };
        for (_, v) in row.iter_mut() {
            *v = v.clone() / g.clone();
        }
    }
}

impl EliminationScalar for i64 {
    fn from_i64(v: i64) -> Option<Self> {
        Some(v)
    }

    fn cancel(pivot: &Self, entry: &Self) -> Option<(Self, Self)> {
        if *pivot == i64::MIN || *entry == i64::MIN {
            return None;
        }
        Some(gcd_cancel(pivot, entry))
    }

    fn mul_sub(a: &Self, s: &Self, b: &Self, t: &Self) -> Option<Self> {
        i64::checked_sub(i64::checked_mul(*a, *s)?, i64::checked_mul(*b, *t)?)
    }

    fn normalize(row: &mut [(usize, Self)]) {
        if row.iter().any(|(_, v)| *v == i64::MIN) {
            return;
        }
        content_normalize(row)
    }
}

impl EliminationScalar for BigInt {
    fn from_i64(v: i64) -> Option<Self> {
        Some(BigInt::from(v))
    }

    fn cancel(pivot: &Self, entry: &Self) -> Option<(Self, Self)> {
        Some(gcd_cancel(pivot, entry))
    }

    fn mul_sub(a: &Self, s: &Self, b: &Self, t: &Self) -> Option<Self> {
        Some(a * s - b * t)
    }

    fn normalize(row: &mut [(usize, Self)]) {
        content_normalize(row)
    }
}

impl EliminationScalar for Ratio<BigInt> {
    fn from_i64(v: i64) -> Option<Self> {
        Some(Ratio::from_integer(BigInt::from(v)))
    }

    fn cancel(pivot: &Self, entry: &Self) -> Option<(Self, Self)> {
        Some((Self::one(), entry / pivot))
    }

    fn mul_sub(a: &Self, s: &Self, b: &Self, t: &Self) -> Option<Self> {
        Some(a * s - b * t)
    }

    fn normalize(row: &mut [(usize, Self)]) {
        if let Some(lead) = row.first().map(|(_, v)| v.clone()) {
            for (_, v) in row.iter_mut() {
                *v = &*v / &lead;
            }
        }
    }
}

/// Element of the prime field `F_P`. `P` must be prime and below `2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_{P}");
        self.pow(P - 2)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {P})", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse()
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> EliminationScalar for Fp<P> {
    fn from_i64(v: i64) -> Option<Self> {
        Some(Fp::new(v))
    }

    fn cancel(pivot: &Self, entry: &Self) -> Option<(Self, Self)> {
        Some((Self::one(), *entry / *pivot))
    }

    fn mul_sub(a: &Self, s: &Self, b: &Self, t: &Self) -> Option<Self> {
        Some(*a * *s - *b * *t)
    }

    fn normalize(row: &mut [(usize, Self)]) {
        if let Some(&(_, lead)) = row.first() {
            if !lead.is_one() {
                let inv = lead.inverse();
                for (_, v) in row.iter_mut() {
                    *v = *v * inv;
                }
            }
        }
    }
}

/// Sparse row: `(column, value)` pairs, strictly increasing columns, no
/// stored zeros.
pub type SparseRow<T> = Vec<(usize, T)>;

/// Integer matrix stored by rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub n_cols: usize,
    pub rows: Vec<SparseRow<i64>>,
}

impl SparseMatrix {
    pub fn new(n_cols: usize) -> Self {
        SparseMatrix { n_cols, rows: Vec::new() }
    }

    /// Appends a row given as unsorted `(column, value)` pairs.
    pub fn push_row(&mut self, mut entries: SparseRow<i64>) {
        entries.retain(|(_, v)| *v != 0);
        entries.sort_unstable_by_key(|&(c, _)| c);
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(c, _)| c < self.n_cols));
        self.rows.push(entries);
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn to_dense<T: EliminationScalar>(&self) -> Vec<Vec<T>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![T::zero(); self.n_cols];
                for (c, v) in row {
                    dense[*c] = T::from_i64(*v).expect("entry representable");
                }
                dense
            })
            .collect()
    }

    /// Rank over the scalar `T` by sparse row reduction.
    pub fn rank_with<T: EliminationScalar>(&self) -> Result<usize, Overflow> {
        sparse_rank(
            self.n_cols,
            self.rows.iter().map(|row| {
                row.iter()
                    .map(|&(c, v)| T::from_i64(v).map(|x| (c, x)))
                    .filter(|e| !matches!(e, Some((_, x)) if x.is_zero()))
                    .collect::<Option<SparseRow<T>>>()
                    .ok_or(Overflow)
            }),
        )
    }

    /// Exact rank over a field of the given characteristic.
    pub fn rank(&self, characteristic: Characteristic) -> Result<usize> {
        match characteristic {
            Characteristic::Zero => Ok(self
                .rank_with::<i64>()
                .or_else(|Overflow| self.rank_with::<BigInt>())
                .expect("arbitrary precision cannot overflow")),
            Characteristic::Prime(p) => rank_mod_prime(self, p),
        }
    }
}

fn reduce_row<T: EliminationScalar>(row: &[(usize, T)], pivot: &[(usize, T)]) -> Result<SparseRow<T>, Overflow> {
    let (s, t) = T::cancel(&pivot[0].1, &row[0].1).ok_or(Overflow)?;
    let zero = T::zero();
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let (col, a, b) = match (row.get(i), pivot.get(j)) {
            (Some(&(ca, ref a)), Some(&(cb, _))) if ca < cb => {
                i += 1;
                (ca, a, &zero)
            }
            (Some(&(ca, _)), Some(&(cb, ref b))) if cb < ca => {
                j += 1;
                (cb, &zero, b)
            }
            (Some(&(ca, ref a)), Some((_, b))) => {
                i += 1;
                j += 1;
                (ca, a, b)
            }
            (Some(&(ca, ref a)), None) => {
                i += 1;
                (ca, a, &zero)
            }
            (None, Some(&(cb, ref b))) => {
                j += 1;
                (cb, &zero, b)
            }
            (None, None) => unreachable!(),
        };
        let v = T::mul_sub(a, &s, b, &t).ok_or(Overflow)?;
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    T::normalize(&mut out);
    Ok(out)
}

/// Rank by reducing each row against the pivots found so far, keyed by
/// leading column.
pub fn sparse_rank<T, I>(n_cols: usize, rows: I) -> Result<usize, Overflow>
where
    T: EliminationScalar,
    I: IntoIterator<Item = Result<SparseRow<T>, Overflow>>,
{
    let mut pivots: Vec<Option<SparseRow<T>>> = vec![None; n_cols];
    let mut rank = 0;
    for row in rows {
        let mut row = row?;
        T::normalize(&mut row);
        while let Some(&(lead, _)) = row.first() {
            match &pivots[lead] {
                Some(pivot) => row = reduce_row(&row, pivot)?,
                None => {
                    pivots[lead] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Ok(rank)
}

/// Rank of a dense matrix by fraction-free (Bareiss) elimination. Every
/// division is exact, so the scalar only needs exact integer division.
pub fn bareiss_rank<T>(mut m: Vec<Vec<T>>) -> usize
where
    T: Clone + Zero + One + PartialEq,
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T> + Div<&'a T, Output = T>,
{
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = &num / &prev;
            }
            m[i][c] = T::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Checked variant for fixed-width integers.
pub fn bareiss_rank_checked<T>(mut m: Vec<Vec<T>>) -> Result<usize, Overflow>
where
    T: Clone + Zero + One + PartialEq + CheckedMul + CheckedSub + Div<Output = T>,
{
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let lhs = m[r][c].checked_mul(&m[i][j]).ok_or(Overflow)?;
                let rhs = m[i][c].checked_mul(&m[r][j]).ok_or(Overflow)?;
                m[i][j] = lhs.checked_sub(&rhs).ok_or(Overflow)? / prev.clone();
            }
            m[i][c] = T::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    Ok(r)
}

/// Field characteristic used by the homology oracle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Characteristic {
    #[default]
    Zero,
    Prime(u64),
}

impl Characteristic {
    pub fn from_u64(c: u64) -> Result<Self> {
        match c {
            0 => Ok(Characteristic::Zero),
            p if SUPPORTED_PRIMES.contains(&p) => Ok(Characteristic::Prime(p)),
            other => Err(Error::Characteristic(other)),
        }
    }

    pub fn as_u64(self) -> u64 {
        match self {
            Characteristic::Zero => 0,
            Characteristic::Prime(p) => p,
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u64())
    }
}

macro_rules! prime_dispatch {
    ($matrix:expr, $p:expr, [$($q:literal),* $(,)?]) => {
        match $p {
            $($q => Ok($matrix.rank_with::<Fp<$q>>().expect("prime fields cannot overflow")),)*
            other => Err(Error::Characteristic(other)),
        }
    };
}

macro_rules! supported_primes {
    ($($q:literal),* $(,)?) => {
        /// Prime characteristics with a compiled field implementation.
        pub const SUPPORTED_PRIMES: &[u64] = &[$($q),*];

        fn rank_mod_prime(matrix: &SparseMatrix, p: u64) -> Result<usize> {
            prime_dispatch!(matrix, p, [$($q),*])
        }
    };
}

supported_primes!(
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127, 32003, 65521, 2147483647,
);
