//! Exact scalars: a 128-bit fixed-point accumulator for step-function
//! values, exact averages, atom-count measures and big rationals for
//! reported bounds.

use core::cmp::Ordering;
use core::fmt;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bits::AtomSet;
use crate::{Error, Result};

pub type Rational = BigRational;

/// `n / d` as a big rational. Panics if `d == 0`.
pub fn rational(n: i128, d: i128) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Number of fractional bits in [`Fixed`].
pub const FRAC_BITS: i32 = 64;

/// A real number stored exactly as an integer multiple of `2^-64`.
///
/// Every `f64` that is a multiple of `2^-64` with magnitude below about
/// `2^62` converts without loss; in particular all values drawn uniformly
/// from `[0, 1)` by the usual 53-bit generators, and all integers.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fixed(i128);

impl Fixed {
    pub const ZERO: Fixed = Fixed(0);

    pub const fn from_raw(raw: i128) -> Self {
        Fixed(raw)
    }

    pub const fn raw(self) -> i128 {
        self.0
    }

    pub fn from_int(n: i64) -> Self {
        Fixed((n as i128) << FRAC_BITS)
    }

    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::Inexact(x));
        }
        if x == 0.0 {
            return Ok(Fixed(0));
        }
        let bits = x.to_bits();
        let exp_bits = ((bits >> 52) & 0x7ff) as i32;
        let frac = bits & ((1u64 << 52) - 1);
        let (mantissa, exp) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        let shift = exp + FRAC_BITS;
        let magnitude: i128 = if shift >= 0 {
            let width = 64 - mantissa.leading_zeros() as i32;
            if width + shift > 126 {
                return Err(Error::Inexact(x));
            }
            (mantissa as i128) << shift
        } else {
            let down = -shift;
            if down >= 64 || mantissa.trailing_zeros() < down as u32 {
                return Err(Error::Inexact(x));
            }
            (mantissa >> down) as i128
        };
        Ok(Fixed(if x < 0.0 { -magnitude } else { magnitude }))
    }

    pub fn to_f64(self) -> f64 {
        // Two-step conversion keeps ~106 bits before the final rounding.
        let hi = (self.0 >> FRAC_BITS) as f64;
        let lo = (self.0 & ((1i128 << FRAC_BITS) - 1)) as f64 * libm::ldexp(1.0, -FRAC_BITS);
        hi + lo
    }

    pub fn abs(self) -> Self {
        Fixed(self.0.abs())
    }

    pub fn checked_add(self, rhs: Fixed) -> Option<Fixed> {
        self.0.checked_add(rhs.0).map(Fixed)
    }

    pub fn checked_mul_int(self, n: u64) -> Option<Fixed> {
        self.0.checked_mul(n as i128).map(Fixed)
    }

    pub fn to_rational(self) -> Rational {
        BigRational::new(BigInt::from(self.0), BigInt::one() << FRAC_BITS as usize)
    }
}

impl fmt::Debug for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fixed({})", self.to_f64())
    }
}

fn mul_wide(a: u128, x: u64) -> (u64, u128) {
    let a_lo = a as u64 as u128;
    let a_hi = a >> 64;
    let p0 = a_lo * x as u128;
    let p1 = a_hi * x as u128;
    let (lo, carry) = p0.overflowing_add(p1 << 64);
    ((p1 >> 64) as u64 + carry as u64, lo)
}

/// Orders `a * x` against `b * y` without overflow.
pub fn cmp_products(a: i128, x: u64, b: i128, y: u64) -> Ordering {
    let sa = if x == 0 { 0 } else { a.signum() };
    let sb = if y == 0 { 0 } else { b.signum() };
    if sa != sb {
        return sa.cmp(&sb);
    }
    if sa == 0 {
        return Ordering::Equal;
    }
    let ord = mul_wide(a.unsigned_abs(), x).cmp(&mul_wide(b.unsigned_abs(), y));
    if sa < 0 {
        ord.reverse()
    } else {
        ord
    }
}

/// A summable value with exact ratio comparisons.
pub trait Weight: Copy + Default + PartialEq + fmt::Debug {
    fn checked_add(self, rhs: Self) -> Option<Self>;
    /// Orders `self / n` against `rhs / m`; both counts are positive.
    fn cmp_ratio(self, n: u64, rhs: Self, m: u64) -> Ordering;
    fn to_f64(self) -> f64;
    fn to_rational(self) -> Rational;
    fn abs(self) -> Self;
    /// Embeds a small non-negative integer (below `2^62`).
    fn from_u64(n: u64) -> Self;
}

impl Weight for u64 {
    fn checked_add(self, rhs: Self) -> Option<Self> {
        u64::checked_add(self, rhs)
    }

    fn cmp_ratio(self, n: u64, rhs: Self, m: u64) -> Ordering {
        (self as u128 * m as u128).cmp(&(rhs as u128 * n as u128))
    }

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn to_rational(self) -> Rational {
        BigRational::from_integer(BigInt::from(self))
    }

    fn abs(self) -> Self {
        self
    }

    fn from_u64(n: u64) -> Self {
        n
    }
}

impl Weight for Fixed {
    fn checked_add(self, rhs: Self) -> Option<Self> {
        Fixed::checked_add(self, rhs)
    }

    fn cmp_ratio(self, n: u64, rhs: Self, m: u64) -> Ordering {
        cmp_products(self.0, m, rhs.0, n)
    }

    fn to_f64(self) -> f64 {
        Fixed::to_f64(self)
    }

    fn to_rational(self) -> Rational {
        Fixed::to_rational(self)
    }

    fn abs(self) -> Self {
        Fixed::abs(self)
    }

    fn from_u64(n: u64) -> Self {
        assert!(n < 1 << 62, "integer {n} too large for the fixed-point range");
        Fixed::from_int(n as i64)
    }
}

/// The exact average `sum / count` of some weights over `count` atoms.
#[derive(Clone, Copy, Debug)]
pub struct Average<W> {
    pub sum: W,
    pub count: u64,
}

impl<W: Weight> Average<W> {
    pub fn new(sum: W, count: u64) -> Self {
        assert!(count > 0, "average over zero atoms");
        Average { sum, count }
    }

    pub fn zero() -> Self {
        Average {
            sum: W::default(),
            count: 1,
        }
    }

    /// The rational threshold `num / den`.
    pub fn ratio(num: u64, den: u64) -> Self {
        Average::new(W::from_u64(num), den)
    }

    pub fn of(value: W) -> Self {
        Average::new(value, 1)
    }

    pub fn to_f64(&self) -> f64 {
        self.sum.to_f64() / self.count as f64
    }

    pub fn to_rational(&self) -> Rational {
        self.sum.to_rational() / BigRational::from_integer(BigInt::from(self.count))
    }
}

impl<W: Weight> PartialEq for Average<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: Weight> Eq for Average<W> {}

impl<W: Weight> PartialOrd for Average<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Weight> Ord for Average<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sum.cmp_ratio(self.count, other.sum, other.count)
    }
}

/// An exact measure `count / total` (atoms in a set over atoms in the space).
#[derive(Clone, Copy, Debug)]
pub struct Measure {
    pub count: u64,
    pub total: u64,
}

impl Measure {
    pub fn new(count: u64, total: u64) -> Self {
        assert!(total > 0 && count <= total, "measure {count}/{total}");
        Measure { count, total }
    }

    pub fn zero() -> Self {
        Measure { count: 0, total: 1 }
    }

    pub fn as_f64(&self) -> f64 {
        self.count as f64 / self.total as f64
    }

    pub fn to_rational(&self) -> Rational {
        rational(self.count as i128, self.total as i128)
    }

    pub fn is_zero(&self) -> bool {
        self.count == 0
    }
}

impl PartialEq for Measure {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Measure {}

impl PartialOrd for Measure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Measure {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.count as u128 * other.total as u128).cmp(&(other.count as u128 * self.total as u128))
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.count, self.total)
    }
}

/// Exact per-atom averages: the output of every averaging or maximal
/// operator in this crate.
#[derive(Clone, Debug)]
pub struct AtomAverages<W> {
    values: Vec<Average<W>>,
}

impl<W: Weight> PartialEq for AtomAverages<W> {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl<W: Weight> Eq for AtomAverages<W> {}

impl<W: Weight> AtomAverages<W> {
    pub fn new(values: Vec<Average<W>>) -> Self {
        AtomAverages { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Average<W>] {
        &self.values
    }

    pub fn get(&self, atom: usize) -> Average<W> {
        self.values[atom]
    }

    /// Atoms whose value is strictly greater than `threshold`.
    pub fn level_set(&self, threshold: &Average<W>) -> AtomSet {
        AtomSet::from_fn(self.values.len(), |i| self.values[i] > *threshold)
    }

    /// Exact measure of `{value > threshold}`.
    pub fn distribution(&self, threshold: &Average<W>) -> Measure {
        let count = self.values.iter().filter(|v| *v > threshold).count();
        Measure::new(count as u64, self.values.len() as u64)
    }

    /// Exact measure of `{value >= threshold}`.
    pub fn distribution_ge(&self, threshold: &Average<W>) -> Measure {
        let count = self.values.iter().filter(|v| *v >= threshold).count();
        Measure::new(count as u64, self.values.len() as u64)
    }

    pub fn sorted(&self) -> Vec<Average<W>> {
        let mut v = self.values.clone();
        v.sort();
        v
    }

    /// True when both functions take the same values with the same
    /// multiplicities, compared exactly.
    pub fn same_distribution(&self, other: &AtomAverages<W>) -> bool {
        self.len() == other.len() && self.sorted() == other.sorted()
    }

    pub fn max(&self) -> Option<Average<W>> {
        self.values.iter().copied().max()
    }

    pub fn min(&self) -> Option<Average<W>> {
        self.values.iter().copied().min()
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.values.iter().map(Average::to_f64).collect()
    }

    /// Exact mean over atoms.
    pub fn mean(&self) -> Rational {
        let mut acc = Rational::zero();
        for v in &self.values {
            acc += v.to_rational();
        }
        acc / BigRational::from_integer(BigInt::from(self.values.len()))
    }
}

/// True when `x` is an integer-valued rational.
pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one() || x.numer().is_zero()
}

/// Nearest-ish `f64` to a big rational (within a few ulps).
pub fn rational_to_f64(x: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fixed_conversions() {
        assert_eq!(Fixed::from_f64(1.0).unwrap(), Fixed::from_int(1));
        assert_eq!(Fixed::from_f64(-3.0).unwrap(), Fixed::from_int(-3));
        assert_eq!(Fixed::from_f64(0.5).unwrap().raw(), 1i128 << 63);
        assert!(Fixed::from_f64(1e-30).is_err());
        assert!(Fixed::from_f64(1e40).is_err());
        assert!(Fixed::from_f64(f64::NAN).is_err());
        // 1/3 rounds to a 53-bit dyadic with exponent -54: representable.
        let third = Fixed::from_f64(1.0 / 3.0).unwrap();
        assert_eq!(third.to_f64(), 1.0 / 3.0);
    }

    #[test]
    fn ratio_ordering_is_exact() {
        let a = Average::new(Fixed::from_int(1), 3);
        let b = Average::new(Fixed::from_int(2), 6);
        assert_eq!(a, b);
        let c = Average::new(Fixed::from_raw(i128::MAX / 2), u64::MAX);
        let d = Average::new(Fixed::from_raw(i128::MAX / 2 - 1), u64::MAX);
        assert!(c > d);
        assert!(Average::new(Fixed::from_int(-1), 2) < Average::<Fixed>::zero());
        assert!(Measure::new(1, 3) < Measure::new(2, 5));
        assert_eq!(Measure::new(2, 4), Measure::new(1, 2));
    }

    proptest! {
        #[test]
        fn cmp_products_matches_big_integers(a in any::<i128>(), x in any::<u64>(), b in any::<i128>(), y in any::<u64>()) {
            let lhs = BigInt::from(a) * BigInt::from(x);
            let rhs = BigInt::from(b) * BigInt::from(y);
            prop_assert_eq!(cmp_products(a, x, b, y), lhs.cmp(&rhs));
        }

        #[test]
        fn unit_interval_draws_are_exact(k in 0u64..(1 << 53)) {
            let x = k as f64 * libm::ldexp(1.0, -53);
            let f = Fixed::from_f64(x).unwrap();
            prop_assert_eq!(f.to_f64(), x);
            prop_assert_eq!(f.to_rational(), rational(k as i128, 1i128 << 53));
        }
    }
}
