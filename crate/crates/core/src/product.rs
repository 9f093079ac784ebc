//! The truncated product space `prod_k Z/p_k^{l_k}` for `l = prod_k p_k^{l_k}`,
//! its rectangles, the family of rectangles with one tail axis and a block
//! of base axes, and the rectangle maximal operator.
//!
//! Atoms are indexed in mixed radix with axis 0 varying fastest. Axis `k`
//! carries the `k`-th distinct prime of `l`; its coordinate `s` in
//! `[0, p^{l_k})` stands for the interval `[s / p^{l_k}, (s+1) / p^{l_k})` of
//! the `k`-th circle. A rectangle with exponent `m_k` on axis `k` fixes the
//! top `m_k` base-`p` digits of that coordinate.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::arith::{factorize, first_primes, Factorization, IndexSet};
use crate::bits::AtomSet;
use crate::exact::{AtomAverages, Average, Measure, Weight};
use crate::torus::checked_sum;
use crate::{Error, Result};

/// Subsets of a product space are atom bitsets of length `l`.
pub type ProductSet = AtomSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpace {
    l: u64,
    primes: Vec<u64>,
    exponents: Vec<u32>,
    radices: Vec<u64>,
    strides: Vec<u64>,
}

fn pow(p: u64, e: u32) -> u64 {
    p.pow(e)
}

impl ProductSpace {
    /// The space for `l`, refusing grids with more than `budget` atoms.
    pub fn new(l: u64, budget: u64) -> Result<Self> {
        if l == 0 {
            return Err(Error::Precondition("l must be positive"));
        }
        ProductSpace::from_factorization(&factorize(l), budget)
    }

    pub fn from_factorization(f: &Factorization, budget: u64) -> Result<Self> {
        let l = f.value();
        if l > budget {
            return Err(Error::Budget { needed: l, budget });
        }
        if l > u32::MAX as u64 {
            return Err(Error::Budget {
                needed: l,
                budget: u32::MAX as u64,
            });
        }
        let primes: Vec<u64> = f.factors().iter().map(|&(p, _)| p).collect();
        let exponents: Vec<u32> = f.factors().iter().map(|&(_, e)| e).collect();
        let radices: Vec<u64> = f.factors().iter().map(|&(p, e)| pow(p, e)).collect();
        let mut strides = Vec::with_capacity(radices.len());
        let mut s = 1u64;
        for &r in &radices {
            strides.push(s);
            s *= r;
        }
        Ok(ProductSpace {
            l,
            primes,
            exponents,
            radices,
            strides,
        })
    }

    /// The squarefree space over the first `d` primes.
    pub fn primorial(d: usize, budget: u64) -> Result<Self> {
        ProductSpace::new(crate::arith::primorial(d)?, budget)
    }

    pub fn size(&self) -> u64 {
        self.l
    }

    pub fn len(&self) -> usize {
        self.l as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.primes.len()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn radices(&self) -> &[u64] {
        &self.radices
    }

    pub fn factorization(&self) -> Factorization {
        Factorization::from_pairs(
            self.primes
                .iter()
                .copied()
                .zip(self.exponents.iter().copied())
                .collect(),
        )
        .expect("space factorization is valid")
    }

    #[inline]
    pub fn coordinate(&self, atom: usize, axis: usize) -> u64 {
        (atom as u64 / self.strides[axis]) % self.radices[axis]
    }

    pub fn coords(&self, atom: usize) -> Vec<u64> {
        (0..self.dim()).map(|k| self.coordinate(atom, k)).collect()
    }

    pub fn index(&self, coords: &[u64]) -> Result<usize> {
        if coords.len() != self.dim() {
            return Err(Error::Mismatch("coordinate count differs from dimension"));
        }
        let mut a = 0u64;
        for (k, &c) in coords.iter().enumerate() {
            if c >= self.radices[k] {
                return Err(Error::OutOfRange {
                    what: "coordinate",
                    value: c,
                    bound: self.radices[k],
                });
            }
            a += c * self.strides[k];
        }
        Ok(a as usize)
    }

    /// Chinese-remainder view: the residues `t mod p_k^{l_k}`.
    pub fn residues(&self, t: u64) -> Vec<u64> {
        self.radices.iter().map(|&r| t % r).collect()
    }

    /// Inverse of [`ProductSpace::residues`].
    pub fn from_residues(&self, residues: &[u64]) -> Result<u64> {
        if residues.len() != self.dim() {
            return Err(Error::Mismatch("residue count differs from dimension"));
        }
        let l = self.l as u128;
        let mut t = 0u128;
        for (&r, &q) in residues.iter().zip(&self.radices) {
            if r >= q {
                return Err(Error::OutOfRange {
                    what: "residue",
                    value: r,
                    bound: q,
                });
            }
            let rest = self.l / q;
            let inv = mod_inverse(rest % q, q).ok_or(Error::Precondition("moduli not coprime"))?;
            let term = (r as u128 * inv as u128 % q as u128) * rest as u128;
            t = (t + term) % l;
        }
        Ok(t as u64)
    }

    /// Exponent vector of a divisor `m` of `l`.
    pub fn exponents_of(&self, m: u64) -> Result<Vec<u32>> {
        if m == 0 || self.l % m != 0 {
            return Err(Error::NotDivisor { n: m, l: self.l });
        }
        let mut rest = m;
        let exps = self
            .primes
            .iter()
            .map(|&p| {
                let mut e = 0;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                e
            })
            .collect();
        Ok(exps)
    }

    fn check_exponents(&self, exps: &[u32]) -> Result<()> {
        if exps.len() != self.dim() {
            return Err(Error::Mismatch("exponent count differs from dimension"));
        }
        for (k, &e) in exps.iter().enumerate() {
            if e > self.exponents[k] {
                return Err(Error::OutOfRange {
                    what: "rectangle exponent",
                    value: e as u64,
                    bound: self.exponents[k] as u64,
                });
            }
        }
        Ok(())
    }

    /// The cylinder `{x : x_axis in values}` over a set of coordinate
    /// values on one axis.
    pub fn axis_set(&self, axis: usize, values: &[u64]) -> Result<ProductSet> {
        if axis >= self.dim() {
            return Err(Error::OutOfRange {
                what: "axis",
                value: axis as u64,
                bound: self.dim() as u64,
            });
        }
        let radix = self.radices[axis];
        if let Some(&v) = values.iter().find(|&&v| v >= radix) {
            return Err(Error::OutOfRange {
                what: "coordinate",
                value: v,
                bound: radix,
            });
        }
        let stride = self.strides[axis] as usize;
        let period = stride * radix as usize;
        let mut out = AtomSet::empty(self.len());
        for block in (0..self.len()).step_by(period) {
            for &v in values {
                let start = block + v as usize * stride;
                out.insert_range(start, start + stride);
            }
        }
        Ok(out)
    }

    /// The divisor with exponent vector `exps`.
    pub fn divisor(&self, exps: &[u32]) -> Result<u64> {
        self.check_exponents(exps)?;
        Ok(self.primes.iter().zip(exps).map(|(&p, &e)| pow(p, e)).product())
    }

    /// For every atom, the index of the rectangle with exponents `exps` that
    /// contains it. Rectangles are numbered in mixed radix over their
    /// coordinates, axis 0 fastest.
    pub fn cell_ids(&self, exps: &[u32]) -> Result<Vec<u32>> {
        self.check_exponents(exps)?;
        let mut ids: Vec<u32> = vec![0];
        let mut cell_stride = vec![0u64; self.dim()];
        let mut s = 1u64;
        for k in 0..self.dim() {
            cell_stride[k] = s;
            s *= pow(self.primes[k], exps[k]);
        }
        for k in (0..self.dim()).rev() {
            let shift = pow(self.primes[k], self.exponents[k] - exps[k]);
            let table: Vec<u32> = (0..self.radices[k])
                .map(|c| ((c / shift) * cell_stride[k]) as u32)
                .collect();
            let mut next = Vec::with_capacity(ids.len() * table.len());
            for &base in &ids {
                next.extend(table.iter().map(|&t| base + t));
            }
            ids = next;
        }
        Ok(ids)
    }

    /// Sums of `values` over every rectangle with exponents `exps`.
    pub fn cell_sums<W: Weight>(&self, values: &[W], exps: &[u32]) -> Result<(Vec<u32>, Vec<W>)> {
        if values.len() != self.len() {
            return Err(Error::Mismatch("function does not live on this space"));
        }
        let ids = self.cell_ids(exps)?;
        let cells = self.divisor(exps)? as usize;
        let mut sums = vec![W::default(); cells];
        for (&id, &v) in ids.iter().zip(values) {
            let s = &mut sums[id as usize];
            *s = s.checked_add(v).ok_or(Error::Overflow("rectangle sum"))?;
        }
        Ok((ids, sums))
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// A rectangle `B_m(t_1, ..., t_d)`: on axis `k` the coordinate's top
/// `exps[k]` digits equal `coords[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rectangle {
    pub exps: Vec<u32>,
    pub coords: Vec<u64>,
}

impl Rectangle {
    pub fn new(space: &ProductSpace, exps: Vec<u32>, coords: Vec<u64>) -> Result<Self> {
        space.check_exponents(&exps)?;
        if coords.len() != space.dim() {
            return Err(Error::Mismatch("coordinate count differs from dimension"));
        }
        for k in 0..space.dim() {
            let bound = pow(space.primes[k], exps[k]);
            if coords[k] >= bound {
                return Err(Error::OutOfRange {
                    what: "rectangle coordinate",
                    value: coords[k],
                    bound,
                });
            }
        }
        Ok(Rectangle { exps, coords })
    }

    /// The rectangle `B_m(coords)` for a divisor `m` of `l`.
    pub fn from_divisor(space: &ProductSpace, m: u64, coords: Vec<u64>) -> Result<Self> {
        Rectangle::new(space, space.exponents_of(m)?, coords)
    }

    /// The rectangle with exponents `exps` that contains `atom`.
    pub fn containing(space: &ProductSpace, exps: Vec<u32>, atom: usize) -> Result<Self> {
        space.check_exponents(&exps)?;
        let coords = (0..space.dim())
            .map(|k| space.coordinate(atom, k) / pow(space.primes[k], space.exponents[k] - exps[k]))
            .collect();
        Ok(Rectangle { exps, coords })
    }

    pub fn divisor(&self, space: &ProductSpace) -> u64 {
        space.divisor(&self.exps).expect("validated rectangle")
    }

    pub fn measure(&self, space: &ProductSpace) -> Measure {
        Measure::new(space.size() / self.divisor(space), space.size())
    }

    pub fn contains(&self, space: &ProductSpace, atom: usize) -> bool {
        (0..space.dim()).all(|k| {
            space.coordinate(atom, k) / pow(space.primes[k], space.exponents[k] - self.exps[k]) == self.coords[k]
        })
    }

    /// Axes on which the rectangle imposes a constraint.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&k| self.exps[k] > 0).collect()
    }

    pub fn atoms(&self, space: &ProductSpace) -> ProductSet {
        rectangle_atoms(space, self)
    }
}

/// The atoms of a rectangle, built axis by axis.
pub fn rectangle_atoms(space: &ProductSpace, r: &Rectangle) -> ProductSet {
    let mut set = AtomSet::empty(space.len());
    // Allowed coordinate ranges per axis are contiguous blocks.
    let ranges: Vec<(u64, u64)> = (0..space.dim())
        .map(|k| {
            let w = pow(space.primes[k], space.exponents[k] - r.exps[k]);
            (r.coords[k] * w, (r.coords[k] + 1) * w)
        })
        .collect();
    let mut atoms: Vec<u64> = vec![0];
    for k in (0..space.dim()).rev() {
        let (lo, hi) = ranges[k];
        let mut next = Vec::with_capacity(atoms.len() * (hi - lo) as usize);
        for &a in &atoms {
            next.extend((lo..hi).map(|c| a + c * space.strides[k]));
        }
        atoms = next;
    }
    for a in atoms {
        set.insert(a as usize);
    }
    set
}

/// Every rectangle of the space, over all divisors and coordinates.
pub fn all_rectangles(space: &ProductSpace) -> Vec<Rectangle> {
    let mut out = Vec::new();
    for m in space.factorization().divisors().iter() {
        let exps = space.exponents_of(m).expect("divisor");
        let bounds: Vec<u64> = (0..space.dim()).map(|k| pow(space.primes[k], exps[k])).collect();
        let mut coords = vec![0u64; space.dim()];
        loop {
            out.push(Rectangle {
                exps: exps.clone(),
                coords: coords.clone(),
            });
            let mut k = 0;
            while k < coords.len() {
                coords[k] += 1;
                if coords[k] < bounds[k] {
                    break;
                }
                coords[k] = 0;
                k += 1;
            }
            if k == coords.len() {
                break;
            }
        }
    }
    out
}

/// The smallest set of axes the membership of `set` depends on.
pub fn spectrum(space: &ProductSpace, set: &ProductSet) -> Vec<usize> {
    (0..space.dim())
        .filter(|&k| {
            let stride = space.strides[k] as usize;
            (0..space.len()).any(|a| {
                let base = a - space.coordinate(a, k) as usize * stride;
                set.contains(a) != set.contains(base)
            })
        })
        .collect()
}

/// Largest family [`independent`] will test (it checks `2^n` intersections).
pub const MAX_INDEPENDENCE_FAMILY: usize = 24;

/// Exact mutual independence: every sub-intersection has the product
/// measure.
pub fn independent(space: &ProductSpace, sets: &[ProductSet]) -> Result<bool> {
    if sets.len() > MAX_INDEPENDENCE_FAMILY {
        return Err(Error::Budget {
            needed: sets.len() as u64,
            budget: MAX_INDEPENDENCE_FAMILY as u64,
        });
    }
    for s in sets {
        if s.len() != space.len() {
            return Err(Error::Mismatch("set does not live on this space"));
        }
    }
    let l = BigUint::from(space.size());
    let counts: Vec<BigUint> = sets.iter().map(|s| BigUint::from(s.count())).collect();
    // Depth-first over index subsets in increasing order, carrying the
    // running intersection, its size and the product of member counts.
    fn visit(
        sets: &[ProductSet],
        counts: &[BigUint],
        l: &BigUint,
        start: usize,
        acc: &AtomSet,
        size: usize,
        product: &BigUint,
    ) -> bool {
        for i in start..sets.len() {
            let inter = acc.intersection(&sets[i]);
            let prod = product * &counts[i];
            let k = size + 1;
            if k >= 2 {
                let lhs = BigUint::from(inter.count()) * l.pow(k as u32 - 1);
                if lhs != prod {
                    return false;
                }
            }
            if !visit(sets, counts, l, i + 1, &inter, k, &prod) {
                return false;
            }
        }
        true
    }
    Ok(visit(
        sets,
        &counts,
        &l,
        0,
        &AtomSet::full(space.len()),
        0,
        &BigUint::from(1u32),
    ))
}

/// A member of the family built from exponent vectors in `E_d`: one digit
/// on the tail axis `nu` and one digit on every base axis
/// `mu, mu + 1, ..., d - 1` (axes are 0-based; `mu == d` means the base is
/// the whole space).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FRect {
    pub nu: usize,
    pub mu: usize,
    pub tail_digit: u64,
    pub base_digits: Vec<u64>,
}

impl FRect {
    pub fn new(space: &ProductSpace, nu: usize, mu: usize, tail_digit: u64, base_digits: Vec<u64>) -> Result<Self> {
        let f = FRect {
            nu,
            mu,
            tail_digit,
            base_digits,
        };
        f.validate(space)?;
        Ok(f)
    }

    pub fn validate(&self, space: &ProductSpace) -> Result<()> {
        let d = space.dim();
        if !(self.nu < self.mu && self.mu <= d) {
            return Err(Error::Precondition("FRect requires nu < mu <= d"));
        }
        if self.base_digits.len() != d - self.mu {
            return Err(Error::Mismatch("base digit count differs from d - mu"));
        }
        let check = |k: usize, digit: u64| {
            if digit >= space.primes[k] {
                Err(Error::OutOfRange {
                    what: "FRect digit",
                    value: digit,
                    bound: space.primes[k],
                })
            } else {
                Ok(())
            }
        };
        check(self.nu, self.tail_digit)?;
        for (i, &digit) in self.base_digits.iter().enumerate() {
            check(self.mu + i, digit)?;
        }
        Ok(())
    }

    fn build(&self, space: &ProductSpace, tail: bool, base: bool) -> Rectangle {
        let d = space.dim();
        let mut exps = vec![0u32; d];
        let mut coords = vec![0u64; d];
        if tail {
            exps[self.nu] = 1;
            coords[self.nu] = self.tail_digit;
        }
        if base {
            for (i, &digit) in self.base_digits.iter().enumerate() {
                exps[self.mu + i] = 1;
                coords[self.mu + i] = digit;
            }
        }
        Rectangle { exps, coords }
    }

    pub fn rectangle(&self, space: &ProductSpace) -> Rectangle {
        self.build(space, true, true)
    }

    pub fn base_rectangle(&self, space: &ProductSpace) -> Rectangle {
        self.build(space, false, true)
    }

    pub fn tail_rectangle(&self, space: &ProductSpace) -> Rectangle {
        self.build(space, true, false)
    }

    pub fn atoms(&self, space: &ProductSpace) -> ProductSet {
        rectangle_atoms(space, &self.rectangle(space))
    }

    pub fn base(&self, space: &ProductSpace) -> ProductSet {
        rectangle_atoms(space, &self.base_rectangle(space))
    }

    pub fn tail(&self, space: &ProductSpace) -> ProductSet {
        rectangle_atoms(space, &self.tail_rectangle(space))
    }

    /// `p_nu * p_mu * ... * p_{d-1}`: the reciprocal of the measure.
    pub fn divisor(&self, space: &ProductSpace) -> u64 {
        space.primes[self.nu] * space.primes[self.mu..].iter().product::<u64>()
    }

    pub fn measure(&self, space: &ProductSpace) -> Measure {
        Measure::new(space.size() / self.divisor(space), space.size())
    }

    /// True when the base of `self` contains the base of `other`: fewer (or
    /// equal) constrained axes with matching digits.
    pub fn base_contains(&self, other: &FRect) -> bool {
        if self.mu < other.mu {
            return false;
        }
        let offset = self.mu - other.mu;
        other.base_digits[offset..] == self.base_digits[..]
    }

    /// True when the bases of the two rectangles intersect.
    pub fn bases_intersect(&self, other: &FRect) -> bool {
        self.base_contains(other) || other.base_contains(self)
    }
}

/// Number of members of the family for the first `d` primes.
pub fn f_d_count(d: usize) -> Result<u64> {
    let primes = first_primes(d);
    let mut total = 0u64;
    for nu in 0..d {
        for mu in nu + 1..=d {
            let tail: u64 = primes[mu..].iter().product();
            total = total
                .checked_add(primes[nu] * tail)
                .ok_or(Error::Overflow("family size"))?;
        }
    }
    Ok(total)
}

/// Every rectangle `B_m(j)` with `m` in `E_d`, as [`FRect`]s over the
/// first `d` primes, refusing families larger than `cap`.
pub fn enumerate_f_d(d: usize, cap: u64) -> Result<Vec<FRect>> {
    if d < 2 {
        return Err(Error::Precondition("d must be at least 2"));
    }
    let needed = f_d_count(d)?;
    if needed > cap {
        return Err(Error::Budget { needed, budget: cap });
    }
    let primes = first_primes(d);
    let mut out = Vec::with_capacity(needed as usize);
    for nu in 0..d {
        for mu in nu + 1..=d {
            let radices = &primes[mu..];
            let mut digits = vec![0u64; radices.len()];
            loop {
                for j in 0..primes[nu] {
                    out.push(FRect {
                        nu,
                        mu,
                        tail_digit: j,
                        base_digits: digits.clone(),
                    });
                }
                let mut k = 0;
                while k < digits.len() {
                    digits[k] += 1;
                    if digits[k] < radices[k] {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
                if k == digits.len() {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// A function on the atoms of a product space.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductStepFunction<W> {
    values: Vec<W>,
}

impl<W: Weight> ProductStepFunction<W> {
    pub fn new(space: &ProductSpace, values: Vec<W>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::Mismatch("value count differs from atom count"));
        }
        Ok(ProductStepFunction { values })
    }

    pub fn constant(space: &ProductSpace, c: W) -> Self {
        ProductStepFunction {
            values: vec![c; space.len()],
        }
    }

    pub fn indicator(set: &ProductSet) -> Self {
        let one = W::from_u64(1);
        ProductStepFunction {
            values: (0..set.len())
                .map(|a| if set.contains(a) { one } else { W::default() })
                .collect(),
        }
    }

    pub fn values(&self) -> &[W] {
        &self.values
    }

    pub fn into_values(self) -> Vec<W> {
        self.values
    }

    pub fn abs(&self) -> Self {
        ProductStepFunction {
            values: self.values.iter().map(|v| v.abs()).collect(),
        }
    }

    pub fn integral(&self) -> Result<Average<W>> {
        Ok(Average::new(
            checked_sum(self.values.iter().copied())?,
            self.values.len() as u64,
        ))
    }

    pub fn l1(&self) -> Result<Average<W>> {
        self.abs().integral()
    }

    pub fn to_averages(&self) -> AtomAverages<W> {
        AtomAverages::new(self.values.iter().map(|&v| Average::of(v)).collect())
    }
}

/// The rectangle maximal operator `M_D g`: at each atom, the largest
/// average of `|g|` over a rectangle `B_m` containing it, `m` in `D`.
pub fn product_maximal<W: Weight>(
    space: &ProductSpace,
    g: &ProductStepFunction<W>,
    d: &IndexSet,
) -> Result<AtomAverages<W>> {
    if d.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let exps_list = d.iter().map(|m| space.exponents_of(m)).collect::<Result<Vec<_>>>()?;
    let abs = g.abs();
    let mut best = vec![Average::zero(); space.len()];
    for (m, exps) in d.iter().zip(&exps_list) {
        let (ids, sums) = space.cell_sums(&abs.values, exps)?;
        let count = space.size() / m;
        for (slot, &id) in best.iter_mut().zip(&ids) {
            let avg = Average::new(sums[id as usize], count);
            if avg > *slot {
                *slot = avg;
            }
        }
    }
    Ok(AtomAverages::new(best))
}

/// The maximal function of the indicator of `set`, with integer weights.
pub fn product_maximal_set(space: &ProductSpace, set: &ProductSet, d: &IndexSet) -> Result<AtomAverages<u64>> {
    product_maximal(space, &ProductStepFunction::<u64>::indicator(set), d)
}

/// Conditional expectation onto the rectangles `B_m`: every atom receives
/// the average of `g` over its rectangle.
pub fn project_to_subalgebra<W: Weight>(
    space: &ProductSpace,
    g: &ProductStepFunction<W>,
    m: u64,
) -> Result<AtomAverages<W>> {
    let exps = space.exponents_of(m)?;
    let (ids, sums) = space.cell_sums(&g.values, &exps)?;
    let count = space.size() / m;
    Ok(AtomAverages::new(
        ids.iter().map(|&id| Average::new(sums[id as usize], count)).collect(),
    ))
}
