//! Step functions on the circle at a finite resolution, the Riemann sum
//! operators, Riemann sets and the Riemann maximal operator restricted to
//! the divisors of the resolution.
//!
//! At resolution `l` the circle is cut into the atoms `[j/l, (j+1)/l)`.
//! A Riemann set `I_l(n, t)` is the union of the `n` atoms
//! `t, t + l/n, t + 2l/n, ...`; it is the averaging cell of the Riemann
//! sum of order `n` on data that is constant on atoms.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{lcm, IndexSet};
use crate::bits::AtomSet;
use crate::exact::{AtomAverages, Average, Fixed, Measure, Weight};
use crate::{Error, Result};

fn to_len(l: u64) -> Result<usize> {
    usize::try_from(l).map_err(|_| Error::Overflow("resolution exceeds the address space"))
}

/// A function on the circle that is constant on each atom of resolution
/// `values.len()`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction<W = Fixed> {
    values: Vec<W>,
}

impl<W: Weight> StepFunction<W> {
    pub fn new(values: Vec<W>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Precondition("a step function needs at least one atom"));
        }
        Ok(StepFunction { values })
    }

    pub fn constant(l: u64, c: W) -> Result<Self> {
        if l == 0 {
            return Err(Error::Precondition("resolution must be positive"));
        }
        Ok(StepFunction {
            values: vec![c; to_len(l)?],
        })
    }

    /// The indicator of a set of atoms.
    pub fn indicator(set: &TorusSet) -> Self {
        let one = W::from_u64(1);
        StepFunction {
            values: (0..set.atoms.len())
                .map(|j| if set.atoms.contains(j) { one } else { W::default() })
                .collect(),
        }
    }

    pub fn resolution(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn values(&self) -> &[W] {
        &self.values
    }

    pub fn abs(&self) -> Self {
        StepFunction {
            values: self.values.iter().map(|v| v.abs()).collect(),
        }
    }

    /// The same function at the finer resolution `l`; the current
    /// resolution must divide `l`.
    pub fn refine(&self, l: u64) -> Result<Self> {
        let r = self.resolution();
        if l == 0 || l % r != 0 {
            return Err(Error::NotDivisor { n: r, l });
        }
        if l == r {
            return Ok(self.clone());
        }
        let factor = (l / r) as usize;
        let mut values = Vec::with_capacity(to_len(l)?);
        for &v in &self.values {
            values.extend(core::iter::repeat(v).take(factor));
        }
        Ok(StepFunction { values })
    }

    /// True when the function is constant on every atom of the coarser
    /// resolution `coarse`, which must divide the current one.
    pub fn is_measurable_at(&self, coarse: u64) -> bool {
        let r = self.resolution();
        if coarse == 0 || r % coarse != 0 {
            return false;
        }
        let block = (r / coarse) as usize;
        self.values.chunks(block).all(|c| c.iter().all(|v| *v == c[0]))
    }

    pub fn sum(&self) -> Result<W> {
        checked_sum(self.values.iter().copied())
    }

    /// The exact integral over the circle.
    pub fn integral(&self) -> Result<Average<W>> {
        Ok(Average::new(self.sum()?, self.resolution()))
    }

    /// The exact `L^1` norm.
    pub fn l1(&self) -> Result<Average<W>> {
        self.abs().integral()
    }

    /// Exact measure of `{f > threshold}`.
    pub fn distribution(&self, threshold: &Average<W>) -> Measure {
        let count = self.values.iter().filter(|&&v| Average::of(v) > *threshold).count();
        Measure::new(count as u64, self.resolution())
    }

    /// Reads the function as exact single-atom averages.
    pub fn to_averages(&self) -> AtomAverages<W> {
        AtomAverages::new(self.values.iter().map(|&v| Average::of(v)).collect())
    }
}

impl StepFunction<Fixed> {
    /// Builds a function from `f64` samples, each of which must be exactly
    /// representable in [`Fixed`].
    pub fn from_f64(values: &[f64]) -> Result<Self> {
        let values = values.iter().map(|&x| Fixed::from_f64(x)).collect::<Result<Vec<_>>>()?;
        StepFunction::new(values)
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.to_f64()).collect()
    }
}

pub(crate) fn checked_sum<W: Weight>(items: impl Iterator<Item = W>) -> Result<W> {
    let mut acc = W::default();
    for v in items {
        acc = acc.checked_add(v).ok_or(Error::Overflow("step function sum"))?;
    }
    Ok(acc)
}

/// A set of atoms at a fixed resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSet {
    atoms: AtomSet,
}

impl TorusSet {
    pub fn empty(l: u64) -> Result<Self> {
        Ok(TorusSet {
            atoms: AtomSet::empty(to_len(l)?),
        })
    }

    pub fn full(l: u64) -> Result<Self> {
        Ok(TorusSet {
            atoms: AtomSet::full(to_len(l)?),
        })
    }

    pub fn from_atoms(atoms: AtomSet) -> Self {
        TorusSet { atoms }
    }

    pub fn from_indices(l: u64, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let len = to_len(l)?;
        let mut atoms = AtomSet::empty(len);
        for i in indices {
            if i >= len {
                return Err(Error::OutOfRange {
                    what: "atom",
                    value: i as u64,
                    bound: l,
                });
            }
            atoms.insert(i);
        }
        Ok(TorusSet { atoms })
    }

    pub fn resolution(&self) -> u64 {
        self.atoms.len() as u64
    }

    pub fn atoms(&self) -> &AtomSet {
        &self.atoms
    }

    pub fn into_atoms(self) -> AtomSet {
        self.atoms
    }

    pub fn measure(&self) -> Measure {
        Measure::new(self.atoms.count() as u64, self.resolution())
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.atoms.contains(atom)
    }
}

/// The Riemann set `I_l(n, t)`: atoms `t + i * (l / n)` for `0 <= i < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RiemannSet {
    pub l: u64,
    pub n: u64,
    pub t: u64,
}

impl RiemannSet {
    pub fn new(l: u64, n: u64, t: u64) -> Result<Self> {
        if n == 0 || l == 0 || l % n != 0 {
            return Err(Error::NotDivisor { n, l });
        }
        if t >= l / n {
            return Err(Error::OutOfRange {
                what: "offset t",
                value: t,
                bound: l / n,
            });
        }
        Ok(RiemannSet { l, n, t })
    }

    /// The Riemann set of order `n` that contains atom `j`.
    pub fn containing(l: u64, n: u64, j: u64) -> Result<Self> {
        if n == 0 || l == 0 || l % n != 0 {
            return Err(Error::NotDivisor { n, l });
        }
        RiemannSet::new(l, n, j % (l / n))
    }

    pub fn step(&self) -> u64 {
        self.l / self.n
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> {
        let (t, step) = (self.t, self.step());
        (0..self.n).map(move |i| t + i * step)
    }

    pub fn contains(&self, atom: u64) -> bool {
        atom < self.l && atom % self.step() == self.t
    }

    pub fn measure(&self) -> Measure {
        Measure::new(self.n, self.l)
    }

    pub fn to_set(&self) -> Result<TorusSet> {
        TorusSet::from_indices(self.l, self.iter().map(|a| a as usize))
    }
}

/// The atoms of `I_l(n, t)`.
pub fn riemann_set_atoms(l: u64, n: u64, t: u64) -> Result<TorusSet> {
    RiemannSet::new(l, n, t)?.to_set()
}

/// Sums of `f` over every Riemann set of order `n`, indexed by the offset
/// `t < l / n`. `f` must live at resolution `l` with `n | l`.
fn cell_sums<W: Weight>(values: &[W], n: u64) -> Result<Vec<W>> {
    let l = values.len() as u64;
    let step = (l / n) as usize;
    let mut sums = vec![W::default(); step];
    for (j, &v) in values.iter().enumerate() {
        let s = &mut sums[j % step];
        *s = s.checked_add(v).ok_or(Error::Overflow("Riemann cell sum"))?;
    }
    Ok(sums)
}

/// The Riemann sum `R_n f(x) = (1/n) sum_{k<n} f(x + k/n)`, evaluated
/// exactly at resolution `lcm(l, n)`.
pub fn riemann_sum<W: Weight>(f: &StepFunction<W>, n: u64) -> Result<AtomAverages<W>> {
    if n == 0 {
        return Err(Error::Precondition("Riemann sum order must be positive"));
    }
    let l = lcm(f.resolution(), n)?;
    let g = f.refine(l)?;
    let sums = cell_sums(&g.values, n)?;
    let step = sums.len();
    Ok(AtomAverages::new(
        (0..g.values.len()).map(|j| Average::new(sums[j % step], n)).collect(),
    ))
}

/// The maximal operator `sup_{n in D, n | l} R_n |f|` at resolution `l`.
///
/// The value at atom `j` is the largest average of `|f|` over a Riemann set
/// `I_l(n, t)` containing `j`, taken over the members `n` of `D` that
/// divide `l`.
pub fn riemann_maximal<W: Weight>(f: &StepFunction<W>, d: &IndexSet, l: u64) -> Result<AtomAverages<W>> {
    let orders = d.divisors_of(l);
    if orders.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let g = f.refine(l)?.abs();
    let len = g.values.len();
    let mut best = vec![Average::zero(); len];
    for n in orders.iter() {
        let sums = cell_sums(&g.values, n)?;
        let step = sums.len();
        for (j, slot) in best.iter_mut().enumerate() {
            let avg = Average::new(sums[j % step], n);
            if avg > *slot {
                *slot = avg;
            }
        }
    }
    Ok(AtomAverages::new(best))
}

/// The maximal function of the indicator of `set`, with integer weights.
pub fn riemann_maximal_set(set: &TorusSet, d: &IndexSet) -> Result<AtomAverages<u64>> {
    riemann_maximal(&StepFunction::<u64>::indicator(set), d, set.resolution())
}

/// Exact measure of `{f > threshold}`.
pub fn distribution<W: Weight>(f: &StepFunction<W>, threshold: &Average<W>) -> Measure {
    f.distribution(threshold)
}

/// Conditional expectation onto the atoms of resolution `coarse`: each
/// coarse atom receives the average of `f` over it. If `coarse` does not
/// divide the resolution of `f`, both are first brought to their common
/// refinement.
pub fn project_to_algebra<W: Weight>(f: &StepFunction<W>, coarse: u64) -> Result<AtomAverages<W>> {
    if coarse == 0 {
        return Err(Error::Precondition("target resolution must be positive"));
    }
    let l = lcm(f.resolution(), coarse)?;
    let g = f.refine(l)?;
    let block = (l / coarse) as usize;
    g.values
        .chunks(block)
        .map(|c| Ok(Average::new(checked_sum(c.iter().copied())?, block as u64)))
        .collect::<Result<Vec<_>>>()
        .map(AtomAverages::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fx(v: &[f64]) -> StepFunction {
        StepFunction::from_f64(v).unwrap()
    }

    fn avg(n: u64, d: u64) -> Average<Fixed> {
        Average::ratio(n, d)
    }

    #[test]
    fn riemann_sum_examples() {
        let one = StepFunction::constant(1, Fixed::from_int(1)).unwrap();
        let r = riemann_sum(&one, 5).unwrap();
        assert_eq!(r.len(), 5);
        assert!(r.values().iter().all(|v| *v == avg(1, 1)));

        let half = fx(&[1.0, 0.0]);
        let r = riemann_sum(&half, 2).unwrap();
        assert!(r.values().iter().all(|v| *v == avg(1, 2)));

        let atom0 = fx(&[1.0, 0.0, 0.0, 0.0]);
        let r = riemann_sum(&atom0, 4).unwrap();
        assert!(r.values().iter().all(|v| *v == avg(1, 4)));
    }

    #[test]
    fn riemann_set_examples() {
        let s = riemann_set_atoms(4, 2, 0).unwrap();
        assert_eq!(s.atoms().iter().collect::<Vec<_>>(), vec![0, 2]);
        let s = riemann_set_atoms(4, 2, 1).unwrap();
        assert_eq!(s.atoms().iter().collect::<Vec<_>>(), vec![1, 3]);
        let s = riemann_set_atoms(6, 1, 4).unwrap();
        assert_eq!(s.atoms().iter().collect::<Vec<_>>(), vec![4]);
        assert_eq!(s.measure(), Measure::new(1, 6));
        assert!(riemann_set_atoms(6, 4, 0).is_err());
        assert!(riemann_set_atoms(6, 2, 3).is_err());
    }

    #[test]
    fn riemann_maximal_examples() {
        let f = fx(&[0.25, -0.5, 1.0, 0.0, 0.75, 0.5]);
        let mean_abs = f.l1().unwrap();
        let whole = riemann_maximal(&f, &IndexSet::new([6]), 6).unwrap();
        assert!(whole.values().iter().all(|v| *v == mean_abs));

        let atoms = riemann_maximal(&f, &IndexSet::new([1]), 6).unwrap();
        assert_eq!(atoms, f.abs().to_averages());

        let atom0 = fx(&[1.0, 0.0, 0.0, 0.0]);
        let m = riemann_maximal(&atom0, &IndexSet::new([1, 2, 4]), 4).unwrap();
        assert_eq!(m.values(), &[avg(1, 1), avg(1, 4), avg(1, 2), avg(1, 4)]);

        assert_eq!(
            riemann_maximal(&atom0, &IndexSet::new([3, 5]), 4),
            Err(Error::EmptyDomain)
        );
        assert!(riemann_maximal(&atom0, &IndexSet::new([1]), 6).is_err());
    }

    #[test]
    fn distribution_examples() {
        let one = StepFunction::constant(3, Fixed::from_int(1)).unwrap();
        assert_eq!(distribution(&one, &avg(0, 1)), Measure::new(1, 1));
        assert_eq!(distribution(&one, &avg(2, 1)), Measure::zero());
        let atom0 = fx(&[1.0, 0.0, 0.0, 0.0]);
        let m = riemann_maximal(&atom0, &IndexSet::new([1, 2, 4]), 4).unwrap();
        assert_eq!(m.distribution(&avg(1, 3)), Measure::new(1, 2));
    }

    #[test]
    fn projection_examples() {
        let f = fx(&[1.0, 0.0, 0.0, 0.0]);
        let p = project_to_algebra(&f, 1).unwrap();
        assert_eq!(p.values(), &[avg(1, 4)]);
        let p = project_to_algebra(&f, 2).unwrap();
        assert_eq!(p.values(), &[avg(1, 2), avg(0, 1)]);
        let g = fx(&[0.5, 0.5, 0.25, 0.25]);
        assert!(g.is_measurable_at(2));
        assert_eq!(project_to_algebra(&g, 2).unwrap().values(), &[avg(1, 2), avg(1, 4)]);
        // A resolution that does not divide: common refinement at 6.
        let p = project_to_algebra(&fx(&[1.0, 0.0]), 3).unwrap();
        assert_eq!(p.values(), &[avg(1, 1), avg(1, 2), avg(0, 1)]);
    }

    #[test]
    fn averaging_identity_exhaustive() {
        // For every l <= 64, n | l and atom j, R_n f at atom j equals the
        // average of f over the Riemann set of order n containing j.
        for l in 1..=64u64 {
            let f = StepFunction::new((0..l).map(|j| (j * 7 + 3) % 11).collect()).unwrap();
            for n in 1..=l {
                if l % n != 0 {
                    continue;
                }
                let r = riemann_sum(&f, n).unwrap();
                for j in 0..l {
                    let set = RiemannSet::containing(l, n, j).unwrap();
                    let sum: u64 = set.iter().map(|a| f.values()[a as usize]).sum();
                    assert_eq!(r.get(j as usize), Average::new(sum, n));
                }
            }
        }
    }

    #[test]
    fn refinement_leaves_maximal_unchanged() {
        let f = fx(&[0.5, 0.125, 0.0, 1.0, 0.25, 0.75]);
        let d = IndexSet::new([1, 2, 3, 6]);
        let base = riemann_maximal(&f, &d, 6).unwrap();
        for mult in [2u64, 3, 5] {
            let fine = riemann_maximal(&f, &d, 6 * mult).unwrap();
            for j in 0..6 * mult as usize {
                assert_eq!(fine.get(j), base.get(j / mult as usize));
            }
        }
    }

    proptest! {
        #[test]
        fn maximal_properties(vals in proptest::collection::vec(0u64..1000, 1..48), extra in 1u64..48) {
            let f = StepFunction::new(vals).unwrap();
            let l = f.resolution();
            let divisors: Vec<u64> = (1..=l).filter(|n| l % n == 0).collect();
            let small = IndexSet::new(divisors.iter().copied().filter(|n| n % 2 == 1 || *n == l));
            let large = IndexSet::new(divisors.iter().copied().chain([extra]));
            let ms = riemann_maximal(&f, &small, l).unwrap();
            let ml = riemann_maximal(&f, &large, l).unwrap();
            let mean = f.l1().unwrap();
            for j in 0..l as usize {
                prop_assert!(ml.get(j) >= ms.get(j));
                prop_assert!(ms.get(j) >= mean);
            }
            // Riemann sums preserve the integral and fix constants.
            let r = riemann_sum(&f, extra).unwrap();
            prop_assert_eq!(r.mean(), f.integral().unwrap().to_rational());
            let one = StepFunction::constant(l, 1u64).unwrap();
            prop_assert!(riemann_sum(&one, extra).unwrap().values().iter().all(|v| *v == Average::of(1)));
        }
    }
}
