//! Covering selections and the weak-type estimates built on them.
//!
//! Two greedy selections are provided. On the circle, Riemann sets whose
//! orders form a divisibility chain are either nested or disjoint, so a
//! highest-order-first sweep extracts a disjoint subfamily with the same
//! union. On the product space, rectangles of the tail/base family are
//! processed by decreasing base start and accepted when they add new atoms
//! and their tail does not pile up over an already crowded base.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{enumerate_e_d, is_chain, IndexSet};
use crate::bits::AtomSet;
use crate::exact::{rational, Average, Fixed, Measure, Rational, Weight};
use crate::orlicz::{phi, psi};
use crate::product::{independent, product_maximal, FRect, ProductSet, ProductSpace, ProductStepFunction};
use crate::torus::{riemann_maximal, RiemannSet, StepFunction};
use crate::{Error, Result};

/// The outcome of a covering selection.
#[derive(Clone, Debug)]
pub struct SelectionReport {
    /// Indices into the input family, in selection order.
    pub chosen: Vec<usize>,
    pub input_union: Measure,
    pub chosen_union: Measure,
    /// The chosen union equals the input union atom for atom.
    pub unions_equal: bool,
    pub pairwise_disjoint: bool,
    /// The selection rules re-checked on the final chosen family.
    pub conditions_verified: bool,
    /// For each atom, how many chosen sets contain it.
    pub overlap: Vec<u32>,
    /// Mean over atoms of `Psi(overlap / 3)`, when computed.
    pub psi_overlap: Option<f64>,
}

impl SelectionReport {
    /// `|union of input| <= factor * |union of chosen|`, exactly.
    pub fn union_ratio_at_most(&self, factor: u64) -> bool {
        let a = self.input_union.count as u128 * self.chosen_union.total as u128;
        let b = factor as u128 * self.chosen_union.count as u128 * self.input_union.total as u128;
        a <= b
    }

    /// `|union of input| / |union of chosen|`.
    pub fn union_ratio(&self) -> Option<Rational> {
        if self.chosen_union.is_zero() {
            return None;
        }
        Some(self.input_union.to_rational() / self.chosen_union.to_rational())
    }
}

fn overlap_counts(len: usize, sets: &[&AtomSet]) -> Vec<u32> {
    let mut counts = vec![0u32; len];
    for s in sets {
        for a in s.iter() {
            counts[a] += 1;
        }
    }
    counts
}

/// Mean over atoms of `Psi(count / 3)`.
pub fn psi_overlap(counts: &[u32]) -> Result<f64> {
    let max = counts.iter().copied().max().unwrap_or(0) as usize;
    let table = (0..=max).map(|k| psi(k as f64 / 3.0)).collect::<Result<Vec<_>>>()?;
    Ok(counts.iter().map(|&k| table[k as usize]).sum::<f64>() / counts.len() as f64)
}

/// Highest-order-first selection of a disjoint subfamily with the same
/// union. Orders must come from the chain `chain`; ties go to the lowest
/// offset.
pub fn jessen_select(family: &[RiemannSet], chain: &IndexSet) -> Result<SelectionReport> {
    if !is_chain(chain) {
        return Err(Error::NotAChain);
    }
    let l = match family.first() {
        Some(s) => s.l,
        None => {
            return Ok(SelectionReport {
                chosen: Vec::new(),
                input_union: Measure::zero(),
                chosen_union: Measure::zero(),
                unions_equal: true,
                pairwise_disjoint: true,
                conditions_verified: true,
                overlap: Vec::new(),
                psi_overlap: None,
            })
        }
    };
    for s in family {
        if s.l != l {
            return Err(Error::Mismatch("Riemann sets at different resolutions"));
        }
        if !chain.contains(s.n) {
            return Err(Error::Precondition("Riemann set order outside the chain"));
        }
    }
    let sets = family
        .iter()
        .map(|s| s.to_set().map(|t| t.into_atoms()))
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.sort_by(|&a, &b| family[b].n.cmp(&family[a].n).then(family[a].t.cmp(&family[b].t)));
    let len = l as usize;
    let mut covered = AtomSet::empty(len);
    let mut input = AtomSet::empty(len);
    let mut chosen = Vec::new();
    for &i in &order {
        input.union_with(&sets[i]);
        if !sets[i].is_subset(&covered) {
            covered.union_with(&sets[i]);
            chosen.push(i);
        }
    }
    let chosen_sets: Vec<&AtomSet> = chosen.iter().map(|&i| &sets[i]).collect();
    let overlap = overlap_counts(len, &chosen_sets);
    let pairwise_disjoint = overlap.iter().all(|&c| c <= 1);
    Ok(SelectionReport {
        input_union: input.measure(),
        chosen_union: covered.measure(),
        unions_equal: input == covered,
        pairwise_disjoint,
        conditions_verified: pairwise_disjoint,
        chosen,
        overlap,
        psi_overlap: None,
    })
}

/// Weak-type data for the Riemann maximal operator over a chain.
#[derive(Clone, Debug)]
pub struct WeakTypeReport {
    pub level_set: Measure,
    /// `lambda * |{R f > lambda}|`.
    pub lhs: Rational,
    /// `||f||_1`.
    pub rhs: Rational,
    pub holds: bool,
    /// The level set is the union of the Riemann sets (orders in the
    /// chain) on which the average of `|f|` exceeds `lambda`, and the
    /// disjoint selection from those sets reproduces it.
    pub cover_consistent: bool,
}

impl WeakTypeReport {
    /// `lambda * |{R f > lambda}| / ||f||_1`, or `None` if `f = 0`.
    pub fn ratio(&self) -> Option<Rational> {
        if self.rhs.is_zero() {
            None
        } else {
            Some(&self.lhs / &self.rhs)
        }
    }
}

/// Checks `lambda * |{sup_{n in chain} R_n |f| > lambda}| <= ||f||_1` at
/// resolution `l` exactly.
pub fn jessen_weak_type<W: Weight>(
    f: &StepFunction<W>,
    chain: &IndexSet,
    l: u64,
    lambda: &Average<W>,
) -> Result<WeakTypeReport> {
    if !is_chain(chain) {
        return Err(Error::NotAChain);
    }
    if *lambda <= Average::zero() {
        return Err(Error::Precondition("lambda must be positive"));
    }
    let maximal = riemann_maximal(f, chain, l)?;
    let level = maximal.level_set(lambda);
    let level_set = level.measure();
    let lhs = lambda.to_rational() * level_set.to_rational();
    let rhs = f.l1()?.to_rational();
    let holds = lhs <= rhs;

    let g = f.refine(l)?.abs();
    let orders = chain.divisors_of(l);
    let mut family = Vec::new();
    for n in orders.iter() {
        let step = l / n;
        for t in 0..step {
            let set = RiemannSet::new(l, n, t)?;
            let sum = crate::torus::checked_sum(set.iter().map(|a| g.values()[a as usize]))?;
            if Average::new(sum, n) > *lambda {
                family.push(set);
            }
        }
    }
    let selection = jessen_select(&family, &orders)?;
    let mut union = AtomSet::empty(l as usize);
    for &i in &selection.chosen {
        union.union_with(family[i].to_set()?.atoms());
    }
    let cover_consistent = selection.pairwise_disjoint && selection.unions_equal && union == level;
    Ok(WeakTypeReport {
        level_set,
        lhs,
        rhs,
        holds,
        cover_consistent,
    })
}

fn frect_key(f: &FRect) -> (core::cmp::Reverse<usize>, core::cmp::Reverse<usize>, u64, &[u64]) {
    (
        core::cmp::Reverse(f.mu),
        core::cmp::Reverse(f.nu),
        f.tail_digit,
        &f.base_digits,
    )
}

/// The union of the tails of `members` whose tail meets the base of
/// `target` and whose base contains the base of `target`.
fn crowding(
    members: &[usize],
    family: &[FRect],
    tails: &[AtomSet],
    bases: &[AtomSet],
    target: usize,
    len: usize,
) -> AtomSet {
    let mut union = AtomSet::empty(len);
    for &j in members {
        if tails[j].intersects(&bases[target]) && bases[target].is_subset(&bases[j]) {
            debug_assert!(family[j].base_contains(&family[target]));
            union.union_with(&tails[j]);
        }
    }
    union
}

fn below_three_quarters(m: &Measure) -> bool {
    4 * (m.count as u128) < 3 * m.total as u128
}

/// Selection from a subfamily of the tail/base rectangles.
///
/// The family is processed by decreasing base start `mu`, then decreasing
/// tail axis `nu`, then lexicographic digits. A candidate is taken when it
/// is not covered by the sets already taken, and the union of its own tail
/// with the tails of the taken sets whose tail meets its base and whose
/// base contains its base has measure below 3/4.
pub fn fd_select(space: &ProductSpace, family: &[FRect]) -> Result<SelectionReport> {
    for f in family {
        f.validate(space)?;
    }
    let len = space.len();
    let atoms: Vec<AtomSet> = family.iter().map(|f| f.atoms(space)).collect();
    let tails: Vec<AtomSet> = family.iter().map(|f| f.tail(space)).collect();
    let bases: Vec<AtomSet> = family.iter().map(|f| f.base(space)).collect();
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.sort_by(|&a, &b| frect_key(&family[a]).cmp(&frect_key(&family[b])));

    let mut chosen: Vec<usize> = Vec::new();
    let mut covered = AtomSet::empty(len);
    let mut input = AtomSet::empty(len);
    for &i in &order {
        input.union_with(&atoms[i]);
        if atoms[i].is_subset(&covered) {
            continue;
        }
        chosen.push(i);
        let crowd = crowding(&chosen, family, &tails, &bases, i, len);
        if below_three_quarters(&crowd.measure()) {
            covered.union_with(&atoms[i]);
        } else {
            chosen.pop();
        }
    }

    // Re-check on the final family: every chosen set adds atoms to those
    // chosen before it, and for every chosen base the crowding union over
    // the whole chosen family stays below 3/4.
    let mut verified = true;
    let mut running = AtomSet::empty(len);
    for &i in &chosen {
        if atoms[i].is_subset(&running) {
            verified = false;
        }
        running.union_with(&atoms[i]);
        let crowd = crowding(&chosen, family, &tails, &bases, i, len);
        if !below_three_quarters(&crowd.measure()) {
            verified = false;
        }
    }

    let chosen_sets: Vec<&AtomSet> = chosen.iter().map(|&i| &atoms[i]).collect();
    let overlap = overlap_counts(len, &chosen_sets);
    let psi = psi_overlap(&overlap)?;
    Ok(SelectionReport {
        input_union: input.measure(),
        chosen_union: covered.measure(),
        unions_equal: input == covered,
        pairwise_disjoint: overlap.iter().all(|&c| c <= 1),
        conditions_verified: verified,
        chosen,
        overlap,
        psi_overlap: Some(psi),
    })
}

/// Which integer starts the exponential tail in the overlap bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailStart {
    /// `floor(lambda)`: the first overlap count with `1 + count > lambda`
    /// for non-integer `lambda`.
    Floor,
    /// `ceil(lambda)`.
    Ceil,
}

/// One threshold of the overlap-distribution bound.
#[derive(Clone, Debug)]
pub struct TailCheck {
    pub lambda: Rational,
    pub start: u64,
    /// `|{x in A : 1 + sum 1_{A_k}(x) > lambda}|`.
    pub level: Measure,
    /// A lower bound on `|A| sum_{k >= start} s^k / k!`: a truncated sum.
    pub bound_lower: Rational,
    /// An upper bound on the same series: truncation plus remainder.
    pub bound_upper: Rational,
    /// `level <= |A| sum_{k >= start} s^k / k!`, decided rigorously.
    pub holds: bool,
}

/// The independent-overlap report for `A` and `A_1, ..., A_n`.
#[derive(Clone, Debug)]
pub struct OverlapReport {
    /// `|A ∩ union A_k|`.
    pub intersection: Measure,
    /// `(1/2) |A| sum |A_k|`.
    pub intersection_lower: Rational,
    pub intersection_holds: bool,
    pub mass: Rational,
    pub tails: Vec<TailCheck>,
    /// `integral over E of Psi((1 + sum 1_{A_k}) / 3)`.
    pub psi_integral: f64,
    /// `psi_integral / |E|`, if `E` is not empty.
    pub psi_ratio: Option<f64>,
}

/// `sum_{k >= start} s^k / k!` for `0 <= s <= 1/2`, bracketed by exact
/// rationals: the truncated sum, and the truncated sum plus twice the last
/// omitted term.
pub fn exp_tail_bounds(s: &Rational, start: u64, extra_terms: u32) -> (Rational, Rational) {
    let mut term = BigRational::one();
    for k in 1..=start {
        term = term * s / BigRational::from_integer(BigInt::from(k));
    }
    let mut sum = BigRational::zero();
    let mut k = start;
    for _ in 0..extra_terms {
        sum += &term;
        k += 1;
        term = term * s / BigRational::from_integer(BigInt::from(k));
    }
    // Remaining terms decrease at least geometrically with ratio s/(k+1) <= 1/2.
    let upper = &sum + &term * BigRational::from_integer(BigInt::from(2));
    (sum, upper)
}

/// Checks the overlap estimates for independent `A, A_1, ..., A_n` with
/// `sum |A_k| <= 1/2`, at each threshold in `lambdas` (each above 3).
pub fn independent_overlap_check(
    space: &ProductSpace,
    a: &ProductSet,
    sets: &[ProductSet],
    lambdas: &[Rational],
    start: TailStart,
) -> Result<OverlapReport> {
    let mut all = Vec::with_capacity(sets.len() + 1);
    all.push(a.clone());
    all.extend(sets.iter().cloned());
    if !independent(space, &all)? {
        return Err(Error::Precondition("sets are not independent"));
    }
    let l = space.size();
    let mass = sets
        .iter()
        .fold(Rational::zero(), |acc, s| acc + s.measure().to_rational());
    if mass > rational(1, 2) {
        return Err(Error::Precondition("total mass exceeds 1/2"));
    }
    let len = space.len();
    let refs: Vec<&AtomSet> = sets.iter().collect();
    let counts = overlap_counts(len, &refs);
    let mut union = AtomSet::empty(len);
    for s in sets {
        union.union_with(s);
    }
    let e = a.intersection(&union);
    let intersection = e.measure();
    let a_measure = a.measure().to_rational();
    let intersection_lower = rational(1, 2) * &a_measure * &mass;
    let intersection_holds = intersection.to_rational() >= intersection_lower;

    let mut tails = Vec::with_capacity(lambdas.len());
    for lambda in lambdas {
        if *lambda <= rational(3, 1) {
            return Err(Error::Precondition("thresholds must exceed 3"));
        }
        let floor = lambda.floor().to_integer();
        let ceil = lambda.ceil().to_integer();
        let k0 = match start {
            TailStart::Floor => floor.clone(),
            TailStart::Ceil => ceil,
        };
        let k0: u64 = k0.try_into().map_err(|_| Error::Overflow("threshold"))?;
        // For an integer count c, 1 + c > lambda exactly when c >= floor(lambda).
        let least: u64 = floor.try_into().map_err(|_| Error::Overflow("threshold"))?;
        let count = a.iter().filter(|&x| counts[x] as u64 >= least).count() as u64;
        let level = Measure::new(count, l);
        let (lo, hi) = exp_tail_bounds(&mass, k0, 40);
        let (bound_lower, bound_upper) = (&a_measure * lo, &a_measure * hi);
        let lv = level.to_rational();
        let holds = if lv <= bound_lower {
            true
        } else if lv > bound_upper {
            false
        } else {
            return Err(Error::NoConvergence("overlap tail too close to the bound"));
        };
        tails.push(TailCheck {
            lambda: lambda.clone(),
            start: k0,
            level,
            bound_lower,
            bound_upper,
            holds,
        });
    }

    let max = counts.iter().copied().max().unwrap_or(0) as usize;
    let table = (0..=max)
        .map(|k| psi((1 + k) as f64 / 3.0))
        .collect::<Result<Vec<_>>>()?;
    let psi_integral = e.iter().map(|x| table[counts[x] as usize]).sum::<f64>() / l as f64;
    let psi_ratio = if e.is_empty() {
        None
    } else {
        Some(psi_integral / intersection.as_f64())
    };
    Ok(OverlapReport {
        intersection,
        intersection_lower,
        intersection_holds,
        mass,
        tails,
        psi_integral,
        psi_ratio,
    })
}

/// Weak-type data for the rectangle maximal operator over `E_d`.
#[derive(Clone, Debug)]
pub struct RectangleWeakType {
    /// `|{M_{E_d} g > lambda}|`.
    pub level_set: Measure,
    /// `mean Phi(|g|)`.
    pub phi_integral: f64,
    /// `(1 + phi_integral) / lambda`.
    pub bound: f64,
    /// `level_set / bound`.
    pub ratio: f64,
    /// Selection applied to the family members whose average exceeds
    /// `lambda`: the level set is their union.
    pub selection: SelectionReport,
}

/// The weak-type quantities for `M_{E_d}` on the space of the first `d`
/// primes.
pub fn rectangle_weak_type(
    space: &ProductSpace,
    family: &[FRect],
    g: &ProductStepFunction<Fixed>,
    lambda: Fixed,
) -> Result<RectangleWeakType> {
    let d = space.dim();
    if space.exponents().iter().any(|&e| e != 1) || space.size() != crate::arith::primorial(d)? {
        return Err(Error::Precondition("space must be over the first d primes"));
    }
    if lambda <= Fixed::ZERO {
        return Err(Error::Precondition("lambda must be positive"));
    }
    let threshold = Average::of(lambda);
    let ed = enumerate_e_d(d)?;
    let maximal = product_maximal(space, g, &ed)?;
    let level = maximal.level_set(&threshold);
    let level_set = level.measure();

    let abs = g.abs();
    let mut phi_sum = 0.0;
    for v in abs.values() {
        phi_sum += phi(v.to_f64())?;
    }
    let phi_integral = phi_sum / space.len() as f64;
    let bound = (1.0 + phi_integral) / lambda.to_f64();

    let mut heavy = Vec::new();
    for f in family {
        let atoms = f.atoms(space);
        let sum = crate::torus::checked_sum(atoms.iter().map(|a| abs.values()[a]))?;
        if Average::new(sum, atoms.count() as u64) > threshold {
            heavy.push(f.clone());
        }
    }
    let selection = fd_select(space, &heavy)?;
    let mut union = AtomSet::empty(space.len());
    for f in &heavy {
        union.union_with(&f.atoms(space));
    }
    if union != level {
        return Err(Error::Mismatch("level set differs from the union of heavy rectangles"));
    }
    Ok(RectangleWeakType {
        level_set,
        phi_integral,
        bound,
        ratio: level_set.as_f64() / bound,
        selection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::enumerate_f_d;
    use crate::DEFAULT_ATOM_BUDGET;

    #[test]
    fn jessen_examples() {
        let chain = IndexSet::new([1, 2, 4]);
        let disjoint = [
            RiemannSet::new(4, 1, 0).unwrap(),
            RiemannSet::new(4, 1, 2).unwrap(),
            RiemannSet::new(4, 2, 1).unwrap(),
        ];
        let r = jessen_select(&disjoint, &chain).unwrap();
        assert_eq!(r.chosen.len(), 3);
        assert!(r.unions_equal && r.pairwise_disjoint);

        let nested = [RiemannSet::new(4, 1, 0).unwrap(), RiemannSet::new(4, 2, 0).unwrap()];
        let r = jessen_select(&nested, &chain).unwrap();
        assert_eq!(r.chosen, vec![1]);

        let whole = [
            RiemannSet::new(4, 1, 2).unwrap(),
            RiemannSet::new(4, 4, 0).unwrap(),
            RiemannSet::new(4, 2, 1).unwrap(),
        ];
        let r = jessen_select(&whole, &chain).unwrap();
        assert_eq!(r.chosen, vec![1]);
        assert!(r.unions_equal);

        assert_eq!(
            jessen_select(&nested, &IndexSet::new([2, 3])).unwrap_err(),
            Error::NotAChain
        );
    }

    #[test]
    fn jessen_weak_type_examples() {
        let one = StepFunction::constant(4, Fixed::from_int(1)).unwrap();
        let r = jessen_weak_type(&one, &IndexSet::new([1, 2]), 4, &Average::ratio(1, 2)).unwrap();
        assert_eq!(r.level_set, Measure::new(1, 1));
        assert!(r.holds && r.cover_consistent);
        assert_eq!(r.ratio().unwrap(), rational(1, 2));

        let l = 8u64;
        let mut v = vec![Fixed::ZERO; l as usize];
        v[0] = Fixed::from_int(l as i64);
        let spike = StepFunction::new(v).unwrap();
        let r = jessen_weak_type(&spike, &IndexSet::new([1]), l, &Average::ratio(1, 1)).unwrap();
        assert_eq!(r.level_set, Measure::new(1, l));
        assert!(r.holds && r.cover_consistent);
    }

    #[test]
    fn fd_examples() {
        let sp = ProductSpace::primorial(3, DEFAULT_ATOM_BUDGET).unwrap();
        let single = [FRect::new(&sp, 0, 1, 1, vec![2, 4]).unwrap()];
        let r = fd_select(&sp, &single).unwrap();
        assert_eq!(r.chosen, vec![0]);
        assert_eq!(r.union_ratio().unwrap(), rational(1, 1));

        // Disjoint rectangles with distinct bases.
        let fam = [
            FRect::new(&sp, 0, 2, 0, vec![0]).unwrap(),
            FRect::new(&sp, 0, 2, 1, vec![1]).unwrap(),
            FRect::new(&sp, 1, 2, 2, vec![2]).unwrap(),
        ];
        let r = fd_select(&sp, &fam).unwrap();
        assert_eq!(r.chosen.len(), 3);
        assert!(r.conditions_verified);

        let all = enumerate_f_d(3, u64::MAX).unwrap();
        let r = fd_select(&sp, &all).unwrap();
        assert!(r.union_ratio_at_most(5));
        assert!(r.conditions_verified);
    }

    #[test]
    fn overlap_examples() {
        let sp = ProductSpace::primorial(3, DEFAULT_ATOM_BUDGET).unwrap();
        let full = AtomSet::full(sp.len());
        let half = crate::product::Rectangle::from_divisor(&sp, 2, vec![0, 0, 0])
            .unwrap()
            .atoms(&sp);
        let lambdas = [rational(7, 2), rational(4, 1)];
        let r =
            independent_overlap_check(&sp, &full, core::slice::from_ref(&half), &lambdas, TailStart::Floor).unwrap();
        assert_eq!(r.intersection, Measure::new(1, 2));
        assert_eq!(r.intersection_lower, rational(1, 4));
        assert!(r.intersection_holds);
        assert!(r.tails.iter().all(|t| t.level.is_zero() && t.holds));

        let empty = AtomSet::empty(sp.len());
        let r =
            independent_overlap_check(&sp, &full, core::slice::from_ref(&empty), &lambdas, TailStart::Floor).unwrap();
        assert!(r.intersection.is_zero() && r.intersection_lower.is_zero());
        assert!(r.psi_ratio.is_none());

        assert!(
            independent_overlap_check(&sp, &half, core::slice::from_ref(&half), &lambdas, TailStart::Floor).is_err()
        );
    }

    #[test]
    fn ceil_start_undercounts_non_integer_thresholds() {
        // Three independent slices: 1 + count > 7/2 exactly when all three
        // overlap, which the series from k = 4 does not bound.
        let sp = ProductSpace::new(2 * 3 * 5 * 7 * 11, DEFAULT_ATOM_BUDGET).unwrap();
        let slice = |axis: usize| {
            let mut exps = vec![0u32; 5];
            exps[axis] = 1;
            crate::product::Rectangle::new(&sp, exps, vec![0; 5])
                .unwrap()
                .atoms(&sp)
        };
        let sets = [slice(2), slice(3), slice(4)];
        let full = AtomSet::full(sp.len());
        let lam = [rational(7, 2)];
        let floor = independent_overlap_check(&sp, &full, &sets, &lam, TailStart::Floor).unwrap();
        let ceil = independent_overlap_check(&sp, &full, &sets, &lam, TailStart::Ceil).unwrap();
        assert!(floor.tails[0].holds);
        assert!(!ceil.tails[0].holds);
    }

    #[test]
    fn tail_bounds_bracket_the_series() {
        let s = rational(1, 2);
        let (lo, hi) = exp_tail_bounds(&s, 0, 40);
        let e_half = 1.6487212707001282;
        let (lo, hi) = (crate::exact::rational_to_f64(&lo), crate::exact::rational_to_f64(&hi));
        assert!(lo <= e_half && e_half <= hi && hi - lo < 1e-12);
    }

    #[test]
    fn rectangle_weak_type_examples() {
        for d in 2..=3 {
            let sp = ProductSpace::primorial(d, DEFAULT_ATOM_BUDGET).unwrap();
            let fam = enumerate_f_d(d, u64::MAX).unwrap();
            let zero = ProductStepFunction::constant(&sp, Fixed::ZERO);
            let r = rectangle_weak_type(&sp, &fam, &zero, Fixed::from_int(1)).unwrap();
            assert!(r.level_set.is_zero());
            let c = ProductStepFunction::constant(&sp, Fixed::from_int(3));
            let r = rectangle_weak_type(&sp, &fam, &c, Fixed::from_int(2)).unwrap();
            assert_eq!(r.level_set, Measure::new(1, 1));
            assert!(r.bound.is_finite() && r.ratio < 1.0);
        }
    }
}
