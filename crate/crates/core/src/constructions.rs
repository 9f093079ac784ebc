//! Explicit extremal sets and finite sweeping-out diagnostics.
//!
//! Two constructions are provided. The first places `[p_k / d]` slices on
//! each of the axes `d+1..2d` of the space over the first `2d` primes: the
//! union `G` of the slice blocks is large, their intersection `C` is small,
//! and every point of `G` sees `C` with density above `(2d)^{1-d}` through a
//! single slice. The second takes `k` orders none of which divides the
//! least common multiple of the others, constrains the top digit of one
//! private prime axis per order, and pulls the resulting set back to the
//! circle, where the Riemann maximal function exceeds `delta` on a set many
//! times larger than the set itself.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{enumerate_e_d, factorize, first_primes, lcm_all, IndexSet};
use crate::bits::AtomSet;
use crate::covering::exp_tail_bounds;
use crate::exact::{rational, Average, Fixed, Measure, Rational};
use crate::isomap::Tau;
use crate::product::{independent, ProductSet, ProductSpace};
use crate::torus::{riemann_maximal_set, riemann_sum, StepFunction, TorusSet};
use crate::{Error, Result};

/// How the two sides of a [`BoundCheck`] are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "==",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    pub fn test(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }
}

/// One exact comparison `lhs relation rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    /// Short role name of the inequality, unique within a report.
    pub name: &'static str,
    pub lhs: Rational,
    pub relation: Relation,
    pub rhs: Rational,
    pub holds: bool,
}

impl BoundCheck {
    pub fn new(name: &'static str, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        let holds = relation.test(&lhs, &rhs);
        BoundCheck {
            name,
            lhs,
            relation,
            rhs,
            holds,
        }
    }
}

/// The outcome of an extremal construction.
#[derive(Clone, Debug)]
pub struct ExtremalReport {
    /// `d` for the slice construction, `k` for the private-axis one.
    pub parameter: u64,
    pub l: u64,
    /// The small set (`C`).
    pub small_set: Measure,
    /// The large set (`G`, or the union of the `C_j`).
    pub large_set: Measure,
    /// The smallest value of the maximal function of `1_C` over the large
    /// set.
    pub threshold_attained: Rational,
    pub checks: Vec<BoundCheck>,
}

impl ExtremalReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// For every atom, the largest density `|B ∩ set| / |B|` over rectangles
/// `B` with divisor in `divisors` containing it, as `(count, size)`.
fn indicator_maximal(space: &ProductSpace, set: &ProductSet, divisors: &IndexSet) -> Result<Vec<(u32, u32)>> {
    if divisors.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let mut best = vec![(0u32, 1u32); space.len()];
    for m in divisors.iter() {
        let exps = space.exponents_of(m)?;
        let ids = space.cell_ids(&exps)?;
        let mut counts = vec![0u32; m as usize];
        for a in set.iter() {
            counts[ids[a] as usize] += 1;
        }
        let size = (space.size() / m) as u32;
        for (slot, &id) in best.iter_mut().zip(&ids) {
            let c = counts[id as usize];
            if c as u64 * slot.1 as u64 > slot.0 as u64 * size as u64 {
                *slot = (c, size);
            }
        }
    }
    Ok(best)
}

fn measure_q(m: Measure) -> Rational {
    m.to_rational()
}

fn int_q(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// An exact rational upper bound for `1 - e^{-1/2}`.
fn one_minus_exp_neg_half_upper() -> Rational {
    let (_, upper) = exp_tail_bounds(&rational(1, 2), 0, 40);
    Rational::one() - upper.recip()
}

/// The slice construction over the first `2d` primes.
///
/// `G_k` is the union of the slices `{x_k = i}`, `i < [p_k / d]`, on the
/// axes `k = d+1, ..., 2d` (1-based), `G` their union and `C` their
/// intersection.
pub fn extremal_slice_sets(d: usize, budget: u64) -> Result<ExtremalReport> {
    if d < 2 {
        return Err(Error::Precondition("d must be at least 2"));
    }
    let space = ProductSpace::primorial(2 * d, budget)?;
    let primes = space.primes().to_vec();
    let dq = int_q(d as u64);
    let mut checks = Vec::new();

    let blocks: Vec<ProductSet> = (d..2 * d)
        .map(|axis| {
            let width = primes[axis] / d as u64;
            AtomSet::from_fn(space.len(), |a| space.coordinate(a, axis) < width)
        })
        .collect();
    let block_measures: Vec<Rational> = blocks.iter().map(|b| measure_q(b.measure())).collect();
    for m in &block_measures {
        checks.push(BoundCheck::new("block upper", m.clone(), Relation::Le, dq.recip()));
        checks.push(BoundCheck::new(
            "block lower",
            m.clone(),
            Relation::Gt,
            (int_q(2) * &dq).recip(),
        ));
    }

    let indep = independent(&space, &blocks)?;
    checks.push(BoundCheck::new(
        "blocks independent",
        int_q(indep as u64),
        Relation::Eq,
        Rational::one(),
    ));

    let mut union = AtomSet::empty(space.len());
    let mut inter = AtomSet::full(space.len());
    for b in &blocks {
        union.union_with(b);
        inter.intersect_with(b);
    }
    let g = measure_q(union.measure());
    let c = measure_q(inter.measure());
    let complement_product = block_measures
        .iter()
        .fold(Rational::one(), |acc, m| acc * (Rational::one() - m));
    let product = block_measures.iter().fold(Rational::one(), |acc, m| acc * m);
    checks.push(BoundCheck::new(
        "union from independence",
        g.clone(),
        Relation::Eq,
        Rational::one() - complement_product,
    ));
    checks.push(BoundCheck::new(
        "intersection from independence",
        c.clone(),
        Relation::Eq,
        product,
    ));
    let lower_power = (Rational::one() - (int_q(2) * &dq).recip()).pow(d as i32);
    checks.push(BoundCheck::new(
        "union above power bound",
        g.clone(),
        Relation::Gt,
        Rational::one() - lower_power,
    ));
    checks.push(BoundCheck::new(
        "union above exponential bound",
        g.clone(),
        Relation::Gt,
        one_minus_exp_neg_half_upper(),
    ));
    checks.push(BoundCheck::new(
        "union above one third",
        g.clone(),
        Relation::Gt,
        rational(1, 3),
    ));
    checks.push(BoundCheck::new(
        "intersection upper",
        c.clone(),
        Relation::Le,
        dq.pow(-(d as i32)),
    ));

    let divisors = enumerate_e_d(2 * d)?;
    let best = indicator_maximal(&space, &inter, &divisors)?;
    let attained = union
        .iter()
        .map(|a| best[a])
        .min_by(|x, y| (x.0 as u64 * y.1 as u64).cmp(&(y.0 as u64 * x.1 as u64)))
        .map(|(c, s)| rational(c as i128, s as i128))
        .unwrap_or_else(Rational::zero);
    checks.push(BoundCheck::new(
        "maximal density on union",
        attained.clone(),
        Relation::Gt,
        (int_q(2) * &dq).pow(1 - d as i32),
    ));

    Ok(ExtremalReport {
        parameter: d as u64,
        l: space.size(),
        small_set: inter.measure(),
        large_set: union.measure(),
        threshold_attained: attained,
        checks,
    })
}

/// The private-axis construction together with its circle pullback.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub report: ExtremalReport,
    /// The orders `D_k`.
    pub orders: IndexSet,
    /// The prime chosen for each order, in the order of `orders`.
    pub private_primes: Vec<u64>,
    /// `r_j = [delta p_j] + 1`.
    pub digits: Vec<u64>,
    /// `|{M_{l/D_k} 1_C > delta}|` on the product space.
    pub product_level: Measure,
    /// The circle set `G`, the preimage of `C`.
    pub pullback: TorusSet,
    /// `|{R_{D_k} 1_G > delta}|` on the circle.
    pub torus_level: Measure,
    /// `|{R_{D_k} 1_G >= delta}| / |G|`.
    pub sweep_ratio: Rational,
}

/// For every order, a prime whose valuation in it is strictly larger than
/// in every other order (the smallest such prime). Fails if some order
/// divides the least common multiple of the others.
pub fn private_primes(orders: &[u64]) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(orders.len());
    for (j, &n) in orders.iter().enumerate() {
        let candidate = factorize(n).factors().iter().find_map(|&(p, e)| {
            let beats_others = orders.iter().enumerate().all(|(i, &m)| {
                if i == j {
                    return true;
                }
                let mut v = 0;
                let mut rest = m;
                while rest % p == 0 {
                    rest /= p;
                    v += 1;
                }
                v < e
            });
            beats_others.then_some(p)
        });
        out.push(candidate.ok_or(Error::Precondition(
            "an order divides the least common multiple of the others",
        ))?);
    }
    Ok(out)
}

fn delta_parts(delta: &Rational) -> Result<(u64, u64)> {
    if *delta <= Rational::zero() || *delta >= Rational::one() {
        return Err(Error::Precondition("delta must lie strictly between 0 and 1"));
    }
    let num = delta.numer().to_u64().ok_or(Error::Overflow("delta numerator"))?;
    let den = delta.denom().to_u64().ok_or(Error::Overflow("delta denominator"))?;
    Ok((num, den))
}

/// The private-axis construction for the first `k` primes.
pub fn rudin_sets(k: usize, delta: &Rational, budget: u64) -> Result<SweepReport> {
    if k < 2 {
        return Err(Error::Precondition("k must be at least 2"));
    }
    rudin_sets_for(&first_primes(k), delta, budget)
}

/// The private-axis construction for arbitrary orders with the
/// no-divisibility property, at `l = lcm(orders)`.
pub fn rudin_sets_for(orders: &[u64], delta: &Rational, budget: u64) -> Result<SweepReport> {
    let k = orders.len();
    if k < 2 {
        return Err(Error::Precondition("at least two orders are needed"));
    }
    let set = IndexSet::new(orders.iter().copied());
    if set.len() != k || orders.contains(&0) {
        return Err(Error::Precondition("orders must be distinct and positive"));
    }
    let (num, den) = delta_parts(delta)?;
    let privates = private_primes(orders)?;
    let l = lcm_all(orders.iter().copied())?;
    let space = ProductSpace::new(l, budget)?;

    // Axis of each private prime and the weight of one top digit on it.
    let mut axes = Vec::with_capacity(k);
    let mut top_digit = Vec::with_capacity(k);
    let mut digits = Vec::with_capacity(k);
    for &p in &privates {
        let axis = space
            .primes()
            .iter()
            .position(|&q| q == p)
            .ok_or(Error::Mismatch("private prime missing from l"))?;
        axes.push(axis);
        top_digit.push(space.radices()[axis] / p);
        let r = (num as u128 * p as u128 / den as u128) as u64 + 1;
        digits.push(r);
    }
    let below = |a: usize, j: usize| space.coordinate(a, axes[j]) / top_digit[j] < digits[j];
    let cylinders: Vec<ProductSet> = (0..k)
        .map(|i| AtomSet::from_fn(space.len(), |a| (0..k).all(|j| j == i || below(a, j))))
        .collect();
    let core = AtomSet::from_fn(space.len(), |a| (0..k).all(|j| below(a, j)));
    let mut union = AtomSet::empty(space.len());
    for c in &cylinders {
        union.union_with(c);
    }
    let c = measure_q(core.measure());
    let u = measure_q(union.measure());
    let delta_q = rational(num as i128, den as i128);
    let mut checks = Vec::new();

    // Inside each cylinder C_j, every rectangle of level l / n_j meets C in
    // the fraction r_j / p_j of its measure.
    for j in 0..k {
        let q = l / orders[j];
        let exps = space.exponents_of(q)?;
        let ids = space.cell_ids(&exps)?;
        let mut in_cyl = vec![0u64; q as usize];
        let mut in_core = vec![0u64; q as usize];
        for a in cylinders[j].iter() {
            in_cyl[ids[a] as usize] += 1;
        }
        for a in core.iter() {
            in_core[ids[a] as usize] += 1;
        }
        let size = l / q;
        let frac = rational(digits[j] as i128, privates[j] as i128);
        let exact = (0..q as usize)
            .filter(|&b| in_cyl[b] == size)
            .all(|b| rational(in_core[b] as i128, size as i128) == frac);
        checks.push(BoundCheck::new(
            "rectangle density inside cylinder",
            int_q(exact as u64),
            Relation::Eq,
            Rational::one(),
        ));
    }

    let quotients = crate::arith::quotient_set(l, &set)?;
    let best = indicator_maximal(&space, &core, &quotients)?;
    let above = |(c, s): (u32, u32)| c as u128 * den as u128 > num as u128 * s as u128;
    let attained = union
        .iter()
        .map(|a| best[a])
        .min_by(|x, y| (x.0 as u64 * y.1 as u64).cmp(&(y.0 as u64 * x.1 as u64)))
        .map(|(c, s)| rational(c as i128, s as i128))
        .unwrap_or_else(Rational::zero);
    checks.push(BoundCheck::new(
        "maximal density on union",
        attained.clone(),
        Relation::Gt,
        delta_q.clone(),
    ));
    let product_level = Measure::new(best.iter().filter(|&&b| above(b)).count() as u64, l);

    let ratios = privates
        .iter()
        .zip(&digits)
        .fold(Rational::zero(), |acc, (&p, &r)| acc + rational(p as i128, r as i128));
    let kq = int_q(k as u64);
    checks.push(BoundCheck::new(
        "union identity as stated",
        u.clone(),
        Relation::Eq,
        &c * (Rational::one() + &ratios),
    ));
    checks.push(BoundCheck::new(
        "union by inclusion-exclusion",
        u.clone(),
        Relation::Eq,
        &c * (Rational::one() + &ratios - &kq),
    ));
    let multiple = (&kq + Rational::one()) * &c;
    checks.push(BoundCheck::new(
        "union versus k+1 copies",
        u.clone(),
        Relation::Gt,
        multiple.clone(),
    ));
    checks.push(BoundCheck::new(
        "product level set versus k+1 copies",
        measure_q(product_level),
        Relation::Gt,
        multiple,
    ));

    let tau = Tau::new(&space)?;
    let pullback = tau.pull_set(&core)?;
    let torus_max = riemann_maximal_set(&pullback, &set)?;
    let torus_level = torus_max.distribution(&Average::ratio(num, den));
    let gq = measure_q(pullback.measure());
    checks.push(BoundCheck::new("pullback measure", gq.clone(), Relation::Eq, c.clone()));
    checks.push(BoundCheck::new(
        "pullback level set",
        measure_q(torus_level),
        Relation::Eq,
        measure_q(product_level),
    ));
    checks.push(BoundCheck::new(
        "circle level set versus k+1 copies",
        measure_q(torus_level),
        Relation::Ge,
        (&kq + Rational::one()) * &gq,
    ));
    let sweep_ratio = sweepout_ratio(&set, &pullback, delta, l)?;

    Ok(SweepReport {
        report: ExtremalReport {
            parameter: k as u64,
            l,
            small_set: core.measure(),
            large_set: union.measure(),
            threshold_attained: attained,
            checks,
        },
        orders: set,
        private_primes: privates,
        digits,
        product_level,
        pullback,
        torus_level,
        sweep_ratio,
    })
}

/// `|{R_D 1_G >= delta}| / |G|` at resolution `l`, the orders of `D` that
/// divide `l` taking part.
pub fn sweepout_ratio(d: &IndexSet, g: &TorusSet, delta: &Rational, l: u64) -> Result<Rational> {
    if g.atoms().is_empty() {
        return Err(Error::Precondition("set must be nonempty"));
    }
    if *delta <= Rational::zero() {
        return Err(Error::Precondition("delta must be positive"));
    }
    let refined = StepFunction::<u64>::indicator(g).refine(l)?;
    let g = TorusSet::from_atoms(AtomSet::from_fn(l as usize, |a| refined.values()[a] > 0));
    let num = delta.numer().to_u64().ok_or(Error::Overflow("delta numerator"))?;
    let den = delta.denom().to_u64().ok_or(Error::Overflow("delta denominator"))?;
    let max = riemann_maximal_set(&g, &d.divisors_of(l))?;
    let level = max.distribution_ge(&Average::ratio(num, den));
    Ok(level.to_rational() / g.measure().to_rational())
}

/// The three operator conditions for `R_n` on the finite model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorConditions {
    /// Nonnegative inputs give nonnegative outputs.
    pub positive: bool,
    /// `R_n 1 = 1` exactly.
    pub fixes_one: bool,
    /// For each `eps` and each sample set with `|E| < eps^2`:
    /// `|{R_n 1_E > eps}| < eps`.
    pub small_sets: bool,
    /// How many (set, eps) pairs met `|E| < eps^2` and were tested.
    pub small_set_cases: usize,
}

impl OperatorConditions {
    pub fn holds(&self) -> bool {
        self.positive && self.fixes_one && self.small_sets
    }
}

/// Checks positivity on `functions` (those with a negative value are
/// skipped), `R_n 1 = 1` at resolution `l`, and the small-set condition on
/// `sets` for every `eps` in `epsilons`.
pub fn operator_conditions_check(
    n: u64,
    l: u64,
    functions: &[StepFunction<Fixed>],
    sets: &[TorusSet],
    epsilons: &[Rational],
) -> Result<OperatorConditions> {
    if n == 0 || l % n != 0 {
        return Err(Error::NotDivisor { n, l });
    }
    let positive = functions
        .iter()
        .filter(|f| f.values().iter().all(|&v| v >= Fixed::ZERO))
        .map(|f| riemann_sum(f, n).map(|r| r.values().iter().all(|a| *a >= Average::zero())))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);
    let one = StepFunction::constant(l, Fixed::from_int(1))?;
    let fixes_one = riemann_sum(&one, n)?
        .values()
        .iter()
        .all(|a| *a == Average::of(Fixed::from_int(1)));

    let mut small_sets = true;
    let mut cases = 0;
    for eps in epsilons {
        if *eps <= Rational::zero() {
            return Err(Error::Precondition("eps must be positive"));
        }
        let eps_sq = eps * eps;
        let num = eps.numer().to_u64().ok_or(Error::Overflow("eps numerator"))?;
        let den = eps.denom().to_u64().ok_or(Error::Overflow("eps denominator"))?;
        for e in sets {
            if e.measure().to_rational() >= eps_sq {
                continue;
            }
            cases += 1;
            let r = riemann_sum(&StepFunction::<u64>::indicator(e), n)?;
            let level = r.distribution(&Average::ratio(num, den));
            if level.to_rational() >= *eps {
                small_sets = false;
            }
        }
    }
    Ok(OperatorConditions {
        positive,
        fixes_one,
        small_sets,
        small_set_cases: cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_ATOM_BUDGET;

    #[test]
    fn slice_sets_small_dimensions() {
        let r = extremal_slice_sets(2, DEFAULT_ATOM_BUDGET).unwrap();
        assert_eq!(r.l, 210);
        for c in &r.checks {
            assert!(
                c.holds,
                "{} failed: {} {} {}",
                c.name,
                c.lhs,
                c.relation.symbol(),
                c.rhs
            );
        }
        // |G_3| = 2/5, |G_4| = 3/7.
        assert_eq!(r.small_set.to_rational(), rational(6, 35));
        assert!(r.small_set.to_rational() <= rational(1, 4));
        assert!(r.large_set.to_rational() > rational(1, 3));

        let r = extremal_slice_sets(3, DEFAULT_ATOM_BUDGET).unwrap();
        assert_eq!(r.l, 30030);
        assert!(r.all_hold());
    }

    #[test]
    fn private_primes_detect_divisibility() {
        assert_eq!(private_primes(&[2, 3, 5]).unwrap(), vec![2, 3, 5]);
        assert!(private_primes(&[4, 6, 9]).is_err());
        assert_eq!(private_primes(&[4, 6, 25]).unwrap(), vec![2, 3, 5]);
        assert!(private_primes(&[2, 3, 6]).is_err());
        assert_eq!(private_primes(&[12, 18]).unwrap(), vec![2, 3]);
    }

    #[test]
    fn rudin_small_cases() {
        let r = rudin_sets(2, &rational(1, 4), DEFAULT_ATOM_BUDGET).unwrap();
        assert!(!r.report.all_hold());
        assert!(r.report.check("union versus k+1 copies").unwrap().holds);
        assert!(r.report.check("circle level set versus k+1 copies").unwrap().holds);
        assert!(r.report.check("union by inclusion-exclusion").unwrap().holds);
        assert!(r.report.check("pullback level set").unwrap().holds);
        assert!(r.sweep_ratio > rational(3, 1));

        let r = rudin_sets(2, &rational(1, 2), DEFAULT_ATOM_BUDGET).unwrap();
        assert_eq!(r.digits, vec![2, 2]);
        // r_1 / 2 = 1 leaves axis 2 unconstrained: |C| = 2/3 and the union is everything.
        assert_eq!(r.report.small_set.to_rational(), rational(2, 3));
        assert_eq!(r.report.large_set.to_rational(), Rational::one());
        assert!(!r.report.check("union versus k+1 copies").unwrap().holds);
        assert!(r.report.check("union by inclusion-exclusion").unwrap().holds);
        assert!(r.report.check("maximal density on union").unwrap().holds);
        assert!(r.report.check("rectangle density inside cylinder").unwrap().holds);
    }

    #[test]
    fn rudin_general_orders() {
        let r = rudin_sets_for(&[4, 6, 9], &rational(1, 4), DEFAULT_ATOM_BUDGET);
        assert!(r.is_err(), "6 divides lcm(4, 9)");
        let r = rudin_sets_for(&[4, 9, 25], &rational(1, 4), DEFAULT_ATOM_BUDGET).unwrap();
        assert_eq!(r.report.l, 900);
        assert!(r.report.check("pullback level set").unwrap().holds);
        assert!(r.report.check("maximal density on union").unwrap().holds);
        assert!(r.report.check("union by inclusion-exclusion").unwrap().holds);
    }

    #[test]
    fn sweepout_examples() {
        let full = TorusSet::full(12).unwrap();
        let d = IndexSet::new([3, 4]);
        assert_eq!(sweepout_ratio(&d, &full, &rational(1, 1), 12).unwrap(), rational(1, 1));
        assert_eq!(
            sweepout_ratio(&d, &full, &rational(3, 2), 12).unwrap(),
            Rational::zero()
        );
        let empty = TorusSet::empty(12).unwrap();
        assert!(sweepout_ratio(&d, &empty, &rational(1, 2), 12).is_err());

        let mut prev = Rational::zero();
        for k in 2..=4 {
            let r = rudin_sets(k, &rational(1, 4), DEFAULT_ATOM_BUDGET).unwrap();
            assert!(r.sweep_ratio > int_q(k as u64 + 1));
            assert!(r.sweep_ratio > prev);
            prev = r.sweep_ratio;
        }
    }

    #[test]
    fn operator_conditions() {
        let l = 60;
        let f = StepFunction::from_f64(&(0..l).map(|i| (i % 7) as f64 / 8.0).collect::<Vec<_>>()).unwrap();
        let sets = [
            TorusSet::from_indices(l, [0]).unwrap(),
            TorusSet::from_indices(l, [5, 17]).unwrap(),
        ];
        for n in [1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60] {
            let r = operator_conditions_check(
                n,
                l,
                core::slice::from_ref(&f),
                &sets,
                &[rational(1, 10), rational(1, 5)],
            )
            .unwrap();
            assert!(r.holds());
            assert!(r.small_set_cases >= 1);
        }
        assert!(operator_conditions_check(7, l, &[], &[], &[]).is_err());
    }
}
