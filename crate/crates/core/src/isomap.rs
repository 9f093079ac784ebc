//! Digit reversal and the isomorphism between periodic sets of integers,
//! circle atoms and product-space rectangles.
//!
//! A residue `t mod l` is sent to the product atom whose `k`-th coordinate
//! is the `p_k`-reverse (with `l_k` digits) of `t mod p_k^{l_k}`. Under this
//! map the progression `{x = t mod m}` becomes the rectangle `B_m` whose
//! coordinates are the `m_k`-digit reverses of `t mod p_k^{m_k}`, and the
//! Riemann set `I_l(n, t)` becomes a rectangle of measure `n / l`. Riemann
//! maximal functions over `D` therefore have the same distribution as
//! rectangle maximal functions over `l / D`.

use alloc::vec::Vec;

use crate::arith::{quotient_set, IndexSet};
use crate::bits::AtomSet;
use crate::exact::{AtomAverages, Weight};
use crate::product::{product_maximal, ProductSet, ProductSpace, ProductStepFunction, Rectangle};
use crate::torus::{riemann_maximal, StepFunction, TorusSet};
use crate::{Error, Result};

/// Reverses the `k` base-`p` digits of `a` (zero-padded to length `k`).
pub fn p_reverse(a: u64, p: u64, k: u32) -> Result<u64> {
    if p < 2 {
        return Err(Error::Precondition("digit base must be at least 2"));
    }
    let bound = p.checked_pow(k).ok_or(Error::Overflow("p^k"))?;
    if a >= bound {
        return Err(Error::OutOfRange {
            what: "reversal argument",
            value: a,
            bound,
        });
    }
    let mut rest = a;
    let mut out = 0u64;
    for _ in 0..k {
        out = out * p + rest % p;
        rest /= p;
    }
    Ok(out)
}

/// An `l`-periodic set of integers, stored by its residues mod `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicSet {
    residues: AtomSet,
}

impl PeriodicSet {
    pub fn empty(l: u64) -> Result<Self> {
        check_period(l)?;
        Ok(PeriodicSet {
            residues: AtomSet::empty(l as usize),
        })
    }

    pub fn full(l: u64) -> Result<Self> {
        check_period(l)?;
        Ok(PeriodicSet {
            residues: AtomSet::full(l as usize),
        })
    }

    pub fn from_residues(l: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut s = PeriodicSet::empty(l)?;
        for r in residues {
            s.residues.insert((r % l) as usize);
        }
        Ok(s)
    }

    /// The progression `{x : x = t mod m}` written with period `l`.
    pub fn progression(l: u64, m: u64, t: u64) -> Result<Self> {
        if m == 0 || l % m != 0 {
            return Err(Error::NotDivisor { n: m, l });
        }
        if t >= m {
            return Err(Error::OutOfRange {
                what: "progression offset",
                value: t,
                bound: m,
            });
        }
        PeriodicSet::from_residues(l, (0..l / m).map(|u| m * u + t))
    }

    pub fn period(&self) -> u64 {
        self.residues.len() as u64
    }

    pub fn residues(&self) -> &AtomSet {
        &self.residues
    }

    pub fn contains(&self, x: i64) -> bool {
        self.residues.contains(x.rem_euclid(self.period() as i64) as usize)
    }

    /// Density: residues over period.
    pub fn density(&self) -> crate::exact::Measure {
        self.residues.measure()
    }

    /// The same set written with the longer period `l`.
    pub fn with_period(&self, l: u64) -> Result<Self> {
        let p = self.period();
        if l % p != 0 {
            return Err(Error::NotDivisor { n: p, l });
        }
        check_period(l)?;
        Ok(PeriodicSet {
            residues: AtomSet::from_fn(l as usize, |x| self.residues.contains(x % p as usize)),
        })
    }

    pub fn union(&self, other: &PeriodicSet) -> Result<Self> {
        let l = crate::arith::lcm(self.period(), other.period())?;
        let mut a = self.with_period(l)?;
        a.residues.union_with(&other.with_period(l)?.residues);
        Ok(a)
    }

    pub fn complement(&self) -> Self {
        PeriodicSet {
            residues: self.residues.complement(),
        }
    }
}

fn check_period(l: u64) -> Result<()> {
    if l == 0 {
        return Err(Error::Precondition("period must be positive"));
    }
    usize::try_from(l).map_err(|_| Error::Overflow("period exceeds the address space"))?;
    Ok(())
}

/// Coordinates of the image of the residue atom `t`: the `p_k`-reverse of
/// `t mod p_k^{l_k}` on every axis.
pub fn alpha_atom(space: &ProductSpace, t: u64) -> Result<Vec<u64>> {
    if t >= space.size() {
        return Err(Error::OutOfRange {
            what: "residue",
            value: t,
            bound: space.size(),
        });
    }
    space
        .residues(t)
        .iter()
        .enumerate()
        .map(|(k, &r)| p_reverse(r, space.primes()[k], space.exponents()[k]))
        .collect()
}

/// The rectangle image of the progression `{x = t mod m}` for `m | l`:
/// `B_m` at the `m_k`-digit reverses of `t mod p_k^{m_k}`.
pub fn alpha_progression(space: &ProductSpace, m: u64, t: u64) -> Result<Rectangle> {
    let exps = space.exponents_of(m)?;
    if t >= m {
        return Err(Error::OutOfRange {
            what: "progression offset",
            value: t,
            bound: m,
        });
    }
    let coords = exps
        .iter()
        .enumerate()
        .map(|(k, &e)| {
            let p = space.primes()[k];
            p_reverse(t % p.pow(e), p, e)
        })
        .collect::<Result<Vec<_>>>()?;
    Rectangle::new(space, exps, coords)
}

/// The atom-level map from `Z/l` (equivalently the circle atoms at
/// resolution `l`) to the product atoms, with its inverse.
#[derive(Clone, Debug)]
pub struct Tau {
    space: ProductSpace,
    forward: Vec<u32>,
    inverse: Vec<u32>,
}

impl Tau {
    pub fn new(space: &ProductSpace) -> Result<Self> {
        let n = space.len();
        let mut forward = Vec::with_capacity(n);
        // Reverse tables per axis make this one table lookup per axis.
        let tables: Vec<Vec<u64>> = (0..space.dim())
            .map(|k| {
                let (p, e) = (space.primes()[k], space.exponents()[k]);
                (0..space.radices()[k])
                    .map(|r| p_reverse(r, p, e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut strides = Vec::with_capacity(space.dim());
        let mut s = 1u64;
        for &r in space.radices() {
            strides.push(s);
            s *= r;
        }
        for t in 0..n as u64 {
            let mut a = 0u64;
            for k in 0..space.dim() {
                a += tables[k][(t % space.radices()[k]) as usize] * strides[k];
            }
            forward.push(a as u32);
        }
        let mut inverse = alloc::vec![u32::MAX; n];
        for (t, &a) in forward.iter().enumerate() {
            if inverse[a as usize] != u32::MAX {
                return Err(Error::Mismatch("digit-reversal map is not injective"));
            }
            inverse[a as usize] = t as u32;
        }
        Ok(Tau {
            space: space.clone(),
            forward,
            inverse,
        })
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    /// Product atom assigned to the circle atom (or residue) `t`.
    pub fn forward(&self, t: usize) -> usize {
        self.forward[t] as usize
    }

    pub fn inverse(&self, atom: usize) -> usize {
        self.inverse[atom] as usize
    }

    /// Image of a periodic set whose period divides `l`.
    pub fn alpha_set(&self, a: &PeriodicSet) -> Result<ProductSet> {
        let a = a.with_period(self.space.size())?;
        let mut out = AtomSet::empty(self.space.len());
        for t in a.residues.iter() {
            out.insert(self.forward(t));
        }
        Ok(out)
    }

    /// Image of a set of circle atoms at resolution `l`.
    pub fn push_set(&self, set: &TorusSet) -> Result<ProductSet> {
        self.check_resolution(set.resolution())?;
        let mut out = AtomSet::empty(self.space.len());
        for t in set.atoms().iter() {
            out.insert(self.forward(t));
        }
        Ok(out)
    }

    /// Preimage on the circle of a product set.
    pub fn pull_set(&self, set: &ProductSet) -> Result<TorusSet> {
        if set.len() != self.space.len() {
            return Err(Error::Mismatch("set does not live on this space"));
        }
        let mut out = AtomSet::empty(self.space.len());
        for a in set.iter() {
            out.insert(self.inverse(a));
        }
        Ok(TorusSet::from_atoms(out))
    }

    /// `g = f o tau^{-1}` for a step function at resolution `l` (or at a
    /// resolution dividing `l`).
    pub fn pushforward<W: Weight>(&self, f: &StepFunction<W>) -> Result<ProductStepFunction<W>> {
        let f = f.refine(self.space.size())?;
        let mut values = alloc::vec![W::default(); self.space.len()];
        for (t, &v) in f.values().iter().enumerate() {
            values[self.forward(t)] = v;
        }
        ProductStepFunction::new(&self.space, values)
    }

    /// `f = g o tau`.
    pub fn pullback<W: Weight>(&self, g: &ProductStepFunction<W>) -> Result<StepFunction<W>> {
        let values = (0..self.space.len()).map(|t| g.values()[self.forward(t)]).collect();
        StepFunction::new(values)
    }

    fn check_resolution(&self, l: u64) -> Result<()> {
        if l != self.space.size() {
            return Err(Error::Mismatch("resolution differs from the space size"));
        }
        Ok(())
    }
}

/// The circle set `beta_l(A)`: atoms `[k/l, (k+1)/l)` for residues `k` in `A`.
pub fn beta(l: u64, a: &PeriodicSet) -> Result<TorusSet> {
    Ok(TorusSet::from_atoms(a.with_period(l)?.residues))
}

/// For `m | l` and `t < m`, the vectors `((m u + t) mod p_k^{l_k})_k` for
/// `u = 0, ..., l/m - 1`, in order of `u`.
pub fn progression_residue_vectors(space: &ProductSpace, m: u64, t: u64) -> Result<Vec<Vec<u64>>> {
    if m == 0 || space.size() % m != 0 {
        return Err(Error::NotDivisor { n: m, l: space.size() });
    }
    if t >= m {
        return Err(Error::OutOfRange {
            what: "progression offset",
            value: t,
            bound: m,
        });
    }
    Ok((0..space.size() / m).map(|u| space.residues(m * u + t)).collect())
}

/// Outcome of comparing a Riemann maximal function with the rectangle
/// maximal function of its pushforward.
#[derive(Clone, Debug)]
pub struct DistributionComparison<W> {
    pub l: u64,
    pub orders: IndexSet,
    pub quotients: IndexSet,
    pub torus: AtomAverages<W>,
    pub product: AtomAverages<W>,
    /// Both functions agree atom by atom through the digit-reversal map.
    pub pointwise: bool,
    /// Both functions have the same sorted values.
    pub same_multiset: bool,
}

impl<W> DistributionComparison<W> {
    pub fn holds(&self) -> bool {
        self.pointwise && self.same_multiset
    }
}

/// Computes `sup_{n in D, n | l} R_n |f|` on the circle and `M_{l/D} g` for
/// `g = f o tau^{-1}` on the product space, and compares them exactly.
pub fn verify_distribution_equality<W: Weight>(
    f: &StepFunction<W>,
    d: &IndexSet,
    tau: &Tau,
) -> Result<DistributionComparison<W>> {
    let l = tau.space().size();
    let orders = d.divisors_of(l);
    if orders.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let quotients = quotient_set(l, &orders)?;
    let torus = riemann_maximal(f, &orders, l)?;
    let g = tau.pushforward(f)?;
    let product = product_maximal(tau.space(), &g, &quotients)?;
    let pointwise = (0..torus.len()).all(|t| torus.get(t) == product.get(tau.forward(t)));
    let same_multiset = torus.same_distribution(&product);
    Ok(DistributionComparison {
        l,
        orders,
        quotients,
        torus,
        product,
        pointwise,
        same_multiset,
    })
}

/// Counts from an exhaustive check of the digit-reversal map at one `l`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsomorphismCheck {
    pub l: u64,
    /// The map is a bijection on atoms; all atoms have measure `1 / l` on
    /// both sides, so this also makes it measure preserving.
    pub bijective: bool,
    /// Progressions `{x = t mod m}` with `m | l`, `t < m` examined.
    pub progressions: u64,
    /// Progressions whose image is not exactly the predicted rectangle.
    pub progression_failures: u64,
    /// Riemann sets `I_l(l/m, t)` whose image is not that rectangle.
    pub riemann_failures: u64,
}

impl IsomorphismCheck {
    pub fn holds(&self) -> bool {
        self.bijective && self.progression_failures == 0 && self.riemann_failures == 0
    }
}

/// Checks that the digit-reversal map at resolution `l` is a bijection and
/// sends every progression `{x = t mod m}` (and the Riemann set of order
/// `l / m` through `t`) onto the rectangle `B_m` predicted by
/// [`alpha_progression`].
pub fn check_isomorphism(l: u64, budget: u64) -> Result<IsomorphismCheck> {
    let space = ProductSpace::new(l, budget)?;
    let mut out = IsomorphismCheck {
        l,
        ..IsomorphismCheck::default()
    };
    let tau = match Tau::new(&space) {
        Ok(t) => t,
        Err(Error::Mismatch(_)) => return Ok(out),
        Err(e) => return Err(e),
    };
    out.bijective = (0..space.len()).all(|t| tau.inverse(tau.forward(t)) == t);
    for m in space.factorization().divisors().iter() {
        for t in 0..m {
            out.progressions += 1;
            let rect = crate::product::rectangle_atoms(&space, &alpha_progression(&space, m, t)?);
            if tau.alpha_set(&PeriodicSet::progression(l, m, t)?)? != rect {
                out.progression_failures += 1;
            }
            let riemann = crate::torus::RiemannSet::new(l, l / m, t)?.to_set()?;
            if tau.push_set(&riemann)? != rect {
                out.riemann_failures += 1;
            }
        }
    }
    Ok(out)
}

/// Counts from an exhaustive check of digit reversal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReversalCheck {
    pub cases: u64,
    /// `rev(rev(s)) != s` or `rev` not injective.
    pub involution_failures: u64,
    /// Splitting identity cases examined.
    pub split_cases: u64,
    /// Cases where `rev_j(p^i v + t) != p^{j-i} rev_i(t) + rev_{j-i}(v)`.
    pub split_failures: u64,
}

impl ReversalCheck {
    pub fn holds(&self) -> bool {
        self.involution_failures == 0 && self.split_failures == 0
    }
}

/// Digit reversal for every base `2 <= p <= p_max` and digit count
/// `0 <= j <= j_max`: involution and injectivity on `[0, p^j)`, and the
/// splitting of a number into its low `i` and high `j - i` digits.
pub fn check_reversal(p_max: u64, j_max: u32) -> Result<ReversalCheck> {
    let mut out = ReversalCheck::default();
    for p in 2..=p_max {
        for j in 0..=j_max {
            let bound = p.checked_pow(j).ok_or(Error::Overflow("p^j"))?;
            let mut seen = AtomSet::empty(bound as usize);
            for s in 0..bound {
                out.cases += 1;
                let r = p_reverse(s, p, j)?;
                if p_reverse(r, p, j)? != s || seen.contains(r as usize) {
                    out.involution_failures += 1;
                }
                seen.insert(r as usize);
            }
            for i in 0..=j {
                let low = p.pow(i);
                let high = p.pow(j - i);
                for v in 0..high {
                    for t in 0..low {
                        out.split_cases += 1;
                        let lhs = p_reverse(low * v + t, p, j)?;
                        let rhs = high * p_reverse(t, p, i)? + p_reverse(v, p, j - i)?;
                        if lhs != rhs {
                            out.split_failures += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
