//! Seeded random instances for the stress suites.
//!
//! Every trial owns its own ChaCha stream derived from the run seed, an
//! experiment tag and the trial index, so results do not depend on how
//! trials are scheduled across threads.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use riemax_core::arith::{factorize, is_chain, IndexSet};
use riemax_core::exact::Fixed;
use riemax_core::product::{FRect, ProductSet, ProductSpace, ProductStepFunction};
use riemax_core::torus::{RiemannSet, StepFunction};
use riemax_core::Result;

/// Stream tags keep the experiments' random streams apart.
#[derive(Clone, Copy, Debug)]
pub enum Stream {
    Jessen = 1,
    Selection = 2,
    Distribution = 3,
    Covering = 4,
    Overlap = 5,
    WeakType = 6,
    Orlicz = 7,
    Operators = 8,
}

/// The generator for trial `trial` of the stream `stream` under `seed`.
pub fn trial_rng(seed: u64, stream: Stream, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((stream as u64) << 40) | trial);
    rng
}

/// A value uniform on the grid `k / 2^32`, `0 <= k < 2^32`, held exactly.
pub fn unit_fixed(rng: &mut impl Rng) -> Fixed {
    Fixed::from_raw((rng.gen::<u32>() as i128) << 32)
}

/// A step function at resolution `l`: each atom is nonzero with
/// probability `density`, and nonzero values are `scale` times a uniform
/// draw from `[0, 1)`.
pub fn step_function(rng: &mut impl Rng, l: u64, density: f64, scale: u64) -> Result<StepFunction<Fixed>> {
    let values = (0..l)
        .map(|_| {
            if rng.gen_bool(density) {
                Fixed::from_raw(unit_fixed(rng).raw() * scale as i128)
            } else {
                Fixed::ZERO
            }
        })
        .collect();
    StepFunction::new(values)
}

/// A density drawn log-uniformly from `[1/64, 1]`.
pub fn density(rng: &mut impl Rng) -> f64 {
    2f64.powf(-rng.gen_range(0.0..6.0))
}

fn divisors(l: u64) -> Vec<u64> {
    factorize(l).divisors().as_slice().to_vec()
}

/// A random divisibility chain of divisors of `l` with one to six members.
pub fn chain(rng: &mut impl Rng, l: u64) -> IndexSet {
    let divs = divisors(l);
    let mut current = *divs.choose(rng).expect("1 divides l");
    let mut members = vec![current];
    let target = rng.gen_range(1..=6);
    while members.len() < target {
        let next: Vec<u64> = divs
            .iter()
            .copied()
            .filter(|&m| m != current && m % current == 0)
            .collect();
        match next.choose(rng) {
            Some(&m) => {
                members.push(m);
                current = m;
            }
            None => break,
        }
    }
    let out = IndexSet::new(members);
    debug_assert!(is_chain(&out));
    out
}

/// A nonempty random subset of the divisors of `l`.
pub fn divisor_subset(rng: &mut impl Rng, l: u64) -> IndexSet {
    let divs = divisors(l);
    let p = rng.gen_range(0.1..0.9);
    let mut picked: Vec<u64> = divs.iter().copied().filter(|_| rng.gen_bool(p)).collect();
    if picked.is_empty() {
        picked.push(*divs.choose(rng).expect("1 divides l"));
    }
    IndexSet::new(picked)
}

/// A resolution in `[6, l_max]` with at least two distinct prime factors.
pub fn composite_resolution(rng: &mut impl Rng, l_max: u64) -> u64 {
    loop {
        let l = rng.gen_range(6..=l_max.max(6));
        if factorize(l).len() >= 2 {
            return l;
        }
    }
}

/// Riemann sets at resolution `l` with orders drawn from `orders`.
pub fn riemann_family(rng: &mut impl Rng, l: u64, orders: &IndexSet, size: usize) -> Result<Vec<RiemannSet>> {
    (0..size)
        .map(|_| {
            let n = *orders.as_slice().choose(rng).expect("orders are nonempty");
            let t = rng.gen_range(0..l / n);
            RiemannSet::new(l, n, t)
        })
        .collect()
}

/// A Bernoulli thinning of `family` at a random density; never empty.
pub fn subfamily(rng: &mut impl Rng, family: &[FRect]) -> Vec<FRect> {
    let keep = density(rng).max(1.0 / family.len() as f64);
    let mut out: Vec<FRect> = family.iter().filter(|_| rng.gen_bool(keep)).cloned().collect();
    if out.is_empty() {
        out.push(family.choose(rng).expect("family is nonempty").clone());
    }
    out
}

/// A set `A` on one axis and slices on other distinct axes whose measures
/// sum to at most 1/2. Each slice is a random set of coordinate values.
pub fn overlap_family(rng: &mut impl Rng, space: &ProductSpace) -> Result<(ProductSet, Vec<ProductSet>)> {
    let mut axes: Vec<usize> = (0..space.dim()).collect();
    axes.shuffle(rng);
    let a_axis = axes[0];
    let radix = space.radices()[a_axis];
    let a_size = rng.gen_range(1..=radix);
    let a_values = sample_values(rng, radix, a_size);
    let a = space.axis_set(a_axis, &a_values)?;

    let count = rng.gen_range(1..space.dim());
    // Remaining mass, exactly, as num / den.
    let (mut num, mut den) = (1u128, 2u128);
    let mut sets = Vec::new();
    for &axis in &axes[1..=count] {
        let radix = space.radices()[axis];
        let max = (num * radix as u128 / den) as u64;
        let size = rng.gen_range(0..=max.min(radix));
        num = num * radix as u128 - size as u128 * den;
        den *= radix as u128;
        sets.push(space.axis_set(axis, &sample_values(rng, radix, size))?);
    }
    Ok((a, sets))
}

fn sample_values(rng: &mut impl Rng, radix: u64, size: u64) -> Vec<u64> {
    let mut all: Vec<u64> = (0..radix).collect();
    all.shuffle(rng);
    all.truncate(size as usize);
    all.sort_unstable();
    all
}

/// A random nonnegative function on the product space with values
/// `scale * U[0, 1)` on a random fraction of the atoms.
pub fn product_function(rng: &mut impl Rng, space: &ProductSpace, scale: u64) -> Result<ProductStepFunction<Fixed>> {
    let density = density(rng);
    let f = step_function(rng, space.size(), density, scale)?;
    ProductStepFunction::new(space, f.values().to_vec())
}

/// A random set of atoms at resolution `l` with `size` members.
pub fn atom_subset(rng: &mut impl Rng, l: u64, size: usize) -> Vec<usize> {
    rand::seq::index::sample(rng, l as usize, size.min(l as usize)).into_vec()
}
