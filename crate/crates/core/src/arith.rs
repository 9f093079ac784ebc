//! Integer utilities: factorizations, index sets and the special sets of
//! indexes (`E`, `E_d`, `l/D`) that parameterize the maximal operators.

use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Largest `d` for which the product of the first `d` primes fits in a `u64`.
pub const MAX_PRIMORIAL_INDEX: usize = 15;

/// Prime factorization `n = prod p^e`, primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from explicit pairs, validating primality,
    /// ordering and that the product fits in 64 bits.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Result<Self> {
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Precondition("primes must be strictly increasing"));
            }
        }
        for &(p, e) in &pairs {
            if e == 0 {
                return Err(Error::Precondition("exponents must be positive"));
            }
            if !is_prime(p) {
                return Err(Error::Precondition("factor is not prime"));
            }
        }
        let f = Factorization { factors: pairs };
        f.checked_value()?;
        Ok(f)
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Number of distinct primes.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn value(&self) -> u64 {
        self.checked_value().expect("validated on construction")
    }

    fn checked_value(&self) -> Result<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            p.checked_pow(e)
                .and_then(|q| acc.checked_mul(q))
                .ok_or(Error::Overflow("factorization product"))
        })
    }

    /// The prime powers `p_k^{e_k}`, one per distinct prime.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, e)| p.pow(e)).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// All positive divisors, sorted.
    pub fn divisors(&self) -> IndexSet {
        let mut out = alloc::vec![1u64];
        for &(p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for &d in &out {
                let mut q = d;
                next.push(q);
                for _ in 0..e {
                    q *= p;
                    next.push(q);
                }
            }
            out = next;
        }
        IndexSet::new(out)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factorizes `n` by trial division. `factorize(1)` is the empty product.
///
/// Trial division is adequate for the resolutions used here, whose prime
/// factors are small; a 64-bit semiprime with two large factors is slow.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut factors = Vec::new();
    let mut n = n;
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut n);
    let mut p = 3u64;
    while p.saturating_mul(p) <= n {
        push(p, &mut n);
        p += 2;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Factorization { factors }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = 2u64;
    while out.len() < count {
        if is_prime(c) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// Product of the first `d` primes; `d` ranges over `1..=15`.
pub fn primorial(d: usize) -> Result<u64> {
    if d == 0 {
        return Err(Error::Precondition("primorial index must be at least 1"));
    }
    if d > MAX_PRIMORIAL_INDEX {
        return Err(Error::Overflow("primorial exceeds 64 bits"));
    }
    Ok(first_primes(d).into_iter().product())
}

/// Finite set of positive integers kept as a sorted, deduplicated vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<u64>);

impl IndexSet {
    pub fn new(items: impl IntoIterator<Item = u64>) -> Self {
        let mut v: Vec<u64> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.iter().all(|n| other.contains(n))
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet::new(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.iter().filter(|&n| other.contains(n)).collect())
    }

    /// Members dividing `l`.
    pub fn divisors_of(&self, l: u64) -> IndexSet {
        IndexSet(self.iter().filter(|&n| n != 0 && l % n == 0).collect())
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }
}

impl FromIterator<u64> for IndexSet {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        IndexSet::new(iter)
    }
}

impl From<Vec<u64>> for IndexSet {
    fn from(v: Vec<u64>) -> Self {
        IndexSet::new(v)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("}")
    }
}

/// `l/D = { l/n : n in D }`; every member of `D` must divide `l`.
pub fn quotient_set(l: u64, set: &IndexSet) -> Result<IndexSet> {
    set.iter()
        .map(|n| {
            if n == 0 || l % n != 0 {
                Err(Error::NotDivisor { n, l })
            } else {
                Ok(l / n)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(IndexSet::new)
}

/// The set `E`: products `p_1 ... p_k` with exactly one prime `p_j` left
/// out, for `2 <= k <= k_max`.
pub fn enumerate_e(k_max: usize) -> Result<IndexSet> {
    if k_max < 2 {
        return Err(Error::Precondition("k_max must be at least 2"));
    }
    let primes = first_primes(k_max);
    let mut out = Vec::new();
    for k in 2..=k_max {
        for j in 0..k {
            let mut m = 1u64;
            for (i, &p) in primes[..k].iter().enumerate() {
                if i != j {
                    m = m.checked_mul(p).ok_or(Error::Overflow("member of E"))?;
                }
            }
            out.push(m);
        }
    }
    Ok(IndexSet::new(out))
}

/// `E_d = { p_nu * p_mu * ... * p_d : 1 <= nu < mu <= d + 1 }`, where
/// `mu = d + 1` leaves only `p_nu`.
pub fn enumerate_e_d(d: usize) -> Result<IndexSet> {
    if d < 2 {
        return Err(Error::Precondition("d must be at least 2"));
    }
    if d > MAX_PRIMORIAL_INDEX {
        return Err(Error::Overflow("E_d members exceed 64 bits"));
    }
    let primes = first_primes(d);
    let mut out = Vec::new();
    for nu in 0..d {
        for mu in nu + 1..=d {
            let tail: u64 = primes[mu..].iter().product();
            out.push(primes[nu] * tail);
        }
    }
    Ok(IndexSet::new(out))
}

/// True iff consecutive members divide their successors. The empty set is
/// vacuously a chain.
pub fn is_chain(set: &IndexSet) -> bool {
    set.as_slice().windows(2).all(|w| w[1] % w[0] == 0)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Overflow("lcm"))
}

pub fn lcm_all(items: impl IntoIterator<Item = u64>) -> Result<u64> {
    items.into_iter().try_fold(1u64, lcm)
}
