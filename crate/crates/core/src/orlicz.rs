//! Growth functions and Orlicz norms.
//!
//! `alpha(x) = x` on `[0, 1]` and `x^(x-1)` beyond; `psi` and `phi` are the
//! integrals of `alpha` and of its inverse, a complementary pair of
//! N-functions. `phi` grows like `x ln x / ln ln x`. Integrals are computed
//! by adaptive Simpson quadrature with a closed form on `[0, 1]`.

use alloc::vec::Vec;

use libm::{exp, fabs, log, pow};

use crate::{Error, Result};

/// Relative tolerance of every quadrature in this module.
pub const QUADRATURE_TOL: f64 = 1e-9;
/// Relative tolerance of the inverse of `alpha`.
pub const INVERSE_TOL: f64 = 1e-12;
/// Relative tolerance of the Orlicz-norm bisection.
pub const NORM_TOL: f64 = 1e-12;

pub fn alpha_fn(x: f64) -> f64 {
    if x <= 1.0 {
        x
    } else {
        pow(x, x - 1.0)
    }
}

/// `ln alpha(x)` for `x > 1`, finite far beyond the overflow of `alpha`.
pub fn ln_alpha(x: f64) -> f64 {
    (x - 1.0) * log(x)
}

/// The unique `x >= 0` with `alpha(x) = y`.
pub fn alpha_inv(y: f64) -> f64 {
    if y <= 1.0 {
        return y.max(0.0);
    }
    alpha_inv_ln(log(y))
}

/// The unique `x > 1` with `ln alpha(x) = ln_y`, for `ln_y > 0`. Works in
/// log space, so `y` itself may be far outside the `f64` range.
pub fn alpha_inv_ln(ln_y: f64) -> f64 {
    if ln_y <= 0.0 {
        return exp(ln_y);
    }
    let mut lo = 1.0;
    let mut hi = 2.0;
    while ln_alpha(hi) < ln_y {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > INVERSE_TOL * lo {
        let mid = 0.5 * (lo + hi);
        if ln_alpha(mid) < ln_y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Adaptive Simpson quadrature of a positive integrand with local relative
/// acceptance, so the result carries relative error about `rel_tol`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    const MIN_DEPTH: u32 = 4;
    const MAX_DEPTH: u32 = 48;
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let sum = left + right;
        if !sum.is_finite() {
            return Err(Error::Overflow("integrand exceeds the f64 range"));
        }
        let delta = sum - whole;
        if depth >= MIN_DEPTH && fabs(delta) <= 15.0 * tol * fabs(sum) {
            return Ok(sum + delta / 15.0);
        }
        if depth >= MAX_DEPTH {
            return Err(Error::NoConvergence("adaptive Simpson depth"));
        }
        Ok(
            recurse(f, a, m, fa, flm, fm, left, tol, depth + 1)?
                + recurse(f, m, b, fm, frm, fb, right, tol, depth + 1)?,
        )
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, rel_tol, 0)
}

/// `Psi(x) = integral of alpha over [0, |x|]`.
pub fn psi(x: f64) -> Result<f64> {
    let x = fabs(x);
    if x <= 1.0 {
        return Ok(0.5 * x * x);
    }
    Ok(0.5 + integrate(&alpha_fn, 1.0, x, QUADRATURE_TOL)?)
}

/// Derivative of `alpha` on `(1, inf)`.
pub fn alpha_prime(y: f64) -> f64 {
    pow(y, y - 1.0) * ((y - 1.0) / y + log(y))
}

/// `Phi(x) = integral of alpha^{-1} over [0, |x|]`.
///
/// `alpha^{-1}` has a square-root cusp at 1, so the integral over `[1, x]`
/// is taken after substituting `t = alpha(y)`, which turns it into the
/// smooth integral of `y alpha'(y)` over `[1, alpha^{-1}(x)]`.
pub fn phi(x: f64) -> Result<f64> {
    let x = fabs(x);
    if x <= 1.0 {
        return Ok(0.5 * x * x);
    }
    let top = alpha_inv(x);
    Ok(0.5 + integrate(&|y| y * alpha_prime(y), 1.0, top, QUADRATURE_TOL)?)
}

/// `x ln(1 + x) / ln ln(3 + x)`.
pub fn phi2(x: f64) -> f64 {
    let x = fabs(x);
    x * log(1.0 + x) / log(log(3.0 + x))
}

/// `x ln^{d-1}(1 + x)`: the shift by one keeps it convex, increasing and
/// zero at zero on all of `[0, inf)`.
pub fn x_log_pow(x: f64, d: u32) -> f64 {
    let x = fabs(x);
    x * pow(log(1.0 + x), d.saturating_sub(1) as f64)
}

/// Young's inequality `u v <= Phi(u) + Psi(v)`, allowing the quadrature
/// tolerance on the right-hand side.
pub fn young_check(u: f64, v: f64) -> Result<bool> {
    let rhs = phi(u)? + psi(v)?;
    Ok(u * v <= rhs * (1.0 + 10.0 * QUADRATURE_TOL))
}

/// The growth functions used as Orlicz classes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GrowthFunction {
    Alpha,
    AlphaInverse,
    Psi,
    Phi,
    /// `x ln(1 + x) / ln ln(3 + x)`.
    PhiLogLog,
    /// `x ln^{d-1}(1 + x)` with the given `d`.
    XLogPow(u32),
    /// `x^p` for `p >= 1`.
    Power(f64),
}

impl GrowthFunction {
    pub fn eval(&self, x: f64) -> Result<f64> {
        let v = match *self {
            GrowthFunction::Alpha => alpha_fn(fabs(x)),
            GrowthFunction::AlphaInverse => alpha_inv(fabs(x)),
            GrowthFunction::Psi => psi(x)?,
            GrowthFunction::Phi => phi(x)?,
            GrowthFunction::PhiLogLog => phi2(x),
            GrowthFunction::XLogPow(d) => x_log_pow(x, d),
            GrowthFunction::Power(p) => pow(fabs(x), p),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow("growth function value"))
        }
    }

    /// The `x >= 0` with `G(x) = y`, by bisection.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if y <= 0.0 {
            return Ok(0.0);
        }
        match *self {
            GrowthFunction::Alpha => return Ok(alpha_inv(y)),
            GrowthFunction::Power(p) => return Ok(pow(y, 1.0 / p)),
            _ => {}
        }
        let mut lo = 0.0;
        let mut hi = 1.0;
        while self.eval(hi)? < y {
            lo = hi;
            hi *= 2.0;
            if hi > 1e300 {
                return Err(Error::NoConvergence("growth function inverse bracket"));
            }
        }
        for _ in 0..200 {
            if hi - lo <= NORM_TOL * hi {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.eval(mid)? < y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// `mean G(|f| / c)` over the given atom values.
pub fn modular(values: &[f64], g: GrowthFunction, c: f64) -> Result<f64> {
    let mut acc = 0.0;
    for &v in values {
        acc += g.eval(fabs(v) / c)?;
    }
    Ok(acc / values.len() as f64)
}

/// The Luxemburg norm: the least `c > 0` with `mean G(|f| / c) <= 1`,
/// where the mean is over equally weighted atoms.
pub fn orlicz_norm(values: &[f64], g: GrowthFunction) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Precondition("no atoms"));
    }
    let max = values.iter().fold(0.0f64, |m, v| m.max(fabs(*v)));
    if max == 0.0 {
        return Ok(0.0);
    }
    // With c = max / G^{-1}(1) every term is at most 1.
    let mut hi = max / g.inverse(1.0)?;
    while modular(values, g, hi)? > 1.0 {
        hi *= 2.0;
    }
    let mut lo = 0.5 * hi;
    let mut steps = 0;
    while modular(values, g, lo)? <= 1.0 {
        hi = lo;
        lo *= 0.5;
        steps += 1;
        if steps > 2000 {
            return Err(Error::NoConvergence("Orlicz norm lower bracket"));
        }
    }
    for _ in 0..200 {
        if hi - lo <= NORM_TOL * hi {
            return Ok(hi);
        }
        let mid = 0.5 * (lo + hi);
        if modular(values, g, mid)? <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::NoConvergence("Orlicz norm bisection"))
}

/// `alpha^{-1}(x) ln x / ln ln x`, with `x = exp(ln_x)`.
pub fn inverse_growth_ratio(ln_x: f64) -> f64 {
    alpha_inv_ln(ln_x) * ln_x / log(ln_x)
}

/// `alpha^{-1}(x) ln ln x / ln x`, with `x = exp(ln_x)`: tends to 1 as
/// `x` grows, slowly.
pub fn inverse_growth_ratio_normalized(ln_x: f64) -> f64 {
    alpha_inv_ln(ln_x) * log(ln_x) / ln_x
}

/// Lower envelope, value and upper envelope of `Phi` at `x > 2e`:
/// `x ln(x/2) / (2 ln ln(x/2))`, `Phi(x)`, `x ln x / ln ln x`.
pub fn phi_envelope(x: f64) -> Result<(f64, f64, f64)> {
    if x <= 2.0 * core::f64::consts::E {
        return Err(Error::Precondition("envelope needs ln ln(x/2) > 0"));
    }
    let lower = x * log(0.5 * x) / (2.0 * log(log(0.5 * x)));
    let upper = x * log(x) / log(log(x));
    Ok((lower, phi(x)?, upper))
}

/// Geometric grid of `n` points from `a` to `b` inclusive.
pub fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return alloc::vec![a];
    }
    let (la, lb) = (log(a), log(b));
    (0..n)
        .map(|i| exp(la + (lb - la) * i as f64 / (n - 1) as f64))
        .collect()
}

/// The first grid point `x0` from which the two-sided envelope holds at
/// every later grid point up to the end of the grid, if any.
pub fn envelope_onset(grid: &[f64]) -> Result<Option<f64>> {
    let mut onset = None;
    for &x in grid.iter().rev() {
        let (lo, v, hi) = phi_envelope(x)?;
        if lo < v && v < hi {
            onset = Some(x);
        } else {
            break;
        }
    }
    Ok(onset)
}

/// Samples of `G(x) / (x ln^{d-1} x)` at the given points; a growth
/// function below the `d`-dimensional threshold drives these towards 0.
pub fn probe_below_dimension(g: &dyn Fn(f64) -> f64, d: u32, points: &[f64]) -> Vec<f64> {
    points
        .iter()
        .map(|&x| g(x) / (x * pow(log(x), d.saturating_sub(1) as f64)))
        .collect()
}

/// Samples of `G(x) ln ln x / (x ln x)`; a growth function below the
/// `x ln x / ln ln x` scale drives these towards 0.
pub fn probe_below_loglog(g: &dyn Fn(f64) -> f64, points: &[f64]) -> Vec<f64> {
    points.iter().map(|&x| g(x) * log(log(x)) / (x * log(x))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        fabs(a - b) <= tol * fabs(b).max(1.0)
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_fn(0.0), 0.0);
        assert_eq!(alpha_fn(0.5), 0.5);
        assert_eq!(alpha_fn(2.0), 2.0);
        assert_eq!(alpha_fn(1.0), 1.0);
        assert_eq!(alpha_inv(0.0), 0.0);
        assert_eq!(alpha_inv(0.5), 0.5);
        for x in [1.5, 3.0, 10.0] {
            assert!(close(alpha_inv(alpha_fn(x)), x, 1e-9));
        }
        let grid = log_grid(1e-3, 50.0, 2000);
        assert!(grid.windows(2).all(|w| alpha_fn(w[0]) < alpha_fn(w[1])));
    }

    #[test]
    fn psi_phi_values() {
        assert_eq!(psi(0.0).unwrap(), 0.0);
        assert_eq!(phi(0.0).unwrap(), 0.0);
        assert_eq!(psi(1.0).unwrap(), 0.5);
        // The integral of t^(t-1) over [1, 2], from a 30-digit quadrature.
        assert!(close(psi(2.0).unwrap(), 0.5 + 1.313_538_640_368_530_3, 1e-9));
        // Legendre identity: Phi(x) = x y - Psi(y) with y = alpha^{-1}(x).
        for x in [1.5, 2.0, 5.0, 40.0, 1e3, 1e5] {
            let y = alpha_inv(x);
            let legendre = x * y - psi(y).unwrap();
            assert!(close(phi(x).unwrap(), legendre, 1e-8), "x = {x}");
        }
    }

    #[test]
    fn convexity_and_growth() {
        let grid = log_grid(1e-2, 60.0, 400);
        for w in grid.windows(2) {
            let m = 0.5 * (w[0] + w[1]);
            for f in [psi, phi] {
                let (a, b, c) = (f(w[0]).unwrap(), f(w[1]).unwrap(), f(m).unwrap());
                assert!(c <= 0.5 * (a + b) * (1.0 + 1e-8));
            }
        }
        assert!(phi(1e4).unwrap() / 1e4 > phi(1e2).unwrap() / 1e2);
        assert!(psi(20.0).unwrap() / 20.0 > psi(5.0).unwrap() / 5.0);
    }

    #[test]
    fn young_examples() {
        assert!(young_check(1.0, 1.0).unwrap());
        assert!(young_check(1e-12, 3.0).unwrap());
        let grid = log_grid(0.1, 100.0, 25);
        for &u in &grid {
            for &v in &grid {
                assert!(young_check(u, v).unwrap());
            }
        }
        // Equality at v = alpha^{-1}(u).
        let u = 7.0;
        let v = alpha_inv(u);
        let gap = phi(u).unwrap() + psi(v).unwrap() - u * v;
        assert!(fabs(gap) < 1e-7 * u * v);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(orlicz_norm(&[0.0, 0.0], GrowthFunction::Phi).unwrap(), 0.0);
        for g in [
            GrowthFunction::Phi,
            GrowthFunction::Psi,
            GrowthFunction::XLogPow(2),
            GrowthFunction::Power(2.0),
        ] {
            let a = 3.5;
            let expected = a / g.inverse(1.0).unwrap();
            assert!(close(orlicz_norm(&[a; 4], g).unwrap(), expected, 1e-9), "{g:?}");
            let f = [0.25, 1.5, 0.0, 4.0, 2.0];
            let f2: Vec<f64> = f.iter().map(|x| 2.0 * x).collect();
            let (n1, n2) = (orlicz_norm(&f, g).unwrap(), orlicz_norm(&f2, g).unwrap());
            assert!(close(n2, 2.0 * n1, 1e-9));
        }
        // L^2 norm as a check on the bisection.
        let n = orlicz_norm(&[3.0, 4.0], GrowthFunction::Power(2.0)).unwrap();
        assert!(close(n, libm::sqrt(12.5), 1e-11));
    }

    #[test]
    fn inverse_growth_ratios() {
        // The normalized ratio approaches 1 from above, slowly.
        let r12 = inverse_growth_ratio_normalized(12.0 * core::f64::consts::LN_10);
        let r100 = inverse_growth_ratio_normalized(100.0 * core::f64::consts::LN_10);
        assert!(r12 > r100 && r100 > 1.0);
        assert!(close(r12, 1.452, 1e-3));
        // Reading alpha^{-1}(x) ln x / ln ln x literally gives a growing
        // quantity: about 100 at 10^12.
        assert!(inverse_growth_ratio(12.0 * core::f64::consts::LN_10) > 50.0);
    }

    #[test]
    fn envelope_values() {
        let (lo, v, hi) = phi_envelope(10.0).unwrap();
        assert!(lo < v && v < hi);
        let (_, v, hi) = phi_envelope(100.0).unwrap();
        assert!(v > hi);
    }
}
