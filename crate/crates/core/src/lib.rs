//! Riemann-sum maximal functions on the torus and rectangle maximal
//! functions on a truncated product space, computed exactly at finite
//! resolution.
//!
//! Everything here is `no_std` and only needs `alloc`. The torus is
//! modelled at resolution `l` by its `l` atoms `[j/l, (j+1)/l)`, the
//! product space by the mixed-radix grid `prod_k Z/p_k^{l_k}` where
//! `l = prod_k p_k^{l_k}`, and the two are linked by the p-adic digit
//! reversal in [`isomap`].
//!
//! Measures are exact (atom counts over atom totals). Averages of step
//! functions are accumulated in a 128-bit fixed-point type so that level
//! sets and distribution identities are decided without rounding.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod bits;
pub mod constructions;
pub mod covering;
mod error;
pub mod exact;
pub mod isomap;
pub mod orlicz;
pub mod product;
pub mod torus;

pub use error::{Error, Result};

/// Default cap on the number of atoms a product space may have.
pub const DEFAULT_ATOM_BUDGET: u64 = 10_000_000;
