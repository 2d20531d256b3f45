//! Exact computation for toric Fano threefolds defined by lattice polytopes:
//! polyhedral combinatorics, fans and cone singularities, Groebner bases and
//! toric ideals, graded deformation spaces, invariant rings, and polytope
//! scaffolding. Everything runs over arbitrary-precision integers and
//! rationals; there is no floating point anywhere in this crate.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `kfano` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod deform;
pub mod fan;
pub mod fano;
pub mod invariant;
pub mod linalg;
pub mod poly;
pub mod polytope;
pub mod scaffold;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Arbitrary-precision integer used throughout.
pub type Int = BigInt;
/// Exact rational used throughout.
pub type Rat = BigRational;

/// Shorthand constructor for `Int`.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Shorthand constructor for `Rat`; panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Integer vector from machine ints, for tests and embedded data.
pub fn ivec(v: &[i64]) -> alloc::vec::Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}
