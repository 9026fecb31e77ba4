//! Exact combinatorics of minimal transitive factorisations of permutations
//! into k-cycles.
//!
//! The crate has three layers:
//!
//! * [`perm`] — permutations, partitions, conjugacy-class sizes, restriction,
//!   and the minimal factor count `mu_k`;
//! * [`count`] — exact counts `c_k(alpha)` of minimal transitive ordered
//!   factorisations, by two independent methods (pruned depth-first search and
//!   a class-algebra dynamic program with connectivity inclusion–exclusion),
//!   plus the Hurwitz closed form for transpositions;
//! * [`series`], [`conjecture`], [`trees`] — an exact truncated power-series
//!   ring over arbitrary-precision rationals, the tree function
//!   `w = x·exp(w^{k-1})`, and coefficient-level verification of the
//!   generating-series identities and the tree-indexed PDE that the counts
//!   satisfy.
//!
//! All arithmetic is exact; there is no floating point anywhere. Series are
//! generic over the coefficient scalar (see [`scalar::Coeff`]); the alias
//! [`ExactSeries`] pins the rational instantiation used throughout.
//!
//! Composition convention: products of permutations are read right-to-left,
//! i.e. in `a * b` the factor `b` acts first. See [`perm::Permutation::compose`].

pub mod conjecture;
pub mod count;
pub mod perm;
pub mod scalar;
pub mod series;
pub mod suite;
pub mod trees;

/// Exact arbitrary-precision rational scalar used by all verification paths.
pub type Rat = num::BigRational;
/// Exact arbitrary-precision integer (counts, class sizes).
pub type Int = num::BigInt;
/// Truncated multivariate formal power series with [`Rat`] coefficients.
pub type ExactSeries = series::Series<Rat>;
