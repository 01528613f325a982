//! Exact arithmetic toolkit for low-height points on elliptic surfaces.
//!
//! The crate has two engines that check each other:
//!
//! * [`orbit_group`] and [`height_search`] enumerate singular-fiber
//!   configurations of an elliptic surface with discriminant degree `12n`
//!   and search for the smallest canonical height a nontorsion section can
//!   have, purely combinatorially.
//! * [`function_field`] works with actual Weierstrass models over `Q(T)`,
//!   computes multiples of points by the group law, measures naive heights,
//!   and classifies singular fibers.
//!
//! [`cli`] wraps both behind the `heightlab` binary.

pub mod cli;
pub mod function_field;
pub mod height_search;
pub mod orbit_group;
pub mod rational;

pub use rational::Rational;
