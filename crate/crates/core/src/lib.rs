//! Root-system combinatorics for normal pro-nilpotent subgroups of an Iwahori
//! subgroup, and their sandwiching between Moy-Prasad filtration subgroups.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootsys`]: root data, heights, the extended-basis order, chains.
//! * [`complete`]: downward-closed ("complete") subsets of roots.
//! * [`zeta`]: the two mean-cycle invariants of a complete subset.
//! * [`concave`]: concave, normal and filtration functions.
//! * [`polytope`]: exact linear feasibility by Fourier-Motzkin elimination.
//! * [`classify`]: the classification pipeline and its independent verifier.
//! * [`sl_model`]: valuation patterns for `SL_n` and the tropical normality test.

pub mod classify;
pub mod complete;
pub mod concave;
pub mod polytope;
pub mod rational;
pub mod report;
pub mod rootsys;
pub mod sl_model;
pub mod zeta;

pub use rational::Q;
pub use rootsys::{RootSystem, RootSystemType};
