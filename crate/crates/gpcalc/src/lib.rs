//! Exact-arithmetic calculator for computations in the intersection theory of
//! Brill-Noether varieties and the divisor theory of moduli spaces of stable curves.
//!
//! Everything here is computed over the rationals with arbitrary precision; no
//! floating point is used anywhere. The crate is organised bottom-up:
//!
//! * [`exact_core`] — big rationals, factorials, partitions, exact determinants;
//! * [`ambient_ring`] — normal-form arithmetic in the graded ring of classes on
//!   the product of a curve with its Picard variety;
//! * [`bn_numbers`] — determinantal evaluation of Schur-indexed intersection
//!   numbers on the variety of special linear series, Pieri expansion, counting
//!   formulas;
//! * [`mg_divisors`] — divisor classes on moduli of stable curves, slopes,
//!   test-curve pairings and a registry of named classes;
//! * [`gp_pipeline`] — closed forms and the full symbolic re-derivation of the
//!   Gieseker-Petri divisor class coefficients;
//! * [`mod_maps`] — pullback/pushforward arithmetic of the map sending a curve
//!   to its variety of special pencils, and Prym-map divisor arithmetic;
//! * [`pencils`] — invariants of Lefschetz pencils on rational surfaces,
//!   gonality slope thresholds, and the small-genus slope table.

pub mod exact_core;
pub mod ambient_ring;
pub mod bn_numbers;
pub mod mg_divisors;
pub mod gp_pipeline;
pub mod mod_maps;
pub mod pencils;

pub use exact_core::{Int, Rat};
