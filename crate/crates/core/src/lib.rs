//! Finite-dimensional weak Hopf algebras given by structure constants over a
//! pluggable field: axiom verification, the counital calculus, duals and
//! twists, integrals and Haar measures, weak Hopf modules, and the C*
//! structure (canonical grouplike element, sectors, modular data).

#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::wrong_self_convention)]

pub mod check;
pub mod cli;
pub mod document;
pub mod cstar;
pub mod factory;
pub mod error;
pub mod field;
pub mod linear;
pub mod hopf_modules;
pub mod integrals;
pub mod wha;

pub use check::{Check, CheckList, Verdict};
pub use error::{Result, WhaError};
pub use field::{Complexes, Field, FieldSpec, PrimeField, Rationals};
pub use wha::{check_axioms, AxiomReport, Side, Twist, Wha};
