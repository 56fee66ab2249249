//! Sequential products on finite-dimensional quantum effects.
//!
//! Two products are implemented over a common spectral kernel: the
//! generalized Lüders product `A^{1/2} B A^{1/2}` and the phased product
//! `A^{1/2} A^{it} B A^{-it} A^{1/2}`. The [`axioms`] module checks both
//! against the sequential-product axioms on random structured inputs, and
//! [`channels`] turns effect decompositions into Kraus channels.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod axioms;
pub mod channels;
pub mod cli;
pub mod document;
pub mod effects;
pub mod linalg;
pub mod par;

pub use effects::{
    closed_form_2d, effect_power_it, f_z, luders_product, phased_product, product_on_selfadjoint, sqrt_effect,
    DensityOperator, Effect, EffectError, PhaseParameter, Projection,
};
pub use linalg::{ComplexMatrix, ComplexScalar, HermitianMatrix, SpectralDecomposition};
