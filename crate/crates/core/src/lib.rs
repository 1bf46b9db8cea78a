//! α-expansions of reals in (0,1] and their multifractal machinery.
//!
//! Every x ∈ (0,1] has a unique expansion
//!
//!   x = Σ_{i≥1} (α−1)^{i−1} α^{−(d_1+…+d_i)},  d_i ∈ {1, 2, …},
//!
//! for a fixed base α > 1. This crate implements the digit codec with
//! certified enclosures ([`expansion`]), the closed-form dimension spectra
//! and their root solvers ([`spectra`]), product-measure digit laws with
//! samplers and local-dimension estimators ([`measures`]), and the
//! subsequence-constrained level sets ([`levelsets`]).

pub mod arith;
pub mod error;
pub mod expansion;
pub mod levelsets;
pub mod measures;
pub mod spectra;

pub use arith::{ArithmeticMode, Real};
pub use error::{Error, Result};
pub use expansion::{
    cylinder_length, cylinder_log_length, decode, digit_of, encode, parse_decimal,
    reconstruct_partial, step, AlphaParams, DigitPrefix, Enclosure,
};
pub use levelsets::{
    bm_free_law, bm_local_dimension, sample_bm, MuEstimate, SubsequencePattern,
    DEFAULT_VALIDATION_DEPTH,
};
pub use measures::{
    birkhoff_mean, gibbs_law, lebesgue_law, local_dimension, sample_digits,
    sample_digits_stream, DigitLaw,
};
pub use spectra::{
    kappa, kappa_max, moran_dimension, pressure, pressure_dq, pressure_dt, solve_tq,
    subseq_dimension_finite, subseq_dimension_limit, GibbsParams, SpectrumPoint,
};
