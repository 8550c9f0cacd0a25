//! Covariance-matrix algebra for single- and two-mode Gaussian quantum
//! channels, with entanglement-breaking certification and unitary-filter
//! amendability analysis.
//!
//! A Gaussian channel is the triplet `(K, l, β)` acting on means and
//! covariance matrices; unitary Gaussians are the `β = 0` subset. The crate
//! provides the standard optical channels (attenuation, squeezing, phase
//! shifts, asymmetric phase noise), their composition algebra, PPT-based
//! entanglement quantities (ν², logarithmic negativity) and the measurable
//! product witness, plus the closed-form thresholds that govern when filtered
//! double applications of a channel break entanglement.
//!
//! Conventions: quadrature ordering `(Q1, P1, Q2, P2)`, vacuum variance 1/2.
//! All operations are pure functions on immutable values.

pub mod channel;
pub mod eb;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod scenario;
pub mod symplectic;

pub use channel::{compose, GaussianChannel, UnitaryGaussian};
pub use eb::{
    amendability_c, amendable_check, attenuation_boundary, bisect_threshold, eb_order, eta_bar,
    eta_tilde, is_eb_choi, is_eb_diagonal, prp_channel, r_tilde, theta_window, AmendabilityReport,
    EbMethod, EbVerdict, ThetaWindow, DEFAULT_PROBE_RPRIME,
};
pub use entanglement::{
    block_decompose, is_entangled, log_negativity, nu_squared, optimal_product_witness,
    product_witness, tmsv_covariance, TwoModeBlocks, WitnessResult, WitnessSign,
};
pub use error::{Error, Result};
pub use linalg::{
    hermitian_eigen, hermitian_min_eigenvalue, symmetric_sqrt, ComplexMatrix, Matrix,
};
pub use scenario::{
    flip_correlation, prp_output, prp_output_corrected, setup_alpha, setup_channel, setup_output,
    CorrelationSign,
};
pub use symplectic::{CovarianceMatrix, GaussianState, SymplecticForm, DEFAULT_TOL};
