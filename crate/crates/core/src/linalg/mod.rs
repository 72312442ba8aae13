//! Determinants, characteristic polynomials, zeta coefficients and spectra.

pub mod det;
pub mod series;
pub mod spectrum;

pub use det::{determinant, identity_minus_scaled};
pub use series::{char_poly, zeta_coefficients, PowerSeries};
pub use spectrum::{dominant_eigenvector, eta, spectral_radius, Spectrum, DEFAULT_MULTIPLICITY_TOL};
