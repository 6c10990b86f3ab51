//! Growth statistics, distribution fits and quasi-polynomial fitting.

mod quasipoly;
mod stats;

pub use quasipoly::{fit_classes, fit_rational, interpolate, least_squares, poly_eval, quasipoly_fit, FitReport, QuasiPolynomial};
pub use stats::{describe, describe_layers, gaussian_fit, gumbel_fit, DistributionFit, StatsSummary};
