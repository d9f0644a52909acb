//! Executable harmonic analysis around the tiling/spectrality correspondence.
//!
//! The crate has two halves. The exact half works in finite abelian groups
//! `Z_{n1} x ... x Z_{nd}`: discrete Fourier transforms of subsets and their
//! zero sets ([`group`]), translational tilings and their complements
//! ([`tiling`]), and exponential spectra found as cliques of an orthogonality
//! graph ([`spectra`]). The numerical half reproduces the continuous
//! arguments for two classical non-spectral domains: the standard triangle
//! ([`euclid`]: closed-form and boundary-integral transforms, zero set,
//! zero-free strip, lattice Parseval sums) and the unit disk ([`disk`]:
//! Bessel `J1`, zero radii and their arithmetic-progression asymptotics,
//! orthogonal-set search, distance-gap demonstration).
//!
//! Every numerical verdict is controlled by the tolerances in [`config`];
//! [`acceptance`] bundles the full verification suite behind one call.

pub mod acceptance;
pub mod bitset;
pub mod config;
pub mod cyclotomic;
pub mod disk;
mod error;
pub mod euclid;
pub mod geom;
pub mod group;
pub mod spectra;
pub mod tiling;

pub use bitset::BitSet;
pub use config::ToleranceConfig;
pub use error::Error;
pub use group::{DftTable, FiniteAbelianGroup, GroupSubset};

/// Crate result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Engine version embedded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Character convention used throughout: `chi_lambda(a) = exp(-2 pi i <lambda, a>)`
/// with `<lambda, a> = sum_j lambda_j a_j / n_j`. The minus sign matches the
/// continuous transform `f^(xi) = integral f(x) exp(-2 pi i xi . x) dx`, so
/// discrete and continuous zero sets agree under discretization.
pub const CHARACTER_CONVENTION: &str = "exp(-2*pi*i*sum_j lambda_j*a_j/n_j)";
