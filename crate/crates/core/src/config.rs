//! Every tolerance and threshold a numerical verdict depends on, in one
//! serializable struct. Run manifests embed the effective values so that
//! verdicts stay auditable.

use serde::{Deserialize, Serialize};

/// Relative threshold of the floating DFT zero test (`|value| < rel * |A|`).
pub const DFT_ZERO_REL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct ToleranceConfig {
    /// Config schema version, embedded in manifests.
    pub version: String,

    // discrete engines
    /// Floating DFT zero test: `|value| < dft_zero_rel * |A|`.
    pub dft_zero_rel: f64,
    /// Floating Parseval check: `|residual| < dft_parseval_rel * |G| * |A|`.
    pub dft_parseval_rel: f64,
    /// Largest group order re-checked by the exact cyclotomic backend.
    pub exact_backend_max_order: u64,
    /// Default combinatorial budget per subset size in the Fuglede scan.
    pub scan_budget: u128,

    // triangle / polygon transforms
    /// Members of the triangle zero set must have modulus below this.
    pub triangle_zero_abs: f64,
    /// Non-members on the test grid must have modulus above this.
    pub triangle_nonzero_floor: f64,
    /// Closed form vs boundary integral agreement.
    pub boundary_agreement_abs: f64,
    /// Switch to the divided-difference series when `|xi - eta|` is below this.
    pub diagonal_series_threshold: f64,
    /// Zero-free strip verdict: PASS when the grid minimum modulus exceeds this.
    pub strip_min_modulus: f64,
    /// Central-difference step for gradient estimates.
    pub gradient_fd_step: f64,
    /// Slack factor applied to the calibrated gradient constant.
    pub gradient_slack: f64,

    // lattice Parseval
    /// Tail constant of the truncation schedule: `tol(rho) = tail / rho`.
    pub parseval_tail_const: f64,
    /// Samples per axis of the fundamental-domain torus pre-check.
    pub torus_resolution: u32,
    /// Dual-of-dual roundtrip tolerance for lattices.
    pub lattice_dual_roundtrip: f64,

    // disk / Bessel
    /// `|J1|` at a refined zero must be below this.
    pub bessel_zero_abs: f64,
    /// A distance counts as a zero radius when within this of some `r_n`.
    pub radius_match_abs: f64,
    /// Affine-fit slope target `B` and allowed deviation.
    pub fit_b_target: f64,
    pub fit_b_tol: f64,
    /// Fit residual bound for indices past the half-way point.
    pub fit_residual_tol: f64,
    /// Distance-gap PASS margin absorbing the o(1) term.
    pub gap_margin: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            version: crate::VERSION.to_string(),
            dft_zero_rel: DFT_ZERO_REL,
            dft_parseval_rel: 1e-9,
            exact_backend_max_order: crate::group::EXACT_BACKEND_MAX_ORDER,
            scan_budget: 5_000_000,
            triangle_zero_abs: 1e-10,
            triangle_nonzero_floor: 1e-3,
            boundary_agreement_abs: 1e-10,
            diagonal_series_threshold: 3e-3,
            strip_min_modulus: 1e-6,
            gradient_fd_step: 1e-5,
            gradient_slack: 1.05,
            parseval_tail_const: 0.42,
            torus_resolution: 512,
            lattice_dual_roundtrip: 1e-12,
            bessel_zero_abs: 1e-12,
            radius_match_abs: 1e-9,
            fit_b_target: 0.5,
            fit_b_tol: 1e-3,
            fit_residual_tol: 1e-3,
            gap_margin: 0.01,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrips_through_json() {
        let cfg = ToleranceConfig::default();
        let s = serde_json::to_string(&cfg).unwrap();
        let back: ToleranceConfig = serde_json::from_str(&s).unwrap();
        assert_eq!(back.dft_zero_rel, cfg.dft_zero_rel);
        assert_eq!(back.scan_budget, cfg.scan_budget);
        assert_eq!(back.gap_margin, cfg.gap_margin);
    }

    #[test]
    fn partial_config_takes_defaults() {
        let cfg: ToleranceConfig = serde_json::from_str(r#"{"strip_min_modulus": 1e-5}"#).unwrap();
        assert_eq!(cfg.strip_min_modulus, 1e-5);
        assert_eq!(cfg.triangle_zero_abs, 1e-10);
    }
}
