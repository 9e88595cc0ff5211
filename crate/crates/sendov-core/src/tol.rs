//! Default tolerances shared across the crate.
//!
//! Every threshold used by the classifiers is collected here so that the
//! CLI can override them from a config file without touching call sites.

/// Relative residual admitted for a cached or computed root:
/// `|p(z)| <= ROOT_RESIDUAL_TOL * (1 + max |a_k|)`.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-9;

/// Max-norm tolerance when re-expanding a root multiset into coefficients.
pub const COEFF_ROUNDTRIP_TOL: f64 = 1e-8;

/// Default tolerance for the 0-maximal classifier residuals.
pub const CLASSIFY_TOL: f64 = 1e-8;

/// Residual below which a convex combination of rows counts as zero.
pub const POS_SING_TOL: f64 = 1e-9;

/// Relative tolerance for deciding ties among critical distances
/// (`r(a)` and the set of `d`-achieving zeros).
pub const CRIT_TIE_TOL: f64 = 1e-9;

/// Tolerance on `||z| - 1|` for detecting boundary zeros.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Minimal pairwise root gap below which zeros count as multiple.
pub const SIMPLE_ROOT_TOL: f64 = 1e-6;

/// Cluster radius used when a polynomial is allowed to have (near-)double
/// critical points, e.g. the odd 0-maximal family at the boundary `lambda`.
pub const CLUSTER_RADIUS: f64 = 1e-6;

/// Tolerance bundle threaded through the inextensibility classifier.
#[derive(Debug, Clone, Copy)]
pub struct Tols {
    pub root_residual_tol: f64,
    pub classify_tol: f64,
    pub pos_sing_tol: f64,
    pub crit_tie_tol: f64,
    pub boundary_tol: f64,
    pub simple_root_tol: f64,
}

impl Default for Tols {
    fn default() -> Self {
        Tols {
            root_residual_tol: ROOT_RESIDUAL_TOL,
            classify_tol: CLASSIFY_TOL,
            pos_sing_tol: POS_SING_TOL,
            crit_tie_tol: CRIT_TIE_TOL,
            boundary_tol: BOUNDARY_TOL,
            simple_root_tol: SIMPLE_ROOT_TOL,
        }
    }
}
