//! Centralized numerical tolerances.
//!
//! Every threshold used by the library is defined here together with the
//! reason it has the size it has, so reports can embed the exact values a
//! run was produced with. No ad-hoc magic numbers elsewhere.

use serde::Serialize;

/// Membership in the isometry group: `|L^t Q L - Q|_inf` for generators.
/// Generators are built from exact plane rotations/boosts, so rounding
/// stays near machine epsilon; 1e-9 leaves five digits of slack.
pub const FORM_PRESERVATION_TOL: f64 = 1e-9;

/// `|det(L) - 1|` for generators.
pub const DET_TOL: f64 = 1e-9;

/// `gen * inv = id` residual allowed when a representation is constructed.
pub const INVERSE_ROUNDTRIP_TOL: f64 = 1e-9;

/// Condition-number guard `|M| * |M^-1| <= 1e12` where an inversion is
/// implicit. Word evaluation compounds error exponentially in word length;
/// the guard makes failures explicit instead of silently corrupting alpha.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Relative singular-value threshold for the kernel of `I - L`:
/// sigma <= KERNEL_RTOL * sigma_max counts as zero. Scale-invariant
/// regularity test; exact 1-eigenspaces are assumed upstream.
pub const KERNEL_RTOL: f64 = 1e-8;

/// Form-preservation drift allowed on an evaluated word matrix.
/// Evaluation uses iterated composition with no re-orthogonalization;
/// words drifting past this bound are rejected rather than recorded.
pub const DRIFT_LIMIT: f64 = 1e-6;

/// `| |<nu|nu>| - 1 |` after normalization of a neutral vector.
pub const NU_UNIT_TOL: f64 = 1e-9;

/// Fixed-vector residual `|L nu - nu| <= NU_FIXED_RTOL * |L|`.
pub const NU_FIXED_RTOL: f64 = 1e-8;

/// Relative spectral margin: eigenvalue moduli inside
/// `(1 - SPECTRAL_GAP_TOL, 1 + SPECTRAL_GAP_TOL)` other than the unit
/// eigenvalue itself mark the element as degenerate (elliptic/parabolic-like).
pub const SPECTRAL_GAP_TOL: f64 = 1e-6;

/// Margulis-invariant consistency: `|alpha^2 - adjugate expression|`
/// must stay below `ALPHA_SQ_RTOL * (1 + alpha^2)` on accepted records.
pub const ALPHA_SQ_RTOL: f64 = 1e-7;

/// `|Tr[adj(I-L)]| < DEGENERATE_TRACE_RTOL * |adj(I-L)|_F` means the
/// element is not regular and the rational expression is undefined.
pub const DEGENERATE_TRACE_RTOL: f64 = 1e-10;

/// Contract for the neutral projection identity residual.
pub const NEUTRAL_PROJECTION_TOL: f64 = 1e-7;

/// Coboundary feasibility: max per-generator residual below
/// `COBOUNDARY_FEASIBLE_RTOL * (1 + |udot|)`.
pub const COBOUNDARY_FEASIBLE_RTOL: f64 = 1e-7;

/// Agreement of the trace-power adjugate with the cofactor oracle
/// (relative, entries bounded by 10).
pub const ADJ_TRACE_POWER_RTOL: f64 = 1e-8;

/// Linear parts of interpolation endpoints must agree entrywise.
pub const SHARED_LINEAR_TOL: f64 = 1e-10;

/// Minimal ratio of the n-th to (n+1)-th eigenvalue modulus a word may
/// exhibit before the proximality scan flags it.
pub const PROXIMALITY_GAP_MIN: f64 = 1.05;

/// Enumeration refuses when the projected cyclically-reduced word count
/// exceeds this cap.
pub const CLASS_BUDGET_CAP: u64 = 10_000_000;

/// Every point of an entropy grid must cover at least this many classes.
pub const ENTROPY_MIN_COUNT: usize = 10;

/// Number of points in the default geometric T-grid.
pub const T_GRID_POINTS: usize = 8;

/// Default tangent step for the 5-point pressure stencil.
pub const PRESSURE_STEP: f64 = 0.02;

/// Richardson acceptance: second differences at step s and s/2 must agree
/// within this relative deviation (plus estimator noise).
pub const RICHARDSON_REL_DEV: f64 = 0.2;

/// Bootstrap resamples used to propagate estimator noise.
pub const BOOTSTRAP_RESAMPLES: usize = 200;

/// Finite-difference step for first-order entropy variations used by the
/// constant-entropy projection.
pub const ENTROPY_FD_STEP: f64 = 1e-3;

/// Snapshot of every tolerance, embedded verbatim into emitted reports.
#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    pub form_preservation_tol: f64,
    pub det_tol: f64,
    pub inverse_roundtrip_tol: f64,
    pub condition_limit: f64,
    pub kernel_rtol: f64,
    pub drift_limit: f64,
    pub nu_unit_tol: f64,
    pub nu_fixed_rtol: f64,
    pub spectral_gap_tol: f64,
    pub alpha_sq_rtol: f64,
    pub degenerate_trace_rtol: f64,
    pub neutral_projection_tol: f64,
    pub coboundary_feasible_rtol: f64,
    pub adj_trace_power_rtol: f64,
    pub shared_linear_tol: f64,
    pub proximality_gap_min: f64,
    pub class_budget_cap: u64,
    pub entropy_min_count: usize,
    pub t_grid_points: usize,
    pub pressure_step: f64,
    pub richardson_rel_dev: f64,
    pub bootstrap_resamples: usize,
    pub entropy_fd_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            form_preservation_tol: FORM_PRESERVATION_TOL,
            det_tol: DET_TOL,
            inverse_roundtrip_tol: INVERSE_ROUNDTRIP_TOL,
            condition_limit: CONDITION_LIMIT,
            kernel_rtol: KERNEL_RTOL,
            drift_limit: DRIFT_LIMIT,
            nu_unit_tol: NU_UNIT_TOL,
            nu_fixed_rtol: NU_FIXED_RTOL,
            spectral_gap_tol: SPECTRAL_GAP_TOL,
            alpha_sq_rtol: ALPHA_SQ_RTOL,
            degenerate_trace_rtol: DEGENERATE_TRACE_RTOL,
            neutral_projection_tol: NEUTRAL_PROJECTION_TOL,
            coboundary_feasible_rtol: COBOUNDARY_FEASIBLE_RTOL,
            adj_trace_power_rtol: ADJ_TRACE_POWER_RTOL,
            shared_linear_tol: SHARED_LINEAR_TOL,
            proximality_gap_min: PROXIMALITY_GAP_MIN,
            class_budget_cap: CLASS_BUDGET_CAP,
            entropy_min_count: ENTROPY_MIN_COUNT,
            t_grid_points: T_GRID_POINTS,
            pressure_step: PRESSURE_STEP,
            richardson_rel_dev: RICHARDSON_REL_DEV,
            bootstrap_resamples: BOOTSTRAP_RESAMPLES,
            entropy_fd_step: ENTROPY_FD_STEP,
        }
    }
}
