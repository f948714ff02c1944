//! Computational number-theory engines and an empirical verification
//! harness around the Mobius function, the Mertens function, the Chebyshev
//! psi function, prime counting, and Ramanujan's prime-counting inequality.
//!
//! Everything is exact at desk scale: sieves and dense tables carry the
//! small range, floor-quotient recursions extend M(x) to 1e12 and pi(x) to
//! 1e11, and signed log-magnitude arithmetic handles the closed-form
//! asymptotics where values reach 10^2800.

pub mod asymptotic;
pub mod chebyshev;
pub mod diagnostics;
pub mod error;
pub mod inequality;
pub mod logmag;
pub mod mertens;
pub mod numeric;
pub mod sieve;

pub use asymptotic::{
    emit_figure1, emit_table1, g_asymptotic, least_squares_slope, GFormula, Table1Row,
};
pub use chebyshev::{
    lucy_pi, pi_segmented_count, psi_exact, sweep_samples, PrimeCountEngine, PsiValue,
};
pub use diagnostics::{
    check_mertens_order, check_mu_log_over_d, check_mu_over_d, check_pi_estimate,
    check_psi_identity, fit_bound_constants, BoundFit, BoundReport, ClaimId, PiEstimateReport,
};
pub use error::{Error, Result};
pub use inequality::{
    eval_inequality, hassani_cubic_inequality, hassani_power_inequality, monotonicity_probe,
    scan_range, GSign, HassaniVerdict, InequalityReport, MonotonicityReport, ScanSummary,
    EVAL_CEILING, GALWAY_X,
};
pub use logmag::{lm_add, lm_mul, LogMagnitude};
pub use mertens::{MertensBound, MertensEngine};
pub use sieve::{build_mu_table, mobius_divisor_sum, primes_in_range, MuTable, SegmentPlan};
