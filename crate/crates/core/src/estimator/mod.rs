//! Estimators of the stable fraction `ell = P(H, c) / c^|V|`.
//!
//! * [`monte_carlo_estimate`]: draw uniform colourings and count the stable
//!   ones. Unbiased, but the relative error `sqrt((1-ell)/(ell N))` blows up as
//!   `ell` shrinks exponentially with the grid size.
//! * [`splitting_estimate`]: write `ell` as a telescoping product of level
//!   probabilities `c_t = |Y_(t+1)| / |Y_t|`, one level per vertex, and estimate
//!   each factor from Moser-Tardos samples of `Y_t`. Every factor stays away
//!   from zero, so the sample count per level does not grow with `ell`.

mod monte_carlo;
mod report;
mod splitting;

pub use monte_carlo::monte_carlo_estimate;
pub use report::{
    EstimateParams, EstimateReport, LevelEstimate, MantissaExp, McReport, RuntimeInfo,
};
pub use splitting::{splitting_estimate, SplittingOptions};

pub use crate::oracle::exact_level_probabilities;

use crate::error::{Error, Result};

/// Chernoff sample count per level: `ceil(54 (|V|/eps)^2 ln(2|V|/delta))`.
///
/// Enough for every level to land within a factor `1 +- eps/(3|V|)` with
/// probability at least `1 - delta/|V|`, using `c_t >= 1/2`.
pub fn t_sample_schedule(vertex_count: usize, epsilon: f64, delta: f64) -> Result<u64> {
    check_accuracy(epsilon, delta)?;
    if vertex_count == 0 {
        return Err(Error::InvalidParameter(
            "schedule needs at least one vertex".into(),
        ));
    }
    let v = vertex_count as f64;
    let samples = 54.0 * (v / epsilon).powi(2) * (2.0 * v / delta).ln();
    Ok(samples.ceil() as u64)
}

pub(crate) fn check_accuracy(epsilon: f64, delta: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "epsilon = {epsilon} must be positive"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "delta = {delta} must lie in (0, 1)"
        )));
    }
    Ok(())
}

pub(crate) fn with_workers<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(job))
}
