use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::grid::GridSpec;
use crate::sampler::SelectionRule;

/// `mantissa x 10^exponent`, with `1 <= mantissa < 10` (or both zero).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MantissaExp {
    pub mantissa: f64,
    pub exponent: i64,
}

impl MantissaExp {
    /// Renders `exp(log_value)` without ever forming the value itself.
    pub fn from_ln(log_value: f64) -> Self {
        if log_value == f64::NEG_INFINITY {
            return Self {
                mantissa: 0.0,
                exponent: 0,
            };
        }
        let log10 = log_value / std::f64::consts::LN_10;
        let mut exponent = log10.floor();
        let mut mantissa = 10f64.powf(log10 - exponent);
        if mantissa >= 10.0 {
            mantissa /= 10.0;
            exponent += 1.0;
        }
        Self {
            mantissa,
            exponent: exponent as i64,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.mantissa * 10f64.powi(self.exponent as i32)
    }
}

impl fmt::Display for MantissaExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}e{}", self.mantissa, self.exponent)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelEstimate {
    pub t: usize,
    pub c_hat: f64,
    pub samples: u64,
    pub hits: u64,
    pub skipped_exact: bool,
    pub mean_resamples: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EstimateParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    pub hypergraph_digest: String,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub k: usize,
    pub c: u32,
    pub epsilon: f64,
    pub delta: f64,
    pub master_seed: u64,
    pub samples_per_level: u64,
    pub schedule_samples_per_level: u64,
    pub rule: SelectionRule,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

/// Execution details that legitimately vary between otherwise identical runs.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RuntimeInfo {
    pub worker_count: usize,
    pub wall_time_secs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EstimateReport {
    pub params: EstimateParams,
    pub levels: Vec<LevelEstimate>,
    /// Natural log of the estimated stable fraction; `null` in JSON when the
    /// estimate is zero.
    pub log_ell: f64,
    pub ell_mantissa_exp: MantissaExp,
    pub log_count: f64,
    pub count_mantissa_exp: MantissaExp,
    pub total_samples: u64,
    pub total_resamples: u64,
    pub diagnostics: Vec<String>,
    pub runtime: RuntimeInfo,
}

impl EstimateReport {
    pub fn ell(&self) -> f64 {
        self.log_ell.exp()
    }

    pub fn active_levels(&self) -> impl Iterator<Item = &LevelEstimate> {
        self.levels.iter().filter(|l| !l.skipped_exact)
    }

    /// JSON of everything except [`RuntimeInfo`]; identical across worker
    /// counts for a fixed seed.
    pub fn payload_json(&self) -> serde_json::Value {
        let mut value = serde_json::to_value(self).expect("report serializes");
        value.as_object_mut().unwrap().remove("runtime");
        value
    }

    /// Per-level table: `t,cHat,samples,hits,meanResamples,skipped`.
    pub fn levels_csv(&self) -> String {
        let mut out = String::from("t,cHat,samples,hits,meanResamples,skipped\n");
        for l in &self.levels {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                l.t, l.c_hat, l.samples, l.hits, l.mean_resamples, l.skipped_exact as u8
            );
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct McReport {
    pub samples: u64,
    pub hits: u64,
    pub ell_hat: f64,
    /// `sqrt((1 - ell)/(ell N))` at `ell = ell_hat`; absent when no sample hit.
    pub relative_error_estimate: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn mantissa_exponent_rendering() {
        let m = MantissaExp::from_ln(4.0e-4f64.ln());
        assert_eq!(m.exponent, -4);
        assert_relative_eq!(m.mantissa, 4.0, max_relative = 1e-12);

        // far outside f64 range
        let big = MantissaExp::from_ln(81.0 * 7f64.ln() + 2f64.ln());
        let log10 = 81.0 * 7f64.log10() + 2f64.log10();
        assert_eq!(big.exponent, log10.floor() as i64);
        assert_relative_eq!(
            big.mantissa,
            10f64.powf(log10 - log10.floor()),
            max_relative = 1e-9
        );

        let zero = MantissaExp::from_ln(f64::NEG_INFINITY);
        assert_eq!((zero.mantissa, zero.exponent), (0.0, 0));
        assert_eq!(MantissaExp::from_ln(0.0).to_string(), "1.000000e0");
        assert_relative_eq!(
            MantissaExp::from_ln(5f64.ln()).to_f64(),
            5.0,
            max_relative = 1e-12
        );
    }
}
