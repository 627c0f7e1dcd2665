//! Goodness-of-fit of sampler output against the uniform law on stable
//! colourings, for instances small enough to enumerate.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::estimator::with_workers;
use crate::grid::Hypergraph;
use crate::oracle::enumerate_stable;
use crate::sampler::{MoserTardos, Purpose, RngStream, SelectionRule};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UniformityCell {
    pub coloring: String,
    pub observed: u64,
    pub expected: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UniformityReport {
    pub samples: u64,
    pub stable_count: usize,
    pub master_seed: u64,
    pub rule: SelectionRule,
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    /// Half the L1 distance between the empirical law and uniform.
    pub total_variation: f64,
    pub cells: Vec<UniformityCell>,
}

impl UniformityReport {
    pub fn rejected_at(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniformityOptions {
    pub rule: SelectionRule,
    pub budget: Option<u64>,
    pub oracle_budget: u64,
    pub workers: usize,
}

impl Default for UniformityOptions {
    fn default() -> Self {
        Self {
            rule: SelectionRule::default(),
            budget: None,
            oracle_budget: crate::oracle::DEFAULT_ENUMERATION_BUDGET,
            workers: 0,
        }
    }
}

/// Draws `samples` colourings with the Moser-Tardos sampler and runs a
/// chi-square test against uniform on the enumerated stable set.
pub fn uniformity_test(
    h: &Hypergraph,
    c: u32,
    samples: u64,
    master_seed: u64,
    options: &UniformityOptions,
) -> Result<UniformityReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter(
            "at least one sample is required".into(),
        ));
    }
    let stable = enumerate_stable(h, c, options.oracle_budget)?;
    if stable.is_empty() {
        return Err(Error::InvalidParameter("no stable colouring exists".into()));
    }
    let index: HashMap<&[u32], usize> = stable
        .iter()
        .enumerate()
        .map(|(i, s)| (s.colors(), i))
        .collect();
    let sampler = MoserTardos::new(h, c)?
        .with_rule(options.rule)
        .with_budget(options.budget);
    let budget = sampler.budget();

    let counts = with_workers(options.workers, || {
        (0..samples)
            .into_par_iter()
            .try_fold(
                || vec![0u64; stable.len()],
                |mut acc, i| {
                    let mut rng = RngStream::new(master_seed, Purpose::Uniformity, 0, i).rng();
                    let (colors, _) =
                        sampler
                            .sample_raw(&mut rng)
                            .ok_or(Error::SamplerBudgetExceeded {
                                budget,
                                level: None,
                            })?;
                    acc[index[colors.as_slice()]] += 1;
                    Ok::<_, Error>(acc)
                },
            )
            .try_reduce(
                || vec![0u64; stable.len()],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    Ok(a)
                },
            )
    })??;

    let expected = samples as f64 / stable.len() as f64;
    let chi_square: f64 = counts
        .iter()
        .map(|&o| (o as f64 - expected).powi(2) / expected)
        .sum();
    let total_variation = 0.5
        * counts
            .iter()
            .map(|&o| (o as f64 / samples as f64 - 1.0 / stable.len() as f64).abs())
            .sum::<f64>();
    let degrees_of_freedom = stable.len() - 1;
    let p_value = if degrees_of_freedom == 0 {
        1.0
    } else {
        ChiSquared::new(degrees_of_freedom as f64)
            .expect("positive degrees of freedom")
            .sf(chi_square)
    };
    let cells = stable
        .iter()
        .zip(&counts)
        .map(|(s, &observed)| UniformityCell {
            coloring: s.to_string(),
            observed,
            expected,
        })
        .collect();

    Ok(UniformityReport {
        samples,
        stable_count: stable.len(),
        master_seed,
        rule: options.rule,
        chi_square,
        degrees_of_freedom,
        p_value,
        total_variation,
        cells,
    })
}
