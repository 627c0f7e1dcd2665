use std::time::Instant;

use log::{debug, info, warn};
use rand::Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::{check_accuracy, t_sample_schedule, with_workers};
use super::{EstimateParams, EstimateReport, LevelEstimate, MantissaExp, RuntimeInfo};
use crate::coloring::monochromatic;
use crate::error::{Error, Result};
use crate::grid::{serialize_hypergraph, Hypergraph};
use crate::sampler::{MoserTardos, Purpose, RngStream, SelectionRule};

/// Samples drawn from one random stream; fixed so results do not depend on
/// how blocks are scheduled across workers.
const BLOCK: u64 = 1024;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SplittingOptions {
    /// Overrides the Chernoff schedule. The accuracy guarantee then no longer
    /// applies; the schedule is still reported alongside.
    pub samples_per_level: Option<u64>,
    /// Per-sample resampling cap; `None` uses the sampler default for each level.
    pub budget: Option<u64>,
    /// Worker threads; 0 picks the number of cores.
    pub workers: usize,
    pub rule: SelectionRule,
}

/// Multilevel splitting estimate of the stable fraction of `h` with `c` colours.
///
/// Level `t` draws colourings of the prefix on vertices `0..t` with the
/// Moser-Tardos sampler, adds a uniform colour for vertex `t`, and counts how
/// often no edge ending at `t` turns monochromatic. Levels with no edge ending
/// at `t` have probability exactly 1 and are skipped. Each level
/// reads a random stream keyed by the seed, the level and its block of
/// samples, so the result does not depend on the worker count.
pub fn splitting_estimate(
    h: &Hypergraph,
    c: u32,
    epsilon: f64,
    delta: f64,
    master_seed: u64,
    options: &SplittingOptions,
) -> Result<EstimateReport> {
    check_accuracy(epsilon, delta)?;
    if c == 0 {
        return Err(Error::TooFewColors { colors: 0 });
    }
    let started = Instant::now();
    let n = h.vertex_count();
    let schedule = if n == 0 {
        0
    } else {
        t_sample_schedule(n, epsilon, delta)?
    };
    let samples = match options.samples_per_level {
        Some(0) => {
            return Err(Error::InvalidParameter(
                "samples per level must be positive".into(),
            ))
        }
        Some(s) => s,
        None => schedule,
    };
    let worker_count = if options.workers == 0 {
        rayon::current_num_threads()
    } else {
        options.workers
    };

    let mut levels = Vec::with_capacity(n);
    let mut diagnostics = Vec::new();
    let mut total_samples = 0;
    let mut total_resamples = 0;

    if c == 1 && h.edge_count() > 0 {
        diagnostics.push(
            "a single colour makes every edge monochromatic; the stable fraction is 0".into(),
        );
    } else {
        for t in 0..n {
            let ending = h.edges_ending_at(t);
            if ending.is_empty() {
                levels.push(LevelEstimate {
                    t,
                    c_hat: 1.0,
                    samples: 0,
                    hits: 0,
                    skipped_exact: true,
                    mean_resamples: 0.0,
                });
                continue;
            }
            let prefix = h.prefix(t)?;
            let sampler = MoserTardos::new(&prefix, c)?
                .with_rule(options.rule)
                .with_budget(options.budget);
            let budget = sampler.budget();
            let blocks = samples.div_ceil(BLOCK);
            let (hits, resamples) = with_workers(options.workers, || {
                (0..blocks)
                    .into_par_iter()
                    .map(|block| {
                        let len = BLOCK.min(samples - block * BLOCK);
                        let mut rng =
                            RngStream::new(master_seed, Purpose::Splitting, t as u64, block).rng();
                        let (mut hits, mut resamples) = (0u64, 0u64);
                        for _ in 0..len {
                            let (mut colors, r) = sampler.sample_raw(&mut rng).ok_or(
                                Error::SamplerBudgetExceeded {
                                    budget,
                                    level: Some(t),
                                },
                            )?;
                            colors.push(rng.gen_range(0..c));
                            hits += !ending
                                .iter()
                                .any(|&e| monochromatic(h.edges()[e].vertices(), &colors))
                                as u64;
                            resamples += r;
                        }
                        Ok::<_, Error>((hits, resamples))
                    })
                    .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))
            })??;

            let c_hat = hits as f64 / samples as f64;
            debug!("level {t}: {hits}/{samples} hits, {resamples} resamples");
            if hits == 0 {
                let msg = format!("level {t} had no hits; the estimate is 0");
                warn!("{msg}");
                diagnostics.push(msg);
            }
            total_samples += samples;
            total_resamples += resamples;
            levels.push(LevelEstimate {
                t,
                c_hat,
                samples,
                hits,
                skipped_exact: false,
                mean_resamples: resamples as f64 / samples as f64,
            });
        }
    }

    let log_ell = if c == 1 && h.edge_count() > 0 {
        f64::NEG_INFINITY
    } else {
        levels.iter().map(|l| l.c_hat.ln()).sum()
    };
    let log_count = log_ell + n as f64 * f64::from(c).ln();
    let wall_time_secs = started.elapsed().as_secs_f64();
    info!(
        "estimated ln(ell) = {log_ell:.6} over {} levels in {wall_time_secs:.2}s",
        levels.len()
    );

    Ok(EstimateReport {
        params: EstimateParams {
            grid: h.grid(),
            hypergraph_digest: digest(h),
            vertex_count: n,
            edge_count: h.edge_count(),
            k: h.k(),
            c,
            epsilon,
            delta,
            master_seed,
            samples_per_level: samples,
            schedule_samples_per_level: schedule,
            rule: options.rule,
            budget: options.budget,
        },
        levels,
        log_ell,
        ell_mantissa_exp: MantissaExp::from_ln(log_ell),
        log_count,
        count_mantissa_exp: MantissaExp::from_ln(log_count),
        total_samples,
        total_resamples,
        diagnostics,
        runtime: RuntimeInfo {
            worker_count,
            wall_time_secs,
        },
    })
}

fn digest(h: &Hypergraph) -> String {
    Sha256::digest(serialize_hypergraph(h).as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}
