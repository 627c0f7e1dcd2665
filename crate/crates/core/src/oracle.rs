//! Exact ground truth for small instances.
//!
//! [`exact_count`] and [`enumerate_stable`] walk every colouring in odometer
//! order (vertex 0 most significant) and refuse outright when `c^|V|` exceeds
//! the budget. A branch is abandoned as soon as the vertex just coloured
//! completes a monochromatic edge, since every colouring below it is unstable.
//!
//! [`prefix_stable_counts`] is a second, independent route: a dynamic program
//! over the colours of the last `w` vertices, where `w` is the hypergraph's
//! bandwidth. It yields the stable count of every prefix sub-hypergraph and
//! hence the exact level probabilities used to validate the estimators.

use std::ops::AddAssign;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::coloring::{monochromatic, Coloring};
use crate::error::{Error, Result};
use crate::grid::Hypergraph;

/// Default cap on `c^|V|` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 100_000_000;

/// Default cap on `c^w` window states for [`prefix_stable_counts`].
pub const DEFAULT_WINDOW_BUDGET: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExactCount {
    pub colors: u32,
    #[serde(serialize_with = "decimal")]
    pub stable_count: BigUint,
    #[serde(serialize_with = "decimal")]
    pub total_count: BigUint,
    pub ell: f64,
}

impl ExactCount {
    fn new(colors: u32, stable_count: BigUint, vertex_count: usize) -> Self {
        let total_count = BigUint::from(colors).pow(vertex_count as u32);
        let ell = ratio(&stable_count, &total_count);
        Self {
            colors,
            stable_count,
            total_count,
            ell,
        }
    }
}

fn decimal<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_str_radix(10))
}

/// `a / b` as a double, exact to rounding even when both overflow `f64`.
pub fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    if b.is_zero() {
        return f64::NAN;
    }
    let shift = b.bits().saturating_sub(960);
    let a = a >> shift;
    let b = b >> shift;
    a.to_f64().unwrap_or(f64::INFINITY) / b.to_f64().unwrap_or(f64::INFINITY)
}

fn check_budget(h: &Hypergraph, c: u32, budget: u64) -> Result<()> {
    if c == 0 {
        return Err(Error::InvalidParameter(
            "colour count must be positive".into(),
        ));
    }
    let required = BigUint::from(c).pow(h.vertex_count() as u32);
    if required > BigUint::from(budget) {
        return Err(Error::OracleBudgetExceeded {
            required: required.to_str_radix(10),
            budget,
        });
    }
    Ok(())
}

struct Walker<'a, F> {
    h: &'a Hypergraph,
    c: u32,
    colors: Vec<u32>,
    visit: F,
}

impl<F: FnMut(&[u32])> Walker<'_, F> {
    fn descend(&mut self, v: usize) {
        if v == self.h.vertex_count() {
            (self.visit)(&self.colors);
            return;
        }
        for x in 0..self.c {
            self.colors[v] = x;
            let completes_mono = self
                .h
                .edges_ending_at(v)
                .iter()
                .any(|&e| monochromatic(self.h.edges()[e].vertices(), &self.colors));
            if !completes_mono {
                self.descend(v + 1);
            }
        }
    }
}

/// Visits every stable colouring whose vertex 0 has colour `first`, in
/// lexicographic order.
fn walk_with_first<F: FnMut(&[u32])>(h: &Hypergraph, c: u32, first: u32, visit: F) {
    let mut walker = Walker {
        h,
        c,
        colors: vec![0; h.vertex_count()],
        visit,
    };
    walker.colors[0] = first;
    let completes_mono = h
        .edges_ending_at(0)
        .iter()
        .any(|&e| monochromatic(h.edges()[e].vertices(), &walker.colors));
    if !completes_mono {
        walker.descend(1);
    }
}

fn count_with_first(h: &Hypergraph, c: u32, first: u32) -> u64 {
    let mut n = 0u64;
    walk_with_first(h, c, first, |_| n += 1);
    n
}

pub fn exact_count(h: &Hypergraph, c: u32, budget: u64) -> Result<ExactCount> {
    check_budget(h, c, budget)?;
    let stable = if h.vertex_count() == 0 {
        1
    } else {
        (0..c)
            .into_par_iter()
            .map(|first| count_with_first(h, c, first))
            .sum::<u64>()
    };
    Ok(ExactCount::new(c, BigUint::from(stable), h.vertex_count()))
}

/// Stable colourings with vertex 0 fixed to colour 0, times `c`. Equals the
/// full count because recolouring by a permutation preserves stability.
pub fn exact_count_by_symmetry(h: &Hypergraph, c: u32, budget: u64) -> Result<BigUint> {
    check_budget(h, c, budget)?;
    if h.vertex_count() == 0 {
        return Ok(BigUint::from(1u32));
    }
    Ok(BigUint::from(count_with_first(h, c, 0)) * c)
}

/// All stable colourings in lexicographic colour order.
pub fn enumerate_stable(h: &Hypergraph, c: u32, budget: u64) -> Result<Vec<Coloring>> {
    check_budget(h, c, budget)?;
    if h.vertex_count() == 0 {
        return Ok(vec![Coloring::from_raw(Vec::new(), c)]);
    }
    let per_first: Vec<Vec<Coloring>> = (0..c)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            walk_with_first(h, c, first, |colors| {
                out.push(Coloring::from_raw(colors.to_vec(), c))
            });
            out
        })
        .collect();
    Ok(per_first.into_iter().flatten().collect())
}

/// Exact stable counts at several colour counts; each point is refused
/// independently when over budget.
pub fn exact_chromatic_polynomial_points(
    h: &Hypergraph,
    c_values: &[u32],
    budget: u64,
) -> Vec<Result<ExactCount>> {
    c_values
        .iter()
        .map(|&c| exact_count(h, c, budget))
        .collect()
}

/// Stable colouring counts of every prefix sub-hypergraph: entry `t` counts
/// stable colourings of the first `t` vertices (so entry 0 is 1 and the last
/// entry is the full stable count).
pub fn prefix_stable_counts(h: &Hypergraph, c: u32, window_budget: u64) -> Result<Vec<BigUint>> {
    if c == 0 {
        return Err(Error::InvalidParameter(
            "colour count must be positive".into(),
        ));
    }
    let width = h.bandwidth() as u32;
    let states = BigUint::from(c).pow(width);
    if states > BigUint::from(window_budget) {
        return Err(Error::OracleBudgetExceeded {
            required: format!("{} window states", states.to_str_radix(10)),
            budget: window_budget,
        });
    }
    let fits_u128 = BigUint::from(c).pow(h.vertex_count() as u32).bits() < 127;
    if fits_u128 {
        Ok(window_dp::<u128>(h, c, width)
            .into_iter()
            .map(BigUint::from)
            .collect())
    } else {
        Ok(window_dp::<BigUint>(h, c, width))
    }
}

fn window_dp<T>(h: &Hypergraph, c: u32, width: u32) -> Vec<T>
where
    T: Clone + Zero + for<'a> AddAssign<&'a T> + From<u8> + Send + Sync,
{
    let c_us = c as usize;
    let num_states = c_us.pow(width);
    // state digit j (base c) holds the colour of vertex t-1-j
    let powers: Vec<usize> = (0..width.max(1)).map(|j| c_us.pow(j)).collect();

    let mut counts = vec![T::zero(); num_states];
    counts[0] = T::from(1u8);
    let mut totals = vec![T::from(1u8)];

    for t in 0..h.vertex_count() {
        // vertex offsets (t-1-v) of the earlier members of each edge ending at t
        let constraints: Vec<Vec<usize>> = h
            .edges_ending_at(t)
            .iter()
            .map(|&e| {
                h.edges()[e].vertices()[..h.k() - 1]
                    .iter()
                    .map(|&v| t - 1 - v)
                    .collect()
            })
            .collect();

        let mut next = vec![T::zero(); num_states];
        for (state, count) in counts.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for x in 0..c_us {
                let violates = constraints
                    .iter()
                    .any(|offsets| offsets.iter().all(|&j| (state / powers[j]) % c_us == x));
                if violates {
                    continue;
                }
                let shifted = if width == 0 {
                    0
                } else {
                    (state * c_us + x) % num_states
                };
                next[shifted] += count;
            }
        }
        counts = next;
        let mut total = T::zero();
        for n in &counts {
            total += n;
        }
        totals.push(total);
    }
    totals
}

/// Exact level probabilities `c_t = |Y_(t+1)| / |Y_t|` for `t = 0..|V|`.
///
/// `Y_t` is the set of colourings in which no edge lying inside the first `t`
/// vertices is monochromatic, so `|Y_t| = P_t c^(|V|-t)` with `P_t` the
/// stable count of the prefix and `c_t = P_(t+1) / (c P_t)`. Levels after an
/// empty `Y_t` are reported as 0.
pub fn exact_level_probabilities(h: &Hypergraph, c: u32, window_budget: u64) -> Result<Vec<f64>> {
    let prefix = prefix_stable_counts(h, c, window_budget)?;
    Ok(prefix
        .windows(2)
        .map(|w| {
            if w[0].is_zero() {
                0.0
            } else {
                ratio(&w[1], &(&w[0] * c))
            }
        })
        .collect())
}
