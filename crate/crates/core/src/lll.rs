//! Local Lemma feasibility analysis for Candy Crush grids.
//!
//! Each edge of a k-run grid meets at most `2k - 2` parallel and `k^2`
//! perpendicular edges. With a symmetric weight `x` per bad event the Local
//! Lemma needs `1/c^(k-1) <= x (1 - x)^(2k - 2 + k^2)`, which is maximised at
//! `x = 1/(k^2 + 2k - 1)`. Taking the `(k-1)`-th root gives the colour
//! condition evaluated by [`check_fpras_condition`]. When it holds, the
//! Moser-Tardos sampler resamples each edge at most `x/(1-x)` times in
//! expectation.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::Hypergraph;

/// Slack for the non-strict inequality near the boundary.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FeasibilityVerdict {
    pub c: u32,
    pub k: usize,
    pub rhs: f64,
    pub feasible: bool,
    pub dependency_degree: usize,
    pub optimal_x: f64,
    pub per_edge_resample_bound: f64,
}

/// `2k - 2 + k^2`: how many other runs can intersect a run of length `k`.
pub fn dependency_degree(k: usize) -> usize {
    2 * k - 2 + k * k
}

/// The maximiser `1/(k^2 + 2k - 1)` of `x (1-x)^(2k-2+k^2)`.
pub fn optimal_x(k: usize) -> f64 {
    1.0 / (dependency_degree(k) + 1) as f64
}

/// Right-hand side of the colour condition, computed in log space.
pub fn condition_rhs(k: usize) -> f64 {
    let x = optimal_x(k);
    let exponent = dependency_degree(k) as f64;
    ((x.ln() + exponent * (-x).ln_1p()) / (k - 1) as f64).exp()
}

pub fn check_fpras_condition(c: u32, k: usize) -> Result<FeasibilityVerdict> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "run length k = {k} must be at least 2"
        )));
    }
    if c < 2 {
        return Err(Error::InvalidParameter(format!(
            "colour count c = {c} must be at least 2"
        )));
    }
    let rhs = condition_rhs(k);
    let x = optimal_x(k);
    Ok(FeasibilityVerdict {
        c,
        k,
        rhs,
        feasible: 1.0 / c as f64 <= rhs + FEASIBILITY_TOLERANCE,
        dependency_degree: dependency_degree(k),
        optimal_x: x,
        per_edge_resample_bound: x / (1.0 - x),
    })
}

/// Smallest `c >= 2` satisfying the colour condition for run length `k`.
pub fn min_colors(k: usize) -> Result<u32> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "run length k = {k} must be at least 2"
        )));
    }
    let rhs = condition_rhs(k);
    let mut c = ((1.0 / (rhs + FEASIBILITY_TOLERANCE)).ceil() as u32).max(2);
    // guard against the ceiling landing one off in floating point
    while c > 2 && check_fpras_condition(c - 1, k)?.feasible {
        c -= 1;
    }
    while !check_fpras_condition(c, k)?.feasible {
        c += 1;
    }
    Ok(c)
}

/// Expected-resampling bound `|E| x/(1-x)` with the symmetric optimal `x` for
/// the hypergraph's edge size. Zero for an edgeless hypergraph.
pub fn expected_resample_bound(h: &Hypergraph) -> f64 {
    if h.edge_count() == 0 {
        return 0.0;
    }
    let k = h.k().max(2);
    let x = optimal_x(k);
    h.edge_count() as f64 * x / (1.0 - x)
}

/// Feasibility of every `(c, k)` pair in the given ranges.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RegionReport {
    pub c_range: (u32, u32),
    pub k_range: (usize, usize),
    /// `grid[ci][ki]` is the verdict for `c = c_min + ci`, `k = k_min + ki`.
    pub grid: Vec<Vec<bool>>,
    pub min_colors_per_k: Vec<u32>,
}

impl RegionReport {
    pub fn feasible(&self, c: u32, k: usize) -> Option<bool> {
        let ci = c.checked_sub(self.c_range.0)? as usize;
        let ki = k.checked_sub(self.k_range.0)?;
        self.grid.get(ci)?.get(ki).copied()
    }

    /// Rows are colour counts, columns run lengths, cells 0/1.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("c\\k");
        for k in self.k_range.0..=self.k_range.1 {
            let _ = write!(out, ",{k}");
        }
        out.push('\n');
        for (ci, row) in self.grid.iter().enumerate() {
            let _ = write!(out, "{}", self.c_range.0 + ci as u32);
            for &cell in row {
                out.push_str(if cell { ",1" } else { ",0" });
            }
            out.push('\n');
        }
        out
    }
}

pub fn scan_region(
    c_range: RangeInclusive<u32>,
    k_range: RangeInclusive<usize>,
) -> Result<RegionReport> {
    if c_range.is_empty() || k_range.is_empty() {
        return Err(Error::InvalidParameter(
            "empty colour or run-length range".into(),
        ));
    }
    if *k_range.start() < 2 || *c_range.start() < 2 {
        return Err(Error::InvalidParameter(
            "region scans need c >= 2 and k >= 2".into(),
        ));
    }
    let grid = c_range
        .clone()
        .map(|c| {
            k_range
                .clone()
                .map(|k| check_fpras_condition(c, k).map(|v| v.feasible))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let min_colors_per_k = k_range
        .clone()
        .map(min_colors)
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionReport {
        c_range: (*c_range.start(), *c_range.end()),
        k_range: (*k_range.start(), *k_range.end()),
        grid,
        min_colors_per_k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_candy_grid, GridSpec, Orientation};
    use approx::assert_relative_eq;
    use num_bigint::BigUint;

    // Exact integer form of the condition: c^(k-1) (D-1)^(D-1) >= D^D, D = k^2+2k-1.
    fn exact_feasible(c: u32, k: usize) -> bool {
        let d = dependency_degree(k) as u32 + 1;
        let lhs = BigUint::from(c).pow(k as u32 - 1) * BigUint::from(d - 1).pow(d - 1);
        lhs >= BigUint::from(d).pow(d)
    }

    #[test]
    fn seven_colours_suffice_for_runs_of_three() {
        let v = check_fpras_condition(7, 3).unwrap();
        assert!(v.feasible);
        assert_relative_eq!(v.rhs, 0.16509561570376285, max_relative = 1e-12);
        assert_relative_eq!(v.optimal_x, 1.0 / 14.0);
        assert_relative_eq!(v.per_edge_resample_bound, 1.0 / 13.0, max_relative = 1e-12);
        assert_eq!(v.dependency_degree, 13);
        assert!(!check_fpras_condition(6, 3).unwrap().feasible);
    }

    #[test]
    fn minimal_colour_counts() {
        assert_eq!(min_colors(2).unwrap(), 18);
        assert_eq!(min_colors(3).unwrap(), 7);
        assert_eq!(min_colors(4).unwrap(), 4);
        assert_relative_eq!(condition_rhs(4), 0.2538163434372823, max_relative = 1e-12);
        assert_relative_eq!(condition_rhs(2), 0.056652779514852314, max_relative = 1e-12);
    }

    #[test]
    fn float_and_exact_integer_forms_agree() {
        for k in 2..=12 {
            for c in 2..=40 {
                assert_eq!(
                    check_fpras_condition(c, k).unwrap().feasible,
                    exact_feasible(c, k),
                    "c={c} k={k}"
                );
            }
        }
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(check_fpras_condition(7, 1).is_err());
        assert!(check_fpras_condition(1, 3).is_err());
        assert!(min_colors(1).is_err());
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 5..=4;
        assert!(scan_region(empty, 3..=3).is_err());
        assert!(scan_region(2..=4, 1..=3).is_err());
    }

    #[test]
    fn min_colors_non_increasing_from_three() {
        let mins: Vec<u32> = (3..=12).map(|k| min_colors(k).unwrap()).collect();
        assert!(mins.windows(2).all(|w| w[1] <= w[0]), "{mins:?}");
    }

    #[test]
    fn resample_bounds() {
        let h = build_candy_grid(GridSpec::new(9, 9, 3).unwrap()).unwrap();
        assert_relative_eq!(
            expected_resample_bound(&h),
            126.0 / 13.0,
            max_relative = 1e-12
        );
        let line = build_candy_grid(GridSpec::new(1, 3, 3).unwrap()).unwrap();
        assert_relative_eq!(
            expected_resample_bound(&line),
            1.0 / 13.0,
            max_relative = 1e-12
        );
        let edgeless = build_candy_grid(GridSpec::new(2, 2, 3).unwrap()).unwrap();
        assert_eq!(expected_resample_bound(&edgeless), 0.0);
    }

    #[test]
    fn region_for_runs_of_three() {
        let r = scan_region(2..=12, 3..=3).unwrap();
        for c in 2..=12 {
            assert_eq!(r.feasible(c, 3), Some(c >= 7));
        }
        assert_eq!(r.min_colors_per_k, vec![7]);
        assert_eq!(r.feasible(13, 3), None);
    }

    #[test]
    fn region_columns_are_monotone_and_match_min_colors() {
        let r = scan_region(2..=20, 2..=8).unwrap();
        for (ki, k) in (2..=8).enumerate() {
            let column: Vec<bool> = r.grid.iter().map(|row| row[ki]).collect();
            assert!(column.windows(2).all(|w| !w[0] || w[1]));
            let first = column.iter().position(|&f| f).map(|i| i as u32 + 2);
            assert_eq!(first, Some(min_colors(k).unwrap()));
            assert_eq!(r.min_colors_per_k[ki], min_colors(k).unwrap());
        }
        let csv = r.to_csv();
        assert!(csv.starts_with("c\\k,2,3,4,5,6,7,8\n2,0,0,0,0,0,0,0\n"));
        assert_eq!(csv.lines().count(), 20);
    }

    #[test]
    fn optimal_x_is_a_local_maximum() {
        for k in 2..=8usize {
            let e = dependency_degree(k) as i32;
            let g = |x: f64| x * (1.0 - x).powi(e);
            let x = optimal_x(k);
            assert!(g(x) >= g(x + 1e-3) && g(x) >= g(x - 1e-3), "k={k}");
        }
    }

    #[test]
    fn dependency_degree_by_incidence_counting() {
        let h = build_candy_grid(GridSpec::new(10, 10, 3).unwrap()).unwrap();
        let k = 3;
        let mut max_total = 0;
        for (i, e) in h.edges().iter().enumerate() {
            let mut neighbours: Vec<usize> = e
                .vertices()
                .iter()
                .flat_map(|&v| h.incidence(v).iter().copied())
                .filter(|&f| f != i)
                .collect();
            neighbours.sort_unstable();
            neighbours.dedup();
            let parallel = neighbours
                .iter()
                .filter(|&&f| h.edges()[f].orientation() == e.orientation())
                .count();
            let perpendicular = neighbours.len() - parallel;
            assert!(parallel <= 2 * k - 2);
            assert!(perpendicular <= k * k);
            assert_ne!(e.orientation(), Orientation::Generic);
            max_total = max_total.max(neighbours.len());
        }
        assert_eq!(max_total, dependency_degree(k));
    }
}
