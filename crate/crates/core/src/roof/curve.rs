//! Characteristic curves `measure(√p|Φ⟩ − e^{iφ}√(1−p)|W⟩)` over a (p, φ)
//! grid, their pointwise phase minimum, and its lower convex envelope.

use std::f64::consts::TAU;

use rayon::prelude::*;

use super::hull::{eval_hull, lower_hull};
use crate::error::{Error, Result};
use crate::invariants::{measure, InvariantKind};
use crate::qstate::RankTwoFamily;

pub const DEFAULT_P_POINTS: usize = 2001;
pub const DEFAULT_PHI_POINTS: usize = 720;

/// Cap on golden-section refinements per envelope.
const MAX_REFINEMENTS: usize = 64;

/// `n` uniform points covering [0, 1] inclusive.
pub fn uniform_p_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|i| i as f64 / (n - 1) as f64).collect(),
    }
}

/// `n` uniform phases covering [0, 2π).
pub fn uniform_phi_grid(n: usize) -> Vec<f64> {
    (0..n).map(|j| TAU * j as f64 / n as f64).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveGrid {
    pub p_values: Vec<f64>,
    pub phi_values: Vec<f64>,
    /// Row-major: `samples[i * phi_values.len() + j]` is the value at (p_i, φ_j).
    pub samples: Vec<f64>,
}

impl CurveGrid {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.samples[i * self.phi_values.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.phi_values.len();
        &self.samples[i * n..(i + 1) * n]
    }

    /// Applies `f` to every sample, e.g. to turn F into G = F^{1/k}.
    pub fn map(&self, f: impl Fn(f64) -> f64 + Sync) -> CurveGrid {
        CurveGrid {
            p_values: self.p_values.clone(),
            phi_values: self.phi_values.clone(),
            samples: self.samples.par_iter().map(|&v| f(v)).collect(),
        }
    }
}

fn check_grids(p_grid: &[f64], phi_grid: &[f64]) -> Result<()> {
    if p_grid.is_empty() || phi_grid.is_empty() {
        return Err(Error::GridTooSmall {
            min: 1,
            got: p_grid.len().min(phi_grid.len()),
        });
    }
    for &p in p_grid {
        crate::error::check_unit_interval("p", p)?;
    }
    for &phi in phi_grid {
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
                lo: 0.0,
                hi: TAU,
            });
        }
    }
    Ok(())
}

fn check_kind(fam: &RankTwoFamily, kind: InvariantKind) -> Result<()> {
    if fam.num_qubits() != kind.num_qubits() {
        return Err(Error::QubitCount {
            expected: kind.num_qubits(),
            actual: fam.num_qubits(),
        });
    }
    Ok(())
}

#[inline]
fn point_value(fam: &RankTwoFamily, kind: InvariantKind, p: f64, phi: f64) -> f64 {
    kind.eval_unchecked(fam.superpose_unchecked(p, phi).amplitudes())
}

pub fn characteristic_curve(
    fam: &RankTwoFamily,
    kind: InvariantKind,
    p_grid: &[f64],
    phi_grid: &[f64],
) -> Result<CurveGrid> {
    check_kind(fam, kind)?;
    check_grids(p_grid, phi_grid)?;
    let cols = phi_grid.len();
    let mut samples = vec![0.0; p_grid.len() * cols];
    samples
        .par_chunks_mut(cols)
        .zip(p_grid.par_iter())
        .for_each(|(row, &p)| {
            for (cell, &phi) in row.iter_mut().zip(phi_grid) {
                *cell = point_value(fam, kind, p, phi);
            }
        });
    Ok(CurveGrid {
        p_values: p_grid.to_vec(),
        phi_values: phi_grid.to_vec(),
        samples,
    })
}

/// Curves for several measures of the same family in one pass; the
/// four-way measures share their contraction tables per sample.
pub fn characteristic_curves(
    fam: &RankTwoFamily,
    kinds: &[InvariantKind],
    p_grid: &[f64],
    phi_grid: &[f64],
) -> Result<Vec<CurveGrid>> {
    for &kind in kinds {
        check_kind(fam, kind)?;
    }
    check_grids(p_grid, phi_grid)?;
    let (cols, nk) = (phi_grid.len(), kinds.len());
    // row i holds, for each φ, the nk values side by side
    let rows: Vec<Vec<f64>> = p_grid
        .par_iter()
        .map(|&p| {
            let mut row = vec![0.0; cols * nk];
            for (cell, &phi) in row.chunks_mut(nk).zip(phi_grid) {
                let s = fam.superpose_unchecked(p, phi);
                InvariantKind::eval_many_unchecked(kinds, s.amplitudes(), cell);
            }
            row
        })
        .collect();
    Ok((0..nk)
        .map(|k| CurveGrid {
            p_values: p_grid.to_vec(),
            phi_values: phi_grid.to_vec(),
            samples: rows.iter().flat_map(|r| r.iter().skip(k).step_by(nk).copied()).collect(),
        })
        .collect())
}

/// Pointwise minimum over φ; ties go to the smallest φ index.
pub fn min_curve(grid: &CurveGrid) -> Vec<f64> {
    min_curve_with_arg(grid).0
}

pub fn min_curve_with_arg(grid: &CurveGrid) -> (Vec<f64>, Vec<usize>) {
    (0..grid.p_values.len())
        .map(|i| {
            grid.row(i)
                .iter()
                .enumerate()
                .fold((f64::INFINITY, 0), |(best, arg), (j, &v)| if v < best { (v, j) } else { (best, arg) })
        })
        .unzip()
}

/// Golden-section search for a minimum of a unimodal `f` on [a, b].
pub fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, max_iter: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..max_iter {
        if (b - a).abs() <= 2.0 * f64::EPSILON * (a.abs() + b.abs()) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let candidates = [(a, f(a)), (c, fc), (d, fd), (b, f(b))];
    candidates
        .into_iter()
        .fold((a, f64::INFINITY), |best, x| if x.1 < best.1 { x } else { best })
}

/// Phase minimum at a single `p`: grid scan followed by golden-section
/// polishing between the neighbours of the best grid phase.
pub fn phase_minimum(fam: &RankTwoFamily, kind: InvariantKind, p: f64, phi_grid: &[f64]) -> f64 {
    let n = phi_grid.len();
    let (mut best, mut arg) = (f64::INFINITY, 0);
    for (j, &phi) in phi_grid.iter().enumerate() {
        let v = point_value(fam, kind, p, phi);
        if v < best {
            best = v;
            arg = j;
        }
    }
    if n < 3 {
        return best;
    }
    let lo = if arg == 0 { phi_grid[n - 1] - TAU } else { phi_grid[arg - 1] };
    let hi = if arg == n - 1 { phi_grid[0] + TAU } else { phi_grid[arg + 1] };
    let (_, polished) = golden_min(|phi| point_value(fam, kind, p, phi), lo, hi, 120);
    best.min(polished)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeResult {
    pub p_values: Vec<f64>,
    pub min_curve: Vec<f64>,
    pub hull_curve: Vec<f64>,
    /// Off-grid points added by refining local minima of the min curve.
    pub refined: Vec<(f64, f64)>,
}

/// Hull of the phase-minimum curve, anchored at the two pure endpoints.
///
/// Local minima of the sampled min curve that touch the hull are refined
/// off-grid by golden-section search before the final hull is built: for
/// measures with a fractional-power zero (G, τ₃) the nearest grid point can
/// sit far above the true minimum.
pub fn envelope_from_grid(fam: &RankTwoFamily, kind: InvariantKind, grid: &CurveGrid) -> Result<EnvelopeResult> {
    check_kind(fam, kind)?;
    let p = &grid.p_values;
    if p.len() < 2 {
        return Err(Error::GridTooSmall { min: 2, got: p.len() });
    }
    let mins = min_curve(grid);
    let anchors = [
        (0.0, measure(kind, fam.w())?),
        (1.0, measure(kind, fam.phi())?),
    ];

    let mut points: Vec<(f64, f64)> = p.iter().copied().zip(mins.iter().copied()).collect();
    points.extend(anchors);
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    let coarse = lower_hull(&points);

    let mut refined = Vec::new();
    for i in 1..p.len() - 1 {
        if refined.len() >= MAX_REFINEMENTS {
            break;
        }
        let v = mins[i];
        let is_local_min = v < mins[i - 1] && v <= mins[i + 1] && v > 0.0;
        let on_hull = coarse.iter().any(|h| h.0 == p[i]);
        if !(is_local_min && on_hull) {
            continue;
        }
        let (x, fx) = golden_min(|q| phase_minimum(fam, kind, q, &grid.phi_values), p[i - 1], p[i + 1], 200);
        if fx < v {
            refined.push((x, fx));
        }
    }

    let hull = if refined.is_empty() {
        coarse
    } else {
        points.extend(refined.iter().copied());
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        lower_hull(&points)
    };
    let hull_curve = p.iter().map(|&x| eval_hull(&hull, x)).collect();
    Ok(EnvelopeResult {
        p_values: p.clone(),
        min_curve: mins,
        hull_curve,
        refined,
    })
}

pub fn envelope(fam: &RankTwoFamily, kind: InvariantKind, p_grid: &[f64], phi_grid: &[f64]) -> Result<EnvelopeResult> {
    let grid = characteristic_curve(fam, kind, p_grid, phi_grid)?;
    envelope_from_grid(fam, kind, &grid)
}

/// Interior zero of the curve at fixed `phase`: the deepest interior local
/// minimum of a 1001-point scan, polished by golden-section search.
pub fn nontrivial_zero(fam: &RankTwoFamily, kind: InvariantKind, phase: f64) -> Result<Option<f64>> {
    check_kind(fam, kind)?;
    let n = 1001;
    let grid = uniform_p_grid(n);
    let vals: Vec<f64> = grid.iter().map(|&p| point_value(fam, kind, p, phase)).collect();
    let scale = vals.iter().copied().fold(0.0, f64::max);
    let best = (1..n - 1)
        .filter(|&i| vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1])
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    let Some(i) = best else { return Ok(None) };
    let (x, fx) = golden_min(|p| point_value(fam, kind, p, phase), grid[i - 1], grid[i + 1], 300);
    Ok((fx <= 1e-6 * scale.max(1.0)).then_some(x))
}

/// Where the hull leaves the min curve on its way to the endpoint
/// (1, `end_value`): the maximizer of the slope (end_value − m(p))/(1 − p)
/// over [lo, hi], m being the phase minimum.
pub fn tangent_breakpoint(
    fam: &RankTwoFamily,
    kind: InvariantKind,
    phi_grid: &[f64],
    lo: f64,
    hi: f64,
) -> Result<f64> {
    check_kind(fam, kind)?;
    let end_value = measure(kind, fam.phi())?;
    let slope = |p: f64| -(end_value - phase_minimum(fam, kind, p, phi_grid)) / (1.0 - p);
    let n: usize = 401;
    let step = (hi - lo) / (n - 1) as f64;
    let i = (0..n)
        .min_by(|&a, &b| slope(lo + a as f64 * step).total_cmp(&slope(lo + b as f64 * step)))
        .unwrap_or(0);
    let a = lo + i.saturating_sub(1) as f64 * step;
    let b = (lo + (i + 1) as f64 * step).min(hi);
    Ok(golden_min(slope, a, b, 200).0)
}
