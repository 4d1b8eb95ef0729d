use crate::error::{Error, Result};

/// Vertices of the lower convex hull of points sorted by abscissa
/// (Andrew's monotone chain, lower half). Collinear points are dropped.
pub fn lower_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for &pt in points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (pt.1 - o.1) - (a.1 - o.1) * (pt.0 - o.0);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        if let Some(last) = hull.last_mut() {
            if last.0 == pt.0 {
                last.1 = last.1.min(pt.1);
                continue;
            }
        }
        hull.push(pt);
    }
    hull
}

/// Piecewise-linear interpolation of hull vertices at `x`.
pub fn eval_hull(hull: &[(f64, f64)], x: f64) -> f64 {
    let k = hull.partition_point(|v| v.0 < x);
    if k == 0 {
        return hull[0].1;
    }
    if k == hull.len() {
        return hull[hull.len() - 1].1;
    }
    let (a, b) = (hull[k - 1], hull[k]);
    if b.0 == x {
        return b.1;
    }
    let t = (x - a.0) / (b.0 - a.0);
    a.1 + t * (b.1 - a.1)
}

/// Greatest convex function below the sampled values, evaluated at `p_values`.
pub fn lower_convex_envelope(p_values: &[f64], values: &[f64]) -> Result<Vec<f64>> {
    if p_values.len() < 2 || values.len() != p_values.len() {
        return Err(Error::GridTooSmall {
            min: 2,
            got: p_values.len().min(values.len()),
        });
    }
    let pts: Vec<(f64, f64)> = p_values.iter().copied().zip(values.iter().copied()).collect();
    let hull = lower_hull(&pts);
    Ok(p_values.iter().map(|&p| eval_hull(&hull, p)).collect())
}
