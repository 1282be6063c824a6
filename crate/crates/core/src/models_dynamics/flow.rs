use serde::Serialize;

use super::ModelError;

/// Relative tolerance for a single flow evaluation.
pub const REL_TOL_SINGLE: f64 = 1e-9;
/// Relative tolerance for composed evaluations (cocycle checks).
pub const REL_TOL_COMPOSED: f64 = 1e-8;

type Mat2 = [[f64; 2]; 2];

#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct FlowEstimate {
    pub t: f64,
    pub measured_norm: f64,
    pub predicted: f64,
    pub ratio: f64,
}

impl FlowEstimate {
    pub fn new(t: f64, measured_norm: f64, predicted: f64) -> Self {
        FlowEstimate { t, measured_norm, predicted, ratio: measured_norm / predicted }
    }
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn frobenius(a: &Mat2) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

/// Matrix exponential by scaling and squaring of a Taylor series.
fn expm(a: &Mat2) -> Mat2 {
    let norm = frobenius(a);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scale = 0.5f64.powi(squarings as i32);
    let s = [[a[0][0] * scale, a[0][1] * scale], [a[1][0] * scale, a[1][1] * scale]];
    let mut result = [[1.0, 0.0], [0.0, 1.0]];
    let mut term = result;
    for k in 1..=20 {
        term = mat_mul(&term, &s);
        let inv_k = 1.0 / k as f64;
        term = [[term[0][0] * inv_k, term[0][1] * inv_k], [term[1][0] * inv_k, term[1][1] * inv_k]];
        for i in 0..2 {
            for j in 0..2 {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = mat_mul(&result, &result);
    }
    result
}

const E: Mat2 = [[0.0, 1.0], [0.0, 0.0]];
const F: Mat2 = [[0.0, 0.0], [1.0, 0.0]];
const H: Mat2 = [[1.0, 0.0], [0.0, -1.0]];

/// `a^t = exp(t·H) = diag(e^t, e^{-t})`.
fn diagonal(t: f64) -> Mat2 {
    expm(&[[t * H[0][0], 0.0], [0.0, t * H[1][1]]])
}

/// `Ad(a^{-t}) X = a^{-t} X a^{t}`: the differential of right translation by `a^t`
/// in the left-invariant frame.
fn ad_inverse_flow(t: f64, x: &Mat2) -> Mat2 {
    mat_mul(&mat_mul(&diagonal(-t), x), &diagonal(t))
}

fn check_time(t: f64) -> Result<(), ModelError> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(ModelError::NonFiniteTime(t))
    }
}

/// Norms of the flow differential on `span(E)` (stable) and `span(F)` (unstable).
pub fn diagonal_flow_differential(t: f64) -> Result<(FlowEstimate, FlowEstimate), ModelError> {
    check_time(t)?;
    let stable = frobenius(&ad_inverse_flow(t, &E)) / frobenius(&E);
    let unstable = frobenius(&ad_inverse_flow(t, &F)) / frobenius(&F);
    Ok((
        FlowEstimate::new(t, stable, (-2.0 * t).exp()),
        FlowEstimate::new(t, unstable, (2.0 * t).exp()),
    ))
}

/// Relative defect of `|Dφ^{s+t}|_{E^s}| = |Dφ^s|_{E^s}|·|Dφ^t|_{E^s}|`.
pub fn cocycle_defect(s: f64, t: f64) -> Result<f64, ModelError> {
    let (st, _) = diagonal_flow_differential(s + t)?;
    let (ss, _) = diagonal_flow_differential(s)?;
    let (tt, _) = diagonal_flow_differential(t)?;
    let product = ss.measured_norm * tt.measured_norm;
    Ok((st.measured_norm - product).abs() / product)
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct AnosovReport {
    pub ok: bool,
    pub worst_ratio: f64,
    pub estimates: Vec<FlowEstimate>,
}

/// Checks `|Dφ^t|_{E^s}| ≤ C λ^t` with `C = 1`, `λ = e^{-2}` on every grid point.
pub fn verify_anosov_estimate(t_grid: &[f64]) -> Result<AnosovReport, ModelError> {
    verify_anosov_estimate_with(t_grid, |t| diagonal_flow_differential(t).map(|(s, _)| s))
}

/// Same check against an arbitrary stable-norm measurement.
pub fn verify_anosov_estimate_with(
    t_grid: &[f64],
    measure: impl Fn(f64) -> Result<FlowEstimate, ModelError>,
) -> Result<AnosovReport, ModelError> {
    if t_grid.is_empty() {
        return Err(ModelError::EmptyGrid);
    }
    let mut estimates = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        check_time(t)?;
        if t < 0.0 {
            return Err(ModelError::NegativeTime(t));
        }
        let est = measure(t)?;
        if !(est.measured_norm > 0.0) {
            return Err(ModelError::NonPositiveNorm(est.measured_norm));
        }
        estimates.push(est);
    }
    let worst_ratio = estimates.iter().map(|e| e.ratio).fold(f64::NEG_INFINITY, f64::max);
    Ok(AnosovReport { ok: worst_ratio <= 1.0 + REL_TOL_SINGLE, worst_ratio, estimates })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_matches_closed_forms() {
        let rot = expm(&[[0.0, -1.0], [1.0, 0.0]]);
        assert!((rot[0][0] - 1f64.cos()).abs() < 1e-14);
        assert!((rot[1][0] - 1f64.sin()).abs() < 1e-14);
        let d = diagonal(5.0);
        assert!((d[0][0] / 5f64.exp() - 1.0).abs() < 1e-13);
        assert!((d[1][1] / (-5f64).exp() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn identity_at_zero() {
        let (s, u) = diagonal_flow_differential(0.0).unwrap();
        assert_eq!((s.measured_norm, u.measured_norm), (1.0, 1.0));
    }

    #[test]
    fn stable_norm_at_one() {
        let (s, _) = diagonal_flow_differential(1.0).unwrap();
        assert!((s.measured_norm / (-2f64).exp() - 1.0).abs() < REL_TOL_SINGLE);
        // Cross-check by conjugating with explicit exponentials.
        let (a, ainv) = ([[1f64.exp(), 0.0], [0.0, (-1f64).exp()]], [[(-1f64).exp(), 0.0], [0.0, 1f64.exp()]]);
        let direct = mat_mul(&mat_mul(&ainv, &E), &a);
        assert!((direct[0][1] - s.measured_norm).abs() < 1e-15);
    }

    #[test]
    fn stable_times_unstable_is_one() {
        let (s, u) = diagonal_flow_differential(3.0).unwrap();
        assert!((s.measured_norm * u.measured_norm - 1.0).abs() < REL_TOL_SINGLE);
    }

    #[test]
    fn non_finite_time_rejected() {
        assert!(matches!(diagonal_flow_differential(f64::NAN), Err(ModelError::NonFiniteTime(_))));
        assert!(diagonal_flow_differential(f64::INFINITY).is_err());
    }

    #[test]
    fn estimate_on_grids() {
        let rep = verify_anosov_estimate(&[0.1, 0.5, 1.0, 2.0, 5.0]).unwrap();
        assert!(rep.ok, "{rep:?}");
        let rep = verify_anosov_estimate(&[0.0]).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.worst_ratio, 1.0);
        assert!(verify_anosov_estimate(&[]).is_err());
        assert!(verify_anosov_estimate(&[-1.0]).is_err());
    }

    #[test]
    fn injected_violation_is_reported() {
        let rep = verify_anosov_estimate_with(&[0.1, 0.5, 1.0], |t| {
            let (s, _) = diagonal_flow_differential(t)?;
            Ok(FlowEstimate::new(t, s.measured_norm * 1.01, s.predicted))
        })
        .unwrap();
        assert!(!rep.ok);
        assert!(rep.worst_ratio > 1.0);
    }

    #[test]
    fn cocycle() {
        for (s, t) in [(0.1, 0.4), (1.0, 2.0), (2.5, 2.5)] {
            assert!(cocycle_defect(s, t).unwrap() < REL_TOL_COMPOSED);
        }
    }
}
