//! Numeric spot-checks for flows of tangent vector fields: a classical
//! fourth-order Runge-Kutta integrator for `ż = ξ(z)` with the variational
//! equation `V̇ = Dξ(z) V` carried along a tangent frame.
//!
//! The check reports two scalars. The drift is the largest `|p_n(z(t))|`
//! seen along the trajectory, measuring how far the numeric flow leaves
//! the hypersurface. The volume distortion compares the chart volume of
//! the transported tangent frame against its initial value; a flow
//! annihilating the volume form keeps the ratio at one. Completeness of
//! the flows is not certified here, only sampled.

use crate::forms::{Hypersurface, VectorField};
use crate::poly::{rational_to_f64, Coeff, Polynomial};
use num_complex::Complex64;

/// Tolerances and guards for a flow run.
#[derive(Debug, Clone, Copy)]
pub struct FlowSettings {
    /// Largest `|p_n(start)|` accepted as on-surface.
    pub tol_on: f64,
    /// Drift acceptance used by callers that grade the run.
    pub tol_drift: f64,
    /// Distortion acceptance used by callers that grade the run.
    pub tol_distortion: f64,
    /// Norm bound beyond which the run is flagged as blown up.
    pub norm_bound: f64,
}

impl Default for FlowSettings {
    fn default() -> Self {
        FlowSettings {
            tol_on: 1e-12,
            tol_drift: 1e-9,
            tol_distortion: 1e-6,
            norm_bound: 1e6,
        }
    }
}

/// One sampled row of the trajectory record.
#[derive(Debug, Clone)]
pub struct TraceRow {
    pub t: f64,
    pub point: Vec<Complex64>,
    pub p_abs: f64,
    pub volume_ratio: f64,
}

/// Outcome of one integration run.
#[derive(Debug, Clone)]
pub struct FlowOutcome {
    pub endpoint: Vec<Complex64>,
    /// max over the trajectory of `|p_n(z(t))|`.
    pub drift: f64,
    /// max over the trajectory of `|volume ratio - 1|`.
    pub distortion: f64,
    pub blew_up: bool,
    pub trace: Vec<TraceRow>,
}

struct FieldEval {
    coeffs: Vec<Polynomial>,
    jacobian: Vec<Vec<Polynomial>>,
}

impl FieldEval {
    fn new(field: &VectorField) -> Self {
        let n = field.level();
        let coeffs: Vec<Polynomial> = field.coeffs().to_vec();
        let jacobian = coeffs
            .iter()
            .map(|c| (1..=n).map(|j| c.partial_derivative(j)).collect())
            .collect();
        FieldEval { coeffs, jacobian }
    }

    fn velocity(&self, z: &[Complex64]) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.eval_complex(z)).collect()
    }

    /// `Dξ(z) · V` column by column.
    fn variational(&self, z: &[Complex64], v: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        let n = self.coeffs.len();
        let jac: Vec<Vec<Complex64>> = self
            .jacobian
            .iter()
            .map(|row| row.iter().map(|e| e.eval_complex(z)).collect())
            .collect();
        v.iter()
            .map(|col| {
                (0..n)
                    .map(|l| (0..n).map(|k| jac[l][k] * col[k]).sum())
                    .collect()
            })
            .collect()
    }
}

/// Convert an exact rational point to complex floats.
pub fn to_complex_point(point: &[Coeff]) -> Vec<Complex64> {
    point
        .iter()
        .map(|c| Complex64::new(rational_to_f64(c), 0.0))
        .collect()
}

fn determinant(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|a, b| m[*a][col].norm().total_cmp(&m[*b][col].norm()))
            .unwrap();
        if m[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in (col + 1)..n {
            let factor = m[row][col] / m[col][col];
            for k in col..n {
                let sub = factor * m[col][k];
                m[row][k] -= sub;
            }
        }
    }
    det
}

/// Chart volume of a tangent frame: the minor omitting the chart row,
/// divided by `∂p/∂z_chart` at the point.
fn chart_volume(
    surface: &Hypersurface,
    chart: usize,
    z: &[Complex64],
    frame: &[Vec<Complex64>],
) -> Complex64 {
    let n = surface.level();
    let minor: Vec<Vec<Complex64>> = (1..=n)
        .filter(|row| *row != chart)
        .map(|row| frame.iter().map(|col| col[row - 1]).collect())
        .collect();
    determinant(minor) / surface.partial(chart).eval_complex(z)
}

/// Integrate the flow of `field` from `start` for time `t_final` in `steps`
/// RK4 steps, transporting a tangent frame by the variational equation.
///
/// The start point must satisfy `|p_n(start)| < tol_on`. A trajectory whose
/// norm exceeds the configured bound is reported as blown up, not fatal.
pub fn flow_rk4(
    surface: &Hypersurface,
    field: &VectorField,
    start: &[Complex64],
    t_final: f64,
    steps: usize,
    settings: &FlowSettings,
) -> FlowOutcome {
    let n = surface.level();
    assert_eq!(field.level(), n, "level mismatch");
    assert_eq!(start.len(), n, "point length mismatch");
    assert!(steps >= 1, "at least one step");
    let p0 = surface.defining_polynomial().eval_complex(start).norm();
    assert!(
        p0 < settings.tol_on,
        "start point is off the hypersurface: |p| = {p0:e}"
    );

    // Tangent frame at the start, built in the best-conditioned chart:
    // v_k = e_k - (∂_k p / ∂_c p) e_c for k ≠ c.
    let grad0: Vec<Complex64> = (1..=n)
        .map(|k| surface.partial(k).eval_complex(start))
        .collect();
    let chart = (1..=n)
        .max_by(|a, b| grad0[a - 1].norm().total_cmp(&grad0[b - 1].norm()))
        .unwrap();
    let mut frame: Vec<Vec<Complex64>> = Vec::with_capacity(n - 1);
    for k in 1..=n {
        if k == chart {
            continue;
        }
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        col[k - 1] = Complex64::new(1.0, 0.0);
        col[chart - 1] = -grad0[k - 1] / grad0[chart - 1];
        frame.push(col);
    }
    let volume0 = chart_volume(surface, chart, start, &frame);

    let eval = FieldEval::new(field);
    let h = t_final / steps as f64;
    let mut z = start.to_vec();
    let mut drift = p0;
    let mut distortion = 0.0f64;
    let mut blew_up = false;
    let stride = (steps / 16).max(1);
    let mut trace = Vec::new();

    let record = |t: f64, z: &[Complex64], frame: &[Vec<Complex64>], trace: &mut Vec<TraceRow>| {
        let p_abs = surface.defining_polynomial().eval_complex(z).norm();
        let ratio = (chart_volume(surface, chart, z, frame) / volume0).norm();
        trace.push(TraceRow {
            t,
            point: z.to_vec(),
            p_abs,
            volume_ratio: ratio,
        });
    };
    record(0.0, &z, &frame, &mut trace);

    for step in 0..steps {
        // One RK4 step on the combined state (z, frame).
        let k1z = eval.velocity(&z);
        let k1v = eval.variational(&z, &frame);
        let z2 = advance(&z, &k1z, h / 2.0);
        let f2 = advance_frame(&frame, &k1v, h / 2.0);
        let k2z = eval.velocity(&z2);
        let k2v = eval.variational(&z2, &f2);
        let z3 = advance(&z, &k2z, h / 2.0);
        let f3 = advance_frame(&frame, &k2v, h / 2.0);
        let k3z = eval.velocity(&z3);
        let k3v = eval.variational(&z3, &f3);
        let z4 = advance(&z, &k3z, h);
        let f4 = advance_frame(&frame, &k3v, h);
        let k4z = eval.velocity(&z4);
        let k4v = eval.variational(&z4, &f4);
        for i in 0..n {
            z[i] += (k1z[i] + 2.0 * k2z[i] + 2.0 * k3z[i] + k4z[i]) * (h / 6.0);
        }
        for (col, (c1, (c2, (c3, c4)))) in frame
            .iter_mut()
            .zip(k1v.iter().zip(k2v.iter().zip(k3v.iter().zip(k4v.iter()))))
        {
            for i in 0..n {
                col[i] += (c1[i] + 2.0 * c2[i] + 2.0 * c3[i] + c4[i]) * (h / 6.0);
            }
        }

        let t = (step + 1) as f64 * h;
        let p_abs = surface.defining_polynomial().eval_complex(&z).norm();
        let ratio = (chart_volume(surface, chart, &z, &frame) / volume0).norm();
        drift = drift.max(p_abs);
        distortion = distortion.max((ratio - 1.0).abs());
        if (step + 1) % stride == 0 || step + 1 == steps {
            record(t, &z, &frame, &mut trace);
        }
        if z.iter().map(|c| c.norm()).fold(0.0, f64::max) > settings.norm_bound {
            blew_up = true;
            break;
        }
    }

    FlowOutcome {
        endpoint: z,
        drift,
        distortion,
        blew_up,
        trace,
    }
}

fn advance(z: &[Complex64], k: &[Complex64], h: f64) -> Vec<Complex64> {
    z.iter().zip(k).map(|(a, b)| a + b * h).collect()
}

fn advance_frame(v: &[Vec<Complex64>], k: &[Vec<Complex64>], h: f64) -> Vec<Vec<Complex64>> {
    v.iter()
        .zip(k)
        .map(|(col, kc)| col.iter().zip(kc).map(|(a, b)| a + b * h).collect())
        .collect()
}

/// Empirical convergence order of the integrator: the least-squares slope
/// of `log(endpoint error)` against `log(h)`, with the error measured
/// against a reference run four times finer than the finest requested.
/// For a fourth-order scheme the slope sits near 4.
///
/// The surface drift itself is not used as the error measure: on flows
/// whose linearisation is trace-free and constant, the one-step stability
/// factors in opposite eigendirections multiply to `1 + O(h^6)`, so the
/// drift can shrink a full order faster than the trajectory error.
pub fn convergence_order(
    surface: &Hypersurface,
    field: &VectorField,
    start: &[Complex64],
    t_final: f64,
    step_counts: &[usize],
    settings: &FlowSettings,
) -> f64 {
    let finest = step_counts.iter().copied().max().expect("step counts");
    let reference = flow_rk4(surface, field, start, t_final, finest * 4, settings).endpoint;
    let points: Vec<(f64, f64)> = step_counts
        .iter()
        .map(|steps| {
            let outcome = flow_rk4(surface, field, start, t_final, *steps, settings);
            let err = outcome
                .endpoint
                .iter()
                .zip(&reference)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            ((t_final / *steps as f64).ln(), err.max(1e-300).ln())
        })
        .collect();
    let m = points.len() as f64;
    let sx: f64 = points.iter().map(|(x, _)| x).sum();
    let sy: f64 = points.iter().map(|(_, y)| y).sum();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    (m * sxy - sx * sy) / (m * sxx - sx * sx)
}
