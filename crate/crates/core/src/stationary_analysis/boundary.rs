//! The energy restricted to the phase-space boundary `R² = 2`.
//!
//! Every `(1 − H)` factor vanishes there, so the restriction is the polynomial
//! `1 + ζ² p_γ² + ξ/2 (A² + B²/4)`. It is optimized on the 3-sphere directly.

use nalgebra::{Matrix4, Vector4};
use serde::Serialize;

use super::points::halton_ball;
use crate::classical_limit::{hamiltonian, Jet, ModelParams, PhasePoint, Scalar, R0};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    Min,
    Max,
    OtherStationary,
}

impl BoundaryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryKind::Min => "min",
            BoundaryKind::Max => "max",
            BoundaryKind::OtherStationary => "other_stationary",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryExtremum {
    /// Point on the sphere `R = √2`.
    pub location: PhasePoint,
    pub energy: f64,
    pub kind: BoundaryKind,
    /// Sign of the outward radial derivative of `ℋ` just inside the boundary.
    pub sigma: i8,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryAnalysis {
    pub params: ModelParams,
    /// One representative per distinct stationary value, ascending in energy.
    pub extrema: Vec<BoundaryExtremum>,
    pub seeds: usize,
    pub unconverged: usize,
}

impl BoundaryAnalysis {
    pub fn min(&self) -> f64 {
        self.extrema.first().map_or(f64::NAN, |e| e.energy)
    }

    pub fn max(&self) -> f64 {
        self.extrema.last().map_or(f64::NAN, |e| e.energy)
    }

    /// Some seeds failed to converge.
    pub fn partial(&self) -> bool {
        self.unconverged > 0
    }
}

fn restricted<T: Scalar>(params: &ModelParams, v: [T; 4]) -> T {
    let [x, y, px, py] = v;
    let (zeta, xi) = params.zeta_xi();
    let pg = x * py - y * px;
    let mut e = pg * pg * (zeta * zeta) + 1.0;
    if xi != 0.0 {
        let a = x * px + y * py;
        let b = x * x + y * y - px * px - py * py;
        e = e + (a * a + b * b * 0.25) * (0.5 * xi);
    }
    e
}

fn on_sphere(dir: [f64; 4]) -> Result<[f64; 4]> {
    let n = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::Domain("boundary direction must be a nonzero vector".into()));
    }
    Ok(dir.map(|v| R0 * v / n))
}

/// `ℋ` at `√2 · direction`. The direction is normalized first.
pub fn boundary_energy(params: &ModelParams, direction: [f64; 4]) -> Result<f64> {
    Ok(hamiltonian(params, on_sphere(direction)?))
}

fn radial_sign(params: &ModelParams, z: [f64; 4]) -> i8 {
    let e0 = hamiltonian(params, z);
    let inner = z.map(|v| v * (1.0 - 1e-7));
    let d = e0 - hamiltonian(params, inner);
    if d.abs() < 1e-13 {
        0
    } else if d > 0.0 {
        1
    } else {
        -1
    }
}

/// Riemannian gradient and Hessian of the restricted energy at `z` (`|z| = √2`).
fn tangent_derivs(params: &ModelParams, z: [f64; 4]) -> (f64, Vector4<f64>, Matrix4<f64>) {
    let j: Jet = restricted(params, Jet::variables(z));
    let zv = Vector4::from(z);
    let n = zv / R0;
    let p = Matrix4::identity() - n * n.transpose();
    let g = Vector4::from(j.g);
    let hess = Matrix4::from_fn(|a, b| j.h[a][b]);
    let rg = p * g;
    let rh = p * (hess - Matrix4::identity() * (zv.dot(&g) / (R0 * R0))) * p;
    (j.v, rg, rh)
}

fn polish_sphere(params: &ModelParams, start: [f64; 4]) -> Option<[f64; 4]> {
    let mut z = start;
    let mut mu = 1e-8;
    for _ in 0..200 {
        let (_, g, h) = tangent_derivs(params, z);
        let gn = g.norm();
        if gn < 1e-12 {
            return Some(z);
        }
        let n = Vector4::from(z) / R0;
        let mut improved = false;
        for _ in 0..30 {
            let m = h * h + Matrix4::identity() * mu + n * n.transpose();
            let Some(step) = m.cholesky().map(|c| c.solve(&(h * g))) else {
                mu *= 10.0;
                continue;
            };
            let step = if step.norm() > 0.3 { step * (0.3 / step.norm()) } else { step };
            let t = Vector4::from(z) - step;
            let t = t * (R0 / t.norm());
            let trial = [t[0], t[1], t[2], t[3]];
            let (_, gt, _) = tangent_derivs(params, trial);
            if gt.norm() < gn {
                z = trial;
                mu = (mu / 3.0).max(1e-15);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if !improved {
            return (gn < 1e-9).then_some(z);
        }
    }
    None
}

fn descend(params: &ModelParams, start: [f64; 4], sign: f64) -> [f64; 4] {
    let mut z = start;
    let mut step = 0.1;
    let f = |z: [f64; 4]| sign * restricted(params, z);
    for _ in 0..500 {
        let (_, g, _) = tangent_derivs(params, z);
        let g = g * sign;
        if g.norm() < 1e-10 {
            break;
        }
        let f0 = f(z);
        loop {
            let t = Vector4::from(z) - g * step;
            let t = t * (R0 / t.norm());
            let trial = [t[0], t[1], t[2], t[3]];
            if f(trial) < f0 - 1e-4 * step * g.norm_squared() || step < 1e-12 {
                z = trial;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
    }
    z
}

/// Seeds for the boundary search.
pub const BOUNDARY_SEEDS: usize = 400;

/// Global minimum, global maximum and other stationary values of the restricted energy.
pub fn boundary_extrema(params: &ModelParams) -> Result<BoundaryAnalysis> {
    boundary_extrema_with(params, BOUNDARY_SEEDS)
}

pub fn boundary_extrema_with(params: &ModelParams, seeds: usize) -> Result<BoundaryAnalysis> {
    let starts: Vec<[f64; 4]> = halton_ball(seeds)
        .into_iter()
        .filter_map(|p| on_sphere(p.to_array()).ok())
        .collect();
    let mut cands: Vec<[f64; 4]> = Vec::new();
    let mut unconverged = 0;
    for s in &starts {
        for sign in [1.0, -1.0] {
            let d = descend(params, *s, sign);
            match polish_sphere(params, d) {
                Some(z) => cands.push(z),
                None => unconverged += 1,
            }
        }
        match polish_sphere(params, *s) {
            Some(z) => cands.push(z),
            None => unconverged += 1,
        }
    }
    let mut vals: Vec<(f64, [f64; 4])> = cands
        .into_iter()
        .map(|z| (restricted(params, z), z))
        .collect();
    vals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (emin, emax) = match (vals.first(), vals.last()) {
        (Some(a), Some(b)) => (a.0, b.0),
        _ => return Err(Error::Numerical("boundary search found no stationary point".into())),
    };
    let mut extrema: Vec<BoundaryExtremum> = Vec::new();
    for (e, z) in vals {
        if extrema.last().is_some_and(|l| (l.energy - e).abs() < 1e-9) {
            continue;
        }
        let kind = if (e - emin).abs() < 1e-9 {
            BoundaryKind::Min
        } else if (e - emax).abs() < 1e-9 {
            BoundaryKind::Max
        } else {
            BoundaryKind::OtherStationary
        };
        extrema.push(BoundaryExtremum {
            location: PhasePoint::from_array(z),
            energy: e,
            kind,
            sigma: radial_sign(params, z),
        });
    }
    Ok(BoundaryAnalysis {
        params: *params,
        extrema,
        seeds: starts.len(),
        unconverged,
    })
}

/// Closed-form global `(min, max)` of the boundary energy.
pub fn boundary_range_closed_form(lambda: f64) -> (f64, f64) {
    if lambda < 1.0 {
        (1.0, 1.0 + lambda * lambda)
    } else if lambda < 3.0 {
        (0.5 * (1.0 + lambda), 2.0)
    } else {
        (2.0, 0.5 * (1.0 + lambda))
    }
}
