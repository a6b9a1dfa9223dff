use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Radius of the compact phase-space ball.
pub const R0: f64 = std::f64::consts::SQRT_2;

/// Cartesian point `(x, y, p_x, p_y)` of the L=0 phase space.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: f64,
    pub y: f64,
    pub px: f64,
    pub py: f64,
}

/// Bohr-type polar coordinates `(β, γ, p_β, p_γ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarPoint {
    pub beta: f64,
    pub gamma: f64,
    pub p_beta: f64,
    pub p_gamma: f64,
}

impl PhasePoint {
    pub const ORIGIN: PhasePoint = PhasePoint {
        x: 0.0,
        y: 0.0,
        px: 0.0,
        py: 0.0,
    };

    pub fn new(x: f64, y: f64, px: f64, py: f64) -> Self {
        PhasePoint { x, y, px, py }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        PhasePoint::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x, self.y, self.px, self.py]
    }

    pub fn r2(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.px * self.px + self.py * self.py
    }

    pub fn coord_r2(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn momentum_norm(&self) -> f64 {
        (self.px * self.px + self.py * self.py).sqrt()
    }

    pub fn distance(&self, other: &PhasePoint) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn in_domain(&self) -> bool {
        self.r2() <= R0 * R0 * (1.0 + 1e-12)
    }

    pub fn check_domain(&self) -> Result<()> {
        if self.in_domain() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "point {:?} has R² = {} > 2",
                self.to_array(),
                self.r2()
            )))
        }
    }

    pub fn from_polar(p: PolarPoint) -> Self {
        let (s, c) = p.gamma.sin_cos();
        PhasePoint {
            x: p.beta * c,
            y: p.beta * s,
            px: p.p_beta * c - p.p_gamma / p.beta * s,
            py: p.p_beta * s + p.p_gamma / p.beta * c,
        }
    }

    /// Polar form; `γ ∈ [0, 2π)`. Undefined momenta at `β = 0` are returned as NaN.
    pub fn to_polar(&self) -> PolarPoint {
        let beta = self.coord_r2().sqrt();
        let gamma = self.y.atan2(self.x).rem_euclid(std::f64::consts::TAU);
        PolarPoint {
            beta,
            gamma,
            p_beta: (self.x * self.px + self.y * self.py) / beta,
            p_gamma: self.x * self.py - self.y * self.px,
        }
    }

    /// Rotation of coordinates and momenta together by angle `phi` in the `(x, y)` plane.
    pub fn rotated(&self, phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        PhasePoint {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
            px: c * self.px - s * self.py,
            py: s * self.px + c * self.py,
        }
    }

    /// `(y, p_y) → (−y, −p_y)`.
    pub fn reflected(&self) -> Self {
        PhasePoint::new(self.x, -self.y, self.px, -self.py)
    }

    /// `p → −p`.
    pub fn time_reversed(&self) -> Self {
        PhasePoint::new(self.x, self.y, -self.px, -self.py)
    }

    /// Orbit under the twelve-element group generated by `γ → γ + 2π/3`, the
    /// reflection `y → −y`, and time reversal.
    pub fn symmetry_orbit(&self) -> [PhasePoint; 12] {
        let mut out = [PhasePoint::ORIGIN; 12];
        let mut k = 0;
        for base in [*self, self.reflected()] {
            for t in [base, base.time_reversed()] {
                for r in 0..3 {
                    out[k] = t.rotated(f64::from(r) * std::f64::consts::TAU / 3.0);
                    k += 1;
                }
            }
        }
        out
    }

    /// Smallest distance between `other` and any symmetry image of `self`.
    pub fn orbit_distance(&self, other: &PhasePoint) -> f64 {
        self.symmetry_orbit()
            .iter()
            .map(|p| p.distance(other))
            .fold(f64::INFINITY, f64::min)
    }
}
