//! Second-order forward-mode differentiation in four variables.

use std::ops::{Add, Mul, Neg, Sub};

/// Arithmetic shared by plain `f64` evaluation and [`Jet`] propagation.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Mul<f64, Output = Self>
{
    /// Square root, with tiny negative arguments from rounding clamped to zero.
    fn sqrt(self) -> Self;
}

impl Scalar for f64 {
    fn sqrt(self) -> f64 {
        f64::sqrt(self.max(0.0))
    }
}

/// Value, gradient and Hessian of a function of four variables.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub g: [f64; 4],
    pub h: [[f64; 4]; 4],
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        Jet {
            v,
            g: [0.0; 4],
            h: [[0.0; 4]; 4],
        }
    }

    /// The `k`-th independent variable at value `v`.
    pub fn variable(v: f64, k: usize) -> Self {
        let mut j = Jet::constant(v);
        j.g[k] = 1.0;
        j
    }

    pub fn variables(x: [f64; 4]) -> [Jet; 4] {
        [0, 1, 2, 3].map(|k| Jet::variable(x[k], k))
    }

    /// `f(self)` given `f`, `f'`, `f''` at `self.v`.
    fn chain(self, f: f64, d1: f64, d2: f64) -> Jet {
        let mut out = Jet::constant(f);
        for i in 0..4 {
            out.g[i] = d1 * self.g[i];
            for j in 0..4 {
                out.h[i][j] = d1 * self.h[i][j] + d2 * self.g[i] * self.g[j];
            }
        }
        out
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, o: Jet) -> Jet {
        self.v += o.v;
        for i in 0..4 {
            self.g[i] += o.g[i];
            for j in 0..4 {
                self.h[i][j] += o.h[i][j];
            }
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self * -1.0
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut out = Jet::constant(self.v * o.v);
        for i in 0..4 {
            out.g[i] = self.v * o.g[i] + o.v * self.g[i];
            for j in 0..4 {
                out.h[i][j] = self.v * o.h[i][j]
                    + o.v * self.h[i][j]
                    + self.g[i] * o.g[j]
                    + self.g[j] * o.g[i];
            }
        }
        out
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, c: f64) -> Jet {
        self.v += c;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(mut self, c: f64) -> Jet {
        self.v *= c;
        for i in 0..4 {
            self.g[i] *= c;
            for j in 0..4 {
                self.h[i][j] *= c;
            }
        }
        self
    }
}

impl Scalar for Jet {
    fn sqrt(self) -> Jet {
        let s = self.v.max(0.0).sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * s * s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_sqrt_rules() {
        let [x, y, _, _] = Jet::variables([2.0, 3.0, 0.0, 0.0]);
        // f = sqrt(x*y) * x
        let f = (x * y).sqrt() * x;
        let v = (6f64).sqrt() * 2.0;
        assert!((f.v - v).abs() < 1e-14);
        // ∂f/∂x = 1.5 sqrt(y/x)... written out: f = x^{3/2} y^{1/2}
        assert!((f.g[0] - 1.5 * (2f64 * 3.0).sqrt()).abs() < 1e-13);
        assert!((f.g[1] - 0.5 * 2f64.powf(1.5) / 3f64.sqrt()).abs() < 1e-13);
        assert!((f.h[0][0] - 0.75 * (3.0 / 2f64).sqrt()).abs() < 1e-13);
        assert!((f.h[0][1] - 0.75 * (2.0 / 3f64).sqrt()).abs() < 1e-13);
        assert_eq!(f.h[0][1], f.h[1][0]);
    }
}
