//! Clebsch–Gordan coefficients for integer angular momenta.
//!
//! Coefficients are evaluated with the Racah factorial sum in exact rational
//! arithmetic and represented as `sign * sqrt(square)`; only the final value is
//! rounded to `f64`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact value `sign * sqrt(square)` of a Clebsch–Gordan coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCg {
    pub sign: i8,
    pub square: BigRational,
}

impl ExactCg {
    pub fn zero() -> Self {
        ExactCg {
            sign: 0,
            square: BigRational::zero(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let sq = self.square.numer().to_f64().unwrap() / self.square.denom().to_f64().unwrap();
        f64::from(self.sign) * sq.sqrt()
    }
}

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn triangle(a: i64, b: i64, c: i64) -> bool {
    c >= (a - b).abs() && c <= a + b
}

/// `⟨j1 m1; j2 m2 | j m⟩` exactly. Returns zero outside the selection rules.
pub fn clebsch_gordan_exact(j1: i64, m1: i64, j2: i64, m2: i64, j: i64, m: i64) -> ExactCg {
    if j1 < 0 || j2 < 0 || j < 0 {
        return ExactCg::zero();
    }
    if m1 + m2 != m || m1.abs() > j1 || m2.abs() > j2 || m.abs() > j || !triangle(j1, j2, j) {
        return ExactCg::zero();
    }
    let f = factorial;
    let pre_num = BigInt::from(2 * j + 1) * f(j + j1 - j2) * f(j - j1 + j2) * f(j1 + j2 - j)
        * f(j + m)
        * f(j - m)
        * f(j1 - m1)
        * f(j1 + m1)
        * f(j2 - m2)
        * f(j2 + m2);
    let pre = BigRational::new(pre_num, f(j1 + j2 + j + 1));

    let k_min = 0.max(j2 - j - m1).max(j1 + m2 - j);
    let k_max = (j1 + j2 - j).min(j1 - m1).min(j2 + m2);
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let denom = f(k) * f(j1 + j2 - j - k) * f(j1 - m1 - k) * f(j2 + m2 - k) * f(j - j2 + m1 + k)
            * f(j - j1 - m2 + k);
        let term = BigRational::new(BigInt::one(), denom);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return ExactCg::zero();
    }
    let sign = if sum.is_negative() { -1 } else { 1 };
    ExactCg {
        sign,
        square: pre * &sum * &sum,
    }
}

pub fn clebsch_gordan(j1: i64, m1: i64, j2: i64, m2: i64, j: i64, m: i64) -> f64 {
    clebsch_gordan_exact(j1, m1, j2, m2, j, m).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_coupling_is_unity() {
        for mu in -2..=2 {
            assert_eq!(clebsch_gordan(0, 0, 2, mu, 2, mu), 1.0);
        }
    }

    #[test]
    fn rank_two_to_zero() {
        // ⟨2 μ; 2 -μ | 0 0⟩ = (-1)^(2-μ)/√5
        for mu in -2..=2i64 {
            let exact = clebsch_gordan_exact(2, mu, 2, -mu, 0, 0);
            assert_eq!(exact.square, BigRational::new(1.into(), 5.into()));
            assert_eq!(exact.sign, if (2 - mu) % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn known_value_22_2() {
        // ⟨2 0; 2 0 | 2 0⟩ = -√(2/7)
        let exact = clebsch_gordan_exact(2, 0, 2, 0, 2, 0);
        assert_eq!(exact.sign, -1);
        assert_eq!(exact.square, BigRational::new(2.into(), 7.into()));
        // ⟨2 2; 2 -2 | 4 0⟩ = √(1/70)
        let exact = clebsch_gordan_exact(2, 2, 2, -2, 4, 0);
        assert_eq!(exact.square, BigRational::new(1.into(), 70.into()));
    }

    #[test]
    fn orthogonality() {
        for (j1, j2) in [(2, 2), (1, 2), (3, 2), (4, 4)] {
            for j in (j1 - j2 as i64).abs()..=(j1 + j2) {
                for jp in (j1 - j2 as i64).abs()..=(j1 + j2) {
                    let m = 0;
                    let s: f64 = (-j1..=j1)
                        .map(|m1| {
                            clebsch_gordan(j1, m1, j2, m - m1, j, m)
                                * clebsch_gordan(j1, m1, j2, m - m1, jp, m)
                        })
                        .sum();
                    let expect = if j == jp { 1.0 } else { 0.0 };
                    assert!((s - expect).abs() < 1e-14, "j1={j1} j2={j2} j={j} jp={jp}: {s}");
                }
            }
        }
    }

    #[test]
    fn selection_rules() {
        assert_eq!(clebsch_gordan(2, 1, 2, 1, 2, 0), 0.0);
        assert_eq!(clebsch_gordan(2, 0, 2, 0, 5, 0), 0.0);
        // odd J from identical rank-2 tensors vanishes at m1 = m2
        assert_eq!(clebsch_gordan(2, 0, 2, 0, 3, 0), 0.0);
    }
}
