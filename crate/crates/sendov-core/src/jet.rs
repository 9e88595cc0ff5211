//! Degree-2 truncated power series ("jets") in a real parameter, used to
//! expand the deformation families to second order.
//!
//! `RealJet2` carries real coefficients and owns the transcendental
//! functions; a complex phase `exp(i t)` with real jet `t` is assembled as
//! `cos t + i sin t`, which is exactly the form the deformation families
//! need.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
// Unused when a std build resolves the math as inherent f64 methods.
#[allow(unused_imports)]
use num_traits::Float;

/// Real jet `c0 + c1 a + c2 a^2 + O(a^3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealJet2 {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl RealJet2 {
    pub const fn new(c0: f64, c1: f64, c2: f64) -> Self {
        RealJet2 { c0, c1, c2 }
    }

    pub const fn constant(c0: f64) -> Self {
        RealJet2 { c0, c1: 0.0, c2: 0.0 }
    }

    /// The parameter itself.
    pub const fn variable() -> Self {
        RealJet2 { c0: 0.0, c1: 1.0, c2: 0.0 }
    }

    pub fn exp(self) -> Self {
        let e = self.c0.exp();
        RealJet2 {
            c0: e,
            c1: e * self.c1,
            c2: e * (self.c2 + 0.5 * self.c1 * self.c1),
        }
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.c0.sin_cos();
        RealJet2 {
            c0: c,
            c1: -s * self.c1,
            c2: -s * self.c2 - 0.5 * c * self.c1 * self.c1,
        }
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.c0.sin_cos();
        RealJet2 {
            c0: s,
            c1: c * self.c1,
            c2: c * self.c2 - 0.5 * s * self.c1 * self.c1,
        }
    }

    /// `cos t + i sin t` as a complex jet.
    pub fn phase(self) -> Jet2 {
        let c = self.cos();
        let s = self.sin();
        Jet2 {
            c0: Complex64::new(c.c0, s.c0),
            c1: Complex64::new(c.c1, s.c1),
            c2: Complex64::new(c.c2, s.c2),
        }
    }

    pub fn into_complex(self) -> Jet2 {
        Jet2 {
            c0: Complex64::new(self.c0, 0.0),
            c1: Complex64::new(self.c1, 0.0),
            c2: Complex64::new(self.c2, 0.0),
        }
    }
}

impl Add for RealJet2 {
    type Output = RealJet2;
    fn add(self, rhs: Self) -> Self {
        RealJet2::new(self.c0 + rhs.c0, self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl Sub for RealJet2 {
    type Output = RealJet2;
    fn sub(self, rhs: Self) -> Self {
        RealJet2::new(self.c0 - rhs.c0, self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl Mul for RealJet2 {
    type Output = RealJet2;
    fn mul(self, rhs: Self) -> Self {
        RealJet2::new(
            self.c0 * rhs.c0,
            self.c0 * rhs.c1 + self.c1 * rhs.c0,
            self.c0 * rhs.c2 + self.c1 * rhs.c1 + self.c2 * rhs.c0,
        )
    }
}

impl Mul<f64> for RealJet2 {
    type Output = RealJet2;
    fn mul(self, k: f64) -> Self {
        RealJet2::new(self.c0 * k, self.c1 * k, self.c2 * k)
    }
}

/// Complex-coefficient jet in a real parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub c0: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
}

impl Jet2 {
    pub const fn new(c0: Complex64, c1: Complex64, c2: Complex64) -> Self {
        Jet2 { c0, c1, c2 }
    }

    pub fn constant(c0: Complex64) -> Self {
        Jet2 {
            c0,
            c1: Complex64::new(0.0, 0.0),
            c2: Complex64::new(0.0, 0.0),
        }
    }

    pub fn zero() -> Self {
        Jet2::constant(Complex64::new(0.0, 0.0))
    }

    /// The parameter itself.
    pub fn variable() -> Self {
        Jet2 {
            c0: Complex64::new(0.0, 0.0),
            c1: Complex64::new(1.0, 0.0),
            c2: Complex64::new(0.0, 0.0),
        }
    }

    /// Coefficient-wise conjugate; valid because the parameter is real.
    pub fn conj(self) -> Self {
        Jet2 {
            c0: self.c0.conj(),
            c1: self.c1.conj(),
            c2: self.c2.conj(),
        }
    }

    pub fn exp(self) -> Self {
        let e = self.c0.exp();
        Jet2 {
            c0: e,
            c1: e * self.c1,
            c2: e * (self.c2 + self.c1 * self.c1 * 0.5),
        }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Self) -> Self {
        Jet2::new(self.c0 + rhs.c0, self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Self) -> Self {
        Jet2::new(self.c0 - rhs.c0, self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Self {
        Jet2::new(-self.c0, -self.c1, -self.c2)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Self) -> Self {
        Jet2::new(
            self.c0 * rhs.c0,
            self.c0 * rhs.c1 + self.c1 * rhs.c0,
            self.c0 * rhs.c2 + self.c1 * rhs.c1 + self.c2 * rhs.c0,
        )
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, k: f64) -> Self {
        Jet2::new(self.c0 * k, self.c1 * k, self.c2 * k)
    }
}

impl Mul<Complex64> for Jet2 {
    type Output = Jet2;
    fn mul(self, k: Complex64) -> Self {
        Jet2::new(self.c0 * k, self.c1 * k, self.c2 * k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn close(a: Jet2, b: Jet2, tol: f64) -> bool {
        (a.c0 - b.c0).norm() <= tol && (a.c1 - b.c1).norm() <= tol && (a.c2 - b.c2).norm() <= tol
    }

    fn random_jet(rng: &mut SplitMix64) -> Jet2 {
        Jet2::new(rng.disk(1.0), rng.disk(1.0), rng.disk(1.0))
    }

    #[test]
    fn multiplication_truncates() {
        let x = Jet2::new(
            Complex64::new(1.0, 2.0),
            Complex64::new(-0.5, 0.25),
            Complex64::new(0.0, 1.0),
        );
        let y = Jet2::new(
            Complex64::new(0.5, -1.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(-1.0, -1.0),
        );
        let z = x * y;
        assert_eq!(z.c2, x.c0 * y.c2 + x.c1 * y.c1 + x.c2 * y.c0);
    }

    #[test]
    fn associativity_within_float_error() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..200 {
            let (x, y, z) = (random_jet(&mut rng), random_jet(&mut rng), random_jet(&mut rng));
            assert!(close((x * y) * z, x * (y * z), 1e-12));
        }
    }

    #[test]
    fn exp_is_multiplicative() {
        let mut rng = SplitMix64::new(23);
        for _ in 0..200 {
            let (x, y) = (random_jet(&mut rng), random_jet(&mut rng));
            assert!(close((x + y).exp(), x.exp() * y.exp(), 1e-12));
        }
    }

    #[test]
    fn phase_matches_complex_exp() {
        let t = RealJet2::new(0.7, -1.3, 0.2);
        let via_phase = t.phase();
        let via_exp = (t.into_complex() * Complex64::new(0.0, 1.0)).exp();
        assert!(close(via_phase, via_exp, 1e-15));
    }

    #[test]
    fn real_jet_trig_against_finite_differences() {
        let t = RealJet2::new(0.4, 2.0, -3.0);
        let f = |a: f64| (t.c0 + t.c1 * a + t.c2 * a * a).cos();
        let h = 1e-5;
        let c = t.cos();
        let d1 = (f(h) - f(-h)) / (2.0 * h);
        let d2 = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
        assert!((c.c1 - d1).abs() < 1e-8);
        assert!((c.c2 - 0.5 * d2).abs() < 1e-4);
    }
}
