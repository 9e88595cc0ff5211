//! Constructors and classifier for the 0-maximal polynomial families, the
//! translated/scaled extremal families, and the structural identities used
//! in their derivation (self-inversive coefficient symmetry, the critical
//! circle relation, and the balance function root).
//!
//! The 0-maximal polynomials of degree n are `z^{2m} + e^{2i theta} z`
//! (n = 2m) and `z^{2m+1} + lambda e^{i theta} z^{m+1} + e^{2i theta} z`
//! (n = 2m+1, real lambda with `|lambda| <= 2 sqrt(2m+1)/(m+1)`).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

// Unused when a std build resolves the math as inherent f64 methods.
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::poly::{cluster_means, min_pairwise_gap, MonicPoly, Poly, PolyError};
use crate::tol;

#[derive(Debug, Clone, PartialEq)]
pub enum MaximalError {
    /// `|lambda|` exceeds the admissible bound for the odd family.
    LambdaOutOfBounds { lambda: f64, bound: f64 },
    /// Critical radius must be positive.
    InvalidRadius,
    DegreeTooSmall,
    /// A stated precondition of the relation check failed.
    Precondition(&'static str),
    Poly(PolyError),
}

impl fmt::Display for MaximalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaximalError::LambdaOutOfBounds { lambda, bound } => {
                write!(f, "|lambda| = {} exceeds the bound {}", lambda.abs(), bound)
            }
            MaximalError::InvalidRadius => write!(f, "radius must be positive"),
            MaximalError::DegreeTooSmall => write!(f, "degree at least 2 required"),
            MaximalError::Precondition(what) => write!(f, "precondition failed: {what}"),
            MaximalError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl From<PolyError> for MaximalError {
    fn from(e: PolyError) -> Self {
        MaximalError::Poly(e)
    }
}

/// Parameters of a 0-maximal polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroMaximalSpec {
    /// `z^{2m} + e^{2i theta} z`.
    Even { m: usize, theta: f64 },
    /// `z^{2m+1} + lambda e^{i theta} z^{m+1} + e^{2i theta} z`.
    Odd { m: usize, theta: f64, lambda: f64 },
}

impl ZeroMaximalSpec {
    pub fn degree(&self) -> usize {
        match self {
            ZeroMaximalSpec::Even { m, .. } => 2 * m,
            ZeroMaximalSpec::Odd { m, .. } => 2 * m + 1,
        }
    }
}

/// `2 sqrt(2m+1) / (m+1)`, the admissible half-width for `lambda`.
pub fn lambda_bound(m: usize) -> f64 {
    2.0 * ((2 * m + 1) as f64).sqrt() / (m as f64 + 1.0)
}

pub fn make_zero_maximal(spec: &ZeroMaximalSpec) -> Result<MonicPoly, MaximalError> {
    match *spec {
        ZeroMaximalSpec::Even { m, theta } => {
            assert!(m >= 1, "m must be at least 1");
            let n = 2 * m;
            let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
            coeffs[1] = Complex64::from_polar(1.0, 2.0 * theta);
            Ok(MonicPoly::from_coeffs(coeffs)?)
        }
        ZeroMaximalSpec::Odd { m, theta, lambda } => {
            assert!(m >= 1, "m must be at least 1");
            let bound = lambda_bound(m);
            if lambda.abs() > bound * (1.0 + 1e-12) {
                return Err(MaximalError::LambdaOutOfBounds { lambda, bound });
            }
            let n = 2 * m + 1;
            let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
            coeffs[1] = Complex64::from_polar(1.0, 2.0 * theta);
            coeffs[m + 1] = Complex64::from_polar(lambda.abs(), theta)
                * if lambda < 0.0 { -1.0 } else { 1.0 };
            Ok(MonicPoly::from_coeffs(coeffs)?)
        }
    }
}

/// Extremal family for the translated problem: `p(a) = 0`, critical points
/// at distance `R` from `a`, extreme zero at distance `R n^{1/(n-1)}`.
pub fn make_general_extremal(
    a: Complex64,
    radius: f64,
    spec: &ZeroMaximalSpec,
) -> Result<MonicPoly, MaximalError> {
    if radius <= 0.0 {
        return Err(MaximalError::InvalidRadius);
    }
    let n = spec.degree();
    // Coefficients in the shifted variable x = z - a.
    let mut shifted = vec![Complex64::new(0.0, 0.0); n + 1];
    shifted[n] = Complex64::new(1.0, 0.0);
    match *spec {
        ZeroMaximalSpec::Even { m, theta } => {
            shifted[1] = Complex64::from_polar(2.0 * m as f64 * radius.powi(2 * m as i32 - 1), theta);
        }
        ZeroMaximalSpec::Odd { m, theta, lambda } => {
            let bound = lambda_bound(m);
            if lambda.abs() > bound * (1.0 + 1e-12) {
                return Err(MaximalError::LambdaOutOfBounds { lambda, bound });
            }
            let nf = (2 * m + 1) as f64;
            shifted[m + 1] = Complex64::from_polar(nf.sqrt() * radius.powi(m as i32), theta)
                * lambda;
            shifted[1] = Complex64::from_polar(nf * radius.powi(2 * m as i32), 2.0 * theta);
        }
    }
    // Taylor shift: substitute x = z - a by repeated synthetic division.
    let coeffs = taylor_shift(&shifted, a);
    Ok(Poly::new(coeffs).monic()?)
}

/// Coefficients of `f(z - a)` given the ascending coefficients of `f`.
fn taylor_shift(coeffs: &[Complex64], a: Complex64) -> Vec<Complex64> {
    let mut out = coeffs.to_vec();
    let n = out.len();
    // Horner-style composition with (z - a): repeated division by (x + a)
    // written directly as accumulation.
    for k in 0..n {
        for j in (k..n - 1).rev() {
            let next = out[j + 1];
            out[j] = out[j] - next * a;
        }
    }
    out
}

/// Classifier verdict for membership in the 0-maximal families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ZeroMaximalEven,
    ZeroMaximalOdd,
    NotZeroMaximal,
}

/// Per-check residuals reported by the classifier. All entries are
/// nonnegative; a passing polynomial keeps every one below the tolerance.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClassifyResiduals {
    /// `|a_0|`.
    pub a0: f64,
    /// `||a_1| - 1|`.
    pub a1_modulus: f64,
    /// Max modulus over coefficients required to vanish.
    pub forbidden_coeffs: f64,
    /// Imaginary part left over when recovering real `lambda` (odd only).
    pub lambda_imag: f64,
    /// Amount by which `|lambda|` exceeds its bound (odd only).
    pub lambda_excess: f64,
    /// Max `||z| - 1|` over the non-zero zeros.
    pub root_modulus: f64,
    /// Max `||w| - (1/n)^{1/(n-1)}|` over (cluster-averaged) critical points.
    pub crit_modulus: f64,
}

impl ClassifyResiduals {
    pub fn max(&self) -> f64 {
        self.a0
            .max(self.a1_modulus)
            .max(self.forbidden_coeffs)
            .max(self.lambda_imag)
            .max(self.lambda_excess)
            .max(self.root_modulus)
            .max(self.crit_modulus)
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub verdict: Verdict,
    pub recovered: Option<ZeroMaximalSpec>,
    pub residuals: ClassifyResiduals,
}

/// Checks whether `p` belongs to the 0-maximal family of its degree and
/// recovers `(theta, lambda)`; `theta` is normalized to `[0, pi)`.
///
/// Near the boundary `|lambda| = 2 sqrt(n)... ` the derivative has double
/// zeros; the critical-modulus check then averages root clusters, where
/// the O(sqrt(eps)) individual errors cancel.
pub fn classify_zero_maximal(p: &MonicPoly, tolerance: f64) -> Classification {
    let n = p.degree();
    let coeffs = p.coeffs();
    let mut res = ClassifyResiduals::default();
    let mut failed = n < 2;

    res.a0 = coeffs[0].norm();
    let a1 = if n >= 2 { coeffs[1] } else { Complex64::new(0.0, 0.0) };
    res.a1_modulus = (a1.norm() - 1.0).abs();

    let even = n % 2 == 0;
    let m = if even { n / 2 } else { (n - 1) / 2 };
    let special = if even { usize::MAX } else { m + 1 };
    for (k, &a) in coeffs.iter().enumerate().skip(2) {
        if k != special {
            res.forbidden_coeffs = res.forbidden_coeffs.max(a.norm());
        }
    }

    // theta from a_1 = e^{2 i theta}, normalized to [0, pi).
    let mut theta = 0.5 * a1.arg();
    if theta < 0.0 {
        theta += core::f64::consts::PI;
    }
    let phase = Complex64::from_polar(1.0, theta);

    let mut lambda = 0.0;
    if !even && m + 1 < coeffs.len() {
        let lam = coeffs[m + 1] / phase;
        lambda = lam.re;
        res.lambda_imag = lam.im.abs();
        res.lambda_excess = (lambda.abs() - lambda_bound(m)).max(0.0);
    }

    if m < 1 {
        failed = true;
    }

    // Geometric checks on the zero and critical sets.
    let target = (1.0 / n as f64).powf(1.0 / (n as f64 - 1.0));
    match (p.roots(1e-12), p.critical_points(1e-12)) {
        (Ok(zeros), Ok(crits)) => {
            // The smallest-modulus zero plays the role of the zero at 0;
            // it is already covered by the a0 residual.
            let mut moduli: Vec<f64> = zeros.iter().map(|z| z.norm()).collect();
            moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for &r in moduli.iter().skip(1) {
                res.root_modulus = res.root_modulus.max((r - 1.0).abs());
            }
            let clustered = min_pairwise_gap(&crits) < tol::CLUSTER_RADIUS;
            let representatives = if clustered {
                cluster_means(&crits, tol::CLUSTER_RADIUS)
            } else {
                crits
            };
            for w in representatives {
                res.crit_modulus = res.crit_modulus.max((w.norm() - target).abs());
            }
        }
        _ => failed = true,
    }

    let passes = !failed && res.max() <= tolerance;
    let (verdict, recovered) = if !passes {
        (Verdict::NotZeroMaximal, None)
    } else if even {
        (Verdict::ZeroMaximalEven, Some(ZeroMaximalSpec::Even { m, theta }))
    } else {
        (Verdict::ZeroMaximalOdd, Some(ZeroMaximalSpec::Odd { m, theta, lambda }))
    };
    Classification { verdict, recovered, residuals: res }
}

/// Max residual of the self-inversive coefficient symmetry
/// `a_k conj(a_0) = a_n conj(a_{n-k})` over `0 <= k <= n-1`.
pub fn self_inversive_check(p: &Poly) -> f64 {
    let coeffs = p.coeffs();
    let n = coeffs.len() - 1;
    let mut residual = 0.0f64;
    for k in 0..n {
        let lhs = coeffs[k] * coeffs[0].conj();
        let rhs = coeffs[n] * coeffs[n - k].conj();
        residual = residual.max((lhs - rhs).norm());
    }
    residual
}

/// Max scale-normalized residual of the critical circle relation
/// `(n-k-1)! n R^{2k} q^{(k+1)}(alpha) = k! q'(alpha) conj(q^{(n-k)}(alpha))`
/// for `0 <= k <= n-1`.
///
/// Preconditions (`q(alpha) ~ 0`, all critical points at distance `R`
/// from `alpha`) are verified and reported as distinct errors.
pub fn critical_circle_relation_check(
    q: &MonicPoly,
    alpha: Complex64,
    radius: f64,
    tolerance: f64,
) -> Result<f64, MaximalError> {
    let n = q.degree();
    if n < 2 {
        return Err(MaximalError::DegreeTooSmall);
    }
    let scale = 1.0 + q.coeffs().iter().fold(0.0, |m, a| f64::max(m, a.norm()));
    if q.eval(alpha).norm() > tolerance * scale {
        return Err(MaximalError::Precondition("alpha is not a zero of q"));
    }
    let crits = q.critical_points(1e-12)?;
    // Cluster means keep double critical roots from spoiling the check.
    for w in cluster_means(&crits, tol::CLUSTER_RADIUS) {
        if ((w - alpha).norm() - radius).abs() > tolerance.max(1e-7) * (1.0 + radius) {
            return Err(MaximalError::Precondition(
                "critical points are not all at distance R from alpha",
            ));
        }
    }

    let derivs: Vec<Complex64> = (0..=n).map(|k| q.derivative_eval(k, alpha)).collect();
    let mut residual = 0.0f64;
    for k in 0..n {
        let lhs = factorial(n - k - 1) * n as f64 * radius.powi(2 * k as i32) * derivs[k + 1];
        let rhs = factorial(k) * derivs[1] * derivs[n - k].conj();
        let denom = lhs.norm().max(rhs.norm()).max(1.0);
        residual = residual.max((lhs - rhs).norm() / denom);
    }
    Ok(residual)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Roots of `n^{2x/(n-1)} (n - x) - n (x + 1)` in `[1, n-2]`, located by a
/// dense scan with bisection refinement. The expected answer is the
/// singleton `{(n-1)/2}`.
pub fn balance_root(n: usize) -> Vec<f64> {
    assert!(n >= 3, "n must be at least 3");
    let nf = n as f64;
    let g = |x: f64| nf.powf(2.0 * x / (nf - 1.0)) * (nf - x) - nf * (x + 1.0);
    let zero_thresh = 1e-11 * nf * nf;

    let lo = 1.0;
    let hi = nf - 2.0;
    if hi <= lo {
        // Degenerate interval [1, 1] at n = 3.
        return if g(lo).abs() <= zero_thresh { vec![lo] } else { vec![] };
    }

    let step = 1e-3;
    let mut roots: Vec<f64> = Vec::new();
    let push = |r: f64, roots: &mut Vec<f64>| {
        if roots.iter().all(|&q| (q - r).abs() > 1e-6) {
            roots.push(r);
        }
    };

    let steps = ((hi - lo) / step).ceil() as usize;
    let mut x_prev = lo;
    let mut g_prev = g(lo);
    for k in 1..=steps {
        let x = (lo + k as f64 * step).min(hi);
        let gx = g(x);
        if g_prev.abs() <= zero_thresh {
            push(x_prev, &mut roots);
        } else if gx.abs() > zero_thresh && g_prev.signum() != gx.signum() {
            // Bisect to 1e-12.
            let (mut a, mut b) = (x_prev, x);
            let (mut ga, _) = (g_prev, gx);
            while b - a > 1e-12 {
                let mid = 0.5 * (a + b);
                let gm = g(mid);
                if gm == 0.0 {
                    a = mid;
                    b = mid;
                } else if ga.signum() != gm.signum() {
                    b = mid;
                } else {
                    a = mid;
                    ga = gm;
                }
            }
            push(0.5 * (a + b), &mut roots);
        }
        x_prev = x;
        g_prev = gx;
    }
    if g_prev.abs() <= zero_thresh {
        push(x_prev, &mut roots);
    }
    roots
}
