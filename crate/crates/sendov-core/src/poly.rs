//! Complex polynomial core: monic representation, arithmetic,
//! differentiation, exact antiderivative evaluation and root finding.
//!
//! Roots are computed with Aberth–Ehrlich simultaneous iteration followed
//! by a guarded Newton polish. Multiple roots are reported individually;
//! callers that require simple zeros check the minimal pairwise gap.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

use crate::tol;

/// Aberth–Ehrlich iteration cap.
const MAX_ITERS: usize = 200;
/// Newton polishing steps applied after the simultaneous iteration.
const POLISH_STEPS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// `from_roots` was handed an empty list.
    EmptyRoots,
    /// A coefficient or root contains NaN/Inf.
    NonFinite,
    /// Degree too small for the requested operation.
    DegreeTooSmall,
    /// The simultaneous iteration failed to settle within the iteration cap.
    NonConvergence,
    /// The zero polynomial has no roots to speak of.
    ZeroPolynomial,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::EmptyRoots => write!(f, "root list must be non-empty"),
            PolyError::NonFinite => write!(f, "non-finite coefficient or root"),
            PolyError::DegreeTooSmall => write!(f, "degree too small for this operation"),
            PolyError::NonConvergence => {
                write!(f, "root iteration did not converge within {MAX_ITERS} steps")
            }
            PolyError::ZeroPolynomial => write!(f, "zero polynomial"),
        }
    }
}

fn all_finite(values: &[Complex64]) -> bool {
    values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Monic complex polynomial `z^n + a_{n-1} z^{n-1} + ... + a_0`, with the
/// coefficients stored ascending and the leading `1` implicit.
///
/// A polynomial built from its roots keeps them cached; `roots` then only
/// polishes the cache instead of re-running the simultaneous iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPoly {
    coeffs: Vec<Complex64>,
    cached_roots: Option<Vec<Complex64>>,
}

impl MonicPoly {
    /// Builds from ascending coefficients `a_0..a_{n-1}` (leading 1 implied).
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self, PolyError> {
        if coeffs.is_empty() {
            return Err(PolyError::DegreeTooSmall);
        }
        if !all_finite(&coeffs) {
            return Err(PolyError::NonFinite);
        }
        Ok(MonicPoly { coeffs, cached_roots: None })
    }

    /// Monic polynomial with the given root multiset.
    pub fn from_roots(roots: &[Complex64]) -> Result<Self, PolyError> {
        if roots.is_empty() {
            return Err(PolyError::EmptyRoots);
        }
        if !all_finite(roots) {
            return Err(PolyError::NonFinite);
        }
        let coeffs = expand_from_roots(roots);
        Ok(MonicPoly { coeffs, cached_roots: Some(roots.to_vec()) })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Ascending coefficients `a_0..a_{n-1}`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn cached_roots(&self) -> Option<&[Complex64]> {
        self.cached_roots.as_deref()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            acc = acc * z + a;
        }
        acc
    }

    /// Derivative; degree `n-1` with leading coefficient `n`.
    pub fn derivative(&self) -> Poly {
        let n = self.degree();
        let mut coeffs = Vec::with_capacity(n);
        for (k, &a) in self.coeffs.iter().enumerate().skip(1) {
            coeffs.push(a * k as f64);
        }
        coeffs.push(Complex64::new(n as f64, 0.0));
        Poly { coeffs }
    }

    /// The full root multiset.
    ///
    /// With a cached root list only a Newton polish is applied, so families
    /// built via `from_roots` evaluate their zero sets exactly.
    pub fn roots(&self, _tol: f64) -> Result<Vec<Complex64>, PolyError> {
        if let Some(cached) = &self.cached_roots {
            let mut roots = cached.clone();
            polish(&self.coeffs, &mut roots);
            return Ok(roots);
        }
        aberth(&self.coeffs)
    }

    /// Zeros of the derivative.
    pub fn critical_points(&self, tol: f64) -> Result<Vec<Complex64>, PolyError> {
        if self.degree() < 2 {
            return Err(PolyError::DegreeTooSmall);
        }
        self.derivative().roots(tol)
    }

    /// Value of `p^{(k)}` at `z`.
    pub fn derivative_eval(&self, k: usize, z: Complex64) -> Complex64 {
        let mut p = self.as_poly();
        for _ in 0..k {
            p = p.derivative();
        }
        p.eval(z)
    }

    /// General-coefficient view (leading 1 made explicit).
    pub fn as_poly(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.push(Complex64::new(1.0, 0.0));
        Poly { coeffs }
    }
}

/// Polynomial with arbitrary complex coefficients, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.norm() == 0.0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().expect("non-empty coefficient list")
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            acc = acc * z + a;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly { coeffs: vec![Complex64::new(0.0, 0.0)] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| a * k as f64)
            .collect();
        Poly { coeffs }
    }

    /// Scales away the leading coefficient; errors on the zero polynomial.
    pub fn monic(&self) -> Result<MonicPoly, PolyError> {
        let lead = self.leading();
        if lead.norm() == 0.0 {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.degree() == 0 {
            return Err(PolyError::DegreeTooSmall);
        }
        let coeffs = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|&a| a / lead)
            .collect();
        MonicPoly::from_coeffs(coeffs)
    }

    pub fn roots(&self, tol: f64) -> Result<Vec<Complex64>, PolyError> {
        self.monic()?.roots(tol)
    }

    /// Exact `\int_a^z q(w) dw` via the closed-form primitive.
    pub fn antiderivative_eval(&self, a: Complex64, z: Complex64) -> Complex64 {
        let primitive = |t: Complex64| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &c) in self.coeffs.iter().enumerate().rev() {
                acc = acc * t + c / (k as f64 + 1.0);
            }
            acc * t
        };
        primitive(z) - primitive(a)
    }
}

/// `\int_a^z q(w) dw` for a coefficient-given polynomial.
pub fn antiderivative_eval(q: &Poly, a: Complex64, z: Complex64) -> Complex64 {
    q.antiderivative_eval(a, z)
}

fn expand_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    // coeffs of prod (z - r), ascending, leading 1 dropped at the end
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= r * c;
        }
        coeffs = next;
    }
    coeffs.pop();
    coeffs
}

/// Horner evaluation of the monic polynomial together with its derivative
/// and the scale `sum |a_k| |z|^k` used for residual-based convergence.
fn eval_with_scale(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let az = z.norm();
    let mut p = Complex64::new(1.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut s = 1.0;
    for &a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        s = s * az + a.norm();
    }
    (p, dp, s)
}

/// Aberth–Ehrlich with equally spaced starts on a circle of radius
/// `1 + max |a_k|` and a fixed phase offset to break symmetry.
fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>, PolyError> {
    let n = coeffs.len();
    if n == 1 {
        return Ok(vec![-coeffs[0]]);
    }
    let radius = 1.0 + coeffs.iter().fold(0.0, |m, a| f64::max(m, a.norm()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let phi = core::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::new(radius * phi.cos(), radius * phi.sin())
        })
        .collect();

    for _ in 0..MAX_ITERS {
        let mut all_done = true;
        for i in 0..n {
            let (p, dp, s) = eval_with_scale(coeffs, z[i]);
            if p.norm() <= 1e-14 * s {
                continue;
            }
            let newton = if dp.norm() > 0.0 {
                p / dp
            } else {
                Complex64::new(1e-12 * (1.0 + z[i].norm()), 0.0)
            };
            let mut repulse = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        repulse += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulse;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            z[i] -= step;
            if step.norm() > 1e-13 * (1.0 + z[i].norm()) {
                all_done = false;
            }
        }
        if all_done {
            polish(coeffs, &mut z);
            return Ok(z);
        }
    }
    Err(PolyError::NonConvergence)
}

/// Guarded Newton polish: a step is accepted only if it does not increase
/// the residual, which keeps clustered roots from bouncing.
fn polish(coeffs: &[Complex64], roots: &mut [Complex64]) {
    for z in roots.iter_mut() {
        for _ in 0..POLISH_STEPS {
            let (p, dp, s) = eval_with_scale(coeffs, *z);
            if p.norm() <= 1e-16 * s || dp.norm() == 0.0 {
                break;
            }
            let candidate = *z - p / dp;
            let (pc, _, _) = eval_with_scale(coeffs, candidate);
            if pc.norm() <= p.norm() {
                *z = candidate;
            } else {
                break;
            }
        }
    }
}

/// Smallest pairwise distance in a point set (`inf` for singletons).
pub fn min_pairwise_gap(points: &[Complex64]) -> f64 {
    let mut gap = f64::infinity();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            gap = gap.min((points[i] - points[j]).norm());
        }
    }
    gap
}

/// Greedy clustering with the given radius; returns the mean of each
/// cluster. Used where double roots are structural (boundary-`lambda`
/// critical points) and individual roots carry an O(sqrt(eps)) error that
/// cancels in the cluster mean.
pub fn cluster_means(points: &[Complex64], radius: f64) -> Vec<Complex64> {
    let mut assigned = vec![false; points.len()];
    let mut means = Vec::new();
    for i in 0..points.len() {
        if assigned[i] {
            continue;
        }
        let mut sum = points[i];
        let mut count = 1.0;
        assigned[i] = true;
        for j in i + 1..points.len() {
            if !assigned[j] && (points[j] - points[i]).norm() <= radius {
                assigned[j] = true;
                sum += points[j];
                count += 1.0;
            }
        }
        means.push(sum / count);
    }
    means
}

/// Verifies the cached-root invariants of the spec: residual at each root
/// and coefficient round trip.
pub fn check_root_invariants(p: &MonicPoly) -> bool {
    let Some(roots) = p.cached_roots() else { return true };
    let max_coeff = p.coeffs().iter().fold(0.0, |m, a| f64::max(m, a.norm()));
    let residual_ok = roots
        .iter()
        .all(|&z| p.eval(z).norm() <= tol::ROOT_RESIDUAL_TOL * (1.0 + max_coeff));
    let expanded = expand_from_roots(roots);
    let roundtrip_ok = expanded
        .iter()
        .zip(p.coeffs())
        .all(|(a, b)| (a - b).norm() <= tol::COEFF_ROUNDTRIP_TOL * (1.0 + max_coeff));
    residual_ok && roundtrip_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn from_roots_difference_of_squares() {
        let p = MonicPoly::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert_eq!(p.coeffs(), &[c(-1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn from_roots_z4_minus_z() {
        let omega = Complex64::from_polar(1.0, core::f64::consts::TAU / 3.0);
        let p = MonicPoly::from_roots(&[c(0.0, 0.0), c(1.0, 0.0), omega, omega * omega]).unwrap();
        // z^4 - z
        assert!((p.coeffs()[0]).norm() < 1e-15);
        assert!((p.coeffs()[1] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((p.coeffs()[2]).norm() < 1e-15);
        assert!((p.coeffs()[3]).norm() < 1e-15);
    }

    #[test]
    fn from_roots_all_zero() {
        let p = MonicPoly::from_roots(&[c(0.0, 0.0); 5]).unwrap();
        assert!(p.coeffs().iter().all(|a| a.norm() == 0.0));
        assert_eq!(p.degree(), 5);
    }

    #[test]
    fn from_roots_empty_errors() {
        assert_eq!(MonicPoly::from_roots(&[]), Err(PolyError::EmptyRoots));
    }

    #[test]
    fn derivative_power_rule() {
        // z^4 - z -> 4z^3 - 1
        let p = MonicPoly::from_coeffs(vec![c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let dp = p.derivative();
        assert_eq!(dp.coeffs(), &[c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(4.0, 0.0)]);

        // z^2 -> 2z
        let q = MonicPoly::from_coeffs(vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(q.derivative().coeffs(), &[c(0.0, 0.0), c(2.0, 0.0)]);
    }

    #[test]
    fn derivative_of_zn_plus_phase_z() {
        let n = 7usize;
        let phase = Complex64::from_polar(1.0, 1.1);
        let mut coeffs = vec![c(0.0, 0.0); n];
        coeffs[1] = phase;
        let p = MonicPoly::from_coeffs(coeffs).unwrap();
        let dp = p.derivative();
        assert_eq!(dp.degree(), n - 1);
        assert!((dp.coeffs()[0] - phase).norm() < 1e-15);
        assert!((dp.leading() - c(n as f64, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn roots_of_cubic() {
        let p = MonicPoly::from_coeffs(vec![c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let mut roots = p.roots(1e-12).unwrap();
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((roots[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!(roots[1].norm() < 1e-12);
        assert!((roots[2] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn critical_moduli_of_zn_minus_z() {
        for n in 3..=12usize {
            let mut coeffs = vec![c(0.0, 0.0); n];
            coeffs[1] = c(-1.0, 0.0);
            let p = MonicPoly::from_coeffs(coeffs).unwrap();
            let crits = p.critical_points(1e-12).unwrap();
            let target = (1.0 / n as f64).powf(1.0 / (n as f64 - 1.0));
            assert_eq!(crits.len(), n - 1);
            for w in crits {
                assert!((w.norm() - target).abs() < 1e-12, "n={n}");
            }
        }
    }

    #[test]
    fn double_root_reported_twice() {
        // (z - 0.5)^2 from coefficients, no cache
        let p = MonicPoly::from_coeffs(vec![c(0.25, 0.0), c(-1.0, 0.0)]).unwrap();
        let roots = p.roots(1e-12).unwrap();
        assert_eq!(roots.len(), 2);
        for z in roots {
            assert!((z - c(0.5, 0.0)).norm() < 1e-6);
        }
    }

    #[test]
    fn antiderivative_closed_forms() {
        let one = Poly::new(vec![c(1.0, 0.0)]);
        assert!((one.antiderivative_eval(c(0.0, 0.0), c(0.0, 1.0)) - c(0.0, 1.0)).norm() < 1e-15);

        let two_w = Poly::new(vec![c(0.0, 0.0), c(2.0, 0.0)]);
        let val = two_w.antiderivative_eval(c(0.0, 0.0), c(1.0, 1.0));
        assert!((val - c(0.0, 2.0)).norm() < 1e-15);
    }

    /// Adaptive Simpson quadrature along the segment from `a` to `z`,
    /// used as an independent oracle for the closed-form primitive.
    fn simpson_segment(q: &Poly, a: Complex64, z: Complex64) -> Complex64 {
        let f = |t: f64| q.eval(a + (z - a) * t) * (z - a);
        fn simpson(
            f: &dyn Fn(f64) -> Complex64,
            lo: f64,
            hi: f64,
            flo: Complex64,
            fmid: Complex64,
            fhi: Complex64,
            depth: usize,
        ) -> Complex64 {
            let mid = 0.5 * (lo + hi);
            let lmid = 0.5 * (lo + mid);
            let rmid = 0.5 * (mid + hi);
            let flm = f(lmid);
            let frm = f(rmid);
            let whole = (flo + fmid * 4.0 + fhi) * ((hi - lo) / 6.0);
            let left = (flo + flm * 4.0 + fmid) * ((mid - lo) / 6.0);
            let right = (fmid + frm * 4.0 + fhi) * ((hi - mid) / 6.0);
            if depth == 0 || (left + right - whole).norm() < 1e-13 {
                left + right
            } else {
                simpson(f, lo, mid, flo, flm, fmid, depth - 1)
                    + simpson(f, mid, hi, fmid, frm, fhi, depth - 1)
            }
        }
        simpson(&f, 0.0, 1.0, f(0.0), f(0.5), f(1.0), 20)
    }

    #[test]
    fn antiderivative_matches_quadrature() {
        // q = p'(w)/(w - w_l) for p = z^4 - z, at each critical point w_l
        let p = MonicPoly::from_coeffs(vec![c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let crits = p.critical_points(1e-12).unwrap();
        for (l, _) in crits.iter().enumerate() {
            let others: Vec<Complex64> =
                crits.iter().enumerate().filter(|(j, _)| *j != l).map(|(_, &w)| w).collect();
            let mut q = Poly::new(expand_from_roots_full(&others));
            for coeff in q.coeffs.iter_mut() {
                *coeff *= 4.0;
            }
            let a = c(0.0, 0.0);
            let z = c(1.0, 0.0);
            let exact = q.antiderivative_eval(a, z);
            let quad = simpson_segment(&q, a, z);
            assert!((exact - quad).norm() < 1e-10, "w_{l}");
        }
    }

    fn expand_from_roots_full(roots: &[Complex64]) -> Vec<Complex64> {
        let mut coeffs = expand_from_roots(roots);
        coeffs.push(c(1.0, 0.0));
        coeffs
    }

    #[test]
    fn roundtrip_random_multisets() {
        let mut rng = SplitMix64::new(0xfeed_beef);
        for trial in 0..500 {
            let n = 1 + (rng.next_u64() % 12) as usize;
            let roots: Vec<Complex64> = (0..n).map(|_| rng.disk(2.0)).collect();
            let p = MonicPoly::from_coeffs(expand_from_roots(&roots)).unwrap();
            let found = p.roots(1e-12).unwrap();
            let m = crate::matching::bottleneck_value(&roots, &found);
            assert!(m < 1e-8, "trial {trial}: bottleneck {m}");
        }
    }
}
