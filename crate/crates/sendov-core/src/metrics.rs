//! The two distances of the problem: the bottleneck metric `Delta` on root
//! space and the Sendov objective `d` (directed Hausdorff distance from the
//! zero set to the critical set), plus the per-zero distance `|p|_alpha`.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::matching;
use crate::poly::{MonicPoly, PolyError};

/// Root tolerance handed to the polynomial root finder by default.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricsError {
    DegreeMismatch,
    /// `delta_bruteforce` refuses degrees above 8.
    DegreeTooLarge,
    DegreeTooSmall,
    Poly(PolyError),
}

impl fmt::Display for MetricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricsError::DegreeMismatch => write!(f, "polynomials must have equal degree"),
            MetricsError::DegreeTooLarge => write!(f, "brute-force distance capped at degree 8"),
            MetricsError::DegreeTooSmall => write!(f, "degree at least 2 required"),
            MetricsError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl From<PolyError> for MetricsError {
    fn from(e: PolyError) -> Self {
        MetricsError::Poly(e)
    }
}

/// Result of a bottleneck assignment: the optimal value and a permutation
/// realizing it, with `max_i |z_i - zeta_{sigma(i)}| == value` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchResult {
    pub value: f64,
    pub permutation: Vec<usize>,
}

/// `Delta(p, q) = min over permutations of max root displacement`.
pub fn delta(p: &MonicPoly, q: &MonicPoly) -> Result<MatchResult, MetricsError> {
    if p.degree() != q.degree() {
        return Err(MetricsError::DegreeMismatch);
    }
    let zp = p.roots(DEFAULT_ROOT_TOL)?;
    let zq = q.roots(DEFAULT_ROOT_TOL)?;
    let (value, permutation) = matching::bottleneck(&zp, &zq);
    Ok(MatchResult { value, permutation })
}

/// Exhaustive oracle for `delta`; degrees above 8 are rejected.
pub fn delta_bruteforce(p: &MonicPoly, q: &MonicPoly) -> Result<MatchResult, MetricsError> {
    if p.degree() != q.degree() {
        return Err(MetricsError::DegreeMismatch);
    }
    if p.degree() > 8 {
        return Err(MetricsError::DegreeTooLarge);
    }
    let zp = p.roots(DEFAULT_ROOT_TOL)?;
    let zq = q.roots(DEFAULT_ROOT_TOL)?;
    let (value, permutation) = matching::bottleneck_bruteforce(&zp, &zq);
    Ok(MatchResult { value, permutation })
}

/// `|p|_alpha`: distance from `alpha` to the nearest critical point.
pub fn crit_dist(p: &MonicPoly, alpha: Complex64) -> Result<f64, MetricsError> {
    if p.degree() < 2 {
        return Err(MetricsError::DegreeTooSmall);
    }
    let crits = p.critical_points(DEFAULT_ROOT_TOL)?;
    Ok(crits
        .iter()
        .map(|&w| (alpha - w).norm())
        .fold(f64::INFINITY, f64::min))
}

/// The Sendov objective `d(p) = max_{z in Z(p)} min_{w in Z(p')} |z - w|`
/// and a zero achieving the maximum.
///
/// Roots are freshly polished each call; ties among maximizing zeros are
/// broken by lexicographic `(re, im)` order for determinism.
pub fn sendov_d(p: &MonicPoly) -> Result<(f64, Complex64), MetricsError> {
    if p.degree() < 2 {
        return Err(MetricsError::DegreeTooSmall);
    }
    let zeros = p.roots(DEFAULT_ROOT_TOL)?;
    let crits = p.critical_points(DEFAULT_ROOT_TOL)?;
    let mut best_value = f64::NEG_INFINITY;
    let mut witness = zeros[0];
    for &z in &zeros {
        let dist = crits
            .iter()
            .map(|&w| (z - w).norm())
            .fold(f64::INFINITY, f64::min);
        let tie = dist == best_value
            && (z.re, z.im) < (witness.re, witness.im);
        if dist > best_value || tie {
            best_value = dist;
            witness = z;
        }
    }
    Ok((best_value, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zn_minus_z(n: usize) -> MonicPoly {
        let mut coeffs = vec![c(0.0, 0.0); n];
        coeffs[1] = c(-1.0, 0.0);
        MonicPoly::from_coeffs(coeffs).unwrap()
    }

    #[test]
    fn delta_identity_and_symmetry() {
        let p = MonicPoly::from_roots(&[c(0.4, 0.1), c(-0.3, 0.5), c(0.0, -0.9)]).unwrap();
        assert_eq!(delta(&p, &p).unwrap().value, 0.0);
    }

    #[test]
    fn delta_two_point_example() {
        let p = MonicPoly::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let q = MonicPoly::from_roots(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((delta(&p, &q).unwrap().value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn delta_degree_mismatch() {
        let p = MonicPoly::from_roots(&[c(1.0, 0.0)]).unwrap();
        let q = MonicPoly::from_roots(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(delta(&p, &q), Err(MetricsError::DegreeMismatch));
    }

    #[test]
    fn bruteforce_shifted_triple_root() {
        let eps = 1e-3;
        let p = MonicPoly::from_roots(&[c(0.0, 0.0); 3]).unwrap();
        let q = MonicPoly::from_roots(&[c(eps, 0.0); 3]).unwrap();
        let m = delta_bruteforce(&p, &q).unwrap();
        assert!((m.value - eps).abs() < 1e-15);
    }

    #[test]
    fn bruteforce_degree_guard() {
        let roots: Vec<Complex64> = (0..9).map(|k| c(k as f64 * 0.1, 0.0)).collect();
        let p = MonicPoly::from_roots(&roots).unwrap();
        assert_eq!(delta_bruteforce(&p, &p), Err(MetricsError::DegreeTooLarge));
    }

    #[test]
    fn crit_dist_of_zn_minus_z() {
        for n in 2..=30usize {
            let target = (1.0 / n as f64).powf(1.0 / (n as f64 - 1.0));
            let v = crit_dist(&zn_minus_z(n), c(0.0, 0.0)).unwrap();
            assert!((v - target).abs() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn crit_dist_simple_cases() {
        let p = MonicPoly::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!(crit_dist(&p, c(0.0, 0.0)).unwrap() < 1e-15);

        // |z^4 + z|_0 = 4^{-1/3}
        let mut coeffs = vec![c(0.0, 0.0); 4];
        coeffs[1] = c(1.0, 0.0);
        let q = MonicPoly::from_coeffs(coeffs).unwrap();
        let target = 4.0f64.powf(-1.0 / 3.0);
        assert!((crit_dist(&q, c(0.0, 0.0)).unwrap() - target).abs() < 1e-12);
    }

    #[test]
    fn sendov_d_of_zn_minus_z() {
        for n in [3usize, 4, 7, 12] {
            let target = (1.0 / n as f64).powf(1.0 / (n as f64 - 1.0));
            let (v, witness) = sendov_d(&zn_minus_z(n)).unwrap();
            assert!((v - target).abs() < 1e-12);
            assert!(witness.norm() < 1e-12);
        }
    }

    #[test]
    fn sendov_d_of_cubic_family() {
        for t in [0.0, 0.05, 0.1] {
            let q = MonicPoly::from_roots(&[c(0.0, t), c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
            let target = ((1.0 + t * t) / 3.0).sqrt();
            let (v, witness) = sendov_d(&q).unwrap();
            assert!((v - target).abs() < 1e-12, "t={t}");
            assert!((witness - c(0.0, t)).norm() < 1e-12);
        }
    }

    #[test]
    fn sendov_d_degenerate() {
        let p = MonicPoly::from_roots(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let (v, _) = sendov_d(&p).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn metric_axioms_on_random_triples() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..100 {
            let n = 2 + (rng.next_u64() % 6) as usize;
            let mk = |rng: &mut SplitMix64| {
                let roots: Vec<Complex64> = (0..n).map(|_| rng.disk(1.0)).collect();
                MonicPoly::from_roots(&roots).unwrap()
            };
            let p = mk(&mut rng);
            let q = mk(&mut rng);
            let r = mk(&mut rng);
            let pq = delta(&p, &q).unwrap().value;
            let qp = delta(&q, &p).unwrap().value;
            assert_eq!(pq, qp);
            let qr = delta(&q, &r).unwrap().value;
            let pr = delta(&p, &r).unwrap().value;
            assert!(pr <= pq + qr + 1e-12);
        }
    }

    #[test]
    fn d_bounded_by_two_on_random_members() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..1000 {
            let n = 2 + (rng.next_u64() % 7) as usize;
            let roots: Vec<Complex64> = (0..n).map(|_| rng.disk(1.0)).collect();
            let p = MonicPoly::from_roots(&roots).unwrap();
            let (v, _) = sendov_d(&p).unwrap();
            assert!(v <= 2.0 + 1e-12);
        }
    }
}
