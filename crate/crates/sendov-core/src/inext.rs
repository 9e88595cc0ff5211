//! Linear inextensibility: first-order variation of the critical distance
//! `|p|_a` under zero perturbations, the variation matrix `A(p;a)`, and the
//! LP-certified classifier.
//!
//! A polynomial with all zeros in the closed unit disk is linearly
//! inextensible when, at every zero achieving `d(p)`, no admissible
//! first-order zero velocity strictly increases the distance to the tied
//! critical points while keeping boundary zeros inside the disk. That is
//! exactly positive singularity of `A(p;a)`, decided in `lp`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

use crate::lp::{is_positively_singular, CertKind, LpError, PosSingCertificate};
use crate::metrics::{sendov_d, MetricsError};
use crate::poly::{min_pairwise_gap, MonicPoly, PolyError};
use crate::tol::Tols;

#[derive(Debug, Clone, PartialEq)]
pub enum InextError {
    DegreeTooSmall,
    /// The zero index handed in does not exist.
    BadZeroIndex,
    /// Tracking perturbed roots to their originals was ambiguous.
    AmbiguousTracking,
    Poly(PolyError),
    Lp(LpError),
    Metrics(MetricsError),
}

impl fmt::Display for InextError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InextError::DegreeTooSmall => write!(f, "degree at least 2 required"),
            InextError::BadZeroIndex => write!(f, "zero index out of range"),
            InextError::AmbiguousTracking => write!(f, "root tracking was ambiguous"),
            InextError::Poly(e) => write!(f, "{e}"),
            InextError::Lp(e) => write!(f, "{e}"),
            InextError::Metrics(e) => write!(f, "{e}"),
        }
    }
}

impl From<PolyError> for InextError {
    fn from(e: PolyError) -> Self {
        InextError::Poly(e)
    }
}

impl From<LpError> for InextError {
    fn from(e: LpError) -> Self {
        InextError::Lp(e)
    }
}

impl From<MetricsError> for InextError {
    fn from(e: MetricsError) -> Self {
        InextError::Metrics(e)
    }
}

/// Sensitivities of the critical points to the zeros:
/// `d omega_j / d zeta_i = -p(w_j) / ((w_j - z_i)^2 p''(w_j))`,
/// an `(n-1) x n` matrix (rows: critical points, columns: zeros).
///
/// Requires simple critical points (`p''(w_j) != 0`). Rows sum to 1
/// (translation covariance), which the tests verify.
pub fn crit_by_zero_sens(p: &MonicPoly) -> Result<Vec<Vec<Complex64>>, InextError> {
    if p.degree() < 2 {
        return Err(InextError::DegreeTooSmall);
    }
    let zeros = p.roots(1e-12)?;
    let crits = p.critical_points(1e-12)?;
    let mut rows = Vec::with_capacity(crits.len());
    for &w in &crits {
        let pw = p.eval(w);
        let ppw = p.derivative_eval(2, w);
        let row = zeros
            .iter()
            .map(|&z| -pw / ((w - z) * (w - z) * ppw))
            .collect();
        rows.push(row);
    }
    Ok(rows)
}

/// Sensitivities of the zeros to the critical points under the
/// normalization `p(a) = 0` with the zero `a` held fixed:
/// `d zeta_k / d omega_l = (1 / p'(zeta_k)) \int_a^{zeta_k} p'(w)/(w - w_l) dw`,
/// an `(n-1) x (n-1)` matrix (rows: zeros other than `a`, columns:
/// critical points). The integrand is the polynomial
/// `n prod_{j != l} (w - w_j)`, so the integral is evaluated exactly.
pub fn zero_by_crit_sens(
    p: &MonicPoly,
    a_index: usize,
) -> Result<Vec<Vec<Complex64>>, InextError> {
    let n = p.degree();
    if n < 2 {
        return Err(InextError::DegreeTooSmall);
    }
    let zeros = p.roots(1e-12)?;
    if a_index >= zeros.len() {
        return Err(InextError::BadZeroIndex);
    }
    let a = zeros[a_index];
    let crits = p.critical_points(1e-12)?;
    let dp = p.derivative();

    // Integrand polynomials p'(w)/(w - w_l), one per critical point.
    let mut integrands = Vec::with_capacity(crits.len());
    for l in 0..crits.len() {
        let others: Vec<Complex64> = crits
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != l)
            .map(|(_, &w)| w)
            .collect();
        let q = if others.is_empty() {
            crate::poly::Poly::new(vec![Complex64::new(n as f64, 0.0)])
        } else {
            let mut coeffs: Vec<Complex64> =
                MonicPoly::from_roots(&others)?.as_poly().coeffs().to_vec();
            for c in coeffs.iter_mut() {
                *c *= n as f64;
            }
            crate::poly::Poly::new(coeffs)
        };
        integrands.push(q);
    }

    let mut rows = Vec::with_capacity(n - 1);
    for (k, &zk) in zeros.iter().enumerate() {
        if k == a_index {
            continue;
        }
        let dpz = dp.eval(zk);
        let row = integrands
            .iter()
            .map(|q| q.antiderivative_eval(a, zk) / dpz)
            .collect();
        rows.push(row);
    }
    Ok(rows)
}

/// Determinant of the generalized Cauchy matrix `((z_i - w_j)^{-2}))` for
/// equally sized point lists, by Gaussian elimination with partial
/// pivoting. Nonzero whenever zeros and critical points are disjoint and
/// simple, which is what makes the sensitivity system invertible.
pub fn cauchy_like_det(zeros: &[Complex64], crits: &[Complex64]) -> Complex64 {
    assert_eq!(zeros.len(), crits.len(), "point lists must have equal size");
    let n = zeros.len();
    let mut m: Vec<Vec<Complex64>> = zeros
        .iter()
        .map(|&z| crits.iter().map(|&w| ((z - w) * (z - w)).inv()).collect())
        .collect();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap())
            .unwrap();
        if m[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for i in col + 1..n {
            let factor = m[i][col] / m[col][col];
            for j in col..n {
                let sub = factor * m[col][j];
                m[i][j] -= sub;
            }
        }
    }
    det
}

/// The variation coefficients of `log |w_j - a|` at a critical point,
/// one row per critical point of `p`, columns ordered anchor first:
///
/// `alpha_1(w_j; a) = -(1/(w_j - a)) [1 + p(w_j)/((w_j - a)^2 p''(w_j))]`
/// `alpha_i(w_j; a) = -p(w_j)/((w_j - a)(w_j - z_i)^2 p''(w_j))`
///
/// so that `Re(row . v)` is the logarithmic derivative of `|w_j - a|`
/// under zero velocities `v` (anchor velocity first).
pub fn alpha_coeffs(p: &MonicPoly, a_index: usize) -> Result<Vec<Vec<Complex64>>, InextError> {
    let n = p.degree();
    if n < 2 {
        return Err(InextError::DegreeTooSmall);
    }
    let zeros = p.roots(1e-12)?;
    if a_index >= zeros.len() {
        return Err(InextError::BadZeroIndex);
    }
    let a = zeros[a_index];
    let crits = p.critical_points(1e-12)?;
    let mut rows = Vec::with_capacity(crits.len());
    for &w in &crits {
        let pw = p.eval(w);
        let ppw = p.derivative_eval(2, w);
        let wa = w - a;
        let mut row = Vec::with_capacity(n);
        row.push(-(Complex64::new(1.0, 0.0) + pw / (wa * wa * ppw)) / wa);
        for (i, &z) in zeros.iter().enumerate() {
            if i != a_index {
                row.push(-pw / (wa * (w - z) * (w - z) * ppw));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// The variation matrix `A(p;a)`: one alpha row per critical point tied at
/// the minimal distance `r(a)`, followed by one row per boundary zero
/// carrying `-conj(z_s)` in that zero's column. `Re(A x) > 0` being
/// solvable means a first-order extension direction exists.
#[derive(Debug, Clone)]
pub struct VarMatrix {
    pub rows: Vec<Vec<Complex64>>,
    /// Number of tied critical points (the alpha rows come first).
    pub r: usize,
    /// Zero indices flagged as boundary zeros, in row order.
    pub boundary_indices: Vec<usize>,
    /// Column -> zero index (anchor first).
    pub zero_order: Vec<usize>,
}

pub fn build_var_matrix(
    p: &MonicPoly,
    a_index: usize,
    tols: &Tols,
) -> Result<VarMatrix, InextError> {
    let n = p.degree();
    if n < 2 {
        return Err(InextError::DegreeTooSmall);
    }
    let zeros = p.roots(1e-12)?;
    if a_index >= zeros.len() {
        return Err(InextError::BadZeroIndex);
    }
    let a = zeros[a_index];
    let crits = p.critical_points(1e-12)?;
    let r_a = crits.iter().map(|&w| (w - a).norm()).fold(f64::infinity(), f64::min);

    let mut zero_order = Vec::with_capacity(n);
    zero_order.push(a_index);
    zero_order.extend((0..zeros.len()).filter(|&i| i != a_index));

    let alpha = alpha_coeffs(p, a_index)?;
    let mut rows = Vec::new();
    for (j, &w) in crits.iter().enumerate() {
        if (w - a).norm() <= r_a + tols.crit_tie_tol * (1.0 + r_a) {
            rows.push(alpha[j].clone());
        }
    }
    let r = rows.len();

    let mut boundary_indices = Vec::new();
    for (col, &i) in zero_order.iter().enumerate() {
        let z = zeros[i];
        if (z.norm() - 1.0).abs() <= tols.boundary_tol {
            let mut row = vec![Complex64::new(0.0, 0.0); n];
            row[col] = -z.conj();
            rows.push(row);
            boundary_indices.push(i);
        }
    }

    Ok(VarMatrix { rows, r, boundary_indices, zero_order })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InextVerdict {
    /// Every `d`-achieving zero has a positively singular variation matrix.
    LinearlyInextensible,
    /// Some achieving zero admits a strict first-order extension.
    LinearlyExtensible,
    /// The classifier's preconditions (simple zeros, simple critical
    /// points) do not hold.
    Inapplicable,
}

/// Analysis of one `d`-achieving zero.
#[derive(Debug, Clone)]
pub struct ZeroAnalysis {
    pub zero_index: usize,
    pub zero: Complex64,
    pub matrix: VarMatrix,
    pub certificate: PosSingCertificate,
}

/// A first-order extension direction, mapped back to the original zero
/// order: zero `i` moves with velocity `velocities[i]`.
#[derive(Debug, Clone)]
pub struct Extension {
    pub zero_index: usize,
    pub velocities: Vec<Complex64>,
}

#[derive(Debug, Clone)]
pub struct InextReport {
    pub verdict: InextVerdict,
    pub d: f64,
    pub zeros: Vec<Complex64>,
    /// Indices of the zeros achieving `d`.
    pub achieving: Vec<usize>,
    pub analyses: Vec<ZeroAnalysis>,
    pub extension: Option<Extension>,
    /// Set when the verdict is `Inapplicable`.
    pub note: Option<&'static str>,
}

/// Classifies `p` as linearly inextensible or extensible by testing the
/// variation matrix of every `d`-achieving zero for positive singularity.
pub fn classify_inextensible(p: &MonicPoly, tols: &Tols) -> Result<InextReport, InextError> {
    let n = p.degree();
    if n < 2 {
        return Err(InextError::DegreeTooSmall);
    }
    let zeros = p.roots(1e-12)?;
    let crits = p.critical_points(1e-12)?;
    let (d, _) = sendov_d(p)?;

    let inapplicable = |note| InextReport {
        verdict: InextVerdict::Inapplicable,
        d,
        zeros: zeros.clone(),
        achieving: Vec::new(),
        analyses: Vec::new(),
        extension: None,
        note: Some(note),
    };
    if min_pairwise_gap(&zeros) <= tols.simple_root_tol {
        return Ok(inapplicable("multiple zeros"));
    }
    if n > 2 && min_pairwise_gap(&crits) <= tols.simple_root_tol {
        return Ok(inapplicable("multiple critical points"));
    }

    let achieving: Vec<usize> = (0..zeros.len())
        .filter(|&i| {
            let dist = crits
                .iter()
                .map(|&w| (w - zeros[i]).norm())
                .fold(f64::infinity(), f64::min);
            d - dist <= tols.crit_tie_tol * (1.0 + d)
        })
        .collect();

    let mut analyses = Vec::with_capacity(achieving.len());
    let mut extension = None;
    for &i in &achieving {
        let matrix = build_var_matrix(p, i, tols)?;
        let certificate = is_positively_singular(&matrix.rows, tols.pos_sing_tol)?;
        if certificate.kind == CertKind::ImprovingDirection && extension.is_none() {
            let x = certificate.x.as_ref().expect("improving certificate carries x");
            let mut velocities = vec![Complex64::new(0.0, 0.0); zeros.len()];
            for (col, &zi) in matrix.zero_order.iter().enumerate() {
                velocities[zi] = x[col];
            }
            extension = Some(Extension { zero_index: i, velocities });
        }
        analyses.push(ZeroAnalysis { zero_index: i, zero: zeros[i], matrix, certificate });
    }

    let verdict = if extension.is_some() {
        InextVerdict::LinearlyExtensible
    } else {
        InextVerdict::LinearlyInextensible
    };
    Ok(InextReport { verdict, d, zeros, achieving, analyses, extension, note: None })
}
