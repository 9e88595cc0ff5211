//! Positive singularity of complex matrices, decided by linear programming.
//!
//! A matrix `M` is positively singular when some nonnegative, nonzero
//! combination of its rows vanishes; equivalently the system
//! `Re(M x) > 0` has no solution. Both directions are certified: an
//! improving direction `x` when solvable, a weight vector `mu` otherwise,
//! and each certificate is re-validated by direct arithmetic independent
//! of the solver.
//!
//! The solver is a dense two-phase tableau simplex with Bland's rule; the
//! problems here are tiny and determinism plus anti-cycling matter more
//! than speed.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpError {
    EmptyMatrix,
    /// Pivoting exceeded the iteration cap.
    Cycling,
    /// Phase 1 could not reach feasibility on a problem that is feasible
    /// by construction.
    Numerical,
    /// Primal and dual verdicts disagree; reported, never silently fixed.
    Inconsistent,
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpError::EmptyMatrix => write!(f, "matrix must be non-empty"),
            LpError::Cycling => write!(f, "simplex iteration cap exceeded"),
            LpError::Numerical => write!(f, "simplex lost feasibility"),
            LpError::Inconsistent => {
                write!(f, "primal and dual positive-singularity verdicts disagree")
            }
        }
    }
}

const PIVOT_EPS: f64 = 1e-11;
const COST_EPS: f64 = 1e-10;
const MAX_PIVOTS: usize = 100_000;

/// minimize `c.x` subject to `A x = b`, `x >= 0`.
struct StandardLp {
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    c: Vec<f64>,
}

struct LpSolution {
    x: Vec<f64>,
}

fn solve_standard(lp: &StandardLp) -> Result<LpSolution, LpError> {
    let m = lp.a.len();
    let n = lp.c.len();

    // Tableau with artificial basis: columns 0..n structural, n..n+m artificial.
    let mut t: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = if lp.b[i] < 0.0 { -1.0 } else { 1.0 };
        let mut row: Vec<f64> = lp.a[i].iter().map(|&v| v * flip).collect();
        row.resize(n + m + 1, 0.0);
        row[n + i] = 1.0;
        row[n + m] = lp.b[i] * flip;
        t.push(row);
        basis.push(n + i);
    }

    // Phase 1: minimize the sum of artificials.
    let mut phase1_cost = vec![0.0; n + m];
    for j in n..n + m {
        phase1_cost[j] = 1.0;
    }
    run_simplex(&mut t, &mut basis, &phase1_cost, n + m)?;
    let infeasibility: f64 = basis
        .iter()
        .enumerate()
        .filter(|(_, &j)| j >= n)
        .map(|(i, _)| t[i][n + m])
        .sum();
    if infeasibility > 1e-7 {
        return Err(LpError::Numerical);
    }

    // Drive remaining artificials out of the basis where possible.
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| t[i][j].abs() > PIVOT_EPS) {
                pivot(&mut t, &mut basis, i, j);
            }
        }
    }

    // Phase 2 on the structural columns only.
    let mut phase2_cost = lp.c.clone();
    phase2_cost.resize(n + m, f64::INFINITY); // never re-enter artificials
    run_simplex(&mut t, &mut basis, &phase2_cost, n)?;

    let mut x = vec![0.0; n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][n + m];
        }
    }
    Ok(LpSolution { x })
}

fn pivot(t: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize) {
    let width = t[row].len();
    let inv = 1.0 / t[row][col];
    for v in t[row].iter_mut() {
        *v *= inv;
    }
    for i in 0..t.len() {
        if i != row && t[i][col].abs() > 0.0 {
            let factor = t[i][col];
            for j in 0..width {
                t[i][j] -= factor * t[row][j];
            }
            t[i][col] = 0.0;
        }
    }
    basis[row] = col;
}

/// Bland's rule simplex over the first `active_cols` columns.
fn run_simplex(
    t: &mut Vec<Vec<f64>>,
    basis: &mut Vec<usize>,
    cost: &[f64],
    active_cols: usize,
) -> Result<(), LpError> {
    let m = t.len();
    let rhs_col = t.first().map_or(0, |r| r.len() - 1);
    for _ in 0..MAX_PIVOTS {
        // Reduced costs r_j = c_j - c_B . B^{-1} A_j, recomputed densely.
        let mut entering = None;
        for j in 0..active_cols {
            if basis.contains(&j) {
                continue;
            }
            let mut r = cost[j];
            for i in 0..m {
                let cb = cost[basis[i]];
                if cb != 0.0 && cb.is_finite() {
                    r -= cb * t[i][j];
                }
            }
            if r < -COST_EPS {
                entering = Some(j); // Bland: first improving index
                break;
            }
        }
        let Some(j) = entering else { return Ok(()) };

        // Ratio test; Bland tie-break on the smallest basis index.
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            if t[i][j] > PIVOT_EPS {
                let ratio = t[i][rhs_col] / t[i][j];
                match leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - 1e-12
                            || (ratio < lr + 1e-12 && basis[i] < basis[li])
                        {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((i, _)) = leave else {
            // Unbounded; the callers' problems are bounded by construction.
            return Err(LpError::Numerical);
        };
        pivot(t, basis, i, j);
    }
    Err(LpError::Cycling)
}

/// Which side of the Re(Mx) > 0 dichotomy a certificate witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertKind {
    /// Nonnegative weights with vanishing row combination.
    SingularWeights,
    /// A direction `x` with `min_i Re((Mx)_i) > 0`.
    ImprovingDirection,
}

#[derive(Debug, Clone)]
pub struct PosSingCertificate {
    pub kind: CertKind,
    /// Nonnegative weights summing to 1 (singular case).
    pub mu: Option<Vec<f64>>,
    /// Improving direction (solvable case).
    pub x: Option<Vec<Complex64>>,
    /// Singular: `max_j |sum_i mu_i m_ij|`. Improving: `min_i Re((Mx)_i)`.
    pub residual: f64,
}

/// Decides positive singularity of a complex `m x n` matrix given as rows.
///
/// Primal: maximize `t` with `Re((Mx)_i) >= t` and the box
/// `|Re x_j|, |Im x_j| <= 1` (positive scaling of `Re(Mx) > 0` makes the
/// box harmless). If the optimum exceeds `tol` the system is solvable.
/// Otherwise the dual search for weights `mu >= 0, sum mu = 1` minimizing
/// the max-norm of the combined row must reach `~0`.
pub fn is_positively_singular(
    rows: &[Vec<Complex64>],
    tol: f64,
) -> Result<PosSingCertificate, LpError> {
    let m = rows.len();
    if m == 0 || rows[0].is_empty() {
        return Err(LpError::EmptyMatrix);
    }
    let n = rows[0].len();
    assert!(rows.iter().all(|r| r.len() == n), "ragged matrix");

    let t_star = primal_margin(rows, m, n)?;
    if let Some((margin, x)) = t_star {
        if margin > tol {
            return Ok(PosSingCertificate {
                kind: CertKind::ImprovingDirection,
                mu: None,
                x: Some(x),
                residual: margin,
            });
        }
    }

    let mu = dual_weights(rows, m, n)?;
    let mut residual = 0.0f64;
    for j in 0..n {
        let combined: Complex64 = (0..m).map(|i| rows[i][j] * mu[i]).sum();
        residual = residual.max(combined.norm());
    }
    if residual <= tol.max(1e-9) {
        Ok(PosSingCertificate {
            kind: CertKind::SingularWeights,
            mu: Some(mu),
            x: None,
            residual,
        })
    } else {
        Err(LpError::Inconsistent)
    }
}

/// Best achievable margin `min_i Re((Mx)_i)` over the unit box, and the
/// maximizing direction; validated by direct arithmetic before returning.
fn primal_margin(
    rows: &[Vec<Complex64>],
    m: usize,
    n: usize,
) -> Result<Option<(f64, Vec<Complex64>)>, LpError> {
    // Vars: p_j = Re x_j + 1 in [0,2], q_j = Im x_j + 1 in [0,2],
    // t = tp - tm, row slacks s_i, box slacks u_j, v_j.
    let n_p = 0;
    let n_q = n;
    let i_tp = 2 * n;
    let i_tm = 2 * n + 1;
    let i_s = 2 * n + 2;
    let i_u = i_s + m;
    let i_v = i_u + n;
    let total = i_v + n;

    let mut a = Vec::with_capacity(m + 2 * n);
    let mut b = Vec::with_capacity(m + 2 * n);
    for i in 0..m {
        let mut row = vec![0.0; total];
        let mut rhs = 0.0;
        for j in 0..n {
            row[n_p + j] = rows[i][j].re;
            row[n_q + j] = -rows[i][j].im;
            rhs += rows[i][j].re - rows[i][j].im;
        }
        row[i_tp] = -1.0;
        row[i_tm] = 1.0;
        row[i_s + i] = -1.0;
        a.push(row);
        b.push(rhs);
    }
    for j in 0..n {
        let mut row = vec![0.0; total];
        row[n_p + j] = 1.0;
        row[i_u + j] = 1.0;
        a.push(row);
        b.push(2.0);
        let mut row = vec![0.0; total];
        row[n_q + j] = 1.0;
        row[i_v + j] = 1.0;
        a.push(row);
        b.push(2.0);
    }
    let mut c = vec![0.0; total];
    c[i_tp] = -1.0;
    c[i_tm] = 1.0;

    let sol = solve_standard(&StandardLp { a, b, c })?;
    let x: Vec<Complex64> = (0..n)
        .map(|j| Complex64::new(sol.x[n_p + j] - 1.0, sol.x[n_q + j] - 1.0))
        .collect();
    let margin = (0..m)
        .map(|i| {
            (0..n)
                .map(|j| (rows[i][j] * x[j]).re)
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min);
    Ok(Some((margin, x)))
}

/// Weights minimizing `max_j max(|Re|,|Im|)` of the combined row.
fn dual_weights(rows: &[Vec<Complex64>], m: usize, n: usize) -> Result<Vec<f64>, LpError> {
    // Vars: mu_i, u, then 4n slacks for the absolute-value constraints.
    let i_u = m;
    let i_slack = m + 1;
    let total = i_slack + 4 * n;

    let mut a = Vec::with_capacity(4 * n + 1);
    let mut b = Vec::with_capacity(4 * n + 1);

    let mut norm_row = vec![0.0; total];
    for j in norm_row.iter_mut().take(m) {
        *j = 1.0;
    }
    a.push(norm_row);
    b.push(1.0);

    let mut slack = i_slack;
    for j in 0..n {
        for (part, sign) in [(0, 1.0), (0, -1.0), (1, 1.0), (1, -1.0)] {
            let mut row = vec![0.0; total];
            for i in 0..m {
                let v = if part == 0 { rows[i][j].re } else { rows[i][j].im };
                row[i] = sign * v;
            }
            row[i_u] = -1.0;
            row[slack] = 1.0;
            slack += 1;
            a.push(row);
            b.push(0.0);
        }
    }
    let mut c = vec![0.0; total];
    c[i_u] = 1.0;

    let sol = solve_standard(&StandardLp { a, b, c })?;
    let mut mu: Vec<f64> = sol.x[..m].iter().map(|&v| v.max(0.0)).collect();
    let sum: f64 = mu.iter().sum();
    if sum > 0.0 {
        for v in mu.iter_mut() {
            *v /= sum;
        }
    }
    Ok(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_positive_entry_is_solvable() {
        let cert = is_positively_singular(&[vec![c(1.0, 0.0)]], 1e-9).unwrap();
        assert_eq!(cert.kind, CertKind::ImprovingDirection);
        assert!((cert.residual - 1.0).abs() < 1e-9);
        // The imaginary part of x[0] is unconstrained by a real row, so
        // only the real part is pinned by the margin objective.
        let x = cert.x.unwrap();
        assert!((x[0].re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_row_forces_singularity() {
        let rows = vec![
            vec![c(1.0, 2.0), c(-0.5, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ];
        let cert = is_positively_singular(&rows, 1e-9).unwrap();
        assert_eq!(cert.kind, CertKind::SingularWeights);
        assert!(cert.residual <= 1e-12);
        let mu = cert.mu.unwrap();
        assert!(mu[1] > 0.9);
    }

    #[test]
    fn opposite_rows_are_singular() {
        let rows = vec![
            vec![c(1.0, 1.0), c(2.0, -3.0)],
            vec![c(-1.0, -1.0), c(-2.0, 3.0)],
        ];
        let cert = is_positively_singular(&rows, 1e-9).unwrap();
        assert_eq!(cert.kind, CertKind::SingularWeights);
        assert!(cert.residual <= 1e-10);
    }

    #[test]
    fn duality_on_random_matrices() {
        let mut rng = SplitMix64::new(1234);
        let mut singular = 0usize;
        for _ in 0..500 {
            let m = 1 + (rng.next_u64() % 8) as usize;
            let n = 1 + (rng.next_u64() % 6) as usize;
            let rows: Vec<Vec<Complex64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.disk(1.0)).collect())
                .collect();
            let cert = is_positively_singular(&rows, 1e-9).unwrap();
            match cert.kind {
                CertKind::ImprovingDirection => {
                    let x = cert.x.unwrap();
                    let margin = rows
                        .iter()
                        .map(|row| {
                            row.iter().zip(&x).map(|(&a, &b)| (a * b).re).sum::<f64>()
                        })
                        .fold(f64::INFINITY, f64::min);
                    assert!(margin > 0.0);
                }
                CertKind::SingularWeights => {
                    singular += 1;
                    let mu = cert.mu.unwrap();
                    assert!(mu.iter().all(|&v| v >= 0.0));
                    assert!((mu.iter().sum::<f64>() - 1.0).abs() < 1e-9);
                    assert!(cert.residual < 1e-9);
                }
            }
        }
        // Overdetermined row sets in few columns do occur in the mix.
        assert!(singular > 0);
    }

    #[test]
    fn verdict_stable_under_row_permutation() {
        let mut rng = SplitMix64::new(9);
        let rows: Vec<Vec<Complex64>> = (0..6)
            .map(|_| (0..2).map(|_| rng.disk(1.0)).collect())
            .collect();
        let kind0 = is_positively_singular(&rows, 1e-9).unwrap().kind;
        let mut rotated = rows.clone();
        for _ in 0..rows.len() {
            rotated.rotate_left(1);
            assert_eq!(is_positively_singular(&rotated, 1e-9).unwrap().kind, kind0);
        }
    }
}
