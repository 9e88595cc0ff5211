//! The acceptance suite: thirteen numbered criteria, each a self-timed
//! check with pinned tolerances and a runtime budget. Used by both the
//! `verify` subcommand and the integration test suite.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::time::Instant;

use sendov_core::inext::{crit_by_zero_sens, zero_by_crit_sens};
use sendov_core::lp::{is_positively_singular, CertKind};
use sendov_core::matching::bottleneck_value;
use sendov_core::maximal::{balance_root, classify_zero_maximal, lambda_bound, make_zero_maximal,
    ZeroMaximalSpec};
use sendov_core::metrics::{crit_dist, delta, delta_bruteforce, sendov_d};
use sendov_core::poly::{min_pairwise_gap, MonicPoly, Poly};
use sendov_core::rng::SplitMix64;
use sendov_core::variation::{boundary_push_scan, default_fit_grid, derive_quartic_coefficients,
    directional_decrease_check, fit_growth, push_gap_bound, quartic_comparison_roots,
    quartic_family, quintic_family, log_log_slope, QuarticConstants, QuinticConstants};
use sendov_core::{Complex64, InextVerdict, Tols};

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget: f64,
}

const NAMES: [&str; 13] = [
    "zero-maximal-value",
    "classification-round-trip",
    "znz-inextensible",
    "lp-duality",
    "quartic-constant",
    "quintic-constant",
    "non-maximality-witnesses",
    "quartic-rederivation",
    "cubic-order-slopes",
    "sensitivity-correctness",
    "bottleneck-oracle",
    "inequality-sweeps",
    "local-maximality-probe",
];

const BUDGETS: [f64; 13] =
    [1.0, 5.0, 2.0, 10.0, 2.0, 2.0, 1.0, 1.0, 2.0, 10.0, 10.0, 30.0, 30.0];

/// Runs one criterion (1-based id).
pub fn run_criterion(id: usize, seed: u64) -> Outcome {
    assert!((1..=13).contains(&id), "criterion id out of range");
    let start = Instant::now();
    let (passed, mut detail) = match id {
        1 => c01_zero_maximal_value(),
        2 => c02_classification_round_trip(),
        3 => c03_znz_inextensible(),
        4 => c04_lp_duality(seed),
        5 => c05_quartic_constant(),
        6 => c06_quintic_constant(),
        7 => c07_non_maximality_witnesses(),
        8 => c08_quartic_rederivation(),
        9 => c09_cubic_order_slopes(),
        10 => c10_sensitivity_correctness(seed),
        11 => c11_bottleneck_oracle(seed),
        12 => c12_inequality_sweeps(seed),
        13 => c13_local_maximality_probe(seed),
        _ => unreachable!(),
    };
    let seconds = start.elapsed().as_secs_f64();
    let budget = BUDGETS[id - 1];
    let mut passed = passed;
    if seconds > budget {
        passed = false;
        detail.push_str(&format!(" [over budget: {seconds:.2}s > {budget}s]"));
    }
    Outcome { id, name: NAMES[id - 1], passed, detail, seconds, budget }
}

/// Runs every criterion in order.
pub fn run_all(seed: u64) -> Vec<Outcome> {
    (1..=13).map(|id| run_criterion(id, seed)).collect()
}

fn zn_minus_z(n: usize) -> MonicPoly {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    coeffs[1] = Complex64::new(-1.0, 0.0);
    MonicPoly::from_coeffs(coeffs).expect("finite coefficients")
}

fn maximal_value(n: usize) -> f64 {
    let nf = n as f64;
    (1.0 / nf).powf(1.0 / (nf - 1.0))
}

fn c01_zero_maximal_value() -> (bool, String) {
    let mut worst = 0.0f64;
    for n in 2..=30 {
        let v = crit_dist(&zn_minus_z(n), Complex64::new(0.0, 0.0)).expect("degree >= 2");
        worst = worst.max((v - maximal_value(n)).abs());
    }
    (worst < 1e-10, format!("max |value - (1/n)^(1/(n-1))| = {worst:.3e} over n=2..30"))
}

fn c02_classification_round_trip() -> (bool, String) {
    let mut worst_res = 0.0f64;
    let mut worst_d = 0.0f64;
    let mut ok = true;
    for &m in &[1usize, 2, 3, 5, 10] {
        let bound = lambda_bound(m);
        let mut specs = vec![];
        for &theta in &[0.0, 0.7, FRAC_PI_2] {
            specs.push(ZeroMaximalSpec::Even { m, theta });
            for &lambda in &[0.0, 0.5 * bound, -0.5 * bound, bound, -bound] {
                specs.push(ZeroMaximalSpec::Odd { m, theta, lambda });
            }
        }
        for spec in specs {
            let p = make_zero_maximal(&spec).expect("in-range spec");
            let cl = classify_zero_maximal(&p, 1e-8);
            let family_ok = matches!(
                (&spec, &cl.recovered),
                (ZeroMaximalSpec::Even { .. }, Some(ZeroMaximalSpec::Even { .. }))
                    | (ZeroMaximalSpec::Odd { .. }, Some(ZeroMaximalSpec::Odd { .. }))
            );
            ok &= family_ok;
            worst_res = worst_res.max(cl.residuals.max());
            // At the boundary |lambda| the derivative has double zeros;
            // the root finder stalls ~1e-8 away from them, so refine each
            // cluster mean by Newton on the matching higher derivative
            // (a k-fold critical root is a simple root of p^(k+1)).
            let raw = p.critical_points(1e-12).expect("degree >= 2");
            let crits: Vec<Complex64> = cluster_groups(&raw, 1e-6)
                .into_iter()
                .map(|group| {
                    let mut w = group.iter().sum::<Complex64>() / group.len() as f64;
                    if group.len() > 1 {
                        for _ in 0..4 {
                            let g = p.derivative_eval(group.len(), w);
                            let dg = p.derivative_eval(group.len() + 1, w);
                            if dg.norm() == 0.0 {
                                break;
                            }
                            w -= g / dg;
                        }
                    }
                    w
                })
                .collect();
            let dist = |z: Complex64| {
                crits.iter().map(|&w| (z - w).norm()).fold(f64::INFINITY, f64::min)
            };
            let p0 = dist(Complex64::new(0.0, 0.0));
            let d = p.roots(1e-12)
                .expect("simple roots")
                .into_iter()
                .map(dist)
                .fold(0.0f64, f64::max);
            worst_d = worst_d.max((d - p0).abs());
        }
    }
    (
        ok && worst_res < 1e-8 && worst_d < 1e-10,
        format!("max residual {worst_res:.3e}, max |d - |p|_0| = {worst_d:.3e}"),
    )
}

/// Greedy clustering of points within `radius` of a representative.
fn cluster_groups(points: &[Complex64], radius: f64) -> Vec<Vec<Complex64>> {
    let mut used = vec![false; points.len()];
    let mut groups = Vec::new();
    for i in 0..points.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut group = vec![points[i]];
        for j in i + 1..points.len() {
            if !used[j] && (points[j] - points[i]).norm() < radius {
                used[j] = true;
                group.push(points[j]);
            }
        }
        groups.push(group);
    }
    groups
}

fn c03_znz_inextensible() -> (bool, String) {
    let tols = Tols::default();
    let mut worst = 0.0f64;
    let mut ok = true;
    for n in 3..=12 {
        let report = classify_inextensible_znz(n, &tols);
        ok &= report.0;
        worst = worst.max(report.1);
    }
    (ok && worst < 1e-9, format!("all inextensible, max certificate residual {worst:.3e}"))
}

fn classify_inextensible_znz(n: usize, tols: &Tols) -> (bool, f64) {
    let report = sendov_core::classify_inextensible(&zn_minus_z(n), tols).expect("simple zeros");
    let verdict_ok = report.verdict == InextVerdict::LinearlyInextensible;
    let res = report
        .analyses
        .iter()
        .map(|a| a.certificate.residual)
        .fold(0.0f64, f64::max);
    (verdict_ok, res)
}

fn c04_lp_duality(seed: u64) -> (bool, String) {
    let mut rng = SplitMix64::new(seed ^ 0x9e3779b97f4a7c15);
    let mut singular = 0usize;
    let mut solvable = 0usize;
    for _ in 0..500 {
        let m = 1 + (rng.next_u64() % 5) as usize;
        let n = 1 + (rng.next_u64() % 4) as usize;
        let rows: Vec<Vec<Complex64>> =
            (0..m).map(|_| (0..n).map(|_| rng.disk(2.0)).collect()).collect();
        let cert = is_positively_singular(&rows, 1e-9).expect("nonempty matrix");
        match cert.kind {
            CertKind::ImprovingDirection => {
                // Re-validate: the returned direction really satisfies
                // Re(Mx) > 0 entrywise.
                let x = cert.x.as_ref().expect("improving certificate carries x");
                let margin = rows
                    .iter()
                    .map(|row| {
                        row.iter().zip(x).map(|(&a, &b)| (a * b).re).sum::<f64>()
                    })
                    .fold(f64::INFINITY, f64::min);
                if margin <= 0.0 {
                    return (false, format!("improving direction with margin {margin}"));
                }
                solvable += 1;
            }
            CertKind::SingularWeights => {
                let mu = cert.mu.as_ref().expect("singular certificate carries mu");
                let sum: f64 = mu.iter().sum();
                if mu.iter().any(|&w| w < -1e-12) || (sum - 1.0).abs() > 1e-9 {
                    return (false, "invalid weight vector".to_string());
                }
                let combo_norm = (0..n)
                    .map(|j| {
                        let s: Complex64 =
                            rows.iter().zip(mu).map(|(row, &w)| row[j] * w).sum();
                        s.norm()
                    })
                    .fold(0.0f64, f64::max);
                if combo_norm > 1e-8 {
                    return (false, format!("weight combination norm {combo_norm:.3e}"));
                }
                singular += 1;
            }
        }
    }
    (
        singular + solvable == 500,
        format!("500 matrices: {solvable} solvable, {singular} positively singular, all certificates re-validated"),
    )
}

fn c05_quartic_constant() -> (bool, String) {
    let k = QuarticConstants::new();
    let fit = fit_growth(&quartic_family(), &default_fit_grid()).expect("valid grid");
    let rel = (fit.c2 - k.c).abs() / k.c;
    let c0_err = (fit.c0 - k.r).abs();
    (rel < 0.02 && c0_err < 1e-6, format!("c2 = {:.6} (rel err {rel:.3e}), c0 err {c0_err:.3e}", fit.c2))
}

fn c06_quintic_constant() -> (bool, String) {
    let k = QuinticConstants::new();
    let (family, _) = quintic_family();
    let fit = fit_growth(&family, &default_fit_grid()).expect("valid grid");
    let rel = (fit.c2 - k.k).abs() / k.k;
    let c0_err = (fit.c0 - k.s).abs();
    (rel < 0.02 && c0_err < 1e-6, format!("c2 = {:.6} (rel err {rel:.3e}), c0 err {c0_err:.3e}", fit.c2))
}

fn c07_non_maximality_witnesses() -> (bool, String) {
    let quartic = quartic_family();
    let (quintic, _) = quintic_family();
    let (d4, _) = sendov_d(&quartic.baseline).expect("degree >= 2");
    let (d5, _) = sendov_d(&quintic.baseline).expect("degree >= 2");
    let mut ok = true;
    // The quartic gain is quadratic with a negative cubic correction that
    // wins near a = 7e-3; its witness grid stays below that.
    for k in 0..12 {
        let a4 = 1e-3 * (5.0f64).powf(k as f64 / 11.0);
        let (da, _) = sendov_d(&quartic.eval(a4)).expect("degree >= 2");
        ok &= da > d4;
        let a5 = 1e-3 * (10.0f64).powf(k as f64 / 11.0);
        let (db, _) = sendov_d(&quintic.eval(a5)).expect("degree >= 2");
        ok &= db > d5;
    }
    // Cubic family (z - it)(z^2 - 1): d = sqrt((1 + t^2)/3).
    let mut worst = 0.0f64;
    for &t in &[0.0, 0.05, 0.1, 0.2] {
        let q = MonicPoly::from_roots(&[
            Complex64::new(0.0, t),
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ])
        .expect("finite roots");
        let (d, _) = sendov_d(&q).expect("degree >= 2");
        worst = worst.max((d - ((1.0 + t * t) / 3.0).sqrt()).abs());
    }
    (
        ok && worst < 1e-10,
        format!("families beat baselines on their grids; cubic witness err {worst:.3e}"),
    )
}

fn c08_quartic_rederivation() -> (bool, String) {
    let k = QuarticConstants::new();
    let sol = derive_quartic_coefficients().expect("well-conditioned stages");
    let coeff_err = [
        (sol.x1 - k.alpha1).abs(),
        (sol.x2 - k.alpha2).abs(),
        sol.x3.abs(),
        (sol.y1 - k.y1).abs(),
        (sol.y2 - k.y2).abs(),
        (sol.y3 - k.c).abs(),
    ]
    .into_iter()
    .fold(0.0f64, f64::max);
    (
        coeff_err < 1e-9 && sol.max_residual < 1e-10,
        format!("max coefficient err {coeff_err:.3e}, max residual {:.3e}", sol.max_residual),
    )
}

fn c09_cubic_order_slopes() -> (bool, String) {
    let quartic = quartic_family();
    let mut samples = Vec::new();
    for k in 0..8 {
        let a = 10.0f64.powf(-2.2 + 0.8 * k as f64 / 7.0);
        let crits = quartic.eval(a).critical_points(1e-12).expect("degree >= 2");
        samples.push((a, bottleneck_value(&crits, &quartic_comparison_roots(a))));
    }
    let s4 = log_log_slope(&samples);

    let (q, s) = quintic_family();
    let mut samples = Vec::new();
    for k in 0..8 {
        let a = 10.0f64.powf(-2.6 + 0.7 * k as f64 / 7.0);
        let qprime = q.eval(a).derivative().monic().expect("nonzero leading");
        samples.push((a, delta(&qprime, &s.eval(a)).expect("equal degrees").value));
    }
    let s5 = log_log_slope(&samples);
    let ok = (2.7..=3.3).contains(&s4) && (2.7..=3.3).contains(&s5);
    (ok, format!("quartic slope {s4:.3}, quintic slope {s5:.3}"))
}

fn random_separated(rng: &mut SplitMix64, n: usize) -> MonicPoly {
    loop {
        let roots: Vec<Complex64> = (0..n).map(|_| rng.disk(1.0)).collect();
        if min_pairwise_gap(&roots) < 0.3 {
            continue;
        }
        let p = MonicPoly::from_roots(&roots).expect("finite roots");
        let crits = p.critical_points(1e-12).expect("degree >= 2");
        if min_pairwise_gap(&crits) > 0.05 {
            return p;
        }
    }
}

fn nearest(points: &[Complex64], to: Complex64) -> Complex64 {
    *points
        .iter()
        .min_by(|a, b| (*a - to).norm().total_cmp(&(*b - to).norm()))
        .expect("nonempty")
}

/// Fourth-order central difference `f'(0)` from `f(+-h)` and `f(+-2h)`.
fn richardson(fp: Complex64, fm: Complex64, fp2: Complex64, fm2: Complex64, h: f64) -> Complex64 {
    (8.0 * (fp - fm) - (fp2 - fm2)) / (12.0 * h)
}

fn c10_sensitivity_correctness(seed: u64) -> (bool, String) {
    let mut rng = SplitMix64::new(seed ^ 0xbf58476d1ce4e5b9);
    let mut worst = 0.0f64;
    let mut worst_sum = 0.0f64;
    let h = 1e-4;
    for trial in 0..50 {
        let n = 4 + trial % 3;
        let p = random_separated(&mut rng, n);
        let zeros = p.roots(1e-12).expect("simple roots");
        let crits = p.critical_points(1e-12).expect("degree >= 2");

        // Critical points as functions of the zeros.
        let sens = crit_by_zero_sens(&p).expect("simple critical points");
        for row in &sens {
            let sum: Complex64 = row.iter().sum();
            worst_sum = worst_sum.max((sum - Complex64::new(1.0, 0.0)).norm());
        }
        let crits_at = |i: usize, dz: f64| -> Vec<Complex64> {
            let mut moved = zeros.clone();
            moved[i] += Complex64::new(dz, 0.0);
            MonicPoly::from_roots(&moved)
                .expect("finite roots")
                .critical_points(1e-12)
                .expect("degree >= 2")
        };
        for i in 0..n {
            let (cp, cm) = (crits_at(i, h), crits_at(i, -h));
            let (cp2, cm2) = (crits_at(i, 2.0 * h), crits_at(i, -2.0 * h));
            for (j, &w) in crits.iter().enumerate() {
                let fd = richardson(
                    nearest(&cp, w),
                    nearest(&cm, w),
                    nearest(&cp2, w),
                    nearest(&cm2, w),
                    h,
                );
                worst = worst.max((fd - sens[j][i]).norm() / (1.0 + sens[j][i].norm()));
            }
        }

        // Zeros as functions of the critical points, anchored at zeros[0].
        let a = zeros[0];
        let back = zero_by_crit_sens(&p, 0).expect("simple critical points");
        let zeros_at = |l: usize, dw: f64| -> Vec<Complex64> {
            let mut moved = crits.clone();
            moved[l] += Complex64::new(dw, 0.0);
            let scaled: Vec<Complex64> = MonicPoly::from_roots(&moved)
                .expect("finite roots")
                .as_poly()
                .coeffs()
                .iter()
                .map(|&v| v * n as f64)
                .collect();
            let dp = Poly::new(scaled);
            // Primitive with P(a) = 0.
            let mut prim = vec![Complex64::new(0.0, 0.0); dp.coeffs().len() + 1];
            for (k, &v) in dp.coeffs().iter().enumerate() {
                prim[k + 1] = v / (k as f64 + 1.0);
            }
            let shift = Poly::new(prim.clone()).eval(a);
            prim[0] -= shift;
            Poly::new(prim).roots(1e-12).expect("nondegenerate")
        };
        for l in 0..crits.len() {
            let (zp, zm) = (zeros_at(l, h), zeros_at(l, -h));
            let (zp2, zm2) = (zeros_at(l, 2.0 * h), zeros_at(l, -2.0 * h));
            for (row, &zk) in zeros.iter().skip(1).enumerate() {
                let fd = richardson(
                    nearest(&zp, zk),
                    nearest(&zm, zk),
                    nearest(&zp2, zk),
                    nearest(&zm2, zk),
                    h,
                );
                worst = worst.max((fd - back[row][l]).norm() / (1.0 + back[row][l].norm()));
            }
        }
    }
    (
        worst < 1e-5 && worst_sum < 1e-10,
        format!("max FD relative error {worst:.3e}, max row-sum defect {worst_sum:.3e}"),
    )
}

fn c11_bottleneck_oracle(seed: u64) -> (bool, String) {
    let mut rng = SplitMix64::new(seed ^ 0x94d049bb133111eb);
    for trial in 0..200 {
        let n = 2 + trial % 6;
        let a: Vec<Complex64> = (0..n).map(|_| rng.disk(1.5)).collect();
        let b: Vec<Complex64> = (0..n).map(|_| rng.disk(1.5)).collect();
        let p = MonicPoly::from_roots(&a).expect("finite roots");
        let q = MonicPoly::from_roots(&b).expect("finite roots");
        let fast = delta(&p, &q).expect("equal degrees").value;
        let slow = delta_bruteforce(&p, &q).expect("equal degrees").value;
        if fast != slow {
            return (false, format!("mismatch at trial {trial}: {fast} vs {slow}"));
        }
    }
    (true, "threshold matcher equals brute force on 200 random pairs".to_string())
}

fn c12_inequality_sweeps(seed: u64) -> (bool, String) {
    for n in 5..=100 {
        let (lhs, rhs) = push_gap_bound(n);
        if lhs >= rhs {
            return (false, format!("phase-gap inequality fails at n={n}"));
        }
    }
    let mut worst_root = 0.0f64;
    for n in 3..=50 {
        let roots = balance_root(n);
        if roots.len() != 1 {
            return (false, format!("balance_root({n}) found {} roots", roots.len()));
        }
        worst_root = worst_root.max((roots[0] - (n as f64 - 1.0) / 2.0).abs());
    }
    if worst_root >= 1e-9 {
        return (false, format!("balance root err {worst_root:.3e}"));
    }
    let mut min_margin = f64::INFINITY;
    for n in 4..=8 {
        for phase in 0..8u64 {
            let eps1 = Complex64::from_polar(1e-4, TAU * phase as f64 / 8.0);
            let margin = directional_decrease_check(n, eps1, 0.5, seed + phase);
            min_margin = min_margin.min(margin);
        }
    }
    // A phase landing exactly between two critical directions zeroes the
    // first-order margin; tolerate the O(|eps1|^1.5) remainder.
    if min_margin < -4.0 * 1e-4f64.powf(1.5) {
        return (false, format!("directional margin {min_margin:.3e}"));
    }
    let mut min_gap = f64::INFINITY;
    for n in 5..=12 {
        let (_, gap) = boundary_push_scan(n, 200);
        min_gap = min_gap.min(gap);
    }
    (
        min_gap > 0.0,
        format!(
            "balance err {worst_root:.2e}; min directional margin {min_margin:.2e}; min push gap {min_gap:.2e}"
        ),
    )
}

fn c13_local_maximality_probe(seed: u64) -> (bool, String) {
    let mut rng = SplitMix64::new(seed ^ 0xd6e8feb86659fd93);
    let mut worst_excess = f64::NEG_INFINITY;
    for trial in 0..500 {
        let n = 4 + trial % 3;
        let base = zn_minus_z(n);
        let mut roots = vec![Complex64::new(0.0, 0.0)];
        for k in 0..n - 1 {
            let u = Complex64::from_polar(1.0, TAU * k as f64 / (n as f64 - 1.0));
            let shrink = 1.0 - rng.range(0.0, 0.03);
            let twist = rng.range(-0.03, 0.03);
            roots.push(u * Complex64::from_polar(shrink, twist));
        }
        let q = MonicPoly::from_roots(&roots).expect("finite roots");
        let dist = delta(&q, &base).expect("equal degrees").value;
        if dist >= 0.05 {
            return (false, format!("sample left the 0.05 ball: {dist}"));
        }
        let (d, _) = sendov_d(&q).expect("degree >= 2");
        worst_excess = worst_excess.max(d - maximal_value(n));
    }
    (
        worst_excess <= 1e-9,
        format!("max d(q) excess over (1/n)^(1/(n-1)) is {worst_excess:.3e}"),
    )
}
