//! Bottleneck assignment between two equally sized complex point sets:
//! binary search over the sorted pairwise distances with a Hopcroft–Karp
//! feasibility check on the threshold graph.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

const UNMATCHED: usize = usize::MAX;

/// Maximum bipartite matching (Hopcroft–Karp) on an adjacency list from
/// left vertices to right vertices. Returns `match_left`.
fn hopcroft_karp(n_left: usize, n_right: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut match_left = vec![UNMATCHED; n_left];
    let mut match_right = vec![UNMATCHED; n_right];
    let mut dist = vec![0usize; n_left];

    loop {
        // BFS layering from free left vertices.
        let mut queue: Vec<usize> = Vec::new();
        for u in 0..n_left {
            if match_left[u] == UNMATCHED {
                dist[u] = 0;
                queue.push(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found_augmenting = false;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &v in &adj[u] {
                let w = match_right[v];
                if w == UNMATCHED {
                    found_augmenting = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push(w);
                }
            }
        }
        if !found_augmenting {
            break;
        }

        fn dfs(
            u: usize,
            adj: &[Vec<usize>],
            dist: &mut [usize],
            match_left: &mut [usize],
            match_right: &mut [usize],
        ) -> bool {
            for idx in 0..adj[u].len() {
                let v = adj[u][idx];
                let w = match_right[v];
                if w == UNMATCHED
                    || (dist[w] == dist[u] + 1 && dfs(w, adj, dist, match_left, match_right))
                {
                    match_left[u] = v;
                    match_right[v] = u;
                    return true;
                }
            }
            dist[u] = usize::MAX;
            false
        }

        for u in 0..n_left {
            if match_left[u] == UNMATCHED {
                dfs(u, adj, &mut dist, &mut match_left, &mut match_right);
            }
        }
    }
    match_left
}

fn perfect_matching_at(
    xs: &[Complex64],
    ys: &[Complex64],
    threshold: f64,
) -> Option<Vec<usize>> {
    let n = xs.len();
    let adj: Vec<Vec<usize>> = xs
        .iter()
        .map(|&x| {
            (0..n)
                .filter(|&j| (x - ys[j]).norm() <= threshold)
                .collect()
        })
        .collect();
    let m = hopcroft_karp(n, n, &adj);
    if m.iter().all(|&v| v != UNMATCHED) {
        Some(m)
    } else {
        None
    }
}

/// Exact bottleneck assignment. Returns the optimal value together with a
/// permutation `sigma` such that `max_i |xs[i] - ys[sigma[i]]|` equals it.
///
/// The value is always one of the `n^2` pairwise distances, so the binary
/// search over the sorted distance list is exact.
pub fn bottleneck(xs: &[Complex64], ys: &[Complex64]) -> (f64, Vec<usize>) {
    assert_eq!(xs.len(), ys.len(), "point sets must have equal size");
    let n = xs.len();
    if n == 0 {
        return (0.0, Vec::new());
    }
    let mut dists: Vec<f64> = Vec::with_capacity(n * n);
    for &x in xs {
        for &y in ys {
            dists.push((x - y).norm());
        }
    }
    dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
    dists.dedup();

    // Smallest threshold admitting a perfect matching.
    let mut lo = 0usize;
    let mut hi = dists.len() - 1;
    let mut best = perfect_matching_at(xs, ys, dists[hi]).expect("complete graph is feasible");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match perfect_matching_at(xs, ys, dists[mid]) {
            Some(m) => {
                best = m;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let value = best
        .iter()
        .enumerate()
        .map(|(i, &j)| (xs[i] - ys[j]).norm())
        .fold(0.0, f64::max);
    (value, best)
}

/// Bottleneck value only.
pub fn bottleneck_value(xs: &[Complex64], ys: &[Complex64]) -> f64 {
    bottleneck(xs, ys).0
}

/// Exhaustive min-max over all permutations (oracle; factorial cost).
pub fn bottleneck_bruteforce(xs: &[Complex64], ys: &[Complex64]) -> (f64, Vec<usize>) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let dist: Vec<Vec<f64>> = xs
        .iter()
        .map(|&x| ys.iter().map(|&y| (x - y).norm()).collect())
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best_value = f64::INFINITY;
    let mut best_perm = perm.clone();

    fn permute(
        k: usize,
        perm: &mut Vec<usize>,
        dist: &[Vec<f64>],
        best_value: &mut f64,
        best_perm: &mut Vec<usize>,
        current_max: f64,
    ) {
        if current_max >= *best_value {
            return; // prune
        }
        let n = perm.len();
        if k == n {
            *best_value = current_max;
            best_perm.clone_from(perm);
            return;
        }
        for i in k..n {
            perm.swap(k, i);
            let m = f64::max(current_max, dist[k][perm[k]]);
            permute(k + 1, perm, dist, best_value, best_perm, m);
            perm.swap(k, i);
        }
    }
    permute(0, &mut perm, &dist, &mut best_value, &mut best_perm, 0.0);
    (best_value, best_perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn symmetric_forced_assignment() {
        // roots {1,-1} vs {0,0}: both pairs at distance 1
        let (v, _) = bottleneck(&[c(1.0, 0.0), c(-1.0, 0.0)], &[c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(v, 1.0);
    }

    #[test]
    fn identical_sets_give_zero() {
        let xs = [c(0.3, 0.2), c(-1.0, 0.4), c(0.0, 0.0)];
        let (v, _) = bottleneck(&xs, &xs);
        assert_eq!(v, 0.0);
    }

    #[test]
    fn matches_bruteforce_on_random_sets() {
        let mut rng = SplitMix64::new(42);
        for _ in 0..200 {
            let n = 1 + (rng.next_u64() % 7) as usize;
            let xs: Vec<Complex64> = (0..n).map(|_| rng.disk(1.0)).collect();
            let ys: Vec<Complex64> = (0..n).map(|_| rng.disk(1.0)).collect();
            let (fast, perm) = bottleneck(&xs, &ys);
            let (brute, _) = bottleneck_bruteforce(&xs, &ys);
            assert_eq!(fast, brute);
            let realized = perm
                .iter()
                .enumerate()
                .map(|(i, &j)| (xs[i] - ys[j]).norm())
                .fold(0.0, f64::max);
            assert_eq!(realized, fast);
        }
    }
}
