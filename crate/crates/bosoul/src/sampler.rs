//! Candidate source-set enumeration, k-means clustering of their spectral
//! signals, and graph stratified sampling (GSS).

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{top_degree_nodes, Graph, NodeSet};
use crate::spectral::SpectralBasis;

/// Largest candidate enumeration we will attempt.
pub const CANDIDATE_LIMIT: u128 = 10_000_000;

/// Feature space in which candidate sets are clustered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterSpace {
    /// Low-frequency graph Fourier coefficients of the set indicator.
    Spectral { truncate_to: usize },
    /// The raw binary indicator itself.
    Indicator,
}

impl Default for ClusterSpace {
    fn default() -> Self {
        ClusterSpace::Spectral { truncate_to: 128 }
    }
}

/// All n-sized subsets of the top-a degree pool, with one clustering feature
/// row per set.
#[derive(Debug, Clone)]
pub struct CandidatePool {
    sets: Vec<NodeSet>,
    signals: Vec<Vec<f64>>,
    cluster_assignment: Option<Vec<usize>>,
    n_clusters: usize,
    n_nodes: usize,
}

fn binomial(a: u128, n: u128) -> Option<u128> {
    if n > a {
        return Some(0);
    }
    let n = n.min(a - n);
    let mut result: u128 = 1;
    for i in 0..n {
        result = result.checked_mul(a - i)?;
        result /= i + 1;
    }
    Some(result)
}

impl CandidatePool {
    pub fn sets(&self) -> &[NodeSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn signals(&self) -> &[Vec<f64>] {
        &self.signals
    }

    pub fn cluster_assignment(&self) -> Option<&[usize]> {
        self.cluster_assignment.as_deref()
    }

    pub fn n_clusters(&self) -> usize {
        self.n_clusters
    }

    pub fn indicator(&self, set_id: usize) -> Vec<f64> {
        self.sets[set_id].indicator(self.n_nodes)
    }

    /// Set ids per cluster, sorted ascending.
    pub fn cluster_members(&self) -> Result<Vec<Vec<usize>>> {
        let assignment = self.cluster_assignment.as_ref().ok_or_else(|| {
            Error::InvalidParameter {
                name: "pool",
                reason: "candidates have not been clustered".into(),
            }
        })?;
        let mut members = vec![Vec::new(); self.n_clusters];
        for (id, &c) in assignment.iter().enumerate() {
            members[c].push(id);
        }
        Ok(members)
    }
}

/// Enumerate all n-sized subsets of the top-`a` degree pool in lexicographic
/// order of member ids, with their clustering features.
pub fn enumerate_candidates(
    g: &Graph,
    basis: &SpectralBasis,
    a: usize,
    n: usize,
    truncate_to: usize,
) -> Result<CandidatePool> {
    enumerate_candidates_with(
        g,
        basis,
        a,
        n,
        ClusterSpace::Spectral { truncate_to },
        false,
    )
}

/// Full-control variant: choose the clustering space and optionally drop
/// candidate sets containing adjacent node pairs.
pub fn enumerate_candidates_with(
    g: &Graph,
    basis: &SpectralBasis,
    a: usize,
    n: usize,
    space: ClusterSpace,
    filter_adjacent: bool,
) -> Result<CandidatePool> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "must be >= 1".into(),
        });
    }
    if n > a {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("{n} exceeds pool size {a}"),
        });
    }
    let count = binomial(a as u128, n as u128).unwrap_or(u128::MAX);
    if count > CANDIDATE_LIMIT {
        return Err(Error::CandidateLimit {
            count,
            limit: CANDIDATE_LIMIT,
        });
    }
    let mut pool_nodes = top_degree_nodes(g, a)?;
    pool_nodes.sort_unstable();

    // A truncation above the signal dimension is just the full transform.
    let space = match space {
        ClusterSpace::Spectral { truncate_to } => {
            if truncate_to == 0 {
                return Err(Error::InvalidParameter {
                    name: "truncate_to",
                    reason: "must be >= 1".into(),
                });
            }
            ClusterSpace::Spectral {
                truncate_to: truncate_to.min(g.n_nodes()),
            }
        }
        ClusterSpace::Indicator => ClusterSpace::Indicator,
    };

    let mut sets = Vec::new();
    let mut signals = Vec::new();
    let mut indices: Vec<usize> = (0..n).collect();
    loop {
        let members: Vec<usize> = indices.iter().map(|&i| pool_nodes[i]).collect();
        let keep = !filter_adjacent
            || members
                .iter()
                .enumerate()
                .all(|(i, &u)| members[i + 1..].iter().all(|&v| !g.has_edge(u, v)));
        if keep {
            let signal = match space {
                ClusterSpace::Spectral { truncate_to } => {
                    let ut = basis.fourier_operator();
                    let mut coeffs = vec![0.0; truncate_to];
                    for &m in &members {
                        for (row, c) in coeffs.iter_mut().enumerate() {
                            *c += ut[(row, m)];
                        }
                    }
                    coeffs
                }
                ClusterSpace::Indicator => NodeSet::new(members.clone()).indicator(g.n_nodes()),
            };
            sets.push(NodeSet::new(members));
            signals.push(signal);
        }
        // Next combination in lexicographic order.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(CandidatePool {
                    sets,
                    signals,
                    cluster_assignment: None,
                    n_clusters: 0,
                    n_nodes: g.n_nodes(),
                });
            }
            i -= 1;
            if indices[i] != i + a - n {
                break;
            }
        }
        indices[i] += 1;
        for j in (i + 1)..n {
            indices[j] = indices[j - 1] + 1;
        }
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

/// K-means (k-means++ initialization, ≤ 300 Lloyd iterations, relative inertia
/// tolerance 1e-4). Empty clusters are repaired by stealing the point farthest
/// from its centroid. Returns the pool with assignments attached.
pub fn cluster_candidates(pool: CandidatePool, b: usize, seed: u64) -> Result<CandidatePool> {
    let m = pool.len();
    if b == 0 || b > m {
        return Err(Error::InvalidParameter {
            name: "b",
            reason: format!("{b} not in 1..={m}"),
        });
    }
    let mut rng = crate::rng::stream(seed, crate::rng::Domain::Clustering, 0);
    let assignment = kmeans(&pool.signals, b, &mut rng);
    Ok(CandidatePool {
        cluster_assignment: Some(assignment),
        n_clusters: b,
        ..pool
    })
}

fn kmeans(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let m = points.len();
    let dim = points[0].len();

    // k-means++ seeding.
    let mut centroids: Vec<Vec<f64>> = Vec::with_capacity(k);
    centroids.push(points[rng.gen_range(0..m)].clone());
    let mut min_d2: Vec<f64> = points.iter().map(|p| sq_dist(p, &centroids[0])).collect();
    while centroids.len() < k {
        let total: f64 = min_d2.iter().sum();
        let next = if total <= 0.0 {
            rng.gen_range(0..m)
        } else {
            let mut target = rng.gen_range(0.0..total);
            let mut chosen = m - 1;
            for (i, &d) in min_d2.iter().enumerate() {
                target -= d;
                if target <= 0.0 {
                    chosen = i;
                    break;
                }
            }
            chosen
        };
        centroids.push(points[next].clone());
        let c = centroids.last().unwrap();
        for (d, p) in min_d2.iter_mut().zip(points) {
            *d = d.min(sq_dist(p, c));
        }
    }

    let mut assignment = vec![0usize; m];
    let mut prev_inertia = f64::INFINITY;
    for _ in 0..300 {
        // Assign, ties to the lowest centroid index.
        let mut inertia = 0.0;
        for (i, p) in points.iter().enumerate() {
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (c, centroid) in centroids.iter().enumerate() {
                let d = sq_dist(p, centroid);
                if d < best_d {
                    best_d = d;
                    best = c;
                }
            }
            assignment[i] = best;
            inertia += best_d;
        }
        // Repair empty clusters with the globally farthest point.
        let mut counts = vec![0usize; k];
        for &a in &assignment {
            counts[a] += 1;
        }
        for c in 0..k {
            while counts[c] == 0 {
                let (farthest, _) = points
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| counts[assignment[*i]] > 1)
                    .map(|(i, p)| (i, sq_dist(p, &centroids[assignment[i]])))
                    .max_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("some cluster has more than one point");
                counts[assignment[farthest]] -= 1;
                assignment[farthest] = c;
                counts[c] += 1;
            }
        }
        // Update.
        let mut sums = vec![vec![0.0; dim]; k];
        for (p, &a) in points.iter().zip(&assignment) {
            for (s, x) in sums[a].iter_mut().zip(p) {
                *s += x;
            }
        }
        for (c, sum) in sums.into_iter().enumerate() {
            if counts[c] > 0 {
                centroids[c] = sum.into_iter().map(|s| s / counts[c] as f64).collect();
            }
        }
        if prev_inertia.is_finite() {
            let denom = prev_inertia.max(1e-30);
            if (prev_inertia - inertia).abs() / denom < 1e-4 {
                break;
            }
        }
        prev_inertia = inertia;
    }
    assignment
}

/// Uniformly sample up to `per_group` ids without replacement from each group,
/// skipping `exclude`. Output order: group 0..b-1, then draw order.
pub fn stratified_sample_indices(
    members_by_group: &[Vec<usize>],
    per_group: usize,
    exclude: &HashSet<usize>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<usize>> {
    if per_group == 0 {
        return Err(Error::InvalidParameter {
            name: "per_group",
            reason: "must be >= 1".into(),
        });
    }
    let mut out = Vec::new();
    for group in members_by_group {
        let mut remaining: Vec<usize> = group
            .iter()
            .copied()
            .filter(|id| !exclude.contains(id))
            .collect();
        let take = per_group.min(remaining.len());
        for i in 0..take {
            let j = rng.gen_range(i..remaining.len());
            remaining.swap(i, j);
            out.push(remaining[i]);
        }
    }
    if out.is_empty() {
        return Err(Error::AllCandidatesExcluded);
    }
    Ok(out)
}

/// GSS over a clustered pool: `per_cluster` uniform draws from every cluster,
/// excluding already-evaluated set ids.
pub fn gss_sample(
    pool: &CandidatePool,
    per_cluster: usize,
    rng: &mut ChaCha8Rng,
    exclude: &HashSet<usize>,
) -> Result<Vec<usize>> {
    let members = pool.cluster_members()?;
    stratified_sample_indices(&members, per_cluster, exclude, rng)
}

/// Simple random sampling counterpart used by the sampling ablation: `count`
/// uniform draws without replacement from all non-excluded candidates.
pub fn random_sample(
    pool: &CandidatePool,
    count: usize,
    rng: &mut ChaCha8Rng,
    exclude: &HashSet<usize>,
) -> Result<Vec<usize>> {
    let all: Vec<usize> = (0..pool.len()).collect();
    stratified_sample_indices(&[all], count, exclude, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::rng::{stream, Domain};
    use crate::spectral::build_basis;

    fn pool_on_small_world(a: usize, n: usize) -> (Graph, CandidatePool) {
        let g = Graph::small_world(30, 4, 0.2, 3).unwrap();
        let basis = build_basis(&g).unwrap();
        let pool = enumerate_candidates(&g, &basis, a, n, 8).unwrap();
        (g, pool)
    }

    #[test]
    fn enumeration_counts() {
        let (_, pool) = pool_on_small_world(8, 2);
        assert_eq!(pool.len(), 28);
        let (_, single) = pool_on_small_world(3, 3);
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn binomial_50_choose_3_is_19600() {
        assert_eq!(binomial(50, 3), Some(19_600));
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let basis = build_basis(&g).unwrap();
        let pool = enumerate_candidates(&g, &basis, 4, 2, 2).unwrap();
        let members: Vec<Vec<usize>> = pool.sets().iter().map(|s| s.members().to_vec()).collect();
        assert_eq!(
            members,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn enumeration_limit_is_enforced() {
        let g = Graph::small_world(200, 4, 0.0, 1).unwrap();
        let basis = build_basis(&g).unwrap();
        let err = enumerate_candidates(&g, &basis, 200, 6, 8);
        assert!(matches!(err, Err(Error::CandidateLimit { .. })));
    }

    #[test]
    fn adjacency_filter_removes_adjacent_pairs() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let basis = build_basis(&g).unwrap();
        let pool =
            enumerate_candidates_with(&g, &basis, 4, 2, ClusterSpace::Indicator, true).unwrap();
        let members: Vec<Vec<usize>> = pool.sets().iter().map(|s| s.members().to_vec()).collect();
        assert_eq!(members, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn signals_match_truncated_transform() {
        let g = Graph::small_world(20, 4, 0.2, 5).unwrap();
        let basis = build_basis(&g).unwrap();
        let pool = enumerate_candidates(&g, &basis, 5, 2, 6).unwrap();
        for (set, signal) in pool.sets().iter().zip(pool.signals()) {
            let reference =
                crate::spectral::fourier_transform(&basis, &set.indicator(20), Some(6)).unwrap();
            for (a, b) in signal.iter().zip(&reference.coefficients) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn clustering_degenerate_cases() {
        let (_, pool) = pool_on_small_world(6, 2);
        let m = pool.len();
        let all_singleton = cluster_candidates(pool.clone(), m, 1).unwrap();
        let mut seen: Vec<usize> = all_singleton.cluster_assignment().unwrap().to_vec();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), m, "every set in its own cluster");

        let one = cluster_candidates(pool, 1, 1).unwrap();
        assert!(one.cluster_assignment().unwrap().iter().all(|&c| c == 0));
    }

    #[test]
    fn clustering_every_cluster_nonempty() {
        let (_, pool) = pool_on_small_world(9, 2);
        let clustered = cluster_candidates(pool, 7, 42).unwrap();
        let members = clustered.cluster_members().unwrap();
        assert!(members.iter().all(|m| !m.is_empty()));
    }

    #[test]
    fn clustering_separates_blobs_and_beats_random_assignments() {
        // Two well-separated blobs in 3 dims.
        let mut points = Vec::new();
        let mut rng = stream(9, Domain::Clustering, 99);
        for i in 0..40 {
            let base = if i < 20 { 0.0 } else { 10.0 };
            points.push(vec![
                base + rng.gen_range(-0.5..0.5),
                base + rng.gen_range(-0.5..0.5),
                base + rng.gen_range(-0.5..0.5),
            ]);
        }
        let mut krng = stream(1, Domain::Clustering, 0);
        let assignment = kmeans(&points, 2, &mut krng);
        let first = assignment[0];
        assert!(assignment[..20].iter().all(|&a| a == first));
        assert!(assignment[20..].iter().all(|&a| a != first));

        let inertia_of = |assignment: &[usize]| -> f64 {
            let mut sums = vec![vec![0.0; 3]; 2];
            let mut counts = [0usize; 2];
            for (p, &a) in points.iter().zip(assignment) {
                counts[a] += 1;
                for (s, x) in sums[a].iter_mut().zip(p) {
                    *s += x;
                }
            }
            let centroids: Vec<Vec<f64>> = sums
                .iter()
                .zip(counts)
                .map(|(s, c)| s.iter().map(|x| x / c.max(1) as f64).collect())
                .collect();
            points
                .iter()
                .zip(assignment)
                .map(|(p, &a)| sq_dist(p, &centroids[a]))
                .sum()
        };
        let kmeans_inertia = inertia_of(&assignment);
        for _ in 0..100 {
            let random: Vec<usize> = (0..40).map(|_| rng.gen_range(0..2)).collect();
            if random.iter().all(|&a| a == 0) || random.iter().all(|&a| a == 1) {
                continue;
            }
            assert!(kmeans_inertia <= inertia_of(&random) + 1e-9);
        }
    }

    #[test]
    fn gss_one_per_cluster() {
        let (_, pool) = pool_on_small_world(8, 2);
        let pool = cluster_candidates(pool, 5, 7).unwrap();
        let mut rng = stream(3, Domain::Initialization, 0);
        let ids = gss_sample(&pool, 1, &mut rng, &HashSet::new()).unwrap();
        assert_eq!(ids.len(), 5);
        let members = pool.cluster_members().unwrap();
        for (cluster, &id) in members.iter().zip(&ids) {
            assert!(cluster.contains(&id));
        }
    }

    #[test]
    fn gss_respects_exclusions_and_uniqueness() {
        let (_, pool) = pool_on_small_world(8, 2);
        let pool = cluster_candidates(pool, 4, 7).unwrap();
        let members = pool.cluster_members().unwrap();
        // Fully exclude cluster 0.
        let exclude: HashSet<usize> = members[0].iter().copied().collect();
        let mut rng = stream(3, Domain::Iteration, 1);
        let ids = gss_sample(&pool, 2, &mut rng, &exclude).unwrap();
        assert!(ids.iter().all(|id| !exclude.contains(id)));
        let mut unique = ids.clone();
        unique.sort_unstable();
        unique.dedup();
        assert_eq!(unique.len(), ids.len());

        let everything: HashSet<usize> = (0..pool.len()).collect();
        let mut rng = stream(3, Domain::Iteration, 2);
        assert!(matches!(
            gss_sample(&pool, 1, &mut rng, &everything),
            Err(Error::AllCandidatesExcluded)
        ));
    }

    #[test]
    fn gss_is_deterministic() {
        let (_, pool) = pool_on_small_world(8, 2);
        let pool = cluster_candidates(pool, 4, 7).unwrap();
        let exclude: HashSet<usize> = [1, 5, 9].into_iter().collect();
        let a = gss_sample(&pool, 2, &mut stream(11, Domain::Iteration, 0), &exclude).unwrap();
        let b = gss_sample(&pool, 2, &mut stream(11, Domain::Iteration, 0), &exclude).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn stratified_mean_is_unbiased() {
        // 4 groups of 25 values each; group means differ.
        let values: Vec<f64> = (0..100).map(|i| (i / 25) as f64 * 10.0 + (i % 25) as f64).collect();
        let groups: Vec<Vec<usize>> = (0..4).map(|g| (g * 25..(g + 1) * 25).collect()).collect();
        let population_mean = values.iter().sum::<f64>() / 100.0;
        let trials = 20_000;
        let mut rng = stream(17, Domain::Iteration, 0);
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..trials {
            let ids = stratified_sample_indices(&groups, 1, &HashSet::new(), &mut rng).unwrap();
            let m = ids.iter().map(|&i| values[i]).sum::<f64>() / ids.len() as f64;
            sum += m;
            sumsq += m * m;
        }
        let mean = sum / trials as f64;
        let se = ((sumsq / trials as f64 - mean * mean) / trials as f64).sqrt();
        assert!(
            (mean - population_mean).abs() < 3.0 * se,
            "stratified mean {mean} vs population {population_mean}"
        );
    }
}
