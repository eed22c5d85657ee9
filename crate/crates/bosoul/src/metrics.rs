//! Permutation-matched distance between a predicted and a true source set:
//! the minimum over bijections of the summed hop distances.

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, Graph, NodeSet};

/// Optimal matching between predicted and true sources with its total cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub total: u64,
    /// `(predicted node, true node)` pairs forming a bijection.
    pub matching: Vec<(usize, usize)>,
}

/// Minimum-cost assignment on an n×n cost matrix (Hungarian algorithm with
/// potentials, O(n³)). Returns per-row column choices.
fn hungarian(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    // 1-based potentials over rows (u) and columns (v); way[j] tracks the
    // augmenting path.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1]; // p[j]: row matched to column j
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![i64::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut row_to_col = vec![0usize; n];
    for j in 1..=n {
        row_to_col[p[j] - 1] = j - 1;
    }
    row_to_col
}

fn cost_matrix(g: &Graph, predicted: &NodeSet, truth: &NodeSet) -> Result<Vec<Vec<i64>>> {
    let mut cost = Vec::with_capacity(predicted.len());
    for &p in predicted.members() {
        let dist = bfs_distances(g, p)?;
        let mut row = Vec::with_capacity(truth.len());
        for &t in truth.members() {
            match dist[t] {
                Some(d) => row.push(i64::from(d)),
                None => return Err(Error::Unreachable { from: p, to: t }),
            }
        }
        cost.push(row);
    }
    Ok(cost)
}

/// Permutation-matched source distance via optimal bipartite assignment on the
/// hop-distance matrix.
pub fn source_distance(g: &Graph, predicted: &NodeSet, truth: &NodeSet) -> Result<DistanceReport> {
    if predicted.len() != truth.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            got: predicted.len(),
        });
    }
    if predicted.is_empty() {
        return Ok(DistanceReport {
            total: 0,
            matching: Vec::new(),
        });
    }
    let cost = cost_matrix(g, predicted, truth)?;
    let row_to_col = hungarian(&cost);
    let mut total = 0u64;
    let mut matching = Vec::with_capacity(predicted.len());
    for (i, &j) in row_to_col.iter().enumerate() {
        total += cost[i][j] as u64;
        matching.push((predicted.members()[i], truth.members()[j]));
    }
    Ok(DistanceReport { total, matching })
}

/// Exact minimum over all permutations; the independent oracle for
/// `source_distance`, limited to sets of at most 8 nodes.
pub fn brute_force_distance(g: &Graph, predicted: &NodeSet, truth: &NodeSet) -> Result<u64> {
    if predicted.len() != truth.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            got: predicted.len(),
        });
    }
    if predicted.len() > 8 {
        return Err(Error::InvalidParameter {
            name: "predicted",
            reason: format!("brute force limited to 8 nodes, got {}", predicted.len()),
        });
    }
    if predicted.is_empty() {
        return Ok(0);
    }
    let cost = cost_matrix(g, predicted, truth)?;
    let k = cost.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best = u64::MAX;
    // Heap's algorithm over column permutations.
    fn visit(perm: &mut Vec<usize>, k: usize, cost: &[Vec<i64>], best: &mut u64) {
        if k == 1 {
            let total: i64 = perm.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
            *best = (*best).min(total as u64);
            return;
        }
        for i in 0..k {
            visit(perm, k - 1, cost, best);
            if k % 2 == 0 {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
    }
    visit(&mut perm, k, &cost, &mut best);
    Ok(best)
}
