//! Undirected graph representation, generators, ingestion and the elementary
//! algorithms the rest of the pipeline builds on.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rng::{stream, Domain};

/// Immutable undirected graph with contiguous 0-based node ids.
///
/// No self-loops, no duplicate edges; adjacency lists are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_nodes: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    degrees: Vec<usize>,
}

impl Graph {
    /// Build a graph from an edge list. Self-loops and duplicates are rejected.
    pub fn from_edges(n_nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n_nodes {
                return Err(Error::InvalidNodeId { id: u, n_nodes });
            }
            if v >= n_nodes {
                return Err(Error::InvalidNodeId { id: v, n_nodes });
            }
            if u == v {
                return Err(Error::InvalidParameter {
                    name: "edges",
                    reason: format!("self-loop at node {u}"),
                });
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::InvalidParameter {
                    name: "edges",
                    reason: format!("duplicate edge ({}, {})", key.0, key.1),
                });
            }
        }
        Ok(Self::from_edge_set(n_nodes, seen))
    }

    fn from_edge_set(n_nodes: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n_nodes];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let degrees = adjacency.iter().map(Vec::len).collect();
        Self {
            n_nodes,
            edges: edges.into_iter().collect(),
            adjacency,
            degrees,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn average_degree(&self) -> f64 {
        if self.n_nodes == 0 {
            0.0
        } else {
            2.0 * self.edges.len() as f64 / self.n_nodes as f64
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n_nodes == 0 {
            return false;
        }
        let dist = bfs_from(self, 0);
        dist.iter().all(Option::is_some)
    }

    /// Stable content hash over `(n_nodes, sorted edge list)`, used to key the
    /// spectral basis cache.
    pub fn fingerprint(&self) -> [u8; 32] {
        let mut hasher = Sha256::new();
        hasher.update((self.n_nodes as u64).to_le_bytes());
        for &(u, v) in &self.edges {
            hasher.update((u as u64).to_le_bytes());
            hasher.update((v as u64).to_le_bytes());
        }
        hasher.finalize().into()
    }

    /// Connected Watts-Strogatz small-world graph: ring lattice with
    /// `k_neighbors` links per node, each rewired with probability `rewire_p`.
    /// Regenerates (up to 100 attempts) until connected.
    pub fn small_world(n: usize, k_neighbors: usize, rewire_p: f64, seed: u64) -> Result<Self> {
        if k_neighbors % 2 != 0 {
            return Err(Error::InvalidParameter {
                name: "k_neighbors",
                reason: format!("{k_neighbors} is not even"),
            });
        }
        if k_neighbors >= n {
            return Err(Error::InvalidParameter {
                name: "k_neighbors",
                reason: format!("{k_neighbors} must be < n = {n}"),
            });
        }
        if !(0.0..=1.0).contains(&rewire_p) {
            return Err(Error::InvalidProbability { value: rewire_p });
        }
        const MAX_ATTEMPTS: usize = 100;
        let mut rng = stream(seed, Domain::GraphGeneration, 0);
        for _ in 0..MAX_ATTEMPTS {
            let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
            for u in 0..n {
                for j in 1..=k_neighbors / 2 {
                    let v = (u + j) % n;
                    edges.insert((u.min(v), u.max(v)));
                }
            }
            // Rewire lattice edges (u, u+j) to (u, w), one ring distance at a time.
            for j in 1..=k_neighbors / 2 {
                for u in 0..n {
                    let v = (u + j) % n;
                    let key = (u.min(v), u.max(v));
                    if !edges.contains(&key) {
                        continue; // already rewired away
                    }
                    if rng.gen_bool(rewire_p) {
                        // A node adjacent to everything cannot be rewired.
                        let deg_u = edges.iter().filter(|&&(a, b)| a == u || b == u).count();
                        if deg_u >= n - 1 {
                            continue;
                        }
                        loop {
                            let w = rng.gen_range(0..n);
                            let cand = (u.min(w), u.max(w));
                            if w != u && !edges.contains(&cand) {
                                edges.remove(&key);
                                edges.insert(cand);
                                break;
                            }
                        }
                    }
                }
            }
            let g = Self::from_edge_set(n, edges);
            if g.is_connected() {
                return Ok(g);
            }
        }
        Err(Error::ConnectivityExhausted {
            attempts: MAX_ATTEMPTS,
        })
    }

    /// Erdős–Rényi G(n, p): each unordered pair is an edge independently with
    /// probability `p`.
    pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability { value: p });
        }
        let mut rng = stream(seed, Domain::GraphGeneration, 1);
        let mut edges = BTreeSet::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(p) {
                    edges.insert((u, v));
                }
            }
        }
        Ok(Self::from_edge_set(n, edges))
    }

    /// Write as the plain edge-list text format (one `u v` line per edge).
    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// A sorted set of distinct node ids with its binary indicator view.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NodeSet {
    members: Vec<usize>,
}

impl NodeSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Binary indicator vector of length `n`.
    pub fn indicator(&self, n: usize) -> Vec<f64> {
        let mut ind = vec![0.0; n];
        for &m in &self.members {
            ind[m] = 1.0;
        }
        ind
    }
}

fn bfs_from(g: &Graph, source: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.n_nodes()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Hop counts from `source`; `None` marks unreachable nodes.
pub fn bfs_distances(g: &Graph, source: usize) -> Result<Vec<Option<u32>>> {
    if source >= g.n_nodes() {
        return Err(Error::InvalidNodeId {
            id: source,
            n_nodes: g.n_nodes(),
        });
    }
    Ok(bfs_from(g, source))
}

/// The `a` nodes of highest degree, ties broken by ascending node id.
pub fn top_degree_nodes(g: &Graph, a: usize) -> Result<Vec<usize>> {
    if a > g.n_nodes() {
        return Err(Error::InvalidParameter {
            name: "a",
            reason: format!("{a} exceeds node count {}", g.n_nodes()),
        });
    }
    let mut ids: Vec<usize> = (0..g.n_nodes()).collect();
    ids.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    ids.truncate(a);
    Ok(ids)
}

/// Connected components as sorted node-id lists, ordered by discovery from
/// ascending seed ids.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; g.n_nodes()];
    let mut components = Vec::new();
    for start in 0..g.n_nodes() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut nodes = vec![start];
        comp[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    nodes.push(v);
                    queue.push_back(v);
                }
            }
        }
        nodes.sort_unstable();
        components.push(nodes);
    }
    components
}

/// Largest connected component, relabeled to contiguous ids.
///
/// Returns the subgraph and the new-id → original-id mapping. Size ties go to
/// the component containing the smallest original node id.
pub fn largest_connected_component(g: &Graph) -> Result<(Graph, Vec<usize>)> {
    if g.n_nodes() == 0 {
        return Err(Error::EmptyGraph);
    }
    let components = connected_components(g);
    // Components are discovered from ascending seeds, so the first maximal one
    // contains the smallest original id.
    let best = components
        .iter()
        .max_by_key(|c| (c.len(), std::cmp::Reverse(c[0])))
        .unwrap();
    let mapping: Vec<usize> = best.clone();
    let old_to_new: HashMap<usize, usize> =
        mapping.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        if let (Some(&nu), Some(&nv)) = (old_to_new.get(&u), old_to_new.get(&v)) {
            edges.push((nu, nv));
        }
    }
    let sub = Graph::from_edges(mapping.len(), &edges)?;
    Ok((sub, mapping))
}

/// An edge-list file loaded from disk, with the label mapping and a record of
/// what was silently dropped.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// `labels[id]` is the original token for node `id`.
    pub labels: Vec<String>,
    pub dropped_self_loops: usize,
    pub dropped_duplicates: usize,
}

impl LoadedGraph {
    /// Two-column CSV mapping node ids back to their original labels.
    pub fn label_map_csv(&self) -> String {
        let mut out = String::from("node_id,label\n");
        for (id, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "{id},{label}");
        }
        out
    }
}

/// Parse the edge-list text format: one edge per line, two whitespace-separated
/// tokens, `#`-prefixed lines ignored. Labels are remapped to contiguous ids in
/// order of first appearance; self-loops and duplicate edges are dropped.
pub fn parse_edge_list(text: &str) -> Result<LoadedGraph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut dropped_self_loops = 0;
    let mut dropped_duplicates = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    reason: format!("expected two whitespace-separated tokens, got {line:?}"),
                })
            }
        };
        let mut id_of = |tok: &str| -> usize {
            *index.entry(tok.to_string()).or_insert_with(|| {
                labels.push(tok.to_string());
                labels.len() - 1
            })
        };
        let u = id_of(a);
        let v = id_of(b);
        if u == v {
            dropped_self_loops += 1;
            continue;
        }
        if !edges.insert((u.min(v), u.max(v))) {
            dropped_duplicates += 1;
        }
    }
    let graph = Graph::from_edge_set(labels.len(), edges);
    Ok(LoadedGraph {
        graph,
        labels,
        dropped_self_loops,
        dropped_duplicates,
    })
}

/// Load the edge-list format from a file.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<LoadedGraph> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text)
}
