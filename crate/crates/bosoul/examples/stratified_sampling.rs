//! Enumerate candidate source sets, cluster their spectral signals, and draw
//! a stratified sample: one candidate per cluster.

use std::collections::HashSet;

use bosoul::graph::Graph;
use bosoul::rng::{stream, Domain};
use bosoul::sampler::{cluster_candidates, enumerate_candidates, gss_sample};
use bosoul::spectral::build_basis;

fn main() -> bosoul::Result<()> {
    let g = Graph::small_world(300, 8, 0.1, 21)?;
    let basis = build_basis(&g)?;
    let pool = enumerate_candidates(&g, &basis, 20, 3, 128)?;
    println!("{} candidate sets from a pool of 20 nodes", pool.len());

    let pool = cluster_candidates(pool, 12, 5)?;
    let members = pool.cluster_members()?;
    for (c, ids) in members.iter().enumerate() {
        println!("cluster {c:2}: {} candidates", ids.len());
    }

    let mut rng = stream(5, Domain::Initialization, 0);
    let picks = gss_sample(&pool, 1, &mut rng, &HashSet::new())?;
    println!("stratified draw (one per cluster):");
    for id in picks {
        println!("  set {:?}", pool.sets()[id].members());
    }
    Ok(())
}
