//! Full pipeline on one instance: hide sources, observe a snapshot, then
//! compare the optimizer against both baselines.

use bosoul::diffusion::{simulate_snapshot, DiffusionConfig, DiffusionModel};
use bosoul::graph::{top_degree_nodes, Graph, NodeSet};
use bosoul::localizer::{bosoul_localize, jordan_localize, netsleuth_localize, BosoulConfig};
use bosoul::metrics::source_distance;
use bosoul::rng::{stream, Domain};

fn main() -> bosoul::Result<()> {
    let g = Graph::small_world(400, 8, 0.1, 17)?;
    let diffusion = DiffusionConfig::new(DiffusionModel::Sir, 0.1, 0.1);

    let pool = top_degree_nodes(&g, 30)?;
    let truth = NodeSet::new(vec![pool[0], pool[9], pool[20]]);
    let mut rng = stream(17, Domain::GroundTruth, 0);
    let o_star = simulate_snapshot(&g, &truth, &diffusion, 10, &mut rng);
    println!(
        "hidden sources {:?}, snapshot has {} infected nodes",
        truth.members(),
        o_star.infected_count()
    );

    let mut cfg = BosoulConfig::new(3, diffusion, 2024);
    cfg.pool_size = 30;
    cfg.clusters = 10;
    cfg.budget = 40;
    cfg.rounds = 50;
    let result = bosoul_localize(&g, &o_star, &cfg)?;
    let jordan = jordan_localize(&g, &o_star, 3)?;
    let netsleuth = netsleuth_localize(&g, &o_star, 3)?;

    for (name, predicted) in [
        ("bosoul", &result.sources),
        ("jordan", &jordan),
        ("netsleuth", &netsleuth),
    ] {
        let report = source_distance(&g, predicted, &truth)?;
        println!(
            "{name:9} -> {:?}, matched distance {}",
            predicted.members(),
            report.total
        );
    }
    println!(
        "optimizer used {} simulations in {:.2}s",
        result.evaluations.len(),
        result.duration.as_secs_f64()
    );
    Ok(())
}
