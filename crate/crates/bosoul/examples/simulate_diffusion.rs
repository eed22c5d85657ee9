//! Run each diffusion model from the same sources and compare footprints.

use bosoul::diffusion::{simulate_snapshot, DiffusionConfig, DiffusionModel};
use bosoul::graph::{Graph, NodeSet};
use bosoul::rng::{stream, Domain};

fn main() -> bosoul::Result<()> {
    let g = Graph::small_world(500, 8, 0.1, 7)?;
    let sources = NodeSet::new(vec![10, 250, 480]);

    for model in [
        DiffusionModel::Si,
        DiffusionModel::Sir,
        DiffusionModel::Sis,
        DiffusionModel::Ic,
    ] {
        let cfg = DiffusionConfig::new(model, 0.1, 0.1);
        let mut rng = stream(99, Domain::SimulationRound, 0);
        let snapshot = simulate_snapshot(&g, &sources, &cfg, 10, &mut rng);
        println!(
            "{model}: {} of {} nodes infected after 10 steps",
            snapshot.infected_count(),
            g.n_nodes()
        );
    }
    Ok(())
}
