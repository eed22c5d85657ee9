//! Run a reduced benchmark through the experiment harness and print the CSV.

use bosoul::diffusion::{DiffusionConfig, DiffusionModel};
use bosoul::harness::{run_experiment, ExperimentConfig, GraphSpec, Method};

fn main() -> bosoul::Result<()> {
    let mut cfg = ExperimentConfig::default();
    cfg.graph = GraphSpec::SmallWorld {
        n: 300,
        k: 8,
        p: 0.1,
    };
    cfg.diffusion = DiffusionConfig::new(DiffusionModel::Sir, 0.1, 0.1);
    cfg.n_sources = 2;
    cfg.pool_size = 20;
    cfg.clusters = 8;
    cfg.budget = 25;
    cfg.rounds = 50;
    cfg.repetitions = 3;
    cfg.methods = vec![Method::Bosoul, Method::Jordan, Method::Netsleuth];
    cfg.seed = 7;

    let outcome = run_experiment(&cfg)?;
    print!("{}", outcome.csv);
    Ok(())
}
