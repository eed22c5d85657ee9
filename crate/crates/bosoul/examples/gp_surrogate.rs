//! Fit the Gaussian-process surrogate to simulated fitness values and pick the
//! next candidate by expected improvement.

use bosoul::diffusion::{estimate_tau, simulate_snapshot, DiffusionConfig, DiffusionModel};
use bosoul::graph::{Graph, NodeSet};
use bosoul::rng::{stream, Domain};
use bosoul::sampler::enumerate_candidates;
use bosoul::spectral::build_basis;
use bosoul::surrogate::SurrogateModel;

fn main() -> bosoul::Result<()> {
    let g = Graph::small_world(150, 6, 0.1, 11)?;
    let diffusion = DiffusionConfig::new(DiffusionModel::Sir, 0.2, 0.1);
    let truth = NodeSet::new(vec![3, 77]);
    let mut rng = stream(1, Domain::GroundTruth, 0);
    let o_star = simulate_snapshot(&g, &truth, &diffusion, 5, &mut rng);

    let basis = build_basis(&g)?;
    let pool = enumerate_candidates(&g, &basis, 10, 2, 128)?;

    // Evaluate the first 12 candidates and train on (indicator, tau) pairs.
    let train: Vec<usize> = (0..12).collect();
    let mut inputs = Vec::new();
    let mut targets = Vec::new();
    for &id in &train {
        let est = estimate_tau(&g, &pool.sets()[id], &o_star, &diffusion, 50, id as u64)?;
        inputs.push(pool.indicator(id));
        targets.push(est.mean);
    }
    let model = SurrogateModel::fit(inputs, targets, None, None)?;
    println!(
        "fitted on {} points, length scale {:.3}, best observed {:.3}",
        model.n_train(),
        model.length_scale(),
        model.best_observed()
    );

    let batch: Vec<Vec<f64>> = (12..pool.len()).map(|id| pool.indicator(id)).collect();
    let chosen = model.argmax_ei(&batch, model.best_observed())?;
    let (mu, sigma) = model.posterior(&batch[chosen.index])?;
    println!(
        "next candidate: set {:?} with EI {:.4} (posterior {:.3} +- {:.3})",
        pool.sets()[12 + chosen.index].members(),
        chosen.ei,
        mu,
        sigma
    );
    Ok(())
}
