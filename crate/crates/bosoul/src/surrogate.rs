//! Gaussian-process regression over binary source indicators with the GSG
//! kernel, plus the expected-improvement acquisition.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use statrs::function::erf::erf;

use crate::error::{Error, Result};
use crate::spectral::gsg_kernel;

const DEFAULT_NOISE: f64 = 1e-4;
const JITTER_START: f64 = 1e-8;
const JITTER_MAX: f64 = 1e-4;

pub fn std_normal_pdf(z: f64) -> f64 {
    (-(z * z) / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / std::f64::consts::SQRT_2))
}

/// GP posterior over (indicator → τ) pairs. Targets are standardized
/// internally; predictions come back in original τ units.
#[derive(Debug, Clone)]
pub struct SurrogateModel {
    inputs: Vec<Vec<f64>>,
    targets: Vec<f64>,
    length_scale: f64,
    noise_variance: f64,
    target_mean: f64,
    target_scale: f64,
    chol: Cholesky<f64, Dyn>,
    alpha: DVector<f64>,
}

/// Outcome of maximizing EI over a sampled batch.
#[derive(Debug, Clone, Copy)]
pub struct AcquisitionResult {
    /// Position within the batch.
    pub index: usize,
    pub ei: f64,
}

fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n == 0 {
        return 0.0;
    }
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

impl SurrogateModel {
    /// Fit a GP with homoscedastic noise (default 1e-4 on standardized
    /// targets). Unset `length_scale` falls back to the median heuristic.
    pub fn fit(
        inputs: Vec<Vec<f64>>,
        targets: Vec<f64>,
        length_scale: Option<f64>,
        noise_variance: Option<f64>,
    ) -> Result<Self> {
        let noise = noise_variance.unwrap_or(DEFAULT_NOISE);
        let n = targets.len();
        Self::fit_impl(inputs, targets, length_scale, vec![noise; n])
    }

    /// Fit with per-observation noise, e.g. the per-round simulation variance
    /// divided by the round count.
    pub fn fit_with_point_noise(
        inputs: Vec<Vec<f64>>,
        targets: Vec<f64>,
        length_scale: Option<f64>,
        point_noise: Vec<f64>,
    ) -> Result<Self> {
        Self::fit_impl(inputs, targets, length_scale, point_noise)
    }

    fn fit_impl(
        inputs: Vec<Vec<f64>>,
        targets: Vec<f64>,
        length_scale: Option<f64>,
        point_noise: Vec<f64>,
    ) -> Result<Self> {
        let n = inputs.len();
        if n < 2 {
            return Err(Error::InvalidParameter {
                name: "inputs",
                reason: format!("need at least 2 training points, got {n}"),
            });
        }
        if targets.len() != n || point_noise.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: targets.len().min(point_noise.len()),
            });
        }
        let dim = inputs[0].len();
        if inputs.iter().any(|x| x.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: inputs.iter().map(Vec::len).find(|&l| l != dim).unwrap(),
            });
        }
        if point_noise.iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidParameter {
                name: "noise_variance",
                reason: "must be nonnegative".into(),
            });
        }

        // With zero noise, duplicate inputs carrying conflicting targets make
        // the system inconsistent; jitter would only mask that.
        if point_noise.iter().all(|&v| v == 0.0) {
            for i in 0..n {
                for j in (i + 1)..n {
                    if inputs[i] == inputs[j] && (targets[i] - targets[j]).abs() > 1e-12 {
                        return Err(Error::Factorization {
                            max_jitter: JITTER_MAX,
                        });
                    }
                }
            }
        }

        let target_mean = targets.iter().sum::<f64>() / n as f64;
        let var = targets
            .iter()
            .map(|t| (t - target_mean).powi(2))
            .sum::<f64>()
            / n as f64;
        let target_scale = if var.sqrt() > 1e-12 { var.sqrt() } else { 1.0 };

        let length_scale = match length_scale {
            Some(l) if l > 0.0 => l,
            Some(l) => {
                return Err(Error::InvalidParameter {
                    name: "length_scale",
                    reason: format!("{l} must be positive"),
                })
            }
            None => {
                let mut dists = Vec::with_capacity(n * (n - 1) / 2);
                for i in 0..n {
                    for j in (i + 1)..n {
                        let d2: f64 = inputs[i]
                            .iter()
                            .zip(&inputs[j])
                            .map(|(a, b)| (a - b) * (a - b))
                            .sum();
                        dists.push(d2.sqrt());
                    }
                }
                let m = median(dists);
                if m > 1e-12 {
                    m
                } else {
                    1.0
                }
            }
        };

        let mut gram = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let k = gsg_kernel(&inputs[i], &inputs[j], length_scale)?;
                gram[(i, j)] = k;
                gram[(j, i)] = k;
            }
        }

        let y_std = DVector::from_iterator(
            n,
            targets.iter().map(|t| (t - target_mean) / target_scale),
        );

        // Noise on the diagonal, then jitter escalation if Cholesky fails.
        let mut jitter = 0.0;
        let chol = loop {
            let mut k = gram.clone();
            for i in 0..n {
                k[(i, i)] += point_noise[i] + jitter;
            }
            match Cholesky::new(k) {
                Some(c) => break c,
                None => {
                    jitter = if jitter == 0.0 {
                        JITTER_START
                    } else {
                        jitter * 10.0
                    };
                    if jitter > JITTER_MAX {
                        return Err(Error::Factorization {
                            max_jitter: JITTER_MAX,
                        });
                    }
                }
            }
        };
        let alpha = chol.solve(&y_std);
        let noise_variance = point_noise.iter().sum::<f64>() / n as f64 + jitter;
        Ok(Self {
            inputs,
            targets,
            length_scale,
            noise_variance,
            target_mean,
            target_scale,
            chol,
            alpha,
        })
    }

    pub fn n_train(&self) -> usize {
        self.inputs.len()
    }

    pub fn length_scale(&self) -> f64 {
        self.length_scale
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    /// Best observed training target.
    pub fn best_observed(&self) -> f64 {
        self.targets.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    fn kernel_column(&self, query: &[f64]) -> Result<DVector<f64>> {
        let dim = self.inputs[0].len();
        if query.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: query.len(),
            });
        }
        let mut k = DVector::<f64>::zeros(self.inputs.len());
        for (i, x) in self.inputs.iter().enumerate() {
            k[i] = gsg_kernel(x, query, self.length_scale)?;
        }
        Ok(k)
    }

    /// Posterior mean and standard deviation of the latent function at `query`,
    /// in original target units.
    pub fn posterior(&self, query: &[f64]) -> Result<(f64, f64)> {
        let k = self.kernel_column(query)?;
        let mean_std = k.dot(&self.alpha);
        let v = self.chol.solve(&k);
        let var_std = (1.0 - k.dot(&v)).max(0.0);
        Ok((
            self.target_mean + self.target_scale * mean_std,
            self.target_scale * var_std.sqrt(),
        ))
    }

    /// Closed-form expected improvement of `query` over `best`.
    pub fn expected_improvement(&self, query: &[f64], best: f64) -> Result<f64> {
        let (mu, sigma) = self.posterior(query)?;
        Ok(expected_improvement_analytic(mu, sigma, best))
    }

    /// Maximize EI over a batch; ties go to the lowest batch index.
    pub fn argmax_ei(&self, batch: &[Vec<f64>], best: f64) -> Result<AcquisitionResult> {
        if batch.is_empty() {
            return Err(Error::InvalidParameter {
                name: "batch",
                reason: "must be nonempty".into(),
            });
        }
        let mut result = AcquisitionResult {
            index: 0,
            ei: f64::NEG_INFINITY,
        };
        for (i, query) in batch.iter().enumerate() {
            let ei = self.expected_improvement(query, best)?;
            if ei > result.ei {
                result = AcquisitionResult { index: i, ei };
            }
        }
        Ok(result)
    }
}

/// EI(μ, σ; f⁺) = d·Φ(d/σ) + σ·φ(d/σ) with d = μ − f⁺, degenerating to
/// max(d, 0) when σ = 0.
pub fn expected_improvement_analytic(mu: f64, sigma: f64, best: f64) -> f64 {
    let d = mu - best;
    if sigma <= 1e-12 {
        return d.max(0.0);
    }
    let z = d / sigma;
    (d * std_normal_cdf(z) + sigma * std_normal_pdf(z)).max(0.0)
}
