use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{causal_cost_benefit, CausalDistribution, ConventionalDistribution};
use crate::causal_eval::CausalSweep;
use crate::class_eval::{BaselineKind, ClassSweep};
use crate::dataset::{CausalDataset, ClassificationDataset};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdCount {
    pub threshold: f64,
    pub count: u64,
}

/// Monte Carlo estimate of an expected maximum profit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpResult {
    pub mean_profit: f64,
    /// Population standard deviation of the per-draw maxima.
    pub profit_std_dev: f64,
    pub draws: u64,
    pub seed: u64,
    /// Optimal thresholds over all draws, ascending.
    pub threshold_distribution: Vec<ThresholdCount>,
    /// Mean positive rate (conventional) or treatment rate (causal) at the optimum.
    pub mean_positive_rate: f64,
}

/// Neumaier-compensated sum.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Mean taken relative to the first value so that constant inputs return
/// that constant exactly.
fn shifted_mean(values: &[f64]) -> f64 {
    let v0 = values[0];
    v0 + compensated_sum(values.iter().map(|v| v - v0)) / values.len() as f64
}

fn summarize(draws: u64, seed: u64, outcomes: Vec<(f64, f64, f64)>) -> EmpResult {
    let values: Vec<f64> = outcomes.iter().map(|o| o.0).collect();
    let mean_profit = shifted_mean(&values);
    let variance = compensated_sum(values.iter().map(|v| (v - mean_profit).powi(2)))
        / values.len() as f64;
    let rates: Vec<f64> = outcomes.iter().map(|o| o.2).collect();

    let mut thresholds: Vec<f64> = outcomes.iter().map(|o| o.1).collect();
    thresholds.sort_by(f64::total_cmp);
    let mut threshold_distribution: Vec<ThresholdCount> = Vec::new();
    for t in thresholds {
        match threshold_distribution.last_mut() {
            Some(last) if last.threshold == t => last.count += 1,
            _ => threshold_distribution.push(ThresholdCount { threshold: t, count: 1 }),
        }
    }

    EmpResult {
        mean_profit,
        profit_std_dev: variance.sqrt(),
        draws,
        seed,
        threshold_distribution,
        mean_positive_rate: shifted_mean(&rates),
    }
}

fn check_draws(draws: u64) -> Result<()> {
    if draws == 0 {
        return Err(Error::InvalidParameter("draws must be >= 1".into()));
    }
    if draws >= 1 << 60 {
        return Err(Error::InvalidParameter(format!("draws = {draws} is too large")));
    }
    Ok(())
}

/// Mean over `draws` realized cost-benefit matrices of the maximum profit.
pub fn expected_max_profit(
    dataset: &ClassificationDataset,
    dist: &ConventionalDistribution,
    baseline: BaselineKind,
    draws: u64,
    seed: u64,
) -> Result<EmpResult> {
    check_draws(draws)?;
    let sweep = ClassSweep::new(dataset, baseline);
    let outcomes = (0..draws)
        .into_par_iter()
        .map(|i| {
            let best = sweep.maximize(&dist.sample(i, seed));
            (best.value, best.optimal_threshold, best.positive_rate)
        })
        .collect();
    Ok(summarize(draws, seed, outcomes))
}

/// Mean over `draws` realized `OB - TC` matrices of the maximum causal profit.
pub fn expected_max_causal_profit(
    dataset: &CausalDataset,
    dist: &CausalDistribution,
    draws: u64,
    seed: u64,
) -> Result<EmpResult> {
    check_draws(draws)?;
    let sweep = CausalSweep::new(dataset)?;
    let outcomes = (0..draws)
        .into_par_iter()
        .map(|i| {
            let (ob, tc) = dist.sample(i, seed);
            let best = sweep.maximize(&causal_cost_benefit(&ob, &tc));
            (best.value, best.optimal_threshold, best.treat_rate)
        })
        .collect();
    Ok(summarize(draws, seed, outcomes))
}
