//! Causal (uplift) classification: instances are scored by estimated
//! individual treatment effect and a causal threshold prescribes the positive
//! treatment to scores above it.
//!
//! Sweeps run over the pooled grid of both samples. When the control sample
//! is empty the dataset describes a single applicable treatment; every control
//! prior is then zero and every term carrying one vanishes by explicit
//! substitution, which reduces the causal measures to their conventional
//! counterparts.

use serde::{Deserialize, Serialize};

use crate::class_eval::ConfusionMatrix;
use crate::cost_model::CausalCostBenefitMatrix;
use crate::curve::{snap_up, trapezoid, CurveKind, CurvePoint, CurveSeries, RateValue};
use crate::dataset::{CausalDataset, Sample};
use crate::error::check_identity;
use crate::{Error, Matrix2, Result};

/// Confusion of one sample, indexed `[outcome][treatment class]`, as
/// proportions of that sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleCausalConfusionMatrix {
    pub sample: Sample,
    pub cells: Matrix2,
}

pub fn sample_causal_confusion(
    dataset: &CausalDataset,
    sample: Sample,
    threshold: f64,
) -> Result<SampleCausalConfusionMatrix> {
    let s = dataset.sample(sample)?;
    Ok(SampleCausalConfusionMatrix {
        sample,
        cells: ConfusionMatrix::of_sample(s, threshold).0,
    })
}

/// Control-sample cells in the negative treatment column and treatment-sample
/// cells in the positive treatment column. Sums to one only asymptotically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CausalConfusionMatrix(pub Matrix2);

/// Shift in the outcome distribution relative to treating nobody.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CausalEffectMatrix(pub Matrix2);

fn masses_above(dataset: &CausalDataset, phi: f64) -> Result<[[f64; 2]; 2]> {
    // [sample][class], treatment first
    let t = dataset.treatment()?;
    let mut out = [[t.mass_above(0, phi), t.mass_above(1, phi)], [0.0; 2]];
    if let Some(c) = dataset.control() {
        out[1] = [c.mass_above(0, phi), c.mass_above(1, phi)];
    }
    Ok(out)
}

/// Mean of the within-sample positive treatment rates. Without a control
/// sample only the treatment rate is averaged.
pub fn positive_treatment_rate(dataset: &CausalDataset, threshold: f64) -> Result<f64> {
    let t = dataset.treatment()?.rate_above(threshold);
    Ok(match dataset.control() {
        Some(c) => (c.rate_above(threshold) + t) / 2.0,
        None => t,
    })
}

/// Fraction of all instances of both samples scored above `threshold`.
pub fn pooled_treatment_rate(dataset: &CausalDataset, threshold: f64) -> Result<f64> {
    let t = dataset.treatment()?;
    let above = |s: &crate::ScoredSample| s.scores().iter().filter(|&&v| v > threshold).count();
    let count = above(t) + dataset.control().map_or(0, above);
    Ok(count as f64 / dataset.n() as f64)
}

/// `pi_1^T - pi_1^C`, the net gain in positive outcomes when treating all.
fn net_positive_gain(dataset: &CausalDataset) -> Result<f64> {
    Ok(dataset.priors(Sample::Treatment)?.pi1 - dataset.priors(Sample::Control)?.pi1)
}

fn causal_sweep(
    dataset: &CausalDataset,
    kind: CurveKind,
    f: impl Fn(f64, [[f64; 2]; 2]) -> Result<(f64, f64)>,
) -> Result<CurveSeries> {
    let grid = dataset.threshold_grid()?;
    let points = grid
        .iter()
        .rev()
        .map(|threshold| {
            let (x, y) = f(threshold, masses_above(dataset, threshold)?)?;
            Ok(CurvePoint { threshold, x, y })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveSeries { kind, points })
}

/// Net increase in positive outcomes against the positive treatment rate.
pub fn qini_curve(dataset: &CausalDataset) -> Result<CurveSeries> {
    causal_sweep(dataset, CurveKind::Qini, |phi, m| {
        Ok((positive_treatment_rate(dataset, phi)?, m[0][1] - m[1][1]))
    })
}

/// Trapezoidal area under the Qini curve.
pub fn qini_area(dataset: &CausalDataset) -> Result<f64> {
    Ok(trapezoid(&qini_curve(dataset)?.points))
}

/// Qini coefficient against the perfect model that converts every treated
/// positive. Its assumptions make it hard to interpret; prefer
/// [`little_qini`].
pub fn qini_coefficient(dataset: &CausalDataset) -> Result<f64> {
    let pt = dataset.priors(Sample::Treatment)?.pi1;
    let pc = dataset.priors(Sample::Control)?.pi1;
    let denom = (pt - pc * pc - pt * pt) / 2.0;
    if denom == 0.0 {
        return Err(Error::undefined(
            "Qini coefficient",
            "perfect-model area equals random-model area",
        ));
    }
    Ok((qini_area(dataset)? - (pt - pc) / 2.0) / denom)
}

/// Little Qini coefficient against the monotone perfect model.
pub fn little_qini(dataset: &CausalDataset) -> Result<f64> {
    let gain = net_positive_gain(dataset)?;
    if gain == 0.0 {
        return Err(Error::undefined(
            "little Qini coefficient",
            "treatment and control positive rates are equal",
        ));
    }
    if gain == 1.0 {
        return Err(Error::undefined(
            "little Qini coefficient",
            "net positive gain is 1",
        ));
    }
    let area = qini_area(dataset)?;
    if dataset.is_single_treatment() {
        // pi^C = 0: the normalized form of the gains-curve coefficient
        return Ok((2.0 * (area / gain) - 1.0) / (1.0 - gain));
    }
    Ok((area - gain / 2.0) / (gain / 2.0 - gain * gain / 2.0))
}

/// `(Q, q0)`; errors if either is undefined.
pub fn qini_coefficients(dataset: &CausalDataset) -> Result<(f64, f64)> {
    Ok((qini_coefficient(dataset)?, little_qini(dataset)?))
}

fn liftup_value(qini: f64, gain: f64, rate: f64) -> f64 {
    qini / (gain * rate)
}

/// Liftup at the smallest achievable positive treatment rate at or above
/// `rate`.
pub fn liftup(dataset: &CausalDataset, rate: f64) -> Result<RateValue> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::InvalidRate(rate));
    }
    let gain = net_positive_gain(dataset)?;
    if gain == 0.0 {
        return Err(Error::undefined(
            "liftup",
            "treatment and control positive rates are equal",
        ));
    }
    let points = qini_curve(dataset)?.points;
    let p = points[snap_up(&points, rate).expect("rate 1 is always achievable")];
    Ok(RateValue {
        value: liftup_value(p.y, gain, p.x),
        requested_rate: rate,
        realized_rate: p.x,
        threshold: p.threshold,
    })
}

pub fn liftup_curve(dataset: &CausalDataset) -> Result<CurveSeries> {
    let gain = net_positive_gain(dataset)?;
    if gain == 0.0 {
        return Err(Error::undefined(
            "liftup",
            "treatment and control positive rates are equal",
        ));
    }
    let points = qini_curve(dataset)?
        .points
        .into_iter()
        .filter(|p| p.x > 0.0)
        .map(|p| CurvePoint {
            y: liftup_value(p.y, gain, p.x),
            ..p
        })
        .collect();
    Ok(CurveSeries {
        kind: CurveKind::Liftup,
        points,
    })
}

/// Priors of the two transformed groups: "good" outcomes (treated positives
/// and control negatives) and the rest.
fn croc_denominators(dataset: &CausalDataset) -> Result<(f64, f64)> {
    let t = dataset.priors(Sample::Treatment)?;
    let c = dataset.priors(Sample::Control)?;
    let good = c.pi0 + t.pi1;
    let bad = t.pi0 + c.pi1;
    if good == 0.0 {
        return Err(Error::undefined(
            "AUCROC",
            "no treated positives or control negatives",
        ));
    }
    if bad == 0.0 {
        return Err(Error::undefined(
            "AUCROC",
            "no treated negatives or control positives",
        ));
    }
    Ok((good, bad))
}

/// Causal sensitivity at `threshold`.
pub fn causal_sensitivity(dataset: &CausalDataset, threshold: f64) -> Result<f64> {
    let (good, _) = croc_denominators(dataset)?;
    let m = masses_above(dataset, threshold)?;
    Ok((m[1][0] + m[0][1]) / good)
}

/// Causal false discovery rate normalized by the mass of its own group, so
/// that it spans `[0, 1]`.
pub fn causal_false_discovery_rate(dataset: &CausalDataset, threshold: f64) -> Result<f64> {
    let (_, bad) = croc_denominators(dataset)?;
    let m = masses_above(dataset, threshold)?;
    Ok((m[1][1] + m[0][0]) / bad)
}

/// CROC curve and the area under it.
///
/// The area is the sum over grid points of the "bad" group's mass at each
/// score times the fraction of the "good" group scored above it, with half
/// credit for ties; this equals the trapezoidal area under the curve.
pub fn croc_aucroc(dataset: &CausalDataset) -> Result<(CurveSeries, f64)> {
    let (good, bad) = croc_denominators(dataset)?;
    let curve = causal_sweep(dataset, CurveKind::Croc, |_, m| {
        Ok(((m[1][1] + m[0][0]) / bad, (m[1][0] + m[0][1]) / good))
    })?;
    // points run from the largest threshold down; consecutive points differ
    // by the mass sitting exactly at one grid score
    let aucroc = curve
        .points
        .windows(2)
        .map(|w| {
            let bad_mass = w[1].x - w[0].x;
            let good_above = w[0].y;
            let good_at = w[1].y - w[0].y;
            bad_mass * (good_above + 0.5 * good_at)
        })
        .sum();
    Ok((curve, aucroc))
}

/// Causal confusion matrix at `threshold`.
///
/// Without a control sample every instance receives the single treatment, so
/// the negative treatment column is the treatment sample's own negative class
/// column and the matrix equals its conventional confusion matrix.
pub fn causal_confusion(dataset: &CausalDataset, threshold: f64) -> Result<CausalConfusionMatrix> {
    let t = dataset.treatment()?;
    let left = match dataset.control() {
        Some(c) => [c.mass_at_or_below(0, threshold), c.mass_at_or_below(1, threshold)],
        None => [t.mass_at_or_below(0, threshold), t.mass_at_or_below(1, threshold)],
    };
    Ok(CausalConfusionMatrix(Matrix2::new(
        left[0],
        t.mass_above(0, threshold),
        left[1],
        t.mass_above(1, threshold),
    )))
}

/// Negative treatment baseline: nobody receives the positive treatment.
pub fn baseline_causal_confusion(dataset: &CausalDataset) -> Result<CausalConfusionMatrix> {
    let c = dataset.priors(Sample::Control)?;
    dataset.treatment()?;
    Ok(CausalConfusionMatrix(Matrix2::new(c.pi0, 0.0, c.pi1, 0.0)))
}

/// Causal effect matrix at `threshold`: the negative column loses the control
/// mass above the threshold, the positive column gains the treated mass.
pub fn causal_effect_matrix(dataset: &CausalDataset, threshold: f64) -> Result<CausalEffectMatrix> {
    if dataset.is_single_treatment() {
        // the baseline is the zero matrix
        let cf = causal_confusion(dataset, threshold)?;
        return Ok(CausalEffectMatrix(cf.0));
    }
    let m = masses_above(dataset, threshold)?;
    Ok(CausalEffectMatrix(Matrix2::new(
        -m[1][0], m[0][0], -m[1][1], m[0][1],
    )))
}

/// Absolute profit per instance, `sum(CF o CB)` on the causal confusion
/// matrix.
pub fn profit_per_instance(
    dataset: &CausalDataset,
    threshold: f64,
    ccb: &CausalCostBenefitMatrix,
) -> Result<f64> {
    Ok(causal_confusion(dataset, threshold)?.0.hadamard_sum(ccb.matrix()))
}

/// Causal profit per instance relative to the negative treatment baseline.
///
/// Computed as `P - P_b` and as `sum(E o CB)`; the two must agree and the
/// effect-matrix value is returned.
pub fn causal_profit(
    dataset: &CausalDataset,
    threshold: f64,
    ccb: &CausalCostBenefitMatrix,
) -> Result<f64> {
    let p = profit_per_instance(dataset, threshold, ccb)?;
    let p_b = baseline_causal_confusion(dataset)?.0.hadamard_sum(ccb.matrix());
    let via_effect = causal_effect_matrix(dataset, threshold)?.0.hadamard_sum(ccb.matrix());
    check_identity(
        "causal profit routes",
        p - p_b,
        via_effect,
        ccb.matrix().abs_sum(),
    )?;
    Ok(via_effect)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxCausalProfitResult {
    pub value: f64,
    pub optimal_threshold: f64,
    /// Fraction of the treatment sample above the optimal threshold.
    pub treat_rate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CausalProfitPoint {
    pub threshold: f64,
    pub treat_rate: f64,
    pub profit: f64,
}

/// Causal effect matrices at every pooled grid threshold.
#[derive(Debug, Clone)]
pub struct CausalSweep {
    thresholds: Vec<f64>,
    effects: Vec<CausalEffectMatrix>,
    treat_rates: Vec<f64>,
}

impl CausalSweep {
    pub fn new(dataset: &CausalDataset) -> Result<Self> {
        let grid = dataset.threshold_grid()?;
        let t = dataset.treatment()?;
        let effects = grid
            .iter()
            .map(|phi| causal_effect_matrix(dataset, phi))
            .collect::<Result<Vec<_>>>()?;
        let treat_rates = grid.iter().map(|phi| t.rate_above(phi)).collect();
        Ok(CausalSweep {
            thresholds: grid.thresholds().to_vec(),
            effects,
            treat_rates,
        })
    }

    pub fn table(&self, ccb: &CausalCostBenefitMatrix) -> Vec<CausalProfitPoint> {
        (0..self.thresholds.len())
            .map(|i| CausalProfitPoint {
                threshold: self.thresholds[i],
                treat_rate: self.treat_rates[i],
                profit: self.effects[i].0.hadamard_sum(ccb.matrix()),
            })
            .collect()
    }

    /// Maximum over the grid; ties go to the smallest threshold.
    pub fn maximize(&self, ccb: &CausalCostBenefitMatrix) -> MaxCausalProfitResult {
        let mut best = MaxCausalProfitResult {
            value: f64::NEG_INFINITY,
            optimal_threshold: self.thresholds[0],
            treat_rate: 1.0,
        };
        for i in 0..self.thresholds.len() {
            let value = self.effects[i].0.hadamard_sum(ccb.matrix());
            if value > best.value {
                best = MaxCausalProfitResult {
                    value,
                    optimal_threshold: self.thresholds[i],
                    treat_rate: self.treat_rates[i],
                };
            }
        }
        best
    }
}

pub fn max_causal_profit(
    dataset: &CausalDataset,
    ccb: &CausalCostBenefitMatrix,
) -> Result<MaxCausalProfitResult> {
    Ok(CausalSweep::new(dataset)?.maximize(ccb))
}

pub fn causal_profit_table(
    dataset: &CausalDataset,
    ccb: &CausalCostBenefitMatrix,
) -> Result<Vec<CausalProfitPoint>> {
    Ok(CausalSweep::new(dataset)?.table(ccb))
}
