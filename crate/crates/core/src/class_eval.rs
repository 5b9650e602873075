//! Conventional binary classification: confusion matrix, scalar metrics,
//! ROC/AUC, gains/Gini, lift, baseline models, effect matrix and profit.

use serde::{Deserialize, Serialize};

use crate::cost_model::CostBenefitMatrix;
use crate::curve::{snap_up, trapezoid, CurveKind, CurvePoint, CurveSeries, RateValue};
use crate::dataset::{ClassPriors, ClassificationDataset, ScoredSample};
use crate::error::check_identity;
use crate::{Error, Matrix2, Result};

/// Proportions of all instances, indexed `[actual outcome][predicted class]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConfusionMatrix(pub Matrix2);

impl ConfusionMatrix {
    /// Confusion matrix of a stratum at `threshold`.
    pub fn of_sample(sample: &ScoredSample, threshold: f64) -> Self {
        ConfusionMatrix(Matrix2::new(
            sample.mass_at_or_below(0, threshold),
            sample.mass_above(0, threshold),
            sample.mass_at_or_below(1, threshold),
            sample.mass_above(1, threshold),
        ))
    }

    pub fn cells(&self) -> [[f64; 2]; 2] {
        self.0.cells()
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.0
    }

    pub fn true_negatives(&self) -> f64 {
        self.0.get(0, 0)
    }

    pub fn false_positives(&self) -> f64 {
        self.0.get(0, 1)
    }

    pub fn false_negatives(&self) -> f64 {
        self.0.get(1, 0)
    }

    pub fn true_positives(&self) -> f64 {
        self.0.get(1, 1)
    }

    /// Fraction predicted positive.
    pub fn positive_rate(&self) -> f64 {
        self.false_positives() + self.true_positives()
    }

    /// The zero matrix of the absolute baseline.
    pub fn is_degenerate(&self) -> bool {
        self.0.is_zero()
    }
}

pub fn confusion_matrix(dataset: &ClassificationDataset, threshold: f64) -> ConfusionMatrix {
    ConfusionMatrix::of_sample(dataset.sample(), threshold)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarMetrics {
    pub accuracy: f64,
    pub sensitivity: f64,
    pub specificity: f64,
}

pub fn scalar_metrics(cf: &ConfusionMatrix) -> Result<ScalarMetrics> {
    let negatives = cf.0.row_sum(0);
    let positives = cf.0.row_sum(1);
    if positives == 0.0 {
        return Err(Error::undefined("sensitivity", "no positive instances"));
    }
    if negatives == 0.0 {
        return Err(Error::undefined("specificity", "no negative instances"));
    }
    Ok(ScalarMetrics {
        accuracy: cf.true_negatives() + cf.true_positives(),
        sensitivity: cf.true_positives() / positives,
        specificity: cf.true_negatives() / negatives,
    })
}

fn require_both_classes(sample: &ScoredSample, metric: &'static str) -> Result<()> {
    for class in 0..2 {
        if !sample.has_class(class) {
            return Err(Error::undefined(
                metric,
                format!("no instances of outcome class {class}"),
            ));
        }
    }
    Ok(())
}

/// Builds points over the threshold grid and returns them sorted by `x`.
fn sweep_points(
    dataset: &ClassificationDataset,
    f: impl Fn(&ScoredSample, f64) -> (f64, f64),
) -> Vec<CurvePoint> {
    let sample = dataset.sample();
    dataset
        .threshold_grid()
        .iter()
        .rev()
        .map(|threshold| {
            let (x, y) = f(sample, threshold);
            CurvePoint { threshold, x, y }
        })
        .collect()
}

/// ROC curve `(1 - F0, 1 - F1)` and the trapezoidal area beneath it.
pub fn roc_auc(dataset: &ClassificationDataset) -> Result<(CurveSeries, f64)> {
    require_both_classes(dataset.sample(), "AUC")?;
    let points = sweep_points(dataset, |s, phi| {
        let d0 = s.distribution(0).unwrap();
        let d1 = s.distribution(1).unwrap();
        (d0.survival(phi), d1.survival(phi))
    });
    let auc = trapezoid(&points);
    Ok((
        CurveSeries {
            kind: CurveKind::Roc,
            points,
        },
        auc,
    ))
}

/// Gains points: positive prediction rate against sensitivity.
fn gains_points(dataset: &ClassificationDataset) -> Vec<CurvePoint> {
    sweep_points(dataset, |s, phi| {
        let sensitivity = s.distribution(1).map_or(0.0, |d| d.survival(phi));
        (s.rate_above(phi), sensitivity)
    })
}

/// Gains curve and the Gini coefficient
/// `(2 * area - 1) / (1 - pi1)`.
pub fn gains_gini(dataset: &ClassificationDataset) -> Result<(CurveSeries, f64)> {
    require_both_classes(dataset.sample(), "Gini")?;
    let pi1 = dataset.priors().pi1;
    if pi1 == 1.0 {
        return Err(Error::undefined("Gini", "positive class proportion is 1"));
    }
    let points = gains_points(dataset);
    let gini = (2.0 * trapezoid(&points) - 1.0) / (1.0 - pi1);
    Ok((
        CurveSeries {
            kind: CurveKind::Gains,
            points,
        },
        gini,
    ))
}

/// Lift at the smallest achievable positive prediction rate at or above
/// `rate`: sensitivity divided by the realized rate.
pub fn lift(dataset: &ClassificationDataset, rate: f64) -> Result<RateValue> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::InvalidRate(rate));
    }
    if !dataset.sample().has_class(1) {
        return Err(Error::undefined("lift", "no positive instances"));
    }
    let points = gains_points(dataset);
    let p = points[snap_up(&points, rate).expect("rate 1 is always achievable")];
    Ok(RateValue {
        value: p.y / p.x,
        requested_rate: rate,
        realized_rate: p.x,
        threshold: p.threshold,
    })
}

/// Lift at every achievable nonzero positive prediction rate.
pub fn lift_curve(dataset: &ClassificationDataset) -> Result<CurveSeries> {
    if !dataset.sample().has_class(1) {
        return Err(Error::undefined("lift", "no positive instances"));
    }
    let points = gains_points(dataset)
        .into_iter()
        .filter(|p| p.x > 0.0)
        .map(|p| CurvePoint {
            y: p.y / p.x,
            ..p
        })
        .collect();
    Ok(CurveSeries {
        kind: CurveKind::Lift,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaselineKind {
    Perfect,
    #[serde(rename = "pos")]
    AllPositive,
    #[serde(rename = "neg")]
    AllNegative,
    Random,
    Absolute,
}

impl BaselineKind {
    pub const ALL: [BaselineKind; 5] = [
        BaselineKind::Perfect,
        BaselineKind::AllPositive,
        BaselineKind::AllNegative,
        BaselineKind::Random,
        BaselineKind::Absolute,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BaselineKind::Perfect => "perfect",
            BaselineKind::AllPositive => "pos",
            BaselineKind::AllNegative => "neg",
            BaselineKind::Random => "random",
            BaselineKind::Absolute => "absolute",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Every baseline except the zero matrix sums to one.
    pub fn is_proper(&self) -> bool {
        !matches!(self, BaselineKind::Absolute)
    }
}

pub fn baseline_confusion(kind: BaselineKind, priors: ClassPriors) -> ConfusionMatrix {
    let ClassPriors { pi0, pi1 } = priors;
    ConfusionMatrix(match kind {
        BaselineKind::Perfect => Matrix2::new(pi0, 0.0, 0.0, pi1),
        BaselineKind::AllPositive => Matrix2::new(0.0, pi0, 0.0, pi1),
        BaselineKind::AllNegative => Matrix2::new(pi0, 0.0, pi1, 0.0),
        BaselineKind::Random => {
            Matrix2::new(pi0 * pi0, (1.0 - pi0) * pi0, (1.0 - pi1) * pi1, pi1 * pi1)
        }
        BaselineKind::Absolute => Matrix2::ZERO,
    })
}

/// Model confusion matrix minus baseline confusion matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectMatrix {
    pub cells: Matrix2,
    /// False when the baseline was the zero matrix, in which case the cells
    /// do not sum to zero.
    pub proper: bool,
}

pub fn effect_matrix(cf: &ConfusionMatrix, cf_b: &ConfusionMatrix) -> Result<EffectMatrix> {
    let proper = !cf_b.is_degenerate();
    if proper {
        let priors = [cf.0.row_sum(0), cf.0.row_sum(1)];
        let baseline = [cf_b.0.row_sum(0), cf_b.0.row_sum(1)];
        if (0..2).any(|i| (priors[i] - baseline[i]).abs() > crate::IDENTITY_TOL) {
            return Err(Error::MismatchedPriors { priors, baseline });
        }
    }
    Ok(EffectMatrix {
        cells: cf.0.sub(&cf_b.0),
        proper,
    })
}

/// Profit per instance, `sum(CF o CB)`.
pub fn profit(cf: &ConfusionMatrix, cb: &CostBenefitMatrix) -> f64 {
    cf.0.hadamard_sum(cb.matrix())
}

/// `P - P_b`, cross-checked against `sum(E o CB)`.
pub fn relative_profit(
    cf: &ConfusionMatrix,
    cf_b: &ConfusionMatrix,
    cb: &CostBenefitMatrix,
) -> Result<f64> {
    let effect = effect_matrix(cf, cf_b)?;
    let value = profit(cf, cb) - profit(cf_b, cb);
    check_identity(
        "relative profit vs effect-matrix profit",
        value,
        effect.cells.hadamard_sum(cb.matrix()),
        cb.matrix().abs_sum(),
    )?;
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxProfitResult {
    pub value: f64,
    pub optimal_threshold: f64,
    pub positive_rate: f64,
}

/// One row of a profit-versus-threshold table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfitPoint {
    pub threshold: f64,
    pub rate: f64,
    pub profit: f64,
}

/// Confusion matrices at every grid threshold, precomputed so that the
/// profit surface can be re-evaluated cheaply for many cost-benefit matrices.
#[derive(Debug, Clone)]
pub struct ClassSweep {
    thresholds: Vec<f64>,
    matrices: Vec<ConfusionMatrix>,
    baseline: ConfusionMatrix,
}

impl ClassSweep {
    pub fn new(dataset: &ClassificationDataset, baseline: BaselineKind) -> Self {
        let grid = dataset.threshold_grid();
        let matrices = grid.iter().map(|t| confusion_matrix(dataset, t)).collect();
        ClassSweep {
            thresholds: grid.thresholds().to_vec(),
            matrices,
            baseline: baseline_confusion(baseline, dataset.priors()),
        }
    }

    pub fn table(&self, cb: &CostBenefitMatrix) -> Vec<ProfitPoint> {
        let base = profit(&self.baseline, cb);
        self.thresholds
            .iter()
            .zip(&self.matrices)
            .map(|(&threshold, cf)| ProfitPoint {
                threshold,
                rate: cf.positive_rate(),
                profit: profit(cf, cb) - base,
            })
            .collect()
    }

    /// Maximum over the grid; ties go to the smallest threshold.
    pub fn maximize(&self, cb: &CostBenefitMatrix) -> MaxProfitResult {
        let base = profit(&self.baseline, cb);
        let mut best = MaxProfitResult {
            value: f64::NEG_INFINITY,
            optimal_threshold: self.thresholds[0],
            positive_rate: 1.0,
        };
        for (&threshold, cf) in self.thresholds.iter().zip(&self.matrices) {
            let value = profit(cf, cb) - base;
            if value > best.value {
                best = MaxProfitResult {
                    value,
                    optimal_threshold: threshold,
                    positive_rate: cf.positive_rate(),
                };
            }
        }
        best
    }
}

/// Maximum relative profit over all grid thresholds.
pub fn max_profit(
    dataset: &ClassificationDataset,
    cb: &CostBenefitMatrix,
    baseline: BaselineKind,
) -> MaxProfitResult {
    ClassSweep::new(dataset, baseline).maximize(cb)
}

pub fn profit_table(
    dataset: &ClassificationDataset,
    cb: &CostBenefitMatrix,
    baseline: BaselineKind,
) -> Vec<ProfitPoint> {
    ClassSweep::new(dataset, baseline).table(cb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fix_c, separated};
    use approx::assert_abs_diff_eq;

    fn cb(m: [[f64; 2]; 2]) -> CostBenefitMatrix {
        CostBenefitMatrix::new(m).unwrap()
    }

    const CB: [[f64; 2]; 2] = [[0.0, -1.0], [-5.0, 10.0]];

    #[test]
    fn confusion_examples() {
        let ds = fix_c();
        assert_eq!(confusion_matrix(&ds, 0.5).cells(), [[0.25, 0.25], [0.25, 0.25]]);
        let sentinel = ds.threshold_grid().sentinel();
        assert_eq!(confusion_matrix(&ds, sentinel).cells(), [[0.0, 0.5], [0.0, 0.5]]);
        assert_eq!(confusion_matrix(&ds, 0.9).cells(), [[0.5, 0.0], [0.5, 0.0]]);
    }

    #[test]
    fn scalar_metric_examples() {
        let m = scalar_metrics(&confusion_matrix(&fix_c(), 0.5)).unwrap();
        assert_eq!((m.accuracy, m.sensitivity, m.specificity), (0.5, 0.5, 0.5));
        let perfect = ConfusionMatrix(Matrix2::new(0.5, 0.0, 0.0, 0.5));
        let m = scalar_metrics(&perfect).unwrap();
        assert_eq!((m.accuracy, m.sensitivity, m.specificity), (1.0, 1.0, 1.0));
        let all_pos = ConfusionMatrix(Matrix2::new(0.0, 0.5, 0.0, 0.5));
        let m = scalar_metrics(&all_pos).unwrap();
        assert_eq!((m.accuracy, m.sensitivity, m.specificity), (0.5, 1.0, 0.0));
        let no_pos = ConfusionMatrix(Matrix2::new(0.5, 0.5, 0.0, 0.0));
        assert!(matches!(
            scalar_metrics(&no_pos),
            Err(Error::Undefined { metric: "sensitivity", .. })
        ));
    }

    #[test]
    fn auc_examples() {
        let (roc, auc) = roc_auc(&fix_c()).unwrap();
        assert_abs_diff_eq!(auc, 0.75, epsilon = 1e-15);
        let first = roc.points.first().unwrap();
        let last = roc.points.last().unwrap();
        assert_eq!((first.x, first.y), (0.0, 0.0));
        assert_eq!((last.x, last.y), (1.0, 1.0));
        assert_eq!(roc_auc(&separated()).unwrap().1, 1.0);
        let anti = ClassificationDataset::from_records(&[(1.0, 0), (0.9, 0), (0.2, 1), (0.1, 1)])
            .unwrap();
        assert_eq!(roc_auc(&anti).unwrap().1, 0.0);
        let single = ClassificationDataset::from_records(&[(0.3, 1), (0.4, 1)]).unwrap();
        assert!(matches!(roc_auc(&single), Err(Error::Undefined { .. })));
    }

    #[test]
    fn gini_examples() {
        let (gains, gini) = gains_gini(&fix_c()).unwrap();
        assert_abs_diff_eq!(gini, 0.5, epsilon = 1e-15);
        assert!(gains.points.windows(2).all(|w| w[1].x > w[0].x));
        assert_eq!(gains_gini(&separated()).unwrap().1, 1.0);
        let single = ClassificationDataset::from_records(&[(0.3, 0)]).unwrap();
        assert!(gains_gini(&single).is_err());
    }

    #[test]
    fn lift_examples() {
        let ds = fix_c();
        let l = lift(&ds, 0.25).unwrap();
        assert_eq!((l.value, l.realized_rate), (2.0, 0.25));
        assert_eq!(lift(&ds, 0.5).unwrap().value, 1.0);
        assert_eq!(lift(&ds, 1.0).unwrap().value, 1.0);
        let snapped = lift(&ds, 0.3).unwrap();
        assert_eq!(snapped.realized_rate, 0.5);
        assert_eq!(lift(&ds, 0.0).unwrap_err(), Error::InvalidRate(0.0));
        assert!(lift(&ds, 1.5).is_err());
        assert_eq!(lift(&separated(), 1.0).unwrap().value, 1.0);
    }

    #[test]
    fn baseline_examples() {
        let p = ClassPriors { pi0: 0.5, pi1: 0.5 };
        assert_eq!(
            baseline_confusion(BaselineKind::Perfect, p).cells(),
            [[0.5, 0.0], [0.0, 0.5]]
        );
        assert_eq!(
            baseline_confusion(BaselineKind::Random, p).cells(),
            [[0.25, 0.25], [0.25, 0.25]]
        );
        assert_eq!(
            baseline_confusion(BaselineKind::Absolute, p).cells(),
            [[0.0, 0.0], [0.0, 0.0]]
        );
        for k in BaselineKind::ALL {
            assert_eq!(BaselineKind::parse(k.name()), Some(k));
        }
    }

    #[test]
    fn effect_examples() {
        let ds = fix_c();
        let cf = confusion_matrix(&ds, 0.5);
        let p = ds.priors();
        let e = effect_matrix(&cf, &baseline_confusion(BaselineKind::Random, p)).unwrap();
        assert_eq!(e.cells, Matrix2::ZERO);
        let e = effect_matrix(&cf, &baseline_confusion(BaselineKind::Perfect, p)).unwrap();
        assert_eq!(e.cells.cells(), [[-0.25, 0.25], [0.25, -0.25]]);
        let e = effect_matrix(&cf, &baseline_confusion(BaselineKind::Absolute, p)).unwrap();
        assert_eq!(e.cells, cf.0);
        assert!(!e.proper);
        let other = baseline_confusion(BaselineKind::Perfect, ClassPriors { pi0: 0.7, pi1: 0.3 });
        assert!(matches!(
            effect_matrix(&cf, &other),
            Err(Error::MismatchedPriors { .. })
        ));
    }

    #[test]
    fn profit_examples() {
        let ds = fix_c();
        let cf = confusion_matrix(&ds, 0.5);
        assert_eq!(profit(&cf, &cb(CB)), 1.0);
        assert_eq!(profit(&cf, &cb([[0.0; 2]; 2])), 0.0);
        let all_neg = baseline_confusion(BaselineKind::AllNegative, ds.priors());
        assert_eq!(profit(&all_neg, &cb(CB)), -2.5);
    }

    #[test]
    fn relative_profit_examples() {
        let ds = fix_c();
        let cf = confusion_matrix(&ds, 0.5);
        let perfect = baseline_confusion(BaselineKind::Perfect, ds.priors());
        assert_eq!(relative_profit(&cf, &perfect, &cb(CB)).unwrap(), -4.0);
        let zero = baseline_confusion(BaselineKind::Absolute, ds.priors());
        assert_eq!(relative_profit(&cf, &zero, &cb(CB)).unwrap(), profit(&cf, &cb(CB)));
        assert_eq!(relative_profit(&cf, &cf, &cb(CB)).unwrap(), 0.0);
    }

    #[test]
    fn max_profit_examples() {
        let ds = fix_c();
        let mp = max_profit(&ds, &cb(CB), BaselineKind::Absolute);
        assert_eq!(mp.value, 4.75);
        assert_eq!(mp.optimal_threshold, 0.2);
        assert_eq!(mp.positive_rate, 0.75);

        let zero = max_profit(&ds, &cb([[0.0; 2]; 2]), BaselineKind::Absolute);
        assert_eq!(zero.value, 0.0);
        assert_eq!(zero.optimal_threshold, ds.threshold_grid().sentinel());

        let sep = separated();
        let mp = max_profit(&sep, &cb([[1.0, -1.0], [-1.0, 1.0]]), BaselineKind::Absolute);
        assert_eq!(mp.value, 1.0);
        assert_eq!(mp.optimal_threshold, 0.2);
        assert_eq!(mp.positive_rate, 0.5);
    }
}
