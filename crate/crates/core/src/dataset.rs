//! Scored datasets, class priors, empirical score distributions and the
//! threshold grids that every sweep runs over.
//!
//! A threshold `phi` assigns scores `<= phi` to the negative (treatment) class
//! and scores `> phi` to the positive class, so that `F(phi) = P(score <= phi)`
//! is exactly the mass classified negative.

use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Randomized-trial partition of a causal dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sample {
    Treatment,
    Control,
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sample::Treatment => "treatment",
            Sample::Control => "control",
        })
    }
}

/// Prior class proportions `N_k / N` of one stratum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassPriors {
    pub pi0: f64,
    pub pi1: f64,
}

impl ClassPriors {
    pub fn from_counts(n0: usize, n1: usize) -> Result<Self> {
        let n = n0 + n1;
        if n == 0 {
            return Err(Error::EmptyDataset);
        }
        Ok(ClassPriors {
            pi0: n0 as f64 / n as f64,
            pi1: n1 as f64 / n as f64,
        })
    }

    /// Prior of `class` (0 or 1).
    pub fn get(&self, class: usize) -> f64 {
        match class {
            0 => self.pi0,
            _ => self.pi1,
        }
    }

    pub fn as_array(&self) -> [f64; 2] {
        [self.pi0, self.pi1]
    }
}

/// Right-continuous step CDF of a finite set of scores.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    support: Vec<f64>,
    /// `cum_counts[i]` = number of scores `<= support[i]`.
    cum_counts: Vec<usize>,
    n: usize,
}

impl EmpiricalDistribution {
    pub fn new(scores: &[f64]) -> Result<Self> {
        if scores.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut sorted = scores.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut support = Vec::new();
        let mut cum_counts = Vec::new();
        for (i, &s) in sorted.iter().enumerate() {
            if support.last() == Some(&s) {
                *cum_counts.last_mut().unwrap() = i + 1;
            } else {
                support.push(s);
                cum_counts.push(i + 1);
            }
        }
        Ok(EmpiricalDistribution {
            support,
            cum_counts,
            n: sorted.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Ascending distinct scores.
    pub fn support(&self) -> &[f64] {
        &self.support
    }

    /// Number of scores `<= x`.
    pub fn count_at_or_below(&self, x: f64) -> usize {
        match self.support.partition_point(|&s| s <= x) {
            0 => 0,
            idx => self.cum_counts[idx - 1],
        }
    }

    /// `F(x)`, the fraction of scores `<= x`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.count_at_or_below(x) as f64 / self.n as f64
    }

    /// `1 - F(x)`, computed from the count above `x`.
    pub fn survival(&self, x: f64) -> f64 {
        (self.n - self.count_at_or_below(x)) as f64 / self.n as f64
    }

    /// Probability mass at each support point.
    pub fn pmf(&self) -> Vec<f64> {
        let mut prev = 0;
        self.cum_counts
            .iter()
            .map(|&c| {
                let m = (c - prev) as f64 / self.n as f64;
                prev = c;
                m
            })
            .collect()
    }
}

/// Builds the ECDF of a list of scores.
pub fn ecdf(scores: &[f64]) -> Result<EmpiricalDistribution> {
    EmpiricalDistribution::new(scores)
}

/// One stratum of scored, labelled instances: a whole conventional dataset or
/// one sample of a causal dataset. Holds the priors and per-class ECDFs.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredSample {
    scores: Vec<f64>,
    outcomes: Vec<u8>,
    priors: ClassPriors,
    dists: [Option<EmpiricalDistribution>; 2],
}

impl ScoredSample {
    fn new(scores: Vec<f64>, outcomes: Vec<u8>) -> Result<Self> {
        debug_assert_eq!(scores.len(), outcomes.len());
        let mut by_class: [Vec<f64>; 2] = [Vec::new(), Vec::new()];
        for (&s, &y) in scores.iter().zip(&outcomes) {
            by_class[y as usize].push(s);
        }
        let priors = ClassPriors::from_counts(by_class[0].len(), by_class[1].len())?;
        let dists = by_class.map(|v| EmpiricalDistribution::new(&v).ok());
        Ok(ScoredSample {
            scores,
            outcomes,
            priors,
            dists,
        })
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn outcomes(&self) -> &[u8] {
        &self.outcomes
    }

    pub fn priors(&self) -> ClassPriors {
        self.priors
    }

    /// ECDF of the scores of `class`, `None` when the class is absent.
    pub fn distribution(&self, class: usize) -> Option<&EmpiricalDistribution> {
        self.dists[class].as_ref()
    }

    pub fn class_count(&self, class: usize) -> usize {
        self.dists[class].as_ref().map_or(0, |d| d.len())
    }

    pub fn has_class(&self, class: usize) -> bool {
        self.dists[class].is_some()
    }

    /// `pi_k F_k(phi)`; zero for an absent class.
    pub fn mass_at_or_below(&self, class: usize, phi: f64) -> f64 {
        self.dists[class]
            .as_ref()
            .map_or(0.0, |d| self.priors.get(class) * d.cdf(phi))
    }

    /// `pi_k (1 - F_k(phi))`; zero for an absent class.
    pub fn mass_above(&self, class: usize, phi: f64) -> f64 {
        self.dists[class]
            .as_ref()
            .map_or(0.0, |d| self.priors.get(class) * d.survival(phi))
    }

    /// Fraction of the stratum scored above `phi`.
    pub fn rate_above(&self, phi: f64) -> f64 {
        self.mass_above(0, phi) + self.mass_above(1, phi)
    }

    pub fn max_score(&self) -> f64 {
        self.scores.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Class priors of a stratum.
pub fn priors(stratum: &ScoredSample) -> ClassPriors {
    stratum.priors()
}

/// Ascending candidate thresholds: a sentinel strictly below the minimum score
/// followed by every distinct score.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdGrid {
    thresholds: Vec<f64>,
}

impl ThresholdGrid {
    /// Distance of the sentinel below the minimum score.
    pub const SENTINEL_OFFSET: f64 = 1.0;

    pub fn from_scores<'a>(scores: impl IntoIterator<Item = &'a f64>) -> Result<Self> {
        let mut distinct: Vec<f64> = scores.into_iter().copied().collect();
        if distinct.is_empty() {
            return Err(Error::EmptyDataset);
        }
        distinct.sort_by(f64::total_cmp);
        distinct.dedup();
        let mut thresholds = Vec::with_capacity(distinct.len() + 1);
        thresholds.push(distinct[0] - Self::SENTINEL_OFFSET);
        thresholds.extend(distinct);
        Ok(ThresholdGrid { thresholds })
    }

    /// The "everything positive" operating point.
    pub fn sentinel(&self) -> f64 {
        self.thresholds[0]
    }

    /// The largest score: nothing is classified positive here.
    pub fn max_threshold(&self) -> f64 {
        *self.thresholds.last().unwrap()
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn len(&self) -> usize {
        self.thresholds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thresholds.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = f64> + ExactSizeIterator + '_ {
        self.thresholds.iter().copied()
    }
}

/// Scored instances with binary outcomes; scores in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationDataset {
    sample: ScoredSample,
}

impl ClassificationDataset {
    pub const SCORE_RANGE: (f64, f64) = (0.0, 1.0);

    pub fn from_records(records: &[(f64, u8)]) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptyDataset);
        }
        for (i, &(score, outcome)) in records.iter().enumerate() {
            let line = i as u64 + 1;
            check_score(line, score, Self::SCORE_RANGE)?;
            check_binary(outcome, || Error::InvalidOutcome {
                line,
                value: outcome.to_string(),
            })?;
        }
        let (scores, outcomes) = records.iter().copied().unzip();
        Ok(ClassificationDataset {
            sample: ScoredSample::new(scores, outcomes)?,
        })
    }

    /// Builds a dataset from parallel arrays, copying them.
    pub fn from_arrays(scores: &[f64], outcomes: &[i64]) -> Result<Self> {
        if scores.len() != outcomes.len() {
            return Err(Error::LengthMismatch(format!(
                "{} scores vs {} outcomes",
                scores.len(),
                outcomes.len()
            )));
        }
        let records = scores
            .iter()
            .zip(outcomes)
            .enumerate()
            .map(|(i, (&s, &y))| {
                let y = to_binary(y).ok_or_else(|| Error::InvalidOutcome {
                    line: i as u64 + 1,
                    value: y.to_string(),
                })?;
                Ok((s, y))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_records(&records)
    }

    pub fn n(&self) -> usize {
        self.sample.len()
    }

    pub fn sample(&self) -> &ScoredSample {
        &self.sample
    }

    pub fn priors(&self) -> ClassPriors {
        self.sample.priors()
    }

    pub fn scores(&self) -> &[f64] {
        self.sample.scores()
    }

    pub fn outcomes(&self) -> &[u8] {
        self.sample.outcomes()
    }

    pub fn threshold_grid(&self) -> ThresholdGrid {
        ThresholdGrid::from_scores(self.sample.scores()).expect("dataset is nonempty")
    }

    /// Lifts the dataset to a causal dataset in which every instance belongs
    /// to the treatment sample (a single applicable treatment).
    pub fn to_single_treatment(&self) -> CausalDataset {
        CausalDataset {
            treatment: Some(self.sample.clone()),
            control: None,
        }
    }
}

/// Randomized-trial data scored by estimated treatment effect in `[-1, 1]`.
///
/// An empty control sample is accepted and models a single applicable
/// treatment: every control prior is then zero. An empty treatment sample is
/// rejected by every metric.
#[derive(Debug, Clone, PartialEq)]
pub struct CausalDataset {
    treatment: Option<ScoredSample>,
    control: Option<ScoredSample>,
}

impl CausalDataset {
    pub const SCORE_RANGE: (f64, f64) = (-1.0, 1.0);

    pub fn from_records(records: &[(f64, u8, u8)]) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut parts: [(Vec<f64>, Vec<u8>); 2] = Default::default();
        for (i, &(score, outcome, treatment)) in records.iter().enumerate() {
            let line = i as u64 + 1;
            check_score(line, score, Self::SCORE_RANGE)?;
            check_binary(outcome, || Error::InvalidOutcome {
                line,
                value: outcome.to_string(),
            })?;
            check_binary(treatment, || Error::InvalidTreatment {
                line,
                value: treatment.to_string(),
            })?;
            let part = &mut parts[treatment as usize];
            part.0.push(score);
            part.1.push(outcome);
        }
        let [control, treatment] = parts.map(|(s, y)| {
            if s.is_empty() {
                None
            } else {
                Some(ScoredSample::new(s, y).expect("nonempty"))
            }
        });
        for (kind, part) in [(Sample::Treatment, &treatment), (Sample::Control, &control)] {
            if part.is_none() {
                log::warn!("{kind} sample is empty");
            }
        }
        Ok(CausalDataset { treatment, control })
    }

    pub fn from_arrays(scores: &[f64], outcomes: &[i64], treatments: &[i64]) -> Result<Self> {
        if scores.len() != outcomes.len() || scores.len() != treatments.len() {
            return Err(Error::LengthMismatch(format!(
                "{} scores, {} outcomes, {} treatments",
                scores.len(),
                outcomes.len(),
                treatments.len()
            )));
        }
        let records = (0..scores.len())
            .map(|i| {
                let line = i as u64 + 1;
                let y = to_binary(outcomes[i]).ok_or_else(|| Error::InvalidOutcome {
                    line,
                    value: outcomes[i].to_string(),
                })?;
                let w = to_binary(treatments[i]).ok_or_else(|| Error::InvalidTreatment {
                    line,
                    value: treatments[i].to_string(),
                })?;
                Ok((scores[i], y, w))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_records(&records)
    }

    pub fn n_treat(&self) -> usize {
        self.treatment.as_ref().map_or(0, ScoredSample::len)
    }

    pub fn n_control(&self) -> usize {
        self.control.as_ref().map_or(0, ScoredSample::len)
    }

    pub fn n(&self) -> usize {
        self.n_treat() + self.n_control()
    }

    /// The requested sample, or an error when it is empty.
    pub fn sample(&self, which: Sample) -> Result<&ScoredSample> {
        match which {
            Sample::Treatment => self.treatment.as_ref(),
            Sample::Control => self.control.as_ref(),
        }
        .ok_or(Error::EmptySample(which))
    }

    pub fn treatment(&self) -> Result<&ScoredSample> {
        self.sample(Sample::Treatment)
    }

    /// The control sample; `None` in the single-treatment regime.
    pub fn control(&self) -> Option<&ScoredSample> {
        self.control.as_ref()
    }

    /// True when there is no control sample, i.e. only one treatment applies.
    pub fn is_single_treatment(&self) -> bool {
        self.control.is_none()
    }

    /// Pooled grid over the scores of both samples.
    pub fn threshold_grid(&self) -> Result<ThresholdGrid> {
        let t = self.treatment.iter().flat_map(|s| s.scores());
        let c = self.control.iter().flat_map(|s| s.scores());
        ThresholdGrid::from_scores(t.chain(c))
    }

    /// Priors of a sample; all zero for an absent control sample.
    pub fn priors(&self, which: Sample) -> Result<ClassPriors> {
        match (which, &self.control) {
            (Sample::Control, None) => Ok(ClassPriors { pi0: 0.0, pi1: 0.0 }),
            _ => self.sample(which).map(ScoredSample::priors),
        }
    }

    /// `pi_k^S (1 - F_k^S(phi))`, zero for an absent control sample.
    pub fn mass_above(&self, which: Sample, class: usize, phi: f64) -> Result<f64> {
        match (which, &self.control) {
            (Sample::Control, None) => Ok(0.0),
            _ => Ok(self.sample(which)?.mass_above(class, phi)),
        }
    }

    /// `pi_k^S F_k^S(phi)`, zero for an absent control sample.
    pub fn mass_at_or_below(&self, which: Sample, class: usize, phi: f64) -> Result<f64> {
        match (which, &self.control) {
            (Sample::Control, None) => Ok(0.0),
            _ => Ok(self.sample(which)?.mass_at_or_below(class, phi)),
        }
    }

    /// Human-readable notes about empty samples.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.treatment.is_none() {
            out.push("treatment sample is empty; causal metrics are unavailable".to_owned());
        }
        if self.control.is_none() {
            out.push(
                "control sample is empty; evaluating as a single-treatment (conventional) problem"
                    .to_owned(),
            );
        }
        out
    }
}

fn check_score(line: u64, score: f64, (min, max): (f64, f64)) -> Result<()> {
    if score.is_finite() && (min..=max).contains(&score) {
        Ok(())
    } else {
        Err(Error::ScoreOutOfRange {
            line,
            score,
            min,
            max,
        })
    }
}

fn check_binary(v: u8, err: impl FnOnce() -> Error) -> Result<()> {
    if v <= 1 {
        Ok(())
    } else {
        Err(err())
    }
}

fn to_binary(v: i64) -> Option<u8> {
    match v {
        0 => Some(0),
        1 => Some(1),
        _ => None,
    }
}

const CLASS_HEADER: [&str; 2] = ["score", "outcome"];
const CAUSAL_HEADER: [&str; 3] = ["score", "outcome", "treatment"];

/// Parses a `score,outcome` CSV.
pub fn load_classification(source: impl Read) -> Result<ClassificationDataset> {
    let rows = read_rows(source, &CLASS_HEADER)?;
    let records = rows
        .iter()
        .map(|(line, fields)| {
            let score = parse_score(*line, &fields[0], ClassificationDataset::SCORE_RANGE)?;
            let outcome = parse_binary(&fields[1]).ok_or_else(|| Error::InvalidOutcome {
                line: *line,
                value: fields[1].clone(),
            })?;
            Ok((score, outcome))
        })
        .collect::<Result<Vec<_>>>()?;
    ClassificationDataset::from_records(&records)
}

/// Parses a `score,outcome,treatment` CSV.
pub fn load_causal(source: impl Read) -> Result<CausalDataset> {
    let rows = read_rows(source, &CAUSAL_HEADER)?;
    let records = rows
        .iter()
        .map(|(line, fields)| {
            let score = parse_score(*line, &fields[0], CausalDataset::SCORE_RANGE)?;
            let outcome = parse_binary(&fields[1]).ok_or_else(|| Error::InvalidOutcome {
                line: *line,
                value: fields[1].clone(),
            })?;
            let treatment = parse_binary(&fields[2]).ok_or_else(|| Error::InvalidTreatment {
                line: *line,
                value: fields[2].clone(),
            })?;
            Ok((score, outcome, treatment))
        })
        .collect::<Result<Vec<_>>>()?;
    CausalDataset::from_records(&records)
}

fn parse_score(line: u64, field: &str, (min, max): (f64, f64)) -> Result<f64> {
    let score: f64 = field.parse().map_err(|_| Error::Malformed {
        line,
        message: format!("score `{field}` is not a number"),
    })?;
    check_score(line, score, (min, max))?;
    Ok(score)
}

fn parse_binary(field: &str) -> Option<u8> {
    match field {
        "0" => Some(0),
        "1" => Some(1),
        _ => None,
    }
}

type Row = (u64, Vec<String>);

fn read_rows(source: impl Read, expected: &[&'static str]) -> Result<Vec<Row>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let mut records = reader.records();
    let header = match records.next() {
        None => return Err(Error::EmptyDataset),
        Some(r) => r.map_err(csv_error)?,
    };
    let found: Vec<&str> = header.iter().collect();
    for col in expected {
        if !found.contains(col) {
            return Err(Error::MissingColumn(col));
        }
    }
    if found != expected {
        return Err(Error::Header {
            expected: expected.join(","),
            found: found.join(","),
        });
    }
    let mut rows = Vec::new();
    for record in records {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != expected.len() {
            return Err(Error::Malformed {
                line,
                message: format!("expected {} fields, found {}", expected.len(), record.len()),
            });
        }
        rows.push((line, record.iter().map(str::to_owned).collect()));
    }
    if rows.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(rows)
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::Malformed {
        line,
        message: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const FIX_C: &str = "score,outcome\n0.9,1\n0.8,0\n0.4,1\n0.2,0";
    pub(crate) const FIX_U: &str = "score,outcome,treatment\n0.9,1,1\n0.6,1,1\n0.2,0,1\n0.5,0,0\n0.3,1,0\n-0.1,0,0";

    #[test]
    fn loads_fix_c_in_order() {
        let ds = load_classification(FIX_C.as_bytes()).unwrap();
        assert_eq!(ds.n(), 4);
        assert_eq!(ds.scores(), &[0.9, 0.8, 0.4, 0.2]);
        assert_eq!(ds.outcomes(), &[1, 0, 1, 0]);
    }

    #[test]
    fn rejects_out_of_range_score_with_line() {
        let err = load_classification("score,outcome\n1.2,1".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::ScoreOutOfRange { line: 2, .. }), "{err}");
    }

    #[test]
    fn rejects_empty() {
        assert_eq!(
            load_classification("score,outcome\n".as_bytes()).unwrap_err(),
            Error::EmptyDataset
        );
        assert_eq!(load_classification("".as_bytes()).unwrap_err(), Error::EmptyDataset);
    }

    #[test]
    fn rejects_malformed_rows() {
        let err = load_classification("score,outcome\n0.5,1\nabc,0".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 3, .. }), "{err}");
        let err = load_classification("score,outcome\n0.5,1,0".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 2, .. }), "{err}");
        let err = load_classification("score,outcome\n0.5,2".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::InvalidOutcome { line: 2, .. }), "{err}");
        let err = load_classification("score,outcome\n0.5,1.0".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::InvalidOutcome { line: 2, .. }), "{err}");
    }

    #[test]
    fn strict_header() {
        let err = load_classification(FIX_U.as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Header { .. }), "{err}");
        let err = load_causal(FIX_C.as_bytes()).unwrap_err();
        assert_eq!(err, Error::MissingColumn("treatment"));
        assert_eq!(err.to_string(), "missing column: treatment");
        let err = load_classification("outcome,score\n1,0.5".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Header { .. }), "{err}");
    }

    #[test]
    fn loads_fix_u() {
        let ds = load_causal(FIX_U.as_bytes()).unwrap();
        assert_eq!(ds.n_treat(), 3);
        assert_eq!(ds.n_control(), 3);
        assert_eq!(ds.treatment().unwrap().scores(), &[0.9, 0.6, 0.2]);
        assert_eq!(ds.control().unwrap().scores(), &[0.5, 0.3, -0.1]);
    }

    #[test]
    fn causal_all_treatment_is_valid() {
        let ds = load_causal("score,outcome,treatment\n0.1,1,1\n0.2,0,1".as_bytes()).unwrap();
        assert_eq!(ds.n_control(), 0);
        assert!(ds.is_single_treatment());
        assert_eq!(ds.sample(Sample::Control).unwrap_err(), Error::EmptySample(Sample::Control));
    }

    #[test]
    fn rejects_bad_treatment() {
        let err = load_causal("score,outcome,treatment\n0.1,1,1\n0.2,0,2".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::InvalidTreatment { line: 3, .. }), "{err}");
    }

    #[test]
    fn priors_of_fixtures() {
        let c = load_classification(FIX_C.as_bytes()).unwrap();
        assert_eq!(c.priors(), ClassPriors { pi0: 0.5, pi1: 0.5 });
        let u = load_causal(FIX_U.as_bytes()).unwrap();
        let t = priors(u.treatment().unwrap());
        assert_eq!((t.pi0, t.pi1), (1.0 / 3.0, 2.0 / 3.0));
        let c = priors(u.control().unwrap());
        assert_eq!((c.pi0, c.pi1), (2.0 / 3.0, 1.0 / 3.0));
        assert_eq!(ClassPriors::from_counts(0, 0).unwrap_err(), Error::EmptyDataset);
    }

    #[test]
    fn ecdf_examples() {
        let pos = ecdf(&[0.9, 0.4]).unwrap();
        assert_eq!(pos.cdf(0.5), 0.5);
        let treated_pos = ecdf(&[0.9, 0.6]).unwrap();
        assert_eq!(treated_pos.cdf(0.4), 0.0);
        let single = ecdf(&[0.3]).unwrap();
        assert_eq!(single.cdf(0.3), 1.0);
        assert_eq!(single.cdf(0.29), 0.0);
        assert_eq!(ecdf(&[]).unwrap_err(), Error::EmptyDataset);
        let dup = ecdf(&[0.2, 0.2, 0.7]).unwrap();
        assert_eq!(dup.support(), &[0.2, 0.7]);
        assert_eq!(dup.pmf(), vec![2.0 / 3.0, 1.0 / 3.0]);
    }

    #[test]
    fn threshold_grids() {
        let c = load_classification(FIX_C.as_bytes()).unwrap();
        let g = c.threshold_grid();
        assert_eq!(&g.thresholds()[1..], &[0.2, 0.4, 0.8, 0.9]);
        assert!(g.sentinel() < 0.2);

        let u = load_causal(FIX_U.as_bytes()).unwrap();
        let g = u.threshold_grid().unwrap();
        assert_eq!(&g.thresholds()[1..], &[-0.1, 0.2, 0.3, 0.5, 0.6, 0.9]);
        assert!(g.sentinel() < -0.1);

        let eq = ClassificationDataset::from_records(&[(0.5, 0), (0.5, 1)]).unwrap();
        let g = eq.threshold_grid();
        assert_eq!(g.len(), 2);
        assert_eq!(g.thresholds()[1], 0.5);
    }

    #[test]
    fn arrays_must_match() {
        let err = ClassificationDataset::from_arrays(&[0.1, 0.2], &[1]).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch(_)));
        let err = CausalDataset::from_arrays(&[0.1], &[1], &[3]).unwrap_err();
        assert!(matches!(err, Error::InvalidTreatment { line: 1, .. }));
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn records() -> impl Strategy<Value = Vec<(f64, u8)>> {
        prop::collection::vec(((0u32..=20).prop_map(|k| k as f64 / 20.0), 0u8..=1), 1..60)
    }

    proptest! {
        #[test]
        fn ecdf_is_monotone_and_reaches_one(scores in prop::collection::vec(-1.0f64..=1.0, 1..80)) {
            let d = ecdf(&scores).unwrap();
            let mut prev = 0.0;
            for &x in d.support() {
                let f = d.cdf(x);
                prop_assert!(f >= prev);
                prev = f;
            }
            let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            prop_assert_eq!(d.cdf(max), 1.0);
            prop_assert_eq!(d.cdf(d.support()[0] - 1e-9), 0.0);
            prop_assert!((d.pmf().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn priors_sum_to_one(n0 in 0usize..5000, n1 in 0usize..5000) {
            prop_assume!(n0 + n1 > 0);
            let p = ClassPriors::from_counts(n0, n1).unwrap();
            prop_assert_eq!(p.pi0 + p.pi1, 1.0);
        }

        #[test]
        fn grid_sweep_positive_counts_nonincreasing(recs in records()) {
            let ds = ClassificationDataset::from_records(&recs).unwrap();
            let grid = ds.threshold_grid();
            let counts: Vec<usize> = grid
                .iter()
                .map(|phi| ds.scores().iter().filter(|&&s| s > phi).count())
                .collect();
            prop_assert_eq!(counts[0], ds.n());
            prop_assert_eq!(*counts.last().unwrap(), 0);
            for w in counts.windows(2) {
                prop_assert!(w[1] < w[0]);
            }
        }
    }
}
