//! Evaluation of conventional and causal (uplift) binary classifiers.
//!
//! The crate is organised around 2x2 proportion matrices. A conventional
//! classifier is summarised by its [`ConfusionMatrix`] at a threshold; a causal
//! classifier, scored by estimated individual treatment effect, by the
//! [`SampleCausalConfusionMatrix`] of each randomized sample and the mixed
//! [`CausalConfusionMatrix`]. Subtracting a baseline yields an effect matrix,
//! and the Hadamard product with a monetary matrix yields a profit.
//!
//! All empirical class-conditional distributions are step ECDFs, so every
//! integral becomes a finite sum over a [`ThresholdGrid`]. Scores at or below
//! a threshold are assigned to the negative (treatment) class.
//!
//! Modules:
//! - [`dataset`]: CSV ingestion, priors, ECDFs and threshold grids.
//! - [`class_eval`]: confusion matrix, AUC, Gini, lift, baselines, profit, MP.
//! - [`causal_eval`]: sample/causal confusion, Qini, liftup, CROC, causal profit.
//! - [`cost_model`]: monetary matrices, parameter distributions, EMP and EMCP.
//! - [`applications`]: customer retention and response profit instantiations.

pub mod applications;
pub mod causal_eval;
pub mod class_eval;
pub mod cost_model;
pub mod curve;
pub mod dataset;
mod error;
#[cfg(test)]
mod fixtures;
pub mod matrix;

pub use applications::{
    ResponseCampaignStats, ResponseParams, RetentionCampaignStats, RetentionParams,
};
pub use causal_eval::{
    CausalConfusionMatrix, CausalEffectMatrix, MaxCausalProfitResult, SampleCausalConfusionMatrix,
};
pub use class_eval::{BaselineKind, ConfusionMatrix, EffectMatrix, MaxProfitResult, ScalarMetrics};
pub use cost_model::{
    CausalCostBenefitMatrix, CausalDistribution, ConventionalDistribution, CostBenefitDistribution,
    CostBenefitMatrix, DistributionSpec, EmpResult, OutcomeBenefitMatrix, TreatmentCostMatrix,
};
pub use curve::{CurveKind, CurvePoint, CurveSeries, RateValue};
pub use dataset::{
    CausalDataset, ClassPriors, ClassificationDataset, EmpiricalDistribution, Sample,
    ScoredSample, ThresholdGrid,
};
pub use error::{Error, Result};
pub use matrix::Matrix2;

/// Absolute tolerance used for exact algebraic identities.
pub const IDENTITY_TOL: f64 = 1e-12;
