//! Customer retention and customer response campaigns, expressed both as
//! closed-form campaign profits and as outcome-benefit/treatment-cost
//! matrices evaluated by the generic causal profit engine.
//!
//! For retention, outcome 1 means the customer was retained (did not churn).
//! For response, outcome 1 means the customer purchased.

use serde::{Deserialize, Serialize};

use crate::causal_eval::{causal_profit, max_causal_profit, MaxCausalProfitResult};
use crate::cost_model::{
    causal_cost_benefit, CausalCostBenefitMatrix, OutcomeBenefitMatrix, TreatmentCostMatrix,
};
use crate::dataset::{CausalDataset, Sample};
use crate::{Error, Result};

/// Agreement required between the engine and closed-form routes.
pub const ROUTE_TOL: f64 = 1e-9;

fn check_nonnegative(fields: &[(&str, f64)]) -> Result<()> {
    for &(name, v) in fields {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::InvalidParameter(format!("{name} = {v} must be finite and >= 0")));
        }
    }
    Ok(())
}

fn check_unit(fields: &[(&str, f64)]) -> Result<()> {
    for &(name, v) in fields {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidParameter(format!("{name} = {v} outside [0, 1]")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRetention", deny_unknown_fields)]
pub struct RetentionParams {
    pub clv: f64,
    pub contact_cost: f64,
    pub incentive_cost: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRetention {
    clv: f64,
    contact_cost: f64,
    incentive_cost: f64,
}

impl TryFrom<RawRetention> for RetentionParams {
    type Error = Error;
    fn try_from(r: RawRetention) -> Result<Self> {
        RetentionParams::new(r.clv, r.contact_cost, r.incentive_cost)
    }
}

impl RetentionParams {
    pub fn new(clv: f64, contact_cost: f64, incentive_cost: f64) -> Result<Self> {
        check_nonnegative(&[
            ("clv", clv),
            ("contact_cost", contact_cost),
            ("incentive_cost", incentive_cost),
        ])?;
        Ok(RetentionParams { clv, contact_cost, incentive_cost })
    }
}

/// Targeted proportion and churn rates within the targeted segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RetentionCampaignStats {
    pub alpha: f64,
    pub beta_c: f64,
    pub beta_t: f64,
}

impl RetentionCampaignStats {
    pub fn new(alpha: f64, beta_c: f64, beta_t: f64) -> Result<Self> {
        check_unit(&[("alpha", alpha), ("beta_c", beta_c), ("beta_t", beta_t)])?;
        Ok(RetentionCampaignStats { alpha, beta_c, beta_t })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawResponse", deny_unknown_fields)]
pub struct ResponseParams {
    pub delta_t: f64,
    pub delta_c: f64,
    pub contact_cost: f64,
    /// Average incentive cost per treated responder.
    pub incentive_cost: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawResponse {
    delta_t: f64,
    delta_c: f64,
    contact_cost: f64,
    incentive_cost: f64,
}

impl TryFrom<RawResponse> for ResponseParams {
    type Error = Error;
    fn try_from(r: RawResponse) -> Result<Self> {
        ResponseParams::new(r.delta_t, r.delta_c, r.contact_cost, r.incentive_cost)
    }
}

impl ResponseParams {
    pub fn new(delta_t: f64, delta_c: f64, contact_cost: f64, incentive_cost: f64) -> Result<Self> {
        check_nonnegative(&[
            ("delta_t", delta_t),
            ("delta_c", delta_c),
            ("contact_cost", contact_cost),
            ("incentive_cost", incentive_cost),
        ])?;
        Ok(ResponseParams { delta_t, delta_c, contact_cost, incentive_cost })
    }
}

/// Targeted proportion and response rates within the targeted segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseCampaignStats {
    pub tau: f64,
    pub pi_tau: f64,
    pub pi_zeta: f64,
}

impl ResponseCampaignStats {
    pub fn new(tau: f64, pi_tau: f64, pi_zeta: f64) -> Result<Self> {
        check_unit(&[("tau", tau), ("pi_tau", pi_tau), ("pi_zeta", pi_zeta)])?;
        Ok(ResponseCampaignStats { tau, pi_tau, pi_zeta })
    }
}

/// Profit of one campaign at one threshold by both routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfitRoutes {
    pub engine: f64,
    /// `None` when nobody in the treatment sample is targeted but control
    /// mass remains above the threshold: the campaign statistics are then
    /// not defined.
    pub direct: Option<f64>,
}

pub fn retention_matrices(params: &RetentionParams) -> (OutcomeBenefitMatrix, TreatmentCostMatrix) {
    let RetentionParams { clv, contact_cost: cc, incentive_cost: ci } = *params;
    (
        OutcomeBenefitMatrix::new([[0.0, 0.0], [clv, clv]]).expect("validated params"),
        TreatmentCostMatrix::new([[0.0, cc], [0.0, cc + ci]]).expect("validated params"),
    )
}

pub fn retention_cost_benefit(params: &RetentionParams) -> CausalCostBenefitMatrix {
    let (ob, tc) = retention_matrices(params);
    causal_cost_benefit(&ob, &tc)
}

/// Retention campaign profit per instance.
pub fn retention_profit_direct(stats: &RetentionCampaignStats, params: &RetentionParams) -> f64 {
    let RetentionCampaignStats { alpha, beta_c, beta_t } = *stats;
    let RetentionParams { clv, contact_cost: cc, incentive_cost: ci } = *params;
    alpha * ((beta_c - beta_t) * (clv - cc - ci) - (1.0 - beta_c) * (cc + ci) - beta_t * cc)
}

pub fn response_matrices(params: &ResponseParams) -> (OutcomeBenefitMatrix, TreatmentCostMatrix) {
    let ResponseParams { delta_t, delta_c, contact_cost: cc, incentive_cost: ci } = *params;
    (
        OutcomeBenefitMatrix::new([[0.0, 0.0], [delta_c, delta_t]]).expect("validated params"),
        TreatmentCostMatrix::new([[0.0, cc], [0.0, cc + ci]]).expect("validated params"),
    )
}

pub fn response_cost_benefit(params: &ResponseParams) -> CausalCostBenefitMatrix {
    let (ob, tc) = response_matrices(params);
    causal_cost_benefit(&ob, &tc)
}

/// Response campaign profit per instance.
pub fn response_profit_direct(stats: &ResponseCampaignStats, params: &ResponseParams) -> f64 {
    let ResponseCampaignStats { tau, pi_tau, pi_zeta } = *stats;
    let ResponseParams { delta_t, delta_c, contact_cost: cc, incentive_cost: ci } = *params;
    tau * pi_tau * delta_t - tau * pi_zeta * delta_c - tau * cc - tau * pi_tau * ci
}

/// `(a, b, c)`: treated class-0 mass, control class-1 mass and treated
/// class-1 mass above `threshold`.
fn targeted_masses(dataset: &CausalDataset, threshold: f64) -> Result<(f64, f64, f64)> {
    let t = dataset.sample(Sample::Treatment)?;
    let c = dataset.sample(Sample::Control)?;
    Ok((t.mass_above(0, threshold), c.mass_above(1, threshold), t.mass_above(1, threshold)))
}

/// Campaign statistics realized by targeting above `threshold`.
///
/// `alpha` is the targeted share of the treatment sample and `beta_t` its
/// churn rate. `beta_c` is chosen so that `alpha * (1 - beta_c)` is the
/// control retained mass above the threshold; it can leave `[0, 1]` when the
/// samples differ, so the result is not range checked. `None` when the
/// statistics are undefined (see [`ProfitRoutes::direct`]).
pub fn realized_retention_stats(
    dataset: &CausalDataset,
    threshold: f64,
) -> Result<Option<RetentionCampaignStats>> {
    let (a, b, c) = targeted_masses(dataset, threshold)?;
    let alpha = a + c;
    if alpha == 0.0 {
        return Ok((b == 0.0).then_some(RetentionCampaignStats { alpha, beta_c: 1.0, beta_t: 0.0 }));
    }
    Ok(Some(RetentionCampaignStats { alpha, beta_c: 1.0 - b / alpha, beta_t: a / alpha }))
}

/// Response analogue of [`realized_retention_stats`]; `pi_zeta` is the
/// control responder mass above the threshold per targeted instance.
pub fn realized_response_stats(
    dataset: &CausalDataset,
    threshold: f64,
) -> Result<Option<ResponseCampaignStats>> {
    let (a, b, c) = targeted_masses(dataset, threshold)?;
    let tau = a + c;
    if tau == 0.0 {
        return Ok((b == 0.0).then_some(ResponseCampaignStats { tau, pi_tau: 0.0, pi_zeta: 0.0 }));
    }
    Ok(Some(ResponseCampaignStats { tau, pi_tau: c / tau, pi_zeta: b / tau }))
}

fn check_routes(what: &'static str, engine: f64, direct: Option<f64>, scale: f64) -> Result<ProfitRoutes> {
    if let Some(d) = direct {
        if (engine - d).abs() > ROUTE_TOL * (1.0 + scale) {
            return Err(Error::Inconsistency { what, lhs: engine, rhs: d });
        }
    }
    Ok(ProfitRoutes { engine, direct })
}

pub fn retention_profit_routes(
    dataset: &CausalDataset,
    threshold: f64,
    params: &RetentionParams,
) -> Result<ProfitRoutes> {
    let ccb = retention_cost_benefit(params);
    let stats = realized_retention_stats(dataset, threshold)?;
    let engine = causal_profit(dataset, threshold, &ccb)?;
    let direct = stats.map(|s| retention_profit_direct(&s, params));
    check_routes("retention profit routes", engine, direct, ccb.matrix().abs_sum())
}

/// Retention profit per instance at `threshold` from the causal profit
/// engine, cross-checked against the closed form.
pub fn retention_profit_via_engine(
    dataset: &CausalDataset,
    threshold: f64,
    params: &RetentionParams,
) -> Result<f64> {
    Ok(retention_profit_routes(dataset, threshold, params)?.engine)
}

pub fn response_profit_routes(
    dataset: &CausalDataset,
    threshold: f64,
    params: &ResponseParams,
) -> Result<ProfitRoutes> {
    let ccb = response_cost_benefit(params);
    let stats = realized_response_stats(dataset, threshold)?;
    let engine = causal_profit(dataset, threshold, &ccb)?;
    let direct = stats.map(|s| response_profit_direct(&s, params));
    check_routes("response profit routes", engine, direct, ccb.matrix().abs_sum())
}

pub fn response_profit_via_engine(
    dataset: &CausalDataset,
    threshold: f64,
    params: &ResponseParams,
) -> Result<f64> {
    Ok(response_profit_routes(dataset, threshold, params)?.engine)
}

/// Maximum profit uplift of a retention campaign.
pub fn maximum_profit_uplift(
    dataset: &CausalDataset,
    params: &RetentionParams,
) -> Result<MaxCausalProfitResult> {
    dataset.sample(Sample::Control)?;
    max_causal_profit(dataset, &retention_cost_benefit(params))
}

pub fn maximum_response_profit(
    dataset: &CausalDataset,
    params: &ResponseParams,
) -> Result<MaxCausalProfitResult> {
    dataset.sample(Sample::Control)?;
    max_causal_profit(dataset, &response_cost_benefit(params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causal_eval::CausalSweep;
    use crate::fixtures::fix_u;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn retention_matrices_examples() {
        let (ob, tc) = retention_matrices(&RetentionParams::new(200.0, 1.0, 10.0).unwrap());
        assert_eq!(ob.cells(), [[0.0, 0.0], [200.0, 200.0]]);
        assert_eq!(tc.cells(), [[0.0, 1.0], [0.0, 11.0]]);
        let (ob, tc) = retention_matrices(&RetentionParams::new(0.0, 0.0, 0.0).unwrap());
        assert_eq!((ob.cells(), tc.cells()), ([[0.0; 2]; 2], [[0.0; 2]; 2]));
        let ccb = retention_cost_benefit(&RetentionParams::new(0.0, 1.0, 0.0).unwrap());
        assert_eq!(ccb.cells(), [[0.0, -1.0], [0.0, -1.0]]);
        let ccb = retention_cost_benefit(&RetentionParams::new(200.0, 1.0, 10.0).unwrap());
        assert_eq!(ccb.cells()[1][1], 189.0);
        assert_eq!(ccb.cells()[0][1], -1.0);
        assert!(RetentionParams::new(-1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn retention_direct_examples() {
        let p = RetentionParams::new(200.0, 1.0, 10.0).unwrap();
        let s = RetentionCampaignStats::new(0.3, 0.10, 0.06).unwrap();
        assert_abs_diff_eq!(retention_profit_direct(&s, &p), -0.72, epsilon = 1e-12);
        let s0 = RetentionCampaignStats::new(0.0, 0.10, 0.06).unwrap();
        assert_eq!(retention_profit_direct(&s0, &p), 0.0);
        let free = RetentionParams::new(200.0, 0.0, 0.0).unwrap();
        let flat = RetentionCampaignStats::new(0.4, 0.2, 0.2).unwrap();
        assert_eq!(retention_profit_direct(&flat, &free), 0.0);
        assert!(RetentionCampaignStats::new(1.2, 0.0, 0.0).is_err());
    }

    #[test]
    fn response_examples() {
        let p = ResponseParams::new(100.0, 90.0, 0.5, 20.0).unwrap();
        let (ob, tc) = response_matrices(&p);
        assert_eq!(ob.cells(), [[0.0, 0.0], [90.0, 100.0]]);
        assert_eq!(tc.cells(), [[0.0, 0.5], [0.0, 20.5]]);
        let s = ResponseCampaignStats::new(0.2, 0.05, 0.03).unwrap();
        assert_abs_diff_eq!(response_profit_direct(&s, &p), 0.16, epsilon = 1e-12);
        let s0 = ResponseCampaignStats::new(0.0, 0.05, 0.03).unwrap();
        assert_eq!(response_profit_direct(&s0, &p), 0.0);
        let same = ResponseParams::new(50.0, 50.0, 0.0, 0.0).unwrap();
        let flat = ResponseCampaignStats::new(0.5, 0.1, 0.1).unwrap();
        assert_eq!(response_profit_direct(&flat, &same), 0.0);
    }

    #[test]
    fn routes_agree_on_fix_u() {
        let u = fix_u();
        let rp = RetentionParams::new(200.0, 1.0, 10.0).unwrap();
        let sp = ResponseParams::new(100.0, 90.0, 0.5, 20.0).unwrap();
        for phi in u.threshold_grid().unwrap().iter() {
            let r = retention_profit_routes(&u, phi, &rp).unwrap();
            if let Some(d) = r.direct {
                assert_abs_diff_eq!(r.engine, d, epsilon = 1e-9);
            }
            let s = response_profit_routes(&u, phi, &sp).unwrap();
            if let Some(d) = s.direct {
                assert_abs_diff_eq!(s.engine, d, epsilon = 1e-9);
            }
        }
        let top = 0.9;
        assert_eq!(retention_profit_via_engine(&u, top, &rp).unwrap(), 0.0);
        assert_eq!(response_profit_via_engine(&u, top, &sp).unwrap(), 0.0);
        let zero = RetentionParams::new(0.0, 0.0, 0.0).unwrap();
        assert_eq!(retention_profit_via_engine(&u, 0.25, &zero).unwrap(), 0.0);
    }

    #[test]
    fn undefined_stats_when_only_control_is_targeted() {
        // treatment scores all at or below 0.2, a control positive at 0.5
        let u = fix_u();
        let phi = 0.4;
        assert!(realized_retention_stats(&u, phi).unwrap().is_some());
        let ds = CausalDataset::from_records(&[(0.1, 1, 1), (0.0, 0, 1), (0.5, 1, 0), (0.2, 0, 0)]).unwrap();
        assert_eq!(realized_retention_stats(&ds, 0.3).unwrap(), None);
        assert_eq!(realized_response_stats(&ds, 0.3).unwrap(), None);
        let r = retention_profit_routes(&ds, 0.3, &RetentionParams::new(10.0, 1.0, 1.0).unwrap()).unwrap();
        assert_eq!(r.direct, None);
        assert_abs_diff_eq!(r.engine, -5.0, epsilon = 1e-12);
    }

    #[test]
    fn mpu_is_max_causal_profit() {
        let u = fix_u();
        let p = RetentionParams::new(200.0, 1.0, 10.0).unwrap();
        let mpu = maximum_profit_uplift(&u, &p).unwrap();
        let best = u
            .threshold_grid()
            .unwrap()
            .iter()
            .map(|phi| retention_profit_via_engine(&u, phi, &p).unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        assert_abs_diff_eq!(mpu.value, best, epsilon = 1e-12);
        let direct = CausalSweep::new(&u).unwrap().maximize(&retention_cost_benefit(&p));
        assert_eq!(mpu, direct);
    }

    #[test]
    fn params_parse_from_json() {
        let p: RetentionParams =
            serde_json::from_str(r#"{"clv": 200, "contact_cost": 1, "incentive_cost": 10}"#).unwrap();
        assert_eq!(p, RetentionParams::new(200.0, 1.0, 10.0).unwrap());
        assert!(serde_json::from_str::<RetentionParams>(r#"{"clv": -1, "contact_cost": 1, "incentive_cost": 10}"#).is_err());
        assert!(serde_json::from_str::<ResponseParams>(r#"{"delta_t": 1, "delta_c": 1, "contact_cost": 1}"#).is_err());
    }

    fn arb_causal() -> impl Strategy<Value = CausalDataset> {
        prop::collection::vec((-10i32..=10, 0u8..=1, 0u8..=1), 2..60)
            .prop_filter("both samples", |rows| {
                rows.iter().any(|r| r.2 == 1) && rows.iter().any(|r| r.2 == 0)
            })
            .prop_map(|rows| {
                let recs: Vec<(f64, u8, u8)> =
                    rows.into_iter().map(|(s, y, t)| (s as f64 / 10.0, y, t)).collect();
                CausalDataset::from_records(&recs).unwrap()
            })
    }

    proptest! {
        #[test]
        fn routes_agree_everywhere(
            ds in arb_causal(),
            clv in 0.0f64..500.0, cc in 0.0f64..20.0, ci in 0.0f64..50.0, dt in 0.0f64..200.0, dc in 0.0f64..200.0,
        ) {
            let rp = RetentionParams::new(clv, cc, ci).unwrap();
            let sp = ResponseParams::new(dt, dc, cc, ci).unwrap();
            for phi in ds.threshold_grid().unwrap().iter() {
                prop_assert!(retention_profit_routes(&ds, phi, &rp).is_ok());
                prop_assert!(response_profit_routes(&ds, phi, &sp).is_ok());
            }
        }
    }
}
