//! Per-cell parameter distributions and their reproducible realization.
//!
//! Draws are counter based: the value of cell `c` in draw `d` under seed `s`
//! comes from a ChaCha8 generator seeded with `s` (`seed_from_u64`) on stream
//! `(d << 4) | c`. Any draw can be recomputed in isolation, so results do not
//! depend on evaluation order or thread count. Conventional cells are numbered
//! `2 * i + j`; causal cells `2 * i + j` for OB and `4 + 2 * i + j` for TC.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Triangular};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{
    causal_cost_benefit, field, parse_cells, reject_unknown_keys, CausalCostBenefitMatrix,
    CostBenefitMatrix, OutcomeBenefitMatrix, TreatmentCostMatrix,
};
use crate::{Error, Result};

/// Distribution of one matrix cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum DistributionSpec {
    Point(f64),
    /// `[a, b]`
    Uniform(f64, f64),
    /// `[a, mode, b]`
    Triangular(f64, f64, f64),
    /// `[alpha, beta, a, b]`: a Beta(alpha, beta) variate mapped onto `[a, b]`.
    #[serde(rename = "beta")]
    BetaScaled(f64, f64, f64, f64),
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<()> {
        let params: &[f64] = match self {
            DistributionSpec::Point(v) => &[*v],
            DistributionSpec::Uniform(a, b) => &[*a, *b],
            DistributionSpec::Triangular(a, m, b) => &[*a, *m, *b],
            DistributionSpec::BetaScaled(al, be, a, b) => &[*al, *be, *a, *b],
        };
        if params.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        match *self {
            DistributionSpec::Uniform(a, b) if a > b => {
                Err(Error::InvalidParameter(format!("uniform bounds {a} > {b}")))
            }
            DistributionSpec::Triangular(a, m, b) if !(a <= m && m <= b) => Err(
                Error::InvalidParameter(format!("triangular mode {m} outside [{a}, {b}]")),
            ),
            DistributionSpec::BetaScaled(al, be, _, _) if !(al > 0.0 && be > 0.0) => Err(
                Error::InvalidParameter(format!("beta shape parameters ({al}, {be}) must be > 0")),
            ),
            DistributionSpec::BetaScaled(_, _, a, b) if a > b => {
                Err(Error::InvalidParameter(format!("beta bounds {a} > {b}")))
            }
            _ => Ok(()),
        }
    }

    /// Smallest value in the support.
    pub fn lower_bound(&self) -> f64 {
        match *self {
            DistributionSpec::Point(v) => v,
            DistributionSpec::Uniform(a, _)
            | DistributionSpec::Triangular(a, _, _)
            | DistributionSpec::BetaScaled(_, _, a, _) => a,
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            DistributionSpec::Point(v) => v,
            DistributionSpec::Uniform(a, b) => (a + b) / 2.0,
            DistributionSpec::Triangular(a, m, b) => (a + m + b) / 3.0,
            DistributionSpec::BetaScaled(al, be, a, b) => a + (b - a) * al / (al + be),
        }
    }

    /// The same distribution moved by `delta`.
    pub fn shifted(&self, delta: f64) -> Self {
        match *self {
            DistributionSpec::Point(v) => DistributionSpec::Point(v + delta),
            DistributionSpec::Uniform(a, b) => DistributionSpec::Uniform(a + delta, b + delta),
            DistributionSpec::Triangular(a, m, b) => {
                DistributionSpec::Triangular(a + delta, m + delta, b + delta)
            }
            DistributionSpec::BetaScaled(al, be, a, b) => {
                DistributionSpec::BetaScaled(al, be, a + delta, b + delta)
            }
        }
    }

    /// Draws one value. Assumes the spec was validated.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            DistributionSpec::Point(v) => v,
            DistributionSpec::Uniform(a, b) => a + (b - a) * rng.random::<f64>(),
            DistributionSpec::Triangular(a, m, b) => {
                if a == b {
                    a
                } else {
                    Triangular::new(a, b, m).expect("validated").sample(rng)
                }
            }
            DistributionSpec::BetaScaled(al, be, a, b) => {
                let x: f64 = Beta::new(al, be).expect("validated").sample(rng);
                a + (b - a) * x
            }
        }
    }
}

fn cell_rng(seed: u64, draw_index: u64, cell: u64) -> ChaCha8Rng {
    debug_assert!(cell < 16 && draw_index < (1 << 60));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((draw_index << 4) | cell);
    rng
}

fn draw_matrix(
    specs: &[[DistributionSpec; 2]; 2],
    seed: u64,
    draw_index: u64,
    first_cell: u64,
) -> [[f64; 2]; 2] {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let cell = first_cell + (2 * i + j) as u64;
            out[i][j] = specs[i][j].sample(&mut cell_rng(seed, draw_index, cell));
        }
    }
    out
}

fn parse_spec_cell(v: &Value, path: &str) -> Result<DistributionSpec> {
    let spec: DistributionSpec =
        serde_json::from_value(v.clone()).map_err(|e| Error::InvalidSpec {
            path: path.to_owned(),
            message: format!("invalid distribution spec {v}: {e}"),
        })?;
    spec.validate().map_err(|e| Error::InvalidSpec {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    Ok(spec)
}

fn check_nonnegative_support(
    specs: &[[DistributionSpec; 2]; 2],
    name: &str,
) -> Result<()> {
    for (i, row) in specs.iter().enumerate() {
        for (j, spec) in row.iter().enumerate() {
            let lb = spec.lower_bound();
            if lb < 0.0 {
                return Err(Error::InvalidSpec {
                    path: format!("$.{name}[{i}][{j}]"),
                    message: format!("support starts at {lb}; {name} entries must be >= 0"),
                });
            }
        }
    }
    Ok(())
}

/// Independent per-cell distributions of a conventional cost-benefit matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConventionalDistribution {
    pub cb: [[DistributionSpec; 2]; 2],
}

impl ConventionalDistribution {
    pub fn new(cb: [[DistributionSpec; 2]; 2]) -> Result<Self> {
        for (i, row) in cb.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                s.validate().map_err(|e| Error::InvalidSpec {
                    path: format!("$.cb[{i}][{j}]"),
                    message: e.to_string(),
                })?;
            }
        }
        Ok(ConventionalDistribution { cb })
    }

    /// Point masses at the cells of `cb`.
    pub fn point(cb: &CostBenefitMatrix) -> Self {
        ConventionalDistribution {
            cb: cb.cells().map(|r| r.map(DistributionSpec::Point)),
        }
    }

    pub fn sample(&self, draw_index: u64, seed: u64) -> CostBenefitMatrix {
        CostBenefitMatrix::new(draw_matrix(&self.cb, seed, draw_index, 0))
            .expect("finite specs produce finite draws")
    }
}

/// Independent per-cell distributions of the outcome-benefit and
/// treatment-cost matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausalDistribution {
    pub ob: [[DistributionSpec; 2]; 2],
    pub tc: [[DistributionSpec; 2]; 2],
}

impl CausalDistribution {
    pub fn new(ob: [[DistributionSpec; 2]; 2], tc: [[DistributionSpec; 2]; 2]) -> Result<Self> {
        for (name, m) in [("ob", &ob), ("tc", &tc)] {
            for (i, row) in m.iter().enumerate() {
                for (j, s) in row.iter().enumerate() {
                    s.validate().map_err(|e| Error::InvalidSpec {
                        path: format!("$.{name}[{i}][{j}]"),
                        message: e.to_string(),
                    })?;
                }
            }
            check_nonnegative_support(m, name)?;
        }
        Ok(CausalDistribution { ob, tc })
    }

    pub fn point(ob: &OutcomeBenefitMatrix, tc: &TreatmentCostMatrix) -> Self {
        CausalDistribution {
            ob: ob.cells().map(|r| r.map(DistributionSpec::Point)),
            tc: tc.cells().map(|r| r.map(DistributionSpec::Point)),
        }
    }

    pub fn sample(
        &self,
        draw_index: u64,
        seed: u64,
    ) -> (OutcomeBenefitMatrix, TreatmentCostMatrix) {
        let ob = OutcomeBenefitMatrix::new(draw_matrix(&self.ob, seed, draw_index, 0))
            .expect("nonnegative support");
        let tc = TreatmentCostMatrix::new(draw_matrix(&self.tc, seed, draw_index, 4))
            .expect("nonnegative support");
        (ob, tc)
    }
}

/// A parsed distribution file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CostBenefitDistribution {
    Conventional(ConventionalDistribution),
    Causal(CausalDistribution),
}

impl CostBenefitDistribution {
    /// Parses `{"cb": [[spec, spec], [spec, spec]]}` or
    /// `{"ob": [[..]], "tc": [[..]]}` where each spec is one of
    /// `{"point": v}`, `{"uniform": [a, b]}`, `{"triangular": [a, mode, b]}`,
    /// `{"beta": [alpha, beta, a, b]}`.
    pub fn from_json(doc: &Value) -> Result<Self> {
        if doc.get("cb").is_some() {
            reject_unknown_keys(doc, &["cb"])?;
            let cb = parse_cells(field(doc, "cb")?, "$.cb", parse_spec_cell)?;
            return Ok(CostBenefitDistribution::Conventional(ConventionalDistribution::new(cb)?));
        }
        reject_unknown_keys(doc, &["ob", "tc"])?;
        let ob = parse_cells(field(doc, "ob")?, "$.ob", parse_spec_cell)?;
        let tc = parse_cells(field(doc, "tc")?, "$.tc", parse_spec_cell)?;
        Ok(CostBenefitDistribution::Causal(CausalDistribution::new(ob, tc)?))
    }
}

/// One realized draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RealizedCostBenefit {
    Conventional(CostBenefitMatrix),
    Causal {
        ob: OutcomeBenefitMatrix,
        tc: TreatmentCostMatrix,
        ccb: CausalCostBenefitMatrix,
    },
}

/// Realizes draw `draw_index` of `dist` under `seed`.
pub fn sample_cost_benefit(
    dist: &CostBenefitDistribution,
    draw_index: u64,
    seed: u64,
) -> RealizedCostBenefit {
    match dist {
        CostBenefitDistribution::Conventional(d) => {
            RealizedCostBenefit::Conventional(d.sample(draw_index, seed))
        }
        CostBenefitDistribution::Causal(d) => {
            let (ob, tc) = d.sample(draw_index, seed);
            RealizedCostBenefit::Causal {
                ccb: causal_cost_benefit(&ob, &tc),
                ob,
                tc,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn point(v: f64) -> DistributionSpec {
        DistributionSpec::Point(v)
    }

    #[test]
    fn parses_spec_grammar() {
        let doc = json!({
            "ob": [[{"point": 0}, {"point": 0}], [{"uniform": [180, 220]}, {"uniform": [180, 220]}]],
            "tc": [[{"point": 0}, {"point": 1}], [{"triangular": [0, 1, 2]}, {"beta": [2, 3, 10, 12]}]]
        });
        let CostBenefitDistribution::Causal(d) = CostBenefitDistribution::from_json(&doc).unwrap() else {
            panic!("expected causal")
        };
        assert_eq!(d.ob[1][0], DistributionSpec::Uniform(180.0, 220.0));
        assert_eq!(d.tc[1][1], DistributionSpec::BetaScaled(2.0, 3.0, 10.0, 12.0));
        let conv = json!({"cb": [[{"point": 0}, {"point": -1}], [{"point": -5}, {"uniform": [8, 12]}]]});
        assert!(matches!(
            CostBenefitDistribution::from_json(&conv).unwrap(),
            CostBenefitDistribution::Conventional(_)
        ));
    }

    #[test]
    fn rejects_invalid_specs_with_path() {
        let bad = json!({"cb": [[{"point": 0}, {"uniform": [3, 1]}], [{"point": 0}, {"point": 0}]]});
        let err = CostBenefitDistribution::from_json(&bad).unwrap_err();
        assert!(matches!(&err, Error::InvalidSpec { path, .. } if path == "$.cb[0][1]"), "{err}");
        let bad = json!({"cb": [[{"gauss": 0}, {"point": 0}], [{"point": 0}, {"point": 0}]]});
        let err = CostBenefitDistribution::from_json(&bad).unwrap_err();
        assert!(matches!(&err, Error::InvalidSpec { path, .. } if path == "$.cb[0][0]"), "{err}");
        let neg = json!({"ob": [[{"uniform": [-1, 1]}, {"point": 0}], [{"point": 0}, {"point": 0}]],
                         "tc": [[{"point": 0}, {"point": 0}], [{"point": 0}, {"point": 0}]]});
        let err = CostBenefitDistribution::from_json(&neg).unwrap_err();
        assert!(matches!(&err, Error::InvalidSpec { path, .. } if path == "$.ob[0][0]"), "{err}");
        assert!(DistributionSpec::Triangular(0.0, 3.0, 2.0).validate().is_err());
        assert!(DistributionSpec::BetaScaled(0.0, 1.0, 0.0, 1.0).validate().is_err());
        assert!(DistributionSpec::Point(f64::INFINITY).validate().is_err());
    }

    #[test]
    fn point_distribution_is_constant() {
        let cb = CostBenefitMatrix::new([[0.0, -1.0], [-5.0, 10.0]]).unwrap();
        let d = ConventionalDistribution::point(&cb);
        for i in [0, 1, 17, 99_999] {
            assert_eq!(d.sample(i, 7), cb);
        }
    }

    #[test]
    fn draws_are_deterministic_per_index() {
        let spec = DistributionSpec::Uniform(8.0, 12.0);
        let d = ConventionalDistribution::new([[spec; 2]; 2]).unwrap();
        assert_eq!(d.sample(42, 7), d.sample(42, 7));
        assert_ne!(d.sample(42, 7), d.sample(43, 7));
        assert_ne!(d.sample(42, 7), d.sample(42, 8));
        let m = d.sample(5, 1).cells();
        assert!(m[0][0] != m[0][1] && m[0][1] != m[1][0]);
    }

    #[test]
    fn uniform_mean_converges() {
        let d = ConventionalDistribution::new([
            [point(0.0), point(0.0)],
            [point(0.0), DistributionSpec::Uniform(8.0, 12.0)],
        ])
        .unwrap();
        let n = 100_000u64;
        let mean = (0..n).map(|i| d.sample(i, 3).cells()[1][1]).sum::<f64>() / n as f64;
        assert!((mean - 10.0).abs() <= 0.02, "mean {mean}");
    }

    #[test]
    fn samples_stay_in_support() {
        let specs = [
            DistributionSpec::Triangular(1.0, 2.0, 4.0),
            DistributionSpec::BetaScaled(2.0, 5.0, 10.0, 20.0),
            DistributionSpec::Uniform(3.0, 3.0),
            DistributionSpec::Triangular(2.0, 2.0, 2.0),
        ];
        for s in specs {
            let mut rng = cell_rng(11, 0, 0);
            let (lo, hi) = match s {
                DistributionSpec::Triangular(a, _, b) | DistributionSpec::Uniform(a, b) => (a, b),
                DistributionSpec::BetaScaled(_, _, a, b) => (a, b),
                DistributionSpec::Point(v) => (v, v),
            };
            let n = 20_000;
            let mut sum = 0.0;
            for _ in 0..n {
                let v = s.sample(&mut rng);
                assert!((lo..=hi).contains(&v));
                sum += v;
            }
            assert!((sum / n as f64 - s.mean()).abs() < 0.05 * (1.0 + s.mean().abs()));
        }
    }
}
