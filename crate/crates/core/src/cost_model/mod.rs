//! Monetary matrices, uncertain cost-benefit parameters, and the Monte Carlo
//! engine for expected maximum (causal) profit.
//!
//! Sign convention: positive entries are benefits, negative entries costs.
//! Outcome-benefit and treatment-cost matrices hold nonnegative magnitudes and
//! combine into a causal cost-benefit matrix as `OB - TC`.

mod distribution;
mod emp;

pub use distribution::{
    sample_cost_benefit, CausalDistribution, ConventionalDistribution, CostBenefitDistribution,
    DistributionSpec, RealizedCostBenefit,
};
pub use emp::{expected_max_causal_profit, expected_max_profit, EmpResult, ThresholdCount};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{Error, Matrix2, Result};

fn check_finite(m: &[[f64; 2]; 2], what: &str) -> Result<()> {
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{what}[{i}][{j}] = {v} is not finite"
                )));
            }
        }
    }
    Ok(())
}

fn check_nonnegative(m: &[[f64; 2]; 2], what: &str) -> Result<()> {
    check_finite(m, what)?;
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if *v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{what}[{i}][{j}] = {v} is negative"
                )));
            }
        }
    }
    Ok(())
}

macro_rules! money_matrix {
    ($(#[$meta:meta])* $name:ident, $label:literal, $check:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Serialize)]
        #[serde(transparent)]
        pub struct $name(Matrix2);

        impl $name {
            pub fn new(cells: [[f64; 2]; 2]) -> Result<Self> {
                $check(&cells, $label)?;
                Ok($name(Matrix2(cells)))
            }

            pub fn matrix(&self) -> &Matrix2 {
                &self.0
            }

            pub fn cells(&self) -> [[f64; 2]; 2] {
                self.0.cells()
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let cells = <[[f64; 2]; 2]>::deserialize(d)?;
                $name::new(cells).map_err(serde::de::Error::custom)
            }
        }
    };
}

money_matrix!(
    /// Conventional cost-benefit matrix, `[actual][predicted]`.
    CostBenefitMatrix,
    "cb",
    check_finite
);
money_matrix!(
    /// Benefit of each outcome under each treatment, `[outcome][treatment]`.
    OutcomeBenefitMatrix,
    "ob",
    check_nonnegative
);
money_matrix!(
    /// Cost of each treatment given the outcome, `[outcome][treatment]`.
    TreatmentCostMatrix,
    "tc",
    check_nonnegative
);
money_matrix!(
    /// Net profit of each outcome under each treatment.
    CausalCostBenefitMatrix,
    "ccb",
    check_finite
);

/// `OB - TC`.
pub fn causal_cost_benefit(
    ob: &OutcomeBenefitMatrix,
    tc: &TreatmentCostMatrix,
) -> CausalCostBenefitMatrix {
    CausalCostBenefitMatrix(ob.0.sub(&tc.0))
}

pub(crate) fn parse_matrix(value: &Value, path: &str) -> Result<[[f64; 2]; 2]> {
    parse_cells(value, path, |v, p| {
        v.as_f64().ok_or_else(|| Error::InvalidSpec {
            path: p.to_owned(),
            message: format!("expected a number, found {v}"),
        })
    })
}

pub(crate) fn parse_cells<T>(
    value: &Value,
    path: &str,
    cell: impl Fn(&Value, &str) -> Result<T>,
) -> Result<[[T; 2]; 2]> {
    let shape_err = |p: &str| Error::InvalidSpec {
        path: p.to_owned(),
        message: "expected a 2x2 nested array".to_owned(),
    };
    let rows = value
        .as_array()
        .filter(|r| r.len() == 2)
        .ok_or_else(|| shape_err(path))?;
    let parse_row = |i: usize| -> Result<[T; 2]> {
        let row_path = format!("{path}[{i}]");
        let row = rows[i]
            .as_array()
            .filter(|r| r.len() == 2)
            .ok_or_else(|| shape_err(&row_path))?;
        Ok([
            cell(&row[0], &format!("{row_path}[0]"))?,
            cell(&row[1], &format!("{row_path}[1]"))?,
        ])
    };
    Ok([parse_row(0)?, parse_row(1)?])
}

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key).ok_or_else(|| Error::InvalidSpec {
        path: format!("$.{key}"),
        message: "missing key".to_owned(),
    })
}

fn reject_unknown_keys(doc: &Value, allowed: &[&str]) -> Result<()> {
    let obj = doc.as_object().ok_or_else(|| Error::InvalidSpec {
        path: "$".to_owned(),
        message: "expected a JSON object".to_owned(),
    })?;
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::InvalidSpec {
            path: format!("$.{k}"),
            message: format!("unexpected key; expected one of {allowed:?}"),
        }),
        None => Ok(()),
    }
}

fn with_path<T>(r: Result<T>, path: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::InvalidParameter(message) => Error::InvalidSpec {
            path: path.to_owned(),
            message,
        },
        other => other,
    })
}

impl CostBenefitMatrix {
    /// Parses `{"cb": [[cb00, cb01], [cb10, cb11]]}`.
    pub fn from_json(doc: &Value) -> Result<Self> {
        reject_unknown_keys(doc, &["cb"])?;
        let cells = parse_matrix(field(doc, "cb")?, "$.cb")?;
        with_path(Self::new(cells), "$.cb")
    }
}

impl CausalCostBenefitMatrix {
    /// Parses either `{"ob": [[..]], "tc": [[..]]}` or `{"ccb": [[..]]}`.
    pub fn from_json(doc: &Value) -> Result<Self> {
        if doc.get("ccb").is_some() {
            reject_unknown_keys(doc, &["ccb"])?;
            let cells = parse_matrix(field(doc, "ccb")?, "$.ccb")?;
            return with_path(Self::new(cells), "$.ccb");
        }
        reject_unknown_keys(doc, &["ob", "tc"])?;
        let ob = with_path(
            OutcomeBenefitMatrix::new(parse_matrix(field(doc, "ob")?, "$.ob")?),
            "$.ob",
        )?;
        let tc = with_path(
            TreatmentCostMatrix::new(parse_matrix(field(doc, "tc")?, "$.tc")?),
            "$.tc",
        )?;
        Ok(causal_cost_benefit(&ob, &tc))
    }
}
