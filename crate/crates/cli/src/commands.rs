use std::fs;
use std::path::Path;

use ccp_core::applications::{self, ProfitRoutes};
use ccp_core::causal_eval as ce;
use ccp_core::class_eval as cl;
use ccp_core::cost_model::{
    expected_max_causal_profit, expected_max_profit, CausalCostBenefitMatrix,
    CostBenefitDistribution, CostBenefitMatrix,
};
use ccp_core::dataset::{load_causal, load_classification};
use ccp_core::{BaselineKind, CausalDataset, ClassificationDataset, CurveKind, CurveSeries, Sample};
use serde_json::{json, Value};

use crate::report::{round_sig, sha256_hex, Results, RunReport};
use crate::{Application, CliError, InputArgs, Mode};

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let bytes = read(path)?;
    serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Usage(format!("{}: invalid JSON: {e}", path.display())))
}

enum Loaded {
    Class(ClassificationDataset),
    Causal(CausalDataset),
}

struct Input {
    digest: String,
    data: Loaded,
    warnings: Vec<String>,
}

fn load(path: &Path, mode: Mode) -> Result<Input, CliError> {
    let bytes = read(path)?;
    let digest = sha256_hex(&bytes);
    let (data, warnings) = match mode {
        Mode::Class => (Loaded::Class(load_classification(&bytes[..])?), Vec::new()),
        Mode::Causal => {
            let ds = load_causal(&bytes[..])?;
            let warnings = ds.warnings();
            (Loaded::Causal(ds), warnings)
        }
    };
    Ok(Input { digest, data, warnings })
}

fn report(command: &'static str, mode: Option<Mode>, input: Input, parameters: Value, seed: Option<u64>, results: Results) -> RunReport {
    RunReport {
        command,
        mode: mode.map(Mode::name),
        input_digest: input.digest,
        parameters,
        seed,
        warnings: input.warnings,
        results,
    }
}

pub fn eval(
    args: &InputArgs,
    threshold: Option<f64>,
    costs: Option<&Path>,
    baseline: BaselineKind,
) -> Result<RunReport, CliError> {
    let input = load(&args.input, args.mode)?;
    let costs = costs.map(read_json).transpose()?;
    let mut r = Results::default();
    let threshold = match &input.data {
        Loaded::Class(ds) => {
            let threshold = threshold.unwrap_or(0.5);
            let cf = cl::confusion_matrix(ds, threshold);
            r.put("priors", ds.priors());
            r.put("confusion_matrix", cf);
            r.put("positive_rate", cf.positive_rate());
            match cl::scalar_metrics(&cf) {
                Ok(m) => {
                    r.put("accuracy", m.accuracy);
                    r.put("sensitivity", m.sensitivity);
                    r.put("specificity", m.specificity);
                }
                Err(e) => {
                    r.put("accuracy", cf.true_negatives() + cf.true_positives());
                    r.put_metric::<f64>("sensitivity", Err(e.clone()))?;
                    r.put_metric::<f64>("specificity", Err(e))?;
                }
            }
            r.put_metric("auc", cl::roc_auc(ds).map(|(_, a)| a))?;
            r.put_metric("gini", cl::gains_gini(ds).map(|(_, g)| g))?;
            if let Some(doc) = &costs {
                let cb = CostBenefitMatrix::from_json(doc)?;
                let cf_b = cl::baseline_confusion(baseline, ds.priors());
                r.put("cost_benefit", cb);
                r.put("baseline", baseline.name());
                r.put("baseline_confusion_matrix", cf_b);
                r.put("effect_matrix", cl::effect_matrix(&cf, &cf_b)?);
                r.put("profit", cl::profit(&cf, &cb));
                r.put("relative_profit", cl::relative_profit(&cf, &cf_b, &cb)?);
            }
            threshold
        }
        Loaded::Causal(ds) => {
            let threshold = threshold.unwrap_or(0.0);
            for (key, sample) in [("treatment_confusion", Sample::Treatment), ("control_confusion", Sample::Control)] {
                r.put_metric(key, ce::sample_causal_confusion(ds, sample, threshold).map(|m| m.cells))?;
            }
            r.put_metric("causal_confusion", ce::causal_confusion(ds, threshold))?;
            r.put_metric("positive_treatment_rate", ce::positive_treatment_rate(ds, threshold))?;
            r.put_metric("qini_coefficient", ce::qini_coefficient(ds))?;
            r.put_metric("little_qini", ce::little_qini(ds))?;
            r.put_metric("aucroc", ce::croc_aucroc(ds).map(|(_, a)| a))?;
            if let Some(doc) = &costs {
                let ccb = CausalCostBenefitMatrix::from_json(doc)?;
                r.put("causal_cost_benefit", ccb);
                r.put("causal_effect_matrix", ce::causal_effect_matrix(ds, threshold)?);
                r.put("causal_profit", ce::causal_profit(ds, threshold, &ccb)?);
            }
            threshold
        }
    };
    let mut params = json!({ "threshold": threshold });
    if let Some(doc) = costs {
        params["costs"] = doc;
        if args.mode == Mode::Class {
            params["baseline"] = baseline.name().into();
        }
    }
    Ok(report("eval", Some(args.mode), input, params, None, r))
}

fn write_curve(dir: &Path, series: &CurveSeries) -> Result<String, CliError> {
    let name = format!("{}.csv", series.kind.name());
    let path = dir.join(&name);
    let mut out = String::from("kind,threshold,x,y\n");
    for p in &series.points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            series.kind.name(),
            round_sig(p.threshold),
            round_sig(p.x),
            round_sig(p.y)
        ));
    }
    fs::write(&path, out).map_err(|source| CliError::Io { path, source })?;
    Ok(name)
}

pub fn curves(args: &InputArgs, which: &[String], out: &Path) -> Result<RunReport, CliError> {
    let mut kinds = Vec::new();
    for name in which {
        let kind = CurveKind::parse(name.trim())
            .ok_or_else(|| CliError::Usage(format!("unknown curve `{name}`")))?;
        if kind.is_causal() != (args.mode == Mode::Causal) {
            return Err(CliError::Usage(format!(
                "curve `{name}` is not available in {} mode",
                args.mode.name()
            )));
        }
        if !kinds.contains(&kind) {
            kinds.push(kind);
        }
    }
    if kinds.is_empty() {
        kinds = match args.mode {
            Mode::Class => vec![CurveKind::Roc, CurveKind::Gains, CurveKind::Lift],
            Mode::Causal => vec![CurveKind::Qini, CurveKind::Liftup, CurveKind::Croc],
        };
    }
    let input = load(&args.input, args.mode)?;
    fs::create_dir_all(out).map_err(|source| CliError::Io { path: out.to_owned(), source })?;
    let mut r = Results::default();
    let mut files = Vec::new();
    for kind in &kinds {
        let series = match (&input.data, kind) {
            (Loaded::Class(ds), CurveKind::Roc) => cl::roc_auc(ds).map(|(c, _)| c),
            (Loaded::Class(ds), CurveKind::Gains) => cl::gains_gini(ds).map(|(c, _)| c),
            (Loaded::Class(ds), CurveKind::Lift) => cl::lift_curve(ds),
            (Loaded::Causal(ds), CurveKind::Qini) => ce::qini_curve(ds),
            (Loaded::Causal(ds), CurveKind::Liftup) => ce::liftup_curve(ds),
            (Loaded::Causal(ds), CurveKind::Croc) => ce::croc_aucroc(ds).map(|(c, _)| c),
            _ => unreachable!("mode checked above"),
        };
        match series {
            Ok(s) => files.push(write_curve(out, &s)?),
            Err(e) => r.put_metric::<()>(kind.name(), Err(e))?,
        }
    }
    r.put("files", files);
    let params = json!({ "which": kinds.iter().map(|k| k.name()).collect::<Vec<_>>() });
    Ok(report("curves", Some(args.mode), input, params, None, r))
}

pub fn optimize(args: &InputArgs, costs: &Path, baseline: BaselineKind) -> Result<RunReport, CliError> {
    let input = load(&args.input, args.mode)?;
    let doc = read_json(costs)?;
    let mut r = Results::default();
    let mut params = json!({ "costs": doc.clone() });
    match &input.data {
        Loaded::Class(ds) => {
            let cb = CostBenefitMatrix::from_json(&doc)?;
            let sweep = cl::ClassSweep::new(ds, baseline);
            let best = sweep.maximize(&cb);
            r.put("max_profit", best.value);
            r.put("optimal_threshold", best.optimal_threshold);
            r.put("positive_rate", best.positive_rate);
            r.put("profit_table", sweep.table(&cb));
            params["baseline"] = baseline.name().into();
        }
        Loaded::Causal(ds) => {
            let ccb = CausalCostBenefitMatrix::from_json(&doc)?;
            let sweep = ce::CausalSweep::new(ds)?;
            let best = sweep.maximize(&ccb);
            r.put("causal_cost_benefit", ccb);
            r.put("max_causal_profit", best.value);
            r.put("optimal_threshold", best.optimal_threshold);
            r.put("treat_rate", best.treat_rate);
            r.put("profit_table", sweep.table(&ccb));
        }
    }
    Ok(report("optimize", Some(args.mode), input, params, None, r))
}

pub fn emp(
    args: &InputArgs,
    dist_path: &Path,
    draws: u64,
    seed: u64,
    baseline: BaselineKind,
) -> Result<RunReport, CliError> {
    if draws < 1 {
        return Err(CliError::Usage("--draws must be >= 1".into()));
    }
    let input = load(&args.input, args.mode)?;
    let doc = read_json(dist_path)?;
    let dist = CostBenefitDistribution::from_json(&doc)?;
    let mut params = json!({ "costs_dist": doc, "draws": draws });
    let result = match (&input.data, &dist) {
        (Loaded::Class(ds), CostBenefitDistribution::Conventional(d)) => {
            params["baseline"] = baseline.name().into();
            expected_max_profit(ds, d, baseline, draws, seed)?
        }
        (Loaded::Causal(ds), CostBenefitDistribution::Causal(d)) => {
            expected_max_causal_profit(ds, d, draws, seed)?
        }
        _ => {
            return Err(CliError::Usage(format!(
                "distribution file does not match {} mode: expected {}",
                args.mode.name(),
                if args.mode == Mode::Class { "`cb`" } else { "`ob` and `tc`" }
            )))
        }
    };
    let mut r = Results::default();
    r.put("mean_profit", result.mean_profit);
    r.put("profit_std_dev", result.profit_std_dev);
    r.put("draws", result.draws);
    r.put("mean_positive_rate", result.mean_positive_rate);
    r.put("threshold_distribution", &result.threshold_distribution);
    Ok(report("emp", Some(args.mode), input, params, Some(seed), r))
}

fn app_params<T: serde::de::DeserializeOwned>(doc: &Value, key: &str) -> Result<T, CliError> {
    let body = doc
        .as_object()
        .filter(|o| o.len() == 1)
        .and_then(|o| o.get(key))
        .ok_or_else(|| CliError::Usage(format!("params schema mismatch: expected a single top-level key `{key}`")))?;
    serde_json::from_value(body.clone())
        .map_err(|e| CliError::Usage(format!("params schema mismatch in `{key}`: {e}")))
}

fn put_routes(r: &mut Results, prefix: &str, threshold: f64, routes: &ProfitRoutes) {
    r.put(&format!("{prefix}threshold"), threshold);
    r.put(&format!("{prefix}profit_engine"), routes.engine);
    r.put(&format!("{prefix}profit_direct"), routes.direct);
    r.put(&format!("{prefix}route_delta"), routes.direct.map(|d| (routes.engine - d).abs()));
}

pub fn app(
    application: Application,
    input_path: &Path,
    params_path: &Path,
    threshold: Option<f64>,
    optimize: bool,
) -> Result<RunReport, CliError> {
    let input = load(input_path, Mode::Causal)?;
    let Loaded::Causal(ds) = &input.data else { unreachable!() };
    let doc = read_json(params_path)?;
    let threshold = threshold.unwrap_or(0.0);
    let mut r = Results::default();
    let name = match application {
        Application::Retention => {
            let p: applications::RetentionParams = app_params(&doc, "retention")?;
            let (ob, tc) = applications::retention_matrices(&p);
            r.put("ob", ob);
            r.put("tc", tc);
            r.put("causal_cost_benefit", applications::retention_cost_benefit(&p));
            r.put("campaign_stats", applications::realized_retention_stats(ds, threshold)?);
            put_routes(&mut r, "", threshold, &applications::retention_profit_routes(ds, threshold, &p)?);
            if optimize {
                let best = applications::maximum_profit_uplift(ds, &p)?;
                r.put("max_profit_uplift", best.value);
                r.put("optimal_treat_rate", best.treat_rate);
                let routes = applications::retention_profit_routes(ds, best.optimal_threshold, &p)?;
                put_routes(&mut r, "optimal_", best.optimal_threshold, &routes);
            }
            "retention"
        }
        Application::Response => {
            let p: applications::ResponseParams = app_params(&doc, "response")?;
            let (ob, tc) = applications::response_matrices(&p);
            r.put("ob", ob);
            r.put("tc", tc);
            r.put("causal_cost_benefit", applications::response_cost_benefit(&p));
            r.put("campaign_stats", applications::realized_response_stats(ds, threshold)?);
            put_routes(&mut r, "", threshold, &applications::response_profit_routes(ds, threshold, &p)?);
            if optimize {
                let best = applications::maximum_response_profit(ds, &p)?;
                r.put("max_profit", best.value);
                r.put("optimal_treat_rate", best.treat_rate);
                let routes = applications::response_profit_routes(ds, best.optimal_threshold, &p)?;
                put_routes(&mut r, "optimal_", best.optimal_threshold, &routes);
            }
            "response"
        }
    };
    let params = json!({ "application": name, "params": doc, "threshold": threshold, "optimize": optimize });
    Ok(report("app", Some(Mode::Causal), input, params, None, r))
}
