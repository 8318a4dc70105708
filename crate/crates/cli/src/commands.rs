use std::collections::BTreeSet;

use betamoments::combinatorics::{
    count_weighted_paths, enumerate_paths, motzkin_count, schroder_bijection, Direction, Path,
    PathModel,
};
use betamoments::error::ParamError;
use betamoments::genfunc::generating_function;
use betamoments::mc::{default_step_scale, factorization_test, mh_sample, ChainConfig, ChainStats};
use betamoments::moments::{cross_check, Backend, FLOAT_DIGITS};
use betamoments::verify::run_suite;
use betamoments::{a_params, transport_to_jacobi, EnsembleSpec, Rational};
use serde_json::json;

use crate::args::{
    BackendArg, EnsembleArgs, KindArg, ModelArg, MomentArgs, PathsArgs, SampleArgs, SeriesArgs,
    VerifyArgs,
};
use crate::output::{Report, Table};

/// Anything that should end the run with exit code 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<Report, UsageError>;

fn flag_for_field(field: &str) -> String {
    match field {
        "N1" | "N2" => "--transport".into(),
        other => format!("--{other}"),
    }
}

fn param_error(e: ParamError) -> UsageError {
    UsageError(format!(
        "invalid value for {}: {}",
        flag_for_field(e.field),
        e.reason
    ))
}

fn kind_name(kind: KindArg) -> &'static str {
    match kind {
        KindArg::Jacobi => "jacobi",
        KindArg::JacobiG1 => "jacobi-g1",
        KindArg::Laguerre => "laguerre",
        KindArg::Delay => "delay",
    }
}

pub fn build_spec(e: &EnsembleArgs) -> Result<EnsembleSpec, UsageError> {
    if let Some(channels) = &e.transport {
        if e.kind.is_some_and(|k| k != KindArg::JacobiG1) {
            return Err(UsageError("--transport implies --kind jacobi-g1".into()));
        }
        for (flag, given) in [
            ("--alpha", e.alpha.is_some()),
            ("--gamma", e.gamma.is_some()),
            ("--N", e.big_n.is_some()),
            ("--epsilon", e.epsilon.is_some()),
            ("--tauD", e.tau_d.is_some()),
        ] {
            if given {
                return Err(UsageError(format!(
                    "{flag} cannot be combined with --transport"
                )));
            }
        }
        return transport_to_jacobi(channels[0], channels[1], e.beta.clone()).map_err(param_error);
    }
    let kind = e
        .kind
        .ok_or_else(|| UsageError("missing --kind (or --transport N1 N2)".into()))?;
    let name = kind_name(kind);
    let require = |v: &Option<Rational>, flag: &str| {
        v.clone()
            .ok_or_else(|| UsageError(format!("--kind {name} requires {flag}")))
    };
    let unused: &[(&str, bool)] = match kind {
        KindArg::Jacobi => &[
            ("--epsilon", e.epsilon.is_some()),
            ("--tauD", e.tau_d.is_some()),
        ],
        KindArg::JacobiG1 => &[
            ("--gamma", e.gamma.is_some()),
            ("--epsilon", e.epsilon.is_some()),
            ("--tauD", e.tau_d.is_some()),
        ],
        KindArg::Laguerre => &[
            ("--gamma", e.gamma.is_some()),
            ("--tauD", e.tau_d.is_some()),
        ],
        KindArg::Delay => &[
            ("--alpha", e.alpha.is_some()),
            ("--gamma", e.gamma.is_some()),
            ("--epsilon", e.epsilon.is_some()),
        ],
    };
    if let Some((flag, _)) = unused.iter().find(|(_, given)| *given) {
        return Err(UsageError(format!(
            "{flag} is not a parameter of --kind {name}"
        )));
    }
    let big_n = match (kind, e.big_n) {
        (_, Some(n)) => n,
        (KindArg::Delay, None) => 1,
        (_, None) => return Err(UsageError(format!("--kind {name} requires --N"))),
    };
    let beta = e.beta.clone();
    let spec = match kind {
        KindArg::Jacobi => EnsembleSpec::JacobiGeneral {
            alpha: require(&e.alpha, "--alpha")?,
            gamma: require(&e.gamma, "--gamma")?,
            beta,
            big_n,
        },
        KindArg::JacobiG1 => EnsembleSpec::JacobiGamma1 {
            alpha: require(&e.alpha, "--alpha")?,
            beta,
            big_n,
        },
        KindArg::Laguerre => EnsembleSpec::Laguerre {
            alpha: require(&e.alpha, "--alpha")?,
            epsilon: require(&e.epsilon, "--epsilon")?,
            beta,
            big_n,
        },
        KindArg::Delay => EnsembleSpec::DelayTimes {
            tau_d: require(&e.tau_d, "--tauD")?,
            beta,
            big_n,
        },
    };
    spec.validate().map_err(param_error)?;
    Ok(spec)
}

pub fn moment(args: &MomentArgs) -> CmdResult {
    let spec = build_spec(&args.ensemble)?;
    let (lo, hi) = match (args.n, args.n_max) {
        (Some(n), _) => (n, n),
        (None, Some(m)) => (1, m),
        (None, None) => unreachable!("clap requires one of --n, --n-max"),
    };
    if lo == 0 {
        return Err(UsageError(format!(
            "invalid value for {}: must be at least 1",
            if args.n.is_some() { "--n" } else { "--n-max" }
        )));
    }
    let backends: Vec<Backend> = match args.backend {
        BackendArg::All => Backend::ALL.to_vec(),
        BackendArg::Recurrence => vec![Backend::Recurrence],
        BackendArg::Closed => vec![Backend::ClosedForm],
        BackendArg::Series => vec![Backend::Series],
        BackendArg::Paths => vec![Backend::Paths],
    };
    let cc = cross_check(&spec, hi, &backends)?;
    let moments: Vec<_> = cc.results.iter().filter(|r| r.n >= lo).collect();

    let mut table = Table::new(&["kind", "n", "backend", "value", "value_float"]);
    for m in &moments {
        table.row(vec![
            m.kind.as_str().to_string(),
            m.n.to_string(),
            m.backend.to_string(),
            m.value.to_string(),
            m.value.to_decimal(FLOAT_DIGITS),
        ]);
    }
    let mut results = json!({ "a_params": a_params(&spec)?, "moments": moments });
    if backends.len() > 1 {
        results["equal"] = json!(cc.equal);
        results["first_discrepancy"] = json!(cc.first_discrepancy);
    }
    let mut report = Report::new("moment", Some(spec), results, table);
    if let Some(d) = &cc.first_discrepancy {
        report.fail(format!(
            "backends disagree at n = {}: {} gives {}, {} gives {}",
            d.n, d.reference, d.reference_value, d.backend, d.value
        ));
    }
    Ok(report)
}

fn path_string(p: &Path) -> String {
    p.to_string()
}

pub fn paths(args: &PathsArgs) -> CmdResult {
    let (size_flag, size) = match args.model {
        ModelArg::Dyck => ("--pairs", args.pairs),
        ModelArg::Motzkin | ModelArg::Jacobi4 => ("--length", args.length),
        ModelArg::Schroder => ("--n", args.n),
    };
    let model_name = match args.model {
        ModelArg::Dyck => "dyck",
        ModelArg::Motzkin => "motzkin",
        ModelArg::Schroder => "schroder",
        ModelArg::Jacobi4 => "jacobi4",
    };
    let size =
        size.ok_or_else(|| UsageError(format!("--model {model_name} requires {size_flag}")))?;
    for (flag, given) in [
        ("--pairs", args.pairs.is_some()),
        ("--length", args.length.is_some()),
        ("--n", args.n.is_some()),
    ] {
        if given && flag != size_flag {
            return Err(UsageError(format!(
                "{flag} does not apply to --model {model_name}; use {size_flag}"
            )));
        }
    }
    if args.rises.is_some() && args.model != ModelArg::Motzkin {
        return Err(UsageError("--rises applies only to --model motzkin".into()));
    }
    let arity = match args.model {
        ModelArg::Dyck => 2,
        ModelArg::Motzkin | ModelArg::Schroder => 3,
        ModelArg::Jacobi4 => 4,
    };
    let weights = match &args.weights {
        Some(w) if w.len() != arity => {
            return Err(UsageError(format!(
                "invalid value for --weights: --model {model_name} takes {arity} weights, got {}",
                w.len()
            )))
        }
        Some(w) => w.clone(),
        None => vec![Rational::one(); arity],
    };
    let w = |i: usize| weights[i].clone();
    let model = match args.model {
        ModelArg::Dyck => PathModel::dyck(size, w(0), w(1)),
        ModelArg::Motzkin => PathModel::motzkin(size, w(0), w(1), w(2)),
        ModelArg::Schroder => PathModel::delay(size, w(0), w(1), w(2)),
        ModelArg::Jacobi4 => PathModel::jacobi4(size, w(0), w(1), w(2), w(3)),
    };

    let count = match args.rises {
        Some(m) if 2 * m > size => Rational::zero(),
        // every such path has the same weight
        Some(m) => {
            Rational::from(motzkin_count(size as u64, m as u64))
                * w(0).pow(m as u32)
                * w(1).pow(m as u32)
                * w(2).pow((size - 2 * m) as u32)
        }
        None => count_weighted_paths(&model),
    };
    let count_str = if args.weights.is_none() && count.denom() == &1.into() {
        count.numer().to_string()
    } else {
        count.to_string()
    };

    let mut results = json!({
        "model": model_name,
        "size": size,
        "weights": weights,
        "count": count_str,
    });
    let mut table = Table::new(&["model", "size", "count", "path"]);
    if args.enumerate {
        let mut listed = enumerate_paths(&model, model.max_path_steps())?;
        if let Some(m) = args.rises {
            listed.retain(|p| p.count(Direction::Up) == m);
        }
        results["paths"] = json!(listed.iter().map(path_string).collect::<Vec<_>>());
        if args.model == ModelArg::Schroder {
            let images = listed
                .iter()
                .map(|p| schroder_bijection(p).map(|s| s.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            let distinct: BTreeSet<&String> = images.iter().collect();
            if distinct.len() != images.len() {
                return Err(UsageError(
                    "internal error: Schröder map is not injective".into(),
                ));
            }
            results["schroder_paths"] = json!(images);
        }
        for p in &listed {
            table.row(vec![
                model_name.into(),
                size.to_string(),
                count_str.clone(),
                path_string(p),
            ]);
        }
    } else {
        table.row(vec![
            model_name.into(),
            size.to_string(),
            count_str.clone(),
            String::new(),
        ]);
    }
    Ok(Report::new("paths", None, results, table))
}

pub fn series(args: &SeriesArgs) -> CmdResult {
    let spec = build_spec(&args.ensemble)?;
    let f = generating_function(&spec, args.order)?;
    let mut table = Table::new(&["power", "coefficient", "coefficient_float"]);
    for (k, c) in f.coeffs().iter().enumerate() {
        table.row(vec![
            k.to_string(),
            c.to_string(),
            c.to_decimal(FLOAT_DIGITS),
        ]);
    }
    let results = json!({
        "order": args.order,
        "a_params": a_params(&spec)?,
        "coefficients": f,
        "coefficients_float": f.coeffs().iter().map(|c| c.to_decimal(FLOAT_DIGITS)).collect::<Vec<_>>(),
    });
    Ok(Report::new("series", Some(spec), results, table))
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    if args.max_n == 0 {
        return Err(UsageError(
            "invalid value for --max-n: must be at least 1".into(),
        ));
    }
    let report = run_suite(args.suite, args.max_n);
    let mut table = Table::new(&["suite", "check", "passed", "detail", "counterexample"]);
    for c in &report.checks {
        table.row(vec![
            c.suite.to_string(),
            c.check.clone(),
            c.passed.to_string(),
            c.detail.clone(),
            c.counterexample.clone().unwrap_or_default(),
        ]);
    }
    let failures: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| {
            format!(
                "FAIL {} {} ({}): {}",
                c.suite,
                c.check,
                c.detail,
                c.counterexample.as_deref().unwrap_or("")
            )
        })
        .collect();
    let mut out = Report::new("verify", None, serde_json::to_value(&report)?, table);
    for f in failures {
        out.fail(f);
    }
    Ok(out)
}

fn stats_rows(table: &mut Table, stats: &ChainStats) {
    let n = stats.big_n.to_string();
    for e in &stats.estimates {
        table.row(vec![
            format!("moment_{}", e.n),
            n.clone(),
            e.mean.to_string(),
            e.stderr.to_string(),
        ]);
    }
    if let Some(p) = &stats.pair_cov {
        table.row(vec![
            "pair_cov".into(),
            n.clone(),
            p.cov.to_string(),
            p.stderr.to_string(),
        ]);
        table.row(vec![
            "cov_ratio".into(),
            n.clone(),
            p.ratio.to_string(),
            p.ratio_stderr.to_string(),
        ]);
    }
    table.row(vec![
        "acceptance".into(),
        n,
        stats.acceptance.to_string(),
        String::new(),
    ]);
}

pub fn sample(args: &SampleArgs) -> CmdResult {
    let spec = build_spec(&args.ensemble)?;
    let step_scale = match args.step_scale {
        Some(s) => s,
        None => default_step_scale(&spec)?,
    };
    let cfg = ChainConfig {
        sweeps: args.sweeps,
        burn_in: args.burn_in,
        step_scale,
        chains: args.chains,
        seed: args.seed,
    };
    cfg.validate()?;
    let mut table = Table::new(&["quantity", "N", "value", "stderr"]);
    let mut warnings = Vec::new();
    let (results, failure) = if args.factorization {
        let report = factorization_test(&spec, &cfg)?;
        stats_rows(&mut table, &report.stats_n);
        stats_rows(&mut table, &report.stats_2n);
        table.row(vec![
            "decay".into(),
            report.big_n.to_string(),
            report.decay.to_string(),
            report.decay_stderr.to_string(),
        ]);
        warnings.extend(report.stats_n.diagnostics.warnings.iter().cloned());
        warnings.extend(report.stats_2n.diagnostics.warnings.iter().cloned());
        let failure = (!report.consistent).then(|| {
            format!(
                "covariance ratio decays by {:.3} from N to 2N, outside [1.4, 2.8]",
                report.decay
            )
        });
        (serde_json::to_value(&report)?, failure)
    } else {
        let stats = mh_sample(&spec, &cfg, args.n_max)?;
        stats_rows(&mut table, &stats);
        warnings.extend(stats.diagnostics.warnings.iter().cloned());
        (serde_json::to_value(&stats)?, None)
    };
    let mut report = Report::new("sample", Some(spec), results, table);
    report.warnings = warnings;
    if let Some(f) = failure {
        report.fail(f);
    }
    Ok(report)
}
