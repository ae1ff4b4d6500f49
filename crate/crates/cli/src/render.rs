//! Text, CSV and JSON renderings. Every function returns the complete
//! output so nothing is printed when a command fails midway.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use volent_core::entropy::RouteValue;
use volent_core::serialize::{pretty_blocks, to_csv};
use volent_core::{
    build_markov_from_images, compacted_matrix, divided_compacted_matrix, q_polynomial,
    super_compacted_matrix, CheckResult, EntropyReport, IntMatrix, PresentationSpec, Result,
    TableRow,
};

use crate::Which;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Csv,
    Json,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::Markov => "markov",
            Which::Compacted => "compacted",
            Which::Divided => "divided",
            Which::Supercompacted => "supercompacted",
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn matrix(n: usize, orientable: bool, which: Which, format: Format, width: Option<usize>) -> Result<String> {
    let spec = PresentationSpec::new(n, orientable)?;
    let rank = spec.rank();
    let m: IntMatrix = match which {
        Which::Markov => build_markov_from_images(&spec)?,
        Which::Compacted => compacted_matrix(rank)?,
        Which::Divided => divided_compacted_matrix(rank)?,
        Which::Supercompacted => super_compacted_matrix(rank)?,
    };
    Ok(match format {
        Format::Plain => {
            let block = (which == Which::Markov).then(|| rank.block_size());
            pretty_blocks(&m, block, width)
        }
        Format::Csv => to_csv(&m),
        Format::Json => {
            let rows: Vec<Vec<String>> = m.rows().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            json_text(&json!({
                "n": n,
                "orientable": orientable,
                "which": which.name(),
                "size": m.size(),
                "rows": rows,
            }))
        }
    })
}

fn route_json(v: &RouteValue) -> Value {
    match v {
        RouteValue::Estimate(e) => json!({
            "value": e.value,
            "iterations": e.iterations,
            "residual": e.residual,
            "converged": e.converged,
        }),
        RouteValue::Root { value, bracket } => json!({
            "value": value,
            "lo": bracket.lo.to_string(),
            "hi": bracket.hi.to_string(),
        }),
    }
}

fn upper_bound(r: &EntropyReport) -> Option<usize> {
    (r.rank().get() >= 3).then(|| 2 * r.rank().get() - 1)
}

fn lower_bound(r: &EntropyReport) -> Option<f64> {
    let n = r.rank().get();
    (n >= 4).then(|| {
        let g = (2 * n - 1) as f64;
        g - g.powi(-((n - 2) as i32))
    })
}

pub fn report(r: &EntropyReport, format: Format, base2: bool) -> String {
    match format {
        Format::Json => {
            let routes: Map<String, Value> = r
                .routes
                .iter()
                .map(|(k, v)| (k.name().to_string(), route_json(v)))
                .collect();
            let mut obj = json!({
                "n": r.rank().get(),
                "orientable": r.spec.is_orientable(),
                "lambda": r.lambda,
                "entropy": r.entropy,
                "routes": routes,
                "bounds": {
                    "lower": lower_bound(r),
                    "upper": upper_bound(r),
                    "holds": r.bounds_hold,
                },
                "agreement": r.agreement,
                "threshold": r.threshold,
                "consistent": r.consistent,
                "polynomial": q_polynomial(r.rank()).coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            if base2 {
                obj["entropy_bits"] = json!(r.entropy_base2());
            }
            json_text(&obj)
        }
        Format::Csv => {
            let mut s = String::from("route,value\n");
            for (k, v) in &r.routes {
                let _ = writeln!(s, "{k},{}", v.value());
            }
            let _ = writeln!(s, "lambda,{}", r.lambda);
            let _ = writeln!(s, "entropy,{}", r.entropy);
            if base2 {
                let _ = writeln!(s, "entropy_bits,{}", r.entropy_base2());
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            let _ = writeln!(s, "presentation  {}", r.spec);
            let _ = writeln!(s, "polynomial    {}", q_polynomial(r.rank()));
            let _ = writeln!(s, "lambda        {:.12}", r.lambda);
            let _ = writeln!(s, "entropy       {:.12} nats", r.entropy);
            if base2 {
                let _ = writeln!(s, "              {:.12} bits", r.entropy_base2());
            }
            match (lower_bound(r), upper_bound(r), r.bounds_hold) {
                (Some(lo), Some(hi), Some(h)) => {
                    let _ = writeln!(s, "bounds        {lo:.9} < lambda < {hi}: {}", if h { "hold" } else { "FAIL" });
                }
                (None, Some(hi), _) => {
                    let _ = writeln!(s, "bounds        lambda < {hi} (no lower bound below rank 4)");
                }
                _ => {}
            }
            if !r.routes.is_empty() {
                s.push_str("routes\n");
                for (k, v) in &r.routes {
                    let note = match v {
                        RouteValue::Estimate(e) if e.converged => format!("{} iterations", e.iterations),
                        RouteValue::Estimate(e) => format!("NOT converged after {}", e.iterations),
                        RouteValue::Root { .. } => "certified bracket".into(),
                    };
                    let _ = writeln!(s, "  {:<22}{:.12}  ({note})", k.name(), v.value());
                }
                let _ = writeln!(
                    s,
                    "agreement     {:.1e} (threshold {:.1e}): {}",
                    r.agreement,
                    r.threshold,
                    if r.consistent { "consistent" } else { "INCONSISTENT" }
                );
            }
            s
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn checks(results: &[CheckResult], format: Format) -> String {
    let status = |r: &CheckResult| if r.passed { "pass" } else { "FAIL" };
    match format {
        Format::Json => {
            let items: Vec<Value> = results
                .iter()
                .map(|r| json!({"n": r.n, "check": r.name, "passed": r.passed, "detail": r.detail}))
                .collect();
            json_text(&Value::Array(items))
        }
        Format::Csv => {
            let mut s = String::from("n,check,status,detail\n");
            for r in results {
                let _ = writeln!(s, "{},{},{},{}", r.n, r.name, status(r), csv_field(&r.detail));
            }
            s
        }
        Format::Plain => {
            let mut s = format!("{:>3}  {:<18}{:<6}detail\n", "n", "check", "status");
            for r in results {
                let _ = writeln!(s, "{:>3}  {:<18}{:<6}{}", r.n, r.name, status(r), r.detail);
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            let _ = writeln!(s, "{} checks, {failed} failed", results.len());
            s
        }
    }
}

pub fn table(rows: &[TableRow], format: Format) -> String {
    match format {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "lambda": r.lambda,
                        "entropy": r.entropy,
                        "lower": r.lower,
                        "upper": r.upper,
                        "gap": r.gap,
                    })
                })
                .collect();
            json_text(&Value::Array(items))
        }
        Format::Csv => {
            let mut s = String::from("n,lambda,entropy,lower,upper,gap\n");
            for r in rows {
                let lower = r.lower.map(|x| x.to_string()).unwrap_or_default();
                let _ = writeln!(s, "{},{},{},{lower},{},{}", r.n, r.lambda, r.entropy, r.upper, r.gap);
            }
            s
        }
        Format::Plain => {
            let mut s = format!(
                "{:>3}  {:>16}  {:>14}  {:>16}  {:>5}  {:>10}\n",
                "n", "lambda", "entropy", "lower", "upper", "gap"
            );
            for r in rows {
                let lower = r.lower.map_or_else(|| "-".to_string(), |x| format!("{x:.10}"));
                let _ = writeln!(
                    s,
                    "{:>3}  {:>16.10}  {:>14.10}  {:>16}  {:>5}  {:>10.3e}",
                    r.n, r.lambda, r.entropy, lower, r.upper, r.gap
                );
            }
            s
        }
    }
}
