//! The four table-producing subcommands.

use anyhow::{anyhow, bail, Result};
use dunkl_appell::{catalog, verify, Error, FunctionEntry64, OperatorSpec64, VerifyParams};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::report::Row;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Eval,
    Moments,
    Converge,
    Bounds,
}

impl Mode {
    pub fn default_function(self) -> &'static str {
        match self {
            Mode::Moments => "id",
            _ => "sinx",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// Sorted by `(n, x)`.
    pub rows: Vec<Row>,
    pub violations: usize,
    /// Human-readable lines for stderr.
    pub summary: Vec<String>,
}

/// Rewrites a core error so the message names the flag to change.
fn explain(e: Error, n: u32, x: f64) -> anyhow::Error {
    match e {
        Error::TruncationFailure { cap, tail_mass, .. } => anyhow!(
            "--cap: weights for n = {n}, x = {x} still miss mass {tail_mass:e} after {cap} terms; \
             raise --cap or --tol"
        ),
        Error::PositivityViolation { index, weight } => anyhow!(
            "--coeffs: weight {index} is {weight:e} < 0 at n = {n}, x = {x}; \
             the operator is not positive for this generator"
        ),
        Error::UnverifiedPositivity => anyhow!(
            "--coeffs: the generator has negative coefficients so positivity is unverified; \
             pass --allow-unverified to check the weights instead"
        ),
        Error::NonFiniteValue { index, node } => anyhow!(
            "--f: value at node {node} (index {index}) is not finite for n = {n}, x = {x}"
        ),
        other => anyhow!("n = {n}, x = {x}: {other}"),
    }
}

fn specs(cfg: &RunConfig) -> Result<Vec<OperatorSpec64>> {
    let family = cfg.family.build(cfg.mu)?;
    cfg.n_list
        .iter()
        .map(|&n| {
            OperatorSpec64::new(family.clone(), n, cfg.tol, cfg.cap)
                .map_err(|e| anyhow!("--n/--tol/--cap: {e}"))
        })
        .collect()
}

fn point_row(
    mode: Mode,
    spec: &OperatorSpec64,
    entry: &FunctionEntry64,
    x: f64,
) -> Result<Row> {
    let n = spec.n();
    let kf = spec.apply(entry.eval, x).map_err(|e| explain(e, n, x))?;
    let fx = entry.call(x);
    let mut row = Row::at(n, x);
    row.kf = Some(kf);
    row.f = Some(fx);
    row.abs_err = Some((kf - fx).abs());
    if matches!(mode, Mode::Moments | Mode::Converge) {
        let cm = spec.central_moments(x).map_err(|e| explain(e, n, x))?;
        row.omega1 = Some(cm.omega1);
        row.omega2 = Some(cm.omega2);
    }
    Ok(row)
}

pub fn run(mode: Mode, cfg: &RunConfig) -> Result<Outcome> {
    let entry = catalog::lookup::<f64>(&cfg.function).map_err(|e| anyhow!("--f: {e}"))?;
    let specs = specs(cfg)?;
    if mode == Mode::Bounds {
        return run_bounds(cfg, &specs, &entry);
    }

    let jobs: Vec<(usize, f64)> = (0..specs.len())
        .flat_map(|i| cfg.grid.iter().map(move |&x| (i, x)))
        .collect();
    let mut rows = jobs
        .par_iter()
        .map(|&(i, x)| point_row(mode, &specs[i], &entry, x))
        .collect::<Result<Vec<Row>>>()?;
    sort_rows(&mut rows);

    let summary = if mode == Mode::Converge {
        converge_summary(&rows, &cfg.n_list)
    } else {
        Vec::new()
    };
    Ok(Outcome {
        rows,
        violations: 0,
        summary,
    })
}

fn sort_rows(rows: &mut [Row]) {
    rows.sort_by(|a, b| a.n.cmp(&b.n).then(a.x.total_cmp(&b.x)));
}

/// Sup error per `n` and its ratio to the previous `n`.
pub fn sup_errors(rows: &[Row], n_list: &[u32]) -> Vec<(u32, f64)> {
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    ns.into_iter()
        .map(|n| {
            let sup = rows
                .iter()
                .filter(|r| r.n == n)
                .filter_map(|r| r.abs_err)
                .fold(0.0, f64::max);
            (n, sup)
        })
        .collect()
}

fn converge_summary(rows: &[Row], n_list: &[u32]) -> Vec<String> {
    let mut out = vec![format!("{:>8}  {:>24}  {:>10}", "n", "sup_err", "ratio")];
    let mut prev: Option<f64> = None;
    for (n, sup) in sup_errors(rows, n_list) {
        let ratio = prev
            .filter(|p| *p > 0.0)
            .map(|p| format!("{:.4}", sup / p))
            .unwrap_or_else(|| "-".into());
        out.push(format!("{n:>8}  {sup:>24.16e}  {ratio:>10}"));
        prev = Some(sup);
    }
    out
}

fn run_bounds(cfg: &RunConfig, specs: &[OperatorSpec64], entry: &FunctionEntry64) -> Result<Outcome> {
    let Some(theorem) = cfg.theorem else {
        bail!("--theorem is required for bounds (T2, T3 or T4)");
    };
    let holder = match (cfg.holder_m, cfg.beta) {
        (None, None) => None,
        (m, b) => {
            let (m0, b0) = entry.holder.unwrap_or((1.0, 1.0));
            Some((m.unwrap_or(m0), b.unwrap_or(b0)))
        }
    };
    let params = VerifyParams {
        holder,
        interval_end: cfg.interval_end,
        modulus_scale: cfg.modulus_scale,
        ..VerifyParams::default()
    };
    if cfg.grid.is_empty() {
        return Ok(Outcome {
            rows: Vec::new(),
            violations: 0,
            summary: Vec::new(),
        });
    }

    let reports = specs
        .par_iter()
        .map(|spec| {
            verify(spec, entry, theorem, &cfg.grid, &params).map_err(|e| match e {
                Error::Configuration(msg) => anyhow!("--theorem {theorem}: {msg}"),
                Error::Domain(msg) => anyhow!("--theorem {theorem} parameters: {msg}"),
                other => explain(other, spec.n(), f64::NAN),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    let mut summary = Vec::new();
    let mut violations = 0;
    for rep in &reports {
        violations += rep.violations;
        summary.push(format!(
            "{} f={} n={}: min margin {:.6e}, {} violation(s), modulus {:?}{}",
            rep.theorem,
            entry.name,
            rep.n,
            rep.min_margin,
            rep.violations,
            rep.modulus_source,
            match rep.modulus_source {
                dunkl_appell::ModulusSource::GridEstimate => " (consistency check, not proof)",
                _ => "",
            }
        ));
        if rep.records.iter().any(|r| r.floored) {
            summary.push(format!(
                "{} n={}: Ω₂ = 0 at some x; second modulus evaluated at the 1e-8 floor",
                rep.theorem, rep.n
            ));
        }
        for r in &rep.records {
            rows.push(Row {
                x: r.x,
                n: rep.n,
                kf: Some(r.kf),
                f: Some(r.fx),
                abs_err: Some(r.actual_error),
                omega1: Some(r.omega1),
                omega2: Some(r.omega2),
                bound: Some(r.bound),
                margin: Some(r.margin),
                theorem: Some(rep.theorem.to_string()),
            });
        }
    }
    sort_rows(&mut rows);
    Ok(Outcome {
        rows,
        violations,
        summary,
    })
}
