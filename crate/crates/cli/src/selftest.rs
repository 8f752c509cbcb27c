//! Randomized consistency suites behind `selftest --seed`.

use anyhow::Result;
use dunkl_appell::{AppellFamily64, DunklContext64, OperatorSpec64, PowerSeries64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Largest observed discrepancy.
    pub worst: f64,
    pub tolerance: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl std::fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {:<20} {}/{} within {:e} (worst {:.3e})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases - self.failures,
            self.cases,
            self.tolerance,
            self.worst
        )
    }
}

struct Tally {
    name: &'static str,
    tolerance: f64,
    cases: usize,
    failures: usize,
    worst: f64,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            cases: 0,
            failures: 0,
            worst: 0.0,
        }
    }

    fn record(&mut self, err: f64) {
        self.cases += 1;
        self.worst = self.worst.max(err);
        if !(err <= self.tolerance) {
            self.failures += 1;
        }
    }

    fn done(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            worst: self.worst,
            tolerance: self.tolerance,
        }
    }
}

fn random_series(rng: &mut ChaCha8Rng, ctx: &DunklContext64, max_len: usize) -> Result<PowerSeries64> {
    let len = rng.gen_range(1..=max_len);
    let c = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Ok(PowerSeries64::new(ctx.clone(), c)?)
}

/// Nonnegative generator with `c_0 > 0`, degree at most 10.
fn random_family(rng: &mut ChaCha8Rng, ctx: &DunklContext64) -> Result<AppellFamily64> {
    let len = rng.gen_range(1..=11);
    let mut c: Vec<f64> = (0..len)
        .map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..1.0) })
        .collect();
    c[0] = rng.gen_range(0.1..1.0);
    Ok(AppellFamily64::from_coefficients(ctx.clone(), c)?)
}

fn max_coeff_diff(a: &PowerSeries64, b: &PowerSeries64) -> f64 {
    let len = a.coeffs().len().max(b.coeffs().len());
    (0..len)
        .map(|i| (a.coeff(i) - b.coeff(i)).abs())
        .fold(0.0, f64::max)
}

pub fn product_rule(rng: &mut ChaCha8Rng, cases: usize) -> Result<SuiteResult> {
    let mut t = Tally::new("product-rule", 1e-11);
    for _ in 0..cases {
        let ctx = DunklContext64::new(rng.gen_range(0.0..2.0))?;
        let a = random_series(rng, &ctx, 11)?;
        let b = random_series(rng, &ctx, 11)?;
        let lhs = a.multiply(&b)?.dunkl_derivative();
        let rb = b.reflect();
        let rhs = a
            .multiply(&b.dunkl_derivative())?
            .add(&rb.multiply(&a.dunkl_derivative())?)?
            .add(&a.derivative().multiply(&b.sub(&rb)?)?)?;
        t.record(max_coeff_diff(&lhs, &rhs));
    }
    Ok(t.done())
}

/// `Q(t) e_μ(xt)` against `Σ q_i(x) t^i / γ_μ(i)`, coefficientwise.
pub fn round_trip(rng: &mut ChaCha8Rng, cases: usize) -> Result<SuiteResult> {
    let mut t = Tally::new("generating-function", 1e-10);
    let degree = 20;
    for _ in 0..cases {
        let ctx = DunklContext64::new(rng.gen_range(0.0..2.0))?;
        let family = random_family(rng, &ctx)?;
        let x = rng.gen_range(0.0..2.0);
        let product = family
            .generator()
            .multiply(&PowerSeries64::dunkl_exp_series(ctx.clone(), x, degree)?)?;
        let mut worst: f64 = 0.0;
        for i in 0..=degree {
            let q = PowerSeries64::new(ctx.clone(), family.appell_poly(i)?)?;
            let rhs = q.eval(x)? / ctx.gamma(i)?;
            worst = worst.max((product.coeff(i) - rhs).abs());
        }
        t.record(worst);
    }
    Ok(t.done())
}

/// Closed-form moments against weighted sums, plus partition of unity.
pub fn moments(rng: &mut ChaCha8Rng, cases: usize) -> Result<(SuiteResult, SuiteResult)> {
    let mut m = Tally::new("moment-equivalence", 1e-8);
    let mut p = Tally::new("partition-of-unity", 1e-12);
    for _ in 0..cases {
        let ctx = DunklContext64::new(rng.gen_range(0.0..1.5))?;
        let family = if rng.gen_bool(0.5) {
            let d = rng.gen_range(1..=2);
            AppellFamily64::gould_hopper(ctx, rng.gen_range(0.0..1.0), d, 64)?
        } else {
            random_family(rng, &ctx)?
        };
        let spec = OperatorSpec64::new(family, rng.gen_range(1..=50), 1e-14, 100_000)?;
        let x = rng.gen_range(0.0..3.0);
        let closed = spec.moments_closed(x)?;
        let summed = spec.moments_summed(x)?;
        m.record(
            (closed.m1 - summed.m1)
                .abs()
                .max((closed.m2 - summed.m2).abs()),
        );
        let w = spec.weights(x)?;
        p.record((w.total_mass() + w.tail_mass - 1.0).abs());
    }
    Ok((m.done(), p.done()))
}

pub fn run_all(seed: u64, cases: usize) -> Result<Vec<SuiteResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![product_rule(&mut rng, cases)?, round_trip(&mut rng, cases)?];
    let (m, p) = moments(&mut rng, cases)?;
    out.push(m);
    out.push(p);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_and_are_reproducible() {
        let a = run_all(7, 20).unwrap();
        assert!(a.iter().all(SuiteResult::passed), "{a:?}");
        assert_eq!(a, run_all(7, 20).unwrap());
    }
}
