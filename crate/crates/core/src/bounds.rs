//! Moduli of continuity and the quantitative error estimates for `K_n^μ`.
//!
//! Three estimates are checked against the actual error `|K_n^μ f(x) - f(x)|`:
//!
//! * T2: `(1 + √(n Ω₂)) · w(f; 1/√n)` for uniformly continuous `f`;
//! * T3: `M Ω₂^{β/2}` for `f` Hölder with constant `M` and exponent `β`;
//! * T4: `(3/4)(2 + a + s²) w₂(f; s) + (2s²/a) ‖f‖` on `[0, a]`, `s = Ω₂^{1/4}`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::catalog::FunctionEntry;
use crate::operator::OperatorSpec;
use crate::{Error, Result, Scalar};

/// Floor for the second-modulus argument when `Ω₂ = 0`.
const S_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusKind {
    First,
    Second,
}

/// Grid estimate of a modulus of continuity. It is a lower estimate of the
/// true supremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusEstimate<T> {
    pub delta: T,
    pub value: T,
    pub window: (T, T),
    pub grid_step: T,
    pub kind: ModulusKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    T2,
    T3,
    T4,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::T2 => "T2",
            Theorem::T3 => "T3",
            Theorem::T4 => "T4",
        })
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "T2" => Ok(Theorem::T2),
            "T3" => Ok(Theorem::T3),
            "T4" => Ok(Theorem::T4),
            _ => Err(Error::Configuration(format!(
                "unknown theorem '{s}'; expected T2, T3 or T4"
            ))),
        }
    }
}

/// Where the modulus used by a bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusSource {
    Analytic,
    /// A grid estimate: a consistency check, not a proof.
    GridEstimate,
    /// The bound does not use a modulus (Hölder estimate).
    NotUsed,
}

/// The quantities a bound was assembled from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs<T> {
    pub theorem: Theorem,
    pub holder_m: Option<T>,
    pub beta: Option<T>,
    pub interval_end: Option<T>,
    pub sup_norm: Option<T>,
    /// `Ω₂^{1/4}`
    pub s: T,
    /// `√(n Ω₂)`
    pub lambda_n: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem4Bound<T> {
    pub value: T,
    pub s: T,
    /// `Ω₂ = 0` and `w₂` was evaluated at the floor argument instead of 0.
    pub floored: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRecord<T> {
    pub x: T,
    pub kf: T,
    pub fx: T,
    pub actual_error: T,
    pub omega1: T,
    pub omega2: T,
    pub bound: T,
    pub margin: T,
    pub floored: bool,
    pub inputs: BoundInputs<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub theorem: Theorem,
    pub n: u32,
    pub modulus_source: ModulusSource,
    pub records: Vec<BoundRecord<T>>,
    pub min_margin: T,
    pub violations: usize,
    pub slack: T,
}

impl<T: Scalar> BoundReport<T> {
    pub fn passes(&self) -> bool {
        self.violations == 0
    }
}

/// Knobs for [`verify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyParams<T> {
    /// Overrides the registry's Hölder pair for T3.
    pub holder: Option<(T, T)>,
    /// `a` for T4; defaults to the largest grid point.
    pub interval_end: Option<T>,
    /// Multiplies the modulus (or the Hölder constant). Values below 1 make a
    /// correct bound wrong and serve as a negative control.
    pub modulus_scale: T,
    /// A point violates its bound when `margin < -slack`.
    pub slack: T,
}

impl<T: Scalar> Default for VerifyParams<T> {
    fn default() -> Self {
        Self {
            holder: None,
            interval_end: None,
            modulus_scale: T::one(),
            slack: T::lit(1e-9),
        }
    }
}

fn grid_points<T: Scalar>(window: (T, T), step: T) -> Result<Vec<T>> {
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(Error::Domain(format!("window [{lo}, {hi}] is empty")));
    }
    let count = ((hi - lo) / step + T::lit(1e-9)).floor().to_usize().unwrap_or(0);
    Ok((0..=count)
        .map(|k| lo + T::from_usize_lossy(k) * step)
        .collect())
}

fn sample<T: Scalar>(f: &impl Fn(T) -> T, pts: &[T]) -> Result<Vec<T>> {
    pts.iter()
        .enumerate()
        .map(|(i, &t)| {
            let v = f(t);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFiniteValue {
                    index: i,
                    node: t.to_f64_lossy(),
                })
            }
        })
        .collect()
}

fn steps_within<T: Scalar>(length: T, step: T) -> usize {
    (length / step + T::lit(1e-9)).floor().to_usize().unwrap_or(0)
}

/// `max |f(u) - f(v)|` over grid pairs with `|u - v| ≤ delta`.
///
/// Equivalently the largest range of `f` over any run of grid points spanning
/// at most `delta`, found with monotone deques in one pass.
pub fn modulus1<T: Scalar>(
    f: impl Fn(T) -> T,
    delta: T,
    window: (T, T),
    grid_step: T,
) -> Result<ModulusEstimate<T>> {
    if !(delta > T::zero()) || !(grid_step > T::zero()) {
        return Err(Error::Domain("delta and grid step must be positive".into()));
    }
    if grid_step > delta / T::lit(8.0) * (T::one() + T::lit(1e-9)) {
        return Err(Error::Domain(format!(
            "grid step {grid_step} exceeds delta/8 = {}",
            delta / T::lit(8.0)
        )));
    }
    let pts = grid_points(window, grid_step)?;
    let vals = sample(&f, &pts)?;
    let span = steps_within(delta, grid_step);

    let mut maxq: VecDeque<usize> = VecDeque::new();
    let mut minq: VecDeque<usize> = VecDeque::new();
    let mut best = T::zero();
    for (j, &v) in vals.iter().enumerate() {
        while maxq.back().is_some_and(|&b| vals[b] <= v) {
            maxq.pop_back();
        }
        maxq.push_back(j);
        while minq.back().is_some_and(|&b| vals[b] >= v) {
            minq.pop_back();
        }
        minq.push_back(j);
        let start = j.saturating_sub(span);
        while maxq.front().is_some_and(|&i| i < start) {
            maxq.pop_front();
        }
        while minq.front().is_some_and(|&i| i < start) {
            minq.pop_front();
        }
        let range = vals[maxq[0]] - vals[minq[0]];
        best = best.max(range);
    }
    Ok(ModulusEstimate {
        delta,
        value: best,
        window,
        grid_step,
        kind: ModulusKind::First,
    })
}

/// `max |f(x + 2h) - 2f(x + h) + f(x)|` over grid `x` and grid `h ∈ (0, s]`.
pub fn modulus2<T: Scalar>(
    f: impl Fn(T) -> T,
    s: T,
    window: (T, T),
    grid_step: T,
) -> Result<ModulusEstimate<T>> {
    if !(s > T::zero()) || !(grid_step > T::zero()) {
        return Err(Error::Domain("s and grid step must be positive".into()));
    }
    if grid_step > s / T::lit(8.0) * (T::one() + T::lit(1e-9)) {
        return Err(Error::Domain(format!(
            "grid step {grid_step} exceeds s/8 = {}",
            s / T::lit(8.0)
        )));
    }
    let pts = grid_points(window, grid_step)?;
    if pts.len() < 3 {
        return Err(Error::Domain("window cannot hold a second difference".into()));
    }
    let vals = sample(&f, &pts)?;
    let max_h = steps_within(s, grid_step);
    let two = T::lit(2.0);
    let mut best = T::zero();
    for m in 1..=max_h {
        if 2 * m >= vals.len() {
            break;
        }
        for k in 0..vals.len() - 2 * m {
            best = best.max((vals[k + 2 * m] - two * vals[k + m] + vals[k]).abs());
        }
    }
    Ok(ModulusEstimate {
        delta: s,
        value: best,
        window,
        grid_step,
        kind: ModulusKind::Second,
    })
}

fn n_as<T: Scalar>(spec: &OperatorSpec<T>) -> T {
    T::from_u32(spec.n()).expect("n representable")
}

/// `(1 + √(n Ω₂(x))) · w(1/√n)`.
pub fn theorem2_bound<T: Scalar>(
    spec: &OperatorSpec<T>,
    x: T,
    w_provider: impl Fn(T) -> T,
) -> Result<T> {
    let omega2 = spec.central_moments(x)?.omega2;
    let n = n_as(spec);
    let lambda = (n * omega2).sqrt();
    Ok((T::one() + lambda) * w_provider(n.sqrt().recip()))
}

/// `M Ω₂(x)^{β/2}` for `0 < β ≤ 1`.
pub fn theorem3_bound<T: Scalar>(spec: &OperatorSpec<T>, x: T, m: T, beta: T) -> Result<T> {
    if !(m > T::zero()) {
        return Err(Error::Domain(format!("Hölder constant {m} must be positive")));
    }
    if !(beta > T::zero() && beta <= T::one()) {
        return Err(Error::Domain(format!("Hölder exponent {beta} must lie in (0, 1]")));
    }
    let omega2 = spec.central_moments(x)?.omega2;
    Ok(m * omega2.powf(beta * T::lit(0.5)))
}

/// `(3/4)(2 + a + s²) w₂(s) + (2s²/a) ‖f‖` with `s = Ω₂(x)^{1/4}`, for `x ∈ [0, a]`.
pub fn theorem4_bound<T: Scalar>(
    spec: &OperatorSpec<T>,
    x: T,
    interval_end: T,
    w2_provider: impl Fn(T) -> T,
    sup_norm: T,
) -> Result<Theorem4Bound<T>> {
    let a = interval_end;
    if !(a > T::zero()) {
        return Err(Error::Domain(format!("interval end {a} must be positive")));
    }
    if !(x >= T::zero() && x <= a * (T::one() + T::epsilon())) {
        return Err(Error::Domain(format!("x = {x} lies outside [0, {a}]")));
    }
    if !(sup_norm >= T::zero()) || !sup_norm.is_finite() {
        return Err(Error::Domain(format!("sup norm {sup_norm} must be finite and nonnegative")));
    }
    let omega2 = spec.central_moments(x)?.omega2;
    let s = omega2.sqrt().sqrt();
    let s2 = s * s;
    let floored = s == T::zero();
    let w2 = w2_provider(if floored { T::lit(S_FLOOR) } else { s });
    let value = T::lit(0.75) * (T::lit(2.0) + a + s2) * w2 + T::lit(2.0) * s2 / a * sup_norm;
    Ok(Theorem4Bound { value, s, floored })
}

type Provider<'a, T> = Box<dyn Fn(T) -> T + Sync + 'a>;

/// Evaluates `K_n^μ f` on `grid` and compares the error with the estimate of
/// `theorem` at every point.
///
/// Analytic moduli from the registry are used when present. Otherwise T2 and
/// T4 fall back to grid estimates on `[0, max(grid) + 3/√n + 1]` with step
/// `1e-3`; the report then carries [`ModulusSource::GridEstimate`]. T3 needs a
/// Hölder pair and T4 a bounded function; both are configuration errors when
/// missing.
pub fn verify<T: Scalar>(
    spec: &OperatorSpec<T>,
    entry: &FunctionEntry<T>,
    theorem: Theorem,
    grid: &[T],
    params: &VerifyParams<T>,
) -> Result<BoundReport<T>> {
    let n = n_as(spec);
    let scale = params.modulus_scale;
    let grid_max = grid.iter().copied().fold(T::zero(), T::max);
    let window = (T::zero(), grid_max + T::lit(3.0) / n.sqrt() + T::one());
    let est_step = T::lit(1e-3);
    let f = entry.eval;

    let mut holder = None;
    let mut interval_end = None;
    let mut sup_norm = None;
    let (source, provider): (ModulusSource, Provider<'_, T>) = match theorem {
        Theorem::T2 => match entry.modulus {
            Some(w) => (ModulusSource::Analytic, Box::new(move |d| scale * w(d))),
            None => {
                let delta = n.sqrt().recip();
                let est = modulus1(f, delta, window, est_step.min(delta / T::lit(8.0)))?;
                let value = est.value;
                (ModulusSource::GridEstimate, Box::new(move |_| scale * value))
            }
        },
        Theorem::T3 => {
            let (m, beta) = params.holder.or(entry.holder).ok_or_else(|| {
                Error::Configuration(format!("'{}' has no Hölder metadata", entry.name))
            })?;
            holder = Some((m, beta));
            (ModulusSource::NotUsed, Box::new(|_| T::zero()))
        }
        Theorem::T4 => {
            let norm = entry.sup_norm.ok_or_else(|| {
                Error::Configuration(format!(
                    "'{}' is unbounded on [0, inf); the second-modulus estimate needs a sup norm",
                    entry.name
                ))
            })?;
            sup_norm = Some(norm);
            let a = params.interval_end.unwrap_or(grid_max);
            if let Some(&bad) = grid.iter().find(|&&x| x > a) {
                return Err(Error::Configuration(format!(
                    "grid point {bad} lies beyond interval end {a}"
                )));
            }
            interval_end = Some(a);
            match entry.modulus2 {
                Some(w2) => (ModulusSource::Analytic, Box::new(move |s| scale * w2(s))),
                None => (
                    ModulusSource::GridEstimate,
                    Box::new(move |s: T| {
                        let step = est_step.min(s / T::lit(8.0));
                        modulus2(f, s, window, step)
                            .map(|e| scale * e.value)
                            .unwrap_or_else(|_| T::infinity())
                    }),
                ),
            }
        }
    };

    let mut records = Vec::with_capacity(grid.len());
    for &x in grid {
        let w = spec.weights(x)?;
        let kf = OperatorSpec::apply_weights(&w, f)?;
        let fx = f(x);
        let actual_error = (kf - fx).abs();
        let cm = spec.central_moments(x)?;
        let omega2 = cm.omega2;
        let mut floored = false;
        let bound = match theorem {
            Theorem::T2 => theorem2_bound(spec, x, &provider)?,
            Theorem::T3 => {
                let (m, beta) = holder.expect("set for T3");
                theorem3_bound(spec, x, scale * m, beta)?
            }
            Theorem::T4 => {
                let b = theorem4_bound(
                    spec,
                    x,
                    interval_end.expect("set for T4"),
                    &provider,
                    sup_norm.expect("set for T4"),
                )?;
                floored = b.floored;
                b.value
            }
        };
        records.push(BoundRecord {
            x,
            kf,
            fx,
            actual_error,
            omega1: cm.omega1,
            omega2,
            bound,
            margin: bound - actual_error,
            floored,
            inputs: BoundInputs {
                theorem,
                holder_m: holder.map(|h| h.0),
                beta: holder.map(|h| h.1),
                interval_end,
                sup_norm,
                s: omega2.sqrt().sqrt(),
                lambda_n: (n * omega2).sqrt(),
            },
        });
    }

    let min_margin = records
        .iter()
        .map(|r| r.margin)
        .fold(T::infinity(), T::min);
    let violations = records
        .iter()
        .filter(|r| r.margin < -params.slack)
        .count();
    Ok(BoundReport {
        theorem,
        n: spec.n(),
        modulus_source: source,
        records,
        min_margin,
        violations,
        slack: params.slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appell::AppellFamily;
    use crate::catalog::lookup;
    use crate::dunkl::DunklContext;

    fn unit(mu: f64, n: u32) -> OperatorSpec<f64> {
        let f = AppellFamily::unit(DunklContext::new(mu).unwrap()).unwrap();
        OperatorSpec::new(f, n, 1e-14, 1_000_000).unwrap()
    }

    fn gh(mu: f64, n: u32) -> OperatorSpec<f64> {
        let f = AppellFamily::gould_hopper(DunklContext::new(mu).unwrap(), 0.5, 1, 60).unwrap();
        OperatorSpec::new(f, n, 1e-14, 1_000_000).unwrap()
    }

    fn grid(step: f64, end: f64) -> Vec<f64> {
        let k = (end / step).round() as usize;
        (0..=k).map(|i| i as f64 * step).collect()
    }

    #[test]
    fn modulus1_examples() {
        let m = modulus1(|t: f64| t, 0.3, (0.0, 5.0), 1e-3).unwrap();
        assert!((m.value - 0.3).abs() <= 1e-3);
        let m = modulus1(f64::sin, 0.5, (0.0, 2.0 * std::f64::consts::PI), 1e-3).unwrap();
        assert!((m.value - 2.0 * 0.25f64.sin()).abs() <= 1e-3);
        let m = modulus1(|_| 4.2, 0.5, (0.0, 3.0), 1e-2).unwrap();
        assert_eq!(m.value, 0.0);
        assert!(modulus1(|t| t, 0.05, (0.0, 1.0), 0.01).is_err());
        assert!(modulus1(|t: f64| t.ln(), 0.1, (0.0, 1.0), 0.01).is_err());
    }

    #[test]
    fn modulus1_is_monotone_and_lipschitz_limited() {
        let f = |t: f64| (3.0 * t).sin() + 0.5 * t;
        let mut prev = 0.0;
        for delta in [0.05, 0.1, 0.2, 0.4, 0.8] {
            let m = modulus1(f, delta, (0.0, 4.0), 5e-3).unwrap();
            assert!(m.value >= prev);
            assert!(m.value <= 3.5 * delta + 2.0 * 3.5 * 5e-3);
            prev = m.value;
        }
    }

    #[test]
    fn modulus2_examples() {
        let m = modulus2(|t| 3.0 * t - 1.0, 0.4, (0.0, 4.0), 1e-3).unwrap();
        assert!(m.value <= 1e-12);
        let m = modulus2(|t: f64| t * t, 0.2, (0.0, 3.0), 1e-3).unwrap();
        assert!((m.value - 0.08).abs() <= 1e-9);
        let coarse = modulus2(f64::cos, 0.3, (0.0, 6.0), 1e-3).unwrap();
        let fine = modulus2(f64::cos, 0.3, (0.0, 6.0), 2.5e-4).unwrap();
        assert!((coarse.value - fine.value).abs() <= 1e-4);
        let m = modulus2(|_| 2.0, 0.3, (0.0, 1.0), 1e-2).unwrap();
        assert_eq!(m.value, 0.0);
    }

    #[test]
    fn theorem2_examples() {
        let s = unit(0.0, 100);
        let b = theorem2_bound(&s, 1.0, |d| d).unwrap();
        assert!((b - 0.2).abs() <= 1e-12);
        assert!(s.apply(|t| t, 1.0).unwrap() - 1.0 <= b);
        assert_eq!(theorem2_bound(&s, 1.0, |_| 0.0).unwrap(), 0.0);
        let at0 = theorem2_bound(&unit(0.5, 25), 0.0, |d| 3.0 * d).unwrap();
        assert!((at0 - 0.6).abs() <= 1e-15);
        assert!(unit(0.5, 25).apply(f64::sin, 0.0).unwrap().abs() <= 1e-300);
    }

    #[test]
    fn theorem3_examples() {
        for x in [0.0, 0.3, 1.0, 2.0] {
            let s = gh(0.5, 10);
            let b = theorem3_bound(&s, x, 1.0, 1.0).unwrap();
            let actual = (s.apply(|t| t, x).unwrap() - x).abs();
            assert!(actual <= b + 1e-12);
        }
        let s = unit(0.5, 10);
        for k in 1..=16 {
            let x = 0.25 * k as f64;
            let b = theorem3_bound(&s, x, 1.0, 0.5).unwrap();
            let actual = (s.apply(f64::sqrt, x).unwrap() - x.sqrt()).abs();
            assert!(actual <= b, "x={x}");
        }
        assert_eq!(theorem3_bound(&unit(0.0, 5), 0.0, 1.0, 1.0).unwrap(), 0.0);
        assert!(theorem3_bound(&s, 1.0, 1.0, 1.5).is_err());
        assert!(theorem3_bound(&s, 1.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn theorem4_examples() {
        let s = gh(0.5, 50);
        let cos = lookup::<f64>("cosx").unwrap();
        for x in grid(0.1, 2.0) {
            let b = theorem4_bound(&s, x, 2.0, cos.modulus2.unwrap(), 1.0).unwrap();
            let actual = (s.apply(f64::cos, x).unwrap() - x.cos()).abs();
            assert!(actual <= b.value);
            assert!(!b.floored);
        }
        // affine on the window: only the sup-norm term survives
        let u = unit(0.5, 50);
        let b = theorem4_bound(&u, 1.0, 2.0, |_| 0.0, 3.0).unwrap();
        let s2 = b.s * b.s;
        assert!((b.value - 2.0 * s2 / 2.0 * 3.0).abs() <= 1e-15);
        assert!((u.apply(|t| t, 1.0).unwrap() - 1.0).abs() <= b.value);
        // constant, Ω₂ = 0 at the origin
        let b = theorem4_bound(&unit(0.0, 10), 0.0, 2.0, |_| 0.0, 1.0).unwrap();
        assert!(b.floored);
        assert_eq!(b.value, 0.0);
        assert!(theorem4_bound(&u, 2.5, 2.0, |_| 0.0, 1.0).is_err());
    }

    #[test]
    fn verify_passes_on_true_theorems() {
        let g = grid(0.1, 2.0);
        let sin = lookup("sinx").unwrap();
        let sqrt = lookup("sqrtx").unwrap();
        for n in [10, 40, 160] {
            let spec = unit(0.5, n);
            let r = verify(&spec, &sin, Theorem::T2, &g, &VerifyParams::default()).unwrap();
            assert!(r.passes() && r.min_margin > 0.0);
            assert_eq!(r.modulus_source, ModulusSource::Analytic);
            let r = verify(&spec, &sqrt, Theorem::T3, &g, &VerifyParams::default()).unwrap();
            assert!(r.passes(), "n={n} min margin {}", r.min_margin);
        }
    }

    #[test]
    fn verify_detects_sabotage() {
        let g = grid(0.1, 2.0);
        let sin = lookup("sinx").unwrap();
        let spec = unit(0.5, 10);
        // the first-modulus estimate has ample room: halving it still holds
        let halved = VerifyParams {
            modulus_scale: 0.5,
            ..VerifyParams::default()
        };
        assert!(verify(&spec, &sin, Theorem::T2, &g, &halved).unwrap().passes());
        let crushed = VerifyParams {
            modulus_scale: 0.05,
            ..VerifyParams::default()
        };
        let r = verify(&spec, &sin, Theorem::T2, &g, &crushed).unwrap();
        assert!(r.violations > 0);
    }

    #[test]
    fn verify_metadata_requirements() {
        let g = grid(0.5, 2.0);
        let spec = unit(0.0, 10);
        let square = lookup("square").unwrap();
        assert!(matches!(
            verify(&spec, &square, Theorem::T3, &g, &VerifyParams::default()),
            Err(Error::Configuration(_))
        ));
        assert!(matches!(
            verify(&spec, &square, Theorem::T4, &g, &VerifyParams::default()),
            Err(Error::Configuration(_))
        ));
        let r = verify(&spec, &square, Theorem::T2, &g, &VerifyParams::default()).unwrap();
        assert_eq!(r.modulus_source, ModulusSource::GridEstimate);
        assert!(r.passes());
        let cos = lookup("cosx").unwrap();
        let beyond = VerifyParams {
            interval_end: Some(1.0),
            ..VerifyParams::default()
        };
        assert!(verify(&spec, &cos, Theorem::T4, &g, &beyond).is_err());
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in [Theorem::T2, Theorem::T3, Theorem::T4] {
            assert_eq!(t.to_string().parse::<Theorem>().unwrap(), t);
        }
        assert!("T9".parse::<Theorem>().is_err());
    }
}
