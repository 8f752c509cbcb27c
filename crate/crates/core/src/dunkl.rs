//! Scalar Dunkl primitives.
//!
//! The generalised factorials satisfy `γ_μ(0) = 1` and
//! `γ_μ(i+1) = (i + 1 + 2μθ_{i+1}) γ_μ(i)`, where `θ_i` is the parity of `i`.
//! The Dunkl exponential is `e_μ(x) = Σ x^i / γ_μ(i)`; at `μ = 0` it is `e^x`.

use std::fmt;
use std::sync::{Arc, RwLock};

use crate::{Error, Result, Scalar};

/// Iteration ceiling for the series loops; far beyond any argument whose
/// value is representable.
const MAX_TERMS: usize = 10_000_000;

/// Number of consecutive negligible terms required before a series stops.
const QUIET_RUN: usize = 3;

/// Parity indicator: 0 for even `i`, 1 for odd `i`.
#[inline]
pub fn theta(i: usize) -> usize {
    i & 1
}

/// The Dunkl parameter `μ` together with a memo of `γ_μ(0), γ_μ(1), …`.
///
/// Clones share the memo. The memo is guarded by a lock, so a context can be
/// read from several threads; every value it hands out is a pure function of
/// `μ` and the index.
#[derive(Clone)]
pub struct DunklContext<T> {
    mu: T,
    gamma_cache: Arc<RwLock<Vec<T>>>,
}

impl<T: fmt::Debug> fmt::Debug for DunklContext<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DunklContext").field("mu", &self.mu).finish()
    }
}

/// Result of a Dunkl exponential evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpEvaluation<T> {
    pub value: T,
    pub terms_used: usize,
    /// Geometric estimate of the absolute truncation error.
    pub tail_bound: T,
}

impl<T: Scalar> DunklContext<T> {
    /// Builds a context for `μ > -1/2`.
    ///
    /// Negative `μ` is accepted for the scalar primitives and the series
    /// calculus only; see [`DunklContext::is_operator_admissible`].
    pub fn new(mu: T) -> Result<Self> {
        if !mu.is_finite() || mu <= T::lit(-0.5) {
            return Err(Error::Domain(format!(
                "mu = {mu} must be finite and greater than -1/2"
            )));
        }
        Ok(Self {
            mu,
            gamma_cache: Arc::new(RwLock::new(vec![T::one()])),
        })
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    /// Positive linear operators need `μ ≥ 0`.
    pub fn is_operator_admissible(&self) -> bool {
        self.mu >= T::zero()
    }

    pub fn require_operator_domain(&self) -> Result<()> {
        if self.is_operator_admissible() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "mu = {} is negative; the operators require mu >= 0",
                self.mu
            )))
        }
    }

    pub fn same_parameter(&self, other: &Self) -> bool {
        self.mu == other.mu
    }

    /// `i + 2μθ_i`: the factor `γ_μ(i)/γ_μ(i-1)`, which is also the action of
    /// `Λ_μ` on `t^i` and the numerator of the operator node `(i + 2μθ_i)/n`.
    #[inline]
    pub fn step(&self, i: usize) -> T {
        let base = T::from_usize_lossy(i);
        if theta(i) == 1 {
            base + (self.mu + self.mu)
        } else {
            base
        }
    }

    /// `γ_μ(i)` by the product recursion, memoised.
    pub fn gamma(&self, i: usize) -> Result<T> {
        {
            let cache = self.gamma_cache.read().expect("gamma cache poisoned");
            if let Some(&g) = cache.get(i) {
                return Ok(g);
            }
        }
        let mut cache = self.gamma_cache.write().expect("gamma cache poisoned");
        while cache.len() <= i {
            let k = cache.len();
            let next = cache[k - 1] * self.step(k);
            if !next.is_finite() {
                return Err(Error::Range(format!(
                    "gamma_mu({k}) overflows for mu = {}",
                    self.mu
                )));
            }
            cache.push(next);
        }
        Ok(cache[i])
    }

    /// Evaluates `e_μ(x)`.
    ///
    /// For `x ≥ 0` the defining series is summed with the term ratio
    /// `x / (i + 1 + 2μθ_{i+1})`. The alternating series at `x < 0` is not
    /// summed directly; instead `e_μ(x) = e^{x} M(μ, 2μ+1, -2x)` with the
    /// confluent hypergeometric series `M`, whose terms are all of one sign
    /// for `μ ≥ 0`.
    pub fn dunkl_exp(&self, x: T, tol: T) -> Result<ExpEvaluation<T>> {
        check_tol(tol)?;
        if !x.is_finite() {
            return Err(Error::Domain(format!("dunkl_exp argument {x} is not finite")));
        }
        if x == T::zero() {
            return Ok(ExpEvaluation {
                value: T::one(),
                terms_used: 1,
                tail_bound: T::zero(),
            });
        }
        if x > T::zero() {
            self.exp_direct(x, tol)
        } else {
            self.exp_kummer(x, tol)
        }
    }

    fn exp_direct(&self, x: T, tol: T) -> Result<ExpEvaluation<T>> {
        let mut term = T::one();
        let mut sum = T::one();
        let mut quiet = 0;
        let mut i = 0;
        loop {
            i += 1;
            if i > MAX_TERMS {
                return Err(Error::Range(format!("dunkl_exp({x}) did not converge")));
            }
            term = term * x / self.step(i);
            sum = sum + term;
            if !sum.is_finite() {
                return Err(Error::Range(format!(
                    "dunkl_exp({x}) overflows for mu = {}",
                    self.mu
                )));
            }
            if T::from_usize_lossy(i) > x && term.abs() < tol * sum.abs() {
                quiet += 1;
                if quiet == QUIET_RUN {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        let tail_bound = geometric_tail(term, x / self.min_step(i + 1));
        Ok(ExpEvaluation {
            value: sum,
            terms_used: i + 1,
            tail_bound,
        })
    }

    fn exp_kummer(&self, x: T, tol: T) -> Result<ExpEvaluation<T>> {
        let z = -(x + x);
        let b = self.mu + self.mu + T::one();
        let sum = ScaledSum::kummer(self.mu, b, z, tol)?;
        let scale = (x + sum.log_scale).exp();
        let value = sum.mantissa * scale;
        let tail_bound = sum.tail * scale;
        if !value.is_finite() {
            return Err(Error::Range(format!("dunkl_exp({x}) is not representable")));
        }
        Ok(ExpEvaluation {
            value,
            terms_used: sum.terms,
            tail_bound,
        })
    }

    /// `e_μ(-y)/e_μ(y)` for `y ≥ 0`.
    ///
    /// Both exponentials are taken in the form `e^{-y} M(·, 2μ+1, 2y)`; the
    /// common factor `e^{-y}` cancels and the two `M` series are summed in
    /// lockstep under a shared scale, so the ratio stays finite long after
    /// `e_μ(y)` itself overflows.
    pub fn dunkl_exp_neg_ratio(&self, y: T, tol: T) -> Result<T> {
        check_tol(tol)?;
        if !y.is_finite() || y < T::zero() {
            return Err(Error::Domain(format!(
                "ratio argument {y} must be finite and nonnegative"
            )));
        }
        if y == T::zero() {
            return Ok(T::one());
        }
        let z = y + y;
        let b = self.mu + self.mu + T::one();
        let big = T::max_value().sqrt();
        let mut num_term = T::one();
        let mut den_term = T::one();
        let mut num = T::one();
        let mut den = T::one();
        let mut quiet = 0;
        let mut k = 0;
        loop {
            let kt = T::from_usize_lossy(k);
            let common = z / ((b + kt) * (kt + T::one()));
            num_term = num_term * (self.mu + kt) * common;
            den_term = den_term * (self.mu + T::one() + kt) * common;
            num = num + num_term;
            den = den + den_term;
            k += 1;
            if k > MAX_TERMS {
                return Err(Error::Range(format!("ratio at y = {y} did not converge")));
            }
            if den.abs() > big {
                let inv = big.recip();
                num = num * inv;
                den = den * inv;
                num_term = num_term * inv;
                den_term = den_term * inv;
            }
            if !(num.is_finite() && den.is_finite()) {
                return Err(Error::Range(format!("ratio at y = {y} overflowed")));
            }
            let small = den_term.abs() < tol * den.abs() && num_term.abs() <= tol * den.abs();
            if kt > z && small {
                quiet += 1;
                if quiet == QUIET_RUN {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        Ok(num / den)
    }

    /// Lower bound on `step(j)` for all `j ≥ i`.
    fn min_step(&self, i: usize) -> T {
        T::from_usize_lossy(i) + (self.mu + self.mu).min(T::zero())
    }
}

fn check_tol<T: Scalar>(tol: T) -> Result<()> {
    if tol > T::zero() && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("tolerance {tol} must be positive")))
    }
}

/// Tail of a series whose terms shrink by at least `ratio` per step.
fn geometric_tail<T: Scalar>(last: T, ratio: T) -> T {
    let r = ratio.abs();
    if r < T::one() {
        last.abs() * r / (T::one() - r)
    } else {
        T::infinity()
    }
}

/// A sum represented as `mantissa · exp(log_scale)`.
struct ScaledSum<T> {
    mantissa: T,
    log_scale: T,
    tail: T,
    terms: usize,
}

impl<T: Scalar> ScaledSum<T> {
    /// Kummer's `M(a, b, z) = Σ (a)_k z^k / ((b)_k k!)` for `z > 0`, `b > 0`.
    fn kummer(a: T, b: T, z: T, tol: T) -> Result<Self> {
        let big = T::max_value().sqrt();
        let log_big = big.ln();
        let mut term = T::one();
        let mut sum = T::one();
        let mut log_scale = T::zero();
        let mut quiet = 0;
        let mut k = 0;
        loop {
            let kt = T::from_usize_lossy(k);
            term = term * (a + kt) * z / ((b + kt) * (kt + T::one()));
            sum = sum + term;
            k += 1;
            if k > MAX_TERMS {
                return Err(Error::Range(format!("M({a}, {b}, {z}) did not converge")));
            }
            if sum.abs() > big {
                let inv = big.recip();
                sum = sum * inv;
                term = term * inv;
                log_scale = log_scale + log_big;
            }
            if T::from_usize_lossy(k) > z && term.abs() < tol * sum.abs() {
                quiet += 1;
                if quiet == QUIET_RUN {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        let kt = T::from_usize_lossy(k);
        let ratio = (a + kt).abs() * z / ((b + kt) * (kt + T::one()));
        Ok(Self {
            mantissa: sum,
            log_scale,
            tail: geometric_tail(term, ratio),
            terms: k + 1,
        })
    }
}
