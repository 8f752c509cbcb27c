//! Dunkl-Appell families and the operator weights they induce.
//!
//! A family is fixed by its generating series `Q(t) = Σ c_i t^i`; the
//! polynomials satisfy `Q(t) e_μ(xt) = Σ q_i(x) t^i / γ_μ(i)`. The weight the
//! operator `K_n^μ` puts on node `i` is `q_i(nx) / (γ_μ(i) Q(1) e_μ(nx))`,
//! i.e. the `t^i` coefficient of `Q(t) e_μ(nx t)` normalised by its value at
//! `t = 1`.

use crate::dunkl::DunklContext;
use crate::series::PowerSeries;
use crate::{Error, Result, Scalar};

/// Iteration ceiling for generating `(nx)^j / γ_μ(j)` past the weight cap.
const MAX_EXP_TERMS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Positivity {
    /// Every coefficient of `Q` is nonnegative, hence every `q_i ≥ 0` on `[0, ∞)`.
    ProvenByCoefficients,
    Unverified,
}

#[derive(Debug, Clone)]
pub struct AppellFamily<T> {
    ctx: DunklContext<T>,
    q: PowerSeries<T>,
    positivity: Positivity,
    q_at_1: T,
    /// Indices of the nonzero coefficients of `Q`.
    support: Vec<usize>,
    allow_unverified: bool,
}

/// Truncated weight sequence of `K_n^μ` at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence<T> {
    pub weights: Vec<T>,
    /// Mass carried by the weights that were not emitted.
    pub tail_mass: T,
    pub n: u32,
    pub x: T,
    pub mu: T,
}

impl<T: Scalar> WeightSequence<T> {
    /// Node `(i + 2μθ_i)/n` carrying weight `i`.
    pub fn node(&self, i: usize) -> T {
        let mut k = T::from_usize_lossy(i);
        if i % 2 == 1 {
            k = k + self.mu + self.mu;
        }
        k / T::from_u32(self.n).expect("n representable")
    }

    pub fn total_mass(&self) -> T {
        self.weights.iter().fold(T::zero(), |acc, &w| acc + w)
    }
}

impl<T: Scalar> AppellFamily<T> {
    pub fn from_coefficients(ctx: DunklContext<T>, coeffs: Vec<T>) -> Result<Self> {
        ctx.require_operator_domain()?;
        if coeffs.is_empty() {
            return Err(Error::Domain("generator needs at least one coefficient".into()));
        }
        if coeffs[0] == T::zero() {
            return Err(Error::NotAppellGenerator);
        }
        let q = PowerSeries::new(ctx.clone(), coeffs)?;
        let q_at_1 = q.eval(T::one())?;
        if q_at_1 <= T::zero() {
            return Err(Error::NormalizationUndefined(q_at_1.to_f64_lossy()));
        }
        let positivity = if q.coeffs().iter().all(|&c| c >= T::zero()) {
            Positivity::ProvenByCoefficients
        } else {
            Positivity::Unverified
        };
        let support = q
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != T::zero())
            .map(|(i, _)| i)
            .collect();
        Ok(Self {
            ctx,
            q,
            positivity,
            q_at_1,
            support,
            allow_unverified: false,
        })
    }

    /// `Q ≡ 1`: the Dunkl-Szász operator, and Szász-Mirakyan at `μ = 0`.
    pub fn unit(ctx: DunklContext<T>) -> Result<Self> {
        Self::from_coefficients(ctx, vec![T::one()])
    }

    /// Gould-Hopper family `Q(t) = exp(a t^{d+1})`, truncated after `t^degree_cap`.
    pub fn gould_hopper(ctx: DunklContext<T>, a: T, d: u32, degree_cap: usize) -> Result<Self> {
        if !a.is_finite() || a < T::zero() {
            return Err(Error::Domain(format!(
                "Gould-Hopper parameter a = {a} must be nonnegative"
            )));
        }
        if d == 0 {
            return Err(Error::Domain("Gould-Hopper order d must be at least 1".into()));
        }
        let stride = d as usize + 1;
        let mut coeffs = vec![T::zero(); degree_cap + 1];
        let mut term = T::one();
        let mut k = 0usize;
        while k * stride <= degree_cap {
            coeffs[k * stride] = term;
            k += 1;
            term = term * a / T::from_usize_lossy(k);
        }
        Self::from_coefficients(ctx, coeffs)
    }

    /// Lets operator evaluation proceed on a family whose positivity is not
    /// certified by its coefficients.
    pub fn allow_unverified(mut self) -> Self {
        self.allow_unverified = true;
        self
    }

    pub fn ctx(&self) -> &DunklContext<T> {
        &self.ctx
    }

    pub fn generator(&self) -> &PowerSeries<T> {
        &self.q
    }

    pub fn positivity(&self) -> Positivity {
        self.positivity
    }

    pub fn q_at_1(&self) -> T {
        self.q_at_1
    }

    /// `a_k = c_k γ_μ(k)`, the coefficient in the `γ_μ`-normalised basis.
    pub fn normalized_coefficient(&self, k: usize) -> Result<T> {
        Ok(self.q.coeff(k) * self.ctx.gamma(k)?)
    }

    /// Coefficients of `q_i` in powers of `x`:
    /// `[x^j] q_i = γ_μ(i)/(γ_μ(j) γ_μ(i-j)) · a_{i-j} = γ_μ(i) c_{i-j} / γ_μ(j)`.
    ///
    /// `Q` is taken as the polynomial it stores, so `c_k = 0` past its degree.
    pub fn appell_poly(&self, i: usize) -> Result<Vec<T>> {
        let gi = self.ctx.gamma(i)?;
        (0..=i)
            .map(|j| Ok(gi * self.q.coeff(i - j) / self.ctx.gamma(j)?))
            .collect()
    }

    /// Weights of `K_n^μ` at `x`.
    ///
    /// The sequence `u_j = (nx)^j / γ_μ(j)` comes from the ratio recurrence and
    /// is summed to machine precision (with rescaling, so large `nx` does not
    /// overflow) to normalise. Weights are emitted until the cumulative mass
    /// reaches `1 - tol` at an index past `nx`, or until `cap` weights exist.
    pub fn weights(&self, n: u32, x: T, tol: T, cap: usize) -> Result<WeightSequence<T>> {
        if self.positivity == Positivity::Unverified && !self.allow_unverified {
            return Err(Error::UnverifiedPositivity);
        }
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        if !x.is_finite() || x < T::zero() {
            return Err(Error::Domain(format!("x = {x} must be finite and nonnegative")));
        }
        if !(tol > T::zero()) {
            return Err(Error::Domain(format!("tolerance {tol} must be positive")));
        }
        if cap == 0 {
            return Err(Error::Domain("weight cap must be positive".into()));
        }

        let y = T::from_u32(n).expect("n representable") * x;
        let basis = ExpBasis::generate(&self.ctx, y, cap)?;
        let coeffs = self.q.coeffs();
        let norm = self.q_at_1 * basis.total;
        let last_nonzero = basis.stored.len() - 1 + self.q.degree();
        let mut mode = y.ceil().to_usize().unwrap_or(usize::MAX);
        if self.positivity == Positivity::Unverified {
            // sign changes can sit past the bulk; scan them before stopping
            mode = mode.saturating_add(self.q.degree());
        }
        let slack = T::tol(1e-12);

        let mut weights = Vec::new();
        let mut cumulative = T::zero();
        let mut stopped = false;
        for i in 0..cap {
            let mut acc = T::zero();
            for &k in self.support.iter().take_while(|&&k| k <= i) {
                if let Some(&u) = basis.stored.get(i - k) {
                    acc = acc + coeffs[k] * u;
                }
            }
            let mut w = acc / norm;
            if w < T::zero() {
                if w < -slack {
                    return Err(Error::PositivityViolation {
                        index: i,
                        weight: w.to_f64_lossy(),
                    });
                }
                w = T::zero();
            }
            weights.push(w);
            cumulative = cumulative + w;
            if (cumulative >= T::one() - tol && i >= mode) || (basis.complete && i >= last_nonzero) {
                stopped = true;
                break;
            }
        }

        let tail_mass = self.tail_mass(&basis, weights.len() - 1);
        if !stopped && tail_mass > tol {
            return Err(Error::TruncationFailure {
                cap,
                tail_mass: tail_mass.to_f64_lossy(),
                partial: weights.iter().map(|w| w.to_f64_lossy()).collect(),
            });
        }
        Ok(WeightSequence {
            weights,
            tail_mass,
            n,
            x,
            mu: self.ctx.mu(),
        })
    }

    /// Mass of the weights with index above `last`, summed from the pieces
    /// that the emitted weights did not use.
    fn tail_mass(&self, basis: &ExpBasis<T>, last: usize) -> T {
        let coeffs = self.q.coeffs();
        // suffix[m] = Σ_{k ≥ m} c_k
        let mut suffix = vec![T::zero(); coeffs.len() + 1];
        for k in (0..coeffs.len()).rev() {
            suffix[k] = suffix[k + 1] + coeffs[k];
        }
        let mut acc = T::zero();
        let mut stored_sum = T::zero();
        for (j, &u) in basis.stored.iter().enumerate() {
            stored_sum = stored_sum + u;
            let from = if j > last { 0 } else { last - j + 1 };
            if from < suffix.len() {
                acc = acc + u * suffix[from];
            }
        }
        let unstored = (basis.total - stored_sum).max(T::zero());
        (acc + unstored * self.q_at_1) / (self.q_at_1 * basis.total)
    }
}

/// `u_j = y^j / γ_μ(j)` sharing one scale factor, with their full sum.
struct ExpBasis<T> {
    /// `u_0 … u_{len-1}`, `len ≤ cap`.
    stored: Vec<T>,
    /// `Σ_j u_j` over all `j`, to machine precision.
    total: T,
    /// Every non-negligible `u_j` is in `stored`.
    complete: bool,
}

impl<T: Scalar> ExpBasis<T> {
    fn generate(ctx: &DunklContext<T>, y: T, cap: usize) -> Result<Self> {
        let mut stored = vec![T::one()];
        let mut total = T::one();
        if y == T::zero() {
            return Ok(Self {
                stored,
                total,
                complete: true,
            });
        }
        let big = T::max_value().sqrt();
        let inv = big.recip();
        let eps = T::epsilon();
        let mut u = T::one();
        let mut quiet = 0;
        let mut j = 0usize;
        loop {
            j += 1;
            if j > MAX_EXP_TERMS {
                return Err(Error::Range(format!("e_mu({y}) did not converge")));
            }
            u = u * y / ctx.step(j);
            total = total + u;
            if j < cap {
                stored.push(u);
            }
            if total > big {
                total = total * inv;
                u = u * inv;
                stored.iter_mut().for_each(|v| *v = *v * inv);
            }
            if T::from_usize_lossy(j) > y && u < eps * total {
                quiet += 1;
                if quiet == 3 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        Ok(Self {
            stored,
            total,
            complete: j < cap,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn ctx(mu: f64) -> DunklContext<f64> {
        DunklContext::new(mu).unwrap()
    }

    fn brute_dunkl_exp(c: &DunklContext<f64>, y: f64) -> f64 {
        (0..150).map(|j| y.powi(j as i32) / c.gamma(j).unwrap()).sum()
    }

    /// Weight `i` by the defining double sum, no recurrences.
    fn brute_weight(f: &AppellFamily<f64>, n: u32, x: f64, i: usize) -> f64 {
        let c = f.ctx();
        let y = n as f64 * x;
        let num: f64 = (0..=i)
            .map(|j| f.generator().coeff(i - j) * y.powi(j as i32) / c.gamma(j).unwrap())
            .sum();
        num / (f.q_at_1() * brute_dunkl_exp(c, y))
    }

    #[test]
    fn constructor_checks() {
        let unit = AppellFamily::unit(ctx(0.5)).unwrap();
        assert_eq!(unit.positivity(), Positivity::ProvenByCoefficients);
        assert!(matches!(
            AppellFamily::from_coefficients(ctx(0.0), vec![0.0, 1.0]),
            Err(Error::NotAppellGenerator)
        ));
        assert!(matches!(
            AppellFamily::from_coefficients(ctx(0.0), vec![1.0, -2.0]),
            Err(Error::NormalizationUndefined(_))
        ));
        assert!(matches!(
            AppellFamily::from_coefficients(ctx(-0.2), vec![1.0]),
            Err(Error::Domain(_))
        ));
        let mixed = AppellFamily::from_coefficients(ctx(0.0), vec![1.0, -0.5]).unwrap();
        assert_eq!(mixed.positivity(), Positivity::Unverified);
        assert!(matches!(
            mixed.weights(1, 1.0, 1e-12, 1000),
            Err(Error::UnverifiedPositivity)
        ));
    }

    #[test]
    fn classical_appell_polynomials() {
        // r(ω) = 1 + ω at μ = 0: q_i(x) = x^i/i! + x^{i-1}/(i-1)! in the
        // γ-normalised convention, so q_i(x) = x^i + i x^{i-1}.
        let f = AppellFamily::from_coefficients(ctx(0.0), vec![1.0, 1.0]).unwrap();
        assert_eq!(f.positivity(), Positivity::ProvenByCoefficients);
        for i in 0..8 {
            let q = f.appell_poly(i).unwrap();
            for (j, &v) in q.iter().enumerate() {
                let want = if j == i {
                    1.0
                } else if j + 1 == i {
                    i as f64
                } else {
                    0.0
                };
                assert_relative_eq!(v, want, max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn gould_hopper_coefficients() {
        let f = AppellFamily::gould_hopper(ctx(0.5), 0.0, 3, 10).unwrap();
        assert_eq!(f.q_at_1(), 1.0);
        let f = AppellFamily::gould_hopper(ctx(0.5), 0.5, 1, 8).unwrap();
        let want = [1.0, 0.0, 0.5, 0.0, 0.125, 0.0, 1.0 / 48.0, 0.0, 1.0 / 384.0];
        for (i, w) in want.iter().enumerate() {
            assert_relative_eq!(f.generator().coeff(i), *w, max_relative = 1e-15);
        }
        let f = AppellFamily::gould_hopper(ctx(0.0), 1.0, 2, 6).unwrap();
        assert_eq!(f.generator().coeffs(), &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.5]);
        assert!(AppellFamily::gould_hopper(ctx(0.0), -0.1, 1, 6).is_err());
        assert!(AppellFamily::gould_hopper(ctx(0.0), 0.1, 0, 6).is_err());
    }

    #[test]
    fn unit_family_polynomials_are_monomials() {
        let f = AppellFamily::unit(ctx(0.0)).unwrap();
        assert_eq!(f.appell_poly(0).unwrap(), vec![1.0]);
        let q5 = f.appell_poly(5).unwrap();
        assert_eq!(q5, vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn weights_at_zero_are_generator_coefficients() {
        let f = AppellFamily::gould_hopper(ctx(0.7), 0.5, 1, 30).unwrap();
        let w = f.weights(5, 0.0, 1e-14, 1000).unwrap();
        for (i, &wi) in w.weights.iter().enumerate() {
            assert_relative_eq!(wi, f.generator().coeff(i) / f.q_at_1(), max_relative = 1e-14);
        }
        assert!((w.total_mass() + w.tail_mass - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn unit_family_gives_poisson_weights() {
        let f = AppellFamily::unit(ctx(0.0)).unwrap();
        let w = f.weights(1, 2.0, 1e-15, 1000).unwrap();
        let mut p = (-2.0f64).exp();
        for (i, &wi) in w.weights.iter().enumerate() {
            assert!((wi - p).abs() <= 1e-12, "i={i}");
            p *= 2.0 / (i + 1) as f64;
        }
    }

    #[test]
    fn gould_hopper_weights_match_double_sum() {
        let f = AppellFamily::gould_hopper(ctx(0.5), 0.5, 1, 40).unwrap();
        let w = f.weights(10, 1.0, 1e-12, 10_000).unwrap();
        assert!((w.total_mass() + w.tail_mass - 1.0).abs() <= 1e-12);
        assert!(w.tail_mass <= 1e-12);
        for (i, &wi) in w.weights.iter().enumerate() {
            assert!((wi - brute_weight(&f, 10, 1.0, i)).abs() <= 1e-12, "i={i}");
        }
    }

    #[test]
    fn generating_function_round_trip() {
        let (mu, x) = (0.6, 1.3);
        let coeffs = vec![1.0, 0.3, 0.0, 0.7, 0.25, 0.1, 0.05, 0.4, 0.0, 0.2, 0.15];
        let f = AppellFamily::from_coefficients(ctx(mu), coeffs).unwrap();
        let e = PowerSeries::dunkl_exp_series(ctx(mu), x, 20).unwrap();
        let product = f.generator().multiply(&e).unwrap();
        for i in 0..=20 {
            let q = PowerSeries::new(ctx(mu), f.appell_poly(i).unwrap()).unwrap();
            let rhs = q.eval(x).unwrap() / ctx(mu).gamma(i).unwrap();
            assert!((product.coeff(i) - rhs).abs() <= 1e-10, "i={i}");
        }
    }

    #[test]
    fn truncation_failure_carries_partial_weights() {
        let f = AppellFamily::unit(ctx(0.5)).unwrap();
        match f.weights(10, 5.0, 1e-12, 20) {
            Err(Error::TruncationFailure { cap, tail_mass, partial }) => {
                assert_eq!(cap, 20);
                assert_eq!(partial.len(), 20);
                assert!(tail_mass > 0.5);
            }
            other => panic!("expected truncation failure, got {other:?}"),
        }
    }

    #[test]
    fn large_argument_does_not_overflow() {
        let f = AppellFamily::gould_hopper(ctx(1.0), 0.5, 1, 40).unwrap();
        let w = f.weights(1000, 2.0, 1e-12, 100_000).unwrap();
        assert!((w.total_mass() + w.tail_mass - 1.0).abs() <= 1e-12);
        let mean: f64 = w
            .weights
            .iter()
            .enumerate()
            .map(|(i, &wi)| wi * w.node(i))
            .sum();
        assert!((mean - 2.0).abs() < 1e-2);
    }

    #[test]
    fn overridden_family_with_negative_weights_is_rejected() {
        let f = AppellFamily::from_coefficients(ctx(0.0), vec![1.0, -0.9])
            .unwrap()
            .allow_unverified();
        assert!(matches!(
            f.weights(1, 0.0, 1e-12, 100),
            Err(Error::PositivityViolation { index: 1, .. })
        ));
        // weight 1 is proportional to y - 0.9
        assert!(f.weights(1, 0.5, 1e-12, 100).is_err());
    }

    #[test]
    fn single_precision_weights() {
        let c = DunklContext::new(0.5f32).unwrap();
        let f = AppellFamily::gould_hopper(c, 0.5, 1, 20).unwrap();
        let w = f.weights(10, 1.0, 1e-6, 10_000).unwrap();
        assert!((w.total_mass() + w.tail_mass - 1.0).abs() <= 1e-5);
    }

    proptest! {
        #[test]
        fn partition_of_unity(
            fam in 0usize..3,
            mu in 0.0f64..2.0,
            n in 1u32..80,
            x in 0.0f64..3.0,
        ) {
            let c = ctx(mu);
            let f = match fam {
                0 => AppellFamily::unit(c),
                1 => AppellFamily::gould_hopper(c, 0.5, 1, 40),
                _ => AppellFamily::gould_hopper(c, 0.3, 2, 40),
            }.unwrap();
            let w = f.weights(n, x, 1e-13, 100_000).unwrap();
            prop_assert!((w.total_mass() + w.tail_mass - 1.0).abs() <= 1e-12);
            prop_assert!(w.weights.iter().all(|&v| v >= 0.0));
        }
    }
}
