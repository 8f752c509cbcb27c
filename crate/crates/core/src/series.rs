//! Truncated power series `Σ c_i t^i` in the plain monomial basis.
//!
//! The Dunkl operator acts on monomials as `Λ_μ t^j = (j + 2μθ_j) t^{j-1}`, so
//! on coefficients it is a shift with a per-index factor. Every series carries
//! the [`DunklContext`] whose `μ` that factor uses.

use crate::dunkl::DunklContext;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone)]
pub struct PowerSeries<T> {
    ctx: DunklContext<T>,
    coeffs: Vec<T>,
}

impl<T: Scalar> PowerSeries<T> {
    pub fn new(ctx: DunklContext<T>, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a series needs at least one coefficient".into()));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::Domain(format!("coefficient {i} is not finite")));
        }
        Ok(Self { ctx, coeffs })
    }

    pub fn constant(ctx: DunklContext<T>, c: T) -> Result<Self> {
        Self::new(ctx, vec![c])
    }

    /// Coefficients of `e_μ(x t)` up to `t^degree`: `x^i / γ_μ(i)`.
    pub fn dunkl_exp_series(ctx: DunklContext<T>, x: T, degree: usize) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut term = T::one();
        coeffs.push(term);
        for i in 1..=degree {
            term = term * x / ctx.step(i);
            coeffs.push(term);
        }
        Self::new(ctx, coeffs)
    }

    pub fn ctx(&self) -> &DunklContext<T> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^i`; zero past the stored degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).copied().unwrap_or_else(T::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: T) -> Result<T> {
        let value = self
            .coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * t + c);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Range(format!("series value at t = {t} is not finite")))
        }
    }

    pub fn derivative(&self) -> Self {
        self.lowered(|i| T::from_usize_lossy(i))
    }

    /// `Λ_μ` applied coefficientwise; twice gives `Λ_μ²`.
    pub fn dunkl_derivative(&self) -> Self {
        let ctx = self.ctx.clone();
        self.lowered(move |i| ctx.step(i))
    }

    fn lowered(&self, factor: impl Fn(usize) -> T) -> Self {
        let coeffs = if self.coeffs.len() == 1 {
            vec![T::zero()]
        } else {
            (1..self.coeffs.len())
                .map(|i| factor(i) * self.coeffs[i])
                .collect()
        };
        Self {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// `t ↦ S(-t)`.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
            .collect();
        Self {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// Cauchy product; the result has `len(A) + len(B) - 1` coefficients.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == T::zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        Self::new(self.ctx.clone(), coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: T) -> Self {
        Self {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(T, T) -> T) -> Result<Self> {
        self.check_ctx(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| op(self.coeff(i), other.coeff(i)))
            .collect();
        Self::new(self.ctx.clone(), coeffs)
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx.same_parameter(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(
                self.ctx.mu().to_f64_lossy(),
                other.ctx.mu().to_f64_lossy(),
            ))
        }
    }
}
