//! Evaluation of `K_n^μ(f; x)` and its closed-form moments.
//!
//! The raw moments `K(1)`, `K(ξ)`, `K(ξ²)` and the central moments
//! `Ω₁ = K(ξ - x)`, `Ω₂ = K((ξ - x)²)` are assembled from ten scalar
//! functionals of the generator `Q`, all obtained by composing series
//! transforms. Summing the weights against `ξ` and `ξ²` gives the same numbers
//! by a different route; the two are kept as mutual checks.

use crate::appell::{AppellFamily, WeightSequence};
use crate::{Error, Result, Scalar};

/// `K_n^μ` for one family and one `n`, with its truncation policy.
#[derive(Debug, Clone)]
pub struct OperatorSpec<T> {
    family: AppellFamily<T>,
    n: u32,
    tol: T,
    cap: usize,
    functionals: QFunctionals<T>,
}

/// Every functional of `Q` that enters the moment formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QFunctionals<T> {
    /// `Q(1)`
    pub q_at_1: T,
    /// `Q(-1)`
    pub q_at_minus_1: T,
    /// `Q′(1)`
    pub dq_at_1: T,
    /// `Q′(-1)`
    pub dq_at_minus_1: T,
    /// `Q″(1)`
    pub d2q_at_1: T,
    /// `(Λ_μ Q)(1)`
    pub lq_at_1: T,
    /// `(Λ_μ Q)(-1)`
    pub lq_at_minus_1: T,
    /// `(Λ_μ Q)′(1)`
    pub d_lq_at_1: T,
    /// `(Λ_μ Q′)(1)`
    pub l_dq_at_1: T,
    /// `(Λ_μ² Q)(1)`
    pub llq_at_1: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawMoments<T> {
    pub m0: T,
    pub m1: T,
    pub m2: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentSource {
    ClosedForm,
    SeriesSummed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralMoments<T> {
    pub omega1: T,
    pub omega2: T,
    pub source: MomentSource,
}

impl<T: Scalar> QFunctionals<T> {
    pub fn of(family: &AppellFamily<T>) -> Result<Self> {
        let q = family.generator();
        let dq = q.derivative();
        let lq = q.dunkl_derivative();
        let one = T::one();
        Ok(Self {
            q_at_1: q.eval(one)?,
            q_at_minus_1: q.eval(-one)?,
            dq_at_1: dq.eval(one)?,
            dq_at_minus_1: dq.eval(-one)?,
            d2q_at_1: dq.derivative().eval(one)?,
            lq_at_1: lq.eval(one)?,
            lq_at_minus_1: lq.eval(-one)?,
            d_lq_at_1: lq.derivative().eval(one)?,
            l_dq_at_1: dq.dunkl_derivative().eval(one)?,
            llq_at_1: lq.dunkl_derivative().eval(one)?,
        })
    }
}

impl<T: Scalar> OperatorSpec<T> {
    pub fn new(family: AppellFamily<T>, n: u32, tol: T, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        if !(tol > T::zero()) || !tol.is_finite() {
            return Err(Error::Domain(format!("tolerance {tol} must be positive")));
        }
        if cap == 0 {
            return Err(Error::Domain("weight cap must be positive".into()));
        }
        let functionals = QFunctionals::of(&family)?;
        Ok(Self {
            family,
            n,
            tol,
            cap,
            functionals,
        })
    }

    pub fn family(&self) -> &AppellFamily<T> {
        &self.family
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn functionals(&self) -> &QFunctionals<T> {
        &self.functionals
    }

    pub fn weights(&self, x: T) -> Result<WeightSequence<T>> {
        self.family.weights(self.n, x, self.tol, self.cap)
    }

    /// `K_n^μ(f; x)`.
    pub fn apply(&self, f: impl Fn(T) -> T, x: T) -> Result<T> {
        let w = self.weights(x)?;
        Self::apply_weights(&w, f)
    }

    /// Sums `f` against an already computed weight sequence.
    pub fn apply_weights(w: &WeightSequence<T>, f: impl Fn(T) -> T) -> Result<T> {
        let mut acc = T::zero();
        for (i, &wi) in w.weights.iter().enumerate() {
            if wi == T::zero() {
                continue;
            }
            let node = w.node(i);
            let v = f(node);
            if !v.is_finite() {
                return Err(Error::NonFiniteValue {
                    index: i,
                    node: node.to_f64_lossy(),
                });
            }
            acc = acc + wi * v;
        }
        Ok(acc)
    }

    /// `e_μ(-nx)/e_μ(nx)`, flushed to zero once negligible.
    pub fn exp_ratio(&self, x: T) -> Result<T> {
        let y = T::from_u32(self.n).expect("n representable") * x;
        let r = self
            .family
            .ctx()
            .dunkl_exp_neg_ratio(y, T::epsilon())?;
        let floor = T::lit(1e-300).max(T::min_positive_value());
        Ok(if r.abs() < floor { T::zero() } else { r })
    }

    /// Raw moments from the closed forms.
    pub fn moments_closed(&self, x: T) -> Result<RawMoments<T>> {
        check_x(x)?;
        let r = self.exp_ratio(x)?;
        let q = &self.functionals;
        let mu = self.family.ctx().mu();
        let n = T::from_u32(self.n).expect("n representable");
        let two = T::lit(2.0);
        let one_minus_r = T::one() - r;

        let m1 = x + (one_minus_r * q.dq_at_1 + r * q.lq_at_1) / (q.q_at_1 * n);

        let linear = (two * q.dq_at_1 + q.q_at_1 + two * mu * q.q_at_minus_1 * r) / (q.q_at_1 * n);
        let n2 = q.q_at_1 * n * n;
        let m2 = x * x
            + linear * x
            + q.lq_at_1 * r / n2
            + self.odd_bracket() * one_minus_r / n2
            + (q.llq_at_1 + two * mu * q.lq_at_minus_1) / n2;

        Ok(RawMoments {
            m0: T::one(),
            m1,
            m2,
        })
    }

    /// `2Q″(1) - (Λ_μQ)′(1) - (Λ_μQ′)(1) + Q′(1) - 2μQ′(-1)`.
    fn odd_bracket(&self) -> T {
        let q = &self.functionals;
        let mu = self.family.ctx().mu();
        let two = T::lit(2.0);
        two * q.d2q_at_1 - q.d_lq_at_1 - q.l_dq_at_1 + q.dq_at_1 - two * mu * q.dq_at_minus_1
    }

    /// `Ω₁`, `Ω₂` from their closed forms.
    ///
    /// `Ω₂` is also recombined as `m₂ - 2x m₁ + x²` from the raw moments; the
    /// two must agree, otherwise one of the formulas is mistyped.
    pub fn central_moments(&self, x: T) -> Result<CentralMoments<T>> {
        check_x(x)?;
        let r = self.exp_ratio(x)?;
        let q = &self.functionals;
        let mu = self.family.ctx().mu();
        let n = T::from_u32(self.n).expect("n representable");
        let two = T::lit(2.0);
        let one_minus_r = T::one() - r;
        let n2 = q.q_at_1 * n * n;

        let omega1 = (one_minus_r * q.dq_at_1 + r * q.lq_at_1) / (q.q_at_1 * n);
        let lead = T::one()
            + two * r * (mu * q.q_at_minus_1 + q.dq_at_1 - q.lq_at_1) / q.q_at_1;
        let omega2 = lead * x / n
            + r * q.lq_at_1 / n2
            + self.odd_bracket() * one_minus_r / n2
            + (q.llq_at_1 + two * mu * q.lq_at_minus_1) / n2;

        let raw = self.moments_closed(x)?;
        let recombined = raw.m2 - two * x * raw.m1 + x * x;
        let scale = omega2.abs().max(recombined.abs());
        let rounding = T::lit(64.0) * T::epsilon() * (raw.m2.abs() + two * x * raw.m1.abs() + x * x);
        if (omega2 - recombined).abs() > T::tol(1e-10) * scale + rounding {
            return Err(Error::Transcription(format!(
                "Omega2 closed form {omega2} disagrees with raw-moment combination {recombined} at x = {x}"
            )));
        }
        Ok(CentralMoments {
            omega1,
            omega2: clamp_nonnegative(omega2)?,
            source: MomentSource::ClosedForm,
        })
    }

    /// `Ω₁`, `Ω₂` by summing the weights.
    pub fn central_moments_summed(&self, x: T) -> Result<CentralMoments<T>> {
        let w = self.weights(x)?;
        let omega1 = Self::apply_weights(&w, |t| t - x)?;
        let omega2 = Self::apply_weights(&w, |t| (t - x) * (t - x))?;
        Ok(CentralMoments {
            omega1,
            omega2,
            source: MomentSource::SeriesSummed,
        })
    }

    /// Raw moments by summing the weights.
    pub fn moments_summed(&self, x: T) -> Result<RawMoments<T>> {
        let w = self.weights(x)?;
        Ok(RawMoments {
            m0: Self::apply_weights(&w, |_| T::one())?,
            m1: Self::apply_weights(&w, |t| t)?,
            m2: Self::apply_weights(&w, |t| t * t)?,
        })
    }
}

fn check_x<T: Scalar>(x: T) -> Result<()> {
    if x.is_finite() && x >= T::zero() {
        Ok(())
    } else {
        Err(Error::Domain(format!("x = {x} must be finite and nonnegative")))
    }
}

fn clamp_nonnegative<T: Scalar>(omega2: T) -> Result<T> {
    if omega2 >= T::zero() {
        Ok(omega2)
    } else if omega2 >= -T::tol(1e-12) {
        Ok(T::zero())
    } else {
        Err(Error::Transcription(format!("Omega2 = {omega2} is negative")))
    }
}
