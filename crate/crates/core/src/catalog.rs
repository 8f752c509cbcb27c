//! Registry of test functions with their analytic metadata.
//!
//! Moduli are sups over the whole half-line `[0, ∞)`.

use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy)]
pub struct FunctionEntry<T> {
    pub name: &'static str,
    pub eval: fn(T) -> T,
    /// `δ ↦ w(f; δ)`
    pub modulus: Option<fn(T) -> T>,
    /// `s ↦ w₂(f; s)`
    pub modulus2: Option<fn(T) -> T>,
    /// `(M, β)` with `|f(u) - f(v)| ≤ M |u - v|^β`.
    pub holder: Option<(T, T)>,
    /// `sup |f|` over `[0, ∞)`, present iff the function is bounded there.
    pub sup_norm: Option<T>,
}

impl<T: Scalar> FunctionEntry<T> {
    pub fn bounded(&self) -> bool {
        self.sup_norm.is_some()
    }

    pub fn call(&self, t: T) -> T {
        (self.eval)(t)
    }
}

pub const NAMES: [&str; 7] = ["const1", "id", "square", "sinx", "cosx", "sqrtx", "expnegx"];

pub fn registry<T: Scalar>() -> Vec<FunctionEntry<T>> {
    let one = T::one();
    vec![
        FunctionEntry {
            name: "const1",
            eval: |_| T::one(),
            modulus: Some(|_| T::zero()),
            modulus2: Some(|_| T::zero()),
            holder: Some((one, one)),
            sup_norm: Some(one),
        },
        FunctionEntry {
            name: "id",
            eval: |t| t,
            modulus: Some(|d| d),
            modulus2: Some(|_| T::zero()),
            holder: Some((one, one)),
            sup_norm: None,
        },
        FunctionEntry {
            name: "square",
            eval: |t| t * t,
            // not uniformly continuous on [0, ∞)
            modulus: None,
            modulus2: Some(|s| T::lit(2.0) * s * s),
            holder: None,
            sup_norm: None,
        },
        FunctionEntry {
            name: "sinx",
            eval: |t| t.sin(),
            modulus: Some(trig_modulus),
            modulus2: Some(trig_modulus2),
            holder: Some((one, one)),
            sup_norm: Some(one),
        },
        FunctionEntry {
            name: "cosx",
            eval: |t| t.cos(),
            modulus: Some(trig_modulus),
            modulus2: Some(trig_modulus2),
            holder: Some((one, one)),
            sup_norm: Some(one),
        },
        FunctionEntry {
            name: "sqrtx",
            eval: |t| t.sqrt(),
            modulus: Some(|d| d.sqrt()),
            // second difference is largest at the origin
            modulus2: Some(|s| (T::lit(2.0) - T::SQRT_2()) * s.sqrt()),
            holder: Some((one, T::lit(0.5))),
            sup_norm: None,
        },
        FunctionEntry {
            name: "expnegx",
            eval: |t| (-t).exp(),
            modulus: Some(|d| T::one() - (-d).exp()),
            modulus2: Some(|s| {
                let g = T::one() - (-s).exp();
                g * g
            }),
            holder: Some((one, one)),
            sup_norm: Some(one),
        },
    ]
}

/// `2 sin(min(δ, π)/2)`
fn trig_modulus<T: Scalar>(delta: T) -> T {
    T::lit(2.0) * (delta.min(T::PI()) * T::lit(0.5)).sin()
}

/// `4 sin²(min(s, π)/2)`
fn trig_modulus2<T: Scalar>(s: T) -> T {
    let h = (s.min(T::PI()) * T::lit(0.5)).sin();
    T::lit(4.0) * h * h
}

pub fn lookup<T: Scalar>(name: &str) -> Result<FunctionEntry<T>> {
    registry()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| {
            Error::Configuration(format!(
                "unknown function '{name}'; expected one of {}",
                NAMES.join(", ")
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete() {
        let names: Vec<_> = registry::<f64>().iter().map(|e| e.name).collect();
        assert_eq!(names, NAMES);
        assert!(lookup::<f64>("tanx").is_err());
    }

    /// Analytic moduli must dominate dense brute-force estimates on a window.
    #[test]
    fn analytic_moduli_dominate_dense_estimates() {
        let h = 2e-3;
        let pts: Vec<f64> = (0..=4000).map(|k| k as f64 * h).collect();
        for e in registry::<f64>() {
            let v: Vec<f64> = pts.iter().map(|&t| e.call(t)).collect();
            if let Some(w) = e.modulus {
                for delta in [0.05, 0.3, 1.0] {
                    let k = (delta / h + 1e-9).floor() as usize;
                    let mut est: f64 = 0.0;
                    for i in 0..v.len() {
                        for j in i + 1..=(i + k).min(v.len() - 1) {
                            est = est.max((v[j] - v[i]).abs());
                        }
                    }
                    assert!(est <= w(delta) + 1e-12, "{} delta={delta}", e.name);
                    assert!(est >= 0.9 * w(delta) - 1e-3, "{} delta={delta}", e.name);
                }
            }
            if let Some(w2) = e.modulus2 {
                for s in [0.1, 0.4] {
                    let m = (s / h + 1e-9).floor() as usize;
                    let mut est: f64 = 0.0;
                    for i in 0..v.len() {
                        for mm in 1..=m {
                            if i + 2 * mm < v.len() {
                                est = est.max((v[i + 2 * mm] - 2.0 * v[i + mm] + v[i]).abs());
                            }
                        }
                    }
                    assert!(est <= w2(s) + 1e-12, "{} s={s}", e.name);
                }
            }
        }
    }
}
