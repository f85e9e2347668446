//! Exponential-family building blocks: canonical links, log-partition
//! functions and per-cell deviance kernels for the Bernoulli and Gaussian
//! (unit variance) families.
//!
//! Every member is written in canonical form `x θ - b(θ) + c(x)`, so the
//! per-cell optimization loss is `2 (-x θ + b(θ))` up to a term that does not
//! depend on `θ`.

use serde::{Deserialize, Serialize};

use crate::error::{LpcaError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Bernoulli,
    Gaussian,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Bernoulli => "bernoulli",
            Family::Gaussian => "gaussian",
        }
    }

    /// Upper bound on `b''(θ)`. Drives the quadratic majorizer used by the fit.
    pub fn curvature_bound(&self) -> f64 {
        match self {
            Family::Bernoulli => 0.25,
            Family::Gaussian => 1.0,
        }
    }
}

impl std::str::FromStr for Family {
    type Err = LpcaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bernoulli" | "binomial" | "logistic" => Ok(Family::Bernoulli),
            "gaussian" | "normal" => Ok(Family::Gaussian),
            other => Err(LpcaError::Config(format!("unknown family '{other}'"))),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn finite(theta: f64) -> Result<f64> {
    if theta.is_finite() {
        Ok(theta)
    } else {
        Err(LpcaError::Domain(format!("non-finite natural parameter {theta}")))
    }
}

/// `log(1 + e^θ)` without overflow.
#[inline]
pub(crate) fn softplus(theta: f64) -> f64 {
    if theta > 0.0 {
        theta + (-theta).exp().ln_1p()
    } else {
        theta.exp().ln_1p()
    }
}

/// Logistic sigmoid, stable on both tails.
#[inline]
pub(crate) fn sigmoid(theta: f64) -> f64 {
    if theta >= 0.0 {
        1.0 / (1.0 + (-theta).exp())
    } else {
        let e = theta.exp();
        e / (1.0 + e)
    }
}

/// `x log(x / y)` with the `0 log 0 = 0` convention.
#[inline]
fn xlogx_over(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (x / y).ln()
    }
}

/// Log-partition function `b(θ)`.
pub fn log_partition(family: Family, theta: f64) -> Result<f64> {
    let theta = finite(theta)?;
    Ok(match family {
        Family::Bernoulli => softplus(theta),
        Family::Gaussian => 0.5 * theta * theta,
    })
}

/// Canonical link `g(mean)`, the inverse of `b'`.
pub fn link(family: Family, mean: f64) -> Result<f64> {
    match family {
        Family::Gaussian => finite(mean),
        Family::Bernoulli => {
            if mean > 0.0 && mean < 1.0 {
                Ok((mean / (1.0 - mean)).ln())
            } else {
                Err(LpcaError::Domain(format!(
                    "bernoulli mean {mean} outside (0, 1); use saturated_natural_param for boundary values"
                )))
            }
        }
    }
}

/// Mean function `b'(θ)`.
pub fn inverse_link(family: Family, theta: f64) -> Result<f64> {
    let theta = finite(theta)?;
    Ok(mean_unchecked(family, theta))
}

#[inline]
pub(crate) fn mean_unchecked(family: Family, theta: f64) -> f64 {
    match family {
        Family::Bernoulli => sigmoid(theta),
        Family::Gaussian => theta,
    }
}

fn check_value(family: Family, x: f64) -> Result<()> {
    match family {
        Family::Bernoulli if !(0.0..=1.0).contains(&x) => Err(LpcaError::Domain(format!(
            "bernoulli observation {x} outside [0, 1]"
        ))),
        Family::Gaussian if !x.is_finite() => {
            Err(LpcaError::Domain(format!("non-finite observation {x}")))
        }
        _ => Ok(()),
    }
}

/// Scaled deviance of a single cell, `2 [log f(x; x) - log f(x; θ)]`.
///
/// For fractional Bernoulli observations the saturated term is the binary
/// entropy of `x`, so the result is the Kullback-Leibler form
/// `2 [x log(x/p) + (1-x) log((1-x)/(1-p))]`.
pub fn deviance_cell(family: Family, x: f64, theta: f64) -> Result<f64> {
    check_value(family, x)?;
    let theta = finite(theta)?;
    Ok(deviance_unchecked(family, x, theta))
}

#[inline]
pub(crate) fn deviance_unchecked(family: Family, x: f64, theta: f64) -> f64 {
    match family {
        Family::Gaussian => (x - theta) * (x - theta),
        Family::Bernoulli => {
            // log p and log(1-p) straight from θ, so saturated p never hits 0 or 1
            let log_p = -softplus(-theta);
            let log_q = -softplus(theta);
            let sat = xlogx_over(x, 1.0) + xlogx_over(1.0 - x, 1.0);
            let dev = 2.0 * (sat - x * log_p - (1.0 - x) * log_q);
            dev.max(0.0)
        }
    }
}

/// Per-cell optimization loss `2 (-x θ + b(θ))` for Bernoulli and `(x - θ)^2`
/// for Gaussian. Differs from [`deviance_cell`] by a θ-independent constant.
#[inline]
pub(crate) fn loss_unchecked(family: Family, x: f64, theta: f64) -> f64 {
    match family {
        Family::Gaussian => (x - theta) * (x - theta),
        Family::Bernoulli => 2.0 * (-x * theta + softplus(theta)),
    }
}

/// Natural parameter of the (approximate) saturated model.
///
/// Bernoulli uses `m (2x - 1)` since the exact value is `±∞` at the boundary;
/// Gaussian returns `x` and ignores `m`.
pub fn saturated_natural_param(family: Family, x: f64, m: f64) -> Result<f64> {
    check_value(family, x)?;
    match family {
        Family::Gaussian => Ok(x),
        Family::Bernoulli => {
            if !(m > 0.0 && m.is_finite()) {
                return Err(LpcaError::Config(format!(
                    "saturation scale m must be positive, got {m}"
                )));
            }
            Ok(m * (2.0 * x - 1.0))
        }
    }
}
