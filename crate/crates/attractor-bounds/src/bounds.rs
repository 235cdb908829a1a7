//! Regime classification and the attractor dimension-bound calculus.
//!
//! For the Dirichlet complex Ginzburg–Landau equation
//! ∂_t u = (λ+iα)Δu − (κ+iβ)|u|²u + γu the trace of the linearization over
//! the best m-dimensional tangent subspaces is bounded by
//! q_m ≤ −A m^{(n+2)/n} + B, which yields the attractor dimension bound
//! d* = (B/A)^{n/(n+2)}. The constants:
//!
//! * A = (1/4) λ n C_n / ([2V]^{2/n} (n+2)),
//! * B = [2^{n+2} V/((n+2)(λC_n)^{n/2})]·[γ − (λ/2) M_n V/I]^{(n+2)/2}
//!   + c₂ |β|^{(n+2)/2} λ^{−n/2} δ,
//! * c₁ = C_*^{n/(n+2)},  c₂ = 2 (2/(n+2))^{(n+2)/2} (n C_*)^{n/2},
//!
//! where δ is the time-averaged ‖u‖^{n+2}_{L^{n+2}} datum (estimated by the
//! simulator or supplied by the user). The Melas term −(λ/2) M_n V/I inside
//! the bracket is what tightens B below the Melas-free baseline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Domain;
use crate::spectrum::{enumerate_eigenvalues, MethodConstants};

/// The five real CGL parameters; λ > 0 and κ > 0 keep the equation
/// dissipative, γ > 0 is the gain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CGLParams {
    pub lambda: f64,
    pub alpha: f64,
    pub kappa: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl CGLParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("lambda", self.lambda),
            ("alpha", self.alpha),
            ("kappa", self.kappa),
            ("beta", self.beta),
            ("gamma", self.gamma),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} must be finite, got {v}")));
            }
        }
        for (name, v) in [
            ("lambda", self.lambda),
            ("kappa", self.kappa),
            ("gamma", self.gamma),
        ] {
            if v <= 0.0 {
                return Err(Error::InvalidParams(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Trivial,
    Nontrivial,
}

/// γ ≤ λΛ₁ forces every solution to zero and the attractor is {0};
/// otherwise the dynamics are nontrivial. The boundary case is trivial.
pub fn classify_regime(params: &CGLParams, lambda1: f64) -> Regime {
    if params.gamma <= params.lambda * lambda1 {
        Regime::Trivial
    } else {
        Regime::Nontrivial
    }
}

/// λ M_n V/(2I). Any γ at or below this threshold already satisfies
/// γ ≤ λΛ₁: by the Melas bound at m = 1,
/// M_n V/(2I) < n C_n/(n+2) V^{−2/n} + M_n V/I ≤ Λ₁,
/// so the sub-threshold case is always trivial.
pub fn melas_gamma_threshold(
    params: &CGLParams,
    domain: &Domain,
    consts: &MethodConstants,
) -> f64 {
    params.lambda * consts.m_n * domain.volume() / (2.0 * domain.moment_of_inertia())
}

/// c₁ = C_*^{n/(n+2)}.
pub fn constant_c1(consts: &MethodConstants) -> f64 {
    let n = consts.n as f64;
    consts.c_star.powf(n / (n + 2.0))
}

/// c₂ = 2 (2/(n+2))^{(n+2)/2} (n C_*)^{n/2}.
pub fn constant_c2(consts: &MethodConstants) -> f64 {
    let n = consts.n as f64;
    2.0 * (2.0 / (n + 2.0)).powf((n + 2.0) / 2.0) * (n * consts.c_star).powf(n / 2.0)
}

/// A = (1/4) λ n C_n / ([2V]^{2/n} (n+2)).
pub fn constant_a(consts: &MethodConstants, volume: f64, lambda: f64) -> f64 {
    let n = consts.n as f64;
    0.25 * lambda * n * consts.c_n / ((2.0 * volume).powf(2.0 / n) * (n + 2.0))
}

/// B = [2^{n+2} V/((n+2)(λC_n)^{n/2})]·[γ − (λ/2) M_n V/I]^{(n+2)/2}
///     + c₂ |β|^{(n+2)/2} λ^{−n/2} δ.
///
/// Rejects γ at or below λ M_n V/(2I): there the bracket is nonpositive and
/// the regime is trivial.
pub fn constant_b(
    consts: &MethodConstants,
    volume: f64,
    inertia: f64,
    params: &CGLParams,
    delta: f64,
) -> Result<f64> {
    let threshold = params.lambda * consts.m_n * volume / (2.0 * inertia);
    if params.gamma <= threshold {
        return Err(Error::TrivialRegime {
            gamma: params.gamma,
            threshold,
        });
    }
    if delta < 0.0 {
        return Err(Error::InvalidParams(format!(
            "delta must be nonnegative, got {delta}"
        )));
    }
    let n = consts.n as f64;
    let bracket = params.gamma - threshold;
    let prefactor =
        (2.0f64).powf(n + 2.0) * volume / ((n + 2.0) * (params.lambda * consts.c_n).powf(n / 2.0));
    let beta_term = constant_c2(consts)
        * params.beta.abs().powf((n + 2.0) / 2.0)
        * params.lambda.powf(-n / 2.0)
        * delta;
    Ok(prefactor * bracket.powf((n + 2.0) / 2.0) + beta_term)
}

/// d* = (B/A)^{n/(n+2)}, the positive root of f(x) = −A x^{(n+2)/n} + B.
///
/// f is concave in x, so d* bounds both the Hausdorff and the fractal
/// dimension of the attractor.
pub fn dimension_bound(a: f64, b: f64, n: u32) -> f64 {
    let nf = n as f64;
    (b / a).powf(nf / (nf + 2.0))
}

/// The Melas-free baseline: same A, but B computed with the Melas term
/// removed from the bracket (B₀ uses γ^{(n+2)/2} directly).
pub fn baseline_dimension_bound(
    consts: &MethodConstants,
    volume: f64,
    inertia: f64,
    params: &CGLParams,
    delta: f64,
) -> f64 {
    let _ = inertia;
    let n = consts.n as f64;
    let prefactor =
        (2.0f64).powf(n + 2.0) * volume / ((n + 2.0) * (params.lambda * consts.c_n).powf(n / 2.0));
    let beta_term = constant_c2(consts)
        * params.beta.abs().powf((n + 2.0) / 2.0)
        * params.lambda.powf(-n / 2.0)
        * delta.max(0.0);
    let b0 = prefactor * params.gamma.powf((n + 2.0) / 2.0) + beta_term;
    dimension_bound(constant_a(consts, volume, params.lambda), b0, consts.n)
}

/// Everything the dimension estimate produces for one parameter point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DimensionReport {
    #[serde(rename = "Lambda1")]
    pub lambda1: f64,
    pub regime: Regime,
    pub delta: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub d_star: f64,
    pub d_star_baseline: f64,
}

/// Compose the full report. Λ₁ comes from the exact box spectrum unless the
/// caller supplies it (required for balls). In the trivial regime the
/// attractor is {0}, so both dimension fields are reported as 0.
pub fn build_report(
    domain: &Domain,
    params: &CGLParams,
    delta: f64,
    consts: &MethodConstants,
    lambda1: Option<f64>,
) -> Result<DimensionReport> {
    params.validate()?;
    if delta < 0.0 {
        return Err(Error::InvalidParams(format!(
            "delta must be nonnegative, got {delta}"
        )));
    }
    if domain.dim() != consts.n {
        return Err(Error::InvalidConfig(format!(
            "constants built for n = {} but domain has dimension {}",
            consts.n,
            domain.dim()
        )));
    }
    let lambda1 = match lambda1 {
        Some(l) => {
            if !l.is_finite() || l <= 0.0 {
                return Err(Error::InvalidParams(format!(
                    "Lambda1 must be positive, got {l}"
                )));
            }
            l
        }
        // The complexified operator repeats each eigenvalue, so the regime
        // test uses the scalar Λ₁ unchanged.
        None => enumerate_eigenvalues(domain, 1)?.values()[0],
    };
    let volume = domain.volume();
    let inertia = domain.moment_of_inertia();
    let a = constant_a(consts, volume, params.lambda);
    let regime = classify_regime(params, lambda1);
    match regime {
        Regime::Trivial => {
            // γ may still exceed the Melas threshold here, in which case B
            // is well defined; report it when available, 0 otherwise.
            let b = constant_b(consts, volume, inertia, params, delta).unwrap_or(0.0);
            Ok(DimensionReport {
                lambda1,
                regime,
                delta,
                a,
                b,
                d_star: 0.0,
                d_star_baseline: 0.0,
            })
        }
        Regime::Nontrivial => {
            let b = constant_b(consts, volume, inertia, params, delta)?;
            Ok(DimensionReport {
                lambda1,
                regime,
                delta,
                a,
                b,
                d_star: dimension_bound(a, b, consts.n),
                d_star_baseline: baseline_dimension_bound(consts, volume, inertia, params, delta),
            })
        }
    }
}
