//! Second-order exponential time differencing (ETD2RK) coefficients.
//!
//! Per retained mode the linear symbol is L_k = γ − (λ+iα)Λ_k, which the
//! scheme integrates exactly:
//!
//!   u* = e^{L dt} u_n + dt φ₁(L dt) N(u_n)
//!   u_{n+1} = u* + dt φ₂(L dt) (N(u*) − N(u_n))
//!
//! with φ₁(z) = (e^z − 1)/z and φ₂(z) = (e^z − 1 − z)/z². Small |z| uses the
//! Taylor series to dodge cancellation.

use num_complex::Complex64;

use crate::bounds::CGLParams;

type C64 = Complex64;

const SERIES_RADIUS: f64 = 0.25;
const SERIES_TERMS: usize = 18;

pub fn phi1(z: C64) -> C64 {
    if z.norm() < SERIES_RADIUS {
        // Σ z^j/(j+1)!
        let mut term = C64::new(1.0, 0.0);
        let mut acc = term;
        for j in 1..SERIES_TERMS {
            term = term * z / (j as f64 + 1.0);
            acc += term;
        }
        acc
    } else {
        (z.exp() - 1.0) / z
    }
}

pub fn phi2(z: C64) -> C64 {
    if z.norm() < SERIES_RADIUS {
        // Σ z^j/(j+2)!
        let mut term = C64::new(0.5, 0.0);
        let mut acc = term;
        for j in 1..SERIES_TERMS {
            term = term * z / (j as f64 + 2.0);
            acc += term;
        }
        acc
    } else {
        (z.exp() - 1.0 - z) / (z * z)
    }
}

/// Precomputed per-mode factors for one (params, dt) pair.
#[derive(Debug, Clone)]
pub struct EtdTables {
    /// e^{L_k dt}
    pub exp_dt: Vec<C64>,
    /// dt φ₁(L_k dt)
    pub phi1_dt: Vec<C64>,
    /// dt φ₂(L_k dt)
    pub phi2_dt: Vec<C64>,
}

impl EtdTables {
    pub fn new(eigenvalues: &[f64], params: &CGLParams, dt: f64) -> Self {
        let mut exp_dt = Vec::with_capacity(eigenvalues.len());
        let mut phi1_dt = Vec::with_capacity(eigenvalues.len());
        let mut phi2_dt = Vec::with_capacity(eigenvalues.len());
        for &lam in eigenvalues {
            let l = C64::new(params.gamma - params.lambda * lam, -params.alpha * lam);
            let z = l * dt;
            exp_dt.push(z.exp());
            phi1_dt.push(phi1(z) * dt);
            phi2_dt.push(phi2(z) * dt);
        }
        EtdTables {
            exp_dt,
            phi1_dt,
            phi2_dt,
        }
    }
}
