//! Computational domains and their exact geometry.
//!
//! Only boxes and balls are supported: both have closed-form volume and
//! moment of inertia, so every downstream constant stays certified. General
//! domains are rejected rather than approximated.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A bounded open set Ω ⊂ ℝⁿ: an axis-aligned box with the given side
/// lengths, or a ball of the given radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    Box { sides: Vec<f64> },
    Ball { n: u32, radius: f64 },
}

impl Domain {
    /// Box with side lengths `sides`; the dimension is `sides.len()`.
    pub fn box_domain(sides: Vec<f64>) -> Result<Self> {
        let d = Domain::Box { sides };
        d.validate()?;
        Ok(d)
    }

    /// Ball of radius `radius` in ℝⁿ.
    pub fn ball(n: u32, radius: f64) -> Result<Self> {
        let d = Domain::Ball { n, radius };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Domain::Box { sides } => {
                if sides.is_empty() {
                    return Err(Error::ZeroDimension);
                }
                if sides.iter().any(|&s| !s.is_finite() || s <= 0.0) {
                    return Err(Error::InvalidDomain(format!(
                        "box sides must be positive and finite, got {sides:?}"
                    )));
                }
                Ok(())
            }
            Domain::Ball { n, radius } => {
                if *n == 0 {
                    return Err(Error::ZeroDimension);
                }
                if !radius.is_finite() || *radius <= 0.0 {
                    return Err(Error::InvalidDomain(format!(
                        "ball radius must be positive and finite, got {radius}"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn dim(&self) -> u32 {
        match self {
            Domain::Box { sides } => sides.len() as u32,
            Domain::Ball { n, .. } => *n,
        }
    }

    pub fn is_box(&self) -> bool {
        matches!(self, Domain::Box { .. })
    }

    /// Side lengths, if this is a box.
    pub fn sides(&self) -> Option<&[f64]> {
        match self {
            Domain::Box { sides } => Some(sides),
            Domain::Ball { .. } => None,
        }
    }

    /// V(Ω): product of sides for a box, ω_n Rⁿ for a ball.
    pub fn volume(&self) -> f64 {
        match self {
            Domain::Box { sides } => sides.iter().product(),
            Domain::Ball { n, radius } => {
                unit_ball_volume(*n).expect("validated dimension") * radius.powi(*n as i32)
            }
        }
    }

    /// I(Ω) = min over centers α of ∫_Ω |x−α|² dx. The minimizer is the
    /// centroid, which gives the closed forms
    /// V·Σ Lᵢ²/12 for a box and n ω_n R^{n+2}/(n+2) for a ball.
    pub fn moment_of_inertia(&self) -> f64 {
        match self {
            Domain::Box { sides } => {
                let v: f64 = sides.iter().product();
                let sum_sq: f64 = sides.iter().map(|s| s * s).sum();
                v * sum_sq / 12.0
            }
            Domain::Ball { n, radius } => {
                let nf = *n as f64;
                let omega = unit_ball_volume(*n).expect("validated dimension");
                nf * omega * radius.powi(*n as i32 + 2) / (nf + 2.0)
            }
        }
    }
}

/// ω_n, the volume of the unit ball in ℝⁿ.
///
/// Evaluated through the half-integer Γ recurrence rather than a general
/// special-function approximation: ω_1 = 2, ω_2 = π, ω_n = 2π ω_{n−2} / n.
pub fn unit_ball_volume(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut values = [2.0, PI]; // ω_1, ω_2
    if n <= 2 {
        return Ok(values[(n - 1) as usize]);
    }
    let mut k = 2;
    while k < n {
        k += 1;
        let idx = (k % 2) as usize; // slot holding ω_{k−2}
        values[1 - idx] = 2.0 * PI * values[1 - idx] / k as f64;
    }
    Ok(values[(1 - (n % 2)) as usize])
}

/// Lower bound for the moment of inertia of any domain with volume `volume`:
/// the inertia of the ball of equal volume, n ω_n R^{n+2}/(n+2) with
/// R = (V/ω_n)^{1/n}.
pub fn inertia_ball_lower_bound(n: u32, volume: f64) -> Result<f64> {
    if !volume.is_finite() || volume <= 0.0 {
        return Err(Error::InvalidDomain(format!(
            "volume must be positive, got {volume}"
        )));
    }
    let nf = n as f64;
    let omega = unit_ball_volume(n)?;
    let radius = (volume / omega).powf(1.0 / nf);
    Ok(nf * omega * radius.powf(nf + 2.0) / (nf + 2.0))
}
