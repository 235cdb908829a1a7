//! Sine Galerkin basis on an interval or rectangle.
//!
//! Fields are expanded as u(x) = Σ_k a_k Π sin(kᵢπxᵢ/Lᵢ), which enforces the
//! Dirichlet boundary condition identically. Nonlinear terms are evaluated on
//! a collocation grid padded by the 3/2 rule; the grid transform
//!
//!   a_k = (2/P) Σ_{i=1}^{P−1} f(x_i) sin(πki/P),   x_i = i L/P,
//!
//! is exact for any field with fewer than P sine modes, so forward∘inverse is
//! the identity on the retained modes. Transforms are direct matrix products;
//! at desk scale (K ≤ 64 per axis) that is both simple and fast enough.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::Domain;

type C64 = Complex64;

#[derive(Debug, Clone)]
pub struct SineBasis {
    lengths: Vec<f64>,
    modes: Vec<usize>,
    padded: Vec<usize>,
    /// Per axis, row-major K×(P−1): (2/P)·sin(πk i/P).
    fwd: Vec<Vec<f64>>,
    /// Per axis, row-major (P−1)×K: sin(πk i/P).
    inv: Vec<Vec<f64>>,
    /// Dirichlet eigenvalue Λ(k) of each retained mode, flattened k-major.
    eigenvalues: Vec<f64>,
}

impl SineBasis {
    pub fn new(domain: &Domain, modes_per_axis: &[usize]) -> Result<Self> {
        let sides = domain
            .sides()
            .ok_or_else(|| Error::InvalidSimConfig("simulator requires a box domain".into()))?;
        let dim = sides.len();
        if !(1..=2).contains(&dim) {
            return Err(Error::InvalidSimConfig(format!(
                "simulator supports n in {{1, 2}}, got n = {dim}"
            )));
        }
        if modes_per_axis.len() != dim {
            return Err(Error::InvalidSimConfig(format!(
                "modes_per_axis has {} entries for a {dim}-dimensional box",
                modes_per_axis.len()
            )));
        }
        if modes_per_axis.iter().any(|&k| k < 4) {
            return Err(Error::InvalidSimConfig(
                "modes_per_axis entries must be at least 4".into(),
            ));
        }

        let lengths = sides.to_vec();
        let modes = modes_per_axis.to_vec();
        // 3/2-rule padding for the cubic term's collocation grid.
        let padded: Vec<usize> = modes.iter().map(|&k| (3 * k).div_ceil(2)).collect();

        let mut fwd = Vec::with_capacity(dim);
        let mut inv = Vec::with_capacity(dim);
        for axis in 0..dim {
            let (k_max, p) = (modes[axis], padded[axis]);
            let mut f = vec![0.0; k_max * (p - 1)];
            let mut b = vec![0.0; (p - 1) * k_max];
            for k in 1..=k_max {
                for i in 1..p {
                    let s = (PI * (k * i) as f64 / p as f64).sin();
                    f[(k - 1) * (p - 1) + (i - 1)] = 2.0 / p as f64 * s;
                    b[(i - 1) * k_max + (k - 1)] = s;
                }
            }
            fwd.push(f);
            inv.push(b);
        }

        let eigenvalues = match dim {
            1 => (1..=modes[0])
                .map(|k| PI * PI * (k as f64 / lengths[0]).powi(2))
                .collect(),
            _ => {
                let mut e = Vec::with_capacity(modes[0] * modes[1]);
                for k1 in 1..=modes[0] {
                    for k2 in 1..=modes[1] {
                        e.push(
                            PI * PI
                                * ((k1 as f64 / lengths[0]).powi(2)
                                    + (k2 as f64 / lengths[1]).powi(2)),
                        );
                    }
                }
                e
            }
        };

        Ok(SineBasis {
            lengths,
            modes,
            padded,
            fwd,
            inv,
            eigenvalues,
        })
    }

    pub fn dim(&self) -> usize {
        self.lengths.len()
    }

    pub fn mode_counts(&self) -> &[usize] {
        &self.modes
    }

    pub fn mode_count(&self) -> usize {
        self.modes.iter().product()
    }

    pub fn grid_count(&self) -> usize {
        self.padded.iter().map(|&p| p - 1).product()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// ⟨sin_k, sin_k⟩ = Π Lᵢ/2; coefficient-space norms carry this factor.
    pub fn coeff_norm_factor(&self) -> f64 {
        self.lengths.iter().map(|l| l / 2.0).product()
    }

    /// Quadrature weight of one collocation point, Π Lᵢ/Pᵢ.
    pub fn grid_weight(&self) -> f64 {
        self.lengths
            .iter()
            .zip(&self.padded)
            .map(|(l, &p)| l / p as f64)
            .product()
    }

    /// Evaluate a coefficient vector on the collocation grid.
    pub fn to_grid(&self, coeffs: &[C64]) -> Vec<C64> {
        match self.dim() {
            1 => {
                let (k_max, p) = (self.modes[0], self.padded[0]);
                let inv = &self.inv[0];
                let mut grid = vec![C64::new(0.0, 0.0); p - 1];
                for (i, g) in grid.iter_mut().enumerate() {
                    let row = &inv[i * k_max..(i + 1) * k_max];
                    let mut acc = C64::new(0.0, 0.0);
                    for (c, s) in coeffs.iter().zip(row) {
                        acc += c * s;
                    }
                    *g = acc;
                }
                grid
            }
            _ => {
                let (k1, k2) = (self.modes[0], self.modes[1]);
                let (p1, p2) = (self.padded[0], self.padded[1]);
                // tmp[k1][j] = Σ_{k2} A[k1][k2] sin₂[j][k2]
                let inv2 = &self.inv[1];
                let mut tmp = vec![C64::new(0.0, 0.0); k1 * (p2 - 1)];
                for a in 0..k1 {
                    let row = &coeffs[a * k2..(a + 1) * k2];
                    for j in 0..p2 - 1 {
                        let s_row = &inv2[j * k2..(j + 1) * k2];
                        let mut acc = C64::new(0.0, 0.0);
                        for (c, s) in row.iter().zip(s_row) {
                            acc += c * s;
                        }
                        tmp[a * (p2 - 1) + j] = acc;
                    }
                }
                // grid[i][j] = Σ_{k1} sin₁[i][k1] tmp[k1][j]
                let inv1 = &self.inv[0];
                let mut grid = vec![C64::new(0.0, 0.0); (p1 - 1) * (p2 - 1)];
                for i in 0..p1 - 1 {
                    let s_row = &inv1[i * k1..(i + 1) * k1];
                    for a in 0..k1 {
                        let s = s_row[a];
                        if s == 0.0 {
                            continue;
                        }
                        let t_row = &tmp[a * (p2 - 1)..(a + 1) * (p2 - 1)];
                        let g_row = &mut grid[i * (p2 - 1)..(i + 1) * (p2 - 1)];
                        for (g, t) in g_row.iter_mut().zip(t_row) {
                            *g += t * s;
                        }
                    }
                }
                grid
            }
        }
    }

    /// Project grid values back onto the retained modes.
    pub fn to_coeffs(&self, grid: &[C64]) -> Vec<C64> {
        match self.dim() {
            1 => {
                let (k_max, p) = (self.modes[0], self.padded[0]);
                let fwd = &self.fwd[0];
                let mut coeffs = vec![C64::new(0.0, 0.0); k_max];
                for (k, c) in coeffs.iter_mut().enumerate() {
                    let row = &fwd[k * (p - 1)..(k + 1) * (p - 1)];
                    let mut acc = C64::new(0.0, 0.0);
                    for (g, s) in grid.iter().zip(row) {
                        acc += g * s;
                    }
                    *c = acc;
                }
                coeffs
            }
            _ => {
                let (k1, k2) = (self.modes[0], self.modes[1]);
                let (p1, p2) = (self.padded[0], self.padded[1]);
                // tmp[k1][j] = Σ_i fwd₁[k1][i] grid[i][j]
                let fwd1 = &self.fwd[0];
                let mut tmp = vec![C64::new(0.0, 0.0); k1 * (p2 - 1)];
                for a in 0..k1 {
                    let f_row = &fwd1[a * (p1 - 1)..(a + 1) * (p1 - 1)];
                    let t_row = &mut tmp[a * (p2 - 1)..(a + 1) * (p2 - 1)];
                    for i in 0..p1 - 1 {
                        let f = f_row[i];
                        if f == 0.0 {
                            continue;
                        }
                        let g_row = &grid[i * (p2 - 1)..(i + 1) * (p2 - 1)];
                        for (t, g) in t_row.iter_mut().zip(g_row) {
                            *t += g * f;
                        }
                    }
                }
                // coeffs[k1][k2] = Σ_j tmp[k1][j] fwd₂[k2][j]
                let fwd2 = &self.fwd[1];
                let mut coeffs = vec![C64::new(0.0, 0.0); k1 * k2];
                for a in 0..k1 {
                    let t_row = &tmp[a * (p2 - 1)..(a + 1) * (p2 - 1)];
                    for b in 0..k2 {
                        let f_row = &fwd2[b * (p2 - 1)..(b + 1) * (p2 - 1)];
                        let mut acc = C64::new(0.0, 0.0);
                        for (t, f) in t_row.iter().zip(f_row) {
                            acc += t * f;
                        }
                        coeffs[a * k2 + b] = acc;
                    }
                }
                coeffs
            }
        }
    }

    /// ‖u‖²_{L²} from coefficients (Parseval, exact on retained modes).
    pub fn l2_norm_sq(&self, coeffs: &[C64]) -> f64 {
        self.coeff_norm_factor() * coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }

    /// ‖u‖²_{H¹₀} = Σ_k Λ_k |a_k|² ⟨sin, sin⟩.
    pub fn h1_norm_sq(&self, coeffs: &[C64]) -> f64 {
        self.coeff_norm_factor()
            * coeffs
                .iter()
                .zip(&self.eigenvalues)
                .map(|(c, l)| l * c.norm_sqr())
                .sum::<f64>()
    }

    /// Complex L² inner product ⟨f, g⟩ from coefficients.
    pub fn inner(&self, f: &[C64], g: &[C64]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (a, b) in f.iter().zip(g) {
            acc += a * b.conj();
        }
        acc * self.coeff_norm_factor()
    }

    /// Trapezoid quadrature of Σ wᵢ φ(gridᵢ) for a pointwise functional φ.
    pub fn quadrature<F: Fn(C64) -> f64>(&self, grid: &[C64], f: F) -> f64 {
        self.grid_weight() * grid.iter().map(|&g| f(g)).sum::<f64>()
    }

    /// ∫ |u|^p on the collocation grid (p need not be an even integer).
    pub fn lp_integral_pow(&self, grid: &[C64], p: f64) -> f64 {
        self.quadrature(grid, |g| g.norm_sqr().powf(p / 2.0))
    }

    /// Flat index of the mode with multi-index k (1-based per axis).
    pub fn mode_index(&self, k: &[u32]) -> Result<usize> {
        if k.len() != self.dim() {
            return Err(Error::InvalidSimConfig(format!(
                "mode index {k:?} has wrong dimension"
            )));
        }
        for (axis, &ki) in k.iter().enumerate() {
            if ki == 0 || ki as usize > self.modes[axis] {
                return Err(Error::InvalidSimConfig(format!(
                    "mode index {k:?} outside retained modes {:?}",
                    self.modes
                )));
            }
        }
        Ok(match self.dim() {
            1 => k[0] as usize - 1,
            _ => (k[0] as usize - 1) * self.modes[1] + (k[1] as usize - 1),
        })
    }
}
