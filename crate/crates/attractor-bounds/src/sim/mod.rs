//! Sine-pseudospectral solver for the Dirichlet CGL equation
//! ∂_t u = (λ+iα)Δu − (κ+iβ)|u|²u + γu on an interval or rectangle, with
//! first-variation (tangent) propagation and trace diagnostics.
//!
//! Space: sine Galerkin basis (exact Dirichlet conditions), cubic term by
//! collocation on a 3/2-padded grid. Time: ETD2RK with exact per-mode linear
//! factors, so the κ = β = 0 problem is integrated exactly.
//!
//! Tangent frames follow the first variation
//! ∂_t U = (λ+iα)ΔU − (κ+iβ){|u|²U + 2u Re(ūU)} + γU with the same
//! integrator; the corrector stage evaluates the Jacobian at the predictor
//! state, which makes the discrete tangent flow the exact derivative of the
//! discrete solution map. Frames are re-orthonormalized every
//! `reorth_interval` steps by modified Gram–Schmidt in the discrete L² inner
//! product (Benettin-style), and the per-frame log norms are accumulated as
//! the volume-growth record.

pub mod basis;
pub mod etd;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use std::io::{self, Write};

use crate::bounds::CGLParams;
use crate::error::{Error, Result};
use crate::geometry::Domain;
use basis::SineBasis;
use etd::EtdTables;

type C64 = Complex64;

/// Named initial-condition generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InitialCondition {
    /// amplitude · Π sin(kᵢπxᵢ/Lᵢ).
    SingleMode { k: Vec<u32>, amplitude: f64 },
    /// Independent complex Gaussian coefficients damped by
    /// exp(−decay_rate·|k|); fully determined by the seed.
    RandomSmooth { seed: u64, decay_rate: f64 },
}

impl InitialCondition {
    fn build(&self, basis: &SineBasis) -> Result<Vec<C64>> {
        let mut coeffs = vec![C64::new(0.0, 0.0); basis.mode_count()];
        match self {
            InitialCondition::SingleMode { k, amplitude } => {
                let idx = basis.mode_index(k)?;
                coeffs[idx] = C64::new(*amplitude, 0.0);
            }
            InitialCondition::RandomSmooth { seed, decay_rate } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let counts = basis.mode_counts().to_vec();
                for (idx, c) in coeffs.iter_mut().enumerate() {
                    let knorm = match counts.len() {
                        1 => (idx + 1) as f64,
                        _ => {
                            let k1 = (idx / counts[1] + 1) as f64;
                            let k2 = (idx % counts[1] + 1) as f64;
                            (k1 * k1 + k2 * k2).sqrt()
                        }
                    };
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    let damp = (-decay_rate * knorm).exp();
                    *c = C64::new(re * damp, im * damp);
                }
            }
        }
        Ok(coeffs)
    }

    /// Replace the seed where one exists (CLI `--seed` override).
    pub fn with_seed(&self, seed: u64) -> Self {
        match self {
            InitialCondition::RandomSmooth { decay_rate, .. } => InitialCondition::RandomSmooth {
                seed,
                decay_rate: *decay_rate,
            },
            other => other.clone(),
        }
    }
}

/// Everything one run needs besides the equation parameters.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub domain: Domain,
    pub modes_per_axis: Vec<usize>,
    pub dt: f64,
    pub t_end: f64,
    pub burn_in: f64,
    pub initial_condition: InitialCondition,
    pub tangent_count: usize,
    pub reorth_interval: usize,
    pub overflow_guard: f64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        self.domain.validate()?;
        if !self.domain.is_box() || !(1..=2).contains(&(self.domain.dim() as usize)) {
            return Err(Error::InvalidSimConfig(
                "simulator requires a box domain with n in {1, 2}".into(),
            ));
        }
        if self.modes_per_axis.len() != self.domain.dim() as usize {
            return Err(Error::InvalidSimConfig(format!(
                "modes_per_axis has {} entries for an n = {} box",
                self.modes_per_axis.len(),
                self.domain.dim()
            )));
        }
        if self.modes_per_axis.iter().any(|&k| k < 4) {
            return Err(Error::InvalidSimConfig(
                "modes_per_axis entries must be at least 4".into(),
            ));
        }
        if !self.dt.is_finite() || self.dt <= 0.0 {
            return Err(Error::InvalidSimConfig(format!("dt must be positive, got {}", self.dt)));
        }
        if !self.t_end.is_finite() || self.t_end <= 0.0 {
            return Err(Error::InvalidSimConfig(format!(
                "t_end must be positive, got {}",
                self.t_end
            )));
        }
        if self.burn_in.is_nan() || self.burn_in < 0.0 || self.burn_in >= self.t_end {
            return Err(Error::InvalidSimConfig(format!(
                "burn_in must satisfy 0 <= burn_in < t_end, got {}",
                self.burn_in
            )));
        }
        let total_modes: usize = self.modes_per_axis.iter().product();
        if self.tangent_count > total_modes {
            return Err(Error::InvalidSimConfig(format!(
                "tangent_count {} exceeds total mode count {total_modes}",
                self.tangent_count
            )));
        }
        if self.reorth_interval == 0 {
            return Err(Error::InvalidSimConfig(
                "reorth_interval must be at least 1".into(),
            ));
        }
        if !self.overflow_guard.is_finite() || self.overflow_guard <= 0.0 {
            return Err(Error::InvalidSimConfig(
                "overflow_guard must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Solution coefficients and tangent frames at one instant. Dirichlet
/// boundary conditions hold identically in the sine basis.
#[derive(Debug, Clone)]
pub struct State {
    pub t: f64,
    pub coeffs: Vec<C64>,
    pub tangent_frames: Vec<Vec<C64>>,
}

/// One diagnostic instant (taken immediately after re-orthonormalization,
/// so the tangent frames are an orthonormal family).
#[derive(Debug, Clone, Serialize)]
pub struct DiagRecord {
    pub t: f64,
    /// ‖u‖²_{L²}
    pub l2_norm_sq: f64,
    /// ∫ |u|^{n+2}
    pub lp_norm_pow: f64,
    /// Σ_{i≤j} Re⟨F′(u)φ_i, φ_i⟩ for j = 1..m.
    pub trace_partials: Vec<f64>,
    /// Σ_{i≤j} ‖φ_i‖²_{H¹₀} for j = 1..m.
    pub h1_partials: Vec<f64>,
    /// ∫ |u|² ρ with ρ = Σ_j |φ_j|².
    pub u2_rho_integral: f64,
    /// ∫ ρ^{(n+2)/n}.
    pub lt_integral: f64,
    /// Running time average of the full-frame trace past burn-in.
    pub running_qm: f64,
    /// Running time average of ∫|u|^{n+2} past burn-in.
    pub running_delta: f64,
}

impl DiagRecord {
    pub fn trace_total(&self) -> f64 {
        self.trace_partials.last().copied().unwrap_or(0.0)
    }

    pub fn h1_total(&self) -> f64 {
        self.h1_partials.last().copied().unwrap_or(0.0)
    }

    /// Right side of the trace estimate: −λ Σ‖φ_j‖²_{H¹₀} + 2|β|∫|u|²ρ + γm.
    pub fn trace_rhs(&self, params: &CGLParams) -> f64 {
        -params.lambda * self.h1_total()
            + 2.0 * params.beta.abs() * self.u2_rho_integral
            + params.gamma * self.trace_partials.len() as f64
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QmEntry {
    pub m: usize,
    pub q_m: f64,
    /// Benettin volume-growth rate for the leading m frames (accumulated
    /// log norms per unit time past burn-in).
    pub log_volume_rate: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub t_end: f64,
    pub burn_in: f64,
    /// Finite-horizon surrogate for δ: time average of ∫|u|^{n+2} past burn-in.
    pub delta: f64,
    /// The same average over the first and second halves of the window, as a
    /// horizon-doubling convergence indicator.
    pub delta_first_half: f64,
    pub delta_second_half: f64,
    pub qm: Vec<QmEntry>,
    /// Largest ∫ρ^{(n+2)/n} / Σ‖φ_j‖²_{H¹₀} seen over the run; a configured
    /// C_* below this value violates the Lieb–Thirring inequality empirically.
    pub lieb_thirring_witness: Option<f64>,
    pub final_l2_norm_sq: f64,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub records: Vec<DiagRecord>,
    pub summary: RunSummary,
}

/// Time average of the m-frame trace over (t_lo, t_hi], right-endpoint rule
/// over the diagnostic instants.
pub fn empirical_qm(records: &[DiagRecord], t_lo: f64, t_hi: f64, m: usize) -> f64 {
    window_average(records, t_lo, t_hi, |r| {
        if m == 0 {
            0.0
        } else {
            r.trace_partials[m - 1]
        }
    })
}

/// Time average of ∫|u|^{n+2} over (t_lo, t_hi] — the finite-horizon δ.
pub fn delta_estimate(records: &[DiagRecord], t_lo: f64, t_hi: f64) -> f64 {
    window_average(records, t_lo, t_hi, |r| r.lp_norm_pow)
}

fn window_average<F: Fn(&DiagRecord) -> f64>(
    records: &[DiagRecord],
    t_lo: f64,
    t_hi: f64,
    value: F,
) -> f64 {
    let mut integral = 0.0;
    let mut covered = 0.0;
    let mut prev_t = records.first().map_or(0.0, |r| r.t);
    for r in records.iter().skip(1) {
        let lo = prev_t.max(t_lo);
        let hi = r.t.min(t_hi);
        if hi > lo {
            integral += value(r) * (hi - lo);
            covered += hi - lo;
        }
        prev_t = r.t;
    }
    if covered > 0.0 {
        integral / covered
    } else {
        0.0
    }
}

pub struct Simulation {
    cfg: SimConfig,
    params: CGLParams,
    basis: SineBasis,
    etd: EtdTables,
    state: State,
    step_index: u64,
}

/// One u-advance: the new coefficients plus the two collocation-grid
/// snapshots (step start and predictor) the tangent Jacobians reuse.
struct UStep {
    next: Vec<C64>,
    grid_start: Vec<C64>,
    grid_predictor: Vec<C64>,
}

impl Simulation {
    /// Production entry point: enforces λ > 0, κ > 0, γ > 0.
    pub fn new(cfg: SimConfig, params: CGLParams) -> Result<Self> {
        params.validate()?;
        Self::new_unchecked(cfg, params)
    }

    /// Test-mode entry point that skips the dissipativity check, so κ = 0
    /// (exactly linear dynamics) can be exercised.
    pub fn new_unchecked(cfg: SimConfig, params: CGLParams) -> Result<Self> {
        cfg.validate()?;
        for (name, v) in [
            ("lambda", params.lambda),
            ("alpha", params.alpha),
            ("kappa", params.kappa),
            ("beta", params.beta),
            ("gamma", params.gamma),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} must be finite, got {v}")));
            }
        }
        let basis = SineBasis::new(&cfg.domain, &cfg.modes_per_axis)?;
        let etd = EtdTables::new(basis.eigenvalues(), &params, cfg.dt);
        let coeffs = cfg.initial_condition.build(&basis)?;
        let tangent_frames = initial_frames(&basis, cfg.tangent_count);
        let state = State {
            t: 0.0,
            coeffs,
            tangent_frames,
        };
        Ok(Simulation {
            cfg,
            params,
            basis,
            etd,
            state,
            step_index: 0,
        })
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn basis(&self) -> &SineBasis {
        &self.basis
    }

    pub fn params(&self) -> &CGLParams {
        &self.params
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn set_coeffs(&mut self, coeffs: Vec<C64>) -> Result<()> {
        if coeffs.len() != self.basis.mode_count() {
            return Err(Error::InvalidSimConfig(
                "coefficient vector has wrong length".into(),
            ));
        }
        self.state.coeffs = coeffs;
        Ok(())
    }

    pub fn set_tangent_frames(&mut self, frames: Vec<Vec<C64>>) -> Result<()> {
        if frames.iter().any(|f| f.len() != self.basis.mode_count()) {
            return Err(Error::InvalidSimConfig(
                "tangent frame has wrong length".into(),
            ));
        }
        self.state.tangent_frames = frames;
        Ok(())
    }

    /// −(κ+iβ)|u|²u evaluated on the collocation grid and projected back;
    /// also returns the grid values of u for Jacobian reuse.
    fn nonlinear(&self, coeffs: &[C64]) -> (Vec<C64>, Vec<C64>) {
        let grid = self.basis.to_grid(coeffs);
        let factor = C64::new(-self.params.kappa, -self.params.beta);
        let g: Vec<C64> = grid.iter().map(|&u| factor * u.norm_sqr() * u).collect();
        (self.basis.to_coeffs(&g), grid)
    }

    /// Jacobian action −(κ+iβ){|u|²U + 2u Re(ūU)} at the given u grid.
    fn jacobian_apply(&self, u_grid: &[C64], frame: &[C64]) -> Vec<C64> {
        let f_grid = self.basis.to_grid(frame);
        let factor = C64::new(-self.params.kappa, -self.params.beta);
        let g: Vec<C64> = u_grid
            .iter()
            .zip(&f_grid)
            .map(|(&u, &f)| {
                let cross = (u.conj() * f).re;
                factor * (u.norm_sqr() * f + 2.0 * cross * u)
            })
            .collect();
        self.basis.to_coeffs(&g)
    }

    fn check_guard(&self, coeffs: &[C64]) -> Result<()> {
        let guard = self.cfg.overflow_guard;
        for c in coeffs {
            if !c.re.is_finite() || !c.im.is_finite() || c.norm_sqr() > guard * guard {
                return Err(Error::Blowup {
                    guard,
                    last_stable_t: self.state.t,
                });
            }
        }
        Ok(())
    }

    /// Advance u by one ETD2RK step.
    pub fn step(&mut self) -> Result<()> {
        let advanced = self.advance_u()?;
        self.commit(advanced.next);
        Ok(())
    }

    fn advance_u(&self) -> Result<UStep> {
        let a = &self.state.coeffs;
        let (n0, grid_start) = self.nonlinear(a);
        let e = &self.etd;
        let a_star: Vec<C64> = a
            .iter()
            .enumerate()
            .map(|(k, c)| e.exp_dt[k] * c + e.phi1_dt[k] * n0[k])
            .collect();
        let (n1, grid_predictor) = self.nonlinear(&a_star);
        let next: Vec<C64> = a_star
            .iter()
            .enumerate()
            .map(|(k, c)| c + e.phi2_dt[k] * (n1[k] - n0[k]))
            .collect();
        self.check_guard(&next)?;
        Ok(UStep {
            next,
            grid_start,
            grid_predictor,
        })
    }

    fn commit(&mut self, coeffs: Vec<C64>) {
        self.state.coeffs = coeffs;
        self.step_index += 1;
        self.state.t = self.step_index as f64 * self.cfg.dt;
    }

    /// Advance u and all tangent frames together. The tangent scheme is the
    /// exact differential of the u scheme: the predictor Jacobian uses u at
    /// the step start, the corrector Jacobian uses the predictor state u*.
    pub fn step_with_tangents(&mut self) -> Result<()> {
        let advanced = self.advance_u()?;
        let frames = std::mem::take(&mut self.state.tangent_frames);
        let mut next_frames = Vec::with_capacity(frames.len());
        let e = &self.etd;
        for frame in &frames {
            let j0 = self.jacobian_apply(&advanced.grid_start, frame);
            let f_star: Vec<C64> = frame
                .iter()
                .enumerate()
                .map(|(k, c)| e.exp_dt[k] * c + e.phi1_dt[k] * j0[k])
                .collect();
            let j1 = self.jacobian_apply(&advanced.grid_predictor, &f_star);
            let f_next: Vec<C64> = f_star
                .iter()
                .enumerate()
                .map(|(k, c)| c + e.phi2_dt[k] * (j1[k] - j0[k]))
                .collect();
            next_frames.push(f_next);
        }
        self.state.tangent_frames = next_frames;
        self.commit(advanced.next);
        Ok(())
    }

    /// Modified Gram–Schmidt in the discrete L² inner product. Returns the
    /// pre-normalization norms r_j (the Benettin growth factors).
    pub fn orthonormalize_frames(&mut self) -> Vec<f64> {
        let m = self.state.tangent_frames.len();
        let mut norms = Vec::with_capacity(m);
        for j in 0..m {
            let (done, rest) = self.state.tangent_frames.split_at_mut(j);
            let v = &mut rest[0];
            for phi in done.iter() {
                let proj = {
                    let mut acc = C64::new(0.0, 0.0);
                    for (a, b) in v.iter().zip(phi.iter()) {
                        acc += a * b.conj();
                    }
                    acc * self.basis.coeff_norm_factor()
                };
                for (a, b) in v.iter_mut().zip(phi.iter()) {
                    *a -= proj * b;
                }
            }
            let norm = self.basis.l2_norm_sq(v).sqrt();
            if norm > 0.0 {
                for a in v.iter_mut() {
                    *a /= norm;
                }
            }
            norms.push(norm);
        }
        norms
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.basis.l2_norm_sq(&self.state.coeffs)
    }

    /// ∫ |u|^{n+2} on the collocation grid.
    pub fn lp_norm_pow(&self) -> f64 {
        let grid = self.basis.to_grid(&self.state.coeffs);
        let p = self.basis.dim() as f64 + 2.0;
        self.basis.lp_integral_pow(&grid, p)
    }

    /// Σ_j Re⟨F′(u)φ_j, φ_j⟩ over the current frames (which must be
    /// orthonormal for the trace interpretation). Partial sums for j = 1..m.
    pub fn trace_partials(&self) -> Vec<f64> {
        self.instant().trace_partials
    }

    /// Total trace over all m frames; 0 when m = 0.
    pub fn trace_estimate(&self) -> f64 {
        self.trace_partials().last().copied().unwrap_or(0.0)
    }

    /// Σ_j ‖φ_j‖²_{H¹₀} over the current frames.
    pub fn h1_sums(&self) -> f64 {
        self.state
            .tangent_frames
            .iter()
            .map(|f| self.basis.h1_norm_sq(f))
            .sum()
    }

    /// All per-instant diagnostics in one pass (running averages left at 0;
    /// `run` fills them in).
    fn instant(&self) -> DiagRecord {
        let n = self.basis.dim() as f64;
        let w = self.basis.grid_weight();
        let cnorm = self.basis.coeff_norm_factor();
        let u_grid = self.basis.to_grid(&self.state.coeffs);
        let l2 = self.basis.l2_norm_sq(&self.state.coeffs);
        let lp = self.basis.lp_integral_pow(&u_grid, n + 2.0);

        let m = self.state.tangent_frames.len();
        let mut rho = vec![0.0f64; u_grid.len()];
        let mut trace_partials = Vec::with_capacity(m);
        let mut h1_partials = Vec::with_capacity(m);
        let mut trace_acc = 0.0;
        let mut h1_acc = 0.0;
        let (kappa, beta, gamma, lambda) = (
            self.params.kappa,
            self.params.beta,
            self.params.gamma,
            self.params.lambda,
        );
        for frame in &self.state.tangent_frames {
            let mut lin = 0.0;
            for (c, lam) in frame.iter().zip(self.basis.eigenvalues()) {
                lin += (gamma - lambda * lam) * c.norm_sqr();
            }
            lin *= cnorm;
            let f_grid = self.basis.to_grid(frame);
            let mut nl = 0.0;
            for (i, (&u, &f)) in u_grid.iter().zip(&f_grid).enumerate() {
                let f2 = f.norm_sqr();
                rho[i] += f2;
                let z = u * f.conj();
                nl += -kappa * u.norm_sqr() * f2 - 2.0 * (kappa * z.re - beta * z.im) * z.re;
            }
            trace_acc += lin + nl * w;
            trace_partials.push(trace_acc);
            h1_acc += self.basis.h1_norm_sq(frame);
            h1_partials.push(h1_acc);
        }

        let mut u2_rho = 0.0;
        let mut lt = 0.0;
        let lt_exp = (n + 2.0) / n;
        for (&u, &r) in u_grid.iter().zip(&rho) {
            u2_rho += u.norm_sqr() * r;
            lt += r.powf(lt_exp);
        }

        DiagRecord {
            t: self.state.t,
            l2_norm_sq: l2,
            lp_norm_pow: lp,
            trace_partials,
            h1_partials,
            u2_rho_integral: u2_rho * w,
            lt_integral: lt * w,
            running_qm: 0.0,
            running_delta: 0.0,
        }
    }

    /// Drive the trajectory to t_end with diagnostics at every
    /// re-orthonormalization instant (and the final step).
    pub fn run(&mut self) -> Result<RunOutput> {
        let dt = self.cfg.dt;
        let n_steps = (self.cfg.t_end / dt).round().max(1.0) as u64;
        let t_end = n_steps as f64 * dt;
        let burn = self.cfg.burn_in;
        let m = self.cfg.tangent_count;

        self.orthonormalize_frames();
        let mut records = Vec::new();
        records.push(self.instant());

        let mut qm_integral = vec![0.0f64; m];
        let mut delta_integral = 0.0f64;
        let mut covered = 0.0f64;
        let mut log_volume = vec![0.0f64; m];
        let mut prev_diag_t = 0.0f64;

        for step in 1..=n_steps {
            if m > 0 {
                self.step_with_tangents()?;
            } else {
                self.step()?;
            }
            if step % self.cfg.reorth_interval as u64 == 0 || step == n_steps {
                let norms = self.orthonormalize_frames();
                let t = self.state.t;
                if t > burn {
                    let mut acc = 0.0;
                    for (j, r) in norms.iter().enumerate() {
                        acc += r.ln();
                        log_volume[j] += acc;
                    }
                }
                let mut rec = self.instant();
                let weight = (t.min(t_end) - prev_diag_t.max(burn)).max(0.0);
                if weight > 0.0 {
                    for (j, q) in qm_integral.iter_mut().enumerate() {
                        *q += rec.trace_partials[j] * weight;
                    }
                    delta_integral += rec.lp_norm_pow * weight;
                    covered += weight;
                }
                if covered > 0.0 {
                    rec.running_qm = if m > 0 {
                        qm_integral[m - 1] / covered
                    } else {
                        0.0
                    };
                    rec.running_delta = delta_integral / covered;
                }
                prev_diag_t = t;
                records.push(rec);
            }
        }

        let window = covered.max(f64::MIN_POSITIVE);
        let mid = burn + (t_end - burn) / 2.0;
        let qm = (1..=m)
            .map(|j| QmEntry {
                m: j,
                q_m: qm_integral[j - 1] / window,
                log_volume_rate: log_volume[j - 1] / window,
            })
            .collect();
        let witness = records
            .iter()
            .filter(|r| r.h1_total() > 0.0)
            .map(|r| r.lt_integral / r.h1_total())
            .fold(None, |acc: Option<f64>, v| {
                Some(acc.map_or(v, |a| a.max(v)))
            });
        let summary = RunSummary {
            t_end,
            burn_in: burn,
            delta: delta_integral / window,
            delta_first_half: delta_estimate(&records, burn, mid),
            delta_second_half: delta_estimate(&records, mid, t_end),
            qm,
            lieb_thirring_witness: witness,
            final_l2_norm_sq: self.l2_norm_sq(),
        };
        Ok(RunOutput { records, summary })
    }
}

/// Initial tangent frames: the first `m` eigenmodes of the retained basis
/// (ordered by eigenvalue, ties by mode order), L²-normalized.
fn initial_frames(basis: &SineBasis, m: usize) -> Vec<Vec<C64>> {
    let mut order: Vec<usize> = (0..basis.mode_count()).collect();
    order.sort_by(|&a, &b| basis.eigenvalues()[a].total_cmp(&basis.eigenvalues()[b]));
    let scale = 1.0 / basis.coeff_norm_factor().sqrt();
    order
        .iter()
        .take(m)
        .map(|&idx| {
            let mut f = vec![C64::new(0.0, 0.0); basis.mode_count()];
            f[idx] = C64::new(scale, 0.0);
            f
        })
        .collect()
}

/// Diagnostics CSV: `t, l2_norm_sq, lp_norm_pow, trace_m, running_qm, running_delta`.
pub fn write_diagnostics_csv<W: Write>(records: &[DiagRecord], mut w: W) -> io::Result<()> {
    writeln!(w, "t,l2_norm_sq,lp_norm_pow,trace_m,running_qm,running_delta")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.t,
            r.l2_norm_sq,
            r.lp_norm_pow,
            r.trace_total(),
            r.running_qm,
            r.running_delta
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn interval_cfg(modes: usize, dt: f64, t_end: f64) -> SimConfig {
        SimConfig {
            domain: Domain::box_domain(vec![1.0]).unwrap(),
            modes_per_axis: vec![modes],
            dt,
            t_end,
            burn_in: 0.0,
            initial_condition: InitialCondition::SingleMode {
                k: vec![1],
                amplitude: 0.5,
            },
            tangent_count: 0,
            reorth_interval: 10,
            overflow_guard: 1e8,
        }
    }

    fn dissipative_params(gamma: f64) -> CGLParams {
        CGLParams {
            lambda: 1.0,
            alpha: 0.5,
            kappa: 1.0,
            beta: 1.0,
            gamma,
        }
    }

    #[test]
    fn zero_initial_data_is_an_equilibrium() {
        let mut cfg = interval_cfg(8, 1e-2, 1.0);
        cfg.initial_condition = InitialCondition::SingleMode {
            k: vec![1],
            amplitude: 0.0,
        };
        let mut sim = Simulation::new(cfg, dissipative_params(25.0)).unwrap();
        for _ in 0..50 {
            sim.step().unwrap();
        }
        assert_eq!(sim.l2_norm_sq(), 0.0);
        assert_eq!(sim.lp_norm_pow(), 0.0);
    }

    #[test]
    fn linear_problem_is_integrated_exactly() {
        // κ = β = 0 (test mode): a_k(T) = a_k(0) exp((γ − (λ+iα)Λ_k) T).
        let cfg = interval_cfg(8, 1e-3, 1.0);
        let params = CGLParams {
            lambda: 1.0,
            alpha: 0.7,
            kappa: 0.0,
            beta: 0.0,
            gamma: 2.0,
        };
        let mut sim = Simulation::new_unchecked(cfg, params).unwrap();
        assert!(Simulation::new(interval_cfg(8, 1e-3, 1.0), params).is_err());
        for _ in 0..1000 {
            sim.step().unwrap();
        }
        let lam1 = PI * PI;
        let expected = C64::new(0.5, 0.0)
            * (C64::new(params.gamma - params.lambda * lam1, -params.alpha * lam1)).exp();
        let got = sim.state().coeffs[0];
        assert_relative_eq!(got.re, expected.re, max_relative = 1e-10);
        assert_relative_eq!(got.im, expected.im, max_relative = 1e-10, epsilon = 1e-12);
        // All other modes stay identically zero.
        for c in &sim.state().coeffs[1..] {
            assert_eq!(c.norm_sqr(), 0.0);
        }
    }

    #[test]
    fn linear_exactness_2d() {
        let cfg = SimConfig {
            domain: Domain::box_domain(vec![1.0, 2.0]).unwrap(),
            modes_per_axis: vec![6, 6],
            dt: 1e-3,
            t_end: 0.2,
            burn_in: 0.0,
            initial_condition: InitialCondition::SingleMode {
                k: vec![2, 1],
                amplitude: 1.0,
            },
            tangent_count: 0,
            reorth_interval: 10,
            overflow_guard: 1e8,
        };
        let params = CGLParams {
            lambda: 0.3,
            alpha: -0.4,
            kappa: 0.0,
            beta: 0.0,
            gamma: 1.0,
        };
        let mut sim = Simulation::new_unchecked(cfg, params).unwrap();
        let idx = sim.basis().mode_index(&[2, 1]).unwrap();
        let lam = sim.basis().eigenvalues()[idx];
        for _ in 0..200 {
            sim.step().unwrap();
        }
        let t = sim.state().t;
        let expected =
            (C64::new(params.gamma - params.lambda * lam, -params.alpha * lam) * t).exp();
        let got = sim.state().coeffs[idx];
        assert_relative_eq!(got.re, expected.re, max_relative = 1e-10, epsilon = 1e-12);
        assert_relative_eq!(got.im, expected.im, max_relative = 1e-10, epsilon = 1e-12);
    }

    #[test]
    fn tangent_reduces_to_linear_flow_at_zero_state() {
        let mut cfg = interval_cfg(8, 1e-3, 1.0);
        cfg.initial_condition = InitialCondition::SingleMode {
            k: vec![1],
            amplitude: 0.0,
        };
        cfg.tangent_count = 3;
        let params = dissipative_params(4.0);
        let mut sim = Simulation::new(cfg, params).unwrap();
        // Frame 2 starts as the normalized second mode.
        let scale = 1.0 / sim.basis().coeff_norm_factor().sqrt();
        for _ in 0..400 {
            sim.step_with_tangents().unwrap();
        }
        let lam2 = 4.0 * PI * PI;
        let t = sim.state().t;
        let expected = C64::new(scale, 0.0)
            * (C64::new(params.gamma - params.lambda * lam2, -params.alpha * lam2) * t).exp();
        let got = sim.state().tangent_frames[1][1];
        assert_relative_eq!(got.re, expected.re, max_relative = 1e-10, epsilon = 1e-14);
        assert_relative_eq!(got.im, expected.im, max_relative = 1e-10, epsilon = 1e-14);
    }

    #[test]
    fn zero_tangent_stays_zero() {
        let mut cfg = interval_cfg(8, 1e-2, 1.0);
        cfg.tangent_count = 1;
        let mut sim = Simulation::new(cfg, dissipative_params(25.0)).unwrap();
        let zero = vec![C64::new(0.0, 0.0); sim.basis().mode_count()];
        sim.set_tangent_frames(vec![zero]).unwrap();
        for _ in 0..20 {
            sim.step_with_tangents().unwrap();
        }
        assert!(sim.state().tangent_frames[0]
            .iter()
            .all(|c| c.norm_sqr() == 0.0));
    }

    #[test]
    fn trace_at_zero_state_is_diagonal() {
        let mut cfg = interval_cfg(8, 1e-2, 1.0);
        cfg.initial_condition = InitialCondition::SingleMode {
            k: vec![1],
            amplitude: 0.0,
        };
        cfg.tangent_count = 4;
        let params = dissipative_params(10.0);
        let sim = Simulation::new(cfg, params).unwrap();
        let expected: f64 = (1..=4)
            .map(|k| params.gamma - params.lambda * (k * k) as f64 * PI * PI)
            .sum();
        assert_relative_eq!(sim.trace_estimate(), expected, max_relative = 1e-12);
        // Empty trace.
        let cfg0 = interval_cfg(8, 1e-2, 1.0);
        let sim0 = Simulation::new(cfg0, params).unwrap();
        assert_eq!(sim0.trace_estimate(), 0.0);
    }

    #[test]
    fn h1_sums_on_eigenbasis_and_single_frame() {
        let mut cfg = interval_cfg(8, 1e-2, 1.0);
        cfg.tangent_count = 3;
        let sim = Simulation::new(cfg, dissipative_params(25.0)).unwrap();
        let expected: f64 = (1..=3).map(|k| (k * k) as f64 * PI * PI).sum();
        assert_relative_eq!(sim.h1_sums(), expected, max_relative = 1e-12);

        let mut cfg1 = interval_cfg(8, 1e-2, 1.0);
        cfg1.tangent_count = 1;
        let mut sim1 = Simulation::new(cfg1, dissipative_params(25.0)).unwrap();
        let scale = 1.0 / sim1.basis().coeff_norm_factor().sqrt();
        let mut frame = vec![C64::new(0.0, 0.0); sim1.basis().mode_count()];
        frame[1] = C64::new(scale, 0.0); // sin(2πx), normalized
        sim1.set_tangent_frames(vec![frame]).unwrap();
        assert_relative_eq!(sim1.h1_sums(), 4.0 * PI * PI, max_relative = 1e-12);
    }

    #[test]
    fn frames_stay_orthonormal_under_reorthonormalization() {
        let mut cfg = interval_cfg(12, 1e-3, 1.0);
        cfg.initial_condition = InitialCondition::RandomSmooth {
            seed: 11,
            decay_rate: 0.6,
        };
        cfg.tangent_count = 5;
        cfg.reorth_interval = 10;
        let mut sim = Simulation::new(cfg, dissipative_params(30.0)).unwrap();
        for step in 1..=200u32 {
            sim.step_with_tangents().unwrap();
            if step % 10 == 0 {
                sim.orthonormalize_frames();
                for i in 0..5 {
                    for j in 0..=i {
                        let ip = sim
                            .basis()
                            .inner(&sim.state().tangent_frames[i], &sim.state().tangent_frames[j]);
                        let expected = if i == j { 1.0 } else { 0.0 };
                        assert!(
                            (ip.re - expected).abs() < 1e-10 && ip.im.abs() < 1e-10,
                            "frames not orthonormal: <{i},{j}> = {ip}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn per_step_energy_envelope() {
        // ‖u(t+dt)‖² ≤ ‖u(t)‖² e^{2(γ−λΛ₁)dt}(1 + 1e−6) in every regime.
        for gamma in [5.0, 25.0] {
            let mut cfg = interval_cfg(16, 1e-3, 1.0);
            cfg.initial_condition = InitialCondition::RandomSmooth {
                seed: 4,
                decay_rate: 0.8,
            };
            let params = dissipative_params(gamma);
            let mut sim = Simulation::new(cfg, params).unwrap();
            let lam1 = PI * PI;
            let factor = (2.0 * (params.gamma - params.lambda * lam1) * 1e-3).exp();
            let mut prev = sim.l2_norm_sq();
            for _ in 0..1000 {
                sim.step().unwrap();
                let cur = sim.l2_norm_sq();
                assert!(
                    cur <= prev * factor * (1.0 + 1e-6),
                    "energy envelope violated at t = {}: {} > {}",
                    sim.state().t,
                    cur,
                    prev * factor
                );
                prev = cur;
            }
        }
    }

    #[test]
    fn trace_and_frame_inequalities_along_a_run() {
        let mut cfg = interval_cfg(16, 2e-3, 2.0);
        cfg.initial_condition = InitialCondition::RandomSmooth {
            seed: 9,
            decay_rate: 0.7,
        };
        cfg.tangent_count = 4;
        cfg.reorth_interval = 5;
        let params = dissipative_params(25.0);
        let mut sim = Simulation::new(cfg.clone(), params).unwrap();
        let out = sim.run().unwrap();
        // Doubled spectrum of the interval: {Λ_1, Λ_1, Λ_2, Λ_2}.
        let doubled: f64 = [1.0, 1.0, 4.0, 4.0]
            .iter()
            .map(|k| k * PI * PI)
            .sum();
        for rec in &out.records {
            assert!(
                rec.trace_total() <= rec.trace_rhs(&params) + 1e-8,
                "trace inequality violated at t = {}",
                rec.t
            );
            assert!(
                rec.h1_total() >= doubled - 1e-8,
                "frame inequality violated at t = {}: {} < {}",
                rec.t,
                rec.h1_total(),
                doubled
            );
        }
        assert!(out.summary.lieb_thirring_witness.unwrap() > 0.0);
    }

    #[test]
    fn qm_average_is_exact_for_constant_integrand() {
        let mut cfg = interval_cfg(8, 1e-2, 2.0);
        cfg.initial_condition = InitialCondition::SingleMode {
            k: vec![1],
            amplitude: 0.0,
        };
        cfg.tangent_count = 2;
        cfg.burn_in = 0.5;
        let params = dissipative_params(7.0);
        let mut sim = Simulation::new(cfg, params).unwrap();
        let out = sim.run().unwrap();
        for entry in &out.summary.qm {
            let expected: f64 = (1..=entry.m)
                .map(|k| params.gamma - params.lambda * (k * k) as f64 * PI * PI)
                .sum();
            assert_relative_eq!(entry.q_m, expected, max_relative = 1e-10);
        }
        // Running value at the last record agrees with the summary.
        let last = out.records.last().unwrap();
        assert_relative_eq!(
            last.running_qm,
            out.summary.qm.last().unwrap().q_m,
            max_relative = 1e-12
        );
        assert_eq!(out.summary.delta, 0.0);
    }

    #[test]
    fn deterministic_across_runs() {
        let mut cfg = interval_cfg(12, 1e-3, 0.5);
        cfg.initial_condition = InitialCondition::RandomSmooth {
            seed: 123,
            decay_rate: 0.5,
        };
        cfg.tangent_count = 3;
        let params = dissipative_params(20.0);
        let out1 = Simulation::new(cfg.clone(), params).unwrap().run().unwrap();
        let out2 = Simulation::new(cfg, params).unwrap().run().unwrap();
        assert_eq!(out1.records.len(), out2.records.len());
        for (a, b) in out1.records.iter().zip(&out2.records) {
            assert_eq!(a.l2_norm_sq.to_bits(), b.l2_norm_sq.to_bits());
            assert_eq!(a.lp_norm_pow.to_bits(), b.lp_norm_pow.to_bits());
            assert_eq!(a.running_qm.to_bits(), b.running_qm.to_bits());
        }
    }

    #[test]
    fn blowup_guard_fires() {
        let mut cfg = interval_cfg(8, 0.1, 10.0);
        cfg.overflow_guard = 1e4;
        let params = CGLParams {
            lambda: 1.0,
            alpha: 0.0,
            kappa: 1e-6,
            beta: 0.0,
            gamma: 200.0,
        };
        let mut sim = Simulation::new(cfg, params).unwrap();
        let mut tripped = None;
        for _ in 0..200 {
            if let Err(e) = sim.step() {
                tripped = Some(e);
                break;
            }
        }
        match tripped {
            Some(Error::Blowup { last_stable_t, .. }) => assert!(last_stable_t >= 0.0),
            other => panic!("expected blow-up, got {other:?}"),
        }
    }

    #[test]
    fn delta_decays_in_trivial_regime() {
        let mut cfg = interval_cfg(12, 2e-3, 8.0);
        cfg.initial_condition = InitialCondition::RandomSmooth {
            seed: 2,
            decay_rate: 0.9,
        };
        cfg.burn_in = 1.0;
        // γ = 5 < λΛ₁ = π²: every solution decays.
        let params = dissipative_params(5.0);
        let mut sim = Simulation::new(cfg, params).unwrap();
        let out = sim.run().unwrap();
        assert!(out.summary.delta_second_half < out.summary.delta_first_half);
        assert!(out.summary.final_l2_norm_sq < 1e-6);
    }

    #[test]
    fn single_mode_seed_override_is_inert() {
        let ic = InitialCondition::SingleMode {
            k: vec![1],
            amplitude: 1.0,
        };
        assert_eq!(ic.with_seed(5), ic);
        let r = InitialCondition::RandomSmooth {
            seed: 1,
            decay_rate: 0.5,
        };
        assert_eq!(
            r.with_seed(9),
            InitialCondition::RandomSmooth {
                seed: 9,
                decay_rate: 0.5
            }
        );
    }

    #[test]
    fn config_validation_rejects_bad_inputs() {
        let good = interval_cfg(8, 1e-2, 1.0);
        assert!(good.validate().is_ok());
        let mut c = good.clone();
        c.modes_per_axis = vec![3];
        assert!(c.validate().is_err());
        let mut c = good.clone();
        c.burn_in = 1.0;
        assert!(c.validate().is_err());
        let mut c = good.clone();
        c.tangent_count = 9;
        assert!(c.validate().is_err());
        let mut c = good.clone();
        c.reorth_interval = 0;
        assert!(c.validate().is_err());
        let mut c = good.clone();
        c.domain = Domain::box_domain(vec![1.0, 1.0, 1.0]).unwrap();
        c.modes_per_axis = vec![4, 4, 4];
        assert!(c.validate().is_err());
        let mut c = good;
        c.domain = Domain::ball(1, 1.0).unwrap();
        assert!(c.validate().is_err());
    }
}
