//! Dirichlet Laplacian spectra of boxes and lower bounds on eigenvalue sums.
//!
//! On a box with sides L₁..L_n the Dirichlet eigenvalues are
//! Λ(k) = π² Σᵢ (kᵢ/Lᵢ)² over positive integer multi-indices k, repeated
//! with multiplicity. Enumeration walks the mode lattice with a min-heap
//! frontier, so the returned list is a true prefix of the spectrum.
//!
//! The bounds implemented here:
//!
//! * Li–Yau: Σ_{j≤m} Λ_j ≥ (n C_n/(n+2)) V^{−2/n} m^{(n+2)/n},
//!   with C_n = (2π)² ω_n^{−2/n}.
//! * Melas: the Li–Yau bound plus M_n (V/I) m, M_n = c/(n+2),
//!   valid for 0 < c < (2π)² ω_n^{−4/n}.
//! * Doubled-spectrum variant for {λ_j} = {Λ_j, Λ_j}: the Li–Yau term picks
//!   up a factor 2^{−2/n}, the Melas term is unchanged.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::f64::consts::PI;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::geometry::{unit_ball_volume, Domain};

/// Relative slack applied on the certified side of every verification
/// comparison, so roundoff-scale discrepancies never flip a pass flag.
pub const VERIFY_REL_SLACK: f64 = 1e-12;

/// A sorted finite prefix of the Dirichlet spectrum of a box, with the mode
/// multi-index of each eigenvalue.
#[derive(Debug, Clone)]
pub struct Spectrum {
    domain: Domain,
    values: Vec<f64>,
    modes: Vec<Vec<u32>>,
}

impl Spectrum {
    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Eigenvalues, nondecreasing, repeated with multiplicity.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn modes(&self) -> &[Vec<u32>] {
        &self.modes
    }

    /// Partial sums: entry j holds Σ_{i≤j+1} Λ_i.
    pub fn partial_sums(&self) -> Vec<f64> {
        self.values
            .iter()
            .scan(0.0, |acc, v| {
                *acc += v;
                Some(*acc)
            })
            .collect()
    }

    /// The complexified spectrum {Λ_j, Λ_j}: every eigenvalue repeated twice,
    /// consecutively, preserving order.
    pub fn doubled(&self) -> Spectrum {
        let mut values = Vec::with_capacity(2 * self.values.len());
        let mut modes = Vec::with_capacity(2 * self.modes.len());
        for (v, k) in self.values.iter().zip(&self.modes) {
            values.push(*v);
            values.push(*v);
            modes.push(k.clone());
            modes.push(k.clone());
        }
        Spectrum {
            domain: self.domain.clone(),
            values,
            modes,
        }
    }
}

/// The constants every bound formula needs, validated once at construction.
#[derive(Debug, Clone)]
pub struct MethodConstants {
    /// Space dimension n.
    pub n: u32,
    /// ω_n, volume of the unit ball.
    pub omega_n: f64,
    /// Weyl constant C_n = (2π)² ω_n^{−2/n}.
    pub c_n: f64,
    /// Melas numerator c, required to lie in (0, (2π)² ω_n^{−4/n}).
    pub c: f64,
    /// M_n = c/(n+2).
    pub m_n: f64,
    /// Lieb–Thirring constant C_*.
    pub c_star: f64,
}

impl MethodConstants {
    pub fn new(n: u32, c: f64, c_star: f64) -> Result<Self> {
        let omega_n = unit_ball_volume(n)?;
        let bound = melas_window_bound(n)?;
        if !c.is_finite() || c <= 0.0 || c >= bound {
            return Err(Error::MelasConstantOutOfWindow { c, bound, n });
        }
        if !c_star.is_finite() || c_star <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "Lieb-Thirring constant C_* must be positive, got {c_star}"
            )));
        }
        let nf = n as f64;
        let c_n = (2.0 * PI).powi(2) * omega_n.powf(-2.0 / nf);
        Ok(MethodConstants {
            n,
            omega_n,
            c_n,
            c,
            m_n: c / (nf + 2.0),
            c_star,
        })
    }
}

/// Upper end of the admissible window for the Melas numerator:
/// (2π)² ω_n^{−4/n}.
pub fn melas_window_bound(n: u32) -> Result<f64> {
    let omega_n = unit_ball_volume(n)?;
    Ok((2.0 * PI).powi(2) * omega_n.powf(-4.0 / n as f64))
}

/// Λ(k) = π² Σᵢ (kᵢ/Lᵢ)² for a box with the given sides.
pub fn eigenvalue_of_mode(sides: &[f64], k: &[u32]) -> f64 {
    debug_assert_eq!(sides.len(), k.len());
    let sum: f64 = sides
        .iter()
        .zip(k)
        .map(|(l, ki)| {
            let r = *ki as f64 / l;
            r * r
        })
        .sum();
    PI * PI * sum
}

#[derive(Debug)]
struct HeapEntry {
    value: f64,
    mode: Vec<u32>,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap via reversed ordering; ties broken by lexicographic mode
        // order so multiplicities come out deterministically.
        other
            .value
            .total_cmp(&self.value)
            .then_with(|| other.mode.cmp(&self.mode))
    }
}

/// The `m` smallest Dirichlet eigenvalues of a box, with multiplicity, ties
/// broken by lexicographic mode order.
///
/// A min-heap frontier over the mode lattice guarantees the prefix property:
/// Λ is monotone in every mode index, so any mode not yet popped dominates a
/// frontier mode and cannot beat the values already emitted.
pub fn enumerate_eigenvalues(domain: &Domain, m: usize) -> Result<Spectrum> {
    let sides = domain.sides().ok_or(Error::NotABox)?;
    if m == 0 {
        return Err(Error::ZeroModes);
    }
    let dim = sides.len();

    let mut heap = BinaryHeap::new();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let first = vec![1u32; dim];
    seen.insert(first.clone());
    heap.push(HeapEntry {
        value: eigenvalue_of_mode(sides, &first),
        mode: first,
    });

    let mut values = Vec::with_capacity(m);
    let mut modes = Vec::with_capacity(m);
    while values.len() < m {
        let entry = heap.pop().expect("frontier never empties");
        for axis in 0..dim {
            let mut next = entry.mode.clone();
            next[axis] += 1;
            if seen.insert(next.clone()) {
                heap.push(HeapEntry {
                    value: eigenvalue_of_mode(sides, &next),
                    mode: next,
                });
            }
        }
        values.push(entry.value);
        modes.push(entry.mode);
    }

    Ok(Spectrum {
        domain: domain.clone(),
        values,
        modes,
    })
}

/// Li–Yau lower bound on Σ_{j≤m} Λ_j:
/// (n C_n/(n+2)) V^{−2/n} m^{(n+2)/n}.
pub fn li_yau_lower_bound(consts: &MethodConstants, volume: f64, m: usize) -> f64 {
    let n = consts.n as f64;
    n * consts.c_n / (n + 2.0) * volume.powf(-2.0 / n) * (m as f64).powf((n + 2.0) / n)
}

/// Melas lower bound on Σ_{j≤m} Λ_j: Li–Yau plus M_n (V/I) m.
pub fn melas_lower_bound(consts: &MethodConstants, volume: f64, inertia: f64, m: usize) -> f64 {
    li_yau_lower_bound(consts, volume, m) + consts.m_n * (volume / inertia) * m as f64
}

/// Lower bound on Σ_{j≤m} λ_j for the doubled spectrum {Λ_j, Λ_j}:
/// 2^{−2/n} (n C_n/(n+2)) V^{−2/n} m^{(n+2)/n} + M_n (V/I) m.
pub fn doubled_sum_lower_bound(
    consts: &MethodConstants,
    volume: f64,
    inertia: f64,
    m: usize,
) -> f64 {
    let n = consts.n as f64;
    (2.0f64).powf(-2.0 / n) * li_yau_lower_bound(consts, volume, m)
        + consts.m_n * (volume / inertia) * m as f64
}

/// One row of the verification table for a given m.
#[derive(Debug, Clone)]
pub struct VerificationRow {
    pub m: usize,
    /// Σ_{j≤m} Λ_j from enumeration.
    pub sum_enumerated: f64,
    pub li_yau: f64,
    pub melas: f64,
    /// Lower bound for the doubled-spectrum partial sum Σ_{j≤m} λ_j.
    pub doubled_sum_bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct BoundsVerification {
    pub rows: Vec<VerificationRow>,
    pub all_pass: bool,
}

impl BoundsVerification {
    /// CSV table: `m, sum_enumerated, li_yau, melas, doubled_sum_bound, pass`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "m,sum_enumerated,li_yau,melas,doubled_sum_bound,pass")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                r.m, r.sum_enumerated, r.li_yau, r.melas, r.doubled_sum_bound, r.pass
            )?;
        }
        Ok(())
    }
}

/// Check, for every m ≤ m_max, that the enumerated partial sums dominate the
/// Melas bound, that Melas strictly dominates Li–Yau, and that the
/// doubled-spectrum partial sums dominate their own lower bound.
pub fn verify_bounds(
    domain: &Domain,
    m_max: usize,
    consts: &MethodConstants,
) -> Result<BoundsVerification> {
    if m_max == 0 {
        return Err(Error::ZeroModes);
    }
    if domain.dim() != consts.n {
        return Err(Error::InvalidConfig(format!(
            "constants built for n = {} but domain has dimension {}",
            consts.n,
            domain.dim()
        )));
    }
    let spectrum = enumerate_eigenvalues(domain, m_max)?;
    let sums = spectrum.partial_sums();
    let doubled_sums: Vec<f64> = spectrum.doubled().partial_sums();
    let volume = domain.volume();
    let inertia = domain.moment_of_inertia();

    let mut rows = Vec::with_capacity(m_max);
    let mut all_pass = true;
    for m in 1..=m_max {
        let sum = sums[m - 1];
        let li_yau = li_yau_lower_bound(consts, volume, m);
        let melas = melas_lower_bound(consts, volume, inertia, m);
        let doubled_bound = doubled_sum_lower_bound(consts, volume, inertia, m);
        let doubled_sum = doubled_sums[m - 1];
        let pass = sum >= melas * (1.0 - VERIFY_REL_SLACK)
            && melas > li_yau
            && doubled_sum >= doubled_bound * (1.0 - VERIFY_REL_SLACK);
        all_pass &= pass;
        rows.push(VerificationRow {
            m,
            sum_enumerated: sum,
            li_yau,
            melas,
            doubled_sum_bound: doubled_bound,
            pass,
        });
    }
    Ok(BoundsVerification { rows, all_pass })
}
