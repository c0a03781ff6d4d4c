//! Transverse field samples and the nonparametric polarization curve
//!
//! ```text
//! 𝒜 E1² + ℬ E1 E2 + 𝒞 E2² = (A1 B2 − A2 B1)²
//! 𝒜 = A2² + B2²,  ℬ = −2(A1 A2 + B1 B2),  𝒞 = A1² + B1²
//! ```
//!
//! with `Ai = 2|α0i| cos φi`, `Bi = 2|α0i| sin φi`.

use serde::{Deserialize, Serialize};

use crate::coherent::CoherentParams;
use crate::error::Result;
use crate::stokes::StokesLike;

/// Relative threshold on `|A1 B2 − A2 B1| / (ã1 ã2)` below which the curve
/// collapses to a line.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// `τ = ωt − kz`.
pub fn phase_tau(omega: f64, t: f64, k: f64, z: f64) -> f64 {
    omega * t - k * z
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbCoefficients {
    #[serde(rename = "A1")]
    pub a1: f64,
    #[serde(rename = "B1")]
    pub b1: f64,
    #[serde(rename = "A2")]
    pub a2: f64,
    #[serde(rename = "B2")]
    pub b2: f64,
}

pub fn ab_coefficients(p: &CoherentParams) -> AbCoefficients {
    AbCoefficients {
        a1: 2.0 * p.amp1 * p.phi1.cos(),
        b1: 2.0 * p.amp1 * p.phi1.sin(),
        a2: 2.0 * p.amp2 * p.phi2.cos(),
        b2: 2.0 * p.amp2 * p.phi2.sin(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub tau: f64,
    #[serde(rename = "E1")]
    pub e1: f64,
    #[serde(rename = "E2")]
    pub e2: f64,
}

/// `Ei = Ai cos τ + Bi sin τ`.
pub fn sample_field(p: &CoherentParams, tau: f64) -> FieldSample {
    let c = ab_coefficients(p);
    let (s, co) = tau.sin_cos();
    FieldSample {
        tau,
        e1: c.a1 * co + c.b1 * s,
        e2: c.a2 * co + c.b2 * s,
    }
}

/// Same field in oscillation form, `Ei = ãi cos(τ − φi)` with `ãi = 2|α0i|`.
pub fn sample_field_oscillation(p: &CoherentParams, tau: f64) -> FieldSample {
    FieldSample {
        tau,
        e1: 2.0 * p.amp1 * (tau - p.phi1).cos(),
        e2: 2.0 * p.amp2 * (tau - p.phi2).cos(),
    }
}

/// `n` samples evenly covering one period `τ ∈ [0, 2π)`.
pub fn sample_period(p: &CoherentParams, n: usize) -> Vec<FieldSample> {
    (0..n)
        .map(|j| sample_field(p, std::f64::consts::TAU * j as f64 / n as f64))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseQuadratic {
    /// Coefficient of E1².
    #[serde(rename = "cA")]
    pub c_a: f64,
    /// Coefficient of E1·E2.
    #[serde(rename = "cB")]
    pub c_b: f64,
    /// Coefficient of E2².
    #[serde(rename = "cC")]
    pub c_c: f64,
    pub rhs: f64,
    #[serde(flatten)]
    pub ab: AbCoefficients,
    pub tilde_a1: f64,
    pub tilde_a2: f64,
    /// Set when `A1 B2 = A2 B1`: the trace is a segment through the origin.
    pub degenerate: bool,
}

impl EllipseQuadratic {
    pub fn discriminant(&self) -> f64 {
        self.c_b * self.c_b - 4.0 * self.c_a * self.c_c
    }

    /// `A1 B2 − A2 B1`.
    pub fn cross(&self) -> f64 {
        self.ab.a1 * self.ab.b2 - self.ab.a2 * self.ab.b1
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn build_quadratic(p: &CoherentParams) -> EllipseQuadratic {
    let ab = ab_coefficients(p);
    let AbCoefficients { a1, b1, a2, b2 } = ab;
    let cross = a1 * b2 - a2 * b1;
    let (tilde_a1, tilde_a2) = (2.0 * p.amp1, 2.0 * p.amp2);
    EllipseQuadratic {
        c_a: a2 * a2 + b2 * b2,
        c_b: -2.0 * (a1 * a2 + b1 * b2),
        c_c: a1 * a1 + b1 * b1,
        rhs: cross * cross,
        ab,
        tilde_a1,
        tilde_a2,
        degenerate: cross.abs() <= DEGENERACY_TOL * tilde_a1 * tilde_a2,
    }
}

/// `𝒜E1² + 𝒞E2² + ℬE1E2 − rhs`, divided by `max(1, rhs)`.
pub fn residual(q: &EllipseQuadratic, s: &FieldSample) -> f64 {
    let lhs = q.c_a * s.e1 * s.e1 + q.c_c * s.e2 * s.e2 + q.c_b * s.e1 * s.e2;
    (lhs - q.rhs) / q.rhs.max(1.0)
}

/// The curve written with Stokes-like coefficients,
/// `(K3 − K0) E1² + (K3 + K0) E2² − 2 K2 E1 E2 = rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseStokesForm {
    #[serde(rename = "cA")]
    pub c_a: f64,
    #[serde(rename = "cB")]
    pub c_b: f64,
    #[serde(rename = "cC")]
    pub c_c: f64,
    /// Conventional right-hand side `2 K1²`.
    pub rhs: f64,
    /// Right-hand side the sampled field actually satisfies, `4 K1²`.
    pub rhs_on_curve: f64,
}

impl EllipseStokesForm {
    /// Residual against `rhs_on_curve`, normalized like [`residual`].
    pub fn residual(&self, s: &FieldSample) -> f64 {
        let lhs = self.c_a * s.e1 * s.e1 + self.c_c * s.e2 * s.e2 + self.c_b * s.e1 * s.e2;
        (lhs - self.rhs_on_curve) / self.rhs_on_curve.max(1.0)
    }
}

pub fn quadratic_in_stokes(s: &StokesLike) -> EllipseStokesForm {
    EllipseStokesForm {
        c_a: s.k3 - s.k0,
        c_b: -2.0 * s.k2,
        c_c: s.k3 + s.k0,
        rhs: 2.0 * s.k1 * s.k1,
        rhs_on_curve: 4.0 * s.k1 * s.k1,
    }
}

/// How the Stokes-form coefficients relate to the direct quadratic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleReport {
    /// Least-squares factor `λ` with `(𝒜, ℬ, 𝒞) ≈ λ (K3−K0, −2K2, K3+K0)`.
    pub scale: f64,
    /// Largest `|q_i − λ f_i|` over the three left-hand coefficients,
    /// relative to the largest `|q_i|`.
    pub lhs_deviation: f64,
    /// `rhs / (λ · 2K1²)`; `None` when the trace is degenerate.
    pub rhs_ratio: Option<f64>,
    /// `rhs / (λ · 4K1²)`; `None` when the trace is degenerate.
    pub rhs_on_curve_ratio: Option<f64>,
}

pub fn stokes_form_scale(q: &EllipseQuadratic, f: &EllipseStokesForm) -> ScaleReport {
    let qv = [q.c_a, q.c_b, q.c_c];
    let fv = [f.c_a, f.c_b, f.c_c];
    let dot: f64 = qv.iter().zip(&fv).map(|(a, b)| a * b).sum();
    let ff: f64 = fv.iter().map(|b| b * b).sum();
    let scale = if ff > 0.0 { dot / ff } else { 0.0 };
    let q_max = qv.iter().map(|x| x.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let lhs_deviation = qv
        .iter()
        .zip(&fv)
        .map(|(a, b)| (a - scale * b).abs())
        .fold(0.0, f64::max)
        / q_max;
    let ratio = |denom: f64| (!q.degenerate && denom != 0.0).then(|| q.rhs / (scale * denom));
    ScaleReport {
        scale,
        lhs_deviation,
        rhs_ratio: ratio(f.rhs),
        rhs_on_curve_ratio: ratio(f.rhs_on_curve),
    }
}

/// Writes `tau,E1,E2` rows with a header line.
pub fn write_samples_csv<W: std::io::Write>(samples: &[FieldSample], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for s in samples {
        w.serialize(s)?;
    }
    w.flush().map_err(|e| crate::Error::Serialization(e.to_string()))?;
    Ok(())
}
