//! Time-independent Stokes-like parameters.
//!
//! `K0 = <K0>`, `K3 = <K3>` (classical limits), while the transverse pair
//! carries the phase difference:
//! `K1 = √(<K1>² + <K2>²) sin δ21`, `K2 = √(<K1>² + <K2>²) cos δ21`.
//! The (sin, cos) assignment is fixed; swapping it changes nothing physical.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::coherent::{CoherentParams, KExpectations};
use crate::error::{Error, Result};

/// Relative tolerance for rejecting inconsistent expectation sets.
pub const EXPECTATION_IDENTITY_TOL: f64 = 1e-6;

/// Phase difference `δ21 = φ2 − φ1`, held in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DeltaPhase(f64);

impl DeltaPhase {
    pub fn new(radians: f64) -> Self {
        let r = radians.rem_euclid(TAU);
        // rem_euclid rounds tiny negatives up to exactly TAU.
        Self(if r >= TAU { 0.0 } else { r })
    }

    pub fn from_phases(phi1: f64, phi2: f64) -> Self {
        Self::new(phi2 - phi1)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn sin(self) -> f64 {
        self.0.sin()
    }

    pub fn cos(self) -> f64 {
        self.0.cos()
    }

    pub fn negated(self) -> Self {
        Self::new(-self.0)
    }

    pub fn shifted(self, radians: f64) -> Self {
        Self::new(self.0 + radians)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StokesLike {
    pub k0: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub delta21: DeltaPhase,
}

impl StokesLike {
    pub fn as_array(&self) -> [f64; 4] {
        [self.k0, self.k1, self.k2, self.k3]
    }

    /// `K3² − K0² − K1² − K2²`.
    pub fn force_residual(&self) -> f64 {
        self.k3 * self.k3 - self.k0 * self.k0 - self.k1 * self.k1 - self.k2 * self.k2
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

pub fn stokes_like(p: &CoherentParams) -> StokesLike {
    let delta = DeltaPhase::from_phases(p.phi1, p.phi2);
    let (a1, a2) = (p.amp1, p.amp2);
    let transverse = a1 * a2;
    StokesLike {
        k0: 0.5 * (a1 * a1 - a2 * a2),
        k1: transverse * delta.sin(),
        k2: transverse * delta.cos(),
        k3: 0.5 * (a1 * a1 + a2 * a2),
        delta21: delta,
    }
}

/// Builds the parameters from (classical) expectation values.
///
/// Rejects sets whose hyperbolic identity `k3² − k0² = k1² + k2²` is off
/// by more than [`EXPECTATION_IDENTITY_TOL`] relative to `k3²`.
pub fn stokes_from_expectations(e: &KExpectations, delta: DeltaPhase) -> Result<StokesLike> {
    let scale = (e.k3 * e.k3).max(f64::MIN_POSITIVE);
    let defect = e.hyperbolic_defect();
    if defect.is_nan() || defect.abs() > EXPECTATION_IDENTITY_TOL * scale {
        return Err(Error::Precondition(format!(
            "expectations violate k3² − k0² = k1² + k2² by {defect:e} (k3² = {:e})",
            e.k3 * e.k3
        )));
    }
    let transverse = e.transverse_magnitude();
    Ok(StokesLike {
        k0: e.k0,
        k1: transverse * delta.sin(),
        k2: transverse * delta.cos(),
        k3: e.k3,
        delta21: delta,
    })
}

/// True iff `|K3² − K0² − K1² − K2²| ≤ tol · max(1, K3²)`.
pub fn verify_force_identity(s: &StokesLike, tol: f64) -> bool {
    s.force_residual().abs() <= tol * (s.k3 * s.k3).max(1.0)
}

/// Writes rows `k0,k1,k2,k3,delta21` with a header line.
pub fn write_csv<W: std::io::Write>(rows: &[StokesLike], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::Serialization(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn delta_canonical_range() {
        assert_eq!(DeltaPhase::new(0.0).radians(), 0.0);
        assert!((DeltaPhase::new(-FRAC_PI_2).radians() - 1.5 * PI).abs() < 1e-15);
        assert!((DeltaPhase::new(5.0 * PI).radians() - PI).abs() < 1e-12);
        assert_eq!(DeltaPhase::new(-1e-18).radians(), 0.0);
        assert_eq!(DeltaPhase::new(TAU).radians(), 0.0);
        for x in [-100.0, -TAU, -1e-300, 3.0, 7.0, 1e6] {
            let d = DeltaPhase::new(x).radians();
            assert!((0.0..TAU).contains(&d), "{x} -> {d}");
            let d = DeltaPhase::new(x).shifted(4.0).negated().radians();
            assert!((0.0..TAU).contains(&d));
        }
    }

    #[test]
    fn reference_point() {
        let s = stokes_like(&CoherentParams::new(1.0, 0.5, 0.0, FRAC_PI_2));
        assert_eq!(s.k0, 0.375);
        assert!((s.k1 - 0.5).abs() < 1e-16);
        assert!(s.k2.abs() < 1e-16);
        assert_eq!(s.k3, 0.625);
    }

    #[test]
    fn single_mode_and_equal_amplitudes() {
        let s = stokes_like(&CoherentParams::new(1.5, 0.0, 0.3, 2.0));
        assert_eq!(s.as_array(), [1.125, 0.0, 0.0, 1.125]);
        assert_eq!(s.k3, s.k0);
        assert!((s.delta21.radians() - 1.7).abs() < 1e-15);

        let s = stokes_like(&CoherentParams::new(1.0, 1.0, 0.0, 0.0));
        assert_eq!(s.as_array(), [0.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn from_expectations_examples() {
        let vac = KExpectations::from_array([-0.5, 0.0, 0.0, 0.5]);
        let s = stokes_from_expectations(&vac, DeltaPhase::new(1.0)).unwrap();
        assert_eq!(s.as_array(), [-0.5, 0.0, 0.0, 0.5]);

        let e = KExpectations::from_array([0.375, 0.5, 0.0, 0.625]);
        let s = stokes_from_expectations(&e, DeltaPhase::new(FRAC_PI_2)).unwrap();
        let direct = stokes_like(&CoherentParams::new(1.0, 0.5, 0.0, FRAC_PI_2));
        for (x, y) in s.as_array().iter().zip(direct.as_array()) {
            assert!((x - y).abs() < 1e-15);
        }

        let bad = KExpectations::from_array([0.375, 0.55, 0.0, 0.625]);
        assert!(matches!(
            stokes_from_expectations(&bad, DeltaPhase::new(0.0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn force_identity_examples() {
        let mk = |a: [f64; 4]| StokesLike {
            k0: a[0],
            k1: a[1],
            k2: a[2],
            k3: a[3],
            delta21: DeltaPhase::new(0.0),
        };
        assert!(verify_force_identity(&mk([0.375, 0.5, 0.0, 0.625]), 1e-12));
        assert!(verify_force_identity(&mk([0.0; 4]), 1e-12));
        assert!(!verify_force_identity(&mk([0.0, 1.0, 0.0, 0.5]), 1e-12));
    }

    #[test]
    fn time_and_frequency_do_not_enter() {
        let p = CoherentParams::new(0.9, 0.4, 0.3, 2.2);
        let base = stokes_like(&p);
        for i in 0..10 {
            let q = p.with_time(0.5 + i as f64, 1.3 * i as f64);
            assert_eq!(stokes_like(&q), base);
        }
    }

    #[test]
    fn json_and_csv_forms() {
        let s = stokes_like(&CoherentParams::new(1.0, 1.0, 0.0, 0.0));
        let v: serde_json::Value = serde_json::from_str(&s.to_json().unwrap()).unwrap();
        assert_eq!(v["k2"], 1.0);
        assert_eq!(v["delta21"], 0.0);

        let mut buf = Vec::new();
        write_csv(&[s, s], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("k0,k1,k2,k3,delta21"));
        assert_eq!(lines.count(), 2);
    }
}
