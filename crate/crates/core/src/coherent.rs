//! Truncated two-mode coherent states and the classical limits of the
//! generators.
//!
//! The exact quantum expectations differ from the classical closed forms by
//! an ordering constant: `K0` and `K3` contain `a2 a2† = a2†a2 + 1`, so
//! `<K0> = ½(|α1|² − |α2|² − 1)` and `<K3> = ½(|α1|² + |α2|² + 1)`.
//! [`KExpectations::classical`] removes that constant before comparison.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::KOperators;
use crate::error::{Error, Result};
use crate::fock::FockBasis;

/// Largest tolerated `1 − ‖v‖²` for a truncated coherent state.
pub const NORM_DEFICIT_LIMIT: f64 = 1e-10;
/// Largest tolerated imaginary part of a Hermitian quadratic form.
pub const IMAG_PART_LIMIT: f64 = 1e-10;
/// Cutoff used for classical-limit crosschecks.
pub const DEFAULT_CROSSCHECK_N_MAX: usize = 40;

/// Vacuum ordering constants `(K0, K1, K2, K3)` of the exact expectations.
pub const ORDERING_OFFSET: [f64; 4] = [-0.5, 0.0, 0.0, 0.5];

/// Wave parameters: amplitudes `|α0i|`, phases `φi`, angular frequency and time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentParams {
    pub amp1: f64,
    pub amp2: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub omega: f64,
    pub t: f64,
}

impl CoherentParams {
    /// Parameters at `t = 0` with `ω = 1`.
    pub fn new(amp1: f64, amp2: f64, phi1: f64, phi2: f64) -> Self {
        Self {
            amp1,
            amp2,
            phi1,
            phi2,
            omega: 1.0,
            t: 0.0,
        }
    }

    pub fn with_time(self, omega: f64, t: f64) -> Self {
        Self { omega, t, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("amp1", self.amp1), ("amp2", self.amp2)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Config(format!("{name} must be finite and non-negative, got {v}")));
            }
        }
        for (name, v) in [("phi1", self.phi1), ("phi2", self.phi2), ("t", self.t)] {
            if !v.is_finite() {
                return Err(Error::Config(format!("{name} must be finite, got {v}")));
            }
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::Config(format!("omega must be positive, got {}", self.omega)));
        }
        Ok(())
    }

    /// Phase sum `σ21 = φ2 + φ1`.
    pub fn sigma21(&self) -> f64 {
        self.phi2 + self.phi1
    }

    /// Raw phase difference `φ2 − φ1`, not canonicalized.
    pub fn delta21_raw(&self) -> f64 {
        self.phi2 - self.phi1
    }

    /// `α1(t) = |α01| exp[−i(ωt − φ1)]`.
    pub fn alpha1(&self) -> Complex64 {
        Complex64::from_polar(self.amp1, self.phi1 - self.omega * self.t)
    }

    /// `α2(t) = |α02| exp[−i(ωt − φ2)]`.
    pub fn alpha2(&self) -> Complex64 {
        Complex64::from_polar(self.amp2, self.phi2 - self.omega * self.t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherentState {
    basis: FockBasis,
    vector: Vec<Complex64>,
    alpha1: Complex64,
    alpha2: Complex64,
}

impl CoherentState {
    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn vector(&self) -> &[Complex64] {
        &self.vector
    }

    pub fn alpha1(&self) -> Complex64 {
        self.alpha1
    }

    pub fn alpha2(&self) -> Complex64 {
        self.alpha2
    }

    pub fn norm_sqr(&self) -> f64 {
        self.vector.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Probability weight lost beyond the cutoff.
    pub fn norm_deficit(&self) -> f64 {
        (1.0 - self.norm_sqr()).max(0.0)
    }
}

/// Single-mode amplitudes `e^{−|α|²/2} αⁿ / √n!` for `n = 0..=n_max`,
/// evaluated in log space so large cutoffs never overflow.
fn single_mode(alpha: Complex64, n_max: usize) -> Vec<Complex64> {
    let r = alpha.norm();
    let arg = alpha.arg();
    let mut out = Vec::with_capacity(n_max + 1);
    let mut ln_fact = 0.0;
    for n in 0..=n_max {
        if n > 0 {
            ln_fact += (n as f64).ln();
        }
        let amp = if r == 0.0 {
            if n == 0 {
                1.0
            } else {
                0.0
            }
        } else {
            (-0.5 * r * r + n as f64 * r.ln() - 0.5 * ln_fact).exp()
        };
        out.push(Complex64::from_polar(amp, n as f64 * arg));
    }
    out
}

/// Coherent state `|α1, α2>` truncated to `basis`; the vector is not
/// renormalized, so its norm exposes the truncation loss.
pub fn build_coherent(basis: FockBasis, p: &CoherentParams) -> Result<CoherentState> {
    p.validate()?;
    let (alpha1, alpha2) = (p.alpha1(), p.alpha2());
    let m1 = single_mode(alpha1, basis.n_max());
    let m2 = single_mode(alpha2, basis.n_max());
    let vector = basis.states().map(|(_, n1, n2)| m1[n1] * m2[n2]).collect();
    Ok(CoherentState {
        basis,
        vector,
        alpha1,
        alpha2,
    })
}

/// Expectation values `<K0>..<K3>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KExpectations {
    pub k0: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
}

impl KExpectations {
    pub fn as_array(&self) -> [f64; 4] {
        [self.k0, self.k1, self.k2, self.k3]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self {
            k0: a[0],
            k1: a[1],
            k2: a[2],
            k3: a[3],
        }
    }

    /// Removes the vacuum ordering constant from exact quantum
    /// expectations, leaving the classical part.
    pub fn classical(&self) -> Self {
        let mut a = self.as_array();
        a.iter_mut().zip(ORDERING_OFFSET).for_each(|(x, o)| *x -= o);
        Self::from_array(a)
    }

    /// `k3² − k0² − (k1² + k2²)`.
    pub fn hyperbolic_defect(&self) -> f64 {
        self.k3 * self.k3 - self.k0 * self.k0 - (self.k1 * self.k1 + self.k2 * self.k2)
    }

    pub fn transverse_magnitude(&self) -> f64 {
        self.k1.hypot(self.k2)
    }
}

/// `<v|K_i|v> / <v|v>` for each generator.
pub fn expectations_numeric(state: &CoherentState, k: &KOperators) -> Result<KExpectations> {
    state.basis().ensure_same(&k.basis())?;
    let v = state.vector();
    let norm_sqr = state.norm_sqr();
    if norm_sqr == 0.0 {
        return Err(Error::Domain("state has zero norm".into()));
    }
    let mut out = [0.0; 4];
    for (slot, op) in out.iter_mut().zip(k.as_array()) {
        let kv = op.apply(v)?;
        let form: Complex64 = v.iter().zip(&kv).map(|(a, b)| a.conj() * b).sum();
        let form = form / norm_sqr;
        if form.im.abs() > IMAG_PART_LIMIT * (1.0 + form.re.abs()) {
            return Err(Error::Domain(format!(
                "expectation has imaginary part {:e}; operator is not Hermitian on this state",
                form.im
            )));
        }
        *slot = form.re;
    }
    Ok(KExpectations::from_array(out))
}

/// Classical limits in closed form:
/// `k0 = ½(A1² − A2²)`, `k1 = A1 A2 cos(2ωt − σ21)`,
/// `k2 = A1 A2 sin(2ωt − σ21)`, `k3 = ½(A1² + A2²)`.
pub fn expectations_analytic(p: &CoherentParams) -> KExpectations {
    let (a1, a2) = (p.amp1, p.amp2);
    let phase = 2.0 * p.omega * p.t - p.sigma21();
    KExpectations {
        k0: 0.5 * (a1 * a1 - a2 * a2),
        k1: a1 * a2 * phase.cos(),
        k2: a1 * a2 * phase.sin(),
        k3: 0.5 * (a1 * a1 + a2 * a2),
    }
}

/// Numeric-vs-closed-form comparison at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub params: CoherentParams,
    pub n_max: usize,
    /// Exact quantum expectations, ordering constant included.
    pub numeric: KExpectations,
    pub analytic: KExpectations,
    /// `|numeric.classical() − analytic|` per component.
    pub deviations: [f64; 4],
    pub ordering_offset: [f64; 4],
    pub tolerance: f64,
    pub passed: bool,
    pub norm_deficit: f64,
}

impl CrosscheckReport {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().copied().fold(0.0, f64::max)
    }
}

/// Compares truncated-state expectations against the closed forms.
///
/// Reuses `k` when the caller already built the generators on `basis`.
pub fn crosscheck_with(
    p: &CoherentParams,
    k: &KOperators,
    tol: f64,
) -> Result<CrosscheckReport> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Config(format!("tolerance must be positive, got {tol}")));
    }
    let basis = k.basis();
    let state = build_coherent(basis, p)?;
    let norm_deficit = state.norm_deficit();
    if norm_deficit > NORM_DEFICIT_LIMIT {
        return Err(Error::Truncation {
            norm_deficit,
            limit: NORM_DEFICIT_LIMIT,
            n_max: basis.n_max(),
        });
    }
    let numeric = expectations_numeric(&state, k)?;
    let analytic = expectations_analytic(p);
    let classical = numeric.classical().as_array();
    let mut deviations = [0.0; 4];
    for (d, (x, y)) in deviations.iter_mut().zip(classical.iter().zip(analytic.as_array())) {
        *d = (x - y).abs();
    }
    let passed = deviations.iter().all(|&d| d <= tol);
    Ok(CrosscheckReport {
        params: *p,
        n_max: basis.n_max(),
        numeric,
        analytic,
        deviations,
        ordering_offset: ORDERING_OFFSET,
        tolerance: tol,
        passed,
        norm_deficit,
    })
}

pub fn crosscheck(p: &CoherentParams, basis: FockBasis, tol: f64) -> Result<CrosscheckReport> {
    let k = crate::algebra::build_k(basis)?;
    crosscheck_with(p, &k, tol)
}

/// Deterministic grid of parameter points: amplitudes on a 5×5 lattice
/// over `[0, amp_max]`, with phases and time varied per point.
pub fn crosscheck_grid(amp_max: f64) -> Vec<CoherentParams> {
    let steps = 5;
    let mut out = Vec::with_capacity(steps * steps);
    for i in 0..steps {
        for j in 0..steps {
            let idx = (i * steps + j) as f64;
            out.push(CoherentParams {
                amp1: amp_max * i as f64 / (steps - 1) as f64,
                amp2: amp_max * j as f64 / (steps - 1) as f64,
                phi1: 0.37 * idx,
                phi2: -0.61 * idx + 1.0,
                omega: 1.0 + 0.1 * i as f64,
                t: 0.05 * j as f64,
            });
        }
    }
    out
}
