//! Poincaré-hyperboloid coordinates, surface meshes and polarization regions.
//!
//! With `ãi = 2|α0i|` the hyperbolic angles follow from
//!
//! ```text
//! tanh 2ψ = −2ã1ã2 cos δ21 / (ã1² + ã2²)
//! sinh 2χ = −2ã1ã2 sin δ21 / (ã1² − ã2²)
//! ```
//!
//! and map back to the Stokes-like parameters as
//! `K1 = −K0 sinh 2χ`, `K2 = −|K0| cosh 2χ sinh 2ψ`, `K3 = |K0| cosh 2χ cosh 2ψ`.
//! The K1 branch is the sign of `−K0`; the K2 branch is always negative
//! because `K2 = −K3 tanh 2ψ` with `K3 ≥ 0`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coherent::CoherentParams;
use crate::error::{Error, Result};
use crate::stokes::{stokes_like, DeltaPhase, StokesLike};

/// Default absolute tolerance on δ21 for region boundaries.
pub const DEFAULT_REGION_TOL: f64 = 1e-9;
/// `|tanh 2ψ|` this close to 1 is treated as the boundary at infinity.
pub const ATANH_EDGE_TOL: f64 = 1e-14;
/// Relative `|ã1² − ã2²|` below which the amplitudes count as equal for χ.
pub const EQUAL_AMPLITUDE_TOL: f64 = 1e-14;
/// `|sin δ21|` below which the phase difference counts as linear for χ.
pub const SIN_ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    /// `Plus` for zero.
    pub fn of(x: f64) -> Self {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(Error::Config(format!("sign must be '+' or '-', got '{other}'"))),
        }
    }
}

/// A hyperbolic angle that may sit at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HyperAngle {
    Finite(f64),
    Infinite(Sign),
}

impl HyperAngle {
    pub fn finite(self) -> Option<f64> {
        match self {
            HyperAngle::Finite(x) => Some(x),
            HyperAngle::Infinite(_) => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, HyperAngle::Finite(_))
    }
}

fn tilde_amplitudes(p: &CoherentParams) -> Result<(f64, f64)> {
    p.validate()?;
    let (t1, t2) = (2.0 * p.amp1, 2.0 * p.amp2);
    if t1 == 0.0 && t2 == 0.0 {
        return Err(Error::Domain("both amplitudes are zero: there is no field".into()));
    }
    Ok((t1, t2))
}

/// `ψ = ½ atanh(−2ã1ã2 cos δ21 / (ã1² + ã2²))`.
pub fn psi_from_params(p: &CoherentParams) -> Result<HyperAngle> {
    let (t1, t2) = tilde_amplitudes(p)?;
    let arg = -2.0 * t1 * t2 * p.delta21_raw().cos() / (t1 * t1 + t2 * t2);
    if arg.abs() >= 1.0 - ATANH_EDGE_TOL {
        Ok(HyperAngle::Infinite(Sign::of(arg)))
    } else {
        Ok(HyperAngle::Finite(0.5 * arg.atanh()))
    }
}

/// `χ = ½ asinh(−2ã1ã2 sin δ21 / (ã1² − ã2²))`.
///
/// Equal amplitudes with `sin δ21 ≠ 0` send χ to infinity (the circular
/// limit); equal amplitudes with `sin δ21 = 0` give the `0/0` case, taken
/// as `χ = 0` since `K1 = 0` there.
pub fn chi_from_params(p: &CoherentParams) -> Result<HyperAngle> {
    let (t1, t2) = tilde_amplitudes(p)?;
    let diff = t1 * t1 - t2 * t2;
    let sin = p.delta21_raw().sin();
    if diff.abs() < EQUAL_AMPLITUDE_TOL * (t1 * t1 + t2 * t2) {
        if sin.abs() > SIN_ZERO_TOL {
            // Sign taken from the approach with ã1 slightly above ã2.
            return Ok(HyperAngle::Infinite(Sign::of(-sin)));
        }
        return Ok(HyperAngle::Finite(0.0));
    }
    Ok(HyperAngle::Finite(0.5 * (-2.0 * t1 * t2 * sin / diff).asinh()))
}

/// `α` with `tanh α = −ã2/ã1`; exists only for `ã2 < ã1`.
pub fn alpha_angle(p: &CoherentParams) -> Option<f64> {
    let (t1, t2) = (2.0 * p.amp1, 2.0 * p.amp2);
    (t1 > 0.0 && t2 < t1).then(|| (-t2 / t1).atanh())
}

/// Location of a polarization state on the hyperboloid, with the sign
/// branches needed to map it back.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperboloidCoords {
    pub chi: HyperAngle,
    pub psi: HyperAngle,
    pub k0_abs: f64,
    pub k0_sign: Sign,
    /// Branch of `K1 = ±|K0| sinh 2χ`.
    pub k1_sign: Sign,
    /// Branch of `K2 = ±|K0| cosh 2χ sinh 2ψ`.
    pub k2_sign: Sign,
}

impl HyperboloidCoords {
    pub fn is_finite(&self) -> bool {
        self.chi.is_finite() && self.psi.is_finite()
    }

    /// Describes the limit when the point sits at infinity.
    pub fn limit_note(&self) -> Option<&'static str> {
        match (self.chi, self.psi) {
            (HyperAngle::Infinite(_), _) => {
                Some("circular limit: K0 -> 0 and the hyperboloid apex approaches the origin")
            }
            (_, HyperAngle::Infinite(_)) => {
                Some("equal amplitudes with linear phase: K0 = K1 = 0, the state lies on the light cone")
            }
            _ => None,
        }
    }
}

/// Coordinates and sign branches for the given wave.
pub fn hyperboloid_coords(p: &CoherentParams) -> Result<HyperboloidCoords> {
    let chi = chi_from_params(p)?;
    let psi = psi_from_params(p)?;
    let s = stokes_like(p);
    let k0_sign = Sign::of(s.k0);
    Ok(HyperboloidCoords {
        chi,
        psi,
        k0_abs: s.k0.abs(),
        k0_sign,
        k1_sign: k0_sign.flip(),
        k2_sign: Sign::Minus,
    })
}

/// Maps finite coordinates back to Stokes-like parameters.
pub fn coords_to_stokes(c: &HyperboloidCoords) -> Result<StokesLike> {
    let (chi, psi) = match (c.chi, c.psi) {
        (HyperAngle::Finite(x), HyperAngle::Finite(y)) => (x, y),
        _ => {
            return Err(Error::NotApplicable(
                "point at infinity has no finite Stokes-like image".into(),
            ))
        }
    };
    if !(c.k0_abs.is_finite() && c.k0_abs >= 0.0) {
        return Err(Error::Domain(format!("|K0| must be non-negative, got {}", c.k0_abs)));
    }
    let (c2x, s2x) = ((2.0 * chi).cosh(), (2.0 * chi).sinh());
    let (c2p, s2p) = ((2.0 * psi).cosh(), (2.0 * psi).sinh());
    let k1 = c.k1_sign.value() * c.k0_abs * s2x;
    let k2 = c.k2_sign.value() * c.k0_abs * c2x * s2p;
    let delta = if k1 == 0.0 && k2 == 0.0 { 0.0 } else { k1.atan2(k2) };
    Ok(StokesLike {
        k0: c.k0_sign.value() * c.k0_abs,
        k1,
        k2,
        k3: c.k0_abs * c2x * c2p,
        delta21: DeltaPhase::new(delta),
    })
}

/// Principal-axis quantities of the ellipse in the hyperbolically rotated frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrincipalAxes {
    pub psi: f64,
    /// `a²`.
    pub a2: f64,
    /// `b²`.
    pub b2: f64,
    pub asq_minus_bsq: f64,
    /// `√(a² b²)`.
    pub ab: f64,
    /// `∓ab = ã1 ã2 sin δ21`.
    pub ab_signed: f64,
    /// `(a² − b²) − (ã1² − ã2²)`.
    pub difference_residual: f64,
    /// `|ab| − ã1 ã2 |sin δ21|`.
    pub product_residual: f64,
}

pub fn principal_axes(p: &CoherentParams) -> Result<PrincipalAxes> {
    let psi = psi_from_params(p)?.finite().ok_or_else(|| {
        Error::NotApplicable("ψ is infinite: equal amplitudes with linear phase".into())
    })?;
    let (t1, t2) = (2.0 * p.amp1, 2.0 * p.amp2);
    let delta = p.delta21_raw();
    let (ch, sh) = (psi.cosh(), psi.sinh());
    let cross = 2.0 * t1 * t2 * sh * ch * delta.cos();
    let a2 = t1 * t1 * ch * ch + t2 * t2 * sh * sh + cross;
    let b2 = t1 * t1 * sh * sh + t2 * t2 * ch * ch + cross;
    let ab = (a2 * b2).max(0.0).sqrt();
    let ab_signed = t1 * t2 * delta.sin();
    Ok(PrincipalAxes {
        psi,
        a2,
        b2,
        asq_minus_bsq: a2 - b2,
        ab,
        ab_signed,
        difference_residual: (a2 - b2) - (t1 * t1 - t2 * t2),
        product_residual: ab - ab_signed.abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshVertex {
    pub chi2: f64,
    pub psi2: f64,
    #[serde(rename = "K1")]
    pub k1: f64,
    #[serde(rename = "K2")]
    pub k2: f64,
    #[serde(rename = "K3")]
    pub k3: f64,
}

impl MeshVertex {
    pub fn norm(&self) -> f64 {
        (self.k1 * self.k1 + self.k2 * self.k2 + self.k3 * self.k3).sqrt()
    }

    /// `K3² − K1² − K2²`.
    pub fn sheet_value(&self) -> f64 {
        self.k3 * self.k3 - self.k1 * self.k1 - self.k2 * self.k2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshSpec {
    pub k0_abs: f64,
    pub chi2_range: (f64, f64),
    pub psi2_range: (f64, f64),
    pub chi_steps: usize,
    pub psi_steps: usize,
    pub signs: (Sign, Sign),
}

impl MeshSpec {
    /// Grid of the hyperboloid figure: `|K0| = 3/2`, `2χ, 2ψ ∈ [−0.4, 0.4]`.
    pub fn figure(k0_abs: f64, steps: usize) -> Self {
        Self {
            k0_abs,
            chi2_range: (-0.4, 0.4),
            psi2_range: (-0.4, 0.4),
            chi_steps: steps,
            psi_steps: steps,
            signs: (Sign::Plus, Sign::Plus),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.k0_abs.is_finite() && self.k0_abs > 0.0) {
            return Err(Error::Config(format!("k0_abs must be positive, got {}", self.k0_abs)));
        }
        for (name, steps) in [("chi", self.chi_steps), ("psi", self.psi_steps)] {
            if steps < 2 {
                return Err(Error::Config(format!("{name} steps must be at least 2, got {steps}")));
            }
        }
        for (name, (lo, hi)) in [("chi2", self.chi2_range), ("psi2", self.psi2_range)] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::Config(format!("{name} range must satisfy lo < hi, got [{lo}, {hi}]")));
            }
        }
        Ok(())
    }
}

fn grid(range: (f64, f64), steps: usize) -> impl Iterator<Item = f64> {
    let (lo, hi) = range;
    (0..steps).map(move |i| {
        if i + 1 == steps {
            hi
        } else {
            lo + (hi - lo) * (i as f64 / (steps - 1) as f64)
        }
    })
}

/// Samples of `H_p = (s1|K0| sinh 2χ, s2|K0| cosh 2χ sinh 2ψ, |K0| cosh 2χ cosh 2ψ)`,
/// row-major with χ as the outer loop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceMesh {
    pub meta: MeshSpec,
    pub vertices: Vec<MeshVertex>,
}

impl SurfaceMesh {
    /// Smallest distance from the origin over all vertices.
    pub fn apex_distance(&self) -> f64 {
        self.vertices.iter().map(MeshVertex::norm).fold(f64::INFINITY, f64::min)
    }

    /// Largest `|K3² − K1² − K2² − K0²| / K0²`.
    pub fn max_sheet_deviation(&self) -> f64 {
        let k0sq = self.meta.k0_abs * self.meta.k0_abs;
        self.vertices
            .iter()
            .map(|v| (v.sheet_value() - k0sq).abs() / k0sq)
            .fold(0.0, f64::max)
    }

    pub fn on_upper_sheet(&self) -> bool {
        self.vertices.iter().all(|v| v.k3 >= self.meta.k0_abs)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Writes `chi2,psi2,K1,K2,K3` rows with a header line.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for v in &self.vertices {
            w.serialize(v)?;
        }
        w.flush().map_err(|e| Error::Serialization(e.to_string()))?;
        Ok(())
    }
}

pub fn surface_mesh(spec: &MeshSpec) -> Result<SurfaceMesh> {
    spec.validate()?;
    let k = spec.k0_abs;
    let (s1, s2) = (spec.signs.0.value(), spec.signs.1.value());
    let mut vertices = Vec::with_capacity(spec.chi_steps * spec.psi_steps);
    for chi2 in grid(spec.chi2_range, spec.chi_steps) {
        let (ch, sh) = (chi2.cosh(), chi2.sinh());
        for psi2 in grid(spec.psi2_range, spec.psi_steps) {
            vertices.push(MeshVertex {
                chi2,
                psi2,
                k1: s1 * k * sh,
                k2: s2 * k * ch * psi2.sinh(),
                k3: k * ch * psi2.cosh(),
            });
        }
    }
    Ok(SurfaceMesh { meta: *spec, vertices })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolarizationTag {
    #[serde(rename = "LP")]
    Linear,
    #[serde(rename = "CP")]
    Circular,
    #[serde(rename = "REP")]
    RightElliptical,
    #[serde(rename = "LEP")]
    LeftElliptical,
    Degenerate,
}

impl fmt::Display for PolarizationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolarizationTag::Linear => "LP",
            PolarizationTag::Circular => "CP",
            PolarizationTag::RightElliptical => "REP",
            PolarizationTag::LeftElliptical => "LEP",
            PolarizationTag::Degenerate => "Degenerate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationClass {
    pub tag: PolarizationTag,
    pub detail: String,
}

/// Distance between two angles on the circle.
fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Assigns the polarization region of a wave.
///
/// Order of precedence: single-mode (degenerate), linear, circular, then
/// right/left elliptical by the sign of `sin δ21`.
pub fn classify(p: &CoherentParams, tol: f64) -> Result<PolarizationClass> {
    p.validate()?;
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::Config(format!("tolerance must be non-negative, got {tol}")));
    }
    let (a1, a2) = (p.amp1, p.amp2);
    if a1 == 0.0 && a2 == 0.0 {
        return Err(Error::Domain("both amplitudes are zero: there is no field".into()));
    }
    let class = |tag, detail: &str| {
        Ok(PolarizationClass {
            tag,
            detail: detail.to_string(),
        })
    };
    if a2 == 0.0 {
        return class(PolarizationTag::Degenerate, "single mode: linear along the E1 axis");
    }
    if a1 == 0.0 {
        return class(PolarizationTag::Degenerate, "single mode: linear along the E2 axis");
    }
    let delta = DeltaPhase::from_phases(p.phi1, p.phi2).radians();
    if circular_distance(delta, 0.0) <= tol {
        return class(PolarizationTag::Linear, "delta21 = 0 (mod 2pi)");
    }
    if circular_distance(delta, PI) <= tol {
        return class(PolarizationTag::Linear, "delta21 = pi (mod 2pi)");
    }
    let equal = (a1 - a2).abs() <= tol * (a1 + a2);
    if equal && circular_distance(delta, FRAC_PI_2) <= tol {
        return class(PolarizationTag::Circular, "right-handed: delta21 = pi/2 (mod 2pi)");
    }
    if equal && circular_distance(delta, 3.0 * FRAC_PI_2) <= tol {
        return class(PolarizationTag::Circular, "left-handed: delta21 = -pi/2 (mod 2pi)");
    }
    if delta < PI {
        class(PolarizationTag::RightElliptical, "0 < delta21 < pi")
    } else {
        class(PolarizationTag::LeftElliptical, "pi < delta21 < 2pi")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tilde(t1: f64, t2: f64, delta: f64) -> CoherentParams {
        CoherentParams::new(t1 / 2.0, t2 / 2.0, 0.0, delta)
    }

    #[test]
    fn psi_examples() {
        let psi = psi_from_params(&tilde(2.0, 1.0, FRAC_PI_2)).unwrap().finite().unwrap();
        assert!(psi.abs() < 1e-16);


        let psi = psi_from_params(&tilde(2.0, 1.0, 0.0)).unwrap().finite().unwrap();
        assert!((psi - 0.5 * (-0.8_f64).atanh()).abs() < 1e-15);
        // Same value through tanh 2ψ = tanh 2α cos δ with tanh α = −1/2.
        let alpha = (-0.5_f64).atanh();
        assert!(((2.0 * psi).tanh() - (2.0 * alpha).tanh()).abs() < 1e-15);

        assert_eq!(
            psi_from_params(&tilde(1.0, 1.0, 0.0)).unwrap(),
            HyperAngle::Infinite(Sign::Minus)
        );
        assert!(psi_from_params(&tilde(0.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn chi_examples() {
        for delta in [0.0, PI] {
            let chi = chi_from_params(&tilde(2.0, 1.0, delta)).unwrap().finite().unwrap();
            assert!(chi.abs() < 1e-15);
        }
        let chi = chi_from_params(&tilde(2.0, 1.0, FRAC_PI_2)).unwrap().finite().unwrap();
        assert!((chi - 0.5 * (-4.0_f64 / 3.0).asinh()).abs() < 1e-15);
        let alpha = alpha_angle(&tilde(2.0, 1.0, 0.0)).unwrap();
        assert!(((2.0 * chi).sinh() - (2.0 * alpha).sinh()).abs() < 1e-14);

        assert!(!chi_from_params(&tilde(1.0, 1.0, FRAC_PI_2)).unwrap().is_finite());
        assert!(chi_from_params(&tilde(0.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn alpha_exists_only_below_unit_ratio() {
        assert!(alpha_angle(&tilde(2.0, 1.0, 0.0)).is_some());
        assert!(alpha_angle(&tilde(1.0, 1.0, 0.0)).is_none());
        assert!(alpha_angle(&tilde(1.0, 2.0, 0.0)).is_none());
    }

    #[test]
    fn principal_axes_examples() {
        let ax = principal_axes(&tilde(2.0, 1.0, FRAC_PI_2)).unwrap();
        assert!(ax.psi.abs() < 1e-16);
        assert!((ax.a2 - 4.0).abs() < 1e-14 && (ax.b2 - 1.0).abs() < 1e-14);

        let ax = principal_axes(&tilde(2.0, 1.0, 0.0)).unwrap();
        assert!(ax.ab < 1e-7, "{}", ax.ab);
        assert_eq!(ax.ab_signed, 0.0);

        assert!(matches!(
            principal_axes(&tilde(1.0, 1.0, 0.0)),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn coords_examples() {
        let apex = HyperboloidCoords {
            chi: HyperAngle::Finite(0.0),
            psi: HyperAngle::Finite(0.0),
            k0_abs: 1.5,
            k0_sign: Sign::Minus,
            k1_sign: Sign::Plus,
            k2_sign: Sign::Minus,
        };
        let s = coords_to_stokes(&apex).unwrap();
        assert_eq!(s.as_array(), [-1.5, 0.0, 0.0, 1.5]);

        let fig = HyperboloidCoords {
            chi: HyperAngle::Finite(0.2),
            k0_sign: Sign::Plus,
            ..apex
        };
        let s = coords_to_stokes(&fig).unwrap();
        assert!((s.k1 - 1.5 * 0.4_f64.sinh()).abs() < 1e-15);
        assert!((s.k3 - 1.5 * 0.4_f64.cosh()).abs() < 1e-15);

        let inf = HyperboloidCoords {
            chi: HyperAngle::Infinite(Sign::Plus),
            ..apex
        };
        assert!(matches!(coords_to_stokes(&inf), Err(Error::NotApplicable(_))));
        assert!(inf.limit_note().is_some());
    }

    #[test]
    fn round_trip_reference_point() {
        let p = CoherentParams::new(1.0, 0.5, 0.3, 2.0);
        let c = hyperboloid_coords(&p).unwrap();
        let back = coords_to_stokes(&c).unwrap();
        let direct = stokes_like(&p);
        for (x, y) in back.as_array().iter().zip(direct.as_array()) {
            assert!((x - y).abs() < 1e-12, "{back:?} vs {direct:?}");
        }
        assert!((back.delta21.radians() - direct.delta21.radians()).abs() < 1e-12);
    }

    #[test]
    fn mesh_figure_settings() {
        let mesh = surface_mesh(&MeshSpec::figure(1.5, 41)).unwrap();
        assert_eq!(mesh.vertices.len(), 41 * 41);
        assert!(mesh.on_upper_sheet());
        assert!(mesh.max_sheet_deviation() < 1e-10);
        assert!((mesh.apex_distance() - 1.5).abs() < 1e-12);
        assert_eq!(mesh.vertices[0].chi2, -0.4);
        assert_eq!(mesh.vertices[1].chi2, -0.4);
        assert_eq!(mesh.vertices.last().unwrap().psi2, 0.4);

        for k in [0.3, 1.0] {
            let m = surface_mesh(&MeshSpec::figure(k, 21)).unwrap();
            assert!((m.apex_distance() - k).abs() < 1e-12);
        }
    }

    #[test]
    fn mesh_rejects_bad_options() {
        assert!(surface_mesh(&MeshSpec::figure(0.0, 5)).is_err());
        assert!(surface_mesh(&MeshSpec::figure(-1.0, 5)).is_err());
        assert!(surface_mesh(&MeshSpec::figure(1.0, 1)).is_err());
        let mut spec = MeshSpec::figure(1.0, 5);
        spec.chi2_range = (0.4, -0.4);
        assert!(surface_mesh(&spec).is_err());
    }

    #[test]
    fn mesh_signs_flip_components() {
        let mut spec = MeshSpec::figure(1.0, 5);
        let plus = surface_mesh(&spec).unwrap();
        spec.signs = (Sign::Minus, Sign::Minus);
        let minus = surface_mesh(&spec).unwrap();
        for (a, b) in plus.vertices.iter().zip(&minus.vertices) {
            assert_eq!(a.k1, -b.k1);
            assert_eq!(a.k2, -b.k2);
            assert_eq!(a.k3, b.k3);
        }
    }

    #[test]
    fn mesh_csv_and_json() {
        let mesh = surface_mesh(&MeshSpec::figure(1.0, 3)).unwrap();
        let mut buf = Vec::new();
        mesh.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("chi2,psi2,K1,K2,K3\n"));
        assert_eq!(text.lines().count(), 10);
        let v: serde_json::Value = serde_json::from_str(&mesh.to_json().unwrap()).unwrap();
        assert_eq!(v["meta"]["k0_abs"], 1.0);
        assert_eq!(v["vertices"].as_array().unwrap().len(), 9);
        assert_eq!(v["meta"]["signs"][0], "+");
    }

    #[test]
    fn classify_examples() {
        let tag = |p: CoherentParams| classify(&p, DEFAULT_REGION_TOL).unwrap().tag;
        assert_eq!(tag(CoherentParams::new(1.0, 0.5, 0.0, 0.0)), PolarizationTag::Linear);
        assert_eq!(tag(CoherentParams::new(1.0, 0.5, 0.0, PI)), PolarizationTag::Linear);
        let cp = classify(&CoherentParams::new(0.7, 0.7, 0.0, FRAC_PI_2), DEFAULT_REGION_TOL).unwrap();
        assert_eq!(cp.tag, PolarizationTag::Circular);
        assert!(cp.detail.starts_with("right"));
        let cp = classify(&CoherentParams::new(0.7, 0.7, 0.0, -FRAC_PI_2), DEFAULT_REGION_TOL).unwrap();
        assert!(cp.detail.starts_with("left"));
        assert_eq!(tag(CoherentParams::new(1.0, 0.5, 0.0, FRAC_PI_2)), PolarizationTag::RightElliptical);
        assert_eq!(tag(CoherentParams::new(1.0, 0.5, 0.0, 1.5 * PI)), PolarizationTag::LeftElliptical);
        assert_eq!(tag(CoherentParams::new(1.0, 0.0, 0.0, 1.0)), PolarizationTag::Degenerate);
        assert!(classify(&CoherentParams::new(0.0, 0.0, 0.0, 1.0), 1e-9).is_err());
    }

    #[test]
    fn sign_parsing() {
        assert_eq!("+".parse::<Sign>().unwrap(), Sign::Plus);
        assert_eq!("-".parse::<Sign>().unwrap(), Sign::Minus);
        assert!("x".parse::<Sign>().is_err());
    }
}
