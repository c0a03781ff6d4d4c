use std::fs;
use std::io::Write;

use serde::Serialize;
use su11_polarization::algebra;
use su11_polarization::coherent::{self, CoherentParams, CrosscheckReport};
use su11_polarization::ellipse::{
    self, build_quadratic, quadratic_in_stokes, stokes_form_scale, EllipseQuadratic,
    EllipseStokesForm, FieldSample, ScaleReport,
};
use su11_polarization::hyperboloid::{self, HyperboloidCoords, MeshSpec, PolarizationClass, Sign};
use su11_polarization::stokes::{stokes_like, StokesLike};
use su11_polarization::{Error, FockBasis};

use crate::args::{
    AlgebraArgs, CrosscheckArgs, EllipseArgs, Format, OutputArgs, PhaseArgs, StokesArgs,
    SurfaceArgs,
};

pub enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn emit(out: &OutputArgs, mut payload: Vec<u8>) -> Outcome {
    if !payload.ends_with(b"\n") {
        payload.push(b'\n');
    }
    match &out.output {
        Some(path) => fs::write(path, &payload)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(&payload)
            .map_err(|e| usage(format!("cannot write to stdout: {e}"))),
    }
}

fn json<T: Serialize>(value: &T) -> Result<Vec<u8>, Failure> {
    serde_json::to_vec_pretty(value).map_err(|e| usage(e.to_string()))
}

fn csv_rows<T: Serialize>(rows: &[T]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| usage(e.to_string()))?;
    }
    w.into_inner().map_err(|e| usage(e.to_string()))
}

fn phases(p: &PhaseArgs) -> (f64, f64) {
    if p.degrees {
        (p.phi1.to_radians(), p.phi2.to_radians())
    } else {
        (p.phi1, p.phi2)
    }
}

fn field_params(amp1: f64, amp2: f64, p: &PhaseArgs) -> Result<CoherentParams, Failure> {
    let (phi1, phi2) = phases(p);
    let params = CoherentParams::new(amp1, amp2, phi1, phi2).with_time(p.omega, p.t);
    params.validate()?;
    for (name, v) in [("k", p.k), ("z", p.z)] {
        if !v.is_finite() {
            return Err(usage(format!("{name} must be finite, got {v}")));
        }
    }
    Ok(params)
}

#[derive(Serialize)]
struct StokesOutput {
    stokes: StokesLike,
    class: PolarizationClass,
    force_residual: f64,
    hyperboloid: Option<HyperboloidCoords>,
}

#[derive(Serialize)]
struct StokesRow {
    k0: f64,
    k1: f64,
    k2: f64,
    k3: f64,
    delta21: f64,
    class: String,
    force_residual: f64,
}

pub fn stokes(a: &StokesArgs) -> Outcome {
    let p = field_params(a.field.amp1, a.field.amp2, &a.field.phases)?;
    if !(a.region_tol.is_finite() && a.region_tol >= 0.0) {
        return Err(usage(format!("region tolerance must be non-negative, got {}", a.region_tol)));
    }
    let s = stokes_like(&p);
    let class = hyperboloid::classify(&p, a.region_tol)?;
    let payload = match a.out.format {
        Format::Json => json(&StokesOutput {
            stokes: s,
            class,
            force_residual: s.force_residual(),
            hyperboloid: hyperboloid::hyperboloid_coords(&p).ok(),
        })?,
        Format::Csv => csv_rows(&[StokesRow {
            k0: s.k0,
            k1: s.k1,
            k2: s.k2,
            k3: s.k3,
            delta21: s.delta21.radians(),
            class: class.tag.to_string(),
            force_residual: s.force_residual(),
        }])?,
    };
    emit(&a.out, payload)
}

pub fn verify_algebra(a: &AlgebraArgs) -> Outcome {
    if a.n_max < 4 {
        return Err(usage(format!("--n-max must be at least 4, got {}", a.n_max)));
    }
    let report = algebra::verify_algebra(FockBasis::new(a.n_max), a.margin, a.tol)?;
    let payload = match a.out.format {
        Format::Json => json(&report)?,
        Format::Csv => csv_rows(
            &report
                .checks
                .iter()
                .map(|c| CheckRow {
                    check_name: &c.check_name,
                    max_deviation: c.max_deviation,
                    tolerance: c.tolerance,
                    passed: c.passed,
                    n_max: c.basis.n_max,
                    margin: c.basis.margin,
                })
                .collect::<Vec<_>>(),
        )?,
    };
    emit(&a.out, payload)?;
    if report.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.check_name.as_str())
            .collect();
        Err(Failure::Verification(failed.join(", ")))
    }
}

#[derive(Serialize)]
struct CheckRow<'a> {
    check_name: &'a str,
    max_deviation: f64,
    tolerance: f64,
    passed: bool,
    n_max: usize,
    margin: usize,
}

#[derive(Serialize)]
struct EllipseOutput {
    quadratic: EllipseQuadratic,
    stokes_form: EllipseStokesForm,
    stokes_form_scale: ScaleReport,
    degenerate: bool,
    max_residual: f64,
    samples: Vec<FieldSample>,
}

pub fn ellipse(a: &EllipseArgs) -> Outcome {
    let p = field_params(a.field.amp1, a.field.amp2, &a.field.phases)?;
    if a.samples < 8 {
        return Err(usage(format!("--samples must be at least 8, got {}", a.samples)));
    }
    let period = std::f64::consts::TAU / p.omega;
    let samples: Vec<FieldSample> = (0..a.samples)
        .map(|j| {
            let t = p.t + period * j as f64 / a.samples as f64;
            let tau = ellipse::phase_tau(p.omega, t, a.field.phases.k, a.field.phases.z);
            ellipse::sample_field(&p, tau)
        })
        .collect();
    let quadratic = build_quadratic(&p);
    let max_residual = samples
        .iter()
        .map(|s| ellipse::residual(&quadratic, s).abs())
        .fold(0.0, f64::max);
    let stokes_form = quadratic_in_stokes(&stokes_like(&p));
    if let Some(path) = &a.quadratic {
        let mut body = json(&quadratic)?;
        body.push(b'\n');
        fs::write(path, body).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let payload = match a.out.format {
        Format::Json => json(&EllipseOutput {
            quadratic,
            stokes_form,
            stokes_form_scale: stokes_form_scale(&quadratic, &stokes_form),
            degenerate: quadratic.degenerate,
            max_residual,
            samples,
        })?,
        Format::Csv => {
            let mut buf = Vec::new();
            ellipse::write_samples_csv(&samples, &mut buf)?;
            buf
        }
    };
    emit(&a.out, payload)
}

fn parse_signs(s: &str) -> Result<(Sign, Sign), Failure> {
    let chars: Vec<char> = s.chars().collect();
    match chars.as_slice() {
        [a, b] => Ok((a.to_string().parse()?, b.to_string().parse()?)),
        _ => Err(usage(format!("--signs takes two characters from {{+,-}}, got '{s}'"))),
    }
}

pub fn surface(a: &SurfaceArgs) -> Outcome {
    let spec = MeshSpec {
        k0_abs: a.k0_abs,
        chi2_range: (a.chi2_min, a.chi2_max),
        psi2_range: (a.psi2_min, a.psi2_max),
        chi_steps: a.chi_steps.unwrap_or(a.steps),
        psi_steps: a.psi_steps.unwrap_or(a.steps),
        signs: parse_signs(&a.signs)?,
    };
    let mesh = hyperboloid::surface_mesh(&spec)?;
    let payload = match a.out.format {
        Format::Json => json(&mesh)?,
        Format::Csv => {
            let mut buf = Vec::new();
            mesh.write_csv(&mut buf)?;
            buf
        }
    };
    emit(&a.out, payload)
}

#[derive(Serialize)]
struct GridOutput {
    points: Vec<CrosscheckReport>,
    count: usize,
    max_deviation: f64,
    passed: bool,
}

#[derive(Serialize)]
struct CrosscheckRow {
    amp1: f64,
    amp2: f64,
    phi1: f64,
    phi2: f64,
    omega: f64,
    t: f64,
    dev_k0: f64,
    dev_k1: f64,
    dev_k2: f64,
    dev_k3: f64,
    norm_deficit: f64,
    passed: bool,
}

impl From<&CrosscheckReport> for CrosscheckRow {
    fn from(r: &CrosscheckReport) -> Self {
        let p = r.params;
        let [dev_k0, dev_k1, dev_k2, dev_k3] = r.deviations;
        Self {
            amp1: p.amp1,
            amp2: p.amp2,
            phi1: p.phi1,
            phi2: p.phi2,
            omega: p.omega,
            t: p.t,
            dev_k0,
            dev_k1,
            dev_k2,
            dev_k3,
            norm_deficit: r.norm_deficit,
            passed: r.passed,
        }
    }
}

pub fn crosscheck(a: &CrosscheckArgs) -> Outcome {
    if a.n_max < 1 {
        return Err(usage("--n-max must be at least 1"));
    }
    let points = if a.grid {
        if !(a.grid_amp_max.is_finite() && a.grid_amp_max >= 0.0) {
            return Err(usage(format!("--grid-amp-max must be non-negative, got {}", a.grid_amp_max)));
        }
        coherent::crosscheck_grid(a.grid_amp_max)
    } else {
        let (amp1, amp2) = match (a.amp1, a.amp2) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(usage("--amp1 and --amp2 are required without --grid")),
        };
        vec![field_params(amp1, amp2, &a.phases)?]
    };
    let k = algebra::build_k(FockBasis::new(a.n_max))?;
    let reports = points
        .iter()
        .map(|p| coherent::crosscheck_with(p, &k, a.tol))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let payload = match a.out.format {
        Format::Json if a.grid => json(&GridOutput {
            count: reports.len(),
            max_deviation: reports.iter().map(CrosscheckReport::max_deviation).fold(0.0, f64::max),
            passed,
            points: reports.clone(),
        })?,
        Format::Json => json(&reports[0])?,
        Format::Csv => csv_rows(&reports.iter().map(CrosscheckRow::from).collect::<Vec<_>>())?,
    };
    emit(&a.out, payload)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "classical-limit deviation above tolerance {:e}",
            a.tol
        )))
    }
}
