//! su(1,1) description of light polarization.
//!
//! The crate builds the four Jordan–Schwinger operators on a truncated
//! two-mode Fock space and checks their algebra ([`algebra`]), evaluates them
//! in coherent states ([`coherent`]), derives the time-independent
//! Stokes-like parameters ([`stokes`]), relates them to the polarization
//! ellipse ([`ellipse`]) and places them on the Poincaré hyperboloid
//! ([`hyperboloid`]).

pub mod algebra;
pub mod coherent;
pub mod ellipse;
pub mod error;
pub mod fock;
pub mod hyperboloid;
pub mod sparse;
pub mod stokes;

pub use algebra::{
    build_hamiltonian, build_k, build_ladder, casimir, commutator, verify_algebra, AlgebraReport,
    FockOperator, KOperators, Ladder,
};
pub use coherent::{
    build_coherent, crosscheck, expectations_analytic, expectations_numeric, CoherentParams,
    CoherentState, CrosscheckReport, KExpectations,
};
pub use ellipse::{
    build_quadratic, quadratic_in_stokes, residual, sample_field, EllipseQuadratic,
    EllipseStokesForm, FieldSample,
};
pub use error::{Error, Result};
pub use fock::{FockBasis, SafeSubspace};
pub use hyperboloid::{
    classify, coords_to_stokes, hyperboloid_coords, surface_mesh, HyperAngle, HyperboloidCoords,
    MeshSpec, PolarizationClass, PolarizationTag, Sign, SurfaceMesh,
};
pub use stokes::{stokes_like, verify_force_identity, DeltaPhase, StokesLike};
