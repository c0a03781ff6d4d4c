//! Two-mode ladder operators and the su(1,1) generators built from them.
//!
//! With `B = (a1, a2†)ᵀ` and `K_i = B† (Σ_i / 2) B`, where
//! `Σ = (σ3, σ1, σ2, 1)`, the four operators are
//!
//! ```text
//! K0 = ½(a1†a1 − a2a2†)      K1 = ½(a1†a2† + a2a1)
//! K2 = (i/2)(−a1†a2† + a2a1)  K3 = ½(a1†a1 + a2a2†)
//! ```
//!
//! Every operator is assembled from truncated matrix products, so identities
//! only hold away from the cutoff shell; see [`SafeSubspace`].

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{FockBasis, SafeSubspace};
use crate::sparse::CsrMatrix;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Default absolute tolerance for operator identities.
pub const DEFAULT_ALGEBRA_TOL: f64 = 1e-12;
/// Margin needed for identities quadratic in the generators.
pub const QUADRATIC_MARGIN: usize = 2;

/// A complex operator on a truncated two-mode Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    basis: FockBasis,
    matrix: CsrMatrix,
}

impl FockOperator {
    pub fn new(basis: FockBasis, matrix: CsrMatrix) -> Result<Self> {
        if matrix.dim() != basis.dimension() {
            return Err(Error::Config(format!(
                "matrix dimension {} does not match basis dimension {}",
                matrix.dim(),
                basis.dimension()
            )));
        }
        if !matrix.is_finite() {
            return Err(Error::Domain("operator has non-finite entries".into()));
        }
        Ok(Self { basis, matrix })
    }

    pub fn identity(basis: FockBasis) -> Self {
        Self {
            basis,
            matrix: CsrMatrix::identity(basis.dimension()),
        }
    }

    /// Diagonal operator with `f(n1, n2)` on `|n1, n2>`.
    pub fn diagonal(basis: FockBasis, f: impl Fn(usize, usize) -> f64) -> Self {
        let diag: Vec<_> = basis
            .states()
            .map(|(_, n1, n2)| Complex64::new(f(n1, n2), 0.0))
            .collect();
        Self {
            basis,
            matrix: CsrMatrix::from_diagonal(&diag),
        }
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    /// Matrix element `<m1, m2| A |n1, n2>`.
    pub fn element(&self, bra: (usize, usize), ket: (usize, usize)) -> Complex64 {
        match (self.basis.index(bra.0, bra.1), self.basis.index(ket.0, ket.1)) {
            (Some(r), Some(c)) => self.matrix.get(r, c),
            _ => Complex64::new(0.0, 0.0),
        }
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.basis.dimension() {
            return Err(Error::Config(format!(
                "state length {} does not match basis dimension {}",
                v.len(),
                self.basis.dimension()
            )));
        }
        Ok(self.matrix.matvec(v))
    }

    pub fn adjoint(&self) -> Self {
        Self {
            basis: self.basis,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            basis: self.basis,
            matrix: self.matrix.scale(s),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.basis.ensure_same(&other.basis)?;
        Ok(Self {
            basis: self.basis,
            matrix: self.matrix.matmul(&other.matrix),
        })
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &Self, s: Complex64) -> Result<Self> {
        self.basis.ensure_same(&other.basis)?;
        Ok(Self {
            basis: self.basis,
            matrix: self.matrix.add_scaled(&other.matrix, s),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, ONE)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, -ONE)
    }

    /// Largest `|entry|` of `A P`, with `P` the projector onto `safe`.
    pub fn max_abs_on(&self, safe: &SafeSubspace) -> Result<f64> {
        self.basis.ensure_same(&safe.basis())?;
        Ok(self.matrix.max_abs_in_columns(&safe.mask()))
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<Complex64> {
        self.matrix.to_dense()
    }
}

/// `AB − BA`.
pub fn commutator(a: &FockOperator, b: &FockOperator) -> Result<FockOperator> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Annihilation and creation operators of both modes.
#[derive(Debug, Clone)]
pub struct Ladder {
    pub a1: FockOperator,
    pub a2: FockOperator,
    pub a1_dag: FockOperator,
    pub a2_dag: FockOperator,
}

/// `a1|n1,n2> = √n1 |n1−1,n2>`, `a2|n1,n2> = √n2 |n1,n2−1>`; the
/// creation operators are exact conjugate transposes.
pub fn build_ladder(basis: FockBasis) -> Result<Ladder> {
    if basis.n_max() == 0 {
        return Err(Error::Config(
            "n_max must be at least 1 for ladder operators to act".into(),
        ));
    }
    let dim = basis.dimension();
    let lower = |mode: usize| {
        let trips = basis.states().filter_map(move |(col, n1, n2)| {
            let (n, target) = match mode {
                1 => (n1, n1.checked_sub(1).and_then(|m| basis.index(m, n2))),
                _ => (n2, n2.checked_sub(1).and_then(|m| basis.index(n1, m))),
            };
            target.map(|row| (row, col, Complex64::new((n as f64).sqrt(), 0.0)))
        });
        FockOperator {
            basis,
            matrix: CsrMatrix::from_triplets(dim, trips),
        }
    };
    let a1 = lower(1);
    let a2 = lower(2);
    Ok(Ladder {
        a1_dag: a1.adjoint(),
        a2_dag: a2.adjoint(),
        a1,
        a2,
    })
}

/// The four Jordan–Schwinger operators `K0..K3`.
#[derive(Debug, Clone)]
pub struct KOperators {
    pub k0: FockOperator,
    pub k1: FockOperator,
    pub k2: FockOperator,
    pub k3: FockOperator,
}

impl KOperators {
    pub fn from_ladder(l: &Ladder) -> Result<Self> {
        let half = Complex64::new(0.5, 0.0);
        let n1 = l.a1_dag.mul(&l.a1)?;
        let anti_n2 = l.a2.mul(&l.a2_dag)?;
        let raise = l.a1_dag.mul(&l.a2_dag)?;
        let lower = l.a2.mul(&l.a1)?;

        Ok(Self {
            k0: n1.sub(&anti_n2)?.scale(half),
            k1: raise.add(&lower)?.scale(half),
            k2: lower.sub(&raise)?.scale(I * 0.5),
            k3: n1.add(&anti_n2)?.scale(half),
        })
    }

    pub fn basis(&self) -> FockBasis {
        self.k0.basis()
    }

    /// Operators in the order `K0, K1, K2, K3`.
    pub fn as_array(&self) -> [&FockOperator; 4] {
        [&self.k0, &self.k1, &self.k2, &self.k3]
    }
}

pub fn build_k(basis: FockBasis) -> Result<KOperators> {
    KOperators::from_ladder(&build_ladder(basis)?)
}

/// `H = ω(a1†a1 + a2†a2 + 1)`.
pub fn build_hamiltonian(ladder: &Ladder, omega: f64) -> Result<FockOperator> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::Config(format!("omega must be positive, got {omega}")));
    }
    let basis = ladder.a1.basis();
    let number = ladder
        .a1_dag
        .mul(&ladder.a1)?
        .add(&ladder.a2_dag.mul(&ladder.a2)?)?;
    Ok(number
        .add(&FockOperator::identity(basis))?
        .scale(Complex64::new(omega, 0.0)))
}

/// `C = K3² − K2² − K1²`.
pub fn casimir(k: &KOperators) -> Result<FockOperator> {
    k.k3.mul(&k.k3)?
        .sub(&k.k2.mul(&k.k2)?)?
        .sub(&k.k1.mul(&k.k1)?)
}

/// Candidate right-hand sides for `[K3, K1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum K3K1Rhs {
    #[serde(rename = "i*K2")]
    IK2,
    #[serde(rename = "i*K3")]
    IK3,
}

impl fmt::Display for K3K1Rhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            K3K1Rhs::IK2 => f.write_str("i*K2"),
            K3K1Rhs::IK3 => f.write_str("i*K3"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisInfo {
    pub n_max: usize,
    pub margin: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub check_name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub basis: BasisInfo,
}

/// Measured `[K3, K1]` against both candidate right-hand sides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct K3K1Finding {
    pub deviation_vs_i_k2: f64,
    pub deviation_vs_i_k3: f64,
    /// Closest candidate when it lies within tolerance.
    pub matched: Option<K3K1Rhs>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub basis: BasisInfo,
    pub tolerance: f64,
    pub checks: Vec<CheckEntry>,
    pub k3_k1: K3K1Finding,
    pub passed: bool,
}

impl AlgebraReport {
    pub fn check(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.check_name == name)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Check names emitted by [`verify_algebra`].
pub mod checks {
    pub const CANONICAL_MODE1: &str = "canonical_a1";
    pub const CANONICAL_MODE2: &str = "canonical_a2";
    pub const K1_K2: &str = "commutator_k1_k2_plus_i_k3";
    pub const K2_K3: &str = "commutator_k2_k3_minus_i_k1";
    pub const K3_K1: &str = "commutator_k3_k1_measured";
    pub const CASIMIR: &str = "casimir_minus_k0_k0_plus_1";
    pub const K0_H: &str = "commutator_k0_h";
    pub const K3_H: &str = "commutator_k3_h";
    pub const K0_SPECTRUM: &str = "k0_minus_half_lz_minus_1";
    pub const HERMITIAN: [&str; 4] = ["hermitian_k0", "hermitian_k1", "hermitian_k2", "hermitian_k3"];
}

/// Numerically checks the su(1,1) structure on the interior of the
/// truncated space.
///
/// Margins below [`QUADRATIC_MARGIN`] are accepted; cutoff artifacts then
/// show up as failing checks in the report rather than as an error.
pub fn verify_algebra(basis: FockBasis, margin: usize, tol: f64) -> Result<AlgebraReport> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Config(format!("tolerance must be positive, got {tol}")));
    }
    if margin >= basis.n_max() {
        return Err(Error::Config(format!(
            "safe subspace is degenerate: n_max {} with margin {margin} leaves at most the vacuum",
            basis.n_max()
        )));
    }
    let safe = SafeSubspace::new(basis, margin)?;
    let ladder = build_ladder(basis)?;
    let k = KOperators::from_ladder(&ladder)?;
    let h = build_hamiltonian(&ladder, 1.0)?;
    let info = BasisInfo {
        n_max: basis.n_max(),
        margin,
    };

    let mut checks = Vec::new();
    let mut push = |name: &str, dev: f64| {
        checks.push(CheckEntry {
            check_name: name.to_string(),
            max_deviation: dev,
            tolerance: tol,
            passed: dev <= tol,
            basis: info,
        });
    };
    let id = FockOperator::identity(basis);

    let canon1 = commutator(&ladder.a1, &ladder.a1_dag)?.sub(&id)?;
    push(checks::CANONICAL_MODE1, canon1.max_abs_on(&safe)?);
    let canon2 = commutator(&ladder.a2, &ladder.a2_dag)?.sub(&id)?;
    push(checks::CANONICAL_MODE2, canon2.max_abs_on(&safe)?);

    let c12 = commutator(&k.k1, &k.k2)?.add_scaled(&k.k3, I)?;
    push(checks::K1_K2, c12.max_abs_on(&safe)?);
    let c23 = commutator(&k.k2, &k.k3)?.add_scaled(&k.k1, -I)?;
    push(checks::K2_K3, c23.max_abs_on(&safe)?);

    let c31 = commutator(&k.k3, &k.k1)?;
    let vs_k2 = c31.add_scaled(&k.k2, -I)?.max_abs_on(&safe)?;
    let vs_k3 = c31.add_scaled(&k.k3, -I)?.max_abs_on(&safe)?;
    let (best, best_dev) = if vs_k2 <= vs_k3 {
        (K3K1Rhs::IK2, vs_k2)
    } else {
        (K3K1Rhs::IK3, vs_k3)
    };
    push(checks::K3_K1, best_dev);
    let k3_k1 = K3K1Finding {
        deviation_vs_i_k2: vs_k2,
        deviation_vs_i_k3: vs_k3,
        matched: (best_dev <= tol).then_some(best),
    };

    let c = casimir(&k)?;
    let k0_k0_plus_1 = k.k0.mul(&k.k0.add(&id)?)?;
    push(checks::CASIMIR, c.sub(&k0_k0_plus_1)?.max_abs_on(&safe)?);

    push(checks::K0_H, commutator(&k.k0, &h)?.max_abs_on(&safe)?);
    push(checks::K3_H, commutator(&k.k3, &h)?.max_abs_on(&safe)?);

    let lz_form = FockOperator::diagonal(basis, |n1, n2| 0.5 * (n1 as f64 - n2 as f64 - 1.0));
    push(checks::K0_SPECTRUM, k.k0.sub(&lz_form)?.max_abs_on(&safe)?);

    for (name, op) in checks::HERMITIAN.iter().zip(k.as_array()) {
        push(name, op.sub(&op.adjoint())?.max_abs_on(&safe)?);
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(AlgebraReport {
        basis: info,
        tolerance: tol,
        checks,
        k3_k1,
        passed,
    })
}
