//! Truncated two-mode number basis.
//!
//! Each mode carries occupations `0..=n_max`; the flat index of `|n1, n2>`
//! is `n1 * (n_max + 1) + n2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FockBasis {
    n_max: usize,
}

impl FockBasis {
    /// Basis with per-mode cutoff `n_max`. Any cutoff is representable;
    /// operator builders impose their own lower bounds.
    pub fn new(n_max: usize) -> Self {
        Self { n_max }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Occupations per mode, `n_max + 1`.
    pub fn levels(&self) -> usize {
        self.n_max + 1
    }

    pub fn dimension(&self) -> usize {
        self.levels() * self.levels()
    }

    /// Flat index of `|n1, n2>`, or `None` outside the cutoff.
    pub fn index(&self, n1: usize, n2: usize) -> Option<usize> {
        (n1 <= self.n_max && n2 <= self.n_max).then(|| n1 * self.levels() + n2)
    }

    /// Occupations `(n1, n2)` of a flat index.
    pub fn occupations(&self, index: usize) -> (usize, usize) {
        debug_assert!(index < self.dimension());
        (index / self.levels(), index % self.levels())
    }

    /// Iterates `(index, n1, n2)` in flat order.
    pub fn states(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.dimension()).map(move |i| {
            let (n1, n2) = self.occupations(i);
            (i, n1, n2)
        })
    }

    /// Unit vector `|n1, n2>` as complex amplitudes.
    pub fn basis_vector(&self, n1: usize, n2: usize) -> Option<Vec<num_complex::Complex64>> {
        let idx = self.index(n1, n2)?;
        let mut v = vec![num_complex::Complex64::new(0.0, 0.0); self.dimension()];
        v[idx] = num_complex::Complex64::new(1.0, 0.0);
        Some(v)
    }

    pub(crate) fn ensure_same(&self, other: &FockBasis) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::BasisMismatch {
                left: self.n_max,
                right: other.n_max,
            })
        }
    }
}

/// Interior of the truncated space, away from the cutoff shell.
///
/// Contains the states with `n1 <= n_max - margin` and `n2 <= n_max - margin`.
/// Identities that are quadratic in the ladder operators need a margin of 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SafeSubspace {
    basis: FockBasis,
    margin: usize,
}

impl SafeSubspace {
    /// Fails when the interior is empty (`margin > n_max`).
    pub fn new(basis: FockBasis, margin: usize) -> Result<Self> {
        if margin > basis.n_max() {
            return Err(Error::Config(format!(
                "safe subspace is empty: margin {margin} exceeds n_max {}",
                basis.n_max()
            )));
        }
        Ok(Self { basis, margin })
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    /// Largest occupation per mode inside the subspace.
    pub fn interior_max(&self) -> usize {
        self.basis.n_max() - self.margin
    }

    pub fn contains(&self, index: usize) -> bool {
        let (n1, n2) = self.basis.occupations(index);
        n1 <= self.interior_max() && n2 <= self.interior_max()
    }

    /// Diagonal of the projector, entries in {0, 1}.
    pub fn mask(&self) -> Vec<bool> {
        (0..self.basis.dimension()).map(|i| self.contains(i)).collect()
    }

    pub fn dimension(&self) -> usize {
        let m = self.interior_max() + 1;
        m * m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_is_square_of_levels() {
        for n in [0, 1, 4, 12] {
            assert_eq!(FockBasis::new(n).dimension(), (n + 1) * (n + 1));
        }
    }

    #[test]
    fn index_map_is_bijective() {
        let basis = FockBasis::new(7);
        let mut seen = vec![false; basis.dimension()];
        for n1 in 0..=7 {
            for n2 in 0..=7 {
                let i = basis.index(n1, n2).unwrap();
                assert!(!seen[i]);
                seen[i] = true;
                assert_eq!(basis.occupations(i), (n1, n2));
            }
        }
        assert!(seen.into_iter().all(|s| s));
        assert_eq!(basis.index(8, 0), None);
    }

    #[test]
    fn safe_subspace_projector() {
        let safe = SafeSubspace::new(FockBasis::new(6), 2).unwrap();
        let mask = safe.mask();
        assert_eq!(mask.iter().filter(|&&m| m).count(), 25);
        assert_eq!(safe.dimension(), 25);
        let basis = safe.basis();
        assert!(mask[basis.index(4, 4).unwrap()]);
        assert!(!mask[basis.index(5, 0).unwrap()]);
    }

    #[test]
    fn empty_safe_subspace_rejected() {
        assert!(SafeSubspace::new(FockBasis::new(1), 2).is_err());
        assert!(SafeSubspace::new(FockBasis::new(2), 2).is_ok());
    }
}
