//! Dense square complex matrices.

use std::ops::{Add, Index, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense, row-major, square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            out.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        out
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Self { dim, entries }
    }

    pub fn from_row_major(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    /// Kronecker product `self ⊗ other`; the first factor indexes the slow axis.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, k) = (self.dim, other.dim);
        let mut out = Self::zeros(n * k);
        for (idx, a) in self.entries.iter().enumerate() {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let (r, c) = (idx / n, idx % n);
            for br in 0..k {
                for bc in 0..k {
                    out.set(r * k + br, c * k + bc, a * other[(br, bc)]);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(self
            .entries
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        // Observables have one nonzero per row, so skipping zeros makes
        // products of embedded operators nearly linear in the entry count.
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let src = &other.entries[k * n..(k + 1) * n];
                let dst = &mut out.entries[r * n..(r + 1) * n];
                for (d, b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        })
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.try_mul(other)?;
        let ba = other.try_mul(self)?;
        ab.zip_with(&ba, |x, y| x - y)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()).is_ok_and(|d| d <= tol)
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    ///
    /// The index set is first split into the connected components of the
    /// nonzero pattern, and each diagonal block is eigensolved densely. The
    /// observables here only couple `|m, n⟩` with `|-m, -n⟩`, so their blocks
    /// have size at most two. Only the lower triangle of each block is read
    /// by the solver, so the caller is responsible for passing a Hermitian
    /// matrix.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let mut values = Vec::with_capacity(self.dim);
        for block in self.coupled_blocks() {
            let sub = DMatrix::from_fn(block.len(), block.len(), |r, c| self[(block[r], block[c])]);
            values.extend(SymmetricEigen::new(sub).eigenvalues.iter().copied());
        }
        values.sort_by(f64::total_cmp);
        values
    }

    /// Connected components of the graph with an edge wherever
    /// `self[(r, c)]` or `self[(c, r)]` is nonzero.
    fn coupled_blocks(&self) -> Vec<Vec<usize>> {
        fn root(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let n = self.dim;
        let mut parent: Vec<usize> = (0..n).collect();
        for (idx, z) in self.entries.iter().enumerate() {
            if *z != Complex64::new(0.0, 0.0) {
                let (a, b) = (root(&mut parent, idx / n), root(&mut parent, idx % n));
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![usize::MAX; n];
        for i in 0..n {
            let r = root(&mut parent, i);
            if block_of[r] == usize::MAX {
                block_of[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[block_of[r]].push(i);
        }
        blocks
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        &self.entries[row * self.dim + col]
    }
}

// Operator forms panic on dimension mismatch, like slice indexing does;
// use `try_mul` and friends when dimensions come from outside.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Self) -> ComplexMatrix {
        self.try_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: Self) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
            .expect("matrix dimensions must agree")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: Self) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
            .expect("matrix dimensions must agree")
    }
}

/// `⟨u|v⟩`, conjugating the left argument.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_matches_hand_computation() {
        let a = ComplexMatrix::from_row_major(2, vec![c(1., 0.), c(0., 1.), c(2., 0.), c(0., 0.)])
            .unwrap();
        let b = ComplexMatrix::from_row_major(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., -1.)])
            .unwrap();
        let ab = &a * &b;
        let expected =
            ComplexMatrix::from_row_major(2, vec![c(0., 1.), c(2., 0.), c(0., 0.), c(2., 0.)])
                .unwrap();
        assert_eq!(ab, expected);
    }

    #[test]
    fn kron_layout() {
        let x = ComplexMatrix::from_row_major(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
            .unwrap();
        let i2 = ComplexMatrix::identity(2);
        let xi = x.kron(&i2);
        // X ⊗ I moves the first factor: rows 0,1 pair with columns 2,3.
        assert_eq!(xi[(0, 2)], c(1., 0.));
        assert_eq!(xi[(1, 3)], c(1., 0.));
        assert_eq!(xi[(0, 1)], c(0., 0.));
        let ix = i2.kron(&x);
        assert_eq!(ix[(0, 1)], c(1., 0.));
        assert_eq!(ix[(2, 3)], c(1., 0.));
    }

    #[test]
    fn mismatched_dims_are_errors() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(a.try_mul(&b).is_err());
        assert!(a.apply(&[c(1., 0.)]).is_err());
        assert!(ComplexMatrix::from_row_major(2, vec![c(0., 0.)]).is_err());
    }

    #[test]
    fn block_split_matches_dense_solve() {
        // Two coupled pairs {0, 3} and {1, 2}, hidden by the index order.
        let m = ComplexMatrix::from_fn(4, |r, col| match (r, col) {
            (0, 0) => c(1., 0.),
            (3, 3) => c(-2., 0.),
            (0, 3) => c(0.5, 0.5),
            (3, 0) => c(0.5, -0.5),
            (1, 2) => c(0., 2.),
            (2, 1) => c(0., -2.),
            _ => c(0., 0.),
        });
        assert_eq!(m.coupled_blocks(), vec![vec![0, 3], vec![1, 2]]);
        let dense = DMatrix::from_row_slice(4, 4, m.entries());
        let mut expected: Vec<f64> = SymmetricEigen::new(dense)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        expected.sort_by(f64::total_cmp);
        for (a, b) in m.hermitian_eigenvalues().iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(ComplexMatrix::identity(3).coupled_blocks().len(), 3);
    }

    #[test]
    fn eigenvalues_of_pauli_y() {
        let y = ComplexMatrix::from_row_major(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
            .unwrap();
        let ev = y.hermitian_eigenvalues();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }
}
