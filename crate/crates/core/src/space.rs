//! Coordinate model of an almost paracontact metric structure `(φ, ξ, η, g)`
//! on a `(2n+1)`-dimensional vector space.
//!
//! The basis is ordered `u_1..u_n, v_1..v_n, ξ` with `φu_a = v_a`,
//! `φv_a = u_a`, `φξ = 0` and `g = diag(+1 (n times), -1 (n times), +1)`.
//! Because `φ` permutes the horizontal basis vectors, every structure
//! operation on basis vectors is an index map. Arguments of type
//! [`Basis`] are either a basis vector or the zero vector.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// A basis vector, or `None` for the zero vector.
pub type Basis = Option<usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ApcSpace {
    n: usize,
}

impl ApcSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroHalfRank(n));
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    /// Index of `ξ` in the basis.
    #[inline]
    pub fn xi(&self) -> usize {
        2 * self.n
    }

    #[inline]
    pub fn is_horizontal(&self, i: usize) -> bool {
        i < 2 * self.n
    }

    /// `g(e_i, e_i)`.
    #[inline]
    pub fn sign(&self, i: usize) -> f64 {
        if i >= self.n && i < 2 * self.n {
            -1.0
        } else {
            1.0
        }
    }

    pub fn signs(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.sign(i)).collect()
    }

    /// Signature `(p, q)` of the metric.
    pub fn signature(&self) -> (usize, usize) {
        let p = (0..self.dim()).filter(|&i| self.sign(i) > 0.0).count();
        (p, self.dim() - p)
    }

    /// `φ e_i`.
    #[inline]
    pub fn phi(&self, i: usize) -> Basis {
        let n = self.n;
        if i < n {
            Some(i + n)
        } else if i < 2 * n {
            Some(i - n)
        } else {
            None
        }
    }

    #[inline]
    pub fn phi_of(&self, v: Basis) -> Basis {
        v.and_then(|i| self.phi(i))
    }

    /// Horizontal projector `h = φ²`.
    #[inline]
    pub fn h(&self, i: usize) -> Basis {
        self.is_horizontal(i).then_some(i)
    }

    #[inline]
    pub fn eta(&self, i: usize) -> f64 {
        if i == self.xi() {
            1.0
        } else {
            0.0
        }
    }

    #[inline]
    pub fn g(&self, a: Basis, b: Basis) -> f64 {
        match (a, b) {
            (Some(i), Some(j)) if i == j => self.sign(i),
            _ => 0.0,
        }
    }

    /// Fundamental 2-form `Φ(x, y) = g(φx, y)` on basis vectors.
    #[inline]
    pub fn fundamental_form(&self, i: usize, j: usize) -> f64 {
        self.g(self.phi(i), Some(j))
    }

    /// Matrix of `φ` acting on column vectors: column `i` holds `φ e_i`.
    pub fn phi_matrix(&self) -> DMatrix<f64> {
        let d = self.dim();
        DMatrix::from_fn(d, d, |r, c| if self.phi(c) == Some(r) { 1.0 } else { 0.0 })
    }

    pub fn metric_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.signs()))
    }

    /// Column vector of `ξ`.
    pub fn xi_vector(&self) -> nalgebra::DVector<f64> {
        let mut v = nalgebra::DVector::zeros(self.dim());
        v[self.xi()] = 1.0;
        v
    }

    /// Row vector of `η`.
    pub fn eta_covector(&self) -> nalgebra::RowDVector<f64> {
        self.xi_vector().transpose()
    }
}
