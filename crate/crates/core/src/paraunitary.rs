//! The structure group `U^π(n) × {1}` and its action on rank-3 tensors.
//!
//! Elements are `(2n+1)×(2n+1)` matrices `diag(r(β), 1)` with
//! `r(β) = [[A, B], [B, A]]`, `AᵗA − BᵗB = I`, `AᵗB − BᵗA = 0`. They fix `ξ`,
//! commute with `φ` and are isometries of `g`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{expm, max_abs};
use crate::space::ApcSpace;
use crate::tensor::Tensor3;

#[derive(Debug, Clone, PartialEq)]
pub struct ParaunitaryElement {
    space: ApcSpace,
    mat: DMatrix<f64>,
}

impl ParaunitaryElement {
    pub fn identity(space: ApcSpace) -> Self {
        let d = space.dim();
        Self {
            space,
            mat: DMatrix::identity(d, d),
        }
    }

    /// Exponential of the block generator `[[P, Q], [Q, P]]`, extended by 1 on
    /// `ξ`. `skew` must be skew-symmetric and `sym` symmetric (`n×n`).
    pub fn from_generators(space: ApcSpace, skew: &DMatrix<f64>, sym: &DMatrix<f64>) -> Self {
        let n = space.n();
        assert_eq!(skew.shape(), (n, n));
        assert_eq!(sym.shape(), (n, n));
        let mut gen = DMatrix::<f64>::zeros(2 * n, 2 * n);
        gen.view_mut((0, 0), (n, n)).copy_from(skew);
        gen.view_mut((n, n), (n, n)).copy_from(skew);
        gen.view_mut((0, n), (n, n)).copy_from(sym);
        gen.view_mut((n, 0), (n, n)).copy_from(sym);
        let block = expm(&gen);

        let d = space.dim();
        let mut mat = DMatrix::<f64>::zeros(d, d);
        mat.view_mut((0, 0), (2 * n, 2 * n)).copy_from(&block);
        mat[(d - 1, d - 1)] = 1.0;
        Self { space, mat }
    }

    /// Deterministic sample from the identity component. Generator entries are
    /// uniform in `[-1, 1]`.
    pub fn random(space: ApcSpace, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(space, &mut rng)
    }

    pub fn random_with<R: Rng + ?Sized>(space: ApcSpace, rng: &mut R) -> Self {
        let n = space.n();
        let mut skew = DMatrix::<f64>::zeros(n, n);
        let mut sym = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            sym[(i, i)] = rng.random_range(-1.0..=1.0);
            for j in (i + 1)..n {
                let p: f64 = rng.random_range(-1.0..=1.0);
                let q: f64 = rng.random_range(-1.0..=1.0);
                skew[(i, j)] = p;
                skew[(j, i)] = -p;
                sym[(i, j)] = q;
                sym[(j, i)] = q;
            }
        }
        Self::from_generators(space, &skew, &sym)
    }

    pub fn space(&self) -> ApcSpace {
        self.space
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    /// Group product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.space, other.space);
        Self {
            space: self.space,
            mat: &self.mat * &other.mat,
        }
    }

    /// Blocks `(A, B)` of the horizontal part.
    pub fn blocks(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        let n = self.space.n();
        (
            self.mat.view((0, 0), (n, n)).into_owned(),
            self.mat.view((n, 0), (n, n)).into_owned(),
        )
    }

    /// `max(|AᵗA − BᵗB − I|, |AᵗB − BᵗA|)`.
    pub fn paraunitary_residual(&self) -> f64 {
        let n = self.space.n();
        let (a, b) = self.blocks();
        let c1 = a.transpose() * &a - b.transpose() * &b - DMatrix::<f64>::identity(n, n);
        let c2 = a.transpose() * &b - b.transpose() * &a;
        max_abs(&c1).max(max_abs(&c2))
    }

    /// Largest violation among: fixes `ξ`, commutes with `φ`, preserves `g`.
    pub fn structure_residual(&self) -> f64 {
        let s = self.space;
        let phi = s.phi_matrix();
        let g = s.metric_matrix();
        let xi = s.xi_vector();
        let fix = (&self.mat * &xi - &xi).amax();
        let comm = max_abs(&(&self.mat * &phi - &phi * &self.mat));
        let iso = max_abs(&(self.mat.transpose() * &g * &self.mat - &g));
        fix.max(comm).max(iso)
    }

    pub fn inverse(&self) -> Result<Self> {
        let mat = self
            .mat
            .clone()
            .try_inverse()
            .ok_or(Error::SingularElement)?;
        Ok(Self {
            space: self.space,
            mat,
        })
    }

    /// `(λ(α)F)(x,y,z) = F(α⁻¹x, α⁻¹y, α⁻¹z)`.
    pub fn act(&self, f: &Tensor3) -> Result<Tensor3> {
        if f.space() != self.space {
            return Err(Error::SpaceMismatch {
                left: self.space.n(),
                right: f.space().n(),
            });
        }
        let inv = self.inverse()?;
        Ok(pull_back(f, &inv.mat))
    }
}

/// `G_{ijk} = Σ F_{pqr} M_{pi} M_{qj} M_{rk}`, contracted one slot at a time.
fn pull_back(f: &Tensor3, m: &DMatrix<f64>) -> Tensor3 {
    let s = f.space();
    let d = s.dim();
    let mut stage1 = vec![0.0; d * d * d];
    for p in 0..d {
        for q in 0..d {
            for k in 0..d {
                stage1[(p * d + q) * d + k] = (0..d).map(|r| f.get(p, q, r) * m[(r, k)]).sum();
            }
        }
    }
    let mut stage2 = vec![0.0; d * d * d];
    for p in 0..d {
        for j in 0..d {
            for k in 0..d {
                stage2[(p * d + j) * d + k] = (0..d)
                    .map(|q| stage1[(p * d + q) * d + k] * m[(q, j)])
                    .sum();
            }
        }
    }
    Tensor3::from_fn(s, |i, j, k| {
        (0..d)
            .map(|p| stage2[(p * d + j) * d + k] * m[(p, i)])
            .sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_generators_give_identity() {
        let s = ApcSpace::new(2).unwrap();
        let z = DMatrix::zeros(2, 2);
        let e = ParaunitaryElement::from_generators(s, &z, &z);
        assert_eq!(e, ParaunitaryElement::identity(s));
    }

    #[test]
    fn random_elements_are_paraunitary() {
        for n in 1..=4 {
            let s = ApcSpace::new(n).unwrap();
            for seed in 0..20 {
                let a = ParaunitaryElement::random(s, seed);
                assert!(a.paraunitary_residual() < 1e-10, "n={n} seed={seed}");
                assert!(a.structure_residual() < 1e-10, "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let s = ApcSpace::new(3).unwrap();
        assert_eq!(
            ParaunitaryElement::random(s, 42),
            ParaunitaryElement::random(s, 42)
        );
        assert_ne!(
            ParaunitaryElement::random(s, 42),
            ParaunitaryElement::random(s, 43)
        );
    }

    #[test]
    fn identity_acts_trivially() {
        let s = ApcSpace::new(2).unwrap();
        let f = Tensor3::from_fn(s, |i, j, k| (i * 31 + j * 7 + k) as f64).project_to_f_space();
        let g = ParaunitaryElement::identity(s).act(&f).unwrap();
        assert!(g.max_abs_diff(&f) < 1e-15);
    }
}
