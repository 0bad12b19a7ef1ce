//! Dense covariant rank-3 tensors over an [`ApcSpace`] and the subspace 𝓕
//! of admissible structure tensors.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::space::{ApcSpace, Basis};

/// Components `F_{ijk} = F(e_i, e_j, e_k)` stored row-major in `(i, j, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    space: ApcSpace,
    comps: Vec<f64>,
}

impl Tensor3 {
    pub fn zeros(space: ApcSpace) -> Self {
        let d = space.dim();
        Self {
            space,
            comps: vec![0.0; d * d * d],
        }
    }

    pub fn from_fn(space: ApcSpace, mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let d = space.dim();
        let mut comps = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    comps.push(f(i, j, k));
                }
            }
        }
        Self { space, comps }
    }

    /// Builds a tensor from a flat component vector in `(i, j, k)` order.
    pub fn from_vec(space: ApcSpace, comps: Vec<f64>) -> Self {
        let d = space.dim();
        assert_eq!(comps.len(), d * d * d, "component count must be dim³");
        Self { space, comps }
    }

    /// Tensor with a single nonzero component.
    pub fn elementary(space: ApcSpace, i: usize, j: usize, k: usize) -> Self {
        let mut t = Self::zeros(space);
        t.set(i, j, k, 1.0);
        t
    }

    #[inline]
    pub fn space(&self) -> ApcSpace {
        self.space
    }

    #[inline]
    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        let d = self.space.dim();
        (i * d + j) * d + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.comps[self.offset(i, j, k)]
    }

    /// Evaluation on basis vectors, zero if any argument is the zero vector.
    #[inline]
    pub fn at(&self, a: Basis, b: Basis, c: Basis) -> f64 {
        match (a, b, c) {
            (Some(i), Some(j), Some(k)) => self.get(i, j, k),
            _ => 0.0,
        }
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        let o = self.offset(i, j, k);
        self.comps[o] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.comps
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.comps
            .iter()
            .zip(&other.comps)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Nonzero components as `(i, j, k, value)` with 0-based indices.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, f64)> {
        let d = self.space.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = self.get(i, j, k);
                    if v != 0.0 {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }

    pub fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space.n(),
                right: other.space.n(),
            });
        }
        Ok(())
    }

    /// `Q(F)(x,y,z) = F(x,φy,φz) − η(y)F(x,z,ξ) + η(z)F(x,y,ξ)`.
    fn phi_twist(&self) -> Self {
        let s = self.space;
        let xi = s.xi();
        Self::from_fn(s, |i, j, k| {
            self.at(Some(i), s.phi(j), s.phi(k)) - s.eta(j) * self.get(i, k, xi)
                + s.eta(k) * self.get(i, j, xi)
        })
    }

    /// Largest violation of the two identities defining 𝓕.
    pub fn f_space_residual(&self) -> f64 {
        let s = self.space;
        let d = s.dim();
        let twisted = self.phi_twist();
        let mut r: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    r = r.max((self.get(i, k, j) + self.get(i, j, k)).abs());
                    r = r.max((twisted.get(i, j, k) - self.get(i, j, k)).abs());
                }
            }
        }
        r
    }

    /// Membership in 𝓕 with a scale-relative tolerance.
    pub fn is_in_f_space(&self, tol: f64) -> bool {
        self.f_space_residual() <= tol * self.max_abs()
    }

    pub(crate) fn require_f_space(&self, tol: f64) -> Result<()> {
        let residual = self.f_space_residual();
        if residual > tol * self.max_abs().max(1.0) {
            return Err(Error::NotInFSpace { residual });
        }
        Ok(())
    }

    /// Projects an arbitrary rank-3 tensor onto 𝓕: antisymmetrize in the last
    /// two slots, then average with the φ-twist.
    pub fn project_to_f_space(&self) -> Self {
        let s = self.space;
        let anti = Self::from_fn(s, |i, j, k| 0.5 * (self.get(i, j, k) - self.get(i, k, j)));
        let twisted = anti.phi_twist();
        (anti + twisted) * 0.5
    }

    /// `⟨F₁, F₂⟩ = Σ ε_i ε_j ε_k F₁_{ijk} F₂_{ijk}`; indefinite.
    pub fn inner_product(&self, other: &Self) -> Result<f64> {
        self.check_same_space(other)?;
        let s = self.space;
        let d = s.dim();
        let mut acc = 0.0;
        for i in 0..d {
            for j in 0..d {
                let eij = s.sign(i) * s.sign(j);
                for k in 0..d {
                    acc += eij * s.sign(k) * self.get(i, j, k) * other.get(i, j, k);
                }
            }
        }
        Ok(acc)
    }

    /// Cyclic sum `𝔖F(x,y,z) = F(x,y,z) + F(y,z,x) + F(z,x,y)`.
    pub fn cyclic_sum(&self) -> Self {
        Self::from_fn(self.space, |i, j, k| {
            self.get(i, j, k) + self.get(j, k, i) + self.get(k, i, j)
        })
    }
}

impl Index<(usize, usize, usize)> for Tensor3 {
    type Output = f64;

    fn index(&self, (i, j, k): (usize, usize, usize)) -> &f64 {
        &self.comps[self.offset(i, j, k)]
    }
}

impl Add for Tensor3 {
    type Output = Tensor3;

    fn add(mut self, rhs: Tensor3) -> Tensor3 {
        self += &rhs;
        self
    }
}

impl<'a> Add<&'a Tensor3> for &'a Tensor3 {
    type Output = Tensor3;

    fn add(self, rhs: &Tensor3) -> Tensor3 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Tensor3> for Tensor3 {
    fn add_assign(&mut self, rhs: &Tensor3) {
        assert_eq!(self.space, rhs.space, "tensors on different spaces");
        for (a, b) in self.comps.iter_mut().zip(&rhs.comps) {
            *a += b;
        }
    }
}

impl Sub for Tensor3 {
    type Output = Tensor3;

    fn sub(self, rhs: Tensor3) -> Tensor3 {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a Tensor3> for &'a Tensor3 {
    type Output = Tensor3;

    fn sub(self, rhs: &Tensor3) -> Tensor3 {
        self.clone() - rhs.clone()
    }
}

impl Neg for Tensor3 {
    type Output = Tensor3;

    fn neg(self) -> Tensor3 {
        self * -1.0
    }
}

impl Mul<f64> for Tensor3 {
    type Output = Tensor3;

    fn mul(mut self, rhs: f64) -> Tensor3 {
        self.comps.iter_mut().for_each(|c| *c *= rhs);
        self
    }
}

impl std::iter::Sum for Tensor3 {
    /// Panics on an empty iterator since the space is unknown.
    fn sum<I: Iterator<Item = Tensor3>>(mut iter: I) -> Tensor3 {
        let first = iter.next().expect("sum of an empty tensor sequence");
        iter.fold(first, |acc, t| acc + t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> ApcSpace {
        ApcSpace::new(n).unwrap()
    }

    #[test]
    fn zero_tensor_is_member() {
        assert!(Tensor3::zeros(space(2)).is_in_f_space(1e-12));
    }

    #[test]
    fn symmetric_last_slots_is_not_member() {
        let mut t = Tensor3::zeros(space(1));
        t.set(0, 0, 1, 1.0);
        t.set(0, 1, 0, 1.0);
        assert!(!t.is_in_f_space(1e-9));
    }

    #[test]
    fn inner_product_single_pair() {
        let mut t = Tensor3::zeros(space(1));
        t.set(0, 0, 2, 1.0);
        t.set(0, 2, 0, -1.0);
        assert_eq!(t.inner_product(&t).unwrap(), 2.0);
        assert_eq!(Tensor3::zeros(space(1)).inner_product(&t).unwrap(), 0.0);
    }

    #[test]
    fn inner_product_rejects_mismatched_spaces() {
        let a = Tensor3::zeros(space(1));
        let b = Tensor3::zeros(space(2));
        assert_eq!(
            a.inner_product(&b),
            Err(Error::SpaceMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn projection_of_elementary_tensors_lands_in_f() {
        let s = space(2);
        let d = s.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let p = Tensor3::elementary(s, i, j, k).project_to_f_space();
                    assert!(p.f_space_residual() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn projection_fixes_members() {
        // F_{113} = -F_{131} = 1 in dimension 3 is a G5-type member.
        let s = space(1);
        let mut t = Tensor3::zeros(s);
        t.set(0, 0, 2, 1.0);
        t.set(0, 2, 0, -1.0);
        t.set(1, 1, 2, -1.0);
        t.set(1, 2, 1, 1.0);
        assert!(t.is_in_f_space(1e-15));
        assert_eq!(t.project_to_f_space(), t);
    }
}
