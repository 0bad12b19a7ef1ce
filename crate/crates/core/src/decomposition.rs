//! Decomposition of 𝓕 into the twelve basic classes `G1..G12`.
//!
//! `project_w` splits a structure tensor along `𝓕 = W1 ⊕ W2 ⊕ W3 ⊕ W4`;
//! `project_all` refines that into the twelve components `F^1..F^12`, one per
//! class, with `Σ F^i = F`. All formulas are evaluated componentwise on the
//! φ-basis, where `φ`, `h = φ²` and `η` act by index maps.

use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{column_space, numerical_rank};
use crate::space::{ApcSpace, Basis};
use crate::tensor::Tensor3;

pub const CLASS_COUNT: usize = 12;

/// Default scale-relative tolerance for membership and class detection.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Singular-value cutoff used by the rank tool.
pub const RANK_THRESHOLD: f64 = 1e-7;

/// Largest `n` accepted by [`subspace_dimension`]; cost grows as `dim⁶`.
pub const MAX_RANK_N: usize = 4;

/// The Lee forms `θ`, `θ*`, `ω` of a structure tensor, as covector components.
#[derive(Debug, Clone, PartialEq)]
pub struct LeeForms {
    pub theta: Vec<f64>,
    pub theta_star: Vec<f64>,
    pub omega: Vec<f64>,
}

impl LeeForms {
    /// `θ(ξ)`.
    pub fn theta_xi(&self) -> f64 {
        *self.theta.last().expect("non-empty covector")
    }

    /// `θ*(ξ)`.
    pub fn theta_star_xi(&self) -> f64 {
        *self.theta_star.last().expect("non-empty covector")
    }
}

/// `θ_k = Σ_i ε_i F_{iik}`, `θ*_k = Σ_i ε_i F(e_i, φe_i, e_k)`, `ω_k = F(ξ, ξ, e_k)`.
///
/// The sums run over the full basis including `ξ`.
pub fn lee_forms(f: &Tensor3) -> LeeForms {
    let s = f.space();
    let d = s.dim();
    let xi = s.xi();
    let theta = (0..d)
        .map(|k| (0..d).map(|i| s.sign(i) * f.get(i, i, k)).sum())
        .collect();
    let theta_star = (0..d)
        .map(|k| {
            (0..d)
                .map(|i| s.sign(i) * f.at(Some(i), s.phi(i), Some(k)))
                .sum()
        })
        .collect();
    let omega = (0..d).map(|k| f.get(xi, xi, k)).collect();
    LeeForms {
        theta,
        theta_star,
        omega,
    }
}

#[inline]
fn covector(v: &[f64], b: Basis) -> f64 {
    b.map_or(0.0, |i| v[i])
}

/// A set of class indices in `1..=12`. The empty set is the class `G0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ClassSet(u16);

impl ClassSet {
    pub const EMPTY: ClassSet = ClassSet(0);

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut set = Self::EMPTY;
        for &i in indices {
            set.insert(i)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, i: usize) -> Result<()> {
        check_class_index(i)?;
        self.0 |= 1 << i;
        Ok(())
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=CLASS_COUNT).contains(&i) && self.0 & (1 << i) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(&self, other: &ClassSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=CLASS_COUNT).filter(|&i| self.contains(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Display for ClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("G0");
        }
        let parts: Vec<String> = self.iter().map(|i| format!("G{i}")).collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

pub(crate) fn check_class_index(i: usize) -> Result<()> {
    if (1..=CLASS_COUNT).contains(&i) {
        Ok(())
    } else {
        Err(Error::InvalidClassIndex(i))
    }
}

/// The `W1..W4` components: horizontal part, mixed parts linear in `η(y)`,
/// `η(z)`, the part with `x = ξ`, and the `ω`-part.
pub fn project_w(f: &Tensor3) -> [Tensor3; 4] {
    let s = f.space();
    let xi = Some(s.xi());
    let w1 = Tensor3::from_fn(s, |x, y, z| f.at(s.h(x), s.h(y), s.h(z)));
    let w2 = Tensor3::from_fn(s, |x, y, z| {
        -s.eta(y) * f.at(s.h(x), s.h(z), xi) + s.eta(z) * f.at(s.h(x), s.h(y), xi)
    });
    let w3 = Tensor3::from_fn(s, |x, y, z| s.eta(x) * f.at(xi, s.phi(y), s.phi(z)));
    let w4 = Tensor3::from_fn(s, |x, y, z| {
        s.eta(x) * (s.eta(y) * f.at(xi, xi, Some(z)) - s.eta(z) * f.at(xi, xi, Some(y)))
    });
    [w1, w2, w3, w4]
}

/// Result of [`project_all`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionSet {
    pub w_parts: [Tensor3; 4],
    /// `g_parts[i - 1]` is the component in `Gi`.
    pub g_parts: Vec<Tensor3>,
    pub lee: LeeForms,
    /// Max-abs component of each `F^i`.
    pub magnitudes: [f64; CLASS_COUNT],
    pub label: ClassSet,
    /// Max-abs component of the input.
    pub scale: f64,
    pub tol_used: f64,
}

impl ProjectionSet {
    pub fn part(&self, i: usize) -> &Tensor3 {
        &self.g_parts[i - 1]
    }

    pub fn sum(&self) -> Tensor3 {
        self.g_parts.iter().cloned().sum()
    }
}

/// `g(x, φy)θ(φz) − g(x, φz)θ(φy) − g(φx, φy)θ(hz) + g(φx, φz)θ(hy)` scaled by
/// `1/(2(n−1))`; the zero tensor when `n = 1`.
fn lee_part(s: ApcSpace, theta: &[f64]) -> Tensor3 {
    let n = s.n();
    if n == 1 {
        return Tensor3::zeros(s);
    }
    let c = 1.0 / (2.0 * (n as f64 - 1.0));
    Tensor3::from_fn(s, |x, y, z| {
        let (px, py, pz) = (s.phi(x), s.phi(y), s.phi(z));
        c * (s.g(Some(x), py) * covector(theta, pz)
            - s.g(Some(x), pz) * covector(theta, py)
            - s.g(px, py) * covector(theta, s.h(z))
            + s.g(px, pz) * covector(theta, s.h(y)))
    })
}

/// The `G5` member `(θ(ξ)/2n){η(y)g(φx, φz) − η(z)g(φx, φy)}`.
pub fn g5_model(s: ApcSpace, theta_xi: f64) -> Tensor3 {
    g5_shape(s) * (theta_xi / (2.0 * s.n() as f64))
}

/// The `G6` member `−(θ*(ξ)/2n){η(y)g(x, φz) − η(z)g(x, φy)}`.
pub fn g6_model(s: ApcSpace, theta_star_xi: f64) -> Tensor3 {
    g6_shape(s) * (-theta_star_xi / (2.0 * s.n() as f64))
}

/// `η(y)g(φx, φz) − η(z)g(φx, φy)`, the shape of a `G5` tensor.
fn g5_shape(s: ApcSpace) -> Tensor3 {
    Tensor3::from_fn(s, |x, y, z| {
        let px = s.phi(x);
        s.eta(y) * s.g(px, s.phi(z)) - s.eta(z) * s.g(px, s.phi(y))
    })
}

/// `η(y)g(x, φz) − η(z)g(x, φy)`, the shape of a `G6` tensor up to sign.
fn g6_shape(s: ApcSpace) -> Tensor3 {
    Tensor3::from_fn(s, |x, y, z| {
        s.eta(y) * s.g(Some(x), s.phi(z)) - s.eta(z) * s.g(Some(x), s.phi(y))
    })
}

/// The `W2` symmetrizations. With `a = F(·,·,ξ)` restricted to horizontal
/// arguments, the `(swap, twist)` signs select the eigen-part of `a` under
/// transposition and under `(x, y) ↦ (φx, φy)`.
fn w2_part(f: &Tensor3, twist: f64, swap: f64) -> Tensor3 {
    let s = f.space();
    let xi = Some(s.xi());
    let pair = |x: usize, y: usize| {
        f.at(s.h(x), s.h(y), xi)
            + twist * f.at(s.phi(x), s.phi(y), xi)
            + swap * f.at(s.h(y), s.h(x), xi)
            + twist * swap * f.at(s.phi(y), s.phi(x), xi)
    };
    Tensor3::from_fn(s, |x, y, z| {
        -0.25 * s.eta(y) * pair(x, z) + 0.25 * s.eta(z) * pair(x, y)
    })
}

fn g_parts(f: &Tensor3, lee: &LeeForms) -> Vec<Tensor3> {
    let s = f.space();
    let xi = Some(s.xi());

    let g1g2 = Tensor3::from_fn(s, |x, y, z| {
        0.5 * (f.at(s.h(x), s.h(y), s.h(z)) - f.at(s.phi(x), s.h(y), s.phi(z)))
    });
    let f1 = lee_part(s, &lee_forms(&g1g2).theta);
    let f2 = &g1g2 - &f1;

    let g3g4 = Tensor3::from_fn(s, |x, y, z| {
        0.5 * (f.at(s.h(x), s.h(y), s.h(z)) + f.at(s.phi(x), s.h(y), s.phi(z)))
    });
    let f3 = Tensor3::from_fn(s, |x, y, z| {
        (g3g4.get(x, y, z) + g3g4.get(y, z, x) + g3g4.get(z, x, y)) / 3.0
    });
    let f4 = &g3g4 - &f3;

    let f5 = g5_model(s, lee.theta_xi());
    let f6 = g6_model(s, lee.theta_star_xi());
    let f7 = w2_part(f, -1.0, -1.0) - f6.clone();
    let f8 = w2_part(f, -1.0, 1.0) - f5.clone();
    let f9 = w2_part(f, 1.0, -1.0);
    let f10 = w2_part(f, 1.0, 1.0);

    let f11 = Tensor3::from_fn(s, |x, y, z| s.eta(x) * f.at(xi, s.h(y), s.h(z)));
    let f12 = Tensor3::from_fn(s, |x, y, z| {
        s.eta(x) * (s.eta(y) * f.at(xi, xi, s.h(z)) - s.eta(z) * f.at(xi, xi, s.h(y)))
    });

    vec![f1, f2, f3, f4, f5, f6, f7, f8, f9, f10, f11, f12]
}

/// Projects `f` onto all twelve classes with the default tolerance.
pub fn project_all(f: &Tensor3) -> Result<ProjectionSet> {
    project_all_with_tol(f, DEFAULT_TOL)
}

/// Projects `f` onto all twelve classes. Class `i` is in the label iff
/// `max|F^i| > tol · max|F|`. Rejects tensors outside 𝓕.
pub fn project_all_with_tol(f: &Tensor3, tol: f64) -> Result<ProjectionSet> {
    f.require_f_space(tol)?;
    let lee = lee_forms(f);
    let parts = g_parts(f, &lee);
    let scale = f.max_abs();
    let mut magnitudes = [0.0; CLASS_COUNT];
    let mut label = ClassSet::EMPTY;
    for (idx, part) in parts.iter().enumerate() {
        magnitudes[idx] = part.max_abs();
        if magnitudes[idx] > tol * scale {
            label.insert(idx + 1)?;
        }
    }
    Ok(ProjectionSet {
        w_parts: project_w(f),
        g_parts: parts,
        lee,
        magnitudes,
        label,
        scale,
        tol_used: tol,
    })
}

/// Largest violation of the defining identities of `Gi` (including the
/// auxiliary trace constraints), not normalized.
pub fn characteristic_residual(f: &Tensor3, i: usize) -> Result<f64> {
    check_class_index(i)?;
    let s = f.space();
    let d = s.dim();
    let xi = Some(s.xi());
    let lee = lee_forms(f);

    let mut r: f64 = 0.0;
    let mut each = |mut g: Box<dyn FnMut(usize, usize, usize) -> f64 + '_>| {
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    r = r.max(g(x, y, z).abs());
                }
            }
        }
    };
    let trace_max = |v: &[f64]| v.iter().fold(0.0f64, |m, t| m.max(t.abs()));

    match i {
        1 => {
            let model = lee_part(s, &lee.theta);
            each(Box::new(|x, y, z| f.get(x, y, z) - model.get(x, y, z)));
            if s.n() == 1 {
                each(Box::new(|x, y, z| f.get(x, y, z)));
            }
        }
        2 => {
            each(Box::new(|x, y, z| {
                f.at(s.phi(x), s.phi(y), Some(z)) + f.get(x, y, z)
            }));
            r = r.max(trace_max(&lee.theta));
        }
        3 | 4 => {
            each(Box::new(|_, y, z| f.at(xi, Some(y), Some(z))));
            each(Box::new(|x, _, z| f.at(Some(x), xi, Some(z))));
            each(Box::new(|x, y, z| {
                f.at(s.phi(x), s.phi(y), Some(z)) - f.get(x, y, z)
            }));
            if i == 3 {
                each(Box::new(|x, y, z| f.get(x, y, z) + f.get(y, x, z)));
            } else {
                each(Box::new(|x, y, z| {
                    f.get(x, y, z) + f.get(y, z, x) + f.get(z, x, y)
                }));
            }
        }
        5 => {
            let model = g5_model(s, lee.theta_xi());
            each(Box::new(|x, y, z| f.get(x, y, z) - model.get(x, y, z)));
        }
        6 => {
            let model = g6_model(s, lee.theta_star_xi());
            each(Box::new(|x, y, z| f.get(x, y, z) - model.get(x, y, z)));
        }
        7..=10 => {
            // F(x,y,ξ) = swap·F(y,x,ξ) = twist·F(φx,φy,ξ)
            let (swap, twist) = match i {
                7 => (-1.0, -1.0),
                8 => (1.0, -1.0),
                9 => (-1.0, 1.0),
                _ => (1.0, 1.0),
            };
            each(Box::new(|x, y, z| {
                f.get(x, y, z) + s.eta(y) * f.at(Some(x), Some(z), xi)
                    - s.eta(z) * f.at(Some(x), Some(y), xi)
            }));
            each(Box::new(|x, y, _| {
                f.at(Some(x), Some(y), xi) - swap * f.at(Some(y), Some(x), xi)
            }));
            each(Box::new(|x, y, _| {
                f.at(Some(x), Some(y), xi) - twist * f.at(s.phi(x), s.phi(y), xi)
            }));
            match i {
                7 => r = r.max(lee.theta_star_xi().abs()),
                8 => r = r.max(lee.theta_xi().abs()),
                _ => {}
            }
        }
        11 => {
            each(Box::new(|x, y, z| {
                f.get(x, y, z) - s.eta(x) * f.at(xi, s.phi(y), s.phi(z))
            }));
        }
        _ => {
            each(Box::new(|x, y, z| {
                f.get(x, y, z)
                    - s.eta(x)
                        * (s.eta(y) * f.at(xi, xi, Some(z)) - s.eta(z) * f.at(xi, xi, Some(y)))
            }));
        }
    }
    Ok(r)
}

/// Whether `f` satisfies the characteristic conditions of `Gi` within a
/// scale-relative tolerance. The zero tensor belongs to every class.
pub fn check_characteristic(f: &Tensor3, i: usize, tol: f64) -> Result<bool> {
    Ok(characteristic_residual(f, i)? <= tol * f.max_abs())
}

fn check_rank_n(n: usize) -> Result<ApcSpace> {
    if n == 0 || n > MAX_RANK_N {
        return Err(Error::UnsupportedRankDimension { n, max: MAX_RANK_N });
    }
    ApcSpace::new(n)
}

/// Orthonormal basis of 𝓕 (as flattened columns), from the images of all
/// elementary tensors under the projection onto 𝓕.
pub fn f_space_basis(space: ApcSpace) -> DMatrix<f64> {
    let d = space.dim();
    let len = d * d * d;
    let mut images = DMatrix::<f64>::zeros(len, len);
    for m in 0..len {
        let (i, j, k) = (m / (d * d), (m / d) % d, m % d);
        let p = Tensor3::elementary(space, i, j, k).project_to_f_space();
        images.column_mut(m).copy_from_slice(p.as_slice());
    }
    column_space(&images, RANK_THRESHOLD)
}

/// `dim 𝓕` as the rank of the projection onto 𝓕.
pub fn f_space_dimension(n: usize) -> Result<usize> {
    let s = check_rank_n(n)?;
    Ok(f_space_basis(s).ncols())
}

/// Numerical ranks of all twelve projection operators restricted to 𝓕.
pub fn projection_ranks(n: usize) -> Result<[usize; CLASS_COUNT]> {
    let s = check_rank_n(n)?;
    let basis = f_space_basis(s);
    let len = basis.nrows();
    let mut images: Vec<DMatrix<f64>> = vec![DMatrix::zeros(len, basis.ncols()); CLASS_COUNT];
    for c in 0..basis.ncols() {
        let f = Tensor3::from_vec(s, basis.column(c).iter().copied().collect());
        let lee = lee_forms(&f);
        for (idx, part) in g_parts(&f, &lee).iter().enumerate() {
            images[idx].column_mut(c).copy_from_slice(part.as_slice());
        }
    }
    let mut ranks = [0; CLASS_COUNT];
    for (idx, m) in images.iter().enumerate() {
        ranks[idx] = numerical_rank(m, RANK_THRESHOLD);
    }
    Ok(ranks)
}

/// `dim Gi` as the numerical rank of `F ↦ F^i` on 𝓕.
pub fn subspace_dimension(n: usize, i: usize) -> Result<usize> {
    check_class_index(i)?;
    Ok(projection_ranks(n)?[i - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> ApcSpace {
        ApcSpace::new(n).unwrap()
    }

    /// The dimension-3 G5 tensor with `θ³ = 2t`.
    fn g5_tensor(t: f64) -> Tensor3 {
        let mut f = Tensor3::zeros(space(1));
        f.set(0, 0, 2, t);
        f.set(0, 2, 0, -t);
        f.set(1, 1, 2, -t);
        f.set(1, 2, 1, t);
        f
    }

    #[test]
    fn class_set_display() {
        assert_eq!(ClassSet::EMPTY.to_string(), "G0");
        let s = ClassSet::from_indices(&[10, 5]).unwrap();
        assert_eq!(s.to_string(), "G5 ⊕ G10");
        assert!(ClassSet::from_indices(&[13]).is_err());
        assert!(ClassSet::from_indices(&[0]).is_err());
    }

    #[test]
    fn lee_forms_of_dimension_three_members() {
        let f = g5_tensor(1.5);
        let lee = lee_forms(&f);
        assert_eq!(lee.theta, vec![0.0, 0.0, 3.0]);
        assert_eq!(lee.theta_star, vec![0.0, 0.0, 0.0]);
        assert_eq!(lee.omega, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn zero_tensor_projects_to_g0() {
        for n in 1..=3 {
            let p = project_all(&Tensor3::zeros(space(n))).unwrap();
            assert!(p.label.is_empty());
            assert!(p.g_parts.iter().all(|t| t.max_abs() == 0.0));
            for i in 1..=12 {
                assert!(check_characteristic(&Tensor3::zeros(space(n)), i, 1e-12).unwrap());
            }
        }
    }

    #[test]
    fn g5_tensor_is_pure_g5() {
        let p = project_all(&g5_tensor(1.0)).unwrap();
        assert_eq!(p.label.to_vec(), vec![5]);
        assert_eq!(p.part(5).get(0, 0, 2), 1.0);
        assert!(check_characteristic(p.part(5), 5, 1e-12).unwrap());
        assert!(!check_characteristic(&g5_tensor(1.0), 6, 1e-9).unwrap());
    }

    #[test]
    fn w1_member_is_fixed_by_w_projection() {
        let s = space(2);
        let f = Tensor3::from_fn(s, |i, j, k| ((i + 2 * j + 3 * k) % 5) as f64 - 2.0)
            .project_to_f_space();
        let w1 = project_w(&f)[0].clone();
        let parts = project_w(&w1);
        assert!(parts[0].max_abs_diff(&w1) < 1e-15);
        assert!(parts[1..].iter().all(|t| t.max_abs() < 1e-15));
    }

    #[test]
    fn rejects_non_members() {
        let mut t = Tensor3::zeros(space(1));
        t.set(0, 0, 1, 1.0);
        t.set(0, 1, 0, 1.0);
        assert!(matches!(project_all(&t), Err(Error::NotInFSpace { .. })));
    }

    #[test]
    fn invalid_class_index() {
        let t = Tensor3::zeros(space(1));
        assert_eq!(
            check_characteristic(&t, 0, 1e-9),
            Err(Error::InvalidClassIndex(0))
        );
        assert_eq!(
            check_characteristic(&t, 13, 1e-9),
            Err(Error::InvalidClassIndex(13))
        );
    }

    #[test]
    fn rank_tool_bounds() {
        assert!(matches!(
            subspace_dimension(0, 1),
            Err(Error::UnsupportedRankDimension { .. })
        ));
        assert!(matches!(
            subspace_dimension(5, 1),
            Err(Error::UnsupportedRankDimension { .. })
        ));
    }

    #[test]
    fn ranks_in_dimension_three() {
        assert_eq!(
            projection_ranks(1).unwrap(),
            [0, 0, 0, 0, 1, 1, 0, 0, 0, 2, 0, 2]
        );
        assert_eq!(f_space_dimension(1).unwrap(), 6);
    }
}
