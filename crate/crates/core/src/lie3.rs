//! Three-dimensional Lie algebras with the canonical almost paracontact
//! metric structure: `φE₁ = E₂`, `φE₂ = E₁`, `ξ = E₃`, `g = diag(1, −1, 1)`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector3};
use rand::Rng;

use crate::classify::derived_forms;
use crate::space::ApcSpace;
use crate::tensor::Tensor3;
use crate::{Error, Result};

/// Absolute floor for the Jacobi check, scaled by `max(1, max|C|²)`.
pub const JACOBI_TOL: f64 = 1e-12;

fn phi(v: Vector3<f64>) -> Vector3<f64> {
    Vector3::new(v[1], v[0], 0.0)
}

fn g(u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
    u[0] * v[0] - u[1] * v[1] + u[2] * v[2]
}

/// Structure constants `[Eᵢ, Eⱼ] = C_ij^k E_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieAlgebra3 {
    pub c12: [f64; 3],
    pub c13: [f64; 3],
    pub c23: [f64; 3],
}

impl LieAlgebra3 {
    pub fn new(c12: [f64; 3], c13: [f64; 3], c23: [f64; 3]) -> Self {
        Self { c12, c13, c23 }
    }

    pub fn abelian() -> Self {
        Self::new([0.0; 3], [0.0; 3], [0.0; 3])
    }

    /// `C_ij^k` for 0-based `i, j, k`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        match (i, j) {
            (0, 1) => self.c12[k],
            (0, 2) => self.c13[k],
            (1, 2) => self.c23[k],
            (1, 0) => -self.c12[k],
            (2, 0) => -self.c13[k],
            (2, 1) => -self.c23[k],
            _ => 0.0,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.c12
            .iter()
            .chain(&self.c13)
            .chain(&self.c23)
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn bracket(&self, x: &Vector3<f64>, y: &Vector3<f64>) -> Vector3<f64> {
        let mut out = Vector3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let w = x[i] * y[j];
                if w != 0.0 {
                    for k in 0..3 {
                        out[k] += w * self.c(i, j, k);
                    }
                }
            }
        }
        out
    }

    /// `[[E₁,E₂],E₃] + [[E₂,E₃],E₁] + [[E₃,E₁],E₂]`.
    pub fn jacobi_vector(&self) -> Vector3<f64> {
        let e = |i| Vector3::ith(i, 1.0);
        let mut total = Vector3::zeros();
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            total += self.bracket(&self.bracket(&e(i), &e(j)), &e(k));
        }
        total
    }

    pub fn jacobi_residual(&self) -> f64 {
        self.jacobi_vector().amax()
    }

    pub fn check_jacobi(&self) -> bool {
        self.jacobi_residual() <= JACOBI_TOL * self.max_abs().powi(2).max(1.0)
    }

    pub fn require_jacobi(&self) -> Result<()> {
        if self.check_jacobi() {
            Ok(())
        } else {
            Err(Error::JacobiViolation {
                residual: self.jacobi_residual(),
            })
        }
    }

    pub fn space() -> ApcSpace {
        ApcSpace::new(1).expect("n = 1")
    }
}

/// `F` from the commutators:
/// `2F_ijk = g([Eᵢ,φEⱼ] − φ[Eᵢ,Eⱼ], E_k) + g([E_k,φEⱼ] + [φE_k,Eⱼ], Eᵢ)
///          + g([φE_k,Eᵢ] − φ[E_k,Eᵢ], Eⱼ)`.
pub fn structure_tensor(l: &LieAlgebra3) -> Result<Tensor3> {
    l.require_jacobi()?;
    let e = |i| Vector3::ith(i, 1.0);
    Ok(Tensor3::from_fn(LieAlgebra3::space(), |i, j, k| {
        let (ei, ej, ek) = (e(i), e(j), e(k));
        let t1 = l.bracket(&ei, &phi(ej)) - phi(l.bracket(&ei, &ej));
        let t2 = l.bracket(&ek, &phi(ej)) + l.bracket(&phi(ek), &ej);
        let t3 = l.bracket(&phi(ek), &ei) - phi(l.bracket(&ek, &ei));
        0.5 * (g(&t1, &ek) + g(&t2, &ei) + g(&t3, &ej))
    }))
}

/// `F` from its six independent components written directly in the constants.
pub fn structure_tensor_closed_form(l: &LieAlgebra3) -> Result<Tensor3> {
    l.require_jacobi()?;
    let c = |i: usize, j: usize, k: usize| l.c(i - 1, j - 1, k - 1);
    let mut f = Tensor3::zeros(LieAlgebra3::space());
    let mut put = |i: usize, j: usize, k: usize, v: f64| {
        f.set(i - 1, j - 1, k - 1, v);
        f.set(i - 1, k - 1, j - 1, -v);
    };
    put(1, 1, 3, 0.5 * (c(1, 2, 3) + c(1, 3, 2) - c(2, 3, 1)));
    put(2, 2, 3, 0.5 * (c(1, 3, 2) - c(1, 2, 3) - c(2, 3, 1)));
    put(1, 2, 3, -c(1, 3, 1));
    put(2, 1, 3, c(2, 3, 2));
    put(3, 3, 1, c(2, 3, 3));
    put(3, 3, 2, c(1, 3, 3));
    Ok(f)
}

/// The four families of pure classes realised on 3-dimensional Lie groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    G5,
    G6,
    G10,
    G12,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::G5, Family::G6, Family::G10, Family::G12];

    pub fn class_index(self) -> usize {
        match self {
            Family::G5 => 5,
            Family::G6 => 6,
            Family::G10 => 10,
            Family::G12 => 12,
        }
    }

    /// Number of real parameters of the canonical algebra.
    pub fn arity(self) -> usize {
        match self {
            Family::G5 | Family::G10 => 1,
            Family::G6 | Family::G12 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::G5 => "g5",
            Family::G6 => "g6",
            Family::G10 => "g10",
            Family::G12 => "g12",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g5" => Ok(Family::G5),
            "g6" => Ok(Family::G6),
            "g10" => Ok(Family::G10),
            "g12" => Ok(Family::G12),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// A family pattern satisfied by a set of constants, with its invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyMatch {
    pub family: Family,
    pub parameters: Vec<(&'static str, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyReport {
    pub matches: Vec<FamilyMatch>,
    /// Why no pattern matched; `None` when `matches` is nonempty.
    pub explanation: Option<String>,
}

impl FamilyReport {
    pub fn families(&self) -> Vec<Family> {
        self.matches.iter().map(|m| m.family).collect()
    }
}

/// Tests the commutator patterns of the four single-class families directly
/// on the constants. Linear conditions are compared against `tol · max|C|`,
/// quadratic ones against `tol · max|C|²`.
pub fn theorem41_family(l: &LieAlgebra3, tol: f64) -> FamilyReport {
    let s = l.max_abs();
    let zero = |v: f64| v.abs() <= tol * s;
    let zero2 = |v: f64| v.abs() <= tol * s * s;
    let [p, q, r] = l.c12;
    let [a13, b13, c13] = l.c13;
    let [a23, b23, c23] = l.c23;
    let mut matches = Vec::new();

    let g5 = zero(a13)
        && zero(c13)
        && zero(b23)
        && zero(c23)
        && zero(a23 - b13)
        && !zero(r)
        && zero2(p * b13)
        && zero2(q * b13);
    if g5 {
        matches.push(FamilyMatch {
            family: Family::G5,
            parameters: vec![("theta3", r)],
        });
    }

    let g6 = zero(r)
        && zero(c13)
        && zero(c23)
        && zero(a23 - b13)
        && zero(b23 - a13)
        && !zero(a13)
        && zero2(q * b13 - a13 * p)
        && zero2(p * b13 - a13 * q);
    if g6 {
        matches.push(FamilyMatch {
            family: Family::G6,
            parameters: vec![("theta_star3", -2.0 * a13)],
        });
    }

    let g10 = zero(r)
        && zero(c13)
        && zero(c23)
        && zero(b23 + a13)
        && (!zero(b13 - a23) || !zero(a13))
        && zero2(p * a13 + q * a23)
        && zero2(p * b13 - q * a13);
    if g10 {
        matches.push(FamilyMatch {
            family: Family::G10,
            parameters: vec![("c13_1", a13), ("c13_2", b13), ("c23_1", a23)],
        });
    }

    let g12 = zero(r)
        && zero(a13)
        && zero(b23)
        && zero(a23 - b13)
        && (!zero(c13) || !zero(c23))
        && zero2((p - c23) * b13)
        && zero2((q + c13) * b13)
        && zero2((p - c23) * c13 + (q + c13) * c23);
    if g12 {
        matches.push(FamilyMatch {
            family: Family::G12,
            parameters: vec![("omega1", c23), ("omega2", c13)],
        });
    }

    let explanation = matches.is_empty().then(|| {
        if s == 0.0 {
            "abelian algebra: the structure is in G0".to_string()
        } else {
            "constants fit none of the G5, G6, G10, G12 patterns: the structure \
             lies in a direct sum of classes"
                .to_string()
        }
    });
    FamilyReport {
        matches,
        explanation,
    }
}

fn degenerate(family: Family, reason: &str) -> Error {
    Error::DegenerateParameters {
        family: family.name(),
        reason: reason.to_string(),
    }
}

/// The canonical algebra of a family:
/// `g5(α)`: `[E₁,E₂] = αE₃`;
/// `g6(α, β)`: `[E₁,E₃] = αE₁ + βE₂`, `[E₂,E₃] = βE₁ + αE₂`;
/// `g10(α)`: `[E₁,E₃] = αE₁`, `[E₂,E₃] = −αE₂`;
/// `g12(α, β)`: `[E₁,E₂] = αE₁ + βE₂`, `[E₁,E₃] = −βE₃`, `[E₂,E₃] = αE₃`.
pub fn canonical_family(family: Family, params: &[f64]) -> Result<LieAlgebra3> {
    if params.len() != family.arity() {
        return Err(Error::Validation(format!(
            "lie3: {family} takes {} parameter(s), got {}",
            family.arity(),
            params.len()
        )));
    }
    if params.iter().any(|v| !v.is_finite()) {
        return Err(degenerate(family, "parameters must be finite"));
    }
    let alpha = params[0];
    let beta = params.get(1).copied().unwrap_or(0.0);
    if alpha == 0.0 {
        return Err(degenerate(family, "alpha must be nonzero"));
    }
    if family.arity() == 2 && beta == 0.0 {
        return Err(degenerate(family, "beta must be nonzero"));
    }
    Ok(match family {
        Family::G5 => LieAlgebra3::new([0.0, 0.0, alpha], [0.0; 3], [0.0; 3]),
        Family::G6 => LieAlgebra3::new([0.0; 3], [alpha, beta, 0.0], [beta, alpha, 0.0]),
        Family::G10 => LieAlgebra3::new([0.0; 3], [alpha, 0.0, 0.0], [0.0, -alpha, 0.0]),
        Family::G12 => LieAlgebra3::new([alpha, beta, 0.0], [0.0, 0.0, -beta], [0.0, 0.0, alpha]),
    })
}

/// `N(x, y) = φ²[x,y] + [φx,φy] − φ[φx,y] − φ[x,φy]` on basis pairs.
pub fn nijenhuis(l: &LieAlgebra3) -> [[Vector3<f64>; 3]; 3] {
    let e = |i| Vector3::ith(i, 1.0);
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (x, y) = (e(i), e(j));
            phi(phi(l.bracket(&x, &y))) + l.bracket(&phi(x), &phi(y))
                - phi(l.bracket(&phi(x), &y))
                - phi(l.bracket(&x, &phi(y)))
        })
    })
}

/// Max-abs of `N(x, y) − 2dη(x, y)ξ`, with `dη` taken from the structure tensor.
pub fn nijenhuis_residual(l: &LieAlgebra3) -> Result<f64> {
    let forms = derived_forms(&structure_tensor(l)?);
    let n = nijenhuis(l);
    let mut r = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let mut v = n[i][j];
            v[2] -= 2.0 * forms.d_eta[(i, j)];
            r = r.max(v.amax());
        }
    }
    Ok(r)
}

/// Normality through the Nijenhuis torsion, relative to `tol · max|C|`.
pub fn nijenhuis_normality(l: &LieAlgebra3, tol: f64) -> Result<bool> {
    Ok(nijenhuis_residual(l)? <= tol * l.max_abs())
}

fn nonzero_uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let v: f64 = rng.random_range(0.25..=2.0);
    if rng.random_bool(0.5) {
        v
    } else {
        -v
    }
}

/// A random algebra inside the commutator pattern of `family`, covering each
/// sub-case of the pattern's constraints.
pub fn random_pattern_algebra<R: Rng + ?Sized>(family: Family, rng: &mut R) -> LieAlgebra3 {
    let u = |rng: &mut R| rng.random_range(-2.0..=2.0);
    let scale = nonzero_uniform(rng);
    let l = match family {
        Family::G5 => {
            let r = nonzero_uniform(rng);
            if rng.random_bool(0.5) {
                let gamma = nonzero_uniform(rng);
                LieAlgebra3::new([0.0, 0.0, r], [0.0, gamma, 0.0], [gamma, 0.0, 0.0])
            } else {
                LieAlgebra3::new([u(rng), u(rng), r], [0.0; 3], [0.0; 3])
            }
        }
        Family::G6 => {
            let a = nonzero_uniform(rng);
            if rng.random_bool(0.5) {
                let b = u(rng);
                LieAlgebra3::new([0.0; 3], [a, b, 0.0], [b, a, 0.0])
            } else {
                let b = if rng.random_bool(0.5) { a } else { -a };
                let q = u(rng);
                let p = q * b / a;
                LieAlgebra3::new([p, q, 0.0], [a, b, 0.0], [b, a, 0.0])
            }
        }
        Family::G10 => {
            let (a, b) = (u(rng), nonzero_uniform(rng));
            if rng.random_bool(0.5) {
                let c = b + nonzero_uniform(rng);
                LieAlgebra3::new([0.0; 3], [a, b, 0.0], [c, -a, 0.0])
            } else {
                let a = nonzero_uniform(rng);
                let c = -a * a / b;
                let t = u(rng);
                LieAlgebra3::new([t * a, t * b, 0.0], [a, b, 0.0], [c, -a, 0.0])
            }
        }
        Family::G12 => {
            let (s, t) = (nonzero_uniform(rng), nonzero_uniform(rng));
            if rng.random_bool(0.5) {
                let p = u(rng);
                LieAlgebra3::new([p, -p * s / t, 0.0], [0.0, 0.0, s], [0.0, 0.0, t])
            } else {
                let b = nonzero_uniform(rng);
                LieAlgebra3::new([t, -s, 0.0], [0.0, b, s], [b, 0.0, t])
            }
        }
    };
    scaled(&l, scale)
}

fn scaled(l: &LieAlgebra3, s: f64) -> LieAlgebra3 {
    let m = |v: [f64; 3]| v.map(|x| x * s);
    LieAlgebra3::new(m(l.c12), m(l.c13), m(l.c23))
}

const MAX_SOLVED_CONSTANT: f64 = 10.0;

/// A random algebra satisfying the Jacobi identity with no pattern imposed:
/// `c12` and `c13` are drawn freely and `c23` solves the (affine) Jacobi
/// equations. Draws whose system is singular, inconsistent, or whose solved
/// constants exceed 10 in magnitude are rejected.
pub fn random_jacobi_algebra<R: Rng + ?Sized>(rng: &mut R) -> LieAlgebra3 {
    loop {
        let mut draw = || rng.random_range(-2.0..=2.0);
        let c12 = [draw(), draw(), draw()];
        let c13 = [draw(), draw(), draw()];
        let base = LieAlgebra3::new(c12, c13, [0.0; 3]).jacobi_vector();
        let mut m = Matrix3::zeros();
        for col in 0..3 {
            let mut c23 = [0.0; 3];
            c23[col] = 1.0;
            let v = LieAlgebra3::new(c12, c13, c23).jacobi_vector() - base;
            m.set_column(col, &v);
        }
        let Some(inv) = m.try_inverse() else { continue };
        let c23 = inv * (-base);
        if c23.amax() > MAX_SOLVED_CONSTANT {
            continue;
        }
        let l = LieAlgebra3::new(c12, c13, [c23[0], c23[1], c23[2]]);
        if l.check_jacobi() {
            return l;
        }
    }
}
