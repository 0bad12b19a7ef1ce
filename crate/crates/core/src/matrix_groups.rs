//! Adjoint representations of the four families, the matrix exponential, and
//! the closed-form group elements `e^A` for every parameter branch.

use std::fmt;

use nalgebra::{DMatrix, Matrix3};
use rand::Rng;

use crate::lie3::{canonical_family, Family, LieAlgebra3};
use crate::linalg::expm;
use crate::{Error, Result};

/// Tolerance on the branch discriminants `c`, `β ∓ α`, `b ± a`, `bα − aβ`.
pub const BRANCH_TOL: f64 = 1e-12;

/// Matrices `Mᵢ` of `ad_{Eᵢ}`, with `Mᵢ[k][j] = C_ij^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjointData {
    pub m: [Matrix3<f64>; 3],
}

impl AdjointData {
    /// `A = a·M₁ + b·M₂ + c·M₃`.
    pub fn a_of(&self, a: f64, b: f64, c: f64) -> Matrix3<f64> {
        self.m[0] * a + self.m[1] * b + self.m[2] * c
    }

    /// Max-abs of `[Mᵢ, Mⱼ] − Σ_k C_ij^k M_k` over all pairs.
    pub fn homomorphism_residual(&self, l: &LieAlgebra3) -> f64 {
        let mut r = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let mut d = self.m[i] * self.m[j] - self.m[j] * self.m[i];
                for k in 0..3 {
                    d -= self.m[k] * l.c(i, j, k);
                }
                r = r.max(d.amax());
            }
        }
        r
    }
}

pub fn adjoint(l: &LieAlgebra3) -> Result<AdjointData> {
    l.require_jacobi()?;
    Ok(AdjointData {
        m: std::array::from_fn(|i| Matrix3::from_fn(|k, j| l.c(i, j, k))),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub mat: Matrix3<f64>,
}

impl GroupElement {
    /// `|det(e^A) − e^{tr A}| / e^{tr A}`.
    pub fn det_residual(&self, a: &Matrix3<f64>) -> f64 {
        let expected = a.trace().exp();
        (self.mat.determinant() - expected).abs() / expected
    }

    pub fn max_abs_diff(&self, other: &GroupElement) -> f64 {
        (self.mat - other.mat).amax()
    }
}

/// `e^A`. Nilpotent inputs (`A³ = 0`) use the finite series; other inputs go
/// through scaling and squaring.
pub fn mat_exp(a: &Matrix3<f64>) -> GroupElement {
    let a2 = a * a;
    let a3 = a2 * a;
    let s = a.amax().max(1.0);
    if a3.amax() <= 1e-15 * s * s * s {
        return GroupElement {
            mat: Matrix3::identity() + a + a2 * 0.5,
        };
    }
    let d = expm(&DMatrix::from_iterator(3, 3, a.iter().copied()));
    GroupElement {
        mat: Matrix3::from_iterator(d.iter().copied()),
    }
}

/// Parameters of a family element: algebra constants `α, β` and the
/// coordinates `a, b, c` of `X = aE₁ + bE₂ + cE₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpParams {
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl ExpParams {
    pub fn algebra(&self, family: Family) -> Result<LieAlgebra3> {
        let params = [self.alpha, self.beta];
        canonical_family(family, &params[..family.arity()])
    }
}

/// The case splits of the closed-form exponentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    G5,
    /// `c ≠ 0`, `β = α`, `b = −a`.
    G6EqualAntidiagonal,
    /// `c ≠ 0`, `β = α`, `b ≠ −a`.
    G6Equal,
    /// `c ≠ 0`, `β = −α`, `b = a`.
    G6OppositeDiagonal,
    /// `c ≠ 0`, `β = −α`, `b ≠ a`.
    G6Opposite,
    /// `c ≠ 0`, `β ≠ ±α`.
    G6Generic,
    /// `c = 0`.
    G6Translation,
    /// `c ≠ 0`.
    G10Scaling,
    /// `c = 0`.
    G10Translation,
    /// `bα − aβ ≠ 0`.
    G12Regular,
    /// `bα − aβ = 0`.
    G12Nilpotent,
}

impl Branch {
    pub const ALL: [Branch; 11] = [
        Branch::G5,
        Branch::G6EqualAntidiagonal,
        Branch::G6Equal,
        Branch::G6OppositeDiagonal,
        Branch::G6Opposite,
        Branch::G6Generic,
        Branch::G6Translation,
        Branch::G10Scaling,
        Branch::G10Translation,
        Branch::G12Regular,
        Branch::G12Nilpotent,
    ];

    pub fn family(self) -> Family {
        use Branch::*;
        match self {
            G5 => Family::G5,
            G6EqualAntidiagonal | G6Equal | G6OppositeDiagonal | G6Opposite | G6Generic
            | G6Translation => Family::G6,
            G10Scaling | G10Translation => Family::G10,
            G12Regular | G12Nilpotent => Family::G12,
        }
    }

    pub fn condition(self) -> &'static str {
        use Branch::*;
        match self {
            G5 => "all a, b, c",
            G6EqualAntidiagonal => "c != 0, beta = alpha, b = -a",
            G6Equal => "c != 0, beta = alpha, b != -a",
            G6OppositeDiagonal => "c != 0, beta = -alpha, b = a",
            G6Opposite => "c != 0, beta = -alpha, b != a",
            G6Generic => "c != 0, beta != alpha, beta != -alpha",
            G6Translation | G10Translation => "c = 0",
            G10Scaling => "c != 0",
            G12Regular => "b*alpha - a*beta != 0",
            G12Nilpotent => "b*alpha - a*beta = 0",
        }
    }

    /// Draws parameters satisfying this branch's condition.
    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> ExpParams {
        use Branch::*;
        let mut nz = |lo: f64, hi: f64| {
            let v: f64 = rng.random_range(lo..=hi);
            if rng.random_bool(0.5) {
                v
            } else {
                -v
            }
        };
        let alpha = nz(0.25, 1.5);
        let mut beta = nz(0.25, 1.5);
        let a = nz(0.0, 1.0);
        let mut b = nz(0.0, 1.0);
        let mut c = nz(0.1, 1.0);
        match self {
            G5 | G10Scaling | G12Regular => {}
            G6EqualAntidiagonal => {
                beta = alpha;
                b = -a;
            }
            G6Equal => {
                beta = alpha;
                b = -a + nz(0.1, 1.0);
            }
            G6OppositeDiagonal => {
                beta = -alpha;
                b = a;
            }
            G6Opposite => {
                beta = -alpha;
                b = a + nz(0.1, 1.0);
            }
            G6Generic => {
                while (beta.abs() - alpha.abs()).abs() < 0.05 {
                    beta = nz(0.25, 1.5);
                }
            }
            G6Translation | G10Translation => c = 0.0,
            G12Nilpotent => b = a * beta / alpha,
        }
        if self == G12Regular {
            while (b * alpha - a * beta).abs() < 0.05 {
                b = nz(0.0, 1.0);
            }
        }
        ExpParams {
            alpha,
            beta,
            a,
            b,
            c,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.family(), self.condition())
    }
}

/// Picks the branch of `family` whose condition `p` satisfies.
pub fn select_branch(family: Family, p: &ExpParams) -> Result<Branch> {
    let zero = |v: f64| v.abs() <= BRANCH_TOL;
    let branch = match family {
        Family::G5 => Branch::G5,
        Family::G6 => {
            if zero(p.c) {
                Branch::G6Translation
            } else if zero(p.beta - p.alpha) {
                if zero(p.b + p.a) {
                    Branch::G6EqualAntidiagonal
                } else {
                    Branch::G6Equal
                }
            } else if zero(p.beta + p.alpha) {
                if zero(p.b - p.a) {
                    Branch::G6OppositeDiagonal
                } else {
                    Branch::G6Opposite
                }
            } else {
                Branch::G6Generic
            }
        }
        Family::G10 => {
            if zero(p.c) {
                Branch::G10Translation
            } else {
                Branch::G10Scaling
            }
        }
        Family::G12 => {
            if zero(p.b * p.alpha - p.a * p.beta) {
                Branch::G12Nilpotent
            } else {
                Branch::G12Regular
            }
        }
    };
    if [p.alpha, p.beta, p.a, p.b, p.c]
        .iter()
        .any(|v| !v.is_finite())
    {
        return Err(Error::NoBranch(format!("{family}: non-finite parameters")));
    }
    Ok(branch)
}

/// Evaluates the closed form of `branch` at `p` without checking its condition.
pub fn closed_form_branch(branch: Branch, p: &ExpParams) -> Matrix3<f64> {
    use Branch::*;
    let ExpParams {
        alpha: al,
        beta: be,
        a,
        b,
        c,
    } = *p;
    match branch {
        G5 => Matrix3::new(1.0, 0.0, 0.0, 0.0, 1.0, 0.0, -b * al, a * al, 1.0),
        G6EqualAntidiagonal | G6Equal => {
            let e = (-2.0 * c * al).exp();
            let t = if branch == G6Equal {
                (a + b) * (1.0 - e) / (2.0 * c)
            } else {
                0.0
            };
            Matrix3::new(
                (1.0 + e) / 2.0,
                (-1.0 + e) / 2.0,
                t,
                (-1.0 + e) / 2.0,
                (1.0 + e) / 2.0,
                t,
                0.0,
                0.0,
                1.0,
            )
        }
        G6OppositeDiagonal | G6Opposite => {
            let e = (-2.0 * c * al).exp();
            let t = if branch == G6Opposite {
                (a - b) * (1.0 - e) / (2.0 * c)
            } else {
                0.0
            };
            Matrix3::new(
                (1.0 + e) / 2.0,
                (1.0 - e) / 2.0,
                t,
                (1.0 - e) / 2.0,
                (1.0 + e) / 2.0,
                -t,
                0.0,
                0.0,
                1.0,
            )
        }
        G6Generic => {
            let ea = (-c * al).exp();
            let (ch, sh) = ((c * be).cosh(), (c * be).sinh());
            Matrix3::new(
                ea * ch,
                -ea * sh,
                (a * (1.0 - ea * ch) + b * ea * sh) / c,
                -ea * sh,
                ea * ch,
                (b * (1.0 - ea * ch) + a * ea * sh) / c,
                0.0,
                0.0,
                1.0,
            )
        }
        G6Translation => Matrix3::new(
            1.0,
            0.0,
            a * al + b * be,
            0.0,
            1.0,
            b * al + a * be,
            0.0,
            0.0,
            1.0,
        ),
        G10Scaling => {
            let (em, ep) = ((-c * al).exp(), (c * al).exp());
            Matrix3::new(
                em,
                0.0,
                a * (1.0 - em) / c,
                0.0,
                ep,
                b * (1.0 - ep) / c,
                0.0,
                0.0,
                1.0,
            )
        }
        G10Translation => Matrix3::new(1.0, 0.0, a * al, 0.0, 1.0, -b * al, 0.0, 0.0, 1.0),
        G12Regular => {
            let d = a * be - b * al;
            let (ed, emd) = (d.exp(), (-d).exp());
            Matrix3::new(
                (a * be - b * al * ed) / d,
                a * al * (ed - 1.0) / d,
                0.0,
                b * be * (1.0 - ed) / d,
                (-b * al + a * be * ed) / d,
                0.0,
                c * be * (1.0 - emd) / d,
                c * al * (emd - 1.0) / d,
                emd,
            )
        }
        G12Nilpotent => Matrix3::new(
            1.0 - b * al,
            a * al,
            0.0,
            -b * be,
            1.0 + a * be,
            0.0,
            c * be,
            -c * al,
            1.0,
        ),
    }
}

/// The closed-form `e^A` for `family` at `p`, together with the branch used.
pub fn closed_form_exp(family: Family, p: &ExpParams) -> Result<(Branch, GroupElement)> {
    p.algebra(family)?;
    let branch = select_branch(family, p)?;
    Ok((
        branch,
        GroupElement {
            mat: closed_form_branch(branch, p),
        },
    ))
}

/// Closed form against the numerical exponential of `A(a, b, c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpComparison {
    pub family: Family,
    pub params: ExpParams,
    pub branch: Branch,
    pub a_matrix: Matrix3<f64>,
    pub numeric: GroupElement,
    pub closed_form: GroupElement,
    pub deviation: f64,
}

pub fn compare_exp(family: Family, p: &ExpParams) -> Result<ExpComparison> {
    let l = p.algebra(family)?;
    let a_matrix = adjoint(&l)?.a_of(p.a, p.b, p.c);
    let numeric = mat_exp(&a_matrix);
    let (branch, closed_form) = closed_form_exp(family, p)?;
    Ok(ExpComparison {
        family,
        params: *p,
        branch,
        a_matrix,
        numeric,
        closed_form,
        deviation: numeric.max_abs_diff(&closed_form),
    })
}
