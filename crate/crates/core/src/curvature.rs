//! Levi-Civita connection and curvature of a left-invariant metric on a
//! 3-dimensional Lie group.
//!
//! Conventions: `R(X,Y)Z = ∇ₓ∇_YZ − ∇_Y∇ₓZ − ∇_{[X,Y]}Z` and
//! `Ric(Y,Z) = Σᵢ εᵢ g(R(Eᵢ,Y)Z, Eᵢ)`.

use std::fmt;

use nalgebra::{Matrix2, Matrix3, Vector2};

use crate::lie3::LieAlgebra3;
use crate::Result;

pub const SIGNS: [f64; 3] = [1.0, -1.0, 1.0];

/// `∇_{Eᵢ}Eⱼ = Γ_ij^k E_k`, stored as `gamma[i][j][k]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionCoefficients {
    pub gamma: [[[f64; 3]; 3]; 3],
}

impl ConnectionCoefficients {
    /// Matrix of `∇_{Eᵢ}` acting on coefficient vectors.
    pub fn operator(&self, i: usize) -> Matrix3<f64> {
        Matrix3::from_fn(|k, j| self.gamma[i][j][k])
    }

    pub fn max_abs(&self) -> f64 {
        self.gamma
            .iter()
            .flatten()
            .flatten()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Max-abs of `∇ₓy − ∇_yx − [x,y]` on basis pairs.
    pub fn torsion_residual(&self, l: &LieAlgebra3) -> f64 {
        let mut r = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let v = self.gamma[i][j][k] - self.gamma[j][i][k] - l.c(i, j, k);
                    r = r.max(v.abs());
                }
            }
        }
        r
    }

    /// Max-abs of `g(∇ₓy, z) + g(y, ∇ₓz)` on basis triples.
    pub fn metric_residual(&self) -> f64 {
        let mut r = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let v = self.gamma[i][j][k] * SIGNS[k] + self.gamma[i][k][j] * SIGNS[j];
                    r = r.max(v.abs());
                }
            }
        }
        r
    }
}

/// Koszul formula `2g(∇ₓy, z) = g([x,y],z) + g([z,x],y) + g([z,y],x)`.
pub fn levi_civita(l: &LieAlgebra3) -> Result<ConnectionCoefficients> {
    l.require_jacobi()?;
    let mut gamma = [[[0.0; 3]; 3]; 3];
    for (i, gi) in gamma.iter_mut().enumerate() {
        for (j, gij) in gi.iter_mut().enumerate() {
            for (k, v) in gij.iter_mut().enumerate() {
                let lower = 0.5
                    * (l.c(i, j, k) * SIGNS[k] + l.c(k, i, j) * SIGNS[j] + l.c(k, j, i) * SIGNS[i]);
                *v = lower * SIGNS[k];
            }
        }
    }
    Ok(ConnectionCoefficients { gamma })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EinsteinKind {
    Flat,
    Einstein,
    EtaEinstein,
    RicProportionalEtaEta,
    Generic,
}

impl EinsteinKind {
    pub fn name(self) -> &'static str {
        match self {
            EinsteinKind::Flat => "flat",
            EinsteinKind::Einstein => "einstein",
            EinsteinKind::EtaEinstein => "eta_einstein",
            EinsteinKind::RicProportionalEtaEta => "ric_proportional_eta_eta",
            EinsteinKind::Generic => "generic",
        }
    }
}

impl fmt::Display for EinsteinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Least-squares fit `Ric ≈ a·g + b·η⊗η` over the six independent components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EinsteinFit {
    pub kind: EinsteinKind,
    pub a: f64,
    pub b: f64,
    /// Max-abs of `Ric − a·g − b·η⊗η`.
    pub residual: f64,
}

pub const EINSTEIN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureData {
    /// `riemann[i][j][k][l]`: component `l` of `R(Eᵢ,Eⱼ)E_k`.
    pub riemann: [[[[f64; 3]; 3]; 3]; 3],
    pub ricci: Matrix3<f64>,
    pub scalar: f64,
    pub einstein: EinsteinFit,
}

impl CurvatureData {
    pub fn max_abs_riemann(&self) -> f64 {
        self.riemann
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Max-abs of `R(X,Y)Z + R(Y,Z)X + R(Z,X)Y`.
    pub fn bianchi_residual(&self) -> f64 {
        let r = &self.riemann;
        let mut out = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let v = r[i][j][k][l] + r[j][k][i][l] + r[k][i][j][l];
                        out = out.max(v.abs());
                    }
                }
            }
        }
        out
    }

    /// Max-abs of `R(X,Y)Z + R(Y,X)Z`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let r = &self.riemann;
        let mut out = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        out = out.max((r[i][j][k][l] + r[j][i][k][l]).abs());
                    }
                }
            }
        }
        out
    }
}

/// Riemann, Ricci and scalar curvature, plus the Einstein-type fit.
pub fn curvature(l: &LieAlgebra3, conn: &ConnectionCoefficients) -> CurvatureData {
    let ops: [Matrix3<f64>; 3] = std::array::from_fn(|i| conn.operator(i));
    let mut riemann = [[[[0.0; 3]; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut r = ops[i] * ops[j] - ops[j] * ops[i];
            for (m, op) in ops.iter().enumerate() {
                r -= op * l.c(i, j, m);
            }
            for k in 0..3 {
                for q in 0..3 {
                    riemann[i][j][k][q] = r[(q, k)];
                }
            }
        }
    }
    let ricci = Matrix3::from_fn(|y, z| (0..3).map(|i| riemann[i][y][z][i]).sum::<f64>());
    let scalar = (0..3).map(|j| SIGNS[j] * ricci[(j, j)]).sum();
    let scale = conn.max_abs().powi(2).max(l.max_abs() * conn.max_abs());
    let mut data = CurvatureData {
        riemann,
        ricci,
        scalar,
        einstein: EinsteinFit {
            kind: EinsteinKind::Flat,
            a: 0.0,
            b: 0.0,
            residual: 0.0,
        },
    };
    data.einstein = fit_einstein(&ricci, data.max_abs_riemann(), scale);
    data
}

/// Fits `Ric ≈ a·g + b·η⊗η`. `scale` sets the size below which a quantity
/// counts as zero (`EINSTEIN_TOL · scale`).
pub fn fit_einstein(ricci: &Matrix3<f64>, max_riemann: f64, scale: f64) -> EinsteinFit {
    const IDX: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)];
    let gv = |i: usize, j: usize| if i == j { SIGNS[i] } else { 0.0 };
    let ev = |i: usize, j: usize| if i == 2 && j == 2 { 1.0 } else { 0.0 };
    let mut ata = Matrix2::zeros();
    let mut atb = Vector2::zeros();
    for &(i, j) in &IDX {
        let row = Vector2::new(gv(i, j), ev(i, j));
        ata += row * row.transpose();
        atb += row * ricci[(i, j)];
    }
    let sol = ata.try_inverse().expect("g and η⊗η are independent") * atb;
    let (a, b) = (sol[0], sol[1]);
    let residual = IDX
        .iter()
        .map(|&(i, j)| (ricci[(i, j)] - a * gv(i, j) - b * ev(i, j)).abs())
        .fold(0.0f64, f64::max);
    let eps = EINSTEIN_TOL * scale;
    let kind = if max_riemann <= eps {
        EinsteinKind::Flat
    } else if residual > eps {
        EinsteinKind::Generic
    } else if b.abs() <= eps {
        EinsteinKind::Einstein
    } else if a.abs() <= eps {
        EinsteinKind::RicProportionalEtaEta
    } else {
        EinsteinKind::EtaEinstein
    };
    EinsteinFit {
        kind,
        a,
        b,
        residual,
    }
}
