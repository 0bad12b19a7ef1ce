//! Derived forms of a structure tensor and the characteristic predicates.
//!
//! Every predicate is evaluated twice: once from the defining identity and
//! once from the class label. [`Predicates`] keeps both so callers can check
//! that they agree.

use nalgebra::DMatrix;

use crate::decomposition::{g5_model, project_all_with_tol, ClassSet, ProjectionSet};
use crate::space::ApcSpace;
use crate::tensor::Tensor3;
use crate::Result;

/// Forms built from `F` over the adapted basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedForms {
    /// `(∇_{e_i} η) e_j = −F(e_i, φe_j, ξ)`.
    pub nabla_eta: DMatrix<f64>,
    /// `dη(x, y) = ½((∇ₓη)y − (∇_yη)x)`.
    pub d_eta: DMatrix<f64>,
    /// `(L_ξ g)(x, y) = (∇ₓη)y + (∇_yη)x`.
    pub lie_xi_g: DMatrix<f64>,
    /// `dΦ(x, y, z) = 𝔖F(x, y, z)`.
    pub d_phi: Tensor3,
}

pub fn derived_forms(f: &Tensor3) -> DerivedForms {
    let s = f.space();
    let d = s.dim();
    let xi = Some(s.xi());
    let nabla_eta = DMatrix::from_fn(d, d, |i, j| -f.at(Some(i), s.phi(j), xi));
    let d_eta = (&nabla_eta - nabla_eta.transpose()) * 0.5;
    let lie_xi_g = &nabla_eta + nabla_eta.transpose();
    DerivedForms {
        nabla_eta,
        d_eta,
        lie_xi_g,
        d_phi: f.cyclic_sum(),
    }
}

/// `Φ(x, y) = g(φx, y)` as a matrix.
pub fn fundamental_form(s: ApcSpace) -> DMatrix<f64> {
    DMatrix::from_fn(s.dim(), s.dim(), |i, j| s.fundamental_form(i, j))
}

/// Max-abs of `F(x, y, φz) + F(φx, y, z) + η(z)F(x, φy, ξ)` over basis triples.
pub fn normality_residual(f: &Tensor3) -> f64 {
    let s = f.space();
    let d = s.dim();
    let xi = Some(s.xi());
    let mut r = 0.0f64;
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let v = f.at(Some(x), Some(y), s.phi(z))
                    + f.at(s.phi(x), Some(y), Some(z))
                    + s.eta(z) * f.at(Some(x), s.phi(y), xi);
                r = r.max(v.abs());
            }
        }
    }
    r
}

/// A predicate evaluated by its defining identity and by class membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RouteCheck {
    pub identity: bool,
    pub by_class: bool,
}

impl RouteCheck {
    pub fn agree(&self) -> bool {
        self.identity == self.by_class
    }
}

/// Both routes of every predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Predicates {
    pub normal: RouteCheck,
    pub paracontact: RouteCheck,
    pub para_sasakian: RouteCheck,
    pub k_paracontact: RouteCheck,
    pub quasi_para_sasakian: RouteCheck,
    pub xi_killing: RouteCheck,
    pub g5bar: RouteCheck,
}

impl Predicates {
    pub const NAMES: [&'static str; 7] = [
        "normal",
        "paracontact",
        "para_sasakian",
        "k_paracontact",
        "quasi_para_sasakian",
        "xi_killing",
        "g5bar",
    ];

    pub fn entries(&self) -> [(&'static str, RouteCheck); 7] {
        let v = [
            self.normal,
            self.paracontact,
            self.para_sasakian,
            self.k_paracontact,
            self.quasi_para_sasakian,
            self.xi_killing,
            self.g5bar,
        ];
        std::array::from_fn(|i| (Self::NAMES[i], v[i]))
    }

    /// Names of predicates whose two routes disagree.
    pub fn disagreements(&self) -> Vec<&'static str> {
        self.entries()
            .iter()
            .filter(|(_, r)| !r.agree())
            .map(|(name, _)| *name)
            .collect()
    }

    /// Identity-route values.
    pub fn flags(&self) -> Flags {
        Flags {
            normal: self.normal.identity,
            paracontact: self.paracontact.identity,
            para_sasakian: self.para_sasakian.identity,
            k_paracontact: self.k_paracontact.identity,
            quasi_para_sasakian: self.quasi_para_sasakian.identity,
            xi_killing: self.xi_killing.identity,
            g5bar: self.g5bar.identity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    pub normal: bool,
    pub paracontact: bool,
    pub para_sasakian: bool,
    pub k_paracontact: bool,
    pub quasi_para_sasakian: bool,
    pub xi_killing: bool,
    pub g5bar: bool,
}

impl Flags {
    pub fn entries(&self) -> [(&'static str, bool); 7] {
        let v = [
            self.normal,
            self.paracontact,
            self.para_sasakian,
            self.k_paracontact,
            self.quasi_para_sasakian,
            self.xi_killing,
            self.g5bar,
        ];
        std::array::from_fn(|i| (Predicates::NAMES[i], v[i]))
    }
}

/// The constant of an α-para-Sasakian (pure `G5`) or α-para-Kenmotsu
/// (pure `G6`) structure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    ParaSasakian(f64),
    ParaKenmotsu(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricReport {
    pub forms: DerivedForms,
    pub projections: ProjectionSet,
    pub predicates: Predicates,
    pub alpha: Option<Alpha>,
}

impl GeometricReport {
    pub fn label(&self) -> ClassSet {
        self.projections.label
    }

    pub fn flags(&self) -> Flags {
        self.predicates.flags()
    }
}

fn set(indices: &[usize]) -> ClassSet {
    ClassSet::from_indices(indices).expect("valid class indices")
}

/// Classifies `f` and evaluates every predicate by both routes.
///
/// Homogeneous conditions are tested against `tol · max|F|`; conditions with
/// an absolute target (`dη = Φ`, `θ(ξ) = 2n`) against `tol · max(max|F|, 1)`.
pub fn classify(f: &Tensor3, tol: f64) -> Result<GeometricReport> {
    let projections = project_all_with_tol(f, tol)?;
    let s = f.space();
    let n = s.n() as f64;
    let forms = derived_forms(f);
    let scale = projections.scale;
    let hom = tol * scale;
    let inhom = tol * scale.max(1.0);

    let label = projections.label;
    let theta_xi = projections.lee.theta_xi();
    let trace_is_2n = (theta_xi - 2.0 * n).abs() <= inhom;

    let normal_id = normality_residual(f) <= hom;
    let killing_id = forms.lie_xi_g.amax() <= hom;
    let closed_id = forms.d_phi.max_abs() <= hom;
    let d_eta_is_phi = (&forms.d_eta - fundamental_form(s)).amax() <= inhom;
    let paracontact_id = d_eta_is_phi && closed_id;
    let g5bar_id = f.max_abs_diff(&g5_model(s, 2.0 * n)) <= inhom;

    let has5 = label.contains(5);
    let normal_cls = label.is_subset(&set(&[1, 2, 5, 6, 7, 8]));
    let killing_cls = label.is_subset(&set(&[1, 2, 3, 4, 5, 8, 9, 11]));
    let g5bar_cls = label == set(&[5]) && trace_is_2n;
    let paracontact_cls = has5 && label.is_subset(&set(&[4, 5, 10])) && trace_is_2n;
    let k_paracontact_cls = has5 && label.is_subset(&set(&[4, 5])) && trace_is_2n;

    let predicates = Predicates {
        normal: RouteCheck {
            identity: normal_id,
            by_class: normal_cls,
        },
        paracontact: RouteCheck {
            identity: paracontact_id,
            by_class: paracontact_cls,
        },
        para_sasakian: RouteCheck {
            identity: normal_id && paracontact_id,
            by_class: g5bar_cls,
        },
        k_paracontact: RouteCheck {
            identity: paracontact_id && killing_id,
            by_class: k_paracontact_cls,
        },
        quasi_para_sasakian: RouteCheck {
            identity: normal_id && closed_id,
            by_class: label.is_subset(&set(&[5, 8])),
        },
        xi_killing: RouteCheck {
            identity: killing_id,
            by_class: killing_cls,
        },
        g5bar: RouteCheck {
            identity: g5bar_id,
            by_class: g5bar_cls,
        },
    };

    let alpha = if label == set(&[5]) {
        Some(Alpha::ParaSasakian(theta_xi / (2.0 * n)))
    } else if label == set(&[6]) {
        Some(Alpha::ParaKenmotsu(
            projections.lee.theta_star_xi() / (2.0 * n),
        ))
    } else {
        None
    };

    Ok(GeometricReport {
        forms,
        projections,
        predicates,
        alpha,
    })
}
