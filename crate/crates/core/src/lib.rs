//! Classification of almost paracontact metric structures by their
//! structure tensor `F(x, y, z) = g((∇ₓφ)y, z)`.
//!
//! The crate decomposes a tensor into its twelve basic classes, evaluates the
//! characteristic geometric predicates, and for 3-dimensional Lie groups
//! computes the connection, curvature and closed-form group exponentials.

#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod curvature;
pub mod decomposition;
pub mod error;
pub mod lie3;
pub mod linalg;
pub mod matrix_groups;
pub mod paraunitary;
pub mod pipeline;
pub mod sampling;
pub mod space;
pub mod tensor;

pub use classify::{classify, derived_forms, Flags, GeometricReport, Predicates, RouteCheck};
pub use curvature::{curvature, levi_civita, ConnectionCoefficients, CurvatureData, EinsteinKind};
pub use decomposition::{
    lee_forms, project_all, project_all_with_tol, projection_ranks, ClassSet, LeeForms,
    ProjectionSet, DEFAULT_TOL,
};
pub use error::{Error, Result};
pub use lie3::{canonical_family, structure_tensor, Family, LieAlgebra3};
pub use matrix_groups::{adjoint, closed_form_exp, mat_exp, Branch, ExpParams, GroupElement};
pub use paraunitary::ParaunitaryElement;
pub use space::ApcSpace;
pub use tensor::Tensor3;
