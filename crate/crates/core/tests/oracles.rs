//! Library results against independently coded references.
#![allow(clippy::needless_range_loop)]

use apc_core::curvature::{curvature, levi_civita};
use apc_core::decomposition::{project_all, projection_ranks};
use apc_core::lie3::{
    random_jacobi_algebra, random_pattern_algebra, structure_tensor, structure_tensor_closed_form,
    Family, LieAlgebra3,
};
use apc_core::linalg::numerical_rank;
use apc_core::matrix_groups::mat_exp;
use apc_core::sampling::{random_f_member, trial_rng};
use apc_core::ApcSpace;
use nalgebra::{DMatrix, Matrix3};
use rand::Rng;

const EPS: [f64; 3] = [1.0, -1.0, 1.0];

/// `e^A = P e^D P⁻¹` for `A = P D P⁻¹` with real distinct eigenvalues.
#[test]
fn mat_exp_matches_eigendecomposition() {
    let mut rng = trial_rng(50, 0);
    let mut tested = 0;
    while tested < 200 {
        let p = Matrix3::from_fn(|_, _| rng.random_range(-1.0..1.0));
        let Some(p_inv) = p.try_inverse() else {
            continue;
        };
        if p_inv.amax() > 50.0 {
            continue;
        }
        let ev: [f64; 3] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        let a = p * Matrix3::from_diagonal(&ev.into()) * p_inv;
        let oracle = p * Matrix3::from_diagonal(&ev.map(f64::exp).into()) * p_inv;
        let got = mat_exp(&a).mat;
        assert!(
            (got - oracle).amax() <= 1e-10 * oracle.amax().max(1.0),
            "{a}"
        );
        tested += 1;
    }
}

/// Full Riemann tensor from the index expansion
/// `R_ijk^l = Σ_m Γ_jk^m Γ_im^l − Γ_ik^m Γ_jm^l − C_ij^m Γ_mk^l`.
fn riemann_oracle(l: &LieAlgebra3) -> [[[[f64; 3]; 3]; 3]; 3] {
    let cl = |i: usize, j: usize, k: usize| l.c(i, j, k) * EPS[k];
    let gamma =
        |i: usize, j: usize, k: usize| EPS[k] * 0.5 * (cl(i, j, k) + cl(k, i, j) + cl(k, j, i));
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for q in 0..3 {
                    r[i][j][k][q] = (0..3)
                        .map(|m| {
                            gamma(j, k, m) * gamma(i, m, q)
                                - gamma(i, k, m) * gamma(j, m, q)
                                - l.c(i, j, m) * gamma(m, k, q)
                        })
                        .sum();
                }
            }
        }
    }
    r
}

#[test]
fn curvature_matches_index_expansion() {
    let mut rng = trial_rng(51, 0);
    for _ in 0..300 {
        let l = random_jacobi_algebra(&mut rng);
        let d = curvature(&l, &levi_civita(&l).unwrap());
        let oracle = riemann_oracle(&l);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for q in 0..3 {
                        let diff = (d.riemann[i][j][k][q] - oracle[i][j][k][q]).abs();
                        assert!(diff < 1e-10, "diff {diff:e} scale {:e}", l.max_abs());
                    }
                }
            }
        }
        let scal: f64 = (0..3).map(|j| EPS[j] * d.ricci[(j, j)]).sum();
        assert_eq!(scal, d.scalar);
    }
}

/// `F_ijk = g(∇ᵢ(φEⱼ) − φ∇ᵢEⱼ, E_k)` through the Levi-Civita connection.
#[test]
fn structure_tensor_matches_covariant_derivative_of_phi() {
    let mut rng = trial_rng(52, 0);
    for t in 0..1000 {
        let l = if t % 5 == 4 {
            random_jacobi_algebra(&mut rng)
        } else {
            random_pattern_algebra(Family::ALL[t % 5], &mut rng)
        };
        let conn = levi_civita(&l).unwrap();
        let f = structure_tensor(&l).unwrap();
        let closed = structure_tensor_closed_form(&l).unwrap();
        assert!(f.max_abs_diff(&closed) <= 1e-12 * l.max_abs());
        let phi = |v: [f64; 3]| [v[1], v[0], 0.0];
        for i in 0..3 {
            for j in 0..3 {
                let phi_ej = phi(std::array::from_fn(|m| if m == j { 1.0 } else { 0.0 }));
                let nabla_phi_ej: [f64; 3] =
                    std::array::from_fn(|k| (0..3).map(|m| phi_ej[m] * conn.gamma[i][m][k]).sum());
                let phi_nabla_ej = phi(conn.gamma[i][j]);
                for k in 0..3 {
                    let v = EPS[k] * (nabla_phi_ej[k] - phi_nabla_ej[k]);
                    assert!((f.get(i, j, k) - v).abs() <= 1e-12 * l.max_abs().max(1.0));
                }
            }
        }
    }
}

/// Rank of the span of many projected random tensors equals the operator rank.
#[test]
fn class_dimensions_by_sampled_span() {
    for n in 1..=3 {
        let s = ApcSpace::new(n).unwrap();
        let ranks = projection_ranks(n).unwrap();
        let d3 = s.dim().pow(3);
        let mut rng = trial_rng(53, n as u64);
        let samples = 2 * ranks.iter().max().unwrap() + 4;
        let mut stacks = vec![DMatrix::zeros(d3, samples); 12];
        for col in 0..samples {
            let p = project_all(&random_f_member(s, &mut rng)).unwrap();
            for (i, stack) in stacks.iter_mut().enumerate() {
                stack.set_column(
                    col,
                    &nalgebra::DVector::from_column_slice(p.part(i + 1).as_slice()),
                );
            }
        }
        for (i, stack) in stacks.iter().enumerate() {
            assert_eq!(numerical_rank(stack, 1e-9), ranks[i], "n={n} G{}", i + 1);
        }
    }
}
