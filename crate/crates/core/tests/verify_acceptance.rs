//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
#![allow(clippy::needless_range_loop)]

use std::time::Instant;

use apc_core::classify::classify;
use apc_core::curvature::{curvature, levi_civita};
use apc_core::decomposition::{project_all, projection_ranks, ClassSet, DEFAULT_TOL};
use apc_core::lie3::{
    canonical_family, nijenhuis_normality, random_jacobi_algebra, random_pattern_algebra,
    structure_tensor, Family, LieAlgebra3,
};
use apc_core::matrix_groups::{closed_form_branch, compare_exp, Branch, ExpParams};
use apc_core::paraunitary::ParaunitaryElement;
use apc_core::sampling::{
    g5bar_member, random_class_set, random_f_member, random_mixture, trial_rng,
};
use apc_core::{ApcSpace, Tensor3};
use rand::Rng;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn verdict(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: ok,
        detail: detail.into(),
    }
}

/// Published subspace dimensions, as integer formulas in `n`.
fn published_dimensions(n: i64) -> [i64; 12] {
    [
        2 * (n - 1),
        (n - 1) * (n * n - 2),
        (n - 2) * (n - 1) * n / 3,
        2 * (n - 1) * n * (n + 1) / 3,
        1,
        1,
        n * n - 1,
        n * n - 1,
        n * (n - 1),
        n * (n + 1),
        n * (n - 1),
        2 * n,
    ]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for n in 1..=3usize {
        let ranks = projection_ranks(n).expect("supported n");
        let expected = published_dimensions(n as i64);
        for i in 0..12 {
            if ranks[i] as i64 != expected[i] {
                mismatches.push(format!(
                    "n={n} G{}: rank {} vs formula {}",
                    i + 1,
                    ranks[i],
                    expected[i]
                ));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let timing_ok = secs < 30.0;
    if mismatches.is_empty() {
        verdict(
            timing_ok,
            format!("all 36 ranks match the formulas ({secs:.2} s, limit 30 s)"),
        )
    } else {
        verdict(false, format!("{} ({secs:.2} s)", mismatches.join("; ")))
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut worst = [0.0f64; 3];
    for n in 1..=3 {
        let s = ApcSpace::new(n).unwrap();
        let mut rng = trial_rng(2, n as u64);
        for _ in 0..100 {
            let f = random_f_member(s, &mut rng);
            let scale = f.max_abs();
            let p = project_all(&f).unwrap();
            worst[0] = worst[0].max(p.sum().max_abs_diff(&f) / scale);
            for i in 1..=12 {
                let again = project_all(p.part(i)).unwrap();
                worst[1] = worst[1].max(again.part(i).max_abs_diff(p.part(i)) / scale);
                for j in (i + 1)..=12 {
                    let ip = p.part(i).inner_product(p.part(j)).unwrap();
                    worst[2] = worst[2].max(ip.abs() / (scale * scale));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        worst.iter().all(|&w| w < 1e-9) && secs < 10.0,
        format!(
            "completeness {:.1e}, idempotence {:.1e}, orthogonality {:.1e} (tol 1e-9; {secs:.2} s, limit 10 s)",
            worst[0], worst[1], worst[2]
        ),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 1..=3 {
        let s = ApcSpace::new(n).unwrap();
        let mut rng = trial_rng(3, n as u64);
        for _ in 0..50 {
            let u = ParaunitaryElement::random_with(s, &mut rng);
            let f = random_f_member(s, &mut rng);
            let moved = u.act(&f).unwrap();
            let p = project_all(&f).unwrap();
            let q = project_all(&moved).unwrap();
            let scale = f.max_abs().max(moved.max_abs());
            for i in 1..=12 {
                let image = u.act(p.part(i)).unwrap();
                worst = worst.max(q.part(i).max_abs_diff(&image) / scale);
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        worst < 1e-9 && secs < 10.0,
        format!("max deviation {worst:.1e} over 150 elements (tol 1e-9; {secs:.2} s, limit 10 s)"),
    )
}

/// Closed forms of the four surviving projections in dimension 3, read off
/// the raw components.
fn dim3_closed_forms(f: &Tensor3) -> [Tensor3; 4] {
    let s = f.space();
    let c = |i: usize, j: usize, k: usize| f.get(i - 1, j - 1, k - 1);
    let theta3 = c(1, 1, 3) - c(2, 2, 3);
    let theta_star3 = c(1, 2, 3) - c(2, 1, 3);
    let f10_113 = 0.5 * (c(1, 1, 3) + c(2, 2, 3));
    let f10_123 = 0.5 * (c(1, 2, 3) + c(2, 1, 3));
    let (w1, w2) = (c(3, 3, 1), c(3, 3, 2));
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let build = |g: &dyn Fn([f64; 3], [f64; 3], [f64; 3]) -> f64| {
        Tensor3::from_fn(s, |i, j, k| {
            let e = |m: usize| [d(m, 0), d(m, 1), d(m, 2)];
            g(e(i), e(j), e(k))
        })
    };
    let f5 = build(&|x, y, z| {
        theta3 / 2.0 * (x[0] * (y[0] * z[2] - y[2] * z[0]) - x[1] * (y[1] * z[2] - y[2] * z[1]))
    });
    let f6 = build(&|x, y, z| {
        theta_star3 / 2.0
            * (x[0] * (y[1] * z[2] - y[2] * z[1]) - x[1] * (y[0] * z[2] - y[2] * z[0]))
    });
    let f10 = build(&|x, y, z| {
        f10_113 * (x[0] * (y[0] * z[2] - y[2] * z[0]) + x[1] * (y[1] * z[2] - y[2] * z[1]))
            + f10_123 * (x[0] * (y[1] * z[2] - y[2] * z[1]) + x[1] * (y[0] * z[2] - y[2] * z[0]))
    });
    let f12 = build(&|x, y, z| {
        w1 * x[2] * (y[2] * z[0] - y[0] * z[2]) + w2 * x[2] * (y[2] * z[1] - y[1] * z[2])
    });
    [f5, f6, f10, f12]
}

fn criterion_4() -> Outcome {
    let s = ApcSpace::new(1).unwrap();
    let mut rng = trial_rng(4, 0);
    let (mut vanish, mut closed) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let f = random_f_member(s, &mut rng);
        let p = project_all(&f).unwrap();
        for i in [1, 2, 3, 4, 7, 8, 9, 11] {
            vanish = vanish.max(p.part(i).max_abs());
        }
        for (i, oracle) in [5, 6, 10, 12].into_iter().zip(dim3_closed_forms(&f)) {
            closed = closed.max(p.part(i).max_abs_diff(&oracle));
        }
    }
    verdict(
        vanish < 1e-12 && closed < 1e-12,
        format!("vanishing parts {vanish:.1e}, closed-form deviation {closed:.1e} (tol 1e-12, 200 tensors)"),
    )
}

fn criterion_5() -> Outcome {
    let mut problems = Vec::new();
    for fam in Family::ALL {
        for params in [[2.0, 0.5], [-0.7, 1.3], [1.0, -1.0]] {
            let l = canonical_family(fam, &params[..fam.arity()]).unwrap();
            let r = classify(&structure_tensor(&l).unwrap(), DEFAULT_TOL).unwrap();
            if r.label().to_vec() != vec![fam.class_index()] {
                problems.push(format!(
                    "{fam}{:?} labelled {}",
                    &params[..fam.arity()],
                    r.label()
                ));
            }
        }
    }
    let g5 = |a: f64| {
        let l = canonical_family(Family::G5, &[a]).unwrap();
        classify(&structure_tensor(&l).unwrap(), DEFAULT_TOL).unwrap()
    };
    let two = g5(2.0);
    if !(two.predicates.para_sasakian.identity
        && two.predicates.para_sasakian.by_class
        && two.predicates.k_paracontact.identity
        && two.predicates.k_paracontact.by_class)
    {
        problems.push("g5(2) is not para-Sasakian and K-paracontact".into());
    }
    let one = g5(1.0);
    if !(one.predicates.quasi_para_sasakian.identity && one.predicates.quasi_para_sasakian.by_class)
    {
        problems.push("g5(1) is not quasi-para-Sasakian".into());
    }
    if one.predicates.paracontact.identity {
        problems.push("g5(1) reported paracontact".into());
    }
    if problems.is_empty() {
        pass("g5/g6/g10/g12 pure; g5(2) para-Sasakian and K-paracontact; g5(1) quasi-para-Sasakian")
    } else {
        verdict(false, problems.join("; "))
    }
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut tensors = 0;
    for n in 1..=3 {
        let s = ApcSpace::new(n).unwrap();
        let mut rng = trial_rng(6, n as u64);
        for t in 0..200 {
            let (f, present) = match t % 4 {
                0 => {
                    let i = rng.random_range(1..=12);
                    random_mixture(s, ClassSet::from_indices(&[i]).unwrap(), &mut rng)
                }
                1 | 2 => random_mixture(s, random_class_set(&mut rng), &mut rng),
                _ => {
                    let (rest, mut present) =
                        random_mixture(s, ClassSet::from_indices(&[4, 10]).unwrap(), &mut rng);
                    present.insert(5).unwrap();
                    (g5bar_member(s) + rest, present)
                }
            };
            tensors += 1;
            let r = classify(&f, DEFAULT_TOL).unwrap();
            if r.label() != present {
                failures.push(format!("n={n}: label {} for {present}", r.label()));
            }
            let bad = r.predicates.disagreements();
            if !bad.is_empty() {
                failures.push(format!("n={n} {}: {}", r.label(), bad.join(",")));
            }
        }
    }
    let mut algebras: Vec<LieAlgebra3> = vec![LieAlgebra3::abelian()];
    let mut rng = trial_rng(6, 99);
    for fam in Family::ALL {
        algebras.push(canonical_family(fam, &[1.5, -0.5][..fam.arity()]).unwrap());
        for _ in 0..50 {
            algebras.push(random_pattern_algebra(fam, &mut rng));
        }
    }
    for _ in 0..200 {
        algebras.push(random_jacobi_algebra(&mut rng));
    }
    for l in &algebras {
        let f = structure_tensor(l).unwrap();
        let identity = classify(&f, DEFAULT_TOL).unwrap().predicates.normal;
        let nij = nijenhuis_normality(l, DEFAULT_TOL).unwrap();
        if nij != identity.identity || !identity.agree() {
            failures.push(format!("Nijenhuis {nij} vs {identity:?} for {l:?}"));
        }
    }
    if failures.is_empty() {
        pass(format!(
            "{tensors} tensors: all seven predicates agree; Nijenhuis agrees on {} algebras",
            algebras.len()
        ))
    } else {
        let total = failures.len();
        failures.truncate(3);
        verdict(
            false,
            format!("{total} disagreements, e.g. {}", failures.join("; ")),
        )
    }
}

/// Ricci tensor from an index expansion in the structure constants, coded
/// independently of the operator form used by the library.
fn ricci_oracle(l: &LieAlgebra3) -> [[f64; 3]; 3] {
    let eps = [1.0, -1.0, 1.0];
    let cl = |i: usize, j: usize, k: usize| l.c(i, j, k) * eps[k];
    let mut gamma = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                gamma[i][j][k] = eps[k] * 0.5 * (cl(i, j, k) + cl(k, i, j) + cl(k, j, i));
            }
        }
    }
    let r = |i: usize, j: usize, k: usize, q: usize| {
        (0..3)
            .map(|m| {
                gamma[j][k][m] * gamma[i][m][q]
                    - gamma[i][k][m] * gamma[j][m][q]
                    - l.c(i, j, m) * gamma[m][k][q]
            })
            .sum::<f64>()
    };
    let mut ric = [[0.0; 3]; 3];
    for (y, row) in ric.iter_mut().enumerate() {
        for (z, v) in row.iter_mut().enumerate() {
            *v = (0..3).map(|i| r(i, y, z, i)).sum();
        }
    }
    ric
}

fn criterion_7() -> Outcome {
    let g = [1.0, -1.0, 1.0];
    let mut worst = [0.0f64; 3];
    let mut routes = 0.0f64;
    let mut g10_constants = Vec::new();
    for &alpha in &[0.5, 1.0, -1.3, 2.2] {
        for &beta in &[0.4, -0.9, 1.7] {
            let g5 = canonical_family(Family::G5, &[alpha]).unwrap();
            let d = curvature(&g5, &levi_civita(&g5).unwrap());
            let scal = alpha * alpha / 2.0;
            let mut dev = (d.scalar - scal).abs();
            for i in 0..3 {
                for j in 0..3 {
                    let model = if i == j { scal * g[i] } else { 0.0 }
                        - if i == 2 && j == 2 { 2.0 * scal } else { 0.0 };
                    dev = dev.max((d.ricci[(i, j)] - model).abs());
                }
            }
            worst[0] = worst[0].max(dev);

            let g6 = canonical_family(Family::G6, &[alpha, beta]).unwrap();
            let d = curvature(&g6, &levi_civita(&g6).unwrap());
            let scal = -6.0 * alpha * alpha;
            let mut dev = (d.scalar - scal).abs();
            for i in 0..3 {
                for j in 0..3 {
                    let model = if i == j { scal / 3.0 * g[i] } else { 0.0 };
                    dev = dev.max((d.ricci[(i, j)] - model).abs());
                }
            }
            worst[1] = worst[1].max(dev);
        }
        let g10 = canonical_family(Family::G10, &[alpha]).unwrap();
        let d = curvature(&g10, &levi_civita(&g10).unwrap());
        let c = d.ricci[(2, 2)];
        let mut dev = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                if (i, j) != (2, 2) {
                    dev = dev.max(d.ricci[(i, j)].abs());
                }
            }
        }
        worst[2] = worst[2].max(dev);
        let oracle = ricci_oracle(&g10);
        for i in 0..3 {
            for j in 0..3 {
                routes = routes.max((oracle[i][j] - d.ricci[(i, j)]).abs());
            }
        }
        g10_constants.push(format!(
            "alpha={alpha}: c={:.6} = {:.3}*alpha^2, stated -6*alpha^2={:.6}",
            c,
            c / (alpha * alpha),
            -6.0 * alpha * alpha
        ));
    }
    let ok = worst.iter().all(|&w| w < 1e-10) && routes < 1e-10;
    verdict(
        ok,
        format!(
            "g5 {:.1e}, g6 {:.1e}, g10 form {:.1e}, route agreement {routes:.1e} (tol 1e-10); g10 constant: {}",
            worst[0],
            worst[1],
            worst[2],
            g10_constants[0]
        ),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut rng = trial_rng(8, 0);
    let mut worst = 0.0f64;
    let mut misrouted = 0;
    for branch in Branch::ALL {
        for _ in 0..50 {
            let p = branch.sample(&mut rng);
            let cmp = compare_exp(branch.family(), &p).unwrap();
            if cmp.branch != branch {
                misrouted += 1;
            }
            worst = worst.max(cmp.deviation);
        }
    }
    let mut continuity = 0.0f64;
    let base = ExpParams {
        alpha: 0.8,
        beta: 0.8,
        a: 0.3,
        b: -0.3,
        c: 0.6,
    };
    let nudged = |f: &dyn Fn(&mut ExpParams)| {
        let mut q = base;
        f(&mut q);
        q
    };
    let pairs: [(Branch, ExpParams, Branch, ExpParams); 5] = [
        (
            Branch::G6Generic,
            nudged(&|q| q.beta += 1e-6),
            Branch::G6EqualAntidiagonal,
            base,
        ),
        (
            Branch::G6Equal,
            nudged(&|q| q.b += 1e-6),
            Branch::G6EqualAntidiagonal,
            base,
        ),
        (
            Branch::G6Generic,
            nudged(&|q| q.beta = -0.8 + 1e-6),
            Branch::G6Opposite,
            nudged(&|q| q.beta = -0.8),
        ),
        (
            Branch::G10Scaling,
            nudged(&|q| q.c = 1e-6),
            Branch::G10Translation,
            nudged(&|q| q.c = 0.0),
        ),
        (
            Branch::G12Regular,
            nudged(&|q| q.b = q.a * q.beta / q.alpha + 1e-6),
            Branch::G12Nilpotent,
            nudged(&|q| q.b = q.a * q.beta / q.alpha),
        ),
    ];
    for (b1, p1, b2, p2) in pairs {
        let d = (closed_form_branch(b1, &p1) - closed_form_branch(b2, &p2)).amax();
        continuity = continuity.max(d);
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        worst < 1e-9 && misrouted == 0 && continuity < 1e-4 && secs < 5.0,
        format!(
            "11 branches x 50 draws: max deviation {worst:.1e} (tol 1e-9), misrouted {misrouted}, \
             boundary continuity {continuity:.1e} (tol 1e-4); {secs:.2} s, limit 5 s"
        ),
    )
}

fn main() {
    let start = Instant::now();
    let criteria: [Criterion; 8] = [
        ("dimension table", criterion_1),
        ("decomposition algebra", criterion_2),
        ("equivariance", criterion_3),
        ("dimension-3 specialization", criterion_4),
        ("single-class Lie families", criterion_5),
        ("predicate route agreement", criterion_6),
        ("curvature of the families", criterion_7),
        ("matrix exponentials", criterion_8),
    ];
    let mut all = true;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        all &= o.pass;
        println!(
            "criterion {} {} [{name}] {}",
            idx + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    let secs = start.elapsed().as_secs_f64();
    let ok9 = secs < 120.0;
    all &= ok9;
    println!(
        "criterion 9 {} [oracle-based acceptance, runtime] acceptance ran in {secs:.2} s (limit 120 s)",
        if ok9 { "PASS" } else { "FAIL" }
    );
    if !all {
        std::process::exit(1);
    }
}
