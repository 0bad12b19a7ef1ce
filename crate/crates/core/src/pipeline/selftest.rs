//! Seeded property suite. Trial `t` of property `p` draws from its own RNG
//! stream derived from `(seed, p, t)`, so parallel and serial runs agree.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::classify::classify;
use crate::curvature::{curvature, levi_civita};
use crate::decomposition::{project_all, ClassSet, DEFAULT_TOL};
use crate::lie3::{
    nijenhuis_normality, random_jacobi_algebra, random_pattern_algebra, structure_tensor,
    structure_tensor_closed_form, theorem41_family, Family,
};
use crate::matrix_groups::{compare_exp, Branch};
use crate::paraunitary::ParaunitaryElement;
use crate::pipeline::report::{sig12, OutputFormat};
use crate::sampling::{g5bar_member, random_class_set, random_f_member, random_mixture, trial_rng};
use crate::space::ApcSpace;

/// Scale-relative bound used by every numerical check in the suite.
pub const SUITE_TOL: f64 = 1e-9;

type Trial = fn(&mut ChaCha8Rng, u64) -> Result<f64, String>;

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub trials: u64,
    pub failures: u64,
    /// Largest scale-relative deviation observed.
    pub worst: f64,
    pub first_failure: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub seed: u64,
    pub iters: u64,
    pub results: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(PropertyResult::passed)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => {
                let mut s = format!("seed: {}\niters: {}\n", self.seed, self.iters);
                for r in &self.results {
                    let status = if r.passed() { "PASS" } else { "FAIL" };
                    s.push_str(&format!(
                        "{status} {:<18} trials {:>6}  failures {:>4}  worst {}\n",
                        r.name,
                        r.trials,
                        r.failures,
                        sig12(r.worst)
                    ));
                    if let Some(msg) = &r.first_failure {
                        s.push_str(&format!("     first failure: {msg}\n"));
                    }
                }
                s.push_str(if self.passed() {
                    "result: PASS\n"
                } else {
                    "result: FAIL\n"
                });
                s
            }
            OutputFormat::Json => {
                let results: Vec<_> = self
                    .results
                    .iter()
                    .map(|r| {
                        json!({
                            "name": r.name,
                            "trials": r.trials,
                            "failures": r.failures,
                            "worst": r.worst,
                            "first_failure": r.first_failure,
                            "passed": r.passed(),
                        })
                    })
                    .collect();
                let v = json!({
                    "seed": self.seed,
                    "iters": self.iters,
                    "passed": self.passed(),
                    "results": results,
                });
                let mut s = serde_json::to_string_pretty(&v).expect("finite values");
                s.push('\n');
                s
            }
        }
    }
}

fn check(value: f64, bound: f64, what: &str) -> Result<f64, String> {
    if value <= bound {
        Ok(value)
    } else {
        Err(format!("{what}: {value:.3e} exceeds {bound:.3e}"))
    }
}

fn space_for(index: u64) -> ApcSpace {
    ApcSpace::new(1 + (index % 3) as usize).expect("n >= 1")
}

fn decomposition_trial(rng: &mut ChaCha8Rng, index: u64) -> Result<f64, String> {
    let f = random_f_member(space_for(index), rng);
    let scale = f.max_abs();
    let p = project_all(&f).map_err(|e| e.to_string())?;
    let mut worst = check(p.sum().max_abs_diff(&f) / scale, SUITE_TOL, "completeness")?;
    for i in 1..=12 {
        let again = project_all(p.part(i)).map_err(|e| e.to_string())?;
        worst = worst.max(check(
            again.part(i).max_abs_diff(p.part(i)) / scale,
            SUITE_TOL,
            "idempotence",
        )?);
        for j in (i + 1)..=12 {
            let ip = p
                .part(i)
                .inner_product(p.part(j))
                .map_err(|e| e.to_string())?;
            worst = worst.max(check(
                ip.abs() / (scale * scale),
                SUITE_TOL,
                "orthogonality",
            )?);
        }
    }
    Ok(worst)
}

fn equivariance_trial(rng: &mut ChaCha8Rng, index: u64) -> Result<f64, String> {
    let s = space_for(index);
    let f = random_f_member(s, rng);
    let u = ParaunitaryElement::random_with(s, rng);
    let moved = u.act(&f).map_err(|e| e.to_string())?;
    let p = project_all(&f).map_err(|e| e.to_string())?;
    let q = project_all(&moved).map_err(|e| e.to_string())?;
    let scale = moved.max_abs().max(f.max_abs());
    let mut worst = 0.0f64;
    for i in 1..=12 {
        let image = u.act(p.part(i)).map_err(|e| e.to_string())?;
        worst = worst.max(check(
            q.part(i).max_abs_diff(&image) / scale,
            SUITE_TOL,
            "equivariance",
        )?);
    }
    Ok(worst)
}

fn predicate_trial(rng: &mut ChaCha8Rng, index: u64) -> Result<f64, String> {
    let s = space_for(index);
    let (f, present) = match index % 3 {
        0 => {
            let i = rng.random_range(1..=12);
            random_mixture(s, ClassSet::from_indices(&[i]).expect("valid"), rng)
        }
        1 => random_mixture(s, random_class_set(rng), rng),
        _ => {
            let extra = ClassSet::from_indices(&[4, 10]).expect("valid");
            let (rest, mut present) = random_mixture(s, extra, rng);
            present.insert(5).expect("valid");
            (g5bar_member(s) + rest, present)
        }
    };
    let r = classify(&f, DEFAULT_TOL).map_err(|e| e.to_string())?;
    if r.label() != present {
        return Err(format!(
            "label {} differs from construction {present}",
            r.label()
        ));
    }
    let bad = r.predicates.disagreements();
    if bad.is_empty() {
        Ok(0.0)
    } else {
        Err(format!(
            "routes disagree on {} for {}",
            bad.join(", "),
            r.label()
        ))
    }
}

fn lie3_trial(rng: &mut ChaCha8Rng, index: u64) -> Result<f64, String> {
    let family = Family::ALL[(index % 5) as usize % 4];
    let l = if index % 5 == 4 {
        random_jacobi_algebra(rng)
    } else {
        random_pattern_algebra(family, rng)
    };
    let f = structure_tensor(&l).map_err(|e| e.to_string())?;
    let closed = structure_tensor_closed_form(&l).map_err(|e| e.to_string())?;
    let scale = l.max_abs();
    let worst = check(
        f.max_abs_diff(&closed) / scale,
        1e-12,
        "commutator vs closed form",
    )?;
    let r = classify(&f, DEFAULT_TOL).map_err(|e| e.to_string())?;
    if index % 5 != 4 && r.label().to_vec() != vec![family.class_index()] {
        return Err(format!(
            "{family} pattern algebra classified as {}",
            r.label()
        ));
    }
    let pattern = theorem41_family(&l, DEFAULT_TOL).families();
    let expected: Vec<Family> = Family::ALL
        .into_iter()
        .filter(|fam| r.label().to_vec() == vec![fam.class_index()])
        .collect();
    if pattern != expected {
        return Err(format!("pattern {pattern:?} vs label {}", r.label()));
    }
    let nij = nijenhuis_normality(&l, DEFAULT_TOL).map_err(|e| e.to_string())?;
    if nij != r.predicates.normal.identity {
        return Err(format!(
            "Nijenhuis normality {nij} vs identity route for {}",
            r.label()
        ));
    }
    Ok(worst)
}

fn curvature_trial(rng: &mut ChaCha8Rng, _index: u64) -> Result<f64, String> {
    let l = random_jacobi_algebra(rng);
    let conn = levi_civita(&l).map_err(|e| e.to_string())?;
    let scale = l.max_abs().max(1.0);
    let mut worst = check(conn.torsion_residual(&l) / scale, 1e-12, "torsion")?;
    worst = worst.max(check(
        conn.metric_residual() / scale,
        1e-12,
        "metric compatibility",
    )?);
    let d = curvature(&l, &conn);
    worst = worst.max(check(
        d.bianchi_residual() / (scale * scale),
        1e-10,
        "first Bianchi",
    )?);
    Ok(worst)
}

fn exponential_trial(rng: &mut ChaCha8Rng, index: u64) -> Result<f64, String> {
    let branch = Branch::ALL[(index % Branch::ALL.len() as u64) as usize];
    let p = branch.sample(rng);
    let cmp = compare_exp(branch.family(), &p).map_err(|e| e.to_string())?;
    if cmp.branch != branch {
        return Err(format!("sampled {branch} but dispatched {}", cmp.branch));
    }
    check(cmp.deviation, SUITE_TOL, &format!("{branch}"))
}

const PROPERTIES: [(&str, Trial); 6] = [
    ("decomposition", decomposition_trial),
    ("equivariance", equivariance_trial),
    ("predicate_routes", predicate_trial),
    ("lie3_routes", lie3_trial),
    ("curvature", curvature_trial),
    ("exponential", exponential_trial),
];

/// Runs every property `iters` times.
pub fn run_property_suite(seed: u64, iters: u64) -> SuiteReport {
    let results = PROPERTIES
        .iter()
        .enumerate()
        .map(|(p, &(name, trial))| {
            let outcomes: Vec<Result<f64, String>> = (0..iters)
                .into_par_iter()
                .map(|t| {
                    let mut rng = trial_rng(seed, ((p as u64) << 32) | t);
                    trial(&mut rng, t)
                })
                .collect();
            let mut result = PropertyResult {
                name,
                trials: iters,
                failures: 0,
                worst: 0.0,
                first_failure: None,
            };
            for (t, o) in outcomes.into_iter().enumerate() {
                match o {
                    Ok(w) => result.worst = result.worst.max(w),
                    Err(msg) => {
                        result.failures += 1;
                        result
                            .first_failure
                            .get_or_insert(format!("trial {t}: {msg}"));
                    }
                }
            }
            result
        })
        .collect();
    SuiteReport {
        seed,
        iters,
        results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let a = run_property_suite(5, 12);
        assert!(a.passed(), "{}", a.render(OutputFormat::Text));
        let b = run_property_suite(5, 12);
        assert_eq!(a.render(OutputFormat::Json), b.render(OutputFormat::Json));
    }
}
