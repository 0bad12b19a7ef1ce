//! Report assembly and rendering. Real numbers are rendered with 12
//! significant digits in both formats.

use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::Matrix3;
use serde_json::{json, Map, Value};

use crate::classify::{classify, Alpha, Predicates};
use crate::curvature::{curvature, levi_civita, EinsteinFit};
use crate::decomposition::{f_space_dimension, projection_ranks, LeeForms, CLASS_COUNT};
use crate::lie3::{
    canonical_family, nijenhuis_normality, structure_tensor, structure_tensor_closed_form,
    theorem41_family, Family, FamilyReport, LieAlgebra3,
};
use crate::matrix_groups::{compare_exp, ExpComparison, ExpParams};
use crate::pipeline::input::{InputDocument, Payload};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Validation(format!(
                "unknown format `{s}` (expected text or json)"
            ))),
        }
    }
}

/// `x` with 12 significant digits.
pub fn sig12(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

fn num(x: f64) -> Value {
    let rounded: f64 = sig12(x).parse().expect("formatted float parses");
    json!(rounded)
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

fn text_vec(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| sig12(x)).collect();
    format!("[{}]", parts.join(", "))
}

fn matrix_rows(m: &Matrix3<f64>) -> Vec<[f64; 3]> {
    (0..3).map(|i| [m[(i, 0)], m[(i, 1)], m[(i, 2)]]).collect()
}

fn matrix_json(m: &Matrix3<f64>) -> Value {
    Value::Array(matrix_rows(m).iter().map(|r| nums(r)).collect())
}

fn render(
    format: OutputFormat,
    text: impl FnOnce() -> String,
    value: impl FnOnce() -> Value,
) -> String {
    match format {
        OutputFormat::Text => text(),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&value()).expect("finite values");
            s.push('\n');
            s
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieSummary {
    pub constants: LieAlgebra3,
    pub families: FamilyReport,
    pub nijenhuis_normal: bool,
    /// Max-abs difference between the commutator and closed-form tensors.
    pub route_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSummary {
    pub ricci: Matrix3<f64>,
    pub scalar: f64,
    pub einstein: EinsteinFit,
    pub bianchi_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub kind: &'static str,
    pub n: usize,
    pub tol: f64,
    pub scale: f64,
    pub label: String,
    pub classes: Vec<usize>,
    pub magnitudes: [f64; CLASS_COUNT],
    pub lee: LeeForms,
    pub predicates: Predicates,
    pub alpha: Option<Alpha>,
    pub family: Option<(Family, Vec<f64>)>,
    pub lie: Option<LieSummary>,
    pub curvature: Option<CurvatureSummary>,
    pub exponential: Option<ExpComparison>,
}

impl ClassificationReport {
    pub fn routes_agree(&self) -> bool {
        self.predicates.disagreements().is_empty()
            && self
                .lie
                .as_ref()
                .is_none_or(|l| l.nijenhuis_normal == self.predicates.normal.identity)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        render(format, || self.to_text(), || self.to_value())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let w = &mut s;
        if let Some((fam, params)) = &self.family {
            writeln!(w, "family: {fam} {}", text_vec(params)).unwrap();
        }
        writeln!(w, "kind: {}", self.kind).unwrap();
        writeln!(w, "n: {}", self.n).unwrap();
        writeln!(w, "tol: {}", sig12(self.tol)).unwrap();
        writeln!(w, "scale: {}", sig12(self.scale)).unwrap();
        writeln!(w, "label: {}", self.label).unwrap();
        writeln!(w, "magnitudes:").unwrap();
        for (i, m) in self.magnitudes.iter().enumerate() {
            writeln!(w, "  G{:<3} {}", i + 1, sig12(*m)).unwrap();
        }
        writeln!(w, "lee forms:").unwrap();
        writeln!(w, "  theta       {}", text_vec(&self.lee.theta)).unwrap();
        writeln!(w, "  theta_star  {}", text_vec(&self.lee.theta_star)).unwrap();
        writeln!(w, "  omega       {}", text_vec(&self.lee.omega)).unwrap();
        match self.alpha {
            Some(Alpha::ParaSasakian(a)) => {
                writeln!(w, "alpha-para-Sasakian: alpha = {}", sig12(a)).unwrap()
            }
            Some(Alpha::ParaKenmotsu(a)) => {
                writeln!(w, "alpha-para-Kenmotsu: alpha = {}", sig12(a)).unwrap()
            }
            None => {}
        }
        writeln!(w, "predicates:").unwrap();
        for (name, r) in self.predicates.entries() {
            let note = if r.agree() { "" } else { "  ROUTES DISAGREE" };
            writeln!(
                w,
                "  {name:<20} {:<5} (identity {}, class {}){note}",
                r.identity, r.identity, r.by_class
            )
            .unwrap();
        }
        if let Some(l) = &self.lie {
            writeln!(w, "structure constants:").unwrap();
            writeln!(w, "  c12 {}", text_vec(&l.constants.c12)).unwrap();
            writeln!(w, "  c13 {}", text_vec(&l.constants.c13)).unwrap();
            writeln!(w, "  c23 {}", text_vec(&l.constants.c23)).unwrap();
            writeln!(
                w,
                "commutator/closed-form deviation: {}",
                sig12(l.route_deviation)
            )
            .unwrap();
            writeln!(w, "nijenhuis normal: {}", l.nijenhuis_normal).unwrap();
            if l.families.matches.is_empty() {
                writeln!(
                    w,
                    "family pattern: none ({})",
                    l.families.explanation.as_deref().unwrap_or("")
                )
                .unwrap();
            }
            for m in &l.families.matches {
                let params: Vec<String> = m
                    .parameters
                    .iter()
                    .map(|(k, v)| format!("{k} = {}", sig12(*v)))
                    .collect();
                writeln!(w, "family pattern: {} ({})", m.family, params.join(", ")).unwrap();
            }
        }
        if let Some(c) = &self.curvature {
            writeln!(w, "curvature:").unwrap();
            for row in matrix_rows(&c.ricci) {
                writeln!(w, "  ricci   {}", text_vec(&row)).unwrap();
            }
            writeln!(w, "  scalar  {}", sig12(c.scalar)).unwrap();
            writeln!(
                w,
                "  type    {} (a = {}, b = {}, residual {})",
                c.einstein.kind,
                sig12(c.einstein.a),
                sig12(c.einstein.b),
                sig12(c.einstein.residual)
            )
            .unwrap();
            writeln!(w, "  bianchi residual {}", sig12(c.bianchi_residual)).unwrap();
        }
        if let Some(e) = &self.exponential {
            s.push_str(&exp_text(e));
        }
        s
    }

    pub fn to_value(&self) -> Value {
        let mut o = Map::new();
        o.insert("kind".into(), json!(self.kind));
        o.insert("n".into(), json!(self.n));
        o.insert("tol".into(), num(self.tol));
        o.insert("scale".into(), num(self.scale));
        o.insert("label".into(), json!(self.label));
        o.insert("classes".into(), json!(self.classes));
        o.insert("magnitudes".into(), nums(&self.magnitudes));
        o.insert(
            "lee_forms".into(),
            json!({
                "theta": nums(&self.lee.theta),
                "theta_star": nums(&self.lee.theta_star),
                "omega": nums(&self.lee.omega),
            }),
        );
        let mut flags = Map::new();
        let mut agree = Map::new();
        for (name, r) in self.predicates.entries() {
            flags.insert(name.into(), json!(r.identity));
            agree.insert(name.into(), json!(r.agree()));
        }
        o.insert("flags".into(), Value::Object(flags));
        o.insert("route_agreement".into(), Value::Object(agree));
        o.insert(
            "alpha".into(),
            match self.alpha {
                Some(Alpha::ParaSasakian(a)) => json!({"kind": "para_sasakian", "value": num(a)}),
                Some(Alpha::ParaKenmotsu(a)) => json!({"kind": "para_kenmotsu", "value": num(a)}),
                None => Value::Null,
            },
        );
        if let Some((fam, params)) = &self.family {
            o.insert(
                "family".into(),
                json!({"name": fam.name(), "params": nums(params)}),
            );
        }
        if let Some(l) = &self.lie {
            let matches: Vec<Value> = l
                .families
                .matches
                .iter()
                .map(|m| {
                    let params: Map<String, Value> = m
                        .parameters
                        .iter()
                        .map(|(k, v)| (k.to_string(), num(*v)))
                        .collect();
                    json!({"family": m.family.name(), "parameters": params})
                })
                .collect();
            o.insert(
                "lie3".into(),
                json!({
                    "structure_constants": {
                        "c12": nums(&l.constants.c12),
                        "c13": nums(&l.constants.c13),
                        "c23": nums(&l.constants.c23),
                    },
                    "route_deviation": num(l.route_deviation),
                    "nijenhuis_normal": l.nijenhuis_normal,
                    "family_patterns": matches,
                    "explanation": l.families.explanation,
                }),
            );
        }
        if let Some(c) = &self.curvature {
            o.insert(
                "curvature".into(),
                json!({
                    "ricci": matrix_json(&c.ricci),
                    "scalar": num(c.scalar),
                    "einstein_type": c.einstein.kind.name(),
                    "fit_a": num(c.einstein.a),
                    "fit_b": num(c.einstein.b),
                    "fit_residual": num(c.einstein.residual),
                    "bianchi_residual": num(c.bianchi_residual),
                }),
            );
        }
        if let Some(e) = &self.exponential {
            o.insert("exponential".into(), exp_value(e));
        }
        Value::Object(o)
    }
}

fn lie_parts(l: &LieAlgebra3, tol: f64) -> Result<(LieSummary, CurvatureSummary)> {
    let f = structure_tensor(l)?;
    let route_deviation = f.max_abs_diff(&structure_tensor_closed_form(l)?);
    let conn = levi_civita(l)?;
    let curv = curvature(l, &conn);
    Ok((
        LieSummary {
            constants: *l,
            families: theorem41_family(l, tol),
            nijenhuis_normal: nijenhuis_normality(l, tol)?,
            route_deviation,
        },
        CurvatureSummary {
            ricci: curv.ricci,
            scalar: curv.scalar,
            einstein: curv.einstein,
            bianchi_residual: curv.bianchi_residual(),
        },
    ))
}

/// Classifies the document's structure. `lie3` documents also carry the
/// family-pattern check, Nijenhuis normality and curvature.
pub fn run_classify(doc: &InputDocument) -> Result<ClassificationReport> {
    let (f, lie) = match &doc.payload {
        Payload::Tensor { .. } => (doc.tensor()?, None),
        Payload::Lie3(l) => (structure_tensor(l)?, Some(lie_parts(l, doc.tol)?)),
    };
    let g = classify(&f, doc.tol)?;
    let label = if g.predicates.g5bar.identity && g.predicates.g5bar.by_class {
        "Ḡ5".to_string()
    } else {
        g.label().to_string()
    };
    let (lie, curvature) = match lie {
        Some((l, c)) => (Some(l), Some(c)),
        None => (None, None),
    };
    Ok(ClassificationReport {
        kind: doc.kind(),
        n: doc.n(),
        tol: doc.tol,
        scale: g.projections.scale,
        label,
        classes: g.label().to_vec(),
        magnitudes: g.projections.magnitudes,
        lee: g.projections.lee.clone(),
        predicates: g.predicates,
        alpha: g.alpha,
        family: None,
        lie,
        curvature,
        exponential: None,
    })
}

pub type FamilyRunReport = ClassificationReport;

/// Classifies a canonical family, optionally with curvature and a
/// closed-form exponential check at `X = aE₁ + bE₂ + cE₃`.
pub fn run_family(
    family: Family,
    params: &[f64],
    with_curvature: bool,
    expmap: Option<[f64; 3]>,
    tol: f64,
) -> Result<FamilyRunReport> {
    let l = canonical_family(family, params)?;
    let mut report = run_classify(&InputDocument::lie3(l, tol))?;
    report.family = Some((family, params.to_vec()));
    if !with_curvature {
        report.curvature = None;
    }
    if let Some([a, b, c]) = expmap {
        report.exponential = Some(run_expmap(family, params, a, b, c)?.0);
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimsReport {
    pub n: usize,
    pub f_dimension: usize,
    pub ranks: [usize; CLASS_COUNT],
}

impl DimsReport {
    pub fn render(&self, format: OutputFormat) -> String {
        render(
            format,
            || {
                let mut s = format!("n: {}\ndim F: {}\n", self.n, self.f_dimension);
                for (i, r) in self.ranks.iter().enumerate() {
                    writeln!(s, "  G{:<3} {r}", i + 1).unwrap();
                }
                writeln!(s, "sum: {}", self.ranks.iter().sum::<usize>()).unwrap();
                s
            },
            || json!({"n": self.n, "f_dimension": self.f_dimension, "ranks": self.ranks}),
        )
    }
}

/// Ranks of the twelve projection operators on the space of structure tensors.
pub fn run_dims(n: usize) -> Result<DimsReport> {
    Ok(DimsReport {
        n,
        f_dimension: f_space_dimension(n)?,
        ranks: projection_ranks(n)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpReport(pub ExpComparison);

impl ExpReport {
    pub fn render(&self, format: OutputFormat) -> String {
        render(format, || exp_text(&self.0), || exp_value(&self.0))
    }
}

fn exp_text(e: &ExpComparison) -> String {
    let mut s = String::new();
    writeln!(s, "exponential:").unwrap();
    writeln!(
        s,
        "  X = {} E1 + {} E2 + {} E3",
        sig12(e.params.a),
        sig12(e.params.b),
        sig12(e.params.c)
    )
    .unwrap();
    writeln!(s, "  branch  {}", e.branch).unwrap();
    for row in matrix_rows(&e.closed_form.mat) {
        writeln!(s, "  closed  {}", text_vec(&row)).unwrap();
    }
    for row in matrix_rows(&e.numeric.mat) {
        writeln!(s, "  numeric {}", text_vec(&row)).unwrap();
    }
    writeln!(s, "  deviation {}", sig12(e.deviation)).unwrap();
    s
}

fn exp_value(e: &ExpComparison) -> Value {
    json!({
        "family": e.family.name(),
        "alpha": num(e.params.alpha),
        "beta": num(e.params.beta),
        "x": nums(&[e.params.a, e.params.b, e.params.c]),
        "branch": e.branch.condition(),
        "a_matrix": matrix_json(&e.a_matrix),
        "closed_form": matrix_json(&e.closed_form.mat),
        "numeric": matrix_json(&e.numeric.mat),
        "deviation": num(e.deviation),
    })
}

/// Closed-form `e^A` against the numerical exponential.
pub fn run_expmap(family: Family, params: &[f64], a: f64, b: f64, c: f64) -> Result<ExpReport> {
    canonical_family(family, params)?;
    let p = ExpParams {
        alpha: params[0],
        beta: params.get(1).copied().unwrap_or(0.0),
        a,
        b,
        c,
    };
    Ok(ExpReport(compare_exp(family, &p)?))
}
