//! Scenario files: charts, fields, structures, requested checks and the zero-test policy.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::calculus::{Chart, ChartRef, EndoTM, Mat, MetricField, OneForm, TwoForm, VectorField};
use crate::error::{GgError, Result};
use crate::hypersurface::{Embedding, GenHermitian, HypersurfaceGeometry, Orientation};
use crate::structures::classical::AlmostContact;
use crate::structures::generalized::{GenF, GenMetric};
use crate::structures::twoone::{ClassicalPair, TwoOneGAC};
use crate::symexpr::{parse, ScalarExpr, ZeroPolicy};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: Option<String>,
    #[serde(default)]
    description: String,
    chart: ChartsDecl,
    #[serde(default)]
    fields: BTreeMap<String, FieldDecl>,
    #[serde(default)]
    structures: BTreeMap<String, StructureDecl>,
    #[serde(default)]
    checks: Vec<CheckDecl>,
    #[serde(default)]
    policy: PolicyDecl,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ChartsDecl {
    One(ChartDecl),
    Many(Vec<ChartDecl>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChartDecl {
    name: String,
    coords: Vec<String>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum FieldDecl {
    Vector { chart: Option<String>, components: Vec<String> },
    Form { chart: Option<String>, components: Vec<String> },
    TwoForm { chart: Option<String>, matrix: Vec<Vec<String>> },
    Endo { chart: Option<String>, matrix: Vec<Vec<String>> },
    Metric { chart: Option<String>, matrix: Vec<Vec<String>> },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum StructureDecl {
    AlmostContact {
        #[serde(rename = "F")]
        f: String,
        #[serde(rename = "Z")]
        z: String,
        xi: String,
        metric: Option<String>,
    },
    Quadruple {
        gamma: String,
        psi: Option<String>,
        #[serde(rename = "F+")]
        fp: String,
        #[serde(rename = "F-")]
        fm: String,
    },
    TwoOne {
        gamma: String,
        psi: Option<String>,
        #[serde(rename = "F+")]
        fp: String,
        #[serde(rename = "F-")]
        fm: String,
        #[serde(rename = "Z+")]
        zp: String,
        #[serde(rename = "Z-")]
        zm: String,
    },
    Hermitian {
        gamma: String,
        #[serde(rename = "J")]
        j: String,
    },
    GenHermitian {
        gamma: String,
        psi: Option<String>,
        #[serde(rename = "J+")]
        jp: String,
        #[serde(rename = "J-")]
        jm: String,
    },
    Hypersurface {
        domain: String,
        ambient: String,
        embedding: Vec<String>,
        #[serde(default = "positive")]
        orientation: Orientation,
    },
}

fn positive() -> Orientation {
    Orientation::Positive
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CheckDecl {
    Short(String),
    Full { label: String, structure: Option<String> },
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct PolicyDecl {
    samples: Option<usize>,
    seed: Option<u64>,
    tol: Option<f64>,
    max_passes: Option<u32>,
}

/// A resolved structure the checks run on.
#[derive(Clone, Debug)]
pub enum Subject {
    /// A classical structure together with its (2,1) lift when a metric is present.
    Classical { ac: AlmostContact, lift: Option<TwoOneGAC> },
    Quadruple(GenF),
    TwoOne(TwoOneGAC),
    Hermitian { gamma: MetricField, j: EndoTM },
    GenHermitian(GenHermitian),
    Hypersurface { geometry: Box<HypersurfaceGeometry>, ambient: GenHermitian },
}

impl Subject {
    pub fn kind(&self) -> Kind {
        match self {
            Subject::Classical { .. } => Kind::Classical,
            Subject::Quadruple(_) => Kind::Quadruple,
            Subject::TwoOne(_) => Kind::TwoOne,
            Subject::Hermitian { .. } => Kind::Hermitian,
            Subject::GenHermitian(_) => Kind::GenHermitian,
            Subject::Hypersurface { .. } => Kind::Hypersurface,
        }
    }

    /// The (2,1) structure of a subject, if it has one.
    pub fn two_one(&self) -> Option<&TwoOneGAC> {
        match self {
            Subject::Classical { lift, .. } => lift.as_ref(),
            Subject::TwoOne(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Classical,
    Quadruple,
    TwoOne,
    Hermitian,
    GenHermitian,
    Hypersurface,
}

/// A requested check; `structure = None` means every structure the label applies to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRequest {
    pub label: String,
    pub structure: Option<String>,
}

impl CheckRequest {
    pub fn parse(s: &str) -> CheckRequest {
        match s.split_once('@') {
            Some((l, t)) => CheckRequest { label: l.to_string(), structure: Some(t.to_string()) },
            None => CheckRequest { label: s.to_string(), structure: None },
        }
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub charts: Vec<ChartRef>,
    pub subjects: Vec<(String, Subject)>,
    pub checks: Vec<CheckRequest>,
    pub policy: ZeroPolicy,
}

impl Scenario {
    pub fn subject(&self, name: &str) -> Option<&Subject> {
        self.subjects.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

fn scenario_err(location: impl Into<String>, msg: impl std::fmt::Display) -> GgError {
    GgError::Scenario { location: location.into(), msg: msg.to_string() }
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| scenario_err(path.display().to_string(), e))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
    parse_scenario(&text, stem)
}

/// Parses and validates scenario JSON; `default_name` is used when the file has no `name`.
pub fn parse_scenario(text: &str, default_name: &str) -> Result<Scenario> {
    let file: ScenarioFile = serde_json::from_str(text)
        .map_err(|e| scenario_err(format!("line {} column {}", e.line(), e.column()), e))?;
    Builder::new(&file)?.build(file, default_name)
}

struct Builder {
    charts: Vec<ChartRef>,
}

impl Builder {
    fn new(file: &ScenarioFile) -> Result<Self> {
        let decls: Vec<&ChartDecl> = match &file.chart {
            ChartsDecl::One(c) => vec![c],
            ChartsDecl::Many(v) => v.iter().collect(),
        };
        if decls.is_empty() {
            return Err(scenario_err("chart", "at least one chart is required"));
        }
        let mut charts = Vec::new();
        for (k, d) in decls.iter().enumerate() {
            let coords: Vec<&str> = d.coords.iter().map(String::as_str).collect();
            let c = Chart::new(&d.name, &coords).map_err(|e| scenario_err(format!("chart[{k}]"), e))?;
            if charts.iter().any(|o: &ChartRef| o.name() == c.name()) {
                return Err(scenario_err(format!("chart[{k}]"), format!("duplicate chart name {}", c.name())));
            }
            charts.push(c);
        }
        Ok(Builder { charts })
    }

    fn chart(&self, name: &Option<String>, loc: &str) -> Result<ChartRef> {
        match name {
            None => Ok(self.charts[0].clone()),
            Some(n) => self
                .charts
                .iter()
                .find(|c| c.name() == n)
                .cloned()
                .ok_or_else(|| scenario_err(loc, format!("undeclared chart '{n}'"))),
        }
    }

    fn expr(&self, chart: &ChartRef, src: &str, loc: &str) -> Result<ScalarExpr> {
        let e = parse(src).map_err(|e| scenario_err(loc, e))?;
        if let Some(sym) = chart.foreign_symbols(&e).into_iter().next() {
            return Err(scenario_err(loc, format!("undeclared symbol '{sym}' on chart {}", chart.name())));
        }
        Ok(e)
    }

    fn vector(&self, chart: &ChartRef, comps: &[String], loc: &str) -> Result<Vec<ScalarExpr>> {
        if comps.len() != chart.dim() {
            return Err(scenario_err(loc, format!("expected {} components, got {}", chart.dim(), comps.len())));
        }
        comps.iter().enumerate().map(|(i, s)| self.expr(chart, s, &format!("{loc}[{i}]"))).collect()
    }

    fn matrix(&self, chart: &ChartRef, rows: &[Vec<String>], loc: &str) -> Result<Mat> {
        let n = chart.dim();
        if rows.len() != n {
            return Err(scenario_err(loc, format!("expected {n} rows, got {}", rows.len())));
        }
        let mut out = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            out.push(self.vector(chart, r, &format!("{loc}[{i}]"))?);
        }
        Mat::from_rows(out).map_err(|e| scenario_err(loc, e))
    }

    fn build(self, file: ScenarioFile, default_name: &str) -> Result<Scenario> {
        let mut fields = BTreeMap::new();
        for (name, decl) in &file.fields {
            let loc = format!("fields.{name}");
            let f = self.field(decl, &loc)?;
            fields.insert(name.clone(), f);
        }
        let mut subjects: Vec<(String, Subject)> = Vec::new();
        let (hyper, plain): (Vec<_>, Vec<_>) =
            file.structures.iter().partition(|(_, d)| matches!(d, StructureDecl::Hypersurface { .. }));
        let policy = policy_from(&file.policy);
        for (name, decl) in plain {
            let loc = format!("structures.{name}");
            subjects.push((name.clone(), self.structure(decl, &fields, &loc)?));
        }
        for (name, decl) in hyper {
            let loc = format!("structures.{name}");
            let s = self.hypersurface(decl, &subjects, &policy, &loc)?;
            subjects.push((name.clone(), s));
        }
        let mut checks = Vec::new();
        for (k, c) in file.checks.into_iter().enumerate() {
            let req = match c {
                CheckDecl::Short(s) => CheckRequest::parse(&s),
                CheckDecl::Full { label, structure } => CheckRequest { label, structure },
            };
            if let Some(t) = &req.structure {
                if !subjects.iter().any(|(n, _)| n == t) {
                    return Err(scenario_err(format!("checks[{k}]"), format!("undeclared structure '{t}'")));
                }
            }
            checks.push(req);
        }
        Ok(Scenario {
            name: file.name.unwrap_or_else(|| default_name.to_string()),
            description: file.description,
            charts: self.charts,
            subjects,
            checks,
            policy,
        })
    }

    fn field(&self, decl: &FieldDecl, loc: &str) -> Result<Field> {
        let wrap = |e: GgError| scenario_err(loc, e);
        Ok(match decl {
            FieldDecl::Vector { chart, components } => {
                let c = self.chart(chart, loc)?;
                Field::Vector(VectorField::new(&c, self.vector(&c, components, &format!("{loc}.components"))?).map_err(wrap)?)
            }
            FieldDecl::Form { chart, components } => {
                let c = self.chart(chart, loc)?;
                Field::Form(OneForm::new(&c, self.vector(&c, components, &format!("{loc}.components"))?).map_err(wrap)?)
            }
            FieldDecl::TwoForm { chart, matrix } => {
                let c = self.chart(chart, loc)?;
                Field::TwoForm(TwoForm::new(&c, self.matrix(&c, matrix, &format!("{loc}.matrix"))?).map_err(wrap)?)
            }
            FieldDecl::Endo { chart, matrix } => {
                let c = self.chart(chart, loc)?;
                Field::Endo(EndoTM::new(&c, self.matrix(&c, matrix, &format!("{loc}.matrix"))?).map_err(wrap)?)
            }
            FieldDecl::Metric { chart, matrix } => {
                let c = self.chart(chart, loc)?;
                Field::Metric(MetricField::new(&c, self.matrix(&c, matrix, &format!("{loc}.matrix"))?).map_err(wrap)?)
            }
        })
    }

    fn structure(&self, decl: &StructureDecl, fields: &BTreeMap<String, Field>, loc: &str) -> Result<Subject> {
        let wrap = |e: GgError| scenario_err(loc, e);
        let get = |key: &str, name: &str| -> Result<&Field> {
            fields.get(name).ok_or_else(|| scenario_err(format!("{loc}.{key}"), format!("undeclared field '{name}'")))
        };
        let endo = |key: &str, name: &str| match get(key, name)? {
            Field::Endo(f) => Ok(f.clone()),
            other => Err(scenario_err(format!("{loc}.{key}"), format!("'{name}' is a {}, expected endo", other.kind()))),
        };
        let metric = |key: &str, name: &str| match get(key, name)? {
            Field::Metric(f) => Ok(f.clone()),
            other => Err(scenario_err(format!("{loc}.{key}"), format!("'{name}' is a {}, expected metric", other.kind()))),
        };
        let vector = |key: &str, name: &str| match get(key, name)? {
            Field::Vector(f) => Ok(f.clone()),
            other => Err(scenario_err(format!("{loc}.{key}"), format!("'{name}' is a {}, expected vector", other.kind()))),
        };
        let form = |key: &str, name: &str| match get(key, name)? {
            Field::Form(f) => Ok(f.clone()),
            other => Err(scenario_err(format!("{loc}.{key}"), format!("'{name}' is a {}, expected form", other.kind()))),
        };
        let psi_of = |psi: &Option<String>, g: &MetricField| match psi {
            None => Ok(TwoForm::zero(g.chart())),
            Some(name) => match get("psi", name)? {
                Field::TwoForm(f) => Ok(f.clone()),
                other => Err(scenario_err(format!("{loc}.psi"), format!("'{name}' is a {}, expected two_form", other.kind()))),
            },
        };
        Ok(match decl {
            StructureDecl::AlmostContact { f, z, xi, metric: g } => {
                let g = match g {
                    Some(n) => Some(metric("metric", n)?),
                    None => None,
                };
                let ac = AlmostContact::new(endo("F", f)?, vector("Z", z)?, form("xi", xi)?, g).map_err(wrap)?;
                let lift = match &ac.metric {
                    Some(_) => Some(TwoOneGAC::from_classical(&ac).map_err(wrap)?),
                    None => None,
                };
                Subject::Classical { ac, lift }
            }
            StructureDecl::Quadruple { gamma, psi, fp, fm } => {
                let g = metric("gamma", gamma)?;
                let m = GenMetric::new(g.clone(), psi_of(psi, &g)?).map_err(wrap)?;
                Subject::Quadruple(GenF::from_quadruple_unchecked(m, endo("F+", fp)?, endo("F-", fm)?).map_err(wrap)?)
            }
            StructureDecl::TwoOne { gamma, psi, fp, fm, zp, zm } => {
                let g = metric("gamma", gamma)?;
                let m = GenMetric::new(g.clone(), psi_of(psi, &g)?).map_err(wrap)?;
                let (zp, zm) = (vector("Z+", zp)?, vector("Z-", zm)?);
                let pair = ClassicalPair {
                    fp: endo("F+", fp)?,
                    fm: endo("F-", fm)?,
                    xip: g.flat(&zp),
                    xim: g.flat(&zm),
                    zp,
                    zm,
                };
                Subject::TwoOne(TwoOneGAC::from_pair(m, pair).map_err(wrap)?)
            }
            StructureDecl::Hermitian { gamma, j } => Subject::Hermitian { gamma: metric("gamma", gamma)?, j: endo("J", j)? },
            StructureDecl::GenHermitian { gamma, psi, jp, jm } => {
                let g = metric("gamma", gamma)?;
                Subject::GenHermitian(GenHermitian { psi: psi_of(psi, &g)?, gamma: g, jp: endo("J+", jp)?, jm: endo("J-", jm)? })
            }
            StructureDecl::Hypersurface { .. } => unreachable!("hypersurfaces are built after their ambient structures"),
        })
    }

    fn hypersurface(
        &self,
        decl: &StructureDecl,
        built: &[(String, Subject)],
        policy: &ZeroPolicy,
        loc: &str,
    ) -> Result<Subject> {
        let StructureDecl::Hypersurface { domain, ambient, embedding, orientation } = decl else {
            unreachable!("caller filters hypersurfaces")
        };
        let amb = match built.iter().find(|(n, _)| n == ambient).map(|(_, s)| s) {
            Some(Subject::Hermitian { gamma, j }) => {
                GenHermitian { gamma: gamma.clone(), psi: TwoForm::zero(gamma.chart()), jp: j.clone(), jm: j.clone() }
            }
            Some(Subject::GenHermitian(g)) => g.clone(),
            Some(_) => return Err(scenario_err(format!("{loc}.ambient"), "ambient must be hermitian or gen_hermitian")),
            None => return Err(scenario_err(format!("{loc}.ambient"), format!("undeclared structure '{ambient}'"))),
        };
        let dom = self.chart(&Some(domain.clone()), &format!("{loc}.domain"))?;
        let n = amb.gamma.chart().dim();
        if embedding.len() != n {
            return Err(scenario_err(format!("{loc}.embedding"), format!("expected {n} components, got {}", embedding.len())));
        }
        let comps = embedding
            .iter()
            .enumerate()
            .map(|(i, s)| self.expr(&dom, s, &format!("{loc}.embedding[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let wrap = |e: GgError| scenario_err(loc, e);
        let e = Embedding::new(&dom, amb.gamma.chart(), comps, *orientation).map_err(wrap)?;
        let geometry = HypersurfaceGeometry::new(&e, &amb.gamma, policy).map_err(wrap)?;
        Ok(Subject::Hypersurface { geometry: Box::new(geometry), ambient: amb })
    }
}

enum Field {
    Vector(VectorField),
    Form(OneForm),
    TwoForm(TwoForm),
    Endo(EndoTM),
    Metric(MetricField),
}

impl Field {
    fn kind(&self) -> &'static str {
        match self {
            Field::Vector(_) => "vector",
            Field::Form(_) => "form",
            Field::TwoForm(_) => "two_form",
            Field::Endo(_) => "endo",
            Field::Metric(_) => "metric",
        }
    }
}

fn policy_from(p: &PolicyDecl) -> ZeroPolicy {
    let d = ZeroPolicy::default();
    ZeroPolicy {
        max_passes: p.max_passes.unwrap_or(d.max_passes),
        samples: p.samples.unwrap_or(d.samples),
        seed: p.seed.unwrap_or(d.seed),
        tol: p.tol.unwrap_or(d.tol),
    }
}
