//! Report assembly behind the `hlspec` binary.

use std::fmt::Write as _;

use hlspec_core::exactmath::fmt_rat;
use hlspec_core::lefschetz::{
    hl_box_criterion, hl_necessary_condition, hl_weight_criterion, kkp_check,
};
use hlspec_core::spectrum::{
    alpha_slices, is_polynomial, is_symmetric, is_unimodal, lower_half_nondecreasing, spectrum_box,
    spectrum_direct,
};
use hlspec_core::weights::{
    construct_simplex, enumerate_reflexive, payne_weights, sector_data, spectrum_formula,
    weight_of_simplex,
};
use hlspec_core::{
    Error, FractionalPolynomial, HLVerdict, Int, LatticePolytope, Method, Result, WeightSystem,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SpectrumMethod {
    /// Sum over box elements weighted by link h-polynomials.
    Box,
    /// Lattice points of `nP` graded by the Newton function.
    Direct,
    /// Every available route, checked against each other.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Filter {
    All,
    HlOnly,
    ReflexiveSummary,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDocument {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
}

impl PolytopeDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("bad document: {e}")))
    }
}

/// A boolean that may not apply to the input; serialized as `"n/a"` then.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Flag {
    Value(bool),
    NotApplicable(&'static str),
}

impl Flag {
    const NA: Flag = Flag::NotApplicable("n/a");

    fn from_result(r: Result<bool>) -> Result<Flag> {
        match r {
            Ok(b) => Ok(Flag::Value(b)),
            Err(Error::NotReflexive(_) | Error::NotApplicable(_) | Error::NotReduced(_)) => {
                Ok(Flag::NA)
            }
            Err(e) => Err(e),
        }
    }

    pub fn is_true(self) -> bool {
        self == Flag::Value(true)
    }
}

impl std::fmt::Display for Flag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Flag::Value(b) => write!(f, "{b}"),
            Flag::NotApplicable(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputEcho {
    pub kind: String,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Slice {
    pub alpha: String,
    pub coeffs: Vec<i64>,
    pub unimodal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Unimodality {
    pub whole: Flag,
    pub eq5: bool,
    pub slices: Vec<Slice>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HlReport {
    pub method: String,
    pub holds: bool,
    pub witnesses: Vec<String>,
}

impl From<&HLVerdict> for HlReport {
    fn from(v: &HLVerdict) -> Self {
        Self {
            method: match v.method {
                Method::BoxCriterion => "box-criterion",
                Method::WeightCriterion => "weight-criterion",
            }
            .to_string(),
            holds: v.holds,
            witnesses: v.witnesses.iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectorRow {
    pub i: usize,
    pub f: String,
    pub d: u64,
    pub beta: String,
    pub age: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PayneCheck {
    pub s: u64,
    pub k: u64,
    pub closed_form: Vec<(String, String, i64)>,
    pub closed_form_matches: bool,
    pub unimodal: bool,
    pub unimodal_iff_s_is_2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub weights: Option<Vec<u64>>,
    pub mu: String,
    pub reflexive: bool,
    pub delta_vector: Vec<String>,
    pub spectrum_methods: Vec<String>,
    /// `(numerator, denominator, coefficient)` in ascending exponent order.
    pub spectrum: Vec<(String, String, i64)>,
    pub spectrum_text: String,
    pub symmetric: bool,
    pub unimodal: Unimodality,
    pub hl: bool,
    pub hl_verdicts: Vec<HlReport>,
    pub kkp: Flag,
    pub necessary_condition: Flag,
    pub sectors: Option<Vec<SectorRow>>,
    pub payne: Option<PayneCheck>,
}

fn invariant(msg: String) -> Error {
    Error::Invariant(msg)
}

fn spectra_for(
    p: &LatticePolytope,
    method: SpectrumMethod,
) -> Result<Vec<(&'static str, FractionalPolynomial)>> {
    Ok(match method {
        SpectrumMethod::Box => vec![("box", spectrum_box(p)?)],
        SpectrumMethod::Direct => vec![("direct", spectrum_direct(p)?)],
        SpectrumMethod::Auto => vec![("direct", spectrum_direct(p)?), ("box", spectrum_box(p)?)],
    })
}

fn analyze_polytope(
    p: &LatticePolytope,
    kind: &str,
    method: SpectrumMethod,
) -> Result<AnalysisReport> {
    let n = p.dim() as u64;
    let reduced_weights = if p.is_simplex() {
        Some(weight_of_simplex(p)?).filter(WeightSystem::is_reduced)
    } else {
        None
    };

    let mut spectra = spectra_for(p, method)?;
    if let (Some(w), SpectrumMethod::Auto) = (&reduced_weights, method) {
        spectra.push(("weights", spectrum_formula(w)?));
    }
    let (_, spec) = spectra[0].clone();
    for (name, other) in &spectra[1..] {
        if other != &spec {
            return Err(invariant(format!(
                "spectrum routes disagree: {} gives {spec}, {name} gives {other}",
                spectra[0].0
            )));
        }
    }

    let reflexive = p.is_reflexive();
    let delta = p.delta_vector();
    let coeffs = spec.integer_coeffs();
    if is_polynomial(&spec) != reflexive {
        return Err(invariant(format!(
            "reflexivity ({reflexive}) and integrality of {spec} disagree"
        )));
    }
    if let Some(c) = &coeffs {
        let as_int: Vec<Int> = c.iter().map(|x| Int::from(*x)).collect();
        if as_int != delta.entries() {
            return Err(invariant(format!(
                "spectrum {spec} differs from the delta-vector"
            )));
        }
    }

    let slices: Vec<Slice> = alpha_slices(&spec)?
        .into_iter()
        .map(|(alpha, coeffs)| Slice {
            alpha: fmt_rat(&alpha),
            unimodal: is_unimodal(&coeffs),
            coeffs,
        })
        .collect();
    let unimodal = Unimodality {
        whole: coeffs
            .as_deref()
            .map_or(Flag::NA, |c| Flag::Value(is_unimodal(c))),
        eq5: lower_half_nondecreasing(&spec, n)?,
        slices,
    };

    let box_verdict = hl_box_criterion(p)?;
    let mut verdicts = vec![];
    let (kkp, necessary_condition, sectors) = match &reduced_weights {
        Some(w) => {
            let wv = hl_weight_criterion(w)?;
            if wv.holds != box_verdict.holds {
                return Err(invariant(format!(
                    "box and weight criteria disagree on {w}"
                )));
            }
            verdicts.push(HlReport::from(&wv));
            let s = sector_data(w)?;
            let rows = (0..s.len())
                .map(|i| SectorRow {
                    i: i + 1,
                    f: fmt_rat(&s.f[i]),
                    d: s.d[i],
                    beta: fmt_rat(&s.beta[i]),
                    age: fmt_rat(&s.ages[i]),
                })
                .collect();
            (
                Flag::from_result(kkp_check(w))?,
                Flag::from_result(hl_necessary_condition(w))?,
                Some(rows),
            )
        }
        None => (Flag::NA, Flag::NA, None),
    };
    verdicts.push(HlReport::from(&box_verdict));
    let hl = box_verdict.holds;
    if hl && unimodal.slices.iter().any(|s| !s.unimodal) {
        return Err(invariant(format!(
            "HL holds but a slice of {spec} is not unimodal"
        )));
    }
    if kkp != Flag::NA && kkp != Flag::Value(hl) {
        return Err(invariant(
            "KKP and HL disagree on a reflexive simplex".into(),
        ));
    }

    Ok(AnalysisReport {
        input: InputEcho {
            kind: kind.to_string(),
            dim: p.dim(),
            vertices: p
                .vertices()
                .iter()
                .map(|v| v.iter().map(ToString::to_string).collect())
                .collect(),
        },
        weights: reduced_weights.map(|w| w.weights().to_vec()),
        mu: p.normalized_volume().to_string(),
        reflexive,
        delta_vector: delta.entries().iter().map(ToString::to_string).collect(),
        spectrum_methods: spectra.iter().map(|(m, _)| m.to_string()).collect(),
        spectrum: spec.to_triples(),
        spectrum_text: spec.to_string(),
        symmetric: is_symmetric(&spec, n),
        unimodal,
        hl,
        hl_verdicts: verdicts,
        kkp,
        necessary_condition,
        sectors,
        payne: None,
    })
}

pub fn cmd_analyze(doc: &PolytopeDocument, method: SpectrumMethod) -> Result<AnalysisReport> {
    let p = LatticePolytope::from_i64(doc.dim, &doc.vertices)?;
    analyze_polytope(&p, "polytope", method)
}

pub fn cmd_simplex(w: &WeightSystem, method: SpectrumMethod) -> Result<AnalysisReport> {
    let p = construct_simplex(w)?;
    let report = analyze_polytope(&p, "weights", method)?;
    if report.weights.as_deref() != Some(w.weights()) {
        return Err(invariant(format!(
            "constructed simplex does not have weight {w}"
        )));
    }
    Ok(report)
}

pub fn cmd_payne(s: u64, k: u64, method: SpectrumMethod) -> Result<AnalysisReport> {
    let (w, closed) = payne_weights(s, k)?;
    let mut report = cmd_simplex(&w, method)?;
    let unimodal = report.unimodal.whole.is_true();
    report.payne = Some(PayneCheck {
        s,
        k,
        closed_form_matches: closed.to_triples() == report.spectrum,
        closed_form: closed.to_triples(),
        unimodal,
        unimodal_iff_s_is_2: unimodal == (s == 2),
    });
    Ok(report)
}

/// One line of the classification table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub weights: WeightSystemText,
    pub mu: u64,
    pub reflexive: bool,
    pub hl: bool,
    pub kkp: Flag,
    pub unimodal: Flag,
    pub eq5: bool,
    pub necessary_condition: Flag,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WeightSystemText(pub Vec<u64>);

impl std::fmt::Display for WeightSystemText {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub const TABLE_HEADER: [&str; 8] = [
    "weights",
    "mu",
    "reflexive",
    "hl",
    "kkp",
    "unimodal",
    "eq5",
    "necessary_condition",
];

impl ClassificationRow {
    fn cells(&self) -> [String; 8] {
        [
            self.weights.to_string(),
            self.mu.to_string(),
            self.reflexive.to_string(),
            self.hl.to_string(),
            self.kkp.to_string(),
            self.unimodal.to_string(),
            self.eq5.to_string(),
            self.necessary_condition.to_string(),
        ]
    }
}

/// Row for one weight system, read off the weights alone.
pub fn classify(w: &WeightSystem) -> Result<ClassificationRow> {
    let n = w.dim() as u64;
    let spec = spectrum_formula(w)?;
    let hl = hl_weight_criterion(w)?.holds;
    Ok(ClassificationRow {
        weights: WeightSystemText(w.weights().to_vec()),
        mu: w.mu(),
        reflexive: w.is_reflexive()?,
        hl,
        kkp: Flag::from_result(kkp_check(w))?,
        unimodal: spec
            .integer_coeffs()
            .map_or(Flag::NA, |c| Flag::Value(is_unimodal(&c))),
        eq5: lower_half_nondecreasing(&spec, n)?,
        necessary_condition: Flag::from_result(hl_necessary_condition(w))?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Rows(Vec<ClassificationRow>),
    Summary(Summary),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub dim: usize,
    pub systems: usize,
    pub hl: usize,
    pub kkp: usize,
    pub unimodal: usize,
    pub eq5: usize,
    pub necessary_condition: usize,
}

pub fn cmd_enumerate(dim: usize, filter: Filter, parallel: bool) -> Result<Classification> {
    let systems = enumerate_reflexive(dim)?;
    let mut rows: Vec<ClassificationRow> = if parallel {
        systems.par_iter().map(classify).collect::<Result<_>>()?
    } else {
        systems.iter().map(classify).collect::<Result<_>>()?
    };
    rows.sort_by(|a, b| a.weights.cmp(&b.weights));
    Ok(match filter {
        Filter::All => Classification::Rows(rows),
        Filter::HlOnly => Classification::Rows(rows.into_iter().filter(|r| r.hl).collect()),
        Filter::ReflexiveSummary => {
            let count =
                |f: &dyn Fn(&ClassificationRow) -> bool| rows.iter().filter(|r| f(r)).count();
            Classification::Summary(Summary {
                dim,
                systems: rows.len(),
                hl: count(&|r| r.hl),
                kkp: count(&|r| r.kkp.is_true()),
                unimodal: count(&|r| r.unimodal.is_true()),
                eq5: count(&|r| r.eq5),
                necessary_condition: count(&|r| r.necessary_condition.is_true()),
            })
        }
    })
}

impl Classification {
    /// Semicolon-separated table with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self {
            Classification::Rows(rows) => {
                writeln!(out, "{}", TABLE_HEADER.join(";")).unwrap();
                for r in rows {
                    writeln!(out, "{}", r.cells().join(";")).unwrap();
                }
            }
            Classification::Summary(s) => {
                writeln!(out, "dim;systems;hl;kkp;unimodal;eq5;necessary_condition").unwrap();
                writeln!(
                    out,
                    "{};{};{};{};{};{};{}",
                    s.dim, s.systems, s.hl, s.kkp, s.unimodal, s.eq5, s.necessary_condition
                )
                .unwrap();
            }
        }
        out
    }

    /// Column-aligned rendering of the same table.
    pub fn to_text(&self) -> String {
        let lines: Vec<Vec<String>> = self
            .to_csv()
            .lines()
            .map(|l| l.split(';').map(str::to_string).collect())
            .collect();
        let cols = lines.first().map_or(0, Vec::len);
        let widths: Vec<usize> = (0..cols)
            .map(|c| lines.iter().map(|l| l[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for l in &lines {
            let cells: Vec<String> = l
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect();
            writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
        }
        out
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(
            w,
            "input: {} in dimension {}",
            self.input.kind, self.input.dim
        )
        .unwrap();
        for v in &self.input.vertices {
            writeln!(w, "  vertex ({})", v.join(",")).unwrap();
        }
        if let Some(q) = &self.weights {
            writeln!(w, "weights: {}", WeightSystemText(q.clone())).unwrap();
        }
        writeln!(w, "mu: {}", self.mu).unwrap();
        writeln!(w, "reflexive: {}", self.reflexive).unwrap();
        writeln!(w, "delta: ({})", self.delta_vector.join(",")).unwrap();
        writeln!(
            w,
            "spectrum: {}  [{}]",
            self.spectrum_text,
            self.spectrum_methods.join(", ")
        )
        .unwrap();
        writeln!(w, "symmetric: {}", self.symmetric).unwrap();
        writeln!(w, "unimodal: {}", self.unimodal.whole).unwrap();
        writeln!(w, "lower half nondecreasing: {}", self.unimodal.eq5).unwrap();
        for s in &self.unimodal.slices {
            let c: Vec<String> = s.coeffs.iter().map(ToString::to_string).collect();
            writeln!(
                w,
                "  slice alpha={}: ({}) unimodal={}",
                s.alpha,
                c.join(","),
                s.unimodal
            )
            .unwrap();
        }
        writeln!(w, "hl: {}", self.hl).unwrap();
        for v in &self.hl_verdicts {
            writeln!(w, "  {}: {}", v.method, v.holds).unwrap();
            for wit in &v.witnesses {
                writeln!(w, "    fails at {wit}").unwrap();
            }
        }
        writeln!(w, "kkp: {}", self.kkp).unwrap();
        writeln!(w, "necessary condition: {}", self.necessary_condition).unwrap();
        if let Some(rows) = &self.sectors {
            writeln!(w, "sectors:").unwrap();
            writeln!(
                w,
                "  {:>3}  {:>8}  {:>3}  {:>8}  {:>8}",
                "i", "f", "d", "beta", "age"
            )
            .unwrap();
            for r in rows {
                writeln!(
                    w,
                    "  {:>3}  {:>8}  {:>3}  {:>8}  {:>8}",
                    r.i, r.f, r.d, r.beta, r.age
                )
                .unwrap();
            }
        }
        if let Some(pc) = &self.payne {
            writeln!(w, "family s={} k={}:", pc.s, pc.k).unwrap();
            writeln!(w, "  closed form matches: {}", pc.closed_form_matches).unwrap();
            writeln!(w, "  unimodal: {}", pc.unimodal).unwrap();
            writeln!(w, "  unimodal iff s = 2: {}", pc.unimodal_iff_s_is_2).unwrap();
        }
        out
    }
}

/// Exit status for an error: 3 for a violated invariant, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        3
    } else {
        2
    }
}
