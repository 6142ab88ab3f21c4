//! Serialized forms: labeling JSON, generate documents, text tables, DOT
//! drawings, sweep CSV and oracle JSON-lines.
//!
//! Labeling files store integer `units` arrays next to a `decimals` block
//! for human readers. The units are authoritative; when a `decimals` block
//! is present it must agree with them digit for digit.

use std::io::Write;
use std::ops::{ControlFlow, RangeInclusive};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::constructions::{Construction, ConstructionError, ConstructionKind};
use crate::model::{
    AdmissibilityReport, BipolarPathLabeling, CheckReport, Labeling, LabelingError, PathLabeling,
    Site, Spectrum,
};
use crate::numerics::{resolve_scale, scale_band, NumericsError, ScaledValue};
use crate::oracle::{
    search_with, witness_labeling, OracleError, SearchLimits, SearchParams, Verdict,
};
use crate::verification::{conformance, extract_spectrum, verify_m_magic, SpectrumMode};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid labeling: {0}")]
    Labeling(#[from] LabelingError),
    #[error("scale mismatch: {0}")]
    ScaleMismatch(String),
    #[error("declared n = {declared} but the sequences describe n = {actual}")]
    VertexCount { declared: usize, actual: usize },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Sweep(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntiFuzzyDecimals {
    pub sigma: Vec<String>,
    pub mu: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipolarDecimals {
    pub sigma_p: Vec<String>,
    pub sigma_n: Vec<String>,
    pub mu_p: Vec<String>,
    pub mu_n: Vec<String>,
}

/// On-disk labeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum LabelingDoc {
    #[serde(rename = "anti-fuzzy-path")]
    AntiFuzzy {
        n: usize,
        scale_exp: u32,
        sigma: Vec<i64>,
        mu: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        decimals: Option<AntiFuzzyDecimals>,
    },
    #[serde(rename = "bipolar-anti-fuzzy-path")]
    Bipolar {
        n: usize,
        scale_exp: u32,
        sigma_p: Vec<i64>,
        sigma_n: Vec<i64>,
        mu_p: Vec<i64>,
        mu_n: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        decimals: Option<BipolarDecimals>,
    },
}

fn decimals(units: &[i64], p: u32) -> Vec<String> {
    units
        .iter()
        .map(|&u| ScaledValue::from_parts(u, p).to_decimal_string())
        .collect()
}

fn check_decimals(name: &str, text: &[String], units: &[i64], p: u32) -> Result<(), IoError> {
    if text.len() != units.len() {
        return Err(IoError::ScaleMismatch(format!(
            "decimals.{name} has {} entries, units have {}",
            text.len(),
            units.len()
        )));
    }
    for (idx, (t, &u)) in text.iter().zip(units).enumerate() {
        let parsed = ScaledValue::parse_at(t, p).map_err(|e| match e {
            NumericsError::MixedScale { .. } => IoError::ScaleMismatch(format!(
                "decimals.{name}[{idx}] = {t:?} does not have {p} fraction digits"
            )),
            other => IoError::ScaleMismatch(format!("decimals.{name}[{idx}]: {other}")),
        })?;
        if parsed.units() != u {
            return Err(IoError::ScaleMismatch(format!(
                "decimals.{name}[{idx}] = {t:?} disagrees with units {u}"
            )));
        }
    }
    Ok(())
}

impl LabelingDoc {
    pub fn from_labeling(labeling: &Labeling) -> Self {
        let p = labeling.scale_exp();
        match labeling {
            Labeling::AntiFuzzy(l) => LabelingDoc::AntiFuzzy {
                n: l.n(),
                scale_exp: p,
                sigma: l.sigma_units().to_vec(),
                mu: l.mu_units().to_vec(),
                decimals: Some(AntiFuzzyDecimals {
                    sigma: decimals(l.sigma_units(), p),
                    mu: decimals(l.mu_units(), p),
                }),
            },
            Labeling::Bipolar(l) => LabelingDoc::Bipolar {
                n: l.n(),
                scale_exp: p,
                sigma_p: l.sigma_p_units().to_vec(),
                sigma_n: l.sigma_n_units().to_vec(),
                mu_p: l.mu_p_units().to_vec(),
                mu_n: l.mu_n_units().to_vec(),
                decimals: Some(BipolarDecimals {
                    sigma_p: decimals(l.sigma_p_units(), p),
                    sigma_n: decimals(l.sigma_n_units(), p),
                    mu_p: decimals(l.mu_p_units(), p),
                    mu_n: decimals(l.mu_n_units(), p),
                }),
            },
        }
    }

    pub fn into_labeling(self) -> Result<Labeling, IoError> {
        let labeling: Labeling = match self {
            LabelingDoc::AntiFuzzy {
                n,
                scale_exp,
                sigma,
                mu,
                decimals,
            } => {
                if n != sigma.len() {
                    return Err(IoError::VertexCount {
                        declared: n,
                        actual: sigma.len(),
                    });
                }
                let l = PathLabeling::new(scale_exp, sigma, mu)?;
                if let Some(d) = decimals {
                    check_decimals("sigma", &d.sigma, l.sigma_units(), scale_exp)?;
                    check_decimals("mu", &d.mu, l.mu_units(), scale_exp)?;
                }
                l.into()
            }
            LabelingDoc::Bipolar {
                n,
                scale_exp,
                sigma_p,
                sigma_n,
                mu_p,
                mu_n,
                decimals,
            } => {
                if n != sigma_p.len() {
                    return Err(IoError::VertexCount {
                        declared: n,
                        actual: sigma_p.len(),
                    });
                }
                let l = BipolarPathLabeling::new(scale_exp, sigma_p, sigma_n, mu_p, mu_n)?;
                if let Some(d) = decimals {
                    check_decimals("sigma_p", &d.sigma_p, l.sigma_p_units(), scale_exp)?;
                    check_decimals("sigma_n", &d.sigma_n, l.sigma_n_units(), scale_exp)?;
                    check_decimals("mu_p", &d.mu_p, l.mu_p_units(), scale_exp)?;
                    check_decimals("mu_n", &d.mu_n, l.mu_n_units(), scale_exp)?;
                }
                l.into()
            }
        };
        Ok(labeling)
    }
}

pub fn labeling_to_json(labeling: &Labeling) -> String {
    serde_json::to_string_pretty(&LabelingDoc::from_labeling(labeling))
        .expect("labeling serializes")
}

/// Reads a labeling file or a generate document (which nests the labeling
/// under `"labeling"`).
pub fn labeling_from_json(text: &str) -> Result<Labeling, IoError> {
    let mut value: Value = serde_json::from_str(text)?;
    if let Some(inner) = value.get_mut("labeling") {
        value = inner.take();
    }
    let doc: LabelingDoc = serde_json::from_value(value)?;
    doc.into_labeling()
}

/// Everything `generate` reports about one construction run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerateDocument {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub scale_exp: u32,
    pub admissibility: AdmissibilityReport,
    pub labeling: LabelingDoc,
    /// Lax spectrum; absent when the edge sums cannot be extracted.
    pub spectrum: Option<Spectrum>,
    pub mode: SpectrumMode,
    pub verification: CheckReport,
    pub conformance: CheckReport,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenerateOutcome {
    Inadmissible(AdmissibilityReport),
    Generated(Box<GenerateDocument>),
}

/// Admissibility, scale selection, generation, then verification and
/// conformance of the result.
pub fn run_generate(
    construction: Construction,
    n: usize,
    scale_override: Option<u32>,
    mode: SpectrumMode,
) -> Result<GenerateOutcome, ConstructionError> {
    let admissibility = construction.admissibility(n);
    if !admissibility.admissible {
        return Ok(GenerateOutcome::Inadmissible(admissibility));
    }
    let p = match scale_override {
        Some(p) => resolve_scale(n, construction.m(), construction.family(), Some(p))?,
        None => scale_band(n, construction.family()),
    };
    let labeling = construction.generate(n, p)?;
    let verification = verify_m_magic(&labeling, construction.m(), mode);
    let conformance = conformance(&labeling, construction);
    let spectrum = extract_spectrum(&labeling, SpectrumMode::Lax).ok();
    let passed = verification.passed && conformance.passed;
    Ok(GenerateOutcome::Generated(Box::new(GenerateDocument {
        family: construction.kind().name().to_string(),
        n,
        m: construction.m(),
        scale_exp: p,
        admissibility,
        labeling: LabelingDoc::from_labeling(&labeling),
        spectrum,
        mode,
        verification,
        conformance,
        passed,
    })))
}

fn site_text(site: Site) -> String {
    match site {
        Site::Vertex(i) => format!("vertex {i}"),
        Site::Edge(i) => format!("edge {i}"),
        Site::Labeling => "labeling".to_string(),
    }
}

/// One line per violation, e.g. `edge 8 anti-fuzzy: 0.08 0.09`.
pub fn describe_report(report: &CheckReport) -> Vec<String> {
    report
        .violations
        .iter()
        .map(|v| {
            let cond = serde_json::to_value(v.condition)
                .ok()
                .and_then(|c| c.as_str().map(str::to_string))
                .unwrap_or_default();
            let mut line = format!("{} {cond}:", site_text(v.site));
            for value in &v.observed {
                line.push(' ');
                line.push_str(&value.to_string());
            }
            if !v.detail.is_empty() {
                line.push_str(&format!(" ({})", v.detail));
            }
            line
        })
        .collect()
}

fn table_rows(rows: &[(String, Vec<String>)]) -> String {
    let width = rows
        .iter()
        .flat_map(|(head, cells)| std::iter::once(head).chain(cells))
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for (head, cells) in rows {
        let mut line = format!("{head:<width$}");
        for c in cells {
            line.push_str(&format!("  {c:<width$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn joined(values: &[ScaledValue]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Plain-text rendering in the layout of the worked examples: a vertex
/// table, an edge table and the constants line.
pub fn render_table(doc: &GenerateDocument) -> Result<String, IoError> {
    let labeling = doc.labeling.clone().into_labeling()?;
    let n = labeling.n();
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges: Vec<String> = (1..n).map(|i| format!("v{i}v{}", i + 1)).collect();
    let p = labeling.scale_exp();
    let mut out = format!(
        "family: {}  n = {}  m = {}  scale_exp = {}  case = {}{}\n",
        doc.family,
        doc.n,
        doc.m,
        doc.scale_exp,
        doc.admissibility.case_tag,
        if doc.admissibility.extension {
            "  (extension)"
        } else {
            ""
        }
    );
    match &labeling {
        Labeling::AntiFuzzy(l) => {
            out.push_str(&table_rows(&[
                (String::new(), vertices),
                ("sigma".into(), decimals(l.sigma_units(), p)),
            ]));
            out.push('\n');
            out.push_str(&table_rows(&[
                (String::new(), edges),
                ("mu".into(), decimals(l.mu_units(), p)),
            ]));
        }
        Labeling::Bipolar(l) => {
            out.push_str(&table_rows(&[
                (String::new(), vertices),
                ("sigma+".into(), decimals(l.sigma_p_units(), p)),
                ("sigma-".into(), decimals(l.sigma_n_units(), p)),
            ]));
            out.push('\n');
            out.push_str(&table_rows(&[
                (String::new(), edges),
                ("mu+".into(), decimals(l.mu_p_units(), p)),
                ("mu-".into(), decimals(l.mu_n_units(), p)),
            ]));
        }
    }
    out.push('\n');
    match &doc.spectrum {
        Some(Spectrum::AntiFuzzy { spectrum }) => {
            out.push_str(&format!("constants: {}\n", joined(&spectrum.constants)));
        }
        Some(Spectrum::Bipolar { positive, negative }) => {
            out.push_str(&format!("constants+: {}\n", joined(&positive.constants)));
            let mut neg = negative.constants.clone();
            neg.reverse();
            out.push_str(&format!("constants-: {}\n", joined(&neg)));
        }
        None => out.push_str("constants: unavailable\n"),
    }
    for (name, report) in [
        ("verification", &doc.verification),
        ("conformance", &doc.conformance),
    ] {
        out.push_str(&format!(
            "{name}: {}\n",
            if report.passed { "pass" } else { "FAIL" }
        ));
        for line in describe_report(report) {
            out.push_str(&format!("  {line}\n"));
        }
    }
    Ok(out)
}

/// Undirected DOT drawing of the labeled path, laid out left to right.
pub fn render_dot(labeling: &Labeling) -> String {
    let p = labeling.scale_exp();
    let d = |u: i64| ScaledValue::from_parts(u, p).to_string();
    let mut out = String::from("graph path {\n    rankdir=LR;\n    node [shape=ellipse];\n");
    let n = labeling.n();
    for i in 0..n {
        let label = match labeling {
            Labeling::AntiFuzzy(l) => format!("v{} σ={}", i + 1, d(l.sigma_units()[i])),
            Labeling::Bipolar(l) => format!(
                "v{} σP/σN={}/{}",
                i + 1,
                d(l.sigma_p_units()[i]),
                d(l.sigma_n_units()[i])
            ),
        };
        out.push_str(&format!("    v{} [label=\"{label}\"];\n", i + 1));
    }
    for e in 0..n - 1 {
        let label = match labeling {
            Labeling::AntiFuzzy(l) => format!("μ={}", d(l.mu_units()[e])),
            Labeling::Bipolar(l) => {
                format!("μP/μN={}/{}", d(l.mu_p_units()[e]), d(l.mu_n_units()[e]))
            }
        };
        out.push_str(&format!(
            "    v{} -- v{} [label=\"{label}\"];\n",
            e + 1,
            e + 2
        ));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub a: usize,
    pub scale_exp: Option<u32>,
    /// Semicolon-joined constants (positive channel for bipolar).
    pub constants: String,
    pub passed: bool,
}

/// Runs the block construction for every `m` in `m_range` and `a` in
/// `a_range` with `n = 2m + 1 + m·a`. Rows come out sorted by `(m, n)`.
pub fn sweep(
    kind: ConstructionKind,
    m_range: RangeInclusive<usize>,
    a_range: RangeInclusive<usize>,
    mode: SpectrumMode,
) -> Result<Vec<SweepRow>, IoError> {
    if kind.fixed_m().is_some() {
        return Err(IoError::Sweep(format!(
            "sweep needs a family with variable m, got {kind}"
        )));
    }
    if m_range.is_empty() || a_range.is_empty() || *m_range.start() == 0 {
        return Err(IoError::Sweep("empty sweep range".into()));
    }
    let mut rows = Vec::new();
    for m in m_range {
        for a in a_range.clone() {
            let n = 2 * m + 1 + m * a;
            let construction = kind.with_m(Some(m))?;
            let row = match run_generate(construction, n, None, mode) {
                Ok(GenerateOutcome::Generated(doc)) => SweepRow {
                    family: kind.name().to_string(),
                    n,
                    m,
                    a,
                    scale_exp: Some(doc.scale_exp),
                    constants: doc
                        .spectrum
                        .as_ref()
                        .map(|s| {
                            s.primary()
                                .constants
                                .iter()
                                .map(|c| c.to_string())
                                .collect::<Vec<_>>()
                                .join(";")
                        })
                        .unwrap_or_default(),
                    passed: doc.passed,
                },
                Ok(GenerateOutcome::Inadmissible(_)) | Err(_) => SweepRow {
                    family: kind.name().to_string(),
                    n,
                    m,
                    a,
                    scale_exp: None,
                    constants: String::new(),
                    passed: false,
                },
            };
            rows.push(row);
        }
    }
    rows.sort_by_key(|r| (r.m, r.n));
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], writer: W) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Summary line closing an oracle JSON-lines stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub verdict: Verdict,
    pub witnesses: u64,
    pub n: usize,
    pub m: usize,
    pub grid: i64,
    pub mode: SpectrumMode,
}

/// Streams up to `params.limit` witnesses as one JSON labeling per line,
/// then a summary line.
pub fn stream_oracle<W: Write>(
    params: &SearchParams,
    limits: &SearchLimits,
    mut out: W,
) -> Result<OracleSummary, IoError> {
    let mut written = 0u64;
    let mut failure: Option<IoError> = None;
    search_with(params, limits, |sigma, mu| {
        let line = witness_labeling(params.family, params.scale_exp, sigma, mu)
            .map_err(IoError::from)
            .and_then(|l| {
                let doc = LabelingDoc::from_labeling(&l);
                Ok(serde_json::to_string(&doc)?)
            })
            .and_then(|text| Ok(writeln!(out, "{text}")?));
        if let Err(err) = line {
            failure = Some(err);
            return ControlFlow::Break(());
        }
        written += 1;
        if written >= params.limit as u64 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    if let Some(err) = failure {
        return Err(err);
    }
    let summary = OracleSummary {
        verdict: if written > 0 {
            Verdict::Found
        } else {
            Verdict::ExhaustedNone
        },
        witnesses: written,
        n: params.n,
        m: params.m,
        grid: params.grid,
        mode: params.mode,
    };
    writeln!(out, "{}", serde_json::to_string(&summary)?)?;
    Ok(summary)
}
