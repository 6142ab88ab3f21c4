//! Labeled anti-fuzzy and bipolar anti-fuzzy paths, spectra and reports.
//!
//! Vertices are numbered `1..=n` and edge `i` joins `v_i` and `v_{i+1}`, so
//! every public index in this module is 1-based. Labels are stored as
//! integer units at a single scale exponent shared by the whole labeling.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::{check_scale, NumericsError, ScaledValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    AntiFuzzy,
    Bipolar,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::AntiFuzzy => "anti-fuzzy",
            Family::Bipolar => "bipolar",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("a path needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("{sequence} has length {actual}, expected {expected}")]
    Length {
        sequence: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("{kind} index {index} is outside 1..={max}")]
    IndexOutOfRange {
        kind: &'static str,
        index: usize,
        max: usize,
    },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

fn check_len(sequence: &'static str, actual: usize, expected: usize) -> Result<(), LabelingError> {
    if actual == expected {
        Ok(())
    } else {
        Err(LabelingError::Length {
            sequence,
            expected,
            actual,
        })
    }
}

fn edge_index(i: usize, n: usize) -> Result<usize, LabelingError> {
    if (1..n).contains(&i) {
        Ok(i - 1)
    } else {
        Err(LabelingError::IndexOutOfRange {
            kind: "edge",
            index: i,
            max: n - 1,
        })
    }
}

fn triple_sum(a: i64, b: i64, c: i64) -> Result<i64, NumericsError> {
    a.checked_add(b)
        .and_then(|s| s.checked_add(c))
        .ok_or(NumericsError::Overflow)
}

/// Vertex labels `σ` and edge labels `μ` on the path `P_n`.
///
/// Construction checks the shape only. Whether the labels are valid
/// membership degrees is a verification question (see
/// [`crate::verification::check_anti_fuzzy`]), so that malformed inputs can
/// be loaded and reported on rather than rejected outright.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathLabeling {
    scale_exp: u32,
    sigma: Vec<i64>,
    mu: Vec<i64>,
}

impl PathLabeling {
    pub fn new(scale_exp: u32, sigma: Vec<i64>, mu: Vec<i64>) -> Result<Self, LabelingError> {
        check_scale(scale_exp)?;
        let n = sigma.len();
        if n < 2 {
            return Err(LabelingError::TooFewVertices(n));
        }
        check_len("mu", mu.len(), n - 1)?;
        Ok(Self {
            scale_exp,
            sigma,
            mu,
        })
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn scale_exp(&self) -> u32 {
        self.scale_exp
    }

    pub fn sigma_units(&self) -> &[i64] {
        &self.sigma
    }

    pub fn mu_units(&self) -> &[i64] {
        &self.mu
    }

    pub fn sigma(&self) -> impl Iterator<Item = ScaledValue> + '_ {
        self.sigma
            .iter()
            .map(|&u| ScaledValue::from_parts(u, self.scale_exp))
    }

    pub fn mu(&self) -> impl Iterator<Item = ScaledValue> + '_ {
        self.mu
            .iter()
            .map(|&u| ScaledValue::from_parts(u, self.scale_exp))
    }

    /// `σ(v_i) + μ(v_i v_{i+1}) + σ(v_{i+1})` for edge `i`.
    pub fn edge_sum(&self, i: usize) -> Result<ScaledValue, LabelingError> {
        let e = edge_index(i, self.n())?;
        let units = triple_sum(self.sigma[e], self.mu[e], self.sigma[e + 1])?;
        Ok(ScaledValue::from_parts(units, self.scale_exp))
    }

    /// All edge sums in units, edge 1 first.
    pub fn edge_sum_units(&self) -> Result<Vec<i64>, LabelingError> {
        (0..self.mu.len())
            .map(|e| Ok(triple_sum(self.sigma[e], self.mu[e], self.sigma[e + 1])?))
            .collect()
    }

    /// Copy with edge `i` shifted by `delta` units.
    pub fn with_edge_shift(&self, i: usize, delta: i64) -> Result<Self, LabelingError> {
        let e = edge_index(i, self.n())?;
        let mut out = self.clone();
        out.mu[e] = out.mu[e]
            .checked_add(delta)
            .ok_or(NumericsError::Overflow)?;
        Ok(out)
    }
}

/// Positive and negative labels on `P_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipolarPathLabeling {
    scale_exp: u32,
    sigma_p: Vec<i64>,
    sigma_n: Vec<i64>,
    mu_p: Vec<i64>,
    mu_n: Vec<i64>,
}

impl BipolarPathLabeling {
    pub fn new(
        scale_exp: u32,
        sigma_p: Vec<i64>,
        sigma_n: Vec<i64>,
        mu_p: Vec<i64>,
        mu_n: Vec<i64>,
    ) -> Result<Self, LabelingError> {
        check_scale(scale_exp)?;
        let n = sigma_p.len();
        if n < 2 {
            return Err(LabelingError::TooFewVertices(n));
        }
        check_len("sigma_n", sigma_n.len(), n)?;
        check_len("mu_p", mu_p.len(), n - 1)?;
        check_len("mu_n", mu_n.len(), n - 1)?;
        Ok(Self {
            scale_exp,
            sigma_p,
            sigma_n,
            mu_p,
            mu_n,
        })
    }

    /// Builds the labeling whose negative channel is the exact negation of
    /// the positive one.
    pub fn mirrored(
        scale_exp: u32,
        sigma_p: Vec<i64>,
        mu_p: Vec<i64>,
    ) -> Result<Self, LabelingError> {
        let negate = |xs: &[i64]| -> Result<Vec<i64>, NumericsError> {
            xs.iter()
                .map(|x| x.checked_neg().ok_or(NumericsError::Overflow))
                .collect()
        };
        let sigma_n = negate(&sigma_p)?;
        let mu_n = negate(&mu_p)?;
        Self::new(scale_exp, sigma_p, sigma_n, mu_p, mu_n)
    }

    pub fn n(&self) -> usize {
        self.sigma_p.len()
    }

    pub fn scale_exp(&self) -> u32 {
        self.scale_exp
    }

    pub fn sigma_p_units(&self) -> &[i64] {
        &self.sigma_p
    }

    pub fn sigma_n_units(&self) -> &[i64] {
        &self.sigma_n
    }

    pub fn mu_p_units(&self) -> &[i64] {
        &self.mu_p
    }

    pub fn mu_n_units(&self) -> &[i64] {
        &self.mu_n
    }

    /// `(positive sum, negative sum)` for edge `i`.
    pub fn bipolar_edge_sums(&self, i: usize) -> Result<(ScaledValue, ScaledValue), LabelingError> {
        let e = edge_index(i, self.n())?;
        let pos = triple_sum(self.sigma_p[e], self.mu_p[e], self.sigma_p[e + 1])?;
        let neg = triple_sum(self.sigma_n[e], self.mu_n[e], self.sigma_n[e + 1])?;
        Ok((
            ScaledValue::from_parts(pos, self.scale_exp),
            ScaledValue::from_parts(neg, self.scale_exp),
        ))
    }

    pub fn positive_sum_units(&self) -> Result<Vec<i64>, LabelingError> {
        (0..self.mu_p.len())
            .map(|e| {
                Ok(triple_sum(
                    self.sigma_p[e],
                    self.mu_p[e],
                    self.sigma_p[e + 1],
                )?)
            })
            .collect()
    }

    pub fn negative_sum_units(&self) -> Result<Vec<i64>, LabelingError> {
        (0..self.mu_n.len())
            .map(|e| {
                Ok(triple_sum(
                    self.sigma_n[e],
                    self.mu_n[e],
                    self.sigma_n[e + 1],
                )?)
            })
            .collect()
    }

    /// Copy with the positive label of edge `i` shifted by `delta` units.
    pub fn with_positive_edge_shift(&self, i: usize, delta: i64) -> Result<Self, LabelingError> {
        let e = edge_index(i, self.n())?;
        let mut out = self.clone();
        out.mu_p[e] = out.mu_p[e]
            .checked_add(delta)
            .ok_or(NumericsError::Overflow)?;
        Ok(out)
    }

    /// Copy with the negative label of edge `i` shifted by `delta` units.
    pub fn with_negative_edge_shift(&self, i: usize, delta: i64) -> Result<Self, LabelingError> {
        let e = edge_index(i, self.n())?;
        let mut out = self.clone();
        out.mu_n[e] = out.mu_n[e]
            .checked_add(delta)
            .ok_or(NumericsError::Overflow)?;
        Ok(out)
    }
}

/// Either kind of labeled path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Labeling {
    AntiFuzzy(PathLabeling),
    Bipolar(BipolarPathLabeling),
}

impl Labeling {
    pub fn family(&self) -> Family {
        match self {
            Labeling::AntiFuzzy(_) => Family::AntiFuzzy,
            Labeling::Bipolar(_) => Family::Bipolar,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Labeling::AntiFuzzy(l) => l.n(),
            Labeling::Bipolar(l) => l.n(),
        }
    }

    pub fn scale_exp(&self) -> u32 {
        match self {
            Labeling::AntiFuzzy(l) => l.scale_exp(),
            Labeling::Bipolar(l) => l.scale_exp(),
        }
    }

    /// Largest absolute label in units.
    pub fn max_abs_units(&self) -> i64 {
        let all: Vec<&[i64]> = match self {
            Labeling::AntiFuzzy(l) => vec![l.sigma_units(), l.mu_units()],
            Labeling::Bipolar(l) => vec![
                l.sigma_p_units(),
                l.sigma_n_units(),
                l.mu_p_units(),
                l.mu_n_units(),
            ],
        };
        all.iter()
            .flat_map(|xs| xs.iter())
            .map(|x| x.saturating_abs())
            .max()
            .unwrap_or(0)
    }
}

impl From<PathLabeling> for Labeling {
    fn from(l: PathLabeling) -> Self {
        Labeling::AntiFuzzy(l)
    }
}

impl From<BipolarPathLabeling> for Labeling {
    fn from(l: BipolarPathLabeling) -> Self {
        Labeling::Bipolar(l)
    }
}

/// Distinct edge-sum constants `k_1 < … < k_m` and which edge attains which.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MagicSpectrum {
    pub constants: Vec<ScaledValue>,
    /// 1-based constant index for each edge, edge 1 first.
    pub assignment: Vec<usize>,
    /// Number of edges attaining each constant.
    pub block_sizes: Vec<usize>,
}

impl MagicSpectrum {
    pub fn len(&self) -> usize {
        self.constants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constants.is_empty()
    }
}

/// Spectrum of an anti-fuzzy labeling, or both channels of a bipolar one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Spectrum {
    AntiFuzzy {
        spectrum: MagicSpectrum,
    },
    Bipolar {
        positive: MagicSpectrum,
        negative: MagicSpectrum,
    },
}

impl Spectrum {
    /// The anti-fuzzy spectrum, or the positive channel of a bipolar one.
    pub fn primary(&self) -> &MagicSpectrum {
        match self {
            Spectrum::AntiFuzzy { spectrum } => spectrum,
            Spectrum::Bipolar { positive, .. } => positive,
        }
    }

    pub fn len(&self) -> usize {
        self.primary().len()
    }

    pub fn is_empty(&self) -> bool {
        self.primary().is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    #[serde(rename = "case1-m-even")]
    Case1MEven,
    #[serde(rename = "case1-m-odd")]
    Case1MOdd,
    #[serde(rename = "case2-m-odd")]
    Case2MOdd,
    NotApplicable,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Case1MEven => "case1-m-even",
            CaseTag::Case1MOdd => "case1-m-odd",
            CaseTag::Case2MOdd => "case2-m-odd",
            CaseTag::NotApplicable => "not-applicable",
        })
    }
}

/// Verdict of the admissibility rule for a `(family, n, m)` query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub admissible: bool,
    pub case_tag: CaseTag,
    /// `a` in `n = 2m + 1 + m·a` when admissible.
    pub a: Option<usize>,
    /// `m < 3`: the block construction still applies but lies outside the
    /// `m > 2` range the construction was stated for.
    pub extension: bool,
    pub reason: String,
}

/// Where a violation was observed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Site {
    Vertex(usize),
    Edge(usize),
    Labeling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// Positive label outside `(0, 1]` or negative label outside `[-1, 0)`.
    LabelRange,
    /// `μ(v_i v_{i+1}) >= max(σ(v_i), σ(v_{i+1}))`.
    AntiFuzzy,
    /// `μ^P >= max` of the positive endpoint labels.
    BipolarPositive,
    /// `μ^N <= min` of the negative endpoint labels.
    BipolarNegative,
    /// Number of distinct edge-sum constants differs from the expected `m`.
    ConstantCount,
    /// Constants do not occupy equal consecutive blocks of edges.
    BlockStructure,
    /// Negative edge sums are not the negation of the positive ones.
    ChannelMismatch,
    /// Extracted constants differ from the closed-form values.
    Conformance,
    /// Arithmetic on the stored units overflowed.
    Overflow,
    /// The oracle did not reach the labeling under test.
    OracleMiss,
    /// The generator refused the parameters.
    Generator,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub site: Site,
    pub condition: Condition,
    pub observed: Vec<ScaledValue>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Violation {
    pub fn new(site: Site, condition: Condition, observed: Vec<ScaledValue>) -> Self {
        Self {
            site,
            condition,
            observed,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// Outcome of a checker; `passed` holds exactly when `violations` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn pass() -> Self {
        Self::from_violations(Vec::new())
    }

    pub fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            passed: violations.is_empty(),
            violations,
        }
    }

    pub fn merge(mut self, other: CheckReport) -> Self {
        self.violations.extend(other.violations);
        self.passed = self.violations.is_empty();
        self
    }

    pub fn has(&self, site: Site, condition: Condition) -> bool {
        self.violations
            .iter()
            .any(|v| v.site == site && v.condition == condition)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn magic_path5() -> PathLabeling {
        PathLabeling::new(2, vec![1, 2, 3, 4, 5], vec![12, 10, 8, 6]).unwrap()
    }

    fn four_block9() -> PathLabeling {
        PathLabeling::new(2, (1..=9).collect(), vec![26, 24, 25, 23, 25, 23, 23, 21]).unwrap()
    }

    fn bipolar_four_block9() -> BipolarPathLabeling {
        BipolarPathLabeling::mirrored(
            2,
            vec![1, 4, 5, 8, 9, 12, 13, 16, 17],
            vec![49, 45, 49, 45, 49, 45, 49, 45],
        )
        .unwrap()
    }

    #[test]
    fn edge_sum_examples() {
        assert_eq!(magic_path5().edge_sum(1).unwrap().to_string(), "0.15");
        // Table sum 0.08 + 0.21 + 0.09; the prose value 0.36 is a misprint.
        assert_eq!(four_block9().edge_sum(8).unwrap().to_string(), "0.38");
        let half = PathLabeling::new(2, vec![50, 50], vec![50]).unwrap();
        assert_eq!(half.edge_sum(1).unwrap().to_string(), "1.50");
    }

    #[test]
    fn bipolar_edge_sum_examples() {
        let l = bipolar_four_block9();
        let (p, n) = l.bipolar_edge_sums(1).unwrap();
        assert_eq!(
            (p.to_string(), n.to_string()),
            ("0.54".into(), "-0.54".into())
        );
        let (p, n) = l.bipolar_edge_sums(7).unwrap();
        assert_eq!(
            (p.to_string(), n.to_string()),
            ("0.78".into(), "-0.78".into())
        );
    }

    #[test]
    fn index_errors() {
        let l = magic_path5();
        assert!(matches!(
            l.edge_sum(0),
            Err(LabelingError::IndexOutOfRange {
                index: 0,
                max: 4,
                ..
            })
        ));
        assert!(l.edge_sum(5).is_err());
        assert!(bipolar_four_block9().bipolar_edge_sums(9).is_err());
    }

    #[test]
    fn shape_errors() {
        assert_eq!(
            PathLabeling::new(2, vec![1], vec![]),
            Err(LabelingError::TooFewVertices(1))
        );
        assert!(matches!(
            PathLabeling::new(2, vec![1, 2, 3], vec![5]),
            Err(LabelingError::Length { .. })
        ));
        assert!(PathLabeling::new(0, vec![1, 2], vec![5]).is_err());
        assert!(BipolarPathLabeling::new(2, vec![1, 2], vec![-1], vec![3], vec![-3]).is_err());
    }

    #[test]
    fn report_passed_tracks_violations() {
        let r = CheckReport::pass();
        assert!(r.passed);
        let r = r.merge(CheckReport::from_violations(vec![Violation::new(
            Site::Edge(1),
            Condition::AntiFuzzy,
            vec![],
        )]));
        assert!(!r.passed);
        assert!(r.has(Site::Edge(1), Condition::AntiFuzzy));
    }

    proptest! {
        #[test]
        fn mirror_sums_negate(sigma in proptest::collection::vec(1i64..100, 2..12), seed in proptest::collection::vec(1i64..100, 11)) {
            let mu = seed[..sigma.len() - 1].to_vec();
            let l = BipolarPathLabeling::mirrored(2, sigma, mu).unwrap();
            for i in 1..l.n() {
                let (p, n) = l.bipolar_edge_sums(i).unwrap();
                prop_assert_eq!(p.checked_neg().unwrap(), n);
            }
        }

        #[test]
        fn edge_sums_agree(sigma in proptest::collection::vec(0i64..1000, 2..12), seed in proptest::collection::vec(0i64..1000, 11)) {
            let mu = seed[..sigma.len() - 1].to_vec();
            let l = PathLabeling::new(3, sigma, mu).unwrap();
            let all = l.edge_sum_units().unwrap();
            for i in (1..l.n()).rev() {
                prop_assert_eq!(l.edge_sum(i).unwrap().units(), all[i - 1]);
            }
        }
    }
}
