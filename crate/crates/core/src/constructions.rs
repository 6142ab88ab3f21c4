//! Closed-form labelings of anti-fuzzy and bipolar anti-fuzzy paths.
//!
//! All generators put `σ(v_i) = i·d` (or the alternating `2i-1, 2i` rule for
//! the bipolar family) on the vertices and choose edge labels so that every
//! edge of a block hits the same sum. The `n - 1` edges are split into `m`
//! consecutive blocks of `(n - 1) / m` edges; this is why admissibility asks
//! for `m | n - 1`.
//!
//! Generators never clamp: a label outside the unit interval at the chosen
//! scale is an error.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    AdmissibilityReport, BipolarPathLabeling, CaseTag, CheckReport, Family, Labeling,
    LabelingError, PathLabeling, Site,
};
use crate::numerics::{check_scale, unit_one, NumericsError};
use crate::verification::check_anti_fuzzy;

/// Generators refuse paths longer than this.
pub const MAX_VERTICES: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("label {units} at {site:?} is outside the membership range at scale 10^-{scale_exp}")]
    LabelOutOfRange {
        site: Site,
        units: i64,
        scale_exp: u32,
    },
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Offsets `c_1 … c_m` of the anti-fuzzy block formula
/// `μ(v_i v_{i+1}) = (3n - 2i + c_k)·d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffsetTable {
    offsets: Vec<i64>,
}

impl OffsetTable {
    pub fn new(m: usize) -> Result<Self, ConstructionError> {
        let offsets = (1..=m).map(|k| offset_c(k, m)).collect::<Result<_, _>>()?;
        Ok(Self { offsets })
    }

    pub fn m(&self) -> usize {
        self.offsets.len()
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    /// `c_k` for 1-based `k`.
    pub fn get(&self, k: usize) -> Option<i64> {
        k.checked_sub(1).and_then(|i| self.offsets.get(i).copied())
    }
}

/// `c_1 = 1`, `c_2 = 4`, `c_k = 2k + 2` for `k >= 3`.
pub fn offset_c(k: usize, m: usize) -> Result<i64, ConstructionError> {
    if k == 0 || k > m {
        return Err(ConstructionError::InvalidParameter(format!(
            "block index {k} is outside 1..={m}"
        )));
    }
    Ok(match k {
        1 => 1,
        2 => 4,
        k => 2 * k as i64 + 2,
    })
}

/// The arithmetic rule `n >= 2m + 1` and `n ≡ 1 (mod m)`, plus the case tag
/// the bipolar construction is filed under.
pub fn admissible(n: usize, m: usize, family: Family) -> AdmissibilityReport {
    let mut report = AdmissibilityReport {
        family,
        n,
        m,
        admissible: false,
        case_tag: CaseTag::NotApplicable,
        a: None,
        extension: (1..3).contains(&m),
        reason: String::new(),
    };
    if n < 2 || m < 1 {
        report.reason = format!("need n >= 2 and m >= 1, got n = {n}, m = {m}");
        return report;
    }
    if !(n - 1).is_multiple_of(m) {
        report.reason = format!(
            "n ≢ 1 (mod m) (n - 1 = {} leaves remainder {})",
            n - 1,
            (n - 1) % m
        );
        return report;
    }
    if n < 2 * m + 1 {
        report.reason = format!("n < 2m + 1 ({n} < {})", 2 * m + 1);
        return report;
    }
    report.admissible = true;
    report.a = Some((n - 2 * m - 1) / m);
    if family == Family::Bipolar {
        report.case_tag = if m.is_multiple_of(2) {
            CaseTag::Case1MEven
        } else if n % (2 * m) == 1 % (2 * m) {
            CaseTag::Case1MOdd
        } else {
            // m odd and m | n - 1 leave n ≡ m + 1 (mod 2m); n ≠ m + 1 holds
            // because n >= 2m + 1.
            CaseTag::Case2MOdd
        };
    }
    report.reason = format!("n = 2m + 1 + m·a with a = {}", report.a.unwrap_or(0));
    report
}

/// 1-based block index of edge `i`: `⌈i·m / (n - 1)⌉`.
pub fn block_of_edge(i: usize, n: usize, m: usize) -> Result<usize, ConstructionError> {
    if n < 2 || !(1..n).contains(&i) {
        return Err(ConstructionError::InvalidParameter(format!(
            "edge {i} is outside 1..={}",
            n.saturating_sub(1)
        )));
    }
    if m == 0 || !(n - 1).is_multiple_of(m) {
        return Err(ConstructionError::InvalidParameter(format!(
            "{m} blocks do not split {} edges evenly",
            n - 1
        )));
    }
    Ok((i * m).div_ceil(n - 1))
}

fn require_admissible(n: usize, m: usize, family: Family) -> Result<(), ConstructionError> {
    check_size(n, m)?;
    let report = admissible(n, m, family);
    if report.admissible {
        Ok(())
    } else {
        Err(ConstructionError::Inadmissible(report.reason))
    }
}

fn check_size(n: usize, m: usize) -> Result<(), ConstructionError> {
    if n > MAX_VERTICES || m > MAX_VERTICES {
        return Err(ConstructionError::InvalidParameter(format!(
            "n and m are limited to {MAX_VERTICES}"
        )));
    }
    Ok(())
}

fn ensure_positive(
    units: &[i64],
    site: fn(usize) -> Site,
    p: u32,
) -> Result<(), ConstructionError> {
    let one = unit_one(p)?;
    match units.iter().position(|&u| u <= 0 || u > one) {
        None => Ok(()),
        Some(idx) => Err(ConstructionError::LabelOutOfRange {
            site: site(idx + 1),
            units: units[idx],
            scale_exp: p,
        }),
    }
}

fn ensure_negative(
    units: &[i64],
    site: fn(usize) -> Site,
    p: u32,
) -> Result<(), ConstructionError> {
    let one = unit_one(p)?;
    match units.iter().position(|&u| u >= 0 || u < -one) {
        None => Ok(()),
        Some(idx) => Err(ConstructionError::LabelOutOfRange {
            site: site(idx + 1),
            units: units[idx],
            scale_exp: p,
        }),
    }
}

fn finish_path(p: u32, sigma: Vec<i64>, mu: Vec<i64>) -> Result<PathLabeling, ConstructionError> {
    ensure_positive(&sigma, Site::Vertex, p)?;
    ensure_positive(&mu, Site::Edge, p)?;
    Ok(PathLabeling::new(p, sigma, mu)?)
}

fn finish_bipolar(
    p: u32,
    sigma_p: Vec<i64>,
    mu_p: Vec<i64>,
) -> Result<BipolarPathLabeling, ConstructionError> {
    let labeling = BipolarPathLabeling::mirrored(p, sigma_p, mu_p)?;
    ensure_positive(labeling.sigma_p_units(), Site::Vertex, p)?;
    ensure_positive(labeling.mu_p_units(), Site::Edge, p)?;
    ensure_negative(labeling.sigma_n_units(), Site::Vertex, p)?;
    ensure_negative(labeling.mu_n_units(), Site::Edge, p)?;
    Ok(labeling)
}

fn identity_vertices(n: usize) -> Vec<i64> {
    (1..=n as i64).collect()
}

/// `2i - 1` on odd vertices, `2i` on even ones (global vertex index).
fn alternating_vertices(n: usize) -> Vec<i64> {
    (1..=n as i64)
        .map(|i| if i % 2 == 1 { 2 * i - 1 } else { 2 * i })
        .collect()
}

/// Single magic constant `3n·d`: `σ(v_i) = i·d`, `μ = (3n - 2i - 1)·d`.
pub fn generate_magic(n: usize, p: u32) -> Result<PathLabeling, ConstructionError> {
    check_scale(p)?;
    check_size(n, 1)?;
    if n < 3 {
        return Err(ConstructionError::Inadmissible(format!(
            "a magic path needs n >= 3, got {n}"
        )));
    }
    let n_ = n as i64;
    let mu = (1..n as i64).map(|i| 3 * n_ - 2 * i - 1).collect();
    finish_path(p, identity_vertices(n), mu)
}

/// Two constants `(2n + 2)·d` on the first half of the edges and `(2n + 7)·d`
/// on the second half.
///
/// The formulas break the anti-fuzzy condition on the last edge once
/// `n >= 9`, so the labeling is returned together with its anti-fuzzy
/// check instead of failing.
pub fn generate_bimagic(
    n: usize,
    p: u32,
) -> Result<(PathLabeling, CheckReport), ConstructionError> {
    check_scale(p)?;
    check_size(n, 2)?;
    if n < 5 || n.is_multiple_of(2) {
        return Err(ConstructionError::Inadmissible(format!(
            "a bi-magic path needs odd n >= 5, got {n}"
        )));
    }
    let n_ = n as i64;
    let half = (n_ - 1) / 2;
    let mu = (1..n_)
        .map(|i| {
            if i <= half {
                2 * n_ + 1 - 2 * i
            } else {
                2 * n_ + 6 - 2 * i
            }
        })
        .collect();
    let labeling = finish_path(p, identity_vertices(n), mu)?;
    let report = check_anti_fuzzy(&labeling);
    Ok((labeling, report))
}

/// `m` constants `(3n + c_k + 1)·d`: edge `i` of block `k` gets
/// `(3n - 2i + c_k)·d`.
pub fn generate_m_magic(n: usize, m: usize, p: u32) -> Result<PathLabeling, ConstructionError> {
    check_scale(p)?;
    require_admissible(n, m, Family::AntiFuzzy)?;
    let offsets = OffsetTable::new(m)?;
    let n_ = n as i64;
    let mu = (1..n)
        .map(|i| {
            let k = block_of_edge(i, n, m)?;
            let c = offsets.get(k).expect("block index within 1..=m");
            Ok(3 * n_ - 2 * i as i64 + c)
        })
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    finish_path(p, identity_vertices(n), mu)
}

/// Bipolar magic path with constant `±6n·d`: `μ^P = (6n - 4i - 1)·d`.
pub fn generate_bipolar_magic(n: usize, p: u32) -> Result<BipolarPathLabeling, ConstructionError> {
    check_scale(p)?;
    check_size(n, 1)?;
    if n < 2 {
        return Err(ConstructionError::Inadmissible(format!(
            "a bipolar magic path needs n >= 2, got {n}"
        )));
    }
    let n_ = n as i64;
    let mu_p = (1..n_).map(|i| 6 * n_ - 4 * i - 1).collect();
    finish_bipolar(p, alternating_vertices(n), mu_p)
}

/// Bipolar `m`-magic path: edge `i` of block `k` gets
/// `μ^P = ((k + 5)n - 4i - k)·d`, so block `k` sums to
/// `((k + 5)n - (k - 1))·d`. The negative channel mirrors the positive one.
pub fn generate_bipolar_m_magic(
    n: usize,
    m: usize,
    p: u32,
) -> Result<BipolarPathLabeling, ConstructionError> {
    check_scale(p)?;
    require_admissible(n, m, Family::Bipolar)?;
    let n_ = n as i64;
    let mu_p = (1..n)
        .map(|i| {
            let k = block_of_edge(i, n, m)? as i64;
            Ok((k + 5) * n_ - 4 * i as i64 - k)
        })
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    finish_bipolar(p, alternating_vertices(n), mu_p)
}

/// The five closed-form constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum Construction {
    Magic,
    Bimagic,
    MMagic { m: usize },
    BipolarMagic,
    BipolarMMagic { m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    Magic,
    Bimagic,
    MMagic,
    BipolarMagic,
    BipolarMMagic,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 5] = [
        ConstructionKind::Magic,
        ConstructionKind::Bimagic,
        ConstructionKind::MMagic,
        ConstructionKind::BipolarMagic,
        ConstructionKind::BipolarMMagic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::Magic => "magic",
            ConstructionKind::Bimagic => "bimagic",
            ConstructionKind::MMagic => "m-magic",
            ConstructionKind::BipolarMagic => "bipolar-magic",
            ConstructionKind::BipolarMMagic => "bipolar-m-magic",
        }
    }

    /// The fixed constant count of the legacy constructions.
    pub fn fixed_m(self) -> Option<usize> {
        match self {
            ConstructionKind::Magic | ConstructionKind::BipolarMagic => Some(1),
            ConstructionKind::Bimagic => Some(2),
            ConstructionKind::MMagic | ConstructionKind::BipolarMMagic => None,
        }
    }

    /// Combines the kind with a user-supplied `m`. Legacy kinds accept only
    /// their own constant count.
    pub fn with_m(self, m: Option<usize>) -> Result<Construction, ConstructionError> {
        match (self.fixed_m(), m) {
            (Some(fixed), Some(given)) if fixed != given => {
                Err(ConstructionError::InvalidParameter(format!(
                    "--m {given} conflicts with family {} (m = {fixed})",
                    self.name()
                )))
            }
            (Some(_), _) => Ok(match self {
                ConstructionKind::Magic => Construction::Magic,
                ConstructionKind::Bimagic => Construction::Bimagic,
                _ => Construction::BipolarMagic,
            }),
            (None, None) => Err(ConstructionError::InvalidParameter(format!(
                "family {} needs m",
                self.name()
            ))),
            (None, Some(m)) => Ok(match self {
                ConstructionKind::MMagic => Construction::MMagic { m },
                _ => Construction::BipolarMMagic { m },
            }),
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConstructionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| ConstructionError::InvalidParameter(format!("unknown family {s:?}")))
    }
}

impl Construction {
    pub fn kind(self) -> ConstructionKind {
        match self {
            Construction::Magic => ConstructionKind::Magic,
            Construction::Bimagic => ConstructionKind::Bimagic,
            Construction::MMagic { .. } => ConstructionKind::MMagic,
            Construction::BipolarMagic => ConstructionKind::BipolarMagic,
            Construction::BipolarMMagic { .. } => ConstructionKind::BipolarMMagic,
        }
    }

    pub fn family(self) -> Family {
        match self {
            Construction::Magic | Construction::Bimagic | Construction::MMagic { .. } => {
                Family::AntiFuzzy
            }
            Construction::BipolarMagic | Construction::BipolarMMagic { .. } => Family::Bipolar,
        }
    }

    /// Number of distinct constants the construction produces.
    pub fn m(self) -> usize {
        match self {
            Construction::Magic | Construction::BipolarMagic => 1,
            Construction::Bimagic => 2,
            Construction::MMagic { m } | Construction::BipolarMMagic { m } => m,
        }
    }

    /// Admissibility of `n` for this construction. The legacy
    /// constructions have their own preconditions; their case tag is
    /// always `not-applicable`.
    pub fn admissibility(self, n: usize) -> AdmissibilityReport {
        match self {
            Construction::MMagic { m } => admissible(n, m, Family::AntiFuzzy),
            Construction::BipolarMMagic { m } => admissible(n, m, Family::Bipolar),
            Construction::Magic | Construction::Bimagic => {
                // Same arithmetic as the block rule with m = 1 (n >= 3) and
                // m = 2 (odd n >= 5).
                let mut report = admissible(n, self.m(), Family::AntiFuzzy);
                report.extension = false;
                report
            }
            Construction::BipolarMagic => {
                let ok = n >= 2;
                AdmissibilityReport {
                    family: Family::Bipolar,
                    n,
                    m: 1,
                    admissible: ok,
                    case_tag: CaseTag::NotApplicable,
                    a: None,
                    extension: false,
                    reason: if ok {
                        "n >= 2".to_string()
                    } else {
                        format!("need n >= 2, got {n}")
                    },
                }
            }
        }
    }

    /// Closed-form constants in units (positive channel for bipolar),
    /// block 1 first.
    pub fn expected_constants(self, n: usize) -> Result<Vec<i64>, ConstructionError> {
        let n_ = n as i64;
        Ok(match self {
            Construction::Magic => vec![3 * n_],
            Construction::Bimagic => vec![2 * n_ + 2, 2 * n_ + 7],
            Construction::MMagic { m } => OffsetTable::new(m)?
                .offsets()
                .iter()
                .map(|c| 3 * n_ + c + 1)
                .collect(),
            Construction::BipolarMagic => vec![6 * n_],
            Construction::BipolarMMagic { m } => {
                (1..=m as i64).map(|k| (k + 5) * n_ - (k - 1)).collect()
            }
        })
    }

    /// Runs the generator. For `Bimagic` the anti-fuzzy report is dropped;
    /// call [`generate_bimagic`] directly to keep it.
    pub fn generate(self, n: usize, p: u32) -> Result<Labeling, ConstructionError> {
        Ok(match self {
            Construction::Magic => generate_magic(n, p)?.into(),
            Construction::Bimagic => generate_bimagic(n, p)?.0.into(),
            Construction::MMagic { m } => generate_m_magic(n, m, p)?.into(),
            Construction::BipolarMagic => generate_bipolar_magic(n, p)?.into(),
            Construction::BipolarMMagic { m } => generate_bipolar_m_magic(n, m, p)?.into(),
        })
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::MMagic { m } | Construction::BipolarMMagic { m } => {
                write!(f, "{} (m = {m})", self.kind())
            }
            _ => write!(f, "{}", self.kind()),
        }
    }
}
