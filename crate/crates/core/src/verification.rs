//! Checkers for the anti-fuzzy edge conditions and for magic spectra.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::Construction;
use crate::model::{
    BipolarPathLabeling, CheckReport, Condition, Labeling, MagicSpectrum, PathLabeling, Site,
    Spectrum, Violation,
};
use crate::numerics::ScaledValue;

/// How strictly the edge-to-constant assignment is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumMode {
    /// Constants occupy `m` consecutive runs of `(n - 1) / m` edges each.
    #[default]
    Strict,
    /// Any assignment with `m` distinct constants.
    Lax,
}

impl fmt::Display for SpectrumMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumMode::Strict => "strict",
            SpectrumMode::Lax => "lax",
        })
    }
}

impl FromStr for SpectrumMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(SpectrumMode::Strict),
            "lax" => Ok(SpectrumMode::Lax),
            other => Err(format!("unknown mode {other:?} (expected strict or lax)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error(
        "{constants} constants cannot form equal consecutive blocks over {edges} edges: {detail}"
    )]
    BlockStructure {
        constants: usize,
        edges: usize,
        detail: String,
    },
    #[error("negative sum at edge {edge} is not the negation of the positive sum")]
    ChannelMismatch { edge: usize },
    #[error("edge sum overflowed")]
    Overflow,
}

fn value(units: i64, p: u32) -> ScaledValue {
    ScaledValue::from_parts(units, p)
}

fn range_violations(
    units: &[i64],
    p: u32,
    site: fn(usize) -> Site,
    positive: bool,
    out: &mut Vec<Violation>,
) {
    for (idx, &u) in units.iter().enumerate() {
        let v = value(u, p);
        let ok = if positive {
            v.is_positive_degree()
        } else {
            v.is_negative_degree()
        };
        if !ok {
            out.push(Violation::new(
                site(idx + 1),
                Condition::LabelRange,
                vec![v],
            ));
        }
    }
}

/// Every label in `(0, 1]` and `μ(v_i v_{i+1}) >= max(σ(v_i), σ(v_{i+1}))`
/// on every edge.
pub fn check_anti_fuzzy(labeling: &PathLabeling) -> CheckReport {
    let p = labeling.scale_exp();
    let sigma = labeling.sigma_units();
    let mu = labeling.mu_units();
    let mut violations = Vec::new();
    range_violations(sigma, p, Site::Vertex, true, &mut violations);
    range_violations(mu, p, Site::Edge, true, &mut violations);
    for (e, &m) in mu.iter().enumerate() {
        let bound = sigma[e].max(sigma[e + 1]);
        if m < bound {
            violations.push(Violation::new(
                Site::Edge(e + 1),
                Condition::AntiFuzzy,
                vec![value(m, p), value(bound, p)],
            ));
        }
    }
    CheckReport::from_violations(violations)
}

/// Positive channel as in [`check_anti_fuzzy`]; negative channel in
/// `[-1, 0)` with `μ^N <= min(σ^N(v_i), σ^N(v_{i+1}))`.
pub fn check_bipolar_anti_fuzzy(labeling: &BipolarPathLabeling) -> CheckReport {
    let p = labeling.scale_exp();
    let (sp, sn) = (labeling.sigma_p_units(), labeling.sigma_n_units());
    let (mp, mn) = (labeling.mu_p_units(), labeling.mu_n_units());
    let mut violations = Vec::new();
    range_violations(sp, p, Site::Vertex, true, &mut violations);
    range_violations(sn, p, Site::Vertex, false, &mut violations);
    range_violations(mp, p, Site::Edge, true, &mut violations);
    range_violations(mn, p, Site::Edge, false, &mut violations);
    for e in 0..mp.len() {
        let upper = sp[e].max(sp[e + 1]);
        if mp[e] < upper {
            violations.push(Violation::new(
                Site::Edge(e + 1),
                Condition::BipolarPositive,
                vec![value(mp[e], p), value(upper, p)],
            ));
        }
        let lower = sn[e].min(sn[e + 1]);
        if mn[e] > lower {
            violations.push(Violation::new(
                Site::Edge(e + 1),
                Condition::BipolarNegative,
                vec![value(mn[e], p), value(lower, p)],
            ));
        }
    }
    CheckReport::from_violations(violations)
}

/// Dispatches to the anti-fuzzy or bipolar checker.
pub fn check_labeling(labeling: &Labeling) -> CheckReport {
    match labeling {
        Labeling::AntiFuzzy(l) => check_anti_fuzzy(l),
        Labeling::Bipolar(l) => check_bipolar_anti_fuzzy(l),
    }
}

/// Spectrum of a plain sequence of edge sums.
///
/// Constants are sorted ascending. In strict mode the edges are cut into
/// `m` chunks of `(n - 1) / m` (where `m` is the number of distinct sums);
/// each chunk must be constant and the chunks pairwise distinct.
pub fn spectrum_of_sums(
    sums: &[i64],
    scale_exp: u32,
    mode: SpectrumMode,
) -> Result<MagicSpectrum, SpectrumError> {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &s in sums {
        *counts.entry(s).or_default() += 1;
    }
    let index: BTreeMap<i64, usize> = counts
        .keys()
        .enumerate()
        .map(|(i, &k)| (k, i + 1))
        .collect();
    let spectrum = MagicSpectrum {
        constants: counts.keys().map(|&k| value(k, scale_exp)).collect(),
        assignment: sums.iter().map(|s| index[s]).collect(),
        block_sizes: counts.values().copied().collect(),
    };
    if mode == SpectrumMode::Strict {
        let edges = sums.len();
        let m = spectrum.len();
        let fail = |detail: String| SpectrumError::BlockStructure {
            constants: m,
            edges,
            detail,
        };
        if m == 0 || !edges.is_multiple_of(m) {
            return Err(fail(format!("{m} does not divide {edges}")));
        }
        let size = edges / m;
        for (b, chunk) in sums.chunks(size).enumerate() {
            if chunk.iter().any(|s| *s != chunk[0]) {
                return Err(fail(format!(
                    "edges {}..={} do not share one constant",
                    b * size + 1,
                    (b + 1) * size
                )));
            }
        }
        // Chunk constants are pairwise distinct because there are exactly m
        // chunks and m distinct sums.
    }
    Ok(spectrum)
}

/// Distinct edge-sum constants of a labeling. For bipolar labelings the
/// negative sums must be the negation of the positive ones edge by edge.
pub fn extract_spectrum(
    labeling: &Labeling,
    mode: SpectrumMode,
) -> Result<Spectrum, SpectrumError> {
    match labeling {
        Labeling::AntiFuzzy(l) => {
            let sums = l.edge_sum_units().map_err(|_| SpectrumError::Overflow)?;
            Ok(Spectrum::AntiFuzzy {
                spectrum: spectrum_of_sums(&sums, l.scale_exp(), mode)?,
            })
        }
        Labeling::Bipolar(l) => {
            let pos = l
                .positive_sum_units()
                .map_err(|_| SpectrumError::Overflow)?;
            let neg = l
                .negative_sum_units()
                .map_err(|_| SpectrumError::Overflow)?;
            if let Some(e) = pos
                .iter()
                .zip(&neg)
                .position(|(p, n)| p.checked_neg() != Some(*n))
            {
                return Err(SpectrumError::ChannelMismatch { edge: e + 1 });
            }
            Ok(Spectrum::Bipolar {
                positive: spectrum_of_sums(&pos, l.scale_exp(), mode)?,
                negative: spectrum_of_sums(&neg, l.scale_exp(), mode)?,
            })
        }
    }
}

fn spectrum_violation(err: SpectrumError) -> Violation {
    match err {
        SpectrumError::BlockStructure { .. } => {
            Violation::new(Site::Labeling, Condition::BlockStructure, vec![])
                .with_detail(err.to_string())
        }
        SpectrumError::ChannelMismatch { edge } => {
            Violation::new(Site::Edge(edge), Condition::ChannelMismatch, vec![])
                .with_detail(err.to_string())
        }
        SpectrumError::Overflow => {
            Violation::new(Site::Labeling, Condition::Overflow, vec![]).with_detail(err.to_string())
        }
    }
}

/// Passes iff the labeling satisfies its anti-fuzzy conditions and has
/// exactly `m` distinct edge-sum constants under `mode`.
pub fn verify_m_magic(labeling: &Labeling, m: usize, mode: SpectrumMode) -> CheckReport {
    let mut report = check_labeling(labeling);
    // Count first with the lax reading so a count mismatch is reported as
    // such rather than as a block-structure failure.
    match extract_spectrum(labeling, SpectrumMode::Lax) {
        Err(err) => report.violations.push(spectrum_violation(err)),
        Ok(spectrum) if spectrum.len() != m => {
            report.violations.push(
                Violation::new(
                    Site::Labeling,
                    Condition::ConstantCount,
                    spectrum.primary().constants.clone(),
                )
                .with_detail(format!("expected {m} constants, found {}", spectrum.len())),
            );
        }
        Ok(_) => {
            if mode == SpectrumMode::Strict {
                if let Err(err) = extract_spectrum(labeling, SpectrumMode::Strict) {
                    report.violations.push(spectrum_violation(err));
                }
            }
        }
    }
    CheckReport::from_violations(report.violations)
}

/// Passes iff the edge sums match the construction's closed-form constants:
/// block `k` of the edges attains the `k`-th constant (negated on the
/// negative channel).
pub fn conformance(labeling: &Labeling, construction: Construction) -> CheckReport {
    let p = labeling.scale_exp();
    let n = labeling.n();
    let mut violations = Vec::new();
    if labeling.family() != construction.family() {
        violations.push(
            Violation::new(Site::Labeling, Condition::Conformance, vec![]).with_detail(format!(
                "{} labeling checked against {construction}",
                labeling.family()
            )),
        );
        return CheckReport::from_violations(violations);
    }
    let expected = match construction.expected_constants(n) {
        Ok(e) => e,
        Err(err) => {
            violations.push(
                Violation::new(Site::Labeling, Condition::Conformance, vec![])
                    .with_detail(err.to_string()),
            );
            return CheckReport::from_violations(violations);
        }
    };
    let m = expected.len();
    let edges = n - 1;
    if m == 0 || !edges.is_multiple_of(m) {
        violations.push(
            Violation::new(Site::Labeling, Condition::Conformance, vec![])
                .with_detail(format!("{m} blocks do not split {edges} edges")),
        );
        return CheckReport::from_violations(violations);
    }
    let size = edges / m;

    let (pos, neg) = match labeling {
        Labeling::AntiFuzzy(l) => (l.edge_sum_units(), None),
        Labeling::Bipolar(l) => (l.positive_sum_units(), Some(l.negative_sum_units())),
    };
    let (Ok(pos), Ok(neg)) = (pos, neg.transpose()) else {
        violations.push(Violation::new(Site::Labeling, Condition::Overflow, vec![]));
        return CheckReport::from_violations(violations);
    };

    let mut found: Vec<i64> = pos.clone();
    found.sort_unstable();
    found.dedup();
    if found != expected {
        violations.push(
            Violation::new(
                Site::Labeling,
                Condition::Conformance,
                found.iter().map(|&u| value(u, p)).collect(),
            )
            .with_detail(format!(
                "expected constants {}",
                expected
                    .iter()
                    .map(|&u| value(u, p).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )),
        );
    }
    for (e, &sum) in pos.iter().enumerate() {
        let want = expected[e / size];
        if sum != want {
            violations.push(Violation::new(
                Site::Edge(e + 1),
                Condition::Conformance,
                vec![value(sum, p), value(want, p)],
            ));
        }
        if let Some(neg) = &neg {
            if neg[e] != -want {
                violations.push(Violation::new(
                    Site::Edge(e + 1),
                    Condition::Conformance,
                    vec![value(neg[e], p), value(-want, p)],
                ));
            }
        }
    }
    CheckReport::from_violations(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{generate_bipolar_m_magic, generate_m_magic, generate_magic};

    fn path(p: u32, sigma: &[i64], mu: &[i64]) -> PathLabeling {
        PathLabeling::new(p, sigma.to_vec(), mu.to_vec()).unwrap()
    }

    fn magic_path5() -> Labeling {
        path(2, &[1, 2, 3, 4, 5], &[12, 10, 8, 6]).into()
    }

    fn four_block9() -> Labeling {
        path(
            2,
            &[1, 2, 3, 4, 5, 6, 7, 8, 9],
            &[26, 24, 25, 23, 25, 23, 23, 21],
        )
        .into()
    }

    fn strings(xs: &[ScaledValue]) -> Vec<String> {
        xs.iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn anti_fuzzy_examples() {
        // Triangle labeling restricted to the path v1 v2 v3.
        assert!(check_anti_fuzzy(&path(1, &[2, 3, 5], &[8, 8])).passed);
        let Labeling::AntiFuzzy(l) = four_block9() else {
            unreachable!()
        };
        assert!(check_anti_fuzzy(&l).passed);

        let r = check_anti_fuzzy(&path(1, &[5, 5], &[4]));
        assert!(!r.passed);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].site, Site::Edge(1));
        assert_eq!(strings(&r.violations[0].observed), vec!["0.4", "0.5"]);
    }

    #[test]
    fn anti_fuzzy_ranges() {
        let r = check_anti_fuzzy(&path(2, &[0, 2], &[101]));
        assert!(r.has(Site::Vertex(1), Condition::LabelRange));
        assert!(r.has(Site::Edge(1), Condition::LabelRange));
        assert!(check_anti_fuzzy(&path(2, &[100, 100], &[100])).passed);
    }

    #[test]
    fn bipolar_examples() {
        // Bipolar star, edge v u1 as a two-vertex path.
        let l = BipolarPathLabeling::new(1, vec![1, 2], vec![-5, -6], vec![3], vec![-7]).unwrap();
        assert!(check_bipolar_anti_fuzzy(&l).passed);
        let l = generate_bipolar_m_magic(9, 4, 2).unwrap();
        assert!(check_bipolar_anti_fuzzy(&l).passed);

        let l = BipolarPathLabeling::new(1, vec![1, 2], vec![-6, -7], vec![3], vec![-5]).unwrap();
        let r = check_bipolar_anti_fuzzy(&l);
        assert!(!r.passed);
        assert_eq!(r.violations[0].condition, Condition::BipolarNegative);
        assert_eq!(strings(&r.violations[0].observed), vec!["-0.5", "-0.7"]);
    }

    #[test]
    fn spectrum_examples() {
        let s = extract_spectrum(&four_block9(), SpectrumMode::Strict).unwrap();
        assert_eq!(
            strings(&s.primary().constants),
            vec!["0.29", "0.32", "0.36", "0.38"]
        );
        assert_eq!(s.primary().block_sizes, vec![2, 2, 2, 2]);
        assert_eq!(s.primary().assignment, vec![1, 1, 2, 2, 3, 3, 4, 4]);

        let s = extract_spectrum(&magic_path5(), SpectrumMode::Strict).unwrap();
        assert_eq!(strings(&s.primary().constants), vec!["0.15"]);
        assert_eq!(s.primary().block_sizes, vec![4]);

        let two = path(2, &[1, 2, 3], &[50, 60]).into();
        let s = extract_spectrum(&two, SpectrumMode::Strict).unwrap();
        assert_eq!(strings(&s.primary().constants), vec!["0.53", "0.65"]);
        assert_eq!(s.primary().block_sizes, vec![1, 1]);
    }

    #[test]
    fn strict_rejects_interleaved_and_unequal_blocks() {
        // Sums 10, 20, 10, 20: two constants but not consecutive runs.
        let l: Labeling = path(2, &[1, 1, 1, 1, 1], &[8, 18, 8, 18]).into();
        assert!(extract_spectrum(&l, SpectrumMode::Lax).is_ok());
        assert!(matches!(
            extract_spectrum(&l, SpectrumMode::Strict),
            Err(SpectrumError::BlockStructure { .. })
        ));
        // Three edges, two constants.
        let l: Labeling = path(2, &[1, 1, 1, 1], &[8, 8, 18]).into();
        assert!(extract_spectrum(&l, SpectrumMode::Strict).is_err());
        let r = verify_m_magic(&l, 2, SpectrumMode::Strict);
        assert!(r.has(Site::Labeling, Condition::BlockStructure));
        assert!(verify_m_magic(&l, 2, SpectrumMode::Lax).passed);
    }

    #[test]
    fn bipolar_channel_mismatch() {
        let l = generate_bipolar_m_magic(9, 4, 2).unwrap();
        let l: Labeling = l.with_negative_edge_shift(3, -1).unwrap().into();
        assert_eq!(
            extract_spectrum(&l, SpectrumMode::Lax),
            Err(SpectrumError::ChannelMismatch { edge: 3 })
        );
        let r = verify_m_magic(&l, 4, SpectrumMode::Strict);
        assert!(r.has(Site::Edge(3), Condition::ChannelMismatch));
    }

    #[test]
    fn verify_examples() {
        assert!(verify_m_magic(&four_block9(), 4, SpectrumMode::Strict).passed);
        assert!(verify_m_magic(&magic_path5(), 1, SpectrumMode::Strict).passed);
        for mode in [SpectrumMode::Strict, SpectrumMode::Lax] {
            let r = verify_m_magic(&magic_path5(), 2, mode);
            assert!(r.has(Site::Labeling, Condition::ConstantCount));
        }
    }

    #[test]
    fn conformance_examples() {
        let l: Labeling = generate_m_magic(9, 4, 2).unwrap().into();
        assert!(conformance(&l, Construction::MMagic { m: 4 }).passed);
        let l: Labeling = generate_bipolar_m_magic(9, 4, 2).unwrap().into();
        assert!(conformance(&l, Construction::BipolarMMagic { m: 4 }).passed);
        let l: Labeling = generate_magic(5, 2).unwrap().into();
        assert!(conformance(&l, Construction::Magic).passed);
        assert!(!conformance(&l, Construction::MMagic { m: 1 }).passed);
        assert!(!conformance(&l, Construction::BipolarMagic).passed);
    }

    #[test]
    fn conformance_catches_swapped_blocks() {
        // Same spectrum as the n = 9 four-block labeling but blocks 1 and 2 swapped.
        let l: Labeling = path(
            2,
            &[1, 2, 3, 4, 5, 6, 7, 8, 9],
            &[29, 27, 22, 20, 25, 23, 23, 21],
        )
        .into();
        assert!(verify_m_magic(&l, 4, SpectrumMode::Strict).passed);
        let r = conformance(&l, Construction::MMagic { m: 4 });
        assert!(r.has(Site::Edge(1), Condition::Conformance));
        assert!(!r.has(Site::Labeling, Condition::Conformance));
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("lax".parse::<SpectrumMode>(), Ok(SpectrumMode::Lax));
        assert!("loose".parse::<SpectrumMode>().is_err());
    }
}
