use std::collections::HashMap;

use mmagic_core::constructions::{generate_bipolar_m_magic, generate_m_magic};
use mmagic_core::numerics::scale_band;
use mmagic_core::verification::{
    check_anti_fuzzy, check_bipolar_anti_fuzzy, conformance, extract_spectrum, verify_m_magic,
};
use mmagic_core::{CaseTag, Construction, Family, Labeling, Spectrum, SpectrumMode};

fn grid() -> impl Iterator<Item = (usize, usize, usize)> {
    (3..=8).flat_map(|m| (0..=5).map(move |a| (m, a, 2 * m + 1 + m * a)))
}

fn units(s: &Spectrum) -> Vec<i64> {
    s.primary().constants.iter().map(|c| c.units()).collect()
}

#[test]
fn anti_fuzzy_block_sweep() {
    for (m, _, n) in grid() {
        let p = scale_band(n, Family::AntiFuzzy);
        let l = generate_m_magic(n, m, p).unwrap();
        assert!(check_anti_fuzzy(&l).passed, "n={n} m={m}");
        let l: Labeling = l.into();
        assert!(
            verify_m_magic(&l, m, SpectrumMode::Strict).passed,
            "n={n} m={m}"
        );
        assert!(conformance(&l, Construction::MMagic { m }).passed);
        let c = |k: i64| {
            if k == 1 {
                1
            } else if k == 2 {
                4
            } else {
                2 * k + 2
            }
        };
        let expected: Vec<i64> = (1..=m as i64).map(|k| 3 * n as i64 + c(k) + 1).collect();
        let spectrum = extract_spectrum(&l, SpectrumMode::Strict).unwrap();
        assert_eq!(units(&spectrum), expected, "n={n} m={m}");
    }
}

#[test]
fn bipolar_block_sweep() {
    let mut tags: HashMap<CaseTag, usize> = HashMap::new();
    for (m, _, n) in grid() {
        let construction = Construction::BipolarMMagic { m };
        let report = construction.admissibility(n);
        assert!(report.admissible);
        *tags.entry(report.case_tag).or_default() += 1;
        let p = scale_band(n, Family::Bipolar);
        let l = generate_bipolar_m_magic(n, m, p).unwrap();
        assert!(check_bipolar_anti_fuzzy(&l).passed, "n={n} m={m}");
        let l: Labeling = l.into();
        assert!(
            verify_m_magic(&l, m, SpectrumMode::Strict).passed,
            "n={n} m={m}"
        );
        assert!(conformance(&l, construction).passed);
        let n_ = n as i64;
        let expected: Vec<i64> = (1..=m as i64).map(|k| (k + 5) * n_ - (k - 1)).collect();
        let Spectrum::Bipolar { positive, negative } =
            extract_spectrum(&l, SpectrumMode::Strict).unwrap()
        else {
            panic!("bipolar labeling gave an anti-fuzzy spectrum");
        };
        let pos: Vec<i64> = positive.constants.iter().map(|c| c.units()).collect();
        assert_eq!(pos, expected);
        let mut neg: Vec<i64> = negative.constants.iter().map(|c| -c.units()).collect();
        neg.sort();
        assert_eq!(neg, expected);
    }
    for tag in [CaseTag::Case1MEven, CaseTag::Case1MOdd, CaseTag::Case2MOdd] {
        assert!(tags.get(&tag).copied().unwrap_or(0) >= 2, "{tag}: {tags:?}");
    }
}

#[test]
fn every_single_edge_mutation_is_caught() {
    for (m, _, n) in grid().filter(|&(_, a, _)| a <= 2) {
        let p = scale_band(n, Family::AntiFuzzy);
        let l = generate_m_magic(n, m, p).unwrap();
        for i in 1..n {
            let bumped: Labeling = l.with_edge_shift(i, 1).unwrap().into();
            let strict = verify_m_magic(&bumped, m, SpectrumMode::Strict);
            let conf = conformance(&bumped, Construction::MMagic { m });
            assert!(!(strict.passed && conf.passed), "n={n} m={m} edge {i}");
        }
        let p = scale_band(n, Family::Bipolar);
        let l = generate_bipolar_m_magic(n, m, p).unwrap();
        for i in 1..n {
            let bumped: Labeling = l.with_positive_edge_shift(i, 1).unwrap().into();
            assert!(
                !verify_m_magic(&bumped, m, SpectrumMode::Strict).passed,
                "n={n} m={m} edge {i}"
            );
        }
    }
}

#[test]
fn lax_accepts_what_strict_accepts() {
    for (m, _, n) in grid() {
        let l: Labeling = generate_m_magic(n, m, scale_band(n, Family::AntiFuzzy))
            .unwrap()
            .into();
        assert!(verify_m_magic(&l, m, SpectrumMode::Lax).passed);
        let lax = extract_spectrum(&l, SpectrumMode::Lax).unwrap();
        assert_eq!(lax.len(), m);
    }
}
