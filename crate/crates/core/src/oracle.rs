//! Exhaustive search for magic labelings on small paths.
//!
//! The search enumerates vertex labels `σ ∈ {1..G}^n` in lexicographic
//! order, then edge labels `μ_1, …, μ_{n-1}` in lexicographic order, keeping
//! only those with `max(σ_i, σ_{i+1}) <= μ_i <= G` and exactly `m` distinct
//! edge sums. Everything here works on raw units and shares no code with
//! [`crate::verification`], so the two can be cross-checked.
//!
//! Bipolar searches run on the positive channel and mirror it; bipolar
//! witnesses whose negative channel is not the exact negation of the
//! positive one are not explored.

use std::env;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::Construction;
use crate::model::{
    BipolarPathLabeling, CheckReport, Condition, Family, Labeling, LabelingError, PathLabeling,
    Site, Violation,
};
use crate::numerics::{check_scale, scale_band, NumericsError, ScaledValue};
use crate::verification::SpectrumMode;

/// Environment variable capping [`estimate_cells`] for a search.
pub const MAX_CELLS_ENV: &str = "MMAGIC_MAX_ORACLE_CELLS";

pub const DEFAULT_MAX_N: usize = 7;
pub const DEFAULT_MAX_GRID: i64 = 40;

/// Cross-checks enumerate the whole space when it is at most this many
/// cells and pin the vertex labels otherwise.
pub const CROSS_CHECK_FULL_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("limit must be at least 1")]
    ZeroLimit,
    #[error("invalid search parameter: {0}")]
    InvalidParameter(String),
    #[error("n = {n}, grid = {grid} exceeds the default bounds n <= {max_n}, grid <= {max_grid}; pass an explicit override")]
    BoundsExceeded {
        n: usize,
        grid: i64,
        max_n: usize,
        max_grid: i64,
    },
    #[error("search space of {cells} cells exceeds the cap of {cap}")]
    CellsExceeded { cells: u128, cap: u128 },
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub n: usize,
    pub m: usize,
    /// Largest label in units; labels range over `1..=grid`.
    pub grid: i64,
    pub scale_exp: u32,
    pub mode: SpectrumMode,
    /// Maximum number of witnesses to return.
    pub limit: usize,
    pub family: Family,
    /// Fixes the vertex labels (in units) and searches edge labels only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pinned_sigma: Option<Vec<i64>>,
}

impl SearchParams {
    pub fn new(n: usize, m: usize, grid: i64, scale_exp: u32, mode: SpectrumMode) -> Self {
        Self {
            n,
            m,
            grid,
            scale_exp,
            mode,
            limit: 10,
            family: Family::AntiFuzzy,
            pinned_sigma: None,
        }
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    pub fn pin_sigma(mut self, sigma: Vec<i64>) -> Self {
        self.pinned_sigma = Some(sigma);
        self
    }
}

/// Size guards applied before a search starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchLimits {
    /// Enforce `n <= 7` and `grid <= 40`.
    pub enforce_bounds: bool,
    pub max_cells: Option<u128>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            enforce_bounds: true,
            max_cells: None,
        }
    }
}

impl SearchLimits {
    /// Default bounds plus the cell cap from `MMAGIC_MAX_ORACLE_CELLS`, if set.
    pub fn from_env() -> Result<Self, OracleError> {
        let max_cells = match env::var(MAX_CELLS_ENV) {
            Ok(text) => Some(text.trim().parse::<u128>().map_err(|_| {
                OracleError::InvalidParameter(format!("{MAX_CELLS_ENV}={text:?} is not an integer"))
            })?),
            Err(_) => None,
        };
        Ok(Self {
            enforce_bounds: true,
            max_cells,
        })
    }

    pub fn with_override(mut self, allow_large: bool) -> Self {
        self.enforce_bounds = !allow_large;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Found,
    ExhaustedNone,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub witnesses: Vec<Labeling>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Witnesses handed to the visitor.
    pub witnesses: u64,
    /// The visitor asked to stop before the space was exhausted.
    pub stopped: bool,
}

/// Number of enumeration cells: `G` per free vertex label plus `G` per
/// free edge label. Edge labels inside a strict block, and every edge label
/// after the first for `m = 1`, are forced by the constant and not counted.
pub fn estimate_cells(params: &SearchParams) -> u128 {
    let g = params.grid.max(0) as u128;
    let free_vertices = if params.pinned_sigma.is_some() {
        0
    } else {
        params.n
    };
    let free_edges = match params.mode {
        _ if params.m == 1 => 1,
        SpectrumMode::Strict => params.m,
        SpectrumMode::Lax => params.n.saturating_sub(1),
    };
    (0..free_vertices + free_edges).fold(1u128, |acc, _| acc.saturating_mul(g))
}

fn validate(params: &SearchParams, limits: &SearchLimits) -> Result<(), OracleError> {
    check_scale(params.scale_exp)?;
    if params.limit == 0 {
        return Err(OracleError::ZeroLimit);
    }
    if params.n < 2 || params.m < 1 || params.grid < 1 {
        return Err(OracleError::InvalidParameter(format!(
            "need n >= 2, m >= 1, grid >= 1 (got n = {}, m = {}, grid = {})",
            params.n, params.m, params.grid
        )));
    }
    if let Some(pins) = &params.pinned_sigma {
        if pins.len() != params.n || pins.iter().any(|&s| s < 1 || s > params.grid) {
            return Err(OracleError::InvalidParameter(
                "pinned vertex labels must be n values within 1..=grid".into(),
            ));
        }
    }
    if limits.enforce_bounds && (params.n > DEFAULT_MAX_N || params.grid > DEFAULT_MAX_GRID) {
        return Err(OracleError::BoundsExceeded {
            n: params.n,
            grid: params.grid,
            max_n: DEFAULT_MAX_N,
            max_grid: DEFAULT_MAX_GRID,
        });
    }
    if let Some(cap) = limits.max_cells {
        let cells = estimate_cells(params);
        if cells > cap {
            return Err(OracleError::CellsExceeded { cells, cap });
        }
    }
    Ok(())
}

struct Enumerator<'a, F> {
    n: usize,
    m: usize,
    grid: i64,
    mode: SpectrumMode,
    block: usize,
    pinned: Option<&'a [i64]>,
    sigma: Vec<i64>,
    mu: Vec<i64>,
    /// Distinct sums so far (lax) or block constants so far (strict).
    constants: Vec<i64>,
    visit: F,
    stats: SearchStats,
}

impl<F> Enumerator<'_, F>
where
    F: FnMut(&[i64], &[i64]) -> ControlFlow<()>,
{
    fn vertices(&mut self, v: usize) -> ControlFlow<()> {
        if v == self.n {
            return self.edges(0);
        }
        let (lo, hi) = match self.pinned {
            Some(pins) => (pins[v], pins[v]),
            None => (1, self.grid),
        };
        for s in lo..=hi {
            self.sigma[v] = s;
            self.vertices(v + 1)?;
        }
        ControlFlow::Continue(())
    }

    fn leaf(&mut self) -> ControlFlow<()> {
        if self.constants.len() != self.m {
            return ControlFlow::Continue(());
        }
        self.stats.witnesses += 1;
        let flow = (self.visit)(&self.sigma, &self.mu);
        if flow.is_break() {
            self.stats.stopped = true;
        }
        flow
    }

    fn edges(&mut self, e: usize) -> ControlFlow<()> {
        if e == self.n - 1 {
            return self.leaf();
        }
        let lo = self.sigma[e].max(self.sigma[e + 1]);
        let base = self.sigma[e] + self.sigma[e + 1];
        match self.mode {
            SpectrumMode::Strict if !e.is_multiple_of(self.block) => {
                let target = *self.constants.last().expect("block start precedes");
                let mu = target - base;
                if lo <= mu && mu <= self.grid {
                    self.mu[e] = mu;
                    self.edges(e + 1)?;
                }
            }
            SpectrumMode::Strict => {
                for mu in lo..=self.grid {
                    let sum = base + mu;
                    if self.constants.contains(&sum) {
                        continue;
                    }
                    self.mu[e] = mu;
                    self.constants.push(sum);
                    let flow = self.edges(e + 1);
                    self.constants.pop();
                    flow?;
                }
            }
            SpectrumMode::Lax if self.constants.len() == self.m => {
                // No new constant allowed: the edge label is forced to one
                // of the existing sums.
                let mut forced: Vec<i64> = self
                    .constants
                    .iter()
                    .map(|k| k - base)
                    .filter(|mu| lo <= *mu && *mu <= self.grid)
                    .collect();
                forced.sort_unstable();
                for mu in forced {
                    self.mu[e] = mu;
                    self.edges(e + 1)?;
                }
            }
            SpectrumMode::Lax => {
                let later_edges = self.n - 2 - e;
                for mu in lo..=self.grid {
                    let sum = base + mu;
                    let fresh = !self.constants.contains(&sum);
                    let distinct = self.constants.len() + usize::from(fresh);
                    if distinct + later_edges < self.m {
                        continue;
                    }
                    self.mu[e] = mu;
                    if fresh {
                        self.constants.push(sum);
                    }
                    let flow = self.edges(e + 1);
                    if fresh {
                        self.constants.pop();
                    }
                    flow?;
                }
            }
        }
        ControlFlow::Continue(())
    }
}

/// Walks every labeling in the search space in lexicographic order of
/// `(σ_1, …, σ_n, μ_1, …, μ_{n-1})` and hands the witnesses (in units) to
/// `visit` until it breaks.
pub fn search_with<F>(
    params: &SearchParams,
    limits: &SearchLimits,
    visit: F,
) -> Result<SearchStats, OracleError>
where
    F: FnMut(&[i64], &[i64]) -> ControlFlow<()>,
{
    validate(params, limits)?;
    let edges = params.n - 1;
    if params.m > edges {
        return Ok(SearchStats::default());
    }
    if params.mode == SpectrumMode::Strict && !edges.is_multiple_of(params.m) {
        return Ok(SearchStats::default());
    }
    let mut walker = Enumerator {
        n: params.n,
        m: params.m,
        grid: params.grid,
        mode: params.mode,
        block: edges / params.m,
        pinned: params.pinned_sigma.as_deref(),
        sigma: vec![0; params.n],
        mu: vec![0; edges],
        constants: Vec::with_capacity(params.m),
        visit,
        stats: SearchStats::default(),
    };
    let _ = walker.vertices(0);
    Ok(walker.stats)
}

/// Turns raw witness units into a labeling of the requested family.
pub fn witness_labeling(
    family: Family,
    scale_exp: u32,
    sigma: &[i64],
    mu: &[i64],
) -> Result<Labeling, LabelingError> {
    Ok(match family {
        Family::AntiFuzzy => PathLabeling::new(scale_exp, sigma.to_vec(), mu.to_vec())?.into(),
        Family::Bipolar => {
            BipolarPathLabeling::mirrored(scale_exp, sigma.to_vec(), mu.to_vec())?.into()
        }
    })
}

/// Collects up to `params.limit` witnesses.
pub fn brute_force_search(
    params: &SearchParams,
    limits: &SearchLimits,
) -> Result<SearchOutcome, OracleError> {
    let mut raw: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    search_with(params, limits, |sigma, mu| {
        raw.push((sigma.to_vec(), mu.to_vec()));
        if raw.len() >= params.limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    let witnesses = raw
        .iter()
        .map(|(s, m)| witness_labeling(params.family, params.scale_exp, s, m))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SearchOutcome {
        verdict: if witnesses.is_empty() {
            Verdict::ExhaustedNone
        } else {
            Verdict::Found
        },
        witnesses,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStrategy {
    /// Vertex and edge labels both enumerated.
    Full,
    /// Vertex labels fixed to the generator's, edge labels enumerated.
    PinnedVertices,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub report: CheckReport,
    pub strategy: Option<SearchStrategy>,
    /// Witnesses enumerated before the generator's labeling was reached.
    pub witnesses_visited: u64,
}

/// The construction the cross-check runs for `(family, m)`.
pub fn construction_for(family: Family, m: usize) -> Construction {
    match (family, m) {
        (Family::AntiFuzzy, 1) => Construction::Magic,
        (Family::AntiFuzzy, 2) => Construction::Bimagic,
        (Family::AntiFuzzy, m) => Construction::MMagic { m },
        (Family::Bipolar, 1) => Construction::BipolarMagic,
        (Family::Bipolar, m) => Construction::BipolarMMagic { m },
    }
}

/// Checks that the closed-form labeling for `(n, m, family)` is a point of
/// the oracle's strict-mode search space with labels in `1..=grid`.
pub fn cross_check_generator(n: usize, m: usize, family: Family, grid: i64) -> CrossCheck {
    let fail = |v: Violation| CrossCheck {
        report: CheckReport::from_violations(vec![v]),
        strategy: None,
        witnesses_visited: 0,
    };
    let construction = construction_for(family, m);
    let p = scale_band(n, family);
    let labeling = match construction.generate(n, p) {
        Ok(l) => l,
        Err(err) => {
            return fail(
                Violation::new(Site::Labeling, Condition::Generator, vec![])
                    .with_detail(err.to_string()),
            )
        }
    };
    let (sigma, mu) = match &labeling {
        Labeling::AntiFuzzy(l) => (l.sigma_units().to_vec(), l.mu_units().to_vec()),
        Labeling::Bipolar(l) => (l.sigma_p_units().to_vec(), l.mu_p_units().to_vec()),
    };
    let largest = sigma.iter().chain(&mu).copied().max().unwrap_or(0);
    if largest > grid {
        return fail(
            Violation::new(
                Site::Labeling,
                Condition::OracleMiss,
                vec![ScaledValue::from_parts(largest, p)],
            )
            .with_detail(format!("largest label {largest} exceeds grid {grid}")),
        );
    }

    let full = SearchParams::new(n, m, grid, p, SpectrumMode::Strict)
        .limit(usize::MAX)
        .family(family);
    let (params, strategy) = if estimate_cells(&full) <= CROSS_CHECK_FULL_BUDGET {
        (full, SearchStrategy::Full)
    } else {
        (
            full.pin_sigma(sigma.clone()),
            SearchStrategy::PinnedVertices,
        )
    };
    let limits = SearchLimits {
        enforce_bounds: false,
        max_cells: Some(CROSS_CHECK_FULL_BUDGET),
    };
    let mut hit = false;
    let stats = search_with(&params, &limits, |s, e| {
        if s == sigma.as_slice() && e == mu.as_slice() {
            hit = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    match stats {
        Err(err) => fail(
            Violation::new(Site::Labeling, Condition::OracleMiss, vec![])
                .with_detail(err.to_string()),
        ),
        Ok(stats) => {
            let report = if hit {
                CheckReport::pass()
            } else {
                CheckReport::from_violations(vec![Violation::new(
                    Site::Labeling,
                    Condition::OracleMiss,
                    vec![],
                )
                .with_detail(format!(
                    "{construction} labeling for n = {n} not in the search space"
                ))])
            };
            CrossCheck {
                report,
                strategy: Some(strategy),
                witnesses_visited: stats.witnesses,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verification::verify_m_magic;

    fn search(n: usize, m: usize, grid: i64, mode: SpectrumMode, limit: usize) -> SearchOutcome {
        brute_force_search(
            &SearchParams::new(n, m, grid, 2, mode).limit(limit),
            &SearchLimits::default(),
        )
        .unwrap()
    }

    fn units(l: &Labeling) -> (Vec<i64>, Vec<i64>) {
        match l {
            Labeling::AntiFuzzy(l) => (l.sigma_units().to_vec(), l.mu_units().to_vec()),
            Labeling::Bipolar(l) => (l.sigma_p_units().to_vec(), l.mu_p_units().to_vec()),
        }
    }

    /// Plain nested-loop enumeration of `{1..G}^(2n-1)` with no pruning.
    fn naive(n: usize, m: usize, grid: i64, mode: SpectrumMode) -> Vec<(Vec<i64>, Vec<i64>)> {
        let len = 2 * n - 1;
        let mut out = Vec::new();
        let mut cur = vec![1i64; len];
        loop {
            let (sigma, mu) = cur.split_at(n);
            let anti = (0..n - 1).all(|e| mu[e] >= sigma[e].max(sigma[e + 1]));
            if anti {
                let sums: Vec<i64> = (0..n - 1)
                    .map(|e| sigma[e] + mu[e] + sigma[e + 1])
                    .collect();
                let mut d = sums.clone();
                d.sort();
                d.dedup();
                let ok = d.len() == m
                    && match mode {
                        SpectrumMode::Lax => true,
                        SpectrumMode::Strict => {
                            (n - 1).is_multiple_of(m)
                                && sums
                                    .chunks((n - 1) / m)
                                    .all(|c| c.iter().all(|x| *x == c[0]))
                        }
                    };
                if ok {
                    out.push((sigma.to_vec(), mu.to_vec()));
                }
            }
            let mut i = len;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < grid {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 1;
            }
        }
    }

    #[test]
    fn constant_labeling_is_first_witness() {
        let out = search(3, 1, 10, SpectrumMode::Lax, 5);
        assert_eq!(out.verdict, Verdict::Found);
        let (sigma, mu) = units(&out.witnesses[0]);
        assert_eq!((sigma, mu), (vec![1, 1, 1], vec![1, 1]));
    }

    #[test]
    fn rediscovers_magic_labeling() {
        let out = search(5, 1, 15, SpectrumMode::Lax, usize::MAX);
        assert!(out
            .witnesses
            .iter()
            .any(|w| units(w) == (vec![1, 2, 3, 4, 5], vec![12, 10, 8, 6])));
    }

    #[test]
    fn n3_bimagic_both_readings() {
        // Lax admits the hand-checked witness σ = (1, 2, 3), μ = (5, 6).
        let lax = search(3, 2, 10, SpectrumMode::Lax, usize::MAX);
        assert!(lax
            .witnesses
            .iter()
            .any(|w| units(w) == (vec![1, 2, 3], vec![5, 6])));
        // With one edge per block the strict reading coincides with lax at
        // n = 3; pinned from the exhaustive run.
        let strict = search(3, 2, 10, SpectrumMode::Strict, usize::MAX);
        assert_eq!(strict.verdict, Verdict::Found);
        assert_eq!(strict.witnesses.len(), lax.witnesses.len());
        assert_eq!(strict.witnesses.len(), N3_M2_G10_WITNESSES);
    }

    /// Witness count for (n = 3, m = 2, G = 10), recorded from the naive
    /// enumeration below (and an independent itertools count).
    const N3_M2_G10_WITNESSES: usize = 15732;

    #[test]
    fn pruned_search_matches_naive_enumeration() {
        for (n, m, grid) in [
            (3, 1, 6),
            (3, 2, 6),
            (4, 1, 5),
            (4, 3, 4),
            (4, 2, 4),
            (5, 2, 3),
            (5, 4, 3),
        ] {
            for mode in [SpectrumMode::Lax, SpectrumMode::Strict] {
                let expected = naive(n, m, grid, mode);
                let got: Vec<_> = search(n, m, grid, mode, usize::MAX)
                    .witnesses
                    .iter()
                    .map(units)
                    .collect();
                assert_eq!(got, expected, "n={n} m={m} G={grid} {mode}");
            }
        }
        assert_eq!(
            naive(3, 2, 10, SpectrumMode::Strict).len(),
            N3_M2_G10_WITNESSES
        );
    }

    #[test]
    fn witnesses_reverify() {
        for (n, m, grid, mode) in [
            (3, 1, 10, SpectrumMode::Lax),
            (5, 2, 8, SpectrumMode::Strict),
            (5, 3, 6, SpectrumMode::Lax),
            (7, 3, 12, SpectrumMode::Strict),
        ] {
            let out = search(n, m, grid, mode, 500);
            assert!(!out.witnesses.is_empty());
            for w in &out.witnesses {
                assert!(verify_m_magic(w, m, mode).passed, "{w:?}");
            }
        }
    }

    #[test]
    fn bipolar_witnesses_mirror() {
        let params = SearchParams::new(4, 3, 6, 2, SpectrumMode::Strict)
            .limit(50)
            .family(Family::Bipolar);
        let out = brute_force_search(&params, &SearchLimits::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Found);
        for w in &out.witnesses {
            assert!(matches!(w, Labeling::Bipolar(_)));
            assert!(verify_m_magic(w, 3, SpectrumMode::Strict).passed);
        }
    }

    #[test]
    fn deterministic_and_monotone() {
        let a = search(4, 2, 6, SpectrumMode::Lax, 100);
        let b = search(4, 2, 6, SpectrumMode::Lax, 100);
        assert_eq!(a, b);
        for grid in 1..8 {
            let small = search(4, 3, grid, SpectrumMode::Strict, 1).verdict;
            let large = search(4, 3, grid + 1, SpectrumMode::Strict, 1).verdict;
            if small == Verdict::Found {
                assert_eq!(large, Verdict::Found);
            }
        }
    }

    #[test]
    fn impossible_shapes_exhaust() {
        assert_eq!(
            search(3, 3, 10, SpectrumMode::Lax, 1).verdict,
            Verdict::ExhaustedNone
        );
        assert_eq!(
            search(4, 2, 10, SpectrumMode::Strict, 1).verdict,
            Verdict::ExhaustedNone
        );
        // G = 1 forces every label to one unit: a single constant only.
        assert_eq!(
            search(4, 3, 1, SpectrumMode::Strict, 1).verdict,
            Verdict::ExhaustedNone
        );
    }

    #[test]
    fn guards() {
        let limits = SearchLimits::default();
        let p = SearchParams::new(3, 1, 5, 2, SpectrumMode::Lax).limit(0);
        assert_eq!(brute_force_search(&p, &limits), Err(OracleError::ZeroLimit));
        let p = SearchParams::new(8, 1, 5, 2, SpectrumMode::Lax);
        assert!(matches!(
            brute_force_search(&p, &limits),
            Err(OracleError::BoundsExceeded { .. })
        ));
        let p = SearchParams::new(3, 1, 41, 2, SpectrumMode::Lax);
        assert!(matches!(
            brute_force_search(&p, &limits),
            Err(OracleError::BoundsExceeded { .. })
        ));
        assert!(brute_force_search(&p, &limits.clone().with_override(true)).is_ok());
        let capped = SearchLimits {
            enforce_bounds: true,
            max_cells: Some(100),
        };
        let p = SearchParams::new(3, 1, 5, 2, SpectrumMode::Lax);
        assert!(matches!(
            brute_force_search(&p, &capped),
            Err(OracleError::CellsExceeded {
                cells: 625,
                cap: 100
            })
        ));
    }

    #[test]
    fn cell_estimates() {
        assert_eq!(
            estimate_cells(&SearchParams::new(5, 1, 14, 2, SpectrumMode::Lax)),
            14u128.pow(6)
        );
        assert_eq!(
            estimate_cells(&SearchParams::new(7, 3, 20, 2, SpectrumMode::Strict)),
            20u128.pow(10)
        );
        assert_eq!(
            estimate_cells(
                &SearchParams::new(9, 4, 26, 2, SpectrumMode::Strict).pin_sigma(vec![1; 9])
            ),
            26u128.pow(4)
        );
    }

    #[test]
    fn cross_check_small_cases() {
        let c = cross_check_generator(5, 1, Family::AntiFuzzy, 14);
        assert!(c.report.passed, "{:?}", c.report);
        assert_eq!(c.strategy, Some(SearchStrategy::Full));

        let c = cross_check_generator(5, 2, Family::AntiFuzzy, 12);
        assert!(c.report.passed, "{:?}", c.report);

        // Grid too small for the largest label.
        let c = cross_check_generator(5, 1, Family::AntiFuzzy, 11);
        assert!(c.report.has(Site::Labeling, Condition::OracleMiss));

        // The bi-magic formulas at n = 9 are not anti-fuzzy, so the oracle
        // cannot reach them.
        let c = cross_check_generator(9, 2, Family::AntiFuzzy, 30);
        assert!(c.report.has(Site::Labeling, Condition::OracleMiss));

        let c = cross_check_generator(8, 4, Family::AntiFuzzy, 30);
        assert!(c.report.has(Site::Labeling, Condition::Generator));
    }

    #[test]
    fn cross_check_bipolar() {
        let c = cross_check_generator(7, 3, Family::Bipolar, 40);
        assert!(c.report.passed, "{:?}", c.report);
    }
}
