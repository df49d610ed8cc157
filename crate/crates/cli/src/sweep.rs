//! Enumeration sweeps with cross-checks between the classifier, the
//! witness machinery and independent oracles.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;
use tririgid_core::classify::{
    abc_kernel_predicate, classify_rationality, classify_rigidity, RigidityCondition,
};
use tririgid_core::lndlab::{check_case_a_identity, jacobian_pair, NilpotencyVerdict};
use tririgid_core::trinomial::{
    eliminate_linear_monomial, is_surface, relations, torus_semi_invariant, Elimination,
    TrinomialDatum, VarietyType,
};

use crate::input::InputDocument;
use crate::random::{random_r3_surface, rng};
use crate::report::construct_witness;

/// Largest number of data a sweep will enumerate.
pub const MAX_SWEEP_SIZE: u128 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Pham,
    RationalityDominance,
    AbcDominance,
    EliminationStability,
    WitnessVerify,
    GammaIdentity,
    TorusSemiinvariance,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Pham,
        Check::RationalityDominance,
        Check::AbcDominance,
        Check::EliminationStability,
        Check::WitnessVerify,
        Check::GammaIdentity,
        Check::TorusSemiinvariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Pham => "pham",
            Check::RationalityDominance => "rationality-dominance",
            Check::AbcDominance => "abc-dominance",
            Check::EliminationStability => "elimination-stability",
            Check::WitnessVerify => "witness-verify",
            Check::GammaIdentity => "gamma-identity",
            Check::TorusSemiinvariance => "torus-semiinvariance",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Comma-separated list; `all` selects every check.
    pub fn parse_list(s: &str) -> Result<Vec<Check>, SweepError> {
        if s.trim() == "all" {
            return Ok(Check::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let c = Check::parse(part).ok_or_else(|| SweepError::UnknownCheck(part.to_string()))?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("sweep would enumerate {0} data, more than the limit of {MAX_SWEEP_SIZE}")]
    TooLarge(u128),
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub variety_type: VarietyType,
    pub max_r: usize,
    pub max_l: u32,
    pub max_n: usize,
    pub max_m: usize,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub bound: usize,
    pub gamma_samples: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            variety_type: VarietyType::Type2,
            max_r: 3,
            max_l: 6,
            max_n: 1,
            max_m: 0,
            checks: Check::ALL.to_vec(),
            seed: 0,
            bound: tririgid_core::lndlab::DEFAULT_BOUND,
            gamma_samples: 50,
        }
    }
}

/// Outcome of one check on one datum; `None` from a check means it does
/// not apply.
pub type CheckResult = Result<(), String>;

fn surface_ls(d: &TrinomialDatum) -> Vec<u32> {
    d.exponents.iter().map(|t| t[0]).collect()
}

/// Non-rigid iff at least two exponents are 2, for `x^k + y^l + z^m`.
pub fn check_pham(d: &TrinomialDatum) -> Option<CheckResult> {
    if !is_surface(d) || d.r != 2 {
        return None;
    }
    let mut ls = surface_ls(d);
    if ls.contains(&1) {
        return None;
    }
    ls.sort_unstable();
    let expected_rigid = !(ls[0] == 2 && ls[1] == 2);
    let rigid = classify_rigidity(d).ok()?.rigid;
    Some(if rigid == expected_rigid {
        Ok(())
    } else {
        Err(format!(
            "classifier rigid={rigid}, Pham-Brieskorn rigid={expected_rigid}"
        ))
    })
}

/// A non-rigid Type 2 surface is rational.
pub fn check_rationality_dominance(d: &TrinomialDatum) -> Option<CheckResult> {
    if !is_surface(d) {
        return None;
    }
    let rigid = classify_rigidity(d).ok()?.rigid;
    let rational = classify_rationality(d).ok()?.rational;
    Some(if rigid || rational {
        Ok(())
    } else {
        Err("non-rigid but not rational".into())
    })
}

/// On surfaces without linear monomials, the ABC predicate forces rigidity.
pub fn check_abc_dominance(d: &TrinomialDatum) -> Option<CheckResult> {
    if !is_surface(d) || surface_ls(d).contains(&1) {
        return None;
    }
    let abc = abc_kernel_predicate(d).ok()?;
    let rigid = classify_rigidity(d).ok()?.rigid;
    Some(if !abc || rigid {
        Ok(())
    } else {
        Err("ABC predicate holds but the classifier says non-rigid".into())
    })
}

/// Eliminating a linear monomial keeps the verdict.
pub fn check_elimination_stability(d: &TrinomialDatum) -> Option<CheckResult> {
    if !is_surface(d) {
        return None;
    }
    let ls = surface_ls(d);
    if !ls.contains(&1) {
        return None;
    }
    let rigid = match classify_rigidity(d) {
        Ok(v) => v.rigid,
        Err(e) => return Some(Err(e.to_string())),
    };
    for (i, _) in ls.iter().enumerate().filter(|(_, &l)| l == 1) {
        let reduced_rigid = match eliminate_linear_monomial(d, i) {
            Ok(Elimination::FullAffineSpace) => false,
            Ok(Elimination::Reduced(e)) => match classify_rigidity(&e) {
                Ok(v) => v.rigid,
                Err(err) => return Some(Err(err.to_string())),
            },
            Err(e) => return Some(Err(e.to_string())),
        };
        if reduced_rigid != rigid {
            return Some(Err(format!(
                "eliminating T_{i} changes rigid={rigid} to rigid={reduced_rigid}"
            )));
        }
    }
    Some(Ok(()))
}

/// Every constructed witness verifies with bounded depth and agrees with
/// the classifier; `M_POSITIVE` data and hypersurfaces with a linear
/// variable always get one.
pub fn check_witness_verify(d: &TrinomialDatum, bound: usize) -> Option<CheckResult> {
    let verdict = classify_rigidity(d).ok()?;
    let max_exp = d
        .exponents
        .iter()
        .flatten()
        .copied()
        .max()
        .unwrap_or(1)
        .max(1) as usize;
    let hypersurface_linear = relations(d).ok()?.relations.len() == 1 && jacobian_pair(d).is_some();
    let required = verdict.fired_condition == RigidityCondition::MPositive || hypersurface_linear;
    let witness = match construct_witness(d, bound) {
        Ok(w) => w,
        Err(e) => return Some(Err(e.to_string())),
    };
    Some(match witness {
        None if required => Err("expected a witness, none constructed".into()),
        None => Ok(()),
        Some(w) => {
            let c = &w.check;
            if !c.well_defined.well_defined {
                Err(format!("{} witness not well defined", w.kind.label()))
            } else if c.nilpotency.verdict != NilpotencyVerdict::Proven {
                Err(format!("{} witness not proven nilpotent", w.kind.label()))
            } else if !c.exp_preserves_ideal {
                Err(format!("{} witness flow leaves the ideal", w.kind.label()))
            } else if c.nilpotency.max_depth() > max_exp + 1 {
                Err(format!(
                    "depth {} exceeds {}",
                    c.nilpotency.max_depth(),
                    max_exp + 1
                ))
            } else if verdict.rigid {
                Err("verified witness on a datum classified rigid".into())
            } else {
                Ok(())
            }
        }
    })
}

/// Relations scale by `t^lcm` under `T_i -> t^{lcm/l_i} T_i`.
pub fn check_torus(d: &TrinomialDatum) -> Option<CheckResult> {
    if !is_surface(d) {
        return None;
    }
    Some(match torus_semi_invariant(d) {
        Ok(true) => Ok(()),
        Ok(false) => Err("a relation is not semi-invariant".into()),
        Err(e) => Err(e.to_string()),
    })
}

/// The case a identity on one `r = 3` surface.
pub fn check_gamma(d: &TrinomialDatum) -> CheckResult {
    match check_case_a_identity(d) {
        Ok(rep) if rep.holds() => Ok(()),
        Ok(rep) => Err(format!(
            "identity failed: gamma1_sq = {}, factored = {}, match = {}",
            rep.gamma1_sq, rep.gamma1_sq_factored, rep.matches
        )),
        Err(e) => Err(e.to_string()),
    }
}

fn run_check(check: Check, d: &TrinomialDatum, bound: usize) -> Option<CheckResult> {
    match check {
        Check::Pham => check_pham(d),
        Check::RationalityDominance => check_rationality_dominance(d),
        Check::AbcDominance => check_abc_dominance(d),
        Check::EliminationStability => check_elimination_stability(d),
        Check::WitnessVerify => check_witness_verify(d, bound),
        Check::GammaIdentity => None,
        Check::TorusSemiinvariance => check_torus(d),
    }
}

/// The generic datum of the sweep family: columns `(1, i)` for Type 2,
/// constants `a_i = i` for Type 1.
fn generic(t: VarietyType, m: usize, exponents: Vec<Vec<u32>>) -> TrinomialDatum {
    match t {
        VarietyType::Type1 => TrinomialDatum::type1_generic(m, exponents),
        VarietyType::Type2 => TrinomialDatum::type2_generic(m, exponents),
    }
}

fn tuple_count(t: VarietyType, r: usize) -> usize {
    match t {
        VarietyType::Type1 => r,
        VarietyType::Type2 => r + 1,
    }
}

/// Number of data `enumerate` would produce.
pub fn sweep_size(c: &SweepConfig) -> u128 {
    let per_tuple: u128 = (1..=c.max_n as u32).map(|n| (c.max_l as u128).pow(n)).sum();
    (2..=c.max_r)
        .map(|r| per_tuple.saturating_pow(tuple_count(c.variety_type, r) as u32))
        .fold(0u128, |a, b| a.saturating_add(b))
        .saturating_mul(c.max_m as u128 + 1)
}

fn all_tuples(max_n: usize, max_l: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..max_n {
        layer = layer
            .iter()
            .flat_map(|t| {
                (1..=max_l).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Odometer step; false once every digit has wrapped.
fn advance(idx: &mut [usize], radix: usize) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < radix {
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// Every datum with `2 <= r <= max_r`, tuple lengths in `[1, max_n]`,
/// exponents in `[1, max_l]` and `0 <= m <= max_m`.
pub fn enumerate(c: &SweepConfig) -> Result<Vec<TrinomialDatum>, SweepError> {
    let size = sweep_size(c);
    if size > MAX_SWEEP_SIZE {
        return Err(SweepError::TooLarge(size));
    }
    let tuples = all_tuples(c.max_n, c.max_l);
    let mut out = Vec::new();
    for r in 2..=c.max_r {
        let k = tuple_count(c.variety_type, r);
        let mut idx = vec![0usize; k];
        loop {
            let exps: Vec<Vec<u32>> = idx.iter().map(|&i| tuples[i].clone()).collect();
            for m in 0..=c.max_m {
                out.push(generic(c.variety_type, m, exps.clone()));
            }
            if !advance(&mut idx, tuples.len()) {
                break;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub key: String,
    pub datum: InputDocument,
    pub rigid: bool,
    pub rational: bool,
    /// Check name to "pass" or "fail", for the checks that apply.
    pub checks: BTreeMap<&'static str, &'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl SweepRow {
    pub fn failed(&self) -> bool {
        !self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("rows always serialize")
    }
}

fn row_for(d: &TrinomialDatum, key: String, results: Vec<(Check, CheckResult)>) -> SweepRow {
    let mut checks = BTreeMap::new();
    let mut failures = Vec::new();
    for (c, res) in results {
        match res {
            Ok(()) => {
                checks.insert(c.name(), "pass");
            }
            Err(msg) => {
                checks.insert(c.name(), "fail");
                failures.push(format!("{c}: {msg}"));
            }
        }
    }
    SweepRow {
        key,
        datum: InputDocument::from_datum(d),
        rigid: classify_rigidity(d).map(|v| v.rigid).unwrap_or(false),
        rational: classify_rationality(d).map(|v| v.rational).unwrap_or(false),
        checks,
        failures,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckTally {
    pub applied: usize,
    pub failed: usize,
}

#[derive(Clone, Debug)]
pub struct SweepSummary {
    /// Sorted by key.
    pub rows: Vec<SweepRow>,
    pub tallies: BTreeMap<&'static str, CheckTally>,
}

impl SweepSummary {
    pub fn failures(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| r.failed())
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }
}

pub fn run_sweep(c: &SweepConfig) -> Result<SweepSummary, SweepError> {
    let datum_checks: Vec<Check> = c
        .checks
        .iter()
        .copied()
        .filter(|&k| k != Check::GammaIdentity)
        .collect();
    let mut rows: Vec<SweepRow> = if datum_checks.is_empty() {
        Vec::new()
    } else {
        enumerate(c)?
            .par_iter()
            .map(|d| {
                let results = datum_checks
                    .iter()
                    .filter_map(|&k| run_check(k, d, c.bound).map(|res| (k, res)))
                    .collect();
                row_for(d, d.canonical_key(), results)
            })
            .collect()
    };
    if c.checks.contains(&Check::GammaIdentity) {
        let mut g = rng(c.seed);
        let samples: Vec<TrinomialDatum> = (0..c.gamma_samples)
            .map(|_| random_r3_surface(&mut g))
            .collect();
        rows.extend(samples.iter().enumerate().map(|(i, d)| {
            row_for(
                d,
                format!("gamma|{i:06}"),
                vec![(Check::GammaIdentity, check_gamma(d))],
            )
        }));
    }
    rows.sort_by(|a, b| a.key.cmp(&b.key));
    let mut tallies: BTreeMap<&'static str, CheckTally> = c
        .checks
        .iter()
        .map(|k| (k.name(), CheckTally::default()))
        .collect();
    for row in &rows {
        for (name, outcome) in &row.checks {
            let t = tallies.entry(name).or_default();
            t.applied += 1;
            if *outcome == "fail" {
                t.failed += 1;
            }
        }
    }
    Ok(SweepSummary { rows, tallies })
}
