//! Classification reports.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;
use tririgid_core::classify::{
    case_tag, classify_rationality, classify_rigidity, heavy_set, ClassifyError,
};
use tririgid_core::lndlab::{
    check_witness, find_witness, LndError, QuotientRing, WitnessCheck, WitnessKind,
};
use tririgid_core::trinomial::{ell, validate, TrinomialDatum};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Lnd(#[from] LndError),
    #[error("{kind} witness failed verification")]
    WitnessFailed { kind: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub rigid: bool,
    pub condition: &'static str,
    pub exceptional_indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalityReport {
    pub rational: bool,
    pub case: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTagReport {
    pub tag: &'static str,
    pub subcase: Option<&'static str>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessStatus {
    Verified,
    NotConstructed,
    #[serde(rename = "n/a")]
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub status: WitnessStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<&'static str>,
    pub images: BTreeMap<String, String>,
    pub depths: BTreeMap<String, usize>,
}

impl WitnessReport {
    fn empty(status: WitnessStatus) -> WitnessReport {
        WitnessReport {
            status,
            kind: None,
            images: BTreeMap::new(),
            depths: BTreeMap::new(),
        }
    }
}

/// Key order follows field order and is part of the output format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub valid: bool,
    pub rigidity: RigidityReport,
    pub rationality: RationalityReport,
    pub ell: Vec<u32>,
    pub heavy_set: Vec<usize>,
    pub case_tag: Option<CaseTagReport>,
    pub witness: WitnessReport,
}

/// A witness found for `d` together with its verification.
#[derive(Clone, Debug)]
pub struct VerifiedWitness {
    pub kind: WitnessKind,
    pub images: BTreeMap<String, String>,
    pub check: WitnessCheck,
}

/// Builds and checks a witness if one of the supported constructions
/// applies.
pub fn construct_witness(
    d: &TrinomialDatum,
    bound: usize,
) -> Result<Option<VerifiedWitness>, ReportError> {
    let Some((kind, der)) = find_witness(d)? else {
        return Ok(None);
    };
    let ring = QuotientRing::of_datum(d)?;
    let check = check_witness(&der, &ring, bound)?;
    let images = der
        .images
        .iter()
        .map(|(v, p)| (v.to_string(), p.to_string()))
        .collect();
    Ok(Some(VerifiedWitness {
        kind,
        images,
        check,
    }))
}

/// The full report; `bound` is the nilpotency bound when a witness is
/// requested. A constructed witness that fails verification is an error.
pub fn build_report(
    d: &TrinomialDatum,
    witness_bound: Option<usize>,
) -> Result<ReportDocument, ReportError> {
    let valid = validate(d).is_valid();
    let rig = classify_rigidity(d)?;
    let rat = classify_rationality(d)?;
    let tag = case_tag(d)?.map(|t| CaseTagReport {
        tag: t.tag.label(),
        subcase: t.subcase.map(|s| s.label()),
    });
    let witness = match witness_bound {
        Some(bound) if !rig.rigid => match construct_witness(d, bound)? {
            Some(w) if w.check.verified() => WitnessReport {
                status: WitnessStatus::Verified,
                kind: Some(w.kind.label()),
                images: w.images,
                depths: w
                    .check
                    .nilpotency
                    .depths
                    .iter()
                    .map(|(v, &k)| (v.to_string(), k))
                    .collect(),
            },
            Some(w) => {
                return Err(ReportError::WitnessFailed {
                    kind: w.kind.label(),
                })
            }
            None => WitnessReport::empty(WitnessStatus::NotConstructed),
        },
        _ => WitnessReport::empty(WitnessStatus::NotApplicable),
    };
    Ok(ReportDocument {
        valid,
        rigidity: RigidityReport {
            rigid: rig.rigid,
            condition: rig.fired_condition.label(),
            exceptional_indices: rig.exceptional_indices,
        },
        rationality: RationalityReport {
            rational: rat.rational,
            case: rat.fired_case.label(),
        },
        ell: ell(d).values,
        heavy_set: heavy_set(d).indices,
        case_tag: tag,
        witness,
    })
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Plain-text rendering for terminals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        out.push_str(&format!(
            "rigid: {} (condition {})\n",
            self.rigidity.rigid, self.rigidity.condition
        ));
        if !self.rigidity.exceptional_indices.is_empty() {
            out.push_str(&format!(
                "exceptional indices: {}\n",
                join(&self.rigidity.exceptional_indices)
            ));
        }
        out.push_str(&format!(
            "rational: {} ({})\n",
            self.rationality.rational, self.rationality.case
        ));
        let ell: Vec<String> = self.ell.iter().map(u32::to_string).collect();
        out.push_str(&format!("ell: {}\n", ell.join(",")));
        out.push_str(&format!("heavy set: {{{}}}\n", join(&self.heavy_set)));
        match &self.case_tag {
            Some(t) => match t.subcase {
                Some(s) => out.push_str(&format!("case: {} subcase {}\n", t.tag, s)),
                None => out.push_str(&format!("case: {}\n", t.tag)),
            },
            None => out.push_str("case: -\n"),
        }
        let status = match self.witness.status {
            WitnessStatus::Verified => "verified",
            WitnessStatus::NotConstructed => "not constructed",
            WitnessStatus::NotApplicable => "n/a",
        };
        out.push_str(&format!("witness: {status}\n"));
        for (v, p) in &self.witness.images {
            let depth = self.witness.depths.get(v).copied().unwrap_or(0);
            out.push_str(&format!("  {v} -> {p}  (depth {depth})\n"));
        }
        out
    }
}
