//! Suite report records. The serialized body is fully deterministic: no
//! timestamps, stable field and record ordering, so two runs over the same
//! corpus are byte-identical and golden files can pin verdict content.

use khr::transport::TheoremVerdict;
use khr::ValidationReport;
use serde::Serialize;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

pub fn failures_of(report: &ValidationReport) -> Vec<AxiomFailure> {
    report
        .failures()
        .map(|c| AxiomFailure {
            axiom: c.axiom.id().to_string(),
            counterexample: c.counterexample.clone(),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Record {
    /// Strict validation of a corpus structure that must pass.
    Validation {
        structure: String,
        mode: String,
        pass: bool,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        failures: Vec<AxiomFailure>,
    },
    /// Recorded verdict for a structure tagged `expect adjudicate`: the
    /// strict and weak reports plus deterministic findings. Not a failure.
    Adjudication {
        structure: String,
        strict_pass: bool,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        strict_failures: Vec<AxiomFailure>,
        weak_pass: bool,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        weak_failures: Vec<AxiomFailure>,
        notes: Vec<String>,
    },
    Theorem {
        #[serde(flatten)]
        verdict: TheoremVerdict,
    },
    /// A cap prevented an instance from running; never silent.
    Skip {
        structure: String,
        instance: String,
        reason: String,
    },
    /// An unexpected error while driving an instance; counts as a failure.
    Error {
        structure: String,
        instance: String,
        error: String,
    },
}

impl Record {
    pub fn is_failure(&self) -> bool {
        match self {
            Record::Validation { pass, .. } => !pass,
            Record::Adjudication { .. } => false,
            Record::Theorem { verdict } => !verdict.pass,
            Record::Skip { .. } => false,
            Record::Error { .. } => true,
        }
    }

    pub fn one_line(&self) -> String {
        match self {
            Record::Validation {
                structure,
                mode,
                pass,
                failures,
            } => {
                let status = if *pass { "pass" } else { "FAIL" };
                let detail = failures
                    .first()
                    .map(|f| {
                        format!(
                            " ({}{})",
                            f.axiom,
                            f.counterexample
                                .as_deref()
                                .map(|c| format!(": {c}"))
                                .unwrap_or_default()
                        )
                    })
                    .unwrap_or_default();
                format!("{status} validate[{mode}] {structure}{detail}")
            }
            Record::Adjudication {
                structure,
                strict_pass,
                weak_pass,
                strict_failures,
                ..
            } => {
                let detail = strict_failures
                    .first()
                    .map(|f| {
                        format!(
                            " ({}{})",
                            f.axiom,
                            f.counterexample
                                .as_deref()
                                .map(|c| format!(": {c}"))
                                .unwrap_or_default()
                        )
                    })
                    .unwrap_or_default();
                format!("adjudicated {structure}: strict={strict_pass} weak={weak_pass}{detail}")
            }
            Record::Theorem { verdict } => {
                let status = if verdict.pass { "pass" } else { "FAIL" };
                let detail = verdict
                    .counterexample
                    .as_deref()
                    .map(|c| format!(" ({c})"))
                    .unwrap_or_default();
                format!(
                    "{status} {} [{}]{detail}",
                    verdict.theorem, verdict.universe
                )
            }
            Record::Skip {
                structure,
                instance,
                reason,
            } => {
                format!("skip {structure} [{instance}]: {reason}")
            }
            Record::Error {
                structure,
                instance,
                error,
            } => {
                format!("ERROR {structure} [{instance}]: {error}")
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Caps {
    pub max_card: usize,
    pub max_m: usize,
    pub max_n: usize,
    pub hom_cap: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub records: usize,
    pub theorems_passed: usize,
    pub theorems_failed: usize,
    pub validations_failed: usize,
    pub adjudications: usize,
    pub skips: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub version: u32,
    pub caps: Caps,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(caps: Caps, records: Vec<Record>) -> Self {
        let mut summary = Summary {
            records: records.len(),
            theorems_passed: 0,
            theorems_failed: 0,
            validations_failed: 0,
            adjudications: 0,
            skips: 0,
            errors: 0,
        };
        for r in &records {
            match r {
                Record::Theorem { verdict } => {
                    if verdict.pass {
                        summary.theorems_passed += 1;
                    } else {
                        summary.theorems_failed += 1;
                    }
                }
                Record::Validation { pass, .. } => {
                    if !pass {
                        summary.validations_failed += 1;
                    }
                }
                Record::Adjudication { .. } => summary.adjudications += 1,
                Record::Skip { .. } => summary.skips += 1,
                Record::Error { .. } => summary.errors += 1,
            }
        }
        SuiteReport {
            version: 1,
            caps,
            records,
            summary,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| !r.is_failure())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
