//! The theorem-suite driver: quantifies every per-instance check over all
//! (structure, multiplicative subset, hyperideal) triples of a corpus,
//! within size caps. Instances whose hypotheses fail are not run (they are
//! not theorem instances); instances a cap excludes produce skip records.

use std::fs;
use std::path::Path;

use khr::fractions::{
    build_localization, check_equivalence_laws, check_field_of_fractions,
    check_fraction_identities, natural_map, RelationForm,
};
use khr::ideals::{
    enumerate_hyperideals, enumerate_multiplicative_subsets, is_primary, is_prime,
    is_prime_by_ideal_products, is_two_absorbing,
};
use khr::morphisms::{check_universal_property, enumerate_homomorphisms, is_homomorphism};
use khr::quotients::{build_quotient, check_quotient_fraction_iso, projection_map};
use khr::transport::{
    check_all_extended, check_local_maximal, check_primary_preserved, check_prime_preserved,
    check_radical_commutes, check_two_absorbing_preserved, check_unit_criterion, TheoremVerdict,
};
use khr::{validate_structure, ElemSet, Error, RawStructure, Structure, ValidationMode};

use crate::corpus::{CorpusEntry, CorpusSpec};
use crate::format::parse_structure;
use crate::generate::generate_ring_embedding;
use crate::report::{failures_of, Caps, Record, SuiteReport};

pub const DEFAULT_HOM_CAP: u128 = 100_000_000;

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("{path}: {source}")]
    ReadFile {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    BadStructure { path: String, message: String },
}

struct Loaded {
    raw: RawStructure,
    adjudicate: bool,
}

fn load_corpus(spec: &CorpusSpec) -> Result<Vec<Loaded>, SuiteError> {
    let mut out = Vec::new();
    for entry in &spec.entries {
        match entry {
            CorpusEntry::Ring { modulus } => {
                let s =
                    generate_ring_embedding(*modulus).map_err(|e| SuiteError::BadStructure {
                        path: format!("ring Z {modulus}"),
                        message: e.to_string(),
                    })?;
                out.push(Loaded {
                    raw: s.to_raw(),
                    adjudicate: false,
                });
            }
            CorpusEntry::File { path, adjudicate } => {
                let text = fs::read_to_string(path).map_err(|e| SuiteError::ReadFile {
                    path: path.display().to_string(),
                    source: e,
                })?;
                let file = parse_structure(&text).map_err(|e| SuiteError::BadStructure {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
                out.push(Loaded {
                    raw: file.raw,
                    adjudicate: *adjudicate,
                });
            }
        }
    }
    Ok(out)
}

pub fn run_suite(spec: &CorpusSpec) -> Result<SuiteReport, SuiteError> {
    run_suite_with(spec, DEFAULT_HOM_CAP)
}

pub fn run_suite_with(spec: &CorpusSpec, hom_cap: u128) -> Result<SuiteReport, SuiteError> {
    let loaded = load_corpus(spec)?;
    let mut records = Vec::new();

    // First pass: validation / adjudication, and the pool of strict
    // structures the theorem checks run over (universal-property targets
    // come from the same pool).
    let mut pool: Vec<Structure> = Vec::new();
    for l in &loaded {
        let name = l.raw.name.clone();
        if l.raw.card > spec.max_card || l.raw.arity.m > spec.max_m || l.raw.arity.n > spec.max_n {
            records.push(Record::Skip {
                structure: name,
                instance: "validation".to_string(),
                reason: format!(
                    "card {} arity ({},{}) exceeds caps (card {}, m {}, n {})",
                    l.raw.card, l.raw.arity.m, l.raw.arity.n, spec.max_card, spec.max_m, spec.max_n
                ),
            });
            continue;
        }
        let strict = validate_structure(&l.raw, ValidationMode::Strict);
        if l.adjudicate {
            let weak = validate_structure(&l.raw, ValidationMode::Weak);
            let notes = adjudication_notes(&l.raw, strict.all_pass(), weak.all_pass());
            records.push(Record::Adjudication {
                structure: name,
                strict_pass: strict.all_pass(),
                strict_failures: failures_of(&strict),
                weak_pass: weak.all_pass(),
                weak_failures: failures_of(&weak),
                notes,
            });
            if strict.all_pass() {
                pool.push(
                    Structure::from_raw(l.raw.clone(), ValidationMode::Strict).expect("all-pass"),
                );
            }
        } else {
            records.push(Record::Validation {
                structure: name,
                mode: "strict".to_string(),
                pass: strict.all_pass(),
                failures: failures_of(&strict),
            });
            if strict.all_pass() {
                pool.push(
                    Structure::from_raw(l.raw.clone(), ValidationMode::Strict).expect("all-pass"),
                );
            }
        }
    }

    for s in &pool {
        structure_records(s, &pool, hom_cap, &mut records);
    }

    let caps = Caps {
        max_card: spec.max_card,
        max_m: spec.max_m,
        max_n: spec.max_n,
        hom_cap,
    };
    Ok(SuiteReport::new(caps, records))
}

/// Deterministic findings attached to an adjudication record: the
/// hyperideal lattice, the primes, the multiplicative subsets, and the
/// equivalence-law verdict of the fraction relation at each of them.
fn adjudication_notes(raw: &RawStructure, strict_pass: bool, weak_pass: bool) -> Vec<String> {
    let mode = if strict_pass {
        ValidationMode::Strict
    } else if weak_pass {
        ValidationMode::Weak
    } else {
        return vec![
            "structure validates neither strictly nor weakly; no further analysis".to_string(),
        ];
    };
    let s = match Structure::from_raw(raw.clone(), mode) {
        Ok(s) => s,
        Err(_) => return vec!["structure could not be rebuilt for analysis".to_string()],
    };
    let mut notes = Vec::new();
    let ideals = enumerate_hyperideals(&s);
    notes.push(format!(
        "hyperideals: {}",
        ideals
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    let primes: Vec<String> = ideals
        .iter()
        .filter(|&&i| i != s.carrier() && is_prime(&s, i).unwrap_or(false))
        .map(|i| i.to_string())
        .collect();
    notes.push(format!("prime hyperideals: {}", primes.join(", ")));
    let subsets = enumerate_multiplicative_subsets(&s);
    notes.push(format!(
        "multiplicative subsets: {}",
        subsets
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    for sset in subsets {
        match check_equivalence_laws(&s, sset, RelationForm::NegatedProof) {
            Ok(laws) => match laws.first_failure() {
                None => notes.push(format!(
                    "relation on R x S at S={sset} passes the equivalence laws"
                )),
                Some((law, witness)) => notes.push(format!(
                    "relation on R x S at S={sset} fails {law}: {witness}"
                )),
            },
            Err(e) => notes.push(format!("relation on R x S at S={sset}: {e}")),
        }
    }
    notes
}

fn push_verdict(
    records: &mut Vec<Record>,
    verdict: Result<TheoremVerdict, Error>,
    structure: &str,
    instance: &str,
) {
    match verdict {
        Ok(v) => records.push(Record::Theorem { verdict: v }),
        Err(e) => records.push(Record::Error {
            structure: structure.to_string(),
            instance: instance.to_string(),
            error: e.to_string(),
        }),
    }
}

fn structure_records(s: &Structure, pool: &[Structure], hom_cap: u128, records: &mut Vec<Record>) {
    let name = s.name().to_string();
    let ideals = enumerate_hyperideals(s);
    let subsets = enumerate_multiplicative_subsets(s);
    let primes: Vec<ElemSet> = ideals
        .iter()
        .copied()
        .filter(|&i| i != s.carrier() && is_prime(s, i).unwrap_or(false))
        .collect();

    // the two primality definitions agree on every proper hyperideal
    {
        let mut counterexample = None;
        for &i in &ideals {
            if i == s.carrier() {
                continue;
            }
            let by_elements = is_prime(s, i).unwrap_or(false);
            let by_products = is_prime_by_ideal_products(s, i).unwrap_or(false);
            if by_elements != by_products {
                counterexample = Some(format!(
                    "I={i}: elementwise says {by_elements}, ideal-products says {by_products}"
                ));
                break;
            }
        }
        records.push(Record::Theorem {
            verdict: TheoremVerdict {
                theorem: "prime-forms-agree".to_string(),
                universe: name.clone(),
                pass: counterexample.is_none(),
                counterexample,
            },
        });
    }

    // quotient construction per hyperideal: partition, well-definedness,
    // strict validation, projection homomorphism
    for &ideal in &ideals {
        match build_quotient(s, ideal) {
            Ok(q) => {
                let proj = projection_map(&q);
                let pass = is_homomorphism(s, q.structure(), &proj).unwrap_or(false);
                records.push(Record::Theorem {
                    verdict: TheoremVerdict {
                        theorem: "quotient-well-defined".to_string(),
                        universe: format!("{name}, I={ideal}"),
                        pass,
                        counterexample: (!pass)
                            .then(|| "projection is not a homomorphism".to_string()),
                    },
                });
            }
            Err(e) => records.push(Record::Theorem {
                verdict: TheoremVerdict {
                    theorem: "quotient-well-defined".to_string(),
                    universe: format!("{name}, I={ideal}"),
                    pass: false,
                    counterexample: Some(e.to_string()),
                },
            }),
        }
    }

    // localization at every prime
    for &p in &primes {
        push_verdict(
            records,
            check_local_maximal(s, p),
            &name,
            &format!("local-maximal at P={p}"),
        );
    }

    // field of fractions for hyperintegral domains
    if s.is_hyperintegral_domain() {
        push_verdict(
            records,
            check_field_of_fractions(s),
            &name,
            "field-of-fractions",
        );
    }

    for &sset in &subsets {
        let s_instance = format!("S={sset}");
        match check_equivalence_laws(s, sset, RelationForm::NegatedProof) {
            Ok(laws) => {
                let failure = laws.first_failure();
                let laws_pass = failure.is_none();
                records.push(Record::Theorem {
                    verdict: TheoremVerdict {
                        theorem: "equivalence-laws".to_string(),
                        universe: format!("{name}, S={sset}"),
                        pass: laws_pass,
                        counterexample: failure.map(|(law, w)| format!("{law}: {w}")),
                    },
                });
                if !laws_pass {
                    continue;
                }
            }
            Err(e) => {
                records.push(Record::Error {
                    structure: name.clone(),
                    instance: s_instance,
                    error: e.to_string(),
                });
                continue;
            }
        }

        let l = match build_localization(s, sset) {
            Ok(l) => {
                records.push(Record::Theorem {
                    verdict: TheoremVerdict {
                        theorem: "localization-well-defined".to_string(),
                        universe: format!("{name}, S={sset}"),
                        pass: true,
                        counterexample: None,
                    },
                });
                l
            }
            Err(e) => {
                records.push(Record::Theorem {
                    verdict: TheoremVerdict {
                        theorem: "localization-well-defined".to_string(),
                        universe: format!("{name}, S={sset}"),
                        pass: false,
                        counterexample: Some(e.to_string()),
                    },
                });
                continue;
            }
        };

        if s.is_hyperintegral_domain() {
            push_verdict(
                records,
                khr::fractions::check_domain_preserved(&l),
                &name,
                &format!("domain-preserved {s_instance}"),
            );
        }

        match check_fraction_identities(&l) {
            Ok(ids) => {
                let failure = ids.first_failure();
                records.push(Record::Theorem {
                    verdict: TheoremVerdict {
                        theorem: "fraction-identities".to_string(),
                        universe: format!("{name}, S={sset}"),
                        pass: failure.is_none(),
                        counterexample: failure.map(|(id, w)| format!("{id}: {w}")),
                    },
                });
            }
            Err(e) => records.push(Record::Error {
                structure: name.clone(),
                instance: format!("fraction-identities {s_instance}"),
                error: e.to_string(),
            }),
        }

        {
            let phi = natural_map(&l);
            let pass = is_homomorphism(s, l.structure(), &phi).unwrap_or(false);
            records.push(Record::Theorem {
                verdict: TheoremVerdict {
                    theorem: "natural-map-homomorphism".to_string(),
                    universe: format!("{name}, S={sset}"),
                    pass,
                    counterexample: (!pass)
                        .then(|| "phi violates a homomorphism equation".to_string()),
                },
            });
        }

        for &ideal in &ideals {
            push_verdict(
                records,
                check_unit_criterion(&l, ideal),
                &name,
                &format!("unit-criterion {s_instance} I={ideal}"),
            );
        }

        push_verdict(
            records,
            check_all_extended(&l),
            &name,
            &format!("extended-ideal {s_instance}"),
        );

        for &ideal in &ideals {
            push_verdict(
                records,
                check_radical_commutes(&l, ideal),
                &name,
                &format!("radical-commutes {s_instance} I={ideal}"),
            );
        }

        for &p in &primes {
            if p.intersect(sset).is_empty() {
                push_verdict(
                    records,
                    check_prime_preserved(&l, p),
                    &name,
                    &format!("prime-preserved {s_instance} P={p}"),
                );
            }
        }
        for &q in &ideals {
            if q != s.carrier() && q.intersect(sset).is_empty() && is_primary(s, q).unwrap_or(false)
            {
                push_verdict(
                    records,
                    check_primary_preserved(&l, q),
                    &name,
                    &format!("primary-preserved {s_instance} Q={q}"),
                );
            }
        }
        for &i in &ideals {
            if i != s.carrier()
                && i.intersect(sset).is_empty()
                && is_two_absorbing(s, i).unwrap_or(false)
            {
                push_verdict(
                    records,
                    check_two_absorbing_preserved(&l, i),
                    &name,
                    &format!("two-absorbing-preserved {s_instance} I={i}"),
                );
            }
        }

        for &ideal in &ideals {
            if ideal.intersect(sset).is_empty() {
                push_verdict(
                    records,
                    check_quotient_fraction_iso(s, sset, ideal),
                    &name,
                    &format!("quotient-fraction-iso {s_instance} I={ideal}"),
                );
            }
        }

        // universal property against every corpus target of the same arity
        for target in pool {
            if target.arity() != s.arity() {
                continue;
            }
            let homs = match enumerate_homomorphisms(s, target, hom_cap) {
                Ok(homs) => homs,
                Err(Error::SearchCapExceeded { required, cap }) => {
                    records.push(Record::Skip {
                        structure: name.clone(),
                        instance: format!(
                            "universal-property {s_instance} target `{}`",
                            target.name()
                        ),
                        reason: format!("{required} candidate maps exceed the cap of {cap}"),
                    });
                    continue;
                }
                Err(e) => {
                    records.push(Record::Error {
                        structure: name.clone(),
                        instance: format!(
                            "universal-property {s_instance} target `{}`",
                            target.name()
                        ),
                        error: e.to_string(),
                    });
                    continue;
                }
            };
            for k in homs {
                let all_units_invertible = sset.iter().all(|m| {
                    khr::fractions::is_invertible(target, k.apply(m))
                        .unwrap_or(None)
                        .is_some()
                });
                if !all_units_invertible {
                    continue;
                }
                push_verdict(
                    records,
                    check_universal_property(&l, target, &k, hom_cap),
                    &name,
                    &format!("universal-property {s_instance} target `{}`", target.name()),
                );
            }
        }
    }
}

/// Loads a corpus file and runs the suite.
pub fn run_suite_from_path(path: &Path, max_card: Option<usize>) -> Result<SuiteReport, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut spec = crate::corpus::parse_corpus(&text, base).map_err(|e| e.to_string())?;
    if let Some(cap) = max_card {
        spec.max_card = cap;
    }
    run_suite(&spec).map_err(|e| e.to_string())
}
