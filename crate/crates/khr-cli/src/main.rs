use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use khr::fractions::{
    build_localization_with, check_equivalence_laws, is_invertible, Localization, RelationForm,
};
use khr::ideals::{
    enumerate_hyperideals, is_hyperideal, is_maximal, is_multiplicative, is_primary, is_prime,
    is_two_absorbing, radical,
};
use khr::morphisms::{check_universal_property, find_isomorphism, MapTable};
use khr::quotients::build_quotient;
use khr::{validate_structure, ElemSet, Structure, ValidationMode};

use khr_cli::format::{parse_structure, serialize_localization, serialize_quotient};
use khr_cli::suite::{run_suite_from_path, DEFAULT_HOM_CAP};

const DEFAULT_SINGLE_MAX_CARD: usize = 8;
const DEFAULT_MAX_ARITY: usize = 4;

/// Exit code 0: all verdicts pass. 1: some verdict failed. 2: usage or
/// format error.
#[derive(Parser)]
#[command(
    name = "khr",
    version,
    about = "Finite Krasner (m,n)-hyperrings: validate axioms, classify hyperideals, build localizations and quotients, and verify the transport theorems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum FormArg {
    /// the negated form the proofs use (default)
    #[default]
    Negated,
    /// the un-negated form of the relation display, for comparison
    Display,
}

impl From<FormArg> for RelationForm {
    fn from(f: FormArg) -> RelationForm {
        match f {
            FormArg::Negated => RelationForm::NegatedProof,
            FormArg::Display => RelationForm::UnNegatedDisplay,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom and print one verdict per axiom
    Validate {
        file: PathBuf,
        /// only require the containment direction of distributivity
        #[arg(long)]
        weak: bool,
        #[arg(long)]
        max_card: Option<usize>,
    },
    /// List every hyperideal in ascending bitmask order
    Ideals {
        file: PathBuf,
        #[arg(long)]
        max_card: Option<usize>,
        /// accept structures that only validate weakly
        #[arg(long)]
        allow_weak: bool,
    },
    /// Classify a subset: hyperideal, multiplicative, prime, primary,
    /// 2-absorbing, maximal, radical
    Classify {
        file: PathBuf,
        /// comma-separated element indices, e.g. 0,2,4
        #[arg(long, value_name = "LIST")]
        ideal: String,
        #[arg(long)]
        max_card: Option<usize>,
        #[arg(long)]
        allow_weak: bool,
    },
    /// The radical of a hyperideal
    Radical {
        file: PathBuf,
        #[arg(long, value_name = "LIST")]
        ideal: String,
        #[arg(long)]
        max_card: Option<usize>,
        #[arg(long)]
        allow_weak: bool,
    },
    /// Build the hyperring of fractions at a multiplicative subset (or at
    /// the complement of a prime)
    Localize {
        file: PathBuf,
        #[arg(long, value_name = "LIST", conflicts_with = "at_prime")]
        subset: Option<String>,
        #[arg(long, value_name = "LIST")]
        at_prime: Option<String>,
        /// write the localized structure (with class sidecar) here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        allow_weak: bool,
        /// which form of the fraction relation to use
        #[arg(long, value_enum, default_value_t)]
        relation_form: FormArg,
        #[arg(long)]
        max_card: Option<usize>,
    },
    /// Build the quotient by a hyperideal
    Quotient {
        file: PathBuf,
        #[arg(long, value_name = "LIST")]
        ideal: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        allow_weak: bool,
        #[arg(long)]
        max_card: Option<usize>,
    },
    /// Search for an isomorphism between two structures
    Iso {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long)]
        max_card: Option<usize>,
        #[arg(long)]
        allow_weak: bool,
    },
    /// Check the universal property of the localization against a target
    /// structure and homomorphism
    Universal {
        file: PathBuf,
        #[arg(long, value_name = "LIST")]
        subset: String,
        #[arg(long)]
        target: PathBuf,
        /// the homomorphism as comma-separated src:dst pairs, e.g. 0:0,1:1
        #[arg(long, value_name = "PAIRS")]
        map: String,
        #[arg(long)]
        max_card: Option<usize>,
    },
    /// Run the full theorem suite over a corpus file
    Suite {
        corpus: PathBuf,
        /// write the JSON report here
        #[arg(long)]
        json: Option<PathBuf>,
        /// override the corpus card cap
        #[arg(long)]
        max_card: Option<usize>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn parse_list(list: &str) -> Result<ElemSet, String> {
    let mut out = ElemSet::EMPTY;
    for part in list.split(',') {
        let part = part.trim();
        let v: usize = part
            .parse()
            .map_err(|_| format!("bad element index `{part}`"))?;
        if v >= khr::MAX_CARD {
            return Err(format!("element index {v} out of range"));
        }
        out.insert(v);
    }
    Ok(out)
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn check_caps(raw: &khr::RawStructure, max_card: Option<usize>) -> Result<(), String> {
    let cap = max_card.unwrap_or(DEFAULT_SINGLE_MAX_CARD);
    if cap > DEFAULT_SINGLE_MAX_CARD {
        eprintln!("warning: card cap raised to {cap}; exhaustive checks grow as card^(2n-1)");
    }
    if raw.card > cap {
        return Err(format!(
            "carrier of {} exceeds the cap of {cap} (raise with --max-card)",
            raw.card
        ));
    }
    if raw.arity.m > DEFAULT_MAX_ARITY || raw.arity.n > DEFAULT_MAX_ARITY {
        return Err(format!(
            "arity ({},{}) exceeds the supported maximum of {DEFAULT_MAX_ARITY}",
            raw.arity.m, raw.arity.n
        ));
    }
    Ok(())
}

/// Parses, caps-checks and validates a structure file. The outer error is a
/// usage/format problem (exit 2); the inner one a failed validation verdict
/// (exit 1).
fn load_structure(
    path: &Path,
    max_card: Option<usize>,
    allow_weak: bool,
) -> Result<Result<Structure, String>, String> {
    let text = read_file(path)?;
    let file = parse_structure(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    check_caps(&file.raw, max_card)?;
    let strict = validate_structure(&file.raw, ValidationMode::Strict);
    if strict.all_pass() {
        return Ok(Ok(
            Structure::from_raw(file.raw, ValidationMode::Strict).expect("all-pass")
        ));
    }
    if allow_weak {
        let weak = validate_structure(&file.raw, ValidationMode::Weak);
        if weak.all_pass() {
            eprintln!(
                "warning: `{}` only validates weakly; theorem guarantees do not apply",
                file.raw.name
            );
            return Ok(Ok(
                Structure::from_raw(file.raw, ValidationMode::Weak).expect("all-pass")
            ));
        }
    }
    let first = strict.first_failure().expect("non-pass report");
    Ok(Err(format!(
        "`{}` fails strict validation at {}: {}",
        file.raw.name,
        first.axiom.id(),
        first.counterexample.as_deref().unwrap_or("")
    )))
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Validate {
            file,
            weak,
            max_card,
        } => {
            let text = read_file(&file)?;
            let parsed = parse_structure(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            check_caps(&parsed.raw, max_card)?;
            let mode = if weak {
                ValidationMode::Weak
            } else {
                ValidationMode::Strict
            };
            let report = validate_structure(&parsed.raw, mode);
            println!(
                "structure `{}` card {} arity ({},{}) mode {}",
                parsed.raw.name, parsed.raw.card, parsed.raw.arity.m, parsed.raw.arity.n, mode
            );
            for check in &report.checks {
                match &check.counterexample {
                    None => println!("  pass {}", check.axiom.id()),
                    Some(c) => println!("  FAIL {}: {}", check.axiom.id(), c),
                }
            }
            let verdict = if report.all_pass() {
                "valid"
            } else {
                "INVALID"
            };
            println!("{verdict} under {mode} distributivity");
            Ok(report.all_pass())
        }
        Command::Ideals {
            file,
            max_card,
            allow_weak,
        } => {
            let s = match load_structure(&file, max_card, allow_weak)? {
                Ok(s) => s,
                Err(why) => return failed(&why),
            };
            let ideals = enumerate_hyperideals(&s);
            for ideal in &ideals {
                println!("{ideal}");
            }
            println!("{} hyperideal(s) of `{}`", ideals.len(), s.name());
            Ok(true)
        }
        Command::Classify {
            file,
            ideal,
            max_card,
            allow_weak,
        } => {
            let s = match load_structure(&file, max_card, allow_weak)? {
                Ok(s) => s,
                Err(why) => return failed(&why),
            };
            let a = parse_list(&ideal)?;
            println!("subset {a} of `{}`", s.name());
            let hyperideal = is_hyperideal(&s, a).map_err(|e| e.to_string())?;
            println!("  hyperideal: {hyperideal}");
            println!("  multiplicative: {}", is_multiplicative(&s, a));
            if hyperideal && a != s.carrier() {
                println!("  prime: {}", is_prime(&s, a).map_err(|e| e.to_string())?);
                println!(
                    "  primary: {}",
                    is_primary(&s, a).map_err(|e| e.to_string())?
                );
                println!(
                    "  two-absorbing: {}",
                    is_two_absorbing(&s, a).map_err(|e| e.to_string())?
                );
                println!(
                    "  maximal: {}",
                    is_maximal(&s, a).map_err(|e| e.to_string())?
                );
            } else if hyperideal {
                println!("  prime: false (improper)");
            }
            if hyperideal {
                println!("  radical: {}", radical(&s, a).map_err(|e| e.to_string())?);
            }
            Ok(true)
        }
        Command::Radical {
            file,
            ideal,
            max_card,
            allow_weak,
        } => {
            let s = match load_structure(&file, max_card, allow_weak)? {
                Ok(s) => s,
                Err(why) => return failed(&why),
            };
            let a = parse_list(&ideal)?;
            let rad = radical(&s, a).map_err(|e| e.to_string())?;
            println!("{rad}");
            Ok(true)
        }
        Command::Localize {
            file,
            subset,
            at_prime,
            out,
            allow_weak,
            relation_form,
            max_card,
        } => {
            let s = match load_structure(&file, max_card, allow_weak)? {
                Ok(s) => s,
                Err(why) => return failed(&why),
            };
            let sset = match (&subset, &at_prime) {
                (Some(list), None) => parse_list(list)?,
                (None, Some(list)) => {
                    let p = parse_list(list)?;
                    if !is_prime(&s, p).map_err(|e| e.to_string())? {
                        return Err(format!(
                            "{p} is not an n-ary prime hyperideal of `{}`",
                            s.name()
                        ));
                    }
                    s.carrier().minus(p)
                }
                _ => return Err("exactly one of --subset or --at-prime is required".to_string()),
            };
            let form: RelationForm = relation_form.into();
            let laws = check_equivalence_laws(&s, sset, form).map_err(|e| e.to_string())?;
            match laws.first_failure() {
                None => println!("relation on R x S is an equivalence ({} pairs)", laws.pairs),
                Some((law, witness)) => {
                    return failed(&format!("relation on R x S is not {law}: {witness}"));
                }
            }
            let l = match build_localization_with(&s, sset, form) {
                Ok(l) => l,
                Err(e) => return failed(&format!("localization refused: {e}")),
            };
            print_localization(&l);
            if let Some(out) = out {
                fs::write(&out, serialize_localization(&l))
                    .map_err(|e| format!("{}: {e}", out.display()))?;
                println!("wrote {}", out.display());
            }
            Ok(true)
        }
        Command::Quotient {
            file,
            ideal,
            out,
            allow_weak,
            max_card,
        } => {
            let s = match load_structure(&file, max_card, allow_weak)? {
                Ok(s) => s,
                Err(why) => return failed(&why),
            };
            let a = parse_list(&ideal)?;
            let q = match build_quotient(&s, a) {
                Ok(q) => q,
                Err(e) => return failed(&format!("quotient refused: {e}")),
            };
            println!("`{}`: {} coset(s)", q.structure().name(), q.cosets().len());
            for (i, coset) in q.cosets().iter().enumerate() {
                let marker = if i == q.zero_coset() {
                    " (zero)"
                } else if i == q.one_coset() {
                    " (one)"
                } else {
                    ""
                };
                println!("  coset {i}: {coset}{marker}");
            }
            if let Some(out) = out {
                fs::write(&out, serialize_quotient(&q))
                    .map_err(|e| format!("{}: {e}", out.display()))?;
                println!("wrote {}", out.display());
            }
            Ok(true)
        }
        Command::Iso {
            file_a,
            file_b,
            max_card,
            allow_weak,
        } => {
            let a = match load_structure(&file_a, max_card, allow_weak)? {
                Ok(s) => s,
                Err(why) => return failed(&why),
            };
            let b = match load_structure(&file_b, max_card, allow_weak)? {
                Ok(s) => s,
                Err(why) => return failed(&why),
            };
            match find_isomorphism(&a, &b) {
                Some(iso) => {
                    println!("isomorphic: `{}` ~ `{}`", a.name(), b.name());
                    println!("{}", iso.render());
                    Ok(true)
                }
                None => failed(&format!(
                    "no isomorphism between `{}` and `{}`",
                    a.name(),
                    b.name()
                )),
            }
        }
        Command::Universal {
            file,
            subset,
            target,
            map,
            max_card,
        } => {
            let s = match load_structure(&file, max_card, false)? {
                Ok(s) => s,
                Err(why) => return failed(&why),
            };
            let b = match load_structure(&target, max_card, false)? {
                Ok(s) => s,
                Err(why) => return failed(&why),
            };
            let sset = parse_list(&subset)?;
            let k = parse_map(&map, &s, &b)?;
            let l = build_localization_with(&s, sset, RelationForm::NegatedProof)
                .map_err(|e| e.to_string())?;
            let verdict =
                check_universal_property(&l, &b, &k, DEFAULT_HOM_CAP).map_err(|e| e.to_string())?;
            if verdict.pass {
                println!("pass {} [{}]", verdict.theorem, verdict.universe);
                // h for display: h(r/s) = g(k(r), k(s)^-1, 1^(n-2))
                let mut h = vec![0; l.structure().card()];
                for class in l.classes() {
                    let (r, d) = class.canonical();
                    let inv = is_invertible(&b, k.apply(d))
                        .map_err(|e| e.to_string())?
                        .expect("hypothesis checked");
                    let mut t = vec![b.one(); b.n()];
                    t[0] = k.apply(r);
                    t[1] = inv;
                    h[class.id] = b.eval_g(&t).map_err(|e| e.to_string())?;
                }
                println!("{}", MapTable { image: h }.render());
                Ok(true)
            } else {
                failed(&format!(
                    "{} [{}]: {}",
                    verdict.theorem,
                    verdict.universe,
                    verdict.counterexample.as_deref().unwrap_or("")
                ))
            }
        }
        Command::Suite {
            corpus,
            json,
            max_card,
        } => {
            if let Some(cap) = max_card {
                if cap > khr_cli::corpus::DEFAULT_SUITE_MAX_CARD {
                    eprintln!(
                        "warning: suite card cap raised to {cap}; exhaustive checks grow as card^(2n-1)"
                    );
                }
            }
            let report = run_suite_from_path(&corpus, max_card)?;
            for record in &report.records {
                println!("{}", record.one_line());
            }
            let s = &report.summary;
            println!(
                "{} records: {} theorems passed, {} failed, {} validation failures, {} adjudications, {} skips, {} errors",
                s.records,
                s.theorems_passed,
                s.theorems_failed,
                s.validations_failed,
                s.adjudications,
                s.skips,
                s.errors
            );
            if let Some(path) = json {
                fs::write(&path, report.to_json())
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                println!("wrote {}", path.display());
            }
            Ok(report.all_pass())
        }
    }
}

fn failed(why: &str) -> Result<bool, String> {
    println!("FAIL: {why}");
    Ok(false)
}

fn parse_map(pairs: &str, source: &Structure, target: &Structure) -> Result<MapTable, String> {
    let mut image = vec![usize::MAX; source.card()];
    for part in pairs.split(',') {
        let part = part.trim();
        let (src, dst) = part
            .split_once(':')
            .ok_or_else(|| format!("expected `src:dst` pair, got `{part}`"))?;
        let src: usize = src
            .trim()
            .parse()
            .map_err(|_| format!("bad index `{src}`"))?;
        let dst: usize = dst
            .trim()
            .parse()
            .map_err(|_| format!("bad index `{dst}`"))?;
        if src >= source.card() {
            return Err(format!("source index {src} out of range"));
        }
        if image[src] != usize::MAX {
            return Err(format!("duplicate mapping for source {src}"));
        }
        image[src] = dst;
    }
    if let Some(missing) = image.iter().position(|&v| v == usize::MAX) {
        return Err(format!("map is missing an image for {missing}"));
    }
    MapTable::new(image, source, target).map_err(|e| e.to_string())
}

fn print_localization(l: &Localization) {
    println!(
        "`{}`: {} fraction class(es) over S={}",
        l.structure().name(),
        l.classes().len(),
        l.sset()
    );
    for class in l.classes() {
        let members: Vec<String> = class
            .members
            .iter()
            .map(|(r, s)| format!("{r}/{s}"))
            .collect();
        let marker = if class.id == l.zero_class() {
            " (zero)"
        } else if class.id == l.one_class() {
            " (one)"
        } else {
            ""
        };
        println!("  class {}: {}{}", class.id, members.join(" "), marker);
    }
    println!("strict validation: pass");
}
