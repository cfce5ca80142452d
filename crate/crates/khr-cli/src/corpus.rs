//! Corpus files: one directive per line, `#` comments.
//!
//! ```text
//! ring Z 6                      # builtin generator
//! file paper_33.khr expect adjudicate
//! cap card 6                    # optional size caps
//! cap m 4
//! cap n 4
//! ```
//!
//! `file` paths are resolved relative to the corpus file's directory.
//! Structures tagged `expect adjudicate` get their validation verdict
//! recorded instead of being required to pass strictly.

use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
#[error("corpus line {line}: {message}")]
pub struct CorpusError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusEntry {
    Ring { modulus: usize },
    File { path: PathBuf, adjudicate: bool },
}

#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub entries: Vec<CorpusEntry>,
    pub max_card: usize,
    pub max_m: usize,
    pub max_n: usize,
}

pub const DEFAULT_SUITE_MAX_CARD: usize = 6;
pub const DEFAULT_MAX_ARITY: usize = 4;

pub fn parse_corpus(text: &str, base_dir: &Path) -> Result<CorpusSpec, CorpusError> {
    let mut spec = CorpusSpec {
        entries: Vec::new(),
        max_card: DEFAULT_SUITE_MAX_CARD,
        max_m: DEFAULT_MAX_ARITY,
        max_n: DEFAULT_MAX_ARITY,
    };
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let fail = |message: String| CorpusError {
            line: line_no,
            message,
        };
        match tokens[0] {
            "ring" => {
                if tokens.len() != 3 || tokens[1] != "Z" {
                    return Err(fail("expected `ring Z <k>`".to_string()));
                }
                let modulus = tokens[2]
                    .parse()
                    .map_err(|_| fail(format!("bad modulus `{}`", tokens[2])))?;
                spec.entries.push(CorpusEntry::Ring { modulus });
            }
            "file" => {
                let adjudicate = match tokens.len() {
                    2 => false,
                    4 if tokens[2] == "expect" && tokens[3] == "adjudicate" => true,
                    _ => {
                        return Err(fail(
                            "expected `file <path> [expect adjudicate]`".to_string(),
                        ))
                    }
                };
                spec.entries.push(CorpusEntry::File {
                    path: base_dir.join(tokens[1]),
                    adjudicate,
                });
            }
            "cap" => {
                if tokens.len() != 3 {
                    return Err(fail("expected `cap (card|m|n) <int>`".to_string()));
                }
                let value = tokens[2]
                    .parse()
                    .map_err(|_| fail(format!("bad cap value `{}`", tokens[2])))?;
                match tokens[1] {
                    "card" => spec.max_card = value,
                    "m" => spec.max_m = value,
                    "n" => spec.max_n = value,
                    other => return Err(fail(format!("unknown cap `{other}`"))),
                }
            }
            other => return Err(fail(format!("unknown directive `{other}`"))),
        }
    }
    Ok(spec)
}
