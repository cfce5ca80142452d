//! The `.khr` text format.
//!
//! ```text
//! khr 1
//! name <token>
//! m <int>  n <int>  card <int>
//! zero <idx>  one <idx>
//! flags commutative            # optional; applies to both f and g
//! f <i1> ... <im> : <j1> [<j2> ...]
//! g <i1> ... <in> : <j>
//! neg <i> : <j>                # optional
//! class <id> : <r>/<s> ...     # sidecar emitted for localizations
//! coset <id> : <e> ...         # sidecar emitted for quotients
//! ```
//!
//! `#` comments run to end of line. `*` is allowed in any argument position
//! of `f` and `g` lines; entries with fewer wildcards override entries with
//! more, and two overlapping entries of equal specificity must agree. With
//! `flags commutative` each entry also fills every permutation of its
//! argument tuple. Wildcard and permutation expansion happen at parse time,
//! so evaluation downstream is a plain table lookup.

use khr::fractions::Localization;
use khr::quotients::Quotient;
use khr::{ArityProfile, ElemSet, RawStructure, Structure};
use thiserror::Error;

#[derive(Debug, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// A parsed file: the raw tables plus any sidecar sections.
#[derive(Debug, Clone)]
pub struct StructureFile {
    pub raw: RawStructure,
    /// class-map sidecar: member pairs per fraction class, by class id
    pub classes: Option<Vec<Vec<(usize, usize)>>>,
    /// coset-map sidecar: member elements per coset, by coset id
    pub cosets: Option<Vec<Vec<usize>>>,
}

struct Entry {
    line: usize,
    args: Vec<Option<usize>>,
    values: ElemSet,
}

pub fn parse_structure(text: &str) -> Result<StructureFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (magic_line, magic) = lines.next().ok_or(ParseError {
        line: 1,
        message: "empty file, expected `khr 1` header".to_string(),
    })?;
    let tokens: Vec<&str> = magic.split_whitespace().collect();
    if tokens.first() != Some(&"khr") {
        return err(
            magic_line,
            format!(
                "bad magic `{}`, expected `khr`",
                tokens.first().unwrap_or(&"")
            ),
        );
    }
    if tokens.get(1) != Some(&"1") {
        return err(
            magic_line,
            format!(
                "unsupported version `{}`, expected 1",
                tokens.get(1).unwrap_or(&"?")
            ),
        );
    }

    let mut name: Option<String> = None;
    let mut arity: Option<(usize, usize)> = None;
    let mut card: Option<usize> = None;
    let mut zero_one: Option<(usize, usize)> = None;
    let mut commutative = false;
    let mut f_entries: Vec<Entry> = Vec::new();
    let mut g_entries: Vec<Entry> = Vec::new();
    let mut neg_entries: Vec<(usize, usize, usize)> = Vec::new();
    let mut class_lines: SidecarLines<(usize, usize)> = Vec::new();
    let mut coset_lines: SidecarLines<usize> = Vec::new();
    let mut last_line = magic_line;

    for (ln, line) in lines {
        last_line = ln;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "name" => {
                if tokens.len() != 2 {
                    return err(ln, "expected `name <token>`");
                }
                name = Some(tokens[1].to_string());
            }
            "m" => {
                if tokens.len() != 6 || tokens[2] != "n" || tokens[4] != "card" {
                    return err(ln, "expected `m <int> n <int> card <int>`");
                }
                let m = parse_int(ln, tokens[1])?;
                let n = parse_int(ln, tokens[3])?;
                arity = Some((m, n));
                card = Some(parse_int(ln, tokens[5])?);
            }
            "zero" => {
                if tokens.len() != 4 || tokens[2] != "one" {
                    return err(ln, "expected `zero <idx> one <idx>`");
                }
                zero_one = Some((parse_int(ln, tokens[1])?, parse_int(ln, tokens[3])?));
            }
            "flags" => {
                for &flag in &tokens[1..] {
                    match flag {
                        "commutative" => commutative = true,
                        other => return err(ln, format!("unknown flag `{other}`")),
                    }
                }
            }
            "f" | "g" => {
                let (m, n) = arity.ok_or(ParseError {
                    line: ln,
                    message: "table entry before the `m ... n ... card ...` line".to_string(),
                })?;
                let want = if tokens[0] == "f" { m } else { n };
                let colon = tokens.iter().position(|&t| t == ":").ok_or(ParseError {
                    line: ln,
                    message: "missing `:` separator".to_string(),
                })?;
                if colon - 1 != want {
                    return err(
                        ln,
                        format!(
                            "arity mismatch: {} arguments given, `{}` takes {}",
                            colon - 1,
                            tokens[0],
                            want
                        ),
                    );
                }
                let mut args = Vec::with_capacity(want);
                for &t in &tokens[1..colon] {
                    args.push(if t == "*" {
                        None
                    } else {
                        Some(parse_int(ln, t)?)
                    });
                }
                let value_tokens = &tokens[colon + 1..];
                if value_tokens.is_empty() {
                    return err(ln, "missing value after `:`");
                }
                if tokens[0] == "g" && value_tokens.len() != 1 {
                    return err(ln, "`g` entries take exactly one value");
                }
                let mut values = ElemSet::EMPTY;
                for &t in value_tokens {
                    values.insert(parse_int(ln, t)?);
                }
                let entry = Entry {
                    line: ln,
                    args,
                    values,
                };
                if tokens[0] == "f" {
                    f_entries.push(entry);
                } else {
                    g_entries.push(entry);
                }
            }
            "neg" => {
                if tokens.len() != 4 || tokens[2] != ":" {
                    return err(ln, "expected `neg <i> : <j>`");
                }
                neg_entries.push((ln, parse_int(ln, tokens[1])?, parse_int(ln, tokens[3])?));
            }
            "class" => {
                if tokens.len() < 4 || tokens[2] != ":" {
                    return err(ln, "expected `class <id> : <r>/<s> ...`");
                }
                let id = parse_int(ln, tokens[1])?;
                let mut members = Vec::new();
                for &t in &tokens[3..] {
                    let (r, s) = t.split_once('/').ok_or(ParseError {
                        line: ln,
                        message: format!("expected `<r>/<s>` pair, got `{t}`"),
                    })?;
                    members.push((parse_int(ln, r)?, parse_int(ln, s)?));
                }
                class_lines.push((ln, id, members));
            }
            "coset" => {
                if tokens.len() < 4 || tokens[2] != ":" {
                    return err(ln, "expected `coset <id> : <e> ...`");
                }
                let id = parse_int(ln, tokens[1])?;
                let mut members = Vec::new();
                for &t in &tokens[3..] {
                    members.push(parse_int(ln, t)?);
                }
                coset_lines.push((ln, id, members));
            }
            other => return err(ln, format!("unknown directive `{other}`")),
        }
    }

    let name = name.ok_or(ParseError {
        line: last_line,
        message: "missing `name` line".to_string(),
    })?;
    let (m, n) = arity.ok_or(ParseError {
        line: last_line,
        message: "missing `m ... n ... card ...` line".to_string(),
    })?;
    let card = card.unwrap();
    let (zero, one) = zero_one.ok_or(ParseError {
        line: last_line,
        message: "missing `zero ... one ...` line".to_string(),
    })?;
    if card == 0 || card > khr::MAX_CARD {
        return err(last_line, format!("card {card} out of range 1..=64"));
    }
    let arity = ArityProfile::new(m, n).map_err(|e| ParseError {
        line: last_line,
        message: e.to_string(),
    })?;

    let f = expand_table("f", &f_entries, card, m, commutative, last_line)?;
    let f: Vec<ElemSet> = f;
    let g_sets = expand_table("g", &g_entries, card, n, commutative, last_line)?;
    let mut g = Vec::with_capacity(g_sets.len());
    for (i, v) in g_sets.iter().enumerate() {
        if v.len() != 1 {
            return err(
                last_line,
                format!(
                    "g entry at {} has {} values",
                    render_tuple_index(i, card, n),
                    v.len()
                ),
            );
        }
        g.push(v.least().unwrap());
    }

    let neg = if neg_entries.is_empty() {
        None
    } else {
        let mut table = vec![usize::MAX; card];
        for &(ln, x, y) in &neg_entries {
            if x >= card || y >= card {
                return err(
                    ln,
                    format!("neg entry {x} : {y} out of range for card {card}"),
                );
            }
            if table[x] != usize::MAX && table[x] != y {
                return err(ln, format!("conflicting neg entries for {x}"));
            }
            table[x] = y;
        }
        if let Some(x) = table.iter().position(|&v| v == usize::MAX) {
            return err(last_line, format!("neg table is missing an entry for {x}"));
        }
        Some(table)
    };

    let raw =
        RawStructure::new(name, card, arity, commutative, zero, one, f, g, neg).map_err(|e| {
            ParseError {
                line: last_line,
                message: e.to_string(),
            }
        })?;

    let classes = collect_sidecar(class_lines)?;
    let cosets = collect_sidecar(coset_lines)?;
    Ok(StructureFile {
        raw,
        classes,
        cosets,
    })
}

/// (line number, declared id, members)
type SidecarLines<T> = Vec<(usize, usize, Vec<T>)>;

fn collect_sidecar<T>(lines: SidecarLines<T>) -> Result<Option<Vec<Vec<T>>>, ParseError> {
    if lines.is_empty() {
        return Ok(None);
    }
    let mut out = Vec::with_capacity(lines.len());
    for (expected, (ln, id, members)) in lines.into_iter().enumerate() {
        if id != expected {
            return err(
                ln,
                format!("sidecar ids must ascend from 0; got {id}, expected {expected}"),
            );
        }
        out.push(members);
    }
    Ok(Some(out))
}

fn parse_int(line: usize, token: &str) -> Result<usize, ParseError> {
    token.parse().map_err(|_| ParseError {
        line,
        message: format!("expected an integer, got `{token}`"),
    })
}

fn render_tuple(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn render_tuple_index(mut index: usize, card: usize, arity: usize) -> String {
    let mut t = vec![0; arity];
    for slot in t.iter_mut().rev() {
        *slot = index % card;
        index /= card;
    }
    render_tuple(&t)
}

/// Wildcard and permutation expansion. Entries are applied from most
/// wildcards to fewest, so specific entries win; overlapping entries at the
/// same specificity must agree.
fn expand_table(
    table: &str,
    entries: &[Entry],
    card: usize,
    arity: usize,
    commutative: bool,
    eof_line: usize,
) -> Result<Vec<ElemSet>, ParseError> {
    let len = card.pow(arity as u32);
    let mut values: Vec<Option<ElemSet>> = vec![None; len];
    let mut writer: Vec<Option<(usize, usize)>> = vec![None; len]; // (tier, line)

    let max_wild = arity;
    for tier in 0..=max_wild {
        let wildcards = max_wild - tier; // most wildcards first
        for entry in entries
            .iter()
            .filter(|e| e.args.iter().filter(|a| a.is_none()).count() == wildcards)
        {
            for &v in entry.values.to_vec().iter() {
                if v >= card {
                    return err(
                        entry.line,
                        format!("value {v} out of range for card {card}"),
                    );
                }
            }
            let domains: Vec<Vec<usize>> = entry
                .args
                .iter()
                .map(|a| match a {
                    Some(v) => vec![*v],
                    None => (0..card).collect(),
                })
                .collect();
            for (pos, d) in domains.iter().enumerate() {
                if d.iter().any(|&v| v >= card) {
                    return err(
                        entry.line,
                        format!(
                            "argument {} at position {} out of range for card {card}",
                            d[0],
                            pos + 1
                        ),
                    );
                }
            }
            let mut tuples: Vec<Vec<usize>> = Vec::new();
            let mut it = ProductIter::new(&domains);
            while let Some(t) = it.next() {
                if commutative {
                    permutations(t, &mut tuples);
                } else {
                    tuples.push(t.to_vec());
                }
            }
            for t in tuples {
                let idx = t.iter().fold(0, |acc, &x| acc * card + x);
                match writer[idx] {
                    Some((w_tier, w_line)) if w_tier == tier => {
                        if values[idx] != Some(entry.values) {
                            return err(
                                entry.line,
                                format!(
                                    "conflicting `{table}` entries for {}: line {} says {}, line {} says {}",
                                    render_tuple(&t),
                                    w_line,
                                    values[idx].unwrap(),
                                    entry.line,
                                    entry.values
                                ),
                            );
                        }
                    }
                    _ => {
                        values[idx] = Some(entry.values);
                        writer[idx] = Some((tier, entry.line));
                    }
                }
            }
        }
    }

    if let Some(missing) = values.iter().position(|v| v.is_none()) {
        return err(
            eof_line,
            format!(
                "`{table}` table is not total: no entry for {}",
                render_tuple_index(missing, card, arity)
            ),
        );
    }
    Ok(values.into_iter().map(|v| v.unwrap()).collect())
}

struct ProductIter<'a> {
    domains: &'a [Vec<usize>],
    idx: Vec<usize>,
    buf: Vec<usize>,
    fresh: bool,
    done: bool,
}

impl<'a> ProductIter<'a> {
    fn new(domains: &'a [Vec<usize>]) -> Self {
        let done = domains.iter().any(|d| d.is_empty());
        let buf = domains
            .iter()
            .map(|d| d.first().copied().unwrap_or(0))
            .collect();
        ProductIter {
            domains,
            idx: vec![0; domains.len()],
            buf,
            fresh: true,
            done,
        }
    }

    fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(&self.buf);
        }
        let mut i = self.domains.len();
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            self.idx[i] += 1;
            if self.idx[i] < self.domains[i].len() {
                self.buf[i] = self.domains[i][self.idx[i]];
                break;
            }
            self.idx[i] = 0;
            self.buf[i] = self.domains[i][0];
        }
        Some(&self.buf)
    }
}

fn permutations(t: &[usize], out: &mut Vec<Vec<usize>>) {
    let mut t = t.to_vec();
    let k = t.len();
    // Heap's algorithm, iterative
    let mut c = vec![0usize; k];
    out.push(t.clone());
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                t.swap(0, i);
            } else {
                t.swap(c[i], i);
            }
            out.push(t.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Serializes full tables in lexicographic order; `parse_structure` of the
/// output reproduces the tables, ids and flags byte for byte.
pub fn serialize_structure(s: &Structure) -> String {
    let raw = s.to_raw();
    let mut out = String::new();
    out.push_str("khr 1\n");
    out.push_str(&format!("name {}\n", raw.name));
    out.push_str(&format!(
        "m {} n {} card {}\n",
        raw.arity.m, raw.arity.n, raw.card
    ));
    out.push_str(&format!("zero {} one {}\n", raw.zero, raw.one));
    if raw.commutative {
        out.push_str("flags commutative\n");
    }
    let mut tuple = vec![0usize; raw.arity.m];
    for (i, v) in raw.f.iter().enumerate() {
        untuple(i, raw.card, &mut tuple);
        out.push_str(&format!("f {} : {}\n", join(&tuple), join(&v.to_vec())));
    }
    let mut tuple = vec![0usize; raw.arity.n];
    for (i, &v) in raw.g.iter().enumerate() {
        untuple(i, raw.card, &mut tuple);
        out.push_str(&format!("g {} : {}\n", join(&tuple), v));
    }
    if let Some(neg) = &raw.neg {
        for (x, &y) in neg.iter().enumerate() {
            out.push_str(&format!("neg {x} : {y}\n"));
        }
    }
    out
}

/// A localization in the standard format plus its class-map sidecar.
pub fn serialize_localization(l: &Localization) -> String {
    let mut out = serialize_structure(l.structure());
    for class in l.classes() {
        let members: Vec<String> = class
            .members
            .iter()
            .map(|(r, s)| format!("{r}/{s}"))
            .collect();
        out.push_str(&format!("class {} : {}\n", class.id, members.join(" ")));
    }
    out
}

/// A quotient in the standard format plus its coset-map sidecar.
pub fn serialize_quotient(q: &Quotient) -> String {
    let mut out = serialize_structure(q.structure());
    for (id, coset) in q.cosets().iter().enumerate() {
        out.push_str(&format!("coset {} : {}\n", id, join(&coset.to_vec())));
    }
    out
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn untuple(mut index: usize, card: usize, t: &mut [usize]) {
    for slot in t.iter_mut().rev() {
        *slot = index % card;
        index /= card;
    }
}
