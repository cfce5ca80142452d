use std::fmt;

use serde::Serialize;

use crate::set::ElemSet;
use crate::structure::RawStructure;
use crate::tuples::{fmt_tuple, Tuples};

/// How distributivity of `g` over `f` is checked: `Strict` demands the set
/// equality of the defining axiom; `Weak` only demands that the left side
/// contains the right. Everything downstream of validation expects strict
/// structures; weak mode exists so a structure whose distributivity needs
/// adjudication can still be loaded and examined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ValidationMode {
    Strict,
    Weak,
}

impl ValidationMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ValidationMode::Strict => "strict",
            ValidationMode::Weak => "weak",
        }
    }
}

impl fmt::Display for ValidationMode {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    FAssociative,
    FReproducible,
    ZeroScalarNeutral,
    UniqueInverses,
    Reversible,
    GAssociative,
    GDistributive,
    ZeroAbsorbing,
    OneScalarIdentity,
    FCommutative,
    GCommutative,
}

impl Axiom {
    pub fn id(self) -> &'static str {
        match self {
            Axiom::FAssociative => "f-associative",
            Axiom::FReproducible => "f-reproducible",
            Axiom::ZeroScalarNeutral => "zero-scalar-neutral",
            Axiom::UniqueInverses => "unique-inverses",
            Axiom::Reversible => "reversible",
            Axiom::GAssociative => "g-associative",
            Axiom::GDistributive => "g-distributive",
            Axiom::ZeroAbsorbing => "zero-absorbing",
            Axiom::OneScalarIdentity => "one-scalar-identity",
            Axiom::FCommutative => "f-commutative",
            Axiom::GCommutative => "g-commutative",
        }
    }
}

/// One axiom's verdict; `counterexample` holds the lexicographically first
/// failing tuple, rendered, so reports are reproducible byte for byte.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub structure: String,
    pub mode: ValidationMode,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.failures().next()
    }

    pub fn check(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

/// Checks every defining axiom exhaustively and returns one verdict per
/// axiom. Deterministic: same tables, same report. Commutativity checks are
/// emitted only when the structure declares the flag.
pub fn validate_structure(raw: &RawStructure, mode: ValidationMode) -> ValidationReport {
    let mut checks = Vec::new();
    let mut push = |axiom: Axiom, counterexample: Option<String>| {
        checks.push(AxiomCheck {
            axiom,
            pass: counterexample.is_none(),
            counterexample,
        });
    };

    push(Axiom::FAssociative, f_associative(raw));
    push(Axiom::FReproducible, f_reproducible(raw));
    push(Axiom::ZeroScalarNeutral, zero_scalar_neutral(raw));
    let neg = compute_neg(raw);
    push(Axiom::UniqueInverses, unique_inverses(raw, neg.as_deref()));
    push(
        Axiom::Reversible,
        match &neg {
            Some(neg) => reversible(raw, neg),
            None => Some("requires unique inverses, which are not established".to_string()),
        },
    );
    push(Axiom::GAssociative, g_associative(raw));
    push(Axiom::GDistributive, distributive(raw, mode));
    push(Axiom::ZeroAbsorbing, zero_absorbing(raw));
    push(Axiom::OneScalarIdentity, one_scalar_identity(raw));
    if raw.commutative {
        push(Axiom::FCommutative, commutative(raw, true));
        push(Axiom::GCommutative, commutative(raw, false));
    }

    ValidationReport {
        structure: raw.name.clone(),
        mode,
        checks,
    }
}

/// The unique inverse of each element under `f(x, y, 0^(m-2))`, if every
/// element has exactly one. `None` as soon as some element does not.
pub(crate) fn compute_neg(raw: &RawStructure) -> Option<Vec<usize>> {
    let mut neg = Vec::with_capacity(raw.card);
    let mut t = vec![raw.zero; raw.arity.m];
    for x in 0..raw.card {
        let mut witnesses = ElemSet::EMPTY;
        for y in 0..raw.card {
            t[0] = x;
            t[1] = y;
            if raw.f_at(&t).contains(raw.zero) {
                witnesses.insert(y);
            }
        }
        if witnesses.len() != 1 {
            return None;
        }
        neg.push(witnesses.least().unwrap());
    }
    Some(neg)
}

fn f_with_set(raw: &RawStructure, before: &[usize], inner: ElemSet, after: &[usize]) -> ElemSet {
    let m = raw.arity.m;
    debug_assert_eq!(before.len() + 1 + after.len(), m);
    let mut t = vec![0; m];
    t[..before.len()].copy_from_slice(before);
    t[before.len() + 1..].copy_from_slice(after);
    let mut out = ElemSet::EMPTY;
    for u in inner.iter() {
        t[before.len()] = u;
        out = out.union(raw.f_at(&t));
    }
    out
}

fn f_associative(raw: &RawStructure) -> Option<String> {
    let m = raw.arity.m;
    let mut it = Tuples::new(raw.card, 2 * m - 1);
    while let Some(t) = it.next() {
        let mut first = None;
        for i in 0..m {
            let inner = raw.f_at(&t[i..i + m]);
            let v = f_with_set(raw, &t[..i], inner, &t[i + m..]);
            match first {
                None => first = Some(v),
                Some(v0) if v0 != v => {
                    return Some(format!(
                        "t={} i=1 j={} lhs={} rhs={}",
                        fmt_tuple(t),
                        i + 1,
                        v0,
                        v
                    ));
                }
                Some(_) => {}
            }
        }
    }
    None
}

fn g_associative(raw: &RawStructure) -> Option<String> {
    let n = raw.arity.n;
    let mut buf = vec![0; n];
    let mut it = Tuples::new(raw.card, 2 * n - 1);
    while let Some(t) = it.next() {
        let mut first = None;
        for i in 0..n {
            let inner = raw.g_at(&t[i..i + n]);
            buf[..i].copy_from_slice(&t[..i]);
            buf[i] = inner;
            buf[i + 1..].copy_from_slice(&t[i + n..]);
            let v = raw.g_at(&buf);
            match first {
                None => first = Some(v),
                Some(v0) if v0 != v => {
                    return Some(format!(
                        "t={} i=1 j={} lhs={} rhs={}",
                        fmt_tuple(t),
                        i + 1,
                        v0,
                        v
                    ));
                }
                Some(_) => {}
            }
        }
    }
    None
}

fn f_reproducible(raw: &RawStructure) -> Option<String> {
    let m = raw.arity.m;
    let mut t = vec![0; m];
    for b in 0..raw.card {
        for pos in 0..m {
            let mut rest = Tuples::new(raw.card, m - 1);
            while let Some(a) = rest.next() {
                t[..pos].copy_from_slice(&a[..pos]);
                t[pos + 1..].copy_from_slice(&a[pos..]);
                let solvable = (0..raw.card).any(|x| {
                    t[pos] = x;
                    raw.f_at(&t).contains(b)
                });
                if !solvable {
                    return Some(format!(
                        "b={} pos={} a={}: no solution",
                        b,
                        pos + 1,
                        fmt_tuple(a)
                    ));
                }
            }
        }
    }
    None
}

fn is_scalar_neutral(raw: &RawStructure, e: usize) -> Option<String> {
    let m = raw.arity.m;
    let mut t = vec![e; m];
    for x in 0..raw.card {
        for pos in 0..m {
            t[pos] = x;
            let v = raw.f_at(&t);
            t[pos] = e;
            if v != ElemSet::singleton(x) {
                return Some(format!("pos={} x={} got={}", pos + 1, x, v));
            }
        }
    }
    None
}

fn zero_scalar_neutral(raw: &RawStructure) -> Option<String> {
    if let Some(why) = is_scalar_neutral(raw, raw.zero) {
        return Some(format!(
            "declared zero={} is not scalar neutral: {}",
            raw.zero, why
        ));
    }
    for e in 0..raw.card {
        if e != raw.zero && is_scalar_neutral(raw, e).is_none() {
            return Some(format!("e={e} is a second scalar neutral"));
        }
    }
    None
}

fn unique_inverses(raw: &RawStructure, neg: Option<&[usize]>) -> Option<String> {
    let Some(neg) = neg else {
        // recompute to locate the offending element
        let mut t = vec![raw.zero; raw.arity.m];
        for x in 0..raw.card {
            let mut witnesses = ElemSet::EMPTY;
            for y in 0..raw.card {
                t[0] = x;
                t[1] = y;
                if raw.f_at(&t).contains(raw.zero) {
                    witnesses.insert(y);
                }
            }
            if witnesses.len() != 1 {
                return Some(format!(
                    "x={} has {} inverses {}",
                    x,
                    witnesses.len(),
                    witnesses
                ));
            }
        }
        unreachable!("compute_neg only fails when some element lacks a unique inverse");
    };
    if neg[raw.zero] != raw.zero {
        return Some(format!("neg(zero)={} is not zero", neg[raw.zero]));
    }
    for x in 0..raw.card {
        if neg[neg[x]] != x {
            return Some(format!(
                "neg(neg({}))={} differs from {}",
                x, neg[neg[x]], x
            ));
        }
    }
    if let Some(declared) = &raw.neg {
        for x in 0..raw.card {
            if declared[x] != neg[x] {
                return Some(format!(
                    "declared neg({})={} but the unique inverse is {}",
                    x, declared[x], neg[x]
                ));
            }
        }
    }
    None
}

fn reversible(raw: &RawStructure, neg: &[usize]) -> Option<String> {
    let m = raw.arity.m;
    let mut inv = vec![0; m];
    let mut it = Tuples::new(raw.card, m);
    while let Some(t) = it.next() {
        let sum = raw.f_at(t);
        for y in sum.iter() {
            for pos in 0..m {
                inv[0] = y;
                let mut k = 1;
                for (j, &xj) in t.iter().enumerate() {
                    if j != pos {
                        inv[k] = neg[xj];
                        k += 1;
                    }
                }
                if !raw.f_at(&inv).contains(t[pos]) {
                    return Some(format!("t={} y={} pos={}", fmt_tuple(t), y, pos + 1));
                }
            }
        }
    }
    None
}

fn distributive(raw: &RawStructure, mode: ValidationMode) -> Option<String> {
    let m = raw.arity.m;
    let n = raw.arity.n;
    let mut gt = vec![0; n];
    let mut prods = vec![0; m];
    for pos in 0..n {
        let mut surround = Tuples::new(raw.card, n - 1);
        while let Some(a) = surround.next() {
            gt[..pos].copy_from_slice(&a[..pos]);
            gt[pos + 1..].copy_from_slice(&a[pos..]);
            let mut inner = Tuples::new(raw.card, m);
            while let Some(x) = inner.next() {
                let mut lhs = ElemSet::EMPTY;
                for u in raw.f_at(x).iter() {
                    gt[pos] = u;
                    lhs.insert(raw.g_at(&gt));
                }
                for (k, &xk) in x.iter().enumerate() {
                    gt[pos] = xk;
                    prods[k] = raw.g_at(&gt);
                }
                let rhs = raw.f_at(&prods);
                let ok = match mode {
                    ValidationMode::Strict => lhs == rhs,
                    ValidationMode::Weak => rhs.is_subset_of(lhs),
                };
                if !ok {
                    return Some(format!(
                        "pos={} a={} x={} lhs={} rhs={}",
                        pos + 1,
                        fmt_tuple(a),
                        fmt_tuple(x),
                        lhs,
                        rhs
                    ));
                }
            }
        }
    }
    None
}

fn zero_absorbing(raw: &RawStructure) -> Option<String> {
    let n = raw.arity.n;
    let mut t = vec![0; n];
    for pos in 0..n {
        let mut rest = Tuples::new(raw.card, n - 1);
        while let Some(a) = rest.next() {
            t[..pos].copy_from_slice(&a[..pos]);
            t[pos] = raw.zero;
            t[pos + 1..].copy_from_slice(&a[pos..]);
            let v = raw.g_at(&t);
            if v != raw.zero {
                return Some(format!("pos={} a={} g={}", pos + 1, fmt_tuple(a), v));
            }
        }
    }
    None
}

fn one_scalar_identity(raw: &RawStructure) -> Option<String> {
    let mut t = vec![raw.one; raw.arity.n];
    for x in 0..raw.card {
        t[0] = x;
        let v = raw.g_at(&t);
        if v != x {
            return Some(format!("x={x} g(x,1^(n-1))={v}"));
        }
    }
    None
}

/// Permutation invariance via the sorted canonical key: a table is
/// invariant under every permutation iff every tuple matches its sorted
/// form.
fn commutative(raw: &RawStructure, hyperadd: bool) -> Option<String> {
    let arity = if hyperadd { raw.arity.m } else { raw.arity.n };
    let mut sorted = vec![0; arity];
    let mut it = Tuples::new(raw.card, arity);
    while let Some(t) = it.next() {
        sorted.copy_from_slice(t);
        sorted.sort_unstable();
        if hyperadd {
            let (a, b) = (raw.f_at(t), raw.f_at(&sorted));
            if a != b {
                return Some(format!("t={} f(t)={} f(sorted)={}", fmt_tuple(t), a, b));
            }
        } else {
            let (a, b) = (raw.g_at(t), raw.g_at(&sorted));
            if a != b {
                return Some(format!("t={} g(t)={} g(sorted)={}", fmt_tuple(t), a, b));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::ArityProfile;

    fn z4_raw() -> RawStructure {
        let arity = ArityProfile::new(2, 2).unwrap();
        let mut f = Vec::new();
        let mut g = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                f.push(ElemSet::singleton((a + b) % 4));
                g.push(a * b % 4);
            }
        }
        RawStructure::new("Z4", 4, arity, true, 0, 1, f, g, None).unwrap()
    }

    #[test]
    fn z4_passes_strict() {
        let report = validate_structure(&z4_raw(), ValidationMode::Strict);
        assert!(report.all_pass(), "{:?}", report.first_failure());
        assert_eq!(report.checks.len(), 11);
        assert_eq!(compute_neg(&z4_raw()), Some(vec![0, 3, 2, 1]));
    }

    #[test]
    fn corrupted_neutral_is_reported() {
        let mut raw = z4_raw();
        // f(0,1) = {0}: the declared zero stops being scalar neutral
        raw.f[1] = ElemSet::singleton(0);
        let report = validate_structure(&raw, ValidationMode::Strict);
        let check = report.check(Axiom::ZeroScalarNeutral).unwrap();
        assert!(!check.pass);
        assert_eq!(
            check.counterexample.as_deref(),
            Some("declared zero=0 is not scalar neutral: pos=2 x=1 got={0}")
        );
    }

    #[test]
    fn doubled_inverse_is_reported() {
        let mut raw = z4_raw();
        // make both 1 and 3 inverses of 1
        let idx = raw.tuple_index(&[1, 1]);
        raw.f[idx] = [0, 2].into_iter().collect();
        let report = validate_structure(&raw, ValidationMode::Strict);
        let check = report.check(Axiom::UniqueInverses).unwrap();
        assert!(!check.pass);
        assert_eq!(
            check.counterexample.as_deref(),
            Some("x=1 has 2 inverses {1,3}")
        );
        // reversibility cannot be evaluated without unique inverses
        assert!(!report.check(Axiom::Reversible).unwrap().pass);
    }

    #[test]
    fn declared_neg_mismatch_is_reported() {
        let mut raw = z4_raw();
        raw.neg = Some(vec![0, 1, 2, 3]);
        let report = validate_structure(&raw, ValidationMode::Strict);
        let check = report.check(Axiom::UniqueInverses).unwrap();
        assert!(!check.pass);
        assert_eq!(
            check.counterexample.as_deref(),
            Some("declared neg(1)=1 but the unique inverse is 3")
        );
    }

    #[test]
    fn broken_commutativity_is_reported() {
        let mut raw = z4_raw();
        let idx = raw.tuple_index(&[1, 2]);
        raw.g[idx] = 3; // g(1,2) = 3 while g(2,1) = 2
        let report = validate_structure(&raw, ValidationMode::Strict);
        let check = report.check(Axiom::GCommutative).unwrap();
        assert!(!check.pass);
        assert_eq!(
            check.counterexample.as_deref(),
            Some("t=(2,1) g(t)=2 g(sorted)=3")
        );
        // commutativity checks are omitted when the flag is off
        raw.commutative = false;
        let report = validate_structure(&raw, ValidationMode::Strict);
        assert!(report.check(Axiom::GCommutative).is_none());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = format!(
            "{:?}",
            validate_structure(&z4_raw(), ValidationMode::Strict)
        );
        let b = format!(
            "{:?}",
            validate_structure(&z4_raw(), ValidationMode::Strict)
        );
        assert_eq!(a, b);
    }
}
