use serde::Serialize;

use crate::error::{Error, Result};
use crate::set::ElemSet;
use crate::tuples::{fmt_tuple, Product, Tuples};
use crate::validate::{compute_neg, validate_structure, ValidationMode};

/// Largest supported carrier; element sets are single 64-bit masks.
pub const MAX_CARD: usize = 64;

/// Largest operation table we are willing to allocate (entries).
const MAX_TABLE: u128 = 1 << 24;

/// Arities of the two operations: `m`-ary hyperaddition, `n`-ary
/// multiplication. Both at least 2. Fraction constructions additionally
/// need `n >= m`; that is enforced where fractions are built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ArityProfile {
    pub m: usize,
    pub n: usize,
}

impl ArityProfile {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::BadArity { m, n });
        }
        Ok(ArityProfile { m, n })
    }
}

/// Operation tables as read from a file or generator, before any axiom has
/// been checked. Construction only enforces shape: total tables, nonempty
/// hyperaddition entries, indices in range.
#[derive(Clone, Debug, PartialEq)]
pub struct RawStructure {
    pub name: String,
    pub card: usize,
    pub arity: ArityProfile,
    pub commutative: bool,
    pub zero: usize,
    pub one: usize,
    pub f: Vec<ElemSet>,
    pub g: Vec<usize>,
    pub neg: Option<Vec<usize>>,
}

impl RawStructure {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        card: usize,
        arity: ArityProfile,
        commutative: bool,
        zero: usize,
        one: usize,
        f: Vec<ElemSet>,
        g: Vec<usize>,
        neg: Option<Vec<usize>>,
    ) -> Result<Self> {
        if card == 0 || card > MAX_CARD {
            return Err(Error::CarrierTooLarge { card: card.max(1) });
        }
        let f_len = checked_table_len(card, arity.m)?;
        let g_len = checked_table_len(card, arity.n)?;
        if f.len() != f_len {
            return Err(Error::TableWrongSize {
                table: "f",
                got: f.len(),
                expected: f_len,
            });
        }
        if g.len() != g_len {
            return Err(Error::TableWrongSize {
                table: "g",
                got: g.len(),
                expected: g_len,
            });
        }
        let carrier = ElemSet::full(card);
        for (i, entry) in f.iter().enumerate() {
            if entry.is_empty() {
                return Err(Error::EmptyTableEntry {
                    table: "f",
                    tuple: fmt_tuple(&unindex(i, card, arity.m)),
                });
            }
            if !entry.is_subset_of(carrier) {
                return Err(Error::TableValueOutOfRange {
                    table: "f",
                    tuple: fmt_tuple(&unindex(i, card, arity.m)),
                    index: entry.minus(carrier).least().unwrap(),
                    card,
                });
            }
        }
        for (i, &v) in g.iter().enumerate() {
            if v >= card {
                return Err(Error::TableValueOutOfRange {
                    table: "g",
                    tuple: fmt_tuple(&unindex(i, card, arity.n)),
                    index: v,
                    card,
                });
            }
        }
        for &e in [zero, one].iter() {
            if e >= card {
                return Err(Error::ElementOutOfRange { index: e, card });
            }
        }
        if let Some(neg) = &neg {
            if neg.len() != card {
                return Err(Error::TableWrongSize {
                    table: "neg",
                    got: neg.len(),
                    expected: card,
                });
            }
            if let Some((i, &v)) = neg.iter().enumerate().find(|(_, &v)| v >= card) {
                return Err(Error::TableValueOutOfRange {
                    table: "neg",
                    tuple: fmt_tuple(&[i]),
                    index: v,
                    card,
                });
            }
        }
        Ok(RawStructure {
            name: name.into(),
            card,
            arity,
            commutative,
            zero,
            one,
            f,
            g,
            neg,
        })
    }

    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &x| acc * self.card + x)
    }

    /// The stored hypersum for a tuple (no validation implied).
    pub fn f_entry(&self, tuple: &[usize]) -> ElemSet {
        self.f[self.tuple_index(tuple)]
    }

    /// The stored product for a tuple (no validation implied).
    pub fn g_entry(&self, tuple: &[usize]) -> usize {
        self.g[self.tuple_index(tuple)]
    }

    pub(crate) fn f_at(&self, tuple: &[usize]) -> ElemSet {
        self.f_entry(tuple)
    }

    pub(crate) fn g_at(&self, tuple: &[usize]) -> usize {
        self.g_entry(tuple)
    }
}

fn checked_table_len(card: usize, arity: usize) -> Result<usize> {
    let mut len: u128 = 1;
    for _ in 0..arity {
        len *= card as u128;
        if len > MAX_TABLE {
            return Err(Error::TableTooLarge { entries: len });
        }
    }
    Ok(len as usize)
}

fn unindex(mut index: usize, card: usize, arity: usize) -> Vec<usize> {
    let mut t = vec![0; arity];
    for slot in t.iter_mut().rev() {
        *slot = index % card;
        index /= card;
    }
    t
}

/// A finite Krasner (m,n)-hyperring that has passed [`validate_structure`]
/// under the recorded mode. Immutable; all evaluation is pure table lookup.
#[derive(Clone, Debug)]
pub struct Structure {
    name: String,
    card: usize,
    arity: ArityProfile,
    commutative: bool,
    zero: usize,
    one: usize,
    f: Vec<ElemSet>,
    g: Vec<usize>,
    neg: Vec<usize>,
    mode: ValidationMode,
}

impl Structure {
    /// Validates the raw tables under `mode` and, on an all-pass report,
    /// freezes them into a usable structure (filling the negation table
    /// from the unique-inverse axiom when the file did not supply one).
    pub fn from_raw(raw: RawStructure, mode: ValidationMode) -> Result<Structure> {
        let report = validate_structure(&raw, mode);
        if !report.all_pass() {
            let first = report
                .first_failure()
                .expect("non-pass report has a failure");
            return Err(Error::ValidationFailed {
                name: raw.name.clone(),
                mode: mode.as_str(),
                summary: format!(
                    "{}: {}",
                    first.axiom.id(),
                    first.counterexample.as_deref().unwrap_or("")
                ),
                report: Box::new(report),
            });
        }
        let neg = compute_neg(&raw).expect("all-pass report implies unique inverses");
        Ok(Structure {
            name: raw.name,
            card: raw.card,
            arity: raw.arity,
            commutative: raw.commutative,
            zero: raw.zero,
            one: raw.one,
            f: raw.f,
            g: raw.g,
            neg,
            mode,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn card(&self) -> usize {
        self.card
    }

    pub fn arity(&self) -> ArityProfile {
        self.arity
    }

    pub fn m(&self) -> usize {
        self.arity.m
    }

    pub fn n(&self) -> usize {
        self.arity.n
    }

    pub fn commutative(&self) -> bool {
        self.commutative
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// The mode the structure was validated under. Theorem checking expects
    /// [`ValidationMode::Strict`]; weak structures exist so that a
    /// distributivity adjudication can still be explored.
    pub fn mode(&self) -> ValidationMode {
        self.mode
    }

    pub fn carrier(&self) -> ElemSet {
        ElemSet::full(self.card)
    }

    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    /// Rebuilds the raw table view, e.g. for serialization.
    pub fn to_raw(&self) -> RawStructure {
        RawStructure {
            name: self.name.clone(),
            card: self.card,
            arity: self.arity,
            commutative: self.commutative,
            zero: self.zero,
            one: self.one,
            f: self.f.clone(),
            g: self.g.clone(),
            neg: Some(self.neg.clone()),
        }
    }

    fn tuple_index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &x| acc * self.card + x)
    }

    fn check_tuple(&self, tuple: &[usize], expected: usize) -> Result<()> {
        if tuple.len() != expected {
            return Err(Error::TupleLength {
                expected,
                got: tuple.len(),
            });
        }
        for &x in tuple {
            if x >= self.card {
                return Err(Error::ElementOutOfRange {
                    index: x,
                    card: self.card,
                });
            }
        }
        Ok(())
    }

    pub(crate) fn f_at(&self, tuple: &[usize]) -> ElemSet {
        debug_assert_eq!(tuple.len(), self.arity.m);
        self.f[self.tuple_index(tuple)]
    }

    pub(crate) fn g_at(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity.n);
        self.g[self.tuple_index(tuple)]
    }

    /// The m-ary hyperaddition `f` on a tuple of elements.
    pub fn eval_f(&self, tuple: &[usize]) -> Result<ElemSet> {
        self.check_tuple(tuple, self.arity.m)?;
        Ok(self.f_at(tuple))
    }

    /// The n-ary multiplication `g` on a tuple of elements.
    pub fn eval_g(&self, tuple: &[usize]) -> Result<usize> {
        self.check_tuple(tuple, self.arity.n)?;
        Ok(self.g_at(tuple))
    }

    pub(crate) fn f_subsets_at(&self, args: &[ElemSet]) -> ElemSet {
        debug_assert_eq!(args.len(), self.arity.m);
        let domains: Vec<Vec<usize>> = args.iter().map(|s| s.to_vec()).collect();
        let mut out = ElemSet::EMPTY;
        let mut it = Product::new(domains);
        while let Some(t) = it.next() {
            out = out.union(self.f_at(t));
        }
        out
    }

    /// `f` extended to subsets: the union of `f` over the Cartesian product
    /// of the argument sets.
    pub fn eval_f_subsets(&self, args: &[ElemSet]) -> Result<ElemSet> {
        if args.len() != self.arity.m {
            return Err(Error::TupleLength {
                expected: self.arity.m,
                got: args.len(),
            });
        }
        let carrier = self.carrier();
        for (position, s) in args.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::EmptySetArgument { position });
            }
            if !s.is_subset_of(carrier) {
                return Err(Error::ElementOutOfRange {
                    index: s.minus(carrier).least().unwrap(),
                    card: self.card,
                });
            }
        }
        Ok(self.f_subsets_at(args))
    }

    /// The iterated multiplication `g_(l)` on a tuple of length `l(n-1)+1`,
    /// folded left-nested; associativity makes the nesting immaterial.
    pub fn eval_g_iterated(&self, l: usize, tuple: &[usize]) -> Result<usize> {
        if l == 0 {
            return Err(Error::ZeroIterations);
        }
        let n = self.arity.n;
        self.check_tuple(tuple, l * (n - 1) + 1)?;
        let mut acc = self.g_at(&tuple[..n]);
        let mut buf = vec![0; n];
        for step in 1..l {
            buf[0] = acc;
            buf[1..].copy_from_slice(&tuple[n + (step - 1) * (n - 1)..n + step * (n - 1)]);
            acc = self.g_at(&buf);
        }
        Ok(acc)
    }

    /// The iterated hyperaddition `f_(l)` on `l(m-1)+1` subsets.
    pub fn eval_f_iterated(&self, l: usize, args: &[ElemSet]) -> Result<ElemSet> {
        if l == 0 {
            return Err(Error::ZeroIterations);
        }
        let m = self.arity.m;
        if args.len() != l * (m - 1) + 1 {
            return Err(Error::TupleLength {
                expected: l * (m - 1) + 1,
                got: args.len(),
            });
        }
        let mut acc = self.eval_f_subsets(&args[..m])?;
        let mut buf = vec![ElemSet::EMPTY; m];
        for step in 1..l {
            buf[0] = acc;
            buf[1..].copy_from_slice(&args[m + (step - 1) * (m - 1)..m + step * (m - 1)]);
            acc = self.eval_f_subsets(&buf)?;
        }
        Ok(acc)
    }

    /// `g(args, 1^(n-k))`: the product padded with the scalar identity.
    pub(crate) fn g_padded(&self, args: &[usize]) -> usize {
        debug_assert!(args.len() <= self.arity.n);
        let mut t = vec![self.one; self.arity.n];
        t[..args.len()].copy_from_slice(args);
        self.g_at(&t)
    }

    /// `f(a, b, 0^(m-2))`: the two-element hypersum padded with zero.
    pub(crate) fn f_pair_zero(&self, a: usize, b: usize) -> ElemSet {
        let mut t = vec![self.zero; self.arity.m];
        t[0] = a;
        t[1] = b;
        self.f_at(&t)
    }

    /// Commutative, and a zero product forces a zero factor (scanned over
    /// every n-tuple).
    pub fn is_hyperintegral_domain(&self) -> bool {
        if !self.commutative {
            return false;
        }
        let mut it = Tuples::new(self.card, self.arity.n);
        while let Some(t) = it.next() {
            if self.g_at(t) == self.zero && !t.contains(&self.zero) {
                return false;
            }
        }
        true
    }
}
