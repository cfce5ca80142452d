//! The hyperring of fractions `S^-1 R`.
//!
//! Pairs `(r, s)` over `R x S` are related when some witness `t in S` puts
//! zero in `g(t, f(g(r,s',1^(n-2)), -g(r',s,1^(n-2)), 0^(m-2)), 1^(n-2))`.
//! The partition into classes, the m-ary `F` and n-ary `G` on classes, and
//! every well-definedness obligation are built and checked exhaustively:
//! `F` and `G` are evaluated on all representative tuples and refused if any
//! two representatives disagree, and the relation itself is refused if it
//! fails reflexivity, symmetry or transitivity (no silent transitive
//! closure).

use crate::error::{Error, Result};
use crate::ideals::is_multiplicative;
use crate::morphisms::MapTable;
use crate::set::ElemSet;
use crate::structure::{RawStructure, Structure, MAX_CARD};
use crate::transport::TheoremVerdict;
use crate::tuples::{fmt_tuple, Product};
use crate::validate::ValidationMode;

/// Which form of the relation to use. The relation is sometimes displayed
/// without the negation on the second product, but the derivations all
/// carry one; the negated form is the working definition, the un-negated
/// form exists for comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RelationForm {
    #[default]
    NegatedProof,
    UnNegatedDisplay,
}

/// One equivalence class of `R x S`; members are sorted, the first member
/// is the canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionClass {
    pub id: usize,
    pub members: Vec<(usize, usize)>,
}

impl FractionClass {
    pub fn canonical(&self) -> (usize, usize) {
        self.members[0]
    }
}

/// Verdicts of the three equivalence laws, each with the lexicographically
/// first witness of failure. A transitivity failure is a finding about the
/// structure, not an internal error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceLaws {
    pub pairs: usize,
    pub reflexive_failure: Option<(usize, usize)>,
    pub symmetric_failure: Option<((usize, usize), (usize, usize))>,
    pub transitive_failure: Option<[(usize, usize); 3]>,
}

impl EquivalenceLaws {
    pub fn all_pass(&self) -> bool {
        self.reflexive_failure.is_none()
            && self.symmetric_failure.is_none()
            && self.transitive_failure.is_none()
    }

    pub fn first_failure(&self) -> Option<(&'static str, String)> {
        if let Some((r, s)) = self.reflexive_failure {
            return Some(("reflexive", format!("({r},{s})")));
        }
        if let Some((a, b)) = self.symmetric_failure {
            return Some((
                "symmetric",
                format!("({},{}) vs ({},{})", a.0, a.1, b.0, b.1),
            ));
        }
        if let Some([a, b, c]) = self.transitive_failure {
            return Some((
                "transitive",
                format!(
                    "({},{}) ~ ({},{}) ~ ({},{}) but not ({},{}) ~ ({},{})",
                    a.0, a.1, b.0, b.1, c.0, c.1, a.0, a.1, c.0, c.1
                ),
            ));
        }
        None
    }
}

/// `S^-1 R`: the class partition of `R x S` plus the constructed structure
/// on class indices. The structure has passed strict validation.
#[derive(Clone, Debug)]
pub struct Localization {
    base: Structure,
    sset: ElemSet,
    classes: Vec<FractionClass>,
    class_index: Vec<usize>,
    structure: Structure,
}

impl Localization {
    pub fn base(&self) -> &Structure {
        &self.base
    }

    pub fn sset(&self) -> ElemSet {
        self.sset
    }

    pub fn classes(&self) -> &[FractionClass] {
        &self.classes
    }

    /// The constructed Krasner structure whose carrier is the class ids.
    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn zero_class(&self) -> usize {
        self.structure.zero()
    }

    pub fn one_class(&self) -> usize {
        self.structure.one()
    }

    pub fn class_of(&self, r: usize, s: usize) -> Result<usize> {
        let card = self.base.card();
        if r >= card {
            return Err(Error::ElementOutOfRange { index: r, card });
        }
        if !self.sset.contains(s) {
            return Err(Error::DenominatorNotInSubset {
                element: s,
                subset: self.sset.to_string(),
            });
        }
        Ok(self.class_index[r * card + s])
    }

    pub(crate) fn class_of_unchecked(&self, r: usize, s: usize) -> usize {
        self.class_index[r * self.base.card() + s]
    }
}

fn require_denominator(sset: ElemSet, s: usize) -> Result<()> {
    if !sset.contains(s) {
        return Err(Error::DenominatorNotInSubset {
            element: s,
            subset: sset.to_string(),
        });
    }
    Ok(())
}

fn require_fraction_arity(s: &Structure) -> Result<()> {
    if s.n() < s.m() {
        return Err(Error::FractionArity { m: s.m(), n: s.n() });
    }
    Ok(())
}

/// Whether `(r1, s1) ~ (r2, s2)`, returning the least witness `t in S` when
/// the pairs are related.
pub fn fraction_equivalent(
    s: &Structure,
    sset: ElemSet,
    (r1, s1): (usize, usize),
    (r2, s2): (usize, usize),
    form: RelationForm,
) -> Result<Option<usize>> {
    require_fraction_arity(s)?;
    for &x in &[r1, r2] {
        if x >= s.card() {
            return Err(Error::ElementOutOfRange {
                index: x,
                card: s.card(),
            });
        }
    }
    if !sset.is_subset_of(s.carrier()) || sset.is_empty() {
        return Err(Error::EmptySubset);
    }
    require_denominator(sset, s1)?;
    require_denominator(sset, s2)?;

    let a = s.g_padded(&[r1, s2]);
    let b = s.g_padded(&[r2, s1]);
    let second = match form {
        RelationForm::NegatedProof => s.neg(b),
        RelationForm::UnNegatedDisplay => b,
    };
    let inner = s.f_pair_zero(a, second);
    for t in sset.iter() {
        if inner.iter().any(|u| s.g_padded(&[t, u]) == s.zero()) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// All pairs `(r, s)` of `R x S` in lexicographic order.
fn pairs_of(s: &Structure, sset: ElemSet) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(s.card() * sset.len());
    for r in 0..s.card() {
        for d in sset.iter() {
            pairs.push((r, d));
        }
    }
    pairs
}

/// All pairs of `R x S` in lexicographic order, with the flattened
/// `pairs x pairs` relation.
type RelationMatrix = (Vec<(usize, usize)>, Vec<bool>);

fn relation_matrix(s: &Structure, sset: ElemSet, form: RelationForm) -> Result<RelationMatrix> {
    let pairs = pairs_of(s, sset);
    let p = pairs.len();
    let mut matrix = vec![false; p * p];
    for (i, &a) in pairs.iter().enumerate() {
        for (j, &b) in pairs.iter().enumerate() {
            matrix[i * p + j] = fraction_equivalent(s, sset, a, b, form)?.is_some();
        }
    }
    Ok((pairs, matrix))
}

fn laws_from_matrix(pairs: &[(usize, usize)], matrix: &[bool]) -> EquivalenceLaws {
    let p = pairs.len();
    let mut laws = EquivalenceLaws {
        pairs: p,
        reflexive_failure: None,
        symmetric_failure: None,
        transitive_failure: None,
    };
    laws.reflexive_failure = (0..p).find(|&i| !matrix[i * p + i]).map(|i| pairs[i]);
    'sym: for i in 0..p {
        for j in 0..p {
            if matrix[i * p + j] != matrix[j * p + i] {
                laws.symmetric_failure = Some((pairs[i], pairs[j]));
                break 'sym;
            }
        }
    }
    'tri: for i in 0..p {
        for j in 0..p {
            if !matrix[i * p + j] {
                continue;
            }
            for k in 0..p {
                if matrix[j * p + k] && !matrix[i * p + k] {
                    laws.transitive_failure = Some([pairs[i], pairs[j], pairs[k]]);
                    break 'tri;
                }
            }
        }
    }
    laws
}

/// Exhaustively verifies that `~` is reflexive, symmetric and transitive
/// over `R x S`.
pub fn check_equivalence_laws(
    s: &Structure,
    sset: ElemSet,
    form: RelationForm,
) -> Result<EquivalenceLaws> {
    require_fraction_arity(s)?;
    if !is_multiplicative(s, sset) {
        return Err(Error::NotMultiplicative {
            structure: s.name().to_string(),
            subset: sset.to_string(),
        });
    }
    let (pairs, matrix) = relation_matrix(s, sset, form)?;
    Ok(laws_from_matrix(&pairs, &matrix))
}

pub fn build_localization(s: &Structure, sset: ElemSet) -> Result<Localization> {
    build_localization_with(s, sset, RelationForm::NegatedProof)
}

/// Partitions `R x S` into classes, builds `F` and `G` on class indices for
/// every representative tuple, and validates the result strictly.
///
/// Refused (never silently repaired) when the relation fails an equivalence
/// law or when two representative tuples of the same classes disagree.
pub fn build_localization_with(
    s: &Structure,
    sset: ElemSet,
    form: RelationForm,
) -> Result<Localization> {
    require_fraction_arity(s)?;
    if !is_multiplicative(s, sset) {
        return Err(Error::NotMultiplicative {
            structure: s.name().to_string(),
            subset: sset.to_string(),
        });
    }
    let (pairs, matrix) = relation_matrix(s, sset, form)?;
    let laws = laws_from_matrix(&pairs, &matrix);
    if let Some((law, witness)) = laws.first_failure() {
        return Err(Error::EquivalenceLawFailed { law, witness });
    }

    // Pairs are in lexicographic order, so classes come out sorted by their
    // canonical (least) member and ids are stable across runs.
    let p = pairs.len();
    let mut class_of_pair = vec![usize::MAX; p];
    let mut classes: Vec<FractionClass> = Vec::new();
    for i in 0..p {
        if class_of_pair[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for j in i..p {
            if matrix[i * p + j] {
                class_of_pair[j] = id;
                members.push(pairs[j]);
            }
        }
        classes.push(FractionClass { id, members });
    }
    let ccount = classes.len();
    if ccount > MAX_CARD {
        return Err(Error::CarrierTooLarge { card: ccount });
    }

    let card = s.card();
    let mut class_index = vec![usize::MAX; card * card];
    for (i, &(r, d)) in pairs.iter().enumerate() {
        class_index[r * card + d] = class_of_pair[i];
    }

    let (m, n) = (s.m(), s.n());

    // F on every representative m-tuple: the numerator set
    // f(g(r1,s2..sm,1^(n-m)), ..., g(s1..s(m-1),rm,1^(n-m))) over the
    // denominator g(s1..sm,1^(n-m)), mapped to class ids.
    let mut rs = vec![0; m.max(n)];
    let mut ss = vec![0; m.max(n)];
    let f = build_class_table(&pairs, &class_of_pair, ccount, m, |reps, first| {
        for (k, &i) in reps.iter().enumerate() {
            rs[k] = pairs[i].0;
            ss[k] = pairs[i].1;
        }
        let mut terms = vec![0; m];
        for j in 0..m {
            let keep = ss[j];
            ss[j] = rs[j];
            terms[j] = s.g_padded(&ss[..m]);
            ss[j] = keep;
        }
        let den = s.g_padded(&ss[..m]);
        debug_assert!(sset.contains(den));
        let value: ElemSet = s
            .f_at(&terms)
            .iter()
            .map(|u| class_index[u * card + den])
            .collect();
        match first {
            None => Ok(value),
            Some(prev) if *prev == value => Ok(value),
            Some(prev) => Err((prev.to_string(), value.to_string())),
        }
    })
    .map_err(|e| e.into_error("F", &pairs))?;

    let g = build_class_table(&pairs, &class_of_pair, ccount, n, |reps, first| {
        for (k, &i) in reps.iter().enumerate() {
            rs[k] = pairs[i].0;
            ss[k] = pairs[i].1;
        }
        let num = s.g_at(&rs[..n]);
        let den = s.g_at(&ss[..n]);
        debug_assert!(sset.contains(den));
        let value = class_index[num * card + den];
        match first {
            None => Ok(value),
            Some(prev) if *prev == value => Ok(value),
            Some(prev) => Err((prev.to_string(), value.to_string())),
        }
    })
    .map_err(|e| e.into_error("G", &pairs))?;

    let zero_class = class_index[s.zero() * card + s.one()];
    let one_class = class_index[s.one() * card + s.one()];
    let name = format!("{}_loc_{}", s.name(), sset.label());
    let raw = RawStructure::new(
        name,
        ccount,
        s.arity(),
        s.commutative(),
        zero_class,
        one_class,
        f,
        g,
        None,
    )?;
    let structure = Structure::from_raw(raw, ValidationMode::Strict)?;

    Ok(Localization {
        base: s.clone(),
        sset,
        classes,
        class_index,
        structure,
    })
}

struct WellDefinednessFailure {
    class_tuple: Vec<usize>,
    rep_a: Vec<usize>,
    val_a: String,
    rep_b: Vec<usize>,
    val_b: String,
}

impl WellDefinednessFailure {
    fn into_error(self, op: &'static str, pairs: &[(usize, usize)]) -> Error {
        let render = |ids: &[usize]| {
            let ps: Vec<String> = ids
                .iter()
                .map(|&i| format!("{}/{}", pairs[i].0, pairs[i].1))
                .collect();
            format!("({})", ps.join(","))
        };
        Error::NotWellDefined(Box::new(crate::error::WellDefinednessWitness {
            op,
            class_tuple: fmt_tuple(&self.class_tuple),
            rep_a: render(&self.rep_a),
            val_a: self.val_a,
            rep_b: render(&self.rep_b),
            val_b: self.val_b,
        }))
    }
}

/// Runs `compute` on every representative tuple, bucketing by class tuple.
/// `compute` sees the previously stored value for its bucket and reports a
/// disagreement by returning the two rendered values.
fn build_class_table<V: Clone>(
    pairs: &[(usize, usize)],
    class_of_pair: &[usize],
    ccount: usize,
    arity: usize,
    mut compute: impl FnMut(&[usize], Option<&V>) -> std::result::Result<V, (String, String)>,
) -> std::result::Result<Vec<V>, WellDefinednessFailure> {
    let len = ccount.pow(arity as u32);
    let mut table: Vec<Option<V>> = vec![None; len];
    let mut first_rep: Vec<Option<Vec<usize>>> = vec![None; len];

    let domain: Vec<usize> = (0..pairs.len()).collect();
    let mut it = Product::new(vec![domain; arity]);
    while let Some(reps) = it.next() {
        let key = reps
            .iter()
            .fold(0, |acc, &i| acc * ccount + class_of_pair[i]);
        match compute(reps, table[key].as_ref()) {
            Ok(v) => {
                if table[key].is_none() {
                    table[key] = Some(v);
                    first_rep[key] = Some(reps.to_vec());
                }
            }
            Err((val_a, val_b)) => {
                let mut class_tuple = Vec::with_capacity(arity);
                let mut k = key;
                for _ in 0..arity {
                    class_tuple.push(k % ccount);
                    k /= ccount;
                }
                class_tuple.reverse();
                return Err(WellDefinednessFailure {
                    class_tuple,
                    rep_a: first_rep[key].clone().unwrap_or_default(),
                    val_a,
                    rep_b: reps.to_vec(),
                    val_b,
                });
            }
        }
    }
    Ok(table
        .into_iter()
        .map(|v| v.expect("every class is inhabited"))
        .collect())
}

/// The natural map `r -> r/1` into the localization.
pub fn natural_map(l: &Localization) -> MapTable {
    let one = l.base.one();
    let image = (0..l.base.card())
        .map(|r| l.class_of_unchecked(r, one))
        .collect();
    MapTable { image }
}

/// The least `y` with `g(x, y, 1^(n-2)) = 1`, if any. A validated
/// commutative structure admits at most one.
pub fn is_invertible(s: &Structure, x: usize) -> Result<Option<usize>> {
    if x >= s.card() {
        return Err(Error::ElementOutOfRange {
            index: x,
            card: s.card(),
        });
    }
    let mut found = None;
    for y in 0..s.card() {
        if s.g_padded(&[x, y]) == s.one() {
            if let Some(first) = found {
                return Err(Error::AssertionFailed {
                    what: format!("element {x} has two inverses, {first} and {y}"),
                });
            }
            found = Some(y);
        }
    }
    Ok(found)
}

/// The six identity checks of the fraction calculus, run exhaustively.
/// Failures are findings, not errors.
#[derive(Clone, Debug, Default)]
pub struct FractionIdentities {
    /// `0/s = 0/1 = 0` for every s.
    pub zero_forms: Option<String>,
    /// `r/s = 0` iff some `t in S` has `g(t,r,1^(n-2)) = 0`.
    pub zero_criterion: Option<String>,
    /// `s/s = 1/1 = 1` for every s.
    pub one_forms: Option<String>,
    /// `g(r,s^(m-1),1^(n-m)) / g(s',s^(m-1),1^(n-m)) = r/s'`.
    pub scaling: Option<String>,
    /// every `phi(s)` is invertible with inverse `1/s`.
    pub unit_images: Option<String>,
    /// every class is `G(phi(r), phi(s)^-1, 1^(n-2))` for its canonical pair.
    pub reconstruction: Option<String>,
}

impl FractionIdentities {
    pub fn all_pass(&self) -> bool {
        self.zero_forms.is_none()
            && self.zero_criterion.is_none()
            && self.one_forms.is_none()
            && self.scaling.is_none()
            && self.unit_images.is_none()
            && self.reconstruction.is_none()
    }

    pub fn first_failure(&self) -> Option<(&'static str, &str)> {
        [
            ("zero-forms", &self.zero_forms),
            ("zero-criterion", &self.zero_criterion),
            ("one-forms", &self.one_forms),
            ("scaling", &self.scaling),
            ("unit-images", &self.unit_images),
            ("reconstruction", &self.reconstruction),
        ]
        .into_iter()
        .find_map(|(id, v)| v.as_deref().map(|w| (id, w)))
    }
}

pub fn check_fraction_identities(l: &Localization) -> Result<FractionIdentities> {
    let s = l.base();
    let (zero, one) = (s.zero(), s.one());
    let m = s.m();
    let mut out = FractionIdentities::default();

    for d in l.sset.iter() {
        if l.class_of_unchecked(zero, d) != l.zero_class() {
            out.zero_forms = Some(format!(
                "0/{} is class {}, zero class is {}",
                d,
                l.class_of_unchecked(zero, d),
                l.zero_class()
            ));
            break;
        }
    }

    'zc: for r in 0..s.card() {
        for d in l.sset.iter() {
            let is_zero = l.class_of_unchecked(r, d) == l.zero_class();
            let witness = l.sset.iter().find(|&t| s.g_padded(&[t, r]) == zero);
            if is_zero != witness.is_some() {
                out.zero_criterion = Some(format!(
                    "{r}/{d}: class-is-zero={is_zero} but annihilating witness {witness:?}"
                ));
                break 'zc;
            }
        }
    }

    for d in l.sset.iter() {
        if l.class_of_unchecked(d, d) != l.one_class() {
            out.one_forms = Some(format!(
                "{}/{} is class {}, one class is {}",
                d,
                d,
                l.class_of_unchecked(d, d),
                l.one_class()
            ));
            break;
        }
    }

    'scaling: for r in 0..s.card() {
        for d in l.sset.iter() {
            for dp in l.sset.iter() {
                let mut num_args = vec![d; m];
                num_args[0] = r;
                let mut den_args = vec![d; m];
                den_args[0] = dp;
                let num = s.g_padded(&num_args);
                let den = s.g_padded(&den_args);
                let lhs = l.class_of_unchecked(num, den);
                let rhs = l.class_of_unchecked(s.g_padded(&[r]), s.g_padded(&[dp]));
                if lhs != rhs {
                    out.scaling = Some(format!(
                        "r={r} s={d} s'={dp}: {num}/{den} is class {lhs}, {r}/{dp} is class {rhs}"
                    ));
                    break 'scaling;
                }
            }
        }
    }

    for d in l.sset.iter() {
        let phi_s = l.class_of_unchecked(d, one);
        let inv = is_invertible(l.structure(), phi_s)?;
        let expected = l.class_of_unchecked(one, d);
        if inv != Some(expected) {
            out.unit_images = Some(format!(
                "phi({d}) = class {phi_s}: inverse {inv:?}, expected class {expected} (1/{d})"
            ));
            break;
        }
    }

    for class in &l.classes {
        let (r, d) = class.canonical();
        let phi_r = l.class_of_unchecked(r, one);
        let phi_s = l.class_of_unchecked(d, one);
        let Some(inv) = is_invertible(l.structure(), phi_s)? else {
            out.reconstruction = Some(format!("phi({d}) has no inverse"));
            break;
        };
        let got = l.structure().g_padded(&[phi_r, inv]);
        if got != class.id {
            out.reconstruction = Some(format!(
                "class {} = {}/{}: G(phi({}), phi({})^-1, 1...) = class {}",
                class.id, r, d, r, d, got
            ));
            break;
        }
    }

    Ok(out)
}

/// Localizing a hyperintegral domain yields a hyperintegral domain, at any
/// multiplicative subset.
pub fn check_domain_preserved(l: &Localization) -> Result<TheoremVerdict> {
    if !l.base().is_hyperintegral_domain() {
        return Err(Error::HypothesisFailed {
            check: "domain-preserved",
            hypothesis: format!("`{}` is not an n-ary hyperintegral domain", l.base().name()),
        });
    }
    let universe = format!("{}, S={}", l.base().name(), l.sset());
    let pass = l.structure().is_hyperintegral_domain();
    Ok(TheoremVerdict {
        theorem: "domain-preserved".to_string(),
        universe,
        pass,
        counterexample: (!pass).then(|| "localization has a zero divisor".to_string()),
    })
}

/// For a hyperintegral domain, localizes at `S = R \ {0}` and verifies the
/// result is a hyperintegral domain in which every nonzero class is
/// invertible. Structures with zero divisors are refused.
pub fn check_field_of_fractions(s: &Structure) -> Result<TheoremVerdict> {
    let theorem = "field-of-fractions".to_string();
    if s.card() == 1 {
        return Ok(TheoremVerdict {
            theorem,
            universe: format!("{}, S=R\\{{0}}", s.name()),
            pass: true,
            counterexample: None,
        });
    }
    if !s.is_hyperintegral_domain() {
        return Err(Error::HypothesisFailed {
            check: "field-of-fractions",
            hypothesis: format!("`{}` is not an n-ary hyperintegral domain", s.name()),
        });
    }
    let sset = s.carrier().minus(ElemSet::singleton(s.zero()));
    if !is_multiplicative(s, sset) {
        return Err(Error::NotMultiplicative {
            structure: s.name().to_string(),
            subset: sset.to_string(),
        });
    }
    let l = build_localization(s, sset)?;
    let universe = format!("{}, S=R\\{{0}}", s.name());
    if !l.structure().is_hyperintegral_domain() {
        return Ok(TheoremVerdict {
            theorem,
            universe,
            pass: false,
            counterexample: Some("localization is not a hyperintegral domain".to_string()),
        });
    }
    for c in 0..l.structure().card() {
        if c != l.zero_class() && is_invertible(l.structure(), c)?.is_none() {
            return Ok(TheoremVerdict {
                theorem,
                universe,
                pass: false,
                counterexample: Some(format!("nonzero class {c} is not invertible")),
            });
        }
    }
    Ok(TheoremVerdict {
        theorem,
        universe,
        pass: true,
        counterexample: None,
    })
}
