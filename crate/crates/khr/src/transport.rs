//! Extension and contraction of hyperideals across the natural map, and the
//! per-instance theorem checks over localizations: the unit criterion, the
//! extended-ideal round trip, the unique maximal hyperideal at a prime,
//! prime/primary/2-absorbing preservation, and radical commutation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fractions::{build_localization, is_invertible, Localization};
use crate::ideals::{
    enumerate_hyperideals, is_hyperideal, is_maximal, is_multiplicative, is_primary, is_prime,
    is_two_absorbing, radical,
};
use crate::set::ElemSet;
use crate::structure::Structure;

/// One theorem instance's outcome. Failures carry a minimal reproducible
/// counterexample (structure names, masks, offending tuple) in rendered
/// form; the universe string pins down which instance was scanned.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub theorem: String,
    pub universe: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl TheoremVerdict {
    fn pass(theorem: &str, universe: String) -> Self {
        TheoremVerdict {
            theorem: theorem.to_string(),
            universe,
            pass: true,
            counterexample: None,
        }
    }

    fn fail(theorem: &str, universe: String, why: String) -> Self {
        TheoremVerdict {
            theorem: theorem.to_string(),
            universe,
            pass: false,
            counterexample: Some(why),
        }
    }
}

fn require_base_hyperideal(l: &Localization, ideal: ElemSet) -> Result<()> {
    if !is_hyperideal(l.base(), ideal)? {
        return Err(Error::NotHyperideal {
            structure: l.base().name().to_string(),
            subset: ideal.to_string(),
        });
    }
    Ok(())
}

/// `S^-1 I`: the classes of `a/s` with `a` in the ideal and `s` in `S`.
/// The result is checked to be a hyperideal of the localization.
pub fn extend_ideal(l: &Localization, ideal: ElemSet) -> Result<ElemSet> {
    require_base_hyperideal(l, ideal)?;
    let mut out = ElemSet::EMPTY;
    for a in ideal.iter() {
        for s in l.sset().iter() {
            out.insert(l.class_of(a, s)?);
        }
    }
    if !is_hyperideal(l.structure(), out)? {
        return Err(Error::AssertionFailed {
            what: format!(
                "extension {} of {} is not a hyperideal of `{}`",
                out,
                ideal,
                l.structure().name()
            ),
        });
    }
    Ok(out)
}

/// The contraction `{r : some s in S has r/s in J}`, checked to be a
/// hyperideal of the base.
pub fn contract_ideal(l: &Localization, j: ElemSet) -> Result<ElemSet> {
    if !is_hyperideal(l.structure(), j)? {
        return Err(Error::NotHyperideal {
            structure: l.structure().name().to_string(),
            subset: j.to_string(),
        });
    }
    let mut out = ElemSet::EMPTY;
    for r in 0..l.base().card() {
        for s in l.sset().iter() {
            if j.contains(l.class_of(r, s)?) {
                out.insert(r);
                break;
            }
        }
    }
    if !is_hyperideal(l.base(), out)? {
        return Err(Error::AssertionFailed {
            what: format!(
                "contraction {} of {} is not a hyperideal of `{}`",
                out,
                j,
                l.base().name()
            ),
        });
    }
    Ok(out)
}

fn universe(l: &Localization, extra: &str) -> String {
    format!("{}, S={}{}", l.base().name(), l.sset(), extra)
}

/// `I` meets `S` iff `S^-1 I` is all of `S^-1 R`, both directions.
pub fn check_unit_criterion(l: &Localization, ideal: ElemSet) -> Result<TheoremVerdict> {
    let extended = extend_ideal(l, ideal)?;
    let meets = !ideal.intersect(l.sset()).is_empty();
    let all = extended == l.structure().carrier();
    let universe = universe(l, &format!(", I={ideal}"));
    if meets == all {
        Ok(TheoremVerdict::pass("unit-criterion", universe))
    } else {
        Ok(TheoremVerdict::fail(
            "unit-criterion",
            universe,
            format!(
                "I∩S={} but S^-1I={} of {} classes",
                ideal.intersect(l.sset()),
                extended.len(),
                l.structure().card()
            ),
        ))
    }
}

/// Every hyperideal of the localization is extended: extending its
/// contraction gives it back.
pub fn check_all_extended(l: &Localization) -> Result<TheoremVerdict> {
    for j in enumerate_hyperideals(l.structure()) {
        let contracted = contract_ideal(l, j)?;
        let back = extend_ideal(l, contracted)?;
        if back != j {
            return Ok(TheoremVerdict::fail(
                "extended-ideal",
                universe(l, ""),
                format!("J={j} contracts to {contracted}, which extends to {back}"),
            ));
        }
    }
    Ok(TheoremVerdict::pass("extended-ideal", universe(l, "")))
}

/// Localizing at the complement of a prime `P` yields a structure whose
/// unique maximal hyperideal is the extension of `P`, with every class
/// outside it invertible.
pub fn check_local_maximal(s: &Structure, p: ElemSet) -> Result<TheoremVerdict> {
    if !is_prime(s, p)? {
        return Err(Error::HypothesisFailed {
            check: "local-maximal",
            hypothesis: format!("{p} is not an n-ary prime hyperideal of `{}`", s.name()),
        });
    }
    let sset = s.carrier().minus(p);
    if !is_multiplicative(s, sset) {
        return Err(Error::HypothesisFailed {
            check: "local-maximal",
            hypothesis: format!("R\\P = {sset} is not multiplicative"),
        });
    }
    let l = build_localization(s, sset)?;
    let universe = format!("{}, P={}", s.name(), p);
    let theorem = "local-maximal";
    let m = extend_ideal(&l, p)?;
    if m == l.structure().carrier() {
        return Ok(TheoremVerdict::fail(
            theorem,
            universe,
            format!("extension {m} is not proper"),
        ));
    }
    if !is_maximal(l.structure(), m)? {
        return Ok(TheoremVerdict::fail(
            theorem,
            universe,
            format!("extension {m} is not maximal"),
        ));
    }
    for j in enumerate_hyperideals(l.structure()) {
        if j != m && j != l.structure().carrier() && is_maximal(l.structure(), j)? {
            return Ok(TheoremVerdict::fail(
                theorem,
                universe,
                format!("second maximal hyperideal {j}"),
            ));
        }
    }
    for c in 0..l.structure().card() {
        if !m.contains(c) && is_invertible(l.structure(), c)?.is_none() {
            return Ok(TheoremVerdict::fail(
                theorem,
                universe,
                format!("class {c} outside {m} is not invertible"),
            ));
        }
    }
    Ok(TheoremVerdict::pass(theorem, universe))
}

fn require_disjoint(check: &'static str, l: &Localization, ideal: ElemSet) -> Result<()> {
    let common = ideal.intersect(l.sset());
    if !common.is_empty() {
        return Err(Error::HypothesisFailed {
            check,
            hypothesis: format!("ideal meets S at {common}"),
        });
    }
    Ok(())
}

/// `S^-1 P` is prime when `P` is prime and disjoint from `S`.
pub fn check_prime_preserved(l: &Localization, p: ElemSet) -> Result<TheoremVerdict> {
    if !is_prime(l.base(), p)? {
        return Err(Error::HypothesisFailed {
            check: "prime-preserved",
            hypothesis: format!(
                "{p} is not an n-ary prime hyperideal of `{}`",
                l.base().name()
            ),
        });
    }
    require_disjoint("prime-preserved", l, p)?;
    let e = extend_ideal(l, p)?;
    let universe = universe(l, &format!(", P={p}"));
    if e == l.structure().carrier() {
        return Ok(TheoremVerdict::fail(
            "prime-preserved",
            universe,
            format!("extension {e} is improper"),
        ));
    }
    if is_prime(l.structure(), e)? {
        Ok(TheoremVerdict::pass("prime-preserved", universe))
    } else {
        Ok(TheoremVerdict::fail(
            "prime-preserved",
            universe,
            format!("extension {e} is not prime"),
        ))
    }
}

/// `S^-1 Q` is primary when `Q` is primary and disjoint from `S`.
pub fn check_primary_preserved(l: &Localization, q: ElemSet) -> Result<TheoremVerdict> {
    if !is_primary(l.base(), q)? {
        return Err(Error::HypothesisFailed {
            check: "primary-preserved",
            hypothesis: format!(
                "{q} is not an n-ary primary hyperideal of `{}`",
                l.base().name()
            ),
        });
    }
    require_disjoint("primary-preserved", l, q)?;
    let e = extend_ideal(l, q)?;
    let universe = universe(l, &format!(", Q={q}"));
    if e == l.structure().carrier() {
        return Ok(TheoremVerdict::fail(
            "primary-preserved",
            universe,
            format!("extension {e} is improper"),
        ));
    }
    if is_primary(l.structure(), e)? {
        Ok(TheoremVerdict::pass("primary-preserved", universe))
    } else {
        Ok(TheoremVerdict::fail(
            "primary-preserved",
            universe,
            format!("extension {e} is not primary"),
        ))
    }
}

/// `S^-1 I` is 2-absorbing when `I` is 2-absorbing and disjoint from `S`.
pub fn check_two_absorbing_preserved(l: &Localization, i: ElemSet) -> Result<TheoremVerdict> {
    if !is_two_absorbing(l.base(), i)? {
        return Err(Error::HypothesisFailed {
            check: "two-absorbing-preserved",
            hypothesis: format!(
                "{i} is not an n-ary 2-absorbing hyperideal of `{}`",
                l.base().name()
            ),
        });
    }
    require_disjoint("two-absorbing-preserved", l, i)?;
    let e = extend_ideal(l, i)?;
    let universe = universe(l, &format!(", I={i}"));
    if e == l.structure().carrier() {
        return Ok(TheoremVerdict::fail(
            "two-absorbing-preserved",
            universe,
            format!("extension {e} is improper"),
        ));
    }
    if is_two_absorbing(l.structure(), e)? {
        Ok(TheoremVerdict::pass("two-absorbing-preserved", universe))
    } else {
        Ok(TheoremVerdict::fail(
            "two-absorbing-preserved",
            universe,
            format!("extension {e} is not 2-absorbing"),
        ))
    }
}

/// Radical commutes with localization: `√(S^-1 I) = S^-1 √I` as class sets.
pub fn check_radical_commutes(l: &Localization, ideal: ElemSet) -> Result<TheoremVerdict> {
    require_base_hyperideal(l, ideal)?;
    let lhs = radical(l.structure(), extend_ideal(l, ideal)?)?;
    let rhs = extend_ideal(l, radical(l.base(), ideal)?)?;
    let universe = universe(l, &format!(", I={ideal}"));
    if lhs == rhs {
        Ok(TheoremVerdict::pass("radical-commutes", universe))
    } else {
        Ok(TheoremVerdict::fail(
            "radical-commutes",
            universe,
            format!("radical of extension is {lhs}, extension of radical is {rhs}"),
        ))
    }
}
