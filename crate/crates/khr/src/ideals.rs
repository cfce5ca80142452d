//! Hyperideal and multiplicative-subset predicates, exhaustive hyperideal
//! enumeration, the prime/primary/2-absorbing/maximal classifiers, and
//! radicals. All predicates scan the whole relevant tuple space; the carrier
//! caps keep that cheap.

use crate::error::{Error, Result};
use crate::set::ElemSet;
use crate::structure::Structure;
use crate::tuples::{Product, Tuples};

/// Which quantifier the n-ary primary definition uses for the offending
/// index: `Universal` demands the substituted product land in the radical
/// for every factor outside the ideal, `Existential` for at least one.
/// The definition's wording is ambiguous; `Universal` is the default.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimaryReading {
    Universal,
    Existential,
}

fn check_subset(s: &Structure, a: ElemSet) -> Result<()> {
    if !a.is_subset_of(s.carrier()) {
        return Err(Error::ElementOutOfRange {
            index: a.minus(s.carrier()).least().unwrap(),
            card: s.card(),
        });
    }
    Ok(())
}

fn require_hyperideal(s: &Structure, a: ElemSet) -> Result<()> {
    if !is_hyperideal(s, a)? {
        return Err(Error::NotHyperideal {
            structure: s.name().to_string(),
            subset: a.to_string(),
        });
    }
    Ok(())
}

fn require_proper_hyperideal(s: &Structure, a: ElemSet) -> Result<()> {
    require_hyperideal(s, a)?;
    if a == s.carrier() {
        return Err(Error::NotProperHyperideal {
            structure: s.name().to_string(),
            subset: a.to_string(),
        });
    }
    Ok(())
}

/// True iff `a` is closed under `f`, contains zero, is closed under
/// negation, and absorbs `g` in every position against arbitrary elements.
pub fn is_hyperideal(s: &Structure, a: ElemSet) -> Result<bool> {
    if a.is_empty() {
        return Err(Error::EmptySubset);
    }
    check_subset(s, a)?;

    if !a.contains(s.zero()) {
        return Ok(false);
    }
    if a.iter().any(|x| !a.contains(s.neg(x))) {
        return Ok(false);
    }

    let members = a.to_vec();
    let mut closure = Product::new(vec![members.clone(); s.m()]);
    while let Some(t) = closure.next() {
        if !s.eval_f(t)?.is_subset_of(a) {
            return Ok(false);
        }
    }

    let n = s.n();
    let mut t = vec![0; n];
    for pos in 0..n {
        let mut rest = Tuples::new(s.card(), n - 1);
        while let Some(outer) = rest.next() {
            t[..pos].copy_from_slice(&outer[..pos]);
            t[pos + 1..].copy_from_slice(&outer[pos..]);
            for &x in &members {
                t[pos] = x;
                if !a.contains(s.eval_g(&t)?) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Every hyperideal of `s`, in ascending bitmask order. Always contains
/// `{zero}` and the full carrier for a validated structure.
pub fn enumerate_hyperideals(s: &Structure) -> Vec<ElemSet> {
    let mut out = Vec::new();
    let zero_bit = 1u64 << s.zero();
    let top = if s.card() == 64 {
        u64::MAX
    } else {
        (1u64 << s.card()) - 1
    };
    let mut mask = 1u64;
    loop {
        if mask & zero_bit != 0 {
            let a = ElemSet::from_bits(mask);
            if is_hyperideal(s, a).expect("in-range nonempty subset") {
                out.push(a);
            }
        }
        if mask == top {
            break;
        }
        mask += 1;
    }
    out
}

/// True iff `one` is a member and `g` maps n-tuples of members into `a`.
pub fn is_multiplicative(s: &Structure, a: ElemSet) -> bool {
    if !a.is_subset_of(s.carrier()) || !a.contains(s.one()) {
        return false;
    }
    let members = a.to_vec();
    let mut it = Product::new(vec![members; s.n()]);
    while let Some(t) = it.next() {
        if !a.contains(s.g_at(t)) {
            return false;
        }
    }
    true
}

/// Every n-ary multiplicative subset, ascending bitmask order.
pub fn enumerate_multiplicative_subsets(s: &Structure) -> Vec<ElemSet> {
    let one_bit = 1u64 << s.one();
    let top = if s.card() == 64 {
        u64::MAX
    } else {
        (1u64 << s.card()) - 1
    };
    let mut out = Vec::new();
    let mut mask = 1u64;
    loop {
        if mask & one_bit != 0 && is_multiplicative(s, ElemSet::from_bits(mask)) {
            out.push(ElemSet::from_bits(mask));
        }
        if mask == top {
            break;
        }
        mask += 1;
    }
    out
}

/// Elementwise primality: a proper hyperideal where any product landing in
/// it has a factor in it.
pub fn is_prime(s: &Structure, ideal: ElemSet) -> Result<bool> {
    require_proper_hyperideal(s, ideal)?;
    let mut it = Tuples::new(s.card(), s.n());
    while let Some(t) = it.next() {
        if ideal.contains(s.g_at(t)) && !t.iter().any(|&x| ideal.contains(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Primality in the hyperideal-product form: for hyperideals `I_1..I_n`,
/// `g(I_1,...,I_n) ⊆ I` forces some `I_j ⊆ I`. The elementwise form is the
/// working definition; the theorem suite cross-checks the two.
pub fn is_prime_by_ideal_products(s: &Structure, ideal: ElemSet) -> Result<bool> {
    require_proper_hyperideal(s, ideal)?;
    let all = enumerate_hyperideals(s);
    let index_domain: Vec<usize> = (0..all.len()).collect();
    let mut choice = Product::new(vec![index_domain; s.n()]);
    while let Some(pick) = choice.next() {
        let mut product = ElemSet::EMPTY;
        let mut members = Product::new(pick.iter().map(|&j| all[j].to_vec()).collect());
        while let Some(t) = members.next() {
            product.insert(s.g_at(t));
        }
        if product.is_subset_of(ideal) && !pick.iter().any(|&j| all[j].is_subset_of(ideal)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The intersection of all prime hyperideals containing `ideal`; the full
/// carrier when no prime contains it. Also computes the power-membership
/// set (elements with some 1-padded or iterated power inside `ideal`) and
/// checks it sits inside the returned radical.
pub fn radical(s: &Structure, ideal: ElemSet) -> Result<ElemSet> {
    require_hyperideal(s, ideal)?;
    let mut out = s.carrier();
    for candidate in enumerate_hyperideals(s) {
        if ideal.is_subset_of(candidate) && candidate != s.carrier() && is_prime(s, candidate)? {
            out = out.intersect(candidate);
        }
    }

    let powers = power_membership_set(s, ideal);
    if !powers.is_subset_of(out) {
        return Err(Error::AssertionFailed {
            what: format!(
                "power-membership set {} escapes the radical {} of {}",
                powers, out, ideal
            ),
        });
    }
    Ok(out)
}

/// Elements `x` such that `g(x^(t), 1^(n-t))` lies in `ideal` for some
/// `t <= n`, or some iterated power `g_(l)(x^(l(n-1)+1))` does. The iterated
/// powers cycle within `card` steps, which bounds `l`.
fn power_membership_set(s: &Structure, ideal: ElemSet) -> ElemSet {
    let n = s.n();
    let mut out = ElemSet::EMPTY;
    for x in 0..s.card() {
        let mut hit = false;
        let mut t = vec![s.one(); n];
        for k in 1..=n {
            t[k - 1] = x;
            if ideal.contains(s.g_at(&t)) {
                hit = true;
                break;
            }
        }
        if !hit {
            // p_1 = g(x^n); p_(l+1) = g(p_l, x^(n-1)); stop once a value repeats
            let mut seen = ElemSet::EMPTY;
            let mut p = s.g_at(&vec![x; n]);
            loop {
                if ideal.contains(p) {
                    hit = true;
                    break;
                }
                if seen.contains(p) {
                    break;
                }
                seen.insert(p);
                let mut step = vec![x; n];
                step[0] = p;
                p = s.g_at(&step);
            }
        }
        if hit {
            out.insert(x);
        }
    }
    out
}

/// Primary per the literal definition: any product in `q` with a factor
/// outside `q` puts the 1-substituted product in the radical of `q`.
pub fn is_primary(s: &Structure, q: ElemSet) -> Result<bool> {
    is_primary_with(s, q, PrimaryReading::Universal)
}

pub fn is_primary_with(s: &Structure, q: ElemSet, reading: PrimaryReading) -> Result<bool> {
    require_proper_hyperideal(s, q)?;
    let rad = radical(s, q)?;
    let n = s.n();
    let mut subst = vec![0; n];
    let mut it = Tuples::new(s.card(), n);
    while let Some(t) = it.next() {
        if !q.contains(s.g_at(t)) {
            continue;
        }
        let mut any_outside = false;
        let mut any_ok = false;
        let mut all_ok = true;
        for (i, &xi) in t.iter().enumerate() {
            if q.contains(xi) {
                continue;
            }
            any_outside = true;
            subst.copy_from_slice(t);
            subst[i] = s.one();
            if rad.contains(s.g_at(&subst)) {
                any_ok = true;
            } else {
                all_ok = false;
            }
        }
        if !any_outside {
            continue;
        }
        let ok = match reading {
            PrimaryReading::Universal => all_ok,
            PrimaryReading::Existential => any_ok,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// 2-absorbing: any product in `ideal` has a pair of factors whose 1-padded
/// product is in `ideal`. Degenerates to truth for n = 2, where the pair is
/// the whole product.
pub fn is_two_absorbing(s: &Structure, ideal: ElemSet) -> Result<bool> {
    require_proper_hyperideal(s, ideal)?;
    let n = s.n();
    let mut it = Tuples::new(s.card(), n);
    while let Some(t) = it.next() {
        if !ideal.contains(s.g_at(t)) {
            continue;
        }
        let mut found = false;
        'pairs: for i in 0..n {
            for j in i + 1..n {
                if ideal.contains(s.g_padded(&[t[i], t[j]])) {
                    found = true;
                    break 'pairs;
                }
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximal: no hyperideal sits strictly between `m` and the carrier.
pub fn is_maximal(s: &Structure, m: ElemSet) -> Result<bool> {
    require_proper_hyperideal(s, m)?;
    for other in enumerate_hyperideals(s) {
        if m.is_subset_of(other) && other != m && other != s.carrier() {
            return Ok(false);
        }
    }
    Ok(true)
}
