//! Quotients `R/I` by the coset construction `f(r, I, 0^(m-2))`, the image
//! `S-bar` of a multiplicative subset, and the isomorphism between
//! localizing the quotient and quotienting the localization.
//!
//! Only the carrier of `R/I` is given by the definition; the operations are
//! induced coset-wise and every obligation (the cosets partition, the
//! induced tables are representative-independent, the result validates
//! strictly) is checked from scratch rather than assumed.

use crate::error::{Error, Result};
use crate::fractions::{build_localization, is_invertible};
use crate::ideals::{is_hyperideal, is_multiplicative};
use crate::morphisms::{find_isomorphism, homomorphism_failure, HomRule, MapTable};
use crate::set::ElemSet;
use crate::structure::{RawStructure, Structure};
use crate::transport::{extend_ideal, TheoremVerdict};
use crate::tuples::{fmt_tuple, Tuples};
use crate::validate::ValidationMode;

/// `R/I` with its coset partition and the induced strict-validated
/// structure over coset indices. Cosets are ordered by least member, so ids
/// and serialization are stable.
#[derive(Clone, Debug)]
pub struct Quotient {
    base: Structure,
    ideal: ElemSet,
    cosets: Vec<ElemSet>,
    coset_index: Vec<usize>,
    structure: Structure,
}

impl Quotient {
    pub fn base(&self) -> &Structure {
        &self.base
    }

    pub fn ideal(&self) -> ElemSet {
        self.ideal
    }

    pub fn cosets(&self) -> &[ElemSet] {
        &self.cosets
    }

    pub fn coset_of(&self, x: usize) -> Result<usize> {
        if x >= self.base.card() {
            return Err(Error::ElementOutOfRange {
                index: x,
                card: self.base.card(),
            });
        }
        Ok(self.coset_index[x])
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn zero_coset(&self) -> usize {
        self.structure.zero()
    }

    pub fn one_coset(&self) -> usize {
        self.structure.one()
    }
}

/// Builds `R/I`: cosets `f(r, I, 0^(m-2))` for every `r`, deduplicated,
/// checked to partition the carrier; operations induced on all
/// representative tuples with representative-independence enforced.
pub fn build_quotient(s: &Structure, ideal: ElemSet) -> Result<Quotient> {
    if !is_hyperideal(s, ideal)? {
        return Err(Error::NotHyperideal {
            structure: s.name().to_string(),
            subset: ideal.to_string(),
        });
    }
    let card = s.card();
    let m = s.m();

    let mut coset_sets: Vec<ElemSet> = Vec::new();
    let mut coset_of_elem = vec![ElemSet::EMPTY; card];
    for (r, slot) in coset_of_elem.iter_mut().enumerate() {
        let mut args = vec![ElemSet::singleton(s.zero()); m];
        args[0] = ElemSet::singleton(r);
        args[1] = ideal;
        let coset = s.f_subsets_at(&args);
        if !coset.contains(r) {
            return Err(Error::CosetsNotPartition {
                ideal: ideal.to_string(),
                detail: format!("coset of {r} is {coset}, which misses {r}"),
            });
        }
        *slot = coset;
        if !coset_sets.contains(&coset) {
            coset_sets.push(coset);
        }
    }
    for (i, a) in coset_sets.iter().enumerate() {
        for b in coset_sets.iter().skip(i + 1) {
            if !a.intersect(*b).is_empty() {
                return Err(Error::CosetsNotPartition {
                    ideal: ideal.to_string(),
                    detail: format!("cosets {a} and {b} overlap"),
                });
            }
        }
    }
    coset_sets.sort_by_key(|c| c.least());
    let mut coset_index = vec![usize::MAX; card];
    for (r, c) in coset_of_elem.iter().enumerate() {
        coset_index[r] = coset_sets
            .iter()
            .position(|x| x == c)
            .expect("coset recorded");
    }
    let ccount = coset_sets.len();

    let zero_coset = coset_index[s.zero()];
    if coset_sets[zero_coset] != ideal {
        return Err(Error::AssertionFailed {
            what: format!(
                "coset of zero is {}, which differs from the ideal {}",
                coset_sets[zero_coset], ideal
            ),
        });
    }

    let f = induced_table(s, &coset_index, ccount, m, "induced f", |t| {
        s.f_at(t)
            .iter()
            .map(|u| coset_index[u])
            .collect::<ElemSet>()
    })?;
    let g = induced_table(s, &coset_index, ccount, s.n(), "induced g", |t| {
        coset_index[s.g_at(t)]
    })?;

    let name = format!("{}_mod_{}", s.name(), ideal.label());
    let raw = RawStructure::new(
        name,
        ccount,
        s.arity(),
        s.commutative(),
        zero_coset,
        coset_index[s.one()],
        f,
        g,
        None,
    )?;
    let structure = Structure::from_raw(raw, ValidationMode::Strict)?;

    Ok(Quotient {
        base: s.clone(),
        ideal,
        cosets: coset_sets,
        coset_index,
        structure,
    })
}

/// Buckets `compute` over all base tuples by their coset-id tuple; errors
/// with both offending representative tuples if two disagree.
fn induced_table<V: Clone + PartialEq + ToString>(
    s: &Structure,
    coset_index: &[usize],
    ccount: usize,
    arity: usize,
    op: &'static str,
    compute: impl Fn(&[usize]) -> V,
) -> Result<Vec<V>> {
    let len = ccount.pow(arity as u32);
    let mut table: Vec<Option<V>> = vec![None; len];
    let mut first_rep: Vec<Option<Vec<usize>>> = vec![None; len];
    let mut it = Tuples::new(s.card(), arity);
    while let Some(t) = it.next() {
        let key = t.iter().fold(0, |acc, &x| acc * ccount + coset_index[x]);
        let v = compute(t);
        match &table[key] {
            None => {
                table[key] = Some(v);
                first_rep[key] = Some(t.to_vec());
            }
            Some(prev) if *prev != v => {
                let class_tuple: Vec<usize> = t.iter().map(|&x| coset_index[x]).collect();
                return Err(Error::NotWellDefined(Box::new(
                    crate::error::WellDefinednessWitness {
                        op,
                        class_tuple: fmt_tuple(&class_tuple),
                        rep_a: fmt_tuple(first_rep[key].as_deref().unwrap_or(&[])),
                        val_a: prev.to_string(),
                        rep_b: fmt_tuple(t),
                        val_b: v.to_string(),
                    },
                )));
            }
            Some(_) => {}
        }
    }
    Ok(table
        .into_iter()
        .map(|v| v.expect("cosets cover the carrier"))
        .collect())
}

/// The canonical projection `r -> coset(r)`.
pub fn projection_map(q: &Quotient) -> MapTable {
    MapTable {
        image: q.coset_index.clone(),
    }
}

/// `S-bar = {coset(s) : s in S}`, multiplicative in `R/I` whenever `S` is
/// multiplicative and disjoint from `I`.
pub fn sbar(q: &Quotient, sset: ElemSet) -> Result<ElemSet> {
    if !is_multiplicative(q.base(), sset) {
        return Err(Error::NotMultiplicative {
            structure: q.base().name().to_string(),
            subset: sset.to_string(),
        });
    }
    let common = sset.intersect(q.ideal);
    if !common.is_empty() {
        return Err(Error::HypothesisFailed {
            check: "sbar",
            hypothesis: format!("S meets I at {common}"),
        });
    }
    let out: ElemSet = sset.iter().map(|s| q.coset_index[s]).collect();
    if !is_multiplicative(q.structure(), out) {
        return Err(Error::AssertionFailed {
            what: format!(
                "S-bar = {} is not multiplicative in `{}`",
                out,
                q.structure().name()
            ),
        });
    }
    Ok(out)
}

/// Verifies `S-bar^-1 (R/I) ≅ S^-1 R / S^-1 I`: an isomorphism is searched
/// for directly, and the explicit comparison map
/// `k : R/I -> S^-1R / S^-1I`, `coset(r) -> coset(r/1)`, is checked to be a
/// well-defined homomorphism satisfying the three criteria that force the
/// unique isomorphism through it.
pub fn check_quotient_fraction_iso(
    s: &Structure,
    sset: ElemSet,
    ideal: ElemSet,
) -> Result<TheoremVerdict> {
    let q = build_quotient(s, ideal)?;
    let sb = sbar(&q, sset)?;
    let side_a = build_localization(q.structure(), sb)?;

    let lr = build_localization(s, sset)?;
    let extended = extend_ideal(&lr, ideal)?;
    let side_b = build_quotient(lr.structure(), extended)?;

    let theorem = "quotient-fraction-iso";
    let universe = format!("{}, S={}, I={}", s.name(), sset, ideal);
    let fail = |why: String| {
        Ok(TheoremVerdict {
            theorem: theorem.to_string(),
            universe: universe.clone(),
            pass: false,
            counterexample: Some(why),
        })
    };

    if find_isomorphism(side_a.structure(), side_b.structure()).is_none() {
        return fail(format!(
            "no isomorphism between `{}` ({} classes) and `{}` ({} cosets)",
            side_a.structure().name(),
            side_a.structure().card(),
            side_b.structure().name(),
            side_b.structure().card()
        ));
    }

    // k(coset(r)) = coset of r/1, checked representative-independent.
    let one = s.one();
    let mut k_image = vec![usize::MAX; q.structure().card()];
    for (id, coset) in q.cosets().iter().enumerate() {
        for r in coset.iter() {
            let v = side_b.coset_index[lr.class_of(r, one)?];
            if k_image[id] == usize::MAX {
                k_image[id] = v;
            } else if k_image[id] != v {
                return fail(format!(
                    "k not well defined on coset {id}: member {r} lands in coset {v}, expected {}",
                    k_image[id]
                ));
            }
        }
    }
    let k = MapTable::new(k_image, q.structure(), side_b.structure())?;
    if let Some(violation) = homomorphism_failure(
        q.structure(),
        side_b.structure(),
        &k,
        HomRule::PreserveUnits,
    )? {
        return fail(format!("k is not a homomorphism: {violation}"));
    }

    // Criteria forcing the unique isomorphism through k:
    // (i) k maps S-bar into invertible elements,
    for sc in sb.iter() {
        if is_invertible(side_b.structure(), k.apply(sc))?.is_none() {
            return fail(format!("k({sc}) = {} is not invertible", k.apply(sc)));
        }
    }
    // (ii) anything k kills is killed by some member of S-bar already,
    for x in 0..q.structure().card() {
        if k.apply(x) == side_b.structure().zero() {
            let witness = sb
                .iter()
                .find(|&t| q.structure().g_padded(&[t, x]) == q.structure().zero());
            if witness.is_none() {
                return fail(format!("k({x}) = 0 but no t in S-bar annihilates {x}"));
            }
        }
    }
    // (iii) every target element is g(k(x), k(s)^-1, 1^(n-2)).
    for target_elem in 0..side_b.structure().card() {
        let mut hit = false;
        'outer: for x in 0..q.structure().card() {
            for sc in sb.iter() {
                let inv = is_invertible(side_b.structure(), k.apply(sc))?
                    .expect("checked invertible above");
                if side_b.structure().g_padded(&[k.apply(x), inv]) == target_elem {
                    hit = true;
                    break 'outer;
                }
            }
        }
        if !hit {
            return fail(format!(
                "target element {target_elem} is not of the form k(x)k(s)^-1"
            ));
        }
    }

    Ok(TheoremVerdict {
        theorem: theorem.to_string(),
        universe,
        pass: true,
        counterexample: None,
    })
}
