//! Builtin corpus generators.

use khr::{ArityProfile, ElemSet, RawStructure, Structure, ValidationMode};

/// The classical ring Z_k as a (2,2)-structure: `f(a,b) = {a+b mod k}`,
/// `g(a,b) = ab mod k`. These anchor the theorem suite to facts checkable
/// by ordinary modular arithmetic.
pub fn generate_ring_embedding(k: usize) -> Result<Structure, khr::Error> {
    if !(2..=khr::MAX_CARD).contains(&k) {
        return Err(khr::Error::CarrierTooLarge { card: k });
    }
    let arity = ArityProfile::new(2, 2)?;
    let mut f = Vec::with_capacity(k * k);
    let mut g = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            f.push(ElemSet::singleton((a + b) % k));
            g.push(a * b % k);
        }
    }
    let raw = RawStructure::new(format!("Z{k}"), k, arity, true, 0, 1, f, g, None)?;
    Structure::from_raw(raw, ValidationMode::Strict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_embeddings_validate() {
        for k in [2, 5, 6, 12] {
            let s = generate_ring_embedding(k).unwrap();
            assert_eq!(s.card(), k);
            assert_eq!(s.name(), format!("Z{k}"));
        }
        assert!(generate_ring_embedding(1).is_err());
        assert!(generate_ring_embedding(65).is_err());
    }

    #[test]
    fn z5_is_a_domain_and_z6_is_not() {
        assert!(generate_ring_embedding(5)
            .unwrap()
            .is_hyperintegral_domain());
        assert!(!generate_ring_embedding(6)
            .unwrap()
            .is_hyperintegral_domain());
    }
}
