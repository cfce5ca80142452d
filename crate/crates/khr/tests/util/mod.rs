//! Test-side structure builders. Tables are produced directly from modular
//! arithmetic (or literal tables), independent of the library's own
//! constructions, so comparisons against them are meaningful.
#![allow(dead_code)]

use khr::{ArityProfile, ElemSet, RawStructure, Structure, ValidationMode};

pub fn mask(xs: &[usize]) -> ElemSet {
    xs.iter().copied().collect()
}

pub fn zk_raw(k: usize) -> RawStructure {
    let arity = ArityProfile::new(2, 2).unwrap();
    let mut f = Vec::with_capacity(k * k);
    let mut g = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            f.push(ElemSet::singleton((a + b) % k));
            g.push(a * b % k);
        }
    }
    RawStructure::new(format!("Z{k}"), k, arity, true, 0, 1 % k, f, g, None).unwrap()
}

/// The classical ring Z_k as a (2,2)-structure.
pub fn zk(k: usize) -> Structure {
    Structure::from_raw(zk_raw(k), ValidationMode::Strict).unwrap()
}

/// Z2 x Z2 with componentwise operations, encoded 0=(0,0), 1=(1,1),
/// 2=(1,0), 3=(0,1).
pub fn klein_ring() -> Structure {
    let pairs = [(0, 0), (1, 1), (1, 0), (0, 1)];
    let encode = |p: (usize, usize)| pairs.iter().position(|&q| q == p).unwrap();
    let arity = ArityProfile::new(2, 2).unwrap();
    let mut f = Vec::new();
    let mut g = Vec::new();
    for &(a0, a1) in &pairs {
        for &(b0, b1) in &pairs {
            f.push(ElemSet::singleton(encode(((a0 + b0) % 2, (a1 + b1) % 2))));
            g.push(encode((a0 * b0, a1 * b1)));
        }
    }
    let raw = RawStructure::new("Z2xZ2", 4, arity, true, 0, 1, f, g, None).unwrap();
    Structure::from_raw(raw, ValidationMode::Strict).unwrap()
}

/// The (3,3)-hyperring over {0,1,2} with f(1,1,2) = f(0,1,2) = f(1,2,2) = R,
/// all other hypersums singletons, and g the zero-absorbing max-like
/// product. Distributivity of g over f only holds as a containment, so the
/// tables validate weakly, not strictly.
pub fn paper33_raw() -> RawStructure {
    let arity = ArityProfile::new(3, 3).unwrap();
    let card = 3;
    let f_entries: &[(usize, usize, usize, &[usize])] = &[
        (0, 0, 0, &[0]),
        (0, 0, 1, &[1]),
        (0, 1, 1, &[1]),
        (1, 1, 1, &[1]),
        (1, 1, 2, &[0, 1, 2]),
        (0, 1, 2, &[0, 1, 2]),
        (0, 0, 2, &[2]),
        (0, 2, 2, &[2]),
        (1, 2, 2, &[0, 1, 2]),
        (2, 2, 2, &[2]),
    ];
    let mut f = vec![ElemSet::EMPTY; card * card * card];
    for &(a, b, c, v) in f_entries {
        let value: ElemSet = v.iter().copied().collect();
        for t in permutations3(a, b, c) {
            f[(t.0 * card + t.1) * card + t.2] = value;
        }
    }
    let mut g = vec![0; card * card * card];
    for a in 0..card {
        for b in 0..card {
            for c in 0..card {
                let v = if a == 0 || b == 0 || c == 0 {
                    0
                } else if a == 2 || b == 2 || c == 2 {
                    2
                } else {
                    1
                };
                g[(a * card + b) * card + c] = v;
            }
        }
    }
    RawStructure::new("paper33", card, arity, true, 0, 1, f, g, None).unwrap()
}

pub fn paper33_weak() -> Structure {
    Structure::from_raw(paper33_raw(), ValidationMode::Weak).unwrap()
}

fn permutations3(a: usize, b: usize, c: usize) -> Vec<(usize, usize, usize)> {
    vec![
        (a, b, c),
        (a, c, b),
        (b, a, c),
        (b, c, a),
        (c, a, b),
        (c, b, a),
    ]
}

/// Z_k as a (2,3)-structure: binary addition, ternary product. The n > m
/// gap exercises the scalar-identity padding in the fraction formulas.
pub fn zk23(k: usize) -> Structure {
    let arity = ArityProfile::new(2, 3).unwrap();
    let mut f = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            f.push(ElemSet::singleton((a + b) % k));
        }
    }
    let mut g = Vec::with_capacity(k * k * k);
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                g.push(a * b * c % k);
            }
        }
    }
    let raw = RawStructure::new(format!("Z{k}t"), k, arity, true, 0, 1 % k, f, g, None).unwrap();
    Structure::from_raw(raw, ValidationMode::Strict).unwrap()
}

/// Z_k as a (3,3)-structure: ternary hypersum {a+b+c}, ternary product.
/// Only canonical for odd k: when k is even, k/2 is a second scalar
/// neutral of the ternary sum.
pub fn zk33(k: usize) -> Structure {
    assert!(k % 2 == 1, "ternary-sum lift needs odd k");
    let arity = ArityProfile::new(3, 3).unwrap();
    let mut f = Vec::with_capacity(k * k * k);
    let mut g = Vec::with_capacity(k * k * k);
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                f.push(ElemSet::singleton((a + b + c) % k));
                g.push(a * b * c % k);
            }
        }
    }
    let raw = RawStructure::new(format!("Z{k}w"), k, arity, true, 0, 1 % k, f, g, None).unwrap();
    Structure::from_raw(raw, ValidationMode::Strict).unwrap()
}

/// The two-element Krasner hyperfield lifted to arity (3,3) by iterating
/// its binary hypersum; the ternary hypersum of three ones is {0,1}.
pub fn k2_33() -> Structure {
    let arity = ArityProfile::new(3, 3).unwrap();
    // binary K2 hypersum as masks: 0+0={0}, 0+1=1+0={1}, 1+1={0,1}
    let add2 = |a: ElemSet, b: ElemSet| {
        let mut out = ElemSet::EMPTY;
        for x in a.iter() {
            for y in b.iter() {
                out = out.union(match (x, y) {
                    (0, 0) => ElemSet::singleton(0),
                    (1, 1) => [0, 1].into_iter().collect(),
                    _ => ElemSet::singleton(1),
                });
            }
        }
        out
    };
    let mut f = Vec::with_capacity(8);
    let mut g = Vec::with_capacity(8);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                f.push(add2(
                    add2(ElemSet::singleton(a), ElemSet::singleton(b)),
                    ElemSet::singleton(c),
                ));
                g.push(a & b & c);
            }
        }
    }
    let raw = RawStructure::new("K2w", 2, arity, true, 0, 1, f, g, None).unwrap();
    Structure::from_raw(raw, ValidationMode::Strict).unwrap()
}
