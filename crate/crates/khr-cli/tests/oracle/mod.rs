//! Classical modular-arithmetic oracle for the Z_k anchors.
//!
//! Everything here is computed with `%`-arithmetic on plain integers and
//! never calls into the structure/table machinery it is used to check:
//! ideals and their classification, radicals, the ring of fractions with
//! its class partition and operation tables, and quotient rings with their
//! coset partition and tables.
#![allow(dead_code)]

pub fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn full(k: usize) -> u64 {
    (1u64 << k) - 1
}

pub fn is_ideal(k: usize, m: u64) -> bool {
    if m & 1 == 0 || m == 0 {
        return false;
    }
    let ms = members(m);
    ms.iter().all(|&a| {
        m >> ((k - a) % k) & 1 == 1
            && ms.iter().all(|&b| m >> ((a + b) % k) & 1 == 1)
            && (0..k).all(|x| m >> (a * x % k) & 1 == 1)
    })
}

pub fn ideals(k: usize) -> Vec<u64> {
    (1..=full(k)).filter(|&m| is_ideal(k, m)).collect()
}

pub fn is_multiplicative(k: usize, m: u64) -> bool {
    if m == 0 || m >> (1 % k) & 1 == 0 {
        return false;
    }
    let ms = members(m);
    ms.iter()
        .all(|&a| ms.iter().all(|&b| m >> (a * b % k) & 1 == 1))
}

pub fn multiplicative_subsets(k: usize) -> Vec<u64> {
    (1..=full(k)).filter(|&m| is_multiplicative(k, m)).collect()
}

pub fn is_prime(k: usize, m: u64) -> bool {
    if !is_ideal(k, m) || m == full(k) {
        return false;
    }
    (0..k).all(|x| (0..k).all(|y| m >> (x * y % k) & 1 == 0 || m >> x & 1 == 1 || m >> y & 1 == 1))
}

pub fn radical(k: usize, m: u64) -> u64 {
    let mut out = full(k);
    for p in ideals(k) {
        if p & m == m && is_prime(k, p) {
            out &= p;
        }
    }
    out
}

/// Binary reading of the n-ary primary definition: when `xy` lands in `q`
/// and a factor stays outside, substituting 1 for that factor (leaving the
/// other) must land in the radical.
pub fn is_primary(k: usize, q: u64) -> bool {
    if !is_ideal(k, q) || q == full(k) {
        return false;
    }
    let rad = radical(k, q);
    (0..k).all(|x| {
        (0..k).all(|y| {
            if q >> (x * y % k) & 1 == 0 {
                return true;
            }
            (q >> x & 1 == 1 || rad >> y & 1 == 1) && (q >> y & 1 == 1 || rad >> x & 1 == 1)
        })
    })
}

/// Binary reading of the n-ary 2-absorbing definition: the only pair of a
/// 2-tuple is the whole product, so every proper ideal qualifies.
pub fn is_two_absorbing(k: usize, m: u64) -> bool {
    is_ideal(k, m) && m != full(k)
}

pub fn is_maximal(k: usize, m: u64) -> bool {
    if !is_ideal(k, m) || m == full(k) {
        return false;
    }
    ideals(k)
        .iter()
        .all(|&j| !(m & j == m && j != m && j != full(k)))
}

/// The classical ring of fractions S^-1 Z_k: the partition of Z_k x S under
/// `(r,s) ~ (r',s')  iff  t (r s' - r' s) = 0 mod k for some t in S`,
/// classes ordered by least pair, plus the induced addition and
/// multiplication tables on class indices computed from representatives.
pub struct FractionOracle {
    pub classes: Vec<Vec<(usize, usize)>>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

pub fn localize(k: usize, sset: u64) -> FractionOracle {
    let s_members = members(sset);
    let mut pairs = Vec::new();
    for r in 0..k {
        for &s in &s_members {
            pairs.push((r, s));
        }
    }
    let eq = |a: (usize, usize), b: (usize, usize)| {
        s_members
            .iter()
            .any(|&t| (t * ((a.0 * b.1 + k * k) - b.0 * a.1)).is_multiple_of(k))
    };
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for &p in &pairs {
        match classes.iter_mut().find(|c| eq(c[0], p)) {
            Some(c) => c.push(p),
            None => classes.push(vec![p]),
        }
    }
    let class_of = |r: usize, s: usize| classes.iter().position(|c| eq(c[0], (r, s))).unwrap();
    let n = classes.len();
    let mut add = vec![vec![0; n]; n];
    let mut mul = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (r1, s1) = classes[i][0];
            let (r2, s2) = classes[j][0];
            add[i][j] = class_of((r1 * s2 + r2 * s1) % k, s1 * s2 % k);
            mul[i][j] = class_of(r1 * r2 % k, s1 * s2 % k);
        }
    }
    let zero = class_of(0, 1);
    let one = class_of(1, 1);
    FractionOracle {
        classes,
        add,
        mul,
        zero,
        one,
    }
}

/// The classical quotient Z_k / I: cosets ordered by least member, plus the
/// induced tables on coset indices.
pub struct QuotientOracle {
    pub cosets: Vec<Vec<usize>>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

pub fn quotient(k: usize, ideal: u64) -> QuotientOracle {
    let ms = members(ideal);
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for r in 0..k {
        let coset: Vec<usize> = {
            let mut c: Vec<usize> = ms.iter().map(|&a| (r + a) % k).collect();
            c.sort_unstable();
            c
        };
        if !cosets.contains(&coset) {
            cosets.push(coset);
        }
    }
    cosets.sort();
    let coset_of = |r: usize| cosets.iter().position(|c| c.contains(&(r % k))).unwrap();
    let n = cosets.len();
    let mut add = vec![vec![0; n]; n];
    let mut mul = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let a = cosets[i][0];
            let b = cosets[j][0];
            add[i][j] = coset_of(a + b);
            mul[i][j] = coset_of(a * b);
        }
    }
    let zero = coset_of(0);
    let one = coset_of(1);
    QuotientOracle {
        cosets,
        add,
        mul,
        zero,
        one,
    }
}
