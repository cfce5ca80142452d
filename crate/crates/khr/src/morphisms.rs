//! Homomorphism predicate, exhaustive homomorphism and isomorphism search,
//! and the universal property of localization.
//!
//! Homomorphisms here preserve zero and one. The defining equations do not
//! state that, but the localization proofs use both silently (collapsing
//! `k(0)^(m-2)` and inverting `k(s)`); [`HomRule::EquationsOnly`] drops the
//! requirement for comparison runs.

use crate::error::{Error, Result};
use crate::fractions::{is_invertible, natural_map, Localization};
use crate::set::ElemSet;
use crate::structure::Structure;
use crate::transport::TheoremVerdict;
use crate::tuples::{fmt_tuple, Tuples};

/// A total map between two carriers, `image[x]` being the target index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapTable {
    pub image: Vec<usize>,
}

impl MapTable {
    pub fn new(image: Vec<usize>, source: &Structure, target: &Structure) -> Result<Self> {
        if image.len() != source.card() {
            return Err(Error::MapWrongLength {
                expected: source.card(),
                got: image.len(),
            });
        }
        if let Some((x, &y)) = image.iter().enumerate().find(|(_, &y)| y >= target.card()) {
            return Err(Error::MapValueOutOfRange {
                element: x,
                image: y,
                card: target.card(),
            });
        }
        Ok(MapTable { image })
    }

    pub fn identity(card: usize) -> Self {
        MapTable {
            image: (0..card).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// The report rendering: one `map <src> -> <dst>` line per element.
    pub fn render(&self) -> String {
        self.image
            .iter()
            .enumerate()
            .map(|(x, y)| format!("map {x} -> {y}"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum HomRule {
    #[default]
    PreserveUnits,
    EquationsOnly,
}

fn check_map(a: &Structure, b: &Structure, map: &MapTable) -> Result<()> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            m_a: a.m(),
            n_a: a.n(),
            m_b: b.m(),
            n_b: b.n(),
        });
    }
    if map.image.len() != a.card() {
        return Err(Error::MapWrongLength {
            expected: a.card(),
            got: map.image.len(),
        });
    }
    if let Some((x, &y)) = map.image.iter().enumerate().find(|(_, &y)| y >= b.card()) {
        return Err(Error::MapValueOutOfRange {
            element: x,
            image: y,
            card: b.card(),
        });
    }
    Ok(())
}

/// First violated homomorphism obligation, rendered, or `None` if the map
/// satisfies all of them: set equality `k(f(t)) = f(k(t))` on every m-tuple
/// and `k(g(t)) = g(k(t))` on every n-tuple.
pub fn homomorphism_failure(
    a: &Structure,
    b: &Structure,
    map: &MapTable,
    rule: HomRule,
) -> Result<Option<String>> {
    check_map(a, b, map)?;
    if rule == HomRule::PreserveUnits {
        if map.apply(a.zero()) != b.zero() {
            return Ok(Some(format!(
                "zero not preserved: {} -> {}",
                a.zero(),
                map.apply(a.zero())
            )));
        }
        if map.apply(a.one()) != b.one() {
            return Ok(Some(format!(
                "one not preserved: {} -> {}",
                a.one(),
                map.apply(a.one())
            )));
        }
    }
    let mut mapped = vec![0; a.m().max(a.n())];
    let mut it = Tuples::new(a.card(), a.m());
    while let Some(t) = it.next() {
        for (k, &x) in t.iter().enumerate() {
            mapped[k] = map.apply(x);
        }
        let lhs: ElemSet = a.f_at(t).iter().map(|u| map.apply(u)).collect();
        let rhs = b.f_at(&mapped[..a.m()]);
        if lhs != rhs {
            return Ok(Some(format!(
                "f at t={}: image {} vs {}",
                fmt_tuple(t),
                lhs,
                rhs
            )));
        }
    }
    let mut it = Tuples::new(a.card(), a.n());
    while let Some(t) = it.next() {
        for (k, &x) in t.iter().enumerate() {
            mapped[k] = map.apply(x);
        }
        let lhs = map.apply(a.g_at(t));
        let rhs = b.g_at(&mapped[..a.n()]);
        if lhs != rhs {
            return Ok(Some(format!(
                "g at t={}: image {} vs {}",
                fmt_tuple(t),
                lhs,
                rhs
            )));
        }
    }
    Ok(None)
}

pub fn is_homomorphism(a: &Structure, b: &Structure, map: &MapTable) -> Result<bool> {
    Ok(homomorphism_failure(a, b, map, HomRule::PreserveUnits)?.is_none())
}

/// All homomorphisms from `a` to `b`, in lexicographic order of their image
/// vectors. The search pins zero and one, forces `k(neg x) = neg k(x)`, and
/// refuses outright when `card(b)^card(a)` exceeds `cap`.
pub fn enumerate_homomorphisms(a: &Structure, b: &Structure, cap: u128) -> Result<Vec<MapTable>> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            m_a: a.m(),
            n_a: a.n(),
            m_b: b.m(),
            n_b: b.n(),
        });
    }
    let required = (b.card() as u128)
        .checked_pow(a.card() as u32)
        .unwrap_or(u128::MAX);
    if required > cap {
        return Err(Error::SearchCapExceeded { required, cap });
    }
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; a.card()];
    search_maps(a, b, &mut image, 0, false, &mut |map| {
        if homomorphism_failure(a, b, map, HomRule::PreserveUnits)
            .expect("shape checked")
            .is_none()
        {
            out.push(map.clone());
        }
    });
    Ok(out)
}

/// Backtracking assignment of images in element order. Zero and one are
/// pinned, an element whose negation is already assigned gets the forced
/// value, and `injective` additionally keeps the image a bijection.
fn search_maps(
    a: &Structure,
    b: &Structure,
    image: &mut Vec<usize>,
    next: usize,
    injective: bool,
    visit: &mut impl FnMut(&MapTable),
) {
    if next == a.card() {
        visit(&MapTable {
            image: image.clone(),
        });
        return;
    }
    let forced: Option<usize> = if next == a.zero() {
        Some(b.zero())
    } else if next == a.one() {
        Some(b.one())
    } else {
        let na = a.neg(next);
        if na < next {
            Some(b.neg(image[na]))
        } else {
            None
        }
    };
    let candidates: Vec<usize> = match forced {
        Some(y) => vec![y],
        None => (0..b.card()).collect(),
    };
    for y in candidates {
        if injective && image[..next].contains(&y) {
            continue;
        }
        image[next] = y;
        search_maps(a, b, image, next + 1, injective, visit);
        image[next] = usize::MAX;
    }
}

/// The lexicographically least isomorphism between `a` and `b`, if one
/// exists: a bijective homomorphism whose inverse is also a homomorphism.
pub fn find_isomorphism(a: &Structure, b: &Structure) -> Option<MapTable> {
    if a.arity() != b.arity() || a.card() != b.card() {
        return None;
    }
    let mut found: Option<MapTable> = None;
    let mut image = vec![usize::MAX; a.card()];
    search_maps(a, b, &mut image, 0, true, &mut |map| {
        if found.is_some() {
            return;
        }
        let forward_ok = homomorphism_failure(a, b, map, HomRule::PreserveUnits)
            .expect("shape checked")
            .is_none();
        if !forward_ok {
            return;
        }
        let mut inverse = vec![0; b.card()];
        for (x, &y) in map.image.iter().enumerate() {
            inverse[y] = x;
        }
        let inverse = MapTable { image: inverse };
        if homomorphism_failure(b, a, &inverse, HomRule::PreserveUnits)
            .expect("shape checked")
            .is_none()
        {
            found = Some(map.clone());
        }
    });
    found
}

/// Universal property of `phi : R -> S^-1 R`: given `k : R -> B` sending
/// every member of `S` to an invertible element, the map
/// `h(r/s) = g(k(r), k(s)^-1, 1^(n-2))` is checked to be well defined, a
/// homomorphism, the unique one with `h . phi = k`.
pub fn check_universal_property(
    l: &Localization,
    target: &Structure,
    k: &MapTable,
    cap: u128,
) -> Result<TheoremVerdict> {
    let base = l.base();
    if let Some(violation) = homomorphism_failure(base, target, k, HomRule::PreserveUnits)? {
        return Err(Error::HypothesisFailed {
            check: "universal-property",
            hypothesis: format!("k is not a homomorphism: {violation}"),
        });
    }
    let mut k_inv = vec![usize::MAX; base.card()];
    for s in l.sset().iter() {
        match is_invertible(target, k.apply(s))? {
            Some(y) => k_inv[s] = y,
            None => {
                return Err(Error::HypothesisFailed {
                    check: "universal-property",
                    hypothesis: format!(
                        "k({s}) = {} is not invertible in `{}`",
                        k.apply(s),
                        target.name()
                    ),
                });
            }
        }
    }

    let theorem = "universal-property".to_string();
    let universe = format!(
        "{}, S={}, target `{}`, k=[{}]",
        base.name(),
        l.sset(),
        target.name(),
        k.image
            .iter()
            .map(|y| y.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let fail = |why: String| TheoremVerdict {
        theorem: theorem.clone(),
        universe: universe.clone(),
        pass: false,
        counterexample: Some(why),
    };

    // h on canonical representatives, then well-definedness across members.
    let mut h_image = Vec::with_capacity(l.classes().len());
    for class in l.classes() {
        let (r, s) = class.canonical();
        h_image.push(target.g_padded(&[k.apply(r), k_inv[s]]));
    }
    for class in l.classes() {
        for &(r, s) in &class.members {
            let v = target.g_padded(&[k.apply(r), k_inv[s]]);
            if v != h_image[class.id] {
                return Ok(fail(format!(
                    "h not well defined on class {}: {}/{} gives {}, canonical gives {}",
                    class.id, r, s, v, h_image[class.id]
                )));
            }
        }
    }
    let h = MapTable::new(h_image, l.structure(), target)?;
    if let Some(violation) =
        homomorphism_failure(l.structure(), target, &h, HomRule::PreserveUnits)?
    {
        return Ok(fail(format!("h is not a homomorphism: {violation}")));
    }
    let phi = natural_map(l);
    for r in 0..base.card() {
        if h.apply(phi.apply(r)) != k.apply(r) {
            return Ok(fail(format!(
                "h(phi({r})) = {} but k({r}) = {}",
                h.apply(phi.apply(r)),
                k.apply(r)
            )));
        }
    }
    // uniqueness by exhaustive enumeration
    let all = enumerate_homomorphisms(l.structure(), target, cap)?;
    let matching: Vec<&MapTable> = all
        .iter()
        .filter(|h2| (0..base.card()).all(|r| h2.apply(phi.apply(r)) == k.apply(r)))
        .collect();
    if matching.len() != 1 || matching[0] != &h {
        return Ok(fail(format!(
            "{} homomorphisms compose with phi to k (expected exactly h)",
            matching.len()
        )));
    }

    Ok(TheoremVerdict {
        theorem,
        universe,
        pass: true,
        counterexample: None,
    })
}
