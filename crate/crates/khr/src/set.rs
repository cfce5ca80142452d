use std::fmt;

/// A subset of a carrier `0..card`, stored as a 64-bit mask.
///
/// Carriers are capped at 64 elements so every subset fits in one word;
/// unions, intersections and membership tests are single instructions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElemSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(e: usize) -> Self {
        debug_assert!(e < 64);
        ElemSet(1 << e)
    }

    /// The full carrier `{0, ..., card-1}`.
    pub fn full(card: usize) -> Self {
        debug_assert!(card <= 64);
        if card == 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << card) - 1)
        }
    }

    pub fn insert(&mut self, e: usize) {
        debug_assert!(e < 64);
        self.0 |= 1 << e;
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersect(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    /// Set difference `self \ other`.
    pub fn minus(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn least(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> SetIter {
        SetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Members joined with dots, for embedding in derived structure names:
    /// `{1,3,5}` becomes `1.3.5`.
    pub fn label(self) -> String {
        let mut s = String::new();
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                s.push('.');
            }
            s.push_str(&e.to_string());
        }
        s
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

pub struct SetIter(u64);

impl Iterator for SetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let e = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(e)
        }
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(out, ",")?;
            }
            write!(out, "{e}")?;
        }
        write!(out, "}}")
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut a = ElemSet::EMPTY;
        a.insert(0);
        a.insert(2);
        a.insert(4);
        assert_eq!(a.len(), 3);
        assert!(a.contains(2));
        assert!(!a.contains(1));
        assert_eq!(a.least(), Some(0));
        assert_eq!(a.to_vec(), vec![0, 2, 4]);
        assert_eq!(a.to_string(), "{0,2,4}");

        let b: ElemSet = [1, 2].into_iter().collect();
        assert_eq!(a.union(b).to_vec(), vec![0, 1, 2, 4]);
        assert_eq!(a.intersect(b).to_vec(), vec![2]);
        assert_eq!(a.minus(b).to_vec(), vec![0, 4]);
        assert!(b.is_subset_of(ElemSet::full(6)));
        assert!(!ElemSet::full(6).is_subset_of(b));
    }

    #[test]
    fn full_carrier_edge() {
        assert_eq!(ElemSet::full(64).len(), 64);
        assert_eq!(ElemSet::full(1).to_vec(), vec![0]);
        assert!(ElemSet::EMPTY.least().is_none());
    }
}
