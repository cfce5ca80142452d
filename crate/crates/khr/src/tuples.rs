/// Odometer over all `len`-tuples with entries in `0..card`, in
/// lexicographic order. Lends the tuple to avoid per-step allocation.
pub struct Tuples {
    buf: Vec<usize>,
    card: usize,
    fresh: bool,
    done: bool,
}

impl Tuples {
    pub fn new(card: usize, len: usize) -> Self {
        Tuples {
            buf: vec![0; len],
            card,
            fresh: true,
            done: card == 0 && len > 0,
        }
    }

    pub fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(&self.buf);
        }
        let mut i = self.buf.len();
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            self.buf[i] += 1;
            if self.buf[i] < self.card {
                break;
            }
            self.buf[i] = 0;
        }
        Some(&self.buf)
    }
}

/// Odometer over the Cartesian product of per-position domains,
/// lexicographic in domain order.
pub struct Product {
    domains: Vec<Vec<usize>>,
    idx: Vec<usize>,
    buf: Vec<usize>,
    fresh: bool,
    done: bool,
}

impl Product {
    pub fn new(domains: Vec<Vec<usize>>) -> Self {
        let done = domains.iter().any(|d| d.is_empty());
        let buf = domains
            .iter()
            .map(|d| d.first().copied().unwrap_or(0))
            .collect();
        Product {
            idx: vec![0; domains.len()],
            buf,
            domains,
            fresh: true,
            done,
        }
    }

    pub fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(&self.buf);
        }
        let mut i = self.domains.len();
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            self.idx[i] += 1;
            if self.idx[i] < self.domains[i].len() {
                self.buf[i] = self.domains[i][self.idx[i]];
                break;
            }
            self.idx[i] = 0;
            self.buf[i] = self.domains[i][0];
        }
        Some(&self.buf)
    }
}

/// Renders a tuple as `(a,b,c)` for counterexample strings.
pub fn fmt_tuple(t: &[usize]) -> String {
    let mut s = String::from("(");
    for (i, x) in t.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&x.to_string());
    }
    s.push(')');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_lex_order() {
        let mut it = Tuples::new(2, 3);
        let mut seen = Vec::new();
        while let Some(t) = it.next() {
            seen.push(t.to_vec());
        }
        assert_eq!(seen.len(), 8);
        assert_eq!(seen[0], vec![0, 0, 0]);
        assert_eq!(seen[1], vec![0, 0, 1]);
        assert_eq!(seen[7], vec![1, 1, 1]);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_tuple_yields_once() {
        let mut it = Tuples::new(3, 0);
        assert_eq!(it.next(), Some(&[][..]));
        assert_eq!(it.next(), None);
    }

    #[test]
    fn product_mixed_domains() {
        let mut it = Product::new(vec![vec![1, 3], vec![0], vec![2, 5]]);
        let mut seen = Vec::new();
        while let Some(t) = it.next() {
            seen.push(t.to_vec());
        }
        assert_eq!(
            seen,
            vec![vec![1, 0, 2], vec![1, 0, 5], vec![3, 0, 2], vec![3, 0, 5]]
        );
    }

    #[test]
    fn product_with_empty_domain() {
        let mut it = Product::new(vec![vec![1], vec![]]);
        assert_eq!(it.next(), None);
    }

    #[test]
    fn fmt_tuple_renders() {
        assert_eq!(fmt_tuple(&[0, 1, 2]), "(0,1,2)");
        assert_eq!(fmt_tuple(&[]), "()");
    }
}
