//! Multisets over section indices {0..r-1} with the combinatorial helpers the
//! symmetric-tensor bookkeeping needs.

use std::fmt;

/// A sorted multiset of section indices; `elems` is nondecreasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset {
    elems: Vec<usize>,
}

impl Multiset {
    pub fn new(mut elems: Vec<usize>) -> Self {
        elems.sort_unstable();
        Self { elems }
    }

    pub fn empty() -> Self {
        Self { elems: Vec::new() }
    }

    pub fn single(i: usize) -> Self {
        Self { elems: vec![i] }
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Union as multisets (concatenate and resort).
    pub fn union(&self, other: &Self) -> Self {
        let mut elems = self.elems.clone();
        elems.extend_from_slice(&other.elems);
        Self::new(elems)
    }

    /// Exponent vector over `r` indices.
    pub fn exponents(&self, r: usize) -> Vec<usize> {
        let mut e = vec![0usize; r];
        for &i in &self.elems {
            assert!(i < r, "index out of range");
            e[i] += 1;
        }
        e
    }

    pub fn from_exponents(exp: &[usize]) -> Self {
        let mut elems = Vec::new();
        for (i, &e) in exp.iter().enumerate() {
            elems.extend(std::iter::repeat(i).take(e));
        }
        Self { elems }
    }

    /// Number of distinct orderings: |M|! / prod (multiplicities!).
    pub fn orderings(&self) -> u128 {
        let mut res = factorial(self.elems.len() as u128);
        let mut run = 1u128;
        for w in self.elems.windows(2) {
            if w[0] == w[1] {
                run += 1;
                res /= run;
            } else {
                run = 1;
            }
        }
        // the loop above divides by 2,3,..,run progressively per run: res ends
        // up |M|!/prod(mult!) because prod over runs of (2*3*..*mult) = mult!.
        res
    }

    /// Does `self` contain `other` as a sub-multiset?
    pub fn contains(&self, other: &Self) -> bool {
        let mut it = self.elems.iter().peekable();
        for &need in &other.elems {
            loop {
                match it.next() {
                    None => return false,
                    Some(&have) if have == need => break,
                    Some(&have) if have > need => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// Multiset difference `self - other`; caller must ensure containment.
    pub fn minus(&self, other: &Self) -> Self {
        let mut rest = self.elems.clone();
        for &x in &other.elems {
            let pos = rest.iter().position(|&y| y == x).expect("not a sub-multiset");
            rest.remove(pos);
        }
        Self { elems: rest }
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}}",
            self.elems
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

pub fn factorial(n: u128) -> u128 {
    (1..=n).product::<u128>().max(1)
}

/// All multisets of size `k` over indices `0..r`, in lexicographic order.
pub fn multisets(r: usize, k: usize) -> Vec<Multiset> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(r: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Multiset>) {
        if cur.len() == k {
            out.push(Multiset { elems: cur.clone() });
            return;
        }
        for i in start..r {
            cur.push(i);
            rec(r, k, i, cur, out);
            cur.pop();
        }
    }
    rec(r, k, 0, &mut cur, &mut out);
    out
}

/// Splits of a multiset `m` into an ordered pair (A, B) with |B| = b, as
/// sub-multisets. Returns each distinct split once.
pub fn splits(m: &Multiset, b: usize) -> Vec<(Multiset, Multiset)> {
    let subs = sub_multisets(m, b);
    subs.into_iter()
        .map(|bpart| {
            let apart = m.minus(&bpart);
            (apart, bpart)
        })
        .collect()
}

/// Distinct sub-multisets of size `k`.
pub fn sub_multisets(m: &Multiset, k: usize) -> Vec<Multiset> {
    // enumerate exponent-vector choices bounded by m's exponents
    let r = m.elems.iter().copied().max().map_or(0, |x| x + 1);
    let exp = m.exponents(r.max(1));
    let mut out = Vec::new();
    let mut cur = vec![0usize; exp.len()];
    fn rec(idx: usize, left: usize, exp: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Multiset>) {
        if idx == exp.len() {
            if left == 0 {
                out.push(Multiset::from_exponents(cur));
            }
            return;
        }
        let take_max = exp[idx].min(left);
        for t in 0..=take_max {
            cur[idx] = t;
            rec(idx + 1, left - t, exp, cur, out);
        }
        cur[idx] = 0;
    }
    rec(0, k, &exp, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_orderings() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(5, 4).len(), 70); // C(8,4)
        assert_eq!(Multiset::new(vec![0, 1]).orderings(), 2);
        assert_eq!(Multiset::new(vec![1, 1]).orderings(), 1);
        assert_eq!(Multiset::new(vec![0, 1, 1, 2]).orderings(), 12); // 4!/2!
    }

    #[test]
    fn multinomial_weights_sum() {
        // sum over multisets I of size m of m!/prod(I!) = r^m (all tuples)
        for (r, m) in [(3usize, 2usize), (4, 3), (2, 4)] {
            let total: u128 = multisets(r, m).iter().map(Multiset::orderings).sum();
            assert_eq!(total, (r as u128).pow(m as u32));
        }
    }

    #[test]
    fn split_reconstruction() {
        let m = Multiset::new(vec![0, 0, 1, 2]);
        for (a, b) in splits(&m, 2) {
            assert_eq!(a.union(&b), m);
        }
        // distinct sub-multisets of size 2 of {0,0,1,2}: {0,0},{0,1},{0,2},{1,2}
        assert_eq!(sub_multisets(&m, 2).len(), 4);
    }
}
