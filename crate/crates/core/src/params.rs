//! Parameter triples, Pluecker index tuples, the two index involutions,
//! orbit-closure signatures and the fibration case report.

use crate::{Error, Result};
use serde::Serialize;
use std::fmt;

/// The parameter triple `(s, p, n)` together with the derived rank
/// `r = min{s, n-s, p, n-p}`.
///
/// `normalized` records whether `2p <= n <= 2s` holds; the divisor and curve
/// tables assume that normal form, the classifier reaches it explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Params {
    pub s: usize,
    pub p: usize,
    pub n: usize,
    pub r: usize,
    pub normalized: bool,
}

impl Params {
    pub fn new(s: usize, p: usize, n: usize) -> Result<Self> {
        if p == 0 || p >= n || s == 0 || s >= n {
            return Err(Error::InvalidParams {
                s,
                p,
                n,
                reason: "need 0 < p < n and 0 < s < n".into(),
            });
        }
        let r = [s, n - s, p, n - p].into_iter().min().unwrap();
        Ok(Params { s, p, n, r, normalized: 2 * p <= n && n <= 2 * s })
    }

    pub fn assert_normalized(&self) -> Result<()> {
        if self.normalized {
            Ok(())
        } else {
            Err(Error::NotNormalized(self.s, self.p, self.n))
        }
    }

    /// All normalized triples with `n <= n_max`, ordered by `(n, s, p)`.
    pub fn sweep(n_max: usize) -> Vec<Params> {
        let mut out = Vec::new();
        for n in 2..=n_max {
            for s in 1..n {
                for p in 1..n {
                    if 2 * p <= n && n <= 2 * s {
                        out.push(Params::new(s, p, n).unwrap());
                    }
                }
            }
        }
        out
    }

    /// All valid triples with `n <= n_max`, normalized or not.
    pub fn sweep_all(n_max: usize) -> Vec<Params> {
        let mut out = Vec::new();
        for n in 2..=n_max {
            for s in 1..n {
                for p in 1..n {
                    out.push(Params::new(s, p, n).unwrap());
                }
            }
        }
        out
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.s, self.p, self.n)
    }
}

/// The rank `r = min{s, n-s, p, n-p}`.
pub fn rank(s: usize, p: usize, n: usize) -> Result<usize> {
    Ok(Params::new(s, p, n)?.r)
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
    }
    acc as u64
}

/// A strictly decreasing `p`-tuple `(i_1 > i_2 > ... > i_p)` in `{1..n}`,
/// stored exactly in that order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidIndexTuple("empty tuple".into()));
        }
        if entries[0] < 1 || !entries.windows(2).all(|w| w[0] > w[1]) || entries[entries.len() - 1] < 1 {
            return Err(Error::InvalidIndexTuple(format!(
                "{:?} is not strictly decreasing with positive entries",
                entries
            )));
        }
        Ok(IndexTuple(entries))
    }

    /// Builds the tuple from an arbitrary set of distinct column labels.
    pub fn from_set(mut entries: Vec<usize>) -> Result<Self> {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entries in increasing order (the minor evaluation order).
    pub fn ascending(&self) -> Vec<usize> {
        let mut v = self.0.clone();
        v.reverse();
        v
    }

    /// Number of entries exceeding `s`.
    pub fn k_type(&self, s: usize) -> usize {
        self.0.iter().filter(|&&i| i > s).count()
    }

    pub fn max_entry(&self) -> usize {
        self.0[0]
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn decreasing_tuples(len: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    // all strictly decreasing `len`-tuples with entries in lo..=hi
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    if hi < lo || hi - lo + 1 < len {
        return out;
    }
    let mut stack = vec![(Vec::<usize>::new(), hi)];
    while let Some((prefix, max)) = stack.pop() {
        if prefix.len() == len {
            out.push(prefix);
            continue;
        }
        let need = len - prefix.len();
        for top in (lo + need - 1..=max).rev() {
            let mut next = prefix.clone();
            next.push(top);
            stack.push((next, top - 1));
        }
    }
    out.sort();
    out
}

/// The full index set of all decreasing `p`-tuples in `{1..n}`.
pub fn index_set(p: usize, n: usize) -> Vec<IndexTuple> {
    decreasing_tuples(p, 1, n).into_iter().map(IndexTuple).collect()
}

/// Tuples with exactly `k` entries in `{s+1..n}` and `p-k` in `{1..s}`.
/// Cardinality `C(s, p-k) * C(n-s, k)`.
pub fn restricted_index_set(params: &Params, k: usize) -> Result<Vec<IndexTuple>> {
    if k > params.r {
        return Err(Error::IndexOutOfRange(format!("k={} exceeds r={}", k, params.r)));
    }
    if k > params.p {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for top in decreasing_tuples(k, params.s + 1, params.n) {
        for bottom in decreasing_tuples(params.p - k, 1, params.s) {
            let mut entries = top.clone();
            entries.extend_from_slice(&bottom);
            out.push(IndexTuple(entries));
        }
    }
    out.sort();
    Ok(out)
}

/// Complement tuple and the signature of the shuffle
/// `(i_1 .. i_p, i*_1 .. i*_{n-p}) -> (1 .. n)`, both halves written in
/// decreasing order.
pub fn dual_index(tuple: &IndexTuple, n: usize) -> Result<(IndexTuple, i8)> {
    let p = tuple.len();
    if tuple.max_entry() > n {
        return Err(Error::InvalidIndexTuple(format!("{} exceeds n={}", tuple, n)));
    }
    let complement: Vec<usize> =
        (1..=n).rev().filter(|i| !tuple.entries().contains(i)).collect();
    debug_assert_eq!(complement.len(), n - p);
    let mut word: Vec<usize> = tuple.entries().to_vec();
    word.extend_from_slice(&complement);
    let mut inversions = 0usize;
    for a in 0..word.len() {
        for b in a + 1..word.len() {
            if word[a] > word[b] {
                inversions += 1;
            }
        }
    }
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Ok((IndexTuple(complement), sign))
}

/// Entrywise `i -> n+1-i`, re-sorted decreasing.
pub fn usd_index(tuple: &IndexTuple, n: usize) -> IndexTuple {
    let entries: Vec<usize> = tuple.entries().iter().map(|&i| n + 1 - i).collect();
    // reflecting a decreasing tuple yields an increasing tuple; reverse it
    let mut entries = entries;
    entries.reverse();
    IndexTuple(entries)
}

/// A pair of subsets of `{1..r}` with `min(I+) + min(I-) >= r+2`
/// (`min` of the empty set counts as plus infinity).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSignature {
    pub i_plus: Vec<usize>,
    pub i_minus: Vec<usize>,
}

/// Minimum of a subset with the explicit infinity sentinel for the empty set.
fn set_min(set: &[usize]) -> Option<usize> {
    set.first().copied()
}

pub fn orbit_closures(params: &Params) -> Vec<OrbitSignature> {
    let r = params.r;
    let subsets: Vec<Vec<usize>> = (0u32..1 << r)
        .map(|mask| (1..=r).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        .collect();
    let mut out = Vec::new();
    for plus in &subsets {
        for minus in &subsets {
            // min(empty) = +infinity always satisfies the bound
            let ok = match (set_min(plus), set_min(minus)) {
                (Some(a), Some(b)) => a + b >= r + 2,
                _ => true,
            };
            if ok {
                out.push(OrbitSignature { i_plus: plus.clone(), i_minus: minus.clone() });
            }
        }
    }
    out.sort_by(|a, b| (&a.i_plus, &a.i_minus).cmp(&(&b.i_plus, &b.i_minus)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fibration {
    /// Base Grassmannian `G(p', n')` as `(p', n')`.
    pub base: (usize, usize),
    /// Fiber parameters for the T-side space.
    pub fiber_t: (usize, usize, usize),
    /// Fiber parameters for the M-side space.
    pub fiber_m: (usize, usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationReport {
    /// "A", "B", "C", or "none".
    pub case: String,
    pub fibrations: Vec<Fibration>,
}

/// Which locally trivial fibration case applies and over which bases.
pub fn fibration_report(params: &Params) -> FibrationReport {
    let (s, p, n) = (params.s, params.p, params.n);
    let fib = |base: (usize, usize), f: (usize, usize, usize)| Fibration {
        base,
        fiber_t: f,
        fiber_m: f,
    };
    if p < n - s && p < s {
        FibrationReport {
            case: "A".into(),
            fibrations: vec![
                fib((p, s), (p, p, n - s + p)),
                fib((p, n - s), (p, p, s + p)),
            ],
        }
    } else if n - s < p && p < s {
        FibrationReport {
            case: "B".into(),
            fibrations: vec![
                fib((p, s), (n - s, n - s, n - s + p)),
                fib((s + p - n, s), (n - s, n - s, 2 * n - s - p)),
            ],
        }
    } else if p == n - s && p < s {
        FibrationReport { case: "C".into(), fibrations: vec![fib((p, s), (p, p, 2 * p))] }
    } else {
        FibrationReport { case: "none".into(), fibrations: vec![] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(3, 2, 5).unwrap(), 2);
        assert_eq!(rank(1, 1, 2).unwrap(), 1);
        assert_eq!(rank(4, 2, 7).unwrap(), 2);
        assert!(rank(0, 1, 3).is_err());
        assert!(rank(3, 3, 3).is_err());
        assert!(rank(3, 0, 5).is_err());
        assert!(rank(5, 2, 5).is_err());
    }

    #[test]
    fn restricted_sets_by_enumeration() {
        let params = Params::new(3, 2, 5).unwrap();
        assert_eq!(restricted_index_set(&params, 1).unwrap().len(), 6);
        let k0: Vec<String> =
            restricted_index_set(&params, 0).unwrap().iter().map(|t| t.to_string()).collect();
        assert_eq!(k0, vec!["(2,1)", "(3,1)", "(3,2)"]);
        // vanishing binomial leaves an empty list
        let tight = Params::new(1, 1, 2).unwrap();
        assert_eq!(restricted_index_set(&tight, 1).unwrap().len(), 1);
    }

    #[test]
    fn vandermonde_identity() {
        for params in Params::sweep_all(10) {
            let total: u64 = (0..=params.r)
                .map(|k| restricted_index_set(&params, k).unwrap().len() as u64)
                .sum();
            let all = index_set(params.p, params.n)
                .iter()
                .filter(|t| t.k_type(params.s) <= params.r)
                .count() as u64;
            assert_eq!(total, all, "params {}", params);
            if params.normalized {
                // every tuple has k-type at most r, so the sum telescopes to C(n,p)
                assert_eq!(total, binomial(params.n, params.p), "params {}", params);
            }
        }
    }

    #[test]
    fn restricted_cardinality_formula() {
        for params in Params::sweep_all(9) {
            for k in 0..=params.r {
                let count = restricted_index_set(&params, k).unwrap().len() as u64;
                let expect = if k > params.p {
                    0
                } else {
                    binomial(params.s, params.p - k) * binomial(params.n - params.s, k)
                };
                assert_eq!(count, expect, "params {} k={}", params, k);
            }
        }
    }

    #[test]
    fn dual_index_example_and_involution() {
        let i = IndexTuple::new(vec![2, 1]).unwrap();
        let (dual, sign) = dual_index(&i, 4).unwrap();
        assert_eq!(dual.to_string(), "(4,3)");
        // word (2,1,4,3) has two inversions
        assert_eq!(sign, 1);

        let single = IndexTuple::new(vec![1]).unwrap();
        let (d, s) = dual_index(&single, 2).unwrap();
        assert_eq!(d.to_string(), "(2)");
        assert_eq!(s, 1);

        for n in 2..=8 {
            for p in 1..n {
                for t in index_set(p, n) {
                    let (d, _) = dual_index(&t, n).unwrap();
                    let (dd, _) = dual_index(&d, n).unwrap();
                    assert_eq!(dd, t);
                }
            }
        }
    }

    #[test]
    fn dual_index_k_type_is_complementary() {
        // the complement of a k-type tuple has n-s-k entries above s
        for params in Params::sweep_all(8) {
            for k in 0..=params.r {
                for t in restricted_index_set(&params, k).unwrap() {
                    let (d, _) = dual_index(&t, params.n).unwrap();
                    assert_eq!(d.k_type(params.s), params.n - params.s - k);
                }
            }
        }
    }

    #[test]
    fn dual_sign_product_is_block_swap_sign() {
        // sign(I) * sign(I*) equals the sign of swapping the two blocks
        for n in 2..=8 {
            for p in 1..n {
                let swap_sign: i8 = if (p * (n - p)) % 2 == 0 { 1 } else { -1 };
                for t in index_set(p, n) {
                    let (d, s1) = dual_index(&t, n).unwrap();
                    let (_, s2) = dual_index(&d, n).unwrap();
                    assert_eq!(s1 * s2, swap_sign, "at {} (p={}, n={})", t, p, n);
                }
            }
        }
    }

    #[test]
    fn usd_index_examples_and_involution() {
        let i = IndexTuple::new(vec![5, 2]).unwrap();
        assert_eq!(usd_index(&i, 5).to_string(), "(4,1)");
        // k-type moves from k to p-k with s replaced by n-s
        assert_eq!(i.k_type(3), 1);
        assert_eq!(usd_index(&i, 5).k_type(5 - 3), 1);
        for n in 2..=8 {
            for p in 1..n {
                for t in index_set(p, n) {
                    assert_eq!(usd_index(&usd_index(&t, n), n), t);
                }
            }
        }
    }

    #[test]
    fn orbit_closure_counts() {
        let r1 = Params::new(2, 1, 3).unwrap();
        assert_eq!(orbit_closures(&r1).len(), 3);
        let r2 = Params::new(3, 2, 5).unwrap();
        assert_eq!(orbit_closures(&r2).len(), 8);
        // the empty pair is always admissible
        assert!(orbit_closures(&r2)
            .iter()
            .any(|s| s.i_plus.is_empty() && s.i_minus.is_empty()));
    }

    #[test]
    fn orbit_closures_against_independent_count() {
        // independent route: count pairs violating the bound directly
        for params in Params::sweep_all(7) {
            let r = params.r as u32;
            let mut bad = 0usize;
            for mp in 0u32..1 << r {
                for mm in 0u32..1 << r {
                    let min_of = |m: u32| (1..=r).find(|i| m & (1 << (i - 1)) != 0);
                    if let (Some(a), Some(b)) = (min_of(mp), min_of(mm)) {
                        if a + b < r + 2 {
                            bad += 1;
                        }
                    }
                }
            }
            let total = (1usize << r) * (1usize << r);
            assert_eq!(orbit_closures(&params).len(), total - bad);
        }
    }

    #[test]
    fn fibration_cases() {
        let a = fibration_report(&Params::new(4, 2, 7).unwrap());
        assert_eq!(a.case, "A");
        assert_eq!(a.fibrations[0].base, (2, 4));
        assert_eq!(a.fibrations[0].fiber_t, (2, 2, 5));
        assert_eq!(a.fibrations[1].base, (2, 3));
        assert_eq!(a.fibrations[1].fiber_t, (2, 2, 6));

        let c = fibration_report(&Params::new(4, 2, 6).unwrap());
        assert_eq!(c.case, "C");
        assert_eq!(c.fibrations[0].base, (2, 4));
        assert_eq!(c.fibrations[0].fiber_t, (2, 2, 4));

        let b = fibration_report(&Params::new(5, 4, 7).unwrap());
        assert_eq!(b.case, "B");

        let none = fibration_report(&Params::new(2, 2, 4).unwrap());
        assert_eq!(none.case, "none");
    }
}
