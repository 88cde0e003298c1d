//! Pluecker coordinates over exact rationals, the quadratic exchange
//! relations, the dual and column-reversal point maps, and the layered
//! ("mille crepes") coordinate charts with symbolic verification of the
//! pullback monomials of the hyperplane sections.
//!
//! Minor convention: `P_I` is the determinant of the columns named by `I`
//! taken in increasing column order, so the standard chart with identity
//! pivots has `P = +1` there. All sign-sensitive checks compare up to a
//! reported global sign.

use crate::params::{index_set, IndexTuple, Params};
use crate::poly::{PolyMatrix, Polynomial, Var};
use crate::rat::{QMatrix, Rat};
use crate::{Error, Result};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Projective vector of maximal minors, indexed by decreasing tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerVector {
    pub p: usize,
    pub n: usize,
    pub entries: BTreeMap<IndexTuple, Rat>,
    /// Set when every minor vanished (rank-deficient input).
    pub is_zero: bool,
}

/// All maximal minors of a `p x n` matrix, in increasing column order.
pub fn pluecker_vector(m: &QMatrix) -> PlueckerVector {
    let (p, n) = (m.nrows, m.ncols);
    let mut entries = BTreeMap::new();
    let mut is_zero = true;
    for (cols, minor) in m.maximal_minors() {
        if !minor.is_zero() {
            is_zero = false;
        }
        // columns come back 0-based ascending; store as decreasing 1-based
        let tuple =
            IndexTuple::from_set(cols.iter().map(|c| c + 1).collect()).expect("distinct columns");
        entries.insert(tuple, minor);
    }
    PlueckerVector { p, n, entries, is_zero }
}

/// One violated exchange relation: the `(p-1)`-set `a`, the `(p+1)`-set `b`
/// and the nonzero value of the alternating sum.
#[derive(Clone, Debug)]
pub struct RelationViolation {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub value: Rat,
}

impl PlueckerVector {
    fn get_set(&self, set: &[usize]) -> Option<&Rat> {
        let tuple = IndexTuple::from_set(set.to_vec()).ok()?;
        self.entries.get(&tuple)
    }
}

/// Evaluates every quadratic exchange relation
/// `sum_k (-1)^k P_{A + b_k} P_{B - b_k} = 0` over all `(p-1)`-subsets `A`
/// and `(p+1)`-subsets `B` of the columns. Terms with `b_k` already in `A`
/// drop out.
pub fn pluecker_relations_check(v: &PlueckerVector) -> Result<(bool, Vec<RelationViolation>)> {
    let (p, n) = (v.p, v.n);
    let expected = index_set(p, n);
    for t in &expected {
        if !v.entries.contains_key(t) {
            return Err(Error::IncompleteCoverage(format!("missing entry {}", t)));
        }
    }
    if p == 0 || p >= n {
        return Ok((true, Vec::new()));
    }
    let mut violations = Vec::new();
    let a_sets = subsets(n, p - 1);
    let b_sets = subsets(n, p + 1);
    for a in &a_sets {
        for b in &b_sets {
            let mut sum = Rat::zero();
            for (k, &bk) in b.iter().enumerate() {
                if a.contains(&bk) {
                    continue;
                }
                // the coordinate is alternating: appending b_k to the
                // ascending list A costs one sign per larger element of A
                let inversions = a.iter().filter(|&&x| x > bk).count();
                let mut a_ext = a.clone();
                a_ext.push(bk);
                let mut b_red = b.clone();
                b_red.remove(k);
                let term = v.get_set(&a_ext).unwrap() * v.get_set(&b_red).unwrap();
                if (k + inversions) % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            if !sum.is_zero() {
                violations.push(RelationViolation { a: a.clone(), b: b.clone(), value: sum });
            }
        }
    }
    Ok((violations.is_empty(), violations))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    // ascending k-subsets of 1..=n
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// An `(n-p) x n` matrix `m*` with `m (m*)^T = 0` and full rank.
/// On a chart `(I | A)` the result is exactly `(-A^T | I)`.
pub fn dual_point(m: &QMatrix) -> Result<QMatrix> {
    if m.rank() < m.nrows {
        return Err(Error::RankDeficient);
    }
    Ok(m.kernel_basis())
}

/// Column reversal `m * E` with `E` the antidiagonal unit matrix.
pub fn usd_point(m: &QMatrix) -> QMatrix {
    let mut out = QMatrix::zero(m.nrows, m.ncols);
    for i in 0..m.nrows {
        for j in 0..m.ncols {
            *out.at_mut(i, j) = m.at(i, m.ncols - 1 - j).clone();
        }
    }
    out
}

/// A chart index for layer `l`: pivot rows `i_1..i_r` and columns
/// `j_1..j_r`, subject to the four partial-permutation membership rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartIndex {
    pub l: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl ChartIndex {
    pub fn validate(&self, params: &Params) -> Result<()> {
        let (s, p, n, r) = (params.s, params.p, params.n, params.r);
        let l = self.l;
        if l > r {
            return Err(Error::InvalidChart(format!("layer {} exceeds rank {}", l, r)));
        }
        if self.rows.len() != r || self.cols.len() != r {
            return Err(Error::InvalidChart(format!(
                "need {} pivot rows and columns, got {} and {}",
                r,
                self.rows.len(),
                self.cols.len()
            )));
        }
        let distinct = |v: &[usize]| {
            let mut s = v.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len() == v.len()
        };
        let head_rows = &self.rows[..r - l];
        let tail_rows = &self.rows[r - l..];
        let head_cols = &self.cols[..r - l];
        let tail_cols = &self.cols[r - l..];
        if !head_rows.iter().all(|&i| l + 1 <= i && i <= p) || !distinct(head_rows) {
            return Err(Error::InvalidChart(format!(
                "rows {:?} are not a partial permutation of {}..{}",
                head_rows,
                l + 1,
                p
            )));
        }
        let mut sorted_tail = tail_rows.to_vec();
        sorted_tail.sort_unstable();
        if sorted_tail != (1..=l).collect::<Vec<_>>() {
            return Err(Error::InvalidChart(format!(
                "rows {:?} are not a permutation of 1..{}",
                tail_rows, l
            )));
        }
        if !head_cols.iter().all(|&j| s + l + 1 <= j && j <= n) || !distinct(head_cols) {
            return Err(Error::InvalidChart(format!(
                "columns {:?} are not a partial permutation of {}..{}",
                head_cols,
                s + l + 1,
                n
            )));
        }
        if !tail_cols.iter().all(|&j| 1 <= j && j <= s - p + l) || !distinct(tail_cols) {
            return Err(Error::InvalidChart(format!(
                "columns {:?} are not a partial permutation of 1..{}",
                tail_cols,
                s - p + l
            )));
        }
        Ok(())
    }
}

/// The `l`-th main chart: consecutive pivots
/// rows `(l+1..r, l..1)`, columns `(s+l+1..s+r, s-p+l..s-p+1)`.
pub fn main_chart(params: &Params, l: usize) -> Result<ChartIndex> {
    let (s, p, r) = (params.s, params.p, params.r);
    if l > r {
        return Err(Error::IndexOutOfRange(format!("layer {} exceeds rank {}", l, r)));
    }
    let mut rows: Vec<usize> = (l + 1..=r).collect();
    rows.extend((1..=l).rev());
    let mut cols: Vec<usize> = (s + l + 1..=s + r).collect();
    cols.extend((s - p + 1..=s - p + l).rev());
    debug_assert_eq!(rows.len(), r);
    let chart = ChartIndex { l, rows, cols };
    chart.validate(params)?;
    Ok(chart)
}

/// Builds the `p x n` chart matrix: identity pivots, free `x`/`y` blocks and
/// the two telescoping rank-one sums with stage variables `xi(k, . , .)`.
pub fn mille_crepes_matrix(params: &Params, chart: &ChartIndex) -> Result<PolyMatrix> {
    params.assert_normalized()?;
    chart.validate(params)?;
    let (s, p, n, r) = (params.s, params.p, params.n, params.r);
    let l = chart.l;
    let mut m = PolyMatrix::zero(p, n);

    // identity blocks: rows 1..l carry I_l at columns s+1..s+l,
    // rows l+1..p carry I_{p-l} at columns s-p+l+1..s
    for i in 1..=l {
        *m.at_mut(i - 1, s + i - 1) = Polynomial::one();
    }
    for i in l + 1..=p {
        *m.at_mut(i - 1, s - p + l + (i - l) - 1) = Polynomial::one();
    }
    // free coordinate blocks
    for i in 1..=l {
        for j in s + l + 1..=n {
            *m.at_mut(i - 1, j - 1) = Polynomial::var(Var::x(i, j));
        }
    }
    for i in l + 1..=p {
        for j in 1..=s - p + l {
            *m.at_mut(i - 1, j - 1) = Polynomial::var(Var::y(i, j));
        }
    }

    // first telescope: stages 1..r-l, pivot (i_k, j_k), rows l+1..p,
    // columns s+l+1..n, scaled by b_{i_1 j_1} ... b_{i_k j_k}
    let mut scale = Polynomial::one();
    for k in 1..=r - l {
        let (ik, jk) = (chart.rows[k - 1], chart.cols[k - 1]);
        scale = scale.mul(&Polynomial::var(Var::b(ik, jk)));
        let used_rows = &chart.rows[..k];
        let used_cols = &chart.cols[..k];
        for t in l + 1..=p {
            let xi_row = if t == ik {
                Polynomial::one()
            } else if used_rows[..k - 1].contains(&t) {
                continue;
            } else {
                Polynomial::var(Var::xi(k, t, jk))
            };
            for u in s + l + 1..=n {
                let xi_col = if u == jk {
                    Polynomial::one()
                } else if used_cols[..k - 1].contains(&u) {
                    continue;
                } else {
                    Polynomial::var(Var::xi(k, ik, u))
                };
                let term = scale.mul(&xi_row).mul(&xi_col);
                let cur = m.at(t - 1, u - 1).add(&term);
                *m.at_mut(t - 1, u - 1) = cur;
            }
        }
    }

    // second telescope: stages r-l+1..r, rows 1..l, columns 1..s-p+l,
    // scaled by a_{i_{r-l+1} j_{r-l+1}} ... a_{i_k j_k}
    let mut scale = Polynomial::one();
    for k in r - l + 1..=r {
        let (ik, jk) = (chart.rows[k - 1], chart.cols[k - 1]);
        scale = scale.mul(&Polynomial::var(Var::a(ik, jk)));
        let used_rows = &chart.rows[r - l..k];
        let used_cols = &chart.cols[r - l..k];
        for t in 1..=l {
            let xi_row = if t == ik {
                Polynomial::one()
            } else if used_rows[..used_rows.len() - 1].contains(&t) {
                continue;
            } else {
                Polynomial::var(Var::xi(k, t, jk))
            };
            for u in 1..=s - p + l {
                let xi_col = if u == jk {
                    Polynomial::one()
                } else if used_cols[..used_cols.len() - 1].contains(&u) {
                    continue;
                } else {
                    Polynomial::var(Var::xi(k, ik, u))
                };
                let term = scale.mul(&xi_row).mul(&xi_col);
                let cur = m.at(t - 1, u - 1).add(&term);
                *m.at_mut(t - 1, u - 1) = cur;
            }
        }
    }

    Ok(m)
}

/// The anchor tuple `I_k = (s+k, s+k-1, ..., s-p+k+1)`.
pub fn anchor_tuple(params: &Params, k: usize) -> IndexTuple {
    let (s, p) = (params.s, params.p);
    IndexTuple::new((s - p + k + 1..=s + k).rev().collect()).expect("valid anchor")
}

/// Symbolic minor of a polynomial matrix at the given tuple, evaluated on
/// increasing columns like the numeric case.
pub fn pluecker_polynomial(m: &PolyMatrix, tuple: &IndexTuple) -> Result<Polynomial> {
    if tuple.len() != m.nrows || tuple.max_entry() > m.ncols {
        return Err(Error::InvalidIndexTuple(format!(
            "{} does not index {} columns of a {}-row matrix",
            tuple, m.ncols, m.nrows
        )));
    }
    let cols: Vec<usize> = tuple.ascending().iter().map(|c| c - 1).collect();
    m.select_columns(&cols).determinant_with_bound(m.nrows.max(crate::poly::DETERMINANT_BOUND))
}

/// One verified pullback monomial on a main chart.
#[derive(Clone, Debug)]
pub struct TeItem {
    pub k: usize,
    /// Expected monomial from the closed form (sign-free).
    pub expected: Polynomial,
    /// Computed minor after normalizing the layer anchor to +1.
    pub computed: Polynomial,
    /// +1 or -1 when the computed minor equals the expected monomial up to
    /// sign; 0 on a genuine mismatch.
    pub sign: i8,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct TeReport {
    pub params: Params,
    pub l: usize,
    pub items: Vec<TeItem>,
    pub all_match: bool,
}

/// Closed-form monomial for the pullback of `P_{I_k}` on the `l`-th main
/// chart: 1 at `k = l`, a telescoping `a`-monomial below, a telescoping
/// `b`-monomial above.
pub fn te_expected(params: &Params, l: usize, k: usize) -> Polynomial {
    let (s, p) = (params.s, params.p);
    let mut acc = Polynomial::one();
    if k < l {
        for t in k + 1..=l {
            let v = Polynomial::var(Var::a(t, s - p + t));
            for _ in 0..(t - k) {
                acc = acc.mul(&v);
            }
        }
    } else if k > l {
        for t in l + 1..=k {
            let v = Polynomial::var(Var::b(t, s + t));
            for _ in 0..(k + 1 - t) {
                acc = acc.mul(&v);
            }
        }
    }
    acc
}

/// Computes the minors `P_{I_k}` of the `l`-th main chart matrix for all
/// `0 <= k <= r`, normalizes the anchor minor `P_{I_l}` to +1, and compares
/// each against the closed-form monomial up to a reported sign.
pub fn verify_te(params: &Params, l: usize) -> Result<TeReport> {
    params.assert_normalized()?;
    let r = params.r;
    if l > r {
        return Err(Error::IndexOutOfRange(format!("layer {} exceeds rank {}", l, r)));
    }
    let chart = main_chart(params, l)?;
    let m = mille_crepes_matrix(params, &chart)?;
    let anchor = pluecker_polynomial(&m, &anchor_tuple(params, l))?;
    let anchor_sign = match anchor.as_single_term() {
        Some((c, mono)) if mono.is_one() && c.magnitude().is_one() => {
            if c.is_negative() {
                -1i8
            } else {
                1i8
            }
        }
        _ => {
            return Err(Error::ConstraintViolation(format!(
                "anchor minor on layer {} is not a unit: {}",
                l, anchor
            )))
        }
    };
    let mut items = Vec::new();
    let mut all_match = true;
    for k in 0..=r {
        let mut minor = pluecker_polynomial(&m, &anchor_tuple(params, k))?;
        if anchor_sign < 0 {
            minor = minor.neg();
        }
        let expected = te_expected(params, l, k);
        let (matches, sign) = if minor == expected {
            (true, 1i8)
        } else if minor == expected.neg() {
            (true, -1i8)
        } else {
            (false, 0i8)
        };
        if !matches {
            all_match = false;
        }
        items.push(TeItem { k, expected, computed: minor, sign, matches });
    }
    Ok(TeReport { params: *params, l, items, all_match })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_frac};

    #[test]
    fn pluecker_vector_of_two_by_four() {
        let m = QMatrix::from_i64(&[vec![1, 0, 2, 3], vec![0, 1, 4, 5]]);
        let v = pluecker_vector(&m);
        let get = |a: usize, b: usize| {
            v.entries.get(&IndexTuple::new(vec![a, b]).unwrap()).unwrap().clone()
        };
        assert_eq!(get(2, 1), rat(1));
        assert_eq!(get(3, 1), rat(4));
        assert_eq!(get(3, 2), rat(-2));
        assert_eq!(get(4, 1), rat(5));
        assert_eq!(get(4, 2), rat(-3));
        assert_eq!(get(4, 3), rat(-2));
        assert!(!v.is_zero);
    }

    #[test]
    fn identity_block_has_unit_pivot() {
        let m = QMatrix::from_i64(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let v = pluecker_vector(&m);
        for (t, val) in &v.entries {
            if t.to_string() == "(2,1)" {
                assert_eq!(val, &rat(1));
            } else {
                assert_eq!(val, &rat(0), "entry {}", t);
            }
        }
    }

    #[test]
    fn rank_one_matrix_flagged_zero() {
        let m = QMatrix::from_i64(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8]]);
        let v = pluecker_vector(&m);
        assert!(v.is_zero);
        assert!(v.entries.values().all(|x| x.is_zero()));
    }

    #[test]
    fn relations_hold_and_detect_perturbation() {
        let m = QMatrix::from_i64(&[vec![1, 0, 2, 3], vec![0, 1, 4, 5]]);
        let mut v = pluecker_vector(&m);
        // the single G(2,4) relation: 1*(-2) - 4*(-3) + 5*(-2) = 0
        let (ok, violations) = pluecker_relations_check(&v).unwrap();
        assert!(ok, "violations: {:?}", violations);

        *v.entries.get_mut(&IndexTuple::new(vec![4, 3]).unwrap()).unwrap() = rat(7);
        let (ok, violations) = pluecker_relations_check(&v).unwrap();
        assert!(!ok);
        assert!(!violations.is_empty());

        v.entries.remove(&IndexTuple::new(vec![2, 1]).unwrap());
        assert!(matches!(
            pluecker_relations_check(&v),
            Err(Error::IncompleteCoverage(_))
        ));
    }

    #[test]
    fn dual_point_chart_form() {
        let m = QMatrix::from_i64(&[vec![1, 0, 2, 3], vec![0, 1, 4, 5]]);
        let d = dual_point(&m).unwrap();
        assert_eq!(d, QMatrix::from_i64(&[vec![-2, -4, 1, 0], vec![-3, -5, 0, 1]]));
        assert!(m.mul(&d.transpose()).is_zero());

        let fractional = QMatrix::from_rows(vec![
            vec![rat(1), rat(0), rat_frac(1, 2)],
            vec![rat(0), rat(1), rat_frac(2, 3)],
        ])
        .unwrap();
        let d = dual_point(&fractional).unwrap();
        assert_eq!(
            d,
            QMatrix::from_rows(vec![vec![rat_frac(-1, 2), rat_frac(-2, 3), rat(1)]]).unwrap()
        );

        let deficient = QMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert!(matches!(dual_point(&deficient), Err(Error::RankDeficient)));
    }

    #[test]
    fn dual_point_signed_complement_scalar() {
        // P_{I*}(m*) = sign(I) * lambda * P_I(m) with one lambda for all I
        let m = QMatrix::from_i64(&[vec![2, 1, 0, 3], vec![1, 1, 4, 5]]);
        let d = dual_point(&m).unwrap();
        let vm = pluecker_vector(&m);
        let vd = pluecker_vector(&d);
        let mut lambda: Option<Rat> = None;
        for (t, val) in &vm.entries {
            let (dual, sign) = crate::params::dual_index(t, 4).unwrap();
            let dual_val = vd.entries.get(&dual).unwrap();
            let signed = if sign < 0 { -val.clone() } else { val.clone() };
            match (&lambda, signed.is_zero()) {
                (_, true) => assert!(dual_val.is_zero()),
                (None, false) => lambda = Some(dual_val / &signed),
                (Some(l), false) => assert_eq!(dual_val.clone(), l * &signed, "at {}", t),
            }
        }
        assert!(lambda.is_some());
    }

    #[test]
    fn usd_point_involution_and_signs() {
        let m = QMatrix::from_i64(&[vec![1, 0]]);
        assert_eq!(usd_point(&m), QMatrix::from_i64(&[vec![0, 1]]));
        let m = QMatrix::from_i64(&[vec![2, 1, 0, 3], vec![1, 1, 4, 5]]);
        assert_eq!(usd_point(&usd_point(&m)), m);
        // reversal permutes entries by the index reflection with one global
        // sign (-1)^{p(p-1)/2}
        let vm = pluecker_vector(&m);
        let vu = pluecker_vector(&usd_point(&m));
        let p = 2usize;
        let global = if (p * (p - 1) / 2) % 2 == 0 { rat(1) } else { rat(-1) };
        for (t, val) in &vm.entries {
            let image = crate::params::usd_index(t, 4);
            assert_eq!(vu.entries.get(&image).unwrap().clone(), &global * val, "at {}", t);
        }
    }

    #[test]
    fn main_chart_membership() {
        let params = Params::new(3, 2, 5).unwrap();
        let tau0 = main_chart(&params, 0).unwrap();
        assert_eq!(tau0.rows, vec![1, 2]);
        assert_eq!(tau0.cols, vec![4, 5]);
        let tau2 = main_chart(&params, 2).unwrap();
        assert_eq!(tau2.rows, vec![2, 1]);
        assert_eq!(tau2.cols, vec![3, 2]);
        assert!(main_chart(&params, 3).is_err());

        let bad = ChartIndex { l: 0, rows: vec![1, 1], cols: vec![4, 5] };
        assert!(bad.validate(&params).is_err());
    }

    #[test]
    fn chart_matrix_pivots_and_blocks() {
        let params = Params::new(3, 2, 5).unwrap();
        let m = mille_crepes_matrix(&params, &main_chart(&params, 0).unwrap()).unwrap();
        // W block pivots at (1,4) and (2,5)
        assert_eq!(*m.at(0, 3), Polynomial::var(Var::b(1, 4)));
        let expect_25 = Polynomial::var(Var::b(1, 4))
            .mul(&Polynomial::var(Var::xi(1, 2, 4)))
            .mul(&Polynomial::var(Var::xi(1, 1, 5)))
            .add(&Polynomial::var(Var::b(1, 4)).mul(&Polynomial::var(Var::b(2, 5))));
        assert_eq!(*m.at(1, 4), expect_25);
        // identity block and free column
        assert_eq!(*m.at(0, 0), Polynomial::var(Var::y(1, 1)));
        assert_eq!(*m.at(0, 1), Polynomial::one());
        assert_eq!(*m.at(1, 2), Polynomial::one());

        // top layer: the b-telescope is empty, the a-telescope fills Z
        let top = mille_crepes_matrix(&params, &main_chart(&params, 2).unwrap()).unwrap();
        // pivots (2,3) and (1,2) carry their telescoping monomials
        assert_eq!(*top.at(1, 2), Polynomial::var(Var::a(2, 3)));
        let a_product = Polynomial::var(Var::a(2, 3)).mul(&Polynomial::var(Var::a(1, 2)));
        let xi_term = Polynomial::var(Var::a(2, 3))
            .mul(&Polynomial::var(Var::xi(1, 1, 3)))
            .mul(&Polynomial::var(Var::xi(1, 2, 2)));
        assert_eq!(*top.at(0, 1), a_product.add(&xi_term));
        // identity pivots moved to columns s+1..s+l
        assert_eq!(*top.at(0, 3), Polynomial::one());
        assert_eq!(*top.at(1, 4), Polynomial::one());
    }

    #[test]
    fn symbolic_minor_matches_numeric_after_evaluation() {
        use std::collections::BTreeMap;
        let params = Params::new(3, 2, 5).unwrap();
        let m = mille_crepes_matrix(&params, &main_chart(&params, 0).unwrap()).unwrap();
        let mut point = BTreeMap::new();
        for var in (0..m.nrows)
            .flat_map(|i| (0..m.ncols).map(move |j| (i, j)))
            .flat_map(|(i, j)| m.at(i, j).variables())
        {
            let salt = var.subscripts().iter().map(|&s| s as i64).sum::<i64>();
            point.insert(var, rat(salt % 3 - 1));
        }
        let numeric = m.evaluate(&point).unwrap();
        let vec = pluecker_vector(&numeric);
        for (tuple, value) in &vec.entries {
            let sym = pluecker_polynomial(&m, tuple).unwrap();
            assert_eq!(sym.evaluate(&point).unwrap(), *value, "at {}", tuple);
        }
        assert!(pluecker_polynomial(&m, &IndexTuple::new(vec![9, 1]).unwrap()).is_err());
    }

    #[test]
    fn te_monomials_on_small_example() {
        let params = Params::new(3, 2, 5).unwrap();
        let report = verify_te(&params, 0).unwrap();
        assert!(report.all_match);
        assert_eq!(report.items[0].expected, Polynomial::one());
        assert_eq!(report.items[1].expected, Polynomial::var(Var::b(1, 4)));

        let l2 = verify_te(&params, 2).unwrap();
        assert!(l2.all_match);
        // k = 0 expects a(1,2)^1 a(2,3)^2
        let a12 = Polynomial::var(Var::a(1, 2));
        let a23 = Polynomial::var(Var::a(2, 3));
        assert_eq!(l2.items[0].expected, a12.mul(&a23).mul(&a23));
    }
}
