//! Property tests for the exact algebra: ring axioms, alternating
//! determinants, the evaluation homomorphism, and projective invariance of
//! the minor vector.

use num::Zero;
use proptest::prelude::*;
use std::collections::BTreeMap;
use tspn::grassmann::pluecker_vector;
use tspn::poly::{PolyMatrix, Polynomial, Var};
use tspn::rat::{rat, QMatrix, Rat};

fn small_vars() -> Vec<Var> {
    vec![Var::x(1, 1), Var::x(1, 2), Var::y(2, 1)]
}

/// A random polynomial in three fixed variables with small coefficients.
fn arb_poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((0usize..3, 0u32..3, -4i64..=4), 0..5).prop_map(|terms| {
        let vars = small_vars();
        let mut acc = Polynomial::zero();
        for (vi, exp, coeff) in terms {
            let mut term = Polynomial::int(coeff);
            for _ in 0..exp {
                term = term.mul(&Polynomial::var(vars[vi]));
            }
            acc = acc.add(&term);
        }
        acc
    })
}

fn arb_matrix(side: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-6i64..=6, side), side)
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn determinant_is_alternating(rows in arb_matrix(4), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i != j);
        let as_poly = |rows: &
            Vec<Vec<i64>>| {
            PolyMatrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&x| Polynomial::int(x)).collect())
                    .collect(),
            )
            .unwrap()
        };
        let d = as_poly(&rows).determinant().unwrap();
        let mut swapped = rows.clone();
        swapped.swap(i, j);
        let ds = as_poly(&swapped).determinant().unwrap();
        prop_assert_eq!(d, ds.neg());
    }

    /// Evaluating the symbolic determinant at a rational point agrees with
    /// the numeric determinant of the evaluated matrix.
    #[test]
    fn determinant_commutes_with_evaluation(vals in arb_matrix(4), point in -3i64..=3) {
        let mut assignment: BTreeMap<Var, Rat> = BTreeMap::new();
        let mut sym_rows = Vec::new();
        let mut num_rows = Vec::new();
        for (i, row) in vals.iter().enumerate() {
            let mut sym_row = Vec::new();
            let mut num_row = Vec::new();
            for (j, &v) in row.iter().enumerate() {
                // mix constants and variables across the grid
                if (i + j) % 2 == 0 {
                    sym_row.push(Polynomial::int(v));
                    num_row.push(rat(v));
                } else {
                    let var = Var::a(i + 1, j + 1);
                    assignment.insert(var, rat(v.wrapping_add(point)));
                    sym_row.push(Polynomial::var(var));
                    num_row.push(rat(v.wrapping_add(point)));
                }
            }
            sym_rows.push(sym_row);
            num_rows.push(num_row);
        }
        let sym = PolyMatrix::from_rows(sym_rows).unwrap().determinant().unwrap();
        let lhs = sym.evaluate(&assignment).unwrap();
        let rhs = QMatrix::from_rows(num_rows).unwrap().det().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Left multiplication by an invertible matrix rescales the whole minor
    /// vector by its determinant.
    #[test]
    fn pluecker_projective_invariance(rows in arb_matrix(2), g in arb_matrix(2)) {
        let m = {
            // widen to 2x4 with an identity block so the rank is full
            let wide: Vec<Vec<i64>> = rows
                .iter()
                .take(2)
                .enumerate()
                .map(|(i, r)| {
                    let mut v = vec![0; 4];
                    v[i] = 1;
                    v[2] = r[0];
                    v[3] = r[1];
                    v
                })
                .collect();
            QMatrix::from_i64(&wide)
        };
        let g2: Vec<Vec<i64>> = g.iter().take(2).map(|r| r[..2].to_vec()).collect();
        let gm = QMatrix::from_i64(&g2);
        let det = gm.det().unwrap();
        prop_assume!(!det.is_zero());
        let left = gm.mul(&m);
        let v = pluecker_vector(&m);
        let lv = pluecker_vector(&left);
        for (t, val) in &v.entries {
            prop_assert_eq!(lv.entries.get(t).unwrap().clone(), &det * val);
        }
    }
}
