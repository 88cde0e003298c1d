//! Exact rational polyhedral cone membership and extremal rays.
//!
//! Membership `t in cone(g_1..g_m)` is phase-one simplex feasibility of
//! `G x = t, x >= 0` over big rationals with Bland's rule, so it terminates
//! and never rounds. Extremality first groups generators into rays by
//! positive proportionality, then tests each ray against the cone of the
//! others.

use crate::rat::Rat;
use num::{Signed, Zero};
use serde::Serialize;

/// Decides `exists x >= 0 with sum x_i g_i = target` exactly.
pub fn cone_contains(generators: &[Vec<Rat>], target: &[Rat]) -> bool {
    let m = target.len();
    let n = generators.len();
    debug_assert!(generators.iter().all(|g| g.len() == m));
    if target.iter().all(Rat::is_zero) {
        return true;
    }
    if n == 0 {
        return false;
    }

    // tableau rows: [A | I | b], basis starts on the artificial block
    let width = n + m + 1;
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(width);
        let flip = target[i].is_negative();
        for g in generators {
            row.push(if flip { -g[i].clone() } else { g[i].clone() });
        }
        for j in 0..m {
            row.push(if i == j { Rat::from_integer(1.into()) } else { Rat::zero() });
        }
        row.push(if flip { -target[i].clone() } else { target[i].clone() });
        tab.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // phase one: minimize the artificial sum. Costs are 1 on artificials and
    // 0 elsewhere, so z_j = sum of tab[i][j] over rows whose basic variable
    // is artificial; recomputed each round, which is cheap at these sizes.
    loop {
        let z = |j: usize, tab: &Vec<Vec<Rat>>, basis: &Vec<usize>| -> Rat {
            let mut s = Rat::zero();
            for i in 0..m {
                if basis[i] >= n {
                    s += &tab[i][j];
                }
            }
            s
        };
        // Bland: smallest entering column with reduced cost c_j - z_j < 0
        let mut entering = None;
        for j in 0..n + m {
            let cj = if j >= n { Rat::from_integer(1.into()) } else { Rat::zero() };
            if cj < z(j, &tab, &basis) {
                entering = Some(j);
                break;
            }
        }
        let Some(e) = entering else {
            return z(width - 1, &tab, &basis).is_zero();
        };
        // ratio test, Bland tie-break on the smallest basic variable
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if tab[i][e] > Rat::zero() {
                let ratio = &tab[i][width - 1] / &tab[i][e];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        // the entering column has z_e > 0, so some artificial-basic row is
        // positive there and the ratio test always finds a pivot
        let (li, _) = leave.expect("phase-one ratio test always has a pivot row");
        let piv = tab[li][e].clone();
        for v in tab[li].iter_mut() {
            *v = &*v / &piv;
        }
        for i in 0..m {
            if i != li && !tab[i][e].is_zero() {
                let f = tab[i][e].clone();
                for j in 0..width {
                    let v = &tab[i][j] - &f * &tab[li][j];
                    tab[i][j] = v;
                }
            }
        }
        basis[li] = e;
    }
}

/// A ray class: all generator names lying on one ray, plus its direction
/// scaled so the first nonzero coordinate is a unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ray {
    pub names: Vec<String>,
    #[serde(serialize_with = "crate::cone::serialize_vec_rat")]
    pub direction: Vec<Rat>,
}

pub(crate) fn serialize_vec_rat<S: serde::Serializer>(
    v: &Vec<Rat>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&crate::rat::rat_str(r))?;
    }
    seq.end()
}

fn canonical_direction(v: &[Rat]) -> Vec<Rat> {
    let lead = v.iter().find(|x| !x.is_zero());
    match lead {
        None => v.to_vec(),
        Some(l) => {
            let scale = l.abs();
            v.iter().map(|x| x / &scale).collect()
        }
    }
}

/// Groups named generators into rays (positive proportionality classes),
/// dropping zero vectors, and returns the extremal ones: rays that are not
/// nonnegative combinations of the remaining rays.
pub fn extremal_rays(generators: &[(String, Vec<Rat>)]) -> Vec<Ray> {
    let mut rays: Vec<Ray> = Vec::new();
    for (name, vec) in generators {
        if vec.iter().all(Rat::is_zero) {
            continue;
        }
        let dir = canonical_direction(vec);
        match rays.iter_mut().find(|r| r.direction == dir) {
            Some(r) => r.names.push(name.clone()),
            None => rays.push(Ray { names: vec![name.clone()], direction: dir }),
        }
    }
    let dirs: Vec<Vec<Rat>> = rays.iter().map(|r| r.direction.clone()).collect();
    let mut out = Vec::new();
    for (i, ray) in rays.iter().enumerate() {
        let others: Vec<Vec<Rat>> = dirs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, d)| d.clone())
            .collect();
        if !cone_contains(&others, &ray.direction) {
            out.push(ray.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn membership_basics() {
        let gens = vec![v(&[1, 0]), v(&[0, 1])];
        assert!(cone_contains(&gens, &v(&[3, 2])));
        assert!(!cone_contains(&gens, &v(&[-1, 2])));
        assert!(cone_contains(&gens, &v(&[0, 0])));
        assert!(!cone_contains(&[], &v(&[1])));
    }

    #[test]
    fn membership_needs_exact_combination() {
        // target off the span is rejected
        let gens = vec![v(&[1, 1, 0]), v(&[1, -1, 0])];
        assert!(cone_contains(&gens, &v(&[2, 0, 0])));
        assert!(!cone_contains(&gens, &v(&[2, 0, 1])));
        // nonnegative combination only
        assert!(!cone_contains(&gens, &v(&[0, 2, 0])));
    }

    #[test]
    fn extremal_rays_square_cone() {
        let gens = vec![
            ("e1".to_string(), v(&[1, 0])),
            ("e2".to_string(), v(&[0, 1])),
            ("mid".to_string(), v(&[1, 1])),
            ("e1-double".to_string(), v(&[2, 0])),
            ("zero".to_string(), v(&[0, 0])),
        ];
        let rays = extremal_rays(&gens);
        assert_eq!(rays.len(), 2);
        let names: Vec<Vec<String>> = rays.iter().map(|r| r.names.clone()).collect();
        assert!(names.contains(&vec!["e1".to_string(), "e1-double".to_string()]));
        assert!(names.contains(&vec!["e2".to_string()]));
    }

    #[test]
    fn single_ray_is_extremal() {
        let gens = vec![
            ("a".to_string(), v(&[1, 2])),
            ("b".to_string(), v(&[2, 4])),
        ];
        let rays = extremal_rays(&gens);
        assert_eq!(rays.len(), 1);
        assert_eq!(rays[0].names, vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn opposite_rays_are_not_merged() {
        let gens = vec![
            ("a".to_string(), v(&[1, 0])),
            ("neg-a".to_string(), v(&[-1, 0])),
        ];
        let rays = extremal_rays(&gens);
        assert_eq!(rays.len(), 2);
    }
}
