//! Automorphism-group classification for both spaces, as a faithful
//! transcription of the case tables, with explicit normalization
//! bookkeeping. Degenerate rows take precedence over the general ones.

use crate::params::Params;
use crate::Result;
use serde::Serialize;

/// One normalization step applied to reach `2p <= n <= 2s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Iso {
    /// `s -> n - s` (column reversal).
    Usd,
    /// `p -> n - p` (Grassmann duality).
    Dual,
}

/// Applies duality and/or reversal so that `2p <= n <= 2s`; returns the
/// normalized triple and the trace of applied isomorphisms.
pub fn normalize(params: &Params) -> (Params, Vec<Iso>) {
    let mut trace = Vec::new();
    let (mut s, mut p, n) = (params.s, params.p, params.n);
    if 2 * p > n {
        p = n - p;
        trace.push(Iso::Dual);
    }
    if n > 2 * s {
        s = n - s;
        trace.push(Iso::Usd);
    }
    (Params::new(s, p, n).expect("normalization preserves validity"), trace)
}

/// Symbolic description of an automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDescriptor {
    /// Connected component, e.g. `(GL_3×GL_2)/Z_5` or `PGL_4`.
    pub connected: String,
    /// Discrete factors, nonempty only in the exceptional rows.
    pub discrete: Vec<String>,
    /// Case label of the classification row.
    pub case: String,
    /// Isomorphic model when one is known, e.g. `P^3`.
    pub model: Option<String>,
    /// Set when the row comes from the finer sub-case list rather than the
    /// top-level classification table.
    pub refined: bool,
}

fn generic_t(s: usize, n: usize) -> String {
    format!("(GL_{}×GL_{})/Z_{}", s, n - s, n)
}

fn generic_m(s: usize, n: usize) -> String {
    format!("PGL_{}×PGL_{}", s, n - s)
}

/// Automorphism group of the T-side space.
pub fn aut_t(params: &Params) -> Result<GroupDescriptor> {
    let (pr, _) = normalize(params);
    let (s, p, n) = (pr.s, pr.p, pr.n);
    let d = |connected: String, discrete: Vec<&str>, case: &str, model: Option<String>, fp: bool| {
        GroupDescriptor {
            connected,
            discrete: discrete.into_iter().map(String::from).collect(),
            case: case.into(),
            model,
            refined: fp,
        }
    };
    Ok(if (s, p, n) == (1, 1, 2) {
        d("PGL_2".into(), vec![], "degenerate-line", Some("P^1".into()), false)
    } else if p == 1 && n == s + 1 {
        // the four mutually isomorphic rank-one degenerations
        d(format!("Parabolic({})", n), vec![], "degenerate-parabolic", None, false)
    } else if n == 2 * s && n == 2 * p {
        d(generic_t(s, n), vec!["USD", "DUAL"], "usd-dual", None, false)
    } else if n == 2 * s {
        d(generic_t(s, n), vec!["USD"], "usd", None, false)
    } else if n == 2 * p {
        d(generic_t(s, n), vec!["DUAL"], "dual", None, false)
    } else {
        d(generic_t(s, n), vec![], "generic", None, false)
    })
}

/// Automorphism group of the M-side space.
pub fn aut_m(params: &Params) -> Result<GroupDescriptor> {
    let (pr, _) = normalize(params);
    let (s, p, n) = (pr.s, pr.p, pr.n);
    let d = |connected: String, discrete: Vec<&str>, case: &str, model: Option<String>, fp: bool| {
        GroupDescriptor {
            connected,
            discrete: discrete.into_iter().map(String::from).collect(),
            case: case.into(),
            model,
            refined: fp,
        }
    };
    Ok(if (s, p, n) == (1, 1, 2) {
        d("trivial".into(), vec![], "degenerate-point", Some("point".into()), false)
    } else if (s, p, n) == (2, 2, 4) {
        d("PGL_4".into(), vec![], "degenerate-P3", Some("P^3".into()), false)
    } else if p == 1 && n == s + 1 {
        // a projective space of dimension n-2
        d(
            format!("PGL_{}", n - 1),
            vec![],
            "projective-space",
            Some(format!("P^{}", n - 2)),
            true,
        )
    } else if p == 1 && n == 2 * s {
        d(
            generic_m(s, n),
            vec!["Usd"],
            "product-swap",
            Some(format!("P^{}×P^{}", s - 1, n - s - 1)),
            true,
        )
    } else if p == 1 {
        d(
            generic_m(s, n),
            vec![],
            "product",
            Some(format!("P^{}×P^{}", s - 1, n - s - 1)),
            true,
        )
    } else if n == 2 * s && n == 2 * p {
        // p >= 3 here: (2,2,4) was caught above, (1,1,2) too
        d(generic_m(s, n), vec!["Usd", "Dual"], "usd-dual", None, false)
    } else if n == 2 * s {
        d(generic_m(s, n), vec!["Usd"], "usd", None, false)
    } else if n == 2 * p {
        d(generic_m(s, n), vec!["Dual"], "dual", None, false)
    } else {
        d(generic_m(s, n), vec![], "generic", None, false)
    })
}
