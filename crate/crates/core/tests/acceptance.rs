//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `--nocapture`). All comparisons are exact; there are
//! no tolerances anywhere.

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tspn::classify;
use tspn::curves;
use tspn::grassmann;
use tspn::params::{self, Params};
use tspn::picard::{self, DivisorClass, Involution, Space, SpanSymbol};
use tspn::rat::{rat, rat_frac, QMatrix, Rat};
use tspn::verify;

const SWEEP_N_MAX: usize = 12;
const SYMBOLIC_N_MAX: usize = 10;

fn report(criterion: usize, name: &str, pass: bool) {
    println!("criterion {} ({}): {}", criterion, name, if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {} ({}) failed", criterion, name);
}

/// Criterion 1: every catalog curve's derived anticanonical degree equals
/// the closed-form reference exactly, mismatches limited to the shipped
/// discrepancy list, full sweep n <= 12.
#[test]
fn criterion_1_reference_table_reproduction() {
    let mut pass = true;
    let mut logged = Vec::new();
    for pr in Params::sweep(SWEEP_N_MAX) {
        for d in curves::anticanonical_degrees(&pr, Space::T).unwrap() {
            if d.matches {
                continue;
            }
            match verify::covered_antik_mismatch(&d.id) {
                Some(id) => logged.push(format!(
                    "{} {}: derived {} reference {} (allowlisted: {})",
                    pr,
                    d.id,
                    d.derived,
                    d.reference.unwrap_or_default(),
                    id
                )),
                None => {
                    pass = false;
                    eprintln!("unlisted mismatch at {} curve {}", pr, d.id);
                }
            }
        }
    }
    for line in &logged {
        println!("  {}", line);
    }
    // the known line must actually show up somewhere in the sweep
    pass &= !logged.is_empty();
    report(1, "reference table reproduction", pass);
}

/// Criterion 2: nonnegative anticanonical degrees with the exact zero set,
/// ample exactly when the rank is at most two, and restricted degrees at
/// least one on the collineation side.
#[test]
fn criterion_2_positivity() {
    let mut pass = true;
    for pr in Params::sweep(SWEEP_N_MAX) {
        match curves::positivity_verdict(&pr) {
            Err(e) => {
                pass = false;
                eprintln!("{}: {}", pr, e);
            }
            Ok(rep) => {
                let ok = rep.t_nef
                    && rep.t_zero_set_matches
                    && rep.t_ample_iff_rank_le_2
                    && rep.m_ample;
                if !ok {
                    pass = false;
                    eprintln!("{}: {:?}", pr, rep);
                }
            }
        }
    }
    report(2, "positivity", pass);
}

/// Criterion 3: in the coincident cases the tabulated rows of the dependent
/// boundary divisor equal the pairing of its basis relation, exactly.
#[test]
fn criterion_3_degenerate_basis_consistency() {
    let mut pass = true;
    let mut exercised = 0usize;
    for pr in Params::sweep(SWEEP_N_MAX) {
        let cat = curves::catalog(&pr).unwrap();
        let r = pr.r;
        if pr.p == pr.n - pr.s {
            exercised += 1;
            let mut relation = DivisorClass::unit(Space::T, SpanSymbol::H);
            for i in 1..r {
                relation.set(SpanSymbol::DMinus(i), -rat((r + 1 - i) as i64));
            }
            for c in &cat {
                if curves::intersect(&relation, c).unwrap() != rat(c.d_minus[r - 1]) {
                    pass = false;
                    eprintln!("{} curve {}: D_r^- relation breaks", pr, c.id);
                }
            }
        }
        if pr.p == pr.s {
            exercised += 1;
            let mut relation = DivisorClass::unit(Space::T, SpanSymbol::H);
            for i in 1..r {
                relation.set(SpanSymbol::DPlus(i), -rat((r + 1 - i) as i64));
            }
            for c in &cat {
                if curves::intersect(&relation, c).unwrap() != rat(c.d_plus[r - 1]) {
                    pass = false;
                    eprintln!("{} curve {}: D_r^+ relation breaks", pr, c.id);
                }
            }
        }
    }
    pass &= exercised > 0;
    report(3, "degenerate-basis consistency", pass);
}

/// Criterion 4: computed extremal generator sets equal the reference case
/// lists verbatim after deduplication of coinciding divisors, full sweep;
/// mismatches limited to the shipped discrepancy list.
#[test]
fn criterion_4_extremal_rays() {
    let mut pass = true;
    let mut logged = Vec::new();
    for pr in Params::sweep(SWEEP_N_MAX) {
        for space in [Space::T, Space::M] {
            let cmp = curves::compare_extremal_rays(&pr, space).unwrap();
            if cmp.matches {
                continue;
            }
            match verify::covered_extremal_mismatch(&pr, space) {
                Some(id) => logged.push(format!(
                    "{} space {}: reference keeps {:?}, computed rays {:?} (allowlisted: {})",
                    pr,
                    space,
                    cmp.missing,
                    cmp.computed.iter().map(|r| r.names.clone()).collect::<Vec<_>>(),
                    id
                )),
                None => {
                    pass = false;
                    eprintln!(
                        "{} space {}: missing {:?} unexpected {:?}",
                        pr, space, cmp.missing, cmp.unexpected
                    );
                }
            }
        }
    }
    for line in &logged {
        println!("  {}", line);
    }
    report(4, "extremal rays", pass);
}

/// Criterion 5: symbolic pullback monomials reproduced up to a reported
/// sign on every main chart for n <= 10; the dual chart form exact; the
/// quadratic relations vanish on 100 random full-rank matrices.
#[test]
fn criterion_5_symbolic_charts() {
    let mut pass = true;

    for pr in Params::sweep(SYMBOLIC_N_MAX) {
        for l in 0..=pr.r {
            let rep = grassmann::verify_te(&pr, l).unwrap();
            if !rep.all_match {
                pass = false;
                eprintln!("{} layer {}: pullback monomial mismatch", pr, l);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    for _ in 0..50 {
        let n = rng.gen_range(2..=6usize);
        let p = rng.gen_range(1..n);
        let mut rows = Vec::new();
        for i in 0..p {
            let mut row: Vec<Rat> = vec![Rat::zero(); n];
            row[i] = rat(1);
            for j in p..n {
                row[j] = rat(rng.gen_range(-9..=9));
            }
            rows.push(row.clone());
        }
        let chart = QMatrix::from_rows(rows).unwrap();
        let dual = grassmann::dual_point(&chart).unwrap();
        // exact chart form (-A^T | I)
        let mut expected = QMatrix::zero(n - p, n);
        for i in 0..n - p {
            for j in 0..p {
                *expected.at_mut(i, j) = -chart.at(j, p + i).clone();
            }
            *expected.at_mut(i, p + i) = rat(1);
        }
        if dual != expected || !chart.mul(&dual.transpose()).is_zero() {
            pass = false;
            eprintln!("dual chart form failed");
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x9e1a71);
    let shapes: Vec<(usize, usize)> =
        (2..=6).flat_map(|n| (1..=3.min(n - 1)).map(move |p| (p, n))).collect();
    for trial in 0..100 {
        let (p, n) = shapes[trial % shapes.len()];
        let m = loop {
            let rows: Vec<Vec<i64>> =
                (0..p).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
            let m = QMatrix::from_i64(&rows);
            if m.rank() == p {
                break m;
            }
        };
        let v = grassmann::pluecker_vector(&m);
        let (ok, violations) = grassmann::pluecker_relations_check(&v).unwrap();
        if !ok {
            pass = false;
            eprintln!("trial {}: {} relation violations", trial, violations.len());
        }
    }

    report(5, "symbolic chart verification", pass);
}

/// Criterion 6: lattice involutions square to the identity, fix the
/// canonical class where defined, and the fractional self-dual map is
/// exact.
#[test]
fn criterion_6_lattice_automorphisms() {
    let mut pass = true;
    for pr in Params::sweep(SWEEP_N_MAX) {
        // T-side squares and fixed canonical classes
        for (cond, which) in
            [(pr.n == 2 * pr.s, Involution::UsdT), (pr.n == 2 * pr.p, Involution::DualT)]
        {
            if !cond {
                continue;
            }
            let auto = picard::pullback_auto(&pr, which).unwrap();
            let k = picard::canonical_class(&pr).unwrap();
            if auto.apply(&k) != k {
                pass = false;
                eprintln!("{}: canonical class moved", pr);
            }
            for sym in picard::spanning_symbols(&pr, Space::T) {
                let unit = DivisorClass::unit(Space::T, sym);
                if auto.apply(&auto.apply(&unit)) != unit {
                    pass = false;
                    eprintln!("{}: T-side square failed", pr);
                }
            }
        }
        // M-side squares on the reduced lattice
        for (cond, which) in
            [(pr.n == 2 * pr.s, Involution::UsdM), (pr.n == 2 * pr.p, Involution::DualM)]
        {
            if !cond {
                continue;
            }
            let auto = picard::pullback_auto(&pr, which).unwrap();
            let basis = picard::basis(&pr, Space::M).unwrap();
            for (i, sym) in basis.iter().enumerate() {
                let once = auto.apply(&DivisorClass::unit(Space::M, *sym));
                let twice = auto.apply(&picard::reduce(&pr, &once).unwrap());
                let coords = picard::reduced_coords(&pr, &twice).unwrap();
                for (j, c) in coords.iter().enumerate() {
                    let expect = if i == j { rat(1) } else { rat(0) };
                    if *c != expect {
                        pass = false;
                        eprintln!("{}: M-side square failed at {}", pr, sym);
                    }
                }
            }
        }
    }
    // fractional self-dual map on the square cases up to n = 12
    for p in 1..=6usize {
        let pr = Params::new(p, p, 2 * p).unwrap();
        let auto = picard::pullback_auto(&pr, Involution::UsdM).unwrap();
        let dual = picard::pullback_auto(&pr, Involution::DualM).unwrap();
        if auto != dual {
            pass = false;
            eprintln!("{}: reversal and duality disagree on the square", pr);
        }
        let d1 = auto.apply(&DivisorClass::unit(Space::M, SpanSymbol::DCheck(1)));
        for i in 2..=pr.r {
            let expect = -rat_frac((i - 1) as i64, pr.r as i64);
            if d1.coeff(&SpanSymbol::DCheck(i)) != expect {
                pass = false;
                eprintln!("{}: fractional image wrong at Dc{}", pr, i);
            }
        }
        if !d1.coeff(&SpanSymbol::HCheck).is_zero() {
            pass = false;
            eprintln!("{}: fractional image carries Hc", pr);
        }
    }
    report(6, "lattice automorphisms", pass);
}

/// Independent transcription of the T-side classification table.
fn expected_aut_t(pr: &Params) -> (String, Vec<String>, Option<String>) {
    let (norm, _) = classify::normalize(pr);
    let (s, p, n) = (norm.s, norm.p, norm.n);
    if (s, p, n) == (1, 1, 2) {
        return ("PGL_2".into(), vec![], Some("P^1".into()));
    }
    if p == 1 && s >= 2 && n == s + 1 {
        return (format!("Parabolic({})", n), vec![], None);
    }
    let connected = format!("(GL_{}×GL_{})/Z_{}", s, n - s, n);
    let mut discrete = Vec::new();
    if n == 2 * s && s != p {
        discrete.push("USD".to_string());
    }
    if n == 2 * p && s != p {
        discrete.push("DUAL".to_string());
    }
    if n == 2 * s && n == 2 * p && p >= 2 {
        discrete = vec!["USD".to_string(), "DUAL".to_string()];
    }
    (connected, discrete, None)
}

/// Independent transcription of the M-side classification table.
fn expected_aut_m(pr: &Params) -> (String, Vec<String>, Option<String>) {
    let (norm, _) = classify::normalize(pr);
    let (s, p, n) = (norm.s, norm.p, norm.n);
    if (s, p, n) == (1, 1, 2) {
        return ("trivial".into(), vec![], Some("point".into()));
    }
    if (s, p, n) == (2, 2, 4) {
        return ("PGL_4".into(), vec![], Some("P^3".into()));
    }
    if p == 1 && n == s + 1 {
        return (format!("PGL_{}", n - 1), vec![], Some(format!("P^{}", n - 2)));
    }
    let connected = format!("PGL_{}×PGL_{}", s, n - s);
    let model = if p == 1 { Some(format!("P^{}×P^{}", s - 1, n - s - 1)) } else { None };
    let mut discrete = Vec::new();
    if n == 2 * s && p != s {
        discrete.push("Usd".to_string());
    }
    if n == 2 * p && p != s {
        discrete.push("Dual".to_string());
    }
    if n == 2 * s && n == 2 * p && p >= 3 {
        discrete = vec!["Usd".to_string(), "Dual".to_string()];
    }
    (connected, discrete, model)
}

/// Criterion 7: classifier output equals the hand-transcribed table for
/// every triple with n <= 12, including the degenerate rows, and is
/// invariant under the normalization isomorphisms.
#[test]
fn criterion_7_classification() {
    let mut pass = true;
    for pr in Params::sweep_all(SWEEP_N_MAX) {
        let t = classify::aut_t(&pr).unwrap();
        let (conn, disc, model) = expected_aut_t(&pr);
        if t.connected != conn || t.discrete != disc || t.model != model {
            pass = false;
            eprintln!("{}: T-side got {:?}, want ({}, {:?}, {:?})", pr, t, conn, disc, model);
        }
        let m = classify::aut_m(&pr).unwrap();
        let (conn, disc, model) = expected_aut_m(&pr);
        if m.connected != conn || m.discrete != disc || m.model != model {
            pass = false;
            eprintln!("{}: M-side got {:?}, want ({}, {:?}, {:?})", pr, m, conn, disc, model);
        }
        // invariance under the two isomorphism images
        let usd = Params::new(pr.n - pr.s, pr.p, pr.n).unwrap();
        let dual = Params::new(pr.s, pr.n - pr.p, pr.n).unwrap();
        if classify::aut_t(&usd).unwrap() != t
            || classify::aut_t(&dual).unwrap() != t
            || classify::aut_m(&usd).unwrap() != m
            || classify::aut_m(&dual).unwrap() != m
        {
            pass = false;
            eprintln!("{}: classification moved under normalization", pr);
        }
    }
    report(7, "classification", pass);
}

/// Criterion 8: section counts match brute-force enumeration for n <= 10
/// and the orbit-closure counts match subset enumeration.
#[test]
fn criterion_8_counting() {
    let mut pass = true;
    for pr in Params::sweep(10) {
        for j in 0..=pr.r {
            let dim = picard::linear_series_dim(&pr, j).unwrap();
            let brute = params::restricted_index_set(&pr, j).unwrap().len() as u64;
            if dim != brute {
                pass = false;
                eprintln!("{} j={}: {} vs {}", pr, j, dim, brute);
            }
        }
    }
    let c1 = params::orbit_closures(&Params::new(2, 1, 3).unwrap()).len();
    let c2 = params::orbit_closures(&Params::new(3, 2, 5).unwrap()).len();
    if c1 != 3 || c2 != 8 {
        pass = false;
        eprintln!("orbit-closure counts {} and {}", c1, c2);
    }
    report(8, "counting", pass);
}
