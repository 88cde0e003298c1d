//! The batched verification sweep behind the `verify` subcommand.
//!
//! Each check runs over every normalized triple up to the configured bound
//! and reports pass/fail with details. Known reference-data discrepancies
//! (shipped in `known_discrepancies.json`) are reported but non-fatal
//! unless strict mode is on.

use crate::classify;
use crate::curves::{self, CurveId};
use crate::grassmann;
use crate::params::{self, Params};
use crate::picard::{self, DivisorClass, Involution, Space, SpanSymbol};
use crate::rat::{rat, QMatrix, Rat};
use crate::{Error, Result};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Sweep configuration; `n_max` is clamped to `2..=16` to guard the
/// symbolic checks against exponential blowup.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SweepConfig {
    pub n_max: usize,
    pub normalize_only: bool,
    pub symbolic_n_max: usize,
    /// Treat known reference discrepancies as fatal.
    pub strict: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { n_max: 12, normalize_only: true, symbolic_n_max: 10, strict: false }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_max < 2 || self.n_max > 16 {
            return Err(Error::ConstraintViolation(format!(
                "n_max {} outside 2..=16",
                self.n_max
            )));
        }
        if self.symbolic_n_max < 2 || self.symbolic_n_max > 16 {
            return Err(Error::ConstraintViolation(format!(
                "symbolic_n_max {} outside 2..=16",
                self.symbolic_n_max
            )));
        }
        Ok(())
    }
}

/// One shipped known-discrepancy entry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KnownDiscrepancy {
    pub id: String,
    pub check: String,
    pub note: String,
}

/// The shipped allowlist separating reference-data typos from bugs.
pub fn known_discrepancies() -> Vec<KnownDiscrepancy> {
    serde_json::from_str(include_str!("known_discrepancies.json"))
        .expect("shipped discrepancy list parses")
}

/// Does the shipped entry cover an anticanonical mismatch on this curve?
pub fn covered_antik_mismatch(id: &CurveId) -> Option<&'static str> {
    match id {
        CurveId::Zeta { l: 0, .. } => Some("zeta0-antik-reference"),
        _ => None,
    }
}

/// Does the shipped entry cover an extremal-ray mismatch here?
pub fn covered_extremal_mismatch(params: &Params, space: Space) -> Option<&'static str> {
    if space == Space::T && params.r == 1 && params.p == params.n - params.s && params.p < params.s
    {
        Some("rank-one-extremal-reference")
    } else {
        None
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Failures explained entirely by shipped discrepancies.
    pub known_discrepancies: Vec<String>,
    pub details: Vec<String>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            known_discrepancies: Vec::new(),
            details: Vec::new(),
        }
    }

    fn fail(&mut self, detail: String) {
        self.passed = false;
        self.details.push(detail);
    }

    fn known(&mut self, id: &str, detail: String) {
        if !self.known_discrepancies.iter().any(|k| k == id) {
            self.known_discrepancies.push(id.to_string());
        }
        self.details.push(format!("known[{}]: {}", id, detail));
    }

    fn note(&mut self, detail: String) {
        self.details.push(detail);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub config: SweepConfig,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

/// Runs the full battery. The report passes when every check passes, where
/// allowlisted discrepancies only count as failures in strict mode.
///
/// The divisor and curve sweeps run over normalized triples; with
/// `normalize_only` off, every valid triple is first normalized and then
/// included, which exercises the normalization path at no extra coverage.
pub fn run(config: &SweepConfig) -> Result<VerifyReport> {
    config.validate()?;
    let sweep = if config.normalize_only {
        Params::sweep(config.n_max)
    } else {
        let mut all: Vec<Params> = Params::sweep_all(config.n_max)
            .iter()
            .map(|pr| crate::classify::normalize(pr).0)
            .collect();
        all.sort_by_key(|pr| (pr.n, pr.s, pr.p));
        all.dedup();
        all
    };
    let checks = vec![
        check_relation_consistency(&sweep)?,
        check_antik_crosscheck(&sweep, config.strict)?,
        check_positivity(&sweep)?,
        check_extremal_rays(&sweep, config.strict)?,
        check_pluecker_relations()?,
        check_dual_usd()?,
        check_te_sweep(config.symbolic_n_max)?,
        check_involution_laws(&sweep)?,
        check_classifier(config.n_max)?,
    ];
    let pass = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { config: *config, checks, pass })
}

/// Tabulated rows of the coincident boundary divisor must equal the pairing
/// of its basis relation with every curve.
fn check_relation_consistency(sweep: &[Params]) -> Result<CheckResult> {
    let mut out = CheckResult::new("relation-consistency");
    for pr in sweep {
        let cat = curves::catalog(pr)?;
        let r = pr.r;
        if pr.p == pr.n - pr.s {
            let mut relation = DivisorClass::unit(Space::T, SpanSymbol::H);
            for i in 1..r {
                relation.set(SpanSymbol::DMinus(i), -rat((r + 1 - i) as i64));
            }
            for c in &cat {
                let paired = curves::intersect(&relation, c)?;
                if paired != rat(c.d_minus[r - 1]) {
                    out.fail(format!("{} curve {}: D_r^- row violates its relation", pr, c.id));
                }
            }
        }
        if pr.p == pr.s {
            let mut relation = DivisorClass::unit(Space::T, SpanSymbol::H);
            for i in 1..r {
                relation.set(SpanSymbol::DPlus(i), -rat((r + 1 - i) as i64));
            }
            for c in &cat {
                let paired = curves::intersect(&relation, c)?;
                if paired != rat(c.d_plus[r - 1]) {
                    out.fail(format!("{} curve {}: D_r^+ row violates its relation", pr, c.id));
                }
            }
        }
    }
    Ok(out)
}

/// Derived anticanonical degrees against the closed-form reference lines.
fn check_antik_crosscheck(sweep: &[Params], strict: bool) -> Result<CheckResult> {
    let mut out = CheckResult::new("antik-crosscheck");
    for pr in sweep {
        for d in curves::anticanonical_degrees(pr, Space::T)? {
            if d.matches {
                continue;
            }
            let detail = format!(
                "{} curve {}: derived {} vs reference {}",
                pr,
                d.id,
                d.derived,
                d.reference.map(|x| x.to_string()).unwrap_or_default()
            );
            match covered_antik_mismatch(&d.id) {
                Some(id) if !strict => out.known(id, detail),
                _ => out.fail(detail),
            }
        }
    }
    Ok(out)
}

/// Nonnegativity, the exact zero set, the rank-two ample criterion, and the
/// restricted positivity on the collineation side.
fn check_positivity(sweep: &[Params]) -> Result<CheckResult> {
    let mut out = CheckResult::new("positivity");
    for pr in sweep {
        match curves::positivity_verdict(pr) {
            Err(e) => out.fail(format!("{}: {}", pr, e)),
            Ok(report) => {
                if !report.t_nef {
                    out.fail(format!("{}: negative anticanonical degree", pr));
                }
                if !report.t_zero_set_matches {
                    out.fail(format!("{}: zero curves {:?}", pr, report.t_zero_curves));
                }
                if !report.t_ample_iff_rank_le_2 {
                    out.fail(format!("{}: ample verdict disagrees with rank", pr));
                }
                if !report.m_ample {
                    out.fail(format!(
                        "{}: restricted degree below one ({})",
                        pr, report.m_min_degree
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn check_extremal_rays(sweep: &[Params], strict: bool) -> Result<CheckResult> {
    let mut out = CheckResult::new("extremal-rays");
    for pr in sweep {
        for space in [Space::T, Space::M] {
            let cmp = curves::compare_extremal_rays(pr, space)?;
            if cmp.expected.is_none() {
                out.note(format!("{} space {}: no reference list, computed only", pr, space));
                continue;
            }
            if cmp.matches {
                continue;
            }
            let detail = format!(
                "{} space {}: missing {:?}, unexpected {:?}",
                pr,
                space,
                cmp.missing,
                cmp.unexpected.iter().map(|r| r.names.clone()).collect::<Vec<_>>()
            );
            match covered_extremal_mismatch(pr, space) {
                Some(id) if !strict => out.known(id, detail),
                _ => out.fail(detail),
            }
        }
    }
    Ok(out)
}

/// Deterministic full-rank random matrix with small integer entries.
fn random_full_rank(rng: &mut ChaCha8Rng, p: usize, n: usize) -> QMatrix {
    loop {
        let rows: Vec<Vec<i64>> =
            (0..p).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let m = QMatrix::from_i64(&rows);
        if m.rank() == p {
            return m;
        }
    }
}

/// Quadratic exchange relations on random full-rank matrices, plus a
/// perturbation that must be caught.
fn check_pluecker_relations() -> Result<CheckResult> {
    let mut out = CheckResult::new("pluecker-relations");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let shapes: Vec<(usize, usize)> = (2..=6)
        .flat_map(|n| (1..=3.min(n - 1)).map(move |p| (p, n)))
        .collect();
    for trial in 0..100 {
        let (p, n) = shapes[trial % shapes.len()];
        let m = random_full_rank(&mut rng, p, n);
        let v = grassmann::pluecker_vector(&m);
        let (ok, violations) = grassmann::pluecker_relations_check(&v)?;
        if !ok {
            out.fail(format!(
                "trial {} shape {}x{}: {} violated relations",
                trial,
                p,
                n,
                violations.len()
            ));
        }
    }
    // a deliberately perturbed vector must fail
    let m = QMatrix::from_i64(&[vec![1, 0, 2, 3], vec![0, 1, 4, 5]]);
    let mut v = grassmann::pluecker_vector(&m);
    let key = crate::params::IndexTuple::new(vec![4, 3]).unwrap();
    let bumped = v.entries.get(&key).unwrap() + rat(1);
    v.entries.insert(key, bumped);
    let (ok, _) = grassmann::pluecker_relations_check(&v)?;
    if ok {
        out.fail("perturbed vector passed the relation check".into());
    }
    Ok(out)
}

/// Chart form of the dual map, the kernel property, the signed-complement
/// scalar, and the reversal sign pattern.
fn check_dual_usd() -> Result<CheckResult> {
    let mut out = CheckResult::new("dual-usd");
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0a1);
    for trial in 0..40 {
        let n = rng.gen_range(2..=6);
        let p = rng.gen_range(1..n);
        let m = random_full_rank(&mut rng, p, n);

        // kernel property and rank
        let d = grassmann::dual_point(&m)?;
        if !m.mul(&d.transpose()).is_zero() || d.rank() != n - p {
            out.fail(format!("trial {}: kernel property failed", trial));
            continue;
        }

        // chart form (dtrans): (I | A) maps to (-A^T | I)
        let mut chart_rows = Vec::new();
        for i in 0..p {
            let mut row = vec![Rat::zero(); n];
            row[i] = rat(1);
            for j in p..n {
                row[j] = m.at(i, j).clone();
            }
            chart_rows.push(row);
        }
        let chart = QMatrix::from_rows(chart_rows).unwrap();
        let chart_dual = grassmann::dual_point(&chart)?;
        let mut expected = QMatrix::zero(n - p, n);
        for i in 0..n - p {
            for j in 0..p {
                *expected.at_mut(i, j) = -chart.at(j, p + i).clone();
            }
            *expected.at_mut(i, p + i) = rat(1);
        }
        if chart_dual != expected {
            out.fail(format!("trial {}: chart dual deviates from (-A^T | I)", trial));
        }

        // signed-complement relation with a single scalar
        let vm = grassmann::pluecker_vector(&m);
        let vd = grassmann::pluecker_vector(&d);
        let mut lambda: Option<Rat> = None;
        for (t, val) in &vm.entries {
            let (dual_t, sign) = params::dual_index(t, n)?;
            let image = vd.entries.get(&dual_t).unwrap();
            let signed = if sign < 0 { -val.clone() } else { val.clone() };
            if signed.is_zero() {
                if !image.is_zero() {
                    out.fail(format!("trial {}: zero minor with nonzero dual", trial));
                }
                continue;
            }
            let ratio = image / &signed;
            match &lambda {
                None => lambda = Some(ratio),
                Some(l) => {
                    if *l != ratio {
                        out.fail(format!("trial {}: complement scalar not global", trial));
                        break;
                    }
                }
            }
        }

        // reversal: involution plus the single global sign
        let u = grassmann::usd_point(&m);
        if grassmann::usd_point(&u) != m {
            out.fail(format!("trial {}: reversal is not involutive", trial));
        }
        let vu = grassmann::pluecker_vector(&u);
        let global = if (p * (p - 1) / 2) % 2 == 0 { rat(1) } else { rat(-1) };
        for (t, val) in &vm.entries {
            let image = params::usd_index(t, n);
            if vu.entries.get(&image).unwrap() != &(&global * val) {
                out.fail(format!("trial {}: reversal sign pattern failed at {}", trial, t));
                break;
            }
        }
    }
    Ok(out)
}

/// Symbolic pullback monomials on every main chart across the sweep.
fn check_te_sweep(symbolic_n_max: usize) -> Result<CheckResult> {
    let mut out = CheckResult::new("te-symbolic");
    let mut sign_flips = 0usize;
    let mut total = 0usize;
    for pr in Params::sweep(symbolic_n_max) {
        for l in 0..=pr.r {
            let report = grassmann::verify_te(&pr, l)?;
            for item in &report.items {
                total += 1;
                if !item.matches {
                    out.fail(format!(
                        "{} layer {} k={}: expected {} got {}",
                        pr, l, item.k, item.expected, item.computed
                    ));
                } else if item.sign < 0 {
                    sign_flips += 1;
                }
            }
        }
    }
    out.note(format!("{} monomials verified, {} with flipped sign", total, sign_flips));
    Ok(out)
}

/// Index involutions, lattice involutions, fixed canonical classes and the
/// counting identities.
fn check_involution_laws(sweep: &[Params]) -> Result<CheckResult> {
    let mut out = CheckResult::new("involution-laws");
    // index involutions, exhaustive on small shapes
    for n in 2..=8 {
        for p in 1..n {
            for t in params::index_set(p, n) {
                let (d, _) = params::dual_index(&t, n)?;
                let (dd, _) = params::dual_index(&d, n)?;
                if dd != t {
                    out.fail(format!("dual index not involutive at {} (n={})", t, n));
                }
                if params::usd_index(&params::usd_index(&t, n), n) != t {
                    out.fail(format!("reversal index not involutive at {} (n={})", t, n));
                }
            }
        }
    }
    // orbit counts
    let c1 = params::orbit_closures(&Params::new(2, 1, 3).unwrap()).len();
    let c2 = params::orbit_closures(&Params::new(3, 2, 5).unwrap()).len();
    if c1 != 3 || c2 != 8 {
        out.fail(format!("orbit-closure counts {} and {} (want 3 and 8)", c1, c2));
    }
    // counting: h^0 against brute-force enumeration
    for pr in Params::sweep(10) {
        for j in 0..=pr.r {
            let dim = picard::linear_series_dim(&pr, j)?;
            let count = params::restricted_index_set(&pr, j)?.len() as u64;
            if dim != count {
                out.fail(format!("{} j={}: h^0 {} vs enumeration {}", pr, j, dim, count));
            }
        }
    }
    // lattice involutions square to the identity and fix the canonical class
    for pr in sweep {
        for (cond, which) in [
            (pr.n == 2 * pr.s, Involution::UsdT),
            (pr.n == 2 * pr.p, Involution::DualT),
        ] {
            if !cond {
                continue;
            }
            let auto = picard::pullback_auto(pr, which)?;
            let k = picard::canonical_class(pr)?;
            if auto.apply(&k) != k {
                out.fail(format!("{}: involution does not fix the canonical class", pr));
            }
            for sym in picard::spanning_symbols(pr, Space::T) {
                let unit = DivisorClass::unit(Space::T, sym);
                if auto.apply(&auto.apply(&unit)) != unit {
                    out.fail(format!("{}: T-side involution square failed at {}", pr, sym));
                }
            }
        }
        for (cond, which) in [
            (pr.n == 2 * pr.s, Involution::UsdM),
            (pr.n == 2 * pr.p, Involution::DualM),
        ] {
            if !cond {
                continue;
            }
            let auto = picard::pullback_auto(pr, which)?;
            let basis = picard::basis(pr, Space::M)?;
            for (i, sym) in basis.iter().enumerate() {
                let once = auto.apply(&DivisorClass::unit(Space::M, *sym));
                let twice = auto.apply(&picard::reduce(pr, &once)?);
                let coords = picard::reduced_coords(pr, &twice)?;
                for (j, c) in coords.iter().enumerate() {
                    let expect = if i == j { rat(1) } else { rat(0) };
                    if *c != expect {
                        out.fail(format!("{}: M-side involution square failed at {}", pr, sym));
                    }
                }
            }
            // the B-line reverses
            let r = pr.r;
            let range = if pr.p == pr.s { (1, r - 1) } else { (0, r) };
            for i in range.0..=range.1 {
                let bi = picard::m_b_class(pr, i)?.class;
                let image = auto.apply(&bi);
                let target = picard::m_b_class(pr, r - i)?.class;
                if picard::reduced_coords(pr, &image)? != picard::reduced_coords(pr, &target)? {
                    out.fail(format!("{}: B-line image of {} is not {}", pr, i, r - i));
                }
            }
        }
    }
    Ok(out)
}

/// Classifier rows against the built-in degenerate expectations, the
/// normalization invariance, and the cross-module involution consistency.
fn check_classifier(n_max: usize) -> Result<CheckResult> {
    let mut out = CheckResult::new("classifier");
    for pr in Params::sweep_all(n_max) {
        let t = classify::aut_t(&pr)?;
        let m = classify::aut_m(&pr)?;
        let usd = Params::new(pr.n - pr.s, pr.p, pr.n).unwrap();
        let dual = Params::new(pr.s, pr.n - pr.p, pr.n).unwrap();
        if classify::aut_t(&usd)? != t || classify::aut_t(&dual)? != t {
            out.fail(format!("{}: T-side classification not normalization invariant", pr));
        }
        if classify::aut_m(&usd)? != m || classify::aut_m(&dual)? != m {
            out.fail(format!("{}: M-side classification not normalization invariant", pr));
        }
        // cross-module: a discrete reversal factor needs the lattice
        // involution to exist and fix the canonical class
        let (norm, _) = classify::normalize(&pr);
        if t.discrete.iter().any(|d| d == "USD") {
            match picard::pullback_auto(&norm, Involution::UsdT) {
                Err(e) => out.fail(format!("{}: USD factor without lattice map ({})", pr, e)),
                Ok(auto) => {
                    let k = picard::canonical_class(&norm)?;
                    if auto.apply(&k) != k {
                        out.fail(format!("{}: USD factor does not fix K", pr));
                    }
                }
            }
        }
        if t.discrete.iter().any(|d| d == "DUAL")
            && picard::pullback_auto(&norm, Involution::DualT).is_err()
        {
            out.fail(format!("{}: DUAL factor without lattice map", pr));
        }
    }
    // built-in degenerate rows
    let expect = [
        ((1usize, 1usize, 2usize), "PGL_2", Some("P^1")),
        ((3, 1, 4), "Parabolic(4)", None),
        ((4, 1, 5), "Parabolic(5)", None),
    ];
    for ((s, p, n), connected, model) in expect {
        let t = classify::aut_t(&Params::new(s, p, n).unwrap())?;
        if t.connected != connected || t.model.as_deref() != model {
            out.fail(format!("({},{},{}): unexpected T-side row {:?}", s, p, n, t));
        }
    }
    let m224 = classify::aut_m(&Params::new(2, 2, 4).unwrap())?;
    if m224.connected != "PGL_4" || m224.model.as_deref() != Some("P^3") {
        out.fail("(2,2,4): unexpected M-side row".into());
    }
    let m112 = classify::aut_m(&Params::new(1, 1, 2).unwrap())?;
    if m112.connected != "trivial" || m112.model.as_deref() != Some("point") {
        out.fail("(1,1,2): unexpected M-side row".into());
    }
    Ok(out)
}
