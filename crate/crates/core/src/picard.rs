//! Exact divisor-class arithmetic on the two Picard lattices.
//!
//! Classes are stored over the full spanning set (`H`, `D_i^-`, `D_i^+` on
//! the T-side; `Hc`, `Dc_i` on the M-side) and reduced on demand to the
//! case-dependent free basis. The spanning form is what the curve tables
//! pair against, so degenerate cases never need rewritten tables.

use crate::params::Params;
use crate::rat::{rat, Rat};
use crate::{Error, Result};
use num::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Space {
    T,
    M,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::T => write!(f, "T"),
            Space::M => write!(f, "M"),
        }
    }
}

/// A spanning symbol of one of the two lattices. Order: `H`, then the
/// `D_i^-`, then the `D_i^+` (T-side); `Hc` then the `Dc_i` (M-side).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpanSymbol {
    H,
    DMinus(usize),
    DPlus(usize),
    HCheck,
    DCheck(usize),
}

impl SpanSymbol {
    pub fn space(&self) -> Space {
        match self {
            SpanSymbol::H | SpanSymbol::DMinus(_) | SpanSymbol::DPlus(_) => Space::T,
            SpanSymbol::HCheck | SpanSymbol::DCheck(_) => Space::M,
        }
    }
}

impl fmt::Display for SpanSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpanSymbol::H => write!(f, "H"),
            SpanSymbol::DMinus(i) => write!(f, "D{}-", i),
            SpanSymbol::DPlus(i) => write!(f, "D{}+", i),
            SpanSymbol::HCheck => write!(f, "Hc"),
            SpanSymbol::DCheck(i) => write!(f, "Dc{}", i),
        }
    }
}

/// The ordered spanning symbols for a space at the given parameters.
pub fn spanning_symbols(params: &Params, space: Space) -> Vec<SpanSymbol> {
    let r = params.r;
    match space {
        Space::T => {
            let mut v = vec![SpanSymbol::H];
            v.extend((1..=r).map(SpanSymbol::DMinus));
            v.extend((1..=r).map(SpanSymbol::DPlus));
            v
        }
        Space::M => {
            let mut v = vec![SpanSymbol::HCheck];
            v.extend((1..=r).map(SpanSymbol::DCheck));
            v
        }
    }
}

/// An exact-rational divisor class over the spanning symbols of one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub space: Space,
    coeffs: BTreeMap<SpanSymbol, Rat>,
}

impl DivisorClass {
    pub fn zero(space: Space) -> Self {
        DivisorClass { space, coeffs: BTreeMap::new() }
    }

    pub fn unit(space: Space, sym: SpanSymbol) -> Self {
        let mut c = Self::zero(space);
        c.set(sym, Rat::one());
        c
    }

    pub fn set(&mut self, sym: SpanSymbol, value: Rat) {
        assert_eq!(sym.space(), self.space, "symbol belongs to the other space");
        if value.is_zero() {
            self.coeffs.remove(&sym);
        } else {
            self.coeffs.insert(sym, value);
        }
    }

    pub fn coeff(&self, sym: &SpanSymbol) -> Rat {
        self.coeffs.get(sym).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&SpanSymbol, &Rat)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        assert_eq!(self.space, other.space);
        let mut out = self.clone();
        for (s, v) in &other.coeffs {
            let cur = out.coeff(s) + v;
            out.set(*s, cur);
        }
        out
    }

    pub fn scale(&self, f: &Rat) -> DivisorClass {
        let mut out = DivisorClass::zero(self.space);
        for (s, v) in &self.coeffs {
            out.set(*s, v * f);
        }
        out
    }

    pub fn neg(&self) -> DivisorClass {
        self.scale(&rat(-1))
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        self.add(&other.neg())
    }

    /// Coefficients as strings keyed by symbol name, for serialization.
    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.coeffs
            .iter()
            .map(|(s, v)| (s.to_string(), crate::rat::rat_str(v)))
            .collect()
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(s, v)| format!("{}*{}", crate::rat::rat_str(v), s))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The case-dependent free basis of the Picard lattice.
///
/// T-side sizes: `2r+1` generically, `2r` when `n-s = p < s`, `2r-1` when
/// `n-s = p = s`. M-side: `r+1`, `r`, `r-1` in the same cases.
pub fn basis(params: &Params, space: Space) -> Result<Vec<SpanSymbol>> {
    params.assert_normalized()?;
    let (s, p, n, r) = (params.s, params.p, params.n, params.r);
    let coincide_minus = p == n - s; // B_r = D_r^-
    let coincide_plus = p == s; // B_0 = D_r^+, only with n = 2s = 2p
    Ok(match space {
        Space::T => {
            let mut v = vec![SpanSymbol::H];
            let top_plus = if coincide_plus { r - 1 } else { r };
            let top_minus = if coincide_minus { r - 1 } else { r };
            v.extend((1..=top_plus).map(SpanSymbol::DPlus));
            v.extend((1..=top_minus).map(SpanSymbol::DMinus));
            v
        }
        Space::M => {
            let _ = n;
            let mut v = Vec::new();
            if !coincide_plus {
                v.push(SpanSymbol::HCheck);
            }
            let top = if coincide_minus { r - 1 } else { r };
            v.extend((1..=top).map(SpanSymbol::DCheck));
            v
        }
    })
}

/// Substitutes every eliminated symbol by its relation, yielding a class
/// supported on the free basis. Idempotent and linear.
pub fn reduce(params: &Params, class: &DivisorClass) -> Result<DivisorClass> {
    params.assert_normalized()?;
    let r = params.r;
    let mut out = class.clone();
    match class.space {
        Space::T => {
            if params.p == params.n - params.s {
                // D_r^- = H - sum_{i<r} (r+1-i) D_i^-
                let c = out.coeff(&SpanSymbol::DMinus(r));
                if !c.is_zero() {
                    out.set(SpanSymbol::DMinus(r), Rat::zero());
                    let mut repl = DivisorClass::unit(Space::T, SpanSymbol::H);
                    for i in 1..r {
                        repl.set(SpanSymbol::DMinus(i), -rat((r + 1 - i) as i64));
                    }
                    out = out.add(&repl.scale(&c));
                }
            }
            if params.p == params.s {
                let c = out.coeff(&SpanSymbol::DPlus(r));
                if !c.is_zero() {
                    out.set(SpanSymbol::DPlus(r), Rat::zero());
                    let mut repl = DivisorClass::unit(Space::T, SpanSymbol::H);
                    for i in 1..r {
                        repl.set(SpanSymbol::DPlus(i), -rat((r + 1 - i) as i64));
                    }
                    out = out.add(&repl.scale(&c));
                }
            }
            Ok(out)
        }
        Space::M => {
            if params.p == params.n - params.s {
                let c = out.coeff(&SpanSymbol::DCheck(r));
                if !c.is_zero() {
                    out.set(SpanSymbol::DCheck(r), Rat::zero());
                    let repl = if r == 1 {
                        // Dc_1 = Hc - Dc_1 solves to Hc/2
                        DivisorClass::unit(Space::M, SpanSymbol::HCheck).scale(&crate::rat::rat_frac(1, 2))
                    } else {
                        let mut repl = DivisorClass::unit(Space::M, SpanSymbol::HCheck);
                        repl.set(SpanSymbol::DCheck(1), -rat(r as i64));
                        for k in 2..r {
                            repl.set(SpanSymbol::DCheck(k), -rat((r + 1 - k) as i64));
                        }
                        repl
                    };
                    out = out.add(&repl.scale(&c));
                }
            }
            if params.p == params.s {
                // Bc_0 = Hc is the empty divisor, so Hc = 0
                out.set(SpanSymbol::HCheck, Rat::zero());
            }
            Ok(out)
        }
    }
}

/// Coordinates of the reduced class in the free basis order.
pub fn reduced_coords(params: &Params, class: &DivisorClass) -> Result<Vec<Rat>> {
    let reduced = reduce(params, class)?;
    let basis = basis(params, class.space)?;
    for (sym, _) in reduced.coeffs() {
        if !basis.contains(sym) {
            return Err(Error::ConstraintViolation(format!(
                "reduced class still carries {}",
                sym
            )));
        }
    }
    Ok(basis.iter().map(|s| reduced.coeff(s)).collect())
}

/// Named divisor classes on the T-side space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TName {
    DPlus(usize),
    DMinus(usize),
    B(usize),
    HLine(usize),
    Exceptional,
    K,
    AntiK,
}

/// Named divisor classes on the M-side space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MName {
    DCheck(usize),
    BCheck(usize),
    HCheck,
    K,
    AntiK,
}

/// A named class plus the empty-divisor marker (only `Bc_0` with `p = s`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedClass {
    pub class: DivisorClass,
    pub empty_divisor: bool,
}

fn check_range(i: usize, lo: usize, hi: usize, what: &str) -> Result<()> {
    if i < lo || i > hi {
        return Err(Error::IndexOutOfRange(format!("{} index {} not in {}..{}", what, i, lo, hi)));
    }
    Ok(())
}

/// Strict-transform hyperplane class `B_k = H - sum (r-k+1-i) D_i^+
/// - sum (k+1-i) D_i^-`, with the degenerate overrides `B_0 = D_r^+`
/// (p = s) and `B_r = D_r^-` (p = n-s).
pub fn b_class(params: &Params, k: usize) -> Result<DivisorClass> {
    params.assert_normalized()?;
    let r = params.r;
    check_range(k, 0, r, "B")?;
    if params.p == params.s && k == 0 {
        return Ok(DivisorClass::unit(Space::T, SpanSymbol::DPlus(r)));
    }
    if params.p == params.n - params.s && k == r {
        return Ok(DivisorClass::unit(Space::T, SpanSymbol::DMinus(r)));
    }
    h_line_class(params, k)
}

/// Multi-projective hyperplane restriction
/// `H_j = H - sum_{i<=r-j} (r-j+1-i) D_i^+ - sum_{i<=j} (j+1-i) D_i^-`.
pub fn h_line_class(params: &Params, j: usize) -> Result<DivisorClass> {
    params.assert_normalized()?;
    let r = params.r;
    check_range(j, 0, r, "H")?;
    let mut c = DivisorClass::unit(Space::T, SpanSymbol::H);
    for i in 1..=r - j {
        c.set(SpanSymbol::DPlus(i), -rat((r - j + 1 - i) as i64));
    }
    for i in 1..=j {
        c.set(SpanSymbol::DMinus(i), -rat((j + 1 - i) as i64));
    }
    Ok(c)
}

/// Exceptional divisor of the contraction to the Grassmannian.
pub fn exceptional_class(params: &Params) -> Result<DivisorClass> {
    params.assert_normalized()?;
    let r = params.r;
    let mut c = DivisorClass::zero(Space::T);
    let top_plus = if params.p == params.s { r - 1 } else { r };
    let top_minus = if params.p == params.n - params.s { r - 1 } else { r };
    for i in 1..=top_plus {
        c.set(SpanSymbol::DPlus(i), Rat::one());
    }
    for i in 1..=top_minus {
        c.set(SpanSymbol::DMinus(i), Rat::one());
    }
    Ok(c)
}

/// Canonical class of the T-side space.
pub fn canonical_class(params: &Params) -> Result<DivisorClass> {
    params.assert_normalized()?;
    let (s, p, n, r) = (params.s, params.p, params.n, params.r);
    let mut c = DivisorClass::zero(Space::T);
    c.set(SpanSymbol::H, -rat(n as i64));
    for i in 1..=r {
        let minus = (p - i + 1) * (n - s - i + 1);
        c.set(SpanSymbol::DMinus(i), rat(minus as i64 - 1));
        let plus = if r == p {
            // r = p <= n-s
            (p - i + 1) * (s - i + 1)
        } else {
            // r = n-s <= p
            (n - p - i + 1) * (n - s - i + 1)
        };
        c.set(SpanSymbol::DPlus(i), rat(plus as i64 - 1));
    }
    Ok(c)
}

pub fn named_divisor(params: &Params, name: TName) -> Result<DivisorClass> {
    params.assert_normalized()?;
    let r = params.r;
    match name {
        TName::DPlus(i) => {
            check_range(i, 1, r, "D+")?;
            Ok(DivisorClass::unit(Space::T, SpanSymbol::DPlus(i)))
        }
        TName::DMinus(i) => {
            check_range(i, 1, r, "D-")?;
            Ok(DivisorClass::unit(Space::T, SpanSymbol::DMinus(i)))
        }
        TName::B(k) => b_class(params, k),
        TName::HLine(j) => h_line_class(params, j),
        TName::Exceptional => exceptional_class(params),
        TName::K => canonical_class(params),
        TName::AntiK => Ok(canonical_class(params)?.neg()),
    }
}

/// Canonical class of the M-side space (stated for `p <= s`, which the
/// normal form guarantees).
pub fn m_canonical_class(params: &Params) -> Result<DivisorClass> {
    params.assert_normalized()?;
    let (s, p, n, r) = (params.s, params.p, params.n, params.r);
    let mut c = DivisorClass::zero(Space::M);
    c.set(SpanSymbol::HCheck, -rat(n as i64));
    c.set(SpanSymbol::DCheck(1), rat((p * (n - s)) as i64));
    for i in 2..=r {
        let v = (p - i + 1) * (n - s - i + 1);
        c.set(SpanSymbol::DCheck(i), rat(v as i64 - 1));
    }
    Ok(c)
}

/// Restricted strict-transform class
/// `Bc_i = Hc - i Dc_1 - sum_{k=2..i} (i+1-k) Dc_k` with the overrides
/// `Bc_r = Dc_r` (p = n-s) and `Bc_0` empty (p = s).
pub fn m_b_class(params: &Params, i: usize) -> Result<NamedClass> {
    params.assert_normalized()?;
    let r = params.r;
    check_range(i, 0, r, "Bc")?;
    if params.p == params.s && i == 0 {
        return Ok(NamedClass { class: DivisorClass::zero(Space::M), empty_divisor: true });
    }
    if params.p == params.n - params.s && i == r {
        return Ok(NamedClass {
            class: DivisorClass::unit(Space::M, SpanSymbol::DCheck(r)),
            empty_divisor: false,
        });
    }
    let mut c = DivisorClass::unit(Space::M, SpanSymbol::HCheck);
    if i >= 1 {
        c.set(SpanSymbol::DCheck(1), -rat(i as i64));
    }
    for k in 2..=i {
        c.set(SpanSymbol::DCheck(k), -rat((i + 1 - k) as i64));
    }
    Ok(NamedClass { class: c, empty_divisor: false })
}

pub fn m_named_divisor(params: &Params, name: MName) -> Result<NamedClass> {
    params.assert_normalized()?;
    let r = params.r;
    let plain = |c: DivisorClass| NamedClass { class: c, empty_divisor: false };
    match name {
        MName::DCheck(i) => {
            check_range(i, 1, r, "Dc")?;
            Ok(plain(DivisorClass::unit(Space::M, SpanSymbol::DCheck(i))))
        }
        MName::BCheck(k) => m_b_class(params, k),
        MName::HCheck => Ok(plain(DivisorClass::unit(Space::M, SpanSymbol::HCheck))),
        MName::K => Ok(plain(m_canonical_class(params)?)),
        MName::AntiK => Ok(plain(m_canonical_class(params)?.neg())),
    }
}

/// Which induced lattice automorphism to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    /// Column reversal on the T-side; needs `n = 2s`.
    UsdT,
    /// Grassmann duality on the T-side; needs `n = 2p`.
    DualT,
    /// Induced reversal on the M-side; needs `n = 2s`.
    UsdM,
    /// Induced duality on the M-side; needs `n = 2p`.
    DualM,
}

/// A linear map of a Picard lattice given by the images of the spanning
/// symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardAuto {
    pub space: Space,
    pub images: BTreeMap<SpanSymbol, DivisorClass>,
}

impl PicardAuto {
    pub fn apply(&self, class: &DivisorClass) -> DivisorClass {
        assert_eq!(class.space, self.space);
        let mut out = DivisorClass::zero(self.space);
        for (sym, coeff) in class.coeffs() {
            let image = self.images.get(sym).expect("image for every spanning symbol");
            out = out.add(&image.scale(coeff));
        }
        out
    }

    /// The induced map in reduced (free basis) coordinates, columns indexed
    /// by basis elements.
    pub fn reduced_matrix(&self, params: &Params) -> Result<Vec<Vec<Rat>>> {
        let basis = basis(params, self.space)?;
        let mut cols = Vec::new();
        for sym in &basis {
            let image = self.images.get(sym).expect("basis symbol has an image");
            cols.push(reduced_coords(params, image)?);
        }
        Ok(cols)
    }
}

/// Builds the pullback action of the requested involution on the Picard
/// lattice, over the spanning symbols.
pub fn pullback_auto(params: &Params, which: Involution) -> Result<PicardAuto> {
    params.assert_normalized()?;
    let (s, p, n, r) = (params.s, params.p, params.n, params.r);
    let need = |cond: bool, msg: &str| {
        if cond {
            Ok(())
        } else {
            Err(Error::ConstraintViolation(msg.to_string()))
        }
    };
    let mut images = BTreeMap::new();
    match which {
        Involution::UsdT | Involution::DualT => {
            match which {
                Involution::UsdT => need(n == 2 * s, "UsdT needs n = 2s")?,
                _ => need(n == 2 * p, "DualT needs n = 2p")?,
            }
            images.insert(SpanSymbol::H, DivisorClass::unit(Space::T, SpanSymbol::H));
            for i in 1..=r {
                images.insert(
                    SpanSymbol::DPlus(i),
                    DivisorClass::unit(Space::T, SpanSymbol::DMinus(i)),
                );
                images.insert(
                    SpanSymbol::DMinus(i),
                    DivisorClass::unit(Space::T, SpanSymbol::DPlus(i)),
                );
            }
            Ok(PicardAuto { space: Space::T, images })
        }
        Involution::UsdM | Involution::DualM => {
            match which {
                Involution::UsdM => need(n == 2 * s, "UsdM needs n = 2s")?,
                _ => need(n == 2 * p, "DualM needs n = 2p")?,
            }
            if p == s {
                // the self-dual square: fractional image of Dc_1, trivial Hc
                images.insert(SpanSymbol::HCheck, DivisorClass::zero(Space::M));
                let mut d1 = DivisorClass::zero(Space::M);
                for i in 2..=r {
                    d1.set(SpanSymbol::DCheck(i), -crate::rat::rat_frac((i - 1) as i64, r as i64));
                }
                images.insert(SpanSymbol::DCheck(1), d1);
            } else {
                let mut h = DivisorClass::unit(Space::M, SpanSymbol::HCheck);
                for i in 1..=r {
                    h.set(SpanSymbol::DCheck(i), -rat((r + 1 - i) as i64));
                }
                images.insert(SpanSymbol::HCheck, h);
                let mut d1 = DivisorClass::zero(Space::M);
                for i in 1..=r {
                    d1.set(SpanSymbol::DCheck(i), -rat(1));
                }
                images.insert(SpanSymbol::DCheck(1), d1);
            }
            for i in 2..=r {
                images.insert(
                    SpanSymbol::DCheck(i),
                    DivisorClass::unit(Space::M, SpanSymbol::DCheck(r + 2 - i)),
                );
            }
            Ok(PicardAuto { space: Space::M, images })
        }
    }
}

/// `h^0` of the multi-projective hyperplane restriction `H_j`:
/// `C(s, p-j) * C(n-s, j)`.
pub fn linear_series_dim(params: &Params, j: usize) -> Result<u64> {
    let r = params.r;
    check_range(j, 0, r, "H")?;
    Ok(crate::params::binomial(params.s, params.p - j)
        * crate::params::binomial(params.n - params.s, j))
}
