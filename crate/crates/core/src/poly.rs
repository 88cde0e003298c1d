//! Sparse multivariate polynomials over arbitrary-precision integers.
//!
//! Enough ring arithmetic for symbolic determinants of small chart matrices:
//! add, multiply, negate, exact evaluation at rational points, and a memoized
//! cofactor determinant. No factorization, gcd or division.

use crate::rat::Rat;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Variable family tags, in their fixed sort order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarTag {
    A,
    B,
    X,
    Y,
    Z,
    W,
    Xi,
}

impl VarTag {
    fn name(self) -> &'static str {
        match self {
            VarTag::A => "a",
            VarTag::B => "b",
            VarTag::X => "x",
            VarTag::Y => "y",
            VarTag::Z => "z",
            VarTag::W => "w",
            VarTag::Xi => "xi",
        }
    }
}

/// A named variable: a family tag plus up to three small subscripts.
/// Total order is (tag, subscripts) lexicographic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub tag: VarTag,
    subs: [u16; 3],
    nsubs: u8,
}

impl Var {
    pub fn new(tag: VarTag, subs: &[usize]) -> Self {
        assert!(subs.len() <= 3, "at most three subscripts");
        let mut arr = [0u16; 3];
        for (i, &s) in subs.iter().enumerate() {
            arr[i] = u16::try_from(s).expect("subscript fits in u16");
        }
        Var { tag, subs: arr, nsubs: subs.len() as u8 }
    }

    pub fn a(i: usize, j: usize) -> Self {
        Var::new(VarTag::A, &[i, j])
    }
    pub fn b(i: usize, j: usize) -> Self {
        Var::new(VarTag::B, &[i, j])
    }
    pub fn x(i: usize, j: usize) -> Self {
        Var::new(VarTag::X, &[i, j])
    }
    pub fn y(i: usize, j: usize) -> Self {
        Var::new(VarTag::Y, &[i, j])
    }
    pub fn z(i: usize, j: usize) -> Self {
        Var::new(VarTag::Z, &[i, j])
    }
    pub fn w(i: usize, j: usize) -> Self {
        Var::new(VarTag::W, &[i, j])
    }
    /// Stage-`k` chart variable at position `(i, j)`.
    pub fn xi(k: usize, i: usize, j: usize) -> Self {
        Var::new(VarTag::Xi, &[k, i, j])
    }

    pub fn subscripts(&self) -> &[u16] {
        &self.subs[..self.nsubs as usize]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let subs: Vec<String> = self.subscripts().iter().map(|s| s.to_string()).collect();
        write!(f, "{}({})", self.tag.name(), subs.join(","))
    }
}

/// A monomial: sorted variable/exponent pairs, exponents positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{}^{}", v, e) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial in canonical form: no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn int(c: i64) -> Self {
        Polynomial::constant(BigInt::from(c))
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), BigInt::one());
        Polynomial { terms }
    }

    pub fn monomial(c: BigInt, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// `Some((coefficient, monomial))` when the polynomial has one term.
    pub fn as_single_term(&self) -> Option<(&BigInt, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        Polynomial { terms }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let entry = terms.entry(m).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial { terms }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    /// Exact value at a rational point. Every variable that occurs must be
    /// assigned.
    pub fn evaluate(&self, assignment: &BTreeMap<Var, Rat>) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = Rat::from_integer(c.clone());
            for (v, e) in m.factors() {
                let val = assignment
                    .get(v)
                    .ok_or_else(|| Error::MissingVariable(v.to_string()))?;
                for _ in 0..*e {
                    term *= val;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| *v))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.magnitude();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

/// Default cap on the symbolic determinant side.
pub const DETERMINANT_BOUND: usize = 8;

/// Rectangular grid of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        PolyMatrix { nrows, ncols, data: vec![Polynomial::zero(); nrows * ncols] }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidIndexTuple("ragged polynomial matrix".into()));
        }
        Ok(PolyMatrix { nrows, ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.ncols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.data[i * self.ncols + j]
    }

    /// Square submatrix on the given columns, in the order listed.
    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.nrows, cols.len());
        for i in 0..self.nrows {
            for (jj, &c) in cols.iter().enumerate() {
                *out.at_mut(i, jj) = self.at(i, c).clone();
            }
        }
        out
    }

    pub fn evaluate(&self, assignment: &BTreeMap<Var, Rat>) -> Result<crate::rat::QMatrix> {
        let mut rows = Vec::with_capacity(self.nrows);
        for i in 0..self.nrows {
            let mut row = Vec::with_capacity(self.ncols);
            for j in 0..self.ncols {
                row.push(self.at(i, j).evaluate(assignment)?);
            }
            rows.push(row);
        }
        crate::rat::QMatrix::from_rows(rows)
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        self.determinant_with_bound(DETERMINANT_BOUND)
    }

    /// Cofactor expansion memoized over column subsets.
    pub fn determinant_with_bound(&self, bound: usize) -> Result<Polynomial> {
        if self.nrows != self.ncols {
            return Err(Error::NonSquare { rows: self.nrows, cols: self.ncols });
        }
        if self.nrows > bound {
            return Err(Error::DeterminantBound { side: self.nrows, bound });
        }
        let n = self.nrows;
        let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
        let mut memo: HashMap<u32, Polynomial> = HashMap::new();
        Ok(self.det_rec(full, &mut memo))
    }

    /// Determinant of rows `0..popcount(mask)` on the columns in `mask`,
    /// expanded along the last of those rows.
    fn det_rec(&self, mask: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let size = mask.count_ones() as usize;
        let value = if size == 0 {
            Polynomial::one()
        } else {
            let row = size - 1;
            let mut acc = Polynomial::zero();
            let mut pos = 0usize;
            for j in 0..32usize {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let entry = self.at(row, j);
                if !entry.is_zero() {
                    let sub = self.det_rec(mask & !(1 << j), memo);
                    let term = entry.mul(&sub);
                    acc = if (row + pos) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                pos += 1;
            }
            acc
        };
        memo.insert(mask, value.clone());
        value
    }
}
