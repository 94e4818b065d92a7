//! Sparse multivariate polynomial arithmetic over the rationals, with
//! monomial orders and integer multigradings.
//!
//! Monomials are stored sparsely (no zero exponents) together with the
//! ambient variable count; polynomials are maps from monomials to nonzero
//! rational coefficients. All values are immutable after construction and
//! every operation is pure.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A monomial `x^u` in the ring `K[x1..xN]`.
///
/// Exponents are kept as strictly increasing `(variable, exponent)` pairs
/// with every exponent positive; the derived `Ord` is a structural order
/// used only as a canonical map key, not as a term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<(usize, usize)>,
    n_vars: usize,
}

impl Monomial {
    /// The monomial `1`.
    pub fn one(n_vars: usize) -> Self {
        Monomial {
            exps: Vec::new(),
            n_vars,
        }
    }

    /// The variable `x_i` (1-based).
    pub fn var(i: usize, n_vars: usize) -> Result<Self> {
        Self::from_pairs([(i, 1)], n_vars)
    }

    /// Build from `(variable, exponent)` pairs; zero exponents are dropped,
    /// repeated variables accumulate.
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (usize, usize)>,
        n_vars: usize,
    ) -> Result<Self> {
        let mut map: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, e) in pairs {
            if i == 0 || i > n_vars {
                return Err(Error::InvalidArgument(format!(
                    "variable index {i} out of range 1..={n_vars}"
                )));
            }
            if e > 0 {
                *map.entry(i).or_insert(0) += e;
            }
        }
        Ok(Monomial {
            exps: map.into_iter().collect(),
            n_vars,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Exponent of `x_i` (0 when absent).
    pub fn exponent(&self, i: usize) -> usize {
        self.exps
            .binary_search_by_key(&i, |&(v, _)| v)
            .map(|k| self.exps[k].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.exps.iter().copied()
    }

    pub fn total_degree(&self) -> usize {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    /// The set of variable indices dividing the monomial.
    pub fn support(&self) -> BTreeSet<usize> {
        self.exps.iter().map(|&(v, _)| v).collect()
    }

    /// Dense exponent vector of length `n_vars`.
    pub fn dense(&self) -> Vec<usize> {
        let mut v = vec![0; self.n_vars];
        for &(i, e) in &self.exps {
            v[i - 1] = e;
        }
        v
    }

    fn check_dims(&self, other: &Monomial) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch(self.n_vars, other.n_vars));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_dims(other)?;
        Ok(self.merge(other, |a, b| a + b))
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_dims(other)?;
        Ok(self.merge(other, |a, b| a.max(b)))
    }

    fn merge(&self, other: &Monomial, f: impl Fn(usize, usize) -> usize) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, e)), Some(&&(j, g))) => match i.cmp(&j) {
                    Ordering::Less => {
                        exps.push((i, f(e, 0)));
                        a.next();
                    }
                    Ordering::Greater => {
                        exps.push((j, f(0, g)));
                        b.next();
                    }
                    Ordering::Equal => {
                        exps.push((i, f(e, g)));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&(i, e)), None) => {
                    exps.push((i, f(e, 0)));
                    a.next();
                }
                (None, Some(&&(j, g))) => {
                    exps.push((j, f(0, g)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        exps.retain(|&(_, e)| e > 0);
        Monomial {
            exps,
            n_vars: self.n_vars,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.n_vars == other.n_vars && self.exps.iter().all(|&(i, e)| e <= other.exponent(i))
    }

    /// `other / self`, when `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps: Vec<(usize, usize)> = Vec::new();
        for &(i, e) in &other.exps {
            let d = e - self.exponent(i);
            if d > 0 {
                exps.push((i, d));
            }
        }
        Some(Monomial {
            exps,
            n_vars: self.n_vars,
        })
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let sup = other.support();
        self.exps.iter().all(|&(i, _)| !sup.contains(&i))
    }

    /// Re-embed into a ring with more variables.
    pub fn extend_vars(&self, n_vars: usize) -> Result<Monomial> {
        if n_vars < self.n_vars {
            return Err(Error::InvalidArgument(
                "cannot shrink the ambient variable count".into(),
            ));
        }
        Ok(Monomial {
            exps: self.exps.clone(),
            n_vars,
        })
    }
}

/// Available term-order kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

/// A monomial order: lex or degrevlex on a permutation of the variables.
///
/// With the identity permutation `x1 > x2 > ... > xN`. A permutation
/// `perm` lists variable indices from most to least significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    perm: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            perm: None,
        }
    }

    pub fn degrevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            perm: None,
        }
    }

    /// Same kind, variables ranked by `perm` (most significant first).
    pub fn with_permutation(kind: OrderKind, perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n + 1];
        for &i in &perm {
            if i == 0 || i > n || seen[i] {
                return Err(Error::InvalidArgument(
                    "order permutation must list each variable exactly once".into(),
                ));
            }
            seen[i] = true;
        }
        Ok(MonomialOrder {
            kind,
            perm: Some(perm),
        })
    }

    /// Exponents of `m` listed from most to least significant variable.
    fn ranked_exponents(&self, m: &Monomial) -> Vec<usize> {
        match &self.perm {
            None => m.dense(),
            Some(p) => p.iter().map(|&i| m.exponent(i)).collect(),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (u, v) = (self.ranked_exponents(a), self.ranked_exponents(b));
        match self.kind {
            OrderKind::Lex => {
                for (x, y) in u.iter().zip(v.iter()) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                let (da, db) = (a.total_degree(), b.total_degree());
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // last nonzero difference: negative means greater
                for (x, y) in u.iter().zip(v.iter()).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::degrevlex()
    }
}

/// An integer multigrading: a `d x N` matrix whose column `j` is the degree
/// vector of `x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    matrix: Vec<Vec<i64>>,
    n_vars: usize,
}

impl Grading {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.is_empty() || matrix[0].is_empty() {
            return Err(Error::InvalidArgument(
                "grading matrix must be nonempty".into(),
            ));
        }
        let n_vars = matrix[0].len();
        if matrix.iter().any(|row| row.len() != n_vars) {
            return Err(Error::InvalidArgument(
                "grading matrix rows differ in length".into(),
            ));
        }
        Ok(Grading { matrix, n_vars })
    }

    /// The standard total-degree grading (a single all-ones row).
    pub fn total_degree(n_vars: usize) -> Self {
        Grading {
            matrix: vec![vec![1; n_vars]],
            n_vars,
        }
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// `matrix * exponent vector`.
    pub fn multidegree(&self, m: &Monomial) -> Result<Vec<i64>> {
        if m.n_vars() != self.n_vars {
            return Err(Error::DimensionMismatch(m.n_vars(), self.n_vars));
        }
        let mut deg = vec![0i64; self.matrix.len()];
        for (i, e) in m.iter() {
            for (r, row) in self.matrix.iter().enumerate() {
                deg[r] += row[i - 1] * e as i64;
            }
        }
        Ok(deg)
    }
}

/// A sparse multivariate polynomial with exact rational coefficients.
///
/// Stored terms never carry a zero coefficient; serialization sorts terms
/// by the active monomial order (degrevlex by default).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
    n_vars: usize,
}

impl Polynomial {
    pub fn zero(n_vars: usize) -> Self {
        Polynomial {
            terms: BTreeMap::new(),
            n_vars,
        }
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(BigRational::one(), n_vars)
    }

    pub fn constant(c: BigRational, n_vars: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(n_vars), c);
        }
        Polynomial { terms, n_vars }
    }

    pub fn from_monomial(m: Monomial, c: BigRational) -> Self {
        let n_vars = m.n_vars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms, n_vars }
    }

    pub fn from_terms(
        n_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(n_vars);
        for (m, c) in terms {
            if m.n_vars() != n_vars {
                return Err(Error::DimensionMismatch(m.n_vars(), n_vars));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn var(i: usize, n_vars: usize) -> Result<Self> {
        Ok(Self::from_monomial(
            Monomial::var(i, n_vars)?,
            BigRational::one(),
        ))
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// In-place fused add of a single term, pruning zeros.
    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_dims(&self, other: &Polynomial) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch(self.n_vars, other.n_vars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
            n_vars: self.n_vars,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other)?;
        let mut out = Polynomial::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n_vars);
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
            n_vars: self.n_vars,
        }
    }

    /// `self * c * m`, the workhorse of polynomial reduction.
    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero(self.n_vars));
        }
        let mut terms = BTreeMap::new();
        for (mm, k) in &self.terms {
            terms.insert(mm.mul(m)?, k * c);
        }
        Ok(Polynomial {
            terms,
            n_vars: self.n_vars,
        })
    }

    pub fn pow(&self, k: usize) -> Result<Polynomial> {
        let mut out = Polynomial::one(self.n_vars);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Leading term with respect to `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    /// Terms sorted in decreasing `order`.
    pub fn terms_sorted(&self, order: &MonomialOrder) -> Vec<(&Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        v
    }

    /// Rational content: gcd of numerators over lcm of denominators
    /// (positive; zero polynomial has content 0).
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            BigRational::zero()
        } else {
            BigRational::new(num, den)
        }
    }

    /// True when all multidegrees of the occurring monomials agree
    /// (the zero polynomial is homogeneous).
    pub fn is_homogeneous(&self, g: &Grading) -> Result<bool> {
        let mut first: Option<Vec<i64>> = None;
        for m in self.terms.keys() {
            let d = g.multidegree(m)?;
            match &first {
                None => first = Some(d),
                Some(f) if *f != d => return Ok(false),
                _ => {}
            }
        }
        Ok(true)
    }

    /// Exact evaluation at a rational point (1-based: `point[i-1]` is the
    /// value of `x_i`).
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.n_vars {
            return Err(Error::DimensionMismatch(point.len(), self.n_vars));
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, e) in m.iter() {
                for _ in 0..e {
                    v *= &point[i - 1];
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Re-embed into a ring with more variables.
    pub fn extend_vars(&self, n_vars: usize) -> Result<Polynomial> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.extend_vars(n_vars)?, c.clone());
        }
        Ok(Polynomial { terms, n_vars })
    }

    /// Canonical text form: terms in decreasing `order`, unit coefficients
    /// suppressed, exponent `^1` omitted.
    pub fn to_string_with(&self, order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms_sorted(order).into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff_part = if mag.is_one() && !m.is_one() {
                None
            } else {
                Some(mag.to_string())
            };
            let mono_part = if m.is_one() {
                None
            } else {
                let factors: Vec<String> = m
                    .iter()
                    .map(|(i, e)| {
                        if e == 1 {
                            format!("x{i}")
                        } else {
                            format!("x{i}^{e}")
                        }
                    })
                    .collect();
                Some(factors.join("*"))
            };
            match (coeff_part, mono_part) {
                (Some(c), Some(m)) => {
                    out.push_str(&c);
                    out.push('*');
                    out.push_str(&m);
                }
                (Some(c), None) => out.push_str(&c),
                (None, Some(m)) => out.push_str(&m),
                (None, None) => unreachable!("a stored term is nonzero"),
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Plain display uses lex order, which reads naturally for the
    /// generators handled here; basis printing uses the active order via
    /// [`Polynomial::to_string_with`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&MonomialOrder::lex()))
    }
}

/// Parse a polynomial in the term grammar: terms joined by `+`/`-`, each
/// term an optional rational coefficient and `*`-separated powers
/// `x<idx>^<exp>` (`^1` omissible). Example: `x1*x6 - x2*x5`.
pub fn parse_polynomial(text: &str, n_vars: usize) -> Result<Polynomial> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::InvalidArgument("empty polynomial text".into()));
    }
    let mut poly = Polynomial::zero(n_vars);
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut sign_negative = false;
    let mut expecting_term = true;
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                if expecting_term && current.trim().is_empty() {
                    // leading sign of the term
                    if ch == '-' {
                        sign_negative = !sign_negative;
                    }
                } else {
                    terms.push((sign_negative, current.trim().to_string()));
                    current = String::new();
                    sign_negative = ch == '-';
                    expecting_term = true;
                }
            }
            _ => {
                if !ch.is_whitespace() {
                    expecting_term = false;
                }
                current.push(ch);
            }
        }
    }
    terms.push((sign_negative, current.trim().to_string()));

    for (negative, term) in terms {
        if term.is_empty() {
            return Err(Error::InvalidArgument(
                "malformed polynomial: empty term".into(),
            ));
        }
        let (mono, coeff) = parse_term(&term, n_vars)?;
        let c = if negative { -coeff } else { coeff };
        poly.add_term(mono, c);
    }
    Ok(poly)
}

fn parse_term(term: &str, n_vars: usize) -> Result<(Monomial, BigRational)> {
    let mut coeff = BigRational::one();
    let mut saw_coeff = false;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (k, factor) in term.split('*').enumerate() {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "malformed term `{term}`: empty factor"
            )));
        }
        if let Some(rest) = factor.strip_prefix('x') {
            let (idx_s, exp_s) = match rest.split_once('^') {
                Some((i, e)) => (i, Some(e)),
                None => (rest, None),
            };
            let idx: usize = idx_s
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("malformed variable `{factor}`")))?;
            let exp: usize = match exp_s {
                Some(e) => e.parse().map_err(|_| {
                    Error::InvalidArgument(format!("malformed exponent in `{factor}`"))
                })?,
                None => 1,
            };
            if idx == 0 || idx > n_vars {
                return Err(Error::InvalidArgument(format!(
                    "variable index {idx} out of range 1..={n_vars}"
                )));
            }
            if exp == 0 {
                return Err(Error::InvalidArgument(format!(
                    "zero exponent in `{factor}` (omit the variable instead)"
                )));
            }
            pairs.push((idx, exp));
        } else {
            if k != 0 || saw_coeff {
                return Err(Error::InvalidArgument(format!(
                    "malformed term `{term}`: coefficient must come first"
                )));
            }
            coeff = parse_rational(factor)?;
            saw_coeff = true;
        }
    }
    Ok((Monomial::from_pairs(pairs, n_vars)?, coeff))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse()
            .map_err(|_| Error::InvalidArgument(format!("malformed rational `{s}`")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let num = parse_int(n.trim())?;
            let den = parse_int(d.trim())?;
            if den.is_zero() {
                return Err(Error::InvalidArgument(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}
