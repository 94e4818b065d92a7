//! Buchberger Groebner-basis engine with normal forms, ideal and radical
//! membership, and an independent Macaulay-matrix membership oracle.
//!
//! The engine uses the Gebauer-Moeller pair-elimination criteria with the
//! normal selection strategy, and removes rational content at every
//! reduction step. Resource caps are explicit configuration; exceeding a
//! cap is an error, never a silent wrong answer.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// Coefficient field for the engine. Everything defaults to exact
/// rationals; the prime-field mode trades exact characteristic-zero
/// arithmetic for speed in membership-style checks (sound here because
/// all the structural results being verified are field-independent).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffField {
    Rationals,
    Prime(u64),
}

impl CoeffField {
    pub fn prime(p: u64) -> Result<CoeffField> {
        if !(2..(1 << 31)).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "prime modulus must lie in 2..2^31, got {p}"
            )));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(CoeffField::Prime(p))
    }

    /// Map a rational into the field's canonical representative.
    fn reduce(&self, q: BigRational) -> Result<BigRational> {
        match self {
            CoeffField::Rationals => Ok(q),
            CoeffField::Prime(p) => {
                let p_big = BigInt::from(*p);
                let den = q.denom().mod_floor(&p_big);
                if den.is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "denominator divisible by the modulus {p}"
                    )));
                }
                let num = q.numer().mod_floor(&p_big);
                let inv = mod_inverse(&den, &p_big).ok_or_else(|| {
                    Error::InvalidArgument(format!("denominator not invertible mod {p}"))
                })?;
                Ok(BigRational::from_integer((num * inv) % p_big))
            }
        }
    }

    fn invert(&self, q: &BigRational) -> Result<BigRational> {
        match self {
            CoeffField::Rationals => Ok(q.recip()),
            CoeffField::Prime(_) => self.reduce(q.recip()),
        }
    }

    /// Re-express every coefficient in the field, dropping terms that
    /// vanish there.
    fn normalize(&self, p: &Polynomial) -> Result<Polynomial> {
        match self {
            CoeffField::Rationals => Ok(p.clone()),
            CoeffField::Prime(_) => {
                let terms: Result<Vec<_>> = p
                    .terms()
                    .map(|(m, c)| Ok((m.clone(), self.reduce(c.clone())?)))
                    .collect();
                Polynomial::from_terms(p.n_vars(), terms?)
            }
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(p);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(p))
    } else {
        None
    }
}

fn is_prime_u64(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Engine configuration: monomial order, coefficient field and the
/// resource caps guarding Buchberger's loop.
#[derive(Clone, Debug)]
pub struct GbConfig {
    pub order: MonomialOrder,
    pub field: CoeffField,
    /// Maximum number of S-pairs processed in one Buchberger run.
    pub max_pairs: usize,
    /// Maximum total degree allowed for any S-pair lcm or intermediate.
    pub max_degree: usize,
    /// Maximum basis size during the run.
    pub max_basis: usize,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            order: MonomialOrder::degrevlex(),
            field: CoeffField::Rationals,
            max_pairs: 200_000,
            max_degree: 60,
            max_basis: 5_000,
        }
    }
}

/// An ideal given by a nonempty list of nonzero generators sharing the
/// same ambient variable count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    generators: Vec<Polynomial>,
    n_vars: usize,
}

impl Ideal {
    pub fn new(generators: Vec<Polynomial>) -> Result<Ideal> {
        let n_vars = generators
            .first()
            .ok_or_else(|| Error::InvalidArgument("an ideal needs at least one generator".into()))?
            .n_vars();
        for g in &generators {
            if g.n_vars() != n_vars {
                return Err(Error::DimensionMismatch(g.n_vars(), n_vars));
            }
            if g.is_zero() {
                return Err(Error::InvalidArgument("zero generator".into()));
            }
        }
        Ok(Ideal { generators, n_vars })
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Parse the ideal file format: `#` comments, a `vars N` header, then
    /// one polynomial per line.
    pub fn parse(text: &str) -> Result<Ideal> {
        let mut n_vars: Option<usize> = None;
        let mut gens = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(k) => &raw[..k],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            match n_vars {
                None => {
                    let rest = line.strip_prefix("vars").ok_or_else(|| {
                        Error::parse(line_no, "expected header `vars N` before polynomials")
                    })?;
                    let n: usize = rest.trim().parse().map_err(|_| {
                        Error::parse(line_no, "malformed variable count in `vars N` header")
                    })?;
                    if n == 0 {
                        return Err(Error::parse(line_no, "variable count must be positive"));
                    }
                    n_vars = Some(n);
                }
                Some(n) => {
                    let p = crate::poly::parse_polynomial(line, n)
                        .map_err(|e| Error::parse(line_no, e.to_string()))?;
                    gens.push(p);
                }
            }
        }
        if n_vars.is_none() {
            return Err(Error::parse(0, "missing `vars N` header"));
        }
        Ideal::new(gens)
    }

    /// Canonical file form.
    pub fn to_text(&self) -> String {
        let mut out = format!("vars {}\n", self.n_vars);
        for g in &self.generators {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

/// A reduced Groebner basis: monic elements, no leading term divides any
/// term of another element, deterministic element order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub basis: Vec<Polynomial>,
    pub source: Ideal,
    field: CoeffField,
}

impl GroebnerBasis {
    pub fn field(&self) -> CoeffField {
        self.field
    }
}

/// Divide out content and make the order-leading coefficient positive.
/// Over a prime field this normalizes to a monic polynomial instead.
fn normalize_poly(p: &Polynomial, cfg: &GbConfig) -> Result<Polynomial> {
    if p.is_zero() {
        return Ok(p.clone());
    }
    match cfg.field {
        CoeffField::Rationals => {
            let content = p.content();
            let mut q = p.scale(&content.recip());
            let (_, lc) = q.leading_term(&cfg.order).expect("nonzero");
            if lc.is_negative() {
                q = q.neg();
            }
            Ok(q)
        }
        CoeffField::Prime(_) => {
            let q = cfg.field.normalize(p)?;
            if q.is_zero() {
                return Ok(q);
            }
            let (_, lc) = q.leading_term(&cfg.order).expect("nonzero");
            let inv = cfg.field.invert(lc)?;
            cfg.field.normalize(&q.scale(&inv))
        }
    }
}

fn make_monic(p: &Polynomial, cfg: &GbConfig) -> Result<Polynomial> {
    if p.is_zero() {
        return Ok(p.clone());
    }
    let (_, lc) = p.leading_term(&cfg.order).expect("nonzero");
    let inv = cfg.field.invert(lc)?;
    let q = p.scale(&inv);
    cfg.field.normalize(&q)
}

/// Full multivariate division: the remainder of `f` by `basis`. No term
/// of the result is divisible by any basis leading term.
///
/// Over the rationals the working polynomial is kept content-free; the
/// accumulated scale is divided back out of every extracted term, so the
/// remainder is exactly `f` minus an ideal element.
fn reduce_full(f: &Polynomial, basis: &[Polynomial], cfg: &GbConfig) -> Result<Polynomial> {
    let lts: Vec<(Monomial, BigRational)> = basis
        .iter()
        .map(|g| {
            let (m, c) = g
                .leading_term(&cfg.order)
                .expect("basis elements are nonzero");
            (m.clone(), c.clone())
        })
        .collect();
    let mut work = cfg.field.normalize(f)?;
    let mut scale = BigRational::one();
    let mut remainder = Polynomial::zero(f.n_vars());
    'outer: while !work.is_zero() {
        if let CoeffField::Rationals = cfg.field {
            let content = work.content();
            if !content.is_one() {
                work = work.scale(&content.recip());
                scale *= content;
            }
        }
        let (lm, lc) = {
            let (m, c) = work.leading_term(&cfg.order).expect("nonzero");
            (m.clone(), c.clone())
        };
        if lm.total_degree() > cfg.max_degree {
            return Err(Error::CapExceeded(format!(
                "reduction degree {} above max_degree {}",
                lm.total_degree(),
                cfg.max_degree
            )));
        }
        for (g, (gm, gc)) in basis.iter().zip(&lts) {
            if gm.divides(&lm) {
                let q = gm.divide_into(&lm).expect("divides");
                let factor = cfg.field.reduce(&lc / gc)?;
                let sub = g.mul_term(&q, &factor)?;
                work = cfg.field.normalize(&work.sub(&sub)?)?;
                continue 'outer;
            }
        }
        // leading term irreducible: move it to the remainder
        remainder.add_term(lm.clone(), &lc * &scale);
        work = work.sub(&Polynomial::from_monomial(lm, lc))?;
    }
    Ok(remainder)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer-Moeller update: add `new_idx` to the pair set, pruning with
/// the product and chain criteria.
fn update_pairs(
    pairs: &mut Vec<Pair>,
    basis: &[Polynomial],
    lts: &[Monomial],
    new_idx: usize,
) -> Result<()> {
    let t = new_idx;
    let lt_t = &lts[t];
    let mut fresh: Vec<Pair> = Vec::new();
    for i in 0..t {
        if basis[i].is_zero() {
            continue;
        }
        fresh.push(Pair {
            i,
            j: t,
            lcm: lts[i].lcm(lt_t)?,
        });
    }
    // within the fresh pairs, keep a pair only if no other fresh pair's lcm
    // properly divides it (ties broken by index so one survivor remains)
    let mut keep = vec![true; fresh.len()];
    for a in 0..fresh.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..fresh.len() {
            if a == b || !keep[b] {
                continue;
            }
            if fresh[b].lcm.divides(&fresh[a].lcm) && (fresh[a].lcm != fresh[b].lcm || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    // product criterion: drop pairs with coprime leading terms
    let mut fresh: Vec<Pair> = fresh
        .into_iter()
        .zip(keep)
        .filter(|(p, k)| *k && !lts[p.i].is_coprime(lt_t))
        .map(|(p, _)| p)
        .collect();
    // chain criterion on the old pairs
    pairs.retain(|p| {
        let divisible = lt_t.divides(&p.lcm);
        if !divisible {
            return true;
        }
        let lcm_it = lts[p.i].lcm(lt_t).expect("same ring");
        let lcm_jt = lts[p.j].lcm(lt_t).expect("same ring");
        !(lcm_it != p.lcm && lcm_jt != p.lcm)
    });
    pairs.append(&mut fresh);
    Ok(())
}

/// Buchberger's algorithm returning the reduced Groebner basis of `ideal`
/// under `cfg.order`. Output is deterministic for a fixed order.
pub fn buchberger(ideal: &Ideal, cfg: &GbConfig) -> Result<GroebnerBasis> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut lts: Vec<Monomial> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let add_element = |g: Polynomial,
                       basis: &mut Vec<Polynomial>,
                       lts: &mut Vec<Monomial>,
                       pairs: &mut Vec<Pair>|
     -> Result<()> {
        if basis.len() >= cfg.max_basis {
            return Err(Error::CapExceeded(format!(
                "basis size above max_basis {}",
                cfg.max_basis
            )));
        }
        let lt = g.leading_term(&cfg.order).expect("nonzero").0.clone();
        basis.push(g);
        lts.push(lt);
        update_pairs(pairs, basis, lts, basis.len() - 1)
    };

    for g in ideal.generators() {
        let g = normalize_poly(g, cfg)?;
        if g.is_zero() {
            // possible only in prime-field mode
            continue;
        }
        let r = reduce_full(&g, &basis, cfg)?;
        if r.is_zero() {
            continue;
        }
        add_element(normalize_poly(&r, cfg)?, &mut basis, &mut lts, &mut pairs)?;
    }
    if basis.is_empty() {
        return Err(Error::InvalidArgument(
            "ideal reduces to zero generators in the chosen field".into(),
        ));
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        processed += 1;
        if processed > cfg.max_pairs {
            return Err(Error::CapExceeded(format!(
                "pair count above max_pairs {}",
                cfg.max_pairs
            )));
        }
        // normal selection: smallest lcm in the term order, ties by index
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                cfg.order
                    .cmp(&a.lcm, &b.lcm)
                    .then(a.i.cmp(&b.i))
                    .then(a.j.cmp(&b.j))
            })
            .map(|(k, _)| k)
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        if pair.lcm.total_degree() > cfg.max_degree {
            return Err(Error::CapExceeded(format!(
                "S-pair lcm degree {} above max_degree {}",
                pair.lcm.total_degree(),
                cfg.max_degree
            )));
        }
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        let (mi, ci) = fi.leading_term(&cfg.order).expect("nonzero");
        let (mj, cj) = fj.leading_term(&cfg.order).expect("nonzero");
        let qi = mi.divide_into(&pair.lcm).expect("lcm divisible");
        let qj = mj.divide_into(&pair.lcm).expect("lcm divisible");
        let s = fi
            .mul_term(&qi, &cfg.field.invert(ci)?)?
            .sub(&fj.mul_term(&qj, &cfg.field.invert(cj)?)?)?;
        let s = cfg.field.normalize(&s)?;
        let r = reduce_full(&s, &basis, cfg)?;
        if !r.is_zero() {
            add_element(normalize_poly(&r, cfg)?, &mut basis, &mut lts, &mut pairs)?;
        }
    }

    // minimalize: drop elements whose leading term is divisible by another's
    let mut alive: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !alive[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j && alive[j] && lts[j].divides(&lts[i]) && (lts[i] != lts[j] || j < i) {
                alive[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Polynomial> = basis
        .into_iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(g, _)| g)
        .collect();

    // tail-reduce each element against the others, then make monic
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = if others.is_empty() {
            minimal[i].clone()
        } else {
            reduce_full(&minimal[i], &others, cfg)?
        };
        debug_assert!(!r.is_zero(), "minimal element reduced to zero");
        reduced.push(make_monic(&r, cfg)?);
    }
    reduced.sort_by(|a, b| {
        let la = a.leading_term(&cfg.order).expect("nonzero").0;
        let lb = b.leading_term(&cfg.order).expect("nonzero").0;
        cfg.order.cmp(lb, la)
    });

    Ok(GroebnerBasis {
        order: cfg.order.clone(),
        basis: reduced,
        source: ideal.clone(),
        field: cfg.field,
    })
}

/// Normal form of `f` modulo `gb`: the unique remainder with no term
/// divisible by a basis leading term.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if f.n_vars() != gb.source.n_vars() {
        return Err(Error::DimensionMismatch(f.n_vars(), gb.source.n_vars()));
    }
    let cfg = GbConfig {
        order: gb.order.clone(),
        field: gb.field,
        ..GbConfig::default()
    };
    reduce_full(f, &gb.basis, &cfg)
}

/// Membership via a fresh Groebner computation. Reuse [`buchberger`] +
/// [`normal_form`] directly when testing many polynomials against one
/// ideal.
pub fn ideal_member(f: &Polynomial, ideal: &Ideal, cfg: &GbConfig) -> Result<bool> {
    let gb = buchberger(ideal, cfg)?;
    Ok(normal_form(f, &gb)?.is_zero())
}

/// How a radical-membership verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipMethod {
    /// Tried `f^r` for `r = 1..=max_power`. A negative answer by this
    /// method alone means "not found up to max_power", not a proof.
    BoundedPower,
    /// Decided by adjoining `y` and testing `1 in I + (1 - y f)`;
    /// definitive either way.
    Rabinowitsch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipResult {
    pub member: bool,
    /// Least exponent found with `f^r` in the ideal (bounded-power route).
    pub exponent: Option<usize>,
    pub method: MembershipMethod,
}

impl MembershipResult {
    /// A `member = false` answer is only a proof when Rabinowitsch ran.
    pub fn is_definitive(&self) -> bool {
        self.member || self.method == MembershipMethod::Rabinowitsch
    }
}

/// Decide whether `f` lies in the radical of `ideal`, trying bounded
/// powers first and falling back to the Rabinowitsch test.
pub fn radical_member(
    f: &Polynomial,
    ideal: &Ideal,
    max_power: usize,
    rabinowitsch: bool,
    cfg: &GbConfig,
) -> Result<MembershipResult> {
    if max_power < 1 {
        return Err(Error::InvalidArgument(
            "max_power must be at least 1".into(),
        ));
    }
    let gb = buchberger(ideal, cfg)?;
    radical_member_with_gb(f, &gb, max_power, rabinowitsch, cfg)
}

/// Same as [`radical_member`] but reusing an existing basis of the ideal.
pub fn radical_member_with_gb(
    f: &Polynomial,
    gb: &GroebnerBasis,
    max_power: usize,
    rabinowitsch: bool,
    cfg: &GbConfig,
) -> Result<MembershipResult> {
    let mut power = Polynomial::one(f.n_vars());
    for r in 1..=max_power {
        power = power.mul(f)?;
        if normal_form(&power, gb)?.is_zero() {
            return Ok(MembershipResult {
                member: true,
                exponent: Some(r),
                method: MembershipMethod::BoundedPower,
            });
        }
    }
    if !rabinowitsch {
        return Ok(MembershipResult {
            member: false,
            exponent: None,
            method: MembershipMethod::BoundedPower,
        });
    }
    let n = f.n_vars();
    let y = Polynomial::var(n + 1, n + 1)?;
    let mut gens: Vec<Polynomial> = gb
        .source
        .generators()
        .iter()
        .map(|g| g.extend_vars(n + 1))
        .collect::<Result<_>>()?;
    let one = Polynomial::one(n + 1);
    gens.push(one.sub(&y.mul(&f.extend_vars(n + 1)?)?)?);
    let ideal_y = Ideal::new(gens)?;
    let gb_y = buchberger(&ideal_y, cfg)?;
    let member = normal_form(&Polynomial::one(n + 1), &gb_y)?.is_zero();
    Ok(MembershipResult {
        member,
        exponent: None,
        method: MembershipMethod::Rabinowitsch,
    })
}

/// Decide `rad(J) = rad(F1,...,Fs)` for polynomials `F_i` in `J`.
///
/// Containment of the `F_i` is checked as plain membership first and as
/// radical membership on failure; every generator of `J` must then be a
/// radical member of `(F)`.
pub fn radical_equal(
    j: &Ideal,
    fs: &[Polynomial],
    max_power: usize,
    rabinowitsch: bool,
    cfg: &GbConfig,
) -> Result<bool> {
    if fs.is_empty() {
        return Err(Error::InvalidArgument("empty polynomial list".into()));
    }
    for f in fs {
        if f.n_vars() != j.n_vars() {
            return Err(Error::DimensionMismatch(f.n_vars(), j.n_vars()));
        }
    }
    let gb_j = buchberger(j, cfg)?;
    for f in fs {
        if normal_form(f, &gb_j)?.is_zero() {
            continue;
        }
        let res = radical_member_with_gb(f, &gb_j, max_power, rabinowitsch, cfg)?;
        if !res.member {
            if res.is_definitive() {
                return Ok(false);
            }
            return Err(Error::Indeterminate { max_power });
        }
    }
    let f_ideal = Ideal::new(fs.to_vec())?;
    let gb_f = buchberger(&f_ideal, cfg)?;
    for g in j.generators() {
        let res = radical_member_with_gb(g, &gb_f, max_power, rabinowitsch, cfg)?;
        if !res.member {
            if res.is_definitive() {
                return Ok(false);
            }
            return Err(Error::Indeterminate { max_power });
        }
    }
    Ok(true)
}

/// Verdict of the Macaulay-matrix oracle: `Unknown` never excludes
/// membership at a higher degree bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MacaulayVerdict {
    Member,
    Unknown,
}

/// Row cap for the Macaulay matrix; beyond it the oracle errors out
/// instead of grinding.
const MAX_MACAULAY_ROWS: u128 = 200_000;

/// Monomial count of exact degree `d` in `v` variables.
fn monomial_count(v: usize, d: usize) -> u128 {
    // C(d + v - 1, v - 1)
    let mut acc: u128 = 1;
    for k in 1..v {
        acc = acc.saturating_mul((d + k) as u128) / k as u128;
        if acc > MAX_MACAULAY_ROWS * 1000 {
            return u128::MAX;
        }
    }
    acc
}

fn check_macaulay_size(rows: u128) -> Result<()> {
    if rows > MAX_MACAULAY_ROWS {
        return Err(Error::CapExceeded(format!(
            "Macaulay matrix would need about {rows} rows (cap {MAX_MACAULAY_ROWS}); \
             lower the degree bound"
        )));
    }
    Ok(())
}

/// Independent bounded-degree membership test by exact linear algebra:
/// decide whether `f = sum h_i g_i` with `deg(h_i g_i) <= degree_bound`.
///
/// Shares no code with the Buchberger path. When `f` and all generators
/// are homogeneous in total degree, the system is solved degreewise.
pub fn macaulay_member(
    f: &Polynomial,
    ideal: &Ideal,
    degree_bound: usize,
) -> Result<MacaulayVerdict> {
    if f.n_vars() != ideal.n_vars() {
        return Err(Error::DimensionMismatch(f.n_vars(), ideal.n_vars()));
    }
    if degree_bound < f.total_degree() {
        return Err(Error::InvalidArgument(format!(
            "degree bound {degree_bound} below deg(f) = {}",
            f.total_degree()
        )));
    }
    if f.is_zero() {
        return Ok(MacaulayVerdict::Member);
    }
    let total = crate::poly::Grading::total_degree(f.n_vars());
    let all_homogeneous = f.is_homogeneous(&total)?
        && ideal.generators().iter().try_fold(true, |acc, g| {
            Ok::<_, Error>(acc && g.is_homogeneous(&total)?)
        })?;

    if all_homogeneous {
        // one graded piece; higher bounds cannot help a homogeneous f
        let d = f.total_degree();
        if d > degree_bound {
            return Ok(MacaulayVerdict::Unknown);
        }
        let rows: u128 = ideal
            .generators()
            .iter()
            .filter_map(|g| d.checked_sub(g.total_degree()))
            .fold(0u128, |acc, md| {
                acc.saturating_add(monomial_count(f.n_vars(), md))
            });
        check_macaulay_size(rows)?;
        if span_contains(f, ideal, |gd| d.checked_sub(gd), d) {
            Ok(MacaulayVerdict::Member)
        } else {
            Ok(MacaulayVerdict::Unknown)
        }
    } else {
        // inhomogeneous: multiplier degrees range up to the bound
        let mut rows: u128 = 0;
        for g in ideal.generators() {
            for md in 0..=degree_bound.saturating_sub(g.total_degree()) {
                rows = rows.saturating_add(monomial_count(f.n_vars(), md));
            }
        }
        check_macaulay_size(rows)?;
        if span_contains_inhomogeneous(f, ideal, degree_bound) {
            Ok(MacaulayVerdict::Member)
        } else {
            Ok(MacaulayVerdict::Unknown)
        }
    }
}

/// Is `f` in the K-span of `{mu * g_i}` where `deg(mu)` is exactly
/// `mult_degree(deg g_i)` (homogeneous case)?
fn span_contains(
    f: &Polynomial,
    ideal: &Ideal,
    mult_degree: impl Fn(usize) -> Option<usize>,
    _target: usize,
) -> bool {
    let mut elim = SparseEliminator::new();
    for g in ideal.generators() {
        let gd = g.total_degree();
        if let Some(md) = mult_degree(gd) {
            for mu in monomials_of_degree(f.n_vars(), md) {
                let row = g.mul_term(&mu, &BigRational::one()).expect("same ring");
                elim.insert(&row);
            }
        }
    }
    elim.reduces_to_zero(f)
}

fn span_contains_inhomogeneous(f: &Polynomial, ideal: &Ideal, bound: usize) -> bool {
    let mut elim = SparseEliminator::new();
    for g in ideal.generators() {
        let gd = g.total_degree();
        if gd > bound {
            continue;
        }
        for md in 0..=(bound - gd) {
            for mu in monomials_of_degree(f.n_vars(), md) {
                let row = g.mul_term(&mu, &BigRational::one()).expect("same ring");
                elim.insert(&row);
            }
        }
    }
    elim.reduces_to_zero(f)
}

/// All monomials of exact total degree `d` in `n` variables.
fn monomials_of_degree(n_vars: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    fn rec(
        var: usize,
        remaining: usize,
        n_vars: usize,
        pairs: &mut Vec<(usize, usize)>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(Monomial::from_pairs(pairs.iter().copied(), n_vars).expect("valid"));
            return;
        }
        if var > n_vars {
            return;
        }
        if var == n_vars {
            pairs.push((var, remaining));
            out.push(Monomial::from_pairs(pairs.iter().copied(), n_vars).expect("valid"));
            pairs.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            if e > 0 {
                pairs.push((var, e));
            }
            rec(var + 1, remaining - e, n_vars, pairs, out);
            if e > 0 {
                pairs.pop();
            }
        }
    }
    rec(1, d, n_vars, &mut pairs, &mut out);
    out
}

/// Incremental row-echelon form over the rationals with sparse rows keyed
/// by monomial.
struct SparseEliminator {
    /// pivot monomial -> reduced row with that leading monomial (coeff 1)
    pivots: BTreeMap<Monomial, BTreeMap<Monomial, BigRational>>,
}

impl SparseEliminator {
    fn new() -> Self {
        SparseEliminator {
            pivots: BTreeMap::new(),
        }
    }

    fn row_of(p: &Polynomial) -> BTreeMap<Monomial, BigRational> {
        p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
    }

    fn reduce_row(
        &self,
        mut row: BTreeMap<Monomial, BigRational>,
    ) -> BTreeMap<Monomial, BigRational> {
        loop {
            // structural-max key present among pivots
            let hit = row
                .keys()
                .rev()
                .find(|m| self.pivots.contains_key(*m))
                .cloned();
            match hit {
                None => return row,
                Some(m) => {
                    let factor = row.get(&m).cloned().expect("present");
                    let pivot = self.pivots.get(&m).expect("present").clone();
                    for (pm, pc) in pivot {
                        let entry = row.entry(pm).or_insert_with(BigRational::zero);
                        *entry -= &factor * pc;
                        if entry.is_zero() {
                            // defer removal below
                        }
                    }
                    row.retain(|_, c| !c.is_zero());
                }
            }
        }
    }

    fn insert(&mut self, p: &Polynomial) {
        let row = self.reduce_row(Self::row_of(p));
        if row.is_empty() {
            return;
        }
        let lead = row.keys().next_back().cloned().expect("nonempty");
        let lc = row.get(&lead).cloned().expect("present");
        let normalized: BTreeMap<Monomial, BigRational> =
            row.into_iter().map(|(m, c)| (m, c / &lc)).collect();
        self.pivots.insert(lead, normalized);
    }

    fn reduces_to_zero(&self, f: &Polynomial) -> bool {
        self.reduce_row(Self::row_of(f)).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(text: &str, n: usize) -> Polynomial {
        parse_polynomial(text, n).unwrap()
    }

    fn ideal(texts: &[&str], n: usize) -> Ideal {
        Ideal::new(texts.iter().map(|t| p(t, n)).collect()).unwrap()
    }

    /// Generators of the edge ideal of the 4-cycle-with-chord graph on
    /// vertices 1..4 (edges 12, 13, 14, 23, 34), in edge order.
    fn diamond_ideal() -> Ideal {
        ideal(
            &[
                "x1*x6 - x2*x5",
                "x1*x7 - x3*x5",
                "x1*x8 - x4*x5",
                "x2*x7 - x3*x6",
                "x3*x8 - x4*x7",
            ],
            8,
        )
    }

    /// The paired certificate for the diamond ideal.
    fn diamond_certificate() -> Vec<Polynomial> {
        vec![
            p("x1*x6 - x2*x5", 8),
            p("x2*x7 - x3*x6 + x1*x8 - x4*x5", 8),
            p("x3*x8 - x4*x7", 8),
            p("x1*x7 - x3*x5", 8),
        ]
    }

    #[test]
    fn single_binomial_is_its_own_reduced_basis() {
        let i = ideal(&["x1*x4 - x2*x3"], 4);
        let gb = buchberger(&i, &GbConfig::default()).unwrap();
        // monic under degrevlex: leading term is x2*x3
        assert_eq!(gb.basis, vec![p("x2*x3 - x1*x4", 4)]);
    }

    #[test]
    fn triangle_minors_are_self_reduced() {
        let i = ideal(&["x1*x5 - x2*x4", "x1*x6 - x3*x4", "x2*x6 - x3*x5"], 6);
        let gb = buchberger(&i, &GbConfig::default()).unwrap();
        let expected: Vec<Polynomial> = vec![
            p("x2*x4 - x1*x5", 6),
            p("x3*x4 - x1*x6", 6),
            p("x3*x5 - x2*x6", 6),
        ];
        let got: std::collections::BTreeSet<String> =
            gb.basis.iter().map(|g| g.to_string()).collect();
        let want: std::collections::BTreeSet<String> =
            expected.iter().map(|g| g.to_string()).collect();
        assert_eq!(got, want);
        // cross-check every generator against the Macaulay oracle
        for g in i.generators() {
            assert_eq!(macaulay_member(g, &i, 2).unwrap(), MacaulayVerdict::Member);
        }
    }

    #[test]
    fn linear_ideal_reduces() {
        let i = ideal(&["x1", "x1 + x2"], 2);
        let gb = buchberger(&i, &GbConfig::default()).unwrap();
        assert_eq!(gb.basis, vec![p("x1", 2), p("x2", 2)]);
    }

    #[test]
    fn generators_annihilate_under_own_basis() {
        for i in [
            diamond_ideal(),
            ideal(&["x1*x5 - x2*x4", "x1*x6 - x3*x4", "x2*x6 - x3*x5"], 6),
        ] {
            let gb = buchberger(&i, &GbConfig::default()).unwrap();
            for g in i.generators() {
                assert!(normal_form(g, &gb).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn normal_form_of_zero_is_zero() {
        let gb = buchberger(&diamond_ideal(), &GbConfig::default()).unwrap();
        assert!(normal_form(&Polynomial::zero(8), &gb).unwrap().is_zero());
    }

    #[test]
    fn off_component_binomial_has_nonzero_normal_form() {
        let gb = buchberger(&diamond_ideal(), &GbConfig::default()).unwrap();
        let f = p("x2*x8 - x4*x6", 8);
        assert!(!normal_form(&f, &gb).unwrap().is_zero());
        assert_eq!(
            macaulay_member(&f, &diamond_ideal(), 8).unwrap(),
            MacaulayVerdict::Unknown
        );
    }

    #[test]
    fn triangle_reduction_squares_belong() {
        // triangle 123 with extra edge {1,4} on 4 vertices: the reduction
        // set {f_12, f_13, f_14 + f_23}
        let l = ideal(
            &[
                "x1*x6 - x2*x5",
                "x1*x7 - x3*x5",
                "x1*x8 - x4*x5 + x2*x7 - x3*x6",
            ],
            8,
        );
        let cfg = GbConfig::default();
        let f23 = p("x2*x7 - x3*x6", 8);
        let f14 = p("x1*x8 - x4*x5", 8);
        assert!(ideal_member(&f23.pow(2).unwrap(), &l, &cfg).unwrap());
        assert!(ideal_member(&f14.pow(2).unwrap(), &l, &cfg).unwrap());
        // and the Macaulay oracle agrees at the natural bound
        assert_eq!(
            macaulay_member(&f23.pow(2).unwrap(), &l, 4).unwrap(),
            MacaulayVerdict::Member
        );
        assert!(!ideal_member(&f23, &l, &cfg).unwrap());
    }

    #[test]
    fn radical_membership_with_exponent_two() {
        let cert = Ideal::new(diamond_certificate()).unwrap();
        let cfg = GbConfig::default();
        let f2 = p("x2*x7 - x3*x6", 8);
        let res = radical_member(&f2, &cert, 3, true, &cfg).unwrap();
        assert!(res.member);
        assert_eq!(res.exponent, Some(2));
        assert_eq!(res.method, MembershipMethod::BoundedPower);
        // Macaulay oracle sees the square as well
        assert_eq!(
            macaulay_member(&f2.pow(2).unwrap(), &cert, 6).unwrap(),
            MacaulayVerdict::Member
        );
    }

    #[test]
    fn radical_membership_trivial_and_negative() {
        let cfg = GbConfig::default();
        let g = p("x1*x4 - x2*x3", 4);
        let i = Ideal::new(vec![g.clone()]).unwrap();
        let res = radical_member(&g, &i, 3, true, &cfg).unwrap();
        assert!(res.member);
        assert_eq!(res.exponent, Some(1));

        let x1 = p("x1", 2);
        let i2 = ideal(&["x2"], 2);
        assert!(!ideal_member(&x1, &i2, &cfg).unwrap());
        let res = radical_member(&x1, &i2, 3, true, &cfg).unwrap();
        assert!(!res.member);
        assert_eq!(res.method, MembershipMethod::Rabinowitsch);
        assert!(res.is_definitive());
    }

    #[test]
    fn radical_equality_for_the_paired_certificate() {
        let j = diamond_ideal();
        let cfg = GbConfig::default();
        assert!(radical_equal(&j, &diamond_certificate(), 3, true, &cfg).unwrap());
        // an ideal always equals the radical of its own generators
        assert!(radical_equal(&j, j.generators(), 3, true, &cfg).unwrap());
        // dropping the paired polynomial breaks the equality
        let truncated = vec![
            p("x1*x6 - x2*x5", 8),
            p("x3*x8 - x4*x7", 8),
            p("x1*x7 - x3*x5", 8),
        ];
        assert!(!radical_equal(&j, &truncated, 3, true, &cfg).unwrap());
    }

    #[test]
    fn prime_field_mode_agrees_on_membership() {
        let cfg_p = GbConfig {
            field: CoeffField::prime(32003).unwrap(),
            ..GbConfig::default()
        };
        let l = ideal(
            &[
                "x1*x6 - x2*x5",
                "x1*x7 - x3*x5",
                "x1*x8 - x4*x5 + x2*x7 - x3*x6",
            ],
            8,
        );
        let f23 = p("x2*x7 - x3*x6", 8);
        assert!(ideal_member(&f23.pow(2).unwrap(), &l, &cfg_p).unwrap());
        assert!(!ideal_member(&f23, &l, &cfg_p).unwrap());
    }

    #[test]
    fn caps_error_instead_of_lying() {
        let cfg = GbConfig {
            max_degree: 2,
            ..GbConfig::default()
        };
        let i = ideal(&["x1^2*x2 - x3", "x1*x3 - x2^2"], 3);
        assert!(matches!(buchberger(&i, &cfg), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn ideal_file_round_trip() {
        let text = "# comment\nvars 8\nx1*x6 - x2*x5\nx1*x7 - x3*x5 # trailing\n";
        let i = Ideal::parse(text).unwrap();
        assert_eq!(i.n_vars(), 8);
        assert_eq!(i.generators().len(), 2);
        let again = Ideal::parse(&i.to_text()).unwrap();
        assert_eq!(again, i);
        assert!(Ideal::parse("x1 + x2\n").is_err());
    }

    #[test]
    fn normal_form_is_idempotent_and_additive() {
        let gb = buchberger(&diamond_ideal(), &GbConfig::default()).unwrap();
        let f = p("x2*x8 - x4*x6 + x1*x6", 8);
        let g = p("x1*x7 - x3*x5 + x2^2", 8);
        let nf = normal_form(&f, &gb).unwrap();
        assert_eq!(normal_form(&nf, &gb).unwrap(), nf);
        let sum_nf = normal_form(&f.add(&g).unwrap(), &gb).unwrap();
        let nf_sum = normal_form(
            &normal_form(&f, &gb)
                .unwrap()
                .add(&normal_form(&g, &gb).unwrap())
                .unwrap(),
            &gb,
        )
        .unwrap();
        assert_eq!(sum_nf, nf_sum);
    }

    #[test]
    fn monomials_of_degree_counts() {
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(2, 4).len(), 5);
    }

    #[test]
    fn twisted_cubic_membership() {
        // I = (y - x^2, z - x^3) in variables x1 = x, x2 = y, x3 = z; the
        // ideal is prime, so membership can be cross-checked by
        // evaluating on the parametrization (t, t^2, t^3)
        let i = ideal(&["x2 - x1^2", "x3 - x1^3"], 3);
        let cfg = GbConfig {
            order: MonomialOrder::lex(),
            ..GbConfig::default()
        };
        let on_curve = |f: &Polynomial| {
            use num_bigint::BigInt;
            for t in [-3i64, -1, 2, 5, 7] {
                let t = BigRational::from_integer(BigInt::from(t));
                let point = vec![t.clone(), &t * &t, &t * &t * &t];
                if !f.eval(&point).unwrap().is_zero() {
                    return false;
                }
            }
            true
        };
        let members = ["x1*x3 - x2^2", "x2^3 - x3^2", "x1*x2 - x3"];
        for text in members {
            let f = p(text, 3);
            assert!(on_curve(&f), "{text} should vanish on the curve");
            assert!(ideal_member(&f, &i, &cfg).unwrap(), "{text}");
        }
        let non_members = ["x1 - x2", "x1*x2 - x2"];
        for text in non_members {
            let f = p(text, 3);
            assert!(!on_curve(&f));
            assert!(!ideal_member(&f, &i, &cfg).unwrap(), "{text}");
        }
    }

    #[test]
    fn macaulay_row_cap_errors_cleanly() {
        // 12 variables at bound 14 would need millions of rows
        let i = ideal(&["x1*x2 - x3*x4"], 12);
        let f = p("x5*x6 - x7*x8 + x1", 12);
        assert!(matches!(
            macaulay_member(&f, &i, 14),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn every_edge_ideal_equals_the_radical_of_its_generators() {
        use crate::graph::Graph;
        let graphs: Vec<Graph> = vec![
            Graph::new(2, [(1, 2)]).unwrap(),
            Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap(),
            Graph::new(4, [(1, 2), (2, 3), (1, 4), (3, 4), (1, 3)]).unwrap(),
            Graph::new(5, [(1, 2), (2, 3), (1, 3), (2, 4), (4, 5), (3, 5)]).unwrap(),
            Graph::new(6, (1..=6).map(|i| (i, i % 6 + 1)).collect::<Vec<_>>()).unwrap(),
            Graph::new(5, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (4, 5)]).unwrap(),
        ];
        let cfg = GbConfig::default();
        for g in graphs {
            let j = crate::edgeideal::build_edge_ideal(&g).unwrap().ideal;
            assert!(
                radical_equal(&j, j.generators(), 3, true, &cfg).unwrap(),
                "graph: {g}"
            );
        }
    }
}
