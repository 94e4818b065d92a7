//! The binomial edge ideal of a graph: generators, the two standard
//! multigradings, minimal supports, and the combinatorial minimal primes
//! with their dimensions.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::groebner::Ideal;
use crate::poly::{Grading, Monomial, Polynomial};

/// Generator `x_u x_{n+v} - x_v x_{n+u}` in `2n` variables, for any pair
/// of distinct vertices. Swapping `u` and `v` negates the polynomial.
pub fn edge_binomial(n: usize, u: usize, v: usize) -> Result<Polynomial> {
    if u == v || u == 0 || v == 0 || u > n || v > n {
        return Err(Error::InvalidArgument(format!(
            "invalid vertex pair ({u},{v}) for n = {n}"
        )));
    }
    let pos = Monomial::from_pairs([(u, 1), (n + v, 1)], 2 * n)?;
    let neg = Monomial::from_pairs([(v, 1), (n + u, 1)], 2 * n)?;
    Polynomial::from_terms(
        2 * n,
        [(pos, BigRational::one()), (neg, -BigRational::one())],
    )
}

/// A graph together with its binomial edge ideal; generators are ordered
/// by edge, deterministically.
#[derive(Clone, Debug)]
pub struct EdgeIdeal {
    pub graph: Graph,
    pub ideal: Ideal,
    edge_index: BTreeMap<(usize, usize), usize>,
}

impl EdgeIdeal {
    /// Position of the generator belonging to edge `{i, j}`.
    pub fn generator_index(&self, i: usize, j: usize) -> Option<usize> {
        self.edge_index.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn generator(&self, i: usize, j: usize) -> Option<&Polynomial> {
        self.generator_index(i, j)
            .map(|k| &self.ideal.generators()[k])
    }

    /// Edges in generator order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edge_index.keys().copied().collect()
    }
}

/// Build the edge ideal of a connected graph on at least two vertices.
pub fn build_edge_ideal(g: &Graph) -> Result<EdgeIdeal> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() < 2 {
        return Err(Error::InvalidArgument("need at least two vertices".into()));
    }
    let n = g.n();
    let mut gens = Vec::with_capacity(g.m());
    let mut edge_index = BTreeMap::new();
    for (pos, (i, j)) in g.edges().enumerate() {
        gens.push(edge_binomial(n, i, j)?);
        edge_index.insert((i, j), pos);
    }
    Ok(EdgeIdeal {
        graph: g.clone(),
        ideal: Ideal::new(gens)?,
        edge_index,
    })
}

/// The two standard multigradings making every generator homogeneous:
/// the coarse one (`n x 2n`, columns `e_1..e_n, e_1..e_n`) and the fine
/// one (`(n+1) x 2n`, columns `w_1 + w_{i+1}` then `w_{i+1}`).
pub fn standard_gradings(n: usize) -> Result<(Grading, Grading)> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one vertex".into()));
    }
    let mut a = vec![vec![0i64; 2 * n]; n];
    for i in 0..n {
        a[i][i] = 1;
        a[i][n + i] = 1;
    }
    let mut b = vec![vec![0i64; 2 * n]; n + 1];
    for i in 0..n {
        b[0][i] = 1;
        b[i + 1][i] = 1;
        b[i + 1][n + i] = 1;
    }
    Ok((Grading::new(a)?, Grading::new(b)?))
}

/// Minimal supports of the ideal's indispensable monomials: two per edge,
/// `{i, n+j}` and `{j, n+i}`, deduplicated, in edge order.
pub fn t_min(g: &Graph) -> Result<Vec<BTreeSet<usize>>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(2 * g.m());
    for (i, j) in g.edges() {
        for sup in [BTreeSet::from([i, n + j]), BTreeSet::from([j, n + i])] {
            if seen.insert(sup.clone()) {
                out.push(sup);
            }
        }
    }
    Ok(out)
}

/// A minimal prime of the edge ideal, described combinatorially: the
/// deleted vertex set `S`, the component count `c(S)`, the Krull
/// dimension of the quotient, and the components themselves (each
/// contributing the 2-minors of a complete graph).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeComponent {
    #[serde(rename = "S")]
    pub s: BTreeSet<usize>,
    pub c: usize,
    pub dimension: usize,
    #[serde(skip)]
    pub components: Vec<BTreeSet<usize>>,
}

impl PrimeComponent {
    /// Human-readable generator description; the expanded polynomial list
    /// is materialized only on demand.
    pub fn describe(&self, n: usize) -> String {
        let mut parts: Vec<String> = Vec::new();
        for &i in &self.s {
            parts.push(format!("x{i}"));
            parts.push(format!("x{}", n + i));
        }
        for comp in &self.components {
            if comp.len() >= 2 {
                let verts: Vec<String> = comp.iter().map(|v| v.to_string()).collect();
                parts.push(format!("minors({})", verts.join(",")));
            }
        }
        format!("({})", parts.join(", "))
    }

    /// Materialize the prime as an explicit ideal: the variables of `S`
    /// plus all 2-minors within each component.
    pub fn expand_ideal(&self, n: usize) -> Result<Ideal> {
        let mut gens: Vec<Polynomial> = Vec::new();
        for &i in &self.s {
            gens.push(Polynomial::var(i, 2 * n)?);
            gens.push(Polynomial::var(n + i, 2 * n)?);
        }
        for comp in &self.components {
            let verts: Vec<usize> = comp.iter().copied().collect();
            for (a, &u) in verts.iter().enumerate() {
                for &v in verts.iter().skip(a + 1) {
                    gens.push(edge_binomial(n, u, v)?);
                }
            }
        }
        Ideal::new(gens)
    }
}

/// Upper limit on `n` for the minimal-prime subset enumeration.
pub const DEFAULT_MINIMAL_PRIMES_MAX_N: usize = 16;

/// All minimal primes of the edge ideal, found by the component-count
/// criterion: `S` qualifies iff `S` is empty or `c(S \ {i}) < c(S)` for
/// every `i` in `S`. Enumeration is by cardinality then lexicographic;
/// vertices of degree at most one can never appear in a qualifying `S`.
pub fn minimal_primes(g: &Graph) -> Result<Vec<PrimeComponent>> {
    minimal_primes_capped(g, DEFAULT_MINIMAL_PRIMES_MAX_N)
}

pub fn minimal_primes_capped(g: &Graph, max_n: usize) -> Result<Vec<PrimeComponent>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() > max_n {
        return Err(Error::CapExceeded(format!(
            "minimal-prime enumeration capped at n = {max_n}, graph has n = {}",
            g.n()
        )));
    }
    let n = g.n();
    // removing a vertex of degree <= 1 never increases the component
    // count of any induced subgraph, so such vertices never qualify
    let candidates: Vec<usize> = (1..=n).filter(|&v| g.degree(v) >= 2).collect();
    let mut subsets: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    for mask in 1u64..(1 << candidates.len()) {
        let s: BTreeSet<usize> = candidates
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        subsets.push(s);
    }
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let mut out = Vec::new();
    for s in subsets {
        if !s.is_empty() {
            let c = g.component_count(&s);
            let minimal = s.iter().all(|&i| {
                let mut smaller = s.clone();
                smaller.remove(&i);
                g.component_count(&smaller) < c
            });
            if !minimal {
                continue;
            }
        }
        let components = g.components_after_deletion(&s);
        let c = components.len();
        let dimension = n - s.len() + c;
        out.push(PrimeComponent {
            s,
            c,
            dimension,
            components,
        });
    }
    Ok(out)
}

/// Height, unmixedness and the dimension multiset of the edge ideal,
/// straight from the minimal primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightReport {
    pub ht: usize,
    pub unmixed: bool,
    /// Dimensions of the minimal primes, decreasing.
    pub dims: Vec<usize>,
}

pub fn height_and_unmixed(g: &Graph) -> Result<HeightReport> {
    let primes = minimal_primes(g)?;
    let mut dims: Vec<usize> = primes.iter().map(|p| p.dimension).collect();
    dims.sort_unstable_by(|a, b| b.cmp(a));
    let max_dim = dims[0];
    Ok(HeightReport {
        ht: 2 * g.n() - max_dim,
        unmixed: dims.iter().all(|&d| d == max_dim),
        dims,
    })
}
