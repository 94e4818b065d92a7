//! The simplicial complex attached to a binomial ideal: vertices are the
//! minimal supports of indispensable monomials, faces are support sets
//! realizable by pairwise congruent monomials. Provides the matching
//! invariants and the spanning check used as a fast necessary condition
//! before radical verification.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::groebner::{buchberger, normal_form, GbConfig, GroebnerBasis, Ideal};
use crate::poly::{Monomial, Polynomial};

/// Cap on the vertex count of a single connected component in the exact
/// matching/cover searches.
pub const DEFAULT_MAX_COMPONENT_VERTICES: usize = 24;

/// An abstract simplicial complex on a list of labelled vertices (each
/// label is a support set). Faces are stored as nonempty, downward-closed
/// sets of vertex indices (0-based); every listed vertex is a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<BTreeSet<usize>>,
    faces: BTreeSet<BTreeSet<usize>>,
}

impl SimplicialComplex {
    /// Build from vertex labels and a facet list; the downward closure
    /// and all singletons are added automatically.
    pub fn new(
        vertices: Vec<BTreeSet<usize>>,
        facets: impl IntoIterator<Item = BTreeSet<usize>>,
    ) -> Result<SimplicialComplex> {
        let v = vertices.len();
        let unique: BTreeSet<&BTreeSet<usize>> = vertices.iter().collect();
        if unique.len() != v {
            return Err(Error::InvalidArgument("duplicate vertex labels".into()));
        }
        let mut faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for i in 0..v {
            faces.insert(BTreeSet::from([i]));
        }
        let mut stack: Vec<BTreeSet<usize>> = Vec::new();
        for facet in facets {
            for &i in &facet {
                if i >= v {
                    return Err(Error::InvalidArgument(format!(
                        "face references vertex index {i} out of range 0..{v}"
                    )));
                }
            }
            if !facet.is_empty() {
                stack.push(facet);
            }
        }
        while let Some(face) = stack.pop() {
            if !faces.insert(face.clone()) {
                continue;
            }
            if face.len() > 1 {
                for &i in &face {
                    let mut sub = face.clone();
                    sub.remove(&i);
                    stack.push(sub);
                }
            }
        }
        Ok(SimplicialComplex { vertices, faces })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[BTreeSet<usize>] {
        &self.vertices
    }

    /// Index of the vertex with the given label.
    pub fn vertex_index(&self, label: &BTreeSet<usize>) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn faces(&self) -> impl Iterator<Item = &BTreeSet<usize>> {
        self.faces.iter()
    }

    pub fn is_face(&self, t: &BTreeSet<usize>) -> bool {
        !t.is_empty() && self.faces.contains(t)
    }

    /// Inclusion-maximal faces.
    pub fn facets(&self) -> Vec<BTreeSet<usize>> {
        self.faces
            .iter()
            .filter(|f| {
                !self
                    .faces
                    .iter()
                    .any(|g| g.len() > f.len() && f.is_subset(g))
            })
            .cloned()
            .collect()
    }

    /// `dim = max |face| - 1`; the empty complex has dimension 0 here
    /// only by convention of an empty face list being rejected upstream.
    pub fn dim(&self) -> usize {
        self.faces
            .iter()
            .map(|f| f.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Vertex index sets of the connected components (two vertices are
    /// connected when they share a face), ordered by least vertex index.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let v = self.vertex_count();
        let mut parent: Vec<usize> = (0..v).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for face in &self.faces {
            let mut it = face.iter();
            if let Some(&first) = it.next() {
                for &other in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, other));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..v {
            let root = find(&mut parent, x);
            groups.entry(root).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    }

    /// The induced subcomplex on a set of vertex indices, keeping labels.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> SimplicialComplex {
        let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut vertices = Vec::new();
        for &i in keep {
            remap.insert(i, vertices.len());
            vertices.push(self.vertices[i].clone());
        }
        let faces: BTreeSet<BTreeSet<usize>> = self
            .faces
            .iter()
            .filter(|f| f.iter().all(|i| remap.contains_key(i)))
            .map(|f| f.iter().map(|i| remap[i]).collect())
            .collect();
        SimplicialComplex { vertices, faces }
    }

    /// Parse the complex file format: `vertices k`, one support per line
    /// as `{i,j,...}`, then `faces` and one face per line as 1-based
    /// vertex indices (facets suffice; closure is computed).
    pub fn parse(text: &str) -> Result<SimplicialComplex> {
        #[derive(PartialEq)]
        enum Mode {
            Header,
            Vertices(usize),
            Faces,
        }
        let mut mode = Mode::Header;
        let mut vertices: Vec<BTreeSet<usize>> = Vec::new();
        let mut facets: Vec<BTreeSet<usize>> = Vec::new();
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
            match mode {
                Mode::Header => {
                    let rest = line
                        .strip_prefix("vertices")
                        .ok_or_else(|| Error::parse(line_no, "expected header `vertices k`"))?;
                    let k: usize = rest
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(line_no, "malformed vertex count"))?;
                    mode = Mode::Vertices(k);
                }
                Mode::Vertices(k) => {
                    if line == "faces" {
                        if vertices.len() != k {
                            return Err(Error::parse(
                                line_no,
                                format!("expected {k} vertex lines, found {}", vertices.len()),
                            ));
                        }
                        mode = Mode::Faces;
                        continue;
                    }
                    let inner = line
                        .strip_prefix('{')
                        .and_then(|s| s.strip_suffix('}'))
                        .ok_or_else(|| {
                            Error::parse(line_no, format!("expected `{{i,j,...}}`, got `{line}`"))
                        })?;
                    let mut sup = BTreeSet::new();
                    for piece in inner.split(',') {
                        let v: usize = piece.trim().parse().map_err(|_| {
                            Error::parse(line_no, format!("malformed index `{piece}`"))
                        })?;
                        sup.insert(v);
                    }
                    vertices.push(sup);
                }
                Mode::Faces => {
                    let mut face = BTreeSet::new();
                    for piece in line.split_whitespace() {
                        let v: usize = piece.parse().map_err(|_| {
                            Error::parse(line_no, format!("malformed vertex index `{piece}`"))
                        })?;
                        if v == 0 || v > vertices.len() {
                            return Err(Error::parse(
                                line_no,
                                format!("vertex index {v} out of range 1..={}", vertices.len()),
                            ));
                        }
                        face.insert(v - 1);
                    }
                    facets.push(face);
                }
            }
        }
        match mode {
            Mode::Header => return Err(Error::parse(0, "missing `vertices k` header")),
            Mode::Vertices(k) => {
                return Err(Error::parse(
                    0,
                    format!(
                        "missing `faces` section (found {} of {k} vertex lines)",
                        vertices.len()
                    ),
                ))
            }
            Mode::Faces => {}
        }
        SimplicialComplex::new(vertices, facets)
    }

    /// Canonical file form listing the facets.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count());
        for v in &self.vertices {
            let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{{{}}}\n", inner.join(",")));
        }
        out.push_str("faces\n");
        for facet in self.facets() {
            let idx: Vec<String> = facet.iter().map(|i| (i + 1).to_string()).collect();
            out.push_str(&idx.join(" "));
            out.push('\n');
        }
        out
    }
}

/// The complex of a binomial edge ideal, built analytically: vertices are
/// the minimal supports, and the only positive-dimensional faces are the
/// per-edge pairs `{ {i, n+j}, {j, n+i} }`. Cross-edge pairs are excluded
/// by the coarse-grading argument: two congruent monomials with supports
/// of this shape force the same edge.
pub fn build_complex_edge_ideal(g: &Graph) -> Result<SimplicialComplex> {
    let n = g.n();
    let vertices = crate::edgeideal::t_min(g)?;
    let index: BTreeMap<&BTreeSet<usize>, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut facets = Vec::with_capacity(g.m());
    for (i, j) in g.edges() {
        let a = index[&BTreeSet::from([i, n + j])];
        let b = index[&BTreeSet::from([j, n + i])];
        facets.push(BTreeSet::from([a, b]));
    }
    SimplicialComplex::new(vertices, facets)
}

/// Is every pairwise difference of the monomials of `f` in the ideal?
/// Single monomials and binomials of the ideal qualify trivially.
pub fn is_j_complete(f: &Polynomial, j: &Ideal, cfg: &GbConfig) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    let monomials: Vec<&Monomial> = f.monomials().collect();
    if monomials.len() < 2 {
        return Ok(true);
    }
    let gb = buchberger(j, cfg)?;
    is_j_complete_with_gb(f, &gb)
}

pub fn is_j_complete_with_gb(f: &Polynomial, gb: &GroebnerBasis) -> Result<bool> {
    let monomials: Vec<&Monomial> = f.monomials().collect();
    for (a, &ma) in monomials.iter().enumerate() {
        for &mb in monomials.iter().skip(a + 1) {
            let diff = Polynomial::from_monomial(ma.clone(), BigRational::one())
                .sub(&Polynomial::from_monomial(mb.clone(), BigRational::one()))?;
            if !normal_form(&diff, gb)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Vertex indices of the complex whose label equals the support of some
/// monomial of `f`.
pub fn vertices_of_polynomial(f: &Polynomial, delta: &SimplicialComplex) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for m in f.monomials() {
        if let Some(i) = delta.vertex_index(&m.support()) {
            out.insert(i);
        }
    }
    out
}

/// The induced subcomplex of `delta` on the supports occurring in `f`.
pub fn delta_of_polynomial(f: &Polynomial, delta: &SimplicialComplex) -> SimplicialComplex {
    delta.induced(&vertices_of_polynomial(f, delta))
}

/// Do the given polynomials cover every vertex of the complex? A cheap
/// necessary condition for generating the radical.
pub fn is_spanning(fs: &[Polynomial], delta: &SimplicialComplex) -> bool {
    let mut covered: BTreeSet<usize> = BTreeSet::new();
    for f in fs {
        covered.extend(vertices_of_polynomial(f, delta));
    }
    covered.len() == delta.vertex_count()
}

/// A set of pairwise disjoint faces with dimensions restricted to `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatching {
    pub simplices: Vec<BTreeSet<usize>>,
    pub q: BTreeSet<usize>,
}

impl QMatching {
    pub fn card(&self) -> usize {
        self.simplices.len()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.simplices.iter().flatten().copied().collect()
    }

    /// Check the defining invariants against a complex.
    pub fn is_valid(&self, delta: &SimplicialComplex) -> bool {
        let mut seen = BTreeSet::new();
        for face in &self.simplices {
            if !delta.is_face(face) || !self.q.contains(&(face.len() - 1)) {
                return false;
            }
            for &v in face {
                if !seen.insert(v) {
                    return false;
                }
            }
        }
        true
    }
}

/// The matching invariant: first maximize the matched-vertex count over
/// all Q-matchings, then minimize the number of simplices among the
/// maximizers. Exact, per connected component (the invariant is additive
/// over components). Returns the value and a witness.
pub fn delta_q(delta: &SimplicialComplex, q: &BTreeSet<usize>) -> Result<(usize, QMatching)> {
    delta_q_capped(delta, q, DEFAULT_MAX_COMPONENT_VERTICES)
}

pub fn delta_q_capped(
    delta: &SimplicialComplex,
    q: &BTreeSet<usize>,
    max_component: usize,
) -> Result<(usize, QMatching)> {
    let mut total = 0usize;
    let mut witness: Vec<BTreeSet<usize>> = Vec::new();
    for component in delta.connected_components() {
        if component.len() > max_component {
            return Err(Error::CapExceeded(format!(
                "component with {} vertices above the exact-search cap {max_component}",
                component.len()
            )));
        }
        let (count, faces) = component_delta_q(delta, &component, q);
        total += count;
        witness.extend(faces);
    }
    Ok((
        total,
        QMatching {
            simplices: witness,
            q: q.clone(),
        },
    ))
}

/// Per-component exact search over disjoint face packings, memoized on
/// the remaining-vertex bitmask. Objective: lexicographic (max matched
/// vertices, min face count).
fn component_delta_q(
    delta: &SimplicialComplex,
    component: &[usize],
    q: &BTreeSet<usize>,
) -> (usize, Vec<BTreeSet<usize>>) {
    let pos: BTreeMap<usize, usize> = component.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let vset: BTreeSet<usize> = component.iter().copied().collect();
    // usable faces as bitmasks over component positions
    let faces: Vec<u64> = delta
        .faces()
        .filter(|f| q.contains(&(f.len() - 1)) && f.iter().all(|v| vset.contains(v)))
        .map(|f| f.iter().fold(0u64, |acc, v| acc | 1 << pos[v]))
        .collect();
    // memo: mask of still-usable vertices -> (max support, min count, choice)
    // choice: None = skip lowest vertex; Some(face) = take it
    let mut memo: HashMap<u64, (usize, usize, Option<u64>)> = HashMap::new();
    fn solve(
        mask: u64,
        faces: &[u64],
        memo: &mut HashMap<u64, (usize, usize, Option<u64>)>,
    ) -> (usize, usize) {
        if mask == 0 {
            return (0, 0);
        }
        if let Some(&(s, c, _)) = memo.get(&mask) {
            return (s, c);
        }
        let low = mask & mask.wrapping_neg();
        // option 1: leave the lowest remaining vertex unmatched
        let (mut best_s, mut best_c) = solve(mask & !low, faces, memo);
        let mut best_choice: Option<u64> = None;
        // option 2: match it with any usable face containing it
        for &face in faces {
            if face & low != 0 && face & !mask == 0 {
                let (s, c) = solve(mask & !face, faces, memo);
                let cand = (s + face.count_ones() as usize, c + 1);
                if cand.0 > best_s || (cand.0 == best_s && cand.1 < best_c) {
                    best_s = cand.0;
                    best_c = cand.1;
                    best_choice = Some(face);
                }
            }
        }
        memo.insert(mask, (best_s, best_c, best_choice));
        (best_s, best_c)
    }
    let full: u64 = if component.len() == 64 {
        u64::MAX
    } else {
        (1u64 << component.len()) - 1
    };
    let (_, count) = solve(full, &faces, &mut memo);
    // reconstruct the witness
    let mut chosen: Vec<BTreeSet<usize>> = Vec::new();
    let mut mask = full;
    while mask != 0 {
        match memo.get(&mask).and_then(|&(_, _, c)| c) {
            Some(face) => {
                chosen.push(
                    (0..component.len())
                        .filter(|k| face >> k & 1 == 1)
                        .map(|k| component[k])
                        .collect(),
                );
                mask &= !face;
            }
            None => {
                let low = mask & mask.wrapping_neg();
                mask &= !low;
            }
        }
    }
    (count, chosen)
}

/// The two covering numbers: `b` is the least number of simplices of
/// dimension at most one whose union is spanning, `r` the least number of
/// arbitrary simplices. Computed by exact set-cover search and checked
/// against the matching invariant, which they must equal.
pub fn b_and_r(delta: &SimplicialComplex) -> Result<(usize, usize)> {
    b_and_r_capped(delta, DEFAULT_MAX_COMPONENT_VERTICES)
}

pub fn b_and_r_capped(delta: &SimplicialComplex, max_component: usize) -> Result<(usize, usize)> {
    if delta.vertex_count() == 0 {
        return Err(Error::InvalidArgument("empty complex".into()));
    }
    let mut b = 0usize;
    let mut r = 0usize;
    for component in delta.connected_components() {
        if component.len() > max_component {
            return Err(Error::CapExceeded(format!(
                "component with {} vertices above the exact-search cap {max_component}",
                component.len()
            )));
        }
        b += component_cover(delta, &component, Some(1));
        r += component_cover(delta, &component, None);
    }
    let omega: BTreeSet<usize> = (0..=delta.dim()).collect();
    let low: BTreeSet<usize> = [0, 1].into_iter().filter(|&d| d <= delta.dim()).collect();
    let (delta_low, _) = delta_q_capped(delta, &low, max_component)?;
    let (delta_omega, _) = delta_q_capped(delta, &omega, max_component)?;
    assert_eq!(
        b, delta_low,
        "covering number b disagrees with the matching invariant"
    );
    assert_eq!(
        r, delta_omega,
        "covering number r disagrees with the matching invariant"
    );
    Ok((b, r))
}

/// Minimum number of faces (with optional dimension cap) covering every
/// vertex of the component. Faces may overlap.
fn component_cover(
    delta: &SimplicialComplex,
    component: &[usize],
    max_dim: Option<usize>,
) -> usize {
    let pos: BTreeMap<usize, usize> = component.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let vset: BTreeSet<usize> = component.iter().copied().collect();
    let faces: Vec<u64> = delta
        .faces()
        .filter(|f| max_dim.is_none_or(|d| f.len() <= d + 1) && f.iter().all(|v| vset.contains(v)))
        .map(|f| f.iter().fold(0u64, |acc, v| acc | 1 << pos[v]))
        .collect();
    let mut memo: HashMap<u64, usize> = HashMap::new();
    fn solve(uncovered: u64, faces: &[u64], memo: &mut HashMap<u64, usize>) -> usize {
        if uncovered == 0 {
            return 0;
        }
        if let Some(&c) = memo.get(&uncovered) {
            return c;
        }
        let low = uncovered & uncovered.wrapping_neg();
        let mut best = usize::MAX;
        for &face in faces {
            if face & low != 0 {
                best = best.min(1 + solve(uncovered & !face, faces, memo));
            }
        }
        memo.insert(uncovered, best);
        best
    }
    let full: u64 = if component.len() == 64 {
        u64::MAX
    } else {
        (1u64 << component.len()) - 1
    };
    solve(full, &faces, &mut memo)
}

/// Generic bounded-degree complex constructor for an arbitrary binomial
/// ideal: given the vertex supports, search all monomials of total degree
/// at most `max_degree` with those exact supports, bucket them by normal
/// form, and read the faces off the congruence classes.
///
/// Faces found are certain; missing faces would need witness monomials of
/// higher degree, so the result is "verified up to `max_degree`".
pub fn complex_from_ideal_bounded(
    tmin: &[BTreeSet<usize>],
    ideal: &Ideal,
    cfg: &GbConfig,
    max_degree: usize,
) -> Result<SimplicialComplex> {
    let gb = buchberger(ideal, cfg)?;
    let n_vars = ideal.n_vars();
    // normal form -> set of vertex indices realized in that class
    let mut classes: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    for (idx, support) in tmin.iter().enumerate() {
        for m in monomials_with_support(support, n_vars, max_degree)? {
            let nf = normal_form(&Polynomial::from_monomial(m, BigRational::one()), &gb)?;
            classes
                .entry(nf.to_string_with(&cfg.order))
                .or_default()
                .insert(idx);
        }
    }
    let facets: Vec<BTreeSet<usize>> = classes.into_values().collect();
    SimplicialComplex::new(tmin.to_vec(), facets)
}

/// Monomials with support exactly `support` and total degree at most
/// `max_degree`.
fn monomials_with_support(
    support: &BTreeSet<usize>,
    n_vars: usize,
    max_degree: usize,
) -> Result<Vec<Monomial>> {
    let vars: Vec<usize> = support.iter().copied().collect();
    if vars.len() > max_degree {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut exps = vec![1usize; vars.len()];
    loop {
        let total: usize = exps.iter().sum();
        if total <= max_degree {
            out.push(Monomial::from_pairs(
                vars.iter().copied().zip(exps.iter().copied()),
                n_vars,
            )?);
        }
        // advance mixed-radix with digit sums capped by max_degree
        let mut k = 0;
        loop {
            if k == exps.len() {
                return Ok(out);
            }
            exps[k] += 1;
            if exps.iter().sum::<usize>() <= max_degree {
                break;
            }
            exps[k] = 1;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edgeideal::build_edge_ideal;
    use crate::poly::parse_polynomial;

    fn diamond() -> Graph {
        Graph::new(4, [(1, 2), (2, 3), (1, 4), (3, 4), (1, 3)]).unwrap()
    }

    fn p(text: &str) -> Polynomial {
        parse_polynomial(text, 8).unwrap()
    }

    #[test]
    fn diamond_complex_is_five_disjoint_segments() {
        let delta = build_complex_edge_ideal(&diamond()).unwrap();
        assert_eq!(delta.vertex_count(), 10);
        assert_eq!(delta.dim(), 1);
        assert_eq!(delta.facets().len(), 5);
        assert_eq!(delta.connected_components().len(), 5);
        for comp in delta.connected_components() {
            assert_eq!(comp.len(), 2);
        }
    }

    #[test]
    fn small_complexes() {
        let k2 = Graph::new(2, [(1, 2)]).unwrap();
        let delta = build_complex_edge_ideal(&k2).unwrap();
        assert_eq!(delta.vertex_count(), 2);
        assert_eq!(delta.facets().len(), 1);

        let c3 = Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let delta = build_complex_edge_ideal(&c3).unwrap();
        assert_eq!(delta.vertex_count(), 6);
        assert_eq!(delta.connected_components().len(), 3);
    }

    #[test]
    fn triangle_complex_matches_bounded_congruence_search() {
        let c3 = Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let analytic = build_complex_edge_ideal(&c3).unwrap();
        let ei = build_edge_ideal(&c3).unwrap();
        let tmin = crate::edgeideal::t_min(&c3).unwrap();
        let searched =
            complex_from_ideal_bounded(&tmin, &ei.ideal, &GbConfig::default(), 4).unwrap();
        assert_eq!(analytic, searched);
    }

    #[test]
    fn j_completeness() {
        let ei = build_edge_ideal(&diamond()).unwrap();
        let cfg = GbConfig::default();
        // binomials of the ideal are complete
        assert!(is_j_complete(&p("x1*x6 - x2*x5"), &ei.ideal, &cfg).unwrap());
        // the paired certificate polynomial is not
        assert!(!is_j_complete(&p("x2*x7 - x3*x6 + x1*x8 - x4*x5"), &ei.ideal, &cfg).unwrap());
        // a monomial is vacuously complete
        assert!(is_j_complete(&p("x1*x6"), &ei.ideal, &cfg).unwrap());
    }

    #[test]
    fn induced_subcomplexes_of_polynomials() {
        let delta = build_complex_edge_ideal(&diamond()).unwrap();
        let sub = delta_of_polynomial(&p("x1*x6 - x2*x5"), &delta);
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(sub.facets().len(), 1);

        let sub = delta_of_polynomial(&p("x2*x7 - x3*x6 + x1*x8 - x4*x5"), &delta);
        assert_eq!(sub.vertex_count(), 4);
        assert_eq!(sub.connected_components().len(), 2);
        assert_eq!(sub.facets().len(), 2);

        let sub = delta_of_polynomial(&p("7"), &delta);
        assert_eq!(sub.vertex_count(), 0);
    }

    #[test]
    fn spanning_checks() {
        let delta = build_complex_edge_ideal(&diamond()).unwrap();
        let cert = vec![
            p("x1*x6 - x2*x5"),
            p("x2*x7 - x3*x6 + x1*x8 - x4*x5"),
            p("x3*x8 - x4*x7"),
            p("x1*x7 - x3*x5"),
        ];
        assert!(is_spanning(&cert, &delta));
        assert!(!is_spanning(&cert[..1], &delta));
        let gens: Vec<Polynomial> = build_edge_ideal(&diamond())
            .unwrap()
            .ideal
            .generators()
            .to_vec();
        assert!(is_spanning(&gens, &delta));
    }

    #[test]
    fn matching_invariant_examples() {
        let delta = build_complex_edge_ideal(&diamond()).unwrap();
        let omega: BTreeSet<usize> = [0, 1].into();
        let (value, witness) = delta_q(&delta, &omega).unwrap();
        assert_eq!(value, 5);
        assert!(witness.is_valid(&delta));
        assert_eq!(witness.support().len(), 10);

        // a single segment
        let seg = SimplicialComplex::new(
            vec![BTreeSet::from([1]), BTreeSet::from([2])],
            [BTreeSet::from([0, 1])],
        )
        .unwrap();
        assert_eq!(delta_q(&seg, &[0, 1].into()).unwrap().0, 1);

        // two isolated vertices, only dimension 1 allowed: empty matching
        let pts = SimplicialComplex::new(
            vec![BTreeSet::from([1]), BTreeSet::from([2])],
            std::iter::empty(),
        )
        .unwrap();
        let (value, witness) = delta_q(&pts, &[1].into()).unwrap();
        assert_eq!(value, 0);
        assert!(witness.simplices.is_empty());
    }

    #[test]
    fn covering_numbers() {
        let delta = build_complex_edge_ideal(&diamond()).unwrap();
        assert_eq!(b_and_r(&delta).unwrap(), (5, 5));

        // one solid triangle: r picks the 2-face, b needs an edge plus a vertex
        let tri = SimplicialComplex::new(
            vec![
                BTreeSet::from([1]),
                BTreeSet::from([2]),
                BTreeSet::from([3]),
            ],
            [BTreeSet::from([0, 1, 2])],
        )
        .unwrap();
        assert_eq!(b_and_r(&tri).unwrap(), (2, 1));

        let single = SimplicialComplex::new(vec![BTreeSet::from([9])], std::iter::empty()).unwrap();
        assert_eq!(b_and_r(&single).unwrap(), (1, 1));
    }

    #[test]
    fn matching_is_additive_over_components() {
        // segment + triangle + isolated vertex
        let delta = SimplicialComplex::new(
            (1..=6).map(|i| BTreeSet::from([i])).collect(),
            [BTreeSet::from([0, 1]), BTreeSet::from([2, 3, 4])],
        )
        .unwrap();
        let omega: BTreeSet<usize> = [0, 1, 2].into();
        let whole = delta_q(&delta, &omega).unwrap().0;
        let mut sum = 0;
        for comp in delta.connected_components() {
            let sub = delta.induced(&comp.iter().copied().collect());
            sum += delta_q(&sub, &omega).unwrap().0;
        }
        assert_eq!(whole, sum);
        assert_eq!(whole, 3);
    }

    #[test]
    fn file_round_trip() {
        let delta = build_complex_edge_ideal(&diamond()).unwrap();
        let text = delta.to_text();
        let again = SimplicialComplex::parse(&text).unwrap();
        assert_eq!(again, delta);
        assert!(SimplicialComplex::parse("faces\n1 2\n").is_err());
        assert!(SimplicialComplex::parse("vertices 1\n{1}\nfaces\n5\n").is_err());
        assert!(SimplicialComplex::parse("vertices 2\n{1}\n{2}\n").is_err());
        // isolated vertices are fine once the faces section is present
        assert!(SimplicialComplex::parse("vertices 2\n{1}\n{2}\nfaces\n").is_ok());
    }

    #[test]
    fn component_cap_is_enforced() {
        let delta = SimplicialComplex::new(
            (1..=3).map(|i| BTreeSet::from([i])).collect(),
            [BTreeSet::from([0, 1, 2])],
        )
        .unwrap();
        assert!(matches!(
            delta_q_capped(&delta, &[0, 1].into(), 2),
            Err(Error::CapExceeded(_))
        ));
    }

    /// Enumerate every Q-matching outright: maximize matched vertices,
    /// then minimize the face count among the maximizers.
    fn delta_q_brute_force(delta: &SimplicialComplex, q: &BTreeSet<usize>) -> usize {
        let faces: Vec<BTreeSet<usize>> = delta
            .faces()
            .filter(|f| q.contains(&(f.len() - 1)))
            .cloned()
            .collect();
        assert!(faces.len() <= 20, "oracle limited to small complexes");
        let mut best_support = 0usize;
        let mut best_count = 0usize;
        for mask in 0u64..(1 << faces.len()) {
            let chosen: Vec<&BTreeSet<usize>> = faces
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, f)| f)
                .collect();
            let mut seen: BTreeSet<usize> = BTreeSet::new();
            let mut disjoint = true;
            for f in &chosen {
                for &v in f.iter() {
                    if !seen.insert(v) {
                        disjoint = false;
                    }
                }
            }
            if !disjoint {
                continue;
            }
            let support = seen.len();
            let count = chosen.len();
            if support > best_support || (support == best_support && count < best_count) {
                best_support = support;
                best_count = count;
            }
        }
        best_count
    }

    #[test]
    fn matching_search_agrees_with_exhaustive_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let mut cases: Vec<SimplicialComplex> = vec![
            build_complex_edge_ideal(&diamond()).unwrap(),
            SimplicialComplex::new(
                (1..=3).map(|i| BTreeSet::from([i])).collect(),
                [BTreeSet::from([0, 1, 2])],
            )
            .unwrap(),
        ];
        // random complexes on up to 6 vertices with a handful of facets
        for _ in 0..12 {
            let v = rng.gen_range(3..=6);
            let facet_count = rng.gen_range(1..=3);
            let facets: Vec<BTreeSet<usize>> = (0..facet_count)
                .map(|_| {
                    let size = rng.gen_range(2..=3.min(v));
                    let mut f = BTreeSet::new();
                    while f.len() < size {
                        f.insert(rng.gen_range(0..v));
                    }
                    f
                })
                .collect();
            cases.push(
                SimplicialComplex::new((1..=v).map(|i| BTreeSet::from([i])).collect(), facets)
                    .unwrap(),
            );
        }
        for delta in &cases {
            for q in [
                (0..=delta.dim()).collect::<BTreeSet<usize>>(),
                BTreeSet::from([0, 1]),
                BTreeSet::from([1]),
            ] {
                let q: BTreeSet<usize> = q.into_iter().filter(|&d| d <= delta.dim()).collect();
                if q.is_empty() {
                    continue;
                }
                let (value, witness) = delta_q(delta, &q).unwrap();
                assert!(witness.is_valid(delta));
                assert_eq!(value, witness.card());
                assert_eq!(value, delta_q_brute_force(delta, &q), "q = {q:?}");
            }
        }
    }
}
