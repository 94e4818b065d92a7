//! Simple undirected graphs on `1..=n` and the graph computations the
//! rank engine consumes: components under vertex deletion, vertex
//! connectivity and recognition of the special families (with verified
//! embeddings, since certificate generation relabels proof patterns onto
//! the actual graph).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A finite simple graph with vertices `1..=n`. Edges are stored as
/// ordered pairs `(i, j)` with `i < j`. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidArgument(format!("loop at vertex {a}")));
            }
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidArgument(format!(
                    "edge {{{a},{b}}} out of range 1..={n}"
                )));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate edge {{{},{}}}",
                    e.0, e.1
                )));
            }
        }
        Ok(Graph { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in increasing lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * (self.n - 1) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components_after_deletion(&BTreeSet::new()).len() == 1
    }

    /// Connected components of the graph obtained by deleting the
    /// vertices in `s`, as a deterministic partition (components ordered
    /// by least vertex).
    pub fn components_after_deletion(&self, s: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut seen: BTreeSet<usize> = s.clone();
        let mut components = Vec::new();
        for start in 1..=self.n {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for w in self.neighbors(v) {
                    if !seen.contains(&w) {
                        seen.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            components.push(comp);
        }
        components
    }

    /// `c(S)`: the number of connected components after deleting `s`.
    pub fn component_count(&self, s: &BTreeSet<usize>) -> usize {
        self.components_after_deletion(s).len()
    }

    /// Vertex connectivity, with the complete-graph convention `n - 1`.
    /// Computed by max-flow on the vertex-split digraph.
    pub fn vertex_connectivity(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        if self.is_complete() {
            return Ok(self.n.saturating_sub(1));
        }
        let mut best = self.n - 1;
        for s in 1..=self.n {
            for t in (s + 1)..=self.n {
                if self.has_edge(s, t) {
                    continue;
                }
                best = best.min(self.local_connectivity(s, t));
            }
        }
        Ok(best)
    }

    /// Maximum number of internally vertex-disjoint s-t paths (Menger),
    /// for non-adjacent s, t.
    fn local_connectivity(&self, s: usize, t: usize) -> usize {
        // node 2v = v_in, 2v+1 = v_out; capacities on a dense matrix
        let size = 2 * (self.n + 1);
        let inf = self.n as i64 + 10;
        let mut cap = vec![vec![0i64; size]; size];
        for v in 1..=self.n {
            cap[2 * v][2 * v + 1] = if v == s || v == t { inf } else { 1 };
        }
        for &(a, b) in &self.edges {
            cap[2 * a + 1][2 * b] = inf;
            cap[2 * b + 1][2 * a] = inf;
        }
        let (source, sink) = (2 * s + 1, 2 * t);
        let mut flow = 0i64;
        loop {
            // BFS augmenting path
            let mut parent = vec![usize::MAX; size];
            parent[source] = source;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                for v in 0..size {
                    if parent[v] == usize::MAX && cap[u][v] > 0 {
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if parent[sink] == usize::MAX {
                break;
            }
            let mut bottleneck = i64::MAX;
            let mut v = sink;
            while v != source {
                let u = parent[v];
                bottleneck = bottleneck.min(cap[u][v]);
                v = u;
            }
            let mut v = sink;
            while v != source {
                let u = parent[v];
                cap[u][v] -= bottleneck;
                cap[v][u] += bottleneck;
                v = u;
            }
            flow += bottleneck;
        }
        flow as usize
    }

    /// All triangles as ascending vertex triples, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for a in 1..=self.n {
            let na = self.neighbors(a);
            for &b in na.iter().filter(|&&b| b > a) {
                for &c in na.iter().filter(|&&c| c > b) {
                    if self.has_edge(b, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Parse the graph file format: optional `#` comments, a first data
    /// line `n m`, then `m` lines `i j` (1-based).
    pub fn parse(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut edge_lines = 0usize;
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
            let nums: Vec<&str> = line.split_whitespace().collect();
            if nums.len() != 2 {
                return Err(Error::parse(
                    line_no,
                    format!("expected two integers, got `{line}`"),
                ));
            }
            let a: usize = nums[0]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("malformed integer `{}`", nums[0])))?;
            let b: usize = nums[1]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("malformed integer `{}`", nums[1])))?;
            match header {
                None => {
                    header = Some((a, b));
                }
                Some((n, m)) => {
                    edge_lines += 1;
                    if edge_lines > m {
                        return Err(Error::parse(line_no, format!("more than {m} edge lines")));
                    }
                    if a == b {
                        return Err(Error::parse(line_no, format!("loop at vertex {a}")));
                    }
                    if a == 0 || b == 0 || a > n || b > n {
                        return Err(Error::parse(
                            line_no,
                            format!("edge {{{a},{b}}} out of range 1..={n}"),
                        ));
                    }
                    let e = (a.min(b), a.max(b));
                    if edges.contains(&e) {
                        return Err(Error::parse(
                            line_no,
                            format!("duplicate edge {{{},{}}}", e.0, e.1),
                        ));
                    }
                    edges.push(e);
                }
            }
        }
        let (n, m) = header.ok_or_else(|| Error::parse(0, "missing `n m` header line"))?;
        if edges.len() != m {
            return Err(Error::parse(
                0,
                format!("header promises {m} edges, found {}", edges.len()),
            ));
        }
        Graph::new(n, edges)
    }

    /// Canonical file form: `n m` then edges in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for (a, b) in self.edges() {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Recognized graph family, with the verified embedding data needed to
/// relabel certificate patterns onto the concrete graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    Complete,
    Cycle,
    /// Disjoint triangles chained by single paths of length `>= 2`;
    /// `paths[i]` is the full vertex sequence from a vertex of
    /// `triangles[i]` to a vertex of `triangles[i+1]`.
    TriangleChain {
        triangles: Vec<[usize; 3]>,
        paths: Vec<Vec<usize>>,
    },
    /// Connected, `m = n`, unique cycle of length 3, `n >= 4`.
    UnicyclicTriangle {
        triangle: [usize; 3],
        /// An edge from a triangle vertex to a vertex outside it.
        outside_edge: (usize, usize),
    },
    /// Two vertex-disjoint triangles joined by (at least) two bridges;
    /// the two recorded bridges run from `t1` to `t2`.
    DoubleTriangleBridges {
        t1: [usize; 3],
        t2: [usize; 3],
        bridges: [(usize, usize); 2],
        shared_vertex: Option<usize>,
    },
    /// Some triangle exists and `n >= 4`.
    HasTriangle {
        triangle: [usize; 3],
        outside_edge: (usize, usize),
    },
    Generic,
}

impl FamilyTag {
    pub fn kind(&self) -> &'static str {
        match self {
            FamilyTag::Complete => "complete",
            FamilyTag::Cycle => "cycle",
            FamilyTag::TriangleChain { .. } => "triangle_chain",
            FamilyTag::UnicyclicTriangle { .. } => "unicyclic_triangle",
            FamilyTag::DoubleTriangleBridges { .. } => "double_triangle_bridges",
            FamilyTag::HasTriangle { .. } => "has_triangle",
            FamilyTag::Generic => "generic",
        }
    }
}

/// Classify `g` into the most specific family, returning a verified
/// embedding. Priority: complete > cycle > triangle_chain >
/// unicyclic_triangle > double_triangle_bridges > has_triangle > generic.
pub fn recognize_family(g: &Graph) -> Result<FamilyTag> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.is_complete() {
        return Ok(FamilyTag::Complete);
    }
    if g.n() >= 3 && (1..=g.n()).all(|v| g.degree(v) == 2) {
        return Ok(FamilyTag::Cycle);
    }
    if let Some(tag) = recognize_triangle_chain(g) {
        return Ok(tag);
    }
    if let Some(tag) = recognize_unicyclic_triangle(g) {
        return Ok(tag);
    }
    if let Some(tag) = recognize_double_triangle(g) {
        return Ok(tag);
    }
    if g.n() >= 4 {
        if let Some(tag) = recognize_has_triangle(g) {
            return Ok(tag);
        }
    }
    Ok(FamilyTag::Generic)
}

fn recognize_has_triangle(g: &Graph) -> Option<FamilyTag> {
    for triangle in g.triangles() {
        let tset: BTreeSet<usize> = triangle.iter().copied().collect();
        for &a in &triangle {
            if let Some(&d) = g.neighbors(a).iter().find(|v| !tset.contains(v)) {
                return Some(FamilyTag::HasTriangle {
                    triangle,
                    outside_edge: (a, d),
                });
            }
        }
    }
    None
}

fn recognize_unicyclic_triangle(g: &Graph) -> Option<FamilyTag> {
    if g.m() != g.n() || g.n() < 4 {
        return None;
    }
    // peel leaves; the 2-core is the unique cycle
    let mut degree: BTreeMap<usize, usize> = (1..=g.n()).map(|v| (v, g.degree(v))).collect();
    let mut removed: BTreeSet<usize> = BTreeSet::new();
    let mut queue: VecDeque<usize> = degree
        .iter()
        .filter(|&(_, &d)| d == 1)
        .map(|(&v, _)| v)
        .collect();
    while let Some(v) = queue.pop_front() {
        if removed.contains(&v) {
            continue;
        }
        removed.insert(v);
        for w in g.neighbors(v) {
            if removed.contains(&w) {
                continue;
            }
            let d = degree.get_mut(&w).expect("vertex");
            *d -= 1;
            if *d == 1 {
                queue.push_back(w);
            }
        }
    }
    let cycle: Vec<usize> = (1..=g.n()).filter(|v| !removed.contains(v)).collect();
    if cycle.len() != 3 {
        return None;
    }
    let triangle = [cycle[0], cycle[1], cycle[2]];
    let tset: BTreeSet<usize> = cycle.iter().copied().collect();
    for &a in &triangle {
        if let Some(&d) = g.neighbors(a).iter().find(|v| !tset.contains(v)) {
            return Some(FamilyTag::UnicyclicTriangle {
                triangle,
                outside_edge: (a, d),
            });
        }
    }
    None
}

fn recognize_double_triangle(g: &Graph) -> Option<FamilyTag> {
    let triangles = g.triangles();
    for (k1, &t1) in triangles.iter().enumerate() {
        let s1: BTreeSet<usize> = t1.iter().copied().collect();
        for &t2 in triangles.iter().skip(k1 + 1) {
            let s2: BTreeSet<usize> = t2.iter().copied().collect();
            if !s1.is_disjoint(&s2) {
                continue;
            }
            let bridges: Vec<(usize, usize)> = g
                .edges()
                .filter_map(|(a, b)| {
                    if s1.contains(&a) && s2.contains(&b) {
                        Some((a, b))
                    } else if s1.contains(&b) && s2.contains(&a) {
                        Some((b, a))
                    } else {
                        None
                    }
                })
                .collect();
            if bridges.len() >= 2 {
                let two = [bridges[0], bridges[1]];
                let shared_vertex = if two[0].0 == two[1].0 {
                    Some(two[0].0)
                } else if two[0].1 == two[1].1 {
                    Some(two[0].1)
                } else {
                    None
                };
                return Some(FamilyTag::DoubleTriangleBridges {
                    t1,
                    t2,
                    bridges: two,
                    shared_vertex,
                });
            }
        }
    }
    None
}

fn recognize_triangle_chain(g: &Graph) -> Option<FamilyTag> {
    let triangles = g.triangles();
    let k = triangles.len();
    if k == 0 {
        return None;
    }
    // triangles must be pairwise vertex-disjoint
    let mut triangle_of: BTreeMap<usize, usize> = BTreeMap::new();
    for (idx, t) in triangles.iter().enumerate() {
        for &v in t {
            if triangle_of.insert(v, idx).is_some() {
                return None;
            }
        }
    }
    let triangle_edges: BTreeSet<(usize, usize)> = triangles
        .iter()
        .flat_map(|t| [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])])
        .collect();
    // all remaining edges must form simple paths between triangles
    let rest: BTreeSet<(usize, usize)> =
        g.edges().filter(|e| !triangle_edges.contains(e)).collect();
    if k == 1 {
        return if rest.is_empty() && g.n() == 3 {
            Some(FamilyTag::TriangleChain {
                triangles,
                paths: Vec::new(),
            })
        } else {
            None
        };
    }
    let rest_neighbors = |v: usize| -> Vec<usize> {
        rest.iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    };
    // internal path vertices: not on a triangle, degree exactly 2
    for v in 1..=g.n() {
        if !triangle_of.contains_key(&v) && g.degree(v) != 2 {
            return None;
        }
    }
    // walk each path from a triangle attachment; every path is walked
    // once from each end
    let mut used_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut links: Vec<(usize, usize, Vec<usize>)> = Vec::new(); // (triangle idx, triangle idx, path vertices)
    for (idx, t) in triangles.iter().enumerate() {
        for &start in t {
            for first in rest_neighbors(start) {
                let e0 = (start.min(first), start.max(first));
                let mut path = vec![start, first];
                used_edges.insert(e0);
                let mut prev = start;
                let mut cur = first;
                while !triangle_of.contains_key(&cur) {
                    let next: Vec<usize> = rest_neighbors(cur)
                        .into_iter()
                        .filter(|&w| w != prev)
                        .collect();
                    if next.len() != 1 {
                        return None;
                    }
                    let nxt = next[0];
                    used_edges.insert((cur.min(nxt), cur.max(nxt)));
                    path.push(nxt);
                    prev = cur;
                    cur = nxt;
                }
                let other = triangle_of[&cur];
                if other == idx {
                    return None; // path loops back to the same triangle
                }
                if path.len() < 3 {
                    return None; // a direct bridge has length 1 < 2
                }
                links.push((idx, other, path));
            }
        }
    }
    if used_edges.len() != rest.len() {
        return None;
    }
    // each unordered link appears twice (walked from both ends)
    if links.len() != 2 * (k - 1) {
        return None;
    }
    let mut seen_pairs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (a, b, path) in &links {
        let key = ((*a).min(*b), (*a).max(*b));
        match seen_pairs.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(path.clone());
            }
            std::collections::btree_map::Entry::Occupied(e) => {
                let mut rev = path.clone();
                rev.reverse();
                if *e.get() != rev {
                    return None; // two distinct paths between the same triangles
                }
            }
        }
    }
    if seen_pairs.len() != k - 1 {
        return None;
    }
    // the triangle adjacency must be a simple path; find the chain order
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in seen_pairs.keys() {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|v| v.len() > 2) {
        return None;
    }
    let ends: Vec<usize> = (0..k)
        .filter(|i| adj.get(i).map_or(0, |v| v.len()) == 1)
        .collect();
    if ends.len() != 2 {
        return None;
    }
    // deterministic orientation: start from the end triangle with the
    // smaller least vertex
    let start = *ends
        .iter()
        .min_by_key(|&&i| triangles[i][0])
        .expect("two ends");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    while order.len() < k {
        let cur = *order.last().expect("nonempty");
        let next = adj[&cur].iter().copied().find(|&x| x != prev)?;
        prev = cur;
        order.push(next);
    }
    let mut chain_triangles = Vec::with_capacity(k);
    let mut chain_paths = Vec::with_capacity(k - 1);
    for (pos, &idx) in order.iter().enumerate() {
        chain_triangles.push(triangles[idx]);
        if pos + 1 < k {
            let nxt = order[pos + 1];
            let key = (idx.min(nxt), idx.max(nxt));
            let mut path = seen_pairs[&key].clone();
            // orient the stored path from this triangle towards the next
            if triangle_of[&path[0]] != idx {
                path.reverse();
            }
            chain_paths.push(path);
        }
    }
    Some(FamilyTag::TriangleChain {
        triangles: chain_triangles,
        paths: chain_paths,
    })
}

/// The triangle-plus-trees decomposition of a unicyclic graph whose
/// unique cycle is a triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnicyclicDecomposition {
    pub triangle: [usize; 3],
    /// For each triangle vertex with attached forest: the tree vertices
    /// reachable without crossing the triangle (root excluded).
    pub trees: Vec<AttachedTree>,
    /// Condition: attached trees are paths hanging at pairwise distinct
    /// triangle vertices. Equivalently every off-triangle vertex has
    /// degree at most 2 and every triangle vertex degree at most 3.
    pub paths_at_distinct_vertices: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachedTree {
    pub root: usize,
    pub vertices: Vec<usize>,
    pub is_path: bool,
}

pub fn unicyclic_path_decomposition(g: &Graph) -> Result<UnicyclicDecomposition> {
    let tag = recognize_family(g)?;
    let triangle = match tag {
        FamilyTag::UnicyclicTriangle { triangle, .. } => triangle,
        other => {
            return Err(Error::FamilyMismatch(format!(
                "expected unicyclic_triangle, recognized {}",
                other.kind()
            )))
        }
    };
    let tset: BTreeSet<usize> = triangle.iter().copied().collect();
    let mut trees = Vec::new();
    let mut condition = true;
    for &root in &triangle {
        let outside: Vec<usize> = g
            .neighbors(root)
            .into_iter()
            .filter(|v| !tset.contains(v))
            .collect();
        if outside.is_empty() {
            continue;
        }
        // collect the whole attached tree
        let mut vertices = Vec::new();
        let mut queue: VecDeque<usize> = outside.iter().copied().collect();
        let mut seen: BTreeSet<usize> = tset.clone();
        while let Some(v) = queue.pop_front() {
            if !seen.insert(v) {
                continue;
            }
            vertices.push(v);
            for w in g.neighbors(v) {
                if !seen.contains(&w) {
                    queue.push_back(w);
                }
            }
        }
        vertices.sort();
        // a path attached at the root: root has one tree edge and every
        // tree vertex has degree <= 2 in g
        let is_path = outside.len() == 1 && vertices.iter().all(|&v| g.degree(v) <= 2);
        if !is_path {
            condition = false;
        }
        trees.push(AttachedTree {
            root,
            vertices,
            is_path,
        });
    }
    Ok(UnicyclicDecomposition {
        triangle,
        trees,
        paths_at_distinct_vertices: condition,
    })
}
