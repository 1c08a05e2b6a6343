//! Finite connected multigraphs with loops: cuts, circuit components and
//! contraction.
//!
//! Vertices and edges carry string ids but are addressed by their position
//! in the input order; every edge-set result is reported as sorted positions.

use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashMap, HashSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub ends: (usize, usize),
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }
}

/// A connected multigraph; loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropicalGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// A set of edges whose removal leaves exactly two connected components, each
/// edge joining the two. Stored as sorted edge positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cut {
    edges: Vec<usize>,
}

impl Cut {
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut x = x;
        while self.0[x] != root {
            let next = self.0[x];
            self.0[x] = root;
            x = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`, keeping the smaller root.
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        let (lo, hi) = (a.min(b), a.max(b));
        self.0[hi] = lo;
    }
}

impl TropicalGraph {
    /// Builds a graph from vertex ids and `(edge id, end, end)` triples.
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String, String)>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (id, a, b) in edges {
            if index.contains_key(&id) || !seen.insert(id.clone()) {
                return Err(Error::DuplicateId(id));
            }
            let lookup = |v: &String| index.get(v).copied().ok_or_else(|| Error::UnknownVertex(v.clone()));
            let ends = (lookup(&a)?, lookup(&b)?);
            out.push(Edge { id, ends });
        }
        Self::checked(vertices, out)
    }

    /// Builds a graph on vertices `v1..vn` with edges `e1..em` between the
    /// given vertex positions.
    pub fn from_edge_list(n: usize, ends: &[(usize, usize)]) -> Result<Self> {
        let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::with_capacity(ends.len());
        for (i, &(a, b)) in ends.iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::UnknownVertex(format!("v{}", a.max(b) + 1)));
            }
            edges.push(Edge { id: format!("e{}", i + 1), ends: (a, b) });
        }
        Self::checked(vertices, edges)
    }

    fn checked(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let g = TropicalGraph { vertices, edges };
        let mut uf = UnionFind::new(g.vertices.len());
        for e in &g.edges {
            uf.union(e.ends.0, e.ends.1);
        }
        if (0..g.vertices.len()).any(|v| uf.find(v) != 0) {
            return Err(Error::DisconnectedGraph);
        }
        Ok(g)
    }

    /// The `n`-gon; `n = 1` is a single loop and `n = 2` two parallel edges.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 1);
        let ends: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edge_list(n, &ends).expect("cycle is connected")
    }

    /// Two vertices joined by `k` parallel edges.
    pub fn theta(k: usize) -> Self {
        Self::from_edge_list(2, &vec![(0, 1); k]).expect("theta is connected")
    }

    /// A path with `k` edges.
    pub fn path(k: usize) -> Self {
        let ends: Vec<(usize, usize)> = (0..k).map(|i| (i, i + 1)).collect();
        Self::from_edge_list(k + 1, &ends).expect("path is connected")
    }

    /// One vertex carrying `k` loops.
    pub fn bouquet(k: usize) -> Self {
        Self::from_edge_list(1, &vec![(0, 0); k]).expect("bouquet is connected")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    /// Resolves edge ids to positions.
    pub fn edge_indices<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>> {
        ids.iter()
            .map(|id| self.edge_index(id.as_ref()).ok_or_else(|| Error::UnknownEdge(id.as_ref().to_string())))
            .collect()
    }

    fn neighbour_masks(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.vertices.len()];
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            let (a, b) = e.ends;
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    fn induced_connected(adj: &[u64], set: u64) -> bool {
        if set == 0 {
            return false;
        }
        let start = set.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & set & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == set
    }

    /// All cuts, sorted lexicographically by their edge positions.
    ///
    /// Cuts correspond to bipartitions of the vertices into two connected
    /// sides; the enumeration runs over vertex subsets, so it is meant for
    /// graphs with at most a few dozen vertices.
    pub fn enumerate_cuts(&self) -> Vec<Cut> {
        let n = self.vertices.len();
        assert!(n <= 32, "cut enumeration supports at most 32 vertices");
        let adj = self.neighbour_masks();
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut cuts = Vec::new();
        // Vertex 0 is always on side A.
        for rest in 0..(1u64 << (n - 1)) {
            let side_a = 1 | (rest << 1);
            let side_b = full & !side_a;
            if side_b == 0 || !Self::induced_connected(&adj, side_a) || !Self::induced_connected(&adj, side_b) {
                continue;
            }
            let edges: Vec<usize> = (0..self.edges.len())
                .filter(|&i| {
                    let (a, b) = self.edges[i].ends;
                    (side_a >> a & 1) != (side_a >> b & 1)
                })
                .collect();
            cuts.push(Cut { edges });
        }
        cuts.sort();
        cuts
    }

    /// For a cut, marks the vertices on the side not containing vertex 0.
    pub fn far_side(&self, cut: &Cut) -> Vec<bool> {
        let mut uf = UnionFind::new(self.vertices.len());
        for (i, e) in self.edges.iter().enumerate() {
            if !cut.contains(i) {
                uf.union(e.ends.0, e.ends.1);
            }
        }
        (0..self.vertices.len()).map(|v| uf.find(v) != 0).collect()
    }

    /// Whether `edges` is a cut of this graph.
    pub fn is_cut(&self, edges: &[usize]) -> bool {
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() || sorted.iter().any(|&e| e >= self.edges.len()) {
            return false;
        }
        let cut = Cut { edges: sorted };
        let side = self.far_side(&cut);
        let mut uf = UnionFind::new(self.vertices.len());
        for (i, e) in self.edges.iter().enumerate() {
            if !cut.contains(i) {
                uf.union(e.ends.0, e.ends.1);
            }
        }
        let roots: BTreeSet<usize> = (0..self.vertices.len()).map(|v| uf.find(v)).collect();
        roots.len() == 2
            && cut.edges.iter().all(|&i| {
                let (a, b) = self.edges[i].ends;
                side[a] != side[b]
            })
    }

    /// Partition of the edges into maximal classes in which any two edges lie
    /// on a common circuit: the biconnected blocks, with bridges and loops as
    /// singletons. Classes are sorted, and ordered by their first edge.
    pub fn circuit_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                blocks.push(vec![i]);
            } else {
                adj[e.ends.0].push((i, e.ends.1));
                adj[e.ends.1].push((i, e.ends.0));
            }
        }
        const UNSEEN: usize = usize::MAX;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut clock = 0;
        let mut stack: Vec<usize> = Vec::new();
        // Iterative DFS frames: (vertex, edge to parent, next neighbour slot).
        let mut frames: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != UNSEEN {
                continue;
            }
            disc[root] = clock;
            low[root] = clock;
            clock += 1;
            frames.push((root, UNSEEN, 0));
            while let Some(&mut (u, parent_edge, ref mut slot)) = frames.last_mut() {
                if let Some(&(e, w)) = adj[u].get(*slot) {
                    *slot += 1;
                    if e == parent_edge {
                        continue;
                    }
                    if disc[w] == UNSEEN {
                        stack.push(e);
                        disc[w] = clock;
                        low[w] = clock;
                        clock += 1;
                        frames.push((w, e, 0));
                    } else if disc[w] < disc[u] {
                        stack.push(e);
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    frames.pop();
                    if let Some(&(p, _, _)) = frames.last() {
                        low[p] = low[p].min(low[u]);
                        if low[u] >= disc[p] {
                            let mut block = Vec::new();
                            while let Some(f) = stack.pop() {
                                block.push(f);
                                if f == parent_edge {
                                    break;
                                }
                            }
                            blocks.push(block);
                        }
                    }
                }
            }
        }
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort();
        blocks
    }

    /// True iff every circuit component is a single edge.
    pub fn is_tree_with_loops(&self) -> bool {
        self.circuit_components().iter().all(|c| c.len() == 1)
    }

    /// Contracts the edges at positions `s`. Each class of identified
    /// vertices keeps the id of its first vertex; contracted loops vanish.
    pub fn contract(&self, s: &[usize]) -> Result<TropicalGraph> {
        if let Some(&bad) = s.iter().find(|&&e| e >= self.edges.len()) {
            return Err(Error::UnknownEdge(format!("#{bad}")));
        }
        let removed: BTreeSet<usize> = s.iter().copied().collect();
        let mut uf = UnionFind::new(self.vertices.len());
        for &e in &removed {
            let (a, b) = self.edges[e].ends;
            uf.union(a, b);
        }
        let mut new_index = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for v in 0..self.vertices.len() {
            if uf.find(v) == v {
                new_index[v] = vertices.len();
                vertices.push(self.vertices[v].clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, e)| Edge { id: e.id.clone(), ends: (new_index[uf.find(e.ends.0)], new_index[uf.find(e.ends.1)]) })
            .collect();
        Ok(TropicalGraph { vertices, edges })
    }

    /// Contracts the edges with the given ids.
    pub fn contract_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<TropicalGraph> {
        let s = self.edge_indices(ids)?;
        self.contract(&s)
    }

    /// Positions of the edges of `self` that survive in `contract(s)`, in order.
    pub fn surviving_edges(&self, s: &[usize]) -> Vec<usize> {
        (0..self.edges.len()).filter(|e| !s.contains(e)).collect()
    }
}

type Shape = (usize, Vec<(usize, usize)>);

fn normalise(pairs: &mut [(usize, usize)]) {
    for p in pairs.iter_mut() {
        if p.0 > p.1 {
            *p = (p.1, p.0);
        }
    }
    pairs.sort_unstable();
}

/// Canonical form under vertex relabelling. Vertices are first split into
/// classes by an invariant, and only relabellings respecting the class order
/// are tried.
fn canonical_shape(n: usize, edges: &[(usize, usize)]) -> Shape {
    let mut degree = vec![0usize; n];
    let mut loops = vec![0usize; n];
    for &(a, b) in edges {
        if a == b {
            loops[a] += 1;
        } else {
            degree[a] += 1;
            degree[b] += 1;
        }
    }
    let invariant: Vec<(usize, usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nb: Vec<usize> = edges
                .iter()
                .filter(|&&(a, b)| a != b && (a == v || b == v))
                .map(|&(a, b)| if a == v { degree[b] } else { degree[a] })
                .collect();
            nb.sort_unstable();
            (degree[v], loops[v], nb)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| invariant[a].cmp(&invariant[b]));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if invariant[c[0]] == invariant[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut label = vec![0usize; n];
    let mut perms: Vec<Vec<usize>> = classes.clone();
    loop {
        let mut next = 0;
        for class in &perms {
            for &v in class {
                label[v] = next;
                next += 1;
            }
        }
        let mut relabelled: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (label[a], label[b])).collect();
        normalise(&mut relabelled);
        if best.as_ref().is_none_or(|b| relabelled < *b) {
            best = Some(relabelled);
        }
        if !advance(&mut perms) {
            break;
        }
    }
    (n, best.unwrap_or_default())
}

/// Steps a product of per-class permutations; false after the last one.
fn advance(perms: &mut [Vec<usize>]) -> bool {
    for p in perms.iter_mut().rev() {
        if next_permutation(p) {
            return true;
        }
    }
    false
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every connected multigraph (loops and parallel edges allowed) with at most
/// `max_edges` edges, one per isomorphism class, ordered by edge count and
/// then canonical form. Includes the single vertex without edges.
pub fn small_multigraphs(max_edges: usize) -> Vec<TropicalGraph> {
    let mut level: BTreeSet<Shape> = BTreeSet::new();
    level.insert((1, Vec::new()));
    let mut all: Vec<Shape> = level.iter().cloned().collect();
    for _ in 0..max_edges {
        let mut next = BTreeSet::new();
        for (n, edges) in &level {
            let n = *n;
            let mut extensions: Vec<(usize, (usize, usize))> = Vec::new();
            for a in 0..n {
                for b in a..n {
                    extensions.push((n, (a, b)));
                }
                extensions.push((n + 1, (a, n)));
            }
            for (m, e) in extensions {
                let mut grown = edges.clone();
                grown.push(e);
                next.insert(canonical_shape(m, &grown));
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all.into_iter()
        .map(|(n, edges)| TropicalGraph::from_edge_list(n, &edges).expect("generated graphs are connected"))
        .collect()
}
