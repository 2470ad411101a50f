//! Undirected multigraphs with loops, and their span-colored variant.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::refine::Structure;

/// Graphs above this size are refused by [`MultiGraph::automorphisms`].
pub const AUTOMORPHISM_BOUND: usize = 64;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Span color of a nerve edge: the collar side holding the apex corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Span {
    X,
    Y,
}

impl Span {
    pub fn swap(self) -> Span {
        match self {
            Span::X => Span::Y,
            Span::Y => Span::X,
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Span::X => "x",
            Span::Y => "y",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    pub graph: MultiGraph,
    pub colors: Vec<Span>,
}

/// Group generators as vertex permutations, with the group order.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub generators: Vec<Vec<usize>>,
    pub order: BigUint,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        MultiGraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = MultiGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        assert!(u < self.n && v < self.n, "endpoint out of range");
        self.edges.push((u.min(v), u.max(v)));
        self.edges.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.degrees().iter().all(|&d| d == k)
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    /// Neighbor lists with multiplicity; a loop lists its vertex twice.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbors();
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                for &w in &adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// BFS distances from a vertex; `usize::MAX` when unreachable.
    pub fn distances(&self, s: usize) -> Vec<usize> {
        let adj = self.neighbors();
        let mut dist = vec![usize::MAX; self.n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        if self.has_loops() {
            return Some(1);
        }
        let mut seen = std::collections::BTreeSet::new();
        for &e in &self.edges {
            if !seen.insert(e) {
                return Some(2);
            }
        }
        let adj = self.neighbors();
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        q.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Induced subgraph on `keep`, renumbered in the given order.
    pub fn induced(&self, keep: &[usize]) -> MultiGraph {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = MultiGraph::new(keep.len());
        for &(a, b) in &self.edges {
            if let (Some(&x), Some(&y)) = (pos.get(&a), pos.get(&b)) {
                g.add_edge(x, y);
            }
        }
        g
    }

    /// The graph with vertex `v` renamed `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> MultiGraph {
        let mut g = MultiGraph::new(self.n);
        for &(a, b) in &self.edges {
            g.add_edge(perm[a], perm[b]);
        }
        g
    }

    pub(crate) fn structure(&self) -> Structure {
        let mut s = Structure::new(vec![0; self.n]);
        for &(a, b) in &self.edges {
            s.add(a, b, 1);
        }
        s
    }

    /// Vertex bijection `self -> other` preserving edge multiplicities.
    pub fn isomorphism(&self, other: &MultiGraph) -> Option<Vec<usize>> {
        if self.n != other.n || self.edges.len() != other.edges.len() {
            return None;
        }
        let mut da = self.degrees();
        let mut db = other.degrees();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return None;
        }
        self.structure().isomorphism(&other.structure())
    }

    pub fn is_isomorphic(&self, other: &MultiGraph) -> bool {
        self.isomorphism(other).is_some()
    }

    pub fn automorphisms(&self) -> Result<AutomorphismGroup> {
        if self.n > AUTOMORPHISM_BOUND {
            return Err(Error::SizeBound(self.n, AUTOMORPHISM_BOUND));
        }
        let (generators, order) = self.structure().automorphism_group();
        Ok(AutomorphismGroup { generators, order })
    }

    /// Canonical relabeling: isomorphic graphs give equal results.
    pub fn canonical_form(&self) -> MultiGraph {
        let (labels, _) = self.structure().canonical_labeling();
        let mut g = self.permuted(&labels);
        g.edges.sort_unstable();
        g
    }
}

impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        for &(a, b) in &self.edges {
            write!(f, "\n{a} {b}")?;
        }
        Ok(())
    }
}

impl ColoredGraph {
    pub fn new(graph: MultiGraph, colors: Vec<Span>) -> Self {
        assert_eq!(graph.edge_count(), colors.len(), "every edge needs a color");
        ColoredGraph { graph, colors }
    }

    pub fn swapped(&self) -> ColoredGraph {
        ColoredGraph {
            graph: self.graph.clone(),
            colors: self.colors.iter().map(|c| c.swap()).collect(),
        }
    }

    /// Edges of one color as a graph on the same vertex set.
    pub fn color_class(&self, color: Span) -> MultiGraph {
        let mut g = MultiGraph::new(self.graph.vertex_count());
        for (&(a, b), &c) in self.graph.edges().iter().zip(&self.colors) {
            if c == color {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub(crate) fn structure(&self) -> Structure {
        let mut s = Structure::new(vec![0; self.graph.vertex_count()]);
        for (&(a, b), &c) in self.graph.edges().iter().zip(&self.colors) {
            s.add(a, b, if c == Span::X { 1 } else { 1 << 20 });
        }
        s
    }

    /// Color-preserving isomorphism, optionally allowing one global swap of
    /// the two colors. Returns the vertex map and whether colors were swapped.
    pub fn isomorphism(&self, other: &ColoredGraph, allow_swap: bool) -> Option<(Vec<usize>, bool)> {
        if !self.graph.is_isomorphic(&other.graph) {
            return None;
        }
        if let Some(p) = self.structure().isomorphism(&other.structure()) {
            return Some((p, false));
        }
        if allow_swap {
            if let Some(p) = self.swapped().structure().isomorphism(&other.structure()) {
                return Some((p, true));
            }
        }
        None
    }

    /// Whether a vertex permutation maps this colored graph onto itself,
    /// either preserving or exchanging the colors.
    pub fn permutation_action(&self, perm: &[usize]) -> Option<bool> {
        let s = self.structure();
        let t = self.swapped().structure();
        let image = ColoredGraph {
            graph: self.graph.permuted(perm),
            colors: self.colors.clone(),
        }
        .structure();
        let same = |a: &Structure, b: &Structure| {
            (0..a.len()).all(|u| (0..a.len()).all(|v| a.weight(u, v) == b.weight(u, v)))
        };
        if same(&image, &s) {
            Some(false)
        } else if same(&image, &t) {
            Some(true)
        } else {
            None
        }
    }

    /// Canonical form up to color-preserving isomorphism.
    pub fn canonical_form(&self) -> ColoredGraph {
        let (labels, _) = self.structure().canonical_labeling();
        let mut pairs: Vec<((usize, usize), Span)> = self
            .graph
            .edges()
            .iter()
            .zip(&self.colors)
            .map(|(&(a, b), &c)| {
                let (x, y) = (labels[a], labels[b]);
                ((x.min(y), x.max(y)), c)
            })
            .collect();
        pairs.sort_unstable();
        ColoredGraph {
            graph: MultiGraph::from_edges(self.graph.vertex_count(), &pairs.iter().map(|p| p.0).collect::<Vec<_>>()),
            colors: pairs.iter().map(|p| p.1).collect(),
        }
    }
}

impl fmt::Display for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.graph.vertex_count())?;
        for (&(a, b), c) in self.graph.edges().iter().zip(&self.colors) {
            write!(f, "\n{a} {b} color={c}")?;
        }
        Ok(())
    }
}
