//! Separating collars between two adjacent vertices: nerves, span colorings,
//! boundary graphs and predicates.

use std::collections::{BTreeMap, BTreeSet};

use crate::catalog::NamedGraph;
use crate::complex::{Complex, FaceWord, SignedEdge, VertexId};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, MultiGraph, Span};

#[derive(Clone, Debug)]
pub struct Collar {
    pub host: Complex,
    pub x: VertexId,
    pub y: VertexId,
    /// Collar faces in increasing order; nerve edge `i` comes from `faces[i]`.
    pub faces: Vec<usize>,
    /// Crossing edges used by the collar; nerve vertex `i` is `crossing[i]`.
    pub crossing: Vec<u32>,
    /// Nerve edges colored by the apex, `X` for `x` and `Y` for `y`.
    pub nerve: ColoredGraph,
    /// The loop edge of each collar face.
    pub loops: Vec<u32>,
    /// Loops at `x` as a graph on the crossing edges (one edge per face).
    pub boundary_minus: MultiGraph,
    pub boundary_plus: MultiGraph,
}

impl Collar {
    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// The collar faces as a complex (labels kept).
    pub fn closure(&self) -> Complex {
        self.host.subcomplex(&self.faces)
    }

    /// Loop labels on the `x` side (`Span::X`) or the `y` side, with repetition.
    pub fn boundary_labels(&self, side: Span) -> Vec<u32> {
        let at = if side == Span::X { self.x } else { self.y };
        self.loops
            .iter()
            .copied()
            .filter(|&l| self.host.tail(l) == at)
            .collect()
    }

    pub fn classify(&self) -> Option<NamedGraph> {
        classify_nerve(self)
    }
}

pub fn separating_collar(c: &Complex, x: VertexId, y: VertexId) -> Result<Collar> {
    c.check_vertex(x)?;
    c.check_vertex(y)?;
    if x == y {
        return Err(Error::Precondition("the two span vertices must differ".into()));
    }
    let adjacent = c.edges().iter().any(|&e| {
        let (t, h) = (c.tail(e), c.head(e));
        (t == x && h == y) || (t == y && h == x)
    });
    if !adjacent {
        return Err(Error::NotAdjacent(x.0, y.0));
    }
    let mut faces = Vec::new();
    for f in 0..c.face_count() {
        let vs: BTreeSet<VertexId> = c.corner_vertices(f).into_iter().collect();
        if vs.len() == 2 && vs.contains(&x) && vs.contains(&y) {
            let len = c.faces()[f].len();
            if len != 3 {
                return Err(Error::NonTriangular { face: f, len });
            }
            faces.push(f);
        }
    }
    let is_crossing = |e: u32| c.tail(e) != c.head(e);
    let crossing: Vec<u32> = faces
        .iter()
        .flat_map(|&f| c.faces()[f].letters().iter().map(|s| s.label()))
        .filter(|&e| is_crossing(e))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let pos: BTreeMap<u32, usize> = crossing.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let n = crossing.len();
    let mut graph = MultiGraph::new(n);
    let mut colors = Vec::new();
    let mut loops = Vec::new();
    let mut minus = MultiGraph::new(n);
    let mut plus = MultiGraph::new(n);
    for &f in &faces {
        let w = &c.faces()[f];
        // the loop sits at position i; the crossing letters i+1, i+2 meet at
        // the corner after letter i+1
        let i = (0..3).find(|&i| !is_crossing(w.at(i).label())).ok_or_else(|| {
            Error::Precondition(format!("collar face {f} has no loop edge"))
        })?;
        let (u, v) = (pos[&w.at(i + 1).label()], pos[&w.at(i + 2).label()]);
        let apex = c.corner_vertex(f, i + 1);
        graph.add_edge(u, v);
        colors.push(if apex == x { Span::X } else { Span::Y });
        let l = w.at(i).label();
        loops.push(l);
        if c.tail(l) == x {
            minus.add_edge(u, v);
        } else {
            plus.add_edge(u, v);
        }
    }
    Ok(Collar {
        host: c.clone(),
        x,
        y,
        faces,
        crossing,
        nerve: ColoredGraph::new(graph, colors),
        loops,
        boundary_minus: minus,
        boundary_plus: plus,
    })
}

/// The collar between vertices 0 and 1 of a two-vertex complex.
pub fn two_vertex_collar(c: &Complex) -> Result<Collar> {
    if c.vertex_count() != 2 {
        return Err(Error::Precondition(format!(
            "expected two vertices, found {}",
            c.vertex_count()
        )));
    }
    separating_collar(c, VertexId(0), VertexId(1))
}

/// Catalog nerve colored-isomorphic to the collar's nerve, colors possibly swapped.
pub fn classify_nerve(col: &Collar) -> Option<NamedGraph> {
    classify_colored(&col.nerve)
}

pub fn classify_colored(nerve: &ColoredGraph) -> Option<NamedGraph> {
    NamedGraph::NERVES.into_iter().find(|&n| {
        crate::catalog::span_coloring(n)
            .is_some_and(|g| g.isomorphism(nerve, true).is_some())
    })
}

pub fn is_thick(nerve: &ColoredGraph) -> bool {
    nerve.graph.degrees().iter().all(|&d| d >= 3)
}

fn is_spanning_tree(g: &MultiGraph) -> bool {
    g.vertex_count() > 0 && g.edge_count() + 1 == g.vertex_count() && g.is_connected()
}

/// Each color class is a spanning tree of the nerve.
pub fn is_treeable(nerve: &ColoredGraph) -> bool {
    is_spanning_tree(&nerve.color_class(Span::X)) && is_spanning_tree(&nerve.color_class(Span::Y))
}

pub fn spans_two(nerve: &ColoredGraph) -> bool {
    nerve.colors.contains(&Span::X) && nerve.colors.contains(&Span::Y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CollarPredicates {
    pub thick: bool,
    pub acylindrical: bool,
    pub boundary_injective: bool,
    pub treeable: bool,
    pub spans_two: bool,
}

fn has_repeat(labels: &[u32]) -> bool {
    let set: BTreeSet<u32> = labels.iter().copied().collect();
    set.len() != labels.len()
}

pub fn collar_predicates(col: &Collar) -> CollarPredicates {
    let minus = col.boundary_labels(Span::X);
    let plus = col.boundary_labels(Span::Y);
    let minus_set: BTreeSet<u32> = minus.iter().copied().collect();
    CollarPredicates {
        thick: !col.is_empty() && is_thick(&col.nerve),
        acylindrical: plus.iter().all(|l| !minus_set.contains(l)),
        boundary_injective: !has_repeat(&minus) && !has_repeat(&plus),
        treeable: !col.is_empty() && is_treeable(&col.nerve),
        spans_two: spans_two(&col.nerve),
    }
}

/// Retractions of the nerve onto the two boundary graphs. On the `x` side a
/// nerve edge with apex `y` goes to its loop at `x`, and an edge with apex `x`
/// is collapsed (`None`); symmetrically on the `y` side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HCollarCertificate {
    pub retraction_minus: Vec<Option<u32>>,
    pub retraction_plus: Vec<Option<u32>>,
}

pub fn h_collar_certificate(col: &Collar) -> Option<HCollarCertificate> {
    let p = collar_predicates(col);
    if !(p.boundary_injective && p.treeable && p.spans_two) {
        return None;
    }
    let side = |keep: Span| -> Vec<Option<u32>> {
        col.nerve
            .colors
            .iter()
            .zip(&col.loops)
            .map(|(&c, &l)| (c == keep).then_some(l))
            .collect()
    };
    Some(HCollarCertificate {
        retraction_minus: side(Span::Y),
        retraction_plus: side(Span::X),
    })
}

/// A complex whose separating collar has the given nerve: crossing edges
/// `1..=n` from `x` to `y`, a fresh loop per collar face, and one extra face
/// per side running through that side's loops so that they close up. Has two
/// vertices when the nerve is connected and uses both colors.
pub fn realize_nerve(nerve: &ColoredGraph) -> Complex {
    let n = nerve.graph.vertex_count() as u32;
    let mut faces = Vec::new();
    let mut at_x = Vec::new();
    let mut at_y = Vec::new();
    for (k, (&(u, v), &c)) in nerve.graph.edges().iter().zip(&nerve.colors).enumerate() {
        let (u, v) = (u as u32 + 1, v as u32 + 1);
        let l = SignedEdge::forward(n + 1 + k as u32);
        let word = match c {
            // -u then v meet at x; the loop sits at y
            Span::X => {
                at_y.push(l);
                vec![l, SignedEdge::new(u, true), SignedEdge::forward(v)]
            }
            Span::Y => {
                at_x.push(l);
                vec![l, SignedEdge::forward(u), SignedEdge::new(v, true)]
            }
        };
        faces.push(FaceWord::new(word).unwrap());
    }
    for side in [at_x, at_y] {
        if let Some(w) = FaceWord::new(side) {
            faces.push(w);
        }
    }
    Complex::new(faces)
}

/// Connected loop-free cubic multigraphs on `n` vertices, one per isomorphism class.
pub fn cubic_multigraphs(n: usize) -> Vec<MultiGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    // index of the last pair touching each vertex
    let mut last = vec![0usize; n];
    for (k, &(a, b)) in pairs.iter().enumerate() {
        last[a] = k;
        last[b] = k;
    }
    let mut search = CubicSearch {
        pairs,
        last,
        deg: vec![0; n],
        chosen: Vec::new(),
        raw: Vec::new(),
    };
    if n >= 2 {
        search.go(0);
    }
    let mut seen = BTreeSet::new();
    let mut found = Vec::new();
    for edges in search.raw {
        let g = MultiGraph::from_edges(n, &edges);
        if g.is_connected() {
            let canon = g.canonical_form();
            if seen.insert(canon.edges().to_vec()) {
                found.push(canon);
            }
        }
    }
    found
}

struct CubicSearch {
    pairs: Vec<(usize, usize)>,
    last: Vec<usize>,
    deg: Vec<usize>,
    chosen: Vec<(usize, usize)>,
    raw: Vec<Vec<(usize, usize)>>,
}

impl CubicSearch {
    fn go(&mut self, k: usize) {
        if k == self.pairs.len() {
            self.raw.push(self.chosen.clone());
            return;
        }
        let (a, b) = self.pairs[k];
        let room = (3 - self.deg[a]).min(3 - self.deg[b]);
        for m in 0..=room {
            self.deg[a] += m;
            self.deg[b] += m;
            let done = |v: usize, s: &Self| s.last[v] != k || s.deg[v] == 3;
            if done(a, self) && done(b, self) {
                self.chosen.extend(std::iter::repeat_n((a, b), m));
                self.go(k + 1);
                self.chosen.truncate(self.chosen.len() - m);
            }
            self.deg[a] -= m;
            self.deg[b] -= m;
        }
    }
}

/// Nerves of minimal thick collars: the cubic loop-free connected multigraphs
/// on four vertices.
pub fn st_lemma_enumerate() -> Vec<MultiGraph> {
    cubic_multigraphs(4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::span_coloring;
    use crate::data;

    #[test]
    fn cover_collar_is_s() {
        let col = two_vertex_collar(&data::x_prime()).unwrap();
        assert_eq!(col.faces.len(), 6);
        assert_eq!(classify_nerve(&col), Some(NamedGraph::NerveS));
        let p = collar_predicates(&col);
        assert!(p.thick && p.treeable && p.spans_two);
        assert!(h_collar_certificate(&col).is_some());
    }

    #[test]
    fn fake_cover_collar_is_t() {
        let col = two_vertex_collar(&data::x_double_prime()).unwrap();
        assert_eq!(classify_nerve(&col), Some(NamedGraph::NerveT));
        let p = collar_predicates(&col);
        assert!(p.thick && p.treeable);
    }

    #[test]
    fn w_collar() {
        let col = two_vertex_collar(&data::w158()).unwrap();
        assert_eq!(col.faces.len(), 9);
        assert_eq!(
            (col.nerve.graph.vertex_count(), col.nerve.graph.edge_count()),
            (6, 9)
        );
        assert_eq!(classify_nerve(&col), None);
        assert_eq!(col.closure().face_multiset(), data::w158_collar().face_multiset());
    }

    #[test]
    fn nerve_counts_match_faces() {
        for c in [data::x_prime(), data::x_double_prime(), data::w158()] {
            let col = two_vertex_collar(&c).unwrap();
            assert_eq!(col.nerve.graph.edge_count(), col.faces.len());
            let degrees = col.nerve.graph.degrees();
            for (i, &e) in col.crossing.iter().enumerate() {
                let uses: usize = col
                    .faces
                    .iter()
                    .map(|&f| c.faces()[f].letters().iter().filter(|s| s.label() == e).count())
                    .sum();
                assert_eq!(degrees[i], uses);
            }
        }
    }

    #[test]
    fn duality_swaps_colors() {
        let c = data::x_prime();
        let a = separating_collar(&c, VertexId(0), VertexId(1)).unwrap();
        let b = separating_collar(&c, VertexId(1), VertexId(0)).unwrap();
        assert_eq!(a.nerve.swapped(), b.nerve);
        assert_eq!(classify_nerve(&a), classify_nerve(&b));
    }

    #[test]
    fn errors() {
        let v = data::v23();
        assert!(separating_collar(&v, VertexId(0), VertexId(0)).is_err());
        let two: Complex = "[[1,1,2],[3,3,4]]".parse().unwrap();
        assert_eq!(
            separating_collar(&two, VertexId(0), VertexId(1)).unwrap_err(),
            Error::NotAdjacent(0, 1)
        );
    }

    #[test]
    fn realized_catalog_nerves() {
        for n in NamedGraph::NERVES {
            let nerve = span_coloring(n).unwrap();
            let c = realize_nerve(&nerve);
            let col = two_vertex_collar(&c).unwrap();
            assert_eq!(classify_nerve(&col), Some(n), "{n}");
            assert!(collar_predicates(&col).boundary_injective);
        }
        let oct = two_vertex_collar(&realize_nerve(&span_coloring(NamedGraph::NerveOctagonal).unwrap())).unwrap();
        let p = collar_predicates(&oct);
        assert!(p.thick && !p.treeable);
        assert!(h_collar_certificate(&oct).is_none());
    }

    #[test]
    fn empty_collar_has_no_certificate() {
        // adjacent vertices, but no face meets exactly the two of them
        let c: Complex = "[[1,2,3]]".parse().unwrap();
        let col = separating_collar(&c, VertexId(0), VertexId(1)).unwrap();
        assert!(col.is_empty());
        assert!(h_collar_certificate(&col).is_none());
    }

    #[test]
    fn st_lemma() {
        let found = st_lemma_enumerate();
        assert_eq!(found.len(), 2);
        let s = NamedGraph::NerveS.graph();
        let t = NamedGraph::NerveT.graph();
        assert!(found.iter().any(|g| g.is_isomorphic(&s)));
        assert!(found.iter().any(|g| g.is_isomorphic(&t)));
    }

    #[test]
    fn small_cubic_counts() {
        assert_eq!(cubic_multigraphs(2).len(), 1);
        assert!(cubic_multigraphs(3).is_empty());
        assert_eq!(cubic_multigraphs(2)[0].multiplicity(0, 1), 3);
    }

    #[test]
    fn two_tripods_give_theta_theta_prime_or_cube() {
        // x-tripod 0 - {1,2,3} - {4,5,6}; y-tripod 7 - {4,5,6} - perm of {1,2,3}
        let perms = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let mut kinds = Vec::new();
        for p in perms {
            let mut g = MultiGraph::new(8);
            let mut colors = Vec::new();
            for i in 0..3 {
                g.add_edge(0, 1 + i);
                g.add_edge(1 + i, 4 + i);
                colors.extend([Span::X, Span::X]);
            }
            for i in 0..3 {
                g.add_edge(7, 4 + i);
                g.add_edge(4 + i, 1 + p[i]);
                colors.extend([Span::Y, Span::Y]);
            }
            kinds.push(classify_colored(&ColoredGraph::new(g, colors)));
        }
        use NamedGraph::*;
        assert_eq!(kinds[0], Some(NerveTheta));
        assert!(kinds[1..4].iter().all(|&k| k == Some(NerveThetaPrime)));
        assert!(kinds[4..].iter().all(|&k| k == Some(NerveCube)));
        let plain = [NerveTheta, NerveThetaPrime, NerveCube].map(|n| n.graph());
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(!plain[i].is_isomorphic(&plain[j]));
            }
        }
    }
}
