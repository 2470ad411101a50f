//! Model geometries at vertices, weights, and transitivity predicates.

use std::collections::BTreeSet;
use std::fmt;

use crate::complex::{Complex, FaceWord, VertexId};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

/// Corner positions of face `f` grouped into classes: maximal cyclic runs of
/// corners at the same vertex. Each class lists positions in cyclic order.
pub fn corner_classes(c: &Complex, f: usize) -> Result<Vec<Vec<usize>>> {
    c.face(f)?;
    let vs = c.corner_vertices(f);
    let k = vs.len();
    let Some(start) = (0..k).find(|&i| vs[i] != vs[(i + k - 1) % k]) else {
        return Ok(vec![(0..k).collect()]);
    };
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for step in 0..k {
        let i = (start + step) % k;
        if step == 0 || vs[i] != vs[(i + k - 1) % k] {
            classes.push(Vec::new());
        }
        classes.last_mut().unwrap().push(i);
    }
    classes.sort();
    Ok(classes)
}

pub fn is_crossing(c: &Complex, f: usize) -> Result<bool> {
    Ok(corner_classes(c, f)?.len() >= 2)
}

/// The boundary segment of a model geometry cut out of a crossing face by its
/// inscribed polygon, one per corner class at the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chord {
    pub face: usize,
    pub corners: Vec<usize>,
    /// Number of corners in the class, which is the piece length minus 2.
    pub weight: usize,
    /// The face's edge parallel to the chord, when there is one (a single
    /// corner of a triangle faces the opposite edge).
    pub edge: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelGeometry {
    pub center: VertexId,
    pub loops: Vec<u32>,
    pub half_edges: Vec<u32>,
    /// Edges with no end at the center lying in a face through the center.
    pub far_edges: Vec<u32>,
    pub core_faces: Vec<usize>,
    /// Non-core faces through the center with their corner classes there.
    pub corner_faces: Vec<(usize, Vec<Vec<usize>>)>,
    pub boundary: Vec<Chord>,
}

impl ModelGeometry {
    /// Complex edges carried by the boundary, with their weights.
    pub fn weights(&self) -> Vec<(u32, usize)> {
        self.boundary
            .iter()
            .filter_map(|ch| ch.edge.map(|e| (e, ch.weight)))
            .collect()
    }

    pub fn total_weight(&self) -> usize {
        self.boundary.iter().map(|ch| ch.weight).sum()
    }
}

pub fn model_geometry(c: &Complex, v: VertexId) -> Result<ModelGeometry> {
    c.check_vertex(v)?;
    let mut loops = Vec::new();
    let mut half_edges = Vec::new();
    for &e in c.edges() {
        match (c.tail(e) == v, c.head(e) == v) {
            (true, true) => loops.push(e),
            (true, false) | (false, true) => half_edges.push(e),
            _ => {}
        }
    }
    let mut far = BTreeSet::new();
    let mut core_faces = Vec::new();
    let mut corner_faces = Vec::new();
    let mut boundary = Vec::new();
    for (fi, w) in c.faces().iter().enumerate() {
        let vs = c.corner_vertices(fi);
        if !vs.contains(&v) {
            continue;
        }
        for s in w.letters() {
            if c.tail(s.label()) != v && c.head(s.label()) != v {
                far.insert(s.label());
            }
        }
        if vs.iter().all(|&u| u == v) {
            core_faces.push(fi);
            continue;
        }
        let classes: Vec<Vec<usize>> = corner_classes(c, fi)?
            .into_iter()
            .filter(|cl| vs[cl[0]] == v)
            .collect();
        for cl in &classes {
            // corner i sits between letters i and i+1; a lone corner of a
            // triangle faces letter i+2
            let edge = (w.len() == 3 && cl.len() == 1).then(|| w.at(cl[0] + 2).label());
            boundary.push(Chord {
                face: fi,
                corners: cl.clone(),
                weight: cl.len(),
                edge,
            });
        }
        corner_faces.push((fi, classes));
    }
    Ok(ModelGeometry {
        center: v,
        loops,
        half_edges,
        far_edges: far.into_iter().collect(),
        core_faces,
        corner_faces,
        boundary,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightEquation {
    /// Total length of the crossing faces.
    pub face_side: usize,
    /// Total boundary weight over all model geometries.
    pub weight_side: usize,
}

impl WeightEquation {
    pub fn holds(&self) -> bool {
        self.face_side == self.weight_side
    }
}

pub fn weight_equation_check(c: &Complex) -> Result<WeightEquation> {
    let mut face_side = 0;
    for f in 0..c.face_count() {
        if is_crossing(c, f)? {
            face_side += c.faces()[f].len();
        }
    }
    let mut weight_side = 0;
    for v in c.vertices() {
        weight_side += model_geometry(c, v)?.total_weight();
    }
    Ok(WeightEquation {
        face_side,
        weight_side,
    })
}

/// Raw presentation of the model group: loops at the center as generators,
/// core faces as relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<u32>,
    pub relators: Vec<FaceWord>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| format!("g{g}")).collect();
        write!(f, "gens: {}", gens.join(" "))?;
        for r in &self.relators {
            let word: Vec<String> = r
                .letters()
                .iter()
                .map(|s| {
                    if s.is_reversed() {
                        format!("g{}^-1", s.label())
                    } else {
                        format!("g{}", s.label())
                    }
                })
                .collect();
            write!(f, "\nrel: {}", word.join(" "))?;
        }
        Ok(())
    }
}

pub fn model_group(c: &Complex, v: VertexId) -> Result<Presentation> {
    let m = model_geometry(c, v)?;
    Ok(Presentation {
        generators: m.loops,
        relators: m.core_faces.iter().map(|&f| c.faces()[f].clone()).collect(),
    })
}

/// Outcome of a per-face predicate with the offending faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceVerdict {
    pub pass: bool,
    pub failures: Vec<usize>,
}

impl FaceVerdict {
    fn from_failures(failures: Vec<usize>) -> Self {
        FaceVerdict {
            pass: failures.is_empty(),
            failures,
        }
    }
}

/// Every triangle meets at most two distinct vertices.
pub fn is_two_thirds_transitive(c: &Complex) -> Result<FaceVerdict> {
    let mut failures = Vec::new();
    for (f, w) in c.faces().iter().enumerate() {
        if w.len() != 3 {
            return Err(Error::NonTriangular { face: f, len: w.len() });
        }
        let distinct: BTreeSet<VertexId> = c.corner_vertices(f).into_iter().collect();
        if distinct.len() > 2 {
            failures.push(f);
        }
    }
    Ok(FaceVerdict::from_failures(failures))
}

/// Every crossing face has exactly two corner classes.
pub fn is_mildly_transitive(c: &Complex) -> Result<FaceVerdict> {
    let mut failures = Vec::new();
    for f in 0..c.face_count() {
        if corner_classes(c, f)?.len() > 2 {
            failures.push(f);
        }
    }
    Ok(FaceVerdict::from_failures(failures))
}

/// One vertex per complex vertex, one edge per pair of distinct adjacent vertices.
pub fn base_graph(c: &Complex) -> MultiGraph {
    let mut pairs = BTreeSet::new();
    for &e in c.edges() {
        let (a, b) = (c.tail(e), c.head(e));
        if a != b {
            pairs.insert((a.0.min(b.0), a.0.max(b.0)));
        }
    }
    let edges: Vec<(usize, usize)> = pairs.into_iter().collect();
    MultiGraph::from_edges(c.vertex_count(), &edges)
}
