//! Double covers from mod-2 cocycles, cover verification, free involutions.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Complex, End, FaceWord, SignedEdge, VertexId};
use crate::error::{Error, Result};
use crate::iso::{self, ComplexIso, Decoration};

/// Edge values in `{0, 1}` summing to zero around every face.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cocycle2(pub BTreeMap<u32, u8>);

impl Cocycle2 {
    pub fn value(&self, e: u32) -> u8 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    pub fn is_cocycle_on(&self, c: &Complex) -> bool {
        c.faces().iter().all(|w| {
            w.letters().iter().map(|s| self.value(s.label()) as usize).sum::<usize>() % 2 == 0
        })
    }
}

/// Row-reduce over GF(2); returns a basis of the row space in echelon form.
fn echelon(mut rows: Vec<Vec<u8>>, width: usize) -> Vec<Vec<u8>> {
    let mut basis: Vec<Vec<u8>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in rows.iter_mut() {
        for (b, &p) in basis.iter().zip(&pivots) {
            if row[p] == 1 {
                for j in 0..width {
                    row[j] ^= b[j];
                }
            }
        }
        if let Some(p) = (0..width).find(|&j| row[j] == 1) {
            // keep the basis fully reduced at the new pivot
            for b in basis.iter_mut() {
                if b[p] == 1 {
                    for j in 0..width {
                        b[j] ^= row[j];
                    }
                }
            }
            basis.push(row.clone());
            pivots.push(p);
        }
    }
    basis
}

/// Null space of the face-occurrence matrix mod 2.
fn cocycle_space(c: &Complex) -> Vec<Vec<u8>> {
    let m = c.edge_count();
    let rows: Vec<Vec<u8>> = c
        .faces()
        .iter()
        .map(|w| {
            let mut r = vec![0u8; m];
            for s in w.letters() {
                r[c.edge_index(s.label()).unwrap()] ^= 1;
            }
            r
        })
        .collect();
    let basis = echelon(rows, m);
    let pivots: Vec<usize> = basis
        .iter()
        .map(|r| r.iter().position(|&x| x == 1).unwrap())
        .collect();
    let free: Vec<usize> = (0..m).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u8; m];
            v[f] = 1;
            for (r, &p) in basis.iter().zip(&pivots) {
                v[p] = r[f];
            }
            v
        })
        .collect()
}

fn coboundaries(c: &Complex) -> Vec<Vec<u8>> {
    let m = c.edge_count();
    let rows = c
        .vertices()
        .map(|v| {
            c.edges()
                .iter()
                .map(|&e| ((c.tail(e) == v) as u8) ^ ((c.head(e) == v) as u8))
                .collect()
        })
        .collect();
    echelon(rows, m)
}

/// Vectors completing a coboundary basis to a cocycle basis.
fn class_basis(c: &Complex) -> Vec<Vec<u8>> {
    let m = c.edge_count();
    let b = coboundaries(c);
    let mut span = b.clone();
    let mut out = Vec::new();
    for z in cocycle_space(c) {
        let before = span.len();
        let mut trial = span.clone();
        trial.push(z.clone());
        let trial = echelon(trial, m);
        if trial.len() > before {
            out.push(z);
            span = trial;
        }
    }
    out
}

/// Dimension of the mod-2 cocycles modulo coboundaries.
pub fn cohomology_dimension(c: &Complex) -> usize {
    class_basis(c).len()
}

/// One representative cocycle per nonzero cohomology class (`2^d - 1` of them).
pub fn cohomology_classes(c: &Complex) -> Vec<Cocycle2> {
    let basis = class_basis(c);
    let d = basis.len();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << d) {
        let mut v = vec![0u8; c.edge_count()];
        for (i, b) in basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for j in 0..v.len() {
                    v[j] ^= b[j];
                }
            }
        }
        out.push(Cocycle2(
            c.edges().iter().zip(v).map(|(&e, x)| (e, x)).collect(),
        ));
    }
    out
}

#[derive(Clone, Debug)]
pub struct DoubleCover {
    pub cocycle: Cocycle2,
    pub complex: Complex,
    /// Cover edge label to base edge label.
    pub edge_map: BTreeMap<u32, u32>,
}

impl DoubleCover {
    /// The sheet swap: each edge to the other lift of its image, face `2f`
    /// to `2f + 1`.
    pub fn deck_involution(&self) -> ComplexIso {
        let mut lifts: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for (&l, &e) in &self.edge_map {
            lifts.entry(e).or_default().push(l);
        }
        let mut edge_map = BTreeMap::new();
        for pair in lifts.values() {
            if let [a, b] = pair[..] {
                edge_map.insert(a, SignedEdge::forward(b));
                edge_map.insert(b, SignedEdge::forward(a));
            }
        }
        ComplexIso {
            edge_map,
            face_map: (0..self.complex.face_count()).map(|f| f ^ 1).collect(),
        }
    }

    pub fn is_free_involution(&self, g: &ComplexIso) -> bool {
        is_free_involution(&self.complex, g)
    }
}

/// Label of the sheet-1 lift: `e` prefixed by a 1, so 3 becomes 13 over a
/// base with single-digit labels.
pub fn lift_label(e: u32, base_max: u32) -> u32 {
    let digits = base_max.max(1).ilog10() + 1;
    e + 10u32.pow(digits)
}

/// The double cover determined by a cocycle. Face `f` lifts to faces `2f`
/// (starting on sheet 0) and `2f + 1` (sheet 1).
pub fn build_cover(c: &Complex, z: &Cocycle2) -> Result<DoubleCover> {
    if !z.is_cocycle_on(c) {
        return Err(Error::Precondition("not a cocycle".into()));
    }
    let max = c.max_label();
    let lift = |e: u32, sheet: u8| if sheet == 0 { e } else { lift_label(e, max) };
    let mut faces = Vec::with_capacity(2 * c.face_count());
    for w in c.faces() {
        for start in 0..2u8 {
            let mut sheet = start;
            let mut word = Vec::with_capacity(w.len());
            for s in w.letters() {
                let e = s.label();
                let shift = z.value(e);
                if s.is_reversed() {
                    sheet ^= shift;
                    word.push(SignedEdge::new(lift(e, sheet), true));
                } else {
                    word.push(SignedEdge::forward(lift(e, sheet)));
                    sheet ^= shift;
                }
            }
            faces.push(FaceWord::new(word).unwrap());
        }
    }
    let mut edge_map = BTreeMap::new();
    for &e in c.edges() {
        edge_map.insert(e, e);
        edge_map.insert(lift(e, 1), e);
    }
    Ok(DoubleCover {
        cocycle: z.clone(),
        complex: Complex::new(faces),
        edge_map,
    })
}

/// Connected double covers, one per isomorphism class.
pub fn enumerate_double_covers(c: &Complex) -> Vec<DoubleCover> {
    let mut out: Vec<DoubleCover> = Vec::new();
    for z in cohomology_classes(c) {
        let cover = build_cover(c, &z).expect("classes are cocycles");
        if !out.iter().any(|d| iso::isomorphic(&d.complex, &cover.complex)) {
            out.push(cover);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverVerdict {
    pub pass: bool,
    pub problems: Vec<String>,
}

pub fn verify_cover(cover: &Complex, base: &Complex, edge_map: &BTreeMap<u32, u32>) -> Result<CoverVerdict> {
    for &e in cover.edges() {
        let img = *edge_map.get(&e).ok_or(Error::NonTotalMap(e))?;
        if !base.has_edge(img) {
            return Err(Error::UnknownEdge(img));
        }
    }
    let mut problems = Vec::new();
    let image = |s: SignedEdge| SignedEdge::new(edge_map[&s.label()], s.is_reversed());
    let map_end = |e: End| End {
        label: edge_map[&e.label],
        kind: e.kind,
    };

    let base_faces: BTreeMap<FaceWord, usize> = {
        let mut m = BTreeMap::new();
        for w in base.faces() {
            *m.entry(w.canonical()).or_insert(0) += 1;
        }
        m
    };
    let mut face_hits: BTreeMap<FaceWord, usize> = BTreeMap::new();
    for (f, w) in cover.faces().iter().enumerate() {
        let img = w.map(image).canonical();
        if base_faces.contains_key(&img) {
            *face_hits.entry(img).or_insert(0) += 1;
        } else {
            problems.push(format!("face {f} maps to {img}, which is not a face"));
        }
    }
    for (w, &n) in &base_faces {
        let hits = face_hits.get(w).copied().unwrap_or(0);
        if hits != 2 * n {
            problems.push(format!("face {w} has {hits} preimages"));
        }
    }

    let mut edge_hits: BTreeMap<u32, usize> = BTreeMap::new();
    for &e in cover.edges() {
        *edge_hits.entry(edge_map[&e]).or_insert(0) += 1;
    }
    for &e in base.edges() {
        let hits = edge_hits.get(&e).copied().unwrap_or(0);
        if hits != 2 {
            problems.push(format!("edge {e} has {hits} preimages"));
        }
    }

    let mut vertex_map: Vec<Option<VertexId>> = Vec::new();
    for v in cover.vertices() {
        let images: BTreeSet<VertexId> = cover.vertex_classes()[v.0]
            .iter()
            .map(|&e| base.vertex_of(map_end(e)))
            .collect();
        if images.len() == 1 {
            vertex_map.push(images.into_iter().next());
        } else {
            problems.push(format!("vertex {v} does not map to a single vertex"));
            vertex_map.push(None);
        }
    }
    for b in base.vertices() {
        let hits = vertex_map.iter().filter(|&&m| m == Some(b)).count();
        if hits != 2 {
            problems.push(format!("vertex {b} has {hits} preimages"));
        }
    }

    for v in cover.vertices() {
        let Some(b) = vertex_map[v.0] else { continue };
        let lc = cover.link(v)?;
        let lb = base.link(b)?;
        let pos: BTreeMap<End, usize> = lb.ends.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mapped: Vec<usize> = lc.ends.iter().map(|&e| pos.get(&map_end(e)).copied().unwrap_or(usize::MAX)).collect();
        let bijective = mapped.iter().all(|&i| i != usize::MAX)
            && mapped.iter().collect::<BTreeSet<_>>().len() == lb.ends.len()
            && lc.ends.len() == lb.ends.len();
        let mut edges_c: Vec<(usize, usize)> = Vec::new();
        if bijective {
            edges_c = lc
                .graph
                .edges()
                .iter()
                .map(|&(a, b)| (mapped[a].min(mapped[b]), mapped[a].max(mapped[b])))
                .collect();
            edges_c.sort_unstable();
        }
        let mut edges_b = lb.graph.edges().to_vec();
        edges_b.sort_unstable();
        if !bijective || edges_c != edges_b {
            problems.push(format!("link at vertex {v} does not map isomorphically"));
        }
    }

    Ok(CoverVerdict {
        pass: problems.is_empty(),
        problems,
    })
}

fn is_free_involution(c: &Complex, g: &ComplexIso) -> bool {
    g.then(g).is_identity()
        && c.vertices().all(|v| g.map_vertex(c, c, v) != v)
        && g.edge_map.iter().all(|(&l, s)| s.label() != l)
        && g.face_map.iter().enumerate().all(|(i, &f)| i != f)
}

/// An automorphism of order 2 fixing no vertex, edge or face.
pub fn find_free_involution(c: &Complex) -> Option<ComplexIso> {
    iso::automorphisms(c, &Decoration::default())
        .into_iter()
        .find(|g| is_free_involution(c, g))
}
