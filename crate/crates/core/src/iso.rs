//! Isomorphisms of face-word complexes by direct backtracking.
//!
//! Faces of the source are placed one at a time in breadth-first order over
//! shared edges; each placement fixes a target face and an alignment, which in
//! turn fixes the images of the face's edges.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Complex, End, EndKind, SignedEdge, VertexId};

/// An isomorphism between complexes: signed images of edges and the induced
/// face bijection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexIso {
    pub edge_map: BTreeMap<u32, SignedEdge>,
    pub face_map: Vec<usize>,
}

impl ComplexIso {
    pub fn identity(c: &Complex) -> Self {
        ComplexIso {
            edge_map: c.edges().iter().map(|&l| (l, SignedEdge::forward(l))).collect(),
            face_map: (0..c.face_count()).collect(),
        }
    }

    pub fn apply(&self, s: SignedEdge) -> SignedEdge {
        self.edge_map[&s.label()].flipped_if(s.is_reversed())
    }

    pub fn apply_end(&self, end: End) -> End {
        let img = self.edge_map[&end.label];
        let kind = if img.is_reversed() { end.kind.other() } else { end.kind };
        End {
            label: img.label(),
            kind,
        }
    }

    pub fn map_vertex(&self, from: &Complex, to: &Complex, v: VertexId) -> VertexId {
        let end = from.vertex_classes()[v.0][0];
        to.vertex_of(self.apply_end(end))
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &ComplexIso) -> ComplexIso {
        ComplexIso {
            edge_map: self
                .edge_map
                .iter()
                .map(|(&l, &s)| (l, then.apply(s)))
                .collect(),
            face_map: self.face_map.iter().map(|&f| then.face_map[f]).collect(),
        }
    }

    pub fn inverse(&self) -> ComplexIso {
        let mut face_map = vec![0; self.face_map.len()];
        for (i, &f) in self.face_map.iter().enumerate() {
            face_map[f] = i;
        }
        ComplexIso {
            edge_map: self
                .edge_map
                .iter()
                .map(|(&l, &s)| (s.label(), SignedEdge::new(l, s.is_reversed())))
                .collect(),
            face_map,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.edge_map.iter().all(|(&l, &s)| s == SignedEdge::forward(l))
            && self.face_map.iter().enumerate().all(|(i, &f)| i == f)
    }

    /// Images listed in source-label order; isomorphisms compare by this key.
    pub fn key(&self) -> Vec<SignedEdge> {
        self.edge_map.values().copied().collect()
    }
}

/// Colors that an isomorphism must preserve. Missing entries mean color 0.
#[derive(Clone, Debug, Default)]
pub struct Decoration {
    pub edges: BTreeMap<u32, u32>,
    pub faces: BTreeMap<usize, u32>,
    pub ends: BTreeMap<End, u32>,
}

impl Decoration {
    /// Mark every end at `v` so that isomorphisms must fix the basepoint.
    pub fn pointed(c: &Complex, v: VertexId) -> Self {
        let mut d = Decoration::default();
        for &e in &c.vertex_classes()[v.0] {
            d.ends.insert(e, 1);
        }
        d
    }

    fn edge(&self, l: u32) -> u32 {
        self.edges.get(&l).copied().unwrap_or(0)
    }

    fn face(&self, f: usize) -> u32 {
        self.faces.get(&f).copied().unwrap_or(0)
    }

    fn end(&self, e: End) -> u32 {
        self.ends.get(&e).copied().unwrap_or(0)
    }
}

type EdgeInv = (usize, bool, u32, (usize, usize), (usize, usize));

struct Side<'a> {
    c: &'a Complex,
    vertex_inv: Vec<(usize, usize)>,
    edge_inv: Vec<EdgeInv>,
    face_inv: Vec<(usize, u32, Vec<EdgeInv>)>,
    end_inv: BTreeMap<End, ((usize, usize), u32)>,
    /// `occ[edge index]` lists `(face, position)`.
    occ: Vec<Vec<(usize, usize)>>,
}

impl<'a> Side<'a> {
    fn new(c: &'a Complex, deco: &'a Decoration) -> Self {
        let mut corners = vec![0usize; c.vertex_count()];
        for f in 0..c.face_count() {
            for v in c.corner_vertices(f) {
                corners[v.0] += 1;
            }
        }
        let mut vertex_inv: Vec<(usize, usize)> = (0..c.vertex_count())
            .map(|v| (c.vertex_classes()[v].len(), corners[v]))
            .collect();
        // one round of neighborhood refinement: multiset of corner-neighbor invariants
        let base = vertex_inv.clone();
        let mut nb: Vec<Vec<(usize, usize)>> = vec![Vec::new(); c.vertex_count()];
        for &l in c.edges() {
            let (t, h) = (c.tail(l), c.head(l));
            nb[t.0].push(base[h.0]);
            nb[h.0].push(base[t.0]);
        }
        for (v, list) in nb.iter_mut().enumerate() {
            list.sort_unstable();
            let mut hash: usize = 1469598103;
            for &(a, b) in list.iter() {
                hash = hash.wrapping_mul(1099511).wrapping_add(a * 131 + b);
            }
            vertex_inv[v].1 = vertex_inv[v].1 * 1_000_003 + (hash % 1_000_003);
        }
        let mut end_inv = BTreeMap::new();
        for &l in c.edges() {
            for kind in [EndKind::Tail, EndKind::Head] {
                let e = End { label: l, kind };
                end_inv.insert(e, (vertex_inv[c.vertex_of(e).0], deco.end(e)));
            }
        }
        let edge_inv: Vec<EdgeInv> = c
            .edges()
            .iter()
            .map(|&l| {
                let t = vertex_inv[c.tail(l).0];
                let h = vertex_inv[c.head(l).0];
                (c.occurrence_count(l), c.is_loop(l), deco.edge(l), t.min(h), t.max(h))
            })
            .collect();
        let mut occ = vec![Vec::new(); c.edge_count()];
        let face_inv = c
            .faces()
            .iter()
            .enumerate()
            .map(|(fi, w)| {
                let mut inv: Vec<EdgeInv> = w
                    .letters()
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let idx = c.edge_index(s.label()).unwrap();
                        occ[idx].push((fi, i));
                        edge_inv[idx]
                    })
                    .collect();
                inv.sort_unstable();
                (w.len(), deco.face(fi), inv)
            })
            .collect();
        Side {
            c,
            vertex_inv,
            edge_inv,
            face_inv,
            end_inv,
            occ,
        }
    }
}

struct Search<'a> {
    a: Side<'a>,
    b: Side<'a>,
    order: Vec<(usize, Option<usize>)>,
    edge_map: Vec<Option<(usize, bool)>>,
    inverse: Vec<Option<usize>>,
    face_map: Vec<Option<usize>>,
    face_used: Vec<bool>,
    limit: usize,
    found: BTreeSet<ComplexIso>,
}

/// All isomorphisms `a -> b` preserving the decorations, up to `limit`.
pub fn find_isomorphisms(
    a: &Complex,
    da: &Decoration,
    b: &Complex,
    db: &Decoration,
    limit: usize,
) -> Vec<ComplexIso> {
    if a.face_count() != b.face_count()
        || a.edge_count() != b.edge_count()
        || a.vertex_count() != b.vertex_count()
    {
        return Vec::new();
    }
    fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
        v.sort_unstable();
        v
    }
    let sa = Side::new(a, da);
    let sb = Side::new(b, db);
    if sorted(sa.face_inv.clone()) != sorted(sb.face_inv.clone())
        || sorted(sa.edge_inv.clone()) != sorted(sb.edge_inv.clone())
        || sorted(sa.vertex_inv.clone()) != sorted(sb.vertex_inv.clone())
    {
        return Vec::new();
    }
    let order = placement_order(&sa);
    let mut s = Search {
        edge_map: vec![None; a.edge_count()],
        inverse: vec![None; b.edge_count()],
        face_map: vec![None; a.face_count()],
        face_used: vec![false; b.face_count()],
        a: sa,
        b: sb,
        order,
        limit: limit.max(1),
        found: BTreeSet::new(),
    };
    s.place(0);
    s.found.into_iter().collect()
}

/// Faces in breadth-first order over shared edges; each non-seed face
/// records one position whose edge is already placed.
fn placement_order(side: &Side) -> Vec<(usize, Option<usize>)> {
    let c = side.c;
    let n = c.face_count();
    let mut class_size: BTreeMap<&(usize, u32, Vec<EdgeInv>), usize> = BTreeMap::new();
    for inv in &side.face_inv {
        *class_size.entry(inv).or_default() += 1;
    }
    let mut placed = vec![false; n];
    let mut edge_seen = vec![false; c.edge_count()];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let seed = (0..n)
            .filter(|&f| !placed[f])
            .min_by_key(|&f| (class_size[&side.face_inv[f]], f))
            .unwrap();
        let mut queue = std::collections::VecDeque::from([(seed, None)]);
        placed[seed] = true;
        while let Some((f, anchor)) = queue.pop_front() {
            order.push((f, anchor));
            for s in c.faces()[f].letters() {
                let idx = c.edge_index(s.label()).unwrap();
                if edge_seen[idx] {
                    continue;
                }
                edge_seen[idx] = true;
                for &(g, pos) in &side.occ[idx] {
                    if !placed[g] {
                        placed[g] = true;
                        queue.push_back((g, Some(pos)));
                    }
                }
            }
        }
    }
    order
}

impl<'a> Search<'a> {
    fn place(&mut self, step: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if step == self.order.len() {
            let iso = self.snapshot();
            self.found.insert(iso);
            return;
        }
        let (fa, anchor) = self.order[step];
        let wa = &self.a.c.faces()[fa];
        let k = wa.len();
        let mut candidates: Vec<(usize, usize, usize, bool)> = Vec::new();
        match anchor {
            Some(j) => {
                let s = wa.at(j);
                let ia = self.a.c.edge_index(s.label()).unwrap();
                let (ib, flip) = self.edge_map[ia].expect("anchor edge is placed");
                let image_reversed = s.is_reversed() ^ flip;
                for &(fb, pos) in &self.b.occ[ib] {
                    if self.face_used[fb] || self.b.face_inv[fb] != self.a.face_inv[fa] {
                        continue;
                    }
                    let rho = self.b.c.faces()[fb].at(pos).is_reversed();
                    candidates.push((fb, j, pos, rho != image_reversed));
                }
            }
            None => {
                for fb in 0..self.b.c.face_count() {
                    if self.face_used[fb] || self.b.face_inv[fb] != self.a.face_inv[fa] {
                        continue;
                    }
                    for pos in 0..k {
                        for rev in [false, true] {
                            candidates.push((fb, 0, pos, rev));
                        }
                    }
                }
            }
        }
        for (fb, j, pos, rev) in candidates {
            if let Some(assigned) = self.align(fa, fb, j, pos, rev) {
                self.face_used[fb] = true;
                self.face_map[fa] = Some(fb);
                self.place(step + 1);
                self.face_map[fa] = None;
                self.face_used[fb] = false;
                for ia in assigned {
                    let (ib, _) = self.edge_map[ia].take().unwrap();
                    self.inverse[ib] = None;
                }
                if self.found.len() >= self.limit {
                    return;
                }
            }
        }
    }

    /// Try mapping letter `j + t` of face `fa` onto letter `pos + t` of `fb`
    /// (or `pos - t`, inverted, when `rev`). Returns newly assigned edges.
    fn align(&mut self, fa: usize, fb: usize, j: usize, pos: usize, rev: bool) -> Option<Vec<usize>> {
        let wa = &self.a.c.faces()[fa];
        let wb = &self.b.c.faces()[fb];
        let k = wa.len();
        let mut assigned: Vec<usize> = Vec::new();
        for t in 0..k {
            let la = wa.at(j + t);
            let lb = if rev {
                wb.at((pos + k * k - t) % k).inverse()
            } else {
                wb.at(pos + t)
            };
            let ia = self.a.c.edge_index(la.label()).unwrap();
            let ib = self.b.c.edge_index(lb.label()).unwrap();
            let flip = la.is_reversed() != lb.is_reversed();
            let ok = match self.edge_map[ia] {
                Some(existing) => existing == (ib, flip),
                None => {
                    self.inverse[ib].is_none()
                        && self.a.edge_inv[ia] == self.b.edge_inv[ib]
                        && self.ends_match(la.label(), lb.label(), flip)
                }
            };
            if !ok {
                for x in assigned {
                    let (y, _) = self.edge_map[x].take().unwrap();
                    self.inverse[y] = None;
                }
                return None;
            }
            if self.edge_map[ia].is_none() {
                self.edge_map[ia] = Some((ib, flip));
                self.inverse[ib] = Some(ia);
                assigned.push(ia);
            }
        }
        Some(assigned)
    }

    fn ends_match(&self, la: u32, lb: u32, flip: bool) -> bool {
        [EndKind::Tail, EndKind::Head].iter().all(|&kind| {
            let ea = End { label: la, kind };
            let eb = End {
                label: lb,
                kind: if flip { kind.other() } else { kind },
            };
            self.a.end_inv[&ea] == self.b.end_inv[&eb]
        })
    }

    fn snapshot(&self) -> ComplexIso {
        let edge_map = self
            .a
            .c
            .edges()
            .iter()
            .enumerate()
            .map(|(ia, &l)| {
                let (ib, flip) = self.edge_map[ia].unwrap();
                (l, SignedEdge::new(self.b.c.edges()[ib], flip))
            })
            .collect();
        let face_map = self.face_map.iter().map(|f| f.unwrap()).collect();
        ComplexIso { edge_map, face_map }
    }
}

pub fn isomorphism(a: &Complex, b: &Complex, pointed: Option<(VertexId, VertexId)>) -> Option<ComplexIso> {
    let (da, db) = match pointed {
        Some((va, vb)) => {
            if va.0 >= a.vertex_count() || vb.0 >= b.vertex_count() {
                return None;
            }
            (Decoration::pointed(a, va), Decoration::pointed(b, vb))
        }
        None => (Decoration::default(), Decoration::default()),
    };
    find_isomorphisms(a, &da, b, &db, 1).into_iter().next()
}

pub fn isomorphic(a: &Complex, b: &Complex) -> bool {
    isomorphism(a, b, None).is_some()
}

/// Every automorphism preserving the decoration (distinct edge and face maps).
pub fn automorphisms(c: &Complex, deco: &Decoration) -> Vec<ComplexIso> {
    find_isomorphisms(c, deco, c, deco, usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn identity_is_found() {
        let c = data::v23();
        let iso = isomorphism(&c, &c, None).unwrap();
        assert_eq!(iso.then(&iso.inverse()), ComplexIso::identity(&c));
    }

    #[test]
    fn different_sizes_are_rejected() {
        let t: Complex = "[[1,2,3]]".parse().unwrap();
        assert!(isomorphism(&data::v23(), &t, None).is_none());
    }

    #[test]
    fn fake_cover_is_not_the_cover() {
        assert!(!isomorphic(&data::x_double_prime(), &data::x_prime()));
    }

    #[test]
    fn relabeling_is_detected() {
        let c = data::x_prime();
        let r = c.relabeled(|l| SignedEdge::new(40 - l, l % 3 == 0));
        let iso = isomorphism(&c, &r, None).unwrap();
        for (fi, w) in c.faces().iter().enumerate() {
            let img = w.map(|s| iso.apply(s)).canonical();
            assert_eq!(img, r.faces()[iso.face_map[fi]].canonical());
        }
    }

    #[test]
    fn pointed_isomorphism_respects_basepoints() {
        let c = data::x_prime();
        for v in c.vertices() {
            for w in c.vertices() {
                // the sheet swap exchanges the two vertices
                assert!(isomorphism(&c, &c, Some((v, w))).is_some());
            }
        }
    }
}
