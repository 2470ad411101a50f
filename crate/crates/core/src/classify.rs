//! Exhaustive search for one-vertex cobordisms of rank 7/4 between connected
//! collars of type S or T.
//!
//! The interior vertex `v` has link `L` (Moebius-Kantor). Each collar side is
//! a root of `L`: an embedded path `p0 p1 p2 p3` whose vertices are the `v`-ends
//! of four half-edges `h_p` running from `v` to the outer vertex. The remaining
//! eight vertices of `L` are the ends of four loops at `v`. Faces:
//!
//! * `[h_p, b, -h_q]` for every root edge `p q`, with `b` a boundary loop;
//! * `[-h_p, g, h_q]` for every pair of root-to-loop edges `p u`, `u' q` where
//!   `u, u'` are the two ends of loop `g`;
//! * loop triangles on the remaining loop-to-loop edges of `L`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::bord::{self, Cobordism, CollarSide};
use crate::canon::canonical_form;
use crate::catalog::{moebius_kantor_lcf, NamedGraph};
use crate::collar::separating_collar;
use crate::complex::{Complex, End, EndKind, FaceWord, SignedEdge, VertexId};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

/// Embedded path of length 3, stored in the smaller of its two directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root([usize; 4]);

impl Root {
    pub fn new(l: &MultiGraph, path: [usize; 4]) -> Result<Root> {
        let distinct: BTreeSet<usize> = path.iter().copied().collect();
        if distinct.len() != 4 {
            return Err(Error::Precondition(format!("{path:?} repeats a vertex")));
        }
        if path.iter().any(|&p| p >= l.vertex_count()) {
            return Err(Error::Precondition(format!("{path:?} leaves the graph")));
        }
        if (0..3).any(|i| l.multiplicity(path[i], path[i + 1]) == 0) {
            return Err(Error::Precondition(format!("{path:?} is not a path")));
        }
        Ok(Root::oriented(path))
    }

    fn oriented(path: [usize; 4]) -> Root {
        let mut rev = path;
        rev.reverse();
        Root(path.min(rev))
    }

    pub fn path(&self) -> [usize; 4] {
        self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn edges(&self) -> [(usize, usize); 3] {
        let p = self.0;
        [(p[0], p[1]), (p[1], p[2]), (p[2], p[3])]
    }

    fn mapped(&self, perm: &[usize]) -> Root {
        Root::oriented(self.0.map(|v| perm[v]))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.0;
        write!(f, "({} {} {} {})", p[0], p[1], p[2], p[3])
    }
}

pub fn enumerate_roots(l: &MultiGraph) -> Vec<Root> {
    let nb = l.neighbors();
    let mut out = BTreeSet::new();
    for a in 0..l.vertex_count() {
        for &b in &nb[a] {
            for &c in &nb[b] {
                for &d in &nb[c] {
                    let p = [a, b, c, d];
                    if let Ok(r) = Root::new(l, p) {
                        out.insert(r);
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Orbits of roots under the automorphism group, each sorted, ordered by
/// least member.
pub fn root_orbits(l: &MultiGraph, roots: &[Root]) -> Result<Vec<Vec<Root>>> {
    let gens = l.automorphisms()?.generators;
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for &r in roots {
        if seen.contains(&r) {
            continue;
        }
        let mut orbit = BTreeSet::from([r]);
        let mut queue = VecDeque::from([r]);
        while let Some(s) = queue.pop_front() {
            for g in &gens {
                let t = s.mapped(g);
                if orbit.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        seen.extend(orbit.iter().copied());
        orbits.push(orbit.into_iter().collect());
    }
    Ok(orbits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComplementShape {
    /// A path on six vertices.
    Segment5,
    /// A root and a disjoint edge.
    RootPlusEdge,
    Other,
}

impl ComplementShape {
    /// The rank label attached to roots of this shape.
    pub fn rank(self) -> Option<&'static str> {
        match self {
            ComplementShape::Segment5 => Some("2"),
            ComplementShape::RootPlusEdge => Some("3/2"),
            ComplementShape::Other => None,
        }
    }
}

impl fmt::Display for ComplementShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplementShape::Segment5 => "segment5",
            ComplementShape::RootPlusEdge => "root_plus_edge",
            ComplementShape::Other => "other",
        })
    }
}

/// Vertices at distance at least 2 from the root.
fn complement(l: &MultiGraph, alpha: &Root) -> Vec<usize> {
    let nb = l.neighbors();
    let mut near: BTreeSet<usize> = alpha.0.iter().copied().collect();
    for &p in &alpha.0 {
        near.extend(nb[p].iter().copied());
    }
    (0..l.vertex_count()).filter(|v| !near.contains(v)).collect()
}

fn is_path(g: &MultiGraph) -> bool {
    g.is_connected()
        && g.edge_count() + 1 == g.vertex_count()
        && g.degrees().iter().all(|&d| d <= 2)
}

pub fn root_complement_shape(l: &MultiGraph, alpha: &Root) -> ComplementShape {
    let keep = complement(l, alpha);
    let g = l.induced(&keep);
    if g.vertex_count() == 6 && is_path(&g) {
        return ComplementShape::Segment5;
    }
    let comps = g.components();
    let mut sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    if sizes == [2, 4] && comps.iter().all(|c| is_path(&g.induced(c))) {
        return ComplementShape::RootPlusEdge;
    }
    ComplementShape::Other
}

/// Roots inside the complement of the closed 1-neighborhood of `alpha`.
pub fn partner_candidates(l: &MultiGraph, alpha: &Root) -> Vec<Root> {
    let keep: BTreeSet<usize> = complement(l, alpha).into_iter().collect();
    enumerate_roots(l)
        .into_iter()
        .filter(|r| r.0.iter().all(|v| keep.contains(v)))
        .collect()
}

/// Candidates admitting at least one configuration.
pub fn partner_roots(l: &MultiGraph, alpha: &Root) -> Vec<Root> {
    partner_candidates(l, alpha)
        .into_iter()
        .filter(|b| !raw_configurations(l, alpha, b).is_empty())
        .collect()
}

/// A face `[-h_p, g, h_q]`: link edges `p u` and `u2 q`, `u, u2` the ends of `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Apex {
    pub p: usize,
    pub u: usize,
    pub u2: usize,
    pub q: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Configuration {
    pub alpha: Root,
    pub beta: Root,
    /// Loop pairs `(a, b)`, `a < b`; `a` is the tail end.
    pub loops: Vec<(usize, usize)>,
    /// Apex faces, those of `alpha` first.
    pub apexes: Vec<Apex>,
    /// Loop triangles as link corners `(finish, next start)`.
    pub core: Vec<[(usize, usize); 3]>,
}

fn perfect_matchings(vs: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if vs.is_empty() {
        return vec![Vec::new()];
    }
    let a = vs[0];
    let mut out = Vec::new();
    for i in 1..vs.len() {
        let rest: Vec<usize> = vs[1..]
            .iter()
            .enumerate()
            .filter(|&(j, _)| j + 1 != i)
            .map(|(_, &v)| v)
            .collect();
        for mut m in perfect_matchings(&rest) {
            m.insert(0, (a, vs[i]));
            out.push(m);
        }
    }
    out
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Pair each root-to-loop edge with the one reached across its loop.
fn apexes(
    nb: &[Vec<usize>],
    roots: [&Root; 2],
    mate: &BTreeMap<usize, usize>,
    used: &mut BTreeSet<(usize, usize)>,
) -> Option<Vec<Apex>> {
    let mut out = Vec::new();
    for r in roots {
        for &p in &r.0 {
            for &u in &nb[p] {
                if r.contains(u) || used.contains(&key(p, u)) {
                    continue;
                }
                let u2 = *mate.get(&u)?;
                let qs: Vec<usize> = nb[u2]
                    .iter()
                    .copied()
                    .filter(|&q| r.contains(q) && !used.contains(&key(q, u2)) && key(q, u2) != key(p, u))
                    .collect();
                if qs.len() != 1 {
                    return None;
                }
                let q = qs[0];
                used.insert(key(p, u));
                used.insert(key(u2, q));
                out.push(Apex { p, u, u2, q });
            }
        }
    }
    Some(out)
}

/// Partitions of the loop-to-loop edges into closed triangles: corners
/// `(a, b), (b', c), (c', d)` with `d' = a`, primes denoting loop mates.
fn triangles(edges: &[(usize, usize)], mate: &BTreeMap<usize, usize>) -> Vec<Vec<[(usize, usize); 3]>> {
    if edges.is_empty() {
        return vec![Vec::new()];
    }
    let (u, w) = edges[0];
    let mut out = Vec::new();
    for (a, b) in [(u, w), (w, u)] {
        let b2 = mate[&b];
        for (i, &e1) in edges.iter().enumerate().skip(1) {
            let c = match e1 {
                (s, t) if s == b2 => t,
                (s, t) if t == b2 => s,
                _ => continue,
            };
            let c2 = mate[&c];
            for (j, &e2) in edges.iter().enumerate().skip(1) {
                if j == i {
                    continue;
                }
                let d = match e2 {
                    (s, t) if s == c2 => t,
                    (s, t) if t == c2 => s,
                    _ => continue,
                };
                if mate[&d] != a {
                    continue;
                }
                let rest: Vec<(usize, usize)> = edges
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != 0 && k != i && k != j)
                    .map(|(_, &e)| e)
                    .collect();
                for mut tail in triangles(&rest, mate) {
                    tail.insert(0, [(a, b), (b2, c), (c2, d)]);
                    out.push(tail);
                }
            }
        }
    }
    out
}

/// All configurations for the pair, before any isomorphism reduction. Loop
/// triangles traversed in either direction count once.
pub fn raw_configurations(l: &MultiGraph, alpha: &Root, beta: &Root) -> Vec<Configuration> {
    if alpha.0.iter().any(|&v| beta.contains(v)) {
        return Vec::new();
    }
    let nb = l.neighbors();
    let rest: Vec<usize> = (0..l.vertex_count())
        .filter(|&v| !alpha.contains(v) && !beta.contains(v))
        .collect();
    let root_edges: BTreeSet<(usize, usize)> = alpha
        .edges()
        .into_iter()
        .chain(beta.edges())
        .map(|(a, b)| key(a, b))
        .collect();
    let mut out = BTreeSet::new();
    for m in perfect_matchings(&rest) {
        let mut mate = BTreeMap::new();
        for &(a, b) in &m {
            mate.insert(a, b);
            mate.insert(b, a);
        }
        let mut used = BTreeSet::new();
        let Some(apx) = apexes(&nb, [alpha, beta], &mate, &mut used) else {
            continue;
        };
        let remaining: Vec<(usize, usize)> = l
            .edges()
            .iter()
            .copied()
            .filter(|e| !used.contains(e) && !root_edges.contains(e))
            .collect();
        if remaining
            .iter()
            .any(|&(a, b)| !mate.contains_key(&a) || !mate.contains_key(&b))
        {
            continue;
        }
        let mut seen_cores = BTreeSet::new();
        for core in triangles(&remaining, &mate) {
            let conf = Configuration {
                alpha: *alpha,
                beta: *beta,
                loops: m.clone(),
                apexes: apx.clone(),
                core,
            };
            let faces: BTreeSet<FaceWord> = build_faces(&conf)
                .into_iter()
                .map(|w| w.canonical())
                .collect();
            if seen_cores.insert(faces) {
                out.insert(conf);
            }
        }
    }
    out.into_iter().collect()
}

struct Labels {
    loop_of: BTreeMap<usize, (u32, EndKind)>,
    half: BTreeMap<usize, u32>,
    boundary: Vec<u32>,
}

fn labels(conf: &Configuration) -> Labels {
    let mut next = 0u32;
    let mut fresh = || {
        next += 1;
        next
    };
    let mut loop_of = BTreeMap::new();
    let mut pairs = conf.loops.clone();
    pairs.sort_unstable();
    for (a, b) in pairs {
        let e = fresh();
        loop_of.insert(a, (e, EndKind::Tail));
        loop_of.insert(b, (e, EndKind::Head));
    }
    let mut half = BTreeMap::new();
    for p in conf.alpha.0.iter().chain(&conf.beta.0) {
        half.insert(*p, fresh());
    }
    let boundary = (0..6).map(|_| fresh()).collect();
    Labels {
        loop_of,
        half,
        boundary,
    }
}

/// Boundary faces of alpha, of beta, then apex faces, then loop triangles.
fn build_faces(conf: &Configuration) -> Vec<FaceWord> {
    let lab = labels(conf);
    let h = |p: usize| SignedEdge::forward(lab.half[&p]);
    let mut faces = Vec::new();
    for (k, r) in [conf.alpha, conf.beta].iter().enumerate() {
        for (i, (p, q)) in r.edges().into_iter().enumerate() {
            let b = SignedEdge::forward(lab.boundary[3 * k + i]);
            faces.push(vec![h(p), b, h(q).inverse()]);
        }
    }
    // the loop letter runs from end u to end u2
    let through = |u: usize| {
        let (e, kind) = lab.loop_of[&u];
        SignedEdge::new(e, kind == EndKind::Head)
    };
    for a in &conf.apexes {
        faces.push(vec![h(a.p).inverse(), through(a.u), h(a.q)]);
    }
    // the letter finishing at end a
    let into = |a: usize| {
        let (e, kind) = lab.loop_of[&a];
        SignedEdge::new(e, kind == EndKind::Tail)
    };
    for t in &conf.core {
        faces.push(t.iter().map(|&(a, _)| into(a)).collect());
    }
    faces.into_iter().map(|w| FaceWord::new(w).unwrap()).collect()
}

/// The cobordism of a configuration: alpha's collar on the left, beta's on the right.
pub fn assemble_cobordism(conf: &Configuration) -> Result<Cobordism> {
    let lab = labels(conf);
    let body = Complex::new(build_faces(conf));
    let split = conf
        .apexes
        .iter()
        .position(|a| !conf.alpha.contains(a.p))
        .unwrap_or(conf.apexes.len());
    let left_faces: Vec<usize> = (0..3).chain((6..6 + split).collect::<Vec<_>>()).collect();
    let right_faces: Vec<usize> = (3..6).chain(6 + split..6 + conf.apexes.len()).collect();
    let cob = Cobordism::new(
        body,
        CollarSide::new(left_faces, lab.boundary[..3].to_vec()),
        CollarSide::new(right_faces, lab.boundary[3..].to_vec()),
    )
    .map_err(|e| Error::SearchBug(e.to_string()))?;
    let c = &cob.body;
    if c.vertex_count() != 3 {
        return Err(Error::SearchBug(format!("{} vertices", c.vertex_count())));
    }
    let v = interior_vertex(c);
    if !c.link(v)?.graph.is_isomorphic(&NamedGraph::MoebiusKantor.graph()) {
        return Err(Error::SearchBug("interior link is not Moebius-Kantor".into()));
    }
    Ok(cob)
}

fn interior_vertex(c: &Complex) -> VertexId {
    c.vertex_of(End {
        label: 1,
        kind: EndKind::Tail,
    })
}

/// Collar types (catalog short names) on the left and right of a cobordism
/// with a single interior vertex.
pub fn collar_types(cob: &Cobordism) -> Result<Vec<Option<NamedGraph>>> {
    let c = &cob.body;
    let inner = c.interior_vertices();
    let [v] = inner[..] else {
        return Err(Error::Precondition("expected one interior vertex".into()));
    };
    let mut out = Vec::new();
    for side in [&cob.left, &cob.right] {
        let w = side.boundary.first().map(|&e| c.tail(e));
        out.push(match w {
            Some(w) => separating_collar(c, v, w)?.classify(),
            None => None,
        });
    }
    Ok(out)
}

/// Configurations whose collars are of type S or T, one per isomorphism class
/// of cobordism, each with its cobordism.
pub fn enumerate_configurations(l: &MultiGraph, alpha: &Root, beta: &Root) -> Result<Vec<(Configuration, Cobordism)>> {
    let mut out: Vec<(Configuration, Cobordism)> = Vec::new();
    for conf in raw_configurations(l, alpha, beta) {
        let Some(cob) = admissible(&conf)? else { continue };
        if !out.iter().any(|(_, c)| bord::cobordisms_isomorphic(c, &cob)) {
            out.push((conf, cob));
        }
    }
    Ok(out)
}

fn admissible(conf: &Configuration) -> Result<Option<Cobordism>> {
    let body = Complex::new(build_faces(conf));
    if body.vertex_count() != 3 {
        return Ok(None);
    }
    let cob = assemble_cobordism(conf)?;
    let st = [NamedGraph::NerveS, NamedGraph::NerveT];
    let ok = collar_types(&cob)?
        .iter()
        .all(|t| t.is_some_and(|t| st.contains(&t)));
    Ok(ok.then_some(cob))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Checkpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub checkpoints: Vec<Checkpoint>,
    /// The rank-3/2 cobordism first, then the rank-2 one.
    pub cobordisms: Vec<Cobordism>,
}

impl Classification {
    pub fn pass(&self) -> bool {
        self.checkpoints.iter().all(|c| c.pass)
    }

    pub fn checkpoint(&self, name: &str) -> Option<&Checkpoint> {
        self.checkpoints.iter().find(|c| c.name == name)
    }
}

/// The duality of the rank-3/2 cobordism, on the LCF drawing of `L` (1-based).
pub const DUALITY_CYCLES: [(usize, usize); 8] =
    [(3, 14), (2, 9), (1, 10), (16, 5), (7, 12), (8, 13), (6, 11), (4, 15)];

/// Roots and loops realizing that duality in the LCF drawing (1-based).
pub const LCF_ALPHA: [usize; 4] = [3, 2, 1, 16];
pub const LCF_BETA: [usize; 4] = [5, 10, 9, 14];
pub const LCF_LOOPS: [(usize, usize); 4] = [(7, 12), (6, 11), (4, 13), (8, 15)];

/// Edges of `L` whose distance to both roots is exactly 2.
pub fn edges_at_distance_two(l: &MultiGraph, alpha: &Root, beta: &Root) -> Vec<(usize, usize)> {
    let dist_to = |r: &Root| -> Vec<usize> {
        let mut best = vec![usize::MAX; l.vertex_count()];
        for &p in &r.0 {
            for (v, d) in l.distances(p).into_iter().enumerate() {
                best[v] = best[v].min(d);
            }
        }
        best
    };
    let (da, db) = (dist_to(alpha), dist_to(beta));
    l.edges()
        .iter()
        .copied()
        .filter(|&(a, b)| da[a].min(da[b]) == 2 && db[a].min(db[b]) == 2)
        .collect()
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> Checkpoint {
    Checkpoint {
        name: name.to_string(),
        pass,
        detail: detail.into(),
    }
}

/// Whether some self-duality of `cob` acts on the link of its interior vertex
/// as `perm` does on `L`, when the link is identified with `L` by the
/// construction of `conf`.
pub fn duality_realizes(conf: &Configuration, cob: &Cobordism, perm: &[usize]) -> bool {
    let lab = labels(conf);
    // link vertex of L  ->  end at the interior vertex
    let mut end_of: BTreeMap<usize, End> = BTreeMap::new();
    for (&u, &(e, kind)) in &lab.loop_of {
        end_of.insert(u, End { label: e, kind });
    }
    for (&p, &e) in &lab.half {
        end_of.insert(p, End { label: e, kind: EndKind::Tail });
    }
    let vertex_of: BTreeMap<End, usize> = end_of.iter().map(|(&u, &e)| (e, u)).collect();
    bord::dualities(cob).iter().any(|d| {
        end_of.iter().all(|(&u, &e)| {
            vertex_of.get(&d.apply_end(e)) == Some(&perm[u])
        })
    })
}

/// The full search on the LCF drawing of `L`, including the check of the
/// stated duality permutation.
pub fn classify_st() -> Result<Classification> {
    let l = moebius_kantor_lcf();
    let mut out = classify_graph(&l)?;
    let cp = duality_checkpoint(&l, &out.cobordisms)?;
    out.checkpoints.push(cp);
    Ok(out)
}

/// The search on any labeling of the Moebius-Kantor graph.
pub fn classify_graph(l: &MultiGraph) -> Result<Classification> {
    if !l.is_isomorphic(&NamedGraph::MoebiusKantor.graph()) {
        return Err(Error::Precondition("the link graph must be Moebius-Kantor".into()));
    }
    let l = l.clone();
    let mut cps = Vec::new();

    let roots = enumerate_roots(&l);
    let orbits = root_orbits(&l, &roots)?;
    cps.push(check(
        "root orbits",
        orbits.len() == 2,
        format!("{} roots in {} orbits", roots.len(), orbits.len()),
    ));

    let shapes: Vec<ComplementShape> = orbits
        .iter()
        .map(|o| root_complement_shape(&l, &o[0]))
        .collect();
    let uniform = orbits
        .iter()
        .zip(&shapes)
        .all(|(o, &s)| o.iter().all(|r| root_complement_shape(&l, r) == s));
    let mut sorted_shapes = shapes.clone();
    sorted_shapes.sort();
    cps.push(check(
        "complement shapes",
        uniform && sorted_shapes == [ComplementShape::Segment5, ComplementShape::RootPlusEdge],
        shapes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "),
    ));

    // per orbit: representative, partners, configurations
    let mut per_case: Vec<(ComplementShape, Root, Root, Configuration, Cobordism)> = Vec::new();
    for (orbit, &shape) in orbits.iter().zip(&shapes) {
        let alpha = orbit[0];
        let rank = shape.rank().unwrap_or("?");
        let raw = partner_candidates(&l, &alpha);
        let expected = if shape == ComplementShape::Segment5 { 3 } else { 1 };
        cps.push(check(
            &format!("raw partners (rank {rank})"),
            raw.len() == expected,
            format!("{} candidates", raw.len()),
        ));
        let partners = partner_roots(&l, &alpha);
        let same_rank = partners
            .iter()
            .all(|b| root_complement_shape(&l, b) == shape);
        cps.push(check(
            &format!("unique partner (rank {rank})"),
            partners.len() == 1 && same_rank,
            format!(
                "{} partner(s): {}",
                partners.len(),
                partners.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ")
            ),
        ));
        let Some(&beta) = partners.first() else { continue };
        let confs = enumerate_configurations(&l, &alpha, &beta)?;
        cps.push(check(
            &format!("unique configuration (rank {rank})"),
            confs.len() == 1,
            format!("{} configuration(s) up to isomorphism", confs.len()),
        ));
        if let Some((conf, cob)) = confs.into_iter().next() {
            if shape != ComplementShape::RootPlusEdge {
                per_case.push((shape, alpha, beta, conf, cob));
                continue;
            }
            let forced = edges_at_distance_two(&l, &alpha, &beta);
            let is_loop = |&(a, b): &(usize, usize)| conf.loops.contains(&key(a, b));
            cps.push(check(
                "forced first loop (rank 3/2)",
                forced.len() == 1 && forced.iter().all(is_loop),
                format!("{} edge(s) at distance 2 from both roots: {:?}", forced.len(), forced),
            ));
            per_case.push((shape, alpha, beta, conf, cob));
        }
    }

    // exhaustive pass over every ordered pair of disjoint roots
    let mut classes: Vec<(Complex, Cobordism)> = Vec::new();
    let mut raw_total = 0;
    let mut outside_partners = 0;
    for alpha in &roots {
        let partners: BTreeSet<Root> = partner_roots(&l, alpha).into_iter().collect();
        for beta in &roots {
            let confs = raw_configurations(&l, alpha, beta);
            for conf in confs {
                let Some(cob) = admissible(&conf)? else { continue };
                raw_total += 1;
                if !partners.contains(beta) {
                    outside_partners += 1;
                }
                let canon = canonical_form(&cob.body);
                let known = classes.iter().any(|(k, c)| *k == canon && bord::cobordisms_isomorphic(c, &cob));
                if !known {
                    classes.push((canon, cob));
                }
            }
        }
    }
    cps.push(check(
        "partners cover all solutions",
        outside_partners == 0,
        format!("{raw_total} solutions, {outside_partners} with a non-partner root"),
    ));
    cps.push(check(
        "two cobordism classes",
        classes.len() == 2,
        format!("{} class(es)", classes.len()),
    ));

    let mut all_s = true;
    let mut any_t = false;
    let mut self_dual = true;
    for (_, cob) in &classes {
        for t in collar_types(cob)? {
            all_s &= t == Some(NamedGraph::NerveS);
            any_t |= t == Some(NamedGraph::NerveT);
        }
        self_dual &= !bord::dualities(cob).is_empty();
    }
    cps.push(check("collars of type S", all_s, "every boundary collar classifies as S"));
    cps.push(check("no collar of type T", !any_t, "type T excluded"));
    cps.push(check("self-dual", self_dual, "every class is isomorphic to its dual"));

    // order: rank 3/2 first
    let mut cobordisms = Vec::new();
    for want in [ComplementShape::RootPlusEdge, ComplementShape::Segment5] {
        if let Some((_, _, _, _, cob)) = per_case.iter().find(|c| c.0 == want) {
            cobordisms.push(cob.clone());
        }
    }
    let matched = cobordisms.len() == 2
        && cobordisms.iter().all(|c| {
            classes.iter().any(|(k, d)| *k == canonical_form(&c.body) && bord::cobordisms_isomorphic(c, d))
        })
        && !bord::cobordisms_isomorphic(&cobordisms[0], &cobordisms[1]);
    cps.push(check(
        "cases match classes",
        matched,
        "the two per-case cobordisms are the two classes",
    ));

    Ok(Classification {
        checkpoints: cps,
        cobordisms,
    })
}

fn duality_checkpoint(l: &MultiGraph, cobordisms: &[Cobordism]) -> Result<Checkpoint> {
    let name = "duality permutation";
    let zero = |p: [usize; 4]| p.map(|v| v - 1);
    let alpha = Root::new(l, zero(LCF_ALPHA))?;
    let beta = Root::new(l, zero(LCF_BETA))?;
    let mut perm: Vec<usize> = (0..16).collect();
    for (a, b) in DUALITY_CYCLES {
        perm[a - 1] = b - 1;
        perm[b - 1] = a - 1;
    }
    let is_aut = l.permuted(&perm).canonical_form() == l.canonical_form()
        && l.edges().iter().all(|&(a, b)| l.multiplicity(perm[a], perm[b]) > 0);
    let loops: Vec<(usize, usize)> = LCF_LOOPS.iter().map(|&(a, b)| key(a - 1, b - 1)).collect();
    let confs = raw_configurations(l, &alpha, &beta);
    let conf = confs.iter().find(|c| {
        let mut mine = c.loops.clone();
        mine.sort_unstable();
        let mut want = loops.clone();
        want.sort_unstable();
        mine == want
    });
    let Some(conf) = conf else {
        return Ok(check(name, false, "no configuration with the stated loops"));
    };
    let Some(cob) = admissible(conf)? else {
        return Ok(check(name, false, "stated configuration is not admissible"));
    };
    let first = cobordisms
        .first()
        .is_some_and(|c| bord::cobordisms_isomorphic(c, &cob));
    let realized = duality_realizes(conf, &cob, &perm);
    Ok(check(
        name,
        is_aut && first && realized,
        format!("automorphism of L: {is_aut}; first class: {first}; realized by a self-duality: {realized}"),
    ))
}
