//! Cobordisms between collar closures: gluing, duality, identities, splitting
//! and edge-flip surgery.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::collar::Collar;
use crate::complex::{Complex, FaceWord, SignedEdge, VertexId};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::iso::{self, ComplexIso, Decoration};
use crate::types::affiliated_type;

/// One end of a cobordism: the faces of a collar closure inside the body and
/// the body boundary edges on that end.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CollarSide {
    pub faces: Vec<usize>,
    pub boundary: Vec<u32>,
}

impl CollarSide {
    pub fn new(mut faces: Vec<usize>, mut boundary: Vec<u32>) -> Self {
        faces.sort_unstable();
        faces.dedup();
        boundary.sort_unstable();
        boundary.dedup();
        CollarSide { faces, boundary }
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End2 {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cobordism {
    pub body: Complex,
    pub left: CollarSide,
    pub right: CollarSide,
}

impl Cobordism {
    pub fn new(body: Complex, left: CollarSide, right: CollarSide) -> Result<Self> {
        let c = Cobordism { body, left, right };
        c.validate()?;
        Ok(c)
    }

    /// A complex without boundary, seen as an arrow between empty collars.
    pub fn closed(body: Complex) -> Result<Self> {
        Cobordism::new(body, CollarSide::default(), CollarSide::default())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCobordism(m));
        let nf = self.body.face_count();
        for (name, side) in [("left", &self.left), ("right", &self.right)] {
            if let Some(&f) = side.faces.iter().find(|&&f| f >= nf) {
                return bad(format!("{name} face {f} out of range"));
            }
            let in_faces: BTreeSet<u32> = side
                .faces
                .iter()
                .flat_map(|&f| self.body.faces()[f].letters().iter().map(|s| s.label()))
                .collect();
            if let Some(e) = side.boundary.iter().find(|e| !in_faces.contains(e)) {
                return bad(format!("{name} boundary edge {e} is not in a {name} face"));
            }
        }
        let l: BTreeSet<usize> = self.left.faces.iter().copied().collect();
        if self.left.faces != self.right.faces && self.right.faces.iter().any(|f| l.contains(f)) {
            return bad("left and right faces overlap".into());
        }
        let lb: BTreeSet<u32> = self.left.boundary.iter().copied().collect();
        let rb: BTreeSet<u32> = self.right.boundary.iter().copied().collect();
        if !lb.is_disjoint(&rb) {
            return bad("left and right boundaries share an edge".into());
        }
        let all: BTreeSet<u32> = lb.union(&rb).copied().collect();
        let actual: BTreeSet<u32> = self.body.boundary_edges().into_iter().collect();
        if all != actual {
            return bad(format!(
                "boundary edges {:?} differ from the declared {:?}",
                actual, all
            ));
        }
        Ok(())
    }

    pub fn side(&self, end: End2) -> &CollarSide {
        match end {
            End2::Left => &self.left,
            End2::Right => &self.right,
        }
    }

    pub fn closure(&self, end: End2) -> Complex {
        self.body.subcomplex(&self.side(end).faces)
    }

    pub fn is_filling(&self) -> bool {
        self.left.is_empty() || self.right.is_empty()
    }

    pub fn dual(&self) -> Cobordism {
        Cobordism {
            body: self.body.clone(),
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    /// The unit arrow on one end: that end's collar closure, with the given
    /// boundary kept on the same end and the inner edges on the other.
    pub fn identity(&self, end: End2) -> Cobordism {
        let side = self.side(end);
        let body = self.closure(end);
        let all: Vec<usize> = (0..body.face_count()).collect();
        let outer: BTreeSet<u32> = side.boundary.iter().copied().collect();
        let inner: Vec<u32> = once_edges(&body).into_iter().filter(|e| !outer.contains(e)).collect();
        let kept = CollarSide::new(all.clone(), side.boundary.clone());
        let other = CollarSide::new(all, inner);
        let (left, right) = match end {
            End2::Right => (other, kept),
            End2::Left => (kept, other),
        };
        Cobordism { body, left, right }
    }

    /// Colors faces and boundary edges by end, for isomorphisms of cobordisms.
    pub fn decoration(&self) -> Decoration {
        let mut d = Decoration::default();
        for &f in &self.left.faces {
            *d.faces.entry(f).or_insert(0) += 1;
        }
        for &f in &self.right.faces {
            *d.faces.entry(f).or_insert(0) += 2;
        }
        for &e in &self.left.boundary {
            d.edges.insert(e, 1);
        }
        for &e in &self.right.boundary {
            d.edges.insert(e, 2);
        }
        d
    }

    /// Relabel edges to `1..=n` in increasing order.
    pub fn compacted(&self) -> Cobordism {
        self.compacted_with_map().0
    }

    /// [`Cobordism::compacted`] with the induced map on signed edges.
    pub fn compacted_with_map(&self) -> (Cobordism, impl Fn(SignedEdge) -> SignedEdge) {
        let (body, map) = self.body.compacted();
        let side = |s: &CollarSide| {
            CollarSide::new(s.faces.clone(), s.boundary.iter().map(|e| map[e]).collect())
        };
        let out = Cobordism {
            left: side(&self.left),
            right: side(&self.right),
            body,
        };
        (out, move |s: SignedEdge| SignedEdge::new(map[&s.label()], s.is_reversed()))
    }

    pub fn to_toml(&self) -> String {
        let file = CobordismFile {
            faces: self.body.to_ints(),
            left: SideFile::from(&self.left),
            right: SideFile::from(&self.right),
        };
        toml::to_string(&file).expect("plain data serializes")
    }

    pub fn from_toml(text: &str) -> Result<Cobordism> {
        let file: CobordismFile =
            toml::from_str(text).map_err(|e| Error::CobordismFile(e.to_string()))?;
        if file.faces.is_empty() {
            return Err(Error::EmptyFaceList);
        }
        let body = Complex::from_ints(&file.faces)?;
        Cobordism::new(body, file.left.into(), file.right.into())
    }
}

impl fmt::Display for Cobordism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_toml())
    }
}

#[derive(Serialize, Deserialize, Default)]
struct SideFile {
    #[serde(default)]
    faces: Vec<usize>,
    #[serde(default)]
    boundary: Vec<u32>,
}

impl From<&CollarSide> for SideFile {
    fn from(s: &CollarSide) -> Self {
        SideFile {
            faces: s.faces.clone(),
            boundary: s.boundary.clone(),
        }
    }
}

impl From<SideFile> for CollarSide {
    fn from(s: SideFile) -> Self {
        CollarSide::new(s.faces, s.boundary)
    }
}

#[derive(Serialize, Deserialize)]
struct CobordismFile {
    faces: Vec<Vec<i64>>,
    #[serde(default)]
    left: SideFile,
    #[serde(default)]
    right: SideFile,
}

fn once_edges(c: &Complex) -> Vec<u32> {
    c.boundary_edges()
}

/// Decorations for gluing the right end of `x` onto the left end of `y`:
/// the outer boundary of one closure must land on the inner boundary of the
/// other.
fn gluing_decorations(x: &Cobordism, y: &Cobordism) -> ((Complex, Decoration), (Complex, Decoration)) {
    let d = x.closure(End2::Right);
    let c = y.closure(End2::Left);
    let mut dd = Decoration::default();
    let outer: BTreeSet<u32> = x.right.boundary.iter().copied().collect();
    for e in once_edges(&d) {
        dd.edges.insert(e, if outer.contains(&e) { 1 } else { 2 });
    }
    let mut dc = Decoration::default();
    let outer: BTreeSet<u32> = y.left.boundary.iter().copied().collect();
    for e in once_edges(&c) {
        dc.edges.insert(e, if outer.contains(&e) { 2 } else { 1 });
    }
    ((d, dd), (c, dc))
}

/// Every admissible identification of `x`'s right closure with `y`'s left
/// closure, in increasing order. Maps are between closures (closure face
/// indices, body edge labels).
pub fn matchings(x: &Cobordism, y: &Cobordism) -> Vec<ComplexIso> {
    let ((d, dd), (c, dc)) = gluing_decorations(x, y);
    let mut all = iso::find_isomorphisms(&d, &dd, &c, &dc, usize::MAX);
    all.sort_by_key(ComplexIso::key);
    all
}

#[derive(Clone, Copy, Debug)]
pub struct ComposeOptions {
    pub require_unique: bool,
    /// Check that every interior link of the result appears among the
    /// interior links of the inputs.
    pub check_type: bool,
}

impl Default for ComposeOptions {
    fn default() -> Self {
        ComposeOptions {
            require_unique: false,
            check_type: true,
        }
    }
}

fn check_matching(x: &Cobordism, y: &Cobordism, m: &ComplexIso) -> Result<()> {
    let ((d, dd), (c, dc)) = gluing_decorations(x, y);
    let ok = m.face_map.len() == d.face_count()
        && d.edges().iter().all(|e| m.edge_map.contains_key(e))
        && iso::find_isomorphisms(&d, &dd, &c, &dc, usize::MAX).contains(m);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidMatching(
            "not an isomorphism of the collar closures".into(),
        ))
    }
}

/// Where the edges and faces of the inputs of a gluing ended up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    /// Input edge label to signed result edge, one map per input.
    pub edges: Vec<BTreeMap<u32, SignedEdge>>,
    /// Input face index to result face index, one vector per input.
    pub faces: Vec<Vec<usize>>,
}

/// Glue `y` after `x` along `x.right` and `y.left`.
pub fn compose(
    x: &Cobordism,
    y: &Cobordism,
    matching: Option<&ComplexIso>,
    opts: ComposeOptions,
) -> Result<Cobordism> {
    compose_traced(x, y, matching, opts).map(|(c, _)| c)
}

/// [`compose`], also reporting where each cell of `x` and `y` went.
pub fn compose_traced(
    x: &Cobordism,
    y: &Cobordism,
    matching: Option<&ComplexIso>,
    opts: ComposeOptions,
) -> Result<(Cobordism, Trace)> {
    let phi = match (x.right.is_empty(), y.left.is_empty()) {
        (true, true) => None,
        (false, false) => Some(match matching {
            Some(m) => {
                check_matching(x, y, m)?;
                m.clone()
            }
            None => {
                let all = matchings(x, y);
                if all.is_empty() {
                    return Err(Error::NoMatching);
                }
                if opts.require_unique && all.len() > 1 {
                    return Err(Error::AmbiguousMatching(all.len()));
                }
                all.into_iter().next().unwrap()
            }
        }),
        _ => return Err(Error::NoMatching),
    };

    let shift = x.body.max_label();
    let nx = x.body.face_count();
    let body = x.body.disjoint_union(&y.body);
    let shifted = |s: &CollarSide| {
        CollarSide::new(
            s.faces.iter().map(|f| f + nx).collect(),
            s.boundary.iter().map(|e| e + shift).collect(),
        )
    };
    let mut sub = BTreeMap::new();
    let mut face_pairs = BTreeMap::new();
    if let Some(phi) = phi {
        // phi maps closure(x.right) to closure(y.left); move it to union labels
        let inv = phi.inverse();
        sub = inv.edge_map.iter().map(|(&c, &d)| (c + shift, d)).collect();
        for (k, &yf) in y.left.faces.iter().enumerate() {
            face_pairs.insert(yf + nx, x.right.faces[inv.face_map[k]]);
        }
    }
    let (glued, raw) = glue(&body, &x.left, &shifted(&y.right), &sub, &face_pairs)?;
    let (out, relabel) = glued.compacted_with_map();
    let trace = Trace {
        edges: vec![
            x.body.edges().iter().map(|&e| (e, relabel(raw.edge(e)))).collect(),
            y.body.edges().iter().map(|&e| (e, relabel(raw.edge(e + shift)))).collect(),
        ],
        faces: vec![raw.faces[..nx].to_vec(), raw.faces[nx..].to_vec()],
    };
    if opts.check_type {
        check_links(&out.body, &[&x.body, &y.body])?;
    }
    Ok((out, trace))
}

/// Union labels and faces to glued ones.
struct RawTrace<'a> {
    sub: &'a BTreeMap<u32, SignedEdge>,
    faces: Vec<usize>,
}

impl RawTrace<'_> {
    fn edge(&self, e: u32) -> SignedEdge {
        self.sub.get(&e).copied().unwrap_or(SignedEdge::forward(e))
    }
}

/// Remove the faces in `face_pairs` (each identified with a kept face), apply
/// the edge substitution, and carry the two sides along.
fn glue<'a>(
    body: &Complex,
    left: &CollarSide,
    right: &CollarSide,
    sub: &'a BTreeMap<u32, SignedEdge>,
    face_pairs: &BTreeMap<usize, usize>,
) -> Result<(Cobordism, RawTrace<'a>)> {
    let image = |s: SignedEdge| match sub.get(&s.label()) {
        Some(&t) => t.flipped_if(s.is_reversed()),
        None => s,
    };
    let mut faces: Vec<FaceWord> = Vec::new();
    let mut new_index = vec![usize::MAX; body.face_count()];
    for (f, w) in body.faces().iter().enumerate() {
        if !face_pairs.contains_key(&f) {
            new_index[f] = faces.len();
            faces.push(w.map(image));
        }
    }
    for (&gone, &kept) in face_pairs {
        new_index[gone] = new_index[kept];
    }
    let side = |s: &CollarSide| {
        CollarSide::new(
            s.faces.iter().map(|&f| new_index[f]).collect(),
            s.boundary.iter().map(|&e| image(SignedEdge::forward(e)).label()).collect(),
        )
    };
    let cob = Cobordism::new(Complex::new(faces), side(left), side(right))?;
    Ok((cob, RawTrace { sub, faces: new_index }))
}

/// Close a cobordism up by gluing its right end onto its own left end.
pub fn close(x: &Cobordism, matching: Option<&ComplexIso>) -> Result<Cobordism> {
    close_traced(x, matching).map(|(c, _)| c)
}

/// [`close`], also reporting where each cell of `x` went.
pub fn close_traced(x: &Cobordism, matching: Option<&ComplexIso>) -> Result<(Cobordism, Trace)> {
    if x.left.is_empty() || x.right.is_empty() {
        return Err(Error::NoMatching);
    }
    let phi = match matching {
        Some(m) => {
            check_matching(x, x, m)?;
            m.clone()
        }
        None => matchings(x, x).into_iter().next().ok_or(Error::NoMatching)?,
    };
    let inv = phi.inverse();
    let sub: BTreeMap<u32, SignedEdge> = inv.edge_map.clone();
    let mut face_pairs = BTreeMap::new();
    for (k, &lf) in x.left.faces.iter().enumerate() {
        face_pairs.insert(lf, x.right.faces[inv.face_map[k]]);
    }
    let (glued, raw) = glue(&x.body, &CollarSide::default(), &CollarSide::default(), &sub, &face_pairs)?;
    let (out, relabel) = glued.compacted_with_map();
    let trace = Trace {
        edges: vec![x.body.edges().iter().map(|&e| (e, relabel(raw.edge(e)))).collect()],
        faces: vec![raw.faces],
    };
    Ok((out, trace))
}

/// Every interior link of `c` must match an interior link of some source.
fn check_links(c: &Complex, sources: &[&Complex]) -> Result<()> {
    let allowed: Vec<MultiGraph> = sources.iter().flat_map(|s| affiliated_type(s)).collect();
    if allowed.is_empty() {
        return Ok(());
    }
    for v in c.interior_vertices() {
        let g = c.link(v)?.graph;
        if !allowed.iter().any(|a| a.is_isomorphic(&g)) {
            return Err(Error::TypeNotPreserved(v.0));
        }
    }
    Ok(())
}

/// An isomorphism of bodies carrying left to left and right to right.
pub fn cobordism_isomorphism(a: &Cobordism, b: &Cobordism) -> Option<ComplexIso> {
    iso::find_isomorphisms(&a.body, &a.decoration(), &b.body, &b.decoration(), 1)
        .into_iter()
        .next()
}

pub fn cobordisms_isomorphic(a: &Cobordism, b: &Cobordism) -> bool {
    cobordism_isomorphism(a, b).is_some()
}

/// Isomorphisms from `x` to its dual, i.e. self-dualities.
pub fn dualities(x: &Cobordism) -> Vec<ComplexIso> {
    let d = x.dual();
    iso::find_isomorphisms(&x.body, &x.decoration(), &d.body, &d.decoration(), usize::MAX)
}

/// Replace single letters of face words. Each replacement is
/// `(face, position, new letter)`.
pub fn flip_surgery(c: &Complex, replacements: &[(usize, usize, SignedEdge)]) -> Result<Complex> {
    let mut faces: Vec<Vec<SignedEdge>> = c.faces().iter().map(|w| w.letters().to_vec()).collect();
    for &(f, i, s) in replacements {
        let word = faces
            .get_mut(f)
            .ok_or_else(|| Error::OutOfRange(format!("face {f}")))?;
        let len = word.len();
        *word
            .get_mut(i)
            .ok_or_else(|| Error::OutOfRange(format!("position {i} of face {f} (length {len})")))? = s;
    }
    Ok(Complex::new(
        faces.into_iter().map(|w| FaceWord::new(w).unwrap()).collect(),
    ))
}

/// Split a two-vertex complex along its separating collar into the filling
/// `empty -> C` on the `x` side and `C -> empty` on the `y` side. Each keeps
/// a full copy of the collar faces.
pub fn split_along_collar(c: &Complex, col: &Collar) -> Result<(Cobordism, Cobordism)> {
    if col.is_empty() {
        return Err(Error::NotSeparating("the collar is empty".into()));
    }
    let collar: BTreeSet<usize> = col.faces.iter().copied().collect();
    let at = |v: VertexId| -> Vec<usize> {
        (0..c.face_count())
            .filter(|f| !collar.contains(f) && c.corner_vertices(*f).iter().all(|&u| u == v))
            .collect()
    };
    let (side_x, side_y) = (at(col.x), at(col.y));
    let covered = side_x.len() + side_y.len() + collar.len();
    if covered != c.face_count() {
        return Err(Error::NotSeparating(format!(
            "{} faces meet neither side cleanly",
            c.face_count() - covered
        )));
    }
    let filling = |own: &[usize]| -> Result<(Complex, Vec<usize>)> {
        let mut faces: Vec<usize> = own.to_vec();
        let start = faces.len();
        faces.extend(col.faces.iter().copied());
        let body = c.subcomplex(&faces);
        Ok((body, (start..faces.len()).collect()))
    };
    let (bx, fx) = filling(&side_x)?;
    let minus = Cobordism::new(
        bx.clone(),
        CollarSide::default(),
        CollarSide::new(fx, bx.boundary_edges()),
    )?;
    let (by, fy) = filling(&side_y)?;
    let plus = Cobordism::new(
        by.clone(),
        CollarSide::new(fy, by.boundary_edges()),
        CollarSide::default(),
    )?;
    Ok((minus, plus))
}
