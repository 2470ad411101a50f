//! Complexes assembled from a word over {3/2, 2}: one rank-7/4 block per
//! letter, glued along their S collars, capped by two fillings (segment) or
//! closed up (circle).
//!
//! Every collar closure is identified with one template closure `T` (the left
//! closure of the first block) by a frame. Gluing `P` to `Q` uses
//! `t_R(P)^-1 . tau . t_L(Q)`, where `tau` is an involution of `T` exchanging
//! its two boundary sides, and the right frame of a block is its left frame
//! followed by a fixed self-duality. This makes each junction depend only on
//! the two blocks involved.

use std::fmt;
use std::str::FromStr;

use crate::bord::{self, Cobordism, CollarSide, ComposeOptions, End2, Trace};
use crate::catalog::NamedGraph;
use crate::classify::{classify_st, Classification};
use crate::collar::two_vertex_collar;
use crate::complex::{Complex, End, SignedEdge, VertexId};
use crate::data;
use crate::error::{Error, Result};
use crate::iso::{self, ComplexIso, Decoration};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank {
    ThreeHalves,
    Two,
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rank::ThreeHalves => "3/2",
            Rank::Two => "2",
        })
    }
}

impl FromStr for Rank {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rank> {
        match s.trim() {
            "3/2" => Ok(Rank::ThreeHalves),
            "2" => Ok(Rank::Two),
            other => Err(Error::Precondition(format!("rank must be 3/2 or 2, got `{other}`"))),
        }
    }
}

/// Parse `3/2,2,2`.
pub fn parse_word(s: &str) -> Result<Vec<Rank>> {
    s.split(',').map(str::parse).collect()
}

pub fn format_word(w: &[Rank]) -> String {
    w.iter().map(Rank::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Segment,
    Circle,
}

impl FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Shape> {
        match s {
            "segment" => Ok(Shape::Segment),
            "circle" => Ok(Shape::Circle),
            other => Err(Error::Precondition(format!("unknown shape `{other}`"))),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Segment => "segment",
            Shape::Circle => "circle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSpec {
    pub sequence: Vec<Rank>,
    pub shape: Shape,
    pub base: usize,
}

impl OmegaSpec {
    pub fn new(sequence: Vec<Rank>, shape: Shape, base: usize) -> Result<OmegaSpec> {
        let min = match shape {
            Shape::Segment => 1,
            Shape::Circle => 2,
        };
        if sequence.len() < min {
            return Err(Error::Precondition(format!(
                "a {shape} needs at least {min} letter(s), got {}",
                sequence.len()
            )));
        }
        if base >= sequence.len() {
            return Err(Error::OutOfRange(format!("base index {base}")));
        }
        Ok(OmegaSpec {
            sequence,
            shape,
            base,
        })
    }
}

/// The rank-3/2 and rank-2 blocks.
#[derive(Clone, Debug)]
pub struct Blocks {
    pub three_halves: Cobordism,
    pub two: Cobordism,
}

impl Blocks {
    pub fn get(&self, r: Rank) -> &Cobordism {
        match r {
            Rank::ThreeHalves => &self.three_halves,
            Rank::Two => &self.two,
        }
    }
}

/// `start: empty -> C` and `end: C -> empty`.
#[derive(Clone, Debug)]
pub struct Fillings {
    pub start: Cobordism,
    pub end: Cobordism,
}

impl Blocks {
    /// The rank-3/2 and rank-2 cobordisms of a classification run.
    pub fn from_classification(c: &Classification) -> Result<Blocks> {
        match &c.cobordisms[..] {
            [a, b] => Ok(Blocks {
                three_halves: a.clone(),
                two: b.clone(),
            }),
            other => Err(Error::SearchBug(format!("{} blocks", other.len()))),
        }
    }
}

impl Fillings {
    /// The two halves of X' split along its collar.
    pub fn from_cover() -> Result<Fillings> {
        let x = data::x_prime();
        let (start, end) = bord::split_along_collar(&x, &two_vertex_collar(&x)?)?;
        Ok(Fillings { start, end })
    }
}

pub fn standard_pieces() -> Result<(Blocks, Fillings)> {
    Ok((Blocks::from_classification(&classify_st()?)?, Fillings::from_cover()?))
}

#[derive(Clone, Debug)]
pub struct PointedComplex {
    pub complex: Complex,
    pub basepoint: VertexId,
}

/// Closure of one end, with its outer boundary colored 2 and the rest of its
/// once-edges colored 1.
fn framed_closure(x: &Cobordism, end: End2) -> (Complex, Decoration) {
    let c = x.closure(end);
    let outer = &x.side(end).boundary;
    let mut d = Decoration::default();
    for e in c.boundary_edges() {
        d.edges.insert(e, if outer.contains(&e) { 2 } else { 1 });
    }
    (c, d)
}

/// A body isomorphism carrying `from` faces of `x` onto `to` faces of `y`,
/// cut down to the closures.
fn restrict(m: &ComplexIso, x: &Cobordism, from: End2, y: &Cobordism, to: End2) -> ComplexIso {
    let cx = x.closure(from);
    let target = &y.side(to).faces;
    let out = ComplexIso {
        edge_map: cx.edges().iter().map(|&e| (e, m.apply(SignedEdge::forward(e)))).collect(),
        face_map: x
            .side(from)
            .faces
            .iter()
            .map(|&f| target.binary_search(&m.face_map[f]).unwrap())
            .collect(),
    };
    debug_assert!(iso::find_isomorphisms(&cx, &Decoration::default(), &y.closure(to), &Decoration::default(), usize::MAX)
        .contains(&out));
    out
}

/// A cobordism with frames `T -> closure` on its nonempty ends.
#[derive(Clone, Debug)]
pub struct FramedCobordism {
    pub cob: Cobordism,
    pub left: Option<ComplexIso>,
    pub right: Option<ComplexIso>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieceKind {
    Start,
    Block(Rank),
    End,
}

/// Frames for all pieces relative to one template.
#[derive(Clone, Debug)]
pub struct Framing {
    template: (Complex, Decoration),
    tau: ComplexIso,
    start: FramedCobordism,
    three_halves: FramedCobordism,
    two: FramedCobordism,
    end: FramedCobordism,
}

fn least_involution(mut isos: Vec<ComplexIso>) -> Option<ComplexIso> {
    isos.sort_by_key(ComplexIso::key);
    isos.iter()
        .find(|m| m.then(m).is_identity())
        .or(isos.first())
        .cloned()
}

impl Framing {
    pub fn new(blocks: &Blocks, fillings: &Fillings) -> Result<Framing> {
        let template = framed_closure(&blocks.three_halves, End2::Left);
        let (t, dt) = &template;
        let mut swapped = Decoration::default();
        for (&e, &c) in &dt.edges {
            swapped.edges.insert(e, 3 - c);
        }
        let tau = least_involution(iso::find_isomorphisms(t, dt, t, &swapped, usize::MAX))
            .ok_or_else(|| Error::Precondition("template sides cannot be exchanged".into()))?;
        let frame = |x: &Cobordism, end: End2| -> Result<ComplexIso> {
            let (c, d) = framed_closure(x, end);
            let mut all = iso::find_isomorphisms(t, dt, &c, &d, usize::MAX);
            all.sort_by_key(ComplexIso::key);
            all.into_iter().next().ok_or(Error::NoMatching)
        };
        let block = |x: &Cobordism| -> Result<FramedCobordism> {
            let left = frame(x, End2::Left)?;
            let delta = least_involution(bord::dualities(x))
                .ok_or_else(|| Error::Precondition("block is not self-dual".into()))?;
            let right = left.then(&restrict(&delta, x, End2::Left, x, End2::Right));
            Ok(FramedCobordism {
                cob: x.clone(),
                left: Some(left),
                right: Some(right),
            })
        };
        Ok(Framing {
            three_halves: block(&blocks.three_halves)?,
            two: block(&blocks.two)?,
            start: FramedCobordism {
                cob: fillings.start.clone(),
                left: None,
                right: Some(frame(&fillings.start, End2::Right)?),
            },
            end: FramedCobordism {
                cob: fillings.end.clone(),
                left: Some(frame(&fillings.end, End2::Left)?),
                right: None,
            },
            template,
            tau,
        })
    }

    pub fn template(&self) -> &Complex {
        &self.template.0
    }

    pub fn piece(&self, kind: PieceKind) -> &FramedCobordism {
        match kind {
            PieceKind::Start => &self.start,
            PieceKind::Block(Rank::ThreeHalves) => &self.three_halves,
            PieceKind::Block(Rank::Two) => &self.two,
            PieceKind::End => &self.end,
        }
    }

    /// The identification of `p`'s right closure with `q`'s left closure.
    pub fn junction(&self, p: &FramedCobordism, q: &FramedCobordism) -> Result<ComplexIso> {
        match (&p.right, &q.left) {
            (Some(r), Some(l)) => Ok(r.inverse().then(&self.tau).then(l)),
            _ => Err(Error::NoMatching),
        }
    }

    /// Glue along the framed junction; the outer frames follow the cells.
    pub fn compose(&self, p: &FramedCobordism, q: &FramedCobordism) -> Result<(FramedCobordism, Trace)> {
        let m = self.junction(p, q)?;
        let (cob, trace) = bord::compose_traced(&p.cob, &q.cob, Some(&m), ComposeOptions::default())?;
        let left = p
            .left
            .as_ref()
            .map(|f| transport(f, &p.cob.left, &cob.left, &trace, 0));
        let right = q
            .right
            .as_ref()
            .map(|f| transport(f, &q.cob.right, &cob.right, &trace, 1));
        Ok((FramedCobordism { cob, left, right }, trace))
    }

    /// Glue the right end onto the left end.
    pub fn close(&self, p: &FramedCobordism) -> Result<(Cobordism, Trace)> {
        let m = self.junction(p, p)?;
        bord::close_traced(&p.cob, Some(&m))
    }
}

/// Move a frame along a gluing.
fn transport(frame: &ComplexIso, old: &CollarSide, new: &CollarSide, trace: &Trace, input: usize) -> ComplexIso {
    let edges = &trace.edges[input];
    let faces = &trace.faces[input];
    ComplexIso {
        edge_map: frame
            .edge_map
            .iter()
            .map(|(&t, &s)| (t, edges[&s.label()].flipped_if(s.is_reversed())))
            .collect(),
        face_map: frame
            .face_map
            .iter()
            .map(|&j| new.faces.binary_search(&faces[old.faces[j]]).unwrap())
            .collect(),
    }
}

fn follow(end: End, trace: &Trace, input: usize) -> End {
    let s = trace.edges[input][&end.label];
    End {
        label: s.label(),
        kind: if s.is_reversed() { end.kind.other() } else { end.kind },
    }
}

/// Build the complex of a word, pointed at the interior vertex of the block
/// at the base index.
pub fn build_omega(spec: &OmegaSpec, blocks: &Blocks, fillings: &Fillings) -> Result<PointedComplex> {
    let framing = Framing::new(blocks, fillings)?;
    build_framed(spec, &framing)
}

/// Iterated framed composition along the word.
pub fn build_framed(spec: &OmegaSpec, framing: &Framing) -> Result<PointedComplex> {
    let spec = OmegaSpec::new(spec.sequence.clone(), spec.shape, spec.base)?;
    let mut kinds: Vec<PieceKind> = spec.sequence.iter().map(|&r| PieceKind::Block(r)).collect();
    let mut base = spec.base;
    if spec.shape == Shape::Segment {
        kinds.insert(0, PieceKind::Start);
        kinds.push(PieceKind::End);
        base += 1;
    }
    let interior_end = |x: &Cobordism| -> Result<End> {
        let v = *x
            .body
            .interior_vertices()
            .first()
            .ok_or_else(|| Error::Precondition("block without an interior vertex".into()))?;
        Ok(x.body.vertex_classes()[v.0][0])
    };

    let mut acc = framing.piece(kinds[0]).clone();
    let mut mark = if base == 0 { Some(interior_end(&acc.cob)?) } else { None };
    for (i, &k) in kinds.iter().enumerate().skip(1) {
        let next = framing.piece(k);
        let (glued, trace) = framing.compose(&acc, next)?;
        mark = match mark {
            Some(e) => Some(follow(e, &trace, 0)),
            None if i == base => Some(follow(interior_end(&next.cob)?, &trace, 1)),
            None => None,
        };
        acc = glued;
    }
    let mut mark = mark.expect("base index is in range");
    let complex = match spec.shape {
        Shape::Segment => acc.cob.body,
        Shape::Circle => {
            let (closed, trace) = framing.close(&acc)?;
            mark = follow(mark, &trace, 0);
            closed.body
        }
    };
    let basepoint = complex.vertex_of(mark);

    let mk = NamedGraph::MoebiusKantor.graph();
    for u in complex.vertices() {
        if !complex.link(u)?.graph.is_isomorphic(&mk) {
            return Err(Error::TypeNotPreserved(u.0));
        }
    }
    if !complex.boundary_edges().is_empty() {
        return Err(Error::SearchBug("assembled complex has boundary".into()));
    }
    Ok(PointedComplex { complex, basepoint })
}

/// All words of a given shape and length grouped by pointed isomorphism of
/// their complexes at index 0.
#[derive(Clone, Debug)]
pub struct FiberReport {
    pub shape: Shape,
    pub length: usize,
    pub fibers: Vec<Vec<Vec<Rank>>>,
}

/// `w` read backwards around 0: `w'(k) = w(-k mod n)`.
pub fn reflect(w: &[Rank]) -> Vec<Rank> {
    let n = w.len();
    (0..n).map(|k| w[(n - k) % n]).collect()
}

impl FiberReport {
    pub fn max_fiber(&self) -> usize {
        self.fibers.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_injective(&self) -> bool {
        self.max_fiber() <= 1
    }

    /// Every fiber is a single word or a word together with its distinct
    /// reflection, and every word whose reflection differs shares its fiber.
    pub fn reflection_pairs_only(&self) -> bool {
        self.fibers.iter().all(|f| match f.as_slice() {
            [w] => reflect(w) == *w,
            [a, b] => reflect(a) == *b && a != b,
            _ => false,
        })
    }
}

impl fmt::Display for FiberReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} of length {}: {} fibers", self.shape, self.length, self.fibers.len())?;
        for fiber in &self.fibers {
            let words: Vec<String> = fiber.iter().map(|w| format!("({})", format_word(w))).collect();
            writeln!(f, "  {} : {}", fiber.len(), words.join(" "))?;
        }
        write!(f, "max fiber size {}", self.max_fiber())
    }
}

fn all_words(len: usize) -> Vec<Vec<Rank>> {
    (0..1usize << len)
        .map(|bits| {
            (0..len)
                .map(|i| if bits >> (len - 1 - i) & 1 == 0 { Rank::ThreeHalves } else { Rank::Two })
                .collect()
        })
        .collect()
}

/// Group all words by pointed isomorphism. For a segment, `n` is the last
/// index, so words have `n + 1` letters; for a circle words have `n` letters.
pub fn orbit_map_fibers(n: usize, shape: Shape, blocks: &Blocks, fillings: &Fillings) -> Result<FiberReport> {
    let length = match shape {
        Shape::Segment => n + 1,
        Shape::Circle => n,
    };
    let framing = Framing::new(blocks, fillings)?;
    let words = all_words(length);
    let built: Vec<Result<PointedComplex>> = std::thread::scope(|s| {
        let handles: Vec<_> = words
            .iter()
            .map(|w| {
                let framing = &framing;
                s.spawn(move || build_framed(&OmegaSpec::new(w.clone(), shape, 0)?, framing))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("builder panicked")).collect()
    });
    let mut classes: Vec<(PointedComplex, Vec<Vec<Rank>>)> = Vec::new();
    for (w, pc) in words.into_iter().zip(built) {
        let pc = pc?;
        let hit = classes.iter_mut().find(|(rep, _)| {
            iso::isomorphism(&rep.complex, &pc.complex, Some((rep.basepoint, pc.basepoint))).is_some()
        });
        match hit {
            Some((_, ws)) => ws.push(w),
            None => classes.push((pc, vec![w])),
        }
    }
    Ok(FiberReport {
        shape,
        length,
        fibers: classes.into_iter().map(|(_, ws)| ws).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_parse_and_print() {
        let w = parse_word("3/2,2,2").unwrap();
        assert_eq!(w, vec![Rank::ThreeHalves, Rank::Two, Rank::Two]);
        assert_eq!(format_word(&w), "3/2,2,2");
        assert!(parse_word("3/2,5").is_err());
    }

    #[test]
    fn reflection_fixes_index_zero() {
        let w = parse_word("3/2,2,2,3/2").unwrap();
        assert_eq!(reflect(&w), parse_word("3/2,3/2,2,2").unwrap());
        assert_eq!(reflect(&reflect(&w)), w);
    }

    #[test]
    fn short_circle_is_rejected() {
        assert!(OmegaSpec::new(vec![Rank::Two], Shape::Circle, 0).is_err());
        assert!(OmegaSpec::new(vec![], Shape::Segment, 0).is_err());
        assert!(OmegaSpec::new(vec![Rank::Two], Shape::Segment, 1).is_err());
    }

    #[test]
    fn all_words_counts() {
        assert_eq!(all_words(3).len(), 8);
        assert_eq!(all_words(0), vec![Vec::<Rank>::new()]);
    }
}
