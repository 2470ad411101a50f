//! Face-word 2-complexes.
//!
//! A complex is a list of faces, each a cyclic word of signed edges. Vertices
//! are never given: they are the classes of edge ends under the corner
//! identifications `finish(s_i) ~ start(s_{i+1})`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndKind {
    Tail,
    Head,
}

impl EndKind {
    pub fn other(self) -> EndKind {
        match self {
            EndKind::Tail => EndKind::Head,
            EndKind::Head => EndKind::Tail,
        }
    }
}

/// One end of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub label: u32,
    pub kind: EndKind,
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EndKind::Tail => write!(f, "{}-", self.label),
            EndKind::Head => write!(f, "{}+", self.label),
        }
    }
}

/// An edge occurrence in a face word. Ordered by label, then `+` before `-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedEdge {
    label: u32,
    reversed: bool,
}

impl SignedEdge {
    pub fn new(label: u32, reversed: bool) -> Self {
        assert!(label >= 1, "edge labels start at 1");
        SignedEdge { label, reversed }
    }

    pub fn forward(label: u32) -> Self {
        Self::new(label, false)
    }

    pub fn from_int(n: i64) -> Option<Self> {
        if n == 0 || n.unsigned_abs() > u32::MAX as u64 {
            return None;
        }
        Some(SignedEdge::new(n.unsigned_abs() as u32, n < 0))
    }

    pub fn to_int(self) -> i64 {
        if self.reversed {
            -(self.label as i64)
        } else {
            self.label as i64
        }
    }

    pub fn label(self) -> u32 {
        self.label
    }

    pub fn is_reversed(self) -> bool {
        self.reversed
    }

    pub fn inverse(self) -> Self {
        SignedEdge {
            label: self.label,
            reversed: !self.reversed,
        }
    }

    /// Flip the sign when `flip` is set.
    pub fn flipped_if(self, flip: bool) -> Self {
        if flip {
            self.inverse()
        } else {
            self
        }
    }

    pub fn start(self) -> End {
        let kind = if self.reversed { EndKind::Head } else { EndKind::Tail };
        End {
            label: self.label,
            kind,
        }
    }

    pub fn finish(self) -> End {
        let kind = if self.reversed { EndKind::Tail } else { EndKind::Head };
        End {
            label: self.label,
            kind,
        }
    }
}

impl fmt::Display for SignedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_int())
    }
}

/// A cyclic word of signed edges, kept in the orientation it was given in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceWord(Vec<SignedEdge>);

impl FaceWord {
    pub fn new(letters: Vec<SignedEdge>) -> Option<Self> {
        if letters.is_empty() {
            None
        } else {
            Some(FaceWord(letters))
        }
    }

    pub fn from_ints(ints: &[i64]) -> Option<Self> {
        let letters = ints
            .iter()
            .map(|&n| SignedEdge::from_int(n))
            .collect::<Option<Vec<_>>>()?;
        Self::new(letters)
    }

    pub fn letters(&self) -> &[SignedEdge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letter at a cyclic position.
    pub fn at(&self, i: usize) -> SignedEdge {
        self.0[i % self.0.len()]
    }

    /// The word read backwards with every sign flipped.
    pub fn reversed(&self) -> FaceWord {
        FaceWord(self.0.iter().rev().map(|s| s.inverse()).collect())
    }

    /// Least representative over rotations and sign-flipped reversal.
    pub fn canonical(&self) -> FaceWord {
        let k = self.0.len();
        let rev = self.reversed();
        let mut best: Option<Vec<SignedEdge>> = None;
        for w in [&self.0, &rev.0] {
            for r in 0..k {
                let cand: Vec<SignedEdge> = (0..k).map(|i| w[(r + i) % k]).collect();
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        FaceWord(best.expect("face words are non-empty"))
    }

    pub fn map<F: FnMut(SignedEdge) -> SignedEdge>(&self, f: F) -> FaceWord {
        FaceWord(self.0.iter().copied().map(f).collect())
    }

    pub fn to_ints(&self) -> Vec<i64> {
        self.0.iter().map(|s| s.to_int()).collect()
    }
}

impl fmt::Display for FaceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The link of a vertex: one graph vertex per edge end at the vertex, one
/// graph edge per corner.
#[derive(Clone, Debug)]
pub struct Link {
    pub vertex: VertexId,
    pub graph: MultiGraph,
    pub ends: Vec<End>,
    /// `(face, i)` for the corner between letters `i` and `i + 1`.
    pub corners: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Complex {
    faces: Vec<FaceWord>,
    labels: Vec<u32>,
    index: BTreeMap<u32, usize>,
    end_vertex: Vec<usize>,
    vertex_ends: Vec<Vec<End>>,
    occurrences: Vec<usize>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.faces == other.faces
    }
}

impl Eq for Complex {}

fn end_slot(idx: usize, kind: EndKind) -> usize {
    2 * idx + matches!(kind, EndKind::Head) as usize
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Complex {
    pub fn new(faces: Vec<FaceWord>) -> Self {
        let labels: BTreeSet<u32> = faces
            .iter()
            .flat_map(|f| f.letters().iter().map(|s| s.label()))
            .collect();
        let labels: Vec<u32> = labels.into_iter().collect();
        let index: BTreeMap<u32, usize> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

        let mut occurrences = vec![0; labels.len()];
        let mut uf = UnionFind::new(2 * labels.len());
        for f in &faces {
            let k = f.len();
            for i in 0..k {
                let s = f.at(i);
                occurrences[index[&s.label()]] += 1;
                let a = s.finish();
                let b = f.at(i + 1).start();
                uf.union(
                    end_slot(index[&a.label], a.kind),
                    end_slot(index[&b.label], b.kind),
                );
            }
        }

        // Slots are already in (label, Tail < Head) order, so numbering classes
        // by first appearance orders vertices by their least end.
        let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut end_vertex = vec![0; 2 * labels.len()];
        let mut vertex_ends: Vec<Vec<End>> = Vec::new();
        for slot in 0..2 * labels.len() {
            let root = uf.find(slot);
            let next = class_of_root.len();
            let v = *class_of_root.entry(root).or_insert(next);
            if v == vertex_ends.len() {
                vertex_ends.push(Vec::new());
            }
            end_vertex[slot] = v;
            let kind = if slot % 2 == 0 {
                EndKind::Tail
            } else {
                EndKind::Head
            };
            vertex_ends[v].push(End {
                label: labels[slot / 2],
                kind,
            });
        }

        Complex {
            faces,
            labels,
            index,
            end_vertex,
            vertex_ends,
            occurrences,
        }
    }

    pub fn empty() -> Self {
        Complex::new(Vec::new())
    }

    pub fn from_ints(faces: &[Vec<i64>]) -> Result<Self> {
        let mut words = Vec::with_capacity(faces.len());
        for (i, f) in faces.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::EmptyFace(i));
            }
            let word = FaceWord::from_ints(f).ok_or(Error::ZeroLiteral { line: 0, column: 0 })?;
            words.push(word);
        }
        Ok(Complex::new(words))
    }

    pub fn faces(&self) -> &[FaceWord] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> Result<&FaceWord> {
        self.faces.get(f).ok_or(Error::UnknownFace(f))
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Edge labels in increasing order.
    pub fn edges(&self) -> &[u32] {
        &self.labels
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn has_edge(&self, label: u32) -> bool {
        self.index.contains_key(&label)
    }

    pub fn max_label(&self) -> u32 {
        self.labels.last().copied().unwrap_or(0)
    }

    /// Dense index of an edge label.
    pub fn edge_index(&self, label: u32) -> Option<usize> {
        self.index.get(&label).copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ends.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_ends.len()).map(VertexId)
    }

    /// Vertex classes as sets of ends, ordered by least member.
    pub fn vertex_classes(&self) -> &[Vec<End>] {
        &self.vertex_ends
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.0))
        }
    }

    pub fn vertex_of(&self, end: End) -> VertexId {
        VertexId(self.end_vertex[end_slot(self.index[&end.label], end.kind)])
    }

    pub fn tail(&self, label: u32) -> VertexId {
        self.vertex_of(End {
            label,
            kind: EndKind::Tail,
        })
    }

    pub fn head(&self, label: u32) -> VertexId {
        self.vertex_of(End {
            label,
            kind: EndKind::Head,
        })
    }

    pub fn is_loop(&self, label: u32) -> bool {
        self.tail(label) == self.head(label)
    }

    /// Vertex at the corner between letters `i` and `i + 1` of face `f`.
    pub fn corner_vertex(&self, f: usize, i: usize) -> VertexId {
        self.vertex_of(self.faces[f].at(i).finish())
    }

    pub fn corner_vertices(&self, f: usize) -> Vec<VertexId> {
        (0..self.faces[f].len())
            .map(|i| self.corner_vertex(f, i))
            .collect()
    }

    pub fn occurrence_count(&self, label: u32) -> usize {
        self.index.get(&label).map_or(0, |&i| self.occurrences[i])
    }

    pub fn total_face_length(&self) -> usize {
        self.faces.iter().map(FaceWord::len).sum()
    }

    /// Edges occurring exactly once.
    pub fn boundary_edges(&self) -> Vec<u32> {
        self.labels
            .iter()
            .zip(&self.occurrences)
            .filter(|(_, &n)| n == 1)
            .map(|(&l, _)| l)
            .collect()
    }

    /// Vertices incident to no boundary edge.
    pub fn interior_vertices(&self) -> Vec<VertexId> {
        let mut boundary = BTreeSet::new();
        for e in self.boundary_edges() {
            boundary.insert(self.tail(e));
            boundary.insert(self.head(e));
        }
        self.vertices().filter(|v| !boundary.contains(v)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn link(&self, v: VertexId) -> Result<Link> {
        self.check_vertex(v)?;
        let ends = self.vertex_ends[v.0].clone();
        let pos: BTreeMap<End, usize> = ends.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut graph = MultiGraph::new(ends.len());
        let mut corners = Vec::new();
        for (fi, f) in self.faces.iter().enumerate() {
            for i in 0..f.len() {
                let a = f.at(i).finish();
                if self.vertex_of(a) != v {
                    continue;
                }
                let b = f.at(i + 1).start();
                graph.add_edge(pos[&a], pos[&b]);
                corners.push((fi, i));
            }
        }
        Ok(Link {
            vertex: v,
            graph,
            ends,
            corners,
        })
    }

    /// Apply an edge relabeling. The map must be injective on labels.
    pub fn relabeled<F: Fn(u32) -> SignedEdge>(&self, f: F) -> Complex {
        let faces = self
            .faces
            .iter()
            .map(|w| w.map(|s| f(s.label()).flipped_if(s.is_reversed())))
            .collect();
        Complex::new(faces)
    }

    /// Relabel edges to `1..=n`, preserving their order.
    pub fn compacted(&self) -> (Complex, BTreeMap<u32, u32>) {
        let map: BTreeMap<u32, u32> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as u32 + 1))
            .collect();
        (self.relabeled(|l| SignedEdge::forward(map[&l])), map)
    }

    /// Disjoint union; the second complex's labels are shifted past ours.
    pub fn disjoint_union(&self, other: &Complex) -> Complex {
        let shift = self.max_label();
        let mut faces = self.faces.clone();
        faces.extend(other.faces.iter().map(|w| {
            w.map(|s| SignedEdge::new(s.label() + shift, s.is_reversed()))
        }));
        Complex::new(faces)
    }

    /// The subcomplex spanned by a set of faces, labels unchanged.
    pub fn subcomplex(&self, faces: &[usize]) -> Complex {
        Complex::new(faces.iter().map(|&f| self.faces[f].clone()).collect())
    }

    /// Sorted canonical face words; equal for complexes that differ only by
    /// face order and face presentation.
    pub fn face_multiset(&self) -> Vec<FaceWord> {
        let mut v: Vec<FaceWord> = self.faces.iter().map(FaceWord::canonical).collect();
        v.sort();
        v
    }

    pub fn to_ints(&self) -> Vec<Vec<i64>> {
        self.faces.iter().map(FaceWord::to_ints).collect()
    }

    /// Single-line bracket form.
    pub fn to_line(&self) -> String {
        let parts: Vec<String> = self.faces.iter().map(|f| f.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn parse(text: &str) -> Result<Complex> {
        let faces = parse_faces(text)?;
        Ok(Complex::new(faces))
    }
}

/// One face per line inside the outer brackets.
impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, w) in self.faces.iter().enumerate() {
            if i > 0 {
                writeln!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Complex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Complex::parse(s)
    }
}

struct Scanner<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == '#' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_trivia();
        self.chars.peek().copied()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        let mut text = String::new();
        if let Some(&c) = self.chars.peek() {
            if c == '-' || c == '+' {
                text.push(c);
                self.bump();
            }
        }
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_digit() {
                text.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if !text.chars().any(|c| c.is_ascii_digit()) {
            return Err(Error::Syntax {
                line,
                column,
                message: "expected an integer".into(),
            });
        }
        let n: i64 = text.parse().map_err(|_| Error::Syntax {
            line,
            column,
            message: format!("integer `{text}` out of range"),
        })?;
        if n == 0 {
            return Err(Error::ZeroLiteral { line, column });
        }
        if n.unsigned_abs() > u32::MAX as u64 {
            return Err(Error::Syntax {
                line,
                column,
                message: format!("edge label `{text}` out of range"),
            });
        }
        Ok(n)
    }
}

fn parse_faces(text: &str) -> Result<Vec<FaceWord>> {
    let mut sc = Scanner::new(text);
    sc.expect('[')?;
    if sc.peek() == Some(']') {
        return Err(Error::EmptyFaceList);
    }
    let mut faces = Vec::new();
    loop {
        sc.expect('[')?;
        if sc.peek() == Some(']') {
            return Err(Error::EmptyFace(faces.len()));
        }
        let mut word = Vec::new();
        loop {
            let n = sc.integer()?;
            word.push(SignedEdge::from_int(n).expect("checked nonzero"));
            match sc.peek() {
                Some(',') => {
                    sc.bump();
                }
                Some(']') => {
                    sc.bump();
                    break;
                }
                Some(c) => return Err(sc.error(format!("expected `,` or `]`, found `{c}`"))),
                None => return Err(sc.error("unterminated face")),
            }
        }
        faces.push(FaceWord(word));
        match sc.peek() {
            Some(',') => {
                sc.bump();
            }
            Some(']') => {
                sc.bump();
                break;
            }
            Some(c) => return Err(sc.error(format!("expected `,` or `]`, found `{c}`"))),
            None => return Err(sc.error("unterminated face list")),
        }
    }
    if let Some(c) = sc.peek() {
        return Err(sc.error(format!("trailing input starting with `{c}`")));
    }
    Ok(faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn single_triangle() {
        let c: Complex = "[[1,2,3]]".parse().unwrap();
        assert_eq!(c.face_count(), 1);
        assert_eq!(c.edge_count(), 3);
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(c.euler_characteristic(), 1);
        for v in c.vertices() {
            let l = c.link(v).unwrap();
            assert_eq!(l.graph.vertex_count(), 2);
            assert_eq!(l.graph.edge_count(), 1);
        }
    }

    #[test]
    fn zero_literal_is_rejected() {
        let err = Complex::parse("[[1,0,2]]").unwrap_err();
        assert_eq!(err, Error::ZeroLiteral { line: 1, column: 5 });
    }

    #[test]
    fn syntax_errors_report_position() {
        match Complex::parse("[[1,2,\n  x]]") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(Complex::parse("[]").unwrap_err(), Error::EmptyFaceList);
        assert_eq!(Complex::parse("[[1],[]]").unwrap_err(), Error::EmptyFace(1));
        assert!(Complex::parse("[[1,2]] x").is_err());
    }

    #[test]
    fn comments_and_whitespace() {
        let c = Complex::parse("# header\n[ [1, -2 ,3], # trailing\n [ 3,2,1 ] ]").unwrap();
        assert_eq!(c.face_count(), 2);
        assert_eq!(c.faces()[0].to_ints(), vec![1, -2, 3]);
    }

    #[test]
    fn vertex_counts_of_shipped_complexes() {
        assert_eq!(data::v23().vertex_count(), 1);
        assert_eq!(data::x_prime().vertex_count(), 2);
        assert_eq!(data::w158().vertex_count(), 2);
        assert_eq!(data::v23().face_count(), 8);
        assert_eq!(data::v23().edge_count(), 8);
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(data::x_prime().euler_characteristic(), 2);
        assert_eq!(data::w158().euler_characteristic(), 2);
    }

    #[test]
    fn start_and_finish() {
        let s = SignedEdge::from_int(-4).unwrap();
        assert_eq!(s.start().kind, EndKind::Head);
        assert_eq!(s.finish().kind, EndKind::Tail);
        assert_eq!(s.inverse().to_int(), 4);
    }

    #[test]
    fn canonical_face_word() {
        let w = FaceWord::from_ints(&[3, 1, 2]).unwrap();
        assert_eq!(w.canonical().to_ints(), vec![1, 2, 3]);
        let w = FaceWord::from_ints(&[-3, -2, -1]).unwrap();
        assert_eq!(w.canonical().to_ints(), vec![1, 2, 3]);
        let w = FaceWord::from_ints(&[5, 8, 7]).unwrap();
        assert_ne!(w.canonical(), FaceWord::from_ints(&[5, 7, 8]).unwrap().canonical());
    }

    #[test]
    fn boundary_and_interior() {
        let c = data::v23();
        assert!(c.boundary_edges().is_empty());
        assert_eq!(c.interior_vertices().len(), 1);
        let t: Complex = "[[1,2,3]]".parse().unwrap();
        assert_eq!(t.boundary_edges(), vec![1, 2, 3]);
        assert!(t.interior_vertices().is_empty());
    }

    #[test]
    fn display_round_trip() {
        let c = data::x_prime();
        let again: Complex = c.to_string().parse().unwrap();
        assert_eq!(again, c);
        assert_eq!(Complex::parse(&c.to_line()).unwrap(), c);
    }
}
