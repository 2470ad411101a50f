//! Canonical forms of complexes via canonical labeling of an incidence encoding.
//!
//! The encoding has one node per edge end (the two ends of an edge are
//! joined), per face, per letter slot, per slot port (a slot's start and
//! finish), and per corner. A corner joins the finish port of one slot to the
//! start port of the next. Isomorphisms of complexes and of encodings agree.

use std::collections::BTreeMap;

use crate::complex::{Complex, End, EndKind, FaceWord, SignedEdge};
use crate::refine::Structure;

const END: u64 = 0;
const PORT: u64 = 1;
const SLOT: u64 = 2;
const CORNER: u64 = 3;
const FACE: u64 = 4;

fn encode(c: &Complex) -> (Structure, usize) {
    let ends = 2 * c.edge_count();
    let letters = c.total_face_length();
    let n = ends + c.face_count() + 4 * letters;
    let mut color = vec![0u64; n];
    let end_node = |e: End| 2 * c.edge_index(e.label).unwrap() + (e.kind == EndKind::Head) as usize;
    let face_base = ends;
    let mut next = ends + c.face_count();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..c.edge_count() {
        color[2 * i] = END;
        color[2 * i + 1] = END;
        edges.push((2 * i, 2 * i + 1));
    }
    for (fi, w) in c.faces().iter().enumerate() {
        let f = face_base + fi;
        color[f] = FACE;
        let k = w.len();
        let first = next;
        // per letter: slot, start port, finish port, corner (after the letter)
        for i in 0..k {
            let (slot, sp, fp, corner) = (next, next + 1, next + 2, next + 3);
            next += 4;
            color[slot] = SLOT;
            color[sp] = PORT;
            color[fp] = PORT;
            color[corner] = CORNER;
            let s = w.at(i);
            edges.push((f, slot));
            edges.push((slot, sp));
            edges.push((slot, fp));
            edges.push((sp, end_node(s.start())));
            edges.push((fp, end_node(s.finish())));
            edges.push((corner, fp));
            let next_sp = if i + 1 == k { first + 1 } else { next + 1 };
            edges.push((corner, next_sp));
        }
    }
    let mut s = Structure::new(color);
    for (u, v) in edges {
        s.add(u, v, 1);
    }
    (s, ends)
}

/// Relabel edges `1..=n` and sort faces so that isomorphic complexes give
/// identical results.
pub fn canonical_form(c: &Complex) -> Complex {
    if c.is_empty() {
        return c.clone();
    }
    let (s, _) = encode(c);
    let (labels, _) = s.canonical_labeling();
    let mut order: Vec<(usize, usize)> = (0..c.edge_count())
        .map(|i| (labels[2 * i].min(labels[2 * i + 1]), i))
        .collect();
    order.sort_unstable();
    let mut image: BTreeMap<u32, SignedEdge> = BTreeMap::new();
    for (rank, &(_, i)) in order.iter().enumerate() {
        let flip = labels[2 * i] > labels[2 * i + 1];
        image.insert(c.edges()[i], SignedEdge::new(rank as u32 + 1, flip));
    }
    let mut faces: Vec<FaceWord> = c
        .faces()
        .iter()
        .map(|w| w.map(|s| image[&s.label()].flipped_if(s.is_reversed())).canonical())
        .collect();
    faces.sort();
    first_appearance(faces)
}

/// Relabel by first appearance in reading order, each edge oriented the way
/// it is first read. A function of the canonical complex, so still canonical.
fn first_appearance(faces: Vec<FaceWord>) -> Complex {
    let mut image: BTreeMap<u32, SignedEdge> = BTreeMap::new();
    for w in &faces {
        for s in w.letters() {
            let next = image.len() as u32 + 1;
            image
                .entry(s.label())
                .or_insert_with(|| SignedEdge::new(next, s.is_reversed()));
        }
    }
    let mut out: Vec<FaceWord> = faces
        .iter()
        .map(|w| w.map(|s| image[&s.label()].flipped_if(s.is_reversed())).canonical())
        .collect();
    out.sort();
    Complex::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn single_triangle() {
        let t: Complex = "[[3,-1,2]]".parse().unwrap();
        assert_eq!(canonical_form(&t).to_line(), "[[1,2,3]]");
    }

    #[test]
    fn idempotent() {
        for c in [data::v23(), data::x_prime(), data::w158()] {
            let once = canonical_form(&c);
            assert_eq!(canonical_form(&once), once);
        }
    }

    #[test]
    fn separates_cover_from_fake_cover() {
        assert_ne!(
            canonical_form(&data::x_prime()),
            canonical_form(&data::x_double_prime())
        );
    }
}
