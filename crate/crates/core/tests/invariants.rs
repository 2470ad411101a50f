//! Property tests over random face-word complexes and random relabelings.

use std::collections::BTreeMap;

use proptest::prelude::*;

use cxsurgery::bord::{flip_surgery, Cobordism};
use cxsurgery::homology::{homology, ChainComplex, Coefficients};
use cxsurgery::types::{check_type, TypeSpec};
use cxsurgery::{canonical_form, data, iso, Complex, FaceWord, SignedEdge};

/// Random face words over a small label set: each face has 1 to 4 letters.
fn complex() -> impl Strategy<Value = Complex> {
    let letter = (1u32..=6, any::<bool>()).prop_map(|(l, r)| SignedEdge::new(l, r));
    let face = prop::collection::vec(letter, 1..=4).prop_map(|w| FaceWord::new(w).unwrap());
    prop::collection::vec(face, 1..=6).prop_map(Complex::new)
}

fn corpus() -> impl Strategy<Value = Complex> {
    prop_oneof![
        Just(data::v23()),
        Just(data::x_prime()),
        Just(data::x_double_prime()),
        Just(data::w158()),
    ]
}

/// Relabel by a permutation with orientation flips, rotate and reverse faces,
/// and reorder faces, all driven by `seed`.
fn scramble(c: &Complex, seed: &[u32]) -> Complex {
    let mut at = 0;
    let mut next = |m: u32| {
        let v = seed[at % seed.len()] % m.max(1);
        at += 1;
        v
    };
    let mut labels: Vec<u32> = c.edges().to_vec();
    for i in (1..labels.len()).rev() {
        let j = next(i as u32 + 1) as usize;
        labels.swap(i, j);
    }
    let map: BTreeMap<u32, SignedEdge> = c
        .edges()
        .iter()
        .zip(&labels)
        .map(|(&e, &l)| (e, SignedEdge::new(l + 100, next(2) == 1)))
        .collect();
    let mut faces: Vec<FaceWord> = c
        .faces()
        .iter()
        .map(|w| {
            let mut letters: Vec<SignedEdge> = w
                .letters()
                .iter()
                .map(|s| map[&s.label()].flipped_if(s.is_reversed()))
                .collect();
            let k = next(letters.len() as u32) as usize;
            letters.rotate_left(k);
            let f = FaceWord::new(letters).unwrap();
            if next(2) == 1 {
                f.reversed()
            } else {
                f
            }
        })
        .collect();
    let k = faces.len();
    for i in (1..k).rev() {
        let j = next(i as u32 + 1) as usize;
        faces.swap(i, j);
    }
    Complex::new(faces)
}

fn seed() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), 1..64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_form_ignores_relabeling(c in complex(), s in seed()) {
        let k = canonical_form(&c);
        prop_assert_eq!(&canonical_form(&k), &k);
        prop_assert_eq!(canonical_form(&scramble(&c, &s)), k);
    }

    #[test]
    fn scrambles_are_isomorphic(c in complex(), s in seed()) {
        prop_assert!(iso::isomorphic(&c, &scramble(&c, &s)));
    }

    #[test]
    fn boundary_squares_to_zero(c in complex()) {
        prop_assert!(ChainComplex::of(&c).is_chain_complex());
    }

    #[test]
    fn euler_characteristic_from_ranks(c in complex()) {
        let h = homology(&c, Coefficients::Rationals);
        let chi = h.h0.rank as i64 - h.h1.rank as i64 + h.h2.rank as i64;
        prop_assert_eq!(chi, c.euler_characteristic());
        prop_assert_eq!(h.h0.rank, homology(&c, Coefficients::Integers).h0.rank);
    }

    #[test]
    fn homology_ignores_relabeling(c in complex(), s in seed()) {
        let d = scramble(&c, &s);
        prop_assert_eq!(homology(&c, Coefficients::Integers), homology(&d, Coefficients::Integers));
    }

    #[test]
    fn occurrences_add_up(c in complex()) {
        let occ: usize = c.edges().iter().map(|&e| c.occurrence_count(e)).sum();
        prop_assert_eq!(occ, c.total_face_length());
        for v in c.vertices() {
            let link = c.link(v).unwrap();
            for (i, end) in link.ends.iter().enumerate() {
                prop_assert_eq!(link.graph.degree(i), c.occurrence_count(end.label));
            }
        }
    }

    #[test]
    fn text_round_trip(c in complex()) {
        prop_assert_eq!(c.to_line().parse::<Complex>().unwrap(), c);
    }

    #[test]
    fn type_checks_ignore_relabeling(c in corpus(), s in seed()) {
        let d = scramble(&c, &s);
        for t in [TypeSpec::rank74(), TypeSpec::rank158(), TypeSpec::fake74()] {
            for strict in [false, true] {
                let a = check_type(&c, &t, strict).unwrap().pass;
                let b = check_type(&d, &t, strict).unwrap().pass;
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn flips_are_involutions(c in complex(), f in 0usize..6, i in 0usize..4, l in 1u32..=6) {
        prop_assume!(f < c.face_count() && i < c.faces()[f].len());
        let old = c.faces()[f].at(i);
        let new = SignedEdge::new(l, !old.is_reversed());
        let there = flip_surgery(&c, &[(f, i, new)]).unwrap();
        prop_assert_eq!(flip_surgery(&there, &[(f, i, old)]).unwrap(), c);
    }

    #[test]
    fn dual_is_an_involution(c in complex()) {
        let b = c.boundary_edges();
        let all: Vec<usize> = (0..c.face_count()).collect();
        let x = Cobordism::new(
            c.clone(),
            cxsurgery::bord::CollarSide::new(all.clone(), b.clone()),
            cxsurgery::bord::CollarSide::new(all, Vec::new()),
        );
        if let Ok(x) = x {
            prop_assert_eq!(x.dual().dual(), x.clone());
            prop_assert_eq!(x.dual().left, x.right);
        }
    }
}
