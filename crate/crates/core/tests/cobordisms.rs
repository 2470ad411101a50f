use std::sync::OnceLock;

use proptest::prelude::*;

use cxsurgery::bord::{self, compose, Cobordism, ComposeOptions, End2};
use cxsurgery::catalog::{moebius_kantor_lcf, NamedGraph};
use cxsurgery::classify::{classify_graph, classify_st, collar_types, enumerate_roots, Classification};
use cxsurgery::decomposition::base_graph;
use cxsurgery::omega::{build_omega, parse_word, Blocks, Fillings, Framing, OmegaSpec, PieceKind, Rank, Shape};
use cxsurgery::{canonical_form, Complex, Error, MultiGraph};

fn all_links_mk(c: &Complex) -> bool {
    let mk = NamedGraph::MoebiusKantor.graph();
    c.interior_vertices()
        .into_iter()
        .all(|v| c.link(v).unwrap().graph.is_isomorphic(&mk))
}

fn classification() -> &'static Classification {
    static RUN: OnceLock<Classification> = OnceLock::new();
    RUN.get_or_init(|| classify_st().unwrap())
}

fn blocks() -> (Cobordism, Cobordism) {
    let c = classification();
    (c.cobordisms[0].clone(), c.cobordisms[1].clone())
}

fn standard_pieces() -> (Blocks, Fillings) {
    (
        Blocks::from_classification(classification()).unwrap(),
        Fillings::from_cover().unwrap(),
    )
}

#[test]
fn block_shapes() {
    let (a, b) = blocks();
    for x in [&a, &b] {
        let c = &x.body;
        assert_eq!(c.face_count(), 14);
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(c.interior_vertices().len(), 1);
        assert_eq!(c.boundary_edges().len(), 6);
        assert_eq!((x.left.faces.len(), x.right.faces.len()), (6, 6));
        assert!(all_links_mk(c));
        assert_eq!(collar_types(x).unwrap(), vec![Some(NamedGraph::NerveS); 2]);
    }
}

#[test]
fn blocks_compose_in_either_order() {
    let (a, b) = blocks();
    for (x, y) in [(&a, &b), (&b, &a), (&a, &a), (&b, &b)] {
        let c = compose(x, y, None, ComposeOptions::default()).unwrap();
        // the outer vertex of each block is the interior vertex of the other
        assert_eq!(c.body.vertex_count(), 4);
        assert_eq!(c.body.interior_vertices().len(), 2);
        assert!(all_links_mk(&c.body));
    }
}

#[test]
fn blocks_survive_a_file_round_trip() {
    let (a, b) = blocks();
    for x in [a, b] {
        let back = Cobordism::from_toml(&x.to_toml()).unwrap();
        assert_eq!(back, x);
    }
}

#[test]
fn relabeled_link_graph_gives_the_same_classes() {
    let l = moebius_kantor_lcf();
    let perm: Vec<usize> = (0..16).map(|i| (5 * i + 3) % 16).collect();
    let moved = l.permuted(&perm);
    let here = classification();
    let there = classify_graph(&moved).unwrap();
    assert!(there.pass(), "{:?}", there.checkpoints);
    let forms = |c: &[Cobordism]| -> Vec<Complex> { c.iter().map(|x| canonical_form(&x.body)).collect() };
    assert_eq!(forms(&here.cobordisms), forms(&there.cobordisms));
    assert!(classify_graph(&MultiGraph::from_edges(16, &[(0, 1)])).is_err());
}

#[test]
fn checkpoints_are_reported_per_lemma() {
    let c = classification();
    for name in [
        "root orbits",
        "complement shapes",
        "unique partner (rank 2)",
        "unique partner (rank 3/2)",
        "raw partners (rank 2)",
        "forced first loop (rank 3/2)",
        "two cobordism classes",
        "no collar of type T",
        "duality permutation",
    ] {
        assert!(c.checkpoint(name).is_some_and(|p| p.pass), "{name}");
    }
    assert_eq!(enumerate_roots(&moebius_kantor_lcf()).len(), 96);
}

#[test]
fn segment_word_gives_a_path() {
    let (blocks, fillings) = standard_pieces();
    let spec = OmegaSpec::new(parse_word("3/2,2,2").unwrap(), Shape::Segment, 0).unwrap();
    let pc = build_omega(&spec, &blocks, &fillings).unwrap();
    let c = &pc.complex;
    assert_eq!(c.vertex_count(), 5);
    assert!(c.boundary_edges().is_empty());
    assert!(all_links_mk(c));
    let g = base_graph(c);
    assert_eq!(g.edge_count(), 4);
    assert!(g.is_connected());
    let mut degrees = g.degrees();
    degrees.sort_unstable();
    assert_eq!(degrees, vec![1, 1, 2, 2, 2]);
    // the basepoint is an inner vertex of the path
    assert_eq!(g.degree(pc.basepoint.0), 2);
}

#[test]
fn circles() {
    let (blocks, fillings) = standard_pieces();
    let spec = OmegaSpec::new(parse_word("3/2,2").unwrap(), Shape::Circle, 1).unwrap();
    let pc = build_omega(&spec, &blocks, &fillings).unwrap();
    assert_eq!(pc.complex.vertex_count(), 2);
    assert!(pc.complex.boundary_edges().is_empty());
    assert!(all_links_mk(&pc.complex));
    assert!(matches!(
        OmegaSpec::new(parse_word("2").unwrap(), Shape::Circle, 0),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn fillings_from_the_cover() {
    let (_, fillings) = standard_pieces();
    for (x, end) in [(&fillings.start, End2::Right), (&fillings.end, End2::Left)] {
        assert!(x.is_filling());
        assert_eq!(x.body.face_count(), 11);
        assert_eq!(x.side(end).faces.len(), 6);
        assert!(all_links_mk(&x.body));
    }
    let (a, _) = blocks();
    assert_eq!(bord::matchings(&fillings.start, &a).len(), 2);
}

fn framing() -> &'static Framing {
    static FRAMING: OnceLock<Framing> = OnceLock::new();
    FRAMING.get_or_init(|| {
        let (b, f) = standard_pieces();
        Framing::new(&b, &f).unwrap()
    })
}

fn first() -> impl Strategy<Value = PieceKind> {
    prop_oneof![
        Just(PieceKind::Start),
        Just(PieceKind::Block(Rank::ThreeHalves)),
        Just(PieceKind::Block(Rank::Two)),
    ]
}

fn middle() -> impl Strategy<Value = PieceKind> {
    prop_oneof![
        Just(PieceKind::Block(Rank::ThreeHalves)),
        Just(PieceKind::Block(Rank::Two)),
    ]
}

fn last() -> impl Strategy<Value = PieceKind> {
    prop_oneof![
        Just(PieceKind::Block(Rank::ThreeHalves)),
        Just(PieceKind::Block(Rank::Two)),
        Just(PieceKind::End),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn framed_composition_is_associative(a in first(), b in middle(), c in last()) {
        let fr = framing();
        let (x, y, z) = (fr.piece(a), fr.piece(b), fr.piece(c));
        let left = fr.compose(&fr.compose(x, y).unwrap().0, z).unwrap().0;
        let right = fr.compose(x, &fr.compose(y, z).unwrap().0).unwrap().0;
        prop_assert!(bord::cobordisms_isomorphic(&left.cob, &right.cob));
        prop_assert!(all_links_mk(&left.cob.body));
    }

    #[test]
    fn identities_are_units(a in first()) {
        let x = &framing().piece(a).cob;
        let opts = ComposeOptions::default();
        let r = compose(x, &x.identity(End2::Right), None, opts).unwrap();
        prop_assert!(bord::cobordisms_isomorphic(&r, x));
        if !x.left.is_empty() {
            let l = compose(&x.identity(End2::Left), x, None, opts).unwrap();
            prop_assert!(bord::cobordisms_isomorphic(&l, x));
        }
        prop_assert_eq!(&x.dual().dual(), x);
    }
}
