//! Named graphs: the link graphs and the collar nerves with their span colorings.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, MultiGraph, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedGraph {
    MoebiusKantor,
    Heawood,
    FakeMoebiusKantor,
    NerveS,
    NerveT,
    NerveTheta,
    NerveThetaPrime,
    NerveCube,
    NerveOctagonal,
}

impl NamedGraph {
    pub const ALL: [NamedGraph; 9] = [
        NamedGraph::MoebiusKantor,
        NamedGraph::Heawood,
        NamedGraph::FakeMoebiusKantor,
        NamedGraph::NerveS,
        NamedGraph::NerveT,
        NamedGraph::NerveTheta,
        NamedGraph::NerveThetaPrime,
        NamedGraph::NerveCube,
        NamedGraph::NerveOctagonal,
    ];

    pub const NERVES: [NamedGraph; 6] = [
        NamedGraph::NerveS,
        NamedGraph::NerveT,
        NamedGraph::NerveTheta,
        NamedGraph::NerveThetaPrime,
        NamedGraph::NerveCube,
        NamedGraph::NerveOctagonal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedGraph::MoebiusKantor => "moebius_kantor",
            NamedGraph::Heawood => "heawood",
            NamedGraph::FakeMoebiusKantor => "fake_moebius_kantor",
            NamedGraph::NerveS => "nerve_S",
            NamedGraph::NerveT => "nerve_T",
            NamedGraph::NerveTheta => "nerve_theta",
            NamedGraph::NerveThetaPrime => "nerve_theta_prime",
            NamedGraph::NerveCube => "nerve_cube",
            NamedGraph::NerveOctagonal => "nerve_octagonal",
        }
    }

    /// Short collar-type name used in reports (`S`, `T`, `theta`, ...).
    pub fn collar_type(self) -> Option<&'static str> {
        match self {
            NamedGraph::NerveS => Some("S"),
            NamedGraph::NerveT => Some("T"),
            NamedGraph::NerveTheta => Some("theta"),
            NamedGraph::NerveThetaPrime => Some("theta_prime"),
            NamedGraph::NerveCube => Some("cubic"),
            NamedGraph::NerveOctagonal => Some("octagonal"),
            _ => None,
        }
    }

    pub fn graph(self) -> MultiGraph {
        match self {
            NamedGraph::MoebiusKantor => generalized_petersen(8, 3),
            NamedGraph::Heawood => heawood(),
            NamedGraph::FakeMoebiusKantor => MultiGraph::from_edges(16, &FAKE_MK_EDGES),
            nerve => self::span_coloring(nerve).expect("nerve").graph,
        }
    }

    /// The catalog entry matching `g` up to isomorphism, if any.
    pub fn identify(g: &MultiGraph) -> Option<NamedGraph> {
        NamedGraph::ALL.into_iter().find(|n| n.graph().is_isomorphic(g))
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedGraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NamedGraph::ALL
            .into_iter()
            .find(|n| n.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

pub fn named_graph(name: &str) -> Result<MultiGraph> {
    Ok(name.parse::<NamedGraph>()?.graph())
}

/// GP(n, k): outer cycle `0..n`, spokes `i -- n+i`, inner chords `n+i -- n+(i+k mod n)`.
pub fn generalized_petersen(n: usize, k: usize) -> MultiGraph {
    let mut g = MultiGraph::new(2 * n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
        g.add_edge(i, n + i);
        g.add_edge(n + i, n + (i + k) % n);
    }
    g
}

/// Moebius-Kantor graph as LCF [5,-5]^8: a 16-cycle with chords. Vertex `i`
/// here is vertex `i + 1` of the usual drawing.
pub fn moebius_kantor_lcf() -> MultiGraph {
    let mut g = MultiGraph::new(16);
    for i in 0..16 {
        g.add_edge(i, (i + 1) % 16);
    }
    for (a, b) in [(1, 6), (3, 8), (5, 10), (7, 12), (9, 14), (11, 16), (13, 2), (15, 4)] {
        g.add_edge(a - 1, b - 1);
    }
    g
}

/// Incidence graph of the Fano plane: points `0..7`, lines `7..14`.
pub fn heawood() -> MultiGraph {
    let mut g = MultiGraph::new(14);
    for l in 0..7 {
        for d in [0, 1, 3] {
            g.add_edge((l + d) % 7, 7 + l);
        }
    }
    g
}

fn colored(n: usize, x: &[(usize, usize)], y: &[(usize, usize)]) -> ColoredGraph {
    let mut g = MultiGraph::new(n);
    let mut colors = Vec::new();
    for &(a, b) in x {
        g.add_edge(a, b);
        colors.push(Span::X);
    }
    for &(a, b) in y {
        g.add_edge(a, b);
        colors.push(Span::Y);
    }
    ColoredGraph::new(g, colors)
}

/// Span-colored nerve for each nerve entry of the catalog.
pub fn span_coloring(nerve: NamedGraph) -> Option<ColoredGraph> {
    // Vertex names in comments follow the usual drawings (A = 0, B = 1, ...).
    Some(match nerve {
        // Square ABCD with AD and BC doubled; each color is a path of length 3.
        NamedGraph::NerveS => colored(4, &[(2, 3), (0, 3), (1, 2)], &[(0, 1), (0, 3), (1, 2)]),
        // Tetrahedron; each color is a Hamiltonian path.
        NamedGraph::NerveT => colored(4, &[(0, 1), (1, 2), (0, 3)], &[(0, 2), (1, 3), (2, 3)]),
        // Tripods centered at A and H with legs B-E, C-F, D-G doubled.
        NamedGraph::NerveTheta => colored(
            8,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)],
            &[(1, 4), (2, 5), (3, 6), (4, 7), (5, 7), (6, 7)],
        ),
        // Crossed variant: B-F, C-E in one tripod, B-E, C-F in the other, D-G doubled.
        NamedGraph::NerveThetaPrime => colored(
            8,
            &[(0, 1), (0, 2), (0, 3), (1, 5), (2, 4), (3, 6)],
            &[(1, 4), (2, 5), (3, 6), (4, 7), (5, 7), (6, 7)],
        ),
        // 3-cube on bit vectors, tripods centered at 000 and 111.
        NamedGraph::NerveCube => colored(
            8,
            &[(0, 4), (4, 5), (0, 2), (2, 6), (0, 1), (1, 3)],
            &[(7, 6), (6, 4), (7, 5), (5, 1), (7, 3), (3, 2)],
        ),
        // Octagon with every other side doubled; each color is two paths of length 3.
        NamedGraph::NerveOctagonal => colored(
            8,
            &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (7, 0)],
            &[(1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 0)],
        ),
        _ => return None,
    })
}

/// Canonical edge list of the link of X'' (both links are isomorphic).
const FAKE_MK_EDGES: [(usize, usize); 24] = [
    (0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6),
    (2, 8), (3, 7), (3, 9), (4, 10), (4, 13), (5, 11),
    (5, 12), (6, 10), (6, 12), (7, 11), (7, 13), (8, 11),
    (8, 14), (9, 10), (9, 15), (12, 14), (13, 15), (14, 15),
];

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn sizes() {
        let mk = NamedGraph::MoebiusKantor.graph();
        assert_eq!((mk.vertex_count(), mk.edge_count()), (16, 24));
        let h = heawood();
        assert_eq!((h.vertex_count(), h.edge_count(), h.girth()), (14, 21, Some(6)));
        let s = NamedGraph::NerveS.graph();
        assert_eq!((s.vertex_count(), s.edge_count()), (4, 6));
        let o = NamedGraph::NerveOctagonal.graph();
        assert_eq!((o.vertex_count(), o.edge_count()), (8, 12));
        assert!(o.is_regular(3));
    }

    #[test]
    fn lcf_drawing_is_moebius_kantor() {
        assert!(moebius_kantor_lcf().is_isomorphic(&generalized_petersen(8, 3)));
    }

    #[test]
    fn nerves_are_cubic_and_loop_free() {
        for n in NamedGraph::NERVES {
            let g = n.graph();
            assert!(g.is_regular(3), "{n}");
            assert!(!g.has_loops(), "{n}");
        }
    }

    #[test]
    fn automorphism_orders() {
        let mk = NamedGraph::MoebiusKantor.graph().automorphisms().unwrap();
        assert_eq!(mk.order, BigUint::from(96u32));
        let k4 = NamedGraph::NerveT.graph().automorphisms().unwrap();
        assert_eq!(k4.order, BigUint::from(24u32));
    }

    #[test]
    fn fake_moebius_kantor_is_the_link_of_the_flipped_cover() {
        let stored = NamedGraph::FakeMoebiusKantor.graph();
        assert_eq!(stored.girth(), Some(5));
        let c = crate::data::x_double_prime();
        for v in c.vertices() {
            let link = c.link(v).unwrap().graph;
            assert_eq!(link.canonical_form(), stored.canonical_form());
        }
    }

    #[test]
    fn names_round_trip() {
        for n in NamedGraph::ALL {
            assert_eq!(n.name().parse::<NamedGraph>().unwrap(), n);
        }
        assert!(named_graph("petersen").is_err());
    }
}
