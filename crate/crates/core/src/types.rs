//! Link types: finite sets of allowed link graphs for equilateral triangle complexes.

use std::fmt;
use std::str::FromStr;

use crate::catalog::NamedGraph;
use crate::complex::{Complex, VertexId};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

#[derive(Clone, Debug)]
pub struct TypeSpec {
    pub name: String,
    pub allowed: Vec<(String, MultiGraph)>,
}

impl TypeSpec {
    pub fn new(name: impl Into<String>, allowed: Vec<(String, MultiGraph)>) -> Result<Self> {
        if allowed.is_empty() {
            return Err(Error::Precondition("a type needs at least one link graph".into()));
        }
        Ok(TypeSpec {
            name: name.into(),
            allowed,
        })
    }

    fn from_catalog(name: &str, graphs: &[NamedGraph]) -> Self {
        TypeSpec {
            name: name.to_string(),
            allowed: graphs.iter().map(|g| (g.name().to_string(), g.graph())).collect(),
        }
    }

    /// Moebius-Kantor links.
    pub fn rank74() -> Self {
        Self::from_catalog("rank74", &[NamedGraph::MoebiusKantor])
    }

    /// Heawood links (order-2 projective plane).
    pub fn a2q2() -> Self {
        Self::from_catalog("A2q2", &[NamedGraph::Heawood])
    }

    pub fn rank158() -> Self {
        Self::from_catalog("rank158", &[NamedGraph::MoebiusKantor, NamedGraph::Heawood])
    }

    pub fn fake74() -> Self {
        Self::from_catalog("fake74", &[NamedGraph::FakeMoebiusKantor])
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "rank74" => Ok(Self::rank74()),
            "A2q2" | "a2q2" => Ok(Self::a2q2()),
            "rank158" => Ok(Self::rank158()),
            "fake74" => Ok(Self::fake74()),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }

    /// Index of the allowed graph isomorphic to `g`.
    pub fn matches(&self, g: &MultiGraph) -> Option<usize> {
        self.allowed.iter().position(|(_, a)| a.is_isomorphic(g))
    }
}

impl FromStr for TypeSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TypeSpec::builtin(s)
    }
}

/// Canonical forms of the links at interior vertices, without repetition.
pub fn affiliated_type(c: &Complex) -> Vec<MultiGraph> {
    let mut out: Vec<MultiGraph> = Vec::new();
    for v in c.interior_vertices() {
        let g = c.link(v).expect("vertex exists").graph.canonical_form();
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out.sort_by(|a, b| {
        (a.vertex_count(), a.edges()).cmp(&(b.vertex_count(), b.edges()))
    });
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexReport {
    pub vertex: VertexId,
    pub interior: bool,
    /// Name of the allowed graph the link matches.
    pub matched: Option<String>,
    pub girth: Option<usize>,
    pub link_vertices: usize,
    pub link_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeVerdict {
    pub pass: bool,
    pub strict: bool,
    pub vertices: Vec<VertexReport>,
    /// Allowed graphs not realized by any interior link (strict mode).
    pub missing: Vec<String>,
}

impl fmt::Display for TypeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.vertices {
            let girth = r.girth.map_or("inf".to_string(), |g| g.to_string());
            let status = if !r.interior {
                "boundary".to_string()
            } else {
                r.matched.clone().unwrap_or_else(|| "no match".into())
            };
            writeln!(
                f,
                "vertex {}: link n={} e={} girth={} {}",
                r.vertex, r.link_vertices, r.link_edges, girth, status
            )?;
        }
        for m in &self.missing {
            writeln!(f, "missing: {m}")?;
        }
        write!(f, "{}", if self.pass { "pass" } else { "fail" })
    }
}

fn require_triangles(c: &Complex) -> Result<()> {
    for (i, w) in c.faces().iter().enumerate() {
        if w.len() != 3 {
            return Err(Error::NonTriangular { face: i, len: w.len() });
        }
    }
    Ok(())
}

pub fn check_type(c: &Complex, t: &TypeSpec, strict: bool) -> Result<TypeVerdict> {
    require_triangles(c)?;
    let interior = c.interior_vertices();
    let mut realized = vec![false; t.allowed.len()];
    let mut pass = true;
    let mut vertices = Vec::new();
    for v in c.vertices() {
        let link = c.link(v)?.graph;
        let is_interior = interior.contains(&v);
        let hit = if is_interior { t.matches(&link) } else { None };
        if let Some(i) = hit {
            realized[i] = true;
        } else if is_interior {
            pass = false;
        }
        vertices.push(VertexReport {
            vertex: v,
            interior: is_interior,
            matched: hit.map(|i| t.allowed[i].0.clone()),
            girth: link.girth(),
            link_vertices: link.vertex_count(),
            link_edges: link.edge_count(),
        });
    }
    let missing: Vec<String> = if strict {
        t.allowed
            .iter()
            .zip(&realized)
            .filter(|(_, &r)| !r)
            .map(|((n, _), _)| n.clone())
            .collect()
    } else {
        Vec::new()
    };
    Ok(TypeVerdict {
        pass: pass && missing.is_empty(),
        strict,
        vertices,
        missing,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureVerdict {
    pub pass: bool,
    /// Interior vertices whose link has girth below 6, with that girth.
    pub failures: Vec<(VertexId, Option<usize>)>,
}

/// Link condition for equilateral triangles: every interior link has girth at least 6.
pub fn curvature_check(c: &Complex) -> Result<CurvatureVerdict> {
    require_triangles(c)?;
    let mut failures = Vec::new();
    for v in c.interior_vertices() {
        let g = c.link(v)?.graph.girth();
        if matches!(g, Some(n) if n < 6) {
            failures.push((v, g));
        }
    }
    Ok(CurvatureVerdict {
        pass: failures.is_empty(),
        failures,
    })
}
