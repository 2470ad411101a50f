use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use serde_json::{json, Value};

use cxsurgery::bord::{self, Cobordism, ComposeOptions};
use cxsurgery::classify::classify_st;
use cxsurgery::collar::{
    collar_predicates, cubic_multigraphs, h_collar_certificate, st_lemma_enumerate, two_vertex_collar,
};
use cxsurgery::covers::{enumerate_double_covers, find_free_involution, verify_cover};
use cxsurgery::decomposition::{base_graph, model_geometry, model_group, weight_equation_check};
use cxsurgery::homology::{homology, Coefficients, Group};
use cxsurgery::omega::{build_omega, orbit_map_fibers, parse_word, standard_pieces, OmegaSpec, Shape};
use cxsurgery::types::{check_type, curvature_check, TypeSpec};
use cxsurgery::{canonical_form, iso, Complex, MultiGraph, NamedGraph, SignedEdge, VertexId};

use crate::error::{CliError, CliResult};
use crate::input::{
    create_dir, format_edge_map, out_path, read_cobordism, read_complex, read_edge_map, write_text,
};
use crate::Command;

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub canonical: bool,
}

/// A report in both output forms; `ok` is false when the checked property fails.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Outcome {
    fn new(text: String, json: Value) -> Self {
        Outcome { text, json, ok: true }
    }

    fn verdict(text: String, json: Value, ok: bool) -> Self {
        Outcome { text, json, ok }
    }
}

pub fn run(command: Command, opts: Options) -> CliResult<Outcome> {
    match command {
        Command::Links(a) => links(&read_complex(&a.file)?),
        Command::CheckType {
            complex,
            type_name,
            strict,
        } => {
            let t: TypeSpec = type_name.parse()?;
            let v = check_type(&read_complex(&complex.file)?, &t, strict)?;
            let vertices: Vec<Value> = v
                .vertices
                .iter()
                .map(|r| {
                    json!({
                        "vertex": r.vertex.0,
                        "interior": r.interior,
                        "matched": r.matched,
                        "girth": r.girth,
                        "link_vertices": r.link_vertices,
                        "link_edges": r.link_edges,
                    })
                })
                .collect();
            let js = json!({"type": type_name, "strict": strict, "pass": v.pass, "vertices": vertices, "missing": v.missing});
            Ok(Outcome::verdict(v.to_string(), js, v.pass))
        }
        Command::Curvature(a) => {
            let v = curvature_check(&read_complex(&a.file)?)?;
            let mut text = String::new();
            for (u, g) in &v.failures {
                writeln!(text, "vertex {u}: girth {}", girth(*g)).unwrap();
            }
            text.push_str(pass_fail(v.pass));
            let fails: Vec<Value> = v
                .failures
                .iter()
                .map(|(u, g)| json!({"vertex": u.0, "girth": g}))
                .collect();
            Ok(Outcome::verdict(text, json!({"pass": v.pass, "failures": fails}), v.pass))
        }
        Command::Homology {
            complex,
            coefficients,
        } => {
            let k: Coefficients = coefficients.parse()?;
            let h = homology(&read_complex(&complex.file)?, k);
            let js = json!({
                "coefficients": k.to_string(),
                "H0": group_json(&h.h0),
                "H1": group_json(&h.h1),
                "H2": group_json(&h.h2),
            });
            Ok(Outcome::new(h.to_string(), js))
        }
        Command::Euler(a) => {
            let c = read_complex(&a.file)?;
            let (v, e, f, chi) = (c.vertex_count(), c.edge_count(), c.face_count(), c.euler_characteristic());
            Ok(Outcome::new(
                format!("V = {v}\nE = {e}\nF = {f}\nchi = {chi}"),
                json!({"vertices": v, "edges": e, "faces": f, "euler_characteristic": chi}),
            ))
        }
        Command::Covers { complex, out_dir } => covers(&read_complex(&complex.file)?, out_dir.as_deref(), opts),
        Command::VerifyCover { cover, base, map } => {
            let (cover, base) = (read_complex(&cover)?, read_complex(&base)?);
            let signed = read_edge_map(&map)?;
            // an edge sent to a reversed base edge is reoriented first
            let cover = cover.relabeled(|l| SignedEdge::new(l, signed.get(&l).is_some_and(|b| b.is_reversed())));
            let plain: BTreeMap<u32, u32> = signed.iter().map(|(&a, b)| (a, b.label())).collect();
            let v = verify_cover(&cover, &base, &plain)?;
            let mut text: String = v.problems.iter().map(|p| format!("{p}\n")).collect();
            text.push_str(pass_fail(v.pass));
            Ok(Outcome::verdict(text, json!({"pass": v.pass, "problems": v.problems}), v.pass))
        }
        Command::Involution(a) => {
            let c = read_complex(&a.file)?;
            Ok(match find_free_involution(&c) {
                Some(g) => Outcome::new(
                    format!("free involution:\n{}", format_edge_map(&g.edge_map)),
                    json!({"found": true, "edge_map": map_json(&g.edge_map), "face_map": g.face_map}),
                ),
                None => Outcome::verdict("free involution: none".into(), json!({"found": false}), false),
            })
        }
        Command::Collar(a) => collar(&read_complex(&a.file)?),
        Command::Predicates(a) => predicates(&read_complex(&a.file)?),
        Command::SurgeryFlip {
            complex,
            replacements,
        } => {
            let c = read_complex(&complex.file)?;
            let reps = replacements
                .iter()
                .map(|r| parse_replacement(r))
                .collect::<CliResult<Vec<_>>>()?;
            let out = bord::flip_surgery(&c, &reps)?;
            Ok(complex_outcome(&out, opts))
        }
        Command::Compose {
            first,
            second,
            matching,
            unique,
            out,
        } => {
            let (x, y) = (read_cobordism(&first)?, read_cobordism(&second)?);
            let m = match matching {
                Some(path) => {
                    let want = read_edge_map(&path)?;
                    let found = bord::matchings(&x, &y).into_iter().find(|m| m.edge_map == want);
                    Some(found.ok_or_else(|| {
                        cxsurgery::Error::InvalidMatching(format!(
                            "{} is not an isomorphism of the collar closures",
                            path.display()
                        ))
                    })?)
                }
                None => None,
            };
            let opts = ComposeOptions {
                require_unique: unique,
                ..ComposeOptions::default()
            };
            let z = bord::compose(&x, &y, m.as_ref(), opts)?;
            cobordism_outcome(&z, out.as_deref())
        }
        Command::Split { complex, out_dir } => {
            let c = read_complex(&complex.file)?;
            let col = two_vertex_collar(&c)?;
            let (left, right) = bord::split_along_collar(&c, &col)?;
            let mut text = String::new();
            match out_dir {
                Some(dir) => {
                    create_dir(&dir)?;
                    for (name, x) in [("left.toml", &left), ("right.toml", &right)] {
                        let p = out_path(&dir, name);
                        write_text(&p, &x.to_toml())?;
                        writeln!(text, "wrote {}", p.display()).unwrap();
                    }
                }
                None => {
                    write!(text, "# left\n{}\n# right\n{}", left.to_toml(), right.to_toml()).unwrap();
                }
            }
            Ok(Outcome::new(
                text,
                json!({"left": cobordism_json(&left), "right": cobordism_json(&right)}),
            ))
        }
        Command::Omega { seq, shape, base } => {
            let shape: Shape = shape.parse()?;
            let spec = OmegaSpec::new(parse_word(&seq)?, shape, base)?;
            let (blocks, fillings) = standard_pieces()?;
            let pc = build_omega(&spec, &blocks, &fillings)?;
            let mut out = complex_outcome(&pc.complex, Options::default());
            let base = if opts.canonical {
                let canon = canonical_form(&pc.complex);
                let g = iso::isomorphism(&pc.complex, &canon, None).expect("canonical form is isomorphic");
                let b = g.map_vertex(&pc.complex, &canon, pc.basepoint);
                out = complex_outcome(&canon, Options::default());
                b
            } else {
                pc.basepoint
            };
            write!(out.text, "\nbasepoint: {base}").unwrap();
            out.json = json!({"faces": out.json, "basepoint": base.0});
            Ok(out)
        }
        Command::Fibers { n, shape } => {
            let shape: Shape = shape.parse()?;
            let (blocks, fillings) = standard_pieces()?;
            let r = orbit_map_fibers(n, shape, &blocks, &fillings)?;
            let (name, ok) = match shape {
                Shape::Segment => ("injective", r.is_injective()),
                Shape::Circle => ("reflection pairs only", r.reflection_pairs_only()),
            };
            let fibers: Vec<Vec<String>> = r
                .fibers
                .iter()
                .map(|f| f.iter().map(|w| cxsurgery::omega::format_word(w)).collect())
                .collect();
            let text = format!("{r}\n{name}: {}", pass_fail(ok));
            let js = json!({"shape": shape.to_string(), "length": r.length, "fibers": fibers, "max_fiber": r.max_fiber(), "check": name, "pass": ok});
            Ok(Outcome::verdict(text, js, ok))
        }
        Command::Iso {
            first,
            second,
            pointed,
        } => {
            let (a, b) = (read_complex(&first)?, read_complex(&second)?);
            let pointed = match pointed {
                Some(p) => {
                    let (x, y) = parse_pair(&p)?;
                    a.check_vertex(x)?;
                    b.check_vertex(y)?;
                    Some((x, y))
                }
                None => None,
            };
            Ok(match iso::isomorphism(&a, &b, pointed) {
                Some(g) => Outcome::new(
                    format!("isomorphic\n{}", format_edge_map(&g.edge_map)),
                    json!({"isomorphic": true, "edge_map": map_json(&g.edge_map), "face_map": g.face_map}),
                ),
                None => Outcome::verdict("not isomorphic".into(), json!({"isomorphic": false}), false),
            })
        }
        Command::ClassifySt { out_dir } => classify(&out_dir),
        Command::StEnum { raw } => st_enum(raw),
        Command::Weights(a) => weights(&read_complex(&a.file)?),
        Command::BaseGraph(a) => {
            let g = base_graph(&read_complex(&a.file)?);
            Ok(Outcome::new(g.to_string(), graph_json(&g)))
        }
        Command::ModelGroup { complex, vertex } => {
            let c = read_complex(&complex.file)?;
            let v = VertexId(vertex);
            c.check_vertex(v)?;
            let p = model_group(&c, v)?;
            let rels: Vec<Vec<i64>> = p.relators.iter().map(|r| r.to_ints()).collect();
            Ok(Outcome::new(
                p.to_string(),
                json!({"vertex": vertex, "generators": p.generators, "relators": rels}),
            ))
        }
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn girth(g: Option<usize>) -> String {
    g.map_or_else(|| "inf".to_string(), |g| g.to_string())
}

fn group_json(g: &Group) -> Value {
    let torsion: Vec<String> = g.torsion.iter().map(|d| d.to_string()).collect();
    json!({"rank": g.rank, "torsion": torsion, "text": g.to_string()})
}

fn graph_json(g: &MultiGraph) -> Value {
    json!({"n": g.vertex_count(), "edges": g.edges()})
}

fn map_json(m: &BTreeMap<u32, SignedEdge>) -> Value {
    let m: BTreeMap<String, i64> = m.iter().map(|(a, b)| (a.to_string(), b.to_int())).collect();
    json!(m)
}

fn cobordism_json(x: &Cobordism) -> Value {
    json!({
        "faces": x.body.to_ints(),
        "left": {"faces": x.left.faces, "boundary": x.left.boundary},
        "right": {"faces": x.right.faces, "boundary": x.right.boundary},
    })
}

fn complex_outcome(c: &Complex, opts: Options) -> Outcome {
    let c = if opts.canonical { canonical_form(c) } else { c.clone() };
    Outcome::new(c.to_string(), json!(c.to_ints()))
}

fn cobordism_outcome(x: &Cobordism, out: Option<&Path>) -> CliResult<Outcome> {
    let text = match out {
        Some(p) => {
            write_text(p, &x.to_toml())?;
            format!("wrote {}", p.display())
        }
        None => x.to_toml(),
    };
    Ok(Outcome::new(text, cobordism_json(x)))
}

fn parse_replacement(s: &str) -> CliResult<(usize, usize, SignedEdge)> {
    let bad = || CliError::Usage(format!("expected `face:position:edge`, found `{s}`"));
    let parts: Vec<&str> = s.split(':').collect();
    let [f, i, e] = parts.as_slice() else {
        return Err(bad());
    };
    let f = f.trim().parse().map_err(|_| bad())?;
    let i = i.trim().parse().map_err(|_| bad())?;
    let e: i64 = e.trim().parse().map_err(|_| bad())?;
    Ok((f, i, SignedEdge::from_int(e).ok_or_else(bad)?))
}

fn parse_pair(s: &str) -> CliResult<(VertexId, VertexId)> {
    let bad = || CliError::Usage(format!("expected `x,y`, found `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((VertexId(a), VertexId(b)))
}

fn links(c: &Complex) -> CliResult<Outcome> {
    let interior = c.interior_vertices();
    let mut text = String::new();
    let mut js = Vec::new();
    for v in c.vertices() {
        let g = c.link(v)?.graph;
        let inner = interior.contains(&v);
        let name = NamedGraph::identify(&g);
        writeln!(text, "vertex {v} ({})", if inner { "interior" } else { "boundary" }).unwrap();
        writeln!(text, "{g}").unwrap();
        if let Some(n) = name {
            writeln!(text, "name={n}").unwrap();
        }
        js.push(json!({
            "vertex": v.0,
            "interior": inner,
            "graph": graph_json(&g),
            "girth": g.girth(),
            "name": name.map(NamedGraph::name),
        }));
    }
    Ok(Outcome::new(text, json!(js)))
}

fn covers(c: &Complex, out_dir: Option<&Path>, opts: Options) -> CliResult<Outcome> {
    let all = enumerate_double_covers(c);
    let mut text = format!("double covers: {}\n", all.len());
    let mut js = Vec::new();
    if let Some(dir) = out_dir {
        create_dir(dir)?;
    }
    for (i, cover) in all.iter().enumerate() {
        let (complex, map): (Complex, BTreeMap<u32, SignedEdge>) = if opts.canonical {
            let canon = canonical_form(&cover.complex);
            let g = iso::isomorphism(&cover.complex, &canon, None).expect("canonical form is isomorphic");
            let map = cover
                .edge_map
                .iter()
                .map(|(&l, &b)| {
                    let s = g.apply(SignedEdge::forward(l));
                    (s.label(), SignedEdge::new(b, s.is_reversed()))
                })
                .collect();
            (canon, map)
        } else {
            let map = cover.edge_map.iter().map(|(&l, &b)| (l, SignedEdge::forward(b))).collect();
            (cover.complex.clone(), map)
        };
        let support: Vec<u32> = cover.cocycle.0.iter().filter(|(_, &v)| v == 1).map(|(&e, _)| e).collect();
        let support_text: Vec<String> = support.iter().map(u32::to_string).collect();
        writeln!(text, "cover {i}: cocycle support {}", support_text.join(" ")).unwrap();
        writeln!(text, "{complex}").unwrap();
        if let Some(dir) = out_dir {
            let p = out_path(dir, &format!("cover_{i}.cplx"));
            write_text(&p, &format!("{complex}\n"))?;
            let m = out_path(dir, &format!("cover_{i}.map"));
            write_text(&m, &format_edge_map(&map))?;
            writeln!(text, "wrote {} and {}", p.display(), m.display()).unwrap();
        }
        js.push(json!({"cocycle_support": support, "faces": complex.to_ints(), "edge_map": map_json(&map)}));
    }
    Ok(Outcome::new(text, json!(js)))
}

fn collar(c: &Complex) -> CliResult<Outcome> {
    let col = two_vertex_collar(c)?;
    let name = col.classify();
    let mut text = String::new();
    let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let faces: Vec<String> = col.faces.iter().map(usize::to_string).collect();
    writeln!(text, "faces: {}", faces.join(" ")).unwrap();
    writeln!(text, "crossing: {}", list(&col.crossing)).unwrap();
    writeln!(text, "loops: {}", list(&col.loops)).unwrap();
    writeln!(text, "nerve graph:\n{}", col.nerve).unwrap();
    let short = name.and_then(NamedGraph::collar_type);
    match short {
        Some(s) => writeln!(text, "nerve: {s}").unwrap(),
        None => writeln!(text, "nerve: unknown\ncanonical:\n{}", col.nerve.canonical_form()).unwrap(),
    }
    let p = collar_predicates(&col);
    write!(text, "{}", predicate_lines(&p)).unwrap();
    let colors: Vec<String> = col.nerve.colors.iter().map(|c| c.to_string()).collect();
    let js = json!({
        "faces": col.faces,
        "crossing": col.crossing,
        "loops": col.loops,
        "nerve": {"graph": graph_json(&col.nerve.graph), "colors": colors},
        "type": short,
        "predicates": predicates_json(&p),
    });
    Ok(Outcome::new(text, js))
}

fn predicate_lines(p: &cxsurgery::collar::CollarPredicates) -> String {
    format!(
        "thick: {}\nacylindrical: {}\nboundary_injective: {}\ntreeable: {}\nspans_two: {}\n",
        p.thick, p.acylindrical, p.boundary_injective, p.treeable, p.spans_two
    )
}

fn predicates_json(p: &cxsurgery::collar::CollarPredicates) -> Value {
    json!({
        "thick": p.thick,
        "acylindrical": p.acylindrical,
        "boundary_injective": p.boundary_injective,
        "treeable": p.treeable,
        "spans_two": p.spans_two,
    })
}

fn predicates(c: &Complex) -> CliResult<Outcome> {
    let col = two_vertex_collar(c)?;
    let p = collar_predicates(&col);
    let mut text = predicate_lines(&p);
    let cert = h_collar_certificate(&col);
    let show = |r: &[Option<u32>]| -> Vec<String> {
        r.iter().map(|x| x.map_or("-".to_string(), |l| l.to_string())).collect()
    };
    match &cert {
        Some(h) => write!(
            text,
            "h-collar: yes\nretraction-: {}\nretraction+: {}",
            show(&h.retraction_minus).join(" "),
            show(&h.retraction_plus).join(" ")
        )
        .unwrap(),
        None => text.push_str("h-collar: no"),
    }
    let js = json!({
        "predicates": predicates_json(&p),
        "h_collar": cert.map(|h| json!({"retraction_minus": h.retraction_minus, "retraction_plus": h.retraction_plus})),
    });
    Ok(Outcome::new(text, js))
}

fn classify(out_dir: &Path) -> CliResult<Outcome> {
    let run = classify_st()?;
    create_dir(out_dir)?;
    let report: String = run.checkpoints.iter().map(|c| format!("{c}\n")).collect();
    let mut text = report.clone();
    let names = ["cobordism_3_2.toml", "cobordism_2.toml"];
    let mut files = Vec::new();
    for (name, x) in names.iter().zip(&run.cobordisms) {
        let p = out_path(out_dir, name);
        write_text(&p, &x.to_toml())?;
        files.push(p);
    }
    let p = out_path(out_dir, "checkpoints.txt");
    write_text(&p, &report)?;
    files.push(p);
    for p in &files {
        writeln!(text, "wrote {}", p.display()).unwrap();
    }
    let checkpoints: Vec<Value> = run
        .checkpoints
        .iter()
        .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
        .collect();
    let cobs: Vec<Value> = run.cobordisms.iter().map(cobordism_json).collect();
    let js = json!({"pass": run.pass(), "checkpoints": checkpoints, "cobordisms": cobs});
    Ok(Outcome::verdict(text, js, run.pass()))
}

fn st_enum(raw: bool) -> CliResult<Outcome> {
    let mut text = String::new();
    let mut js = Vec::new();
    let mut groups = Vec::new();
    if raw {
        groups.push((2, cubic_multigraphs(2), true));
        groups.push((3, cubic_multigraphs(3), true));
    }
    groups.push((4, st_lemma_enumerate(), false));
    for (n, graphs, excluded) in groups {
        for g in graphs {
            let name = NamedGraph::identify(&g);
            let tag = if excluded { " (excluded: double edge)" } else { "" };
            writeln!(text, "# {n} vertices{tag}\n{g}").unwrap();
            if let Some(name) = name {
                writeln!(text, "name={name}").unwrap();
            }
            js.push(json!({
                "vertices": n,
                "excluded": excluded,
                "graph": graph_json(&g),
                "name": name.map(NamedGraph::name),
            }));
        }
    }
    Ok(Outcome::new(text, json!(js)))
}

fn weights(c: &Complex) -> CliResult<Outcome> {
    let mut text = String::new();
    let mut per_vertex = Vec::new();
    for v in c.vertices() {
        let m = model_geometry(c, v)?;
        writeln!(text, "vertex {v}: total weight {}", m.total_weight()).unwrap();
        for (e, w) in m.weights() {
            writeln!(text, "  edge {e}: weight {w}").unwrap();
        }
        per_vertex.push(json!({"vertex": v.0, "total": m.total_weight(), "weights": m.weights()}));
    }
    let eq = weight_equation_check(c)?;
    write!(
        text,
        "weight equation: faces {} weights {}: {}",
        eq.face_side,
        eq.weight_side,
        if eq.holds() { "holds" } else { "fails" }
    )
    .unwrap();
    let js = json!({
        "vertices": per_vertex,
        "face_side": eq.face_side,
        "weight_side": eq.weight_side,
        "holds": eq.holds(),
    });
    Ok(Outcome::verdict(text, js, eq.holds()))
}
