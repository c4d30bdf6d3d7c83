//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use reeb_bench::{connected_multigraphs, genus_two, random_decoration, random_field, rng, surfaces};
use reeb_core::mesh::io::{write_field, write_off};
use reeb_core::mesh::{euler_characteristic, grid_torus, octahedron, signature};
use reeb_core::rational::from_int;
use reeb_core::realize::{realize, realize_on_surface, verify_realization, DecoratedGraph, RealizeOptions};
use reeb_core::reeb::{betti1, graph_isomorphic, interval_components, level_components, IsoMode};
use reeb_core::{
    compute_reeb_graph, sampled_reeb_oracle, Multigraph, RealizeError, Rational, ScalarField, SimplicialSurface,
    SurfaceSignature,
};

const FIELDS_PER_SURFACE: u64 = 50;
const RANDOM_DECORATIONS: u64 = 25;

struct Outcome {
    checked: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { checked: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn field_corpus() -> Vec<(String, SimplicialSurface, ScalarField)> {
    let mut out = Vec::new();
    for (s, (name, mesh)) in surfaces().into_iter().enumerate() {
        let mut r = rng(1000 + s as u64);
        for i in 0..FIELDS_PER_SURFACE {
            out.push((format!("{name} #{i}"), mesh.clone(), random_field(&mesh, &mut r)));
        }
    }
    out
}

fn sweep_matches_oracle(corpus: &[(String, SimplicialSurface, ScalarField)]) -> Outcome {
    let mut o = Outcome::new();
    for (name, mesh, field) in corpus {
        let g = compute_reeb_graph(mesh, field).unwrap();
        o.check(!g.skeleton().has_loop(), || format!("{name}: loop edge"));
        o.check(g.check_invariants().is_ok(), || format!("{name}: {:?}", g.check_invariants()));
        o.check(
            g.edges.iter().all(|e| g.nodes[e.ends[0]].level < g.nodes[e.ends[1]].level),
            || format!("{name}: non-monotone edge"),
        );
        for k in [1, 2, 5] {
            let oracle = sampled_reeb_oracle(mesh, field, k).unwrap();
            o.check(
                graph_isomorphic(&g.skeleton(), &oracle.skeleton(), IsoMode::LevelPreserving).is_some(),
                || format!("{name}: sweep ({}, {}) vs oracle k={k} ({}, {})", g.node_count(), g.edge_count(), oracle.node_count(), oracle.edge_count()),
            );
        }
    }
    o
}

/// Components of the slab on one side of a critical value that reach across
/// it, against the level components on the far side.
fn component_bound(corpus: &[(String, SimplicialSurface, ScalarField)]) -> Outcome {
    let mut o = Outcome::new();
    for (name, mesh, field) in corpus {
        let values = field.distinct_values();
        let g = compute_reeb_graph(mesh, field).unwrap();
        let mut critical: Vec<Rational> = g.nodes.iter().map(|n| n.level.clone()).collect();
        critical.dedup();
        for c in &critical {
            let i = values.binary_search(c).expect("critical levels are vertex values");
            let up = values.get(i + 1).map_or_else(|| from_int(1), |next| (next - c) / from_int(2));
            let down = if i > 0 { (c - &values[i - 1]) / from_int(2) } else { from_int(1) };
            for (a, b, far) in [(c.clone(), c + &up, c + &up), (c - &down, c.clone(), c - &down)] {
                let slab = interval_components(mesh, field, &a, &b).unwrap();
                let crossing = slab.iter().filter(|s| !s.lower.is_empty() && !s.upper.is_empty()).count();
                let beyond = level_components(mesh, field, &far).len();
                o.check(crossing <= beyond, || format!("{name}: [{a}, {b}] has {crossing} crossing components, level {far} has {beyond}"));
            }
        }
    }
    o
}

struct RoundTrip {
    verified: Outcome,
    euler: Outcome,
    genus: Outcome,
}

fn round_trip(graphs: &[Multigraph]) -> RoundTrip {
    let mut rt = RoundTrip { verified: Outcome::new(), euler: Outcome::new(), genus: Outcome::new() };
    let mut r = rng(42);
    let planar: Vec<(DecoratedGraph, bool)> = graphs.iter().map(|g| (DecoratedGraph::planar(g), true)).collect();
    let random: Vec<(DecoratedGraph, bool)> =
        (0..RANDOM_DECORATIONS).map(|_| (random_decoration(graphs, &mut r), false)).collect();
    for (k, (dg, is_planar)) in planar.iter().chain(&random).enumerate() {
        let out = match realize(dg, &RealizeOptions::default()) {
            Ok(out) => out,
            Err(e) => {
                rt.verified.check(false, || format!("decoration {k}: {e}"));
                continue;
            }
        };
        let result = verify_realization(dg, &out);
        rt.verified.check(result.is_ok(), || match result {
            Err(RealizeError::VerificationFailed { report, .. }) => format!("decoration {k}: {:?}", report.failures),
            Err(e) => format!("decoration {k}: {e}"),
            Ok(_) => unreachable!(),
        });
        let expected: i64 = dg.vertices.iter().map(|v| v.gamma.euler_char).sum();
        let chi = euler_characteristic(&out.mesh);
        rt.euler.check(chi == expected, || format!("decoration {k}: chi {chi}, expected {expected}"));
        if *is_planar {
            let b1 = betti1(&dg.graph());
            let sig = signature(&out.mesh).unwrap();
            rt.genus.check(sig == SurfaceSignature::orientable(b1 as u32, 0), || format!("decoration {k}: {sig}, betti1 {b1}"));
        }
    }
    rt
}

fn genus_budget(graphs: &[Multigraph]) -> Outcome {
    let mut o = Outcome::new();
    let options = RealizeOptions::default();
    for (k, g) in graphs.iter().enumerate() {
        let b1 = betti1(g) as i64;
        for genus in b1..=b1 + 2 {
            let sig = realize_on_surface(g, genus, &options).map(|out| signature(&out.mesh).unwrap());
            o.check(
                matches!(&sig, Ok(s) if *s == SurfaceSignature::orientable(genus as u32, 0)),
                || format!("graph {k}, genus {genus}: {sig:?}"),
            );
        }
        let low = realize_on_surface(g, b1 - 1, &options);
        o.check(
            matches!(low, Err(RealizeError::GenusTooSmall { .. })),
            || format!("graph {k}, genus {}: accepted", b1 - 1),
        );
    }
    o
}

fn betti_bound() -> Outcome {
    let mut o = Outcome::new();
    for (name, mesh, bound, seed) in [("torus", grid_torus(8, 6).mesh, 1, 7), ("genus 2", genus_two(), 2, 8)] {
        let mut r = rng(seed);
        for i in 0..100 {
            let field = random_field(&mesh, &mut r);
            let b1 = compute_reeb_graph(&mesh, &field).unwrap().betti1();
            o.check(b1 <= bound, || format!("{name} #{i}: betti1 {b1} > {bound}"));
        }
    }
    o
}

fn fixtures() -> Outcome {
    let mut o = Outcome::new();
    let z = ScalarField::from_integers([0, 0, 0, 0, 1, -1]);
    let path = compute_reeb_graph(&octahedron(), &z).unwrap();
    o.check(
        (path.node_count(), path.edge_count()) == (2, 1) && path.edges[0].ends == [0, 1],
        || format!("octahedron: {} nodes, {} edges", path.node_count(), path.edge_count()),
    );
    for (name, mesh) in surfaces() {
        let flat = ScalarField::constant(mesh.vertex_count(), from_int(3));
        let g = compute_reeb_graph(&mesh, &flat).unwrap();
        o.check((g.node_count(), g.edge_count()) == (1, 0), || format!("constant on {name}: {} nodes", g.node_count()));
    }
    let torus = grid_torus(8, 6);
    let g = compute_reeb_graph(&torus.mesh, &torus.height).unwrap();
    let ends: Vec<[usize; 2]> = g.edges.iter().map(|e| e.ends).collect();
    let levels: Vec<Rational> = g.nodes.iter().map(|n| n.level.clone()).collect();
    o.check(
        ends == [[0, 1], [1, 2], [1, 2], [2, 3]]
            && levels == [-3, -1, 1, 3].map(from_int)
            && g.betti1() == 1,
        || format!("torus: ends {ends:?}, levels {levels:?}"),
    );
    o
}

fn run_twice(args: &[&str], dir: &Path, outputs: &[&str], o: &mut Outcome) {
    let bin = env!("CARGO_BIN_EXE_reeb");
    let mut runs = Vec::new();
    for _ in 0..2 {
        let out = Command::new(bin).args(args).current_dir(dir).output().expect("binary runs");
        let files: Vec<Vec<u8>> = outputs.iter().map(|f| std::fs::read(dir.join(f)).unwrap_or_default()).collect();
        runs.push((out.status.code(), out.stdout, files));
    }
    o.check(runs[0] == runs[1], || format!("reeb {}: outputs differ between runs", args.join(" ")));
    o.check(runs[0].0 == Some(0), || format!("reeb {}: exit {:?}", args.join(" "), runs[0].0));
}

fn determinism() -> Outcome {
    let mut o = Outcome::new();
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let theta = DecoratedGraph::planar(&Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)]));
    std::fs::write(d.join("theta.json"), theta.to_json()).unwrap();
    let torus = grid_torus(8, 6);
    std::fs::write(d.join("torus.off"), write_off(&torus.mesh.to_soup())).unwrap();
    std::fs::write(d.join("torus.txt"), write_field(&torus.height)).unwrap();

    run_twice(&["info", "--mesh", "torus.off"], d, &[], &mut o);
    run_twice(
        &["compute", "--mesh", "torus.off", "--field", "torus.txt", "--out", "g.json", "--dot", "g.dot", "--oracle", "3"],
        d,
        &["g.json", "g.dot"],
        &mut o,
    );
    run_twice(
        &["realize", "--graph", "theta.json", "--out-mesh", "m.off", "--out-field", "f.txt", "--out-correspondence", "c.json"],
        d,
        &["m.off", "f.txt", "c.json"],
        &mut o,
    );
    run_twice(&["realize", "--graph", "theta.json", "--out-mesh", "s.off", "--out-field", "s.txt", "--genus", "3"], d, &["s.off", "s.txt"], &mut o);
    run_twice(&["verify", "--graph", "theta.json"], d, &[], &mut o);
    run_twice(
        &["verify", "--graph", "theta.json", "--mesh", "m.off", "--field", "f.txt", "--correspondence", "c.json"],
        d,
        &[],
        &mut o,
    );
    run_twice(&["compute", "--mesh", "m.off", "--field", "f.txt", "--out", "r.json"], d, &["r.json"], &mut o);
    o
}

fn report(number: usize, title: &str, o: &Outcome, started: Instant) -> bool {
    let ok = o.failures.is_empty() && o.checked > 0;
    println!(
        "{} criterion {number}: {title} ({} checks, {} failures, {:.1}s)",
        if ok { "PASS" } else { "FAIL" },
        o.checked,
        o.failures.len(),
        started.elapsed().as_secs_f64()
    );
    for f in o.failures.iter().take(5) {
        println!("    {f}");
    }
    ok
}

fn main() -> ExitCode {
    let mut all = true;

    let corpus = field_corpus();
    let t = Instant::now();
    all &= report(1, "sweep has no loops, monotone edges, and matches the sampling oracle for k = 1, 2, 5", &sweep_matches_oracle(&corpus), t);
    let t = Instant::now();
    all &= report(2, "slab components crossing a critical level never outnumber the level components beyond it", &component_bound(&corpus), t);

    let graphs = connected_multigraphs(5, 8);
    let t = Instant::now();
    let rt = round_trip(&graphs);
    all &= report(3, &format!("realize then verify on {} graphs and {RANDOM_DECORATIONS} random decorations", graphs.len()), &rt.verified, t);
    all &= report(4, "Euler characteristic of every realization is the sum over its blocks", &rt.euler, t);
    all &= report(5, "planar decorations realize the closed orientable surface of genus betti1", &rt.genus, t);
    let t = Instant::now();
    all &= report(6, "realize_on_surface hits genus betti1 .. betti1 + 2 and rejects betti1 - 1", &genus_budget(&graphs), t);
    let t = Instant::now();
    all &= report(7, "betti1 of the Reeb graph stays within the surface genus", &betti_bound(), t);
    let t = Instant::now();
    all &= report(8, "canonical fixtures: octahedron path, constant field, standing torus", &fixtures(), t);
    let t = Instant::now();
    all &= report(9, "every CLI pipeline is byte-identical across runs", &determinism(), t);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
