//! Acceptance suite. Prints one PASS/FAIL line per criterion; run with
//! `cargo test -p phrecon-cli --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use phrecon::compare::{compare_graphs, match_vertices};
use phrecon::vertex_recon::third_direction_from_gaps;
use phrecon::{
    connected_components, enumerate_compatible_graphs, indegree_direct, indegree_from_diagrams,
    lower_star_diagrams, match_and_intersect, random_plane_graph, reconstruct_edges,
    reconstruct_graph, reconstruct_vertices, third_direction, triple_intersections, DiagramOracle,
    Direction, Execution, LineFamily, PlaneGraph, Point2,
};

const TOL: f64 = 1e-9;
const SEEDS: u64 = 100;
const DENSITIES: [f64; 3] = [0.0, 0.5, 1.0];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

struct Instance {
    seed: u64,
    n: usize,
    density: f64,
    graph: PlaneGraph,
}

fn corpus(max_n: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for seed in 0..SEEDS {
        for n in 1..=max_n {
            for density in DENSITIES {
                let graph = random_plane_graph(n, density, seed).expect("generator");
                out.push(Instance {
                    seed,
                    n,
                    density,
                    graph,
                });
            }
        }
    }
    out
}

fn label(i: &Instance) -> String {
    format!("seed={} n={} density={}", i.seed, i.n, i.density)
}

fn worked_example() -> PlaneGraph {
    PlaneGraph::from_json(
        r#"{"vertices":[[0.25,0.0],[1.0,1.0],[-1.0,2.0],[0.0,-1.0]],"edges":[[0,1],[0,3],[1,3],[1,2]]}"#,
    )
    .unwrap()
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    let instances = corpus(12);
    let mut worst = 0.0f64;
    for inst in &instances {
        let o = DiagramOracle::new(inst.graph.clone());
        let r = reconstruct_graph(&o, Execution::default())
            .map_err(|e| format!("{}: {e}", label(inst)))?;
        let cmp = compare_graphs(&inst.graph, &r.graph, 1e-6);
        if !cmp.is_equal() {
            return Err(format!("{}: {cmp:?}", label(inst)));
        }
        worst = worst.max(cmp.max_vertex_error);
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(10) {
        return Err(format!("{} instances took {elapsed:.2?}", instances.len()));
    }
    Ok(format!(
        "{} instances exact, max vertex error {worst:.1e}, {elapsed:.2?}",
        instances.len()
    ))
}

fn query_budgets() -> Outcome {
    let instances = corpus(12);
    let mut max_edge_ratio = 0.0f64;
    for inst in &instances {
        let o = DiagramOracle::new(inst.graph.clone());
        let r = reconstruct_graph(&o, Execution::default())
            .map_err(|e| format!("{}: {e}", label(inst)))?;
        let budget = inst.n * (inst.n - 1);
        if r.vertex_queries != 3 || r.edge_queries > budget || r.retries != 0 {
            return Err(format!(
                "{}: vertex {} edge {} (budget {budget}) retries {}",
                label(inst),
                r.vertex_queries,
                r.edge_queries,
                r.retries
            ));
        }
        if budget > 0 {
            max_edge_ratio = max_edge_ratio.max(r.edge_queries as f64 / budget as f64);
        }
    }
    Ok(format!(
        "{} instances: 3 vertex queries, edge queries <= n(n-1) (max ratio {max_edge_ratio}), 0 retries",
        instances.len()
    ))
}

fn worked_example_third_direction() -> Outcome {
    let expected = (-1.0 / 17f64.sqrt(), 4.0 / 17f64.sqrt());
    let close = |s: Direction| {
        let plus = (s.dx() - expected.0).abs().max((s.dy() - expected.1).abs());
        let minus = (s.dx() + expected.0).abs().max((s.dy() + expected.1).abs());
        plus.min(minus)
    };
    let from_gaps = third_direction_from_gaps(2.0, 1.0).map_err(|e| e.to_string())?;
    let g = worked_example();
    let f1 = LineFamily::from_points(g.vertices(), Direction::X, TOL).map_err(|e| e.to_string())?;
    let f2 = LineFamily::from_points(g.vertices(), Direction::Y, TOL).map_err(|e| e.to_string())?;
    let from_families = third_direction(&f1, &f2).map_err(|e| e.to_string())?;
    let o = DiagramOracle::new(g);
    reconstruct_vertices(&o).map_err(|e| e.to_string())?;
    let queried = o.query_log()[2];
    let err = close(from_gaps)
        .max(close(from_families))
        .max(close(queried));
    if err > 1e-12 {
        return Err(format!("s3 = {queried}, error {err:e}"));
    }
    Ok(format!(
        "s3 = ({:.15}, {:.15}), error {err:.1e}",
        queried.dx(),
        queried.dy()
    ))
}

fn indegree_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1dea);
    let mut checked = 0;
    let mut total_indegree = 0;
    while checked < 1000 {
        let n = rng.random_range(2..=12);
        let density = rng.random_range(0.0..=1.0);
        let g = random_plane_graph(n, density, rng.random()).map_err(|e| e.to_string())?;
        let s = Direction::from_angle(rng.random_range(0.0..std::f64::consts::TAU)).normalized();
        let mut h: Vec<f64> = g
            .vertices()
            .iter()
            .map(|p| phrecon::height(*p, s))
            .collect();
        h.sort_by(f64::total_cmp);
        if h.windows(2).any(|w| w[1] - w[0] <= 1e3 * TOL) {
            continue;
        }
        let v = rng.random_range(0..n);
        let d = lower_star_diagrams(&g, s, TOL).map_err(|e| e.to_string())?;
        let from_diagrams = indegree_from_diagrams(&d, g.vertices()[v], TOL);
        let direct = indegree_direct(&g, v, s).map_err(|e| e.to_string())?;
        if from_diagrams != direct {
            return Err(format!(
                "{} vs {direct} at vertex {v}, s={s}, graph {}",
                from_diagrams,
                g.to_json()
            ));
        }
        total_indegree += direct;
        checked += 1;
    }
    Ok(format!(
        "{checked} triples equal (sum of indegrees {total_indegree})"
    ))
}

fn diagram_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1a6);
    let mut checked = 0;
    for inst in corpus(12) {
        let g = &inst.graph;
        let (n, e, c) = (g.vertex_count(), g.edge_count(), connected_components(g));
        let mut directions = vec![Direction::X, Direction::Y];
        directions.extend(
            (0..4).map(|_| Direction::from_angle(rng.random_range(0.0..std::f64::consts::TAU))),
        );
        for s in directions {
            let d = match lower_star_diagrams(g, s, TOL) {
                Ok(d) => d,
                Err(phrecon::Error::DegenerateDirection(..)) => continue,
                Err(err) => return Err(format!("{}: {err}", label(&inst))),
            };
            let ok = d.dim0.len() == n
                && d.essential0() == c
                && d.dim1.len() + n == e + c
                && d.finite_deaths0() + d.dim1.len() == e;
            if !ok {
                return Err(format!("{} s={s}: {}", label(&inst), d.to_json()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} diagrams satisfy all four counts"))
}

fn vertex_oracle_equivalence() -> Outcome {
    let instances = corpus(12);
    for inst in &instances {
        let v = inst.graph.vertices();
        let fam = |s| LineFamily::from_points(v, s, TOL).map_err(|e| e.to_string());
        let (f1, f2) = (fam(Direction::X)?, fam(Direction::Y)?);
        let f3 = fam(third_direction(&f1, &f2).map_err(|e| e.to_string())?)?;
        let fast = match_and_intersect(&f2, &f3, &f1.line(0)).map_err(|e| e.to_string())?;
        let slow = triple_intersections(&f1, &f2, &f3, TOL);
        let paired = match_vertices(&fast, &slow, TOL);
        if fast.len() != slow.len() || paired.iter().any(Option::is_none) {
            return Err(format!("{}: fast {fast:?} slow {slow:?}", label(inst)));
        }
    }
    Ok(format!(
        "{} instances give the same point set",
        instances.len()
    ))
}

fn enumerator_soundness() -> Outcome {
    let instances = corpus(5);
    let mut enumerations = 0;
    for inst in &instances {
        let g = &inst.graph;
        let truth: Vec<_> = g.edge_set().into_iter().collect();
        let o = DiagramOracle::new(g.clone());
        let vertices = reconstruct_vertices(&o).map_err(|e| e.to_string())?;
        let edges = reconstruct_edges(&o, &vertices).map_err(|e| e.to_string())?;
        let rebuilt = PlaneGraph::new(vertices, edges.edges).map_err(|e| e.to_string())?;
        if !compare_graphs(g, &rebuilt, 1e-6).is_equal() {
            return Err(format!("{}: reconstructed edges differ", label(inst)));
        }
        let mut common: Option<BTreeSet<Vec<(usize, usize)>>> = None;
        for s in o.query_log() {
            let d = o.query(s).map_err(|e| e.to_string())?;
            let rows =
                enumerate_compatible_graphs(g.vertices(), s, &d, TOL).map_err(|e| e.to_string())?;
            enumerations += 1;
            if !rows.contains(&truth) {
                return Err(format!(
                    "{} s={s}: hidden edge set not enumerated",
                    label(inst)
                ));
            }
            let rows: BTreeSet<_> = rows.into_iter().collect();
            common = Some(match common {
                None => rows,
                Some(acc) => acc.intersection(&rows).cloned().collect(),
            });
        }
        if common.is_some_and(|c| !c.contains(&truth)) {
            return Err(format!(
                "{}: hidden edge set dropped by intersection",
                label(inst)
            ));
        }
    }
    Ok(format!(
        "{} instances with n <= 5, {enumerations} enumerations all contain the hidden edge set",
        instances.len()
    ))
}

fn synthetic_points(n: usize, seed: u64) -> Vec<Point2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<usize> = (0..n).collect();
    let mut ys = xs.clone();
    xs.shuffle(&mut rng);
    ys.shuffle(&mut rng);
    let scale = n as f64;
    xs.iter()
        .zip(&ys)
        .map(|(&x, &y)| Point2::new((x as f64 + 0.5) / scale, (y as f64 + 0.5) / scale))
        .collect()
}

fn time_vertex_phase(points: &[Point2]) -> Result<(Duration, f64), String> {
    let o = DiagramOracle::new(PlaneGraph::edgeless(points.to_vec()));
    let start = Instant::now();
    let recovered = reconstruct_vertices(&o).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let paired = match_vertices(points, &recovered, 1e-6);
    if recovered.len() != points.len() || paired.iter().any(Option::is_none) {
        return Err(format!(
            "n={}: vertices not recovered within 1e-6",
            points.len()
        ));
    }
    let err = paired
        .iter()
        .enumerate()
        .map(|(i, j)| points[i].max_abs_diff(&recovered[j.unwrap()]))
        .fold(0.0, f64::max);
    Ok((elapsed, err))
}

fn scaling() -> Outcome {
    let sizes = [1_000, 10_000, 100_000];
    let mut best = Vec::new();
    let mut largest_worst = Duration::ZERO;
    let mut worst_err = 0.0f64;
    for &n in &sizes {
        let points = synthetic_points(n, n as u64);
        let mut runs = Vec::new();
        for _ in 0..3 {
            let (t, err) = time_vertex_phase(&points)?;
            worst_err = worst_err.max(err);
            runs.push(t);
        }
        if n == 100_000 {
            largest_worst = *runs.iter().max().unwrap();
        }
        best.push(*runs.iter().min().unwrap());
    }
    let ratios: Vec<f64> = best
        .windows(2)
        .map(|w| w[1].as_secs_f64() / w[0].as_secs_f64().max(1e-9))
        .collect();
    let summary = format!(
        "best times {:.2?}, ratios {:.1?}, slowest n=100000 run {largest_worst:.2?}, max error {worst_err:.1e}",
        best, ratios
    );
    if largest_worst >= Duration::from_secs(5) || ratios.iter().any(|&r| r >= 25.0) {
        return Err(summary);
    }
    Ok(summary)
}

fn run_pipeline(dir: &Path) -> Result<(), String> {
    let bin = env!("CARGO_BIN_EXE_phrecon");
    let p = |name: &str| dir.join(name).to_str().unwrap().to_string();
    let steps: [Vec<String>; 3] = [
        ["gen", "--n", "10", "--density", "0.7", "--seed", "42", "-o"]
            .iter()
            .map(|s| s.to_string())
            .chain([p("g.json")])
            .collect(),
        vec![
            "reconstruct".into(),
            p("g.json"),
            "-o".into(),
            p("r.json"),
            "--report".into(),
            p("report.json"),
        ],
        vec![
            "render".into(),
            p("r.json"),
            "--lines".into(),
            "--bowtie".into(),
            "0,1".into(),
            "-o".into(),
            p("r.svg"),
        ],
    ];
    for args in steps {
        let out = Command::new(bin)
            .args(&args)
            .env_remove("PHRECON_TOLERANCE")
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!(
                "{args:?}: {}",
                String::from_utf8_lossy(&out.stderr)
            ));
        }
    }
    Ok(())
}

fn determinism() -> Outcome {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run_pipeline(a.path())?;
    run_pipeline(b.path())?;
    for name in ["g.json", "r.json", "r.svg"] {
        let (x, y) = (
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap(),
        );
        if x != y {
            return Err(format!("{name} differs between runs"));
        }
    }
    let report = |dir: &Path| -> serde_json::Value {
        let mut v: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    if report(a.path()) != report(b.path()) {
        return Err("report.json differs beyond wall_time_ms".into());
    }
    Ok(
        "g.json, r.json, r.svg byte-identical; report.json identical apart from wall_time_ms"
            .into(),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("round-trip exactness", round_trip),
        ("query budgets", query_budgets),
        (
            "worked example third direction",
            worked_example_third_direction,
        ),
        ("indegree equivalence", indegree_equivalence),
        ("diagram invariants", diagram_invariants),
        ("vertex-oracle equivalence", vertex_oracle_equivalence),
        ("enumerator soundness", enumerator_soundness),
        ("scaling sanity", scaling),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", k + 1),
            Err(detail) => {
                println!("FAIL {} {name}: {detail}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
