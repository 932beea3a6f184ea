use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use edgecolor::generate;
use edgecolor::io::{parse_simple_graph, write_simple_graph};
use edgecolor::oracle::{exact_chromatic_index, OracleBudget};
use edgecolor::overfull::DeficiencyView;
use edgecolor::{Multigraph, SimpleGraph};
use edgecolor_cli::{cmd_bench, cmd_generate, BenchOptions, ColorDocument, GenFamily, GenerateParams, VerifyReport};
use tempfile::TempDir;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgecolor")).args(args).output().expect("binary runs")
}

fn write_graph(dir: &Path, name: &str, g: &SimpleGraph) -> String {
    let p = dir.join(name);
    fs::write(&p, write_simple_graph(g)).unwrap();
    p.to_string_lossy().into_owned()
}

fn color_doc(out: &Output) -> ColorDocument {
    serde_json::from_slice(&out.stdout).expect("color prints a JSON document")
}

#[test]
fn k6_is_class_one_with_five_colors() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(dir.path(), "k6.txt", &SimpleGraph::complete(6));
    let out = bin(&["color", &g]);
    assert_eq!(out.status.code(), Some(0));
    let doc = color_doc(&out);
    assert_eq!(doc.report.class, Some(1));
    assert_eq!(doc.report.palette, Some(5));
    assert_eq!(doc.report.status, "ok");
    assert!(doc.report.wall_seconds.is_none());
}

#[test]
fn planted_overfull_order_twelve_uses_one_extra_color() {
    let dir = TempDir::new().unwrap();
    let g = generate::planted_overfull(12, 4).unwrap();
    let delta = g.max_degree() as u32;
    let truth = exact_chromatic_index(&Multigraph::from_simple(&g), &OracleBudget::default()).unwrap();
    assert_eq!(truth.value, delta + 1);

    let path = write_graph(dir.path(), "planted.txt", &g);
    let out = bin(&["color", &path]);
    assert_eq!(out.status.code(), Some(0));
    let doc = color_doc(&out);
    assert_eq!(doc.report.class, Some(2));
    assert_eq!(doc.report.palette, Some(delta + 1));
    assert_eq!(doc.report.trace.route, vec!["overfull".to_string()]);
}

#[test]
fn malformed_line_exits_with_input_error() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.txt");
    fs::write(&p, "p 4 2\ne 0 1\nedge 2 3\n").unwrap();
    let out = bin(&["color", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert!(out.stdout.is_empty());
}

#[test]
fn hypothesis_violations_exit_three() {
    let dir = TempDir::new().unwrap();
    let sparse = write_graph(dir.path(), "c6.txt", &SimpleGraph::cycle(6));
    let out = bin(&["color", &sparse]);
    assert_eq!(out.status.code(), Some(3));
    let doc = color_doc(&out);
    assert_eq!(doc.report.status, "hypothesis");
    assert_eq!(doc.report.error.as_ref().unwrap().step, "hypothesis");
    assert!(doc.coloring.is_none());

    let odd = write_graph(dir.path(), "k5.txt", &SimpleGraph::complete(5));
    assert_eq!(bin(&["color", &odd]).status.code(), Some(3));
    assert_eq!(bin(&["detect-overfull", &odd]).status.code(), Some(3));
}

#[test]
fn color_then_verify_round_trips() {
    let dir = TempDir::new().unwrap();
    let g = generate::regular(24, 16, 9).unwrap();
    let gp = write_graph(dir.path(), "g.txt", &g);
    let doc_path = dir.path().join("doc.json");
    let out = bin(&["color", &gp, "--seed", "5", "--out", doc_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: ColorDocument = serde_json::from_str(&fs::read_to_string(&doc_path).unwrap()).unwrap();

    let out = bin(&["verify", &gp, doc_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: VerifyReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.ok && v.proper && v.complete);
    assert_eq!(Some(v.palette), doc.report.palette);
    assert_eq!(v.palette, 16);
    assert_eq!(v.saturation.perfect_matching_classes, 16);
    assert_eq!(v.class_sizes, vec![12; 16]);

    // The bare text coloring verifies the same way.
    let text = dir.path().join("c.txt");
    fs::write(&text, doc.coloring.unwrap()).unwrap();
    let out = bin(&["verify", &gp, text.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_names_the_conflict_and_rejects_foreign_edges() {
    let dir = TempDir::new().unwrap();
    let gp = write_graph(dir.path(), "p3.txt", &SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap());
    let clash = dir.path().join("clash.txt");
    fs::write(&clash, "c 0 1 0 1\nc 1 2 0 1\nc 2 3 0 2\nk 2\n").unwrap();
    let out = bin(&["verify", &gp, clash.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: VerifyReport = serde_json::from_slice(&out.stdout).unwrap();
    let conflict = v.conflict.unwrap();
    assert_eq!((conflict.vertex, conflict.color), (1, 1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("color 1 appears twice at vertex 1"));

    let foreign = dir.path().join("foreign.txt");
    fs::write(&foreign, "c 0 1 0 1\nc 0 3 0 2\nk 2\n").unwrap();
    assert_eq!(bin(&["verify", &gp, foreign.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_stable() {
    let dir = TempDir::new().unwrap();
    let g = generate::two_light(30, 21, 2, 1).unwrap();
    let gp = write_graph(dir.path(), "g.txt", &g);
    let runs: Vec<Vec<u8>> = (0..3).map(|_| bin(&["color", &gp, "--seed", "11"]).stdout).collect();
    assert!(!runs[0].is_empty());
    assert!(runs.iter().all(|r| *r == runs[0]));
}

#[test]
fn generated_instances_have_the_requested_shape() {
    let dir = TempDir::new().unwrap();
    let recount = |args: &[&str]| -> SimpleGraph {
        let out = bin(args);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        parse_simple_graph(&String::from_utf8(out.stdout).unwrap()).unwrap()
    };

    let g = recount(&["generate", "regular", "40", "--degree", "26", "--seed", "2"]);
    assert_eq!(g.order(), 40);
    assert!(g.vertices().all(|v| g.degree(v) == 26));

    let g = recount(&["generate", "two-light", "40", "--degree", "30", "--deficiency", "3"]);
    let light: Vec<usize> = g.vertices().filter(|&v| g.degree(v) < 30).collect();
    assert_eq!(light.len(), 2);
    assert_eq!(g.degree(light[0]), 27);
    assert_eq!(g.degree(light[1]), 27);
    assert_eq!(g.max_degree(), 30);

    let g = recount(&["generate", "wide-spread", "40", "--light", "8"]);
    let view = DeficiencyView::of(&g);
    assert_eq!(view.v_min.len(), 8);
    assert!(view.v_max.len() > 20);
    assert!(view.min_degree >= 24);

    let out = bin(&["generate", "regular", "40", "--degree", "40"]);
    assert_eq!(out.status.code(), Some(2));

    let corpus = dir.path().join("corpus");
    let out = bin(&["generate", "regular", "20", "--count", "3", "--out-dir", corpus.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_dir(&corpus).unwrap().count(), 3);
}

#[test]
fn bench_of_an_empty_directory_is_empty() {
    let dir = TempDir::new().unwrap();
    let report = cmd_bench(dir.path(), &BenchOptions::default()).unwrap();
    assert_eq!(report.aggregate.instances, 0);
    assert_eq!(report.aggregate.success_rate, None);
    assert!(report.instances.is_empty());
}

#[test]
fn bench_of_a_regular_corpus_is_all_class_one() {
    let dir = TempDir::new().unwrap();
    let params = GenerateParams::default();
    cmd_generate(GenFamily::Regular, 24, &params, 0, Some(100), Some(dir.path())).unwrap();
    let report = cmd_bench(dir.path(), &BenchOptions { jobs: 4, ..Default::default() }).unwrap();
    assert_eq!(report.aggregate.instances, 100);
    assert_eq!(report.aggregate.successes, 100, "{:?}", report.aggregate.failures_by_step);
    assert_eq!(report.aggregate.class_one, 100);
    assert_eq!(report.aggregate.class_two, 0);
}

#[test]
fn bench_class_two_count_matches_the_planted_instances() {
    let dir = TempDir::new().unwrap();
    let params = GenerateParams::default();
    cmd_generate(GenFamily::PlantedOverfull, 20, &params, 0, Some(7), Some(dir.path())).unwrap();
    cmd_generate(GenFamily::Regular, 20, &params, 0, Some(5), Some(dir.path())).unwrap();
    cmd_generate(GenFamily::TwoLight, 20, &params, 0, Some(5), Some(dir.path())).unwrap();
    fs::write(dir.path().join("broken.txt"), "p 2\n").unwrap();

    let single = cmd_bench(dir.path(), &BenchOptions { jobs: 1, ..Default::default() }).unwrap();
    assert_eq!(single.aggregate.instances, 18);
    assert_eq!(single.aggregate.class_two, 7);
    assert_eq!(single.aggregate.input_errors, 1);
    assert_eq!(single.aggregate.successes, 17);

    let parallel = cmd_bench(dir.path(), &BenchOptions { jobs: 4, ..Default::default() }).unwrap();
    assert_eq!(edgecolor_cli::to_json(&single), edgecolor_cli::to_json(&parallel));
}

#[test]
fn bench_timing_is_opt_in() {
    let dir = TempDir::new().unwrap();
    cmd_generate(GenFamily::Regular, 20, &GenerateParams::default(), 0, Some(4), Some(dir.path())).unwrap();
    let plain = cmd_bench(dir.path(), &BenchOptions::default()).unwrap();
    assert!(plain.aggregate.wall_seconds.is_none());
    let timed = cmd_bench(dir.path(), &BenchOptions { timing: true, ..Default::default() }).unwrap();
    let p = timed.aggregate.wall_seconds.unwrap();
    assert!(p.p50 <= p.p90 && p.p90 <= p.max);
}

#[test]
fn oracle_agrees_with_the_driver_on_a_small_instance() {
    let dir = TempDir::new().unwrap();
    let g = generate::random_dense(10, 0.8, 3).unwrap();
    let gp = write_graph(dir.path(), "g.txt", &g);
    let out = bin(&["oracle", &gp]);
    assert_eq!(out.status.code(), Some(0));
    let r: edgecolor_cli::OracleReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.agree, Some(true));

    let big = write_graph(dir.path(), "big.txt", &SimpleGraph::complete(16));
    assert_eq!(bin(&["oracle", &big]).status.code(), Some(2));
}
