//! Acceptance run: one PASS/FAIL line per criterion, followed by indented
//! detail lines. Exits nonzero when any criterion fails.

#[path = "../../core/tests/invariants/mod.rs"]
#[allow(dead_code)]
mod invariants;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use edgecolor::coloring::parity_check;
use edgecolor::driver::{chi_prime_dense, ReductionStep, ReductionTrace};
use edgecolor::generate;
use edgecolor::io::{write_coloring, write_simple_graph};
use edgecolor::oracle::{exact_chromatic_index, exhaustive_overfull_scan, OracleBudget};
use edgecolor::overfull::{detect, DeficiencyView, OverfullStatus};
use edgecolor::profile::{ConstantsProfile, ProfileName};
use edgecolor::{Multigraph, SimpleGraph, VertexId};
use edgecolor_cli::{color_graph, to_json, verify_coloring, ColorOptions};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Pinned tolerances.
const C1_INSTANCES: usize = 500;
const C1_ORDERS: [usize; 4] = [8, 10, 12, 14];
const C1_TIME_LIMIT: Duration = Duration::from_secs(60);
const C1_EPSILON: f64 = 0.1;
const C2_INSTANCES: usize = 500;
const C3_INSTANCES: usize = 200;
const C3_ORDERS: [usize; 3] = [40, 60, 100];
const C3_MIN_RATE: f64 = 0.95;
const C3_TIME_LIMIT: Duration = Duration::from_secs(5);
const C3_EPSILON: f64 = 0.2;
const C4_ORDERS: [usize; 3] = [20, 40, 80];
const C4_SEEDS: u64 = 5;
const C5_CASES: u32 = 10_000;
const C5_ORACLE_CASES: u32 = 2_000;
const C6_CASE2_PER_ORDER: usize = 20;
const C7_REPEATS: usize = 3;

struct Verdict {
    pass: bool,
    details: Vec<String>,
}

fn report(name: &str, v: &Verdict) {
    println!("{} {name}", if v.pass { "PASS" } else { "FAIL" });
    for d in &v.details {
        println!("    {d}");
    }
}

fn desk() -> ConstantsProfile {
    ConstantsProfile::named(ProfileName::Desk)
}

/// Recounts a coloring file against `g` without going through the
/// library's parser or validator. Returns the class sizes.
fn independent_check(g: &SimpleGraph, text: &str, palette: u32) -> Result<Vec<usize>, String> {
    let mut color_of: HashMap<(VertexId, VertexId), u32> = HashMap::new();
    let mut declared = None;
    for line in text.lines() {
        let f: Vec<&str> = line.split_whitespace().collect();
        match f.as_slice() {
            ["c", u, v, copy, c] => {
                let (u, v, copy, c): (usize, usize, u32, u32) =
                    (u.parse().unwrap(), v.parse().unwrap(), copy.parse().unwrap(), c.parse().unwrap());
                if copy != 0 {
                    return Err(format!("simple graph edge {u}-{v} has copy {copy}"));
                }
                if color_of.insert((u.min(v), u.max(v)), c).is_some() {
                    return Err(format!("edge {u}-{v} listed twice"));
                }
            }
            ["k", k] => declared = Some(k.parse::<u32>().unwrap()),
            [] => {}
            _ => return Err(format!("unexpected line `{line}`")),
        }
    }
    if declared != Some(palette) {
        return Err(format!("declared palette {declared:?}, expected {palette}"));
    }
    if color_of.len() != g.edge_count() {
        return Err(format!("{} colored edges, graph has {}", color_of.len(), g.edge_count()));
    }
    let mut seen: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); g.universe()];
    let mut sizes = vec![0usize; palette as usize];
    for (u, v) in g.edges() {
        let &c = color_of.get(&(u.min(v), u.max(v))).ok_or_else(|| format!("edge {u}-{v} uncolored"))?;
        if c == 0 || c > palette {
            return Err(format!("edge {u}-{v} has color {c} outside [1, {palette}]"));
        }
        for w in [u, v] {
            if !seen[w].insert(c) {
                return Err(format!("color {c} repeats at vertex {w}"));
            }
        }
        sizes[c as usize - 1] += 1;
    }
    Ok(sizes)
}

fn dense_floor(n: usize) -> usize {
    (1.2 * n as f64 - 1e-9).ceil() as usize
}

// ---------------------------------------------------------------------------
// Small instances for the oracle comparisons.

fn small_instance(i: usize, order: usize) -> SimpleGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0000 + i as u64);
    for attempt in 0u64.. {
        let seed = i as u64 * 1000 + attempt;
        let g = match (i + attempt as usize) % 6 {
            0 => generate::planted_overfull(order.max(10), seed),
            1 => generate::random_dense(order, 0.7, seed),
            2 => generate::random_dense(order, 0.8, seed),
            3 => generate::random_dense(order, 0.9, seed),
            4 => generate::regular(order, rng.gen_range(order / 2 + 1..order), seed),
            _ => generate::two_light(order, order - 2, 1, seed),
        };
        if let Ok(g) = g {
            if g.order() == order && 2 * g.min_degree() > order {
                return g;
            }
        }
    }
    unreachable!()
}

fn criterion1() -> Verdict {
    let start = Instant::now();
    let (mut agree, mut class_two, mut colored, mut bad_colorings) = (0, 0, 0, 0);
    let mut details = Vec::new();
    for i in 0..C1_INSTANCES {
        let order = C1_ORDERS[i % C1_ORDERS.len()];
        let g = small_instance(i, order);
        let truth = match exact_chromatic_index(&Multigraph::from_simple(&g), &OracleBudget::default()) {
            Ok(ci) => if ci.value as usize == g.max_degree() { 1 } else { 2 },
            Err(e) => {
                details.push(format!("instance {i}: oracle failed: {e}"));
                continue;
            }
        };
        let driver = match chi_prime_dense(&g, C1_EPSILON, &desk(), i as u64) {
            Ok(out) => {
                colored += 1;
                let text = write_coloring(&out.graph, &out.coloring);
                let palette = g.max_degree() as u32 + out.class.number() as u32 - 1;
                if independent_check(&g, &text, palette).is_err() {
                    bad_colorings += 1;
                }
                Some(out.class.number())
            }
            Err(f) => f.class.map(|c| c.number()),
        };
        class_two += (truth == 2) as usize;
        if driver == Some(truth) {
            agree += 1;
        } else if details.len() < 10 {
            details.push(format!("instance {i} (order {order}): oracle class {truth}, driver {driver:?}"));
        }
    }
    let elapsed = start.elapsed();
    details.insert(
        0,
        format!(
            "{agree}/{C1_INSTANCES} verdicts agree ({class_two} class 2), {colored} colorings built, {bad_colorings} invalid, {:.2} s (limit {} s)",
            elapsed.as_secs_f64(),
            C1_TIME_LIMIT.as_secs()
        ),
    );
    Verdict { pass: agree == C1_INSTANCES && bad_colorings == 0 && elapsed < C1_TIME_LIMIT, details }
}

fn edges_within(g: &SimpleGraph, s: &[VertexId]) -> usize {
    let mut m = 0;
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            m += g.has_edge(u, v) as usize;
        }
    }
    m
}

fn criterion2() -> Verdict {
    let budget = OracleBudget::default();
    let (mut agree, mut overfull, mut full) = (0, 0, 0);
    let mut details = Vec::new();
    for i in 0..C2_INSTANCES {
        let order = C1_ORDERS[(i / 3) % C1_ORDERS.len()];
        let g = small_instance(C1_INSTANCES + i, order);
        let delta = g.max_degree();
        let view = DeficiencyView::of(&g);
        let witnesses = exhaustive_overfull_scan(&g, delta, &budget).expect("small instance");
        let verdict = detect(&g).expect("dense even-order instance");
        let everyone: Vec<VertexId> = g.vertices().collect();
        let minus = |v: VertexId| -> Vec<VertexId> { everyone.iter().copied().filter(|&w| w != v).collect() };
        let ok = match verdict.status {
            OverfullStatus::OverfullFound => {
                overfull += 1;
                let w = verdict.witness.unwrap();
                let big = witnesses.iter().any(|s| s.len() == order - 1 && view.v_min.iter().any(|&v| *s == minus(v)));
                !witnesses.is_empty() && witnesses.contains(&minus(w)) && view.v_min.contains(&w) && big
            }
            OverfullStatus::FullFound => {
                full += 1;
                let w = verdict.witness.unwrap();
                witnesses.is_empty() && edges_within(&g, &minus(w)) == delta * (order - 2) / 2
            }
            OverfullStatus::None => {
                witnesses.is_empty() && view.v_min.iter().all(|&v| edges_within(&g, &minus(v)) < delta * (order - 2) / 2)
            }
        };
        if ok {
            agree += 1;
        } else if details.len() < 10 {
            details.push(format!("instance {i}: detect {:?}, scan found {} sets", verdict, witnesses.len()));
        }
    }
    details.insert(0, format!("{agree}/{C2_INSTANCES} agree ({overfull} overfull, {full} full)"));
    Verdict { pass: agree == C2_INSTANCES, details }
}

// ---------------------------------------------------------------------------
// Dense families at desk scale.

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Family {
    Regular,
    TwoLight,
    WideSpread,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Regular => "regular (a)",
            Family::TwoLight => "two-light (b)",
            Family::WideSpread => "wide-spread (c)",
        }
    }
}

/// Draws parameters until the generator accepts them. The wide-spread
/// thresholds are the desk case split, since the literal ones cannot be
/// met together with `δ ≥ 1.2n` at these orders.
fn dense_instance(family: Family, order: usize, seed: u64) -> SimpleGraph {
    let n = order / 2;
    let lo = dense_floor(n);
    let thr = desk().case_split.ceil_at(n).max(3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let s = rng.gen();
        let g = match family {
            Family::Regular => generate::regular(order, rng.gen_range(lo..=order - 2), s),
            Family::TwoLight => {
                let def = rng.gen_range(1..=(order - 2 - lo).min(10));
                generate::two_light(order, rng.gen_range(lo + def..=order - 2), def, s)
            }
            Family::WideSpread => {
                let light = rng.gen_range(thr..n);
                let min = rng.gen_range(lo..=lo + 3);
                let max = (min + rng.gen_range(thr..=thr + 5)).min(order - 2);
                generate::wide_spread(order, max, min, light, s)
            }
        };
        if let Ok(g) = g {
            assert!(g.min_degree() >= lo, "generated instance below 1.2n");
            return g;
        }
    }
    panic!("no {family:?} instance of order {order} from seed {seed}");
}

/// Wide-spread graphs with a narrow spread, which the driver sends
/// through the deficiency-forest reduction.
fn narrow_instance(order: usize, seed: u64) -> SimpleGraph {
    let n = order / 2;
    let lo = dense_floor(n);
    let thr = desk().case_split.ceil_at(n).max(3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let light = rng.gen_range(3..n);
        let min = rng.gen_range(lo..=lo + 3);
        let max = min + rng.gen_range(1..thr);
        if let Ok(g) = generate::wide_spread(order, max, min, light, rng.gen()) {
            return g;
        }
    }
}

struct DenseRun {
    family: Family,
    order: usize,
    seed: u64,
    graph: SimpleGraph,
    document: String,
    success: bool,
}

fn instance_seed(family: Family, order: usize, i: usize) -> u64 {
    (family as u64) * 1_000_000 + order as u64 * 1_000 + i as u64
}

fn criterion3(runs: &mut Vec<DenseRun>) -> Verdict {
    let mut details = Vec::new();
    let mut pass = true;
    let mut worst = Duration::ZERO;
    let mut unnamed = 0;
    let mut verify_failures = 0;
    let mut by_step: BTreeMap<String, usize> = BTreeMap::new();
    for family in [Family::Regular, Family::TwoLight, Family::WideSpread] {
        for order in C3_ORDERS {
            let mut ok = 0;
            for i in 0..C3_INSTANCES {
                let seed = instance_seed(family, order, i);
                let g = dense_instance(family, order, seed);
                let opts = ColorOptions { epsilon: C3_EPSILON, profile: ProfileName::Desk, seed, timing: false };
                let start = Instant::now();
                let (doc, code) = color_graph(&g, &opts).expect("instance has vertices");
                let elapsed = start.elapsed();
                worst = worst.max(elapsed);
                let delta = g.max_degree() as u32;
                let document = to_json(&doc);
                let mut success = false;
                if code == 0 && doc.report.palette == Some(delta) && elapsed <= C3_TIME_LIMIT {
                    let text = doc.coloring.as_deref().unwrap_or("");
                    if independent_check(&g, text, delta).is_ok() {
                        success = true;
                        let m = Multigraph::from_simple(&g);
                        match verify_coloring(&m, &document) {
                            Ok((v, 0)) if v.ok && v.palette == delta => {}
                            _ => verify_failures += 1,
                        }
                    }
                }
                if success {
                    ok += 1;
                } else {
                    match &doc.report.error {
                        Some(e) if !e.step.is_empty() => *by_step.entry(e.step.clone()).or_insert(0) += 1,
                        Some(_) => unnamed += 1,
                        None => *by_step.entry(format!("ok-but-rejected ({:.2} s)", elapsed.as_secs_f64())).or_insert(0) += 1,
                    }
                }
                runs.push(DenseRun { family, order, seed, graph: g, document, success });
            }
            let rate = ok as f64 / C3_INSTANCES as f64;
            pass &= rate >= C3_MIN_RATE;
            details.push(format!("{:16} 2n = {order:3}: {ok}/{C3_INSTANCES} ({:.1}%)", family.name(), 100.0 * rate));
        }
    }
    pass &= unnamed == 0 && verify_failures == 0;
    details.push(format!("slowest instance {:.3} s (limit {} s)", worst.as_secs_f64(), C3_TIME_LIMIT.as_secs()));
    details.push(format!("failures by step: {by_step:?}; without a step name: {unnamed}; successes rejected by verify: {verify_failures}"));
    Verdict { pass, details }
}

fn criterion4() -> Verdict {
    let mut details = Vec::new();
    let (mut runs, mut good) = (0, 0);
    for order in C4_ORDERS {
        for seed in 0..C4_SEEDS {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<VertexId> = (0..order).collect();
            perm.shuffle(&mut rng);
            let complete = SimpleGraph::complete(order);
            let mut minus_pm = complete.clone();
            for pair in perm.chunks(2) {
                minus_pm.remove_edge(pair[0], pair[1]);
            }
            for (g, palette) in [(complete, order - 1), (minus_pm, order - 2)] {
                runs += 1;
                let opts = ColorOptions { seed, ..Default::default() };
                let (doc, code) = color_graph(&g, &opts).unwrap();
                let ok = code == 0
                    && doc.report.palette == Some(palette as u32)
                    && doc.coloring.as_deref().is_some_and(|text| {
                        independent_check(&g, text, palette as u32).is_ok_and(|sizes| sizes.iter().all(|&s| s == order / 2))
                    });
                if ok {
                    good += 1;
                } else if details.len() < 10 {
                    details.push(format!("2n = {order}, palette {palette}, seed {seed}: status {}", doc.report.status));
                }
            }
        }
    }
    details.insert(0, format!("{good}/{runs} runs give {{2n−1, 2n−2}} colors with every class a perfect matching"));
    Verdict { pass: good == runs, details }
}

fn criterion5(runs: &[DenseRun]) -> Verdict {
    let mut details = Vec::new();
    let mut pass = true;
    for (name, suite) in invariants::SUITES {
        let r = suite(C5_CASES);
        pass &= r.is_ok();
        details.push(format!("{name}: {}", r.err().unwrap_or_else(|| format!("{C5_CASES} cases ok"))));
    }
    let r = invariants::counting_bound_never_changes_the_chromatic_index(C5_ORACLE_CASES);
    pass &= r.is_ok();
    details.push(format!("oracle counting bound: {}", r.err().unwrap_or_else(|| format!("{C5_ORACLE_CASES} cases ok"))));

    // Parity on every full coloring produced end to end.
    let mut checked = 0;
    for run in runs.iter().filter(|r| r.success) {
        let out = chi_prime_dense(&run.graph, C3_EPSILON, &desk(), run.seed).unwrap();
        checked += 1;
        if !parity_check(&out.graph, &out.coloring) {
            pass = false;
            details.push(format!("parity fails on {:?} 2n = {} seed {}", run.family, run.order, run.seed));
        }
    }
    details.push(format!("parity lemma on {checked} end-to-end colorings"));
    Verdict { pass, details }
}

/// Checks one driver run: replay, recombination, forest leaves and the
/// forest degree identity. Returns whether the run took the forest route.
fn check_reduction(g: &SimpleGraph, seed: u64) -> Result<bool, String> {
    let out = chi_prime_dense(g, C3_EPSILON, &desk(), seed).map_err(|f| format!("driver failed at {}", f.error.step()))?;
    let trace: &ReductionTrace = &out.trace;
    let delta = g.max_degree() as u32;
    if let Some(core) = &out.core {
        if trace.replay(g)? != core.graph {
            return Err("replay does not reproduce the core graph".into());
        }
        let (graph, coloring) = trace.recombine(g, core)?;
        independent_check(g, &write_coloring(&graph, &coloring), delta)?;
    }
    independent_check(g, &write_coloring(&out.graph, &out.coloring), delta)?;

    let hakimi = trace.steps.iter().position(|s| matches!(s, ReductionStep::Hakimi { .. }));
    let forests: Vec<(&Vec<(VertexId, VertexId)>, &Vec<Vec<VertexId>>)> = trace
        .steps
        .iter()
        .filter_map(|s| match s {
            ReductionStep::LinearForest { pairs, paths, .. } => Some((pairs, paths)),
            _ => None,
        })
        .collect();
    let n = g.universe();
    let mut forest_degree = vec![0usize; n];
    for (pairs, paths) in &forests {
        let mut deg = vec![0usize; n];
        for p in paths.iter() {
            for w in p.windows(2) {
                deg[w[0]] += 1;
                deg[w[1]] += 1;
            }
        }
        let leaves: BTreeSet<VertexId> = (0..n).filter(|&v| deg[v] == 1).collect();
        let ends: BTreeSet<VertexId> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        if leaves != ends {
            return Err(format!("forest leaves {leaves:?} differ from matching ends {ends:?}"));
        }
        for v in 0..n {
            forest_degree[v] += deg[v];
        }
    }
    let Some(at) = hakimi else { return Ok(false) };
    let before = ReductionTrace::replay_steps(g, &trace.steps[..at])?;
    let k = forests.len();
    let big = before.max_degree();
    for u in 0..n {
        let df = big - before.degree(u);
        if forest_degree[u] + df != 2 * k {
            return Err(format!("vertex {u}: forest degree {} with deficiency {df}, k = {k}", forest_degree[u]));
        }
    }
    Ok(true)
}

fn criterion6(runs: &[DenseRun]) -> Verdict {
    let mut details = Vec::new();
    let (mut checked, mut skipped, mut forest_runs, mut bad) = (0, 0, 0, 0);
    let mut routes: BTreeMap<String, usize> = BTreeMap::new();
    let mut check = |g: &SimpleGraph, seed: u64, label: String, details: &mut Vec<String>| match check_reduction(g, seed) {
        Ok(forest) => {
            checked += 1;
            forest_runs += forest as usize;
        }
        Err(e) if e.starts_with("driver failed") => skipped += 1,
        Err(e) => {
            bad += 1;
            if details.len() < 10 {
                details.push(format!("{label}: {e}"));
            }
        }
    };
    for run in runs {
        let doc: edgecolor_cli::ColorDocument = serde_json::from_str(&run.document).unwrap();
        *routes.entry(doc.report.trace.route.join(">")).or_insert(0) += 1;
        check(&run.graph, run.seed, format!("{:?} 2n = {} seed {}", run.family, run.order, run.seed), &mut details);
    }
    for order in C3_ORDERS {
        for i in 0..C6_CASE2_PER_ORDER {
            let seed = 9_000_000 + order as u64 * 1000 + i as u64;
            let g = narrow_instance(order, seed);
            check(&g, seed, format!("narrow 2n = {order} seed {seed}"), &mut details);
        }
    }
    details.insert(0, format!("{checked} runs checked, {forest_runs} through the forest reduction, {bad} violations, {skipped} driver failures skipped"));
    details.insert(1, format!("criterion-3 routes: {routes:?}"));
    Verdict { pass: bad == 0 && forest_runs > 0 && checked > 0, details }
}

fn criterion7(runs: &[DenseRun]) -> Verdict {
    let mut details = Vec::new();
    let mut differing = 0;
    let mut compared = 0;
    // In process, on every tenth criterion-3 instance.
    for run in runs.iter().step_by(10) {
        let opts = ColorOptions { epsilon: C3_EPSILON, profile: ProfileName::Desk, seed: run.seed, timing: false };
        let docs: Vec<String> = (0..C7_REPEATS).map(|_| to_json(&color_graph(&run.graph, &opts).unwrap().0)).collect();
        compared += 1;
        if docs.iter().any(|d| *d != run.document) {
            differing += 1;
        }
    }
    // Through the binary, once per family and order.
    let dir = tempfile::TempDir::new().unwrap();
    let mut seen = BTreeSet::new();
    for run in runs {
        if !seen.insert((run.family, run.order)) {
            continue;
        }
        let path = dir.path().join(format!("{:?}-{}.txt", run.family, run.order));
        fs::write(&path, write_simple_graph(&run.graph)).unwrap();
        let seed = run.seed.to_string();
        let outs: Vec<Vec<u8>> = (0..C7_REPEATS)
            .map(|_| {
                Command::new(env!("CARGO_BIN_EXE_edgecolor"))
                    .args(["color", path.to_str().unwrap(), "--seed", &seed, "--epsilon", &C3_EPSILON.to_string()])
                    .output()
                    .unwrap()
                    .stdout
            })
            .collect();
        compared += 1;
        if outs.iter().any(|o| *o != outs[0]) || outs[0] != run.document.as_bytes() {
            differing += 1;
            details.push(format!("binary output differs for {:?} 2n = {}", run.family, run.order));
        }
    }
    details.insert(0, format!("{compared} inputs run {C7_REPEATS} times, {differing} with differing bytes"));
    Verdict { pass: differing == 0, details }
}

fn main() {
    let started = Instant::now();
    let mut all = true;
    let mut record = |name: &str, v: Verdict| {
        report(name, &v);
        all &= v.pass;
    };
    record("1 oracle equivalence of the class decision", criterion1());
    record("2 overfull detection matches the exhaustive scan", criterion2());
    let mut runs = Vec::new();
    record("3 end-to-end class-1 colorings", criterion3(&mut runs));
    record("4 one-factorizations of K_2n and K_2n minus a perfect matching", criterion4());
    record("5 component invariant suites", criterion5(&runs));
    record("6 reduction soundness", criterion6(&runs));
    record("7 determinism", criterion7(&runs));
    println!("acceptance finished in {:.1} s", started.elapsed().as_secs_f64());
    if !all {
        std::process::exit(1);
    }
}
