//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.
//! Tolerances are fixed here and must not be relaxed.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::*;
use oced_forge::mapper::convert;
use oced_forge::rdf::{parse_turtle, serialize_turtle, Graph, Term, Triple};
use oced_forge::tools::{bgp_query, parse_query, stats, validate, ValidationCode};
use oced_forge::vocab::{
    builtin_ocedo, check_conformance, load_ocedd, output_prefixes, rdfs_closure, standard_prefixes,
    ConformanceCode, BPIC2013_OCEDD_TTL, BPIC2013_ONE_EVENT_XES,
};
use oced_forge::xes::parse_xes_str;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const ROUNDTRIP_LIMIT: Duration = Duration::from_secs(30);
const REASONER_LIMIT: Duration = Duration::from_secs(60);
const SCALE_LIMIT: Duration = Duration::from_secs(10);
const SCALE_MEMORY_LIMIT_KB: u64 = 512 * 1024;
const GOLDEN_TRIPLES: usize = 22;
const SCALE_CHILD_ENV: &str = "OCED_FORGE_ACCEPTANCE_SCALE";

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn golden_graph() -> Graph {
    let (ext, d) = bpic2013();
    let log = parse_xes_str(BPIC2013_ONE_EVENT_XES, "bpic2013_one_event").unwrap();
    convert(&log, &d, &ext).graph
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:.0?}"))
    }
}

fn golden_fragment() -> Outcome {
    let start = Instant::now();
    let (ext, d) = bpic2013();
    let pm = output_prefixes(&ext.prefixes, &d.resource_namespace);
    let mut renders = Vec::new();
    let mut graph = Graph::new();
    for _ in 0..5 {
        let log = parse_xes_str(BPIC2013_ONE_EVENT_XES, "bpic2013_one_event").map_err(|e| e.to_string())?;
        graph = convert(&log, &d, &ext).graph;
        renders.push(serialize_turtle(&graph, &pm));
    }
    let elapsed = start.elapsed();
    if renders.iter().any(|r| r != &renders[0]) {
        return Err("serialized output differs between runs".into());
    }
    let golden = include_str!("golden/bpic2013_one_event.ttl");
    if renders[0] != golden {
        return Err("output differs from the committed golden file".into());
    }
    if graph.len() != GOLDEN_TRIPLES {
        return Err(format!("{} triples, expected {GOLDEN_TRIPLES}", graph.len()));
    }
    let mut qp = standard_prefixes();
    qp.merge(&pm);
    let assertions = [
        "?e a oced:Event",
        "?e a ext:Close_Incident",
        "?e ext:status \"Completed\"",
        "?e ext:substatus \"Closed\"",
        "?e ext:pertains_to ?i . ?i ext:ticket_number \"1-364285768\"",
        "?e ext:is_handled_by ?tm . ?tm ext:name \"Siebel\"",
        "?tm ext:works_in ?t . ?t ext:team \"V5 3rd\"",
        "?i ext:is_about_product ?p . ?p ext:product_number \"PROD582\"",
        "?e oced:observed_at \"2012-05-11T01:26:15+02:00\"^^xsd:dateTime",
    ];
    let mut bound = Vec::new();
    for (n, a) in assertions.iter().enumerate() {
        bound.push(a.replace(" . ", "\n"));
        let q = parse_query(&bound.join("\n"), &qp).map_err(|e| format!("pattern {}: {e}", n + 1))?;
        if bgp_query(&graph, &q).len() != 1 {
            return Err(format!("assertion {} not matched exactly once: {a}", n + 1));
        }
    }
    within(elapsed, GOLDEN_LIMIT)?;
    Ok(format!("9/9 assertions, {GOLDEN_TRIPLES} triples, 5 identical runs, {elapsed:.2?}"))
}

fn turtle_roundtrip() -> Outcome {
    let start = Instant::now();
    let pm = roundtrip_prefixes();
    let mut total = 0;
    for seed in 0..1000u64 {
        let g = random_graph(&mut StdRng::seed_from_u64(0xA11CE ^ seed), 300);
        total += g.len();
        let text = serialize_turtle(&g, &pm);
        let (back, _) = parse_turtle(&text).map_err(|e| format!("seed {seed}: {e}"))?;
        if back != g {
            return Err(format!("seed {seed}: graph changed after round trip"));
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, ROUNDTRIP_LIMIT)?;
    Ok(format!("1000 graphs, {total} triples, {elapsed:.2?}"))
}

fn reasoner_oracle() -> Outcome {
    let start = Instant::now();
    let mut derived = 0;
    for seed in 0..200u64 {
        let g = random_schema_graph(&mut StdRng::seed_from_u64(0xBEEF ^ seed), 200);
        let fast: HashSet<Triple> = rdfs_closure(&g).iter().collect();
        let slow = naive_closure(&g);
        if fast != slow {
            return Err(format!("seed {seed}: {} vs {} triples", fast.len(), slow.len()));
        }
        derived += fast.len() - g.len();
    }
    let elapsed = start.elapsed();
    within(elapsed, REASONER_LIMIT)?;
    Ok(format!("200 graphs, {derived} derived triples, {elapsed:.2?}"))
}

fn query_oracle() -> Outcome {
    let mut rows = 0;
    for seed in 0..100u64 {
        let mut rng = StdRng::seed_from_u64(0xC0FFEE ^ seed);
        let g = random_query_graph(&mut rng, 200);
        let q = random_bgp(&mut rng, 3);
        let r = bgp_query(&g, &q);
        let got: BTreeSet<Vec<String>> =
            r.rows.iter().map(|row| row.iter().map(Term::to_ntriples).collect()).collect();
        if got.len() != r.len() || got != nested_loop_join(&g, &q, &r.variables) {
            return Err(format!("seed {seed}: result differs from nested-loop join"));
        }
        rows += r.len();
    }
    Ok(format!("100 instances, {rows} rows, 0 discrepancies"))
}

fn recall() -> Outcome {
    let (ocedo, _) = builtin_ocedo();
    let mut detected = Vec::new();
    for (file, code) in [
        ("ocedd_subclass_cycle.ttl", ConformanceCode::SubclassCycle),
        ("ocedd_unanchored_class.ttl", ConformanceCode::UnanchoredClass),
        ("ocedd_dangling_range.ttl", ConformanceCode::DanglingRange),
    ] {
        let ext = load_ocedd(&fixture(file)).map_err(|e| format!("{file}: {e}"))?;
        let report = check_conformance(&ext, &ocedo);
        if !report.errors().any(|f| f.code == code) {
            return Err(format!("{file}: {code} not reported"));
        }
        detected.push(code.as_str());
    }
    let ext = load_ocedd(BPIC2013_OCEDD_TTL).map_err(|e| e.to_string())?;
    for (file, code) in [
        ("graph_disjoint_types.ttl", ValidationCode::DisjointTypes),
        ("graph_range_violation.ttl", ValidationCode::RangeViolation),
        ("graph_unknown_property.ttl", ValidationCode::UnknownProperty),
    ] {
        let (g, _) = parse_turtle(&fixture(file)).map_err(|e| format!("{file}: {e}"))?;
        let report = validate(&g, &ocedo, &ext);
        if !report.has_code(code) {
            return Err(format!("{file}: {code} not reported"));
        }
        detected.push(code.as_str());
    }
    let clean = check_conformance(&ext, &ocedo).error_count();
    if clean != 0 {
        return Err(format!("clean OCEDD reports {clean} error(s)"));
    }
    let golden = validate(&golden_graph(), &ocedo, &ext).error_count();
    if golden != 0 {
        return Err(format!("golden graph reports {golden} error(s)"));
    }
    Ok(format!("6/6 defects ({}), clean inputs 0 errors", detected.join(", ")))
}

fn permutation() -> Outcome {
    let (ext, d) = bpic2013();
    let pm = output_prefixes(&ext.prefixes, &d.resource_namespace);
    let mut traces: Vec<String> =
        (0..100).map(|t| synthetic_trace(t, &format!("case-{}", t % 90), 4, 37, 7, 11)).collect();
    let run = |traces: &[String]| {
        let log = parse_xes_str(&wrap_log(traces), "synthetic").unwrap();
        let g = convert(&log, &d, &ext).graph;
        let text = serialize_turtle(&g, &pm);
        (g, text)
    };
    let (base, base_text) = run(&traces);
    let mut rng = StdRng::seed_from_u64(0x5EED);
    for round in 0..5 {
        traces.shuffle(&mut rng);
        let (g, text) = run(&traces);
        if g != base {
            let a: HashSet<Triple> = base.iter().collect();
            let b: HashSet<Triple> = g.iter().collect();
            return Err(format!("shuffle {round}: {} triples differ", a.symmetric_difference(&b).count()));
        }
        if text != base_text {
            return Err(format!("shuffle {round}: serialization differs"));
        }
    }
    Ok(format!("100 traces, 5 shuffles, {} triples unchanged, identical bytes", base.len()))
}

fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

/// Runs in a fresh child process so the memory high-water mark is its own.
fn scale_child() -> ExitCode {
    let (ext, d) = bpic2013();
    let traces: Vec<String> = (0..1000).map(|t| synthetic_trace(t, &format!("case-{t:04}"), 10, 600, 100, 300)).collect();
    let xml = wrap_log(&traces);
    drop(traces);
    let start = Instant::now();
    let log = parse_xes_str(&xml, "scale").expect("synthetic log parses");
    let c = convert(&log, &d, &ext);
    let text = serialize_turtle(&c.graph, &output_prefixes(&ext.prefixes, &d.resource_namespace));
    let elapsed = start.elapsed();
    let s = stats(&c.graph, Some(&ext));
    println!(
        "{} {} {} {} {} {}",
        elapsed.as_millis(),
        peak_rss_kb().unwrap_or(0),
        s.events,
        s.objects,
        c.graph.len(),
        text.len()
    );
    ExitCode::SUCCESS
}

fn scale() -> Outcome {
    let exe = std::env::current_exe().map_err(|e| e.to_string())?;
    let out = Command::new(exe).env(SCALE_CHILD_ENV, "1").output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("child failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    let line = String::from_utf8_lossy(&out.stdout);
    let f: Vec<u64> = line.split_whitespace().filter_map(|x| x.parse().ok()).collect();
    let [ms, kb, events, objects, triples, bytes] = f[..] else {
        return Err(format!("unexpected child output: {line}"));
    };
    let elapsed = Duration::from_millis(ms);
    let summary = format!(
        "{events} events, {objects} objects, {triples} triples, {} KiB Turtle, {elapsed:.2?}, peak {} MiB",
        bytes / 1024,
        kb / 1024
    );
    if events != 10_000 || objects != 2_000 {
        return Err(format!("stats mismatch: {summary}"));
    }
    within(elapsed, SCALE_LIMIT).map_err(|e| format!("{e}; {summary}"))?;
    if kb == 0 || kb >= SCALE_MEMORY_LIMIT_KB {
        return Err(format!("peak memory not within {} MiB: {summary}", SCALE_MEMORY_LIMIT_KB / 1024));
    }
    Ok(summary)
}

fn main() -> ExitCode {
    if std::env::var_os(SCALE_CHILD_ENV).is_some() {
        return scale_child();
    }
    let criteria: [Criterion; 7] = [
        ("golden fragment", golden_fragment),
        ("turtle round trip", turtle_roundtrip),
        ("reasoner oracle", reasoner_oracle),
        ("query oracle", query_oracle),
        ("conformance and validation recall", recall),
        ("determinism under permutation", permutation),
        ("scale smoke test", scale),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
