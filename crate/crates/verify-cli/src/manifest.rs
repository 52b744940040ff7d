//! Check manifests: declarative verification jobs executed against the
//! library, reported as JSON lines.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use bidihedrant::action;
use bidihedrant::analysis::{
    are_isomorphic, automorphism_group, find_biregular_dihedral,
};
use bidihedrant::families::{
    bpg_regular_dihedral, g2q, gdq, point_hyperplane_graph,
    singer_subgroups_pairwise_conjugate,
};
use bidihedrant::graph::{hamming_graph, SimpleGraph};
use bidihedrant::matgf::verify_mdq;
use bidihedrant::named::named_group;
use bidihedrant::registry::{
    connected_at_orbital_graphs, connected_orbital_classes, construct_family, g20_family,
};

#[derive(Debug, Clone, Deserialize)]
pub struct Check {
    pub id: String,
    pub kind: String,
    #[serde(default)]
    pub operation: String,
    #[serde(default)]
    pub args: Value,
    #[serde(default)]
    pub expect: Value,
    pub provenance: String,
    #[serde(default)]
    pub skip: Option<String>,
}

#[derive(Debug, Deserialize)]
pub struct CheckManifest {
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportLine {
    pub id: String,
    pub status: String,
    pub expected: Value,
    pub actual: Value,
    pub runtime_ms: u128,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub total: usize,
}

const KINDS: [&str; 4] = ["construct", "predicate", "equality", "search"];
const PROVENANCES: [&str; 3] = ["PAPER", "TRIVIAL", "DERIVED"];

impl CheckManifest {
    pub fn parse(text: &str) -> Result<CheckManifest, String> {
        let manifest: CheckManifest = serde_json::from_str(text).map_err(|e| {
            format!("manifest parse error at line {} column {}: {e}", e.line(), e.column())
        })?;
        let mut seen = std::collections::HashSet::new();
        for c in &manifest.checks {
            if !seen.insert(&c.id) {
                return Err(format!("duplicate check id '{}'", c.id));
            }
            if !KINDS.contains(&c.kind.as_str()) {
                return Err(format!("check '{}': unknown kind '{}'", c.id, c.kind));
            }
            if !PROVENANCES.iter().any(|p| c.provenance.starts_with(p)) {
                return Err(format!(
                    "check '{}': provenance must start with PAPER, TRIVIAL or DERIVED",
                    c.id
                ));
            }
        }
        Ok(manifest)
    }
}

fn arg_u64(args: &Value, key: &str) -> Result<u64, String> {
    args.get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| format!("missing integer argument '{key}'"))
}

fn arg_str<'a>(args: &'a Value, key: &str) -> Result<&'a str, String> {
    args.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| format!("missing string argument '{key}'"))
}

fn arg_u64_list(args: &Value, key: &str) -> Result<Vec<u64>, String> {
    args.get(key)
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(Value::as_u64).collect())
        .ok_or_else(|| format!("missing integer-list argument '{key}'"))
}

fn lib<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn graph_props(spec: &str) -> Result<Value, String> {
    let cert = construct_family(spec).map_err(lib)?;
    let g = &cert.graph;
    Ok(json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "valency": g.valency(),
        "connected": g.is_connected(),
        "bipartite": g.is_bipartite(),
        "certificate_holds": cert.certificate_holds(),
    }))
}

/// Run one check, producing the actual value.
pub fn execute(check: &Check) -> Result<Value, String> {
    let args = &check.args;
    match check.operation.as_str() {
        "construct" => graph_props(arg_str(args, "family")?),
        "aut_order" => {
            let cert = construct_family(arg_str(args, "family")?).map_err(lib)?;
            let aut = automorphism_group(&cert.graph).map_err(lib)?;
            Ok(json!(aut.order() as u64))
        }
        "isomorphic" => {
            let a = construct_family(arg_str(args, "a")?).map_err(lib)?;
            let b = construct_family(arg_str(args, "b")?).map_err(lib)?;
            Ok(json!(are_isomorphic(&a.graph, &b.graph).map_err(lib)?.is_some()))
        }
        "orbital_count" => {
            let group = named_group(arg_str(args, "group")?).map_err(lib)?;
            Ok(json!(connected_at_orbital_graphs(&group).map_err(lib)?.len()))
        }
        "orbital_aut_orders" => {
            let group = named_group(arg_str(args, "group")?).map_err(lib)?;
            let mut orders: Vec<u64> = connected_at_orbital_graphs(&group)
                .map_err(lib)?
                .iter()
                .map(|c| automorphism_group(&c.graph).map(|a| a.order() as u64))
                .collect::<Result<_, _>>()
                .map_err(lib)?;
            orders.sort_unstable();
            Ok(json!(orders))
        }
        "orbital_valencies" => {
            let group = named_group(arg_str(args, "group")?).map_err(lib)?;
            let vals: Vec<Option<usize>> = connected_at_orbital_graphs(&group)
                .map_err(lib)?
                .iter()
                .map(|c| c.graph.valency())
                .collect();
            Ok(json!(vals))
        }
        "g20_s3_reproduction" => {
            // The (S5, S3) action reproduces exactly G20^(2) and G20^(3).
            let family = g20_family().map_err(lib)?;
            let from_s3 = connected_orbital_classes(
                &named_group("s5s3@20").map_err(lib)?,
            )
            .map_err(lib)?;
            let mut hits = Vec::new();
            for cand in &from_s3 {
                let mut hit = None;
                for (i, g) in family.iter().enumerate() {
                    if are_isomorphic(cand, &g.graph).map_err(lib)?.is_some() {
                        hit = Some(i + 1);
                        break;
                    }
                }
                hits.push(hit);
            }
            hits.sort_unstable();
            Ok(json!({
                "count": from_s3.len(),
                "indices": hits,
            }))
        }
        "hamming_match" => {
            // Exactly one of {VO4+(2), its complement} is isomorphic to
            // H(2,4); report which (Table 1 line 1 discrepancy).
            let plus = construct_family("vo:m=2,q=2,eps=+").map_err(lib)?;
            let h24 = hamming_graph(2, 4).map_err(lib)?;
            let direct = are_isomorphic(&plus.graph, &h24).map_err(lib)?.is_some();
            let compl = are_isomorphic(&plus.graph.complement(), &h24)
                .map_err(lib)?
                .is_some();
            let matches = match (direct, compl) {
                (true, false) => "graph",
                (false, true) => "complement",
                (true, true) => "both",
                (false, false) => "neither",
            };
            Ok(json!({ "matches": matches, "exactly_one": direct != compl }))
        }
        "bpg_dihedral" => {
            let d = arg_u64(args, "d")? as usize;
            let q = arg_u64(args, "q")?;
            let y = bpg_regular_dihedral(d, q).map_err(lib)?;
            let bpg = point_hyperplane_graph(d, q, false).map_err(lib)?;
            let bpgc = point_hyperplane_graph(d, q, true).map_err(lib)?;
            Ok(json!({
                "order": y.order() as u64,
                "regular": action::is_regular(&y),
                "preserves_graph": y.generators().iter().all(|g| bpg.certified.graph.is_automorphism(g)),
                "preserves_complement": y.generators().iter().all(|g| bpgc.certified.graph.is_automorphism(g)),
            }))
        }
        "g2q_claims" => {
            let q = arg_u64(args, "q")?;
            let data = g2q(q).map_err(lib)?;
            let arc = bidihedrant::analysis::is_arc_transitive(
                &data.certified.graph,
                &data.psl,
            )
            .map_err(lib)?;
            let orbitals = connected_at_orbital_graphs(&data.psl).map_err(lib)?;
            let mut pairwise = true;
            for i in 0..orbitals.len() {
                for j in i + 1..orbitals.len() {
                    if are_isomorphic(&orbitals[i].graph, &orbitals[j].graph)
                        .map_err(lib)?
                        .is_none()
                    {
                        pairwise = false;
                    }
                }
            }
            Ok(json!({
                "n": data.certified.graph.n(),
                "valency": data.certified.graph.valency(),
                "psl_arc_transitive": arc,
                "overgroup_order": data.overgroup.order() as u64,
                "h_order": data.h_dihedral.order() as u64,
                "h_biregular": action::is_biregular(&data.h_dihedral),
                "orbitals_pairwise_isomorphic": pairwise,
            }))
        }
        "gdq_claims" => {
            let d = arg_u64(args, "d")? as usize;
            let q = arg_u64(args, "q")?;
            let g1 = gdq(d, q, 1).map_err(lib)?;
            let g2 = gdq(d, q, 2).map_err(lib)?;
            let g3 = gdq(d, q, 3).map_err(lib)?;
            let s = g1.part_size;
            let mut psl_orbits: Vec<Vec<usize>> = action::orbits(&g1.psl);
            psl_orbits.iter_mut().for_each(|o| o.sort_unstable());
            psl_orbits.sort();
            let parts_ok = psl_orbits
                == vec![(0..s).collect::<Vec<_>>(), (s..2 * s).collect::<Vec<_>>()];
            Ok(json!({
                "part_size": s,
                "valency_i1": g1.certified.graph.valency(),
                "valency_i2": g2.certified.graph.valency(),
                "iso_23": are_isomorphic(&g2.certified.graph, &g3.certified.graph).map_err(lib)?.is_some(),
                "psl_transitive_on_parts": parts_ok,
                "k_psl_orbit_sizes": g1.k_psl_orbit_sizes,
                "k_orbit_sizes": g1.k_orbit_sizes,
            }))
        }
        "mdq_nonempty" => {
            let (d, q, m) = (
                arg_u64(args, "d")? as u32,
                arg_u64(args, "q")?,
                arg_u64(args, "m")?,
            );
            Ok(json!(!verify_mdq(d, q, m).map_err(lib)?.is_empty()))
        }
        "mdq_empty_sweep" => {
            let d = arg_u64(args, "d")? as u32;
            let qs = arg_u64_list(args, "qs")?;
            let ms = arg_u64_list(args, "ms")?;
            for &q in &qs {
                for &m in &ms {
                    if !verify_mdq(d, q, m).map_err(lib)?.is_empty() {
                        return Ok(json!(false));
                    }
                }
            }
            Ok(json!(true))
        }
        "mdq_frobenius" => {
            // All solutions have Frobenius exponent de/2.
            let d = arg_u64(args, "d")? as u32;
            let q = arg_u64(args, "q")?;
            let ms = arg_u64_list(args, "ms")?;
            let e = {
                let (_, e) = bidihedrant::matgf::split_prime_power(q).map_err(lib)?;
                e
            };
            let half = (d * e) / 2;
            let mut any = false;
            for &m in &ms {
                for (_, k) in verify_mdq(d, q, m).map_err(lib)? {
                    any = true;
                    if k != half {
                        return Ok(json!(false));
                    }
                }
            }
            Ok(json!(any))
        }
        "singer_conjugacy" => {
            let d = arg_u64(args, "d")? as usize;
            let q = arg_u64(args, "q")?;
            Ok(json!(singer_subgroups_pairwise_conjugate(d, q).map_err(lib)?))
        }
        "biregular_dihedral" => {
            let group = named_group(arg_str(args, "group")?).map_err(lib)?;
            let order = arg_u64(args, "dihedral_order")?;
            let shell = SimpleGraph::empty(group.degree());
            let found = find_biregular_dihedral(&shell, &group).map_err(lib)?;
            let hit = found.iter().find(|h| h.order() == order as u128);
            let quasiprimitive = if group.order() <= 1_000_000 {
                Some(action::is_quasiprimitive(&group).map_err(lib)?)
            } else {
                None
            };
            Ok(json!({
                "found": hit.is_some(),
                "biregular": hit.map(action::is_biregular),
                "ambient_quasiprimitive": quasiprimitive,
            }))
        }
        other => Err(format!("unknown operation '{other}'")),
    }
}

/// Expected-vs-actual comparison: objects compare by the expected keys
/// only, everything else by equality.
pub fn matches(expect: &Value, actual: &Value) -> bool {
    match (expect, actual) {
        (Value::Object(e), Value::Object(a)) => e
            .iter()
            .all(|(k, v)| a.get(k).map(|av| matches(v, av)).unwrap_or(false)),
        _ => expect == actual,
    }
}

fn run_check(check: &Check) -> ReportLine {
    let start = Instant::now();
    if let Some(note) = &check.skip {
        return ReportLine {
            id: check.id.clone(),
            status: "skipped(capacity)".into(),
            expected: check.expect.clone(),
            actual: json!({ "note": note }),
            runtime_ms: start.elapsed().as_millis(),
        };
    }
    let (status, actual) = match execute(check) {
        Ok(actual) => {
            let ok = matches(&check.expect, &actual);
            (if ok { "pass" } else { "fail" }, actual)
        }
        Err(e) => ("fail", json!({ "error": e })),
    };
    ReportLine {
        id: check.id.clone(),
        status: status.into(),
        expected: check.expect.clone(),
        actual,
        runtime_ms: start.elapsed().as_millis(),
    }
}

/// Execute all checks on `jobs` worker threads; the report preserves
/// manifest order regardless of completion order.
pub fn run_manifest(manifest: &CheckManifest, jobs: usize) -> (Vec<ReportLine>, Summary) {
    let n = manifest.checks.len();
    let results: Mutex<Vec<Option<ReportLine>>> = Mutex::new(vec![None; n]);
    let next = AtomicUsize::new(0);
    let jobs = jobs.max(1).min(n.max(1));
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let line = run_check(&manifest.checks[i]);
                results.lock().unwrap()[i] = Some(line);
            });
        }
    });
    let lines: Vec<ReportLine> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(Option::unwrap)
        .collect();
    let mut summary = Summary {
        pass: 0,
        fail: 0,
        skipped: 0,
        total: n,
    };
    for l in &lines {
        match l.status.as_str() {
            "pass" => summary.pass += 1,
            "fail" => summary.fail += 1,
            _ => summary.skipped += 1,
        }
    }
    (lines, summary)
}
