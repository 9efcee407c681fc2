//! Experiment commands behind the `abels` binary: each returns a
//! machine-readable report (deterministic JSON with sorted keys) and the
//! binary maps errors onto exit codes.  Wall-clock timing goes to stderr
//! so identical runs stay byte-identical on stdout.

use crate::complex::{
    ball_with_deadline, build_complex, full_subcomplex, height_histogram, ComplexError,
    SimplicialComplex, VertexPredicate, VertexSet,
};
use crate::homology::{reduced_homology, SimplexSet};
use crate::invariants::{
    admissible_partitions, minimal_essential_dimension, partition_from_signs, sign_group, Engine,
    InvariantError, SignVector, VectorPair,
};
use crate::lattice::{
    coordinate_intersection_nu_det, is_fixed_by_signs, HeightFunction, Lattice, Model,
};
use crate::verify::{run_suites, Suite, SuiteReport};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::time::{Duration, Instant};
use thiserror::Error;

/// Default truncation budget: buildings grow exponentially, fail loudly.
pub const DEFAULT_CAP: usize = 50_000;

/// Default per-experiment wall-clock budget in seconds.
pub const DEFAULT_TIME_BUDGET: u64 = 300;

/// Stage-level budget tracking for a single experiment.
#[derive(Clone, Copy)]
pub struct Budget {
    start: Instant,
    limit: Duration,
}

impl Budget {
    pub fn new(seconds: u64) -> Budget {
        Budget {
            start: Instant::now(),
            limit: Duration::from_secs(seconds),
        }
    }

    fn deadline(&self) -> Option<(Instant, Duration)> {
        Some((self.start + self.limit, self.limit))
    }

    fn check(&self) -> Result<(), CliError> {
        if self.start.elapsed() > self.limit {
            return Err(CliError::Cap(format!(
                "time budget of {:?} exhausted",
                self.limit
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input; binary exits 1 with the named condition.
    #[error("{0}")]
    Validation(String),
    /// Truncation budget exhausted; binary exits 2.
    #[error("CapExceeded: {0}")]
    Cap(String),
    /// A property suite failed; binary exits 3.
    #[error("PropertyFailure: {0}")]
    Property(String),
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::CapExceeded(c) => CliError::Cap(format!("{c} vertices")),
            ComplexError::TimeBudgetExceeded(d) => {
                CliError::Cap(format!("time budget of {d:?} exhausted"))
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

fn parse_int_vector(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Validation(format!("bad integer `{t}` in `{s}`")))
        })
        .collect()
}

fn require_prime(p: u64) -> Result<(), CliError> {
    let is_prime = p >= 2 && (2..=p.isqrt()).all(|d| !p.is_multiple_of(d));
    if !is_prime {
        return Err(CliError::Validation(format!("{p} is not prime")));
    }
    Ok(())
}

fn report(command: &str, parameters: Value, results: Value, truncation: Option<Value>) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("command".into(), json!(command));
    obj.insert("parameters".into(), parameters);
    obj.insert("results".into(), results);
    if let Some(t) = truncation {
        obj.insert("truncation".into(), t);
    }
    Value::Object(obj)
}

/// `abels finiteness`: the two finiteness lengths from the defining pair.
pub fn cmd_finiteness(w1: &str, w2: &str, oracle: bool) -> Result<Value, CliError> {
    let w1 = parse_int_vector(w1)?;
    let w2 = parse_int_vector(w2)?;
    let pair = VectorPair::new(w1, w2)?;
    let med = minimal_essential_dimension(&pair, Engine::Search);
    let mut results = json!({
        "n": pair.n(),
        "classical": pair.n() - 1,
        "bredon": med.m - 1,
        "m": med.m,
        "witness": med.witness.one_based_blocks(),
        "admissible_partitions": med.admissible_count,
        "sign_group_order": sign_group(&pair).len(),
    });
    if oracle {
        let med_o = minimal_essential_dimension(&pair, Engine::Oracle);
        let same_sets = admissible_partitions(&pair, Engine::Search)
            == admissible_partitions(&pair, Engine::Oracle);
        let agree = med_o.m == med.m && med_o.witness == med.witness && same_sets;
        results["engines_agree"] = json!(agree);
        results["oracle_m"] = json!(med_o.m);
        if !agree {
            return Err(CliError::Property(format!(
                "engines disagree: search m={} oracle m={}",
                med.m, med_o.m
            )));
        }
    }
    Ok(report(
        "finiteness",
        json!({"w1": pair.w1(), "w2": pair.w2(), "oracle": oracle}),
        results,
        None,
    ))
}

/// Sanity shared by the building subcommands.
fn building_ball(
    p: u64,
    dim: usize,
    radius: usize,
    model: Model,
    cap: usize,
    budget: Budget,
) -> Result<VertexSet, CliError> {
    require_prime(p)?;
    if dim < 2 {
        return Err(CliError::Validation(format!("dim must be >= 2, got {dim}")));
    }
    if let Some(dir) = std::env::var_os("ABELS_CACHE_DIR") {
        let key = format!("ball_p{p}_d{dim}_{model}_r{radius}_c{cap}.json");
        let path = PathBuf::from(dir).join(key);
        if let Some(vs) = load_ball(&path, p, dim, model) {
            return Ok(vs);
        }
        let vs = ball_with_deadline(
            &Lattice::standard(p, dim),
            radius,
            model,
            cap,
            budget.deadline(),
        )?;
        let _ = save_ball(&path, &vs);
        return Ok(vs);
    }
    Ok(ball_with_deadline(
        &Lattice::standard(p, dim),
        radius,
        model,
        cap,
        budget.deadline(),
    )?)
}

fn save_ball(path: &PathBuf, vs: &VertexSet) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let v = json!({
        "p": vs.p,
        "dim": vs.dim,
        "model": vs.model.to_string(),
        "vertices": vs.vertices.iter().map(Lattice::to_json).collect::<Vec<_>>(),
        "distances": vs.distances,
    });
    std::fs::write(path, serde_json::to_string(&v).expect("serializable"))
}

fn load_ball(path: &PathBuf, p: u64, dim: usize, model: Model) -> Option<VertexSet> {
    let text = std::fs::read_to_string(path).ok()?;
    let v: Value = serde_json::from_str(&text).ok()?;
    let vertices: Vec<Lattice> = v
        .get("vertices")?
        .as_array()?
        .iter()
        .map(|e| Lattice::from_json(e).ok())
        .collect::<Option<_>>()?;
    let distances: Vec<usize> = v
        .get("distances")?
        .as_array()?
        .iter()
        .map(|e| e.as_u64().map(|d| d as usize))
        .collect::<Option<_>>()?;
    if vertices.len() != distances.len() {
        return None;
    }
    Some(VertexSet {
        model,
        p,
        dim,
        vertices,
        distances,
    })
}

fn complex_counts(x: &SimplicialComplex) -> Value {
    let mut counts = serde_json::Map::new();
    for (k, c) in x.simplex_counts().iter().enumerate() {
        counts.insert(k.to_string(), json!(c));
    }
    Value::Object(counts)
}

/// `abels building ball`: vertex and simplex counts of a truncation.
#[allow(clippy::too_many_arguments)]
pub fn cmd_building_ball(
    p: u64,
    dim: usize,
    radius: usize,
    model: Model,
    cap: usize,
    w: Option<&str>,
    dot: Option<&PathBuf>,
    dump: Option<&PathBuf>,
) -> Result<Value, CliError> {
    cmd_building_ball_with_budget(
        p,
        dim,
        radius,
        model,
        cap,
        w,
        dot,
        dump,
        DEFAULT_TIME_BUDGET,
    )
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_building_ball_with_budget(
    p: u64,
    dim: usize,
    radius: usize,
    model: Model,
    cap: usize,
    w: Option<&str>,
    dot: Option<&PathBuf>,
    dump: Option<&PathBuf>,
    time_budget: u64,
) -> Result<Value, CliError> {
    let budget = Budget::new(time_budget);
    let vs = building_ball(p, dim, radius, model, cap, budget)?;
    budget.check()?;
    let x = build_complex(&vs);
    budget.check()?;
    let mut results = json!({
        "vertices": vs.len(),
        "simplices": complex_counts(&x),
        "euler_characteristic": x.euler_characteristic(),
    });
    let height_fn = match w {
        Some(s) => {
            let h = HeightFunction::new(parse_int_vector(s)?)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let hist = height_histogram(&vs, &h)?;
            results["heights"] = json!(hist
                .into_iter()
                .map(|(h, c)| (h.to_string(), c))
                .collect::<std::collections::BTreeMap<_, _>>());
            Some(h)
        }
        None => None,
    };
    if let Some(path) = dot {
        std::fs::write(path, x.to_dot(height_fn.as_ref()))
            .map_err(|e| CliError::Validation(format!("cannot write dot file: {e}")))?;
    }
    if let Some(path) = dump {
        std::fs::write(
            path,
            serde_json::to_string(&x.to_json()).expect("serializable"),
        )
        .map_err(|e| CliError::Validation(format!("cannot write dump file: {e}")))?;
    }
    Ok(report(
        "building ball",
        json!({
            "p": p, "dim": dim, "radius": radius, "model": model.to_string(),
            "w": w,
        }),
        results,
        Some(json!({"radius": radius, "cap": cap, "deep": false})),
    ))
}

/// `abels building slice-homology`: reduced homology of a height-interval
/// full subcomplex, optionally restricted to deep vertices.
#[allow(clippy::too_many_arguments)]
pub fn cmd_slice_homology(
    p: u64,
    dim: usize,
    radius: usize,
    model: Model,
    w: &str,
    interval: &str,
    deep: bool,
    cap: usize,
) -> Result<Value, CliError> {
    cmd_slice_homology_with_budget(
        p,
        dim,
        radius,
        model,
        w,
        interval,
        deep,
        cap,
        DEFAULT_TIME_BUDGET,
    )
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_slice_homology_with_budget(
    p: u64,
    dim: usize,
    radius: usize,
    model: Model,
    w: &str,
    interval: &str,
    deep: bool,
    cap: usize,
    time_budget: u64,
) -> Result<Value, CliError> {
    let budget = Budget::new(time_budget);
    let h = HeightFunction::new(parse_int_vector(w)?)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let (lo, hi) = VertexPredicate::parse_interval(interval)?;
    let vs = building_ball(p, dim, radius, model, cap, budget)?;
    budget.check()?;
    let x = build_complex(&vs);
    budget.check()?;
    let mut preds = vec![VertexPredicate::height_interval(h, lo.clone(), hi.clone())?];
    if deep {
        preds.push(VertexPredicate::MaxDistance(radius.saturating_sub(1)));
    }
    let sub = full_subcomplex(&x, &VertexPredicate::And(preds))?;
    let set = SimplexSet::from_complex(&sub);
    let results = if set.is_empty() {
        json!({"vertices": 0, "homology": [], "empty": true})
    } else {
        let hres = reduced_homology(&set).map_err(|e| CliError::Validation(e.to_string()))?;
        json!({
            "vertices": sub.vertices.len(),
            "simplices": complex_counts(&sub),
            "homology": hres.to_json(),
        })
    };
    Ok(report(
        "building slice-homology",
        json!({
            "p": p, "dim": dim, "radius": radius, "model": model.to_string(),
            "w": w, "interval": format!("{lo}:{hi}"),
        }),
        results,
        Some(json!({"radius": radius, "cap": cap, "deep": deep})),
    ))
}

/// `abels building fixed-points`: fixed subcomplex statistics, split and
/// fixed tallies, and the blockwise product-structure verdict.
#[allow(clippy::too_many_arguments)]
pub fn cmd_fixed_points(
    p: u64,
    dim: usize,
    radius: usize,
    signs: &str,
    cap: usize,
    deep: bool,
) -> Result<Value, CliError> {
    cmd_fixed_points_with_budget(p, dim, radius, signs, cap, deep, DEFAULT_TIME_BUDGET)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_fixed_points_with_budget(
    p: u64,
    dim: usize,
    radius: usize,
    signs: &str,
    cap: usize,
    deep: bool,
    time_budget: u64,
) -> Result<Value, CliError> {
    let budget = Budget::new(time_budget);
    let sign_vectors: Vec<SignVector> = signs
        .split_whitespace()
        .map(SignVector::parse)
        .collect::<Result<_, _>>()?;
    for s in &sign_vectors {
        if s.points() != dim {
            return Err(CliError::Validation(format!(
                "sign vector {s} has {} entries, dim is {dim}",
                s.points()
            )));
        }
    }
    let vs = building_ball(p, dim, radius, Model::Extended, cap, budget)?;
    budget.check()?;
    let vs = if deep { vs.deep_subset(radius) } else { vs };
    let mut fixed_ids = Vec::new();
    let mut split_count = 0usize;
    let mut fixed_nonsplit = 0usize;
    for (i, v) in vs.vertices.iter().enumerate() {
        let fixed = sign_vectors.iter().all(|s| is_fixed_by_signs(s, v));
        let splits = sign_vectors.iter().all(|s| {
            let plus: Vec<usize> = (0..dim).filter(|&i| !s.is_minus(i)).collect();
            let minus: Vec<usize> = (0..dim).filter(|&i| s.is_minus(i)).collect();
            coordinate_intersection_nu_det(v, &plus) + coordinate_intersection_nu_det(v, &minus)
                == v.nu_det()
        });
        if splits {
            split_count += 1;
        }
        if fixed {
            fixed_ids.push(i);
            if !splits {
                fixed_nonsplit += 1;
            }
        }
    }
    let product_ok = crate::complex::product_check(&vs, &sign_vectors);
    let blocks = partition_from_signs(dim, &sign_vectors);
    // The fixed subcomplex: the full subcomplex on the fixed vertices,
    // built directly on that (small) vertex subset.
    let fixed_set = VertexSet {
        model: Model::Extended,
        p,
        dim,
        vertices: fixed_ids.iter().map(|&i| vs.vertices[i].clone()).collect(),
        distances: fixed_ids.iter().map(|&i| vs.distances[i]).collect(),
    };
    let fixed_complex = build_complex(&fixed_set);
    Ok(report(
        "building fixed-points",
        json!({
            "p": p, "dim": dim, "radius": radius,
            "signs": sign_vectors.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        }),
        json!({
            "vertices": vs.len(),
            "fixed": fixed_ids.len(),
            "split": split_count,
            "fixed_non_split": fixed_nonsplit,
            "product_check": product_ok,
            "partition": blocks.one_based_blocks(),
            "fixed_subcomplex": complex_counts(&fixed_complex),
        }),
        Some(json!({"radius": radius, "cap": cap, "deep": deep})),
    ))
}

/// `abels verify`: runs the module property suites.
pub fn cmd_verify(suite: Suite, seed: u64) -> Result<Value, CliError> {
    let reports = run_suites(suite, seed);
    let all_pass = reports.iter().all(SuiteReport::all_pass);
    let value = json!({
        "seed": seed,
        "all_pass": all_pass,
        "suites": reports,
    });
    let out = report("verify", json!({"seed": seed}), value, None);
    if !all_pass {
        let mut dump = String::new();
        for r in &reports {
            for c in r.checks.iter().filter(|c| !c.pass) {
                dump.push_str(&format!("{}::{}: {}\n", r.suite, c.name, c.detail));
            }
        }
        return Err(CliError::Property(dump));
    }
    Ok(out)
}

/// Renders a report as text for `--format human`.
pub fn render_human(v: &Value) -> String {
    let mut out = String::new();
    fn walk(out: &mut String, prefix: &str, v: &Value) {
        match v {
            Value::Object(map) => {
                for (k, val) in map {
                    match val {
                        Value::Object(_) | Value::Array(_) => {
                            out.push_str(&format!("{prefix}{k}:\n"));
                            walk(out, &format!("{prefix}  "), val);
                        }
                        _ => out.push_str(&format!("{prefix}{k}: {val}\n")),
                    }
                }
            }
            Value::Array(items) => {
                for item in items {
                    match item {
                        Value::Object(_) | Value::Array(_) => {
                            out.push_str(&format!("{prefix}-\n"));
                            walk(out, &format!("{prefix}  "), item);
                        }
                        _ => out.push_str(&format!("{prefix}- {item}\n")),
                    }
                }
            }
            _ => out.push_str(&format!("{prefix}{v}\n")),
        }
    }
    walk(&mut out, "", v);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finiteness_reports() {
        let r = cmd_finiteness("1,0,0", "0,0,-1", false).unwrap();
        assert_eq!(r["results"]["classical"], json!(1));
        assert_eq!(r["results"]["bredon"], json!(0));
        assert_eq!(r["results"]["m"], json!(1));
        assert_eq!(r["results"]["witness"], json!([[1, 3], [2]]));

        let r = cmd_finiteness("2,2,2,2", "1,1,0,-2", true).unwrap();
        assert_eq!(r["results"]["classical"], json!(2));
        assert_eq!(r["results"]["bredon"], json!(1));
        assert_eq!(r["results"]["engines_agree"], json!(true));

        let e = cmd_finiteness("0,1", "0,-1", false).unwrap_err();
        assert!(e.to_string().contains("NotMonotone"));
    }

    #[test]
    fn ball_reports() {
        let r = cmd_building_ball(3, 2, 1, Model::Quotient, 1000, None, None, None).unwrap();
        assert_eq!(r["results"]["vertices"], json!(5));
        assert_eq!(r["results"]["simplices"]["1"], json!(4));

        let e = cmd_building_ball(4, 2, 1, Model::Quotient, 1000, None, None, None).unwrap_err();
        assert!(matches!(e, CliError::Validation(_)));

        let e = cmd_building_ball(2, 2, 6, Model::Quotient, 10, None, None, None).unwrap_err();
        assert!(matches!(e, CliError::Cap(_)));
    }

    #[test]
    fn fixed_point_reports() {
        let r = cmd_fixed_points(2, 2, 2, "+-", 100_000, false).unwrap();
        assert!(r["results"]["fixed_non_split"].as_u64().unwrap() >= 1);
        assert_eq!(r["results"]["partition"], json!([[1], [2]]));
    }

    #[test]
    fn slice_homology_reports() {
        let r =
            cmd_slice_homology(2, 2, 6, Model::Quotient, "1,-1", "-2:0", true, 100_000).unwrap();
        // Deep annuli of the tree are disconnected at this radius.
        let hom = r["results"]["homology"].as_array().unwrap();
        assert_eq!(hom[0]["k"], json!(0));
        assert!(hom[0]["betti"].as_u64().unwrap() > 0);
    }

    #[test]
    fn verify_is_deterministic_and_passes() {
        let a = cmd_verify(Suite::Homology, 7).unwrap();
        let b = cmd_verify(Suite::Homology, 7).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_eq!(a["results"]["all_pass"], json!(true));
    }

    #[test]
    fn reports_are_byte_identical() {
        let a = cmd_finiteness("1,0,0,0", "0,0,0,-1", true).unwrap();
        let b = cmd_finiteness("1,0,0,0", "0,0,0,-1", true).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
