//! The `verify` pipeline and its JSON report.
//!
//! The report is a pure function of (curve, field, seed, samples, checks,
//! version). Wall-clock timings and cache status are kept in the optional
//! `runtime` section, which is omitted unless asked for.

pub mod cache;
pub mod commands;
pub mod curve_io;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classifier::{ClassifyingMap, BASIS_NAME, CONE_SAMPLES};
use crate::curve::HyperellipticCurve;
use crate::error::{cert_fail, Error, Result};
use crate::fiberlab::fiber_conic;
use crate::field::FieldContext;
use crate::kummer::{self, QuarticSurface};
use crate::steiner::{self, BundlePresentation, Steiner};
use crate::TOOL_VERSION;

use cache::{Artifacts, Cache};
use curve_io::CurveSpec;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SAMPLES: usize = 50;
pub const CHORD_SAMPLES: usize = 20;
pub const HOLDOUT_SAMPLES: usize = 40;
pub const OFF_QUARTIC_SAMPLES: usize = 20;
pub const FIBERWISE_SAMPLES: usize = 50;
/// Twists covered by the χ sweep of the Steiner table.
pub const TABLE_RANGE: (i64, i64) = (-6, 6);

/// Groups of checks that can be selected individually. The curve is always validated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckGroup {
    Quadrics,
    Cone,
    Fibers,
    Kummer,
    Nodes,
    TangentCone,
    Discriminant,
    Steiner,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 8] = [
        CheckGroup::Quadrics,
        CheckGroup::Cone,
        CheckGroup::Fibers,
        CheckGroup::Kummer,
        CheckGroup::Nodes,
        CheckGroup::TangentCone,
        CheckGroup::Discriminant,
        CheckGroup::Steiner,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckGroup::Quadrics => "quadrics",
            CheckGroup::Cone => "cone",
            CheckGroup::Fibers => "fibers",
            CheckGroup::Kummer => "kummer",
            CheckGroup::Nodes => "nodes",
            CheckGroup::TangentCone => "tangent_cone",
            CheckGroup::Discriminant => "discriminant",
            CheckGroup::Steiner => "steiner",
        }
    }

    fn needs_quartic(self) -> bool {
        matches!(self, CheckGroup::Kummer | CheckGroup::Nodes | CheckGroup::TangentCone | CheckGroup::Discriminant)
    }
}

impl FromStr for CheckGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckGroup::ALL
            .into_iter()
            .find(|g| g.as_str() == s.trim())
            .ok_or_else(|| Error::InvalidInput(format!("unknown check group `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub curve: CurveSpec,
    pub field: Option<FieldContext>,
    pub seed: u64,
    pub samples: usize,
    /// Empty means every group.
    pub checks: Vec<CheckGroup>,
    /// Worker threads; None lets rayon decide.
    pub workers: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub timings: bool,
}

impl VerifyConfig {
    pub fn new(curve: CurveSpec) -> Self {
        VerifyConfig {
            curve,
            field: None,
            seed: 42,
            samples: DEFAULT_SAMPLES,
            checks: vec![],
            workers: None,
            cache_dir: None,
            timings: false,
        }
    }

    pub fn groups(&self) -> Vec<CheckGroup> {
        let mut g = if self.checks.is_empty() { CheckGroup::ALL.to_vec() } else { self.checks.clone() };
        g.sort();
        g.dedup();
        g
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// The geometric statement the check certifies.
    pub anchor: String,
    pub status: Status,
    pub values: Value,
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub field: Value,
    pub f: Vec<String>,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<CheckGroup>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheStatus {
    pub key: String,
    pub cached: bool,
    pub stored: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Runtime {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings_ms: Option<BTreeMap<String, u128>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cache: Option<CacheStatus>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: ConfigEcho,
    pub basis: String,
    pub checks: Vec<CheckRecord>,
    pub overall: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime: Option<Runtime>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Values that must not depend on the field: quadric dimension, the
    /// image of the cone, stable fiber counts and every Steiner number.
    pub fn field_independent(&self) -> Value {
        let mut out = serde_json::Map::new();
        let pick = |name: &str, keys: &[&str]| -> Option<Value> {
            let c = self.check(name)?;
            if c.status != Status::Pass {
                return None;
            }
            let vals: serde_json::Map<String, Value> =
                keys.iter().filter_map(|k| c.values.get(*k).map(|v| (k.to_string(), v.clone()))).collect();
            Some(Value::Object(vals))
        };
        let wanted: [(&str, &[&str]); 8] = [
            ("quadric_ideal", &["dim", "basis_name"]),
            ("cone_fiber", &["samples", "image"]),
            ("fiber_rank_stable", &["points", "rank3"]),
            ("steiner_cohomology", &["rows"]),
            ("steiner_tensor_sym2", &["tensor_0", "sym2_0", "tensor_-1", "sym2_-1", "dim_b_summands", "dim_b"]),
            ("steiner_end", &["hom", "ext1", "ext2", "map_rank", "map_shape"]),
            ("steiner_chern_stability", &["chern", "slope", "hoppe_stable", "fiberwise_rank_two"]),
            ("normal_bundle", &["splitting", "rank", "degree", "hilbert"]),
        ];
        for (name, keys) in wanted {
            if let Some(v) = pick(name, keys) {
                out.insert(name.to_string(), v);
            }
        }
        Value::Object(out)
    }
}

struct Outcome {
    values: Value,
    witnesses: Vec<Value>,
}

impl Outcome {
    fn values(values: Value) -> Self {
        Outcome { values, witnesses: vec![] }
    }
}

fn is_skip(e: &Error) -> bool {
    matches!(e, Error::SkippedUnsplit(_) | Error::Unsupported(_) | Error::SqrtNotInField(_))
}

fn skip_reason(e: &Error) -> String {
    match e {
        Error::SkippedUnsplit(n) => {
            format!("Weierstrass locus is not split over the field ({n} of 6 roots rational)")
        }
        e => e.to_string(),
    }
}

struct Runner {
    records: Vec<CheckRecord>,
    timings: BTreeMap<String, u128>,
}

impl Runner {
    fn run(&mut self, name: &str, anchor: &str, f: impl FnOnce() -> Result<Outcome>) -> bool {
        let start = Instant::now();
        let result = f();
        self.timings.insert(name.to_string(), start.elapsed().as_millis());
        let (status, values, witnesses, reason) = match result {
            Ok(o) => (Status::Pass, o.values, o.witnesses, None),
            Err(e) if is_skip(&e) => (Status::Skipped, json!({}), vec![], Some(skip_reason(&e))),
            Err(e) => (Status::Fail, json!({}), vec![Value::String(e.to_string())], Some(e.to_string())),
        };
        let ok = status == Status::Pass;
        self.records.push(CheckRecord { name: name.into(), anchor: anchor.into(), status, values, witnesses, reason });
        ok
    }

    fn skip(&mut self, name: &str, anchor: &str, reason: &str) {
        self.records.push(CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Skipped,
            values: json!({}),
            witnesses: vec![],
            reason: Some(reason.into()),
        });
    }
}

/// Runs every selected check. Input errors (unreadable or invalid curve,
/// bad configuration) are returned as errors and no report is produced.
pub fn run_verify(config: &VerifyConfig) -> Result<Report> {
    let groups = config.groups();
    if groups.iter().any(|g| g.needs_quartic()) && config.samples < kummer::MIN_SAMPLES {
        return Err(Error::InvalidInput(format!(
            "--samples must be at least {} when the Kummer checks run",
            kummer::MIN_SAMPLES
        )));
    }
    if config.samples == 0 {
        return Err(Error::InvalidInput("--samples must be positive".into()));
    }
    let curve = config.curve.curve(config.field)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = config.workers {
        if w == 0 {
            return Err(Error::InvalidInput("--workers must be positive".into()));
        }
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| Error::Io(format!("thread pool: {e}")))?;
    Ok(pool.install(|| pipeline(config, &groups, &curve)))
}

fn pipeline(config: &VerifyConfig, groups: &[CheckGroup], curve: &HyperellipticCurve) -> Report {
    let ctx = curve.ctx();
    let seed = config.seed;
    let n = config.samples;
    let canonical = CurveSpec::canonical(curve);
    let has = |g: CheckGroup| groups.contains(&g);
    let mut run = Runner { records: vec![], timings: BTreeMap::new() };

    run.run("curve_validation", "y^2 = f(x) with f squarefree of degree 6 is a smooth genus-2 curve", || {
        let w = curve.weierstrass_points();
        Ok(Outcome::values(json!({
            "field": ctx.label(),
            "f": canonical.f,
            "weierstrass_roots": w.roots.len(),
            "weierstrass_residual_degree": w.residual_degree,
            "weierstrass_split": w.is_split(),
        })))
    });

    let mut cm: Option<ClassifyingMap> = None;
    run.run(
        "quadric_ideal",
        "the quadrics through the tri-canonical sextic in P^4 form a 4-dimensional space, giving the map to P^3",
        || {
            let map = ClassifyingMap::build(curve)?;
            let basis: Vec<String> = map.quadrics().iter().map(|q| q.to_string()).collect();
            let values = json!({ "dim": map.certified_dim(), "basis_name": BASIS_NAME, "basis": basis });
            cm = Some(map);
            Ok(Outcome::values(values))
        },
    );
    let no_map = "classifying map unavailable";

    if has(CheckGroup::Cone) {
        let anchor = "the cone over the twisted cubic is contracted to the origin [0:0:0:1]";
        match &cm {
            Some(cm) => {
                run.run("cone_fiber", anchor, || {
                    let origin = cm.certify_origin(seed)?;
                    Ok(Outcome::values(json!({ "samples": CONE_SAMPLES, "image": origin })))
                });
            }
            None => run.skip("cone_fiber", anchor, no_map),
        }
    }

    if has(CheckGroup::Fibers) {
        let names = [
            ("fiber_rank_stable", "the fiber over a stable point is a smooth conic"),
            ("fiber_rank_chords", "the fiber over a general point of the Kummer surface is a pair of lines"),
            ("fiber_rank_weierstrass", "the fibers over the 15 two-torsion points are double lines"),
        ];
        match &cm {
            Some(cm) => {
                run.run(names[0].0, names[0].1, || stable_sweep(cm, n, seed));
                run.run(names[1].0, names[1].1, || chord_sweep(cm, seed));
                run.run(names[2].0, names[2].1, || weierstrass_sweep(cm));
            }
            None => names.iter().for_each(|(a, b)| run.skip(a, b, no_map)),
        }
    }

    let mut cache_status = None;
    let mut quartic: Option<QuarticSurface> = None;
    if groups.iter().any(|g| g.needs_quartic()) {
        let anchor = "the image of the secant variety is a quartic surface";
        match &cm {
            Some(cm) => {
                let cache = config.cache_dir.as_ref().map(Cache::new);
                run.run("kummer_quartic", anchor, || {
                    let (q, out, status) = kummer_check(cm, &canonical, n, seed, cache.as_ref())?;
                    quartic = Some(q);
                    cache_status = status;
                    Ok(out)
                });
                if !has(CheckGroup::Kummer) {
                    run.records.pop();
                }
            }
            None => {
                if has(CheckGroup::Kummer) {
                    run.skip("kummer_quartic", anchor, no_map);
                }
            }
        }
    }
    let no_quartic = "quartic unavailable";

    if has(CheckGroup::Nodes) {
        let anchor = "the quartic has exactly 16 nodes: the origin and the images of the 15 Weierstrass chords";
        match (&cm, &quartic) {
            (Some(cm), Some(q)) => {
                run.run("kummer_nodes", anchor, || {
                    let cert = kummer::node_certificate(cm, q)?;
                    let witnesses = cert
                        .nodes
                        .iter()
                        .map(|n| json!({ "point": n.point, "chord": n.chord, "fiber_rank": n.fiber_rank }))
                        .collect();
                    Ok(Outcome {
                        values: json!({ "nodes": cert.nodes.len(), "pairwise_distinct": cert.pairwise_distinct }),
                        witnesses,
                    })
                });
            }
            _ => run.skip("kummer_nodes", anchor, no_quartic),
        }
    }

    if has(CheckGroup::TangentCone) {
        let anchor = "the tangent cone of the quartic at the origin is the conic p1^2 = 4 p0 p2";
        match &quartic {
            Some(q) => {
                run.run("tangent_cone", anchor, || {
                    let alpha = kummer::tangent_cone_check(q)?;
                    Ok(Outcome::values(json!({ "alpha": alpha, "cone": "p1^2 - 4*p0*p2" })))
                });
            }
            None => run.skip("tangent_cone", anchor, no_quartic),
        }
    }

    if has(CheckGroup::Discriminant) {
        let anchor = "the conic bundle degenerates exactly over the quartic, with the origin member always singular";
        match (&cm, &quartic) {
            (Some(cm), Some(q)) => {
                run.run("discriminant_crosscheck", anchor, || {
                    let s = kummer::discriminant_crosscheck(cm, q, n, seed)?;
                    if s.origin_root_present != s.pencils {
                        return Err(cert_fail("a pencil lacks the origin root"));
                    }
                    Ok(Outcome::values(serde_json::to_value(s).expect("summary serializes")))
                });
            }
            _ => run.skip("discriminant_crosscheck", anchor, no_quartic),
        }
    }

    if has(CheckGroup::Steiner) {
        steiner_checks(&mut run, ctx, seed);
    }

    let overall = if run.records.iter().any(|r| r.status == Status::Fail) { Status::Fail } else { Status::Pass };
    let runtime = (config.timings || cache_status.is_some()).then(|| Runtime {
        timings_ms: config.timings.then(|| run.timings.clone()),
        cache: cache_status,
    });
    Report {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        config: ConfigEcho { field: canonical.field.clone(), f: canonical.f.clone(), seed, samples: n, checks: groups.to_vec() },
        basis: BASIS_NAME.to_string(),
        checks: run.records,
        overall,
        runtime,
    }
}

fn stable_sweep(cm: &ClassifyingMap, n: usize, seed: u64) -> Result<Outcome> {
    let results: Vec<Result<bool>> = (0..n)
        .into_par_iter()
        .map(|i| {
            // One resample when a random point lands on the quartic.
            for attempt in 0..2 {
                let (p, rank) = kummer::random_stable_candidate(cm, seed, &format!("sweep-stable/{i}/{attempt}"))?;
                if rank == 3 {
                    return Ok(attempt > 0);
                }
                if attempt == 1 {
                    return Err(cert_fail(format!("fibers over two random points for sample {i} are singular, last {p}")));
                }
            }
            unreachable!()
        })
        .collect();
    let mut resampled = 0;
    for r in results {
        resampled += usize::from(r?);
    }
    Ok(Outcome::values(json!({ "points": n, "rank3": n, "resampled": resampled })))
}

fn chord_sweep(cm: &ClassifyingMap, seed: u64) -> Result<Outcome> {
    let points = kummer::sample_secant_images(cm, CHORD_SAMPLES, seed, "sweep-chord")?;
    let mut redrawn = 0;
    for (i, p) in points.iter().enumerate() {
        let mut rank = fiber_conic(cm, p)?.conic.rank;
        if rank == 1 {
            // A chord image can hit a node; redraw once.
            redrawn += 1;
            let q = kummer::secant_image(cm, seed, &format!("sweep-chord-redraw/{i}"))?;
            rank = fiber_conic(cm, &q)?.conic.rank;
        }
        if rank != 2 {
            return Err(cert_fail(format!("fiber over chord image {p} has rank {rank}, expected 2")));
        }
    }
    Ok(Outcome::values(json!({ "chords": CHORD_SAMPLES, "rank2": CHORD_SAMPLES, "redrawn": redrawn })))
}

fn weierstrass_sweep(cm: &ClassifyingMap) -> Result<Outcome> {
    let images = kummer::weierstrass_chord_images(cm)?;
    let mut witnesses = Vec::new();
    for (chord, p) in &images {
        let rank = fiber_conic(cm, p)?.conic.rank;
        if rank != 1 {
            return Err(cert_fail(format!("fiber over Weierstrass chord image {p} has rank {rank}, expected 1")));
        }
        witnesses.push(json!({ "chord": chord, "point": p }));
    }
    Ok(Outcome { values: json!({ "chords": images.len(), "rank1": images.len() }), witnesses })
}

fn kummer_check(
    cm: &ClassifyingMap,
    canonical: &CurveSpec,
    n: usize,
    seed: u64,
    cache: Option<&Cache>,
) -> Result<(QuarticSurface, Outcome, Option<CacheStatus>)> {
    let ctx = cm.ctx();
    if !ctx.is_prime_field() {
        return Err(Error::Unsupported("secant sampling needs a prime field".into()));
    }
    let quadrics: Vec<String> = cm.quadrics().iter().map(|q| q.to_string()).collect();
    let key = cache::cache_key(canonical, n);
    let hit = cache.and_then(|c| c.get(&key)).filter(|a| a.quadrics == quadrics && a.samples == n).and_then(|a| {
        let coeffs = a.quartic.iter().map(|s| ctx.parse_scalar(s)).collect::<Result<Vec<_>>>().ok()?;
        Some((QuarticSurface::from_coeffs(ctx, coeffs).ok()?, a))
    });
    let cached = hit.is_some();
    let (quartic, artifacts) = match hit {
        Some(h) => h,
        None => {
            let samples = kummer::sample_secant_images(cm, n, seed, "kummer-fit")?;
            let (q, stats) = kummer::kummer_quartic(cm, &samples)?;
            let a = Artifacts {
                quadrics,
                quartic: q.coeffs.iter().map(|c| c.to_string()).collect(),
                samples: stats.samples,
                quartic_nullity: stats.quartic_nullity,
                cubic_nullity: stats.cubic_nullity,
            };
            (q, a)
        }
    };
    let status = cache.map(|c| CacheStatus { key: key.clone(), cached, stored: !cached && c.put(&key, &artifacts) });

    let holdout = kummer::sample_secant_images(cm, HOLDOUT_SAMPLES, seed, "kummer-holdout")?;
    if let Some(p) = holdout.iter().find(|p| !quartic.eval(p).is_zero()) {
        return Err(cert_fail(format!("hold-out secant image {p} is off the quartic")));
    }
    let off: Vec<Result<bool>> = (0..OFF_QUARTIC_SAMPLES)
        .into_par_iter()
        .map(|i| kummer::stable_sample(cm, &quartic, seed, &format!("kummer-off/{i}")))
        .collect();
    let mut resampled = 0;
    for r in off {
        resampled += usize::from(r?);
    }
    let values = json!({
        "samples": artifacts.samples,
        "quartic_nullity": artifacts.quartic_nullity,
        "cubic_nullity": artifacts.cubic_nullity,
        "holdout": HOLDOUT_SAMPLES,
        "off_quartic_rank3": OFF_QUARTIC_SAMPLES,
        "off_quartic_resampled": resampled,
        "basis": BASIS_NAME,
        "coefficients": artifacts.quartic,
    });
    Ok((quartic, Outcome::values(values), status))
}

fn steiner_checks(run: &mut Runner, ctx: FieldContext, seed: u64) {
    let s = Steiner::new(ctx);
    run.run(
        "steiner_cohomology",
        "h^0(A*(-1)) = 0, h^0(A*) = 4, h^1(A*) = 0, h^0(A*(1)) = 10, h^1(A*(-2)) = 2, chi(A*(k)) = (k+1)(k+4)",
        || {
            let table = s.table(TABLE_RANGE.0, TABLE_RANGE.1)?;
            let expect = [(-2, [0, 2, 0]), (-1, [0, 0, 0]), (0, [4, 0, 0]), (1, [10, 0, 0])];
            for (k, h) in expect {
                let got = s.h_astar(k)?;
                if got != h {
                    return Err(cert_fail(format!("h(A*({k})) = {got:?}, expected {h:?}")));
                }
            }
            Ok(Outcome::values(json!({ "rows": table.rows })))
        },
    );
    run.run("steiner_tensor_sym2", "h^0(A*(x)A*) = 16, h^0(Sym^2 A*) = 10, h^0(Sym^2 A*(-1)) = 1, dim B = 16", || {
        let b = s.dim_b()?;
        let values = json!({
            "tensor_0": s.tensor(0)?,
            "sym2_0": s.sym2(0)?,
            "tensor_-1": s.tensor(-1)?,
            "sym2_-1": s.sym2(-1)?,
            "dim_b_summands": b.summands,
            "dim_b": b.total,
        });
        let ok = s.tensor(0)?[0] == 16 && s.sym2(0)?[0] == 10 && s.tensor(-1)?[0] == 4 && s.sym2(-1)?[0] == 1 && b.total == 16;
        if !ok {
            return Err(cert_fail(format!("unexpected tensor data {values}")));
        }
        Ok(Outcome::values(values))
    });
    run.run("steiner_end", "Hom(A, A) is 1-dimensional and Ext^1(A, A) is 5-dimensional", || {
        let e = s.end_cohomology()?;
        if (e.hom, e.ext1, e.ext2, e.map_rank) != (1, 5, 0, 15) {
            return Err(cert_fail(format!("End cohomology {e:?}")));
        }
        Ok(Outcome::values(serde_json::to_value(e).expect("serializes")))
    });
    run.run("steiner_chern_stability", "c(A*) = 1 + 2H + 3H^2, slope 1, and A is stable", || {
        let c = s.chern();
        let stable = steiner::hoppe_stable(s.presentation(), ctx)?;
        let split_stable = steiner::hoppe_stable(&BundlePresentation::split(&[0, 2]), ctx)?;
        let fiberwise = s.fiberwise_injective(FIBERWISE_SAMPLES, seed)?;
        let values = json!({
            "chern": c.to_string(),
            "slope": s.slope().to_string(),
            "hoppe_stable": stable,
            "split_control_stable": split_stable,
            "fiberwise_rank_two": fiberwise,
        });
        if c.to_string() != "1 + 2H + 3H^2" || *s.slope().numer() != 1 || *s.slope().denom() != 1 || !stable || split_stable || !fiberwise {
            return Err(cert_fail(format!("unexpected Chern or stability data {values}")));
        }
        Ok(Outcome::values(values))
    });
    run.run("normal_bundle", "the normal bundle of the twisted cubic is O(5) + O(5)", || {
        let nb = steiner::normal_bundle_splitting(ctx)?;
        if nb.splitting != (5, 5) {
            return Err(cert_fail(format!("normal bundle splits as {:?}", nb.splitting)));
        }
        Ok(Outcome::values(serde_json::to_value(nb).expect("serializes")))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_names_round_trip() {
        for g in CheckGroup::ALL {
            assert_eq!(g.as_str().parse::<CheckGroup>().unwrap(), g);
        }
        assert!("everything".parse::<CheckGroup>().is_err());
    }

    #[test]
    fn small_sample_count_is_rejected() {
        let spec = CurveSpec::new(FieldContext::prime(10009).unwrap(), &["-1", "0", "0", "0", "0", "0", "1"]);
        let mut cfg = VerifyConfig::new(spec);
        cfg.samples = 10;
        assert!(matches!(run_verify(&cfg), Err(Error::InvalidInput(_))));
        cfg.checks = vec![CheckGroup::Cone];
        assert!(run_verify(&cfg).unwrap().passed());
    }
}
