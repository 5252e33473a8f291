//! JSON payloads for the single-purpose CLI subcommands.

use serde_json::{json, Value};

use crate::classifier::{ClassifyingMap, P3Point, BASIS_NAME};
use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::fiberlab::fiber_conic;
use crate::kummer;
use crate::steiner::{self, Steiner};

/// The four quadrics, one per line, followed by a JSON block.
pub fn quadrics(curve: &HyperellipticCurve) -> Result<(String, Value)> {
    let cm = ClassifyingMap::build(curve)?;
    let basis: Vec<String> = cm.quadrics().iter().map(|q| q.to_string()).collect();
    let text = basis.iter().map(|q| format!("{q}\n")).collect();
    Ok((text, json!({ "dim": cm.certified_dim(), "basis_name": BASIS_NAME, "basis": basis })))
}

/// Parses "p0,p1,p2,p3" in the curve's field.
pub fn parse_point(curve: &HyperellipticCurve, text: &str) -> Result<P3Point> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::InvalidInput(format!("expected four comma-separated coordinates, got {:?}", text)));
    }
    let ctx = curve.ctx();
    let coords = parts.iter().map(|s| ctx.parse_scalar(s)).collect::<Result<Vec<_>>>()?;
    P3Point::new(coords.try_into().expect("four coordinates"))
}

pub fn fiber(curve: &HyperellipticCurve, point: &str) -> Result<Value> {
    let cm = ClassifyingMap::build(curve)?;
    let p = parse_point(curve, point)?;
    let fr = fiber_conic(&cm, &p)?;
    let gram: Vec<Vec<String>> = fr.conic.gram.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    Ok(json!({
        "point": p,
        "rank": fr.conic.rank,
        "class": fr.class,
        "gram": gram,
        "divisor_checked": fr.divisor_checked,
    }))
}

pub fn kummer(curve: &HyperellipticCurve, samples: usize, seed: u64) -> Result<Value> {
    let cm = ClassifyingMap::build(curve)?;
    let pts = kummer::sample_secant_images(&cm, samples, seed, "kummer-fit")?;
    let (q, stats) = kummer::kummer_quartic(&cm, &pts)?;
    let alpha = kummer::tangent_cone_check(&q)?;
    let (nodes, nodes_skipped) = match kummer::node_certificate(&cm, &q) {
        Ok(cert) => (serde_json::to_value(cert.nodes).expect("serializes"), None),
        Err(e @ Error::SkippedUnsplit(_)) => (json!([]), Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let mut out = json!({
        "quartic": q.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "monomial_order": "descending graded-lex in p0, p1, p2, p3",
        "basis_note": format!("coefficients relative to the quadric basis {BASIS_NAME}; normalized so the first nonzero coefficient is 1"),
        "interpolation": stats,
        "nodes": nodes,
        "tangent_cone_alpha": alpha.to_string(),
    });
    if let Some(reason) = nodes_skipped {
        out["nodes_skipped"] = Value::String(reason);
    }
    Ok(out)
}

pub fn cohomology(kmin: i64, kmax: i64) -> Result<Value> {
    let s = Steiner::default();
    Ok(serde_json::to_value(s.table(kmin, kmax)?).expect("serializes"))
}

pub fn bundle_report() -> Result<Value> {
    let s = Steiner::default();
    let e = s.end_cohomology()?;
    let b = s.dim_b()?;
    let nb = steiner::normal_bundle_splitting(s.ctx())?;
    Ok(json!({
        "chern": s.chern().to_string(),
        "chern_dual": s.chern().dual().to_string(),
        "slope": s.slope().to_string(),
        "stable": steiner::hoppe_stable(s.presentation(), s.ctx())?,
        "hom": e.hom,
        "ext1": e.ext1,
        "ext2": e.ext2,
        "dimB": b.total,
        "dimB_summands": b.summands,
        "normal_splitting": [nb.splitting.0, nb.splitting.1],
    }))
}
