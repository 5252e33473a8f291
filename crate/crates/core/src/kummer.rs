//! The Kummer quartic as the image of the secant variety: interpolation,
//! node certification, tangent cone at the origin, and the comparison with
//! the discriminant of the conic bundle.

use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::{ClassifyingMap, P3Point};
use crate::curve::CurvePoint;
use crate::error::{cert_fail, Error, Result};
use crate::fiberlab::{degenerate_members, fiber_conic, on_veronese_conic};
use crate::field::{FieldContext, Scalar};
use crate::matrix::ExactMatrix;
use crate::poly::{monomials_of_degree, Monomial, MultiPoly};
use crate::seed;

pub const P_VARS: [&str; 4] = ["p0", "p1", "p2", "p3"];

/// Fewest samples accepted for interpolating a quartic.
pub const MIN_SAMPLES: usize = 45;

#[derive(Clone, Debug)]
pub struct QuarticSurface {
    /// Coefficients on the 35 quartic monomials in descending grlex order.
    pub coeffs: Vec<Scalar>,
    pub poly: MultiPoly,
    pub gradient: [MultiPoly; 4],
}

impl QuarticSurface {
    pub fn from_coeffs(ctx: FieldContext, coeffs: Vec<Scalar>) -> Result<Self> {
        let monos = monomials_of_degree(4, 4);
        if coeffs.len() != monos.len() {
            return Err(Error::InvalidInput(format!("expected 35 coefficients, got {}", coeffs.len())));
        }
        let poly = MultiPoly::from_terms(ctx, &P_VARS, monos.iter().map(|m| m.0.clone()).zip(coeffs.iter().cloned()))?;
        if poly.is_zero() {
            return Err(Error::InvalidInput("zero quartic".into()));
        }
        let gradient = std::array::from_fn(|i| poly.derivative(i));
        Ok(QuarticSurface { coeffs, poly, gradient })
    }

    pub fn ctx(&self) -> FieldContext {
        self.poly.ctx()
    }

    pub fn eval(&self, p: &P3Point) -> Scalar {
        self.poly.eval(p.coords()).expect("point in the same field")
    }

    pub fn gradient_at(&self, p: &P3Point) -> [Scalar; 4] {
        std::array::from_fn(|i| self.gradient[i].eval(p.coords()).expect("point in the same field"))
    }

    pub fn is_singular_at(&self, p: &P3Point) -> bool {
        self.eval(p).is_zero() && self.gradient_at(p).iter().all(Scalar::is_zero)
    }
}

/// Images of random points on random chords of C; deterministic in the seed.
pub fn sample_secant_images(cm: &ClassifyingMap, n: usize, seed: u64, label: &str) -> Result<Vec<P3Point>> {
    if !cm.ctx().is_prime_field() {
        return Err(Error::Unsupported("secant sampling needs a prime field".into()));
    }
    (0..n).into_par_iter().map(|i| secant_image(cm, seed, &format!("{label}/{i}"))).collect()
}

/// A point on a chord between two curve points with distinct x, together with its image.
pub fn secant_image(cm: &ClassifyingMap, seed: u64, label: &str) -> Result<P3Point> {
    let curve = cm.curve();
    let ctx = cm.ctx();
    let mut rng = seed::rng(seed, label);
    for _ in 0..crate::curve::MAX_DRAWS {
        let a = curve.random_point_with(&mut rng)?;
        let b = curve.random_point_with(&mut rng)?;
        let (CurvePoint::Affine { x: xa, .. }, CurvePoint::Affine { x: xb, .. }) = (&a, &b) else { continue };
        if xa == xb {
            continue;
        }
        let va = curve.embed_tricanonical(&a)?;
        let vb = curve.embed_tricanonical(&b)?;
        let t = ctx.random_nonzero(&mut rng);
        let z: [Scalar; 5] = std::array::from_fn(|k| &va[k] + &(&t * &vb[k]));
        match cm.phi_eval(&z) {
            Ok(p) => return Ok(p),
            Err(Error::BaseLocus) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Exhausted(crate::curve::MAX_DRAWS))
}

fn evaluation_matrix(ctx: FieldContext, samples: &[P3Point], monos: &[Monomial]) -> Result<ExactMatrix> {
    let rows = samples
        .iter()
        .map(|p| {
            let powers: Vec<Vec<Scalar>> = p
                .coords()
                .iter()
                .map(|x| {
                    let mut v = vec![ctx.one()];
                    for k in 0..4 {
                        let next = &v[k] * x;
                        v.push(next);
                    }
                    v
                })
                .collect();
            monos
                .iter()
                .map(|m| m.0.iter().enumerate().fold(ctx.one(), |acc, (i, &e)| &acc * &powers[i][e as usize]))
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(ctx, monos.len(), rows)
}

/// Interpolation data kept for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct InterpolationStats {
    pub samples: usize,
    pub quartic_nullity: usize,
    pub cubic_nullity: usize,
}

/// The unique quartic through the samples, certified to have degree exactly 4.
pub fn kummer_quartic(cm: &ClassifyingMap, samples: &[P3Point]) -> Result<(QuarticSurface, InterpolationStats)> {
    let ctx = cm.ctx();
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InvalidInput(format!("need at least {MIN_SAMPLES} samples, got {}", samples.len())));
    }
    let cubic = evaluation_matrix(ctx, samples, &monomials_of_degree(4, 3))?;
    let cubic_nullity = cubic.cols() - cubic.rank();
    if cubic_nullity != 0 {
        return Err(Error::CubicVanishes);
    }
    let quartic = evaluation_matrix(ctx, samples, &monomials_of_degree(4, 4))?;
    let kernel = quartic.kernel_basis();
    match kernel.len() {
        0 => return Err(Error::NoQuartic),
        1 => {}
        n => return Err(Error::AmbiguousQuartic(n)),
    }
    let v = &kernel[0];
    let lead = v.iter().find(|c| !c.is_zero()).expect("nonzero kernel vector").inv().expect("nonzero");
    let coeffs = v.iter().map(|c| c * &lead).collect();
    let stats = InterpolationStats { samples: samples.len(), quartic_nullity: 1, cubic_nullity };
    Ok((QuarticSurface::from_coeffs(ctx, coeffs)?, stats))
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeRecord {
    pub point: P3Point,
    pub quartic_zero: bool,
    pub gradient_zero: bool,
    /// Rank of the fiber conic; `None` for the origin, whose fiber is the cone.
    pub fiber_rank: Option<usize>,
    /// Indices of the two Weierstrass points of the chord.
    pub chord: Option<[usize; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeCertificate {
    pub nodes: Vec<NodeRecord>,
    pub pairwise_distinct: bool,
}

/// Certifies the 15 Weierstrass chord images and the origin as singular points.
pub fn node_certificate(cm: &ClassifyingMap, quartic: &QuarticSurface) -> Result<NodeCertificate> {
    let ctx = cm.ctx();
    let mut nodes = Vec::new();
    for (chord, point) in weierstrass_chord_images(cm)? {
        let rank = fiber_conic(cm, &point)?.conic.rank;
        nodes.push(NodeRecord {
            quartic_zero: quartic.eval(&point).is_zero(),
            gradient_zero: quartic.gradient_at(&point).iter().all(Scalar::is_zero),
            point,
            fiber_rank: Some(rank),
            chord: Some(chord),
        });
    }
    let origin = P3Point::origin(ctx);
    nodes.push(NodeRecord {
        quartic_zero: quartic.eval(&origin).is_zero(),
        gradient_zero: quartic.gradient_at(&origin).iter().all(Scalar::is_zero),
        point: origin,
        fiber_rank: None,
        chord: None,
    });
    let pairwise_distinct = nodes.iter().enumerate().all(|(i, a)| nodes[i + 1..].iter().all(|b| a.point != b.point));
    for n in &nodes {
        if !n.quartic_zero || !n.gradient_zero {
            return Err(cert_fail(format!("{} is not a singular point of the quartic", n.point)));
        }
        if n.fiber_rank.is_some_and(|r| r != 1) {
            return Err(cert_fail(format!("fiber over {} is not a double line", n.point)));
        }
    }
    if !pairwise_distinct || nodes.len() != 16 {
        return Err(cert_fail("node candidates are not 16 distinct points"));
    }
    Ok(NodeCertificate { nodes, pairwise_distinct })
}

/// Images of the chords joining pairs of Weierstrass points, with the pair indices.
pub fn weierstrass_chord_images(cm: &ClassifyingMap) -> Result<Vec<([usize; 2], P3Point)>> {
    let ctx = cm.ctx();
    let curve = cm.curve();
    let w = curve.weierstrass_points();
    if !w.is_split() {
        return Err(Error::SkippedUnsplit(w.roots.len()));
    }
    let embed = |x: &Scalar| curve.embed_tricanonical(&CurvePoint::Affine { x: x.clone(), y: ctx.zero() });
    let mut out = Vec::new();
    for i in 0..w.roots.len() {
        for j in i + 1..w.roots.len() {
            let (a, b) = (embed(&w.roots[i])?, embed(&w.roots[j])?);
            out.push(([i, j], chord_image(cm, &a, &b)?));
        }
    }
    Ok(out)
}

/// Image of an interior point of the chord through a and b.
fn chord_image(cm: &ClassifyingMap, a: &[Scalar; 5], b: &[Scalar; 5]) -> Result<P3Point> {
    let ctx = cm.ctx();
    for t in 1..=8 {
        let t = ctx.from_i64(t);
        let z: [Scalar; 5] = std::array::from_fn(|k| &a[k] + &(&t * &b[k]));
        match cm.phi_eval(&z) {
            Ok(p) => return Ok(p),
            Err(Error::BaseLocus) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(cert_fail("every tried chord point lies on the curve"))
}

/// α with lowest-degree part of the quartic at the origin equal to α(p₁² − 4p₀p₂).
pub fn tangent_cone_check(quartic: &QuarticSurface) -> Result<Scalar> {
    let ctx = quartic.ctx();
    // In the chart p₃ = 1 a monomial p^a has degree 4 − a₃ in p₀, p₁, p₂.
    let lowest = quartic.poly.terms().map(|(m, _)| 4 - m.0[3]).min().expect("nonzero quartic");
    if lowest != 2 {
        return Err(cert_fail(format!("tangent cone at the origin has degree {lowest}, expected 2")));
    }
    let part: Vec<(&Monomial, &Scalar)> = quartic.poly.terms().filter(|(m, _)| m.0[3] == 2).collect();
    let alpha = quartic.poly.coefficient(&[0, 2, 0, 2]);
    if alpha.is_zero() {
        return Err(cert_fail("tangent cone has no p1^2 term"));
    }
    let expected_p0p2 = &ctx.from_i64(-4) * &alpha;
    for (m, c) in part {
        let ok = match m.0.as_slice() {
            [0, 2, 0, 2] => true,
            [1, 0, 1, 2] => *c == expected_p0p2,
            _ => false,
        };
        if !ok {
            return Err(cert_fail(format!("tangent cone is not proportional to p1^2 - 4*p0*p2 (term {m:?})")));
        }
    }
    if quartic.poly.coefficient(&[1, 0, 1, 2]) != expected_p0p2 {
        return Err(cert_fail("tangent cone lacks the p0*p2 term"));
    }
    Ok(alpha)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CrosscheckSummary {
    pub pencils: usize,
    pub origin_root_present: usize,
    pub rational_degenerate_points: usize,
    pub unsplit_pencils: usize,
    pub veronese_pencils: usize,
    pub stable_points: usize,
    pub stable_resampled: usize,
    pub kummer_points: usize,
    pub kummer_singular_resampled: usize,
}

/// Compares degenerate pencil members, random stable points and secant
/// samples with the quartic. All checks are exact.
pub fn discriminant_crosscheck(
    cm: &ClassifyingMap,
    quartic: &QuarticSurface,
    n: usize,
    seed: u64,
) -> Result<CrosscheckSummary> {
    let ctx = cm.ctx();
    let mut summary = CrosscheckSummary::default();

    let pencils: Vec<Result<(usize, usize, bool)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = seed::rng(seed, &format!("crosscheck-c/{i}"));
            let c: [Scalar; 3] = loop {
                let c = std::array::from_fn(|_| ctx.random_element(&mut rng));
                if !c.iter().all(Scalar::is_zero) {
                    break c;
                }
            };
            let dm = degenerate_members(cm, &c)?;
            let expected_g0 = if on_veronese_conic(&c) { 1 } else { 2 };
            if dm.pencil.g0.rank != expected_g0 {
                return Err(cert_fail(format!("G0 has rank {} for c = {:?}", dm.pencil.g0.rank, c)));
            }
            let mut on = 0;
            for r in dm.roots.iter().filter(|r| !r.t[0].is_zero()) {
                if !quartic.eval(&r.point).is_zero() {
                    return Err(cert_fail(format!("degenerate member image {} is off the quartic", r.point)));
                }
                on += 1;
            }
            Ok((dm.origin_multiplicity() as usize, on, dm.residual_degree > 0))
        })
        .collect();
    for r in pencils {
        let (origin_mult, on, unsplit) = r?;
        summary.pencils += 1;
        summary.origin_root_present += usize::from(origin_mult >= 1);
        summary.rational_degenerate_points += on;
        summary.unsplit_pencils += usize::from(unsplit);
    }

    let veronese: Vec<Result<()>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = seed::rng(seed, &format!("crosscheck-veronese/{i}"));
            let r = ctx.random_element(&mut rng);
            let c = [&r * &r, &ctx.from_i64(-2) * &r, ctx.one()];
            let dm = degenerate_members(cm, &c)?;
            if dm.pencil.g0.rank != 1 || dm.origin_multiplicity() < 2 {
                return Err(cert_fail(format!("pencil over the doubled divisor at x = {r} is not tangent")));
            }
            Ok(())
        })
        .collect();
    for v in veronese {
        v?;
        summary.veronese_pencils += 1;
    }

    let stable: Vec<Result<bool>> =
        (0..n).into_par_iter().map(|i| stable_sample(cm, quartic, seed, &format!("crosscheck-stable/{i}"))).collect();
    for s in stable {
        summary.stable_resampled += usize::from(s?);
        summary.stable_points += 1;
    }

    let kummer = sample_secant_images(cm, n, seed, "crosscheck-kummer")?;
    for (i, p) in kummer.iter().enumerate() {
        let mut p = p.clone();
        if quartic.is_singular_at(&p) {
            // Generic secant images are smooth points; a hit on the singular
            // locus is redrawn once before it counts as a failure.
            summary.kummer_singular_resampled += 1;
            p = secant_image(cm, seed, &format!("crosscheck-kummer-redraw/{i}"))?;
            if quartic.is_singular_at(&p) {
                return Err(cert_fail(format!("secant images {p} keep landing on singular points")));
            }
        }
        if !quartic.eval(&p).is_zero() {
            return Err(cert_fail(format!("secant image {p} is off the quartic")));
        }
        let rank = fiber_conic(cm, &p)?.conic.rank;
        if rank > 2 {
            return Err(cert_fail(format!("fiber over secant image {p} is smooth")));
        }
        summary.kummer_points += 1;
    }
    Ok(summary)
}

/// Image of a random point of ℙ⁴, required to have a smooth fiber and to lie
/// off the quartic. One resample is allowed when the image lands on the
/// quartic; the return value says whether it was used.
pub fn stable_sample(cm: &ClassifyingMap, quartic: &QuarticSurface, seed: u64, label: &str) -> Result<bool> {
    for attempt in 0..2 {
        let (p, rank) = random_stable_candidate(cm, seed, &format!("{label}/{attempt}"))?;
        let on_quartic = quartic.eval(&p).is_zero();
        if (rank <= 2) != on_quartic {
            return Err(cert_fail(format!("rank {rank} fiber over {p} disagrees with the quartic")));
        }
        if rank == 3 {
            return Ok(attempt > 0);
        }
    }
    Err(cert_fail(format!("two random points for {label} landed on the quartic")))
}

/// A random point of ℙ⁴ off the curve and off the cone, its image and fiber rank.
pub fn random_stable_candidate(cm: &ClassifyingMap, seed: u64, label: &str) -> Result<(P3Point, usize)> {
    let ctx = cm.ctx();
    let mut rng = seed::rng(seed, label);
    for _ in 0..crate::curve::MAX_DRAWS {
        let z: [Scalar; 5] = std::array::from_fn(|_| ctx.random_element(&mut rng));
        let p = match cm.phi_eval(&z) {
            Ok(p) => p,
            Err(Error::BaseLocus) | Err(Error::InvalidInput(_)) => continue,
            Err(e) => return Err(e),
        };
        if p.is_origin() {
            continue;
        }
        let fr = fiber_conic(cm, &p)?;
        return Ok((p, fr.conic.rank));
    }
    Err(Error::Exhausted(crate::curve::MAX_DRAWS))
}
