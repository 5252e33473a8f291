//! The quadrics through the tricanonical curve and the rational map
//! φ: ℙ⁴ ⇢ ℙ³ they define.
//!
//! The basis is fixed as the three Hankel minors of the twisted cubic plus
//! z₄² − Q_f. With this choice the vertex cone maps to [0:0:0:1] and forgetting
//! the last coordinate is the projection from that point.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::curve::HyperellipticCurve;
use crate::error::{cert_fail, Error, Result};
use crate::field::{FieldContext, Scalar};
use crate::matrix::ExactMatrix;
use crate::poly::{monomials_of_degree, MultiPoly};
use crate::seed;

pub const Z_VARS: [&str; 5] = ["z0", "z1", "z2", "z3", "z4"];

/// Name recorded in reports for the coordinate choice on ℙ³.
pub const BASIS_NAME: &str = "hankel-minors+z4^2-Qf";

/// Random cone points checked when certifying the origin.
pub const CONE_SAMPLES: usize = 10;

/// A point of ℙ³, scaled so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct P3Point(pub [Scalar; 4]);

impl P3Point {
    pub fn new(coords: [Scalar; 4]) -> Result<Self> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()) else {
            return Err(Error::InvalidInput("all coordinates are zero".into()));
        };
        let inv = lead.inv().expect("nonzero");
        Ok(P3Point(coords.map(|c| &c * &inv)))
    }

    pub fn origin(ctx: FieldContext) -> Self {
        P3Point([ctx.zero(), ctx.zero(), ctx.zero(), ctx.one()])
    }

    pub fn ctx(&self) -> FieldContext {
        self.0[3].ctx()
    }

    pub fn is_origin(&self) -> bool {
        self.0[..3].iter().all(Scalar::is_zero)
    }

    pub fn coords(&self) -> &[Scalar; 4] {
        &self.0
    }
}

impl fmt::Display for P3Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}:{}]", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl Serialize for P3Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Image of p ≠ origin under the projection from the origin, and the
/// matching divisor parameter c₀ + c₁x + c₂x².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaImage {
    pub delta: [Scalar; 3],
    pub c: [Scalar; 3],
}

#[derive(Clone, Debug)]
pub struct ClassifyingMap {
    curve: HyperellipticCurve,
    quadrics: [MultiPoly; 4],
    certified_dim: usize,
}

impl ClassifyingMap {
    /// Builds the canonical basis and certifies that it spans the kernel of
    /// Sym²H⁰(ω³) → H⁰(ω⁶).
    pub fn build(curve: &HyperellipticCurve) -> Result<Self> {
        let quadrics = canonical_quadrics(curve);
        let kernel = quadric_kernel(curve);
        if kernel.len() != 4 {
            return Err(cert_fail(format!("quadric kernel has dimension {}, expected 4", kernel.len())));
        }
        let ctx = curve.ctx();
        let monos = monomials_of_degree(5, 2);
        let rows: Vec<Vec<Scalar>> = quadrics.iter().map(|q| monos.iter().map(|m| q.coefficient(&m.0)).collect()).collect();
        let basis = ExactMatrix::from_rows(ctx, monos.len(), rows)?;
        if basis.rank() != 4 {
            return Err(cert_fail("canonical quadrics are linearly dependent"));
        }
        let kmat = ExactMatrix::from_rows(ctx, monos.len(), kernel)?;
        if basis.vstack(&kmat)?.rank() != 4 {
            return Err(cert_fail("canonical quadrics do not span the computed kernel"));
        }
        Ok(ClassifyingMap { curve: curve.clone(), quadrics, certified_dim: 4 })
    }

    pub fn curve(&self) -> &HyperellipticCurve {
        &self.curve
    }

    pub fn ctx(&self) -> FieldContext {
        self.curve.ctx()
    }

    /// [m₀, m₁, m₂, q₃] in the variables z0..z4.
    pub fn quadrics(&self) -> &[MultiPoly; 4] {
        &self.quadrics
    }

    pub fn certified_dim(&self) -> usize {
        self.certified_dim
    }

    /// Values of the four quadrics, evaluated from their closed forms.
    pub fn quadric_values(&self, z: &[Scalar; 5]) -> [Scalar; 4] {
        let m0 = &(&z[0] * &z[2]) - &(&z[1] * &z[1]);
        let m1 = &(&z[0] * &z[3]) - &(&z[1] * &z[2]);
        let m2 = &(&z[1] * &z[3]) - &(&z[2] * &z[2]);
        let q3 = &(&z[4] * &z[4]) - &self.q_f(z);
        [m0, m1, m2, q3]
    }

    fn q_f(&self, z: &[Scalar; 5]) -> Scalar {
        let f = |i| self.curve.coeff(i);
        let pairs = [(0, 0, 0), (1, 0, 1), (2, 0, 2), (3, 0, 3), (4, 1, 3), (5, 2, 3), (6, 3, 3)];
        pairs.iter().fold(self.ctx().zero(), |acc, &(i, a, b)| &acc + &(&f(i) * &(&z[a] * &z[b])))
    }

    pub fn phi_eval(&self, z: &[Scalar; 5]) -> Result<P3Point> {
        if z.iter().any(|c| c.ctx() != self.ctx()) {
            return Err(Error::ContextMismatch);
        }
        if z.iter().all(Scalar::is_zero) {
            return Err(Error::InvalidInput("the zero vector is not a point of P^4".into()));
        }
        let vals = self.quadric_values(z);
        if vals.iter().all(Scalar::is_zero) {
            return Err(if self.curve.on_embedded_curve(z) { Error::BaseLocus } else { Error::IndeterminateImage });
        }
        P3Point::new(vals)
    }

    /// The image of the cone over the twisted cubic, certified on random cone points.
    pub fn certify_origin(&self, seed: u64) -> Result<P3Point> {
        let origin = P3Point::origin(self.ctx());
        let mut rng = seed::rng(seed, "origin-cone");
        for _ in 0..CONE_SAMPLES {
            let z = loop {
                let z = random_cone_point(self.ctx(), &mut rng);
                if !self.curve.on_embedded_curve(&z) {
                    break z;
                }
            };
            let img = self.phi_eval(&z)?;
            if img != origin {
                return Err(cert_fail(format!("cone point maps to {img}, not the origin")));
            }
        }
        Ok(origin)
    }
}

/// A point [1 : x : x² : x³ : t] of the cone over the twisted cubic.
pub fn random_cone_point<R: Rng + ?Sized>(ctx: FieldContext, rng: &mut R) -> [Scalar; 5] {
    let x = ctx.random_element(rng);
    let t = ctx.random_element(rng);
    let x2 = &x * &x;
    let x3 = &x2 * &x;
    [ctx.one(), x, x2, x3, t]
}

/// Projection from the origin, with c = [p₂ : −p₁ : p₀].
pub fn delta_eval(p: &P3Point) -> Result<DeltaImage> {
    if p.is_origin() {
        return Err(Error::OriginProjection);
    }
    let [p0, p1, p2, _] = p.0.clone();
    Ok(DeltaImage { c: [p2.clone(), -&p1, p0.clone()], delta: [p0, p1, p2] })
}

fn canonical_quadrics(curve: &HyperellipticCurve) -> [MultiPoly; 4] {
    let ctx = curve.ctx();
    let one = ctx.one();
    let neg = -&one;
    let e = |i: usize, j: usize| {
        let mut v = vec![0u32; 5];
        v[i] += 1;
        v[j] += 1;
        v
    };
    let build = |terms: Vec<(Vec<u32>, Scalar)>| MultiPoly::from_terms(ctx, &Z_VARS, terms).expect("same field");
    let m0 = build(vec![(e(0, 2), one.clone()), (e(1, 1), neg.clone())]);
    let m1 = build(vec![(e(0, 3), one.clone()), (e(1, 2), neg.clone())]);
    let m2 = build(vec![(e(1, 3), one.clone()), (e(2, 2), neg.clone())]);
    let pairs = [(0, 0, 0), (1, 0, 1), (2, 0, 2), (3, 0, 3), (4, 1, 3), (5, 2, 3), (6, 3, 3)];
    let mut q3 = vec![(e(4, 4), one)];
    q3.extend(pairs.iter().map(|&(i, a, b)| (e(a, b), -&curve.coeff(i))));
    [m0, m1, m2, build(q3)]
}

/// Kernel of Sym²H⁰(ω³) → H⁰(ω⁶), as coefficient vectors on the
/// degree-2 monomials in z0..z4 (descending grlex).
///
/// z₀..z₃ ↦ 1, x, x², x³ and z₄ ↦ y; products are reduced with y² = f, so
/// a section of ω⁶ is a(x) + b(x)y with deg a ≤ 6 and deg b ≤ 3.
pub fn quadric_kernel(curve: &HyperellipticCurve) -> Vec<Vec<Scalar>> {
    multiplication_matrix(curve).kernel_basis()
}

/// The 11×15 matrix of Sym²H⁰(ω³) → H⁰(ω⁶).
pub fn multiplication_matrix(curve: &HyperellipticCurve) -> ExactMatrix {
    let ctx = curve.ctx();
    let monos = monomials_of_degree(5, 2);
    let mut m = ExactMatrix::zeros(ctx, 11, monos.len());
    for (col, mono) in monos.iter().enumerate() {
        let e = &mono.0;
        let xdeg: u32 = e[1] + 2 * e[2] + 3 * e[3];
        match e[4] {
            0 => m.set(xdeg as usize, col, ctx.one()),
            1 => m.set(7 + xdeg as usize, col, ctx.one()),
            _ => {
                for i in 0..=6 {
                    m.set(i, col, curve.coeff(i));
                }
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurvePoint;
    use crate::univariate::UniPoly;

    fn fp(p: u64) -> FieldContext {
        FieldContext::prime(p).unwrap()
    }

    fn sextic(ctx: FieldContext) -> HyperellipticCurve {
        HyperellipticCurve::new(UniPoly::from_i64(ctx, &[-1, 0, 0, 0, 0, 0, 1])).unwrap()
    }

    fn embed_x(ctx: FieldContext, x: i64, y: &Scalar) -> [Scalar; 5] {
        let x = ctx.from_i64(x);
        [ctx.one(), x.clone(), &x * &x, &(&x * &x) * &x, y.clone()]
    }

    #[test]
    fn kernel_dimension_and_span() {
        for ctx in [fp(10007), fp(10009), FieldContext::rationals()] {
            let c = sextic(ctx);
            assert_eq!(multiplication_matrix(&c).rank(), 11);
            assert_eq!(quadric_kernel(&c).len(), 4);
            assert_eq!(ClassifyingMap::build(&c).unwrap().certified_dim(), 4);
        }
    }

    #[test]
    fn q_f_for_the_reference_sextic() {
        let c = sextic(FieldContext::rationals());
        let cm = ClassifyingMap::build(&c).unwrap();
        let expected = MultiPoly::parse_in("z4^2 - z3^2 + z0^2", c.ctx(), &Z_VARS).unwrap();
        assert_eq!(cm.quadrics()[3], expected);
    }

    #[test]
    fn quadrics_vanish_on_curve_and_are_even() {
        let ctx = fp(10009);
        let c = sextic(ctx);
        let cm = ClassifyingMap::build(&c).unwrap();
        for i in 0..30 {
            let pt = c.random_curve_point(9, &format!("on-curve/{i}")).unwrap();
            let z = c.embed_tricanonical(&pt).unwrap();
            for q in cm.quadrics() {
                assert!(q.eval(&z).unwrap().is_zero());
            }
            assert_eq!(cm.phi_eval(&z), Err(Error::BaseLocus));
        }
        for q in cm.quadrics() {
            assert!(q.terms().all(|(m, _)| m.0[4] % 2 == 0));
        }
    }

    #[test]
    fn closed_forms_match_polynomials() {
        let ctx = fp(10009);
        let cm = ClassifyingMap::build(&sextic(ctx)).unwrap();
        let mut rng = seed::rng(1, "closed");
        for _ in 0..20 {
            let z: [Scalar; 5] = std::array::from_fn(|_| ctx.random_element(&mut rng));
            let vals = cm.quadric_values(&z);
            for (q, v) in cm.quadrics().iter().zip(&vals) {
                assert_eq!(&q.eval(&z).unwrap(), v);
            }
        }
    }

    #[test]
    fn invariant_secants_map_to_origin() {
        let ctx = fp(10009);
        let cm = ClassifyingMap::build(&sextic(ctx)).unwrap();
        let origin = P3Point::origin(ctx);
        for t in [2, 5, 77] {
            assert_eq!(cm.phi_eval(&embed_x(ctx, 3, &ctx.from_i64(t))).unwrap(), origin);
        }
        let vertex = [ctx.zero(), ctx.zero(), ctx.zero(), ctx.zero(), ctx.one()];
        assert_eq!(cm.phi_eval(&vertex).unwrap(), origin);
        // x₀ = 0, t = 1 with f(0) = -1 ≠ 1
        assert_eq!(cm.phi_eval(&embed_x(ctx, 0, &ctx.one())).unwrap(), origin);
        assert_eq!(cm.certify_origin(42).unwrap(), origin);
    }

    #[test]
    fn chord_through_x_one_and_two() {
        // Over Q: points over x = 1 and x = 2 need not be rational, but the
        // chord formula only involves the minors, which ignore z4.
        let q = FieldContext::rationals();
        let cm = ClassifyingMap::build(&sextic(q)).unwrap();
        let a = embed_x(q, 1, &q.zero());
        let b = embed_x(q, 2, &q.from_i64(5));
        let z: [Scalar; 5] = std::array::from_fn(|i| &a[i] + &(&q.from_i64(3) * &b[i]));
        let p = cm.phi_eval(&z).unwrap();
        let d = delta_eval(&p).unwrap();
        let norm = d.delta[0].inv().unwrap();
        let delta: Vec<Scalar> = d.delta.iter().map(|v| v * &norm).collect();
        assert_eq!(delta, vec![q.from_i64(1), q.from_i64(3), q.from_i64(2)]);
        let c: Vec<Scalar> = d.c.iter().map(|v| v * &norm).collect();
        assert_eq!(c, vec![q.from_i64(2), q.from_i64(-3), q.from_i64(1)]);
    }

    #[test]
    fn tangent_direction_gives_a_double_root() {
        let q = FieldContext::rationals();
        let cm = ClassifyingMap::build(&sextic(q)).unwrap();
        let r = q.from_i64(4);
        // v(r) + v'(r) on the tangent line of the cubic at r.
        let z = [
            q.one(),
            &r + &q.one(),
            &(&r * &r) + &(&q.from_i64(2) * &r),
            &(&(&r * &r) * &r) + &(&q.from_i64(3) * &(&r * &r)),
            q.from_i64(7),
        ];
        let p = cm.phi_eval(&z).unwrap();
        let c = delta_eval(&p).unwrap().c;
        let norm = c[2].inv().unwrap();
        let c: Vec<Scalar> = c.iter().map(|v| v * &norm).collect();
        assert_eq!(c, vec![&r * &r, &q.from_i64(-2) * &r, q.one()]);
    }

    #[test]
    fn delta_rejects_origin() {
        assert_eq!(delta_eval(&P3Point::origin(fp(10009))), Err(Error::OriginProjection));
    }

    #[test]
    fn phi_properties_on_random_points() {
        let ctx = fp(10009);
        let c = sextic(ctx);
        let cm = ClassifyingMap::build(&c).unwrap();
        let mut rng = seed::rng(11, "phi");
        for _ in 0..50 {
            let z: [Scalar; 5] = std::array::from_fn(|_| ctx.random_element(&mut rng));
            if c.on_embedded_curve(&z) || z.iter().all(Scalar::is_zero) {
                continue;
            }
            let p = cm.phi_eval(&z).expect("off the curve some quadric is nonzero");
            let mut zn = z.clone();
            zn[4] = -&zn[4];
            assert_eq!(cm.phi_eval(&zn).unwrap(), p);
            // Δ∘φ ignores z4.
            let mut zs = z.clone();
            zs[4] = ctx.random_element(&mut rng);
            if let Ok(a) = cm.phi_eval(&zs) {
                if !a.is_origin() && !p.is_origin() {
                    assert_eq!(delta_eval(&a).unwrap().c, delta_eval(&p).unwrap().c);
                }
            }
        }
        for i in 0..20 {
            let a = c.random_curve_point(12, &format!("chord-a/{i}")).unwrap();
            let b = c.random_curve_point(12, &format!("chord-b/{i}")).unwrap();
            let (CurvePoint::Affine { x: xa, .. }, CurvePoint::Affine { x: xb, .. }) = (&a, &b) else { unreachable!() };
            if xa == xb {
                continue;
            }
            let va = c.embed_tricanonical(&a).unwrap();
            let vb = c.embed_tricanonical(&b).unwrap();
            let images: Vec<P3Point> = [2i64, 3, 5]
                .iter()
                .map(|&t| {
                    let t = ctx.from_i64(t);
                    let z: [Scalar; 5] = std::array::from_fn(|k| &va[k] + &(&t * &vb[k]));
                    cm.phi_eval(&z).unwrap()
                })
                .collect();
            assert!(images.windows(2).all(|w| w[0] == w[1]));
        }
    }
}
