//! Fibers of φ as plane conics.
//!
//! Every line through the origin of ℙ³ comes from a divisor parameter c; its
//! preimage is the plane cut out by c₀z₀+c₁z₁+c₂z₂ = 0 and c₀z₁+c₁z₂+c₂z₃ = 0.
//! On that plane the three minors restrict to multiples of a single conic G₀,
//! so the fibers over the line form the pencil t₀G₁ − t₁G₀ with G₁ the
//! restriction of q₃.

use serde::Serialize;

use crate::classifier::{delta_eval, ClassifyingMap, P3Point};
use crate::curve::{Branch, CurvePoint, HyperellipticCurve};
use crate::error::{cert_fail, Error, Result};
use crate::field::{FieldContext, Scalar};
use crate::matrix::ExactMatrix;
use crate::poly::MultiPoly;
use crate::univariate::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneForDivisor {
    pub c: [Scalar; 3],
    /// u₀, u₁, u₂ with u₂ = e₄.
    pub basis: [[Scalar; 5]; 3],
    /// z-coordinates that read off s₀, s₁, s₂ for a point of the plane.
    pub coordinate_columns: [usize; 3],
}

impl PlaneForDivisor {
    /// Plane coordinates of a point of ℙ⁴ lying on the plane.
    pub fn coordinates_of(&self, z: &[Scalar; 5]) -> Result<[Scalar; 3]> {
        let s = self.coordinate_columns.map(|i| z[i].clone());
        let back = self.point_at(&s);
        if &back != z {
            return Err(Error::InvalidInput("point is not on the plane".into()));
        }
        Ok(s)
    }

    pub fn point_at(&self, s: &[Scalar; 3]) -> [Scalar; 5] {
        std::array::from_fn(|i| (0..3).fold(s[0].ctx().zero(), |acc, k| &acc + &(&s[k] * &self.basis[k][i])))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum FiberClass {
    Stable,
    SemistableBoundary,
    TwoTorsion,
}

impl FiberClass {
    pub fn from_rank(rank: usize) -> Option<Self> {
        match rank {
            3 => Some(FiberClass::Stable),
            2 => Some(FiberClass::SemistableBoundary),
            1 => Some(FiberClass::TwoTorsion),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            FiberClass::Stable => "stable",
            FiberClass::SemistableBoundary => "semistable_boundary",
            FiberClass::TwoTorsion => "two_torsion",
        }
    }
}

/// A plane conic given by its symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    pub gram: ExactMatrix,
    pub rank: usize,
}

impl Conic {
    pub fn from_gram(gram: ExactMatrix) -> Self {
        let rank = gram.rank();
        Conic { gram, rank }
    }

    pub fn eval(&self, s: &[Scalar; 3]) -> Scalar {
        let gs = self.gram.mul_vec(s).expect("3-vector");
        gs.iter().zip(s).fold(s[0].ctx().zero(), |acc, (a, b)| &acc + &(a * b))
    }

    /// Upper-triangle entries (00, 01, 02, 11, 12, 22).
    pub fn entries(&self) -> [Scalar; 6] {
        let g = &self.gram;
        [g.get(0, 0), g.get(0, 1), g.get(0, 2), g.get(1, 1), g.get(1, 2), g.get(2, 2)].map(Clone::clone)
    }

    pub fn scale(&self, c: &Scalar) -> Conic {
        let rows = self.gram.to_rows().into_iter().map(|r| r.iter().map(|v| v * c).collect()).collect();
        Conic::from_gram(ExactMatrix::from_rows(self.gram.ctx(), 3, rows).expect("3x3"))
    }

    fn combine(a: &Scalar, x: &Conic, b: &Scalar, y: &Conic) -> Conic {
        let rows = (0..3)
            .map(|i| (0..3).map(|j| &(a * x.gram.get(i, j)) + &(b * y.gram.get(i, j))).collect())
            .collect();
        Conic::from_gram(ExactMatrix::from_rows(x.gram.ctx(), 3, rows).expect("3x3"))
    }

    /// True when the two conics agree up to a nonzero scalar.
    pub fn proportional(&self, other: &Conic) -> bool {
        let a = self.entries();
        let b = other.entries();
        let m = ExactMatrix::from_rows(self.gram.ctx(), 6, vec![a.to_vec(), b.to_vec()]).expect("same field");
        let zero_a = a.iter().all(Scalar::is_zero);
        let zero_b = b.iter().all(Scalar::is_zero);
        zero_a == zero_b && m.rank() <= 1
    }
}

#[derive(Clone, Debug)]
pub struct PencilFamily {
    pub plane: PlaneForDivisor,
    pub g0: Conic,
    pub g1: Conic,
    /// Δ-direction of the image line: mᵢ restricts to dᵢ·G₀.
    pub d: [Scalar; 3],
}

impl PencilFamily {
    /// t₀·G₁ − t₁·G₀.
    pub fn member(&self, t0: &Scalar, t1: &Scalar) -> Conic {
        Conic::combine(t0, &self.g1, &-t1, &self.g0)
    }

    /// [d₀t₀ : d₁t₀ : d₂t₀ : t₁].
    pub fn point_at(&self, t0: &Scalar, t1: &Scalar) -> Result<P3Point> {
        P3Point::new([&self.d[0] * t0, &self.d[1] * t0, &self.d[2] * t0, t1.clone()])
    }

    /// The parameter (t₀, t₁) of a point on the image line.
    pub fn parameter_of(&self, p: &P3Point) -> Result<(Scalar, Scalar)> {
        let i = (0..3).find(|&i| !self.d[i].is_zero()).expect("d is nonzero");
        let t0 = &p.0[i] * &self.d[i].inv().expect("nonzero");
        for j in 0..3 {
            if p.0[j] != &self.d[j] * &t0 {
                return Err(cert_fail(format!("{p} is not on the pencil line")));
            }
        }
        Ok((t0, p.0[3].clone()))
    }
}

/// The plane spanned by the divisor with parameter c, vertex last.
pub fn plane_for_parameter(c: &[Scalar; 3]) -> Result<PlaneForDivisor> {
    let ctx = c[0].ctx();
    if c.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroParameter);
    }
    let zero = ctx.zero();
    let rows = vec![
        vec![c[0].clone(), c[1].clone(), c[2].clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), c[0].clone(), c[1].clone(), c[2].clone(), zero.clone()],
    ];
    let m = ExactMatrix::from_rows(ctx, 5, rows)?;
    let rref = m.rref();
    if rref.rank != 2 {
        return Err(cert_fail("plane conditions have rank below 2"));
    }
    let kernel = m.kernel_basis();
    let free: Vec<usize> = (0..5).filter(|i| !rref.pivots.contains(i)).collect();
    debug_assert_eq!(free.last(), Some(&4));
    let basis: [[Scalar; 5]; 3] =
        std::array::from_fn(|k| std::array::from_fn(|i| kernel[k][i].clone()));
    Ok(PlaneForDivisor { c: c.clone(), basis, coordinate_columns: [free[0], free[1], free[2]] })
}

/// Symmetric 5×5 matrix of a quadratic form in z0..z4.
pub fn quadric_matrix(q: &MultiPoly) -> ExactMatrix {
    let ctx = q.ctx();
    let half = ctx.from_i64(2).inv().expect("characteristic is not 2");
    let n = q.nvars();
    let mut a = ExactMatrix::zeros(ctx, n, n);
    for (m, c) in q.terms() {
        let idx: Vec<usize> = m.0.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect();
        assert_eq!(idx.len(), 2, "quadratic form expected");
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            a.set(i, i, c.clone());
        } else {
            let h = c * &half;
            a.set(i, j, h.clone());
            a.set(j, i, h);
        }
    }
    a
}

pub fn restrict_quadric(q: &MultiPoly, plane: &PlaneForDivisor) -> Conic {
    let ctx = q.ctx();
    let u = ExactMatrix::from_rows(ctx, 3, (0..5).map(|i| (0..3).map(|k| plane.basis[k][i].clone()).collect()).collect())
        .expect("5x3");
    let a = quadric_matrix(q);
    let gram = u.transpose().mul(&a).and_then(|m| m.mul(&u)).expect("shapes agree");
    Conic::from_gram(gram)
}

pub fn pencil_for_parameter(cm: &ClassifyingMap, c: &[Scalar; 3]) -> Result<PencilFamily> {
    let ctx = cm.ctx();
    let plane = plane_for_parameter(c)?;
    let q = cm.quadrics();
    let minors: Vec<Conic> = q[..3].iter().map(|m| restrict_quadric(m, &plane)).collect();
    let coeffs = ExactMatrix::from_rows(ctx, 6, minors.iter().map(|m| m.entries().to_vec()).collect())?;
    if coeffs.rank() != 1 {
        return Err(cert_fail(format!("restricted minors span rank {}, expected 1", coeffs.rank())));
    }
    let base = minors.iter().find(|m| m.entries().iter().any(|v| !v.is_zero())).expect("rank 1");
    let e = base.entries();
    let k = e.iter().position(|v| !v.is_zero()).expect("nonzero");
    let g0 = base.scale(&e[k].inv().expect("nonzero"));
    // G₀ has a 1 in position k, so dᵢ is read off there.
    let d: [Scalar; 3] = std::array::from_fn(|i| minors[i].entries()[k].clone());
    for i in 0..3 {
        if minors[i] != g0.scale(&d[i]) {
            return Err(cert_fail("restricted minor is not a multiple of G0"));
        }
    }
    let expected = [d[2].clone(), -&d[1], d[0].clone()];
    let consistency = ExactMatrix::from_rows(ctx, 3, vec![expected.to_vec(), c.to_vec()])?;
    if consistency.rank() != 1 {
        return Err(cert_fail("image line direction does not match the divisor parameter"));
    }
    let g1 = restrict_quadric(&q[3], &plane);
    Ok(PencilFamily { plane, g0, g1, d })
}

#[derive(Clone, Debug)]
pub struct FiberResult {
    pub conic: Conic,
    pub class: FiberClass,
    pub pencil: PencilFamily,
    /// None when the divisor points are not all defined over the field.
    pub divisor_checked: Option<bool>,
}

/// The conic fiber of φ over p ≠ origin, classified by rank.
pub fn fiber_conic(cm: &ClassifyingMap, p: &P3Point) -> Result<FiberResult> {
    if p.ctx() != cm.ctx() {
        return Err(Error::ContextMismatch);
    }
    if p.is_origin() {
        return Err(Error::OriginFiber);
    }
    let c = delta_eval(p)?.c;
    let pencil = pencil_for_parameter(cm, &c)?;
    let (t0, t1) = pencil.parameter_of(p)?;
    let conic = pencil.member(&t0, &t1);
    let class = FiberClass::from_rank(conic.rank)
        .ok_or_else(|| cert_fail(format!("fiber over {p} has rank {}", conic.rank)))?;
    let divisor_checked = match divisor_points(cm.curve(), &c)? {
        Some(points) => {
            let mut ok = true;
            for pt in &points {
                let z = cm.curve().embed_tricanonical(pt)?;
                let s = pencil.plane.coordinates_of(&z).map_err(|_| cert_fail("divisor point is off its plane"))?;
                ok &= conic.eval(&s).is_zero();
            }
            Some(ok)
        }
        None => None,
    };
    if divisor_checked == Some(false) {
        return Err(cert_fail(format!("fiber over {p} misses a divisor point")));
    }
    Ok(FiberResult { conic, class, pencil, divisor_checked })
}

/// The four points of the divisor with parameter c, when c has two distinct
/// roots in the field and every lift to the curve is rational.
pub fn divisor_points(curve: &HyperellipticCurve, c: &[Scalar; 3]) -> Result<Option<Vec<CurvePoint>>> {
    let ctx = curve.ctx();
    if c.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroParameter);
    }
    let q = UniPoly::new(ctx, c.to_vec())?;
    let data = q.roots()?;
    if data.residual_degree > 0 || data.roots.iter().any(|(_, m)| *m > 1) {
        return Ok(None);
    }
    let mut points = Vec::new();
    for (x, _) in &data.roots {
        let Some(y) = curve.f().eval(x).sqrt() else { return Ok(None) };
        points.push(CurvePoint::Affine { x: x.clone(), y: y.clone() });
        points.push(CurvePoint::Affine { x: x.clone(), y: -&y });
    }
    match q.degree() {
        Some(2) => {}
        Some(1) => {
            if curve.sqrt_leading().is_err() {
                return Ok(None);
            }
            points.push(CurvePoint::Infinite(Branch::Plus));
            points.push(CurvePoint::Infinite(Branch::Minus));
        }
        _ => return Ok(None),
    }
    Ok(Some(points))
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerateMember {
    pub t: [Scalar; 2],
    pub multiplicity: u32,
    pub point: P3Point,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct DegenerateMembers {
    pub pencil: PencilFamily,
    /// δ(t₀,t₁) coefficients a₀..a₃ of t₀^k·t₁^(3−k).
    pub delta: [Scalar; 4],
    pub roots: Vec<DegenerateMember>,
    pub residual_degree: usize,
    /// Discriminant of an unsplit quadratic residual.
    pub residual_discriminant: Option<Scalar>,
}

impl DegenerateMembers {
    pub fn origin_multiplicity(&self) -> u32 {
        self.roots.iter().find(|r| r.t[0].is_zero()).map_or(0, |r| r.multiplicity)
    }
}

/// Degenerate members of the pencil over c: roots of δ = det(t₀G₁ − t₁G₀).
pub fn degenerate_members(cm: &ClassifyingMap, c: &[Scalar; 3]) -> Result<DegenerateMembers> {
    let ctx = cm.ctx();
    let pencil = pencil_for_parameter(cm, c)?;
    let delta = binary_cubic_det(&pencil);
    if delta.iter().all(Scalar::is_zero) {
        return Err(cert_fail("pencil determinant vanishes identically"));
    }
    if !delta[0].is_zero() {
        return Err(cert_fail("t0 does not divide the pencil determinant"));
    }
    let mut roots = Vec::new();
    let origin_mult = delta.iter().position(|a| !a.is_zero()).expect("nonzero") as u32;
    let (zero, one) = (ctx.zero(), ctx.one());
    roots.push(DegenerateMember {
        t: [zero.clone(), one.clone()],
        multiplicity: origin_mult,
        point: pencil.point_at(&zero, &one)?,
        rank: pencil.member(&zero, &one).rank,
    });
    // δ(1, t) = Σ a_k t^(3−k)
    let dehom = UniPoly::new(ctx, (0..4).map(|j| delta[3 - j].clone()).collect())?;
    let data = dehom.roots()?;
    let mut rest = dehom.clone();
    for (t, m) in &data.roots {
        for _ in 0..*m {
            rest = rest.divrem(&UniPoly::linear_root(t))?.0;
        }
        roots.push(DegenerateMember {
            t: [one.clone(), t.clone()],
            multiplicity: *m,
            point: pencil.point_at(&one, t)?,
            rank: pencil.member(&one, t).rank,
        });
    }
    let residual_discriminant = (data.residual_degree == 2).then(|| {
        let (a, b, c) = (rest.coeff(2), rest.coeff(1), rest.coeff(0));
        &(&b * &b) - &(&ctx.from_i64(4) * &(&a * &c))
    });
    Ok(DegenerateMembers { pencil, delta, roots, residual_degree: data.residual_degree, residual_discriminant })
}

/// Coefficients of det(t₀G₁ − t₁G₀) on t₀^k t₁^(3−k), k = 0..3.
fn binary_cubic_det(pencil: &PencilFamily) -> [Scalar; 4] {
    let ctx = pencil.g0.gram.ctx();
    let vars = ["t0", "t1"];
    let t0 = MultiPoly::var(ctx, &vars, "t0").expect("known variable");
    let t1 = MultiPoly::var(ctx, &vars, "t1").expect("known variable");
    let entry = |i: usize, j: usize| {
        &t0.scale(pencil.g1.gram.get(i, j)) - &t1.scale(pencil.g0.gram.get(i, j))
    };
    let m: Vec<Vec<MultiPoly>> = (0..3).map(|i| (0..3).map(|j| entry(i, j)).collect()).collect();
    let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
    let det = &(&(&m[0][0] * &minor(1, 2, 2, 1)) - &(&m[0][1] * &minor(0, 2, 2, 0))) + &(&m[0][2] * &minor(0, 1, 1, 0));
    std::array::from_fn(|k| det.coefficient(&[k as u32, 3 - k as u32]))
}

/// 2 when c₀x₀² + c₁x₀x₁ + c₂x₁² has two distinct roots on ℙ¹, else 1.
pub fn sym_cover_count(c: &[Scalar; 3]) -> Result<u32> {
    if c.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroParameter);
    }
    let disc = &(&c[1] * &c[1]) - &(&c[0].ctx().from_i64(4) * &(&c[0] * &c[2]));
    Ok(if disc.is_zero() { 1 } else { 2 })
}

/// True when c lies on the conic c₁² = 4c₀c₂ of doubled divisors.
pub fn on_veronese_conic(c: &[Scalar; 3]) -> bool {
    let disc = &(&c[1] * &c[1]) - &(&c[0].ctx().from_i64(4) * &(&c[0] * &c[2]));
    disc.is_zero()
}

pub fn parameter_from_i64(ctx: FieldContext, c: [i64; 3]) -> [Scalar; 3] {
    c.map(|v| ctx.from_i64(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::Z_VARS;
    use crate::seed;
    use rand::Rng;

    fn fp(p: u64) -> FieldContext {
        FieldContext::prime(p).unwrap()
    }

    fn setup(ctx: FieldContext) -> ClassifyingMap {
        let c = HyperellipticCurve::new(UniPoly::from_i64(ctx, &[-1, 0, 0, 0, 0, 0, 1])).unwrap();
        ClassifyingMap::build(&c).unwrap()
    }

    fn e(ctx: FieldContext, i: usize) -> [Scalar; 5] {
        std::array::from_fn(|k| if k == i { ctx.one() } else { ctx.zero() })
    }

    #[test]
    fn plane_for_x_squared() {
        let ctx = fp(10009);
        let plane = plane_for_parameter(&parameter_from_i64(ctx, [0, 0, 1])).unwrap();
        assert_eq!(plane.basis, [e(ctx, 0), e(ctx, 1), e(ctx, 4)]);
        assert_eq!(plane_for_parameter(&parameter_from_i64(ctx, [0, 0, 0])), Err(Error::ZeroParameter));
    }

    #[test]
    fn divisor_points_lie_on_plane() {
        let ctx = fp(10009);
        let cm = setup(ctx);
        let mut rng = seed::rng(2, "plane");
        for _ in 0..20 {
            let c: [Scalar; 3] = std::array::from_fn(|_| ctx.random_element(&mut rng));
            if c.iter().all(Scalar::is_zero) {
                continue;
            }
            let plane = plane_for_parameter(&c).unwrap();
            assert_eq!(plane.basis[2], e(ctx, 4));
            if let Some(points) = divisor_points(cm.curve(), &c).unwrap() {
                for pt in points {
                    let z = cm.curve().embed_tricanonical(&pt).unwrap();
                    assert!(plane.coordinates_of(&z).is_ok());
                }
            }
        }
        // (x - 1)(x - 2): the points over x = 1 are Weierstrass points.
        let c = parameter_from_i64(ctx, [2, -3, 1]);
        let plane = plane_for_parameter(&c).unwrap();
        let z1 = cm.curve().embed_tricanonical(&CurvePoint::Affine { x: ctx.one(), y: ctx.zero() }).unwrap();
        assert!(plane.coordinates_of(&z1).is_ok());
    }

    #[test]
    fn restriction_ranks() {
        let ctx = fp(10009);
        let plane = plane_for_parameter(&parameter_from_i64(ctx, [0, 0, 1])).unwrap();
        let r = |s: &str| restrict_quadric(&MultiPoly::parse_in(s, ctx, &Z_VARS).unwrap(), &plane).rank;
        assert_eq!(r("z0^2"), 1);
        assert_eq!(r("z0*z1"), 2);
        assert_eq!(r("z0^2 + z1^2 + z4^2"), 3);
    }

    #[test]
    fn pencil_structure() {
        let ctx = fp(10009);
        let cm = setup(ctx);
        let mut rng = seed::rng(4, "pencils");
        for _ in 0..100 {
            let c: [Scalar; 3] = std::array::from_fn(|_| ctx.random_element(&mut rng));
            if c.iter().all(Scalar::is_zero) {
                continue;
            }
            let pencil = pencil_for_parameter(&cm, &c).unwrap();
            let expected = if on_veronese_conic(&c) { 1 } else { 2 };
            assert_eq!(pencil.g0.rank, expected);
            let origin_member = pencil.member(&ctx.zero(), &ctx.one());
            assert!(origin_member.proportional(&pencil.g0));
            for g in [&pencil.g0, &pencil.g1] {
                for (i, j) in [(0, 2), (1, 2)] {
                    assert!(g.gram.get(i, j).is_zero());
                }
            }
        }
        let r = ctx.from_i64(7);
        let c = [&r * &r, &ctx.from_i64(-2) * &r, ctx.one()];
        assert_eq!(pencil_for_parameter(&cm, &c).unwrap().g0.rank, 1);
        let dm = degenerate_members(&cm, &c).unwrap();
        assert!(dm.origin_multiplicity() >= 2);
    }

    #[test]
    fn fiber_classes() {
        let ctx = fp(10009);
        let cm = setup(ctx);
        let curve = cm.curve().clone();
        let mut rng = seed::rng(5, "fibers");
        let mut stable = 0;
        while stable < 20 {
            let z: [Scalar; 5] = std::array::from_fn(|_| ctx.random_element(&mut rng));
            let Ok(p) = cm.phi_eval(&z) else { continue };
            if p.is_origin() {
                continue;
            }
            let fr = fiber_conic(&cm, &p).unwrap();
            assert_eq!(fr.class, FiberClass::Stable);
            let s = fr.pencil.plane.coordinates_of(&z).unwrap();
            assert!(fr.conic.eval(&s).is_zero());
            stable += 1;
        }
        for i in 0..10 {
            let a = curve.random_curve_point(6, &format!("a{i}")).unwrap();
            let b = curve.random_curve_point(6, &format!("b{i}")).unwrap();
            let va = curve.embed_tricanonical(&a).unwrap();
            let vb = curve.embed_tricanonical(&b).unwrap();
            if va[1] == vb[1] {
                continue;
            }
            let t = ctx.from_i64(rng.gen_range(2..1000));
            let z: [Scalar; 5] = std::array::from_fn(|k| &va[k] + &(&t * &vb[k]));
            let p = cm.phi_eval(&z).unwrap();
            let fr = fiber_conic(&cm, &p).unwrap();
            assert_eq!(fr.class, FiberClass::SemistableBoundary);
        }
        let w = curve.weierstrass_points().roots;
        let embed = |x: &Scalar| curve.embed_tricanonical(&CurvePoint::Affine { x: x.clone(), y: ctx.zero() }).unwrap();
        let (va, vb) = (embed(&w[0]), embed(&w[1]));
        let z: [Scalar; 5] = std::array::from_fn(|k| &va[k] + &vb[k]);
        let fr = fiber_conic(&cm, &cm.phi_eval(&z).unwrap()).unwrap();
        assert_eq!(fr.class, FiberClass::TwoTorsion);
        assert_eq!(fr.divisor_checked, Some(true));
        assert_eq!(fiber_conic(&cm, &P3Point::origin(ctx)).err(), Some(Error::OriginFiber));
    }

    #[test]
    fn pencil_members_are_fibers() {
        let ctx = fp(10009);
        let cm = setup(ctx);
        let mut rng = seed::rng(8, "members");
        for _ in 0..20 {
            let c: [Scalar; 3] = std::array::from_fn(|_| ctx.random_nonzero(&mut rng));
            let pencil = pencil_for_parameter(&cm, &c).unwrap();
            let (t0, t1) = (ctx.random_nonzero(&mut rng), ctx.random_element(&mut rng));
            let p = pencil.point_at(&t0, &t1).unwrap();
            let fr = fiber_conic(&cm, &p).unwrap();
            assert!(fr.conic.proportional(&pencil.member(&t0, &t1)));
        }
    }

    #[test]
    fn cover_counts() {
        let q = FieldContext::rationals();
        assert_eq!(sym_cover_count(&parameter_from_i64(q, [-1, 0, 1])).unwrap(), 2);
        assert_eq!(sym_cover_count(&parameter_from_i64(q, [1, -2, 1])).unwrap(), 1);
        assert_eq!(sym_cover_count(&parameter_from_i64(q, [0, 1, 0])).unwrap(), 2);
    }
}
