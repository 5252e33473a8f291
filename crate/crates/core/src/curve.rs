//! Genus-2 curves y² = f(x) with deg f = 6, their points, section spaces of
//! powers of the canonical bundle, and the tricanonical embedding in ℙ⁴.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldContext, Scalar};
use crate::seed;
use crate::univariate::UniPoly;

/// Draws allowed before random point sampling gives up.
pub const MAX_DRAWS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticCurve {
    f: UniPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint {
    Affine { x: Scalar, y: Scalar },
    /// One of the two points over x = ∞, where y/x³ → ±√f₆.
    Infinite(Branch),
}

/// A section x^i·y^e·(dx/y)^k with e ∈ {0, 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectionMonomial {
    pub x_power: u32,
    pub has_y: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionBasis {
    pub k: u32,
    /// Fixed by the hyperelliptic involution.
    pub plus: Vec<SectionMonomial>,
    /// Negated by the hyperelliptic involution.
    pub minus: Vec<SectionMonomial>,
}

impl SectionBasis {
    pub fn dim(&self) -> usize {
        self.plus.len() + self.minus.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassData {
    /// x-coordinates of the Weierstrass points found in the field.
    pub roots: Vec<Scalar>,
    pub residual_degree: usize,
}

impl WeierstrassData {
    pub fn is_split(&self) -> bool {
        self.residual_degree == 0
    }
}

impl HyperellipticCurve {
    pub fn new(f: UniPoly) -> Result<Self> {
        if let FieldContext::Prime(p) = f.ctx() {
            if p <= 7 {
                return Err(Error::BadCharacteristic(p));
            }
        }
        match f.degree() {
            Some(6) => {}
            Some(d) => return Err(Error::WrongDegree(d as i64)),
            None => return Err(Error::WrongDegree(-1)),
        }
        if !f.is_squarefree()? {
            return Err(Error::NotSmooth);
        }
        Ok(HyperellipticCurve { f })
    }

    /// Coefficients f₀..f₆ given lowest degree first; trailing coefficients may be omitted.
    pub fn from_coeffs(ctx: FieldContext, coeffs: &[Scalar]) -> Result<Self> {
        Self::new(UniPoly::new(ctx, coeffs.to_vec())?)
    }

    pub fn ctx(&self) -> FieldContext {
        self.f.ctx()
    }

    pub fn f(&self) -> &UniPoly {
        &self.f
    }

    /// f_i for 0 ≤ i ≤ 6.
    pub fn coeff(&self, i: usize) -> Scalar {
        self.f.coeff(i)
    }

    pub fn section_basis(&self, k: u32) -> SectionBasis {
        let plus = (0..=k).map(|i| SectionMonomial { x_power: i, has_y: false }).collect();
        let minus = if k >= 3 {
            (0..=k - 3).map(|j| SectionMonomial { x_power: j, has_y: true }).collect()
        } else {
            vec![]
        };
        SectionBasis { k, plus, minus }
    }

    pub fn contains(&self, pt: &CurvePoint) -> bool {
        match pt {
            CurvePoint::Affine { x, y } => {
                x.ctx() == self.ctx() && y.ctx() == self.ctx() && (y * y) == self.f.eval(x)
            }
            CurvePoint::Infinite(_) => true,
        }
    }

    /// The hyperelliptic involution (x, y) ↦ (x, −y).
    pub fn involution(&self, pt: &CurvePoint) -> CurvePoint {
        match pt {
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: x.clone(), y: -y },
            CurvePoint::Infinite(Branch::Plus) => CurvePoint::Infinite(Branch::Minus),
            CurvePoint::Infinite(Branch::Minus) => CurvePoint::Infinite(Branch::Plus),
        }
    }

    /// The root of f₆ used for the branch labelled `Plus`.
    pub fn sqrt_leading(&self) -> Result<Scalar> {
        let f6 = self.coeff(6);
        f6.sqrt().ok_or_else(|| Error::SqrtNotInField(f6.to_string()))
    }

    /// Image in ℙ⁴ under the sections 1, x, x², x³, y of ω³.
    pub fn embed_tricanonical(&self, pt: &CurvePoint) -> Result<[Scalar; 5]> {
        let ctx = self.ctx();
        match pt {
            CurvePoint::Affine { x, y } => {
                if !self.contains(pt) {
                    return Err(Error::InvalidInput(format!("({x}, {y}) is not on the curve")));
                }
                let x2 = x * x;
                let x3 = &x2 * x;
                Ok([ctx.one(), x.clone(), x2, x3, y.clone()])
            }
            CurvePoint::Infinite(b) => {
                let r = self.sqrt_leading()?;
                let r = if *b == Branch::Plus { r } else { -r };
                Ok([ctx.zero(), ctx.zero(), ctx.zero(), ctx.one(), r])
            }
        }
    }

    /// True when the point of ℙ⁴ lies on the embedded curve.
    pub fn on_embedded_curve(&self, z: &[Scalar; 5]) -> bool {
        let ctx = self.ctx();
        if z.iter().all(Scalar::is_zero) {
            return false;
        }
        if !z[0].is_zero() {
            let inv = z[0].inv().expect("nonzero");
            let w: Vec<Scalar> = z.iter().map(|c| c * &inv).collect();
            let x = &w[1];
            let expected = [ctx.one(), x.clone(), x * x, &(x * x) * x];
            return w[..4] == expected && (&w[4] * &w[4]) == self.f.eval(x);
        }
        if !z[1].is_zero() || !z[2].is_zero() || z[3].is_zero() {
            return false;
        }
        let r = &z[4] * &z[3].inv().expect("nonzero");
        &r * &r == self.coeff(6)
    }

    pub fn weierstrass_points(&self) -> WeierstrassData {
        let data = self.f.roots().expect("f is nonzero");
        WeierstrassData { roots: data.roots.into_iter().map(|(r, _)| r).collect(), residual_degree: data.residual_degree }
    }

    /// A uniformly drawn affine point, deterministic in (seed, label).
    pub fn random_curve_point(&self, seed: u64, label: &str) -> Result<CurvePoint> {
        self.random_point_with(&mut seed::rng(seed, label))
    }

    pub fn random_point_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<CurvePoint> {
        let ctx = self.ctx();
        if !ctx.is_prime_field() {
            return Err(Error::Unsupported("curve points are sampled over prime fields only".into()));
        }
        for _ in 0..MAX_DRAWS {
            let x = ctx.random_element(rng);
            let fx = self.f.eval(&x);
            if let Some(y) = fx.sqrt() {
                let y = if rng.gen::<bool>() { y } else { -y };
                return Ok(CurvePoint::Affine { x, y });
            }
        }
        Err(Error::Exhausted(MAX_DRAWS))
    }
}
