//! Dense univariate polynomials: Euclidean arithmetic and root finding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldContext, Scalar};
use crate::poly::MultiPoly;

/// Above this modulus roots are found by splitting instead of scanning.
const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// Largest |constant| or |leading| integer coefficient the rational-root search factors.
const RATIONAL_FACTOR_LIMIT: u64 = 1_000_000_000_000_000;

/// Coefficients stored lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    ctx: FieldContext,
    coeffs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootData {
    /// Distinct roots in increasing canonical order, with multiplicity.
    pub roots: Vec<(Scalar, u32)>,
    /// Degree of the part of the polynomial with no roots in the field.
    pub residual_degree: usize,
}

impl UniPoly {
    pub fn new(ctx: FieldContext, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.iter().any(|c| c.ctx() != ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(Self::normalized(ctx, coeffs))
    }

    fn normalized(ctx: FieldContext, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { ctx, coeffs }
    }

    pub fn from_i64(ctx: FieldContext, coeffs: &[i64]) -> Self {
        Self::normalized(ctx, coeffs.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    pub fn zero(ctx: FieldContext) -> Self {
        UniPoly { ctx, coeffs: vec![] }
    }

    pub fn one(ctx: FieldContext) -> Self {
        UniPoly { ctx, coeffs: vec![ctx.one()] }
    }

    /// x − a
    pub fn linear_root(a: &Scalar) -> Self {
        let ctx = a.ctx();
        UniPoly { ctx, coeffs: vec![-a, ctx.one()] }
    }

    /// Reads a polynomial that uses at most one variable.
    pub fn from_multipoly(p: &MultiPoly) -> Result<Self> {
        let mut var = None;
        for (m, _) in p.terms() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 && var.replace(i).is_some_and(|v| v != i) {
                    return Err(Error::InvalidInput("polynomial is not univariate".into()));
                }
            }
        }
        let ctx = p.ctx();
        let deg = var.map(|v| p.degree_in(v).unwrap_or(0)).unwrap_or(0) as usize;
        let mut coeffs = vec![ctx.zero(); deg + 1];
        for (m, c) in p.terms() {
            let e = var.map(|v| m.0[v]).unwrap_or(0) as usize;
            coeffs[e] = c.clone();
        }
        Ok(Self::normalized(ctx, coeffs))
    }

    pub fn to_multipoly(&self, var: &str) -> MultiPoly {
        MultiPoly::from_terms(self.ctx, &[var], self.coeffs.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())))
            .expect("coefficients share the context")
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::normalized(self.ctx, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::normalized(self.ctx, (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ctx);
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::normalized(self.ctx, out)
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        Self::normalized(self.ctx, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.leading().unwrap().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(self.ctx), self.clone()));
        }
        let mut q = vec![self.ctx.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = &r[i + j] - &(&c * dc);
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::normalized(self.ctx, q), Self::normalized(self.ctx, r)))
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        Self::normalized(
            self.ctx,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &self.ctx.from_i64(i as i64)).collect(),
        )
    }

    /// self^e mod m.
    pub fn powmod(&self, mut e: u64, m: &UniPoly) -> Result<UniPoly> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(self.ctx).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()).degree() == Some(0))
    }

    /// All roots in the ground field with multiplicities.
    pub fn roots(&self) -> Result<RootData> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        let mut distinct = match self.ctx {
            FieldContext::Prime(p) => self.prime_field_roots(p)?,
            FieldContext::Rationals => self.rational_roots()?,
        };
        distinct.sort_by_key(root_key);
        let mut roots = Vec::with_capacity(distinct.len());
        let mut rest = self.clone();
        for r in distinct {
            let lin = Self::linear_root(&r);
            let mut mult = 0;
            loop {
                let (q, rem) = rest.divrem(&lin)?;
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            debug_assert!(mult > 0);
            roots.push((r, mult));
        }
        let found: usize = roots.iter().map(|(_, m)| *m as usize).sum();
        Ok(RootData { roots, residual_degree: deg - found })
    }

    fn prime_field_roots(&self, p: u64) -> Result<Vec<Scalar>> {
        if self.degree() == Some(0) {
            return Ok(vec![]);
        }
        if p <= EXHAUSTIVE_LIMIT {
            return Ok((0..p)
                .map(|v| self.ctx.from_i64(v as i64))
                .filter(|x| self.eval(x).is_zero())
                .collect());
        }
        // Product of the distinct linear factors: gcd(f, x^p − x).
        let x = UniPoly { ctx: self.ctx, coeffs: vec![self.ctx.zero(), self.ctx.one()] };
        let xp = x.powmod(p, self)?;
        let g = self.gcd(&xp.sub(&x));
        let mut out = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed0f_5011);
        equal_degree_split(&g, p, &mut rng, &mut out)?;
        Ok(out)
    }

    fn rational_roots(&self) -> Result<Vec<Scalar>> {
        // Primitive integer model: clear denominators.
        let rats: Vec<BigRational> = self.coeffs.iter().map(Scalar::to_rational).collect();
        let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let mut out = Vec::new();
        let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
        if low > 0 {
            out.push(self.ctx.zero());
            ints.drain(..low);
        }
        if ints.len() == 1 {
            return Ok(out);
        }
        let a0 = bounded(&ints[0])?;
        let an = bounded(ints.last().unwrap())?;
        let nums = divisors(a0);
        let dens = divisors(an);
        let mut seen = std::collections::BTreeSet::new();
        for s in &dens {
            for r in &nums {
                if r.gcd(s) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand = BigRational::new(BigInt::from(*r) * sign, BigInt::from(*s));
                    if !seen.insert(cand.clone()) {
                        continue;
                    }
                    if eval_int(&ints, &cand).is_zero() {
                        out.push(self.ctx.from_rational(&cand)?);
                    }
                }
            }
        }
        Ok(out)
    }
}

fn root_key(s: &Scalar) -> BigRational {
    s.to_rational()
}

fn bounded(n: &BigInt) -> Result<u64> {
    n.abs()
        .to_u64()
        .filter(|&v| v <= RATIONAL_FACTOR_LIMIT)
        .ok_or_else(|| Error::Unsupported(format!("rational root search needs |{n}| <= 10^15")))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn eval_int(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

/// Splits a monic product of distinct linear factors over F_p (p odd).
fn equal_degree_split(g: &UniPoly, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Scalar>) -> Result<()> {
    let ctx = g.ctx();
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            let g = g.monic();
            out.push(-&g.coeff(0));
            return Ok(());
        }
        _ => {}
    }
    loop {
        let a = ctx.random_element(rng);
        let shift = UniPoly { ctx, coeffs: vec![a, ctx.one()] };
        let h = shift.powmod((p - 1) / 2, g)?.sub(&UniPoly::one(ctx));
        let d = g.gcd(&h);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < g.degree().unwrap() {
            let (q, _) = g.divrem(&d)?;
            equal_degree_split(&d, p, rng, out)?;
            equal_degree_split(&q.monic(), p, rng, out)?;
            return Ok(());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64) -> FieldContext {
        FieldContext::prime(p).unwrap()
    }

    #[test]
    fn roots_mod_seven() {
        let r = UniPoly::from_i64(fp(7), &[-1, 0, 1]).roots().unwrap();
        assert_eq!(r.roots, vec![(fp(7).from_i64(1), 1), (fp(7).from_i64(6), 1)]);
        assert_eq!(r.residual_degree, 0);
        let r = UniPoly::from_i64(fp(7), &[1, 0, 1]).roots().unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.residual_degree, 2);
    }

    #[test]
    fn rational_double_root() {
        let q = FieldContext::rationals();
        let r = UniPoly::from_i64(q, &[4, -4, 1]).roots().unwrap();
        assert_eq!(r.roots, vec![(q.from_i64(2), 2)]);
        let r = UniPoly::from_i64(q, &[-1, 0, 0, 0, 0, 0, 1]).roots().unwrap();
        assert_eq!(r.roots, vec![(q.from_i64(-1), 1), (q.from_i64(1), 1)]);
        assert_eq!(r.residual_degree, 4);
        // 6x^2 - 5x + 1 = (2x - 1)(3x - 1)
        let r = UniPoly::from_i64(q, &[1, -5, 6]).roots().unwrap();
        assert_eq!(r.roots.len(), 2);
        assert_eq!(r.roots[0].0, q.parse_scalar("1/3").unwrap());
        // root at zero with multiplicity
        let r = UniPoly::from_i64(q, &[0, 0, -2, 1]).roots().unwrap();
        assert_eq!(r.roots, vec![(q.from_i64(0), 2), (q.from_i64(2), 1)]);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let z = UniPoly::zero(FieldContext::rationals());
        assert_eq!(z.roots(), Err(Error::ZeroPolynomial));
        assert_eq!(z.is_squarefree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn squarefree() {
        let q = FieldContext::rationals();
        assert!(UniPoly::from_i64(q, &[-1, 0, 0, 0, 0, 0, 1]).is_squarefree().unwrap());
        assert!(!UniPoly::from_i64(q, &[0, 0, -1, 1]).is_squarefree().unwrap());
        // x^6 - 1 = (x^2 - 1)^3 in characteristic 3
        assert!(!UniPoly::from_i64(fp(3), &[-1, 0, 0, 0, 0, 0, 1]).is_squarefree().unwrap());
    }

    #[test]
    fn sixth_roots_of_unity_large_prime() {
        // 1000003 ≡ 1 mod 6 and lies above the exhaustive limit.
        let p = 1_000_003;
        let r = UniPoly::from_i64(fp(p), &[-1, 0, 0, 0, 0, 0, 1]).roots().unwrap();
        assert_eq!(r.roots.len(), 6);
        for (x, m) in &r.roots {
            assert_eq!(*m, 1);
            assert!(x.pow(6).is_one());
        }
        let ctx = fp(p);
        let n = (2..).map(|v| ctx.from_i64(v)).find(|v| !v.is_square()).unwrap();
        let irreducible = UniPoly::new(ctx, vec![-&n, ctx.zero(), ctx.one()]).unwrap();
        let double = UniPoly::from_i64(ctx, &[-5, 1]).mul(&UniPoly::from_i64(ctx, &[-5, 1]));
        let data = irreducible.mul(&double).roots().unwrap();
        assert_eq!(data.roots, vec![(ctx.from_i64(5), 2)]);
        assert_eq!(data.residual_degree, 2);
    }

    proptest! {
        #[test]
        fn constructed_roots_are_found(rs in prop::collection::vec(0i64..10007, 1..5)) {
            let ctx = fp(10007);
            let mut f = UniPoly::one(ctx);
            for r in &rs {
                f = f.mul(&UniPoly::linear_root(&ctx.from_i64(*r)));
            }
            let data = f.roots().unwrap();
            let total: u32 = data.roots.iter().map(|(_, m)| m).sum();
            prop_assert_eq!(total as usize, rs.len());
            prop_assert_eq!(data.residual_degree, 0);
        }

        #[test]
        fn divrem_reconstructs(a in prop::collection::vec(-9i64..9, 0..8), b in prop::collection::vec(-9i64..9, 1..5)) {
            let q = FieldContext::rationals();
            let a = UniPoly::from_i64(q, &a);
            let b = UniPoly::from_i64(q, &b);
            prop_assume!(!b.is_zero());
            let (quo, rem) = a.divrem(&b).unwrap();
            prop_assert_eq!(quo.mul(&b).add(&rem), a);
            prop_assert!(rem.degree() < b.degree() || rem.is_zero());
        }
    }
}
