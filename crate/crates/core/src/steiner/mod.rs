//! The rank-2 Steiner bundle 𝒜* on ℙ² and its cohomology.
//!
//! 𝒜* is the cokernel of V ⊗ O(−1) → Sym³V ⊗ O, multiplication by the
//! quadric c₀ + c₁x + c₂x². It does not depend on any curve, so everything
//! here runs over a fixed field (ℚ by default).

pub mod chern;
pub mod linebundle;
pub mod normal;
pub mod presentation;

use std::collections::HashMap;
use std::sync::RwLock;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{cert_fail, Error, Result};
use crate::field::FieldContext;
use crate::matrix::ExactMatrix;
use crate::poly::MultiPoly;

pub use chern::{ChernCharacter, ChernClass};
pub use normal::{normal_bundle_splitting, NormalSplitting};
pub use presentation::{BundlePresentation, CohomologyModel, QuotientSpace, SubSpace, C_VARS};

/// Largest |k| accepted for twisted tables.
pub const MAX_TWIST: i64 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    AStar,
    Tensor,
    Sym2,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::AStar => "A*",
            Family::Tensor => "A*(x)A*",
            Family::Sym2 => "Sym2 A*",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    pub k: i64,
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub chi: i64,
}

impl CohomologyRow {
    fn new(k: i64, h: [usize; 3]) -> Self {
        CohomologyRow { k, h0: h[0], h1: h[1], h2: h[2], chi: h[0] as i64 - h[1] as i64 + h[2] as i64 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub family: Family,
    pub rows: Vec<CohomologyRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EndCohomology {
    pub hom: usize,
    pub ext1: usize,
    pub ext2: usize,
    /// Rank of H⁰(𝒜*) ⊗ Sym³V* → H⁰(𝒜*(1)) ⊗ V*.
    pub map_rank: usize,
    pub map_shape: (usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimB {
    /// h⁰ of Sym²𝒜*(−1), O(−1), 𝒜*(−1), Sym²𝒜*, O, 𝒜*.
    pub summands: [usize; 6],
    pub total: usize,
}

/// Memoized cohomology of 𝒜* and derived bundles.
pub struct Steiner {
    ctx: FieldContext,
    pres: BundlePresentation,
    cache: RwLock<HashMap<(Family, i64), [usize; 3]>>,
}

impl Default for Steiner {
    fn default() -> Self {
        Steiner::new(FieldContext::rationals())
    }
}

impl Steiner {
    pub fn new(ctx: FieldContext) -> Self {
        Steiner { ctx, pres: BundlePresentation::a_star(ctx), cache: RwLock::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    pub fn presentation(&self) -> &BundlePresentation {
        &self.pres
    }

    fn check_range(k: i64) -> Result<()> {
        if k.abs() > MAX_TWIST {
            return Err(Error::OutOfRange(k));
        }
        Ok(())
    }

    fn cached(&self, key: (Family, i64), compute: impl FnOnce() -> Result<[usize; 3]>) -> Result<[usize; 3]> {
        if let Some(h) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(*h);
        }
        let h = compute()?;
        self.cache.write().expect("cache lock").insert(key, h);
        Ok(h)
    }

    pub fn model(&self, k: i64) -> Result<CohomologyModel> {
        Self::check_range(k)?;
        self.pres.model(self.ctx, k)
    }

    /// (h⁰, h¹, h²) of 𝒜*(k), certified against Riemann–Roch and (k+1)(k+4).
    pub fn h_astar(&self, k: i64) -> Result<[usize; 3]> {
        Self::check_range(k)?;
        self.cached((Family::AStar, k), || {
            let h = self.model(k)?.dims();
            let chi = h[0] as i64 - h[1] as i64 + h[2] as i64;
            if chi != (k + 1) * (k + 4) || chi != self.chern().euler_characteristic(k) {
                return Err(cert_fail(format!("Euler characteristic of A*({k}) is {chi}, expected {}", (k + 1) * (k + 4))));
            }
            Ok(h)
        })
    }

    pub fn table(&self, kmin: i64, kmax: i64) -> Result<CohomologyTable> {
        self.family_table(Family::AStar, kmin, kmax)
    }

    pub fn family_table(&self, family: Family, kmin: i64, kmax: i64) -> Result<CohomologyTable> {
        if kmin > kmax {
            return Err(Error::InvalidInput(format!("empty twist range {kmin}..{kmax}")));
        }
        let rows = (kmin..=kmax)
            .map(|k| {
                let h = match family {
                    Family::AStar => self.h_astar(k)?,
                    Family::Tensor => self.tensor(k)?,
                    Family::Sym2 => self.sym2(k)?,
                };
                Ok(CohomologyRow::new(k, h))
            })
            .collect::<Result<_>>()?;
        Ok(CohomologyTable { family, rows })
    }

    pub fn chern(&self) -> ChernClass {
        self.pres.chern()
    }

    pub fn slope(&self) -> Ratio<i64> {
        self.chern().slope()
    }

    pub fn euler_characteristic(&self, k: i64) -> i64 {
        self.chern().euler_characteristic(k)
    }

    /// Block matrix of Hⁱ(𝒜*(k))^n → Hⁱ(𝒜*(k+1))^m whose (r, s) block is
    /// multiplication by the linear form entries[r][s].
    fn induced(&self, i: usize, from: &CohomologyModel, to: &CohomologyModel, entries: &[Vec<MultiPoly>]) -> Result<ExactMatrix> {
        let (dr, dc) = (to.dim(i), from.dim(i));
        let nrows = entries.len();
        let ncols = entries.first().map_or(0, Vec::len);
        let mut m = ExactMatrix::zeros(self.ctx, dr * nrows, dc * ncols);
        for (r, row) in entries.iter().enumerate() {
            for (s, ell) in row.iter().enumerate() {
                if ell.is_zero() {
                    continue;
                }
                let block = self.pres.multiply(i, from, to, ell)?;
                for a in 0..dr {
                    for b in 0..dc {
                        m.set(r * dr + a, s * dc + b, block.get(a, b).clone());
                    }
                }
            }
        }
        Ok(m)
    }

    /// Cohomology of the cokernel of an injective map 𝒜*(k−1)^n → 𝒜*(k)^m
    /// given by `entries`, from the long exact sequence.
    fn cokernel_cohomology(&self, k: i64, entries: &[Vec<MultiPoly>]) -> Result<([usize; 3], [ExactMatrix; 3])> {
        let (from, to) = (self.model(k - 1)?, self.model(k)?);
        let psi = [
            self.induced(0, &from, &to, entries)?,
            self.induced(1, &from, &to, entries)?,
            self.induced(2, &from, &to, entries)?,
        ];
        let rank: Vec<usize> = psi.iter().map(ExactMatrix::rank).collect();
        let ker = |i: usize| psi[i].cols() - rank[i];
        let coker = |i: usize| psi[i].rows() - rank[i];
        Ok(([coker(0) + ker(1), coker(1) + ker(2), coker(2)], psi))
    }

    /// (h⁰, h¹, h²) of 𝒜* ⊗ 𝒜*(k) from 0 → 𝒜*(k−1) ⊗ V → 𝒜*(k) ⊗ Sym³V → 𝒜* ⊗ 𝒜*(k) → 0.
    pub fn tensor(&self, k: i64) -> Result<[usize; 3]> {
        Self::check_range(k)?;
        Self::check_range(k - 1)?;
        self.cached((Family::Tensor, k), || {
            let (h, _) = self.cokernel_cohomology(k, &self.pres.matrix)?;
            let chi = h[0] as i64 - h[1] as i64 + h[2] as i64;
            let ch = self.chern().character();
            let expected = ch.product(&ch).product(&ChernClass::line(k).character()).euler_characteristic();
            if chi != expected {
                return Err(cert_fail(format!("Euler characteristic of A*(x)A*({k}) is {chi}, expected {expected}")));
            }
            Ok(h)
        })
    }

    /// Sym²𝒜*(k) = 𝒜* ⊗ 𝒜*(k) minus ∧²𝒜*(k) = O(k+2).
    pub fn sym2(&self, k: i64) -> Result<[usize; 3]> {
        if self.ctx.characteristic() == 2 {
            return Err(Error::BadCharacteristic(2));
        }
        let t = self.tensor(k)?;
        self.cached((Family::Sym2, k), || {
            let l = linebundle::hvec(3, k + 2);
            let mut h = [0; 3];
            for i in 0..3 {
                h[i] = t[i].checked_sub(l[i]).ok_or_else(|| cert_fail(format!("O({}) does not split off A*(x)A*({k})", k + 2)))?;
            }
            Ok(h)
        })
    }

    /// End(𝒜) from 0 → 𝒜* ⊗ 𝒜 → 𝒜* ⊗ Sym³V* → 𝒜*(1) ⊗ V* → 0, checked
    /// against 𝒜* ⊗ 𝒜*(−2).
    pub fn end_cohomology(&self) -> Result<EndCohomology> {
        let at = &self.pres.matrix;
        let transposed: Vec<Vec<MultiPoly>> =
            (0..at[0].len()).map(|s| at.iter().map(|row| row[s].clone()).collect()).collect();
        let (from, to) = (self.model(0)?, self.model(1)?);
        let psi: Vec<ExactMatrix> = (0..3).map(|i| self.induced(i, &from, &to, &transposed)).collect::<Result<_>>()?;
        let rank: Vec<usize> = psi.iter().map(ExactMatrix::rank).collect();
        let ker = |i: usize| psi[i].cols() - rank[i];
        let coker = |i: usize| psi[i].rows() - rank[i];
        if coker(2) != 0 {
            return Err(cert_fail("top cohomology map for End is not surjective"));
        }
        let (hom, ext1, ext2) = (ker(0), coker(0) + ker(1), coker(1) + ker(2));
        let ch = self.chern().character();
        let chi_end = ch.product(&ch.dual()).euler_characteristic();
        if hom as i64 - ext1 as i64 + ext2 as i64 != chi_end {
            return Err(cert_fail(format!("Euler characteristic of End is not {chi_end}")));
        }
        let other = self.tensor(-2)?;
        if other != [hom, ext1, ext2] {
            return Err(cert_fail(format!("End cohomology routes disagree: {:?} vs {other:?}", [hom, ext1, ext2])));
        }
        Ok(EndCohomology { hom, ext1, ext2, map_rank: rank[0], map_shape: (psi[0].rows(), psi[0].cols()) })
    }

    pub fn dim_b(&self) -> Result<DimB> {
        let o = |d: i64| linebundle::dim(3, linebundle::Level::Sections, d);
        let summands = [self.sym2(-1)?[0], o(-1), self.h_astar(-1)?[0], self.sym2(0)?[0], o(0), self.h_astar(0)?[0]];
        Ok(DimB { summands, total: summands.iter().sum() })
    }

    /// Fiberwise rank of the presentation at `samples` random points and the
    /// three coordinate points; all must be 2.
    pub fn fiberwise_injective(&self, samples: usize, seed: u64) -> Result<bool> {
        let ctx = self.ctx;
        let mut points: Vec<[crate::field::Scalar; 3]> = (0..3)
            .map(|i| std::array::from_fn(|j| if i == j { ctx.one() } else { ctx.zero() }))
            .collect();
        let mut rng = crate::seed::rng(seed, "steiner-fiberwise");
        while points.len() < samples + 3 {
            let c: [crate::field::Scalar; 3] = std::array::from_fn(|_| ctx.random_element(&mut rng));
            if c.iter().any(|x| !x.is_zero()) {
                points.push(c);
            }
        }
        Ok(points.iter().all(|c| self.pres.rank_at(c) == 2))
    }
}

/// Hoppe's criterion for rank 2: E is stable when the normalized twist
/// E(−⌈c₁/2⌉) has no sections.
pub fn hoppe_stable(pres: &BundlePresentation, ctx: FieldContext) -> Result<bool> {
    if pres.rank() != 2 {
        return Err(Error::Unsupported(format!("stability test needs rank 2, got {}", pres.rank())));
    }
    let c1 = pres.chern().c1;
    let t = -(c1.div_euclid(2) + i64::from(c1.rem_euclid(2) != 0));
    Ok(pres.model(ctx, t)?.h0.dim() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Steiner {
        Steiner::default()
    }

    #[test]
    fn twisted_table() {
        let s = q();
        assert_eq!(s.h_astar(0).unwrap(), [4, 0, 0]);
        assert_eq!(s.h_astar(1).unwrap(), [10, 0, 0]);
        assert_eq!(s.h_astar(-1).unwrap(), [0, 0, 0]);
        assert_eq!(s.h_astar(-2).unwrap(), [0, 2, 0]);
        assert_eq!(s.h_astar(-3).unwrap(), [0, 2, 0]);
        for k in -6..=6 {
            let row = s.table(k, k).unwrap().rows[0];
            assert_eq!(row.chi, (k + 1) * (k + 4));
            assert_eq!(row.chi, s.euler_characteristic(k));
        }
        assert!(matches!(s.h_astar(41), Err(Error::OutOfRange(41))));
    }

    #[test]
    fn chern_data() {
        let s = q();
        assert_eq!(s.chern(), ChernClass { rank: 2, c1: 2, c2: 3 });
        assert_eq!(s.chern().dual().to_string(), "1 - 2H + 3H^2");
        assert_eq!(s.slope(), Ratio::from_integer(1));
        assert_eq!(s.euler_characteristic(0), 4);
        assert_eq!(s.euler_characteristic(-1), 0);
        let source = ChernClass::line(-1).sum(&ChernClass::line(-1));
        assert_eq!(source.sum(&s.chern()), ChernClass::trivial(4));
    }

    #[test]
    fn stability() {
        let ctx = FieldContext::rationals();
        assert!(hoppe_stable(&BundlePresentation::a_star(ctx), ctx).unwrap());
        assert!(!hoppe_stable(&BundlePresentation::split(&[0, 2]), ctx).unwrap());
    }

    #[test]
    fn tensor_and_sym2() {
        let s = q();
        assert_eq!(s.tensor(0).unwrap()[0], 16);
        assert_eq!(s.sym2(0).unwrap()[0], 10);
        assert_eq!(s.tensor(-1).unwrap()[0], 4);
        assert_eq!(s.sym2(-1).unwrap()[0], 1);
        let b = s.dim_b().unwrap();
        assert_eq!(b.summands, [1, 0, 0, 10, 1, 4]);
        assert_eq!(b.total, 16);
    }

    #[test]
    fn endomorphisms() {
        let e = q().end_cohomology().unwrap();
        assert_eq!((e.hom, e.ext1, e.ext2), (1, 5, 0));
        assert_eq!(e.map_shape, (20, 16));
        assert_eq!(e.map_rank, 15);
    }

    #[test]
    fn fiberwise_rank_two() {
        assert!(q().fiberwise_injective(50, 7).unwrap());
        assert!(Steiner::new(FieldContext::prime(10009).unwrap()).fiberwise_injective(50, 7).unwrap());
    }

    #[test]
    fn section_multiplication_is_well_defined() {
        let ctx = FieldContext::rationals();
        let s = q();
        let pres = s.presentation();
        let mut rng = crate::seed::rng(11, "section-multiply");
        for j in 0..=1 {
            let (m0, m1, m2) = (s.model(j).unwrap(), s.model(j + 1).unwrap(), s.model(j + 2).unwrap());
            let c0 = MultiPoly::var(ctx, &C_VARS, "c0").unwrap();
            let c1 = MultiPoly::var(ctx, &C_VARS, "c1").unwrap();
            for _ in 0..10 {
                let sigma: Vec<_> = (0..m0.h0.ambient_dim).map(|_| ctx.random_element(&mut rng)).collect();
                let coeffs: Vec<_> = (0..m0.h0.image_rank()).map(|_| ctx.random_element(&mut rng)).collect();
                let shifted: Vec<_> = sigma.iter().zip(m0.h0.image_vector(&coeffs)).map(|(a, b)| a + &b).collect();
                let ell = MultiPoly::from_terms(
                    ctx,
                    &C_VARS,
                    (0..3).map(|i| {
                        let mut e = vec![0; 3];
                        e[i] = 1;
                        (e, ctx.random_element(&mut rng))
                    }),
                )
                .unwrap();
                let a = pres.section_multiply(&m0, &m1, &sigma, &ell).unwrap();
                assert_eq!(a, pres.section_multiply(&m0, &m1, &shifted, &ell).unwrap());
                // multiply then project equals project then multiply
                let reduced = m0.h0.lift(&m0.h0.reduce(&sigma));
                assert_eq!(a, pres.section_multiply(&m0, &m1, &reduced, &ell).unwrap());
                let zero = MultiPoly::zero(ctx, &C_VARS);
                assert!(pres.section_multiply(&m0, &m1, &sigma, &zero).unwrap().iter().all(|x| x.is_zero()));
                let x = m1.h0.lift(&pres.section_multiply(&m0, &m1, &sigma, &c1).unwrap());
                let y = m1.h0.lift(&pres.section_multiply(&m0, &m1, &sigma, &c0).unwrap());
                assert_eq!(
                    pres.section_multiply(&m1, &m2, &x, &c0).unwrap(),
                    pres.section_multiply(&m1, &m2, &y, &c1).unwrap()
                );
            }
        }
    }
}
