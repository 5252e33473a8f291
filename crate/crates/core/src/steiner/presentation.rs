//! Sheaves on ℙ² given as cokernels of injective maps of split bundles, and
//! explicit models of their cohomology groups.
//!
//! For 0 → F₁ → F₀ → E → 0 with F₁, F₀ sums of line bundles, the long exact
//! sequence and h¹ = 0 for line bundles on ℙ² give
//! H⁰(E) = coker H⁰(F₁ → F₀), H¹(E) = ker H²(F₁ → F₀), H²(E) = coker H²(F₁ → F₀).

use crate::error::{cert_fail, Error, Result};
use crate::field::{FieldContext, Scalar};
use crate::matrix::ExactMatrix;
use crate::poly::MultiPoly;
use crate::steiner::chern::ChernClass;
use crate::steiner::linebundle::{self, Level};

pub const C_VARS: [&str; 3] = ["c0", "c1", "c2"];

#[derive(Clone, Debug)]
pub struct BundlePresentation {
    pub name: String,
    pub source_twists: Vec<i64>,
    pub target_twists: Vec<i64>,
    /// target × source entries, homogeneous of degree target − source twist.
    pub matrix: Vec<Vec<MultiPoly>>,
}

impl BundlePresentation {
    /// 𝒜* = coker(O(−1)² → O⁴) with columns (c₀, c₁, c₂, 0) and (0, c₀, c₁, c₂):
    /// multiplication by c₀ + c₁x + c₂x² from span{1, x} to span{1, x, x², x³}.
    pub fn a_star(ctx: FieldContext) -> Self {
        let c = |name: &str| MultiPoly::var(ctx, &C_VARS, name).expect("known variable");
        let z = MultiPoly::zero(ctx, &C_VARS);
        let (c0, c1, c2) = (c("c0"), c("c1"), c("c2"));
        let matrix = vec![
            vec![c0.clone(), z.clone()],
            vec![c1.clone(), c0.clone()],
            vec![c2.clone(), c1.clone()],
            vec![z, c2],
        ];
        BundlePresentation { name: "A*".into(), source_twists: vec![-1, -1], target_twists: vec![0; 4], matrix }
    }

    /// A direct sum of line bundles, presented with no relations.
    pub fn split(twists: &[i64]) -> Self {
        let name = twists.iter().map(|d| format!("O({d})")).collect::<Vec<_>>().join("+");
        BundlePresentation { name, source_twists: vec![], target_twists: twists.to_vec(), matrix: vec![vec![]; twists.len()] }
    }

    pub fn rank(&self) -> i64 {
        self.target_twists.len() as i64 - self.source_twists.len() as i64
    }

    pub fn chern(&self) -> ChernClass {
        let total = |ts: &[i64]| ts.iter().fold(ChernClass::trivial(0), |acc, &d| acc.sum(&ChernClass::line(d)));
        total(&self.target_twists).quotient(&total(&self.source_twists))
    }

    /// Matrix of F₁(k) → F₀(k) on the given cohomology level.
    pub fn level_map(&self, ctx: FieldContext, level: Level, k: i64) -> ExactMatrix {
        linebundle::split_map(ctx, 3, &self.matrix, &self.source_twists, &self.target_twists, level, k)
    }

    /// Same as the top-level map, built from transposed multiplication on
    /// sections of the Serre-dual line bundles.
    pub fn top_map_by_duality(&self, ctx: FieldContext, k: i64) -> ExactMatrix {
        let dims = |ts: &[i64]| ts.iter().map(|&t| linebundle::dim(3, Level::Top, t + k)).collect::<Vec<_>>();
        let (sd, td) = (dims(&self.source_twists), dims(&self.target_twists));
        let mut m = ExactMatrix::zeros(ctx, td.iter().sum(), sd.iter().sum());
        let mut row0 = 0;
        for (i, &tdim) in td.iter().enumerate() {
            let mut col0 = 0;
            for (j, &sdim) in sd.iter().enumerate() {
                if !self.matrix[i][j].is_zero() {
                    let block = linebundle::top_multiplication_by_duality(&self.matrix[i][j], self.source_twists[j] + k);
                    for r in 0..tdim {
                        for c in 0..sdim {
                            m.set(row0 + r, col0 + c, block.get(r, c).clone());
                        }
                    }
                }
                col0 += sdim;
            }
            row0 += tdim;
        }
        m
    }

    /// Rank of the presentation matrix evaluated at a point c of ℙ².
    pub fn rank_at(&self, c: &[Scalar; 3]) -> usize {
        let ctx = c[0].ctx();
        let rows = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| e.eval(c).expect("three coordinates")).collect())
            .collect();
        ExactMatrix::from_rows(ctx, self.source_twists.len(), rows).expect("same field").rank()
    }

    /// Explicit cohomology model of E(k).
    pub fn model(&self, ctx: FieldContext, k: i64) -> Result<CohomologyModel> {
        let h0_map = self.level_map(ctx, Level::Sections, k);
        let top = self.level_map(ctx, Level::Top, k);
        if top != self.top_map_by_duality(ctx, k) {
            return Err(cert_fail(format!("top cohomology maps of {}({k}) disagree between routes", self.name)));
        }
        Ok(CohomologyModel {
            k,
            h0: QuotientSpace::new(&h0_map),
            h1: SubSpace::kernel_of(&top),
            h2: QuotientSpace::new(&top),
        })
    }

    /// Multiplication by a linear form on ⊕O(t + k), diagonal over summands.
    fn ambient_multiplication(twists: &[i64], ell: &MultiPoly, level: Level, k: i64) -> ExactMatrix {
        let n = twists.len();
        let zero = MultiPoly::zero(ell.ctx(), &C_VARS);
        let entries: Vec<Vec<MultiPoly>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { ell.clone() } else { zero.clone() }).collect()).collect();
        let shifted: Vec<i64> = twists.iter().map(|t| t + 1).collect();
        linebundle::split_map(ell.ctx(), 3, &entries, twists, &shifted, level, k)
    }

    /// Matrix of multiplication by the linear form ℓ from Hⁱ(E(k)) to Hⁱ(E(k+1)).
    pub fn multiply(&self, i: usize, from: &CohomologyModel, to: &CohomologyModel, ell: &MultiPoly) -> Result<ExactMatrix> {
        let ctx = ell.ctx();
        check_linear(ell)?;
        if to.k != from.k + 1 {
            return Err(Error::InvalidInput("target twist must be one more than the source twist".into()));
        }
        let k = from.k;
        let columns: Vec<Vec<Scalar>> = match i {
            0 => {
                let amb = Self::ambient_multiplication(&self.target_twists, ell, Level::Sections, k);
                (0..from.h0.dim()).map(|b| to.h0.reduce(&amb.mul_vec(&from.h0.lift_unit(b)).expect("shape"))).collect()
            }
            1 => {
                let amb = Self::ambient_multiplication(&self.source_twists, ell, Level::Top, k);
                from.h1
                    .basis
                    .iter()
                    .map(|v| to.h1.coordinates(&amb.mul_vec(v).expect("shape")))
                    .collect::<Result<_>>()?
            }
            2 => {
                let amb = Self::ambient_multiplication(&self.target_twists, ell, Level::Top, k);
                (0..from.h2.dim()).map(|b| to.h2.reduce(&amb.mul_vec(&from.h2.lift_unit(b)).expect("shape"))).collect()
            }
            _ => return Err(Error::InvalidInput(format!("no cohomology in degree {i} on the plane"))),
        };
        let rows = to.dim(i);
        let mut m = ExactMatrix::zeros(ctx, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        Ok(m)
    }

    /// Lifts a section coset to F₀(k), multiplies by ℓ and reduces again.
    pub fn section_multiply(&self, from: &CohomologyModel, to: &CohomologyModel, sigma: &[Scalar], ell: &MultiPoly) -> Result<Vec<Scalar>> {
        check_linear(ell)?;
        if sigma.len() != from.h0.ambient_dim {
            return Err(Error::InvalidInput("section representative has the wrong length".into()));
        }
        let amb = Self::ambient_multiplication(&self.target_twists, ell, Level::Sections, from.k);
        Ok(to.h0.reduce(&amb.mul_vec(sigma)?))
    }
}

fn check_linear(ell: &MultiPoly) -> Result<()> {
    if ell.nvars() != 3 || ell.degree().is_some_and(|d| d != 1) || !ell.is_homogeneous() {
        return Err(Error::InvalidInput("multiplier must be a linear form in c0, c1, c2".into()));
    }
    Ok(())
}

/// Cohomology of E(k) as explicit vector spaces.
#[derive(Clone, Debug)]
pub struct CohomologyModel {
    pub k: i64,
    pub h0: QuotientSpace,
    pub h1: SubSpace,
    pub h2: QuotientSpace,
}

impl CohomologyModel {
    pub fn dims(&self) -> [usize; 3] {
        [self.h0.dim(), self.h1.dim(), self.h2.dim()]
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims()[i]
    }
}

/// Ambient space modulo the column span of a matrix. A coset is represented
/// by its coordinates on the non-pivot positions of the image's rref.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    pub ambient_dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    ctx: FieldContext,
}

impl QuotientSpace {
    pub fn new(map: &ExactMatrix) -> Self {
        let ctx = map.ctx();
        let ambient_dim = map.rows();
        let r = map.transpose().rref();
        let rows = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
        let free = (0..ambient_dim).filter(|c| !r.pivots.contains(c)).collect();
        QuotientSpace { ambient_dim, rows, pivots: r.pivots, free, ctx }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Coordinates of the coset of v.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = w[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in w.iter_mut().zip(row) {
                *x = &*x - &(&f * y);
            }
        }
        self.free.iter().map(|&c| w[c].clone()).collect()
    }

    /// The representative of the b-th basis coset.
    pub fn lift_unit(&self, b: usize) -> Vec<Scalar> {
        let mut v = vec![self.ctx.zero(); self.ambient_dim];
        v[self.free[b]] = self.ctx.one();
        v
    }

    /// The representative with zeros on the pivot positions.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![self.ctx.zero(); self.ambient_dim];
        for (&c, x) in self.free.iter().zip(coords) {
            v[c] = x.clone();
        }
        v
    }

    /// A vector of the image, combined from the rref rows.
    pub fn image_vector(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![self.ctx.zero(); self.ambient_dim];
        for (row, c) in self.rows.iter().zip(coeffs) {
            for (x, y) in v.iter_mut().zip(row) {
                *x = &*x + &(c * y);
            }
        }
        v
    }

    pub fn image_rank(&self) -> usize {
        self.rows.len()
    }
}

/// The kernel of a matrix with the kernel_basis basis; coordinates are the
/// entries on the free columns.
#[derive(Clone, Debug)]
pub struct SubSpace {
    pub basis: Vec<Vec<Scalar>>,
    free: Vec<usize>,
}

impl SubSpace {
    pub fn kernel_of(m: &ExactMatrix) -> Self {
        let r = m.rref();
        let free = (0..m.cols()).filter(|c| !r.pivots.contains(c)).collect();
        SubSpace { basis: m.kernel_basis(), free }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinates(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.free.iter().map(|&c| v[c].clone()).collect();
        let mut back = vec![v.first().map_or_else(|| FieldContext::rationals().zero(), |s| s.ctx().zero()); v.len()];
        for (b, c) in self.basis.iter().zip(&coords) {
            for (x, y) in back.iter_mut().zip(b) {
                *x = &*x + &(c * y);
            }
        }
        if back != v {
            return Err(cert_fail("vector is not in the kernel subspace"));
        }
        Ok(coords)
    }
}
