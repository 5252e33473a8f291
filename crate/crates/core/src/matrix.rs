//! Dense exact matrices with reduced row echelon form and kernels.
//!
//! Prime-field matrices are reduced on raw residues; rational ones on
//! `Scalar`s directly.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{mul_mod, pow_mod, FieldContext, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    ctx: FieldContext,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(ctx: FieldContext, rows: usize, cols: usize) -> Self {
        ExactMatrix { ctx, rows, cols, data: vec![ctx.zero(); rows * cols] }
    }

    pub fn identity(ctx: FieldContext, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    /// `cols` must be given so that matrices with no rows keep their shape.
    pub fn from_rows(ctx: FieldContext, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::InvalidInput(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            for s in r {
                if s.ctx() != ctx {
                    return Err(Error::ContextMismatch);
                }
                data.push(s);
            }
        }
        Ok(ExactMatrix { ctx, rows: nrows, cols, data })
    }

    pub fn from_i64(ctx: FieldContext, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&v| ctx.from_i64(v)).collect()).collect();
        Self::from_rows(ctx, cols, rows).expect("rectangular integer rows")
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.ctx(), self.ctx, "entry from another field context");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = Self::zeros(self.ctx, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::InvalidInput("vector length does not match column count".into()));
        }
        if v.iter().any(|s| s.ctx() != self.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(self.ctx.zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::InvalidInput("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(ExactMatrix { ctx: self.ctx, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        Ok(self.transpose().vstack(&other.transpose())?.transpose())
    }

    pub fn rref(&self) -> Rref {
        match self.ctx {
            FieldContext::Prime(p) => self.rref_mod(p),
            FieldContext::Rationals => self.rref_generic(),
        }
    }

    fn rref_generic(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    fn rref_mod(&self, p: u64) -> Rref {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<u64> = self.data.iter().map(|s| s.residue().expect("prime-field entry")).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else { continue };
            if pr != r {
                for j in 0..cols {
                    a.swap(r * cols + j, pr * cols + j);
                }
            }
            let inv = pow_mod(a[r * cols + c], p - 2, p);
            for j in c..cols {
                a[r * cols + j] = mul_mod(a[r * cols + j], inv, p);
            }
            for i in 0..rows {
                let f = a[i * cols + c];
                if i == r || f == 0 {
                    continue;
                }
                for j in c..cols {
                    let sub = mul_mod(f, a[r * cols + j], p);
                    let cur = a[i * cols + j];
                    a[i * cols + j] = if cur >= sub { cur - sub } else { cur + p - sub };
                }
            }
            pivots.push(c);
            r += 1;
        }
        let ctx = self.ctx;
        let data = a.into_iter().map(|v| ctx.from_i64(v as i64)).collect();
        Rref { matrix: ExactMatrix { ctx, rows, cols, data }, rank: r, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel: one vector per free column, carrying a 1
    /// in that column and zeros in the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.ctx.zero(); self.cols];
                v[f] = self.ctx.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -matrix.get(i, f);
                }
                v
            })
            .collect()
    }

    /// Nonzero rows of the rref, a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Vec<Vec<Scalar>> {
        let r = self.rref();
        (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect()
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut det = self.ctx.one();
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.ctx.zero());
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("pivot is nonzero");
            for i in c + 1..m.rows {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.data[i * m.cols + j] = v;
                }
            }
        }
        Ok(det)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
