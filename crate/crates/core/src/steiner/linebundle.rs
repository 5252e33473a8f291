//! Cohomology of line bundles on ℙⁿ realized on monomials.
//!
//! H⁰(O(d)) has the degree-d monomials as basis. Hⁿ(O(d)) has the inverse
//! monomials x^(−a) with every aᵢ ≥ 1 and |a| = −d; a polynomial acts on
//! them by multiplication, dropping any product with a nonnegative exponent.
//! All other groups vanish.

use std::collections::HashMap;

use crate::field::FieldContext;
use crate::matrix::ExactMatrix;
use crate::poly::{monomials_of_degree, MultiPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    /// Global sections.
    Sections,
    /// Top cohomology Hⁿ.
    Top,
}

/// Basis exponent vectors for `level` of O(d) on ℙ^(nv−1).
///
/// Top basis vectors are the Sections basis of O(−d−nv) shifted by one in
/// every coordinate, so the two orders match under Serre duality.
pub fn basis(nv: usize, level: Level, d: i64) -> Vec<Vec<u32>> {
    match level {
        Level::Sections if d >= 0 => monomials_of_degree(nv, d as u32).into_iter().map(|m| m.0).collect(),
        Level::Top if -d - nv as i64 >= 0 => monomials_of_degree(nv, (-d - nv as i64) as u32)
            .into_iter()
            .map(|m| m.0.into_iter().map(|e| e + 1).collect())
            .collect(),
        _ => vec![],
    }
}

pub fn dim(nv: usize, level: Level, d: i64) -> usize {
    let n = nv as i64 - 1;
    let binom = |m: i64| -> usize {
        // C(m + n, n) for m ≥ 0
        if m < 0 {
            return 0;
        }
        let mut acc: u128 = 1;
        for i in 1..=n as u128 {
            acc = acc * (m as u128 + i) / i;
        }
        acc as usize
    };
    match level {
        Level::Sections => binom(d),
        Level::Top => binom(-d - nv as i64),
    }
}

/// (h⁰, …, hⁿ) of O(d) on ℙ^(nv−1), as a vector of length nv.
pub fn hvec(nv: usize, d: i64) -> Vec<usize> {
    let mut h = vec![0; nv];
    h[0] += dim(nv, Level::Sections, d);
    h[nv - 1] += dim(nv, Level::Top, d);
    h
}

/// Matrix of multiplication by the homogeneous polynomial `p` from
/// `level` of O(d) to `level` of O(d + deg p).
pub fn multiplication_matrix(p: &MultiPoly, level: Level, d: i64) -> ExactMatrix {
    multiplication_matrix_of_degree(p, p.degree().unwrap_or(0) as i64, level, d)
}

/// As [`multiplication_matrix`] with the degree given explicitly, so the zero
/// polynomial yields a zero map of the right shape.
pub fn multiplication_matrix_of_degree(p: &MultiPoly, e: i64, level: Level, d: i64) -> ExactMatrix {
    let ctx = p.ctx();
    let nv = p.nvars();
    let src = basis(nv, level, d);
    let dst = basis(nv, level, d + e);
    let index: HashMap<&Vec<u32>, usize> = dst.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut m = ExactMatrix::zeros(ctx, dst.len(), src.len());
    for (col, a) in src.iter().enumerate() {
        for (mono, c) in p.terms() {
            let prod: Option<Vec<u32>> = match level {
                Level::Sections => Some(a.iter().zip(&mono.0).map(|(x, y)| x + y).collect()),
                Level::Top => a.iter().zip(&mono.0).map(|(x, y)| x.checked_sub(*y).filter(|v| *v >= 1)).collect(),
            };
            if let Some(prod) = prod {
                let row = index[&prod];
                let v = m.get(row, col) + c;
                m.set(row, col, v);
            }
        }
    }
    m
}

/// Map between sums of line bundles ⊕O(s_j + k) → ⊕O(t_i + k) on `level`,
/// where entry (i, j) is homogeneous of degree t_i − s_j (or zero).
pub fn split_map(
    ctx: FieldContext,
    nv: usize,
    entries: &[Vec<MultiPoly>],
    source: &[i64],
    target: &[i64],
    level: Level,
    k: i64,
) -> ExactMatrix {
    let sd: Vec<usize> = source.iter().map(|&t| dim(nv, level, t + k)).collect();
    let td: Vec<usize> = target.iter().map(|&t| dim(nv, level, t + k)).collect();
    let mut m = ExactMatrix::zeros(ctx, td.iter().sum(), sd.iter().sum());
    let mut row0 = 0;
    for (i, &tdim) in td.iter().enumerate() {
        let mut col0 = 0;
        for (j, &sdim) in sd.iter().enumerate() {
            let entry = &entries[i][j];
            if !entry.is_zero() {
                let block = multiplication_matrix_of_degree(entry, target[i] - source[j], level, source[j] + k);
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

/// The same top-level map obtained as the transpose of multiplication on
/// sections of the Serre-dual bundles.
pub fn top_multiplication_by_duality(p: &MultiPoly, d: i64) -> ExactMatrix {
    let nv = p.nvars() as i64;
    let e = p.degree().unwrap_or(0) as i64;
    multiplication_matrix(p, Level::Sections, -d - e - nv).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serre_duality_dimensions() {
        for j in -8..=2 {
            assert_eq!(dim(3, Level::Top, j), dim(3, Level::Sections, -j - 3));
            assert_eq!(basis(3, Level::Top, j).len(), dim(3, Level::Top, j));
        }
        assert_eq!(dim(3, Level::Sections, 2), 6);
        assert_eq!(dim(3, Level::Top, -3), 1);
        assert_eq!(dim(3, Level::Top, -4), 3);
        assert_eq!(dim(2, Level::Top, -2), 1);
        assert_eq!(dim(2, Level::Sections, 3), 4);
    }

    #[test]
    fn contraction_matches_dual_transpose() {
        let q = FieldContext::rationals();
        let vars = ["c0", "c1", "c2"];
        for text in ["c0", "c1", "c2", "2*c0 - c1 + 5*c2", "c0*c1 - c2^2"] {
            let p = MultiPoly::parse_in(text, q, &vars).unwrap();
            for d in -9..=-3 {
                assert_eq!(multiplication_matrix(&p, Level::Top, d), top_multiplication_by_duality(&p, d));
            }
        }
    }
}
