//! Splitting type of the normal bundle of the twisted cubic u ↦ [u³ : u²v : uv² : v³].
//!
//! On ℙ¹ the normal bundle N is the cokernel in
//! 0 → O → O(1)² ⊕ O → O(3)⁴ → N → 0,
//! where O(1)² → O(3)⁴ is the Jacobian of F = (u³, u²v, uv², v³), O → O(3)⁴ is
//! F itself, and O → O(1)² ⊕ O is the Euler syzygy (u, v, −3).
//!
//! The Jacobian columns are (3u², 2uv, v², 0) and (0, u², 2uv, 3v²).

use serde::Serialize;

use crate::error::{cert_fail, Result};
use crate::field::FieldContext;
use crate::poly::MultiPoly;
use crate::steiner::linebundle::{self, Level};

const UV: [&str; 2] = ["u", "v"];
const SOURCE: [i64; 3] = [1, 1, 0];
const TARGET: [i64; 4] = [3; 4];
/// Twists m at which h⁰(N(m)) is computed.
pub const WINDOW: std::ops::RangeInclusive<i64> = -8..=-3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalSplitting {
    pub rank: i64,
    pub degree: i64,
    pub splitting: (i64, i64),
    /// (m, h⁰(N(m)), h¹(N(m))) over the window.
    pub hilbert: Vec<(i64, usize, usize)>,
}

fn poly(ctx: FieldContext, text: &str) -> MultiPoly {
    MultiPoly::parse_in(text, ctx, &UV).expect("valid literal")
}

fn presentation(ctx: FieldContext) -> (Vec<Vec<MultiPoly>>, Vec<Vec<MultiPoly>>) {
    let a = [
        ["3*u^2", "0", "u^3"],
        ["2*u*v", "u^2", "u^2*v"],
        ["v^2", "2*u*v", "u*v^2"],
        ["0", "3*v^2", "v^3"],
    ];
    let a = a.iter().map(|row| row.iter().map(|t| poly(ctx, t)).collect()).collect();
    let b = ["u", "v", "-3"].iter().map(|t| vec![poly(ctx, t)]).collect();
    (a, b)
}

/// (h⁰, h¹) of N(m).
pub fn normal_cohomology(ctx: FieldContext, m: i64) -> Result<(usize, usize)> {
    let (a, b) = presentation(ctx);
    let map = |entries: &[Vec<MultiPoly>], src: &[i64], dst: &[i64], level| {
        linebundle::split_map(ctx, 2, entries, src, dst, level, m)
    };
    let a0 = map(&a, &SOURCE, &TARGET, Level::Sections);
    let a1 = map(&a, &SOURCE, &TARGET, Level::Top);
    let b0 = map(&b, &[0], &SOURCE, Level::Sections);
    let b1 = map(&b, &[0], &SOURCE, Level::Top);
    if !a0.mul(&b0)?.is_zero() || !a1.mul(&b1)?.is_zero() {
        return Err(cert_fail("Jacobian and Euler syzygy do not compose to zero"));
    }
    // With H¹(O(m)) → H¹(F₁(m)) injective, H⁰ of the image sheaf is coker b0
    // and its H¹ is coker b1.
    let rank_b1 = b1.rank();
    if rank_b1 != b1.cols() {
        return Err(cert_fail(format!("syzygy is not injective on H^1 at twist {m}")));
    }
    let rank_a0 = a0.rank();
    let rank_a1 = a1.rank();
    let h0 = (a0.rows() - rank_a0) + (a1.cols() - rank_a1 - rank_b1);
    let h1 = a1.rows() - rank_a1;
    Ok((h0, h1))
}

fn h0_of_split(a: (i64, i64), m: i64) -> usize {
    let h = |d: i64| (d + 1).max(0) as usize;
    h(a.0 + m) + h(a.1 + m)
}

pub fn normal_bundle_splitting(ctx: FieldContext) -> Result<NormalSplitting> {
    let mut hilbert = Vec::new();
    for m in WINDOW {
        let (h0, h1) = normal_cohomology(ctx, m)?;
        hilbert.push((m, h0, h1));
    }
    let chi: Vec<i64> = hilbert.iter().map(|&(_, h0, h1)| h0 as i64 - h1 as i64).collect();
    let rank = chi[1] - chi[0];
    if chi.windows(2).any(|w| w[1] - w[0] != rank) {
        return Err(cert_fail("Euler characteristic of N(m) is not linear in m"));
    }
    let m0 = *WINDOW.start();
    let degree = chi[0] - rank * (m0 + 1);
    if rank != 2 || degree != 10 {
        return Err(cert_fail(format!("normal bundle has rank {rank} and degree {degree}, expected 2 and 10")));
    }
    // Splitting types (a, 10 − a) with a ≤ 5 matching every h⁰ in the window.
    let fits: Vec<(i64, i64)> = (-20..=degree / 2)
        .map(|a| (a, degree - a))
        .filter(|&s| hilbert.iter().all(|&(m, h0, _)| h0_of_split(s, m) == h0))
        .collect();
    match fits.as_slice() {
        [s] => Ok(NormalSplitting { rank, degree, splitting: *s, hilbert }),
        _ => Err(cert_fail(format!("{} splitting types fit the Hilbert function", fits.len()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisted_cubic_normal_bundle() {
        let q = FieldContext::rationals();
        let n = normal_bundle_splitting(q).unwrap();
        assert_eq!(n.splitting, (5, 5));
        assert_eq!((n.rank, n.degree), (2, 10));
        for &(m, h0, _) in &n.hilbert {
            assert_eq!(h0, h0_of_split((5, 5), m));
        }
    }

    #[test]
    fn euler_characteristic_of_twists() {
        let q = FieldContext::rationals();
        for m in -9..=2 {
            let (h0, h1) = normal_cohomology(q, m).unwrap();
            assert_eq!(h0 as i64 - h1 as i64, 2 * (m + 1) + 10, "m = {m}");
        }
    }

    #[test]
    fn same_answer_in_positive_characteristic() {
        let n = normal_bundle_splitting(FieldContext::prime(10009).unwrap()).unwrap();
        assert_eq!(n.splitting, (5, 5));
    }
}
