//! Chern classes in ℤ[H]/H³ and Riemann–Roch on ℙ².

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

/// Rank and total Chern class 1 + c₁H + c₂H² of a sheaf on ℙ².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChernClass {
    pub rank: i64,
    pub c1: i64,
    pub c2: i64,
}

impl ChernClass {
    pub fn line(d: i64) -> Self {
        ChernClass { rank: 1, c1: d, c2: 0 }
    }

    pub fn trivial(rank: i64) -> Self {
        ChernClass { rank, c1: 0, c2: 0 }
    }

    /// Whitney product: the class of a direct sum or of the middle of a short exact sequence.
    pub fn sum(&self, other: &ChernClass) -> Self {
        ChernClass { rank: self.rank + other.rank, c1: self.c1 + other.c1, c2: self.c2 + other.c2 + self.c1 * other.c1 }
    }

    /// The class of Q in 0 → other → self → Q → 0.
    pub fn quotient(&self, other: &ChernClass) -> Self {
        // (1 + aH + bH²)⁻¹ = 1 − aH + (a² − b)H²
        let (a, b) = (other.c1, other.c2);
        let inv = ChernClass { rank: 0, c1: -a, c2: a * a - b };
        ChernClass {
            rank: self.rank - other.rank,
            c1: self.c1 + inv.c1,
            c2: self.c2 + inv.c2 + self.c1 * inv.c1,
        }
    }

    pub fn dual(&self) -> Self {
        ChernClass { rank: self.rank, c1: -self.c1, c2: self.c2 }
    }

    pub fn twist(&self, k: i64) -> Self {
        let r = self.rank;
        ChernClass { rank: r, c1: self.c1 + r * k, c2: self.c2 + (r - 1) * k * self.c1 + r * (r - 1) / 2 * k * k }
    }

    pub fn slope(&self) -> Ratio<i64> {
        Ratio::new(self.c1, self.rank)
    }

    pub fn character(&self) -> ChernCharacter {
        ChernCharacter {
            ch0: Ratio::from_integer(self.rank),
            ch1: Ratio::from_integer(self.c1),
            ch2: Ratio::new(self.c1 * self.c1 - 2 * self.c2, 2),
        }
    }

    /// χ(E(k)) by Hirzebruch–Riemann–Roch.
    pub fn euler_characteristic(&self, k: i64) -> i64 {
        self.twist(k).character().euler_characteristic()
    }
}

impl fmt::Display for ChernClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: i64, h: &str| match c {
            0 => String::new(),
            c if c < 0 => format!(" - {}{h}", -c),
            c => format!(" + {c}{h}"),
        };
        write!(f, "1{}{}", term(self.c1, "H"), term(self.c2, "H^2"))
    }
}

/// ch₀ + ch₁H + ch₂H².
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChernCharacter {
    pub ch0: Ratio<i64>,
    pub ch1: Ratio<i64>,
    pub ch2: Ratio<i64>,
}

impl ChernCharacter {
    pub fn product(&self, o: &ChernCharacter) -> Self {
        ChernCharacter {
            ch0: self.ch0 * o.ch0,
            ch1: self.ch0 * o.ch1 + self.ch1 * o.ch0,
            ch2: self.ch0 * o.ch2 + self.ch1 * o.ch1 + self.ch2 * o.ch0,
        }
    }

    pub fn dual(&self) -> Self {
        ChernCharacter { ch0: self.ch0, ch1: -self.ch1, ch2: self.ch2 }
    }

    /// Degree-2 part of ch·td with td(ℙ²) = 1 + (3/2)H + H².
    pub fn euler_characteristic(&self) -> i64 {
        let chi = self.ch2 + self.ch1 * Ratio::new(3, 2) + self.ch0;
        assert!(chi.is_integer(), "Riemann-Roch gave a non-integer");
        chi.to_integer()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_bundles() {
        for k in -6..=6 {
            let expected = (k + 1) * (k + 2) / 2;
            assert_eq!(ChernClass::line(0).euler_characteristic(k), expected);
        }
    }

    #[test]
    fn whitney_and_quotient_are_inverse() {
        let a = ChernClass { rank: 3, c1: 2, c2: -1 };
        let b = ChernClass { rank: 1, c1: -4, c2: 0 };
        assert_eq!(a.sum(&b).quotient(&b), a);
    }

    #[test]
    fn display() {
        assert_eq!(ChernClass { rank: 2, c1: 2, c2: 3 }.to_string(), "1 + 2H + 3H^2");
        assert_eq!(ChernClass { rank: 2, c1: -2, c2: 3 }.to_string(), "1 - 2H + 3H^2");
    }
}
