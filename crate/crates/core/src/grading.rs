//! Grading functionals on multi-indices.

use crate::hom::Homogeneity;
use crate::index::{CoordSymbol, DerivativeWord, KWord, Label, MultiIndex};
use crate::spec::EquationSpec;

/// Σ β(s) over all symbols.
pub fn length(beta: &MultiIndex) -> u32 {
    beta.length()
}

/// Nodes minus edges: Σ (1 − |k|) β(l,k) + Σ β(n).
pub fn bracket(beta: &MultiIndex) -> i64 {
    beta.iter()
        .map(|(s, c)| match s {
            CoordSymbol::Pair(_, k) => (1 - k.len() as i64) * *c as i64,
            CoordSymbol::Poly(_) => *c as i64,
        })
        .sum()
}

impl EquationSpec {
    /// |n|_s = Σ s_i n(i).
    pub fn scaled_degree(&self, n: &DerivativeWord) -> Homogeneity {
        let base = n
            .entries()
            .zip(&self.scaling)
            .map(|(e, s)| *s * e as i64)
            .sum();
        Homogeneity::rational(base)
    }

    /// Count of genuine noise symbols; the unit label does not count.
    pub fn noise_homogeneity(&self, beta: &MultiIndex) -> u32 {
        beta.pairs()
            .filter(|(l, _, _)| !self.noise(*l).is_unit)
            .map(|(_, _, c)| c)
            .sum()
    }

    /// Σ |n| β(n) over polynomial symbols.
    pub fn poly_degree(&self, beta: &MultiIndex) -> Homogeneity {
        beta.polys().map(|(n, c)| self.scaled_degree(&n) * c as i64).sum()
    }

    /// Homogeneity of a single symbol.
    pub fn symbol_homogeneity(&self, sym: &CoordSymbol) -> Homogeneity {
        match sym {
            CoordSymbol::Pair(l, k) => self.pair_homogeneity(*l, k),
            CoordSymbol::Poly(n) => self.scaled_degree(n) - self.eta,
        }
    }

    /// α_l + Σ_n (η − |n|) k(n).
    pub fn pair_homogeneity(&self, label: Label, k: &KWord) -> Homogeneity {
        k.iter().fold(self.noise(label).alpha, |acc, (n, c)| {
            acc + (self.eta - self.scaled_degree(n)) * *c as i64
        })
    }

    /// |β|, additive in β.
    pub fn homogeneity(&self, beta: &MultiIndex) -> Homogeneity {
        beta.iter().map(|(s, c)| self.symbol_homogeneity(s) * *c as i64).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::builtin_spec;

    #[test]
    fn bracket_and_length() {
        let s = builtin_spec("gkpz").unwrap();
        assert_eq!(length(&MultiIndex::zero()), 0);
        let beta = s.parse_mi("2 xi[] + 0[(0,1)^2]").unwrap();
        assert_eq!(bracket(&beta), 1);
        assert_eq!(length(&beta), 3);
        let gamma = s.parse_mi("3 xi[] + 0[(0,0),(0,1)^2]").unwrap();
        assert_eq!(bracket(&gamma), 1);
        assert_eq!(bracket(&s.parse_mi("2 xi[] + X(0,1)").unwrap()), 3);
    }

    #[test]
    fn parabolic_degrees() {
        let s = builtin_spec("gkpz").unwrap();
        let t = DerivativeWord::from_slice(&[1, 0]);
        let x = DerivativeWord::from_slice(&[0, 1]);
        assert_eq!(s.scaled_degree(&t), Homogeneity::from_ints(2, 0));
        assert_eq!(s.scaled_degree(&t.add(&x)), Homogeneity::from_ints(3, 0));
        assert_eq!(s.poly_degree(&s.parse_mi("X(0,1)").unwrap()), Homogeneity::from_ints(1, 0));
        assert_eq!(s.poly_degree(&s.parse_mi("xi[]").unwrap()), Homogeneity::zero());
    }

    #[test]
    fn noise_homogeneity_skips_unit() {
        let s = builtin_spec("gkpz").unwrap();
        assert_eq!(s.noise_homogeneity(&s.parse_mi("0[(0,1)^2]").unwrap()), 0);
        assert_eq!(s.noise_homogeneity(&s.parse_mi("xi[] + xi[(0,0)]").unwrap()), 2);
        assert_eq!(s.noise_homogeneity(&s.parse_mi("X(1,0)").unwrap()), 0);
    }

    #[test]
    fn worked_homogeneity() {
        let s = builtin_spec("gkpz").unwrap();
        let beta = s.parse_mi("3 xi[] + 0[(0,0),(0,1)] + 0[(0,1)^2]").unwrap();
        assert_eq!(s.homogeneity(&beta), Homogeneity::frac(1, 2, -3, 1));
        let n = DerivativeWord::from_slice(&[1, 1]);
        assert_eq!(
            s.homogeneity(&MultiIndex::unit(CoordSymbol::Poly(n))) + s.eta,
            s.scaled_degree(&n)
        );
    }
}
