//! Expression builders shared by the integration tests.
#![allow(dead_code)]

use mindex::ring::Ring;
use mindex::symbolic::{Atom, SymExpr};
use mindex::{DerivativeWord, EquationSpec, MultiIndex, Q};

pub const BUDGET: usize = 1_000_000;

pub fn mi(s: &EquationSpec, text: &str) -> MultiIndex {
    s.parse_mi(text).unwrap()
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Builds expressions from terse atom names.
pub struct Ex<'a> {
    pub s: &'a EquationSpec,
}

impl Ex<'_> {
    pub fn pi(&self, g: &str) -> SymExpr {
        SymExpr::atom(Atom::ModelDeriv(self.s.zero_word(), mi(self.s, g)))
    }

    pub fn dpi(&self, n: &[u32], g: &str) -> SymExpr {
        SymExpr::atom(Atom::ModelDeriv(DerivativeWord::from_slice(n), mi(self.s, g)))
    }

    pub fn c(&self, g: &str) -> SymExpr {
        SymExpr::atom(Atom::Constant(mi(self.s, g)))
    }

    pub fn xi(&self) -> SymExpr {
        SymExpr::atom(Atom::Noise(self.s.label_by_name("xi").unwrap()))
    }

    pub fn x(&self, axis: usize) -> SymExpr {
        SymExpr::atom(Atom::PolyBase(axis))
    }

    pub fn f(&self, name: &str, order: u32) -> SymExpr {
        SymExpr::atom(Atom::Func { name: name.into(), order })
    }

    pub fn p(&self, name: &str) -> SymExpr {
        SymExpr::atom(Atom::Param(name.into()))
    }

    pub fn u(&self) -> SymExpr {
        SymExpr::atom(Atom::Jet(self.s.zero_word()))
    }

    pub fn du(&self, n: &[u32]) -> SymExpr {
        SymExpr::atom(Atom::Jet(DerivativeWord::from_slice(n)))
    }
}

pub fn sum(parts: &[SymExpr]) -> SymExpr {
    parts.iter().fold(SymExpr::zero(), |acc, p| acc.add(p))
}

pub fn prod(parts: &[&SymExpr]) -> SymExpr {
    parts.iter().fold(SymExpr::one(), |acc, p| acc.mul(p))
}

pub fn k(n: i64, e: SymExpr) -> SymExpr {
    e.scale(&q(n, 1))
}

/// Every `β` of length at most `max_len` over a finite alphabet that classifies
/// into `N` with `|β| < 0` and at least two noises, found without any
/// homogeneity pruning. Pair words range over `|n| ≤ η`, polynomial words over
/// `|n| ≤ poly_bound`.
pub fn brute_force_counterterms(s: &EquationSpec, max_len: u32, poly_bound: i64) -> std::collections::BTreeSet<MultiIndex> {
    use mindex::enumerate::PopulationClass;
    use mindex::index::KWord;
    use mindex::{CoordSymbol, Homogeneity};

    let grid = |bound: Homogeneity| -> Vec<DerivativeWord> {
        let mut words = vec![s.zero_word()];
        for axis in 0..s.dim {
            let mut next = Vec::new();
            for w in &words {
                let mut v = *w;
                while s.scaled_degree(&v) <= bound {
                    next.push(v);
                    v = v.plus_unit(axis);
                }
            }
            words = next;
        }
        words
    };
    let slots = grid(s.eta);
    let mut kwords = vec![KWord::empty()];
    for n in &slots {
        let mut next = Vec::new();
        for k in &kwords {
            for c in 0..max_len {
                if k.len() + c < max_len {
                    let mut k = k.clone();
                    k.add_count(*n, c);
                    next.push(k);
                }
            }
        }
        kwords = next;
    }
    let mut alphabet: Vec<(CoordSymbol, i64)> = Vec::new();
    for l in s.labels() {
        for k in &kwords {
            if s.is_active_pair(l, k) {
                alphabet.push((CoordSymbol::Pair(l, k.clone()), 1 - k.len() as i64));
            }
        }
    }
    for n in grid(Homogeneity::from_ints(poly_bound, 0)) {
        alphabet.push((CoordSymbol::Poly(n), 1));
    }

    fn rec(
        s: &EquationSpec,
        alphabet: &[(CoordSymbol, i64)],
        from: usize,
        beta: &mut MultiIndex,
        bracket: i64,
        left: u32,
        out: &mut std::collections::BTreeSet<MultiIndex>,
    ) {
        if bracket == 1
            && s.classify(beta) == PopulationClass::N
            && s.homogeneity(beta) < Homogeneity::zero()
            && s.noise_homogeneity(beta) >= 2
        {
            out.insert(beta.clone());
        }
        if left == 0 {
            return;
        }
        for (i, (sym, b)) in alphabet.iter().enumerate().skip(from) {
            // every later symbol raises the bracket by at most one
            if bracket + b + (left as i64 - 1) < 1 {
                continue;
            }
            beta.add_count(sym.clone(), 1);
            rec(s, alphabet, i, beta, bracket + b, left - 1, out);
            beta.remove_count(sym, 1);
        }
    }
    let mut out = std::collections::BTreeSet::new();
    rec(s, &alphabet, 0, &mut MultiIndex::zero(), 0, max_len, &mut out);
    out
}
