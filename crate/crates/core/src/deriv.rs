//! The derivations `D^(n)` and `𝔟∂_i`, the generators `z^γ D^(n)`, and their
//! pre-Lie and Lie structure.
//!
//! Operators are stored column-wise: for an input monomial `z^γ` we list the
//! output monomials `z^β` with their coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::enumerate::PopulationClass;
use crate::error::{Error, Result};
use crate::hom::Homogeneity;
use crate::index::{CoordSymbol, DerivativeWord, KWord, Label, MultiIndex};
use crate::spec::EquationSpec;
use crate::Q;

/// Sparse column `β ↦ coefficient` of an operator applied to one monomial.
pub type Column = BTreeMap<MultiIndex, Q>;

pub(crate) fn add_into(col: &mut Column, key: MultiIndex, value: Q) {
    if value.is_zero() {
        return;
    }
    match col.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += value;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub(crate) fn q_int(n: impl Into<BigInt>) -> Q {
    Q::from_integer(n.into())
}

/// Which derivative orders `n` a generator `z^γ D^(n)` may carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// `|n| < η`
    Minus,
    /// `|n| < η + |γ|`
    Plus,
}

impl Flavor {
    pub fn admits(self, spec: &EquationSpec, gamma: &MultiIndex, n: &DerivativeWord) -> bool {
        let deg = spec.scaled_degree(n);
        match self {
            Flavor::Minus => deg < spec.eta,
            Flavor::Plus => deg < spec.eta + spec.homogeneity(gamma),
        }
    }

    /// Upper bound (exclusive) on `|n|` for a given γ.
    pub fn degree_bound(self, spec: &EquationSpec, gamma: &MultiIndex) -> Homogeneity {
        match self {
            Flavor::Minus => spec.eta,
            Flavor::Plus => spec.eta + spec.homogeneity(gamma),
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" => Ok(Flavor::Minus),
            "plus" => Ok(Flavor::Plus),
            other => Err(Error::Parse(format!("unknown flavor `{other}`"))),
        }
    }
}

/// An element of the generator set: `z^γ D^(n)` with γ ∈ N, or `𝔟∂_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Deriv { gamma: MultiIndex, n: DerivativeWord },
    Shift(usize),
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Deriv { gamma, n } => write!(f, "z^{{{gamma:?}}}D{n}"),
            Generator::Shift(i) => write!(f, "d{i}"),
        }
    }
}

/// Finite rational combination of generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenCombo(BTreeMap<Generator, Q>);

impl GenCombo {
    pub fn zero() -> Self {
        GenCombo::default()
    }

    pub fn single(g: Generator) -> Self {
        let mut c = GenCombo::zero();
        c.add(g, Q::one());
        c
    }

    pub fn add(&mut self, g: Generator, q: Q) {
        if q.is_zero() {
            return;
        }
        let entry = self.0.entry(g.clone()).or_insert_with(Q::zero);
        *entry += q;
        if entry.is_zero() {
            self.0.remove(&g);
        }
    }

    pub fn add_combo(&mut self, other: &GenCombo, scale: &Q) {
        for (g, q) in &other.0 {
            self.add(g.clone(), q * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Generator, &Q)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sub(&self, other: &GenCombo) -> GenCombo {
        let mut out = self.clone();
        out.add_combo(other, &-Q::one());
        out
    }
}

/// Derivation matrices for one spec, with memoized raw columns.
pub struct DerivationAlgebra {
    spec: EquationSpec,
    slots: Vec<DerivativeWord>,
    active: RwLock<HashMap<(Label, KWord), bool>>,
    class: RwLock<HashMap<MultiIndex, PopulationClass>>,
    raw: RwLock<HashMap<(DerivativeWord, MultiIndex), Arc<Column>>>,
}

impl DerivationAlgebra {
    pub fn new(spec: &EquationSpec) -> Self {
        DerivationAlgebra {
            slots: spec.words_below(spec.eta),
            spec: spec.clone(),
            active: RwLock::new(HashMap::new()),
            class: RwLock::new(HashMap::new()),
            raw: RwLock::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &EquationSpec {
        &self.spec
    }

    /// Words `n` with `|n| < η`; only these can appear inside a subcritical `k`.
    pub fn slots(&self) -> &[DerivativeWord] {
        &self.slots
    }

    pub fn is_active(&self, label: Label, k: &KWord) -> bool {
        let key = (label, k.clone());
        if let Some(v) = self.active.read().expect("lock").get(&key) {
            return *v;
        }
        let v = self.spec.is_active_pair(label, k);
        self.active.write().expect("lock").insert(key, v);
        v
    }

    pub fn classify(&self, beta: &MultiIndex) -> PopulationClass {
        if let Some(c) = self.class.read().expect("lock").get(beta) {
            return *c;
        }
        let c = self.spec.classify(beta);
        self.class.write().expect("lock").insert(beta.clone(), c);
        c
    }

    pub fn is_projected(&self, beta: &MultiIndex) -> bool {
        self.classify(beta).is_projected()
    }

    pub fn in_n(&self, beta: &MultiIndex) -> bool {
        self.classify(beta) == PopulationClass::N
    }

    /// `D^(n) z^γ` with inactive pairs dropped but no projection.
    pub fn raw_deriv(&self, n: &DerivativeWord, gamma: &MultiIndex) -> Arc<Column> {
        let key = (*n, gamma.clone());
        if let Some(c) = self.raw.read().expect("lock").get(&key) {
            return c.clone();
        }
        let mut col = Column::new();
        for (sym, count) in gamma.iter() {
            match sym {
                CoordSymbol::Pair(l, k) => {
                    let grown = k.plus(*n);
                    if !self.is_active(*l, &grown) {
                        continue;
                    }
                    let coeff = q_int(*count as u64 * (k.get(n) as u64 + 1));
                    let mut beta = gamma.clone();
                    beta.remove_count(sym, 1);
                    beta.add_count(CoordSymbol::Pair(*l, grown), 1);
                    add_into(&mut col, beta, coeff);
                }
                CoordSymbol::Poly(m) if m == n => {
                    let mut beta = gamma.clone();
                    beta.remove_count(sym, 1);
                    add_into(&mut col, beta, q_int(*count));
                }
                CoordSymbol::Poly(_) => {}
            }
        }
        let col = Arc::new(col);
        self.raw.write().expect("lock").insert(key, col.clone());
        col
    }

    /// `𝔟∂_i z^γ = Σ_n (n(i)+1) z_{n+e_i} D^(n) z^γ`, unprojected.
    pub fn raw_shift(&self, axis: usize, gamma: &MultiIndex) -> Column {
        let mut col = Column::new();
        let mut words: Vec<DerivativeWord> = self.slots.clone();
        for (n, _) in gamma.polys() {
            if !words.contains(&n) {
                words.push(n);
            }
        }
        for n in words {
            let prefactor = q_int(n.get(axis) + 1);
            let shifted = CoordSymbol::Poly(n.plus_unit(axis));
            for (beta, q) in self.raw_deriv(&n, gamma).iter() {
                add_into(&mut col, beta.with(shifted.clone(), 1), q * &prefactor);
            }
        }
        col
    }

    /// Projected column of `z^{γ'} D^(n')` on `z^γ`.
    pub fn deriv_column(&self, gamma_p: &MultiIndex, n_p: &DerivativeWord, gamma: &MultiIndex) -> Column {
        if !self.is_projected(gamma) {
            return Column::new();
        }
        self.raw_deriv(n_p, gamma)
            .iter()
            .map(|(b, q)| (b.add(gamma_p), q.clone()))
            .filter(|(b, _)| self.is_projected(b))
            .collect()
    }

    /// Projected column of `𝔟∂_i` on `z^γ`.
    pub fn shift_column(&self, axis: usize, gamma: &MultiIndex) -> Column {
        if !self.is_projected(gamma) {
            return Column::new();
        }
        let mut col = self.raw_shift(axis, gamma);
        col.retain(|b, _| self.is_projected(b));
        col
    }

    pub fn deriv_coeff(&self, gamma_p: &MultiIndex, n_p: &DerivativeWord, beta: &MultiIndex, gamma: &MultiIndex) -> Q {
        self.deriv_column(gamma_p, n_p, gamma).remove(beta).unwrap_or_else(Q::zero)
    }

    pub fn dpartial_coeff(&self, axis: usize, beta: &MultiIndex, gamma: &MultiIndex) -> Q {
        self.shift_column(axis, gamma).remove(beta).unwrap_or_else(Q::zero)
    }

    /// Projected column of a generator on `z^γ`.
    pub fn generator_column(&self, g: &Generator, gamma: &MultiIndex) -> Column {
        match g {
            Generator::Deriv { gamma: gp, n } => self.deriv_column(gp, n, gamma),
            Generator::Shift(i) => self.shift_column(*i, gamma),
        }
    }

    pub fn prelie(&self, left: &Generator, right: &Generator) -> Result<GenCombo> {
        let mut out = GenCombo::zero();
        match (left, right) {
            (Generator::Shift(_), Generator::Shift(_)) => return Err(Error::UndefinedPreLie),
            (Generator::Deriv { gamma: gp, n: np }, Generator::Shift(i)) => {
                if let Some(lower) = np.minus_unit(*i) {
                    out.add(Generator::Deriv { gamma: gp.clone(), n: lower }, q_int(np.get(*i)));
                }
            }
            (_, Generator::Deriv { gamma, n }) => {
                for (beta, q) in self.generator_column(left, gamma) {
                    if self.in_n(&beta) {
                        out.add(Generator::Deriv { gamma: beta, n: *n }, q);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn prelie_combo(&self, left: &GenCombo, right: &GenCombo) -> Result<GenCombo> {
        let mut out = GenCombo::zero();
        for (a, qa) in left.iter() {
            for (b, qb) in right.iter() {
                out.add_combo(&self.prelie(a, b)?, &(qa * qb));
            }
        }
        Ok(out)
    }

    pub fn lie_bracket(&self, left: &Generator, right: &Generator) -> GenCombo {
        match (left, right) {
            (Generator::Shift(_), Generator::Shift(_)) => GenCombo::zero(),
            _ => {
                let ab = self.prelie(left, right).expect("mixed or derivation pair");
                let ba = self.prelie(right, left).expect("mixed or derivation pair");
                ab.sub(&ba)
            }
        }
    }

    pub fn lie_bracket_combo(&self, left: &GenCombo, right: &GenCombo) -> GenCombo {
        let mut out = GenCombo::zero();
        for (a, qa) in left.iter() {
            for (b, qb) in right.iter() {
                out.add_combo(&self.lie_bracket(a, b), &(qa * qb));
            }
        }
        out
    }

    /// Homogeneity shift of a generator: `|z^γ D^(n)| = |γ| + η − |n|`, `|𝔟∂_i| = s_i`.
    pub fn generator_degree(&self, g: &Generator) -> Homogeneity {
        match g {
            Generator::Deriv { gamma, n } => {
                self.spec.homogeneity(gamma) + self.spec.eta - self.spec.scaled_degree(n)
            }
            Generator::Shift(i) => Homogeneity::rational(self.spec.scaling[*i]),
        }
    }

    /// The generators of a flavor whose γ lies in `set`.
    pub fn generators(&self, set: &[MultiIndex], flavor: Flavor) -> Vec<Generator> {
        let mut out = Vec::new();
        for gamma in set.iter().filter(|g| self.in_n(g)) {
            for n in self.spec.words_below(flavor.degree_bound(&self.spec, gamma)) {
                out.push(Generator::Deriv { gamma: gamma.clone(), n });
            }
        }
        out.extend((0..self.spec.dim).map(Generator::Shift));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::bracket;
    use crate::spec::builtin_spec;

    fn gkpz() -> (EquationSpec, DerivationAlgebra) {
        let s = builtin_spec("gkpz").unwrap();
        let a = DerivationAlgebra::new(&s);
        (s, a)
    }

    #[test]
    fn d_zero_on_xi_pair() {
        let (s, a) = gkpz();
        let z = s.zero_word();
        let gamma = s.parse_mi("xi[(0,0)]").unwrap();
        let col = a.raw_deriv(&z, &gamma);
        assert_eq!(col.get(&s.parse_mi("xi[(0,0)^2]").unwrap()), Some(&q_int(2)));
    }

    #[test]
    fn d_space_on_unit_pair() {
        let (s, a) = gkpz();
        let x = DerivativeWord::from_slice(&[0, 1]);
        let gamma = s.parse_mi("0[(0,0)^3]").unwrap();
        let col = a.raw_deriv(&x, &gamma);
        assert_eq!(col.get(&s.parse_mi("0[(0,0)^3,(0,1)]").unwrap()), Some(&q_int(1)));
    }

    #[test]
    fn deriv_on_poly_gives_prefactor() {
        let (s, a) = gkpz();
        let x = DerivativeWord::from_slice(&[0, 1]);
        let gp = s.parse_mi("xi[]").unwrap();
        let en = MultiIndex::unit(CoordSymbol::Poly(x));
        assert_eq!(a.deriv_coeff(&gp, &x, &gp, &en), q_int(1));
    }

    #[test]
    fn shift_example() {
        let (s, a) = gkpz();
        let col = a.raw_shift(1, &s.parse_mi("0[(0,0)]").unwrap());
        assert_eq!(col.get(&s.parse_mi("0[(0,0)^2] + X(0,1)").unwrap()), Some(&q_int(2)));
        assert_eq!(col.get(&s.parse_mi("0[(0,0),(0,1)] + X(0,2)").unwrap()), Some(&q_int(2)));
        let n = DerivativeWord::from_slice(&[0, 2]);
        let col = a.shift_column(1, &MultiIndex::unit(CoordSymbol::Poly(n)));
        assert_eq!(col.get(&s.parse_mi("X(0,3)").unwrap()), Some(&q_int(3)));
    }

    #[test]
    fn shift_preserves_noise_and_bracket() {
        let (s, a) = gkpz();
        let gamma = s.parse_mi("0[(0,1)^2] + 2 xi[]").unwrap();
        for axis in 0..2 {
            for (beta, _) in a.raw_shift(axis, &gamma) {
                assert_eq!(s.noise_homogeneity(&beta), s.noise_homogeneity(&gamma));
                assert_eq!(bracket(&beta), bracket(&gamma));
            }
        }
    }

    #[test]
    fn shift_shift_prelie_is_undefined() {
        let (_, a) = gkpz();
        assert_eq!(a.prelie(&Generator::Shift(0), &Generator::Shift(1)), Err(Error::UndefinedPreLie));
        assert!(a.lie_bracket(&Generator::Shift(0), &Generator::Shift(1)).is_zero());
    }

    #[test]
    fn deriv_on_shift_lowers_order() {
        let (s, a) = gkpz();
        let gamma = s.parse_mi("xi[]").unwrap();
        let g = Generator::Deriv { gamma: gamma.clone(), n: s.zero_word() };
        assert!(a.prelie(&g, &Generator::Shift(1)).unwrap().is_zero());
        let g = Generator::Deriv { gamma: gamma.clone(), n: DerivativeWord::from_slice(&[0, 1]) };
        let out = a.prelie(&g, &Generator::Shift(1)).unwrap();
        assert_eq!(out, GenCombo::single(Generator::Deriv { gamma, n: s.zero_word() }));
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let (s, a) = gkpz();
        let g = Generator::Deriv { gamma: s.parse_mi("xi[]").unwrap(), n: s.zero_word() };
        let h = Generator::Deriv { gamma: s.parse_mi("xi[] + xi[(0,0)]").unwrap(), n: s.zero_word() };
        assert!(a.lie_bracket(&g, &g).is_zero());
        let mut sum = a.lie_bracket(&g, &h);
        sum.add_combo(&a.lie_bracket(&h, &g), &Q::one());
        assert!(sum.is_zero());
    }
}
