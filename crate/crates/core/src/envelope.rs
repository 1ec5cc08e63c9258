//! The basis `𝖣_(J,m)` of the universal enveloping algebra, its action on
//! monomials, coproduct, rank-one products and full basis products.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::deriv::{add_into, q_int, Column, DerivationAlgebra, Flavor, Generator};
use crate::error::{Error, Result};
use crate::hom::Homogeneity;
use crate::index::{DerivativeWord, MultiIndex};
use crate::spec::EquationSpec;
use crate::Q;

/// A generator key `(γ, n)` of `z^γ D^(n)`.
pub type PairKey = (MultiIndex, DerivativeWord);

/// Basis label `(J, m)`: a multiset `J` of generator keys and a shift word `m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GLIndex {
    j: Vec<(PairKey, u32)>,
    pub m: DerivativeWord,
}

impl GLIndex {
    pub fn unit(dim: usize) -> Self {
        GLIndex { j: Vec::new(), m: DerivativeWord::zero(dim) }
    }

    pub fn from_parts<I: IntoIterator<Item = (PairKey, u32)>>(j: I, m: DerivativeWord) -> Self {
        let mut x = GLIndex { j: Vec::new(), m };
        for (k, c) in j {
            x.add_pair(k, c);
        }
        x
    }

    pub fn single(gamma: MultiIndex, n: DerivativeWord) -> Self {
        let dim = n.dim();
        GLIndex::from_parts([((gamma, n), 1)], DerivativeWord::zero(dim))
    }

    pub fn shifts(m: DerivativeWord) -> Self {
        GLIndex { j: Vec::new(), m }
    }

    pub fn pairs(&self) -> &[(PairKey, u32)] {
        &self.j
    }

    pub fn j_get(&self, key: &PairKey) -> u32 {
        self.j.binary_search_by(|(k, _)| k.cmp(key)).map(|p| self.j[p].1).unwrap_or(0)
    }

    pub fn add_pair(&mut self, key: PairKey, count: u32) {
        if count == 0 {
            return;
        }
        match self.j.binary_search_by(|(k, _)| k.cmp(&key)) {
            Ok(p) => self.j[p].1 += count,
            Err(p) => self.j.insert(p, (key, count)),
        }
    }

    pub fn with_pair(&self, key: PairKey) -> GLIndex {
        let mut x = self.clone();
        x.add_pair(key, 1);
        x
    }

    pub fn without_pair(&self, key: &PairKey) -> Option<GLIndex> {
        let p = self.j.binary_search_by(|(k, _)| k.cmp(key)).ok()?;
        let mut x = self.clone();
        if x.j[p].1 == 1 {
            x.j.remove(p);
        } else {
            x.j[p].1 -= 1;
        }
        Some(x)
    }

    pub fn j_is_empty(&self) -> bool {
        self.j.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.j.is_empty() && self.m.is_zero()
    }

    /// |J| + |m|.
    pub fn len(&self) -> usize {
        self.j.iter().map(|(_, c)| *c as usize).sum::<usize>() + self.m.order() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.is_unit()
    }

    /// Σ J(γ,n) γ.
    pub fn gamma_sum(&self) -> MultiIndex {
        self.j.iter().fold(MultiIndex::zero(), |acc, ((g, _), c)| acc.add(&g.scaled(*c)))
    }

    /// J! m!
    pub fn factorial(&self) -> num_bigint::BigInt {
        self.j.iter().map(|(_, c)| crate::index::factorial(*c)).product::<num_bigint::BigInt>() * self.m.factorial()
    }

    /// Homogeneity shift `Σ J(γ,n)(|γ| + η − |n|) + Σ m(i) s_i`.
    pub fn degree(&self, spec: &EquationSpec) -> Homogeneity {
        let pairs: Homogeneity = self
            .j
            .iter()
            .map(|((g, n), c)| (spec.homogeneity(g) + spec.eta - spec.scaled_degree(n)) * *c as i64)
            .sum();
        pairs + spec.scaled_degree(&self.m)
    }

    pub fn respects(&self, spec: &EquationSpec, flavor: Flavor) -> bool {
        self.j.iter().all(|((g, n), _)| flavor.admits(spec, g, n))
    }

    pub fn add(&self, other: &GLIndex) -> GLIndex {
        let mut x = self.clone();
        for (k, c) in &other.j {
            x.add_pair(k.clone(), *c);
        }
        x.m = x.m.add(&other.m);
        x
    }

    /// All `(x', x'')` with `x' + x'' = self`.
    pub fn splittings(&self) -> Vec<(GLIndex, GLIndex)> {
        let dim = self.m.dim();
        let mut lefts = vec![GLIndex::unit(dim)];
        for (k, c) in &self.j {
            let mut next = Vec::new();
            for base in &lefts {
                for take in 0..=*c {
                    let mut x = base.clone();
                    x.add_pair(k.clone(), take);
                    next.push(x);
                }
            }
            lefts = next;
        }
        let mut ms = vec![DerivativeWord::zero(dim)];
        for axis in 0..dim {
            let mut next = Vec::new();
            for base in &ms {
                let mut w = *base;
                for _ in 0..=self.m.get(axis) {
                    next.push(w);
                    w = w.plus_unit(axis);
                }
            }
            ms = next;
        }
        let mut out = Vec::with_capacity(lefts.len() * ms.len());
        for left_j in &lefts {
            for m1 in &ms {
                let left = GLIndex { j: left_j.j.clone(), m: *m1 };
                let right = self.subtract(&left).expect("left part is a sub-label");
                out.push((left, right));
            }
        }
        out
    }

    fn subtract(&self, other: &GLIndex) -> Option<GLIndex> {
        let mut x = self.clone();
        for (k, c) in &other.j {
            for _ in 0..*c {
                x = x.without_pair(k)?;
            }
        }
        x.m = x.m.checked_sub(&other.m)?;
        Some(x)
    }
}

impl fmt::Debug for GLIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, ((g, n), c)) in self.j.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if *c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "e[{g:?};{n}]")?;
        }
        write!(f, "|{})", self.m)
    }
}

/// Finite rational combination of basis labels.
pub type GLCombo = BTreeMap<GLIndex, Q>;

fn add_gl(combo: &mut GLCombo, x: GLIndex, q: Q) {
    if q.is_zero() {
        return;
    }
    let e = combo.entry(x.clone()).or_insert_with(Q::zero);
    *e += q;
    if e.is_zero() {
        combo.remove(&x);
    }
}

/// Enveloping-algebra computations over one spec.
pub struct Envelope {
    alg: DerivationAlgebra,
    action: RwLock<HashMap<(GLIndex, MultiIndex), Arc<Column>>>,
    basis_words: RwLock<HashMap<GLIndex, Arc<GLCombo>>>,
}

impl Envelope {
    pub fn new(spec: &EquationSpec) -> Self {
        Envelope {
            alg: DerivationAlgebra::new(spec),
            action: RwLock::new(HashMap::new()),
            basis_words: RwLock::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &DerivationAlgebra {
        &self.alg
    }

    pub fn spec(&self) -> &EquationSpec {
        self.alg.spec()
    }

    /// Column of `ρ(𝖣_x)` on `z^γ`, projected onto `P ∪ N̄`.
    pub fn action_column(&self, x: &GLIndex, gamma: &MultiIndex) -> Arc<Column> {
        let key = (x.clone(), gamma.clone());
        if let Some(c) = self.action.read().expect("lock").get(&key) {
            return c.clone();
        }
        let col = Arc::new(self.compute_action(x, gamma));
        self.action.write().expect("lock").insert(key, col.clone());
        col
    }

    pub fn action_coeff(&self, x: &GLIndex, beta: &MultiIndex, gamma: &MultiIndex) -> Q {
        self.action_column(x, gamma).get(beta).cloned().unwrap_or_else(Q::zero)
    }

    fn compute_action(&self, x: &GLIndex, gamma: &MultiIndex) -> Column {
        let alg = &self.alg;
        if !alg.is_projected(gamma) {
            return Column::new();
        }
        if x.j_is_empty() {
            // (1/m!) Π 𝔟∂_i^{m(i)}
            let mut col = Column::new();
            col.insert(gamma.clone(), Q::one());
            for axis in 0..x.m.dim() {
                for _ in 0..x.m.get(axis) {
                    let mut next = Column::new();
                    for (b, q) in &col {
                        for (bb, qq) in alg.shift_column(axis, b) {
                            add_into(&mut next, bb, q * qq);
                        }
                    }
                    col = next;
                }
            }
            let norm = Q::from_integer(x.m.factorial());
            return col.into_iter().map(|(b, q)| (b, q / &norm)).collect();
        }
        let (key, mult) = x.j[0].clone();
        let (gt, nt) = &key;
        let rest = x.without_pair(&key).expect("peeled key present");
        let inv = Q::one() / q_int(mult);
        let mut col = Column::new();
        for (delta, q) in alg.deriv_column(gt, nt, gamma) {
            for (b, qq) in self.action_column(&rest, &delta).iter() {
                add_into(&mut col, b.clone(), &q * qq * &inv);
            }
        }
        for (left, right) in rest.splittings() {
            if left.is_unit() {
                continue;
            }
            for (bt, q) in self.action_column(&left, gt).iter() {
                if !alg.in_n(bt) {
                    continue;
                }
                let ext_key = (bt.clone(), *nt);
                let factor = q_int(right.j_get(&ext_key) + 1) * q * &inv;
                let grown = right.with_pair(ext_key);
                for (b, qq) in self.action_column(&grown, gamma).iter() {
                    add_into(&mut col, b.clone(), -(&factor * qq));
                }
            }
        }
        col
    }

    /// Normal-ordered evaluation `(1/(J! m!)) z^{ΣJγ} 𝔟∂^m Π D^J`, projecting
    /// only at the end. Independent of [`Envelope::action_column`].
    pub fn action_column_normal_ordered(&self, x: &GLIndex, gamma: &MultiIndex) -> Column {
        let alg = &self.alg;
        if !alg.is_projected(gamma) {
            return Column::new();
        }
        let mut col = Column::new();
        col.insert(gamma.clone(), Q::one());
        for ((_, n), c) in x.pairs() {
            for _ in 0..*c {
                let mut next = Column::new();
                for (b, q) in &col {
                    for (bb, qq) in alg.raw_deriv(n, b).iter() {
                        add_into(&mut next, bb.clone(), q * qq);
                    }
                }
                col = next;
            }
        }
        for axis in 0..x.m.dim() {
            for _ in 0..x.m.get(axis) {
                let mut next = Column::new();
                for (b, q) in &col {
                    for (bb, qq) in alg.raw_shift(axis, b) {
                        add_into(&mut next, bb, q * qq);
                    }
                }
                col = next;
            }
        }
        let prefix = x.gamma_sum();
        let norm = Q::from_integer(x.factorial());
        col.into_iter()
            .map(|(b, q)| (b.add(&prefix), q / &norm))
            .filter(|(b, _)| alg.is_projected(b))
            .collect()
    }

    pub fn coproduct(&self, x: &GLIndex) -> Vec<(GLIndex, GLIndex)> {
        x.splittings()
    }

    /// Coefficient of `𝖣_(e_(γ,n),0)` in `𝖣_{x'} 𝖣_{x''}`.
    pub fn rank_one_product_coeff(&self, left: &GLIndex, right: &GLIndex, target: &PairKey) -> Q {
        let (gamma, n) = target;
        let mut total = Q::zero();
        if right.m.is_zero() && right.pairs().len() == 1 && right.pairs()[0].1 == 1 {
            let ((gp, np), _) = &right.pairs()[0];
            if np == n {
                total += self.action_coeff(left, gamma, gp);
            }
        }
        if right.j_is_empty() {
            let shifted = n.add(&right.m);
            if *left == GLIndex::single(gamma.clone(), shifted) {
                total += Q::from_integer(DerivativeWord::binomial(&shifted, &right.m));
            }
        }
        total
    }

    /// `𝖣_y · z^γ D^(n)` for every `y` in the combo.
    pub fn right_mul_deriv(&self, combo: &GLCombo, key: &PairKey) -> GLCombo {
        let (gamma, n) = key;
        let mut out = GLCombo::new();
        for (y, qy) in combo {
            for (y1, y2) in y.splittings() {
                for (beta, q) in self.action_column(&y1, gamma).iter() {
                    if !self.alg.in_n(beta) {
                        continue;
                    }
                    let ext = (beta.clone(), *n);
                    let c = q_int(y2.j_get(&ext) + 1) * q * qy;
                    add_gl(&mut out, y2.with_pair(ext), c);
                }
            }
        }
        out
    }

    /// `z^γ 𝖣_y D^(n) = (J_y(γ,n)+1) 𝖣_(y + e_(γ,n))`, extended linearly.
    fn extend(&self, combo: &GLCombo, key: &PairKey) -> GLCombo {
        let mut out = GLCombo::new();
        for (y, q) in combo {
            add_gl(&mut out, y.with_pair(key.clone()), q_int(y.j_get(key) + 1) * q);
        }
        out
    }

    fn shift_basis(&self, x: &GLIndex, axis: usize) -> GLCombo {
        if x.j_is_empty() {
            let mut out = GLCombo::new();
            add_gl(&mut out, GLIndex::shifts(x.m.plus_unit(axis)), q_int(x.m.get(axis) + 1));
            return out;
        }
        let (key, mult) = x.j[0].clone();
        let rest = x.without_pair(&key).expect("peeled key present");
        let inv = Q::one() / q_int(mult);
        let mut out = GLCombo::new();
        let inner = self.shift_basis(&rest, axis);
        for (y, q) in self.extend(&inner, &key) {
            add_gl(&mut out, y, q * &inv);
        }
        let (gamma, n) = &key;
        if let Some(lower) = n.minus_unit(axis) {
            let low_key = (gamma.clone(), lower);
            let c = q_int(n.get(axis)) * q_int(rest.j_get(&low_key) + 1) * &inv;
            add_gl(&mut out, rest.with_pair(low_key), c);
        }
        out
    }

    /// `𝖣_y · 𝔟∂_i` for every `y` in the combo.
    pub fn right_mul_shift(&self, combo: &GLCombo, axis: usize) -> GLCombo {
        let mut out = GLCombo::new();
        for (y, q) in combo {
            for (z, qz) in self.shift_basis(y, axis) {
                add_gl(&mut out, z, qz * q);
            }
        }
        out
    }

    pub fn right_mul_generator(&self, combo: &GLCombo, g: &Generator) -> GLCombo {
        match g {
            Generator::Deriv { gamma, n } => self.right_mul_deriv(combo, &(gamma.clone(), *n)),
            Generator::Shift(i) => self.right_mul_shift(combo, *i),
        }
    }

    /// Canonical generator word for `x`: shifts by axis, then pairs in order.
    fn word(x: &GLIndex) -> Vec<Generator> {
        let mut w = Vec::new();
        for axis in 0..x.m.dim() {
            for _ in 0..x.m.get(axis) {
                w.push(Generator::Shift(axis));
            }
        }
        for ((g, n), c) in x.pairs() {
            for _ in 0..*c {
                w.push(Generator::Deriv { gamma: g.clone(), n: *n });
            }
        }
        w
    }

    /// `𝖣_x` written as a combination of canonical words, each word
    /// represented by the label it leads with.
    fn word_expansion(&self, x: &GLIndex) -> Arc<GLCombo> {
        if let Some(c) = self.basis_words.read().expect("lock").get(x) {
            return c.clone();
        }
        // W_x = x!·𝖣_x + lower terms; invert recursively
        let mut product = GLCombo::new();
        product.insert(GLIndex::unit(x.m.dim()), Q::one());
        for g in Self::word(x) {
            product = self.right_mul_generator(&product, &g);
        }
        let top = product.remove(x).expect("canonical word leads with its label");
        let mut expansion = GLCombo::new();
        add_gl(&mut expansion, x.clone(), Q::one() / &top);
        for (y, q) in product {
            debug_assert!(y.len() < x.len());
            for (w, qw) in self.word_expansion(&y).iter() {
                add_gl(&mut expansion, w.clone(), -(&q * qw / &top));
            }
        }
        let expansion = Arc::new(expansion);
        self.basis_words.write().expect("lock").insert(x.clone(), expansion.clone());
        expansion
    }

    /// Basis expansion of `𝖣_{x'} 𝖣_{x''}`.
    pub fn gl_product(&self, left: &GLIndex, right: &GLIndex, max_len: usize) -> Result<GLCombo> {
        let len = left.len() + right.len();
        if len > max_len {
            return Err(Error::TruncationExceeded { len, max: max_len });
        }
        let mut out = GLCombo::new();
        for (w, q) in self.word_expansion(right).iter() {
            let mut product = GLCombo::new();
            product.insert(left.clone(), q.clone());
            for g in Self::word(w) {
                product = self.right_mul_generator(&product, &g);
            }
            for (y, qy) in product {
                add_gl(&mut out, y, qy);
            }
        }
        Ok(out)
    }

    pub fn gl_product_combo(&self, left: &GLCombo, right: &GLCombo, max_len: usize) -> Result<GLCombo> {
        let mut out = GLCombo::new();
        for (a, qa) in left {
            for (b, qb) in right {
                for (y, q) in self.gl_product(a, b, max_len)? {
                    add_gl(&mut out, y, q * qa * qb);
                }
            }
        }
        Ok(out)
    }

    /// `ρ` of a combination applied to `z^γ`.
    pub fn combo_column(&self, combo: &GLCombo, gamma: &MultiIndex) -> Column {
        let mut col = Column::new();
        for (x, q) in combo {
            for (b, qb) in self.action_column(x, gamma).iter() {
                add_into(&mut col, b.clone(), q * qb);
            }
        }
        col
    }

    /// `ρ(𝖣_{x'}) ρ(𝖣_{x''})` applied to `z^γ`.
    pub fn composed_column(&self, left: &GLIndex, right: &GLIndex, gamma: &MultiIndex) -> Column {
        let mut col = Column::new();
        for (d, q) in self.action_column(right, gamma).iter() {
            for (b, qb) in self.action_column(left, d).iter() {
                add_into(&mut col, b.clone(), q * qb);
            }
        }
        col
    }
}
