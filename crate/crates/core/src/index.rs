//! Coordinate symbols and multi-indices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

/// Largest supported space-time dimension.
pub const MAX_DIM: usize = 6;

/// An element `n` of ℕ₀^d (a derivative or polynomial exponent).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivativeWord {
    dim: u8,
    n: [u8; MAX_DIM],
}

impl DerivativeWord {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        DerivativeWord { dim: dim as u8, n: [0; MAX_DIM] }
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut w = DerivativeWord::zero(dim);
        w.n[axis] = 1;
        w
    }

    pub fn from_slice(entries: &[u32]) -> Self {
        let mut w = DerivativeWord::zero(entries.len());
        for (slot, &e) in w.n.iter_mut().zip(entries) {
            *slot = u8::try_from(e).expect("derivative order too large");
        }
        w
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn get(&self, axis: usize) -> u32 {
        self.n[axis] as u32
    }

    pub fn entries(&self) -> impl Iterator<Item = u32> + '_ {
        self.n[..self.dim()].iter().map(|&e| e as u32)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.entries().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.n.iter().all(|&e| e == 0)
    }

    /// Total order Σ n(i), unweighted.
    pub fn order(&self) -> u32 {
        self.entries().sum()
    }

    pub fn add(&self, other: &DerivativeWord) -> DerivativeWord {
        let mut w = *self;
        for i in 0..self.dim() {
            w.n[i] += other.n[i];
        }
        w
    }

    pub fn plus_unit(&self, axis: usize) -> DerivativeWord {
        let mut w = *self;
        w.n[axis] += 1;
        w
    }

    pub fn checked_sub(&self, other: &DerivativeWord) -> Option<DerivativeWord> {
        let mut w = *self;
        for i in 0..self.dim() {
            w.n[i] = self.n[i].checked_sub(other.n[i])?;
        }
        Some(w)
    }

    pub fn minus_unit(&self, axis: usize) -> Option<DerivativeWord> {
        let mut w = *self;
        w.n[axis] = w.n[axis].checked_sub(1)?;
        Some(w)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &DerivativeWord) -> bool {
        (0..self.dim()).all(|i| self.n[i] <= other.n[i])
    }

    /// n! = Π n(i)!
    pub fn factorial(&self) -> BigInt {
        self.entries().map(factorial).product()
    }

    /// binom(m, n) = Π binom(m(i), n(i)), zero unless n ≤ m.
    pub fn binomial(m: &DerivativeWord, n: &DerivativeWord) -> BigInt {
        (0..m.dim())
            .map(|i| binomial(m.get(i), n.get(i)))
            .product()
    }
}

impl fmt::Debug for DerivativeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DerivativeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A finitely supported map ℕ₀^d → ℕ, i.e. an element of M(ℕ₀^d).
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KWord(Vec<(DerivativeWord, u32)>);

impl KWord {
    pub fn empty() -> Self {
        KWord(Vec::new())
    }

    pub fn from_counts<I: IntoIterator<Item = (DerivativeWord, u32)>>(counts: I) -> Self {
        let mut k = KWord::empty();
        for (n, c) in counts {
            k.add_count(n, c);
        }
        k
    }

    pub fn single(n: DerivativeWord, count: u32) -> Self {
        KWord::from_counts([(n, count)])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |k| = Σ k(n).
    pub fn len(&self) -> u32 {
        self.0.iter().map(|(_, c)| c).sum()
    }

    pub fn get(&self, n: &DerivativeWord) -> u32 {
        match self.0.binary_search_by(|(m, _)| m.cmp(n)) {
            Ok(pos) => self.0[pos].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(DerivativeWord, u32)> {
        self.0.iter()
    }

    pub fn add_count(&mut self, n: DerivativeWord, count: u32) {
        if count == 0 {
            return;
        }
        match self.0.binary_search_by(|(m, _)| m.cmp(&n)) {
            Ok(pos) => self.0[pos].1 += count,
            Err(pos) => self.0.insert(pos, (n, count)),
        }
    }

    pub fn plus(&self, n: DerivativeWord) -> KWord {
        let mut k = self.clone();
        k.add_count(n, 1);
        k
    }

    pub fn minus(&self, n: &DerivativeWord) -> Option<KWord> {
        let pos = self.0.binary_search_by(|(m, _)| m.cmp(n)).ok()?;
        let mut k = self.clone();
        if k.0[pos].1 == 1 {
            k.0.remove(pos);
        } else {
            k.0[pos].1 -= 1;
        }
        Some(k)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &KWord) -> bool {
        self.0.iter().all(|(n, c)| other.get(n) >= *c)
    }

    /// k! = Π k(n)!
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|(_, c)| factorial(*c)).product()
    }
}

impl fmt::Debug for KWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for KWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (n, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
            if *c != 1 {
                write!(f, "^{c}")?;
            }
        }
        write!(f, "]")
    }
}

/// Index of a noise label inside its [`EquationSpec`](crate::spec::EquationSpec).
///
/// Specs keep their noises sorted by name, so comparing indices agrees with
/// comparing names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub u8);

/// Either a nonlinearity coordinate `z_(l,k)` or a polynomial coordinate `z_n`.
///
/// Variant order makes every `Pair` sort before every `Poly`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoordSymbol {
    Pair(Label, KWord),
    Poly(DerivativeWord),
}

impl CoordSymbol {
    pub fn pair(label: Label, k: KWord) -> Self {
        CoordSymbol::Pair(label, k)
    }

    pub fn poly(n: DerivativeWord) -> Self {
        CoordSymbol::Poly(n)
    }
}

impl fmt::Debug for CoordSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordSymbol::Pair(l, k) => write!(f, "#{}{}", l.0, k),
            CoordSymbol::Poly(n) => write!(f, "X{n}"),
        }
    }
}

/// A finitely supported map from coordinate symbols to positive counts,
/// stored sorted so that structural equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<(CoordSymbol, u32)>);

impl MultiIndex {
    pub fn zero() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn unit(sym: CoordSymbol) -> Self {
        MultiIndex(vec![(sym, 1)])
    }

    pub fn from_counts<I: IntoIterator<Item = (CoordSymbol, u32)>>(counts: I) -> Self {
        let mut beta = MultiIndex::zero();
        for (s, c) in counts {
            beta.add_count(s, c);
        }
        beta
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(CoordSymbol, u32)> {
        self.0.iter()
    }

    pub fn get(&self, sym: &CoordSymbol) -> u32 {
        match self.0.binary_search_by(|(s, _)| s.cmp(sym)) {
            Ok(pos) => self.0[pos].1,
            Err(_) => 0,
        }
    }

    pub fn add_count(&mut self, sym: CoordSymbol, count: u32) {
        if count == 0 {
            return;
        }
        match self.0.binary_search_by(|(s, _)| s.cmp(&sym)) {
            Ok(pos) => self.0[pos].1 += count,
            Err(pos) => self.0.insert(pos, (sym, count)),
        }
    }

    /// Removes `count` copies of `sym`; `None` if fewer are present.
    pub fn remove_count(&mut self, sym: &CoordSymbol, count: u32) -> Option<()> {
        if count == 0 {
            return Some(());
        }
        let pos = self.0.binary_search_by(|(s, _)| s.cmp(sym)).ok()?;
        let have = self.0[pos].1;
        if have < count {
            return None;
        }
        if have == count {
            self.0.remove(pos);
        } else {
            self.0[pos].1 -= count;
        }
        Some(())
    }

    pub fn with(&self, sym: CoordSymbol, count: u32) -> MultiIndex {
        let mut beta = self.clone();
        beta.add_count(sym, count);
        beta
    }

    pub fn without(&self, sym: &CoordSymbol) -> Option<MultiIndex> {
        let mut beta = self.clone();
        beta.remove_count(sym, 1)?;
        Some(beta)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        MultiIndex(out)
    }

    /// `self − other`, if `other ≤ self` componentwise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let mut beta = self.clone();
        for (s, c) in &other.0 {
            beta.remove_count(s, *c)?;
        }
        Some(beta)
    }

    pub fn scaled(&self, factor: u32) -> MultiIndex {
        if factor == 0 {
            return MultiIndex::zero();
        }
        MultiIndex(self.0.iter().map(|(s, c)| (s.clone(), c * factor)).collect())
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().all(|(s, c)| other.get(s) >= *c)
    }

    /// Σ β(s).
    pub fn length(&self) -> u32 {
        self.0.iter().map(|(_, c)| c).sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Label, &KWord, u32)> {
        self.0.iter().filter_map(|(s, c)| match s {
            CoordSymbol::Pair(l, k) => Some((*l, k, *c)),
            CoordSymbol::Poly(_) => None,
        })
    }

    pub fn polys(&self) -> impl Iterator<Item = (DerivativeWord, u32)> + '_ {
        self.0.iter().filter_map(|(s, c)| match s {
            CoordSymbol::Poly(n) => Some((*n, *c)),
            CoordSymbol::Pair(..) => None,
        })
    }

    /// Number of polynomial symbols, with multiplicity.
    pub fn poly_count(&self) -> u32 {
        self.polys().map(|(_, c)| c).sum()
    }

    /// `Some(n)` iff this is exactly `e_n`.
    pub fn as_single_poly(&self) -> Option<DerivativeWord> {
        match self.0.as_slice() {
            [(CoordSymbol::Poly(n), 1)] => Some(*n),
            _ => None,
        }
    }

    /// All γ with 0 ≤ γ ≤ self componentwise, the zero multi-index included.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero()];
        for (s, c) in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (*c as usize + 1));
            for base in &out {
                for k in 0..=*c {
                    next.push(base.with(s.clone(), k));
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if *c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "{s:?}")?;
        }
        Ok(())
    }
}
