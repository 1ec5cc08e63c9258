//! Characters on the dual envelope and their exponential-type maps `Γ_f`.
//!
//! A character is determined by its values `f_γ^(n)` on generator keys and
//! `f_i` on axes. The matrix `Γ_f` is evaluated either through the basis sum
//! `Σ f^(J,m) ρ(𝖣_(J,m))` or through the exponential formula
//! `Σ_l (1/l!) f^(n_1)···f^(n_l) D^(n_l)···D^(n_1)`.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::deriv::Flavor;
use crate::enumerate::PopulationClass;
use crate::envelope::{Envelope, GLIndex, PairKey};
use crate::error::{Error, Result};
use crate::hom::Homogeneity;
use crate::index::{factorial, CoordSymbol, DerivativeWord, MultiIndex};
use crate::ring::Ring;
use crate::spec::EquationSpec;
use crate::Q;

pub trait Character<R: Ring>: Sync {
    fn flavor(&self) -> Flavor;

    /// `f_γ^(n)`; zero outside the flavor's generator keys.
    fn pair(&self, gamma: &MultiIndex, n: &DerivativeWord) -> R;

    /// `f_i`.
    fn axis(&self, i: usize) -> R;

    /// `f^(0,m) = Π f_i^m(i)`.
    fn shift_value(&self, m: &DerivativeWord) -> R {
        m.entries()
            .enumerate()
            .filter(|(_, e)| *e > 0)
            .fold(R::one(), |acc, (i, e)| acc.mul(&self.axis(i).pow(e)))
    }

    /// `f^(J,m)`, extended multiplicatively.
    fn value(&self, x: &GLIndex) -> R {
        x.pairs()
            .iter()
            .fold(self.shift_value(&x.m), |acc, ((g, n), c)| acc.mul(&self.pair(g, n).pow(*c)))
    }
}

/// A character with finitely many explicit entries.
#[derive(Clone, Debug, PartialEq)]
pub struct TableCharacter<R: Ring> {
    flavor: Flavor,
    pairs: BTreeMap<PairKey, R>,
    axes: Vec<R>,
}

impl<R: Ring> TableCharacter<R> {
    /// The counit: every generator evaluates to zero.
    pub fn counit(flavor: Flavor, dim: usize) -> Self {
        TableCharacter { flavor, pairs: BTreeMap::new(), axes: vec![R::zero(); dim] }
    }

    pub fn set_pair(&mut self, gamma: MultiIndex, n: DerivativeWord, value: R) {
        if value.is_zero() {
            self.pairs.remove(&(gamma, n));
        } else {
            self.pairs.insert((gamma, n), value);
        }
    }

    pub fn set_axis(&mut self, i: usize, value: R) {
        self.axes[i] = value;
    }

    pub fn entries(&self) -> impl Iterator<Item = (&PairKey, &R)> {
        self.pairs.iter()
    }

    /// Copies the values of `f` on every key with γ in `truncation`.
    pub fn tabulate<C: Character<R> + ?Sized>(f: &C, spec: &EquationSpec, truncation: &[MultiIndex]) -> Self {
        let mut t = TableCharacter::counit(f.flavor(), spec.dim);
        for i in 0..spec.dim {
            t.set_axis(i, f.axis(i));
        }
        for (g, n) in generator_keys(spec, f.flavor(), truncation) {
            let v = f.pair(&g, &n);
            t.set_pair(g, n, v);
        }
        t
    }
}

impl<R: Ring> Character<R> for TableCharacter<R> {
    fn flavor(&self) -> Flavor {
        self.flavor
    }

    fn pair(&self, gamma: &MultiIndex, n: &DerivativeWord) -> R {
        self.pairs.get(&(gamma.clone(), *n)).cloned().unwrap_or_else(R::zero)
    }

    fn axis(&self, i: usize) -> R {
        self.axes[i].clone()
    }
}

/// Deterministic pseudo-random rational character: every admissible key gets
/// a small nonzero rational derived from the seed and the key.
#[derive(Clone, Debug)]
pub struct RandomCharacter {
    flavor: Flavor,
    seed: u64,
    spec: EquationSpec,
}

impl RandomCharacter {
    pub fn new(spec: &EquationSpec, flavor: Flavor, seed: u64) -> Self {
        RandomCharacter { flavor, seed, spec: spec.clone() }
    }

    fn draw(&self, key: &str) -> Q {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.seed.to_le_bytes().iter().chain(key.as_bytes()) {
            h ^= u64::from(*b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(h);
        let mut num: i64 = rng.gen_range(-3..=3);
        if num == 0 {
            num = 4;
        }
        let den: i64 = rng.gen_range(1..=3);
        Q::new(num.into(), den.into())
    }
}

impl Character<Q> for RandomCharacter {
    fn flavor(&self) -> Flavor {
        self.flavor
    }

    fn pair(&self, gamma: &MultiIndex, n: &DerivativeWord) -> Q {
        if self.spec.classify(gamma) != PopulationClass::N || !self.flavor.admits(&self.spec, gamma, n) {
            return Q::from_integer(0.into());
        }
        self.draw(&format!("{gamma:?}|{n}"))
    }

    fn axis(&self, i: usize) -> Q {
        self.draw(&format!("axis{i}"))
    }
}

/// All generator keys `(γ, n)` of a flavor with γ ∈ N taken from `set`.
pub fn generator_keys(spec: &EquationSpec, flavor: Flavor, set: &[MultiIndex]) -> Vec<PairKey> {
    let mut out = Vec::new();
    for g in set.iter().filter(|g| spec.classify(g) == PopulationClass::N) {
        for n in spec.words_below(flavor.degree_bound(spec, g)) {
            out.push((g.clone(), n));
        }
    }
    out
}

/// Words `m` with `|m| = target` exactly.
fn words_of_degree(spec: &EquationSpec, target: Homogeneity) -> Vec<DerivativeWord> {
    if target < Homogeneity::zero() {
        return Vec::new();
    }
    spec.words_below(target + Homogeneity::from_ints(1, 0))
        .into_iter()
        .filter(|m| spec.scaled_degree(m) == target)
        .collect()
}

/// `(Γ_f)_β^γ` as the finite basis sum `Σ f^(J,m) (𝖣_(J,m))_β^γ`.
pub fn gamma_entry<R: Ring, C: Character<R> + ?Sized>(
    env: &Envelope,
    f: &C,
    beta: &MultiIndex,
    gamma: &MultiIndex,
) -> R {
    let alg = env.algebra();
    let spec = env.spec();
    if !alg.is_projected(beta) || !alg.is_projected(gamma) {
        return R::zero();
    }
    // J is supported on γ̃ ≤ β with Σ J γ̃ ≤ β
    let mut cands: Vec<(PairKey, R)> = Vec::new();
    for g in beta.sub_indices().into_iter().filter(|g| alg.in_n(g)) {
        for n in spec.words_below(f.flavor().degree_bound(spec, &g)) {
            let v = f.pair(&g, &n);
            if !v.is_zero() {
                cands.push(((g.clone(), n), v));
            }
        }
    }
    let target = spec.homogeneity(beta) - spec.homogeneity(gamma);
    let mut total = R::zero();
    let mut current = GLIndex::unit(spec.dim);
    gamma_entry_rec(env, f, beta, gamma, &cands, 0, &mut current, &MultiIndex::zero(), R::one(), target, &mut total);
    total
}

#[allow(clippy::too_many_arguments)]
fn gamma_entry_rec<R: Ring, C: Character<R> + ?Sized>(
    env: &Envelope,
    f: &C,
    beta: &MultiIndex,
    gamma: &MultiIndex,
    cands: &[(PairKey, R)],
    start: usize,
    current: &mut GLIndex,
    used: &MultiIndex,
    weight: R,
    remaining: Homogeneity,
    total: &mut R,
) {
    let spec = env.spec();
    for m in words_of_degree(spec, remaining) {
        let x = GLIndex::from_parts(current.pairs().iter().cloned(), m);
        let fx = weight.mul(&f.shift_value(&m));
        if fx.is_zero() {
            continue;
        }
        let c = env.action_coeff(&x, beta, gamma);
        if !num_traits::Zero::is_zero(&c) {
            total.add_assign(&fx.scale(&c));
        }
    }
    for (i, ((g, n), v)) in cands.iter().enumerate().skip(start) {
        let next_used = used.add(g);
        if !next_used.le(beta) {
            continue;
        }
        let shift = spec.homogeneity(g) + spec.eta - spec.scaled_degree(n);
        let saved = current.clone();
        current.add_pair((g.clone(), *n), 1);
        gamma_entry_rec(env, f, beta, gamma, cands, i, current, &next_used, weight.mul(v), remaining - shift, total);
        *current = saved;
    }
}

/// Row-major `Γ_f` restricted to `rows × cols`, zero entries omitted.
pub fn gamma_matrix<R: Ring, C: Character<R> + ?Sized>(
    env: &Envelope,
    f: &C,
    rows: &[MultiIndex],
    cols: &[MultiIndex],
) -> BTreeMap<(MultiIndex, MultiIndex), R> {
    let entries: Vec<Vec<((MultiIndex, MultiIndex), R)>> = rows
        .par_iter()
        .map(|b| {
            cols.iter()
                .filter_map(|g| {
                    let v = gamma_entry(env, f, b, g);
                    (!v.is_zero()).then(|| ((b.clone(), g.clone()), v))
                })
                .collect()
        })
        .collect();
    entries.into_iter().flatten().collect()
}

/// The values `f^(n)_δ` of the series `f^(n) = Σ_γ f_γ^(n) z^γ + Σ_m binom(m,n) f^(0,m−n) z_m`
/// restricted to δ ≤ `room`.
fn series_terms<R: Ring, C: Character<R> + ?Sized>(
    env: &Envelope,
    f: &C,
    n: &DerivativeWord,
    room: &MultiIndex,
) -> Vec<(MultiIndex, R)> {
    let alg = env.algebra();
    let mut out = Vec::new();
    for g in room.sub_indices().into_iter().filter(|g| alg.in_n(g)) {
        let v = f.pair(&g, n);
        if !v.is_zero() {
            out.push((g, v));
        }
    }
    for (m, _) in room.polys() {
        if m != *n && n.le(&m) {
            let diff = m.checked_sub(n).expect("n ≤ m");
            let v = f.shift_value(&diff).scale(&Q::from_integer(DerivativeWord::binomial(&m, n)));
            if !v.is_zero() {
                out.push((MultiIndex::unit(CoordSymbol::Poly(m)), v));
            }
        }
    }
    out
}

/// Number of exponential-formula factors that can contribute to `(β, γ)`.
pub fn exponential_order_needed(beta: &MultiIndex, gamma: &MultiIndex) -> usize {
    let reach = beta.length() as i64 - gamma.length() as i64 + gamma.poly_count() as i64;
    reach.max(0) as usize
}

/// `(Γ_f)_β^γ` through the exponential formula over ordered words, or over
/// multisets `Σ_k (1/k!) f^k D^k` when `resummed` is set.
fn gamma_exponential<R: Ring, C: Character<R> + ?Sized>(
    env: &Envelope,
    f: &C,
    beta: &MultiIndex,
    gamma: &MultiIndex,
    order: usize,
    resummed: bool,
) -> Result<R> {
    let needed = exponential_order_needed(beta, gamma);
    if needed > order {
        return Err(Error::OrderTooSmall { needed, given: order });
    }
    let alg = env.algebra();
    if !alg.is_projected(beta) || !alg.is_projected(gamma) {
        return Ok(R::zero());
    }
    Ok(exponential_sum(env, f, beta, gamma, needed, resummed))
}

/// `(Σ_l (1/l!) f^(n_1)···f^(n_l) D^(n_l)···D^(n_1))_β^γ` on raw
/// derivations, with no projection of β or γ.
pub fn gamma_unprojected<R: Ring, C: Character<R> + ?Sized>(
    env: &Envelope,
    f: &C,
    beta: &MultiIndex,
    gamma: &MultiIndex,
) -> R {
    exponential_sum(env, f, beta, gamma, exponential_order_needed(beta, gamma), true)
}

fn exponential_sum<R: Ring, C: Character<R> + ?Sized>(
    env: &Envelope,
    f: &C,
    beta: &MultiIndex,
    gamma: &MultiIndex,
    needed: usize,
    resummed: bool,
) -> R {
    let alg = env.algebra();
    // state: (δ after derivations, accumulated f-product, last word, multiplicities)
    type Key = (MultiIndex, MultiIndex, Option<DerivativeWord>, Vec<(DerivativeWord, u32)>);
    let mut state: HashMap<Key, R> = HashMap::new();
    state.insert((gamma.clone(), MultiIndex::zero(), None, Vec::new()), R::one());
    let mut total = R::zero();
    for l in 0..=needed {
        for ((delta, prod, _, mult), c) in &state {
            if delta.add(prod) == *beta {
                let norm = if resummed {
                    mult.iter().map(|(_, k)| factorial(*k)).product()
                } else {
                    factorial(l as u32)
                };
                total.add_assign(&c.scale(&(Q::from_integer(1.into()) / Q::from_integer(norm))));
            }
        }
        if l == needed {
            break;
        }
        let mut next: HashMap<Key, R> = HashMap::new();
        for ((delta, prod, last, mult), c) in &state {
            let Some(room) = beta.checked_sub(prod) else { continue };
            let mut words: Vec<DerivativeWord> = alg.slots().to_vec();
            words.extend(delta.polys().map(|(n, _)| n));
            words.sort();
            words.dedup();
            for n in words {
                if resummed && last.is_some_and(|p| n < p) {
                    continue;
                }
                let col = alg.raw_deriv(&n, delta);
                if col.is_empty() {
                    continue;
                }
                let terms = series_terms(env, f, &n, &room);
                if terms.is_empty() {
                    continue;
                }
                let mut mult2 = mult.clone();
                if resummed {
                    match mult2.last_mut() {
                        Some((w, k)) if *w == n => *k += 1,
                        _ => mult2.push((n, 1)),
                    }
                }
                for (d2, q) in col.iter() {
                    for (g, v) in &terms {
                        let key = (d2.clone(), prod.add(g), resummed.then_some(n), mult2.clone());
                        let add = c.mul(v).scale(q);
                        match next.get_mut(&key) {
                            Some(e) => e.add_assign(&add),
                            None => {
                                next.insert(key, add);
                            }
                        }
                    }
                }
            }
        }
        state = next;
    }
    total
}

pub fn gamma_via_exponential<R: Ring, C: Character<R> + ?Sized>(
    env: &Envelope,
    f: &C,
    beta: &MultiIndex,
    gamma: &MultiIndex,
    order: usize,
) -> Result<R> {
    gamma_exponential(env, f, beta, gamma, order, false)
}

pub fn gamma_via_resummed<R: Ring, C: Character<R> + ?Sized>(
    env: &Envelope,
    f: &C,
    beta: &MultiIndex,
    gamma: &MultiIndex,
    order: usize,
) -> Result<R> {
    gamma_exponential(env, f, beta, gamma, order, true)
}

/// The class-N members of `truncation` sorted by homogeneity.
fn n_sorted(env: &Envelope, truncation: &[MultiIndex]) -> Vec<MultiIndex> {
    let spec = env.spec();
    let mut set: Vec<MultiIndex> = truncation.iter().filter(|g| env.algebra().in_n(g)).cloned().collect();
    set.sort_by(|a, b| spec.homogeneity(a).cmp(&spec.homogeneity(b)).then_with(|| a.cmp(b)));
    set.dedup();
    set
}

/// `Σ_{m} binom(n+m, n) p_γ^(n+m) s^(0,m)` over the words allowed by `p`.
fn shift_transfer<R: Ring, P: Character<R> + ?Sized, S: Character<R> + ?Sized>(
    spec: &EquationSpec,
    p: &P,
    s: &S,
    gamma: &MultiIndex,
    n: &DerivativeWord,
) -> R {
    let mut acc = R::zero();
    for w in spec.words_below(p.flavor().degree_bound(spec, gamma)) {
        let Some(m) = w.checked_sub(n) else { continue };
        let pv = p.pair(gamma, &w);
        if pv.is_zero() {
            continue;
        }
        let c = Q::from_integer(DerivativeWord::binomial(&w, n));
        acc.add_assign(&pv.mul(&s.shift_value(&m)).scale(&c));
    }
    acc
}

/// `Σ_{γ' ∈ N} (Γ_p)_γ^{γ'} s_{γ'}^(n)` over `lower`.
fn recentered<R: Ring, P: Character<R> + ?Sized, S: Character<R> + ?Sized>(
    env: &Envelope,
    p: &P,
    s: &S,
    lower: &[MultiIndex],
    gamma: &MultiIndex,
    n: &DerivativeWord,
) -> R {
    let spec = env.spec();
    let mut acc = R::zero();
    for g2 in lower {
        if spec.homogeneity(g2) > spec.homogeneity(gamma) {
            break;
        }
        let sv = s.pair(g2, n);
        if sv.is_zero() {
            continue;
        }
        let pv = gamma_entry(env, p, gamma, g2);
        if !pv.is_zero() {
            acc.add_assign(&pv.mul(&sv));
        }
    }
    acc
}

fn convolve<R: Ring, P: Character<R> + ?Sized, S: Character<R> + ?Sized>(
    env: &Envelope,
    p: &P,
    s: &S,
    result_flavor: Flavor,
    truncation: &[MultiIndex],
) -> TableCharacter<R> {
    let spec = env.spec();
    let lower = n_sorted(env, truncation);
    let mut out = TableCharacter::counit(result_flavor, spec.dim);
    for i in 0..spec.dim {
        out.set_axis(i, p.axis(i).add(&s.axis(i)));
    }
    let values: Vec<(PairKey, R)> = generator_keys(spec, result_flavor, &lower)
        .into_par_iter()
        .map(|(g, n)| {
            let v = recentered(env, p, s, &lower, &g, &n).add(&shift_transfer(spec, p, s, &g, &n));
            ((g, n), v)
        })
        .collect();
    for ((g, n), v) in values {
        out.set_pair(g, n, v);
    }
    out
}

/// `p * s` for plus characters, on the keys with γ in `truncation`.
pub fn convolve_plus<R: Ring, P: Character<R> + ?Sized, S: Character<R> + ?Sized>(
    env: &Envelope,
    p: &P,
    s: &S,
    truncation: &[MultiIndex],
) -> Result<TableCharacter<R>> {
    if p.flavor() != Flavor::Plus || s.flavor() != Flavor::Plus {
        return Err(Error::Validation { rule: "flavor", detail: "convolve_plus expects plus characters".into() });
    }
    Ok(convolve(env, p, s, Flavor::Plus, truncation))
}

/// `p * f` for a plus character `p` and a minus character `f`.
pub fn convolve_mixed<R: Ring, P: Character<R> + ?Sized, F: Character<R> + ?Sized>(
    env: &Envelope,
    p: &P,
    f: &F,
    truncation: &[MultiIndex],
) -> Result<TableCharacter<R>> {
    if p.flavor() != Flavor::Plus || f.flavor() != Flavor::Minus {
        return Err(Error::Validation { rule: "flavor", detail: "convolve_mixed expects (plus, minus)".into() });
    }
    Ok(convolve(env, p, f, Flavor::Minus, truncation))
}

/// The inverse `q` of a plus character, solved level by level in `|·|`.
pub fn invert_plus<R: Ring, P: Character<R> + ?Sized>(
    env: &Envelope,
    p: &P,
    truncation: &[MultiIndex],
) -> Result<TableCharacter<R>> {
    if p.flavor() != Flavor::Plus {
        return Err(Error::Validation { rule: "flavor", detail: "invert_plus expects a plus character".into() });
    }
    let spec = env.spec();
    let lower = n_sorted(env, truncation);
    let mut q = TableCharacter::counit(Flavor::Plus, spec.dim);
    for i in 0..spec.dim {
        q.set_axis(i, p.axis(i).neg());
    }
    for gamma in &lower {
        for n in spec.words_below(Flavor::Plus.degree_bound(spec, gamma)) {
            // (Γ_p)_γ^γ = 1, all other columns have strictly smaller |·|
            let mut acc = shift_transfer(spec, p, &q, gamma, &n);
            for g2 in &lower {
                if g2 == gamma || spec.homogeneity(g2) >= spec.homogeneity(gamma) {
                    continue;
                }
                let qv = q.pair(g2, &n);
                if qv.is_zero() {
                    continue;
                }
                acc.add_assign(&gamma_entry(env, p, gamma, g2).mul(&qv));
            }
            q.set_pair(gamma.clone(), n, acc.neg());
        }
    }
    Ok(q)
}

/// Whether two characters agree on the axes and all keys with γ in `truncation`.
pub fn agree_on<R: Ring, A: Character<R> + ?Sized, B: Character<R> + ?Sized>(
    spec: &EquationSpec,
    a: &A,
    b: &B,
    truncation: &[MultiIndex],
) -> bool {
    (0..spec.dim).all(|i| a.axis(i) == b.axis(i))
        && generator_keys(spec, a.flavor(), truncation)
            .iter()
            .all(|(g, n)| a.pair(g, n) == b.pair(g, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deriv::q_int;
    use crate::enumerate::enumerate_below;
    use crate::spec::builtin_spec;

    fn setup(name: &str) -> (EquationSpec, Envelope, Vec<MultiIndex>) {
        let s = builtin_spec(name).unwrap();
        let env = Envelope::new(&s);
        let set = enumerate_below(&s, Homogeneity::zero(), PopulationClass::Nbar).unwrap();
        (s, env, set)
    }

    #[test]
    fn counit_gives_identity() {
        let (s, env, set) = setup("gkpz");
        let f: TableCharacter<Q> = TableCharacter::counit(Flavor::Minus, s.dim);
        for b in set.iter().take(12) {
            for g in set.iter().take(12) {
                let expected = if b == g { q_int(1) } else { q_int(0) };
                assert_eq!(gamma_entry(&env, &f, b, g), expected);
            }
        }
    }

    #[test]
    fn polynomial_shift_is_binomial() {
        let (s, env, _) = setup("gkpz");
        let mut f: TableCharacter<Q> = TableCharacter::counit(Flavor::Minus, s.dim);
        f.set_axis(0, q_int(2));
        f.set_axis(1, q_int(3));
        let n = DerivativeWord::from_slice(&[1, 2]);
        let row = MultiIndex::unit(CoordSymbol::Poly(n));
        for m in [DerivativeWord::from_slice(&[0, 1]), DerivativeWord::from_slice(&[1, 0]), DerivativeWord::from_slice(&[0, 2])] {
            let col = MultiIndex::unit(CoordSymbol::Poly(m));
            // z_m picks up binom(n, m) h^(n − m) in front of z_n
            let diff = n.checked_sub(&m).unwrap();
            let expected = Q::from_integer(DerivativeWord::binomial(&n, &m))
                * Q::from_integer(num_bigint::BigInt::from(2).pow(diff.get(0)))
                * Q::from_integer(num_bigint::BigInt::from(3).pow(diff.get(1)));
            assert_eq!(gamma_entry(&env, &f, &row, &col), expected, "{m}");
            assert_eq!(gamma_via_exponential(&env, &f, &row, &col, 4).unwrap(), expected, "{m}");
        }
    }

    #[test]
    fn order_too_small() {
        let (s, env, _) = setup("gkpz");
        let f = RandomCharacter::new(&s, Flavor::Minus, 1);
        let b = s.parse_mi("2 xi[] + xi[(0,0)^2]").unwrap();
        let g = s.parse_mi("xi[]").unwrap();
        assert!(matches!(
            gamma_via_exponential(&env, &f, &b, &g, 1),
            Err(Error::OrderTooSmall { needed: 2, given: 1 })
        ));
    }

    #[test]
    fn counit_convolution_is_neutral() {
        let (s, env, set) = setup("she_mult_1d");
        let e: TableCharacter<Q> = TableCharacter::counit(Flavor::Plus, s.dim);
        let p = RandomCharacter::new(&s, Flavor::Plus, 5);
        let left = convolve_plus(&env, &e, &p, &set).unwrap();
        assert!(agree_on(&s, &left, &p, &set));
        let right = convolve_plus(&env, &p, &e, &set).unwrap();
        assert!(agree_on(&s, &right, &p, &set));
    }

    #[test]
    fn axis_only_inverse() {
        let (s, env, set) = setup("gkpz");
        let mut p: TableCharacter<Q> = TableCharacter::counit(Flavor::Plus, s.dim);
        p.set_axis(1, q_int(5));
        let q = invert_plus(&env, &p, &set).unwrap();
        assert_eq!(q.axis(1), q_int(-5));
        assert_eq!(q.entries().count(), 0);
    }
}
