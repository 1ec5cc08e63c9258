//! Seeded property suites over a spec's truncation.
//!
//! Each suite returns a [`SuiteReport`] with the number of cases examined and
//! a description of every failing case; the `check` command and the
//! acceptance binary both run them.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::character::*;
use crate::deriv::{Column, DerivationAlgebra, Flavor, GenCombo, Generator};
use crate::enumerate::{default_weights, enumerate_below, PopulationClass};
use crate::envelope::{Envelope, GLIndex};
use crate::error::Result;
use crate::grading::bracket;
use crate::hom::Homogeneity;
use crate::index::{CoordSymbol, DerivativeWord, MultiIndex};
use crate::renorm::{model_rhs, model_rhs_partition_sum};
use crate::ring::Ring;
use crate::spec::EquationSpec;
use crate::tree::{active_part, derivation_image, graft, psi, psi_combo, trees_with_nodes, up, DecTree};
use crate::Q;

#[derive(Clone, Debug)]
pub struct CheckConfig {
    /// Truncation `|β| < cap`.
    pub cap: Homogeneity,
    pub seed: u64,
    /// Random characters for the exponential-formula suite.
    pub characters: usize,
    /// Random triples for the algebraic identities and the product suite.
    pub triples: usize,
    /// Largest basis length in the product suite.
    pub max_len: usize,
    /// Largest tree size in the tree suite.
    pub max_nodes: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { cap: Homogeneity::zero(), seed: 7, characters: 100, triples: 50, max_len: 4, max_nodes: 5 }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport { name, cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

pub type Suite = fn(&Context, &CheckConfig) -> Result<SuiteReport>;

/// Everything the suites share: the envelope and the truncations.
pub struct Context {
    pub env: Envelope,
    /// `N̄` below the cap.
    pub set: Vec<MultiIndex>,
    /// `set` plus the polynomial coordinates in `P` below `cap + η`.
    pub columns: Vec<MultiIndex>,
}

impl Context {
    pub fn new(spec: &EquationSpec, cap: Homogeneity) -> Result<Self> {
        let set = enumerate_below(spec, cap, PopulationClass::Nbar)?;
        let mut columns = set.clone();
        for n in spec.words_below(cap + spec.eta) {
            let p = MultiIndex::unit(CoordSymbol::Poly(n));
            if spec.classify(&p) == PopulationClass::P {
                columns.push(p);
            }
        }
        Ok(Context { env: Envelope::new(spec), set, columns })
    }

    pub fn spec(&self) -> &EquationSpec {
        self.env.spec()
    }

    pub fn alg(&self) -> &DerivationAlgebra {
        self.env.algebra()
    }
}

pub const SUITES: &[(&str, Suite)] = &[
    ("prelie", prelie_identity),
    ("jacobi", jacobi_identity),
    ("gradings", gradings),
    ("triangularity", plus_triangularity),
    ("exponential", exponential_formula),
    ("convolution", convolution_laws),
    ("inverse", inverses),
    ("product", product_laws),
    ("trees", tree_morphisms),
    ("precedence", precedence_order),
    ("oracle", model_oracle),
];

/// Runs every suite in order.
pub fn run_all(spec: &EquationSpec, cfg: &CheckConfig) -> Result<Vec<SuiteReport>> {
    let ctx = Context::new(spec, cfg.cap)?;
    SUITES.iter().map(|(_, suite)| suite(&ctx, cfg)).collect()
}

pub fn run_named(spec: &EquationSpec, cfg: &CheckConfig, names: &[&str]) -> Result<Vec<SuiteReport>> {
    let ctx = Context::new(spec, cfg.cap)?;
    SUITES.iter().filter(|(n, _)| names.contains(n)).map(|(_, suite)| suite(&ctx, cfg)).collect()
}

fn rng(cfg: &CheckConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn single(g: &Generator) -> GenCombo {
    GenCombo::single(g.clone())
}

/// Random generator triples with at most one shift, so that every pre-Lie
/// product involved is defined.
fn generator_triples(ctx: &Context, cfg: &CheckConfig, salt: u64) -> Vec<[Generator; 3]> {
    let mut r = rng(cfg, salt);
    let mut out = Vec::new();
    for flavor in [Flavor::Minus, Flavor::Plus] {
        let gens = ctx.alg().generators(&ctx.set, flavor);
        let target = out.len() + cfg.triples * 4;
        for _ in 0..cfg.triples * 100 {
            if out.len() >= target {
                break;
            }
            let t = [0, 1, 2].map(|_| gens.choose(&mut r).expect("generators").clone());
            if t.iter().filter(|g| matches!(g, Generator::Shift(_))).count() <= 1 {
                out.push(t);
            }
        }
    }
    out
}

/// `(x ◁ y) ◁ z − x ◁ (y ◁ z)` is symmetric in `x, y`.
pub fn prelie_identity(ctx: &Context, cfg: &CheckConfig) -> Result<SuiteReport> {
    let alg = ctx.alg();
    let mut rep = SuiteReport::new("prelie");
    for [x, y, z] in generator_triples(ctx, cfg, 1) {
        let assoc = |a: &Generator, b: &Generator| -> Result<GenCombo> {
            let (a, b, c) = (single(a), single(b), single(&z));
            let left = alg.prelie_combo(&alg.prelie_combo(&a, &b)?, &c)?;
            Ok(left.sub(&alg.prelie_combo(&a, &alg.prelie_combo(&b, &c)?)?))
        };
        let ok = assoc(&x, &y)? == assoc(&y, &x)?;
        rep.record(ok, || format!("{x:?} {y:?} {z:?}"));
    }
    Ok(rep)
}

pub fn jacobi_identity(ctx: &Context, cfg: &CheckConfig) -> Result<SuiteReport> {
    let alg = ctx.alg();
    let mut rep = SuiteReport::new("jacobi");
    for [x, y, z] in generator_triples(ctx, cfg, 2) {
        let cyc = |a: &Generator, b: &Generator, c: &Generator| {
            alg.lie_bracket_combo(&single(a), &alg.lie_bracket(b, c))
        };
        let mut total = cyc(&x, &y, &z);
        total.add_combo(&cyc(&y, &z, &x), &Q::one());
        total.add_combo(&cyc(&z, &x, &y), &Q::one());
        rep.record(total.is_zero(), || format!("{x:?} {y:?} {z:?}"));
    }
    Ok(rep)
}

/// Basis labels of length ≤ `len` built from the generator keys of a flavor.
fn labels(ctx: &Context, flavor: Flavor, len: usize) -> Vec<GLIndex> {
    let spec = ctx.spec();
    let keys = generator_keys(spec, flavor, &ctx.set);
    let mut out = vec![GLIndex::unit(spec.dim)];
    let mut frontier = out.clone();
    for _ in 0..len {
        let mut next = Vec::new();
        for x in &frontier {
            for k in &keys {
                next.push(x.with_pair(k.clone()));
            }
            for i in 0..spec.dim {
                next.push(GLIndex::from_parts(x.pairs().iter().cloned(), x.m.plus_unit(i)));
            }
        }
        next.sort();
        next.dedup();
        next.retain(|y| !out.contains(y));
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Generators and basis actions shift `|·|` by their own degree.
pub fn gradings(ctx: &Context, _cfg: &CheckConfig) -> Result<SuiteReport> {
    let spec = ctx.spec();
    let alg = ctx.alg();
    let mut rep = SuiteReport::new("gradings");
    for flavor in [Flavor::Minus, Flavor::Plus] {
        for g in alg.generators(&ctx.set, flavor) {
            let shift = alg.generator_degree(&g);
            for gamma in &ctx.columns {
                let col = match &g {
                    Generator::Deriv { gamma: gp, n } => alg.raw_deriv(n, gamma).keys().map(|b| b.add(gp)).collect(),
                    Generator::Shift(i) => alg.raw_shift(*i, gamma).into_keys().collect::<Vec<_>>(),
                };
                for beta in col {
                    let ok = spec.homogeneity(&beta) == spec.homogeneity(gamma) + shift;
                    rep.record(ok, || format!("{g:?} on {}", spec.format_mi(gamma)));
                }
            }
        }
        for x in labels(ctx, flavor, 2) {
            let deg = x.degree(spec);
            for gamma in &ctx.columns {
                for beta in ctx.env.action_column(&x, gamma).keys() {
                    let ok = spec.homogeneity(beta) == spec.homogeneity(gamma) + deg;
                    rep.record(ok, || format!("{x:?} on {}", spec.format_mi(gamma)));
                }
            }
        }
    }
    Ok(rep)
}

/// Non-unit plus-flavor basis elements strictly raise `|·|`.
pub fn plus_triangularity(ctx: &Context, _cfg: &CheckConfig) -> Result<SuiteReport> {
    let spec = ctx.spec();
    let mut rep = SuiteReport::new("triangularity");
    for x in labels(ctx, Flavor::Plus, 2).into_iter().filter(|x| !x.is_unit()) {
        for gamma in &ctx.columns {
            for beta in ctx.env.action_column(&x, gamma).keys() {
                let ok = spec.homogeneity(beta) > spec.homogeneity(gamma);
                rep.record(ok, || format!("{x:?}: {} -> {}", spec.format_mi(gamma), spec.format_mi(beta)));
            }
        }
    }
    Ok(rep)
}

/// Basis sum, exponential formula and its resummed form agree entrywise.
pub fn exponential_formula(ctx: &Context, cfg: &CheckConfig) -> Result<SuiteReport> {
    let spec = ctx.spec();
    let mut r = rng(cfg, 3);
    let mut jobs = Vec::new();
    for c in 0..cfg.characters {
        let flavor = if c % 2 == 0 { Flavor::Minus } else { Flavor::Plus };
        let seed: u64 = r.gen();
        let pairs: Vec<(MultiIndex, MultiIndex)> = (0..6)
            .map(|_| {
                (ctx.columns.choose(&mut r).expect("columns").clone(), ctx.columns.choose(&mut r).expect("columns").clone())
            })
            .collect();
        jobs.push((flavor, seed, pairs));
    }
    let results: Vec<Vec<(bool, String)>> = jobs
        .par_iter()
        .map(|(flavor, seed, pairs)| {
            let f = RandomCharacter::new(spec, *flavor, *seed);
            pairs
                .iter()
                .map(|(b, g)| {
                    let order = exponential_order_needed(b, g);
                    let basis = gamma_entry(&ctx.env, &f, b, g);
                    let ok = gamma_via_exponential(&ctx.env, &f, b, g, order).map(|v| v == basis).unwrap_or(false)
                        && gamma_via_resummed(&ctx.env, &f, b, g, order).map(|v| v == basis).unwrap_or(false);
                    (ok, format!("{flavor:?} seed {seed} ({}, {})", spec.format_mi(b), spec.format_mi(g)))
                })
                .collect()
        })
        .collect();
    let mut rep = SuiteReport::new("exponential");
    for (ok, detail) in results.into_iter().flatten() {
        rep.record(ok, || detail);
    }
    Ok(rep)
}

type Matrix = BTreeMap<(MultiIndex, MultiIndex), Q>;

fn matrix<C: Character<Q> + ?Sized>(ctx: &Context, f: &C) -> Matrix {
    gamma_matrix(&ctx.env, f, &ctx.columns, &ctx.columns)
}

fn product(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out: Matrix = BTreeMap::new();
    for ((r, k), x) in a {
        for ((k2, c), y) in b.range((k.clone(), MultiIndex::zero())..) {
            if k2 != k {
                break;
            }
            let e = out.entry((r.clone(), c.clone())).or_insert_with(Q::zero);
            *e = e.add(&x.mul(y));
        }
    }
    out.retain(|_, v| !Ring::is_zero(v));
    out
}

fn matrix_diff(spec: &EquationSpec, a: &Matrix, b: &Matrix) -> String {
    let bad = a.keys().chain(b.keys()).find(|k| a.get(*k) != b.get(*k));
    match bad {
        Some((r, c)) => format!("entry ({}, {})", spec.format_mi(r), spec.format_mi(c)),
        None => String::new(),
    }
}

/// `Γ_{p*q} = Γ_p Γ_q` for plus characters and `Γ_{p*f} = Γ_p Γ_f` for a
/// minus `f`, the latter on columns whose polynomial degrees stay below `η`.
pub fn convolution_laws(ctx: &Context, cfg: &CheckConfig) -> Result<SuiteReport> {
    let spec = ctx.spec();
    let mut rep = SuiteReport::new("convolution");
    let below_eta = |m: &mut Matrix| m.retain(|(_, col), _| col.polys().all(|(n, _)| spec.scaled_degree(&n) < spec.eta));
    for k in 0..2u64 {
        let base = cfg.seed.wrapping_mul(31).wrapping_add(10 * k);
        let p = RandomCharacter::new(spec, Flavor::Plus, base);
        let q = RandomCharacter::new(spec, Flavor::Plus, base + 1);
        let f = RandomCharacter::new(spec, Flavor::Minus, base + 2);
        let mp = matrix(ctx, &p);
        let lhs = matrix(ctx, &convolve_plus(&ctx.env, &p, &q, &ctx.set)?);
        let rhs = product(&mp, &matrix(ctx, &q));
        rep.record(lhs == rhs, || format!("plus law, seed {base}: {}", matrix_diff(spec, &lhs, &rhs)));
        let mut lhs = matrix(ctx, &convolve_mixed(&ctx.env, &p, &f, &ctx.set)?);
        let mut rhs = product(&mp, &matrix(ctx, &f));
        below_eta(&mut lhs);
        below_eta(&mut rhs);
        rep.record(lhs == rhs, || format!("mixed law, seed {base}: {}", matrix_diff(spec, &lhs, &rhs)));
    }
    Ok(rep)
}

pub fn inverses(ctx: &Context, cfg: &CheckConfig) -> Result<SuiteReport> {
    let spec = ctx.spec();
    let mut rep = SuiteReport::new("inverse");
    let e: TableCharacter<Q> = TableCharacter::counit(Flavor::Plus, spec.dim);
    for k in 0..3u64 {
        let seed = cfg.seed.wrapping_mul(17).wrapping_add(k);
        let p = RandomCharacter::new(spec, Flavor::Plus, seed);
        let q = invert_plus(&ctx.env, &p, &ctx.set)?;
        let right = agree_on(spec, &convolve_plus(&ctx.env, &p, &q, &ctx.set)?, &e, &ctx.set);
        let left = agree_on(spec, &convolve_plus(&ctx.env, &q, &p, &ctx.set)?, &e, &ctx.set);
        rep.record(right && left, || format!("seed {seed}: right {right}, left {left}"));
    }
    Ok(rep)
}

/// Associativity of the basis product and `ρ(x y) = ρ(x) ρ(y)`.
pub fn product_laws(ctx: &Context, cfg: &CheckConfig) -> Result<SuiteReport> {
    let spec = ctx.spec();
    let env = &ctx.env;
    let xs = labels(ctx, Flavor::Minus, 1);
    let mut r = rng(cfg, 4);
    let mut rep = SuiteReport::new("product");
    let mut done = 0;
    while done < cfg.triples {
        let t = [0, 1, 2].map(|_| xs.choose(&mut r).expect("labels").clone());
        if t.iter().map(GLIndex::len).sum::<usize>() > cfg.max_len {
            continue;
        }
        done += 1;
        let [a, b, c] = t;
        let one = |x: &GLIndex| BTreeMap::from([(x.clone(), Q::one())]);
        let ab = env.gl_product(&a, &b, cfg.max_len)?;
        let bc = env.gl_product(&b, &c, cfg.max_len)?;
        let left = env.gl_product_combo(&ab, &one(&c), cfg.max_len)?;
        let right = env.gl_product_combo(&one(&a), &bc, cfg.max_len)?;
        rep.record(left == right, || format!("associativity {a:?} {b:?} {c:?}"));
        let gamma = ctx.columns.choose(&mut r).expect("columns");
        let ok = env.combo_column(&ab, gamma) == env.composed_column(&a, &b, gamma);
        rep.record(ok, || format!("morphism {a:?} {b:?} on {}", spec.format_mi(gamma)));
    }
    Ok(rep)
}

/// The fold `Ψ` intertwines grafting with `D^(n)` and `↑^i` with `𝔟∂_i`,
/// lands on `[β] = 1`, and forgets the root.
pub fn tree_morphisms(ctx: &Context, cfg: &CheckConfig) -> Result<SuiteReport> {
    let spec = ctx.spec();
    let alg = ctx.alg();
    let mut rep = SuiteReport::new("trees");
    let labels: Vec<_> = spec.labels().take(2).collect();
    let mut axes = vec![0];
    axes.extend(spec.space_axes.first().copied());
    let leaves: Vec<DerivativeWord> = axes.iter().map(|i| DerivativeWord::unit(spec.dim, *i)).collect();
    let trees: Vec<DecTree> =
        (1..=cfg.max_nodes).flat_map(|n| trees_with_nodes(&labels, alg.slots(), &leaves, n)).collect();
    let active: Vec<&DecTree> =
        trees.iter().filter(|t| t.node_pairs().iter().all(|(l, k)| alg.is_active(*l, k))).collect();
    for sigma in &active {
        for tau in &active {
            if sigma.node_count() + tau.node_count() > cfg.max_nodes {
                continue;
            }
            for n in alg.slots() {
                let lhs = psi_combo(&active_part(&graft(sigma, n, tau), alg));
                let ok = lhs == derivation_image(alg, sigma, n, tau);
                rep.record(ok, || format!("graft {sigma:?} {n} {tau:?}"));
            }
        }
    }
    for tau in &trees {
        let (c, beta) = psi(tau);
        if matches!(tau, DecTree::Node { .. }) {
            rep.record(bracket(&beta) == 1, || format!("bracket of {tau:?}"));
        }
        for axis in 0..spec.dim {
            let lhs = psi_combo(&up(axis, tau, alg));
            let rhs: Column = alg.raw_shift(axis, &beta).into_iter().map(|(b, q)| (b, q * &c)).collect();
            rep.record(lhs == rhs, || format!("up {axis} {tau:?}"));
        }
    }
    if let [l, l2, ..] = labels[..] {
        let z = spec.zero_word();
        let leaf = |l| DecTree::noise(l);
        let a = DecTree::node(l, vec![(z, DecTree::node(l2, vec![(z, leaf(l))])), (z, leaf(l))]);
        let b = DecTree::node(l2, vec![(z, DecTree::node(l, vec![(z, leaf(l)), (z, leaf(l))]))]);
        let (pa, pb) = (psi(&a), psi(&b));
        rep.record(a != b && pa == pb && pa.0 == Q::from_integer(2.into()), || {
            format!("root witness {a:?} {b:?}")
        });
    }
    Ok(rep)
}

/// With the default weights every generator entry strictly raises `|·|_≺`.
pub fn precedence_order(ctx: &Context, _cfg: &CheckConfig) -> Result<SuiteReport> {
    let spec = ctx.spec();
    let alg = ctx.alg();
    let w = default_weights(spec);
    let mut rep = SuiteReport::new("precedence");
    for flavor in [Flavor::Minus, Flavor::Plus] {
        for g in alg.generators(&ctx.set, flavor) {
            for gamma in &ctx.set {
                for (beta, q) in alg.generator_column(&g, gamma) {
                    if Ring::is_zero(&q) || !ctx.set.contains(&beta) {
                        continue;
                    }
                    let ok = w.precedence(&beta, spec) > w.precedence(gamma, spec);
                    rep.record(ok, || format!("{g:?}: {} -> {}", spec.format_mi(gamma), spec.format_mi(&beta)));
                }
            }
        }
    }
    Ok(rep)
}

/// Model right-hand sides agree with the direct slot-filling sum.
pub fn model_oracle(ctx: &Context, _cfg: &CheckConfig) -> Result<SuiteReport> {
    let spec = ctx.spec();
    let alg = ctx.alg();
    let members: Vec<&MultiIndex> = ctx.set.iter().filter(|b| alg.in_n(b)).collect();
    let results: Vec<(bool, String)> = members
        .par_iter()
        .map(|b| {
            let ok = match (model_rhs(&ctx.env, b, &[]), model_rhs_partition_sum(alg, b)) {
                (Ok(x), Ok(y)) => x == y,
                _ => false,
            };
            (ok, spec.format_mi(b))
        })
        .collect();
    let mut rep = SuiteReport::new("oracle");
    for (ok, detail) in results {
        rep.record(ok, || detail);
    }
    Ok(rep)
}
