//! Symbolic model equations, counterterms and renormalized equations.
//!
//! The model equation of β is the β-component of `Γ_Π^*` applied to
//! `Σ_l ξ_l z_(l,0) + c`, where the character sends `z^γ D^(n)` to
//! `(1/n!) ∂^n Π_γ` and `𝔟∂_i` to `X_i`. The constants enter only through
//! the shift `z_(0,0) ↦ z_(0,0) + c`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::character::{gamma_entry, gamma_unprojected, Character};
use crate::deriv::{DerivationAlgebra, Flavor};
use crate::enumerate::{counterterm_set_with_budget, default_weights, filter_symmetric, sort_by_homogeneity};
use crate::envelope::Envelope;
use crate::error::{Error, Result};
use crate::hom::Homogeneity;
use crate::index::{CoordSymbol, DerivativeWord, KWord, Label, MultiIndex};
use crate::nonlin::Factor;
use crate::ring::Ring;
use crate::spec::EquationSpec;
use crate::symbolic::{Atom, Monomial, SymExpr};
use crate::Q;

fn q_int(n: impl Into<num_bigint::BigInt>) -> Q {
    Q::from_integer(n.into())
}

fn inv_factorial(n: &DerivativeWord) -> Q {
    Q::new(1.into(), n.factorial())
}

/// The model as a minus-flavor character with values in [`SymExpr`].
pub struct ModelCharacter<'a> {
    alg: &'a DerivationAlgebra,
}

impl<'a> ModelCharacter<'a> {
    pub fn new(alg: &'a DerivationAlgebra) -> Self {
        ModelCharacter { alg }
    }
}

impl Character<SymExpr> for ModelCharacter<'_> {
    fn flavor(&self) -> Flavor {
        Flavor::Minus
    }

    fn pair(&self, gamma: &MultiIndex, n: &DerivativeWord) -> SymExpr {
        if !self.alg.in_n(gamma) || !Flavor::Minus.admits(self.alg.spec(), gamma, n) {
            return SymExpr::zero();
        }
        SymExpr::term(inv_factorial(n), Monomial::atom(Atom::ModelDeriv(*n, gamma.clone())))
    }

    fn axis(&self, i: usize) -> SymExpr {
        SymExpr::atom(Atom::PolyBase(i))
    }
}

fn noise_factor(spec: &EquationSpec, label: Label) -> SymExpr {
    if spec.noise(label).is_unit {
        SymExpr::one()
    } else {
        SymExpr::atom(Atom::Noise(label))
    }
}

fn require_n(alg: &DerivationAlgebra, beta: &MultiIndex) -> Result<()> {
    if alg.in_n(beta) {
        Ok(())
    } else {
        Err(Error::NotInN(alg.spec().format_mi(beta)))
    }
}

/// A multiset `b` of slot words with `e_b` and `b!`.
type SlotChoice = (Vec<(DerivativeWord, u32)>, MultiIndex, Q);

/// Nonempty multisets `b` of slot words with `e_b ≤ β`, with `e_b` and `b!`.
fn diagonal_multisets(alg: &DerivationAlgebra, beta: &MultiIndex) -> Vec<SlotChoice> {
    let avail: Vec<(DerivativeWord, u32)> = beta.polys().filter(|(n, _)| alg.slots().contains(n)).collect();
    let mut out: Vec<SlotChoice> = vec![(Vec::new(), MultiIndex::zero(), Q::one())];
    for (n, max) in avail {
        let mut next = Vec::new();
        for (b, eb, fact) in &out {
            let mut fact = fact.clone();
            for c in 0..=max {
                if c > 0 {
                    fact *= q_int(c);
                }
                let mut b2 = b.clone();
                if c > 0 {
                    b2.push((n, c));
                }
                next.push((b2, eb.with(CoordSymbol::Poly(n), c), fact.clone()));
            }
        }
        out = next;
    }
    out.retain(|(b, _, _)| !b.is_empty());
    out
}

/// `(Γ^* z^x)_β` for the model character. When the shift of `u` re-expands
/// the nonlinearity coordinates, `f^(n)` also carries the diagonal term
/// `z_n` (the slot value `(1/n!) ∂^n (· − x)^n = 1`); the polynomial
/// coordinates of `x` already map to `z_n + f^(n)` and take no diagonal.
/// Writing `Γ^* = Σ_b (1/b!) z^b Γ_f^* D^b` with `D^b` acting on the
/// nonlinearity part of `x` only, the `b = 0` part is the basis sum and the
/// rest is evaluated unprojected.
fn model_gamma(env: &Envelope, f: &ModelCharacter, beta: &MultiIndex, x: &MultiIndex) -> SymExpr {
    let alg = env.algebra();
    let mut total = gamma_entry(env, f, beta, x);
    let polys = MultiIndex::from_counts(x.polys().map(|(n, c)| (CoordSymbol::Poly(n), c)));
    let pairs = x.checked_sub(&polys).expect("polynomial part of x");
    for (b, eb, fact) in diagonal_multisets(alg, beta) {
        let row = beta.checked_sub(&eb).expect("e_b ≤ β");
        let mut col: HashMap<MultiIndex, Q> = HashMap::from([(pairs.clone(), Q::one())]);
        for (n, c) in &b {
            for _ in 0..*c {
                let mut next: HashMap<MultiIndex, Q> = HashMap::new();
                for (d, q) in &col {
                    for (dd, qq) in alg.raw_deriv(n, d).iter() {
                        *next.entry(dd.clone()).or_insert_with(Q::zero) += q * qq;
                    }
                }
                col = next;
            }
        }
        for (d, q) in col {
            if num_traits::Zero::is_zero(&q) {
                continue;
            }
            let g = gamma_unprojected(env, f, &row, &d.add(&polys));
            if !g.is_zero() {
                total.add_assign(&g.scale(&(q / &fact)));
            }
        }
    }
    total
}

/// Right-hand side of the model equation for β, with the constants `c_γ`
/// for γ in `constants` inserted.
pub fn model_rhs(env: &Envelope, beta: &MultiIndex, constants: &[MultiIndex]) -> Result<SymExpr> {
    let alg = env.algebra();
    let spec = env.spec();
    require_n(alg, beta)?;
    let f = ModelCharacter::new(alg);
    let mut out = SymExpr::zero();
    for l in spec.labels() {
        let column = MultiIndex::unit(CoordSymbol::pair(l, KWord::empty()));
        let g = model_gamma(env, &f, beta, &column);
        if !g.is_zero() {
            out.add_assign(&g.mul(&noise_factor(spec, l)));
        }
    }
    for gamma in constants {
        let g = model_gamma(env, &f, beta, gamma);
        if !g.is_zero() {
            out.add_assign(&g.mul(&SymExpr::atom(Atom::Constant(gamma.clone()))));
        }
    }
    Ok(out)
}

/// The basis-sum part alone: `(Γ_Π^*(Σ ξ_l z_(l,0)))_β` with the series
/// `f^(n)` free of diagonal polynomial terms.
pub fn model_rhs_projected(env: &Envelope, beta: &MultiIndex) -> Result<SymExpr> {
    let alg = env.algebra();
    let spec = env.spec();
    require_n(alg, beta)?;
    let f = ModelCharacter::new(alg);
    let mut out = SymExpr::zero();
    for l in spec.labels() {
        let column = MultiIndex::unit(CoordSymbol::pair(l, KWord::empty()));
        out.add_assign(&gamma_entry(env, &f, beta, &column).mul(&noise_factor(spec, l)));
    }
    Ok(out)
}

/// The canonical (`c = 0`) right-hand side as the direct sum over ordered
/// splittings `β = e_(l,k) + Σ_n Σ_j β_n^j`, each slot carrying
/// `(1/n!) ∂^n Π_{β_n^j}`.
pub fn model_rhs_partition_sum(alg: &DerivationAlgebra, beta: &MultiIndex) -> Result<SymExpr> {
    let spec = alg.spec();
    require_n(alg, beta)?;
    let mut out = SymExpr::zero();
    for (l, k, _) in beta.pairs() {
        let sym = CoordSymbol::Pair(l, k.clone());
        let mut rest = beta.clone();
        rest.remove_count(&sym, 1);
        let slots: Vec<DerivativeWord> = k.iter().flat_map(|(n, c)| std::iter::repeat_n(*n, *c as usize)).collect();
        let mut memo = HashMap::new();
        let sum = fill_slots(alg, &slots, 0, &rest, &mut memo);
        if !sum.is_zero() {
            out.add_assign(&sum.mul(&noise_factor(spec, l)));
        }
    }
    Ok(out)
}

fn slot_value(alg: &DerivationAlgebra, n: &DerivativeWord, part: &MultiIndex) -> Option<SymExpr> {
    if let Some(m) = part.as_single_poly() {
        let diff = m.checked_sub(n)?;
        let binom = q_int(DerivativeWord::binomial(&m, n));
        let factors = diff.entries().enumerate().map(|(i, e)| (Atom::PolyBase(i), e));
        return Some(SymExpr::term(binom, Monomial::from_factors(factors)));
    }
    alg.in_n(part)
        .then(|| SymExpr::term(inv_factorial(n), Monomial::atom(Atom::ModelDeriv(*n, part.clone()))))
}

fn fill_slots(
    alg: &DerivationAlgebra,
    slots: &[DerivativeWord],
    at: usize,
    rest: &MultiIndex,
    memo: &mut HashMap<(usize, MultiIndex), SymExpr>,
) -> SymExpr {
    if at == slots.len() {
        return if rest.is_zero() { SymExpr::one() } else { SymExpr::zero() };
    }
    if let Some(v) = memo.get(&(at, rest.clone())) {
        return v.clone();
    }
    let mut total = SymExpr::zero();
    for part in rest.sub_indices().into_iter().filter(|p| !p.is_zero()) {
        let Some(v) = slot_value(alg, &slots[at], &part) else { continue };
        let remaining = rest.checked_sub(&part).expect("part ≤ rest");
        let tail = fill_slots(alg, slots, at + 1, &remaining, memo);
        if !tail.is_zero() {
            total.add_assign(&v.mul(&tail));
        }
    }
    memo.insert((at, rest.clone()), total.clone());
    total
}

/// Homogeneity of an atom in a model equation: `|ξ_l| = α_l`,
/// `|∂^n Π_γ| = |γ| + η − |n|`, `|X_i| = 𝔰_i`, `|c_γ| = |γ|`.
pub fn atom_homogeneity(spec: &EquationSpec, atom: &Atom) -> Option<Homogeneity> {
    match atom {
        Atom::Noise(l) => Some(spec.noise(*l).alpha),
        Atom::ModelDeriv(n, g) => Some(spec.homogeneity(g) + spec.eta - spec.scaled_degree(n)),
        Atom::PolyBase(i) => Some(Homogeneity::rational(spec.scaling[*i])),
        Atom::Constant(g) => Some(spec.homogeneity(g)),
        _ => None,
    }
}

pub fn monomial_homogeneity(spec: &EquationSpec, m: &Monomial) -> Option<Homogeneity> {
    m.factors()
        .iter()
        .map(|(a, e)| atom_homogeneity(spec, a).map(|h| h * *e as i64))
        .sum()
}

// ---------------------------------------------------------------------------
// Nonlinearities and the functionals z^β[a, u, ·].

fn reflection_parity(spec: &EquationSpec, factors: &[Factor]) -> u32 {
    let total: u32 = factors
        .iter()
        .map(|f| match f {
            Factor::Jet { jet, pow } => spec.symmetry.reflect_axes.iter().map(|&a| jet[a]).sum::<u32>() * pow,
            _ => 0,
        })
        .sum();
    total % 2
}

/// The declared nonlinearity `a^l` as a polynomial in jets, or `None` if the
/// label has no declared shape. Terms odd under the spec's reflections are
/// dropped.
pub fn nonlinearity_expr(spec: &EquationSpec, label: Label) -> Option<SymExpr> {
    let a = spec.noise(label).nonlinearity.as_ref()?;
    let mut out = SymExpr::zero();
    for t in &a.terms {
        if reflection_parity(spec, &t.factors) != 0 {
            continue;
        }
        let coeff = crate::hom::parse_rational(&t.coeff).expect("validated coefficient");
        let coeff = Q::new((*coeff.numer()).into(), (*coeff.denom()).into());
        let factors = t.factors.iter().map(|f| match f {
            Factor::Func { name, pow } => (Atom::Func { name: name.clone(), order: 0 }, *pow),
            Factor::Param { param, pow } => (Atom::Param(param.clone()), *pow),
            Factor::Jet { jet, pow } => (Atom::Jet(DerivativeWord::from_slice(jet)), *pow),
        });
        out.add_term(Monomial::from_factors(factors), coeff);
    }
    Some(out)
}

/// Partial derivative with respect to the jet variable `∂^n u`; functions of
/// `u` only see the zero word.
pub fn differentiate(expr: &SymExpr, n: &DerivativeWord) -> SymExpr {
    let mut out = SymExpr::zero();
    for (m, q) in expr.terms() {
        for (i, (a, e)) in m.factors().iter().enumerate() {
            let inner = match a {
                Atom::Func { name, order } if n.is_zero() => {
                    Some(Atom::Func { name: name.clone(), order: order + 1 })
                }
                Atom::Jet(w) if w == n => None,
                _ => continue,
            };
            let mut factors: Vec<(Atom, u32)> = m.factors().to_vec();
            factors[i].1 -= 1;
            if let Some(inner) = inner {
                factors.push((inner, 1));
            }
            out.add_term(Monomial::from_factors(factors), q * q_int(*e));
        }
    }
    out
}

/// `z_s[a, u, ·]`: `(1/k!) ∂^k a^l` for pairs, `(1/n!) ∂^n u` for polynomials.
pub fn symbol_functional(spec: &EquationSpec, sym: &CoordSymbol) -> SymExpr {
    match sym {
        CoordSymbol::Poly(n) => SymExpr::term(inv_factorial(n), Monomial::atom(Atom::Jet(*n))),
        CoordSymbol::Pair(l, k) => match nonlinearity_expr(spec, *l) {
            None => SymExpr::atom(Atom::NonlinDeriv(*l, k.clone())),
            Some(mut a) => {
                for (n, c) in k.iter() {
                    for _ in 0..*c {
                        a = differentiate(&a, n);
                    }
                }
                a.scale(&Q::new(1.into(), k.factorial()))
            }
        },
    }
}

/// `z^β[a, u, ·]`.
pub fn functional(spec: &EquationSpec, beta: &MultiIndex) -> SymExpr {
    beta.iter()
        .fold(SymExpr::one(), |acc, (s, c)| acc.mul(&Ring::pow(&symbol_functional(spec, s), *c)))
}

/// `Σ_β c_β z^β[a, u, ·]`.
pub fn counterterm_expr(spec: &EquationSpec, constants: &[MultiIndex]) -> SymExpr {
    let mut out = SymExpr::zero();
    for b in constants {
        out.add_assign(&SymExpr::atom(Atom::Constant(b.clone())).mul(&functional(spec, b)));
    }
    out
}

// ---------------------------------------------------------------------------
// Redundancies.

/// `Π_beta = ratio · Π_target`, so that `c_beta := ratio · c_target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    pub beta: MultiIndex,
    pub ratio: Q,
    pub target: MultiIndex,
}

fn substitute_identified(expr: &SymExpr, found: &BTreeMap<MultiIndex, (Q, MultiIndex)>) -> SymExpr {
    expr.substitute(&|a| match a {
        Atom::ModelDeriv(n, g) => found
            .get(g)
            .map(|(q, t)| SymExpr::term(q.clone(), Monomial::atom(Atom::ModelDeriv(*n, t.clone())))),
        _ => None,
    })
}

/// Proportional canonical model components within `set`, found by walking
/// the set in increasing precedence and comparing right-hand sides after
/// substituting earlier identifications.
pub fn detect_redundancies(env: &Envelope, set: &[MultiIndex]) -> Result<Vec<Identification>> {
    let spec = env.spec();
    let alg = env.algebra();
    let weights = default_weights(spec);
    let mut order: Vec<MultiIndex> = set.iter().filter(|b| alg.in_n(b)).cloned().collect();
    order.sort_by(|a, b| weights.precedence(a, spec).cmp(&weights.precedence(b, spec)).then(a.cmp(b)));
    order.dedup();
    let rhs: Vec<SymExpr> = order.par_iter().map(|b| model_rhs(env, b, &[])).collect::<Result<_>>()?;
    let mut found: BTreeMap<MultiIndex, (Q, MultiIndex)> = BTreeMap::new();
    let mut reps: Vec<(usize, SymExpr)> = Vec::new();
    let mut out = Vec::new();
    for (i, r) in rhs.iter().enumerate() {
        let r = substitute_identified(r, &found);
        let hit = reps.iter().find_map(|(j, rr)| r.ratio_to(rr).map(|q| (q, *j)));
        match hit {
            Some((q, j)) => {
                found.insert(order[i].clone(), (q.clone(), order[j].clone()));
                out.push(Identification { beta: order[i].clone(), ratio: q, target: order[j].clone() });
            }
            None => reps.push((i, r)),
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Documents.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RenormFlags {
    pub spatial: bool,
    pub noise_even: bool,
    pub merge_redundant: bool,
}

/// One free constant `c_beta` and the functional it multiplies, including
/// the contributions of the components merged into it.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantTerm {
    pub beta: MultiIndex,
    pub merged: Vec<(MultiIndex, Q)>,
    pub functional: SymExpr,
}

#[derive(Clone, Debug)]
pub struct RenormalizedEquation {
    pub spec: EquationSpec,
    pub flags: RenormFlags,
    pub base: SymExpr,
    pub terms: Vec<ConstantTerm>,
    pub identifications: Vec<Identification>,
}

/// The unrenormalized right-hand side `Σ_l a^l ξ_l`.
pub fn base_rhs(spec: &EquationSpec) -> SymExpr {
    let mut out = SymExpr::zero();
    for l in spec.labels() {
        let a = nonlinearity_expr(spec, l)
            .unwrap_or_else(|| SymExpr::atom(Atom::NonlinDeriv(l, KWord::empty())));
        out.add_assign(&a.mul(&noise_factor(spec, l)));
    }
    out
}

/// The admissible constants after the requested reductions, sorted by
/// homogeneity, together with the identifications used to merge them.
pub fn reduced_constants(
    spec: &EquationSpec,
    flags: RenormFlags,
    node_budget: usize,
) -> Result<(EquationSpec, Vec<MultiIndex>, Vec<Identification>)> {
    let sym = spec.with_symmetry(flags.spatial, flags.noise_even);
    let mut set = filter_symmetric(&counterterm_set_with_budget(&sym, node_budget)?, &sym);
    sort_by_homogeneity(&sym, &mut set);
    let ids = if flags.merge_redundant { detect_redundancies(&Envelope::new(&sym), &set)? } else { Vec::new() };
    set.retain(|b| !ids.iter().any(|id| id.beta == *b));
    Ok((sym, set, ids))
}

pub fn renormalized_equation(spec: &EquationSpec, flags: RenormFlags, node_budget: usize) -> Result<RenormalizedEquation> {
    let (sym, constants, ids) = reduced_constants(spec, flags, node_budget)?;
    Ok(assemble(sym, flags, &constants, ids))
}

/// The renormalized equation with an explicit list of free constants and
/// no merging; the remaining constants are set to zero.
pub fn renormalized_with_constants(spec: &EquationSpec, constants: &[MultiIndex]) -> RenormalizedEquation {
    assemble(spec.clone(), RenormFlags::default(), constants, Vec::new())
}

fn assemble(sym: EquationSpec, flags: RenormFlags, constants: &[MultiIndex], ids: Vec<Identification>) -> RenormalizedEquation {
    let terms = constants
        .iter()
        .map(|b| {
            let merged: Vec<(MultiIndex, Q)> =
                ids.iter().filter(|id| id.target == *b).map(|id| (id.beta.clone(), id.ratio.clone())).collect();
            let mut f = functional(&sym, b);
            for (m, q) in &merged {
                f.add_assign(&functional(&sym, m).scale(q));
            }
            ConstantTerm { beta: b.clone(), merged, functional: f }
        })
        .collect();
    RenormalizedEquation { base: base_rhs(&sym), spec: sym, flags, terms, identifications: ids }
}

fn operator_text(spec: &EquationSpec) -> String {
    if spec.operator.is_empty() {
        "L".to_string()
    } else {
        spec.operator.replace('\\', "")
    }
}

fn solution_text(spec: &EquationSpec) -> String {
    spec.solution.trim_start_matches('\\').to_string()
}

impl ConstantTerm {
    /// `c_beta · functional`.
    pub fn expr(&self) -> SymExpr {
        SymExpr::atom(Atom::Constant(self.beta.clone())).mul(&self.functional)
    }

    fn render(&self, spec: &EquationSpec, latex: bool) -> String {
        if self.functional.len() <= 1 {
            let e = self.expr();
            return if latex { e.render_latex(spec) } else { e.render_text(spec) };
        }
        let c = SymExpr::atom(Atom::Constant(self.beta.clone()));
        if latex {
            format!("{} ({})", c.render_latex(spec), self.functional.render_latex(spec))
        } else {
            format!("{} ({})", c.render_text(spec), self.functional.render_text(spec))
        }
    }
}

fn with_sign(rendered: String) -> String {
    match rendered.strip_prefix('-') {
        Some(rest) => format!("- {rest}"),
        None => format!("+ {rendered}"),
    }
}

impl RenormalizedEquation {
    /// The full counterterm `Σ c_β z^β` after merging.
    pub fn counterterm(&self) -> SymExpr {
        self.terms.iter().fold(SymExpr::zero(), |acc, t| acc.add(&t.expr()))
    }

    pub fn constant_count(&self) -> usize {
        self.terms.len()
    }

    pub fn render_text(&self) -> String {
        let s = &self.spec;
        let mut out = format!("{} {} = {}\n", operator_text(s), solution_text(s), self.base.render_text(s));
        for t in &self.terms {
            out.push_str("    ");
            out.push_str(&with_sign(t.render(s, false)));
            out.push('\n');
        }
        for id in &self.identifications {
            out.push_str(&format!(
                "# c[{}] = {} c[{}]\n",
                s.format_mi(&id.beta),
                id.ratio,
                s.format_mi(&id.target)
            ));
        }
        out
    }

    pub fn render_latex(&self) -> String {
        let s = &self.spec;
        let mut lines = vec![format!("{}{} &= {}", s.operator, s.solution, self.base.render_latex(s))];
        for t in &self.terms {
            lines.push(format!("&\\quad {}", with_sign(t.render(s, true))));
        }
        format!("\\begin{{align*}}\n\t{}\n\\end{{align*}}\n", lines.join("\\\\\n\t"))
    }

    pub fn to_json(&self) -> Value {
        let s = &self.spec;
        let constants: Vec<Value> = self
            .terms
            .iter()
            .map(|t| {
                let merged: Vec<Value> = t
                    .merged
                    .iter()
                    .map(|(b, q)| json!({"beta": s.mi_to_json(b), "notation": s.format_mi(b), "ratio": q.to_string()}))
                    .collect();
                json!({
                    "beta": s.mi_to_json(&t.beta),
                    "notation": s.format_mi(&t.beta),
                    "homogeneity": s.homogeneity(&t.beta).to_string(),
                    "merged": merged,
                    "functional": t.functional.to_json(s),
                    "text": t.render(s, false),
                    "latex": t.render(s, true),
                })
            })
            .collect();
        json!({
            "equation": s.name,
            "flags": {
                "spatial": self.flags.spatial,
                "noise_even": self.flags.noise_even,
                "merge_redundant": self.flags.merge_redundant,
            },
            "base": self.base.to_json(s),
            "constant_count": self.terms.len(),
            "constants": constants,
            "latex": self.render_latex(),
        })
    }
}

/// `𝓛 Π_β = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelEquation {
    pub beta: MultiIndex,
    pub rhs: SymExpr,
}

pub const MOD_POLYNOMIALS_NOTE: &str = "model equations hold modulo polynomials";

/// Model equations for every β in `set`, computed in parallel.
pub fn model_equations(env: &Envelope, set: &[MultiIndex], constants: &[MultiIndex]) -> Result<Vec<ModelEquation>> {
    set.par_iter()
        .map(|b| Ok(ModelEquation { beta: b.clone(), rhs: model_rhs(env, b, constants)? }))
        .collect()
}

impl ModelEquation {
    pub fn render_text(&self, spec: &EquationSpec) -> String {
        format!("{} Pi[{}] = {}", operator_text(spec), spec.format_mi(&self.beta), self.rhs.render_text(spec))
    }

    pub fn render_latex(&self, spec: &EquationSpec) -> String {
        format!("{}\\Pi_{{{}}} &= {}", spec.operator, spec.latex_mi(&self.beta), self.rhs.render_latex(spec))
    }

    pub fn to_json(&self, spec: &EquationSpec) -> Value {
        json!({
            "beta": spec.mi_to_json(&self.beta),
            "notation": spec.format_mi(&self.beta),
            "homogeneity": spec.homogeneity(&self.beta).to_string(),
            "rhs": self.rhs.to_json(spec),
            "text": self.rhs.render_text(spec),
            "latex": self.rhs.render_latex(spec),
        })
    }
}
