//! Subcriticality, population classes, exhaustive enumeration below a cap,
//! symmetry filters and the precedence order.

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grading::bracket;
use crate::hom::Homogeneity;
use crate::index::{CoordSymbol, DerivativeWord, KWord, Label, MultiIndex};
use crate::spec::EquationSpec;

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PopulationClass {
    /// Populated with at least one genuine noise.
    N,
    /// Populated without genuine noise (only unit labels and polynomials).
    Nbar,
    /// A single polynomial symbol `e_n`.
    P,
    Outside,
}

impl PopulationClass {
    /// Whether an element classified as `other` belongs to the set named by
    /// `self`; `Nbar` names the whole minimal populated set, so it contains `N`.
    pub fn admits(self, other: PopulationClass) -> bool {
        match self {
            PopulationClass::Nbar => matches!(other, PopulationClass::N | PopulationClass::Nbar),
            _ => self == other,
        }
    }

    /// Rows and columns kept by the projection onto `P ∪ N̄`.
    pub fn is_projected(self) -> bool {
        self != PopulationClass::Outside
    }
}

impl std::str::FromStr for PopulationClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "N" => Ok(PopulationClass::N),
            "Nbar" => Ok(PopulationClass::Nbar),
            "P" => Ok(PopulationClass::P),
            other => Err(Error::Parse(format!("unknown class `{other}` (expected N, Nbar or P)"))),
        }
    }
}

impl EquationSpec {
    /// The closed-form subcriticality test for the pair `(l, k)`.
    pub fn is_subcritical_pair(&self, label: Label, k: &KWord) -> bool {
        let reg = self.noise(label).reg;
        if k.is_empty() {
            return self.regsol < self.eta + reg;
        }
        let worst: Homogeneity = k
            .iter()
            .map(|(n, c)| (self.regsol - self.scaled_degree(n)).min(Homogeneity::zero()) * *c as i64)
            .sum();
        let floor = reg.min(worst).min(reg + worst);
        self.regsol < self.eta + floor
    }

    /// Subcritical, and not switched off by a declared nonlinearity shape.
    pub fn is_active_pair(&self, label: Label, k: &KWord) -> bool {
        self.is_subcritical_pair(label, k)
            && self
                .noise(label)
                .nonlinearity
                .as_ref()
                .is_none_or(|a| a.supports(k, self.dim))
    }

    /// Polynomial symbols forbidden inside non-polynomial multi-indices.
    pub fn is_low_poly(&self, n: &DerivativeWord) -> bool {
        self.restrict_low_poly && self.regsol.is_positive() && self.scaled_degree(n) < self.regsol
    }

    pub fn classify(&self, beta: &MultiIndex) -> PopulationClass {
        if beta.as_single_poly().is_some() {
            return PopulationClass::P;
        }
        if beta.is_zero() || bracket(beta) != 1 {
            return PopulationClass::Outside;
        }
        if beta.pairs().any(|(l, k, _)| !self.is_active_pair(l, k)) {
            return PopulationClass::Outside;
        }
        if beta.polys().any(|(n, _)| self.is_low_poly(&n)) {
            return PopulationClass::Outside;
        }
        if self.noise_homogeneity(beta) > 0 {
            PopulationClass::N
        } else {
            PopulationClass::Nbar
        }
    }

    /// Derivative words `n` with `|n| < bound`, in canonical order.
    pub fn words_below(&self, bound: Homogeneity) -> Vec<DerivativeWord> {
        let mut out = Vec::new();
        let mut current = self.zero_word();
        self.words_rec(0, &mut current, bound, &mut out);
        out.sort();
        out
    }

    fn words_rec(
        &self,
        axis: usize,
        current: &mut DerivativeWord,
        bound: Homogeneity,
        out: &mut Vec<DerivativeWord>,
    ) {
        if axis == self.dim {
            if self.scaled_degree(current) < bound {
                out.push(*current);
            }
            return;
        }
        let mut w = *current;
        while self.scaled_degree(&w) < bound {
            self.words_rec(axis + 1, &mut w, bound, out);
            w = w.plus_unit(axis);
        }
    }

    /// Weight of a pair in the reduced grading `H`, where `|β| = regsol − η + H(β)`
    /// whenever `[β] = 1`.
    fn reduced_pair_weight(&self, label: Label, k: &KWord) -> Homogeneity {
        k.iter().fold(self.noise(label).alpha + self.eta - self.regsol, |acc, (n, c)| {
            acc + (self.regsol - self.scaled_degree(n)) * *c as i64
        })
    }

    fn reduced_poly_weight(&self, n: &DerivativeWord) -> Homogeneity {
        self.scaled_degree(n) - self.regsol
    }
}

/// Exhaustive search for populated multi-indices below a homogeneity cap.
pub struct Enumerator<'a> {
    spec: &'a EquationSpec,
    node_budget: usize,
    nodes: usize,
}

#[derive(Clone)]
struct WeightedSymbol {
    sym: CoordSymbol,
    weight: Homogeneity,
    /// `|k| − 1` for internal pairs.
    extra_slots: u32,
}

impl<'a> Enumerator<'a> {
    pub fn new(spec: &'a EquationSpec) -> Self {
        Enumerator { spec, node_budget: DEFAULT_NODE_BUDGET, nodes: 0 }
    }

    pub fn with_node_budget(mut self, budget: usize) -> Self {
        self.node_budget = budget;
        self
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            Err(Error::CapTooLarge { budget: self.node_budget })
        } else {
            Ok(())
        }
    }

    /// All β of the requested class with `|β| < cap`, sorted by homogeneity
    /// then canonical form.
    pub fn below(&mut self, cap: Homogeneity, class: PopulationClass) -> Result<Vec<MultiIndex>> {
        let spec = self.spec;
        let mut found: Vec<MultiIndex> = match class {
            PopulationClass::P => spec
                .words_below(cap + spec.eta)
                .into_iter()
                .map(|n| MultiIndex::unit(CoordSymbol::Poly(n)))
                .collect(),
            PopulationClass::N | PopulationClass::Nbar => self.populated(cap)?,
            PopulationClass::Outside => {
                return Err(Error::Parse("the Outside class cannot be enumerated".into()))
            }
        };
        found.retain(|b| class.admits(spec.classify(b)) && spec.homogeneity(b) < cap);
        sort_by_homogeneity(spec, &mut found);
        Ok(found)
    }

    fn populated(&mut self, cap: Homogeneity) -> Result<Vec<MultiIndex>> {
        let spec = self.spec;
        let budget = cap - spec.regsol + spec.eta;
        if !budget.is_positive() {
            return Ok(Vec::new());
        }
        let leaves: Vec<WeightedSymbol> = spec
            .labels()
            .filter(|l| spec.is_active_pair(*l, &KWord::empty()))
            .map(|l| WeightedSymbol {
                sym: CoordSymbol::Pair(l, KWord::empty()),
                weight: spec.reduced_pair_weight(l, &KWord::empty()),
                extra_slots: 0,
            })
            .filter(|s| s.weight < budget)
            .collect();
        let slot_bound = spec.eta;
        let mut polys = Vec::new();
        for n in spec.words_below(budget + spec.regsol) {
            if spec.is_low_poly(&n) {
                continue;
            }
            let weight = spec.reduced_poly_weight(&n);
            if !weight.is_positive() {
                return Err(Error::Validation {
                    rule: "bb05",
                    detail: format!(
                        "polynomial {} has |n| ≤ regsol but is allowed inside populated multi-indices; \
                         set restrict_low_poly",
                        n
                    ),
                });
            }
            polys.push(WeightedSymbol { sym: CoordSymbol::Poly(n), weight, extra_slots: 0 });
        }
        // cheapest way to fill one leaf slot
        let slot_cost = leaves
            .iter()
            .chain(polys.iter())
            .map(|s| s.weight)
            .min();
        let Some(slot_cost) = slot_cost else {
            return Ok(Vec::new());
        };
        if slot_cost >= budget {
            return Ok(Vec::new());
        }
        let internals = self.internal_pairs(budget, slot_cost, slot_bound)?;

        let mut out = BTreeSet::new();
        let mut chosen: Vec<usize> = Vec::new();
        self.internal_dfs(&internals, 0, &mut chosen, Homogeneity::zero(), 1, budget, slot_cost, &leaves, &polys, &mut out)?;
        Ok(out.into_iter().collect())
    }

    /// Active pairs `(l, k)` with `k ≠ 0` that fit in the budget together with
    /// the leaves they force.
    fn internal_pairs(
        &mut self,
        budget: Homogeneity,
        slot_cost: Homogeneity,
        slot_bound: Homogeneity,
    ) -> Result<Vec<WeightedSymbol>> {
        let spec = self.spec;
        let slots = spec.words_below(slot_bound);
        let mut out = Vec::new();
        for label in spec.labels() {
            let mut k = KWord::empty();
            self.kword_rec(label, &slots, 0, &mut k, budget, slot_cost, &mut out)?;
        }
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn kword_rec(
        &mut self,
        label: Label,
        slots: &[DerivativeWord],
        idx: usize,
        k: &mut KWord,
        budget: Homogeneity,
        slot_cost: Homogeneity,
        out: &mut Vec<WeightedSymbol>,
    ) -> Result<()> {
        self.tick()?;
        let spec = self.spec;
        if idx == slots.len() {
            if !k.is_empty() && spec.is_active_pair(label, k) {
                let weight = spec.reduced_pair_weight(label, k);
                if weight + slot_cost * (k.len() as i64) < budget {
                    out.push(WeightedSymbol {
                        sym: CoordSymbol::Pair(label, k.clone()),
                        weight,
                        extra_slots: k.len() - 1,
                    });
                }
            }
            return Ok(());
        }
        let n = slots[idx];
        let mut count = 0;
        loop {
            let trial = KWord::from_counts(k.iter().cloned().chain(std::iter::once((n, count))));
            // subcriticality is downward closed, so a failing count ends the slot
            if !spec.is_subcritical_pair(label, &trial) {
                break;
            }
            // with all remaining slots at their most favourable (negative weights
            // bounded by subcriticality), a positive-weight slot that already
            // overshoots can stop
            let c = spec.regsol - spec.scaled_degree(&n);
            let step = c + slot_cost;
            if count > 0 && step >= Homogeneity::zero() {
                let weight = spec.reduced_pair_weight(label, &trial);
                let remaining_min = self.min_completion(label, &trial, slots, idx + 1, slot_cost);
                if weight + slot_cost * trial.len() as i64 + remaining_min >= budget {
                    break;
                }
            }
            let mut next = trial;
            std::mem::swap(k, &mut next);
            self.kword_rec(label, slots, idx + 1, k, budget, slot_cost, out)?;
            std::mem::swap(k, &mut next);
            count += 1;
        }
        Ok(())
    }

    /// Most negative amount the later slots can still add to `weight + slot_cost·|k|`.
    fn min_completion(
        &self,
        label: Label,
        k: &KWord,
        slots: &[DerivativeWord],
        from: usize,
        slot_cost: Homogeneity,
    ) -> Homogeneity {
        let spec = self.spec;
        let mut total = Homogeneity::zero();
        let mut trial = k.clone();
        for n in &slots[from..] {
            let step = spec.regsol - spec.scaled_degree(n) + slot_cost;
            if !step.is_negative() {
                continue;
            }
            while spec.is_subcritical_pair(label, &trial.plus(*n)) {
                trial = trial.plus(*n);
                total += step;
            }
        }
        total
    }

    #[allow(clippy::too_many_arguments)]
    fn internal_dfs(
        &mut self,
        internals: &[WeightedSymbol],
        start: usize,
        chosen: &mut Vec<usize>,
        weight: Homogeneity,
        slots: u32,
        budget: Homogeneity,
        slot_cost: Homogeneity,
        leaves: &[WeightedSymbol],
        polys: &[WeightedSymbol],
        out: &mut BTreeSet<MultiIndex>,
    ) -> Result<()> {
        self.tick()?;
        let mut core = MultiIndex::zero();
        for &i in chosen.iter() {
            core.add_count(internals[i].sym.clone(), 1);
        }
        self.fill_slots(&core, weight, slots, budget, leaves, polys, out)?;
        for i in start..internals.len() {
            let s = &internals[i];
            let w = weight + s.weight;
            let n_slots = slots + s.extra_slots;
            if w + slot_cost * n_slots as i64 >= budget {
                continue;
            }
            chosen.push(i);
            self.internal_dfs(internals, i, chosen, w, n_slots, budget, slot_cost, leaves, polys, out)?;
            chosen.pop();
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_slots(
        &mut self,
        core: &MultiIndex,
        weight: Homogeneity,
        slots: u32,
        budget: Homogeneity,
        leaves: &[WeightedSymbol],
        polys: &[WeightedSymbol],
        out: &mut BTreeSet<MultiIndex>,
    ) -> Result<()> {
        let fillers: Vec<WeightedSymbol> = leaves.iter().chain(polys.iter()).cloned().collect();
        let mut picked = Vec::new();
        self.fill_rec(core, &fillers, 0, &mut picked, weight, slots, budget, out)
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_rec(
        &mut self,
        core: &MultiIndex,
        fillers: &[WeightedSymbol],
        start: usize,
        picked: &mut Vec<usize>,
        weight: Homogeneity,
        remaining: u32,
        budget: Homogeneity,
        out: &mut BTreeSet<MultiIndex>,
    ) -> Result<()> {
        self.tick()?;
        if remaining == 0 {
            let mut beta = core.clone();
            for &i in picked.iter() {
                beta.add_count(fillers[i].sym.clone(), 1);
            }
            debug_assert_eq!(bracket(&beta), 1);
            out.insert(beta);
            return Ok(());
        }
        for i in start..fillers.len() {
            let w = weight + fillers[i].weight;
            // fillers are not sorted by weight, so only prune this branch
            if w >= budget {
                continue;
            }
            picked.push(i);
            self.fill_rec(core, fillers, i, picked, w, remaining - 1, budget, out)?;
            picked.pop();
        }
        Ok(())
    }
}

pub fn sort_by_homogeneity(spec: &EquationSpec, set: &mut [MultiIndex]) {
    set.sort_by_cached_key(|b| (spec.homogeneity(b), b.clone()));
}

pub fn enumerate_below(spec: &EquationSpec, cap: Homogeneity, class: PopulationClass) -> Result<Vec<MultiIndex>> {
    Enumerator::new(spec).below(cap, class)
}

/// `{β ∈ N : |β| < 0, ⟨β⟩ ≥ 2}`.
pub fn counterterm_set(spec: &EquationSpec) -> Result<Vec<MultiIndex>> {
    counterterm_set_with_budget(spec, DEFAULT_NODE_BUDGET)
}

pub fn counterterm_set_with_budget(spec: &EquationSpec, budget: usize) -> Result<Vec<MultiIndex>> {
    let mut set = Enumerator::new(spec)
        .with_node_budget(budget)
        .below(Homogeneity::zero(), PopulationClass::N)?;
    set.retain(|b| spec.noise_homogeneity(b) >= 2);
    Ok(set)
}

/// Parity of the total `axis` derivative count carried by β.
pub fn spatial_parity(beta: &MultiIndex, axis: usize) -> u32 {
    let total: u64 = beta
        .iter()
        .map(|(s, c)| {
            let per = match s {
                CoordSymbol::Pair(_, k) => k.iter().map(|(n, kc)| (n.get(axis) * kc) as u64).sum(),
                CoordSymbol::Poly(n) => n.get(axis) as u64,
            };
            per * *c as u64
        })
        .sum();
    (total % 2) as u32
}

/// Keeps reflection-even β on every reflected axis, and even ⟨β⟩ when
/// noise parity is on.
pub fn filter_symmetric(set: &[MultiIndex], spec: &EquationSpec) -> Vec<MultiIndex> {
    set.iter()
        .filter(|b| spec.symmetry.reflect_axes.iter().all(|&a| spatial_parity(b, a) == 0))
        .filter(|b| !spec.symmetry.noise_parity_even || spec.noise_homogeneity(b).is_multiple_of(2))
        .cloned()
        .collect()
}

/// Convex weights for `|β|_≺ = λ₁·length + λ₂·⟨β⟩ + λ₃·(polynomial degree)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecedenceWeights {
    pub length: Rational64,
    pub noise: Rational64,
    pub degree: Rational64,
}

impl PrecedenceWeights {
    pub fn new(
        length: Rational64,
        noise: Rational64,
        degree: Rational64,
        spec: &EquationSpec,
    ) -> Result<Self> {
        let w = PrecedenceWeights { length, noise, degree };
        let zero = Rational64::zero();
        if length <= zero || noise <= zero || degree <= zero {
            return Err(Error::Weight("all weights must be positive".into()));
        }
        if length + noise + degree != Rational64::one() {
            return Err(Error::Weight("weights must sum to 1".into()));
        }
        let eta = Homogeneity::rational(spec.eta.base);
        let as_h = Homogeneity::rational;
        if as_h(noise) < eta * degree {
            return Err(Error::Weight(format!("noise weight {noise} is below degree weight × eta")));
        }
        if as_h(noise) - eta * degree < as_h(length) {
            return Err(Error::Weight("noise − degree·eta must dominate the length weight".into()));
        }
        if (as_h(length) - (spec.eta + spec.alpha_max()) * degree).is_negative() {
            return Err(Error::Weight("length weight is below degree × (eta + alpha_max)".into()));
        }
        Ok(w)
    }

    pub fn default_for(spec: &EquationSpec) -> Self {
        let eta = spec.eta.base;
        let amax = spec.alpha_max().base;
        let degree = Rational64::one() / (eta * 3 + amax + 1);
        PrecedenceWeights { length: degree * eta, noise: degree * (eta * 2 + amax), degree }
    }

    pub fn precedence(&self, beta: &MultiIndex, spec: &EquationSpec) -> Homogeneity {
        Homogeneity::rational(self.length * beta.length() as i64 + self.noise * spec.noise_homogeneity(beta) as i64)
            + spec.poly_degree(beta) * self.degree
    }
}

pub fn default_weights(spec: &EquationSpec) -> PrecedenceWeights {
    PrecedenceWeights::default_for(spec)
}
