//! Decorated rooted trees, grafting, the node-derivative `↑^i`, and the
//! fertility fold `Ψ` onto multi-index monomials.
//!
//! Text grammar: `Xi(l; I[m](tree), ...)` for a noise node with outgoing
//! edges, `Xi(l)` for a bare noise node, `X[n]` for a polynomial leaf. Words
//! are written `0,1` or `(0,1)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::deriv::DerivationAlgebra;
use crate::error::{Error, Result};
use crate::index::{CoordSymbol, DerivativeWord, KWord, Label, MultiIndex, MAX_DIM};
use crate::spec::EquationSpec;
use crate::Q;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DecTree {
    Leaf(DerivativeWord),
    /// Children are kept sorted, so isomorphic trees compare equal.
    Node { label: Label, children: Vec<(DerivativeWord, DecTree)> },
}

pub type TreeCombo = BTreeMap<DecTree, Q>;

fn add_tree(combo: &mut TreeCombo, t: DecTree, q: Q) {
    if q.is_zero() {
        return;
    }
    let e = combo.entry(t.clone()).or_insert_with(Q::zero);
    *e += q;
    if e.is_zero() {
        combo.remove(&t);
    }
}

impl DecTree {
    pub fn node(label: Label, mut children: Vec<(DerivativeWord, DecTree)>) -> Self {
        children.sort();
        DecTree::Node { label, children }
    }

    pub fn noise(label: Label) -> Self {
        DecTree::Node { label, children: Vec::new() }
    }

    pub fn node_count(&self) -> usize {
        match self {
            DecTree::Leaf(_) => 1,
            DecTree::Node { children, .. } => 1 + children.iter().map(|(_, t)| t.node_count()).sum::<usize>(),
        }
    }

    /// Outgoing edge decorations of the root as a multiset.
    fn root_k(children: &[(DerivativeWord, DecTree)]) -> KWord {
        children.iter().fold(KWord::empty(), |k, (m, _)| k.plus(*m))
    }

    /// Every node `(label, k)` of the tree.
    pub fn node_pairs(&self) -> Vec<(Label, KWord)> {
        let mut out = Vec::new();
        self.collect_pairs(&mut out);
        out
    }

    fn collect_pairs(&self, out: &mut Vec<(Label, KWord)>) {
        if let DecTree::Node { label, children } = self {
            out.push((*label, DecTree::root_k(children)));
            for (_, t) in children {
                t.collect_pairs(out);
            }
        }
    }

    pub fn render(&self, spec: &EquationSpec) -> String {
        match self {
            DecTree::Leaf(n) => format!("X[{}]", word_text(n)),
            DecTree::Node { label, children } if children.is_empty() => {
                format!("Xi({})", spec.noise(*label).name)
            }
            DecTree::Node { label, children } => {
                let parts: Vec<String> = children
                    .iter()
                    .map(|(m, t)| format!("I[{}]({})", word_text(m), t.render(spec)))
                    .collect();
                format!("Xi({}; {})", spec.noise(*label).name, parts.join(", "))
            }
        }
    }
}

impl fmt::Debug for DecTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecTree::Leaf(n) => write!(f, "X{n}"),
            DecTree::Node { label, children } => {
                write!(f, "Xi{}(", label.0)?;
                for (i, (m, t)) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "I{m}{t:?}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn word_text(n: &DerivativeWord) -> String {
    n.entries().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

/// `σ ↷^n τ`.
pub fn graft(sigma: &DecTree, n: &DerivativeWord, tau: &DecTree) -> TreeCombo {
    let mut out = TreeCombo::new();
    match tau {
        DecTree::Leaf(np) => {
            if np == n {
                out.insert(sigma.clone(), Q::one());
            }
        }
        DecTree::Node { label, children } => {
            let mut attached = children.clone();
            attached.push((*n, sigma.clone()));
            add_tree(&mut out, DecTree::node(*label, attached), Q::one());
            for (j, (m, child)) in children.iter().enumerate() {
                for (t, q) in graft(sigma, n, child) {
                    let mut replaced = children.clone();
                    replaced[j] = (*m, t);
                    add_tree(&mut out, DecTree::node(*label, replaced), q);
                }
            }
        }
    }
    out
}

pub fn graft_combo(sigma: &TreeCombo, n: &DerivativeWord, tau: &TreeCombo) -> TreeCombo {
    let mut out = TreeCombo::new();
    for (s, qs) in sigma {
        for (t, qt) in tau {
            for (r, q) in graft(s, n, t) {
                add_tree(&mut out, r, q * qs * qt);
            }
        }
    }
    out
}

/// `↑^i τ`, with the new edge `n` ranging over words that keep the node's
/// pair active.
pub fn up(axis: usize, tau: &DecTree, alg: &DerivationAlgebra) -> TreeCombo {
    let mut out = TreeCombo::new();
    match tau {
        DecTree::Leaf(n) => {
            out.insert(DecTree::Leaf(n.plus_unit(axis)), Q::one());
        }
        DecTree::Node { label, children } => {
            let k = DecTree::root_k(children);
            for n in alg.slots() {
                if !alg.is_active(*label, &k.plus(*n)) {
                    continue;
                }
                let mut grown = children.clone();
                grown.push((*n, DecTree::Leaf(n.plus_unit(axis))));
                add_tree(&mut out, DecTree::node(*label, grown), Q::one());
            }
            for (j, (m, child)) in children.iter().enumerate() {
                for (t, q) in up(axis, child, alg) {
                    let mut replaced = children.clone();
                    replaced[j] = (*m, t);
                    add_tree(&mut out, DecTree::node(*label, replaced), q);
                }
            }
        }
    }
    out
}

pub fn up_combo(axis: usize, tau: &TreeCombo, alg: &DerivationAlgebra) -> TreeCombo {
    let mut out = TreeCombo::new();
    for (t, qt) in tau {
        for (r, q) in up(axis, t, alg) {
            add_tree(&mut out, r, q * qt);
        }
    }
    out
}

/// `Ψ[τ] = C(β) z^β`.
pub fn psi(tau: &DecTree) -> (Q, MultiIndex) {
    match tau {
        DecTree::Leaf(n) => (Q::from_integer(n.factorial()), MultiIndex::unit(CoordSymbol::Poly(*n))),
        DecTree::Node { label, children } => {
            let k = DecTree::root_k(children);
            let mut coeff = Q::from_integer(k.factorial());
            let mut beta = MultiIndex::unit(CoordSymbol::Pair(*label, k));
            for (m, child) in children {
                let (c, b) = psi(child);
                coeff = coeff * c / Q::from_integer(m.factorial());
                beta = beta.add(&b);
            }
            (coeff, beta)
        }
    }
}

/// `Ψ` extended linearly to combinations.
pub fn psi_combo(combo: &TreeCombo) -> BTreeMap<MultiIndex, Q> {
    let mut out: BTreeMap<MultiIndex, Q> = BTreeMap::new();
    for (t, q) in combo {
        let (c, b) = psi(t);
        let e = out.entry(b.clone()).or_insert_with(Q::zero);
        *e += c * q;
        if e.is_zero() {
            out.remove(&b);
        }
    }
    out
}

/// All trees with exactly `nodes` nodes built from the given labels, edge
/// decorations and leaf words.
pub fn trees_with_nodes(
    labels: &[Label],
    edges: &[DerivativeWord],
    leaves: &[DerivativeWord],
    nodes: usize,
) -> Vec<DecTree> {
    let mut by_size: Vec<Vec<DecTree>> = vec![Vec::new()];
    for size in 1..=nodes {
        let mut here: Vec<DecTree> = Vec::new();
        if size == 1 {
            here.extend(leaves.iter().map(|n| DecTree::Leaf(*n)));
        }
        // children: nondecreasing sequences of (edge, subtree) with total size − 1
        let mut items: Vec<(usize, (DerivativeWord, DecTree))> = Vec::new();
        for (s, ts) in by_size.iter().enumerate().skip(1) {
            for t in ts {
                for m in edges {
                    items.push((s, (*m, t.clone())));
                }
            }
        }
        items.sort_by(|a, b| a.1.cmp(&b.1));
        let mut forests: Vec<Vec<(DerivativeWord, DecTree)>> = Vec::new();
        forests_rec(&items, 0, size - 1, &mut Vec::new(), &mut forests);
        for l in labels {
            for f in &forests {
                here.push(DecTree::node(*l, f.clone()));
            }
        }
        here.sort();
        here.dedup();
        by_size.push(here);
    }
    by_size.pop().unwrap_or_default()
}

fn forests_rec(
    items: &[(usize, (DerivativeWord, DecTree))],
    start: usize,
    remaining: usize,
    current: &mut Vec<(DerivativeWord, DecTree)>,
    out: &mut Vec<Vec<(DerivativeWord, DecTree)>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for (i, (s, item)) in items.iter().enumerate().skip(start) {
        if *s > remaining {
            continue;
        }
        current.push(item.clone());
        forests_rec(items, i, remaining - s, current, out);
        current.pop();
    }
}

/// Parses the text grammar against a spec's noise names.
pub fn parse_tree(text: &str, spec: &EquationSpec) -> Result<DecTree> {
    let mut p = TreeParser { src: text.as_bytes(), pos: 0, spec };
    let t = p.tree()?;
    p.ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

struct TreeParser<'a> {
    src: &'a [u8],
    pos: usize,
    spec: &'a EquationSpec,
}

impl TreeParser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Tree(format!("{what} at offset {}", self.pos))
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{tok}`")))
        }
    }

    fn word(&mut self) -> Result<DerivativeWord> {
        let paren = self.eat("(");
        let mut entries = Vec::new();
        loop {
            self.ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            let v: u32 = digits.parse().ok().filter(|v| *v < 256).ok_or_else(|| self.err("expected a word entry"))?;
            entries.push(v);
            if !self.eat(",") {
                break;
            }
        }
        if paren {
            self.expect(")")?;
        }
        if entries.len() != self.spec.dim || entries.len() > MAX_DIM {
            return Err(self.err(&format!("word needs {} entries", self.spec.dim)));
        }
        Ok(DerivativeWord::from_slice(&entries))
    }

    fn tree(&mut self) -> Result<DecTree> {
        if self.eat("Xi(") {
            self.ws();
            let start = self.pos;
            while self.pos < self.src.len() && !matches!(self.src[self.pos], b';' | b')') {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("utf8").trim();
            let label = self
                .spec
                .label_by_name(name)
                .ok_or_else(|| Error::Tree(format!("unknown noise `{name}`")))?;
            let mut children = Vec::new();
            if self.eat(";") {
                loop {
                    self.ws();
                    if self.src.get(self.pos) == Some(&b')') {
                        break;
                    }
                    self.expect("I[")?;
                    let m = self.word()?;
                    self.expect("]")?;
                    self.expect("(")?;
                    let child = self.tree()?;
                    self.expect(")")?;
                    children.push((m, child));
                    if !self.eat(",") {
                        break;
                    }
                }
            }
            self.expect(")")?;
            Ok(DecTree::node(label, children))
        } else if self.eat("X[") {
            let n = self.word()?;
            self.expect("]")?;
            Ok(DecTree::Leaf(n))
        } else {
            Err(self.err("expected `Xi(` or `X[`"))
        }
    }
}

/// `(1/n!) Ψ[σ] D^(n) Ψ[τ]` computed through the derivation algebra.
pub fn derivation_image(
    alg: &DerivationAlgebra,
    sigma: &DecTree,
    n: &DerivativeWord,
    tau: &DecTree,
) -> BTreeMap<MultiIndex, Q> {
    let (cs, bs) = psi(sigma);
    let (ct, bt) = psi(tau);
    let scale = cs * ct / Q::from_integer(n.factorial());
    let mut out = BTreeMap::new();
    for (b, q) in alg.raw_deriv(n, &bt).iter() {
        let v = &scale * q;
        if !v.is_zero() {
            out.insert(b.add(&bs), v);
        }
    }
    out
}

/// Drops trees with a node whose pair is not active.
pub fn active_part(combo: &TreeCombo, alg: &DerivationAlgebra) -> TreeCombo {
    combo
        .iter()
        .filter(|(t, _)| t.node_pairs().iter().all(|(l, k)| alg.is_active(*l, k)))
        .map(|(t, q)| (t.clone(), q.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deriv::q_int;
    use crate::spec::builtin_spec;

    fn gk() -> EquationSpec {
        builtin_spec("gkpz").unwrap()
    }

    #[test]
    fn parse_and_render_roundtrip() {
        let s = gk();
        let t = parse_tree("Xi(xi; I[0,0](Xi(0; I[(0,0)](Xi(xi)))), I[0,0](Xi(xi)))", &s).unwrap();
        assert_eq!(t.node_count(), 4);
        assert_eq!(parse_tree(&t.render(&s), &s).unwrap(), t);
        assert_eq!(parse_tree("X[0,1]", &s).unwrap(), DecTree::Leaf(DerivativeWord::from_slice(&[0, 1])));
        assert!(parse_tree("Xi(eta)", &s).is_err());
        assert!(parse_tree("X[0,1,2]", &s).is_err());
    }

    #[test]
    fn psi_of_single_noise() {
        let s = gk();
        let xi = s.label_by_name("xi").unwrap();
        assert_eq!(psi(&DecTree::noise(xi)), (q_int(1), s.parse_mi("xi[]").unwrap()));
        let n = DerivativeWord::from_slice(&[1, 2]);
        assert_eq!(psi(&DecTree::Leaf(n)).0, q_int(2));
    }

    #[test]
    fn root_information_is_lost() {
        let s = gk();
        let a = parse_tree("Xi(xi; I[0,0](Xi(0; I[0,0](Xi(xi)))), I[0,0](Xi(xi)))", &s).unwrap();
        let b = parse_tree("Xi(0; I[0,0](Xi(xi; I[0,0](Xi(xi)), I[0,0](Xi(xi)))))", &s).unwrap();
        assert_ne!(a, b);
        let expected = (q_int(2), s.parse_mi("2 xi[] + 0[(0,0)] + xi[(0,0)^2]").unwrap());
        assert_eq!(psi(&a), expected);
        assert_eq!(psi(&b), expected);
    }

    #[test]
    fn graft_cases() {
        let s = gk();
        let xi = DecTree::noise(s.label_by_name("xi").unwrap());
        let z = s.zero_word();
        assert!(graft(&xi, &z, &DecTree::Leaf(DerivativeWord::from_slice(&[0, 1]))).is_empty());
        let one = graft(&xi, &z, &xi);
        let attached = DecTree::node(s.label_by_name("xi").unwrap(), vec![(z, xi.clone())]);
        assert_eq!(one, TreeCombo::from([(attached.clone(), q_int(1))]));
        let two = graft(&xi, &z, &attached);
        assert_eq!(two.len(), 2);
        let wide = DecTree::node(s.label_by_name("xi").unwrap(), vec![(z, xi.clone()), (z, xi.clone())]);
        let deep = DecTree::node(s.label_by_name("xi").unwrap(), vec![(z, attached)]);
        assert_eq!(two.get(&wide), Some(&q_int(1)));
        assert_eq!(two.get(&deep), Some(&q_int(1)));
    }

    #[test]
    fn tree_counts() {
        let s = gk();
        let labels: Vec<Label> = s.labels().collect();
        let z = s.zero_word();
        assert_eq!(trees_with_nodes(&labels, &[z], &[], 1).len(), 2);
        // root and one child, 2 × 2 labellings
        assert_eq!(trees_with_nodes(&labels, &[z], &[], 2).len(), 4);
        // chains (8) and cherries (2 × 3)
        assert_eq!(trees_with_nodes(&labels, &[z], &[], 3).len(), 14);
    }
}
