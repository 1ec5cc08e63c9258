//! Sparse polynomials over symbolic atoms with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Signed;
use serde_json::{json, Value};

use crate::index::{DerivativeWord, KWord, Label, MultiIndex};
use crate::ring::Ring;
use crate::spec::EquationSpec;
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// `ξ_l` for a genuine noise.
    Noise(Label),
    /// `∂^n Π_γ`.
    ModelDeriv(DerivativeWord, MultiIndex),
    /// The polynomial `(· − x)_i`.
    PolyBase(usize),
    /// The renormalization constant `c_γ`.
    Constant(MultiIndex),
    /// The functional `z_(l,k)[a, u, ·]`, kept unexpanded.
    NonlinDeriv(Label, KWord),
    /// `order`-th derivative of a named function of `u`.
    Func { name: String, order: u32 },
    Param(String),
    /// `∂^n u`.
    Jet(DerivativeWord),
}

/// Product of atoms with positive exponents, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Atom, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn atom(a: Atom) -> Self {
        Monomial(vec![(a, 1)])
    }

    pub fn from_factors<I: IntoIterator<Item = (Atom, u32)>>(factors: I) -> Self {
        factors
            .into_iter()
            .filter(|(_, e)| *e > 0)
            .fold(Monomial::one(), |acc, (a, e)| acc.mul(&Monomial(vec![(a, e)])))
    }

    pub fn factors(&self) -> &[(Atom, u32)] {
        &self.0
    }

    pub fn degree_of(&self, pred: impl Fn(&Atom) -> bool) -> u32 {
        self.0.iter().filter(|(a, _)| pred(a)).map(|(_, e)| *e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: BTreeMap<Atom, u32> = self.0.iter().cloned().collect();
        for (a, e) in &other.0 {
            *out.entry(a.clone()).or_insert(0) += e;
        }
        Monomial(out.into_iter().collect())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymExpr(BTreeMap<Monomial, Q>);

impl SymExpr {
    pub fn atom(a: Atom) -> Self {
        SymExpr::term(Q::one(), Monomial::atom(a))
    }

    pub fn constant(q: Q) -> Self {
        SymExpr::term(q, Monomial::one())
    }

    pub fn term(q: Q, m: Monomial) -> Self {
        let mut e = SymExpr::default();
        e.add_term(m, q);
        e
    }

    pub fn add_term(&mut self, m: Monomial, q: Q) {
        if q.is_zero() {
            return;
        }
        let entry = self.0.entry(m.clone()).or_insert_with(Q::zero);
        *entry += q;
        if entry.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All atoms occurring anywhere.
    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.0.keys().flat_map(|m| m.0.iter().map(|(a, _)| a))
    }

    /// Substitutes each atom through `f`; `None` keeps the atom.
    pub fn substitute(&self, f: &impl Fn(&Atom) -> Option<SymExpr>) -> SymExpr {
        let mut out = SymExpr::default();
        for (m, q) in &self.0 {
            let mut prod = SymExpr::constant(q.clone());
            for (a, e) in &m.0 {
                let base = f(a).unwrap_or_else(|| SymExpr::atom(a.clone()));
                prod = prod.mul(&Ring::pow(&base, *e));
            }
            out.add_assign(&prod);
        }
        out
    }

    /// `Some(q)` if `self = q · other` with `q ≠ 0`.
    pub fn ratio_to(&self, other: &SymExpr) -> Option<Q> {
        let (m, q) = self.0.iter().next()?;
        let r = q / other.0.get(m)?;
        (other.scale(&r) == *self).then_some(r)
    }

    pub fn render_text(&self, spec: &EquationSpec) -> String {
        self.render(spec, false)
    }

    pub fn render_latex(&self, spec: &EquationSpec) -> String {
        self.render(spec, true)
    }

    fn render(&self, spec: &EquationSpec, latex: bool) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, q)) in self.0.iter().enumerate() {
            let neg = q.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let q = q.abs();
            let body = render_monomial(m, spec, latex);
            if q == Q::one() && !m.0.is_empty() {
                out.push_str(&body);
                continue;
            }
            if latex && !q.is_integer() {
                let _ = write!(out, "\\tfrac{{{}}}{{{}}}", q.numer(), q.denom());
            } else if latex {
                let _ = write!(out, "{q}");
            } else {
                let _ = write!(out, "{q}");
                if !m.0.is_empty() {
                    out.push(' ');
                }
            }
            out.push_str(&body);
        }
        out
    }

    pub fn to_json(&self, spec: &EquationSpec) -> Value {
        let terms: Vec<Value> = self
            .0
            .iter()
            .map(|(m, q)| {
                let factors: Vec<Value> = m
                    .0
                    .iter()
                    .map(|(a, e)| json!({"atom": atom_json(a, spec), "pow": e}))
                    .collect();
                json!({"coeff": q.to_string(), "factors": factors})
            })
            .collect();
        Value::Array(terms)
    }
}

impl Ring for SymExpr {
    fn zero() -> Self {
        SymExpr::default()
    }

    fn one() -> Self {
        SymExpr::constant(Q::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = SymExpr::default();
        for (ma, qa) in &self.0 {
            for (mb, qb) in &other.0 {
                out.add_term(ma.mul(mb), qa * qb);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        SymExpr(self.0.iter().map(|(m, q)| (m.clone(), -q)).collect())
    }

    fn scale(&self, q: &Q) -> Self {
        if q.is_zero() {
            return SymExpr::default();
        }
        SymExpr(self.0.iter().map(|(m, c)| (m.clone(), c * q)).collect())
    }

    fn add_assign(&mut self, other: &Self) {
        for (m, q) in &other.0 {
            self.add_term(m.clone(), q.clone());
        }
    }
}

const GREEK: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa", "lambda",
    "mu", "nu", "xi", "pi", "rho", "sigma", "tau", "phi", "chi", "psi", "omega", "Gamma", "Delta",
    "Theta", "Lambda", "Xi", "Pi", "Sigma", "Phi", "Psi", "Omega",
];

/// `sigma` → `\sigma`, `lambda_xi` → `\lambda_{\xi}`.
fn latex_name(name: &str) -> String {
    let part = |p: &str| if GREEK.contains(&p) { format!("\\{p}") } else { p.to_string() };
    let mut pieces = name.split('_');
    let head = part(pieces.next().unwrap_or(""));
    let rest: Vec<String> = pieces.map(part).collect();
    if rest.is_empty() {
        head
    } else {
        format!("{head}_{{{}}}", rest.join(""))
    }
}

fn derivative_prefix(n: &DerivativeWord, spec: &EquationSpec, latex: bool) -> String {
    let mut out = String::new();
    for (axis, c) in n.entries().enumerate() {
        if c == 0 {
            continue;
        }
        let name = &spec.axis_names[axis];
        if latex {
            let _ = write!(out, "\\partial_{{{name}}}");
            if c > 1 {
                let _ = write!(out, "^{{{c}}}");
            }
        } else {
            if !out.is_empty() {
                out.push(' ');
            }
            let _ = write!(out, "d_{name}");
            if c > 1 {
                let _ = write!(out, "^{c}");
            }
        }
    }
    out
}

fn solution_text(spec: &EquationSpec) -> String {
    spec.solution.trim_start_matches('\\').to_string()
}

pub fn render_atom(a: &Atom, spec: &EquationSpec, latex: bool) -> String {
    match a {
        Atom::Noise(l) => {
            if latex {
                spec.noise(*l).latex.clone()
            } else {
                spec.noise(*l).name.clone()
            }
        }
        Atom::ModelDeriv(n, g) => {
            let d = derivative_prefix(n, spec, latex);
            if latex {
                format!("{d}\\Pi_{{{}}}", spec.latex_mi(g))
            } else if d.is_empty() {
                format!("Pi[{}]", spec.format_mi(g))
            } else {
                format!("{d} Pi[{}]", spec.format_mi(g))
            }
        }
        Atom::PolyBase(i) => {
            if latex {
                format!("(\\cdot-x)_{{{}}}", spec.axis_names[*i])
            } else {
                format!("X_{}", spec.axis_names[*i])
            }
        }
        Atom::Constant(g) => {
            if latex {
                format!("c_{{{}}}", spec.latex_mi(g))
            } else {
                format!("c[{}]", spec.format_mi(g))
            }
        }
        Atom::NonlinDeriv(l, k) => {
            let sym = crate::index::CoordSymbol::Pair(*l, k.clone());
            if latex {
                format!("\\mathsf{{z}}_{{{}}}", spec.latex_mi(&MultiIndex::unit(sym)))
            } else {
                format!("z[{}]", spec.format_symbol(&sym))
            }
        }
        Atom::Func { name, order } => {
            let base = if latex { latex_name(name) } else { name.clone() };
            let marks = match order {
                0 => String::new(),
                1..=3 => "'".repeat(*order as usize),
                k if latex => format!("^{{({k})}}"),
                k => format!("^({k})"),
            };
            let arg = if latex { spec.solution.clone() } else { solution_text(spec) };
            format!("{base}{marks}({arg})")
        }
        Atom::Param(name) => {
            if latex {
                latex_name(name)
            } else {
                name.clone()
            }
        }
        Atom::Jet(n) => {
            let d = derivative_prefix(n, spec, latex);
            let u = if latex { spec.solution.clone() } else { solution_text(spec) };
            if d.is_empty() {
                u
            } else if latex {
                format!("{d}{u}")
            } else {
                format!("{d} {u}")
            }
        }
    }
}

fn needs_parens(a: &Atom) -> bool {
    matches!(a, Atom::ModelDeriv(n, _) | Atom::Jet(n) if !n.is_zero())
}

pub fn render_monomial(m: &Monomial, spec: &EquationSpec, latex: bool) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .map(|(a, e)| {
            let body = render_atom(a, spec, latex);
            match (*e, latex) {
                (1, _) => body,
                (e, true) if needs_parens(a) => format!("({body})^{{{e}}}"),
                (e, true) => format!("{body}^{{{e}}}"),
                (e, false) if needs_parens(a) => format!("({body})^{e}"),
                (e, false) => format!("{body}^{e}"),
            }
        })
        .collect();
    parts.join(if latex { "" } else { " " })
}

fn atom_json(a: &Atom, spec: &EquationSpec) -> Value {
    match a {
        Atom::Noise(l) => json!({"noise": spec.noise(*l).name}),
        Atom::ModelDeriv(n, g) => json!({"model": spec.mi_to_json(g), "deriv": n.to_vec()}),
        Atom::PolyBase(i) => json!({"poly_base": i}),
        Atom::Constant(g) => json!({"constant": spec.mi_to_json(g)}),
        Atom::NonlinDeriv(l, k) => {
            let k: Vec<Value> = k.iter().map(|(n, c)| json!([n.to_vec(), c])).collect();
            json!({"nonlin": {"noise": spec.noise(*l).name, "k": k}})
        }
        Atom::Func { name, order } => json!({"fn": name, "order": order}),
        Atom::Param(name) => json!({"param": name}),
        Atom::Jet(n) => json!({"jet": n.to_vec()}),
    }
}
