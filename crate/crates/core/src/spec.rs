//! The declarative equation specification and its JSON document form.

use std::fmt::Write as _;

use num_rational::Rational64;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hom::{parse_rational, Homogeneity};
use crate::index::{CoordSymbol, DerivativeWord, KWord, Label, MultiIndex, MAX_DIM};
use crate::nonlin::Nonlinearity;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Noise {
    pub name: String,
    pub latex: String,
    pub is_unit: bool,
    pub alpha: Homogeneity,
    pub reg: Homogeneity,
    pub nonlinearity: Option<Nonlinearity>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Symmetry {
    #[serde(default)]
    pub noise_parity_even: bool,
    #[serde(default)]
    pub reflect_axes: Vec<usize>,
}

/// A validated semi-linear equation `L u = Σ_l a^l(u, ∂u) ξ_l`.
///
/// Noises are kept sorted by name so that [`Label`] order is name order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSpec {
    pub name: String,
    pub dim: usize,
    pub scaling: Vec<Rational64>,
    pub eta: Homogeneity,
    pub noises: Vec<Noise>,
    pub regsol: Homogeneity,
    pub restrict_low_poly: bool,
    pub symmetry: Symmetry,
    /// Axes a spatial reflection may act on.
    pub space_axes: Vec<usize>,
    pub axis_names: Vec<String>,
    pub operator: String,
    pub solution: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseDocument {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub latex: Option<String>,
    #[serde(default)]
    pub unit: bool,
    pub alpha: Homogeneity,
    pub reg: Homogeneity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonlinearity: Option<Nonlinearity>,
}

/// JSON mirror of [`EquationSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    #[serde(default = "default_name")]
    pub name: String,
    pub d: usize,
    pub scaling: Vec<String>,
    pub eta: Homogeneity,
    pub noises: Vec<NoiseDocument>,
    pub regsol: Homogeneity,
    #[serde(default)]
    pub restrict_low_poly: bool,
    #[serde(default)]
    pub symmetry: Symmetry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space_axes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis_names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<String>,
}

fn default_name() -> String {
    "custom".to_string()
}

fn invalid(rule: &'static str, detail: impl Into<String>) -> Error {
    Error::Validation { rule, detail: detail.into() }
}

fn latex_for(name: &str) -> String {
    const GREEK: &[&str] = &[
        "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa",
        "lambda", "mu", "nu", "xi", "pi", "rho", "sigma", "tau", "phi", "chi", "psi", "omega",
    ];
    if GREEK.contains(&name) {
        format!("\\{name}")
    } else {
        name.to_string()
    }
}

pub fn parse_spec_json(text: &str) -> Result<EquationSpec> {
    let doc: SpecDocument = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    parse_spec(&doc)
}

pub fn parse_spec(doc: &SpecDocument) -> Result<EquationSpec> {
    let dim = doc.d;
    if dim == 0 || dim > MAX_DIM {
        return Err(invalid("scaling", format!("d = {dim} must lie in 1..={MAX_DIM}")));
    }
    if doc.scaling.len() != dim {
        return Err(invalid("scaling", format!("{} scaling entries for d = {dim}", doc.scaling.len())));
    }
    let mut scaling = Vec::with_capacity(dim);
    for s in &doc.scaling {
        let v = parse_rational(s).ok_or_else(|| Error::Schema(format!("bad scaling entry `{s}`")))?;
        if v < Rational64::one() {
            return Err(invalid("scaling", format!("scaling entry {v} is below 1")));
        }
        scaling.push(v);
    }
    if !doc.eta.is_positive() {
        return Err(invalid("eta", format!("operator order {} must be positive", doc.eta)));
    }
    if doc.noises.is_empty() || doc.noises.len() > u8::MAX as usize {
        return Err(invalid("names", "between 1 and 255 noises are required"));
    }
    let mut noises: Vec<Noise> = doc
        .noises
        .iter()
        .map(|n| Noise {
            name: n.name.clone(),
            latex: n.latex.clone().unwrap_or_else(|| latex_for(&n.name)),
            is_unit: n.unit,
            alpha: n.alpha,
            reg: n.reg,
            nonlinearity: n.nonlinearity.clone(),
        })
        .collect();
    noises.sort_by(|a, b| a.name.cmp(&b.name));
    for w in noises.windows(2) {
        if w[0].name == w[1].name {
            return Err(invalid("names", format!("noise name `{}` is repeated", w[0].name)));
        }
    }
    for n in &noises {
        if n.name.is_empty() || !n.name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(invalid("names", format!("noise name `{}` must be alphanumeric", n.name)));
        }
        if let Some(a) = &n.nonlinearity {
            a.check_dims(dim).map_err(Error::Schema)?;
        }
    }
    let units: Vec<&Noise> = noises.iter().filter(|n| n.is_unit).collect();
    if units.len() != 1 {
        return Err(invalid("unit", format!("exactly one unit noise required, found {}", units.len())));
    }
    let unit = units[0];
    if !unit.alpha.is_zero() {
        return Err(invalid("unit", format!("unit noise has alpha {} instead of 0", unit.alpha)));
    }
    if !unit.reg.is_negative() {
        return Err(invalid("unit", format!("unit noise needs reg < 0, got {}", unit.reg)));
    }
    for n in &noises {
        if n.reg >= n.alpha {
            return Err(invalid(
                "sub01",
                format!("reg({}) = {} must be strictly below alpha = {}", n.name, n.reg, n.alpha),
            ));
        }
        if doc.regsol >= doc.eta + n.reg {
            return Err(invalid(
                "sub10",
                format!("regsol = {} must be below eta + reg({}) = {}", doc.regsol, n.name, doc.eta + n.reg),
            ));
        }
    }
    let space_axes = doc.space_axes.clone().unwrap_or_else(|| (1..dim).collect());
    for &a in doc.symmetry.reflect_axes.iter().chain(&space_axes) {
        if a >= dim {
            return Err(invalid("names", format!("axis {a} out of range for d = {dim}")));
        }
    }
    let axis_names = match &doc.axis_names {
        Some(names) if names.len() == dim => names.clone(),
        Some(names) => {
            return Err(invalid("names", format!("{} axis names for d = {dim}", names.len())));
        }
        None => (0..dim).map(|i| format!("x{i}")).collect(),
    };
    Ok(EquationSpec {
        name: doc.name.clone(),
        dim,
        scaling,
        eta: doc.eta,
        noises,
        regsol: doc.regsol,
        restrict_low_poly: doc.restrict_low_poly,
        symmetry: doc.symmetry.clone(),
        space_axes,
        axis_names,
        operator: doc.operator.clone().unwrap_or_else(|| "L".to_string()),
        solution: doc.solution.clone().unwrap_or_else(|| "u".to_string()),
    })
}

impl EquationSpec {
    pub fn render(&self) -> SpecDocument {
        SpecDocument {
            name: self.name.clone(),
            d: self.dim,
            scaling: self.scaling.iter().map(|s| s.to_string()).collect(),
            eta: self.eta,
            noises: self
                .noises
                .iter()
                .map(|n| NoiseDocument {
                    name: n.name.clone(),
                    latex: Some(n.latex.clone()),
                    unit: n.is_unit,
                    alpha: n.alpha,
                    reg: n.reg,
                    nonlinearity: n.nonlinearity.clone(),
                })
                .collect(),
            regsol: self.regsol,
            restrict_low_poly: self.restrict_low_poly,
            symmetry: self.symmetry.clone(),
            space_axes: Some(self.space_axes.clone()),
            axis_names: Some(self.axis_names.clone()),
            operator: Some(self.operator.clone()),
            solution: Some(self.solution.clone()),
        }
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.render()).expect("spec documents always serialize")
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> {
        (0..self.noises.len()).map(|i| Label(i as u8))
    }

    pub fn noise(&self, label: Label) -> &Noise {
        &self.noises[label.0 as usize]
    }

    pub fn unit_label(&self) -> Label {
        self.labels().find(|l| self.noise(*l).is_unit).expect("validated spec has a unit noise")
    }

    pub fn label_by_name(&self, name: &str) -> Option<Label> {
        self.labels().find(|l| self.noise(*l).name == name)
    }

    /// Largest α over all labels, unit included.
    pub fn alpha_max(&self) -> Homogeneity {
        self.noises.iter().map(|n| n.alpha).max().expect("nonempty noise table")
    }

    pub fn zero_word(&self) -> DerivativeWord {
        DerivativeWord::zero(self.dim)
    }

    /// Same spec with the symmetry flags replaced.
    pub fn with_symmetry(&self, spatial: bool, noise_even: bool) -> EquationSpec {
        let mut out = self.clone();
        out.symmetry.reflect_axes = if spatial { self.space_axes.clone() } else { Vec::new() };
        out.symmetry.noise_parity_even = noise_even;
        out
    }
}

pub fn builtin_names() -> &'static [&'static str] {
    &["phi4_3", "she_mult_1d", "gkpz"]
}

pub fn builtin_spec(name: &str) -> Result<EquationSpec> {
    let text = match name {
        "phi4_3" => PHI4_3,
        "she_mult_1d" => SHE_MULT_1D,
        "gkpz" => GKPZ,
        other => return Err(Error::UnknownSpec(other.to_string())),
    };
    parse_spec_json(text)
}

const GKPZ: &str = r#"{
  "name": "gkpz",
  "d": 2,
  "scaling": ["2", "1"],
  "eta": {"base": "2"},
  "noises": [
    {"name": "0", "unit": true,
     "alpha": {"base": "0"}, "reg": {"base": "0", "kappa": "-2"},
     "nonlinearity": {"terms": [
       {"factors": [{"fn": "f"}]},
       {"factors": [{"fn": "g"}, {"jet": [0, 1]}]},
       {"factors": [{"fn": "h"}, {"jet": [0, 1], "pow": 2}]}
     ]}},
    {"name": "xi",
     "alpha": {"base": "-3/2", "kappa": "-1"}, "reg": {"base": "-3/2", "kappa": "-2"},
     "nonlinearity": {"terms": [{"factors": [{"fn": "sigma"}]}]}}
  ],
  "regsol": {"base": "1/2", "kappa": "-3"},
  "restrict_low_poly": true,
  "space_axes": [1],
  "axis_names": ["t", "x"],
  "operator": "(\\partial_t-\\partial_x^2)",
  "solution": "u"
}"#;

const SHE_MULT_1D: &str = r#"{
  "name": "she_mult_1d",
  "d": 2,
  "scaling": ["2", "1"],
  "eta": {"base": "2"},
  "noises": [
    {"name": "0", "unit": true,
     "alpha": {"base": "0"}, "reg": {"base": "0", "kappa": "-2"},
     "nonlinearity": {"terms": []}},
    {"name": "xi",
     "alpha": {"base": "-3/2", "kappa": "-1"}, "reg": {"base": "-3/2", "kappa": "-2"},
     "nonlinearity": {"terms": [{"factors": [{"fn": "sigma"}]}]}}
  ],
  "regsol": {"base": "1/2", "kappa": "-3"},
  "restrict_low_poly": true,
  "space_axes": [1],
  "axis_names": ["t", "x"],
  "operator": "(\\partial_t-\\partial_x^2)",
  "solution": "u"
}"#;

const PHI4_3: &str = r#"{
  "name": "phi4_3",
  "d": 4,
  "scaling": ["2", "1", "1", "1"],
  "eta": {"base": "2"},
  "noises": [
    {"name": "0", "unit": true,
     "alpha": {"base": "0"}, "reg": {"base": "0", "kappa": "-2"},
     "nonlinearity": {"terms": [
       {"factors": [{"param": "lambda_0"}]},
       {"factors": [{"param": "lambda_1"}, {"jet": [0, 0, 0, 0]}]},
       {"factors": [{"param": "lambda_2"}, {"jet": [0, 0, 0, 0], "pow": 2}]},
       {"factors": [{"param": "lambda_3"}, {"jet": [0, 0, 0, 0], "pow": 3}]}
     ]}},
    {"name": "xi",
     "alpha": {"base": "-5/2", "kappa": "-1"}, "reg": {"base": "-5/2", "kappa": "-2"},
     "nonlinearity": {"terms": [{"factors": [{"param": "lambda_xi"}]}]}}
  ],
  "regsol": {"base": "-1/2", "kappa": "-3"},
  "restrict_low_poly": false,
  "space_axes": [1, 2, 3],
  "axis_names": ["t", "x_1", "x_2", "x_3"],
  "operator": "(\\partial_t-\\Delta)",
  "solution": "\\Phi"
}"#;

// ---------------------------------------------------------------------------
// Multi-index notation: `2 xi[] + 0[(0,1)^2] + X(0,1)`.

impl EquationSpec {
    pub fn format_symbol(&self, sym: &CoordSymbol) -> String {
        match sym {
            CoordSymbol::Pair(l, k) => format!("{}{}", self.noise(*l).name, k),
            CoordSymbol::Poly(n) => format!("X{n}"),
        }
    }

    /// Canonical text form; `0` for the empty multi-index.
    pub fn format_mi(&self, beta: &MultiIndex) -> String {
        if beta.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (s, c)) in beta.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            if *c != 1 {
                let _ = write!(out, "{c} ");
            }
            out.push_str(&self.format_symbol(s));
        }
        out
    }

    pub fn parse_mi(&self, text: &str) -> Result<MultiIndex> {
        let mut p = NotationParser { src: text.as_bytes(), pos: 0, spec: self };
        let beta = p.multi_index()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(beta)
    }

    fn latex_word(&self, n: &DerivativeWord) -> String {
        let parts: Vec<String> = n.entries().map(|e| e.to_string()).collect();
        format!("({})", parts.join(","))
    }

    fn latex_kword(&self, k: &KWord) -> String {
        if k.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = k
            .iter()
            .map(|(n, c)| {
                let e = if n.is_zero() { "e_{0}".to_string() } else { format!("e_{{{}}}", self.latex_word(n)) };
                if *c == 1 {
                    e
                } else {
                    format!("{c}{e}")
                }
            })
            .collect();
        parts.join("+")
    }

    /// Renders β as a sum of unit vectors, e.g. `2e_{(\xi,0)}+e_{(0,2e_{(0,1)})}`.
    pub fn latex_mi(&self, beta: &MultiIndex) -> String {
        if beta.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = beta
            .iter()
            .map(|(s, c)| {
                let e = match s {
                    CoordSymbol::Pair(l, k) => {
                        format!("e_{{({},{})}}", self.noise(*l).latex, self.latex_kword(k))
                    }
                    CoordSymbol::Poly(n) => format!("e_{{{}}}", self.latex_word(n)),
                };
                if *c == 1 {
                    e
                } else {
                    format!("{c}{e}")
                }
            })
            .collect();
        parts.join("+")
    }

    pub fn mi_to_json(&self, beta: &MultiIndex) -> serde_json::Value {
        use serde_json::json;
        let entries: Vec<serde_json::Value> = beta
            .iter()
            .map(|(s, c)| {
                let sym = match s {
                    CoordSymbol::Pair(l, k) => {
                        let k: Vec<serde_json::Value> =
                            k.iter().map(|(n, kc)| json!([n.to_vec(), kc])).collect();
                        json!({"pair": {"noise": self.noise(*l).name, "k": k}})
                    }
                    CoordSymbol::Poly(n) => json!({"poly": n.to_vec()}),
                };
                json!({"sym": sym, "count": c})
            })
            .collect();
        serde_json::Value::Array(entries)
    }

    pub fn mi_from_json(&self, value: &serde_json::Value) -> Result<MultiIndex> {
        let bad = |what: &str| Error::Schema(format!("multi-index JSON: {what}"));
        let arr = value.as_array().ok_or_else(|| bad("expected an array"))?;
        let mut beta = MultiIndex::zero();
        for entry in arr {
            let count = entry
                .get("count")
                .and_then(|c| c.as_u64())
                .ok_or_else(|| bad("missing count"))? as u32;
            let sym = entry.get("sym").ok_or_else(|| bad("missing sym"))?;
            let s = if let Some(pair) = sym.get("pair") {
                let name = pair.get("noise").and_then(|n| n.as_str()).ok_or_else(|| bad("missing noise"))?;
                let label = self.label_by_name(name).ok_or_else(|| bad("unknown noise"))?;
                let mut k = KWord::empty();
                for item in pair.get("k").and_then(|k| k.as_array()).ok_or_else(|| bad("missing k"))? {
                    let n = self.word_from_json(&item[0]).ok_or_else(|| bad("bad word in k"))?;
                    let kc = item[1].as_u64().ok_or_else(|| bad("bad count in k"))? as u32;
                    k.add_count(n, kc);
                }
                CoordSymbol::Pair(label, k)
            } else if let Some(poly) = sym.get("poly") {
                CoordSymbol::Poly(self.word_from_json(poly).ok_or_else(|| bad("bad poly word"))?)
            } else {
                return Err(bad("sym must be pair or poly"));
            };
            beta.add_count(s, count);
        }
        Ok(beta)
    }

    fn word_from_json(&self, value: &serde_json::Value) -> Option<DerivativeWord> {
        let entries: Vec<u32> =
            value.as_array()?.iter().map(|e| e.as_u64().map(|x| x as u32)).collect::<Option<_>>()?;
        (entries.len() == self.dim).then(|| DerivativeWord::from_slice(&entries))
    }
}

struct NotationParser<'a> {
    src: &'a [u8],
    pos: usize,
    spec: &'a EquationSpec,
}

impl NotationParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at byte {} of `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("expected a number"))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn word(&mut self) -> Result<DerivativeWord> {
        self.expect(b'(')?;
        let mut entries = vec![self.number()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            entries.push(self.number()?);
        }
        self.expect(b')')?;
        if entries.len() != self.spec.dim {
            return Err(self.error(&format!("word has {} entries, expected {}", entries.len(), self.spec.dim)));
        }
        Ok(DerivativeWord::from_slice(&entries))
    }

    fn kword(&mut self) -> Result<KWord> {
        self.expect(b'[')?;
        let mut k = KWord::empty();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(k);
        }
        loop {
            let n = self.word()?;
            let c = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.number()?
            } else {
                1
            };
            k.add_count(n, c);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(k);
                }
                _ => return Err(self.error("expected `,` or `]`")),
            }
        }
    }

    fn term(&mut self) -> Result<(CoordSymbol, u32)> {
        let mut count = 1;
        self.skip_ws();
        let save = self.pos;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.number()?;
            if self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
                count = c;
            } else {
                self.pos = save;
            }
        }
        if self.peek() == Some(b'X') && self.src.get(self.pos + 1) == Some(&b'(') {
            self.pos += 1;
            return Ok((CoordSymbol::Poly(self.word()?), count));
        }
        let name = self.ident()?;
        let label = self
            .spec
            .label_by_name(&name)
            .ok_or_else(|| self.error(&format!("unknown noise `{name}`")))?;
        let k = self.kword()?;
        Ok((CoordSymbol::Pair(label, k), count))
    }

    fn multi_index(&mut self) -> Result<MultiIndex> {
        self.skip_ws();
        if &self.src[self.pos..] == b"0" {
            self.pos += 1;
            return Ok(MultiIndex::zero());
        }
        let mut beta = MultiIndex::zero();
        loop {
            let (s, c) = self.term()?;
            beta.add_count(s, c);
            if self.peek() == Some(b'+') {
                self.pos += 1;
            } else {
                return Ok(beta);
            }
        }
    }
}
