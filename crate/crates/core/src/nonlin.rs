//! Optional declared shapes of the nonlinearities `a^l(u, ∂u, ...)`.
//!
//! A nonlinearity is a finite sum of terms, each a rational coefficient times
//! a product of parameters, functions of `u` and powers of jet variables
//! `∂^n u`. It only serves to switch off pairs `(l, k)` whose Taylor
//! coefficient vanishes identically, and to expand counterterms.

use serde::{Deserialize, Serialize};

use crate::index::{DerivativeWord, KWord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Nonlinearity {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    #[serde(default = "one_string")]
    pub coeff: String,
    #[serde(default)]
    pub factors: Vec<Factor>,
}

fn one_string() -> String {
    "1".to_string()
}

fn one() -> u32 {
    1
}

/// One factor of a term; `pow` defaults to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Factor {
    /// An arbitrary smooth function of `u`.
    Func {
        #[serde(rename = "fn")]
        name: String,
        #[serde(default = "one")]
        pow: u32,
    },
    /// A constant parameter.
    Param {
        param: String,
        #[serde(default = "one")]
        pow: u32,
    },
    /// The jet variable `∂^n u`; the zero word is `u` itself.
    Jet {
        jet: Vec<u32>,
        #[serde(default = "one")]
        pow: u32,
    },
}

impl Term {
    fn jet_power(&self, n: &[u32]) -> u32 {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Jet { jet, pow } if jet.as_slice() == n => *pow,
                _ => 0,
            })
            .sum()
    }

    fn has_function(&self) -> bool {
        self.factors.iter().any(|f| matches!(f, Factor::Func { .. }))
    }

    fn survives(&self, k: &KWord, dim: usize) -> bool {
        let zero = DerivativeWord::zero(dim);
        let jets_ok = k
            .iter()
            .filter(|(n, _)| *n != zero)
            .all(|(n, c)| self.jet_power(&n.to_vec()) >= *c);
        let u_ok = self.has_function() || self.jet_power(&zero.to_vec()) >= k.get(&zero);
        jets_ok && u_ok
    }
}

impl Nonlinearity {
    /// Whether `∂^k a` can be nonzero, treating every function as generic.
    pub fn supports(&self, k: &KWord, dim: usize) -> bool {
        self.terms.iter().any(|t| t.survives(k, dim))
    }

    /// Checks jet words against the dimension.
    pub(crate) fn check_dims(&self, dim: usize) -> Result<(), String> {
        for t in &self.terms {
            if crate::hom::parse_rational(&t.coeff).is_none() {
                return Err(format!("bad coefficient `{}`", t.coeff));
            }
            for f in &t.factors {
                if let Factor::Jet { jet, .. } = f {
                    if jet.len() != dim {
                        return Err(format!("jet {:?} has length {} but d = {dim}", jet, jet.len()));
                    }
                }
            }
        }
        Ok(())
    }
}
