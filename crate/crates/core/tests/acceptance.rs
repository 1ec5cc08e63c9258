//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! A failing criterion is tagged `known` only when the observed difference is
//! exactly the analysed discrepancy recorded for it; the binary exits nonzero
//! on any other failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use mindex::check::{run_named, CheckConfig, SuiteReport};
use mindex::enumerate::{counterterm_set, default_weights, filter_symmetric};
use mindex::envelope::Envelope;
use mindex::index::KWord;
use mindex::renorm::*;
use mindex::ring::Ring;
use mindex::symbolic::{Atom, SymExpr};
use mindex::{builtin_spec, DerivativeWord, EquationSpec, MultiIndex, Q};
use num_rational::Rational64;

struct Outcome {
    pass: bool,
    /// Set when the failure is exactly the documented discrepancy.
    known: Option<String>,
    detail: String,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome { pass: true, known: None, detail: detail.into() }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Outcome { pass: false, known: None, detail: detail.into() }
    }

    fn known(detail: impl Into<String>, why: impl Into<String>) -> Self {
        Outcome { pass: false, known: Some(why.into()), detail: detail.into() }
    }

    fn from_checks(checks: &[(&str, bool)]) -> Self {
        let bad: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
        if bad.is_empty() {
            Outcome::pass(format!("{} checks", checks.len()))
        } else {
            Outcome::fail(format!("failed: {}", bad.join(", ")))
        }
    }
}

fn set_of(s: &EquationSpec, items: &[&str]) -> BTreeSet<MultiIndex> {
    items.iter().map(|t| mi(s, t)).collect()
}

fn names(s: &EquationSpec, set: &BTreeSet<MultiIndex>) -> String {
    set.iter().map(|b| s.format_mi(b)).collect::<Vec<_>>().join("; ")
}

fn timed(limit: Option<Duration>, run: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let mut out = run();
    let spent = t.elapsed();
    if let Some(limit) = limit {
        if spent > limit {
            out = Outcome::fail(format!("{} (runtime {:.1?} over {:?})", out.detail, spent, limit));
        }
    }
    (out, spent)
}

const GKPZ_NEG_ONE: &[&str] = &["xi[] + xi[(0,0)]", "2 xi[] + 0[(0,1)^2]"];

const GKPZ_NEG_HALF: &[&str] = &[
    "xi[] + 2 xi[(0,0)]",
    "2 xi[] + xi[(0,0)^2]",
    "2 xi[] + xi[(0,0)] + 0[(0,1)^2]",
    "3 xi[] + 2 0[(0,1)^2]",
    "3 xi[] + 0[(0,0),(0,1)^2]",
];

/// The even, reflection-symmetric part of the `0⁻` row.
const GKPZ_ZERO_EVEN: &[&str] = &[
    "xi[] + 3 xi[(0,0)]",
    "2 xi[] + xi[(0,0)] + xi[(0,0)^2]",
    "2 xi[] + 2 xi[(0,0)] + 0[(0,1)^2]",
    "3 xi[] + xi[(0,0)] + 2 0[(0,1)^2]",
    "3 xi[] + xi[(0,0)] + 0[(0,0),(0,1)^2]",
    "3 xi[] + xi[(0,0)^2] + 0[(0,1)^2]",
    "4 xi[] + 0[(0,0)^2,(0,1)^2]",
    "4 xi[] + 0[(0,1)^2] + 0[(0,0),(0,1)^2]",
];

const GKPZ_ZERO_ODD: &[&str] = &[
    "xi[] + xi[(0,0)] + 0[(0,1)]",
    "2 xi[] + 0[(0,1)] + 0[(0,1)^2]",
    "2 xi[] + 0[(0,0),(0,1)]",
    "xi[] + xi[(0,0)^2] + X(0,1)",
    "xi[] + xi[(0,0)] + 0[(0,1)^2] + X(0,1)",
    "2 xi[] + 0[(0,0),(0,1)^2] + X(0,1)",
    "2 xi[] + 2 0[(0,1)^2] + X(0,1)",
];

const GKPZ_MISPRINT: &str = "2 xi[] + X(0,1)";

/// Members found by the enumerator and by brute force but absent from the table.
const GKPZ_UNPRINTED: &[&str] = &["4 xi[] + 3 0[(0,1)^2]", "3 xi[] + xi[(0,0)^3]", "2 xi[(0,0)] + X(0,1)"];

const ORACLE_LENGTH: u32 = 7;

fn gkpz_table() -> Outcome {
    let s = builtin_spec("gkpz").unwrap();
    let set = counterterm_set(&s).unwrap();
    let row = |h: Rational64| -> BTreeSet<MultiIndex> {
        set.iter().filter(|b| s.homogeneity(b).base == h).cloned().collect()
    };
    let mut zero_printed = set_of(&s, GKPZ_ZERO_EVEN);
    zero_printed.extend(set_of(&s, GKPZ_ZERO_ODD));
    let listed: BTreeSet<MultiIndex> = set.iter().filter(|b| b.length() <= ORACLE_LENGTH).cloned().collect();
    let oracle_agrees = brute_force_counterterms(&s, ORACLE_LENGTH, 4) == listed;
    let misprint = mi(&s, GKPZ_MISPRINT);
    let misprint_rejected = mindex::grading::bracket(&misprint) != 1 && !set.contains(&misprint);
    let neg_one = row(Rational64::from(-1)) == set_of(&s, GKPZ_NEG_ONE);
    let neg_half = row(Rational64::new(-1, 2)) == set_of(&s, GKPZ_NEG_HALF);
    let zero = row(Rational64::from(0));
    let missing: BTreeSet<MultiIndex> = zero_printed.difference(&zero).cloned().collect();
    let extra: BTreeSet<MultiIndex> = zero.difference(&zero_printed).cloned().collect();
    if !(oracle_agrees && neg_one && neg_half && misprint_rejected && missing.is_empty()) {
        return Outcome::fail(format!(
            "oracle agrees: {oracle_agrees}, rows -1: {neg_one}, -1/2: {neg_half}, misprint rejected: {misprint_rejected}, missing: [{}]",
            names(&s, &missing)
        ));
    }
    if extra.is_empty() {
        return Outcome::pass(format!("{} members, misprinted entry fails the bracket test", set.len()));
    }
    let detail = format!(
        "0- row has {} members, 15 printed plus [{}]; brute force to length {ORACLE_LENGTH} agrees",
        zero.len(),
        names(&s, &extra)
    );
    if extra == set_of(&s, GKPZ_UNPRINTED) {
        Outcome::known(detail, "table omits three members that satisfy every defining condition")
    } else {
        Outcome::fail(detail)
    }
}

fn gkpz_functionals(e: &Ex) -> Vec<(&'static str, Q, SymExpr)> {
    let sg = |n| e.f("sigma", n);
    let h = |n| e.f("h", n);
    let one = q(1, 1);
    let half = q(1, 2);
    vec![
        ("xi[] + xi[(0,0)]", one.clone(), prod(&[&sg(0), &sg(1)])),
        ("2 xi[] + 0[(0,1)^2]", one.clone(), prod(&[&Ring::pow(&sg(0), 2), &h(0)])),
        ("xi[] + 3 xi[(0,0)]", one.clone(), prod(&[&sg(0), &Ring::pow(&sg(1), 3)])),
        ("2 xi[] + xi[(0,0)] + xi[(0,0)^2]", half.clone(), prod(&[&Ring::pow(&sg(0), 2), &sg(1), &sg(2)])),
        ("2 xi[] + 2 xi[(0,0)] + 0[(0,1)^2]", one.clone(), prod(&[&Ring::pow(&sg(0), 2), &Ring::pow(&sg(1), 2), &h(0)])),
        ("3 xi[] + xi[(0,0)] + 2 0[(0,1)^2]", one.clone(), prod(&[&Ring::pow(&sg(0), 3), &sg(1), &Ring::pow(&h(0), 2)])),
        ("3 xi[] + xi[(0,0)] + 0[(0,0),(0,1)^2]", one.clone(), prod(&[&Ring::pow(&sg(0), 3), &sg(1), &h(1)])),
        ("3 xi[] + xi[(0,0)^2] + 0[(0,1)^2]", half.clone(), prod(&[&Ring::pow(&sg(0), 3), &sg(2), &h(0)])),
        ("4 xi[] + 0[(0,0)^2,(0,1)^2]", half, prod(&[&Ring::pow(&sg(0), 4), &h(2)])),
        ("4 xi[] + 0[(0,1)^2] + 0[(0,0),(0,1)^2]", one, prod(&[&Ring::pow(&sg(0), 4), &h(0), &h(1)])),
    ]
}

fn gkpz_symmetry() -> Outcome {
    let s = builtin_spec("gkpz").unwrap();
    let e = Ex { s: &s };
    let set = counterterm_set(&s).unwrap();
    let spatial: BTreeSet<MultiIndex> = filter_symmetric(&set, &s.with_symmetry(true, false)).into_iter().collect();
    let even: BTreeSet<MultiIndex> = filter_symmetric(&set, &s.with_symmetry(true, true)).into_iter().collect();
    let mut table2 = set_of(&s, GKPZ_NEG_ONE);
    table2.extend(set_of(&s, GKPZ_NEG_HALF));
    table2.extend(set_of(&s, GKPZ_ZERO_EVEN));
    let mut table3 = set_of(&s, GKPZ_NEG_ONE);
    table3.extend(set_of(&s, GKPZ_ZERO_EVEN));
    let flags = RenormFlags { spatial: true, noise_even: true, merge_redundant: true };
    let eq = renormalized_equation(&s, flags, BUDGET).unwrap();
    let printed_terms_match = gkpz_functionals(&e).iter().all(|(b, coeff, f)| {
        eq.terms.iter().any(|t| t.beta == mi(&s, b) && t.functional == f.scale(coeff) && t.merged.is_empty())
    });
    let constants: BTreeSet<MultiIndex> = eq.terms.iter().map(|t| t.beta.clone()).collect();
    let contains = table2.is_subset(&spatial) && table3.is_subset(&even) && table3.is_subset(&constants);
    if !(contains && printed_terms_match) {
        return Outcome::fail(format!("printed entries reproduced: {contains}, printed terms match: {printed_terms_match}"));
    }
    let extra2: BTreeSet<MultiIndex> = spatial.difference(&table2).cloned().collect();
    let extra3: BTreeSet<MultiIndex> = even.difference(&table3).cloned().collect();
    let extra_c: BTreeSet<MultiIndex> = constants.difference(&table3).cloned().collect();
    if extra2.is_empty() && extra3.is_empty() && extra_c.is_empty() {
        return Outcome::pass("15 / 10 / 10 constants, all terms match");
    }
    let detail = format!(
        "spatial {} (15 printed), even {} (10 printed), constants {}; ten printed terms match, extra [{}]",
        spatial.len(),
        even.len(),
        eq.constant_count(),
        names(&s, &extra_c)
    );
    let even_unprinted: BTreeSet<MultiIndex> = set_of(&s, &GKPZ_UNPRINTED[..2]);
    if extra2 == even_unprinted && extra3 == even_unprinted && extra_c == even_unprinted {
        Outcome::known(detail, "the two even unprinted members of the base table carry over")
    } else {
        Outcome::fail(detail)
    }
}

fn phi4() -> Outcome {
    let s = builtin_spec("phi4_3").unwrap();
    let env = Envelope::new(&s);
    let e = Ex { s: &s };
    let set: BTreeSet<MultiIndex> = counterterm_set(&s).unwrap().into_iter().collect();
    let listed = set_of(
        &s,
        &[
            "0[(0,0,0,0)^2] + 2 xi[]",
            "0[(0,0,0,0)^3] + 3 xi[]",
            "0[(0,0,0,0)^3] + 2 xi[] + X(0,0,0,0)",
            "0[(0,0,0,0)^3] + 2 xi[] + X(0,1,0,0)",
            "0[(0,0,0,0)^3] + 2 xi[] + X(0,0,1,0)",
            "0[(0,0,0,0)^3] + 2 xi[] + X(0,0,0,1)",
            "0[(0,0,0,0)^2] + 0[(0,0,0,0)^3] + 4 xi[]",
            "2 0[(0,0,0,0)^3] + 4 xi[] + X(0,0,0,0)",
            "2 0[(0,0,0,0)^3] + 5 xi[]",
        ],
    );
    let c2 = "0[(0,0,0,0)^2] + 2 xi[]";
    let c3 = "0[(0,0,0,0)^3] + 3 xi[]";
    let c4 = "0[(0,0,0,0)^2] + 0[(0,0,0,0)^3] + 4 xi[]";
    let c5 = "2 0[(0,0,0,0)^3] + 5 xi[]";
    let ids = detect_redundancies(&env, &set.iter().cloned().collect::<Vec<_>>()).unwrap();
    let ids_ok = ids
        == vec![
            Identification { beta: mi(&s, "0[(0,0,0,0)^3] + 2 xi[] + X(0,0,0,0)"), ratio: q(3, 1), target: mi(&s, c2) },
            Identification { beta: mi(&s, "2 0[(0,0,0,0)^3] + 4 xi[] + X(0,0,0,0)"), ratio: q(3, 1), target: mi(&s, c4) },
        ];

    let lxi = e.p("lambda_xi");
    let l3 = e.p("lambda_3");
    let quad = e.p("lambda_2").add(&k(6, l3.mul(&e.u())));
    let even = sum(&[
        prod(&[&e.c(c2), &Ring::pow(&lxi, 2), &quad]),
        prod(&[&e.c(c4), &Ring::pow(&lxi, 4), &l3, &quad]),
    ]);
    let four = sum(&[
        even.clone(),
        prod(&[&e.c(c3), &Ring::pow(&lxi, 3), &l3]),
        prod(&[&e.c(c5), &Ring::pow(&lxi, 5), &Ring::pow(&l3, 2)]),
    ]);
    let flags = RenormFlags { spatial: true, noise_even: false, merge_redundant: true };
    let merged = renormalized_equation(&s, flags, BUDGET).unwrap();
    let parity = renormalized_equation(&s, RenormFlags { noise_even: true, ..flags }, BUDGET).unwrap();

    let (_, constants, _) = reduced_constants(&s, flags, BUDGET).unwrap();
    let rhs = |b: &str| model_rhs(&env, &mi(&s, b), &constants).unwrap();
    let p1 = e.pi("xi[]");
    let phi12 = rhs(c2) == Ring::pow(&p1, 2).add(&e.c(c2));
    let phi13 = rhs(c3) == sum(&[Ring::pow(&p1, 3), e.c(c3), k(3, e.c(c2).mul(&p1))]);
    let phi14 = rhs(c4)
        == sum(&[
            k(2, p1.mul(&e.pi(c3))),
            k(3, Ring::pow(&p1, 2).mul(&e.pi(c2))),
            e.c(c4),
            k(3, e.c(c2).mul(&e.pi(c2))),
        ]);
    let phi15 = rhs(c5)
        == sum(&[k(3, Ring::pow(&p1, 2).mul(&e.pi(c3))), e.c(c5), k(3, e.c(c4).mul(&p1)), k(3, e.c(c2).mul(&e.pi(c3)))]);
    Outcome::from_checks(&[
        ("nine members", set == listed),
        ("ratios 3", ids_ok),
        ("four-constant equation", merged.constant_count() == 4 && merged.counterterm() == four),
        ("two constants under parity", parity.constant_count() == 2 && parity.counterterm() == even),
        ("model equation 2e+e2", phi12),
        ("model equation 3e+e3", phi13),
        ("model equation 4e+e2+e3", phi14),
        ("model equation 5e+2e3", phi15),
    ])
}

/// The eight displayed SHE model equations, as printed.
fn she_printed(e: &Ex) -> Vec<(&'static str, SymExpr)> {
    let e0 = "xi[]";
    let e01 = "xi[] + xi[(0,0)]";
    let e02 = "xi[] + 2 xi[(0,0)]";
    let e03 = "xi[] + 3 xi[(0,0)]";
    let e2 = "2 xi[] + xi[(0,0)^2]";
    let e12 = "2 xi[] + xi[(0,0)] + xi[(0,0)^2]";
    let e3 = "3 xi[] + xi[(0,0)^3]";
    let ex = "xi[] + xi[(0,0)^2] + X(0,1)";
    let e1x = "2 xi[(0,0)] + X(0,1)";
    let p0 = e.pi(e0);
    let xi = e.xi();
    let x = e.x(1);
    vec![
        (e01, p0.mul(&xi).add(&e.c(e01))),
        (e02, sum(&[e.pi(e01).mul(&xi), e.c(e02), p0.mul(&e.c(e01))])),
        (e03, sum(&[e.pi(e02).mul(&xi), e.c(e03), p0.mul(&e.c(e02)), e.pi(e01).mul(&e.c(e01))])),
        (e2, sum(&[Ring::pow(&p0, 2).mul(&xi), e.c(e2), k(2, p0.mul(&e.c(e01)))])),
        (
            e12,
            sum(&[
                k(2, prod(&[&p0, &e.pi(e01), &xi])),
                e.pi(e2).mul(&xi),
                e.c(e12),
                k(2, p0.mul(&e.c(e2))),
                k(4, p0.mul(&e.c(e02))),
                k(2, e.pi(e01).mul(&e.c(e01))),
                k(3, Ring::pow(&p0, 2).mul(&e.c(e01))),
            ]),
        ),
        (e3, sum(&[Ring::pow(&p0, 3).mul(&xi), e.c(e3), k(3, p0.mul(&e.c(e2))), k(3, Ring::pow(&p0, 2).mul(&e.c(e01)))])),
        (ex, sum(&[k(2, prod(&[&p0, &x, &xi])), e.c(ex), k(2, x.mul(&e.c(e01)))])),
        (e1x, sum(&[e.pi("xi[(0,0)] + X(0,1)").mul(&xi), e.c(e1x), x.mul(&e.c(e01))])),
    ]
}

/// A monomial `∂^n Π_γ · … · c_δ` with `n ≠ 0` and `δ` carrying a polynomial coordinate.
fn is_derivative_times_polynomial_constant(m: &mindex::symbolic::Monomial) -> bool {
    let derivative = m.factors().iter().any(|(a, _)| matches!(a, Atom::ModelDeriv(n, _) if !n.is_zero()));
    let constant = m.factors().iter().any(|(a, _)| matches!(a, Atom::Constant(d) if d.poly_count() > 0));
    derivative && constant
}

fn she() -> Outcome {
    let s = builtin_spec("she_mult_1d").unwrap();
    let env = Envelope::new(&s);
    let e = Ex { s: &s };
    let sg = |n| e.f("sigma", n);
    let constants = counterterm_set(&s).unwrap();
    let count_ok = constants.len() == 8;

    let sub: Vec<MultiIndex> =
        ["xi[] + xi[(0,0)]", "xi[] + 3 xi[(0,0)]", "2 xi[] + xi[(0,0)] + xi[(0,0)^2]"].iter().map(|b| mi(&s, b)).collect();
    let sub_eq = renormalized_with_constants(&s, &sub);
    let sub_ct = sum(&[
        prod(&[&e.c("xi[] + xi[(0,0)]"), &sg(1), &sg(0)]),
        prod(&[&e.c("xi[] + 3 xi[(0,0)]"), &Ring::pow(&sg(1), 3), &sg(0)]),
        prod(&[&e.c("2 xi[] + xi[(0,0)] + xi[(0,0)^2]"), &sg(2), &sg(1), &Ring::pow(&sg(0), 2)]).scale(&q(1, 2)),
    ]);
    let sub_models = she_printed(&e)
        .into_iter()
        .filter(|(b, _)| sub.contains(&mi(&s, b)))
        .all(|(b, printed)| {
            let kept = printed.substitute(&|a| match a {
                Atom::Constant(g) if !sub.contains(g) => Some(SymExpr::zero()),
                _ => None,
            });
            model_rhs(&env, &mi(&s, b), &sub).unwrap() == kept
        });
    if !(count_ok && sub_eq.counterterm() == sub_ct && sub_models) {
        return Outcome::fail(format!(
            "eight members: {count_ok}, sub-model equation: {}, sub-model equations: {sub_models}",
            sub_eq.counterterm() == sub_ct
        ));
    }

    let mut differing = Vec::new();
    let mut only_derivative_terms = true;
    for (b, printed) in she_printed(&e) {
        let ours = model_rhs(&env, &mi(&s, b), &constants).unwrap();
        let diff = ours.sub(&printed);
        if !diff.is_zero() {
            only_derivative_terms &= diff.terms().all(|(m, _)| is_derivative_times_polynomial_constant(m));
            differing.push(diff.render_text(&s));
        }
    }
    if differing.is_empty() {
        return Outcome::pass("eight members, eight model equations, three-constant sub-model");
    }
    let detail = format!(
        "{} of 8 model equations carry extra terms: {}; sub-model matches",
        differing.len(),
        differing.join(" | ")
    );
    if only_derivative_terms {
        Outcome::known(detail, "the display drops the d_x Pi terms that the X(0,1) constants feed into other equations")
    } else {
        Outcome::fail(detail)
    }
}

fn subcriticality() -> Outcome {
    let s = builtin_spec("gkpz").unwrap();
    let xi = s.label_by_name("xi").unwrap();
    let unit = s.unit_label();
    let z = DerivativeWord::from_slice(&[0, 0]);
    let x = DerivativeWord::from_slice(&[0, 1]);
    let t = DerivativeWord::from_slice(&[1, 0]);
    let xx = DerivativeWord::from_slice(&[0, 2]);
    let mut wrong = Vec::new();
    for label in [xi, unit] {
        for k0 in 0..=10u32 {
            for j in 0..=3u32 {
                for (extra, c) in [(t, 0u32), (t, 1), (xx, 1)] {
                    let k = KWord::from_counts([(z, k0), (x, j), (extra, c)]);
                    let expected = c == 0 && if label == xi { j == 0 } else { j <= 2 };
                    if s.is_active_pair(label, &k) != expected {
                        wrong.push(format!("({}, {k0},{j},{c})", s.noise(label).name));
                    }
                }
            }
        }
    }
    let rejected = (0..=10).all(|k0| !s.is_subcritical_pair(unit, &KWord::from_counts([(z, k0), (x, 3)])));
    if wrong.is_empty() && rejected {
        Outcome::pass("k0 <= 10, j <= 3, with time and second space derivatives")
    } else {
        Outcome::fail(format!("mismatched pairs [{}], three-gradient pairs rejected: {rejected}", wrong.join(" ")))
    }
}

fn suites(names: &[&str], cfg: CheckConfig) -> Outcome {
    let s = builtin_spec("gkpz").unwrap();
    let reports: Vec<SuiteReport> = run_named(&s, &cfg, names).unwrap();
    let summary: Vec<String> = reports.iter().map(|r| format!("{} {}", r.name, r.cases)).collect();
    let failed: Vec<String> =
        reports.iter().filter(|r| !r.passed()).map(|r| format!("{}: {:?}", r.name, r.failures.first())).collect();
    if failed.is_empty() && reports.len() == names.len() {
        Outcome::pass(format!("cases: {}", summary.join(", ")))
    } else {
        Outcome::fail(failed.join("; "))
    }
}

fn precedence() -> Outcome {
    let s = builtin_spec("gkpz").unwrap();
    let w = default_weights(&s);
    let weights_ok = (w.length, w.noise, w.degree) == (Rational64::new(2, 7), Rational64::new(4, 7), Rational64::new(1, 7));
    if !weights_ok {
        return Outcome::fail(format!("default weights {:?}", (w.length, w.noise, w.degree)));
    }
    suites(&["precedence"], CheckConfig::default())
}

fn oracle() -> Outcome {
    let mut parts = Vec::new();
    for name in ["phi4_3", "she_mult_1d", "gkpz"] {
        let s = builtin_spec(name).unwrap();
        let reports = run_named(&s, &CheckConfig::default(), &["oracle"]).unwrap();
        let r = &reports[0];
        if !r.passed() {
            return Outcome::fail(format!("{name}: {:?}", r.failures));
        }
        parts.push(format!("{name} {}", r.cases));
    }
    Outcome::pass(parts.join(", "))
}

type Criterion = (&'static str, Option<Duration>, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let secs = |n| Some(Duration::from_secs(n));
    let criteria: Vec<Criterion> = vec![
        ("gkpz counterterm table", secs(10), Box::new(gkpz_table)),
        ("gkpz symmetry reductions", secs(10), Box::new(gkpz_symmetry)),
        ("phi4_3 constants, redundancies and model equations", secs(10), Box::new(phi4)),
        ("she constants and model equations", secs(10), Box::new(she)),
        ("gkpz subcritical pairs", None, Box::new(subcriticality)),
        (
            "algebraic property suite",
            secs(60),
            Box::new(|| {
                let names = ["prelie", "jacobi", "gradings", "triangularity", "exponential", "convolution", "inverse", "product"];
                suites(&names, CheckConfig { characters: 100, triples: 50, ..Default::default() })
            }),
        ),
        ("tree fold morphisms", None, Box::new(|| suites(&["trees"], CheckConfig::default()))),
        ("precedence ordering", None, Box::new(precedence)),
        ("model equations against slot filling", None, Box::new(oracle)),
    ];
    let mut unexpected = 0;
    for (i, (title, limit, run)) in criteria.iter().enumerate() {
        let (out, spent) = timed(*limit, run);
        let status = if out.pass { "PASS" } else { "FAIL" };
        println!("{status} [{}] {title} ({:.2?}): {}", i + 1, spent, out.detail);
        match (&out.pass, &out.known) {
            (true, _) => {}
            (false, Some(why)) => println!("     known discrepancy: {why}"),
            (false, None) => unexpected += 1,
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
