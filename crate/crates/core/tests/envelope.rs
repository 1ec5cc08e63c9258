use mindex::deriv::{DerivationAlgebra, Flavor, Generator};
use mindex::envelope::{Envelope, GLIndex};
use mindex::enumerate::{counterterm_set, enumerate_below, PopulationClass};
use mindex::{builtin_spec, CoordSymbol, DerivativeWord, Homogeneity, MultiIndex};

fn labels(spec: &mindex::EquationSpec, max_len: usize) -> Vec<GLIndex> {
    let alg = DerivationAlgebra::new(spec);
    let set = counterterm_set(spec).unwrap();
    let gens = alg.generators(&set, Flavor::Minus);
    let dim = spec.dim;
    let mut out = vec![GLIndex::unit(dim)];
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &gens {
                let y = match g {
                    Generator::Deriv { gamma, n } => x.with_pair((gamma.clone(), *n)),
                    Generator::Shift(i) => {
                        let mut y = x.clone();
                        y.m = y.m.plus_unit(*i);
                        y
                    }
                };
                if !out.contains(&y) && !next.contains(&y) {
                    next.push(y);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn targets(spec: &mindex::EquationSpec) -> Vec<MultiIndex> {
    let mut gammas = enumerate_below(spec, Homogeneity::from_ints(1, 0), PopulationClass::Nbar).unwrap();
    for n in spec.words_below(Homogeneity::from_ints(2, 0)) {
        gammas.push(MultiIndex::unit(CoordSymbol::Poly(n)));
    }
    gammas
}

#[test]
fn recursion_matches_normal_ordering() {
    for name in ["gkpz", "she_mult_1d", "phi4_3"] {
        let s = builtin_spec(name).unwrap();
        let env = Envelope::new(&s);
        let xs = labels(&s, 2);
        let gammas = targets(&s);
        let mut checked = 0;
        for x in xs.iter().step_by(3) {
            for g in gammas.iter().step_by(2) {
                let fast = env.action_column(x, g);
                let slow = env.action_column_normal_ordered(x, g);
                assert_eq!(*fast, slow, "{name} {x:?} on {}", s.format_mi(g));
                checked += 1;
            }
        }
        assert!(checked > 50);
    }
}

#[test]
fn product_is_compatible_with_action() {
    for name in ["gkpz", "she_mult_1d"] {
        let s = builtin_spec(name).unwrap();
        let env = Envelope::new(&s);
        let xs = labels(&s, 1);
        let gammas = targets(&s);
        for a in &xs {
            for b in xs.iter().step_by(2) {
                let p = env.gl_product(a, b, 4).unwrap();
                for g in gammas.iter().step_by(3) {
                    assert_eq!(env.combo_column(&p, g), env.composed_column(a, b, g), "{name} {a:?} {b:?}");
                }
            }
        }
    }
}

#[test]
fn rank_one_component_of_product() {
    let s = builtin_spec("gkpz").unwrap();
    let env = Envelope::new(&s);
    let xs = labels(&s, 1);
    for a in &xs {
        for b in &xs {
            let p = env.gl_product(a, b, 4).unwrap();
            for (y, q) in &p {
                if y.len() == 1 && y.m.is_zero() {
                    let key = y.pairs()[0].0.clone();
                    assert_eq!(&env.rank_one_product_coeff(a, b, &key), q);
                }
            }
        }
    }
    let _ = DerivativeWord::zero(2);
}
