use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::polyarith::FiniteField;
use crate::rootsys::{CartanType, RootDatum};

fn alg(k: CartanType, l: usize) -> std::sync::Arc<LieAlgebra> {
    LieAlgebra::new(RootDatum::new(k, l).unwrap())
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn jacobi(g: &LieAlgebra, x: usize, y: usize, z: usize) -> bool {
    let n = g.dim();
    let (x, y, z) = (unit(n, x), unit(n, y), unit(n, z));
    let a = g.bracket(&x, &g.bracket(&y, &z));
    let b = g.bracket(&y, &g.bracket(&z, &x));
    let c = g.bracket(&z, &g.bracket(&x, &y));
    (0..n).all(|i| a[i] + b[i] + c[i] == 0)
}

#[test]
fn jacobi_and_antisymmetry_small_rank() {
    use CartanType::*;
    for (k, l) in [(A, 1), (A, 2), (A, 3), (B, 2), (B, 3), (C, 2), (C, 3), (G, 2)] {
        let g = alg(k, l);
        let n = g.dim();
        for x in 0..n {
            assert!(g.bracket_basis(x, x).is_empty());
            for y in 0..n {
                let xy = g.bracket(&unit(n, x), &unit(n, y));
                let yx = g.bracket(&unit(n, y), &unit(n, x));
                assert!(xy.iter().zip(&yx).all(|(a, b)| a + b == 0));
                for z in 0..n {
                    assert!(jacobi(&g, x, y, z), "{k}{l} {x} {y} {z}");
                }
            }
        }
    }
}

#[test]
fn jacobi_random_large_rank() {
    use CartanType::*;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (k, l) in [(D, 4), (F, 4), (E, 6)] {
        let g = alg(k, l);
        let n = g.dim();
        for _ in 0..10_000 {
            let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            assert!(jacobi(&g, x, y, z), "{k}{l}");
        }
    }
}

#[test]
fn bracket_examples() {
    let g = ChevalleyAlgebra::new(RootDatum::new(CartanType::A, 2).unwrap(), FiniteField::prime(5).unwrap());
    let d = g.datum().clone();
    for a in 0..d.num_roots() {
        let na = d.neg(a);
        assert_eq!(g.bracket(&g.e(a), &g.e(na)).unwrap(), g.h_root(a));
        assert_eq!(g.bracket(&g.h_root(a), &g.e(a)).unwrap(), g.e(a).scale(2));
    }
    let s = g.bracket(&g.e(d.simple(0)), &g.e(d.simple(1))).unwrap();
    let top = d.index_of(&[1, 1]).unwrap();
    assert!(s == g.e(top) || s == g.e(top).neg());
    let other = ChevalleyAlgebra::new(RootDatum::new(CartanType::A, 2).unwrap(), FiniteField::prime(5).unwrap());
    assert!(g.bracket(&g.e(0), &other.e(1)).is_err());
}

#[test]
fn divided_powers() {
    use CartanType::*;
    for (k, l) in [(A, 2), (B, 2), (C, 2), (B, 3), (C, 3), (D, 4), (G, 2), (F, 4)] {
        let g = alg(k, l);
        let n = g.dim();
        let mut cubic = false;
        for a in 0..g.num_roots() {
            for b in 0..n {
                let w = g.divided_power_term(a, 3, &unit(n, b)).unwrap();
                cubic |= w.iter().any(|&x| x != 0);
            }
            let na = g.datum.neg(a);
            let w = g.divided_power_term(a, 2, &unit(n, na)).unwrap();
            assert_eq!(w, {
                let mut v = vec![0; n];
                v[a] = -1;
                v
            });
        }
        assert_eq!(cubic, k == G, "{k}{l}");
    }
    // a length-one string through alpha kills the second power
    let g = alg(A, 2);
    let (a, b) = (g.datum.simple(0), g.datum.simple(1));
    assert!(g.divided_power_term(a, 2, &unit(g.dim(), b)).unwrap().iter().all(|&x| x == 0));
}

#[test]
fn action_special_cases_small() {
    use CartanType::*;
    for (k, l) in [(A, 2), (C, 2), (G, 2)] {
        for q in [2, 3, 4] {
            let g = ChevalleyAlgebra::new(RootDatum::new(k, l).unwrap(), FiniteField::of_order(q).unwrap());
            assert!(check_action_formulas(&g), "{k}{l} q={q}");
        }
    }
}

#[test]
fn one_parameter_law_and_inverse() {
    use CartanType::*;
    for (k, l, q) in [(A, 2, 4), (C, 2, 3), (G, 2, 3), (G, 2, 2)] {
        let g = ChevalleyAlgebra::new(RootDatum::new(k, l).unwrap(), FiniteField::of_order(q).unwrap());
        let f = g.field.clone();
        for a in 0..g.datum().num_roots() {
            for s in f.elements() {
                for t in f.elements() {
                    for b in 0..g.dim() {
                        let v = g.basis(b, 1);
                        let lhs = g.adjoint_action(a, s, &g.adjoint_action(a, t, &v));
                        assert_eq!(lhs, g.adjoint_action(a, f.add(s, t), &v));
                    }
                }
            }
        }
    }
}

#[test]
fn matrix_matches_action() {
    let g = ChevalleyAlgebra::new(RootDatum::new(CartanType::G, 2).unwrap(), FiniteField::of_order(4).unwrap());
    let n = g.dim();
    let m = g.alg.ad_exp_matrix(&g.field, 3, 2);
    for b in 0..n {
        let col: Vec<u64> = (0..n).map(|r| m[r * n + b]).collect();
        assert_eq!(col, g.act_raw(3, 2, &g.basis(b, 1).coords));
    }
}

fn algebra(k: CartanType, l: usize, q: u64) -> ChevalleyAlgebra {
    ChevalleyAlgebra::new(RootDatum::new(k, l).unwrap(), FiniteField::of_order(q).unwrap())
}

#[test]
fn codim_lemma_examples() {
    let g = algebra(CartanType::A, 2, 2);
    let w = g.whole();
    for a in 0..g.datum().num_roots() {
        let r = check_codim_lemma(&g, a, &w, &w).unwrap();
        assert!(r.line_in_bracket && r.codim_sum == 0);
    }
    // E with one root line removed, over F_2: exhaustive over the removed
    // line and alpha
    let e = g.e_space();
    for b in 0..g.datum().num_roots() {
        let others = FpSubspace::coordinate(2, g.fp_dim(), (0..g.datum().num_roots()).filter(|&i| i != b));
        assert_eq!(others.intersect(&e).dim(), e.dim() - 1);
        for a in 0..g.datum().num_roots() {
            let r = check_codim_lemma(&g, a, &others, &others).unwrap();
            assert!(r.holds);
            assert_eq!(r.codim_sum, 2);
        }
    }
    let c2 = algebra(CartanType::C, 2, 2);
    let long = c2.datum().index_of_ambient(&[2, 0]).unwrap();
    assert!(check_codim_lemma(&c2, long, &c2.whole(), &c2.whole()).is_err());
}

#[test]
fn codim_lemma_contrapositive_sample() {
    let g = algebra(CartanType::A, 2, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let (u, v) = random_small_codim_pair(&g, &mut rng);
        let a = rng.gen_range(0..g.datum().num_roots());
        let r = check_codim_lemma(&g, a, &u, &v).unwrap();
        assert!(r.codim_sum < r.bound && r.line_in_bracket);
    }
}

#[test]
fn invariance_examples() {
    let g = algebra(CartanType::A, 2, 3);
    let gens = g.root_generators();
    assert!(g.is_invariant_subspace(&g.whole(), &gens));
    let z = g.center();
    assert_eq!(z.dim(), 1);
    assert!(g.is_invariant_subspace(&z, &gens));
    let line = g.root_line(0);
    assert!(!g.is_invariant_subspace(&line, &gens));
}

#[test]
fn table_two_spot_checks() {
    let a2_3 = classify_invariant_ideals(&algebra(CartanType::A, 2, 3));
    assert_eq!(a2_3.first().map(|r| r.dim), Some(1));
    let c2_2 = classify_invariant_ideals(&algebra(CartanType::C, 2, 2));
    assert_eq!(c2_2.first().map(|r| r.dim), Some(6));
    assert!(classify_invariant_ideals(&algebra(CartanType::A, 2, 2)).is_empty());
    assert!(classify_invariant_ideals(&algebra(CartanType::A, 2, 5)).is_empty());
    assert!(classify_invariant_ideals(&algebra(CartanType::G, 2, 2)).is_empty());
    let g2_3 = classify_invariant_ideals(&algebra(CartanType::G, 2, 3));
    assert_eq!(g2_3.first().map(|r| r.dim), Some(7));
}

#[test]
fn field_span() {
    let g = algebra(CartanType::A, 2, 4);
    let v = FpSubspace::coordinate(2, g.fp_dim(), [0]);
    let s = g.span_over_field(&v);
    assert_eq!(s.dim(), 2);
    assert_eq!(s, g.root_line(0));
    assert_eq!(g.span_over_field(&s), s);
}

#[test]
fn invariant_spans_are_proper_ideals() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (k, l, q) in [(CartanType::C, 2, 4), (CartanType::G, 2, 9), (CartanType::A, 2, 9)] {
        let g = algebra(k, l, q);
        let gens = g.root_generators();
        let ideal = classify_invariant_ideals(&g)[0].space.clone();
        for _ in 0..5 {
            let mut w = vec![0; g.fp_dim()];
            for r in &ideal.rows {
                let c = rng.gen_range(0..g.p());
                for (x, y) in w.iter_mut().zip(r) {
                    *x = (*x + c * y) % g.p();
                }
            }
            let v = g.closure(&FpSubspace::span(g.p(), g.fp_dim(), &[w]), &gens, false);
            if v.dim() == 0 {
                continue;
            }
            let s = check_invariant_span(&g, &v).unwrap();
            assert!(s.is_subspace_of(&ideal));
        }
    }
}

#[test]
fn graded_codim_trivial() {
    let g = algebra(CartanType::A, 1, 2);
    let full = GradedSubalgebra::full(&g, 3);
    assert_eq!(graded_codim(&full, &full).unwrap(), 0);
    assert!(full.is_bracket_compatible(&g));
    let mut h = full.clone();
    h.levels[0] = FpSubspace::zero(2, 3);
    assert_eq!(graded_codim(&h, &full).unwrap(), 3);
    assert!(graded_codim(&full, &h).is_err());
}

#[test]
fn vector_json() {
    let g = algebra(CartanType::A, 2, 4);
    let v = g.e(0).add(&g.basis(g.alg.h(1), 2));
    let s = serde_json::to_string(&v).unwrap();
    assert_eq!(s, r#"{"e(1,0)":"1","h2":"1*t"}"#);
}
