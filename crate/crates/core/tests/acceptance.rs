use std::collections::HashSet;
use std::time::{Duration, Instant};

use indexmap::IndexSet;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use resfin::detect::{detect, sl2_fpt_elementary, sl2_z_elementary, verify_certificate, GeneratorSet};
use resfin::error::Error;
use resfin::groups::lemmas::minimal_index_by_enumeration;
use resfin::groups::{
    b2_instance, closure, graded_from_subgroup, index_report, log_index_in_g1, perfectness_check, ChevalleyGroup,
    CongruenceFiltration, Mat, Representation, SmallGroup, DEFAULT_CAP,
};
use resfin::harness::{
    build_witness, chebotarev_experiment, constants_table, elementary_worst_case, growth_slope, ideal_table,
    min_detecting_congruence_quotient, stable_constant, worst_case_prime, WitnessRing,
};
use resfin::lie::{check_action_formulas, check_codim_lemma, random_small_codim_pair, ChevalleyAlgebra};
use resfin::polyarith::search::irreducibles_of_degree;
use resfin::polyarith::{count_irreducibles, find_detecting_field, FiniteField, Poly, ResidueRing, YPoly};
use resfin::rootsys::{CartanType, RootDatum};

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn datum(k: CartanType, l: usize) -> RootDatum {
    RootDatum::new(k, l).unwrap()
}

fn field(q: u64) -> FiniteField {
    FiniteField::of_order(q).unwrap()
}

fn c1_constants() -> Outcome {
    let rows = constants_table().unwrap();
    let bad: Vec<&str> = rows.iter().filter(|r| !r.matches()).map(|r| r.family).collect();
    let shown: Vec<String> = rows.iter().map(|r| format!("{}:{}/{}", r.family, r.dim, r.a)).collect();
    ok(rows.len() == 9 && bad.is_empty(), format!("{} mismatches; {}", bad.len(), shown.join(" ")))
}

fn c2_action() -> Outcome {
    let mut bad = Vec::new();
    for (k, l) in [(CartanType::A, 2), (CartanType::C, 2), (CartanType::G, 2)] {
        for q in [2, 3, 4, 5, 8, 9] {
            let g = ChevalleyAlgebra::new(datum(k, l), field(q));
            if !check_action_formulas(&g) {
                bad.push(format!("{k}{l}/F{q} action"));
            }
            if k == CartanType::A {
                let f = field(q);
                let grp = ChevalleyGroup::new(datum(k, l), Representation::Defining, &f).unwrap();
                if !grp.conjugation_matches_action(&f) {
                    bad.push(format!("A2/F{q} conjugation"));
                }
            }
        }
    }
    ok(bad.is_empty(), if bad.is_empty() { "18 algebras, 6 conjugation checks".into() } else { bad.join(", ") })
}

/// Number of monic reducible polynomials of degree `k`, by marking products.
fn reducible_count(q: u64, k: usize) -> usize {
    let mut marked = HashSet::new();
    for i in 1..=k / 2 {
        let small: Vec<Poly> = (0..q.pow(i as u32)).map(|j| Poly::monic_from_index(q, i, j)).collect();
        let large: Vec<Poly> = (0..q.pow((k - i) as u32)).map(|j| Poly::monic_from_index(q, k - i, j)).collect();
        for a in &small {
            for b in &large {
                marked.insert(a.mul(b).to_index());
            }
        }
    }
    marked.len()
}

fn c3_counting() -> Outcome {
    let mut bad = Vec::new();
    for q in [2u64, 3, 5] {
        for k in 1..=6usize {
            let formula = count_irreducibles(q, k as u64).unwrap();
            let total = q.pow(k as u32) as usize;
            let sieve = total - reducible_count(q, k);
            let listed = irreducibles_of_degree(q, k).len();
            if formula != BigUint::from(sieve) || listed != sieve {
                bad.push(format!("q={q} k={k}: {formula} vs {sieve}/{listed}"));
            }
            if BigUint::from(2 * k) * &formula < BigUint::from(total) {
                bad.push(format!("q={q} k={k}: k I < q^k / 2"));
            }
        }
    }
    ok(bad.is_empty(), if bad.is_empty() { "18 (q, k) pairs exact".into() } else { bad.join(", ") })
}

fn c4_detecting_field() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = 0;
    let mut runs = 0;
    for i in 0..1000 {
        let q = if i % 2 == 0 { 2u64 } else { 3 };
        let deg = rng.gen_range(0..=64usize);
        let mut coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..q)).collect();
        coeffs[deg] = rng.gen_range(1..q);
        let f = Poly::new(q, coeffs.clone());
        let n = rng.gen_range(deg.max(1)..=64) as u64;
        runs += 1;
        let good = match find_detecting_field(&f, n) {
            Ok(df) => {
                let fl = &df.field;
                let value = coeffs.iter().rev().fold(0, |acc, &c| fl.add(fl.mul(acc, df.t_image), fl.from_int(c as i64)));
                let size = fl.order();
                2 * n < size && size <= 2 * n * q && value != 0 && value == df.f_image
            }
            Err(_) => false,
        };
        failures += !good as usize;
    }
    ok(failures == 0, format!("{runs} polynomials, {failures} failures"))
}

fn c5_sandwich() -> Outcome {
    let a2 = datum(CartanType::A, 2);
    let mut bad = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let r = index_report(&a2, q).unwrap();
        if r.index != BigUint::from((q.pow(3) - 1) / (q - 1)) || !r.holds() {
            bad.push(format!("q={q}: index {}", r.index));
        }
    }
    let order = |k: CartanType, l: usize, q: u64| {
        let g = ChevalleyGroup::new(datum(k, l), Representation::Defining, &field(q)).unwrap();
        closure(&g.m, &g.generators(), DEFAULT_CAP).unwrap()
    };
    let sl2 = order(CartanType::A, 1, 3).len();
    let sl3 = order(CartanType::A, 2, 2);
    let g = ChevalleyGroup::new(a2.clone(), Representation::Defining, &field(2)).unwrap();
    let by_subgroups = minimal_index_by_enumeration(&SmallGroup::new(&g.m, &sl3).unwrap());
    if sl2 != 24 || sl3.len() != 168 || by_subgroups != 7 {
        bad.push(format!("orders {sl2}, {}, enumerated index {by_subgroups}", sl3.len()));
    }
    ok(bad.is_empty(), if bad.is_empty() { "indices 7, 13, 21, 31; |SL2(3)| = 24, |SL3(2)| = 168".into() } else { bad.join(", ") })
}

fn random_word(rng: &mut ChaCha8Rng, letters: i64, n: usize) -> Vec<i64> {
    let mut w: Vec<i64> = Vec::with_capacity(n);
    while w.len() < n {
        let x = rng.gen_range(1..=letters) * if rng.gen_bool(0.5) { 1 } else { -1 };
        if w.last() != Some(&-x) {
            w.push(x);
        }
    }
    w
}

fn all_words(letters: i64, n: usize) -> Vec<Vec<i64>> {
    let alphabet: Vec<i64> = (1..=letters).chain((1..=letters).map(|i| -i)).collect();
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.iter().flat_map(|w| alphabet.iter().map(move |&a| [w.clone(), vec![a]].concat())).collect();
    }
    out
}

fn c6_size_law() -> Outcome {
    let set = GeneratorSet::from_file(sl2_fpt_elementary(2)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut violations = 0;
    let mut certs = 0;
    let mut replay_failures = 0;
    let mut maxima = Vec::new();
    for n in [4usize, 8, 16, 32, 64] {
        let words = if n == 4 { all_words(4, 4) } else { (0..200).map(|_| random_word(&mut rng, 4, n)).collect() };
        let mut max = 0;
        for w in &words {
            match detect(&set, w) {
                Ok(c) => {
                    certs += 1;
                    max = max.max(c.field_size);
                    if c.field_size > 4 * 2 * 2 * n as u64 {
                        violations += 1;
                    }
                    if !verify_certificate(&set, &c).unwrap_or(false) {
                        replay_failures += 1;
                    }
                }
                Err(Error::NotDetectable(_)) => {}
                Err(_) => replay_failures += 1,
            }
        }
        maxima.push(format!("n={n}: {max} <= {}", 16 * n));
    }
    ok(
        violations == 0 && replay_failures == 0,
        format!("{certs} certificates, {violations} violations, {replay_failures} replay failures; {}", maxima.join(", ")),
    )
}

fn c7_rational() -> Outcome {
    let set = GeneratorSet::from_file(sl2_z_elementary()).unwrap();
    let gens = resfin::harness::elementary_generators();
    let mut ratios = Vec::new();
    let mut notes = Vec::new();
    let mut good = true;
    for n in [8usize, 16, 32] {
        let e = elementary_worst_case(n).unwrap();
        good &= e.exact() && e.witness.len() <= n;
        if n <= 16 {
            good &= worst_case_prime(&gens, n).unwrap().max_prime == e.lower;
        }
        let c = detect(&set, &e.witness).unwrap();
        good &= matches!(c.target, resfin::detect::Target::Prime { p, .. } if p == e.lower);
        ratios.push(e.lower as f64 / n as f64);
        notes.push(format!("n={n}: p={} in [{}, {}]", e.lower, e.lower, e.upper));
    }
    let c = stable_constant(&ratios, 0.2);
    good &= c.is_some();
    let c_text = match c {
        Some((lo, hi)) => format!("C in [{lo:.3}, {hi:.3}]"),
        None => "no C within 20%".into(),
    };
    ok(good, format!("{}; {c_text}", notes.join(", ")))
}

fn c8_chebotarev() -> Outcome {
    let f = YPoly::parse(3, "y^2 - t").unwrap();
    let t = chebotarev_experiment(&f, 2, 1, 1..=8).unwrap();
    let v = t.violations();
    let worst = t.rows.iter().map(|r| (r.observed as f64 - r.predicted).abs() / r.bound).fold(0.0, f64::max);
    ok(t.rows.len() == 8 && v.is_empty(), format!("{} rows, violations {v:?}, max |error|/bound {worst:.3}", t.rows.len()))
}

fn c9_codim_lemma() -> Outcome {
    let g = ChevalleyAlgebra::new(datum(CartanType::A, 2), field(4));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut violations = 0;
    let mut off_range = 0;
    for _ in 0..1000 {
        let (u, v) = random_small_codim_pair(&g, &mut rng);
        let a = rng.gen_range(0..g.datum().num_roots());
        let r = check_codim_lemma(&g, a, &u, &v).unwrap();
        off_range += (r.codim_sum >= r.bound) as usize;
        violations += (r.codim_sum < r.bound && !r.line_in_bracket) as usize;
    }
    ok(violations == 0 && off_range == 0, format!("1000 instances, {violations} violations"))
}

fn c10_ideals() -> Outcome {
    let rows = ideal_table().unwrap();
    let shown: Vec<String> = rows.iter().map(|r| format!("{}/F{}: {:?}", r.label, r.p, r.max_dim)).collect();
    ok(rows.iter().all(|r| r.matches()), shown.join(", "))
}

fn c11_perfectness() -> Outcome {
    let mut good = true;
    let mut notes = Vec::new();
    for (k, l, q) in [(CartanType::A, 1, 4), (CartanType::A, 2, 2), (CartanType::C, 2, 2)] {
        let r = perfectness_check(&datum(k, l), &field(q), DEFAULT_CAP).unwrap();
        good &= r.matches();
        notes.push(format!("{}/F{}: perfect={} (|G|={}, |G'|={})", r.label, q, r.perfect, r.order, r.derived_order));
    }
    good &= !perfectness_check(&datum(CartanType::C, 2), &field(2), DEFAULT_CAP).unwrap().perfect;
    let b2 = b2_instance(DEFAULT_CAP).unwrap();
    good &= b2.holds;
    notes.push(format!("B2 over F2[t]/t^2: |H|={}, holds={}", b2.h_order, b2.holds));
    ok(good, notes.join(", "))
}

fn c12_witness_slopes() -> Outcome {
    let a2 = datum(CartanType::A, 2);
    let mut normal = Vec::new();
    let mut sub = Vec::new();
    for r in 2..=6u64 {
        let w = build_witness(&a2, WitnessRing::FpT { p: 2 }, r, &resfin::groups::Level::Poly(Poly::new(2, vec![1])))
            .unwrap();
        let budget = 1u64 << (r + 1);
        let hit = min_detecting_congruence_quotient(&a2, &w.congruence_element(), budget).unwrap().hit;
        let q = hit.modulus.residue_order() as f64;
        let order: f64 = hit.order.to_string().parse().unwrap();
        normal.push((w.proxy_length, order));
        sub.push((w.proxy_length, q * q + q + 1.0));
    }
    let sn = growth_slope(&normal).unwrap();
    let ss = growth_slope(&sub).unwrap();
    ok(
        (7.0..=9.0).contains(&sn.slope) && (1.5..=2.5).contains(&ss.slope),
        format!("normal slope {:.3} (resid {:.3}), subgroup slope {:.3} (resid {:.3})", sn.slope, sn.residual, ss.slope, ss.residual),
    )
}

fn c13_graded() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    let mut bad = Vec::new();
    let rings = [ResidueRing::integers(2, 3).unwrap(), ResidueRing::polys(Poly::t(2), 3).unwrap()];
    for ring in rings {
        let f = CongruenceFiltration::new(ring, datum(CartanType::A, 1), Representation::Defining).unwrap();
        let all = closure(&f.group.m, &f.group.generators(), DEFAULT_CAP).unwrap();
        let members: Vec<&Mat> = all.iter().collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for _ in 0..1000 {
            if seen.len() == 10 {
                break;
            }
            let k = rng.gen_range(1..=3);
            let gens: Vec<Mat> = (0..k).map(|_| members[rng.gen_range(0..members.len())].clone()).collect();
            let h: IndexSet<Mat> = closure(&f.group.m, &gens, DEFAULT_CAP).unwrap();
            let mut key: Vec<usize> = h.iter().map(|x| all.get_index_of(x).unwrap()).collect();
            key.sort_unstable();
            if !seen.insert(key) {
                continue;
            }
            checked += 1;
            let codim = graded_from_subgroup(&h, &f).unwrap().codim();
            let log_index = log_index_in_g1(&h, &f).unwrap();
            if codim != log_index {
                bad.push(format!("|H|={}: {codim} vs {log_index}", h.len()));
            }
        }
    }
    ok(bad.is_empty() && checked == 20, format!("{checked} distinct subgroups, {} mismatches{}", bad.len(), bad.join(", ")))
}

#[test]
fn acceptance() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, u64); 13] = [
        ("table of (dim, a) for nine families", c1_constants, 1),
        ("adjoint action formulas and SL3 conjugation", c2_action, 10),
        ("irreducible counts and k I_q(k) >= q^k / 2", c3_counting, 10),
        ("detecting fields for 1000 random polynomials", c4_detecting_field, 30),
        ("minimal index sandwich and closure orders", c5_sandwich, 60),
        ("function-field certificate size law and replay", c6_size_law, 300),
        ("rational certificate primes p <= C n", c7_rational, 120),
        ("splitting counts within the density bound", c8_chebotarev, 60),
        ("codimension lemma contrapositive over (A2, F4)", c9_codim_lemma, 120),
        ("invariant ideal spot checks", c10_ideals, 60),
        ("perfectness and the B2 instance", c11_perfectness, 120),
        ("witness slopes for SL3 over F2[t]", c12_witness_slopes, 300),
        ("graded codim equals log index", c13_graded, 120),
    ];
    let mut failed = Vec::new();
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let pass = out.pass && in_time;
        println!(
            "[{}] {:>2}. {name}: {} ({:.2}s / {limit}s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            out.detail,
            elapsed.as_secs_f64()
        );
        if !pass {
            failed.push(i + 1);
        }
    }
    println!("acceptance: {}/13 passed", 13 - failed.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
