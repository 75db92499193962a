//! Witness elements `M_r = x_alpha(L_r)` and certified index lower bounds.

use num_bigint::BigUint;
use serde::Serialize;

use super::congruence::{moduli_int, moduli_poly, CongruenceElement, Modulus};
use crate::error::{Error, Result};
use crate::groups::lemmas::default_rep;
use crate::groups::order::embedding_dim;
use crate::groups::{
    center_order, closure, group_order_mod, minimal_index, normal_closure, ChevalleyGroup, Level, Mat,
};
use crate::polyarith::prime::pow_mod;
use crate::polyarith::search::irreducibles_of_degree;
use crate::polyarith::{lcm_polys_up_to_degree, lcm_up_to, FactoredElement, FiniteRing, Poly, ResidueRing};
use crate::rootsys::{CartanType, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessRing {
    Integers,
    FpT { p: u64 },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactoredL {
    Int(FactoredElement<u64>),
    Poly(FactoredElement<Poly>),
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub label: String,
    #[serde(skip)]
    pub datum: RootDatum,
    pub ring: WitnessRing,
    pub r: u64,
    /// Largest multiplicity of a prime factor of the level.
    pub s: u64,
    pub level: String,
    /// `3 (dim + s)`.
    pub exponent: u64,
    pub l_r: FactoredL,
    /// `x_alpha(L_r)`, or the pair `x_alpha(L_r) x_beta(L_r)`.
    pub roots: Vec<usize>,
    pub description: String,
    /// `log L_r` (over `Z`) or `deg L_r` (over `F_p[t]`).
    pub proxy_length: f64,
}

pub fn factor_int(mut n: u64) -> FactoredElement<u64> {
    let mut f = FactoredElement::new();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            f.insert(p, 1);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        f.insert(n, 1);
    }
    f
}

pub fn factor_poly(g: &Poly) -> FactoredElement<Poly> {
    let mut f = FactoredElement::new();
    let mut rest = g.monic();
    for d in 1..=g.deg0() {
        for h in irreducibles_of_degree(g.p(), d) {
            while !rest.is_zero() && rest.deg0() >= d && h.divides(&rest) {
                rest = rest.div_rem(&h).0;
                f.insert(h.clone(), 1);
            }
        }
    }
    f
}

fn divides<K: Ord + Clone>(a: &FactoredElement<K>, b: &FactoredElement<K>) -> bool {
    a.factors().iter().all(|(k, &e)| b.multiplicity(k) >= e)
}

fn witness_roots(d: &RootDatum, ring: &WitnessRing) -> Result<(Vec<usize>, String)> {
    let name = |a: usize| d.describe(a);
    if d.rank == 2 && matches!(d.kind, CartanType::B | CartanType::C) && *ring == (WitnessRing::FpT { p: 2 }) {
        let pair = if d.kind == CartanType::B {
            let e1 = d.index_of_ambient(&[1, 0]).ok_or_else(|| Error::InvalidInput("missing root".into()))?;
            let e12 = d.index_of_ambient(&[1, 1]).ok_or_else(|| Error::InvalidInput("missing root".into()))?;
            (e1, e12)
        } else {
            (0..d.num_positive())
                .filter(|&a| !d.is_long(a))
                .find_map(|a| {
                    (0..d.num_positive()).find(|&b| d.is_long(b) && d.combo(&[(1, b), (-1, a)]).is_some()).map(|b| (a, b))
                })
                .ok_or_else(|| Error::InvalidInput("no short/long pair".into()))?
        };
        let desc = format!("x_{}(L_r) x_{}(L_r)", name(pair.0), name(pair.1));
        return Ok((vec![pair.0, pair.1], desc));
    }
    let alpha = if d.kind == CartanType::C {
        (0..d.num_positive()).find(|&a| !d.is_long(a)).unwrap()
    } else {
        0
    };
    Ok((vec![alpha], format!("x_{}(L_r)", name(alpha))))
}

/// `L_r = lcm(1..r)^{3(dim+s)}` (or the lcm of all polynomials of degree
/// `<= r`) and `M_r = x_alpha(L_r)`, `alpha` short in type C.
pub fn build_witness(d: &RootDatum, ring: WitnessRing, r: u64, level: &Level) -> Result<Witness> {
    if d.rank < 2 {
        return Err(Error::InvalidInput("witnesses need rank >= 2".into()));
    }
    let (s, level_str, l_r) = match (&ring, level) {
        (WitnessRing::Integers, Level::Int(g)) => {
            if *g == 0 || r < *g {
                return Err(Error::InvalidInput(format!("need 1 <= N <= r, got N = {g}, r = {r}")));
            }
            let gf = factor_int(*g);
            let s = gf.factors().values().copied().max().unwrap_or(0);
            let l = lcm_up_to(r).pow(3 * (d.dim as u64 + s));
            if !divides(&gf, &l) {
                return Err(Error::TheoremViolation("level does not divide L_r".into()));
            }
            (s, g.to_string(), FactoredL::Int(l))
        }
        (WitnessRing::FpT { p }, Level::Poly(g)) => {
            if g.p() != *p || g.is_zero() || r < g.deg0() as u64 {
                return Err(Error::InvalidInput(format!("need a nonzero level over F_{p} of degree <= r")));
            }
            let gf = factor_poly(g);
            let s = gf.factors().values().copied().max().unwrap_or(0);
            let l = lcm_polys_up_to_degree(*p, r as usize).pow(3 * (d.dim as u64 + s));
            if !divides(&gf, &l) {
                return Err(Error::TheoremViolation("level does not divide L_r".into()));
            }
            (s, g.to_string(), FactoredL::Poly(l))
        }
        _ => return Err(Error::InvalidInput("level and ring do not match".into())),
    };
    let (roots, description) = witness_roots(d, &ring)?;
    let proxy_length = match &l_r {
        FactoredL::Int(l) => l.ln(),
        FactoredL::Poly(l) => l.degree() as f64,
    };
    Ok(Witness {
        label: d.label(),
        datum: d.clone(),
        ring,
        r,
        s,
        level: level_str,
        exponent: 3 * (d.dim as u64 + s),
        l_r,
        roots,
        description,
        proxy_length,
    })
}

impl Witness {
    pub fn congruence_element(&self) -> CongruenceElement {
        match (&self.l_r, &self.ring) {
            (FactoredL::Int(l), _) => CongruenceElement::IntRootElement(l.clone()),
            (FactoredL::Poly(l), WitnessRing::FpT { p }) => CongruenceElement::PolyRootElement { p: *p, l: l.clone() },
            _ => unreachable!(),
        }
    }

    /// `v_pi(L_r)`.
    pub fn multiplicity(&self, m: &Modulus) -> u64 {
        match (&self.l_r, m) {
            (FactoredL::Int(l), Modulus::Int { p, .. }) => l.multiplicity(p),
            (FactoredL::Poly(l), Modulus::Poly { f, .. }) => l.multiplicity(f),
            _ => 0,
        }
    }

    /// `M_r mod pi^k` is nontrivial, from the factored data alone.
    pub fn survives(&self, m: &Modulus) -> bool {
        self.multiplicity(m) < m.k() as u64
    }

    /// Residue ring `O/m` and the code of `L_r` in it.
    pub fn reduce(&self, m: &Modulus) -> Result<(ResidueRing, u64)> {
        match (&self.l_r, m) {
            (FactoredL::Int(l), Modulus::Int { p, k }) => {
                let ring = ResidueRing::integers(*p, *k)?;
                let n = p.pow(*k);
                let v = l.factors().iter().fold(1u64 % n, |a, (q, &e)| (a as u128 * pow_mod(*q % n, e, n) as u128 % n as u128) as u64);
                Ok((ring.clone(), ring.from_int(v as i64)))
            }
            (FactoredL::Poly(l), Modulus::Poly { f, k }) => {
                let ring = ResidueRing::polys(f.clone(), *k)?;
                let n = f.pow(*k as u64);
                let v = l.factors().iter().fold(Poly::one(f.p()), |a, (g, &e)| a.mul_mod(&g.pow_mod(e, &n), &n));
                Ok((ring.clone(), ring.from_poly(&v)))
            }
            _ => Err(Error::InvalidInput("modulus over the wrong ring".into())),
        }
    }

    /// `M_r` in `G(O/m)`.
    pub fn element_in(&self, g: &ChevalleyGroup, code: u64) -> Mat {
        self.roots.iter().fold(g.m.identity(), |acc, &a| g.m.mul(&acc, &g.root_element(a, code)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModulusCheck {
    pub moduli: usize,
    pub surviving: usize,
}

/// For every `pi^k` of norm `<= max_norm`: `M_r` reduced in `G(O/pi^k)` is
/// nontrivial iff `v_pi(L_r) < k`.
pub fn witness_modulus_check(w: &Witness, max_norm: u64) -> Result<ModulusCheck> {
    let moduli = match w.ring {
        WitnessRing::Integers => moduli_int(max_norm),
        WitnessRing::FpT { p } => moduli_poly(p, max_norm),
    };
    let mut surviving = 0;
    for m in &moduli {
        let (ring, code) = w.reduce(m)?;
        let g = ChevalleyGroup::new(w.datum.clone(), default_rep(&w.datum), &ring)?;
        let nontrivial = !g.m.is_identity(&w.element_in(&g, code));
        if nontrivial != w.survives(m) {
            return Err(Error::TheoremViolation(format!("witness image mod {} disagrees with the factored data", m.label())));
        }
        surviving += nontrivial as usize;
    }
    Ok(ModulusCheck { moduli: moduli.len(), surviving })
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub description: String,
    pub normal: bool,
    #[serde(serialize_with = "crate::serde_big::as_string")]
    pub index: BigUint,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundReport {
    pub modulus: String,
    /// `m - 1 = v_pi(L_r)`.
    pub m: u64,
    pub case: u8,
    /// `r^a / 2`.
    pub subgroup_bound: f64,
    /// `r^dim / (2d)`.
    pub normal_bound: f64,
    pub rows: Vec<BoundRow>,
    /// Explicit subgroups skipped because `G(O/m)` exceeds the cap.
    pub explicit_skipped: bool,
}

fn big_f64(x: &BigUint) -> f64 {
    x.to_string().parse().unwrap_or(f64::INFINITY)
}

/// Lower bounds on `[G(O/pi^k) : H]` for subgroups `H` missing `M_r`, with
/// trivial level `N = 1`.
///
/// Families: subgroups with proper image mod `pi` (bounded by the minimal
/// index of `G(F_q)`, and for normal ones by `|G(F_q)/Z|`); the congruence
/// kernels `G_j` for `j > v_pi(L_r)`; and, when `G(O/pi^k)` has at most `cap`
/// elements, normal closures of `x_alpha(pi^j)` and the opposite Iwahori
/// subgroup, by explicit closure.
pub fn witness_lower_bound_check(w: &Witness, m: &Modulus, cap: usize) -> Result<LowerBoundReport> {
    if w.level != "1" {
        return Err(Error::Unsupported("lower-bound check with a nontrivial level".into()));
    }
    let mult = w.multiplicity(m);
    let k = m.k() as u64;
    if mult >= k {
        return Err(Error::Precondition(format!("M_r is trivial mod {}", m.label())));
    }
    let d = &w.datum;
    let q = m.residue_order();
    let case = if k == 1 {
        1
    } else if mult == 0 {
        2
    } else {
        3
    };
    let rf = w.r as f64;
    let sub_bound = rf.powi(d.a as i32) / 2.0;
    let norm_bound = rf.powi(d.dim as i32) / (2.0 * embedding_dim(d) as f64);
    let mut rows = Vec::new();
    let mut push = |description: String, normal: bool, index: BigUint| {
        let x = big_f64(&index);
        let holds = x >= sub_bound && (!normal || x >= norm_bound);
        rows.push(BoundRow { description, normal, bound: if normal { norm_bound } else { sub_bound }, holds, index });
    };
    if mult == 0 {
        if let Ok(mi) = minimal_index(d, q) {
            push(format!("proper image mod pi: minimal index of G(F_{q})"), false, mi);
        }
        let quot = group_order_mod(d, q, 1)? / center_order(d, q)?;
        push("normal with proper image mod pi: |G(F_q)/Z|".into(), true, quot);
    }
    let total = group_order_mod(d, q, k as u32)?;
    for j in mult + 1..=k {
        let idx = group_order_mod(d, q, j as u32)?;
        push(format!("congruence kernel G_{j}"), true, idx);
    }
    let explicit_skipped = total > BigUint::from(cap) || q.pow(k as u32) > 256;
    if !explicit_skipped {
        let (ring, code) = w.reduce(m)?;
        let g = ChevalleyGroup::new(d.clone(), default_rep(d), &ring)?;
        let mr = w.element_in(&g, code);
        let gens = g.generators();
        let all = closure(&g.m, &gens, cap)?;
        let pi = ring.uniformizer();
        let mut pij = ring.one();
        for j in 1..k {
            pij = ring.mul(pij, pi);
            let (h, _) = normal_closure(&g.m, &[g.root_element(w.roots[0], pij)], &gens, cap)?;
            if !h.contains(&mr) {
                push(format!("normal closure of x_alpha(pi^{j})"), true, BigUint::from(all.len() / h.len()));
            }
        }
        let basis = ring.additive_basis();
        let mut iw = Vec::new();
        for a in 0..d.num_roots() {
            for &b in &basis {
                let t = if d.is_positive(a) { ring.mul(pi, b) } else { b };
                iw.push(g.root_element(a, t));
            }
        }
        let h = closure(&g.m, &iw, cap)?;
        if !h.contains(&mr) {
            push("opposite Iwahori subgroup".into(), false, BigUint::from(all.len() / h.len()));
        }
    }
    let rep = LowerBoundReport {
        modulus: m.label(),
        m: mult + 1,
        case,
        subgroup_bound: sub_bound,
        normal_bound: norm_bound,
        rows,
        explicit_skipped,
    };
    if let Some(bad) = rep.rows.iter().find(|r| !r.holds) {
        return Err(Error::TheoremViolation(format!("index bound fails for {}: {} < {}", bad.description, bad.index, bad.bound)));
    }
    Ok(rep)
}

/// `|G(F_q)|` for the residue field as a float, for slope fits.
pub fn log_order(d: &RootDatum, q: u64, k: u32) -> Result<f64> {
    Ok(big_f64(&group_order_mod(d, q, k)?).ln())
}
