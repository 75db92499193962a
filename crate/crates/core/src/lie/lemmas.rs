//! Subspace computations inside `g(F)` and the lemma checks built on them.

use rand::Rng;
use serde::Serialize;

use super::algebra::ChevalleyAlgebra;
use super::subspace::FpSubspace;
use crate::error::{Error, Result};
use crate::polyarith::FiniteRing;
use crate::rootsys::CartanType;

impl ChevalleyAlgebra {
    pub fn p(&self) -> u64 {
        self.field.p()
    }

    /// `F_p`-span of vectors given in field coordinates.
    pub fn fp_span(&self, vecs: &[Vec<u64>]) -> FpSubspace {
        let flat: Vec<Vec<u64>> = vecs.iter().map(|v| self.flatten(v)).collect();
        FpSubspace::span(self.p(), self.fp_dim(), &flat)
    }

    pub fn whole(&self) -> FpSubspace {
        FpSubspace::full(self.p(), self.fp_dim())
    }

    /// `E(F)`, the span of all root vectors.
    pub fn e_space(&self) -> FpSubspace {
        let m = self.degree();
        FpSubspace::coordinate(self.p(), self.fp_dim(), 0..self.alg.num_roots() * m)
    }

    /// The line `F e_alpha` as an `F_p`-space.
    pub fn root_line(&self, alpha: usize) -> FpSubspace {
        let m = self.degree();
        FpSubspace::coordinate(self.p(), self.fp_dim(), alpha * m..(alpha + 1) * m)
    }

    fn act_flat(&self, alpha: usize, t: u64, w: &[u64]) -> Vec<u64> {
        self.flatten(&self.act_raw(alpha, t, &self.unflatten(w)))
    }

    fn bracket_flat(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        self.flatten(&self.bracket_raw(&self.unflatten(u), &self.unflatten(v)))
    }

    /// `F_p`-span of `[u, v]` over bases of `U` and `V`.
    pub fn bracket_span(&self, u: &FpSubspace, v: &FpSubspace) -> FpSubspace {
        let rows: Vec<Vec<u64>> =
            u.rows.iter().flat_map(|a| v.rows.iter().map(move |b| (a, b))).map(|(a, b)| self.bracket_flat(a, b)).collect();
        FpSubspace::span(self.p(), self.fp_dim(), &rows)
    }

    fn power_basis(&self) -> Vec<u64> {
        FiniteRing::additive_basis(&self.field)
    }

    /// Smallest `F`-subspace containing `V`.
    pub fn span_over_field(&self, v: &FpSubspace) -> FpSubspace {
        let mut out = v.clone();
        for &c in self.power_basis().iter().skip(1) {
            for r in &v.rows {
                out.insert(&self.flatten(&self.scale_raw(c, &self.unflatten(r))));
            }
        }
        out
    }

    pub fn is_invariant_subspace(&self, v: &FpSubspace, gens: &[(usize, u64)]) -> bool {
        gens.iter().all(|&(a, t)| v.rows.iter().all(|r| v.contains(&self.act_flat(a, t, r))))
    }

    /// `[g, V] <= V`.
    pub fn is_ideal(&self, v: &FpSubspace) -> bool {
        (0..self.dim()).all(|i| {
            let e = self.flatten(&self.basis(i, 1).coords);
            v.rows.iter().all(|r| v.contains(&self.bracket_flat(&e, r)))
        })
    }

    /// Smallest `F_p`-subspace containing `v` and stable under the listed root
    /// elements; with `ideal`, also under `F`-scaling and brackets.
    pub fn closure(&self, v: &FpSubspace, gens: &[(usize, u64)], ideal: bool) -> FpSubspace {
        let mut out = v.clone();
        let mut queue: Vec<Vec<u64>> = v.rows.clone();
        let scalars = self.power_basis();
        let basis: Vec<Vec<u64>> = (0..self.dim()).map(|i| self.flatten(&self.basis(i, 1).coords)).collect();
        let full = self.fp_dim();
        while let Some(w) = queue.pop() {
            if out.dim() == full {
                break;
            }
            let mut next: Vec<Vec<u64>> = gens.iter().map(|&(a, t)| self.act_flat(a, t, &w)).collect();
            if ideal {
                let wf = self.unflatten(&w);
                next.extend(scalars.iter().skip(1).map(|&c| self.flatten(&self.scale_raw(c, &wf))));
                next.extend(basis.iter().map(|e| self.bracket_flat(e, &w)));
            }
            for x in next {
                let r = out.reduce(&x);
                if out.insert(&x) {
                    queue.push(r);
                }
            }
        }
        out
    }

    /// Centre of `g(F)` over `F_p`.
    pub fn center(&self) -> FpSubspace {
        let fp = self.fp_dim();
        let basis: Vec<Vec<u64>> = (0..self.dim()).map(|i| self.flatten(&self.basis(i, 1).coords)).collect();
        let images: Vec<Vec<u64>> = (0..fp)
            .map(|k| {
                let mut w = vec![0; fp];
                w[k] = 1;
                basis.iter().flat_map(|e| self.bracket_flat(e, &w)).collect()
            })
            .collect();
        FpSubspace::kernel(self.p(), &images)
    }

    fn c_like(&self) -> bool {
        let d = self.datum();
        d.kind == CartanType::C || (d.kind == CartanType::B && d.rank == 2)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CodimReport {
    pub line_in_bracket: bool,
    pub codim_u: usize,
    pub codim_v: usize,
    pub codim_sum: usize,
    /// `2 [F:F_p]`.
    pub bound: usize,
    pub holds: bool,
}

/// If `F e_alpha` is not inside `[U, V]` then the `E`-codimensions of `U` and
/// `V` add up to at least `2 [F:F_p]`.
pub fn check_codim_lemma(g: &ChevalleyAlgebra, alpha: usize, u: &FpSubspace, v: &FpSubspace) -> Result<CodimReport> {
    if g.c_like() && g.datum().is_long(alpha) {
        return Err(Error::Precondition("alpha must be short in type C".into()));
    }
    let e = g.e_space();
    let codim_u = e.dim() - u.intersect(&e).dim();
    let codim_v = e.dim() - v.intersect(&e).dim();
    let line_in_bracket = g.root_line(alpha).is_subspace_of(&g.bracket_span(u, v));
    let bound = 2 * g.degree();
    let holds = line_in_bracket || codim_u + codim_v >= bound;
    let report = CodimReport { line_in_bracket, codim_u, codim_v, codim_sum: codim_u + codim_v, bound, holds };
    if !holds {
        return Err(Error::TheoremViolation(format!("codimension bound fails: {report:?}")));
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealRecord {
    /// Dimension over `F`.
    pub dim: usize,
    pub codim: usize,
    pub description: String,
    pub space: FpSubspace,
}

/// Proper `G(F)`-invariant ideals among the canonical candidates: the centre,
/// the ideals generated by a long root vector, a short root vector and each
/// `h_k`, and their sums with the centre.
pub fn classify_invariant_ideals(g: &ChevalleyAlgebra) -> Vec<IdealRecord> {
    let gens = g.root_generators();
    let d = g.datum();
    let m = g.degree();
    let mut seeds: Vec<(String, usize)> = Vec::new();
    if let Some(a) = (0..d.num_roots()).find(|&a| d.is_long(a)) {
        seeds.push((format!("ideal generated by long {}", g.alg.basis_name(a)), a));
    }
    if let Some(a) = (0..d.num_roots()).find(|&a| !d.is_long(a)) {
        seeds.push((format!("ideal generated by short {}", g.alg.basis_name(a)), a));
    }
    for k in 0..d.rank {
        seeds.push((format!("ideal generated by {}", g.alg.basis_name(g.alg.h(k))), g.alg.h(k)));
    }
    let center = g.center();
    let mut cands = vec![("center".to_string(), center.clone())];
    for (name, i) in seeds {
        let start = g.fp_span(&[g.basis(i, 1).coords]);
        let id = g.closure(&start, &gens, true);
        cands.push((format!("{name} plus center"), g.closure(&id.sum(&center), &gens, true)));
        cands.push((name, id));
    }
    let mut out: Vec<IdealRecord> = Vec::new();
    for (description, space) in cands {
        if space.dim() == 0 || space.codim() == 0 || out.iter().any(|r| r.space == space) {
            continue;
        }
        if g.is_ideal(&space) && g.is_invariant_subspace(&space, &gens) && g.span_over_field(&space) == space {
            out.push(IdealRecord { dim: space.dim() / m, codim: space.codim() / m, description, space });
        }
    }
    out.sort_by(|a, b| b.dim.cmp(&a.dim));
    out
}

/// For a proper invariant `F_p`-subspace `V` with `|F| >= 4`, the `F`-span of
/// `V` is a proper invariant ideal. Returns that span.
pub fn check_invariant_span(g: &ChevalleyAlgebra, v: &FpSubspace) -> Result<FpSubspace> {
    let gens = g.root_generators();
    if g.field.order() < 4 || v.codim() == 0 || !g.is_invariant_subspace(v, &gens) {
        return Err(Error::Precondition("need |F| >= 4 and a proper invariant subspace".into()));
    }
    let s = g.span_over_field(v);
    if s.codim() == 0 || !g.is_ideal(&s) || !g.is_invariant_subspace(&s, &gens) {
        return Err(Error::TheoremViolation("field span of an invariant subspace is not a proper invariant ideal".into()));
    }
    Ok(s)
}
/// The listed instances of the action formula, checked for every root and
/// every `t`.
pub fn check_action_formulas(g: &ChevalleyAlgebra) -> bool {
    let d = g.datum().clone();
    let f = g.field.clone();
    for a in 0..d.num_roots() {
        let na = d.neg(a);
        let ha = g.h_root(a);
        for t in f.elements() {
            let t2 = f.mul(t, t);
            if g.adjoint_action(a, t, &g.e(a)) != g.e(a) {
                return false;
            }
            let want = g.e(na).add(&ha.scale(t)).sub(&g.e(a).scale(t2));
            if g.adjoint_action(a, t, &g.e(na)) != want {
                return false;
            }
            if g.adjoint_action(a, t, &ha) != ha.sub(&g.e(a).scale(f.mul(f.from_int(2), t))) {
                return false;
            }
            for b in 0..d.num_roots() {
                if b == a || b == na {
                    continue;
                }
                let hb = g.h_root(b);
                let c = f.mul(f.from_int(d.pairing(a, b)), t);
                if g.adjoint_action(a, t, &hb) != hb.sub(&g.e(a).scale(c)) {
                    return false;
                }
                // e_beta moves only along the alpha-string above beta
                let w = g.adjoint_action(a, t, &g.e(b)).sub(&g.e(b));
                let q = d.string_up(a, b);
                let allowed: Vec<usize> = (1..=q).filter_map(|i| d.combo(&[(i, a), (1, b)])).collect();
                if w.coords.iter().enumerate().any(|(i, &x)| x != 0 && !allowed.contains(&i)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Random `U`, `V` whose `E`-codimensions add up to less than `2[F:F_p]`:
/// a random subspace of `E` cut out by few functionals plus random extra
/// vectors of `g(F)`.
pub fn random_small_codim_pair<R: Rng>(g: &ChevalleyAlgebra, rng: &mut R) -> (FpSubspace, FpSubspace) {
    let p = g.p();
    let n = g.fp_dim();
    let nr = g.datum().num_roots() * g.degree();
    let budget = 2 * g.degree() - 1;
    let cu = rng.gen_range(0..=budget);
    let cv = rng.gen_range(0..=budget - cu);
    let mut make = |c: usize| {
        let funcs: Vec<Vec<u64>> = (0..c).map(|_| (0..nr).map(|_| rng.gen_range(0..p)).collect()).collect();
        let mut images = Vec::new();
        for i in 0..nr {
            images.push(funcs.iter().map(|f| f[i]).collect::<Vec<u64>>());
        }
        let ker = if c == 0 { FpSubspace::full(p, nr) } else { FpSubspace::kernel(p, &images) };
        let mut s = FpSubspace::zero(p, n);
        for r in &ker.rows {
            let mut w = r.clone();
            w.resize(n, 0);
            s.insert(&w);
        }
        for _ in 0..rng.gen_range(0..3) {
            let w: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            s.insert(&w);
        }
        s
    };
    let u = make(cu);
    let v = make(cv);
    (u, v)
}

