//! Congruence filtration `G_1 > G_2 > ... > G_k = 1` of `G(O/pi^k)` and the
//! graded Lie algebra of a subgroup.

use indexmap::IndexSet;
use serde::Serialize;

use super::chevalley::{ChevalleyGroup, Representation};
use super::closure::closure;
use super::matrix::Mat;
use crate::error::{Error, Result};
use crate::lie::{ChevalleyAlgebra, FpSubspace, GradedSubalgebra};
use crate::polyarith::{FiniteRing, Poly, ResidueRing};
use crate::rootsys::RootDatum;

pub struct CongruenceFiltration {
    pub ring: ResidueRing,
    pub group: ChevalleyGroup,
    pub lie: ChevalleyAlgebra,
}

impl CongruenceFiltration {
    pub fn new(ring: ResidueRing, datum: RootDatum, rep: Representation) -> Result<Self> {
        let group = ChevalleyGroup::new(datum, rep, &ring)?;
        let lie = ChevalleyAlgebra::over(group.alg.clone(), ring.residue_field());
        Ok(CongruenceFiltration { ring, group, lie })
    }

    pub fn k(&self) -> u32 {
        self.ring.k()
    }

    /// Largest `i` with `g = 1 mod pi^i` (so `k` for the identity).
    pub fn level(&self, g: &[u8]) -> u32 {
        let d = self.group.d();
        let one = self.ring.one();
        g.iter()
            .enumerate()
            .map(|(idx, &x)| {
                let y = if idx / d == idx % d { self.ring.sub(x as u64, one) } else { x as u64 };
                self.ring.valuation(y)
            })
            .min()
            .unwrap_or(self.k())
    }

    /// Membership in `G_i`.
    pub fn contains(&self, i: u32, g: &[u8]) -> bool {
        self.level(g) >= i
    }

    /// `(g - 1) / pi^i mod pi` as a matrix over the residue field.
    pub fn level_matrix(&self, g: &[u8], i: u32) -> Vec<u64> {
        let d = self.group.d();
        let one = self.ring.one();
        g.iter()
            .enumerate()
            .map(|(idx, &x)| {
                let y = if idx / d == idx % d { self.ring.sub(x as u64, one) } else { x as u64 };
                self.ring.level_digit(y, i)
            })
            .collect()
    }

    /// Image of `g` in `G_i / G_{i+1}`, flattened over `F_p`. Type A only.
    pub fn level_vector(&self, g: &[u8], i: u32) -> Result<Vec<u64>> {
        if self.group.rep != Representation::Defining {
            return Err(Error::Unsupported("level vectors need the defining representation".into()));
        }
        let m = self.level_matrix(g, i);
        Ok(self.lie.flatten(&self.group.sl_to_lie(&self.lie.field, &m)))
    }

    /// `L(G_1)` with every level equal to `g(F)`.
    pub fn full_graded(&self) -> GradedSubalgebra {
        GradedSubalgebra::full(&self.lie, self.k() as usize)
    }

    /// `log_p |G_i / G_{i+1}|` predicted by the filtration: `[F:F_p] dim`.
    pub fn level_log_order(&self) -> usize {
        self.lie.fp_dim()
    }
}

/// Every product of two members stays inside.
pub fn is_subgroup(g: &ChevalleyGroup, h: &IndexSet<Mat>) -> bool {
    if !h.contains(&g.m.identity()) {
        return false;
    }
    let items: Vec<&Mat> = h.iter().collect();
    crate::par::find_first(&items, |a| !h.iter().all(|b| h.contains(&g.m.mul(a, b)))).is_none()
}

/// `L(H) = sum_i (H cap G_i) G_{i+1} / G_{i+1}`.
pub fn graded_from_subgroup(h: &IndexSet<Mat>, f: &CongruenceFiltration) -> Result<GradedSubalgebra> {
    if !is_subgroup(&f.group, h) {
        return Err(Error::InvalidInput("not a subgroup".into()));
    }
    let p = f.lie.p();
    let n = f.lie.fp_dim();
    let mut levels = Vec::new();
    for i in 1..f.k() {
        let mut s = FpSubspace::zero(p, n);
        for x in h {
            if f.level(x) >= i {
                s.insert(&f.level_vector(x, i)?);
            }
        }
        levels.push(s);
    }
    Ok(GradedSubalgebra { levels })
}

/// `log_p [G_1 : H cap G_1]` by counting.
pub fn log_index_in_g1(h: &IndexSet<Mat>, f: &CongruenceFiltration) -> Result<usize> {
    let p = f.ring.residue_field().p() as usize;
    let inside = h.iter().filter(|x| f.level(x) >= 1).count();
    let g1_log = f.level_log_order() * (f.k() as usize - 1);
    let mut c = inside;
    let mut e = 0;
    while c > 1 {
        if c % p != 0 {
            return Err(Error::TheoremViolation(format!("|H cap G_1| = {inside} is not a power of {p}")));
        }
        c /= p;
        e += 1;
    }
    Ok(g1_log - e)
}

/// Level `g` of the principal congruence subgroup `G(O, g)`.
#[derive(Clone, Debug)]
pub enum Level {
    Int(u64),
    Poly(Poly),
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceSubgroupSpec {
    pub level: String,
    /// Code of `g mod pi^k`.
    pub code: u64,
    /// `(pi^k, g) = pi^s`.
    pub s: u32,
}

impl CongruenceSubgroupSpec {
    pub fn new(level: &Level, ring: &ResidueRing) -> Result<Self> {
        let (code, name) = match (level, ring) {
            (Level::Int(g), ResidueRing::IntMod { .. }) => {
                if *g == 0 {
                    return Err(Error::InvalidInput("level must be nonzero".into()));
                }
                (ring.from_int((*g % (1 << 62)) as i64), g.to_string())
            }
            (Level::Poly(g), ResidueRing::PolyMod { .. }) => {
                if g.is_zero() {
                    return Err(Error::InvalidInput("level must be nonzero".into()));
                }
                (ring.from_poly(g), g.to_string())
            }
            _ => return Err(Error::InvalidInput("level and ring have different base rings".into())),
        };
        Ok(CongruenceSubgroupSpec { level: name, s: ring.valuation(code), code })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceImageReport {
    pub s: u32,
    pub image_order: usize,
    pub group_order: usize,
    /// Case `s = 0`: the image is all of `G(R)`.
    pub full_image: Option<bool>,
    /// Case `0 < s < k`: levels `i` in `[s, k-1]` whose graded piece
    /// contains `E`.
    pub levels_containing_e: Vec<u32>,
    pub holds: bool,
}

/// Image of `G(O, g)` in `G(O/pi^k)`, generated by `x_alpha(g b)`.
pub fn congruence_image_check(spec: &CongruenceSubgroupSpec, f: &CongruenceFiltration, cap: usize) -> Result<CongruenceImageReport> {
    let g = &f.group;
    let image = closure(&g.m, &g.generators_scaled(spec.code), cap)?;
    let full = closure(&g.m, &g.generators(), cap)?;
    let k = f.k();
    let mut rep = CongruenceImageReport {
        s: spec.s,
        image_order: image.len(),
        group_order: full.len(),
        full_image: None,
        levels_containing_e: Vec::new(),
        holds: true,
    };
    if spec.s == 0 {
        let ok = image.len() == full.len();
        rep.full_image = Some(ok);
        rep.holds = ok;
    } else if spec.s < k {
        let l = graded_from_subgroup(&image, f)?;
        let e = f.lie.e_space();
        for i in spec.s..k {
            if e.is_subspace_of(&l.levels[i as usize - 1]) {
                rep.levels_containing_e.push(i);
            }
        }
        rep.holds = rep.levels_containing_e.len() == (k - spec.s) as usize;
    } else {
        rep.holds = image.len() == 1;
    }
    if !rep.holds {
        return Err(Error::TheoremViolation(format!("congruence image check failed: {:?}", rep)));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::closure::DEFAULT_CAP;
    use crate::rootsys::CartanType;

    fn sl2(ring: ResidueRing) -> CongruenceFiltration {
        CongruenceFiltration::new(ring, RootDatum::new(CartanType::A, 1).unwrap(), Representation::Defining).unwrap()
    }

    #[test]
    fn levels_of_sl2_z4() {
        let f = sl2(ResidueRing::integers(2, 2).unwrap());
        let g = closure(&f.group.m, &f.group.generators(), DEFAULT_CAP).unwrap();
        assert_eq!(g.len(), 48);
        let g1 = g.iter().filter(|x| f.contains(1, x)).count();
        assert_eq!(g1, 8);
        assert_eq!(g.iter().filter(|x| f.contains(2, x)).count(), 1);
    }

    #[test]
    fn first_quotient_abelian_z8() {
        let f = sl2(ResidueRing::integers(2, 3).unwrap());
        let g = closure(&f.group.m, &f.group.generators(), DEFAULT_CAP).unwrap();
        let g1: Vec<&Mat> = g.iter().filter(|x| f.contains(1, x)).collect();
        assert_eq!(g1.len(), 64);
        for a in &g1 {
            for b in &g1 {
                assert!(f.contains(2, &f.group.m.commutator(a, b)));
            }
        }
        // normality of G_1 and G_2
        for x in f.group.generators() {
            for a in &g1 {
                let c = f.group.m.conj(&x, a);
                assert!(f.contains(1, &c));
                assert_eq!(f.level(&c), f.level(a));
            }
        }
    }

    #[test]
    fn graded_pieces() {
        let f = sl2(ResidueRing::integers(2, 2).unwrap());
        let g = closure(&f.group.m, &f.group.generators(), DEFAULT_CAP).unwrap();
        let l = graded_from_subgroup(&g, &f).unwrap();
        assert_eq!(l, f.full_graded());
        assert!(l.is_bracket_compatible(&f.lie));
        let trivial: IndexSet<Mat> = [f.group.m.identity()].into_iter().collect();
        let l = graded_from_subgroup(&trivial, &f).unwrap();
        assert_eq!(l.codim(), 3);
        assert_eq!(log_index_in_g1(&trivial, &f).unwrap(), 3);
        let mut bad = trivial.clone();
        bad.insert(f.group.root_element(0, 1));
        assert!(graded_from_subgroup(&bad, &f).is_err());
    }

    #[test]
    fn congruence_images() {
        let z4 = ResidueRing::integers(2, 2).unwrap();
        let f = sl2(z4.clone());
        let spec = CongruenceSubgroupSpec::new(&Level::Int(3), &z4).unwrap();
        assert_eq!(spec.s, 0);
        let r = congruence_image_check(&spec, &f, DEFAULT_CAP).unwrap();
        assert_eq!(r.image_order, 48);
        let spec = CongruenceSubgroupSpec::new(&Level::Int(2), &z4).unwrap();
        assert_eq!(spec.s, 1);
        let r = congruence_image_check(&spec, &f, DEFAULT_CAP).unwrap();
        assert_eq!(r.levels_containing_e, vec![1]);
        let spec = CongruenceSubgroupSpec::new(&Level::Int(1), &z4).unwrap();
        assert!(congruence_image_check(&spec, &f, DEFAULT_CAP).unwrap().full_image.unwrap());
        let spec = CongruenceSubgroupSpec::new(&Level::Int(8), &z4).unwrap();
        assert_eq!(spec.s, 2);
        assert_eq!(congruence_image_check(&spec, &f, DEFAULT_CAP).unwrap().image_order, 1);
    }

    #[test]
    fn congruence_images_poly() {
        let r = ResidueRing::polys(Poly::t(2), 3).unwrap();
        let f = sl2(r.clone());
        let spec = CongruenceSubgroupSpec::new(&Level::Poly(Poly::new(2, vec![0, 1, 1])), &r).unwrap();
        assert_eq!(spec.s, 1);
        let rep = congruence_image_check(&spec, &f, DEFAULT_CAP).unwrap();
        assert_eq!(rep.levels_containing_e, vec![1, 2]);
    }
}
