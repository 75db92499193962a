//! Root systems, structure constants and the long-root lemmas.

pub mod constants;
pub mod datum;

pub use constants::{compute_structure_constants, StructureConstants};
pub use datum::{build_root_datum, CartanType, Root, RootDatum};

use crate::error::{Error, Result};

/// For every long `alpha` and every root `gamma`: `gamma - 2 alpha` is a
/// root exactly when `gamma = alpha`.
pub fn verify_long_root_property(d: &RootDatum) -> bool {
    let n = d.num_roots();
    (0..n).filter(|&a| d.is_long(a)).all(|a| (0..n).all(|g| d.combo(&[(1, g), (-2, a)]).is_some() == (g == a)))
}

/// Long roots `alpha, beta` with `alpha + beta` a root and `alpha - beta` not.
///
/// The documented pairs are preferred (`e1-e2, e2-e3` for B and F4 in the
/// ambient coordinates, `alpha_L, 3alpha_S + alpha_L` for G2); otherwise the
/// first qualifying pair in index order. Type C has none.
pub fn find_long_pair(d: &RootDatum) -> Option<(usize, usize)> {
    let ok = |a: usize, b: usize| {
        d.is_long(a) && d.is_long(b) && d.sum(a, b).is_some() && d.combo(&[(1, a), (-1, b)]).is_none()
    };
    let preferred = match d.kind {
        CartanType::B => {
            let l = d.rank;
            let mut e12 = vec![0; l];
            e12[0] = 1;
            e12[1] = -1;
            let mut e23 = vec![0; l];
            e23[1] = 1;
            if l > 2 {
                e23[2] = -1;
            }
            d.index_of_ambient(&e12).zip(d.index_of_ambient(&e23))
        }
        CartanType::F => {
            // doubled coordinates
            d.index_of_ambient(&[2, -2, 0, 0]).zip(d.index_of_ambient(&[0, 2, -2, 0]))
        }
        CartanType::G => {
            let s = d.simple(0);
            let l = d.simple(1);
            d.combo(&[(3, s), (1, l)]).map(|b| (l, b))
        }
        _ => None,
    };
    if let Some((a, b)) = preferred {
        if ok(a, b) {
            return Some((a, b));
        }
    }
    let n = d.num_roots();
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| ok(a, b))
}

/// Outcome of [`find_beta_for_alpha`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaChoice {
    pub beta: usize,
    pub gamma: usize,
    /// Raw `N_{gamma, beta}` was `-1`; the basis vector `e_beta` is to be
    /// replaced by `-e_beta` for the identity `[e_gamma, e_beta] = e_alpha`.
    pub rescaled: bool,
}

/// A root `beta` with `gamma = alpha - beta` a root and `N_{gamma,beta} = 1`.
pub fn find_beta_for_alpha(d: &RootDatum, c: &StructureConstants, alpha: usize) -> Result<BetaChoice> {
    let c_like = d.kind == CartanType::C || (d.kind == CartanType::B && d.rank == 2);
    if c_like && d.is_long(alpha) && !d.is_simply_laced() {
        return Err(Error::Precondition("alpha must be short in type C (and B2)".into()));
    }
    let n = d.num_roots();
    let mut fallback = None;
    for beta in 0..n {
        let Some(gamma) = d.combo(&[(1, alpha), (-1, beta)]) else { continue };
        match c.get(gamma, beta) {
            1 => return Ok(BetaChoice { beta, gamma, rescaled: false }),
            -1 if fallback.is_none() => fallback = Some(BetaChoice { beta, gamma, rescaled: true }),
            _ => {}
        }
    }
    fallback.ok_or_else(|| Error::NotFound(format!("no beta for root {}", d.describe(alpha))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn long_root_property_all_types() {
        use CartanType::*;
        for (k, l) in [(A, 1), (A, 2), (A, 4), (B, 2), (B, 3), (C, 2), (C, 3), (D, 4), (G, 2), (F, 4), (E, 6), (E, 7), (E, 8)] {
            assert!(verify_long_root_property(&RootDatum::new(k, l).unwrap()), "{k}{l}");
        }
    }

    #[test]
    fn long_pairs() {
        let b3 = RootDatum::new(CartanType::B, 3).unwrap();
        let (a, b) = find_long_pair(&b3).unwrap();
        assert_eq!(b3.roots[a].ambient, vec![1, -1, 0]);
        assert_eq!(b3.roots[b].ambient, vec![0, 1, -1]);
        let g2 = RootDatum::new(CartanType::G, 2).unwrap();
        let (a, b) = find_long_pair(&g2).unwrap();
        assert_eq!(a, g2.simple(1));
        assert_eq!(g2.roots[b].coords, vec![3, 1]);
        assert!(find_long_pair(&RootDatum::new(CartanType::C, 2).unwrap()).is_none());
        assert!(find_long_pair(&RootDatum::new(CartanType::C, 3).unwrap()).is_none());
        assert!(find_long_pair(&RootDatum::new(CartanType::F, 4).unwrap()).is_some());
    }

    #[test]
    fn beta_choices() {
        let a2 = RootDatum::new(CartanType::A, 2).unwrap();
        let c = compute_structure_constants(&a2);
        let top = a2.index_of(&[1, 1]).unwrap();
        let ch = find_beta_for_alpha(&a2, &c, top).unwrap();
        assert!(ch.beta == a2.simple(0) || ch.beta == a2.simple(1));
        let c2 = RootDatum::new(CartanType::C, 2).unwrap();
        let cc = compute_structure_constants(&c2);
        let short = c2.index_of_ambient(&[1, 1]).unwrap();
        assert!(find_beta_for_alpha(&c2, &cc, short).is_ok());
        let long = c2.index_of_ambient(&[2, 0]).unwrap();
        assert!(matches!(find_beta_for_alpha(&c2, &cc, long), Err(Error::Precondition(_))));
        let b2 = RootDatum::new(CartanType::B, 2).unwrap();
        let bc = compute_structure_constants(&b2);
        let long = b2.index_of_ambient(&[1, 1]).unwrap();
        assert!(matches!(find_beta_for_alpha(&b2, &bc, long), Err(Error::Precondition(_))));
        for d in [RootDatum::new(CartanType::G, 2).unwrap(), RootDatum::new(CartanType::B, 3).unwrap()] {
            let c = compute_structure_constants(&d);
            for a in 0..d.num_roots() {
                let ch = find_beta_for_alpha(&d, &c, a).unwrap();
                assert_eq!(c.get(ch.gamma, ch.beta).abs(), 1);
            }
        }
    }
}
