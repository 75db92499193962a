//! Graded subalgebras `h_1 + x h_2 + ... + x^{k-2} h_{k-1}` of `L(G_1)`.

use serde::Serialize;

use super::algebra::ChevalleyAlgebra;
use super::subspace::FpSubspace;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedSubalgebra {
    /// `levels[i - 1]` is `h_i` for `1 <= i <= k-1`.
    pub levels: Vec<FpSubspace>,
}

impl GradedSubalgebra {
    /// `L(G_1)` itself for `R = O/pi^k`.
    pub fn full(g: &ChevalleyAlgebra, k: usize) -> Self {
        GradedSubalgebra { levels: (1..k).map(|_| g.whole()).collect() }
    }

    /// `k` of the underlying ring.
    pub fn k(&self) -> usize {
        self.levels.len() + 1
    }

    pub fn dim(&self) -> usize {
        self.levels.iter().map(|l| l.dim()).sum()
    }

    pub fn codim(&self) -> usize {
        self.levels.iter().map(|l| l.codim()).sum()
    }

    /// `[h_i, h_j] <= h_{i+j}` whenever `i + j < k`.
    pub fn is_bracket_compatible(&self, g: &ChevalleyAlgebra) -> bool {
        let k = self.k();
        for i in 1..k {
            for j in i..k - i {
                if !g.bracket_span(&self.levels[i - 1], &self.levels[j - 1]).is_subspace_of(&self.levels[i + j - 1]) {
                    return false;
                }
            }
        }
        true
    }
}

/// `sum_i codim(h_i in ambient_i)`.
pub fn graded_codim(h: &GradedSubalgebra, ambient: &GradedSubalgebra) -> Result<usize> {
    if h.levels.len() != ambient.levels.len() {
        return Err(Error::InvalidInput("graded pieces have different lengths".into()));
    }
    let mut total = 0;
    for (i, (a, b)) in h.levels.iter().zip(&ambient.levels).enumerate() {
        if !a.is_subspace_of(b) {
            return Err(Error::Precondition(format!("level {} is not contained in the ambient level", i + 1)));
        }
        total += b.dim() - a.dim();
    }
    Ok(total)
}
