use super::monomial::Monomial;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Monomial orders used by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Eliminates the first `k` variables: block degree and grevlex on `x0..x(k-1)`,
    /// then grevlex on the rest.
    BlockElim(usize),
    /// Higher `x0`-degree first, grevlex as tiebreak.
    X0Partial,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.cmp_grevlex(b),
            MonomialOrder::Lex => a.cmp_lex(b),
            MonomialOrder::BlockElim(k) => {
                let n = a.nvars();
                match a.cmp_grevlex_range(b, 0, k) {
                    Ordering::Equal => a.cmp_grevlex_range(b, k, n),
                    o => o,
                }
            }
            MonomialOrder::X0Partial => match a.exp(0).cmp(&b.exp(0)) {
                Ordering::Equal => a.cmp_grevlex(b),
                o => o,
            },
        }
    }
}
