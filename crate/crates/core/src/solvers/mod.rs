//! Deciders for Persuasion, Strong Persuasion and Exact Cover.

mod brute;
mod dlx;
mod strong;

pub use brute::{brute_force_persuasion, exact_cover_brute};
pub use dlx::{exact_cover_dlx, exact_cover_dlx_count};
pub use strong::{strong_inclusion_holds, strong_persuasion_general, strong_persuasion_standard};

use crate::rational::Rational;
use crate::space::Observation;

/// Outcome of a persuasion decider.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersuasionVerdict {
    pub solvable: bool,
    /// Present iff `solvable`; always satisfies `is_solution`.
    pub witness: Option<Observation>,
    /// Largest defined posterior over all observations. Only the exhaustive
    /// decider fills this in; it is `None` when every intersection has zero
    /// mass.
    pub best_posterior: Option<Rational>,
}

/// Outcome of an exact cover decider.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverVerdict {
    pub solvable: bool,
    /// 0-based subset indices in increasing order.
    pub witness: Option<Vec<usize>>,
    /// Number of exact covers, when the decider counted them.
    pub solution_count: Option<u64>,
}

/// Witness order on masks: fewer bits first, then lexicographic on the
/// ascending index lists. With equal popcounts the first differing index
/// is the lowest bit of `a ^ b`, and the mask holding it is smaller.
pub(crate) fn witness_less(a: u64, b: u64) -> bool {
    let (pa, pb) = (a.count_ones(), b.count_ones());
    if pa != pb {
        return pa < pb;
    }
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

pub(crate) fn min_witness(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if witness_less(y, x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

pub(crate) fn mask_indices(mask: u64) -> Vec<usize> {
    Observation::from_mask(mask).indices().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_order_matches_sorted_index_lists() {
        for a in 0..64u64 {
            for b in 0..64u64 {
                let ka = (a.count_ones(), mask_indices(a));
                let kb = (b.count_ones(), mask_indices(b));
                assert_eq!(witness_less(a, b), ka < kb, "{a:b} vs {b:b}");
            }
        }
    }
}
