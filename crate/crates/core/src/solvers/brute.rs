use num_bigint::BigInt;

use super::{mask_indices, min_witness, CoverVerdict, PersuasionVerdict};
use crate::cover::ExactCoverInstance;
use crate::error::Result;
use crate::rational::Rational;
use crate::space::{Observation, PersuasionInstance};
use crate::sweep::{sweep, SweepConfig};

#[derive(Default)]
struct PersuasionAcc {
    witness: Option<u64>,
    best: Option<(BigInt, BigInt)>,
}

fn max_ratio(a: Option<(BigInt, BigInt)>, b: Option<(BigInt, BigInt)>) -> Option<(BigInt, BigInt)> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if &y.0 * &x.1 > &x.0 * &y.1 { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Tries all `2^|F|` observations.
///
/// The witness is the least solution by (size, index order), and
/// `best_posterior` is the largest defined posterior seen. The result does
/// not depend on `cfg.workers`.
pub fn brute_force_persuasion(
    inst: &PersuasionInstance,
    cfg: &SweepConfig,
) -> Result<PersuasionVerdict> {
    let tau = inst.threshold();
    let (tau_num, tau_den) = (tau.numer(), tau.denom());
    let acc = sweep(
        inst.space().num_events(),
        cfg,
        PersuasionAcc::default,
        |acc, mask| {
            let Some((num, den)) = inst.scaled_posterior_mask(mask) else {
                return;
            };
            if &num * tau_den >= tau_num * &den {
                acc.witness = min_witness(acc.witness, Some(mask));
            }
            acc.best = max_ratio(acc.best.take(), Some((num, den)));
        },
        |a, b| PersuasionAcc {
            witness: min_witness(a.witness, b.witness),
            best: max_ratio(a.best, b.best),
        },
    )?;
    let best_posterior = acc
        .best
        .map(|(n, d)| Rational::from_big(n, d))
        .transpose()?;
    Ok(PersuasionVerdict {
        solvable: acc.witness.is_some(),
        witness: acc.witness.map(Observation::from_mask),
        best_posterior,
    })
}

#[derive(Default)]
struct CoverAcc {
    witness: Option<u64>,
    count: u64,
}

/// Tries all `2^k` subfamilies; reports the least cover by (size, index
/// order) and the exact number of covers.
pub fn exact_cover_brute(eci: &ExactCoverInstance, cfg: &SweepConfig) -> Result<CoverVerdict> {
    let acc = sweep(
        eci.num_subsets(),
        cfg,
        CoverAcc::default,
        |acc, mask| {
            if eci.verify_mask(mask) {
                acc.count += 1;
                acc.witness = min_witness(acc.witness, Some(mask));
            }
        },
        |a, b| CoverAcc {
            witness: min_witness(a.witness, b.witness),
            count: a.count + b.count,
        },
    )?;
    Ok(CoverVerdict {
        solvable: acc.witness.is_some(),
        witness: acc.witness.map(mask_indices),
        solution_count: Some(acc.count),
    })
}
