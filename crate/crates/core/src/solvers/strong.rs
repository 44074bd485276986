//! Polynomial deciders for the threshold-one case.

use super::PersuasionVerdict;
use crate::error::{Error, Result};
use crate::space::{Observation, PersuasionInstance, WorldSet};

fn require_strong(inst: &PersuasionInstance) -> Result<()> {
    if inst.threshold().is_one() {
        Ok(())
    } else {
        Err(Error::NotStrongInstance(inst.threshold().to_string()))
    }
}

fn full_intersection(inst: &PersuasionInstance) -> WorldSet {
    let space = inst.space();
    space
        .events()
        .iter()
        .fold(space.all_worlds(), |mut acc, e| {
            acc.intersect_with(&e.set);
            acc
        })
}

/// Set-inclusion form of the threshold-one test: the intersection of every
/// event lies inside the goal. Differs from the posterior test only when the
/// part of the intersection outside the goal has zero mass.
pub fn strong_inclusion_holds(inst: &PersuasionInstance) -> bool {
    full_intersection(inst).is_subset(inst.goal())
}

/// Decides a threshold-one instance by checking the observation of every
/// event. Requires the full intersection to carry positive mass.
pub fn strong_persuasion_standard(inst: &PersuasionInstance) -> Result<PersuasionVerdict> {
    require_strong(inst)?;
    let all = Observation::new(0..inst.space().num_events());
    let posterior = match inst.posterior_of_set(&full_intersection(inst)) {
        Ok(p) => p,
        Err(Error::UndefinedPosterior) => {
            return Err(Error::AssumptionViolated(
                "the intersection of all events has zero probability mass".into(),
            ))
        }
        Err(e) => return Err(e),
    };
    let solvable = posterior.is_one();
    Ok(PersuasionVerdict {
        solvable,
        witness: solvable.then_some(all),
        best_posterior: None,
    })
}

/// Decides a threshold-one instance without the positive-mass assumption:
/// for each positive-mass goal world `w` (in index order), tries the
/// observation of all events containing `w`.
pub fn strong_persuasion_general(inst: &PersuasionInstance) -> Result<PersuasionVerdict> {
    require_strong(inst)?;
    let space = inst.space();
    for w in inst.goal().iter() {
        if !space.prob(w).is_positive() {
            continue;
        }
        let containing = Observation::new(
            space
                .events()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.set.contains(w))
                .map(|(i, _)| i),
        );
        if inst.is_solution(&containing) {
            return Ok(PersuasionVerdict {
                solvable: true,
                witness: Some(containing),
                best_posterior: None,
            });
        }
    }
    Ok(PersuasionVerdict {
        solvable: false,
        witness: None,
        best_posterior: None,
    })
}
