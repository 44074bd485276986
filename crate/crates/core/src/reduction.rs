//! Polynomial reduction from Exact Cover to Persuasion, its back and forward
//! maps, and an exhaustive checker of the properties that make it correct.
//!
//! For an instance with universe `{1..n}`, subsets `A_1..A_k` and
//! `m = Σ|A_i|`, the reduced space has
//!
//! * two sentinel worlds `W0` (in the goal) and `X0` (outside it) that no
//!   event excludes, each with probability `x = 1/3`;
//! * one world `Y_i_l` per membership `l ∈ A_i`, in the goal, with
//!   probability `y = (1 - 2x) / (m (1 + 2n))`;
//! * one world `Z_l` per element, outside the goal, with probability
//!   `z = 2 m y`;
//! * one event `F_i` per subset, excluding exactly `Y_i_l` and `Z_l` for
//!   each `l ∈ A_i`;
//! * threshold `τ = (x + (m - n) y) / (2x + (m - n) y)`.
//!
//! An observation reaches `τ` exactly when its events' subsets form an exact
//! cover.

use std::fmt;

use crate::cover::{verify_cover, ExactCoverInstance};
use crate::error::Result;
use crate::rational::Rational;
use crate::space::{Event, Observation, PersuasionInstance, ProbabilitySpace, WorldSet};
use crate::sweep::{sweep, SweepConfig};

/// What a world of a reduced instance stands for. Subset indices are
/// 0-based; universe elements are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WorldRole {
    W0,
    X0,
    Y { subset: usize, element: usize },
    Z { element: usize },
}

impl WorldRole {
    pub fn label(&self) -> String {
        match *self {
            WorldRole::W0 => "W0".into(),
            WorldRole::X0 => "X0".into(),
            WorldRole::Y { subset, element } => format!("Y_{}_{}", subset + 1, element),
            WorldRole::Z { element } => format!("Z_{element}"),
        }
    }
}

/// The numeric parameters of a reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionParams {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
    pub tau: Rational,
}

impl ReductionParams {
    pub fn for_instance(eci: &ExactCoverInstance) -> Self {
        let n = eci.universe_size();
        let k = eci.num_subsets();
        let m = eci.total_size();
        let int = |v: usize| Rational::from_integer(v as i64);
        let two = int(2);
        let x = Rational::new(1, 3).expect("nonzero denominator");
        let y = (Rational::one() - &two * &x) / (int(m) * (Rational::one() + &two * &int(n)));
        let z = &(&two * &int(m)) * &y;
        let slack = &int(m - n) * &y;
        let tau = (&x + &slack) / (&(&two * &x) + &slack);
        ReductionParams {
            n,
            k,
            m,
            x,
            y,
            z,
            tau,
        }
    }
}

/// The reduced persuasion instance plus the role of every world and event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionArtifact {
    source: ExactCoverInstance,
    instance: PersuasionInstance,
    roles: Vec<WorldRole>,
    event_of_subset: Vec<usize>,
    params: ReductionParams,
}

/// Builds the reduced instance. World order is `W0`, `X0`, the `Y` worlds
/// sorted by (subset, element), then the `Z` worlds sorted by element;
/// event `i` is `F_{i+1}`.
pub fn reduce(eci: &ExactCoverInstance) -> ReductionArtifact {
    let params = ReductionParams::for_instance(eci);
    let mut roles = vec![WorldRole::W0, WorldRole::X0];
    for (subset, s) in eci.subsets().iter().enumerate() {
        roles.extend(
            s.elements()
                .iter()
                .map(|&element| WorldRole::Y { subset, element }),
        );
    }
    roles.extend((1..=params.n).map(|element| WorldRole::Z { element }));
    let width = roles.len();

    let worlds = roles
        .iter()
        .map(|role| {
            let p = match role {
                WorldRole::W0 | WorldRole::X0 => params.x.clone(),
                WorldRole::Y { .. } => params.y.clone(),
                WorldRole::Z { .. } => params.z.clone(),
            };
            (role.label(), p)
        })
        .collect();

    let events = eci
        .subsets()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let excluded = roles
                .iter()
                .enumerate()
                .filter_map(|(w, role)| match *role {
                    WorldRole::Y { subset, .. } if subset == i => Some(w),
                    WorldRole::Z { element } if s.contains(element) => Some(w),
                    _ => None,
                });
            let set = WorldSet::from_indices(width, excluded).complement();
            Event::new(format!("F{}", i + 1), set)
        })
        .collect();

    let goal = WorldSet::from_indices(
        width,
        roles
            .iter()
            .enumerate()
            .filter(|(_, r)| matches!(r, WorldRole::W0 | WorldRole::Y { .. }))
            .map(|(w, _)| w),
    );

    let space = ProbabilitySpace::new(worlds, events)
        .expect("reduced probabilities are in range and sum to one");
    let instance = PersuasionInstance::new(space, goal, params.tau.clone())
        .expect("reduced threshold lies in [0, 1]");
    ReductionArtifact {
        source: eci.clone(),
        instance,
        event_of_subset: (0..params.k).collect(),
        roles,
        params,
    }
}

/// Counts of `Y` and `Z` worlds surviving an observation's intersection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ObservationProfile {
    pub y_count: usize,
    pub z_count: usize,
    pub has_w0: bool,
    pub has_x0: bool,
}

impl ReductionArtifact {
    pub fn source(&self) -> &ExactCoverInstance {
        &self.source
    }

    pub fn instance(&self) -> &PersuasionInstance {
        &self.instance
    }

    pub fn roles(&self) -> &[WorldRole] {
        &self.roles
    }

    pub fn role(&self, world: usize) -> WorldRole {
        self.roles[world]
    }

    /// Event index of `F_i` for 0-based subset `i`.
    pub fn event_of_subset(&self, subset: usize) -> usize {
        self.event_of_subset[subset]
    }

    pub fn params(&self) -> &ReductionParams {
        &self.params
    }

    fn subset_of_event(&self, event: usize) -> usize {
        self.event_of_subset
            .iter()
            .position(|&e| e == event)
            .expect("every event belongs to a subset")
    }

    /// Subsets `A_i` with some membership world `Y_i_l` excluded by some
    /// selected event, evaluated literally over the worlds.
    pub fn back_map_literal(&self, obs: &Observation) -> Result<Vec<usize>> {
        self.instance.space().check_observation(obs)?;
        let events = self.instance.space().events();
        let mut out: Vec<usize> = self
            .roles
            .iter()
            .enumerate()
            .filter_map(|(w, role)| match *role {
                WorldRole::Y { subset, element } => {
                    debug_assert!(self.source.subsets()[subset].contains(element));
                    obs.indices()
                        .iter()
                        .any(|&r| !events[r].set.contains(w))
                        .then_some(subset)
                }
                _ => None,
            })
            .collect();
        out.dedup();
        Ok(out)
    }

    /// Subsets whose event is selected.
    pub fn back_map_selected(&self, obs: &Observation) -> Result<Vec<usize>> {
        self.instance.space().check_observation(obs)?;
        let mut out: Vec<usize> = obs
            .indices()
            .iter()
            .map(|&e| self.subset_of_event(e))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Maps an observation back to a candidate cover (0-based subset
    /// indices). Both formulations are evaluated and must agree.
    pub fn back_map(&self, obs: &Observation) -> Result<Vec<usize>> {
        let literal = self.back_map_literal(obs)?;
        let selected = self.back_map_selected(obs)?;
        assert_eq!(
            literal, selected,
            "back-map formulations disagree on {obs:?}"
        );
        Ok(literal)
    }

    /// The observation selecting `F_i` for every `i` in `chosen`.
    /// Panics on an out-of-range subset index.
    pub fn forward_map(&self, chosen: &[usize]) -> Observation {
        Observation::new(chosen.iter().map(|&i| self.event_of_subset[i]))
    }

    fn profile_of_set(&self, set: &WorldSet) -> ObservationProfile {
        let mut p = ObservationProfile {
            y_count: 0,
            z_count: 0,
            has_w0: false,
            has_x0: false,
        };
        for w in set.iter() {
            match self.roles[w] {
                WorldRole::W0 => p.has_w0 = true,
                WorldRole::X0 => p.has_x0 = true,
                WorldRole::Y { .. } => p.y_count += 1,
                WorldRole::Z { .. } => p.z_count += 1,
            }
        }
        p
    }

    pub fn profile(&self, obs: &Observation) -> Result<ObservationProfile> {
        Ok(self.profile_of_set(&self.instance.space().intersect(obs)?))
    }
}

/// Free-function form of [`ReductionArtifact::back_map`].
pub fn back_map(art: &ReductionArtifact, obs: &Observation) -> Result<Vec<usize>> {
    art.back_map(obs)
}

/// Free-function form of [`ReductionArtifact::forward_map`].
pub fn forward_map(art: &ReductionArtifact, chosen: &[usize]) -> Observation {
    art.forward_map(chosen)
}

/// Free-function form of [`ReductionArtifact::profile`].
pub fn profile(art: &ReductionArtifact, obs: &Observation) -> Result<ObservationProfile> {
    art.profile(obs)
}

/// The properties checked by [`verify_reduction`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// A surviving `Z` world keeps the posterior below `τ`.
    ZWorldsExcluded,
    /// Fewer than `m - n` surviving `Y` worlds keeps the posterior below `τ`.
    YCountLowerBound,
    /// Reaching `τ` leaves exactly `m - n` `Y` worlds.
    YCountExact,
    /// Reaching `τ` back-maps to an exact cover.
    BackMapIsCover,
    /// The reduced instance is solvable iff the cover instance is.
    SolvabilityEquivalence,
    /// Every exact cover forward-maps to posterior exactly `τ`.
    CoverHitsThreshold,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::ZWorldsExcluded,
        Check::YCountLowerBound,
        Check::YCountExact,
        Check::BackMapIsCover,
        Check::SolvabilityEquivalence,
        Check::CoverHitsThreshold,
    ];

    pub fn id(self) -> char {
        match self {
            Check::ZWorldsExcluded => 'a',
            Check::YCountLowerBound => 'b',
            Check::YCountExact => 'c',
            Check::BackMapIsCover => 'd',
            Check::SolvabilityEquivalence => 'e',
            Check::CoverHitsThreshold => 'f',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Check::ZWorldsExcluded => "z-worlds-excluded",
            Check::YCountLowerBound => "y-count-lower-bound",
            Check::YCountExact => "y-count-exact",
            Check::BackMapIsCover => "back-map-is-cover",
            Check::SolvabilityEquivalence => "solvability-equivalence",
            Check::CoverHitsThreshold => "cover-hits-threshold",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check: Check,
    pub violations: usize,
    /// Offending observation masks (bit `i` selects `F_{i+1}`), ascending.
    pub masks: Vec<u64>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Outcome of an exhaustive sweep over every observation of a reduced
/// instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub params: ReductionParams,
    pub observations: u64,
    pub covers: u64,
    pub persuasion_solvable: bool,
    pub cover_solvable: bool,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, check: Check) -> &CheckResult {
        self.checks
            .iter()
            .find(|c| c.check == check)
            .expect("all checks present")
    }
}

fn mask_names(mask: u64) -> String {
    let names: Vec<String> = Observation::from_mask(mask)
        .indices()
        .iter()
        .map(|i| format!("F{}", i + 1))
        .collect();
    format!("{{{}}}", names.join(","))
}

/// One header line, one line per check, one line per offending observation,
/// and a final `result` line.
impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(
            f,
            "verify n={} k={} m={} tau={} observations={} covers={} persuasion_solvable={} cover_solvable={}",
            p.n, p.k, p.m, p.tau, self.observations, self.covers, self.persuasion_solvable, self.cover_solvable
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "check {} {} {} violations={}",
                c.check.id(),
                c.check.name(),
                if c.passed() { "PASS" } else { "FAIL" },
                c.violations
            )?;
            for &mask in &c.masks {
                writeln!(
                    f,
                    "violation {} observation={}",
                    c.check.id(),
                    mask_names(mask)
                )?;
            }
        }
        writeln!(f, "result {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[derive(Default)]
struct VerifyAcc {
    z_excluded: Vec<u64>,
    y_lower: Vec<u64>,
    y_exact: Vec<u64>,
    back_map: Vec<u64>,
    hits_threshold: Vec<u64>,
    persuasion_solvable: bool,
    covers: u64,
}

impl VerifyAcc {
    fn merge(mut self, other: VerifyAcc) -> VerifyAcc {
        self.z_excluded.extend(other.z_excluded);
        self.y_lower.extend(other.y_lower);
        self.y_exact.extend(other.y_exact);
        self.back_map.extend(other.back_map);
        self.hits_threshold.extend(other.hits_threshold);
        self.persuasion_solvable |= other.persuasion_solvable;
        self.covers += other.covers;
        self
    }
}

/// Sweeps all `2^k` observations of `reduce(eci)` with exact arithmetic and
/// checks every property in [`Check`]. The report does not depend on
/// `cfg.workers`.
pub fn verify_reduction(eci: &ExactCoverInstance, cfg: &SweepConfig) -> Result<VerificationReport> {
    let art = reduce(eci);
    verify_artifact(&art, cfg)
}

pub fn verify_artifact(art: &ReductionArtifact, cfg: &SweepConfig) -> Result<VerificationReport> {
    let inst = art.instance();
    let params = art.params();
    let (tau_num, tau_den) = (params.tau.numer(), params.tau.denom());
    let target_y = params.m - params.n;
    let k = params.k;

    let acc = sweep(
        k,
        cfg,
        VerifyAcc::default,
        |acc, mask| {
            let set = inst.space().intersect_mask(mask);
            let den = inst.space().scaled_mass(&set);
            let num = inst.space().scaled_mass(&inst.goal().intersection(&set));
            // W0 and X0 always survive, so `den` is positive
            let reaches = &num * tau_den >= tau_num * &den;
            let prof = art.profile_of_set(&set);
            if reaches {
                acc.persuasion_solvable = true;
                if prof.z_count >= 1 {
                    acc.z_excluded.push(mask);
                }
                if prof.y_count < target_y {
                    acc.y_lower.push(mask);
                }
                if prof.y_count != target_y {
                    acc.y_exact.push(mask);
                }
                let chosen = art
                    .back_map(&Observation::from_mask(mask))
                    .expect("mask within event range");
                if !verify_cover(art.source(), &chosen) {
                    acc.back_map.push(mask);
                }
            }
            if art.source().verify_mask(mask) {
                acc.covers += 1;
                let chosen = Observation::from_mask(mask).indices().to_vec();
                let hit = inst
                    .posterior(&art.forward_map(&chosen))
                    .is_ok_and(|p| p == params.tau);
                if !hit {
                    acc.hits_threshold.push(mask);
                }
            }
        },
        VerifyAcc::merge,
    )?;

    let cover_solvable = acc.covers > 0;
    let from_masks = |check, masks: Vec<u64>| CheckResult {
        check,
        violations: masks.len(),
        masks,
    };
    let checks = vec![
        from_masks(Check::ZWorldsExcluded, acc.z_excluded),
        from_masks(Check::YCountLowerBound, acc.y_lower),
        from_masks(Check::YCountExact, acc.y_exact),
        from_masks(Check::BackMapIsCover, acc.back_map),
        CheckResult {
            check: Check::SolvabilityEquivalence,
            violations: usize::from(acc.persuasion_solvable != cover_solvable),
            masks: Vec::new(),
        },
        from_masks(Check::CoverHitsThreshold, acc.hits_threshold),
    ];
    Ok(VerificationReport {
        params: params.clone(),
        observations: 1u64 << k,
        covers: acc.covers,
        persuasion_solvable: acc.persuasion_solvable,
        cover_solvable,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn worked() -> ReductionArtifact {
        let eci = ExactCoverInstance::from_sets(2, vec![vec![1], vec![2], vec![1, 2]]).unwrap();
        reduce(&eci)
    }

    #[test]
    fn worked_parameters() {
        let art = worked();
        let p = art.params();
        assert_eq!((p.n, p.k, p.m), (2, 3, 4));
        assert_eq!(p.x, r(1, 3));
        assert_eq!(p.y, r(1, 60));
        assert_eq!(p.z, r(2, 15));
        assert_eq!(p.tau, r(11, 21));
        let labels: Vec<_> = art
            .instance()
            .space()
            .worlds()
            .iter()
            .map(|w| w.label.as_str())
            .collect();
        assert_eq!(
            labels,
            ["W0", "X0", "Y_1_1", "Y_2_2", "Y_3_1", "Y_3_2", "Z_1", "Z_2"]
        );
    }

    #[test]
    fn worked_event_exclusions() {
        let art = worked();
        let space = art.instance().space();
        let excluded = |e: usize| -> Vec<String> {
            space.events()[e]
                .set
                .complement()
                .iter()
                .map(|w| space.worlds()[w].label.clone())
                .collect()
        };
        assert_eq!(excluded(0), ["Y_1_1", "Z_1"]);
        assert_eq!(excluded(1), ["Y_2_2", "Z_2"]);
        assert_eq!(excluded(2), ["Y_3_1", "Y_3_2", "Z_1", "Z_2"]);
    }

    #[test]
    fn degenerate_single_element() {
        let eci = ExactCoverInstance::from_sets(1, vec![vec![1]]).unwrap();
        let art = reduce(&eci);
        assert_eq!(art.params().m, 1);
        assert_eq!(art.params().tau, r(1, 2));
        let report = verify_reduction(&eci, &SweepConfig::default()).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(
            art.instance().posterior(&Observation::new([0])).unwrap(),
            r(1, 2)
        );
    }

    #[test]
    fn back_and_forward_maps() {
        let art = worked();
        assert_eq!(
            art.back_map(&Observation::empty()).unwrap(),
            Vec::<usize>::new()
        );
        assert_eq!(art.back_map(&Observation::new([2])).unwrap(), [2]);
        assert_eq!(art.back_map(&Observation::new([0, 1])).unwrap(), [0, 1]);
        assert_eq!(art.forward_map(&[]), Observation::empty());
        assert_eq!(art.forward_map(&[2]), Observation::new([2]));
        assert!(art.back_map(&Observation::new([3])).is_err());
    }

    #[test]
    fn profiles() {
        let art = worked();
        let p = art.profile(&Observation::empty()).unwrap();
        assert_eq!(
            (p.y_count, p.z_count, p.has_w0, p.has_x0),
            (4, 2, true, true)
        );
        let p = art.profile(&Observation::new([2])).unwrap();
        assert_eq!((p.y_count, p.z_count), (2, 0));
        let p = art.profile(&Observation::new([0])).unwrap();
        assert_eq!((p.y_count, p.z_count), (3, 1));
    }

    #[test]
    fn report_rendering() {
        let eci = ExactCoverInstance::from_sets(2, vec![vec![1], vec![2], vec![1, 2]]).unwrap();
        let report = verify_reduction(&eci, &SweepConfig::default()).unwrap();
        let text = report.to_string();
        assert_eq!(
            text,
            "verify n=2 k=3 m=4 tau=11/21 observations=8 covers=2 persuasion_solvable=true cover_solvable=true\n\
             check a z-worlds-excluded PASS violations=0\n\
             check b y-count-lower-bound PASS violations=0\n\
             check c y-count-exact PASS violations=0\n\
             check d back-map-is-cover PASS violations=0\n\
             check e solvability-equivalence PASS violations=0\n\
             check f cover-hits-threshold PASS violations=0\n\
             result PASS\n"
        );
    }

    #[test]
    fn failing_report_lists_observations() {
        let mut report = verify_reduction(
            &ExactCoverInstance::from_sets(1, vec![vec![1]]).unwrap(),
            &SweepConfig::default(),
        )
        .unwrap();
        report.checks[0] = CheckResult {
            check: Check::ZWorldsExcluded,
            violations: 1,
            masks: vec![0b101],
        };
        assert!(!report.passed());
        let text = report.to_string();
        assert!(text.contains(
            "check a z-worlds-excluded FAIL violations=1\nviolation a observation={F1,F3}\n"
        ));
        assert!(text.ends_with("result FAIL\n"));
    }
}
