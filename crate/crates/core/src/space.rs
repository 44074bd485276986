//! Probability spaces, persuasion instances and the posterior of a goal
//! given an observation.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A world of the space: its position in the world list and a display label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WorldId {
    pub index: usize,
    pub label: String,
}

/// Fixed-width set of world indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WorldSet {
    width: usize,
    words: Vec<u64>,
}

impl WorldSet {
    pub fn empty(width: usize) -> Self {
        WorldSet {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = WorldSet::empty(width);
        for (w, word) in s.words.iter_mut().enumerate() {
            let lo = w * 64;
            let bits = (width - lo).min(64);
            *word = if bits == 64 {
                u64::MAX
            } else {
                (1u64 << bits) - 1
            };
        }
        s
    }

    /// Panics if an index is `>= width`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, indices: I) -> Self {
        let mut s = WorldSet::empty(width);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, i: usize) {
        assert!(
            i < self.width,
            "world {i} out of range for width {}",
            self.width
        );
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(
            i < self.width,
            "world {i} out of range for width {}",
            self.width
        );
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.width && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_width(&self, other: &WorldSet) {
        assert_eq!(self.width, other.width, "world set width mismatch");
    }

    pub fn intersection(&self, other: &WorldSet) -> WorldSet {
        self.check_width(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        WorldSet {
            width: self.width,
            words,
        }
    }

    pub fn intersect_with(&mut self, other: &WorldSet) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &WorldSet) -> WorldSet {
        self.check_width(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        WorldSet {
            width: self.width,
            words,
        }
    }

    pub fn difference(&self, other: &WorldSet) -> WorldSet {
        self.check_width(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        WorldSet {
            width: self.width,
            words,
        }
    }

    /// `Ω \ self`: the worlds this set excludes.
    pub fn complement(&self) -> WorldSet {
        WorldSet::full(self.width).difference(self)
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        self.check_width(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &WorldSet) -> bool {
        self.check_width(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Member indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + tz)
            })
        })
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A named member of the event family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Event {
    pub name: String,
    pub set: WorldSet,
}

impl Event {
    pub fn new(name: impl Into<String>, set: WorldSet) -> Self {
        Event {
            name: name.into(),
            set,
        }
    }
}

/// A subset of the event family, stored as sorted distinct event indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Observation {
    selected: Vec<usize>,
}

impl Observation {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut selected: Vec<usize> = indices.into_iter().collect();
        selected.sort_unstable();
        selected.dedup();
        Observation { selected }
    }

    pub fn empty() -> Self {
        Observation::default()
    }

    /// Bit `i` of `mask` selects event `i`.
    pub fn from_mask(mask: u64) -> Self {
        let mut selected = Vec::with_capacity(mask.count_ones() as usize);
        let mut bits = mask;
        while bits != 0 {
            selected.push(bits.trailing_zeros() as usize);
            bits &= bits - 1;
        }
        Observation { selected }
    }

    /// The inverse of [`Observation::from_mask`], if every index is below 64.
    pub fn to_mask(&self) -> Option<u64> {
        self.selected
            .iter()
            .try_fold(0u64, |m, &i| (i < 64).then(|| m | 1 << i))
    }

    pub fn indices(&self) -> &[usize] {
        &self.selected
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.selected.binary_search(&i).is_ok()
    }

    /// Witness order: fewer events first, then lexicographic on indices.
    pub fn witness_key(&self) -> (usize, &[usize]) {
        (self.selected.len(), &self.selected)
    }
}

/// A failed [`ProbabilitySpace`] invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ProbabilityOutOfRange {
        world: String,
        value: Rational,
    },
    NormalizationViolation {
        sum: Rational,
    },
    EventWidthMismatch {
        event: String,
        width: usize,
        expected: usize,
    },
    DuplicateWorldLabel {
        label: String,
    },
}

impl Violation {
    /// Stable invariant name, used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::ProbabilityOutOfRange { .. } => "ProbabilityOutOfRange",
            Violation::NormalizationViolation { .. } => "NormalizationViolation",
            Violation::EventWidthMismatch { .. } => "EventWidthMismatch",
            Violation::DuplicateWorldLabel { .. } => "DuplicateWorldLabel",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ProbabilityOutOfRange { world, value } => {
                write!(
                    f,
                    "ProbabilityOutOfRange: world {world} has probability {value}"
                )
            }
            Violation::NormalizationViolation { sum } => {
                write!(f, "NormalizationViolation: probabilities sum to {sum}")
            }
            Violation::EventWidthMismatch {
                event,
                width,
                expected,
            } => write!(
                f,
                "EventWidthMismatch: event {event} has width {width}, expected {expected}"
            ),
            Violation::DuplicateWorldLabel { label } => {
                write!(f, "DuplicateWorldLabel: {label}")
            }
        }
    }
}

/// Probabilities rescaled to integers over their common denominator, so
/// masses of sets are integer sums and ratios of masses are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Weights {
    Small(Vec<u64>),
    Big(Vec<BigInt>),
}

impl Weights {
    fn from_probs(probs: &[Rational]) -> Self {
        let scale = probs
            .iter()
            .fold(BigInt::from(1), |acc, p| acc.lcm(p.denom()));
        let big: Vec<BigInt> = probs
            .iter()
            .map(|p| p.numer() * (&scale / p.denom()))
            .collect();
        match big
            .iter()
            .map(ToPrimitive::to_u64)
            .collect::<Option<Vec<u64>>>()
        {
            Some(small) => Weights::Small(small),
            None => Weights::Big(big),
        }
    }

    fn mass(&self, set: &WorldSet) -> BigInt {
        match self {
            Weights::Small(w) => BigInt::from(set.iter().map(|i| u128::from(w[i])).sum::<u128>()),
            Weights::Big(w) => set.iter().map(|i| &w[i]).sum(),
        }
    }
}

/// The triple of worlds, events and a probability per world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbabilitySpace {
    worlds: Vec<WorldId>,
    events: Vec<Event>,
    probs: Vec<Rational>,
    weights: Weights,
}

impl ProbabilitySpace {
    /// Builds a space and rejects it if any invariant fails.
    pub fn new(worlds: Vec<(String, Rational)>, events: Vec<Event>) -> Result<Self> {
        let space = ProbabilitySpace::new_unchecked(worlds, events);
        let violations = validate_space(&space);
        if violations.is_empty() {
            Ok(space)
        } else {
            Err(Error::InvalidSpace(violations))
        }
    }

    /// Builds a space without checking probabilities or event widths.
    /// Use [`validate_space`] to inspect it.
    pub fn new_unchecked(worlds: Vec<(String, Rational)>, events: Vec<Event>) -> Self {
        let (labels, probs): (Vec<String>, Vec<Rational>) = worlds.into_iter().unzip();
        let worlds = labels
            .into_iter()
            .enumerate()
            .map(|(index, label)| WorldId { index, label })
            .collect();
        let weights = Weights::from_probs(&probs);
        ProbabilitySpace {
            worlds,
            events,
            probs,
            weights,
        }
    }

    pub fn worlds(&self) -> &[WorldId] {
        &self.worlds
    }

    pub fn num_worlds(&self) -> usize {
        self.worlds.len()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn num_events(&self) -> usize {
        self.events.len()
    }

    pub fn prob(&self, world: usize) -> &Rational {
        &self.probs[world]
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn world_index(&self, label: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w.label == label)
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet::full(self.num_worlds())
    }

    pub fn check_observation(&self, obs: &Observation) -> Result<()> {
        match obs.indices().last() {
            Some(&index) if index >= self.events.len() => Err(Error::InvalidObservation {
                index,
                len: self.events.len(),
            }),
            _ => Ok(()),
        }
    }

    /// The intersection of the selected events; the empty observation gives
    /// every world.
    pub fn intersect(&self, obs: &Observation) -> Result<WorldSet> {
        self.check_observation(obs)?;
        let mut acc = self.all_worlds();
        for &i in obs.indices() {
            acc.intersect_with(&self.events[i].set);
        }
        Ok(acc)
    }

    /// Same as [`ProbabilitySpace::intersect`] for a bitmask of event indices.
    pub(crate) fn intersect_mask(&self, mask: u64) -> WorldSet {
        let mut acc = self.all_worlds();
        let mut bits = mask;
        while bits != 0 {
            acc.intersect_with(&self.events[bits.trailing_zeros() as usize].set);
            bits &= bits - 1;
        }
        acc
    }

    /// Exact probability mass of a set of worlds.
    pub fn event_mass(&self, set: &WorldSet) -> Rational {
        assert_eq!(set.width(), self.num_worlds(), "world set width mismatch");
        set.iter().map(|i| &self.probs[i]).sum()
    }

    /// Mass of `set` times the common denominator of all probabilities.
    pub(crate) fn scaled_mass(&self, set: &WorldSet) -> BigInt {
        self.weights.mass(set)
    }
}

/// Lists every failed invariant of `space`: probabilities in `[0, 1]`,
/// total mass exactly 1, event widths equal to the world count, unique labels.
pub fn validate_space(space: &ProbabilitySpace) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for w in &space.worlds {
        if !seen.insert(w.label.as_str()) {
            out.push(Violation::DuplicateWorldLabel {
                label: w.label.clone(),
            });
        }
    }
    for (w, p) in space.worlds.iter().zip(&space.probs) {
        if !p.is_unit_interval() {
            out.push(Violation::ProbabilityOutOfRange {
                world: w.label.clone(),
                value: p.clone(),
            });
        }
    }
    let sum: Rational = space.probs.iter().sum();
    if !sum.is_one() {
        out.push(Violation::NormalizationViolation { sum });
    }
    for e in &space.events {
        if e.set.width() != space.num_worlds() {
            out.push(Violation::EventWidthMismatch {
                event: e.name.clone(),
                width: e.set.width(),
                expected: space.num_worlds(),
            });
        }
    }
    out
}

/// A space together with a goal event and a threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersuasionInstance {
    space: ProbabilitySpace,
    goal: WorldSet,
    threshold: Rational,
}

impl PersuasionInstance {
    pub fn new(space: ProbabilitySpace, goal: WorldSet, threshold: Rational) -> Result<Self> {
        let violations = validate_space(&space);
        if !violations.is_empty() {
            return Err(Error::InvalidSpace(violations));
        }
        if goal.width() != space.num_worlds() {
            return Err(Error::InvalidInstance(format!(
                "goal has width {}, expected {}",
                goal.width(),
                space.num_worlds()
            )));
        }
        if !threshold.is_unit_interval() {
            return Err(Error::InvalidInstance(format!(
                "threshold {threshold} is outside [0, 1]"
            )));
        }
        Ok(PersuasionInstance {
            space,
            goal,
            threshold,
        })
    }

    pub fn space(&self) -> &ProbabilitySpace {
        &self.space
    }

    pub fn goal(&self) -> &WorldSet {
        &self.goal
    }

    pub fn threshold(&self) -> &Rational {
        &self.threshold
    }

    /// Posterior of the goal given an already-intersected conditioning set.
    pub fn posterior_of_set(&self, conditioning: &WorldSet) -> Result<Rational> {
        let den = self.space.scaled_mass(conditioning);
        if den.is_zero() {
            return Err(Error::UndefinedPosterior);
        }
        let num = self
            .space
            .scaled_mass(&self.goal.intersection(conditioning));
        Rational::from_big(num, den)
    }

    /// Exact `Pr(goal | obs)`; errors when the intersection has no mass.
    pub fn posterior(&self, obs: &Observation) -> Result<Rational> {
        self.posterior_of_set(&self.space.intersect(obs)?)
    }

    /// `posterior >= threshold`; undefined posteriors and invalid
    /// observations count as "no".
    pub fn is_solution(&self, obs: &Observation) -> bool {
        self.posterior(obs).is_ok_and(|p| p >= self.threshold)
    }

    pub(crate) fn scaled_posterior_mask(&self, mask: u64) -> Option<(BigInt, BigInt)> {
        let set = self.space.intersect_mask(mask);
        let den = self.space.scaled_mass(&set);
        if den.is_zero() {
            return None;
        }
        let num = self.space.scaled_mass(&self.goal.intersection(&set));
        Some((num, den))
    }
}

/// Free-function form of [`ProbabilitySpace::intersect`].
pub fn intersect(space: &ProbabilitySpace, obs: &Observation) -> Result<WorldSet> {
    space.intersect(obs)
}

/// Free-function form of [`ProbabilitySpace::event_mass`].
pub fn event_mass(space: &ProbabilitySpace, set: &WorldSet) -> Rational {
    space.event_mass(set)
}

/// Free-function form of [`PersuasionInstance::posterior`].
pub fn posterior(inst: &PersuasionInstance, obs: &Observation) -> Result<Rational> {
    inst.posterior(obs)
}

/// Free-function form of [`PersuasionInstance::is_solution`].
pub fn is_solution(inst: &PersuasionInstance, obs: &Observation) -> bool {
    inst.is_solution(obs)
}
