//! Seeded instance generators. The RNG is ChaCha8 and every draw goes
//! through fixed-width integers, so a configuration yields the same bytes
//! on every platform.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cover::{ExactCoverInstance, Subset};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::space::{Event, PersuasionInstance, ProbabilitySpace, WorldSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    /// Universe size `n` (cover instances).
    pub universe: RangeInclusive<usize>,
    /// Number of random subsets drawn (cover instances), clamped to
    /// `2^n - 1`. One singleton is appended per element the draws leave
    /// uncovered, so the final count can exceed this range.
    pub subsets: RangeInclusive<usize>,
    /// Number of worlds (persuasion instances).
    pub worlds: RangeInclusive<usize>,
    /// Number of events (persuasion instances).
    pub events: RangeInclusive<usize>,
    /// Chance, in percent, that an element joins a random subset or a world
    /// joins a random event.
    pub density_percent: u32,
    /// Cover instances: include a random partition of the universe.
    /// Persuasion instances: put the intersection of all events inside the goal.
    pub plant: bool,
    /// Fixed threshold; drawn at random when `None`.
    pub threshold: Option<Rational>,
    /// Draw every world probability strictly positive.
    pub positive_probs: bool,
    /// Put world 0 in every event, so every intersection is non-empty.
    pub common_world: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            universe: 1..=6,
            subsets: 1..=7,
            worlds: 2..=8,
            events: 1..=6,
            density_percent: 50,
            plant: false,
            threshold: None,
            positive_probs: false,
            common_world: false,
        }
    }
}

impl GenConfig {
    pub fn seeded(seed: u64) -> Self {
        GenConfig {
            seed,
            ..Default::default()
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn check_range(name: &str, r: &RangeInclusive<usize>, min: usize) -> Result<()> {
    if r.is_empty() || *r.start() < min {
        return Err(Error::InvalidConfig(format!(
            "{name} range {}..={} must be non-empty and start at least at {min}",
            r.start(),
            r.end()
        )));
    }
    Ok(())
}

fn pick(rng: &mut ChaCha8Rng, r: &RangeInclusive<usize>) -> usize {
    rng.gen_range(*r.start() as u64..=*r.end() as u64) as usize
}

fn chance(rng: &mut ChaCha8Rng, percent: u32) -> bool {
    rng.gen_range(0..100u32) < percent
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, percent: u32) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = (1..=n).filter(|_| chance(rng, percent)).collect();
    if s.is_empty() {
        s.insert(rng.gen_range(1..=n as u64) as usize);
    }
    s
}

/// Draws a cover instance. Elements left uncovered by the random subsets
/// get singleton patch sets, so the union is always the universe.
pub fn gen_eci(cfg: &GenConfig) -> Result<ExactCoverInstance> {
    check_range("universe", &cfg.universe, 1)?;
    check_range("subsets", &cfg.subsets, 1)?;
    if cfg.density_percent > 100 {
        return Err(Error::InvalidConfig(
            "density_percent must be at most 100".into(),
        ));
    }
    let mut rng = cfg.rng();
    let n = pick(&mut rng, &cfg.universe);
    let mut k = pick(&mut rng, &cfg.subsets);
    if n < 63 {
        k = k.min((1usize << n) - 1);
    }

    let mut family: Vec<BTreeSet<usize>> = Vec::with_capacity(k);
    if cfg.plant {
        let blocks = rng.gen_range(1..=k.min(n) as u64) as usize;
        let mut elements: Vec<usize> = (1..=n).collect();
        elements.shuffle(&mut rng);
        let mut partition = vec![BTreeSet::new(); blocks];
        for (j, &e) in elements.iter().enumerate() {
            let b = if j < blocks {
                j
            } else {
                rng.gen_range(0..blocks as u64) as usize
            };
            partition[b].insert(e);
        }
        family.extend(partition);
    }

    while family.len() < k {
        let mut candidate = random_subset(&mut rng, n, cfg.density_percent);
        let mut attempts = 0;
        while family.contains(&candidate) {
            attempts += 1;
            if attempts > 1000 {
                candidate = first_unused(&family, n);
                break;
            }
            candidate = random_subset(&mut rng, n, cfg.density_percent);
        }
        family.push(candidate);
    }

    // a singleton {e} cannot already be present when e is uncovered
    let missing: Vec<usize> = (1..=n)
        .filter(|e| !family.iter().any(|s| s.contains(e)))
        .collect();
    family.extend(missing.into_iter().map(|e| BTreeSet::from([e])));

    family.shuffle(&mut rng);
    let subsets = family
        .into_iter()
        .enumerate()
        .map(|(i, s)| Subset::new(format!("A{}", i + 1), s))
        .collect();
    ExactCoverInstance::new(n, subsets)
}

/// Lowest non-empty subset (by bitmask) not yet in the family. Only reached
/// when the family nearly exhausts the subsets of a small universe.
fn first_unused(family: &[BTreeSet<usize>], n: usize) -> BTreeSet<usize> {
    (1u64..1 << n)
        .map(|mask| {
            (1..=n)
                .filter(|e| mask >> (e - 1) & 1 == 1)
                .collect::<BTreeSet<_>>()
        })
        .find(|s| !family.contains(s))
        .expect("k is clamped below 2^n")
}

/// Draws a persuasion instance with probabilities `w_i / Σw` for random
/// integer weights, so the total is exactly one.
pub fn gen_ppi(cfg: &GenConfig) -> Result<PersuasionInstance> {
    check_range("worlds", &cfg.worlds, 1)?;
    check_range("events", &cfg.events, 0)?;
    if cfg.density_percent > 100 {
        return Err(Error::InvalidConfig(
            "density_percent must be at most 100".into(),
        ));
    }
    if let Some(t) = &cfg.threshold {
        if !t.is_unit_interval() {
            return Err(Error::InvalidConfig(format!(
                "threshold {t} is outside [0, 1]"
            )));
        }
    }
    let mut rng = cfg.rng();
    let n = pick(&mut rng, &cfg.worlds);
    let k = pick(&mut rng, &cfg.events);

    let low = u64::from(cfg.positive_probs);
    let mut weights: Vec<u64> = (0..n).map(|_| rng.gen_range(low..=9)).collect();
    if weights.iter().all(|&w| w == 0) {
        weights[n - 1] = 1;
    }
    let total: u64 = weights.iter().sum();
    let worlds = weights
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            let p = Rational::new(w as i64, total as i64).expect("positive total");
            (format!("w{}", i + 1), p)
        })
        .collect();

    let events: Vec<Event> = (0..k)
        .map(|j| {
            let mut set =
                WorldSet::from_indices(n, (0..n).filter(|_| chance(&mut rng, cfg.density_percent)));
            if cfg.common_world {
                set.insert(0);
            }
            Event::new(format!("f{}", j + 1), set)
        })
        .collect();

    let mut goal = WorldSet::from_indices(n, (0..n).filter(|_| chance(&mut rng, 50)));
    if cfg.plant {
        let all = events
            .iter()
            .fold(WorldSet::full(n), |acc, e| acc.intersection(&e.set));
        goal = goal.union(&all);
    }

    let threshold = match &cfg.threshold {
        Some(t) => t.clone(),
        None => {
            let den = rng.gen_range(1..=10u64) as i64;
            let num = rng.gen_range(0..=den as u64) as i64;
            Rational::new(num, den).expect("positive denominator")
        }
    };

    let space = ProbabilitySpace::new(worlds, events)?;
    PersuasionInstance::new(space, goal, threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::verify_cover;
    use crate::io::format::{render_eci, render_ppi};
    use crate::solvers::exact_cover_dlx;
    use crate::space::validate_space;

    #[test]
    fn same_seed_same_bytes() {
        for seed in 0..20 {
            let cfg = GenConfig::seeded(seed);
            assert_eq!(
                render_eci(&gen_eci(&cfg).unwrap()),
                render_eci(&gen_eci(&cfg).unwrap())
            );
            assert_eq!(
                render_ppi(&gen_ppi(&cfg).unwrap()),
                render_ppi(&gen_ppi(&cfg).unwrap())
            );
        }
        assert_ne!(
            render_eci(&gen_eci(&GenConfig::seeded(1)).unwrap()),
            render_eci(&gen_eci(&GenConfig::seeded(2)).unwrap())
        );
    }

    #[test]
    fn generated_eci_respects_ranges() {
        for seed in 0..300 {
            let cfg = GenConfig::seeded(seed);
            let eci = gen_eci(&cfg).unwrap();
            assert!(cfg.universe.contains(&eci.universe_size()));
            let k = eci.num_subsets();
            let patches = eci.subsets().iter().filter(|s| s.len() == 1).count();
            assert!(k >= *cfg.subsets.start(), "seed {seed}");
            assert!(k <= cfg.subsets.end() + eci.universe_size(), "seed {seed}");
            assert!(k - patches <= *cfg.subsets.end(), "seed {seed}");
        }
    }

    #[test]
    fn planted_eci_is_solvable() {
        for seed in 0..200 {
            let cfg = GenConfig {
                plant: true,
                universe: 1..=12,
                subsets: 1..=15,
                ..GenConfig::seeded(seed)
            };
            let eci = gen_eci(&cfg).unwrap();
            let v = exact_cover_dlx(&eci);
            assert!(v.solvable, "seed {seed}");
            assert!(verify_cover(&eci, &v.witness.unwrap()));
        }
    }

    #[test]
    fn exhausting_small_universes() {
        // n = 2 allows exactly three distinct subsets
        let cfg = GenConfig {
            universe: 2..=2,
            subsets: 3..=9,
            ..GenConfig::seeded(5)
        };
        assert_eq!(gen_eci(&cfg).unwrap().num_subsets(), 3);
    }

    #[test]
    fn generated_ppi_is_valid() {
        for seed in 0..200 {
            let cfg = GenConfig {
                positive_probs: seed % 2 == 0,
                common_world: seed % 3 == 0,
                ..GenConfig::seeded(seed)
            };
            let inst = gen_ppi(&cfg).unwrap();
            assert!(validate_space(inst.space()).is_empty());
            if cfg.positive_probs {
                assert!(inst.space().probs().iter().all(Rational::is_positive));
            }
            if cfg.common_world {
                assert!(inst.space().events().iter().all(|e| e.set.contains(0)));
            }
        }
    }

    #[test]
    fn impossible_ranges_rejected() {
        #[allow(clippy::reversed_empty_ranges)]
        let cfg = GenConfig {
            universe: 3..=2,
            ..GenConfig::default()
        };
        assert!(matches!(gen_eci(&cfg), Err(Error::InvalidConfig(_))));
        let cfg = GenConfig {
            universe: 0..=2,
            ..GenConfig::default()
        };
        assert!(gen_eci(&cfg).is_err());
        let cfg = GenConfig {
            worlds: 0..=0,
            ..GenConfig::default()
        };
        assert!(gen_ppi(&cfg).is_err());
        let cfg = GenConfig {
            density_percent: 101,
            ..GenConfig::default()
        };
        assert!(gen_ppi(&cfg).is_err());
        let cfg = GenConfig {
            threshold: Some(Rational::new(3, 2).unwrap()),
            ..GenConfig::default()
        };
        assert!(gen_ppi(&cfg).is_err());
    }
}
