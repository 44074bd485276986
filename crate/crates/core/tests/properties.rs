use proptest::prelude::*;

use persuasion::io::{gen_eci, gen_ppi, parse_eci, parse_ppi, render_eci, render_ppi, GenConfig};
use persuasion::{
    brute_force_persuasion, reduce, Observation, PersuasionInstance, Rational, SweepConfig,
    WorldRole, WorldSet,
};

fn ppi(seed: u64) -> PersuasionInstance {
    let cfg = GenConfig {
        worlds: 1..=12,
        events: 0..=6,
        density_percent: 60,
        ..GenConfig::seeded(seed)
    };
    gen_ppi(&cfg).unwrap()
}

fn eci_cfg(seed: u64) -> GenConfig {
    GenConfig {
        universe: 1..=6,
        subsets: 1..=7,
        plant: seed.is_multiple_of(3),
        ..GenConfig::seeded(seed)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn posterior_lies_in_unit_interval(seed in any::<u64>()) {
        let inst = ppi(seed);
        for mask in 0..1u64 << inst.space().num_events() {
            if let Ok(p) = inst.posterior(&Observation::from_mask(mask)) {
                prop_assert!(p.is_unit_interval());
            }
        }
    }

    #[test]
    fn posterior_depends_only_on_intersection(seed in any::<u64>()) {
        let inst = ppi(seed);
        let space = inst.space();
        let mut seen: Vec<(WorldSet, Option<Rational>)> = Vec::new();
        for mask in 0..1u64 << space.num_events() {
            let obs = Observation::from_mask(mask);
            let set = space.intersect(&obs).unwrap();
            let p = inst.posterior(&obs).ok();
            if let Some((_, q)) = seen.iter().find(|(s, _)| *s == set) {
                prop_assert_eq!(q, &p);
            } else {
                seen.push((set, p));
            }
        }
    }

    #[test]
    fn adding_an_event_never_increases_mass(seed in any::<u64>()) {
        let inst = ppi(seed);
        let space = inst.space();
        let k = space.num_events();
        for mask in 0..1u64 << k {
            let base = space.event_mass(&space.intersect(&Observation::from_mask(mask)).unwrap());
            for e in 0..k {
                let more = space.intersect(&Observation::from_mask(mask | 1 << e)).unwrap();
                prop_assert!(space.event_mass(&more) <= base);
            }
        }
    }

    #[test]
    fn mass_is_additive_on_disjoint_sets(seed in any::<u64>(), split in any::<u64>()) {
        let inst = ppi(seed);
        let space = inst.space();
        let n = space.num_worlds();
        let a = WorldSet::from_indices(n, (0..n).filter(|w| split >> (w % 64) & 1 == 1));
        let b = a.complement();
        prop_assert!(a.is_disjoint(&b));
        prop_assert_eq!(space.event_mass(&a.union(&b)), space.event_mass(&a) + space.event_mass(&b));
        prop_assert!(space.event_mass(&a.union(&b)).is_one());
    }

    #[test]
    fn render_parse_round_trip(seed in any::<u64>()) {
        let inst = ppi(seed);
        let text = render_ppi(&inst);
        let back = parse_ppi(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(render_ppi(&back), text);
        for mask in 0..1u64 << inst.space().num_events() {
            let obs = Observation::from_mask(mask);
            prop_assert_eq!(inst.posterior(&obs).ok(), back.posterior(&obs).ok());
        }

        let eci = gen_eci(&eci_cfg(seed)).unwrap();
        let text = render_eci(&eci);
        prop_assert_eq!(parse_eci(&text).unwrap(), eci.clone());
        let art = reduce(&eci);
        let reduced = render_ppi(art.instance());
        prop_assert_eq!(&parse_ppi(&reduced).unwrap(), art.instance());
    }

    #[test]
    fn reduction_parameter_identities(seed in any::<u64>()) {
        let eci = gen_eci(&eci_cfg(seed)).unwrap();
        let art = reduce(&eci);
        let p = art.params();
        let int = |v: usize| Rational::from_integer(v as i64);
        let two = int(2);
        let total = &(&(&two * &p.x) + &(&int(p.m) * &p.y)) + &(&int(p.n) * &p.z);
        prop_assert!(total.is_one());
        prop_assert_eq!(&p.z, &(&(&two * &int(p.m)) * &p.y));
        prop_assert!(Rational::zero() < p.y && p.y < p.z && p.z < Rational::one());
        prop_assert!(Rational::new(1, 2).unwrap() <= p.tau && p.tau < Rational::one());
        if p.m > p.n {
            prop_assert!(Rational::new(1, 2).unwrap() < p.tau);
        }
        // ratio Z/Y is 2m exactly
        prop_assert_eq!(&p.z / &p.y, int(2 * p.m));
    }

    #[test]
    fn reduction_exclusion_structure(seed in any::<u64>()) {
        let eci = gen_eci(&eci_cfg(seed)).unwrap();
        let art = reduce(&eci);
        let space = art.instance().space();
        let roles = art.roles();
        prop_assert_eq!(roles.iter().filter(|r| matches!(r, WorldRole::Y { .. })).count(), eci.total_size());
        prop_assert_eq!(roles.iter().filter(|r| matches!(r, WorldRole::Z { .. })).count(), eci.universe_size());
        for (i, s) in eci.subsets().iter().enumerate() {
            let excluded = space.events()[art.event_of_subset(i)].set.complement();
            let mut ys = 0;
            let mut zs = 0;
            for w in excluded.iter() {
                match art.role(w) {
                    WorldRole::Y { subset, element } => {
                        prop_assert_eq!(subset, i);
                        prop_assert!(s.contains(element));
                        ys += 1;
                    }
                    WorldRole::Z { element } => {
                        prop_assert!(s.contains(element));
                        zs += 1;
                    }
                    WorldRole::W0 | WorldRole::X0 => prop_assert!(false, "sentinel excluded"),
                }
            }
            prop_assert_eq!(ys, s.len());
            prop_assert_eq!(zs, s.len());
        }
        for (w, role) in roles.iter().enumerate() {
            let in_goal = matches!(role, WorldRole::W0 | WorldRole::Y { .. });
            prop_assert_eq!(art.instance().goal().contains(w), in_goal);
        }
    }

    #[test]
    fn back_and_forward_maps_cohere(seed in any::<u64>()) {
        let eci = gen_eci(&eci_cfg(seed)).unwrap();
        let art = reduce(&eci);
        for mask in 0..1u64 << eci.num_subsets() {
            let chosen = Observation::from_mask(mask).indices().to_vec();
            let obs = art.forward_map(&chosen);
            prop_assert_eq!(art.back_map(&obs).unwrap(), chosen.clone());
            prop_assert_eq!(art.back_map_literal(&obs).unwrap(), art.back_map_selected(&obs).unwrap());
            prop_assert_eq!(art.forward_map(&art.back_map(&obs).unwrap()), obs.clone());
            let prof = art.profile(&obs).unwrap();
            prop_assert!(prof.has_w0 && prof.has_x0);
        }
    }

    #[test]
    fn brute_force_is_worker_independent(seed in any::<u64>(), workers in 2usize..9) {
        let inst = ppi(seed);
        let one = brute_force_persuasion(&inst, &SweepConfig::default()).unwrap();
        let many = brute_force_persuasion(&inst, &SweepConfig::default().workers(workers)).unwrap();
        prop_assert_eq!(&one, &many);
        for mask in 0..1u64 << inst.space().num_events() {
            if let Ok(p) = inst.posterior(&Observation::from_mask(mask)) {
                prop_assert!(Some(&p) <= one.best_posterior.as_ref());
            }
        }
        if let Some(w) = &one.witness {
            prop_assert!(inst.is_solution(w));
        }
    }
}
