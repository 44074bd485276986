//! Command-line front end.
//!
//! Exit codes: 0 solvable / all checks pass, 1 not solvable, 2 invalid input
//! or enumeration cap exceeded, 3 a verification check failed.

use std::fs;
use std::io::{self, Read};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use persuasion::io::{
    gen_eci, gen_ppi, parse_eci, parse_ppi, render_eci, render_ppi, render_roles, GenConfig,
};
use persuasion::{
    brute_force_persuasion, exact_cover_brute, exact_cover_dlx, exact_cover_dlx_count, reduce,
    strong_inclusion_holds, strong_persuasion_general, strong_persuasion_standard,
    verify_reduction, Error, Observation, PersuasionInstance, PersuasionVerdict, Rational,
    SweepConfig, DEFAULT_CAP,
};

const CAP_ENV: &str = "PERSUASION_CAP";

const EXIT_SOLVABLE: u8 = 0;
const EXIT_UNSOLVABLE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "persuasion",
    version,
    about = "Exact deciders for Persuasion and Exact Cover"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Brute,
    Dlx,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a persuasion instance.
    SolvePpi {
        /// Instance file, or - for stdin.
        file: PathBuf,
        /// Use the polynomial threshold-one decider.
        #[arg(long)]
        strong: bool,
        /// Largest event or subset count to enumerate (default 24, or PERSUASION_CAP).
        #[arg(long)]
        cap: Option<usize>,
        /// Threads for exhaustive sweeps; results do not depend on this.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Decide an exact cover instance.
    SolveEci {
        /// Instance file, or - for stdin.
        file: PathBuf,
        /// Exhaustive enumeration or dancing links.
        #[arg(long, value_enum, default_value_t = Engine::Dlx)]
        engine: Engine,
        /// Count every exact cover.
        #[arg(long)]
        count: bool,
        /// Largest subset count to enumerate (default 24, or PERSUASION_CAP).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Reduce an exact cover instance to a persuasion instance.
    Reduce {
        /// Instance file, or - for stdin.
        file: PathBuf,
        /// Where to write the reduced persuasion instance.
        #[arg(short, long)]
        output: PathBuf,
        /// Also write role metadata to this file.
        #[arg(long)]
        roles: Option<PathBuf>,
    },
    /// Check every observation of the reduced instance.
    Verify {
        /// Instance file, or - for stdin.
        file: PathBuf,
        /// Largest event or subset count to enumerate (default 24, or PERSUASION_CAP).
        #[arg(long)]
        cap: Option<usize>,
        /// Threads for exhaustive sweeps; results do not depend on this.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Print the posterior of the goal for a list of event names.
    Posterior {
        /// Instance file, or - for stdin.
        file: PathBuf,
        /// Selected events, by name.
        events: Vec<String>,
    },
    /// Generate an exact cover instance.
    GenEci {
        /// RNG seed; the same seed gives the same bytes.
        #[arg(long)]
        seed: u64,
        /// Universe size range, as A..B (inclusive).
        #[arg(long, default_value = "1..6")]
        universe: SizeRange,
        /// Range for the number of random subsets; uncovered elements add singletons.
        #[arg(long, default_value = "1..7")]
        subsets: SizeRange,
        /// Chance in percent that an element joins a random subset.
        #[arg(long, default_value_t = 50)]
        density: u32,
        /// Include a random partition of the universe, so a cover exists.
        #[arg(long)]
        plant: bool,
        /// Write here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a persuasion instance.
    GenPpi {
        /// RNG seed; the same seed gives the same bytes.
        #[arg(long)]
        seed: u64,
        /// Number of worlds, as A..B (inclusive).
        #[arg(long, default_value = "2..8")]
        worlds: SizeRange,
        /// Number of events, as A..B (inclusive).
        #[arg(long, default_value = "1..6")]
        events: SizeRange,
        /// Chance in percent that a world joins an event.
        #[arg(long, default_value_t = 50)]
        density: u32,
        /// Fixed threshold p/q; random when omitted.
        #[arg(long)]
        threshold: Option<Rational>,
        /// Give every world positive probability.
        #[arg(long)]
        positive: bool,
        /// Put the first world in every event.
        #[arg(long)]
        common_world: bool,
        /// Put the intersection of all events inside the goal.
        #[arg(long)]
        plant: bool,
        /// Write here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare cover deciders and the reduction over a range of seeds.
    Bench {
        /// Seeds to run, as A..B (inclusive).
        #[arg(long)]
        seeds: SizeRange,
        /// Universe size range, as A..B (inclusive).
        #[arg(long, default_value = "1..6")]
        universe: SizeRange,
        /// Range for the number of random subsets; uncovered elements add singletons.
        #[arg(long, default_value = "1..7")]
        subsets: SizeRange,
        /// Chance in percent that an element joins a random subset.
        #[arg(long, default_value_t = 50)]
        density: u32,
        /// Largest event or subset count to enumerate (default 24, or PERSUASION_CAP).
        #[arg(long)]
        cap: Option<usize>,
        /// Threads for exhaustive sweeps; results do not depend on this.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

/// `A..B` or `A..=B` (both inclusive), or a single value.
#[derive(Clone, Debug)]
struct SizeRange(RangeInclusive<u64>);

impl FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad range {s:?}"))
        };
        match s.split_once("..") {
            Some((a, b)) => Ok(SizeRange(num(a)?..=num(b.trim_start_matches('='))?)),
            None => {
                let v = num(s)?;
                Ok(SizeRange(v..=v))
            }
        }
    }
}

impl SizeRange {
    fn usize(&self) -> RangeInclusive<usize> {
        *self.0.start() as usize..=*self.0.end() as usize
    }
}

fn read_input(path: &Path) -> io::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn load(path: &Path) -> Result<String, String> {
    read_input(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_output(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sweep_config(cap: Option<usize>, workers: usize) -> Result<SweepConfig, String> {
    let cap = match cap {
        Some(c) => c,
        None => match std::env::var(CAP_ENV) {
            Ok(v) => v
                .parse()
                .map_err(|_| format!("{CAP_ENV}={v:?} is not a number"))?,
            Err(_) => DEFAULT_CAP,
        },
    };
    Ok(SweepConfig::with_cap(cap).workers(workers))
}

fn names(inst: &PersuasionInstance, obs: &Observation) -> String {
    let events = inst.space().events();
    let names: Vec<&str> = obs
        .indices()
        .iter()
        .map(|&i| events[i].name.as_str())
        .collect();
    format!("{{{}}}", names.join(","))
}

fn print_verdict(inst: &PersuasionInstance, v: &PersuasionVerdict) -> u8 {
    println!("solvable {}", v.solvable);
    if let Some(w) = &v.witness {
        println!("witness {}", names(inst, w));
        if let Ok(p) = inst.posterior(w) {
            println!("posterior {p}");
        }
    }
    if let Some(b) = &v.best_posterior {
        println!("best_posterior {b}");
    }
    if v.solvable {
        EXIT_SOLVABLE
    } else {
        EXIT_UNSOLVABLE
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let err = |e: Error| e.to_string();
    match cli.command {
        Command::SolvePpi {
            file,
            strong,
            cap,
            workers,
        } => {
            let inst = parse_ppi(&load(&file)?).map_err(err)?;
            let verdict = if strong {
                println!("inclusion_holds {}", strong_inclusion_holds(&inst));
                match strong_persuasion_standard(&inst) {
                    Err(Error::AssumptionViolated(why)) => {
                        eprintln!("note: {why}; using the per-world decider");
                        strong_persuasion_general(&inst)
                    }
                    other => other,
                }
            } else {
                brute_force_persuasion(&inst, &sweep_config(cap, workers)?)
            }
            .map_err(err)?;
            Ok(print_verdict(&inst, &verdict))
        }
        Command::SolveEci {
            file,
            engine,
            count,
            cap,
        } => {
            let eci = parse_eci(&load(&file)?).map_err(err)?;
            let v = match (engine, count) {
                (Engine::Brute, _) => {
                    exact_cover_brute(&eci, &sweep_config(cap, 1)?).map_err(err)?
                }
                (Engine::Dlx, false) => exact_cover_dlx(&eci),
                (Engine::Dlx, true) => exact_cover_dlx_count(&eci),
            };
            println!("solvable {}", v.solvable);
            if let Some(w) = &v.witness {
                let names: Vec<&str> = w.iter().map(|&i| eci.subsets()[i].name.as_str()).collect();
                println!("witness {{{}}}", names.join(","));
            }
            if let Some(c) = v.solution_count {
                println!("count {c}");
            }
            Ok(if v.solvable {
                EXIT_SOLVABLE
            } else {
                EXIT_UNSOLVABLE
            })
        }
        Command::Reduce {
            file,
            output,
            roles,
        } => {
            let eci = parse_eci(&load(&file)?).map_err(err)?;
            let art = reduce(&eci);
            fs::write(&output, render_ppi(art.instance()))
                .map_err(|e| format!("{}: {e}", output.display()))?;
            if let Some(r) = roles {
                fs::write(&r, render_roles(&art)).map_err(|e| format!("{}: {e}", r.display()))?;
            }
            Ok(EXIT_SOLVABLE)
        }
        Command::Verify { file, cap, workers } => {
            let eci = parse_eci(&load(&file)?).map_err(err)?;
            let report = verify_reduction(&eci, &sweep_config(cap, workers)?).map_err(err)?;
            print!("{report}");
            Ok(if report.passed() {
                EXIT_SOLVABLE
            } else {
                EXIT_VIOLATION
            })
        }
        Command::Posterior { file, events } => {
            let inst = parse_ppi(&load(&file)?).map_err(err)?;
            let all = inst.space().events();
            let indices = events
                .iter()
                .map(|name| {
                    all.iter()
                        .position(|e| &e.name == name)
                        .ok_or_else(|| format!("unknown event {name:?}"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let obs = Observation::new(indices);
            let p = inst.posterior(&obs).map_err(err)?;
            println!("posterior {p}");
            let reached = p >= *inst.threshold();
            println!("reaches_threshold {reached}");
            Ok(if reached {
                EXIT_SOLVABLE
            } else {
                EXIT_UNSOLVABLE
            })
        }
        Command::GenEci {
            seed,
            universe,
            subsets,
            density,
            plant,
            output,
        } => {
            let cfg = GenConfig {
                universe: universe.usize(),
                subsets: subsets.usize(),
                density_percent: density,
                plant,
                ..GenConfig::seeded(seed)
            };
            let eci = gen_eci(&cfg).map_err(err)?;
            let out = output.as_deref();
            write_output(out, &render_eci(&eci)).map_err(|e| e.to_string())?;
            Ok(EXIT_SOLVABLE)
        }
        Command::GenPpi {
            seed,
            worlds,
            events,
            density,
            threshold,
            positive,
            common_world,
            plant,
            output,
        } => {
            let cfg = GenConfig {
                worlds: worlds.usize(),
                events: events.usize(),
                density_percent: density,
                threshold,
                positive_probs: positive,
                common_world,
                plant,
                ..GenConfig::seeded(seed)
            };
            let inst = gen_ppi(&cfg).map_err(err)?;
            write_output(output.as_deref(), &render_ppi(&inst)).map_err(|e| e.to_string())?;
            Ok(EXIT_SOLVABLE)
        }
        Command::Bench {
            seeds,
            universe,
            subsets,
            density,
            cap,
            workers,
        } => bench(
            seeds.0,
            universe.usize(),
            subsets.usize(),
            density,
            sweep_config(cap, workers)?,
        ),
    }
}

fn bench(
    seeds: RangeInclusive<u64>,
    universe: RangeInclusive<usize>,
    subsets: RangeInclusive<usize>,
    density: u32,
    cfg: SweepConfig,
) -> Result<u8, String> {
    let started = std::time::Instant::now();
    let (mut total, mut solvable, mut disagree, mut failed_checks) = (0u64, 0u64, 0u64, 0u64);
    println!("seed n k m covers brute dlx persuasion verify");
    for seed in seeds {
        let gen = GenConfig {
            universe: universe.clone(),
            subsets: subsets.clone(),
            density_percent: density,
            ..GenConfig::seeded(seed)
        };
        let eci = gen_eci(&gen).map_err(|e| e.to_string())?;
        let brute = exact_cover_brute(&eci, &cfg).map_err(|e| e.to_string())?;
        let dlx = exact_cover_dlx(&eci);
        let art = reduce(&eci);
        let ppi = brute_force_persuasion(art.instance(), &cfg).map_err(|e| e.to_string())?;
        let report = verify_reduction(&eci, &cfg).map_err(|e| e.to_string())?;
        let agree = brute.solvable == dlx.solvable && brute.solvable == ppi.solvable;
        total += 1;
        solvable += u64::from(brute.solvable);
        disagree += u64::from(!agree);
        failed_checks += u64::from(!report.passed());
        println!(
            "{seed} {} {} {} {} {} {} {} {}",
            eci.universe_size(),
            eci.num_subsets(),
            eci.total_size(),
            brute.solution_count.unwrap_or(0),
            brute.solvable,
            dlx.solvable,
            ppi.solvable,
            if report.passed() { "PASS" } else { "FAIL" }
        );
    }
    println!("summary instances={total} solvable={solvable} disagreements={disagree} failed_verifications={failed_checks}");
    eprintln!("elapsed {:.3}s", started.elapsed().as_secs_f64());
    Ok(if disagree == 0 && failed_checks == 0 {
        EXIT_SOLVABLE
    } else {
        EXIT_VIOLATION
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
