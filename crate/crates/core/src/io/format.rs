//! Line-oriented text formats.
//!
//! Persuasion instance (`.ppi`):
//!
//! ```text
//! # comment
//! world <label> <p/q>              one per world, in index order
//! event <name> excludes <label>*   one per event, listing the worlds it leaves out
//! goal <label>*                    worlds of the goal
//! threshold <p/q>
//! ```
//!
//! Exact cover instance (`.eci`):
//!
//! ```text
//! universe <n>
//! set <name> <element>+            elements in 1..=n
//! ```
//!
//! Blank lines and `#` comments are ignored. Labels and names are single
//! whitespace-free tokens. Rendering is canonical, so
//! `parse(render(x)) == x` and rendering is byte-stable.

use std::collections::HashMap;
use std::fmt::Write;

use crate::cover::{ExactCoverInstance, Subset};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::reduction::{ReductionArtifact, WorldRole};
use crate::space::{Event, PersuasionInstance, ProbabilitySpace, WorldSet};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_rational(line: usize, token: &str) -> Result<Rational> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected a rational p/q, found {token:?}")))
}

pub fn render_ppi(inst: &PersuasionInstance) -> String {
    let space = inst.space();
    let label = |w: usize| space.worlds()[w].label.as_str();
    let mut out = String::new();
    for w in space.worlds() {
        writeln!(out, "world {} {}", w.label, space.prob(w.index)).unwrap();
    }
    for e in space.events() {
        write!(out, "event {} excludes", e.name).unwrap();
        for w in e.set.complement().iter() {
            write!(out, " {}", label(w)).unwrap();
        }
        out.push('\n');
    }
    out.push_str("goal");
    for w in inst.goal().iter() {
        write!(out, " {}", label(w)).unwrap();
    }
    out.push('\n');
    writeln!(out, "threshold {}", inst.threshold()).unwrap();
    out
}

/// Parses a persuasion instance and validates it; probabilities must be in
/// `[0, 1]` and sum to exactly one.
pub fn parse_ppi(text: &str) -> Result<PersuasionInstance> {
    let mut worlds: Vec<(String, Rational)> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut pending_events: Vec<(usize, String, Vec<usize>)> = Vec::new();
    let mut goal: Option<Vec<usize>> = None;
    let mut threshold: Option<Rational> = None;
    let mut last_line = 0;

    for (line, tokens) in content_lines(text) {
        last_line = line;
        let lookup = |label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| syntax(line, format!("unknown world {label:?}")))
        };
        match tokens[0] {
            "world" => {
                if !pending_events.is_empty() || goal.is_some() {
                    return Err(syntax(line, "world lines must precede events and goal"));
                }
                let [_, label, p] = tokens[..] else {
                    return Err(syntax(line, "expected: world <label> <p/q>"));
                };
                if index.insert(label.to_string(), worlds.len()).is_some() {
                    return Err(syntax(line, format!("duplicate world {label:?}")));
                }
                worlds.push((label.to_string(), parse_rational(line, p)?));
            }
            "event" => {
                if tokens.len() < 3 || tokens[2] != "excludes" {
                    return Err(syntax(line, "expected: event <name> excludes <label>*"));
                }
                let excluded = tokens[3..]
                    .iter()
                    .map(|t| lookup(t))
                    .collect::<Result<Vec<_>>>()?;
                pending_events.push((line, tokens[1].to_string(), excluded));
            }
            "goal" => {
                if goal.is_some() {
                    return Err(syntax(line, "duplicate goal line"));
                }
                goal = Some(
                    tokens[1..]
                        .iter()
                        .map(|t| lookup(t))
                        .collect::<Result<_>>()?,
                );
            }
            "threshold" => {
                if threshold.is_some() {
                    return Err(syntax(line, "duplicate threshold line"));
                }
                let [_, t] = tokens[..] else {
                    return Err(syntax(line, "expected: threshold <p/q>"));
                };
                threshold = Some(parse_rational(line, t)?);
            }
            other => return Err(syntax(line, format!("unknown directive {other:?}"))),
        }
    }

    let width = worlds.len();
    let goal = goal.ok_or_else(|| syntax(last_line, "missing goal line"))?;
    let threshold = threshold.ok_or_else(|| syntax(last_line, "missing threshold line"))?;
    let events = pending_events
        .into_iter()
        .map(|(_, name, excluded)| {
            Event::new(name, WorldSet::from_indices(width, excluded).complement())
        })
        .collect();
    let space = ProbabilitySpace::new(worlds, events)?;
    PersuasionInstance::new(space, WorldSet::from_indices(width, goal), threshold)
}

pub fn render_eci(eci: &ExactCoverInstance) -> String {
    let mut out = format!("universe {}\n", eci.universe_size());
    for s in eci.subsets() {
        out.push_str("set ");
        out.push_str(&s.name);
        for e in s.elements() {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses an exact cover instance; subsets must be non-empty, distinct and
/// cover the universe.
pub fn parse_eci(text: &str) -> Result<ExactCoverInstance> {
    let mut universe: Option<usize> = None;
    let mut subsets = Vec::new();
    let mut last_line = 0;
    for (line, tokens) in content_lines(text) {
        last_line = line;
        match tokens[0] {
            "universe" => {
                if universe.is_some() {
                    return Err(syntax(line, "duplicate universe line"));
                }
                let [_, n] = tokens[..] else {
                    return Err(syntax(line, "expected: universe <n>"));
                };
                universe = Some(
                    n.parse()
                        .map_err(|_| syntax(line, format!("bad universe size {n:?}")))?,
                );
            }
            "set" => {
                if universe.is_none() {
                    return Err(syntax(line, "set line before universe line"));
                }
                if tokens.len() < 2 {
                    return Err(syntax(line, "expected: set <name> <element>+"));
                }
                let elements = tokens[2..]
                    .iter()
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| syntax(line, format!("bad element {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut sorted = elements.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != elements.len() {
                    return Err(syntax(line, "repeated element in set"));
                }
                subsets.push(Subset::new(tokens[1], elements));
            }
            other => return Err(syntax(line, format!("unknown directive {other:?}"))),
        }
    }
    let n = universe.ok_or_else(|| syntax(last_line, "missing universe line"))?;
    ExactCoverInstance::new(n, subsets)
}

/// Role metadata for a reduced instance: parameters, the role of every
/// world, and which event each subset became.
pub fn render_roles(art: &ReductionArtifact) -> String {
    let p = art.params();
    let mut out = String::new();
    writeln!(out, "param n {}", p.n).unwrap();
    writeln!(out, "param k {}", p.k).unwrap();
    writeln!(out, "param m {}", p.m).unwrap();
    writeln!(out, "param x {}", p.x).unwrap();
    writeln!(out, "param y {}", p.y).unwrap();
    writeln!(out, "param z {}", p.z).unwrap();
    writeln!(out, "param tau {}", p.tau).unwrap();
    let space = art.instance().space();
    for (w, role) in art.roles().iter().enumerate() {
        let label = &space.worlds()[w].label;
        match role {
            WorldRole::W0 => writeln!(out, "role {label} W0"),
            WorldRole::X0 => writeln!(out, "role {label} X0"),
            WorldRole::Y { subset, element } => {
                writeln!(out, "role {label} Y {} {element}", subset + 1)
            }
            WorldRole::Z { element } => writeln!(out, "role {label} Z {element}"),
        }
        .unwrap();
    }
    for (i, s) in art.source().subsets().iter().enumerate() {
        let event = &space.events()[art.event_of_subset(i)].name;
        writeln!(out, "subset {} event {event}", s.name).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::reduce;
    use crate::space::Observation;

    const WORKED_ECI: &str = "universe 2\nset A1 1\nset A2 2\nset A3 1 2\n";

    fn worked() -> ExactCoverInstance {
        ExactCoverInstance::from_sets(2, vec![vec![1], vec![2], vec![1, 2]]).unwrap()
    }

    #[test]
    fn eci_fixture_parses_to_worked_instance() {
        assert_eq!(parse_eci(WORKED_ECI).unwrap(), worked());
        assert_eq!(render_eci(&worked()), WORKED_ECI);
        let with_noise =
            "# worked\n\nuniverse 2   # two elements\nset A1 1\nset A2 2\nset A3 2 1\n";
        assert_eq!(parse_eci(with_noise).unwrap(), worked());
    }

    #[test]
    fn worked_reduction_renders_canonically() {
        let text = render_ppi(reduce(&worked()).instance());
        assert_eq!(
            text,
            "world W0 1/3\n\
             world X0 1/3\n\
             world Y_1_1 1/60\n\
             world Y_2_2 1/60\n\
             world Y_3_1 1/60\n\
             world Y_3_2 1/60\n\
             world Z_1 2/15\n\
             world Z_2 2/15\n\
             event F1 excludes Y_1_1 Z_1\n\
             event F2 excludes Y_2_2 Z_2\n\
             event F3 excludes Y_3_1 Y_3_2 Z_1 Z_2\n\
             goal W0 Y_1_1 Y_2_2 Y_3_1 Y_3_2\n\
             threshold 11/21\n"
        );
        let back = parse_ppi(&text).unwrap();
        assert_eq!(&back, reduce(&worked()).instance());
        assert_eq!(
            back.posterior(&Observation::new([0, 2]))
                .unwrap()
                .to_string(),
            "21/41"
        );
    }

    #[test]
    fn normalization_violation_on_load() {
        // Z_2 lowered by 1/60: total 59/60
        let text =
            render_ppi(reduce(&worked()).instance()).replace("world Z_2 2/15", "world Z_2 7/60");
        match parse_ppi(&text) {
            Err(Error::InvalidSpace(v)) => {
                assert_eq!(v.len(), 1);
                assert_eq!(v[0].kind(), "NormalizationViolation");
                assert!(v[0].to_string().contains("59/60"));
            }
            other => panic!("expected normalization violation, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let cases = [
            ("world a 1/1\nevent f includes a\ngoal a\nthreshold 1\n", 2),
            ("world a 1/1\ngoal b\nthreshold 1\n", 2),
            ("world a 1/x\ngoal a\nthreshold 1\n", 1),
            ("world a 1/1\ngoal a\n", 2),
            ("world a 1/1\nthreshold 1\n", 2),
            ("world a 1/1\nworld a 0/1\ngoal a\nthreshold 1\n", 2),
            ("world a 1/1\ngoal a\nworld b 0/1\nthreshold 1\n", 3),
            ("world a 1/1\ngoal a\ngoal a\nthreshold 1\n", 3),
            ("bogus\n", 1),
        ];
        for (text, expected) in cases {
            match parse_ppi(text) {
                Err(Error::Syntax { line, .. }) => assert_eq!(line, expected, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        let cases = [
            ("set A1 1\n", 1),
            ("universe x\n", 1),
            ("universe 2\nset A1 1 1\n", 2),
            ("universe 2\nset A1 one\n", 2),
            ("universe 2\nuniverse 2\n", 2),
            ("", 0),
        ];
        for (text, expected) in cases {
            match parse_eci(text) {
                Err(Error::Syntax { line, .. }) => assert_eq!(line, expected, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn eci_semantic_errors() {
        assert!(matches!(
            parse_eci("universe 3\nset A1 1 2\n"),
            Err(Error::InvalidEci(_))
        ));
        assert!(matches!(
            parse_eci("universe 1\nset A1\n"),
            Err(Error::InvalidEci(_))
        ));
        assert!(matches!(
            parse_eci("universe 1\nset A1 1\nset A2 1\n"),
            Err(Error::InvalidEci(_))
        ));
    }

    #[test]
    fn roles_sidecar() {
        let text = render_roles(&reduce(&worked()));
        assert!(text.starts_with("param n 2\nparam k 3\nparam m 4\nparam x 1/3\nparam y 1/60\nparam z 2/15\nparam tau 11/21\n"));
        assert!(text.contains("role W0 W0\nrole X0 X0\nrole Y_1_1 Y 1 1\n"));
        assert!(text.contains("role Z_2 Z 2\n"));
        assert!(text.ends_with("subset A3 event F3\n"));
    }
}
