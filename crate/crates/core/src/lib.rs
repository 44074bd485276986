//! Exact deciders and verification tools for the Persuasion problem: pick a
//! subset of known facts so that the posterior probability of a goal event
//! reaches a threshold.
//!
//! * [`space`] holds the probability model and the exact posterior.
//! * [`solvers`] decides Persuasion by enumeration, the threshold-one case
//!   in polynomial time, and Exact Cover by enumeration or dancing links.
//! * [`reduction`] maps Exact Cover to Persuasion and checks, observation
//!   by observation, that the mapping preserves solvability.
//! * [`io`] reads and writes instance files and generates seeded instances.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod cover;
pub mod error;
pub mod io;
pub mod rational;
pub mod reduction;
pub mod solvers;
pub mod space;
pub mod sweep;

pub use cover::{verify_cover, ExactCoverInstance, Subset};
pub use error::{Error, Result};
pub use rational::Rational;
pub use reduction::{
    back_map, forward_map, profile, reduce, verify_reduction, Check, ObservationProfile,
    ReductionArtifact, ReductionParams, VerificationReport, WorldRole,
};
pub use solvers::{
    brute_force_persuasion, exact_cover_brute, exact_cover_dlx, exact_cover_dlx_count,
    strong_inclusion_holds, strong_persuasion_general, strong_persuasion_standard, CoverVerdict,
    PersuasionVerdict,
};
pub use space::{
    event_mass, intersect, is_solution, posterior, validate_space, Event, Observation,
    PersuasionInstance, ProbabilitySpace, Violation, WorldId, WorldSet,
};
pub use sweep::{SweepConfig, DEFAULT_CAP};
