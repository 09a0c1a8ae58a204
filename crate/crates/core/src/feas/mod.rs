//! Numerical membership oracle.
//!
//! A point `x` belongs to a representation when some lifted vector `z`
//! makes the pencil PSD. The oracle approximates
//!
//! ```text
//! λ*(x) = sup_{‖z‖∞ ≤ radius} λ_min(A + Σ xᵢBᵢ + Σ zⱼCⱼ)
//! ```
//!
//! which is a concave maximization, and classifies the point by the sign of
//! the best value found. The search has two stages: projected gradient
//! ascent on a log-sum-exp smoothing of `λ_min` with continuation in the
//! smoothing parameter, then a log-barrier Newton polish that also produces
//! a dual upper bound.

mod barrier;
mod grid;
mod pencil;
mod smoothing;

pub use grid::{grid_feasibility, GridVerdict, GRID_MAX_LIFTED, GRID_PSD_SLACK};
pub use pencil::LiftedPencil;
pub use smoothing::{smoothed_min, surrogate, SmoothingSchedule, Surrogate};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sdr::{Point, SDRep};

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_RADIUS: f64 = 1e6;
pub const DEFAULT_SEED: u64 = 0;

/// Fraction of the radius beyond which a witness coordinate counts as
/// touching the box.
const RADIUS_HIT_FRACTION: f64 = 1.0 - 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// `margin > tol`.
    StrictlyFeasible,
    /// `|margin| ≤ tol`, or a negative margin that the box may be hiding
    /// (see [`classify`]).
    EpsFeasible,
    /// `margin < −tol`, confirmed by the dual bound or an interior optimum.
    EpsInfeasible,
}

impl Status {
    pub fn is_member(self) -> bool {
        !matches!(self, Status::EpsInfeasible)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::StrictlyFeasible => "StrictlyFeasible",
            Status::EpsFeasible => "EpsFeasible",
            Status::EpsInfeasible => "EpsInfeasible",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub status: Status,
    /// `λ_min` of the pencil at the witness.
    pub margin: f64,
    pub witness: Vec<f64>,
    /// Certified upper bound on `λ*` within the box.
    pub upper_bound: f64,
    pub iterations: usize,
    pub radius_hit: bool,
    /// `false` when an iteration cap ended the search.
    pub converged: bool,
}

/// Result of the inner maximization.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaStar {
    /// `λ_min(pencil(x, z))`, recomputed at `z`.
    pub value: f64,
    pub z: Vec<f64>,
    pub upper_bound: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOptions {
    pub tol: f64,
    pub radius: f64,
    pub seed: u64,
    pub schedule: SmoothingSchedule,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            tol: DEFAULT_TOL,
            radius: DEFAULT_RADIUS,
            seed: DEFAULT_SEED,
            schedule: SmoothingSchedule::default(),
        }
    }
}

impl OracleOptions {
    pub fn new(tol: f64, radius: f64) -> Self {
        OracleOptions {
            tol,
            radius,
            ..Default::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Membership query with the default seed and smoothing schedule.
pub fn membership(rep: &SDRep, x: &Point, tol: f64, radius: f64) -> Result<FeasibilityReport> {
    membership_with(rep, x, &OracleOptions::new(tol, radius))
}

pub fn membership_with(rep: &SDRep, x: &Point, opts: &OracleOptions) -> Result<FeasibilityReport> {
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    let pencil = LiftedPencil::from_rep(rep, x)?;
    let star = solve(&pencil, opts.radius, &opts.schedule, opts.seed)?;
    let radius_hit = star
        .z
        .iter()
        .any(|v| v.abs() >= RADIUS_HIT_FRACTION * opts.radius);
    let status = classify(star.value, star.upper_bound, radius_hit, opts.tol);
    Ok(FeasibilityReport {
        status,
        margin: star.value,
        witness: star.z,
        upper_bound: star.upper_bound,
        iterations: star.iterations,
        radius_hit,
        converged: star.converged,
    })
}

/// Three-way classification of a margin.
///
/// A margin below `−tol` is reported as infeasible only if the dual bound
/// is also below `−tol` or the witness stayed inside the box. Otherwise a
/// larger radius might still reach feasibility and the point is reported as
/// `EpsFeasible`.
pub fn classify(margin: f64, upper_bound: f64, radius_hit: bool, tol: f64) -> Status {
    if margin > tol {
        Status::StrictlyFeasible
    } else if margin >= -tol {
        Status::EpsFeasible
    } else if upper_bound < -tol || !radius_hit {
        Status::EpsInfeasible
    } else {
        Status::EpsFeasible
    }
}

/// Inner solver with the default seed.
pub fn lambda_star(
    rep: &SDRep,
    x: &Point,
    radius: f64,
    schedule: &SmoothingSchedule,
) -> Result<LambdaStar> {
    let pencil = LiftedPencil::from_rep(rep, x)?;
    solve(&pencil, radius, schedule, DEFAULT_SEED)
}

/// Maximizes `λ_min(M(z))` over `‖z‖∞ ≤ radius`.
pub fn solve(
    pencil: &LiftedPencil,
    radius: f64,
    schedule: &SmoothingSchedule,
    seed: u64,
) -> Result<LambdaStar> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::InvalidArgument(
            "radius must be positive and finite".into(),
        ));
    }
    let m = pencil.m();
    if m == 0 {
        let eig = pencil.base().eigen();
        return Ok(LambdaStar {
            value: eig.values[0],
            z: Vec::new(),
            upper_bound: eig.values[0],
            iterations: 1,
            converged: true,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spread = radius.min(1.0);
    let restart: Vec<f64> = (0..m).map(|_| rng.gen_range(-spread..=spread)).collect();

    let from_zero = smoothing::ascend(pencil, &vec![0.0; m], radius, schedule);
    let from_random = smoothing::ascend(pencil, &restart, radius, schedule);
    let mut iterations = from_zero.iterations + from_random.iterations;
    let warm = if from_random.best_value > from_zero.best_value {
        &from_random
    } else {
        &from_zero
    };

    let polished = barrier::polish(pencil, &warm.best_z, radius);
    iterations += polished.iterations;

    let (value, z) = if polished.best_value >= warm.best_value {
        (polished.best_value, polished.best_z)
    } else {
        (warm.best_value, warm.best_z.clone())
    };

    let mut upper_bound = f64::INFINITY;
    let witness_dir = pencil.at(&z).eigen().weighted_projector(
        &std::iter::once(1.0)
            .chain(std::iter::repeat_n(0.0, pencil.k() - 1))
            .collect::<Vec<_>>(),
    );
    for w in [
        Some(&witness_dir),
        polished.dual.as_ref(),
        warm.last_weight.as_ref(),
    ]
    .into_iter()
    .flatten()
    {
        upper_bound = upper_bound.min(pencil.dual_bound(w, radius));
    }
    // Rounding can push the bound a hair under the value it certifies.
    upper_bound = upper_bound.max(value);

    Ok(LambdaStar {
        value,
        z,
        upper_bound,
        iterations,
        converged: polished.converged,
    })
}
