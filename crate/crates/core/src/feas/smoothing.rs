//! Log-sum-exp smoothing of the smallest eigenvalue.
//!
//! `f_β(z) = −(1/β) log Σᵢ exp(−β λᵢ(M(z)))` is concave and smooth, and
//! satisfies `f_β ≤ λ_min ≤ f_β + (log k)/β`. Its gradient is
//! `∂f_β/∂zⱼ = ⟨W, Cⱼ⟩` where `W = Σᵢ wᵢ vᵢvᵢᵀ` with softmax weights
//! `wᵢ ∝ exp(−β λᵢ)`.

use super::pencil::LiftedPencil;
use crate::symcore::SymMat;

/// Continuation schedule for the smoothed ascent.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothingSchedule {
    /// Increasing smoothing parameters, one stage each.
    pub betas: Vec<f64>,
    /// Gradient steps per stage (upper bound; stages stop early on stall).
    pub steps_per_stage: usize,
    /// Armijo backtracking factor.
    pub backtrack: f64,
    /// Armijo sufficient-increase constant.
    pub armijo: f64,
}

impl Default for SmoothingSchedule {
    fn default() -> Self {
        SmoothingSchedule {
            betas: vec![1.0, 10.0, 100.0, 1000.0],
            steps_per_stage: 500,
            backtrack: 0.5,
            armijo: 1e-4,
        }
    }
}

/// Value of `f_β` for a single matrix.
pub fn smoothed_min(m: &SymMat, beta: f64) -> f64 {
    let values = m.eigenvalues();
    soft_min(&values, beta)
}

fn soft_min(values: &[f64], beta: f64) -> f64 {
    let lo = values[0];
    let s: f64 = values.iter().map(|v| (-beta * (v - lo)).exp()).sum();
    lo - s.ln() / beta
}

/// `f_β` together with its gradient at one point.
#[derive(Debug, Clone)]
pub struct Surrogate {
    pub value: f64,
    pub lambda_min: f64,
    pub gradient: Vec<f64>,
    /// The softmax-weighted projector; PSD with unit trace.
    pub weight: SymMat,
}

pub fn surrogate(pencil: &LiftedPencil, z: &[f64], beta: f64) -> Surrogate {
    let eig = pencil.at(z).eigen();
    let lo = eig.values[0];
    let raw: Vec<f64> = eig
        .values
        .iter()
        .map(|v| (-beta * (v - lo)).exp())
        .collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw
        .iter()
        .map(|w| {
            let w = w / total;
            // Drop contributions far below double precision.
            if w < 1e-300 {
                0.0
            } else {
                w
            }
        })
        .collect();
    let weight = eig.weighted_projector(&weights);
    let gradient = pencil.lifted().iter().map(|c| weight.dot(c)).collect();
    Surrogate {
        value: lo - total.ln() / beta,
        lambda_min: lo,
        gradient,
        weight,
    }
}

#[derive(Debug, Clone)]
pub(crate) struct AscentOutcome {
    pub best_z: Vec<f64>,
    pub best_value: f64,
    pub iterations: usize,
    pub last_weight: Option<SymMat>,
}

fn project(z: &mut [f64], radius: f64) {
    for v in z.iter_mut() {
        *v = v.clamp(-radius, radius);
    }
}

/// Projected gradient ascent on `f_β` with continuation over the schedule.
/// Tracks the iterate with the best true `λ_min`.
pub(crate) fn ascend(
    pencil: &LiftedPencil,
    start: &[f64],
    radius: f64,
    schedule: &SmoothingSchedule,
) -> AscentOutcome {
    let mut z = start.to_vec();
    project(&mut z, radius);
    let mut best_z = z.clone();
    let mut best_value = pencil.lambda_min_at(&z);
    let mut iterations = 0;
    let mut last_weight = None;

    for &beta in &schedule.betas {
        let mut current = surrogate(pencil, &z, beta);
        let mut step = 1.0;
        // Progress finer than the surrogate's own resolution is wasted.
        let resolution = 1e-3 / beta;
        let mut window_start = current.value;
        for it in 0..schedule.steps_per_stage {
            iterations += 1;
            let mut accepted = None;
            while step > 1e-18 {
                let mut cand: Vec<f64> = z
                    .iter()
                    .zip(&current.gradient)
                    .map(|(zi, gi)| zi + step * gi)
                    .collect();
                project(&mut cand, radius);
                let ascent: f64 = cand
                    .iter()
                    .zip(&z)
                    .zip(&current.gradient)
                    .map(|((c, zi), g)| (c - zi) * g)
                    .sum();
                if ascent <= 0.0 {
                    break;
                }
                let next = surrogate(pencil, &cand, beta);
                if next.value >= current.value + schedule.armijo * ascent {
                    accepted = Some((cand, next));
                    break;
                }
                step *= schedule.backtrack;
            }
            let Some((cand, next)) = accepted else {
                break;
            };
            z = cand;
            current = next;
            if current.lambda_min > best_value {
                best_value = current.lambda_min;
                best_z.clone_from(&z);
            }
            step = (step * 2.0).min(1e12);
            if it % 10 == 9 {
                if current.value - window_start < resolution {
                    break;
                }
                window_start = current.value;
            }
        }
        last_weight = Some(current.weight);
    }

    AscentOutcome {
        best_z,
        best_value,
        iterations,
        last_weight,
    }
}
