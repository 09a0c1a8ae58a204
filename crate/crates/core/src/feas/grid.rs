use super::pencil::LiftedPencil;
use crate::error::{Error, Result};
use crate::sdr::{Point, SDRep};

/// Largest lifted dimension the exhaustive grid accepts.
pub const GRID_MAX_LIFTED: usize = 6;

/// Threshold under which a grid point counts as PSD.
pub const GRID_PSD_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GridVerdict {
    pub feasible: bool,
    pub best_margin: f64,
    pub best_z: Vec<f64>,
}

/// Exhaustive search of `λ_min(pencil(x, z))` over the uniform grid with
/// `steps_per_axis` points per axis on `[−radius, radius]ᵐ`.
///
/// Ground truth for small instances; cost is `steps_per_axisᵐ`
/// eigenvalue computations.
pub fn grid_feasibility(
    rep: &SDRep,
    x: &Point,
    radius: f64,
    steps_per_axis: usize,
) -> Result<GridVerdict> {
    let m = rep.m();
    if m > GRID_MAX_LIFTED {
        return Err(Error::GridTooLarge {
            lifted: m,
            limit: GRID_MAX_LIFTED,
        });
    }
    if steps_per_axis < 2 {
        return Err(Error::InvalidArgument(
            "steps_per_axis must be at least 2".into(),
        ));
    }
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    let pencil = LiftedPencil::from_rep(rep, x)?;
    let axis: Vec<f64> = (0..steps_per_axis)
        .map(|i| -radius + 2.0 * radius * i as f64 / (steps_per_axis - 1) as f64)
        .collect();

    let mut index = vec![0usize; m];
    let mut z = vec![0.0; m];
    let mut best_margin = f64::NEG_INFINITY;
    let mut best_z = Vec::new();
    loop {
        for (zi, &ii) in z.iter_mut().zip(&index) {
            *zi = axis[ii];
        }
        let margin = pencil.lambda_min_at(&z);
        if margin > best_margin {
            best_margin = margin;
            best_z.clone_from(&z);
        }
        // Odometer increment; done once every digit has wrapped.
        let mut pos = 0;
        loop {
            if pos == m {
                return Ok(GridVerdict {
                    feasible: best_margin >= -GRID_PSD_SLACK,
                    best_margin,
                    best_z,
                });
            }
            index[pos] += 1;
            if index[pos] < steps_per_axis {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
    }
}
