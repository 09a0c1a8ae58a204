//! Margin images and rejection sampling over a box.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sdrep_core::{membership_with, OracleOptions, Point, SDRep};

/// Grey level for a margin: `[-1, 1]` maps linearly onto `0..=255`.
pub fn shade(margin: f64) -> u8 {
    let t = (margin.clamp(-1.0, 1.0) + 1.0) / 2.0;
    (t * 255.0).round() as u8
}

/// Margins on a `res × res` grid of pixel centres. Row 0 is the top of the
/// image (largest `y`).
pub fn margins(
    rep: &SDRep,
    xrange: (f64, f64),
    yrange: (f64, f64),
    res: usize,
    opts: &OracleOptions,
) -> sdrep_core::Result<Vec<f64>> {
    if rep.n() != 2 {
        return Err(sdrep_core::Error::DimensionMismatch {
            what: "ambient dimension for rasterizing",
            expected: 2,
            found: rep.n(),
        });
    }
    if res == 0 {
        return Err(sdrep_core::Error::InvalidArgument(
            "resolution must be positive".into(),
        ));
    }
    let px = (xrange.1 - xrange.0) / res as f64;
    let py = (yrange.1 - yrange.0) / res as f64;
    let rows: Vec<sdrep_core::Result<Vec<f64>>> = (0..res)
        .into_par_iter()
        .map(|row| {
            let y = yrange.1 - (row as f64 + 0.5) * py;
            (0..res)
                .map(|col| {
                    let x = xrange.0 + (col as f64 + 0.5) * px;
                    membership_with(rep, &Point::new(vec![x, y]), opts).map(|r| r.margin)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(res * res);
    for r in rows {
        out.extend(r?);
    }
    Ok(out)
}

/// Binary PGM (P5) bytes for a square grid of margins.
pub fn pgm(margins: &[f64], res: usize) -> Vec<u8> {
    let mut out = format!("P5\n{res} {res}\n255\n").into_bytes();
    out.extend(margins.iter().map(|&m| shade(m)));
    out
}

/// Draws uniform points from `bounds` and keeps the members, up to `count`.
/// Gives up after `max_attempts` draws and returns what it has.
pub fn sample(
    rep: &SDRep,
    bounds: &[(f64, f64)],
    count: usize,
    max_attempts: usize,
    seed: u64,
    opts: &OracleOptions,
) -> sdrep_core::Result<Vec<Point>> {
    if bounds.len() != rep.n() {
        return Err(sdrep_core::Error::DimensionMismatch {
            what: "sampling box",
            expected: rep.n(),
            found: bounds.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = Vec::with_capacity(count);
    for _ in 0..max_attempts {
        if found.len() == count {
            break;
        }
        let coords = bounds
            .iter()
            .map(|&(lo, hi)| if lo < hi { rng.gen_range(lo..hi) } else { lo })
            .collect();
        let p = Point::new(coords);
        if membership_with(rep, &p, opts)?.status.is_member() {
            found.push(p);
        }
    }
    Ok(found)
}
