#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdrep_core::{Point, SDRep, SymMat};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_sym(rng: &mut impl Rng, k: usize, amp: f64) -> SymMat {
    SymMat::from_upper_fn(k, |_, _| rng.gen_range(-amp..=amp))
}

pub fn random_rep(rng: &mut impl Rng, k: usize, n: usize, m: usize) -> SDRep {
    let a = random_sym(rng, k, 2.0);
    let b = (0..n).map(|_| random_sym(rng, k, 2.0)).collect();
    let c = (0..m).map(|_| random_sym(rng, k, 2.0)).collect();
    SDRep::new(a, b, c).unwrap()
}

pub fn random_point(rng: &mut impl Rng, n: usize, half_width: f64) -> Point {
    Point(
        (0..n)
            .map(|_| rng.gen_range(-half_width..=half_width))
            .collect(),
    )
}

/// Rejection-samples members of a plain spectrahedron (m = 0) from the box.
pub fn sample_members(
    rep: &SDRep,
    rng: &mut impl Rng,
    half_width: f64,
    want: usize,
    tries: usize,
) -> Vec<Point> {
    assert_eq!(rep.m(), 0);
    let mut out = Vec::new();
    for _ in 0..tries {
        let p = random_point(rng, rep.n(), half_width);
        if rep.pencil_at(&p).unwrap().lambda_min() >= 0.0 {
            out.push(p);
            if out.len() == want {
                break;
            }
        }
    }
    out
}

/// Random plain spectrahedron in ℝⁿ with at least `want` sampled members.
pub fn random_nonempty_spectrahedron(
    rng: &mut impl Rng,
    n: usize,
    max_k: usize,
    half_width: f64,
    want: usize,
) -> (SDRep, Vec<Point>) {
    loop {
        let k = rng.gen_range(1..=max_k);
        let rep = random_rep(rng, k, n, 0);
        let members = sample_members(&rep, rng, half_width, want, 400);
        if members.len() == want {
            return (rep, members);
        }
    }
}

pub fn hyperbola() -> SDRep {
    SDRep::spectrahedron(
        SymMat::unit(2, 0, 1),
        vec![SymMat::unit(2, 0, 0), SymMat::unit(2, 1, 1)],
    )
    .unwrap()
}

pub fn origin2() -> SDRep {
    SDRep::with_layout(
        SymMat::zeros(4),
        vec![
            SymMat::diag(&[1.0, -1.0, 0.0, 0.0]),
            SymMat::diag(&[0.0, 0.0, 1.0, -1.0]),
        ],
        vec![],
        vec![1, 1, 1, 1],
        None,
    )
    .unwrap()
}

/// `{x ∈ ℝ : x ≥ c}`
pub fn ray_from(c: f64) -> SDRep {
    SDRep::spectrahedron(SymMat::diag(&[-c]), vec![SymMat::diag(&[1.0])]).unwrap()
}

/// `{x ∈ ℝ : x ≤ c}`
pub fn ray_to(c: f64) -> SDRep {
    SDRep::spectrahedron(SymMat::diag(&[c]), vec![SymMat::diag(&[-1.0])]).unwrap()
}
