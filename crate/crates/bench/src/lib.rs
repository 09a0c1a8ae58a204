//! Fixtures shared by the benchmarks.

use sdrep_core::{convex_hull_union, SDRep, SymMat};

/// `[[x, 1], [1, y]] ⪰ 0`.
pub fn hyperbola() -> SDRep {
    SDRep::spectrahedron(
        SymMat::unit(2, 0, 1),
        vec![SymMat::unit(2, 0, 0), SymMat::unit(2, 1, 1)],
    )
    .expect("valid")
}

/// The origin of the plane as `diag(x, −x, y, −y) ⪰ 0`.
pub fn origin() -> SDRep {
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
    .expect("valid")
}

/// Closed convex hull representation of the two sets above (k = 14, m = 5).
pub fn convhull() -> SDRep {
    convex_hull_union(&[hyperbola(), origin()]).expect("same ambient dimension")
}

/// A dense, deterministic symmetric matrix with entries in `[-1, 1]`.
pub fn dense_matrix(k: usize) -> SymMat {
    SymMat::from_upper_fn(k, |i, j| ((i * 31 + j * 17 + 7) as f64).sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_sizes() {
        let c = convhull();
        assert_eq!((c.k(), c.n(), c.m()), (14, 2, 5));
        assert_eq!(dense_matrix(5).dim(), 5);
    }
}
