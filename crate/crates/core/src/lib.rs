//! Exact calculus on semidefinite representations.
//!
//! A semidefinite representation ([`SDRep`]) describes a projection of a
//! spectrahedron. This crate builds new representations from old ones
//! (conic hull, homogenization, Minkowski sum, intersection, product and
//! the convex hull of a finite union) and checks membership numerically.
//!
//! ```
//! use sdrep_core::{convex_hull_union, membership, Point, SDRep, Status, SymMat};
//!
//! // { (x, y) : [[x, 1], [1, y]] ⪰ 0 } and the origin.
//! let hyperbola = SDRep::spectrahedron(
//!     SymMat::unit(2, 0, 1),
//!     vec![SymMat::unit(2, 0, 0), SymMat::unit(2, 1, 1)],
//! ).unwrap();
//! let origin = SDRep::spectrahedron(
//!     SymMat::zeros(4),
//!     vec![SymMat::diag(&[1.0, -1.0, 0.0, 0.0]), SymMat::diag(&[0.0, 0.0, 1.0, -1.0])],
//! ).unwrap();
//! let hull = convex_hull_union(&[hyperbola, origin]).unwrap();
//! let report = membership(&hull, &Point(vec![0.25, 0.25]), 1e-6, 1e6).unwrap();
//! assert_ne!(report.status, Status::EpsInfeasible);
//! ```

pub mod error;
pub mod feas;
pub mod sdr;
pub mod symcore;

pub use error::{Error, Result};
pub use feas::{
    classify, grid_feasibility, lambda_star, membership, membership_with, FeasibilityReport,
    GridVerdict, LambdaStar, LiftedPencil, OracleOptions, SmoothingSchedule, Status,
    DEFAULT_RADIUS, DEFAULT_SEED, DEFAULT_TOL,
};
pub use sdr::{
    cone_hull, convex_hull_union, homogenize, intersection, minkowski_sum, minkowski_sum_all,
    pencil_eval, product, slice_last_at_one, Labels, Point, SDRep,
};
pub use symcore::{block_diag, is_psd, lambda_min, SymEigen, SymMat};
