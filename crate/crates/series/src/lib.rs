//! Series arithmetic and curve-side procedures for computing and checking
//! Belyi maps: hyperelliptic models, Riemann–Roch bases, local expansions on
//! elliptic curves, Newton refinement, rescaling and ramification checks.

pub mod complex;
pub mod error;
pub mod field;

pub use complex::BigComplex;
pub use error::{Result, SeriesError};
pub use field::{Dual, Field};
pub mod series;
pub use series::TruncatedSeries;
pub mod poly;
pub use poly::Poly;
pub mod linalg;
pub mod local;
pub mod hyperelliptic;
pub mod io;
pub mod model;
pub mod newton;
pub mod rescale;
pub mod verify;
pub use model::{rr_basis, rr_pole_bound, CurveFunction, EllipticModel, HyperellipticModel, Parity};

