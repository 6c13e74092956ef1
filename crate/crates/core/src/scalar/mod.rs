//! Exact scalars: Gaussian rationals, polynomials, rational functions,
//! truncated series and grid certification of rational identities.

pub mod certify;
pub mod gauss;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod series;

pub use certify::{certify_on_grid, certify_on_grid_avoiding, identity_certify, univariate_zeros, CertifyError, GridCertificate, PointOutcome, Witness};
pub use gauss::GaussRat;
pub use poly::{Monomial, Poly};
pub use ratfun::RatFun;
pub use rational::{ParseRationalError, Rational};
pub use series::{series_invert, Coeff, SeriesError, TruncSeries};
