//! Certification of rational identities by evaluation on product grids.
//!
//! A polynomial of degree at most `b_k` in variable `k` that vanishes on a
//! product grid with `b_k + 1` distinct values in each coordinate is zero.
//! Callers clear denominators in their bound. Values at which a
//! one-variable denominator vanishes are skipped; any other singular point
//! moves the whole grid upward.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::gauss::GaussRat;
use super::poly::Poly;
use super::ratfun::RatFun;

const MAX_ATTEMPTS: usize = 64;

/// Result of comparing both sides at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub enum PointOutcome {
    Agree,
    Disagree(String),
    /// A denominator vanishes at this point.
    Singular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub point: Vec<GaussRat>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridCertificate {
    pub holds: bool,
    pub points_checked: usize,
    pub bounds: Vec<u32>,
    /// Number of grid shifts needed to dodge singular points.
    pub shifts: usize,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("no singularity-free grid found after {0} shifts")]
    GridExhausted(usize),
    #[error("degree in variable {var} is {needed}, above the bound {bound}")]
    DegreeBoundTooSmall { var: usize, needed: u32, bound: u32 },
}

/// Per-variable grid values for shift `attempt`. Variable `k` of `nv` takes
/// the positive integers congruent to `k + 1` mod `nv`, so coordinates never
/// coincide or cancel, and values with `avoid(k, x)` are skipped. Small
/// values keep the arithmetic on machine words.
pub fn grid_values(bounds: &[u32], attempt: usize, avoid: &dyn Fn(usize, &GaussRat) -> bool) -> Vec<Vec<GaussRat>> {
    let nv = bounds.len();
    let width = bounds.iter().map(|b| *b as usize + 1).max().unwrap_or(1);
    let start = (attempt * nv * width) as i64;
    (0..nv)
        .map(|k| (0..).map(|j| GaussRat::from_int(start + 1 + k as i64 + (nv as i64) * j)).filter(|x| !avoid(k, x)).take(bounds[k] as usize + 1).collect())
        .collect()
}

/// Zeros of the denominators that involve a single variable, as a filter
/// for [`grid_values`].
pub fn univariate_zeros<'a>(nv: usize, dens: &'a [&'a Poly]) -> impl Fn(usize, &GaussRat) -> bool + 'a {
    move |k, x| {
        dens.iter().any(|d| {
            (0..nv).all(|j| j == k || d.degree_in(j) == 0) && {
                let mut pt = alloc::vec![GaussRat::zero(); nv];
                pt[k] = x.clone();
                d.eval(&pt).is_zero()
            }
        })
    }
}

/// Runs `check` on every point of a product grid with `bounds[k] + 1`
/// values in coordinate `k`, stopping at the first disagreement.
pub fn certify_on_grid(bounds: &[u32], check: impl FnMut(&[GaussRat]) -> PointOutcome) -> Result<GridCertificate, CertifyError> {
    certify_on_grid_avoiding(bounds, &|_, _| false, check)
}

/// [`certify_on_grid`] with coordinate values filtered by `avoid`.
pub fn certify_on_grid_avoiding(
    bounds: &[u32],
    avoid: &dyn Fn(usize, &GaussRat) -> bool,
    mut check: impl FnMut(&[GaussRat]) -> PointOutcome,
) -> Result<GridCertificate, CertifyError> {
    'attempt: for attempt in 0..MAX_ATTEMPTS {
        let values = grid_values(bounds, attempt, avoid);
        let total: usize = values.iter().map(Vec::len).product();
        let mut idx = alloc::vec![0usize; bounds.len()];
        for n in 0..total {
            let point: Vec<GaussRat> = idx.iter().enumerate().map(|(k, i)| values[k][*i].clone()).collect();
            match check(&point) {
                PointOutcome::Agree => {}
                PointOutcome::Singular => continue 'attempt,
                PointOutcome::Disagree(detail) => {
                    return Ok(GridCertificate {
                        holds: false,
                        points_checked: n + 1,
                        bounds: bounds.to_vec(),
                        shifts: attempt,
                        witness: Some(Witness { point, detail }),
                    })
                }
            }
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < values[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
        return Ok(GridCertificate { holds: true, points_checked: total, bounds: bounds.to_vec(), shifts: attempt, witness: None });
    }
    Err(CertifyError::GridExhausted(MAX_ATTEMPTS))
}

/// Decides `f == g` by evaluating `num_f den_g - num_g den_f`. `bound` is the
/// claimed per-variable degree bound of that numerator; it is checked
/// against the actual degrees before the grid is used.
pub fn identity_certify(f: &RatFun, g: &RatFun, bound: u32) -> Result<GridCertificate, CertifyError> {
    let nv = f.nvars();
    assert_eq!(nv, g.nvars());
    for k in 0..nv {
        let needed = (f.num().degree_in(k) + g.den().degree_in(k)).max(g.num().degree_in(k) + f.den().degree_in(k));
        if needed > bound {
            return Err(CertifyError::DegreeBoundTooSmall { var: k, needed, bound });
        }
    }
    let bounds = alloc::vec![bound; nv];
    let dens = [f.den(), g.den()];
    let avoid = univariate_zeros(nv, &dens);
    let cert = certify_on_grid_avoiding(&bounds, &avoid, |pt| {
        let (df, dg) = (f.den().eval(pt), g.den().eval(pt));
        if df.is_zero() || dg.is_zero() {
            return PointOutcome::Singular;
        }
        let lhs = &f.num().eval(pt) * &dg;
        let rhs = &g.num().eval(pt) * &df;
        if lhs == rhs {
            PointOutcome::Agree
        } else {
            PointOutcome::Disagree(format!("{} != {}", &lhs / &(&df * &dg), &rhs / &(&df * &dg)))
        }
    });
    cert
}
