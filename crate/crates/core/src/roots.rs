//! Bracketing root finders for monotone scalar equations.

use crate::{Error, Result};

const MAX_ITER: usize = 500;

fn collapsed(lo: f64, hi: f64) -> bool {
    (hi - lo).abs() <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) || hi - lo <= f64::MIN_POSITIVE
}

/// Root of a continuous `f` with a sign change on `[lo, hi]`, by bisection to
/// full double precision. Returns whichever final endpoint has the smaller
/// residual.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::Numerical(format!(
            "no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}"
        )));
    }
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
        if collapsed(lo, hi) {
            break;
        }
    }
    Ok(if f_lo.abs() <= f_hi.abs() { lo } else { hi })
}

/// Safeguarded Newton iteration for a monotone `f` bracketed by `[lo, hi]`.
///
/// `f_df` returns the value and derivative. Steps leaving the bracket are
/// replaced by the midpoint.
pub(crate) fn newton_bisect(f_df: impl Fn(f64) -> (f64, f64), mut lo: f64, mut hi: f64, x0: f64) -> Result<f64> {
    let (f_lo, _) = f_df(lo);
    let increasing = f_lo < 0.0;
    let mut x = x0.clamp(lo, hi);
    for _ in 0..MAX_ITER {
        let (f, df) = f_df(x);
        if f == 0.0 {
            return Ok(x);
        }
        if f.is_nan() {
            return Err(Error::Numerical(format!("residual is NaN at x = {x}")));
        }
        if (f < 0.0) == increasing {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - f / df;
        let next = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 2.0 * f64::EPSILON * x.abs() || collapsed(lo, hi) {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::Numerical(format!(
        "Newton iteration did not converge near x = {x}"
    )))
}
