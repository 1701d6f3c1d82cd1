//! Small 1-D solvers shared by the interval constructions.

use crate::error::{Error, Result};

/// Bisection for a sign change of `f` on `[lo, hi]`. Stops when the bracket
/// is narrower than `tol` (relative to `max(1, |x|)`) or after `max_iter`
/// halvings, whichever comes first.
pub(crate) fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::Convergence(format!(
            "root not bracketed on [{lo}, {hi}]: f = {f_lo}, {f_hi}"
        )));
    }
    let lo_negative = f_lo < 0.0;
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || (hi - lo) <= tol * mid.abs().max(1.0) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bisection on a predicate that is true at `yes` and false at `no`; returns
/// the last point known to satisfy it once `|yes - no| <= tol`.
pub(crate) fn bisect_boundary<P>(mut pred: P, mut yes: f64, mut no: f64, tol: f64, max_iter: usize) -> Result<f64>
where
    P: FnMut(f64) -> Result<bool>,
{
    for _ in 0..max_iter {
        if (yes - no).abs() <= tol {
            break;
        }
        let mid = 0.5 * (yes + no);
        if pred(mid)? {
            yes = mid;
        } else {
            no = mid;
        }
    }
    Ok(yes)
}

/// Maximise `f` on `[lo, hi]`: a uniform pre-scan picks the best of
/// `scan_points` samples and golden-section search refines inside the
/// neighbouring cells. Returns `(argmax, max)`.
pub(crate) fn maximize<F>(mut f: F, lo: f64, hi: f64, scan_points: usize, tol: f64, max_iter: usize) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    debug_assert!(hi >= lo && scan_points >= 2);
    let h = (hi - lo) / (scan_points - 1) as f64;
    let mut best = (lo, f(lo));
    for i in 1..scan_points {
        let x = lo + i as f64 * h;
        let v = f(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    if h == 0.0 {
        return best;
    }
    let mut a = (best.0 - h).max(lo);
    let mut d = (best.0 + h).min(hi);
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut b = d - INV_PHI * (d - a);
    let mut c = a + INV_PHI * (d - a);
    let mut fb = f(b);
    let mut fc = f(c);
    for _ in 0..max_iter {
        if (d - a) <= tol * b.abs().max(1.0) {
            break;
        }
        if fb > fc {
            d = c;
            c = b;
            fc = fb;
            b = d - INV_PHI * (d - a);
            fb = f(b);
        } else {
            a = b;
            b = c;
            fb = fc;
            c = a + INV_PHI * (d - a);
            fc = f(c);
        }
    }
    let (x, v) = if fb > fc { (b, fb) } else { (c, fc) };
    if v > best.1 {
        (x, v)
    } else {
        best
    }
}
