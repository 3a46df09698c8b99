use crate::error::{Error, Result};

/// Denominators beyond this are treated as a precision failure.
const MAX_DENOMINATOR: f64 = 9.0e15;

/// The rational `m/n` (`n > 0`) with the smallest denominator strictly
/// inside `(lo, hi)`: the first node of the signed Stern–Brocot tree that
/// falls in the interval. Ties between integers go to the one closest to 0.
pub fn rational_between(lo: f64, hi: f64) -> Result<(i64, i64)> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::InvalidArgument(format!("need finite lo < hi, got ({lo}, {hi})")));
    }
    let floor = 1e-12 * 1f64.max(lo.abs()).max(hi.abs());
    if hi - lo <= floor {
        return Err(Error::IndeterminatePrecision(format!(
            "interval ({lo}, {hi}) narrower than precision floor {floor:e}"
        )));
    }
    let (m, n) = if lo < 0.0 && hi > 0.0 {
        (0, 1)
    } else if hi <= 0.0 {
        let (m, n) = simplest_nonneg(-hi, -lo)?;
        (-m, n)
    } else {
        simplest_nonneg(lo, hi)?
    };
    let v = m as f64 / n as f64;
    if !(lo < v && v < hi) {
        return Err(Error::IndeterminatePrecision(format!("{m}/{n} not strictly inside ({lo}, {hi})")));
    }
    Ok((m, n))
}

/// Simplest rational in `(lo, hi)` for `0 ≤ lo < hi`, `hi` possibly
/// infinite. Walks the continued-fraction expansion, which visits the
/// Stern–Brocot path in runs.
fn simplest_nonneg(lo: f64, hi: f64) -> Result<(i64, i64)> {
    let fl = lo.floor();
    if fl + 1.0 < hi {
        return Ok((fl as i64 + 1, 1));
    }
    // lo < x < hi ≤ fl + 1: write x = fl + 1/y with y in (1/(hi−fl), 1/(lo−fl)).
    let y_lo = 1.0 / (hi - fl);
    let y_hi = if lo == fl { f64::INFINITY } else { 1.0 / (lo - fl) };
    if !(y_lo < y_hi) || y_lo > MAX_DENOMINATOR {
        return Err(Error::IndeterminatePrecision(format!("Stern–Brocot descent lost precision near {lo}")));
    }
    let (p, q) = simplest_nonneg(y_lo, y_hi)?;
    // x = fl + q/p
    let m = (fl as i64).checked_mul(p).and_then(|v| v.checked_add(q));
    match m {
        Some(m) if (p as f64) <= MAX_DENOMINATOR => Ok((m, p)),
        _ => Err(Error::IndeterminatePrecision("Stern–Brocot descent overflowed".into())),
    }
}
