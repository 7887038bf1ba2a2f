use crate::scalar::Field;
use crate::{Error, Result};

pub(crate) fn cross<T: Field>(t: T) -> T {
    let one = T::from_f64(1.0);
    let three = T::from_f64(3.0);
    (t + one) * (t - three).cube() / ((t - one) * (t + three).cube())
}

fn check_poles(t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::NonFinite("t"));
    }
    for p in [1.0, -3.0] {
        if t == p {
            return Err(Error::Pole {
                what: "cross ratio",
                t,
            });
        }
    }
    Ok(())
}

/// `x(t) = (t+1)(t−3)³/((t−1)(t+3)³)`.
pub fn cross_ratio(t: f64) -> Result<f64> {
    check_poles(t)?;
    Ok(cross(t))
}

/// `dx/dt = 16t²(t−3)²/((t−1)²(t+3)⁴)`.
pub fn cross_ratio_derivative(t: f64) -> Result<f64> {
    check_poles(t)?;
    let d = (t + 3.0) * (t + 3.0);
    Ok(16.0 * t * t * (t - 3.0) * (t - 3.0) / ((t - 1.0) * (t - 1.0) * d * d))
}

/// The other real `t′` with `x(t′) = x(t)` for `t ∈ (0,1)`.
///
/// `x` increases from 1 to ∞ on both `(0,1)` and `(−∞,−3)`, so the partner
/// lies in `(−∞,−3)` and is found by bisection.
pub fn paired_preimage(t: f64) -> Result<f64> {
    crate::asd::check_open_unit(t, "t")?;
    let target = cross(t);
    // x(−3 − u) − target changes sign between a tiny and a huge u.
    let g = |u: f64| cross(-3.0 - u) - target;
    let mut lo = 1e-12;
    let mut hi = 1.0;
    while g(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::NonFinite("paired preimage"));
        }
    }
    while g(lo) < 0.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(Error::NonFinite("paired preimage"));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-16 * hi {
            break;
        }
    }
    Ok(-3.0 - 0.5 * (lo + hi))
}
