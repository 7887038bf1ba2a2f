/// A best rational approximation `p/q` in lowest terms, `q ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RationalApprox {
    pub numer: i64,
    pub denom: i64,
    /// `0 < p/q ≤ 1`.
    pub in_unit_interval: bool,
}

impl RationalApprox {
    pub fn value(&self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

/// Closest fraction to `x` with denominator at most `max_denominator`,
/// from the continued-fraction convergents and the last semiconvergent.
pub fn best_rational(x: f64, max_denominator: u32) -> Option<(i64, i64)> {
    if !x.is_finite() || max_denominator == 0 || x.abs() > 1e15 {
        return None;
    }
    let max_q = i64::from(max_denominator);
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = libm::floor(r);
        if q1 > 0 && a > max_q as f64 {
            break;
        }
        let a = a as i64;
        let q2 = q0 + a * q1;
        if q2 > max_q {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p0 + a * p1, q2);
        let frac = r - a as f64;
        if frac <= 0.0 {
            return Some((p1, q1));
        }
        r = 1.0 / frac;
    }
    let k = (max_q - q0) / q1;
    let (ps, qs) = (p0 + k * p1, q0 + k * q1);
    let err = |p: i64, q: i64| (x - p as f64 / q as f64).abs();
    if k > 0 && err(ps, qs) < err(p1, q1) {
        Some((ps, qs))
    } else {
        Some((p1, q1))
    }
}

/// The best rational `p/q` with `q ≤ max_denominator`, if it lies within
/// `tol` of `exponent`.
pub fn rationality_test(exponent: f64, max_denominator: u32, tol: f64) -> Option<RationalApprox> {
    let (p, q) = best_rational(exponent, max_denominator)?;
    if !((exponent - p as f64 / q as f64).abs() <= tol) {
        return None;
    }
    Some(RationalApprox {
        numer: p,
        denom: q,
        in_unit_interval: p > 0 && p <= q,
    })
}
