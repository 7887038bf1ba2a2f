use num_complex::Complex64;

use crate::scalar::cabs;
use crate::{Error, Result};

/// One Okamoto step `(x, y, θ⃗) ↦ (x, y + δ/q, θ⃗ − δ⃗)` with `δ = ½Σθᵢ` and
/// `2q = ((x−1)y′ − θ₁)/y + (y′ − 1 − θ₂)/(y − x) − (xy′ + θ₃)/(y − 1)`.
///
/// When `δ = 0` the input is returned unchanged.
pub fn okamoto_transform(
    x: f64,
    y: Complex64,
    dy_dx: Complex64,
    theta_vector: [Complex64; 4],
) -> Result<(Complex64, [Complex64; 4])> {
    let delta = theta_vector.iter().sum::<Complex64>() / 2.0;
    if delta == Complex64::from(0.0) {
        return Ok((y, theta_vector));
    }
    let xc = Complex64::from(x);
    let one = Complex64::from(1.0);
    for d in [y, y - one, y - xc] {
        if d == Complex64::from(0.0) {
            return Err(Error::Pole {
                what: "Okamoto transformation",
                t: f64::NAN,
            });
        }
    }
    let [t1, t2, t3, _] = theta_vector;
    let q2 = ((xc - one) * dy_dx - t1) / y + (dy_dx - one - t2) / (y - xc)
        - (xc * dy_dx + t3) / (y - one);
    let q = q2 / 2.0;
    let scale = cabs(((xc - one) * dy_dx - t1) / y) + cabs((xc * dy_dx + t3) / (y - one));
    if !(cabs(q) > 1e-14 * scale) {
        return Err(Error::OkamotoSingular);
    }
    let y_new = y + delta / q;
    Ok((y_new, theta_vector.map(|th| th - delta)))
}
