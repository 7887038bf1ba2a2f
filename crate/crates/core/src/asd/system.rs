use crate::scalar::Field;
use crate::{Error, Result};

/// A point `(t; a₁, a₂, a₃)` of the reduced ASD system.
///
/// Construction rejects `t ∉ (0,1)`, where the system is singular, and
/// non-finite coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct InstantonState {
    t: f64,
    a: [f64; 3],
}

impl InstantonState {
    pub fn new(t: f64, a: [f64; 3]) -> Result<Self> {
        check_open_unit(t, "t")?;
        if a.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("instanton coefficients"));
        }
        Ok(InstantonState { t, a })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn a(&self) -> [f64; 3] {
        self.a
    }

    pub fn a1(&self) -> f64 {
        self.a[0]
    }

    pub fn a2(&self) -> f64 {
        self.a[1]
    }

    pub fn a3(&self) -> f64 {
        self.a[2]
    }
}

pub(crate) fn check_open_unit(t: f64, what: &'static str) -> Result<()> {
    if t.is_finite() && t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value: t,
            domain: "(0, 1)",
        })
    }
}

/// `(K₁, K₂, K₃)` without domain checks.
pub(crate) fn metric<T: Field>(t: T) -> [T; 3] {
    let one = T::from_f64(1.0);
    let three = T::from_f64(3.0);
    let four = T::from_f64(4.0);
    let nine = T::from_f64(9.0);
    let t2 = t * t;
    [
        (t2 - one) * (t2 - nine) / (four * t),
        four * t * (t - three) * (t + one) / ((t + three) * (t - one)),
        four * t * (t + three) * (t - one) / ((t - three) * (t + one)),
    ]
}

/// The coefficients `K₁ = (t²−1)(t²−9)/(4t)`, `K₂ = 4t(t−3)(t+1)/((t+3)(t−1))`,
/// `K₃ = 4t(t+3)(t−1)/((t−3)(t+1))` for `t ∈ (0,1)`.
pub fn metric_coefficients(t: f64) -> Result<[f64; 3]> {
    check_open_unit(t, "t")?;
    Ok(metric(t))
}

/// Right-hand side `ȧᵢ = 2(aᵢ − aⱼaₖ)/Kᵢ` over any field.
pub(crate) fn vector_field<T: Field>(t: T, a: [T; 3]) -> [T; 3] {
    let k = metric(t);
    let two = T::from_f64(2.0);
    [
        two * (a[0] - a[1] * a[2]) / k[0],
        two * (a[1] - a[2] * a[0]) / k[1],
        two * (a[2] - a[0] * a[1]) / k[2],
    ]
}

/// `(ȧ₁, ȧ₂, ȧ₃)` at a state.
pub fn asd_vector_field(s: &InstantonState) -> [f64; 3] {
    vector_field(s.t, s.a)
}

/// Squared residue weights `α₁² = −(t²−1)/(16(t²−9))`,
/// `α₂² = −(t+1)/(16t(3−t))`, `α₃² = (1−t)/(16t(t+3))`, over any field.
pub(crate) fn weights<T: Field>(t: T) -> [T; 3] {
    let one = T::from_f64(1.0);
    let three = T::from_f64(3.0);
    let nine = T::from_f64(9.0);
    let sixteen = T::from_f64(16.0);
    let t2 = t * t;
    [
        -(t2 - one) / (sixteen * (t2 - nine)),
        -(t + one) / (sixteen * t * (three - t)),
        (one - t) / (sixteen * t * (t + three)),
    ]
}

/// Squared residue weights for `t ∈ (0, 1]`.
pub fn residue_weights(t: f64) -> Result<[f64; 3]> {
    if !(t.is_finite() && t > 0.0 && t <= 1.0) {
        return Err(Error::Domain {
            what: "t",
            value: t,
            domain: "(0, 1]",
        });
    }
    Ok(weights(t))
}

#[cfg(test)]
pub(crate) fn conserved<T: Field>(t: T, a: [T; 3]) -> T {
    let w = weights(t);
    -T::from_f64(16.0) * (a[0] * a[0] * w[0] + a[1] * a[1] * w[1] + a[2] * a[2] * w[2])
}

/// The first integral
/// `((1−t²)/(9−t²))a₁² + ((1+t)/(t(3−t)))a₂² − ((1−t)/(t(3+t)))a₃²`,
/// which equals `θ²`.
pub fn conserved_quantity(s: &InstantonState) -> f64 {
    let t = s.t;
    let [a1, a2, a3] = s.a;
    (1.0 - t * t) / (9.0 - t * t) * a1 * a1 + (1.0 + t) / (t * (3.0 - t)) * a2 * a2
        - (1.0 - t) / (t * (3.0 + t)) * a3 * a3
}
