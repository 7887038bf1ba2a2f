use crate::asd::InstantonState;
use crate::{Error, Result};

/// How many terms of the Frobenius expansion at `t = 1` seed the integrator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum SeriesOrder {
    /// `a₁ = a₃ = c u^k`, `a₂ = r₋`.
    Leading,
    /// Adds the first correction `a₁ = c u^k(1 + pu)`, `a₃ = c u^k(1 + qu)`.
    #[default]
    FirstOrder,
}

/// Correction coefficients `(p, q)` of the decaying mode,
/// `p = (1−r)(3−r)/(8(r+1))`, `q = −(1−r)(r+5)/(8(r+1))`.
pub fn series_corrections(r_minus: f64) -> (f64, f64) {
    let r = r_minus;
    let den = 8.0 * (r + 1.0);
    ((1.0 - r) * (3.0 - r) / den, -(1.0 - r) * (r + 5.0) / den)
}

/// Seed state at `t = 1 − u` on the family with `a₂ → r₋` and amplitude `c`
/// of the mode `a₁ ≈ a₃ ≈ c u^{(r₋−1)/2}`.
pub fn boundary_series(
    c: f64,
    r_minus: f64,
    one_minus_t: f64,
    order: SeriesOrder,
) -> Result<InstantonState> {
    let u = one_minus_t;
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::Domain {
            what: "one_minus_t",
            value: u,
            domain: "(0, 1)",
        });
    }
    if !(r_minus.is_finite() && r_minus >= 1.0) {
        return Err(Error::Domain {
            what: "r_minus",
            value: r_minus,
            domain: "[1, inf)",
        });
    }
    if !c.is_finite() {
        return Err(Error::NonFinite("c"));
    }
    let lead = c * libm::pow(u, (r_minus - 1.0) / 2.0);
    let (p, q) = match order {
        SeriesOrder::Leading => (0.0, 0.0),
        SeriesOrder::FirstOrder => series_corrections(r_minus),
    };
    InstantonState::new(
        1.0 - u,
        [lead * (1.0 + p * u), r_minus, lead * (1.0 + q * u)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asd::{asd_vector_field, closed_form_solution, ClosedForm};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn leading_terms() {
        let s = boundary_series(0.0, 2.5, 1e-4, SeriesOrder::FirstOrder).unwrap();
        assert_eq!(s.a(), [0.0, 2.5, 0.0]);
        let s = boundary_series(0.1, 1.0, 1e-4, SeriesOrder::Leading).unwrap();
        assert_eq!(s.a(), [0.1, 1.0, 0.1]);
        // exponent (3 − 1)/2 = 1
        let s = boundary_series(0.1, 3.0, 1e-4, SeriesOrder::Leading).unwrap();
        assert_relative_eq!(s.a1(), 1e-5, max_relative = 1e-12);
        assert_relative_eq!(s.a3(), 1e-5, max_relative = 1e-12);
        assert!(boundary_series(0.1, 3.0, 1.0, SeriesOrder::Leading).is_err());
        assert!(boundary_series(0.1, 0.5, 0.1, SeriesOrder::Leading).is_err());
    }

    #[test]
    fn hopf_is_the_r3_member() {
        // Hopf: a₁ = 3u(2−u)/(t²+3) = (3/2)u(1 + 0·u + …), a₃ = 6u/(t²+3) = (3/2)u(1 + u/2 + …)
        assert_eq!(series_corrections(3.0), (0.0, 0.5));
        let u = 1e-4;
        let s = boundary_series(1.5, 3.0, u, SeriesOrder::FirstOrder).unwrap();
        let h = closed_form_solution(ClosedForm::Hopf, 1.0 - u).unwrap();
        for i in [0, 2] {
            assert!((s.a()[i] - h.a()[i]).abs() < 10.0 * u * u * u);
        }
    }

    proptest! {
        #[test]
        fn first_order_series_solves_the_system(
            r in 1.0f64..4.0,
            c in 0.1f64..2.0,
        ) {
            // Residual of the truncated series in the a₁, a₃ equations is
            // O(u^{k+1}) relative to the leading O(u^{k−1}) terms.
            let k = (r - 1.0) / 2.0;
            let u = 1e-4;
            let s = boundary_series(c, r, u, SeriesOrder::FirstOrder).unwrap();
            let (p, q) = series_corrections(r);
            let lead = |u: f64| c * u.powf(k);
            let d1 = -(lead(u) * (k / u) * (1.0 + p * u) + lead(u) * p);
            let d3 = -(lead(u) * (k / u) * (1.0 + q * u) + lead(u) * q);
            let f = asd_vector_field(&s);
            let scale = lead(u) / u;
            prop_assert!((f[0] - d1).abs() < 50.0 * scale * u * u);
            prop_assert!((f[2] - d3).abs() < 50.0 * scale * u * u);
        }
    }
}
