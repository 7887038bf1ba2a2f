use alloc::vec::Vec;

use num_complex::Complex64;

use super::map::PviSample;
use super::theta::PviParameters;
use crate::scalar::cabs;
use crate::{Error, Result};

/// How the coefficient bracket of Painlevé VI is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CoefficientConvention {
    /// `α + βx/y² + γ(x−1)/(y−1)² + δx(x−1)/(y−x)²`.
    #[default]
    Standard,
    /// `⅛(θ±2)² + ⅛θ²x/y² + ⅛θ²(x−1)/(y−1)² + ⅛(θ²−4)x(x−1)/(y−x)²`,
    /// i.e. the `β` and `δ` terms with the opposite sign.
    AsDisplayed,
}

/// Default masking radius around the poles `y ∈ {0, 1, x}`.
pub const POLE_MASK: f64 = 1e-8;

fn pole_distance(s: &PviSample) -> f64 {
    let x = Complex64::from(s.x);
    cabs(s.y).min(cabs(s.y - 1.0)).min(cabs(s.y - x))
}

/// `|y″ − RHS|` of Painlevé VI at a sample.
pub fn pvi_residual(
    sample: &PviSample,
    params: &PviParameters,
    convention: CoefficientConvention,
) -> Result<f64> {
    let d2 = sample.d2y_dx2.ok_or(Error::Domain {
        what: "d2y_dx2",
        value: f64::NAN,
        domain: "samples carrying a second derivative",
    })?;
    if pole_distance(sample) < POLE_MASK {
        return Err(Error::Pole {
            what: "Painleve VI",
            t: sample.t_source,
        });
    }
    let x = Complex64::from(sample.x);
    let (y, y1) = (sample.y, sample.dy_dx);
    let one = Complex64::from(1.0);
    let (sb, sd) = match convention {
        CoefficientConvention::Standard => (1.0, 1.0),
        CoefficientConvention::AsDisplayed => (-1.0, -1.0),
    };
    let bracket = params.alpha
        + sb * params.beta * x / (y * y)
        + params.gamma * (x - one) / ((y - one) * (y - one))
        + sd * params.delta * x * (x - one) / ((y - x) * (y - x));
    let rhs = 0.5 * (one / y + one / (y - one) + one / (y - x)) * y1 * y1
        - (one / x + one / (x - one) + one / (y - x)) * y1
        + y * (y - one) * (y - x) / (x * x * (x - one) * (x - one)) * bracket;
    let r = cabs(d2 - rhs);
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::NonFinite("Painleve VI residual"))
    }
}

/// Residuals over a sample set with near-pole samples masked out.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ResidualReport {
    pub max_residual: f64,
    pub evaluated: usize,
    /// `t_source` of the samples skipped as too close to a pole.
    pub masked: Vec<f64>,
    /// Per-sample residual, `None` where masked.
    pub residuals: Vec<Option<f64>>,
}

pub fn residual_report(
    samples: &[PviSample],
    params: &PviParameters,
    convention: CoefficientConvention,
    mask: f64,
) -> Result<ResidualReport> {
    let mut rep = ResidualReport {
        max_residual: 0.0,
        evaluated: 0,
        masked: Vec::new(),
        residuals: Vec::with_capacity(samples.len()),
    };
    for s in samples {
        if pole_distance(s) < mask.max(POLE_MASK) {
            rep.masked.push(s.t_source);
            rep.residuals.push(None);
            continue;
        }
        let r = pvi_residual(s, params, convention)?;
        rep.max_residual = rep.max_residual.max(r);
        rep.evaluated += 1;
        rep.residuals.push(Some(r));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asd::{closed_form_solution, ClosedForm};
    use crate::painleve::{pvi_parameters, pvi_sample_at, SignChoice, ThetaData};

    fn params(theta: f64, sign: SignChoice) -> PviParameters {
        pvi_parameters(
            &ThetaData::from_real(theta).unwrap(),
            sign.paired_alpha_sign(),
        )
    }

    #[test]
    fn reference_solutions_solve_the_standard_form() {
        for (kind, theta) in [(ClosedForm::Octahedral, 1.0), (ClosedForm::Hopf, 3.0)] {
            for sign in [SignChoice::Plus, SignChoice::Minus] {
                let th = ThetaData::from_real(theta).unwrap();
                let p = params(theta, sign);
                for i in 2..=8 {
                    let t = i as f64 / 10.0;
                    let a = closed_form_solution(kind, t).unwrap().a();
                    let s = pvi_sample_at(t, a, &th, sign).unwrap();
                    let r = pvi_residual(&s, &p, CoefficientConvention::Standard).unwrap();
                    assert!(r < 1e-10, "{kind:?} {sign:?} t={t} r={r}");
                }
            }
        }
    }

    #[test]
    fn wrong_pairing_and_displayed_signs_fail() {
        let th = ThetaData::from_real(1.0).unwrap();
        let s = pvi_sample_at(0.4, [1.0; 3], &th, SignChoice::Plus).unwrap();
        let wrong = pvi_parameters(&th, SignChoice::Minus.paired_alpha_sign());
        assert!(pvi_residual(&s, &wrong, CoefficientConvention::Standard).unwrap() > 1e-3);
        let right = params(1.0, SignChoice::Plus);
        assert!(pvi_residual(&s, &right, CoefficientConvention::AsDisplayed).unwrap() > 1e-3);
    }

    #[test]
    fn corrupted_sample_is_rejected() {
        let th = ThetaData::from_real(1.0).unwrap();
        let mut s = pvi_sample_at(0.4, [1.0; 3], &th, SignChoice::Plus).unwrap();
        s.y += 0.1;
        let r = pvi_residual(&s, &params(1.0, SignChoice::Plus), Default::default()).unwrap();
        assert!(r > 1e-2);
    }

    #[test]
    fn masking_and_missing_second_derivative() {
        let th = ThetaData::from_real(1.0).unwrap();
        let mut s = pvi_sample_at(0.4, [1.0; 3], &th, SignChoice::Plus).unwrap();
        let p = params(1.0, SignChoice::Plus);
        let mut near = s;
        near.y = Complex64::from(1.0 + 1e-10);
        assert!(matches!(
            pvi_residual(&near, &p, Default::default()),
            Err(Error::Pole { .. })
        ));
        let rep = residual_report(&[s, near], &p, Default::default(), POLE_MASK).unwrap();
        assert_eq!((rep.evaluated, rep.masked.len()), (1, 1));
        assert_eq!(rep.residuals[1], None);
        s.d2y_dx2 = None;
        assert!(pvi_residual(&s, &p, Default::default()).is_err());
    }
}
