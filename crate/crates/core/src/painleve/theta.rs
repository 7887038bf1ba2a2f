use num_complex::Complex64;
use num_rational::Rational64;

use crate::asd::{conserved_quantity, InstantonState};
use crate::{Error, Result};

/// Which square root of `θ²` to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum RootSign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ThetaBranch {
    PositiveReal,
    NegativeReal,
    PositiveImaginary,
    NegativeImaginary,
}

impl ThetaBranch {
    pub fn is_imaginary(self) -> bool {
        matches!(
            self,
            ThetaBranch::PositiveImaginary | ThetaBranch::NegativeImaginary
        )
    }

    fn sign(self) -> f64 {
        match self {
            ThetaBranch::PositiveReal | ThetaBranch::PositiveImaginary => 1.0,
            _ => -1.0,
        }
    }
}

/// `θ²` together with the choice of root. `θ` is imaginary exactly when
/// `θ² < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ThetaData {
    theta_squared: f64,
    branch: ThetaBranch,
}

impl ThetaData {
    pub fn new(theta_squared: f64, branch: ThetaBranch) -> Result<Self> {
        if !theta_squared.is_finite() {
            return Err(Error::NonFinite("theta squared"));
        }
        if branch.is_imaginary() != (theta_squared < 0.0) {
            return Err(Error::Domain {
                what: "theta squared",
                value: theta_squared,
                domain: "sign matching the branch",
            });
        }
        Ok(ThetaData {
            theta_squared,
            branch,
        })
    }

    /// Resolve the branch from the sign of `θ²` and a root hint.
    pub fn from_squared(theta_squared: f64, hint: RootSign) -> Result<Self> {
        let branch = match (theta_squared < 0.0, hint) {
            (false, RootSign::Positive) => ThetaBranch::PositiveReal,
            (false, RootSign::Negative) => ThetaBranch::NegativeReal,
            (true, RootSign::Positive) => ThetaBranch::PositiveImaginary,
            (true, RootSign::Negative) => ThetaBranch::NegativeImaginary,
        };
        ThetaData::new(theta_squared, branch)
    }

    /// A real `θ`, branch taken from its sign.
    pub fn from_real(theta: f64) -> Result<Self> {
        let hint = if theta.is_sign_negative() {
            RootSign::Negative
        } else {
            RootSign::Positive
        };
        ThetaData::from_squared(theta * theta, hint)
    }

    pub fn theta_squared(&self) -> f64 {
        self.theta_squared
    }

    pub fn branch(&self) -> ThetaBranch {
        self.branch
    }

    pub fn is_real(&self) -> bool {
        !self.branch.is_imaginary()
    }

    pub fn theta(&self) -> Complex64 {
        let r = libm::sqrt(self.theta_squared.abs()) * self.branch.sign();
        if self.branch.is_imaginary() {
            Complex64::new(0.0, r)
        } else {
            Complex64::new(r, 0.0)
        }
    }
}

/// `θ²` is the conserved quantity of `s`; fails only if it overflows.
pub fn theta_from_state(s: &InstantonState, hint: RootSign) -> Result<ThetaData> {
    ThetaData::from_squared(conserved_quantity(s), hint)
}

/// The sign inside `α = (θ ± 2)²/8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum AlphaSign {
    /// `α = (θ+2)²/8`
    Plus,
    /// `α = (θ−2)²/8`
    Minus,
}

impl AlphaSign {
    fn sign(self) -> f64 {
        match self {
            AlphaSign::Plus => 1.0,
            AlphaSign::Minus => -1.0,
        }
    }
}

/// Painlevé VI parameters for the one-parameter family in `θ`.
///
/// `α` is complex because it is not real for imaginary `θ`; `β, γ, δ` only
/// involve `θ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PviParameters {
    pub alpha: Complex64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub theta_vector: [Complex64; 4],
    pub alpha_sign: AlphaSign,
}

/// `α = (θ±2)²/8, β = −θ²/8, γ = θ²/8, δ = −(θ²−4)/8`, `θ⃗ = (θ/2,θ/2,θ/2,θ/2)`.
pub fn pvi_parameters(theta: &ThetaData, sign: AlphaSign) -> PviParameters {
    let th = theta.theta();
    let t2 = theta.theta_squared();
    let s = th + Complex64::new(2.0 * sign.sign(), 0.0);
    PviParameters {
        alpha: s * s / 8.0,
        beta: -t2 / 8.0,
        gamma: t2 / 8.0,
        delta: -(t2 - 4.0) / 8.0,
        theta_vector: [th / 2.0; 4],
        alpha_sign: sign,
    }
}

/// Parameters in exact rational arithmetic for rational `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactPviParameters {
    pub alpha: Rational64,
    pub beta: Rational64,
    pub gamma: Rational64,
    pub delta: Rational64,
}

impl ExactPviParameters {
    pub fn to_f64(&self) -> [f64; 4] {
        let f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        [f(self.alpha), f(self.beta), f(self.gamma), f(self.delta)]
    }
}

pub fn exact_pvi_parameters(theta: Rational64, sign: AlphaSign) -> ExactPviParameters {
    let eight = Rational64::from_integer(8);
    let two = Rational64::from_integer(match sign {
        AlphaSign::Plus => 2,
        AlphaSign::Minus => -2,
    });
    let t2 = theta * theta;
    ExactPviParameters {
        alpha: (theta + two) * (theta + two) / eight,
        beta: -t2 / eight,
        gamma: t2 / eight,
        delta: -(t2 - Rational64::from_integer(4)) / eight,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asd::{closed_form_solution, ClosedForm};
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn theta_of_reference_solutions() {
        let s = closed_form_solution(ClosedForm::Octahedral, 0.37).unwrap();
        let th = theta_from_state(&s, RootSign::Positive).unwrap();
        assert!((th.theta_squared() - 1.0).abs() < 1e-15);
        assert!((th.theta() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let s = closed_form_solution(ClosedForm::Hopf, 0.5).unwrap();
        let th = theta_from_state(&s, RootSign::Positive).unwrap();
        assert!((th.theta().re - 3.0).abs() < 1e-14);
        let s = InstantonState::new(0.5, [0.0; 3]).unwrap();
        assert_eq!(
            theta_from_state(&s, RootSign::Negative)
                .unwrap()
                .theta_squared(),
            0.0
        );
    }

    #[test]
    fn imaginary_branch() {
        let s = InstantonState::new(0.5, [0.0, 0.0, 2.0]).unwrap();
        let th = theta_from_state(&s, RootSign::Negative).unwrap();
        assert_eq!(th.branch(), ThetaBranch::NegativeImaginary);
        assert!(th.theta().re == 0.0 && th.theta().im < 0.0);
        assert!(ThetaData::new(1.0, ThetaBranch::PositiveImaginary).is_err());
        assert!(ThetaData::new(-1.0, ThetaBranch::NegativeReal).is_err());
    }

    #[test]
    fn reference_parameter_lists() {
        let p = exact_pvi_parameters(r(1, 1), AlphaSign::Minus);
        assert_eq!(
            (p.alpha, p.beta, p.gamma, p.delta),
            (r(1, 8), r(-1, 8), r(1, 8), r(3, 8))
        );
        let p = exact_pvi_parameters(r(3, 1), AlphaSign::Minus);
        assert_eq!(
            (p.alpha, p.beta, p.gamma, p.delta),
            (r(1, 8), r(-9, 8), r(9, 8), r(-5, 8))
        );
        let p = exact_pvi_parameters(r(0, 1), AlphaSign::Plus);
        assert_eq!(
            (p.alpha, p.beta, p.gamma, p.delta),
            (r(1, 2), r(0, 1), r(0, 1), r(1, 2))
        );
        let p = pvi_parameters(&ThetaData::from_real(3.0).unwrap(), AlphaSign::Minus);
        assert_eq!(p.alpha, Complex64::new(0.125, 0.0));
        assert_eq!((p.beta, p.gamma, p.delta), (-1.125, 1.125, -0.625));
        assert_eq!(p.theta_vector, [Complex64::new(1.5, 0.0); 4]);
    }

    proptest! {
        #[test]
        fn theta_squares_back(t2 in -50.0f64..50.0, neg in any::<bool>()) {
            let hint = if neg { RootSign::Negative } else { RootSign::Positive };
            let d = ThetaData::from_squared(t2, hint).unwrap();
            let th = d.theta();
            prop_assert!(((th * th).re - t2).abs() <= 4.0 * f64::EPSILON * t2.abs());
            prop_assert!((th * th).im.abs() <= 4.0 * f64::EPSILON * t2.abs());
            prop_assert_eq!(d.branch().is_imaginary(), t2 < 0.0);
        }

        #[test]
        fn parameter_lock(th in -6.0f64..6.0, plus in any::<bool>()) {
            let sign = if plus { AlphaSign::Plus } else { AlphaSign::Minus };
            let p = pvi_parameters(&ThetaData::from_real(th).unwrap(), sign);
            prop_assert_eq!(p.beta + p.gamma, 0.0);
            let s = if plus { 2.0 } else { -2.0 };
            let want = (th + s) * (th + s) / 8.0 + (th * th - 4.0) / 8.0;
            prop_assert!((p.alpha.re - p.delta - want).abs() < 1e-12);
        }

        #[test]
        fn exact_matches_float(n in -40i64..40, d in 1i64..12, plus in any::<bool>()) {
            let sign = if plus { AlphaSign::Plus } else { AlphaSign::Minus };
            let th = Rational64::new(n, d);
            let e = exact_pvi_parameters(th, sign).to_f64();
            let p = pvi_parameters(&ThetaData::from_real(n as f64 / d as f64).unwrap(), sign);
            for (a, b) in e.iter().zip([p.alpha.re, p.beta, p.gamma, p.delta]) {
                prop_assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()));
            }
        }
    }
}
