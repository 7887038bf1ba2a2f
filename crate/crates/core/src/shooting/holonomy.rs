use num_rational::Rational64;

use crate::painleve::{
    exact_pvi_parameters, pvi_parameters, AlphaSign, ExactPviParameters, PviParameters, ThetaData,
};
use crate::{Error, Result};

/// Bundle label `n`, holonomy parameter `a = frac((r₋−1)/4)` and the
/// Painlevé data they determine through `θ = 4a + n`.
///
/// The range `a ∈ [0, 1)` is used; `a` and `1 − a` label conjugate, hence
/// equivalent, holonomies.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HolonomyData {
    pub n: i64,
    pub a_holonomy: f64,
    pub theta: f64,
    /// Parameters with `α = (θ−2)²/8`.
    pub pvi_params: PviParameters,
    /// Parameters with `α = (θ+2)²/8`.
    pub pvi_params_plus: PviParameters,
    /// Holonomy is trivial exactly when `r₋ ≡ 1 (mod 4)`.
    pub trivial: bool,
    /// Whether `r₋ = n + 4a` holds for the given `n`.
    pub label_consistent: bool,
}

fn check_label(n: i64) -> Result<()> {
    if n.rem_euclid(4) == 1 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "n",
            value: n as f64,
            domain: "integers congruent to 1 mod 4",
        })
    }
}

pub fn holonomy_data(r_minus: f64, n: i64) -> Result<HolonomyData> {
    check_label(n)?;
    if !(r_minus.is_finite() && r_minus >= 1.0) {
        return Err(Error::Domain {
            what: "r_minus",
            value: r_minus,
            domain: "[1, inf)",
        });
    }
    let q = (r_minus - 1.0) / 4.0;
    let a = q - libm::floor(q);
    let theta = 4.0 * a + n as f64;
    let th = ThetaData::from_real(theta)?;
    Ok(HolonomyData {
        n,
        a_holonomy: a,
        theta,
        pvi_params: pvi_parameters(&th, AlphaSign::Minus),
        pvi_params_plus: pvi_parameters(&th, AlphaSign::Plus),
        trivial: a == 0.0,
        label_consistent: (r_minus - theta).abs() <= 1e-12 * r_minus,
    })
}

/// [`HolonomyData`] in exact rational arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactHolonomyData {
    pub n: i64,
    pub a_holonomy: Rational64,
    pub theta: Rational64,
    pub pvi_params: ExactPviParameters,
    pub pvi_params_plus: ExactPviParameters,
    pub trivial: bool,
    pub label_consistent: bool,
}

pub fn holonomy_data_exact(r_minus: Rational64, n: i64) -> Result<ExactHolonomyData> {
    check_label(n)?;
    let one = Rational64::from_integer(1);
    if r_minus < one {
        return Err(Error::Domain {
            what: "r_minus",
            value: *r_minus.numer() as f64 / *r_minus.denom() as f64,
            domain: "[1, inf)",
        });
    }
    let q = (r_minus - one) / Rational64::from_integer(4);
    let a = q - q.floor();
    let theta = Rational64::from_integer(4) * a + Rational64::from_integer(n);
    Ok(ExactHolonomyData {
        n,
        a_holonomy: a,
        theta,
        pvi_params: exact_pvi_parameters(theta, AlphaSign::Minus),
        pvi_params_plus: exact_pvi_parameters(theta, AlphaSign::Plus),
        trivial: a == Rational64::from_integer(0),
        label_consistent: r_minus == theta,
    })
}
