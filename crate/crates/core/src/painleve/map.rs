use alloc::vec::Vec;

use num_complex::Complex64;

use super::cross::cross;
use super::theta::{AlphaSign, ThetaData};
use crate::asd::{vector_field, Trajectory};
use crate::scalar::{cabs, Field, Jet};
use crate::{Error, Result};

/// The `±` in front of `16θa₂a₃t³` in the denominator of `y`.
///
/// `Plus` produces a solution with `α = (θ−2)²/8`, `Minus` one with
/// `α = (θ+2)²/8`. Equivalently the map only sees the effective
/// `θ̃ = ±θ`, and the inverse relations hold with `θ̃` in place of `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum SignChoice {
    Plus,
    Minus,
}

impl SignChoice {
    pub fn sign(self) -> f64 {
        match self {
            SignChoice::Plus => 1.0,
            SignChoice::Minus => -1.0,
        }
    }

    /// The `α` sign of the equation the mapped `y` actually solves.
    pub fn paired_alpha_sign(self) -> AlphaSign {
        match self {
            SignChoice::Plus => AlphaSign::Minus,
            SignChoice::Minus => AlphaSign::Plus,
        }
    }

    pub fn effective_theta(self, theta: &ThetaData) -> Complex64 {
        theta.theta() * self.sign()
    }
}

/// One point `(x, y, y′, y″)` of a Painlevé VI solution, tagged with the `t`
/// that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PviSample {
    pub t_source: f64,
    pub x: f64,
    pub y: Complex64,
    pub dy_dx: Complex64,
    pub d2y_dx2: Option<Complex64>,
}

/// Numerator and denominator of `y` in terms of `(t, a, θ̃)`:
///
/// `y = a₁(t−3)²(t+1)[(t²+4t+3)a₂² − (t²−4t+3)a₃²]
///      / ((t+3)[a₁((t²−2t−3)²a₂² − (t²+2t−3)²a₃²) + 16θ̃a₂a₃t³])`.
fn y_fraction<T: Field>(t: T, a: [T; 3], th: T) -> (T, T) {
    let f = T::from_f64;
    let t2 = t * t;
    let (a1, a2s, a3s) = (a[0], a[1] * a[1], a[2] * a[2]);
    let num = a1
        * (t - f(3.0)).square()
        * (t + f(1.0))
        * ((t2 + f(4.0) * t + f(3.0)) * a2s - (t2 - f(4.0) * t + f(3.0)) * a3s);
    let p = t2 - f(2.0) * t - f(3.0);
    let q = t2 + f(2.0) * t - f(3.0);
    let den = (t + f(3.0))
        * (a1 * (p.square() * a2s - q.square() * a3s) + f(16.0) * th * a[1] * a[2] * t.cube());
    (num, den)
}

/// Size of the terms that cancel in the denominator, for pole detection.
fn denominator_scale(t: f64, a: [f64; 3], th: f64) -> f64 {
    let p = t * t - 2.0 * t - 3.0;
    let q = t * t + 2.0 * t - 3.0;
    (t + 3.0).abs()
        * (a[0].abs() * (p * p * a[1] * a[1] + q * q * a[2] * a[2])
            + 16.0 * th * (a[1] * a[2] * t * t * t).abs())
}

fn check_generic_t(t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::NonFinite("t"));
    }
    for p in [0.0, 1.0, -1.0, 3.0, -3.0] {
        if t == p {
            return Err(Error::Pole {
                what: "reduced system",
                t,
            });
        }
    }
    Ok(())
}

/// Second-order Taylor jet of a solution through `(t, a)`.
pub(crate) fn state_jet(t: f64, a: [f64; 3]) -> [Jet<f64>; 3] {
    let f = vector_field(t, a);
    let tj = Jet::variable(t);
    let aj = [0, 1, 2].map(|i| Jet::new(a[i], f[i], 0.0));
    let fj = vector_field(tj, aj);
    [0, 1, 2].map(|i| Jet::new(a[i], f[i], 0.5 * fj[i].c[1]))
}

/// Map one point `(t, a)` of a solution to a Painlevé VI sample.
///
/// `t` may be any real number away from the singular points
/// `{0, ±1, ±3}`, which lets rational closed forms be followed onto other
/// preimages of `x`. `a` must lie on a solution of the reduced system, since
/// `y′` and `y″` are obtained by differentiating along the flow.
pub fn pvi_sample_at(
    t: f64,
    a: [f64; 3],
    theta: &ThetaData,
    sign: SignChoice,
) -> Result<PviSample> {
    check_generic_t(t)?;
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("instanton coefficients"));
    }
    let th = sign.effective_theta(theta);
    let jet = state_jet(t, a);
    let tj = Jet::variable(Complex64::from(t));
    let aj = jet.map(|j| j.to_complex());
    let (num, den) = y_fraction(tj, aj, Jet::constant(th));
    let scale = denominator_scale(t, a, cabs(th));
    if !(cabs(den.value()) > 1e-14 * scale) {
        return Err(Error::Pole { what: "y", t });
    }
    let y = num / den;
    let x = cross(Jet::variable(t));
    let (x1, x2) = (x.first_derivative(), x.second_derivative());
    let (y1, y2) = (y.first_derivative(), y.second_derivative());
    let dy_dx = y1 / x1;
    let d2 = (y2 * x1 - y1 * x2) / (x1 * x1 * x1);
    let vals = [y.value(), dy_dx, d2];
    if vals.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::NonFinite("Painleve sample"));
    }
    let mut out = PviSample {
        t_source: t,
        x: x.value(),
        y: vals[0],
        dy_dx: vals[1],
        d2y_dx2: Some(vals[2]),
    };
    if theta.is_real() {
        // Real θ keeps everything real; only rounding can leave a residue.
        debug_assert!(vals.iter().all(|v| v.im.abs() < 1e-10 * (1.0 + v.re.abs())));
        out.y.im = 0.0;
        out.dy_dx.im = 0.0;
        out.d2y_dx2 = Some(Complex64::new(vals[2].re, 0.0));
    }
    Ok(out)
}

/// Apply the map to every sample of a trajectory.
pub fn map_to_pvi(
    traj: &Trajectory,
    theta: &ThetaData,
    sign: SignChoice,
) -> Result<Vec<PviSample>> {
    let vanishing = (0..3)
        .filter(|&i| traj.samples().iter().all(|s| s.a()[i] == 0.0))
        .count();
    if vanishing >= 2 {
        return Err(Error::DegenerateBranch);
    }
    traj.samples()
        .iter()
        .map(|s| pvi_sample_at(s.t(), s.a(), theta, sign))
        .collect()
}

/// `w₁, w₂, w₃` with `ẏ = dy/dx`:
///
/// `w₁ = 2ẏ + ((θ−2)y² − 2θxy + 2y + θx)/(x(x−1))`,
/// `w₂ = 2ẏ + ((θ−2)y² + 2(1−θ)y + θx)/(x(x−1))`,
/// `w₃ = 2ẏ + ((θ−2)y² + 2y − θx)/(x(x−1))`.
pub fn w_functions(
    x: f64,
    y: Complex64,
    dy_dx: Complex64,
    theta: Complex64,
) -> Result<[Complex64; 3]> {
    if x == 0.0 || x == 1.0 || !x.is_finite() {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "x outside {0, 1}",
        });
    }
    Ok(w_raw(Complex64::from(x), y, dy_dx, theta))
}

fn w_raw<T: Field>(x: T, y: T, dy: T, th: T) -> [T; 3] {
    let f = T::from_f64;
    let d = x * (x - f(1.0));
    let common = (th - f(2.0)) * y * y;
    let two_dy = f(2.0) * dy;
    [
        two_dy + (common - f(2.0) * th * x * y + f(2.0) * y + th * x) / d,
        two_dy + (common + f(2.0) * (f(1.0) - th) * y + th * x) / d,
        two_dy + (common + f(2.0) * y - th * x) / d,
    ]
}

fn check_y(t: f64, x: f64, y: Complex64) -> Result<()> {
    let xc = Complex64::from(x);
    for (what, d) in [("y = 0", y), ("y = 1", y - 1.0), ("y = x", y - xc)] {
        if cabs(d) <= 1e-14 * (1.0 + cabs(y)) {
            return Err(Error::Pole { what, t });
        }
    }
    Ok(())
}

/// Recover `(a₁², a₂², a₃²)` from a Painlevé VI sample:
///
/// `a₁² = (t²−9)x(x−1)²w₁w₂ / (4(t²−1)(y−1)(y−x))`,
/// `a₂² = t(3−t)x(x−1)w₂w₃ / (4(t+1)y(y−1))`,
/// `a₃² = t(t+3)x²(x−1)w₁w₃ / (4(1−t)y(y−x))`,
///
/// with `θ̃ = ±θ` in the `w`'s according to `sign`.
pub fn squares_from_solution(
    t: f64,
    x: f64,
    y: Complex64,
    dy_dx: Complex64,
    theta: &ThetaData,
    sign: SignChoice,
) -> Result<[Complex64; 3]> {
    check_generic_t(t)?;
    check_y(t, x, y)?;
    let w = w_functions(x, y, dy_dx, sign.effective_theta(theta))?;
    let [p12, p23, p13] = pair_factors(t, x, y);
    Ok([w[0] * w[1] / p12, w[1] * w[2] / p23, w[0] * w[2] / p13])
}

/// Factors `Fᵢⱼ` with `wᵢwⱼ = aₖ²·Fᵢⱼ`, ordered `(w₁w₂, w₂w₃, w₁w₃)`.
fn pair_factors(t: f64, x: f64, y: Complex64) -> [Complex64; 3] {
    let xc = Complex64::from(x);
    let one = Complex64::from(1.0);
    [
        4.0 * (t * t - 1.0) * (y - one) * (y - xc) / ((t * t - 9.0) * x * (x - 1.0) * (x - 1.0)),
        4.0 * (t + 1.0) * y * (y - one) / (t * (3.0 - t) * x * (x - 1.0)),
        4.0 * (1.0 - t) * y * (y - xc) / (t * (t + 3.0) * x * x * (x - 1.0)),
    ]
}

/// Recover `dy/dx` from `y` and the three squares.
///
/// The pairwise products `w₁w₂, w₂w₃, w₁w₃` follow from the squares, hence
/// `w₁² = (w₁w₂)(w₁w₃)/(w₂w₃)`. Of the two roots the one for which
/// `w₂ − w₁ = 2θ̃y/x` and `w₂ − w₃ = 2θ̃(x−y)/(x(x−1))` hold is kept;
/// `rel_tol` bounds the relative mismatch of these identities.
pub fn derivative_from_squares(
    t: f64,
    x: f64,
    y: Complex64,
    squares: [f64; 3],
    theta: &ThetaData,
    sign: SignChoice,
    rel_tol: f64,
) -> Result<Complex64> {
    check_generic_t(t)?;
    check_y(t, x, y)?;
    if x == 0.0 || x == 1.0 {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "x outside {0, 1}",
        });
    }
    if squares.iter().any(|&s| s == 0.0 || !s.is_finite()) {
        return Err(Error::DegenerateBranch);
    }
    let th = sign.effective_theta(theta);
    if th == Complex64::from(0.0) {
        return Err(Error::Domain {
            what: "theta",
            value: 0.0,
            domain: "nonzero theta",
        });
    }
    let fct = pair_factors(t, x, y);
    let p12 = fct[0] * squares[0];
    let p23 = fct[1] * squares[1];
    let p13 = fct[2] * squares[2];
    let root = (p12 * p13 / p23).sqrt();
    let xc = Complex64::from(x);
    let d12 = 2.0 * th * y / xc;
    let d23 = 2.0 * th * (xc - y) / (xc * (xc - 1.0));
    let norm = cabs(d12) + cabs(d23);
    let mismatch = |w1: Complex64| {
        let (w2, w3) = (p12 / w1, p13 / w1);
        (cabs(w2 - w1 - d12) + cabs(w2 - w3 - d23)) / norm
    };
    let (m_pos, m_neg) = (mismatch(root), mismatch(-root));
    let (w1, m) = if m_pos <= m_neg {
        (root, m_pos)
    } else {
        (-root, m_neg)
    };
    if !(m <= rel_tol) {
        return Err(Error::Inconsistent { mismatch: m });
    }
    let n1 = (th - 2.0) * y * y - 2.0 * th * xc * y + 2.0 * y + th * xc;
    Ok((w1 - n1 / (xc * (xc - 1.0))) / 2.0)
}
