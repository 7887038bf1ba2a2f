use alloc::vec::Vec;

use num_complex::Complex64;

use crate::painleve::PviSample;
use crate::scalar::cabs;
use crate::{Error, Result};

/// A critical point of Painlevé VI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CriticalPoint {
    Zero,
    One,
    Infinity,
}

/// Fitted power law near a critical point:
///
/// * `Zero`: `y ≈ a₀ |x|^{ℓ₀}`
/// * `One`: `y ≈ 1 − a₁ |1−x|^{ℓ₁}`
/// * `Infinity`: `y ≈ a∞ |x|^{1−ℓ∞}`
///
/// The phase of `x` on the sampled side is absorbed into the amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CriticalFit {
    pub point: CriticalPoint,
    pub amplitude: Complex64,
    pub exponent: f64,
    /// Largest absolute deviation of the log-log data from the fitted line.
    pub fit_residual: f64,
    /// Smallest and largest `x` used.
    pub window: (f64, f64),
    pub samples_used: usize,
}

/// Window selection for [`fit_exponent`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct FitConfig {
    /// Windows are `[ratio·d, d]` in distance to the critical point.
    pub ratio: f64,
    pub min_samples: usize,
    /// Successive windows whose slopes agree to this count as stable.
    pub slope_tol: f64,
    /// Candidate window tops are spaced by this factor.
    pub step: f64,
    /// A residual above this is reported as [`Error::NonPowerLaw`].
    pub max_residual: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            ratio: 1e-3,
            min_samples: 8,
            slope_tol: 1e-4,
            step: libm::sqrt(10.0),
            max_residual: 5e-2,
        }
    }
}

struct Point {
    d: f64,
    lx: f64,
    lv: f64,
    phase: Complex64,
    x: f64,
}

struct Line {
    slope: f64,
    intercept: f64,
    residual: f64,
}

fn least_squares(pts: &[&Point]) -> Line {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.lx).sum::<f64>() / n;
    let mv = pts.iter().map(|p| p.lv).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.lx - mx) * (p.lx - mx)).sum();
    let sxv: f64 = pts.iter().map(|p| (p.lx - mx) * (p.lv - mv)).sum();
    let slope = sxv / sxx;
    let intercept = mv - slope * mx;
    let residual = pts
        .iter()
        .map(|p| (p.lv - intercept - slope * p.lx).abs())
        .fold(0.0, f64::max);
    Line {
        slope,
        intercept,
        residual,
    }
}

fn points(samples: &[PviSample], point: CriticalPoint) -> Vec<Point> {
    let one = Complex64::from(1.0);
    let mut by_side: [Vec<Point>; 2] = [Vec::new(), Vec::new()];
    for s in samples {
        let (dx, v) = match point {
            CriticalPoint::Zero => (s.x, s.y),
            CriticalPoint::One => (1.0 - s.x, one - s.y),
            CriticalPoint::Infinity => (s.x, s.y),
        };
        let av = cabs(v);
        if !(dx != 0.0 && dx.is_finite() && av > 0.0 && av.is_finite()) {
            continue;
        }
        let lx = libm::log(dx.abs());
        let d = match point {
            CriticalPoint::Infinity => 1.0 / dx.abs(),
            _ => dx.abs(),
        };
        by_side[usize::from(dx < 0.0)].push(Point {
            d,
            lx,
            lv: libm::log(av),
            phase: v / av,
            x: s.x,
        });
    }
    let [pos, neg] = by_side;
    let mut pts = if neg.len() > pos.len() { neg } else { pos };
    pts.sort_by(|a, b| b.d.total_cmp(&a.d));
    pts
}

/// Fit the critical behaviour of a sampled solution at `point`.
///
/// Samples on the side of the critical point holding the most samples are
/// used. Candidate windows `[ratio·d, d]` are tried from the largest `d`
/// inward; the first whose slope agrees with the next one within
/// `slope_tol` is kept, otherwise the innermost.
pub fn fit_exponent(
    samples: &[PviSample],
    point: CriticalPoint,
    config: &FitConfig,
) -> Result<CriticalFit> {
    let min = config.min_samples.max(2);
    if !(config.ratio > 0.0 && config.ratio < 1.0 && config.step > 1.0) {
        return Err(Error::Domain {
            what: "fit window ratio/step",
            value: config.ratio,
            domain: "ratio in (0, 1), step > 1",
        });
    }
    let pts = points(samples, point);
    if pts.len() < min {
        return Err(Error::InsufficientWindow {
            found: pts.len(),
            needed: min,
        });
    }
    let (d_max, d_min) = (pts[0].d, pts[pts.len() - 1].d);
    let slack = 1.0 + 1e-9;
    let window = |top: f64| -> Vec<&Point> {
        let lo = (top * config.ratio).max(d_min);
        pts.iter()
            .filter(|p| p.d <= top * slack && p.d * slack >= lo)
            .collect()
    };
    let mut fits: Vec<(Vec<&Point>, Line)> = Vec::new();
    let mut top = d_max;
    loop {
        let w = window(top);
        if w.len() >= min {
            let line = least_squares(&w);
            fits.push((w, line));
        }
        top /= config.step;
        if top * config.ratio < d_min / slack || !top.is_finite() || top <= 0.0 {
            break;
        }
    }
    if fits.is_empty() {
        let w = window(d_max);
        return Err(Error::InsufficientWindow {
            found: w.len(),
            needed: min,
        });
    }
    let pick = (0..fits.len().saturating_sub(1))
        .find(|&k| (fits[k].1.slope - fits[k + 1].1.slope).abs() <= config.slope_tol)
        .unwrap_or(fits.len() - 1);
    let (w, line) = &fits[pick];
    if !(line.slope.is_finite() && line.intercept.is_finite()) {
        return Err(Error::NonFinite("critical fit"));
    }
    if line.residual > config.max_residual {
        return Err(Error::NonPowerLaw {
            residual: line.residual,
        });
    }
    let exponent = match point {
        CriticalPoint::Infinity => 1.0 - line.slope,
        _ => line.slope,
    };
    let nearest = w[w.len() - 1];
    let (xa, xb) = (w[0].x, nearest.x);
    Ok(CriticalFit {
        point,
        amplitude: nearest.phase * libm::exp(line.intercept),
        exponent,
        fit_residual: line.residual,
        window: (xa.min(xb), xa.max(xb)),
        samples_used: w.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::painleve::{pvi_sample_at, SignChoice, ThetaData};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn synthetic(xs: impl Iterator<Item = f64>, f: impl Fn(f64) -> f64) -> Vec<PviSample> {
        xs.map(|x| PviSample {
            t_source: f64::NAN,
            x,
            y: Complex64::from(f(x)),
            dy_dx: Complex64::from(0.0),
            d2y_dx2: None,
        })
        .collect()
    }

    fn geometric(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
        let r = libm::pow(hi / lo, 1.0 / (n - 1) as f64);
        (0..n).map(move |i| lo * libm::pow(r, i as f64))
    }

    #[test]
    fn exact_power_law_at_zero() {
        let s = synthetic(geometric(1e-6, 1e-3, 40), |x| 3.0 * libm::pow(x, 2.0 / 3.0));
        let f = fit_exponent(&s, CriticalPoint::Zero, &FitConfig::default()).unwrap();
        assert_relative_eq!(f.exponent, 2.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(f.amplitude.re, 3.0, epsilon = 1e-10);
        assert!(f.fit_residual < 1e-12);
        assert_eq!(f.samples_used, 40);
        assert_relative_eq!(f.window.0, 1e-6, max_relative = 1e-12);
        assert_relative_eq!(f.window.1, 1e-3, max_relative = 1e-12);
    }

    #[test]
    fn one_and_infinity() {
        // y = 1 − 2(1−x)^{1/2} below x = 1
        let s = synthetic(geometric(1e-7, 1e-2, 30), |d| 1.0 - 2.0 * libm::sqrt(d));
        let s: Vec<_> = s
            .into_iter()
            .map(|mut p| {
                p.x = 1.0 - p.x;
                p
            })
            .collect();
        let f = fit_exponent(&s, CriticalPoint::One, &FitConfig::default()).unwrap();
        assert_relative_eq!(f.exponent, 0.5, epsilon = 1e-9);
        assert_relative_eq!(f.amplitude.re, 2.0, epsilon = 1e-8);
        // y = −5 x^{1/4}, so ℓ∞ = 3/4
        let s = synthetic(geometric(1e2, 1e7, 30), |x| -5.0 * libm::pow(x, 0.25));
        let f = fit_exponent(&s, CriticalPoint::Infinity, &FitConfig::default()).unwrap();
        assert_relative_eq!(f.exponent, 0.75, epsilon = 1e-9);
        assert_relative_eq!(f.amplitude.re, -5.0, epsilon = 1e-8);
        assert!(f.window.0 >= 1e2 && f.window.1 <= 1e7 * (1.0 + 1e-12));
    }

    #[test]
    fn window_moves_inward_until_slope_settles() {
        // y = x^{1/2}(1 + x^{1/3}): the correction is visible at large x.
        let s = synthetic(geometric(1e-16, 1e-1, 200), |x| {
            libm::sqrt(x) * (1.0 + libm::cbrt(x))
        });
        let f = fit_exponent(&s, CriticalPoint::Zero, &FitConfig::default()).unwrap();
        assert!(f.window.1 < 1e-4, "{:?}", f.window);
        assert!((f.exponent - 0.5).abs() < 2e-3, "{}", f.exponent);
    }

    #[test]
    fn errors() {
        let s = synthetic(geometric(1e-6, 1e-3, 5), |x| x);
        assert_eq!(
            fit_exponent(&s, CriticalPoint::Zero, &FitConfig::default()),
            Err(Error::InsufficientWindow {
                found: 5,
                needed: 8
            })
        );
        let s = synthetic(geometric(1e-6, 1e-1, 60), |x| libm::sin(1.0 / x) + 2.0);
        assert!(matches!(
            fit_exponent(&s, CriticalPoint::Zero, &FitConfig::default()),
            Err(Error::NonPowerLaw { .. })
        ));
    }

    #[test]
    fn octahedral_at_zero() {
        // On the preimage t → 3⁺: x ≈ (t−3)³/108, y ≈ (t−3)²/18, so y ≈ 18^{-1}·108^{2/3}x^{2/3}.
        let th = ThetaData::from_real(1.0).unwrap();
        let s: Vec<_> = geometric(1e-6, 1e-1, 200)
            .map(|e| pvi_sample_at(3.0 + e, [1.0; 3], &th, SignChoice::Plus).unwrap())
            .collect();
        let f = fit_exponent(&s, CriticalPoint::Zero, &FitConfig::default()).unwrap();
        assert!((f.exponent - 2.0 / 3.0).abs() < 1e-3, "{}", f.exponent);
        let a0 = libm::pow(108.0, 2.0 / 3.0) / 18.0;
        assert!((f.amplitude.re - a0).abs() < 1e-2 * a0, "{}", f.amplitude);
    }

    proptest! {
        #[test]
        fn recovers_exact_power_laws(
            l in -2.0f64..2.0,
            a in prop_oneof![0.1f64..10.0, -10.0f64..-0.1],
            lo_exp in -12.0f64..-4.0,
            decades in 3.0f64..6.0,
        ) {
            let lo = libm::pow(10.0, lo_exp);
            let hi = lo * libm::pow(10.0, decades);
            let s = synthetic(geometric(lo, hi, 50), |x| a * libm::pow(x, l));
            let f = fit_exponent(&s, CriticalPoint::Zero, &FitConfig::default()).unwrap();
            prop_assert!((f.exponent - l).abs() < 1e-8);
            prop_assert!((f.amplitude.re - a).abs() < 1e-8 * a.abs());
            prop_assert!(f.fit_residual >= 0.0);
            prop_assert!(f.window.0 >= lo * (1.0 - 1e-12) && f.window.1 <= hi * (1.0 + 1e-12));
        }
    }
}
