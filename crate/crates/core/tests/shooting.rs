use instanton_pvi::asd::conserved_quantity;
use instanton_pvi::critical::geometric_offsets;
use instanton_pvi::shooting::{holonomy_data, sample_c_map, shoot, ShootingConfig, SolveConfig};

/// Least-squares slope of `log|f|` against `log u`.
fn log_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = pts.iter().map(|(u, f)| (u.ln(), f.abs().ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[test]
fn theta_squared_is_the_boundary_value() {
    for (c, rm) in [
        (0.5, 1.0),
        (1.0, 1.5),
        (2.0, 2.0),
        (1.0, 2.5),
        (0.7, 3.0),
        (1.0, 3.6),
    ] {
        let res = shoot(&ShootingConfig::new(c, rm)).unwrap();
        let q = conserved_quantity(res.trajectory.first());
        let eps: f64 = res.config.eps_start;
        let bound = 10.0 * eps.powf((rm - 1.0f64).min(2.0)).max(1e-9) * rm * rm;
        assert!((q - rm * rm).abs() <= bound, "r-={rm}: {q} vs {}", rm * rm);
        assert!((res.theta.theta_squared() - q).abs() <= 1e-12 * q);
    }
}

#[test]
fn boundary_mode_has_the_predicted_antisymmetric_decay() {
    // With the decaying mode a₁ ≈ a₃ ≈ c u^k, the difference a₁ − a₃ is
    // c(1−r)/(1+r)·u^{k+1} to leading order.
    for rm in [1.5, 2.0, 3.0, 3.5] {
        let res = shoot(&ShootingConfig::new(1.0, rm)).unwrap();
        let pts: Vec<(f64, f64)> = geometric_offsets(2e-5, 1e-3, 40)
            .unwrap()
            .into_iter()
            .map(|u| {
                let a = res.trajectory.interpolate(1.0 - u).unwrap().a();
                (u, a[0] - a[2])
            })
            .collect();
        let k = (rm - 1.0) / 2.0;
        let slope = log_slope(&pts);
        assert!((slope - (k + 1.0)).abs() < 1e-2, "r-={rm}: slope {slope}");
        let (u, d) = pts[0];
        let amp = d / u.powf(k + 1.0);
        assert!(
            (amp - (1.0 - rm) / (1.0 + rm)).abs() < 1e-2,
            "r-={rm}: amplitude {amp}"
        );
    }
}

#[test]
fn c_map_is_monotone_on_several_families() {
    let template = SolveConfig::default().shooting;
    for rm in [1.0, 1.5, 2.5] {
        let grid = sample_c_map(rm, 1.5, 15, &template).unwrap();
        assert_eq!(grid[0], (0.0, 0.0));
        assert!(grid.windows(2).all(|w| w[1].1 > w[0].1));
    }
}

#[test]
fn holonomy_follows_the_boundary_value() {
    let res = shoot(&ShootingConfig::new(1.0, 3.0)).unwrap();
    let h = holonomy_data(3.0, 1).unwrap();
    assert!(h.label_consistent && !h.trivial);
    assert!((res.theta.theta().re - h.theta).abs() < 1e-9);
}
