#![allow(dead_code)]

use instanton_pvi::asd::{integrate_asd, InstantonState, IntegratorConfig};
use instanton_pvi::{closed_form_solution, ClosedForm};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const TOL: f64 = 1e-10;

/// Integrate from `s0` to `lo` and to `hi` and join the pieces in
/// increasing `t`.
pub fn two_sided(s0: &InstantonState, lo: f64, hi: f64, tol: f64) -> Option<Vec<InstantonState>> {
    let cfg = IntegratorConfig::with_tol(tol);
    let down = integrate_asd(s0, lo, &cfg).ok()?;
    let up = integrate_asd(s0, hi, &cfg).ok()?;
    let mut out: Vec<InstantonState> = down.samples().iter().rev().copied().collect();
    out.extend(up.samples().iter().skip(1).copied());
    Some(out)
}

/// Octahedral, Hopf and ten seeded random solutions with `a₁a₂a₃ ≠ 0`,
/// each integrated over `[lo, hi]` from `t = ½`.
pub fn trajectories(lo: f64, hi: f64) -> Vec<(String, Vec<InstantonState>)> {
    let mut out = Vec::new();
    let mut push = |name: String, s0: InstantonState| match two_sided(&s0, lo, hi, TOL) {
        Some(states) => {
            out.push((name, states));
            true
        }
        None => false,
    };
    push(
        "octahedral".into(),
        closed_form_solution(ClosedForm::Octahedral, 0.5).unwrap(),
    );
    push(
        "hopf".into(),
        closed_form_solution(ClosedForm::Hopf, 0.5).unwrap(),
    );
    let mut rng = StdRng::seed_from_u64(20240611);
    let mut made = 0;
    while made < 10 {
        let a: [f64; 3] = core::array::from_fn(|_| {
            let m = rng.random_range(0.2..1.5);
            if rng.random_bool(0.5) {
                m
            } else {
                -m
            }
        });
        let s0 = InstantonState::new(0.5, a).unwrap();
        if push(format!("random-{made}"), s0) {
            made += 1;
        }
    }
    out
}
