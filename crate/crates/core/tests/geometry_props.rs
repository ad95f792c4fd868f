mod common;

use proptest::prelude::*;
use qbd_tails::asymptotics::Asymptotics;
use qbd_tails::geometry::{Curve, Geometry};
use qbd_tails::kernel::{Axis, Branch};
use qbd_tails::model::{Face, ValidatedModel};
use qbd_tails::oracle::{default_window, extract, fit_tail, solve_truncated, Direction};

fn gf(m: &ValidatedModel, face: Face, u: [f64; 2]) -> f64 {
    m.kernel(face).gf_real(u[0], u[1])
}

fn face(k: Axis) -> Face {
    match k {
        Axis::One => Face::Boundary1,
        Axis::Two => Face::Boundary2,
    }
}

/// No point of the interior curve set just beyond the Γ-point in coordinate k
/// is feasible for face k.
fn nothing_beyond_gamma_point(g: &Geometry, k: Axis) -> Result<(), TestCaseError> {
    let m = g.model();
    let kern = g.kernel();
    let b = kern.branch_points(k);
    let x = g.gamma_point(k)[k.index()] + 1e-5;
    if x > b.u_max {
        return Ok(());
    }
    let lo = kern.zeta_real(k.other(), x, Branch::Lower).unwrap();
    let hi = kern.zeta_real(k.other(), x, Branch::Upper).unwrap();
    for i in 0..=2000 {
        let y = lo + (hi - lo) * i as f64 / 2000.0;
        let u = match k {
            Axis::One => [x, y],
            Axis::Two => [y, x],
        };
        prop_assert!(gf(m, face(k), u) > 1.0, "feasible point {u:?} beyond the Γ-point");
    }
    Ok(())
}

/// Maximum of the upper branch over u1 >= a by ternary search in u-space.
fn upper_max_from(g: &Geometry, a: f64) -> f64 {
    let kern = g.kernel();
    let b = kern.branch_points(Axis::One);
    let f = |u: f64| kern.zeta_real(Axis::Two, u, Branch::Upper).unwrap();
    let (mut lo, mut hi) = (a.clamp(b.u_min, b.u_max), b.u_max);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) < f(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    f(0.5 * (lo + hi))
}

proptest! {
    #![proptest_config(common::config(48))]

    #[test]
    fn extreme_points_solve_their_equations(seed in any::<u64>()) {
        let m = common::random_stable(&mut common::rng(seed));
        let g = Geometry::new(&m).unwrap();
        for k in [Axis::One, Axis::Two] {
            let r = g.extreme_r(k);
            let on_both = (gf(&m, Face::Interior, r) - 1.0).abs() < 1e-9 && (gf(&m, face(k), r) - 1.0).abs() < 1e-9;
            prop_assert!(on_both || r == g.extreme_max(k), "axis {k:?}: {r:?}");
            prop_assert!((gf(&m, Face::Interior, g.extreme_max(k)) - 1.0).abs() < 1e-9);
            nothing_beyond_gamma_point(&g, k)?;
        }
    }

    #[test]
    fn category_and_tau_are_sane(seed in any::<u64>()) {
        let m = common::random_stable(&mut common::rng(seed));
        let g = Geometry::new(&m).unwrap();
        let (g1, g2) = (g.gamma_point(Axis::One), g.gamma_point(Axis::Two));
        prop_assert!(!(g2[0] > g1[0] + 1e-9 && g1[1] > g2[1] + 1e-9), "impossible ordering {g1:?} {g2:?}");
        prop_assert!(g.tau[0] > 1.0 && g.tau[1] > 1.0, "tau {:?}", g.tau);
    }

    #[test]
    fn theta_and_u_computations_agree(seed in any::<u64>()) {
        let m = common::random_stable(&mut common::rng(seed));
        let g = Geometry::new(&m).unwrap();
        for c in Curve::ALL {
            let s = g.sample_boundary(c, 25).unwrap();
            for (t, u) in s.theta.iter().zip(&s.u) {
                for i in 0..2 {
                    if t[i].is_finite() {
                        prop_assert!((t[i].exp() - u[i]).abs() <= 1e-9 * u[i].max(1.0));
                    }
                }
            }
        }
        let b = g.kernel().branch_points(Axis::One);
        for i in 0..=10 {
            let u1 = b.u_min + (b.u_max - b.u_min) * i as f64 / 10.0;
            let direct = g.tau[1].ln().min(upper_max_from(&g, u1).ln());
            let top = g.domain_top(u1.ln());
            // At the branch point the square-root behaviour turns rounding in e^θ into ~1e-8.
            let tol = if i == 10 { 1e-6 } else { 1e-9 };
            prop_assert!((direct - top).abs() < tol, "at u1 = {u1}: {direct} vs {top}");
        }
    }

    #[test]
    fn axis_decay_equals_marginal_rate(seed in any::<u64>()) {
        let m = common::random_stable(&mut common::rng(seed));
        let a = Asymptotics::new(&m).unwrap();
        let d1 = a.geometry.directional_decay([1.0, 0.0]).unwrap();
        let d2 = a.geometry.directional_decay([0.0, 1.0]).unwrap();
        let m1 = a.marginal_class(Axis::One).unwrap().rate;
        let m2 = a.marginal_class(Axis::Two).unwrap().rate;
        prop_assert!((d1 / m1 - 1.0).abs() < 1e-9, "{d1} vs {m1}");
        prop_assert!((d2 / m2 - 1.0).abs() < 1e-9, "{d2} vs {m2}");
    }
}

#[test]
fn axis_decay_matches_oracle() {
    let mut models = vec![common::product(), common::network(1.0, 2.0, 5.0, 0.25, 0.0)];
    let corpus = common::corpus();
    models.extend(corpus.into_iter().filter(|m| {
        let a = Asymptotics::new(m).unwrap();
        [Axis::One, Axis::Two].iter().all(|&k| {
            let r = a.marginal_class(k).unwrap().rate;
            (1.4..3.0).contains(&r)
        })
    }).take(2));
    assert!(models.len() >= 3);
    for m in &models {
        let g = Geometry::new(m).unwrap();
        let dist = solve_truncated(m, 200).unwrap();
        for (dir, c) in [(Direction::Marginal1, [1.0, 0.0]), (Direction::Marginal2, [0.0, 1.0])] {
            let fit = fit_tail(&extract(&dist, dir), default_window(200)).unwrap();
            let want = g.directional_decay(c).unwrap();
            assert!((fit.rate_hat / want - 1.0).abs() < 5e-3, "{dir}: fitted {} vs {want}", fit.rate_hat);
        }
    }
}

