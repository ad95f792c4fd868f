mod common;

use proptest::prelude::*;
use qbd_tails::asymptotics::{AsymptoticClass, Asymptotics, Kappa};
use qbd_tails::kernel::Axis;
use qbd_tails::model::ValidatedModel;

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

fn five(a: &Asymptotics) -> Vec<(&'static str, AsymptoticClass)> {
    vec![
        ("boundary1", a.boundary_class(Axis::One).unwrap()),
        ("boundary2", a.boundary_class(Axis::Two).unwrap()),
        ("marginal1", a.marginal_class(Axis::One).unwrap()),
        ("marginal2", a.marginal_class(Axis::Two).unwrap()),
        ("diagonal", a.diagonal_class().unwrap()),
    ]
}

fn check_rates(m: &ValidatedModel) -> Result<(), TestCaseError> {
    let a = Asymptotics::new(m).unwrap();
    let tau = a.geometry.tau;
    let sp = [a.sigma.sigma_plus_1, a.sigma.sigma_plus_2];
    let one_of = |got: f64, cands: &[Option<f64>]| cands.iter().flatten().any(|&c| rel(got, c) < 1e-9);
    for k in [Axis::One, Axis::Two] {
        let i = k.index();
        prop_assert_eq!(a.boundary_class(k).unwrap().rate, tau[i]);
        let got = a.marginal_class(k).unwrap().rate;
        prop_assert!(got <= tau[i] * (1.0 + 1e-9) && one_of(got, &[Some(tau[i]), sp[i]]), "marginal {}: {} (tau {:?}, sigma_plus {:?})", i + 1, got, tau, sp[i]);
    }
    let got = a.diagonal_class().unwrap().rate;
    let cap = tau[0].min(tau[1]);
    prop_assert!(got <= cap * (1.0 + 1e-9) && one_of(got, &[Some(cap), a.sigma.sigma_d]), "diagonal: {} (tau {:?}, sigma_d {:?})", got, tau, a.sigma.sigma_d);
    let along = a.geometry.directional_decay([1.0, 1.0]).unwrap();
    prop_assert!(rel(got, along) < 1e-8, "diagonal {} vs decay along (1, 1) {}", got, along);
    Ok(())
}

fn check_flags(m: &ValidatedModel) -> Result<(), TestCaseError> {
    let a = Asymptotics::new(m).unwrap();
    for (name, c) in five(&a) {
        prop_assert!(!(c.periodic && a.profile.va), "{name} periodic although va holds");
        if c.kappa == Kappa::One {
            // A linear factor needs a tie between two of the characteristic points.
            let tie = c.gaps.iter().any(|(_, g)| g.abs() < 1e-9);
            prop_assert!(tie, "{name}: kappa 1 without a tie: {:?}", c.gaps);
        }
    }
    Ok(())
}

fn check_swap(m: &ValidatedModel) -> Result<(), TestCaseError> {
    let a = Asymptotics::new(m).unwrap();
    let s = Asymptotics::new(&m.swap_coordinates()).unwrap();
    let pairs = [
        (a.boundary_class(Axis::One), s.boundary_class(Axis::Two)),
        (a.boundary_class(Axis::Two), s.boundary_class(Axis::One)),
        (a.marginal_class(Axis::One), s.marginal_class(Axis::Two)),
        (a.marginal_class(Axis::Two), s.marginal_class(Axis::One)),
        (a.diagonal_class(), s.diagonal_class()),
    ];
    for (x, y) in pairs {
        let (x, y) = (x.unwrap(), y.unwrap());
        prop_assert!(rel(x.rate, y.rate) < 1e-9, "{} vs {}", x.provenance, y.provenance);
        prop_assert_eq!(x.kappa, y.kappa, "{} vs {}", x.provenance, y.provenance);
        prop_assert_eq!(x.periodic, y.periodic, "{} vs {}", x.provenance, y.provenance);
    }
    Ok(())
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn rates_are_minima_of_the_characteristic_points(seed in any::<u64>()) {
        check_rates(&common::random_stable(&mut common::rng(seed)))?;
    }

    #[test]
    fn periodicity_and_linear_factor_are_justified(seed in any::<u64>()) {
        check_flags(&common::random_stable(&mut common::rng(seed)))?;
    }

    #[test]
    fn classes_follow_a_coordinate_swap(seed in any::<u64>()) {
        check_swap(&common::random_stable(&mut common::rng(seed)))?;
    }
}

#[test]
fn named_models_are_coherent() {
    let mut models = vec![common::product(), common::x_shaped()];
    for q in [0.0, 0.4, 0.9] {
        models.push(common::network(1.0, 5.0, 4.0, 0.25, q));
        models.push(common::network(1.0, 2.0, 5.0, 0.25, q));
    }
    models.extend(common::corpus());
    models.retain(|m| Asymptotics::new(m).is_ok());
    assert!(models.len() >= 26);
    for m in &models {
        check_rates(m).unwrap();
        check_flags(m).unwrap();
        check_swap(m).unwrap();
    }
}
