use std::f64::consts::{FRAC_PI_2, PI};

use qtherm::estimation::{
    fi_deficit, fisher_dispersive_opt, fisher_population, optimize_protocol, qfi,
    qfi_dispersive_opt, tau_opt_transverse,
};
use qtherm::{InverseTemperature, ModelId, ProtocolTime, QubitPrep};

fn b(x: f64) -> InverseTemperature {
    InverseTemperature::new(x).unwrap()
}
fn t(x: f64) -> ProtocolTime {
    ProtocolTime::new(x).unwrap()
}

#[test]
fn transverse_optimum_at_poles() {
    for beta in [0.5, 3.0, 8.0] {
        let r = optimize_protocol(ModelId::Transverse, b(beta), 2.0).unwrap();
        let theta = r.prep_used.theta;
        assert!(theta.min(PI - theta) < 1e-4, "β={beta}: θ*={theta}");
        assert!((r.tau_used - tau_opt_transverse(b(beta)).value()).abs() < 1e-4);
        assert!(r.fisher_population <= r.qfi + 1e-9);
    }
}

#[test]
fn dispersive_cold_optimum_sensitive_to_theta() {
    let beta = b(10.0);
    let r = optimize_protocol(ModelId::Dispersive, beta, PI).unwrap();
    let theta = r.prep_used.theta;
    assert!(theta.min(PI - theta) < 1e-4);
    let tilted = QubitPrep::new(0.1, r.prep_used.phi).unwrap();
    let f = fisher_population(ModelId::Dispersive, beta, tilted, t(r.tau_used));
    let drop = r.fisher_population / f;
    // the tilt by 0.1 costs a factor of about 56 at β = 10
    assert!(drop > 50.0 && drop < 60.0, "drop {drop}");
    let tilted = QubitPrep::new(FRAC_PI_2 / 2.0, r.prep_used.phi).unwrap();
    let f = fisher_population(ModelId::Dispersive, beta, tilted, t(r.tau_used));
    assert!(r.fisher_population / f > 1e3);
}

#[test]
fn dispersive_qfi_optimum_degenerate() {
    for beta in [0.5, 1.0, 3.0, 10.0] {
        for tau in [0.3, 0.8, 1.5, 2.6] {
            let h0 = qfi(ModelId::Dispersive, b(beta), QubitPrep::ground(), t(tau)).unwrap();
            for phi in [0.0, 1.0, 4.0] {
                let h = qfi(
                    ModelId::Dispersive,
                    b(beta),
                    QubitPrep::new(0.0, phi).unwrap(),
                    t(tau),
                )
                .unwrap();
                assert!((h - h0).abs() <= 1e-8 * h0);
            }
            for theta in [0.2, 1.0, FRAC_PI_2, 2.9] {
                for phi in [FRAC_PI_2, 3.0 * FRAC_PI_2] {
                    let h = qfi(
                        ModelId::Dispersive,
                        b(beta),
                        QubitPrep::new(theta, phi).unwrap(),
                        t(tau),
                    )
                    .unwrap();
                    assert!(
                        (h - h0).abs() <= 1e-8 * h0,
                        "β={beta} τ={tau} θ={theta} φ={phi}"
                    );
                }
            }
        }
    }
}

#[test]
fn dispersive_qfi_optimizer_matches_closed_form() {
    for beta in [1.0, 3.0, 10.0] {
        let r = optimize_protocol(ModelId::Dispersive, b(beta), PI).unwrap();
        let tau = r.qfi_optimum.tau;
        let c = qfi_dispersive_opt(b(beta), t(tau));
        assert!((r.qfi_optimum.value - c).abs() <= 1e-9 * c);
        assert!(r.fisher_population <= r.qfi_optimum.value + 1e-9);
    }
}

#[test]
fn dispersive_population_closed_form() {
    for beta in [0.1, 0.7, 2.0, 6.0, 15.0] {
        for k in 1..30 {
            let time = t(PI * k as f64 / 30.0);
            let f = fisher_population(ModelId::Dispersive, b(beta), QubitPrep::ground(), time);
            let c = fisher_dispersive_opt(b(beta), time);
            assert!((f - c).abs() <= 1e-10 * c, "β={beta} τ={}", time.value());
        }
    }
}

#[test]
fn deficit_properties() {
    for beta in [0.3, 1.0, 5.0, 10.0] {
        for k in 1..40 {
            let time = t(PI * k as f64 / 40.0);
            let d = fi_deficit(ModelId::Dispersive, b(beta), time).unwrap();
            assert!((0.0..=1.0).contains(&d));
            let d = fi_deficit(ModelId::Transverse, b(beta), time).unwrap();
            assert!(d.abs() <= 1e-10);
        }
    }
    assert!(fi_deficit(ModelId::Dispersive, b(1.0), t(PI)).is_err());
    assert!(fi_deficit(ModelId::Transverse, b(1.0), t(0.0)).is_err());
}

#[test]
fn deficit_example_ordering() {
    let d1 = fi_deficit(ModelId::Dispersive, b(1.0), t(0.8)).unwrap();
    let d5 = fi_deficit(ModelId::Dispersive, b(5.0), t(0.8)).unwrap();
    let d10 = fi_deficit(ModelId::Dispersive, b(10.0), t(0.8)).unwrap();
    assert!(d10 < d5 && d5 < d1);
    assert!(d10 > 0.0 && d10 < 1e-2);
}
