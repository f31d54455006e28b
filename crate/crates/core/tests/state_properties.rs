use elliptic_rydberg::angmom::EulerAngles;
use elliptic_rydberg::states::{
    build_elliptic, dispersion_sum, expectation_lk, overlap, rotate, shell_moments, EllipticSpec, WaveFunction,
};
use elliptic_rydberg::UnitVector;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn direction() -> impl Strategy<Value = UnitVector> {
    (-1.0f64..=1.0, 0.0..TAU).prop_map(|(z, phi)| UnitVector::from_polar(z.acos(), phi))
}

fn random_state(max_n: usize) -> impl Strategy<Value = WaveFunction> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |c| {
            let coeffs = c.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
            WaveFunction::normalized(n, coeffs).unwrap()
        })
    })
}

fn angles() -> impl Strategy<Value = EulerAngles> {
    (0.0..TAU, 0.0..PI, 0.0..TAU).prop_map(|(a, b, c)| EulerAngles::new(a, b, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rotation_keeps_norm(s in random_state(20), r in angles()) {
        prop_assert!((rotate(&s, &r).norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotations_compose_on_states(s in random_state(8), a in angles(), b in angles()) {
        let twice = rotate(&rotate(&s, &b), &a);
        let once = rotate(&s, &a.compose(&b));
        for (x, y) in twice.as_slice().iter().zip(once.as_slice()) {
            prop_assert!((x - y).norm() < 1e-11);
        }
    }

    #[test]
    fn shell_casimir_and_orthogonality(s in random_state(12)) {
        let n = s.n() as f64;
        let m = shell_moments(&s);
        prop_assert!((m.casimir() - (n * n - 1.0)).abs() < 1e-9);
        prop_assert!(m.lk_anticommutator.abs() < 1e-9);
    }

    #[test]
    fn elliptic_states_are_minimal(n in 2usize..=20, u1 in direction(), u2 in direction()) {
        let spec = EllipticSpec::new(n, u1, u2).unwrap();
        let s = build_elliptic(&spec).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert!((dispersion_sum(&s) - 2.0 * (n as f64 - 1.0)).abs() < 1e-9);
        // product and coupled forms agree
        let p = spec.product_state().unwrap();
        prop_assert!((dispersion_sum(&p) - 2.0 * (n as f64 - 1.0)).abs() < 1e-9);
    }

    #[test]
    fn elliptic_moments_follow_directions(n in 2usize..=12, u1 in direction(), u2 in direction()) {
        let s = build_elliptic(&EllipticSpec::new(n, u1, u2).unwrap()).unwrap();
        let (l, k) = expectation_lk(&s);
        let j = 0.5 * (n as f64 - 1.0);
        let (a, b) = (u1.as_vector(), u2.as_vector());
        prop_assert!((l - (a + b) * j).norm() < 1e-9);
        prop_assert!((k - (b - a) * j).norm() < 1e-9);
    }

    #[test]
    fn overlap_law(n in 2usize..=20, u1 in direction(), v1 in direction(), u2 in direction()) {
        let a = build_elliptic(&EllipticSpec::new(n, u1, u2).unwrap()).unwrap();
        let b = build_elliptic(&EllipticSpec::new(n, v1, u2).unwrap()).unwrap();
        let chi = u1.angle_to(&v1);
        let want = (0.5 * chi).cos().powi(2 * (n as i32 - 1));
        prop_assert!((overlap(&a, &b).unwrap().norm_sqr() - want).abs() < 1e-11);
    }
}

#[test]
fn rotated_elliptic_state_is_elliptic_state_of_rotated_directions() {
    let n = 7;
    let (u1, u2) = (UnitVector::from_polar(0.4, 1.0), UnitVector::from_polar(2.1, -0.7));
    let r = EulerAngles::new(0.3, 1.2, 2.5).unwrap();
    let m = r.rotation_matrix();
    let ru1 = UnitVector::normalize(m * u1.as_vector()).unwrap();
    let ru2 = UnitVector::normalize(m * u2.as_vector()).unwrap();
    let a = rotate(&build_elliptic(&EllipticSpec::new(n, u1, u2).unwrap()).unwrap(), &r);
    let b = build_elliptic(&EllipticSpec::new(n, ru1, ru2).unwrap()).unwrap();
    // equal up to a global phase
    assert!((overlap(&a, &b).unwrap().norm() - 1.0).abs() < 1e-11);
}

#[test]
fn json_round_trip() {
    let s = build_elliptic(&EllipticSpec::new(4, UnitVector::X, UnitVector::Y).unwrap()).unwrap();
    let text = serde_json::to_string(&s.to_dump()).unwrap();
    let back = WaveFunction::from_dump(&serde_json::from_str(&text).unwrap()).unwrap();
    for (a, b) in s.as_slice().iter().zip(back.as_slice()) {
        assert!((a - b).norm() < 1e-15);
    }
}
