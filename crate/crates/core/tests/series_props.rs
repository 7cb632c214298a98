mod common;

use gkm_core::builtin::{builtin_fiber_join, builtin_hirzebruch, builtin_simplex, builtin_stiefel};
use gkm_core::exactlin::MatrixQ;
use gkm_core::gkm::equivariant_dims;
use gkm_core::series::{
    basic_from_equivariant, boundary_simplex_faces, free_hilbert, gysin_betti, morse_bott_assemble, run_checks,
    stanley_reisner_hilbert, CheckStatus, DegreeSeries, GysinData, MorseBottComponent, MorseBottData, Verdict,
};
use gkm_core::Error;
use proptest::prelude::*;

fn component() -> impl Strategy<Value = MorseBottComponent> {
    (0usize..5, proptest::collection::vec(0i64..4, 1..5)).prop_map(|(i, c)| MorseBottComponent {
        index: 2 * i,
        series: DegreeSeries::new(c.clone(), c.len() - 1),
    })
}

proptest! {
    #[test]
    fn division_inverts_multiplication(
        poly in proptest::collection::vec(0i64..5, 1..8),
        k in 0usize..4,
    ) {
        let cutoff = 24;
        let p = DegreeSeries::new(poly, cutoff);
        let eq = p.mul(&free_hilbert(k, cutoff));
        let (back, report) = basic_from_equivariant(&eq, k + 1, cutoff).unwrap();
        prop_assert_eq!(back, p);
        prop_assert!(report.nonnegative);
    }

    #[test]
    fn morse_bott_is_additive(
        a in proptest::collection::vec(component(), 0..4),
        b in proptest::collection::vec(component(), 0..4),
    ) {
        let cutoff = 16;
        let sa = morse_bott_assemble(&MorseBottData { components: a.clone() }, cutoff).unwrap();
        let sb = morse_bott_assemble(&MorseBottData { components: b.clone() }, cutoff).unwrap();
        let both = morse_bott_assemble(&MorseBottData { components: [a, b].concat() }, cutoff).unwrap();
        prop_assert_eq!(both, sa.add(&sb));
    }

    #[test]
    fn gysin_ends_are_one(n in 1usize..6, dims in proptest::collection::vec(1usize..4, 1..5), c in 1i64..5) {
        // basic dims 1, d_1, ..., d_{n-1}, 1 with delta_0 nonzero
        let mut basic = vec![1];
        basic.extend(dims.iter().copied().cycle().take(n - 1));
        basic.push(1);
        let euler_mult = (0..n)
            .map(|k| {
                let mut m = MatrixQ::zeros(basic[k + 1], basic[k]);
                m.set(0, 0, gkm_core::exactlin::q(c));
                m
            })
            .collect();
        let t = gysin_betti(&GysinData { basic_dims: basic, euler_mult }, n).unwrap();
        prop_assert_eq!(t.betti[0], 1);
        prop_assert_eq!(t.betti[2 * n + 1], 1);
        prop_assert_eq!(t.betti.len(), 2 * n + 2);
    }
}

#[test]
fn stanley_reisner_equals_simplex_dims() {
    for n in 1..=4 {
        let sr = stanley_reisner_hilbert(&boundary_simplex_faces(n), 20).unwrap();
        let oracle: Vec<i64> = (0..=20).map(|m| common::boundary_simplex_oracle(n, m)).collect();
        assert_eq!(sr.coeffs(), oracle.as_slice());
        for cutoff in [0, 1, 7, 20] {
            let eq = equivariant_dims(&builtin_simplex(n).unwrap(), cutoff).unwrap();
            assert_eq!(eq, sr.truncate(cutoff), "n = {n}, cutoff = {cutoff}");
        }
    }
}

#[test]
fn stanley_reisner_examples() {
    let seg = stanley_reisner_hilbert(&[vec![], vec![0], vec![1]], 6).unwrap();
    assert_eq!(seg.coeffs(), &[1, 0, 2, 0, 2, 0, 2]);
    let point = stanley_reisner_hilbert(&[vec![], vec![0]], 4).unwrap();
    assert_eq!(point.coeffs(), &[1, 0, 1, 0, 1]);
    assert!(stanley_reisner_hilbert(&[vec![], vec![0, 1]], 4).is_err());
    assert!(stanley_reisner_hilbert(&[vec![0]], 4).is_err());
}

/// Monomials in `n + 1` variables of degree `d` minus those divisible by
/// every variable: `binom(d + n, n) - binom(d - 1, n)`.
#[test]
fn simplex_growth_is_polynomial() {
    for n in 1..=4i64 {
        let dims = equivariant_dims(&builtin_simplex(n as usize).unwrap(), 20).unwrap();
        for d in (n + 1)..=10 {
            let expected = common::binomial(d + n, n) - common::binomial(d - 1, n);
            assert_eq!(dims.get(2 * d as usize), expected, "n = {n}, d = {d}");
        }
    }
}

#[test]
fn minimal_basic_ring_for_simplices() {
    for n in 1..=4 {
        let eq = equivariant_dims(&builtin_simplex(n).unwrap(), 20).unwrap();
        let (basic, report) = basic_from_equivariant(&eq, n + 1, 20).unwrap();
        let expected: Vec<i64> = (0..=2 * n).map(|k| i64::from(k % 2 == 0)).collect();
        assert_eq!(basic, DegreeSeries::new(expected, 20));
        assert_eq!(report.sum, n as i64 + 1);
        assert_eq!(report.verdict, Verdict::PolynomialUpToCutoff);
    }
}

#[test]
fn negative_coefficient_is_a_formality_violation() {
    let eq = DegreeSeries::new(vec![1, 0, 1], 6);
    assert!(matches!(
        basic_from_equivariant(&eq, 3, 6),
        Err(Error::FormalityViolation { degree: 2, value: -1 })
    ));
}

#[test]
fn short_cutoff_is_inconclusive() {
    let eq = equivariant_dims(&builtin_simplex(3).unwrap(), 6).unwrap();
    let (_, report) = basic_from_equivariant(&eq, 4, 6).unwrap();
    assert_eq!(report.verdict, Verdict::InconclusiveAtCutoff);
    let r = run_checks(&builtin_simplex(3).unwrap(), 6).unwrap();
    assert!(r.any_inconclusive());
    assert!(!r.minimal);
}

#[test]
fn checks_on_simplices() {
    for n in 1..=3 {
        let r = run_checks(&builtin_simplex(n).unwrap(), 12).unwrap();
        assert!(r.checks.iter().all(|c| c.status == CheckStatus::Pass), "{r:?}");
        assert!(r.minimal);
    }
}

#[test]
fn checks_on_fiber_join() {
    let r = run_checks(&builtin_fiber_join(1, 1).unwrap(), 20).unwrap();
    assert_eq!(r.report.sum, 8);
    assert_eq!(r.basic.coeffs()[..5], [1, 2, 2, 2, 1]);
    assert_eq!(r.check("orbit_count").unwrap().status, CheckStatus::Pass);
    assert_eq!(r.check("odd_basic_vanishing").unwrap().status, CheckStatus::Skipped);
    assert!(!r.minimal);
}

#[test]
fn checks_on_hirzebruch() {
    for m in 1..=3 {
        let r = run_checks(&builtin_hirzebruch(m).unwrap(), 20).unwrap();
        assert_eq!(r.basic.coeffs()[..6], [1, 0, 2, 0, 1, 0]);
        assert_eq!(r.report.sum, 4);
        for name in ["odd_basic_vanishing", "orbit_count", "closed_orbit_lower_bound"] {
            assert_eq!(r.check(name).unwrap().status, CheckStatus::Pass, "{name}");
        }
        assert!(!r.minimal);
    }
}

#[test]
fn checks_on_stiefel() {
    let r = run_checks(&builtin_stiefel(), 20).unwrap();
    assert_eq!(r.basic.coeffs()[..8], [1, 0, 1, 0, 1, 0, 1, 0]);
    assert!(r.minimal);
    assert!(!r.any_failed());
}

#[test]
fn series_json_shape() {
    let s = DegreeSeries::new(vec![1, 0, 1], 2);
    assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"cutoff":2,"coeffs":[1,0,1]}"#);
    assert!(serde_json::from_str::<DegreeSeries>(r#"{"cutoff":3,"coeffs":[1]}"#).is_err());
}
