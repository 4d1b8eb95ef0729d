use num_complex::Complex64 as C;
use proptest::prelude::*;

use tangle_roof::invariants::{concurrence_mixed, concurrence_pure};
use tangle_roof::qstate::{density_of, parse_state, write_state};
use tangle_roof::roof::{lower_convex_envelope, reference_formula, Case};
use tangle_roof::{measure, InvariantKind, PureState};

fn amps(n: usize) -> impl Strategy<Value = Vec<C>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(|v| v.into_iter().map(|(a, b)| C::new(a, b)).collect())
}

fn state(n: usize) -> impl Strategy<Value = PureState> {
    amps(n).prop_map(|a| PureState::new(a).unwrap().normalize().unwrap())
}

/// det-1 local operator with bounded condition number.
fn sl2() -> impl Strategy<Value = [[C; 2]; 2]> {
    prop::array::uniform4((-1.0f64..1.0, -1.0f64..1.0))
        .prop_map(|e| {
            let m = e.map(|(a, b)| C::new(a, b));
            [[m[0], m[1]], [m[2], m[3]]]
        })
        .prop_filter("well conditioned", |m| (m[0][0] * m[1][1] - m[0][1] * m[1][0]).norm() > 0.2)
        .prop_map(|m| {
            let s = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).sqrt();
            m.map(|row| row.map(|x| x / s))
        })
}

fn apply_local(s: &PureState, ops: &[[[C; 2]; 2]]) -> PureState {
    let n = ops.len();
    let mut a = s.amplitudes().to_vec();
    for (q, op) in ops.iter().enumerate() {
        let bit = 1 << (n - 1 - q);
        for x in (0..a.len()).filter(|x| x & bit == 0) {
            let (a0, a1) = (a[x], a[x | bit]);
            a[x] = op[0][0] * a0 + op[0][1] * a1;
            a[x | bit] = op[1][0] * a0 + op[1][1] * a1;
        }
    }
    PureState::new(a).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn four_way_slocc_invariant(s in state(4), ops in prop::array::uniform4(sl2())) {
        let t = apply_local(&s, &ops);
        for k in [InvariantKind::F1, InvariantKind::F2, InvariantKind::F3] {
            prop_assert!(rel(measure(k, &s).unwrap(), measure(k, &t).unwrap()) < 1e-8, "{}", k);
        }
    }

    #[test]
    fn three_tangle_slocc_invariant(s in state(3), ops in prop::array::uniform3(sl2())) {
        let t = apply_local(&s, &ops);
        prop_assert!(rel(measure(InvariantKind::Tau3Squared, &s).unwrap(), measure(InvariantKind::Tau3Squared, &t).unwrap()) < 1e-8);
    }

    #[test]
    fn concurrence_slocc_invariant(s in state(2), ops in prop::array::uniform2(sl2())) {
        let t = apply_local(&s, &ops);
        prop_assert!(rel(measure(InvariantKind::Concurrence, &s).unwrap(), measure(InvariantKind::Concurrence, &t).unwrap()) < 1e-8);
    }

    #[test]
    fn homogeneous(s in state(4), r in 0.3f64..2.0, phase in 0.0f64..6.28) {
        let c = C::from_polar(r, phase);
        let scaled = PureState::new(s.amplitudes().iter().map(|a| a * c).collect()).unwrap();
        for k in [InvariantKind::F1, InvariantKind::F2, InvariantKind::F3, InvariantKind::G1, InvariantKind::G2, InvariantKind::G3] {
            let want = measure(k, &s).unwrap() * r.powi(k.degree() as i32);
            prop_assert!(rel(measure(k, &scaled).unwrap(), want) < 1e-10, "{}", k);
        }
    }

    #[test]
    fn wootters_matches_pure(s in state(2)) {
        let mixed = concurrence_mixed(&density_of(&s)).unwrap();
        prop_assert!((mixed - concurrence_pure(&s).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn envelope_convex_and_dominated(v in prop::collection::vec(0.0f64..1.0, 2..80)) {
        let n = v.len();
        let p: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        let h = lower_convex_envelope(&p, &v).unwrap();
        for i in 0..n {
            prop_assert!(h[i] <= v[i] + 1e-12);
        }
        for w in h.windows(3) {
            prop_assert!(w[0] - 2.0 * w[1] + w[2] >= -1e-9);
        }
        prop_assert!((h[0] - v[0]).abs() < 1e-12 && (h[n - 1] - v[n - 1]).abs() < 1e-12);
    }

    #[test]
    fn state_file_round_trip(s in state(3)) {
        let back = parse_state(&write_state(&s), false).unwrap();
        for (a, b) in s.amplitudes().iter().zip(back.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn reference_formulas_continuous(case_idx in 0usize..20, p in 0.0f64..1.0) {
        let case = Case::supported()[case_idx];
        let f = reference_formula(case).unwrap();
        let h = 1e-9;
        let (a, b) = (f.value((p - h).max(0.0)), f.value((p + h).min(1.0)));
        prop_assert!((a - b).abs() < 1e-6, "{} at {}", case, p);
    }
}
