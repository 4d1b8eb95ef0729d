//! Four-way four-qubit invariants built from antilinear Pauli expectations.
//!
//! The building block is the bilinear form
//! `E(a,b,c,d) = Σ_{x,y} ψ_x ψ_y (σ_a⊗σ_b⊗σ_c⊗σ_d)_{xy}`, i.e. ⟨ψ*|σ…|ψ⟩ with
//! no complex conjugation. Each invariant contracts a product of such forms
//! with the metric diag(−1, 1, 0, 1) and takes the modulus of the total:
//!
//! ```text
//! F1 = |Σ g g g E(μ,ν,2,2) E(μ,2,λ,2) E(2,ν,λ,2)|
//! F2 = |Σ g g g g E(μ,ν,2,2) E(μ,2,λ,2) E(2,ν,2,τ) E(2,2,λ,τ)|
//! F3 = ½ |[Σ g g E(μ,ν,2,2)²] [Σ g g E(ρ,2,τ,2)²] [Σ g g E(κ,2,2,λ)²]|
//! ```
//!
//! With this contraction Φ₁ gives (1, 1, ½), Φ₂ gives (8/9, 0, 0) and Φ₃
//! gives (0, 0, 1).

use super::pauli::{coeff, flip, Metric};
use crate::error::Result;
use crate::linalg::{C64, ZERO};
use crate::qstate::PureState;

const ACTIVE: [usize; 3] = Metric::ACTIVE;
const Y: usize = 2;

/// Bilinear expectation Σ ψ_x ψ_y (σ_{a_0} ⊗ … ⊗ σ_{a_{n-1}})_{xy} for any
/// qubit count; `indices[0]` acts on qubit A.
pub fn antilinear_form_n(amps: &[C64], indices: &[usize]) -> C64 {
    let n = indices.len();
    debug_assert_eq!(amps.len(), 1 << n);
    let mut mask = 0usize;
    for (q, &a) in indices.iter().enumerate() {
        mask |= flip(a) << (n - 1 - q);
    }
    let mut acc = ZERO;
    for (x, &ax) in amps.iter().enumerate() {
        if ax == ZERO {
            continue;
        }
        let y = x ^ mask;
        let mut c = ax * amps[y];
        if c == ZERO {
            continue;
        }
        for (q, &a) in indices.iter().enumerate() {
            if a != 0 && a != 1 {
                c *= coeff(a, (x >> (n - 1 - q)) & 1);
            }
        }
        acc += c;
    }
    acc
}

pub fn antilinear_form(s: &PureState, a: usize, b: usize, c: usize, d: usize) -> Result<C64> {
    s.expect_qubits(4)?;
    Ok(antilinear_form_n(s.amplitudes(), &[a, b, c, d]))
}

#[inline]
fn g(i: usize) -> f64 {
    Metric::LORENTZ_LIKE.weight(i)
}

/// E together with Σ|ψ_x||ψ_y|, the scale its round-off is measured against.
fn form_with_abs(amps: &[C64], indices: [usize; 4]) -> (C64, f64) {
    let mut mask = 0usize;
    for (q, &a) in indices.iter().enumerate() {
        mask |= flip(a) << (3 - q);
    }
    let (mut acc, mut abs) = (ZERO, 0.0);
    for (x, &ax) in amps.iter().enumerate() {
        let c = ax * amps[x ^ mask];
        if c == ZERO {
            continue;
        }
        abs += c.norm();
        let mut c = c;
        for (q, &a) in indices.iter().enumerate() {
            if a > 1 {
                c *= coeff(a, (x >> (3 - q)) & 1);
            }
        }
        acc += c;
    }
    (acc, abs)
}

/// E over the three active indices for one slot pattern, with magnitudes.
#[derive(Clone, Copy)]
struct Table {
    v: [[C64; 3]; 3],
    a: [[f64; 3]; 3],
}

fn table(amps: &[C64], pattern: impl Fn(usize, usize) -> [usize; 4]) -> Table {
    let mut t = Table {
        v: [[ZERO; 3]; 3],
        a: [[0.0; 3]; 3],
    };
    for (i, &a) in ACTIVE.iter().enumerate() {
        for (j, &b) in ACTIVE.iter().enumerate() {
            (t.v[i][j], t.a[i][j]) = form_with_abs(amps, pattern(a, b));
        }
    }
    t
}

/// A contraction and the sum of its terms' magnitudes (|g| = 1 on ACTIVE).
type Part = (C64, f64);

fn square_contraction(t: &Table) -> Part {
    let (mut acc, mut abs) = (ZERO, 0.0);
    for (i, &a) in ACTIVE.iter().enumerate() {
        for (j, &b) in ACTIVE.iter().enumerate() {
            acc += t.v[i][j] * t.v[i][j] * (g(a) * g(b));
            abs += t.a[i][j] * t.a[i][j];
        }
    }
    (acc, abs)
}

fn f1_part(ab: &Table, ac: &Table, bc: &Table) -> Part {
    let (mut acc, mut abs) = (ZERO, 0.0);
    for (i, &m) in ACTIVE.iter().enumerate() {
        for (j, &n) in ACTIVE.iter().enumerate() {
            for (k, &l) in ACTIVE.iter().enumerate() {
                acc += ab.v[i][j] * ac.v[i][k] * bc.v[j][k] * (g(m) * g(n) * g(l));
                abs += ab.a[i][j] * ac.a[i][k] * bc.a[j][k];
            }
        }
    }
    (acc, abs)
}

fn f2_part(ab: &Table, ac: &Table, bd: &Table, cd: &Table) -> Part {
    let (mut acc, mut abs) = (ZERO, 0.0);
    for (i, &m) in ACTIVE.iter().enumerate() {
        for (j, &n) in ACTIVE.iter().enumerate() {
            for (k, &l) in ACTIVE.iter().enumerate() {
                for (u, &t) in ACTIVE.iter().enumerate() {
                    acc += ab.v[i][j] * ac.v[i][k] * bd.v[j][u] * cd.v[k][u] * (g(m) * g(n) * g(l) * g(t));
                    abs += ab.a[i][j] * ac.a[i][k] * bd.a[j][u] * cd.a[k][u];
                }
            }
        }
    }
    (acc, abs)
}

/// F3 is a product of three quadratic contractions; it sits on a zero as
/// soon as one factor does.
fn f3_part(ab: &Table, ac: &Table, ad: &Table) -> (C64, bool) {
    let factors = [square_contraction(ab), square_contraction(ac), square_contraction(ad)];
    let value = factors[0].0 * factors[1].0 * factors[2].0 * 0.5;
    (value, factors.iter().any(|&(v, a)| at_roundoff(v.norm(), a)))
}

/// Relative round-off allowance: a generous multiple of the operation count
/// of the deepest contraction.
pub const ROUNDOFF_FACTOR: f64 = 128.0;

/// True when `value` is indistinguishable from zero given that its terms
/// sum to `magnitude` in absolute value.
#[inline]
pub(crate) fn at_roundoff(value: f64, magnitude: f64) -> bool {
    value <= ROUNDOFF_FACTOR * f64::EPSILON * magnitude
}

/// `f^(1/root)`, or exactly 0 when `f` is round-off. Without this a state
/// on an exact zero of F (value ~1e-16) would report G ~ 1e-16^(1/6) ≈ 2e-3.
#[inline]
pub(crate) fn root_or_zero(f: f64, is_roundoff: bool, root: u32) -> f64 {
    if is_roundoff {
        0.0
    } else {
        f.powf(1.0 / f64::from(root))
    }
}

fn ab(amps: &[C64]) -> Table {
    table(amps, |m, n| [m, n, Y, Y])
}
fn ac(amps: &[C64]) -> Table {
    table(amps, |m, l| [m, Y, l, Y])
}
fn ad(amps: &[C64]) -> Table {
    table(amps, |k, l| [k, Y, Y, l])
}
fn bc(amps: &[C64]) -> Table {
    table(amps, |n, l| [Y, n, l, Y])
}
fn bd(amps: &[C64]) -> Table {
    table(amps, |n, t| [Y, n, Y, t])
}
fn cd(amps: &[C64]) -> Table {
    table(amps, |l, t| [Y, Y, l, t])
}

/// F1 before the modulus, a homogeneous sextic in ψ.
#[cfg(test)]
fn f1_raw(amps: &[C64]) -> C64 {
    f1_part(&ab(amps), &ac(amps), &bc(amps)).0
}

/// One four-way invariant, optionally as its degree-2 root.
pub(crate) fn eval(kind: FourWay, root: bool, amps: &[C64]) -> f64 {
    let (value, roundoff) = match kind {
        FourWay::F1 => {
            let (v, a) = f1_part(&ab(amps), &ac(amps), &bc(amps));
            (v.norm(), at_roundoff(v.norm(), a))
        }
        FourWay::F2 => {
            let (v, a) = f2_part(&ab(amps), &ac(amps), &bd(amps), &cd(amps));
            (v.norm(), at_roundoff(v.norm(), a))
        }
        FourWay::F3 => {
            let (v, zero) = f3_part(&ab(amps), &ac(amps), &ad(amps));
            (v.norm(), zero)
        }
    };
    if root {
        root_or_zero(value, roundoff, kind.root())
    } else {
        value
    }
}

/// All six of F1, F2, F3, G1, G2, G3 from one set of tables.
pub(crate) fn eval_all(amps: &[C64]) -> [f64; 6] {
    let (tab_ab, tab_ac) = (ab(amps), ac(amps));
    let (v1, a1) = f1_part(&tab_ab, &tab_ac, &bc(amps));
    let (v2, a2) = f2_part(&tab_ab, &tab_ac, &bd(amps), &cd(amps));
    let (v3, z3) = f3_part(&tab_ab, &tab_ac, &ad(amps));
    let (f1, f2, f3) = (v1.norm(), v2.norm(), v3.norm());
    [
        f1,
        f2,
        f3,
        root_or_zero(f1, at_roundoff(f1, a1), 3),
        root_or_zero(f2, at_roundoff(f2, a2), 4),
        root_or_zero(f3, z3, 6),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FourWay {
    F1,
    F2,
    F3,
}

impl FourWay {
    /// Polynomial degree in the amplitudes.
    pub fn degree(self) -> u32 {
        match self {
            Self::F1 => 6,
            Self::F2 => 8,
            Self::F3 => 12,
        }
    }

    /// Root taken by the matching linear monotone G = F^{1/root}.
    pub fn root(self) -> u32 {
        self.degree() / 2
    }
}

pub fn f_invariant(kind: FourWay, s: &PureState) -> Result<f64> {
    s.expect_qubits(4)?;
    Ok(eval(kind, false, s.amplitudes()))
}

/// G = F^{1/root}; exactly 0 when F is at round-off level.
pub fn g_invariant(kind: FourWay, s: &PureState) -> Result<f64> {
    s.expect_qubits(4)?;
    Ok(eval(kind, true, s.amplitudes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::pauli::SigmaBasis;
    use crate::qstate::{catalog_lookup, FamilyId};

    fn state(key: &str) -> PureState {
        catalog_lookup(key).unwrap().state
    }

    /// Dense Kronecker-product evaluation, independent of the bit tricks.
    fn dense_form(s: &PureState, idx: [usize; 4]) -> C64 {
        let sig = SigmaBasis::new();
        let m = idx
            .iter()
            .skip(1)
            .fold(sig.get(idx[0]).clone(), |acc, &k| acc.kron(sig.get(k)));
        let a = s.amplitudes();
        let ma = m.apply(a);
        a.iter().zip(&ma).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn monomial_form_matches_dense_kron() {
        let fam = FamilyId::Rho2.family();
        let z = fam.superpose(0.37, 0.9).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let fast = antilinear_form(&z, a, b, c, d).unwrap();
                        assert!((fast - dense_form(&z, [a, b, c, d])).norm() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn phi1_all_y_and_product_state() {
        let v = antilinear_form(&state("phi1"), 2, 2, 2, 2).unwrap();
        assert!((v - C64::new(1.0, 0.0)).norm() < 1e-15);
        let prod = PureState::basis(4, 0);
        for k in [FourWay::F1, FourWay::F2, FourWay::F3] {
            assert_eq!(f_invariant(k, &prod).unwrap(), 0.0);
        }
    }

    #[test]
    fn table_one() {
        let rows = [
            ("phi1", [1.0, 1.0, 0.5]),
            ("phi2", [8.0 / 9.0, 0.0, 0.0]),
            ("phi3", [0.0, 0.0, 1.0]),
            ("w4", [0.0, 0.0, 0.0]),
        ];
        for (key, expected) in rows {
            let s = state(key);
            for (k, e) in [FourWay::F1, FourWay::F2, FourWay::F3].into_iter().zip(expected) {
                let v = f_invariant(k, &s).unwrap();
                assert!((v - e).abs() < 1e-12, "{key} {k:?}: {v}");
            }
        }
    }

    #[test]
    fn w4_forms_contract_to_zero() {
        assert!(f1_raw(state("w4").amplitudes()).norm() < 1e-15);
    }

    #[test]
    fn z1_point_value() {
        let z = FamilyId::Rho1.family().superpose(0.8, 0.0).unwrap();
        assert!((f_invariant(FourWay::F1, &z).unwrap() - 0.416).abs() < 1e-12);
    }

    #[test]
    fn g_examples() {
        let g3 = g_invariant(FourWay::F3, &state("phi1")).unwrap();
        assert!((g3 - 0.5f64.powf(1.0 / 6.0)).abs() < 1e-12);
        assert!((g3 - 0.8909).abs() < 1e-4);
        for k in [FourWay::F1, FourWay::F2, FourWay::F3] {
            assert!(g_invariant(k, &state("w4")).unwrap() < 1e-12);
        }
        let fam = FamilyId::Rho1.family();
        for p in [0.1, 0.5, 0.93] {
            let z = fam.superpose(p, 0.4).unwrap();
            let v = g_invariant(FourWay::F3, &z).unwrap();
            assert!((v - p / 2f64.powf(1.0 / 6.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn wrong_qubit_count() {
        assert!(f_invariant(FourWay::F1, &state("ghz3")).is_err());
        assert!(antilinear_form(&state("ghz3"), 0, 0, 0, 0).is_err());
    }

    #[test]
    fn roots_snap_only_at_roundoff() {
        let fam = FamilyId::Rho1.family();
        let p0 = 3f64.sqrt() / (3f64.sqrt() + 1.0);
        for k in 0..4 {
            let z = fam.superpose(p0, std::f64::consts::FRAC_PI_2 * k as f64).unwrap();
            assert!(f_invariant(FourWay::F1, &z).unwrap() < 1e-14);
            assert_eq!(g_invariant(FourWay::F1, &z).unwrap(), 0.0);
        }
        // F3 = p⁶/2 ≈ 7.8e-15 here is genuine, not round-off
        let z = fam.superpose(0.005, 0.3).unwrap();
        let g3 = g_invariant(FourWay::F3, &z).unwrap();
        assert!((g3 - 0.005 / 2f64.powf(1.0 / 6.0)).abs() < 1e-12, "{g3}");
    }

    #[test]
    fn eval_all_agrees() {
        let fam = FamilyId::Rho3.family();
        for &(p, phi) in &[(0.0, 0.0), (0.3, 1.0), (0.6, 3.14159), (0.9, 5.0), (1.0, 2.0)] {
            let z = fam.superpose(p, phi).unwrap();
            let all = eval_all(z.amplitudes());
            for (i, kind) in [FourWay::F1, FourWay::F2, FourWay::F3].into_iter().enumerate() {
                assert_eq!(all[i], eval(kind, false, z.amplitudes()));
                assert_eq!(all[i + 3], eval(kind, true, z.amplitudes()));
            }
        }
    }
}
