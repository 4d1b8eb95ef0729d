//! Closed-form convex roofs for the supported rank-2 cases.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::invariants::InvariantKind;
use crate::qstate::{FamilyId, RankTwoFamily};

fn sqrt3() -> f64 {
    3f64.sqrt()
}

/// Zero of F1 on Z₁(p, 0): √3/(√3+1).
pub fn p0_f1_rho1() -> f64 {
    sqrt3() / (sqrt3() + 1.0)
}

/// Zero of F2 on Z₁(p, 0).
pub const P0_F2_RHO1: f64 = 2.0 / 3.0;

/// Zero of F1 on Z₂(p, 0): (2√6)^{2/3} / (1 + (2√6)^{2/3}).
pub fn p0_f1_rho2() -> f64 {
    let a = (2.0 * 6f64.sqrt()).powf(2.0 / 3.0);
    a / (1.0 + a)
}

/// Zero of F3 on Z₃(p, 0).
pub const P0_F3_RHO3: f64 = 3.0 / 5.0;

/// Zero of τ₃² on the GHZ/W curve: 4·2^{1/3} / (3 + 4·2^{1/3}).
pub fn p0_ghzw() -> f64 {
    let a = 4.0 * 2f64.cbrt();
    a / (3.0 + a)
}

/// Tangent point of the τ₃² roof: 1/2 + 3√465/310.
pub fn p1_ghzw() -> f64 {
    0.5 + 3.0 * 465f64.sqrt() / 310.0
}

/// Start of the non-convex stretch of g_I for ρ₂; upper bracket for p₁.
pub const P_STAR_RHO2: f64 = 0.9196;

/// 6p(4p − 3)² − (1 − p)(1 + 2p)²
pub fn p1_equation(p: f64) -> f64 {
    6.0 * p * (4.0 * p - 3.0).powi(2) - (1.0 - p) * (1.0 + 2.0 * p).powi(2)
}

/// Tangent point p₁ of the F1(ρ₂) roof, by bisection on `p1_equation`
/// over (p₀, p*).
pub fn solve_p1() -> f64 {
    static P1: OnceLock<f64> = OnceLock::new();
    *P1.get_or_init(|| {
        let (mut lo, mut hi) = (p0_f1_rho2(), P_STAR_RHO2);
        let f_lo = p1_equation(lo);
        debug_assert!(f_lo * p1_equation(hi) < 0.0);
        while hi - lo > 1e-13 {
            let mid = 0.5 * (lo + hi);
            let f_mid = p1_equation(mid);
            if f_mid == 0.0 {
                return mid;
            }
            if (f_mid < 0.0) == (f_lo < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    })
}

/// θ(x) with θ(0) = 1.
pub fn step(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        0.0
    }
}

/// (8/9)·p^{3/2}·[p^{3/2} − 2√6(1−p)^{3/2}]
pub fn g_i_rho2(p: f64) -> f64 {
    8.0 / 9.0 * p.powf(1.5) * (p.powf(1.5) - 2.0 * 6f64.sqrt() * (1.0 - p).powf(1.5))
}

/// (8/9)·[(p−p₁)/(1−p₁) + (1−p)/(1−p₁)·{p₁³ − 2√6·p₁^{3/2}(1−p₁)^{3/2}}]
pub fn g_ii_rho2(p: f64, p1: f64) -> f64 {
    let inner = p1.powi(3) - 2.0 * 6f64.sqrt() * p1.powf(1.5) * (1.0 - p1).powf(1.5);
    8.0 / 9.0 * ((p - p1) / (1.0 - p1) + (1.0 - p) / (1.0 - p1) * inner)
}

/// p² − (8√6/9)·√(p(1−p)³)
pub fn g_i_ghzw(p: f64) -> f64 {
    p * p - 8.0 * 6f64.sqrt() / 9.0 * (p * (1.0 - p).powi(3)).sqrt()
}

/// 1 − (1−p)(3/2 + √465/18)
pub fn g_ii_ghzw(p: f64, _p1: f64) -> f64 {
    1.0 - (1.0 - p) * (1.5 + 465f64.sqrt() / 18.0)
}

/// A measure evaluated on one of the rank-2 families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Case {
    pub family: FamilyId,
    pub kind: InvariantKind,
}

impl Case {
    pub const fn new(family: FamilyId, kind: InvariantKind) -> Self {
        Self { family, kind }
    }

    /// Every case with a closed-form roof, including the identically-zero ones.
    pub fn supported() -> Vec<Case> {
        use FamilyId::*;
        use InvariantKind::*;
        let mut out = Vec::new();
        for kind in [F1, F2, F3, G1, G2, G3] {
            for family in [Rho1, Rho2, Rho3] {
                out.push(Case::new(family, kind));
            }
        }
        out.push(Case::new(GhzW, Tau3Squared));
        out.push(Case::new(GhzW, Tau3));
        out
    }

    pub fn is_supported(&self) -> bool {
        Self::supported().contains(self)
    }

    pub fn is_identically_zero(&self) -> bool {
        use FamilyId::*;
        use InvariantKind::*;
        matches!(
            (self.family, self.kind),
            (Rho2, F2 | F3 | G2 | G3) | (Rho3, F1 | F2 | G1 | G2)
        )
    }

    /// Parses names such as `F1-rho1`, `G3-rho3` or `tau3sq-ghzw`.
    pub fn parse(s: &str) -> Result<Case> {
        let unknown = || Error::UnknownCase(s.to_string());
        let (k, f) = s.split_once('-').ok_or_else(unknown)?;
        let case = Case::new(FamilyId::parse(f).ok_or_else(unknown)?, InvariantKind::parse(k).ok_or_else(unknown)?);
        if case.is_supported() {
            Ok(case)
        } else {
            Err(unknown())
        }
    }

    pub fn family(&self) -> RankTwoFamily {
        self.family.family()
    }

    /// Phase count m such that the m equally spaced curves
    /// Z(p, 2πk/m) all sit at the phase minimum.
    pub fn phase_count(&self) -> usize {
        use FamilyId::*;
        use InvariantKind::*;
        match (self.family, self.kind) {
            (Rho1, F1 | F2 | G1 | G2) => 4,
            (Rho1, _) | (Rho3, _) => 2,
            (Rho2, _) | (GhzW, _) => 3,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.kind.name(), self.family.name())
    }
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    Zero,
    Smooth(fn(f64) -> f64),
    /// θ(p − p₀)·f(p)
    Thresholded { p0: f64, f: fn(f64) -> f64 },
    /// θ(p − p₀)·top·(p − p₀)/(1 − p₀)
    Ramp { p0: f64, top: f64 },
    /// 0, g_I, g_II on [0,p₀], [p₀,p₁], [p₁,1]
    TwoBranch {
        p0: f64,
        p1: f64,
        g_i: fn(f64) -> f64,
        g_ii: fn(f64, f64) -> f64,
    },
}

#[derive(Debug, Clone)]
pub struct PiecewiseFormula {
    pub case: Case,
    /// p₀, and p₁ where the roof has a tangent segment.
    pub breakpoints: Vec<f64>,
    shape: Shape,
}

impl PiecewiseFormula {
    pub fn value(&self, p: f64) -> f64 {
        match self.shape {
            Shape::Zero => 0.0,
            Shape::Smooth(f) => f(p),
            Shape::Thresholded { p0, f } => step(p - p0) * f(p),
            Shape::Ramp { p0, top } => step(p - p0) * top * (p - p0) / (1.0 - p0),
            Shape::TwoBranch { p0, p1, g_i, g_ii } => {
                if p < p0 {
                    0.0
                } else if p < p1 {
                    g_i(p)
                } else {
                    g_ii(p, p1)
                }
            }
        }
    }

    pub fn p0(&self) -> Option<f64> {
        self.breakpoints.first().copied()
    }

    pub fn p1(&self) -> Option<f64> {
        self.breakpoints.get(1).copied()
    }
}

pub fn reference_formula(case: Case) -> Result<PiecewiseFormula> {
    use FamilyId::*;
    use InvariantKind::*;
    if !case.is_supported() {
        return Err(Error::UnknownCase(case.to_string()));
    }
    let shape = if case.is_identically_zero() {
        Shape::Zero
    } else {
        match (case.family, case.kind) {
            (Rho1, F1) => Shape::Thresholded {
                p0: p0_f1_rho1(),
                f: |p| p * (6.0 * p - 2.0 * p * p - 3.0),
            },
            (Rho1, F2) => Shape::Thresholded {
                p0: P0_F2_RHO1,
                f: |p| p * p * (p * p - 4.0 * (1.0 - p) * (1.0 - p)),
            },
            (Rho1, F3) => Shape::Smooth(|p| p.powi(6) / 2.0),
            (Rho1, G1) => Shape::Ramp { p0: p0_f1_rho1(), top: 1.0 },
            (Rho1, G2) => Shape::Ramp { p0: P0_F2_RHO1, top: 1.0 },
            (Rho1, G3) => Shape::Smooth(|p| p / 2f64.powf(1.0 / 6.0)),
            (Rho2, F1) => Shape::TwoBranch {
                p0: p0_f1_rho2(),
                p1: solve_p1(),
                g_i: g_i_rho2,
                g_ii: g_ii_rho2,
            },
            (Rho2, G1) => Shape::Ramp {
                p0: p0_f1_rho2(),
                top: (8.0f64 / 9.0).cbrt(),
            },
            (Rho3, F3) => Shape::Thresholded {
                p0: P0_F3_RHO3,
                f: |p| 2.5 * p.powi(5) * (p - 0.6),
            },
            (Rho3, G3) => Shape::Ramp { p0: P0_F3_RHO3, top: 1.0 },
            (GhzW, Tau3Squared) => Shape::TwoBranch {
                p0: p0_ghzw(),
                p1: p1_ghzw(),
                g_i: g_i_ghzw,
                g_ii: g_ii_ghzw,
            },
            (GhzW, Tau3) => Shape::Ramp { p0: p0_ghzw(), top: 1.0 },
            _ => unreachable!("support checked above"),
        }
    };
    let breakpoints = match shape {
        Shape::Zero | Shape::Smooth(_) => vec![],
        Shape::Thresholded { p0, .. } | Shape::Ramp { p0, .. } => vec![p0],
        Shape::TwoBranch { p0, p1, .. } => vec![p0, p1],
    };
    Ok(PiecewiseFormula {
        case,
        breakpoints,
        shape,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::measure;

    #[test]
    fn breakpoint_values() {
        assert!((p0_f1_rho1() - 0.634).abs() < 1e-3);
        assert!((p0_f1_rho2() - 0.743).abs() < 1e-3);
        assert!((p0_ghzw() - 0.6269).abs() < 1e-4);
        assert!((p1_ghzw() - 0.7087).abs() < 1e-4);
    }

    #[test]
    fn p1_root() {
        let p1 = solve_p1();
        assert!((p1 - 0.861).abs() < 1e-3);
        assert!(p1_equation(p1).abs() < 1e-10);
        assert!(p1 > 0.743 && p1 < 0.9196);
    }

    #[test]
    fn point_evaluations() {
        use FamilyId::*;
        use InvariantKind::*;
        let f = reference_formula(Case::new(Rho1, F1)).unwrap();
        assert!((f.value(0.8) - 0.416).abs() < 1e-12);
        // g_I(0.8) = (8/9)·0.8^{3/2}(0.8^{3/2} − 2√6·0.2^{3/2})
        let f = reference_formula(Case::new(Rho2, F1)).unwrap();
        let direct = 8.0 / 9.0 * 0.8f64.powf(1.5) * (0.8f64.powf(1.5) - 2.0 * 6f64.sqrt() * 0.2f64.powf(1.5));
        assert!((f.value(0.8) - direct).abs() < 1e-15);
        assert!((f.value(0.8) - 0.17642).abs() < 1e-5);
        let f = reference_formula(Case::new(GhzW, Tau3)).unwrap();
        assert!((f.p0().unwrap() - 0.6269).abs() < 1e-4);
        let f = reference_formula(Case::new(Rho3, G3)).unwrap();
        assert!((f.value(0.7) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn endpoints_and_continuity() {
        for case in Case::supported() {
            let f = reference_formula(case).unwrap();
            let fam = case.family();
            assert!(f.value(0.0).abs() < 1e-12, "{case}");
            let top = measure(case.kind, fam.phi()).unwrap();
            assert!((f.value(1.0) - top).abs() < 1e-9, "{case}: {} vs {top}", f.value(1.0));
            for &b in &f.breakpoints {
                let h = 1e-12;
                assert!((f.value(b - h) - f.value(b + h)).abs() < 1e-9, "{case} at {b}");
            }
        }
    }

    #[test]
    fn rho2_f1_smooth_at_p1() {
        let f = reference_formula(Case::new(FamilyId::Rho2, InvariantKind::F1)).unwrap();
        let p1 = f.p1().unwrap();
        let h = 1e-6;
        let left = (g_i_rho2(p1) - g_i_rho2(p1 - h)) / h;
        let right = (f.value(p1 + h) - f.value(p1)) / h;
        assert!((left - right).abs() < 1e-5, "{left} vs {right}");
        // central derivative of g_I matches the chord slope to O(h²)
        let central = (g_i_rho2(p1 + h) - g_i_rho2(p1 - h)) / (2.0 * h);
        let chord = (8.0 / 9.0 - g_i_rho2(p1)) / (1.0 - p1);
        assert!((central - chord).abs() < 1e-6);
    }

    #[test]
    fn case_names() {
        for case in Case::supported() {
            assert_eq!(Case::parse(&case.to_string()).unwrap(), case);
        }
        assert!(Case::parse("F1-ghzw").is_err());
        assert!(Case::parse("tau3-rho1").is_err());
        assert!(Case::parse("nonsense").is_err());
        assert_eq!(Case::supported().len(), 20);
    }
}
