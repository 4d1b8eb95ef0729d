//! Explicit pure-state decompositions that realize the closed-form roofs.

use std::f64::consts::TAU;

use super::reference::{reference_formula, Case};
use crate::error::{check_unit_interval, Error, Result};
use crate::invariants::{measure, InvariantKind};
use crate::qstate::{density_of, DensityMatrix, PureState, RankTwoFamily};

/// Caratheodory bound for rank-2 four-qubit mixtures.
pub const MAX_TERMS: usize = 5;
const MERGE_TOL: f64 = 1e-12;
const WEIGHT_FLOOR: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub terms: Vec<(f64, PureState)>,
    pub target: DensityMatrix,
}

impl Decomposition {
    /// Drops vanishing weights and merges states equal up to global phase.
    pub fn new(raw: Vec<(f64, PureState)>, target: DensityMatrix) -> Self {
        let mut terms: Vec<(f64, PureState)> = Vec::with_capacity(raw.len());
        for (w, s) in raw {
            if w <= WEIGHT_FLOOR {
                continue;
            }
            match terms.iter_mut().find(|(_, t)| t.same_ray(&s, MERGE_TOL)) {
                Some(existing) => existing.0 += w,
                None => terms.push((w, s)),
            }
        }
        Self { terms, target }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        self.terms.iter().map(|(w, _)| w).sum()
    }

    pub fn reconstruct(&self) -> DensityMatrix {
        let dens: Vec<DensityMatrix> = self.terms.iter().map(|(_, s)| density_of(s)).collect();
        let parts: Vec<(f64, &DensityMatrix)> = self.terms.iter().map(|(w, _)| *w).zip(dens.iter()).collect();
        DensityMatrix::weighted_sum(&parts)
    }
}

/// The decomposition shapes used to build the roofs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecompositionForm {
    /// p|Φ⟩⟨Φ| + (1−p)|W⟩⟨W| itself.
    Spectral,
    /// (1/m) Σ_k |Z(p, 2πk/m)⟩⟨Z(p, 2πk/m)|.
    PhaseAverage,
    /// (p/p₀)·ρ(p₀) + (1 − p/p₀)|W⟩⟨W| with ρ(p₀) phase-averaged.
    BelowZero,
    /// (p−a)/(1−a)|Φ⟩⟨Φ| + (1−p)/(1−a)·ρ(a) with ρ(a) phase-averaged.
    ChordToPhi { anchor: f64 },
}

impl DecompositionForm {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Spectral => "spectral",
            Self::PhaseAverage => "phase-average",
            Self::BelowZero => "below-zero",
            Self::ChordToPhi { .. } => "chord",
        }
    }
}

/// A form together with the p-interval on which it is optimal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub lo: f64,
    pub hi: f64,
    pub form: DecompositionForm,
}

/// Regions covering [0, 1] for the given case, in increasing p.
pub fn regions(case: Case) -> Result<Vec<Region>> {
    use crate::qstate::FamilyId::*;
    use DecompositionForm::*;
    use InvariantKind::*;
    let formula = reference_formula(case)?;
    let r = |lo, hi, form| Region { lo, hi, form };
    if case.is_identically_zero() {
        return Ok(vec![r(0.0, 1.0, Spectral)]);
    }
    let p0 = formula.p0();
    Ok(match (case.family, case.kind, p0) {
        (Rho1, F3 | G3, _) => vec![r(0.0, 1.0, PhaseAverage)],
        (_, G1 | G2 | G3 | Tau3, Some(p0)) => vec![r(0.0, p0, BelowZero), r(p0, 1.0, ChordToPhi { anchor: p0 })],
        (_, _, Some(p0)) => match formula.p1() {
            Some(p1) => vec![
                r(0.0, p0, BelowZero),
                r(p0, p1, PhaseAverage),
                r(p1, 1.0, ChordToPhi { anchor: p1 }),
            ],
            None => vec![r(0.0, p0, BelowZero), r(p0, 1.0, PhaseAverage)],
        },
        _ => unreachable!("every non-zero case has a breakpoint or is phase independent"),
    })
}

fn phase_average(fam: &RankTwoFamily, p: f64, m: usize) -> Vec<(f64, PureState)> {
    (0..m)
        .map(|k| (1.0 / m as f64, fam.superpose_unchecked(p, TAU * k as f64 / m as f64)))
        .collect()
}

fn scaled(terms: Vec<(f64, PureState)>, factor: f64) -> impl Iterator<Item = (f64, PureState)> {
    terms.into_iter().map(move |(w, s)| (w * factor, s))
}

/// Builds a specific form at `p`, failing when `p` lies outside the region
/// where the case uses it.
pub fn build_form(case: Case, form: DecompositionForm, p: f64) -> Result<Decomposition> {
    check_unit_interval("p", p)?;
    let region = regions(case)?
        .into_iter()
        .find(|r| std::mem::discriminant(&r.form) == std::mem::discriminant(&form))
        .ok_or_else(|| Error::FormNotUsed {
            form: form.name(),
            case: case.to_string(),
        })?;
    if p < region.lo - 1e-15 || p > region.hi + 1e-15 {
        return Err(Error::RegionMismatch {
            form: form.name(),
            p,
            lo: region.lo,
            hi: region.hi,
        });
    }
    let fam = case.family();
    let m = case.phase_count();
    let raw: Vec<(f64, PureState)> = match region.form {
        DecompositionForm::Spectral => vec![(p, fam.phi().clone()), (1.0 - p, fam.w().clone())],
        DecompositionForm::PhaseAverage => phase_average(&fam, p, m),
        DecompositionForm::BelowZero => {
            let p0 = region.hi;
            let mut t: Vec<_> = scaled(phase_average(&fam, p0, m), p / p0).collect();
            t.push((1.0 - p / p0, fam.w().clone()));
            t
        }
        DecompositionForm::ChordToPhi { anchor } => {
            let mut t = vec![((p - anchor) / (1.0 - anchor), fam.phi().clone())];
            t.extend(scaled(phase_average(&fam, anchor, m), (1.0 - p) / (1.0 - anchor)));
            t
        }
    };
    Ok(Decomposition::new(raw, fam.mix(p)?))
}

/// The optimal decomposition for `case` at `p`.
pub fn build_decomposition(case: Case, p: f64) -> Result<Decomposition> {
    check_unit_interval("p", p)?;
    let region = regions(case)?
        .into_iter()
        .find(|r| p <= r.hi)
        .expect("regions cover [0, 1]");
    build_form(case, region.form, p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verification {
    /// Max-abs entrywise difference between Σ wᵢ|ψᵢ⟩⟨ψᵢ| and the target.
    pub residual: f64,
    /// Σ wᵢ·measure(ψᵢ)
    pub avg_entanglement: f64,
}

pub fn verify_decomposition(d: &Decomposition, kind: InvariantKind) -> Result<Verification> {
    let residual = d.reconstruct().entries().max_abs_diff(d.target.entries());
    let mut avg = 0.0;
    for (w, s) in &d.terms {
        avg += w * measure(kind, s)?;
    }
    Ok(Verification {
        residual,
        avg_entanglement: avg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::FamilyId;
    use std::f64::consts::FRAC_PI_2;

    fn case(s: &str) -> Case {
        Case::parse(s).unwrap()
    }

    #[test]
    fn rho1_f1_at_p0_is_four_phases() {
        let c = case("F1-rho1");
        let p0 = reference_formula(c).unwrap().p0().unwrap();
        let d = build_decomposition(c, p0).unwrap();
        assert_eq!(d.len(), 4);
        let fam = FamilyId::Rho1.family();
        for (k, (w, s)) in d.terms.iter().enumerate() {
            assert!((w - 0.25).abs() < 1e-15);
            assert!(s.same_ray(&fam.superpose(p0, FRAC_PI_2 * k as f64).unwrap(), 1e-14));
        }
        let v = verify_decomposition(&d, InvariantKind::F1).unwrap();
        assert!(v.residual < 1e-12);
        assert!(v.avg_entanglement < 1e-12);
    }

    #[test]
    fn rho2_f1_at_p0_is_three_phases() {
        let c = case("F1-rho2");
        let p0 = reference_formula(c).unwrap().p0().unwrap();
        let d = build_decomposition(c, p0).unwrap();
        assert_eq!(d.len(), 3);
        let fam = FamilyId::Rho2.family();
        for (k, (w, s)) in d.terms.iter().enumerate() {
            assert!((w - 1.0 / 3.0).abs() < 1e-15);
            assert!(s.same_ray(&fam.superpose(p0, TAU * k as f64 / 3.0).unwrap(), 1e-14));
        }
    }

    #[test]
    fn rho3_f3_below_zero_weights() {
        let c = case("F3-rho3");
        let p = 0.4;
        let p0 = 0.6;
        let d = build_decomposition(c, p).unwrap();
        let fam = FamilyId::Rho3.family();
        let expected = [
            (p / (2.0 * p0), fam.superpose(p0, 0.0).unwrap()),
            (p / (2.0 * p0), fam.superpose(p0, std::f64::consts::PI).unwrap()),
            (1.0 - p / p0, fam.w().clone()),
        ];
        assert_eq!(d.len(), 3);
        for ((w, s), (ew, es)) in d.terms.iter().zip(&expected) {
            assert!((w - ew).abs() < 1e-15);
            assert!(s.same_ray(es, 1e-14));
        }
        let v = verify_decomposition(&d, InvariantKind::F3).unwrap();
        assert!(v.residual < 1e-12 && v.avg_entanglement < 1e-12);
    }

    #[test]
    fn rho1_f1_large_p_average() {
        let d = build_decomposition(case("F1-rho1"), 0.8).unwrap();
        let v = verify_decomposition(&d, InvariantKind::F1).unwrap();
        assert!(v.residual < 1e-12);
        assert!((v.avg_entanglement - 0.416).abs() < 1e-12);
    }

    #[test]
    fn pure_state_single_term() {
        let fam = FamilyId::Rho1.family();
        let d = Decomposition::new(vec![(1.0, fam.phi().clone())], fam.mix(1.0).unwrap());
        let v = verify_decomposition(&d, InvariantKind::F1).unwrap();
        assert!(v.residual < 1e-12);
        assert!((v.avg_entanglement - 1.0).abs() < 1e-12);
    }

    #[test]
    fn endpoints_merge_duplicates() {
        // Z(0, 0) = −W and Z(0, π) = W collapse into one term
        let d = build_decomposition(case("F3-rho1"), 0.0).unwrap();
        assert_eq!(d.len(), 1);
        assert!((d.terms[0].0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn region_mismatch() {
        let c = case("F1-rho1");
        assert!(matches!(
            build_form(c, DecompositionForm::PhaseAverage, 0.3),
            Err(Error::RegionMismatch { .. })
        ));
        assert!(matches!(
            build_form(c, DecompositionForm::ChordToPhi { anchor: 0.5 }, 0.9),
            Err(Error::FormNotUsed { .. })
        ));
        assert!(build_form(c, DecompositionForm::BelowZero, 0.3).is_ok());
        assert!(build_decomposition(c, 1.2).is_err());
    }

    #[test]
    fn term_counts_bounded() {
        for c in Case::supported() {
            for i in 0..=20 {
                let d = build_decomposition(c, i as f64 / 20.0).unwrap();
                assert!((1..=MAX_TERMS).contains(&d.len()), "{c}: {}", d.len());
                assert!((d.weight_sum() - 1.0).abs() < 1e-12);
            }
        }
    }
}
