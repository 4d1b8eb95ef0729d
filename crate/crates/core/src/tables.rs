//! Reference tables: four-way invariants of the
//! maximally entangled states, roof formulas against their decompositions,
//! and two-qubit concurrences of the marginals.

use crate::error::Result;
use crate::invariants::{concurrence_mixed, f_invariant, FourWay, InvariantKind};
use crate::qstate::{catalog_lookup, FamilyId};
use crate::roof::{build_decomposition, reference_formula, step, verify_decomposition, Case};

pub const INVARIANT_TABLE_KEYS: [&str; 4] = ["phi1", "phi2", "phi3", "w4"];
pub const INVARIANT_TABLE_EXPECTED: [[f64; 3]; 4] = [[1.0, 1.0, 0.5], [8.0 / 9.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]];

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantRow {
    pub key: &'static str,
    pub expected: [f64; 3],
    pub computed: [f64; 3],
}

impl InvariantRow {
    pub fn max_dev(&self) -> f64 {
        self.expected.iter().zip(&self.computed).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// (F1, F2, F3) of Φ₁, Φ₂, Φ₃, W₄.
pub fn invariant_table() -> Result<Vec<InvariantRow>> {
    INVARIANT_TABLE_KEYS
        .iter()
        .zip(INVARIANT_TABLE_EXPECTED)
        .map(|(&key, expected)| {
            let s = catalog_lookup(key)?.state;
            Ok(InvariantRow {
                key,
                expected,
                computed: [
                    f_invariant(FourWay::F1, &s)?,
                    f_invariant(FourWay::F2, &s)?,
                    f_invariant(FourWay::F3, &s)?,
                ],
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoofEntry {
    pub case: Case,
    pub samples: usize,
    /// max |Σ wᵢ m(ψᵢ) − formula(p)| over the samples.
    pub max_dev: f64,
    pub max_residual: f64,
}

/// Every supported case: closed form vs. its explicit decomposition at
/// `samples` uniform p-values.
pub fn roof_table(samples: usize) -> Result<Vec<RoofEntry>> {
    let n = samples.max(2);
    Case::supported()
        .into_iter()
        .map(|case| {
            let formula = reference_formula(case)?;
            let (mut max_dev, mut max_residual) = (0.0f64, 0.0f64);
            for i in 0..n {
                let p = i as f64 / (n - 1) as f64;
                let v = verify_decomposition(&build_decomposition(case, p)?, case.kind)?;
                max_dev = max_dev.max((v.avg_entanglement - formula.value(p)).abs());
                max_residual = max_residual.max(v.residual);
            }
            Ok(RoofEntry {
                case,
                samples: n,
                max_dev,
                max_residual,
            })
        })
        .collect()
}

/// (√2 − 1)²
pub fn alpha1() -> f64 {
    (2f64.sqrt() - 1.0).powi(2)
}
pub const ALPHA2: f64 = 1.0 / 3.0;
/// (2 − √2)/2
pub fn alpha3() -> f64 {
    (2.0 - 2f64.sqrt()) / 2.0
}

pub const PAIR_LABELS: [&str; 6] = ["AB", "AC", "AD", "BC", "BD", "CD"];
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn c_rho1(p: f64) -> f64 {
    0.5 * (1.0 - 2.0 * p.sqrt() - p) * step(alpha1() - p)
}

/// Closed-form concurrence of the two-qubit marginal on `pair` of ρⱼ(p);
/// `None` for families without a tabulated entry.
pub fn pair_concurrence_reference(family: FamilyId, pair: (usize, usize), p: f64) -> Option<f64> {
    match family {
        FamilyId::Rho1 => Some(c_rho1(p)),
        FamilyId::Rho2 => Some(((3.0 - p) / 6.0 - (2f64.sqrt() / 3.0) * (p * (3.0 - p)).sqrt()) * step(ALPHA2 - p)),
        FamilyId::Rho3 => Some(match pair {
            (0, 1) => c_rho1(p),
            (2, 3) => {
                let q = (p * (2.0 - p)).sqrt();
                0.5 * (1.0 - (p / 2.0).sqrt() * ((1.0 + q).sqrt() + (1.0 - q).sqrt()))
            }
            _ => 0.5 * (1.0 - p - (p * (2.0 - p)).sqrt()) * step(alpha3() - p),
        }),
        FamilyId::GhzW => None,
    }
}

/// Wootters concurrence of the marginal on `pair` of the family mixture at `p`.
pub fn pair_concurrence(family: FamilyId, pair: (usize, usize), p: f64) -> Result<f64> {
    let rho = family.family().mix(p)?;
    concurrence_mixed(&rho.partial_trace(&[pair.0, pair.1])?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceEntry {
    pub family: FamilyId,
    pub pair: &'static str,
    pub samples: usize,
    pub max_dev: f64,
}

/// Every pair of ρ₁, ρ₂, ρ₃: Wootters value vs. closed form at `samples`
/// uniform p-values.
pub fn concurrence_table(samples: usize) -> Result<Vec<ConcurrenceEntry>> {
    let n = samples.max(2);
    let mut out = Vec::new();
    for family in [FamilyId::Rho1, FamilyId::Rho2, FamilyId::Rho3] {
        for (label, pair) in PAIR_LABELS.iter().zip(PAIRS) {
            let mut max_dev = 0.0f64;
            for i in 0..n {
                let p = i as f64 / (n - 1) as f64;
                let expect = pair_concurrence_reference(family, pair, p).expect("tabulated family");
                max_dev = max_dev.max((pair_concurrence(family, pair, p)? - expect).abs());
            }
            out.push(ConcurrenceEntry {
                family,
                pair: label,
                samples: n,
                max_dev,
            });
        }
    }
    Ok(out)
}

/// The measures reported for a state with `n` qubits.
pub fn measures_for(num_qubits: usize) -> &'static [InvariantKind] {
    use InvariantKind::*;
    match num_qubits {
        2 => &[Concurrence],
        3 => &[Tau3, Tau3Squared],
        4 => &[F1, F2, F3, G1, G2, G3],
        _ => &[],
    }
}
