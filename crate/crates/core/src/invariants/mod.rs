//! Pure-state SLOCC invariants, two-qubit mixed concurrence and the
//! eigensolver they rely on.

mod concurrence;
mod eig;
mod four;
mod pauli;
mod three;

pub use concurrence::{concurrence_mixed, concurrence_pure, eof_from_concurrence, wootters_lambdas, LogBase};
pub use eig::{hermitian_eig, psd_sqrt};
pub use four::{antilinear_form, antilinear_form_n, f_invariant, g_invariant, FourWay, ROUNDOFF_FACTOR};
pub use pauli::{EpsilonTensor, Metric, SigmaBasis};
pub use three::{three_tangle, three_tangle_squared};

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::qstate::PureState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvariantKind {
    F1,
    F2,
    F3,
    G1,
    G2,
    G3,
    Tau3,
    Tau3Squared,
    Concurrence,
}

impl InvariantKind {
    pub const ALL: [InvariantKind; 9] = [
        Self::F1,
        Self::F2,
        Self::F3,
        Self::G1,
        Self::G2,
        Self::G3,
        Self::Tau3,
        Self::Tau3Squared,
        Self::Concurrence,
    ];

    pub fn num_qubits(self) -> usize {
        match self {
            Self::F1 | Self::F2 | Self::F3 | Self::G1 | Self::G2 | Self::G3 => 4,
            Self::Tau3 | Self::Tau3Squared => 3,
            Self::Concurrence => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::F1 => "F1",
            Self::F2 => "F2",
            Self::F3 => "F3",
            Self::G1 => "G1",
            Self::G2 => "G2",
            Self::G3 => "G3",
            Self::Tau3 => "tau3",
            Self::Tau3Squared => "tau3sq",
            Self::Concurrence => "C",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }

    /// Degree of the measure as a homogeneous function of the amplitudes.
    pub fn degree(self) -> u32 {
        match self {
            Self::F1 => 6,
            Self::F2 => 8,
            Self::F3 => 12,
            Self::Tau3Squared => 4,
            _ => 2,
        }
    }

    fn four_way(self) -> Option<(FourWay, bool)> {
        match self {
            Self::F1 => Some((FourWay::F1, false)),
            Self::F2 => Some((FourWay::F2, false)),
            Self::F3 => Some((FourWay::F3, false)),
            Self::G1 => Some((FourWay::F1, true)),
            Self::G2 => Some((FourWay::F2, true)),
            Self::G3 => Some((FourWay::F3, true)),
            _ => None,
        }
    }

    /// Evaluates several measures of the same qubit count at once, sharing
    /// the four-way contraction tables; `out` receives one value per kind.
    pub(crate) fn eval_many_unchecked(kinds: &[Self], amps: &[C64], out: &mut [f64]) {
        let all = kinds
            .iter()
            .any(|k| k.four_way().is_some())
            .then(|| four::eval_all(amps));
        for (o, &k) in out.iter_mut().zip(kinds) {
            *o = match (k.four_way(), &all) {
                (Some(_), Some(all)) => all[k as usize],
                _ => k.eval_unchecked(amps),
            };
        }
    }

    /// Evaluates on raw amplitudes whose length is already known to match.
    pub(crate) fn eval_unchecked(self, amps: &[C64]) -> f64 {
        if let Some((fw, root)) = self.four_way() {
            return four::eval(fw, root, amps);
        }
        match self {
            Self::Tau3Squared => three::cayley_raw(amps).norm(),
            Self::Tau3 => three::tangle_unchecked(amps),
            _ => 2.0 * (amps[0] * amps[3] - amps[1] * amps[2]).norm(),
        }
    }
}

impl std::fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Several measures of one state; four-way ones share their tables.
pub fn measure_many(kinds: &[InvariantKind], s: &PureState) -> Result<Vec<f64>> {
    for &kind in kinds {
        if s.num_qubits() != kind.num_qubits() {
            return Err(Error::QubitCount {
                expected: kind.num_qubits(),
                actual: s.num_qubits(),
            });
        }
    }
    let mut out = vec![0.0; kinds.len()];
    InvariantKind::eval_many_unchecked(kinds, s.amplitudes(), &mut out);
    Ok(out)
}

/// Evaluates any pure-state measure.
pub fn measure(kind: InvariantKind, s: &PureState) -> Result<f64> {
    if s.num_qubits() != kind.num_qubits() {
        return Err(Error::QubitCount {
            expected: kind.num_qubits(),
            actual: s.num_qubits(),
        });
    }
    Ok(kind.eval_unchecked(s.amplitudes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::catalog_lookup;

    #[test]
    fn measure_dispatch() {
        let phi1 = catalog_lookup("phi1").unwrap().state;
        assert!((measure(InvariantKind::G3, &phi1).unwrap() - 0.5f64.powf(1.0 / 6.0)).abs() < 1e-12);
        assert!(measure(InvariantKind::Tau3, &phi1).is_err());
        let ghz = catalog_lookup("ghz3").unwrap().state;
        assert!((measure(InvariantKind::Tau3Squared, &ghz).unwrap() - 1.0).abs() < 1e-14);
        for k in InvariantKind::ALL {
            assert_eq!(InvariantKind::parse(k.name()), Some(k));
        }
    }
}
