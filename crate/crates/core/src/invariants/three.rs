use super::pauli::EpsilonTensor;
use crate::error::Result;
use crate::linalg::{C64, ZERO};
use crate::qstate::PureState;

/// 2·ε_{i1i2}ε_{i3i4}ε_{j1j2}ε_{j3j4}ε_{k1k3}ε_{k2k4} ψ_{i1j1k1}ψ_{i2j2k2}ψ_{i3j3k3}ψ_{i4j4k4}
pub(crate) fn cayley_raw(amps: &[C64]) -> C64 {
    cayley_part(amps).0
}

/// The Cayley sum and the sum of its terms' magnitudes.
pub(crate) fn cayley_part(amps: &[C64]) -> (C64, f64) {
    let eps = EpsilonTensor::STANDARD;
    let psi = |i: usize, j: usize, k: usize| amps[(i << 2) | (j << 1) | k];
    let (mut acc, mut abs) = (ZERO, 0.0);
    // ε vanishes unless each pair differs, leaving six free bits
    for i1 in 0..2 {
        for i3 in 0..2 {
            for j1 in 0..2 {
                for j3 in 0..2 {
                    for k1 in 0..2 {
                        for k2 in 0..2 {
                            let (i2, i4, j2, j4, k3, k4) = (1 - i1, 1 - i3, 1 - j1, 1 - j3, 1 - k1, 1 - k2);
                            let sign = eps.get(i1, i2)
                                * eps.get(i3, i4)
                                * eps.get(j1, j2)
                                * eps.get(j3, j4)
                                * eps.get(k1, k3)
                                * eps.get(k2, k4);
                            let term = psi(i1, j1, k1) * psi(i2, j2, k2) * psi(i3, j3, k3) * psi(i4, j4, k4);
                            acc += term * sign;
                            abs += term.norm();
                        }
                    }
                }
            }
        }
    }
    (acc * 2.0, abs * 2.0)
}

/// τ₃ from raw amplitudes; exactly 0 when τ₃² is round-off.
pub(crate) fn tangle_unchecked(amps: &[C64]) -> f64 {
    let (v, a) = cayley_part(amps);
    super::four::root_or_zero(v.norm(), super::four::at_roundoff(v.norm(), a), 2)
}

/// Residual entanglement τ₃².
pub fn three_tangle_squared(s: &PureState) -> Result<f64> {
    s.expect_qubits(3)?;
    Ok(cayley_raw(s.amplitudes()).norm())
}

pub fn three_tangle(s: &PureState) -> Result<f64> {
    s.expect_qubits(3)?;
    Ok(tangle_unchecked(s.amplitudes()))
}
