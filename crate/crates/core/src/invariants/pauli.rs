use crate::linalg::{CMatrix, C64, I, ONE, ZERO};

/// σ₀ = 1, σ₁ = σx, σ₂ = σy, σ₃ = σz.
#[derive(Debug, Clone)]
pub struct SigmaBasis {
    pub matrices: [CMatrix; 4],
}

impl SigmaBasis {
    pub fn new() -> Self {
        let m = |a: C64, b: C64, c: C64, d: C64| CMatrix::from_rows(&[vec![a, b], vec![c, d]]);
        Self {
            matrices: [
                m(ONE, ZERO, ZERO, ONE),
                m(ZERO, ONE, ONE, ZERO),
                m(ZERO, -I, I, ZERO),
                m(ONE, ZERO, ZERO, -ONE),
            ],
        }
    }

    pub fn get(&self, index: usize) -> &CMatrix {
        &self.matrices[index]
    }
}

impl Default for SigmaBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// Single-qubit Pauli as a monomial map: row `x` has its one nonzero entry
/// at column `x ^ flip(a)` with coefficient `coeff(a, x)`.
#[inline]
pub(crate) fn flip(a: usize) -> usize {
    usize::from(a == 1 || a == 2)
}

#[inline]
pub(crate) fn coeff(a: usize, row: usize) -> C64 {
    match (a, row) {
        (0, _) | (1, _) => ONE,
        (2, 0) => -I,
        (2, _) => I,
        (_, 0) => ONE,
        _ => -ONE,
    }
}

/// Diagonal metric g^{μν} = diag(−1, 1, 0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric {
    pub weights: [f64; 4],
}

impl Metric {
    pub const LORENTZ_LIKE: Metric = Metric {
        weights: [-1.0, 1.0, 0.0, 1.0],
    };

    /// Indices with nonzero weight; index 2 never enters a contraction.
    pub const ACTIVE: [usize; 3] = [0, 1, 3];

    pub fn weight(&self, index: usize) -> f64 {
        self.weights[index]
    }
}

/// ε with ε₀₁ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonTensor {
    pub entries: [[f64; 2]; 2],
}

impl EpsilonTensor {
    pub const STANDARD: EpsilonTensor = EpsilonTensor {
        entries: [[0.0, 1.0], [-1.0, 0.0]],
    };

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_properties() {
        let s = SigmaBasis::new();
        for (k, m) in s.matrices.iter().enumerate() {
            assert!((m * &m.adjoint()).max_abs_diff(&CMatrix::identity(2)) < 1e-15);
            if k > 0 {
                assert!(m.trace().norm() < 1e-15);
            }
            for row in 0..2 {
                let col = row ^ flip(k);
                assert_eq!(m[(row, col)], coeff(k, row));
                assert_eq!(m[(row, col ^ 1)], ZERO);
            }
        }
        let y = s.get(2);
        assert_eq!(y[(0, 1)], -y[(1, 0)]);
    }

    #[test]
    fn metric_and_epsilon() {
        assert_eq!(Metric::LORENTZ_LIKE.weight(2), 0.0);
        let e = EpsilonTensor::STANDARD;
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(e.get(i, j), -e.get(j, i));
            }
        }
        assert_eq!(e.get(0, 1), 1.0);
    }
}
