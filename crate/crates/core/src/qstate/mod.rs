//! Multiqubit pure states, density matrices and rank-2 families.
//!
//! Qubit labels A, B, C, ... map to amplitude-index bits from most to least
//! significant, so `|0111⟩` is index 7 and qubit A is bit `n - 1`.

mod catalog;
mod io;

pub use catalog::{catalog, catalog_lookup, FamilyId, NamedState};
pub use io::{parse_state, read_state_file, write_state};

use crate::error::{check_unit_interval, Error, Result};
use crate::invariants::hermitian_eig;
use crate::linalg::{CMatrix, C64, ZERO};

pub const NORM_TOL: f64 = 1e-10;
pub const ORTHO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Wraps an amplitude vector without normalizing it.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadLength(len));
        }
        Ok(Self {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    /// Computational basis state `|index⟩` on `num_qubits` qubits.
    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![ZERO; 1 << num_qubits];
        amplitudes[index] = C64::new(1.0, 0.0);
        Self {
            num_qubits,
            amplitudes,
        }
    }

    /// Builds a normalized state from `(bitstring, coefficient)` pairs,
    /// e.g. `[("0000", 1.0), ("1111", 1.0)]`.
    pub fn from_kets(terms: &[(&str, f64)]) -> Result<Self> {
        let num_qubits = terms.first().map_or(0, |(k, _)| k.len());
        let mut amplitudes = vec![ZERO; 1 << num_qubits];
        for (ket, c) in terms {
            let idx = usize::from_str_radix(ket, 2).map_err(|_| Error::Parse {
                line: 0,
                msg: format!("bad ket `{ket}`"),
            })?;
            if ket.len() != num_qubits {
                return Err(Error::BadLength(ket.len()));
            }
            amplitudes[idx] += C64::new(*c, 0.0);
        }
        Self::new(amplitudes)?.normalize()
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scaled(1.0 / norm))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            num_qubits: self.num_qubits,
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &Self) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// True when the two states agree up to a global phase.
    pub fn same_ray(&self, other: &Self, tol: f64) -> bool {
        self.num_qubits == other.num_qubits
            && (self.inner(other).norm() - self.norm() * other.norm()).abs() <= tol
    }

    pub fn expect_qubits(&self, expected: usize) -> Result<()> {
        if self.num_qubits == expected {
            Ok(())
        } else {
            Err(Error::QubitCount {
                expected,
                actual: self.num_qubits,
            })
        }
    }

    pub(crate) fn linear_combination(terms: &[(C64, &PureState)]) -> Self {
        let first = terms[0].1;
        let mut amplitudes = vec![ZERO; first.dim()];
        for (c, s) in terms {
            for (acc, a) in amplitudes.iter_mut().zip(&s.amplitudes) {
                *acc += c * a;
            }
        }
        Self {
            num_qubits: first.num_qubits,
            amplitudes,
        }
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix on `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    entries: CMatrix,
}

impl DensityMatrix {
    pub const HERMITIAN_TOL: f64 = 1e-12;
    pub const TRACE_TOL: f64 = 1e-10;
    pub const EIG_TOL: f64 = 1e-10;

    /// Validates Hermiticity, trace and positivity.
    pub fn new(entries: CMatrix) -> Result<Self> {
        let dim = entries.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::BadLength(dim));
        }
        let herm = entries.hermiticity_error();
        if herm > Self::HERMITIAN_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > Self::TRACE_TOL || tr.im.abs() > Self::TRACE_TOL {
            return Err(Error::OutOfRange {
                name: "trace",
                value: tr.re,
                lo: 1.0,
                hi: 1.0,
            });
        }
        let (vals, _) = hermitian_eig(&entries)?;
        let min = vals.last().copied().unwrap_or(0.0);
        if min < -Self::EIG_TOL {
            return Err(Error::NotPsd(min));
        }
        Ok(Self::from_entries(entries))
    }

    pub(crate) fn from_entries(entries: CMatrix) -> Self {
        Self {
            num_qubits: entries.dim().trailing_zeros() as usize,
            entries,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    pub fn expect_qubits(&self, expected: usize) -> Result<()> {
        if self.num_qubits == expected {
            Ok(())
        } else {
            Err(Error::QubitCount {
                expected,
                actual: self.num_qubits,
            })
        }
    }

    /// Eigenvalues in descending order.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(&self.entries)?.0)
    }

    /// Σ wᵢ ρᵢ; weights are used as given.
    pub fn weighted_sum(terms: &[(f64, &DensityMatrix)]) -> Self {
        let dim = terms[0].1.dim();
        let mut acc = CMatrix::zeros(dim);
        for (w, rho) in terms {
            acc = &acc + &rho.entries.scale(*w);
        }
        Self::from_entries(acc)
    }

    /// Reduced state on the qubits in `keep`, in the order given.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let n = self.num_qubits;
        let bad = keep.is_empty()
            || keep.iter().any(|&q| q >= n)
            || (1..keep.len()).any(|i| keep[..i].contains(&keep[i]));
        if bad {
            return Err(Error::BadIndexSet {
                keep: keep.to_vec(),
                num_qubits: n,
            });
        }
        // qubit q sits at bit (n - 1 - q)
        let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let k = keep.len();
        let embed = |sub: usize, rest: usize| -> usize {
            let mut idx = 0usize;
            for (pos, &q) in keep.iter().enumerate() {
                let bit = (sub >> (k - 1 - pos)) & 1;
                idx |= bit << (n - 1 - q);
            }
            for (pos, &q) in traced.iter().enumerate() {
                let bit = (rest >> (traced.len() - 1 - pos)) & 1;
                idx |= bit << (n - 1 - q);
            }
            idx
        };
        let out_dim = 1usize << k;
        let mut out = CMatrix::zeros(out_dim);
        for a in 0..out_dim {
            for b in 0..out_dim {
                let mut acc = ZERO;
                for t in 0..(1usize << traced.len()) {
                    acc += self.entries[(embed(a, t), embed(b, t))];
                }
                out[(a, b)] = acc;
            }
        }
        Ok(Self::from_entries(out))
    }
}

pub fn density_of(s: &PureState) -> DensityMatrix {
    DensityMatrix::from_entries(CMatrix::outer(s.amplitudes(), s.amplitudes()))
}

/// Ordered orthonormal pair spanning the range of a rank-2 mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTwoFamily {
    phi: PureState,
    w: PureState,
}

impl RankTwoFamily {
    pub fn new(phi: PureState, w: PureState) -> Result<Self> {
        if phi.num_qubits() != w.num_qubits() {
            return Err(Error::QubitCount {
                expected: phi.num_qubits(),
                actual: w.num_qubits(),
            });
        }
        for s in [&phi, &w] {
            let dev = (s.norm() - 1.0).abs();
            if dev > NORM_TOL {
                return Err(Error::NormDeviation(dev));
            }
        }
        let overlap = phi.inner(&w).norm();
        if overlap > ORTHO_TOL {
            return Err(Error::NotOrthonormal(overlap));
        }
        Ok(Self { phi, w })
    }

    pub fn phi(&self) -> &PureState {
        &self.phi
    }

    pub fn w(&self) -> &PureState {
        &self.w
    }

    pub fn num_qubits(&self) -> usize {
        self.phi.num_qubits()
    }

    /// √p·|phi⟩ − e^{i·phase}·√(1−p)·|w⟩
    pub fn superpose(&self, p: f64, phase: f64) -> Result<PureState> {
        check_unit_interval("p", p)?;
        Ok(self.superpose_unchecked(p, phase))
    }

    pub(crate) fn superpose_unchecked(&self, p: f64, phase: f64) -> PureState {
        let a = C64::new(p.sqrt(), 0.0);
        let b = -C64::from_polar((1.0 - p).sqrt(), phase);
        PureState::linear_combination(&[(a, &self.phi), (b, &self.w)])
    }

    /// p·|phi⟩⟨phi| + (1−p)·|w⟩⟨w|
    pub fn mix(&self, p: f64) -> Result<DensityMatrix> {
        check_unit_interval("p", p)?;
        Ok(DensityMatrix::weighted_sum(&[
            (p, &density_of(&self.phi)),
            (1.0 - p, &density_of(&self.w)),
        ]))
    }
}

pub fn normalize(s: &PureState) -> Result<PureState> {
    s.normalize()
}

pub fn superpose(fam: &RankTwoFamily, p: f64, phase: f64) -> Result<PureState> {
    fam.superpose(p, phase)
}

pub fn mix(fam: &RankTwoFamily, p: f64) -> Result<DensityMatrix> {
    fam.mix(p)
}

pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    rho.partial_trace(keep)
}
