use super::eig::{hermitian_eig, psd_sqrt};
use crate::error::{check_unit_interval, Result};
use crate::linalg::{CMatrix, I, ZERO};
use crate::qstate::{DensityMatrix, PureState};

/// 2|ψ₀₀ψ₁₁ − ψ₀₁ψ₁₀|
pub fn concurrence_pure(s: &PureState) -> Result<f64> {
    s.expect_qubits(2)?;
    let a = s.amplitudes();
    Ok(2.0 * (a[0] * a[3] - a[1] * a[2]).norm())
}

fn sigma_y_y() -> CMatrix {
    let sy = CMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]);
    sy.kron(&sy)
}

/// Wootters λ's: square roots of the eigenvalues of √ρ ρ̃ √ρ, with
/// ρ̃ = (σy⊗σy) ρ* (σy⊗σy), in decreasing order.
pub fn wootters_lambdas(rho: &DensityMatrix) -> Result<[f64; 4]> {
    rho.expect_qubits(2)?;
    let yy = sigma_y_y();
    let spin_flipped = &(&yy * &rho.entries().conj()) * &yy;
    let root = psd_sqrt(rho.entries())?;
    let mut r = &(&root * &spin_flipped) * &root;
    // symmetrize away rounding so the Hermitian solver accepts it
    let adj = r.adjoint();
    r = (&r + &adj).scale(0.5);
    let (vals, _) = hermitian_eig(&r)?;
    // Eigenvalues at round-off level are zeros; their square roots (~1e-8)
    // would otherwise leak into the concurrence of rank-deficient inputs.
    let floor = super::four::ROUNDOFF_FACTOR * f64::EPSILON * vals[0].max(0.0);
    let mut out = [0.0; 4];
    for (o, v) in out.iter_mut().zip(vals) {
        *o = if v <= floor { 0.0 } else { v.sqrt() };
    }
    Ok(out)
}

pub fn concurrence_mixed(rho: &DensityMatrix) -> Result<f64> {
    let l = wootters_lambdas(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

fn binary_entropy(x: f64, base: LogBase) -> f64 {
    let term = |v: f64| if v <= 0.0 { 0.0 } else { -v * v.ln() };
    let h = term(x) + term(1.0 - x);
    match base {
        LogBase::Natural => h,
        LogBase::Two => h / std::f64::consts::LN_2,
    }
}

/// E_F(C) = h((1 + √(1 − C²)) / 2).
pub fn eof_from_concurrence(c: f64, base: LogBase) -> Result<f64> {
    check_unit_interval("concurrence", c)?;
    Ok(binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0, base))
}
