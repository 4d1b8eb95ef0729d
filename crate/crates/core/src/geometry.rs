//! Bloch-ball picture of span{Φ₂, W₄} and the tetrahedron of states whose
//! F1/G1 roof vanishes.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::qstate::{density_of, DensityMatrix, FamilyId, PureState, RankTwoFamily};
use crate::roof::{p0_f1_rho2, Decomposition};

pub const SPAN_TOL: f64 = 1e-8;
pub const FACE_TOL: f64 = 1e-10;
const MIN_VOLUME: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub r: [f64; 3],
}

impl BlochVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { r: [x, y, z] }
    }

    pub fn norm(&self) -> f64 {
        self.r.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// On the sphere, i.e. a pure state of the span.
    pub fn is_pure(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    fn sub(&self, o: &Self) -> [f64; 3] {
        [self.r[0] - o.r[0], self.r[1] - o.r[1], self.r[2] - o.r[2]]
    }
}

/// Orthonormal span basis (e₀, e₁) = (Φ₂, W₄).
fn span_basis() -> RankTwoFamily {
    FamilyId::Rho2.family()
}

/// Reduced 2×2 block ⟨e_a|ρ|e_b⟩.
fn span_block(basis: &RankTwoFamily, rho: &DensityMatrix) -> [[C64; 2]; 2] {
    let e = [basis.phi(), basis.w()];
    let m = rho.entries();
    let me_b = [m.apply(e[0].amplitudes()), m.apply(e[1].amplitudes())];
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            out[a][b] = e[a].amplitudes().iter().zip(&me_b[b]).map(|(x, y)| x.conj() * y).sum();
        }
    }
    out
}

fn span_embed(basis: &RankTwoFamily, block: [[C64; 2]; 2]) -> CMatrix {
    let e = [basis.phi().amplitudes(), basis.w().amplitudes()];
    let mut acc = CMatrix::zeros(e[0].len());
    for a in 0..2 {
        for b in 0..2 {
            let term = CMatrix::outer(e[a], e[b]);
            for (x, t) in acc.as_mut_slice().iter_mut().zip(term.as_slice()) {
                *x += block[a][b] * t;
            }
        }
    }
    acc
}

/// rₖ = tr(ρσₖ) in the (Φ₂, W₄) basis, Φ₂ at the north pole.
pub fn bloch_from_span_state(rho: &DensityMatrix) -> Result<BlochVector> {
    rho.expect_qubits(4)?;
    let basis = span_basis();
    let m = span_block(&basis, rho);
    let leak = rho.entries().max_abs_diff(&span_embed(&basis, m));
    if leak > SPAN_TOL {
        return Err(Error::OutsideSpan(leak));
    }
    Ok(BlochVector::new(2.0 * m[0][1].re, -2.0 * m[0][1].im, (m[0][0] - m[1][1]).re))
}

/// ρ = ½(1 + r·σ) embedded in the four-qubit space.
pub fn density_from_bloch(r: &BlochVector) -> Result<DensityMatrix> {
    let n = r.norm();
    if n > 1.0 + FACE_TOL {
        return Err(Error::OutOfRange {
            name: "|r|",
            value: n,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let [x, y, z] = r.r;
    let block = [
        [C64::new((1.0 + z) / 2.0, 0.0), C64::new(x / 2.0, -y / 2.0)],
        [C64::new(x / 2.0, y / 2.0), C64::new((1.0 - z) / 2.0, 0.0)],
    ];
    Ok(DensityMatrix::from_entries(span_embed(&span_basis(), block)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tetrahedron {
    pub vertices: [BlochVector; 4],
    /// Pure states sitting at the vertices.
    pub states: [PureState; 4],
}

/// Vertices W₄ and Z₂(p₀, 2πk/3), k = 0, 1, 2.
pub fn zero_tetrahedron() -> Tetrahedron {
    let p0 = p0_f1_rho2();
    let s = (p0 * (1.0 - p0)).sqrt();
    let h = 2.0 * p0 - 1.0;
    let r3 = 3f64.sqrt();
    let fam = span_basis();
    let z = |k: f64| fam.superpose_unchecked(p0, TAU * k / 3.0);
    Tetrahedron {
        vertices: [
            BlochVector::new(0.0, 0.0, -1.0),
            BlochVector::new(-2.0 * s, 0.0, h),
            BlochVector::new(s, -r3 * s, h),
            BlochVector::new(s, r3 * s, h),
        ],
        states: [fam.w().clone(), z(0.0), z(1.0), z(2.0)],
    }
}

fn det3(c: [[f64; 3]; 3]) -> f64 {
    c[0][0] * (c[1][1] * c[2][2] - c[1][2] * c[2][1]) - c[0][1] * (c[1][0] * c[2][2] - c[1][2] * c[2][0])
        + c[0][2] * (c[1][0] * c[2][1] - c[1][1] * c[2][0])
}

impl Tetrahedron {
    pub fn volume(&self) -> f64 {
        let v = &self.vertices;
        det3([v[1].sub(&v[0]), v[2].sub(&v[0]), v[3].sub(&v[0])]).abs() / 6.0
    }

    /// Barycentric coordinates of `r` (sum to 1; all ≥ 0 inside).
    pub fn barycentric(&self, r: &BlochVector) -> Result<[f64; 4]> {
        let v = &self.vertices;
        let cols = [v[1].sub(&v[0]), v[2].sub(&v[0]), v[3].sub(&v[0])];
        let d = det3(cols);
        if d.abs() / 6.0 <= MIN_VOLUME {
            return Err(Error::DegenerateTetrahedron(d.abs() / 6.0));
        }
        let rhs = r.sub(&v[0]);
        // Cramer's rule with the edge vectors as rows (det is transpose-invariant).
        let mut l = [0.0; 4];
        for k in 0..3 {
            let mut m = cols;
            m[k] = rhs;
            l[k + 1] = det3(m) / d;
        }
        l[0] = 1.0 - l[1] - l[2] - l[3];
        Ok(l)
    }

    /// Inside or on the boundary, within `FACE_TOL`.
    pub fn contains(&self, r: &BlochVector) -> Result<bool> {
        Ok(self.barycentric(r)?.iter().all(|&l| l >= -FACE_TOL))
    }
}

pub fn contains(t: &Tetrahedron, r: &BlochVector) -> Result<bool> {
    t.contains(r)
}

/// Barycentric mixture of the vertex states reproducing the density matrix
/// of `r`. Each vertex state has F1 = 0, so this certifies a zero roof.
pub fn zero_witness(t: &Tetrahedron, r: &BlochVector) -> Result<Decomposition> {
    let l = t.barycentric(r)?;
    if l.iter().any(|&x| x < -FACE_TOL) {
        return Err(Error::OutsideTetrahedron);
    }
    let target = density_from_bloch(r)?;
    let clamped: Vec<f64> = l.iter().map(|&x| x.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    let terms = clamped.iter().zip(t.states.iter()).map(|(&w, s)| (w / total, s.clone())).collect();
    Ok(Decomposition::new(terms, target))
}

/// Density matrix of a span state, convenience for callers holding kets.
pub fn bloch_of_state(s: &PureState) -> Result<BlochVector> {
    bloch_from_span_state(&density_of(s))
}
