//! Entanglement and mixedness measures, plus analytic results for the boosted two-particle states.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermitian_eigenvalues, kron, partial_transpose, pauli, CMatrix, Subsystem};
use crate::qstate::{DensityMatrix, Partition, PureState};
use crate::tolerances::EPS_PSD;

/// Logarithm base for entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Bits,
    Nats,
    /// Base equal to the dimension of the state, so the maximum is 1.
    Dimension,
}

impl LogBase {
    fn ln_base(self, dim: usize) -> f64 {
        match self {
            LogBase::Bits => std::f64::consts::LN_2,
            LogBase::Nats => 1.0,
            LogBase::Dimension => (dim as f64).ln(),
        }
    }
}

/// Clips round-off negatives in `[−EPS_PSD, 0)` to zero.
fn clip(p: f64) -> f64 {
    if (-EPS_PSD..0.0).contains(&p) {
        0.0
    } else {
        p
    }
}

/// `S_L(ρ) = 1 − Tr ρ²`, unnormalised, in `[0, 1 − 1/d]`.
pub fn linear_entropy(rho: &DensityMatrix) -> f64 {
    (1.0 - rho.purity()).max(0.0)
}

/// `−Σ pᵢ log pᵢ` with `0 log 0 = 0`.
pub fn shannon_entropy(probs: &[f64], base: LogBase) -> f64 {
    let h: f64 = probs.iter().map(|&p| clip(p)).filter(|&p| p > 0.0).map(|p| -p * p.ln()).sum();
    let dim = probs.len().max(2);
    h / base.ln_base(dim)
}

/// Base-2 binary entropy `h(p) = H({p, 1 − p})`.
pub fn binary_entropy(p: f64) -> f64 {
    shannon_entropy(&[p, 1.0 - p], LogBase::Bits)
}

/// `S(ρ) = −Tr ρ log ρ`.
pub fn von_neumann_entropy(rho: &DensityMatrix, base: LogBase) -> Result<f64> {
    let s = shannon_entropy(&rho.eigenvalues()?, LogBase::Nats);
    Ok((s / base.ln_base(rho.dim())).max(0.0))
}

/// Rényi entropy `S_α(ρ) = log(Tr ρ^α) / (1 − α)` for `α ≥ 0`, `α ≠ 1`.
pub fn renyi_entropy(rho: &DensityMatrix, alpha: f64, base: LogBase) -> Result<f64> {
    if !alpha.is_finite() || alpha < 0.0 || alpha == 1.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let p: Vec<f64> = rho.eigenvalues()?.into_iter().map(clip).filter(|&p| p > 0.0).collect();
    let tr: f64 = if alpha == 0.0 { p.len() as f64 } else { p.iter().map(|x| x.powf(alpha)).sum() };
    Ok((tr.ln() / (1.0 - alpha) / base.ln_base(rho.dim())).max(0.0))
}

/// Linear entropies of each block of a pure-state partition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementReport {
    #[serde(skip)]
    pub partition: Partition,
    pub per_block_linear_entropy: Vec<f64>,
    /// `E = Σ S_L(ρ_block)`.
    pub total_e: f64,
    /// Base-2 von Neumann entropy of each block.
    pub per_block_von_neumann: Vec<f64>,
}

/// Reduces `state` onto every block of `partition` and sums the linear entropies.
pub fn partition_entanglement(state: &PureState, partition: &Partition) -> Result<EntanglementReport> {
    if partition.num_factors() != state.num_factors() {
        return Err(Error::InvalidPartition(format!(
            "partition over {} factors applied to a {}-factor state",
            partition.num_factors(),
            state.num_factors()
        )));
    }
    let mut linear = Vec::with_capacity(partition.blocks().len());
    let mut vn = Vec::with_capacity(partition.blocks().len());
    for block in partition.blocks() {
        let rho = state.reduce(block)?;
        linear.push(linear_entropy(&rho));
        vn.push(von_neumann_entropy(&rho, LogBase::Bits)?);
    }
    Ok(EntanglementReport {
        partition: partition.clone(),
        total_e: linear.iter().sum(),
        per_block_linear_entropy: linear,
        per_block_von_neumann: vn,
    })
}

/// `E` of a partition without the per-block breakdown.
pub fn total_entanglement(state: &PureState, partition: &Partition) -> Result<f64> {
    partition_entanglement(state, partition).map(|r| r.total_e)
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!("expected a two-qubit state, got dimension {}", rho.dim())));
    }
    Ok(())
}

/// Wootters concurrence `max{0, √λ₁ − √λ₂ − √λ₃ − √λ₄}`.
///
/// The `λᵢ` are the eigenvalues of `ρ ρ̃` with `ρ̃ = (σʸ⊗σʸ) ρ* (σʸ⊗σʸ)`. Their square roots
/// are the singular values of `√ρ (σʸ⊗σʸ) √ρ* (σʸ⊗σʸ)`, read off directly from the spectrum of
/// the Hermitian dilation `[[0, M], [M†, 0]]` so that small values keep absolute accuracy.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let [_, sy, _] = pauli();
    let yy = kron(&sy, &sy);
    let sqrt_rho = matrix_sqrt(rho.matrix())?;
    let m = &(&(&sqrt_rho * &yy) * &sqrt_rho.conj()) * &yy;
    let mut dilation = CMatrix::zeros(8, 8);
    for i in 0..4 {
        for j in 0..4 {
            dilation[(i, j + 4)] = m[(i, j)];
            dilation[(j + 4, i)] = m[(i, j)].conj();
        }
    }
    let ev = hermitian_eigenvalues(&dilation)?;
    let roots: Vec<f64> = ev.iter().rev().take(4).map(|x| x.max(0.0)).collect();
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).clamp(0.0, 1.0))
}

/// Eigenvalues below this are round-off when taking `√ρ`.
const SQRT_CUTOFF: f64 = 1e-14;

fn matrix_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let eig = hermitian_eigen(m)?;
    let n = m.rows();
    let mut out = CMatrix::zeros(n, n);
    for (k, &l) in eig.values.iter().enumerate() {
        if l < SQRT_CUTOFF {
            continue;
        }
        let s = l.sqrt();
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += eig.vectors[(i, k)] * eig.vectors[(j, k)].conj() * s;
            }
        }
    }
    Ok(out)
}

/// Two-qubit entanglement of formation `h((1 + √(1 − C²))/2)` in ebits.
pub fn entanglement_of_formation(rho: &DensityMatrix) -> Result<f64> {
    let c = concurrence(rho)?;
    Ok(binary_entropy(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt())))
}

/// Outcome of the partial-transpose test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptResult {
    pub ppt: bool,
    pub min_eigenvalue: f64,
}

/// Positivity of the partial transpose on `subsystem` of a `dA × dB` state.
pub fn is_ppt(rho: &DensityMatrix, dims: [usize; 2], subsystem: Subsystem) -> Result<PptResult> {
    if dims[0] * dims[1] != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}×{} split of a {}-dimensional state",
            dims[0],
            dims[1],
            rho.dim()
        )));
    }
    let pt = partial_transpose(rho.matrix(), dims, subsystem)?;
    let min = hermitian_eigenvalues(&pt)?[0];
    Ok(PptResult { ppt: min >= -EPS_PSD, min_eigenvalue: min })
}

/// True iff every bipartition of a pure state of at least three factors has a mixed reduction.
pub fn genuine_multipartite_entangled(state: &PureState) -> Result<bool> {
    if state.num_factors() < 3 {
        return Err(Error::InvalidPartition(format!("need at least 3 factors, got {}", state.num_factors())));
    }
    for cut in Partition::all_bipartitions(state.num_factors()) {
        if linear_entropy(&state.reduce(&cut.blocks()[0])?) <= 1e-10 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Analytic entanglement of the Bell-type scenario `cos α|p₊p₋⟩ + sin α|p₋p₊⟩ ⊗ (cos β|↑↓⟩ + sin β|↓↑⟩)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellClosedForms {
    pub e_4q_unboosted: f64,
    pub e_4q_boosted: f64,
    pub e_4q_diff: f64,
    pub e_spinmom_boosted: f64,
    pub e_ab: f64,
}

pub fn closed_forms_bell(alpha: f64, beta: f64, delta: f64) -> BellClosedForms {
    let (c4a, c4b) = ((4.0 * alpha).cos(), (4.0 * beta).cos());
    let s2a2 = (2.0 * alpha).sin().powi(2);
    let c2b2 = (2.0 * beta).cos().powi(2);
    let s2b = (2.0 * beta).sin();
    let sd2 = delta.sin().powi(2);
    let c2d = (2.0 * delta).cos();
    BellClosedForms {
        e_4q_unboosted: 0.5 * (2.0 - c4a - c4b),
        e_4q_boosted: (18.0 - 10.0 * c4a - 6.0 * c4b - 2.0 * c4a * c4b - 8.0 * c2d * s2a2 * c2b2) / 16.0,
        e_4q_diff: sd2 * s2a2 * c2b2,
        e_spinmom_boosted: 0.5 * sd2 * s2a2 * (1.0 - s2b) * (3.0 + c2d + 2.0 * sd2 * s2b),
        e_ab: (16.0 - (3.0 + c4a) * (3.0 + c4b)) / 8.0,
    }
}

/// Analytic entanglement of the triplet-type scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TripletClosedForms {
    pub e_diff_4q: f64,
    pub e_spinmom_boosted: f64,
    pub e_ab: f64,
}

pub fn closed_forms_triplet(alpha: f64, theta: f64, phi: f64, delta: f64) -> TripletClosedForms {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let (c2t, s2t, c4t) = ((2.0 * theta).cos(), (2.0 * theta).sin(), (4.0 * theta).cos());
    let (c2p, c4p) = ((2.0 * phi).cos(), (4.0 * phi).cos());
    let c4a = (4.0 * alpha).cos();
    let s2a2 = (2.0 * alpha).sin().powi(2);
    let sd2 = delta.sin().powi(2);
    let c2d = (2.0 * delta).cos();
    let lead = (ct + cp * st).powi(2);

    let f1 = 2.0 * c2d * (3.0 + c2t) - 2.0 * c2t;
    let f2 = 8.0 * sd2 * (c2p * st * st + 2.0 * cp * s2t);
    let (ca, sa) = (alpha.cos(), alpha.sin());

    TripletClosedForms {
        e_diff_4q: -0.25 * sd2 * s2a2 * lead * (-5.0 + c2t + 2.0 * st * st * c2p + 4.0 * s2t * cp),
        e_spinmom_boosted: sd2 * s2a2 * lead * (26.0 + f1 - f2) / 32.0 + 1.0
            - ca.powi(4)
            - sa.powi(4)
            - s2a2 * (10.0 + f1 - f2).powi(2) / 512.0,
        e_ab: (203.0 - 103.0 * c4a
            + (3.0 + c4a)
                * (-12.0 * c2t - 13.0 * c4t + 16.0 * (3.0 + 5.0 * c2t) * c2p * st * st + 8.0 * c4p * st.powi(4)
                    - 256.0 * ct * cp * st.powi(3) * sp * sp))
            / 256.0,
    }
}
