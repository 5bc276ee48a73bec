//! Pure states, density matrices and partitions over labelled qubit factors.
//!
//! Basis convention: `|↑⟩ = |0⟩`, `|↓⟩ = |1⟩`, and the momentum qubit stores `p₊` as
//! `|0⟩`, `p₋` as `|1⟩`. The two-particle state is ordered `[momA, momB, spinA, spinB]`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eigenvalues, kron_vec, pauli, CMatrix, C64, ZERO};
use crate::tolerances::{EPS_HERM, EPS_NORM, EPS_PSD, EPS_SCHMIDT};

/// Label of a qubit factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    MomA,
    MomB,
    SpinA,
    SpinB,
    /// Anonymous qubit, for states that are not part of the two-particle model.
    Qubit(u8),
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::MomA => write!(f, "momA"),
            Factor::MomB => write!(f, "momB"),
            Factor::SpinA => write!(f, "spinA"),
            Factor::SpinB => write!(f, "spinB"),
            Factor::Qubit(i) => write!(f, "q{i}"),
        }
    }
}

pub const TOTAL_FACTORS: [Factor; 4] = [Factor::MomA, Factor::MomB, Factor::SpinA, Factor::SpinB];
pub const MOMENTUM_FACTORS: [Factor; 2] = [Factor::MomA, Factor::MomB];
pub const SPIN_FACTORS: [Factor; 2] = [Factor::SpinA, Factor::SpinB];

fn anonymous(n: usize) -> Vec<Factor> {
    (0..n).map(|i| Factor::Qubit(i as u8)).collect()
}

fn check_labels(factors: &[Factor], len: usize) -> Result<()> {
    if len != 1 << factors.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} amplitudes do not match {} qubit factors",
            len,
            factors.len()
        )));
    }
    let mut sorted = factors.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != factors.len() {
        return Err(Error::LabelMismatch(format!("duplicate factor labels in {factors:?}")));
    }
    Ok(())
}

/// A normalised state vector over qubit factors.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
    factors: Vec<Factor>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>, factors: Vec<Factor>) -> Result<Self> {
        check_labels(&factors, amplitudes.len())?;
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > EPS_NORM {
            return Err(Error::InvalidState(format!("state has squared norm {norm_sq}")));
        }
        Ok(Self { amplitudes, factors })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: Vec<C64>, factors: Vec<Factor>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalise a zero vector".into()));
        }
        Self::new(amplitudes.into_iter().map(|a| a / norm).collect(), factors)
    }

    /// State with anonymous qubit labels.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let n = amplitudes.len().trailing_zeros() as usize;
        Self::new(amplitudes, anonymous(n))
    }

    pub fn from_real(amplitudes: &[f64], factors: Vec<Factor>) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| C64::new(a, 0.0)).collect(), factors)
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        vec![2; self.factors.len()]
    }

    pub fn relabel(self, factors: Vec<Factor>) -> Result<Self> {
        check_labels(&factors, self.amplitudes.len())?;
        Ok(Self { amplitudes: self.amplitudes, factors })
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// Phase-insensitive distance `max |ρ_self − ρ_other|` between the projectors.
    pub fn projector_distance(&self, other: &Self) -> f64 {
        self.projector().max_abs_diff(&other.projector())
    }

    pub fn projector(&self) -> CMatrix {
        CMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix { matrix: self.projector(), factors: self.factors.clone() }
    }

    /// Reduced density matrix on the listed factor positions (kept in ascending order).
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        let matrix = reduce_pure(&self.amplitudes, self.factors.len(), &kept)?;
        Ok(DensityMatrix { matrix, factors: kept.iter().map(|&k| self.factors[k]).collect() })
    }

    /// Position of a labelled factor.
    pub fn position(&self, factor: Factor) -> Option<usize> {
        self.factors.iter().position(|&f| f == factor)
    }

    /// Applies a unitary on the whole space.
    pub fn evolve(&self, unitary: &CMatrix) -> Result<Self> {
        if unitary.rows() != self.dim() || unitary.cols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} operator on a {}-dimensional state",
                unitary.rows(),
                unitary.cols(),
                self.dim()
            )));
        }
        Self::new(unitary.matvec(&self.amplitudes), self.factors.clone())
    }
}

/// Reduced density matrix `Tr_{¬keep} |ψ⟩⟨ψ|` computed directly from the amplitudes.
fn reduce_pure(amps: &[C64], n: usize, keep: &[usize]) -> Result<CMatrix> {
    if keep.is_empty() || keep.iter().any(|&k| k >= n) || keep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidPartition(format!("invalid block {keep:?} for {n} factors")));
    }
    let traced: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let dk = 1usize << keep.len();
    let de = 1usize << traced.len();
    // reshape ψ into a dk × de matrix M, then ρ = M M†
    let mut m = vec![ZERO; dk * de];
    for (idx, a) in amps.iter().enumerate() {
        let bit = |f: usize| (idx >> (n - 1 - f)) & 1;
        let r = keep.iter().fold(0, |acc, &f| (acc << 1) | bit(f));
        let c = traced.iter().fold(0, |acc, &f| (acc << 1) | bit(f));
        m[r * de + c] = *a;
    }
    let mut rho = CMatrix::zeros(dk, dk);
    for i in 0..dk {
        for j in i..dk {
            let v: C64 = (0..de).map(|e| m[i * de + e] * m[j * de + e].conj()).sum();
            rho[(i, j)] = v;
            rho[(j, i)] = v.conj();
        }
    }
    Ok(rho)
}

/// A Hermitian, unit-trace, positive semidefinite matrix over qubit factors.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    factors: Vec<Factor>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: CMatrix, factors: Vec<Factor>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch("density matrix must be square".into()));
        }
        check_labels(&factors, matrix.rows())?;
        let defect = matrix.hermiticity_defect();
        if defect > EPS_HERM {
            return Err(Error::NotHermitian { deviation: defect });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > EPS_NORM || tr.im.abs() > EPS_NORM {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let min = hermitian_eigenvalues(&matrix)?[0];
        if min < -EPS_PSD {
            return Err(Error::InvalidState(format!("negative eigenvalue {min}")));
        }
        Ok(Self { matrix, factors })
    }

    /// Density matrix with anonymous labels.
    pub fn from_matrix(matrix: CMatrix) -> Result<Self> {
        let n = matrix.rows().trailing_zeros() as usize;
        Self::new(matrix, anonymous(n))
    }

    pub fn from_pure(state: &PureState) -> Self {
        state.density()
    }

    /// Convex combination `Σ pᵢ ρᵢ`; weights must be non-negative and sum to one.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidState("empty mixture".into()))?;
        let mut acc = CMatrix::zeros(first.1.dim(), first.1.dim());
        for (p, rho) in parts {
            if *p < 0.0 {
                return Err(Error::InvalidState(format!("negative mixture weight {p}")));
            }
            if rho.dim() != acc.rows() {
                return Err(Error::DimensionMismatch("mixture of different dimensions".into()));
            }
            acc = &acc + &rho.matrix.scale_real(*p);
        }
        Self::new(acc, first.1.factors.clone())
    }

    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let d = 1 << num_qubits;
        Self { matrix: CMatrix::identity(d).scale_real(1.0 / d as f64), factors: anonymous(num_qubits) }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn dims(&self) -> Vec<usize> {
        vec![2; self.factors.len()]
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// Ascending eigenvalues with round-off negatives clipped to zero.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(self.eigenvalues()?.into_iter().map(|x| if (-EPS_PSD..0.0).contains(&x) { 0.0 } else { x }).collect())
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        let matrix = linalg::partial_trace(&self.matrix, &self.dims(), &kept)?;
        Ok(Self { matrix, factors: kept.iter().map(|&k| self.factors[k]).collect() })
    }

    /// `U ρ U†`.
    pub fn conjugate(&self, unitary: &CMatrix) -> Self {
        let m = &(unitary * &self.matrix) * &unitary.dagger();
        Self { matrix: m, factors: self.factors.clone() }
    }
}

/// Disjoint blocks of factor positions covering all factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    num_factors: usize,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>, num_factors: usize) -> Result<Self> {
        let mut seen = vec![false; num_factors];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &i in block.iter() {
                if i >= num_factors || seen[i] {
                    return Err(Error::InvalidPartition(format!(
                        "blocks {blocks:?} are not disjoint within 0..{num_factors}",
                        blocks = blocks.clone()
                    )));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidPartition(format!("blocks {blocks:?} do not cover 0..{num_factors}")));
        }
        Ok(Self { blocks, num_factors })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_factors(&self) -> usize {
        self.num_factors
    }

    /// Every factor of the four-qubit model on its own.
    pub fn four_qubits() -> Self {
        Self { blocks: vec![vec![0], vec![1], vec![2], vec![3]], num_factors: 4 }
    }

    /// `{momA, momB} | {spinA, spinB}`.
    pub fn spin_momentum() -> Self {
        Self { blocks: vec![vec![0, 1], vec![2, 3]], num_factors: 4 }
    }

    /// `{momA, spinA} | {momB, spinB}`.
    pub fn alice_bob() -> Self {
        Self { blocks: vec![vec![0, 2], vec![1, 3]], num_factors: 4 }
    }

    /// `{momA, spinB} | {momB, spinA}`: Alice's momentum grouped with Bob's spin.
    pub fn alice_bob_crossed() -> Self {
        Self { blocks: vec![vec![0, 3], vec![1, 2]], num_factors: 4 }
    }

    /// All `2^{n−1} − 1` bipartitions of `n` factors.
    pub fn all_bipartitions(num_factors: usize) -> Vec<Self> {
        if num_factors < 2 {
            return Vec::new();
        }
        // fix factor 0 in the first block to avoid listing each cut twice
        (0..(1usize << (num_factors - 1)) - 1)
            .map(|mask| {
                let first: Vec<usize> =
                    std::iter::once(0).chain((1..num_factors).filter(|i| mask >> (i - 1) & 1 == 1)).collect();
                let second: Vec<usize> = (0..num_factors).filter(|i| !first.contains(i)).collect();
                Self { blocks: vec![first, second], num_factors }
            })
            .collect()
    }
}

/// The four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

/// Bell state over `[spinA, spinB]`, basis order `↑↑, ↑↓, ↓↑, ↓↓`.
pub fn bell_state(kind: BellKind) -> PureState {
    let s = FRAC_1_SQRT_2;
    let amps = match kind {
        BellKind::PsiPlus => [0.0, s, s, 0.0],
        BellKind::PsiMinus => [0.0, s, -s, 0.0],
        BellKind::PhiPlus => [s, 0.0, 0.0, s],
        BellKind::PhiMinus => [s, 0.0, 0.0, -s],
    };
    PureState::from_real(&amps, SPIN_FACTORS.to_vec()).expect("Bell states are normalised")
}

/// `cos α |p₊p₋⟩ + sin α |p₋p₊⟩` over `[momA, momB]`.
pub fn momentum_state(alpha: f64) -> PureState {
    let (s, c) = alpha.sin_cos();
    PureState::from_real(&[0.0, c, s, 0.0], MOMENTUM_FACTORS.to_vec()).expect("unit norm by construction")
}

/// `cos β |↑↓⟩ + sin β |↓↑⟩` over `[spinA, spinB]`.
pub fn bell_type_spin(beta: f64) -> PureState {
    let (s, c) = beta.sin_cos();
    PureState::from_real(&[0.0, c, s, 0.0], SPIN_FACTORS.to_vec()).expect("unit norm by construction")
}

/// `sin θ cos φ |↑↑⟩ + sin θ sin φ (|↑↓⟩ + |↓↑⟩)/√2 + cos θ |↓↓⟩` over `[spinA, spinB]`.
pub fn triplet_spin(theta: f64, phi: f64) -> PureState {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let mid = st * sp * FRAC_1_SQRT_2;
    PureState::from_real(&[st * cp, mid, mid, ct], SPIN_FACTORS.to_vec()).expect("unit norm by construction")
}

/// `|ψ⟩_mom ⊗ |ψ⟩_spin` with factor order `[momA, momB, spinA, spinB]`.
pub fn compose_total(mom: &PureState, spin: &PureState) -> Result<PureState> {
    if mom.factors() != MOMENTUM_FACTORS {
        return Err(Error::LabelMismatch(format!("expected [momA, momB], got {:?}", mom.factors())));
    }
    if spin.factors() != SPIN_FACTORS {
        return Err(Error::LabelMismatch(format!("expected [spinA, spinB], got {:?}", spin.factors())));
    }
    PureState::new(kron_vec(mom.amplitudes(), spin.amplitudes()), TOTAL_FACTORS.to_vec())
}

/// The separable mixture `½(|↑↓⟩⟨↑↓| + |↓↑⟩⟨↓↑|)` over `[spinA, spinB]`.
pub fn classically_correlated() -> DensityMatrix {
    let h = C64::new(0.5, 0.0);
    DensityMatrix::new(CMatrix::diag(&[ZERO, h, h, ZERO]), SPIN_FACTORS.to_vec()).expect("valid by construction")
}

/// Schmidt weights `pᵢ` (squared Schmidt coefficients) in descending order.
///
/// They are the nonzero eigenvalues of either reduced density matrix; the smaller block
/// is diagonalised. Values below round-off are clipped to zero.
pub fn schmidt_coefficients(state: &PureState, bipartition: &Partition) -> Result<Vec<f64>> {
    if bipartition.blocks().len() != 2 {
        return Err(Error::InvalidPartition(format!("expected 2 blocks, got {}", bipartition.blocks().len())));
    }
    if bipartition.num_factors() != state.num_factors() {
        return Err(Error::InvalidPartition("partition does not match the number of factors".into()));
    }
    let block = bipartition.blocks().iter().min_by_key(|b| b.len()).unwrap();
    let rho = state.reduce(block)?;
    let mut p: Vec<f64> = rho.spectrum()?.into_iter().map(|x| x.max(0.0)).collect();
    p.sort_by(|a, b| b.total_cmp(a));
    Ok(p)
}

/// Number of Schmidt weights above `EPS_SCHMIDT`.
pub fn schmidt_rank(weights: &[f64]) -> usize {
    weights.iter().filter(|&&p| p > EPS_SCHMIDT).count()
}

/// Bloch vector `aᵢ = Tr(ρ σᵢ)` of a single qubit.
pub fn bloch_vector(rho: &DensityMatrix) -> Result<[f64; 3]> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("Bloch vector of a {}-dimensional state", rho.dim())));
    }
    let [sx, sy, sz] = pauli();
    let m = rho.matrix();
    Ok([m.trace_product(&sx).re, m.trace_product(&sy).re, m.trace_product(&sz).re])
}

/// Single-qubit density matrix `½(I + a·σ)`.
pub fn from_bloch(a: [f64; 3]) -> Result<DensityMatrix> {
    let m = &CMatrix::identity(2) + &linalg::pauli_dot(a);
    DensityMatrix::new(m.scale_real(0.5), vec![Factor::Qubit(0)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn bell_states() {
        let s = FRAC_1_SQRT_2;
        let m = bell_state(BellKind::PsiMinus);
        assert_eq!(m.amplitudes(), &[ZERO, C64::new(s, 0.0), C64::new(-s, 0.0), ZERO]);
        assert_eq!(bell_state(BellKind::PsiPlus).inner(&m), ZERO);
        let half = CMatrix::identity(2).scale_real(0.5);
        let phi = bell_state(BellKind::PhiPlus);
        assert!(phi.reduce(&[0]).unwrap().matrix().max_abs_diff(&half) < 1e-15);
        assert!(phi.reduce(&[1]).unwrap().matrix().max_abs_diff(&half) < 1e-15);
        for k in [BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus, BellKind::PhiMinus] {
            assert!((bell_state(k).norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn momentum_and_spin_families() {
        let m0 = momentum_state(0.0);
        assert_eq!(m0.amplitudes()[1], ONE);
        let sym = momentum_state(FRAC_PI_4);
        assert!(sym.projector_distance(&bell_state(BellKind::PsiPlus).relabel(MOMENTUM_FACTORS.to_vec()).unwrap()) < 1e-15);
        for a in [0.1, 1.0, 2.5, -3.0] {
            assert!((momentum_state(a).norm() - 1.0).abs() < 1e-15);
        }
        assert!(bell_type_spin(FRAC_PI_4).projector_distance(&bell_state(BellKind::PsiPlus)) < 1e-15);
        let b = bell_type_spin(3.0 * FRAC_PI_4);
        assert!(b.projector_distance(&bell_state(BellKind::PsiMinus)) < 1e-15);
        // amplitudes agree up to the global sign −1
        assert!((b.inner(&bell_state(BellKind::PsiMinus)) + ONE).norm() < 1e-15);
        assert_eq!(bell_type_spin(0.0).amplitudes()[1], ONE);

        assert_eq!(triplet_spin(0.0, 0.3).amplitudes()[3], ONE);
        assert!(triplet_spin(FRAC_PI_4, 0.0).projector_distance(&bell_state(BellKind::PhiPlus)) < 1e-15);
        assert!((triplet_spin(FRAC_PI_2, 0.0).amplitudes()[0] - ONE).norm() < 1e-15);
        assert!(triplet_spin(FRAC_PI_2, FRAC_PI_2).projector_distance(&bell_state(BellKind::PsiPlus)) < 1e-15);
    }

    #[test]
    fn compose_total_layout_and_labels() {
        let t = compose_total(&momentum_state(0.0), &bell_type_spin(0.0)).unwrap();
        // |p₊p₋↑↓⟩ = |0 1 0 1⟩ = index 5
        assert_eq!(t.amplitudes()[5], ONE);
        assert_eq!(t.factors(), TOTAL_FACTORS);
        assert!((t.norm() - 1.0).abs() < 1e-15);
        assert!(matches!(compose_total(&bell_type_spin(0.0), &bell_type_spin(0.0)), Err(Error::LabelMismatch(_))));
        assert!(matches!(compose_total(&momentum_state(0.0), &momentum_state(0.0)), Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn tracing_spins_recovers_momentum_state() {
        for (a, b) in [(0.3, 1.1), (FRAC_PI_4, 0.2), (1.3, 2.9)] {
            let mom = momentum_state(a);
            let total = compose_total(&mom, &triplet_spin(b, 0.7)).unwrap();
            let reduced = total.reduce(&[0, 1]).unwrap();
            assert!(reduced.matrix().max_abs_diff(&mom.projector()) < 1e-15);
            assert_eq!(reduced.factors(), MOMENTUM_FACTORS);
        }
    }

    #[test]
    fn schmidt_weights() {
        let cut = Partition::new(vec![vec![0], vec![1]], 2).unwrap();
        let product = bell_type_spin(0.0);
        let p = schmidt_coefficients(&product, &cut).unwrap();
        assert!(close(&p, &[1.0, 0.0], 1e-15));
        assert_eq!(schmidt_rank(&p), 1);
        let p = schmidt_coefficients(&bell_state(BellKind::PsiMinus), &cut).unwrap();
        assert!(close(&p, &[0.5, 0.5], 1e-14));
        assert_eq!(schmidt_rank(&p), 2);
        let three = Partition::four_qubits();
        assert!(matches!(
            schmidt_coefficients(&compose_total(&momentum_state(0.1), &bell_type_spin(0.2)).unwrap(), &three),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn schmidt_weights_agree_on_both_sides() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let amps: Vec<C64> = (0..16).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let psi = PureState::normalized(amps, TOTAL_FACTORS.to_vec()).unwrap();
            for cut in Partition::all_bipartitions(4) {
                let a = psi.reduce(&cut.blocks()[0]).unwrap().spectrum().unwrap();
                let b = psi.reduce(&cut.blocks()[1]).unwrap().spectrum().unwrap();
                let mut a: Vec<f64> = a.into_iter().rev().collect();
                let mut b: Vec<f64> = b.into_iter().rev().collect();
                let k = a.len().min(b.len());
                a.truncate(k);
                b.truncate(k);
                assert!(close(&a, &b, 1e-10));
                let total: f64 = schmidt_coefficients(&psi, &cut).unwrap().iter().sum();
                assert!((total - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn bloch_vectors() {
        let up = PureState::from_real(&[1.0, 0.0], vec![Factor::Qubit(0)]).unwrap().density();
        assert_eq!(bloch_vector(&up).unwrap(), [0.0, 0.0, 1.0]);
        assert_eq!(bloch_vector(&DensityMatrix::maximally_mixed(1)).unwrap(), [0.0, 0.0, 0.0]);
        let rho = from_bloch([0.5, 0.0, 0.0]).unwrap();
        assert!(close(&bloch_vector(&rho).unwrap(), &[0.5, 0.0, 0.0], 1e-15));
        assert!(matches!(bloch_vector(&DensityMatrix::maximally_mixed(2)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn partitions() {
        assert!(Partition::new(vec![vec![0, 1], vec![1, 2]], 3).is_err());
        assert!(Partition::new(vec![vec![0], vec![2]], 3).is_err());
        assert!(Partition::new(vec![vec![0], vec![]], 1).is_err());
        assert_eq!(Partition::all_bipartitions(4).len(), 7);
        assert_eq!(Partition::all_bipartitions(3).len(), 3);
    }

    #[test]
    fn density_validation() {
        let bad = CMatrix::diag(&[C64::new(1.5, 0.0), C64::new(-0.5, 0.0)]);
        assert!(matches!(DensityMatrix::from_matrix(bad), Err(Error::InvalidState(_))));
        let not_unit = CMatrix::identity(2);
        assert!(matches!(DensityMatrix::from_matrix(not_unit), Err(Error::InvalidState(_))));
        let mut nh = CMatrix::identity(2).scale_real(0.5);
        nh[(0, 1)] = C64::new(0.1, 0.0);
        assert!(matches!(DensityMatrix::from_matrix(nh), Err(Error::NotHermitian { .. })));
        assert!(PureState::from_real(&[1.0, 1.0], vec![Factor::Qubit(0)]).is_err());
    }
}
