//! CHSH correlations, the Horodecki criterion and Pauli–Lubanski spin observables.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinematics::{
    self, boost_from_velocity, dot, norm, scale, standard_boost, su2_from_rotation, sub, wigner_rotation, FourVector,
    LorentzMatrix, Vec3,
};
use crate::linalg::{hermitian_eigenvalues, kron, pauli, pauli_dot, CMatrix};
use crate::qstate::{DensityMatrix, PureState};
use crate::relboost::ScenarioParams;

const EPS_UNIT: f64 = 1e-9;

fn unit(v: Vec3) -> Result<Vec3> {
    let n = norm(v);
    if (n - 1.0).abs() > EPS_UNIT {
        return Err(Error::InvalidState(format!("direction {v:?} has norm {n}, expected 1")));
    }
    Ok(v)
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!("expected a two-qubit state, got dimension {}", rho.dim())));
    }
    Ok(())
}

/// A spin measurement direction, stored as a four-vector with vanishing time component in
/// the frame named by `frame`. Lorentz transformations keep the full four-vector.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementDirection {
    pub frame: String,
    pub vector: FourVector,
}

impl MeasurementDirection {
    pub fn new(frame: impl Into<String>, direction: Vec3) -> Result<Self> {
        if norm(direction) == 0.0 || !norm(direction).is_finite() {
            return Err(Error::InvalidState("measurement direction must be nonzero".into()));
        }
        Ok(Self { frame: frame.into(), vector: FourVector::spatial_vector(direction) })
    }

    /// `L a`, relabelled as living in `frame`.
    pub fn transformed(&self, l: &LorentzMatrix, frame: impl Into<String>) -> Self {
        Self { frame: frame.into(), vector: l.apply(self.vector) }
    }

    pub fn spatial(&self) -> Vec3 {
        self.vector.spatial()
    }
}

/// A ±1-valued spin observable `n·σ` with `|n| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinObservable {
    pub matrix: CMatrix,
    pub direction: Vec3,
}

impl SpinObservable {
    /// `a·σ / |a|`.
    pub fn along(a: Vec3) -> Result<Self> {
        let n = kinematics::normalize(a).ok_or_else(|| Error::InvalidState("zero spin direction".into()))?;
        Ok(Self { matrix: pauli_dot(n), direction: n })
    }
}

/// `Tr[ρ (a·σ ⊗ b·σ)]`.
pub fn chsh_expectation(rho: &DensityMatrix, a: Vec3, b: Vec3) -> Result<f64> {
    require_two_qubits(rho)?;
    let (a, b) = (unit(a)?, unit(b)?);
    Ok(rho.matrix().trace_product(&kron(&pauli_dot(a), &pauli_dot(b))).re)
}

/// `Tr[ρ (A ⊗ B)]` for arbitrary single-particle observables.
pub fn joint_expectation(rho: &DensityMatrix, a: &SpinObservable, b: &SpinObservable) -> Result<f64> {
    require_two_qubits(rho)?;
    Ok(rho.matrix().trace_product(&kron(&a.matrix, &b.matrix)).re)
}

/// The four directions of a CHSH experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellSettings {
    pub a: Vec3,
    pub a_prime: Vec3,
    pub b: Vec3,
    pub b_prime: Vec3,
}

impl BellSettings {
    /// Coplanar directions in the xz-plane at 0°, 45°, 90°, 135° from ẑ for `a, b, a′, b′`.
    pub fn standard() -> Self {
        let s = FRAC_1_SQRT_2;
        Self { a: [0.0, 0.0, 1.0], b: [s, 0.0, s], a_prime: [1.0, 0.0, 0.0], b_prime: [s, 0.0, -s] }
    }

    /// Directions given by their angle from ẑ in the xz-plane.
    pub fn coplanar(a: f64, a_prime: f64, b: f64, b_prime: f64) -> Self {
        let d = |t: f64| [t.sin(), 0.0, t.cos()];
        Self { a: d(a), a_prime: d(a_prime), b: d(b), b_prime: d(b_prime) }
    }
}

/// `S = E(a,b) − E(a,b′) + E(a′,b′) + E(a′,b)`.
pub fn bell_parameter(rho: &DensityMatrix, s: &BellSettings) -> Result<f64> {
    Ok(chsh_expectation(rho, s.a, s.b)? - chsh_expectation(rho, s.a, s.b_prime)?
        + chsh_expectation(rho, s.a_prime, s.b_prime)?
        + chsh_expectation(rho, s.a_prime, s.b)?)
}

/// `B = A⊗(B − B′) + A′⊗(B + B′)`, so that `S = Tr ρB`.
pub fn bell_observable(s: &BellSettings) -> CMatrix {
    let (a, ap) = (pauli_dot(s.a), pauli_dot(s.a_prime));
    let (b, bp) = (pauli_dot(s.b), pauli_dot(s.b_prime));
    &kron(&a, &(&b - &bp)) + &kron(&ap, &(&b + &bp))
}

/// `Tr[ρ (2𝟙 − B)]`, non-negative for every state admitting a local model.
pub fn chsh_witness(rho: &DensityMatrix, s: &BellSettings) -> Result<f64> {
    require_two_qubits(rho)?;
    let w = &CMatrix::identity(4).scale_real(2.0) - &bell_observable(s);
    Ok(rho.matrix().trace_product(&w).re)
}

/// `Tᵢⱼ = Tr ρ (σᵢ ⊗ σⱼ)`.
pub fn correlation_matrix(rho: &DensityMatrix) -> Result<[[f64; 3]; 3]> {
    require_two_qubits(rho)?;
    let p = pauli();
    let mut t = [[0.0; 3]; 3];
    for (i, si) in p.iter().enumerate() {
        for (j, sj) in p.iter().enumerate() {
            t[i][j] = rho.matrix().trace_product(&kron(si, sj)).re;
        }
    }
    Ok(t)
}

/// Sum of the two largest eigenvalues of `TᵀT`; the maximal CHSH value is `2√M`.
pub fn horodecki_m(rho: &DensityMatrix) -> Result<f64> {
    let t = correlation_matrix(rho)?;
    let mut u = [0.0; 9];
    for i in 0..3 {
        for j in 0..3 {
            u[3 * i + j] = (0..3).map(|k| t[k][i] * t[k][j]).sum();
        }
    }
    let ev = hermitian_eigenvalues(&CMatrix::from_real(3, 3, &u)?)?;
    Ok(ev[1] + ev[2])
}

fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

fn perturb<R: Rng + ?Sized>(rng: &mut R, v: Vec3, step: f64) -> Vec3 {
    let d = random_unit(rng);
    kinematics::normalize(kinematics::add(v, scale(d, step))).unwrap_or(v)
}

/// Largest `|S|` found by a seeded random-restart hill climb using `budget` evaluations.
pub fn search_max_bell_parameter<R: Rng + ?Sized>(rho: &DensityMatrix, rng: &mut R, budget: usize) -> Result<f64> {
    let t = correlation_matrix(rho)?;
    let e = |a: Vec3, b: Vec3| -> f64 { (0..3).map(|i| a[i] * dot(t[i], b)).sum() };
    let s_of = |s: &[Vec3; 4]| (e(s[0], s[2]) - e(s[0], s[3]) + e(s[1], s[3]) + e(s[1], s[2])).abs();
    let starts = (budget / 50).max(1);
    let steps = budget / starts;
    let mut best: f64 = 0.0;
    for _ in 0..starts {
        let mut cur = [random_unit(rng), random_unit(rng), random_unit(rng), random_unit(rng)];
        let mut val = s_of(&cur);
        let mut step = 0.5;
        for _ in 1..steps {
            let k = rng.gen_range(0..4);
            let mut cand = cur;
            cand[k] = perturb(rng, cur[k], step);
            let v = s_of(&cand);
            if v > val {
                cur = cand;
                val = v;
            } else {
                step = (step * 0.93).max(1e-3);
            }
        }
        best = best.max(val);
    }
    Ok(best)
}

/// [`search_max_bell_parameter`] driven by a ChaCha8 generator seeded with `seed`.
pub fn search_max_bell_parameter_seeded(rho: &DensityMatrix, seed: u64, budget: usize) -> Result<f64> {
    search_max_bell_parameter(rho, &mut ChaCha8Rng::seed_from_u64(seed), budget)
}

/// Rest-frame spin direction of a particle with velocity `v` measured along `a` in the
/// moving frame: `(√(1−v²) a_⊥ + a_∥) / √(1 + v²(a_∥² − 1))`.
pub fn pl_direction(a: Vec3, v: Vec3) -> Result<Vec3> {
    let a = unit(a)?;
    let v2 = dot(v, v);
    if v2 >= 1.0 {
        return Err(Error::SuperluminalVelocity { speed: v2.sqrt() });
    }
    if v2 == 0.0 {
        return Ok(a);
    }
    let par = scale(v, dot(a, v) / v2);
    let perp = sub(a, par);
    let num = kinematics::add(scale(perp, (1.0 - v2).sqrt()), par);
    let den = (1.0 + v2 * (dot(par, par) - 1.0)).sqrt();
    Ok(scale(num, 1.0 / den))
}

/// Relativistic spin observable for a particle of momentum `p`: `n·σ` with `n` the normalised
/// spatial part of `L⁻¹(p) a`.
pub fn pl_observable(a: &MeasurementDirection, p: FourVector, mass: f64) -> Result<SpinObservable> {
    let rest = standard_boost(p, mass)?.inverse().apply(a.vector);
    SpinObservable::along(rest.spatial())
}

/// CHSH values for a product momentum state before and after the observer boost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshDemo {
    pub s_initial: f64,
    /// Same observables `a·σ` applied to the Wigner-rotated spins.
    pub s_boosted_fixed: f64,
    /// Observables built from the transformed directions `a″ = Λ L(p) a` at momentum `Λp`.
    pub s_boosted_transformed: f64,
    pub delta: f64,
}

/// Momenta `±v ẑ` (unit mass), spin state from `params`, observer moving along `x̂` with `w`.
///
/// Only product momentum states are supported, i.e. `α` a multiple of `π/2`; `α ≡ 0 (mod π)`
/// gives particle A momentum `p₊`, otherwise `p₋`.
pub fn boosted_chsh_demo(params: &ScenarioParams, settings: &BellSettings) -> Result<ChshDemo> {
    let (v, w) = params
        .speeds
        .ok_or_else(|| Error::UnsupportedScenario("the CHSH demo needs particle and observer speeds".into()))?;
    let k = params.alpha / FRAC_PI_2;
    if (k - k.round()).abs() > 1e-12 {
        return Err(Error::UnsupportedScenario(format!(
            "α = {} is not a multiple of π/2; entangled momentum branches are not supported",
            params.alpha
        )));
    }
    let a_moves_up = (k.round() as i64).rem_euclid(2) == 0;
    let m = 1.0;
    let pz = if a_moves_up { v } else { -v };
    let p_a = FourVector::momentum_from_velocity(m, [0.0, 0.0, pz])?;
    let p_b = FourVector::momentum_from_velocity(m, [0.0, 0.0, -pz])?;
    let lambda = boost_from_velocity([w, 0.0, 0.0])?;

    let spin: PureState = params.spin_family.state();
    let initial = spin.density();
    let s_initial = bell_parameter(&initial, settings)?;

    let u_a = su2_from_rotation(&wigner_rotation(&lambda, p_a, m)?).to_cmatrix();
    let u_b = su2_from_rotation(&wigner_rotation(&lambda, p_b, m)?).to_cmatrix();
    let boosted = spin.evolve(&kron(&u_a, &u_b))?.density();
    let s_boosted_fixed = bell_parameter(&boosted, settings)?;

    let observable = |dir: Vec3, p: FourVector| -> Result<SpinObservable> {
        let rest = MeasurementDirection::new("rest", unit(dir)?)?;
        let seen = rest.transformed(&(lambda * standard_boost(p, m)?), "boosted");
        pl_observable(&seen, lambda.apply(p), m)
    };
    let e = |x: Vec3, y: Vec3| -> Result<f64> {
        joint_expectation(&boosted, &observable(x, p_a)?, &observable(y, p_b)?)
    };
    let s = settings;
    let s_boosted_transformed = e(s.a, s.b)? - e(s.a, s.b_prime)? + e(s.a_prime, s.b_prime)? + e(s.a_prime, s.b)?;

    Ok(ChshDemo { s_initial, s_boosted_fixed, s_boosted_transformed, delta: params.delta })
}
