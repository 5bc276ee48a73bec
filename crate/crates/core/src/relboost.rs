//! Lorentz boosts acting on spin and momentum degrees of freedom.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{
    boost_from_velocity, speed_from_rapidity, su2_from_rotation, wigner_angle_perpendicular, wigner_rotation,
    FourVector, LorentzMatrix, SU2Matrix, Vec3,
};
use crate::linalg::{CMatrix, C64, ONE, ZERO};
use crate::qstate::{
    bell_type_spin, compose_total, momentum_state, triplet_spin, DensityMatrix, Factor, PureState, TOTAL_FACTORS,
};
use crate::quadrature::gauss_hermite;

/// Spin part of the two-particle scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpinFamily {
    /// `cos β |↑↓⟩ + sin β |↓↑⟩`
    BellType { beta: f64 },
    /// `sin θ cos φ |↑↑⟩ + sin θ sin φ |ψ⁺⟩ + cos θ |↓↓⟩`
    TripletType { theta: f64, phi: f64 },
}

impl SpinFamily {
    pub fn state(&self) -> PureState {
        match *self {
            SpinFamily::BellType { beta } => bell_type_spin(beta),
            SpinFamily::TripletType { theta, phi } => triplet_spin(theta, phi),
        }
    }
}

/// Two particles with momenta `±p ẑ` seen by an observer moving along `x̂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioParams {
    pub spin_family: SpinFamily,
    /// Momentum mixing angle of `cos α |p₊p₋⟩ + sin α |p₋p₊⟩`.
    pub alpha: f64,
    /// `(v, w)` when the angle was derived from speeds.
    pub speeds: Option<(f64, f64)>,
    pub delta: f64,
}

impl ScenarioParams {
    /// Particle speed `v` and observer speed `w`, both in `[0, 1)`.
    pub fn from_speeds(spin_family: SpinFamily, alpha: f64, v: f64, w: f64) -> Result<Self> {
        let delta = wigner_angle_perpendicular(v, w)?;
        Ok(Self { spin_family, alpha, speeds: Some((v, w)), delta })
    }

    /// Sets the Wigner angle directly, e.g. to sample the `v, w → 1` limit `δ = π/2`.
    pub fn with_delta(spin_family: SpinFamily, alpha: f64, delta: f64) -> Self {
        Self { spin_family, alpha, speeds: None, delta }
    }

    pub fn initial_state(&self) -> PureState {
        compose_total(&momentum_state(self.alpha), &self.spin_family.state())
            .expect("constructors use the canonical factor labels")
    }
}

/// `(U₊, U₋)` with `U± = [[cos δ/2, ±sin δ/2], [∓sin δ/2, cos δ/2]]`.
pub fn wigner_unitaries(delta: f64) -> (SU2Matrix, SU2Matrix) {
    let (s, c) = (0.5 * delta).sin_cos();
    let (s, c) = (C64::new(s, 0.0), C64::new(c, 0.0));
    (SU2Matrix([[c, s], [-s, c]]), SU2Matrix([[c, -s], [s, c]]))
}

/// Applies the momentum-conditioned Wigner rotation to a `[momA, momB, spinA, spinB]` state.
///
/// Each particle's spin is rotated by `U₊` when its momentum qubit is `p₊` and by `U₋` when
/// it is `p₋`, so the `|p₊p₋⟩` branch receives `U₊⊗U₋` and `|p₋p₊⟩` receives `U₋⊗U₊`.
pub fn boost_two_particle(total: &PureState, delta: f64) -> Result<PureState> {
    if total.factors() != TOTAL_FACTORS {
        return Err(Error::LabelMismatch(format!(
            "expected [momA, momB, spinA, spinB], got {:?}",
            total.factors()
        )));
    }
    let (up, um) = wigner_unitaries(delta);
    let u = [up.0, um.0];
    let amps = total.amplitudes();
    let mut out = vec![ZERO; 16];
    for moms in 0..4 {
        let (ua, ub) = (&u[moms >> 1], &u[moms & 1]);
        for sa in 0..2 {
            for sb in 0..2 {
                let mut acc = ZERO;
                for ta in 0..2 {
                    for tb in 0..2 {
                        acc += ua[sa][ta] * ub[sb][tb] * amps[(moms << 2) | (ta << 1) | tb];
                    }
                }
                out[(moms << 2) | (sa << 1) | sb] = acc;
            }
        }
    }
    PureState::new(out, TOTAL_FACTORS.to_vec())
}

/// Initial and boosted total states of a scenario.
pub fn boost_scenario(params: &ScenarioParams) -> Result<(PureState, PureState)> {
    let initial = params.initial_state();
    let boosted = boost_two_particle(&initial, params.delta)?;
    Ok((initial, boosted))
}

/// Spin of a particle with sharp momentum `p` after the boost `Λ`.
pub fn boost_single_wigner(spin: &PureState, lambda: &LorentzMatrix, p: FourVector, mass: f64) -> Result<PureState> {
    if spin.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("expected a single spin, got dimension {}", spin.dim())));
    }
    let u = su2_from_rotation(&wigner_rotation(lambda, p, mass)?);
    let a = spin.amplitudes();
    let out = u.apply([a[0], a[1]]);
    PureState::normalized(out.to_vec(), spin.factors().to_vec())
}

/// A spin-up particle with Gaussian momentum amplitude `f(p) ∝ exp(−|p − p₀|²/(2 ww²))`,
/// viewed from a frame boosted along `x̂` with rapidity `ξ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianPacket {
    pub mass: f64,
    pub width: f64,
    pub center: Vec3,
    pub rapidity: f64,
    pub nodes: [usize; 3],
}

impl GaussianPacket {
    pub fn new(mass: f64, width: f64, rapidity: f64, nodes: usize) -> Self {
        Self { mass, width, center: [0.0; 3], rapidity, nodes: [nodes; 3] }
    }

    /// `ww / m`.
    pub fn relative_width(&self) -> f64 {
        self.width / self.mass
    }

    fn validate(&self) -> Result<()> {
        if let Some(&n) = self.nodes.iter().find(|&&n| n < 3) {
            return Err(Error::QuadratureTooCoarse { nodes: n });
        }
        if !(self.mass > 0.0 && self.width > 0.0 && self.rapidity >= 0.0) {
            return Err(Error::InvalidState(format!(
                "packet needs m > 0, ww > 0, ξ ≥ 0 (got m = {}, ww = {}, ξ = {})",
                self.mass, self.width, self.rapidity
            )));
        }
        if self.center[0] != 0.0 {
            return Err(Error::UnsupportedScenario("packet center must be perpendicular to the boost axis x̂".into()));
        }
        Ok(())
    }
}

/// Reduced spin density matrix of the boosted packet.
///
/// Integrates `U(W(Λ, p)) |↑⟩⟨↑| U(W(Λ, p))†` against `|f(p)|²` on the invariant measure
/// `d³p / 2E_p` with a tensor Gauss–Hermite rule.
pub fn gaussian_boosted_spin_density(packet: &GaussianPacket) -> Result<DensityMatrix> {
    packet.validate()?;
    let lambda = boost_from_velocity([speed_from_rapidity(packet.rapidity)?, 0.0, 0.0])?;
    let rules: Vec<(Vec<f64>, Vec<f64>)> = packet.nodes.iter().map(|&n| gauss_hermite(n)).collect();
    let [nx, ny, nz] = packet.nodes;
    let m = packet.mass;

    let contributions: Vec<(f64, [C64; 2])> = (0..nx * ny * nz)
        .into_par_iter()
        .map(|idx| {
            let (i, j, k) = (idx / (ny * nz), (idx / nz) % ny, idx % nz);
            let q = [
                packet.center[0] + packet.width * rules[0].0[i],
                packet.center[1] + packet.width * rules[1].0[j],
                packet.center[2] + packet.width * rules[2].0[k],
            ];
            let e = (m * m + q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
            let weight = rules[0].1[i] * rules[1].1[j] * rules[2].1[k] / (2.0 * e);
            let p = FourVector::new(e, q[0], q[1], q[2]);
            let spin = su2_from_rotation(&wigner_rotation(&lambda, p, m)?).apply([ONE, ZERO]);
            Ok((weight, spin))
        })
        .collect::<Result<_>>()?;

    let total: f64 = contributions.iter().map(|(w, _)| w).sum();
    let mut rho = CMatrix::zeros(2, 2);
    for (w, s) in &contributions {
        let w = w / total;
        for r in 0..2 {
            for c in 0..2 {
                rho[(r, c)] += s[r] * s[c].conj() * w;
            }
        }
    }
    // restore exact Hermiticity lost to summation order
    let rho = (&rho + &rho.dagger()).scale_real(0.5);
    DensityMatrix::new(rho, vec![Factor::Qubit(0)])
}

/// Leading-order entropy (nats) of the boosted packet's spin: `S = x(1 − ln x)` with
/// `x = (ww²/8m²) tanh²(ξ/2)`.
pub fn pst_entropy(width: f64, mass: f64, rapidity: f64) -> f64 {
    let x = (width * width / (8.0 * mass * mass)) * (0.5 * rapidity).tanh().powi(2);
    if x <= 0.0 {
        0.0
    } else {
        x * (1.0 - x.ln())
    }
}
