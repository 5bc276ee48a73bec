//! Special-relativistic kinematics: boosts, Wigner rotations and the SO(3) → SU(2) lift.
//!
//! Units have `c = 1` and the metric signature is `(+, −, −, −)`. Boost matrices follow
//! the passive convention: `boost_from_velocity(v)` maps a four-vector to the frame of
//! an observer moving with velocity `v`, so it takes `(γ, γv)` to `(1, 0, 0, 0)`. The
//! standard boost `L(p)` is the active counterpart that lifts the rest momentum `k = (m, 0)`
//! to `p`.
//!
//! For momentum `p` along `+ẑ` seen by an observer moving along `+x̂`, the Wigner rotation
//! `W(Λ, p) = L⁻¹(Λp) Λ L(p)` is a rotation about `−ŷ = −v̂ × ŵ`.

use std::ops::Mul;

use crate::error::{Error, Result};
use crate::linalg::{pauli_dot, CMatrix, C64, ONE, ZERO};
use crate::tolerances::{EPS_MASS_SHELL, SMALL_ANGLE};

pub type Vec3 = [f64; 3];

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Unit vector along `a`; `None` for the zero vector.
pub fn normalize(a: Vec3) -> Option<Vec3> {
    let n = norm(a);
    (n > 0.0).then(|| scale(a, 1.0 / n))
}

fn check_speed(speed: f64) -> Result<()> {
    if !(speed.is_finite() && speed < 1.0) {
        return Err(Error::SuperluminalVelocity { speed });
    }
    Ok(())
}

/// Lorentz factor `1/√(1−v²)` for a 3-velocity.
pub fn gamma(v: Vec3) -> Result<f64> {
    let speed = norm(v);
    check_speed(speed)?;
    Ok(1.0 / (1.0 - speed * speed).sqrt())
}

fn gamma_of_speed(speed: f64) -> Result<f64> {
    if speed < 0.0 {
        return Err(Error::SuperluminalVelocity { speed });
    }
    gamma([speed, 0.0, 0.0])
}

/// A spacetime point, momentum or measurement direction `(t, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    /// Purely spatial four-vector `(0, a)`.
    pub fn spatial_vector(a: Vec3) -> Self {
        Self::new(0.0, a[0], a[1], a[2])
    }

    /// Four-momentum `mγ(1, v)` of a particle of mass `m` moving with velocity `v`.
    pub fn momentum_from_velocity(mass: f64, v: Vec3) -> Result<Self> {
        let g = gamma(v)?;
        Ok(Self::new(mass * g, mass * g * v[0], mass * g * v[1], mass * g * v[2]))
    }

    /// Rest momentum `k = (m, 0, 0, 0)`.
    pub fn standard_momentum(mass: f64) -> Self {
        Self::new(mass, 0.0, 0.0, 0.0)
    }

    pub fn spatial(self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    /// Minkowski product `η(a, b) = a⁰b⁰ − a·b`.
    pub fn minkowski_dot(self, other: Self) -> f64 {
        self.t * other.t - self.x * other.x - self.y * other.y - self.z * other.z
    }

    pub fn minkowski_norm_sq(self) -> f64 {
        self.minkowski_dot(self)
    }

    /// 3-velocity `p/p⁰` of a timelike four-momentum.
    pub fn velocity(self) -> Vec3 {
        scale(self.spatial(), 1.0 / self.t)
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        self.to_array().iter().zip(other.to_array()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// A 4×4 real matrix acting on four-vectors, intended to be a proper orthochronous
/// Lorentz transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix(pub [[f64; 4]; 4]);

const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

impl LorentzMatrix {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self(m)
    }

    /// Embeds a spatial rotation matrix as `diag(1, R)`.
    pub fn from_rotation(r: [[f64; 3]; 3]) -> Self {
        let mut m = Self::identity().0;
        for i in 0..3 {
            for j in 0..3 {
                m[i + 1][j + 1] = r[i][j];
            }
        }
        Self(m)
    }

    pub fn apply(&self, v: FourVector) -> FourVector {
        let a = v.to_array();
        let mut out = [0.0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.0[i][j] * a[j]).sum();
        }
        FourVector::from_array(out)
    }

    pub fn transpose(&self) -> Self {
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = self.0[j][i];
            }
        }
        Self(m)
    }

    /// Inverse via `L⁻¹ = η Lᵀ η`, valid for Lorentz matrices.
    pub fn inverse(&self) -> Self {
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = ETA[i] * self.0[j][i] * ETA[j];
            }
        }
        Self(m)
    }

    pub fn determinant(&self) -> f64 {
        let data: Vec<f64> = self.0.iter().flatten().copied().collect();
        CMatrix::from_real(4, 4, &data).and_then(|m| m.determinant()).map(|d| d.re).unwrap_or(f64::NAN)
    }

    /// Largest entry of `|LᵀηL − η|`.
    pub fn metric_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let v: f64 = (0..4).map(|k| self.0[k][i] * ETA[k] * self.0[k][j]).sum();
                let target = if i == j { ETA[i] } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }

    /// `LᵀηL = η`, `det L = 1` and `L⁰₀ ≥ 1`, within `tol` scaled by `(L⁰₀)²`.
    pub fn is_proper_orthochronous(&self, tol: f64) -> bool {
        let scaled = tol * self.0[0][0].powi(2).max(1.0);
        self.metric_defect() <= scaled && (self.determinant() - 1.0).abs() <= scaled && self.0[0][0] >= 1.0 - tol
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..4).all(|i| (0..4).all(|j| (self.0[i][j] - self.0[j][i]).abs() <= tol))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }

    /// The spatial 3×3 block.
    pub fn spatial_block(&self) -> [[f64; 3]; 3] {
        let mut r = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = self.0[i + 1][j + 1];
            }
        }
        r
    }
}

impl Mul for LorentzMatrix {
    type Output = LorentzMatrix;

    fn mul(self, rhs: LorentzMatrix) -> LorentzMatrix {
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        LorentzMatrix(m)
    }
}

/// Pure boost into the frame of an observer moving with velocity `v`.
///
/// `v = (v_x, 0, 0)` reproduces the familiar `L_x` matrix with `−γv_x` off the diagonal.
pub fn boost_from_velocity(v: Vec3) -> Result<LorentzMatrix> {
    let g = gamma(v)?;
    let v2 = dot(v, v);
    let mut m = LorentzMatrix::identity().0;
    m[0][0] = g;
    for i in 0..3 {
        m[0][i + 1] = -g * v[i];
        m[i + 1][0] = -g * v[i];
        if v2 > 0.0 {
            for j in i..3 {
                let k = (g - 1.0) * v[i] * v[j] / v2;
                m[i + 1][j + 1] += k;
                if j != i {
                    m[j + 1][i + 1] += k;
                }
            }
        }
    }
    Ok(LorentzMatrix(m))
}

/// Rapidity `u = artanh(speed)`.
pub fn rapidity_from_speed(speed: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&speed) {
        return Err(Error::SuperluminalVelocity { speed });
    }
    Ok(speed.atanh())
}

/// Speed `tanh u` for a non-negative rapidity.
pub fn speed_from_rapidity(rapidity: f64) -> Result<f64> {
    if !(rapidity >= 0.0 && rapidity.is_finite()) {
        return Err(Error::SuperluminalVelocity { speed: rapidity.tanh() });
    }
    Ok(rapidity.tanh())
}

fn check_mass_shell(p: FourVector, mass: f64) -> Result<()> {
    let norm_sq = p.minkowski_norm_sq();
    let mass_sq = mass * mass;
    let ok = mass > 0.0 && p.t > 0.0 && (norm_sq - mass_sq).abs() <= EPS_MASS_SHELL * mass_sq.max(1.0);
    if !ok {
        return Err(Error::OffMassShell { norm_sq, mass_sq });
    }
    Ok(())
}

/// The standard boost `L(p)` with `L(p)·(m, 0, 0, 0) = p`.
pub fn standard_boost(p: FourVector, mass: f64) -> Result<LorentzMatrix> {
    check_mass_shell(p, mass)?;
    boost_from_velocity(scale(p.velocity(), -1.0))
}

/// A spatial rotation by `angle ∈ [0, π]` about the unit `axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3 {
    axis: Vec3,
    angle: f64,
}

impl Rotation3 {
    pub fn identity() -> Self {
        Self { axis: [0.0, 0.0, 1.0], angle: 0.0 }
    }

    /// Normalises the axis and folds the angle into `[0, π]`, flipping the axis as needed.
    pub fn new(axis: Vec3, angle: f64) -> Result<Self> {
        let axis = normalize(axis).ok_or_else(|| Error::DimensionMismatch("rotation axis must be nonzero".into()))?;
        let mut a = angle.rem_euclid(2.0 * std::f64::consts::PI);
        let mut n = axis;
        if a > std::f64::consts::PI {
            a = 2.0 * std::f64::consts::PI - a;
            n = scale(n, -1.0);
        }
        if a < SMALL_ANGLE {
            return Ok(Self::identity());
        }
        Ok(Self { axis: n, angle: a })
    }

    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Rodrigues matrix `R = I cos θ + (1 − cos θ) n nᵀ + sin θ [n]ₓ`.
    pub fn matrix(&self) -> [[f64; 3]; 3] {
        let (s, c) = self.angle.sin_cos();
        let n = self.axis;
        let k = [[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]];
        let mut r = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = (1.0 - c) * n[i] * n[j] + s * k[i][j] + if i == j { c } else { 0.0 };
            }
        }
        r
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let r = self.matrix();
        [dot(r[0], v), dot(r[1], v), dot(r[2], v)]
    }

    /// Extracts axis and angle from a rotation matrix.
    ///
    /// The angle comes from `atan2(|antisymmetric part|, (tr R − 1)/2)` and the axis from
    /// the antisymmetric part; near `π` the axis is read from the symmetric part instead.
    pub fn from_matrix(r: [[f64; 3]; 3]) -> Self {
        let anti = [r[2][1] - r[1][2], r[0][2] - r[2][0], r[1][0] - r[0][1]];
        let sin_term = 0.5 * norm(anti);
        let cos_term = 0.5 * (r[0][0] + r[1][1] + r[2][2] - 1.0);
        let angle = sin_term.atan2(cos_term);
        if angle < SMALL_ANGLE {
            return Self::identity();
        }
        if sin_term > 1e-6 {
            return Self { axis: scale(anti, 0.5 / sin_term), angle };
        }
        // angle ≈ π: R + I ≈ 2 n nᵀ; take the largest column and fix its sign from `anti`
        let cols: Vec<Vec3> = (0..3).map(|j| [r[0][j] + if j == 0 { 1.0 } else { 0.0 }, r[1][j] + if j == 1 { 1.0 } else { 0.0 }, r[2][j] + if j == 2 { 1.0 } else { 0.0 }]).collect();
        let best = cols.iter().copied().max_by(|a, b| norm(*a).total_cmp(&norm(*b))).unwrap();
        let mut axis = normalize(best).unwrap_or([0.0, 0.0, 1.0]);
        if dot(axis, anti) < 0.0 {
            axis = scale(axis, -1.0);
        }
        Self { axis, angle }
    }

    pub fn lorentz(&self) -> LorentzMatrix {
        LorentzMatrix::from_rotation(self.matrix())
    }

    /// Maximum entry difference of the rotation matrices.
    pub fn distance(&self, other: &Self) -> f64 {
        let (a, b) = (self.matrix(), other.matrix());
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((a[i][j] - b[i][j]).abs());
            }
        }
        worst
    }
}

/// A 2×2 special unitary matrix, the spin-½ image of a rotation.
#[derive(Debug, Clone, PartialEq)]
pub struct SU2Matrix(pub [[C64; 2]; 2]);

impl SU2Matrix {
    pub fn identity() -> Self {
        Self([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        CMatrix::from_rows(self.0)
    }

    pub fn dagger(&self) -> Self {
        let m = self.0;
        Self([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn determinant(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [self.0[0][0] * v[0] + self.0[0][1] * v[1], self.0[1][0] * v[0] + self.0[1][1] * v[1]]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// The rotation this matrix represents (`U` and `−U` give the same result).
    pub fn rotation(&self) -> Rotation3 {
        // U = cos(θ/2) I − i sin(θ/2) n·σ
        let m = self.0;
        let c = 0.5 * (m[0][0] + m[1][1]).re;
        let nz = -(0.5 * (m[0][0] - m[1][1])).im;
        let nx = -(0.5 * (m[0][1] + m[1][0])).im;
        let ny = (0.5 * (m[1][0] - m[0][1])).re;
        let s = norm([nx, ny, nz]);
        let half = s.atan2(c);
        match normalize([nx, ny, nz]) {
            Some(axis) => Rotation3::new(axis, 2.0 * half).unwrap_or_else(|_| Rotation3::identity()),
            None => Rotation3::identity(),
        }
    }
}

/// The Wigner rotation `W(Λ, p) = L⁻¹(Λp) Λ L(p)` as a full Lorentz matrix.
pub fn wigner_matrix(lambda: &LorentzMatrix, p: FourVector, mass: f64) -> Result<LorentzMatrix> {
    let lp = standard_boost(p, mass)?;
    let lambda_p = lambda.apply(p);
    let l_lambda_p = standard_boost(lambda_p, mass)?;
    Ok(l_lambda_p.inverse() * *lambda * lp)
}

/// The Wigner rotation `W(Λ, p)` in axis-angle form.
pub fn wigner_rotation(lambda: &LorentzMatrix, p: FourVector, mass: f64) -> Result<Rotation3> {
    Ok(Rotation3::from_matrix(wigner_matrix(lambda, p, mass)?.spatial_block()))
}

/// Wigner angle for a particle moving with speed `v` seen by an observer moving
/// perpendicularly with speed `w`: `cos δ = (γ_v + γ_w)/(1 + γ_v γ_w)`.
pub fn wigner_angle_perpendicular(v: f64, w: f64) -> Result<f64> {
    let gv = gamma_of_speed(v)?;
    let gw = gamma_of_speed(w)?;
    let cos_delta = (gv + gw) / (1.0 + gv * gw);
    Ok(cos_delta.clamp(-1.0, 1.0).acos())
}

/// Wigner angle for particle velocity `v` and observer velocity `w` in arbitrary directions.
///
/// `cos δ + 1 = (1 + γ_u + γ_v + γ_w)² / ((1 + γ_u)(1 + γ_v)(1 + γ_w))` where `γ_u` is the
/// Lorentz factor of the particle in the observer's frame, `γ_u = γ_v γ_w (1 − v·w)`.
/// The arguments match `wigner_rotation(&boost_from_velocity(w)?, p(v), m)`.
pub fn wigner_angle_general(v: Vec3, w: Vec3) -> Result<f64> {
    let gv = gamma(v)?;
    let gw = gamma(w)?;
    let gu = gv * gw * (1.0 - dot(v, w));
    let num = (1.0 + gu + gv + gw).powi(2);
    let den = (1.0 + gu) * (1.0 + gv) * (1.0 + gw);
    Ok((num / den - 1.0).clamp(-1.0, 1.0).acos())
}

/// Spin-½ lift `U = exp(−i (θ/2) n·σ)` of a rotation, principal branch.
pub fn su2_from_rotation(r: &Rotation3) -> SU2Matrix {
    let (s, c) = (0.5 * r.angle()).sin_cos();
    let n = r.axis();
    let ns = pauli_dot(n);
    let m = [
        [C64::new(c, 0.0) + C64::new(0.0, -s) * ns[(0, 0)], C64::new(0.0, -s) * ns[(0, 1)]],
        [C64::new(0.0, -s) * ns[(1, 0)], C64::new(c, 0.0) + C64::new(0.0, -s) * ns[(1, 1)]],
    ];
    SU2Matrix(m)
}

/// `exp(−i (θ/2) n·σ)` for any angle, including `θ = 2π → −I`.
pub fn su2_from_axis_angle(axis: Vec3, angle: f64) -> Result<SU2Matrix> {
    let n = normalize(axis).ok_or_else(|| Error::DimensionMismatch("rotation axis must be nonzero".into()))?;
    let (s, c) = (0.5 * angle).sin_cos();
    Ok(SU2Matrix([
        [C64::new(c, -s * n[2]), C64::new(-s * n[1], -s * n[0])],
        [C64::new(s * n[1], -s * n[0]), C64::new(c, s * n[2])],
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};
    use crate::tolerances::EPS_LORENTZ;

    fn random_velocity(rng: &mut impl Rng, max_speed: f64) -> Vec3 {
        let dir = normalize([rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]).unwrap();
        scale(dir, rng.gen_range(0.0..max_speed))
    }

    #[test]
    fn boost_zero_is_identity() {
        assert_eq!(boost_from_velocity([0.0; 3]).unwrap(), LorentzMatrix::identity());
    }

    #[test]
    fn boost_along_x_matches_textbook_matrix() {
        let v = 0.6;
        let g = 1.25;
        let b = boost_from_velocity([v, 0.0, 0.0]).unwrap();
        let expected =
            LorentzMatrix([[g, -g * v, 0.0, 0.0], [-g * v, g, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]);
        assert!(b.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn boost_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let v = random_velocity(&mut rng, 0.99);
            let b = boost_from_velocity(v).unwrap();
            assert!(b.is_proper_orthochronous(EPS_LORENTZ));
            assert!(b.is_symmetric(0.0));
            let inv = boost_from_velocity(scale(v, -1.0)).unwrap();
            assert!((b * inv).max_abs_diff(&LorentzMatrix::identity()) < 1e-12);
            let u = FourVector::momentum_from_velocity(1.0, v).unwrap();
            assert!(b.apply(u).max_abs_diff(FourVector::standard_momentum(1.0)) < 1e-12);
        }
    }

    #[test]
    fn superluminal_rejected() {
        assert!(matches!(boost_from_velocity([1.0, 0.0, 0.0]), Err(Error::SuperluminalVelocity { .. })));
        assert!(matches!(boost_from_velocity([0.8, 0.7, 0.0]), Err(Error::SuperluminalVelocity { .. })));
        assert!(rapidity_from_speed(1.0).is_err());
        assert!(wigner_angle_perpendicular(1.0, 0.5).is_err());
        assert!(wigner_angle_general([0.0, 0.0, 1.2], [0.1, 0.0, 0.0]).is_err());
    }

    #[test]
    fn rapidity_round_trip_and_additivity() {
        assert_eq!(rapidity_from_speed(0.0).unwrap(), 0.0);
        let u = rapidity_from_speed(0.8).unwrap();
        // artanh(0.8) = ½ ln 9
        assert!((u - 0.5 * 9f64.ln()).abs() < 1e-15);
        assert!((u.cosh() - 5.0 / 3.0).abs() < 1e-14);
        for s in [0.0, 0.1, 0.5, 0.9, 0.999] {
            let back = speed_from_rapidity(rapidity_from_speed(s).unwrap()).unwrap();
            assert!((back - s).abs() < 1e-14);
        }
        // collinear boosts add rapidities
        let (s1, s2) = (0.5, 0.7);
        let composed = boost_from_velocity([0.0, 0.0, s1]).unwrap() * boost_from_velocity([0.0, 0.0, s2]).unwrap();
        let total = speed_from_rapidity(rapidity_from_speed(s1).unwrap() + rapidity_from_speed(s2).unwrap()).unwrap();
        assert!(composed.max_abs_diff(&boost_from_velocity([0.0, 0.0, total]).unwrap()) < 1e-12);
    }

    #[test]
    fn standard_boost_cases() {
        let k = FourVector::standard_momentum(2.0);
        assert!(standard_boost(k, 2.0).unwrap().max_abs_diff(&LorentzMatrix::identity()) < 1e-15);
        let p = FourVector::momentum_from_velocity(1.0, [0.0, 0.0, 0.8]).unwrap();
        let lp = standard_boost(p, 1.0).unwrap();
        let image = lp.apply(FourVector::standard_momentum(1.0));
        assert!(image.max_abs_diff(FourVector::new(5.0 / 3.0, 0.0, 0.0, 4.0 / 3.0)) < 1e-12);
        assert!((image.minkowski_norm_sq() - 1.0).abs() < 1e-12);
        assert!(matches!(standard_boost(FourVector::new(1.0, 1.0, 0.0, 0.0), 1.0), Err(Error::OffMassShell { .. })));
        assert!(matches!(standard_boost(FourVector::new(-1.0, 0.0, 0.0, 0.0), 1.0), Err(Error::OffMassShell { .. })));
    }

    #[test]
    fn wigner_rotation_of_pure_rotation_is_itself() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let r = Rotation3::new([rng.gen(), rng.gen(), rng.gen::<f64>() + 0.1], rng.gen_range(0.1..3.0)).unwrap();
            let p = FourVector::momentum_from_velocity(1.5, random_velocity(&mut rng, 0.95)).unwrap();
            let w = wigner_rotation(&r.lorentz(), p, 1.5).unwrap();
            assert!(w.distance(&r) < 1e-10);
        }
    }

    #[test]
    fn collinear_boost_gives_no_rotation() {
        let p = FourVector::momentum_from_velocity(1.0, [0.3, 0.0, 0.4]).unwrap();
        let lambda = boost_from_velocity([0.6 * 0.9, 0.0, 0.8 * 0.9]).unwrap();
        let w = wigner_rotation(&lambda, p, 1.0).unwrap();
        assert!(w.angle() < 1e-7);
        assert!(wigner_angle_general([0.3, 0.0, 0.4], [0.54, 0.0, 0.72]).unwrap() < 1e-7);
    }

    #[test]
    fn canonical_wigner_rotation() {
        let p = FourVector::momentum_from_velocity(1.0, [0.0, 0.0, 0.8]).unwrap();
        let lambda = boost_from_velocity([0.8, 0.0, 0.0]).unwrap();
        let wm = wigner_matrix(&lambda, p, 1.0).unwrap();
        assert!(wm.is_proper_orthochronous(1e-12));
        // W leaves the rest momentum invariant
        let k = FourVector::standard_momentum(1.0);
        assert!(wm.apply(k).max_abs_diff(k) < 1e-10);
        let w = Rotation3::from_matrix(wm.spatial_block());
        assert!((w.angle().cos() - 15.0 / 17.0).abs() < 1e-12);
        let axis = w.axis();
        assert!((axis[0]).abs() < 1e-12 && (axis[1] + 1.0).abs() < 1e-12 && axis[2].abs() < 1e-12);
        // opposite momentum rotates about +ŷ
        let pm = FourVector::momentum_from_velocity(1.0, [0.0, 0.0, -0.8]).unwrap();
        let wm = wigner_rotation(&lambda, pm, 1.0).unwrap();
        assert!((wm.axis()[1] - 1.0).abs() < 1e-12);
        let d = wigner_angle_perpendicular(0.8, 0.8).unwrap();
        assert!((d.cos() - 15.0 / 17.0).abs() < 1e-15);
        assert!((d - w.angle()).abs() < 1e-10);
    }

    #[test]
    fn perpendicular_angle_limits_and_monotonicity() {
        assert_eq!(wigner_angle_perpendicular(0.0, 0.7).unwrap(), 0.0);
        assert_eq!(wigner_angle_perpendicular(0.7, 0.0).unwrap(), 0.0);
        let near = wigner_angle_perpendicular(1.0 - 1e-9, 1.0 - 1e-9).unwrap();
        assert!((near - FRAC_PI_2).abs() < 1e-3);
        let grid: Vec<f64> = (0..40).map(|i| i as f64 / 40.0).collect();
        for &v in &grid {
            let mut prev = -1.0;
            for &w in &grid {
                let d = wigner_angle_perpendicular(v, w).unwrap();
                assert!(d >= prev && d < FRAC_PI_2);
                prev = d;
            }
        }
    }

    #[test]
    fn general_angle_matches_matrix_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let v = random_velocity(&mut rng, 0.95);
            let w = random_velocity(&mut rng, 0.95);
            let p = FourVector::momentum_from_velocity(1.0, v).unwrap();
            let lambda = boost_from_velocity(w).unwrap();
            let composed = (lambda * standard_boost(p, 1.0).unwrap()).is_symmetric(1e-9);
            let extracted = wigner_rotation(&lambda, p, 1.0).unwrap();
            let formula = wigner_angle_general(v, w).unwrap();
            assert!((extracted.angle() - formula).abs() < 1e-10, "{} vs {}", extracted.angle(), formula);
            assert!(!composed || extracted.angle() < 1e-6);
            // axis −v×w (observer velocity w)
            if let Some(n) = normalize(cross(v, w)) {
                if extracted.angle() > 1e-6 {
                    assert!(norm(add(extracted.axis(), n)) < 1e-8);
                }
            }
        }
        for v in [0.0, 0.3, 0.8, 0.99] {
            for w in [0.0, 0.3, 0.8, 0.99] {
                let a = wigner_angle_general([0.0, 0.0, v], [w, 0.0, 0.0]).unwrap();
                assert!((a - wigner_angle_perpendicular(v, w).unwrap()).abs() < 1e-10);
            }
        }
        assert_eq!(wigner_angle_general([0.3, 0.2, 0.1], [0.0; 3]).unwrap(), 0.0);
    }

    #[test]
    fn su2_lift_cases() {
        assert!(su2_from_rotation(&Rotation3::identity()).max_abs_diff(&SU2Matrix::identity()) < 1e-15);
        let delta: f64 = 0.7;
        let (s, c) = (0.5 * delta).sin_cos();
        let r = |x: f64| C64::new(x, 0.0);
        let u_plus = su2_from_rotation(&Rotation3::new([0.0, -1.0, 0.0], delta).unwrap());
        assert!(u_plus.max_abs_diff(&SU2Matrix([[r(c), r(s)], [r(-s), r(c)]])) < 1e-15);
        let u_minus = su2_from_rotation(&Rotation3::new([0.0, -1.0, 0.0], -delta).unwrap());
        assert!(u_minus.max_abs_diff(&SU2Matrix([[r(c), r(-s)], [r(s), r(c)]])) < 1e-15);
        let full_turn = su2_from_axis_angle([0.3, 0.1, 0.9], 2.0 * PI).unwrap();
        assert!(full_turn.max_abs_diff(&SU2Matrix([[-ONE, ZERO], [ZERO, -ONE]])) < 1e-15);
        assert!(full_turn.rotation().distance(&Rotation3::identity()) < 1e-12);
    }

    #[test]
    fn su2_conjugation_and_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let rot = Rotation3::new([rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)], rng.gen_range(0.0..PI)).unwrap();
            let u = su2_from_rotation(&rot);
            let um = u.to_cmatrix();
            assert!((&um.dagger() * &um).max_abs_diff(&CMatrix::identity(2)) < 1e-12);
            assert!((u.determinant() - ONE).norm() < 1e-12);
            let x = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            let lhs = &(&um * &pauli_dot(x)) * &um.dagger();
            assert!(lhs.max_abs_diff(&pauli_dot(rot.apply(x))) < 1e-12);
            assert!(u.rotation().distance(&rot) < 1e-12);
            assert!(Rotation3::from_matrix(rot.matrix()).distance(&rot) < 1e-12);
        }
    }

    #[test]
    fn rotation_extraction_near_pi() {
        let rot = Rotation3::new([1.0, 2.0, -0.5], PI - 1e-9).unwrap();
        let back = Rotation3::from_matrix(rot.matrix());
        assert!(back.distance(&rot) < 1e-8);
    }
}
