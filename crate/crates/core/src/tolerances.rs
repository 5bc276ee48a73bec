//! Numerical tolerances shared by the library, its tests and the acceptance suite.

/// Residual bound for eigen-decompositions (`H v = λ v`, orthonormality, reconstruction).
pub const EPS_EIG: f64 = 1e-10;

/// Maximum `|A - A†|` entry for a matrix to count as Hermitian.
pub const EPS_HERM: f64 = 1e-12;

/// Agreement between a numeric result and its independent oracle.
pub const EPS_ORACLE: f64 = 1e-9;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this.
pub const JACOBI_OFF_DIAG: f64 = 1e-13;

/// Hard cap on cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Normalisation tolerance for pure states and unit-trace density matrices.
pub const EPS_NORM: f64 = 1e-12;

/// Density-matrix eigenvalues in `[-EPS_PSD, 0)` are treated as round-off and clipped to zero.
pub const EPS_PSD: f64 = 1e-10;

/// Lorentz-group membership checks (`LᵀηL = η`, `det L = 1`).
pub const EPS_LORENTZ: f64 = 1e-12;

/// Mass-shell check `|p·p - m²| ≤ EPS_MASS_SHELL · max(1, m²)`.
pub const EPS_MASS_SHELL: f64 = 1e-9;

/// Rotations with a smaller angle are returned as the identity (axis ẑ).
pub const SMALL_ANGLE: f64 = 1e-9;

/// Schmidt weights above this count towards the Schmidt rank.
pub const EPS_SCHMIDT: f64 = 1e-12;
