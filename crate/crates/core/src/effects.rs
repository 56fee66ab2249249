//! Quantum effects and the two sequential products on them.
//!
//! An [`Effect`] keeps its spectral decomposition next to the matrix, with
//! eigenvalues clamped into `[0, 1]` and everything at or below the support
//! cutoff snapped to exactly zero. Every product is evaluated from that one
//! decomposition:
//!
//! ```text
//! A ∘_t B = Σ_{j,k} g_j conj(g_k) P_j B P_k,    g_j = a_j^{1/2} · a_j^{it}
//! ```
//!
//! with `g_j = 0` on the kernel. At `t = 0` the phases are exactly one, so
//! the Lüders product `A^{1/2} B A^{1/2}` is the same computation.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{
    default_eps_supp, hermitian_eig, ComplexMatrix, ComplexScalar, HermitianMatrix, LinalgError,
    SpectralDecomposition,
};

/// Slack allowed outside `[0, 1]` when validating an effect's spectrum.
pub const EPS_EFFECT: f64 = 1e-10;
/// `‖P² − P‖_F` bound for projections.
pub const PROJECTION_IDEMPOTENCE_TOL: f64 = 1e-11;
/// Distance of a projection eigenvalue from `{0, 1}`.
pub const PROJECTION_SPECTRUM_TOL: f64 = 1e-10;
/// PSD and unit-trace slack for density operators.
pub const DENSITY_TOL: f64 = 1e-10;
/// Domain slack for the scalar `f_z`.
pub const F_Z_DOMAIN_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EffectError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("spectrum [{min}, {max}] is not contained in [0, 1]")]
    SpectrumOutOfRange { min: f64, max: f64 },
    #[error("not a projection: {0}")]
    NotProjection(String),
    #[error("not a density operator: {0}")]
    NotDensity(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// Self-adjoint `A` with `0 ≤ A ≤ I`.
#[derive(Clone, Debug, PartialEq)]
pub struct Effect {
    matrix: HermitianMatrix,
    spectrum: SpectralDecomposition,
}

impl Effect {
    pub fn new(matrix: HermitianMatrix) -> Result<Self, EffectError> {
        let raw = hermitian_eig(&matrix)?;
        let (min, max) = (raw.min_eigenvalue(), raw.max_eigenvalue());
        if min < -EPS_EFFECT || max > 1.0 + EPS_EFFECT {
            return Err(EffectError::SpectrumOutOfRange { min, max });
        }
        let spectrum = snap_spectrum(&raw);
        Ok(Self { matrix, spectrum })
    }

    /// Builds an effect without rejecting a slightly out-of-range spectrum;
    /// returns how far the spectrum strays outside `[0, 1]`. The stored
    /// decomposition is clamped as usual.
    pub(crate) fn assess(matrix: HermitianMatrix) -> Result<(Self, f64), EffectError> {
        let raw = hermitian_eig(&matrix)?;
        let excess = (-raw.min_eigenvalue()).max(0.0) + (raw.max_eigenvalue() - 1.0).max(0.0);
        let spectrum = snap_spectrum(&raw);
        Ok((Self { matrix, spectrum }, excess))
    }

    pub fn from_matrix(m: ComplexMatrix) -> Result<Self, EffectError> {
        Self::new(HermitianMatrix::new(m)?)
    }

    /// Effect with the given eigenvalues on the standard basis.
    pub fn from_diagonal(diag: &[f64]) -> Result<Self, EffectError> {
        Self::new(HermitianMatrix::from_real_diagonal(diag))
    }

    pub fn identity(n: usize) -> Self {
        Self::new(HermitianMatrix::identity(n)).expect("identity is an effect")
    }

    pub fn zero(n: usize) -> Self {
        Self::new(HermitianMatrix::zeros(n)).expect("zero is an effect")
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    /// Clamped, support-snapped spectral decomposition.
    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    /// `I − A`.
    pub fn complement(&self) -> Self {
        Self::new(HermitianMatrix::identity(self.dim()).sub(&self.matrix)).expect("complement of an effect is an effect")
    }

    /// `a · A` for `a ∈ [0, 1]`.
    pub fn scale(&self, a: f64) -> Result<Self, EffectError> {
        if !(0.0..=1.0).contains(&a) {
            return Err(EffectError::Domain(format!("scale factor {a} outside [0, 1]")));
        }
        Self::new(self.matrix.scale(a))
    }

    /// `A + B`, defined when `A + B ≤ I`.
    pub fn try_add(&self, other: &Self) -> Result<Self, EffectError> {
        check_dims(self.dim(), other.dim())?;
        Self::new(self.matrix.add(&other.matrix))
    }

    /// Projection onto the closure of the range.
    pub fn support_projection(&self) -> HermitianMatrix {
        self.spectrum.support_projection(0.0)
    }

    pub fn is_projection(&self) -> bool {
        Projection::new(self.matrix.clone()).is_ok()
    }
}

fn snap_spectrum(raw: &SpectralDecomposition) -> SpectralDecomposition {
    let clamped = raw.clamped(0.0, 1.0);
    let cutoff = default_eps_supp(raw.max_eigenvalue().abs().max(raw.min_eigenvalue().abs()));
    let values: Vec<f64> = clamped
        .eigenvalues()
        .iter()
        .map(|&l| if l <= cutoff { 0.0 } else { l })
        .collect();
    clamped.with_eigenvalues(values)
}

fn check_dims(left: usize, right: usize) -> Result<(), EffectError> {
    if left != right {
        return Err(EffectError::DimensionMismatch { left, right });
    }
    Ok(())
}

/// Sharp effect: `P = P† = P²`.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    effect: Effect,
}

impl Projection {
    pub fn new(matrix: HermitianMatrix) -> Result<Self, EffectError> {
        let idem = matrix.matmul(&matrix).frobenius_distance(&matrix);
        if idem > PROJECTION_IDEMPOTENCE_TOL {
            return Err(EffectError::NotProjection(format!("‖P² − P‖_F = {idem:e}")));
        }
        let effect = Effect::new(matrix)?;
        let raw = hermitian_eig(effect.matrix())?;
        if let Some(l) = raw
            .eigenvalues()
            .iter()
            .find(|&&l| l.abs() > PROJECTION_SPECTRUM_TOL && (l - 1.0).abs() > PROJECTION_SPECTRUM_TOL)
        {
            return Err(EffectError::NotProjection(format!("eigenvalue {l} not in {{0, 1}}")));
        }
        Ok(Self { effect })
    }

    pub fn as_effect(&self) -> &Effect {
        &self.effect
    }

    pub fn into_effect(self) -> Effect {
        self.effect
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        self.effect.matrix()
    }
}

/// Positive semidefinite, unit-trace state.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: HermitianMatrix,
}

impl DensityOperator {
    pub fn new(matrix: HermitianMatrix) -> Result<Self, EffectError> {
        let trace = matrix.real_trace();
        if (trace - 1.0).abs() > DENSITY_TOL {
            return Err(EffectError::NotDensity(format!("trace {trace} ≠ 1")));
        }
        let min = hermitian_eig(&matrix)?.min_eigenvalue();
        if min < -DENSITY_TOL {
            return Err(EffectError::NotDensity(format!("minimum eigenvalue {min:e} < 0")));
        }
        Ok(Self { matrix })
    }

    /// `I / n`.
    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            matrix: HermitianMatrix::identity(n).scale(1.0 / n as f64),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }
}

/// Real phase parameter `t` of `A^{1/2} A^{it} B A^{-it} A^{1/2}`.
///
/// `t = 0` is the Lüders product and `t = 1` the phased product with
/// `A^{±i}`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct PhaseParameter(f64);

impl PhaseParameter {
    pub const LUDERS: Self = Self(0.0);
    pub const UNIT: Self = Self(1.0);

    pub fn new(t: f64) -> Result<Self, EffectError> {
        if !t.is_finite() {
            return Err(EffectError::Domain(format!("phase parameter {t} is not finite")));
        }
        Ok(Self(t))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for PhaseParameter {
    type Error = EffectError;

    fn try_from(t: f64) -> Result<Self, EffectError> {
        Self::new(t)
    }
}

/// `f_z(u) = exp(z ln u)` on `(0, 1]`, `f_z(0) = 0`.
pub fn f_z(z: ComplexScalar, u: f64) -> Result<ComplexScalar, EffectError> {
    if !(-F_Z_DOMAIN_TOL..=1.0 + F_Z_DOMAIN_TOL).contains(&u) {
        return Err(EffectError::Domain(format!("f_z evaluated at {u} outside [0, 1]")));
    }
    Ok(f_z_unchecked(z, u.clamp(0.0, 1.0)))
}

#[inline]
fn f_z_unchecked(z: ComplexScalar, u: f64) -> ComplexScalar {
    if u <= 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        (z * u.ln()).exp()
    }
}

/// `A^{it} = f_{it}(A)`; unitary on the support of `A` and zero on its kernel.
pub fn effect_power_it(a: &Effect, t: f64) -> ComplexMatrix {
    let z = Complex64::new(0.0, t);
    a.spectrum().apply(|l| f_z_unchecked(z, l))
}

/// Positive square root of an effect.
pub fn sqrt_effect(a: &Effect) -> Effect {
    let s = a.spectrum();
    let roots: Vec<f64> = s.eigenvalues().iter().map(|&l| l.sqrt()).collect();
    let spectrum = s.with_eigenvalues(roots);
    let matrix = HermitianMatrix::new(spectrum.reconstruct()).expect("finite reconstruction");
    Effect { matrix, spectrum }
}

/// Per-eigenvalue factor `g_j = a_j^{1/2} · f_{it}(a_j)`.
fn sandwich_factors(s: &SpectralDecomposition, t: f64) -> Vec<ComplexScalar> {
    let z = Complex64::new(0.0, t);
    s.eigenvalues()
        .iter()
        .map(|&l| f_z_unchecked(z, l) * l.sqrt())
        .collect()
}

/// `A^{1/2} A^{it} M A^{-it} A^{1/2}` for an arbitrary square `M`, computed
/// entrywise in the eigenbasis of `A`.
pub(crate) fn phased_sandwich(a: &Effect, m: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let s = a.spectrum();
    let g = sandwich_factors(s, t);
    let n = g.len();
    let weights = ComplexMatrix::from_fn(n, n, |j, k| g[j] * g[k].conj());
    s.from_eigenbasis(&s.to_eigenbasis(m).hadamard(&weights))
}

/// Generalized Lüders product `A^{1/2} B A^{1/2}`.
pub fn luders_product(a: &Effect, b: &Effect) -> Result<Effect, EffectError> {
    phased_product(a, b, PhaseParameter::LUDERS)
}

/// Phased sequential product `A^{1/2} A^{it} B A^{-it} A^{1/2}`.
pub fn phased_product(a: &Effect, b: &Effect, t: PhaseParameter) -> Result<Effect, EffectError> {
    check_dims(a.dim(), b.dim())?;
    let out = phased_sandwich(a, b.matrix(), t.value());
    Effect::new(HermitianMatrix::new(out)?)
}

/// Linear extension of the phased product to a self-adjoint second operand.
pub fn product_on_selfadjoint(b: &Effect, s: &HermitianMatrix, t: PhaseParameter) -> Result<HermitianMatrix, EffectError> {
    check_dims(b.dim(), s.dim())?;
    Ok(HermitianMatrix::new(phased_sandwich(b, s, t.value()))?)
}

/// Closed form of the phased product for `A = diag(a², b²)` and
/// `B = [[x, y], [ȳ, z]]` on `C²`.
///
/// For `a, b > 0` the off-diagonal entry picks up the phase
/// `θ = t (ln a² − ln b²)`; if either of `a`, `b` is exactly zero the
/// corresponding row and column vanish.
pub fn closed_form_2d(a: f64, b: f64, x: f64, y: ComplexScalar, z: f64, t: f64) -> Result<HermitianMatrix, EffectError> {
    for (name, v) in [("a", a), ("b", b)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(EffectError::Domain(format!("{name} = {v} outside [0, 1]")));
        }
    }
    if !t.is_finite() {
        return Err(EffectError::Domain(format!("t = {t} is not finite")));
    }
    let zero = Complex64::new(0.0, 0.0);
    let bm = ComplexMatrix::from_vec(2, 2, vec![Complex64::new(x, 0.0), y, y.conj(), Complex64::new(z, 0.0)])?;
    Effect::from_matrix(bm)?;

    let (a2, b2) = (a * a, b * b);
    let entries = if a > 0.0 && b > 0.0 {
        let theta = t * (a2.ln() - b2.ln());
        let off = Complex64::from_polar(a * b, theta) * y;
        vec![Complex64::new(a2 * x, 0.0), off, off.conj(), Complex64::new(b2 * z, 0.0)]
    } else if a > 0.0 {
        vec![Complex64::new(a2 * x, 0.0), zero, zero, zero]
    } else if b > 0.0 {
        vec![zero, zero, zero, Complex64::new(b2 * z, 0.0)]
    } else {
        vec![zero; 4]
    };
    Ok(HermitianMatrix::new(ComplexMatrix::from_vec(2, 2, entries)?)?)
}
