//! Kraus-form quantum operations built from effects.
//!
//! Choi matrices use the column-stacking convention:
//! `J = Σ_{j,k} E_{jk} ⊗ Φ(E_{jk})`, i.e. entry `(j·d + a, k·d + b)` is
//! `Φ(E_{jk})[a, b]`, equivalently `J = Σ_K vec(K) vec(K)†` with `vec`
//! stacking columns. The output factor is the second one.

use num_complex::Complex64;
use thiserror::Error;

use crate::effects::{f_z, DensityOperator, Effect, EffectError};
use crate::linalg::{hermitian_eig, ComplexMatrix, HermitianMatrix, LinalgError};

/// `‖Σ K†K − I‖_F` bound for a trace-preserving channel.
pub const TRACE_PRESERVING_TOL: f64 = 1e-10;
/// `‖Σ A_j − I‖_F` bound for an effect decomposition.
pub const DECOMPOSITION_TOL: f64 = 1e-8;
/// Minimum Choi eigenvalue still counted as positive.
pub const CHOI_PSD_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("a channel needs at least one Kraus operator")]
    Empty,
    #[error("Kraus operator {index} is {rows}x{cols}, expected {dim}x{dim}")]
    Shape { index: usize, rows: usize, cols: usize, dim: usize },
    #[error("dimension mismatch: channel acts on {channel}, operand has {operand}")]
    DimensionMismatch { channel: usize, operand: usize },
    #[error("Σ K†K deviates from I by {defect:e}")]
    NotTracePreserving { defect: f64 },
    #[error("Σ K†K exceeds I by {excess:e}")]
    TraceIncreasing { excess: f64 },
    #[error("effects sum to I only within {defect:e} (tolerance {tolerance:e})")]
    Decomposition { defect: f64, tolerance: f64 },
    #[error(transparent)]
    Effect(#[from] EffectError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumChannel {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
    label: String,
    trace_preserving: bool,
}

impl QuantumChannel {
    /// Trace-preserving channel; rejects `‖Σ K†K − I‖_F > 1e-10`.
    pub fn new(kraus: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self, ChannelError> {
        Self::trace_preserving_within(kraus, label, TRACE_PRESERVING_TOL)
    }

    fn trace_preserving_within(kraus: Vec<ComplexMatrix>, label: impl Into<String>, tol: f64) -> Result<Self, ChannelError> {
        let dim = check_shapes(&kraus)?;
        let defect = kraus_gram(&kraus, dim).frobenius_distance(&ComplexMatrix::identity(dim));
        if !(defect <= tol) {
            return Err(ChannelError::NotTracePreserving { defect });
        }
        Ok(Self {
            dim,
            kraus,
            label: label.into(),
            trace_preserving: true,
        })
    }

    /// Trace-non-increasing operation: requires `Σ K†K ≤ I + 1e-10`.
    pub fn trace_nonincreasing(kraus: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self, ChannelError> {
        let dim = check_shapes(&kraus)?;
        let gram = kraus_gram(&kraus, dim);
        let excess = hermitian_eig(&HermitianMatrix::new(gram.clone())?)?.max_eigenvalue() - 1.0;
        if excess > TRACE_PRESERVING_TOL {
            return Err(ChannelError::TraceIncreasing { excess });
        }
        let trace_preserving = gram.frobenius_distance(&ComplexMatrix::identity(dim)) <= TRACE_PRESERVING_TOL;
        Ok(Self {
            dim,
            kraus,
            label: label.into(),
            trace_preserving,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            kraus: vec![ComplexMatrix::identity(dim)],
            label: "identity".into(),
            trace_preserving: true,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_trace_preserving(&self) -> bool {
        self.trace_preserving
    }

    /// `Σ K†K`.
    pub fn kraus_gram(&self) -> ComplexMatrix {
        kraus_gram(&self.kraus, self.dim)
    }

    /// `ρ ↦ Σ K ρ K†` on any Hermitian operand.
    pub fn apply(&self, rho: &HermitianMatrix) -> Result<HermitianMatrix, ChannelError> {
        self.check_operand(rho.dim())?;
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus {
            acc = &acc + &k.matmul(rho).matmul(&k.adjoint());
        }
        Ok(HermitianMatrix::new(acc)?)
    }

    /// Heisenberg-picture dual `X ↦ Σ K† X K`.
    pub fn dual(&self, x: &HermitianMatrix) -> Result<HermitianMatrix, ChannelError> {
        self.check_operand(x.dim())?;
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus {
            acc = &acc + &k.adjoint().matmul(x).matmul(k);
        }
        Ok(HermitianMatrix::new(acc)?)
    }

    /// First `self`, then `next`: Kraus set `{K₂ K₁}`.
    pub fn then(&self, next: &QuantumChannel) -> Result<QuantumChannel, ChannelError> {
        if self.dim != next.dim {
            return Err(ChannelError::DimensionMismatch {
                channel: self.dim,
                operand: next.dim,
            });
        }
        let kraus = next
            .kraus
            .iter()
            .flat_map(|k2| self.kraus.iter().map(move |k1| k2.matmul(k1)))
            .collect();
        Ok(QuantumChannel {
            dim: self.dim,
            kraus,
            label: format!("{} then {}", self.label, next.label),
            trace_preserving: self.trace_preserving && next.trace_preserving,
        })
    }

    fn check_operand(&self, operand: usize) -> Result<(), ChannelError> {
        if operand != self.dim {
            return Err(ChannelError::DimensionMismatch {
                channel: self.dim,
                operand,
            });
        }
        Ok(())
    }
}

fn check_shapes(kraus: &[ComplexMatrix]) -> Result<usize, ChannelError> {
    let first = kraus.first().ok_or(ChannelError::Empty)?;
    let dim = first.rows();
    for (index, k) in kraus.iter().enumerate() {
        if k.rows() != dim || k.cols() != dim {
            return Err(ChannelError::Shape {
                index,
                rows: k.rows(),
                cols: k.cols(),
                dim,
            });
        }
    }
    Ok(dim)
}

fn kraus_gram(kraus: &[ComplexMatrix], dim: usize) -> ComplexMatrix {
    kraus
        .iter()
        .fold(ComplexMatrix::zeros(dim, dim), |acc, k| &acc + &k.adjoint().matmul(k))
}

/// Effects summing to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct EffectDecomposition {
    effects: Vec<Effect>,
}

impl EffectDecomposition {
    pub fn new(effects: Vec<Effect>) -> Result<Self, ChannelError> {
        let first = effects.first().ok_or(ChannelError::Empty)?;
        let dim = first.dim();
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for e in &effects {
            if e.dim() != dim {
                return Err(ChannelError::DimensionMismatch {
                    channel: dim,
                    operand: e.dim(),
                });
            }
            sum = &sum + e.matrix().as_matrix();
        }
        let defect = sum.frobenius_distance(&ComplexMatrix::identity(dim));
        if !(defect <= DECOMPOSITION_TOL) {
            return Err(ChannelError::Decomposition {
                defect,
                tolerance: DECOMPOSITION_TOL,
            });
        }
        Ok(Self { effects })
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn dim(&self) -> usize {
        self.effects[0].dim()
    }
}

/// Lüders operation `T ↦ B^{1/2} T B^{1/2}`; trace-non-increasing.
pub fn luders_channel(b: &Effect) -> QuantumChannel {
    let root = b.spectrum().apply(|l| Complex64::new(l.sqrt(), 0.0));
    QuantumChannel::trace_nonincreasing(vec![root], "luders").expect("B^{1/2} of an effect is a contraction")
}

/// `ρ ↦ Σ_j A_j^{1/2} A_j^{it} ρ A_j^{-it} A_j^{1/2}`.
///
/// `Σ K_j†K_j = Σ A_j`, so the channel is trace preserving to the same
/// accuracy as the decomposition.
pub fn phased_channel(d: &EffectDecomposition, t: f64) -> Result<QuantumChannel, ChannelError> {
    if !t.is_finite() {
        return Err(EffectError::Domain(format!("t = {t} is not finite")).into());
    }
    let z = Complex64::new(0.0, t);
    let kraus = d
        .effects()
        .iter()
        .map(|a| a.spectrum().apply(|l| f_z(z, l).expect("clamped spectrum") * l.sqrt()))
        .collect();
    QuantumChannel::trace_preserving_within(kraus, format!("phased(t={t})"), DECOMPOSITION_TOL)
}

/// Applies a trace-preserving channel to a state.
pub fn apply_channel(c: &QuantumChannel, rho: &DensityOperator) -> Result<DensityOperator, ChannelError> {
    if !c.is_trace_preserving() {
        let defect = c.kraus_gram().frobenius_distance(&ComplexMatrix::identity(c.dim()));
        return Err(ChannelError::NotTracePreserving { defect });
    }
    Ok(DensityOperator::new(c.apply(rho.matrix())?)?)
}

pub fn dual_apply(c: &QuantumChannel, x: &HermitianMatrix) -> Result<HermitianMatrix, ChannelError> {
    c.dual(x)
}

/// Choi matrix in the column-stacking convention (see module docs).
pub fn choi_matrix(c: &QuantumChannel) -> HermitianMatrix {
    let d = c.dim();
    let mut acc = ComplexMatrix::zeros(d * d, d * d);
    for k in c.kraus() {
        let v: Vec<Complex64> = (0..d * d).map(|idx| k[(idx % d, idx / d)]).collect();
        acc = &acc + &ComplexMatrix::outer(&v, &v);
    }
    HermitianMatrix::new(acc).expect("finite Kraus operators")
}

/// Traces out the output factor of a Choi matrix; `I` for trace-preserving
/// channels.
pub fn partial_trace_output(choi: &ComplexMatrix, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |j, k| (0..dim).map(|a| choi[(j * dim + a, k * dim + a)]).sum())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChoiCertificate {
    pub min_eigenvalue: f64,
    /// `‖Tr_out J − I‖_F`.
    pub trace_defect: f64,
}

impl ChoiCertificate {
    pub fn completely_positive(&self) -> bool {
        self.min_eigenvalue >= -CHOI_PSD_TOL
    }

    pub fn trace_preserving(&self) -> bool {
        self.trace_defect <= CHOI_PSD_TOL
    }
}

pub fn choi_certificate(c: &QuantumChannel) -> Result<ChoiCertificate, ChannelError> {
    let choi = choi_matrix(c);
    let min_eigenvalue = hermitian_eig(&choi)?.min_eigenvalue();
    let trace_defect = partial_trace_output(&choi, c.dim()).frobenius_distance(&ComplexMatrix::identity(c.dim()));
    Ok(ChoiCertificate {
        min_eigenvalue,
        trace_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effects::luders_product;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn projection() -> Effect {
        Effect::from_matrix(ComplexMatrix::from_vec(2, 2, vec![c(0.5, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(0.5, 0.0)]).unwrap()).unwrap()
    }

    fn sample_rho() -> DensityOperator {
        DensityOperator::new(
            HermitianMatrix::new(ComplexMatrix::from_vec(2, 2, vec![c(0.7, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.0)]).unwrap())
                .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn luders_channel_examples() {
        let id = luders_channel(&Effect::identity(2));
        assert!(id.is_trace_preserving());
        let rho = sample_rho();
        assert!(id.apply(rho.matrix()).unwrap().frobenius_distance(rho.matrix()) < 1e-15);

        let e = projection();
        let out = luders_channel(&e).apply(rho.matrix()).unwrap();
        let expected = rho.matrix().matmul(e.matrix()).trace().re;
        assert!((out.real_trace() - expected).abs() < 1e-14);
        assert!(out.real_trace() <= 1.0);

        let b = Effect::from_diagonal(&[0.25, 0.81]).unwrap();
        let ch = luders_channel(&b);
        assert!(!ch.is_trace_preserving());
        let out = ch.apply(DensityOperator::maximally_mixed(2).matrix()).unwrap();
        assert!((out.real_trace() - 0.53).abs() < 1e-15);
        assert!(apply_channel(&ch, &DensityOperator::maximally_mixed(2)).is_err());
    }

    #[test]
    fn phased_channel_examples() {
        let d = EffectDecomposition::new(vec![Effect::identity(2)]).unwrap();
        let ch = phased_channel(&d, 0.7).unwrap();
        let rho = sample_rho();
        assert!(apply_channel(&ch, &rho).unwrap().matrix().frobenius_distance(rho.matrix()) < 1e-15);

        let e = projection();
        let d = EffectDecomposition::new(vec![e.clone(), e.complement()]).unwrap();
        let ch = phased_channel(&d, 2.0).unwrap();
        let f = e.complement();
        let expected = &e.matrix().matmul(rho.matrix()).matmul(e.matrix()) + &f.matrix().matmul(rho.matrix()).matmul(f.matrix());
        assert!(ch.apply(rho.matrix()).unwrap().frobenius_distance(&expected) < 1e-14);

        let a = Effect::from_diagonal(&[0.81, 0.25]).unwrap();
        let d = EffectDecomposition::new(vec![a.clone(), a.complement()]).unwrap();
        let ch = phased_channel(&d, 1.0).unwrap();
        let mut gram = ComplexMatrix::zeros(2, 2);
        for k in ch.kraus() {
            gram = &gram + &k.adjoint().matmul(k);
        }
        assert!(gram.frobenius_distance(&ComplexMatrix::identity(2)) < 1e-11);
    }

    #[test]
    fn diagonal_state_survives_projective_channel() {
        let d = EffectDecomposition::new(vec![Effect::from_diagonal(&[1.0, 0.0]).unwrap(), Effect::from_diagonal(&[0.0, 1.0]).unwrap()]).unwrap();
        let ch = phased_channel(&d, 1.0).unwrap();
        let rho = DensityOperator::new(HermitianMatrix::from_real_diagonal(&[0.3, 0.7])).unwrap();
        assert_eq!(apply_channel(&ch, &rho).unwrap(), rho);
    }

    #[test]
    fn dual_examples() {
        let x = sample_rho().matrix().scale(3.0);
        assert_eq!(dual_apply(&QuantumChannel::identity(2), &x).unwrap(), x);

        let b = Effect::from_diagonal(&[0.25, 0.81]).unwrap();
        let ch = luders_channel(&b);
        assert!(dual_apply(&ch, &HermitianMatrix::identity(2)).unwrap().frobenius_distance(b.matrix()) < 1e-15);

        let cm = projection();
        let seq = luders_product(&b, &cm).unwrap();
        assert!(dual_apply(&ch, cm.matrix()).unwrap().frobenius_distance(seq.matrix()) < 1e-15);
    }

    #[test]
    fn choi_examples() {
        let j = choi_matrix(&QuantumChannel::identity(2));
        let s = hermitian_eig(&j).unwrap();
        assert!((s.max_eigenvalue() - 2.0).abs() < 1e-14);
        assert!(s.eigenvalues()[..3].iter().all(|l| l.abs() < 1e-14));

        let e = projection();
        let d = EffectDecomposition::new(vec![e.clone(), e.complement()]).unwrap();
        let j = choi_matrix(&phased_channel(&d, 1.0).unwrap());
        let s = hermitian_eig(&j).unwrap();
        let rank = s.eigenvalues().iter().filter(|&&l| l > 1e-10).count();
        assert_eq!(rank, 2);
        assert!(s.min_eigenvalue() >= -1e-12);
        assert!(partial_trace_output(&j, 2).frobenius_distance(&ComplexMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn bad_decomposition_rejected() {
        let a = Effect::from_diagonal(&[0.5, 0.5]).unwrap();
        assert!(matches!(
            EffectDecomposition::new(vec![a.clone(), a.scale(0.9).unwrap()]),
            Err(ChannelError::Decomposition { .. })
        ));
        assert!(matches!(EffectDecomposition::new(vec![]), Err(ChannelError::Empty)));
    }

    #[test]
    fn new_rejects_non_trace_preserving() {
        let k = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(matches!(QuantumChannel::new(vec![k.clone()], "half"), Err(ChannelError::NotTracePreserving { .. })));
        assert!(QuantumChannel::trace_nonincreasing(vec![k], "half").is_ok());
        let big = ComplexMatrix::identity(2).scale_real(1.1);
        assert!(matches!(QuantumChannel::trace_nonincreasing(vec![big], "big"), Err(ChannelError::TraceIncreasing { .. })));
    }
}
