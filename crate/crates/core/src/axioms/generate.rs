//! Random effects with the structure each axiom hypothesis needs.
//!
//! Every generator draws a Haar-distributed unitary `V` (Gram–Schmidt on a
//! complex Gaussian matrix) and places a chosen spectrum in that basis, so
//! hypotheses like `AB = BA` hold up to rounding rather than by luck.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::effects::{DensityOperator, Effect};
use crate::linalg::{ComplexMatrix, ComplexScalar, HermitianMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Generic,
    Projection,
    CommutingPair,
    KernelDisjointPair,
    NearBoundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EffectGenSpec {
    pub dim: usize,
    pub kind: GenKind,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generated {
    Single(Effect),
    Pair(Effect, Effect),
}

/// Spectrum values used by [`GenKind::NearBoundary`].
pub const NEAR_BOUNDARY_VALUES: [f64; 4] = [0.0, 1e-12, 1.0 - 1e-12, 1.0];

pub fn gen_effect(spec: EffectGenSpec) -> Generated {
    assert!(spec.dim >= 1, "dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.dim;
    match spec.kind {
        GenKind::Generic => Generated::Single(random_effect(&mut rng, n)),
        GenKind::Projection => Generated::Single(random_projection(&mut rng, n)),
        GenKind::NearBoundary => Generated::Single(near_boundary_effect(&mut rng, n)),
        GenKind::CommutingPair => {
            let (a, b) = commuting_pair(&mut rng, n);
            Generated::Pair(a, b)
        }
        GenKind::KernelDisjointPair => {
            let (a, b) = kernel_disjoint_pair(&mut rng, n);
            Generated::Pair(a, b)
        }
    }
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> ComplexScalar {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    ComplexScalar::new(re, im)
}

/// Haar-distributed unitary: two passes of modified Gram–Schmidt over the
/// columns of a complex Ginibre matrix.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<ComplexScalar>> = (0..n).map(|_| (0..n).map(|_| gaussian(rng)).collect()).collect();
    for k in 0..n {
        for _ in 0..2 {
            for j in 0..k {
                let (done, rest) = cols.split_at_mut(k);
                let q = &done[j];
                let proj: ComplexScalar = q.iter().zip(rest[0].iter()).map(|(a, b)| a.conj() * b).sum();
                for (x, qi) in rest[0].iter_mut().zip(q) {
                    *x -= proj * qi;
                }
            }
        }
        let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[k].iter_mut() {
            *x /= norm;
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// `V diag(λ) V†` as a validated effect.
pub fn effect_in_basis(v: &ComplexMatrix, spectrum: &[f64]) -> Effect {
    let d = ComplexMatrix::from_real_diagonal(spectrum);
    let m = v.matmul(&d).matmul(&v.adjoint());
    Effect::from_matrix(m).expect("unitary conjugate of a [0,1] spectrum is an effect")
}

pub fn uniform_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random::<f64>()).collect()
}

pub fn random_effect<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Effect {
    let v = haar_unitary(rng, n);
    let spectrum = uniform_spectrum(rng, n);
    effect_in_basis(&v, &spectrum)
}

/// Rank drawn so that both eigenvalues 0 and 1 appear when `n ≥ 2`.
pub fn random_projection<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Effect {
    let v = haar_unitary(rng, n);
    let rank = if n >= 2 { rng.random_range(1..n) } else { rng.random_range(0..=1) };
    let spectrum: Vec<f64> = (0..n).map(|i| if i < rank { 1.0 } else { 0.0 }).collect();
    effect_in_basis(&v, &spectrum)
}

pub fn near_boundary_effect<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Effect {
    let v = haar_unitary(rng, n);
    let zero_at = rng.random_range(0..n);
    let spectrum: Vec<f64> = (0..n)
        .map(|i| {
            if i == zero_at {
                0.0
            } else {
                NEAR_BOUNDARY_VALUES[rng.random_range(0..NEAR_BOUNDARY_VALUES.len())]
            }
        })
        .collect();
    effect_in_basis(&v, &spectrum)
}

/// Two effects diagonal in one shared random basis.
pub fn commuting_pair<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (Effect, Effect) {
    let v = haar_unitary(rng, n);
    let a = uniform_spectrum(rng, n);
    let b = uniform_spectrum(rng, n);
    (effect_in_basis(&v, &a), effect_in_basis(&v, &b))
}

/// Three effects sharing one basis. With `complementary` the second
/// spectrum is drawn below `1 − a_k`, so that `A + B ≤ I`.
pub fn commuting_triple<R: Rng + ?Sized>(rng: &mut R, n: usize, complementary: bool) -> (Effect, Effect, Effect) {
    let v = haar_unitary(rng, n);
    let a = uniform_spectrum(rng, n);
    let b: Vec<f64> = if complementary {
        a.iter().map(|&x| rng.random::<f64>() * (1.0 - x)).collect()
    } else {
        uniform_spectrum(rng, n)
    };
    let c = uniform_spectrum(rng, n);
    (effect_in_basis(&v, &a), effect_in_basis(&v, &b), effect_in_basis(&v, &c))
}

/// `A` supported on the first `k` basis vectors, `B` on the rest, so that
/// `A^{1/2} B = 0`. For `n = 1` the second effect is zero.
pub fn kernel_disjoint_pair<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (Effect, Effect) {
    let v = haar_unitary(rng, n);
    let k = if n >= 2 { rng.random_range(1..n) } else { 1 };
    let a: Vec<f64> = (0..n).map(|i| if i < k { rng.random::<f64>() } else { 0.0 }).collect();
    let b: Vec<f64> = (0..n).map(|i| if i >= k { rng.random::<f64>() } else { 0.0 }).collect();
    (effect_in_basis(&v, &a), effect_in_basis(&v, &b))
}

/// Hermitian matrix with Gaussian entries scaled by `scale`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> HermitianMatrix {
    let m = ComplexMatrix::from_fn(n, n, |_, _| gaussian(rng) * scale);
    HermitianMatrix::new(m).expect("finite Gaussian entries")
}

/// `G G† / tr(G G†)` for a complex Ginibre `G`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DensityOperator {
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let gg = g.matmul(&g.adjoint());
    let tr = gg.trace().re;
    DensityOperator::new(HermitianMatrix::new(gg.scale_real(1.0 / tr)).expect("finite")).expect("Ginibre state is a density operator")
}
