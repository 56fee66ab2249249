#![allow(dead_code)]

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use seqprod::axioms::generate::random_effect;
use seqprod::channels::EffectDecomposition;
use seqprod::linalg::{hermitian_eig, HermitianMatrix};
use seqprod::Effect;

/// `S^{-1/2} G_i S^{-1/2}` with `S = Σ G_i`.
pub fn random_decomposition(rng: &mut ChaCha8Rng, n: usize, m: usize) -> EffectDecomposition {
    let parts: Vec<Effect> = (0..m).map(|_| random_effect(rng, n)).collect();
    let sum = parts.iter().fold(HermitianMatrix::zeros(n), |acc, e| acc.add(e.matrix()));
    let inv_root = hermitian_eig(&sum).unwrap().apply(|l| Complex64::new(1.0 / l.sqrt(), 0.0));
    let effects = parts
        .iter()
        .map(|g| Effect::from_matrix(inv_root.matmul(g.matrix()).matmul(&inv_root)).unwrap())
        .collect();
    EffectDecomposition::new(effects).unwrap()
}
