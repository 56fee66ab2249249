//! Recovering spectral projectors of `B` as polynomials in `B^{1/2} B^{-i}`.
//!
//! `B^{1/2} B^{-i} = Σ_k w_k F_k` with nodes `w_k = b_k^{1/2} f_{-i}(b_k)`.
//! Distinct eigenvalues give distinct nodes (`|w_k| = b_k^{1/2}`), so the
//! Lagrange basis polynomial `G_k(z) = Π_{j≠k} (z − w_j) / (w_k − w_j)`
//! evaluated at that matrix returns `F_k`.

use num_complex::Complex64;

use super::AxiomError;
use crate::effects::{f_z, Effect};
use crate::linalg::{ComplexMatrix, ComplexScalar, HermitianMatrix};

/// Eigenvalues closer than this are one cluster.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Nodes closer than this make the interpolation ill-posed.
pub const NODE_SEPARATION_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralCluster {
    /// Mean of the clustered eigenvalues.
    pub value: f64,
    pub multiplicity: usize,
}

/// Distinct eigenvalues of `b` in ascending order.
pub fn spectral_clusters(b: &Effect) -> Vec<SpectralCluster> {
    let mut clusters: Vec<(f64, usize, f64)> = Vec::new();
    for &l in b.spectrum().eigenvalues() {
        match clusters.last_mut() {
            Some((sum, count, last)) if l - *last <= CLUSTER_TOL => {
                *sum += l;
                *count += 1;
                *last = l;
            }
            _ => clusters.push((l, 1, l)),
        }
    }
    clusters
        .into_iter()
        .map(|(sum, count, _)| SpectralCluster {
            value: sum / count as f64,
            multiplicity: count,
        })
        .collect()
}

fn node(b: f64) -> ComplexScalar {
    f_z(Complex64::new(0.0, -1.0), b).expect("clamped spectrum lies in [0, 1]") * b.sqrt()
}

/// `w_k = b_k^{1/2} f_{-i}(b_k)` for each cluster.
pub fn interpolation_nodes(b: &Effect) -> Vec<ComplexScalar> {
    spectral_clusters(b).iter().map(|c| node(c.value)).collect()
}

/// `G_k(B^{1/2} B^{-i})`, the projector onto the `k`-th cluster (ascending).
pub fn projector_interpolation(b: &Effect, k: usize) -> Result<HermitianMatrix, AxiomError> {
    let nodes = interpolation_nodes(b);
    if k >= nodes.len() {
        return Err(AxiomError::ClusterIndex {
            index: k,
            clusters: nodes.len(),
        });
    }
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if (nodes[i] - nodes[j]).norm() < NODE_SEPARATION_TOL {
                return Err(AxiomError::ClusteredSpectrum {
                    left: i,
                    right: j,
                    tolerance: NODE_SEPARATION_TOL,
                });
            }
        }
    }

    let n = b.dim();
    let z = b.spectrum().apply(node);
    let id = ComplexMatrix::identity(n);
    let mut acc = id.clone();
    for (j, &w) in nodes.iter().enumerate() {
        if j == k {
            continue;
        }
        let factor = (&z - &id.scale(w)).scale((nodes[k] - w).inv());
        acc = acc.matmul(&factor);
    }
    HermitianMatrix::new(acc).map_err(|e| AxiomError::Effect(e.into()))
}
