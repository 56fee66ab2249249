mod common;

use common::random_decomposition;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqprod::axioms::generate::{near_boundary_effect, random_density, random_effect, random_hermitian, random_projection};
use seqprod::channels::{choi_certificate, luders_channel};
use seqprod::document::{to_json_string, MatrixDocument};
use seqprod::linalg::{operator_norm, ComplexMatrix};
use seqprod::{effect_power_it, luders_product, phased_product, product_on_selfadjoint, Effect, PhaseParameter};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn phase(t: f64) -> PhaseParameter {
    PhaseParameter::new(t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn power_it_is_a_group_on_the_support(seed: u64, n in 1usize..6, s in -4.0f64..4.0, t in -4.0f64..4.0, edge: bool) {
        let mut r = rng(seed);
        let a = if edge { near_boundary_effect(&mut r, n) } else { random_effect(&mut r, n) };
        let lhs = effect_power_it(&a, s).matmul(&effect_power_it(&a, t));
        prop_assert!(lhs.frobenius_distance(&effect_power_it(&a, s + t)) < 1e-10);
        prop_assert!(effect_power_it(&a, 0.0).frobenius_distance(&a.support_projection()) < 1e-12);
    }

    #[test]
    fn product_norm_is_submultiplicative(seed: u64, n in 1usize..6, t in -3.0f64..3.0) {
        let mut r = rng(seed);
        let a = random_effect(&mut r, n);
        let b = random_effect(&mut r, n);
        let ab = phased_product(&a, &b, phase(t)).unwrap();
        let bound = operator_norm(a.matrix()) * operator_norm(b.matrix());
        prop_assert!(operator_norm(ab.matrix()) <= bound + 1e-12);
    }

    #[test]
    fn scalar_second_argument_factors_out(seed: u64, n in 1usize..6, t in -3.0f64..3.0, lambda in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let a = random_effect(&mut r, n);
        let b = random_effect(&mut r, n);
        let lhs = phased_product(&a, &b.scale(lambda).unwrap(), phase(t)).unwrap();
        let rhs = phased_product(&a, &b, phase(t)).unwrap().matrix().scale(lambda);
        prop_assert!(lhs.matrix().frobenius_distance(&rhs) < 1e-12);
    }

    #[test]
    fn additive_in_second_argument(seed: u64, n in 1usize..6, t in -3.0f64..3.0) {
        let mut r = rng(seed);
        let a = random_effect(&mut r, n);
        let b = random_effect(&mut r, n);
        let c = luders_product(&b.complement(), &random_effect(&mut r, n)).unwrap();
        let bc = b.try_add(&c).unwrap();
        let sum = phased_product(&a, &b, phase(t)).unwrap().matrix().add(phased_product(&a, &c, phase(t)).unwrap().matrix());
        prop_assert!(phased_product(&a, &bc, phase(t)).unwrap().matrix().frobenius_distance(&sum) < 1e-12);
    }

    #[test]
    fn projections_absorb(seed: u64, n in 1usize..6, t in -3.0f64..3.0) {
        let mut r = rng(seed);
        let p = random_projection(&mut r, n);
        prop_assert!(phased_product(&p, &p, phase(t)).unwrap().matrix().frobenius_distance(p.matrix()) < 1e-12);
        prop_assert!(phased_product(&p, &p.complement(), phase(t)).unwrap().matrix().frobenius_norm() < 1e-12);
    }

    #[test]
    fn self_adjoint_extension_is_linear(seed: u64, n in 1usize..6, t in -3.0f64..3.0, alpha in -2.0f64..2.0, beta in -2.0f64..2.0) {
        let mut r = rng(seed);
        let b = random_effect(&mut r, n);
        let s = random_hermitian(&mut r, n, 1.0);
        let u = random_hermitian(&mut r, n, 1.0);
        let combo = s.scale(alpha).add(&u.scale(beta));
        let lhs = product_on_selfadjoint(&b, &combo, phase(t)).unwrap();
        let rhs = product_on_selfadjoint(&b, &s, phase(t)).unwrap().scale(alpha)
            .add(&product_on_selfadjoint(&b, &u, phase(t)).unwrap().scale(beta));
        prop_assert!(lhs.frobenius_distance(&rhs) < 1e-11);
        let on_effect = product_on_selfadjoint(&b, &Effect::identity(n).matrix().clone(), phase(t)).unwrap();
        prop_assert!(on_effect.frobenius_distance(phased_product(&b, &Effect::identity(n), phase(t)).unwrap().matrix()) < 1e-14);
    }

    #[test]
    fn phased_channels_are_completely_positive(seed: u64, n in 1usize..5, m in 1usize..5, t in -3.0f64..3.0) {
        let d = random_decomposition(&mut rng(seed), n, m);
        let ch = seqprod::channels::phased_channel(&d, t).unwrap();
        let cert = choi_certificate(&ch).unwrap();
        prop_assert!(cert.completely_positive() && cert.trace_preserving());
    }

    #[test]
    fn dual_map_is_the_adjoint(seed: u64, n in 1usize..5, m in 1usize..5, t in -3.0f64..3.0) {
        let mut r = rng(seed);
        let d = random_decomposition(&mut r, n, m);
        let ch = seqprod::channels::phased_channel(&d, t).unwrap();
        let rho = random_density(&mut r, n);
        let x = random_hermitian(&mut r, n, 1.0);
        let lhs = ch.apply(rho.matrix()).unwrap().matmul(&x).trace();
        let rhs = rho.matrix().matmul(&ch.dual(&x).unwrap()).trace();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn composed_luders_channels_measure_the_sequential_product(seed: u64, n in 1usize..6) {
        let mut r = rng(seed);
        let a = random_effect(&mut r, n);
        let b = random_effect(&mut r, n);
        let rho = random_density(&mut r, n);
        let both = luders_channel(&a).then(&luders_channel(&b)).unwrap();
        let prob = both.apply(rho.matrix()).unwrap().real_trace();
        let direct = rho.matrix().matmul(luders_product(&a, &b).unwrap().matrix()).trace();
        prop_assert!((prob - direct.re).abs() < 1e-12 && direct.im.abs() < 1e-12);
    }

    #[test]
    fn documents_round_trip_bit_exactly(entries in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 1..=16usize)) {
        let n = (entries.len() as f64).sqrt() as usize;
        let data: Vec<Complex64> = entries.iter().take(n * n).map(|&(re, im)| Complex64::new(re, im)).collect();
        let m = ComplexMatrix::from_vec(n, n, data).unwrap();
        let json = to_json_string(&MatrixDocument::from_matrix(&m));
        prop_assert_eq!(MatrixDocument::parse(&json).unwrap().to_matrix().unwrap(), m);
    }
}
