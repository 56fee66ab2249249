//! Randomized machine checks of the sequential-product axioms.
//!
//! Each check draws independent trials from a per-trial ChaCha stream
//! `(seed, axiom, trial index)`, evaluates one defect per trial and folds
//! the outcomes in trial order, so a report depends only on the plan and
//! never on how the trials were scheduled.
//!
//! Every product output is also measured for closure: its distance from
//! being Hermitian plus how far its spectrum leaves `[0, 1]`. A product
//! that leaves the effect algebra fails whichever check observes it.

pub mod generate;
mod interpolation;
mod witness;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::document::MatrixDocument;
use crate::effects::{luders_product, phased_sandwich, Effect, EffectError, PhaseParameter};
use crate::linalg::{ComplexMatrix, HermitianMatrix};
use crate::par::{map_indexed, Execution};

pub use generate::{gen_effect, EffectGenSpec, GenKind, Generated};
pub use interpolation::{interpolation_nodes, projector_interpolation, spectral_clusters, SpectralCluster, CLUSTER_TOL, NODE_SEPARATION_TOL};
pub use witness::{search_nonuniqueness, NonuniquenessSearch, NonuniquenessWitness, WITNESS_GAP};

use generate::{commuting_pair, commuting_triple, effect_in_basis, haar_unitary, kernel_disjoint_pair, near_boundary_effect, random_effect, random_projection, uniform_spectrum};

/// Largest defect tolerated by any axiom check.
pub const DEFECT_CEILING: f64 = 1e-9;
/// `‖A∘B‖_F` at or below this counts as `A∘B = 0` for (S3).
pub const ZERO_PRODUCT_TOL: f64 = 1e-10;
/// Minimum fraction of (S3) trials that must satisfy the hypothesis.
pub const S3_MIN_HIT_FRACTION: f64 = 0.1;
/// Non-commuting pairs must give `‖A∘B − B∘A‖_F` above this.
pub const CONVERSE_MIN_GAP: f64 = 1e-6;
/// Default lower bound on `‖AB − BA‖_F` for the converse direction.
pub const DEFAULT_COMM_FLOOR: f64 = 0.01;
/// Sampling attempts per converse trial before giving up on a dimension.
const CONVERSE_MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Error)]
pub enum AxiomError {
    #[error("only {hits} of {requested} (S3) trials produced A∘B = 0")]
    InsufficientSamples { hits: usize, requested: usize },
    #[error("interpolation nodes {left} and {right} are closer than {tolerance:e}")]
    ClusteredSpectrum { left: usize, right: usize, tolerance: f64 },
    #[error("cluster index {index} out of range for {clusters} clusters")]
    ClusterIndex { index: usize, clusters: usize },
    #[error(transparent)]
    Effect(#[from] EffectError),
}

type ProductFn = dyn Fn(&Effect, &Effect) -> ComplexMatrix + Send + Sync;

/// A candidate binary operation on effects, with a label for reports.
#[derive(Clone)]
pub struct ProductUnderTest {
    label: String,
    product: Arc<ProductFn>,
}

impl ProductUnderTest {
    pub fn new(label: impl Into<String>, product: impl Fn(&Effect, &Effect) -> ComplexMatrix + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            product: Arc::new(product),
        }
    }

    pub fn luders() -> Self {
        Self::new("luders", |a, b| {
            luders_product(a, b).expect("Lüders product of effects").matrix().as_matrix().clone()
        })
    }

    /// Phased product; evaluated without re-validating the output so the
    /// checks see the raw result.
    pub fn phased(t: PhaseParameter) -> Self {
        let tv = t.value();
        Self::new(format!("phased(t={tv})"), move |a, b| {
            HermitianMatrix::new(phased_sandwich(a, b.matrix(), tv))
                .expect("finite product")
                .into_matrix()
        })
    }

    /// Plain matrix product `AB`. Not closed on effects; useful as a
    /// negative control.
    pub fn matrix_product() -> Self {
        Self::new("matrix-product", |a, b| a.matrix().matmul(b.matrix()))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn apply(&self, a: &Effect, b: &Effect) -> ComplexMatrix {
        (self.product)(a, b)
    }
}

impl fmt::Debug for ProductUnderTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProductUnderTest").field("label", &self.label).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    S1,
    S2,
    S3,
    S4,
    S5,
    CommutativityForward,
    CommutativityConverse,
}

impl Axiom {
    fn salt(self) -> u64 {
        match self {
            Axiom::S1 => 1,
            Axiom::S2 => 2,
            Axiom::S3 => 3,
            Axiom::S4 => 4,
            Axiom::S5 => 5,
            Axiom::CommutativityForward => 6,
            Axiom::CommutativityConverse => 7,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Thresholds {
    pub defect_ceiling: f64,
    pub zero_product: f64,
    pub converse_gap: f64,
    pub comm_floor: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            defect_ceiling: DEFECT_CEILING,
            zero_product: ZERO_PRODUCT_TOL,
            converse_gap: CONVERSE_MIN_GAP,
            comm_floor: DEFAULT_COMM_FLOOR,
        }
    }
}

/// How many trials to run, at which dimensions, from which seed.
///
/// `trials` is per dimension: a plan with `dims = [2, 3]` and
/// `trials = 100` evaluates 200 trials.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialPlan {
    pub trials: usize,
    pub dims: Vec<usize>,
    pub seed: u64,
    pub execution: Execution,
    pub thresholds: Thresholds,
}

impl TrialPlan {
    pub fn new(trials: usize, dims: &[usize], seed: u64) -> Self {
        assert!(dims.iter().all(|&d| d >= 1), "dimensions must be positive");
        Self {
            trials,
            dims: dims.to_vec(),
            seed,
            execution: Execution::default(),
            thresholds: Thresholds::default(),
        }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn with_thresholds(mut self, thresholds: Thresholds) -> Self {
        self.thresholds = thresholds;
        self
    }

    fn total(&self) -> usize {
        self.trials * self.dims.len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: MatrixDocument,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub trial: usize,
    pub dim: usize,
    pub inputs: Vec<NamedMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub axiom: Axiom,
    pub product: String,
    pub trials: usize,
    pub failures: usize,
    pub skipped: usize,
    pub worst_violation: f64,
    pub witness: Option<Witness>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_separation: Option<f64>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutativityReport {
    pub forward: CheckReport,
    pub converse: CheckReport,
}

impl CommutativityReport {
    pub fn passed(&self) -> bool {
        self.forward.passed() && self.converse.passed()
    }
}

/// All axiom reports for one product.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub product: String,
    pub reports: Vec<CheckReport>,
    pub passed: bool,
}

struct Trial {
    violation: f64,
    failed: bool,
    skipped: bool,
    /// Larger is worse; picks the witness.
    score: f64,
    separation: Option<f64>,
    inputs: Vec<(&'static str, ComplexMatrix)>,
}

impl Trial {
    fn measured(violation: f64, ceiling: f64, inputs: Vec<(&'static str, ComplexMatrix)>) -> Self {
        Self {
            violation,
            failed: !(violation <= ceiling),
            skipped: false,
            score: violation,
            separation: None,
            inputs,
        }
    }

    fn skipped() -> Self {
        Self {
            violation: 0.0,
            failed: false,
            skipped: true,
            score: f64::NEG_INFINITY,
            separation: None,
            inputs: Vec::new(),
        }
    }
}

fn trial_rng(seed: u64, salt: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(index as u64);
    rng
}

fn run_check<F>(axiom: Axiom, p: &ProductUnderTest, plan: &TrialPlan, body: F) -> CheckReport
where
    F: Fn(&mut ChaCha8Rng, usize, usize) -> Trial + Sync + Send,
{
    let per_dim = plan.trials;
    let outcomes = map_indexed(plan.total(), plan.execution, |i| {
        let dim = plan.dims[i / per_dim];
        let mut rng = trial_rng(plan.seed, axiom.salt(), i);
        (dim, body(&mut rng, dim, i % per_dim))
    });

    let mut report = CheckReport {
        axiom,
        product: p.label().to_owned(),
        trials: 0,
        failures: 0,
        skipped: 0,
        worst_violation: 0.0,
        witness: None,
        seed: plan.seed,
        min_separation: None,
    };
    let mut worst_score = f64::NEG_INFINITY;
    for (i, (dim, trial)) in outcomes.into_iter().enumerate() {
        if trial.skipped {
            report.skipped += 1;
            continue;
        }
        report.trials += 1;
        report.failures += trial.failed as usize;
        if trial.violation > report.worst_violation || trial.violation.is_nan() {
            report.worst_violation = trial.violation;
        }
        if let Some(sep) = trial.separation {
            report.min_separation = Some(report.min_separation.map_or(sep, |m: f64| m.min(sep)));
        }
        if trial.score > worst_score || report.witness.is_none() {
            worst_score = trial.score;
            report.witness = Some(Witness {
                trial: i,
                dim,
                inputs: trial
                    .inputs
                    .iter()
                    .map(|(name, m)| NamedMatrix {
                        name: (*name).to_owned(),
                        matrix: MatrixDocument::from_matrix(m),
                    })
                    .collect(),
            });
        }
    }
    report
}

/// Product output together with its closure defect and, when it is close
/// enough to an effect, the effect itself.
struct Evaluated {
    matrix: ComplexMatrix,
    closure: f64,
    effect: Option<Effect>,
}

fn evaluate(p: &ProductUnderTest, a: &Effect, b: &Effect, ceiling: f64) -> Evaluated {
    let matrix = p.apply(a, b);
    let herm = matrix.hermitian_defect();
    let assessed = HermitianMatrix::new(matrix.clone()).ok().and_then(|h| Effect::assess(h).ok());
    match assessed {
        Some((effect, excess)) => {
            let closure = herm + excess;
            Evaluated {
                matrix,
                closure,
                effect: (closure <= ceiling).then_some(effect),
            }
        }
        None => Evaluated {
            matrix,
            closure: f64::INFINITY,
            effect: None,
        },
    }
}

fn inputs(list: &[(&'static str, &Effect)]) -> Vec<(&'static str, ComplexMatrix)> {
    list.iter().map(|(n, e)| (*n, e.matrix().as_matrix().clone())).collect()
}

/// (S1): `B ↦ A∘B` is additive where `B + C ≤ I`.
pub fn check_s1(p: &ProductUnderTest, plan: &TrialPlan) -> CheckReport {
    let ceiling = plan.thresholds.defect_ceiling;
    run_check(Axiom::S1, p, plan, |rng, n, j| {
        let a = match j % 4 {
            2 => near_boundary_effect(rng, n),
            3 => random_projection(rng, n),
            _ => random_effect(rng, n),
        };
        let b = random_effect(rng, n);
        let c = match j % 10 {
            0 => Effect::zero(n),
            1 => b.complement(),
            _ => luders_product(&b.complement(), &random_effect(rng, n)).expect("effect"),
        };
        let Ok(bc) = b.try_add(&c) else {
            return Trial::skipped();
        };
        let ab = evaluate(p, &a, &b, ceiling);
        let ac = evaluate(p, &a, &c, ceiling);
        let abc = evaluate(p, &a, &bc, ceiling);
        let additivity = (&ab.matrix + &ac.matrix).frobenius_distance(&abc.matrix);
        let violation = additivity.max(ab.closure).max(ac.closure).max(abc.closure);
        Trial::measured(violation, ceiling, inputs(&[("A", &a), ("B", &b), ("C", &c)]))
    })
}

/// (S2): `I∘A = A`.
pub fn check_s2(p: &ProductUnderTest, plan: &TrialPlan) -> CheckReport {
    let ceiling = plan.thresholds.defect_ceiling;
    run_check(Axiom::S2, p, plan, |rng, n, j| {
        let a = match j % 5 {
            2 => near_boundary_effect(rng, n),
            3 => Effect::zero(n),
            4 => Effect::identity(n),
            _ => random_effect(rng, n),
        };
        let out = evaluate(p, &Effect::identity(n), &a, ceiling);
        let violation = out.matrix.frobenius_distance(a.matrix()).max(out.closure);
        Trial::measured(violation, ceiling, inputs(&[("A", &a)]))
    })
}

/// (S3): `A∘B = 0` implies `B∘A = 0`.
///
/// Most trials use kernel-disjoint pairs; generic pairs are included but
/// almost never satisfy the hypothesis and are then skipped.
pub fn check_s3(p: &ProductUnderTest, plan: &TrialPlan) -> Result<CheckReport, AxiomError> {
    let ceiling = plan.thresholds.defect_ceiling;
    let zero_tol = plan.thresholds.zero_product;
    let report = run_check(Axiom::S3, p, plan, |rng, n, j| {
        let (a, b) = match j % 8 {
            5 => {
                let e = random_projection(rng, n);
                let f = e.complement();
                (e, f)
            }
            6 => (Effect::zero(n), random_effect(rng, n)),
            7 => (random_effect(rng, n), random_effect(rng, n)),
            _ => kernel_disjoint_pair(rng, n),
        };
        let ab = evaluate(p, &a, &b, ceiling);
        if ab.matrix.frobenius_norm() > zero_tol {
            return Trial::skipped();
        }
        let ba = evaluate(p, &b, &a, ceiling);
        let violation = ba.matrix.frobenius_norm().max(ab.closure).max(ba.closure);
        Trial::measured(violation, ceiling, inputs(&[("A", &a), ("B", &b)]))
    });
    let requested = plan.total();
    if (report.trials as f64) < S3_MIN_HIT_FRACTION * requested as f64 {
        return Err(AxiomError::InsufficientSamples {
            hits: report.trials,
            requested,
        });
    }
    Ok(report)
}

/// (S4): for `A|B`, `A|(I − B)` and `A∘(B∘C) = (A∘B)∘C`.
///
/// Operational commutativity is realized by commuting pairs.
pub fn check_s4(p: &ProductUnderTest, plan: &TrialPlan) -> CheckReport {
    let ceiling = plan.thresholds.defect_ceiling;
    run_check(Axiom::S4, p, plan, |rng, n, j| {
        let (a, b) = match j % 6 {
            0 => {
                let e = random_projection(rng, n);
                (e.clone(), e)
            }
            1 => (random_effect(rng, n), Effect::identity(n)),
            _ => commuting_pair(rng, n),
        };
        let c = random_effect(rng, n);
        let ins = inputs(&[("A", &a), ("B", &b), ("C", &c)]);

        let b_perp = b.complement();
        let left = evaluate(p, &a, &b_perp, ceiling);
        let right = evaluate(p, &b_perp, &a, ceiling);
        let mut violation = left.matrix.frobenius_distance(&right.matrix).max(left.closure).max(right.closure);

        let bc = evaluate(p, &b, &c, ceiling);
        let ab = evaluate(p, &a, &b, ceiling);
        violation = violation.max(bc.closure).max(ab.closure);
        if let (Some(bc_e), Some(ab_e)) = (&bc.effect, &ab.effect) {
            let nested_right = evaluate(p, &a, bc_e, ceiling);
            let nested_left = evaluate(p, ab_e, &c, ceiling);
            violation = violation
                .max(nested_right.matrix.frobenius_distance(&nested_left.matrix))
                .max(nested_right.closure)
                .max(nested_left.closure);
        }
        Trial::measured(violation, ceiling, ins)
    })
}

/// (S5): if `C|A` and `C|B` then `C|(A∘B)` and, when `A + B ≤ I`, `C|(A+B)`.
pub fn check_s5(p: &ProductUnderTest, plan: &TrialPlan) -> CheckReport {
    let ceiling = plan.thresholds.defect_ceiling;
    run_check(Axiom::S5, p, plan, |rng, n, j| {
        let (a, b, c) = match j % 5 {
            0 | 1 => {
                let c = if j % 5 == 0 {
                    Effect::identity(n)
                } else {
                    Effect::identity(n).scale(rng.random()).expect("scalar effect")
                };
                let a = random_effect(rng, n);
                let b = if j % 2 == 0 {
                    luders_product(&a.complement(), &random_effect(rng, n)).expect("effect")
                } else {
                    random_effect(rng, n)
                };
                (a, b, c)
            }
            k => commuting_triple(rng, n, k % 2 == 0),
        };
        let ins = inputs(&[("A", &a), ("B", &b), ("C", &c)]);

        let ab = evaluate(p, &a, &b, ceiling);
        let mut violation = ab.closure;
        if let Some(ab_e) = &ab.effect {
            let l = evaluate(p, &c, ab_e, ceiling);
            let r = evaluate(p, ab_e, &c, ceiling);
            violation = violation.max(l.matrix.frobenius_distance(&r.matrix)).max(l.closure).max(r.closure);
        }
        if let Ok(sum) = a.try_add(&b) {
            let l = evaluate(p, &c, &sum, ceiling);
            let r = evaluate(p, &sum, &c, ceiling);
            violation = violation.max(l.matrix.frobenius_distance(&r.matrix)).max(l.closure).max(r.closure);
        }
        Trial::measured(violation, ceiling, ins)
    })
}

/// Both directions of "`A∘B = B∘A` iff `AB = BA`".
///
/// Forward: commuting inputs give symmetric products equal to `AB`.
/// Converse: pairs with `‖AB − BA‖_F ≥ comm_floor` give
/// `‖A∘B − B∘A‖_F > converse_gap`. Dimension 1 has no such pairs and its
/// converse trials are skipped.
pub fn check_commutativity_theorem(p: &ProductUnderTest, plan: &TrialPlan) -> CommutativityReport {
    let ceiling = plan.thresholds.defect_ceiling;
    let forward = run_check(Axiom::CommutativityForward, p, plan, |rng, n, j| {
        let (a, b) = match j % 5 {
            0 => {
                let id = ComplexMatrix::identity(n);
                (effect_in_basis(&id, &uniform_spectrum(rng, n)), effect_in_basis(&id, &uniform_spectrum(rng, n)))
            }
            1 => {
                let v = haar_unitary(rng, n);
                let e: Vec<f64> = (0..n).map(|_| f64::from(rng.random_bool(0.5) as u8)).collect();
                let f: Vec<f64> = (0..n).map(|_| f64::from(rng.random_bool(0.5) as u8)).collect();
                (effect_in_basis(&v, &e), effect_in_basis(&v, &f))
            }
            _ => commuting_pair(rng, n),
        };
        let ab = evaluate(p, &a, &b, ceiling);
        let ba = evaluate(p, &b, &a, ceiling);
        let plain = a.matrix().matmul(b.matrix());
        let violation = ab
            .matrix
            .frobenius_distance(&ba.matrix)
            .max(ab.matrix.frobenius_distance(&plain))
            .max(ab.closure)
            .max(ba.closure);
        Trial::measured(violation, ceiling, inputs(&[("A", &a), ("B", &b)]))
    });

    let floor = plan.thresholds.comm_floor;
    let min_gap = plan.thresholds.converse_gap;
    let converse = run_check(Axiom::CommutativityConverse, p, plan, |rng, n, _| {
        if n < 2 {
            return Trial::skipped();
        }
        for _ in 0..CONVERSE_MAX_ATTEMPTS {
            let a = random_effect(rng, n);
            let b = random_effect(rng, n);
            let comm = a.matrix().matmul(b.matrix()).frobenius_distance(&b.matrix().matmul(a.matrix()));
            if comm < floor {
                continue;
            }
            let gap = p.apply(&a, &b).frobenius_distance(&p.apply(&b, &a));
            return Trial {
                violation: (min_gap - gap).max(0.0),
                failed: !(gap > min_gap),
                skipped: false,
                score: -gap,
                separation: Some(gap),
                inputs: inputs(&[("A", &a), ("B", &b)]),
            };
        }
        Trial::skipped()
    });
    CommutativityReport { forward, converse }
}

/// Runs (S1)–(S5) and both commutativity directions.
pub fn run_suite(p: &ProductUnderTest, plan: &TrialPlan) -> Result<SuiteReport, AxiomError> {
    let comm = check_commutativity_theorem(p, plan);
    let reports = vec![
        check_s1(p, plan),
        check_s2(p, plan),
        check_s3(p, plan)?,
        check_s4(p, plan),
        check_s5(p, plan),
        comm.forward,
        comm.converse,
    ];
    let passed = reports.iter().all(CheckReport::passed);
    Ok(SuiteReport {
        product: p.label().to_owned(),
        reports,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(trials: usize, dims: &[usize]) -> TrialPlan {
        TrialPlan::new(trials, dims, 1234)
    }

    #[test]
    fn phased_and_luders_pass_small_suite() {
        for p in [
            ProductUnderTest::luders(),
            ProductUnderTest::phased(PhaseParameter::UNIT),
            ProductUnderTest::phased(PhaseParameter::new(-1.0).unwrap()),
        ] {
            let suite = run_suite(&p, &plan(60, &[1, 2, 3, 5])).unwrap();
            for r in &suite.reports {
                assert!(r.passed(), "{} {:?}: {} failures, worst {:e}", r.product, r.axiom, r.failures, r.worst_violation);
            }
        }
    }

    #[test]
    fn matrix_product_is_rejected() {
        let suite = run_suite(&ProductUnderTest::matrix_product(), &plan(40, &[2, 3])).unwrap();
        assert!(!suite.passed);
        let s1 = &suite.reports[0];
        assert!(s1.failures > 0);
        assert!(s1.witness.is_some());
    }

    #[test]
    fn symmetrized_jordan_product_fails_converse() {
        let jordan = ProductUnderTest::new("jordan", |a, b| {
            let ab = a.matrix().matmul(b.matrix());
            let ba = b.matrix().matmul(a.matrix());
            (&ab + &ba).scale_real(0.5)
        });
        let r = check_commutativity_theorem(&jordan, &plan(20, &[2]));
        assert_eq!(r.converse.failures, r.converse.trials);
        assert!(r.forward.passed());
    }

    #[test]
    fn reports_are_deterministic_across_execution_modes() {
        let p = ProductUnderTest::phased(PhaseParameter::UNIT);
        let seq = check_s4(&p, &plan(30, &[2, 4]).with_execution(Execution::Sequential));
        let par = check_s4(&p, &plan(30, &[2, 4]).with_execution(Execution::Parallel));
        assert_eq!(seq, par);
        assert_eq!(seq, check_s4(&p, &plan(30, &[2, 4])));
    }

    #[test]
    fn s3_needs_enough_hits() {
        let never_zero = ProductUnderTest::new("identity-output", |a, _| ComplexMatrix::identity(a.dim()));
        assert!(matches!(
            check_s3(&never_zero, &plan(20, &[2])),
            Err(AxiomError::InsufficientSamples { hits: 0, requested: 20 })
        ));
    }

    #[test]
    fn dimension_one_skips_converse() {
        let r = check_commutativity_theorem(&ProductUnderTest::luders(), &plan(5, &[1]));
        assert_eq!(r.converse.trials, 0);
        assert_eq!(r.converse.skipped, 5);
        assert!(r.passed());
    }

    #[test]
    fn single_trial_dimension_one_suite_passes() {
        let suite = run_suite(&ProductUnderTest::phased(PhaseParameter::UNIT), &plan(1, &[1])).unwrap();
        assert!(suite.passed);
    }
}
