//! Conformance harness for candidate distinctness measures.
//!
//! Checks the triangle inequality, symmetry, and the operational bound on
//! seeded random samples, plus positive definiteness and data processing.
//! Failures are report entries with the worst violation margin and an
//! explicit witness, never panics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use super::trace_distance;
use crate::error::Result;
use crate::scalar::{as_f64, real, Scalar};
use crate::statekit::random::{ginibre_density, random_channel};
use crate::statekit::{apply_channel, DensityOperator};
use crate::tolerances::Tolerances;

/// A caller-supplied bivariate state functional to test against the axioms.
pub struct MetricFunctional<'a, T: Scalar> {
    pub name: String,
    pub evaluate: Box<dyn Fn(&DensityOperator<T>, &DensityOperator<T>) -> Result<T> + 'a>,
}

impl<'a, T: Scalar> MetricFunctional<'a, T> {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&DensityOperator<T>, &DensityOperator<T>) -> Result<T> + 'a,
    {
        Self {
            name: name.into(),
            evaluate: Box::new(f),
        }
    }
}

/// Sampling plan for the conformance harness.
#[derive(Debug, Clone)]
pub struct ConformanceConfig {
    pub pairs: usize,
    pub triples: usize,
    pub dims: Vec<usize>,
    pub seed: u64,
    pub tol: f64,
}

impl Default for ConformanceConfig {
    fn default() -> Self {
        Self {
            pairs: 1000,
            triples: 1000,
            dims: vec![2, 3, 4],
            seed: 17,
            tol: 1e-9,
        }
    }
}

/// Outcome of one axiom or property check.
#[derive(Debug, Clone)]
pub struct AxiomResult {
    pub pass: bool,
    /// Largest violation margin observed (negative margins mean slack).
    pub worst_margin: f64,
    /// Description of the worst sample, present when the check failed.
    pub witness: Option<String>,
}

impl AxiomResult {
    fn from_samples(worst: f64, worst_witness: String, tol: f64) -> Self {
        let pass = worst <= tol;
        Self {
            pass,
            worst_margin: worst,
            witness: if pass { None } else { Some(worst_witness) },
        }
    }
}

/// Per-axiom results for one functional.
#[derive(Debug, Clone)]
pub struct ConformanceReport {
    pub functional: String,
    pub triangle_inequality: AxiomResult,
    pub symmetry: AxiomResult,
    pub operational_bound: AxiomResult,
    pub positive_definiteness: AxiomResult,
    pub data_processing: AxiomResult,
}

impl ConformanceReport {
    pub fn all_pass(&self) -> bool {
        self.triangle_inequality.pass
            && self.symmetry.pass
            && self.operational_bound.pass
            && self.positive_definiteness.pass
            && self.data_processing.pass
    }
}

/// Run the axiom suite on a candidate functional.
pub fn conformance_check<T: Scalar>(
    f: &MetricFunctional<'_, T>,
    cfg: &ConformanceConfig,
) -> Result<ConformanceReport> {
    let tolerances = Tolerances::<T>::default();
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let eval = &f.evaluate;
    let dims = if cfg.dims.is_empty() { vec![2] } else { cfg.dims.clone() };

    // A1: triangle inequality on triples.
    let mut worst = f64::NEG_INFINITY;
    let mut witness = String::new();
    for i in 0..cfg.triples {
        let d = dims[i % dims.len()];
        let rho = ginibre_density::<T, _>(d, &mut rng);
        let sigma = ginibre_density::<T, _>(d, &mut rng);
        let omega = ginibre_density::<T, _>(d, &mut rng);
        let margin =
            as_f64(eval(&rho, &sigma)?) - as_f64(eval(&rho, &omega)?) - as_f64(eval(&omega, &sigma)?);
        if margin > worst {
            worst = margin;
            witness = format!("triple #{i} at dim {d}: margin {margin:.3e}");
        }
    }
    let triangle_inequality = AxiomResult::from_samples(worst, witness, cfg.tol);

    // A2: symmetry on pairs.
    let mut worst = f64::NEG_INFINITY;
    let mut witness = String::new();
    for i in 0..cfg.pairs {
        let d = dims[i % dims.len()];
        let rho = ginibre_density::<T, _>(d, &mut rng);
        let sigma = ginibre_density::<T, _>(d, &mut rng);
        let margin = (as_f64(eval(&rho, &sigma)?) - as_f64(eval(&sigma, &rho)?)).abs();
        if margin > worst {
            worst = margin;
            witness = format!("pair #{i} at dim {d}: |f(a,b)-f(b,a)| = {margin:.3e}");
        }
    }
    let symmetry = AxiomResult::from_samples(worst, witness, cfg.tol);

    // A3: operational bound on constructed mixtures with known ε.
    let mut worst = f64::NEG_INFINITY;
    let mut witness = String::new();
    for i in 0..cfg.pairs {
        let d = dims[i % dims.len()];
        let sigma = ginibre_density::<T, _>(d, &mut rng);
        let sigma_prime = ginibre_density::<T, _>(d, &mut rng);
        let eps: f64 = rng.random();
        let rho = sigma.mix(&sigma_prime, real(eps))?;
        let margin = as_f64(eval(&rho, &sigma)?) - eps;
        if margin > worst {
            worst = margin;
            witness = format!(
                "mixture #{i} at dim {d} with eps {eps:.6}: f = {:.6} exceeds eps by {margin:.3e}",
                as_f64(eval(&rho, &sigma)?)
            );
        }
    }
    let operational_bound = AxiomResult::from_samples(worst, witness, cfg.tol);

    // P1: zero on identical pairs, strictly positive on distinct ones.
    let mut worst = f64::NEG_INFINITY;
    let mut witness = String::new();
    for i in 0..cfg.pairs {
        let d = dims[i % dims.len()];
        let rho = ginibre_density::<T, _>(d, &mut rng);
        let sigma = ginibre_density::<T, _>(d, &mut rng);
        let on_equal = as_f64(eval(&rho, &rho)?).abs();
        if on_equal > worst {
            worst = on_equal;
            witness = format!("pair #{i} at dim {d}: f(rho, rho) = {on_equal:.3e}");
        }
        let td = as_f64(trace_distance(&rho, &sigma)?);
        if td > 0.05 {
            // Distinct states must score strictly positive.
            let value = as_f64(eval(&rho, &sigma)?);
            let margin = if value > cfg.tol { 0.0 } else { td };
            if margin > worst {
                worst = margin;
                witness = format!(
                    "pair #{i} at dim {d}: distinct states (trace distance {td:.4}) scored {value:.3e}"
                );
            }
        }
    }
    let positive_definiteness = AxiomResult::from_samples(worst, witness, cfg.tol);

    // P2: data processing under random CPTP maps.
    let mut worst = f64::NEG_INFINITY;
    let mut witness = String::new();
    for i in 0..cfg.pairs {
        let d = dims[i % dims.len()];
        let rho = ginibre_density::<T, _>(d, &mut rng);
        let sigma = ginibre_density::<T, _>(d, &mut rng);
        let ch = random_channel::<T, _>(d, d, 2, &mut rng, &tolerances)?;
        let before = as_f64(eval(&rho, &sigma)?);
        let after = as_f64(eval(&apply_channel(&ch, &rho)?, &apply_channel(&ch, &sigma)?)?);
        let margin = after - before;
        if margin > worst {
            worst = margin;
            witness = format!("pair #{i} at dim {d}: channel increased f by {margin:.3e}");
        }
    }
    let data_processing = AxiomResult::from_samples(worst, witness, cfg.tol);

    Ok(ConformanceReport {
        functional: f.name.clone(),
        triangle_inequality,
        symmetry,
        operational_bound,
        positive_definiteness,
        data_processing,
    })
}
