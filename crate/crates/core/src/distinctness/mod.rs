//! Distinctness measures on density operators: trace distance, the
//! convex-decomposition pre-distances δ̃ and δ̂, the constructive midpoint
//! state, and certified two-sided bounds on the maximum distinctness
//! probability.
//!
//! The maximum distinctness probability is an infimum over paths of states
//! and carries no general algorithm; [`p_neq_max_bounds`] therefore reports
//! a certified interval. The lower endpoint is half the Schatten 1-norm of
//! the difference; the upper endpoint is the cost of the best explicit path
//! found, which is emitted as a witness.

mod conformance;

pub use conformance::{
    conformance_check, AxiomResult, ConformanceConfig, ConformanceReport, MetricFunctional,
};

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::scalar::{real, Scalar};
use crate::statekit::random::ginibre_density;
use crate::statekit::{jordan_decompose, schatten_1_norm, DensityOperator};

/// Maximum bisection iterations for the pre-distance.
const BISECTION_MAX_ITERS: usize = 60;

/// Default bisection tolerance.
pub fn default_tol<T: Scalar>() -> T {
    real(1e-9)
}

/// Trace distance ||rho - sigma||_1 / 2.
pub fn trace_distance<T: Scalar>(
    rho: &DensityOperator<T>,
    sigma: &DensityOperator<T>,
) -> Result<T> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch {
            expected: rho.dim(),
            got: sigma.dim(),
        });
    }
    Ok(schatten_1_norm(&rho.sub(sigma)?)? * real(0.5))
}

/// Smallest ε (within `tol`) such that rho = (1-ε)·sigma + ε·sigma' for
/// some state sigma', found by bisection on the PSD feasibility of
/// rho - (1-ε)·sigma.
///
/// Feasibility is monotone in ε and always holds at ε = 1, so the returned
/// value over-approximates the infimum by at most `tol`. When no ε < 1 is
/// feasible (support mismatch) the result is exactly 1.
pub fn delta_tilde<T: Scalar>(
    rho: &DensityOperator<T>,
    sigma: &DensityOperator<T>,
    tol: T,
) -> Result<T> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch {
            expected: rho.dim(),
            got: sigma.dim(),
        });
    }
    let feasible = |eps: T| -> Result<bool> {
        let m = rho.as_hermitian().add_scaled(sigma.as_hermitian(), eps - T::one())?;
        let vals = m.eigenvalues()?;
        let norm1 = vals.iter().fold(T::zero(), |s, &v| s + v.abs());
        let min = vals.iter().fold(T::zero(), |m, &v| m.min(v));
        // Slack tracks eigensolver roundoff, not the construction-time PSD
        // tolerance: the bisection must resolve ε to ~1e-8 even when sigma
        // has small eigenvalues.
        Ok(min >= -feasibility_slack(norm1))
    };
    if feasible(T::zero())? {
        return Ok(T::zero());
    }
    let mut lo = T::zero();
    let mut hi = T::one();
    for _ in 0..BISECTION_MAX_ITERS {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) * real(0.5);
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn feasibility_slack<T: Scalar>(norm1: T) -> T {
    real::<T>(1e-12) * (T::one() + norm1)
}

/// Symmetrized pre-distance min{δ̃(rho, sigma), δ̃(sigma, rho)}.
pub fn delta_hat<T: Scalar>(
    rho: &DensityOperator<T>,
    sigma: &DensityOperator<T>,
    tol: T,
) -> Result<T> {
    let ab = delta_tilde(rho, sigma, tol)?;
    let ba = delta_tilde(sigma, rho, tol)?;
    Ok(ab.min(ba))
}

/// The constructive midpoint state between two states.
///
/// With ε the trace distance and (Δ_+, Δ_-) the positive/negative parts of
/// rho - sigma, returns ω = (rho - Δ_-)/(1+ε) = (sigma + Δ_+)/(1+ε) and
/// ε' = ε/(1+ε). ω decomposes as (1-ε')·rho + ε'·rho' and as
/// (1-ε')·sigma + ε'·sigma' with rho' = -Δ_-/ε and sigma' = Δ_+/ε.
pub fn midpoint_state<T: Scalar>(
    rho: &DensityOperator<T>,
    sigma: &DensityOperator<T>,
) -> Result<(DensityOperator<T>, T)> {
    let eps = trace_distance(rho, sigma)?;
    if eps == T::zero() {
        return Ok((rho.clone(), T::zero()));
    }
    let delta = rho.sub(sigma)?;
    let (_, neg) = jordan_decompose(&delta)?;
    let scaled = rho
        .as_hermitian()
        .add_scaled(&neg, -T::one())?
        .scale(T::one() / (T::one() + eps));
    let omega = DensityOperator::from_matrix_unchecked(scaled.matrix().clone());
    Ok((omega, eps / (T::one() + eps)))
}

/// Total δ̂ cost of a path of states.
pub fn path_cost<T: Scalar>(states: &[DensityOperator<T>], tol: T) -> Result<T> {
    if states.len() < 2 {
        return Err(Error::EmptyPath);
    }
    let mut total = T::zero();
    for pair in states.windows(2) {
        total += delta_hat(&pair[0], &pair[1], tol)?;
    }
    Ok(total)
}

/// Certified interval around the maximum distinctness probability.
#[derive(Debug, Clone)]
pub struct DistinctnessBounds<T: Scalar> {
    /// Lower bound: half the Schatten 1-norm of the difference.
    pub lower: T,
    /// Upper bound: cost of the best explicit path found.
    pub upper: T,
    /// Path realizing the upper bound, endpoints included.
    pub witness_path: Vec<DensityOperator<T>>,
    /// Number of δ̂ evaluations spent.
    pub evaluations: usize,
}

/// Two-sided bounds on the maximum distinctness probability, with the
/// default refinement seed.
pub fn p_neq_max_bounds<T: Scalar>(
    rho: &DensityOperator<T>,
    sigma: &DensityOperator<T>,
    refine_budget: usize,
) -> Result<DistinctnessBounds<T>> {
    p_neq_max_bounds_seeded(rho, sigma, refine_budget, 0)
}

/// Two-sided bounds on the maximum distinctness probability.
///
/// Candidate paths: the direct pair {rho, sigma}, the midpoint path through
/// the constructive midpoint, and coordinate-descent refinements of the best
/// path that mix one intermediate at a time with seeded Ginibre states.
/// `refine_budget` counts δ̂ evaluations in the refinement phase; for a
/// fixed seed the upper bound is monotone non-increasing in the budget.
pub fn p_neq_max_bounds_seeded<T: Scalar>(
    rho: &DensityOperator<T>,
    sigma: &DensityOperator<T>,
    refine_budget: usize,
    seed: u64,
) -> Result<DistinctnessBounds<T>> {
    let tol = default_tol::<T>();
    let lower = trace_distance(rho, sigma)?;
    let mut evaluations = 0usize;

    let mut best_path = vec![rho.clone(), sigma.clone()];
    let mut best_cost = delta_hat(rho, sigma, tol)?;
    evaluations += 1;

    if lower > T::zero() {
        let (omega, _) = midpoint_state(rho, sigma)?;
        let cost = delta_hat(rho, &omega, tol)? + delta_hat(&omega, sigma, tol)?;
        evaluations += 2;
        if cost < best_cost {
            best_cost = cost;
            best_path = vec![rho.clone(), omega, sigma.clone()];
        }
    }

    if refine_budget > 0 && lower > T::zero() {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut spent = 0usize;
        // Work on a three-point path; start from the best found so far,
        // inserting the convex midpoint if the direct path is still ahead.
        let mut path = if best_path.len() >= 3 {
            best_path.clone()
        } else {
            vec![rho.clone(), rho.mix(sigma, real(0.5))?, sigma.clone()]
        };
        let mut edge_costs: Vec<T> = Vec::with_capacity(path.len() - 1);
        for pair in path.windows(2) {
            edge_costs.push(delta_hat(&pair[0], &pair[1], tol)?);
        }
        let mut path_total: T = edge_costs.iter().fold(T::zero(), |s, &c| s + c);
        if path_total < best_cost {
            best_cost = path_total;
            best_path = path.clone();
        }
        let mixes = [0.5, 0.25, 0.1, 0.04];
        let mut j = 1usize;
        let mut mix_idx = 0usize;
        while spent + 2 <= refine_budget {
            let g = ginibre_density::<T, _>(rho.dim(), &mut rng);
            let alpha = real::<T>(mixes[mix_idx % mixes.len()]);
            let cand = path[j].mix(&g, alpha)?;
            let left = delta_hat(&path[j - 1], &cand, tol)?;
            let right = delta_hat(&cand, &path[j + 1], tol)?;
            spent += 2;
            evaluations += 2;
            let new_total = path_total - edge_costs[j - 1] - edge_costs[j] + left + right;
            if new_total < path_total {
                path[j] = cand;
                edge_costs[j - 1] = left;
                edge_costs[j] = right;
                path_total = new_total;
                if path_total < best_cost {
                    best_cost = path_total;
                    best_path = path.clone();
                }
            }
            j += 1;
            if j + 1 >= path.len() {
                j = 1;
                mix_idx += 1;
            }
        }
    }

    // Guard against roundoff inversion when the interval collapses.
    let upper = best_cost.max(lower);
    Ok(DistinctnessBounds {
        lower,
        upper,
        witness_path: best_path,
        evaluations,
    })
}
