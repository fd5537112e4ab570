use approx::assert_abs_diff_eq;
use nalgebra::{Complex, DMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use super::random::{ginibre_density, random_channel, random_effect, random_hermitian};
use super::*;
use crate::distinctness::trace_distance;

type C = Complex<f64>;

fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

fn tol() -> Tolerances<f64> {
    Tolerances::default()
}

fn diag(entries: &[f64]) -> CMatrix<f64> {
    let mut m = CMatrix::<f64>::zeros(entries.len(), entries.len());
    for (k, &v) in entries.iter().enumerate() {
        m[(k, k)] = c(v, 0.0);
    }
    m
}

/// Sum of |eigenvalues| via characteristic-polynomial roots, dims 1-3.
/// Independent of the eigensolver used by the implementation.
fn charpoly_abs_eig_sum(m: &CMatrix<f64>) -> f64 {
    match m.nrows() {
        1 => m[(0, 0)].re.abs(),
        2 => {
            let tr = (m[(0, 0)] + m[(1, 1)]).re;
            let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
            let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
            ((tr + disc) / 2.0).abs() + ((tr - disc) / 2.0).abs()
        }
        3 => {
            // lambda^3 - c2 lambda^2 + c1 lambda - c0, roots by the
            // trigonometric method for three real roots.
            let tr = (m[(0, 0)] + m[(1, 1)] + m[(2, 2)]).re;
            let m2 = m * m;
            let tr2 = (m2[(0, 0)] + m2[(1, 1)] + m2[(2, 2)]).re;
            let c2 = tr;
            let c1 = 0.5 * (tr * tr - tr2);
            let c0 = det3(m);
            let p = c1 - c2 * c2 / 3.0;
            let q = -2.0 * c2.powi(3) / 27.0 + c2 * c1 / 3.0 - c0;
            let shift = c2 / 3.0;
            if p.abs() < 1e-14 {
                let r = (-q).cbrt();
                return (0..3).map(|_| (r + shift).abs()).sum();
            }
            let a = (-p / 3.0).sqrt();
            let arg = (3.0 * q / (2.0 * p * a)).clamp(-1.0, 1.0);
            let phi = arg.acos() / 3.0;
            (0..3)
                .map(|k| {
                    let ang = phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                    (2.0 * a * ang.cos() + shift).abs()
                })
                .sum()
        }
        _ => panic!("oracle limited to dim <= 3"),
    }
}

fn det3(m: &CMatrix<f64>) -> f64 {
    (m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
        - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)]))
        .re
}

#[test]
fn validate_density_accepts_maximally_mixed() {
    let rho = validate_density(diag(&[0.5, 0.5]), &tol()).unwrap();
    assert_abs_diff_eq!(rho.matrix()[(0, 0)].re, 0.5, epsilon = 1e-15);
    assert_abs_diff_eq!(rho.as_hermitian().trace(), 1.0, epsilon = 1e-15);
}

#[test]
fn validate_density_accepts_diagonal_probability_vector() {
    let rho = validate_density(diag(&[0.65, 0.35]), &tol()).unwrap();
    assert_abs_diff_eq!(rho.matrix()[(0, 0)].re, 0.65, epsilon = 1e-15);
    assert_abs_diff_eq!(rho.matrix()[(1, 1)].re, 0.35, epsilon = 1e-15);
}

#[test]
fn validate_density_rejects_negative_eigenvalue() {
    let err = validate_density(diag(&[1.2, -0.2]), &tol()).unwrap_err();
    assert!(matches!(err, Error::NotPsd { .. }), "got {err:?}");
}

#[test]
fn validate_density_rejects_asymmetric_matrix() {
    let m = DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.4, 0.0), c(0.1, 0.0), c(0.5, 0.0)]);
    let err = validate_density(m, &tol()).unwrap_err();
    assert!(matches!(err, Error::NotHermitian { .. }), "got {err:?}");
}

#[test]
fn validate_density_rejects_bad_trace() {
    let err = validate_density(diag(&[0.5, 0.3]), &tol()).unwrap_err();
    assert!(matches!(err, Error::BadTrace { .. }), "got {err:?}");
}

#[test]
fn validate_density_clips_roundoff_negatives_and_renormalizes() {
    let rho = validate_density(diag(&[1.0 + 4e-10, -4e-10]), &tol()).unwrap();
    let vals = rho.as_hermitian().eigenvalues().unwrap();
    assert!(vals.iter().all(|&v| v >= 0.0));
    assert_abs_diff_eq!(rho.as_hermitian().trace(), 1.0, epsilon = 1e-14);
}

#[test]
fn validate_density_respects_dimension_ceiling() {
    let t = tol().with_max_dim(3);
    let err = validate_density(diag(&[0.25; 4]), &t).unwrap_err();
    assert!(matches!(err, Error::DimensionOverflow { .. }));
}

#[test]
fn schatten_norm_of_zero_is_zero() {
    let h = HermitianOperator::<f64>::zeros(3);
    assert_abs_diff_eq!(schatten_1_norm(&h).unwrap(), 0.0, epsilon = 1e-15);
}

#[test]
fn schatten_norm_sums_absolute_eigenvalues() {
    let h = HermitianOperator::new(diag(&[0.15, -0.15]), &tol()).unwrap();
    assert_abs_diff_eq!(schatten_1_norm(&h).unwrap(), 0.3, epsilon = 1e-14);
}

#[test]
fn schatten_norm_matches_charpoly_oracle() {
    let mut rng = ChaCha12Rng::seed_from_u64(42);
    for dim in [2usize, 3] {
        for _ in 0..200 {
            let h = random_hermitian::<f64, _>(dim, &mut rng);
            let got = schatten_1_norm(&h).unwrap();
            let want = charpoly_abs_eig_sum(h.matrix());
            assert_abs_diff_eq!(got, want, epsilon = 1e-9 * (1.0 + want));
        }
    }
}

#[test]
fn jordan_decompose_splits_diagonal_difference() {
    let h = HermitianOperator::new(diag(&[0.15, -0.15]), &tol()).unwrap();
    let (p, n) = jordan_decompose(&h).unwrap();
    assert_abs_diff_eq!(p.matrix()[(0, 0)].re, 0.15, epsilon = 1e-14);
    assert_abs_diff_eq!(p.matrix()[(1, 1)].re, 0.0, epsilon = 1e-14);
    assert_abs_diff_eq!(n.matrix()[(0, 0)].re, 0.0, epsilon = 1e-14);
    assert_abs_diff_eq!(n.matrix()[(1, 1)].re, -0.15, epsilon = 1e-14);
}

#[test]
fn jordan_decompose_of_psd_input_has_zero_negative_part() {
    let mut rng = ChaCha12Rng::seed_from_u64(1);
    let rho = ginibre_density::<f64, _>(3, &mut rng);
    let h = HermitianOperator::new(rho.matrix().clone(), &tol()).unwrap();
    let (p, n) = jordan_decompose(&h).unwrap();
    assert!(schatten_1_norm(&n).unwrap() < 1e-12);
    assert!((p.sub(&h).unwrap().matrix().iter().map(|z| z.norm()).sum::<f64>()) < 1e-12);
}

#[test]
fn jordan_parts_of_traceless_difference_carry_half_the_norm() {
    let mut rng = ChaCha12Rng::seed_from_u64(2);
    for _ in 0..50 {
        let a = ginibre_density::<f64, _>(4, &mut rng);
        let b = ginibre_density::<f64, _>(4, &mut rng);
        let delta = a.sub(&b).unwrap();
        let (p, n) = jordan_decompose(&delta).unwrap();
        let half_norm = 0.5 * schatten_1_norm(&delta).unwrap();
        assert_abs_diff_eq!(p.trace(), half_norm, epsilon = 1e-12);
        assert_abs_diff_eq!(-n.trace(), half_norm, epsilon = 1e-12);
        // Orthogonal supports: ||P N||_1 small.
        let pn = p.matrix() * n.matrix();
        let prod_norm: f64 = pn.iter().map(|z| z.norm()).sum();
        assert!(prod_norm <= 1e-10 * 4.0, "support overlap {prod_norm}");
        // Reconstruction.
        let recon = p.add_scaled(&n, 1.0).unwrap().sub(&delta).unwrap();
        assert!(schatten_1_norm(&recon).unwrap() < 1e-12);
    }
}

#[test]
fn tensor_of_maximally_mixed_states() {
    let tau2 = DensityOperator::<f64>::maximally_mixed(2);
    let tau4 = tensor(&tau2, &tau2, &tol()).unwrap();
    for k in 0..4 {
        assert_abs_diff_eq!(tau4.matrix()[(k, k)].re, 0.25, epsilon = 1e-15);
    }
}

#[test]
fn tensor_of_basis_states() {
    let zero = DensityOperator::<f64>::basis_state(2, 0);
    let one = DensityOperator::<f64>::basis_state(2, 1);
    let prod = tensor(&zero, &one, &tol()).unwrap();
    // |01> is index 1 in row-major order.
    assert_abs_diff_eq!(prod.matrix()[(1, 1)].re, 1.0, epsilon = 1e-15);
}

#[test]
fn tensor_respects_dimension_ceiling() {
    let t = tol().with_max_dim(3);
    let tau2 = DensityOperator::<f64>::maximally_mixed(2);
    assert!(matches!(
        tensor(&tau2, &tau2, &t),
        Err(Error::DimensionOverflow { .. })
    ));
}

#[test]
fn partial_trace_round_trips_tensor_product() {
    let mut rng = ChaCha12Rng::seed_from_u64(3);
    let a = ginibre_density::<f64, _>(2, &mut rng);
    let b = ginibre_density::<f64, _>(3, &mut rng);
    let prod = tensor(&a, &b, &tol()).unwrap();
    let back_a = partial_trace(&prod, &[2, 3], &[0]).unwrap();
    let back_b = partial_trace(&prod, &[2, 3], &[1]).unwrap();
    assert!(trace_distance(&back_a, &a).unwrap() < 1e-13);
    assert!(trace_distance(&back_b, &b).unwrap() < 1e-13);
}

#[test]
fn partial_trace_of_bell_state_is_maximally_mixed() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bell = DensityOperator::<f64>::pure(&[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]);
    let reduced = partial_trace(&bell, &[2, 2], &[0]).unwrap();
    let tau = DensityOperator::<f64>::maximally_mixed(2);
    assert!(trace_distance(&reduced, &tau).unwrap() < 1e-14);
}

#[test]
fn partial_trace_orders_commute() {
    let mut rng = ChaCha12Rng::seed_from_u64(4);
    let rho = ginibre_density::<f64, _>(8, &mut rng);
    // Trace B then C versus C then B on a three-qubit state.
    let bc = partial_trace(&rho, &[2, 2, 2], &[0, 2]).unwrap();
    let b_then_c = partial_trace(&bc, &[2, 2], &[0]).unwrap();
    let cb = partial_trace(&rho, &[2, 2, 2], &[0, 1]).unwrap();
    let c_then_b = partial_trace(&cb, &[2, 2], &[0]).unwrap();
    assert!(trace_distance(&b_then_c, &c_then_b).unwrap() < 1e-12);
}

#[test]
fn partial_trace_rejects_wrong_dims() {
    let rho = DensityOperator::<f64>::maximally_mixed(4);
    assert!(matches!(
        partial_trace(&rho, &[2, 3], &[0]),
        Err(Error::DimMismatch { .. })
    ));
}

fn depolarizing_channel(p: f64) -> KrausChannel<f64> {
    let sx = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    let sy = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
    let sz = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
    let id = CMatrix::<f64>::identity(2, 2);
    let kraus = vec![
        id * c((1.0 - 3.0 * p / 4.0).sqrt(), 0.0),
        sx * c((p / 4.0).sqrt(), 0.0),
        sy * c((p / 4.0).sqrt(), 0.0),
        sz * c((p / 4.0).sqrt(), 0.0),
    ];
    KrausChannel::new(kraus, ChannelMode::TracePreserving, &tol()).unwrap()
}

#[test]
fn identity_channel_preserves_state() {
    let mut rng = ChaCha12Rng::seed_from_u64(5);
    let rho = ginibre_density::<f64, _>(3, &mut rng);
    let out = apply_channel(&KrausChannel::identity(3), &rho).unwrap();
    assert!(trace_distance(&out, &rho).unwrap() < 1e-14);
}

#[test]
fn fully_depolarizing_channel_maps_to_maximally_mixed() {
    let mut rng = ChaCha12Rng::seed_from_u64(6);
    let rho = ginibre_density::<f64, _>(2, &mut rng);
    let out = apply_channel(&depolarizing_channel(1.0), &rho).unwrap();
    let tau = DensityOperator::<f64>::maximally_mixed(2);
    assert!(trace_distance(&out, &tau).unwrap() < 1e-14);
}

#[test]
fn dephasing_channel_kills_plus_state_coherences() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = DensityOperator::<f64>::pure(&[c(s, 0.0), c(s, 0.0)]);
    let out = apply_channel(&KrausChannel::dephasing(2), &plus).unwrap();
    let tau = DensityOperator::<f64>::maximally_mixed(2);
    assert!(trace_distance(&out, &tau).unwrap() < 1e-14);
}

#[test]
fn trace_preserving_channels_preserve_trace_and_positivity() {
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    for _ in 0..50 {
        let rho = ginibre_density::<f64, _>(3, &mut rng);
        let ch = random_channel::<f64, _>(3, 3, 2, &mut rng, &tol()).unwrap();
        let out = apply_channel(&ch, &rho).unwrap();
        assert_abs_diff_eq!(out.as_hermitian().trace(), 1.0, epsilon = 1e-12);
        let min = out.as_hermitian().min_eigenvalue().unwrap();
        assert!(min > -1e-10, "negative eigenvalue {min}");
    }
}

#[test]
fn channel_rejects_dim_mismatch() {
    let rho = DensityOperator::<f64>::maximally_mixed(3);
    assert!(matches!(
        apply_channel(&KrausChannel::identity(2), &rho),
        Err(Error::DimMismatch { .. })
    ));
}

#[test]
fn trace_distance_contracts_under_channels() {
    let mut rng = ChaCha12Rng::seed_from_u64(8);
    for _ in 0..100 {
        let a = ginibre_density::<f64, _>(3, &mut rng);
        let b = ginibre_density::<f64, _>(3, &mut rng);
        let ch = random_channel::<f64, _>(3, 3, 3, &mut rng, &tol()).unwrap();
        let before = schatten_1_norm(&a.sub(&b).unwrap()).unwrap();
        let after = schatten_1_norm(
            &apply_channel(&ch, &a).unwrap().sub(&apply_channel(&ch, &b).unwrap()).unwrap(),
        )
        .unwrap();
        assert!(after <= before + 1e-10, "{after} > {before}");
    }
}

#[test]
fn helstrom_of_equal_states_has_zero_advantage() {
    let mut rng = ChaCha12Rng::seed_from_u64(9);
    let rho = ginibre_density::<f64, _>(3, &mut rng);
    let (_, adv) = helstrom(&rho, &rho).unwrap();
    assert_abs_diff_eq!(adv, 0.0, epsilon = 1e-12);
}

#[test]
fn helstrom_distinguishes_orthogonal_states_perfectly() {
    let zero = DensityOperator::<f64>::basis_state(2, 0);
    let one = DensityOperator::<f64>::basis_state(2, 1);
    let (lambda, adv) = helstrom(&zero, &one).unwrap();
    assert_abs_diff_eq!(adv, 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(lambda.matrix()[(0, 0)].re, 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(lambda.matrix()[(1, 1)].re, 0.0, epsilon = 1e-12);
}

#[test]
fn helstrom_advantage_is_half_the_one_norm() {
    let mut rng = ChaCha12Rng::seed_from_u64(10);
    for _ in 0..50 {
        let a = ginibre_density::<f64, _>(4, &mut rng);
        let b = ginibre_density::<f64, _>(4, &mut rng);
        let (_, adv) = helstrom(&a, &b).unwrap();
        let half_norm = 0.5 * schatten_1_norm(&a.sub(&b).unwrap()).unwrap();
        assert_abs_diff_eq!(adv, half_norm, epsilon = 1e-10);
    }
}

#[test]
fn helstrom_beats_random_effects() {
    let mut rng = ChaCha12Rng::seed_from_u64(11);
    let a = ginibre_density::<f64, _>(3, &mut rng);
    let b = ginibre_density::<f64, _>(3, &mut rng);
    let (_, adv) = helstrom(&a, &b).unwrap();
    let delta = a.sub(&b).unwrap();
    for _ in 0..1000 {
        let effect = random_effect::<f64, _>(3, &mut rng);
        let value = super::linalg::trace_product(effect.matrix(), delta.matrix()).re;
        assert!(value <= adv + 1e-10, "effect value {value} beats optimum {adv}");
    }
}

#[test]
fn povm_requires_completeness() {
    let half = HermitianOperator::new(diag(&[0.5, 0.5]), &tol()).unwrap();
    assert!(Povm::new(vec![half.clone(), half.clone()], &tol()).is_ok());
    assert!(Povm::new(vec![half], &tol()).is_err());
}

#[test]
fn povm_probabilities_sum_to_one() {
    let mut rng = ChaCha12Rng::seed_from_u64(12);
    let rho = ginibre_density::<f64, _>(2, &mut rng);
    let e0 = HermitianOperator::new(diag(&[1.0, 0.0]), &tol()).unwrap();
    let e1 = HermitianOperator::new(diag(&[0.0, 1.0]), &tol()).unwrap();
    let povm = Povm::new(vec![e0, e1], &tol()).unwrap();
    let probs = povm.probabilities(&rho).unwrap();
    assert_abs_diff_eq!(probs.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
}

#[test]
fn subnormalized_accepts_partial_weight_and_rejects_excess() {
    let ok = SubnormalizedOperator::new(diag(&[0.3, 0.2]), &tol()).unwrap();
    assert_abs_diff_eq!(ok.weight(), 0.5, epsilon = 1e-14);
    assert!(SubnormalizedOperator::new(diag(&[0.9, 0.4]), &tol()).is_err());
}

#[test]
fn generic_scalar_core_works_in_f32() {
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex::new(0.5f32, 0.0),
            Complex::new(0.1, 0.2),
            Complex::new(0.1, -0.2),
            Complex::new(0.5, 0.0),
        ],
    );
    let t = Tolerances::<f32> {
        herm: 1e-5,
        trace: 1e-5,
        psd_base: 1e-5,
        cptp: 1e-5,
        max_dim: 64,
    };
    let rho = validate_density(m, &t).unwrap();
    let norm = schatten_1_norm(rho.as_hermitian()).unwrap();
    assert!((norm - 1.0).abs() < 1e-5);
}
