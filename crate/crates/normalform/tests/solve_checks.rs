//! Independent checks of the order-by-order solve: the homological matrix
//! and its kernel, closed forms for the dressing coefficients and the
//! obstruction, gauge behavior, and randomized end-to-end runs.

use diffpoly::Rat;
use normalform::linalg;
use normalform::model::{fput_model, toda_model, Model};
use normalform::solve::{
    obstruction, septic_bracket_matrix, solve, solve_first_order, KERNEL, SLOT_COUNT,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn frac(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// The homological matrix frozen as reference data: entry `[i][j]` is the
/// slot-`i+1` coefficient of the bracket of cubic-basis element `j+1` with
/// the cubic flow.
const MATRIX: [[i64; 13]; SLOT_COUNT] = [
    [60, -6, -3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [24, 0, -3, 0, 0, -3, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, -3, 0, 0, 0, 0, 0, 0, 0],
    [0, 6, 0, -6, -3, -18, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 12, -18, -6, -72, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, -3, -21, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, -6, -2, -18, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 3, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 54, 12, -6, -3, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 24, 0, 0, -3, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 36, 0, -6, -3, 0, 0, 0, 0],
    [0, 0, 0, 0, 3, -3, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 6, -18, 0, 0, 0, 0, -6, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 3, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 6, -6, 0, 0, 0],
    [0, 0, 0, 6, -10, -18, 0, 0, 0, 0, 0, 0, -6],
    [0, 6, -6, 0, 3, 6, 0, 0, 0, 0, 0, -6, 0],
    [0, 0, 0, 0, 6, 18, 0, 6, -9, 0, 6, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 6, 6, 0, 0, 0],
    [0, -6, 6, -3, 3, 3, 0, 0, 0, 0, 0, 6, 3],
];

#[test]
fn homological_matrix_matches_frozen_data() {
    let m = septic_bracket_matrix().unwrap();
    for i in 0..SLOT_COUNT {
        for j in 0..13 {
            assert_eq!(
                m[i][j],
                int(MATRIX[i][j]),
                "matrix entry ({}, {})",
                i + 1,
                j + 1
            );
        }
    }
}

#[test]
fn homological_matrix_has_full_column_rank_and_frozen_kernel() {
    let m = septic_bracket_matrix().unwrap();
    assert_eq!(linalg::rank(&m), 13);

    // Every frozen kernel vector annihilates every column.
    for (vi, v) in KERNEL.iter().enumerate() {
        for j in 0..13 {
            let mut acc = Rat::zero();
            for i in 0..SLOT_COUNT {
                acc += int(v[i]) * &m[i][j];
            }
            assert!(acc.is_zero(), "kernel vector {} vs column {}", vi + 1, j + 1);
        }
    }

    // The kernel vectors are independent; with rank 13 in a 20-dimensional
    // slot space they therefore span the full cokernel.
    let kernel_rows: Vec<Vec<Rat>> = KERNEL
        .iter()
        .map(|v| v.iter().map(|&x| int(x)).collect())
        .collect();
    assert_eq!(linalg::rank(&kernel_rows), 7);
}

/// Closed forms of the dressing coefficients in terms of the model slots
/// (independent oracle for the linear solve).
fn lambda_oracle(model: &Model) -> [Rat; 6] {
    let a = &model.a;
    let b = &model.b;
    let kappa = model.kappa().unwrap();
    let a1 = &a[0];
    let a2 = &a[1];
    let a3 = &a[2];
    let a4 = &a[3];
    let l1 = int(-14) + &b[2] + &b[7];
    let l2 = int(42) + &b[11] - int(8) * &b[2] + &b[5]
        - frac(2, 3) * &kappa * (a2 - int(10)) * (a2 - int(10));
    let l3 = int(28) + &b[9] + &b[13] - int(2) * &b[2] - int(10) * &b[7]
        + frac(2, 3) * &kappa * (int(100) - int(20) * a2 + a2 * a2);
    let l5 = int(10) * &b[2] - int(2) * &b[5] + int(10) * &b[7] - int(4) * &b[9] + &b[10]
        - int(6) * &b[11]
        + &b[12]
        + &b[17]
        + &kappa
            * (int(-100) + int(40) * a2 - a2 * a2 - int(10) * a3 - frac(2, 3) * a2 * a3
                + frac(1, 3) * a3 * a3
                - int(10) * a4
                + frac(1, 3) * a3 * a4);
    let l6 = int(-56) + int(4) * &b[2] + int(20) * &b[7] - int(2) * &b[9] - int(6) * &b[13]
        + &b[14]
        + &b[18]
        + frac(2, 3)
            * &kappa
            * (int(-100) + a2 * a2 + int(10) * a3 - a2 * a3 + int(10) * a4 - a2 * a4);
    let l7 = frac(28, 3) + &b[15] / int(2) + &b[16] + &b[19] - frac(7, 3) * &b[2] + &b[5] / int(3)
        + &kappa / int(18)
            * (int(-300) + int(70) * a2 - a2 * a2 - a2 * a3 - int(3) * a1 * a4 + int(6) * a2 * a4);
    [l1, l2, l3, l5, l6, l7]
}

#[test]
fn plain_cubic_chain_solution_values() {
    let model = fput_model(&int(1), &Rat::zero(), &Rat::zero()).unwrap();
    let sol = solve(&model, &Rat::zero()).unwrap();

    // First order: generator coefficients and residual dressings.
    assert_eq!(
        sol.first.a,
        [frac(-40, 3), frac(-65, 3), frac(10, 3), frac(-20, 3)]
    );
    assert_eq!(sol.first.a_tilde, [int(-130), int(-20), int(10)]);

    // Second order: the dressing coefficients for beta = gamma = 0.
    assert_eq!(sol.second.lambda[0], int(28));
    assert_eq!(sol.second.lambda[1], int(-854));
    assert_eq!(sol.second.lambda[2], int(84));
    assert_eq!(sol.second.lambda[3], int(0));
    assert_eq!(sol.second.lambda[4], int(6720));
    assert_eq!(sol.second.lambda[5], int(1372));
    assert_eq!(sol.second.lambda[6], int(-427));

    // Obstruction: r = -(7560/alpha^3)(14 alpha^3 - 27 alpha beta
    // + 12 gamma) = -105840, rho = -r/9.
    assert_eq!(sol.r, int(-105_840));
    assert_eq!(sol.second.rho, int(11_760));
}

#[test]
fn dressings_depend_on_beta_as_frozen() {
    // For the general chain: lambda2 = 1260 q - 854 with q = beta/alpha^2,
    // lambda5 = 420(16 - 63 q + 54 q^2), lambda6 = 28(49 - 90 q),
    // lambda7 = 630 q - 427.
    for (alpha, beta) in [(int(1), frac(1, 2)), (int(2), int(3)), (frac(1, 3), frac(-2, 5))] {
        let q = &beta / (&alpha * &alpha);
        let model = fput_model(&alpha, &beta, &frac(1, 7)).unwrap();
        let sol = solve(&model, &Rat::zero()).unwrap();
        assert_eq!(sol.second.lambda[0], int(28));
        assert_eq!(sol.second.lambda[1], int(1260) * &q - int(854));
        assert_eq!(sol.second.lambda[2], int(84));
        assert_eq!(
            sol.second.lambda[4],
            int(420) * (int(16) - int(63) * &q + int(54) * &q * &q)
        );
        assert_eq!(sol.second.lambda[5], int(28) * (int(49) - int(90) * &q));
        assert_eq!(sol.second.lambda[6], int(630) * &q - int(427));
    }
}

#[test]
fn obstruction_closed_form_for_chains() {
    let cases = [
        (int(1), int(0), int(0)),
        (int(1), frac(2, 3), frac(1, 3)),
        (int(2), frac(-1, 2), frac(3, 5)),
        (frac(3, 4), frac(5, 6), int(2)),
        (int(-1), frac(1, 3), frac(-2, 7)),
    ];
    for (alpha, beta, gamma) in cases {
        let model = fput_model(&alpha, &beta, &gamma).unwrap();
        let r = obstruction(&model).unwrap();
        let a3 = &alpha * &alpha * &alpha;
        let expected =
            -(int(7560) / &a3) * (int(14) * &a3 - int(27) * &alpha * &beta + int(12) * &gamma);
        assert_eq!(r, expected, "alpha={alpha} beta={beta} gamma={gamma}");
    }
}

#[test]
fn integrable_tangent_chain_has_no_obstruction() {
    for alpha in [int(1), int(2), frac(-3, 5)] {
        let model = toda_model(&alpha).unwrap();
        let sol = solve(&model, &Rat::zero()).unwrap();
        assert!(sol.r.is_zero(), "alpha = {alpha}");
        assert!(sol.second.rho.is_zero());
    }
}

#[test]
fn gauge_parameter_shifts_generator_not_normal_form_shape() {
    let model = fput_model(&int(1), &frac(1, 4), &frac(1, 8)).unwrap();
    let base = solve(&model, &Rat::zero()).unwrap();
    let shifted = solve(&model, &frac(3, 2)).unwrap();
    // All dressings except lambda4 itself agree, as does the obstruction.
    for i in [0usize, 1, 2, 4, 5, 6] {
        assert_eq!(base.second.lambda[i], shifted.second.lambda[i], "lambda{}", i + 1);
    }
    assert_eq!(base.second.rho, shifted.second.rho);
    assert_eq!(base.r, shifted.r);
    // The generator absorbs the gauge: at least one coefficient moves.
    assert_ne!(base.second.b, shifted.second.b);
    assert_ne!(base.second.n7, shifted.second.n7);
}

#[test]
fn already_normal_fifth_order_needs_no_generator() {
    // A model whose fifth order already has the integrable shape
    // (A1, A2, A3) = (20, 10, 30) gets a zero quadratic generator.
    let mut model = fput_model(&int(1), &int(0), &int(0)).unwrap();
    model.a = [int(20), int(10), int(30), int(5)];
    let first = solve_first_order(&model).unwrap();
    assert!(first.g2.is_zero());
    assert_eq!(first.a_tilde, [int(5), int(0), int(0)]);
    assert_eq!(
        first.n5,
        model.flow_parts().unwrap()[2],
        "normal form equals the flow when nothing needs removing"
    );
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rat {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=4);
    frac(num, den)
}

#[test]
fn randomized_models_solve_with_all_internal_checks() {
    // Ten random slot models: the closed forms for the generator, cascade
    // and normal forms are polynomial identities in the slots, so the solve
    // (whose every step is engine-verified internally) must succeed for all
    // of them, and the dressings must match the independent closed forms.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    for case in 0..10 {
        let mut model = fput_model(&int(1), &Rat::zero(), &Rat::zero()).unwrap();
        model.a = [
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
        ];
        for slot in model.b.iter_mut() {
            *slot = random_rational(&mut rng);
        }
        let lambda4 = random_rational(&mut rng);
        let sol = solve(&model, &lambda4).expect("randomized solve");

        let oracle = lambda_oracle(&model);
        assert_eq!(sol.second.lambda[0], oracle[0], "case {case} lambda1");
        assert_eq!(sol.second.lambda[1], oracle[1], "case {case} lambda2");
        assert_eq!(sol.second.lambda[2], oracle[2], "case {case} lambda3");
        assert_eq!(sol.second.lambda[4], oracle[3], "case {case} lambda5");
        assert_eq!(sol.second.lambda[5], oracle[4], "case {case} lambda6");
        assert_eq!(sol.second.lambda[6], oracle[5], "case {case} lambda7");

        // Cascade identity: tildeB4 - tildeB5/2 + tildeB6 + tildeB20 = 0.
        let tb = &sol.second.tilde_b;
        let combo = &tb[3] - &tb[4] / int(2) + &tb[5] + &tb[19];
        assert!(combo.is_zero(), "case {case} cascade identity");
    }
}
