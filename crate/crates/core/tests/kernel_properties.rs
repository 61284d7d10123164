//! Property-level checks for the kernel module: equivalence of the two
//! closed forms, exact boundary behavior, the kernel PDE residual under
//! grid refinement, inverse-transform consistency, and gain-norm
//! convergence.

mod common;

use common::Lcg;
use fhn_etc::linalg::Matrix;
use fhn_etc::*;
use proptest::prelude::*;

/// Brute-force 60-term power series with explicit factorials.
fn series_oracle(x: f64, y: f64, lam_minus_a: f64) -> f64 {
    let mut sum = 0.0;
    for n in 0..60u32 {
        let nf: f64 = (1..=n).map(f64::from).product();
        sum -= (lam_minus_a / 4.0).powi(n as i32 + 1) * 2.0 * y
            * (x * x - y * y).powi(n as i32)
            / (nf * nf * f64::from(n + 1));
    }
    sum
}

const PARAM_SETS: [(f64, f64); 3] = [(-11.0, 1.0), (0.3, 2.0), (0.5, 0.5)];

#[test]
fn representation_equivalence_on_random_pairs() {
    let mut rng = Lcg::new(0x5EED_0001);
    for _ in 0..200 {
        let x = rng.next_f64();
        let y = rng.next_f64() * x;
        for (a, lambda) in PARAM_SETS {
            let p = KernelParams::new(a, lambda);
            let bessel_form = kernel_value(x, y, p).unwrap();
            let series = series_oracle(x, y, lambda - a);
            let tol = 1e-10 * (1.0 + bessel_form.abs());
            assert!(
                (bessel_form - series).abs() <= tol,
                "x={x}, y={y}, a={a}, lambda={lambda}: {bessel_form} vs {series}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn prop_representation_equivalence(x in 1e-6..=1.0f64, frac in 0.0..=1.0f64) {
        let y = frac * x;
        for (a, lambda) in PARAM_SETS {
            let p = KernelParams::new(a, lambda);
            let got = kernel_value(x, y, p).unwrap();
            let want = series_oracle(x, y, lambda - a);
            prop_assert!((got - want).abs() <= 1e-10 * (1.0 + got.abs()));
        }
    }

    #[test]
    fn prop_kernel_rejects_outside_triangle(x in 0.0..=1.0f64, y in 0.0..=1.0f64) {
        let p = KernelParams::new(-11.0, 1.0);
        let result = kernel_value(x, y, p);
        if y <= x {
            prop_assert!(result.is_ok());
        } else {
            prop_assert!(result.is_err());
        }
    }
}

#[test]
fn boundary_conditions_exact() {
    let p = KernelParams::new(-11.0, 1.0);
    let mut rng = Lcg::new(0x5EED_0002);
    for _ in 0..100 {
        let x = rng.next_f64();
        assert_eq!(kernel_value(x, 0.0, p).unwrap(), 0.0);
        let diag = kernel_value(x, x, p).unwrap();
        assert!((diag - (-(1.0 - (-11.0)) * x / 2.0)).abs() < 1e-12);
    }
}

/// Max PDE residual of second-order central differences on an `nn x nn`
/// triangular grid.
fn pde_residual(nn: usize, p: KernelParams) -> f64 {
    let h = 1.0 / nn as f64;
    let m = p.lambda - p.a;
    let k = |i: usize, j: usize| kernel_value(i as f64 * h, j as f64 * h, p).unwrap();
    let mut worst: f64 = 0.0;
    for i in 2..nn {
        for j in 1..i {
            let kxx = (k(i + 1, j) - 2.0 * k(i, j) + k(i - 1, j)) / (h * h);
            let kyy = (k(i, j + 1) - 2.0 * k(i, j) + k(i, j - 1)) / (h * h);
            worst = worst.max((kxx - kyy - m * k(i, j)).abs());
        }
    }
    worst
}

#[test]
fn kernel_pde_residual_second_order() {
    let p = KernelParams::new(-11.0, 1.0);
    let r60 = pde_residual(60, p);
    let r120 = pde_residual(120, p);
    let order = (r60 / r120).log2();
    assert!(
        order >= 1.8,
        "observed convergence order {order:.3} (residuals {r60:.3e}, {r120:.3e})"
    );
}

#[test]
fn inverse_transform_consistency_first_order() {
    let p = KernelParams::new(-11.0, 1.0);
    let mut residuals = Vec::new();
    for n in [20usize, 40, 80] {
        let grid = build_grid(n, 1, 1.0).unwrap();
        let t = transform_matrices(&grid, p);
        let prod = t.pi.matmul(&t.pi_inv);
        let r = prod.sub(&Matrix::identity(n)).operator_norm();
        residuals.push((grid.h, r));
    }
    // Monotone decrease under refinement.
    assert!(residuals[0].1 > residuals[1].1 && residuals[1].1 > residuals[2].1);
    // First-order behavior: residual/h stays within a narrow band.
    let ratios: Vec<f64> = residuals.iter().map(|(h, r)| r / h).collect();
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    assert!(
        max / min < 1.5,
        "residual/h ratios {ratios:?} are not O(h)-consistent"
    );
}

#[test]
fn gain_norm_converges_under_refinement() {
    let p = KernelParams::new(-11.0, 1.0);
    let norm_at = |n: usize| {
        let grid = build_grid(n, 1, 1.0).unwrap();
        let gains = gain_vector(&grid, p);
        discrete_l2_norm(&gains, grid.h)
    };
    let n40 = norm_at(40);
    let n80 = norm_at(80);
    assert!(
        (n80 - n40).abs() / n80 <= 0.01,
        "gain norms {n40} and {n80} differ by more than 1%"
    );
}
