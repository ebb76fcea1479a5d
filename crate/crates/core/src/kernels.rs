//! The two auxiliary scalar functions behind every estimate in this crate:
//! the Fejér kernel `K(u) = (sin(πu)/(πu))²` and the Gaussian
//! `Φ(u) = e^{-πu²}`, together with their Fourier transforms under the
//! convention `f̂(u) = ∫ f(x) e(-ux) dx` with `e(x) = e^{2πix}`.
//!
//! `K̂(u) = max(0, 1 - |u|)` is the triangle on `[-1, 1]`; the Gaussian is
//! its own transform. All downstream modules assume this convention.

use std::f64::consts::PI;

/// Threshold below which the squared sinc is evaluated as its limit value.
/// At `|u| < 1e-8` the true value differs from 1 by less than `(πu)²/3 ≈ 3e-16`.
const SINC_CUTOFF: f64 = 1e-8;

/// Fejér kernel `K(u) = (sin(πu)/(πu))²`, with `K(0) = 1`.
///
/// Nonnegative everywhere, at most 1, vanishes at nonzero integers.
pub fn fejer(u: f64) -> f64 {
    assert!(u.is_finite(), "fejer: non-finite argument {u}");
    if u.abs() < SINC_CUTOFF {
        return 1.0;
    }
    let s = (PI * u).sin() / (PI * u);
    (s * s).min(1.0)
}

/// Fourier transform of the Fejér kernel: `max(0, 1 - |u|)`.
pub fn fejer_hat(u: f64) -> f64 {
    assert!(u.is_finite(), "fejer_hat: non-finite argument {u}");
    (1.0 - u.abs()).max(0.0)
}

/// Gaussian `Φ(u) = e^{-πu²}`; strictly positive, even, `Φ(0) = 1`.
pub fn gaussian(u: f64) -> f64 {
    assert!(u.is_finite(), "gaussian: non-finite argument {u}");
    (-PI * u * u).exp()
}

/// Fourier transform of the Gaussian. It is its own transform.
#[inline]
pub fn gaussian_hat(u: f64) -> f64 {
    gaussian(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Independent quadrature oracle for the transform identities: composite
    // Simpson over [-half, half] of f(x) * cos(2*pi*u*x) (the sine part
    // vanishes for even f).
    fn transform_by_simpson(f: impl Fn(f64) -> f64, u: f64, half: f64, n: usize) -> f64 {
        let n = n + n % 2;
        let h = 2.0 * half / n as f64;
        let g = |x: f64| f(x) * (2.0 * PI * u * x).cos();
        let mut acc = g(-half) + g(half);
        for j in 1..n {
            let x = -half + j as f64 * h;
            acc += if j % 2 == 1 { 4.0 * g(x) } else { 2.0 * g(x) };
        }
        acc * h / 3.0
    }

    #[test]
    fn fejer_point_values() {
        assert_eq!(fejer(0.0), 1.0);
        assert!(fejer(1.0).abs() < 1e-30);
        // (sin(pi/2)/(pi/2))^2 = 4/pi^2
        let expect = 4.0 / (PI * PI);
        assert!((fejer(0.5) - expect).abs() < 1e-15);
        assert!((expect - 0.405285).abs() < 1e-6);
    }

    #[test]
    fn fejer_hat_point_values() {
        assert_eq!(fejer_hat(0.0), 1.0);
        assert_eq!(fejer_hat(0.5), 0.5);
        assert_eq!(fejer_hat(2.0), 0.0);
        assert_eq!(fejer_hat(-0.25), 0.75);
    }

    #[test]
    fn gaussian_point_values() {
        assert_eq!(gaussian(0.0), 1.0);
        assert!((gaussian(1.0) - (-PI).exp()).abs() < 1e-18);
        assert!(((-PI).exp() - 0.0432139).abs() < 1e-7);
        assert_eq!(gaussian(1.0), gaussian(-1.0));
    }

    #[test]
    fn evenness_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let u: f64 = rng.gen_range(-50.0..50.0);
            assert_eq!(fejer(u), fejer(-u));
            assert_eq!(gaussian(u), gaussian(-u));
        }
    }

    #[test]
    fn fejer_transform_matches_quadrature() {
        // Integrate K(x) e(-ux) over |x| <= 200; K decays like 1/x^2 so the
        // tail contributes ~1/(pi^2 * 200) per unit, small enough for 1e-6
        // once the oscillation averages out.
        for &u in &[0.0, 0.25, 0.5, 0.9] {
            let q = transform_by_simpson(fejer, u, 200.0, 4_000_000);
            assert!(
                (q - fejer_hat(u)).abs() < 1e-6,
                "u = {u}: quadrature {q} vs closed form {}",
                fejer_hat(u)
            );
        }
    }

    #[test]
    fn gaussian_transform_matches_quadrature() {
        for &u in &[0.0, 0.25, 0.5, 0.9] {
            let q = transform_by_simpson(gaussian, u, 10.0, 200_000);
            assert!(
                (q - gaussian_hat(u)).abs() < 1e-12,
                "u = {u}: quadrature {q} vs closed form {}",
                gaussian_hat(u)
            );
        }
    }

    #[test]
    fn fejer_near_singularity_stays_bounded() {
        for k in 1..=40 {
            let u = 2f64.powi(-k);
            let v = fejer(u);
            assert!((0.0..=1.0).contains(&v), "fejer(2^-{k}) = {v}");
        }
    }

    #[test]
    #[should_panic(expected = "non-finite")]
    fn rejects_nan() {
        fejer(f64::NAN);
    }
}
