//! Finite trigonometric series `F(x) = Σ f(n) e(λ_n x)` with `e(x) = e^{2πix}`.
//!
//! Two flavors: [`TrigSeries`] with nonnegative real coefficients (the object
//! every resonance bound applies to) and [`ComplexTrigSeries`] for the
//! simultaneous-approximation machinery. Both are immutable after
//! construction; derived series are new values.
//!
//! Frequencies are kept exactly as supplied (no fuzzy merging): the resonator
//! construction depends on reproducible subset sums of these doubles.

use crate::error::Error;
use crate::kernels::fejer_hat;
use crate::Result;
use num_complex::Complex64;
use serde::Deserialize;
use std::f64::consts::PI;
use std::path::Path;

/// One `f(n) e(λ_n x)` term of a real-coefficient series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub lambda: f64,
    pub coeff: f64,
}

/// Finite series with strictly increasing frequencies `λ_1 ≥ 0` and
/// coefficients `f(n) ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigSeries {
    terms: Vec<Term>,
}

impl TrigSeries {
    /// Builds a series from `(frequency, coefficient)` pairs.
    ///
    /// Frequencies must be finite, nonnegative and strictly increasing;
    /// coefficients finite and nonnegative.
    pub fn new(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let terms: Vec<Term> = pairs
            .into_iter()
            .map(|(lambda, coeff)| Term { lambda, coeff })
            .collect();
        for (i, t) in terms.iter().enumerate() {
            if !t.lambda.is_finite() || !t.coeff.is_finite() {
                return Err(Error::InvalidSeries(format!(
                    "non-finite term at index {i}: lambda = {}, f = {}",
                    t.lambda, t.coeff
                )));
            }
            if t.lambda < 0.0 {
                return Err(Error::InvalidSeries(format!(
                    "negative frequency {} at index {i}",
                    t.lambda
                )));
            }
            if t.coeff < 0.0 {
                return Err(Error::InvalidSeries(format!(
                    "negative coefficient {} at index {i}",
                    t.coeff
                )));
            }
            if i > 0 && terms[i - 1].lambda >= t.lambda {
                return Err(Error::InvalidSeries(format!(
                    "frequencies not strictly increasing at index {i}: {} then {}",
                    terms[i - 1].lambda,
                    t.lambda
                )));
            }
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `F(0) = Σ f(n)`, which also dominates `|F(x)|` everywhere.
    pub fn total_mass(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff).sum()
    }

    /// Lipschitz constant of `x ↦ Re(e^{iβ} F(x))`: `2π Σ f(n) λ_n`.
    pub fn lipschitz(&self) -> f64 {
        2.0 * PI * self.terms.iter().map(|t| t.coeff * t.lambda).sum::<f64>()
    }

    /// `e^{iβ} Σ f(n) e(λ_n x)`.
    pub fn evaluate(&self, x: f64, beta: f64) -> Complex64 {
        let sum = self
            .terms
            .iter()
            .map(|t| t.coeff * rotation(t.lambda * x))
            .sum::<Complex64>();
        Complex64::from_polar(1.0, beta) * sum
    }

    /// Real part of [`TrigSeries::evaluate`].
    pub fn evaluate_re(&self, x: f64, beta: f64) -> f64 {
        self.evaluate(x, beta).re
    }

    /// The smoothed companion `F_1` with coefficients
    /// `f(n) K̂((λ_N - λ_n)/λ_N)`, `N` the pivot index. Terms whose weight
    /// vanishes are dropped; the survivors are exactly the frequencies in
    /// `(0, 2λ_N)`.
    pub fn smooth(&self, pivot: usize) -> Result<SmoothedSeries> {
        if pivot >= self.terms.len() {
            return Err(Error::InvalidIndex {
                index: pivot,
                len: self.terms.len(),
            });
        }
        let pivot_lambda = self.terms[pivot].lambda;
        if pivot_lambda <= 0.0 {
            return Err(Error::ZeroPivotFrequency(pivot_lambda));
        }
        let smoothed = self
            .terms
            .iter()
            .filter_map(|t| {
                let w = fejer_hat((pivot_lambda - t.lambda) / pivot_lambda);
                (w > 0.0).then_some((t.lambda, t.coeff * w))
            })
            .collect::<Vec<_>>();
        Ok(SmoothedSeries {
            series: TrigSeries::new(smoothed)?,
            pivot_index: pivot,
            pivot_lambda,
        })
    }

    /// The loss term `4 F(0) / (π² Y λ_N)` in the pointwise inequality
    /// relating `max_{|u|≤Y/2} |Re(e^{iβ} F(x+u))|` to `Re(F_1(x))/2`.
    pub fn convolution_defect(&self, pivot: usize, y: f64) -> Result<f64> {
        if pivot >= self.terms.len() {
            return Err(Error::InvalidIndex {
                index: pivot,
                len: self.terms.len(),
            });
        }
        if !(y > 0.0) {
            return Err(Error::InvalidArgument(format!("Y must be positive, got {y}")));
        }
        let pivot_lambda = self.terms[pivot].lambda;
        if pivot_lambda <= 0.0 {
            return Err(Error::ZeroPivotFrequency(pivot_lambda));
        }
        Ok(4.0 * self.total_mass() / (PI * PI * y * pivot_lambda))
    }

    /// Loads a series from a JSON array of `{"lambda": .., "f": ..}` records.
    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: Vec<RealTermRecord> = serde_json::from_str(text)?;
        Self::new(raw.into_iter().map(|r| (r.lambda, r.f)))
    }

    /// Terms widened to complex coefficients (for the shared scan machinery).
    pub fn complex_terms(&self) -> Vec<(f64, Complex64)> {
        self.terms
            .iter()
            .map(|t| (t.lambda, Complex64::new(t.coeff, 0.0)))
            .collect()
    }
}

#[derive(Deserialize)]
struct RealTermRecord {
    lambda: f64,
    f: f64,
}

#[derive(Deserialize)]
struct ComplexTermRecord {
    lambda: f64,
    re: f64,
    #[serde(default)]
    im: f64,
}

/// Finite series with complex coefficients and strictly increasing real
/// frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexTrigSeries {
    terms: Vec<(f64, Complex64)>,
}

impl ComplexTrigSeries {
    pub fn new(pairs: impl IntoIterator<Item = (f64, Complex64)>) -> Result<Self> {
        let terms: Vec<(f64, Complex64)> = pairs.into_iter().collect();
        for (i, (lambda, c)) in terms.iter().enumerate() {
            if !lambda.is_finite() || !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::InvalidSeries(format!("non-finite term at index {i}")));
            }
            if i > 0 && terms[i - 1].0 >= *lambda {
                return Err(Error::InvalidSeries(format!(
                    "frequencies not strictly increasing at index {i}"
                )));
            }
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(f64, Complex64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ |f(n)|`, the trivial sup bound for `|F|`.
    pub fn coefficient_mass(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.norm()).sum()
    }

    /// Lipschitz constant of `x ↦ Re(e^{iβ} F(x))`: `2π Σ |f(n)| |λ_n|`.
    pub fn lipschitz(&self) -> f64 {
        2.0 * PI
            * self
                .terms
                .iter()
                .map(|(l, c)| c.norm() * l.abs())
                .sum::<f64>()
    }

    pub fn evaluate(&self, x: f64, beta: f64) -> Complex64 {
        let sum = self
            .terms
            .iter()
            .map(|(lambda, c)| c * rotation(lambda * x))
            .sum::<Complex64>();
        Complex64::from_polar(1.0, beta) * sum
    }

    pub fn evaluate_re(&self, x: f64, beta: f64) -> f64 {
        self.evaluate(x, beta).re
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: Vec<ComplexTermRecord> = serde_json::from_str(text)?;
        Self::new(
            raw.into_iter()
                .map(|r| (r.lambda, Complex64::new(r.re, r.im))),
        )
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn complex_terms(&self) -> Vec<(f64, Complex64)> {
        self.terms.clone()
    }
}

/// A [`TrigSeries`] together with the pivot that produced it from a base
/// series via the triangle weights `K̂((λ_N - λ_n)/λ_N)`.
#[derive(Debug, Clone)]
pub struct SmoothedSeries {
    series: TrigSeries,
    pivot_index: usize,
    pivot_lambda: f64,
}

impl SmoothedSeries {
    pub fn series(&self) -> &TrigSeries {
        &self.series
    }

    pub fn pivot_index(&self) -> usize {
        self.pivot_index
    }

    pub fn pivot_lambda(&self) -> f64 {
        self.pivot_lambda
    }
}

/// `e(t) = e^{2πit}` as a unit complex number.
#[inline]
pub(crate) fn rotation(t: f64) -> Complex64 {
    let (s, c) = (2.0 * PI * t).sin_cos();
    Complex64::new(c, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn series(pairs: &[(f64, f64)]) -> TrigSeries {
        TrigSeries::new(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn evaluate_single_term() {
        let f = series(&[(1.0, 1.0)]);
        let v = f.evaluate(0.0, 0.0);
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        // e(1/2) = -1
        let v = f.evaluate(0.5, 0.0);
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((f.evaluate_re(0.5, 0.0) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn evaluate_two_terms() {
        // e(0.25) + 2 e(0.5) = i - 2
        let f = series(&[(1.0, 1.0), (2.0, 2.0)]);
        let v = f.evaluate(0.25, 0.0);
        assert!((v - Complex64::new(-2.0, 1.0)).norm() < 1e-14);
        assert!((f.evaluate_re(0.25, 0.0) + 2.0).abs() < 1e-14);
    }

    #[test]
    fn phase_factors_out() {
        let f = series(&[(0.7, 0.3), (1.9, 1.1), (2.4, 0.5)]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let x: f64 = rng.gen_range(-20.0..20.0);
            let beta: f64 = rng.gen_range(-7.0..7.0);
            let lhs = f.evaluate(x, beta);
            let rhs = Complex64::from_polar(1.0, beta) * f.evaluate(x, 0.0);
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }

    #[test]
    fn mass_dominates_samples() {
        let f = series(&[(0.5, 0.2), (1.0, 1.0), (3.3, 0.7)]);
        let mass = f.total_mass();
        assert!((f.evaluate(0.0, 0.0).re - mass).abs() < 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let x: f64 = rng.gen_range(-100.0..100.0);
            assert!(f.evaluate(x, 0.0).norm() <= mass + 1e-12);
        }
    }

    #[test]
    fn smooth_weights() {
        // pivot lambda = 2: weights K̂(1/2) = 1/2, K̂(0) = 1, K̂(-1) = 0.
        let f = series(&[(1.0, 1.0), (2.0, 1.0), (4.0, 1.0)]);
        let s = f.smooth(1).unwrap();
        let kept = s.series().terms();
        assert_eq!(kept.len(), 2);
        assert_eq!(kept[0].lambda, 1.0);
        assert!((kept[0].coeff - 0.5).abs() < 1e-15);
        assert_eq!(kept[1].lambda, 2.0);
        assert!((kept[1].coeff - 1.0).abs() < 1e-15);
    }

    #[test]
    fn smooth_keeps_only_pivot_when_rest_far() {
        // every other frequency is >= 2 * pivot
        let f = series(&[(1.0, 3.0), (2.0, 1.0), (5.0, 2.0)]);
        let s = f.smooth(0).unwrap();
        assert_eq!(s.series().len(), 1);
        assert_eq!(s.series().terms()[0].lambda, 1.0);
        assert_eq!(s.series().terms()[0].coeff, 3.0);
    }

    #[test]
    fn smooth_rejects_bad_pivot() {
        let f = series(&[(0.0, 1.0), (1.0, 1.0)]);
        assert!(matches!(f.smooth(5), Err(Error::InvalidIndex { .. })));
        assert!(matches!(f.smooth(0), Err(Error::ZeroPivotFrequency(_))));
    }

    #[test]
    fn smoothing_twice_only_shrinks() {
        let f = series(&[(0.5, 0.4), (1.0, 1.0), (1.5, 0.8), (2.1, 0.3)]);
        let s1 = f.smooth(1).unwrap();
        let pivot_in_s1 = s1
            .series()
            .terms()
            .iter()
            .position(|t| t.lambda == 1.0)
            .unwrap();
        let s2 = s1.series().smooth(pivot_in_s1).unwrap();
        for t2 in s2.series().terms() {
            let t1 = s1
                .series()
                .terms()
                .iter()
                .find(|t| t.lambda == t2.lambda)
                .unwrap();
            assert!(t2.coeff <= t1.coeff + 1e-15);
        }
    }

    #[test]
    fn convolution_defect_closed_form() {
        let f = series(&[(1.0, PI * PI)]);
        let d = f.convolution_defect(0, 4.0).unwrap();
        assert!((d - 1.0).abs() < 1e-14);
        // doubling Y halves the defect
        let d2 = f.convolution_defect(0, 8.0).unwrap();
        assert!((d2 - 0.5).abs() < 1e-14);
        // empty series
        let e = TrigSeries::new([]).unwrap();
        assert_eq!(e.total_mass(), 0.0);
    }

    #[test]
    fn rejects_invalid_input() {
        assert!(TrigSeries::new([(1.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(TrigSeries::new([(2.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(TrigSeries::new([(-1.0, 1.0)]).is_err());
        assert!(TrigSeries::new([(1.0, -0.5)]).is_err());
        assert!(TrigSeries::new([(f64::NAN, 1.0)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"[{"lambda": 1.0, "f": 0.5}, {"lambda": 2.5, "f": 1.25}]"#;
        let f = TrigSeries::from_json_str(text).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.terms()[1].lambda, 2.5);

        let ctext = r#"[{"lambda": -1.0, "re": 0.0, "im": 1.0}, {"lambda": 2.0, "re": 1.0}]"#;
        let c = ComplexTrigSeries::from_json_str(ctext).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.terms()[0].1, Complex64::new(0.0, 1.0));
        assert_eq!(c.terms()[1].1, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn complex_series_mass_bound() {
        let c = ComplexTrigSeries::new([
            (-0.5, Complex64::new(0.3, -0.4)),
            (1.7, Complex64::new(0.0, 2.0)),
        ])
        .unwrap();
        let mass = c.coefficient_mass();
        assert!((mass - 2.5).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let x: f64 = rng.gen_range(-50.0..50.0);
            assert!(c.evaluate(x, 0.0).norm() <= mass + 1e-12);
        }
    }

    // Sampling check of the convolution inequality
    //   max_{|u|<=Y/2} |Re(e^{iβ} F(x+u))| >= Re(F_1(x))/2 - defect - grid slack.
    #[test]
    fn convolution_inequality_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..40 {
            let n_terms = rng.gen_range(2..=8);
            let mut lambda = 0.0;
            let mut pairs = Vec::new();
            for _ in 0..n_terms {
                lambda += rng.gen_range(0.1..1.5);
                pairs.push((lambda, rng.gen_range(0.0..2.0)));
            }
            let f = series(&pairs);
            let pivot = rng.gen_range(0..n_terms);
            let y: f64 = rng.gen_range(0.5..4.0);
            let beta: f64 = rng.gen_range(0.0..7.0);
            let x: f64 = rng.gen_range(-10.0..10.0);

            let f1 = f.smooth(pivot).unwrap();
            let defect = f.convolution_defect(pivot, y).unwrap();
            let rhs = 0.5 * f1.series().evaluate_re(x, 0.0) - defect;

            let grid = 4000;
            let step = y / grid as f64;
            let slack = f.lipschitz() * step;
            let mut best = f64::NEG_INFINITY;
            for j in 0..=grid {
                let u = -y / 2.0 + j as f64 * step;
                best = best.max(f.evaluate_re(x + u, beta).abs());
            }
            assert!(
                best >= rhs - slack,
                "max {best} < rhs {rhs} - slack {slack}"
            );
        }
    }

    proptest! {
        #[test]
        fn evaluate_conjugate_symmetry(x in -100.0f64..100.0) {
            // real coefficients: F(-x) = conj(F(x))
            let f = series(&[(0.3, 0.2), (1.0, 1.5), (2.2, 0.1)]);
            let a = f.evaluate(x, 0.0);
            let b = f.evaluate(-x, 0.0);
            prop_assert!((a - b.conj()).norm() < 1e-12);
        }
    }
}
