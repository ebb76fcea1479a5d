//! Subset-sum resonators and certified resonance lower bounds.
//!
//! Given a series `F` and a selected set of its frequencies
//! `λ_m`, `m ∈ M`, the resonator is `R(x) = Σ_ℓ e(d_ℓ x)` where the `d_ℓ`
//! are the minima of the nonempty buckets `[(j-1)w, jw)`, `w = γ log T / T`,
//! of the set `A` of all `2^M` subset sums of the selected frequencies.
//! `R` amplifies exactly the selected terms of `F`: the weighted moments
//!
//! ```text
//! J1 = ∫ F(x) |R(x)|² Φ(x log T / T) dx,   J2 = ∫ |R(x)|² Φ(x log T / T) dx
//! ```
//!
//! satisfy `J1/J2 ≥ (1/4) Σ_{m∈M} f(m)` (direct mode; an extra triangle
//! weight `K̂ ≥ 1/2` appears in smoothed mode), and `J1/J2` minus an exactly
//! computed discard bracket is a lower bound for `max Re F` on `[Y, T]`.
//!
//! Both moments have closed forms through the Gaussian transform; they are
//! evaluated by windowed pair enumeration with a certified truncation bound,
//! and can be independently cross-checked by direct numerical quadrature
//! ([`quadrature_oracle_j`]).

use crate::error::Error;
use crate::kernels::{fejer_hat, gaussian};
use crate::series::{SmoothedSeries, TrigSeries};
use crate::Result;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Largest admissible bucket parameter: `Φ(γ) ≥ 1/2` exactly on `(0, γ_max]`,
/// which is what the per-frequency lemma needs.
pub const GAMMA_MAX: f64 = 0.469718639179018; // sqrt(ln 2 / pi)

/// Default bucket parameter.
pub const DEFAULT_GAMMA: f64 = 0.25;

/// Pair-enumeration window `W`: pairs with Gaussian argument above `W` are
/// dropped. `Φ(4) = e^{-16π} < 2e-22`, so the dropped mass is negligible and
/// is reported as a certified truncation bound.
pub const PAIR_WINDOW: f64 = 4.0;

/// Hard cap on the cardinality of the selected set (the subset-sum
/// enumeration is `2^M` in time and memory).
pub const MAX_SELECTED: usize = 30;

/// Which lower-bound statement a certificate targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremMode {
    /// Bound `max |Re(e^{iβ} F)|` through the smoothed series `F_1`
    /// (requires a pivot and the constraint `2|λ_m - λ_N| ≤ λ_N`).
    Smoothed,
    /// Bound `max Re F` directly on the raw series.
    Direct,
}

/// Parameters of a resonance experiment.
#[derive(Debug, Clone)]
pub struct ResonatorConfig {
    /// Indices into the series of the selected (amplified) terms.
    pub selected: Vec<usize>,
    /// Scale parameter `X ≥ 1`; the effective length is `T = 2^M X`.
    pub x: f64,
    /// Inner cutoff `Y ≥ 1`, `Y < T`.
    pub y: f64,
    /// Bucket parameter in `(0, GAMMA_MAX]`.
    pub gamma: f64,
    /// Pivot index (smoothed mode only).
    pub pivot: Option<usize>,
    /// Phase of the smoothed-mode statement, in radians.
    pub beta: f64,
}

impl ResonatorConfig {
    /// Number of selected terms.
    pub fn m(&self) -> usize {
        self.selected.len()
    }

    /// Effective length `T = 2^M X`.
    pub fn t(&self) -> f64 {
        (self.m() as f64).exp2() * self.x
    }

    /// Checks every precondition against the series; smoothed mode also
    /// enforces `2|λ_m - λ_N| ≤ λ_N` for every selected `m`.
    pub fn validate(&self, series: &TrigSeries, mode: TheoremMode) -> Result<()> {
        if self.selected.is_empty() {
            return Err(Error::InvalidConfig("selected set is empty".into()));
        }
        if self.selected.len() > MAX_SELECTED {
            return Err(Error::SubsetTooLarge(self.selected.len()));
        }
        let mut seen = self.selected.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.selected.len() {
            return Err(Error::InvalidConfig("selected indices repeat".into()));
        }
        for &i in &self.selected {
            if i >= series.len() {
                return Err(Error::InvalidIndex {
                    index: i,
                    len: series.len(),
                });
            }
        }
        if !self.x.is_finite() || self.x < 1.0 {
            return Err(Error::InvalidConfig(format!("X must be >= 1, got {}", self.x)));
        }
        if !self.y.is_finite() || self.y < 1.0 {
            return Err(Error::InvalidConfig(format!("Y must be >= 1, got {}", self.y)));
        }
        let t = self.t();
        if !(t > self.y) {
            return Err(Error::InvalidConfig(format!(
                "need T = 2^M X > Y (T = {t}, Y = {})",
                self.y
            )));
        }
        if !(self.gamma > 0.0 && self.gamma <= GAMMA_MAX) {
            return Err(Error::InvalidConfig(format!(
                "gamma must lie in (0, {GAMMA_MAX}], got {}",
                self.gamma
            )));
        }
        if !self.beta.is_finite() {
            return Err(Error::NonFinite("beta"));
        }
        if mode == TheoremMode::Smoothed {
            let pivot = self.pivot.ok_or_else(|| {
                Error::InvalidConfig("smoothed mode requires a pivot index".into())
            })?;
            if pivot >= series.len() {
                return Err(Error::InvalidIndex {
                    index: pivot,
                    len: series.len(),
                });
            }
            let lambda_n = series.terms()[pivot].lambda;
            if lambda_n <= 0.0 {
                return Err(Error::ZeroPivotFrequency(lambda_n));
            }
            for &i in &self.selected {
                let lambda_m = series.terms()[i].lambda;
                if 2.0 * (lambda_m - lambda_n).abs() > lambda_n {
                    return Err(Error::PivotConstraint {
                        index: i,
                        lambda_m,
                        lambda_n,
                    });
                }
            }
        }
        Ok(())
    }
}

/// All `2^M` subset sums of `lambdas`, sorted ascending, exact duplicates
/// collapsed. The empty sum 0 is always present.
///
/// Sums are accumulated in ascending-frequency order, so the output does not
/// depend on the order of the input list.
pub fn subset_sums(lambdas: &[f64]) -> Result<Vec<f64>> {
    Ok(subset_sums_with_masks(lambdas)?.into_iter().map(|(s, _)| s).collect())
}

/// Subset sums paired with the generating subset (bit `i` set = the `i`-th
/// smallest frequency participates). On exact collisions the representative
/// with the smallest mask is kept.
fn subset_sums_with_masks(lambdas: &[f64]) -> Result<Vec<(f64, u32)>> {
    if lambdas.len() > MAX_SELECTED {
        return Err(Error::SubsetTooLarge(lambdas.len()));
    }
    for &l in lambdas {
        if !l.is_finite() {
            return Err(Error::NonFinite("subset-sum frequency"));
        }
    }
    let mut sorted = lambdas.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut sums: Vec<(f64, u32)> = vec![(0.0, 0)];
    sums.reserve(1 << sorted.len());
    for (bit, &l) in sorted.iter().enumerate() {
        let prev = sums.len();
        for i in 0..prev {
            let (s, mask) = sums[i];
            sums.push((s + l, mask | (1 << bit)));
        }
    }
    sums.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sums.dedup_by_key(|&mut (s, _)| s);
    Ok(sums)
}

/// Minima of the nonempty half-open buckets `[(j-1) * width, j * width)`,
/// `j ≥ 1`, of a sorted ascending list. Returns `(value, bucket index)` pairs
/// in increasing order.
pub fn bucket_minima(sorted: &[f64], width: f64) -> Vec<(f64, u64)> {
    assert!(width > 0.0 && width.is_finite(), "bucket width must be positive");
    let mut out: Vec<(f64, u64)> = Vec::new();
    for &a in sorted {
        let j = (a / width).floor() as u64 + 1;
        match out.last() {
            Some(&(_, last_j)) if last_j == j => {}
            _ => out.push((a, j)),
        }
    }
    out
}

/// The resonator `R(x) = Σ_{ℓ ≤ L} e(d_ℓ x)` plus its construction metadata.
#[derive(Debug, Clone)]
pub struct Resonator {
    d: Vec<f64>,
    bucket_index: Vec<u64>,
    masks: Vec<u32>,
    selected_lambdas: Vec<f64>,
    t: f64,
    gamma: f64,
}

impl Resonator {
    /// Builds the resonator for the selected frequencies of `series`.
    pub fn build(cfg: &ResonatorConfig, series: &TrigSeries) -> Result<Self> {
        let lambdas: Vec<f64> = cfg
            .selected
            .iter()
            .map(|&i| series.terms()[i].lambda)
            .collect();
        Self::from_frequencies(&lambdas, cfg.t(), cfg.gamma)
    }

    /// Builds a resonator directly from a list of frequencies, an effective
    /// length `T > 1` and a bucket parameter.
    pub fn from_frequencies(lambdas: &[f64], t: f64, gamma: f64) -> Result<Self> {
        if !(t > 1.0) {
            return Err(Error::DegenerateLength(t));
        }
        if !(gamma > 0.0 && gamma <= GAMMA_MAX) {
            return Err(Error::InvalidConfig(format!(
                "gamma must lie in (0, {GAMMA_MAX}], got {gamma}"
            )));
        }
        let sums = subset_sums_with_masks(lambdas)?;
        let width = gamma * t.ln() / t;
        let mut d = Vec::new();
        let mut bucket_index = Vec::new();
        let mut masks = Vec::new();
        for &(a, mask) in &sums {
            let j = (a / width).floor() as u64 + 1;
            if bucket_index.last() != Some(&j) {
                d.push(a);
                bucket_index.push(j);
                masks.push(mask);
            }
        }
        let mut selected_lambdas = lambdas.to_vec();
        selected_lambdas.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(Self {
            d,
            bucket_index,
            masks,
            selected_lambdas,
            t,
            gamma,
        })
    }

    /// Number of resonator terms `L ≤ 2^M`.
    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// The bucket minima `d_1 < d_2 < …`.
    pub fn d(&self) -> &[f64] {
        &self.d
    }

    /// Strictly increasing bucket indices `j_ℓ`.
    pub fn bucket_indices(&self) -> &[u64] {
        &self.bucket_index
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn bucket_width(&self) -> f64 {
        self.gamma * self.t.ln() / self.t
    }

    /// Sorted selected frequencies the subset sums were built from.
    pub fn selected_lambdas(&self) -> &[f64] {
        &self.selected_lambdas
    }

    /// Recomputes `d_ℓ` from its recorded subset, in the same accumulation
    /// order as the original enumeration (so equality is exact).
    pub fn reconstruct(&self, ell: usize) -> f64 {
        let mask = self.masks[ell];
        let mut s = 0.0;
        for (bit, &l) in self.selected_lambdas.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                s += l;
            }
        }
        s
    }

    /// `R(x)` evaluated directly.
    pub fn evaluate(&self, x: f64) -> Complex64 {
        self.d
            .iter()
            .map(|&dl| crate::series::rotation(dl * x))
            .sum()
    }

    /// The guaranteed floor `L T / log T ≤ J2`.
    pub fn j2_lower_bound(&self) -> f64 {
        self.len() as f64 * self.t / self.t.ln()
    }
}

/// A windowed closed-form evaluation together with an upper bound on the
/// (positive) mass dropped by the window.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CertifiedValue {
    pub value: f64,
    /// The true value lies in `[value, value + truncation]`.
    pub truncation: f64,
}

/// `J2 = (T/log T) Σ_{k,ℓ} Φ̂(T (d_k - d_ℓ) / log T)`, by symmetric windowed
/// enumeration over the sorted `d`. Always at least `L T / log T`.
pub fn compute_j2(res: &Resonator) -> CertifiedValue {
    let l = res.len();
    let log_t = res.t.ln();
    let scale = res.t / log_t;
    let win = PAIR_WINDOW * log_t / res.t;

    let mut off = 0.0;
    let mut enumerated: u64 = l as u64; // diagonal pairs
    for ell in 0..l {
        for k in ell + 1..l {
            let gap = res.d[k] - res.d[ell];
            if gap > win {
                break;
            }
            off += gaussian(gap * res.t / log_t);
            enumerated += 2;
        }
    }
    let value = scale * (l as f64 + 2.0 * off);
    let dropped = (l as u64 * l as u64 - enumerated) as f64;
    CertifiedValue {
        value,
        truncation: scale * dropped * gaussian(PAIR_WINDOW),
    }
}

/// `J1 = (T/log T) Σ_{k,ℓ} Σ_n f(n) Φ̂(T (λ_n + d_ℓ - d_k) / log T)` for the
/// series as given (pass the smoothed series to include triangle weights).
/// For every `(n, ℓ)` the admissible `k` window is located by binary search.
pub fn compute_j1(res: &Resonator, series: &TrigSeries) -> CertifiedValue {
    let l = res.len();
    let log_t = res.t.ln();
    let scale = res.t / log_t;
    let win = PAIR_WINDOW * log_t / res.t;

    let mut total = 0.0;
    let mut trunc = 0.0;
    for term in series.terms() {
        let mut inner = 0.0;
        let mut enumerated: u64 = 0;
        for &dl in &res.d {
            let target = term.lambda + dl;
            let lo = res.d.partition_point(|&v| v < target - win);
            let hi = res.d.partition_point(|&v| v <= target + win);
            for k in lo..hi {
                inner += gaussian((target - res.d[k]) * res.t / log_t);
            }
            enumerated += (hi - lo) as u64;
        }
        total += term.coeff * inner;
        let dropped = (l as u64 * l as u64 - enumerated) as f64;
        trunc += term.coeff * dropped;
    }
    CertifiedValue {
        value: scale * total,
        truncation: scale * trunc * gaussian(PAIR_WINDOW),
    }
}

/// The per-frequency double sum `Σ_{k,ℓ} Φ(T |λ_m + d_ℓ - d_k| / log T)`.
///
/// For resonators built with `γ ≤ GAMMA_MAX` this is at least `L/4`; the
/// windowed evaluation only drops positive terms, so the returned value is a
/// lower bound of the true sum.
pub fn per_m_lemma(res: &Resonator, m_lambda: f64) -> f64 {
    let log_t = res.t.ln();
    let win = PAIR_WINDOW * log_t / res.t;
    let mut sum = 0.0;
    for &dl in &res.d {
        let target = m_lambda + dl;
        let lo = res.d.partition_point(|&v| v < target - win);
        let hi = res.d.partition_point(|&v| v <= target + win);
        for k in lo..hi {
            sum += gaussian((target - res.d[k]) * res.t / log_t);
        }
    }
    sum
}

/// Per-selected-frequency diagnostic row of a [`ResonanceReport`].
#[derive(Debug, Clone, Serialize)]
pub struct PerMEntry {
    /// Index of the term in the input series.
    pub index: usize,
    pub lambda: f64,
    /// The double sum of [`per_m_lemma`].
    pub sum: f64,
    /// `L/4`.
    pub threshold: f64,
}

/// Outcome of a resonance certification run. All quantities are plain
/// numbers; `bound = ratio - tail_error` is a fully certified lower bound
/// for the maximum of the certified quantity on `[Y, T]`:
/// `Re F_1` in smoothed mode, `Re F` in direct mode.
#[derive(Debug, Clone, Serialize)]
pub struct ResonanceReport {
    pub mode: TheoremMode,
    #[serde(rename = "J1")]
    pub j1: f64,
    #[serde(rename = "J2")]
    pub j2: f64,
    pub ratio: f64,
    /// Certified lower bound: `ratio - tail_error`.
    pub bound: f64,
    /// Exact discard bracket replacing the asymptotic error term.
    pub tail_error: f64,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "T")]
    pub t: f64,
    pub per_m: Vec<PerMEntry>,
    /// `L T / log T`, the guaranteed floor of `J2`.
    pub j2_lower: f64,
    pub x: f64,
    pub y: f64,
    pub gamma: f64,
    pub m: usize,
    pub beta: f64,
    pub pivot: Option<usize>,
    /// `Σ_{m∈M} f(m)` over the selected set.
    pub sum_selected: f64,
    /// `Σ_{m∈M} f(m) K̂((λ_N - λ_m)/λ_N)` (equals `sum_selected` in direct mode).
    pub weighted_sum_selected: f64,
    /// The guaranteed ratio floor: `sum_selected / 8` (smoothed) or
    /// `sum_selected / 4` (direct).
    pub theorem_bound: f64,
    /// The sharper floor `weighted_sum_selected / 4`.
    pub weighted_bound: f64,
    /// Total mass of the series `J1` was computed against
    /// (`F_1(0)` in smoothed mode, `F(0)` in direct mode).
    pub mass: f64,
    pub j1_truncation: f64,
    pub j2_truncation: f64,
}

impl ResonanceReport {
    /// Whether the computed ratio clears both stated floors.
    pub fn ratio_ok(&self) -> bool {
        self.ratio >= self.theorem_bound && self.ratio >= self.weighted_bound
    }

    /// Whether every per-frequency diagnostic clears `L/4`.
    pub fn per_m_ok(&self) -> bool {
        self.per_m.iter().all(|e| e.sum >= e.threshold)
    }
}

/// Runs the full certification pipeline: build the resonator, evaluate both
/// moments in closed form, check the per-frequency lemma, and convert the
/// discarded integration ranges (`|x| > T` and `|x| < Y`) into an exact
/// bracket through the Gaussian error function.
pub fn certify_lower_bound(
    cfg: &ResonatorConfig,
    series: &TrigSeries,
    mode: TheoremMode,
) -> Result<ResonanceReport> {
    cfg.validate(series, mode)?;
    let res = Resonator::build(cfg, series)?;
    let t = res.t();
    let log_t = t.ln();

    let smoothed: Option<SmoothedSeries> = match mode {
        TheoremMode::Smoothed => Some(series.smooth(cfg.pivot.unwrap())?),
        TheoremMode::Direct => None,
    };
    let j1_series: &TrigSeries = smoothed.as_ref().map_or(series, |s| s.series());

    let j1 = compute_j1(&res, j1_series);
    let j2 = compute_j2(&res);
    debug_assert!(j2.value >= res.j2_lower_bound() - 1e-9 * j2.value);
    let ratio = j1.value / j2.value;

    let sum_selected: f64 = cfg
        .selected
        .iter()
        .map(|&i| series.terms()[i].coeff)
        .sum();
    let weighted_sum_selected: f64 = match mode {
        TheoremMode::Direct => sum_selected,
        TheoremMode::Smoothed => {
            let lambda_n = series.terms()[cfg.pivot.unwrap()].lambda;
            cfg.selected
                .iter()
                .map(|&i| {
                    let term = series.terms()[i];
                    term.coeff * fejer_hat((lambda_n - term.lambda) / lambda_n)
                })
                .sum()
        }
    };
    let theorem_bound = match mode {
        TheoremMode::Smoothed => sum_selected / 8.0,
        TheoremMode::Direct => sum_selected / 4.0,
    };
    let weighted_bound = weighted_sum_selected / 4.0;

    // Discarded ranges: ∫_{|x|>T} + ∫_{|x|<Y} of Φ(x log T / T), times the
    // trivial bounds |F| ≤ mass and |R|² ≤ L².
    let mass = j1_series.total_mass();
    let l = res.len() as f64;
    let sqrt_pi = PI.sqrt();
    let discard_integral =
        (t / log_t) * (libm::erfc(sqrt_pi * log_t) + libm::erf(sqrt_pi * cfg.y * log_t / t));
    let discard = mass * l * l * discard_integral;
    // Sound division: the numerator underestimates (windowing drops positive
    // terms), so the denominator must overestimate.
    let j2_upper = j2.value + j2.truncation;
    let bound = (j1.value - discard) / j2_upper;
    let tail_error = ratio - bound;

    let per_m = cfg
        .selected
        .iter()
        .map(|&i| {
            let lambda = series.terms()[i].lambda;
            PerMEntry {
                index: i,
                lambda,
                sum: per_m_lemma(&res, lambda),
                threshold: l / 4.0,
            }
        })
        .collect();

    Ok(ResonanceReport {
        mode,
        j1: j1.value,
        j2: j2.value,
        ratio,
        bound,
        tail_error,
        l: res.len(),
        t,
        per_m,
        j2_lower: res.j2_lower_bound(),
        x: cfg.x,
        y: cfg.y,
        gamma: cfg.gamma,
        m: cfg.m(),
        beta: cfg.beta,
        pivot: cfg.pivot,
        sum_selected,
        weighted_sum_selected,
        theorem_bound,
        weighted_bound,
        mass,
        j1_truncation: j1.truncation,
        j2_truncation: j2.truncation,
    })
}

/// Level-set measure bound derived from a certificate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MeasureBound {
    /// Bound for `meas{x ∈ [Y, T] : Re F(x) ≥ V}`:
    /// `(Σ - V) X / (2 (M log 2 + log X) max|F|)`.
    pub one_sided: f64,
    /// Bound for the symmetric set `{|x| ∈ [Y, T] : …}`, twice as large.
    pub two_sided: f64,
}

/// Converts a certificate `Σ = report.bound` into a lower bound for the
/// measure of the level set `{x ∈ [Y, T] : Re F(x) ≥ V}`.
///
/// `max_abs_f` must dominate `sup |F|` on `[Y, T]`; passing the always-valid
/// `F(0)` only shrinks the bound.
pub fn measure_lower_bound(
    report: &ResonanceReport,
    v: f64,
    max_abs_f: f64,
) -> Result<MeasureBound> {
    let sigma = report.bound;
    if !(v > 0.0 && v <= sigma) {
        return Err(Error::InvalidArgument(format!(
            "V must lie in (0, {sigma}], got {v}"
        )));
    }
    if !(max_abs_f > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "max |F| must be positive, got {max_abs_f}"
        )));
    }
    let log_t = (report.m as f64) * std::f64::consts::LN_2 + report.x.ln();
    let one_sided = (sigma - v) * report.x / (2.0 * log_t * max_abs_f);
    let two_sided = (sigma - v) * report.t / ((report.m as f64).exp2() * log_t * max_abs_f);
    Ok(MeasureBound {
        one_sided,
        two_sided,
    })
}

/// Which resonance moment to integrate numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JKind {
    J1,
    J2,
}

/// Sizes beyond which the quadrature oracle refuses to run.
const ORACLE_CAP: usize = 64;

/// Independent check of the closed forms: integrates the defining integral
/// over `|x| ≤ W T / log T` by composite Gauss–Legendre panels sized to the
/// integrand's top frequency, with panel doubling until two successive
/// refinements agree to `1e-9` relative.
///
/// Slow by design; limited to `L ≤ 64` and series of at most 64 terms.
pub fn quadrature_oracle_j(
    res: &Resonator,
    series: Option<&TrigSeries>,
    which: JKind,
) -> Result<f64> {
    let terms = series.map_or(0, |s| s.len());
    if res.len() > ORACLE_CAP || terms > ORACLE_CAP {
        return Err(Error::OracleTooLarge {
            cap: ORACLE_CAP,
            l: res.len(),
            terms,
        });
    }
    if which == JKind::J1 && series.is_none() {
        return Err(Error::InvalidArgument(
            "J1 oracle needs the series".into(),
        ));
    }

    let t = res.t();
    let log_t = t.ln();
    let half = PAIR_WINDOW * t / log_t;

    // Top angular frequency (in cycles per unit x) of the integrand.
    let d_span = res.d.last().copied().unwrap_or(0.0);
    let lambda_max = series
        .filter(|_| which == JKind::J1)
        .and_then(|s| s.terms().last())
        .map_or(0.0, |t| t.lambda);
    let f_max = lambda_max + 2.0 * d_span + 1.0;

    let integrand = |x: f64| -> f64 {
        let r2 = res.evaluate(x).norm_sqr();
        let env = gaussian(x * log_t / t);
        match which {
            JKind::J2 => r2 * env,
            JKind::J1 => series.unwrap().evaluate_re(x, 0.0) * r2 * env,
        }
    };

    // Two panels per top-frequency cycle is already far below the GL-8
    // truncation floor; the doubling loop guards against underestimation.
    let mut panels = ((2.0 * half * f_max * 2.0).ceil() as usize).max(64);
    let mut prev = gauss_legendre(&integrand, -half, half, panels);
    for _ in 0..4 {
        panels *= 2;
        let next = gauss_legendre(&integrand, -half, half, panels);
        let scale = prev.abs().max(next.abs()).max(1e-300);
        if (next - prev).abs() <= 1e-9 * scale {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::QuadratureFailure(format!(
        "no convergence at {panels} panels (last value {prev})"
    )))
}

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
const GL8_X: [f64; 4] = [
    0.1834346424956498,
    0.5255324099163290,
    0.7966664774136267,
    0.9602898564975363,
];
const GL8_W: [f64; 4] = [
    0.3626837833783620,
    0.3137066458778873,
    0.2223810344533745,
    0.1012285362903763,
];

fn gauss_legendre(f: &impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    let width = (hi - lo) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let a = lo + p as f64 * width;
        let mid = a + width / 2.0;
        let half = width / 2.0;
        let mut panel = 0.0;
        for i in 0..4 {
            panel += GL8_W[i] * (f(mid + half * GL8_X[i]) + f(mid - half * GL8_X[i]));
        }
        acc += panel * half;
    }
    acc
}
