//! Wave front set detection by λ-decay of scaled wave packet transforms.
//!
//! For a candidate `(x₀, ξ₀)` the transform is sampled on a small box of
//! positions around `x₀` and frequencies `λξ` with `ξ` in a band around the
//! direction of `ξ₀`; the supremum over the box is recorded per `λ` and the
//! decay order is the log-log slope over the upper half of the schedule.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WfError};
use crate::fit;
use crate::hamflow::asymptotic_shift;
use crate::hamflow::{backward_endpoint, default_steps, PhasePoint, Potential, PotentialKind};
use crate::signal::PointwiseSignal;
use crate::window::{scaled_window, WindowSpec};
use crate::window_dynamics::WindowCache;
use crate::wpt::{wpt_point_with, FieldRef, PointEstimate, QuadratureOptions};

/// Values at or below this are treated as exact zeros by the fit.
pub const FIT_FLOOR: f64 = 1e-300;

fn default_schedule() -> Vec<f64> {
    (0..=20).map(|k| 2f64.powf(k as f64 / 2.0)).collect()
}
fn default_nbhd_radius() -> f64 {
    0.1
}
fn default_cone() -> f64 {
    0.1
}
fn default_band() -> f64 {
    2.0
}
fn default_samples() -> usize {
    5
}
fn default_singular_max() -> f64 {
    2.0
}
fn default_smooth_min() -> f64 {
    4.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectionConfig {
    pub b: f64,
    #[serde(default = "default_schedule")]
    pub lambda_schedule: Vec<f64>,
    /// Half-width of the position neighbourhood.
    #[serde(default = "default_nbhd_radius")]
    pub nbhd_radius: f64,
    /// Relative half-width of the direction interval.
    #[serde(default = "default_cone")]
    pub cone_halfwidth: f64,
    /// Frequencies are sampled at magnitudes `1/a, 1, a`.
    #[serde(default = "default_band")]
    pub a_band: f64,
    #[serde(default = "default_samples")]
    pub nbhd_samples: usize,
    #[serde(default = "default_singular_max")]
    pub order_singular_max: f64,
    #[serde(default = "default_smooth_min")]
    pub order_smooth_min: f64,
}

impl DetectionConfig {
    pub fn new(b: f64) -> Self {
        Self {
            b,
            lambda_schedule: default_schedule(),
            nbhd_radius: default_nbhd_radius(),
            cone_halfwidth: default_cone(),
            a_band: default_band(),
            nbhd_samples: default_samples(),
            order_singular_max: default_singular_max(),
            order_smooth_min: default_smooth_min(),
        }
    }

    /// Drops schedule entries above `lambda_max`.
    pub fn with_lambda_max(mut self, lambda_max: f64) -> Self {
        self.lambda_schedule
            .retain(|&l| l <= lambda_max * (1.0 + 1e-12));
        self
    }

    pub fn validate(&self) -> Result<()> {
        let s = &self.lambda_schedule;
        if s.len() < 4 {
            return Err(WfError::Config(format!(
                "lambda_schedule needs at least 4 entries, got {}",
                s.len()
            )));
        }
        if !(s[0] >= 1.0) || s.windows(2).any(|w| !(w[1] > w[0])) || !s[s.len() - 1].is_finite() {
            return Err(WfError::Config(
                "lambda_schedule must be finite, strictly increasing and start at >= 1".into(),
            ));
        }
        if !(self.b > 0.0 && self.b < 1.0) {
            return Err(WfError::Config(format!(
                "b must lie in (0, 1), got {}",
                self.b
            )));
        }
        if !(self.nbhd_radius >= 0.0) || !(self.cone_halfwidth >= 0.0 && self.cone_halfwidth < 1.0)
        {
            return Err(WfError::Config(
                "nbhd_radius must be >= 0 and cone_halfwidth in [0, 1)".into(),
            ));
        }
        if !(self.a_band >= 1.0) {
            return Err(WfError::Config(format!(
                "a_band must be >= 1, got {}",
                self.a_band
            )));
        }
        if self.nbhd_samples == 0 {
            return Err(WfError::Config("nbhd_samples must be positive".into()));
        }
        if !(self.order_singular_max < self.order_smooth_min) {
            return Err(WfError::Config(format!(
                "order_singular_max ({}) must be below order_smooth_min ({})",
                self.order_singular_max, self.order_smooth_min
            )));
        }
        Ok(())
    }

    /// Range condition `0 < b < min(1/2, (2 − ρ)/2)` for evolved data.
    pub fn validate_for_rho(&self, rho: f64) -> Result<()> {
        self.validate()?;
        let bound = 0.5f64.min((2.0 - rho) / 2.0);
        if self.b < bound {
            Ok(())
        } else {
            Err(WfError::Config(format!(
                "b = {} must be below min(1/2, (2 - rho)/2) = {bound} for rho = {rho}",
                self.b
            )))
        }
    }

    fn check_window(&self, wspec: &WindowSpec) -> Result<()> {
        wspec.validate()?;
        if wspec.b != self.b {
            return Err(WfError::Config(format!(
                "window b = {} differs from detection b = {}",
                wspec.b, self.b
            )));
        }
        Ok(())
    }

    fn positions(&self, x0: f64) -> Vec<f64> {
        let n = self.nbhd_samples;
        if n == 1 {
            return vec![x0];
        }
        (0..n)
            .map(|i| x0 - self.nbhd_radius + 2.0 * self.nbhd_radius * i as f64 / (n - 1) as f64)
            .collect()
    }

    /// Frequencies `sign(ξ₀)(1 + δc)m` for `δ ∈ {−1, 0, 1}`, `m ∈ {1/a, 1, a}`.
    fn frequencies(&self, xi0: f64) -> Vec<f64> {
        let sign = xi0.signum();
        let mut out = Vec::with_capacity(9);
        for delta in [-1.0, 0.0, 1.0] {
            for m in [1.0 / self.a_band, 1.0, self.a_band] {
                out.push(sign * (1.0 + delta * self.cone_halfwidth) * m);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayProfile {
    pub lambdas: Vec<f64>,
    pub sup_values: Vec<f64>,
    pub fitted_order: f64,
    pub fit_residual: f64,
    /// Number of λ whose supremum was below the quadrature round-off floor.
    pub below_noise: usize,
    /// Number of fitted values clipped to [`FIT_FLOOR`].
    pub clipped: usize,
}

impl DecayProfile {
    /// Whether the fitted tail never rises by more than `factor` between
    /// consecutive λ.
    pub fn is_monotone(&self, factor: f64) -> bool {
        let start = self.lambdas.len() - self.lambdas.len().div_ceil(2);
        self.sup_values[start..]
            .windows(2)
            .all(|w| w[1] <= factor * w[0] || w[1] <= FIT_FLOOR)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Singular,
    Smooth,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Singular => "singular",
            Verdict::Smooth => "smooth",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WfVerdict {
    pub point: PhasePoint,
    pub verdict: Verdict,
    pub profile: DecayProfile,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateFailure {
    pub index: usize,
    pub point: PhasePoint,
    pub error: WfError,
}

/// Verdicts in candidate order, with failed candidates listed separately.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanResult {
    pub verdicts: Vec<WfVerdict>,
    pub failures: Vec<CandidateFailure>,
}

impl ScanResult {
    pub fn singular_points(&self) -> Vec<PhasePoint> {
        self.with_verdict(Verdict::Singular)
    }

    pub fn with_verdict(&self, v: Verdict) -> Vec<PhasePoint> {
        self.verdicts
            .iter()
            .filter(|w| w.verdict == v)
            .map(|w| w.point)
            .collect()
    }

    pub fn verdict_at(&self, p: PhasePoint) -> Option<Verdict> {
        self.verdicts
            .iter()
            .find(|w| w.point == p)
            .map(|w| w.verdict)
    }
}

/// Decay order `N` in `sup ≈ C λ^{−N}` from the upper half of the schedule,
/// with the RMS residual of the log-log fit and the number of clipped values.
pub fn fit_order(lambdas: &[f64], sup_values: &[f64]) -> Result<(f64, f64, usize)> {
    if lambdas.len() != sup_values.len() {
        return Err(WfError::DegenerateFit(
            "lambda and sup arrays differ in length".into(),
        ));
    }
    if lambdas.len() < 4 {
        return Err(WfError::DegenerateFit(format!(
            "need at least 4 points, got {}",
            lambdas.len()
        )));
    }
    if sup_values.iter().any(|v| !(*v >= 0.0)) {
        return Err(WfError::DegenerateFit(
            "sup values must be non-negative".into(),
        ));
    }
    let start = lambdas.len() - lambdas.len().div_ceil(2);
    let tail = &sup_values[start..];
    let clipped = tail.iter().filter(|v| **v <= FIT_FLOOR).count();
    if clipped == tail.len() {
        return Ok((f64::INFINITY, 0.0, clipped));
    }
    let xs: Vec<f64> = lambdas[start..].iter().map(|l| l.ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|v| -v.max(FIT_FLOOR).ln()).collect();
    let (slope, _, residual) = fit::line(&xs, &ys)
        .ok_or_else(|| WfError::DegenerateFit("lambda schedule has no spread".into()))?;
    Ok((slope, residual, clipped))
}

pub fn classify(order: f64, cfg: &DetectionConfig) -> Verdict {
    if order >= cfg.order_smooth_min {
        Verdict::Smooth
    } else if order <= cfg.order_singular_max {
        Verdict::Singular
    } else {
        Verdict::Indeterminate
    }
}

/// Builds a profile from an evaluator of the transform at `(λ, x, ξ)`, where
/// `ξ` is the unscaled sample frequency.
pub fn profile_from<F>(p: PhasePoint, cfg: &DetectionConfig, eval: F) -> Result<DecayProfile>
where
    F: Fn(f64, f64, f64) -> Result<PointEstimate>,
{
    if p.xi == 0.0 || !p.xi.is_finite() {
        return Err(WfError::Domain(format!(
            "direction undefined at xi0 = {}",
            p.xi
        )));
    }
    cfg.validate()?;
    let xs = cfg.positions(p.x);
    let xis = cfg.frequencies(p.xi);
    let mut sups = Vec::with_capacity(cfg.lambda_schedule.len());
    let mut below_noise = 0;
    for &lambda in &cfg.lambda_schedule {
        let mut sup = 0.0f64;
        let mut raw = 0.0f64;
        for &x in &xs {
            for &xi in &xis {
                let e = eval(lambda, x, xi)?;
                sup = sup.max(e.resolved_abs());
                raw = raw.max(e.value.norm());
            }
        }
        if sup == 0.0 && raw > 0.0 {
            below_noise += 1;
        }
        sups.push(sup);
    }
    let (order, residual, clipped) = fit_order(&cfg.lambda_schedule, &sups)?;
    Ok(DecayProfile {
        lambdas: cfg.lambda_schedule.clone(),
        sup_values: sups,
        fitted_order: order,
        fit_residual: residual,
        below_noise,
        clipped,
    })
}

/// Profile of `|W_{φ_{0,λ}} f(x, λξ)|` around `p`.
pub fn decay_profile(
    f: FieldRef<'_>,
    wspec: &WindowSpec,
    p: PhasePoint,
    cfg: &DetectionConfig,
) -> Result<DecayProfile> {
    cfg.check_window(wspec)?;
    let opts = QuadratureOptions::default();
    let windows = cfg
        .lambda_schedule
        .iter()
        .map(|&l| scaled_window(wspec, l))
        .collect::<Result<Vec<_>>>()?;
    profile_from(p, cfg, |lambda, x, xi| {
        let k = cfg
            .lambda_schedule
            .iter()
            .position(|&l| l == lambda)
            .expect("lambda comes from the schedule");
        wpt_point_with(f, &windows[k], x, lambda * xi, &opts)
    })
}

fn run_scan<F>(candidates: &[PhasePoint], cfg: &DetectionConfig, profile: F) -> ScanResult
where
    F: Fn(PhasePoint) -> Result<DecayProfile> + Sync,
{
    let outcomes: Vec<Result<DecayProfile>> = candidates.par_iter().map(|&p| profile(p)).collect();
    let mut out = ScanResult::default();
    for (index, (p, r)) in candidates.iter().zip(outcomes).enumerate() {
        match r {
            Ok(profile) => out.verdicts.push(WfVerdict {
                point: *p,
                verdict: classify(profile.fitted_order, cfg),
                profile,
            }),
            Err(error) => out.failures.push(CandidateFailure {
                index,
                point: *p,
                error,
            }),
        }
    }
    out
}

/// Classifies every candidate for the data `f` itself.
pub fn static_wf_scan(
    f: FieldRef<'_>,
    wspec: &WindowSpec,
    candidates: &[PhasePoint],
    cfg: &DetectionConfig,
) -> Result<ScanResult> {
    cfg.validate()?;
    cfg.check_window(wspec)?;
    Ok(run_scan(candidates, cfg, |p| {
        decay_profile(f, wspec, p, cfg)
    }))
}

/// Classifies every candidate for the solution at time `t₀` using only `u₀`:
/// the transform with the evolved window `φ_λ(−t₀)` is evaluated at the
/// backward flow endpoint of `(x, λξ)`.
pub fn propagated_wf_scan(
    u0: FieldRef<'_>,
    t0: f64,
    pot: &Potential,
    wspec: &WindowSpec,
    candidates: &[PhasePoint],
    cfg: &DetectionConfig,
) -> Result<ScanResult> {
    cfg.validate_for_rho(pot.rho())?;
    cfg.check_window(wspec)?;
    if !t0.is_finite() {
        return Err(WfError::Config(format!("t0 must be finite, got {t0}")));
    }
    let cache = WindowCache::new(wspec.clone(), None)?;
    let steps = default_steps(t0);
    let opts = QuadratureOptions::default();
    let eval = |lambda: f64, x: f64, xi: f64| {
        let w = cache.get(lambda, -t0)?;
        let end = backward_endpoint(pot, t0, x, xi, lambda, steps)?;
        wpt_point_with(u0, &w, end.x, end.xi, &opts)
    };
    Ok(run_scan(candidates, cfg, |p| profile_from(p, cfg, eval)))
}

/// Outcome of the half-period shift check for a potential with a
/// degree-0 homogeneous gradient part.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftReport {
    pub probe: PhasePoint,
    pub lambda: f64,
    /// `x(0; π, x, λξ)` from RK4.
    pub numeric_limit: f64,
    /// `−x − c̃(ξ)`.
    pub predicted_limit: f64,
    pub difference: f64,
    /// Where singular cells of `u(π)` should appear.
    pub predicted_cells: Vec<PhasePoint>,
    pub scan: ScanResult,
    /// Every detected singular cell lies within one grid step of a predicted
    /// one of the same direction, and conversely.
    pub cells_match: bool,
}

/// Degree-0 part of `∇v` for the potentials that have one.
fn homogeneous_gradient(pot: &Potential) -> Result<Box<dyn Fn(f64, f64) -> f64 + Send + Sync>> {
    match *pot.kind() {
        PotentialKind::Zero => Ok(Box::new(|_, _| 0.0)),
        PotentialKind::SmoothedAbs { coefficient, .. } => Ok(Box::new(move |_, x: f64| {
            if x == 0.0 {
                0.0
            } else {
                coefficient * x.signum()
            }
        })),
        _ => Err(WfError::Config(
            "shift check needs a zero or smoothed_abs potential".into(),
        )),
    }
}

/// Compares the large-λ flow endpoint and the detector's singular cells at
/// `t₀ = π` with the positions predicted by the asymptotic shift.
#[allow(clippy::too_many_arguments)]
pub fn homogeneous_shift_check(
    u0: FieldRef<'_>,
    u0_singular_x: &[f64],
    pot: &Potential,
    wspec: &WindowSpec,
    candidates: &[PhasePoint],
    cfg: &DetectionConfig,
    probe: PhasePoint,
    lambda: f64,
) -> Result<ShiftReport> {
    let v0 = homogeneous_gradient(pot)?;
    let shift = |xi: f64| asymptotic_shift(&*v0, xi);
    let end = backward_endpoint(pot, PI, probe.x, probe.xi, lambda, default_steps(PI))?;
    let predicted_limit = -probe.x - shift(probe.xi)?;

    let mut predicted_cells = Vec::new();
    for sign in [1.0, -1.0] {
        let c = shift(sign)?;
        for &xs in u0_singular_x {
            predicted_cells.push(PhasePoint::new(-xs - c, sign));
        }
    }

    let scan = propagated_wf_scan(u0, PI, pot, wspec, candidates, cfg)?;
    let singular = scan.singular_points();
    let step = grid_step(candidates);
    let near = |a: &PhasePoint, b: &PhasePoint| {
        a.xi.signum() == b.xi.signum() && (a.x - b.x).abs() <= step * (1.0 + 1e-9)
    };
    let in_range = |p: &PhasePoint| {
        candidates
            .iter()
            .any(|c| c.xi.signum() == p.xi.signum() && (c.x - p.x).abs() <= step)
    };
    let cells_match = singular
        .iter()
        .all(|s| predicted_cells.iter().any(|p| near(s, p)))
        && predicted_cells
            .iter()
            .filter(|p| in_range(p))
            .all(|p| singular.iter().any(|s| near(s, p)));

    Ok(ShiftReport {
        probe,
        lambda,
        numeric_limit: end.x,
        predicted_limit,
        difference: end.x - predicted_limit,
        predicted_cells,
        scan,
        cells_match,
    })
}

/// Smallest positive spacing between candidate positions.
fn grid_step(candidates: &[PhasePoint]) -> f64 {
    let mut xs: Vec<f64> = candidates.iter().map(|p| p.x).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs.windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
        .min(f64::MAX)
}

/// Builds the candidate list `xs × xis` in row-major order.
pub fn candidate_grid(xs: &[f64], xis: &[f64]) -> Vec<PhasePoint> {
    xs.iter()
        .flat_map(|&x| xis.iter().map(move |&xi| PhasePoint::new(x, xi)))
        .collect()
}

/// Runs [`decay_profile`] on an analytic signal; convenience for callers that
/// hold a concrete type.
pub fn decay_profile_of(
    f: &dyn PointwiseSignal,
    wspec: &WindowSpec,
    p: PhasePoint,
    cfg: &DetectionConfig,
) -> Result<DecayProfile> {
    decay_profile(FieldRef::Analytic(f), wspec, p, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::SignalSpec;

    fn short(b: f64) -> DetectionConfig {
        DetectionConfig::new(b)
    }

    #[test]
    fn fit_examples() {
        let l: Vec<f64> = (0..=20).map(|k| 2f64.powf(k as f64 / 2.0)).collect();
        let cube: Vec<f64> = l.iter().map(|x| x.powi(-3)).collect();
        let (o, r, _) = fit_order(&l, &cube).unwrap();
        assert!((o - 3.0).abs() < 1e-10 && r < 1e-10);
        let (o, _, _) = fit_order(&l, &vec![0.7; l.len()]).unwrap();
        assert!(o.abs() < 1e-12);
        let wavy: Vec<f64> = l
            .iter()
            .map(|x| x.powi(-2) * (1.0 + 0.1 * x.ln().sin()))
            .collect();
        let (o, r, _) = fit_order(&l, &wavy).unwrap();
        assert!((o - 2.0).abs() < 0.1 && r > 0.0);
        let (o, _, c) = fit_order(&l, &vec![0.0; l.len()]).unwrap();
        assert!(o.is_infinite() && c == 11);
        assert!(fit_order(&l[..3], &cube[..3]).is_err());
    }

    #[test]
    fn classification_thresholds() {
        let cfg = short(0.25);
        assert_eq!(classify(0.9, &cfg), Verdict::Singular);
        assert_eq!(classify(3.0, &cfg), Verdict::Indeterminate);
        assert_eq!(classify(f64::INFINITY, &cfg), Verdict::Smooth);
    }

    #[test]
    fn config_validation() {
        let mut cfg = short(0.25);
        assert!(cfg.validate().is_ok());
        cfg.order_singular_max = 5.0;
        assert!(cfg.validate().is_err());
        let cfg = short(0.3);
        assert!(cfg.validate_for_rho(1.5).is_err());
        assert!(cfg.validate_for_rho(1.0).is_ok());
        let msg = short(0.45).validate_for_rho(1.5).unwrap_err().to_string();
        assert!(msg.contains("rho = 1.5"));
        assert_eq!(short(0.25).with_lambda_max(32.0).lambda_schedule.len(), 11);
        assert!(short(0.25).with_lambda_max(2.0).validate().is_err());
    }

    #[test]
    fn sample_box_shape() {
        let cfg = short(0.25);
        let xs = cfg.positions(1.0);
        for (a, b) in xs.iter().zip([0.9, 0.95, 1.0, 1.05, 1.1]) {
            assert!((a - b).abs() < 1e-15);
        }
        let xi = cfg.frequencies(-3.0);
        assert_eq!(xi.len(), 9);
        assert!(xi.iter().all(|v| *v < 0.0));
        let has = |v: f64| xi.iter().any(|x| (x - v).abs() < 1e-15);
        assert!(has(-2.2) && has(-0.45));
    }

    #[test]
    fn gaussian_decays_fast() {
        let g = SignalSpec::Gaussian {
            center: 0.0,
            width: 1.0,
        };
        let p = decay_profile_of(
            &g,
            &WindowSpec::gaussian(0.25),
            PhasePoint::new(0.0, 1.0),
            &short(0.25),
        )
        .unwrap();
        assert!(p.fitted_order > 6.0, "{p:?}");
    }

    #[test]
    fn jump_decays_like_a_power() {
        let h = SignalSpec::HeavisideGaussian {
            jump_point: 0.0,
            width: 1.0,
        };
        let cfg = short(0.25);
        let w = WindowSpec::gaussian(0.25);
        let at_jump = decay_profile_of(&h, &w, PhasePoint::new(0.0, 1.0), &cfg).unwrap();
        assert!((at_jump.fitted_order - 0.875).abs() < 0.15, "{at_jump:?}");
        let away = decay_profile_of(&h, &w, PhasePoint::new(2.0, 1.0), &cfg).unwrap();
        assert!(away.fitted_order > 6.0, "{away:?}");
        assert!(away.is_monotone(1.5));
    }

    #[test]
    fn zero_direction_is_rejected() {
        let g = SignalSpec::Gaussian {
            center: 0.0,
            width: 1.0,
        };
        let r = decay_profile_of(
            &g,
            &WindowSpec::gaussian(0.25),
            PhasePoint::new(0.0, 0.0),
            &short(0.25),
        );
        assert!(matches!(r, Err(WfError::Domain(_))));
    }

    #[test]
    fn scan_collects_failures_in_order() {
        let g = SignalSpec::Gaussian {
            center: 0.0,
            width: 1.0,
        };
        let cands = [
            PhasePoint::new(0.0, 1.0),
            PhasePoint::new(1.0, 0.0),
            PhasePoint::new(3.0, -1.0),
        ];
        let r = static_wf_scan(
            FieldRef::Analytic(&g),
            &WindowSpec::gaussian(0.25),
            &cands,
            &short(0.25),
        )
        .unwrap();
        assert_eq!(r.verdicts.len(), 2);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].index, 1);
        assert_eq!(r.verdicts[1].point, cands[2]);
        assert!(r.verdicts.iter().all(|v| v.verdict == Verdict::Smooth));
    }

    #[test]
    fn mismatched_window_exponent_is_rejected() {
        let g = SignalSpec::Gaussian {
            center: 0.0,
            width: 1.0,
        };
        let r = static_wf_scan(
            FieldRef::Analytic(&g),
            &WindowSpec::gaussian(0.3),
            &[],
            &short(0.25),
        );
        assert!(matches!(r, Err(WfError::Config(_))));
    }

    #[test]
    fn candidate_grid_is_row_major() {
        let c = candidate_grid(&[0.0, 1.0], &[-1.0, 1.0]);
        assert_eq!(c[1], PhasePoint::new(0.0, 1.0));
        assert_eq!(c[2], PhasePoint::new(1.0, -1.0));
    }
}
