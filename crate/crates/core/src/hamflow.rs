//! Classical flow `ẋ = ξ, ξ̇ = −x − ∇v(s, x)` of the perturbed harmonic oscillator.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WfError};
use crate::fit;

/// RK4 steps per unit π of flow time.
pub const STEPS_PER_PI: usize = 4096;

/// Smoothing length used by default for the `a|x|` potential.
pub const DEFAULT_SMOOTHING: f64 = 1e-3;

/// Scalar field `(t, x) ↦ value`.
pub type ScalarField = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum PotentialKind {
    Zero,
    /// `c (1 + x²)^{ρ/2}`.
    Power {
        coefficient: f64,
        exponent: f64,
    },
    /// `a √(x² + ε²)`.
    SmoothedAbs {
        coefficient: f64,
        epsilon: f64,
    },
    Custom {
        value: ScalarField,
        gradient: ScalarField,
    },
}

/// A sub-quadratic perturbation `v(t, x)` with growth exponent `ρ ∈ [0, 2)`.
#[derive(Clone)]
pub struct Potential {
    kind: PotentialKind,
    rho: f64,
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PotentialKind::Zero => write!(f, "Potential::Zero"),
            PotentialKind::Power {
                coefficient,
                exponent,
            } => write!(f, "Potential::Power({coefficient}, {exponent})"),
            PotentialKind::SmoothedAbs {
                coefficient,
                epsilon,
            } => write!(f, "Potential::SmoothedAbs({coefficient}, {epsilon})"),
            PotentialKind::Custom { .. } => write!(f, "Potential::Custom(rho = {})", self.rho),
        }
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if (0.0..2.0).contains(&rho) {
        Ok(())
    } else {
        Err(WfError::Config(format!(
            "rho must lie in [0, 2), got {rho}"
        )))
    }
}

impl Potential {
    pub fn zero() -> Self {
        Self {
            kind: PotentialKind::Zero,
            rho: 0.0,
        }
    }

    pub fn power(coefficient: f64, exponent: f64) -> Result<Self> {
        check_rho(exponent)?;
        if !coefficient.is_finite() {
            return Err(WfError::Config("power coefficient must be finite".into()));
        }
        Ok(Self {
            kind: PotentialKind::Power {
                coefficient,
                exponent,
            },
            rho: exponent,
        })
    }

    pub fn smoothed_abs(coefficient: f64, epsilon: f64) -> Result<Self> {
        if !coefficient.is_finite() || !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(WfError::Config(format!(
                "smoothed_abs needs finite a and eps > 0, got a = {coefficient}, eps = {epsilon}"
            )));
        }
        Ok(Self {
            kind: PotentialKind::SmoothedAbs {
                coefficient,
                epsilon,
            },
            rho: 1.0,
        })
    }

    /// User-supplied `v` and `∂ₓv`, declared to grow like `(1+|x|)^ρ`.
    pub fn custom(rho: f64, value: ScalarField, gradient: ScalarField) -> Result<Self> {
        check_rho(rho)?;
        Ok(Self {
            kind: PotentialKind::Custom { value, gradient },
            rho,
        })
    }

    pub fn kind(&self) -> &PotentialKind {
        &self.kind
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn is_zero(&self) -> bool {
        match self.kind {
            PotentialKind::Zero => true,
            PotentialKind::Power { coefficient, .. }
            | PotentialKind::SmoothedAbs { coefficient, .. } => coefficient == 0.0,
            PotentialKind::Custom { .. } => false,
        }
    }

    /// Only custom potentials may depend on time.
    pub fn is_time_independent(&self) -> bool {
        !matches!(self.kind, PotentialKind::Custom { .. })
    }

    pub fn value(&self, t: f64, x: f64) -> f64 {
        match &self.kind {
            PotentialKind::Zero => 0.0,
            PotentialKind::Power {
                coefficient,
                exponent,
            } => coefficient * (1.0 + x * x).powf(exponent / 2.0),
            PotentialKind::SmoothedAbs {
                coefficient,
                epsilon,
            } => coefficient * x.hypot(*epsilon),
            PotentialKind::Custom { value, .. } => value(t, x),
        }
    }

    pub fn gradient(&self, t: f64, x: f64) -> f64 {
        match &self.kind {
            PotentialKind::Zero => 0.0,
            PotentialKind::Power {
                coefficient,
                exponent,
            } => coefficient * exponent * x * (1.0 + x * x).powf(exponent / 2.0 - 1.0),
            PotentialKind::SmoothedAbs {
                coefficient,
                epsilon,
            } => coefficient * x / x.hypot(*epsilon),
            PotentialKind::Custom { gradient, .. } => gradient(t, x),
        }
    }

    /// Largest `|(v(x+h) − v(x−h))/2h − ∂ₓv(x)|` over `samples` at time `t`.
    pub fn gradient_mismatch(&self, t: f64, samples: &[f64]) -> f64 {
        samples
            .iter()
            .map(|&x| {
                let h = 1e-5 * (1.0 + x.abs());
                let fd = (self.value(t, x + h) - self.value(t, x - h)) / (2.0 * h);
                (fd - self.gradient(t, x)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Serializable description of the built-in potentials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialSpec {
    Zero,
    Power {
        coefficient: f64,
        exponent: f64,
    },
    SmoothedAbs {
        coefficient: f64,
        #[serde(default = "default_smoothing")]
        epsilon: f64,
    },
}

fn default_smoothing() -> f64 {
    DEFAULT_SMOOTHING
}

impl PotentialSpec {
    pub fn build(&self) -> Result<Potential> {
        match *self {
            PotentialSpec::Zero => Ok(Potential::zero()),
            PotentialSpec::Power {
                coefficient,
                exponent,
            } => Potential::power(coefficient, exponent),
            PotentialSpec::SmoothedAbs {
                coefficient,
                epsilon,
            } => Potential::smoothed_abs(coefficient, epsilon),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: f64,
    pub xi: f64,
}

impl PhasePoint {
    pub fn new(x: f64, xi: f64) -> Self {
        Self { x, xi }
    }

    fn is_finite(&self) -> bool {
        self.x.is_finite() && self.xi.is_finite()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PhasePoint>,
}

impl Trajectory {
    pub fn last(&self) -> PhasePoint {
        *self.states.last().expect("trajectories are never empty")
    }
}

/// Exact flow for `v ≡ 0`: rotation of phase space by `s − t₀`.
pub fn exact_ho_flow(t0: f64, s: f64, p: PhasePoint) -> PhasePoint {
    let (sn, cs) = (s - t0).sin_cos();
    PhasePoint {
        x: p.x * cs + p.xi * sn,
        xi: -p.x * sn + p.xi * cs,
    }
}

fn rk4_step(pot: &Potential, s: f64, p: PhasePoint, h: f64) -> PhasePoint {
    let f = |s: f64, x: f64, xi: f64| (xi, -x - pot.gradient(s, x));
    let (k1x, k1v) = f(s, p.x, p.xi);
    let (k2x, k2v) = f(s + h / 2.0, p.x + h / 2.0 * k1x, p.xi + h / 2.0 * k1v);
    let (k3x, k3v) = f(s + h / 2.0, p.x + h / 2.0 * k2x, p.xi + h / 2.0 * k2v);
    let (k4x, k4v) = f(s + h, p.x + h * k3x, p.xi + h * k3v);
    PhasePoint {
        x: p.x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
        xi: p.xi + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
    }
}

fn rk4_run(
    pot: &Potential,
    t0: f64,
    p0: PhasePoint,
    s_end: f64,
    n_steps: usize,
    mut visit: impl FnMut(f64, PhasePoint),
) -> Result<PhasePoint> {
    if n_steps == 0 {
        return Err(WfError::Config("n_steps must be at least 1".into()));
    }
    if !p0.is_finite() || !t0.is_finite() || !s_end.is_finite() {
        return Err(WfError::Divergence {
            step: 0,
            x: p0.x,
            xi: p0.xi,
        });
    }
    let h = (s_end - t0) / n_steps as f64;
    let mut p = p0;
    for k in 0..n_steps {
        p = rk4_step(pot, t0 + k as f64 * h, p, h);
        if !p.is_finite() {
            return Err(WfError::Divergence {
                step: k + 1,
                x: p.x,
                xi: p.xi,
            });
        }
        let s = if k + 1 == n_steps {
            s_end
        } else {
            t0 + (k + 1) as f64 * h
        };
        visit(s, p);
    }
    Ok(p)
}

/// Fixed-step RK4 from `(t₀, p₀)` to `s_end` (either direction).
pub fn integrate_flow(
    pot: &Potential,
    t0: f64,
    p0: PhasePoint,
    s_end: f64,
    n_steps: usize,
) -> Result<Trajectory> {
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut states = Vec::with_capacity(n_steps + 1);
    times.push(t0);
    states.push(p0);
    rk4_run(pot, t0, p0, s_end, n_steps, |s, p| {
        times.push(s);
        states.push(p);
    })?;
    Ok(Trajectory { times, states })
}

/// Default RK4 step count for a flow over `|duration|`.
pub fn default_steps(duration: f64) -> usize {
    ((duration.abs() / PI) * STEPS_PER_PI as f64)
        .ceil()
        .max(1.0) as usize
}

/// State at `s = 0` of the flow with data `x(t₀) = x, ξ(t₀) = λξ`.
pub fn backward_endpoint(
    pot: &Potential,
    t0: f64,
    x: f64,
    xi: f64,
    lambda: f64,
    n_steps: usize,
) -> Result<PhasePoint> {
    if !(lambda >= 1.0) {
        return Err(WfError::Domain(format!(
            "lambda must be >= 1, got {lambda}"
        )));
    }
    rk4_run(
        pot,
        t0,
        PhasePoint::new(x, lambda * xi),
        0.0,
        n_steps,
        |_, _| {},
    )
}

/// `∫₀^π sin τ · g(τ, −ξ sin τ) dτ` for a degree-0 homogeneous `g`.
pub fn asymptotic_shift(v0_grad: &dyn Fn(f64, f64) -> f64, xi: f64) -> Result<f64> {
    if xi == 0.0 || !xi.is_finite() {
        return Err(WfError::Domain(format!(
            "direction undefined for xi = {xi}"
        )));
    }
    let f = |tau: f64| tau.sin() * v0_grad(tau, -xi * tau.sin());
    Ok(adaptive_simpson(&f, 0.0, PI, 1e-10))
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Log-log slope of `|x(0; π, x, λξ)|` against `λ`, with the RMS residual.
pub fn growth_exponent(
    pot: &Potential,
    x: f64,
    xi: f64,
    lambdas: &[f64],
    n_steps: usize,
) -> Result<(f64, f64)> {
    if lambdas.len() < 4 || lambdas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(WfError::Config(
            "growth fit needs at least 4 strictly increasing lambdas".into(),
        ));
    }
    if xi == 0.0 {
        return Err(WfError::Domain("growth fit needs xi != 0".into()));
    }
    let mut logs = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let end = backward_endpoint(pot, PI, x, xi, lambda, n_steps)?;
        if end.x == 0.0 {
            return Err(WfError::DegenerateFit(format!(
                "x(0) vanishes at lambda = {lambda}"
            )));
        }
        logs.push(end.x.abs().ln());
    }
    let log_l: Vec<f64> = lambdas.iter().map(|l| l.ln()).collect();
    let (slope, _, residual) = fit::line(&log_l, &logs)
        .ok_or_else(|| WfError::DegenerateFit("degenerate lambda schedule".into()))?;
    Ok((slope, residual))
}

/// Empirical constants of `|∂ₓ^α v| ≤ C_α (1+|x|)^{ρ−α}` on a sample set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssumptionReport {
    pub rho: f64,
    /// `C_α` for `α = 0..=max_order`.
    pub constants: Vec<f64>,
    /// Orders whose bound ratio still grows over the outer samples.
    pub violations: Vec<usize>,
}

impl AssumptionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn derivative(pot: &Potential, order: usize, x: f64) -> f64 {
    let v = |y: f64| pot.value(0.0, y);
    let h = 0.01 * (1.0 + x.abs());
    match order {
        0 => v(x),
        1 => (v(x + h) - v(x - h)) / (2.0 * h),
        2 => (v(x + h) - 2.0 * v(x) + v(x - h)) / (h * h),
        3 => {
            (v(x + 2.0 * h) - 2.0 * v(x + h) + 2.0 * v(x - h) - v(x - 2.0 * h)) / (2.0 * h * h * h)
        }
        _ => {
            (v(x + 2.0 * h) - 4.0 * v(x + h) + 6.0 * v(x) - 4.0 * v(x - h) + v(x - 2.0 * h))
                / (h * h * h * h)
        }
    }
}

/// Ratio growth slope above which a bound is reported as violated.
const VIOLATION_SLOPE: f64 = 0.25;

/// Finite-difference audit of the symbol-type bounds at `t = 0`.
///
/// A bound is flagged when `|∂^α v| / (1+|x|)^{ρ−α}` keeps growing, in
/// log-log terms, over the outer half of the samples.
pub fn validate_assumption(
    pot: &Potential,
    max_order: usize,
    samples: &[f64],
) -> Result<AssumptionReport> {
    if max_order > 4 {
        return Err(WfError::Config(format!(
            "max_order is at most 4, got {max_order}"
        )));
    }
    let mut pts: Vec<f64> = samples.iter().copied().filter(|x| x.is_finite()).collect();
    pts.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let outer = &pts[pts.len() / 2..];
    let rho = pot.rho();
    let mut constants = Vec::with_capacity(max_order + 1);
    let mut violations = Vec::new();
    for order in 0..=max_order {
        let ratio =
            |x: f64| derivative(pot, order, x).abs() / (1.0 + x.abs()).powf(rho - order as f64);
        constants.push(pts.iter().map(|&x| ratio(x)).fold(0.0, f64::max));
        let (lx, lr): (Vec<f64>, Vec<f64>) = outer
            .iter()
            .map(|&x| (x, ratio(x)))
            .filter(|(_, r)| *r > 1e-300)
            .map(|(x, r)| ((1.0 + x.abs()).ln(), r.ln()))
            .unzip();
        if let Some((slope, _, _)) = fit::line(&lx, &lr) {
            if slope > VIOLATION_SLOPE {
                violations.push(order);
            }
        }
    }
    Ok(AssumptionReport {
        rho,
        constants,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: PhasePoint, b: PhasePoint, tol: f64) -> bool {
        (a.x - b.x).abs() < tol && (a.xi - b.xi).abs() < tol
    }

    #[test]
    fn exact_flow_examples() {
        let p = PhasePoint::new(0.3, -1.2);
        assert_eq!(exact_ho_flow(0.7, 0.7, p), p);
        assert!(close(
            exact_ho_flow(PI, 0.0, PhasePoint::new(1.0, 0.0)),
            PhasePoint::new(-1.0, 0.0),
            1e-15
        ));
        assert!(close(
            exact_ho_flow(PI / 2.0, 0.0, PhasePoint::new(0.4, 5.0)),
            PhasePoint::new(-5.0, 0.4),
            1e-15
        ));
    }

    #[test]
    fn rk4_matches_rotation() {
        let p = PhasePoint::new(0.8, -0.6);
        let end = integrate_flow(&Potential::zero(), 0.0, p, PI, 4096)
            .unwrap()
            .last();
        assert!(close(end, exact_ho_flow(0.0, PI, p), 1e-8));
        let origin = integrate_flow(&Potential::zero(), 0.0, PhasePoint::new(0.0, 0.0), PI, 16)
            .unwrap()
            .last();
        assert_eq!(origin, PhasePoint::new(0.0, 0.0));
    }

    #[test]
    fn backward_endpoint_is_corollary_rotation() {
        let (t0, x, xi, lambda) = (1.1, 0.4, -0.7, 64.0);
        let end =
            backward_endpoint(&Potential::zero(), t0, x, xi, lambda, default_steps(t0)).unwrap();
        let expected = PhasePoint::new(
            x * t0.cos() - lambda * xi * t0.sin(),
            lambda * xi * t0.cos() + x * t0.sin(),
        );
        assert!(close(end, expected, 1e-9));
        let half = backward_endpoint(&Potential::zero(), PI, x, xi, lambda, STEPS_PER_PI).unwrap();
        assert!(close(half, PhasePoint::new(-x, -lambda * xi), 1e-9));
        assert!(backward_endpoint(&Potential::zero(), PI, x, xi, 0.5, 8).is_err());
    }

    #[test]
    fn sublinear_potential_endpoint_is_close_to_rotation() {
        let pot = Potential::power(1.0, 0.5).unwrap();
        let lambda = 4096.0;
        let end = backward_endpoint(&pot, PI, 0.2, 1.0, lambda, STEPS_PER_PI).unwrap();
        let rel = ((end.x + 0.2).powi(2) + (end.xi + lambda).powi(2)).sqrt() / lambda;
        assert!(rel < 3.0 * lambda.powf(-0.5), "rel = {rel}");
    }

    #[test]
    fn reversibility() {
        let pot = Potential::power(0.7, 1.3).unwrap();
        let p0 = PhasePoint::new(0.5, 3.0);
        let there = integrate_flow(&pot, 0.0, p0, 2.0, 4096).unwrap().last();
        let back = integrate_flow(&pot, 2.0, there, 0.0, 4096).unwrap().last();
        assert!(close(back, p0, 1e-7));
    }

    #[test]
    fn divergence_reports_step() {
        let blow_up = Potential::custom(
            1.9,
            Arc::new(|_, x: f64| -x.powi(6)),
            Arc::new(|_, x: f64| -6.0 * x.powi(5)),
        )
        .unwrap();
        let r = integrate_flow(&blow_up, 0.0, PhasePoint::new(2.0, 0.0), 10.0, 1000);
        assert!(matches!(r, Err(WfError::Divergence { step, .. }) if step > 0));
        assert!(matches!(
            integrate_flow(&Potential::zero(), 0.0, PhasePoint::new(0.0, 0.0), 1.0, 0),
            Err(WfError::Config(_))
        ));
    }

    #[test]
    fn shift_of_sign_gradient() {
        let sign = |_t: f64, x: f64| {
            if x > 0.0 {
                1.0
            } else if x < 0.0 {
                -1.0
            } else {
                0.0
            }
        };
        assert!((asymptotic_shift(&sign, 1.0).unwrap() + 2.0).abs() < 1e-9);
        assert!((asymptotic_shift(&sign, -3.0).unwrap() - 2.0).abs() < 1e-9);
        assert_eq!(asymptotic_shift(&|_, _| 0.0, 1.0).unwrap(), 0.0);
        assert!(matches!(
            asymptotic_shift(&sign, 0.0),
            Err(WfError::Domain(_))
        ));
    }

    #[test]
    fn zero_potential_has_no_growth() {
        let lambdas: Vec<f64> = (6..=10).map(|k| 2f64.powi(k)).collect();
        let (slope, _) =
            growth_exponent(&Potential::zero(), 0.5, 1.0, &lambdas, STEPS_PER_PI).unwrap();
        assert!(slope.abs() < 1e-6);
        assert!(growth_exponent(&Potential::zero(), 0.5, 1.0, &lambdas[..3], 16).is_err());
    }

    #[test]
    fn gradients_are_consistent() {
        let xs: Vec<f64> = (-20..=20).map(|k| k as f64 * 0.37).collect();
        for pot in [
            Potential::power(1.0, 0.5).unwrap(),
            Potential::power(-2.0, 1.7).unwrap(),
            Potential::smoothed_abs(1.0, 1e-3).unwrap(),
        ] {
            assert!(pot.gradient_mismatch(0.0, &xs) < 1e-6, "{pot:?}");
        }
    }

    #[test]
    fn rho_outside_range_is_rejected() {
        assert!(Potential::power(1.0, 2.0).is_err());
        assert!(Potential::power(1.0, -0.1).is_err());
        assert!(Potential::smoothed_abs(1.0, 0.0).is_err());
    }

    #[test]
    fn assumption_audit() {
        let xs: Vec<f64> = (-100..=100).map(|k| k as f64).collect();
        let report = validate_assumption(&Potential::power(1.0, 0.5).unwrap(), 4, &xs).unwrap();
        assert!(report.holds(), "{report:?}");
        assert!(report.constants.iter().all(|c| c.is_finite()));

        let zero = validate_assumption(&Potential::zero(), 4, &xs).unwrap();
        assert!(zero.constants.iter().all(|&c| c == 0.0));
        assert!(zero.holds());

        let quartic = Potential::custom(
            1.0,
            Arc::new(|_, x: f64| x.powi(4)),
            Arc::new(|_, x: f64| 4.0 * x.powi(3)),
        )
        .unwrap();
        let report = validate_assumption(&quartic, 4, &xs).unwrap();
        assert!(report.violations.contains(&0));
        assert!(validate_assumption(&quartic, 5, &xs).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let spec: PotentialSpec =
            toml::from_str("kind = \"smoothed_abs\"\ncoefficient = 1.0").unwrap();
        assert_eq!(
            spec,
            PotentialSpec::SmoothedAbs {
                coefficient: 1.0,
                epsilon: DEFAULT_SMOOTHING
            }
        );
        assert_eq!(spec.build().unwrap().rho(), 1.0);
    }
}
