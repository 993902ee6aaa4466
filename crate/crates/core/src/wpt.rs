//! The wave packet transform
//!
//! `W_φ f(x, ξ) = ∫ conj(φ(y − x)) f(y) e^{−iyξ} dy`,
//!
//! its formal adjoint `W*_φ F(x) = ∬ F(y, ξ) φ(x − y) e^{ixξ} dy dξ`, and the
//! inversion `f = (2π ⟨φ, ψ⟩)^{-1} W*_ψ W_φ f`. The Fourier kernel carries no
//! 2π; the only 2π in the module is the inversion constant.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Result, WfError};
use crate::grid::{FftPair, Grid1D, SampledField};
use crate::signal::PointwiseSignal;
use crate::window::WindowInstance;

/// Default relative tail cut for window supports.
pub const DEFAULT_EPS_TAIL: f64 = 1e-12;

/// Largest phase advance per quadrature step for analytic integrands.
const MAX_PHASE_STEP: f64 = 0.2;

/// Sampled data is integrated node-by-node; beyond this `|ξ| h` the
/// periodic images of the integrand spectrum start to matter.
const MAX_SAMPLED_PHASE_STEP: f64 = 0.4 * PI;

/// The function being transformed.
#[derive(Clone, Copy)]
pub enum FieldRef<'a> {
    Analytic(&'a dyn PointwiseSignal),
    Sampled(&'a SampledField),
}

impl<'a> FieldRef<'a> {
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        match self {
            FieldRef::Analytic(f) => Ok(f.eval(x)),
            FieldRef::Sampled(f) => {
                let g = f.grid();
                let s = g.index_of(x);
                let i = s.round();
                if (s - i).abs() > 1e-9 || i < 0.0 || i >= g.len() as f64 {
                    return Err(WfError::Domain(format!("x = {x} is not a node of {g:?}")));
                }
                Ok(f.values()[i as usize])
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub eps_tail: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            eps_tail: DEFAULT_EPS_TAIL,
        }
    }
}

impl QuadratureOptions {
    fn validate(&self) -> Result<()> {
        if self.eps_tail > 0.0 && self.eps_tail < 1.0 {
            Ok(())
        } else {
            Err(WfError::Config(format!(
                "eps_tail must lie in (0, 1), got {}",
                self.eps_tail
            )))
        }
    }
}

/// A transform value together with the round-off level of its quadrature.
///
/// `noise_floor` scales with `∫|φ̄ f| dy`; values below it carry no
/// information about the true transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointEstimate {
    pub value: Complex64,
    pub noise_floor: f64,
}

impl PointEstimate {
    fn zero() -> Self {
        Self {
            value: Complex64::new(0.0, 0.0),
            noise_floor: 0.0,
        }
    }

    /// `|value|`, or zero when it is indistinguishable from round-off.
    pub fn resolved_abs(&self) -> f64 {
        let a = self.value.norm();
        if a <= self.noise_floor {
            0.0
        } else {
            a
        }
    }
}

fn noise_floor(abs_mass: f64, max_phase: f64) -> f64 {
    32.0 * f64::EPSILON * (1.0 + max_phase) * abs_mass
}

/// `W_φ f(x, ξ)` by composite trapezoid quadrature with default options.
pub fn wpt_point(f: FieldRef<'_>, w: &WindowInstance, x: f64, xi: f64) -> Result<Complex64> {
    wpt_point_with(f, w, x, xi, &QuadratureOptions::default()).map(|e| e.value)
}

/// `W_φ f(x, ξ)` with explicit options; also reports the round-off floor.
pub fn wpt_point_with(
    f: FieldRef<'_>,
    w: &WindowInstance,
    x: f64,
    xi: f64,
    opts: &QuadratureOptions,
) -> Result<PointEstimate> {
    opts.validate()?;
    if !(x.is_finite() && xi.is_finite()) {
        return Err(WfError::Domain(format!(
            "non-finite phase point ({x}, {xi})"
        )));
    }
    let radius = w.effective_radius(opts.eps_tail);
    match f {
        FieldRef::Analytic(g) => Ok(analytic_point(g, w, x, xi, radius)),
        FieldRef::Sampled(g) => sampled_point(g, w, x, xi, radius),
    }
}

fn analytic_point(
    f: &dyn PointwiseSignal,
    w: &WindowInstance,
    x: f64,
    xi: f64,
    radius: f64,
) -> PointEstimate {
    let (mut lo, mut hi) = (x - radius, x + radius);
    if let Some((s_lo, s_hi)) = f.support() {
        lo = lo.max(s_lo);
        hi = hi.min(s_hi);
    }
    if lo >= hi {
        return PointEstimate::zero();
    }

    let step = w
        .resolution_step()
        .min(MAX_PHASE_STEP / (xi.abs() + w.chirp_rate() * radius).max(1.0));
    let panel = GL_ORDER as f64 * step;

    let mut cuts = vec![lo, hi];
    cuts.extend(f.breakpoints().into_iter().filter(|&p| p > lo && p < hi));
    cuts.sort_by(f64::total_cmp);

    let rule = gauss_legendre();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_mass = 0.0;
    for piece in cuts.windows(2) {
        let (p, q) = (piece[0], piece[1]);
        let n = ((q - p) / panel).ceil().max(1.0) as usize;
        let half = 0.5 * (q - p) / n as f64;
        for k in 0..n {
            let mid = p + (2 * k + 1) as f64 * half;
            for (node, weight) in rule.iter() {
                let y = mid + half * node;
                let z = y - x;
                let term = w.eval(z).conj() * f.eval(y) * Complex64::from_polar(1.0, -z * xi);
                sum += term * (weight * half);
                abs_mass += term.norm() * weight * half;
            }
        }
    }
    PointEstimate {
        value: sum * Complex64::from_polar(1.0, -x * xi),
        noise_floor: noise_floor(abs_mass, radius * xi.abs()),
    }
}

/// Nodes per Gauss–Legendre panel.
const GL_ORDER: usize = 10;

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on `P_n`.
fn gauss_legendre() -> &'static [(f64, f64); GL_ORDER] {
    static RULE: OnceLock<[(f64, f64); GL_ORDER]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut rule = [(0.0, 0.0); GL_ORDER];
        for (i, slot) in rule.iter_mut().enumerate() {
            let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, t);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
                let dt = p1 / dp;
                t -= dt;
                if dt.abs() < 1e-16 {
                    break;
                }
            }
            *slot = (t, 2.0 / ((1.0 - t * t) * dp * dp));
        }
        rule
    })
}

fn check_window_resolved(w: &WindowInstance, grid: &Grid1D) -> Result<()> {
    // Analytic windows must span at least one node per unit width.
    if w.chirp_width().is_some() && 16.0 * w.resolution_step() < grid.spacing() {
        return Err(WfError::Resolution(format!(
            "window width {} is below the grid spacing {}",
            16.0 * w.resolution_step(),
            grid.spacing()
        )));
    }
    Ok(())
}

fn sampled_point(
    f: &SampledField,
    w: &WindowInstance,
    x: f64,
    xi: f64,
    radius: f64,
) -> Result<PointEstimate> {
    let g = f.grid();
    let (lo, hi) = (x - radius, x + radius);
    if !g.covers(lo, hi) {
        return Err(WfError::Coverage {
            lo,
            hi,
            grid_lo: g.x_min(),
            grid_hi: g.x_max(),
        });
    }
    let h = g.spacing();
    if xi.abs() * h > MAX_SAMPLED_PHASE_STEP {
        return Err(WfError::Resolution(format!(
            "|xi| = {} exceeds the resolvable {:.3} on grid spacing {h}",
            xi.abs(),
            MAX_SAMPLED_PHASE_STEP / h
        )));
    }
    check_window_resolved(w, g)?;
    let first = g.index_of(lo).ceil().max(0.0) as usize;
    let last = (g.index_of(hi).floor() as usize).min(g.len() - 1);
    let values = f.values();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_mass = 0.0;
    for (i, fv) in values.iter().enumerate().take(last + 1).skip(first) {
        let z = g.x(i) - x;
        let term = w.eval(z).conj() * fv * Complex64::from_polar(1.0, -z * xi);
        sum += term;
        abs_mass += term.norm();
    }
    Ok(PointEstimate {
        value: sum * h * Complex64::from_polar(1.0, -x * xi),
        noise_floor: noise_floor(abs_mass * h, radius * xi.abs()),
    })
}

/// `W_φ f` on a set of positions × the discrete frequencies of `f`'s grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WptGridResult {
    grid: Grid1D,
    x_grid: Vec<f64>,
    x_step: f64,
    xi_grid: Vec<f64>,
    values: Vec<Complex64>,
}

impl WptGridResult {
    /// Assembles a transform table; `values` is row-major in `(x, ξ)` with the
    /// frequencies of `grid` in ascending order.
    pub fn from_parts(
        grid: Grid1D,
        x_grid: Vec<f64>,
        x_step: f64,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        if x_grid.is_empty() {
            return Err(WfError::GridMismatch("empty position grid".into()));
        }
        if !(x_step > 0.0) {
            return Err(WfError::GridMismatch(format!(
                "x_step must be positive, got {x_step}"
            )));
        }
        let xi_grid = ascending_frequencies(&grid);
        if values.len() != x_grid.len() * xi_grid.len() {
            return Err(WfError::GridMismatch(format!(
                "{} values for a {}x{} table",
                values.len(),
                x_grid.len(),
                xi_grid.len()
            )));
        }
        Ok(Self {
            grid,
            x_grid,
            x_step,
            xi_grid,
            values,
        })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn x_grid(&self) -> &[f64] {
        &self.x_grid
    }

    pub fn xi_grid(&self) -> &[f64] {
        &self.xi_grid
    }

    pub fn x_step(&self) -> f64 {
        self.x_step
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, ix: usize, ixi: usize) -> Complex64 {
        self.values[ix * self.xi_grid.len() + ixi]
    }

    /// Whether the positions are equally spaced by `x_step`.
    pub fn is_uniform(&self) -> bool {
        let d = self.x_step;
        let tol = 1e-9 * d.max(1.0);
        self.x_grid
            .windows(2)
            .all(|p| ((p[1] - p[0]) - d).abs() <= tol)
    }

    pub fn cell_area(&self) -> f64 {
        self.x_step * self.grid.frequency_spacing()
    }
}

fn ascending_frequencies(grid: &Grid1D) -> Vec<f64> {
    let n = grid.len();
    (0..n).map(|j| grid.frequency((j + n / 2) % n)).collect()
}

/// Fast path: for every `x` in `x_grid`, `W_φ f(x, ·)` at all discrete
/// frequencies of `f`'s grid via one FFT of `conj(φ(· − x)) f(·)`.
pub fn wpt_grid(f: &SampledField, w: &WindowInstance, x_grid: &[f64]) -> Result<WptGridResult> {
    wpt_grid_with(f, w, x_grid, &QuadratureOptions::default())
}

pub fn wpt_grid_with(
    f: &SampledField,
    w: &WindowInstance,
    x_grid: &[f64],
    opts: &QuadratureOptions,
) -> Result<WptGridResult> {
    opts.validate()?;
    let g = *f.grid();
    check_window_resolved(w, &g)?;
    let n = g.len();
    let h = g.spacing();
    let radius = w.effective_radius(opts.eps_tail);
    let fft = FftPair::new(n);
    let phase: Vec<Complex64> = (0..n)
        .map(|m| Complex64::from_polar(h, -g.x_min() * g.frequency(m)))
        .collect();

    let mut values = Vec::with_capacity(x_grid.len() * n);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for &x in x_grid {
        let (lo, hi) = (x - radius, x + radius);
        if !g.covers(lo, hi) {
            return Err(WfError::Coverage {
                lo,
                hi,
                grid_lo: g.x_min(),
                grid_hi: g.x_max(),
            });
        }
        for (i, (b, fv)) in buf.iter_mut().zip(f.values()).enumerate() {
            let z = g.x(i) - x;
            *b = if z.abs() <= radius {
                w.eval(z).conj() * fv
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        fft.forward.process(&mut buf);
        values.extend((0..n).map(|j| {
            let m = (j + n / 2) % n;
            buf[m] * phase[m]
        }));
    }
    let x_step = if x_grid.len() >= 2 {
        x_grid[1] - x_grid[0]
    } else {
        h
    };
    WptGridResult::from_parts(g, x_grid.to_vec(), x_step, values)
}

/// Quadrature of `∬ F(y, ξ) φ(x − y) e^{ixξ} dy dξ` on `F`'s grids, returned on
/// the spatial grid that generated `F`'s frequencies.
pub fn wpt_adjoint(table: &WptGridResult, w: &WindowInstance) -> Result<SampledField> {
    let g = table.grid;
    let n = g.len();
    if table.xi_grid.len() != n {
        return Err(WfError::GridMismatch(
            "frequency grid does not match the spatial grid".into(),
        ));
    }
    if !table.is_uniform() {
        return Err(WfError::GridMismatch(
            "adjoint needs positions uniformly spaced by x_step".into(),
        ));
    }
    let fft = FftPair::new(n);
    let area = table.cell_area();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (ix, &y) in table.x_grid.iter().enumerate() {
        let row = &table.values[ix * n..(ix + 1) * n];
        if row.iter().all(|v| *v == Complex64::new(0.0, 0.0)) {
            continue;
        }
        for (j, v) in row.iter().enumerate() {
            let m = (j + n / 2) % n;
            buf[m] = v * Complex64::from_polar(1.0, g.x_min() * g.frequency(m));
        }
        fft.inverse.process(&mut buf);
        for (i, (o, s)) in out.iter_mut().zip(&buf).enumerate() {
            *o += area * w.eval(g.x(i) - y) * s;
        }
    }
    SampledField::new(g, out)
}

/// `∫ conj(φ) ψ` by trapezoid quadrature over the joint effective support.
pub fn window_inner(phi: &WindowInstance, psi: &WindowInstance) -> Complex64 {
    let radius = phi
        .effective_radius(DEFAULT_EPS_TAIL)
        .max(psi.effective_radius(DEFAULT_EPS_TAIL));
    let step = 0.25
        * phi
            .resolution_step()
            .min(psi.resolution_step())
            .min(MAX_PHASE_STEP / ((phi.chirp_rate() + psi.chirp_rate()) * radius).max(1.0));
    let n = (2.0 * radius / step).ceil() as usize;
    let h = 2.0 * radius / n as f64;
    let mut s = Complex64::new(0.0, 0.0);
    for k in 0..=n {
        let z = -radius + k as f64 * h;
        let wgt = if k == 0 || k == n { 0.5 } else { 1.0 };
        s += phi.eval(z).conj() * psi.eval(z) * wgt;
    }
    s * h
}

/// `(2π ⟨φ, ψ⟩)^{-1} W*_ψ F`; recovers `f` when `F = W_φ f`.
pub fn invert(
    table: &WptGridResult,
    analysis: &WindowInstance,
    synthesis: &WindowInstance,
) -> Result<SampledField> {
    let c = window_inner(analysis, synthesis);
    if c.norm() < 1e-12 {
        return Err(WfError::OrthogonalWindows(c.norm()));
    }
    let back = wpt_adjoint(table, synthesis)?;
    Ok(back.scale(1.0 / (2.0 * PI * c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::l2_norm;
    use crate::signal::SignalSpec;
    use crate::window::{scaled_window, WindowSpec};

    fn gauss() -> SignalSpec {
        SignalSpec::Gaussian {
            center: 0.0,
            width: 1.0,
        }
    }

    /// Closed form of `W_φ f` for `f = φ = e^{−y²/2}`.
    fn gaussian_pair(x: f64, xi: f64) -> Complex64 {
        PI.sqrt() * (-x * x / 4.0 - xi * xi / 4.0).exp() * Complex64::from_polar(1.0, -x * xi / 2.0)
    }

    /// Independent dense midpoint quadrature of the defining integral.
    fn brute_force(f: &dyn PointwiseSignal, w: &WindowInstance, x: f64, xi: f64) -> Complex64 {
        brute_force_from(f, w, x, xi, x - 12.0)
    }

    /// Same, starting at `lo` (for data vanishing left of `lo`).
    fn brute_force_from(
        f: &dyn PointwiseSignal,
        w: &WindowInstance,
        x: f64,
        xi: f64,
        lo: f64,
    ) -> Complex64 {
        let (hi, n) = (x + 12.0, 400_000);
        let h = (hi - lo) / n as f64;
        (0..n)
            .map(|k| {
                let y = lo + (k as f64 + 0.5) * h;
                w.eval(y - x).conj() * f.eval(y) * Complex64::from_polar(h, -y * xi)
            })
            .sum()
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let rule = gauss_legendre();
        let total: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((total - 2.0).abs() < 1e-14);
        let m18: f64 = rule.iter().map(|(t, w)| w * t.powi(18)).sum();
        assert!((m18 - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn closed_form_oracle_agrees_with_brute_force() {
        let w = WindowSpec::gaussian(0.25).unscaled();
        for (x, xi) in [(0.0, 0.0), (0.7, -1.3), (-1.1, 2.5)] {
            let d = brute_force(&gauss(), &w, x, xi) - gaussian_pair(x, xi);
            assert!(d.norm() < 1e-10);
        }
    }

    #[test]
    fn gaussian_at_origin_is_sqrt_pi() {
        let w = WindowSpec::gaussian(0.25).unscaled();
        let v = wpt_point(FieldRef::Analytic(&gauss()), &w, 0.0, 0.0).unwrap();
        assert!((v - PI.sqrt()).norm() < 1e-10);
    }

    #[test]
    fn gaussian_at_high_frequency() {
        let w = WindowSpec::gaussian(0.25).unscaled();
        let v = wpt_point(FieldRef::Analytic(&gauss()), &w, 0.0, 6.0).unwrap();
        assert!((v.norm() - PI.sqrt() * (-9.0f64).exp()).abs() < 1e-8);
        for (x, xi) in [(0.5, 3.0), (-2.0, -1.0), (1.5, 10.0)] {
            let v = wpt_point(FieldRef::Analytic(&gauss()), &w, x, xi).unwrap();
            assert!((v - gaussian_pair(x, xi)).norm() < 1e-10);
        }
    }

    #[test]
    fn zero_signal_gives_zero() {
        let zero = |_x: f64| Complex64::new(0.0, 0.0);
        let w = WindowSpec::gaussian(0.25).unscaled();
        for (x, xi) in [(0.0, 0.0), (3.0, -40.0)] {
            assert_eq!(
                wpt_point(FieldRef::Analytic(&zero), &w, x, xi).unwrap(),
                Complex64::new(0.0, 0.0)
            );
        }
    }

    #[test]
    fn bad_tail_option_is_a_config_error() {
        let w = WindowSpec::gaussian(0.25).unscaled();
        for eps in [0.0, 1.0, -1e-3] {
            let r = wpt_point_with(
                FieldRef::Analytic(&gauss()),
                &w,
                0.0,
                0.0,
                &QuadratureOptions { eps_tail: eps },
            );
            assert!(matches!(r, Err(WfError::Config(_))));
        }
    }

    #[test]
    fn sampled_grid_must_cover_window() {
        let g = Grid1D::new(-4.0, 4.0, 1024).unwrap();
        let f = crate::signal::sample(&gauss(), &g).unwrap();
        let w = WindowSpec::gaussian(0.25).unscaled();
        assert!(matches!(
            wpt_point(FieldRef::Sampled(&f), &w, 0.0, 0.0),
            Err(WfError::Coverage { .. })
        ));
    }

    #[test]
    fn sampled_frequency_must_be_resolvable() {
        let g = Grid1D::new(-16.0, 16.0, 1024).unwrap();
        let f = crate::signal::sample(&gauss(), &g).unwrap();
        let w = WindowSpec::gaussian(0.25).unscaled();
        assert!(wpt_point(FieldRef::Sampled(&f), &w, 0.0, 30.0).is_ok());
        assert!(matches!(
            wpt_point(FieldRef::Sampled(&f), &w, 0.0, 60.0),
            Err(WfError::Resolution(_))
        ));
    }

    #[test]
    fn jump_is_integrated_piecewise() {
        // ∫_0^∞ e^{-y²} e^{-iyξ} dy has the closed form (√π/2) e^{-ξ²/4}(1 − i erfi(ξ/2));
        // at ξ = 0 the value is √π/2.
        let h = SignalSpec::HeavisideGaussian {
            jump_point: 0.0,
            width: 1.0,
        };
        let w = WindowSpec::gaussian(0.25).unscaled();
        let v = wpt_point(FieldRef::Analytic(&h), &w, 0.0, 0.0).unwrap();
        assert!((v - PI.sqrt() / 2.0).norm() < 1e-12);
        let brute = brute_force_from(&h, &w, 0.3, 7.0, 0.0);
        let fast = wpt_point(FieldRef::Analytic(&h), &w, 0.3, 7.0).unwrap();
        assert!((brute - fast).norm() < 1e-9, "{brute} vs {fast}");
    }

    #[test]
    fn grid_agrees_with_point_evaluation() {
        let g = Grid1D::new(-16.0, 16.0, 2048).unwrap();
        let spec = SignalSpec::Modulated {
            base: Box::new(SignalSpec::Gaussian {
                center: 0.4,
                width: 1.3,
            }),
            frequency: 2.0,
        };
        let f = crate::signal::sample(&spec, &g).unwrap();
        let w = scaled_window(&WindowSpec::gaussian(0.25), 4.0).unwrap();
        let xs = [-1.0, -0.25, 0.5, 1.75];
        let table = wpt_grid(&f, &w, &xs).unwrap();
        for (ix, &x) in xs.iter().enumerate() {
            for ixi in (0..g.len()).step_by(97) {
                let xi = table.xi_grid()[ixi];
                if xi.abs() * g.spacing() > MAX_SAMPLED_PHASE_STEP {
                    continue;
                }
                let p = wpt_point(FieldRef::Analytic(&spec), &w, x, xi).unwrap();
                assert!((table.get(ix, ixi) - p).norm() < 1e-8, "x={x} xi={xi}");
            }
        }
    }

    #[test]
    fn single_cell_adjoint_unrolls_the_definition() {
        let g = Grid1D::new(-8.0, 8.0, 256).unwrap();
        let w = WindowSpec::gaussian(0.25).unscaled();
        let n = g.len();
        let (y0, j0) = (0.5, n / 2 + 5);
        let mut values = vec![Complex64::new(0.0, 0.0); n];
        values[j0] = Complex64::new(1.0, 0.0);
        let table = WptGridResult::from_parts(g, vec![y0], 0.25, values).unwrap();
        let xi0 = table.xi_grid()[j0];
        let out = wpt_adjoint(&table, &w).unwrap();
        let area = table.cell_area();
        for (i, v) in out.values().iter().enumerate() {
            let x = g.x(i);
            let expected = area * w.eval(x - y0) * Complex64::from_polar(1.0, x * xi0);
            assert!((v - expected).norm() < 1e-13);
        }
    }

    #[test]
    fn zero_table_has_zero_adjoint() {
        let g = Grid1D::new(-8.0, 8.0, 256).unwrap();
        let w = WindowSpec::gaussian(0.25).unscaled();
        let table = WptGridResult::from_parts(
            g,
            vec![-1.0, 0.0, 1.0],
            1.0,
            vec![Complex64::new(0.0, 0.0); 3 * 256],
        )
        .unwrap();
        assert_eq!(l2_norm(&wpt_adjoint(&table, &w).unwrap()), 0.0);
        let zero = SampledField::zeros(g);
        let t = wpt_grid(&zero, &w, &[0.0, 0.5]).unwrap();
        assert!(t.values().iter().all(|v| v.norm() == 0.0));
        assert_eq!(l2_norm(&invert(&t, &w, &w).unwrap()), 0.0);
    }

    #[test]
    fn orthogonal_windows_are_rejected() {
        let g = Grid1D::new(-8.0, 8.0, 256).unwrap();
        let phi = WindowSpec::gaussian(0.25).unscaled();
        let psi = WindowSpec::hermite1(0.25).unscaled();
        assert!(window_inner(&phi, &psi).norm() < 1e-12);
        let table =
            WptGridResult::from_parts(g, vec![0.0], 1.0, vec![Complex64::new(0.0, 0.0); 256])
                .unwrap();
        assert!(matches!(
            invert(&table, &phi, &psi),
            Err(WfError::OrthogonalWindows(_))
        ));
    }

    #[test]
    fn non_uniform_positions_are_rejected() {
        let g = Grid1D::new(-8.0, 8.0, 16).unwrap();
        let t = WptGridResult::from_parts(
            g,
            vec![0.0, 1.0, 3.0],
            1.0,
            vec![Complex64::new(0.0, 0.0); 48],
        )
        .unwrap();
        let w = WindowSpec::gaussian(0.25).unscaled();
        assert!(matches!(wpt_adjoint(&t, &w), Err(WfError::GridMismatch(_))));
    }
}
