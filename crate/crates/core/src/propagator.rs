//! Reference solvers for `i∂ₜu + ½∂ₓ²u − ½x²u − v(t,x)u = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WfError};
use crate::grid::{FftPair, Grid1D, SampledField};
use crate::hamflow::Potential;
use crate::window_dynamics::parity_field;

/// Largest admissible time step.
pub const MAX_DT: f64 = 1e-2;

/// Norm fraction in the outer 5% of the grid that aborts a periodic solve.
pub const BOUNDARY_TOLERANCE: f64 = 1e-6;

/// Steps between boundary-mass checks.
const GUARD_INTERVAL: usize = 256;

/// Distance from a multiple of π inside which the kernel is not used.
const PARITY_ZONE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    MehlerExact,
    StrangSplit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PropagatorConfig {
    pub grid: Grid1D,
    pub dt: f64,
    pub scheme: Scheme,
}

impl Default for PropagatorConfig {
    fn default() -> Self {
        Self {
            grid: Grid1D::default_pde(),
            dt: 1e-3,
            scheme: Scheme::StrangSplit,
        }
    }
}

impl PropagatorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt <= MAX_DT) {
            return Err(WfError::Config(format!(
                "dt must lie in (0, {MAX_DT}], got {}",
                self.dt
            )));
        }
        Grid1D::new(self.grid.x_min(), self.grid.x_max(), self.grid.len()).map(|_| ())
    }

    /// Dispatches to the configured scheme.
    pub fn evolve(
        &self,
        u0: &SampledField,
        pot: &Potential,
        t0: f64,
        t1: f64,
    ) -> Result<SampledField> {
        match self.scheme {
            Scheme::StrangSplit => split_step_evolve(u0, pot, t0, t1, self),
            Scheme::MehlerExact => {
                if !pot.is_zero() {
                    return Err(WfError::Config(
                        "the Mehler scheme only handles v = 0".into(),
                    ));
                }
                mehler_evolve(u0, t1 - t0, self)
            }
        }
    }
}

fn check_input(u0: &SampledField, cfg: &PropagatorConfig) -> Result<()> {
    cfg.validate()?;
    if !u0.grid().same_as(&cfg.grid) {
        return Err(WfError::GridMismatch(format!(
            "field lives on {:?}, propagator on {:?}",
            u0.grid(),
            cfg.grid
        )));
    }
    Ok(())
}

fn guard(u: &SampledField) -> Result<()> {
    let fraction = u.boundary_fraction();
    if fraction > BOUNDARY_TOLERANCE {
        Err(WfError::DomainTooSmall { fraction })
    } else {
        Ok(())
    }
}

/// Strang splitting: half potential step, full kinetic step, half potential step.
pub fn split_step_evolve(
    u0: &SampledField,
    pot: &Potential,
    t0: f64,
    t1: f64,
    cfg: &PropagatorConfig,
) -> Result<SampledField> {
    check_input(u0, cfg)?;
    guard(u0)?;
    let span = t1 - t0;
    if span == 0.0 {
        return Ok(u0.clone());
    }
    let n_steps = (span.abs() / cfg.dt).ceil() as usize;
    let dt = span / n_steps as f64;
    let g = cfg.grid;
    let n = g.len();
    let xs = g.points();
    let fft = FftPair::new(n);
    let kinetic: Vec<Complex64> = g
        .frequencies()
        .iter()
        .map(|k| Complex64::from_polar(1.0 / n as f64, -dt * k * k / 2.0))
        .collect();
    let potential_factor = |t: f64, frac: f64| -> Vec<Complex64> {
        xs.iter()
            .map(|&x| Complex64::from_polar(1.0, -frac * dt * (0.5 * x * x + pot.value(t, x))))
            .collect()
    };
    let frozen = pot.is_time_independent();
    let (half, full) = if frozen {
        (potential_factor(t0, 0.5), potential_factor(t0, 1.0))
    } else {
        (Vec::new(), Vec::new())
    };

    let mut u = u0.clone();
    for step in 0..n_steps {
        let t_mid = t0 + (step as f64 + 0.5) * dt;
        let values = u.values_mut();
        // Consecutive half steps of a frozen potential merge into one full step.
        if frozen {
            let lead = if step == 0 { &half } else { &full };
            values.iter_mut().zip(lead).for_each(|(v, p)| *v *= p);
        } else {
            let p = potential_factor(t_mid, 0.5);
            values.iter_mut().zip(&p).for_each(|(v, p)| *v *= p);
        }
        fft.forward.process(values);
        values.iter_mut().zip(&kinetic).for_each(|(v, k)| *v *= k);
        fft.inverse.process(values);
        if !frozen {
            let p = potential_factor(t_mid, 0.5);
            values.iter_mut().zip(&p).for_each(|(v, p)| *v *= p);
        } else if step + 1 == n_steps {
            values.iter_mut().zip(&half).for_each(|(v, p)| *v *= p);
        }
        if (step + 1) % GUARD_INTERVAL == 0 {
            guard(&u)?;
        }
    }
    guard(&u)?;
    Ok(u)
}

/// Free particle: spectral multiplier `e^{−itk²/2}`.
pub fn free_evolve(u0: &SampledField, t: f64, cfg: &PropagatorConfig) -> Result<SampledField> {
    check_input(u0, cfg)?;
    guard(u0)?;
    if t == 0.0 {
        return Ok(u0.clone());
    }
    let g = cfg.grid;
    let n = g.len();
    let fft = FftPair::new(n);
    let mut u = u0.clone();
    let values = u.values_mut();
    fft.forward.process(values);
    for (v, k) in values.iter_mut().zip(g.frequencies()) {
        *v *= Complex64::from_polar(1.0 / n as f64, -t * k * k / 2.0);
    }
    fft.inverse.process(values);
    guard(&u)?;
    Ok(u)
}

/// Exact harmonic-oscillator evolution for `v ≡ 0`.
///
/// Near multiples of π the parity formula plus a short split-step correction
/// is used; where `|sin t|` is small the step is split at π/2; elsewhere the
/// Mehler kernel is applied as a discrete chirp convolution. The kernel
/// quadrature does not wrap around the grid, so mass leaving the grid is lost
/// rather than aliased.
pub fn mehler_evolve(u0: &SampledField, t: f64, cfg: &PropagatorConfig) -> Result<SampledField> {
    check_input(u0, cfg)?;
    let m = (t / PI).round();
    let rest = t - m * PI;
    if rest.abs() <= PARITY_ZONE {
        let flipped = parity_field(u0, m as i64)?;
        if rest == 0.0 {
            return Ok(flipped);
        }
        return split_step_evolve(&flipped, &Potential::zero(), 0.0, rest, cfg);
    }
    if t.sin().abs() < 0.5 {
        let quarter = mehler_kernel(u0, PI / 2.0)?;
        return mehler_kernel(&quarter, t - PI / 2.0);
    }
    mehler_kernel(u0, t)
}

/// `(2πi sin t)^{−1/2} ∫ exp(i[(x²+y²)cos t − 2xy]/(2 sin t)) f(y) dy` on the
/// grid nodes, with the branch continued through the multiples of π.
fn mehler_kernel(u0: &SampledField, t: f64) -> Result<SampledField> {
    let g = *u0.grid();
    let n = g.len();
    let h = g.spacing();
    let x0 = g.x_min();
    let (s, c) = t.sin_cos();
    let turns = (t / PI).floor();
    let prefactor = Complex64::from_polar(
        (2.0 * PI * s.abs()).powf(-0.5),
        -PI / 4.0 - turns * PI / 2.0,
    ) * h;

    // x_m y_n = x0² + x0 h (m + n) + h²(m² + n² − (m − n)²)/2 splits the phase
    // into α_m + α_n + β (m − n)²/2.
    let alpha = |k: usize| {
        let kf = k as f64;
        let x = g.x(k);
        (x * x * c - x0 * x0 - 2.0 * x0 * h * kf - h * h * kf * kf) / (2.0 * s)
    };
    let beta = h * h / s;
    let size = 2 * n;
    let fft = FftPair::new(size);

    let mut a = vec![Complex64::new(0.0, 0.0); size];
    for (k, (slot, f)) in a.iter_mut().zip(u0.values()).enumerate() {
        *slot = f * Complex64::from_polar(1.0, alpha(k));
    }
    let mut kernel = vec![Complex64::new(0.0, 0.0); size];
    for k in 0..n {
        let ck = Complex64::from_polar(1.0, 0.5 * beta * (k * k) as f64);
        kernel[k] = ck;
        if k > 0 {
            kernel[size - k] = ck;
        }
    }
    fft.forward.process(&mut a);
    fft.forward.process(&mut kernel);
    a.iter_mut().zip(&kernel).for_each(|(x, k)| *x *= k);
    fft.inverse.process(&mut a);
    let scale = prefactor / size as f64;
    let values = (0..n)
        .map(|k| a[k] * scale * Complex64::from_polar(1.0, alpha(k)))
        .collect();
    SampledField::new(g, values)
}
