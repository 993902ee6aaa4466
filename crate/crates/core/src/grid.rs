//! Uniform periodic grids and complex fields sampled on them.
//!
//! A grid with `n` points on `[x_min, x_max)` has nodes `x_i = x_min + i h`
//! with `h = (x_max - x_min) / n`; the right endpoint is identified with the
//! left one, which is the convention the spectral routines rely on.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Result, WfError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min >= x_max {
            return Err(WfError::InvalidGrid(format!(
                "need finite x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < 2 || !n_points.is_power_of_two() {
            return Err(WfError::InvalidGrid(format!(
                "n_points must be a power of two >= 2, got {n_points}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    /// Default grid for propagation work: [-16, 16) with 4096 points.
    pub fn default_pde() -> Self {
        Self {
            x_min: -16.0,
            x_max: 16.0,
            n_points: 4096,
        }
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn spacing(&self) -> f64 {
        self.length() / self.n_points as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// Angular frequency of DFT bin `m` (FFT ordering, negative half last).
    pub fn frequency(&self, m: usize) -> f64 {
        let n = self.n_points as i64;
        let m = m as i64;
        let signed = if m < n / 2 { m } else { m - n };
        2.0 * PI * signed as f64 / self.length()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.n_points).map(|m| self.frequency(m)).collect()
    }

    pub fn frequency_spacing(&self) -> f64 {
        2.0 * PI / self.length()
    }

    pub fn nyquist(&self) -> f64 {
        PI / self.spacing()
    }

    /// Symmetric about the origin, so that `x -> -x` maps nodes to nodes.
    pub fn is_symmetric(&self) -> bool {
        (self.x_min + self.x_max).abs() <= 1e-12 * self.length()
    }

    pub fn same_as(&self, other: &Grid1D) -> bool {
        self.n_points == other.n_points
            && (self.x_min - other.x_min).abs() <= 1e-12 * self.length()
            && (self.x_max - other.x_max).abs() <= 1e-12 * self.length()
    }

    /// Whether the closed interval `[lo, hi]` lies within the sampled range.
    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        let last = self.x(self.n_points - 1);
        lo >= self.x_min - 1e-12 && hi <= last + 1e-12
    }

    /// Fractional index of position `x`.
    pub fn index_of(&self, x: f64) -> f64 {
        (x - self.x_min) / self.spacing()
    }
}

/// Complex values on a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl SampledField {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(WfError::GridMismatch(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(WfError::NonFinite {
                x: grid.x(i),
                value: v.to_string(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self {
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
            grid,
        }
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid.points().into_iter().map(f).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `‖self − other‖₂`.
    pub fn l2_distance(&self, other: &SampledField) -> Result<f64> {
        check_same_grid(&self.grid, &other.grid)?;
        let h = self.grid.spacing();
        let s: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        Ok((s * h).sqrt())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Norm fraction `‖u·1_outer‖₂ / ‖u‖₂` carried by the outer 5% of the grid
    /// on each side.
    pub fn boundary_fraction(&self) -> f64 {
        let n = self.values.len();
        let band = ((n as f64) * 0.05).ceil() as usize;
        let total: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let outer: f64 = self.values[..band]
            .iter()
            .chain(&self.values[n - band..])
            .map(|v| v.norm_sqr())
            .sum();
        (outer / total).sqrt()
    }
}

fn check_same_grid(a: &Grid1D, b: &Grid1D) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(WfError::GridMismatch(format!("{a:?} vs {b:?}")))
    }
}

/// Periodic trapezoid approximation of `‖f‖₂`.
pub fn l2_norm(f: &SampledField) -> f64 {
    let h = f.grid.spacing();
    (f.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * h).sqrt()
}

/// Periodic trapezoid approximation of `∫ conj(f) g dy`.
pub fn inner_product(f: &SampledField, g: &SampledField) -> Result<Complex64> {
    check_same_grid(&f.grid, &g.grid)?;
    let h = f.grid.spacing();
    let s: Complex64 = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(a, b)| a.conj() * b)
        .sum();
    Ok(s * h)
}

/// Forward/inverse FFT pair of a fixed length. Inverse is unnormalised.
pub(crate) struct FftPair {
    pub forward: Arc<dyn Fft<f64>>,
    pub inverse: Arc<dyn Fft<f64>>,
}

impl FftPair {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }
}
