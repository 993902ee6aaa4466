//! Analysis windows and their λ-scaled instances.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, WfError};
use crate::grid::{l2_norm, Grid1D, SampledField};

/// Profile of the unscaled window φ₀.
#[derive(Debug, Clone, PartialEq)]
pub enum WindowBase {
    /// `exp(-a₀ x²/2)`, `Re a₀ > 0`.
    Gaussian { a0: Complex64 },
    /// `x exp(-x²/2)`.
    Hermite1,
    /// Sampled profile centred at the origin of its grid.
    Custom(SampledField),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowSpec {
    pub base: WindowBase,
    pub b: f64,
}

impl WindowSpec {
    pub fn gaussian(b: f64) -> Self {
        Self {
            base: WindowBase::Gaussian {
                a0: Complex64::new(1.0, 0.0),
            },
            b,
        }
    }

    pub fn hermite1(b: f64) -> Self {
        Self {
            base: WindowBase::Hermite1,
            b,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.b > 0.0 && self.b < 1.0) {
            return Err(WfError::Config(format!(
                "window scale exponent b must lie in (0, 1), got {}",
                self.b
            )));
        }
        match &self.base {
            WindowBase::Gaussian { a0 } if !(a0.re > 0.0 && a0.im.is_finite()) => Err(
                WfError::Config(format!("Gaussian window needs Re a0 > 0, got {a0}")),
            ),
            WindowBase::Custom(f) if f.max_abs() == 0.0 => Err(WfError::Config(
                "custom window profile is identically zero".into(),
            )),
            _ => Ok(()),
        }
    }

    /// L² norm of φ₀.
    pub fn normalization(&self) -> f64 {
        self.unscaled().l2_norm()
    }

    /// φ₀ itself, as a λ = 1 instance.
    pub fn unscaled(&self) -> WindowInstance {
        let repr = match &self.base {
            WindowBase::Gaussian { a0 } => WindowRepr::GaussianChirp {
                amplitude: Complex64::new(1.0, 0.0),
                width: *a0,
            },
            WindowBase::Hermite1 => WindowRepr::HermiteChirp {
                amplitude: Complex64::new(1.0, 0.0),
                width: Complex64::new(1.0, 0.0),
            },
            WindowBase::Custom(f) => WindowRepr::Sampled(f.clone()),
        };
        WindowInstance {
            repr,
            lambda: 1.0,
            b: self.b,
            time_tag: 0.0,
        }
    }
}

/// Concrete window representation.
#[derive(Debug, Clone, PartialEq)]
pub enum WindowRepr {
    /// `A exp(-a z²/2)`.
    GaussianChirp {
        amplitude: Complex64,
        width: Complex64,
    },
    /// `A z exp(-a z²/2)`.
    HermiteChirp {
        amplitude: Complex64,
        width: Complex64,
    },
    /// Samples of φ(z) on a grid in the offset variable z.
    Sampled(SampledField),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowInstance {
    pub repr: WindowRepr,
    pub lambda: f64,
    pub b: f64,
    /// Evolution time t of φ_λ(t, ·); zero for an unevolved window.
    pub time_tag: f64,
}

impl WindowInstance {
    pub fn gaussian_chirp(amplitude: Complex64, width: Complex64) -> Result<Self> {
        if !(width.re > 0.0) {
            return Err(WfError::Domain(format!(
                "Gaussian chirp needs Re a > 0, got {width}"
            )));
        }
        Ok(Self {
            repr: WindowRepr::GaussianChirp { amplitude, width },
            lambda: 1.0,
            b: 0.5,
            time_tag: 0.0,
        })
    }

    pub fn sampled(field: SampledField) -> Self {
        Self {
            repr: WindowRepr::Sampled(field),
            lambda: 1.0,
            b: 0.5,
            time_tag: 0.0,
        }
    }

    pub fn eval(&self, z: f64) -> Complex64 {
        match &self.repr {
            WindowRepr::GaussianChirp { amplitude, width } => {
                amplitude * (-0.5 * width * z * z).exp()
            }
            WindowRepr::HermiteChirp { amplitude, width } => {
                amplitude * z * (-0.5 * width * z * z).exp()
            }
            WindowRepr::Sampled(f) => interpolate(f, z),
        }
    }

    /// Complex width parameter `a` of the analytic representations.
    pub fn chirp_width(&self) -> Option<Complex64> {
        match &self.repr {
            WindowRepr::GaussianChirp { width, .. } | WindowRepr::HermiteChirp { width, .. } => {
                Some(*width)
            }
            WindowRepr::Sampled(_) => None,
        }
    }

    pub fn max_abs(&self) -> f64 {
        match &self.repr {
            WindowRepr::GaussianChirp { amplitude, .. } => amplitude.norm(),
            WindowRepr::HermiteChirp { amplitude, width } => {
                amplitude.norm() / (std::f64::consts::E * width.re).sqrt()
            }
            WindowRepr::Sampled(f) => f.max_abs(),
        }
    }

    /// Radius R with `|φ(z)| ≤ eps · max|φ|` for `|z| > R`.
    pub fn effective_radius(&self, eps: f64) -> f64 {
        let log_inv = -eps.ln();
        match &self.repr {
            WindowRepr::GaussianChirp { width, .. } => (2.0 * log_inv / width.re).sqrt(),
            WindowRepr::HermiteChirp { width, .. } => {
                // u = z √Re a solves ln u − u²/2 + 1/2 = ln eps on the outer branch.
                let mut u = (2.0 * log_inv).sqrt();
                for _ in 0..50 {
                    u = (2.0 * (u.ln() + 0.5 + log_inv)).sqrt();
                }
                u / width.re.sqrt()
            }
            WindowRepr::Sampled(f) => {
                let cut = eps * f.max_abs();
                let g = f.grid();
                f.values()
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| v.norm() > cut)
                    .map(|(i, _)| g.x(i).abs())
                    .fold(0.0, f64::max)
                    + g.spacing()
            }
        }
    }

    /// Quadrature step that resolves the window profile.
    pub fn resolution_step(&self) -> f64 {
        match &self.repr {
            WindowRepr::GaussianChirp { width, .. } | WindowRepr::HermiteChirp { width, .. } => {
                1.0 / (16.0 * width.re.sqrt())
            }
            WindowRepr::Sampled(f) => f.grid().spacing(),
        }
    }

    /// Magnitude of the chirp rate `|Im a|` (phase derivative per unit offset).
    pub fn chirp_rate(&self) -> f64 {
        self.chirp_width().map_or(0.0, |a| a.im.abs())
    }

    pub fn l2_norm(&self) -> f64 {
        match &self.repr {
            WindowRepr::GaussianChirp { amplitude, width } => {
                amplitude.norm() * (PI / width.re).powf(0.25)
            }
            WindowRepr::HermiteChirp { amplitude, width } => {
                amplitude.norm() * (PI.sqrt() / (2.0 * width.re.powf(1.5))).sqrt()
            }
            WindowRepr::Sampled(f) => l2_norm(f),
        }
    }

    /// Samples `φ(x − center)` at the nodes of `grid`.
    pub fn sample_on(&self, grid: &Grid1D, center: f64) -> Result<SampledField> {
        SampledField::from_fn(*grid, |x| self.eval(x - center))
    }
}

/// Catmull–Rom interpolation of a sampled profile; zero outside its grid.
fn interpolate(f: &SampledField, z: f64) -> Complex64 {
    let g = f.grid();
    let n = g.len() as isize;
    let s = g.index_of(z);
    if !(s >= 0.0 && s <= (n - 1) as f64) {
        return Complex64::new(0.0, 0.0);
    }
    let i = s.floor() as isize;
    let t = s - i as f64;
    if t == 0.0 {
        return f.values()[i as usize];
    }
    let v = |k: isize| {
        if (0..n).contains(&k) {
            f.values()[k as usize]
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    let (p0, p1, p2, p3) = (v(i - 1), v(i), v(i + 1), v(i + 2));
    let t2 = t * t;
    let t3 = t2 * t;
    0.5 * (p1 * 2.0
        + (p2 - p0) * t
        + (p0 * 2.0 - p1 * 5.0 + p2 * 4.0 - p3) * t2
        + (p1 * 3.0 - p0 - p2 * 3.0 + p3) * t3)
}

/// `φ_{0,λ}(x) = λ^{b/2} φ₀(λ^b x)`.
pub fn scaled_window(spec: &WindowSpec, lambda: f64) -> Result<WindowInstance> {
    if !(lambda >= 1.0) || !lambda.is_finite() {
        return Err(WfError::Domain(format!(
            "lambda must be >= 1, got {lambda}"
        )));
    }
    spec.validate()?;
    let b = spec.b;
    let amp = lambda.powf(b / 2.0);
    let squeeze = lambda.powf(b);
    let repr = match &spec.base {
        WindowBase::Gaussian { a0 } => WindowRepr::GaussianChirp {
            amplitude: Complex64::new(amp, 0.0),
            width: a0 * squeeze * squeeze,
        },
        WindowBase::Hermite1 => WindowRepr::HermiteChirp {
            amplitude: Complex64::new(amp * squeeze, 0.0),
            width: Complex64::new(squeeze * squeeze, 0.0),
        },
        WindowBase::Custom(f) => {
            let g = f.grid();
            let scaled = Grid1D::new(g.x_min() / squeeze, g.x_max() / squeeze, g.len())?;
            let values = f.values().iter().map(|v| v * amp).collect();
            WindowRepr::Sampled(SampledField::new(scaled, values)?)
        }
    };
    Ok(WindowInstance {
        repr,
        lambda,
        b,
        time_tag: 0.0,
    })
}
