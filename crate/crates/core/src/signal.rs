//! Analytic initial-data prototypes with known wave front sets.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WfError};
use crate::grid::{Grid1D, SampledField};

/// Anything that can be evaluated pointwise on the real line.
///
/// `breakpoints` lists points where the function (or a derivative) jumps, so
/// quadrature can split there; `support` is an interval outside of which the
/// function is negligible at double precision.
pub trait PointwiseSignal: Send + Sync {
    fn eval(&self, x: f64) -> Complex64;

    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    fn support(&self) -> Option<(f64, f64)> {
        None
    }
}

impl<F> PointwiseSignal for F
where
    F: Fn(f64) -> Complex64 + Send + Sync,
{
    fn eval(&self, x: f64) -> Complex64 {
        self(x)
    }
}

/// Which frequency half-lines are singular at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectionSet {
    Plus,
    Minus,
    Both,
}

impl DirectionSet {
    pub fn contains(self, xi: f64) -> bool {
        match self {
            DirectionSet::Plus => xi > 0.0,
            DirectionSet::Minus => xi < 0.0,
            DirectionSet::Both => xi != 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub x: f64,
    pub directions: DirectionSet,
}

/// Gaussian radius beyond which `e^{-r²/2}` drops below ~1e-18.
const ENVELOPE_RADIUS: f64 = 9.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SignalSpec {
    /// `exp(-(x-c)²/(2w²))`.
    Gaussian { center: f64, width: f64 },
    /// `H(x-j) exp(-(x-j)²/(2w²))`, with `H(0) = 1/2`.
    HeavisideGaussian { jump_point: f64, width: f64 },
    /// `|x-j|^α exp(-(x-j)²/(2w²))`.
    AbsPower {
        exponent: f64,
        jump_point: f64,
        width: f64,
    },
    /// `exp(iηx) · base(x)`.
    Modulated {
        base: Box<SignalSpec>,
        frequency: f64,
    },
    /// Unit-mass Gaussian of width ε standing in for `δ(x-c)`.
    DiracTrainApprox { center: f64, epsilon: f64 },
}

impl SignalSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(WfError::Config(format!("{name} must be positive, got {v}")))
            }
        };
        match self {
            SignalSpec::Gaussian { width, .. } => positive("width", *width),
            SignalSpec::HeavisideGaussian { width, .. } => positive("width", *width),
            SignalSpec::AbsPower {
                exponent, width, ..
            } => {
                positive("exponent", *exponent)?;
                positive("width", *width)
            }
            SignalSpec::Modulated { base, frequency } => {
                if !frequency.is_finite() {
                    return Err(WfError::Config(
                        "modulation frequency must be finite".into(),
                    ));
                }
                base.validate()
            }
            SignalSpec::DiracTrainApprox { epsilon, .. } => positive("epsilon", *epsilon),
        }
    }

    /// Ground-truth wave front set.
    ///
    /// For `dirac_train_approx` this is the set of the limiting delta.
    pub fn wave_front_set(&self) -> Vec<SingularPoint> {
        match self {
            SignalSpec::Gaussian { .. } => Vec::new(),
            SignalSpec::HeavisideGaussian { jump_point, .. } => vec![SingularPoint {
                x: *jump_point,
                directions: DirectionSet::Both,
            }],
            SignalSpec::AbsPower {
                exponent,
                jump_point,
                ..
            } => {
                if is_even_integer(*exponent) {
                    Vec::new()
                } else {
                    vec![SingularPoint {
                        x: *jump_point,
                        directions: DirectionSet::Both,
                    }]
                }
            }
            SignalSpec::Modulated { base, .. } => base.wave_front_set(),
            SignalSpec::DiracTrainApprox { center, .. } => vec![SingularPoint {
                x: *center,
                directions: DirectionSet::Both,
            }],
        }
    }

    /// Whether `(x, xi)` lies in the ground-truth wave front set.
    pub fn is_singular_at(&self, x: f64, xi: f64, tol: f64) -> bool {
        self.wave_front_set()
            .iter()
            .any(|p| (p.x - x).abs() <= tol && p.directions.contains(xi))
    }
}

fn width_ladder(center: f64, width: f64) -> Vec<f64> {
    let r = ENVELOPE_RADIUS as i32;
    (-r..=r).map(|k| center + k as f64 * width).collect()
}

fn is_even_integer(a: f64) -> bool {
    a.fract() == 0.0 && (a as i64) % 2 == 0
}

impl PointwiseSignal for SignalSpec {
    fn eval(&self, x: f64) -> Complex64 {
        match self {
            SignalSpec::Gaussian { center, width } => {
                let z = (x - center) / width;
                Complex64::new((-0.5 * z * z).exp(), 0.0)
            }
            SignalSpec::HeavisideGaussian { jump_point, width } => {
                let d = x - jump_point;
                let z = d / width;
                let env = (-0.5 * z * z).exp();
                let step = if d > 0.0 {
                    1.0
                } else if d < 0.0 {
                    0.0
                } else {
                    0.5
                };
                Complex64::new(step * env, 0.0)
            }
            SignalSpec::AbsPower {
                exponent,
                jump_point,
                width,
            } => {
                let d = x - jump_point;
                let z = d / width;
                Complex64::new(d.abs().powf(*exponent) * (-0.5 * z * z).exp(), 0.0)
            }
            SignalSpec::Modulated { base, frequency } => {
                base.eval(x) * Complex64::from_polar(1.0, frequency * x)
            }
            SignalSpec::DiracTrainApprox { center, epsilon } => {
                let z = (x - center) / epsilon;
                let norm = 1.0 / (epsilon * (2.0 * std::f64::consts::PI).sqrt());
                Complex64::new(norm * (-0.5 * z * z).exp(), 0.0)
            }
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self {
            SignalSpec::HeavisideGaussian { jump_point, .. } => vec![*jump_point],
            SignalSpec::AbsPower {
                exponent,
                jump_point,
                ..
            } if !is_even_integer(*exponent) => vec![*jump_point],
            SignalSpec::Modulated { base, .. } => base.breakpoints(),
            // Panel edges one width apart keep narrow bumps resolved.
            SignalSpec::Gaussian { center, width } => width_ladder(*center, *width),
            SignalSpec::DiracTrainApprox { center, epsilon } => width_ladder(*center, *epsilon),
            SignalSpec::AbsPower { .. } => Vec::new(),
        }
    }

    fn support(&self) -> Option<(f64, f64)> {
        match self {
            SignalSpec::Gaussian { center, width } => Some((
                center - ENVELOPE_RADIUS * width,
                center + ENVELOPE_RADIUS * width,
            )),
            SignalSpec::HeavisideGaussian { jump_point, width } => {
                Some((*jump_point, jump_point + ENVELOPE_RADIUS * width))
            }
            SignalSpec::AbsPower {
                exponent,
                jump_point,
                width,
            } => {
                let r = (ENVELOPE_RADIUS + 2.0 * exponent) * width;
                Some((jump_point - r, jump_point + r))
            }
            SignalSpec::Modulated { base, .. } => base.support(),
            SignalSpec::DiracTrainApprox { center, epsilon } => Some((
                center - ENVELOPE_RADIUS * epsilon,
                center + ENVELOPE_RADIUS * epsilon,
            )),
        }
    }
}

/// Evaluates `spec` at every node of `grid`.
pub fn sample(spec: &dyn PointwiseSignal, grid: &Grid1D) -> Result<SampledField> {
    let values = grid
        .points()
        .into_iter()
        .map(|x| {
            let v = spec.eval(x);
            if v.re.is_finite() && v.im.is_finite() {
                Ok(v)
            } else {
                Err(WfError::NonFinite {
                    x,
                    value: v.to_string(),
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    SampledField::new(*grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_sample_peaks_at_origin() {
        let g = Grid1D::new(-8.0, 8.0, 16).unwrap();
        let f = sample(
            &SignalSpec::Gaussian {
                center: 0.0,
                width: 1.0,
            },
            &g,
        )
        .unwrap();
        assert_eq!(f.values()[8], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn heaviside_vanishes_left_of_jump() {
        let s = SignalSpec::HeavisideGaussian {
            jump_point: 0.0,
            width: 1.0,
        };
        assert_eq!(s.eval(-1.0), Complex64::new(0.0, 0.0));
        assert_eq!(s.eval(0.0).re, 0.5);
    }

    #[test]
    fn abs_power_direct_substitution() {
        let s = SignalSpec::AbsPower {
            exponent: 0.5,
            jump_point: 0.0,
            width: 1.0,
        };
        let expected = 2.0 * (-8.0f64).exp();
        assert!((s.eval(4.0).re - expected).abs() < 1e-16);
    }

    #[test]
    fn heaviside_ground_truth_is_the_jump() {
        let s = SignalSpec::HeavisideGaussian {
            jump_point: 0.5,
            width: 1.0,
        };
        assert_eq!(
            s.wave_front_set(),
            vec![SingularPoint {
                x: 0.5,
                directions: DirectionSet::Both
            }]
        );
    }

    #[test]
    fn modulation_keeps_ground_truth() {
        let base = SignalSpec::HeavisideGaussian {
            jump_point: 0.0,
            width: 1.0,
        };
        let m = SignalSpec::Modulated {
            base: Box::new(base.clone()),
            frequency: 40.0,
        };
        assert_eq!(m.wave_front_set(), base.wave_front_set());
        assert!((m.eval(0.3).norm() - base.eval(0.3).norm()).abs() < 1e-15);
    }

    #[test]
    fn even_power_is_smooth() {
        let s = SignalSpec::AbsPower {
            exponent: 2.0,
            jump_point: 0.0,
            width: 1.0,
        };
        assert!(s.wave_front_set().is_empty());
        assert!(s.breakpoints().is_empty());
    }

    #[test]
    fn dirac_approx_has_unit_mass() {
        let s = SignalSpec::DiracTrainApprox {
            center: 0.25,
            epsilon: 0.05,
        };
        let g = Grid1D::new(-2.0, 2.0, 8192).unwrap();
        let f = sample(&s, &g).unwrap();
        let mass: f64 = f.values().iter().map(|v| v.re).sum::<f64>() * g.spacing();
        assert!((mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_finite_sample_names_the_point() {
        let bad = |x: f64| Complex64::new(1.0 / x, 0.0);
        let g = Grid1D::new(-1.0, 1.0, 4).unwrap();
        match sample(&bad, &g) {
            Err(WfError::NonFinite { x, .. }) => assert_eq!(x, 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn resampling_is_bit_identical() {
        let s = SignalSpec::Gaussian {
            center: 0.3,
            width: 0.7,
        };
        let g = Grid1D::new(-4.0, 4.0, 256).unwrap();
        assert_eq!(sample(&s, &g).unwrap(), sample(&s, &g).unwrap());
    }
}
