//! Harmonic-oscillator evolution `φ(t) = e^{i(t/2)(∂ₓ² − x²)} φ` of windows.
//!
//! A chirp `A e^{−a z²/2}` stays a chirp: with `Z(t) = cos t + i a₀ sin t`,
//! `a(t) = (a₀ cos t + i sin t)/Z` and `A(t) = A₀ Z^{−1/2}`. The odd chirp
//! `B z e^{−a z²/2}` shares `a(t)` and picks up `Z^{−3/2}`. The power of `Z` is
//! taken along the continuous branch of `arg Z` starting from zero.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;

use crate::error::{Result, WfError};
use crate::grid::{Grid1D, SampledField};
use crate::hamflow::Potential;
use crate::propagator::{split_step_evolve, PropagatorConfig};
use crate::window::{scaled_window, WindowBase, WindowInstance, WindowRepr, WindowSpec};

/// Mesh step for continuing `arg Z`.
const BRANCH_STEP: f64 = PI / 256.0;

/// Continuous argument of `Z(t) = cos t + i a₀ sin t`, `arg Z(0) = 0`.
fn tracked_arg(a0: Complex64, t: f64) -> Result<f64> {
    let z = |s: f64| Complex64::new(s.cos(), 0.0) + Complex64::i() * a0 * s.sin();
    let n = (t.abs() / BRANCH_STEP).ceil() as usize;
    let mut arg = 0.0;
    let mut prev = z(0.0);
    for k in 1..=n {
        let s = if k == n {
            t
        } else {
            t.signum() * k as f64 * BRANCH_STEP
        };
        let next = z(s);
        let jump = (next / prev).arg();
        if jump.abs() > PI / 2.0 {
            return Err(WfError::BranchTracking { t: s, jump });
        }
        arg += jump;
        prev = next;
    }
    Ok(arg)
}

/// `Z(t)^{−p}` on the tracked branch.
fn tracked_power(a0: Complex64, t: f64, p: f64) -> Result<Complex64> {
    let z = Complex64::new(t.cos(), 0.0) + Complex64::i() * a0 * t.sin();
    let arg = tracked_arg(a0, t)?;
    Ok(Complex64::from_polar(z.norm().powf(-p), -p * arg))
}

/// Closed-form evolution of a Gaussian or odd Gaussian chirp by time `t`.
pub fn evolve_gaussian_window(w: &WindowInstance, t: f64) -> Result<WindowInstance> {
    if !t.is_finite() {
        return Err(WfError::Domain(format!(
            "evolution time must be finite, got {t}"
        )));
    }
    let (amplitude, width, power) = match &w.repr {
        WindowRepr::GaussianChirp { amplitude, width } => (*amplitude, *width, 0.5),
        WindowRepr::HermiteChirp { amplitude, width } => (*amplitude, *width, 1.5),
        WindowRepr::Sampled(_) => {
            return Err(WfError::Domain(
                "closed-form evolution needs a chirp window".into(),
            ))
        }
    };
    if !(width.re > 0.0) {
        return Err(WfError::Domain(format!(
            "chirp needs Re a > 0, got {width}"
        )));
    }
    let (s, c) = t.sin_cos();
    let z = Complex64::new(c, 0.0) + Complex64::i() * width * s;
    let a = (width * c + Complex64::new(0.0, s)) / z;
    assert!(a.re > 0.0, "evolved chirp lost integrability: a = {a}");
    let amp = amplitude * tracked_power(width, t, power)?;
    let repr = match w.repr {
        WindowRepr::GaussianChirp { .. } => WindowRepr::GaussianChirp {
            amplitude: amp,
            width: a,
        },
        _ => WindowRepr::HermiteChirp {
            amplitude: amp,
            width: a,
        },
    };
    Ok(WindowInstance {
        repr,
        lambda: w.lambda,
        b: w.b,
        time_tag: w.time_tag + t,
    })
}

/// `e^{−imπ/2}` computed exactly from `m mod 4`.
fn quarter_phase(m: i64) -> Complex64 {
    match m.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// `U(mπ) f = e^{−imπ/2} f((−1)^m x)` on the nodes of `f`'s grid.
pub fn parity_field(f: &SampledField, m: i64) -> Result<SampledField> {
    let phase = quarter_phase(m);
    if m % 2 == 0 {
        return Ok(f.scale(phase));
    }
    let g = f.grid();
    if !g.is_symmetric() {
        return Err(WfError::GridMismatch(format!(
            "reflection x -> -x needs a grid symmetric about 0, got [{}, {})",
            g.x_min(),
            g.x_max()
        )));
    }
    let n = g.len();
    let v = f.values();
    let values = (0..n).map(|i| v[(n - i) % n] * phase).collect();
    SampledField::new(*g, values)
}

/// `U(mπ)` applied to a window instance.
pub fn parity_window(w: &WindowInstance, m: i64) -> Result<WindowInstance> {
    let phase = quarter_phase(m);
    let odd = m % 2 != 0;
    let repr = match &w.repr {
        WindowRepr::GaussianChirp { amplitude, width } => WindowRepr::GaussianChirp {
            amplitude: amplitude * phase,
            width: *width,
        },
        WindowRepr::HermiteChirp { amplitude, width } => WindowRepr::HermiteChirp {
            amplitude: amplitude * phase * if odd { -1.0 } else { 1.0 },
            width: *width,
        },
        WindowRepr::Sampled(f) => {
            if odd {
                // Nodes z_i map to −z_i, so the reflected grid runs backwards
                // from −z_{n−1}.
                let g = f.grid();
                let h = g.spacing();
                let reflected = Grid1D::new(-g.x_max() + h, -g.x_min() + h, g.len())?;
                let values = f.values().iter().rev().map(|v| v * phase).collect();
                WindowRepr::Sampled(SampledField::new(reflected, values)?)
            } else {
                WindowRepr::Sampled(f.scale(phase))
            }
        }
    };
    Ok(WindowInstance {
        repr,
        lambda: w.lambda,
        b: w.b,
        time_tag: w.time_tag + m as f64 * PI,
    })
}

/// Evolves any window numerically on `cfg.grid` with `v ≡ 0`.
pub fn evolve_window_numeric(
    w: &WindowInstance,
    t: f64,
    cfg: &PropagatorConfig,
) -> Result<WindowInstance> {
    let sampled = w.sample_on(&cfg.grid, 0.0)?;
    let evolved = split_step_evolve(&sampled, &Potential::zero(), 0.0, t, cfg)?;
    Ok(WindowInstance {
        repr: WindowRepr::Sampled(evolved),
        lambda: w.lambda,
        b: w.b,
        time_tag: w.time_tag + t,
    })
}

type CacheKey = (u8, u64, u64, u64, u64, u64);

/// Shared cache of `φ_λ(t)` keyed on `(base, b, λ, t)`.
///
/// Chirp bases use the closed form; sampled bases fall back to the numeric
/// route on the configured propagator grid.
pub struct WindowCache {
    spec: WindowSpec,
    numeric: Option<PropagatorConfig>,
    entries: RwLock<HashMap<CacheKey, Arc<WindowInstance>>>,
}

impl WindowCache {
    pub fn new(spec: WindowSpec, numeric: Option<PropagatorConfig>) -> Result<Self> {
        spec.validate()?;
        if matches!(spec.base, WindowBase::Custom(_)) && numeric.is_none() {
            return Err(WfError::Config(
                "sampled windows need a propagator configuration to evolve".into(),
            ));
        }
        Ok(Self {
            spec,
            numeric,
            entries: RwLock::new(HashMap::new()),
        })
    }

    pub fn spec(&self) -> &WindowSpec {
        &self.spec
    }

    fn key(&self, lambda: f64, t: f64) -> CacheKey {
        let (tag, a0) = match &self.spec.base {
            WindowBase::Gaussian { a0 } => (0, *a0),
            WindowBase::Hermite1 => (1, Complex64::new(1.0, 0.0)),
            WindowBase::Custom(_) => (2, Complex64::new(0.0, 0.0)),
        };
        (
            tag,
            a0.re.to_bits(),
            a0.im.to_bits(),
            self.spec.b.to_bits(),
            lambda.to_bits(),
            t.to_bits(),
        )
    }

    /// `φ_λ(t) = U(t) φ_{0,λ}`.
    pub fn get(&self, lambda: f64, t: f64) -> Result<Arc<WindowInstance>> {
        let key = self.key(lambda, t);
        if let Some(w) = self.entries.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(w));
        }
        let base = scaled_window(&self.spec, lambda)?;
        let evolved = if t == 0.0 {
            base
        } else {
            match &self.numeric {
                Some(cfg) if matches!(base.repr, WindowRepr::Sampled(_)) => {
                    evolve_window_numeric(&base, t, cfg)?
                }
                _ => evolve_gaussian_window(&base, t)?,
            }
        };
        let entry = Arc::new(evolved);
        self.entries
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| Arc::clone(&entry));
        Ok(entry)
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// RK4 on `a' = i(1 − a²)`, `A' = −i p a A` (p = 1/2 even, 3/2 odd).
    fn riccati(a0: Complex64, p: f64, t: f64) -> (Complex64, Complex64) {
        let n = 20_000;
        let h = t / n as f64;
        let f = |a: Complex64, amp: Complex64| {
            (
                Complex64::i() * (1.0 - a * a),
                -Complex64::i() * p * a * amp,
            )
        };
        let (mut a, mut amp) = (a0, Complex64::new(1.0, 0.0));
        for _ in 0..n {
            let (k1a, k1m) = f(a, amp);
            let (k2a, k2m) = f(a + k1a * (h / 2.0), amp + k1m * (h / 2.0));
            let (k3a, k3m) = f(a + k2a * (h / 2.0), amp + k2m * (h / 2.0));
            let (k4a, k4m) = f(a + k3a * h, amp + k3m * h);
            a += (k1a + k2a * 2.0 + k3a * 2.0 + k4a) * (h / 6.0);
            amp += (k1m + k2m * 2.0 + k3m * 2.0 + k4m) * (h / 6.0);
        }
        (a, amp)
    }

    fn parts(w: &WindowInstance) -> (Complex64, Complex64) {
        match w.repr {
            WindowRepr::GaussianChirp { amplitude, width }
            | WindowRepr::HermiteChirp { amplitude, width } => (amplitude, width),
            _ => panic!("expected a chirp"),
        }
    }

    #[test]
    fn closed_form_matches_riccati_oracle() {
        for a0 in [
            Complex64::new(1.0, 0.0),
            Complex64::new(4.0, 0.0),
            Complex64::new(0.3, 0.5),
        ] {
            let g = WindowInstance::gaussian_chirp(Complex64::new(1.0, 0.0), a0).unwrap();
            let hspec = WindowInstance {
                repr: WindowRepr::HermiteChirp {
                    amplitude: Complex64::new(1.0, 0.0),
                    width: a0,
                },
                ..g.clone()
            };
            for t in [0.4, PI / 2.0, PI, -PI, 2.5, 5.0, -4.0] {
                for (w, p) in [(&g, 0.5), (&hspec, 1.5)] {
                    let (amp, a) = parts(&evolve_gaussian_window(w, t).unwrap());
                    let (ra, ramp) = riccati(a0, p, t);
                    assert!((a - ra).norm() < 1e-9, "a0={a0} t={t}");
                    assert!((amp - ramp).norm() < 1e-9, "a0={a0} t={t} p={p}");
                }
            }
        }
    }

    #[test]
    fn ground_state_only_turns_phase() {
        let w = WindowInstance::gaussian_chirp(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
            .unwrap();
        for t in [0.3, 2.0, 7.5, -3.0] {
            let (amp, a) = parts(&evolve_gaussian_window(&w, t).unwrap());
            assert!((a - 1.0).norm() < 1e-14);
            assert!((amp - Complex64::from_polar(1.0, -t / 2.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn half_periods_give_quarter_phases() {
        let w = scaled_window(&WindowSpec::gaussian(0.25), 16.0).unwrap();
        let (a0_amp, a0) = parts(&w);
        let (amp, a) = parts(&evolve_gaussian_window(&w, PI).unwrap());
        assert!((a - a0).norm() < 1e-12);
        assert!((amp / a0_amp - Complex64::from_polar(1.0, -PI / 2.0)).norm() < 1e-12);
        let back = evolve_gaussian_window(&w, -PI).unwrap();
        let (amp, _) = parts(&back);
        assert!((amp / a0_amp - Complex64::i()).norm() < 1e-12);
        assert_eq!(back.time_tag, -PI);
    }

    #[test]
    fn full_period_restores_width_and_modulus() {
        let w = WindowInstance::gaussian_chirp(Complex64::new(2.0, 0.0), Complex64::new(4.0, 1.0))
            .unwrap();
        let (amp, a) = parts(&evolve_gaussian_window(&w, 2.0 * PI).unwrap());
        assert!((a - Complex64::new(4.0, 1.0)).norm() < 1e-10);
        assert!((amp.norm() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn evolution_preserves_norm() {
        let w = scaled_window(&WindowSpec::hermite1(0.3), 50.0).unwrap();
        for t in [0.2, 1.7, -2.2] {
            let e = evolve_gaussian_window(&w, t).unwrap();
            assert!((e.l2_norm() - w.l2_norm()).abs() < 1e-8);
        }
    }

    #[test]
    fn parity_phases() {
        let g = Grid1D::new(-8.0, 8.0, 64).unwrap();
        let f = SampledField::from_fn(g, |x| Complex64::new((-x * x).exp(), x)).unwrap();
        assert_eq!(parity_field(&f, 0).unwrap(), f);
        assert_eq!(
            parity_field(&f, 2).unwrap(),
            f.scale(Complex64::new(-1.0, 0.0))
        );
        let even = SampledField::from_fn(g, |x| Complex64::new((-x * x).exp(), 0.0)).unwrap();
        assert_eq!(parity_field(&even, -1).unwrap(), even.scale(Complex64::i()));
        let flipped = parity_field(&f, 1).unwrap();
        for i in 1..g.len() {
            let expected = Complex64::new(0.0, -1.0) * f.values()[g.len() - i];
            assert_eq!(flipped.values()[i], expected);
        }
        let skew = SampledField::zeros(Grid1D::new(-4.0, 8.0, 64).unwrap());
        assert!(parity_field(&skew, 1).is_err());
        assert!(parity_field(&skew, 2).is_ok());
    }

    #[test]
    fn window_parity_matches_pointwise_reflection() {
        let base = scaled_window(&WindowSpec::hermite1(0.25), 4.0).unwrap();
        let g = Grid1D::new(-6.0, 6.0, 256).unwrap();
        let sampled = WindowInstance::sampled(base.sample_on(&g, 0.3).unwrap());
        for w in [base, sampled] {
            let r = parity_window(&w, 1).unwrap();
            for z in [-1.1, -0.25, 0.0, 0.6, 1.9] {
                let expected = Complex64::new(0.0, -1.0) * w.eval(-z);
                assert!((r.eval(z) - expected).norm() < 1e-12, "z = {z}");
            }
        }
    }

    #[test]
    fn numeric_route_matches_closed_form() {
        let cfg = PropagatorConfig {
            grid: Grid1D::new(-12.0, 12.0, 1024).unwrap(),
            ..Default::default()
        };
        let w = WindowSpec::gaussian(0.25).unscaled();
        let closed = evolve_gaussian_window(&w, 1.0)
            .unwrap()
            .sample_on(&cfg.grid, 0.0)
            .unwrap();
        let numeric = evolve_window_numeric(&w, 1.0, &cfg).unwrap();
        let WindowRepr::Sampled(f) = &numeric.repr else {
            panic!("numeric route returns samples")
        };
        assert!(f.l2_distance(&closed).unwrap() < 1e-5);
        let same = evolve_window_numeric(&w, 0.0, &cfg).unwrap();
        let WindowRepr::Sampled(f0) = &same.repr else {
            panic!()
        };
        assert_eq!(*f0, w.sample_on(&cfg.grid, 0.0).unwrap());
    }

    #[test]
    fn numeric_hermite_half_period_is_parity() {
        let cfg = PropagatorConfig {
            grid: Grid1D::new(-12.0, 12.0, 1024).unwrap(),
            ..Default::default()
        };
        let w = WindowSpec::hermite1(0.25).unscaled();
        let numeric = evolve_window_numeric(&w, PI, &cfg).unwrap();
        let WindowRepr::Sampled(f) = &numeric.repr else {
            panic!()
        };
        let expected = parity_field(&w.sample_on(&cfg.grid, 0.0).unwrap(), 1).unwrap();
        assert!(f.l2_distance(&expected).unwrap() < 1e-5);
    }

    #[test]
    fn cache_reuses_entries() {
        let cache = WindowCache::new(WindowSpec::gaussian(0.25), None).unwrap();
        let a = cache.get(16.0, -PI).unwrap();
        let b = cache.get(16.0, -PI).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        cache.get(32.0, -PI).unwrap();
        assert_eq!(cache.len(), 2);
        let custom = WindowSpec {
            base: WindowBase::Custom(
                WindowSpec::gaussian(0.25)
                    .unscaled()
                    .sample_on(&Grid1D::new(-8.0, 8.0, 64).unwrap(), 0.0)
                    .unwrap(),
            ),
            b: 0.25,
        };
        assert!(WindowCache::new(custom, None).is_err());
    }

    #[test]
    fn sampled_windows_have_no_closed_form() {
        let g = Grid1D::new(-4.0, 4.0, 64).unwrap();
        let w = WindowInstance::sampled(SampledField::zeros(g));
        assert!(matches!(
            evolve_gaussian_window(&w, 1.0),
            Err(WfError::Domain(_))
        ));
    }
}
