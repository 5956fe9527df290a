//! Sampled time functions and the quadrature oracles used to check the exact
//! classes.

pub mod special;

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{check_finite, Cplx, ZERO};

/// Values `f(iΔ)`, `i = 0..=N`, `Δ = T/N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFn {
    horizon: f64,
    values: Vec<Cplx>,
}

impl SampledFn {
    pub fn new(horizon: f64, values: Vec<Cplx>) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::domain(format!("horizon must be > 0, got {horizon}")));
        }
        if values.len() < 3 {
            return Err(Error::domain("a sampled function needs N >= 2"));
        }
        for &v in &values {
            check_finite(v)?;
        }
        Ok(Self { horizon, values })
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// Number of grid intervals `N`.
    pub fn count(&self) -> usize {
        self.values.len() - 1
    }

    pub fn step(&self) -> f64 {
        self.horizon / self.count() as f64
    }

    pub fn values(&self) -> &[Cplx] {
        &self.values
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.step()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(|i| self.time(i))
    }

    /// Linear interpolation; `None` outside `[0, T]`.
    pub fn value_at(&self, t: f64) -> Option<Cplx> {
        let x = t / self.step();
        if x.is_nan() || x < 0.0 || x > self.count() as f64 * (1.0 + 1e-12) {
            return None;
        }
        let i = (x.floor() as usize).min(self.count() - 1);
        let frac = (x - i as f64).clamp(0.0, 1.0);
        Some(self.values[i] * (1.0 - frac) + self.values[i + 1] * frac)
    }

    fn same_grid(&self, other: &SampledFn) -> Result<()> {
        if self.count() != other.count()
            || (self.horizon - other.horizon).abs() > 1e-12 * self.horizon
        {
            return Err(Error::domain("grid mismatch"));
        }
        Ok(())
    }

    /// CSV with header `t,re,im` and 17 significant digits.
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "t,re,im")?;
        for (t, v) in self.times().zip(&self.values) {
            writeln!(w, "{:.16e},{:.16e},{:.16e}", t, v.re, v.im)?;
        }
        Ok(())
    }
}

/// `f` evaluated on the grid of `N` intervals over `[0, T]`.
pub fn sample(f: impl Fn(f64) -> Cplx, horizon: f64, n: usize) -> Result<SampledFn> {
    if n < 2 {
        return Err(Error::domain("a sampled function needs N >= 2"));
    }
    let step = horizon / n as f64;
    SampledFn::new(horizon, (0..=n).map(|i| f(i as f64 * step)).collect())
}

/// Composite trapezoid rule for `∫₀ᵗ a(t−u) b(u) du` at every grid point.
///
/// Each output is summed in a fixed order, so the result does not depend on
/// the thread count.
pub fn conv_trapezoid(a: &SampledFn, b: &SampledFn) -> Result<SampledFn> {
    a.same_grid(b)?;
    let dt = a.step();
    let (av, bv) = (&a.values, &b.values);
    let values = (0..av.len())
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                return ZERO;
            }
            let mut acc = (av[k] * bv[0] + av[0] * bv[k]) * 0.5;
            for j in 1..k {
                acc += av[k - j] * bv[j];
            }
            acc * dt
        })
        .collect();
    SampledFn::new(a.horizon, values)
}

/// Product integration of `∫₀ᵗ K(x) b(t−x) dx` with the singular kernel
/// `K(x) = x^{λ−1} e^{αx} / Γ(λ)`.
///
/// The factor `e^{αx} b(t−x)` is interpolated linearly between grid points and
/// integrated against `x^{λ−1}` exactly, which keeps second order for every
/// `λ > 0`.
pub fn conv_frac_power(alpha: Cplx, lambda: f64, b: &SampledFn) -> Result<SampledFn> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::domain(format!(
            "fractional power needs lambda > 0, got {lambda}"
        )));
    }
    check_finite(alpha)?;
    let n = b.count();
    let dt = b.step();
    let g = special::gamma(lambda)?;
    // moments of x^{λ−1} against the two hat halves on [jΔ, (j+1)Δ]
    let (w_left, w_right): (Vec<f64>, Vec<f64>) = (0..n)
        .map(|j| {
            let (x0, x1) = (j as f64 * dt, (j + 1) as f64 * dt);
            let m0 = (x1.powf(lambda) - x0.powf(lambda)) / lambda;
            let m1 = (x1.powf(lambda + 1.0) - x0.powf(lambda + 1.0)) / (lambda + 1.0);
            let right = (m1 - x0 * m0) / dt;
            ((m0 - right) / g, right / g)
        })
        .unzip();
    let weights: Vec<Cplx> = (0..=n).map(|j| (alpha * (j as f64 * dt)).exp()).collect();
    let bv = &b.values;
    let values = (0..=n)
        .into_par_iter()
        .map(|k| {
            let mut acc = ZERO;
            for j in 0..k {
                acc += w_left[j] * weights[j] * bv[k - j]
                    + w_right[j] * weights[j + 1] * bv[k - j - 1];
            }
            acc
        })
        .collect();
    SampledFn::new(b.horizon, values)
}

/// Pointwise operators on sampled functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NumOp {
    /// `{e^{αt} a(t)}`
    MulExp(Cplx),
    /// `{−t a(t)}`
    MulNegT,
    /// `{q a(qt)}`; the horizon shrinks to `T/q` when `q > 1`.
    Tau(f64),
    /// `{a(t − λ)}` zero-padded on `[0, λ)`.
    Shift(f64),
}

pub fn num_op(a: &SampledFn, op: NumOp) -> Result<SampledFn> {
    match op {
        NumOp::MulExp(alpha) => {
            check_finite(alpha)?;
            SampledFn::new(
                a.horizon,
                a.times()
                    .zip(&a.values)
                    .map(|(t, v)| v * (alpha * t).exp())
                    .collect(),
            )
        }
        NumOp::MulNegT => SampledFn::new(
            a.horizon,
            a.times().zip(&a.values).map(|(t, v)| -v * t).collect(),
        ),
        NumOp::Tau(q) => {
            if !(q > 0.0 && q.is_finite()) {
                return Err(Error::domain(format!("tau needs q > 0, got {q}")));
            }
            let dt = a.step();
            let n = if q > 1.0 {
                ((a.horizon / q) / dt * (1.0 + 1e-12)).floor() as usize
            } else {
                a.count()
            };
            if n < 2 {
                return Err(Error::domain("tau leaves fewer than two grid intervals"));
            }
            let values = (0..=n)
                .map(|i| a.value_at(q * i as f64 * dt).map(|v| v * q))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::domain("tau read outside the sampled horizon"))?;
            SampledFn::new(n as f64 * dt, values)
        }
        NumOp::Shift(lambda) => {
            if !(lambda >= 0.0 && lambda.is_finite()) {
                return Err(Error::domain(format!(
                    "shift needs lambda >= 0, got {lambda}"
                )));
            }
            let values = a
                .times()
                .map(|t| {
                    if t < lambda {
                        ZERO
                    } else {
                        a.value_at(t - lambda).unwrap_or(ZERO)
                    }
                })
                .collect();
            SampledFn::new(a.horizon, values)
        }
    }
}

/// `c · t^{λ−1} e^{αt} / Γ(λ)`, the realization of `c (s−α)^{−λ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FracMonomial {
    pub coeff: Cplx,
    pub alpha: Cplx,
    pub lambda: f64,
}

impl FracMonomial {
    pub fn new(coeff: Cplx, alpha: Cplx, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain(format!(
                "fractional power needs lambda > 0, got {lambda}; use the rational path"
            )));
        }
        check_finite(coeff)?;
        check_finite(alpha)?;
        Ok(Self {
            coeff,
            alpha,
            lambda,
        })
    }

    /// Value at `t`; at `t = 0` with `λ < 1` the singular value is recorded as 0.
    pub fn eval(&self, t: f64) -> Cplx {
        if t == 0.0 {
            return if self.lambda == 1.0 { self.coeff } else { ZERO };
        }
        let g = special::gamma(self.lambda).expect("lambda > 0");
        self.coeff * (self.alpha * t).exp() * t.powf(self.lambda - 1.0) / g
    }

    /// Product in the field: `(s−α)^{−λ}(s−α)^{−μ} = (s−α)^{−λ−μ}`.
    pub fn convolve(&self, other: &FracMonomial) -> Result<FracMonomial> {
        if (self.alpha - other.alpha).norm() > 1e-14 * (1.0 + self.alpha.norm()) {
            return Err(Error::domain(
                "fractional monomials with different shifts do not combine",
            ));
        }
        FracMonomial::new(
            self.coeff * other.coeff,
            self.alpha,
            self.lambda + other.lambda,
        )
    }
}

/// Sampled realization of `(s−α)^{−λ}`.
pub fn frac_power_fn(alpha: Cplx, lambda: f64, horizon: f64, n: usize) -> Result<SampledFn> {
    let m = FracMonomial::new(Cplx::new(1.0, 0.0), alpha, lambda)?;
    sample(|t| m.eval(t), horizon, n)
}

/// Max `|a_i − b_i|` over the common grid, skipping points within `Δ` of a knot.
pub fn compare(a: &SampledFn, b: &SampledFn, exclude_knots: &[f64]) -> Result<f64> {
    let dt = a.step();
    if (dt - b.step()).abs() > 1e-12 * dt {
        return Err(Error::domain("grid mismatch"));
    }
    let n = a.count().min(b.count());
    let mut worst: Option<f64> = None;
    for i in 0..=n {
        let t = i as f64 * dt;
        if exclude_knots
            .iter()
            .any(|k| (t - k).abs() <= dt * (1.0 + 1e-9))
        {
            continue;
        }
        let d = (a.values[i] - b.values[i]).norm();
        worst = Some(worst.map_or(d, |w: f64| w.max(d)));
    }
    worst.ok_or_else(|| Error::domain("empty overlap between compared functions"))
}

/// Tanh-sinh quadrature of `∫_a^b f`.
///
/// `f` receives the distances `(x − a, b − x)` so integrands with endpoint
/// singularities can be evaluated without cancellation.
pub fn tanh_sinh(f: impl Fn(f64, f64) -> Cplx, a: f64, b: f64) -> Cplx {
    const H: f64 = 1.0 / 64.0;
    let half = std::f64::consts::FRAC_PI_2;
    let width = b - a;
    let mut acc = ZERO;
    for k in -448i32..=448 {
        let t = k as f64 * H;
        let u = half * t.sinh();
        // 1 − tanh u and 1 + tanh u without cancellation
        let from_a = width / (1.0 + (-2.0 * u).exp());
        let from_b = width / (1.0 + (2.0 * u).exp());
        if from_a <= 0.0 || from_b <= 0.0 {
            continue;
        }
        let w = half * t.cosh() / u.cosh().powi(2);
        let term = f(from_a, from_b) * w;
        if w > 0.0 && term.re.is_finite() && term.im.is_finite() {
            acc += term;
        }
    }
    acc * (H * width / 2.0)
}
