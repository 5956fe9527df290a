//! Subcommand implementations, independent of argument parsing.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use opcalc::numeric::{compare, sample, SampledFn};
use opcalc::{
    realize, solve_delay_geom, solve_lode, Cplx, DelayProblem, ExpPoly, OdeProblem, PiecewiseEP,
};

use crate::error::CliError;
use crate::lower::{lower, to_series_h, to_series_l, Lowerer, Value};
use crate::parse::{parse, parse_complex, parse_complex_list};

const ZERO: Cplx = Cplx::new(0.0, 0.0);

/// Uniform sampling grid `t_i = i·T/N`, `i = 0..=N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub horizon: f64,
    pub count: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            horizon: 10.0,
            count: 1000,
        }
    }
}

impl FromStr for Grid {
    type Err = String;

    /// `T,N` with `T > 0` finite and `N >= 2`.
    fn from_str(s: &str) -> Result<Self, String> {
        let (t, n) = s
            .split_once(',')
            .ok_or_else(|| format!("expected `T,N`, got `{s}`"))?;
        let horizon: f64 = t
            .trim()
            .parse()
            .map_err(|_| format!("invalid horizon `{t}`"))?;
        let count: usize = n
            .trim()
            .parse()
            .map_err(|_| format!("invalid point count `{n}`"))?;
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(format!("horizon must be finite and > 0, got {horizon}"));
        }
        if count < 2 {
            return Err(format!("point count must be >= 2, got {count}"));
        }
        Ok(Self { horizon, count })
    }
}

/// Time-domain face of a lowered element: `constant + {f}`.
pub struct Realized {
    pub constant: Cplx,
    pub knots: Vec<f64>,
    f: Box<dyn Fn(f64) -> Cplx>,
}

impl Realized {
    pub fn eval(&self, t: f64) -> Cplx {
        (self.f)(t)
    }

    fn from_piecewise(p: PiecewiseEP) -> Self {
        Self {
            constant: p.const_part(),
            knots: p.knots(),
            f: Box::new(move |t| p.eval(t)),
        }
    }

    pub fn sample(&self, grid: Grid) -> Result<SampledFn, CliError> {
        Ok(sample(|t| self.eval(t), grid.horizon, grid.count)?)
    }
}

/// Realizes `v` on `[0, horizon]`.
pub fn realize_value(v: &Value, horizon: f64) -> Result<Realized, CliError> {
    match v {
        Value::Rat(r) => {
            let (constant, f) = realize(r)?;
            Ok(Realized {
                constant,
                knots: vec![],
                f: Box::new(move |t| f.eval(t)),
            })
        }
        Value::Delay(d) => Ok(Realized::from_piecewise(d.realize()?)),
        Value::SerL(s) => {
            let r = s.realize();
            Ok(Realized {
                constant: r.constant,
                knots: vec![],
                f: Box::new(move |t| r.eval(t)),
            })
        }
        Value::SerH(s) => {
            // terms h^n with n beyond the known prefix vanish on [0, n)
            if horizon >= s.precision() as f64 {
                return Err(opcalc::Error::Domain(format!(
                    "a series in h with {} known coefficients is determined only on [0, {})",
                    s.precision(),
                    s.precision()
                ))
                .into());
            }
            Ok(Realized::from_piecewise(s.to_delay_element().realize()?))
        }
    }
}

fn lower_src(src: &str) -> Result<Value, CliError> {
    lower(&parse(src)?)
}

/// Samples of the function realizing `src`.
pub fn invert(src: &str, grid: Grid) -> Result<SampledFn, CliError> {
    let v = lower_src(src)?;
    let r = realize_value(&v, grid.horizon)?;
    if r.constant != ZERO {
        return Err(opcalc::Error::Domain(format!(
            "not realizable as a function: constant part {}",
            opcalc::exppoly::fmt_cplx(r.constant)
        ))
        .into());
    }
    r.sample(grid)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    /// `exact (class)` or `sampled`.
    pub method: String,
    pub deviation: f64,
}

fn truncated_distance<G: opcalc::series::Generator>(
    a: &opcalc::Series<G>,
    b: &opcalc::Series<G>,
) -> f64 {
    let k = a.precision().min(b.precision());
    a.truncate(k).distance(&b.truncate(k))
}

/// Coefficient distance when both sides share an exact class.
fn exact_distance(a: &Value, b: &Value) -> Option<(&'static str, f64)> {
    match (a, b) {
        (Value::Rat(x), Value::Rat(y)) => Some(("rational function", x.distance(y))),
        (Value::SerL(_), _) | (_, Value::SerL(_)) => {
            let k = [a, b]
                .iter()
                .filter_map(|v| {
                    if let Value::SerL(s) = v {
                        Some(s.precision())
                    } else {
                        None
                    }
                })
                .min()?;
            let (x, y) = (to_series_l(a, k).ok()?, to_series_l(b, k).ok()?);
            Some(("series in l", truncated_distance(&x, &y)))
        }
        (Value::SerH(_), _) | (_, Value::SerH(_)) => {
            let k = [a, b]
                .iter()
                .filter_map(|v| {
                    if let Value::SerH(s) = v {
                        Some(s.precision())
                    } else {
                        None
                    }
                })
                .min()?;
            let (x, y) = (to_series_h(a, k).ok()?, to_series_h(b, k).ok()?);
            Some(("series in h", truncated_distance(&x, &y)))
        }
        _ => {
            let promote = |v: &Value| match v {
                Value::Rat(r) => Some(opcalc::DelayElement::from_ratfun(r.clone())),
                Value::Delay(d) => Some(d.clone()),
                _ => None,
            };
            Some(("delay element", promote(a)?.distance(&promote(b)?)))
        }
    }
}

/// Compares two expressions, exactly when they share a class and otherwise by
/// sampling their realizations away from knots.
pub fn verify(lhs: &str, rhs: &str, grid: Grid) -> Result<VerifyReport, CliError> {
    let (a, b) = (lower_src(lhs)?, lower_src(rhs)?);
    if let Some((class, deviation)) = exact_distance(&a, &b) {
        return Ok(VerifyReport {
            method: format!("exact ({class})"),
            deviation,
        });
    }
    let realize_side = |v: &Value| {
        realize_value(v, grid.horizon).map_err(|e| {
            CliError::Core(opcalc::Error::Domain(format!(
                "class mismatch ({} vs {}) and no realization: {e}",
                a.class_name(),
                b.class_name()
            )))
        })
    };
    let (ra, rb) = (realize_side(&a)?, realize_side(&b)?);
    let knots: Vec<f64> = ra.knots.iter().chain(&rb.knots).copied().collect();
    let sampled = compare(&ra.sample(grid)?, &rb.sample(grid)?, &knots)?;
    Ok(VerifyReport {
        method: "sampled".into(),
        deviation: sampled.max((ra.constant - rb.constant).norm()),
    })
}

/// Realizes a forcing expression as an exponential polynomial.
fn forcing_fn(src: &str) -> Result<ExpPoly, CliError> {
    match lower_src(src)? {
        Value::Rat(r) => {
            let (c, f) = realize(&r)?;
            if c != ZERO {
                return Err(CliError::Usage(format!(
                    "forcing `{src}` has a constant part and is not a function"
                )));
            }
            Ok(f)
        }
        v => Err(CliError::Usage(format!(
            "forcing `{src}` lowers to a {}, not a rational function",
            v.class_name()
        ))),
    }
}

/// `Σ a_k f^{(k)} = rhs` with coefficient and initial-value lists `a_0,...,a_n`
/// and `f(0),...,f^{(n−1)}(0)`.
pub fn solve_ode(coeffs: &str, init: &str, rhs: &str) -> Result<ExpPoly, CliError> {
    let coeffs = parse_complex_list(coeffs)?;
    let init = if init.trim().is_empty() {
        vec![]
    } else {
        parse_complex_list(init)?
    };
    let problem = OdeProblem::new(coeffs, init, forcing_fn(rhs)?)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(solve_lode(&problem)?)
}

/// `x = forcing + c·h·x` on `[0, horizon]`.
pub fn solve_delay(c: &str, forcing: &str, horizon: f64) -> Result<PiecewiseEP, CliError> {
    let problem = DelayProblem::new(parse_complex(c)?, forcing_fn(forcing)?, horizon)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(solve_delay_geom(&problem)?)
}

/// Closed form of a piecewise solution, one additive piece per line.
pub fn piecewise_form(p: &PiecewiseEP) -> String {
    let mut out = String::new();
    if p.const_part() != ZERO {
        let _ = writeln!(
            out,
            "constant part: {}",
            opcalc::exppoly::fmt_cplx(p.const_part())
        );
    }
    if p.pieces().is_empty() {
        out.push_str("0\n");
    }
    for (lambda, f) in p.pieces() {
        if *lambda == 0.0 {
            let _ = writeln!(out, "t >= 0: {}", f.real_form());
        } else {
            let _ = writeln!(
                out,
                "t > {}: {}",
                opcalc::exppoly::fmt_real(*lambda),
                f.real_form()
            );
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    L,
    H,
}

/// Known coefficients of `src` as a series in `l` or `h`, with `order + 1`
/// coefficients before operators are applied.
pub fn series(src: &str, kind: SeriesKind, order: usize) -> Result<Vec<Cplx>, CliError> {
    let e = parse(src)?;
    let precision = order + 1;
    let v = match kind {
        SeriesKind::L => Lowerer::series_l(precision).lower(&e)?,
        SeriesKind::H => Lowerer::series_h(precision).lower(&e)?,
    };
    Ok(match v {
        Value::SerL(s) => s.coeffs().to_vec(),
        Value::SerH(s) => s.coeffs().to_vec(),
        v => {
            return Err(CliError::ClassOverflow(format!(
                "expected a series, got a {}",
                v.class_name()
            )))
        }
    })
}

pub fn write_series_table(coeffs: &[Cplx], mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "n,re,im")?;
    for (n, c) in coeffs.iter().enumerate() {
        writeln!(w, "{n},{:.16e},{:.16e}", c.re, c.im)?;
    }
    Ok(())
}

/// Samples of a solution on the grid.
pub fn sample_fn(f: impl Fn(f64) -> Cplx, grid: Grid) -> Result<SampledFn, CliError> {
    Ok(sample(f, grid.horizon, grid.count)?)
}
