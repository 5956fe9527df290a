//! Lowering of expressions onto the closed exact classes.
//!
//! Rational functions and delay elements are exact. Division by a delay
//! element that is neither a single term `h^λ R` nor a unit polynomial in `h`
//! leaves every class and is reported as a class overflow. Series values appear
//! from unit divisions in `h` and in series mode.

use std::fmt;

use opcalc::{Cplx, DelayElement, Poly, RatFun, SeriesH, SeriesL};

use crate::error::CliError;
use crate::expr::{BinOp, Expr, OpKind};

/// Default count of known coefficients for `h`-series created by division.
pub const DEFAULT_SERIES_PRECISION: usize = 32;

const ZERO: Cplx = Cplx::new(0.0, 0.0);
const ONE: Cplx = Cplx::new(1.0, 0.0);

/// A lowered element in one of the closed classes.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Rat(RatFun),
    Delay(DelayElement),
    SerL(SeriesL),
    SerH(SeriesH),
}

impl Value {
    pub fn class_name(&self) -> &'static str {
        match self {
            Value::Rat(_) => "rational function",
            Value::Delay(_) => "delay element",
            Value::SerL(_) => "series in l",
            Value::SerH(_) => "series in h",
        }
    }

    /// Demotes delay elements without delays to rational functions.
    fn canonical(self) -> Self {
        match self {
            Value::Delay(d) => match d.as_ratfun() {
                Some(r) => Value::Rat(r),
                None => Value::Delay(d),
            },
            v => v,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rat(r) => write!(f, "{r}"),
            Value::Delay(d) => {
                let parts: Vec<String> = d
                    .parts()
                    .iter()
                    .map(|(l, r)| format!("h^{{{l}}}·({r})"))
                    .collect();
                f.write_str(&parts.join(" + "))
            }
            Value::SerL(s) => write_series(f, s.coeffs(), "l"),
            Value::SerH(s) => write_series(f, s.coeffs(), "h"),
        }
    }
}

fn write_series(f: &mut fmt::Formatter<'_>, coeffs: &[Cplx], g: &str) -> fmt::Result {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != ZERO)
        .map(|(n, c)| format!("({}){g}^{n}", opcalc::exppoly::fmt_cplx(*c)))
        .collect();
    let body = if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    };
    write!(f, "{body} + O({g}^{})", coeffs.len())
}

fn overflow(msg: impl Into<String>) -> CliError {
    CliError::ClassOverflow(msg.into())
}

fn to_delay(v: &Value) -> Option<DelayElement> {
    match v {
        Value::Rat(r) => Some(DelayElement::from_ratfun(r.clone())),
        Value::Delay(d) => Some(d.clone()),
        _ => None,
    }
}

fn resize(mut coeffs: Vec<Cplx>, precision: usize) -> Vec<Cplx> {
    coeffs.resize(precision, ZERO);
    coeffs
}

/// `Σ α_n hⁿ` with `precision` known coefficients, when `v` is a polynomial in `h`
/// with constant coefficients or already an `h`-series.
pub fn to_series_h(v: &Value, precision: usize) -> Result<SeriesH, CliError> {
    let coeffs = match v {
        Value::SerH(s) => return Ok(s.clone()),
        Value::Rat(r) => match r.as_constant() {
            Some(c) => vec![c],
            None if r.is_zero() => vec![],
            None => return Err(overflow(format!("{r} is not a series in h"))),
        },
        Value::Delay(d) => d.as_h_polynomial().ok_or_else(|| {
            overflow("only integer delays with constant coefficients form a series in h")
        })?,
        Value::SerL(_) => {
            return Err(overflow(
                "a series in l cannot be combined with a series in h",
            ))
        }
    };
    Ok(SeriesH::new(resize(coeffs, precision))?)
}

/// Expansion of a proper rational function at `s = ∞`, as a series in `l = 1/s`.
pub fn to_series_l(v: &Value, precision: usize) -> Result<SeriesL, CliError> {
    let r = match v {
        Value::SerL(s) => return Ok(s.clone()),
        Value::Rat(r) => r,
        Value::Delay(_) => return Err(overflow("a delay element is not a series in l")),
        Value::SerH(_) => {
            return Err(overflow(
                "a series in h cannot be combined with a series in l",
            ))
        }
    };
    if r.is_zero() {
        return Ok(SeriesL::new(vec![ZERO; precision])?);
    }
    let (dn, dd) = (r.num().degree().unwrap_or(0), r.den().degree().unwrap_or(0));
    if dn > dd {
        return Err(overflow(format!(
            "{r} is improper and has no expansion in l"
        )));
    }
    // R(1/l) = l^{dd−dn} · rev(num)(l) / rev(den)(l)
    let rev = |p: &Poly| -> Vec<Cplx> { p.coeffs().iter().rev().copied().collect() };
    let mut num = vec![ZERO; dd - dn];
    num.extend(rev(r.num()));
    let num = SeriesL::new(resize(num, precision))?;
    let den = SeriesL::new(resize(rev(r.den()), precision))?;
    Ok(&num * &den.invert_unit()?)
}

/// Which class the lowering targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Exact rational and delay classes.
    Exact,
    /// Series in `l` with the given count of known coefficients.
    SeriesL(usize),
    /// Series in `h` with the given count of known coefficients.
    SeriesH(usize),
}

#[derive(Clone, Copy, Debug)]
pub struct Lowerer {
    pub mode: Mode,
    /// Precision of `h`-series created by unit division in exact mode.
    pub precision: usize,
}

impl Default for Lowerer {
    fn default() -> Self {
        Self {
            mode: Mode::Exact,
            precision: DEFAULT_SERIES_PRECISION,
        }
    }
}

/// Lowers onto the exact classes.
pub fn lower(e: &Expr) -> Result<Value, CliError> {
    Lowerer::default().lower(e)
}

impl Lowerer {
    pub fn series_l(precision: usize) -> Self {
        Self {
            mode: Mode::SeriesL(precision),
            precision,
        }
    }

    pub fn series_h(precision: usize) -> Self {
        Self {
            mode: Mode::SeriesH(precision),
            precision,
        }
    }

    pub fn lower(&self, e: &Expr) -> Result<Value, CliError> {
        match self.mode {
            Mode::Exact => self.lower_exact(e),
            // operator-free subtrees are exact and then expanded
            Mode::SeriesL(k) if e.is_operator_free() => {
                Ok(Value::SerL(to_series_l(&self.lower_exact(e)?, k)?))
            }
            Mode::SeriesH(k) if e.is_operator_free() => {
                Ok(Value::SerH(to_series_h(&self.lower_exact(e)?, k)?))
            }
            _ => self.lower_node(e, |x| self.lower(x)),
        }
    }

    fn lower_exact(&self, e: &Expr) -> Result<Value, CliError> {
        match e {
            Expr::Num(c) => Ok(Value::Rat(RatFun::constant(*c))),
            Expr::S => Ok(Value::Rat(RatFun::s())),
            Expr::L => Ok(Value::Rat(RatFun::l())),
            Expr::H => Ok(Value::Delay(opcalc::h_pow(1.0))),
            Expr::HPow(x) => {
                if !x.is_finite() {
                    return Err(opcalc::Error::Domain(format!(
                        "delay exponent must be finite, got {x}"
                    ))
                    .into());
                }
                Ok(Value::Delay(opcalc::h_pow(*x)).canonical())
            }
            _ => self.lower_node(e, |x| self.lower_exact(x)),
        }
    }

    fn lower_node(
        &self,
        e: &Expr,
        rec: impl Fn(&Expr) -> Result<Value, CliError>,
    ) -> Result<Value, CliError> {
        let v = match e {
            Expr::Neg(a) => self.mul(&Value::Rat(RatFun::constant(-ONE)), &rec(a)?)?,
            Expr::Bin(op, a, b) => {
                let (a, b) = (rec(a)?, rec(b)?);
                match op {
                    BinOp::Add => self.add(&a, &b, false)?,
                    BinOp::Sub => self.add(&a, &b, true)?,
                    BinOp::Mul => self.mul(&a, &b)?,
                    BinOp::Div => self.div(&a, &b)?,
                }
            }
            Expr::Pow(a, n) => self.pow(&rec(a)?, *n)?,
            Expr::Op(kind, a) => apply_op(*kind, &rec(a)?)?,
            leaf => return self.lower_exact(leaf),
        };
        Ok(v.canonical())
    }

    fn add(&self, a: &Value, b: &Value, subtract: bool) -> Result<Value, CliError> {
        let b = if subtract {
            self.mul(&Value::Rat(RatFun::constant(-ONE)), b)?
        } else {
            b.clone()
        };
        Ok(match (a, &b) {
            (Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (Value::SerL(_), _) | (_, Value::SerL(_)) => {
                Value::SerL(&to_series_l(a, self.precision)? + &to_series_l(&b, self.precision)?)
            }
            (Value::SerH(_), _) | (_, Value::SerH(_)) => {
                Value::SerH(&to_series_h(a, self.precision)? + &to_series_h(&b, self.precision)?)
            }
            _ => Value::Delay(&to_delay(a).expect("exact") + &to_delay(&b).expect("exact")),
        })
    }

    fn mul(&self, a: &Value, b: &Value) -> Result<Value, CliError> {
        Ok(match (a, b) {
            (Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (Value::SerL(_), _) | (_, Value::SerL(_)) => {
                Value::SerL(&to_series_l(a, self.precision)? * &to_series_l(b, self.precision)?)
            }
            (Value::SerH(_), _) | (_, Value::SerH(_)) => {
                Value::SerH(&to_series_h(a, self.precision)? * &to_series_h(b, self.precision)?)
            }
            _ => Value::Delay(&to_delay(a).expect("exact") * &to_delay(b).expect("exact")),
        })
    }

    fn div(&self, a: &Value, b: &Value) -> Result<Value, CliError> {
        match b {
            Value::Rat(r) => self.mul(a, &Value::Rat(r.inv()?)),
            Value::Delay(d) => {
                if d.as_monomial().is_some() {
                    return self.mul(a, &Value::Delay(d.inv()?));
                }
                match d.as_h_polynomial() {
                    Some(c) if c.first().is_some_and(|c0| *c0 != ZERO) => {
                        let inv = SeriesH::new(resize(c, self.precision))?.invert_unit()?;
                        self.mul(a, &Value::SerH(inv))
                    }
                    _ => Err(overflow(
                        "division by a delay element is defined only for a single term h^λ·R or a unit polynomial in h",
                    )),
                }
            }
            Value::SerH(s) => self.mul(a, &Value::SerH(s.invert_unit()?)),
            Value::SerL(s) => self.mul(a, &Value::SerL(s.invert_unit()?)),
        }
    }

    fn pow(&self, a: &Value, n: i32) -> Result<Value, CliError> {
        if n < 0 {
            let p = self.pow(
                a,
                n.checked_neg()
                    .ok_or_else(|| overflow("exponent out of range"))?,
            )?;
            return self.div(&Value::Rat(RatFun::one()), &p.canonical());
        }
        let mut acc = Value::Rat(RatFun::one());
        for _ in 0..n {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }
}

/// Dispatches an operator node to the owning class.
pub fn apply_op(kind: OpKind, v: &Value) -> Result<Value, CliError> {
    let unsupported =
        |class: &str| overflow(format!("{} is not defined on a {class}", op_name(kind)));
    let v = match v {
        Value::Rat(_) | Value::Delay(_) => {
            let d = to_delay(v).expect("exact");
            Value::Delay(match kind {
                OpKind::T(alpha) => d.t_shift(alpha)?,
                OpKind::Tau(q) => d.tau(q)?,
                OpKind::Sigma(0) => {
                    return Err(opcalc::Error::Domain("sigma needs d >= 1".into()).into())
                }
                OpKind::Sigma(1) => d,
                OpKind::Sigma(n) => d.sigma(n)?,
                OpKind::Dds => d.dds(),
                OpKind::D => d.d_op(),
                OpKind::Dp => d.dprime(),
            })
        }
        Value::SerL(s) => Value::SerL(match kind {
            OpKind::T(alpha) => s.t_shift(alpha)?,
            OpKind::Tau(q) => s.tau(q)?,
            OpKind::Sigma(0) => {
                return Err(opcalc::Error::Domain("sigma needs d >= 1".into()).into())
            }
            OpKind::Sigma(n) => s.tau(1.0 / f64::from(n))?,
            OpKind::Dds => s.dds(),
            OpKind::D => s.d_op(),
            OpKind::Dp => return Err(unsupported("series in l")),
        }),
        Value::SerH(s) => Value::SerH(match kind {
            OpKind::Sigma(0) => {
                return Err(opcalc::Error::Domain("sigma needs d >= 1".into()).into())
            }
            OpKind::Sigma(1) => s.clone(),
            OpKind::Sigma(n) => s.sigma(n)?,
            OpKind::Dds => s.dds(),
            OpKind::Dp => s.dprime(),
            OpKind::T(_) | OpKind::Tau(_) | OpKind::D => return Err(unsupported("series in h")),
        }),
    };
    Ok(v.canonical())
}

fn op_name(kind: OpKind) -> &'static str {
    match kind {
        OpKind::T(_) => "T",
        OpKind::Tau(_) => "tau",
        OpKind::Sigma(_) => "sigma",
        OpKind::Dds => "dds",
        OpKind::D => "D",
        OpKind::Dp => "Dp",
    }
}
