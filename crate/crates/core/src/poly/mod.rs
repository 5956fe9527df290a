//! Dense polynomials in `s` with complex floating-point coefficients.

pub mod partial;
pub mod ratfun;
pub mod roots;

pub use ratfun::{RatFun, Subst};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type Cplx = Complex64;

pub(crate) const ZERO: Cplx = Cplx::new(0.0, 0.0);
pub(crate) const ONE: Cplx = Cplx::new(1.0, 0.0);

pub(crate) fn check_finite(c: Cplx) -> Result<Cplx> {
    if c.re.is_finite() && c.im.is_finite() {
        Ok(c)
    } else {
        Err(Error::domain(format!("non-finite scalar {c}")))
    }
}

/// Polynomial `Σ c_k s^k`, stored lowest degree first.
///
/// The coefficient vector never ends in an exact zero; the empty vector is the
/// zero polynomial.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly {
    coeffs: Vec<Cplx>,
}

impl Poly {
    /// Builds a polynomial, rejecting NaN and infinite coefficients.
    pub fn new(coeffs: Vec<Cplx>) -> Result<Self> {
        for &c in &coeffs {
            check_finite(c)?;
        }
        Ok(Self::from_vec(coeffs))
    }

    pub(crate) fn from_vec(mut coeffs: Vec<Cplx>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Cplx::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    pub fn constant(c: Cplx) -> Self {
        Self::from_vec(vec![c])
    }

    /// `c·s^k`
    pub fn monomial(c: Cplx, k: usize) -> Self {
        let mut v = vec![ZERO; k + 1];
        v[k] = c;
        Self::from_vec(v)
    }

    /// The indeterminate `s`.
    pub fn s() -> Self {
        Self::monomial(ONE, 1)
    }

    /// `Π (s − r)` over the given roots.
    pub fn from_roots(roots: &[Cplx]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, &r| &acc * &Self::from_vec(vec![-r, ONE]))
    }

    /// `(s − r)^m`
    pub fn linear_power(r: Cplx, m: usize) -> Self {
        let factor = Self::from_vec(vec![-r, ONE]);
        (0..m).fold(Self::one(), |acc, _| &acc * &factor)
    }

    pub fn coeffs(&self) -> &[Cplx] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Cplx {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Cplx {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, x: Cplx) -> Cplx {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
    }

    /// Value and first derivative by a single Horner pass.
    pub fn eval_with_derivative(&self, x: Cplx) -> (Cplx, Cplx) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }

    /// `Σ |c_k| |x|^k`, the natural scale of rounding errors in `eval(x)`.
    pub fn eval_scale(&self, x: Cplx) -> f64 {
        let ax = x.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * ax + c.norm())
    }

    pub fn derivative(&self) -> Self {
        Self::from_vec(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, c: Cplx) -> Self {
        Self::from_vec(self.coeffs.iter().map(|&x| x * c).collect())
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(self.lead().inv())
    }

    /// Coefficients of `p(c + z)` as a polynomial in `z` (repeated synthetic division).
    pub fn taylor_at(&self, c: Cplx) -> Vec<Cplx> {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = a[j + 1];
                a[j] += c * next;
            }
        }
        a
    }

    /// `p(a·s + b)`
    pub fn compose_affine(&self, a: Cplx, b: Cplx) -> Self {
        let shifted = self.taylor_at(b);
        let mut pow = ONE;
        let mut out = Vec::with_capacity(shifted.len());
        for c in shifted {
            out.push(c * pow);
            pow *= a;
        }
        Self::from_vec(out)
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let db = divisor
            .degree()
            .ok_or_else(|| Error::domain("polynomial division by zero"))?;
        let da = match self.degree() {
            Some(d) if d >= db => d,
            _ => return Ok((Poly::zero(), self.clone())),
        };
        let inv_lead = divisor.lead().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ZERO; da - db + 1];
        for k in (0..=da - db).rev() {
            let q = rem[k + db] * inv_lead;
            quot[k] = q;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q * b;
            }
        }
        rem.truncate(db);
        Ok((Poly::from_vec(quot), Poly::from_vec(rem)))
    }

    /// Largest coefficient magnitude of `self − other`.
    pub fn distance(&self, other: &Poly) -> f64 {
        (self - other).max_abs()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})s")?,
                _ => write!(f, "({c})s^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_vec((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_vec((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_vec(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_vec(self.coeffs.iter().map(|&c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Poly, Add::add, Sub::sub, Mul::mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
