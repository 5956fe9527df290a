//! Truncated power series in `l` (ℂ{l}) and in `h` (ℂ[[h]]).
//!
//! A series with precision `K` knows its coefficients at indices `0..K`; every
//! operation reports the precision it can guarantee.

use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use crate::delay::{DelayElement, JumpSeries};
use crate::error::{Error, Result};
use crate::poly::{check_finite, Cplx, RatFun, ONE, ZERO};

/// Marker for the generator `l = 1/s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct L;
/// Marker for the generator `h` (unit delay).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct H;

pub trait Generator {
    const NAME: &'static str;
}
impl Generator for L {
    const NAME: &'static str = "l";
}
impl Generator for H {
    const NAME: &'static str = "h";
}

/// `Σ_{n<K} α_n g^n + O(g^K)`
#[derive(Debug)]
pub struct Series<G> {
    coeffs: Vec<Cplx>,
    _gen: PhantomData<G>,
}

impl<G> Clone for Series<G> {
    fn clone(&self) -> Self {
        Self {
            coeffs: self.coeffs.clone(),
            _gen: PhantomData,
        }
    }
}

impl<G> PartialEq for Series<G> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

pub type SeriesL = Series<L>;
pub type SeriesH = Series<H>;

impl<G: Generator> Series<G> {
    /// Coefficients `α_0, ..., α_{K−1}`; the precision is their count.
    pub fn new(coeffs: Vec<Cplx>) -> Result<Self> {
        for &c in &coeffs {
            check_finite(c)?;
        }
        Ok(Self::from_vec(coeffs))
    }

    fn from_vec(coeffs: Vec<Cplx>) -> Self {
        Self {
            coeffs,
            _gen: PhantomData,
        }
    }

    /// The generator itself, `g + O(g^K)`.
    pub fn generator(precision: usize) -> Self {
        let mut c = vec![ZERO; precision];
        if precision > 1 {
            c[1] = ONE;
        }
        Self::from_vec(c)
    }

    pub fn constant(c: Cplx, precision: usize) -> Self {
        let mut v = vec![ZERO; precision];
        if precision > 0 {
            v[0] = c;
        }
        Self::from_vec(v)
    }

    /// `c · g^k`
    pub fn monomial(c: Cplx, k: usize, precision: usize) -> Self {
        let mut v = vec![ZERO; precision];
        if k < precision {
            v[k] = c;
        }
        Self::from_vec(v)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Cplx] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Cplx {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    pub fn generator_name(&self) -> &'static str {
        G::NAME
    }

    pub fn truncate(&self, precision: usize) -> Self {
        Self::from_vec(self.coeffs[..precision.min(self.precision())].to_vec())
    }

    pub fn scale(&self, c: Cplx) -> Self {
        Self::from_vec(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Largest coefficient difference over the common precision.
    pub fn distance(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn invert_unit(&self) -> Result<Self> {
        let a0 = self.coeff(0);
        if self.precision() == 0 || a0 == ZERO {
            return Err(Error::domain(format!(
                "series in {} is not a unit",
                G::NAME
            )));
        }
        let inv0 = a0.inv();
        let mut b = Vec::with_capacity(self.precision());
        b.push(inv0);
        for n in 1..self.precision() {
            let acc: Cplx = (1..=n).map(|k| self.coeffs[k] * b[n - k]).sum();
            b.push(-acc * inv0);
        }
        Ok(Self::from_vec(b))
    }

    pub fn powi(&self, n: i32) -> Result<Self> {
        let base = if n < 0 {
            self.invert_unit()?
        } else {
            self.clone()
        };
        let one = Self::constant(ONE, self.precision());
        Ok((0..n.unsigned_abs()).fold(one, |acc, _| &acc * &base))
    }

    /// `n α_n` at index `n − 1`: `D l^n = n l^{n−1}` and `D′ h^n = n h^{n−1}`.
    fn lower_derivative(&self) -> Self {
        Self::from_vec(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, a)| a * n as f64)
                .collect(),
        )
    }
}

impl SeriesL {
    /// `τ_q`: `l^n ↦ qⁿ lⁿ`.
    pub fn tau(&self, q: f64) -> Result<Self> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::domain(format!("tau needs q > 0, got {q}")));
        }
        Ok(Self::from_vec(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a * q.powi(n as i32))
                .collect(),
        ))
    }

    /// `D`; loses one term of precision.
    pub fn d_op(&self) -> Self {
        self.lower_derivative()
    }

    /// `d/ds`: `lⁿ ↦ −n l^{n+1}`; gains one term of precision.
    pub fn dds(&self) -> Self {
        let mut out = vec![ZERO; self.precision() + 1];
        for (n, a) in self.coeffs.iter().enumerate() {
            out[n + 1] = -a * n as f64;
        }
        if self.precision() == 0 {
            out.clear();
        }
        Self::from_vec(out)
    }

    /// `T^α`: `β_0 = α_0`, `β_{n+1} = Σ_{i≤n} C(n,i) α^{n−i} α_{i+1}`.
    pub fn t_shift(&self, alpha: Cplx) -> Result<Self> {
        check_finite(alpha)?;
        let k = self.precision();
        let mut out = Vec::with_capacity(k);
        if k == 0 {
            return Ok(Self::from_vec(out));
        }
        out.push(self.coeffs[0]);
        let mut binom = vec![1.0f64];
        for n in 0..k - 1 {
            if n > 0 {
                let mut next = vec![1.0; n + 1];
                for i in 1..n {
                    next[i] = binom[i - 1] + binom[i];
                }
                binom = next;
            }
            let mut acc = ZERO;
            let mut apow = ONE;
            for i in (0..=n).rev() {
                acc += binom[i] * apow * self.coeffs[i + 1];
                apow *= alpha;
            }
            out.push(acc);
        }
        Ok(Self::from_vec(out))
    }

    /// Time-domain face `α_0 + {Σ_{n≥1} α_n t^{n−1}/(n−1)!}`.
    pub fn realize(&self) -> LRealization {
        LRealization {
            constant: self.coeff(0),
            coeffs: self.coeffs.iter().skip(1).copied().collect(),
        }
    }

    /// The exact element `Σ α_n lⁿ` of the truncated series.
    pub fn to_ratfun(&self) -> RatFun {
        let k = self.precision();
        let num: Vec<Cplx> = self.coeffs.iter().rev().copied().collect();
        if k == 0 {
            return RatFun::zero();
        }
        let p = crate::poly::Poly::new(num).expect("finite coefficients");
        RatFun::from_poly(p)
            .checked_div(&RatFun::s().powi((k - 1) as i32).expect("power of s"))
            .expect("nonzero divisor")
    }
}

/// `constant + {Σ_{n≥1} α_n t^{n−1}/(n−1)!}`
#[derive(Clone, Debug, PartialEq)]
pub struct LRealization {
    pub constant: Cplx,
    /// `α_1, α_2, ...`
    pub coeffs: Vec<Cplx>,
}

impl LRealization {
    /// Value of the function part at `t`.
    pub fn eval(&self, t: f64) -> Cplx {
        let mut term = 1.0;
        let mut acc = ZERO;
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                term *= t / k as f64;
            }
            acc += a * term;
        }
        acc
    }
}

/// `(s² + α²)^{−1/2} = Σ_k C(−1/2, k) α^{2k} l^{2k+1}` with `terms` nonzero terms.
pub fn bessel_coeffs(alpha: Cplx, terms: usize) -> Result<SeriesL> {
    check_finite(alpha)?;
    let mut c = vec![ZERO; 2 * terms];
    let a2 = alpha * alpha;
    let mut binom = 1.0f64;
    let mut apow = ONE;
    for k in 0..terms {
        c[2 * k + 1] = binom * apow;
        binom *= (-0.5 - k as f64) / (k + 1) as f64;
        apow *= a2;
    }
    Ok(SeriesL::from_vec(c))
}

impl SeriesH {
    /// `σ_d`: `hⁿ ↦ h^{dn}`.
    pub fn sigma(&self, d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::domain(format!(
                "sigma needs an integer d >= 2, got {d}"
            )));
        }
        let d = d as usize;
        let k = self.precision();
        if k == 0 {
            return Ok(self.clone());
        }
        let mut out = vec![ZERO; d * (k - 1) + 1];
        for (n, a) in self.coeffs.iter().enumerate() {
            out[d * n] = *a;
        }
        Ok(Self::from_vec(out))
    }

    /// `D′`; loses one term of precision.
    pub fn dprime(&self) -> Self {
        self.lower_derivative()
    }

    /// `d/ds`: `hⁿ ↦ −n hⁿ`.
    pub fn dds(&self) -> Self {
        Self::from_vec(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| -a * n as f64)
                .collect(),
        )
    }

    /// The truncated series as the delay element `Σ α_n hⁿ`.
    pub fn to_delay_element(&self) -> DelayElement {
        self.to_jump_series().to_delay_element()
    }

    pub fn to_jump_series(&self) -> JumpSeries {
        JumpSeries::integer(self.coeffs.clone())
    }
}

impl<G: Generator> Add for &Series<G> {
    type Output = Series<G>;
    fn add(self, rhs: &Series<G>) -> Series<G> {
        Series::from_vec(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl<G: Generator> Sub for &Series<G> {
    type Output = Series<G>;
    fn sub(self, rhs: &Series<G>) -> Series<G> {
        Series::from_vec(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl<G: Generator> Neg for &Series<G> {
    type Output = Series<G>;
    fn neg(self) -> Series<G> {
        Series::from_vec(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl<G: Generator> Mul for &Series<G> {
    type Output = Series<G>;
    fn mul(self, rhs: &Series<G>) -> Series<G> {
        let k = self.precision().min(rhs.precision());
        Series::from_vec(
            (0..k)
                .map(|n| (0..=n).map(|i| self.coeffs[i] * rhs.coeffs[n - i]).sum())
                .collect(),
        )
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<G: Generator> $tr for Series<G> {
            type Output = Series<G>;
            fn $m(self, rhs: Series<G>) -> Series<G> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<G: Generator> Neg for Series<G> {
    type Output = Series<G>;
    fn neg(self) -> Series<G> {
        -&self
    }
}
