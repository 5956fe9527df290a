//! Exponential polynomials `Σ c·t^k·e^{λt}` and their exact correspondence with
//! proper rational functions of `s`.
//!
//! `t^k e^{λt}` is the realization of `k!/(s−λ)^{k+1}`, so every operation here
//! has an s-domain twin in [`crate::poly`]; tests check the two against each
//! other.

use std::fmt::{self, Write as _};
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::partial::{partial_fractions, pf_product, PartialFractions, PfTerm};
use crate::poly::{check_finite, Cplx, Poly, RatFun, ONE, ZERO};

/// Exponents closer than this are the same exponent.
pub const EXP_MERGE_TOL: f64 = 1e-8;

/// The continuous function `t ↦ Σ_λ Σ_k c_{λ,k} t^k e^{λt}`.
///
/// Terms are kept sorted by exponent (real part, then imaginary part); each
/// coefficient vector is indexed by the power of `t` and has no trailing zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExpPoly {
    terms: Vec<(Cplx, Vec<Cplx>)>,
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant function `{1}`, i.e. the integral operator `l`.
    pub fn one() -> Self {
        Self::exp(ZERO)
    }

    /// `{e^{λt}}`
    pub fn exp(lambda: Cplx) -> Self {
        Self::term(ONE, 0, lambda)
    }

    /// `{c·t^k·e^{λt}}`
    pub fn term(c: Cplx, k: usize, lambda: Cplx) -> Self {
        let mut f = Self::zero();
        f.add_term(lambda, k, c);
        f
    }

    /// Builds from `(λ, k, c)` triples, merging equal exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (Cplx, usize, Cplx)>) -> Self {
        let mut f = Self::zero();
        for (lambda, k, c) in terms {
            f.add_term(lambda, k, c);
        }
        f
    }

    pub fn add_term(&mut self, lambda: Cplx, k: usize, c: Cplx) {
        let idx = match self
            .terms
            .iter()
            .position(|(mu, _)| (mu - lambda).norm() <= EXP_MERGE_TOL)
        {
            Some(i) => i,
            None => {
                self.terms.push((lambda, Vec::new()));
                self.terms.len() - 1
            }
        };
        let coeffs = &mut self.terms[idx].1;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, ZERO);
        }
        coeffs[k] += c;
        self.normalize();
    }

    fn normalize(&mut self) {
        for (_, coeffs) in &mut self.terms {
            while coeffs.last() == Some(&ZERO) {
                coeffs.pop();
            }
        }
        self.terms.retain(|(_, c)| !c.is_empty());
        self.terms
            .sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    }

    /// `(λ, [c_0, c_1, ...])` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Cplx, &[Cplx])> {
        self.terms.iter().map(|(l, c)| (*l, c.as_slice()))
    }

    /// Coefficient of `t^k e^{λt}`.
    pub fn coeff(&self, lambda: Cplx, k: usize) -> Cplx {
        self.terms
            .iter()
            .find(|(mu, _)| (mu - lambda).norm() <= EXP_MERGE_TOL)
            .and_then(|(_, c)| c.get(k).copied())
            .unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, t: f64) -> Cplx {
        self.terms
            .iter()
            .map(|(lambda, coeffs)| {
                let poly = coeffs.iter().rev().fold(ZERO, |acc, &c| acc * t + c);
                poly * (lambda * t).exp()
            })
            .sum()
    }

    pub fn scale(&self, c: Cplx) -> Self {
        Self::from_terms(self.triples().map(|(l, k, x)| (l, k, x * c)))
    }

    fn triples(&self) -> impl Iterator<Item = (Cplx, usize, Cplx)> + '_ {
        self.terms
            .iter()
            .flat_map(|(l, cs)| cs.iter().enumerate().map(move |(k, &c)| (*l, k, c)))
    }

    /// Largest coefficient magnitude of `self − other` after merging exponents.
    pub fn distance(&self, other: &ExpPoly) -> f64 {
        (self - other)
            .triples()
            .map(|(_, _, c)| c.norm())
            .fold(0.0, f64::max)
    }

    /// Poles of the s-domain image with their multiplicities.
    pub fn pole_structure(&self) -> Vec<(Cplx, usize)> {
        self.terms.iter().map(|(l, c)| (*l, c.len())).collect()
    }

    /// s-domain image as partial fractions: `c·t^k e^{λt} ↦ c·k!/(s−λ)^{k+1}`.
    pub fn to_partial_fractions(&self) -> PartialFractions {
        PartialFractions {
            poly_part: Poly::zero(),
            terms: self
                .triples()
                .map(|(pole, k, c)| PfTerm {
                    pole,
                    order: k + 1,
                    coeff: c * factorial(k),
                })
                .collect(),
        }
    }

    /// Time-domain face of a decomposition; the polynomial part must be a constant.
    pub fn from_partial_fractions(pf: &PartialFractions) -> Result<(Cplx, ExpPoly)> {
        if pf.poly_part.degree().is_some_and(|d| d > 0) {
            return Err(Error::domain(
                "not a function element: improper rational function",
            ));
        }
        let f = ExpPoly::from_terms(
            pf.terms
                .iter()
                .map(|t| (t.pole, t.order - 1, t.coeff / factorial(t.order - 1))),
        );
        Ok((pf.poly_part.coeff(0), f))
    }

    /// Numerator of the s-domain image over the monic denominator `Π (s−λ)^{m_λ}`.
    fn numerator(&self) -> Poly {
        let poles = self.pole_structure();
        let mut num = Poly::zero();
        for (i, (lambda, coeffs)) in self.terms.iter().enumerate() {
            let others = poles
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Poly::one(), |acc, (_, &(p, m))| {
                    &acc * &Poly::linear_power(p, m)
                });
            let m = coeffs.len();
            for (k, &c) in coeffs.iter().enumerate() {
                let part = &others * &Poly::linear_power(*lambda, m - k - 1);
                num = &num + &part.scale(c * factorial(k));
            }
        }
        num
    }

    /// `T^α f = {e^{αt} f(t)}`: every exponent moves by `α`.
    pub fn t_shift(&self, alpha: Cplx) -> Self {
        Self::from_terms(self.triples().map(|(l, k, c)| (l + alpha, k, c)))
    }

    /// `τ_q f = {q f(qt)}`.
    pub fn tau(&self, q: f64) -> Result<Self> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::domain(format!("tau needs q > 0, got {q}")));
        }
        Ok(Self::from_terms(
            self.triples()
                .map(|(l, k, c)| (l * q, k, c * q.powi(k as i32 + 1))),
        ))
    }

    /// The derivation `d/ds`: `{f(t)} ↦ {−t f(t)}`.
    pub fn dds(&self) -> Self {
        Self::from_terms(self.triples().map(|(l, k, c)| (l, k + 1, -c)))
    }

    /// The derivation `D = −s² d/ds`, returned as `(constant, function)`.
    ///
    /// Computed on the partial-fraction image: `d/ds` sends `C/(s−λ)^n` to
    /// `−nC/(s−λ)^{n+1}`, and `s² = (s−λ)² + 2λ(s−λ) + λ²` splits the product
    /// back into pole powers.
    pub fn d_op(&self) -> (Cplx, ExpPoly) {
        let mut constant = ZERO;
        let mut terms = Vec::new();
        for t in self.to_partial_fractions().terms {
            let n = t.order;
            let c = t.coeff * n as f64;
            let lambda = t.pole;
            if n == 1 {
                constant += c;
            } else {
                terms.push(PfTerm {
                    pole: lambda,
                    order: n - 1,
                    coeff: c,
                });
            }
            terms.push(PfTerm {
                pole: lambda,
                order: n,
                coeff: c * lambda * 2.0,
            });
            terms.push(PfTerm {
                pole: lambda,
                order: n + 1,
                coeff: c * lambda * lambda,
            });
        }
        let pf = PartialFractions {
            poly_part: Poly::zero(),
            terms,
        };
        let (_, g) = Self::from_partial_fractions(&pf).expect("strictly proper");
        (constant, g)
    }

    /// Exact convolution through the product of s-domain images.
    pub fn convolve(&self, other: &ExpPoly) -> ExpPoly {
        if self.is_zero() || other.is_zero() {
            return ExpPoly::zero();
        }
        let terms = pf_product(
            &self.to_partial_fractions().terms,
            &other.to_partial_fractions().terms,
        );
        let pf = PartialFractions {
            poly_part: Poly::zero(),
            terms,
        };
        Self::from_partial_fractions(&pf)
            .expect("strictly proper")
            .1
    }

    /// Human-readable closed form; conjugate exponent pairs are combined into
    /// `e^{αt}(A cos βt + B sin βt)` when the combined coefficients are real.
    pub fn real_form(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut used = vec![false; self.terms.len()];
        for i in 0..self.terms.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            let (lambda, coeffs) = &self.terms[i];
            let partner = (lambda.im.abs() > EXP_MERGE_TOL)
                .then(|| {
                    (0..self.terms.len()).find(|&j| {
                        !used[j] && (self.terms[j].0 - lambda.conj()).norm() <= EXP_MERGE_TOL
                    })
                })
                .flatten();
            if let Some(j) = partner {
                let conj_coeffs = &self.terms[j].1;
                let (alpha, beta) = (lambda.re, lambda.im.abs());
                let (upper, lower) = if lambda.im > 0.0 {
                    (coeffs, conj_coeffs)
                } else {
                    (conj_coeffs, coeffs)
                };
                let n = upper.len().max(lower.len());
                let combined: Vec<(Cplx, Cplx)> = (0..n)
                    .map(|k| {
                        let c = upper.get(k).copied().unwrap_or(ZERO);
                        let d = lower.get(k).copied().unwrap_or(ZERO);
                        (c + d, (c - d) * Cplx::i())
                    })
                    .collect();
                if combined.iter().all(|(a, b)| is_real(*a) && is_real(*b)) {
                    used[j] = true;
                    for (k, (a, b)) in combined.into_iter().enumerate() {
                        let cos = trig_term(a, k, alpha, beta, "cos");
                        let sin = trig_term(b, k, alpha, beta, "sin");
                        parts.extend(cos);
                        parts.extend(sin);
                    }
                    continue;
                }
            }
            for (k, &c) in coeffs.iter().enumerate() {
                if c != ZERO {
                    parts.push(mono_term(c, k, *lambda, None));
                }
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn is_real(c: Cplx) -> bool {
    c.im.abs() <= 1e-10 * c.re.abs().max(1.0)
}

fn trig_term(a: Cplx, k: usize, alpha: f64, beta: f64, func: &str) -> Option<String> {
    if a.re.abs() <= 1e-14 {
        return None;
    }
    let arg = if (beta - 1.0).abs() < 1e-14 {
        "t".to_string()
    } else {
        format!("{}t", fmt_real(beta))
    };
    Some(mono_term(
        Cplx::new(a.re, 0.0),
        k,
        Cplx::new(alpha, 0.0),
        Some(format!("{func}({arg})")),
    ))
}

fn mono_term(c: Cplx, k: usize, lambda: Cplx, trig: Option<String>) -> String {
    let mut factors: Vec<String> = Vec::new();
    match k {
        0 => {}
        1 => factors.push("t".into()),
        _ => factors.push(format!("t^{k}")),
    }
    if lambda.norm() > EXP_MERGE_TOL {
        if is_real(lambda) {
            if (lambda.re - 1.0).abs() < 1e-14 {
                factors.push("e^t".into());
            } else if (lambda.re + 1.0).abs() < 1e-14 {
                factors.push("e^(-t)".into());
            } else {
                factors.push(format!("e^({}t)", fmt_real(lambda.re)));
            }
        } else {
            factors.push(format!("e^(({})t)", fmt_cplx(lambda)));
        }
    }
    factors.extend(trig);
    let coeff = if is_real(c) {
        fmt_real(c.re)
    } else {
        format!("({})", fmt_cplx(c))
    };
    if factors.is_empty() {
        coeff
    } else if coeff == "1" {
        factors.join("·")
    } else if coeff == "-1" {
        format!("-{}", factors.join("·"))
    } else {
        format!("{coeff}·{}", factors.join("·"))
    }
}

/// Compact decimal rendering with up to 10 significant digits.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let mut s = format!(
        "{:.*}",
        (9 - x.abs().log10().floor() as i32).clamp(0, 16) as usize,
        x
    );
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn fmt_cplx(c: Cplx) -> String {
    let mut s = String::new();
    if c.re != 0.0 || c.im == 0.0 {
        s.push_str(&fmt_real(c.re));
    }
    if c.im != 0.0 {
        if c.im > 0.0 && !s.is_empty() {
            s.push('+');
        }
        let _ = write!(s, "{}i", fmt_real(c.im));
    }
    s
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.real_form())
    }
}

impl Add for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        ExpPoly::from_terms(self.triples().chain(rhs.triples()))
    }
}

impl Sub for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        ExpPoly::from_terms(
            self.triples()
                .chain(rhs.triples().map(|(l, k, c)| (l, k, -c))),
        )
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        self.scale(-ONE)
    }
}

impl Add for ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: ExpPoly) -> ExpPoly {
        &self + &rhs
    }
}

impl Sub for ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: ExpPoly) -> ExpPoly {
        &self - &rhs
    }
}

/// Time-domain face of `r`: `r = constant + {f}`.
///
/// Fails for strictly improper `r` (`deg num > deg den`), which is not a
/// constant plus a function.
pub fn realize(r: &RatFun) -> Result<(Cplx, ExpPoly)> {
    if r.relative_degree().is_some_and(|d| d > 0) {
        return Err(Error::domain(
            "not a function element: numerator degree exceeds denominator degree",
        ));
    }
    ExpPoly::from_partial_fractions(&partial_fractions(r)?)
}

/// s-domain face of `constant + {f}`.
pub fn unrealize(constant: Cplx, f: &ExpPoly) -> RatFun {
    let den = f
        .pole_structure()
        .iter()
        .fold(Poly::one(), |acc, &(p, m)| &acc * &Poly::linear_power(p, m));
    let num = &f.numerator() + &den.scale(constant);
    RatFun::new(num, den).expect("monic denominator")
}

/// Exact convolution `a * b`.
pub fn ep_convolve(a: &ExpPoly, b: &ExpPoly) -> ExpPoly {
    a.convolve(b)
}

/// `T^α f`
pub fn ep_t(alpha: Cplx, f: &ExpPoly) -> Result<ExpPoly> {
    check_finite(alpha)?;
    Ok(f.t_shift(alpha))
}
