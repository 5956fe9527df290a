//! Rational functions of the differential operator `s`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{check_finite, Cplx, Poly, ONE, ZERO};
use crate::error::{Error, Result};

/// `num(s) / den(s)` with a monic denominator.
///
/// No cancellation is attempted, so two equal elements may have different
/// representations; use [`RatFun::distance`] or evaluation to compare.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

/// Substitutions acting on the variable `s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Subst {
    /// `s ↦ s − α`, the action of `T^α`.
    Shift(Cplx),
    /// `s ↦ s / q`, the action of `τ_q`.
    Scale(f64),
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("rational function with zero denominator"));
        }
        let inv = den.lead().inv();
        Ok(Self {
            num: num.scale(inv),
            den: den.scale(inv),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Cplx) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    /// The differential operator `s`.
    pub fn s() -> Self {
        Self::from_poly(Poly::s())
    }

    /// The integral operator `l = 1/s`.
    pub fn l() -> Self {
        Self {
            num: Poly::one(),
            den: Poly::s(),
        }
    }

    /// `1 / (s − α)^n`
    pub fn pole_power(alpha: Cplx, n: usize) -> Self {
        Self {
            num: Poly::one(),
            den: Poly::linear_power(alpha, n),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `deg num − deg den`, or `None` for zero.
    pub fn relative_degree(&self) -> Option<isize> {
        let n = self.num.degree()? as isize;
        Some(n - self.den.degree().unwrap_or(0) as isize)
    }

    /// Strictly proper: `deg num < deg den` (zero counts as proper).
    pub fn is_strictly_proper(&self) -> bool {
        self.relative_degree().is_none_or(|d| d < 0)
    }

    /// Returns the constant value when the element is a (nonzero or zero) scalar.
    pub fn as_constant(&self) -> Option<Cplx> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(ZERO),
            (Some(0), Some(0)) => Some(self.num.coeff(0)),
            _ => None,
        }
    }

    pub fn eval(&self, s: Cplx) -> Cplx {
        self.num.eval(s) / self.den.eval(s)
    }

    pub fn scale(&self, c: Cplx) -> Self {
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("division by the zero element"));
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &RatFun) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn powi(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        Ok((0..n.unsigned_abs()).fold(Self::one(), |acc, _| &acc * &base))
    }

    /// Coefficientwise substitution for `s`, renormalised to a monic denominator.
    pub fn subst(&self, map: Subst) -> Result<Self> {
        let apply = |p: &Poly| -> Result<Poly> {
            match map {
                Subst::Shift(alpha) => {
                    check_finite(alpha)?;
                    Ok(p.compose_affine(ONE, -alpha))
                }
                Subst::Scale(q) => {
                    if !(q > 0.0 && q.is_finite()) {
                        return Err(Error::domain(format!(
                            "scale factor must be positive, got {q}"
                        )));
                    }
                    Ok(p.compose_affine(Cplx::new(1.0 / q, 0.0), ZERO))
                }
            }
        };
        Self::new(apply(&self.num)?, apply(&self.den)?)
    }

    /// Formal derivative with respect to `s` (quotient rule).
    pub fn dds(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self {
            num,
            den: &self.den * &self.den,
        }
    }

    /// Semantic distance: largest coefficient of `a.num·b.den − b.num·a.den`,
    /// relative to the larger of the two cross products (floored at one).
    pub fn distance(&self, other: &RatFun) -> f64 {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        lhs.distance(&rhs) / lhs.max_abs().max(rhs.max_abs()).max(1.0)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        RatFun {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        &self + &rhs
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        &self - &rhs
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        &self * &rhs
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    fn random_ratfun(rng: &mut ChaCha8Rng, dn: usize, dd: usize) -> RatFun {
        let mut p = |d: usize| {
            Poly::from_vec(
                (0..=d)
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            )
        };
        let num = p(dn);
        let den = p(dd);
        RatFun::new(num, den).unwrap()
    }

    fn sample_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Cplx> {
        (0..n)
            .map(|_| c(rng.gen_range(1.0..3.0), rng.gen_range(-2.0..2.0)))
            .collect()
    }

    fn close(a: Cplx, b: Cplx, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn dds_of_s_is_one() {
        assert!(RatFun::s().dds().distance(&RatFun::one()) < 1e-15);
    }

    #[test]
    fn dds_of_l_is_minus_l_squared() {
        let expected = RatFun::l().powi(2).unwrap().scale(c(-1.0, 0.0));
        assert!(RatFun::l().dds().distance(&expected) < 1e-15);
    }

    #[test]
    fn shift_of_l() {
        let alpha = c(0.5, -1.5);
        let shifted = RatFun::l().subst(Subst::Shift(alpha)).unwrap();
        assert!(shifted.distance(&RatFun::pole_power(alpha, 1)) < 1e-15);
    }

    #[test]
    fn scale_of_s() {
        let r = RatFun::s().subst(Subst::Scale(2.0)).unwrap();
        assert!(r.distance(&RatFun::s().scale(c(0.5, 0.0))) < 1e-15);
    }

    #[test]
    fn shift_by_zero_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = random_ratfun(&mut rng, 2, 3);
        assert!(r.subst(Subst::Shift(ZERO)).unwrap().distance(&r) < 1e-15);
    }

    #[test]
    fn scale_rejects_nonpositive() {
        assert!(RatFun::s().subst(Subst::Scale(0.0)).is_err());
        assert!(RatFun::s().subst(Subst::Scale(-1.0)).is_err());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFun::new(Poly::one(), Poly::zero()).is_err());
        assert!(RatFun::zero().inv().is_err());
    }

    #[test]
    fn dds_matches_central_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let eps = 1e-6;
        for _ in 0..10 {
            let r = random_ratfun(&mut rng, 3, 4);
            let d = r.dds();
            for s in sample_points(&mut rng, 5) {
                let fd = (r.eval(s + eps) - r.eval(s - eps)) / (2.0 * eps);
                assert!(close(d.eval(s), fd, 1e-6), "{} vs {}", d.eval(s), fd);
            }
        }
    }

    #[test]
    fn leibniz_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = random_ratfun(&mut rng, 2, 3);
            let b = random_ratfun(&mut rng, 3, 2);
            let lhs = (&a * &b).dds();
            let rhs = &(&a.dds() * &b) + &(&a * &b.dds());
            for s in sample_points(&mut rng, 5) {
                assert!(close(lhs.eval(s), rhs.eval(s), 1e-8));
            }
        }
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let a = random_ratfun(&mut rng, 2, 3);
            let b = random_ratfun(&mut rng, 1, 2);
            let maps = [
                Subst::Shift(c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))),
                Subst::Scale(rng.gen_range(0.3..3.0)),
            ];
            for map in maps {
                let prod = (&a * &b).subst(map).unwrap();
                let prod2 = &a.subst(map).unwrap() * &b.subst(map).unwrap();
                let sum = (&a + &b).subst(map).unwrap();
                let sum2 = &a.subst(map).unwrap() + &b.subst(map).unwrap();
                for s in sample_points(&mut rng, 5) {
                    assert!(close(prod.eval(s), prod2.eval(s), 1e-9));
                    assert!(close(sum.eval(s), sum2.eval(s), 1e-9));
                }
            }
        }
    }
}
