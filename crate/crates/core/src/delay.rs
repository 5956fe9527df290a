//! Translation operators `h^λ` and finite sums `Σ h^{λ_i} R_i(s)`.
//!
//! `h^λ` delays a function by `λ`; `h^λ h^μ = h^{λ+μ}` holds on the delay map
//! exactly. Negative delays are legitimate field elements but have no function
//! realization.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exppoly::{realize, ExpPoly};
use crate::poly::{check_finite, Cplx, Poly, RatFun, Subst, ONE, ZERO};

/// Delays closer than this are the same delay.
pub const DELAY_MERGE_TOL: f64 = 1e-12;

/// `Σ_i h^{λ_i} R_i(s)`, sorted by delay, with no zero parts.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DelayElement {
    parts: Vec<(f64, RatFun)>,
}

/// `h^λ`
pub fn h_pow(lambda: f64) -> DelayElement {
    DelayElement::monomial(lambda, RatFun::one())
}

impl DelayElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        h_pow(0.0)
    }

    /// `h^λ R(s)`
    pub fn monomial(lambda: f64, r: RatFun) -> Self {
        let mut e = Self::zero();
        e.push_part(lambda, r);
        e
    }

    pub fn from_ratfun(r: RatFun) -> Self {
        Self::monomial(0.0, r)
    }

    pub fn from_parts(parts: impl IntoIterator<Item = (f64, RatFun)>) -> Self {
        let mut e = Self::zero();
        for (l, r) in parts {
            e.push_part(l, r);
        }
        e
    }

    pub fn parts(&self) -> &[(f64, RatFun)] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    fn push_part(&mut self, lambda: f64, r: RatFun) {
        match self
            .parts
            .iter_mut()
            .find(|(mu, _)| (mu - lambda).abs() <= DELAY_MERGE_TOL)
        {
            Some((_, existing)) => *existing = &*existing + &r,
            None => self.parts.push((lambda, r)),
        }
        self.parts.retain(|(_, r)| !r.is_zero());
        self.parts.sort_by(|a, b| a.0.total_cmp(&b.0));
    }

    fn map_parts(&self, f: impl Fn(f64, &RatFun) -> Result<(f64, RatFun)>) -> Result<Self> {
        let mut out = Self::zero();
        for (l, r) in &self.parts {
            let (l2, r2) = f(*l, r)?;
            out.push_part(l2, r2);
        }
        Ok(out)
    }

    pub fn scale(&self, c: Cplx) -> Self {
        Self::from_parts(self.parts.iter().map(|(l, r)| (*l, r.scale(c))))
    }

    /// The single part `(λ, R)` when the element is `h^λ R`.
    pub fn as_monomial(&self) -> Option<(f64, &RatFun)> {
        match self.parts.as_slice() {
            [(l, r)] => Some((*l, r)),
            _ => None,
        }
    }

    /// The plain rational function when every delay is zero.
    pub fn as_ratfun(&self) -> Option<RatFun> {
        match self.parts.as_slice() {
            [] => Some(RatFun::zero()),
            [(l, r)] if l.abs() <= DELAY_MERGE_TOL => Some(r.clone()),
            _ => None,
        }
    }

    /// Coefficients `α_n` when the element is a polynomial `Σ α_n h^n` in `h`.
    pub fn as_h_polynomial(&self) -> Option<Vec<Cplx>> {
        let mut out: Vec<Cplx> = Vec::new();
        for (l, r) in &self.parts {
            let n = l.round();
            if n < 0.0 || (l - n).abs() > DELAY_MERGE_TOL {
                return None;
            }
            let c = r.as_constant()?;
            let n = n as usize;
            if out.len() <= n {
                out.resize(n + 1, ZERO);
            }
            out[n] += c;
        }
        Some(out)
    }

    /// Inverse of a single-part element `h^λ R`, namely `h^{−λ} / R`.
    pub fn inv(&self) -> Result<Self> {
        let (l, r) = self.as_monomial().ok_or_else(|| {
            Error::domain("only single-part delay elements are invertible in this class")
        })?;
        Ok(Self::monomial(-l, r.inv()?))
    }

    pub fn powi(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        Ok((0..n.unsigned_abs()).fold(Self::one(), |acc, _| &acc * &base))
    }

    /// Largest [`RatFun::distance`] over aligned delays; missing parts count as zero.
    pub fn distance(&self, other: &DelayElement) -> f64 {
        let mut worst: f64 = 0.0;
        for (l, r) in &self.parts {
            let d = match other.part_at(*l) {
                Some(o) => r.distance(o),
                None => r.distance(&RatFun::zero()),
            };
            worst = worst.max(d);
        }
        for (l, r) in &other.parts {
            if self.part_at(*l).is_none() {
                worst = worst.max(r.distance(&RatFun::zero()));
            }
        }
        worst
    }

    fn part_at(&self, lambda: f64) -> Option<&RatFun> {
        self.parts
            .iter()
            .find(|(mu, _)| (mu - lambda).abs() <= DELAY_MERGE_TOL)
            .map(|(_, r)| r)
    }

    /// `τ_q`: `h^λ R(s) ↦ h^{λ/q} R(s/q)`.
    pub fn tau(&self, q: f64) -> Result<Self> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::domain(format!("tau needs q > 0, got {q}")));
        }
        self.map_parts(|l, r| Ok((l / q, r.subst(Subst::Scale(q))?)))
    }

    /// `σ_d = τ_{1/d}`: `h^λ R(s) ↦ h^{dλ} R(ds)`.
    pub fn sigma(&self, d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::domain(format!(
                "sigma needs an integer d >= 2, got {d}"
            )));
        }
        let df = d as f64;
        self.map_parts(|l, r| Ok((l * df, r.subst(Subst::Scale(1.0 / df))?)))
    }

    /// `d/ds`: `h^λ R ↦ h^λ (R′ − λR)`, from `d/ds h^λ = −λ h^λ`.
    pub fn dds(&self) -> Self {
        Self::from_parts(
            self.parts
                .iter()
                .map(|(l, r)| (*l, &r.dds() - &r.scale(Cplx::new(*l, 0.0)))),
        )
    }

    /// `D′ = −h^{−1} d/ds`, so that `D′h = 1`.
    pub fn dprime(&self) -> Self {
        Self::from_parts(self.dds().parts.into_iter().map(|(l, r)| (l - 1.0, -r)))
    }

    /// `D = −s² d/ds`.
    pub fn d_op(&self) -> Self {
        let minus_s2 = RatFun::from_poly(Poly::monomial(-ONE, 2));
        Self::from_parts(
            self.dds()
                .parts
                .into_iter()
                .map(|(l, r)| (l, &minus_s2 * &r)),
        )
    }

    /// `T^α`: `h^λ R(s) ↦ e^{αλ} h^λ R(s − α)`.
    pub fn t_shift(&self, alpha: Cplx) -> Result<Self> {
        check_finite(alpha)?;
        self.map_parts(|l, r| Ok((l, r.subst(Subst::Shift(alpha))?.scale((alpha * l).exp()))))
    }

    /// Piecewise time-domain face: part `h^λ R` becomes the realization of `R`
    /// shifted right by `λ`.
    pub fn realize(&self) -> Result<PiecewiseEP> {
        let mut const_part = ZERO;
        let mut pieces = Vec::new();
        for (l, r) in &self.parts {
            if *l < -DELAY_MERGE_TOL {
                return Err(Error::domain(format!(
                    "not realizable as a function: negative delay {l}"
                )));
            }
            let (c, f) = realize(r).map_err(|e| match e {
                Error::Domain(_) => Error::domain("not realizable as a function: improper part"),
                other => other,
            })?;
            if l.abs() <= DELAY_MERGE_TOL {
                const_part += c;
                pieces.push((0.0, f));
            } else {
                if c != ZERO {
                    return Err(Error::domain(format!(
                        "not realizable as a function: constant multiple of h^{l}"
                    )));
                }
                pieces.push((*l, f));
            }
        }
        PiecewiseEP::new(pieces, const_part)
    }
}

impl Add for &DelayElement {
    type Output = DelayElement;
    fn add(self, rhs: &DelayElement) -> DelayElement {
        DelayElement::from_parts(self.parts.iter().chain(&rhs.parts).cloned())
    }
}

impl Sub for &DelayElement {
    type Output = DelayElement;
    fn sub(self, rhs: &DelayElement) -> DelayElement {
        self + &(-rhs)
    }
}

impl Neg for &DelayElement {
    type Output = DelayElement;
    fn neg(self) -> DelayElement {
        DelayElement::from_parts(self.parts.iter().map(|(l, r)| (*l, -r)))
    }
}

impl Mul for &DelayElement {
    type Output = DelayElement;
    fn mul(self, rhs: &DelayElement) -> DelayElement {
        let mut out = DelayElement::zero();
        for (l1, r1) in &self.parts {
            for (l2, r2) in &rhs.parts {
                out.push_part(l1 + l2, r1 * r2);
            }
        }
        out
    }
}

impl Add for DelayElement {
    type Output = DelayElement;
    fn add(self, rhs: DelayElement) -> DelayElement {
        &self + &rhs
    }
}

impl Sub for DelayElement {
    type Output = DelayElement;
    fn sub(self, rhs: DelayElement) -> DelayElement {
        &self - &rhs
    }
}

impl Mul for DelayElement {
    type Output = DelayElement;
    fn mul(self, rhs: DelayElement) -> DelayElement {
        &self * &rhs
    }
}

impl Neg for DelayElement {
    type Output = DelayElement;
    fn neg(self) -> DelayElement {
        -&self
    }
}

/// `const_part + Σ_i H_{λ_i}(t) f_i(t − λ_i)`.
///
/// The function is left-continuous at every knot `λ_i > 0`; a piece at delay
/// zero is active from `t = 0` on.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PiecewiseEP {
    pieces: Vec<(f64, ExpPoly)>,
    const_part: Cplx,
}

impl PiecewiseEP {
    /// Sorts pieces, merging equal delays; rejects negative delays.
    pub fn new(pieces: Vec<(f64, ExpPoly)>, const_part: Cplx) -> Result<Self> {
        let mut merged: Vec<(f64, ExpPoly)> = Vec::new();
        for (l, f) in pieces {
            if !(l.is_finite() && l >= -DELAY_MERGE_TOL) {
                return Err(Error::domain(format!("piece delay must be >= 0, got {l}")));
            }
            match merged
                .iter_mut()
                .find(|(mu, _)| (mu - l).abs() <= DELAY_MERGE_TOL)
            {
                Some((_, g)) => *g = &*g + &f,
                None => merged.push((l.max(0.0), f)),
            }
        }
        merged.retain(|(_, f)| !f.is_zero());
        merged.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self {
            pieces: merged,
            const_part,
        })
    }

    pub fn pieces(&self) -> &[(f64, ExpPoly)] {
        &self.pieces
    }

    pub fn const_part(&self) -> Cplx {
        self.const_part
    }

    /// Delays of the pieces that start after zero.
    pub fn knots(&self) -> Vec<f64> {
        self.pieces
            .iter()
            .map(|(l, _)| *l)
            .filter(|&l| l > 0.0)
            .collect()
    }

    /// Value of the function part at `t`.
    pub fn eval(&self, t: f64) -> Cplx {
        self.pieces
            .iter()
            .filter(|(l, _)| *l == 0.0 || t > *l)
            .map(|(l, f)| f.eval(t - l))
            .sum()
    }
}

/// Truncated jump series `Σ α_n h^{β_n}` with strictly increasing `β_n ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpSeries {
    coeffs: Vec<Cplx>,
    delays: Vec<f64>,
}

impl JumpSeries {
    pub fn new(coeffs: Vec<Cplx>, delays: Vec<f64>) -> Result<Self> {
        if coeffs.len() != delays.len() {
            return Err(Error::domain("jump series needs one delay per coefficient"));
        }
        if delays.first().is_some_and(|&b| b.is_nan() || b < 0.0) {
            return Err(Error::domain("jump series delays must be >= 0"));
        }
        if delays
            .windows(2)
            .any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater))
        {
            return Err(Error::domain(
                "jump series delays must be strictly increasing",
            ));
        }
        Ok(Self { coeffs, delays })
    }

    /// Integer delays `0, 1, ..., n−1`: the series `Σ α_n h^n`.
    pub fn integer(coeffs: Vec<Cplx>) -> Self {
        let delays = (0..coeffs.len()).map(|n| n as f64).collect();
        Self { coeffs, delays }
    }

    pub fn coeffs(&self) -> &[Cplx] {
        &self.coeffs
    }

    pub fn delays(&self) -> &[f64] {
        &self.delays
    }

    pub fn to_delay_element(&self) -> DelayElement {
        DelayElement::from_parts(
            self.delays
                .iter()
                .zip(&self.coeffs)
                .map(|(&b, &a)| (b, RatFun::constant(a))),
        )
    }
}

/// `g(t) = Σ α_n max(0, t − β_n)`, the `l²`-multiple of the jump series.
pub fn jump_realize(j: &JumpSeries) -> PiecewiseEP {
    let pieces = j
        .delays
        .iter()
        .zip(&j.coeffs)
        .map(|(&b, &a)| (b, ExpPoly::term(a, 1, ZERO)))
        .collect();
    PiecewiseEP::new(pieces, ZERO).expect("jump series delays are validated")
}

/// Recovers `α_0, ..., α_N` from `g(t) = Σ α_n max(0, t − n)` using the values
/// `g(m+1) = Σ_{n≤m} α_n (m + 1 − n)`.
pub fn jump_extract(g: &PiecewiseEP, n: usize) -> Result<Vec<Cplx>> {
    for (l, f) in g.pieces() {
        if (l - l.round()).abs() > DELAY_MERGE_TOL {
            return Err(Error::domain(format!(
                "jump extraction needs integer knots, found {l}"
            )));
        }
        let linear = f.terms().all(|(lambda, c)| {
            lambda == ZERO
                && c.len() <= 2
                && c[0].norm() <= 1e-10 * (1.0 + c.get(1).map_or(0.0, |x| x.norm()))
        });
        if !linear {
            return Err(Error::domain(
                "jump extraction needs a piecewise linear function",
            ));
        }
    }
    let mut alphas: Vec<Cplx> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut value = g.eval((m + 1) as f64);
        for (k, a) in alphas.iter().enumerate() {
            value -= a * (m + 1 - k) as f64;
        }
        alphas.push(value);
    }
    Ok(alphas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }
    fn r(x: f64) -> Cplx {
        Cplx::new(x, 0.0)
    }

    fn random_ratfun(rng: &mut ChaCha8Rng) -> RatFun {
        let mut p = |d: usize| {
            Poly::new(
                (0..=d)
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            )
            .unwrap()
        };
        let num = p(1);
        let den = p(2);
        RatFun::new(num, den).unwrap()
    }

    pub(crate) fn random_delay(rng: &mut ChaCha8Rng) -> DelayElement {
        DelayElement::from_parts(
            (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(0.0..4.0), random_ratfun(rng))),
        )
    }

    #[test]
    fn h_zero_is_identity() {
        assert_eq!(h_pow(0.0), DelayElement::one());
        assert_eq!(h_pow(0.0).as_ratfun(), Some(RatFun::one()));
    }

    #[test]
    fn delay_law() {
        assert_eq!(&h_pow(1.0) * &h_pow(2.0), h_pow(3.0));
        assert_eq!(&h_pow(1.7) * &h_pow(-1.7), DelayElement::one());
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let (a, b) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            assert_eq!(&h_pow(a) * &h_pow(b), h_pow(a + b));
        }
    }

    #[test]
    fn one_plus_h_times_one_minus_h() {
        let one = DelayElement::one();
        let prod = &(&one + &h_pow(1.0)) * &(&one - &h_pow(1.0));
        assert_eq!(prod, &one - &h_pow(2.0));
    }

    #[test]
    fn addition_merges_delays() {
        let hl = DelayElement::monomial(1.0, RatFun::l());
        let sum = &hl + &hl;
        assert_eq!(sum.parts().len(), 1);
        assert!(sum.distance(&DelayElement::monomial(1.0, RatFun::l().scale(r(2.0)))) < 1e-15);
    }

    #[test]
    fn associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let (a, b, d) = (
                random_delay(&mut rng),
                random_delay(&mut rng),
                random_delay(&mut rng),
            );
            assert!((&(&a * &b) * &d).distance(&(&a * &(&b * &d))) < 1e-12);
        }
    }

    #[test]
    fn realize_delayed_ramp() {
        let e = DelayElement::monomial(1.0, RatFun::l().powi(2).unwrap());
        let g = e.realize().unwrap();
        for t in [0.0, 0.5, 1.0, 1.5, 3.0] {
            assert!((g.eval(t) - r((t - 1.0_f64).max(0.0))).norm() < 1e-14);
        }
        let e = DelayElement::monomial(0.5, RatFun::l().powi(2).unwrap());
        assert!((e.realize().unwrap().eval(1.5) - ONE).norm() < 1e-14);
    }

    #[test]
    fn realize_undelayed_exponential() {
        let e = DelayElement::from_ratfun(RatFun::pole_power(ONE, 1));
        let g = e.realize().unwrap();
        assert_eq!(g.pieces().len(), 1);
        assert!((g.eval(1.0) - r(1f64.exp())).norm() < 1e-13);
        assert!((g.eval(0.0) - ONE).norm() < 1e-15);
    }

    #[test]
    fn realize_rejects_negative_delay_and_improper_parts() {
        assert!(matches!(
            DelayElement::monomial(-1.0, RatFun::l()).realize(),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            DelayElement::monomial(1.0, RatFun::s()).realize(),
            Err(Error::Domain(_))
        ));
        assert!(matches!(h_pow(1.0).realize(), Err(Error::Domain(_))));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(h_pow(1.0).sigma(2).unwrap(), h_pow(2.0));
        let lam = 0.37;
        assert_eq!(h_pow(lam).sigma(2).unwrap(), &h_pow(lam) * &h_pow(lam));
        let s = DelayElement::from_ratfun(RatFun::s());
        let two_s = DelayElement::from_ratfun(RatFun::s().scale(r(2.0)));
        assert!(s.sigma(2).unwrap().distance(&two_s) < 1e-15);
        assert!(h_pow(1.0).sigma(1).is_err());
    }

    #[test]
    fn sigma_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..30 {
            let (a, b) = (random_delay(&mut rng), random_delay(&mut rng));
            for d in [2, 3] {
                let sum = (&a + &b).sigma(d).unwrap();
                let sum2 = &a.sigma(d).unwrap() + &b.sigma(d).unwrap();
                assert!(sum.distance(&sum2) < 1e-8);
                let prod = (&a * &b).sigma(d).unwrap();
                let prod2 = &a.sigma(d).unwrap() * &b.sigma(d).unwrap();
                assert!(prod.distance(&prod2) < 1e-8);
            }
        }
    }

    #[test]
    fn dds_examples() {
        assert_eq!(h_pow(1.0).dds(), -&h_pow(1.0));
        assert_eq!(h_pow(2.5).dds(), h_pow(2.5).scale(r(-2.5)));
        // d/ds (h/s) = h(−1/s² − 1/s)
        let e = DelayElement::monomial(1.0, RatFun::l());
        let want = DelayElement::monomial(1.0, &(-&RatFun::l().powi(2).unwrap()) - &RatFun::l());
        assert!(e.dds().distance(&want) < 1e-15);
    }

    #[test]
    fn dprime_examples() {
        assert_eq!(h_pow(1.0).dprime(), DelayElement::one());
        assert!(h_pow(2.0).dprime().distance(&h_pow(1.0).scale(r(2.0))) < 1e-15);
        assert!(DelayElement::from_ratfun(RatFun::constant(r(3.0)))
            .dprime()
            .is_zero());
    }

    #[test]
    fn dprime_sigma_commutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..100 {
            let a = random_delay(&mut rng);
            for d in [2u32, 3] {
                let lhs = a.sigma(d).unwrap().dprime();
                let rhs =
                    (&h_pow((d - 1) as f64) * &a.dprime().sigma(d).unwrap()).scale(r(d as f64));
                assert!(lhs.distance(&rhs) < 1e-8);
            }
        }
    }

    #[test]
    fn t_shift_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        let a = random_delay(&mut rng);
        assert!(a.t_shift(ZERO).unwrap().distance(&a) < 1e-15);
        let alpha = c(0.3, 0.4);
        let e = DelayElement::monomial(1.5, RatFun::l());
        let want =
            DelayElement::monomial(1.5, RatFun::pole_power(alpha, 1).scale((alpha * 1.5).exp()));
        assert!(e.t_shift(alpha).unwrap().distance(&want) < 1e-15);
    }

    #[test]
    fn dds_commutes_with_t_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        for _ in 0..50 {
            let a = random_delay(&mut rng);
            let alpha = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let lhs = a.t_shift(alpha).unwrap().dds();
            let rhs = a.dds().t_shift(alpha).unwrap();
            assert!(lhs.distance(&rhs) < 1e-9);
        }
    }

    #[test]
    fn jump_realize_examples() {
        let g = jump_realize(&JumpSeries::new(vec![ONE], vec![0.0]).unwrap());
        assert!((g.eval(2.5) - r(2.5)).norm() < 1e-15);
        let g = jump_realize(&JumpSeries::integer(vec![ONE, ONE, ONE]));
        for (t, want) in [(0.5, 0.5), (1.5, 2.0), (2.5, 4.5), (4.0, 9.0)] {
            assert!((g.eval(t) - r(want)).norm() < 1e-14, "{t}");
        }
        let g = jump_realize(&JumpSeries::integer(vec![ONE, -ONE]));
        assert!((g.eval(0.7) - r(0.7)).norm() < 1e-15);
        assert!((g.eval(3.0) - ONE).norm() < 1e-15);
    }

    #[test]
    fn jump_series_validation() {
        assert!(JumpSeries::new(vec![ONE, ONE], vec![1.0, 1.0]).is_err());
        assert!(JumpSeries::new(vec![ONE, ONE], vec![2.0, 1.0]).is_err());
        assert!(JumpSeries::new(vec![ONE], vec![-1.0]).is_err());
    }

    #[test]
    fn jump_extract_round_trip() {
        let g = jump_realize(&JumpSeries::integer(vec![ONE, r(2.0)]));
        let a = jump_extract(&g, 1).unwrap();
        assert!((a[0] - ONE).norm() < 1e-12 && (a[1] - r(2.0)).norm() < 1e-12);
        let zero = PiecewiseEP::default();
        assert!(jump_extract(&zero, 3).unwrap().iter().all(|x| *x == ZERO));
        let bad = jump_realize(&JumpSeries::new(vec![ONE], vec![0.5]).unwrap());
        assert!(jump_extract(&bad, 2).is_err());
    }

    #[test]
    fn h_polynomial_view() {
        let e = &DelayElement::one() - &h_pow(1.0).scale(r(0.5));
        assert_eq!(e.as_h_polynomial(), Some(vec![ONE, r(-0.5)]));
        assert_eq!(h_pow(0.5).as_h_polynomial(), None);
        assert_eq!(
            DelayElement::monomial(1.0, RatFun::l()).as_h_polynomial(),
            None
        );
    }
}
