//! Partial-fraction decomposition `r = q(s) + Σ c / (s − pole)^order`.

use super::ratfun::RatFun;
use super::roots::{root_clusters, ROOT_MERGE_TOL};
use super::{Cplx, Poly, ONE, ZERO};
use crate::error::Result;

/// One summand `coeff / (s − pole)^order`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PfTerm {
    pub pole: Cplx,
    pub order: usize,
    pub coeff: Cplx,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions {
    pub poly_part: Poly,
    pub terms: Vec<PfTerm>,
}

impl PartialFractions {
    pub fn eval(&self, s: Cplx) -> Cplx {
        self.terms
            .iter()
            .map(|t| t.coeff / (s - t.pole).powu(t.order as u32))
            .sum::<Cplx>()
            + self.poly_part.eval(s)
    }

    /// Sums the decomposition back into a single rational function.
    pub fn recombine(&self) -> RatFun {
        let mut poles: Vec<(Cplx, usize)> = Vec::new();
        for t in &self.terms {
            match poles.iter_mut().find(|(p, _)| *p == t.pole) {
                Some((_, m)) => *m = (*m).max(t.order),
                None => poles.push((t.pole, t.order)),
            }
        }
        let den = poles
            .iter()
            .fold(Poly::one(), |acc, &(p, m)| &acc * &Poly::linear_power(p, m));
        let mut num = &self.poly_part * &den;
        for t in &self.terms {
            let cofactor = poles.iter().fold(Poly::one(), |acc, &(p, m)| {
                let k = if p == t.pole { m - t.order } else { m };
                &acc * &Poly::linear_power(p, k)
            });
            num = &num + &cofactor.scale(t.coeff);
        }
        RatFun::new(num, den).expect("monic product denominator")
    }
}

/// Decomposes a rational function, locating poles by root finding.
pub fn partial_fractions(r: &RatFun) -> Result<PartialFractions> {
    if r.den().degree() == Some(0) {
        return Ok(PartialFractions {
            poly_part: r.num().scale(r.den().lead().inv()),
            terms: Vec::new(),
        });
    }
    let poles = root_clusters(r.den())?;
    Ok(partial_fractions_with_poles(r.num(), &poles))
}

/// Decomposes `num / Π (s − pole)^mult` for a known pole structure.
///
/// Poles must be pairwise distinct. Coefficients are read off from the Taylor
/// expansion of `num / (other factors)` at each pole, which avoids any
/// further root finding.
pub fn partial_fractions_with_poles(num: &Poly, poles: &[(Cplx, usize)]) -> PartialFractions {
    let den = poles
        .iter()
        .fold(Poly::one(), |acc, &(p, m)| &acc * &Poly::linear_power(p, m));
    let (poly_part, num) = match num.divrem(&den) {
        Ok(qr) => qr,
        Err(_) => unreachable!("monic denominator is nonzero"),
    };

    let mut terms = Vec::new();
    for (idx, &(pole, mult)) in poles.iter().enumerate() {
        let mut numerator = num.taylor_at(pole);
        numerator.resize(mult.max(numerator.len()), ZERO);
        numerator.truncate(mult);

        let mut cofactor = vec![ZERO; mult];
        cofactor[0] = ONE;
        for (j, &(other, m)) in poles.iter().enumerate() {
            if j == idx {
                continue;
            }
            // (pole − other + z)^m truncated to `mult` terms
            let d = pole - other;
            for _ in 0..m {
                for k in (0..mult).rev() {
                    let below = if k > 0 { cofactor[k - 1] } else { ZERO };
                    cofactor[k] = cofactor[k] * d + below;
                }
            }
        }

        let quotient = series_div(&numerator, &cofactor);
        for (j, coeff) in quotient.into_iter().enumerate() {
            if coeff != ZERO {
                terms.push(PfTerm {
                    pole,
                    order: mult - j,
                    coeff,
                });
            }
        }
    }
    PartialFractions { poly_part, terms }
}

/// Product of two strictly proper decompositions, computed termwise.
///
/// Uses the two-pole split
/// `1/((s−a)^i (s−b)^j) = Σ_k (−1)^k C(j+k−1,k) (a−b)^{−j−k} (s−a)^{k−i} + (a↔b)`,
/// which never forms a polynomial in the monomial basis.
pub fn pf_product(a: &[PfTerm], b: &[PfTerm]) -> Vec<PfTerm> {
    let mut out: Vec<PfTerm> = Vec::new();
    let mut push = |pole: Cplx, order: usize, coeff: Cplx| match out
        .iter_mut()
        .find(|t| t.order == order && (t.pole - pole).norm() <= ROOT_MERGE_TOL)
    {
        Some(t) => t.coeff += coeff,
        None => out.push(PfTerm { pole, order, coeff }),
    };
    for x in a {
        for y in b {
            let c = x.coeff * y.coeff;
            let (pa, i, pb, j) = (x.pole, x.order, y.pole, y.order);
            if (pa - pb).norm() <= ROOT_MERGE_TOL {
                push(pa, i + j, c);
                continue;
            }
            for (p, q, m, n) in [(pa, pb, i, j), (pb, pa, j, i)] {
                let inv_d = (p - q).inv();
                // (−1)^k C(n+k−1, k) (p−q)^{−n−k}
                let mut w = inv_d.powu(n as u32);
                for k in 0..m {
                    push(p, m - k, c * w);
                    w *= -inv_d * ((n + k) as f64) / ((k + 1) as f64);
                }
            }
        }
    }
    out
}

/// Truncated power-series quotient `a / b`, `b[0] ≠ 0`, same length as `a`.
fn series_div(a: &[Cplx], b: &[Cplx]) -> Vec<Cplx> {
    let inv0 = b[0].inv();
    let mut out: Vec<Cplx> = Vec::with_capacity(a.len());
    for n in 0..a.len() {
        let acc: Cplx = (1..=n)
            .map(|k| b.get(k).copied().unwrap_or(ZERO) * out[n - k])
            .sum();
        out.push((a[n] - acc) * inv0);
    }
    out
}

/// Merges a pole list so that poles within the merge tolerance share one entry.
pub(crate) fn merge_pole_lists(lists: &[&[(Cplx, usize)]]) -> Vec<(Cplx, usize)> {
    let mut out: Vec<(Cplx, usize)> = Vec::new();
    for list in lists {
        for &(p, m) in list.iter() {
            match out
                .iter_mut()
                .find(|(q, _)| (q - p).norm() <= ROOT_MERGE_TOL)
            {
                Some((_, k)) => *k += m,
                None => out.push((p, m)),
            }
        }
    }
    out
}
