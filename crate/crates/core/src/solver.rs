//! Constant-coefficient linear ODEs solved in the `s` domain, and scalar delay
//! equations solved by geometric series in `h`.

use crate::delay::PiecewiseEP;
use crate::error::{Error, Result};
use crate::exppoly::{unrealize, ExpPoly};
use crate::poly::partial::{merge_pole_lists, partial_fractions_with_poles};
use crate::poly::roots::root_clusters;
use crate::poly::{check_finite, Cplx, Poly, ZERO};
use crate::series::SeriesH;

/// Coefficient residual above which [`solve_lode`] reports a numerical failure.
const SOLVE_RESIDUAL_TOL: f64 = 1e-6;

/// `Σ_k a_k f^{(k)} = rhs` with `f^{(j)}(0) = init[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct OdeProblem {
    /// `a_0, ..., a_n` with `a_n ≠ 0`.
    pub coeffs: Vec<Cplx>,
    /// `f(0), ..., f^{(n−1)}(0)`.
    pub init: Vec<Cplx>,
    pub rhs: ExpPoly,
}

impl OdeProblem {
    pub fn new(coeffs: Vec<Cplx>, init: Vec<Cplx>, rhs: ExpPoly) -> Result<Self> {
        for &c in coeffs.iter().chain(&init) {
            check_finite(c)?;
        }
        match coeffs.last() {
            None => return Err(Error::domain("zero characteristic polynomial")),
            Some(&a) if a == ZERO => {
                return Err(Error::domain("leading ODE coefficient must be nonzero"))
            }
            _ => {}
        }
        let order = coeffs.len() - 1;
        if order == 0 {
            return Err(Error::domain("an ODE needs order >= 1"));
        }
        if init.len() != order {
            return Err(Error::domain(format!(
                "an order-{order} ODE needs {order} initial values, got {}",
                init.len()
            )));
        }
        Ok(Self { coeffs, init, rhs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Exact `d/dt` of an exponential polynomial, termwise on `c t^k e^{λt}`.
pub fn ep_time_derivative(f: &ExpPoly) -> ExpPoly {
    let mut out = ExpPoly::zero();
    for (lambda, cs) in f.terms() {
        for (k, &c) in cs.iter().enumerate() {
            out.add_term(lambda, k, c * lambda);
            if k > 0 {
                out.add_term(lambda, k - 1, c * k as f64);
            }
        }
    }
    out
}

/// How well an exponential polynomial satisfies an [`OdeProblem`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeCheck {
    /// Largest coefficient of `Σ a_k f^{(k)} − rhs`.
    pub residual: f64,
    /// Largest `|f^{(j)}(0) − init[j]|`.
    pub init_error: f64,
}

/// Substitutes `f` into the ODE using exact term differentiation.
pub fn ode_residual(p: &OdeProblem, f: &ExpPoly) -> OdeCheck {
    let mut lhs = ExpPoly::zero();
    let mut deriv = f.clone();
    let mut init_error: f64 = 0.0;
    for (k, &a) in p.coeffs.iter().enumerate() {
        if k < p.init.len() {
            init_error = init_error.max((deriv.eval(0.0) - p.init[k]).norm());
        }
        lhs = &lhs + &deriv.scale(a);
        deriv = ep_time_derivative(&deriv);
    }
    let diff = &lhs - &p.rhs;
    let residual = diff
        .terms()
        .flat_map(|(_, cs)| cs.iter().map(|c| c.norm()))
        .fold(0.0, f64::max);
    OdeCheck {
        residual,
        init_error,
    }
}

/// Solves through `(Σ a_k s^k) F = R(s) + Q(s)` with `Q` collecting the
/// initial values via `f^{(k)} = s^k f − Σ_{j<k} s^{k−1−j} f^{(j)}(0)`.
pub fn solve_lode(p: &OdeProblem) -> Result<ExpPoly> {
    let char_poly = Poly::new(p.coeffs.clone())?;
    let mut q = Poly::zero();
    for (k, &a) in p.coeffs.iter().enumerate() {
        for (j, &fj) in p.init.iter().enumerate().take(k) {
            q = &q + &Poly::monomial(a * fj, k - 1 - j);
        }
    }
    let rhs = unrealize(ZERO, &p.rhs);
    let num = rhs.num() + &(&q * rhs.den());
    let lead = char_poly.lead() * rhs.den().lead();
    let num = num.scale(lead.inv());

    // exact exponents of the forcing take precedence over computed roots
    let forcing_poles = p.rhs.pole_structure();
    let char_roots = root_clusters(&char_poly)?;
    let poles = merge_pole_lists(&[&forcing_poles, &char_roots]);
    let pf = partial_fractions_with_poles(&num, &poles);
    let (constant, f) = ExpPoly::from_partial_fractions(&pf)?;
    if constant.norm() > SOLVE_RESIDUAL_TOL {
        return Err(Error::Numerical {
            message: "transfer function of the ODE is not strictly proper".into(),
            residual: constant.norm(),
        });
    }
    let check = ode_residual(p, &f);
    let scale = p.coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
    if check.residual > SOLVE_RESIDUAL_TOL * scale || check.init_error > SOLVE_RESIDUAL_TOL {
        return Err(Error::Numerical {
            message: "ODE solution failed the substitution check".into(),
            residual: check.residual.max(check.init_error),
        });
    }
    Ok(f)
}

/// `x = forcing + c·h·x` on `[0, T]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DelayProblem {
    pub c: Cplx,
    pub forcing: ExpPoly,
    pub horizon: f64,
}

impl DelayProblem {
    pub fn new(c: Cplx, forcing: ExpPoly, horizon: f64) -> Result<Self> {
        check_finite(c)?;
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::domain(format!(
                "delay horizon must be finite and > 0, got {horizon}"
            )));
        }
        Ok(Self {
            c,
            forcing,
            horizon,
        })
    }
}

/// `x = (1 − ch)^{−1} forcing = Σ_{n ≤ ⌈T⌉} cⁿ hⁿ forcing`, exact on `[0, T]`
/// because `hⁿ forcing` vanishes on `[0, n)`.
pub fn solve_delay_geom(p: &DelayProblem) -> Result<PiecewiseEP> {
    let terms = p.horizon.ceil() as usize + 1;
    let mut one_minus_ch = vec![ZERO; terms.max(2)];
    one_minus_ch[0] = Cplx::new(1.0, 0.0);
    one_minus_ch[1] = -p.c;
    let geom = SeriesH::new(one_minus_ch)?.invert_unit()?;
    let pieces = geom
        .coeffs()
        .iter()
        .take(terms)
        .enumerate()
        .filter(|(_, c)| **c != ZERO)
        .map(|(n, &c)| (n as f64, p.forcing.scale(c)))
        .collect();
    PiecewiseEP::new(pieces, ZERO)
}
