//! Polynomial root finding: Aberth–Ehrlich simultaneous iteration with a
//! companion-matrix fallback, Newton polishing, and clustering of multiple roots.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::{Cplx, Poly, ONE, ZERO};
use crate::error::{Error, Result};

/// Distinct roots closer than this are always merged.
pub const ROOT_MERGE_TOL: f64 = 1e-8;

const MAX_ITER: usize = 1000;
const EPS: f64 = f64::EPSILON;

/// All `deg(p)` roots, repeated according to multiplicity.
///
/// Numerically multiple roots come back as one refined value repeated, so
/// callers that compare or group roots see identical entries.
pub fn poly_roots(p: &Poly) -> Result<Vec<Cplx>> {
    Ok(root_clusters(p)?
        .into_iter()
        .flat_map(|(r, m)| std::iter::repeat_n(r, m))
        .collect())
}

/// Distinct roots with their multiplicities.
pub fn root_clusters(p: &Poly) -> Result<Vec<(Cplx, usize)>> {
    let deg = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::domain(
                "root finding needs a polynomial of degree >= 1",
            ))
        }
    };
    let zeros = p.coeffs().iter().take_while(|&&c| c == ZERO).count();
    let rest = Poly::from_vec(p.coeffs()[zeros..].to_vec());
    let mut clusters = Vec::new();
    if zeros > 0 {
        clusters.push((ZERO, zeros));
    }
    if deg > zeros {
        let approx = match aberth(&rest) {
            Some(r) => r,
            None => companion_eigenvalues(&rest)?,
        };
        let polished: Vec<Cplx> = approx
            .into_iter()
            .map(|z| newton_polish(&rest, z))
            .collect();
        clusters.extend(cluster(&rest, polished));
    }
    let clusters = merge_close(clusters);

    for &(r, _) in &clusters {
        let residual = p.eval(r).norm();
        if residual > 1e-8 * p.eval_scale(r).max(f64::MIN_POSITIVE) {
            return Err(Error::Numerical {
                message: format!("root {r} failed the residual check"),
                residual,
            });
        }
    }
    Ok(clusters)
}

/// Fujiwara-style radius bound for the roots of a monic polynomial.
fn root_radius(monic: &[Cplx]) -> f64 {
    let n = monic.len() - 1;
    (1..=n)
        .map(|k| {
            let c = monic[n - k].norm();
            if k == n {
                (c / 2.0).powf(1.0 / k as f64)
            } else {
                c.powf(1.0 / k as f64)
            }
        })
        .fold(0.0, f64::max)
        * 2.0
}

fn aberth(p: &Poly) -> Option<Vec<Cplx>> {
    let monic = p.monic();
    let n = monic.degree()?;
    if n == 1 {
        return Some(vec![-monic.coeff(0)]);
    }
    let center = -monic.coeff(n - 1) / n as f64;
    let shifted = monic.taylor_at(center);
    let radius = root_radius(&shifted);
    if radius == 0.0 {
        return Some(vec![center; n]);
    }
    let mut z: Vec<Cplx> = (0..n)
        .map(|k| center + Cplx::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.7))
        .collect();
    let mut done = vec![false; n];

    for _ in 0..MAX_ITER {
        let mut all_done = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (v, dv) = monic.eval_with_derivative(z[k]);
            if v.norm() <= 4.0 * EPS * monic.eval_scale(z[k]) {
                done[k] = true;
                continue;
            }
            all_done = false;
            let ratio = v / dv;
            let repulsion: Cplx = (0..n)
                .filter(|&j| j != k && z[j] != z[k])
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let mut w = ratio / (ONE - ratio * repulsion);
            if !(w.re.is_finite() && w.im.is_finite()) {
                // stationary point of p; nudge off it
                w = Cplx::from_polar(radius * 1e-3, k as f64);
            }
            z[k] -= w;
            if w.norm() <= EPS * z[k].norm() {
                done[k] = true;
            }
        }
        if all_done {
            return Some(z);
        }
    }
    None
}

fn companion_eigenvalues(p: &Poly) -> Result<Vec<Cplx>> {
    let monic = p.monic();
    let n = monic.degree().unwrap_or(0);
    let mut m = DMatrix::<Cplx>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = ONE;
    }
    for i in 0..n {
        m[(i, n - 1)] = -monic.coeff(i);
    }
    let schur =
        nalgebra::linalg::Schur::try_new(m, EPS, 10_000).ok_or_else(|| Error::Numerical {
            message: "root finding did not converge".into(),
            residual: f64::INFINITY,
        })?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

fn newton_polish(p: &Poly, mut z: Cplx) -> Cplx {
    let mut best = p.eval(z).norm();
    for _ in 0..8 {
        let (v, dv) = p.eval_with_derivative(z);
        if dv == ZERO || v == ZERO {
            break;
        }
        let next = z - v / dv;
        let r = p.eval(next).norm();
        if r < best {
            best = r;
            z = next;
        } else {
            break;
        }
    }
    z
}

/// Groups approximate roots into multiple roots.
///
/// A group of `m` approximations is accepted as one `m`-fold root when its
/// spread is within the perturbation radius `(C·ε·scale/|p^(m)(c)/m!|)^(1/m)`
/// of an `m`-fold root at the group centroid `c`.
fn cluster(p: &Poly, roots: Vec<Cplx>) -> Vec<(Cplx, usize)> {
    let deg = p.degree().unwrap_or(0);
    let mut remaining = roots;
    let mut out = Vec::new();
    while let Some(r0) = remaining.pop() {
        remaining.sort_by(|a, b| (a - r0).norm().total_cmp(&(b - r0).norm()));
        let mut best = (r0, 1, ROOT_MERGE_TOL);
        for m in 2..=(remaining.len() + 1).min(deg) {
            let members = std::iter::once(r0).chain(remaining[..m - 1].iter().copied());
            let centroid = members.clone().sum::<Cplx>() / m as f64;
            let spread = members.map(|r| (r - centroid).norm()).fold(0.0, f64::max);
            let taylor = p.taylor_at(centroid);
            let tm = taylor[m].norm();
            if tm == 0.0 {
                continue;
            }
            let theta = (2.0 * (1e4 * EPS * p.eval_scale(centroid) / tm).powf(1.0 / m as f64))
                .max(ROOT_MERGE_TOL);
            if spread <= theta {
                best = (centroid, m, theta);
            }
        }
        let (centroid, m, theta) = best;
        remaining.drain(..m - 1);
        out.push((refine_multiple(p, centroid, m, theta), m));
    }
    out
}

/// Newton on `p^(m-1)`, for which an `m`-fold root of `p` is simple.
fn refine_multiple(p: &Poly, c: Cplx, m: usize, theta: f64) -> Cplx {
    if m == 1 {
        return c;
    }
    let q = (1..m).fold(p.clone(), |acc, _| acc.derivative());
    let mut z = c;
    for _ in 0..10 {
        let (v, dv) = q.eval_with_derivative(z);
        if dv == ZERO {
            break;
        }
        let step = v / dv;
        z -= step;
        if step.norm() <= EPS * (1.0 + z.norm()) {
            break;
        }
    }
    if (z - c).norm() <= theta && p.eval(z).norm() <= p.eval(c).norm() * 10.0 {
        z
    } else {
        c
    }
}

fn merge_close(mut clusters: Vec<(Cplx, usize)>) -> Vec<(Cplx, usize)> {
    let mut out: Vec<(Cplx, usize)> = Vec::new();
    clusters.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    for (r, m) in clusters {
        match out
            .iter_mut()
            .find(|(q, _)| (q - r).norm() <= ROOT_MERGE_TOL)
        {
            Some((q, k)) => {
                *q = (*q * *k as f64 + r * m as f64) / (*k + m) as f64;
                *k += m;
            }
            None => out.push((r, m)),
        }
    }
    out
}
