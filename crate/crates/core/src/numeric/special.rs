//! Special functions: Γ (Lanczos), erf, and J₀.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::poly::Cplx;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest |x| accepted by [`j0`].
pub const J0_MAX_ARG: f64 = 12.0;

fn check_pole(z: Cplx) -> Result<()> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::domain(format!("gamma has a pole at {}", z.re)));
    }
    Ok(())
}

/// Γ(z) for complex `z`.
pub fn gamma_c(z: Cplx) -> Result<Cplx> {
    check_pole(z)?;
    if z.re < 0.5 {
        // reflection: Γ(z)Γ(1−z) = π / sin(πz)
        let g = gamma_c(Cplx::new(1.0, 0.0) - z)?;
        return Ok(PI / ((z * PI).sin() * g));
    }
    let z = z - 1.0;
    let mut a = Cplx::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * ((z + 0.5) * t.ln() - t).exp() * a)
}

/// Γ(x) for real `x`.
pub fn gamma(x: f64) -> Result<f64> {
    check_pole(Cplx::new(x, 0.0))?;
    if x < 0.5 {
        return Ok(PI / ((PI * x).sin() * gamma(1.0 - x)?));
    }
    let z = x - 1.0;
    let a = LANCZOS
        .iter()
        .enumerate()
        .skip(1)
        .fold(LANCZOS[0], |acc, (k, &c)| acc + c / (z + k as f64));
    let t = z + LANCZOS_G + 0.5;
    // t^{z+1/2} split in halves to delay overflow
    let half = t.powf((z + 0.5) / 2.0);
    Ok((2.0 * PI).sqrt() * half * (half * (-t).exp()) * a)
}

/// Error function; series below |x| = 3, continued fraction for erfc above.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let ax = x.abs();
    let v = if ax < 3.0 {
        erf_series(ax)
    } else {
        1.0 - erfc_continued_fraction(ax)
    };
    v.copysign(x)
}

/// `2/√π · e^{−x²} Σ 2ⁿ x^{2n+1} / (1·3···(2n+1))`; all terms positive.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    while term > 1e-17 * sum {
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
    }
    2.0 / PI.sqrt() * (-x2).exp() * sum
}

/// `erfc x = e^{−x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))`, by modified Lentz.
fn erfc_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let a = k as f64 / 2.0;
        d = x + a * d;
        if d == 0.0 {
            d = TINY;
        }
        c = x + a / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (PI.sqrt() * f)
}

/// J₀ by its power series `Σ (−1)^k (x/2)^{2k} / (k!)²`, for |x| ≤ 12.
pub fn j0(x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() > J0_MAX_ARG {
        return Err(Error::Range(format!(
            "j0 series is validated for |x| <= {J0_MAX_ARG}, got {x}"
        )));
    }
    let q = x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= -q / (k * k) as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) && k as f64 > q.sqrt() {
            break;
        }
    }
    Ok(sum)
}
