//! The hypergeometric function `W(x) = ₂F₁(2/3, 1; 4/3; x)` and its Kummer companions.

use num_complex::Complex64;

use super::constants::pi3;
use super::quad::adaptive_gauss;
use crate::cnum::CNum;
use crate::error::{Error, Result};

const SERIES_RADIUS: f64 = 0.6;

/// Evaluation strategy for [`hyper_w_by`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WRoute {
    /// Pick the cheapest convergent representation.
    Auto,
    /// Power series at the origin (only for `|x| < 1`).
    Series,
    /// Numerical quadrature of `W(x) = ∫₀¹ (1 − x(1 − s³))^(−2/3) ds`.
    Quadrature,
}

fn series(x: Complex64) -> (Complex64, f64) {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let r = x.norm();
    let mut k = 0.0;
    loop {
        term *= x * (k + 2.0 / 3.0) / (k + 4.0 / 3.0);
        sum += term;
        k += 1.0;
        // remaining terms are bounded by a geometric tail
        let tail = term.norm() * r / (1.0 - r);
        if tail < 1e-17 * sum.norm() || k > 20_000.0 {
            return (sum, tail + 4.0 * f64::EPSILON * k.sqrt() * sum.norm());
        }
    }
}

fn on_cut(x: Complex64) -> bool {
    x.im == 0.0 && x.re > 1.0
}

/// `W(x)` on the principal sheet, cut along `[1, ∞)`.
pub fn hyper_w(x: CNum) -> Result<CNum> {
    hyper_w_by(x, WRoute::Auto)
}

pub fn hyper_w_by(x: CNum, route: WRoute) -> Result<CNum> {
    let z = x.c();
    if (z - 1.0).norm() < 1e-14 {
        return Err(Error::Pole("W at x = 1".into()));
    }
    if on_cut(z) {
        return Err(Error::Domain("W on the branch cut (1, ∞)".into()));
    }
    let (w, err) = match route {
        WRoute::Series => {
            if z.norm() >= 1.0 {
                return Err(Error::Domain("the W power series (|x| < 1)".into()));
            }
            series(z)
        }
        WRoute::Quadrature => quadrature(z),
        WRoute::Auto => auto(z),
    };
    // W' = (1 − (1 − 2x) W) / (3x(1 − x))
    let slope = if z.norm() < 1e-8 { Complex64::new(0.5, 0.0) } else { (1.0 - (1.0 - 2.0 * z) * w) / (3.0 * z * (1.0 - z)) };
    Ok(CNum::from_c(w, err + slope.norm() * x.err))
}

fn auto(z: Complex64) -> (Complex64, f64) {
    if z.norm() <= SERIES_RADIUS {
        return series(z);
    }
    // Pfaff: W(x) = W(x/(x − 1)) / (1 − x)
    let y = z / (z - 1.0);
    if y.norm() <= SERIES_RADIUS {
        let (w, e) = series(y);
        return (w / (1.0 - z), e / (1.0 - z).norm());
    }
    if let Some(r) = connection(z) {
        return r;
    }
    if let Some((w, e)) = connection(y) {
        return (w / (1.0 - z), e / (1.0 - z).norm());
    }
    quadrature(z)
}

/// Around `x = 1`: `W(x) = (π₃/3) (x(1 − x))^(−1/3) − W(1 − x)`, valid off the real axis outside `(0, 1)`.
fn connection(z: Complex64) -> Option<(Complex64, f64)> {
    let u = 1.0 - z;
    if u.norm() > SERIES_RADIUS || (z.im == 0.0 && z.re <= 0.0) {
        return None;
    }
    let (w1, e) = series(u);
    let p = z * u;
    let sing = Complex64::from_polar(p.norm().powf(-1.0 / 3.0), -p.arg() / 3.0) * (pi3() / 3.0);
    Some((sing - w1, e + 4.0 * f64::EPSILON * sing.norm()))
}

fn quadrature(z: Complex64) -> (Complex64, f64) {
    let f = |s: f64| {
        let b = 1.0 - z * (1.0 - s * s * s);
        Complex64::from_polar(b.norm().powf(-2.0 / 3.0), -2.0 / 3.0 * b.arg())
    };
    adaptive_gauss(&f, 0.0, 1.0, 1e-14)
}

/// One of the three Kummer solutions of `3x(1 − x)W' + (1 − 2x)W = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kummer {
    /// `W₀ = W`, regular at 0.
    Zero,
    /// `W₁(x) = −W(1 − x)`, regular at 1 with `W₁(1) = −1`.
    One,
    /// `W_∞(x) = W(1/x)/x`, vanishing at infinity.
    Infinity,
}

pub fn kummer_solution(which: Kummer, x: CNum) -> Result<CNum> {
    let z = x.c();
    match which {
        Kummer::Zero => hyper_w(x),
        Kummer::One => {
            if z.im == 0.0 && z.re <= 0.0 {
                return Err(Error::Domain("W₁ on (−∞, 0]".into()));
            }
            Ok(-hyper_w(1.0 - x)?)
        }
        Kummer::Infinity => {
            if z.im == 0.0 && (0.0..=1.0).contains(&z.re) {
                return Err(Error::Domain("W_∞ on [0, 1]".into()));
            }
            Ok(hyper_w(x.recip())? / x)
        }
    }
}

/// Residual of the inhomogeneous ODE, with `W'` from a central difference of step `h`.
pub fn ode_residual(which: Kummer, x: f64, h: f64) -> Result<f64> {
    let f = |t: f64| kummer_solution(which, CNum::real(t)).map(|w| w.c());
    let d = (f(x + h)? - f(x - h)?) / (2.0 * h);
    let w = f(x)?;
    Ok((3.0 * x * (1.0 - x) * d + (1.0 - 2.0 * x) * w - 1.0).norm())
}

/// Residual of Pfaff's transformation `W(x) = W(x/(x − 1)) / (1 − x)`, left side by quadrature.
pub fn pfaff_residual(x: f64) -> Result<f64> {
    let lhs = hyper_w_by(CNum::real(x), WRoute::Quadrature)?;
    let rhs = hyper_w(CNum::real(x / (x - 1.0)))? / (1.0 - x);
    Ok(lhs.dist(rhs))
}

/// Residuals of the inversion `x ↦ 1/x` acting on the Kummer solutions:
/// it exchanges `W₀` and `W_∞` and fixes `W₁`.
pub fn s3_inversion_residuals(x: f64) -> Result<(f64, f64)> {
    let xc = CNum::real(x);
    let inv = CNum::real(1.0 / x);
    let swap = (kummer_solution(Kummer::Zero, inv)? / xc).dist(kummer_solution(Kummer::Infinity, xc)?);
    let fixed = if x > 0.0 { (kummer_solution(Kummer::One, inv)? / xc).dist(kummer_solution(Kummer::One, xc)?) } else { 0.0 };
    Ok((swap, fixed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(x: f64) -> f64 {
        hyper_w(CNum::real(x)).unwrap().re
    }

    #[test]
    fn normalizations() {
        assert_eq!(hyper_w(CNum::ZERO).unwrap(), CNum::ONE.with_err(hyper_w(CNum::ZERO).unwrap().err));
        assert_eq!(w(0.0), 1.0);
        assert!((kummer_solution(Kummer::One, CNum::ONE).unwrap().re + 1.0).abs() < 1e-15);
        assert!(kummer_solution(Kummer::Infinity, CNum::real(1e6)).unwrap().abs() < 2e-6);
        assert!(matches!(hyper_w(CNum::ONE), Err(Error::Pole(_))));
        assert!(matches!(hyper_w(CNum::real(2.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn routes_agree() {
        for x in [-5.0, -1.0, 0.9, 0.3, -0.2, 0.97, -40.0] {
            let q = hyper_w_by(CNum::real(x), WRoute::Quadrature).unwrap();
            assert!((q.re - w(x)).abs() < 1e-10, "x = {x}: {} vs {}", q.re, w(x));
        }
        for z in [CNum::new(0.5, 0.9), CNum::new(2.0, 0.5), CNum::new(-3.0, -4.0), CNum::new(1.2, -0.1)] {
            let q = hyper_w_by(z, WRoute::Quadrature).unwrap();
            assert!(q.dist(hyper_w(z).unwrap()) < 1e-10, "{z:?}");
        }
    }

    #[test]
    fn pfaff_and_ode() {
        for x in [-3.0, -2.0, -0.5, 0.25] {
            assert!(pfaff_residual(x).unwrap() < 1e-12, "x = {x}");
        }
        assert!(ode_residual(Kummer::Zero, 0.5, 1e-5).unwrap() < 1e-6);
        assert!(ode_residual(Kummer::One, 0.5, 1e-5).unwrap() < 1e-6);
        assert!(ode_residual(Kummer::Infinity, -2.0, 1e-5).unwrap() < 1e-6);
    }

    #[test]
    fn inversion() {
        let (swap, fixed) = s3_inversion_residuals(-3.0).unwrap();
        assert!(swap < 1e-10 && fixed == 0.0);
        let (swap, fixed) = s3_inversion_residuals(3.0).unwrap();
        assert!(swap < 1e-10 && fixed < 1e-10);
    }

    #[test]
    fn approaches_pi_at_one() {
        // W³ x (1 − x) increases to Π as x → 1⁻
        let f = |x: f64| w(x).powi(3) * x * (1.0 - x);
        let pi = super::super::constants::pi_const();
        let (a, b, c) = (f(0.9), f(1.0 - 1e-6), f(1.0 - 1e-12));
        assert!(a < b && b < c && c < pi);
        assert!(pi - c < 1e-3);
    }
}
