//! Complex double with a propagated absolute error estimate.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const EPS: f64 = f64::EPSILON;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CNum {
    pub re: f64,
    pub im: f64,
    /// Estimated absolute error of the value.
    pub err: f64,
}

impl CNum {
    pub const ZERO: CNum = CNum { re: 0.0, im: 0.0, err: 0.0 };
    pub const ONE: CNum = CNum { re: 1.0, im: 0.0, err: 0.0 };
    pub const I: CNum = CNum { re: 0.0, im: 1.0, err: 0.0 };
    /// The point at infinity of the Riemann sphere.
    pub const INFINITY: CNum = CNum { re: f64::INFINITY, im: 0.0, err: 0.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        CNum { re, im, err: 0.0 }
    }

    pub const fn real(re: f64) -> Self {
        CNum { re, im: 0.0, err: 0.0 }
    }

    pub fn from_c(z: Complex64, err: f64) -> Self {
        CNum { re: z.re, im: z.im, err }
    }

    pub fn c(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn with_err(self, err: f64) -> Self {
        CNum { err, ..self }
    }

    pub fn abs(self) -> f64 {
        self.c().norm()
    }

    pub fn arg(self) -> f64 {
        self.c().arg()
    }

    pub fn dist(self, other: CNum) -> f64 {
        (self.c() - other.c()).norm()
    }

    pub fn is_infinite(self) -> bool {
        self.re.is_infinite() || self.im.is_infinite()
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_nan(self) -> bool {
        self.re.is_nan() || self.im.is_nan()
    }

    pub fn conj(self) -> Self {
        CNum { im: -self.im, ..self }
    }

    /// `e^(iθ)`.
    pub fn cis(theta: f64) -> Self {
        CNum::new(theta.cos(), theta.sin())
    }

    fn unary(self, f: Complex64, df: Complex64) -> Self {
        CNum::from_c(f, df.norm() * self.err + EPS * f.norm())
    }

    pub fn recip(self) -> Self {
        if self.is_infinite() {
            return CNum::ZERO;
        }
        let z = self.c();
        if z.norm() == 0.0 {
            return CNum::INFINITY;
        }
        let f = z.inv();
        self.unary(f, f * f)
    }

    pub fn exp(self) -> Self {
        let f = self.c().exp();
        self.unary(f, f)
    }

    /// Principal logarithm.
    pub fn ln(self) -> Self {
        let z = self.c();
        self.unary(z.ln(), z.inv())
    }

    /// Principal square root.
    pub fn sqrt(self) -> Self {
        let f = self.c().sqrt();
        self.unary(f, (2.0 * f).inv())
    }

    /// Principal cube root, `arg ∈ (−π/3, π/3]`.
    pub fn cbrt(self) -> Self {
        let z = self.c();
        if z.norm() == 0.0 {
            return CNum::ZERO.with_err(self.err.cbrt());
        }
        let f = Complex64::from_polar(z.norm().cbrt(), z.arg() / 3.0);
        self.unary(f, (3.0 * f * f).inv())
    }

    /// Principal power `z^p`.
    pub fn powf(self, p: f64) -> Self {
        let z = self.c();
        if z.norm() == 0.0 {
            return CNum::ZERO;
        }
        let f = Complex64::from_polar(z.norm().powf(p), z.arg() * p);
        self.unary(f, p * f / z)
    }

    pub fn powi(self, k: i32) -> Self {
        let z = self.c();
        let f = z.powi(k);
        let df = if k == 0 { Complex64::new(0.0, 0.0) } else { k as f64 * z.powi(k - 1) };
        self.unary(f, df)
    }

    pub fn sin(self) -> Self {
        let z = self.c();
        self.unary(z.sin(), z.cos())
    }

    pub fn cos(self) -> Self {
        let z = self.c();
        self.unary(z.cos(), -z.sin())
    }

    pub fn tan(self) -> Self {
        let z = self.c();
        let t = z.tan();
        self.unary(t, 1.0 + t * t)
    }
}

impl From<f64> for CNum {
    fn from(x: f64) -> Self {
        CNum::real(x)
    }
}

impl From<Complex64> for CNum {
    fn from(z: Complex64) -> Self {
        CNum::from_c(z, 0.0)
    }
}

impl fmt::Display for CNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            return write!(f, "inf");
        }
        let sign = if self.im < 0.0 { '-' } else { '+' };
        write!(f, "{} {} {}i", fmt_sig(self.re, 12), sign, fmt_sig(self.im.abs(), 12))
    }
}

/// Formats with `digits` significant digits, switching to exponent form for extreme magnitudes.
pub fn fmt_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    if (-5..15).contains(&mag) {
        let decimals = (digits as i32 - 1 - mag).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{:.*e}", digits - 1, v)
    }
}

impl Add for CNum {
    type Output = CNum;
    fn add(self, o: CNum) -> CNum {
        let z = self.c() + o.c();
        CNum::from_c(z, self.err + o.err + EPS * z.norm())
    }
}

impl Sub for CNum {
    type Output = CNum;
    fn sub(self, o: CNum) -> CNum {
        let z = self.c() - o.c();
        CNum::from_c(z, self.err + o.err + EPS * z.norm())
    }
}

impl Mul for CNum {
    type Output = CNum;
    fn mul(self, o: CNum) -> CNum {
        let z = self.c() * o.c();
        CNum::from_c(z, self.abs() * o.err + o.abs() * self.err + self.err * o.err + EPS * z.norm())
    }
}

impl Div for CNum {
    type Output = CNum;
    fn div(self, o: CNum) -> CNum {
        if o.is_infinite() && self.is_finite() {
            return CNum::ZERO;
        }
        let d = o.abs();
        if d == 0.0 {
            return CNum::INFINITY;
        }
        let z = self.c() / o.c();
        CNum::from_c(z, (self.err + z.norm() * o.err) / d + EPS * z.norm())
    }
}

impl Neg for CNum {
    type Output = CNum;
    fn neg(self) -> CNum {
        CNum { re: -self.re, im: -self.im, err: self.err }
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<f64> for CNum {
            type Output = CNum;
            fn $m(self, o: f64) -> CNum {
                self.$m(CNum::real(o))
            }
        }
        impl $tr<CNum> for f64 {
            type Output = CNum;
            fn $m(self, o: CNum) -> CNum {
                CNum::real(self).$m(o)
            }
        }
    )*};
}

scalar_ops!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_cube_root() {
        let r = CNum::real(-8.0).cbrt();
        assert!((r.c() - Complex64::from_polar(2.0, std::f64::consts::PI / 3.0)).norm() < 1e-15);
        assert!((CNum::real(27.0).cbrt().re - 3.0).abs() < 1e-15);
    }

    #[test]
    fn error_grows_through_arithmetic() {
        let a = CNum::new(1.0, 2.0).with_err(1e-10);
        let b = CNum::new(3.0, -1.0).with_err(2e-10);
        assert!((a * b).err >= 1e-10 * b.abs());
        assert!((a + b).err >= 3e-10);
    }

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(5.299916250856349, 12), "5.29991625086");
        assert_eq!(fmt_sig(-0.00123456789012345, 12), "-0.00123456789012");
    }
}
