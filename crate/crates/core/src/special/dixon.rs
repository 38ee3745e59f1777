//! Dixonian elliptic functions `sm`, `cm` (with `sm³ + cm³ = 1`) and their
//! companions `sp = −sm²/cm`, `cp = cm²/sm`.

use std::f64::consts::PI;
use std::sync::LazyLock;

use num_complex::Complex64;
use num_traits::Zero;

use super::constants::{omega, pi3};
use crate::cnum::CNum;
use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, Rational};

const TAYLOR_DEGREE: usize = 120;
/// Radius within which the Taylor tail is far below double precision.
const TAYLOR_RADIUS: f64 = 1.05;
/// Reduced arguments this close to a pole evaluate to infinity.
pub const POLE_TOLERANCE: f64 = 1e-8;

/// Exact Taylor coefficients of `sm` and `cm` through degree `n`, from `sm' = cm²`, `cm' = −sm²`.
pub fn taylor_coefficients(n: usize) -> (Vec<Rational>, Vec<Rational>) {
    let mut s = vec![Rational::zero(); n + 1];
    let mut c = vec![Rational::zero(); n + 1];
    c[0] = Rational::from_integer(1.into());
    for k in 0..n {
        let mut cc = Rational::zero();
        let mut ss = Rational::zero();
        for j in 0..=k {
            if !c[j].is_zero() && !c[k - j].is_zero() {
                cc += &c[j] * &c[k - j];
            }
            if !s[j].is_zero() && !s[k - j].is_zero() {
                ss += &s[j] * &s[k - j];
            }
        }
        let d = Rational::from_integer(((k + 1) as i64).into());
        s[k + 1] = cc / &d;
        c[k + 1] = -ss / d;
    }
    (s, c)
}

/// Coefficients of `sm(u)/u` and `cm(u)` as power series in `u³`.
static SERIES: LazyLock<(Vec<f64>, Vec<f64>)> = LazyLock::new(|| {
    let (s, c) = taylor_coefficients(TAYLOR_DEGREE + 1);
    let a = (0..=TAYLOR_DEGREE / 3).map(|k| rational_to_f64(&s[3 * k + 1])).collect();
    let b = (0..=TAYLOR_DEGREE / 3).map(|k| rational_to_f64(&c[3 * k])).collect();
    (a, b)
});

fn horner(coeffs: &[f64], w: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * w + c)
}

fn taylor(u: Complex64) -> (Complex64, Complex64) {
    let w = u * u * u;
    (u * horner(&SERIES.0, w), horner(&SERIES.1, w))
}

/// `sm(u)/u` and `cm(u)` as functions of `w = u³`, valid for `|w| ≤ TAYLOR_RADIUS³`.
pub(crate) fn taylor_ratio_cubed(w: Complex64) -> (Complex64, Complex64) {
    (horner(&SERIES.0, w), horner(&SERIES.1, w))
}

pub(crate) const TAYLOR_RADIUS_CUBED: f64 = TAYLOR_RADIUS * TAYLOR_RADIUS * TAYLOR_RADIUS;

struct Lattice {
    p: f64,
    w: Complex64,
    poles: [Complex64; 3],
}

static LATTICE: LazyLock<Lattice> = LazyLock::new(|| {
    let p = pi3();
    let w = omega().c();
    Lattice { p, w, poles: [Complex64::new(2.0 * p / 3.0, 0.0), (1.0 + w) * p / 3.0, w * 2.0 * p / 3.0] }
});

/// `u` minus the nearest point of the period lattice `Z π₃ ⊕ Z π₃ ω`.
pub fn reduce_to_lattice(u: Complex64) -> Complex64 {
    let l = &*LATTICE;
    let t = 2.0 * u.im / (l.p * 3f64.sqrt());
    let s = u.re / l.p + t / 2.0;
    let (m, n) = (s.floor(), t.floor());
    let mut best = u;
    let mut best_norm = f64::INFINITY;
    for (i, j) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)] {
        let r = u - ((m + i) + (n + j) * l.w) * l.p;
        if r.norm() < best_norm {
            best = r;
            best_norm = r.norm();
        }
    }
    best
}

/// Distance from `u` to the nearest pole of `sm` and `cm`.
pub fn pole_distance(u: Complex64) -> f64 {
    let v = reduce_to_lattice(u);
    LATTICE.poles.iter().map(|&p| reduce_to_lattice(v - p).norm()).fold(f64::INFINITY, f64::min)
}

/// Evaluates at a lattice-reduced argument, returning values and the number of doublings used.
fn eval_reduced(v: Complex64) -> (Complex64, Complex64, u32) {
    if v.norm() <= TAYLOR_RADIUS {
        let (s, c) = taylor(v);
        return (s, c, 0);
    }
    let l = &*LATTICE;
    // sm(ωu) = ω sm(u), cm(ωu) = cm(u): rotate into |arg| ≤ π/3
    let j = ((v.arg() / (2.0 * PI / 3.0)).round() as i32).rem_euclid(3);
    let rot = l.w.powi(j);
    let v1 = v / rot;
    // real Taylor coefficients: sm(ū) = conj(sm(u))
    let flip = v1.im < 0.0;
    let v2 = if flip { v1.conj() } else { v1 };
    let a = Complex64::new(l.p / 3.0, 0.0);
    let (s2, c2, d) = if (a - v2).norm() <= TAYLOR_RADIUS {
        // sm(π₃/3 − u) = cm(u), cm(π₃/3 − u) = sm(u)
        let (s, c) = taylor(a - v2);
        (c, s, 0)
    } else {
        let (s, c, d) = eval_reduced(v2 / 2.0);
        let s3 = s * s * s;
        let den = 1.0 - s3 * s3;
        (s * c * c * (2.0 - s3) / den, c * c * (1.0 - 2.0 * s3) / den, d + 1)
    };
    let (s1, c1) = if flip { (s2.conj(), c2.conj()) } else { (s2, c2) };
    (s1 * rot, c1, d)
}

/// `(sm u, cm u)`; both are [`CNum::INFINITY`] within [`POLE_TOLERANCE`] of a pole.
pub fn sm_cm(u: CNum) -> (CNum, CNum) {
    if !u.is_finite() {
        return (CNum::INFINITY, CNum::INFINITY);
    }
    let v = reduce_to_lattice(u.c());
    if LATTICE.poles.iter().any(|&p| reduce_to_lattice(v - p).norm() < POLE_TOLERANCE) {
        return (CNum::INFINITY, CNum::INFINITY);
    }
    let (s, c, doublings) = eval_reduced(v);
    let scale = s.norm() + c.norm() + 1.0;
    let rounding = 8.0 * f64::EPSILON * scale * (1.0 + 4.0 * doublings as f64) * (1.0 + u.abs() / pi3());
    // sm' = cm², cm' = −sm²
    let err_s = rounding + c.norm_sqr() * u.err;
    let err_c = rounding + s.norm_sqr() * u.err;
    (CNum::from_c(s, err_s), CNum::from_c(c, err_c))
}

pub fn sm(u: CNum) -> CNum {
    sm_cm(u).0
}

pub fn cm(u: CNum) -> CNum {
    sm_cm(u).1
}

/// `(sp u, cp u) = (−sm²/cm, cm²/sm)`.
pub fn sp_cp(u: CNum) -> (CNum, CNum) {
    let (s, c) = sm_cm(u);
    if s.is_infinite() {
        return (CNum::INFINITY, CNum::INFINITY);
    }
    (-(s * s) / c, (c * c) / s)
}

pub fn sp(u: CNum) -> CNum {
    sp_cp(u).0
}

pub fn cp(u: CNum) -> CNum {
    sp_cp(u).1
}

/// Right-hand sides of the `sm`/`cm` addition theorem.
pub fn sm_cm_add_formula(s1: CNum, c1: CNum, s2: CNum, c2: CNum) -> Result<(CNum, CNum)> {
    let den = 1.0 - s1.powi(3) * s2.powi(3);
    if den.abs() < 1e-12 {
        return Err(Error::Degenerate("1 − sm(u)³ sm(v)³ vanishes".into()));
    }
    let ns = s1 * c2 * c2 + s2 * c1 * c1 - s1 * s1 * s2 * s2 * c1 * c2;
    let nc = c1 * c2 - s1 * s2 * (s1 * c2 * c2 + s2 * c1 * c1);
    Ok((ns / den, nc / den))
}

/// Right-hand sides of the `sp`/`cp` addition theorem.
pub fn sp_cp_add_formula(s1: CNum, c1: CNum, s2: CNum, c2: CNum) -> Result<(CNum, CNum)> {
    let ss = s1 * s2;
    let cc = c1 * c2;
    let d1 = 1.0 - ss * ss * cc;
    let d_sp = ss * c1 + ss * c2 - 1.0;
    let d_cp = c1 + c2 - ss * cc;
    if d1.abs() < 1e-12 || d_sp.abs() < 1e-12 || d_cp.abs() < 1e-12 {
        return Err(Error::Degenerate("sp/cp addition denominator vanishes".into()));
    }
    let a = c1 + c2 - ss * cc;
    let b = 1.0 - ss * c1 - ss * c2;
    Ok((a * a * ss / (d1 * d_sp), b * b * cc / (d1 * d_cp)))
}

/// Residuals `|sm(u+v) − …|, |cm(u+v) − …|, |sp(u+v) − …|, |cp(u+v) − …|`.
pub fn addition_residuals(u: CNum, v: CNum) -> Result<[f64; 4]> {
    let (s1, c1) = sm_cm(u);
    let (s2, c2) = sm_cm(v);
    let (s, c) = sm_cm(u + v);
    let (fs, fc) = sm_cm_add_formula(s1, c1, s2, c2)?;
    let (p1, q1) = sp_cp(u);
    let (p2, q2) = sp_cp(v);
    let (p, q) = sp_cp(u + v);
    let (fp, fq) = sp_cp_add_formula(p1, q1, p2, q2)?;
    Ok([s.dist(fs), c.dist(fc), p.dist(fp), q.dist(fq)])
}

fn real_cbrt(x: f64) -> f64 {
    x.cbrt()
}

/// Residuals of `cm(ρ) = (1 − x)^(−1/3)` and `sm(ρ) = (−x)^(1/3) / (1 − x)^(1/3)` with
/// `ρ = x^(1/3) (x − 1)^(1/3) W(x)` for real `x < 1`.
///
/// Real cube roots are used throughout, which keeps both sides continuous through `x = 0`.
pub fn dixon_hyper_relation(x: f64) -> Result<(f64, f64)> {
    if !(x < 1.0) {
        return Err(Error::Domain("the sm/cm–W relation (x < 1)".into()));
    }
    let w = super::hyper::hyper_w(CNum::real(x))?;
    let rho = CNum::real(real_cbrt(x * (x - 1.0))) * w;
    let (s, c) = sm_cm(rho);
    let root = (1.0 - x).cbrt();
    let rc = CNum::real(1.0 / root);
    let rs = CNum::real(real_cbrt(-x) / root);
    Ok((c.dist(rc), s.dist(rs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn close(a: CNum, b: CNum, tol: f64) -> bool {
        a.dist(b) < tol
    }

    /// `q_(a,b) = a π₃/3 + b π₃ ω/3`.
    fn q(a: f64, b: f64) -> CNum {
        let p = pi3();
        CNum::real(a * p / 3.0) + omega() * (b * p / 3.0)
    }

    #[test]
    fn printed_taylor_coefficients() {
        let (s, c) = taylor_coefficients(13);
        let f = |k: i64| (1..=k).product::<i64>();
        assert_eq!(s[1], rat(1, 1));
        assert_eq!(s[4], rat(-4, f(4)));
        assert_eq!(s[7], rat(160, f(7)));
        assert_eq!(s[10], rat(-20800, f(10)));
        // printed as 647680, one digit short of the recurrence value
        assert_eq!(s[13], rat(6476800, f(13)));
        assert_eq!(c[3], rat(-2, f(3)));
        assert_eq!(c[6], rat(40, f(6)));
        assert_eq!(c[9], rat(-3680, f(9)));
        assert_eq!(c[12], rat(880000, f(12)));
    }

    #[test]
    fn special_points() {
        let one = CNum::ONE;
        let w = omega();
        assert!(sm(q(0.0, 0.0)).abs() < 1e-12);
        assert!(sm(q(2.0, 1.0)).abs() < 1e-12);
        assert!(sm(q(1.0, 2.0)).abs() < 1e-12);
        assert!(close(sm(q(1.0, 0.0)), one, 1e-12));
        assert!(close(sm(q(0.0, 1.0)), w, 1e-12));
        assert!(close(sm(q(2.0, 2.0)), w * w, 1e-12));
        assert!(cm(q(1.0, 0.0)).abs() < 1e-12);
        assert!(cm(q(0.0, 1.0)).abs() < 1e-12);
        assert!(cm(q(2.0, 2.0)).abs() < 1e-12);
        for (a, b) in [(2.0, 0.0), (1.0, 1.0), (0.0, 2.0)] {
            assert!(sm(q(a, b)).is_infinite());
            assert!(cm(q(a, b)).is_infinite());
        }
        assert!(!sm(q(2.0, 0.0) + CNum::real(1e-6)).is_infinite());
    }

    #[test]
    fn symmetries() {
        let w = omega();
        for u in [CNum::new(0.3, 0.2), CNum::new(-1.1, 0.7), CNum::new(2.4, -1.9), CNum::new(0.1, 3.3)] {
            let (s, c) = sm_cm(u);
            let (sn, cn) = sm_cm(-u);
            assert!(close(sn, -s / c, 1e-11));
            assert!(close(cn, c.recip(), 1e-11));
            let (sw, cw) = sm_cm(w * u);
            assert!(close(sw, w * s, 1e-11));
            assert!(close(cw, c, 1e-11));
            let shift = CNum::real(pi3() / 3.0) - u;
            assert!(close(sm(shift), c, 1e-11));
            assert!(close(s.powi(3) + c.powi(3), CNum::ONE, 1e-11));
        }
    }

    #[test]
    fn companions() {
        for u in [CNum::new(0.4, 0.1), CNum::new(-0.8, 1.2)] {
            let (p, q) = sp_cp(u);
            assert!(close(p * q * (p - q), CNum::ONE, 1e-11));
            assert!(close(sp(-u), p, 1e-11));
            assert!(close(cp(-u), (p * q).recip(), 1e-11));
            assert!(close(sp(omega() * u), omega() * omega() * p, 1e-11));
            assert!(close(cp(CNum::real(pi3() / 3.0) - u), -p, 1e-11));
        }
    }

    #[test]
    fn addition_theorems() {
        let r = addition_residuals(CNum::new(0.3, 0.1), CNum::new(-0.7, 0.4)).unwrap();
        assert!(r.iter().all(|&e| e < 1e-11), "{r:?}");
    }

    #[test]
    fn hypergeometric_parametrization() {
        for x in [-1.0, 0.5, -7.0, 0.9] {
            let (rc, rs) = dixon_hyper_relation(x).unwrap();
            assert!(rc < 1e-9 && rs < 1e-9, "x = {x}: {rc:e} {rs:e}");
        }
        let (rc, rs) = dixon_hyper_relation(0.0).unwrap();
        assert!(rc < 1e-15 && rs < 1e-15);
        assert!(dixon_hyper_relation(1.0).is_err());
    }
}
