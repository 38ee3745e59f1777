//! Closed-form evaluators for the canonical flows, the elliptic flow `λ` and its avatars.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cnum::CNum;
use crate::error::{Error, Result};
use crate::exact::{parse_ratfn, RationalFn};
use crate::expressions::{LAMBDA_COMPILED, R_COMPILED, T_COMPILED};
use crate::series::{VectorField2, XY};
use crate::special::{taylor_ratio_cubed, TAYLOR_RADIUS_CUBED};
use crate::special::{hyper_w, omega, sm_cm};

/// Below this `|xy(x − y)|` the removable-singularity limits are used.
pub const LIMIT_RADIUS: f64 = 1e-20;
/// Between [`LIMIT_RADIUS`] and this value both paths are evaluated in debug builds.
pub const CROSSCHECK_RADIUS: f64 = 1e-10;
/// Tangent poles and vanishing printed denominators closer than this are singular.
pub const POLE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlowKind {
    Identity,
    PhiN(u32),
    Exp,
    Tan,
    Log,
    E,
    T,
    Lambda,
}

impl FlowKind {
    /// The kinds with a closed form, with `φ_N` for `N = 0..=max_n`.
    pub fn catalogue(max_n: u32) -> Vec<FlowKind> {
        let mut v = vec![FlowKind::Identity];
        v.extend((0..=max_n).map(FlowKind::PhiN));
        v.extend([FlowKind::Exp, FlowKind::Tan, FlowKind::Log, FlowKind::E, FlowKind::T, FlowKind::Lambda]);
        v
    }

    /// Generating vector field `(ϖ, ϱ)`.
    pub fn vector_field(self) -> VectorField2 {
        let (w, r) = match self {
            FlowKind::Identity => ("0".to_string(), "0".to_string()),
            FlowKind::PhiN(n) => (format!("{}*x*y", n as i64 - 1), "-y^2".to_string()),
            FlowKind::Exp => ("x*y".into(), "0".into()),
            FlowKind::Tan => ("x^2 + y^2".into(), "0".into()),
            FlowKind::Log => ("-x^2 - x*y".into(), "-y^2".into()),
            FlowKind::E => ("(x^2 - y^2)/2".into(), "(y^2 - x^2)/2".into()),
            FlowKind::T => ("x^2 + y^2".into(), "x^2 + y^2".into()),
            FlowKind::Lambda => ("x^2 - 2*x*y".into(), "y^2 - 2*x*y".into()),
        };
        VectorField2::parse(&w, &r).expect("static vector field")
    }

    /// A non-constant rational function constant along orbits, when one exists.
    pub fn orbit_invariant(self) -> Option<RationalFn> {
        let src = match self {
            FlowKind::Identity => "x".to_string(),
            FlowKind::PhiN(0) => "x/y".to_string(),
            FlowKind::PhiN(n) => format!("x*y^{}", n - 1),
            FlowKind::Exp | FlowKind::Tan => "y".into(),
            FlowKind::E => "x + y".into(),
            FlowKind::T => "x - y".into(),
            FlowKind::Lambda => "x*y*(x - y)".into(),
            FlowKind::Log => return None,
        };
        Some(parse_ratfn(&src, &XY).expect("static invariant"))
    }

    /// Whether the flow is single-valued on its whole domain (no branching).
    pub fn is_unramified(self) -> bool {
        !matches!(self, FlowKind::Log)
    }
}

impl fmt::Display for FlowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowKind::Identity => write!(f, "identity"),
            FlowKind::PhiN(n) => write!(f, "phi{n}"),
            FlowKind::Exp => write!(f, "exp"),
            FlowKind::Tan => write!(f, "tan"),
            FlowKind::Log => write!(f, "log"),
            FlowKind::E => write!(f, "e"),
            FlowKind::T => write!(f, "t"),
            FlowKind::Lambda => write!(f, "Lambda"),
        }
    }
}

impl FromStr for FlowKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        let kind = match lower.as_str() {
            "identity" | "id" => FlowKind::Identity,
            "exp" => FlowKind::Exp,
            "tan" => FlowKind::Tan,
            "log" => FlowKind::Log,
            "e" => FlowKind::E,
            "t" => FlowKind::T,
            "lambda" | "λ" => FlowKind::Lambda,
            _ => {
                let n = lower
                    .strip_prefix("phi")
                    .map(|r| r.trim_start_matches(['_', ':', '(']).trim_end_matches(')'))
                    .ok_or_else(|| Error::Parse(format!("unknown flow kind `{t}`")))?;
                FlowKind::PhiN(n.parse().map_err(|_| Error::Parse(format!("bad N in `{t}`")))?)
            }
        };
        Ok(kind)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlowValue {
    pub u: CNum,
    pub v: CNum,
    pub defined: bool,
}

impl FlowValue {
    pub const UNDEFINED: FlowValue = FlowValue { u: CNum::INFINITY, v: CNum::INFINITY, defined: false };

    pub fn new(u: CNum, v: CNum) -> Self {
        FlowValue { u, v, defined: u.is_finite() && v.is_finite() }
    }

    fn from_c(u: Complex64, v: Complex64) -> Self {
        let scale = 8.0 * f64::EPSILON;
        Self::new(CNum::from_c(u, scale * u.norm()), CNum::from_c(v, scale * v.norm()))
    }

    pub fn pair(self) -> (Complex64, Complex64) {
        (self.u.c(), self.v.c())
    }

    /// Largest error estimate of the two coordinates.
    pub fn err(self) -> f64 {
        self.u.err.max(self.v.err)
    }
}

fn tiny(z: Complex64) -> bool {
    z.norm() < POLE_TOLERANCE
}

/// `tan(s)/s`, or `None` at a tangent pole.
fn tan_ratio(s: Complex64) -> Option<Complex64> {
    if tiny(s.cos()) {
        return None;
    }
    if s.norm() < 1e-4 {
        let s2 = s * s;
        return Some(1.0 + s2 / 3.0 + s2 * s2 * (2.0 / 15.0));
    }
    Some(s.tan() / s)
}

/// `log(1 + y)/y` on the principal branch.
fn log_ratio(y: Complex64) -> Complex64 {
    if y.norm() < 1e-4 {
        return 1.0 - y / 2.0 + y * y / 3.0 - y * y * y / 4.0;
    }
    (1.0 + y).ln() / y
}

/// `φ(x, y)` for every kind with a closed form; `defined = false` on the singular set.
pub fn classical_flow_eval(kind: FlowKind, x: CNum, y: CNum) -> FlowValue {
    if !(x.is_finite() && y.is_finite()) {
        return FlowValue::UNDEFINED;
    }
    let (xc, yc) = (x.c(), y.c());
    match kind {
        FlowKind::Identity => FlowValue::new(x, y),
        FlowKind::PhiN(n) => {
            let d = yc + 1.0;
            if tiny(d) {
                return FlowValue::UNDEFINED;
            }
            FlowValue::from_c(xc * d.powi(n as i32 - 1), yc / d)
        }
        FlowKind::Exp => FlowValue::from_c(xc * yc.exp(), yc),
        FlowKind::Tan => {
            let Some(g) = tan_ratio(yc) else { return FlowValue::UNDEFINED };
            let d = 1.0 - xc * g;
            if tiny(d) {
                return FlowValue::UNDEFINED;
            }
            FlowValue::from_c((xc + yc * yc * g) / d, yc)
        }
        FlowKind::Log => {
            let d = yc + 1.0;
            if tiny(d) || (d.im == 0.0 && d.re < 0.0) {
                return FlowValue::UNDEFINED;
            }
            let den = d * (1.0 + xc * log_ratio(yc));
            if tiny(den) {
                return FlowValue::UNDEFINED;
            }
            FlowValue::from_c(xc / den, yc / d)
        }
        FlowKind::E => {
            let s = xc + yc;
            let g = s.exp();
            FlowValue::from_c(0.5 * ((xc - yc) * g + s), 0.5 * ((yc - xc) * g + s))
        }
        FlowKind::T => {
            let (s, d) = (xc + yc, xc - yc);
            let Some(g) = tan_ratio(d) else { return FlowValue::UNDEFINED };
            let den = 1.0 - s * g;
            if tiny(den) {
                return FlowValue::UNDEFINED;
            }
            FlowValue::from_c((xc - yc * d * g) / den, (yc + xc * d * g) / den)
        }
        FlowKind::Lambda => FlowValue::new(lambda_eval(x, y), lambda_eval(y, x)),
    }
}

/// The inverse flow `−φ(−x, −y)`.
pub fn flow_inverse(kind: FlowKind, x: CNum, y: CNum) -> FlowValue {
    let f = classical_flow_eval(kind, -x, -y);
    FlowValue { u: -f.u, v: -f.v, defined: f.defined }
}

/// `(sm(ς)/ς, cm(ς))` for `ς³ = c`, independent of the cube root chosen.
fn lambda_coefficients(c: Complex64) -> Option<(CNum, CNum)> {
    if c.norm() <= TAYLOR_RADIUS_CUBED {
        let (a, b) = taylor_ratio_cubed(c);
        let e = 16.0 * f64::EPSILON;
        return Some((CNum::from_c(a, e * a.norm()), CNum::from_c(b, e * b.norm())));
    }
    let s = CNum::from_c(c, 0.0).cbrt();
    let (sm, cm) = sm_cm(s);
    if sm.is_infinite() {
        return None;
    }
    Some((sm / s, cm))
}

/// The regular form at `A = B = 1`, i.e. `λ` on the curve `xy(x − y) = 0`. It reduces to
/// `0`, `x/(1 − x)` and `x/(1 + x)` on the lines `x = 0`, `y = 0` and `x = y`, and differs from
/// `λ` by `O(xy(x − y))` nearby.
fn lambda_limit(x: Complex64, y: Complex64) -> Complex64 {
    let p = 1.0 - y + x * y;
    x * p * p / ((1.0 + x * y * y) * (1.0 - x + x * y))
}

fn lambda_generic(x: Complex64, y: Complex64, c: Complex64) -> CNum {
    let Some((a, b)) = lambda_coefficients(c) else {
        // at a pole of sm the formula tends to y − x
        return CNum::from_c(y - x, 4.0 * f64::EPSILON * (y - x).norm());
    };
    match LAMBDA_COMPILED.eval_checked(&[a.c(), b.c(), x, y]) {
        Some((v, err)) if v.is_finite() => {
            let prop = v.norm() * (a.err / a.abs().max(1.0) + b.err / b.abs().max(1.0)) * 4.0;
            CNum::from_c(v, err + prop)
        }
        _ => CNum::INFINITY,
    }
}

/// The elliptic flow `λ(x, y)`; [`CNum::INFINITY`] at its poles.
pub fn lambda_eval(x: CNum, y: CNum) -> CNum {
    if !(x.is_finite() && y.is_finite()) {
        return CNum::INFINITY;
    }
    let (xc, yc) = (x.c(), y.c());
    let c = xc * yc * (xc - yc);
    let v = if c.norm() < LIMIT_RADIUS {
        let l = lambda_limit(xc, yc);
        if !l.is_finite() {
            return CNum::INFINITY;
        }
        CNum::from_c(l, 16.0 * f64::EPSILON * (1.0 + l.norm()) + c.norm() * (1.0 + l.norm()).powi(3))
    } else {
        let v = lambda_generic(xc, yc, c);
        if c.norm() < CROSSCHECK_RADIUS && v.is_finite() {
            let l = lambda_limit(xc, yc);
            debug_assert!(
                (v.c() - l).norm() <= 1e-6 * (1.0 + l.norm()).powi(3) * (1.0 + xc.norm() + yc.norm()).powi(3),
                "λ near its removable set: {v:?} vs limit {l}"
            );
        }
        v
    };
    // propagate the input errors through a unit-size Lipschitz bound near the origin
    v.with_err(v.err + (x.err + y.err) * (1.0 + v.abs()).powi(2))
}

/// `(λ(x, y), λ(y, x))`.
pub fn lambda_pair(x: CNum, y: CNum) -> (CNum, CNum) {
    (lambda_eval(x, y), lambda_eval(y, x))
}

/// `λ` from its printed expression in `ς, sm(ς), cm(ς)` with the cube root `ω^branch · ∛c`.
/// Only valid off `xy(x − y) = 0`; used to confirm the branch independence.
pub fn lambda_printed(x: CNum, y: CNum, branch: u32) -> Result<CNum> {
    let c = x * y * (x - y);
    if c.abs() < LIMIT_RADIUS {
        return Err(Error::Degenerate("xy(x − y) = 0".into()));
    }
    let s = c.cbrt() * omega().powi(branch as i32);
    let (sn, cn) = sm_cm(s);
    if sn.is_infinite() {
        return Err(Error::Pole("sm(ς)".into()));
    }
    let s2 = s * s;
    let num = s * (cn * s2 - sn * cn * cn * y * s + sn * sn * x * y).powi(2);
    let den = y * (x - cn.powi(3) * y) * (cn * cn * s2 - sn * x * s + sn * sn * cn * x * y);
    if den.abs() < POLE_TOLERANCE {
        return Err(Error::Pole("λ".into()));
    }
    Ok(num / den)
}

fn avatar(which: &crate::exact::CompiledRatFn, a: CNum, b: CNum, x: CNum, y: CNum) -> CNum {
    match which.eval_checked(&[a.c(), b.c(), x.c(), y.c()]) {
        Some((v, err)) if v.is_finite() => CNum::from_c(v, err),
        _ => CNum::INFINITY,
    }
}

/// The avatar `ℛ(A, B; x, y)`; [`CNum::INFINITY`] where its denominator vanishes.
pub fn r_eval(a: CNum, b: CNum, x: CNum, y: CNum) -> CNum {
    avatar(&R_COMPILED, a, b, x, y)
}

/// The avatar `𝒯(A, B; x, y)`.
pub fn t_eval(a: CNum, b: CNum, x: CNum, y: CNum) -> Result<CNum> {
    if a.abs() == 0.0 {
        return Err(Error::Pole("𝒯 at A = 0".into()));
    }
    Ok(avatar(&T_COMPILED, a, b, x, y))
}

/// The algebraic function `ℰ(x, y) = 𝒯(1, B; x, y)` with `B = ½ + ½√(1 − 4xy(x − y))`.
///
/// Since `B(1 − B) = xy(x − y)`, the factor `B(x − y) − x = −y(B + x²(x − y)/B)` cancels the
/// factor `y` of the numerator, which removes the `0/0` along `y = 0`.
pub fn e_eval(x: CNum, y: CNum) -> Result<CNum> {
    let d = x - y;
    let disc = 1.0 - 4.0 * x * y * d;
    if disc.abs() < POLE_TOLERANCE {
        return Err(Error::Domain("branch point of ℰ".into()));
    }
    let b = 0.5 + 0.5 * disc.sqrt();
    let xd = x * d;
    let num = (xd + b - x).powi(2) * d;
    let den = -(b + x * xd / b) * (b + xd - b * d);
    if den.abs() < POLE_TOLERANCE {
        return Ok(CNum::INFINITY);
    }
    Ok(num / den)
}

/// Residual of `[ℰ_x ϖ + ℰ_y ϱ] / [ℰ − xℰ_x − yℰ_y] = √(1 − 4xy(x − y))` with central differences of step `h`.
pub fn e_pde_residual(x: f64, y: f64, h: f64) -> Result<f64> {
    let e = |a: f64, b: f64| e_eval(CNum::real(a), CNum::real(b)).map(|v| v.c());
    let ex = (e(x + h, y)? - e(x - h, y)?) / (2.0 * h);
    let ey = (e(x, y + h)? - e(x, y - h)?) / (2.0 * h);
    let v = e(x, y)?;
    let lhs = (ex * (x * x - 2.0 * x * y) + ey * (y * y - 2.0 * x * y)) / (v - x * ex - y * ey);
    Ok((lhs - (1.0 - 4.0 * x * y * (x - y)).sqrt()).norm())
}

/// `ℓ(x, y) = (x(x + y)/y, x + y)`, the linear-fractional map conjugating `φ^exp` to `φ^e`'s relative.
pub fn ell(x: CNum, y: CNum) -> Result<(CNum, CNum)> {
    if y.abs() < POLE_TOLERANCE {
        return Err(Error::Pole("ℓ at y = 0".into()));
    }
    let s = x + y;
    Ok((x * s / y, s))
}

pub fn ell_inverse(x: CNum, y: CNum) -> Result<(CNum, CNum)> {
    let s = x + y;
    if s.abs() < POLE_TOLERANCE {
        return Err(Error::Pole("ℓ⁻¹ at x + y = 0".into()));
    }
    Ok((x * y / s, y * y / s))
}

/// Distance between `ℓ⁻¹ ∘ φ^exp ∘ ℓ` and its printed closed form.
pub fn ell_conjugation_check(x: CNum, y: CNum) -> Result<f64> {
    let (lx, ly) = ell(x, y)?;
    let f = classical_flow_eval(FlowKind::Exp, lx, ly);
    let (u, v) = ell_inverse(f.u, f.v)?;
    let s = x + y;
    let g = s.exp();
    let den = x * g + y;
    if den.abs() < POLE_TOLERANCE {
        return Err(Error::Pole("closed form denominator".into()));
    }
    let pu = x * s * g / den;
    let pv = y * s / den;
    Ok(u.dist(pu).max(v.dist(pv)))
}

/// `|λ(xW(x), W(x))|`, zero on the curve where `λ` vanishes.
pub fn c0_vanishing(x: f64) -> Result<f64> {
    if x >= 1.0 {
        return Err(Error::Domain("c0_vanishing needs x < 1".into()));
    }
    let w = hyper_w(CNum::real(x))?;
    Ok(lambda_eval(CNum::real(x) * w, w).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{cp, pi3, sm, sp};

    fn r(v: f64) -> CNum {
        CNum::real(v)
    }

    #[test]
    fn classical_examples() {
        let f = classical_flow_eval(FlowKind::PhiN(3), r(1.0), r(1.0));
        assert!(f.u.dist(r(4.0)) < 1e-15 && f.v.dist(r(0.5)) < 1e-15);
        let f = classical_flow_eval(FlowKind::Exp, r(0.7), r(0.0));
        assert_eq!((f.u.re, f.v.re), (0.7, 0.0));
        let f = classical_flow_eval(FlowKind::E, r(0.3), r(0.3));
        assert!(f.u.dist(r(0.3)) < 1e-16 && f.v.dist(r(0.3)) < 1e-16);
        assert!(!classical_flow_eval(FlowKind::PhiN(2), r(1.0), r(-1.0)).defined);
        assert!(!classical_flow_eval(FlowKind::Tan, r(0.0), r(std::f64::consts::FRAC_PI_2)).defined);
        assert!(!classical_flow_eval(FlowKind::T, r(std::f64::consts::FRAC_PI_2 + 0.5), r(0.5)).defined);
        assert!(!classical_flow_eval(FlowKind::Log, r(0.5), r(-1.0)).defined);
    }

    #[test]
    fn kind_names_round_trip() {
        for k in FlowKind::catalogue(5) {
            assert_eq!(k.to_string().parse::<FlowKind>().unwrap(), k);
        }
        assert_eq!("phi_3".parse::<FlowKind>().unwrap(), FlowKind::PhiN(3));
        assert!("sinh".parse::<FlowKind>().is_err());
    }

    #[test]
    fn inverse_flows() {
        for k in FlowKind::catalogue(5).into_iter().filter(|k| k.is_unramified()) {
            for (x, y) in [(0.2, 0.1), (-0.3, 0.25), (0.1, -0.4)] {
                let f = flow_inverse(k, r(x), r(y));
                let g = classical_flow_eval(k, f.u, f.v);
                assert!(g.u.dist(r(x)) < 1e-9 && g.v.dist(r(y)) < 1e-9, "{k} at ({x}, {y})");
            }
        }
    }

    #[test]
    fn lambda_limits() {
        assert!(lambda_eval(r(0.4), r(0.0)).dist(r(2.0 / 3.0)) < 1e-15);
        assert_eq!(lambda_eval(r(0.0), r(0.37)).abs(), 0.0);
        assert!(lambda_eval(r(0.3), r(0.3)).dist(r(0.3 / 1.3)) < 1e-15);
        // just outside the limit radius the generic path agrees
        assert!(lambda_eval(r(0.4), r(1e-9)).dist(r(2.0 / 3.0)) < 1e-8);
        assert!(lambda_eval(r(0.4), r(0.4 + 1e-9)).dist(r(0.4 / 1.4)) < 1e-8);
    }

    #[test]
    fn lambda_on_skew_line_matches_series() {
        let coeffs = crate::series::diagonal_coeffs(24);
        let z = 0.1f64;
        let sum: f64 = coeffs.iter().enumerate().map(|(i, c)| crate::exact::rational_to_f64(c) * z.powi(i as i32 + 1)).sum();
        let v = lambda_eval(r(z), r(-z));
        assert!((v.re - sum).abs() < 1e-12, "{} vs {}", v.re, sum);
    }

    #[test]
    fn branch_independence_and_avatar() {
        let (x, y) = (r(1.1), r(0.4));
        let l = lambda_eval(x, y);
        for b in 0..3 {
            assert!(lambda_printed(x, y, b).unwrap().dist(l) < 1e-10);
        }
        let s = (x * y * (x - y)).cbrt();
        let rv = r_eval(sm(s) / s, crate::special::cm(s), x, y);
        assert!(rv.dist(l) < 1e-10);
        let tv = t_eval(sp(s) * s, cp(s) * s, x, y).unwrap();
        assert!(tv.dist(l) < 1e-10, "{tv:?} vs {l:?}");
    }

    #[test]
    fn avatar_special_values() {
        let (x, y) = (r(0.7), r(-0.2));
        let w2 = omega().powi(2);
        assert!(r_eval(CNum::ZERO, w2, x, y).dist(x) < 1e-14);
        // on xy(x − y) = (π₃/3)³ with A = 3/π₃, B = 0 the avatar returns −y
        let s = pi3() / 3.0;
        let y = r(0.8);
        // solve x² y − x y² = s³ for x > y
        let c = s.powi(3);
        let xv = (y.re + (y.re * y.re + 4.0 * c / y.re).sqrt()) / 2.0;
        assert!(r_eval(r(1.0 / s), CNum::ZERO, r(xv), y).dist(-y) < 1e-12);
    }

    #[test]
    fn lambda_tends_to_difference_at_sm_pole() {
        // ς = 2π₃/3 is a pole of sm; pick (x, y) on xy(x − y) = ς³
        let s = 2.0 * pi3() / 3.0;
        let y = 0.9;
        let x = (y + (y * y + 4.0 * s.powi(3) / y).sqrt()) / 2.0;
        let v = lambda_eval(r(x), r(y));
        assert!(v.dist(r(y - x)) < 1e-9);
        let near = lambda_eval(r(x + 1e-7), r(y));
        assert!(near.dist(v) < 1e-5, "{near:?} vs {v:?}");
    }

    #[test]
    fn t_avatar_properties() {
        let (a, b, x, y) = (CNum::new(0.3, 0.1), CNum::new(-0.7, 0.2), CNum::new(0.4, -0.5), CNum::new(1.2, 0.3));
        let z = 2.5;
        let scaled = t_eval(a * z, b * z, x * z, y * z).unwrap() / z;
        assert!(scaled.dist(t_eval(a, b, x, y).unwrap()) < 1e-12);
        let z = 1e-4f64;
        let (x, y) = (r(1.0), r(2.0));
        let v = t_eval(-(x * y * (x - y)) * z.powi(3), CNum::ONE, x * z, y * z).unwrap() / z;
        assert!(v.dist(x) < 10.0 * z);
        assert!(t_eval(CNum::ZERO, CNum::ONE, x, y).is_err());
    }

    #[test]
    fn e_function() {
        // on y = 0 the principal branch gives −x/(1 + x), the other branch 0
        for x in [0.2, 0.45, -0.3] {
            let v = e_eval(r(x), r(0.0)).unwrap();
            assert!(v.dist(r(-x / (1.0 + x))) < 1e-12, "{x}: {v:?}");
            assert!(t_eval(CNum::ONE, CNum::ZERO, r(x), r(0.0)).unwrap().abs() < 1e-15);
        }
        assert!(e_pde_residual(0.3, 0.2, 1e-5).unwrap() < 1e-6);
        let (x, y) = (r(0.31), r(-0.17));
        assert!(e_eval(x * 2.0, y * 2.0).unwrap().dist(e_eval(x, y).unwrap() * 2.0) > 1e-3);
    }

    #[test]
    fn e_matches_lambda_where_sp_is_reciprocal() {
        // ς with sp(ς)ς = 1 makes (A, B) = (1, cp(ς)ς), which is ℰ's parameter on that locus
        let f = |u: f64| sp(r(u)).re * u - 1.0;
        let (mut lo, mut hi) = (-pi3() / 3.0 + 1e-3, -1e-3);
        assert!(f(lo).signum() != f(hi).signum());
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid).signum() == f(lo).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let s = r(0.5 * (lo + hi));
        let c = s.powi(3);
        let y = r(-0.6);
        // x² y − x y² = c
        let disc = (y * y * y * y + 4.0 * y * c).sqrt();
        let mut matched = 0;
        for x in [(y * y + disc) / (2.0 * y), (y * y - disc) / (2.0 * y)] {
            let e = e_eval(x, y).unwrap();
            let l = lambda_eval(x, y);
            let alt = t_eval(CNum::ONE, cp(s) * s, x, y).unwrap();
            assert!(alt.dist(l) < 1e-9, "{alt:?} vs {l:?}");
            let bp = 0.5 + 0.5 * (1.0 - 4.0 * c).sqrt();
            if bp.dist(cp(s) * s) < 1e-9 {
                assert!(e.dist(l) < 1e-9);
                matched += 1;
            }
        }
        assert_eq!(matched, 2);
    }

    #[test]
    fn ell_conjugation() {
        assert!(ell_conjugation_check(r(1.0), r(1.0)).unwrap() < 1e-12);
        assert!(ell_conjugation_check(r(0.3), r(-0.1)).unwrap() < 1e-12);
        assert_eq!(ell_conjugation_check(r(0.0), r(0.7)).unwrap(), 0.0);
        assert!(ell_conjugation_check(r(0.3), r(0.0)).is_err());
    }

    #[test]
    fn vanishing_curve() {
        assert_eq!(c0_vanishing(0.0).unwrap(), 0.0);
        for x in [-2.0, -0.5, 0.5, 0.8] {
            assert!(c0_vanishing(x).unwrap() < 1e-8, "{x}");
        }
    }

    #[test]
    fn symmetries_and_ell_property() {
        let pts = [(0.3, 0.1), (-0.2, 0.45), (0.6, -0.35), (1.3, 0.2)];
        for (x, y) in pts {
            let (x, y) = (r(x), r(y));
            let s3 = lambda_eval(x, y) + lambda_eval(-y, x - y) + lambda_eval(y - x, -x);
            let s2 = lambda_eval(x, y) + lambda_eval(-x, y - x);
            assert!(s3.abs() < 1e-9 && s2.abs() < 1e-9);
            let c = x * y * (x - y);
            for z in [0.3, -0.7, 1.4] {
                let (a, b) = lambda_pair(x * z, y * z);
                let (a, b) = (a / z, b / z);
                assert!((a * b * (a - b)).dist(c) < 1e-8);
            }
        }
    }

    #[test]
    fn diagonal_derivatives() {
        let h = 1e-5;
        for x in [0.2f64, 0.5] {
            let l = |a: f64, b: f64| lambda_eval(r(a), r(b)).re;
            let lx = (l(x + h, x) - l(x - h, x)) / (2.0 * h);
            let ly = (l(x, x + h) - l(x, x - h)) / (2.0 * h);
            let p: f64 = x + 1.0;
            assert!((lx - 0.5 * (p.powi(-2) + p.powi(2))).abs() < 1e-5, "λ_x at {x}: {lx}");
            assert!((ly - 0.5 * (p.powi(-2) - p.powi(2))).abs() < 1e-5, "λ_y at {x}: {ly}");
        }
    }
}
