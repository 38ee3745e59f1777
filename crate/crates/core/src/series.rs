//! Homogeneous power series of a projective flow, generated from its vector field.
//!
//! A flow `φ(x, y)` with vector field `(ϖ, ϱ)` expands as `φ(xz, yz)/z = Σ z^(i-1) L_i(x, y)`
//! with `L_1 = x` (or `y`) and `L_(i+1) = (∂_x L_i · ϖ + ∂_y L_i · ϱ) / i`.

use std::sync::LazyLock;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, parse_ratfn, MultiPoly, Rational, RationalFn, Vars};

/// Layers whose coefficient denominators exceed this many digits abort the computation.
pub const MAX_DENOMINATOR_DIGITS: u64 = 1_000_000;

pub static XY: LazyLock<Vars> = LazyLock::new(|| crate::exact::vars(&["x", "y"]));
pub static T: LazyLock<Vars> = LazyLock::new(|| crate::exact::vars(&["t"]));
static Y: LazyLock<Vars> = LazyLock::new(|| crate::exact::vars(&["y"]));

/// Planar vector field `(ϖ, ϱ)` in the variables `x, y`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField2 {
    pub w: RationalFn,
    pub r: RationalFn,
}

impl VectorField2 {
    pub fn new(w: RationalFn, r: RationalFn) -> Self {
        VectorField2 { w, r }
    }

    pub fn parse(w: &str, r: &str) -> Result<Self> {
        Ok(VectorField2 { w: parse_ratfn(w, &XY)?, r: parse_ratfn(r, &XY)? })
    }

    /// The field `(x² − 2xy, y² − 2xy)` of the elliptic flow.
    pub fn elliptic() -> Self {
        Self::parse("x^2 - 2x*y", "y^2 - 2x*y").expect("static field")
    }

    /// Both components as quadratic forms; errors for rational or non-quadratic fields.
    pub fn quadratic_forms(&self) -> Result<(MultiPoly, MultiPoly)> {
        let w = self.w.as_poly().ok_or(Error::NotPolynomialField)?;
        let r = self.r.as_poly().ok_or(Error::NotPolynomialField)?;
        for p in [&w, &r] {
            if !p.is_zero() && p.homogeneous_degree() != Some(2) {
                return Err(Error::NotQuadraticField);
            }
        }
        Ok((w, r))
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        (self.w.eval_complex(&[x, y]), self.r.eval_complex(&[x, y]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coord {
    X,
    Y,
}

/// Homogeneous layers `L_1, L_2, …` of one flow coordinate; `L_i` has degree `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogSeries {
    layers: Vec<MultiPoly>,
}

impl HomogSeries {
    /// Layer `i`, counted from 1.
    pub fn layer(&self, i: usize) -> &MultiPoly {
        &self.layers[i - 1]
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[MultiPoly] {
        &self.layers
    }

    /// Truncated `φ(xz, yz)/z = Σ z^(i-1) L_i(x, y)`.
    pub fn eval(&self, x: Complex64, y: Complex64, z: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        let mut zp = Complex64::one();
        for l in &self.layers {
            acc += zp * l.eval_complex(&[x, y]);
            zp *= z;
        }
        acc
    }

    /// Sum of all layers as one polynomial.
    pub fn truncation(&self) -> MultiPoly {
        self.layers.iter().fold(MultiPoly::zero(&XY), |a, l| &a + l)
    }
}

/// First `n` homogeneous layers of the chosen coordinate of the flow of `vf`.
pub fn flow_series(vf: &VectorField2, coord: Coord, n: usize) -> Result<HomogSeries> {
    let (w, r) = vf.quadratic_forms()?;
    let first = match coord {
        Coord::X => MultiPoly::var_at(&XY, 0),
        Coord::Y => MultiPoly::var_at(&XY, 1),
    };
    let mut layers = Vec::with_capacity(n);
    if n == 0 {
        return Ok(HomogSeries { layers });
    }
    layers.push(first);
    for i in 1..n {
        let prev = &layers[i - 1];
        let next = (&(&prev.derivative(0) * &w) + &(&prev.derivative(1) * &r)).scale(&Rational::new(1.into(), (i as i64).into()));
        if next.max_denominator_digits() > MAX_DENOMINATOR_DIGITS {
            return Err(Error::CoefficientBlowup { layer: i + 1 });
        }
        layers.push(next);
    }
    Ok(HomogSeries { layers })
}

fn elliptic_layers(n: usize) -> HomogSeries {
    flow_series(&VectorField2::elliptic(), Coord::X, n).expect("elliptic field is quadratic")
}

/// `L(t, 1)` as a polynomial in `t`.
fn dehomogenize(l: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero(&T);
    for (e, c) in l.terms() {
        out = &out + &MultiPoly::monomial(&T, vec![e[0]], c.clone());
    }
    out
}

/// The polynomial `𝔴_n(t)`: layer `n` of the elliptic flow evaluated at `(t, 1)`.
pub fn wn_polynomial(n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("layers are indexed from 1".into()));
    }
    Ok(dehomogenize(elliptic_layers(n).layer(n)))
}

/// All of `𝔴_1, …, 𝔴_n` from a single series run.
pub fn wn_table(n: usize) -> Vec<MultiPoly> {
    elliptic_layers(n).layers().iter().map(dehomogenize).collect()
}

/// `2⌊(n+2)/6⌋`.
pub fn jmath(n: usize) -> usize {
    2 * ((n + 2) / 6)
}

fn lowest_power(p: &MultiPoly) -> Option<u32> {
    p.terms().map(|(e, _)| e[0]).min()
}

/// The lowest power of `t` in `𝔴_n` equals `ĵ(n) + 1`.
pub fn lowest_power_check(n: usize) -> Result<bool> {
    let w = wn_polynomial(n)?;
    Ok(lowest_power(&w) == Some(jmath(n) as u32 + 1))
}

/// Both three-term and two-term functional equations of `𝔴_n` hold identically.
pub fn wn_symmetry_check(n: usize) -> Result<bool> {
    let w = RationalFn::from_poly(wn_polynomial(n)?);
    Ok(wn_symmetries_vanish(&w, n))
}

pub(crate) fn wn_symmetries_vanish(w: &RationalFn, n: usize) -> bool {
    let t = RationalFn::var(&T, "t").expect("t");
    let one = RationalFn::from_int(&T, 1);
    let at = |img: RationalFn| w.substitute(&[img]);
    let pw = |b: &RationalFn| b.pow(n as i32).expect("nonzero base");

    let a1 = at(&one - &(&one / &t));
    let a2 = at(&one / &(&one - &t));
    let three = w + &(&(&pw(&-&t) * &a1) + &(&pw(&(&t - &one)) * &a2));
    let a3 = at(&t / &(&t - &one));
    let two = w + &(&pw(&(&one - &t)) * &a3);
    three.is_zero() && two.is_zero()
}

/// Coefficient of `y^(i-n)` in `f_n`, taken from layer `i`.
fn fn_coefficient(layers: &[MultiPoly], n: usize, i: usize) -> Rational {
    layers[i - 1].coeff(&[n as u32, (i - n) as u32])
}

fn fn_from_layers(layers: &[MultiPoly], n: usize, depth: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(&Y);
    for i in n..=depth {
        let c = fn_coefficient(layers, n, i);
        out = &out + &MultiPoly::monomial(&Y, vec![(i - n) as u32], c);
    }
    out
}

/// `f_n(y) = Σ_i [x^n] L_i · y^(i-n)`, accepted once depths `depth - 1` and `depth` agree.
pub fn fn_polynomial(n: usize, depth: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let cap = depth.max(n) + 4 * n + 16;
    let series = elliptic_layers(cap);
    let layers = series.layers();
    let stable_at = |d: usize| d > n && fn_coefficient(layers, n, d).is_zero();
    if depth <= cap && stable_at(depth) {
        return Ok(fn_from_layers(layers, n, depth));
    }
    let required = (depth + 1..=cap).find(|&d| stable_at(d)).unwrap_or(cap + 1);
    Err(Error::NotStabilized { n, depth, required })
}

/// Layer values `L_i(1, −1)` for `i = 1..=n`: the Taylor coefficients of `λ(z, −z)/z`.
pub fn diagonal_coeffs(n: usize) -> Vec<Rational> {
    let one = int(1);
    let m1 = int(-1);
    elliptic_layers(n).layers().iter().map(|l| l.eval(&[one.clone(), m1.clone()])).collect()
}

/// Truncated product of power series given by coefficient lists.
fn series_mul(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `f(z) f(−z) [f(z) + f(−z)] = 2 + O(z^order)` for the polynomial with coefficients `f`.
pub fn cube_identity_holds(f: &[Rational], order: usize) -> bool {
    let len = order;
    let fm: Vec<Rational> = f.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
    let sum: Vec<Rational> = f.iter().zip(&fm).map(|(a, b)| a + b).collect();
    let p = series_mul(&series_mul(f, &fm, len), &sum, len);
    p.iter().enumerate().all(|(i, c)| if i == 0 { *c == int(2) } else { c.is_zero() })
}

/// The cube identity for `f = λ(z, −z)/z` from its first `n` coefficients.
pub fn series_cube_identity(n: usize) -> bool {
    if n < 3 {
        return true;
    }
    cube_identity_holds(&diagonal_coeffs(n), n - 2)
}

/// Homogeneous parts of degrees `1..=deg` of `u_x(ϖ − x) + u_y(ϱ − y) + u` for the truncation `u`.
pub fn pde_defect(vf: &VectorField2, series: &HomogSeries, deg: usize) -> Result<Vec<MultiPoly>> {
    let (w, r) = vf.quadratic_forms()?;
    let u = series.truncation();
    let x = MultiPoly::var_at(&XY, 0);
    let y = MultiPoly::var_at(&XY, 1);
    let lhs = &(&(&u.derivative(0) * &(&w - &x)) + &(&u.derivative(1) * &(&r - &y))) + &u;
    Ok((1..=deg as u32).map(|d| lhs.homogeneous_part(d)).collect())
}

/// Coefficients of `z^1 … z^(n-1)` in `W(φ(xz, yz)/z)`; all vanish for an orbit invariant `W`.
pub fn orbit_defect(invariant: &MultiPoly, sx: &HomogSeries, sy: &HomogSeries) -> Vec<MultiPoly> {
    let n = sx.depth().min(sy.depth());
    let zero = MultiPoly::zero(&XY);
    let mul = |a: &[MultiPoly], b: &[MultiPoly]| -> Vec<MultiPoly> {
        let mut out = vec![zero.clone(); n];
        for i in 0..n {
            for j in 0..n - i {
                if !a[i].is_zero() && !b[j].is_zero() {
                    out[i + j] = &out[i + j] + &(&a[i] * &b[j]);
                }
            }
        }
        out
    };
    let mut one = vec![zero.clone(); n];
    one[0] = MultiPoly::one(&XY);
    let mut total = vec![zero.clone(); n];
    for (e, c) in invariant.terms() {
        let mut term = one.clone();
        for _ in 0..e[0] {
            term = mul(&term, sx.layers());
        }
        for _ in 0..e[1] {
            term = mul(&term, sy.layers());
        }
        for (t, s) in total.iter_mut().zip(term) {
            *t = &*t + &s.scale(c);
        }
    }
    total.split_off(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_poly, rat};

    fn t(src: &str) -> MultiPoly {
        parse_poly(src, &T).unwrap()
    }

    #[test]
    fn first_layers() {
        assert_eq!(wn_polynomial(1).unwrap(), t("t"));
        assert_eq!(wn_polynomial(2).unwrap(), t("t^2 - 2t"));
        assert_eq!(wn_polynomial(3).unwrap(), t("t^3 - t^2 + t"));
        assert_eq!(wn_polynomial(4).unwrap(), t("t^4 - 2t^3"));
    }

    #[test]
    fn zero_field_has_no_higher_layers() {
        let vf = VectorField2::parse("0", "0").unwrap();
        let s = flow_series(&vf, Coord::X, 5).unwrap();
        assert!(s.layers()[1..].iter().all(MultiPoly::is_zero));
    }

    #[test]
    fn rejects_bad_fields() {
        let vf = VectorField2::parse("x/(x+y)", "y").unwrap();
        assert_eq!(flow_series(&vf, Coord::X, 3), Err(Error::NotPolynomialField));
        let vf = VectorField2::parse("x^2 + x", "y^2").unwrap();
        assert_eq!(flow_series(&vf, Coord::X, 3), Err(Error::NotQuadraticField));
    }

    #[test]
    fn lowest_powers() {
        assert_eq!(jmath(8), 2);
        assert_eq!(lowest_power(&wn_polynomial(8).unwrap()), Some(3));
        assert_eq!(lowest_power(&wn_polynomial(2).unwrap()), Some(1));
        for n in 1..=24 {
            assert!(lowest_power_check(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn symmetry_of_wn() {
        for n in 1..=12 {
            assert!(wn_symmetry_check(n).unwrap(), "n = {n}");
        }
        let broken = RationalFn::from_poly(t("t^2 - t"));
        assert!(!wn_symmetries_vanish(&broken, 2));
    }

    #[test]
    fn fn_polynomials() {
        assert_eq!(fn_polynomial(1, 4).unwrap(), parse_poly("1 - 2y + y^2", &Y).unwrap());
        assert_eq!(fn_polynomial(2, 4).unwrap(), parse_poly("1 - y", &Y).unwrap());
        assert_eq!(fn_polynomial(3, 10).unwrap(), parse_poly("1 - 2y + 5/2y^2 - 2y^3 + y^4 - 2/7y^5 + 1/28y^6", &Y).unwrap());
        assert_eq!(fn_polynomial(4, 10).unwrap(), parse_poly("1 - 5/2y + 3y^2 - 2y^3 + 5/7y^4 - 3/28y^5", &Y).unwrap());
        assert_eq!(fn_polynomial(2, 3), Err(Error::NotStabilized { n: 2, depth: 3, required: 4 }));
        assert_eq!(fn_polynomial(4, 9), Err(Error::NotStabilized { n: 4, depth: 9, required: 10 }));
    }

    #[test]
    fn diagonal_prefix() {
        let d = diagonal_coeffs(14);
        let expect = [rat(1, 1), rat(3, 1), rat(3, 1), rat(3, 1), rat(6, 1), rat(9, 1), rat(12, 1), rat(117, 7), rat(171, 7), rat(246, 7), rat(348, 7), rat(495, 7), rat(708, 7), rat(13140, 91)];
        assert_eq!(d, expect);
    }

    #[test]
    fn cube_identity() {
        assert!(series_cube_identity(24));
        // a constant 1 satisfies the identity trivially, while a truncated prefix does not
        assert!(cube_identity_holds(&[int(1)], 10));
        assert!(!cube_identity_holds(&[int(1), int(3)], 10));
    }
}
