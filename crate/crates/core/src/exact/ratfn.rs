use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::poly::{gcd, MultiPoly, Rational, Vars};
use crate::error::{Error, Result};

/// Quotient of two polynomials over a shared variable set.
///
/// Arithmetic keeps the representation cheap (common denominators are only merged
/// when they coincide); [`RationalFn::reduced`] cancels the multivariate gcd.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut f = RationalFn { num, den };
        f.normalize_scale();
        Ok(f)
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.vars());
        RationalFn { num: p, den }
    }

    pub fn zero(vars: &Vars) -> Self {
        Self::from_poly(MultiPoly::zero(vars))
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(vars, c))
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        Ok(Self::from_poly(MultiPoly::var(vars, name)?))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, if its denominator is constant.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        let c = self.den.constant_value()?;
        Some(self.num.scale(&c.recip()))
    }

    fn normalize_scale(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one(self.num.vars());
            return;
        }
        if let Some(c) = self.den.constant_value() {
            if !c.is_one() {
                let inv = c.recip();
                self.num = self.num.scale(&inv);
                self.den = MultiPoly::one(self.num.vars());
            }
            return;
        }
        let lc = self.den.leading_term(Default::default()).map(|(_, c)| c.clone()).expect("nonzero");
        if !lc.is_one() {
            let inv = lc.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    /// Cancels the greatest common divisor of numerator and denominator.
    pub fn reduced(&self) -> RationalFn {
        if self.num.is_zero() {
            return Self::zero(self.vars());
        }
        let g = gcd(&self.num, &self.den);
        let mut f = if g.is_constant() {
            self.clone()
        } else {
            let n = self.num.exact_divide(&g).expect("gcd nonzero").expect("gcd divides numerator");
            let d = self.den.exact_divide(&g).expect("gcd nonzero").expect("gcd divides denominator");
            RationalFn { num: n, den: d }
        };
        f.normalize_scale();
        f
    }

    pub fn derivative(&self, i: usize) -> RationalFn {
        let dn = self.num.derivative(i);
        if self.den.is_constant() {
            return RationalFn { num: dn, den: self.den.clone() };
        }
        let dd = self.den.derivative(i);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        let den = &self.den * &self.den;
        let mut f = RationalFn { num, den };
        f.normalize_scale();
        f
    }

    /// Reduced partial derivative with respect to the named variable.
    pub fn partial_derivative(&self, name: &str) -> Result<RationalFn> {
        let i = self.num.var_index(name)?;
        Ok(self.derivative(i).reduced())
    }

    /// Degree `d` with `f(tx) = t^d f(x)`, `None` when not homogeneous.
    pub fn homogeneous_degree(&self) -> Result<Option<i32>> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let r = self.reduced();
        match (r.num.homogeneous_degree(), r.den.homogeneous_degree()) {
            (Some(a), Some(b)) => Ok(Some(a as i32 - b as i32)),
            _ => Ok(None),
        }
    }

    pub fn pow(&self, k: i32) -> Result<RationalFn> {
        if k >= 0 {
            let mut f = RationalFn { num: self.num.pow(k as u32), den: self.den.pow(k as u32) };
            f.normalize_scale();
            Ok(f)
        } else {
            self.recip()?.pow(-k)
        }
    }

    pub fn recip(&self) -> Result<RationalFn> {
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> RationalFn {
        let mut f = RationalFn { num: self.num.scale(c), den: self.den.clone() };
        f.normalize_scale();
        f
    }

    /// Equality as functions, by cross multiplication.
    pub fn same_as(&self, other: &RationalFn) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn substitute(&self, images: &[RationalFn]) -> RationalFn {
        assert_eq!(images.len(), self.vars().len(), "one image per variable");
        let n = self.vars().len();
        let bounds: Vec<u32> = (0..n).map(|i| self.num.degree_in(i).max(self.den.degree_in(i))).collect();
        let num = homogenized_substitute(&self.num, images, &bounds);
        let den = homogenized_substitute(&self.den, images, &bounds);
        RationalFn::new(num, den).expect("substituted denominator vanished identically")
    }

    pub fn embed(&self, target: &Vars) -> Result<RationalFn> {
        Ok(RationalFn { num: self.num.embed(target)?, den: self.den.embed(target)? })
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Undefined("denominator vanishes".into()));
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.num.eval_complex(point) / self.den.eval_complex(point)
    }

    pub fn compile(&self) -> CompiledRatFn {
        CompiledRatFn { num: self.num.compile(), den: self.den.compile() }
    }
}

/// `sum c * prod p_i^e_i * q_i^(D_i - e_i)` for images `p_i / q_i`.
fn homogenized_substitute(f: &MultiPoly, images: &[RationalFn], bounds: &[u32]) -> MultiPoly {
    let target = images[0].vars().clone();
    let mut acc = MultiPoly::zero(&target);
    let mut ppow: Vec<Vec<MultiPoly>> = images.iter().map(|r| vec![MultiPoly::one(&target), r.num.clone()]).collect();
    let mut qpow: Vec<Vec<MultiPoly>> = images.iter().map(|r| vec![MultiPoly::one(&target), r.den.clone()]).collect();
    let power = |cache: &mut Vec<MultiPoly>, k: usize| -> MultiPoly {
        while cache.len() <= k {
            let next = &cache[cache.len() - 1] * &cache[1];
            cache.push(next);
        }
        cache[k].clone()
    };
    for (e, c) in f.terms() {
        let mut term = MultiPoly::constant(&target, c.clone());
        for (i, &k) in e.iter().enumerate() {
            let a = power(&mut ppow[i], k as usize);
            let b = power(&mut qpow[i], (bounds[i] - k) as usize);
            if !a.is_constant() || !a.constant_value().map_or(false, |v| v.is_one()) {
                term = &term * &a;
            }
            if !b.is_constant() || !b.constant_value().map_or(false, |v| v.is_one()) {
                term = &term * &b;
            }
        }
        acc = &acc + &term;
    }
    acc
}

#[derive(Clone, Debug)]
pub struct CompiledRatFn {
    num: super::poly::CompiledPoly,
    den: super::poly::CompiledPoly,
}

impl CompiledRatFn {
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        self.num.eval(point) / self.den.eval(point)
    }

    pub fn eval_parts(&self, point: &[Complex64]) -> (Complex64, Complex64) {
        (self.num.eval(point), self.den.eval(point))
    }

    /// Value and a first-order rounding-error estimate; `None` where the denominator vanishes.
    pub fn eval_checked(&self, point: &[Complex64]) -> Option<(Complex64, f64)> {
        let (n, nm) = self.num.eval_with_bound(point);
        let (d, dm) = self.den.eval_with_bound(point);
        if d.norm() == 0.0 || !d.norm().is_finite() {
            return None;
        }
        let v = n / d;
        let k = (self.num.len() + self.den.len()) as f64;
        let err = k * f64::EPSILON * (nm / d.norm() + v.norm() * dm / d.norm());
        Some((v, err))
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.constant_value().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        let mut f = if self.den == rhs.den {
            RationalFn { num: &self.num + &rhs.num, den: self.den.clone() }
        } else {
            RationalFn { num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den), den: &self.den * &rhs.den }
        };
        f.normalize_scale();
        f
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        let mut f = RationalFn { num: &self.num * &rhs.num, den: &self.den * &rhs.den };
        f.normalize_scale();
        f
    }
}

impl Div for &RationalFn {
    type Output = RationalFn;
    fn div(self, rhs: &RationalFn) -> RationalFn {
        assert!(!rhs.is_zero(), "division by the zero function");
        let mut f = RationalFn { num: &self.num * &rhs.den, den: &self.den * &rhs.num };
        f.normalize_scale();
        f
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: RationalFn) -> RationalFn {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: &RationalFn) -> RationalFn {
                (&self).$m(rhs)
            }
        }
        impl $tr<RationalFn> for &RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: RationalFn) -> RationalFn {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        -&self
    }
}

impl From<MultiPoly> for RationalFn {
    fn from(p: MultiPoly) -> Self {
        RationalFn::from_poly(p)
    }
}
