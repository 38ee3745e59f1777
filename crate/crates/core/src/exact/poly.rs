use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shared, ordered list of variable names.
pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Fall back to scaling by bit lengths when numerator or denominator overflow f64.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 900).max(0) as usize;
    let shift_d = (db - 900).max(0) as usize;
    let n = (q.numer() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift_d).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Total degree first, ties broken lexicographically (first variable largest).
    #[default]
    GradedLex,
    Lex,
}

impl MonomialOrder {
    pub fn compare(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GradedLex => degree(a).cmp(&degree(b)).then_with(|| a.cmp(b)),
        }
    }

    /// Key whose natural `Vec` ordering agrees with this monomial order.
    fn key(self, e: &[u32]) -> Vec<u32> {
        match self {
            MonomialOrder::Lex => e.to_vec(),
            MonomialOrder::GradedLex => {
                let mut k = Vec::with_capacity(e.len() + 1);
                k.push(degree(e));
                k.extend_from_slice(e);
                k
            }
        }
    }

    fn unkey(self, k: &[u32]) -> Vec<u32> {
        match self {
            MonomialOrder::Lex => k.to_vec(),
            MonomialOrder::GradedLex => k[1..].to_vec(),
        }
    }
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Sparse polynomial over Q in a fixed, named set of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, int(c))
    }

    pub fn monomial(vars: &Vars, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        let i = index_of(vars, name)?;
        Ok(Self::var_at(vars, i))
    }

    pub fn var_at(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        index_of(&self.vars, name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coeff(&vec![0; self.vars.len()]))
        } else {
            None
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree(e)).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }

    /// Degree when every term has the same total degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| degree(e));
        let d = it.next()?;
        it.all(|k| k == d).then_some(d)
    }

    /// Degree-`d` part.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| degree(e) == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Vec<u32>, &Rational)> {
        match order {
            MonomialOrder::Lex => self.terms.iter().next_back(),
            MonomialOrder::GradedLex => self.terms.iter().max_by(|a, b| order.compare(a.0, b.0)),
        }
    }

    /// Terms in descending order.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Vec<u32>, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.compare(b.0, a.0));
        v
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    /// Divides by the leading coefficient under graded-lex order.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term(MonomialOrder::GradedLex) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut k: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            terms.insert(e2, c * int(e[i] as i64));
        }
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn derivative_by(&self, name: &str) -> Result<MultiPoly> {
        Ok(self.derivative(self.var_index(name)?))
    }

    /// Re-expresses the polynomial over `target`, which must contain every variable in use.
    pub fn embed(&self, target: &Vars) -> Result<MultiPoly> {
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| target.iter().position(|t| t == v)).collect();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e2[j] = k,
                    None => return Err(Error::UnknownVariable(self.vars[i].clone())),
                }
            }
            terms.insert(e2, c.clone());
        }
        Ok(MultiPoly { vars: target.clone(), terms })
    }

    /// Substitutes `images[i]` for variable `i`; all images share one variable set.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let target = images[0].vars.clone();
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(&target), p.clone()]).collect();
        let mut acc = MultiPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            acc.add_assign_ref(&term);
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.compile().eval(point)
    }

    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            terms: self.terms.iter().map(|(e, c)| (rational_to_f64(c), e.clone())).collect(),
        }
    }

    /// Largest coefficient denominator, in decimal digits (estimated from bit length).
    pub fn max_denominator_digits(&self) -> u64 {
        self.terms.values().map(|c| (c.denom().bits() as f64 * std::f64::consts::LOG10_2).ceil() as u64).max().unwrap_or(0)
    }

    fn add_assign_ref(&mut self, other: &MultiPoly) {
        self.add_scaled(other, &Rational::one(), None);
    }

    /// self += c * x^shift * other
    fn add_scaled(&mut self, other: &MultiPoly, c: &Rational, shift: Option<&[u32]>) {
        self.check_vars(other);
        for (e, k) in &other.terms {
            let e2 = match shift {
                Some(s) => e.iter().zip(s).map(|(a, b)| a + b).collect(),
                None => e.clone(),
            };
            let v = k * c;
            match self.terms.entry(e2) {
                std::collections::btree_map::Entry::Vacant(slot) => {
                    slot.insert(v);
                }
                std::collections::btree_map::Entry::Occupied(mut slot) => {
                    *slot.get_mut() += v;
                    if slot.get().is_zero() {
                        slot.remove();
                    }
                }
            }
        }
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "variable sets differ: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    /// Multivariate division by a single divisor: `self = q * g + r` where no term of `r`
    /// is divisible by the leading monomial of `g`.
    pub fn div_rem(&self, g: &MultiPoly, order: MonomialOrder) -> Result<(MultiPoly, MultiPoly)> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.check_vars(g);
        let (lm, lc) = g.leading_term(order).expect("nonzero divisor");
        let lm = lm.clone();
        let lc_inv = lc.recip();
        let g_rest: Vec<(Vec<u32>, Rational)> = g.terms.iter().filter(|(e, _)| **e != lm).map(|(e, c)| (e.clone(), c.clone())).collect();

        let mut work: BTreeMap<Vec<u32>, Rational> = self.terms.iter().map(|(e, c)| (order.key(e), c.clone())).collect();
        let mut quot = BTreeMap::new();
        let mut rem = BTreeMap::new();
        while let Some((k, c)) = work.pop_last() {
            let e = order.unkey(&k);
            if divides(&lm, &e) {
                let shift: Vec<u32> = e.iter().zip(&lm).map(|(a, b)| a - b).collect();
                let qc = &c * &lc_inv;
                for (ge, gc) in &g_rest {
                    let te: Vec<u32> = ge.iter().zip(&shift).map(|(a, b)| a + b).collect();
                    let delta = -(&qc * gc);
                    let key = order.key(&te);
                    match work.entry(key) {
                        std::collections::btree_map::Entry::Vacant(slot) => {
                            slot.insert(delta);
                        }
                        std::collections::btree_map::Entry::Occupied(mut slot) => {
                            *slot.get_mut() += delta;
                            if slot.get().is_zero() {
                                slot.remove();
                            }
                        }
                    }
                }
                quot.insert(shift, qc);
            } else {
                rem.insert(e, c);
            }
        }
        Ok((MultiPoly { vars: self.vars.clone(), terms: quot }, MultiPoly { vars: self.vars.clone(), terms: rem }))
    }

    /// Remainder of division by `g`; zero exactly when `self` lies in the ideal `(g)`.
    pub fn reduce_modulo(&self, g: &MultiPoly, order: MonomialOrder) -> Result<MultiPoly> {
        Ok(self.div_rem(g, order)?.1)
    }

    /// `Some(q)` with `self = q * g` when `g` divides `self`, `None` otherwise.
    pub fn exact_divide(&self, g: &MultiPoly) -> Result<Option<MultiPoly>> {
        let (q, r) = self.div_rem(g, MonomialOrder::GradedLex)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Coefficients with respect to variable `i`, as polynomials free of that variable.
    fn coefficients_in(&self, i: usize) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            out.entry(k).or_insert_with(|| MultiPoly::zero(&self.vars)).terms.insert(e2, c.clone());
        }
        out
    }

    fn content_in(&self, i: usize) -> MultiPoly {
        let mut g = MultiPoly::zero(&self.vars);
        for (_, c) in self.coefficients_in(i) {
            g = gcd(&g, &c);
            if g.is_constant() && !g.is_zero() {
                return MultiPoly::one(&self.vars);
            }
        }
        g
    }

    fn primitive_in(&self, i: usize) -> MultiPoly {
        let c = self.content_in(i);
        if c.is_zero() {
            return self.clone();
        }
        self.exact_divide(&c).expect("nonzero content").expect("content divides")
    }

    /// Pseudo-remainder of `self` by `b` in variable `i`.
    fn pseudo_rem(&self, b: &MultiPoly, i: usize) -> MultiPoly {
        let db = b.degree_in(i);
        let coeffs = b.coefficients_in(i);
        let lb = coeffs.get(&db).cloned().expect("leading coefficient");
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(i) >= db {
            let dr = r.degree_in(i);
            let lr = r.coefficients_in(i).remove(&dr).expect("leading coefficient");
            let mut shift = vec![0; self.vars.len()];
            shift[i] = dr - db;
            let mut next = &r * &lb;
            let sub = &lr * b;
            next.add_scaled(&sub, &-Rational::one(), Some(&shift));
            r = next;
            r = r.monic();
        }
        r
    }

    fn first_variable(&self, other: &MultiPoly) -> Option<usize> {
        (0..self.vars.len()).find(|&i| self.degree_in(i) > 0 || other.degree_in(i) > 0)
    }

    pub fn to_pretty(&self) -> String {
        pretty(self)
    }
}

fn index_of(vars: &Vars, name: &str) -> Result<usize> {
    vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

/// Greatest common divisor over Q, normalized to leading coefficient one (graded lex).
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(&a.vars);
    }
    let i = a.first_variable(b).expect("non-constant");
    if a.degree_in(i) == 0 {
        return gcd(a, &b.content_in(i));
    }
    if b.degree_in(i) == 0 {
        return gcd(&a.content_in(i), b);
    }
    let c = gcd(&a.content_in(i), &b.content_in(i));
    let mut p = a.primitive_in(i);
    let mut q = b.primitive_in(i);
    let g = loop {
        if p.degree_in(i) < q.degree_in(i) {
            std::mem::swap(&mut p, &mut q);
        }
        let r = p.pseudo_rem(&q, i);
        if r.is_zero() {
            break q;
        }
        if r.degree_in(i) == 0 {
            break MultiPoly::one(&a.vars);
        }
        p = q;
        q = r.primitive_in(i);
    };
    (&c * &g.primitive_in(i)).monic()
}

/// Floating-point image of a polynomial for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(f64, Vec<u32>)>,
}

impl CompiledPoly {
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        self.eval_with_bound(point).0
    }

    /// Value together with `Σ |c| |x|^e`, which bounds the rounding error relative to `ε`.
    pub fn eval_with_bound(&self, point: &[Complex64]) -> (Complex64, f64) {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for (c, e) in &self.terms {
            let mut t = Complex64::new(*c, 0.0);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= x.powu(k);
                }
            }
            acc += t;
            mag += t.norm();
        }
        (acc, mag)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn fmt_monomial(vars: &Vars, e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (v, &k) in vars.iter().zip(e) {
        match k {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{k}")),
        }
    }
    parts.join("*")
}

/// Human-oriented rendering: `t^8 - 4*t^7 + 43/7*t^6`.
fn pretty(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (e, c)) in p.sorted_terms(MonomialOrder::GradedLex).into_iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = fmt_monomial(&p.vars, e);
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    out
}

/// Canonical form: terms in descending graded-lex order, each `c*x^a*y^b`, joined by `" + "`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms(MonomialOrder::GradedLex)
            .into_iter()
            .map(|(e, c)| {
                let m = fmt_monomial(&self.vars, e);
                if m.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one(), None);
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        let (small, large) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        for (e, c) in &small.terms {
            out.add_scaled(large, c, Some(e));
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
