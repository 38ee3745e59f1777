//! Projective flows over `F_p ∪ {∞}` with partial arithmetic.
//!
//! `0·∞` and `∞ + ∞` are undefined; every other operation with `∞` follows the
//! projective line (`a + ∞ = ∞`, `a·∞ = ∞` for `a ≠ 0`, `a/∞ = 0`, `a/0 = ∞` for `a ≠ 0`).

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Element of `F_p ∪ {∞}`; finite residues lie in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PElem {
    Fin(u64),
    Inf,
}

impl PElem {
    pub fn is_inf(self) -> bool {
        self == PElem::Inf
    }
}

impl fmt::Display for PElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PElem::Fin(a) => write!(f, "{a}"),
            PElem::Inf => f.write_str("∞"),
        }
    }
}

impl Serialize for PElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PElem::Fin(a) => s.serialize_u64(*a),
            PElem::Inf => s.serialize_str("∞"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Partial arithmetic on `F_p ∪ {∞}`; `None` marks an undefined result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(Fp { p })
    }

    pub fn p(self) -> u64 {
        self.p
    }

    pub fn elem(self, a: i64) -> PElem {
        PElem::Fin(a.rem_euclid(self.p as i64) as u64)
    }

    /// `0, 1, …, p − 1, ∞`.
    pub fn elements(self) -> Vec<PElem> {
        (0..self.p).map(PElem::Fin).chain([PElem::Inf]).collect()
    }

    /// Position of `a` in [`Fp::elements`].
    pub fn index(self, a: PElem) -> usize {
        match a {
            PElem::Fin(v) => v as usize,
            PElem::Inf => self.p as usize,
        }
    }

    pub fn add(self, a: PElem, b: PElem) -> Option<PElem> {
        match (a, b) {
            (PElem::Inf, PElem::Inf) => None,
            (PElem::Inf, _) | (_, PElem::Inf) => Some(PElem::Inf),
            (PElem::Fin(x), PElem::Fin(y)) => Some(PElem::Fin((x + y) % self.p)),
        }
    }

    pub fn neg(self, a: PElem) -> PElem {
        match a {
            PElem::Inf => PElem::Inf,
            PElem::Fin(x) => PElem::Fin((self.p - x) % self.p),
        }
    }

    pub fn mul(self, a: PElem, b: PElem) -> Option<PElem> {
        match (a, b) {
            (PElem::Fin(0), PElem::Inf) | (PElem::Inf, PElem::Fin(0)) => None,
            (PElem::Inf, _) | (_, PElem::Inf) => Some(PElem::Inf),
            (PElem::Fin(x), PElem::Fin(y)) => Some(PElem::Fin(x * y % self.p)),
        }
    }

    /// `1/0 = ∞`, `1/∞ = 0`.
    pub fn inv(self, a: PElem) -> PElem {
        match a {
            PElem::Fin(0) => PElem::Inf,
            PElem::Inf => PElem::Fin(0),
            PElem::Fin(x) => PElem::Fin(self.inv_fin(x)),
        }
    }

    pub fn div(self, a: PElem, b: PElem) -> Option<PElem> {
        self.mul(a, self.inv(b))
    }

    fn inv_fin(self, x: u64) -> u64 {
        pow_mod(x, self.p - 2, self.p)
    }

    /// Legendre symbol `(−1/p)` for odd `p`.
    pub fn minus_one_is_square(self) -> bool {
        self.p % 4 == 1
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

pub fn pf_add(p: u64, a: PElem, b: PElem) -> Result<Option<PElem>> {
    Ok(Fp::new(p)?.add(a, b))
}

pub fn pf_mul(p: u64, a: PElem, b: PElem) -> Result<Option<PElem>> {
    Ok(Fp::new(p)?.mul(a, b))
}

pub fn pf_div(p: u64, a: PElem, b: PElem) -> Result<Option<PElem>> {
    Ok(Fp::new(p)?.div(a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Flow1dClass {
    Zero,
    Infinity,
    /// `x/(ax + 1)` on the projective line.
    Mobius { a: u64 },
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flow1d {
    /// Values at `0, 1, …, p − 1, ∞`.
    pub values: Vec<PElem>,
    pub class: Flow1dClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct Flows1d {
    pub p: u64,
    pub count: usize,
    pub flows: Vec<Flow1d>,
}

/// `x/(ax + 1)` as a map of the projective line: `−1/a ↦ ∞`, `∞ ↦ 1/a`.
pub fn mobius_1d(f: Fp, a: u64) -> Vec<PElem> {
    f.elements()
        .into_iter()
        .map(|x| match x {
            PElem::Inf => f.inv(PElem::Fin(a)),
            PElem::Fin(v) => {
                let den = (a * v + 1) % f.p();
                if den == 0 {
                    PElem::Inf
                } else {
                    PElem::Fin(v * f.inv_fin(den) % f.p())
                }
            }
        })
        .collect()
}

fn classify_1d(f: Fp, values: &[PElem]) -> Flow1dClass {
    if values.iter().all(|&v| v == PElem::Fin(0)) {
        return Flow1dClass::Zero;
    }
    if values.iter().all(|&v| v == PElem::Inf) {
        return Flow1dClass::Infinity;
    }
    (0..f.p()).find(|&a| mobius_1d(f, a) == values).map_or(Flow1dClass::Unclassified, |a| Flow1dClass::Mobius { a })
}

/// Whether `(1 − z) f(x) = f(f(xz)(1 − z)/z)` at every `(x, z)` where all intermediate values are defined.
pub fn satisfies_1d(f: Fp, values: &[PElem]) -> bool {
    let at = |a: PElem| values[f.index(a)];
    let one = PElem::Fin(1);
    let elems = f.elements();
    for &x in &elems {
        for &z in &elems {
            let Some(omz) = f.add(one, f.neg(z)) else { continue };
            let Some(lhs) = f.mul(omz, at(x)) else { continue };
            let Some(xz) = f.mul(x, z) else { continue };
            let Some(t) = f.mul(at(xz), omz).and_then(|t| f.div(t, z)) else { continue };
            if at(t) != lhs {
                return false;
            }
        }
    }
    true
}

/// Every `f: F̂_p → F̂_p` satisfying the one-dimensional functional equation, by exhaustive search.
pub fn enumerate_1d_flows(p: u64) -> Result<Flows1d> {
    let f = Fp::new(p)?;
    if p > 7 {
        return Err(Error::InvalidArgument("exhaustive search is limited to p ≤ 7".into()));
    }
    let n = p as usize + 1;
    let elems = f.elements();
    let total = n.pow(n as u32);
    let flows: Vec<Flow1d> = (0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let values: Vec<PElem> = (0..n)
                .map(|_| {
                    let v = elems[code % n];
                    code /= n;
                    v
                })
                .collect();
            satisfies_1d(f, &values).then(|| Flow1d { class: classify_1d(f, &values), values })
        })
        .collect();
    Ok(Flows1d { p, count: flows.len(), flows })
}

/// A point of `(F̂_p)²`, written `a•b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pt2 {
    pub a: PElem,
    pub b: PElem,
}

impl Pt2 {
    pub fn new(a: PElem, b: PElem) -> Self {
        Pt2 { a, b }
    }

    pub fn is_finite(self) -> bool {
        !self.a.is_inf() && !self.b.is_inf()
    }
}

impl fmt::Display for Pt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}•{}", self.a, self.b)
    }
}

impl Fp {
    /// `n·(a•b) = na•nb`; an infinite coordinate stays infinite.
    pub fn scale(self, n: u64, pt: Pt2) -> Pt2 {
        let s = |c: PElem| match c {
            PElem::Inf => PElem::Inf,
            PElem::Fin(v) => PElem::Fin(n % self.p * v % self.p),
        };
        Pt2::new(s(pt.a), s(pt.b))
    }

    pub fn points(self) -> Vec<Pt2> {
        let e = self.elements();
        e.iter().flat_map(|&a| e.iter().map(move |&b| Pt2::new(a, b))).collect()
    }

    fn point_index(self, pt: Pt2) -> usize {
        self.index(pt.a) * (self.p as usize + 1) + self.index(pt.b)
    }
}

/// `φ_p(x, y) = (x² + y² + 2x, x² + y² + 2y) / ((x + 1)² + (y + 1)²)` where the denominator is nonzero.
pub fn phi_p_direct(f: Fp, x: u64, y: u64) -> Option<Pt2> {
    let p = f.p();
    let (x, y) = (x % p, y % p);
    let den = ((x + 1) * (x + 1) + (y + 1) * (y + 1)) % p;
    if den == 0 {
        return None;
    }
    let inv = f.inv_fin(den);
    let s = x * x + y * y;
    Some(Pt2::new(PElem::Fin((s + 2 * x) % p * inv % p), PElem::Fin((s + 2 * y) % p * inv % p)))
}

/// The completed `φ_p` on `(F̂_p)²` for `p ≡ 1 (mod 4)`.
#[derive(Clone, Debug)]
pub struct Completion {
    pub field: Fp,
    /// Indexed by [`Fp::points`] order.
    values: Vec<Pt2>,
    /// Cells where the formula is undefined or an input is infinite.
    pub completed: Vec<Pt2>,
}

impl Completion {
    pub fn eval(&self, pt: Pt2) -> Pt2 {
        self.values[self.field.point_index(pt)]
    }

    /// Rows `x = 0, …, p − 1, ∞`, columns likewise in `y`.
    pub fn grid(&self) -> Vec<Vec<Pt2>> {
        let e = self.field.elements();
        e.iter().map(|&x| e.iter().map(|&y| self.eval(Pt2::new(x, y))).collect()).collect()
    }

    pub fn is_bijective(&self) -> bool {
        self.values.iter().collect::<HashSet<_>>().len() == self.values.len()
    }

    /// Points and multipliers where `n·φ^∘n(P) ≠ φ(nP)`.
    pub fn iteration_violations(&self, ns: &[u64]) -> Vec<(Pt2, u64)> {
        let f = self.field;
        let mut out = Vec::new();
        for pt in f.points() {
            for &n in ns {
                if n % f.p() == 0 {
                    continue;
                }
                let iter = (0..n).fold(pt, |q, _| self.eval(q));
                if f.scale(n, iter) != self.eval(f.scale(n, pt)) {
                    out.push((pt, n));
                }
            }
        }
        out
    }

    /// Table in the `a•b` cell format.
    pub fn render(&self) -> String {
        let e = self.field.elements();
        let mut s = String::from("x\\y");
        for y in &e {
            s.push_str(&format!("\t{y}"));
        }
        for (x, row) in e.iter().zip(self.grid()) {
            s.push_str(&format!("\n{x}"));
            for c in row {
                s.push_str(&format!("\t{c}"));
            }
        }
        s
    }
}

/// Assignment search for the completion: known cells fixed, unknown cells filled injectively
/// subject to `n·φ^∘n(P) = φ(nP)` for `2 ≤ n ≤ 2p`, `p ∤ n`.
struct CompletionSearch {
    field: Fp,
    points: Vec<Pt2>,
    values: Vec<Option<Pt2>>,
    used: HashSet<Pt2>,
    multipliers: Vec<u64>,
    nodes: usize,
}

const SEARCH_BUDGET: usize = 5_000_000;

impl CompletionSearch {
    fn get(&self, pt: Pt2) -> Option<Pt2> {
        self.values[self.field.point_index(pt)]
    }

    fn consistent(&self) -> bool {
        let f = self.field;
        for &pt in &self.points {
            for &n in &self.multipliers {
                let mut q = Some(pt);
                for _ in 0..n {
                    q = q.and_then(|q| self.get(q));
                }
                let (Some(q), Some(r)) = (q, self.get(f.scale(n, pt))) else { continue };
                if f.scale(n, q) != r {
                    return false;
                }
            }
        }
        true
    }

    fn solve(&mut self, unknown: &[Pt2]) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > SEARCH_BUDGET {
            return Err(Error::Completion("search budget exhausted".into()));
        }
        if !self.consistent() {
            return Ok(false);
        }
        let Some((&cell, rest)) = unknown.split_first() else { return Ok(true) };
        let idx = self.field.point_index(cell);
        for v in self.points.clone() {
            if self.used.contains(&v) {
                continue;
            }
            self.values[idx] = Some(v);
            self.used.insert(v);
            if self.solve(rest)? {
                return Ok(true);
            }
            self.used.remove(&v);
        }
        self.values[idx] = None;
        Ok(false)
    }

    fn count(&mut self, unknown: &[Pt2]) -> Result<usize> {
        self.nodes += 1;
        if self.nodes > SEARCH_BUDGET {
            return Err(Error::Completion("search budget exhausted".into()));
        }
        if !self.consistent() {
            return Ok(0);
        }
        let Some((&cell, rest)) = unknown.split_first() else { return Ok(1) };
        let idx = self.field.point_index(cell);
        let mut total = 0;
        for v in self.points.clone() {
            if self.used.insert(v) {
                self.values[idx] = Some(v);
                total += self.count(rest)?;
                self.used.remove(&v);
            }
        }
        self.values[idx] = None;
        Ok(total)
    }
}

/// Completes `φ_p` to a bijection of `(F̂_p)²` for `p ≡ 1 (mod 4)`.
///
/// The added points are formal symbols, so any completion is determined only up to a
/// relabeling of the symbols that commutes with scaling. The labels are fixed row-major over
/// the undefined finite cells: the first value fixed by all scalings is `0•∞`, the value at
/// `(−1, −1)` is `∞•∞`, the remaining fixed value is `∞•0`; the first value with a nontrivial
/// scaling orbit is `1•∞`, and the first value in the other such orbit is `∞•1`.
pub fn complete_phi(p: u64) -> Result<Completion> {
    let (f, points, mut search, unknown) = completion_search(p)?;
    if !search.solve(&unknown)? {
        return Err(Error::Completion(format!("no consistent completion for p = {p}")));
    }
    let raw: Vec<Pt2> = search.values.into_iter().map(|v| v.expect("complete")).collect();
    let values = canonical_labels(f, &points, &raw)?;
    let completion = Completion { field: f, values, completed: unknown };
    if !completion.is_bijective() || !completion.iteration_violations(&(2..=2 * p).collect::<Vec<_>>()).is_empty() {
        return Err(Error::Completion("relabeled completion is inconsistent".into()));
    }
    Ok(completion)
}

/// Number of completions before labels are fixed.
pub fn count_completions(p: u64) -> Result<usize> {
    let (_, _, mut search, unknown) = completion_search(p)?;
    search.count(&unknown)
}

fn completion_search(p: u64) -> Result<(Fp, Vec<Pt2>, CompletionSearch, Vec<Pt2>)> {
    let f = Fp::new(p)?;
    if p == 2 || !f.minus_one_is_square() {
        return Err(Error::InvalidArgument(format!("the torus completion needs p ≡ 1 (mod 4), got {p}")));
    }
    let points = f.points();
    let mut values = vec![None; points.len()];
    let mut used = HashSet::new();
    let mut unknown = Vec::new();
    for &pt in &points {
        match (pt.a, pt.b) {
            (PElem::Fin(x), PElem::Fin(y)) if phi_p_direct(f, x, y).is_some() => {
                let v = phi_p_direct(f, x, y).expect("defined");
                values[f.point_index(pt)] = Some(v);
                used.insert(v);
            }
            _ => unknown.push(pt),
        }
    }
    let multipliers = (2..=2 * p).filter(|n| n % p != 0).collect();
    let search = CompletionSearch { field: f, points: points.clone(), values, used, multipliers, nodes: 0 };
    Ok((f, points, search, unknown))
}

fn canonical_labels(f: Fp, points: &[Pt2], raw: &[Pt2]) -> Result<Vec<Pt2>> {
    let p = f.p();
    let inf = PElem::Inf;
    let zero = PElem::Fin(0);
    let fixed = [Pt2::new(zero, inf), Pt2::new(inf, zero), Pt2::new(inf, inf)];
    let value_at = |x: u64, y: u64| raw[f.point_index(Pt2::new(PElem::Fin(x), PElem::Fin(y)))];
    let undefined: Vec<(u64, u64)> =
        (0..p).flat_map(|x| (0..p).map(move |y| (x, y))).filter(|&(x, y)| phi_p_direct(f, x, y).is_none()).collect();
    let first_fixed = undefined.iter().map(|&(x, y)| value_at(x, y)).find(|v| fixed.contains(v));
    let corner = value_at(p - 1, p - 1);
    let (Some(first_fixed), true) = (first_fixed, fixed.contains(&corner) && Some(corner) != first_fixed) else {
        return Err(Error::Completion("fixed symbols cannot be labeled".into()));
    };
    let third = *fixed.iter().find(|v| **v != first_fixed && **v != corner).expect("three fixed symbols");
    let mut relabel: Vec<(Pt2, Pt2)> = vec![(first_fixed, fixed[0]), (corner, fixed[2]), (third, fixed[1])];

    // free orbits: `a•∞` and `∞•b` with a, b ≠ 0
    let orbit_of = |v: Pt2| -> Option<(bool, u64)> {
        match (v.a, v.b) {
            (PElem::Fin(a), PElem::Inf) if a != 0 => Some((true, a)),
            (PElem::Inf, PElem::Fin(b)) if b != 0 => Some((false, b)),
            _ => None,
        }
    };
    let free: Vec<(bool, u64)> = undefined.iter().filter_map(|&(x, y)| orbit_of(value_at(x, y))).collect();
    let (first_orbit, c1) = *free.first().ok_or_else(|| Error::Completion("no free symbols".into()))?;
    let &(second_orbit, c2) =
        free.iter().find(|(o, _)| *o != first_orbit).ok_or_else(|| Error::Completion("one free orbit".into()))?;
    let member = |orbit: bool, c: u64| if orbit { Pt2::new(PElem::Fin(c), inf) } else { Pt2::new(inf, PElem::Fin(c)) };
    let (i1, i2) = (f.inv_fin(c1), f.inv_fin(c2));
    for c in 1..p {
        relabel.push((member(first_orbit, c), member(true, c * i1 % p)));
        relabel.push((member(second_orbit, c), member(false, c * i2 % p)));
    }
    let forward = |v: Pt2| relabel.iter().find(|(from, _)| *from == v).map_or(v, |(_, to)| *to);
    let backward = |v: Pt2| relabel.iter().find(|(_, to)| *to == v).map_or(v, |(from, _)| *from);
    Ok(points.iter().map(|&pt| forward(raw[f.point_index(backward(pt))])).collect())
}

/// The Table 3 grid for `p`.
pub fn table3(p: u64) -> Result<Vec<Vec<Pt2>>> {
    Ok(complete_phi(p)?.grid())
}

/// `φ_p` on `(F̂_p)²`: the formula where defined, the completion elsewhere.
pub fn phi_p_eval(p: u64, x: PElem, y: PElem) -> Result<Pt2> {
    let f = Fp::new(p)?;
    if let (PElem::Fin(a), PElem::Fin(b)) = (x, y) {
        if let Some(v) = phi_p_direct(f, a, b) {
            return Ok(v);
        }
    }
    if !f.minus_one_is_square() {
        return Err(Error::Completion(format!("φ_{p} is completed by a single point at infinity, not on (F̂_p)²")));
    }
    Ok(complete_phi(p)?.eval(Pt2::new(x, y)))
}

/// Point of `F_p² ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpherePoint {
    Finite(u64, u64),
    Infinity,
}

/// `φ_p` on `F_p² ∪ {∞}` for `p ≡ 3 (mod 4)`, with `φ(−1, −1) = ∞` and `φ(∞) = 1•1`.
pub fn phi_sphere(f: Fp, pt: SpherePoint) -> SpherePoint {
    match pt {
        SpherePoint::Infinity => SpherePoint::Finite(1, 1),
        SpherePoint::Finite(x, y) => match phi_p_direct(f, x, y) {
            Some(Pt2 { a: PElem::Fin(a), b: PElem::Fin(b) }) => SpherePoint::Finite(a, b),
            _ => SpherePoint::Infinity,
        },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CardinalityCheck {
    pub flow: String,
    pub space: String,
    pub cardinality: usize,
    pub expected: usize,
    pub bijective: bool,
}

impl CardinalityCheck {
    pub fn pass(&self) -> bool {
        self.bijective && self.cardinality == self.expected
    }
}

fn bijective<T: Eq + std::hash::Hash>(images: impl Iterator<Item = T>, size: usize) -> bool {
    images.collect::<HashSet<_>>().len() == size
}

/// Bijectivity of the printed flows on their completed spaces.
pub fn cardinality_checks(p: u64) -> Result<Vec<CardinalityCheck>> {
    let f = Fp::new(p)?;
    if p == 2 || p > 13 {
        return Err(Error::InvalidArgument("cardinality checks need an odd p ≤ 13".into()));
    }
    let mut out = Vec::new();

    let affine: Vec<(u64, u64)> = (0..p).flat_map(|x| (0..p).map(move |y| (x, y))).collect();
    let quad = |(x, y): (u64, u64)| {
        let d = (x + p - y) % p;
        ((d * d + x) % p, (d * d + y) % p)
    };
    out.push(CardinalityCheck {
        flow: "(x−y)²+x • (x−y)²+y".into(),
        space: "F_p²".into(),
        cardinality: affine.len(),
        expected: (p * p) as usize,
        bijective: bijective(affine.iter().map(|&q| quad(q)), affine.len()),
    });

    let one = mobius_1d(f, 1);
    let torus = f.points();
    out.push(CardinalityCheck {
        flow: "x/(x+1) • y/(y+1)".into(),
        space: "(F̂_p)²".into(),
        cardinality: torus.len(),
        expected: ((p + 1) * (p + 1)) as usize,
        bijective: bijective(torus.iter().map(|pt| (one[f.index(pt.a)], one[f.index(pt.b)])), torus.len()),
    });

    let plane = projective_plane(p);
    let proj = |(x, y, z): (u64, u64, u64)| normalize_projective(p, (x, y, (x + y + z) % p));
    out.push(CardinalityCheck {
        flow: "x/(x+y+1) • y/(x+y+1)".into(),
        space: "P²(F_p)".into(),
        cardinality: plane.len(),
        expected: (p * p + p + 1) as usize,
        bijective: bijective(plane.iter().map(|&q| proj(q)), plane.len()),
    });

    if f.minus_one_is_square() {
        let c = complete_phi(p)?;
        out.push(CardinalityCheck {
            flow: format!("φ_{p}"),
            space: "(F̂_p)²".into(),
            cardinality: torus.len(),
            expected: ((p + 1) * (p + 1)) as usize,
            bijective: c.is_bijective(),
        });
    } else {
        let sphere: Vec<SpherePoint> =
            affine.iter().map(|&(x, y)| SpherePoint::Finite(x, y)).chain([SpherePoint::Infinity]).collect();
        out.push(CardinalityCheck {
            flow: format!("φ_{p}"),
            space: "F_p² ∪ {∞}".into(),
            cardinality: sphere.len(),
            expected: (p * p + 1) as usize,
            bijective: bijective(sphere.iter().map(|&s| phi_sphere(f, s)), sphere.len()),
        });
    }
    Ok(out)
}

/// Representatives of `P²(F_p)` with the last nonzero coordinate equal to 1.
pub fn projective_plane(p: u64) -> Vec<(u64, u64, u64)> {
    let mut v: Vec<(u64, u64, u64)> = (0..p).flat_map(|x| (0..p).map(move |y| (x, y, 1))).collect();
    v.extend((0..p).map(|x| (x, 1, 0)));
    v.push((1, 0, 0));
    v
}

fn normalize_projective(p: u64, (x, y, z): (u64, u64, u64)) -> (u64, u64, u64) {
    let lead = if z != 0 {
        z
    } else if y != 0 {
        y
    } else {
        x
    };
    let inv = pow_mod(lead, p - 2, p);
    (x * inv % p, y * inv % p, z * inv % p)
}

/// Affine points of `x²y + xy² + x² + y² = 0` over `F_p`.
pub fn cubic_point_count(p: u64) -> Result<usize> {
    Fp::new(p)?;
    Ok((0..p)
        .flat_map(|x| (0..p).map(move |y| (x, y)))
        .filter(|&(x, y)| (x * x % p * y + x * y % p * y + x * x + y * y) % p == 0)
        .count())
}
