//! Numerical checks of the defining equations of a projective flow at sampled points.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{classical_flow_eval, FlowKind, FlowValue};
use crate::cnum::CNum;
use crate::error::{Error, Result};
use crate::exact::{CompiledRatFn, RationalFn};
use crate::series::VectorField2;

/// Step for the `z`-derivative at `z = 0`.
pub const Z_STEP: f64 = 1e-5;
/// Base step for spatial partial derivatives, scaled by `max(1, |x|, |y|)`.
pub const SPATIAL_STEP: f64 = 1e-5;
/// The `z` used by [`boundary_residual`].
pub const BOUNDARY_Z: f64 = 1e-6;
/// Sample points whose evaluations exceed this magnitude are treated as too close to a pole.
pub const SAMPLE_BOUND: f64 = 100.0;

type EvalFn = dyn Fn(CNum, CNum) -> FlowValue + Send + Sync;

/// A named flow `(x, y) ↦ φ(x, y)`.
#[derive(Clone)]
pub struct FlowEvaluator {
    pub name: String,
    eval: Arc<EvalFn>,
}

impl FlowEvaluator {
    pub fn new(name: impl Into<String>, eval: impl Fn(CNum, CNum) -> FlowValue + Send + Sync + 'static) -> Self {
        FlowEvaluator { name: name.into(), eval: Arc::new(eval) }
    }

    pub fn from_kind(kind: FlowKind) -> Self {
        Self::new(kind.to_string(), move |x, y| classical_flow_eval(kind, x, y))
    }

    pub fn eval(&self, x: CNum, y: CNum) -> FlowValue {
        (self.eval)(x, y)
    }

    fn eval_c(&self, x: Complex64, y: Complex64, what: &str) -> Result<(Complex64, Complex64)> {
        let f = self.eval(CNum::from_c(x, 0.0), CNum::from_c(y, 0.0));
        if !f.defined {
            return Err(Error::Undefined(format!("{} at {what} = ({x}, {y})", self.name)));
        }
        Ok(f.pair())
    }
}

impl fmt::Debug for FlowEvaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FlowEvaluator").field("name", &self.name).finish()
    }
}

fn max_norm(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> f64 {
    (a.0 - b.0).norm().max((a.1 - b.1).norm())
}

fn scale(p: (Complex64, Complex64), s: Complex64) -> (Complex64, Complex64) {
    (p.0 * s, p.1 * s)
}

/// `max |(1 − z)φ(x) − φ(φ(xz)(1 − z)/z)|` over both coordinates.
pub fn prte_residual(flow: &FlowEvaluator, x: CNum, y: CNum, z: CNum) -> Result<f64> {
    let (x, y, z) = (x.c(), y.c(), z.c());
    if z.norm() == 0.0 || (z - 1.0).norm() == 0.0 {
        return Err(Error::InvalidArgument("z must avoid 0 and 1".into()));
    }
    let lhs = scale(flow.eval_c(x, y, "x")?, 1.0 - z);
    let inner = scale(flow.eval_c(x * z, y * z, "xz")?, (1.0 - z) / z);
    let rhs = flow.eval_c(inner.0, inner.1, "φ(xz)(1 − z)/z")?;
    Ok(max_norm(lhs, rhs))
}

/// `|φ(xz, yz)/z − (x, y)|` at `z = 10⁻⁶`; of order `z` for a flow.
pub fn boundary_residual(flow: &FlowEvaluator, x: CNum, y: CNum) -> Result<f64> {
    let (x, y) = (x.c(), y.c());
    let z = BOUNDARY_Z;
    let v = scale(flow.eval_c(x * z, y * z, "xz")?, Complex64::new(1.0 / z, 0.0));
    Ok(max_norm(v, (x, y)))
}

/// `d/dz φ(xz, yz)/z` at `z = 0`, by central differences with one Richardson step.
pub fn vector_field_numeric(flow: &FlowEvaluator, x: CNum, y: CNum) -> Result<(CNum, CNum)> {
    let (x, y) = (x.c(), y.c());
    let g = |z: f64| -> Result<(Complex64, Complex64)> { Ok(scale(flow.eval_c(x * z, y * z, "xz")?, Complex64::new(1.0 / z, 0.0))) };
    let central = |h: f64| -> Result<(Complex64, Complex64)> {
        let (p, m) = (g(h)?, g(-h)?);
        Ok(((p.0 - m.0) / (2.0 * h), (p.1 - m.1) / (2.0 * h)))
    };
    let (d1, d2) = (central(Z_STEP)?, central(Z_STEP / 2.0)?);
    let r = ((4.0 * d2.0 - d1.0) / 3.0, (4.0 * d2.1 - d1.1) / 3.0);
    // rounding in g(±h) is amplified by 1/h
    let err = 4.0 * f64::EPSILON * (1.0 + x.norm() + y.norm()) / Z_STEP;
    Ok((CNum::from_c(r.0, err), CNum::from_c(r.1, err)))
}

/// `|f_x(ϖ − x) + f_y(ϱ − y) + f|` with central differences of step `h·max(1, |x|, |y|)`.
pub fn pde_residual_with_step(f: &dyn Fn(CNum, CNum) -> Result<CNum>, x: CNum, y: CNum, vf: &VectorField2, h: f64) -> Result<f64> {
    let h = h * 1f64.max(x.abs()).max(y.abs());
    let fx = (f(x + h, y)? - f(x - h, y)?) / (2.0 * h);
    let fy = (f(x, y + h)? - f(x, y - h)?) / (2.0 * h);
    let (w, r) = vf.eval(x.c(), y.c());
    let w = CNum::from_c(w, 0.0);
    let r = CNum::from_c(r, 0.0);
    Ok((fx * (w - x) + fy * (r - y) + f(x, y)?).abs())
}

pub fn pde_residual(f: &dyn Fn(CNum, CNum) -> Result<CNum>, x: CNum, y: CNum, vf: &VectorField2) -> Result<f64> {
    pde_residual_with_step(f, x, y, vf, SPATIAL_STEP)
}

/// One coordinate of a flow as a fallible function, for [`pde_residual`].
pub fn coordinate(flow: &FlowEvaluator, second: bool) -> impl Fn(CNum, CNum) -> Result<CNum> + '_ {
    move |x, y| {
        let v = flow.eval(x, y);
        if !v.defined {
            return Err(Error::Undefined(format!("{} at ({}, {})", flow.name, x.c(), y.c())));
        }
        Ok(if second { v.v } else { v.u })
    }
}

/// `|W(φ(xz, yz)/z) − W(x, y)|`.
pub fn orbit_invariance(flow: &FlowEvaluator, w: &RationalFn, x: CNum, y: CNum, z: CNum) -> Result<f64> {
    orbit_invariance_compiled(flow, &w.compile(), x, y, z)
}

fn orbit_invariance_compiled(flow: &FlowEvaluator, w: &CompiledRatFn, x: CNum, y: CNum, z: CNum) -> Result<f64> {
    let (x, y, z) = (x.c(), y.c(), z.c());
    if z.norm() == 0.0 {
        return Err(Error::InvalidArgument("z must be nonzero".into()));
    }
    let p = scale(flow.eval_c(x * z, y * z, "xz")?, 1.0 / z);
    Ok((w.eval(&[p.0, p.1]) - w.eval(&[x, y])).norm())
}

/// `max |n φ^∘n(x) − φ(nx)|`.
pub fn iteration_residual(flow: &FlowEvaluator, x: CNum, y: CNum, n: u32) -> Result<f64> {
    let (x, y) = (x.c(), y.c());
    let mut p = (x, y);
    for _ in 0..n {
        p = flow.eval_c(p.0, p.1, "φ∘k")?;
    }
    let nf = n as f64;
    let rhs = flow.eval_c(x * nf, y * nf, "nx")?;
    Ok(max_norm(scale(p, Complex64::new(nf, 0.0)), rhs))
}

/// Which defining equation a [`CheckReport`] refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Prte,
    Boundary,
    VectorField,
    Pde,
    Orbit,
    Iteration,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::Prte => "prte",
            Check::Boundary => "boundary",
            Check::VectorField => "vector_field",
            Check::Pde => "pde",
            Check::Orbit => "orbit",
            Check::Iteration => "iteration",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub flow: String,
    pub check: Check,
    pub points: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Where sample points are drawn from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Region {
    /// `|x|, |y| ≤ r` in `ℂ²`, and `z` with `0.1 ≤ |z| ≤ 1`, `|1 − z| ≥ 0.1`.
    Polydisk(f64),
    /// Real `x, y ∈ (0, r)` and `z ∈ (0.1, 0.9)`, a single-branch region for ramified flows.
    PositiveReals(f64),
}

impl Region {
    /// The default region for a kind: the bi-unit polydisk, or positive reals for `log`.
    pub fn for_kind(kind: FlowKind) -> Region {
        if kind.is_unramified() {
            Region::Polydisk(1.0)
        } else {
            Region::PositiveReals(1.0)
        }
    }

    fn scaled(self, s: f64) -> Region {
        match self {
            Region::Polydisk(r) => Region::Polydisk(r * s),
            Region::PositiveReals(r) => Region::PositiveReals(r * s),
        }
    }

    fn sample(self, rng: &mut ChaCha8Rng) -> (CNum, CNum, CNum) {
        match self {
            Region::Polydisk(r) => {
                let mut disk = |rad: f64| {
                    let t: f64 = rng.gen::<f64>().sqrt() * rad;
                    CNum::cis(rng.gen_range(0.0..std::f64::consts::TAU)) * t
                };
                let (x, y) = (disk(r), disk(r));
                loop {
                    let z = disk(1.0);
                    if z.abs() >= 0.1 && (1.0 - z).abs() >= 0.1 {
                        return (x, y, z);
                    }
                }
            }
            Region::PositiveReals(r) => {
                let x = CNum::real(rng.gen_range(1e-3..r));
                let y = CNum::real(rng.gen_range(1e-3..r));
                (x, y, CNum::real(rng.gen_range(0.1..0.9)))
            }
        }
    }
}

/// Settings for [`verify_kind`] and [`verify_all`].
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub points: usize,
    /// Points for the vector-field comparison.
    pub field_points: usize,
    pub max_n: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 1, points: 100, field_points: 20, max_n: 5 }
    }
}

/// Tolerance of each check.
pub fn tolerance(check: Check) -> f64 {
    match check {
        Check::Prte | Check::Orbit | Check::Iteration => 1e-8,
        Check::Boundary | Check::VectorField => 1e-4,
        Check::Pde => 1e-5,
    }
}

fn mixed_seed(seed: u64, kind: &str, check: Check, i: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    for b in kind.bytes().chain(check.to_string().bytes()).chain((i as u64).to_le_bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn in_bounds(v: (Complex64, Complex64)) -> bool {
    v.0.norm() <= SAMPLE_BOUND && v.1.norm() <= SAMPLE_BOUND
}

/// Whether `(x, y, z)` stays away from the flow's poles for every evaluation the checks make.
fn admissible(flow: &FlowEvaluator, x: CNum, y: CNum, z: CNum) -> bool {
    let (xc, yc, zc) = (x.c(), y.c(), z.c());
    let Ok(a) = flow.eval_c(xc, yc, "x") else { return false };
    let Ok(b) = flow.eval_c(xc * zc, yc * zc, "xz") else { return false };
    let inner = scale(b, (1.0 - zc) / zc);
    let Ok(c) = flow.eval_c(inner.0, inner.1, "inner") else { return false };
    in_bounds(a) && in_bounds(inner) && in_bounds(c)
}

/// Draws admissible points and returns the largest residual of `check` over them.
fn run_check(
    flow: &FlowEvaluator,
    region: Region,
    check: Check,
    count: usize,
    seed: u64,
    residual: &(dyn Fn(CNum, CNum, CNum) -> Result<f64> + Sync),
) -> CheckReport {
    let results: Vec<Result<f64>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(mixed_seed(seed, &flow.name, check, i));
            for _ in 0..10_000 {
                let (x, y, z) = region.sample(&mut rng);
                if admissible(flow, x, y, z) {
                    return residual(x, y, z);
                }
            }
            Err(Error::Domain(format!("no admissible sample for {}", flow.name)))
        })
        .collect();
    let tol = tolerance(check);
    let mut max = 0.0f64;
    let mut ok = true;
    for r in &results {
        match r {
            Ok(v) if v.is_finite() => max = max.max(*v),
            _ => {
                ok = false;
                max = f64::INFINITY;
            }
        }
    }
    CheckReport { flow: flow.name.clone(), check, points: count, max_residual: max, tolerance: tol, pass: ok && max < tol }
}

/// Every check that applies to one catalogued kind.
pub fn verify_kind(kind: FlowKind, cfg: &VerifyConfig) -> Vec<CheckReport> {
    let flow = FlowEvaluator::from_kind(kind);
    let region = Region::for_kind(kind);
    let vf = kind.vector_field();
    let mut out = Vec::new();
    out.push(run_check(&flow, region, Check::Prte, cfg.points, cfg.seed, &|x, y, z| prte_residual(&flow, x, y, z)));
    out.push(run_check(&flow, region, Check::Boundary, cfg.points, cfg.seed, &|x, y, _| boundary_residual(&flow, x, y)));
    let field = vf.w.compile();
    let field_r = vf.r.compile();
    out.push(run_check(&flow, region, Check::VectorField, cfg.field_points, cfg.seed, &|x, y, _| {
        let (u, v) = vector_field_numeric(&flow, x, y)?;
        let (p, q) = (field.eval(&[x.c(), y.c()]), field_r.eval(&[x.c(), y.c()]));
        Ok((u.c() - p).norm().max((v.c() - q).norm()))
    }));
    out.push(run_check(&flow, region, Check::Pde, cfg.points, cfg.seed, &|x, y, _| {
        let a = pde_residual(&coordinate(&flow, false), x, y, &vf)?;
        let b = pde_residual(&coordinate(&flow, true), x, y, &vf)?;
        Ok(a.max(b))
    }));
    if let Some(w) = kind.orbit_invariant() {
        let w = w.compile();
        out.push(run_check(&flow, region, Check::Orbit, cfg.points, cfg.seed, &|x, y, z| orbit_invariance_compiled(&flow, &w, x, y, z)));
    }
    if matches!(kind, FlowKind::Lambda | FlowKind::Exp | FlowKind::Tan | FlowKind::E | FlowKind::T) {
        // nx must stay inside the sampling region for n = 3
        out.push(run_check(&flow, region.scaled(1.0 / 3.0), Check::Iteration, cfg.points, cfg.seed, &|x, y, _| {
            Ok(iteration_residual(&flow, x, y, 2)?.max(iteration_residual(&flow, x, y, 3)?))
        }));
    }
    out
}

/// Runs [`verify_kind`] for the whole catalogue with `φ_N`, `N ≤ cfg.max_n`.
pub fn verify_all(cfg: &VerifyConfig) -> Vec<CheckReport> {
    FlowKind::catalogue(cfg.max_n).into_iter().flat_map(|k| verify_kind(k, cfg)).collect()
}

/// Runs `f` on a pool sized by `PROFLOW_THREADS` when set, otherwise on the global pool.
pub fn with_thread_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match std::env::var("PROFLOW_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: f64) -> CNum {
        CNum::real(v)
    }

    #[test]
    fn documented_examples() {
        let id = FlowEvaluator::from_kind(FlowKind::Identity);
        let lam = FlowEvaluator::from_kind(FlowKind::Lambda);
        let exp = FlowEvaluator::from_kind(FlowKind::Exp);
        assert!(prte_residual(&id, CNum::new(0.3, 0.2), r(-0.5), r(0.4)).unwrap() < 1e-15);
        assert!(prte_residual(&lam, r(0.7), r(0.2), r(0.4)).unwrap() < 1e-9);
        let phi2 = FlowEvaluator::from_kind(FlowKind::PhiN(2));
        assert!(prte_residual(&phi2, r(1.0), r(1.0), r(0.5)).unwrap() < 1e-12);
        assert_eq!(boundary_residual(&id, r(1.0), r(2.0)).unwrap(), 0.0);
        assert!(boundary_residual(&lam, r(1.0), r(2.0)).unwrap() < 1e-4);
        assert!(boundary_residual(&exp, r(3.0), r(1.0)).unwrap() < 1e-4);
        let (u, v) = vector_field_numeric(&lam, r(1.0), r(1.0)).unwrap();
        assert!(u.dist(r(-1.0)) < 1e-5 && v.dist(r(-1.0)) < 1e-5);
        let (u, v) = vector_field_numeric(&exp, r(2.0), r(3.0)).unwrap();
        assert!(u.dist(r(6.0)) < 1e-5 && v.abs() < 1e-5);
        let (u, v) = vector_field_numeric(&id, r(2.0), r(3.0)).unwrap();
        assert_eq!((u.abs(), v.abs()), (0.0, 0.0));
    }

    #[test]
    fn pde_examples() {
        let lam = FlowEvaluator::from_kind(FlowKind::Lambda);
        let vf = VectorField2::elliptic();
        assert!(pde_residual(&coordinate(&lam, false), r(0.3), r(0.1), &vf).unwrap() < 1e-5);
        let e = FlowEvaluator::from_kind(FlowKind::E);
        assert!(pde_residual(&coordinate(&e, false), r(0.5), r(0.2), &FlowKind::E.vector_field()).unwrap() < 1e-5);
        // u = x is not a flow coordinate for the field (x², y²)
        let wrong = VectorField2::parse("x^2", "y^2").unwrap();
        let id = FlowEvaluator::from_kind(FlowKind::Identity);
        assert!(pde_residual(&coordinate(&id, false), r(0.5), r(0.2), &wrong).unwrap() > 0.1);
    }

    #[test]
    fn second_order_stencil() {
        let lam = FlowEvaluator::from_kind(FlowKind::Lambda);
        let vf = VectorField2::elliptic();
        let f = coordinate(&lam, false);
        let (x, y) = (r(0.6), r(-0.45));
        let a = pde_residual_with_step(&f, x, y, &vf, 2e-2).unwrap();
        let b = pde_residual_with_step(&f, x, y, &vf, 1e-2).unwrap();
        let ratio = a / b;
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn orbit_examples() {
        let check = |k: FlowKind, p: (f64, f64, f64), tol: f64| {
            let f = FlowEvaluator::from_kind(k);
            let w = k.orbit_invariant().unwrap();
            let v = orbit_invariance(&f, &w, r(p.0), r(p.1), r(p.2)).unwrap();
            assert!(v < tol, "{k}: {v}");
        };
        check(FlowKind::Lambda, (0.9, 0.3, 0.7), 1e-8);
        check(FlowKind::E, (1.0, 2.0, 0.5), 1e-12);
        check(FlowKind::PhiN(3), (1.0, 1.0, 2.0), 1e-12);
    }

    #[test]
    fn undefined_intermediate_is_named() {
        let f = FlowEvaluator::from_kind(FlowKind::PhiN(2));
        let e = prte_residual(&f, r(1.0), r(-1.0), r(0.5)).unwrap_err();
        assert!(matches!(e, Error::Undefined(ref s) if s.contains("phi2")));
    }

    #[test]
    fn catalogue_passes() {
        let cfg = VerifyConfig { points: 30, field_points: 10, ..Default::default() };
        for rep in verify_all(&cfg) {
            assert!(rep.pass, "{rep:?}");
        }
    }
}
