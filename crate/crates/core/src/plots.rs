//! Plot data: sign grids, normalized vector fields, orbits and overlay curves.

use num_complex::Complex64;
use serde::Serialize;

use crate::closed_forms::{classical_flow_eval, lambda_eval, FlowKind};
use crate::error::{Error, Result};
use crate::special::{hyper_w, pi_const};
use crate::CNum;

/// Axis-aligned square `[lo, hi]²` sampled at `n` cell centres per side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n == 0 || !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidArgument(format!("bad grid [{lo}, {hi}] with {n} cells")));
        }
        Ok(Grid { lo, hi, n })
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.lo + (i as f64 + 0.5) * (self.hi - self.lo) / self.n as f64
    }

    /// Points in row-major order, `y` outer and `x` inner.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.n).flat_map(move |j| (0..self.n).map(move |i| (self.coord(i), self.coord(j))))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SignCell {
    pub x: f64,
    pub y: f64,
    /// `−1`, `0` or `1`; `None` where the flow is undefined or not real.
    pub sign: Option<i8>,
}

fn real_first_coordinate(kind: FlowKind, x: f64, y: f64) -> Option<f64> {
    let u = if kind == FlowKind::Lambda {
        lambda_eval(CNum::real(x), CNum::real(y))
    } else {
        let v = classical_flow_eval(kind, CNum::real(x), CNum::real(y));
        if !v.defined {
            return None;
        }
        v.u
    };
    (u.is_finite() && u.im.abs() <= 1e-9 * (1.0 + u.re.abs())).then_some(u.re)
}

/// Sign of the first coordinate `u(x, y)` of the flow on the grid.
pub fn sign_grid(kind: FlowKind, grid: &Grid) -> Vec<SignCell> {
    grid.points()
        .map(|(x, y)| {
            let sign = real_first_coordinate(kind, x, y).map(|u| if u > 0.0 { 1 } else if u < 0.0 { -1 } else { 0 });
            SignCell { x, y, sign }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Arrow {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub v: f64,
}

/// The vector field scaled to unit length; zero where it vanishes.
pub fn vector_field_grid(kind: FlowKind, grid: &Grid) -> Vec<Arrow> {
    let vf = kind.vector_field();
    grid.points()
        .map(|(x, y)| {
            let (w, r) = vf.eval(Complex64::new(x, 0.0), Complex64::new(y, 0.0));
            let norm = w.re.hypot(r.re);
            let (u, v) = if norm > 0.0 && norm.is_finite() { (w.re / norm, r.re / norm) } else { (0.0, 0.0) };
            Arrow { x, y, u, v }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrbitPoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

/// `φ(tx, ty)/t` for `t` in `[t_lo, t_hi]`, skipping `t = 0`, undefined and non-real values.
pub fn orbit_trace(kind: FlowKind, x: f64, y: f64, t_lo: f64, t_hi: f64, steps: usize) -> Result<Vec<OrbitPoint>> {
    if steps < 2 || !(t_lo < t_hi) {
        return Err(Error::InvalidArgument("orbit needs t_lo < t_hi and at least two steps".into()));
    }
    let mut out = Vec::with_capacity(steps);
    for k in 0..steps {
        let t = t_lo + (t_hi - t_lo) * k as f64 / (steps - 1) as f64;
        if t.abs() < 1e-12 {
            out.push(OrbitPoint { t, x, y });
            continue;
        }
        let (u, v) = if kind == FlowKind::Lambda {
            (lambda_eval(CNum::real(x * t), CNum::real(y * t)), lambda_eval(CNum::real(y * t), CNum::real(x * t)))
        } else {
            let f = classical_flow_eval(kind, CNum::real(x * t), CNum::real(y * t));
            if !f.defined {
                continue;
            }
            (f.u, f.v)
        };
        let real = |c: CNum| c.is_finite() && c.im.abs() <= 1e-9 * (1.0 + c.re.abs());
        if real(u) && real(v) {
            out.push(OrbitPoint { t, x: u.re / t, y: v.re / t });
        }
    }
    Ok(out)
}

/// Samples `(xW(x), W(x))` of the curve where `λ` vanishes to second order, for `x` in `[lo, hi]`, `hi < 1`.
pub fn c0_curve(lo: f64, hi: f64, n: usize) -> Result<Vec<(f64, f64)>> {
    if !(lo < hi && hi < 1.0) || n < 2 {
        return Err(Error::InvalidArgument("need lo < hi < 1 and n ≥ 2".into()));
    }
    (0..n)
        .map(|k| {
            let x = lo + (hi - lo) * k as f64 / (n - 1) as f64;
            let w = hyper_w(CNum::real(x))?.re;
            Ok((x * w, w))
        })
        .collect()
}

/// Real points of `xy(x − y) = c` with `x` sampled in `[lo, hi]`, both branches in `y`.
pub fn level_curve(c: f64, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for k in 0..n.max(2) {
        let x = lo + (hi - lo) * k as f64 / (n.max(2) - 1) as f64;
        if x.abs() < 1e-12 {
            continue;
        }
        // x y² − x² y + c = 0
        let disc = x.powi(4) - 4.0 * x * c;
        if disc < 0.0 {
            continue;
        }
        let s = disc.sqrt();
        for y in [(x * x + s) / (2.0 * x), (x * x - s) / (2.0 * x)] {
            out.push((x, y));
        }
    }
    out
}

/// The level curve `xy(x − y) = Π` drawn over the sign grid.
pub fn pi_level_curve(lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    level_curve(pi_const(), lo, hi, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_centres() {
        let g = Grid::new(-4.0, 4.0, 1).unwrap();
        assert_eq!(g.points().collect::<Vec<_>>(), vec![(0.0, 0.0)]);
        assert!(Grid::new(1.0, 1.0, 3).is_err());
        assert_eq!(Grid::new(0.0, 1.0, 4).unwrap().points().count(), 16);
    }

    #[test]
    fn lambda_signs() {
        let g = Grid::new(-4.0, 4.0, 20).unwrap();
        let cells = sign_grid(FlowKind::Lambda, &g);
        assert_eq!(cells.len(), 400);
        assert!(cells.iter().any(|c| c.sign == Some(1)) && cells.iter().any(|c| c.sign == Some(-1)));
        // near the origin λ(x, y) ≈ x
        let s = sign_grid(FlowKind::Lambda, &Grid::new(0.01, 0.02, 1).unwrap());
        assert_eq!(s[0].sign, Some(1));
    }

    #[test]
    fn arrows_are_unit() {
        let a = vector_field_grid(FlowKind::Lambda, &Grid::new(-1.0, 1.0, 40).unwrap());
        assert_eq!(a.len(), 1600);
        assert!(a.iter().all(|r| (r.u.hypot(r.v) - 1.0).abs() < 1e-12 || (r.u == 0.0 && r.v == 0.0)));
    }

    #[test]
    fn orbit_stays_on_level_set() {
        let (x, y) = (0.3, -0.2);
        let c = x * y * (x - y);
        let orbit = orbit_trace(FlowKind::Lambda, x, y, -1.0, 1.0, 41).unwrap();
        assert!(orbit.len() > 20);
        for p in orbit {
            assert!((p.x * p.y * (p.x - p.y) - c).abs() < 1e-9, "{p:?}");
        }
    }

    #[test]
    fn overlay_curves() {
        let c0 = c0_curve(-2.0, 0.8, 15).unwrap();
        for (x, y) in c0 {
            assert!(lambda_eval(CNum::real(x), CNum::real(y)).abs() < 1e-8);
        }
        for (x, y) in pi_level_curve(-4.0, 4.0, 50) {
            assert!((x * y * (x - y) - pi_const()).abs() < 1e-9);
        }
        assert!(c0_curve(0.0, 1.0, 5).is_err());
    }
}
