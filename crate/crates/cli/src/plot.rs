use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::Context;
use clap::Args;

use proflow::closed_forms::FlowKind;
use proflow::plots::{c0_curve, orbit_trace, pi_level_curve, sign_grid as grid_signs, vector_field_grid, Grid};

#[derive(Args, Debug)]
pub struct SignGridArgs {
    #[arg(long, default_value = "Lambda")]
    kind: FlowKind,
    /// `lo,hi`; the grid is `[lo, hi]²`
    #[arg(long, default_value = "-4,4", allow_hyphen_values = true)]
    range: String,
    #[arg(long, default_value_t = 200)]
    n: usize,
    /// CSV destination; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also draw an SVG with the overlay curves
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VectorFieldArgs {
    #[arg(long, default_value = "Lambda")]
    kind: FlowKind,
    #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
    range: String,
    #[arg(long, default_value_t = 40)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[arg(long, default_value = "Lambda")]
    kind: FlowKind,
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    #[arg(long, allow_hyphen_values = true)]
    y: f64,
    /// `t_lo,t_hi`
    #[arg(long, default_value = "-3,3", allow_hyphen_values = true)]
    t: String,
    #[arg(long, default_value_t = 400)]
    steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_range(s: &str) -> anyhow::Result<(f64, f64)> {
    let (a, b) = s.split_once(',').with_context(|| format!("range `{s}` should be lo,hi"))?;
    Ok((a.trim().parse().context("bad lower bound")?, b.trim().parse().context("bad upper bound")?))
}

fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn grid(range: &str, n: usize) -> anyhow::Result<Grid> {
    let (lo, hi) = parse_range(range)?;
    Ok(Grid::new(lo, hi, n)?)
}

/// Maps data coordinates in `[lo, hi]²` to a `size`-pixel square with `y` pointing up.
struct Canvas {
    lo: f64,
    hi: f64,
    size: f64,
    body: String,
}

impl Canvas {
    fn new(lo: f64, hi: f64) -> Self {
        Canvas { lo, hi, size: 600.0, body: String::new() }
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let s = self.size / (self.hi - self.lo);
        ((x - self.lo) * s, self.size - (y - self.lo) * s)
    }

    fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str) {
        let inside: Vec<String> = pts
            .iter()
            .filter(|(x, y)| (self.lo..=self.hi).contains(x) && (self.lo..=self.hi).contains(y))
            .map(|&(x, y)| {
                let (a, b) = self.px(x, y);
                format!("{a:.2},{b:.2}")
            })
            .collect();
        for p in inside {
            let (a, b) = p.split_once(',').expect("pair");
            let _ = writeln!(self.body, r#"<circle cx="{a}" cy="{b}" r="1.2" fill="{stroke}"/>"#);
        }
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n{1}</svg>\n",
            self.size, self.body
        )
    }
}

pub fn sign_grid(a: &SignGridArgs) -> anyhow::Result<()> {
    let g = grid(&a.range, a.n)?;
    let cells = grid_signs(a.kind, &g);
    let mut csv = String::from("x,y,sign\n");
    for c in &cells {
        let s = c.sign.map_or("nan".to_string(), |s| s.to_string());
        let _ = writeln!(csv, "{},{},{}", c.x, c.y, s);
    }
    emit(a.out.as_ref(), &csv)?;
    if let Some(path) = &a.svg {
        let mut canvas = Canvas::new(g.lo, g.hi);
        let cell = canvas.size / g.n as f64;
        for c in &cells {
            if c.sign == Some(-1) {
                let (x, y) = canvas.px(c.x, c.y);
                let _ = writeln!(
                    canvas.body,
                    r##"<rect x="{:.2}" y="{:.2}" width="{cell:.2}" height="{cell:.2}" fill="#bbb"/>"##,
                    x - cell / 2.0,
                    y - cell / 2.0
                );
            }
        }
        if a.kind == FlowKind::Lambda {
            canvas.polyline(&c0_curve(-60.0, 0.999, 2000)?, "black");
            canvas.polyline(&pi_level_curve(g.lo, g.hi, 2000), "red");
        }
        std::fs::write(path, canvas.finish()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

pub fn vector_field(a: &VectorFieldArgs) -> anyhow::Result<()> {
    let g = grid(&a.range, a.n)?;
    let arrows = vector_field_grid(a.kind, &g);
    let mut csv = String::from("x,y,u,v\n");
    for r in &arrows {
        let _ = writeln!(csv, "{},{},{},{}", r.x, r.y, r.u, r.v);
    }
    emit(a.out.as_ref(), &csv)?;
    if let Some(path) = &a.svg {
        let mut canvas = Canvas::new(g.lo, g.hi);
        let len = 0.4 * (g.hi - g.lo) / g.n as f64;
        for r in &arrows {
            let (x0, y0) = canvas.px(r.x, r.y);
            let (x1, y1) = canvas.px(r.x + len * r.u, r.y + len * r.v);
            let _ = writeln!(
                canvas.body,
                r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y1:.2}" stroke="black" stroke-width="1"/>"#
            );
        }
        std::fs::write(path, canvas.finish()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

pub fn orbit(a: &OrbitArgs) -> anyhow::Result<()> {
    let (lo, hi) = parse_range(&a.t)?;
    let pts = orbit_trace(a.kind, a.x, a.y, lo, hi, a.steps)?;
    let mut csv = String::from("t,x,y\n");
    for p in &pts {
        let _ = writeln!(csv, "{},{},{}", p.t, p.x, p.y);
    }
    emit(a.out.as_ref(), &csv)
}
