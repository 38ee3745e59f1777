mod plot;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use proflow::closed_forms::{classical_flow_eval, lambda_eval, FlowKind};
use proflow::cnum::fmt_sig;
use proflow::elliptic::CurveE;
use proflow::finite_fields::{cardinality_checks, complete_phi, cubic_point_count, enumerate_1d_flows, Flow1dClass};
use proflow::identities::run_all;
use proflow::series::{diagonal_coeffs, flow_series, fn_polynomial, wn_table, Coord, VectorField2};
use proflow::special::{cm, cp, hyper_w, pi3, pi3_sixth, pi_const, sm, sp};
use proflow::verifier::{verify_all, verify_kind, with_thread_pool, VerifyConfig};
use proflow::CNum;

use report::{Entry, Report};

#[derive(Parser, Debug)]
#[command(name = "proflow", version, about = "Projective flows: series, closed forms, verification suites and plot data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact tables: the 𝔴 polynomials, diagonal coefficients, f_n polynomials, golden files
    #[command(subcommand)]
    Tables(TablesCmd),
    /// Homogeneous series layers of a quadratic vector field
    Series(SeriesArgs),
    /// Dixonian functions, W and constants
    #[command(subcommand)]
    Specialfn(SpecialCmd),
    /// Closed-form flows
    #[command(subcommand)]
    Flow(FlowCmd),
    /// Numerical verification of the defining equations
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// The curves XY(X − Y) = cZ³
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Quotient-ring identity checks
    #[command(subcommand)]
    Identities(IdentitiesCmd),
    /// Flows over finite fields
    #[command(subcommand)]
    Ff(FfCmd),
    /// Plot data as CSV, with optional SVG
    #[command(subcommand)]
    Plot(PlotCmd),
}

#[derive(Subcommand, Debug)]
enum TablesCmd {
    /// Rows 𝔴_1..𝔴_max
    W {
        #[arg(long, default_value_t = 15)]
        max: usize,
    },
    /// CSV of the coefficients of λ(z, −z)/z
    Diagonal {
        #[arg(long, default_value_t = 24)]
        n: usize,
    },
    /// The polynomial f_n(y)
    Fn {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 24)]
        depth: usize,
    },
    /// Compare outputs with the golden files, or rewrite them with --bless
    Golden {
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// First component, a quadratic form in x, y
    #[arg(long, default_value = "x^2 - 2*x*y")]
    w: String,
    /// Second component
    #[arg(long, default_value = "y^2 - 2*x*y")]
    r: String,
    #[arg(long, default_value_t = 8)]
    depth: usize,
    #[arg(long, value_enum, default_value_t = CoordArg::X)]
    coord: CoordArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CoordArg {
    X,
    Y,
}

#[derive(Subcommand, Debug)]
enum SpecialCmd {
    /// Evaluate at a complex argument
    Eval {
        #[arg(long = "fn", value_enum)]
        func: SpecialFn,
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        im: f64,
    },
    /// π₃, Π and π₃⁶
    Constants,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpecialFn {
    Sm,
    Cm,
    Sp,
    Cp,
    W,
}

#[derive(Subcommand, Debug)]
enum FlowCmd {
    /// Evaluate φ(x, y)
    Eval {
        #[arg(long)]
        kind: FlowKind,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        xi: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        yi: f64,
    },
    /// Sign grid of the first coordinate, same as `plot sign-grid`
    Grid(plot::SignGridArgs),
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Every flow with a closed form
    All(VerifyArgs),
    /// One flow
    Flow {
        #[arg(long)]
        kind: FlowKind,
        #[command(flatten)]
        args: VerifyArgs,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[arg(long, default_value_t = 5)]
    max_n: u32,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum CurveCmd {
    /// Points of finite order
    Torsion {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        json: bool,
    },
    /// Group relations, associativity and the translation property of the flow
    Verify {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum IdentitiesCmd {
    Run {
        /// Run every check (the only mode)
        #[arg(long, required = true)]
        all: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum FfCmd {
    /// The completed φ_p in `a•b` cells
    Table {
        #[arg(long, default_value_t = 5)]
        p: u64,
    },
    /// All one-dimensional flows over F_p ∪ {∞}
    Enum1d {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Bijectivity of the printed flows on their completed spaces
    Cardinality {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Affine points of x²y + xy² + x² + y² = 0
    Cubic {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand, Debug)]
enum PlotCmd {
    /// CSV `x,y,sign` of the first coordinate of the flow
    SignGrid(plot::SignGridArgs),
    /// CSV `x,y,u,v` of the normalized vector field
    VectorField(plot::VectorFieldArgs),
    /// CSV `t,x,y` of the orbit through a point
    Orbit(plot::OrbitArgs),
}

/// 12 significant digits.
pub(crate) fn sig(v: f64) -> String {
    fmt_sig(v, 12)
}

fn complex_text(z: Complex64) -> String {
    if z.im == 0.0 {
        sig(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{} {sign} {}i", sig(z.re), sig(z.im.abs()))
    }
}

/// `2`, `-1.5`, `2+1i`, `2-i`, `3i`.
fn parse_complex(s: &str) -> anyhow::Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(t.parse().with_context(|| format!("bad number `{s}`"))?, 0.0));
    };
    let split = body.char_indices().skip(1).filter(|&(i, ch)| (ch == '+' || ch == '-') && !body[..i].ends_with(['e', 'E'])).last();
    let (re, im) = match split {
        Some((i, _)) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse().with_context(|| format!("bad imaginary part in `{s}`"))?,
    };
    Ok(Complex64::new(re.parse().with_context(|| format!("bad real part in `{s}`"))?, im))
}

fn write_out(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Text for `tables w`.
fn table_w(max: usize) -> String {
    wn_table(max).iter().enumerate().map(|(i, p)| format!("{}\t{}\n", i + 1, p.to_pretty())).collect()
}

fn table_diagonal(n: usize) -> String {
    let mut s = String::from("index,numerator,denominator\n");
    for (i, c) in diagonal_coeffs(n).iter().enumerate() {
        s.push_str(&format!("{},{},{}\n", i + 1, c.numer(), c.denom()));
    }
    s
}

fn ff_table(p: u64) -> anyhow::Result<String> {
    Ok(complete_phi(p)?.render() + "\n")
}

fn ff_enum1d(p: u64, json: bool) -> anyhow::Result<String> {
    let flows = enumerate_1d_flows(p)?;
    if json {
        return Ok(serde_json::to_string_pretty(&flows)? + "\n");
    }
    let mut s = format!("p = {p}: {} flows\n", flows.count);
    for f in &flows.flows {
        let values: Vec<String> = f.values.iter().map(ToString::to_string).collect();
        let class = match f.class {
            Flow1dClass::Zero => "zero".to_string(),
            Flow1dClass::Infinity => "infinity".to_string(),
            Flow1dClass::Mobius { a } => format!("x/({a}x+1)"),
            Flow1dClass::Unclassified => "unclassified".to_string(),
        };
        s.push_str(&format!("[{}]\t{class}\n", values.join(", ")));
    }
    Ok(s)
}

fn curve_torsion(c: Complex64, json: bool) -> anyhow::Result<String> {
    let e = CurveE::new(CNum::from(c))?;
    let table = e.torsion_table();
    if json {
        return Ok(serde_json::to_string_pretty(&table)? + "\n");
    }
    let coords = |p: &proflow::elliptic::ProjPoint| {
        format!("({} : {} : {})", complex_text(p.x.c()), complex_text(p.y.c()), complex_text(p.z.c()))
    };
    let mut s = String::from("order\tpoint\tE(c) (X:Y:Z)\tÊ(c) (p:q:r)\n");
    for row in &table {
        let w = row.weierstrass.as_ref().map_or("-".to_string(), |w| coords(&w.normalized()));
        s.push_str(&format!("{}\t{}\t{}\t{}\n", row.order, row.name, coords(&row.point.normalized()), w));
    }
    Ok(s)
}

/// `(name, file, generator)` for every golden file.
type Golden = (&'static str, fn() -> anyhow::Result<String>);

const GOLDEN: &[Golden] = &[
    ("table1.txt", || Ok(table_w(15))),
    ("diagonal.csv", || Ok(table_diagonal(24))),
    ("table3_p5.txt", || ff_table(5)),
    ("enum1d_p5.json", || ff_enum1d(5, true)),
    ("torsion_c1.txt", || curve_torsion(Complex64::new(1.0, 0.0), false)),
];

fn golden(dir: Option<PathBuf>, bless: bool) -> anyhow::Result<bool> {
    let dir = dir.unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden"));
    let mut ok = true;
    for (name, gen) in GOLDEN {
        let path = dir.join(name);
        let text = gen()?;
        if bless {
            write_out(&path, &text)?;
            println!("wrote {}", path.display());
        } else {
            let same = fs::read_to_string(&path).is_ok_and(|g| g == text);
            println!("{} {name}", if same { "PASS" } else { "FAIL" });
            ok &= same;
        }
    }
    Ok(ok)
}

fn verify(kind: Option<FlowKind>, a: &VerifyArgs) -> anyhow::Result<bool> {
    let cfg = VerifyConfig { seed: a.seed, points: a.points, max_n: a.max_n, ..VerifyConfig::default() };
    let results = with_thread_pool(|| match kind {
        Some(k) => verify_kind(k, &cfg),
        None => verify_all(&cfg),
    });
    let ok = results.iter().all(|r| r.pass);
    for r in &results {
        println!(
            "{} {}/{}: {} points, max {} (tol {:e})",
            if r.pass { "PASS" } else { "FAIL" },
            r.flow,
            r.check,
            r.points,
            sig(r.max_residual),
            r.tolerance
        );
    }
    if let Some(path) = &a.report {
        write_out(path, &Report::new(Some(a.seed), results).to_json())?;
    }
    Ok(ok)
}

fn curve_verify(c: Complex64, seed: u64) -> anyhow::Result<Report> {
    use rand::SeedableRng;
    let e = CurveE::new(CNum::from(c))?;
    let mut entries = Vec::new();
    let table = e.torsion_table();
    for row in &table {
        let order = e.order(&row.point, 12)?;
        entries.push(Entry::new("torsion", row.name, order == Some(row.order as u64), row.order as f64, None));
    }
    let t = |n: &str| table.iter().find(|r| r.name == n).expect("torsion row").point.clone();
    let rel = [
        ("Q3 = 2Q6", e.mul(2, &t("Q6"))?.same_as(&t("Q3"))),
        ("Q2 = 3Q6", e.mul(3, &t("Q6"))?.same_as(&t("Q2"))),
        ("Q6 + Q2 = 2Q3", e.add(&t("Q6"), &t("Q2"))?.same_as(&t("2Q3"))),
        ("C12", e.c12_relations()?),
    ];
    for (name, pass) in rel {
        entries.push(Entry::new("relations", name, pass, f64::from(u8::from(pass)), None));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut assoc = 0.0f64;
    for _ in 0..30 {
        let (p, q, r) = (e.random_point(&mut rng), e.random_point(&mut rng), e.random_point(&mut rng));
        assoc = assoc.max(e.add(&e.add(&p, &q)?, &r)?.distance(&e.add(&p, &e.add(&q, &r)?)?));
    }
    entries.push(Entry::new("group_law", "associativity", assoc < 1e-7, assoc, Some(1e-7)));
    let mut trans = 0.0f64;
    for _ in 0..20 {
        trans = trans.max(e.translation_q3_check(&e.random_point(&mut rng))?);
    }
    entries.push(Entry::new("flow", "translation_by_Q3", trans < 1e-8, trans, Some(1e-8)));
    Ok(Report::new(Some(seed), entries))
}

fn identities(report: Option<&Path>) -> anyhow::Result<bool> {
    let checks = run_all()?;
    let summaries: Vec<_> = checks.iter().map(|c| c.summary()).collect();
    for s in &summaries {
        println!(
            "{} {}: certificate {} terms, numerator {} terms, modulus {}",
            if s.verdict { "PASS" } else { "FAIL" },
            s.name,
            s.certificate_terms.unwrap_or(0),
            s.lhs_numerator_terms,
            s.modulus
        );
    }
    if let Some(path) = report {
        write_out(path, &Report::new(None, summaries.clone()).to_json())?;
    }
    Ok(summaries.iter().all(|s| s.verdict))
}

fn cardinality(p: u64, json: bool) -> anyhow::Result<bool> {
    let checks = cardinality_checks(p)?;
    let ok = checks.iter().all(|c| c.pass());
    if json {
        print!("{}", serde_json::to_string_pretty(&checks)? + "\n");
    } else {
        for c in &checks {
            println!(
                "{} {} on {}: {} points (expected {}), bijective {}",
                if c.pass() { "PASS" } else { "FAIL" },
                c.flow,
                c.space,
                c.cardinality,
                c.expected,
                c.bijective
            );
        }
    }
    Ok(ok)
}

/// Runs a command; `Ok(false)` means a check failed.
fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Tables(t) => match t {
            TablesCmd::W { max } => print!("{}", table_w(max)),
            TablesCmd::Diagonal { n } => print!("{}", table_diagonal(n)),
            TablesCmd::Fn { n, depth } => println!("{}", fn_polynomial(n, depth)?.to_pretty()),
            TablesCmd::Golden { dir, bless } => return golden(dir, bless),
        },
        Command::Series(a) => {
            let vf = VectorField2::parse(&a.w, &a.r)?;
            let coord = match a.coord {
                CoordArg::X => Coord::X,
                CoordArg::Y => Coord::Y,
            };
            let s = flow_series(&vf, coord, a.depth)?;
            for (i, l) in s.layers().iter().enumerate() {
                println!("{}\t{}", i + 1, l);
            }
        }
        Command::Specialfn(s) => match s {
            SpecialCmd::Eval { func, re, im } => {
                let u = CNum::new(re, im);
                let v = match func {
                    SpecialFn::Sm => sm(u),
                    SpecialFn::Cm => cm(u),
                    SpecialFn::Sp => sp(u),
                    SpecialFn::Cp => cp(u),
                    SpecialFn::W => hyper_w(u)?,
                };
                if v.is_infinite() {
                    println!("value = ∞");
                } else {
                    println!("value = {}\nerr = {:e}", complex_text(v.c()), v.err);
                }
            }
            SpecialCmd::Constants => {
                println!("pi3 = {:.12}", pi3());
                println!("Pi = {:.12}", pi_const());
                println!("pi3^6 = {:.10}", pi3_sixth());
            }
        },
        Command::Flow(f) => match f {
            FlowCmd::Eval { kind, x, y, xi, yi } => {
                let (x, y) = (CNum::new(x, xi), CNum::new(y, yi));
                let v = if kind == FlowKind::Lambda {
                    let (u, v) = (lambda_eval(x, y), lambda_eval(y, x));
                    proflow::closed_forms::FlowValue::new(u, v)
                } else {
                    classical_flow_eval(kind, x, y)
                };
                if v.defined {
                    println!("u = {}\nv = {}", complex_text(v.u.c()), complex_text(v.v.c()));
                } else {
                    println!("undefined");
                }
            }
            FlowCmd::Grid(a) => plot::sign_grid(&a)?,
        },
        Command::Verify(v) => {
            return match v {
                VerifyCmd::All(a) => verify(None, &a),
                VerifyCmd::Flow { kind, args } => verify(Some(kind), &args),
            }
        }
        Command::Curve(c) => match c {
            CurveCmd::Torsion { c, json } => print!("{}", curve_torsion(parse_complex(&c)?, json)?),
            CurveCmd::Verify { c, seed, report } => {
                let r = curve_verify(parse_complex(&c)?, seed)?;
                print!("{}", r.to_text());
                if let Some(path) = report {
                    write_out(&path, &r.to_json())?;
                }
                return Ok(r.all_pass());
            }
        },
        Command::Identities(IdentitiesCmd::Run { all: _, report }) => return identities(report.as_deref()),
        Command::Ff(f) => match f {
            FfCmd::Table { p } => print!("{}", ff_table(p)?),
            FfCmd::Enum1d { p, json } => print!("{}", ff_enum1d(p, json)?),
            FfCmd::Cardinality { p, json } => return cardinality(p, json),
            FfCmd::Cubic { p } => println!("{}", cubic_point_count(p)?),
        },
        Command::Plot(p) => match p {
            PlotCmd::SignGrid(a) => plot::sign_grid(&a)?,
            PlotCmd::VectorField(a) => plot::vector_field(&a)?,
            PlotCmd::Orbit(a) => plot::orbit(&a)?,
        },
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<proflow::Error>().is_some_and(|pe| {
                matches!(pe, proflow::Error::InvalidArgument(_) | proflow::Error::Parse(_))
            });
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
