//! Exact quotient-ring identities of the avatars, superflow symmetry checks, the quasi-flow
//! condition and the arithmetic classification of unramified quadratic fields.

use std::fmt;
use std::sync::{Arc, LazyLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cnum::CNum;
use crate::error::{Error, Result};
use crate::exact::{int, parse_poly, parse_ratfn, rat, vars, CompiledRatFn, MultiPoly, Rational, RationalFn, Vars};
use crate::expressions::{r_avatar, r_modulus, t_avatar, t_modulus, ABXY, R_COMPILED};
use crate::series::{VectorField2, XY};
use crate::special::{sm_cm, sp_cp};

/// Variables of the avatar after fixing `A = 1`.
pub static BXY: LazyLock<Vars> = LazyLock::new(|| vars(&["B", "x", "y"]));

/// Modulus of the `A = 1` reduction: `B(1 − B) − xy(x − y)`.
pub const B_MODULUS: &str = "B*(1-B) - x*y*(x-y)";

/// How numeric spot checks choose `(A, B)` consistent with `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `A = sm(ς)/ς`, `B = cm(ς)` with `ς³ = xy(x − y)`.
    Dixon,
    /// `A = sp(ς)ς`, `B = cp(ς)ς`.
    DixonPrime,
    /// `B = ½ + ½√(1 − 4xy(x − y))` in the variables `(B, x, y)`.
    Quadratic,
}

/// Outcome of testing `lhs ≡ 0` modulo a principal ideal.
#[derive(Clone, Debug)]
pub struct QuotientCheck {
    pub name: String,
    pub lhs: RationalFn,
    pub modulus: MultiPoly,
    /// The numerator lies in the ideal and the denominator does not.
    pub verdict: bool,
    /// `numerator / modulus` when divisible.
    pub certificate: Option<MultiPoly>,
    pub relation: Relation,
    /// Evaluates the left side term by term, avoiding the cancellation of the expanded form.
    pub numeric: Option<NumericLhs>,
}

type LhsFn = dyn Fn(&[Complex64]) -> Option<Complex64> + Send + Sync;

#[derive(Clone)]
pub struct NumericLhs(Arc<LhsFn>);

impl NumericLhs {
    pub fn new(f: impl Fn(&[Complex64]) -> Option<Complex64> + Send + Sync + 'static) -> Self {
        NumericLhs(Arc::new(f))
    }
}

impl fmt::Debug for NumericLhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("NumericLhs")
    }
}

impl QuotientCheck {
    /// Tests `lhs` against `modulus`, first removing factors of the modulus shared by
    /// numerator and denominator.
    pub fn new(name: &str, lhs: RationalFn, modulus: MultiPoly, relation: Relation) -> Result<Self> {
        let mut num = lhs.num().clone();
        let mut den = lhs.den().clone();
        let certificate = loop {
            let q = num.exact_divide(&modulus)?;
            match (q, den.exact_divide(&modulus)?) {
                (Some(qn), Some(qd)) => {
                    num = qn;
                    den = qd;
                }
                (q, _) => break q,
            }
        };
        let verdict = certificate.is_some();
        Ok(QuotientCheck { name: name.to_string(), lhs, modulus, verdict, certificate, relation, numeric: None })
    }

    pub fn with_numeric(mut self, f: NumericLhs) -> Self {
        self.numeric = Some(f);
        self
    }

    /// Whether `lhs` vanishes as a rational function, without the relation.
    pub fn holds_identically(&self) -> bool {
        self.lhs.is_zero()
    }

    /// Largest `|lhs|` over `samples` random points of the relation's variety.
    pub fn spot_check(&self, seed: u64, samples: usize) -> f64 {
        let compiled = self.lhs.compile();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        let mut taken = 0;
        let mut attempts = 0;
        while taken < samples && attempts < 50 * samples {
            attempts += 1;
            let x = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
            let y = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
            let Some(point) = consistent_point(self.relation, x, y) else { continue };
            let value = match &self.numeric {
                Some(f) => f.0(&point),
                None => compiled.eval_checked(&point).map(|(v, _)| v),
            };
            let Some(v) = value else { continue };
            if !v.norm().is_finite() || v.norm() > 1e6 {
                continue;
            }
            worst = worst.max(v.norm());
            taken += 1;
        }
        worst
    }

    pub fn summary(&self) -> QuotientSummary {
        QuotientSummary {
            name: self.name.clone(),
            verdict: self.verdict,
            identically_zero: self.holds_identically(),
            modulus: self.modulus.to_pretty(),
            lhs_numerator_terms: self.lhs.num().len(),
            lhs_denominator_terms: self.lhs.den().len(),
            certificate_terms: self.certificate.as_ref().map(MultiPoly::len),
        }
    }
}

impl fmt::Display for QuotientCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cert = self.certificate.as_ref().map_or("none".to_string(), |c| format!("{} terms", c.len()));
        write!(f, "{}: {} mod ({}), certificate {}", self.name, self.verdict, self.modulus.to_pretty(), cert)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientSummary {
    pub name: String,
    pub verdict: bool,
    pub identically_zero: bool,
    pub modulus: String,
    pub lhs_numerator_terms: usize,
    pub lhs_denominator_terms: usize,
    pub certificate_terms: Option<usize>,
}

fn consistent_point(relation: Relation, x: Complex64, y: Complex64) -> Option<Vec<Complex64>> {
    let c = x * y * (x - y);
    match relation {
        Relation::Dixon | Relation::DixonPrime => {
            if c.norm() < 1e-6 {
                return None;
            }
            let s = CNum::from_c(c, 0.0).cbrt();
            let (a, b) = if relation == Relation::Dixon {
                let (sm, cm) = sm_cm(s);
                ((sm / s).c(), cm.c())
            } else {
                let (sp, cp) = sp_cp(s);
                ((sp * s).c(), (cp * s).c())
            };
            (a.norm().is_finite() && b.norm().is_finite()).then(|| vec![a, b, x, y])
        }
        Relation::Quadratic => {
            let b = 0.5 + 0.5 * (1.0 - 4.0 * c).sqrt();
            Some(vec![b, x, y])
        }
    }
}

fn var(v: &Vars, name: &str) -> RationalFn {
    RationalFn::var(v, name).expect("known variable")
}

fn ratfn(src: &str, v: &Vars) -> RationalFn {
    parse_ratfn(src, v).expect("static expression")
}

/// `ℛ(A, B; x, y) + ℛ(A, B; −y, x − y) + ℛ(A, B; y − x, −x)`, optionally without the third summand.
pub fn symm_lhs_1(all_three: bool) -> RationalFn {
    let v = &*ABXY;
    let r = r_avatar();
    let (a, b) = (var(v, "A"), var(v, "B"));
    let second = r.substitute(&[a.clone(), b.clone(), ratfn("-y", v), ratfn("x-y", v)]);
    let mut lhs = &r + &second;
    if all_three {
        lhs = &lhs + &r.substitute(&[a, b, ratfn("y-x", v), ratfn("-x", v)]);
    }
    lhs
}

/// `ℛ(A, B; x, y) + sign · ℛ(A/B, 1/B; −x, y − x)`.
pub fn symm_lhs_2(sign: i64) -> RationalFn {
    let v = &*ABXY;
    let r = r_avatar();
    let second = r.substitute(&[ratfn("A/B", v), ratfn("1/B", v), ratfn("-x", v), ratfn("y-x", v)]);
    &r + &second.scale(&int(sign))
}

fn r_numeric(p: &[Complex64]) -> Option<Complex64> {
    R_COMPILED.eval_checked(p).map(|(v, _)| v)
}

pub fn symm_identity_1() -> Result<QuotientCheck> {
    let numeric = NumericLhs::new(|p| {
        let (a, b, x, y) = (p[0], p[1], p[2], p[3]);
        Some(r_numeric(p)? + r_numeric(&[a, b, -y, x - y])? + r_numeric(&[a, b, y - x, -x])?)
    });
    Ok(QuotientCheck::new("symm_identity_1", symm_lhs_1(true), r_modulus(), Relation::Dixon)?.with_numeric(numeric))
}

pub fn symm_identity_2() -> Result<QuotientCheck> {
    let numeric = NumericLhs::new(|p| {
        let (a, b, x, y) = (p[0], p[1], p[2], p[3]);
        Some(r_numeric(p)? + r_numeric(&[a / b, b.inv(), -x, y - x])?)
    });
    Ok(QuotientCheck::new("symm_identity_2", symm_lhs_2(1), r_modulus(), Relation::Dixon)?.with_numeric(numeric))
}

/// `P/Q` with the numerators `P_i Q − P Q_i` of its partial derivatives over `Q²`.
struct Quotient {
    p: MultiPoly,
    q: MultiPoly,
    partials: Vec<MultiPoly>,
}

impl Quotient {
    fn new(f: &RationalFn) -> Self {
        let (p, q) = (f.num().clone(), f.den().clone());
        let partials = (0..f.vars().len()).map(|i| &(&p.derivative(i) * &q) - &(&p * &q.derivative(i))).collect();
        Quotient { p, q, partials }
    }

    fn q_squared(&self) -> MultiPoly {
        &self.q * &self.q
    }
}

/// Value and partial derivatives of a rational function from separately compiled pieces.
struct NumericPartials {
    value: CompiledRatFn,
    partials: Vec<CompiledRatFn>,
}

impl NumericPartials {
    fn new(f: &RationalFn) -> Self {
        NumericPartials { value: f.compile(), partials: (0..f.vars().len()).map(|i| f.derivative(i).compile()).collect() }
    }

    fn eval(&self, p: &[Complex64]) -> Option<(Complex64, Vec<Complex64>)> {
        let v = self.value.eval_checked(p)?.0;
        let d = self.partials.iter().map(|c| c.eval_checked(p).map(|r| r.0)).collect::<Option<Vec<_>>>()?;
        Some((v, d))
    }
}

static T_PARTIALS: LazyLock<NumericPartials> = LazyLock::new(|| NumericPartials::new(&t_avatar()));
static T_UNIT_PARTIALS: LazyLock<NumericPartials> = LazyLock::new(|| NumericPartials::new(&t_at_unit_a()));

const QUAQ_FIELD: [&str; 4] = ["A^2 - 2*A*B", "B^2 - 2*A*B", "x^2 - 2*x*y", "y^2 - 2*x*y"];

/// `𝒯_A ϖ(A, B) + 𝒯_B ϱ(A, B) + 𝒯_x ϖ(x, y) + 𝒯_y ϱ(x, y)` for the elliptic field.
pub fn quaq_lhs() -> RationalFn {
    let v = &*ABXY;
    let t = Quotient::new(&t_avatar());
    let num = QUAQ_FIELD.iter().zip(&t.partials).fold(MultiPoly::zero(v), |acc, (f, d)| &acc + &(d * &parse_poly(f, v).expect("static")));
    RationalFn::new(num, t.q_squared()).expect("nonzero denominator")
}

/// The four-variable PDE of `𝒯`, which holds only modulo `AB(A − B) − xy(x − y)`.
pub fn quaq_check() -> Result<QuotientCheck> {
    let numeric = NumericLhs::new(|p| {
        let (a, b, x, y) = (p[0], p[1], p[2], p[3]);
        let (_, d) = T_PARTIALS.eval(p)?;
        let field = [a * a - 2.0 * a * b, b * b - 2.0 * a * b, x * x - 2.0 * x * y, y * y - 2.0 * x * y];
        Some(d.iter().zip(field).map(|(d, f)| d * f).sum())
    });
    Ok(QuotientCheck::new("quaq_check", quaq_lhs(), t_modulus(), Relation::DixonPrime)?.with_numeric(numeric))
}

/// `𝒯(1, B; x, y)` in the variables `(B, x, y)`.
pub fn t_at_unit_a() -> RationalFn {
    let v = &*BXY;
    t_avatar().substitute(&[RationalFn::from_int(v, 1), var(v, "B"), var(v, "x"), var(v, "y")])
}

/// The reduced PDE with `A = 1`, moved to one side; `b_coefficient` is the factor of `𝒯_B`
/// (printed as `3B² − 3B`).
pub fn tfun_lhs(b_coefficient: &str) -> RationalFn {
    let v = &*BXY;
    let t = Quotient::new(&t_at_unit_a());
    let coefficients = [b_coefficient, "x^2 - 2*x*y - x + 2*B*x", "y^2 - 2*x*y - y + 2*B*y"];
    let mut num = &(&t.p * &t.q) * &parse_poly("1 - 2*B", v).expect("static");
    for (d, c) in t.partials.iter().zip(coefficients) {
        num = &num + &(d * &parse_poly(c, v).expect("static"));
    }
    RationalFn::new(num, t.q_squared()).expect("nonzero denominator")
}

pub fn b_modulus() -> MultiPoly {
    parse_poly(B_MODULUS, &BXY).expect("static expression")
}

pub fn tfun_check() -> Result<QuotientCheck> {
    let numeric = NumericLhs::new(|p| {
        let (b, x, y) = (p[0], p[1], p[2]);
        let (t, d) = T_UNIT_PARTIALS.eval(p)?;
        let c = [3.0 * b * b - 3.0 * b, x * x - 2.0 * x * y - x + 2.0 * b * x, y * y - 2.0 * x * y - y + 2.0 * b * y];
        Some(d.iter().zip(c).map(|(d, c)| d * c).sum::<Complex64>() - (2.0 * b - 1.0) * t)
    });
    Ok(QuotientCheck::new("tfun_check", tfun_lhs("3*B^2 - 3*B"), b_modulus(), Relation::Quadratic)?.with_numeric(numeric))
}

/// Numerators `N`, `D` and common denominator `W` of `[ℰ_x ϖ + ℰ_y ϱ] / [ℰ − xℰ_x − yℰ_y]` with
/// `ℰ = 𝒯(1, B(x, y); x, y)`, using `B_x = (2xy − y²)/(1 − 2B)`, `B_y = (x² − 2xy)/(1 − 2B)`.
pub fn e_quotient_parts() -> (MultiPoly, MultiPoly, MultiPoly) {
    let v = &*BXY;
    let poly = |s: &str| parse_poly(s, v).expect("static");
    let t = Quotient::new(&t_at_unit_a());
    let one_minus_2b = poly("1 - 2*B");
    // ℰ_x and ℰ_y over (1 − 2B)Q²
    let ex = &(&t.partials[0] * &poly("2*x*y - y^2")) + &(&t.partials[1] * &one_minus_2b);
    let ey = &(&t.partials[0] * &poly("x^2 - 2*x*y")) + &(&t.partials[2] * &one_minus_2b);
    let n = &(&ex * &poly("x^2 - 2*x*y")) + &(&ey * &poly("y^2 - 2*x*y"));
    let d = &(&(&(&t.p * &t.q) * &one_minus_2b) - &(&ex * &poly("x"))) - &(&ey * &poly("y"));
    (n, d, &t.q_squared() * &one_minus_2b)
}

fn e_quotient_numeric(p: &[Complex64]) -> Option<(Complex64, Complex64)> {
    let (b, x, y) = (p[0], p[1], p[2]);
    let (t, d) = T_UNIT_PARTIALS.eval(p)?;
    let ex = d[0] * (2.0 * x * y - y * y) / (1.0 - 2.0 * b) + d[1];
    let ey = d[0] * (x * x - 2.0 * x * y) / (1.0 - 2.0 * b) + d[2];
    Some((ex * (x * x - 2.0 * x * y) + ey * (y * y - 2.0 * x * y), t - x * ex - y * ey))
}

/// `N² − (1 − 4xy(x − y))D² ≡ 0`, the radical-free form of `N/D = √(1 − 4xy(x − y))`.
pub fn sqrt_identity_check() -> Result<QuotientCheck> {
    let v = &*BXY;
    let (n, d, w) = e_quotient_parts();
    let num = &(&n * &n) - &(&(&d * &d) * &parse_poly("1 - 4*x*y*(x-y)", v).expect("static"));
    let lhs = RationalFn::new(num, &w * &w)?;
    let numeric = NumericLhs::new(|p| {
        let (x, y) = (p[1], p[2]);
        let (n, d) = e_quotient_numeric(p)?;
        Some(n * n - (1.0 - 4.0 * x * y * (x - y)) * d * d)
    });
    Ok(QuotientCheck::new("sqrt_identity_check", lhs, b_modulus(), Relation::Quadratic)?.with_numeric(numeric))
}

/// `N − sign·(2B − 1)D`; with sign +1 this is the radical identity on the branch `2B − 1 = √(1 − 4xy(x − y))`.
pub fn branch_lhs(sign: i64) -> RationalFn {
    let v = &*BXY;
    let (n, d, w) = e_quotient_parts();
    let num = &n - &(&d * &parse_poly("2*B - 1", v).expect("static")).scale(&int(sign));
    RationalFn::new(num, w).expect("nonzero denominator")
}

pub fn branch_identity_check() -> Result<QuotientCheck> {
    let numeric = NumericLhs::new(|p| {
        let (n, d) = e_quotient_numeric(p)?;
        Some(n - (2.0 * p[0] - 1.0) * d)
    });
    Ok(QuotientCheck::new("branch_identity_check", branch_lhs(1), b_modulus(), Relation::Quadratic)?.with_numeric(numeric))
}

pub fn run_all() -> Result<Vec<QuotientCheck>> {
    Ok(vec![
        symm_identity_1()?,
        symm_identity_2()?,
        quaq_check()?,
        tfun_check()?,
        sqrt_identity_check()?,
        branch_identity_check()?,
    ])
}

/// Square matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        RatMatrix { n, entries }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        Ok(RatMatrix { n, entries: rows.iter().flat_map(|r| r.iter().map(|&v| int(v))).collect() })
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let mut m = Self::identity(d.len());
        for (i, &v) in d.iter().enumerate() {
            m.entries[i * d.len() + i] = int(v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        let n = self.n;
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        RatMatrix { n, entries }
    }

    /// Gauss-Jordan inverse; errors when singular.
    pub fn inverse(&self) -> Result<RatMatrix> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero()).ok_or_else(|| Error::Degenerate("singular matrix".into()))?;
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
                inv.swap(col * n + j, pivot * n + j);
            }
            let p = a[col * n + col].recip();
            for j in 0..n {
                a[col * n + j] *= &p;
                inv[col * n + j] *= &p;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for j in 0..n {
                    let (sa, si) = (a[col * n + j].clone(), inv[col * n + j].clone());
                    a[r * n + j] -= &f * sa;
                    inv[r * n + j] -= &f * si;
                }
            }
        }
        Ok(RatMatrix { n, entries: inv })
    }
}

/// A finite matrix group given by generators.
#[derive(Clone, Debug)]
pub struct GroupRep {
    pub generators: Vec<RatMatrix>,
    pub dimension: usize,
}

impl GroupRep {
    pub fn new(generators: Vec<RatMatrix>) -> Result<Self> {
        let dimension = generators.first().map(RatMatrix::dim).ok_or_else(|| Error::InvalidArgument("no generators".into()))?;
        for g in &generators {
            if g.dim() != dimension {
                return Err(Error::Dimension { expected: dimension, got: g.dim() });
            }
            g.inverse()?;
        }
        Ok(GroupRep { generators, dimension })
    }

    /// Product of the generators with the given indices, left to right.
    pub fn word(&self, letters: &[usize]) -> RatMatrix {
        letters.iter().fold(RatMatrix::identity(self.dimension), |m, &i| m.mul(&self.generators[i]))
    }

    /// The involutions `σ = (x, y) ↦ (y, x)` and `τ = (x, y) ↦ (x − y, −y)` of the elliptic field.
    pub fn sigma_tau() -> Self {
        let s = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]).expect("square");
        let t = RatMatrix::from_ints(&[&[1, -1], &[0, -1]]).expect("square");
        GroupRep::new(vec![s, t]).expect("invertible")
    }

    /// `S_(N+1)` on the sum-zero hyperplane, in the basis `e_i − e_(N+1)`: the transpositions
    /// `(i, i+1)` for `i < N` and the matrix of `(1, N+1)`.
    pub fn symmetric_standard(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("dimension must be at least 2".into()));
        }
        let mut gens = Vec::new();
        for i in 0..n - 1 {
            let mut m = RatMatrix::identity(n);
            m.entries[i * n + i] = Rational::zero();
            m.entries[(i + 1) * n + i + 1] = Rational::zero();
            m.entries[i * n + i + 1] = Rational::one();
            m.entries[(i + 1) * n + i] = Rational::one();
            gens.push(m);
        }
        gens.push(kappa(n));
        GroupRep::new(gens)
    }

    /// The rotation group of the cube, generated by the images of `(12)`, `(13)`, `(14)`.
    pub fn cube_rotations() -> Self {
        GroupRep::new(cube_generators().to_vec()).expect("invertible")
    }

    /// The even part of [`GroupRep::cube_rotations`]: the Klein four-group and the image of a 3-cycle.
    pub fn cube_alternating() -> Self {
        let [g12, g13, _] = cube_generators();
        let gens = vec![RatMatrix::diagonal(&[-1, -1, 1]), RatMatrix::diagonal(&[-1, 1, -1]), g12.mul(&g13)];
        GroupRep::new(gens).expect("invertible")
    }
}

/// Matrix of the transposition `(1, N+1)` in the basis `e_i − e_(N+1)`.
pub fn kappa(n: usize) -> RatMatrix {
    let mut m = RatMatrix::identity(n);
    for i in 0..n {
        m.entries[i * n] = int(-1);
    }
    m
}

fn cube_generators() -> [RatMatrix; 3] {
    [
        RatMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]).expect("square"),
        RatMatrix::from_ints(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]).expect("square"),
        RatMatrix::from_ints(&[&[-1, 0, 0], &[0, 0, 1], &[0, 1, 0]]).expect("square"),
    ]
}

/// Coordinate names `x, y` / `x, y, z` in low dimension, `x1..xn` otherwise.
pub fn coordinate_vars(n: usize) -> Vars {
    match n {
        2 => vars(&["x", "y"]),
        3 => vars(&["x", "y", "z"]),
        _ => {
            let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            vars(&refs)
        }
    }
}

/// The quadratic field invariant under `S_(N+1)`: `Q_1 = x_1² − 2/(N − 1) · x_1 Σ_(i≥2) x_i`
/// and `Q_i` equal to `Q_1` with `x_1` and `x_i` swapped.
pub fn superflow_field(n: usize) -> Result<Vec<MultiPoly>> {
    if n < 2 {
        return Err(Error::InvalidArgument("superflow needs N ≥ 2".into()));
    }
    let v = coordinate_vars(n);
    let x: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var_at(&v, i)).collect();
    let rest = x[1..].iter().fold(MultiPoly::zero(&v), |acc, xi| &acc + xi);
    let q1 = &(&x[0] * &x[0]) - &(&x[0] * &rest).scale(&rat(2, n as i64 - 1));
    Ok((0..n)
        .map(|i| {
            let mut images = x.clone();
            images.swap(0, i);
            q1.substitute(&images)
        })
        .collect())
}

/// `γ⁻¹ ∘ Q ∘ γ` for a linear map `γ`.
pub fn conjugate(field: &[RationalFn], gamma: &RatMatrix) -> Result<Vec<RationalFn>> {
    let n = gamma.dim();
    if field.len() != n {
        return Err(Error::Dimension { expected: n, got: field.len() });
    }
    let v = field[0].vars().clone();
    if v.len() != n {
        return Err(Error::Dimension { expected: n, got: v.len() });
    }
    let linear = |m: &RatMatrix, i: usize, args: &[RationalFn]| -> RationalFn {
        (0..n).fold(RationalFn::zero(args[0].vars()), |acc, j| {
            if m.get(i, j).is_zero() {
                acc
            } else {
                &acc + &args[j].scale(m.get(i, j))
            }
        })
    };
    let coords: Vec<RationalFn> = (0..n).map(|i| RationalFn::from_poly(MultiPoly::var_at(&v, i))).collect();
    let images: Vec<RationalFn> = (0..n).map(|i| linear(gamma, i, &coords)).collect();
    let pulled: Vec<RationalFn> = field.iter().map(|q| q.substitute(&images)).collect();
    let inv = gamma.inverse()?;
    Ok((0..n).map(|i| linear(&inv, i, &pulled)).collect())
}

/// Whether `γ⁻¹ ∘ Q ∘ γ = Q` for every generator, hence for the whole group.
pub fn superflow_invariance(field: &[RationalFn], group: &GroupRep) -> Result<bool> {
    for g in &group.generators {
        if !invariant_under(field, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn invariant_under(field: &[RationalFn], gamma: &RatMatrix) -> Result<bool> {
    let c = conjugate(field, gamma)?;
    Ok(c.iter().zip(field).all(|(a, b)| a.same_as(b)))
}

/// The field `(yz, xz, xy)`.
pub fn pelican_field() -> Vec<RationalFn> {
    let v = coordinate_vars(3);
    ["y*z", "x*z", "x*y"].iter().map(|s| ratfn(s, &v)).collect()
}

/// The degree-(4, 2) field invariant under the full cube rotation group.
pub fn cube_field() -> Vec<RationalFn> {
    let v = coordinate_vars(3);
    ["(y^3*z - y*z^3)", "(z^3*x - z*x^3)", "(x^3*y - x*y^3)"]
        .iter()
        .map(|s| ratfn(&format!("{s}/(x^2 + y^2 + z^2)"), &v))
        .collect()
}

/// Invariance of [`cube_field`] under each of the three generators.
pub fn sigma4prime_field_check() -> Result<Vec<bool>> {
    let field = cube_field();
    cube_generators().iter().map(|g| invariant_under(&field, g)).collect()
}

/// Result of the pre-quasi-flow test.
#[derive(Clone, Debug)]
pub struct PreQuasiFlow {
    pub homogeneous: bool,
    pub lhs: RationalFn,
    pub modulus: MultiPoly,
    pub congruent: bool,
}

impl PreQuasiFlow {
    pub fn holds(&self) -> bool {
        self.homogeneous && self.congruent
    }
}

/// Tests whether `U(A, B; x, y)` is 1-homogeneous and satisfies
/// `U_A ϖ(A, B) + U_B ϱ(A, B) + U_x ϖ(x, y) + U_y ϱ(x, y) ≡ 0 mod P(A, B)Q(x, y) − P(x, y)Q(A, B)`.
pub fn quasi_flow_pre_check(u: &RationalFn, field: &VectorField2, p: &MultiPoly, q: &MultiPoly) -> Result<PreQuasiFlow> {
    let v = &*ABXY;
    let u = u.embed(v)?;
    let homogeneous = u.homogeneous_degree()? == Some(1);
    let (a, b, x, y) = (var(v, "A"), var(v, "B"), var(v, "x"), var(v, "y"));
    let in_ab = |f: &RationalFn| f.substitute(&[a.clone(), b.clone()]);
    let in_xy = |f: &RationalFn| f.substitute(&[x.clone(), y.clone()]);
    let poly_ab = |f: &MultiPoly| f.substitute(&[a.num().clone(), b.num().clone()]);
    let poly_xy = |f: &MultiPoly| f.substitute(&[x.num().clone(), y.num().clone()]);
    let coefficients = [in_ab(&field.w), in_ab(&field.r), in_xy(&field.w), in_xy(&field.r)];
    let mut lhs = RationalFn::zero(v);
    for (i, c) in coefficients.iter().enumerate() {
        lhs = &lhs + &(&u.derivative(i) * c);
    }
    let lhs = lhs.reduced();
    let modulus = &(&poly_ab(p) * &poly_xy(q)) - &(&poly_xy(p) * &poly_ab(q));
    if modulus.is_zero() {
        return Err(Error::InvalidArgument("orbit modulus vanishes identically".into()));
    }
    let congruent = QuotientCheck::new("u_quasi", lhs.clone(), modulus.clone(), Relation::Dixon)?.verdict;
    Ok(PreQuasiFlow { homogeneous, lhs, modulus, congruent })
}

/// Coefficients of `(ax + by)/(cx + dy)` and the level `M` when `((a + d)² − 4bc)/(a − d)² = M²`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCriterion {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub discriminant: Rational,
    pub level: Option<u64>,
}

/// Reduces `(yϖ_y − xϱ_y)/(yϖ_x − xϱ_x)` to a ratio of linear forms; `None` when it is not one
/// (including constant ratios and `a = d`).
pub fn rational_flow_ratio(field: &VectorField2) -> Result<Option<RationalCriterion>> {
    let v = &*XY;
    let (x, y) = (var(v, "x"), var(v, "y"));
    let num = &(&y * &field.w.derivative(1)) - &(&x * &field.r.derivative(1));
    let den = &(&y * &field.w.derivative(0)) - &(&x * &field.r.derivative(0));
    if num.is_zero() || den.is_zero() {
        return Ok(None);
    }
    let ratio = (&num / &den).reduced();
    let (n, d) = (ratio.num(), ratio.den());
    if n.homogeneous_degree() != Some(1) || d.homogeneous_degree() != Some(1) {
        return Ok(None);
    }
    let a = n.coeff(&[1, 0]);
    let b = n.coeff(&[0, 1]);
    let c = d.coeff(&[1, 0]);
    let dd = d.coeff(&[0, 1]);
    if a == dd {
        return Ok(None);
    }
    let diff = &a - &dd;
    let sum = &a + &dd;
    let discriminant = (&sum * &sum - int(4) * &b * &c) / (&diff * &diff);
    let level = positive_integer_sqrt(&discriminant);
    Ok(Some(RationalCriterion { a, b, c, d: dd, discriminant, level }))
}

/// The level `M` of a field generating a rational flow, if the criterion holds.
pub fn rational_flow_criterion(field: &VectorField2) -> Result<Option<u64>> {
    Ok(rational_flow_ratio(field)?.and_then(|r| r.level))
}

fn positive_integer_sqrt(q: &Rational) -> Option<u64> {
    if !q.is_integer() || !q.is_positive() {
        return None;
    }
    let n: BigInt = q.to_integer();
    let r = n.sqrt();
    if &r * &r != n {
        return None;
    }
    u64::try_from(r).ok()
}

/// Integer pairs `(B, C)` with `|B|, |C| ≤ bound`, `B, C ∉ {0, 1}`, `B + C ≠ 2` and
/// `(B + C − 2)/(BC − 1) ∈ ℤ`.
///
/// No pair lies outside `|B|, |C| ≤ 5`: the quotient is a nonzero integer, so
/// `|BC − 1| ≤ |B + C − 2|`. With `|B|, |C| ≥ 3` the left side exceeds the right. With
/// `B = −1` the quotient is `−1 + 4/(C + 1)`, so `C + 1` divides 4; `B = 2` gives
/// `|2C − 1| ≤ |C|`, impossible; `B = −2` gives `|2C + 1| ≤ |C − 4|`, so `−5 ≤ C ≤ 1`.
pub fn bc_pairs_enumerate(bound: i64) -> Result<Vec<(i64, i64)>> {
    if bound < 6 {
        return Err(Error::InvalidArgument("bound must be at least 6".into()));
    }
    let mut out = Vec::new();
    for b in -bound..=bound {
        for c in -bound..=bound {
            if [0, 1].contains(&b) || [0, 1].contains(&c) || b + c == 2 || b * c == 1 {
                continue;
            }
            if (b + c - 2) % (b * c - 1) == 0 {
                out.push((b, c));
            }
        }
    }
    Ok(out)
}

/// The field `x² + (B + C − 2)/(BC − 1)·xy • Cxy + y²` linearly conjugate to the one with parameters `(B, C)`.
pub fn bc_conjugate(b: i64, c: i64) -> Option<(i64, i64)> {
    let k = b * c - 1;
    (k != 0 && (b + c - 2) % k == 0).then(|| ((b + c - 2) / k, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy_field(w: &str, r: &str) -> VectorField2 {
        VectorField2::parse(w, r).unwrap()
    }

    #[test]
    fn first_symmetry_identity() {
        let check = symm_identity_1().unwrap();
        assert!(check.verdict, "{check}");
        assert!(!check.holds_identically());
        assert!(check.spot_check(11, 20) < 1e-7);
        let partial = QuotientCheck::new("partial", symm_lhs_1(false), r_modulus(), Relation::Dixon).unwrap();
        assert!(!partial.verdict);
    }

    #[test]
    fn first_symmetry_at_trivial_parameters() {
        // A = 0, B = 1 turns ℛ into x, and the three arguments sum to zero
        let lhs = symm_lhs_1(true);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let (x, y): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let v = lhs.eval_complex(&[0.0.into(), 1.0.into(), x.into(), y.into()]);
            assert!(v.norm() < 1e-12);
        }
    }

    #[test]
    fn second_symmetry_identity() {
        let check = symm_identity_2().unwrap();
        assert!(check.verdict, "{check}");
        assert!(check.spot_check(12, 20) < 1e-7);
        let flipped = QuotientCheck::new("flipped", symm_lhs_2(-1), r_modulus(), Relation::Dixon).unwrap();
        assert!(!flipped.verdict);
    }

    #[test]
    fn four_variable_pde_needs_the_relation() {
        let check = quaq_check().unwrap();
        assert!(!check.holds_identically());
        assert!(check.verdict, "{check}");
        assert!(check.spot_check(13, 20) < 1e-7);
    }

    #[test]
    fn reduced_pde_at_unit_a() {
        let check = tfun_check().unwrap();
        assert!(check.verdict, "{check}");
        assert!(check.spot_check(14, 20) < 1e-7);
        let perturbed = QuotientCheck::new("perturbed", tfun_lhs("3*B^2 - 2*B"), b_modulus(), Relation::Quadratic).unwrap();
        assert!(!perturbed.verdict);
    }

    #[test]
    fn radical_identity() {
        let squared = sqrt_identity_check().unwrap();
        assert!(squared.verdict, "{squared}");
        assert!(squared.spot_check(15, 20) < 1e-7);
        let branch = branch_identity_check().unwrap();
        assert!(branch.verdict, "{branch}");
        // the squared form cannot tell the branches apart, the linear one can
        assert!(!QuotientCheck::new("other", branch_lhs(-1), b_modulus(), Relation::Quadratic).unwrap().verdict);
        let r = crate::closed_forms::e_pde_residual(0.3, 0.2, 1e-5).unwrap();
        assert!(r < 1e-6, "{r}");
    }

    #[test]
    fn superflow_fields() {
        let q2 = superflow_field(2).unwrap();
        let v = coordinate_vars(2);
        assert_eq!(q2[0], parse_poly("x^2 - 2*x*y", &v).unwrap());
        assert_eq!(q2[1], parse_poly("y^2 - 2*x*y", &v).unwrap());
        let q3 = superflow_field(3).unwrap();
        assert_eq!(q3[0], parse_poly("x^2 - x*y - x*z", &coordinate_vars(3)).unwrap());
        assert!(superflow_field(1).is_err());
    }

    #[test]
    fn superflow_symmetry() {
        let to_rat = |q: Vec<MultiPoly>| q.into_iter().map(RationalFn::from_poly).collect::<Vec<_>>();
        let q2 = to_rat(superflow_field(2).unwrap());
        assert!(superflow_invariance(&q2, &GroupRep::sigma_tau()).unwrap());
        let st = GroupRep::sigma_tau();
        assert_eq!(st.word(&[0, 1, 0]), kappa(2));
        for n in 2..=4 {
            let q = to_rat(superflow_field(n).unwrap());
            let g = GroupRep::symmetric_standard(n).unwrap();
            assert!(superflow_invariance(&q, &g).unwrap(), "N = {n}");
        }
        let q3 = to_rat(superflow_field(3).unwrap());
        assert!(!invariant_under(&q3, &RatMatrix::diagonal(&[-1, 1, 1])).unwrap());
    }

    #[test]
    fn generators_suffice() {
        let q3: Vec<RationalFn> = superflow_field(3).unwrap().into_iter().map(RationalFn::from_poly).collect();
        let g = GroupRep::symmetric_standard(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let w: Vec<usize> = (0..6).map(|_| rng.gen_range(0..g.generators.len())).collect();
            assert!(invariant_under(&q3, &g.word(&w)).unwrap());
        }
    }

    #[test]
    fn pelican_symmetry() {
        let p = pelican_field();
        assert!(superflow_invariance(&p, &GroupRep::cube_alternating()).unwrap());
        assert!(!invariant_under(&p, &RatMatrix::diagonal(&[-1, 1, 1])).unwrap());
        let swap = RatMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).unwrap();
        assert!(invariant_under(&p, &swap).unwrap());
        // the odd cube rotations reverse the sign of this field
        assert!(!superflow_invariance(&p, &GroupRep::cube_rotations()).unwrap());
        assert!(!invariant_under(&p, &cube_generators()[0]).unwrap());
        assert!(matches!(invariant_under(&p, &RatMatrix::identity(2)), Err(Error::Dimension { .. })));
    }

    #[test]
    fn cube_field_symmetry() {
        assert_eq!(sigma4prime_field_check().unwrap(), vec![true; 3]);
        let g = GroupRep::cube_rotations();
        assert!(invariant_under(&cube_field(), &g.word(&[0, 2, 1, 1])).unwrap());
        assert!(invariant_under(&cube_field(), &g.word(&[2, 0, 1, 0])).unwrap());
    }

    #[test]
    fn singular_generator_rejected() {
        let m = RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).unwrap();
        assert!(GroupRep::new(vec![m]).is_err());
        let m = RatMatrix::from_ints(&[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(m.mul(&m.inverse().unwrap()), RatMatrix::identity(2));
    }

    #[test]
    fn canonical_flow_is_a_pre_quasi_flow() {
        let n = 3;
        let v = &*ABXY;
        let field = xy_field(&format!("{}*x*y", n - 1), "-y^2");
        let p = parse_poly(&format!("x*y^{}", n - 1), &XY).unwrap();
        let one = MultiPoly::one(&XY);
        let u = ratfn(&format!("-A*(y-B)^{}/y^{}", n - 1, n - 1), v);
        let check = quasi_flow_pre_check(&u, &field, &p, &one).unwrap();
        assert!(check.holds() && check.lhs.is_zero());
        let u_hat = ratfn(&format!("x*(B-y)^{}/B^{}", n - 1, n - 1), v);
        let check = quasi_flow_pre_check(&u_hat, &field, &p, &one).unwrap();
        assert!(check.holds() && check.lhs.is_zero());
        let vv = ratfn("y*B/(B-y)", v);
        assert!(quasi_flow_pre_check(&vv, &field, &p, &one).unwrap().holds());
        // not 1-homogeneous
        let bad = ratfn("x^2", v);
        assert!(!quasi_flow_pre_check(&bad, &field, &p, &one).unwrap().holds());
    }

    #[test]
    fn canonical_boundary_condition() {
        let n = 3;
        let u = ratfn(&format!("-A*(y-B)^{}/y^{}", n - 1, n - 1), &ABXY);
        let (x, y) = (0.4f64, -0.7f64);
        for z in [1e-3f64, 1e-5] {
            let a = -z.powi(n) * x * y.powi(n - 1);
            let val = u.eval_complex(&[a.into(), (-1.0).into(), (x * z).into(), (y * z).into()]) / z;
            assert!((val.re - x).abs() < 10.0 * z, "{val}");
        }
    }

    #[test]
    fn exponential_flow_is_a_pre_quasi_flow() {
        let v = &*ABXY;
        let field = xy_field("(x^2 - y^2)/2", "(y^2 - x^2)/2");
        let p = parse_poly("x + y", &XY).unwrap();
        let u = ratfn("(x^2 - y^2)/(B - A) + (x + y)/2", v);
        let check = quasi_flow_pre_check(&u, &field, &p, &MultiPoly::one(&XY)).unwrap();
        assert!(check.holds());
        assert!(check.lhs.same_as(&ratfn("(x^2 - y^2)*(x + y - A - B)/(B - A)", v)));
    }

    #[test]
    fn rational_flow_levels() {
        for n in 2..=6u64 {
            let f = xy_field(&format!("{}*x*y", n - 1), "-y^2");
            assert_eq!(rational_flow_criterion(&f).unwrap(), Some(n));
        }
        assert_eq!(rational_flow_criterion(&VectorField2::elliptic()).unwrap(), None);
        assert_eq!(rational_flow_criterion(&xy_field("0", "0")).unwrap(), None);
        let r = rational_flow_ratio(&xy_field("2*x*y", "-y^2")).unwrap().unwrap();
        assert_eq!(r.discriminant, int(9));
    }

    #[test]
    fn unramified_parameter_pairs() {
        let pairs = bc_pairs_enumerate(6).unwrap();
        assert_eq!(pairs.len(), 10);
        for p in [(-2, -2), (-1, -3), (-3, -3), (-1, -2), (-5, -1)] {
            assert!(pairs.contains(&p), "{p:?}");
        }
        assert!(pairs.iter().all(|&(b, c)| b.abs() <= 5 && c.abs() <= 5));
        assert_eq!(bc_pairs_enumerate(40).unwrap(), pairs);
        assert!(bc_pairs_enumerate(5).is_err());
        assert_eq!(bc_conjugate(-2, -2), Some((-2, -2)));
        assert_eq!(bc_conjugate(-1, -3), Some((-3, -3)));
        assert_eq!(bc_conjugate(-2, -1), Some((-5, -1)));
    }
}
