//! Symbolic definitions shared by the numerical evaluators and the quotient-ring checks.
//!
//! Each expression is written once, as text, in the variables `A, B, x, y`; the numeric
//! side evaluates the compiled form of the very same rational function.

use std::sync::LazyLock;

use crate::exact::{parse_poly, parse_ratfn, vars, CompiledRatFn, MultiPoly, RationalFn, Vars};

pub static ABXY: LazyLock<Vars> = LazyLock::new(|| vars(&["A", "B", "x", "y"]));

/// The avatar `ℛ(A, B; x, y)`; equals `λ(x, y)` for `A = sm(ς)/ς`, `B = cm(ς)`, `ς³ = xy(x − y)`.
pub const R_AVATAR: &str = "x*(x-y)*(B - A*B^2*y + A^2*x*y)^2 / ((x - B^3*y)*(B^2 - A*x + A^2*B*x*y))";

/// The avatar `𝒯(A, B; x, y)`; equals `λ(x, y)` for `A = sp(ς)ς`, `B = cp(ς)ς`.
pub const T_AVATAR: &str = "(x*(x-y) + A*B - A*x)^2*y*(x-y) / (A*(B*(x-y) - A*x)*(A*B + x*(x-y) - B*(x-y)))";

/// `ℛ` with the factor `x − y` cancelled against `x − B³y = (x − y)(1 + A³xy²)`, which holds on
/// `A³xy(x − y) + B³ = 1`. Free of removable singularities along `xy(x − y) = 0`.
pub const LAMBDA_REGULAR: &str = "x*(B - A*B^2*y + A^2*x*y)^2 / ((1 + A^3*x*y^2)*(B^2 - A*x + A^2*B*x*y))";

/// Relation between `(A, B)` and `(x, y)` for the `ℛ` avatar.
pub const R_MODULUS: &str = "A^3*x*y*(x-y) + B^3 - 1";

/// Relation between `(A, B)` and `(x, y)` for the `𝒯` avatar.
pub const T_MODULUS: &str = "A*B*(A-B) - x*y*(x-y)";

pub fn r_avatar() -> RationalFn {
    parse_ratfn(R_AVATAR, &ABXY).expect("static expression")
}

pub fn t_avatar() -> RationalFn {
    parse_ratfn(T_AVATAR, &ABXY).expect("static expression")
}

pub fn lambda_regular() -> RationalFn {
    parse_ratfn(LAMBDA_REGULAR, &ABXY).expect("static expression")
}

pub fn r_modulus() -> MultiPoly {
    parse_poly(R_MODULUS, &ABXY).expect("static expression")
}

pub fn t_modulus() -> MultiPoly {
    parse_poly(T_MODULUS, &ABXY).expect("static expression")
}

pub(crate) static R_COMPILED: LazyLock<CompiledRatFn> = LazyLock::new(|| r_avatar().compile());
pub(crate) static T_COMPILED: LazyLock<CompiledRatFn> = LazyLock::new(|| t_avatar().compile());
pub(crate) static LAMBDA_COMPILED: LazyLock<CompiledRatFn> = LazyLock::new(|| lambda_regular().compile());
