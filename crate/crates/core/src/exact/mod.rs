//! Exact arithmetic over Q: sparse multivariate polynomials, rational functions,
//! division by a single divisor and multivariate gcd.

mod parse;
mod poly;
mod ratfn;

pub use parse::{parse_poly, parse_ratfn};
pub use poly::{gcd, int, rat, rational_to_f64, vars, CompiledPoly, MonomialOrder, MultiPoly, Rational, Vars};
pub use ratfn::{CompiledRatFn, RationalFn};

use crate::error::Result;

/// `Some(f / g)` when `g` divides `f` exactly.
pub fn exact_divide(f: &MultiPoly, g: &MultiPoly) -> Result<Option<MultiPoly>> {
    f.exact_divide(g)
}

/// Remainder of `f` modulo the principal ideal `(g)`.
pub fn reduce_modulo(f: &MultiPoly, g: &MultiPoly, order: MonomialOrder) -> Result<MultiPoly> {
    f.reduce_modulo(g, order)
}

pub fn partial_derivative(f: &RationalFn, var: &str) -> Result<RationalFn> {
    f.partial_derivative(var)
}

pub fn is_homogeneous(f: &RationalFn) -> Result<Option<i32>> {
    f.homogeneous_degree()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Vars {
        vars(&["x", "y"])
    }

    #[test]
    fn divides_exactly() {
        let v = vars(&["t"]);
        let f = parse_poly("t^2 - 2t", &v).unwrap();
        let g = parse_poly("t", &v).unwrap();
        assert_eq!(exact_divide(&f, &g).unwrap().unwrap(), parse_poly("t - 2", &v).unwrap());
        assert_eq!(exact_divide(&f, &f).unwrap().unwrap(), MultiPoly::one(&v));
        let v = vars(&["x"]);
        let f = parse_poly("x^2 + 1", &v).unwrap();
        assert!(exact_divide(&f, &parse_poly("x + 1", &v).unwrap()).unwrap().is_none());
        assert!(exact_divide(&f, &MultiPoly::zero(&v)).is_err());
    }

    #[test]
    fn derivative_of_geometric_series() {
        let f = parse_ratfn("x/(1-x)", &xy()).unwrap();
        let d = partial_derivative(&f, "x").unwrap();
        assert!(d.same_as(&parse_ratfn("1/(1-x)^2", &xy()).unwrap()));
        assert!(matches!(partial_derivative(&f, "w"), Err(crate::Error::UnknownVariable(_))));
    }

    #[test]
    fn homogeneity() {
        let v = xy();
        assert_eq!(is_homogeneous(&parse_ratfn("x^2 - 2x*y", &v).unwrap()).unwrap(), Some(2));
        assert_eq!(is_homogeneous(&parse_ratfn("x/(x+y)", &v).unwrap()).unwrap(), Some(0));
        assert_eq!(is_homogeneous(&parse_ratfn("x^2 + x", &v).unwrap()).unwrap(), None);
        assert!(is_homogeneous(&RationalFn::zero(&v)).is_err());
        // a non-homogeneous common factor cancels first
        assert_eq!(is_homogeneous(&parse_ratfn("x^2*(1+y)/(y*(1+y))", &v).unwrap()).unwrap(), Some(1));
    }

    #[test]
    fn canonical_text() {
        let v = vars(&["t"]);
        assert_eq!(parse_poly("t^2 - 2t", &v).unwrap().to_string(), "1*t^2 + -2*t");
        assert_eq!(parse_poly("43/7 t^6 - 2/7", &v).unwrap().to_pretty(), "43/7*t^6 - 2/7");
        assert_eq!(MultiPoly::zero(&v).to_string(), "0");
    }

    #[test]
    fn gcd_cancels_multivariate_factor() {
        let v = xy();
        let a = parse_poly("(x - y)^2 * (x + 2y + 1)", &v).unwrap();
        let b = parse_poly("(x - y) * (x*y + 3)", &v).unwrap();
        assert_eq!(gcd(&a, &b), parse_poly("x - y", &v).unwrap());
        let f = RationalFn::new(a, b).unwrap().reduced();
        assert_eq!(f.den(), &parse_poly("x*y + 3", &v).unwrap());
    }

    #[test]
    fn reduction_orders_agree_on_membership() {
        let v = vars(&["A", "B", "x", "y"]);
        let g = parse_poly("A^3*x*y*(x-y) + B^3 - 1", &v).unwrap();
        let f = &parse_poly("A*B + x^2 - y", &v).unwrap() * &g;
        for order in [MonomialOrder::GradedLex, MonomialOrder::Lex] {
            assert!(reduce_modulo(&f, &g, order).unwrap().is_zero());
            assert!(!reduce_modulo(&(&f + &MultiPoly::var(&v, "x").unwrap()), &g, order).unwrap().is_zero());
        }
    }
}
