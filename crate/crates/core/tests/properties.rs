use num_complex::Complex64;
use proptest::prelude::*;

use proflow::closed_forms::lambda_eval;
use proflow::elliptic::CurveE;
use proflow::exact::{rat, MonomialOrder, MultiPoly};
use proflow::finite_fields::{cardinality_checks, mobius_1d, satisfies_1d, Fp, PElem};
use proflow::series::{flow_series, pde_defect, Coord, VectorField2, XY};
use proflow::special::{pole_distance, sm_cm};
use proflow::CNum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly(coeffs: &[(u32, u32, i64)]) -> MultiPoly {
    coeffs.iter().fold(MultiPoly::zero(&XY), |acc, &(i, j, c)| &acc + &MultiPoly::monomial(&XY, vec![i, j], rat(c, 1)))
}

fn small_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -5i64..=5), 0..6).prop_map(|v| poly(&v))
}

fn elem(p: u64) -> impl Strategy<Value = PElem> {
    prop_oneof![(0..p).prop_map(PElem::Fin), Just(PElem::Inf)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_laws(f in small_poly(), g in small_poly(), h in small_poly()) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
    }

    #[test]
    fn multiples_reduce_to_zero(f in small_poly(), g in small_poly()) {
        prop_assume!(!g.is_zero());
        let r = (&f * &g).reduce_modulo(&g, MonomialOrder::GradedLex).unwrap();
        prop_assert!(r.is_zero());
    }

    #[test]
    fn partial_arithmetic_is_commutative(a in elem(7), b in elem(7)) {
        let f = Fp::new(7).unwrap();
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.inv(f.inv(a)), a);
    }

    #[test]
    fn mobius_maps_are_one_dimensional_flows(i in 0usize..6, a in 0u64..13) {
        let p = [2u64, 3, 5, 7, 11, 13][i];
        let f = Fp::new(p).unwrap();
        prop_assert!(satisfies_1d(f, &mobius_1d(f, a % p)));
    }

    #[test]
    fn series_solve_the_pde(c in prop::array::uniform6(-3i64..=3)) {
        let w = format!("{}*x^2 + {}*x*y + {}*y^2", c[0], c[1], c[2]);
        let r = format!("{}*x^2 + {}*x*y + {}*y^2", c[3], c[4], c[5]);
        let vf = VectorField2::parse(&w, &r).unwrap();
        let s = flow_series(&vf, Coord::X, 8).unwrap();
        let defect = pde_defect(&vf, &s, 7).unwrap();
        prop_assert!(defect.iter().all(MultiPoly::is_zero));
    }

    #[test]
    fn dixon_cubic_relation(re in -8.0f64..8.0, im in -8.0f64..8.0) {
        let u = Complex64::new(re, im);
        prop_assume!(pole_distance(u) > 0.3);
        let (s, c) = sm_cm(CNum::from(u));
        prop_assert!((s.c().powi(3) + c.c().powi(3) - 1.0).norm() < 1e-10);
    }

    #[test]
    fn lambda_period_symmetry(x in -0.4f64..0.4, y in -0.4f64..0.4) {
        let a = lambda_eval(CNum::real(x), CNum::real(y));
        let b = lambda_eval(CNum::real(-x), CNum::real(y - x));
        prop_assume!(a.is_finite() && b.is_finite() && a.abs() < 1e3);
        prop_assert!((a.c() + b.c()).norm() < 1e-9 * (1.0 + a.abs()));
    }

    #[test]
    fn curve_group_inverse(seed in 0u64..1000, re in 0.5f64..2.0, im in -1.0f64..1.0) {
        let e = CurveE::new(CNum::new(re, im)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = e.random_point(&mut rng);
        let q = e.random_point(&mut rng);
        prop_assert!(e.add(&p, &e.neg(&p).unwrap()).unwrap().same_as(&e.identity()));
        prop_assert!(e.add(&p, &q).unwrap().distance(&e.add(&q, &p).unwrap()) < 1e-9);
    }
}

#[test]
fn printed_flows_are_bijections_for_small_primes() {
    for p in [3u64, 5, 7, 11, 13] {
        for c in cardinality_checks(p).unwrap() {
            assert!(c.pass(), "p = {p}: {c:?}");
        }
    }
}
