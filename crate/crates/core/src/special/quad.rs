//! Adaptive Gauss–Legendre quadrature for smooth complex-valued integrands.

use std::sync::LazyLock;

use num_complex::Complex64;

const ORDER: usize = 20;

/// Nodes and weights on `[-1, 1]`, by Newton iteration on the Legendre polynomial.
static RULE: LazyLock<Vec<(f64, f64)>> = LazyLock::new(|| {
    let n = ORDER;
    (0..n)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
});

fn gauss(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> Complex64 {
    let (m, h) = ((a + b) / 2.0, (b - a) / 2.0);
    RULE.iter().map(|&(x, w)| f(m + h * x) * w).sum::<Complex64>() * h
}

/// `∫_a^b f`, bisecting until halves agree with the whole to `tol`; returns the estimate and its error.
pub fn adaptive_gauss(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> (Complex64, f64) {
    fn rec(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, whole: Complex64, tol: f64, depth: u32) -> (Complex64, f64) {
        let m = (a + b) / 2.0;
        let (l, r) = (gauss(f, a, m), gauss(f, m, b));
        let diff = (l + r - whole).norm();
        if diff <= tol || depth >= 40 {
            return (l + r, diff);
        }
        let (vl, el) = rec(f, a, m, l, tol / 2.0, depth + 1);
        let (vr, er) = rec(f, m, b, r, tol / 2.0, depth + 1);
        (vl + vr, el + er)
    }
    rec(f, a, b, gauss(f, a, b), tol, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_and_exponentials() {
        let (v, _) = adaptive_gauss(&|x| Complex64::new(x.powi(7), 0.0), 0.0, 2.0, 1e-14);
        assert!((v.re - 32.0).abs() < 1e-12);
        let (v, _) = adaptive_gauss(&|x| Complex64::new(0.0, x).exp(), 0.0, std::f64::consts::PI, 1e-14);
        assert!((v - Complex64::new(0.0, 2.0)).norm() < 1e-13);
    }
}
