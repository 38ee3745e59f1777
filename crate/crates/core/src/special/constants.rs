use std::f64::consts::PI;

use crate::cnum::CNum;

/// The real period `π₃ = Γ(1/3)³ √3 / (2π)` of the Dixonian functions.
///
/// Evaluated from the rapidly converging series
/// `π₃⁶ = 8π⁶ (1 − Σ 504 n⁵ / ((−1)ⁿ e^(√3 π n) − 1))`.
pub fn pi3() -> f64 {
    pi3_sixth().powf(1.0 / 6.0)
}

pub fn pi3_sixth() -> f64 {
    let q = 3f64.sqrt() * PI;
    let mut sum = 0.0;
    for n in (1..=40).rev() {
        let n = n as f64;
        let sign = if n as i64 % 2 == 0 { 1.0 } else { -1.0 };
        sum += 504.0 * n.powi(5) / (sign * (q * n).exp() - 1.0);
    }
    8.0 * PI.powi(6) * (1.0 - sum)
}

/// `Π = π₃³ / 27`, the critical value of `xy(x − y)` along the hypergeometric curve.
pub fn pi_const() -> f64 {
    pi3().powi(3) / 27.0
}

/// Primitive cube root of unity `ω = e^(2πi/3)`.
pub fn omega() -> CNum {
    CNum::new(-0.5, 3f64.sqrt() / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_constants() {
        assert!((pi3() - 5.299916250856).abs() < 1e-11);
        assert!((pi_const() - 5.513701576710).abs() < 1e-11);
    }

    #[test]
    fn sixth_power() {
        // The series sums to π₃⁶ itself; the smaller printed figure is π₃⁶/27.
        assert!((pi3_sixth() - 22162.2598011480).abs() < 1e-8);
        assert!((pi3_sixth() / 27.0 - 820.824437079556).abs() < 1e-9);
    }

    #[test]
    fn matches_gamma_closed_form() {
        // Γ(1/3) = 2.678938534707747…
        let g = 2.678_938_534_707_747_6_f64;
        assert!((pi3() - g.powi(3) * 3f64.sqrt() / (2.0 * PI)).abs() < 1e-13);
    }
}
