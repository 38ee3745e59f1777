//! Laurent expansions of the pair `p = sp(u)u`-like solutions of
//! `p' = −p² + 3pq`, `q' = −q² + 3pq` normalized by `pq(p − q)² = 1`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Laurent polynomial as exponent → coefficient.
pub type Laurent = BTreeMap<i32, Rational>;

fn conv(a: &Laurent, b: &Laurent, e: i32) -> Rational {
    let mut acc = Rational::zero();
    for (i, x) in a {
        if let Some(y) = b.get(&(e - i)) {
            acc += x * y;
        }
    }
    acc
}

fn mul(a: &Laurent, b: &Laurent, max: i32) -> Laurent {
    let mut out = Laurent::new();
    for (i, x) in a {
        for (j, y) in b {
            if i + j <= max {
                *out.entry(i + j).or_insert_with(Rational::zero) += x * y;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// First `n` terms of `p = u³ + …` and `q = u⁻¹ + …`; both involve only powers `u^(4k−1)`.
pub fn pq_series(n: usize) -> Result<(Laurent, Laurent)> {
    let mut p = Laurent::new();
    let mut q = Laurent::new();
    q.insert(-1, Rational::one());
    let q0 = Rational::one();
    for k in 1..=n as i32 {
        let m = 4 * k - 1;
        // (m − 3) p_m = [−p² + 3pq]_(m−1) without the unknown p_m q_(−1)
        let pm = if m == 3 {
            Rational::one()
        } else {
            let rhs = -conv(&p, &p, m - 1) + conv(&p, &q, m - 1) * Rational::from_integer(3.into());
            rhs / Rational::from_integer((m - 3).into())
        };
        p.insert(m, pm);
        if (k as usize) < n {
            // (m + 2) q_m = [−q²]_(m−1) without 2 q_(−1) q_m, plus 3 [pq]_(m−1)
            let rhs = -conv(&q, &q, m - 1) + conv(&p, &q, m - 1) * Rational::from_integer(3.into());
            q.insert(m, rhs / (Rational::from_integer((m + 2).into()) * &q0));
        }
    }
    // pq(p − q)² = 1 through the order fixed by the computed terms
    let top = 4 * n as i32 - 5;
    let diff: Laurent = {
        let mut d = p.clone();
        for (e, c) in &q {
            *d.entry(*e).or_insert_with(Rational::zero) -= c;
        }
        d
    };
    let shift = 3;
    let prod = mul(&mul(&p, &q, top + shift), &mul(&diff, &diff, top + shift), top);
    for e in 0..=top {
        let c = prod.get(&e).cloned().unwrap_or_else(Rational::zero);
        let want = if e == 0 { Rational::one() } else { Rational::zero() };
        if c != want {
            return Err(Error::Degenerate(format!("pq(p − q)² ≠ 1 at u^{e}")));
        }
    }
    Ok((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn printed_expansions() {
        let (p, q) = pq_series(7).unwrap();
        let pe = [(3, rat(1, 1)), (7, rat(1, 5)), (11, rat(2, 25)), (15, rat(127, 4875)), (19, rat(246, 27625)), (23, rat(1246, 414375)), (27, rat(1234412, 1212046875))];
        let qe = [(-1, rat(1, 1)), (3, rat(3, 5)), (7, rat(17, 75)), (11, rat(126, 1625)), (15, rat(32639, 1243125)), (19, rat(6138, 690625)), (23, rat(42898, 14259375))];
        assert_eq!(p, pe.into_iter().collect::<Laurent>());
        assert_eq!(q, qe.into_iter().collect::<Laurent>());
    }
}
