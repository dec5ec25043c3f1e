//! Quantum integers, factorials and binomials.

use super::LaurentPoly;

/// `[n] = (v^n - v^-n) / (v - v^-1)`; `[-n] = -[n]`.
pub fn qint(n: i64) -> LaurentPoly {
    let m = n.unsigned_abs() as i32;
    let p = LaurentPoly::from_terms((0..m).map(|k| (m - 1 - 2 * k, 1)));
    if n < 0 {
        -p
    } else {
        p
    }
}

/// `[n]! = [1][2]...[n]`, with `[0]! = 1`.
pub fn qfact(n: u32) -> LaurentPoly {
    (1..=n as i64).fold(LaurentPoly::one(), |acc, k| &acc * &qint(k))
}

/// Gaussian binomial `[n choose k]`. Zero for `k > n >= 0`.
///
/// For negative `n` the usual identity
/// `[n choose k] = (-1)^k [k - n - 1 choose k]` is used.
pub fn qbinom(n: i64, k: i64) -> LaurentPoly {
    assert!(k >= 0, "qbinom requires k >= 0");
    if n < 0 {
        let p = qbinom(k - n - 1, k);
        return if k % 2 == 0 { p } else { -p };
    }
    if k > n {
        return LaurentPoly::zero();
    }
    let num = qfact(n as u32);
    let den = &qfact(k as u32) * &qfact((n - k) as u32);
    num.div_exact(&den)
        .expect("q-binomial division must be exact")
}
