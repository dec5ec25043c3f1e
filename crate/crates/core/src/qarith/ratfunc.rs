//! The fraction field `Q(v)`, as reduced quotients of Laurent polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::LaurentPoly;

/// A reduced fraction `num / den`.
///
/// Canonical form: the denominator is a polynomial in `v` with nonzero
/// constant term and positive leading coefficient (all powers of `v` live
/// in the numerator), and numerator and denominator share no common factor
/// in `Z[v]`. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "RatFunc with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let dk = den.min_degree().unwrap();
        let nk = num.min_degree().unwrap();
        let d = to_dense(&den);
        let n = to_dense(&num);
        let g = dense_gcd(&n, &d);
        let mut n = dense_div_exact(&n, &g);
        let mut d = dense_div_exact(&d, &g);
        if d.last().unwrap().is_negative() {
            n.iter_mut().for_each(|c| *c = -std::mem::take(c));
            d.iter_mut().for_each(|c| *c = -std::mem::take(c));
        }
        RatFunc {
            num: from_dense(&n, nk - dk),
            den: from_dense(&d, 0),
        }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(p)` when the fraction is a Laurent polynomial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn into_laurent(self) -> Option<LaurentPoly> {
        self.den.is_one().then_some(self.num)
    }

    pub fn bar(&self) -> Self {
        RatFunc::new(self.num.bar(), self.den.bar())
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| RatFunc::new(self.den.clone(), self.num.clone()))
    }

    /// Substitutes `v = 1`; `None` when `v = 1` is a pole.
    pub fn eval_one(&self) -> Option<num_rational::BigRational> {
        let d = self.den.eval_one();
        if d.is_zero() {
            return None;
        }
        Some(num_rational::BigRational::new(self.num.eval_one(), d))
    }

    pub fn div(&self, rhs: &RatFunc) -> Option<RatFunc> {
        rhs.inv().map(|r| self * &r)
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::new(p, LaurentPoly::one())
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from(LaurentPoly::constant(c))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

// Dense helpers over Z[v], coefficient of v^k at index k, no trailing zeros.

fn to_dense(p: &LaurentPoly) -> Vec<BigInt> {
    let lo = p.min_degree().unwrap();
    let hi = p.max_degree().unwrap();
    let mut out = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        out[(e - lo) as usize] = c.clone();
    }
    out
}

fn from_dense(c: &[BigInt], shift: i32) -> LaurentPoly {
    LaurentPoly::from_terms(
        c.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k as i32 + shift, x.clone())),
    )
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    if c.is_zero() {
        return p.to_vec();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        let off = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[k + off] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Gcd in `Z[v]` with positive leading coefficient (primitive PRS).
fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let ca = content(a);
    let cb = content(b);
    let c = ca.gcd(&cb);
    let mut x = primitive(a);
    let mut y = primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() && y.len() > 1 {
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    let mut g = if y.is_empty() { x } else { vec![BigInt::from(1)] };
    if g.last().unwrap().is_negative() {
        g.iter_mut().for_each(|v| *v = -std::mem::take(v));
    }
    g.iter().map(|v| v * &c).collect()
}

fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if a.len() < b.len() {
        assert!(a.iter().all(|c| c.is_zero()), "inexact polynomial division");
        return vec![];
    }
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (qc, rem) = r[k + db].div_rem(&b[db]);
        assert!(rem.is_zero(), "inexact polynomial division");
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &qc * bc;
        }
        q[k] = qc;
    }
    assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
    trim(&mut q);
    q
}
