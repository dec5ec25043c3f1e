//! Sparse Laurent polynomials in one variable `v` with arbitrary-precision
//! integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of `Z[v, v^-1]`.
///
/// Stored as a map from exponent to coefficient. No stored coefficient is
/// ever zero, so the zero polynomial is the empty map and structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(0, c)
    }

    /// `c * v^exp`.
    pub fn monomial<T: Into<BigInt>>(exp: i32, c: T) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(exp, 1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, T>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, T)>,
        T: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Width of the exponent range, used as the pivot heuristic in
    /// elimination.
    pub fn degree_span(&self) -> u32 {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => (hi - lo) as u32,
            _ => 0,
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    fn add_term(&mut self, exp: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale<T: Into<BigInt>>(&self, s: T) -> Self {
        let s = s.into();
        if s.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * &s)).collect(),
        }
    }

    /// The ring involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| self.terms.get(&-e).is_some_and(|d| d == c))
    }

    /// The unique bar-invariant polynomial whose part in degrees `>= 0`
    /// agrees with that of `self`.
    pub fn sym_truncate(&self) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms.range(0..) {
            out.add_term(*e, c.clone());
            if *e > 0 {
                out.add_term(-*e, c.clone());
            }
        }
        out
    }

    /// True when every exponent is strictly negative (this includes zero).
    pub fn in_negative_part(&self) -> bool {
        self.max_degree().is_none_or(|d| d < 0)
    }

    /// True for elements of `1 + v^-1 Z[v^-1]`.
    pub fn is_one_mod_negative(&self) -> bool {
        let mut rest = self.clone();
        rest.add_term(0, -BigInt::one());
        rest.in_negative_part()
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc + c)
    }

    /// Value at `v = x` in `Z/pZ`; `x` must be invertible mod `p`.
    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let x_inv = mod_pow(x, p - 2, p);
        let pb = BigInt::from(p);
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let base = if *e >= 0 { x } else { x_inv };
            let xp = mod_pow(base, e.unsigned_abs() as u64, p);
            let cm = c.mod_floor(&pb);
            let cm: u64 = cm.try_into().expect("reduced residue fits in u64");
            acc = (acc as u128 + (cm as u128 * xp as u128) % p as u128) as u64 % p;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in `Z[v, v^-1]`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        if d.num_terms() == 1 {
            let (de, dc) = d.terms().next().unwrap();
            let mut out = BTreeMap::new();
            for (e, c) in &self.terms {
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                out.insert(e - de, q);
            }
            return Some(LaurentPoly { terms: out });
        }
        let d_lo = d.min_degree().unwrap();
        let d_hi = d.max_degree().unwrap();
        let d_lc = d.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        // Division in Z[v] after clearing the low powers of v: the remainder
        // must vanish once its span drops below the divisor's.
        while let (Some(r_lo), Some(r_hi)) = (rem.min_degree(), rem.max_degree()) {
            if r_hi - r_lo < d_hi - d_lo {
                return None;
            }
            let (q, r) = rem.terms[&r_hi].div_rem(&d_lc);
            if !r.is_zero() {
                return None;
            }
            let qe = r_hi - d_hi;
            for (e, c) in &d.terms {
                rem.add_term(e + qe, -(c * &q));
            }
            quot.add_term(qe, q);
        }
        Some(quot)
    }

    /// Integer content: gcd of the coefficients (zero for the zero poly).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = LaurentPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest degree first, e.g. `v^2 + 3 - v^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let show_coeff = *e == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "{}v", if show_coeff { "*" } else { "" })?,
                e => write!(f, "{}v^{e}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermsRepr {
    terms: Vec<(i32, String)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TermsRepr {
            terms: self.terms.iter().map(|(e, c)| (*e, c.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = TermsRepr::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in repr.terms {
            let c: BigInt = c
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {c:?}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(t: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(t.iter().copied())
    }

    #[test]
    fn bar_examples() {
        assert_eq!(lp(&[(2, 1), (0, 3)]).bar(), lp(&[(-2, 1), (0, 3)]));
        assert_eq!(LaurentPoly::zero().bar(), LaurentPoly::zero());
        let sym = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(sym.bar(), sym);
    }

    #[test]
    fn sym_truncate_examples() {
        assert_eq!(
            lp(&[(2, 1), (0, 5), (-1, 1)]).sym_truncate(),
            lp(&[(2, 1), (0, 5), (-2, 1)])
        );
        assert!(lp(&[(-3, 1)]).sym_truncate().is_zero());
        let sym = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(sym.sym_truncate(), sym);
    }

    #[test]
    fn zero_coefficients_never_stored() {
        let p = lp(&[(1, 2), (1, -2), (0, 1)]);
        assert_eq!(p.num_terms(), 1);
        let q = &p - &p;
        assert!(q.is_zero());
        assert_eq!(q, LaurentPoly::zero());
    }

    #[test]
    fn exact_division() {
        let a = lp(&[(1, 1), (-1, 1)]);
        let b = lp(&[(2, 1), (0, 1), (-2, 1)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
        assert_eq!(lp(&[(3, 4)]).div_exact(&lp(&[(1, 2)])), Some(lp(&[(2, 2)])));
        assert_eq!(lp(&[(3, 3)]).div_exact(&lp(&[(1, 2)])), None);
    }

    #[test]
    fn display_and_json() {
        let p = lp(&[(2, 1), (0, -3), (-1, 2)]);
        assert_eq!(p.to_string(), "v^2 - 3 + 2*v^-1");
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"terms":[[-1,"2"],[0,"-3"],[2,"1"]]}"#);
        let back: LaurentPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn one_mod_negative() {
        assert!(lp(&[(0, 1), (-2, 1)]).is_one_mod_negative());
        assert!(!lp(&[(0, 1), (1, 1)]).is_one_mod_negative());
        assert!(!lp(&[(0, 2)]).is_one_mod_negative());
    }

    #[test]
    fn modular_evaluation_matches_integer_evaluation() {
        let p = lp(&[(3, 5), (0, -7), (-2, 4)]);
        let p_mod = 1_000_003u64;
        // at x = 1 both agree
        let want = p.eval_one().mod_floor(&BigInt::from(p_mod));
        assert_eq!(BigInt::from(p.eval_mod(1, p_mod)), want);
    }
}
