//! Weight multiplicities from the Freudenthal recursion, with positive
//! root multiplicities from the Peterson recursion. Used as a dimension
//! oracle independent of the Gram-matrix construction.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::cartan::{DimVector, HighestWeight, QuiverDatum};

/// Root multiplicities `mult(beta)` for every `beta <= bound`.
pub struct RootSystem<'q> {
    q: &'q QuiverDatum,
    mult: HashMap<DimVector, i64>,
    peterson: HashMap<DimVector, BigRational>,
}

impl<'q> RootSystem<'q> {
    pub fn new(q: &'q QuiverDatum) -> Self {
        RootSystem { q, mult: HashMap::new(), peterson: HashMap::new() }
    }

    /// Multiplicity of `beta` as a positive root (0 when not a root).
    pub fn multiplicity(&mut self, beta: &DimVector) -> i64 {
        if beta.is_zero() {
            return 0;
        }
        if let Some(&m) = self.mult.get(beta) {
            return m;
        }
        self.compute(beta);
        self.mult[beta]
    }

    fn c(&mut self, beta: &DimVector) -> BigRational {
        if !self.peterson.contains_key(beta) {
            self.compute(beta);
        }
        self.peterson[beta].clone()
    }

    fn compute(&mut self, beta: &DimVector) {
        let ht = beta.height();
        // contribution of beta/k for k >= 2
        let mut from_divisors = BigRational::zero();
        for k in 2..=ht {
            if beta.0.iter().all(|&x| x % k == 0) {
                let sub = DimVector(beta.0.iter().map(|&x| x / k).collect());
                let m = self.multiplicity(&sub);
                from_divisors += BigRational::new(BigInt::from(m), BigInt::from(k));
            }
        }
        let (c, m) = if ht == 1 {
            (BigRational::from_integer(BigInt::from(1)), 1)
        } else {
            let coef = self.q.form(beta, beta) - 2 * ht as i64;
            if coef == 0 {
                // Only non-roots have a vanishing coefficient here.
                (from_divisors.clone(), 0)
            } else {
                let mut rhs = BigRational::zero();
                for part in sub_vectors(beta) {
                    if part.is_zero() || &part == beta {
                        continue;
                    }
                    let other = beta.sub(&part).unwrap();
                    let pair = self.q.form(&part, &other);
                    if pair == 0 {
                        continue;
                    }
                    let cp = self.c(&part);
                    let co = self.c(&other);
                    rhs += cp * co * BigRational::from_integer(BigInt::from(pair));
                }
                let c = rhs / BigRational::from_integer(BigInt::from(coef));
                let m = &c - &from_divisors;
                assert!(m.is_integer(), "root multiplicity of {beta} is not integral");
                (c, m.to_integer().to_i64().expect("root multiplicity fits in i64"))
            }
        };
        self.peterson.insert(beta.clone(), c);
        self.mult.insert(beta.clone(), m);
    }
}

/// All `x` with `0 <= x <= v` componentwise.
fn sub_vectors(v: &DimVector) -> Vec<DimVector> {
    let mut out = vec![Vec::with_capacity(v.0.len())];
    for &x in &v.0 {
        let mut next = Vec::with_capacity(out.len() * (x as usize + 1));
        for prefix in &out {
            for y in 0..=x {
                let mut p = prefix.clone();
                p.push(y);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(DimVector).collect()
}

/// Weight multiplicities of `L(Lambda)` at `Lambda - sum nu_i alpha_i`.
pub struct Freudenthal<'q> {
    q: &'q QuiverDatum,
    lambda: HighestWeight,
    roots: RootSystem<'q>,
    memo: HashMap<DimVector, i64>,
}

impl<'q> Freudenthal<'q> {
    pub fn new(q: &'q QuiverDatum, lambda: &HighestWeight) -> Self {
        Freudenthal { q, lambda: lambda.clone(), roots: RootSystem::new(q), memo: HashMap::new() }
    }

    pub fn multiplicity(&mut self, beta: &DimVector) -> i64 {
        if beta.is_zero() {
            return 1;
        }
        if let Some(&m) = self.memo.get(beta) {
            return m;
        }
        let q = self.q;
        let lam_beta: i64 = q
            .vertices()
            .map(|i| beta.get(i) as i64 * self.lambda.d(i) as i64)
            .sum();
        let denom = 2 * (lam_beta + beta.height() as i64) - q.form(beta, beta);
        let mut num: i64 = 0;
        for alpha in sub_vectors(beta) {
            if alpha.is_zero() {
                continue;
            }
            let ma = self.roots.multiplicity(&alpha);
            if ma == 0 {
                continue;
            }
            let lam_alpha: i64 = q
                .vertices()
                .map(|i| alpha.get(i) as i64 * self.lambda.d(i) as i64)
                .sum();
            let aa = q.form(&alpha, &alpha);
            let ba = q.form(beta, &alpha);
            let mut k = 1i64;
            let mut rest = beta.sub(&alpha);
            while let Some(r) = rest {
                // (lambda + k alpha, alpha) with lambda = Lambda - beta
                let pair = lam_alpha - ba + k * aa;
                let m = self.multiplicity(&r);
                num += ma * pair * m;
                rest = r.sub(&alpha);
                k += 1;
            }
        }
        num *= 2;
        // A vanishing norm difference only happens away from the weights.
        let m = if denom == 0 {
            assert_eq!(num, 0, "Freudenthal recursion inconsistent at {beta}");
            0
        } else {
            assert_eq!(num % denom, 0, "Freudenthal quotient must be integral at {beta}");
            num / denom
        };
        self.memo.insert(beta.clone(), m);
        m
    }
}

/// Multiplicity of the weight `Lambda - sum nu_i alpha_i` in `L(Lambda)`.
pub fn freudenthal_multiplicity(q: &QuiverDatum, lambda: &HighestWeight, nu: &DimVector) -> i64 {
    Freudenthal::new(q, lambda).multiplicity(nu)
}
