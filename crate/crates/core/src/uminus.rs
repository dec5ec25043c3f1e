//! Monomial model of the integral form of `U^-`: words in divided powers
//! `F_{i_1}^{(a_1)} ... F_{i_k}^{(a_k)}`, their product, the restriction
//! coproduct and the twisted derivations it induces.

use std::collections::BTreeMap;
use std::fmt;

use crate::cartan::{DimVector, QuiverDatum, Vertex};
use crate::error::{Error, Result};
use crate::qarith::{qbinom, LaurentPoly};

/// A normalized word `((i_1)^{a_1}, ..., (i_k)^{a_k})`: all `a_l >= 1` and
/// no two adjacent slots on the same vertex. The empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FlagMonomial(Vec<(Vertex, u32)>);

impl FlagMonomial {
    pub fn empty() -> Self {
        FlagMonomial(Vec::new())
    }

    pub fn single(i: Vertex, a: u32) -> Self {
        if a == 0 {
            Self::empty()
        } else {
            FlagMonomial(vec![(i, a)])
        }
    }

    /// Builds a word from raw slots, merging adjacent equal vertices and
    /// dropping empty slots. Returns the q-binomial scalar picked up by the
    /// merges.
    pub fn normalize(slots: &[(Vertex, u32)]) -> (FlagMonomial, LaurentPoly) {
        let mut out: Vec<(Vertex, u32)> = Vec::with_capacity(slots.len());
        let mut coeff = LaurentPoly::one();
        for &(i, a) in slots {
            if a == 0 {
                continue;
            }
            match out.last_mut() {
                Some((j, b)) if *j == i => {
                    coeff = &coeff * &qbinom((*b + a) as i64, *b as i64);
                    *b += a;
                }
                _ => out.push((i, a)),
            }
        }
        (FlagMonomial(out), coeff)
    }

    /// Wraps already-normalized slots.
    pub fn from_normalized(slots: Vec<(Vertex, u32)>) -> Result<Self> {
        let ok = slots.iter().all(|&(_, a)| a > 0)
            && slots.windows(2).all(|w| w[0].0 != w[1].0);
        if ok {
            Ok(FlagMonomial(slots))
        } else {
            Err(Error::InvalidArgument(format!("word {slots:?} is not normalized")))
        }
    }

    pub fn slots(&self) -> &[(Vertex, u32)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn content(&self, q: &QuiverDatum) -> DimVector {
        let mut nu = q.zero_vector();
        for &(i, a) in &self.0 {
            nu.0[i] += a;
        }
        nu
    }

    pub fn height(&self) -> u32 {
        self.0.iter().map(|&(_, a)| a).sum()
    }

    /// `self * other`, normalized.
    pub fn concat(&self, other: &FlagMonomial) -> (FlagMonomial, LaurentPoly) {
        let mut slots = self.0.clone();
        slots.extend_from_slice(&other.0);
        FlagMonomial::normalize(&slots)
    }

    /// Text form `1^2.2^1.1^1`; the empty word renders as the empty string.
    pub fn display<'a>(&'a self, q: &'a QuiverDatum) -> impl fmt::Display + 'a {
        WordDisplay { w: self, q }
    }

    pub fn parse(text: &str, q: &QuiverDatum) -> Result<Self> {
        if text.is_empty() {
            return Ok(Self::empty());
        }
        let mut slots = Vec::new();
        for part in text.split('.') {
            let (name, a) = match part.rsplit_once('^') {
                Some((name, mult)) => {
                    let a: u32 = mult
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("bad multiplicity in {part:?}")))?;
                    (name, a)
                }
                None => (part, 1),
            };
            slots.push((q.vertex(name)?, a));
        }
        Self::from_normalized(slots)
    }

    /// Compares two words slot by slot, vertices ascending then
    /// multiplicities descending. This is the enumeration order of
    /// spanning sets.
    pub fn enumeration_cmp(&self, other: &FlagMonomial) -> std::cmp::Ordering {
        let key = |w: &FlagMonomial| -> Vec<(Vertex, std::cmp::Reverse<u32>)> {
            w.0.iter().map(|&(i, a)| (i, std::cmp::Reverse(a))).collect()
        };
        key(self).cmp(&key(other))
    }
}

struct WordDisplay<'a> {
    w: &'a FlagMonomial,
    q: &'a QuiverDatum,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(i, a)) in self.w.0.iter().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            write!(f, "{}^{}", self.q.name(i), a)?;
        }
        Ok(())
    }
}

impl fmt::Debug for FlagMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.0)
    }
}

/// All normalized words of the given content, in enumeration order.
pub fn enumerate_words(nu: &DimVector, cap: usize) -> Result<Vec<FlagMonomial>> {
    fn rec(
        left: &mut Vec<u32>,
        prev: Option<Vertex>,
        cur: &mut Vec<(Vertex, u32)>,
        out: &mut Vec<FlagMonomial>,
        cap: usize,
    ) -> Result<()> {
        if left.iter().all(|&x| x == 0) {
            if out.len() >= cap {
                return Err(Error::CapExceeded(format!(
                    "more than {cap} spanning words"
                )));
            }
            out.push(FlagMonomial(cur.clone()));
            return Ok(());
        }
        for i in 0..left.len() {
            if Some(i) == prev || left[i] == 0 {
                continue;
            }
            for a in (1..=left[i]).rev() {
                left[i] -= a;
                cur.push((i, a));
                rec(left, Some(i), cur, out, cap)?;
                cur.pop();
                left[i] += a;
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(&mut nu.0.clone(), None, &mut Vec::new(), &mut out, cap)?;
    Ok(out)
}

/// A finite `Z[v, v^-1]`-combination of words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UMinusElement {
    terms: BTreeMap<FlagMonomial, LaurentPoly>,
}

impl UMinusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(FlagMonomial::empty(), LaurentPoly::one())
    }

    pub fn from_monomial(m: FlagMonomial, c: LaurentPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    /// `F_i^{(a)}`.
    pub fn generator(i: Vertex, a: u32) -> Self {
        Self::from_monomial(FlagMonomial::single(i, a), LaurentPoly::one())
    }

    pub fn add_term(&mut self, m: FlagMonomial, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FlagMonomial, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &FlagMonomial) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    /// Content of the (homogeneous) element; `None` for zero.
    pub fn content(&self, q: &QuiverDatum) -> Option<DimVector> {
        self.terms.keys().next().map(|m| m.content(q))
    }
}

impl fmt::Debug for UMinusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Product: bilinear extension of concatenation with the merge rule
/// `F_i^{(a)} F_i^{(b)} = [a+b choose a] F_i^{(a+b)}`.
pub fn mono_mul(x: &UMinusElement, y: &UMinusElement) -> UMinusElement {
    let mut out = UMinusElement::zero();
    for (mx, cx) in &x.terms {
        for (my, cy) in &y.terms {
            let (m, k) = mx.concat(my);
            out.add_term(m, &(cx * cy) * &k);
        }
    }
    out
}

/// Exponent `M(tau, omega)` of the restriction shift for the slotwise
/// split `tau + omega` of one word. `slots` are the word's vertices; `b`
/// and `c` the multiplicities going to the first and second factor.
/// `arrows` is the arrow set the two edge sums run over.
fn shift_exponent_over(
    q: &QuiverDatum,
    arrows: &[(Vertex, Vertex)],
    slots: &[Vertex],
    b: &[u32],
    c: &[u32],
) -> i64 {
    let n = slots.len();
    let at = |l: usize, mult: &[u32], i: Vertex| -> i64 {
        if slots[l] == i {
            mult[l] as i64
        } else {
            0
        }
    };
    let mut t_dim = vec![0i64; q.num_vertices()];
    let mut w_dim = vec![0i64; q.num_vertices()];
    for l in 0..n {
        t_dim[slots[l]] += b[l] as i64;
        w_dim[slots[l]] += c[l] as i64;
    }
    let mut m = 0i64;
    for &(h1, h2) in arrows {
        for l in 0..n {
            for lp in 0..l {
                m -= at(lp, b, h1) * at(l, c, h2) + at(lp, b, h2) * at(l, c, h1);
            }
        }
        m += t_dim[h1] * w_dim[h2] + t_dim[h2] * w_dim[h1];
    }
    for l in 0..n {
        for lp in 0..n {
            if slots[l] != slots[lp] {
                continue;
            }
            let tw = b[lp] as i64 * c[l] as i64;
            if l < lp {
                m -= tw;
            } else if l > lp {
                m += tw;
            }
        }
    }
    m -= (0..q.num_vertices()).map(|i| t_dim[i] * w_dim[i]).sum::<i64>();
    m
}

/// The restriction shift with both edge sums running over the orientation
/// (each edge counted once).
pub fn shift_exponent(q: &QuiverDatum, slots: &[Vertex], b: &[u32], c: &[u32]) -> i64 {
    shift_exponent_over(q, q.orientation(), slots, b, c)
}

/// Same formula with the edge sums running over both orientations of every
/// edge. Kept for comparison only; it doubles the edge contribution.
pub fn shift_exponent_doubled(q: &QuiverDatum, slots: &[Vertex], b: &[u32], c: &[u32]) -> i64 {
    let mut arrows: Vec<(Vertex, Vertex)> = q.orientation().to_vec();
    arrows.extend(q.orientation().iter().map(|&(a, b)| (b, a)));
    shift_exponent_over(q, &arrows, slots, b, c)
}

type ShiftFn = fn(&QuiverDatum, &[Vertex], &[u32], &[u32]) -> i64;

/// Restriction coproduct of a word onto the split `(first, second)`:
/// all slotwise splittings `b_l + c_l = a_l` whose contents match, each
/// weighted by `v^{M}` and by the merge scalars of the two normalized
/// factor words. Terms with equal factor pairs are summed; the result is
/// sorted by `(tau, omega)`.
pub fn restriction_coproduct(
    q: &QuiverDatum,
    m: &FlagMonomial,
    first: &DimVector,
    second: &DimVector,
) -> Result<Vec<(FlagMonomial, FlagMonomial, LaurentPoly)>> {
    restriction_coproduct_with(q, m, first, second, shift_exponent)
}

pub fn restriction_coproduct_with(
    q: &QuiverDatum,
    m: &FlagMonomial,
    first: &DimVector,
    second: &DimVector,
    shift: ShiftFn,
) -> Result<Vec<(FlagMonomial, FlagMonomial, LaurentPoly)>> {
    if first.add(second) != m.content(q) {
        return Err(Error::InconsistentSplit(format!(
            "{first} + {second} != content {}",
            m.content(q)
        )));
    }
    let slots: Vec<Vertex> = m.slots().iter().map(|&(i, _)| i).collect();
    let mults: Vec<u32> = m.slots().iter().map(|&(_, a)| a).collect();
    let mut acc: BTreeMap<(FlagMonomial, FlagMonomial), LaurentPoly> = BTreeMap::new();
    let mut b = vec![0u32; slots.len()];
    let mut remaining = first.0.clone();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        q: &QuiverDatum,
        l: usize,
        slots: &[Vertex],
        mults: &[u32],
        b: &mut Vec<u32>,
        remaining: &mut Vec<u32>,
        acc: &mut BTreeMap<(FlagMonomial, FlagMonomial), LaurentPoly>,
        shift: ShiftFn,
    ) {
        if l == slots.len() {
            if remaining.iter().any(|&x| x != 0) {
                return;
            }
            let c: Vec<u32> = mults.iter().zip(b.iter()).map(|(a, x)| a - x).collect();
            let exp = shift(q, slots, b, &c);
            let tau: Vec<(Vertex, u32)> = slots.iter().copied().zip(b.iter().copied()).collect();
            let omega: Vec<(Vertex, u32)> = slots.iter().copied().zip(c.iter().copied()).collect();
            let (tw, tk) = FlagMonomial::normalize(&tau);
            let (ow, ok) = FlagMonomial::normalize(&omega);
            let coeff = &(&tk * &ok) * &LaurentPoly::v_pow(exp as i32);
            let e = acc.entry((tw, ow)).or_default();
            *e += &coeff;
            return;
        }
        let i = slots[l];
        let hi = mults[l].min(remaining[i]);
        for x in 0..=hi {
            b[l] = x;
            remaining[i] -= x;
            rec(q, l + 1, slots, mults, b, remaining, acc, shift);
            remaining[i] += x;
        }
        b[l] = 0;
    }

    rec(q, 0, &slots, &mults, &mut b, &mut remaining, &mut acc, shift);
    Ok(acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((t, w), c)| (t, w, c))
        .collect())
}

/// Coproduct of a whole element onto one split, as a map of factor pairs.
pub fn coproduct_element(
    q: &QuiverDatum,
    x: &UMinusElement,
    first: &DimVector,
    second: &DimVector,
) -> Result<BTreeMap<(FlagMonomial, FlagMonomial), LaurentPoly>> {
    let mut acc: BTreeMap<(FlagMonomial, FlagMonomial), LaurentPoly> = BTreeMap::new();
    for (m, c) in x.terms() {
        for (t, w, k) in restriction_coproduct(q, m, first, second)? {
            *acc.entry((t, w)).or_default() += &(c * &k);
        }
    }
    acc.retain(|_, c| !c.is_zero());
    Ok(acc)
}

/// `r_i`: the component of the coproduct whose second factor is `F_i`.
pub fn rbar_right(q: &QuiverDatum, x: &UMinusElement, i: Vertex) -> UMinusElement {
    derivation(q, x, i, false)
}

/// `_i r`: the component of the coproduct whose first factor is `F_i`.
pub fn rbar_left(q: &QuiverDatum, x: &UMinusElement, i: Vertex) -> UMinusElement {
    derivation(q, x, i, true)
}

fn derivation(q: &QuiverDatum, x: &UMinusElement, i: Vertex, left: bool) -> UMinusElement {
    let mut out = UMinusElement::zero();
    let unit = q.unit(i);
    for (m, c) in x.terms() {
        let content = m.content(q);
        let Some(rest) = content.minus(i, 1) else {
            continue;
        };
        let (first, second) = if left { (&unit, &rest) } else { (&rest, &unit) };
        let terms = restriction_coproduct(q, m, first, second).expect("split matches content");
        for (t, w, k) in terms {
            let kept = if left { w } else { t };
            out.add_term(kept, c * &k);
        }
    }
    out
}

/// `sum_{m=0}^{N} (-1)^m F_i^{(m)} F_j F_i^{(N-m)}` with `N = 1 + a_ij`.
pub fn serre_element(q: &QuiverDatum, i: Vertex, j: Vertex) -> Result<UMinusElement> {
    if i == j {
        return Err(Error::InvalidArgument("Serre element needs i != j".into()));
    }
    let n = 1 + q.edges(i, j);
    let mut out = UMinusElement::zero();
    for m in 0..=n {
        let w = mono_mul(
            &mono_mul(&UMinusElement::generator(i, m), &UMinusElement::generator(j, 1)),
            &UMinusElement::generator(i, n - m),
        );
        let sign = if m % 2 == 0 { 1 } else { -1 };
        out = out.add(&w.scale(&LaurentPoly::constant(sign)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::qint;

    fn w(slots: &[(Vertex, u32)]) -> FlagMonomial {
        FlagMonomial::from_normalized(slots.to_vec()).unwrap()
    }

    #[test]
    fn product_examples() {
        let f1 = UMinusElement::generator(0, 1);
        let sq = mono_mul(&f1, &f1);
        assert_eq!(sq.num_terms(), 1);
        assert_eq!(sq.coeff(&w(&[(0, 2)])), qint(2));

        let x = mono_mul(&UMinusElement::generator(0, 1), &UMinusElement::generator(1, 1));
        assert_eq!(mono_mul(&UMinusElement::one(), &x), x);
        assert_eq!(x.coeff(&w(&[(0, 1), (1, 1)])), LaurentPoly::one());
    }

    #[test]
    fn coproduct_examples_a2() {
        let q = QuiverDatum::type_a(2);
        let m = w(&[(0, 1), (1, 1)]);
        let t = restriction_coproduct(&q, &m, &DimVector(vec![1, 0]), &DimVector(vec![0, 1])).unwrap();
        assert_eq!(t, vec![(w(&[(0, 1)]), w(&[(1, 1)]), LaurentPoly::one())]);
        let t = restriction_coproduct(&q, &m, &DimVector(vec![0, 1]), &DimVector(vec![1, 0])).unwrap();
        assert_eq!(t, vec![(w(&[(1, 1)]), w(&[(0, 1)]), LaurentPoly::v_pow(1))]);
        // counting both arrow directions doubles the exponent
        let t = restriction_coproduct_with(
            &q,
            &m,
            &DimVector(vec![0, 1]),
            &DimVector(vec![1, 0]),
            shift_exponent_doubled,
        )
        .unwrap();
        assert_eq!(t[0].2, LaurentPoly::v_pow(2));
    }

    #[test]
    fn coproduct_trivial_split() {
        let q = QuiverDatum::type_a(3);
        let m = w(&[(0, 2), (1, 1), (2, 1), (0, 1)]);
        let nu = m.content(&q);
        let t = restriction_coproduct(&q, &m, &nu, &q.zero_vector()).unwrap();
        assert_eq!(t, vec![(m.clone(), FlagMonomial::empty(), LaurentPoly::one())]);
        assert!(restriction_coproduct(&q, &m, &nu, &q.unit(0)).is_err());
    }

    #[test]
    fn derivation_examples() {
        let a1 = QuiverDatum::type_a(1);
        let r = rbar_right(&a1, &UMinusElement::generator(0, 1), 0);
        assert_eq!(r, UMinusElement::one());
        let r = rbar_right(&a1, &UMinusElement::generator(0, 2), 0);
        assert_eq!(r, UMinusElement::from_monomial(w(&[(0, 1)]), LaurentPoly::v_pow(-1)));

        let a2 = QuiverDatum::type_a(2);
        let x = UMinusElement::from_monomial(w(&[(0, 1), (1, 1)]), LaurentPoly::one());
        // first factor F_2 moves past F_1: exponent -(alpha_2, alpha_1) = 1
        let l = rbar_left(&a2, &x, 1);
        assert_eq!(l, UMinusElement::from_monomial(w(&[(0, 1)]), LaurentPoly::v_pow(1)));
        // no F_2 present on the left of anything: zero derivation at a missing vertex
        let y = UMinusElement::generator(0, 2);
        assert!(rbar_left(&a2, &y, 1).is_zero());
    }

    #[test]
    fn serre_examples() {
        let a2 = QuiverDatum::type_a(2);
        let s = serre_element(&a2, 0, 1).unwrap();
        assert_eq!(s.num_terms(), 3);
        assert_eq!(s.coeff(&w(&[(0, 2), (1, 1)])), LaurentPoly::one());
        assert_eq!(s.coeff(&w(&[(0, 1), (1, 1), (0, 1)])), LaurentPoly::constant(-1));
        assert_eq!(s.coeff(&w(&[(1, 1), (0, 2)])), LaurentPoly::one());

        let q = QuiverDatum::new(&["1", "2"], &[]).unwrap();
        let s = serre_element(&q, 0, 1).unwrap();
        assert_eq!(s.num_terms(), 2);
        // m = 0 term is F_2 F_1, m = 1 term is -F_1 F_2
        assert_eq!(s.coeff(&w(&[(1, 1), (0, 1)])), LaurentPoly::one());
        assert_eq!(s.coeff(&w(&[(0, 1), (1, 1)])), LaurentPoly::constant(-1));

        let kr = QuiverDatum::multi_edge(2);
        let s = serre_element(&kr, 0, 1).unwrap();
        assert_eq!(s.num_terms(), 4);
        assert_eq!(s.coeff(&w(&[(0, 1), (1, 1), (0, 2)])), LaurentPoly::constant(-1));
        assert_eq!(s.coeff(&w(&[(0, 3), (1, 1)])), LaurentPoly::constant(-1));
        assert!(serre_element(&kr, 0, 0).is_err());
    }

    #[test]
    fn word_text_round_trip() {
        let q = QuiverDatum::type_a(2);
        let m = w(&[(0, 2), (1, 1), (0, 1)]);
        let s = m.display(&q).to_string();
        assert_eq!(s, "1^2.2^1.1^1");
        assert_eq!(FlagMonomial::parse(&s, &q).unwrap(), m);
        assert_eq!(FlagMonomial::parse("", &q).unwrap(), FlagMonomial::empty());
        assert!(FlagMonomial::parse("1^1.1^1", &q).is_err());
    }

    #[test]
    fn enumeration_order() {
        let words = enumerate_words(&DimVector(vec![2, 1]), 100).unwrap();
        let want = vec![
            w(&[(0, 2), (1, 1)]),
            w(&[(0, 1), (1, 1), (0, 1)]),
            w(&[(1, 1), (0, 2)]),
        ];
        assert_eq!(words, want);
        assert!(enumerate_words(&DimVector(vec![3, 3]), 3).is_err());
        assert_eq!(enumerate_words(&DimVector(vec![0, 0]), 1).unwrap(), vec![FlagMonomial::empty()]);
    }
}
