//! The integrable highest weight module `L(Lambda)`.
//!
//! Vectors are combinations of words applied to the highest weight vector
//! `v_Lambda`. Two such combinations are equal in `L(Lambda)` exactly when
//! their difference pairs to zero with every word of the same content
//! under the contravariant form, so all equality tests go through the
//! Gram matrix of the weight space.

mod freudenthal;
mod weight_space;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::cartan::{coroot_pairing, DimVector, HighestWeight, QuiverDatum, Vertex};
use crate::error::{Error, Result};
use crate::qarith::{qint, LaurentPoly, RatFunc};
use crate::uminus::{mono_mul, FlagMonomial, UMinusElement};

pub use freudenthal::{freudenthal_multiplicity, Freudenthal, RootSystem};
pub use weight_space::WeightSpaceModel;

/// Default bound on the number of spanning words of one weight space.
pub const DEFAULT_WORD_CAP: usize = 20_000;

/// A content-homogeneous element of `L(Lambda)`, written as a combination
/// of words applied to `v_Lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    content: DimVector,
    elem: UMinusElement,
}

impl ModuleVector {
    pub fn zero(content: DimVector) -> Self {
        ModuleVector { content, elem: UMinusElement::zero() }
    }

    pub fn from_element(q: &QuiverDatum, elem: UMinusElement) -> Result<Self> {
        let content = elem.content(q).ok_or_else(|| {
            Error::InvalidArgument("content of a zero element is undetermined".into())
        })?;
        if elem.terms().any(|(m, _)| m.content(q) != content) {
            return Err(Error::InvalidArgument("element is not content-homogeneous".into()));
        }
        Ok(ModuleVector { content, elem })
    }

    pub fn monomial(q: &QuiverDatum, m: FlagMonomial) -> Self {
        ModuleVector {
            content: m.content(q),
            elem: UMinusElement::from_monomial(m, LaurentPoly::one()),
        }
    }

    pub fn content(&self) -> &DimVector {
        &self.content
    }

    pub fn element(&self) -> &UMinusElement {
        &self.elem
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FlagMonomial, &LaurentPoly)> {
        self.elem.terms()
    }

    /// Formally zero (no terms). A nonzero combination may still vanish in
    /// `L(Lambda)`; use [`HighestWeightModule::is_zero`] for that.
    pub fn is_formally_zero(&self) -> bool {
        self.elem.is_zero()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        ModuleVector { content: self.content.clone(), elem: self.elem.scale(c) }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.content == other.content || other.is_formally_zero() || self.is_formally_zero());
        let content = if self.is_formally_zero() { other.content.clone() } else { self.content.clone() };
        ModuleVector { content, elem: self.elem.add(&other.elem) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    /// Applies the bar involution to every coefficient.
    pub fn bar(&self) -> Self {
        let mut e = UMinusElement::zero();
        for (m, c) in self.elem.terms() {
            e.add_term(m.clone(), c.bar());
        }
        ModuleVector { content: self.content.clone(), elem: e }
    }

    /// Text form `[(word, poly), ...]` for reports.
    pub fn display_terms(&self, q: &QuiverDatum) -> Vec<(String, LaurentPoly)> {
        self.elem
            .terms()
            .map(|(m, c)| (m.display(q).to_string(), c.clone()))
            .collect()
    }
}

type FormCache = RwLock<HashMap<(FlagMonomial, FlagMonomial), LaurentPoly>>;
type ECache = RwLock<HashMap<(Vertex, FlagMonomial), UMinusElement>>;

/// `L(Lambda)` for a fixed quiver and dominant weight, with memoized
/// operator actions, form values and weight spaces. Safe to share between
/// threads.
pub struct HighestWeightModule {
    quiver: QuiverDatum,
    lambda: HighestWeight,
    word_cap: usize,
    forms: FormCache,
    e_action: ECache,
    spaces: RwLock<BTreeMap<DimVector, Arc<WeightSpaceModel>>>,
}

impl HighestWeightModule {
    pub fn new(quiver: QuiverDatum, lambda: HighestWeight) -> Self {
        assert_eq!(quiver.num_vertices(), lambda.0.len(), "weight length mismatch");
        HighestWeightModule {
            quiver,
            lambda,
            word_cap: DEFAULT_WORD_CAP,
            forms: RwLock::default(),
            e_action: RwLock::default(),
            spaces: RwLock::default(),
        }
    }

    pub fn with_word_cap(mut self, cap: usize) -> Self {
        self.word_cap = cap;
        self
    }

    pub fn quiver(&self) -> &QuiverDatum {
        &self.quiver
    }

    pub fn lambda(&self) -> &HighestWeight {
        &self.lambda
    }

    pub fn word_cap(&self) -> usize {
        self.word_cap
    }

    /// `<Lambda - content, alpha_i^vee>`.
    pub fn pairing(&self, content: &DimVector, i: Vertex) -> i64 {
        coroot_pairing(&self.quiver, &self.lambda, content, i)
    }

    pub fn highest_vector(&self) -> ModuleVector {
        ModuleVector::monomial(&self.quiver, FlagMonomial::empty())
    }

    pub fn monomial_vector(&self, m: FlagMonomial) -> ModuleVector {
        ModuleVector::monomial(&self.quiver, m)
    }

    /// `F_i^{(n)} u`: left multiplication by the word `(i)^n`.
    pub fn apply_f(&self, i: Vertex, n: u32, u: &ModuleVector) -> ModuleVector {
        ModuleVector {
            content: u.content.plus(i, n),
            elem: mono_mul(&UMinusElement::generator(i, n), &u.elem),
        }
    }

    /// Applies a word of divided powers (leftmost factor last).
    pub fn apply_word(&self, word: &[(Vertex, u32)], u: &ModuleVector) -> ModuleVector {
        word.iter().rev().fold(u.clone(), |acc, &(i, n)| self.apply_f(i, n, &acc))
    }

    /// `K_i^{sign} u`.
    pub fn apply_k(&self, i: Vertex, inverse: bool, u: &ModuleVector) -> ModuleVector {
        let p = self.pairing(&u.content, i) as i32;
        u.scale(&LaurentPoly::v_pow(if inverse { -p } else { p }))
    }

    /// `E_i u`. When `u` has no `i` in its content the result is the zero
    /// vector, reported at `u`'s content.
    pub fn apply_e(&self, i: Vertex, u: &ModuleVector) -> ModuleVector {
        let Some(content) = u.content.minus(i, 1) else {
            return ModuleVector::zero(u.content.clone());
        };
        let mut elem = UMinusElement::zero();
        for (m, c) in u.elem.terms() {
            let em = self.e_on_word(i, m);
            for (w, k) in em.terms() {
                elem.add_term(w.clone(), c * k);
            }
        }
        ModuleVector { content, elem }
    }

    /// `E_i^n u` (undivided).
    pub fn apply_e_power(&self, i: Vertex, n: u32, u: &ModuleVector) -> ModuleVector {
        (0..n).fold(u.clone(), |acc, _| self.apply_e(i, &acc))
    }

    /// `E_i (w v_Lambda)` for a single word, memoized. Peels the leftmost
    /// divided power:
    /// `E_i F_j^{(a)} w = F_j^{(a)} E_i w + delta_ij [<mu, alpha_i^vee> + 1 - a] F_i^{(a-1)} w`
    /// where `mu` is the weight of `w`.
    fn e_on_word(&self, i: Vertex, word: &FlagMonomial) -> UMinusElement {
        if word.is_empty() {
            return UMinusElement::zero();
        }
        let key = (i, word.clone());
        if let Some(hit) = self.e_action.read().unwrap().get(&key) {
            return hit.clone();
        }
        let slots = word.slots();
        let (j, a) = slots[0];
        let tail = FlagMonomial::from_normalized(slots[1..].to_vec()).expect("suffix of a normalized word");
        let mut out = mono_mul(&UMinusElement::generator(j, a), &self.e_on_word(i, &tail));
        if j == i {
            let mu = tail.content(&self.quiver);
            let coeff = qint(self.pairing(&mu, i) + 1 - a as i64);
            let mut lowered = vec![(i, a - 1)];
            lowered.extend_from_slice(&slots[1..]);
            let (w, k) = FlagMonomial::normalize(&lowered);
            out.add_term(w, &coeff * &k);
        }
        self.e_action.write().unwrap().insert(key, out.clone());
        out
    }

    /// Contravariant form on two words applied to `v_Lambda`, normalized by
    /// `(v_Lambda, v_Lambda) = 1` and
    /// `(F_i^{(n)} x, y) = [n]^-1 v (F_i^{(n-1)} x, K_i^-1 E_i y)`.
    pub fn form_words(&self, a: &FlagMonomial, b: &FlagMonomial) -> LaurentPoly {
        if a.is_empty() || b.is_empty() {
            return if a.is_empty() && b.is_empty() { LaurentPoly::one() } else { LaurentPoly::zero() };
        }
        let ca = a.content(&self.quiver);
        if ca != b.content(&self.quiver) {
            return LaurentPoly::zero();
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.forms.read().unwrap().get(&key) {
            return hit.clone();
        }
        let (i, n) = a.slots()[0];
        let mut lowered = vec![(i, n - 1)];
        lowered.extend_from_slice(&a.slots()[1..]);
        let (a_low, k) = FlagMonomial::normalize(&lowered);
        debug_assert!(k.is_one());
        let rest = ca.minus(i, 1).expect("word contains i");
        let eb = self.e_on_word(i, b);
        let mut acc = LaurentPoly::zero();
        for (w, c) in eb.terms() {
            let f = self.form_words(&a_low, w);
            if !f.is_zero() {
                acc += &(c * &f);
            }
        }
        // v * K_i^-1 on the weight of E_i b
        let shift = 1 - self.pairing(&rest, i) as i32;
        let value = acc
            .shift(shift)
            .div_exact(&qint(n as i64))
            .unwrap_or_else(|| panic!("contravariant form is not a Laurent polynomial at {a:?}, {b:?}"));
        self.forms.write().unwrap().insert(key, value.clone());
        value
    }

    /// Contravariant form of two vectors (bilinear).
    pub fn form(&self, u: &ModuleVector, w: &ModuleVector) -> LaurentPoly {
        if u.content != w.content {
            return LaurentPoly::zero();
        }
        let mut acc = LaurentPoly::zero();
        for (a, ca) in u.terms() {
            for (b, cb) in w.terms() {
                let f = self.form_words(a, b);
                if !f.is_zero() {
                    acc += &(&(ca * cb) * &f);
                }
            }
        }
        acc
    }

    /// The weight-space model at `nu`, built on first use.
    pub fn weight_space(&self, nu: &DimVector) -> Result<Arc<WeightSpaceModel>> {
        if let Some(ws) = self.spaces.read().unwrap().get(nu) {
            return Ok(ws.clone());
        }
        let ws = Arc::new(WeightSpaceModel::build(self, nu)?);
        let mut guard = self.spaces.write().unwrap();
        Ok(guard.entry(nu.clone()).or_insert(ws).clone())
    }

    /// Builds every weight space of height `<= max_height`, in parallel over
    /// contents. Returned in content order.
    pub fn weight_spaces_up_to(&self, max_height: u32) -> Result<Vec<Arc<WeightSpaceModel>>> {
        let mut out = Vec::new();
        for h in 0..=max_height {
            let contents = self.contents_of_height(h);
            let built: Vec<Result<Arc<WeightSpaceModel>>> =
                contents.par_iter().map(|nu| self.weight_space(nu)).collect();
            for ws in built {
                out.push(ws?);
            }
        }
        Ok(out)
    }

    /// Contents of height `h`, lexicographically decreasing.
    pub fn contents_of_height(&self, h: u32) -> Vec<DimVector> {
        DimVector::all_of_height(self.quiver.num_vertices(), h)
    }

    /// Pairings of `u` with the selected basis words of its weight space.
    /// This is an injective linear image of `u` in `L(Lambda)`.
    pub fn pairing_vector(&self, u: &ModuleVector) -> Result<Vec<LaurentPoly>> {
        let ws = self.weight_space(&u.content)?;
        Ok(ws.pairing_vector(u))
    }

    pub fn coordinates(&self, u: &ModuleVector) -> Result<Vec<RatFunc>> {
        let ws = self.weight_space(&u.content)?;
        Ok(ws.coordinates(u))
    }

    pub fn is_zero(&self, u: &ModuleVector) -> Result<bool> {
        if u.is_formally_zero() {
            return Ok(true);
        }
        Ok(self.pairing_vector(u)?.iter().all(|p| p.is_zero()))
    }

    pub fn equal(&self, u: &ModuleVector, w: &ModuleVector) -> Result<bool> {
        if u.is_formally_zero() && w.is_formally_zero() {
            return Ok(true);
        }
        if u.content != w.content && !u.is_formally_zero() && !w.is_formally_zero() {
            return Ok(self.is_zero(u)? && self.is_zero(w)?);
        }
        self.is_zero(&u.sub(w))
    }

    pub fn freudenthal(&self, nu: &DimVector) -> i64 {
        freudenthal_multiplicity(&self.quiver, &self.lambda, nu)
    }
}
