//! Invariant suites over a module up to a height bound. Each suite counts
//! the checks it performed and keeps a few counterexamples.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::canonical::{specialize_matrix, transition_matrix, CanonicalBasis, CbId};
use crate::cartan::{DimVector, Vertex};
use crate::crystal::{build_left_graph, monomial_basis, replay, sbar, LeftGraph};
use crate::error::{Error, Result};
use crate::hwmodule::{HighestWeightModule, ModuleVector};
use crate::qarith::{qbinom, qint, LaurentPoly};
use crate::uminus::{enumerate_words, restriction_coproduct, rbar_left, rbar_right, FlagMonomial, UMinusElement};

pub const SUITES: &[&str] = &[
    "relations",
    "serre",
    "contravariance",
    "integrability",
    "derivation",
    "coproduct",
    "dims",
    "bar",
    "orthogonality",
    "triangularity",
    "crystal",
];

/// Counterexamples kept per suite.
const MAX_EXAMPLES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: usize,
    pub examples: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.to_string(), checks: 0, failures: 0, examples: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(describe());
            }
        }
    }
}

/// `E_i` as used by the derivation suite; replaceable for mutation tests.
pub type EOperator<'a> = dyn Fn(Vertex, &ModuleVector) -> ModuleVector + Sync + 'a;

pub struct Verifier {
    module: Arc<HighestWeightModule>,
    max_height: u32,
    order: Vec<Vertex>,
    crystal: OnceLock<(CanonicalBasis, LeftGraph)>,
}

impl Verifier {
    pub fn new(module: Arc<HighestWeightModule>, max_height: u32, order: Vec<Vertex>) -> Self {
        Verifier { module, max_height, order, crystal: OnceLock::new() }
    }

    /// Reuses an already computed basis and graph.
    pub fn with_crystal(mut self, cb: CanonicalBasis, graph: LeftGraph) -> Self {
        self.crystal = OnceLock::from((cb, graph));
        self
    }

    fn crystal(&self) -> Result<&(CanonicalBasis, LeftGraph)> {
        if let Some(c) = self.crystal.get() {
            return Ok(c);
        }
        let cb = CanonicalBasis::compute(self.module.clone(), self.max_height)?;
        let graph = build_left_graph(&cb)?;
        Ok(self.crystal.get_or_init(|| (cb, graph)))
    }

    pub fn run(&self, names: &[&str]) -> Result<Vec<SuiteReport>> {
        names.iter().map(|n| self.run_one(n)).collect()
    }

    pub fn run_one(&self, name: &str) -> Result<SuiteReport> {
        match name {
            "relations" => self.relations(),
            "serre" => self.serre(),
            "contravariance" => self.contravariance(),
            "integrability" => self.integrability(),
            "derivation" => self.derivation_with(&|i, u| self.module.apply_e(i, u)),
            "coproduct" => self.coproduct(),
            "dims" => self.dims(),
            "bar" => self.bar(),
            "orthogonality" => self.orthogonality(),
            "triangularity" => self.triangularity(),
            "crystal" => self.crystal_suite(),
            other => Err(Error::InvalidArgument(format!(
                "unknown suite {other:?}; known: {}",
                SUITES.join(", ")
            ))),
        }
    }

    /// Selected basis words of every weight space up to the height bound.
    fn basis_vectors(&self) -> Result<Vec<ModuleVector>> {
        let q = self.module.quiver();
        Ok(self
            .module
            .weight_spaces_up_to(self.max_height)?
            .iter()
            .flat_map(|ws| ws.basis_words().map(|w| ModuleVector::monomial(q, w.clone())).collect::<Vec<_>>())
            .collect())
    }

    /// Zero test in `L(Lambda)`. Above the height bound a vector is zero iff
    /// every `E_i` kills it (irreducibility), which avoids building large
    /// weight spaces.
    pub fn vanishes(&self, u: &ModuleVector) -> Result<bool> {
        if u.is_formally_zero() {
            return Ok(true);
        }
        if u.content().height() <= self.max_height {
            return self.module.is_zero(u);
        }
        for i in self.module.quiver().vertices() {
            if !self.vanishes(&self.module.apply_e(i, u))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn word(&self, u: &ModuleVector) -> String {
        let q = self.module.quiver();
        u.terms().next().map_or_else(String::new, |(m, _)| m.display(q).to_string())
    }

    fn relations(&self) -> Result<SuiteReport> {
        let m = &self.module;
        let q = m.quiver();
        let mut rep = SuiteReport::new("relations");
        for u in self.basis_vectors()? {
            let mu = u.content().clone();
            for i in q.vertices() {
                for j in q.vertices() {
                    let ef = m.apply_e(i, &m.apply_f(j, 1, &u));
                    let fe = m.apply_f(j, 1, &m.apply_e(i, &u));
                    let diff = combine(&ef, &fe, -1);
                    let ok = if i != j {
                        self.vanishes(&diff)?
                    } else {
                        let want = u.scale(&qint(m.pairing(&mu, i)));
                        self.vanishes(&combine(&diff, &want, -1))?
                    };
                    rep.check(ok, || format!("[E_{i}, F_{j}] on {} at {mu}", self.word(&u)));
                    // K_j E_i = v^{c_ij} E_i K_j and K_j F_i = v^{-c_ij} F_i K_j
                    let c = q.cartan(i, j) as i32;
                    let lhs = m.apply_k(j, false, &m.apply_e(i, &u));
                    let rhs = m.apply_e(i, &m.apply_k(j, false, &u)).scale(&LaurentPoly::v_pow(c));
                    rep.check(self.vanishes(&combine(&lhs, &rhs, -1))?, || {
                        format!("K_{j} E_{i} on {}", self.word(&u))
                    });
                    let lhs = m.apply_k(j, false, &m.apply_f(i, 1, &u));
                    let rhs = m.apply_f(i, 1, &m.apply_k(j, false, &u)).scale(&LaurentPoly::v_pow(-c));
                    rep.check(self.vanishes(&combine(&lhs, &rhs, -1))?, || {
                        format!("K_{j} F_{i} on {}", self.word(&u))
                    });
                    let back = m.apply_k(j, true, &m.apply_k(j, false, &u));
                    rep.check(back == u, || format!("K_{j}^-1 K_{j} on {}", self.word(&u)));
                }
            }
        }
        Ok(rep)
    }

    fn serre(&self) -> Result<SuiteReport> {
        let m = &self.module;
        let q = m.quiver();
        let mut rep = SuiteReport::new("serre");
        for u in self.basis_vectors()? {
            for i in q.vertices() {
                for j in q.vertices().filter(|&j| j != i) {
                    let n = 1 + q.edges(i, j);
                    let mut f_side = ModuleVector::zero(u.content().plus(i, n).plus(j, 1));
                    let mut e_side: Option<ModuleVector> = None;
                    for k in 0..=n {
                        let sign = if k % 2 == 0 { 1 } else { -1 };
                        let f = m.apply_word(&[(i, k), (j, 1), (i, n - k)], &u);
                        f_side = combine(&f_side, &f, sign);
                        let e = m.apply_e_power(i, k, &m.apply_e(j, &m.apply_e_power(i, n - k, &u)));
                        let e = e.scale(&(&qbinom(n as i64, k as i64) * &LaurentPoly::constant(sign)));
                        e_side = Some(match e_side {
                            None => e,
                            Some(acc) => combine(&acc, &e, 1),
                        });
                    }
                    rep.check(self.vanishes(&f_side)?, || format!("F-Serre ({i},{j}) on {}", self.word(&u)));
                    let e_side = e_side.expect("n >= 1");
                    rep.check(self.vanishes(&e_side)?, || format!("E-Serre ({i},{j}) on {}", self.word(&u)));
                }
            }
        }
        Ok(rep)
    }

    fn contravariance(&self) -> Result<SuiteReport> {
        let m = &self.module;
        let q = m.quiver();
        let mut rep = SuiteReport::new("contravariance");
        let spaces = m.weight_spaces_up_to(self.max_height)?;
        for ws in &spaces {
            for s in 0..ws.spanning.len() {
                for t in 0..s {
                    rep.check(ws.gram[s][t] == ws.gram[t][s], || {
                        format!("asymmetric Gram at {}: {} vs {}", ws.content, ws.spanning[s].display(q), ws.spanning[t].display(q))
                    });
                }
            }
        }
        for ws in &spaces {
            if ws.content.height() == self.max_height {
                continue;
            }
            for a in ws.basis_words() {
                let u = ModuleVector::monomial(q, a.clone());
                for i in q.vertices() {
                    let upper = m.weight_space(&ws.content.plus(i, 1))?;
                    for b in upper.basis_words() {
                        let w = ModuleVector::monomial(q, b.clone());
                        let lhs = m.form(&m.apply_f(i, 1, &u), &w);
                        let rhs = m.form(&u, &m.apply_k(i, true, &m.apply_e(i, &w))).shift(1);
                        rep.check(lhs == rhs, || {
                            format!("(F_{i} {}, {}) != v ({}, K^-1 E {})", a.display(q), b.display(q), a.display(q), b.display(q))
                        });
                    }
                }
            }
        }
        Ok(rep)
    }

    fn integrability(&self) -> Result<SuiteReport> {
        let m = &self.module;
        let q = m.quiver();
        let mut rep = SuiteReport::new("integrability");
        for u in self.basis_vectors()? {
            let mu = u.content().clone();
            for i in q.vertices() {
                // E_i^{nu_i + 1} u = 0, so the i-string below u has length
                // at most <weight, alpha_i^vee> + nu_i.
                let bound = m.pairing(&mu, i) + mu.get(i) as i64;
                if bound < 0 {
                    rep.check(self.vanishes(&u)?, || format!("{} sits outside the weights", self.word(&u)));
                    continue;
                }
                let f = m.apply_f(i, bound as u32 + 1, &u);
                rep.check(self.vanishes(&f)?, || {
                    format!("F_{i}^({}) {} is nonzero", bound + 1, self.word(&u))
                });
            }
        }
        Ok(rep)
    }

    /// `(v^-1 - v) E_i(x v) = v^{(i,|x|-i) - d_i} (_i r(x)) v - v^{d_i} (r_i(x)) v`
    /// for every word of height at most the bound, with `E_i` supplied by
    /// the caller. The right side must be divisible by `v^-1 - v`.
    pub fn derivation_with(&self, e_op: &EOperator<'_>) -> Result<SuiteReport> {
        let m = &self.module;
        let q = m.quiver();
        let lam = m.lambda();
        let mut rep = SuiteReport::new("derivation");
        let factor = LaurentPoly::v_pow(-1) - LaurentPoly::v_pow(1);
        for h in 1..=self.max_height {
            for nu in m.contents_of_height(h) {
                for x in enumerate_words(&nu, m.word_cap())? {
                    let xe = UMinusElement::from_monomial(x.clone(), LaurentPoly::one());
                    for i in q.vertices() {
                        let Some(rest) = nu.minus(i, 1) else {
                            continue;
                        };
                        let d = lam.d(i) as i32;
                        let left = ModuleVector::from_element(q, rbar_left(q, &xe, i)).ok();
                        let right = ModuleVector::from_element(q, rbar_right(q, &xe, i)).ok();
                        let shift = q.form_simple(i, &rest) as i32 - d;
                        let mut rhs = ModuleVector::zero(rest.clone());
                        if let Some(l) = left {
                            rhs = rhs.add(&l.scale(&LaurentPoly::v_pow(shift)));
                        }
                        if let Some(r) = right {
                            rhs = rhs.sub(&r.scale(&LaurentPoly::v_pow(d)));
                        }
                        let ws = m.weight_space(&rest)?;
                        let e = e_op(i, &m.monomial_vector(x.clone()));
                        let lhs = if e.is_formally_zero() { vec![LaurentPoly::zero(); ws.rank] } else { ws.pairing_vector(&e) };
                        let quotient: Option<Vec<LaurentPoly>> =
                            ws.pairing_vector(&rhs).iter().map(|p| p.div_exact(&factor)).collect();
                        let ok = quotient.as_ref().is_some_and(|qv| *qv == lhs);
                        rep.check(ok, || {
                            let why = if quotient.is_none() { "right side not divisible by v^-1 - v" } else { "sides differ" };
                            format!("x = {}, i = {}: {why}", x.display(q), q.name(i))
                        });
                    }
                }
            }
        }
        Ok(rep)
    }

    /// Coassociativity of the restriction coproduct on every word up to the
    /// height bound and every split into three contents.
    fn coproduct(&self) -> Result<SuiteReport> {
        let m = &self.module;
        let q = m.quiver();
        let mut rep = SuiteReport::new("coproduct");
        for h in 1..=self.max_height {
            for nu in m.contents_of_height(h) {
                let words = enumerate_words(&nu, m.word_cap())?;
                for (a, b, c) in three_way_splits(&nu) {
                    for x in &words {
                        let ok = coassociative(q, x, &a, &b, &c)?;
                        rep.check(ok, || format!("x = {}, split {a} | {b} | {c}", x.display(q)));
                    }
                }
            }
        }
        Ok(rep)
    }

    fn dims(&self) -> Result<SuiteReport> {
        let m = &self.module;
        let mut rep = SuiteReport::new("dims");
        for ws in m.weight_spaces_up_to(self.max_height)? {
            let f = m.freudenthal(&ws.content);
            rep.check(ws.rank as i64 == f, || format!("rank {} at {}, Freudenthal {f}", ws.rank, ws.content));
        }
        Ok(rep)
    }

    fn bar(&self) -> Result<SuiteReport> {
        let (cb, _) = self.crystal()?;
        let mut rep = SuiteReport::new("bar");
        for nu in cb.contents_by_height() {
            let ws = self.module.weight_space(&nu)?;
            for b in cb.elements(&nu) {
                let ok = ws.coordinates(&b.vector.bar()) == b.coords;
                rep.check(ok, || format!("{} is not bar-invariant", b.id));
            }
        }
        Ok(rep)
    }

    fn orthogonality(&self) -> Result<SuiteReport> {
        let (cb, _) = self.crystal()?;
        let mut rep = SuiteReport::new("orthogonality");
        for nu in cb.contents_by_height() {
            let Some(g) = cb.gram(&nu) else { continue };
            for (k, row) in g.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let ok = if j == k { x.is_one_mod_negative() } else { x.in_negative_part() };
                    rep.check(ok, || format!("({nu}/{k}, {nu}/{j}) = {x}"));
                }
            }
        }
        Ok(rep)
    }

    /// Monomials `M_s` against the canonical basis, both listed in
    /// decreasing path order: unitriangular with bar-invariant Laurent
    /// entries, also at `v = 1`.
    fn triangularity(&self) -> Result<SuiteReport> {
        let (cb, graph) = self.crystal()?;
        let mut rep = SuiteReport::new("triangularity");
        for nu in cb.contents_by_height() {
            let entries = monomial_basis(cb, graph, &nu, &self.order)?;
            if entries.is_empty() {
                continue;
            }
            let cols: Vec<ModuleVector> = entries.iter().map(|e| e.vector.clone()).collect();
            let t = transition_matrix(cb, &nu, &cols)?;
            let rows: Vec<usize> = entries.iter().map(|e| e.element.index).collect();
            let t: Vec<Vec<_>> = rows.iter().map(|&r| t[r].clone()).collect();
            for (r, row) in t.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    let ok = match r.cmp(&c) {
                        std::cmp::Ordering::Equal => x.is_one(),
                        std::cmp::Ordering::Greater => x.is_zero(),
                        std::cmp::Ordering::Less => x.as_laurent().is_some_and(LaurentPoly::is_bar_invariant),
                    };
                    rep.check(ok, || format!("entry ({r},{c}) at {nu} is {x}"));
                }
            }
            let at_one = specialize_matrix(&t)?;
            for (r, row) in at_one.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    let ok = match r.cmp(&c) {
                        std::cmp::Ordering::Equal => x == &num_rational::BigRational::from_integer(1.into()),
                        std::cmp::Ordering::Greater => num_traits::Zero::is_zero(x),
                        std::cmp::Ordering::Less => x.is_integer(),
                    };
                    rep.check(ok, || format!("entry ({r},{c}) at {nu} is {x} at v = 1"));
                }
            }
        }
        Ok(rep)
    }

    fn crystal_suite(&self) -> Result<SuiteReport> {
        let (cb, graph) = self.crystal()?;
        let q = self.module.quiver();
        let mut rep = SuiteReport::new("crystal");
        // double counting: pairs matched by pi_{i,t} against elements with t_i = t
        for c in &graph.checks {
            let want = cb.elements(&c.content).iter().filter(|b| b.t(c.vertex) == c.t).count();
            let lower = c.content.minus(c.vertex, c.t).expect("t <= content");
            let domain = cb.elements(&lower).iter().filter(|b| b.t(c.vertex) == 0).count();
            rep.check(c.pairs == want && c.pairs <= domain, || {
                format!("pi_({},{}) into {}: {} pairs, {want} targets", q.name(c.vertex), c.t, c.content, c.pairs)
            });
        }
        for a in &graph.arrows {
            let src = cb.get(&a.source).expect("arrow source");
            let tgt = cb.get(&a.target).expect("arrow target");
            let ok = src.t(a.vertex) == a.r
                && tgt.t(a.vertex) == 0
                && src.content() == &tgt.content().plus(a.vertex, a.r);
            rep.check(ok, || format!("arrow {} -> {} colored ({},{})", a.source, a.target, q.name(a.vertex), a.r));
        }
        for nu in cb.contents_by_height() {
            let mut seen = BTreeMap::new();
            for b in cb.elements(&nu) {
                let path = sbar(cb, graph, &b.id, &self.order)?;
                let back = replay(cb, &path)?;
                rep.check(back.as_ref() == Some(&b.id), || {
                    format!("replaying {} gives {back:?} instead of {}", path.display(q), b.id)
                });
                let dup = seen.insert(path.clone(), b.id.clone());
                rep.check(dup.is_none(), || format!("{} and {} share the path {}", dup.clone().unwrap(), b.id, path.display(q)));
            }
        }
        let reversed: Vec<Vertex> = self.order.iter().rev().copied().collect();
        let same = graph_under_reordering(&self.module, self.max_height, &reversed, cb, graph)?;
        rep.check(same, || "left graph changes when the vertices are declared in reverse order".into());
        Ok(rep)
    }
}

/// `a + sign * b`, tolerating formally zero operands of another content.
fn combine(a: &ModuleVector, b: &ModuleVector, sign: i64) -> ModuleVector {
    if b.is_formally_zero() {
        return a.clone();
    }
    let b = b.scale(&LaurentPoly::constant(sign));
    if a.is_formally_zero() {
        return b;
    }
    a.add(&b)
}

fn three_way_splits(nu: &DimVector) -> Vec<(DimVector, DimVector, DimVector)> {
    let mut out = Vec::new();
    for a in sub_vectors(nu) {
        let rest = nu.sub(&a).expect("a <= nu");
        for b in sub_vectors(&rest) {
            let c = rest.sub(&b).expect("b <= rest");
            out.push((a.clone(), b, c));
        }
    }
    out
}

fn sub_vectors(v: &DimVector) -> Vec<DimVector> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for &x in &v.0 {
        out = out
            .into_iter()
            .flat_map(|p| (0..=x).map(move |y| {
                let mut p = p.clone();
                p.push(y);
                p
            }))
            .collect();
    }
    out.into_iter().map(DimVector).collect()
}

type Triple = BTreeMap<(FlagMonomial, FlagMonomial, FlagMonomial), LaurentPoly>;

/// `(Delta x 1) Delta = (1 x Delta) Delta` on the `(a, b, c)` component.
pub fn coassociative(
    q: &crate::cartan::QuiverDatum,
    x: &FlagMonomial,
    a: &DimVector,
    b: &DimVector,
    c: &DimVector,
) -> Result<bool> {
    let mut left = Triple::new();
    for (t, w, k) in restriction_coproduct(q, x, &a.add(b), c)? {
        for (t1, t2, k2) in restriction_coproduct(q, &t, a, b)? {
            *left.entry((t1, t2, w.clone())).or_default() += &(&k * &k2);
        }
    }
    let mut right = Triple::new();
    for (t, w, k) in restriction_coproduct(q, x, a, &b.add(c))? {
        for (w1, w2, k2) in restriction_coproduct(q, &w, b, c)? {
            *right.entry((t.clone(), w1, w2)).or_default() += &(&k * &k2);
        }
    }
    left.retain(|_, v| !v.is_zero());
    right.retain(|_, v| !v.is_zero());
    Ok(left == right)
}

/// Recomputes the left graph with the vertices declared in `order` and
/// compares it with `graph` after matching elements by vector equality.
fn graph_under_reordering(
    module: &HighestWeightModule,
    max_height: u32,
    order: &[Vertex],
    cb: &CanonicalBasis,
    graph: &LeftGraph,
) -> Result<bool> {
    let q = module.quiver();
    let names: Vec<&str> = order.iter().map(|&i| q.name(i)).collect();
    let q2 = q.reordered(&names)?;
    let lam2 = crate::cartan::HighestWeight(order.iter().map(|&i| module.lambda().d(i)).collect());
    let m2 = Arc::new(HighestWeightModule::new(q2.clone(), lam2).with_word_cap(module.word_cap()));
    let cb2 = CanonicalBasis::compute(m2, max_height)?;
    let graph2 = build_left_graph(&cb2)?;
    // new index -> old index
    let back: Vec<Vertex> = order.to_vec();
    let mut map: BTreeMap<CbId, CbId> = BTreeMap::new();
    for nu2 in cb2.contents_by_height() {
        for b in cb2.elements(&nu2) {
            let mut elem = UMinusElement::zero();
            for (w, k) in b.vector.terms() {
                let slots: Vec<(Vertex, u32)> = w.slots().iter().map(|&(i, a)| (back[i], a)).collect();
                elem.add_term(FlagMonomial::from_normalized(slots)?, k.clone());
            }
            let u = if elem.is_zero() {
                module.highest_vector()
            } else {
                ModuleVector::from_element(q, elem)?
            };
            let x = cb.expand(&u)?;
            let hit: Vec<usize> = (0..x.len()).filter(|&k| !x[k].is_zero()).collect();
            if hit.len() != 1 || !x[hit[0]].is_one() {
                return Ok(false);
            }
            map.insert(b.id.clone(), CbId { content: u.content().clone(), index: hit[0] });
        }
    }
    let mut arrows2: Vec<(CbId, CbId, Vertex, u32)> = graph2
        .arrows
        .iter()
        .map(|a| (map[&a.source].clone(), map[&a.target].clone(), back[a.vertex], a.r))
        .collect();
    arrows2.sort();
    let mut arrows: Vec<(CbId, CbId, Vertex, u32)> =
        graph.arrows.iter().map(|a| (a.source.clone(), a.target.clone(), a.vertex, a.r)).collect();
    arrows.sort();
    Ok(arrows == arrows2 && graph.vertices.len() == graph2.vertices.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{HighestWeight, QuiverDatum};

    fn verifier(q: QuiverDatum, lam: Vec<u32>, h: u32) -> Verifier {
        let order = q.vertices().collect();
        Verifier::new(Arc::new(HighestWeightModule::new(q, HighestWeight(lam))), h, order)
    }

    #[test]
    fn all_suites_pass_on_a2() {
        let v = verifier(QuiverDatum::type_a(2), vec![1, 1], 4);
        for r in v.run(SUITES).unwrap() {
            assert!(r.passed(), "{}: {:?}", r.name, r.examples);
            assert!(r.checks > 0, "{} ran no checks", r.name);
        }
    }

    #[test]
    fn sign_error_in_e_is_caught() {
        let v = verifier(QuiverDatum::type_a(2), vec![1, 1], 3);
        let m = v.module.clone();
        let broken = move |i: Vertex, u: &ModuleVector| {
            let e = m.apply_e(i, u);
            if i == 1 { e.scale(&LaurentPoly::constant(-1)) } else { e }
        };
        let r = v.derivation_with(&broken).unwrap();
        assert!(!r.passed());
        assert!(r.examples[0].starts_with("x = "), "{}", r.examples[0]);
    }

    #[test]
    fn unknown_suite_is_an_error() {
        let v = verifier(QuiverDatum::type_a(1), vec![1], 1);
        assert!(v.run_one("nonsense").is_err());
        assert!(v.run(&[]).unwrap().is_empty());
    }
}
