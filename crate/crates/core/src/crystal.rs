//! The `t_i` statistic, the arrows `pi_{i,t}`, the left graph, admissible
//! paths `s` and the monomial bases they index.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::canonical::{CanonicalBasis, CbId};
use crate::cartan::{DimVector, QuiverDatum, Vertex};
use crate::error::{Error, Result};
use crate::hwmodule::{HighestWeightModule, ModuleVector, WeightSpaceModel};
use crate::qarith::linalg::{poly_rank, RowSpan};
use crate::qarith::LaurentPoly;
use crate::uminus::FlagMonomial;

/// Row spans of `F_i^{(r)} L_{nu - r i}` inside `L_nu`, written as pairing
/// vectors against the basis words of `L_nu`.
#[derive(Default)]
pub struct ImageSpans {
    cache: RwLock<HashMap<(DimVector, Vertex, u32), Arc<RowSpan>>>,
}

impl ImageSpans {
    fn span(&self, module: &HighestWeightModule, ws: &WeightSpaceModel, i: Vertex, r: u32) -> Result<Arc<RowSpan>> {
        let key = (ws.content.clone(), i, r);
        if let Some(s) = self.cache.read().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let lower = module.weight_space(&ws.content.minus(i, r).expect("r <= nu_i"))?;
        let rows: Vec<Vec<LaurentPoly>> = lower
            .basis_words()
            .map(|m| {
                let mut slots = vec![(i, r)];
                slots.extend_from_slice(m.slots());
                let (w, k) = FlagMonomial::normalize(&slots);
                let s = ws.word_position(&w).expect("word of this content");
                ws.basis_index.iter().map(|&t| &k * &ws.gram[s][t]).collect()
            })
            .collect();
        let span = RowSpan::new(&rows, ws.rank);
        let span = Arc::new(span);
        self.cache.write().unwrap().insert(key, span.clone());
        Ok(span)
    }
}

/// `t_i` for every vertex, for the vector whose pairings with all spanning
/// words of `ws` are `row`: the largest `r` with the vector in the image of
/// `F_i^{(r)}`.
pub(crate) fn t_stats(
    module: &HighestWeightModule,
    images: &ImageSpans,
    ws: &WeightSpaceModel,
    row: &[LaurentPoly],
) -> Result<Vec<u32>> {
    let p: Vec<LaurentPoly> = ws.basis_index.iter().map(|&s| row[s].clone()).collect();
    module
        .quiver()
        .vertices()
        .map(|i| {
            let mut t = 0;
            for r in 1..=ws.content.get(i) {
                // images are nested: F^{(r+1)} = F^{(r)} F / [r+1]
                if !images.span(module, ws, i, r)?.contains(&p) {
                    break;
                }
                t = r;
            }
            Ok(t)
        })
        .collect()
}

/// `t_i(u)` for an arbitrary vector.
pub fn t_stat(cb: &CanonicalBasis, u: &ModuleVector, i: Vertex) -> Result<u32> {
    let module = cb.module();
    let ws = module.weight_space(u.content())?;
    let p = ws.pairing_vector(u);
    let mut t = 0;
    for r in 1..=u.content().get(i) {
        if !cb.images().span(module, &ws, i, r)?.contains(&p) {
            break;
        }
        t = r;
    }
    Ok(t)
}

/// `pi_{i,t}(b')`: the unique canonical summand of `F_i^{(t)} b'` with
/// `t_i = t`, which must carry coefficient exactly 1. Every other summand
/// has `t_i > t` and a bar-invariant coefficient. `None` when no summand
/// with `t_i = t` survives in `L(Lambda)` (for instance when
/// `F_i^{(t)} b' = 0`).
pub fn pi_arrow(cb: &CanonicalBasis, i: Vertex, t: u32, parent: &CbId) -> Result<Option<CbId>> {
    let b = cb
        .get(parent)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown canonical element {parent}")))?;
    if t == 0 || b.t(i) != 0 {
        return Err(Error::InvalidArgument(format!("pi_({i},{t}) needs t > 0 and t_i = 0 at {parent}")));
    }
    let nu = b.content().plus(i, t);
    if nu.height() > cb.max_height() {
        return Err(Error::InvalidArgument(format!("{nu} lies above the computed height")));
    }
    let module = cb.module();
    let x = cb.expand(&module.apply_f(i, t, &b.vector))?;
    let elems = cb.elements(&nu);
    let mut hit = None;
    for (k, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let tk = elems[k].t(i);
        let bad = |what: &str| {
            Err(Error::Consistency(format!(
                "F_{i}^({t}) {parent}: summand {} with t_i = {tk} has {what} coefficient {c}",
                elems[k].id
            )))
        };
        if tk == t && c.is_one() {
            if hit.is_some() {
                return bad("a second unit");
            }
            hit = Some(elems[k].id.clone());
        } else if tk <= t {
            return bad("an unexpected");
        } else if !c.as_laurent().is_some_and(LaurentPoly::is_bar_invariant) {
            return bad("a non bar-invariant");
        }
    }
    Ok(hit)
}

/// An arrow `source -(vertex, r)-> target` with `target = ` the top of the
/// `vertex`-string through `source`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub source: CbId,
    pub target: CbId,
    pub vertex: Vertex,
    pub r: u32,
}

/// Number of pairs matched by `pi_{vertex,t}` between `content - t vertex`
/// and `content`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionCheck {
    pub content: DimVector,
    pub vertex: Vertex,
    pub t: u32,
    pub pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftGraph {
    pub vertices: Vec<CbId>,
    pub arrows: Vec<Arrow>,
    pub checks: Vec<BijectionCheck>,
    out: BTreeMap<(CbId, Vertex), usize>,
}

impl LeftGraph {
    /// The arrow of color `i` leaving `id`, if any.
    pub fn outgoing(&self, id: &CbId, i: Vertex) -> Option<&Arrow> {
        self.out.get(&(id.clone(), i)).map(|&k| &self.arrows[k])
    }

    /// Same vertices and arrows (the bijection bookkeeping is ignored).
    pub fn same_graph(&self, other: &LeftGraph) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

/// Builds every arrow up to the computed height, checking at each
/// `(content, i, t)` that `pi_{i,t}` is a bijection from the `t_i = 0`
/// elements below (with nonzero image) onto the `t_i = t` elements.
pub fn build_left_graph(cb: &CanonicalBasis) -> Result<LeftGraph> {
    let q = cb.module().quiver();
    let mut jobs = Vec::new();
    for nu in cb.contents_by_height() {
        for i in q.vertices() {
            for t in 1..=nu.get(i) {
                jobs.push((nu.clone(), i, t));
            }
        }
    }
    let results: Vec<Result<(Vec<Arrow>, BijectionCheck)>> = jobs
        .par_iter()
        .map(|(nu, i, t)| {
            let (i, t) = (*i, *t);
            let lower = nu.minus(i, t).expect("t <= nu_i");
            let mut arrows = Vec::new();
            let mut hit = BTreeSet::new();
            for b in cb.elements(&lower) {
                if b.t(i) != 0 {
                    continue;
                }
                if let Some(top) = pi_arrow(cb, i, t, &b.id)? {
                    if !hit.insert(top.clone()) {
                        return Err(Error::Consistency(format!("pi_({i},{t}) is not injective at {top}")));
                    }
                    arrows.push(Arrow { source: top, target: b.id.clone(), vertex: i, r: t });
                }
            }
            let want: BTreeSet<CbId> =
                cb.elements(nu).iter().filter(|b| b.t(i) == t).map(|b| b.id.clone()).collect();
            if hit != want {
                return Err(Error::Consistency(format!(
                    "pi_({i},{t}) into {nu} hits {} elements, {} have t_i = {t}",
                    hit.len(),
                    want.len()
                )));
            }
            let check = BijectionCheck { content: nu.clone(), vertex: i, t, pairs: hit.len() };
            Ok((arrows, check))
        })
        .collect();
    let mut arrows = Vec::new();
    let mut checks = Vec::new();
    for r in results {
        let (a, c) = r?;
        arrows.extend(a);
        checks.push(c);
    }
    arrows.sort();
    let vertices: Vec<CbId> = cb
        .contents_by_height()
        .iter()
        .flat_map(|nu| cb.elements(nu).iter().map(|b| b.id.clone()))
        .collect();
    let mut out = BTreeMap::new();
    for (k, a) in arrows.iter().enumerate() {
        if out.insert((a.source.clone(), a.vertex), k).is_some() {
            return Err(Error::Consistency(format!("two arrows of color {} leave {}", a.vertex, a.source)));
        }
    }
    Ok(LeftGraph { vertices, arrows, checks, out })
}

/// A sequence `((i_1, m_1), ..., (i_k, m_k))`; the monomial it indexes is
/// `F_{i_1}^{(m_1)} ... F_{i_k}^{(m_k)} v_Lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePath(pub Vec<(Vertex, u32)>);

impl AdmissiblePath {
    pub fn content(&self, q: &QuiverDatum) -> DimVector {
        let mut nu = q.zero_vector();
        for &(i, m) in &self.0 {
            nu = nu.plus(i, m);
        }
        nu
    }

    pub fn display<'a>(&'a self, q: &'a QuiverDatum) -> impl fmt::Display + 'a {
        PathDisplay(self, q)
    }
}

struct PathDisplay<'a>(&'a AdmissiblePath, &'a QuiverDatum);

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, &(i, m)) in self.0 .0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{m})", self.1.name(i))?;
        }
        write!(f, ")")
    }
}

/// Position of each vertex in `order`.
fn ranks(order: &[Vertex]) -> HashMap<Vertex, usize> {
    order.iter().enumerate().map(|(k, &i)| (i, k)).collect()
}

/// `s(b)` under the vertex order `order` (earliest = smallest): take the
/// last vertex `i` in the order with `t_i(b) > 0`, record `(i, t_i(b))` and
/// continue from the top of the `i`-string.
pub fn sbar(cb: &CanonicalBasis, graph: &LeftGraph, id: &CbId, order: &[Vertex]) -> Result<AdmissiblePath> {
    let mut path = Vec::new();
    let mut cur = id.clone();
    while !cur.content.is_zero() {
        let b = cb
            .get(&cur)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown canonical element {cur}")))?;
        let Some(&i) = order.iter().rev().find(|&&i| b.t(i) > 0) else {
            return Err(Error::Consistency(format!("{cur} is not highest but every t_i vanishes")));
        };
        let arrow = graph
            .outgoing(&cur, i)
            .ok_or_else(|| Error::Consistency(format!("{cur} has no arrow of color {i}")))?;
        path.push((i, arrow.r));
        cur = arrow.target.clone();
    }
    Ok(AdmissiblePath(path))
}

/// Lexicographic comparison of two paths of equal content, each step
/// compared by (position of the vertex in `order`, multiplicity).
pub fn path_cmp(p: &AdmissiblePath, q: &AdmissiblePath, order: &[Vertex]) -> Ordering {
    let pos = ranks(order);
    let key = |s: &AdmissiblePath| -> Vec<(usize, u32)> { s.0.iter().map(|&(i, m)| (pos[&i], m)).collect() };
    key(p).cmp(&key(q))
}

pub fn path_order_lt(p: &AdmissiblePath, q: &AdmissiblePath, order: &[Vertex]) -> bool {
    path_cmp(p, q, order) == Ordering::Less
}

/// Follows `path` backwards from the highest element through `pi_arrow`.
pub fn replay(cb: &CanonicalBasis, path: &AdmissiblePath) -> Result<Option<CbId>> {
    let mut cur = cb.highest().id.clone();
    for &(i, m) in path.0.iter().rev() {
        if cb.get(&cur).is_none_or(|b| b.t(i) != 0) {
            return Ok(None);
        }
        match pi_arrow(cb, i, m, &cur)? {
            Some(next) => cur = next,
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

/// One entry of the monomial basis at a content.
#[derive(Clone, Debug)]
pub struct MonomialEntry {
    pub element: CbId,
    pub path: AdmissiblePath,
    pub vector: ModuleVector,
}

/// The monomial basis at `nu` indexed by `s`, sorted decreasingly in the
/// path order (so the transition matrix to the canonical basis is upper
/// unitriangular). Asserts that `s` is injective and the monomials are a basis.
pub fn monomial_basis(cb: &CanonicalBasis, graph: &LeftGraph, nu: &DimVector, order: &[Vertex]) -> Result<Vec<MonomialEntry>> {
    let module = cb.module();
    let mut out = Vec::new();
    for b in cb.elements(nu) {
        let path = sbar(cb, graph, &b.id, order)?;
        let vector = module.apply_word(&path.0, &module.highest_vector());
        out.push(MonomialEntry { element: b.id.clone(), path, vector });
    }
    out.sort_by(|a, b| path_cmp(&b.path, &a.path, order));
    if out.windows(2).any(|w| w[0].path == w[1].path) {
        return Err(Error::Consistency(format!("s is not injective at {nu}")));
    }
    if !out.is_empty() {
        let ws = module.weight_space(nu)?;
        let rows: Vec<Vec<LaurentPoly>> = out.iter().map(|e| ws.pairing_vector(&e.vector)).collect();
        if poly_rank(&rows) != out.len() {
            return Err(Error::Consistency(format!("monomials at {nu} are not a basis")));
        }
    }
    Ok(out)
}

/// Graphviz rendering: vertices `content/index`, edges `(i,r)`.
pub fn to_dot(graph: &LeftGraph, q: &QuiverDatum) -> String {
    let mut s = String::from("digraph left_graph {\n");
    for v in &graph.vertices {
        s.push_str(&format!("  \"{v}\";\n"));
    }
    for a in &graph.arrows {
        s.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"({},{})\"];\n",
            a.source,
            a.target,
            q.name(a.vertex),
            a.r
        ));
    }
    s.push_str("}\n");
    s
}
