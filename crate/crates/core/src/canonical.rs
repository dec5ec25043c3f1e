//! Canonical basis of each weight space of `L(Lambda)`.
//!
//! Elements at content `nu` are seeded from `F_i^{(t)} b'` with `b'` a
//! canonical element at `nu - t i` having `t_i(b') = 0`, then corrected by
//! bar-invariant multiples of the elements already accepted until all
//! pairings with them lie in `v^-1 Z[v^-1]`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::cartan::{DimVector, Vertex};
use crate::crystal::{t_stats, ImageSpans};
use crate::error::{Error, Result};
use crate::hwmodule::{HighestWeightModule, ModuleVector, WeightSpaceModel};
use crate::qarith::linalg::{poly_solve, PolyMatrix, RatMatrix};
use crate::qarith::{LaurentPoly, RatFunc};

/// Upper bound on correction passes for one candidate.
const MAX_PASSES: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CbId {
    pub content: DimVector,
    pub index: usize,
}

impl fmt::Display for CbId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.content, self.index)
    }
}

/// The seed `F_vertex^{(t)} parent` an element was obtained from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub vertex: Vertex,
    pub t: u32,
    pub parent: CbId,
}

#[derive(Clone, Debug)]
pub struct CbElement {
    pub id: CbId,
    pub vector: ModuleVector,
    /// Coordinates against the selected basis words of the weight space.
    pub coords: Vec<RatFunc>,
    pub self_pairing: LaurentPoly,
    /// `t_i` for every vertex.
    pub stats: Vec<u32>,
    pub provenance: Option<Provenance>,
    /// Pairings with every spanning word of the weight space.
    pub(crate) row: Vec<LaurentPoly>,
}

impl CbElement {
    pub fn content(&self) -> &DimVector {
        &self.id.content
    }

    pub fn t(&self, i: Vertex) -> u32 {
        self.stats[i]
    }

    /// `(u, self)` for any `u` of the same content.
    pub fn pair_with(&self, u: &ModuleVector, ws: &WeightSpaceModel) -> LaurentPoly {
        pair_row(&self.row, u, ws)
    }
}

fn pair_row(row: &[LaurentPoly], u: &ModuleVector, ws: &WeightSpaceModel) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for (m, c) in u.terms() {
        let r = &row[ws.word_position(m).expect("word of this content")];
        if !r.is_zero() {
            acc += &(c * r);
        }
    }
    acc
}

/// Pairings of `u` with every spanning word.
fn full_row(u: &ModuleVector, ws: &WeightSpaceModel) -> Vec<LaurentPoly> {
    let mut row = vec![LaurentPoly::zero(); ws.spanning.len()];
    for (m, c) in u.terms() {
        let s = ws.word_position(m).expect("word of this content");
        for (acc, g) in row.iter_mut().zip(&ws.gram[s]) {
            if !g.is_zero() {
                *acc += &(c * g);
            }
        }
    }
    row
}

/// Canonical basis elements of every content up to a height bound.
pub struct CanonicalBasis {
    module: Arc<HighestWeightModule>,
    max_height: u32,
    schedule: Vec<Vertex>,
    levels: BTreeMap<DimVector, Vec<CbElement>>,
    grams: BTreeMap<DimVector, PolyMatrix>,
    images: ImageSpans,
}

impl CanonicalBasis {
    /// Computes the basis up to `max_height`, seeding candidates in the
    /// declared vertex order.
    pub fn compute(module: Arc<HighestWeightModule>, max_height: u32) -> Result<Self> {
        let schedule = module.quiver().vertices().collect();
        Self::compute_with_schedule(module, max_height, schedule)
    }

    /// As [`CanonicalBasis::compute`], visiting vertices in `schedule` when
    /// seeding candidates. The result does not depend on the schedule up to
    /// the numbering of elements within a content.
    pub fn compute_with_schedule(
        module: Arc<HighestWeightModule>,
        max_height: u32,
        schedule: Vec<Vertex>,
    ) -> Result<Self> {
        let n = module.quiver().num_vertices();
        let mut sorted = schedule.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument("vertex schedule must be a permutation".into()));
        }
        let mut cb = CanonicalBasis {
            module,
            max_height,
            schedule,
            levels: BTreeMap::new(),
            grams: BTreeMap::new(),
            images: ImageSpans::default(),
        };
        for h in 0..=max_height {
            let contents = cb.module.contents_of_height(h);
            let built: Vec<Result<(Vec<CbElement>, PolyMatrix)>> =
                contents.par_iter().map(|nu| cb.compute_content(nu)).collect();
            for (nu, res) in contents.into_iter().zip(built) {
                let (elems, gram) = res?;
                cb.levels.insert(nu.clone(), elems);
                cb.grams.insert(nu, gram);
            }
        }
        Ok(cb)
    }

    pub fn module(&self) -> &Arc<HighestWeightModule> {
        &self.module
    }

    pub fn max_height(&self) -> u32 {
        self.max_height
    }

    pub fn schedule(&self) -> &[Vertex] {
        &self.schedule
    }

    pub(crate) fn images(&self) -> &ImageSpans {
        &self.images
    }

    /// Contents in increasing order (by the derived order on vectors).
    pub fn contents(&self) -> impl Iterator<Item = &DimVector> {
        self.levels.keys()
    }

    /// Contents ordered by height, then as enumerated.
    pub fn contents_by_height(&self) -> Vec<DimVector> {
        (0..=self.max_height).flat_map(|h| self.module.contents_of_height(h)).collect()
    }

    pub fn elements(&self, nu: &DimVector) -> &[CbElement] {
        self.levels.get(nu).map_or(&[], |v| v.as_slice())
    }

    pub fn get(&self, id: &CbId) -> Option<&CbElement> {
        self.levels.get(&id.content)?.get(id.index)
    }

    pub fn len(&self) -> usize {
        self.levels.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Gram matrix `(b_k, b_j)` of the elements at `nu`.
    pub fn gram(&self, nu: &DimVector) -> Option<&PolyMatrix> {
        self.grams.get(nu)
    }

    pub fn highest(&self) -> &CbElement {
        &self.levels[&self.module.quiver().zero_vector()][0]
    }

    /// Expansion of `u` in the canonical basis of its content, by solving
    /// against the basis Gram matrix.
    pub fn expand(&self, u: &ModuleVector) -> Result<Vec<RatFunc>> {
        let nu = u.content();
        let elems = self.levels.get(nu).ok_or_else(|| {
            Error::InvalidArgument(format!("content {nu} lies above the computed height"))
        })?;
        if elems.is_empty() {
            return Ok(Vec::new());
        }
        let ws = self.module.weight_space(nu)?;
        let rhs: Vec<LaurentPoly> = elems.iter().map(|b| b.pair_with(u, &ws)).collect();
        poly_solve(&self.grams[nu], &rhs)
            .ok_or_else(|| Error::Consistency(format!("canonical Gram system at {nu} is inconsistent")))
    }

    fn compute_content(&self, nu: &DimVector) -> Result<(Vec<CbElement>, PolyMatrix)> {
        let module = &self.module;
        let ws = module.weight_space(nu)?;
        let mut accepted: Vec<CbElement> = Vec::new();
        if nu.is_zero() {
            let v = module.highest_vector();
            let row = full_row(&v, &ws);
            accepted.push(CbElement {
                id: CbId { content: nu.clone(), index: 0 },
                coords: ws.coordinates(&v),
                self_pairing: LaurentPoly::one(),
                stats: vec![0; module.quiver().num_vertices()],
                provenance: None,
                vector: v,
                row,
            });
        } else if ws.rank > 0 {
            'seed: for &i in &self.schedule {
                for t in (1..=nu.get(i)).rev() {
                    let lower = nu.minus(i, t).expect("t <= nu_i");
                    for parent in self.elements(&lower) {
                        if parent.t(i) != 0 {
                            continue;
                        }
                        let cand = module.apply_f(i, t, &parent.vector);
                        let prov = Provenance { vertex: i, t, parent: parent.id.clone() };
                        if let Some(b) = self.orthogonalize(cand, prov, &accepted, &ws)? {
                            accepted.push(b);
                            if accepted.len() == ws.rank {
                                break 'seed;
                            }
                        }
                    }
                }
            }
        }
        if accepted.len() != ws.rank {
            return Err(Error::Consistency(format!(
                "found {} canonical elements at {nu}, weight space has rank {}",
                accepted.len(),
                ws.rank
            )));
        }
        for b in accepted.iter_mut() {
            b.stats = t_stats(module, &self.images, &ws, &b.row)?;
        }
        let gram = accepted
            .iter()
            .map(|a| accepted.iter().map(|b| b.pair_with(&a.vector, &ws)).collect())
            .collect();
        Ok((accepted, gram))
    }

    /// Subtracts `sym_truncate((A, b)) b` for every accepted `b` until all
    /// pairings are in `v^-1 Z[v^-1]`. Returns `None` if `A` becomes zero.
    fn orthogonalize(
        &self,
        mut a: ModuleVector,
        prov: Provenance,
        accepted: &[CbElement],
        ws: &WeightSpaceModel,
    ) -> Result<Option<CbElement>> {
        let mut row = full_row(&a, ws);
        let mut prev_top: Option<i32> = None;
        for _ in 0..MAX_PASSES {
            let pairings: Vec<LaurentPoly> = accepted.iter().map(|b| pair_row(&b.row, &a, ws)).collect();
            let offending: Vec<usize> = (0..accepted.len())
                .filter(|&k| !pairings[k].in_negative_part())
                .collect();
            if offending.is_empty() {
                let nonzero = ws.basis_index.iter().any(|&s| !row[s].is_zero());
                if !nonzero {
                    return Ok(None);
                }
                let self_pairing = pair_row(&row, &a, ws);
                if !self_pairing.is_one_mod_negative() {
                    return Err(Error::Consistency(format!(
                        "candidate F_{}^({}) {} at {} has self-pairing {self_pairing}",
                        prov.vertex, prov.t, prov.parent, ws.content
                    )));
                }
                let coords = ws.coordinates(&a);
                let a = compress(a, &coords, ws, self.module.quiver());
                return Ok(Some(CbElement {
                    id: CbId { content: ws.content.clone(), index: accepted.len() },
                    vector: a,
                    coords,
                    self_pairing,
                    stats: Vec::new(),
                    provenance: Some(prov),
                    row,
                }));
            }
            let top = offending
                .iter()
                .filter_map(|&k| pairings[k].max_degree())
                .max()
                .expect("offending pairings are nonzero");
            if prev_top.is_some_and(|p| top >= p) {
                return Err(Error::Consistency(format!(
                    "orthogonalization at {} stalled at degree {top}",
                    ws.content
                )));
            }
            prev_top = Some(top);
            for &k in &offending {
                let gamma = pairings[k].sym_truncate();
                let b = &accepted[k];
                a = a.sub(&b.vector.scale(&gamma));
                for (x, y) in row.iter_mut().zip(&b.row) {
                    if !y.is_zero() {
                        *x -= &(&gamma * y);
                    }
                }
            }
        }
        Err(Error::Consistency(format!("orthogonalization at {} did not converge", ws.content)))
    }
}

/// Rewrites `u` on the basis words when its coordinates are Laurent and
/// that representation is shorter.
fn compress(
    u: ModuleVector,
    coords: &[RatFunc],
    ws: &WeightSpaceModel,
    q: &crate::cartan::QuiverDatum,
) -> ModuleVector {
    let nonzero = coords.iter().filter(|c| !c.is_zero()).count();
    if nonzero >= u.terms().count() {
        return u;
    }
    let Some(laurent) = coords.iter().map(|c| c.as_laurent().cloned()).collect::<Option<Vec<_>>>() else {
        return u;
    };
    ws.vector_from_coordinates(q, &laurent)
}

/// Whether bar-conjugating the coefficients of `b` leaves its coordinates
/// unchanged.
pub fn verify_bar_invariant(module: &HighestWeightModule, u: &ModuleVector) -> Result<bool> {
    let ws = module.weight_space(u.content())?;
    Ok(ws.coordinates(&u.bar()) == ws.coordinates(u))
}

/// Column `t` holds the canonical-basis coordinates of `monomials[t]`.
/// All vectors must have content `nu`.
pub fn transition_matrix(cb: &CanonicalBasis, nu: &DimVector, monomials: &[ModuleVector]) -> Result<RatMatrix> {
    let n = cb.elements(nu).len();
    let mut m = vec![vec![RatFunc::zero(); monomials.len()]; n];
    for (t, u) in monomials.iter().enumerate() {
        if !u.is_formally_zero() && u.content() != nu {
            return Err(Error::InvalidArgument(format!("vector of content {} listed at {nu}", u.content())));
        }
        for (k, x) in cb.expand(u)?.into_iter().enumerate() {
            m[k][t] = x;
        }
    }
    Ok(m)
}

pub fn specialize_poly(p: &LaurentPoly) -> BigInt {
    p.eval_one()
}

pub fn specialize(x: &RatFunc) -> Result<BigRational> {
    x.eval_one()
        .ok_or_else(|| Error::InvalidArgument(format!("{x} has a pole at v = 1")))
}

pub fn specialize_matrix(m: &RatMatrix) -> Result<Vec<Vec<BigRational>>> {
    m.iter().map(|row| row.iter().map(specialize).collect()).collect()
}
