use std::collections::HashMap;

use rayon::prelude::*;

use super::{HighestWeightModule, ModuleVector};
use crate::cartan::DimVector;
use crate::error::Result;
use crate::qarith::linalg::{poly_rank, PolyMatrix, RowSpan};
use crate::qarith::{LaurentPoly, RatFunc};
use crate::uminus::{enumerate_words, FlagMonomial};

/// One weight space of `L(Lambda)`: every normalized word of the content,
/// their Gram matrix under the contravariant form, and a greedily selected
/// set of words whose Gram submatrix is invertible.
#[derive(Debug)]
pub struct WeightSpaceModel {
    pub content: DimVector,
    pub spanning: Vec<FlagMonomial>,
    pub gram: PolyMatrix,
    /// Positions in `spanning` of the selected basis words.
    pub basis_index: Vec<usize>,
    pub rank: usize,
    index: HashMap<FlagMonomial, usize>,
    det: LaurentPoly,
    /// Adjugate of the basis Gram submatrix.
    adj: PolyMatrix,
}

impl WeightSpaceModel {
    pub(super) fn build(module: &HighestWeightModule, nu: &DimVector) -> Result<Self> {
        let spanning = enumerate_words(nu, module.word_cap())?;
        let gram: PolyMatrix = spanning
            .par_iter()
            .map(|s| spanning.iter().map(|t| module.form_words(s, t)).collect())
            .collect();
        let span = RowSpan::symmetric(&gram);
        let basis_index = span.kept().to_vec();
        let rank = basis_index.len();
        let (det, adj) = span.certificate();
        let (det, adj) = (det.clone(), adj.clone());
        let index = spanning.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        Ok(WeightSpaceModel { content: nu.clone(), spanning, gram, basis_index, rank, index, det, adj })
    }

    pub fn basis_words(&self) -> impl Iterator<Item = &FlagMonomial> {
        self.basis_index.iter().map(|&k| &self.spanning[k])
    }

    pub fn word_position(&self, m: &FlagMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Pairings `(u, M_t)` for the basis words `M_t`.
    pub fn pairing_vector(&self, u: &ModuleVector) -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(); self.rank];
        if u.is_formally_zero() {
            return out;
        }
        assert_eq!(u.content(), &self.content, "vector content mismatch");
        for (m, c) in u.terms() {
            let s = self.index[m];
            for (slot, &t) in self.basis_index.iter().enumerate() {
                let g = &self.gram[s][t];
                if !g.is_zero() {
                    out[slot] += &(c * g);
                }
            }
        }
        out
    }

    /// Coordinates of `u` in the basis words: solves `G c = (u, M_t)_t`.
    pub fn coordinates(&self, u: &ModuleVector) -> Vec<RatFunc> {
        let p = self.pairing_vector(u);
        self.coordinates_from_pairings(&p)
    }

    pub fn coordinates_from_pairings(&self, p: &[LaurentPoly]) -> Vec<RatFunc> {
        (0..self.rank)
            .map(|s| {
                let mut acc = LaurentPoly::zero();
                for (t, pt) in p.iter().enumerate() {
                    if !pt.is_zero() && !self.adj[s][t].is_zero() {
                        acc += &(&self.adj[s][t] * pt);
                    }
                }
                RatFunc::new(acc, self.det.clone())
            })
            .collect()
    }

    /// The vector `sum c_t M_t` for Laurent coordinates.
    pub fn vector_from_coordinates(&self, q: &crate::cartan::QuiverDatum, coords: &[LaurentPoly]) -> ModuleVector {
        let mut u = ModuleVector::zero(self.content.clone());
        for (c, m) in coords.iter().zip(self.basis_words()) {
            u = u.add(&ModuleVector::monomial(q, m.clone()).scale(c));
        }
        u
    }

    /// Rank of the full Gram matrix, recomputed from scratch.
    pub fn gram_rank(&self) -> usize {
        poly_rank(&self.gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{HighestWeight, QuiverDatum};

    #[test]
    fn weight_space_examples() {
        let m = HighestWeightModule::new(QuiverDatum::type_a(2), HighestWeight(vec![1, 1]));
        let ws = m.weight_space(&DimVector(vec![0, 0])).unwrap();
        assert_eq!(ws.spanning, vec![FlagMonomial::empty()]);
        assert_eq!(ws.rank, 1);

        let ws = m.weight_space(&DimVector(vec![1, 1])).unwrap();
        assert_eq!(ws.rank, 2);
        assert_eq!(ws.gram_rank(), 2);
        for s in 0..ws.spanning.len() {
            for t in 0..ws.spanning.len() {
                assert_eq!(ws.gram[s][t], ws.gram[t][s]);
            }
        }

        let a1 = HighestWeightModule::new(QuiverDatum::type_a(1), HighestWeight(vec![3]));
        let ws = a1.weight_space(&DimVector(vec![2])).unwrap();
        assert_eq!(ws.spanning.len(), 1);
        assert_eq!(ws.rank, 1);
    }

    #[test]
    fn coordinates_of_basis_words_are_unit_vectors() {
        let q = QuiverDatum::type_a(2);
        let m = HighestWeightModule::new(q.clone(), HighestWeight(vec![2, 1]));
        let nu = DimVector(vec![2, 1]);
        let ws = m.weight_space(&nu).unwrap();
        for (k, b) in ws.basis_words().enumerate() {
            let c = ws.coordinates(&ModuleVector::monomial(&q, b.clone()));
            for (j, x) in c.iter().enumerate() {
                assert_eq!(x.is_one(), j == k);
                assert_eq!(x.is_zero(), j != k);
            }
        }
    }

    #[test]
    fn residual_pairs_to_zero() {
        // u - sum c_t M_t pairs to zero with every spanning word
        let q = QuiverDatum::type_a(2);
        let m = HighestWeightModule::new(q.clone(), HighestWeight(vec![2, 1]));
        let nu = DimVector(vec![2, 1]);
        let ws = m.weight_space(&nu).unwrap();
        for s in &ws.spanning {
            let u = ModuleVector::monomial(&q, s.clone());
            let c = ws.coordinates(&u);
            for t in &ws.spanning {
                let mut lhs = RatFunc::from(m.form_words(s, t));
                for (ck, b) in c.iter().zip(ws.basis_words()) {
                    lhs = &lhs - &(ck * &RatFunc::from(m.form_words(b, t)));
                }
                assert!(lhs.is_zero());
            }
        }
    }
}
