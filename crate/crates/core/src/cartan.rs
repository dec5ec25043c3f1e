//! Symmetric Cartan data from loop-free quivers, dominant weights and the
//! weight bookkeeping used by the module layer.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a vertex in declaration order.
pub type Vertex = usize;

/// A finite loop-free quiver: vertices, symmetric edge multiplicities and
/// an orientation of every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverDatum {
    names: Vec<String>,
    /// `adj[i][j]` = number of edges between `i` and `j`.
    adj: Vec<Vec<u32>>,
    /// Oriented arrows `(tail, head)`, one per edge.
    orientation: Vec<(Vertex, Vertex)>,
}

impl QuiverDatum {
    /// Builds a quiver from vertex names and oriented arrows `(tail, head)`.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        for (k, n) in names.iter().enumerate() {
            if names[..k].contains(n) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {n:?}")));
            }
        }
        let n = names.len();
        let lookup = |s: &str| {
            names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::UnknownVertex(s.to_string()))
        };
        let mut adj = vec![vec![0u32; n]; n];
        let mut orientation = Vec::with_capacity(arrows.len());
        for (a, b) in arrows {
            let (i, j) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if i == j {
                return Err(Error::InvalidQuiver(format!(
                    "loop at vertex {:?}",
                    names[i]
                )));
            }
            adj[i][j] += 1;
            adj[j][i] += 1;
            orientation.push((i, j));
        }
        Ok(QuiverDatum { names, adj, orientation })
    }

    /// Linearly oriented type `A_n` quiver on vertices `"1".."n"`.
    pub fn type_a(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
        let arrows: Vec<(String, String)> = (1..n)
            .map(|k| (k.to_string(), (k + 1).to_string()))
            .collect();
        Self::new(&names, &arrows).expect("type A quiver is valid")
    }

    /// Two vertices joined by `m` parallel arrows `1 -> 2`.
    pub fn multi_edge(m: usize) -> Self {
        let arrows = vec![("1", "2"); m];
        Self::new(&["1", "2"], &arrows).expect("two-vertex quiver is valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.names.len()
    }

    pub fn name(&self, i: Vertex) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Number of edges between `i` and `j` (`a_ij`).
    pub fn edges(&self, i: Vertex, j: Vertex) -> u32 {
        self.adj[i][j]
    }

    pub fn orientation(&self) -> &[(Vertex, Vertex)] {
        &self.orientation
    }

    /// `c_ij = 2 delta_ij - a_ij`.
    pub fn cartan(&self, i: Vertex, j: Vertex) -> i64 {
        if i == j {
            2
        } else {
            -(self.adj[i][j] as i64)
        }
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.vertices()
            .map(|i| self.vertices().map(|j| self.cartan(i, j)).collect())
            .collect()
    }

    /// Symmetric form `(x, y) = sum c_ij x_i y_j` on the root lattice.
    pub fn form(&self, x: &DimVector, y: &DimVector) -> i64 {
        let mut s = 0;
        for i in self.vertices() {
            if x.0[i] == 0 {
                continue;
            }
            for j in self.vertices() {
                s += self.cartan(i, j) * x.0[i] as i64 * y.0[j] as i64;
            }
        }
        s
    }

    /// `(alpha_i, y)`.
    pub fn form_simple(&self, i: Vertex, y: &DimVector) -> i64 {
        self.vertices().map(|j| self.cartan(i, j) * y.0[j] as i64).sum()
    }

    /// Same quiver with the vertex list permuted to `order` (names).
    pub fn reordered<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        if order.len() != self.num_vertices() {
            return Err(Error::InvalidArgument(format!(
                "vertex order has {} entries, quiver has {} vertices",
                order.len(),
                self.num_vertices()
            )));
        }
        let arrows: Vec<(String, String)> = self
            .orientation
            .iter()
            .map(|&(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect();
        let names: Vec<String> = order.iter().map(|s| s.as_ref().to_string()).collect();
        for n in &names {
            self.vertex(n)?;
        }
        Self::new(&names, &arrows)
    }

    pub fn zero_vector(&self) -> DimVector {
        DimVector(vec![0; self.num_vertices()])
    }

    pub fn unit(&self, i: Vertex) -> DimVector {
        let mut v = self.zero_vector();
        v.0[i] = 1;
        v
    }
}

/// Dominant weight, given by `d_i = <Lambda, alpha_i^vee>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HighestWeight(pub Vec<u32>);

impl HighestWeight {
    pub fn d(&self, i: Vertex) -> u32 {
        self.0[i]
    }
}

/// Element of `N[I]`, indexed by vertex position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise `self <= other`.
    pub fn weight_leq(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn get(&self, i: Vertex) -> u32 {
        self.0[i]
    }

    pub fn plus(&self, i: Vertex, n: u32) -> DimVector {
        let mut v = self.clone();
        v.0[i] += n;
        v
    }

    pub fn minus(&self, i: Vertex, n: u32) -> Option<DimVector> {
        let mut v = self.clone();
        v.0[i] = v.0[i].checked_sub(n)?;
        Some(v)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    /// All dimension vectors of the given height with `len` entries, in
    /// lexicographically decreasing order.
    pub fn all_of_height(len: usize, height: u32) -> Vec<DimVector> {
        fn rec(len: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<DimVector>) {
            if cur.len() + 1 == len {
                cur.push(left);
                out.push(DimVector(cur.clone()));
                cur.pop();
                return;
            }
            for x in (0..=left).rev() {
                cur.push(x);
                rec(len, left - x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if len == 0 {
            if height == 0 {
                out.push(DimVector(vec![]));
            }
            return out;
        }
        rec(len, height, &mut Vec::new(), &mut out);
        out
    }

    /// Names-keyed map, for serialization.
    pub fn to_named(&self, q: &QuiverDatum) -> BTreeMap<String, u32> {
        q.vertices().map(|i| (q.name(i).to_string(), self.0[i])).collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

pub fn height(nu: &DimVector) -> u32 {
    nu.height()
}

pub fn weight_leq(a: &DimVector, b: &DimVector) -> bool {
    a.weight_leq(b)
}

/// `nu~_i = sum_j a_ij nu_j + d_i`.
pub fn nu_tilde(q: &QuiverDatum, lambda: &HighestWeight, nu: &DimVector, i: Vertex) -> i64 {
    let s: i64 = q.vertices().map(|j| q.edges(i, j) as i64 * nu.0[j] as i64).sum();
    s + lambda.d(i) as i64
}

/// `<Lambda - sum nu_j alpha_j, alpha_i^vee> = d_i - sum_j c_ij nu_j`.
pub fn coroot_pairing(q: &QuiverDatum, lambda: &HighestWeight, nu: &DimVector, i: Vertex) -> i64 {
    lambda.d(i) as i64 - q.form_simple(i, nu)
}

/// Wire format of a quiver file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub highest_weight: BTreeMap<String, u32>,
}

impl QuiverFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })
    }

    /// Validates and converts to a quiver and a dominant weight; vertices
    /// missing from `highest_weight` get `d_i = 0`.
    pub fn build(&self) -> Result<(QuiverDatum, HighestWeight)> {
        let q = QuiverDatum::new(&self.vertices, &self.edges)?;
        let mut d = vec![0u32; q.num_vertices()];
        for (name, val) in &self.highest_weight {
            d[q.vertex(name)?] = *val;
        }
        Ok((q, HighestWeight(d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coroot_pairing_examples() {
        let a1 = QuiverDatum::type_a(1);
        assert_eq!(coroot_pairing(&a1, &HighestWeight(vec![2]), &DimVector(vec![1]), 0), 0);
        let a2 = QuiverDatum::type_a(2);
        let lam = HighestWeight(vec![1, 1]);
        assert_eq!(coroot_pairing(&a2, &lam, &DimVector(vec![1, 0]), 1), 2);
        for i in 0..2 {
            assert_eq!(coroot_pairing(&a2, &lam, &a2.zero_vector(), i), 1);
        }
    }

    #[test]
    fn nu_tilde_examples() {
        let a1 = QuiverDatum::type_a(1);
        assert_eq!(nu_tilde(&a1, &HighestWeight(vec![3]), &DimVector(vec![2]), 0), 3);
        let a2 = QuiverDatum::type_a(2);
        assert_eq!(nu_tilde(&a2, &HighestWeight(vec![0, 0]), &DimVector(vec![1, 1]), 0), 1);
        let kr = QuiverDatum::multi_edge(2);
        assert_eq!(nu_tilde(&kr, &HighestWeight(vec![1, 0]), &DimVector(vec![0, 3]), 0), 7);
    }

    #[test]
    fn height_and_order() {
        assert_eq!(DimVector(vec![1, 2]).height(), 3);
        assert_eq!(DimVector(vec![0, 0, 0]).height(), 0);
        assert!(weight_leq(&DimVector(vec![1, 0]), &DimVector(vec![1, 2])));
        assert!(!weight_leq(&DimVector(vec![2, 0]), &DimVector(vec![1, 2])));
    }

    #[test]
    fn pairing_identity() {
        let kr = QuiverDatum::multi_edge(3);
        let lam = HighestWeight(vec![2, 1]);
        for a in 0..4 {
            for b in 0..4 {
                let nu = DimVector(vec![a, b]);
                for i in 0..2 {
                    let lhs = coroot_pairing(&kr, &lam, &nu, i) + 2 * nu.get(i) as i64
                        - nu_tilde(&kr, &lam, &nu, i);
                    assert_eq!(lhs, 0);
                }
            }
        }
    }

    #[test]
    fn cartan_matrix_type_a() {
        let a4 = QuiverDatum::type_a(4);
        let c = a4.cartan_matrix();
        for (i, row) in c.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = match (i as i64 - j as i64).abs() {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                };
                assert_eq!(x, want);
                assert_eq!(x, c[j][i]);
            }
        }
    }

    #[test]
    fn parse_quiver_file() {
        let text = r#"{"vertices": ["1","2"], "edges": [["1","2"], ["1","2"]], "highest_weight": {"1": 1, "2": 0}}"#;
        let (q, lam) = QuiverFile::parse(text).unwrap().build().unwrap();
        assert_eq!(q.edges(0, 1), 2);
        assert_eq!(q.orientation(), &[(0, 1), (0, 1)]);
        assert_eq!(lam, HighestWeight(vec![1, 0]));

        let bad = "{\"vertices\": [\"1\"],\n \"edges\": [[\"1\", ]]}";
        match QuiverFile::parse(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        let looped = r#"{"vertices": ["1"], "edges": [["1","1"]]}"#;
        assert!(QuiverFile::parse(looped).unwrap().build().is_err());
        let unknown = r#"{"vertices": ["1"], "highest_weight": {"7": 1}}"#;
        assert!(matches!(
            QuiverFile::parse(unknown).unwrap().build(),
            Err(Error::UnknownVertex(_))
        ));
    }
}
