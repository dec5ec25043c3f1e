//! Exact linear algebra over `Z[v, v^-1]` and `Q(v)`.
//!
//! Elimination is fraction-free (Bareiss): every intermediate entry is a
//! minor of the input, so the division by the previous pivot is exact in
//! the Laurent ring. Rational inputs are first scaled row by row to a
//! common denominator.

use super::{LaurentPoly, RatFunc};

pub type PolyMatrix = Vec<Vec<LaurentPoly>>;
pub type RatMatrix = Vec<Vec<RatFunc>>;

/// Row echelon form produced by [`bareiss_echelon`].
struct Echelon {
    rows: PolyMatrix,
    /// `(row, column)` of each pivot, in order.
    pivots: Vec<(usize, usize)>,
}

/// Fraction-free forward elimination. Pivots: among the candidate rows,
/// the nonzero entry of smallest degree span (ties broken by row index).
/// Only the first `pivot_cols` columns are eligible for pivots.
fn bareiss_echelon(mut m: PolyMatrix, pivot_cols: usize) -> Echelon {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = LaurentPoly::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..pivot_cols.min(ncols) {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| (m[i][c].degree_span(), i))
        else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            if m[i][c].is_zero() {
                // Still must be rescaled so later exact divisions stay valid.
                for j in c + 1..ncols {
                    let num = &m[r][c] * &m[i][j];
                    m[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss division must be exact");
                }
                continue;
            }
            for j in c + 1..ncols {
                let num = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division must be exact");
            }
            m[i][c] = LaurentPoly::zero();
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    Echelon { rows: m, pivots }
}

/// Rank of a matrix over `Z[v, v^-1]` (equivalently over `Q(v)`).
pub fn poly_rank(m: &[Vec<LaurentPoly>]) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    bareiss_echelon(m.to_vec(), ncols).pivots.len()
}

/// Determinant of a square polynomial matrix.
pub fn poly_det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    // Track row swaps by running elimination on a copy with explicit sign.
    let mut a = m.to_vec();
    let mut sign = 1i64;
    let mut prev = LaurentPoly::one();
    for c in 0..n {
        let Some(p) = (c..n)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| (a[i][c].degree_span(), i))
        else {
            return LaurentPoly::zero();
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let num = &(&a[c][c] * &a[i][j]) - &(&a[i][c] * &a[c][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division must be exact");
            }
            a[i][c] = LaurentPoly::zero();
        }
        prev = a[c][c].clone();
    }
    prev.scale(sign)
}

/// Scales a rational row to a polynomial row (same row space).
fn clear_row(row: &[RatFunc]) -> Vec<LaurentPoly> {
    let mut dens: Vec<&LaurentPoly> = Vec::new();
    for x in row {
        if !x.denom().is_one() && !dens.contains(&x.denom()) {
            dens.push(x.denom());
        }
    }
    let common = dens.iter().fold(LaurentPoly::one(), |acc, d| &acc * *d);
    row.iter()
        .map(|x| {
            let scale = common
                .div_exact(x.denom())
                .expect("denominator divides the common denominator");
            x.numer() * &scale
        })
        .collect()
}

/// Rank over `Q(v)`.
pub fn rf_rank(m: &[Vec<RatFunc>]) -> usize {
    let rows: PolyMatrix = m.iter().map(|r| clear_row(r)).collect();
    poly_rank(&rows)
}

/// Solves `a x = b` over `Q(v)`. Returns `None` when inconsistent; free
/// variables are set to zero.
pub fn rf_solve(a: &[Vec<RatFunc>], b: &[RatFunc]) -> Option<Vec<RatFunc>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let ncols = if a.is_empty() { 0 } else { a[0].len() };
    let aug: PolyMatrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            clear_row(&r)
        })
        .collect();
    solve_echelon(aug, ncols)
}

/// Solves `a x = b` for polynomial data over `Q(v)`.
pub fn poly_solve(a: &[Vec<LaurentPoly>], b: &[LaurentPoly]) -> Option<Vec<RatFunc>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let ncols = if a.is_empty() { 0 } else { a[0].len() };
    let aug: PolyMatrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    solve_echelon(aug, ncols)
}

fn solve_echelon(aug: PolyMatrix, ncols: usize) -> Option<Vec<RatFunc>> {
    let ech = bareiss_echelon(aug, ncols);
    let rank = ech.pivots.len();
    // Any nonzero right-hand side below the pivot rows is an inconsistency.
    if ech.rows[rank..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![RatFunc::zero(); ncols];
    for &(r, c) in ech.pivots.iter().rev() {
        let row = &ech.rows[r];
        let mut acc = RatFunc::from(row[ncols].clone());
        for j in c + 1..ncols {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc = &acc - &(&RatFunc::from(row[j].clone()) * &x[j]);
            }
        }
        x[c] = acc
            .div(&RatFunc::from(row[c].clone()))
            .expect("pivot is nonzero");
    }
    Some(x)
}

/// `(d, a)` with `g * a = d * I` and `d = +-det(g)`, by fraction-free
/// Gauss-Jordan elimination on `[g | I]`: every intermediate entry is a
/// minor, so all divisions are exact. Requires `g` square and invertible
/// over `Q(v)`.
pub fn det_adjugate(g: &[Vec<LaurentPoly>]) -> (LaurentPoly, PolyMatrix) {
    let n = g.len();
    let mut m: PolyMatrix = g
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut x = row.clone();
            x.extend((0..n).map(|c| if c == r { LaurentPoly::one() } else { LaurentPoly::zero() }));
            x
        })
        .collect();
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        let p = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| (m[i][k].degree_span(), i))
            .expect("det_adjugate on a singular matrix");
        m.swap(k, p);
        let pivot_row = m[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let f = row[k].clone();
            for (j, x) in row.iter_mut().enumerate() {
                let mut num = &pivot_row[k] * x;
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    num -= &(&f * &pivot_row[j]);
                }
                *x = num.div_exact(&prev).expect("Gauss-Jordan division must be exact");
            }
        }
        prev = pivot_row[k].clone();
    }
    let det = m[0][0].clone();
    let adj = m.into_iter().map(|row| row[n..].to_vec()).collect();
    (det, adj)
}

pub fn poly_mat_mul(a: &[Vec<LaurentPoly>], b: &[Vec<LaurentPoly>]) -> PolyMatrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![LaurentPoly::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] += &(&a[i][t] * &b[t][j]);
                }
            }
        }
    }
    out
}

/// Modulus for the specialized eliminations used to pick rows quickly.
const PRIME: u64 = (1 << 61) - 1;
/// Evaluation points tried in turn; a point is only rejected when the
/// exact certification of its row choice fails.
const EVAL_POINTS: [u64; 4] = [1_000_003, 998_244_353, 1_234_567_891, 31_415_926_535];

/// Greedy row selection for the matrix specialized at `v = x` in `Z/pZ`.
/// Returns the kept rows and the pivot columns of their echelon form.
fn modular_greedy(rows: &[Vec<LaurentPoly>], ncols: usize, x: u64) -> (Vec<usize>, Vec<usize>) {
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % PRIME as u128) as u64;
    let inv = |a: u64| {
        let (mut r, mut b, mut e) = (1u64, a, PRIME - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut kept = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        if echelon.len() == ncols {
            break;
        }
        let mut y: Vec<u64> = row.iter().map(|p| if p.is_zero() { 0 } else { p.eval_mod(x, PRIME) }).collect();
        for (c, e) in &echelon {
            let f = y[*c];
            if f != 0 {
                for (yj, ej) in y.iter_mut().zip(e) {
                    *yj = (*yj + PRIME - mul(f, *ej)) % PRIME;
                }
            }
        }
        if let Some(c) = y.iter().position(|&a| a != 0) {
            let s = inv(y[c]);
            y.iter_mut().for_each(|a| *a = mul(*a, s));
            echelon.push((c, y));
            kept.push(r);
        }
    }
    (kept, echelon.into_iter().map(|(c, _)| c).collect())
}

/// Row space of a list of candidate rows over `Q(v)`, with an exact
/// certificate: kept rows `S`, columns `C` with `S_C` invertible, and
/// `(d, A)` with `A S_C = d I`. Rows are chosen by elimination at a fixed
/// evaluation point, then every rejected row is checked to lie in the span
/// exactly, so the choice is deterministic and the rank is exact.
#[derive(Clone, Debug)]
pub struct RowSpan {
    kept: Vec<usize>,
    rows: PolyMatrix,
    cols: Vec<usize>,
    ncols: usize,
    det: LaurentPoly,
    adj: PolyMatrix,
}

impl RowSpan {
    pub fn new(candidates: &[Vec<LaurentPoly>], ncols: usize) -> Self {
        Self::build(candidates, ncols, false)
    }

    /// For a symmetric matrix: the kept rows double as the columns, so
    /// `S_C` is the principal submatrix on the kept indices.
    pub fn symmetric(g: &[Vec<LaurentPoly>]) -> Self {
        Self::build(g, g.len(), true)
    }

    fn build(candidates: &[Vec<LaurentPoly>], ncols: usize, symmetric: bool) -> Self {
        for &x in &EVAL_POINTS {
            let (kept, pivots) = modular_greedy(candidates, ncols, x);
            let cols = if symmetric { kept.clone() } else { pivots };
            let span = Self::certify(candidates, ncols, kept, cols);
            let rest_inside = span.rank() == ncols
                || (0..candidates.len())
                    .filter(|r| span.kept.binary_search(r).is_err())
                    .all(|r| span.contains(&candidates[r]));
            if rest_inside {
                return span;
            }
        }
        // Every evaluation point was unlucky: choose rows exactly.
        let mut kept: Vec<usize> = Vec::new();
        for r in 0..candidates.len() {
            let mut trial: PolyMatrix = kept.iter().map(|&k| candidates[k].clone()).collect();
            trial.push(candidates[r].clone());
            if poly_rank(&trial) > kept.len() {
                kept.push(r);
            }
        }
        let cols = if symmetric {
            kept.clone()
        } else {
            let rows: PolyMatrix = kept.iter().map(|&k| candidates[k].clone()).collect();
            bareiss_echelon(rows, ncols).pivots.into_iter().map(|(_, c)| c).collect()
        };
        Self::certify(candidates, ncols, kept, cols)
    }

    /// Assumes `S_C` is invertible, which holds whenever it is invertible
    /// after specialization.
    fn certify(candidates: &[Vec<LaurentPoly>], ncols: usize, kept: Vec<usize>, cols: Vec<usize>) -> Self {
        let rows: PolyMatrix = kept.iter().map(|&k| candidates[k].clone()).collect();
        let sub: PolyMatrix = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        let (det, adj) = if sub.is_empty() { (LaurentPoly::one(), Vec::new()) } else { det_adjugate(&sub) };
        RowSpan { kept, rows, cols, ncols, det, adj }
    }

    pub fn rank(&self) -> usize {
        self.kept.len()
    }

    /// Positions of the kept candidate rows.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// `(d, A)` with `A S_C = S_C A = d I`.
    pub fn certificate(&self) -> (&LaurentPoly, &PolyMatrix) {
        (&self.det, &self.adj)
    }

    /// Exact membership: with `y = x_C A`, `x` is in the span iff
    /// `y S = d x`.
    pub fn contains(&self, x: &[LaurentPoly]) -> bool {
        if self.rank() == self.ncols {
            return true;
        }
        let k = self.rank();
        let y: Vec<LaurentPoly> = (0..k)
            .map(|j| {
                let mut acc = LaurentPoly::zero();
                for (c, &col) in self.cols.iter().enumerate() {
                    if !x[col].is_zero() && !self.adj[c][j].is_zero() {
                        acc += &(&x[col] * &self.adj[c][j]);
                    }
                }
                acc
            })
            .collect();
        (0..self.ncols).filter(|c| !self.cols.contains(c)).all(|c| {
            let mut acc = LaurentPoly::zero();
            for (yk, row) in y.iter().zip(&self.rows) {
                if !yk.is_zero() && !row[c].is_zero() {
                    acc += &(yk * &row[c]);
                }
            }
            acc == &self.det * &x[c]
        })
    }
}
