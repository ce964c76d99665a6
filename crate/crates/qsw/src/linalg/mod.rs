//! Sparse exact linear algebra over [`Scalar`]: column-sparse matrices,
//! incremental row echelon forms, ranks, nullspaces and inverses.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::scalar::Scalar;

mod modular;

pub type SparseVec = BTreeMap<usize, Scalar>;

/// `a += c * b`, dropping entries that become zero.
pub fn axpy(a: &mut SparseVec, c: &Scalar, b: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, x) in b {
        let t = c * x;
        match a.get_mut(k) {
            Some(y) => {
                *y = &*y + &t;
                if y.is_zero() {
                    a.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    a.insert(*k, t);
                }
            }
        }
    }
}

pub fn scale(v: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (*k, c * x)).filter(|(_, x)| !x.is_zero()).collect()
}

pub fn vec_eq(a: &SparseVec, b: &SparseVec) -> bool {
    let mut d = a.clone();
    axpy(&mut d, &Scalar::int(-1), b);
    d.values().all(|x| x.is_zero())
}

pub fn dot(a: &SparseVec, b: &SparseVec) -> Scalar {
    let mut acc = Scalar::zero();
    for (k, x) in a {
        if let Some(y) = b.get(k) {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Column-sparse matrix; column `j` is the image of the `j`-th basis vector.
#[derive(Clone, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub col: Vec<SparseVec>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, col: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for (j, c) in m.col.iter_mut().enumerate() {
            c.insert(j, Scalar::one());
        }
        m
    }

    pub fn from_columns(rows: usize, col: Vec<SparseVec>) -> Self {
        Mat { rows, cols: col.len(), col }
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.col[j].get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        if x.is_zero() {
            self.col[j].remove(&i);
        } else {
            self.col[j].insert(i, x);
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, x) in v {
            axpy(&mut out, x, &self.col[*j]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        Mat::from_columns(self.rows, other.col.iter().map(|c| self.apply(c)).collect())
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.col.iter_mut().zip(&other.col) {
            axpy(a, &Scalar::one(), b);
        }
        m
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat::from_columns(self.rows, self.col.iter().map(|v| scale(v, c)).collect())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for (j, c) in self.col.iter().enumerate() {
            for (i, x) in c {
                t.col[*i].insert(j, x.clone());
            }
        }
        t
    }

    /// Kronecker product with the first factor most significant.
    pub fn kron(&self, other: &Mat) -> Mat {
        let mut m = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for (j1, c1) in self.col.iter().enumerate() {
            for (j2, c2) in other.col.iter().enumerate() {
                let col = &mut m.col[j1 * other.cols + j2];
                for (i1, x) in c1 {
                    for (i2, y) in c2 {
                        let p = x * y;
                        if !p.is_zero() {
                            col.insert(i1 * other.rows + i2, p);
                        }
                    }
                }
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.col.iter().all(|c| c.values().all(|x| x.is_zero()))
    }

    pub fn approx_eq(&self, other: &Mat) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self.col.iter().zip(&other.col).all(|(a, b)| vec_eq(a, b))
    }

    pub fn nnz(&self) -> usize {
        self.col.iter().map(|c| c.len()).sum()
    }

    /// Entries flattened column-major into one vector of length `rows*cols`.
    pub fn flatten(&self) -> SparseVec {
        let mut v = SparseVec::new();
        for (j, c) in self.col.iter().enumerate() {
            for (i, x) in c {
                v.insert(j * self.rows + i, x.clone());
            }
        }
        v
    }

    pub fn rows_sparse(&self) -> Vec<SparseVec> {
        self.transpose().col
    }

    pub fn rank(&self) -> usize {
        rank(self.col.iter().cloned())
    }

    /// Basis of the kernel.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut e = Echelon::new(self.cols);
        for r in self.rows_sparse() {
            e.insert(r);
        }
        e.nullspace()
    }

    /// Gauss-Jordan inverse of a square matrix.
    pub fn inverse(&self) -> Option<Mat> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut rows = self.rows_sparse();
        let mut inv: Vec<SparseVec> = (0..n).map(|i| SparseVec::from([(i, Scalar::one())])).collect();
        for c in 0..n {
            let p = (c..n)
                .filter(|&r| rows[r].get(&c).is_some_and(|x| !x.is_zero()))
                .max_by(|&a, &b| {
                    rows[a][&c].magnitude().partial_cmp(&rows[b][&c].magnitude()).unwrap()
                })?;
            rows.swap(c, p);
            inv.swap(c, p);
            let pinv = rows[c][&c].inv()?;
            rows[c] = scale(&rows[c], &pinv);
            inv[c] = scale(&inv[c], &pinv);
            for r in 0..n {
                if r == c {
                    continue;
                }
                if let Some(f) = rows[r].get(&c).cloned() {
                    let f = -f;
                    let (pr, pi) = (rows[c].clone(), inv[c].clone());
                    axpy(&mut rows[r], &f, &pr);
                    axpy(&mut inv[r], &f, &pi);
                    rows[r].remove(&c);
                }
            }
        }
        // inv holds rows of the inverse
        Some(Mat::from_columns(n, inv).transpose())
    }

    /// Restriction to row and column index subsets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(a, b)| (*b, a)).collect();
        let col = cols
            .iter()
            .map(|j| {
                self.col[*j]
                    .iter()
                    .filter_map(|(i, x)| pos.get(i).map(|k| (*k, x.clone())))
                    .collect()
            })
            .collect();
        Mat::from_columns(rows.len(), col)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Incremental row echelon form. Row `k` is normalized to pivot value 1 and
/// only mentions pivot columns of rows inserted after it.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<(usize, SparseVec)>,
    pivot_of: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_of: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut queue: BTreeSet<usize> = v.keys().filter_map(|c| self.pivot_of.get(c).copied()).collect();
        while let Some(k) = queue.pop_first() {
            let (p, row) = &self.rows[k];
            let Some(c) = v.get(p).cloned() else { continue };
            let c = -c;
            for col in row.keys() {
                if !v.contains_key(col) {
                    if let Some(&kk) = self.pivot_of.get(col) {
                        queue.insert(kk);
                    }
                }
            }
            axpy(&mut v, &c, row);
            v.remove(p);
        }
        v.retain(|_, x| !x.is_zero());
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        if v.is_empty() {
            return false;
        }
        let (p, pv) = if v.values().any(|x| x.is_float()) {
            let (p, x) = v
                .iter()
                .max_by(|a, b| a.1.magnitude().partial_cmp(&b.1.magnitude()).unwrap())
                .unwrap();
            (*p, x.clone())
        } else {
            let (p, x) = v.iter().next().unwrap();
            (*p, x.clone())
        };
        let mut row = scale(&v, &pv.inv().unwrap());
        row.insert(p, Scalar::one());
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push((p, row));
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Basis of `{x : row . x = 0 for every stored row}`.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivot_of.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = SparseVec::from([(f, Scalar::one())]);
                for (p, row) in self.rows.iter().rev() {
                    let mut acc = Scalar::zero();
                    for (c, a) in row {
                        if c != p {
                            if let Some(y) = x.get(c) {
                                acc = &acc + &(a * y);
                            }
                        }
                    }
                    if !acc.is_zero() {
                        x.insert(*p, -acc);
                    }
                }
                x
            })
            .collect()
    }
}

/// Nullspace of the system with the given rows. Rational systems go through
/// a modular solve that is verified exactly; anything else, or a failed
/// reconstruction, falls back to exact elimination. Both give the basis of
/// [`Echelon::nullspace`].
pub fn nullspace(rows: Vec<SparseVec>, ncols: usize) -> Vec<SparseVec> {
    if let Some(ns) = modular::rational_nullspace(&rows, ncols) {
        return ns;
    }
    log::debug!("modular solve unavailable; exact elimination on {} rows", rows.len());
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.nullspace()
}

pub fn rank<I: IntoIterator<Item = SparseVec>>(vs: I) -> usize {
    let mut e: Option<Echelon> = None;
    for v in vs {
        let n = v.keys().next_back().map_or(0, |k| k + 1);
        let ech = e.get_or_insert_with(|| Echelon::new(0));
        ech.ncols = ech.ncols.max(n);
        ech.insert(v);
    }
    e.map_or(0, |e| e.rank())
}

/// Coordinates of `v` in the (independent) family `basis`, if it lies in the span.
pub fn coordinates(basis: &[SparseVec], v: &SparseVec) -> Option<Vec<Scalar>> {
    // columns = basis vectors; solve B x = v through the kernel of [B | -v]
    let k = basis.len();
    let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (j, b) in basis.iter().enumerate() {
        for (i, x) in b {
            rows.entry(*i).or_default().insert(j, x.clone());
        }
    }
    for (i, x) in v {
        rows.entry(*i).or_default().insert(k, -x);
    }
    let mut e = Echelon::new(k + 1);
    for r in rows.into_values() {
        e.insert(r);
    }
    let sol = e.nullspace().into_iter().find(|x| x.contains_key(&k))?;
    let t = sol[&k].inv()?;
    Some((0..k).map(|j| sol.get(&j).map_or(Scalar::zero(), |x| x * &t)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows[0].len();
        let mut a = Mat::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                a.set(i, j, Scalar::int(rows[i][j]));
            }
        }
        a
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.apply(&k[0]).is_empty());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).approx_eq(&Mat::identity(3)));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn coordinates_in_basis() {
        let b = vec![
            SparseVec::from([(0, Scalar::int(1)), (1, Scalar::int(1))]),
            SparseVec::from([(1, Scalar::int(1)), (2, Scalar::int(2))]),
        ];
        let v = SparseVec::from([(0, Scalar::int(2)), (1, Scalar::int(5)), (2, Scalar::int(6))]);
        assert_eq!(coordinates(&b, &v).unwrap(), vec![Scalar::int(2), Scalar::int(3)]);
        let w = SparseVec::from([(0, Scalar::int(1))]);
        assert!(coordinates(&b, &w).is_none());
    }

    #[test]
    fn kron_shape() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let k = a.kron(&Mat::identity(2));
        assert_eq!(k.get(2, 0), Scalar::int(3));
        assert_eq!(k.get(3, 1), Scalar::int(3));
        assert_eq!(k.get(1, 0), Scalar::zero());
    }
}
