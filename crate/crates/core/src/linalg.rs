//! Matrices over a field: dense row-major storage for small pieces, sparse rows above
//! a size threshold. Rank, kernel and solving by Gaussian elimination.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::field::Field;
use crate::graded::PieceBasis;

/// Matrices with `rows·cols` above this are stored sparsely.
pub const SPARSE_THRESHOLD: usize = 4_000_000;

#[derive(Clone, Debug)]
pub enum Storage<F: Field> {
    /// Row-major.
    Dense(Vec<F>),
    /// One sorted list of (column, nonzero value) per row.
    Sparse(Vec<Vec<(u32, F)>>),
}

#[derive(Clone, Debug)]
pub struct FieldMatrix<F: Field> {
    rows: usize,
    cols: usize,
    storage: Storage<F>,
    row_basis: Option<PieceBasis>,
    col_basis: Option<PieceBasis>,
}

impl<F: Field> PartialEq for FieldMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.sparse_rows() == other.sparse_rows()
    }
}

impl<F: Field> FieldMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_triplets(rows, cols, Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n as u32).map(|i| (i, i, F::one())).collect())
    }

    pub fn from_rows(data: &[Vec<F>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut flat = Vec::with_capacity(rows * cols);
        for r in data {
            assert_eq!(r.len(), cols, "ragged rows");
            flat.extend_from_slice(r);
        }
        FieldMatrix { rows, cols, storage: Storage::Dense(flat), row_basis: None, col_basis: None }
    }

    /// Builds from (row, col, value) triplets, summing duplicates.
    pub fn from_triplets(rows: usize, cols: usize, trip: Vec<(u32, u32, F)>) -> Self {
        Self::from_triplets_threshold(rows, cols, trip, SPARSE_THRESHOLD)
    }

    pub fn from_triplets_threshold(rows: usize, cols: usize, trip: Vec<(u32, u32, F)>, threshold: usize) -> Self {
        let storage = if rows.saturating_mul(cols) <= threshold {
            let mut flat = vec![F::zero(); rows * cols];
            for (r, c, v) in trip {
                flat[r as usize * cols + c as usize] += v;
            }
            Storage::Dense(flat)
        } else {
            let mut data: Vec<Vec<(u32, F)>> = vec![Vec::new(); rows];
            for (r, c, v) in trip {
                data[r as usize].push((c, v));
            }
            for row in &mut data {
                normalize_sparse_row(row);
            }
            Storage::Sparse(data)
        };
        FieldMatrix { rows, cols, storage, row_basis: None, col_basis: None }
    }

    pub fn with_bases(mut self, row_basis: PieceBasis, col_basis: PieceBasis) -> Self {
        self.row_basis = Some(row_basis);
        self.col_basis = Some(col_basis);
        self
    }

    pub fn row_basis(&self) -> Option<&PieceBasis> {
        self.row_basis.as_ref()
    }

    pub fn col_basis(&self) -> Option<&PieceBasis> {
        self.col_basis.as_ref()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn storage(&self) -> &Storage<F> {
        &self.storage
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        match &self.storage {
            Storage::Dense(d) => d[i * self.cols + j],
            Storage::Sparse(s) => s[i]
                .binary_search_by_key(&(j as u32), |(c, _)| *c)
                .map_or(F::zero(), |k| s[i][k].1),
        }
    }

    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(d) => d.iter().filter(|v| !v.is_zero()).count(),
            Storage::Sparse(s) => s.iter().map(|r| r.len()).sum(),
        }
    }

    /// Rows as sparse lists, whatever the storage.
    pub fn sparse_rows(&self) -> Vec<Vec<(u32, F)>> {
        match &self.storage {
            Storage::Sparse(s) => s.clone(),
            Storage::Dense(d) => (0..self.rows)
                .map(|i| {
                    d[i * self.cols..(i + 1) * self.cols]
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(j, &v)| (j as u32, v))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn dense_rows(&self) -> Vec<Vec<F>> {
        match &self.storage {
            Storage::Dense(d) => (0..self.rows).map(|i| d[i * self.cols..(i + 1) * self.cols].to_vec()).collect(),
            Storage::Sparse(s) => s
                .iter()
                .map(|r| {
                    let mut row = vec![F::zero(); self.cols];
                    for &(c, v) in r {
                        row[c as usize] = v;
                    }
                    row
                })
                .collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let trip = self
            .sparse_rows()
            .into_iter()
            .enumerate()
            .flat_map(|(i, r)| r.into_iter().map(move |(j, v)| (j, i as u32, v)))
            .collect();
        let mut t = Self::from_triplets(self.cols, self.rows, trip);
        t.row_basis = self.col_basis.clone();
        t.col_basis = self.row_basis.clone();
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let b = other.sparse_rows();
        let mut trip = Vec::new();
        for (i, row) in self.sparse_rows().into_iter().enumerate() {
            let mut acc: std::collections::BTreeMap<u32, F> = Default::default();
            for (k, a) in row {
                for &(j, v) in &b[k as usize] {
                    *acc.entry(j).or_insert_with(F::zero) += a * v;
                }
            }
            trip.extend(acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (i as u32, j, v)));
        }
        Self::from_triplets(self.rows, other.cols, trip)
    }

    /// Matrix–vector product.
    pub fn apply(&self, x: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.cols);
        self.sparse_rows()
            .iter()
            .map(|r| r.iter().fold(F::zero(), |s, &(j, v)| s + v * x[j as usize]))
            .collect()
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match &self.storage {
            Storage::Dense(d) => dense_rank(d.clone(), self.rows, self.cols),
            Storage::Sparse(s) => {
                // eliminate along the longer side so pivot rows stay short
                if self.rows >= self.cols {
                    sparse_rank(s, self.cols)
                } else {
                    let t = self.transpose();
                    match t.storage {
                        Storage::Sparse(ts) => sparse_rank(&ts, self.rows),
                        Storage::Dense(td) => dense_rank(td, self.cols, self.rows),
                    }
                }
            }
        }
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right kernel {x : A x = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = rref(self.dense_rows(), self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r[k][free];
            }
            basis.push(v);
        }
        basis
    }

    /// Some x with A x = b, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = self.dense_rows();
        for (row, &bi) in aug.iter_mut().zip(b) {
            row.push(bi);
        }
        let (r, pivots) = rref(aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r[k][self.cols];
        }
        Some(x)
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let off = self.cols as u32;
        let mut trip = Vec::new();
        for (i, r) in self.sparse_rows().into_iter().enumerate() {
            trip.extend(r.into_iter().map(|(j, v)| (i as u32, j, v)));
        }
        for (i, r) in other.sparse_rows().into_iter().enumerate() {
            trip.extend(r.into_iter().map(|(j, v)| (i as u32, j + off, v)));
        }
        Self::from_triplets(self.rows, self.cols + other.cols, trip)
    }

    /// Vertical concatenation [self ; other].
    pub fn vstack(&self, other: &Self) -> Self {
        self.transpose().hstack(&other.transpose()).transpose()
    }

    /// Submatrix made of the given columns.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut pos = vec![u32::MAX; self.cols];
        for (k, &j) in idx.iter().enumerate() {
            pos[j] = k as u32;
        }
        let mut trip = Vec::new();
        for (i, r) in self.sparse_rows().into_iter().enumerate() {
            trip.extend(r.into_iter().filter(|(j, _)| pos[*j as usize] != u32::MAX).map(|(j, v)| (i as u32, pos[j as usize], v)));
        }
        Self::from_triplets(self.rows, idx.len(), trip)
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

fn normalize_sparse_row<F: Field>(row: &mut Vec<(u32, F)>) {
    row.sort_unstable_by_key(|(c, _)| *c);
    let mut out: Vec<(u32, F)> = Vec::with_capacity(row.len());
    for &(c, v) in row.iter() {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    *row = out;
}

fn dense_rank<F: Field>(mut a: Vec<F>, rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| !a[i * cols + col].is_zero()) else {
            continue;
        };
        if piv != rank {
            for j in col..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = a[rank * cols + col].inverse().unwrap();
        for j in col..cols {
            a[rank * cols + j] *= inv;
        }
        let (head, tail) = a.split_at_mut((rank + 1) * cols);
        let prow = &head[rank * cols..];
        for row in tail.chunks_mut(cols) {
            let f = row[col];
            if f.is_zero() {
                continue;
            }
            for j in col..cols {
                row[j] -= f * prow[j];
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a sparse matrix given by rows. Rows are reduced one at a time against
/// the pivot rows found so far, using a dense accumulator and a min-heap of
/// touched columns; a row that survives with leading column `c` becomes the
/// pivot for `c` (normalized to leading coefficient one).
pub fn sparse_rank<F: Field>(rows: &[Vec<(u32, F)>], ncols: usize) -> usize {
    let mut order: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    order.sort_by_key(|&i| (rows[i][0].0, rows[i].len()));
    let mut pivot_of = vec![u32::MAX; ncols];
    let mut pivots: Vec<Vec<(u32, F)>> = Vec::new();
    let mut acc = vec![F::zero(); ncols];
    let mut mark = vec![false; ncols];
    let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();
    for &i in &order {
        for &(c, v) in &rows[i] {
            acc[c as usize] = v;
            mark[c as usize] = true;
            heap.push(Reverse(c));
        }
        while let Some(Reverse(c)) = heap.pop() {
            let cu = c as usize;
            mark[cu] = false;
            let v = acc[cu];
            acc[cu] = F::zero();
            if v.is_zero() {
                continue;
            }
            let p = pivot_of[cu];
            if p != u32::MAX {
                for &(j, w) in &pivots[p as usize][1..] {
                    let ju = j as usize;
                    if !mark[ju] {
                        mark[ju] = true;
                        heap.push(Reverse(j));
                    }
                    acc[ju] -= v * w;
                }
            } else {
                let inv = v.inverse().unwrap();
                let mut prow = Vec::with_capacity(heap.len() + 1);
                prow.push((c, F::one()));
                while let Some(Reverse(j)) = heap.pop() {
                    let ju = j as usize;
                    mark[ju] = false;
                    let w = acc[ju];
                    acc[ju] = F::zero();
                    if !w.is_zero() {
                        prow.push((j, w * inv));
                    }
                }
                pivot_of[cu] = pivots.len() as u32;
                pivots.push(prow);
                break;
            }
        }
    }
    pivots.len()
}

/// Reduced row echelon form; returns the reduced rows (only the nonzero ones) and
/// the pivot columns.
pub fn rref<F: Field>(mut a: Vec<Vec<F>>, cols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let inv = a[r][col].inverse().unwrap();
        for v in a[r].iter_mut() {
            *v *= inv;
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col];
            for j in col..cols {
                row[j] -= f * prow[j];
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use crate::field::Fp;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type F = Fp<32003>;

    fn random_sparse(rows: usize, cols: usize, nnz_per_row: usize, seed: u64) -> Vec<(u32, u32, F)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut trip = Vec::new();
        for i in 0..rows {
            for _ in 0..nnz_per_row {
                trip.push((i as u32, rng.gen_range(0..cols) as u32, F::sample(&mut rng)));
            }
        }
        trip
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(FieldMatrix::<F>::zeros(3, 3).rank(), 0);
        assert_eq!(FieldMatrix::<F>::zeros(3, 3).kernel_dim(), 3);
        assert_eq!(FieldMatrix::<F>::identity(4).rank(), 4);
        assert_eq!(FieldMatrix::<F>::zeros(2, 0).rank(), 0);
    }

    #[test]
    fn sparse_and_dense_agree() {
        for seed in 0..20 {
            let (r, c) = (30 + seed as usize, 25);
            let trip = random_sparse(r, c, 2, seed);
            let dense = FieldMatrix::from_triplets_threshold(r, c, trip.clone(), usize::MAX);
            let sparse = FieldMatrix::from_triplets_threshold(r, c, trip, 0);
            assert!(sparse.is_sparse() && !dense.is_sparse());
            assert_eq!(dense.rank(), sparse.rank(), "seed {seed}");
            assert_eq!(dense.rank(), dense.transpose().rank());
        }
    }

    #[test]
    fn rank_of_product_structure() {
        // rank of (u v^T) for nonzero u, v is one
        let u: Vec<F> = (1..6).map(|x| F::new(x)).collect();
        let v: Vec<F> = (3..10).map(|x| F::new(x * x)).collect();
        let rows: Vec<Vec<F>> = u.iter().map(|&a| v.iter().map(|&b| a * b).collect()).collect();
        assert_eq!(FieldMatrix::from_rows(&rows).rank(), 1);
    }

    #[test]
    fn kernel_and_solve() {
        let m = FieldMatrix::<F>::from_triplets(3, 5, random_sparse(3, 5, 3, 9));
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), m.kernel_dim());
        for v in &ker {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
        let x: Vec<F> = (0..5).map(|i| F::new(i * 7 + 1)).collect();
        let b = m.apply(&x);
        let y = m.solve(&b).unwrap();
        assert_eq!(m.apply(&y), b);
        let z = FieldMatrix::<F>::zeros(2, 2);
        assert!(z.solve(&[F::one(), F::zero()]).is_none());
    }

    #[test]
    fn rank_is_permutation_invariant() {
        let trip = random_sparse(12, 10, 2, 4);
        let m = FieldMatrix::<F>::from_triplets(12, 10, trip.clone());
        let perm: Vec<(u32, u32, F)> = trip.into_iter().map(|(i, j, v)| ((i * 5) % 12, (j * 3) % 10, v)).collect();
        let p = FieldMatrix::<F>::from_triplets(12, 10, perm);
        assert_eq!(m.rank(), p.rank());
    }
}
