//! Graded free modules, homogeneous matrices between them, and their graded pieces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::FieldMatrix;
use crate::poly::{monomial_at, monomial_count, monomial_index, poly_mul, Exponents, HomogPoly};

/// ⊕_q R(−u_q), stored as the list of twists u_q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GradedFreeModule {
    pub twists: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        GradedFreeModule { twists }
    }

    pub fn free(rank: usize, twist: i64) -> Self {
        GradedFreeModule { twists: vec![twist; rank] }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// Hom(−, R(e)): the summand R(−u) becomes R(u + e), i.e. twist −u−e.
    pub fn dual(&self, extra_twist: i64) -> Self {
        GradedFreeModule { twists: self.twists.iter().map(|u| -u - extra_twist).collect() }
    }

    /// The module shifted by `s`, i.e. F(s).
    pub fn shifted(&self, s: i64) -> Self {
        GradedFreeModule { twists: self.twists.iter().map(|u| u - s).collect() }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        GradedFreeModule { twists }
    }
}

/// Σ_q dim R_{ν−u_q}.
pub fn hilbert_dim(f: &GradedFreeModule, nu: i64, n_vars: usize) -> usize {
    f.twists.iter().map(|u| monomial_count(n_vars, nu - u)).sum()
}

/// Monomial basis of a graded piece ⊕_q R_{ν−u_q}: summand blocks in order, each
/// block in the order of [`crate::poly::monomial_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceBasis {
    pub n_vars: usize,
    pub degrees: Vec<i64>,
    pub offsets: Vec<usize>,
}

impl PieceBasis {
    pub fn new(f: &GradedFreeModule, nu: i64, n_vars: usize) -> Self {
        let degrees: Vec<i64> = f.twists.iter().map(|u| nu - u).collect();
        let mut offsets = Vec::with_capacity(degrees.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &d in &degrees {
            acc += monomial_count(n_vars, d);
            offsets.push(acc);
        }
        PieceBasis { n_vars, degrees, offsets }
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    #[inline]
    pub fn index(&self, summand: usize, e: &[u16]) -> usize {
        self.offsets[summand] + monomial_index(e)
    }

    /// (summand, monomial) label of a basis vector.
    pub fn label(&self, idx: usize) -> (usize, Exponents) {
        let q = self.offsets.partition_point(|&o| o <= idx) - 1;
        (q, monomial_at(self.n_vars, self.degrees[q], idx - self.offsets[q]))
    }
}

/// A degree-0 map ⊕R(−u_q) → ⊕R(−v_p), stored by sparse columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogMatrix<F: Field> {
    n_vars: usize,
    source: GradedFreeModule,
    target: GradedFreeModule,
    cols: Vec<Vec<(usize, HomogPoly<F>)>>,
}

impl<F: Field> HomogMatrix<F> {
    pub fn zero(n_vars: usize, source: GradedFreeModule, target: GradedFreeModule) -> Self {
        let cols = vec![Vec::new(); source.rank()];
        HomogMatrix { n_vars, source, target, cols }
    }

    pub fn identity(n_vars: usize, f: &GradedFreeModule) -> Self {
        let mut m = Self::zero(n_vars, f.clone(), f.clone());
        for q in 0..f.rank() {
            m.cols[q].push((q, HomogPoly::constant(n_vars, F::one())));
        }
        m
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    /// Degree an entry (p, q) must have.
    pub fn slot_degree(&self, p: usize, q: usize) -> i64 {
        self.source.twists[q] - self.target.twists[p]
    }

    /// Nonzero entries of column q as (row, poly), rows ascending.
    pub fn column(&self, q: usize) -> &[(usize, HomogPoly<F>)] {
        &self.cols[q]
    }

    pub fn entry(&self, p: usize, q: usize) -> HomogPoly<F> {
        match self.cols[q].binary_search_by_key(&p, |(r, _)| *r) {
            Ok(k) => self.cols[q][k].1.clone(),
            Err(_) => HomogPoly::zero(self.n_vars, self.slot_degree(p, q)),
        }
    }

    /// Sets entry (p, q). The polynomial must be zero or of the slot degree.
    pub fn set(&mut self, p: usize, q: usize, f: HomogPoly<F>) -> Result<()> {
        if p >= self.rows() || q >= self.cols() {
            return Err(Error::OutOfRange(format!("entry ({p},{q})")));
        }
        if f.n_vars() != self.n_vars {
            return Err(Error::VariableMismatch(self.n_vars, f.n_vars()));
        }
        if !f.is_zero() && f.degree() != self.slot_degree(p, q) {
            return Err(Error::NotHomogeneous);
        }
        let col = &mut self.cols[q];
        match col.binary_search_by_key(&p, |(r, _)| *r) {
            Ok(k) => {
                if f.is_zero() {
                    col.remove(k);
                } else {
                    col[k].1 = f;
                }
            }
            Err(k) => {
                if !f.is_zero() {
                    col.insert(k, (p, f));
                }
            }
        }
        Ok(())
    }

    /// Adds `f` to entry (p, q).
    pub fn add_to(&mut self, p: usize, q: usize, f: &HomogPoly<F>) -> Result<()> {
        if f.is_zero() {
            return Ok(());
        }
        let cur = self.entry(p, q);
        let sum = cur.add(f)?;
        self.set(p, q, sum)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// True if every stored entry has the degree of its slot.
    pub fn is_homogeneous(&self) -> bool {
        self.cols.iter().enumerate().all(|(q, col)| {
            col.iter().all(|(p, f)| f.is_zero() || f.degree() == self.slot_degree(*p, q))
        })
    }

    /// True if some entry has a nonzero constant term (the map is not minimal).
    pub fn has_constant_entries(&self) -> bool {
        self.cols.iter().flatten().any(|(_, f)| f.degree() == 0 && !f.is_zero())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.target != self.source || self.n_vars != other.n_vars {
            return Err(Error::Shape("composition of incompatible maps".into()));
        }
        let mut out = Self::zero(self.n_vars, other.source.clone(), self.target.clone());
        for q in 0..other.cols() {
            let mut acc: std::collections::BTreeMap<usize, HomogPoly<F>> = Default::default();
            for (mid, g) in &other.cols[q] {
                for (p, f) in &self.cols[*mid] {
                    let prod = poly_mul(f, g)?;
                    match acc.get_mut(p) {
                        Some(s) => *s = s.add(&prod)?,
                        None => {
                            acc.insert(*p, prod);
                        }
                    }
                }
            }
            out.cols[q] = acc.into_iter().filter(|(_, f)| !f.is_zero()).collect();
        }
        Ok(out)
    }

    /// Hom(−, R(e)) applied to the map: transpose with dual modules.
    pub fn dual(&self, extra_twist: i64) -> Self {
        let mut cols = vec![Vec::new(); self.rows()];
        for (q, col) in self.cols.iter().enumerate() {
            for (p, f) in col {
                cols[*p].push((q, f.clone()));
            }
        }
        HomogMatrix {
            n_vars: self.n_vars,
            source: self.target.dual(extra_twist),
            target: self.source.dual(extra_twist),
            cols,
        }
    }

    /// The same map between the shifted modules F(s) → G(s).
    pub fn shifted(&self, s: i64) -> Self {
        HomogMatrix {
            n_vars: self.n_vars,
            source: self.source.shifted(s),
            target: self.target.shifted(s),
            cols: self.cols.clone(),
        }
    }

    pub fn scale(&self, c: F) -> Self {
        let mut out = self.clone();
        for col in &mut out.cols {
            for (_, f) in col.iter_mut() {
                *f = f.scale(c);
            }
            col.retain(|(_, f)| !f.is_zero());
        }
        out
    }

    /// Block matrix [self | other] (same target).
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.target != other.target {
            return Err(Error::Shape("hstack with different targets".into()));
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Ok(HomogMatrix {
            n_vars: self.n_vars,
            source: self.source.direct_sum(&other.source),
            target: self.target.clone(),
            cols,
        })
    }

    /// Block matrix [self ; other] (same source).
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.source != other.source {
            return Err(Error::Shape("vstack with different sources".into()));
        }
        let off = self.rows();
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.iter().cloned().chain(b.iter().map(|(p, f)| (p + off, f.clone()))).collect())
            .collect();
        Ok(HomogMatrix {
            n_vars: self.n_vars,
            source: self.source.clone(),
            target: self.target.direct_sum(&other.target),
            cols,
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let off = self.rows();
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().map(|c| c.iter().map(|(p, f)| (p + off, f.clone())).collect::<Vec<_>>()));
        HomogMatrix {
            n_vars: self.n_vars,
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            cols,
        }
    }

    /// Kronecker product A ⊗ B; summand (i, j) of a product module sits at
    /// index i·rank(second) + j.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        if self.n_vars != other.n_vars {
            return Err(Error::VariableMismatch(self.n_vars, other.n_vars));
        }
        let tensor = |x: &GradedFreeModule, y: &GradedFreeModule| {
            GradedFreeModule::new(x.twists.iter().flat_map(|u| y.twists.iter().map(move |v| u + v)).collect())
        };
        let (orows, ocols) = (other.rows(), other.cols());
        let mut cols = Vec::with_capacity(self.cols() * ocols);
        for a_col in &self.cols {
            for b_col in &other.cols {
                let mut col = Vec::new();
                for (p1, f) in a_col {
                    for (p2, g) in b_col {
                        col.push((p1 * orows + p2, poly_mul(f, g)?));
                    }
                }
                col.retain(|(_, h)| !h.is_zero());
                col.sort_by_key(|(p, _)| *p);
                cols.push(col);
            }
        }
        Ok(HomogMatrix {
            n_vars: self.n_vars,
            source: tensor(&self.source, &other.source),
            target: tensor(&self.target, &other.target),
            cols,
        })
    }

    /// Reduction modulo the last variable.
    pub fn restrict_last_variable(&self) -> Self {
        HomogMatrix {
            n_vars: self.n_vars - 1,
            source: self.source.clone(),
            target: self.target.clone(),
            cols: self
                .cols
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|(p, f)| (*p, f.restrict_last_variable()))
                        .filter(|(_, f)| !f.is_zero())
                        .collect()
                })
                .collect(),
        }
    }

    /// Column-wise submatrix on the given source summands.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        HomogMatrix {
            n_vars: self.n_vars,
            source: GradedFreeModule::new(idx.iter().map(|&q| self.source.twists[q]).collect()),
            target: self.target.clone(),
            cols: idx.iter().map(|&q| self.cols[q].clone()).collect(),
        }
    }
}

/// The degree-ν component of `m` in the monomial bases of source and target pieces.
pub fn graded_piece<F: Field>(m: &HomogMatrix<F>, nu: i64) -> FieldMatrix<F> {
    let nv = m.n_vars;
    let rb = PieceBasis::new(&m.target, nu, nv);
    let cb = PieceBasis::new(&m.source, nu, nv);
    let mut trip: Vec<(u32, u32, F)> = Vec::new();
    let mut prod = vec![0u16; nv];
    for q in 0..m.cols() {
        let dq = cb.degrees[q];
        if dq < 0 || m.cols[q].is_empty() {
            continue;
        }
        let cnt = monomial_count(nv, dq);
        for (local, mono) in crate::poly::monomial_basis(nv, dq).into_iter().enumerate() {
            debug_assert!(local < cnt);
            let col = (cb.offsets[q] + local) as u32;
            for (p, f) in &m.cols[q] {
                for (e, &c) in f.terms() {
                    for k in 0..nv {
                        prod[k] = mono[k] + e[k];
                    }
                    trip.push((rb.index(*p, &prod) as u32, col, c));
                }
            }
        }
    }
    FieldMatrix::from_triplets(rb.dim(), cb.dim(), trip).with_bases(rb, cb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use crate::field::Fp;
    use crate::poly::random_form_seeded;

    type F = Fp<32003>;

    #[test]
    fn hilbert_dims() {
        assert_eq!(hilbert_dim(&GradedFreeModule::free(1, 0), 2, 5), 15);
        assert_eq!(hilbert_dim(&GradedFreeModule::free(3, 1), 0, 5), 0);
        assert_eq!(hilbert_dim(&GradedFreeModule::free(4, -1), -1, 3), 4);
    }

    #[test]
    fn identity_piece() {
        let f = GradedFreeModule::free(1, 0);
        let id = HomogMatrix::<F>::identity(3, &f);
        let m = graded_piece(&id, 2);
        assert_eq!((m.rows(), m.cols()), (6, 6));
        assert_eq!(m, FieldMatrix::identity(6));
    }

    #[test]
    fn multiplication_by_x0() {
        let mut m = HomogMatrix::<F>::zero(2, GradedFreeModule::free(1, 1), GradedFreeModule::free(1, 0));
        m.set(0, 0, HomogPoly::var(2, 0)).unwrap();
        let g = graded_piece(&m, 1);
        assert_eq!((g.rows(), g.cols()), (2, 1));
        assert_eq!(g.get(0, 0), F::one());
        assert_eq!(g.get(1, 0), F::zero());
    }

    #[test]
    fn empty_source_piece() {
        let m = HomogMatrix::<F>::zero(5, GradedFreeModule::free(3, 1), GradedFreeModule::free(2, 0));
        let g = graded_piece(&m, 0);
        assert_eq!((g.rows(), g.cols()), (2, 0));
        assert_eq!(g.rank(), 0);
    }

    #[test]
    fn wrong_degree_is_rejected() {
        let mut m = HomogMatrix::<F>::zero(2, GradedFreeModule::free(1, 2), GradedFreeModule::free(1, 0));
        assert_eq!(m.set(0, 0, HomogPoly::var(2, 0)), Err(Error::NotHomogeneous));
    }

    fn random_map(nv: usize, src: &[i64], tgt: &[i64], seed: u64) -> HomogMatrix<F> {
        let mut m = HomogMatrix::zero(nv, GradedFreeModule::new(src.to_vec()), GradedFreeModule::new(tgt.to_vec()));
        let mut s = seed;
        for p in 0..tgt.len() {
            for q in 0..src.len() {
                s += 1;
                m.set(p, q, random_form_seeded(nv, src[q] - tgt[p], s)).unwrap();
            }
        }
        m
    }

    #[test]
    fn graded_piece_is_functorial() {
        let b = random_map(3, &[2, 3], &[1, 1, 2], 10);
        let a = random_map(3, &[1, 1, 2], &[0, 1], 20);
        let ab = a.compose(&b).unwrap();
        for nu in 0..5 {
            let lhs = graded_piece(&ab, nu);
            let rhs = graded_piece(&a, nu).mul(&graded_piece(&b, nu));
            assert_eq!(lhs, rhs, "nu={nu}");
        }
    }

    #[test]
    fn dual_of_constant_map_is_transpose_at_matching_degrees() {
        let m = random_map(3, &[0, 0, 0], &[0, 0], 3);
        let d = m.dual(0);
        let a = graded_piece(&m, 0);
        let b = graded_piece(&d, 0);
        assert_eq!(a.transpose(), b);
    }

    #[test]
    fn kron_mixed_product() {
        let a = random_map(3, &[1, 2], &[0, 1], 1);
        let c = random_map(3, &[2, 2, 3], &[1, 2], 2);
        let b = random_map(3, &[1], &[0, 0], 3);
        let d = random_map(3, &[1, 2], &[1], 4);
        let lhs = a.kron(&b).unwrap().compose(&c.kron(&d).unwrap()).unwrap();
        let rhs = a.compose(&c).unwrap().kron(&b.compose(&d).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(lhs.is_homogeneous());
    }

    #[test]
    fn labels_roundtrip() {
        let f = GradedFreeModule::new(vec![0, 1, 1]);
        let pb = PieceBasis::new(&f, 2, 3);
        assert_eq!(pb.dim(), 6 + 3 + 3);
        for i in 0..pb.dim() {
            let (q, e) = pb.label(i);
            assert_eq!(pb.index(q, &e), i);
        }
    }
}
