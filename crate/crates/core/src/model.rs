//! Degree data of φ: F → G, the generic homogeneous matrix, and derived invariants.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{GradedFreeModule, HomogMatrix};
use crate::poly::{binom, poly_mul, random_form, HomogPoly};

/// Largest t for which maximal minors are expanded by Laplace.
pub const LAPLACE_MAX_T: usize = 6;

/// Twists (b_i) of G and (a_j) of F, both non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeMatrix {
    pub t: usize,
    pub c: usize,
    pub b: Vec<i64>,
    pub a: Vec<i64>,
}

impl DegreeMatrix {
    pub fn new(t: usize, c: usize, b: Vec<i64>, a: Vec<i64>) -> Result<Self> {
        if t < 1 || c < 1 {
            return Err(Error::InvalidDegreeMatrix(format!("need t ≥ 1 and c ≥ 1, got t={t}, c={c}")));
        }
        if b.len() != t || a.len() != t + c - 1 {
            return Err(Error::InvalidDegreeMatrix(format!(
                "expected {} values of b and {} of a, got {} and {}",
                t,
                t + c - 1,
                b.len(),
                a.len()
            )));
        }
        if b.windows(2).any(|w| w[0] < w[1]) || a.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDegreeMatrix("a and b must be non-increasing".into()));
        }
        Ok(DegreeMatrix { t, c, b, a })
    }

    /// All b_i = 0, all a_j = 1.
    pub fn linear(t: usize, c: usize) -> Self {
        DegreeMatrix { t, c, b: vec![0; t], a: vec![1; t + c - 1] }
    }

    pub fn is_linear(&self) -> bool {
        self.b.iter().all(|&x| x == 0) && self.a.iter().all(|&x| x == 1)
    }

    /// a_j with the 1-based index of the text.
    pub fn a1(&self, j: usize) -> i64 {
        self.a[j - 1]
    }

    pub fn b1(&self, i: usize) -> i64 {
        self.b[i - 1]
    }

    /// ℓ = Σa − Σb.
    pub fn ell(&self) -> i64 {
        self.a.iter().sum::<i64>() - self.b.iter().sum::<i64>()
    }

    /// Σ_{j=c+1}^{t+c−1} a_j.
    fn tail_sum(&self) -> i64 {
        self.a[self.c..].iter().sum()
    }

    /// μ = t+1 − Σ_{j>c} a_j + Σ b_i + b_1.
    pub fn mu(&self) -> i64 {
        self.t as i64 + 1 - self.tail_sum() + self.b.iter().sum::<i64>() + self.b[0]
    }

    /// μ₁, defined for t = 2 and t = 3.
    pub fn mu1(&self) -> Option<i64> {
        let (c, b) = (self.c, &self.b);
        match self.t {
            2 => Some(2 - self.a1(c + 1) + 2 * b[0] + b[1]),
            3 => Some(3 - self.a1(c + 1) - self.a1(c + 2) + 2 * b[0] + b[1] + b[2]),
            _ => None,
        }
    }
}

/// Numeric hypotheses of the wildness theorem and its boundary variants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub dim_at_least_two: bool,
    pub main_inequality: bool,
    /// a_{c+i} ≥ b_i for 1 ≤ i ≤ t−1 (strict when c = 1).
    pub a_c_plus_i_vs_b: bool,
    /// t = 3 with a_{c+1} ≤ 1+b_1: a_{c+2} > b_1 and a_c = a_{c+1}. Vacuous otherwise.
    pub t3_side: bool,
    /// t ≥ 4 with a_{c+1} ≤ 1+b_1: a_{c+3} > b_1. Vacuous otherwise.
    pub t4_side: bool,
    /// t = 2 and a_{c+1} = 1 + 2b_1 − b_2.
    pub t2_boundary_equation: bool,
    pub alpha: Option<usize>,
    /// 2α ≤ n − 2, required only when a_{c+1} = 1 + b_1.
    pub t2_alpha_condition: bool,
    /// t = 3, a_c > a_{c+1} = b_1+1, a_{c+2} > b_1, b_2 − 1 ≤ b_3.
    pub t3_boundary: bool,
    /// a_{t+c−1} > b_1 and b_{t−1} − b_t ≤ max{0, t−3}.
    pub a_greater_b: bool,
    pub verdict: TheoremVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremVerdict {
    MainTheoremApplies,
    T2Boundary,
    T3Boundary,
    NoTheoremApplies,
}

impl std::fmt::Display for TheoremVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TheoremVerdict::MainTheoremApplies => "wildness theorem applies",
            TheoremVerdict::T2Boundary => "t=2 boundary case",
            TheoremVerdict::T3Boundary => "t=3 boundary case",
            TheoremVerdict::NoTheoremApplies => "no theorem applies",
        })
    }
}

pub fn hypothesis_check(dm: &DegreeMatrix, n: usize) -> HypothesisReport {
    let (t, c) = (dm.t, dm.c);
    let b1 = dm.b[0];
    let dim_at_least_two = n >= c + 2;
    let main_inequality = t >= 2 && dm.tail_sum() > 1 + dm.b[..t - 1].iter().sum::<i64>() + b1 - dm.b[t - 1];
    let a_c_plus_i_vs_b = (1..t).all(|i| if c == 1 { dm.a1(c + i) > dm.b1(i) } else { dm.a1(c + i) >= dm.b1(i) });
    let low = t >= 2 && dm.a1(c + 1) <= 1 + b1;
    let t3_side = !(t == 3 && low) || (dm.a1(c + 2) > b1 && dm.a1(c) == dm.a1(c + 1));
    let t4_side = !(t >= 4 && low) || dm.a1(c + 3) > b1;
    let t2_boundary_equation = t == 2 && dm.a1(c + 1) == 1 + 2 * b1 - dm.b[1];
    let alpha = (t == 2).then(|| (1..=c + 1).filter(|&i| dm.a1(i) == dm.a1(c + 1)).count());
    let t2_alpha_condition = match alpha {
        Some(al) if dm.a1(c + 1) == 1 + b1 => 2 * al + 2 <= n,
        Some(_) => true,
        None => false,
    };
    let t3_boundary = t == 3
        && dm.a1(c) > dm.a1(c + 1)
        && dm.a1(c + 1) == b1 + 1
        && dm.a1(c + 2) > b1
        && dm.b[1] - 1 <= dm.b[2];
    let a_greater_b = t >= 2 && dm.a[t + c - 2] > b1 && dm.b[t - 2] - dm.b[t - 1] <= 0.max(t as i64 - 3);
    let base = dim_at_least_two && a_c_plus_i_vs_b;
    let verdict = if base && main_inequality && t3_side && t4_side {
        TheoremVerdict::MainTheoremApplies
    } else if base && t2_boundary_equation && t2_alpha_condition {
        TheoremVerdict::T2Boundary
    } else if base && t3_boundary {
        TheoremVerdict::T3Boundary
    } else {
        TheoremVerdict::NoTheoremApplies
    };
    HypothesisReport {
        dim_at_least_two,
        main_inequality,
        a_c_plus_i_vs_b,
        t3_side,
        t4_side,
        t2_boundary_equation,
        alpha,
        t2_alpha_condition,
        t3_boundary,
        a_greater_b,
        verdict,
    }
}

/// Closed-form invariants of a linear model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub degree: u64,
    /// ρ_1, …, ρ_c.
    pub rho: Vec<u64>,
    pub genus: Option<u64>,
    pub ell: i64,
    pub mu: i64,
    pub mu1: Option<i64>,
}

/// deg X = C(t+c−1, c) for a linear model.
pub fn linear_degree(t: usize, c: usize) -> u64 {
    binom((t + c - 1) as i64, c as i64)
}

/// ρ_i = C(c+t−1, i+t−1)·C(i+t−2, t−1).
pub fn betti_rho(t: usize, c: usize, i: usize) -> u64 {
    binom((c + t - 1) as i64, (i + t - 1) as i64) * binom((i + t - 2) as i64, (t - 1) as i64)
}

/// Arithmetic genus Σ_{i=1}^{t−1} (i−1)·C(n+i−2, i) of a linear determinantal curve.
pub fn curve_genus(t: usize, n: usize) -> u64 {
    (1..t).map(|i| (i as u64 - 1) * binom((n + i) as i64 - 2, i as i64)).sum()
}

/// A standard determinantal model over the field `F`: degree data plus a seeded
/// random homogeneous matrix φ in n+1 variables.
#[derive(Clone, Debug)]
pub struct DeterminantalModel<F: Field> {
    pub dm: DegreeMatrix,
    pub n: usize,
    pub seed: u64,
    pub phi: HomogMatrix<F>,
}

impl<F: Field> DeterminantalModel<F> {
    pub fn new(dm: DegreeMatrix, n: usize, seed: u64) -> Result<Self> {
        if n < dm.c {
            return Err(Error::Precondition(format!("n = {n} is below c = {}", dm.c)));
        }
        let nv = n + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let src = GradedFreeModule::new(dm.a.clone());
        let tgt = GradedFreeModule::new(dm.b.clone());
        let mut phi = HomogMatrix::zero(nv, src, tgt);
        for i in 0..dm.t {
            for j in 0..dm.a.len() {
                let d = dm.a[j] - dm.b[i];
                if d >= 0 {
                    phi.set(i, j, random_form(nv, d, &mut rng))?;
                }
            }
        }
        Ok(DeterminantalModel { dm, n, seed, phi })
    }

    pub fn linear(t: usize, c: usize, n: usize, seed: u64) -> Result<Self> {
        Self::new(DegreeMatrix::linear(t, c), n, seed)
    }

    /// A model with a prescribed matrix (used for degenerate controls).
    pub fn with_phi(dm: DegreeMatrix, n: usize, phi: HomogMatrix<F>) -> Result<Self> {
        if phi.n_vars() != n + 1 || phi.rows() != dm.t || phi.cols() != dm.a.len() {
            return Err(Error::Shape("φ does not match the degree data".into()));
        }
        if phi.source().twists != dm.a || phi.target().twists != dm.b {
            return Err(Error::Shape("φ twists do not match the degree data".into()));
        }
        Ok(DeterminantalModel { dm, n, seed: 0, phi })
    }

    pub fn t(&self) -> usize {
        self.dm.t
    }

    pub fn c(&self) -> usize {
        self.dm.c
    }

    pub fn n_vars(&self) -> usize {
        self.n + 1
    }

    /// dim X = n − c.
    pub fn dim(&self) -> usize {
        self.n - self.dm.c
    }

    /// Twist s with K_X ≅ S_{c−1}M(s) in the linear case.
    pub fn canonical_twist(&self) -> i64 {
        (self.dm.t + self.dm.c) as i64 - self.n as i64 - 2
    }

    pub fn f_module(&self) -> GradedFreeModule {
        GradedFreeModule::new(self.dm.a.clone())
    }

    pub fn g_module(&self) -> GradedFreeModule {
        GradedFreeModule::new(self.dm.b.clone())
    }

    pub fn entry(&self, i: usize, j: usize) -> HomogPoly<F> {
        self.phi.entry(i, j)
    }

    /// The t×t minors on every column subset of size t, in lexicographic order of subsets.
    pub fn maximal_minors(&self) -> Result<Vec<(Vec<usize>, HomogPoly<F>)>> {
        let mut memo = MinorCache::default();
        crate::complexes::subsets(self.dm.a.len(), self.dm.t)
            .into_iter()
            .map(|s| {
                let m = self.minor(&s, &mut memo)?;
                Ok((s, m))
            })
            .collect()
    }

    /// Determinant of the t×t submatrix on columns `cols`.
    pub fn minor(&self, cols: &[usize], memo: &mut MinorCache<F>) -> Result<HomogPoly<F>> {
        let t = self.dm.t;
        if t > LAPLACE_MAX_T {
            return Err(Error::Precondition(format!("t = {t} exceeds the Laplace bound {LAPLACE_MAX_T}")));
        }
        if cols.len() != t {
            return Err(Error::Shape("minor needs t columns".into()));
        }
        self.laplace(0, cols, memo)
    }

    fn laplace(&self, row: usize, cols: &[usize], memo: &mut MinorCache<F>) -> Result<HomogPoly<F>> {
        let t = self.dm.t;
        let deg: i64 = cols.iter().map(|&j| self.dm.a[j]).sum::<i64>() - self.dm.b[row..].iter().sum::<i64>();
        if row == t {
            return Ok(HomogPoly::constant(self.n_vars(), F::one()));
        }
        if let Some(p) = memo.map.get(cols) {
            return Ok(p.clone());
        }
        let mut acc = HomogPoly::zero(self.n_vars(), deg);
        for (k, &j) in cols.iter().enumerate() {
            let e = self.phi.entry(row, j);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != j).collect();
            let sub = self.laplace(row + 1, &rest, memo)?;
            let mut term = poly_mul(&e, &sub)?;
            if k % 2 == 1 {
                term = term.neg();
            }
            acc = acc.add(&term)?;
        }
        memo.map.insert(cols.to_vec(), acc.clone());
        Ok(acc)
    }

    pub fn invariants(&self) -> Result<Invariants> {
        let (t, c) = (self.dm.t, self.dm.c);
        if !self.dm.is_linear() {
            return Err(Error::Precondition("degree and Betti formulas need the linear case".into()));
        }
        Ok(Invariants {
            degree: linear_degree(t, c),
            rho: (1..=c).map(|i| betti_rho(t, c, i)).collect(),
            genus: (self.dim() == 1).then(|| curve_genus(t, self.n)),
            ell: self.dm.ell(),
            mu: self.dm.mu(),
            mu1: self.dm.mu1(),
        })
    }

    /// Genus of a linear curve; refused for d ≠ 1.
    pub fn genus(&self) -> Result<u64> {
        if self.dim() != 1 || !self.dm.is_linear() {
            return Err(Error::Precondition("genus is only defined here for linear curves".into()));
        }
        Ok(curve_genus(self.dm.t, self.n))
    }

    /// The same model with x_n set to zero (one variable fewer).
    pub fn restrict_last_variable(&self) -> Self {
        DeterminantalModel { dm: self.dm.clone(), n: self.n - 1, seed: self.seed, phi: self.phi.restrict_last_variable() }
    }
}

/// Memo table for Laplace expansion keyed by column subset (rows are implied by size).
pub struct MinorCache<F: Field> {
    map: HashMap<Vec<usize>, HomogPoly<F>>,
}

impl<F: Field> Default for MinorCache<F> {
    fn default() -> Self {
        MinorCache { map: HashMap::new() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    type F = Fp<32003>;

    #[test]
    fn degree_matrix_validation() {
        assert!(DegreeMatrix::new(2, 2, vec![0, 0], vec![1, 1]).is_err());
        assert!(DegreeMatrix::new(2, 2, vec![0, 1], vec![1, 1, 1]).is_err());
        assert!(DegreeMatrix::new(2, 2, vec![0, 0], vec![2, 2, 1]).is_ok());
    }

    #[test]
    fn mu_and_mu1() {
        let lin = DegreeMatrix::linear(2, 2);
        assert_eq!(lin.mu(), 2);
        assert_eq!(lin.mu1(), Some(lin.mu() - 1));
        let t3 = DegreeMatrix::linear(3, 2);
        assert_eq!(t3.mu(), 2);
        assert_eq!(t3.mu1(), Some(1));
        assert_eq!(t3.ell(), 4);
        assert_eq!(DegreeMatrix::linear(4, 2).mu1(), None);
    }

    #[test]
    fn entry_degrees_follow_the_grid() {
        let dm = DegreeMatrix::new(2, 2, vec![0, 0], vec![2, 2, 1]).unwrap();
        let m = DeterminantalModel::<F>::new(dm, 4, 3).unwrap();
        for i in 0..2 {
            assert_eq!(m.entry(i, 0).degree(), 2);
            assert_eq!(m.entry(i, 2).degree(), 1);
        }
        let again = DeterminantalModel::<F>::new(m.dm.clone(), 4, 3).unwrap();
        assert_eq!(again.phi, m.phi);
    }

    #[test]
    fn negative_slots_are_zero() {
        let dm = DegreeMatrix::new(2, 1, vec![2, 0], vec![1, 1]).unwrap();
        let m = DeterminantalModel::<F>::new(dm, 2, 1).unwrap();
        assert!(m.entry(0, 0).is_zero());
        assert!(!m.entry(1, 0).is_zero());
    }

    #[test]
    fn minors_of_linear_2x3() {
        let m = DeterminantalModel::<F>::linear(2, 2, 4, 1).unwrap();
        let minors = m.maximal_minors().unwrap();
        assert_eq!(minors.len(), 3);
        assert!(minors.iter().all(|(_, f)| f.degree() == 2 && !f.is_zero()));
    }

    #[test]
    fn minors_for_t1_are_entries() {
        let m = DeterminantalModel::<F>::linear(1, 3, 3, 5).unwrap();
        let minors = m.maximal_minors().unwrap();
        assert_eq!(minors.len(), 3);
        for (s, f) in minors {
            assert_eq!(f, m.entry(0, s[0]));
        }
    }

    #[test]
    fn repeated_columns_kill_minors() {
        let mut m = DeterminantalModel::<F>::linear(2, 2, 3, 2).unwrap();
        for i in 0..2 {
            let e = m.phi.entry(i, 0);
            m.phi.set(i, 1, e).unwrap();
        }
        let minors = m.maximal_minors().unwrap();
        assert!(minors[0].1.is_zero());
        assert!(!minors[1].1.is_zero());
    }

    #[test]
    fn invariants_of_cubic_scroll() {
        let m = DeterminantalModel::<F>::linear(2, 2, 4, 1).unwrap();
        let inv = m.invariants().unwrap();
        assert_eq!(inv.degree, 3);
        assert_eq!(inv.rho, vec![3, 2]);
        assert!(m.genus().is_err());
    }

    #[test]
    fn genus_values() {
        assert_eq!(curve_genus(3, 3), 3);
        for n in 2..8 {
            assert_eq!(curve_genus(2, n), 0);
        }
        let m = DeterminantalModel::<F>::linear(3, 2, 3, 1).unwrap();
        assert_eq!(m.genus().unwrap(), 3);
    }

    #[test]
    fn hypothesis_examples() {
        let r = hypothesis_check(&DegreeMatrix::linear(3, 2), 4);
        assert!(r.main_inequality);
        assert_eq!(r.verdict, TheoremVerdict::MainTheoremApplies);
        let r = hypothesis_check(&DegreeMatrix::linear(2, 2), 4);
        assert!(!r.main_inequality);
        assert!(r.t2_boundary_equation);
        assert_eq!(r.alpha, Some(3));
        assert!(!r.t2_alpha_condition);
        assert_eq!(r.verdict, TheoremVerdict::NoTheoremApplies);
        let dm = DegreeMatrix::new(2, 2, vec![0, 0], vec![3, 3, 3]).unwrap();
        assert!(hypothesis_check(&dm, 4).main_inequality);
    }
}
