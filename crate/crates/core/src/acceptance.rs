//! The acceptance suite: one check per criterion, each with its own oracle.
//! Shared by the `acceptance` test target and `detrep verify`.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::Serialize;

use crate::complexes::{acyclicity_vars, build_c, build_d, d_ranks, sampled_exactness, verify_d_squared, GradedComplex};
use crate::error::{Error, Result};
use crate::extengine::{compare_chi, ext_l2_l1, hom_mdual_m, report_l2_l1, report_m_mdual, L21};
use crate::extensions::{
    a_module_classes, build_extension, cocycle_space, extend_ulrich, presentation_of, ulrich_check, AModuleTest, Which,
};
use crate::field::Field;
use crate::formulas::{self, binomial, fgh, fgh_sum, Classification};
use crate::model::{betti_rho, linear_degree, DegreeMatrix, DeterminantalModel};
use crate::poly::HomogPoly;
use crate::table;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    /// Failures of non-gating checks do not fail the suite.
    pub gating: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl CheckResult {
    pub fn line(&self) -> String {
        let tag = match (self.passed, self.gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (non-gating)",
        };
        format!("{tag} [{:>2}] {}: {} ({} ms)", self.id, self.name, self.detail, self.elapsed_ms)
    }
}

type Outcome = Result<(bool, String)>;

pub struct Criterion<F: Field> {
    pub id: u32,
    pub name: &'static str,
    pub gating: bool,
    run: fn(u64) -> Outcome,
    _f: std::marker::PhantomData<F>,
}

impl<F: Field> Criterion<F> {
    pub fn run(&self, seed: u64) -> CheckResult {
        let start = Instant::now();
        let (passed, detail) = match (self.run)(seed) {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        CheckResult {
            id: self.id,
            name: self.name,
            passed,
            gating: self.gating,
            detail,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }
}

fn criterion<F: Field>(id: u32, name: &'static str, gating: bool, run: fn(u64) -> Outcome) -> Criterion<F> {
    Criterion { id, name, gating, run, _f: std::marker::PhantomData }
}

pub fn criteria<F: Field>() -> Vec<Criterion<F>> {
    vec![
        criterion(1, "fgh sum form equals closed form", true, c1_fgh),
        criterion(2, "t=2 bound equals c+1-cd", true, c2_t2),
        criterion(3, "table reproduction", true, c3_table),
        criterion(4, "distinguished chi values", true, c4_values),
        criterion(5, "oracle chi equals bound in the equality regime", true, c5_oracle::<F>),
        criterion(6, "quartic scroll Ext(L2,L1)", true, c6_quartic::<F>),
        criterion(7, "hypersurface Ext^1(L2,L1)", true, c7_c1::<F>),
        criterion(8, "curve chi and genus", true, c8_curves),
        criterion(9, "complexes: d^2 = 0 and exactness", true, c9_complexes::<F>),
        criterion(10, "degree and Betti numbers of D_0", true, c10_degree::<F>),
        criterion(11, "Ext^1(M, M^v(t-mu)) on linear models", true, c11_mmdual::<F>),
        criterion(12, "Ulrich extensions on the cubic scroll", true, c12_extensions::<F>),
        criterion(13, "verdict table", true, c13_verdicts),
        criterion(14, "stretch: Ext^1(L2,L1) = 0 at (3,3,14)", false, c14_stretch::<F>),
    ]
}

/// Run the selected criteria (all when `ids` is empty).
pub fn run_suite<F: Field>(ids: &[u32], seed: u64, mut on_result: impl FnMut(&CheckResult)) -> Vec<CheckResult> {
    criteria::<F>()
        .into_iter()
        .filter(|c| ids.is_empty() || ids.contains(&c.id))
        .map(|c| {
            let r = c.run(seed);
            on_result(&r);
            r
        })
        .collect()
}

pub fn suite_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed || !r.gating)
}

fn elapsed_note(start: Instant, budget: Duration) -> Option<String> {
    let e = start.elapsed();
    (e > budget).then(|| format!("; over budget ({e:?} > {budget:?})"))
}

fn c1_fgh(_: u64) -> Outcome {
    let mut bad = Vec::new();
    for t in 2..=10 {
        for c in 2..=10 {
            if !fgh(t, c)?.agree() {
                bad.push((t, c));
            }
        }
    }
    Ok((bad.is_empty(), format!("81 pairs, disagreements {bad:?}")))
}

fn c2_t2(_: u64) -> Outcome {
    let mut bad = Vec::new();
    for c in 2..=20usize {
        for d in 2..=20usize {
            let want = BigInt::from(c as i64 + 1 - (c * d) as i64);
            if formulas::chi_bound(2, c, d, 0)? != want {
                bad.push((c, d));
            }
        }
    }
    Ok((bad.is_empty(), format!("361 pairs, disagreements {bad:?}")))
}

fn c3_table(_: u64) -> Outcome {
    let checks = table::check_table();
    let diff = table::table_diff(&checks);
    let boundaries = checks.iter().filter(|r| r.boundary_fails == Some(true)).count();
    Ok((diff.is_empty(), format!("{} rows, {} boundary checks, diff {:?}", checks.len(), boundaries, diff)))
}

fn c4_values(_: u64) -> Outcome {
    let got: Vec<BigInt> =
        [(2, 2, 2), (2, 3, 2), (3, 2, 16)].iter().map(|&(t, c, d)| formulas::chi_bound(t, c, d, 0)).collect::<Result<_>>()?;
    let want: Vec<BigInt> = [-1, -2, -2].into_iter().map(BigInt::from).collect();
    Ok((got == want, format!("chi(0) at (2,2,2),(2,3,2),(3,2,16) = {got:?}")))
}

fn c5_oracle<F: Field>(seed: u64) -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (t, c, n) in [(2, 2, 4), (2, 3, 5), (3, 2, 4), (3, 2, 5), (3, 3, 5)] {
        let mut values = Vec::new();
        for s in seed..seed + 3 {
            let cmp = compare_chi::<F>(t, c, n, s, 1)?;
            ok &= cmp.exact_regime && cmp.oracle == cmp.bound;
            values.push(cmp.oracle);
        }
        let all_same = values.windows(2).all(|w| w[0] == w[1]);
        ok &= all_same;
        parts.push(format!("({t},{c},{n}) {:?}", values[0]));
    }
    let mut detail = format!("3 seeds each: {}", parts.join(", "));
    if let Some(n) = elapsed_note(start, Duration::from_secs(300)) {
        ok = false;
        detail.push_str(&n);
    }
    Ok((ok, detail))
}

fn c6_quartic<F: Field>(seed: u64) -> Outcome {
    let rep = report_l2_l1::<F>(2, 3, 5, &[0, 1, 2], &[0], seed, 3)?;
    let dims: Vec<usize> = rep.entries.iter().map(|e| e.dim).collect();
    let hom = crate::extengine::hom_l1_l2(&DeterminantalModel::<F>::linear(2, 3, 5, seed)?)?;
    Ok((dims == [0, 2, 0], format!("(ext0, ext1, ext2) = {dims:?}, Hom(L1,L2)_0 = {hom}")))
}

fn c7_c1<F: Field>(seed: u64) -> Outcome {
    let a = ext_l2_l1(&DeterminantalModel::<F>::linear(3, 1, 3, seed)?, 1, 0)?;
    let b = ext_l2_l1(&DeterminantalModel::<F>::linear(2, 1, 6, seed)?, 1, 0)?;
    // C(3,2)·4 − 9 and n − 3, written out independently of ext1_c1
    let ok = a == 3 && b == 3 && formulas::ext1_c1(3, 3)? == 3 && formulas::ext1_c1(2, 6)? == 3;
    Ok((ok, format!("(t,n)=(3,3): {a}; (2,6): {b}")))
}

fn c8_curves(_: u64) -> Outcome {
    let cc = formulas::curve_chi(3, 3)?;
    let genus = formulas::curve_genus(3, 3);
    let mut ok = cc.chi == BigInt::from(-2) && cc.bound == BigInt::from(-2) && genus == BigInt::from(3);
    let mut bad = Vec::new();
    for t in 3..=12 {
        for n in 3..=12 {
            let c = formulas::curve_chi(t, n)?;
            if c.bound > BigInt::from(-2) || c.chi > c.bound || c.chi != formulas::curve_chi_riemann_roch(t, n) {
                bad.push((t, n));
            }
        }
    }
    ok &= bad.is_empty();
    Ok((ok, format!("curve_chi(3,3) = ({}, {}), p_a = {genus}; grid violations {bad:?}", cc.chi, cc.bound)))
}

/// Perturb one entry of the differential leaving position 1 so that its
/// composite with the next differential cannot vanish.
pub fn mutate_one_entry<F: Field>(cx: &GradedComplex<F>) -> Option<GradedComplex<F>> {
    let d2 = cx.differential(2)?;
    let (q, _) = (0..d2.cols()).find_map(|r| d2.column(r).first().map(|(q, f)| (*q, f.clone())))?;
    let d1 = cx.differential(1)?;
    let p = 0;
    let deg = d1.slot_degree(p, q);
    if deg < 0 {
        return None;
    }
    let nv = cx.n_vars();
    let mut e = vec![0u16; nv];
    e[0] = deg as u16;
    let bump = HomogPoly::monomial(e, F::one());
    let mut out = cx.clone();
    out.differential_mut(1)?.add_to(p, q, &bump).ok()?;
    Some(out)
}

fn c9_complexes<F: Field>(seed: u64) -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut exact_checked = 0usize;
    let mut failures = Vec::new();
    let mut mutation_ok = true;
    for t in 1..=3usize {
        for c in 1..=3usize {
            for n in c + 1..=5 {
                let model = DeterminantalModel::<F>::linear(t, c, n, seed)?;
                let nu_max = (t + c + 2) as i64;
                let mut complexes: Vec<(GradedComplex<F>, bool)> = Vec::new();
                for i in -1..=c as i64 {
                    complexes.push((build_d(&model, i)?, true));
                }
                for i in 0..=2 * c {
                    // C_i is a resolution only for i ≥ c and enough variables
                    let exact = i >= c && model.n_vars() >= acyclicity_vars(t, c, i);
                    complexes.push((build_c(&model, i)?, exact));
                }
                for (cx, exact) in &complexes {
                    checked += 1;
                    if !verify_d_squared(cx) {
                        failures.push(format!("d^2 != 0 on {} at ({t},{c},{n})", cx.kind));
                    }
                    if *exact {
                        exact_checked += 1;
                        let r = sampled_exactness(cx, 0, nu_max);
                        if !r.is_clean() {
                            failures.push(format!("{} at ({t},{c},{n}): {:?}", cx.kind, r.failures));
                        }
                    }
                    if let Some(m) = mutate_one_entry(cx) {
                        mutation_ok &= !verify_d_squared(&m);
                    }
                }
            }
        }
    }
    let mut ok = failures.is_empty() && mutation_ok;
    let mut detail = format!(
        "{checked} complexes, {exact_checked} exactness checks, mutation detected: {mutation_ok}, failures {failures:?}"
    );
    if let Some(n) = elapsed_note(start, Duration::from_secs(600)) {
        ok = false;
        detail.push_str(&n);
    }
    Ok((ok, detail))
}

/// d-th forward difference of ν ↦ χ(D_0)_ν, far enough out to be polynomial.
fn degree_by_differences(cx: &GradedComplex<impl Field>, d: usize, nu0: i64) -> i64 {
    let mut vals: Vec<i64> = (0..=d as i64).map(|k| cx.euler_characteristic(nu0 + k)).collect();
    for _ in 0..d {
        vals = vals.windows(2).map(|w| w[1] - w[0]).collect();
    }
    vals[0]
}

fn c10_degree<F: Field>(seed: u64) -> Outcome {
    let mut bad = Vec::new();
    for t in 1..=4usize {
        for c in 1..=4usize {
            let n = c + 2;
            let model = DeterminantalModel::<F>::linear(t, c, n, seed)?;
            let d0 = build_d(&model, 0)?;
            let deg = degree_by_differences(&d0, n - c, (t + c + 2) as i64);
            let rho: Vec<u64> = std::iter::once(1).chain((1..=c).map(|i| betti_rho(t, c, i))).collect();
            let ranks: Vec<u64> = d0.ranks().into_iter().map(|r| r as u64).collect();
            let want = binomial((t + c - 1) as i64, c as i64);
            if BigInt::from(deg) != want || ranks != rho || ranks != d_ranks(t, c, 0) || linear_degree(t, c) as i64 != deg
            {
                bad.push(format!("({t},{c}): degree {deg}, ranks {ranks:?}, rho {rho:?}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("16 pairs (t,c <= 4), mismatches {bad:?}")))
}

fn c11_mmdual<F: Field>(seed: u64) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (t, c, n) in [(3usize, 2usize, 5usize), (4, 2, 6)] {
        let dm = DegreeMatrix::linear(t, c);
        let rep = report_m_mdual::<F>(&dm, n, &[0, 1], seed, 3)?;
        let hom = hom_mdual_m(&DeterminantalModel::<F>::new(dm, n, seed)?)?;
        let want = binomial((t + c - 1) as i64, (c + 1) as i64);
        let (e0, e1) = (rep.entries[0].dim, rep.entries[1].dim);
        ok &= BigInt::from(e1) == want && e0 == 0 && hom == 0 && rep.entries.iter().all(|e| e.matches != Some(false));
        parts.push(format!("({t},{c},{n}): ext1 = {e1} (C = {want}), hom = ({e0}, {hom})"));
    }
    // The same classes at presentation level, restricted to A-module extensions.
    let model = DeterminantalModel::<F>::linear(3, 2, 5, seed)?;
    let sub = presentation_of(&model, Which::Mdual(3 - model.dm.mu()))?;
    let quot = presentation_of(&model, Which::M)?;
    let space = cocycle_space(&quot, &sub)?;
    let a = a_module_classes(&space, &quot, &sub, &model)?;
    ok &= a.len() >= 4;
    parts.push(format!("(3,2,5) presentation-level classes: R {} / A {}", space.dim, a.len()));
    Ok((ok, parts.join("; ")))
}

fn c12_extensions<F: Field>(seed: u64) -> Outcome {
    let model = DeterminantalModel::<F>::linear(2, 2, 4, seed)?;
    let reg = 7;
    let (out, ext) = extend_ulrich(&model, 2, reg)?;
    let sheaf = ext_l2_l1(&model, 1, 0)?;
    let wide = ulrich_check(&ext, 3, (0, 7));
    let mut ok = out.ulrich.generators == 6
        && out.ulrich.expected_generators == 6
        && wide.additivity
        && wide.numerically_consistent
        && out.a_module == AModuleTest::Pass
        && !out.split
        && out.a_module_class_dim == sheaf;
    let refused = match extend_ulrich(&model, 3, reg) {
        Err(Error::NotEnoughClasses { requested: 2, available }) => available == out.a_module_class_dim,
        _ => false,
    };
    ok &= refused;
    // Control: a non-minimal L1 presentation that kills a generator.
    let sub = presentation_of(&model, Which::Mdual(1))?.with_constant_relation(0)?;
    let quot = presentation_of(&model, Which::Sym(2, 0))?;
    let space = cocycle_space(&quot, &sub)?;
    let zero = vec![F::zero(); space.coordinate_dim()];
    let ctl = ulrich_check(&build_extension(&space, &sub, &quot, &[zero])?, 3, (0, 7));
    let control_fails = !ctl.numerically_consistent && ctl.generators < ctl.expected_generators;
    ok &= control_fails;
    Ok((
        ok,
        format!(
            "rank 2: mu(E) = {}, additivity on [0,7] {}, I*E {:?}; classes R {} / A {} (sheaf {sheaf}); rank 3 refused {refused}; non-minimal control mu = {} < 6: {control_fails}",
            out.ulrich.generators,
            wide.additivity,
            out.a_module,
            out.cocycle_space_dim,
            out.a_module_class_dim,
            ctl.generators
        ),
    ))
}

/// Cases proved Ulrich-wild, encoded separately from `formulas::verdict`; the
/// χ bound is evaluated through the sum form of f, g, h.
fn expected_ulrich_wild(t: usize, c: usize, d: usize) -> Result<bool> {
    let n = c + d;
    let chi_sum = || -> Result<BigInt> {
        let s = fgh_sum(t, c)?;
        Ok(binomial(d as i64 - 1, 2) * s.h + (d as i64 - 2) * s.g + s.f)
    };
    Ok((d == 1 && t >= 3 && n >= 3)
        || (c == 1 && t >= 3 && n >= 3)
        || (c == 1 && t == 2 && n >= 6)
        || (t == 2 && c >= 2 && d >= 3)
        || (t == 2 && d == 2 && c >= 4)
        || (t == 3 && d >= 2 && n <= 12)
        || (t >= 2 && c >= 2 && d >= 2 && chi_sum()? <= BigInt::from(-3)))
}

fn c13_verdicts(_: u64) -> Outcome {
    let mut bad = Vec::new();
    for t in 1..=6usize {
        for c in 1..=6usize {
            for d in 1..=6usize {
                let v = formulas::verdict(t, c, c + d)?.classification;
                let finite = t == 1 || (t == 2 && d == 1) || (t, c, d) == (2, 2, 2);
                let tame = (t, c, d) == (2, 3, 2);
                let wrong = (v == Classification::Finite) != finite
                    || (v == Classification::Tame) != tame
                    || (!finite && !tame && expected_ulrich_wild(t, c, d)? && v != Classification::UlrichWild);
                if wrong {
                    bad.push(format!("({t},{c},{d}) -> {v}"));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("216 triples, mismatches {bad:?}")))
}

fn c14_stretch<F: Field>(seed: u64) -> Outcome {
    let model = DeterminantalModel::<F>::linear(3, 3, 14, seed)?;
    let l21 = L21::new(&model)?;
    let e1 = l21.ext(1, 0)?;
    Ok((e1 == 0, format!("dim Ext^1(L2,L1) = {e1}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Gf32003;

    #[test]
    fn mutation_breaks_d_squared() {
        let m = DeterminantalModel::<Gf32003>::linear(2, 2, 4, 1).unwrap();
        let cx = build_d(&m, 0).unwrap();
        assert!(verify_d_squared(&cx));
        assert!(!verify_d_squared(&mutate_one_entry(&cx).unwrap()));
    }

    #[test]
    fn cheap_criteria_pass() {
        let results = run_suite::<Gf32003>(&[1, 2, 3, 4, 8, 13], 1, |_| {});
        for r in &results {
            assert!(r.passed, "{}", r.line());
        }
    }
}
