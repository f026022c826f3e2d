//! Versioned JSON envelopes and grid scans.

use std::io::Write;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extengine::L21;
use crate::field::Field;
use crate::formulas::{self, big_to_json};
use crate::model::{DegreeMatrix, DeterminantalModel};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct ModelDescriptor {
    pub t: usize,
    pub c: usize,
    pub n: Option<usize>,
    pub p: u64,
    pub seed: u64,
    pub b: Vec<i64>,
    pub a: Vec<i64>,
}

impl ModelDescriptor {
    pub fn linear(t: usize, c: usize, n: Option<usize>, p: u64, seed: u64) -> Self {
        let dm = DegreeMatrix::linear(t, c);
        ModelDescriptor { t, c, n, p, seed, b: dm.b, a: dm.a }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub model: Option<ModelDescriptor>,
    pub results: serde_json::Value,
    pub warnings: Vec<String>,
}

impl ReportEnvelope {
    pub fn new(command: Vec<String>, model: Option<ModelDescriptor>, results: serde_json::Value) -> Self {
        ReportEnvelope { schema_version: SCHEMA_VERSION, command, model, results, warnings: Vec::new() }
    }

    pub fn with_warnings(mut self, warnings: Vec<String>) -> Self {
        self.warnings = warnings;
        self
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }
}

/// Whether the Ext oracle ran for a scan row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleStatus {
    NotRequested,
    Computed,
    /// Skipped by the size cap.
    FormulaOnly,
    /// The oracle has no meaning here (t < 2, or too few variables for the
    /// resolution it needs).
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub t: usize,
    pub c: usize,
    pub d: usize,
    pub n: usize,
    /// The χ bound at ν = 0, −1, −2 when t, c, d ≥ 2.
    #[serde(serialize_with = "ser_bounds")]
    pub chi_bound: Option<[BigInt; 3]>,
    pub criterion: Option<bool>,
    pub oracle_chi: Option<[i64; 3]>,
    pub ext1: Option<usize>,
    pub oracle: OracleStatus,
    pub verdict: formulas::Classification,
    pub seed: u64,
    pub runtime_ms: u64,
}

fn ser_bounds<S: serde::Serializer>(v: &Option<[BigInt; 3]>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => b.iter().map(big_to_json).collect::<Vec<_>>().serialize(s),
        None => s.serialize_none(),
    }
}

pub const SCAN_CSV_HEADER: &str = "t,c,d,n,chi0,chi-1,chi-2,criterion,ext1,verdict,seed";

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

impl ScanRow {
    pub fn csv(&self) -> String {
        let chi = |k: usize| self.chi_bound.as_ref().map(|b| b[k].to_string()).unwrap_or_default();
        let ext1 = match self.oracle {
            OracleStatus::FormulaOnly => "formula-only".to_string(),
            _ => opt(&self.ext1),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.t,
            self.c,
            self.d,
            self.n,
            chi(0),
            chi(1),
            chi(2),
            opt(&self.criterion),
            ext1,
            self.verdict,
            self.seed
        )
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub oracle: bool,
    /// Largest n for which the oracle runs.
    pub max_n: usize,
    /// Largest t + c for which the oracle runs.
    pub max_tc: usize,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { oracle: false, max_n: 21, max_tc: 7, seed: 1, jobs: 1 }
    }
}

/// Grid points in emission order: t outermost, then c, then d.
pub fn scan_grid(ts: &[usize], cs: &[usize], ds: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for &t in ts {
        for &c in cs {
            for &d in ds {
                out.push((t, c, d));
            }
        }
    }
    out
}

pub fn scan_row<F: Field>(t: usize, c: usize, d: usize, opts: &ScanOptions) -> Result<ScanRow> {
    let start = Instant::now();
    if t < 1 || c < 1 || d < 1 {
        return Err(Error::Precondition(format!("scan needs t, c, d ≥ 1, got ({t},{c},{d})")));
    }
    let n = c + d;
    let (chi_bound, criterion) = if t >= 2 && c >= 2 && d >= 2 {
        let b = formulas::chi_bounds(t, c, d)?;
        (Some(b.values), Some(formulas::wild_criterion(t, c, d)))
    } else {
        (None, None)
    };
    let verdict = formulas::verdict(t, c, n)?.classification;
    let mut row = ScanRow {
        t,
        c,
        d,
        n,
        chi_bound,
        criterion,
        oracle_chi: None,
        ext1: None,
        oracle: OracleStatus::NotRequested,
        verdict,
        seed: opts.seed,
        runtime_ms: 0,
    };
    if opts.oracle {
        if n > opts.max_n || t + c > opts.max_tc {
            row.oracle = OracleStatus::FormulaOnly;
        } else {
            let model = DeterminantalModel::<F>::linear(t, c, n, opts.seed)?;
            match L21::new(&model) {
                Ok(l21) => {
                    row.ext1 = Some(l21.ext(1, 0)?);
                    if d >= 2 {
                        row.oracle_chi = Some([l21.chi(0)?, l21.chi(-1)?, l21.chi(-2)?]);
                    }
                    row.oracle = OracleStatus::Computed;
                }
                Err(Error::Precondition(_)) => row.oracle = OracleStatus::NotApplicable,
                Err(e) => return Err(e),
            }
        }
    }
    row.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(row)
}

/// Compute the rows on `opts.jobs` workers and hand them to `emit` in grid
/// order, chunk by chunk, so that an interrupted scan has flushed a prefix.
pub fn scan<F: Field, E>(grid: &[(usize, usize, usize)], opts: &ScanOptions, mut emit: E) -> Result<()>
where
    E: FnMut(&ScanRow) -> std::io::Result<()>,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("worker pool: {e}")))?;
    let chunk = 4 * opts.jobs.max(1);
    for part in grid.chunks(chunk) {
        let rows: Vec<Result<ScanRow>> =
            pool.install(|| part.par_iter().map(|&(t, c, d)| scan_row::<F>(t, c, d, opts)).collect());
        for row in rows {
            emit(&row?).map_err(|e| Error::Precondition(format!("write failed: {e}")))?;
        }
    }
    Ok(())
}

/// CSV scan into a writer, flushing after every row.
pub fn scan_csv<F: Field, W: Write>(grid: &[(usize, usize, usize)], opts: &ScanOptions, out: &mut W) -> Result<()> {
    writeln!(out, "{SCAN_CSV_HEADER}").map_err(|e| Error::Precondition(format!("write failed: {e}")))?;
    scan::<F, _>(grid, opts, |row| {
        writeln!(out, "{}", row.csv())?;
        out.flush()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Gf32003;

    #[test]
    fn empty_grid_is_header_only() {
        let mut out = Vec::new();
        scan_csv::<Gf32003, _>(&[], &ScanOptions::default(), &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), format!("{SCAN_CSV_HEADER}\n"));
    }

    #[test]
    fn csv_row_for_the_cubic_scroll() {
        let row = scan_row::<Gf32003>(2, 2, 2, &ScanOptions::default()).unwrap();
        assert_eq!(row.csv(), "2,2,2,4,-1,-2,0,true,,finite,1");
    }

    #[test]
    fn order_does_not_depend_on_jobs() {
        let grid = scan_grid(&[2, 3], &[1, 2, 3], &[1, 2, 3, 4]);
        let run = |jobs| {
            let mut out = Vec::new();
            let opts = ScanOptions { jobs, oracle: true, max_n: 6, ..Default::default() };
            scan_csv::<Gf32003, _>(&grid, &opts, &mut out).unwrap();
            out
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn oracle_rows() {
        let opts = ScanOptions { oracle: true, ..Default::default() };
        let row = scan_row::<Gf32003>(2, 3, 2, &opts).unwrap();
        assert_eq!(row.ext1, Some(2));
        assert_eq!(row.oracle_chi, Some([-2, -3, 0]));
        let far = scan_row::<Gf32003>(2, 3, 40, &opts).unwrap();
        assert_eq!(far.oracle, OracleStatus::FormulaOnly);
        assert_eq!(far.csv().split(',').nth(8), Some("formula-only"));
    }
}
