use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use super::dseries::{d_equation, DFamily};
use crate::delta::LiftSpec;
use crate::error::{Error, Result};
use crate::multiheight::{multiheight_colon, EngineConfig, HeightSeq};
use crate::threshold::{height_seq_to_ppt, PptRational};

/// A grid over type-D lifts at `p = 2`.
#[derive(Debug, Clone)]
pub struct ScanRequest {
    pub families: Vec<DFamily>,
    pub n_min: u32,
    pub n_max: u32,
    /// Restrict `r`; `None` means every `0 ≤ r < n`.
    pub r_values: Option<Vec<u32>>,
    pub g_set: Vec<String>,
    pub cfg: EngineConfig,
    /// Worker threads; `0` lets the pool decide.
    pub jobs: usize,
}

impl ScanRequest {
    pub fn new(families: Vec<DFamily>, n_max: u32, g_set: Vec<String>) -> Self {
        ScanRequest { families, n_min: 2, n_max, r_values: None, g_set, cfg: EngineConfig::default(), jobs: 0 }
    }

    fn grid(&self) -> Vec<(DFamily, u32, u32, String)> {
        let mut out = Vec::new();
        for &family in &self.families {
            for n in self.n_min.max(2)..=self.n_max {
                let rs: Vec<u32> = match &self.r_values {
                    Some(rs) => rs.iter().copied().filter(|&r| r < n).collect(),
                    None => (0..n).collect(),
                };
                for r in rs {
                    for g in &self.g_set {
                        out.push((family, n, r, g.clone()));
                    }
                }
            }
        }
        out
    }
}

/// One computed lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanCell {
    pub family: DFamily,
    pub n: u32,
    pub r: u32,
    pub g: String,
    pub outcome: std::result::Result<(HeightSeq, PptRational), String>,
    pub pipeline: &'static str,
    pub runtime_ms: u128,
}

impl ScanCell {
    pub fn label(&self) -> String {
        format!("D_{}^{} G={}", self.family.index(self.n), self.r, self.g)
    }

    pub fn certified(&self) -> bool {
        matches!(&self.outcome, Ok((s, _)) if s.certified())
    }
}

/// A distinct threshold and the first lift (in grid order) realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanValue {
    pub ppt: PptRational,
    pub witness: String,
    pub count: usize,
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub cells: Vec<ScanCell>,
    /// Certified values, ascending.
    pub values: Vec<ScanValue>,
}

impl ScanReport {
    /// For each value, the distance to the next larger one.
    pub fn gaps_above(&self) -> Vec<(PptRational, Option<PptRational>)> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let gap = self.values.get(i + 1).map(|w| PptRational::from_ratio(w.ppt.as_ratio() - v.ppt.as_ratio()));
                (v.ppt.clone(), gap)
            })
            .collect()
    }

    /// How many distinct values lie strictly below `1/m`.
    pub fn count_below(&self, m: u64) -> usize {
        let bound = PptRational::new(1, m as i64).expect("positive");
        self.values.iter().filter(|v| v.ppt < bound).count()
    }

    pub fn failures(&self) -> Vec<&ScanCell> {
        self.cells.iter().filter(|c| !c.certified()).collect()
    }
}

fn run_cell(family: DFamily, n: u32, r: u32, g: String, cfg: &EngineConfig) -> ScanCell {
    let start = Instant::now();
    let outcome = LiftSpec::parse(2, &d_equation(family, n, r), &g)
        .and_then(|spec| multiheight_colon(&spec, cfg))
        .map(|rep| {
            let ppt = height_seq_to_ppt(&rep.seq, 2);
            (rep.seq, ppt)
        })
        .map_err(|e| e.to_string());
    ScanCell { family, n, r, g, outcome, pipeline: "colon", runtime_ms: start.elapsed().as_millis() }
}

/// Runs the engine over the grid in parallel. Cells come back in grid
/// order whatever the thread count; failed cells are kept, not fatal.
pub fn sigma_scan(req: &ScanRequest) -> Result<ScanReport> {
    let grid = req.grid();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(req.jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let cells: Vec<ScanCell> =
        pool.install(|| grid.into_par_iter().map(|(f, n, r, g)| run_cell(f, n, r, g, &req.cfg)).collect());
    let mut by_value: BTreeMap<PptRational, ScanValue> = BTreeMap::new();
    for cell in &cells {
        if let (true, Ok((_, ppt))) = (cell.certified(), &cell.outcome) {
            by_value
                .entry(ppt.clone())
                .or_insert_with(|| ScanValue { ppt: ppt.clone(), witness: cell.label(), count: 0 })
                .count += 1;
        }
    }
    Ok(ScanReport { cells, values: by_value.into_values().collect() })
}
