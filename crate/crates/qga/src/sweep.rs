//! Parameter sweeps over two-generator tuples, grouped by decomposition.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use qga_core::families::{two_gen_decompose, validate_p_good};
use qga_core::{TauClass, TwoGenParams, WeddDecomp};

use crate::spec::parse_list;
use crate::CliError;

/// Sweeps beyond this many points are refused as unbounded.
pub const MAX_POINTS: usize = 100_000;

/// A finite set of integers: `4`, `1,3,5` or the inclusive range `0..3`
/// (empty when the upper end is below the lower one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSet(pub Vec<u32>);

impl IntSet {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        if let Some((lo, hi)) = s.split_once("..") {
            let bound = |x: &str, what: &str| {
                x.trim().parse::<u32>().map_err(|_| {
                    CliError::Spec(format!("range {s:?}: {what} end must be a finite integer"))
                })
            };
            let (lo, hi) = (
                bound(lo, "lower")?,
                bound(hi.trim_start_matches('='), "upper")?,
            );
            if hi.saturating_sub(lo) as usize > MAX_POINTS {
                return Err(CliError::Spec(format!(
                    "range {s:?} is unbounded for a sweep"
                )));
            }
            return Ok(Self((lo..=hi).collect()));
        }
        parse_list(s).map(Self)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Grid {
    pub p: Vec<u64>,
    pub gamma: Vec<u32>,
    /// `None` ties the coordinate to `γ`.
    pub alpha: Option<Vec<u32>>,
    pub beta: Option<Vec<u32>>,
    pub sigma: Option<Vec<u32>>,
    /// `None` means `0..=γ`.
    pub rho: Option<Vec<u32>>,
}

impl Grid {
    /// Valid tuples of the grid in lexicographic order, plus the number of
    /// grid points that are not valid tuples.
    pub fn points(&self) -> Result<(Vec<TwoGenParams>, usize), CliError> {
        let mut out = Vec::new();
        let mut skipped = 0;
        let or_gamma = |v: &Option<Vec<u32>>, g: u32| v.clone().unwrap_or_else(|| vec![g]);
        for &p in &self.p {
            for &g in &self.gamma {
                for a in or_gamma(&self.alpha, g) {
                    for b in or_gamma(&self.beta, g) {
                        let rhos = self.rho.clone().unwrap_or_else(|| (0..=g).collect());
                        for &r in &rhos {
                            for s in or_gamma(&self.sigma, g) {
                                match TwoGenParams::new(p, a, b, g, r, s) {
                                    Ok(t) => out.push(t),
                                    Err(_) => skipped += 1,
                                }
                                if out.len() + skipped > MAX_POINTS {
                                    return Err(CliError::Spec(format!(
                                        "grid has more than {MAX_POINTS} points"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        if let Some(&p) = self
            .p
            .iter()
            .find(|&&p| TwoGenParams::new(p, 1, 1, 1, 0, 0).is_err())
        {
            return Err(CliError::Spec(format!("{p} is not an odd prime")));
        }
        Ok((out, skipped))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: u64,
    pub tuple: String,
    pub tau: String,
    pub order: u64,
    pub fingerprint: String,
    /// Rows with equal decompositions share a class index (1-based, in
    /// order of first appearance).
    pub class: usize,
    pub decomposition: WeddDecomp,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    pub skipped: usize,
    pub classes: usize,
}

pub fn sweep(grid: &Grid) -> Result<SweepTable, CliError> {
    let (points, skipped) = grid.points()?;
    let decomps: Vec<WeddDecomp> = points
        .par_iter()
        .map(|t| two_gen_decompose(t).map_err(CliError::spec))
        .collect::<Result<_, _>>()?;
    let mut seen: Vec<&WeddDecomp> = Vec::new();
    let mut rows = Vec::with_capacity(points.len());
    for (t, d) in points.iter().zip(&decomps) {
        let class = match seen.iter().position(|s| *s == d) {
            Some(i) => i + 1,
            None => {
                seen.push(d);
                seen.len()
            }
        };
        rows.push(SweepRow {
            p: t.p,
            tuple: t.to_string(),
            tau: match validate_p_good(t) {
                TauClass::Invalid => "-".to_string(),
                c => c.to_string(),
            },
            order: t.order(),
            fingerprint: format!("{:016x}", d.fingerprint()),
            class,
            decomposition: d.clone(),
        });
    }
    Ok(SweepTable {
        classes: seen.len(),
        rows,
        skipped,
    })
}

pub fn render_text(t: &SweepTable) -> String {
    let mut out = String::new();
    for r in &t.rows {
        out.push_str(&format!(
            "p={} {:<14} {:<8} class {:<3} {}  {}\n",
            r.p, r.tuple, r.tau, r.class, r.fingerprint, r.decomposition
        ));
    }
    out.push_str(&format!(
        "{} tuples, {} distinct decompositions, {} grid points skipped\n",
        t.rows.len(),
        t.classes,
        t.skipped
    ));
    out
}
