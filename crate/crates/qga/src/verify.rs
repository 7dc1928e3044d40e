//! Formula-versus-oracle verification of one realized group.

use std::collections::BTreeMap;

use serde::Serialize;

use qga_core::decomp::decomp_equal;
use qga_core::oracle::{
    char_kernel, character_table_with_bound, field_degree, galois_classes, gvz_fast_table,
    is_central_type, is_gvz, is_nested_gvz, rational_decomposition_from_table,
    verify_pci_with_table, CharTable, CheckResult, GvzWitness, VerificationReport,
};
use qga_core::{Error, FiniteGroupRep, WeddDecomp};

use crate::corpus::CorpusEntry;
use crate::spec::GroupSpec;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest order handed to the Dixon solver.
    pub dixon: u64,
    /// Largest order on which the idempotent theorem is checked.
    pub pci: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            dixon: qga_core::oracle::DEFAULT_BOUND,
            pci: 729,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableMethod {
    Dixon,
    GvzFastPath,
}

/// A character table with how it was obtained.
pub struct OracleTable<'g> {
    pub table: CharTable<'g>,
    pub method: TableMethod,
    /// The fast-path table, when it exists alongside a Dixon table.
    pub fast: Option<Result<CharTable<'g>, Error>>,
}

/// Dixon within the bound; otherwise the fast path when the family
/// supplies witnesses.
pub fn oracle_table<'g>(
    g: &'g FiniteGroupRep,
    witness: Option<&GvzWitness<'g>>,
    bound: u64,
) -> Result<OracleTable<'g>, CliError> {
    if g.order() <= bound {
        let table = character_table_with_bound(g, bound).map_err(CliError::check)?;
        let fast = witness.map(|w| gvz_fast_table(g, w));
        return Ok(OracleTable {
            table,
            method: TableMethod::Dixon,
            fast,
        });
    }
    match witness {
        Some(w) => Ok(OracleTable {
            table: gvz_fast_table(g, w).map_err(CliError::check)?,
            method: TableMethod::GvzFastPath,
            fast: None,
        }),
        None => Err(CliError::spec(Error::BoundExceeded {
            order: g.order(),
            bound,
        })),
    }
}

/// Character-theoretic summary of one group.
#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    pub group: String,
    pub order: u64,
    pub method: TableMethod,
    pub classes: usize,
    /// Degree → number of irreducible characters of that degree.
    pub degrees: BTreeMap<u64, usize>,
    pub galois_classes: usize,
    pub gvz: bool,
    pub nested_gvz: bool,
    pub decomposition: WeddDecomp,
}

pub fn summarize(t: &OracleTable<'_>) -> Result<OracleSummary, CliError> {
    let table = &t.table;
    let g = table.group();
    let mut degrees = BTreeMap::new();
    for &d in table.degrees() {
        *degrees.entry(d).or_insert(0) += 1;
    }
    Ok(OracleSummary {
        group: g.label().to_string(),
        order: g.order(),
        method: t.method,
        classes: table.len(),
        degrees,
        galois_classes: galois_classes(table).len(),
        gvz: is_gvz(table).map_err(CliError::check)?,
        nested_gvz: is_nested_gvz(table).map_err(CliError::check)?,
        decomposition: rational_decomposition_from_table(table).map_err(CliError::check)?,
    })
}

fn describe<T: std::fmt::Display>(r: &Result<T, Error>) -> String {
    match r {
        Ok(x) => x.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Galois conjugacy versus equal kernels, over same-degree nonlinear pairs.
pub fn galois_kernel_check(table: &CharTable<'_>) -> CheckResult {
    let classes = galois_classes(table);
    let mut class_of = vec![0; table.len()];
    for (c, members) in classes.iter().enumerate() {
        members.iter().for_each(|&i| class_of[i] = c);
    }
    let kernels: Vec<_> = (0..table.len()).map(|i| char_kernel(table, i)).collect();
    let mut pairs = 0usize;
    let mut bad = Vec::new();
    for i in 0..table.len() {
        for j in i + 1..table.len() {
            if table.degree(i) == 1 || table.degree(i) != table.degree(j) {
                continue;
            }
            pairs += 1;
            if (class_of[i] == class_of[j]) != (kernels[i] == kernels[j]) {
                bad.push(format!("chi{i}/chi{j}"));
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{pairs} same-degree nonlinear pairs")
    } else {
        format!("violated by {}", bad.join(", "))
    };
    CheckResult::new("Galois conjugate iff equal kernel", bad.is_empty(), detail)
}

/// Runs every applicable check on one corpus entry.
pub fn verify_entry(entry: &CorpusEntry, bounds: Bounds) -> Result<VerificationReport, CliError> {
    let label = entry.spec.to_string();
    let family = entry.spec.family();
    let formula = family.map(|f| f.decompose()).transpose()?;
    let Some(g) = entry.spec.realize()? else {
        let mut report = VerificationReport::new(label);
        if let Some(d) = &formula {
            report.push(CheckResult::new(
                "dimension identity (formula)",
                d.check_dimension().is_ok(),
                format!("{d}; no presentation available, oracle not run"),
            ));
        }
        return Ok(report);
    };
    let mut report = VerificationReport::new(label);
    let witness = family.and_then(|f| f.witness(&g)).transpose()?;
    let data = family.and_then(|f| f.gvz_data()).transpose()?;
    if let (Some(w), Some(data)) = (&witness, &data) {
        let seen = w.data(&g);
        let ok = seen.as_ref() == Ok(data);
        report.push(CheckResult::new(
            "witness sections = family layer data",
            ok,
            match seen {
                Ok(_) if ok => format!("{} layers", data.layers().len()),
                Ok(s) => format!("realized {s:?}, formula {data:?}"),
                Err(e) => format!("error: {e}"),
            },
        ));
    }
    let t = oracle_table(&g, witness.as_ref(), bounds.dixon)?;
    let table = &t.table;
    if let Some(fast) = &t.fast {
        let ok = matches!(fast, Ok(f) if f.same_characters(table));
        let detail = match fast {
            Ok(_) if ok => "row sets agree".to_string(),
            Ok(_) => "row sets differ".to_string(),
            Err(e) => format!("error: {e}"),
        };
        report.push(CheckResult::new(
            "fast-path table = Dixon table",
            ok,
            detail,
        ));
    }
    let oracle = rational_decomposition_from_table(table);
    report.push(CheckResult::new(
        "dimension identity (oracle)",
        matches!(&oracle, Ok(d) if d.check_dimension().is_ok() && d.group_order() == g.order()),
        describe(&oracle),
    ));
    if let Some(formula) = &formula {
        let ok = matches!(&oracle, Ok(o) if decomp_equal(o, formula));
        report.push(CheckResult::new(
            "formula = oracle",
            ok,
            format!("formula {formula}; oracle {}", describe(&oracle)),
        ));
    }
    let central: Result<Vec<bool>, Error> = (0..table.len())
        .map(|i| is_central_type(table, i))
        .collect();
    report.push(CheckResult::new(
        "central-type criteria agree",
        central.is_ok(),
        match &central {
            Ok(v) => format!(
                "{} of {} characters of central type",
                v.iter().filter(|&&b| b).count(),
                v.len()
            ),
            Err(e) => e.to_string(),
        },
    ));
    let sizes_ok = galois_classes(table)
        .iter()
        .all(|c| field_degree(table, c[0]) == c.len());
    report.push(CheckResult::new(
        "Galois class size = [Q(chi):Q]",
        sizes_ok,
        format!("{} classes", galois_classes(table).len()),
    ));
    let nested = is_nested_gvz(table);
    let gvz = is_gvz(table);
    let expect = entry.nested_gvz;
    match expect {
        Some(true) => report.push(CheckResult::new(
            "nested GVZ",
            nested == Ok(true),
            describe(&nested),
        )),
        Some(false) => report.push(CheckResult::new(
            "control group is not GVZ",
            gvz == Ok(false),
            describe(&gvz),
        )),
        None => report.push(CheckResult::new(
            "GVZ predicates evaluate",
            gvz.is_ok() && nested.is_ok(),
            format!("gvz {}, nested {}", describe(&gvz), describe(&nested)),
        )),
    }
    if expect != Some(false) && nested == Ok(true) {
        report.push(galois_kernel_check(table));
        if g.order() <= bounds.pci {
            report.checks.extend(verify_pci_with_table(table).checks);
        }
    }
    Ok(report)
}

/// Verification of a single group spec (wraps it as a corpus entry).
pub fn verify_spec(spec: &GroupSpec, bounds: Bounds) -> Result<VerificationReport, CliError> {
    let nested_gvz = matches!(spec, GroupSpec::Family(_)).then_some(true);
    verify_entry(
        &CorpusEntry {
            spec: spec.clone(),
            nested_gvz,
        },
        bounds,
    )
}
