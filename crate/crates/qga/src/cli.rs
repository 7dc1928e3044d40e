//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use qga_core::abelian::{count_cyclic_subgroups, count_elements_of_order};
use qga_core::decomp::decomp_equal;
use qga_core::grouprep::make_two_gen;
use qga_core::oracle::{
    char_center, char_kernel, field_conductor, galois_classes, idempotent_eq,
    rational_decomposition_with_bound, verify_pci_with_table, VerificationReport,
};
use qga_core::{AbelianPType, TwoGenParams, WeddDecomp};

use crate::corpus::corpus;
use crate::spec::{parse_abelian, parse_list, FamilySpec, GroupSpec, PcSpec};
use crate::sweep::{render_text, sweep, Grid, IntSet};
use crate::verify::{oracle_table, summarize, verify_spec, Bounds};
use crate::{CliError, Outcome};

#[derive(Debug, Parser)]
#[command(
    name = "qga",
    version,
    about = "Wedderburn decompositions of rational group algebras of nested GVZ p-groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest group order handed to the Dixon character-table solver.
    #[arg(long, env = "QGA_ORACLE_BOUND", default_value_t = qga_core::oracle::DEFAULT_BOUND, global = true)]
    pub bound: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decomposition from the formulas.
    Decompose(GroupArgs),
    /// Character table, predicates and decomposition of a realized group.
    Oracle(GroupArgs),
    /// Formula versus oracle, GVZ predicates and the idempotent theorem.
    Verify(VerifyArgs),
    /// Cyclic subgroups and elements of each order in an abelian p-group.
    CountCyclic(CountArgs),
    /// Rational primitive central idempotents against their product formula.
    Idempotents(GroupArgs),
    /// Decompositions over a grid of two-generator tuples.
    Sweep(SweepArgs),
    /// `G(2,2,2;ρ,2)` at `p = 3` for `ρ = 2, 1, 0`: decompositions and isomorphism of their rational group algebras.
    #[command(name = "example-729")]
    Example729(ExampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    #[value(name = "two_gen")]
    TwoGen,
    Nenciu,
    Lewis,
    #[value(name = "p5_class3")]
    P5Class3,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GroupArgs {
    /// Family of the group.
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Two-generator tuple `alpha,beta,gamma,rho,sigma`.
    #[arg(long)]
    pub tuple: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Exponents of `G/G'` for `p5_class3`, e.g. `1,1,1`.
    #[arg(long)]
    pub abelianization: Option<String>,
    /// An abelian p-group `p:e1,e2,...`, e.g. `3:1,2` for `C3 x C9`.
    #[arg(long)]
    pub abelian: Option<String>,
    /// Family spec as JSON, e.g. `{"family":"lewis","n":2,"p":3}`.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Power-commutator presentation as JSON.
    #[arg(long)]
    pub pc: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Verify a built-in corpus instead of one group: `small` or `full`.
    #[arg(long)]
    pub corpus: Option<String>,
    /// Largest order on which the idempotent theorem is checked.
    #[arg(long, default_value_t = 729)]
    pub pci_max_order: u64,
}

#[derive(Debug, Clone, Args)]
pub struct CountArgs {
    /// Abelian p-group `p:e1,e2,...`.
    #[arg(long)]
    pub abelian: String,
    /// Only this order `p^alpha`.
    #[arg(long)]
    pub alpha: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Primes, e.g. `3` or `3,5`.
    #[arg(long, default_value = "3")]
    pub p: String,
    /// Values of gamma: `2`, `1,2` or `1..3`.
    #[arg(long)]
    pub gamma: String,
    /// Values of rho (default `0..gamma`).
    #[arg(long)]
    pub rho: Option<String>,
    /// Values of alpha (default gamma).
    #[arg(long)]
    pub alpha: Option<String>,
    /// Values of beta (default gamma).
    #[arg(long)]
    pub beta: Option<String>,
    /// Values of sigma (default gamma).
    #[arg(long)]
    pub sigma: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ExampleArgs {
    /// Also compute all three decompositions with the character-table oracle.
    #[arg(long)]
    pub oracle: bool,
}

/// Parses and runs one command line (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stderr: text,
                    code: 2,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    stdout: text,
                    code: 0,
                    ..Outcome::default()
                }
            };
        }
    };
    let mut out = Outcome::default();
    match dispatch(&cli, &mut out) {
        Ok(code) => out.code = code,
        Err(e) => {
            out.stderr.push_str(&format!("error: {e}\n"));
            out.code = e.exit_code();
        }
    }
    out
}

fn dispatch(cli: &Cli, out: &mut Outcome) -> Result<i32, CliError> {
    match &cli.command {
        Command::Decompose(g) => decompose(cli, g, out),
        Command::Oracle(g) => oracle(cli, g, out),
        Command::Verify(v) => verify(cli, v, out),
        Command::CountCyclic(c) => count_cyclic(cli, c, out),
        Command::Idempotents(g) => idempotents(cli, g, out),
        Command::Sweep(s) => sweep_cmd(cli, s, out),
        Command::Example729(e) => example_729(cli, e, out),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Spec(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Spec(format!("{}: {e}", path.display())))
}

fn required<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Spec(format!("--family {family} needs --{flag}")))
}

/// Resolves the group-selection flags to exactly one spec.
pub fn group_spec(g: &GroupArgs) -> Result<GroupSpec, CliError> {
    let chosen = [
        g.family.is_some(),
        g.abelian.is_some(),
        g.spec.is_some(),
        g.pc.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if chosen != 1 {
        return Err(CliError::Spec(
            "choose exactly one of --family, --abelian, --spec, --pc".into(),
        ));
    }
    if let Some(path) = &g.pc {
        return read_json::<PcSpec>(path).map(GroupSpec::Presentation);
    }
    if let Some(path) = &g.spec {
        return read_json::<FamilySpec>(path).map(GroupSpec::Family);
    }
    if let Some(a) = &g.abelian {
        return parse_abelian(a).map(GroupSpec::Family);
    }
    let spec = match g.family.expect("one selector is set") {
        FamilyKind::TwoGen => {
            let p = required(g.p, "p", "two_gen")?;
            let tuple = g.tuple.as_deref().ok_or_else(|| {
                CliError::Spec("--family two_gen needs --tuple alpha,beta,gamma,rho,sigma".into())
            })?;
            let v: Vec<u32> = parse_list(tuple)?;
            let [alpha, beta, gamma, rho, sigma] = v[..] else {
                return Err(CliError::Spec(format!(
                    "--tuple needs 5 entries, got {}",
                    v.len()
                )));
            };
            let t = TwoGenParams::new(p, alpha, beta, gamma, rho, sigma).map_err(CliError::spec)?;
            FamilySpec::two_gen(&t)
        }
        FamilyKind::Nenciu => FamilySpec::Nenciu {
            n: required(g.n, "n", "nenciu")?,
            p: required(g.p, "p", "nenciu")?,
        },
        FamilyKind::Lewis => FamilySpec::Lewis {
            n: required(g.n, "n", "lewis")?,
            p: required(g.p, "p", "lewis")?,
        },
        FamilyKind::P5Class3 => FamilySpec::P5Class3 {
            p: required(g.p, "p", "p5_class3")?,
            abelianization: parse_list(g.abelianization.as_deref().ok_or_else(|| {
                CliError::Spec("--family p5_class3 needs --abelianization e1,e2,...".into())
            })?)?,
        },
    };
    Ok(GroupSpec::Family(spec))
}

fn decompose(cli: &Cli, g: &GroupArgs, out: &mut Outcome) -> Result<i32, CliError> {
    let spec = group_spec(g)?;
    let d = match &spec {
        GroupSpec::Family(f) => f.decompose()?,
        GroupSpec::Presentation(_) => {
            return Err(CliError::Spec(
                "decompose needs a family; use `oracle` for presentations".into(),
            ))
        }
    };
    out.stdout = match cli.format {
        Format::Text => format!("{d}\n"),
        Format::Json => json(&d),
    };
    Ok(0)
}

fn oracle(cli: &Cli, g: &GroupArgs, out: &mut Outcome) -> Result<i32, CliError> {
    let spec = group_spec(g)?;
    let group = spec
        .realize()?
        .ok_or_else(|| CliError::Spec(format!("{spec} has no concrete presentation")))?;
    let witness = spec.family().and_then(|f| f.witness(&group)).transpose()?;
    let t = oracle_table(&group, witness.as_ref(), cli.bound)?;
    let s = summarize(&t)?;
    out.stdout = match cli.format {
        Format::Json => json(&s),
        Format::Text => {
            let degrees: Vec<String> = s.degrees.iter().map(|(d, k)| format!("{d}^{k}")).collect();
            format!(
                "group: {}\norder: {}\ntable: {:?}\nclasses: {}\ndegrees: {}\nGalois classes: {}\nGVZ: {}\nnested GVZ: {}\ndecomposition: {}\n",
                s.group,
                s.order,
                s.method,
                s.classes,
                degrees.join(" "),
                s.galois_classes,
                s.gvz,
                s.nested_gvz,
                s.decomposition
            )
        }
    };
    Ok(0)
}

fn render_reports(format: Format, reports: &[VerificationReport]) -> String {
    match format {
        Format::Json => json(&reports.iter().map(report_json).collect::<Vec<_>>()),
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                s.push_str(&format!("== {}\n", r.group));
                for c in &r.checks {
                    let tag = if c.status == qga_core::oracle::CheckStatus::Pass {
                        "PASS"
                    } else {
                        "FAIL"
                    };
                    s.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
                }
            }
            let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
            let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
            s.push_str(&format!(
                "{} groups, {checks} checks, {failed} failed\n",
                reports.len()
            ));
            s
        }
    }
}

fn report_json(r: &VerificationReport) -> serde_json::Value {
    serde_json::to_value(r).expect("serializable")
}

fn verify(cli: &Cli, v: &VerifyArgs, out: &mut Outcome) -> Result<i32, CliError> {
    let bounds = Bounds {
        dixon: cli.bound,
        pci: v.pci_max_order,
    };
    let reports = match &v.corpus {
        Some(tag) => {
            let any_group = [
                v.group.family.is_some(),
                v.group.abelian.is_some(),
                v.group.spec.is_some(),
                v.group.pc.is_some(),
            ];
            if any_group.iter().any(|&b| b) {
                return Err(CliError::Spec(
                    "--corpus cannot be combined with a group selection".into(),
                ));
            }
            corpus(tag)?
                .par_iter()
                .map(|e| crate::verify::verify_entry(e, bounds))
                .collect::<Result<Vec<_>, _>>()?
        }
        None => vec![verify_spec(&group_spec(&v.group)?, bounds)?],
    };
    out.stdout = render_reports(cli.format, &reports);
    Ok(if reports.iter().all(VerificationReport::passed) {
        0
    } else {
        1
    })
}

#[derive(Serialize)]
struct CountRow {
    alpha: u32,
    cyclic_subgroups: u64,
    elements: u64,
}

fn count_cyclic(cli: &Cli, c: &CountArgs, out: &mut Outcome) -> Result<i32, CliError> {
    let FamilySpec::Abelian { p, exponents } = parse_abelian(&c.abelian)? else {
        unreachable!("parse_abelian returns an abelian spec")
    };
    let t = AbelianPType::new(p, exponents).map_err(CliError::spec)?;
    let alphas: Vec<u32> = match c.alpha {
        Some(a) => vec![a],
        None => (0..=t.exponent_log()).collect(),
    };
    let rows: Vec<CountRow> = alphas
        .into_iter()
        .map(|alpha| CountRow {
            alpha,
            cyclic_subgroups: if alpha == 0 {
                1
            } else {
                count_cyclic_subgroups(&t, alpha)
            },
            elements: count_elements_of_order(&t, alpha),
        })
        .collect();
    out.stdout = match cli.format {
        Format::Json => json(&rows),
        Format::Text => {
            let mut s = format!("{t}\nalpha  order  cyclic subgroups  elements\n");
            for r in &rows {
                s.push_str(&format!(
                    "{:<6} {:<6} {:<17} {}\n",
                    r.alpha,
                    p.pow(r.alpha),
                    r.cyclic_subgroups,
                    r.elements
                ));
            }
            s
        }
    };
    Ok(0)
}

#[derive(Serialize)]
struct IdempotentRow {
    characters: Vec<usize>,
    degree: u64,
    center_order: u64,
    kernel_order: u64,
    conductor: u64,
    identity_coefficient: String,
    support: usize,
}

fn idempotents(cli: &Cli, g: &GroupArgs, out: &mut Outcome) -> Result<i32, CliError> {
    let spec = group_spec(g)?;
    let group = spec
        .realize()?
        .ok_or_else(|| CliError::Spec(format!("{spec} has no concrete presentation")))?;
    if group.p() == 2 {
        return Err(CliError::spec(qga_core::Error::NotOddPGroup));
    }
    let witness = spec.family().and_then(|f| f.witness(&group)).transpose()?;
    let t = oracle_table(&group, witness.as_ref(), cli.bound)?;
    let table = &t.table;
    let mut rows = Vec::new();
    for class in galois_classes(table) {
        let i = class[0];
        let e = idempotent_eq(table, i).map_err(CliError::check)?;
        rows.push(IdempotentRow {
            degree: table.degree(i),
            center_order: char_center(table, i).order(),
            kernel_order: char_kernel(table, i).order(),
            conductor: field_conductor(table, i),
            identity_coefficient: e.identity_coefficient().to_string(),
            support: e.support().count(),
            characters: class,
        });
    }
    let report = verify_pci_with_table(table);
    out.stdout = match cli.format {
        Format::Json => {
            json(&serde_json::json!({ "classes": rows, "report": report_json(&report) }))
        }
        Format::Text => {
            let mut s =
                String::from("characters        degree  |Z(chi)|  |ker|  conductor  [1]e_Q\n");
            for r in &rows {
                let ids: Vec<String> = r.characters.iter().map(|i| i.to_string()).collect();
                s.push_str(&format!(
                    "{:<17} {:<7} {:<9} {:<6} {:<10} {}\n",
                    ids.join(","),
                    r.degree,
                    r.center_order,
                    r.kernel_order,
                    r.conductor,
                    r.identity_coefficient
                ));
            }
            s.push_str(&render_reports(Format::Text, std::slice::from_ref(&report)));
            s
        }
    };
    Ok(if report.passed() { 0 } else { 1 })
}

fn sweep_cmd(cli: &Cli, a: &SweepArgs, out: &mut Outcome) -> Result<i32, CliError> {
    let opt = |s: &Option<String>| {
        s.as_deref()
            .map(IntSet::parse)
            .transpose()
            .map(|v| v.map(|x| x.0))
    };
    let grid = Grid {
        p: parse_list(&a.p)?,
        gamma: IntSet::parse(&a.gamma)?.0,
        alpha: opt(&a.alpha)?,
        beta: opt(&a.beta)?,
        rho: opt(&a.rho)?,
        sigma: opt(&a.sigma)?,
    };
    let table = sweep(&grid)?;
    out.stdout = match cli.format {
        Format::Json => json(&table),
        Format::Text => render_text(&table),
    };
    Ok(0)
}

/// `(2,2,2;ρ,2)` for `ρ = 2, 1, 0` at `p = 3`, with their expected decompositions.
pub const EXAMPLE_729: [(u32, &str); 3] = [
    (2, "Q + 4 Q(z3) + 12 Q(z9) + 9 M3(Q(z3)) + M9(Q(z9))"),
    (1, "Q + 4 Q(z3) + 12 Q(z9) + 9 M3(Q(z3)) + M9(Q(z9))"),
    (0, "Q + 4 Q(z3) + 12 Q(z9) + 3 M3(Q(z9)) + M9(Q(z9))"),
];

#[derive(Serialize)]
struct ExampleRow {
    tuple: String,
    formula: WeddDecomp,
    expected: &'static str,
    matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<WeddDecomp>,
}

fn example_729(cli: &Cli, a: &ExampleArgs, out: &mut Outcome) -> Result<i32, CliError> {
    let start = Instant::now();
    let mut params = Vec::new();
    let mut rows = Vec::new();
    for (rho, expected) in EXAMPLE_729 {
        let t = TwoGenParams::new(3, 2, 2, 2, rho, 2).map_err(CliError::spec)?;
        let formula = FamilySpec::two_gen(&t).decompose()?;
        rows.push(ExampleRow {
            tuple: t.to_string(),
            matches: formula.to_string() == expected,
            formula,
            expected,
            oracle: None,
        });
        params.push(t);
    }
    out.stderr.push_str(&format!(
        "formula path: {:.3} s\n",
        start.elapsed().as_secs_f64()
    ));
    if a.oracle {
        let start = Instant::now();
        for (row, t) in rows.iter_mut().zip(&params) {
            let g = make_two_gen(t).map_err(CliError::spec)?;
            row.oracle =
                Some(rational_decomposition_with_bound(&g, cli.bound).map_err(CliError::check)?);
        }
        out.stderr.push_str(&format!(
            "oracle path: {:.3} s\n",
            start.elapsed().as_secs_f64()
        ));
    }
    let g12 = decomp_equal(&rows[0].formula, &rows[1].formula);
    let g13 = decomp_equal(&rows[0].formula, &rows[2].formula);
    let oracle_ok = rows.iter().all(|r| {
        r.oracle
            .as_ref()
            .is_none_or(|o| decomp_equal(o, &r.formula))
    });
    let ok = rows.iter().all(|r| r.matches) && g12 && !g13 && oracle_ok;
    out.stdout = match cli.format {
        Format::Json => json(&serde_json::json!({
            "groups": rows,
            "g1_g2_isomorphic": g12,
            "g1_g3_isomorphic": g13,
            "pass": ok,
        })),
        Format::Text => {
            let mut s = String::new();
            for (i, r) in rows.iter().enumerate() {
                s.push_str(&format!("G{} = G{} p=3: {}\n", i + 1, r.tuple, r.formula));
                if let Some(o) = &r.oracle {
                    let verdict = if decomp_equal(o, &r.formula) {
                        "agrees"
                    } else {
                        "DISAGREES"
                    };
                    s.push_str(&format!("  oracle {verdict}: {o}\n"));
                }
            }
            let yes_no = |b: bool| if b { "isomorphic" } else { "not isomorphic" };
            s.push_str(&format!("QG1, QG2: {}\n", yes_no(g12)));
            s.push_str(&format!("QG1, QG3: {}\n", yes_no(g13)));
            s.push_str(if ok {
                "expected decompositions confirmed\n"
            } else {
                "expected decompositions NOT confirmed\n"
            });
            s
        }
    };
    Ok(if ok { 0 } else { 1 })
}
