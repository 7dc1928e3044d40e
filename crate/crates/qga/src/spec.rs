//! Group and family specifications: JSON schemas, flag parsing and
//! dispatch to the formula engines and the concrete realizations.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use qga_core::decomp::decompose_abelian;
use qga_core::families::{
    closed_form_lewis, closed_form_nenciu, lewis_gvz_data, nenciu_gvz_data, p5_decompose,
    two_gen_decompose, two_gen_gvz_data,
};
use qga_core::grouprep::{
    make_abelian, make_metacyclic, make_polycyclic, make_two_gen, PcPresentation,
};
use qga_core::oracle::GvzWitness;
use qga_core::{AbelianPType, FiniteGroupRep, NestedGvzData, P5Input, TwoGenParams, WeddDecomp};

use crate::CliError;

/// A family member, as in `{"family":"two_gen","p":3,"alpha":2,...}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    TwoGen {
        p: u64,
        alpha: u32,
        beta: u32,
        gamma: u32,
        rho: u32,
        sigma: u32,
    },
    Nenciu {
        n: u32,
        p: u64,
    },
    Lewis {
        n: u32,
        p: u64,
    },
    P5Class3 {
        p: u64,
        abelianization: Vec<u32>,
    },
    Abelian {
        p: u64,
        exponents: Vec<u32>,
    },
}

impl FamilySpec {
    pub fn two_gen(t: &TwoGenParams) -> Self {
        FamilySpec::TwoGen {
            p: t.p,
            alpha: t.alpha,
            beta: t.beta,
            gamma: t.gamma,
            rho: t.rho,
            sigma: t.sigma,
        }
    }

    pub fn params(&self) -> Option<Result<TwoGenParams, CliError>> {
        match *self {
            FamilySpec::TwoGen {
                p,
                alpha,
                beta,
                gamma,
                rho,
                sigma,
            } => Some(TwoGenParams::new(p, alpha, beta, gamma, rho, sigma).map_err(CliError::spec)),
            _ => None,
        }
    }

    /// The decomposition given by the closed forms and formula engines.
    pub fn decompose(&self) -> Result<WeddDecomp, CliError> {
        let out = match self {
            FamilySpec::TwoGen { .. } => two_gen_decompose(&self.params().expect("two_gen")?),
            FamilySpec::Nenciu { n, p } => closed_form_nenciu(*n, *p),
            FamilySpec::Lewis { n, p } => closed_form_lewis(*n, *p),
            FamilySpec::P5Class3 { p, abelianization } => {
                let ab = AbelianPType::new(*p, abelianization.clone()).map_err(CliError::spec)?;
                P5Input::class3(*p, ab).and_then(|i| p5_decompose(&i))
            }
            FamilySpec::Abelian { p, exponents } => {
                AbelianPType::new(*p, exponents.clone()).map(|t| decompose_abelian(&t))
            }
        };
        out.map_err(CliError::spec)
    }

    /// Layer data for the nested GVZ formula, where the family has it.
    pub fn gvz_data(&self) -> Option<Result<NestedGvzData, CliError>> {
        let out = match self {
            FamilySpec::TwoGen { .. } => match self.params().expect("two_gen") {
                Ok(t) => two_gen_gvz_data(&t),
                Err(e) => return Some(Err(e)),
            },
            FamilySpec::Nenciu { n, p } => nenciu_gvz_data(*n, *p),
            FamilySpec::Lewis { n, p } => lewis_gvz_data(*n, *p),
            FamilySpec::Abelian { p, exponents } => AbelianPType::new(*p, exponents.clone())
                .and_then(|t| NestedGvzData::new(*p, t, Vec::new())),
            FamilySpec::P5Class3 { .. } => return None,
        };
        Some(out.map_err(CliError::spec))
    }

    /// A concrete group, or `None` for families given only by invariants.
    pub fn realize(&self) -> Result<Option<FiniteGroupRep>, CliError> {
        let g = match self {
            FamilySpec::TwoGen { .. } => make_two_gen(&self.params().expect("two_gen")?),
            FamilySpec::Nenciu { n, p } => {
                // Check the family's own precondition before building anything.
                nenciu_gvz_data(*n, *p).map_err(CliError::spec)?;
                PcPresentation::nenciu(*n, *p).and_then(|s| make_polycyclic(&s))
            }
            FamilySpec::Lewis { n, p } => make_metacyclic(*n, *p),
            FamilySpec::Abelian { p, exponents } => {
                AbelianPType::new(*p, exponents.clone()).and_then(|t| make_abelian(&t))
            }
            FamilySpec::P5Class3 { .. } => return Ok(None),
        };
        g.map(Some).map_err(CliError::spec)
    }

    /// Witness subgroups `Z_δ` on a realization of this family.
    pub fn witness<'g>(&self, g: &'g FiniteGroupRep) -> Option<Result<GvzWitness<'g>, CliError>> {
        let w = match self {
            FamilySpec::TwoGen { .. } => GvzWitness::two_gen(g),
            FamilySpec::Nenciu { .. } => GvzWitness::nenciu(g),
            FamilySpec::Lewis { .. } => GvzWitness::metacyclic(g),
            FamilySpec::Abelian { .. } => Ok(GvzWitness { layers: Vec::new() }),
            FamilySpec::P5Class3 { .. } => return None,
        };
        Some(w.map_err(CliError::check))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::TwoGen {
                p,
                alpha,
                beta,
                gamma,
                rho,
                sigma,
            } => {
                write!(f, "G({alpha},{beta},{gamma};{rho},{sigma}) p={p}")
            }
            FamilySpec::Nenciu { n, p } => write!(f, "nenciu n={n} p={p}"),
            FamilySpec::Lewis { n, p } => write!(f, "lewis n={n} p={p}"),
            FamilySpec::P5Class3 { p, abelianization } => {
                write!(f, "p5 class 3 p={p} ab=[{}]", list(abelianization))
            }
            FamilySpec::Abelian { p, exponents } => {
                write!(f, "abelian p={p} [{}]", list(exponents))
            }
        }
    }
}

/// A power-commutator presentation file:
/// `{"generators": [...], "orders": [...], "powers": {"g": word},
/// "commutators": {"[g,h]": word}}` with words as exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PcSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub generators: Vec<String>,
    pub orders: Vec<u64>,
    #[serde(default)]
    pub powers: BTreeMap<String, Vec<u64>>,
    #[serde(default)]
    pub commutators: BTreeMap<String, Vec<u64>>,
}

impl PcSpec {
    pub fn to_presentation(&self) -> Result<PcPresentation, CliError> {
        let mut pres = PcPresentation::new(self.generators.clone(), self.orders.clone())
            .map_err(CliError::spec)?;
        if let Some(label) = &self.label {
            pres = pres.with_label(label.clone());
        }
        let index = |name: &str| {
            self.generators
                .iter()
                .position(|g| g == name.trim())
                .ok_or_else(|| CliError::Spec(format!("unknown generator {name:?}")))
        };
        for (name, word) in &self.powers {
            let i = index(name)?;
            pres.set_power(i, word.clone()).map_err(CliError::spec)?;
        }
        for (key, word) in &self.commutators {
            let inner = key
                .strip_prefix('[')
                .and_then(|k| k.strip_suffix(']'))
                .ok_or_else(|| {
                    CliError::Spec(format!("commutator key {key:?} is not of the form [g,h]"))
                })?;
            let (a, b) = inner.split_once(',').ok_or_else(|| {
                CliError::Spec(format!("commutator key {key:?} is not of the form [g,h]"))
            })?;
            let (i, j) = (index(a)?, index(b)?);
            pres.set_commutator(i, j, word.clone())
                .map_err(CliError::spec)?;
        }
        Ok(pres)
    }

    pub fn from_presentation(pres: &PcPresentation) -> Self {
        let names = pres.names();
        Self {
            label: Some(pres.label().to_string()),
            generators: names.to_vec(),
            orders: pres.relative_orders().to_vec(),
            powers: pres
                .powers()
                .map(|(i, w)| (names[i].clone(), w.to_vec()))
                .collect(),
            commutators: pres
                .commutators()
                .map(|((i, j), w)| (format!("[{},{}]", names[i], names[j]), w.to_vec()))
                .collect(),
        }
    }

    pub fn realize(&self) -> Result<FiniteGroupRep, CliError> {
        make_polycyclic(&self.to_presentation()?).map_err(CliError::spec)
    }
}

/// What a command operates on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Family(FamilySpec),
    Presentation(PcSpec),
}

impl GroupSpec {
    pub fn family(&self) -> Option<&FamilySpec> {
        match self {
            GroupSpec::Family(f) => Some(f),
            GroupSpec::Presentation(_) => None,
        }
    }

    pub fn realize(&self) -> Result<Option<FiniteGroupRep>, CliError> {
        match self {
            GroupSpec::Family(f) => f.realize(),
            GroupSpec::Presentation(s) => s.realize().map(Some),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Family(s) => s.fmt(f),
            GroupSpec::Presentation(s) => f.write_str(s.label.as_deref().unwrap_or("polycyclic")),
        }
    }
}

/// `1,2,3` as a list of integers.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| CliError::Spec(format!("{x:?} is not a valid integer in {s:?}")))
        })
        .collect()
}

/// `3:1,2` as the abelian type `C_3 × C_9`.
pub fn parse_abelian(s: &str) -> Result<FamilySpec, CliError> {
    let (p, exps) = s
        .split_once(':')
        .ok_or_else(|| CliError::Spec(format!("abelian type {s:?} must look like p:e1,e2,...")))?;
    let p = p
        .trim()
        .parse()
        .map_err(|_| CliError::Spec(format!("{p:?} is not a valid prime")))?;
    let exponents = parse_list(exps)?;
    if exponents.contains(&0) {
        return Err(CliError::Spec("abelian exponents must be positive".into()));
    }
    AbelianPType::new(p, exponents.clone()).map_err(CliError::spec)?;
    Ok(FamilySpec::Abelian { p, exponents })
}
