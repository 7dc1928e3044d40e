//! The realized groups used for formula-versus-oracle verification.

use qga_core::grouprep::PcPresentation;
use qga_core::TwoGenParams;

use crate::spec::{FamilySpec, GroupSpec, PcSpec};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub spec: GroupSpec,
    /// Expected value of the nested GVZ predicate, if any.
    pub nested_gvz: Option<bool>,
}

impl CorpusEntry {
    fn family(spec: FamilySpec) -> Self {
        Self {
            spec: GroupSpec::Family(spec),
            nested_gvz: Some(true),
        }
    }
}

/// All p-good tuples `(α,β,γ;ρ,σ)` with `α+β+γ ≤ max_n`.
pub fn p_good_tuples(p: u64, max_n: u32) -> Vec<TwoGenParams> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for gamma in 1..=n / 3 {
            for beta in gamma..=(n - gamma) / 2 {
                let alpha = n - beta - gamma;
                for rho in 0..=gamma {
                    for sigma in 0..=gamma {
                        let t =
                            TwoGenParams::new(p, alpha, beta, gamma, rho, sigma).expect("in range");
                        if t.is_p_good() {
                            out.push(t);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The maximal-class control group `C_3 ≀ C_3` of order 81.
pub fn control_group() -> CorpusEntry {
    let pres = PcPresentation::wreath_cp_cp(3).expect("p = 3 is supported");
    CorpusEntry {
        spec: GroupSpec::Presentation(PcSpec::from_presentation(&pres)),
        nested_gvz: Some(false),
    }
}

/// `small`: every corpus group of order at most `3^5`.
/// `full`: adds the order-`3^6` two-generator groups, Nenciu `5^5` and
/// Lewis `3^7`.
pub fn corpus(tag: &str) -> Result<Vec<CorpusEntry>, CliError> {
    let (max_n, extra) = match tag {
        "small" => (5, false),
        "full" => (6, true),
        other => {
            return Err(CliError::Spec(format!(
                "unknown corpus {other:?} (expected small or full)"
            )))
        }
    };
    let mut out: Vec<CorpusEntry> = p_good_tuples(3, max_n)
        .iter()
        .map(|t| CorpusEntry::family(FamilySpec::two_gen(t)))
        .collect();
    out.extend(
        [(1, 3), (1, 5)]
            .into_iter()
            .map(|(n, p)| CorpusEntry::family(FamilySpec::Nenciu { n, p })),
    );
    out.extend((1..=2).map(|n| CorpusEntry::family(FamilySpec::Lewis { n, p: 3 })));
    out.extend(
        [vec![1, 2], vec![1, 1, 1], vec![2, 2]]
            .into_iter()
            .map(|exponents| CorpusEntry::family(FamilySpec::Abelian { p: 3, exponents })),
    );
    out.push(control_group());
    if extra {
        out.push(CorpusEntry::family(FamilySpec::Nenciu { n: 2, p: 5 }));
        out.push(CorpusEntry::family(FamilySpec::Lewis { n: 3, p: 3 }));
    }
    Ok(out)
}
