//! The rational group algebra: elements, the idempotents `e(χ)`, `e_Q(χ)`
//! and `ε(H, N)`, and the primitive-central-idempotent verification report.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use super::cyclotomic::Cyclotomic;
use super::predicates::{char_center, char_kernel, field_conductor, galois_classes};
use super::table::{character_table_with_bound, CharTable};
use crate::arith;
use crate::error::{Error, Result};
use crate::grouprep::{Elem, FiniteGroupRep, Subgroup};

/// Coefficient rings used for group algebra elements.
pub trait Scalar: Clone + PartialEq + Zero + fmt::Debug {
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Scalar for Ratio<i128> {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Scalar for Cyclotomic {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }
}

/// `Σ_g c_g g`, coefficients indexed by element.
#[derive(Clone)]
pub struct GroupAlgebraElement<'g, C: Scalar = Ratio<i128>> {
    group: &'g FiniteGroupRep,
    coeffs: Vec<C>,
}

impl<C: Scalar> PartialEq for GroupAlgebraElement<'_, C> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.group, other.group) && self.coeffs == other.coeffs
    }
}

impl<C: Scalar> fmt::Debug for GroupAlgebraElement<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.support().map(|x| (x, &self.coeffs[x as usize])))
            .finish()
    }
}

impl<'g, C: Scalar> GroupAlgebraElement<'g, C> {
    pub fn zero(group: &'g FiniteGroupRep) -> Self {
        Self {
            group,
            coeffs: vec![C::zero(); group.order() as usize],
        }
    }

    pub fn from_fn(group: &'g FiniteGroupRep, f: impl Fn(Elem) -> C) -> Self {
        Self {
            group,
            coeffs: group.elements().map(f).collect(),
        }
    }

    pub fn group(&self) -> &'g FiniteGroupRep {
        self.group
    }

    pub fn coeff(&self, x: Elem) -> &C {
        &self.coeffs[x as usize]
    }

    /// Coefficient of the identity.
    pub fn identity_coefficient(&self) -> &C {
        &self.coeffs[0]
    }

    pub fn support(&self) -> impl Iterator<Item = Elem> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i as Elem)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            group: self.group,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            group: self.group,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add_ref(&b.neg_ref()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let g = self.group;
        let mut out = vec![C::zero(); g.order() as usize];
        let rhs: Vec<Elem> = other.support().collect();
        for x in self.support() {
            let a = &self.coeffs[x as usize];
            for &y in &rhs {
                let z = g.mul(x, y) as usize;
                out[z] = out[z].add_ref(&a.mul_ref(&other.coeffs[y as usize]));
            }
        }
        Self {
            group: g,
            coeffs: out,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    /// Commutes with every generator, i.e. coefficients are constant on
    /// conjugacy classes.
    pub fn is_central(&self) -> bool {
        let g = self.group;
        g.generators().into_iter().all(|s| {
            g.elements()
                .all(|x| self.coeffs[x as usize] == self.coeffs[g.conj(x, s) as usize])
        })
    }
}

impl<'g> GroupAlgebraElement<'g, Ratio<i128>> {
    pub fn one(group: &'g FiniteGroupRep) -> Self {
        let mut e = Self::zero(group);
        e.coeffs[0] = Ratio::from_integer(1);
        e
    }

    /// `Ĥ = |H|⁻¹ Σ_{h ∈ H} h`.
    pub fn hat(h: &Subgroup<'g>) -> Self {
        let w = Ratio::new(1, h.order() as i128);
        let mut e = Self::zero(h.group());
        h.elements().iter().for_each(|&x| e.coeffs[x as usize] = w);
        e
    }
}

impl<'g> GroupAlgebraElement<'g, Cyclotomic> {
    /// The same element if every coefficient is rational.
    pub fn to_rational(&self) -> Result<GroupAlgebraElement<'g, Ratio<i128>>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.as_rational().ok_or(Error::NonRationalCoefficients))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupAlgebraElement {
            group: self.group,
            coeffs,
        })
    }
}

/// `e(χ) = χ(1)/|G| Σ_g χ(g) g⁻¹`.
pub fn idempotent_e<'g>(
    t: &CharTable<'g>,
    i: usize,
) -> Result<GroupAlgebraElement<'g, Cyclotomic>> {
    let g = t.group();
    let w = Ratio::new(t.degree(i) as i128, g.order() as i128);
    let e = GroupAlgebraElement::from_fn(g, |x| t.value(i, g.inv(x)).scale(w));
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    Ok(e)
}

/// `e_Q(χ) = Σ_σ e(χ^σ)`, summed over the Galois class of `χ`.
pub fn idempotent_eq<'g>(
    t: &CharTable<'g>,
    i: usize,
) -> Result<GroupAlgebraElement<'g, Ratio<i128>>> {
    let g = t.group();
    let class = galois_classes(t)
        .into_iter()
        .find(|c| c.contains(&i))
        .expect("every character lies in a Galois class");
    let traces: Vec<Cyclotomic> = (0..t.classes().len())
        .map(|l| {
            class
                .iter()
                .fold(Cyclotomic::zero(), |s, &j| &s + &t.row(j)[l])
        })
        .collect();
    let w = Ratio::new(t.degree(i) as i128, g.order() as i128);
    let e =
        GroupAlgebraElement::from_fn(g, |x| traces[t.class_of(g.inv(x))].scale(w)).to_rational()?;
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    if !e.is_central() {
        return Err(Error::NotCentral);
    }
    Ok(e)
}

/// `ε(H, N) = Π (N̂ − D̂)` over the minimal normal subgroups `D/N` of
/// `H/N`, and `Ĥ` when `N = H`.
pub fn epsilon<'g>(
    h: &Subgroup<'g>,
    n: &Subgroup<'g>,
) -> Result<GroupAlgebraElement<'g, Ratio<i128>>> {
    if !n.is_normal_in(h) {
        return Err(Error::NotNormal);
    }
    let g = h.group();
    let n_hat = GroupAlgebraElement::hat(n);
    if n.order() == h.order() {
        return Ok(n_hat);
    }
    // For a p-group, D/N minimal normal means D = ⟨x⟩N with xN central of order p.
    let p = g.p();
    let mut minimal: Vec<Subgroup<'g>> = Vec::new();
    for &x in h.elements() {
        if n.contains(x) || !n.contains(g.pow(x, p)) {
            continue;
        }
        if !h.generators().iter().all(|&y| n.contains(g.comm(x, y))) {
            continue;
        }
        if minimal.iter().any(|d| d.contains(x)) {
            continue;
        }
        let mut gens = n.generators().to_vec();
        gens.push(x);
        minimal.push(Subgroup::generated(g, &gens));
    }
    let mut eps = n_hat.clone();
    for d in &minimal {
        eps = eps.mul(&n_hat.sub(&GroupAlgebraElement::hat(d)));
    }
    if !eps.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    Ok(eps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VerificationReport {
    pub group: String,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new(group: impl Into<String>) -> Self {
        Self {
            group: group.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }
}

/// For each nonlinear Galois class: `e_Q(χ) = ε(Z(χ), ker χ)`, the trace
/// identity `|G| · [1]e_Q(χ) = χ(1)² [Q(χ):Q]`, and the component
/// invariants `χ(1)² = |G : Z(χ)|`, conductor `= |Z(χ) : ker χ|`,
/// `[Q(χ):Q] = φ(|Z(χ) : ker χ|)`.
pub fn verify_pci_theorem(g: &FiniteGroupRep, bound: u64) -> Result<VerificationReport> {
    if g.p() == 2 {
        return Err(Error::NotOddPGroup);
    }
    let t = character_table_with_bound(g, bound)?;
    Ok(verify_pci_with_table(&t))
}

pub fn verify_pci_with_table(t: &CharTable<'_>) -> VerificationReport {
    let g = t.group();
    let mut report = VerificationReport::new(g.label());
    for class in galois_classes(t) {
        let i = class[0];
        let deg = t.degree(i);
        if deg == 1 {
            continue;
        }
        let z = char_center(t, i);
        let k = char_kernel(t, i);
        let tag = format!("chi{i} (degree {deg}, {} conjugates)", class.len());
        let same = class
            .iter()
            .all(|&j| char_center(t, j) == z && char_kernel(t, j) == k);
        let eq = idempotent_eq(t, i);
        let eps = epsilon(&z, &k);
        let (ok, detail) = match (&eq, &eps) {
            (Ok(a), Ok(b)) if a == b && same => (true, "coefficientwise equal".to_string()),
            (Ok(_), Ok(_)) if !same => (
                false,
                "conjugates have different Z(chi) or kernel".to_string(),
            ),
            (Ok(_), Ok(_)) => (false, "idempotents differ".to_string()),
            (Err(e), _) | (_, Err(e)) => (false, e.to_string()),
        };
        report.push(CheckResult::new(
            format!("{tag}: e_Q = eps(Z, ker)"),
            ok,
            detail,
        ));

        let index = z.order() / k.order();
        let field_deg = class.len() as u64;
        let conductor = field_conductor(t, i);
        let mut problems = Vec::new();
        if let Ok(e) = &eq {
            let lhs = *e.identity_coefficient() * Ratio::from_integer(g.order() as i128);
            if lhs != Ratio::from_integer((deg * deg * field_deg) as i128) {
                problems.push(format!(
                    "|G|*[1]e_Q = {lhs}, expected {}",
                    deg * deg * field_deg
                ));
            }
        }
        if deg * deg * z.order() != g.order() {
            problems.push(format!(
                "chi(1)^2 = {} but |G:Z| = {}",
                deg * deg,
                g.order() / z.order()
            ));
        }
        if conductor != index {
            problems.push(format!("conductor {conductor} but |Z:ker| = {index}"));
        }
        if field_deg != arith::totient(index) {
            problems.push(format!(
                "[Q(chi):Q] = {field_deg} but phi(|Z:ker|) = {}",
                arith::totient(index)
            ));
        }
        let detail = if problems.is_empty() {
            format!("M_{deg}(Q(z{index})), dimension {}", deg * deg * field_deg)
        } else {
            problems.join("; ")
        };
        report.push(CheckResult::new(
            format!("{tag}: component invariants"),
            problems.is_empty(),
            detail,
        ));
    }
    report
}
