//! Concrete families of nested GVZ p-groups: two-generator class-2 groups
//! `G_(α,β,γ;ρ,σ)`, the exponent-p family of class `n+1` built from
//! generators `a_i, b_j`, the split metacyclic family
//! `⟨x, y | y⁻¹xy = x^{1+p}⟩`, and nested GVZ groups of order at most `p⁵`.
//!
//! Each family has a data constructor (feeding
//! [`decomp::decompose_nested_gvz`]) and an independent closed form.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::abelian::{self, AbelianPType, RelationMatrix};
use crate::arith;
use crate::decomp::{self, GvzLayer, NestedGvzData, SimpleComponent, WeddDecomp};
use crate::error::{Error, Result};

/// Parameters `(α, β, γ; ρ, σ)` of
/// `⟨a, b | [a,b]^{p^γ} = [a,b,a] = [a,b,b] = 1, a^{p^α} = [a,b]^{p^ρ}, b^{p^β} = [a,b]^{p^σ}⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TwoGenParams {
    pub p: u64,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub rho: u32,
    pub sigma: u32,
}

/// Which of the five p-good subsets of `τ_n` a tuple lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TauClass {
    N1,
    N2,
    N3,
    N4,
    N5,
    Invalid,
}

impl fmt::Display for TauClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TauClass::N1 => "tau_n1",
            TauClass::N2 => "tau_n2",
            TauClass::N3 => "tau_n3",
            TauClass::N4 => "tau_n4",
            TauClass::N5 => "tau_n5",
            TauClass::Invalid => "invalid",
        };
        f.write_str(s)
    }
}

impl TwoGenParams {
    /// Checks membership in `τ_n`: `α ≥ β ≥ γ ≥ 1`, `0 ≤ ρ, σ ≤ γ`, `p` odd.
    pub fn new(p: u64, alpha: u32, beta: u32, gamma: u32, rho: u32, sigma: u32) -> Result<Self> {
        let t = Self {
            p,
            alpha,
            beta,
            gamma,
            rho,
            sigma,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 2 || !arith::is_prime(self.p) {
            return Err(Error::NotOddPrime(self.p));
        }
        if !(self.alpha >= self.beta && self.beta >= self.gamma && self.gamma >= 1) {
            return Err(Error::InvalidTuple(format!(
                "need alpha >= beta >= gamma >= 1, got {self}"
            )));
        }
        if self.rho > self.gamma || self.sigma > self.gamma {
            return Err(Error::InvalidTuple(format!(
                "need rho, sigma <= gamma, got {self}"
            )));
        }
        Ok(())
    }

    /// `n = α + β + γ`; the group has order `p^n`.
    pub fn n(&self) -> u32 {
        self.alpha + self.beta + self.gamma
    }

    pub fn order(&self) -> u64 {
        arith::pow(self.p, self.n())
    }

    pub fn is_p_good(&self) -> bool {
        validate_p_good(self) != TauClass::Invalid
    }
}

impl fmt::Display for TwoGenParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{};{},{})",
            self.alpha, self.beta, self.gamma, self.rho, self.sigma
        )
    }
}

/// The unique `τ_{n_i}` containing the tuple, or `Invalid`.
pub fn validate_p_good(t: &TwoGenParams) -> TauClass {
    if t.validate().is_err() {
        return TauClass::Invalid;
    }
    let TwoGenParams {
        alpha: a,
        beta: b,
        gamma: g,
        rho: r,
        sigma: s,
        ..
    } = *t;
    let hits = [
        (TauClass::N1, s == g && a > b && b >= g && g >= r),
        (TauClass::N2, r == g && a > b && b >= g && g > s),
        (
            TauClass::N3,
            a > b && b >= g && g.min(s + a - b) > r && r > s,
        ),
        (TauClass::N4, a == b && s == g && a > g && g >= r),
        (TauClass::N5, a == b && b == g && s == g),
    ];
    let mut found = hits.iter().filter(|(_, ok)| *ok).map(|(c, _)| *c);
    let first = found.next().unwrap_or(TauClass::Invalid);
    debug_assert!(found.next().is_none(), "p-good subsets overlap at {t}");
    first
}

/// `Z(G) = ⟨a^{p^γ}, b^{p^γ}, [a,b]⟩` of `G_(α,β,γ;ρ,σ)`, from its relation lattice.
pub fn two_gen_center_type(t: &TwoGenParams) -> Result<AbelianPType> {
    two_gen_section_type(t, t.gamma, t.gamma)
}

/// The split form `C_{p^{α-ρ}} × C_{p^{β-γ}} × C_{p^ρ}` (`ρ ≤ σ`) or
/// `C_{p^{α-γ}} × C_{p^{β-σ}} × C_{p^σ}` (`σ < ρ`). It assumes
/// `⟨a^{p^γ}⟩` (resp. `⟨b^{p^γ}⟩`) is a direct factor of `Z(G)`, which
/// fails e.g. for `(2,2,2;1,2)` where `Z(G) = ⟨[a,b]⟩ ≅ C_{p^2}`; see
/// [`two_gen_center_type`] for the exact type.
pub fn split_center_type(t: &TwoGenParams) -> Result<AbelianPType> {
    t.validate()?;
    let TwoGenParams {
        p,
        alpha,
        beta,
        gamma,
        rho,
        sigma,
    } = *t;
    if rho <= sigma {
        AbelianPType::new(p, vec![alpha - rho, beta - gamma, rho])
    } else {
        AbelianPType::new(p, vec![alpha - gamma, beta - sigma, sigma])
    }
}

fn pp(p: u64, e: u32) -> i64 {
    i64::try_from(arith::pow(p, e)).expect("relation entry overflows i64")
}

/// Type of `⟨a^{p^δ}, b^{p^δ}, [a,b]⟩ / ⟨[a,b]^{p^e}⟩` for `e ≤ δ`, from the
/// relation lattice on `u = a^{p^δ}`, `v = b^{p^δ}`, `w = [a,b]`.
pub fn two_gen_section_type(t: &TwoGenParams, delta: u32, e: u32) -> Result<AbelianPType> {
    t.validate()?;
    if delta == 0 || delta > t.gamma || e > delta {
        return Err(Error::InvalidTuple(format!(
            "section (delta={delta}, e={e}) outside 1..=gamma"
        )));
    }
    let p = t.p;
    let rows = vec![
        vec![pp(p, t.alpha - delta), 0, -pp(p, t.rho)],
        vec![0, pp(p, t.beta - delta), -pp(p, t.sigma)],
        vec![0, 0, pp(p, t.gamma)],
        vec![0, 0, pp(p, e)],
    ];
    abelian::smith_invariants(&RelationMatrix::new(3, rows)?, p)
}

/// `G/G'` from the presentation: `a^{p^α}` and `b^{p^β}` lie in `G'`.
pub fn two_gen_abelianization(t: &TwoGenParams) -> Result<AbelianPType> {
    t.validate()?;
    let rows = vec![vec![pp(t.p, t.alpha), 0], vec![0, pp(t.p, t.beta)]];
    abelian::smith_invariants(&RelationMatrix::new(2, rows)?, t.p)
}

/// Layers `δ = 1..=γ` with `Z_δ = ⟨a^{p^δ}, b^{p^δ}, [a,b]⟩` and
/// `[Z_δ, G] = ⟨[a,b]^{p^δ}⟩`.
pub fn two_gen_gvz_data(t: &TwoGenParams) -> Result<NestedGvzData> {
    let abelianization = two_gen_abelianization(t)?;
    let layers = (1..=t.gamma)
        .map(|delta| {
            Ok(GvzLayer {
                delta,
                quotient: two_gen_section_type(t, delta, delta)?,
                prev_quotient: two_gen_section_type(t, delta, delta - 1)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let data = NestedGvzData::new(t.p, abelianization, layers)?;
    if data.group_order() != t.order() {
        return Err(Error::InvalidTuple(format!(
            "layer data gives order {} instead of {}",
            data.group_order(),
            t.order()
        )));
    }
    Ok(data)
}

pub fn two_gen_decompose(t: &TwoGenParams) -> Result<WeddDecomp> {
    decomp::decompose_nested_gvz(&two_gen_gvz_data(t)?)
}

/// Accumulates `mult · M_size(Q(ζ_conductor))` terms.
struct Terms {
    p: u64,
    items: Vec<SimpleComponent>,
}

impl Terms {
    fn new(p: u64) -> Self {
        Self {
            p,
            items: vec![SimpleComponent {
                multiplicity: 1,
                matrix_size: 1,
                conductor: 1,
            }],
        }
    }

    /// `mult · M_{p^size_log}(Q(ζ_{p^conductor_log}))`.
    fn push(&mut self, mult: u64, size_log: u32, conductor_log: u32) {
        self.items.push(SimpleComponent {
            multiplicity: mult,
            matrix_size: arith::pow(self.p, size_log),
            conductor: arith::pow(self.p, conductor_log),
        });
    }

    fn finish(self, order_log: u32) -> Result<WeddDecomp> {
        let d = WeddDecomp::from_components(arith::pow(self.p, order_log), self.items);
        d.check_dimension()?;
        Ok(d)
    }
}

/// Closed form for `(γ, γ, γ; ρ, γ) ∈ τ_{n_5}`, split on `γ ≤ 2ρ + 1`.
pub fn closed_form_tau5(t: &TwoGenParams) -> Result<WeddDecomp> {
    if validate_p_good(t) != TauClass::N5 {
        return Err(Error::NotTau5);
    }
    let p = t.p;
    let (g, r) = (t.gamma, t.rho);
    let pw = |e: u32| arith::pow(p, e);
    let mut terms = Terms::new(p);
    for m in 1..=g {
        terms.push(pw(m) + pw(m - 1), 0, m);
    }
    // Layers δ ≤ low carry the Q(ζ_{p^δ}) block and the m-range block.
    let low = if g <= 2 * r + 1 { g / 2 } else { r };
    for delta in 1..=low {
        terms.push(pw(2 * delta), delta, delta);
        for m in delta + 1..=g - delta {
            terms.push(pw(m + delta) - pw(m + delta - 2), delta, m);
        }
    }
    if g > 2 * r + 1 {
        for delta in r + 1..=g - r - 1 {
            terms.push(pw(g + r - delta), delta, g - r);
        }
    }
    let high_start = if g <= 2 * r + 1 { g / 2 + 1 } else { g - r };
    for delta in high_start..=g {
        terms.push(pw(2 * (g - delta)), delta, delta);
    }
    terms.finish(t.n())
}

fn nenciu_check(n: u32, p: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    if p <= n as u64 + 1 {
        return Err(Error::PrimeTooSmall {
            p,
            bound: n as u64 + 1,
        });
    }
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Exponent-p family of order `p^{2n+1}` and class `n+1` (`p > n+1`):
/// `q_r` elementary of rank `n−r+1`, `q'_r` of rank `n−r`.
pub fn nenciu_gvz_data(n: u32, p: u64) -> Result<NestedGvzData> {
    nenciu_check(n, p)?;
    let layers = (1..=n)
        .map(|r| {
            Ok(GvzLayer {
                delta: r,
                quotient: AbelianPType::elementary(p, (n - r + 1) as usize)?,
                prev_quotient: AbelianPType::elementary(p, (n - r) as usize)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    NestedGvzData::new(p, AbelianPType::elementary(p, n as usize + 1)?, layers)
}

/// `Q ⊕ (1+p+…+pⁿ) Q(ζ_p) ⊕_{r=1}^{n} p^{n−r} M_{p^r}(Q(ζ_p))`.
pub fn closed_form_nenciu(n: u32, p: u64) -> Result<WeddDecomp> {
    nenciu_check(n, p)?;
    let mut terms = Terms::new(p);
    terms.push((0..=n).map(|i| arith::pow(p, i)).sum(), 0, 1);
    for r in 1..=n {
        terms.push(arith::pow(p, n - r), r, 1);
    }
    terms.finish(2 * n + 1)
}

fn lewis_check(n: u32, p: u64) -> Result<()> {
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    Ok(())
}

/// Split metacyclic family `C_{p^{n+1}} ⋊ C_{p^n}`:
/// `q_r = C_p × C_{p^{n−r}}`, `q'_r = C_{p^{n−r}}`.
pub fn lewis_gvz_data(n: u32, p: u64) -> Result<NestedGvzData> {
    lewis_check(n, p)?;
    let layers = (1..=n)
        .map(|r| {
            Ok(GvzLayer {
                delta: r,
                quotient: AbelianPType::new(p, vec![1, n - r])?,
                prev_quotient: AbelianPType::new(p, vec![n - r])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    NestedGvzData::new(p, AbelianPType::new(p, vec![1, n])?, layers)
}

/// Closed form for the split metacyclic family; empty index ranges
/// contribute nothing.
pub fn closed_form_lewis(n: u32, p: u64) -> Result<WeddDecomp> {
    lewis_check(n, p)?;
    let mut terms = Terms::new(p);
    terms.push(p + 1, 0, 1);
    for r in 2..=n {
        terms.push(p, 0, r);
    }
    for r in 1..n {
        terms.push(p, r, 1);
    }
    for r in 1..=n.saturating_sub(2) {
        for m in 2..=n - r {
            terms.push(p - 1, r, m);
        }
    }
    terms.push(1, n, 1);
    terms.finish(2 * n + 1)
}

/// VZ invariants of a class-2 group: `Z(G)`, `Z(G)/G'` and
/// `|G : Z(G)|^{1/2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VzInvariants {
    pub center: AbelianPType,
    pub center_mod_derived: AbelianPType,
    pub center_index_sqrt: u64,
}

/// A nested GVZ group of order at most `p⁵`, described by invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P5Input {
    p: u64,
    nilpotency_class: u32,
    abelianization: AbelianPType,
    vz: Option<VzInvariants>,
}

impl P5Input {
    pub fn new(
        p: u64,
        nilpotency_class: u32,
        abelianization: AbelianPType,
        vz: Option<VzInvariants>,
    ) -> Result<Self> {
        if p == 2 || !arith::is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        match (nilpotency_class, &vz) {
            (2, Some(_)) => {}
            (2, None) => {
                return Err(Error::InvalidParameters(
                    "class-2 input needs center, center_mod_derived and center_index_sqrt".into(),
                ))
            }
            (3, _) => {
                if abelianization.order_log() != 3 {
                    return Err(Error::InvalidParameters(format!(
                        "class-3 groups of order p^5 have |G/G'| = p^3, got {abelianization}"
                    )));
                }
            }
            (c, _) => return Err(Error::BadClass(c)),
        }
        if abelianization.p() != p {
            return Err(Error::InvalidParameters(format!(
                "abelianization is not a {p}-group"
            )));
        }
        Ok(Self {
            p,
            nilpotency_class,
            abelianization,
            vz,
        })
    }

    pub fn class3(p: u64, abelianization: AbelianPType) -> Result<Self> {
        Self::new(p, 3, abelianization, None)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nilpotency_class(&self) -> u32 {
        self.nilpotency_class
    }

    pub fn abelianization(&self) -> &AbelianPType {
        &self.abelianization
    }
}

/// Class 2: the VZ formula. Class 3: `Q(G/G') ⊕ p M_p(Q(ζ_p)) ⊕ M_{p²}(Q(ζ_p))`.
pub fn p5_decompose(input: &P5Input) -> Result<WeddDecomp> {
    let p = input.p;
    let out = match &input.vz {
        Some(vz) if input.nilpotency_class == 2 => decomp::decompose_vz(
            p,
            &input.abelianization,
            &vz.center,
            &vz.center_mod_derived,
            vz.center_index_sqrt,
        )?,
        _ => {
            let mut terms = Terms::new(p);
            terms.items = abelian::perlis_walker(&input.abelianization)
                .components()
                .to_vec();
            terms.push(p, 1, 1);
            terms.push(1, 2, 1);
            terms.finish(5)?
        }
    };
    if out.group_order() > arith::pow(p, 5) {
        return Err(Error::InvalidParameters(format!(
            "group order {} exceeds p^5",
            out.group_order()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tg(p: u64, t: [u32; 5]) -> TwoGenParams {
        TwoGenParams::new(p, t[0], t[1], t[2], t[3], t[4]).unwrap()
    }

    fn ty(p: u64, e: &[u32]) -> AbelianPType {
        AbelianPType::new(p, e.to_vec()).unwrap()
    }

    #[test]
    fn tau_membership() {
        assert_eq!(validate_p_good(&tg(3, [2, 2, 2, 2, 2])), TauClass::N5);
        assert_eq!(validate_p_good(&tg(3, [3, 2, 1, 1, 1])), TauClass::N1);
        assert_eq!(validate_p_good(&tg(3, [2, 2, 2, 2, 1])), TauClass::Invalid);
        assert_eq!(validate_p_good(&tg(3, [3, 2, 2, 2, 1])), TauClass::N2);
        assert_eq!(validate_p_good(&tg(3, [4, 2, 2, 1, 0])), TauClass::N3);
        assert_eq!(validate_p_good(&tg(3, [2, 2, 1, 0, 1])), TauClass::N4);
        assert!(TwoGenParams::new(3, 1, 2, 1, 0, 0).is_err());
        assert!(TwoGenParams::new(2, 1, 1, 1, 0, 0).is_err());
    }

    #[test]
    fn center_types() {
        assert_eq!(
            two_gen_center_type(&tg(3, [2, 2, 2, 2, 2])).unwrap(),
            ty(3, &[2])
        );
        assert_eq!(
            two_gen_center_type(&tg(3, [2, 2, 2, 0, 2])).unwrap(),
            ty(3, &[2])
        );
        assert_eq!(
            two_gen_center_type(&tg(3, [3, 2, 1, 1, 1])).unwrap(),
            ty(3, &[2, 1, 1])
        );
        assert_eq!(
            split_center_type(&tg(3, [3, 2, 1, 1, 1])).unwrap(),
            ty(3, &[2, 1, 1])
        );
        assert_eq!(
            two_gen_center_type(&tg(3, [2, 2, 2, 1, 2])).unwrap(),
            ty(3, &[2])
        );
        assert_eq!(
            split_center_type(&tg(3, [2, 2, 2, 1, 2])).unwrap(),
            ty(3, &[1, 1])
        );
        assert_eq!(
            two_gen_center_type(&tg(3, [3, 2, 2, 2, 1])).unwrap(),
            ty(3, &[1, 2])
        );
    }

    #[test]
    fn worked_example_layers() {
        let data = two_gen_gvz_data(&tg(3, [2, 2, 2, 2, 2])).unwrap();
        let l = data.layers();
        assert_eq!(
            (l[0].quotient.clone(), l[0].prev_quotient.clone()),
            (ty(3, &[1, 1, 1]), ty(3, &[1, 1]))
        );
        assert_eq!(
            (l[1].quotient.clone(), l[1].prev_quotient.clone()),
            (ty(3, &[2]), ty(3, &[1]))
        );
        let data = two_gen_gvz_data(&tg(3, [1, 1, 1, 1, 1])).unwrap();
        assert_eq!(data.layers().len(), 1);
        assert_eq!(data.layers()[0].quotient, ty(3, &[1]));
        assert!(data.layers()[0].prev_quotient.is_trivial());
    }

    #[test]
    fn tau5_closed_forms() {
        let g1 = "Q + 4 Q(z3) + 12 Q(z9) + 9 M3(Q(z3)) + M9(Q(z9))";
        let g3 = "Q + 4 Q(z3) + 12 Q(z9) + 3 M3(Q(z9)) + M9(Q(z9))";
        assert_eq!(
            closed_form_tau5(&tg(3, [2, 2, 2, 2, 2]))
                .unwrap()
                .to_string(),
            g1
        );
        assert_eq!(
            closed_form_tau5(&tg(3, [2, 2, 2, 1, 2]))
                .unwrap()
                .to_string(),
            g1
        );
        assert_eq!(
            closed_form_tau5(&tg(3, [2, 2, 2, 0, 2]))
                .unwrap()
                .to_string(),
            g3
        );
        assert_eq!(
            closed_form_tau5(&tg(3, [1, 1, 1, 0, 1]))
                .unwrap()
                .to_string(),
            "Q + 4 Q(z3) + M3(Q(z3))"
        );
        assert_eq!(
            closed_form_tau5(&tg(3, [3, 2, 1, 1, 1])),
            Err(Error::NotTau5)
        );
    }

    #[test]
    fn tau5_closed_form_matches_generic() {
        for p in [3, 5, 7] {
            for gamma in 1..=4 {
                for rho in 0..=gamma {
                    let t = tg(p, [gamma, gamma, gamma, rho, gamma]);
                    assert_eq!(
                        closed_form_tau5(&t).unwrap(),
                        two_gen_decompose(&t).unwrap(),
                        "{t}"
                    );
                }
            }
        }
    }

    #[test]
    fn family_closed_forms() {
        assert_eq!(
            closed_form_nenciu(1, 3).unwrap().to_string(),
            "Q + 4 Q(z3) + M3(Q(z3))"
        );
        assert_eq!(
            closed_form_nenciu(2, 5).unwrap().to_string(),
            "Q + 31 Q(z5) + 5 M5(Q(z5)) + M25(Q(z5))"
        );
        assert_eq!(
            closed_form_nenciu(1, 5).unwrap().to_string(),
            "Q + 6 Q(z5) + M5(Q(z5))"
        );
        assert_eq!(
            closed_form_nenciu(3, 2),
            Err(Error::PrimeTooSmall { p: 2, bound: 4 })
        );
        assert_eq!(
            closed_form_lewis(1, 3).unwrap().to_string(),
            "Q + 4 Q(z3) + M3(Q(z3))"
        );
        assert_eq!(
            closed_form_lewis(2, 3).unwrap().to_string(),
            "Q + 4 Q(z3) + 3 Q(z9) + 3 M3(Q(z3)) + M9(Q(z3))"
        );
        let l3 = closed_form_lewis(3, 3).unwrap();
        assert!(l3.components().contains(&SimpleComponent {
            multiplicity: 2,
            matrix_size: 3,
            conductor: 9
        }));
        assert_eq!(closed_form_lewis(2, 2), Err(Error::NotOddPrime(2)));
    }

    #[test]
    fn family_data_layers() {
        let d = nenciu_gvz_data(2, 5).unwrap();
        let ranks: Vec<(usize, usize)> = d
            .layers()
            .iter()
            .map(|l| (l.quotient.rank(), l.prev_quotient.rank()))
            .collect();
        assert_eq!(ranks, vec![(2, 1), (1, 0)]);
        assert_eq!(d.abelianization().rank(), 3);
        let d = lewis_gvz_data(2, 3).unwrap();
        assert_eq!(d.layers()[0].quotient, ty(3, &[1, 1]));
        assert_eq!(d.layers()[0].prev_quotient, ty(3, &[1]));
        assert_eq!(d.layers()[1].quotient, ty(3, &[1]));
        assert!(d.layers()[1].prev_quotient.is_trivial());
    }

    #[test]
    fn closed_forms_match_generic_families() {
        for n in 1..=3 {
            for p in [3u64, 5, 7, 11] {
                if p > n as u64 + 1 {
                    assert_eq!(
                        closed_form_nenciu(n, p).unwrap(),
                        decomp::decompose_nested_gvz(&nenciu_gvz_data(n, p).unwrap()).unwrap()
                    );
                }
                assert_eq!(
                    closed_form_lewis(n, p).unwrap(),
                    decomp::decompose_nested_gvz(&lewis_gvz_data(n, p).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn p5_examples() {
        let d = p5_decompose(&P5Input::class3(3, ty(3, &[1, 1, 1])).unwrap()).unwrap();
        assert_eq!(d.to_string(), "Q + 13 Q(z3) + 3 M3(Q(z3)) + M9(Q(z3))");
        assert_eq!(d.dimension(), 243);
        let d = p5_decompose(&P5Input::class3(3, ty(3, &[1, 2])).unwrap()).unwrap();
        assert_eq!(
            d.to_string(),
            "Q + 4 Q(z3) + 3 Q(z9) + 3 M3(Q(z3)) + M9(Q(z3))"
        );
        let vz = VzInvariants {
            center: ty(3, &[1]),
            center_mod_derived: ty(3, &[]),
            center_index_sqrt: 3,
        };
        let input = P5Input::new(3, 2, ty(3, &[1, 1]), Some(vz.clone())).unwrap();
        assert_eq!(
            p5_decompose(&input).unwrap(),
            decomp::decompose_vz(3, &ty(3, &[1, 1]), &vz.center, &vz.center_mod_derived, 3)
                .unwrap()
        );
        assert_eq!(
            P5Input::new(3, 4, ty(3, &[1, 1, 1]), None),
            Err(Error::BadClass(4))
        );
        assert!(P5Input::class3(3, ty(3, &[1, 1])).is_err());
    }

    #[test]
    fn two_gen_abelian_part() {
        let t = tg(3, [3, 2, 1, 1, 1]);
        let d = two_gen_decompose(&t).unwrap();
        let p = 3u64;
        for c in d.commutative_part() {
            let lambda = arith::log_exact(c.conductor, p).unwrap();
            let expected = match lambda {
                0 => 1,
                l if l <= t.beta => p.pow(l) + p.pow(l - 1),
                _ => p.pow(t.beta),
            };
            assert_eq!(c.multiplicity, expected, "{c}");
        }
    }
}
