//! Decomposition data model and the three formula engines: abelian
//! (Perlis–Walker), VZ, and nested GVZ.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::abelian::{self, AbelianPType};
use crate::arith;
use crate::error::{Error, Result};

/// `multiplicity · M_{matrix_size}(Q(ζ_conductor))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimpleComponent {
    #[cfg_attr(feature = "serde", serde(rename = "mult"))]
    pub multiplicity: u64,
    #[cfg_attr(feature = "serde", serde(rename = "m"))]
    pub matrix_size: u64,
    #[cfg_attr(feature = "serde", serde(rename = "d"))]
    pub conductor: u64,
}

impl SimpleComponent {
    /// `Q`-dimension of all copies together.
    pub fn dimension(&self) -> u64 {
        self.multiplicity * self.matrix_size * self.matrix_size * arith::totient(self.conductor)
    }
}

impl fmt::Display for SimpleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicity != 1 {
            write!(f, "{} ", self.multiplicity)?;
        }
        if self.matrix_size != 1 {
            write!(f, "M{}(", self.matrix_size)?;
        }
        if self.conductor == 1 {
            write!(f, "Q")?;
        } else {
            write!(f, "Q(z{})", self.conductor)?;
        }
        if self.matrix_size != 1 {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Canonical multiset of simple components: sorted by
/// `(matrix_size, conductor)`, equal keys merged, zero multiplicities
/// omitted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WeddDecomp {
    group_order: u64,
    components: Vec<SimpleComponent>,
}

impl WeddDecomp {
    /// Canonicalizes an arbitrary component list. Does not check the
    /// dimension identity; see [`WeddDecomp::check_dimension`].
    pub fn from_components(
        group_order: u64,
        components: impl IntoIterator<Item = SimpleComponent>,
    ) -> Self {
        let mut all: Vec<SimpleComponent> = components
            .into_iter()
            .filter(|c| c.multiplicity > 0)
            .collect();
        all.sort_by_key(|c| (c.matrix_size, c.conductor));
        let mut merged: Vec<SimpleComponent> = Vec::with_capacity(all.len());
        for c in all {
            match merged.last_mut() {
                Some(last)
                    if (last.matrix_size, last.conductor) == (c.matrix_size, c.conductor) =>
                {
                    last.multiplicity += c.multiplicity;
                }
                _ => merged.push(c),
            }
        }
        Self {
            group_order,
            components: merged,
        }
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn components(&self) -> &[SimpleComponent] {
        &self.components
    }

    /// `Σ mult · m² · φ(d)`.
    pub fn dimension(&self) -> u64 {
        self.components.iter().map(SimpleComponent::dimension).sum()
    }

    pub fn check_dimension(&self) -> Result<()> {
        let dim = self.dimension();
        if dim != self.group_order {
            return Err(Error::InvalidLayers(format!(
                "dimension {dim} differs from group order {}",
                self.group_order
            )));
        }
        Ok(())
    }

    /// Merge of two decompositions of direct summands (orders multiply only
    /// for tensor products, so the caller supplies the order).
    pub fn sum(&self, other: &WeddDecomp, group_order: u64) -> WeddDecomp {
        WeddDecomp::from_components(
            group_order,
            self.components.iter().chain(&other.components).copied(),
        )
    }

    /// Components with matrix size 1.
    pub fn commutative_part(&self) -> impl Iterator<Item = &SimpleComponent> {
        self.components.iter().filter(|c| c.matrix_size == 1)
    }

    /// Number of simple components counted with multiplicity, i.e. the
    /// number of Galois classes of irreducible characters.
    pub fn total_multiplicity(&self) -> u64 {
        self.components.iter().map(|c| c.multiplicity).sum()
    }

    /// 64-bit FNV-1a digest of the rendered form; equal decompositions
    /// have equal fingerprints.
    pub fn fingerprint(&self) -> u64 {
        use core::fmt::Write;
        struct Fnv(u64);
        impl Write for Fnv {
            fn write_str(&mut self, s: &str) -> fmt::Result {
                for b in s.bytes() {
                    self.0 ^= b as u64;
                    self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
                }
                Ok(())
            }
        }
        let mut h = Fnv(0xcbf2_9ce4_8422_2325);
        let _ = write!(h, "{self}");
        h.0
    }
}

impl fmt::Display for WeddDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// True iff the canonical component multisets coincide.
pub fn decomp_equal(a: &WeddDecomp, b: &WeddDecomp) -> bool {
    a.components == b.components
}

/// One nonlinear degree `p^delta` of a nested GVZ group: the quotients
/// `Z_δ/[Z_δ, G]` and `Z_δ/[Z_{δ_prev}, G]`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GvzLayer {
    pub delta: u32,
    pub quotient: AbelianPType,
    pub prev_quotient: AbelianPType,
}

/// Combinatorial input of the nested GVZ decomposition formula.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NestedGvzData {
    p: u64,
    abelianization: AbelianPType,
    layers: Vec<GvzLayer>,
    group_order: u64,
}

impl NestedGvzData {
    pub fn new(p: u64, abelianization: AbelianPType, layers: Vec<GvzLayer>) -> Result<Self> {
        if p == 2 || !arith::is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let mismatched = core::iter::once(&abelianization)
            .chain(layers.iter().flat_map(|l| [&l.quotient, &l.prev_quotient]))
            .any(|t| t.p() != p);
        if mismatched {
            return Err(Error::InvalidLayers(format!(
                "all types must be {p}-groups"
            )));
        }
        let mut prev_delta = 0;
        let mut order: u128 = abelianization.order() as u128;
        for l in &layers {
            if l.delta <= prev_delta {
                return Err(Error::InvalidLayers(format!(
                    "delta values must be positive and strictly increasing (got {} after {prev_delta})",
                    l.delta
                )));
            }
            prev_delta = l.delta;
            if !l.prev_quotient.is_quotient_of(&l.quotient) {
                return Err(Error::InvalidLayers(format!(
                    "layer {}: {} is not a quotient of {}",
                    l.delta, l.prev_quotient, l.quotient
                )));
            }
            let irr = (l.quotient.order() - l.prev_quotient.order()) as u128;
            order += irr * (p as u128).pow(2 * l.delta);
        }
        let group_order = u64::try_from(order)
            .ok()
            .filter(|&o| arith::log_exact(o, p).is_some())
            .ok_or_else(|| {
                Error::InvalidLayers(format!("total order {order} is not a power of {p}"))
            })?;
        Ok(Self {
            p,
            abelianization,
            layers,
            group_order,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn abelianization(&self) -> &AbelianPType {
        &self.abelianization
    }

    pub fn layers(&self) -> &[GvzLayer] {
        &self.layers
    }

    /// `|G/G'| + Σ_r (|q_r| − |q'_r|) p^{2δ_r}`.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }
}

pub fn decompose_abelian(t: &AbelianPType) -> WeddDecomp {
    abelian::perlis_walker(t)
}

fn negative(size: u64, conductor: u64, value: i128) -> Error {
    Error::NegativeMultiplicity {
        size,
        conductor,
        value,
    }
}

/// VZ formula: `Q(G/G') ⊕_{d|m, d∤m'} a_d M_s(Q(ζ_d)) ⊕_{d|m'} (a_d − a'_d) M_s(Q(ζ_d))`
/// with `a_d`, `a'_d` counted in `Z(G)` and `Z(G)/G'`.
pub fn decompose_vz(
    p: u64,
    abelianization: &AbelianPType,
    center: &AbelianPType,
    center_mod_derived: &AbelianPType,
    center_index_sqrt: u64,
) -> Result<WeddDecomp> {
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if [abelianization, center, center_mod_derived]
        .iter()
        .any(|t| t.p() != p)
    {
        return Err(Error::InvalidLayers(format!(
            "all types must be {p}-groups"
        )));
    }
    if center_index_sqrt == 0 {
        return Err(Error::InvalidLayers(
            "center index root must be positive".into(),
        ));
    }
    let m = center.exponent_log();
    let m_prime = center_mod_derived.exponent_log();
    if m_prime > m {
        return Err(Error::InvalidLayers(format!(
            "exp({center_mod_derived}) does not divide exp({center})"
        )));
    }
    let mut components = Vec::new();
    for lambda in 0..=m {
        let d = arith::pow(p, lambda);
        let a = abelian::count_cyclic_subgroups(center, lambda) as i128;
        let mult = if lambda > m_prime {
            a
        } else {
            a - abelian::count_cyclic_subgroups(center_mod_derived, lambda) as i128
        };
        if mult < 0 {
            return Err(negative(center_index_sqrt, d, mult));
        }
        components.push(SimpleComponent {
            multiplicity: mult as u64,
            matrix_size: center_index_sqrt,
            conductor: d,
        });
    }
    let nonlinear = (center.order() - center_mod_derived.order()) as u128;
    let order = abelianization.order() as u128 + nonlinear * (center_index_sqrt as u128).pow(2);
    let order =
        u64::try_from(order).map_err(|_| Error::InvalidLayers("group order overflows".into()))?;
    let out = abelian::perlis_walker(abelianization)
        .sum(&WeddDecomp::from_components(order, components), order);
    out.check_dimension()?;
    Ok(out)
}

/// The nested GVZ formula. Both double sums are evaluated with the single
/// convention `a'_d := 0` whenever `d ∤ exp(q'_r)`.
pub fn decompose_nested_gvz(data: &NestedGvzData) -> Result<WeddDecomp> {
    let p = data.p;
    let mut components: Vec<SimpleComponent> = abelian::perlis_walker(&data.abelianization)
        .components()
        .to_vec();
    for layer in &data.layers {
        let size = arith::pow(p, layer.delta);
        let m_prime = layer.prev_quotient.exponent_log();
        for lambda in 0..=layer.quotient.exponent_log() {
            let a = abelian::count_cyclic_subgroups(&layer.quotient, lambda) as i128;
            let a_prime = if lambda <= m_prime {
                abelian::count_cyclic_subgroups(&layer.prev_quotient, lambda) as i128
            } else {
                0
            };
            let conductor = arith::pow(p, lambda);
            let mult = a - a_prime;
            if mult < 0 {
                return Err(negative(size, conductor, mult));
            }
            components.push(SimpleComponent {
                multiplicity: mult as u64,
                matrix_size: size,
                conductor,
            });
        }
    }
    let out = WeddDecomp::from_components(data.group_order, components);
    out.check_dimension()?;
    Ok(out)
}
