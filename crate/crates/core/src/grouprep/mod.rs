//! Concrete finite p-groups with exact normal-form multiplication, and the
//! structural queries (classes, center, commutator subgroups, section types)
//! that the oracle is built on.
//!
//! Elements are `u32` indices into the mixed-radix encoding of their
//! exponent vector, first coordinate most significant, so the canonical
//! order is lexicographic and the identity is `0`. Increasing the last
//! nonzero coordinate of `x` by one is right multiplication by the matching
//! coordinate generator, for every kind.
//!
//! Commutators are `[g, h] = g⁻¹h⁻¹gh`.

mod pc;
mod subgroup;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::abelian::AbelianPType;
use crate::arith;
use crate::error::{Error, Result};
use crate::families::TwoGenParams;

pub use pc::PcPresentation;
pub use subgroup::{
    abelian_type, center, commutator_with_group, conjugacy_classes, derived_subgroup,
    lower_central_series, nilpotency_class, quotient_type, Subgroup,
};

pub type Elem = u32;

/// Largest group this module will realize.
pub const MAX_ORDER: u64 = 1 << 24;

const RANDOM_TRIPLES: usize = 100_000;
const EXHAUSTIVE_LIMIT: u64 = 81;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    TwoGenClass2,
    Metacyclic,
    Abelian,
    Polycyclic,
}

#[derive(Debug, Clone)]
enum Engine {
    TwoGen {
        t: TwoGenParams,
        /// `p^α`, `p^β`, `p^γ`, `p^ρ`, `p^σ`.
        pa: u64,
        pb: u64,
        pg: u64,
        pr: u64,
        ps: u64,
    },
    Metacyclic {
        px: u64,
        py: u64,
        /// `(1+p)^{-j} mod p^{n+1}`.
        twist: Vec<u64>,
    },
    Abelian,
    Pc(pc::PcEngine),
}

/// A realized finite p-group.
#[derive(Debug, Clone)]
pub struct FiniteGroupRep {
    kind: GroupKind,
    label: String,
    p: u64,
    moduli: Vec<u64>,
    /// Place value of each coordinate.
    radix: Vec<u64>,
    order: u64,
    engine: Engine,
}

impl FiniteGroupRep {
    fn assemble(
        kind: GroupKind,
        label: String,
        p: u64,
        moduli: Vec<u64>,
        engine: Engine,
    ) -> Result<Self> {
        let mut order: u64 = 1;
        for &m in &moduli {
            order =
                order
                    .checked_mul(m)
                    .filter(|&o| o <= MAX_ORDER)
                    .ok_or(Error::BoundExceeded {
                        order: u64::MAX,
                        bound: MAX_ORDER,
                    })?;
        }
        let mut radix = vec![1u64; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            radix[i] = radix[i + 1] * moduli[i + 1];
        }
        Ok(Self {
            kind,
            label,
            p,
            moduli,
            radix,
            order,
            engine,
        })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Per-coordinate moduli; their product is the group order.
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    pub fn coords(&self, x: Elem) -> Vec<u64> {
        let x = x as u64;
        self.moduli
            .iter()
            .zip(&self.radix)
            .map(|(&m, &r)| (x / r) % m)
            .collect()
    }

    /// The element with the given exponent vector; entries are reduced.
    pub fn from_coords(&self, c: &[u64]) -> Elem {
        c.iter()
            .zip(&self.moduli)
            .zip(&self.radix)
            .map(|((&e, &m), &r)| (e % m) * r)
            .sum::<u64>() as Elem
    }

    /// The coordinate generators; they generate the group.
    pub fn generators(&self) -> Vec<Elem> {
        self.radix.iter().map(|&r| r as Elem).collect()
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.engine {
            Engine::TwoGen {
                pa, pb, pg, pr, ps, ..
            } => {
                let (pbg, pg_) = (pb * pg, *pg);
                let (x, y) = (x as u64, y as u64);
                let (i1, j1, k1) = (x / pbg, (x / pg_) % pb, x % pg_);
                let (i2, j2, k2) = (y / pbg, (y / pg_) % pb, y % pg_);
                let mut i = i1 + i2;
                let mut j = j1 + j2;
                // c^{-j1 i2}, kept nonnegative modulo p^γ.
                let mut k = k1 + k2 + pg_ - (j1 % pg_) * (i2 % pg_) % pg_;
                if i >= *pa {
                    i -= pa;
                    k += pr;
                }
                if j >= *pb {
                    j -= pb;
                    k += ps;
                }
                ((i * pb + j) * pg_ + k % pg_) as Elem
            }
            Engine::Metacyclic { px, py, twist } => {
                let (x, y) = (x as u64, y as u64);
                let (i1, j1) = (x / py, x % py);
                let (i2, j2) = (y / py, y % py);
                let i = (i1 + i2 * twist[j1 as usize]) % px;
                (i * py + (j1 + j2) % py) as Elem
            }
            Engine::Abelian => {
                let (cx, cy) = (self.coords(x), self.coords(y));
                let c: Vec<u64> = cx.iter().zip(&cy).map(|(a, b)| a + b).collect();
                self.from_coords(&c)
            }
            Engine::Pc(e) => e.mul(0, x, y),
        }
    }

    pub fn pow(&self, x: Elem, mut e: u64) -> Elem {
        let (mut acc, mut base) = (0, x);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: Elem) -> Elem {
        self.pow(x, self.order - 1)
    }

    /// `g⁻¹ x g`.
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.inv(g), self.mul(x, g))
    }

    /// `[x, y] = x⁻¹y⁻¹xy`.
    pub fn comm(&self, x: Elem, y: Elem) -> Elem {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inv(yx), xy)
    }

    pub fn element_order(&self, x: Elem) -> u64 {
        let (mut o, mut y) = (1, x);
        while y != 0 {
            y = self.mul(y, x);
            o += 1;
        }
        o
    }

    /// Largest element order.
    pub fn exponent(&self) -> u64 {
        let mut e = 1;
        for x in self.elements() {
            let mut o = e;
            // Orders are powers of p: only test whether x^e is trivial.
            while self.pow(x, o) != 0 {
                o *= self.p;
            }
            e = o;
        }
        e
    }

    /// Associativity on all triples for tiny groups, otherwise on all
    /// generator triples plus `RANDOM_TRIPLES` seeded random triples.
    pub fn check_associativity(&self) -> Result<()> {
        let bad = |x: Elem, y: Elem, z: Elem| {
            (self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z))).then(|| {
                Error::InconsistentPresentation(format!(
                    "{}: ({:?}*{:?})*{:?} differs from {:?}*({:?}*{:?})",
                    self.label,
                    self.coords(x),
                    self.coords(y),
                    self.coords(z),
                    self.coords(x),
                    self.coords(y),
                    self.coords(z)
                ))
            })
        };
        if self.order <= EXHAUSTIVE_LIMIT {
            for x in self.elements() {
                for y in self.elements() {
                    for z in self.elements() {
                        if let Some(e) = bad(x, y, z) {
                            return Err(e);
                        }
                    }
                }
            }
            return Ok(());
        }
        let gens = self.generators();
        for &x in &gens {
            for &y in &gens {
                for &z in &gens {
                    if let Some(e) = bad(x, y, z) {
                        return Err(e);
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x9a5e_11ed ^ self.order);
        let mut pick = || (rng.next_u64() % self.order) as Elem;
        for _ in 0..RANDOM_TRIPLES {
            let (x, y, z) = (pick(), pick(), pick());
            if let Some(e) = bad(x, y, z) {
                return Err(e);
            }
        }
        Ok(())
    }
}

/// `G_(α,β,γ;ρ,σ)` in normal form `a^i b^j c^k`, `c = [a, b]`.
pub fn make_two_gen(t: &TwoGenParams) -> Result<FiniteGroupRep> {
    t.validate()?;
    let p = t.p;
    let pw = |e| arith::pow(p, e);
    let engine = Engine::TwoGen {
        t: *t,
        pa: pw(t.alpha),
        pb: pw(t.beta),
        pg: pw(t.gamma),
        pr: pw(t.rho),
        ps: pw(t.sigma),
    };
    let g = FiniteGroupRep::assemble(
        GroupKind::TwoGenClass2,
        format!("G{t} p={p}"),
        p,
        vec![pw(t.alpha), pw(t.beta), pw(t.gamma)],
        engine,
    )?;
    g.check_associativity()?;
    Ok(g)
}

impl FiniteGroupRep {
    /// Parameters of a two-generator group.
    pub fn two_gen_params(&self) -> Option<TwoGenParams> {
        match &self.engine {
            Engine::TwoGen { t, .. } => Some(*t),
            _ => None,
        }
    }
}

/// `⟨x, y | x^{p^{n+1}} = y^{p^n} = 1, y⁻¹xy = x^{1+p}⟩` in normal form `x^i y^j`.
pub fn make_metacyclic(n: u32, p: u64) -> Result<FiniteGroupRep> {
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    let (px, py) = (arith::pow(p, n + 1), arith::pow(p, n));
    let step = arith::mod_inv(1 + p, px).expect("1+p is a unit");
    let mut twist = Vec::with_capacity(py as usize);
    let mut cur = 1u64;
    for _ in 0..py {
        twist.push(cur);
        cur = (cur as u128 * step as u128 % px as u128) as u64;
    }
    let g = FiniteGroupRep::assemble(
        GroupKind::Metacyclic,
        format!("metacyclic n={n} p={p}"),
        p,
        vec![px, py],
        Engine::Metacyclic { px, py, twist },
    )?;
    g.check_associativity()?;
    Ok(g)
}

pub fn make_abelian(t: &AbelianPType) -> Result<FiniteGroupRep> {
    let moduli = t
        .exponents()
        .iter()
        .map(|&e| arith::pow(t.p(), e))
        .collect();
    FiniteGroupRep::assemble(
        GroupKind::Abelian,
        format!("{t}"),
        t.p(),
        moduli,
        Engine::Abelian,
    )
}

/// Realizes a power-commutator presentation; see [`PcPresentation`].
pub fn make_polycyclic(spec: &PcPresentation) -> Result<FiniteGroupRep> {
    let (p, engine) = pc::PcEngine::build(spec)?;
    let g = FiniteGroupRep::assemble(
        GroupKind::Polycyclic,
        spec.label().into(),
        p,
        spec.relative_orders().to_vec(),
        Engine::Pc(engine),
    )?;
    pc::check_relations(&g, spec)?;
    g.check_associativity()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tg(t: [u32; 5]) -> FiniteGroupRep {
        make_two_gen(&TwoGenParams::new(3, t[0], t[1], t[2], t[3], t[4]).unwrap()).unwrap()
    }

    #[test]
    fn two_gen_relations() {
        for t in [
            [2, 2, 2, 2, 2],
            [2, 2, 2, 0, 2],
            [3, 2, 1, 1, 0],
            [2, 1, 1, 0, 1],
        ] {
            let g = tg(t);
            let par = g.two_gen_params().unwrap();
            let (a, b) = (g.from_coords(&[1, 0, 0]), g.from_coords(&[0, 1, 0]));
            let c = g.comm(a, b);
            assert_eq!(c, g.from_coords(&[0, 0, 1]));
            assert_eq!(g.pow(c, arith::pow(3, par.gamma)), 0);
            assert_eq!(g.comm(c, a), 0);
            assert_eq!(g.comm(c, b), 0);
            assert_eq!(
                g.pow(a, arith::pow(3, par.alpha)),
                g.pow(c, arith::pow(3, par.rho))
            );
            assert_eq!(
                g.pow(b, arith::pow(3, par.beta)),
                g.pow(c, arith::pow(3, par.sigma))
            );
            assert_eq!(g.order(), arith::pow(3, par.n()));
        }
        let g = tg([2, 2, 2, 2, 2]);
        assert_eq!(g.element_order(g.from_coords(&[1, 0, 0])), 9);
    }

    #[test]
    fn metacyclic_relation_and_exponent() {
        for (n, p) in [(1, 3), (2, 3), (1, 5)] {
            let g = make_metacyclic(n, p).unwrap();
            let (x, y) = (g.from_coords(&[1, 0]), g.from_coords(&[0, 1]));
            assert_eq!(g.conj(x, y), g.pow(x, 1 + p));
            assert_eq!(g.exponent(), arith::pow(p, n + 1));
            assert_eq!(g.order(), arith::pow(p, 2 * n + 1));
        }
    }

    #[test]
    fn abelian_is_commutative() {
        let g = make_abelian(&AbelianPType::new(3, [1, 2]).unwrap()).unwrap();
        assert_eq!(g.order(), 27);
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(g.mul(x, y), g.mul(y, x));
            }
        }
        g.check_associativity().unwrap();
    }

    #[test]
    fn inverse_and_coords_roundtrip() {
        let g = tg([3, 2, 1, 1, 0]);
        for x in g.elements().step_by(7) {
            assert_eq!(g.mul(x, g.inv(x)), 0);
            assert_eq!(g.from_coords(&g.coords(x)), x);
        }
    }
}
