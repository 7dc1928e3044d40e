//! Subgroups as element sets, and closure-based structural queries.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Elem, FiniteGroupRep};
use crate::abelian::AbelianPType;
use crate::arith;
use crate::error::{Error, Result};

/// A subgroup of a realized group, stored as its sorted element list.
#[derive(Debug, Clone)]
pub struct Subgroup<'g> {
    group: &'g FiniteGroupRep,
    elements: Vec<Elem>,
    members: Vec<u64>,
    generators: Vec<Elem>,
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.group, other.group) && self.elements == other.elements
    }
}

impl Eq for Subgroup<'_> {}

fn bitset(n: u64, elems: &[Elem]) -> Vec<u64> {
    let mut bits = vec![0u64; (n as usize).div_ceil(64)];
    for &x in elems {
        bits[x as usize / 64] |= 1 << (x % 64);
    }
    bits
}

impl<'g> Subgroup<'g> {
    /// `⟨gens⟩`.
    pub fn generated(group: &'g FiniteGroupRep, gens: &[Elem]) -> Self {
        let gens: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut members = vec![0u64; (group.order() as usize).div_ceil(64)];
        let mut elements = vec![0];
        members[0] |= 1;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = group.mul(x, g);
                let (w, b) = (y as usize / 64, y % 64);
                if members[w] >> b & 1 == 0 {
                    members[w] |= 1 << b;
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        elements.sort_unstable();
        Self {
            group,
            elements,
            members,
            generators: gens,
        }
    }

    /// The subgroup with exactly these elements; they must be closed under
    /// multiplication.
    pub fn from_elements(group: &'g FiniteGroupRep, elems: &[Elem]) -> Result<Self> {
        let mut elements = elems.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let members = bitset(group.order(), &elements);
        let mut sub = Self {
            group,
            elements,
            members,
            generators: Vec::new(),
        };
        sub.generators = sub.greedy_generators();
        if Self::generated(group, &sub.generators).elements != sub.elements {
            return Err(Error::InvalidParameters(format!(
                "{} elements of {} do not form a subgroup",
                sub.elements.len(),
                group.label()
            )));
        }
        Ok(sub)
    }

    pub fn trivial(group: &'g FiniteGroupRep) -> Self {
        Self::generated(group, &[])
    }

    pub fn whole(group: &'g FiniteGroupRep) -> Self {
        Self::generated(group, &group.generators())
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(group: &'g FiniteGroupRep, gens: &[Elem]) -> Self {
        let mut gens: Vec<Elem> = gens.to_vec();
        let ggens = group.generators();
        loop {
            let sub = Self::generated(group, &gens);
            let missing: Vec<Elem> = sub
                .generators
                .iter()
                .flat_map(|&x| ggens.iter().map(move |&g| (x, g)))
                .map(|(x, g)| group.conj(x, g))
                .filter(|&y| !sub.contains(y))
                .collect();
            if missing.is_empty() {
                return sub;
            }
            gens.extend(missing);
        }
    }

    fn greedy_generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut cur = Self::trivial(self.group);
        for &x in &self.elements {
            if !cur.contains(x) {
                gens.push(x);
                cur = Self::generated(self.group, &gens);
                if cur.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    pub fn group(&self) -> &'g FiniteGroupRep {
        self.group
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    /// Generating witnesses.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members[x as usize / 64] >> (x % 64) & 1 == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<'_>) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Normal in `h`, which must contain it.
    pub fn is_normal_in(&self, h: &Subgroup<'_>) -> bool {
        self.is_subgroup_of(h)
            && h.generators.iter().all(|&g| {
                self.generators
                    .iter()
                    .all(|&x| self.contains(self.group.conj(x, g)))
            })
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal_in(&Subgroup::whole(self.group))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&x| {
            g.iter()
                .all(|&y| self.group.mul(x, y) == self.group.mul(y, x))
        })
    }
}

/// Conjugacy classes, each sorted, ordered by least element (the identity
/// class comes first).
pub fn conjugacy_classes(g: &FiniteGroupRep) -> Vec<Vec<Elem>> {
    let n = g.order() as usize;
    let gens = g.generators();
    let ginv: Vec<Elem> = gens.iter().map(|&x| g.inv(x)).collect();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in g.elements() {
        if seen[x as usize] {
            continue;
        }
        seen[x as usize] = true;
        let mut class = vec![x];
        let mut i = 0;
        while i < class.len() {
            let y = class[i];
            for (&s, &si) in gens.iter().zip(&ginv) {
                let z = g.mul(si, g.mul(y, s));
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    class.push(z);
                }
            }
            i += 1;
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

pub fn center(g: &FiniteGroupRep) -> Subgroup<'_> {
    let gens = g.generators();
    let elems: Vec<Elem> = g
        .elements()
        .filter(|&x| gens.iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
        .collect();
    Subgroup::from_elements(g, &elems).expect("the center is a subgroup")
}

/// `[N, G]` for a normal subgroup `N`.
pub fn commutator_with_group<'g>(n: &Subgroup<'g>) -> Subgroup<'g> {
    let g = n.group();
    let comms: Vec<Elem> = n
        .generators()
        .iter()
        .flat_map(|&x| g.generators().into_iter().map(move |s| g.comm(x, s)))
        .collect();
    Subgroup::normal_closure(g, &comms)
}

pub fn derived_subgroup(g: &FiniteGroupRep) -> Subgroup<'_> {
    commutator_with_group(&Subgroup::whole(g))
}

/// `G = γ_1 ⊇ γ_2 ⊇ …`, ending at the first trivial term (or repetition).
pub fn lower_central_series(g: &FiniteGroupRep) -> Vec<Subgroup<'_>> {
    let mut series = vec![Subgroup::whole(g)];
    loop {
        let last = series.last().expect("series is nonempty");
        let next = commutator_with_group(last);
        let stop = next.order() == last.order() || next.is_trivial();
        series.push(next);
        if stop {
            return series;
        }
    }
}

/// Nilpotency class; `None` if the group is not nilpotent.
pub fn nilpotency_class(g: &FiniteGroupRep) -> Option<usize> {
    let series = lower_central_series(g);
    let last = series.last().expect("series is nonempty");
    last.is_trivial().then(|| series.len() - 1)
}

/// Type of the abelian section `H/N`, read off the census
/// `c_i = #{x ∈ H : x^{p^i} ∈ N}`: `log_p(c_i/|N|) = Σ_j min(α_j, i)`.
pub fn quotient_type(h: &Subgroup<'_>, n: &Subgroup<'_>) -> Result<AbelianPType> {
    let g = h.group();
    let p = g.p();
    if !n.is_normal_in(h) {
        return Err(Error::NotNormal);
    }
    let gens = h.generators();
    for &x in gens {
        for &y in gens {
            if !n.contains(g.comm(x, y)) {
                return Err(Error::NotAbelian);
            }
        }
    }
    let index = h.order() / n.order();
    let total = arith::log_exact(index, p).ok_or(Error::NotPGroup { p, divisor: index })?;
    let mut powers: Vec<Elem> = h.elements().to_vec();
    let mut sums = vec![0u32];
    while *sums.last().expect("nonempty") < total {
        powers.iter_mut().for_each(|x| *x = g.pow(*x, p));
        let c = powers.iter().filter(|&&x| n.contains(x)).count() as u64;
        let s = arith::log_exact(c / n.order(), p).ok_or(Error::NotPGroup { p, divisor: c })?;
        sums.push(s);
    }
    // r_i = #{j : α_j ≥ i} = s_i − s_{i−1}.
    let r: Vec<u32> = sums.windows(2).map(|w| w[1] - w[0]).collect();
    let mut exponents = Vec::new();
    for (i, &ri) in r.iter().enumerate() {
        let next = r.get(i + 1).copied().unwrap_or(0);
        exponents.extend(core::iter::repeat_n(i as u32 + 1, (ri - next) as usize));
    }
    AbelianPType::new(p, exponents)
}

/// Type of an abelian subgroup.
pub fn abelian_type(s: &Subgroup<'_>) -> Result<AbelianPType> {
    if !s.is_abelian() {
        return Err(Error::NotAbelian);
    }
    quotient_type(s, &Subgroup::trivial(s.group()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::TwoGenParams;
    use crate::grouprep::{
        make_abelian, make_metacyclic, make_polycyclic, make_two_gen, PcPresentation,
    };

    fn ty(p: u64, e: &[u32]) -> AbelianPType {
        AbelianPType::new(p, e.to_vec()).unwrap()
    }

    #[test]
    fn class_equation_and_center() {
        let g = make_two_gen(&TwoGenParams::new(3, 1, 1, 1, 0, 1).unwrap()).unwrap();
        let classes = conjugacy_classes(&g);
        assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), 27);
        assert_eq!(classes.len(), 11);
        let z = center(&g);
        assert_eq!(z.order(), 3);
        let singletons: Vec<Elem> = classes
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| c[0])
            .collect();
        assert_eq!(singletons, z.elements());
    }

    #[test]
    fn derived_subgroups() {
        let g = make_two_gen(&TwoGenParams::new(3, 2, 2, 2, 2, 2).unwrap()).unwrap();
        let d = derived_subgroup(&g);
        assert_eq!(d.order(), 9);
        assert_eq!(abelian_type(&d).unwrap(), ty(3, &[2]));
        let g = make_two_gen(&TwoGenParams::new(3, 2, 2, 2, 0, 2).unwrap()).unwrap();
        assert_eq!(g.order(), 729);
        assert_eq!(derived_subgroup(&g).order(), 9);
        let m = make_metacyclic(2, 3).unwrap();
        let d = derived_subgroup(&m);
        let xp = m.from_coords(&[3, 0]);
        assert_eq!(d, Subgroup::generated(&m, &[xp]));
        assert_eq!(d.order(), 9);
        let z = center(&m);
        assert_eq!(z, Subgroup::generated(&m, &[m.from_coords(&[9, 0])]));
    }

    #[test]
    fn metacyclic_sections() {
        // n = 2, r = 1: Z = ⟨x^p, y^p⟩, [Z, G] = ⟨x^{p²}⟩.
        let m = make_metacyclic(2, 3).unwrap();
        let z = Subgroup::generated(&m, &[m.from_coords(&[3, 0]), m.from_coords(&[0, 3])]);
        let zg = commutator_with_group(&z);
        assert_eq!(zg, Subgroup::generated(&m, &[m.from_coords(&[9, 0])]));
        assert_eq!(quotient_type(&z, &zg).unwrap(), ty(3, &[1, 1]));
        assert_eq!(conjugacy_classes(&make_metacyclic(1, 3).unwrap()).len(), 11);
    }

    #[test]
    fn abelian_census() {
        for e in [&[1u32, 2][..], &[1, 1, 3], &[2, 2], &[]] {
            let g = make_abelian(&ty(3, e)).unwrap();
            assert_eq!(abelian_type(&Subgroup::whole(&g)).unwrap(), ty(3, e));
        }
    }

    #[test]
    fn rejections() {
        let g = make_two_gen(&TwoGenParams::new(3, 1, 1, 1, 1, 1).unwrap()).unwrap();
        let a = Subgroup::generated(&g, &[g.from_coords(&[1, 0, 0])]);
        assert_eq!(
            quotient_type(&Subgroup::whole(&g), &a),
            Err(Error::NotNormal)
        );
        assert_eq!(abelian_type(&Subgroup::whole(&g)), Err(Error::NotAbelian));
    }

    #[test]
    fn polycyclic_families() {
        let g = make_polycyclic(&PcPresentation::nenciu(1, 3).unwrap()).unwrap();
        assert_eq!(
            (g.order(), g.exponent(), nilpotency_class(&g)),
            (27, 3, Some(2))
        );
        let g = make_polycyclic(&PcPresentation::nenciu(2, 5).unwrap()).unwrap();
        assert_eq!(
            (g.order(), g.exponent(), nilpotency_class(&g)),
            (3125, 5, Some(3))
        );
        assert!(matches!(
            make_polycyclic(&PcPresentation::nenciu_as_displayed(2, 5).unwrap()),
            Err(Error::InconsistentPresentation(_))
        ));
        let w = make_polycyclic(&PcPresentation::wreath_cp_cp(3).unwrap()).unwrap();
        assert_eq!((w.order(), nilpotency_class(&w)), (81, Some(3)));
        let names = vec!["x".into(), "y".into(), "z".into()];
        let mut pres = PcPresentation::new(names, vec![3, 3, 3]).unwrap();
        pres.set_power(0, vec![0, 1, 0]).unwrap();
        pres.set_power(1, vec![0, 0, 1]).unwrap();
        let h = make_polycyclic(&pres).unwrap();
        assert_eq!(abelian_type(&Subgroup::whole(&h)).unwrap(), ty(3, &[3]));
        // x³ = y³ with y of order 9 leaves x y⁻¹ of order 3.
        let mut pres = PcPresentation::new(vec!["x".into(), "y".into()], vec![3, 9]).unwrap();
        pres.set_power(0, vec![0, 3]).unwrap();
        let h = make_polycyclic(&pres).unwrap();
        assert_eq!(abelian_type(&Subgroup::whole(&h)).unwrap(), ty(3, &[1, 2]));
        let plain = PcPresentation::new(vec!["x".into(), "y".into()], vec![3, 9]).unwrap();
        let h = make_polycyclic(&plain).unwrap();
        assert_eq!(abelian_type(&Subgroup::whole(&h)).unwrap(), ty(3, &[1, 2]));
    }

    #[test]
    fn non_triangular_rejected() {
        let mut pres = PcPresentation::new(vec!["x".into(), "y".into()], vec![3, 3]).unwrap();
        assert!(pres.set_commutator(0, 1, vec![0, 1]).is_err());
        assert!(pres.set_power(1, vec![1, 0]).is_err());
        assert!(pres.set_commutator(1, 0, vec![0, 0]).is_err());
    }
}
