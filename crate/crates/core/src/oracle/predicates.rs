//! Character-theoretic predicates, Galois classes and the rational
//! Wedderburn decomposition read off a character table.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::cyclotomic::Cyclotomic;
use super::table::CharTable;
use crate::arith;
use crate::decomp::{SimpleComponent, WeddDecomp};
use crate::error::{Error, Result};
use crate::grouprep::{Elem, Subgroup};

fn classes_where<'g>(
    t: &CharTable<'g>,
    i: usize,
    keep: impl Fn(&Cyclotomic) -> bool,
) -> Subgroup<'g> {
    let elems: Vec<Elem> = t
        .row(i)
        .iter()
        .zip(t.classes())
        .filter(|(v, _)| keep(v))
        .flat_map(|(_, c)| c.iter().copied())
        .collect();
    Subgroup::from_elements(t.group(), &elems).expect("character centers and kernels are subgroups")
}

/// `Z(χ) = {g : χ(g) conj(χ(g)) = χ(1)²}`.
pub fn char_center<'g>(t: &CharTable<'g>, i: usize) -> Subgroup<'g> {
    let d = t.degree(i) as i128;
    let d2 = Cyclotomic::from_int(d * d);
    classes_where(t, i, |v| (v * &v.conj()) == d2)
}

/// `ker χ = {g : χ(g) = χ(1)}`.
pub fn char_kernel<'g>(t: &CharTable<'g>, i: usize) -> Subgroup<'g> {
    let d = Cyclotomic::from_int(t.degree(i) as i128);
    classes_where(t, i, |v| v == &d)
}

/// Central type, tested both as vanishing off `Z(χ)` and as
/// `χ(1)² = |G : Z(χ)|`; the two must agree.
pub fn is_central_type(t: &CharTable<'_>, i: usize) -> Result<bool> {
    let z = char_center(t, i);
    let vanishes = t
        .row(i)
        .iter()
        .zip(t.classes())
        .all(|(v, c)| z.contains(c[0]) || v.is_zero());
    let d = t.degree(i);
    let by_degree = d * d * z.order() == t.group().order();
    if vanishes != by_degree {
        return Err(Error::CriterionMismatch(i));
    }
    Ok(vanishes)
}

pub fn is_gvz(t: &CharTable<'_>) -> Result<bool> {
    for i in 0..t.len() {
        if !is_central_type(t, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// GVZ with the centers `Z(χ)` totally ordered by inclusion.
pub fn is_nested_gvz(t: &CharTable<'_>) -> Result<bool> {
    if !is_gvz(t)? {
        return Ok(false);
    }
    let mut centers: Vec<Subgroup<'_>> = (0..t.len()).map(|i| char_center(t, i)).collect();
    centers.sort_by_key(|z| z.order());
    centers.dedup();
    Ok(centers.windows(2).all(|w| w[0].is_subgroup_of(&w[1])))
}

fn galois_row(t: &CharTable<'_>, i: usize, s: u64) -> Vec<Cyclotomic> {
    t.row(i).iter().map(|v| v.galois(s)).collect()
}

fn units(e: u64) -> impl Iterator<Item = u64> {
    (1..=e).filter(move |&s| arith::gcd(s % e, e) == 1 || e == 1)
}

/// Orbits of `Gal(Q(ζ_e)/Q)` on the rows, each sorted, ordered by least member.
pub fn galois_classes(t: &CharTable<'_>) -> Vec<Vec<usize>> {
    let e = t.exponent();
    let mut index = BTreeMap::new();
    for (i, row) in t.rows().iter().enumerate() {
        let key: Vec<(Vec<i128>, i128)> = row
            .iter()
            .map(|v| (v.key().0.to_vec(), v.key().1))
            .collect();
        index.insert(key, i);
    }
    let mut seen = vec![false; t.len()];
    let mut out = Vec::new();
    for i in 0..t.len() {
        if seen[i] {
            continue;
        }
        let mut orbit: Vec<usize> = units(e)
            .map(|s| {
                let row = galois_row(t, i, s);
                let key: Vec<(Vec<i128>, i128)> = row
                    .iter()
                    .map(|v| (v.key().0.to_vec(), v.key().1))
                    .collect();
                *index
                    .get(&key)
                    .expect("Galois conjugates of a character are characters")
            })
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit.iter().for_each(|&j| seen[j] = true);
        out.push(orbit);
    }
    out
}

/// Least `d | e` such that every value of `χ` is fixed by all `σ_s` with
/// `s ≡ 1 (mod d)`, i.e. `Q(χ) ⊆ Q(ζ_d)`.
pub fn field_conductor(t: &CharTable<'_>, i: usize) -> u64 {
    let e = t.exponent();
    for d in arith::divisors(e) {
        let fixed = units(e)
            .filter(|s| s % d == 1 % d)
            .all(|s| galois_row(t, i, s).as_slice() == t.row(i));
        if fixed {
            return d;
        }
    }
    e
}

/// `[Q(χ):Q]`, the size of the Galois orbit of `χ`.
pub fn field_degree(t: &CharTable<'_>, i: usize) -> usize {
    let gens = super::table::unit_generators(t.exponent());
    let key = |row: &[Cyclotomic]| -> Vec<(Vec<i128>, i128)> {
        row.iter()
            .map(|v| (v.key().0.to_vec(), v.key().1))
            .collect()
    };
    let start = t.row(i).to_vec();
    let mut seen = BTreeMap::new();
    seen.insert(key(&start), ());
    let mut stack = vec![start];
    while let Some(row) = stack.pop() {
        for &s in &gens {
            let image: Vec<Cyclotomic> = row.iter().map(|v| v.galois(s)).collect();
            if seen.insert(key(&image), ()).is_none() {
                stack.push(image);
            }
        }
    }
    seen.len()
}

/// One `M_{χ(1)}(Q(χ))` per Galois class, for a table of an odd p-group.
pub fn rational_decomposition_from_table(t: &CharTable<'_>) -> Result<WeddDecomp> {
    let g = t.group();
    if g.p() == 2 || arith::log_exact(g.order(), g.p()).is_none() {
        return Err(Error::NotOddPGroup);
    }
    let mut comps = Vec::new();
    for class in galois_classes(t) {
        let i = class[0];
        let conductor = field_conductor(t, i);
        if class.len() as u64 != arith::totient(conductor) {
            return Err(Error::NonCyclotomicField {
                orbit: class.len(),
                conductor,
            });
        }
        comps.push(SimpleComponent {
            multiplicity: 1,
            matrix_size: t.degree(i),
            conductor,
        });
    }
    let d = WeddDecomp::from_components(g.order(), comps);
    d.check_dimension()?;
    Ok(d)
}

/// Decomposition of `QG` from the Dixon table of `G`.
pub fn rational_decomposition(g: &crate::grouprep::FiniteGroupRep) -> Result<WeddDecomp> {
    rational_decomposition_with_bound(g, super::table::DEFAULT_BOUND)
}

pub fn rational_decomposition_with_bound(
    g: &crate::grouprep::FiniteGroupRep,
    bound: u64,
) -> Result<WeddDecomp> {
    if g.p() == 2 {
        return Err(Error::NotOddPGroup);
    }
    let t = super::table::character_table_with_bound(g, bound)?;
    rational_decomposition_from_table(&t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{perlis_walker, AbelianPType};
    use crate::families::TwoGenParams;
    use crate::grouprep::{make_abelian, make_polycyclic, make_two_gen, PcPresentation};
    use crate::oracle::character_table;

    #[test]
    fn abelian_matches_perlis_walker() {
        let t = AbelianPType::new(3, [2, 2]).unwrap();
        let g = make_abelian(&t).unwrap();
        assert_eq!(rational_decomposition(&g).unwrap(), perlis_walker(&t));
    }

    #[test]
    fn cyclic_p_galois_class() {
        let g = make_abelian(&AbelianPType::cyclic(5, 1).unwrap()).unwrap();
        let t = character_table(&g).unwrap();
        let classes = galois_classes(&t);
        assert_eq!(classes, vec![vec![0], vec![1, 2, 3, 4]]);
        assert_eq!(field_conductor(&t, 0), 1);
        assert_eq!(field_conductor(&t, 1), 5);
    }

    #[test]
    fn extraspecial_predicates() {
        let g = make_two_gen(&TwoGenParams::new(3, 1, 1, 1, 0, 1).unwrap()).unwrap();
        let t = character_table(&g).unwrap();
        assert!(is_nested_gvz(&t).unwrap());
        assert_eq!(char_center(&t, 0).order(), 27);
        let last = t.len() - 1;
        assert_eq!(char_center(&t, last).order(), 3);
        assert!(char_kernel(&t, last).is_trivial());
        assert_eq!(
            rational_decomposition_from_table(&t).unwrap().to_string(),
            "Q + 4 Q(z3) + M3(Q(z3))"
        );
    }

    #[test]
    fn maximal_class_is_not_gvz() {
        let g = make_polycyclic(&PcPresentation::wreath_cp_cp(3).unwrap()).unwrap();
        let t = character_table(&g).unwrap();
        assert!(!is_gvz(&t).unwrap());
    }
}
