//! Complete character tables: Dixon–Burnside over `F_q` with exact lifting,
//! and the direct construction for nested GVZ groups from witness sections.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::cyclotomic::Cyclotomic;
use super::modp::{Fq, Subspace};
use crate::arith;
use crate::error::{Error, Result};
use crate::grouprep::{self, Elem, FiniteGroupRep};

/// Largest group the Dixon path accepts unless overridden.
pub const DEFAULT_BOUND: u64 = 4000;

/// Conjugacy classes with the bookkeeping every table needs.
#[derive(Debug, Clone)]
pub struct ClassData {
    classes: Vec<Vec<Elem>>,
    class_of: Vec<u32>,
    inverse_class: Vec<usize>,
    exponent: u64,
}

impl ClassData {
    pub fn new(g: &FiniteGroupRep) -> Self {
        let classes = grouprep::conjugacy_classes(g);
        let mut class_of = vec![0u32; g.order() as usize];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x as usize] = i as u32;
            }
        }
        let inverse_class = classes
            .iter()
            .map(|c| class_of[g.inv(c[0]) as usize] as usize)
            .collect();
        let exponent = classes
            .iter()
            .map(|c| g.element_order(c[0]))
            .fold(1, |a, b| a.max(b));
        Self {
            classes,
            class_of,
            inverse_class,
            exponent,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// The irreducible characters of a group, as rows of values on conjugacy
/// classes in `Q(ζ_e)`, `e = exp(G)`. Rows are sorted by degree with the
/// trivial character first.
#[derive(Debug, Clone)]
pub struct CharTable<'g> {
    group: &'g FiniteGroupRep,
    cd: ClassData,
    chars: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
}

impl<'g> CharTable<'g> {
    fn assemble(
        group: &'g FiniteGroupRep,
        cd: ClassData,
        mut chars: Vec<Vec<Cyclotomic>>,
    ) -> Result<Self> {
        let k = cd.len();
        if chars.len() != k {
            return Err(Error::SectionMismatch {
                characters: chars.len(),
                classes: k,
            });
        }
        let mut degrees = Vec::with_capacity(k);
        for row in &chars {
            let d = row[0]
                .as_rational()
                .filter(|r| r.is_integer() && *r.numer() > 0)
                .ok_or_else(|| {
                    Error::LiftFailure(format!("degree {} is not a positive integer", row[0]))
                })?;
            degrees.push(*d.numer() as u64);
        }
        let mut order: Vec<usize> = (0..k).collect();
        let one = Cyclotomic::from_int(1);
        order.sort_by(|&a, &b| {
            let trivial = |i: usize| chars[i].iter().all(|v| *v == one);
            degrees[a]
                .cmp(&degrees[b])
                .then(trivial(b).cmp(&trivial(a)))
                .then_with(|| {
                    let ka = chars[a].iter().map(|v| v.key());
                    let kb = chars[b].iter().map(|v| v.key());
                    ka.cmp(kb)
                })
        });
        let mut taken: Vec<Option<Vec<Cyclotomic>>> = chars.drain(..).map(Some).collect();
        let chars: Vec<Vec<Cyclotomic>> = order
            .iter()
            .map(|&i| taken[i].take().expect("permutation"))
            .collect();
        let degrees = order.iter().map(|&i| degrees[i]).collect();
        let table = Self {
            group,
            cd,
            chars,
            degrees,
        };
        table.verify()?;
        Ok(table)
    }

    /// Both orthogonality relations, exactly.
    ///
    /// The rows must be closed under `Gal(Q(ζ_e)/Q)`; then the row relations
    /// hold at every embedding once they hold at one embedding into `F_q`,
    /// `q ≡ 1 (mod e)`, so each defect lies in `q Z[ζ_e]`. With `q` above a
    /// bound on every conjugate of the defect, the defect is zero. Row
    /// orthogonality of a square table implies column orthogonality.
    pub fn verify(&self) -> Result<()> {
        let n = self.group.order();
        let k = self.cd.len();
        let e = self.cd.exponent;
        let fail = |what: String| Err(Error::LiftFailure(what));
        if self.degrees.iter().map(|&d| d * d).sum::<u64>() != n {
            return fail("sum of squared degrees differs from |G|".into());
        }
        let lifted: Vec<Vec<Cyclotomic>> = self
            .chars
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        if v.modulus() == e {
                            v.clone()
                        } else {
                            v.lift(e)
                        }
                    })
                    .collect()
            })
            .collect();
        let key = |row: &[Cyclotomic]| -> Vec<(Vec<i128>, i128)> {
            row.iter()
                .map(|v| (v.key().0.to_vec(), v.key().1))
                .collect()
        };
        let index: BTreeMap<_, usize> = lifted
            .iter()
            .enumerate()
            .map(|(i, r)| (key(r), i))
            .collect();
        if index.len() != k {
            return fail("repeated rows".into());
        }
        for s in unit_generators(e) {
            for (i, row) in lifted.iter().enumerate() {
                let image: Vec<Cyclotomic> = row.iter().map(|v| v.galois(s)).collect();
                if !index.contains_key(&key(&image)) {
                    return fail(format!("row {i} is not closed under Galois conjugation"));
                }
            }
        }
        let b = lifted
            .iter()
            .flatten()
            .map(Cyclotomic::l1_norm)
            .max()
            .unwrap_or(0);
        let bound = (n as u128).saturating_mul(b.saturating_mul(b).saturating_add(1));
        if bound >= 1 << 62 {
            return fail("table entries too large to verify".into());
        }
        let mut q = (bound as u64 / e + 1) * e + 1;
        while !arith::is_prime(q) {
            q += e;
        }
        let omega = Fq { q }.root_of_unity(e);
        let degree = arith::totient(e) as usize;
        let omega_powers: Vec<u64> = (0..degree as u64)
            .map(|t| arith::mod_pow(omega, t, q))
            .collect();
        let mut a = Vec::with_capacity(k);
        for row in &lifted {
            let r: Option<Vec<u64>> = row.iter().map(|v| v.eval_mod(&omega_powers, q)).collect();
            a.push(
                r.ok_or_else(|| Error::LiftFailure("value is not an algebraic integer".into()))?,
            );
        }
        let inv = &self.cd.inverse_class;
        let sizes: Vec<u128> = self.cd.classes.iter().map(|c| c.len() as u128).collect();
        let weighted: Vec<Vec<u128>> = a
            .iter()
            .map(|r| {
                (0..k)
                    .map(|l| sizes[l] * r[inv[l]] as u128 % q as u128)
                    .collect()
            })
            .collect();
        const LIMIT: u128 = 1 << 127;
        for i in 0..k {
            for j in i..k {
                let mut acc = 0u128;
                for (&x, &y) in a[i].iter().zip(&weighted[j]) {
                    acc += x as u128 * y;
                    if acc >= LIMIT {
                        acc %= q as u128;
                    }
                }
                let expected = if i == j { n as u128 % q as u128 } else { 0 };
                if acc % q as u128 != expected {
                    return fail(format!("rows {i} and {j} are not orthonormal"));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &'g FiniteGroupRep {
        self.group
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.cd.classes
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.cd.class_of[x as usize] as usize
    }

    /// The modulus `e` of the ambient field `Q(ζ_e)`.
    pub fn exponent(&self) -> u64 {
        self.cd.exponent
    }

    pub fn rows(&self) -> &[Vec<Cyclotomic>] {
        &self.chars
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.chars[i]
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// `χ_i(x)`.
    pub fn value(&self, i: usize, x: Elem) -> &Cyclotomic {
        &self.chars[i][self.class_of(x)]
    }

    /// `cd(G)`, ascending.
    pub fn degree_set(&self) -> Vec<u64> {
        let mut d = self.degrees.clone();
        d.dedup();
        d
    }

    /// Row-set equality with another table of the same group.
    pub fn same_characters(&self, other: &CharTable<'_>) -> bool {
        self.chars == other.chars
    }
}

/// Complete character table by Dixon–Burnside, for `|G| ≤ DEFAULT_BOUND`.
pub fn character_table(g: &FiniteGroupRep) -> Result<CharTable<'_>> {
    character_table_with_bound(g, DEFAULT_BOUND)
}

pub fn character_table_with_bound(g: &FiniteGroupRep, bound: u64) -> Result<CharTable<'_>> {
    if g.order() > bound {
        return Err(Error::BoundExceeded {
            order: g.order(),
            bound,
        });
    }
    let cd = ClassData::new(g);
    let dixon = Dixon::new(g, &cd);
    let e = cd.exponent;
    let floor = 2 * isqrt_ceil(g.order());
    let mut q = (floor / e + 1) * e + 1;
    let mut last_err = None;
    for _ in 0..32 {
        while !arith::is_prime(q) {
            q += e;
        }
        match dixon.run(Fq { q }) {
            Ok(rows) => return CharTable::assemble(g, cd, rows),
            Err(err) => last_err = Some(err),
        }
        q += e;
    }
    Err(last_err.unwrap_or_else(|| Error::LiftFailure("no usable prime".into())))
}

/// A generating set of `(Z/e)^*`.
pub(crate) fn unit_generators(e: u64) -> Vec<u64> {
    let e = e as usize;
    let mut gens = Vec::new();
    let mut reached = vec![false; e];
    reached[1 % e] = true;
    for u in 1..e {
        if arith::gcd(u as u64, e as u64) != 1 || reached[u] {
            continue;
        }
        gens.push(u);
        let mut stack: Vec<usize> = (0..e).filter(|&x| reached[x]).collect();
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = x * g % e;
                if !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    gens.into_iter().map(|g| g as u64).collect()
}

fn isqrt_ceil(n: u64) -> u64 {
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

struct Dixon<'a> {
    g: &'a FiniteGroupRep,
    cd: &'a ClassData,
    /// `a[(j k + i) k + l] = #{(x, y) ∈ C_j × C_i : xy = g_l}`.
    consts: Vec<u32>,
    /// `power[l][s]` = class of `g_l^s`, `0 ≤ s < e`.
    power: Vec<Vec<usize>>,
    /// Order of the elements of each class.
    orders: Vec<usize>,
    /// Linear characters as exponents: `ψ(g_l) = ζ_e^{linear[ψ][l]}`.
    linear: Vec<Vec<u32>>,
}

impl<'a> Dixon<'a> {
    fn new(g: &'a FiniteGroupRep, cd: &'a ClassData) -> Self {
        let k = cd.len();
        let inv: Vec<Elem> = g.elements().map(|x| g.inv(x)).collect();
        let mut consts = vec![0u32; k * k * k];
        for (l, class) in cd.classes.iter().enumerate() {
            let gl = class[0];
            for x in g.elements() {
                let y = g.mul(inv[x as usize], gl);
                let (j, i) = (
                    cd.class_of[x as usize] as usize,
                    cd.class_of[y as usize] as usize,
                );
                consts[(j * k + i) * k + l] += 1;
            }
        }
        let power = cd
            .classes
            .iter()
            .map(|c| {
                let mut cur = 0;
                (0..cd.exponent)
                    .map(|_| {
                        let cls = cd.class_of[cur as usize] as usize;
                        cur = g.mul(cur, c[0]);
                        cls
                    })
                    .collect()
            })
            .collect::<Vec<Vec<usize>>>();
        let identity = cd.class_of[0] as usize;
        let orders = power
            .iter()
            .map(|row| {
                (1..row.len())
                    .find(|&s| row[s] == identity)
                    .unwrap_or(row.len())
            })
            .collect();
        let whole = grouprep::Subgroup::whole(g);
        let derived = grouprep::derived_subgroup(g);
        let linear = section_characters(g, &whole, &derived, cd.exponent)
            .into_iter()
            .map(|ch| cd.classes.iter().map(|c| ch[c[0] as usize]).collect())
            .collect();
        Self {
            g,
            cd,
            consts,
            power,
            orders,
            linear,
        }
    }

    /// `M v` for `M = Σ_j r_j M_j`, `(M_j)_{il} = a_{jil}`.
    fn apply(&self, f: Fq, combo: &[(usize, u64)], v: &[u64]) -> Vec<u64> {
        let k = self.cd.len();
        let mut out = vec![0u64; k];
        for &(j, r) in combo {
            for (i, o) in out.iter_mut().enumerate() {
                let base = (j * k + i) * k;
                let s = self.consts[base..base + k]
                    .iter()
                    .zip(v)
                    .fold(0u64, |s, (&a, &x)| (s + a as u64 * x) % f.q);
                *o = f.add(*o, f.mul(r, s));
            }
        }
        out
    }

    /// Common eigenvectors of the class matrices, normalized at the identity class.
    fn eigenvectors(&self, f: Fq) -> Result<Vec<Vec<u64>>> {
        let k = self.cd.len();
        let mut rng = ChaCha8Rng::seed_from_u64(f.q);
        // Linear characters come from G/G'; the remaining central characters
        // span the complement orthogonal to them, which the class matrices keep.
        let omega = f.root_of_unity(self.cd.exponent);
        let omega_pow: Vec<u64> = (0..self.cd.exponent).map(|t| f.pow(omega, t)).collect();
        let sizes: Vec<u64> = self
            .cd
            .classes
            .iter()
            .map(|c| c.len() as u64 % f.q)
            .collect();
        let mut done: Vec<Vec<u64>> = self
            .linear
            .iter()
            .map(|psi| {
                (0..k)
                    .map(|l| f.mul(sizes[l], omega_pow[psi[l] as usize]))
                    .collect()
            })
            .collect();
        let dual: Vec<Vec<u64>> = self
            .linear
            .iter()
            .map(|psi| {
                (0..k)
                    .map(|l| omega_pow[psi[self.cd.inverse_class[l]] as usize])
                    .collect()
            })
            .collect();
        let complement = if done.len() == k {
            Vec::new()
        } else {
            f.nullspace(dual)
        };
        if done.len() + complement.len() != k {
            return Err(Error::LiftFailure(format!(
                "linear characters are dependent over F_{}",
                f.q
            )));
        }
        let mut work = Vec::new();
        if !complement.is_empty() {
            work.push(Subspace::from_vectors(f, complement));
        }
        let mut stalls = 0;
        while let Some(w) = work.pop() {
            if w.dim() == 1 {
                done.push(w.basis.into_iter().next().expect("dim 1"));
                continue;
            }
            let terms = 3.min(k - 1);
            let combo: Vec<(usize, u64)> = (0..terms)
                .map(|_| {
                    (
                        1 + (rng.next_u64() % (k as u64 - 1)) as usize,
                        1 + rng.next_u64() % (f.q - 1),
                    )
                })
                .collect();
            let images: Vec<Vec<u64>> = w.basis.iter().map(|b| self.apply(f, &combo, b)).collect();
            let d = w.dim();
            // Column c of the restriction is the image of basis vector c at the pivots.
            let r: Vec<Vec<u64>> = (0..d)
                .map(|row| (0..d).map(|c| images[c][w.pivots[row]]).collect())
                .collect();
            let roots = f.roots(&f.charpoly(r.clone()));
            let mut pieces = Vec::new();
            let mut total = 0;
            for lam in roots {
                let shifted: Vec<Vec<u64>> = r
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, &x)| if i == j { f.sub(x, lam) } else { x })
                            .collect()
                    })
                    .collect();
                let ns = f.nullspace(shifted);
                total += ns.len();
                let vecs: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|c| {
                        let mut v = vec![0u64; k];
                        for (coef, b) in c.iter().zip(&w.basis) {
                            if *coef != 0 {
                                for (x, &y) in v.iter_mut().zip(b) {
                                    *x = f.add(*x, f.mul(*coef, y));
                                }
                            }
                        }
                        v
                    })
                    .collect();
                pieces.push(Subspace::from_vectors(f, vecs));
            }
            if total != d {
                return Err(Error::LiftFailure(format!(
                    "class algebra not split over F_{} ({total} of {d} dimensions)",
                    f.q
                )));
            }
            if pieces.len() == 1 {
                stalls += 1;
                if stalls > 64 + 4 * k {
                    return Err(Error::LiftFailure("eigenspace splitting stalled".into()));
                }
            }
            work.extend(pieces);
        }
        if done.len() != k {
            return Err(Error::LiftFailure(format!(
                "found {} of {k} characters",
                done.len()
            )));
        }
        done.into_iter()
            .map(|v| {
                if v[0] == 0 {
                    return Err(Error::LiftFailure(
                        "eigenvector vanishes at the identity".into(),
                    ));
                }
                let s = f.inv(v[0]);
                Ok(v.iter().map(|&x| f.mul(x, s)).collect())
            })
            .collect()
    }

    fn run(&self, f: Fq) -> Result<Vec<Vec<Cyclotomic>>> {
        let n = self.g.order();
        let p = self.g.p();
        let e = self.cd.exponent;
        let k = self.cd.len();
        let sizes: Vec<u64> = self
            .cd
            .classes
            .iter()
            .map(|c| c.len() as u64 % f.q)
            .collect();
        let z_inv = f.inv(f.root_of_unity(e));
        let zpow: Vec<u64> = (0..e).map(|t| f.pow(z_inv, t)).collect();
        let omega = f.root_of_unity(e);
        let root_index: BTreeMap<u64, usize> =
            (0..e).map(|t| (f.pow(omega, t), t as usize)).collect();
        let mut rows = Vec::with_capacity(k);
        for w in self.eigenvectors(f)? {
            let s = (0..k).fold(0, |s, l| {
                let t = f.mul(f.mul(w[l], w[self.cd.inverse_class[l]]), f.inv(sizes[l]));
                f.add(s, t)
            });
            if s == 0 {
                return Err(Error::LiftFailure("degenerate central character".into()));
            }
            let d2 = f.mul(n % f.q, f.inv(s));
            let mut cands = (0..=arith::log_exact(n, p).unwrap_or(0) / 2)
                .map(|a| arith::pow(p, a))
                .filter(|&d| d * d % f.q == d2);
            let (Some(deg), None) = (cands.next(), cands.next()) else {
                return Err(Error::LiftFailure(format!(
                    "degree ambiguous modulo {}",
                    f.q
                )));
            };
            let vals: Vec<u64> = (0..k)
                .map(|l| f.mul(f.mul(w[l], deg % f.q), f.inv(sizes[l])))
                .collect();
            let mut row = Vec::with_capacity(k);
            for l in 0..k {
                let mut coeffs = vec![0i128; e as usize];
                if deg == 1 {
                    let t = root_index.get(&vals[l]).ok_or_else(|| {
                        Error::LiftFailure(format!(
                            "linear value is not a root of unity modulo {}",
                            f.q
                        ))
                    })?;
                    coeffs[*t] = 1;
                    row.push(Cyclotomic::from_powers(e, &coeffs));
                    continue;
                }
                // Eigenvalue multiplicities of g_l by a DFT over its order.
                let o = self.orders[l];
                let step = e as usize / o;
                let o_inv = f.inv(o as u64 % f.q);
                let mut total = 0;
                for u in 0..o {
                    let sum = (0..o).fold(0, |acc, s| {
                        let v = vals[self.power[l][s]];
                        f.add(acc, f.mul(v, zpow[(u * s % o) * step]))
                    });
                    let m = f.mul(sum, o_inv);
                    if m > deg {
                        return Err(Error::LiftFailure(format!(
                            "eigenvalue multiplicity {m} exceeds degree {deg} modulo {}",
                            f.q
                        )));
                    }
                    coeffs[u * step] = m as i128;
                    total += m;
                }
                if total != deg {
                    return Err(Error::LiftFailure(
                        "eigenvalue multiplicities do not sum to the degree".into(),
                    ));
                }
                row.push(Cyclotomic::from_powers(e, &coeffs));
            }
            rows.push(row);
        }
        Ok(rows)
    }
}

/// One layer of witnesses: `Z = Z_δ`, `K = [Z_δ, G]`.
#[derive(Debug, Clone)]
pub struct WitnessLayer<'g> {
    pub delta: u32,
    pub z: grouprep::Subgroup<'g>,
    pub commutator: grouprep::Subgroup<'g>,
}

/// Witness subgroups for the nested GVZ structure, layers in increasing `δ`.
#[derive(Debug, Clone)]
pub struct GvzWitness<'g> {
    pub layers: Vec<WitnessLayer<'g>>,
}

impl<'g> GvzWitness<'g> {
    /// Builds `Z_δ = ⟨gens⟩` and `[Z_δ, G]` for each `(δ, gens)`.
    pub fn from_generators(g: &'g FiniteGroupRep, layers: &[(u32, Vec<Elem>)]) -> Result<Self> {
        let layers = layers
            .iter()
            .map(|(delta, gens)| {
                let z = grouprep::Subgroup::generated(g, gens);
                if !z.is_normal() {
                    return Err(Error::NotNormal);
                }
                let commutator = grouprep::commutator_with_group(&z);
                Ok(WitnessLayer {
                    delta: *delta,
                    z,
                    commutator,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { layers })
    }

    /// `Z_δ = ⟨a^{p^δ}, b^{p^δ}, [a, b]⟩` for `δ = 1..γ` in a two-generator group.
    pub fn two_gen(g: &'g FiniteGroupRep) -> Result<Self> {
        let t = g
            .two_gen_params()
            .ok_or_else(|| Error::InvalidParameters("not a two-generator group".into()))?;
        let layers: Vec<(u32, Vec<Elem>)> = (1..=t.gamma)
            .map(|d| {
                let s = arith::pow(t.p, d);
                (
                    d,
                    vec![
                        g.from_coords(&[s, 0, 0]),
                        g.from_coords(&[0, s, 0]),
                        g.from_coords(&[0, 0, 1]),
                    ],
                )
            })
            .collect();
        Self::from_generators(g, &layers)
    }

    /// `Z_r = ⟨x^{p^r}, y^{p^r}⟩` for `r = 1..n` in the metacyclic group of order `p^{2n+1}`.
    pub fn metacyclic(g: &'g FiniteGroupRep) -> Result<Self> {
        if g.kind() != grouprep::GroupKind::Metacyclic {
            return Err(Error::InvalidParameters("not a metacyclic group".into()));
        }
        let n = arith::log_exact(g.moduli()[1], g.p()).expect("p-power modulus");
        let layers: Vec<(u32, Vec<Elem>)> = (1..=n)
            .map(|r| {
                let s = arith::pow(g.p(), r);
                (
                    r,
                    vec![
                        g.from_coords(&[s, 0]),
                        g.from_coords(&[0, s % g.moduli()[1]]),
                    ],
                )
            })
            .collect();
        Self::from_generators(g, &layers)
    }

    /// `Z_r = ⟨a_{r+1}, …, a_n, b_0, …, b_{n-r}⟩` for `r = 1..n` in a group
    /// realized from [`PcPresentation::nenciu`](grouprep::PcPresentation::nenciu).
    pub fn nenciu(g: &'g FiniteGroupRep) -> Result<Self> {
        let rank = g.moduli().len();
        if g.kind() != grouprep::GroupKind::Polycyclic || rank.is_multiple_of(2) {
            return Err(Error::InvalidParameters("not a Nenciu group".into()));
        }
        let n = (rank - 1) / 2;
        let unit = |k: usize| {
            let mut c = vec![0; rank];
            c[k] = 1;
            g.from_coords(&c)
        };
        let layers: Vec<(u32, Vec<Elem>)> = (1..=n)
            .map(|r| {
                let a = (r + 1..=n).map(|i| unit(i - 1));
                let b = (0..=n - r).map(|j| unit(2 * n - j));
                (r as u32, a.chain(b).collect())
            })
            .collect();
        Self::from_generators(g, &layers)
    }

    /// The section types `Z_δ/[Z_δ, G]` and `Z_δ/[Z_{δ'}, G]` read off the witnesses.
    pub fn data(&self, g: &'g FiniteGroupRep) -> Result<crate::decomp::NestedGvzData> {
        let whole = grouprep::Subgroup::whole(g);
        let derived = grouprep::derived_subgroup(g);
        let ab = grouprep::quotient_type(&whole, &derived)?;
        let mut prev = derived;
        let mut out = Vec::new();
        for l in &self.layers {
            if !prev.is_subgroup_of(&l.z) {
                return Err(Error::InvalidLayers(format!(
                    "layer {}: previous commutator subgroup is not inside Z",
                    l.delta
                )));
            }
            out.push(crate::decomp::GvzLayer {
                delta: l.delta,
                quotient: grouprep::quotient_type(&l.z, &l.commutator)?,
                prev_quotient: grouprep::quotient_type(&l.z, &prev)?,
            });
            prev = l.commutator.clone();
        }
        crate::decomp::NestedGvzData::new(g.p(), ab, out)
    }
}

/// Linear characters of the abelian section `A/N`, as exponent maps
/// `x ↦ t` meaning `x ↦ ζ_e^t` (entries outside `A` are `u32::MAX`).
fn section_characters(
    g: &FiniteGroupRep,
    a: &grouprep::Subgroup<'_>,
    n: &grouprep::Subgroup<'_>,
    e: u64,
) -> Vec<Vec<u32>> {
    let size = g.order() as usize;
    let p = g.p();
    let mut cur: Vec<Elem> = n.elements().to_vec();
    let mut in_cur = vec![false; size];
    cur.iter().for_each(|&x| in_cur[x as usize] = true);
    let mut base = vec![u32::MAX; size];
    cur.iter().for_each(|&x| base[x as usize] = 0);
    let mut chars = vec![base];
    while cur.len() < a.elements().len() {
        let y = *a
            .elements()
            .iter()
            .find(|&&y| !in_cur[y as usize])
            .expect("A is larger");
        // Step down to an element of order p modulo the current subgroup.
        let mut x = y;
        loop {
            let xp = g.pow(x, p);
            if in_cur[xp as usize] {
                break;
            }
            x = xp;
        }
        let xp = g.pow(x, p);
        let mut layer: Vec<Vec<Elem>> = vec![cur.clone()];
        for j in 1..p as usize {
            let next: Vec<Elem> = layer[j - 1].iter().map(|&c| g.mul(c, x)).collect();
            layer.push(next);
        }
        let mut new_chars = Vec::with_capacity(chars.len() * p as usize);
        for ch in &chars {
            let t0 = ch[xp as usize] as u64;
            debug_assert_eq!(t0 % p, 0);
            for r in 0..p {
                let t = (t0 / p + r * (e / p)) % e;
                let mut v = ch.clone();
                for (j, coset) in layer.iter().enumerate().skip(1) {
                    for (&c, &cx) in cur.iter().zip(coset) {
                        v[cx as usize] = ((ch[c as usize] as u64 + j as u64 * t) % e) as u32;
                    }
                }
                new_chars.push(v);
            }
        }
        chars = new_chars;
        for coset in layer.into_iter().skip(1) {
            for x in coset {
                in_cur[x as usize] = true;
                cur.push(x);
            }
        }
    }
    chars
}

/// Character table of a nested GVZ group built from its witness sections:
/// lifts of `G/G'` plus, for each layer, `χ_μ = p^δ μ` on `Z_δ` and `0`
/// elsewhere, for `μ` over `Z_δ/[Z_δ, G]` nontrivial on `[Z_{δ'}, G]`.
pub fn gvz_fast_table<'g>(
    g: &'g FiniteGroupRep,
    witness: &GvzWitness<'g>,
) -> Result<CharTable<'g>> {
    let cd = ClassData::new(g);
    let e = cd.exponent;
    let p = g.p();
    let whole = grouprep::Subgroup::whole(g);
    let derived = grouprep::derived_subgroup(g);
    let reps: Vec<Elem> = cd.classes.iter().map(|c| c[0]).collect();
    let zeta: Vec<Cyclotomic> = (0..e).map(|t| Cyclotomic::zeta_power(e, t)).collect();
    let zero = Cyclotomic::from_powers(e, &[0]);
    let mut rows: Vec<Vec<Cyclotomic>> = section_characters(g, &whole, &derived, e)
        .into_iter()
        .map(|ch| {
            reps.iter()
                .map(|&x| zeta[ch[x as usize] as usize].clone())
                .collect()
        })
        .collect();
    let mut prev = derived;
    for l in &witness.layers {
        if !l.z.is_normal() || !l.commutator.is_normal() {
            return Err(Error::NotNormal);
        }
        if grouprep::commutator_with_group(&l.z) != l.commutator {
            return Err(Error::InvalidLayers(format!(
                "layer {}: commutator witness is not [Z, G]",
                l.delta
            )));
        }
        let deg = Cyclotomic::from_powers(e, &[arith::pow(p, l.delta) as i128]);
        for mu in section_characters(g, &l.z, &l.commutator, e) {
            if prev.elements().iter().all(|&x| mu[x as usize] == 0) {
                continue;
            }
            rows.push(
                reps.iter()
                    .map(|&x| match mu[x as usize] {
                        u32::MAX => zero.clone(),
                        t => &deg * &zeta[t as usize],
                    })
                    .collect(),
            );
        }
        prev = l.commutator.clone();
    }
    CharTable::assemble(g, cd, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianPType;
    use crate::families::TwoGenParams;
    use crate::grouprep::{make_abelian, make_metacyclic, make_two_gen};

    #[test]
    fn abelian_table_is_dual_group() {
        let g = make_abelian(&AbelianPType::new(3, [1, 2]).unwrap()).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.len(), 27);
        assert!(t.degrees().iter().all(|&d| d == 1));
    }

    #[test]
    fn extraspecial_27() {
        let g = make_two_gen(&TwoGenParams::new(3, 1, 1, 1, 1, 1).unwrap()).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3]);
    }

    #[test]
    fn fast_table_matches_dixon_on_metacyclic() {
        let g = make_metacyclic(2, 3).unwrap();
        let w = GvzWitness::from_generators(
            &g,
            &[
                (1, vec![g.from_coords(&[3, 0]), g.from_coords(&[0, 3])]),
                (2, vec![g.from_coords(&[9, 0])]),
            ],
        )
        .unwrap();
        let fast = gvz_fast_table(&g, &w).unwrap();
        let slow = character_table(&g).unwrap();
        assert!(fast.same_characters(&slow));
        assert_eq!(fast.degree_set(), vec![1, 3, 9]);
    }

    #[test]
    fn unit_groups_are_generated() {
        assert_eq!(unit_generators(1), Vec::<u64>::new());
        assert_eq!(unit_generators(81), vec![2]);
        assert_eq!(unit_generators(8), vec![3, 5]);
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let g = make_two_gen(&TwoGenParams::new(3, 1, 1, 1, 1, 1).unwrap()).unwrap();
        let mut t = character_table(&g).unwrap();
        assert!(t.verify().is_ok());
        let last = t.chars.len() - 1;
        let l = t.chars[last].len() - 1;
        t.chars[last][l] = &t.chars[last][l] + &Cyclotomic::from_int(3);
        assert!(t.verify().is_err());
    }

    #[test]
    fn bound_is_enforced() {
        let g = make_abelian(&AbelianPType::new(3, [2, 2]).unwrap()).unwrap();
        assert_eq!(
            character_table_with_bound(&g, 80).unwrap_err(),
            Error::BoundExceeded {
                order: 81,
                bound: 80
            }
        );
    }
}
