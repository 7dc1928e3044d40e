//! Power-commutator presentations and their realization.
//!
//! With generators `g_0, …, g_{m-1}` and `G_k = ⟨g_k, …, g_{m-1}⟩`, each
//! `G_k` is a cyclic extension of `G_{k+1}`: conjugation by `g_k` is an
//! automorphism `φ_k` of `G_{k+1}` and `g_k^{o_k} = w_k ∈ G_{k+1}`. Products
//! are evaluated level by level,
//! `(g_k^a t)(g_k^b u) = g_k^{(a+b) mod o_k} · [w_k] · φ_k^b(t) · u`,
//! with tables for `φ_k^b` and left multiplication by `w_k`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{Elem, FiniteGroupRep};
use crate::arith;
use crate::error::{Error, Result};

fn inconsistent(msg: String) -> Error {
    Error::InconsistentPresentation(msg)
}

/// Generators with relative orders, power relations `g_i^{o_i} = w_i` and
/// commutator relations `[g_i, g_j] = w_ij` (`i < j`). Words are exponent
/// vectors; unspecified relations are trivial. Relations must be
/// triangular: `w_i` involves only generators after `g_i`, `w_ij` only
/// generators after `g_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcPresentation {
    label: String,
    names: Vec<String>,
    orders: Vec<u64>,
    powers: BTreeMap<usize, Vec<u64>>,
    commutators: BTreeMap<(usize, usize), Vec<u64>>,
}

impl PcPresentation {
    pub fn new(names: Vec<String>, orders: Vec<u64>) -> Result<Self> {
        if names.is_empty() || names.len() != orders.len() {
            return Err(inconsistent(format!(
                "{} generator names but {} orders",
                names.len(),
                orders.len()
            )));
        }
        let p = orders[0].max(2);
        let p = arith::prime_factors(p)[0];
        for &o in &orders {
            if o < 2 || arith::log_exact(o, p).is_none() {
                return Err(inconsistent(format!(
                    "relative order {o} is not a power of {p}"
                )));
            }
        }
        Ok(Self {
            label: "polycyclic".to_string(),
            names,
            orders,
            powers: BTreeMap::new(),
            commutators: BTreeMap::new(),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relative_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn check_word(&self, word: &[u64], after: usize, what: &str) -> Result<()> {
        if word.len() != self.rank() {
            return Err(inconsistent(format!(
                "{what}: word has length {}, expected {}",
                word.len(),
                self.rank()
            )));
        }
        for (i, (&e, &o)) in word.iter().zip(&self.orders).enumerate() {
            if e >= o {
                return Err(inconsistent(format!(
                    "{what}: exponent {e} of {} is not below {o}",
                    self.names[i]
                )));
            }
            if e != 0 && i <= after {
                return Err(inconsistent(format!(
                    "{what}: involves {}, relations must be triangular",
                    self.names[i]
                )));
            }
        }
        Ok(())
    }

    /// Sets `g_i^{o_i} = word`.
    pub fn set_power(&mut self, i: usize, word: Vec<u64>) -> Result<()> {
        if i >= self.rank() {
            return Err(inconsistent(format!("no generator {i}")));
        }
        self.check_word(&word, i, &format!("{}^{}", self.names[i], self.orders[i]))?;
        self.powers.insert(i, word);
        Ok(())
    }

    /// Sets `[g_i, g_j] = word` for `i < j`.
    pub fn set_commutator(&mut self, i: usize, j: usize, word: Vec<u64>) -> Result<()> {
        if i >= j || j >= self.rank() {
            return Err(inconsistent(format!(
                "commutator indices ({i},{j}) must satisfy i < j < {}",
                self.rank()
            )));
        }
        self.check_word(&word, j, &format!("[{},{}]", self.names[i], self.names[j]))?;
        self.commutators.insert((i, j), word);
        Ok(())
    }

    pub fn power(&self, i: usize) -> Option<&[u64]> {
        self.powers.get(&i).map(Vec::as_slice)
    }

    pub fn commutator(&self, i: usize, j: usize) -> Option<&[u64]> {
        self.commutators.get(&(i, j)).map(Vec::as_slice)
    }

    /// Nontrivial power relations, by generator index.
    pub fn powers(&self) -> impl Iterator<Item = (usize, &[u64])> {
        self.powers.iter().map(|(&i, w)| (i, w.as_slice()))
    }

    /// Nontrivial commutator relations, by index pair.
    pub fn commutators(&self) -> impl Iterator<Item = ((usize, usize), &[u64])> {
        self.commutators.iter().map(|(&k, w)| (k, w.as_slice()))
    }

    fn unit(&self, k: usize, e: u64) -> Vec<u64> {
        let mut w = vec![0; self.rank()];
        w[k] = e;
        w
    }

    /// The exponent-p family of order `p^{2n+1}` built inductively as
    /// `G_n = (G_{n-1} × ⟨a_n⟩) ⋊ ⟨b_n⟩`, with `[a_1, b_j] = b_{j-1}^{p-1}`
    /// and `[a_i, b_j] = b_{j-i}` for `2 ≤ i ≤ j`. Collection order is
    /// `a_1, …, a_n, b_n, …, b_0`.
    pub fn nenciu(n: u32, p: u64) -> Result<Self> {
        Self::nenciu_with(n, p, |i, j| j - i)
    }

    /// The same family with `[a_i, b_j] = b_{j-1}` for `2 ≤ i ≤ j`, exactly
    /// as the case split is usually displayed. Inconsistent for `n ≥ 2`.
    pub fn nenciu_as_displayed(n: u32, p: u64) -> Result<Self> {
        Self::nenciu_with(n, p, |_, j| j - 1)
    }

    fn nenciu_with(n: u32, p: u64, target: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if n == 0 || !arith::is_prime(p) {
            return Err(Error::InvalidParameters(format!(
                "need n >= 1 and p prime, got n={n}, p={p}"
            )));
        }
        let n = n as usize;
        let mut names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
        names.extend((0..=n).rev().map(|j| format!("b{j}")));
        let mut pres =
            Self::new(names, vec![p; 2 * n + 1])?.with_label(format!("nenciu n={n} p={p}"));
        let a = |i: usize| i - 1;
        let b = |j: usize| 2 * n - j;
        for i in 1..=n {
            for j in i..=n {
                let w = if i == 1 {
                    pres.unit(b(j - 1), p - 1)
                } else {
                    pres.unit(b(target(i, j)), 1)
                };
                pres.set_commutator(a(i), b(j), w)?;
            }
        }
        Ok(pres)
    }

    /// `C_p ≀ C_p`, of order `p^{p+1}` and maximal class: `g_0` permutes
    /// the base cyclically and `g_i ↔ (x−1)^{i−1}` in `F_p[x]/(x−1)^p`.
    pub fn wreath_cp_cp(p: u64) -> Result<Self> {
        if !arith::is_prime(p) || p > 7 {
            return Err(Error::InvalidParameters(format!(
                "need a prime p <= 7, got {p}"
            )));
        }
        let m = p as usize + 1;
        let names = (0..m).map(|i| format!("g{}", i + 1)).collect();
        let mut pres = Self::new(names, vec![p; m])?.with_label(format!("C{p} wr C{p}"));
        for i in 1..m - 1 {
            let w = pres.unit(i + 1, p - 1);
            pres.set_commutator(0, i, w)?;
        }
        Ok(pres)
    }
}

#[derive(Debug, Clone)]
pub(super) struct PcEngine {
    orders: Vec<u64>,
    /// `size[k] = |G_k|`, with `size[m] = 1`.
    size: Vec<u64>,
    /// `phi[k][b][t] = φ_k^b(t)` for `t ∈ G_{k+1}`.
    phi: Vec<Vec<Vec<Elem>>>,
    /// `wmul[k][t] = w_k t`, absent when `w_k = 1`.
    wmul: Vec<Option<Vec<Elem>>>,
}

impl PcEngine {
    pub(super) fn build(spec: &PcPresentation) -> Result<(u64, Self)> {
        let m = spec.rank();
        let p = arith::prime_factors(spec.orders[0])[0];
        let mut size = vec![1u64; m + 1];
        for k in (0..m).rev() {
            size[k] = size[k + 1]
                .checked_mul(spec.orders[k])
                .filter(|&s| s <= super::MAX_ORDER)
                .ok_or(Error::BoundExceeded {
                    order: u64::MAX,
                    bound: super::MAX_ORDER,
                })?;
        }
        let mut e = Self {
            orders: spec.orders.clone(),
            size,
            phi: vec![Vec::new(); m],
            wmul: vec![None; m],
        };
        for k in (0..m).rev() {
            e.build_level(spec, k)?;
        }
        Ok((p, e))
    }

    fn word(&self, w: &[u64]) -> Elem {
        w.iter()
            .enumerate()
            .map(|(i, &x)| x * self.size[i + 1])
            .sum::<u64>() as Elem
    }

    fn gen(&self, j: usize) -> Elem {
        self.size[j + 1] as Elem
    }

    fn inv_at(&self, level: usize, x: Elem) -> Elem {
        let (mut acc, mut base, mut e) = (0, x, self.size[level] - 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(level, acc, base);
            }
            base = self.mul(level, base, base);
            e >>= 1;
        }
        acc
    }

    fn build_level(&mut self, spec: &PcPresentation, k: usize) -> Result<()> {
        let m = self.orders.len();
        let o = self.orders[k] as usize;
        let sz = self.size[k + 1] as usize;
        let name = &spec.names[k];
        let w = spec.power(k).map_or(0, |w| self.word(w));
        if k + 1 == m {
            self.phi[k] = vec![vec![0]; o];
            return Ok(());
        }
        let img: Vec<Elem> = (0..m)
            .map(|j| {
                if j <= k {
                    return 0;
                }
                match spec.commutator(k, j) {
                    Some(c) => {
                        let c = self.word(c);
                        self.mul(k + 1, self.gen(j), self.inv_at(k + 1, c))
                    }
                    None => self.gen(j),
                }
            })
            .collect();
        let mut phi1: Vec<Elem> = vec![0; sz];
        for t in 1..sz {
            let j = (k + 1..m)
                .rev()
                .find(|&j| !(t as u64 / self.size[j + 1]).is_multiple_of(self.orders[j]))
                .expect("nonzero element has a nonzero coordinate");
            let prev = t - self.size[j + 1] as usize;
            phi1[t] = self.mul(k + 1, phi1[prev], img[j]);
        }
        let mut seen = vec![false; sz];
        for &y in &phi1 {
            if core::mem::replace(&mut seen[y as usize], true) {
                return Err(inconsistent(format!(
                    "conjugation by {name} is not injective"
                )));
            }
        }
        for x in 0..sz as Elem {
            for j in k + 1..m {
                let lhs = phi1[self.mul(k + 1, x, self.gen(j)) as usize];
                if lhs != self.mul(k + 1, phi1[x as usize], img[j]) {
                    return Err(inconsistent(format!(
                        "conjugation by {name} is not a homomorphism (fails against {})",
                        spec.names[j]
                    )));
                }
            }
        }
        if phi1[w as usize] != w {
            return Err(inconsistent(format!(
                "{name} does not commute with its power {name}^{o}"
            )));
        }
        let mut phi = Vec::with_capacity(o);
        phi.push((0..sz as Elem).collect::<Vec<_>>());
        for b in 1..o {
            let next = phi[b - 1].iter().map(|&t| phi1[t as usize]).collect();
            phi.push(next);
        }
        let w_inv = self.inv_at(k + 1, w);
        for j in k + 1..m {
            let full = phi1[phi[o - 1][self.gen(j) as usize] as usize];
            let by_w = self.mul(k + 1, w_inv, self.mul(k + 1, self.gen(j), w));
            if full != by_w {
                return Err(inconsistent(format!(
                    "conjugation by {name}^{o} disagrees with its power relation on {}",
                    spec.names[j]
                )));
            }
        }
        self.phi[k] = phi;
        if w != 0 {
            self.wmul[k] = Some((0..sz as Elem).map(|t| self.mul(k + 1, w, t)).collect());
        }
        Ok(())
    }

    /// Product of `x, y ∈ G_level`.
    pub(super) fn mul(&self, level: usize, x: Elem, y: Elem) -> Elem {
        let (mut x, mut y) = (x as u64, y as u64);
        let mut head = 0u64;
        for k in level..self.orders.len() {
            let sz = self.size[k + 1];
            let (a, t) = (x / sz, x % sz);
            let (b, u) = (y / sz, y % sz);
            let mut s = a + b;
            let mut v = self.phi[k][b as usize][t as usize];
            if s >= self.orders[k] {
                s -= self.orders[k];
                if let Some(w) = &self.wmul[k] {
                    v = w[v as usize];
                }
            }
            head += s * sz;
            x = v as u64;
            y = u;
        }
        head as Elem
    }
}

/// Re-derives every defining relation in the realized group.
pub(super) fn check_relations(g: &FiniteGroupRep, spec: &PcPresentation) -> Result<()> {
    let gens = g.generators();
    let m = spec.rank();
    for i in 0..m {
        let expected = spec.power(i).map_or(0, |w| g.from_coords(w));
        if g.pow(gens[i], spec.orders[i]) != expected {
            return Err(inconsistent(format!(
                "power relation of {} fails",
                spec.names[i]
            )));
        }
        for j in i + 1..m {
            let expected = spec.commutator(i, j).map_or(0, |w| g.from_coords(w));
            if g.comm(gens[i], gens[j]) != expected {
                return Err(inconsistent(format!(
                    "commutator relation [{},{}] fails",
                    spec.names[i], spec.names[j]
                )));
            }
        }
    }
    Ok(())
}
