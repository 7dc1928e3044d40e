//! Finite abelian p-groups: invariants, cyclic-subgroup counting, Smith
//! normal form and the Perlis–Walker decomposition of their rational group
//! algebras.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::decomp::{SimpleComponent, WeddDecomp};
use crate::error::{Error, Result};

/// Isomorphism type `C_{p^{α₁}} × … × C_{p^{α_k}}` with `α₁ ≤ … ≤ α_k`.
///
/// The trivial group has an empty exponent list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawType"))]
pub struct AbelianPType {
    p: u64,
    exponents: Vec<u32>,
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
struct RawType {
    p: u64,
    exponents: Vec<u32>,
}

#[cfg(feature = "serde")]
impl TryFrom<RawType> for AbelianPType {
    type Error = Error;

    fn try_from(raw: RawType) -> Result<Self> {
        if raw.exponents.windows(2).any(|w| w[0] > w[1]) || raw.exponents.contains(&0) {
            return Err(Error::InvalidType(format!(
                "exponents {:?} must be positive and nondecreasing",
                raw.exponents
            )));
        }
        AbelianPType::new(raw.p, raw.exponents)
    }
}

impl AbelianPType {
    /// Builds a type from cyclic factor exponents in any order. Zero
    /// exponents (trivial factors `C_{p^0}`) are dropped.
    pub fn new(p: u64, exponents: impl Into<Vec<u32>>) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut exponents: Vec<u32> = exponents.into();
        exponents.retain(|&e| e > 0);
        exponents.sort_unstable();
        Ok(Self { p, exponents })
    }

    pub fn trivial(p: u64) -> Result<Self> {
        Self::new(p, Vec::new())
    }

    /// Cyclic group of order `p^n`.
    pub fn cyclic(p: u64, n: u32) -> Result<Self> {
        Self::new(p, vec![n])
    }

    /// Elementary abelian group of order `p^rank`.
    pub fn elementary(p: u64, rank: usize) -> Result<Self> {
        Self::new(p, vec![1; rank])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    /// `log_p` of the order.
    pub fn order_log(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn order(&self) -> u64 {
        arith::pow(self.p, self.order_log())
    }

    /// `log_p` of the exponent; 0 for the trivial group.
    pub fn exponent_log(&self) -> u32 {
        self.exponents.last().copied().unwrap_or(0)
    }

    pub fn exponent(&self) -> u64 {
        arith::pow(self.p, self.exponent_log())
    }

    /// Whether this type occurs as a quotient (equivalently, a subgroup) of
    /// `other`: the exponents, largest first, are dominated entrywise.
    pub fn is_quotient_of(&self, other: &AbelianPType) -> bool {
        self.p == other.p
            && self.rank() <= other.rank()
            && self
                .exponents
                .iter()
                .rev()
                .zip(other.exponents.iter().rev())
                .all(|(a, b)| a <= b)
    }

    /// `h_p^{k-1}(alpha)` evaluated with the block index `j` (1-based), or
    /// `None` when `j` is not admissible (`α_{j-1} ≤ alpha ≤ α_j` fails).
    pub fn h_with_index(&self, alpha: u32, j: usize) -> Option<u128> {
        let k = self.exponents.len();
        if j == 0 || j > k {
            return None;
        }
        let lower = if j == 1 { 0 } else { self.exponents[j - 2] };
        let upper = self.exponents[j - 1];
        if alpha < lower || alpha > upper {
            return None;
        }
        let e = (k - j) as u32 * alpha + self.exponents[..j - 1].iter().sum::<u32>();
        Some((self.p as u128).pow(e))
    }

    /// `h` with the smallest admissible block index. Defined for
    /// `0 ≤ alpha ≤ α_k`.
    fn h(&self, alpha: u32) -> u128 {
        (1..=self.exponents.len())
            .find_map(|j| self.h_with_index(alpha, j))
            .expect("alpha within [0, alpha_k]")
    }
}

impl fmt::Display for AbelianPType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "C{}", arith::pow(self.p, *e))?;
        }
        Ok(())
    }
}

/// Number of cyclic subgroups of order `p^alpha`.
///
/// Total: 1 at `alpha = 0`, 0 above the exponent.
pub fn count_cyclic_subgroups(t: &AbelianPType, alpha: u32) -> u64 {
    if alpha == 0 {
        return 1;
    }
    if alpha > t.exponent_log() {
        return 0;
    }
    let p = t.p as u128;
    let num = p * t.h(alpha) - t.h(alpha - 1);
    debug_assert_eq!(num % (p - 1), 0);
    u64::try_from(num / (p - 1)).expect("cyclic subgroup count overflows u64")
}

/// Number of elements of order exactly `p^alpha`.
pub fn count_elements_of_order(t: &AbelianPType, alpha: u32) -> u64 {
    if alpha == 0 {
        return 1;
    }
    arith::totient(arith::pow(t.p, alpha)) * count_cyclic_subgroups(t, alpha)
}

/// `QA ≅ ⊕_{d | exp} a_d Q(ζ_d)` with `a_d` the number of cyclic subgroups
/// of order `d`.
pub fn perlis_walker(t: &AbelianPType) -> WeddDecomp {
    let components = (0..=t.exponent_log()).map(|lambda| SimpleComponent {
        multiplicity: count_cyclic_subgroups(t, lambda),
        matrix_size: 1,
        conductor: arith::pow(t.p, lambda),
    });
    WeddDecomp::from_components(t.order(), components)
}

/// Integer relation matrix: columns index abelian generators, rows are
/// relations (exponent vectors that equal the identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationMatrix {
    ncols: usize,
    rows: Vec<Vec<i64>>,
}

impl RelationMatrix {
    pub fn new(ncols: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::InvalidType(format!(
                "relation row of length {} for {ncols} generators",
                r.len()
            )));
        }
        Ok(Self { ncols, rows })
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Diagonal of the Smith normal form, one entry per column; columns
    /// past the rank report 0.
    pub fn elementary_divisors(&self) -> Vec<i128> {
        let mut a: Vec<Vec<i128>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let nrows = a.len();
        let ncols = self.ncols;
        let mut diag = vec![0i128; ncols];
        for t in 0..nrows.min(ncols) {
            if !smith_step(&mut a, t) {
                break;
            }
            diag[t] = a[t][t].abs();
        }
        diag
    }
}

/// Brings the minimal-absolute-value pivot of the trailing block to
/// `(t, t)` and clears its row and column, keeping the divisibility chain.
/// Returns false when the trailing block is zero.
fn smith_step(a: &mut [Vec<i128>], t: usize) -> bool {
    let nrows = a.len();
    let ncols = a[0].len();
    loop {
        let Some((pi, pj)) = min_pivot(a, t) else {
            return false;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        for i in t + 1..nrows {
            let q = a[i][t].div_euclid(a[t][t]);
            if q != 0 {
                for j in t..ncols {
                    a[i][j] -= q * a[t][j];
                }
            }
            dirty |= a[i][t] != 0;
        }
        for j in t + 1..ncols {
            let q = a[t][j].div_euclid(a[t][t]);
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    row[j] -= q * row[t];
                }
            }
            dirty |= a[t][j] != 0;
        }
        if dirty {
            continue;
        }
        // Row and column cleared; enforce pivot | every trailing entry.
        let pivot = a[t][t];
        let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| a[i][j] % pivot != 0));
        match bad {
            Some(i) => {
                for j in t..ncols {
                    a[t][j] += a[i][j];
                }
            }
            None => return true,
        }
    }
}

fn min_pivot(a: &[Vec<i128>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i128)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, &x) in row.iter().enumerate().skip(t) {
            if x != 0 && best.is_none_or(|(_, _, b)| x.abs() < b) {
                best = Some((i, j, x.abs()));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Abelian p-type of `ℤ^n / rowspace(m)`.
pub fn smith_invariants(m: &RelationMatrix, p: u64) -> Result<AbelianPType> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut exponents = Vec::new();
    for d in m.elementary_divisors() {
        if d == 0 {
            return Err(Error::InfiniteGroup);
        }
        let d = u64::try_from(d).map_err(|_| Error::InfiniteGroup)?;
        match arith::log_exact(d, p) {
            Some(0) => {}
            Some(e) => exponents.push(e),
            None => return Err(Error::NotPGroup { p, divisor: d }),
        }
    }
    AbelianPType::new(p, exponents)
}
