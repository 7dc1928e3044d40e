//! Dense linear algebra over a small prime field `F_q`.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Fq {
    pub q: u64,
}

impl Fq {
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.q));
        arith::mod_pow(a, self.q - 2, self.q)
    }

    pub fn pow(self, a: u64, e: u64) -> u64 {
        arith::mod_pow(a, e, self.q)
    }

    /// Some element of multiplicative order exactly `e`, `e | q − 1`.
    pub fn root_of_unity(self, e: u64) -> u64 {
        let q = self.q;
        let factors = arith::prime_factors(q - 1);
        let g = (2..q)
            .find(|&g| factors.iter().all(|&f| self.pow(g, (q - 1) / f) != 1))
            .expect("F_q^* is cyclic");
        self.pow(g, (q - 1) / e)
    }

    /// Characteristic polynomial (low degree first, monic) via reduction to
    /// upper Hessenberg form.
    pub fn charpoly(self, mut h: Vec<Vec<u64>>) -> Vec<u64> {
        let n = h.len();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
                continue;
            };
            if piv != j + 1 {
                h.swap(piv, j + 1);
                for row in h.iter_mut() {
                    row.swap(piv, j + 1);
                }
            }
            let inv = self.inv(h[j + 1][j]);
            for r in j + 2..n {
                let f = self.mul(h[r][j], inv);
                if f == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = self.mul(f, h[j + 1][c]);
                    h[r][c] = self.sub(h[r][c], v);
                }
                for row in h.iter_mut() {
                    let v = self.mul(f, row[r]);
                    row[j + 1] = self.add(row[j + 1], v);
                }
            }
        }
        // p_m = (x − h_mm) p_{m−1} − Σ_{i<m} h_im (Π_{j=i+1}^{m} h_{j,j−1}) p_{i−1}, 1-indexed.
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            let prev = &polys[m - 1];
            let mut pm = vec![0u64; m + 1];
            for (d, &c) in prev.iter().enumerate() {
                pm[d + 1] = self.add(pm[d + 1], c);
                pm[d] = self.sub(pm[d], self.mul(h[m - 1][m - 1], c));
            }
            let mut prod = 1;
            for i in (1..m).rev() {
                prod = self.mul(prod, h[i][i - 1]);
                let coef = self.mul(h[i - 1][m - 1], prod);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[i - 1].iter().enumerate() {
                    pm[d] = self.sub(pm[d], self.mul(coef, c));
                }
            }
            polys.push(pm);
        }
        polys.pop().expect("nonempty")
    }

    pub fn roots(self, poly: &[u64]) -> Vec<u64> {
        (0..self.q)
            .filter(|&x| {
                poly.iter()
                    .rev()
                    .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
                    == 0
            })
            .collect()
    }

    /// Basis of `{v : A v = 0}` for a square or rectangular `A`.
    pub fn nullspace(self, mut a: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, piv);
            let inv = self.inv(a[r][c]);
            a[r].iter_mut().for_each(|x| *x = self.mul(*x, inv));
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for k in c..cols {
                        let v = self.mul(f, a[r][k]);
                        a[i][k] = self.sub(a[i][k], v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let free = (0..cols).filter(|c| !pivots.contains(c));
        free.map(|f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = self.sub(0, a[i][f]);
            }
            v
        })
        .collect()
    }
}

/// A subspace of `F_q^k` in reduced echelon form: each basis vector is `1`
/// at its own pivot and `0` at every other pivot.
#[derive(Debug, Clone)]
pub(crate) struct Subspace {
    pub basis: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    /// Echelonizes linearly independent vectors.
    pub fn from_vectors(f: Fq, mut vs: Vec<Vec<u64>>) -> Self {
        let k = vs.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..k {
            let Some(piv) = (r..vs.len()).find(|&i| vs[i][c] != 0) else {
                continue;
            };
            vs.swap(r, piv);
            let inv = f.inv(vs[r][c]);
            vs[r].iter_mut().for_each(|x| *x = f.mul(*x, inv));
            for i in 0..vs.len() {
                if i != r && vs[i][c] != 0 {
                    let m = vs[i][c];
                    for j in 0..k {
                        let v = f.mul(m, vs[r][j]);
                        vs[i][j] = f.sub(vs[i][j], v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == vs.len() {
                break;
            }
        }
        vs.truncate(r);
        Self { basis: vs, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_and_nullspace() {
        let f = Fq { q: 13 };
        // Companion-like matrix with eigenvalues 1, 2, 3.
        let a = vec![vec![1, 5, 7], vec![0, 2, 4], vec![0, 0, 3]];
        let cp = f.charpoly(a.clone());
        assert_eq!(f.roots(&cp), vec![1, 2, 3]);
        let shifted: Vec<Vec<u64>> = a
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, &x)| if i == j { f.sub(x, 2) } else { x })
                    .collect()
            })
            .collect();
        let ns = f.nullspace(shifted.clone());
        assert_eq!(ns.len(), 1);
        let img: Vec<u64> = shifted
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&ns[0])
                    .fold(0, |s, (&x, &y)| f.add(s, f.mul(x, y)))
            })
            .collect();
        assert!(img.iter().all(|&x| x == 0));
        // Similar dense matrix: the charpoly survives a basis change.
        let dense = vec![vec![4, 1, 0], vec![2, 5, 1], vec![1, 0, 6]];
        let cp = f.charpoly(dense);
        assert_eq!(cp.len(), 4);
        assert_eq!(cp[3], 1);
        assert_eq!(cp[2], f.sub(0, 15 % 13));
        assert_eq!(f.pow(f.root_of_unity(4), 4), 1);
        assert_ne!(f.pow(f.root_of_unity(4), 2), 1);
    }
}
