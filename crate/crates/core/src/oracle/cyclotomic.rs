//! Exact arithmetic in cyclotomic fields `Q(ζ_e)`.
//!
//! A value is stored in the power basis `1, ζ, …, ζ^{φ(e)-1}` with integer
//! numerators over one positive denominator, fully reduced. Values over
//! different moduli are combined in `Q(ζ_lcm)`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::arith;

#[derive(Debug, PartialEq, Eq)]
struct Field {
    e: u64,
    /// `Φ_e`, low degree first, monic of degree `φ(e)`.
    phi: Vec<i128>,
}

fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i128; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd] / den[dd];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn cyclotomic_poly(e: u64) -> Vec<i128> {
    let factors = arith::prime_factors(e);
    if factors.len() == 1 {
        // Φ_{p^k}(x) = Σ_{i<p} x^{i p^{k-1}}.
        let p = factors[0];
        let step = (e / p) as usize;
        let mut out = vec![0i128; (p as usize - 1) * step + 1];
        for i in 0..p as usize {
            out[i * step] = 1;
        }
        return out;
    }
    if e == 1 {
        return vec![-1, 1];
    }
    let mut num = vec![0i128; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    for d in arith::divisors(e) {
        if d < e {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

impl Field {
    fn new(e: u64) -> Arc<Self> {
        assert!(e >= 1, "cyclotomic modulus must be positive");
        Arc::new(Self {
            e,
            phi: cyclotomic_poly(e),
        })
    }

    fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Reduces a polynomial in `ζ` of any length.
    fn reduce(&self, mut raw: Vec<i128>) -> Vec<i128> {
        let e = self.e as usize;
        if raw.len() > e {
            for i in e..raw.len() {
                let c = core::mem::take(&mut raw[i]);
                raw[i % e] += c;
            }
            raw.truncate(e);
        }
        let deg = self.degree();
        for i in (deg..raw.len()).rev() {
            let c = raw[i];
            if c != 0 {
                for (j, &pj) in self.phi.iter().enumerate() {
                    raw[i - deg + j] -= c * pj;
                }
            }
        }
        raw.resize(deg, 0);
        raw
    }
}

/// An element of `Q(ζ_e)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<Field>,
    num: Vec<i128>,
    den: i128,
}

impl Cyclotomic {
    fn build(field: Arc<Field>, num: Vec<i128>, den: i128) -> Self {
        let mut out = Self { field, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            self.num.iter_mut().for_each(|c| *c = -*c);
        }
        let g = self.num.iter().fold(self.den, |g, &c| g.gcd(&c));
        if g > 1 {
            self.den /= g;
            self.num.iter_mut().for_each(|c| *c /= g);
        }
    }

    /// `Σ_t coeffs[t] ζ_e^t` for any number of coefficients.
    pub fn from_powers(e: u64, coeffs: &[i128]) -> Self {
        let field = Field::new(e);
        let num = field.reduce(coeffs.to_vec());
        Self::build(field, num, 1)
    }

    pub fn zeta_power(e: u64, k: u64) -> Self {
        let mut raw = vec![0i128; e as usize];
        raw[(k % e) as usize] = 1;
        Self::from_powers(e, &raw)
    }

    pub fn from_rational(r: Ratio<i128>) -> Self {
        Self::build(Field::new(1), vec![*r.numer()], *r.denom())
    }

    pub fn from_int(n: i128) -> Self {
        Self::from_rational(Ratio::from_integer(n))
    }

    /// The ambient modulus `e`.
    pub fn modulus(&self) -> u64 {
        self.field.e
    }

    /// Power-basis numerators and the common denominator.
    pub fn key(&self) -> (&[i128], i128) {
        (&self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn as_rational(&self) -> Option<Ratio<i128>> {
        self.num[1..]
            .iter()
            .all(|&c| c == 0)
            .then(|| Ratio::new(self.num[0], self.den))
    }

    /// The same value inside `Q(ζ_f)`, `e | f`.
    pub fn lift(&self, f: u64) -> Self {
        let e = self.field.e;
        assert!(f.is_multiple_of(e), "cannot embed Q(z{e}) into Q(z{f})");
        if f == e {
            return self.clone();
        }
        let step = (f / e) as usize;
        let mut raw = vec![0i128; self.num.len() * step.max(1)];
        for (i, &c) in self.num.iter().enumerate() {
            raw[i * step] = c;
        }
        let field = Field::new(f);
        let num = field.reduce(raw);
        Self::build(field, num, self.den)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.field.e == b.field.e {
            return (a.clone(), b.clone());
        }
        let l = a.field.e.lcm(&b.field.e);
        (a.lift(l), b.lift(l))
    }

    /// `σ_t : ζ_e ↦ ζ_e^t`, `gcd(t, e) = 1`.
    pub fn galois(&self, t: u64) -> Self {
        let e = self.field.e;
        debug_assert_eq!(arith::gcd(t % e.max(1), e), 1);
        let mut raw = vec![0i128; e as usize];
        for (i, &c) in self.num.iter().enumerate() {
            raw[(i as u64 * t % e) as usize] += c;
        }
        let num = self.field.reduce(raw);
        Self::build(self.field.clone(), num, self.den)
    }

    /// Image under `ζ_e ↦ ω` in `F_q`, given `ω^i` for `i < φ(e)`; `None`
    /// unless the value is an algebraic integer in `Q(ζ_e)` itself.
    pub(crate) fn eval_mod(&self, omega_powers: &[u64], q: u64) -> Option<u64> {
        if self.den != 1 || self.num.len() != omega_powers.len() {
            return None;
        }
        let q128 = q as i128;
        Some(
            self.num
                .iter()
                .zip(omega_powers)
                .fold(0u64, |acc, (&c, &w)| {
                    let c = c.rem_euclid(q128) as u128;
                    ((acc as u128 + c * w as u128) % q as u128) as u64
                }),
        )
    }

    /// Sum of absolute coefficients: bounds `|σ(x)|` for every embedding.
    pub(crate) fn l1_norm(&self) -> u128 {
        self.num.iter().map(|c| c.unsigned_abs()).sum()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        let e = self.field.e;
        self.galois(e - 1 + (e == 1) as u64)
    }

    pub fn scale(&self, r: Ratio<i128>) -> Self {
        let num = self.num.iter().map(|&c| c * r.numer()).collect();
        Self::build(self.field.clone(), num, self.den * r.denom())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.field.e == other.field.e {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(&x, &y)| x * b.den + y * a.den)
            .collect();
        Cyclotomic::build(a.field, num, a.den * b.den)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        let num = self.num.iter().map(|&c| -c).collect();
        Cyclotomic::build(self.field.clone(), num, self.den)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        let n = a.num.len();
        let mut raw = vec![0i128; 2 * n];
        for (i, &x) in a.num.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.num.iter().enumerate() {
                raw[i + j] += x * y;
            }
        }
        let num = a.field.reduce(raw);
        Cyclotomic::build(a.field, num, a.den * b.den)
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;

            fn $f(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$f(&rhs)
            }
        }
    };
}

by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::from_int(0)
    }

    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.field.e;
        let mut first = true;
        if self.den != 1 {
            write!(f, "(")?;
        }
        for (i, &c) in self.num.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = match (first, c < 0) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mag = c.unsigned_abs();
            let power = if i == 1 {
                format!("z{e}")
            } else {
                format!("z{e}^{i}")
            };
            match (i, mag) {
                (0, _) => write!(f, "{sign}{mag}")?,
                (_, 1) => write!(f, "{sign}{power}")?,
                _ => write!(f, "{sign}{mag}*{power}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if self.den != 1 {
            write!(f, ")/{}", self.den)?;
        }
        Ok(())
    }
}
