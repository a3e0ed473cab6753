use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ring_ops, Q};

/// Dense univariate polynomial in `t` over ℚ. Trailing zeros are stripped.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PolyT {
    coeffs: Vec<Q>,
}

impl PolyT {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyT { coeffs }
    }

    pub fn zero() -> Self {
        PolyT { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn t() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::new(v)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Self::new(v)
    }

    pub fn neg_ref(&self) -> Self {
        PolyT {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyT {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = r.mul_ref(self);
        }
        r
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let lc_inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut quo = vec![Q::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * b;
                }
            }
            quo[k] = c;
        }
        r.truncate(dd);
        (Self::new(quo), Self::new(r))
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// Monic gcd; `gcd(0, 0) = 0`. Coprimality and divisibility are
    /// detected modulo a prime; otherwise a primitive remainder sequence
    /// over ℤ is used.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one();
        }
        let (mut x, mut y) = (a.primitive_ints(), b.primitive_ints());
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        let (xp, yp) = (mod_prime(&x), mod_prime(&y));
        if xp.last() != Some(&0) && yp.last() != Some(&0) {
            // Reduction preserves degrees, so deg gcd <= deg of the image gcd.
            let d = gcd_mod_prime_degree(xp, yp);
            if d == 0 {
                return Self::one();
            }
            if d + 1 == y.len() && int_divides(&y, &x) {
                return from_ints(&y).monic();
            }
        }
        while !y.is_empty() {
            let r = int_pseudo_rem(&x, &y);
            x = y;
            y = int_primitive_part(r);
        }
        from_ints(&x).monic()
    }

    /// Coprime integer coefficients, up to sign.
    fn primitive_ints(&self) -> Vec<BigInt> {
        let (_, p) = self.integer_primitive();
        p.coeffs.iter().map(|c| c.numer().clone()).collect()
    }

    /// The polynomial of degree `< xs.len()` through `(xs[i], ys[i])`;
    /// the nodes must be distinct.
    pub fn interpolate(xs: &[Q], ys: &[Q]) -> Self {
        // Newton divided differences.
        let mut dd = ys.to_vec();
        for k in 1..xs.len() {
            for i in (k..xs.len()).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - k]);
            }
        }
        let mut p = Self::zero();
        for i in (0..xs.len()).rev() {
            let lin = PolyT::new(vec![-xs[i].clone(), Q::one()]);
            p = &(&p * &lin) + &Self::constant(dd[i].clone());
        }
        p
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Q::from_integer(BigInt::from(k)))
            .collect();
        Self::new(v)
    }

    pub fn eval(&self, t0: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t0 + c;
        }
        acc
    }

    /// Value at `t0` modulo [`PRIME`]; `None` if a coefficient denominator
    /// vanishes there.
    pub(crate) fn eval_mod_prime(&self, t0: u64) -> Option<u64> {
        let p = BigInt::from(PRIME);
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            let d = c.denom().mod_floor(&p).to_u64().unwrap();
            if d == 0 {
                return None;
            }
            let n = c.numer().mod_floor(&p).to_u64().unwrap();
            acc = (acc * t0 % PRIME + n * inv_mod_prime(d) % PRIME) % PRIME;
        }
        Some(acc)
    }

    /// Returns `(c, p)` with `self = c * p`, `p` having coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn integer_primitive(&self) -> (Q, PolyT) {
        if self.is_zero() {
            return (Q::one(), Self::zero());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in &self.coeffs {
            num = num.gcd(&(c.numer() * (&den / c.denom())));
        }
        if self.lc().is_negative() {
            num = -num;
        }
        let c = Q::new(num, den);
        (c.clone(), self.scale(&c.recip()))
    }
}

ring_ops!(PolyT);

/// Largest prime below 2^32; products of residues fit in a `u64`.
pub(crate) const PRIME: u64 = 4_294_967_291;

fn mod_prime(v: &[BigInt]) -> Vec<u64> {
    let p = BigInt::from(PRIME);
    v.iter()
        .map(|c| c.mod_floor(&p).to_u64().unwrap())
        .collect()
}

pub(crate) fn inv_mod_prime(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % PRIME, PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % PRIME;
        }
        base = base * base % PRIME;
        e >>= 1;
    }
    acc
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of the gcd of two nonzero polynomials over ℤ/p.
pub(crate) fn gcd_mod_prime_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let inv = inv_mod_prime(*b.last().unwrap());
        let db = b.len() - 1;
        while a.len() > db {
            let k = a.len() - 1 - db;
            let c = a.last().unwrap() * inv % PRIME;
            for (j, bj) in b.iter().enumerate() {
                a[k + j] = (a[k + j] + PRIME - c * bj % PRIME) % PRIME;
            }
            trim_mod(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn int_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of `a` by `b` over ℤ.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lb = b.last().unwrap();
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &lr * bj;
        }
        r = int_trim(r);
    }
    r
}

fn int_primitive_part(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// Whether `b` divides `a` in ℚ[t], for integer coefficient vectors.
fn int_divides(b: &[BigInt], a: &[BigInt]) -> bool {
    from_ints(a).div_rem(&from_ints(b)).1.is_zero()
}

fn from_ints(v: &[BigInt]) -> PolyT {
    PolyT::new(v.iter().map(|c| Q::from_integer(c.clone())).collect())
}

pub(crate) fn fmt_rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Writes `c * var^k` terms in descending order, `+`/`-` joined.
pub(crate) fn fmt_dense(coeffs: &[Q], var: &str) -> String {
    let mut out = String::new();
    for k in (0..coeffs.len()).rev() {
        let c = &coeffs[k];
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let body = if k == 0 {
            fmt_rational(&a)
        } else if a.is_one() {
            mono
        } else {
            format!("{}*{}", fmt_rational(&a), mono)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { "-" } else { "+" });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_dense(&self.coeffs, "t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn p(c: &[i64]) -> PolyT {
        PolyT::new(c.iter().map(|&a| q(a)).collect())
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = PolyT::new(vec![q(3), q(-1), q(0), q(2)]);
        let xs: Vec<Q> = (-2..2).map(q).collect();
        let ys: Vec<Q> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(PolyT::interpolate(&xs, &ys), p);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(PolyT::gcd(&a, &b), p(&[-1, 1]));
        assert_eq!(PolyT::gcd(&PolyT::zero(), &PolyT::zero()), PolyT::zero());
    }

    #[test]
    fn division_identity() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[5, 0, 2]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(&(&qq * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -4, 4]).to_string(), "4*t^2-4*t+1");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        assert_eq!(PolyT::zero().to_string(), "0");
        let third = PolyT::constant(crate::algebra::q_frac(-1, 3));
        assert_eq!(third.to_string(), "-1/3");
    }

    #[test]
    fn integer_primitive_form() {
        let a = PolyT::new(vec![crate::algebra::q_frac(-1, 2), q(0), crate::algebra::q_frac(-3, 4)]);
        let (c, pp) = a.integer_primitive();
        assert_eq!(pp, p(&[2, 0, 3]));
        assert_eq!(pp.scale(&c), a);
    }
}
