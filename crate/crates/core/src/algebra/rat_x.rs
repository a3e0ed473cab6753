use std::fmt;

use super::{field_ops, poly_gcd, Field, ParamRat, PolyX, Q};

/// An element of K(x): coprime `num/den` with `den` monic in `x`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatX {
    num: PolyX,
    den: PolyX,
}

impl RatX {
    /// Builds `num/den` in canonical form; panics if `den` is zero.
    pub fn new(num: PolyX, den: PolyX) -> Self {
        assert!(!den.is_zero(), "zero denominator in RatX");
        if num.is_zero() {
            return Self::from_poly(PolyX::zero());
        }
        if den.is_constant() {
            return Self::from_poly(num.scale(&den.lc().inv()));
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let c = den.lc().inv();
        RatX {
            num: num.scale(&c),
            den: den.scale(&c),
        }
    }

    pub fn from_poly(p: PolyX) -> Self {
        RatX {
            num: p,
            den: PolyX::one(),
        }
    }

    pub fn from_param(c: ParamRat) -> Self {
        Self::from_poly(PolyX::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_param(ParamRat::from_int(n))
    }

    pub fn x() -> Self {
        Self::from_poly(PolyX::x())
    }

    pub fn num(&self) -> &PolyX {
        &self.num
    }

    pub fn den(&self) -> &PolyX {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as an element of K, if it is free of `x`.
    pub fn as_param(&self) -> Option<ParamRat> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.num.is_zero()).then(|| self.num.deg() - self.den.deg())
    }

    /// Ratio of leading coefficients (the value of `x^{-degree} * self` at infinity).
    pub fn leading(&self) -> ParamRat {
        if self.num.is_zero() {
            return ParamRat::zero();
        }
        self.num.lc().div(&self.den.lc())
    }

    pub fn scale(&self, c: &ParamRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatX {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &PolyX) -> Self {
        if self.den.is_one() {
            return Self::from_poly(&self.num * p);
        }
        Self::new(&self.num * p, self.den.clone())
    }

    pub fn div_poly(&self, p: &PolyX) -> Self {
        Self::new(self.num.clone(), &self.den * p)
    }

    /// Multiplies by `x^k` for any integer `k`.
    pub fn mul_xpow(&self, k: i64) -> Self {
        if k >= 0 {
            self.mul_poly(&PolyX::monomial(ParamRat::one(), k as usize))
        } else {
            self.div_poly(&PolyX::monomial(ParamRat::one(), (-k) as usize))
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut r = Self::one();
        for _ in 0..k.unsigned_abs() {
            r = r.mul(&base);
        }
        r
    }

    /// Derivative with respect to `x`.
    pub fn dx(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Derivative with respect to `t`.
    pub fn dt(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.dt());
        }
        let n = &(&self.num.dt() * &self.den) - &(&self.num * &self.den.dt());
        Self::new(n, &self.den * &self.den)
    }

    /// Value at `x = x0`; `None` at a pole.
    pub fn eval(&self, x0: &ParamRat) -> Option<ParamRat> {
        let d = self.den.eval(x0);
        (!d.is_zero()).then(|| self.num.eval(x0).div(&d))
    }

    /// Specializes `t = t0` and returns `(num, den)` over ℚ; `None` on a
    /// pole in `t` or a vanishing denominator.
    pub fn eval_t(&self, t0: &Q) -> Option<(Vec<Q>, Vec<Q>)> {
        let n = self.num.eval_t(t0)?;
        let d = self.den.eval_t(t0)?;
        if d.iter().all(num_traits::Zero::is_zero) {
            return None;
        }
        Some((n, d))
    }

    /// Substitutes `x -> (a x + b) / (c x + d)`.
    pub fn mobius(&self, a: &ParamRat, b: &ParamRat, c: &ParamRat, d: &ParamRat) -> Self {
        let (pn, kn) = mobius_poly(&self.num, a, b, c, d);
        let (pd, kd) = mobius_poly(&self.den, a, b, c, d);
        let lin = PolyX::new(vec![d.clone(), c.clone()]);
        let diff = kn as i64 - kd as i64;
        if diff >= 0 {
            Self::new(pn, &pd * &lin.pow(diff as u32))
        } else {
            Self::new(&pn * &lin.pow((-diff) as u32), pd)
        }
    }
}

/// `p((a x + b)/(c x + d)) = P(x) / (c x + d)^k` with `k = deg p`; returns `(P, k)`.
pub(crate) fn mobius_poly(
    p: &PolyX,
    a: &ParamRat,
    b: &ParamRat,
    c: &ParamRat,
    d: &ParamRat,
) -> (PolyX, usize) {
    let k = p.degree().unwrap_or(0);
    let top = PolyX::new(vec![b.clone(), a.clone()]);
    let bot = PolyX::new(vec![d.clone(), c.clone()]);
    let mut acc = PolyX::zero();
    for (i, ci) in p.coeffs().iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let term = &top.pow(i as u32) * &bot.pow((k - i) as u32);
        acc = &acc + &term.scale(ci);
    }
    (acc, k)
}

impl Field for RatX {
    fn zero() -> Self {
        Self::from_poly(PolyX::zero())
    }

    fn one() -> Self {
        Self::from_poly(PolyX::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            if self.den.is_one() {
                return Self::from_poly(&self.num + &other.num);
            }
            return Self::new(&self.num + &other.num, self.den.clone());
        }
        let g = poly_gcd(&self.den, &other.den);
        let a = self.den.exact_div(&g).unwrap();
        let b = other.den.exact_div(&g).unwrap();
        let n = &(&self.num * &b) + &(&other.num * &a);
        if n.is_zero() {
            return Self::zero();
        }
        // Any common factor of n and a*b*g divides g.
        let h = poly_gcd(&n, &g);
        let (n, g) = if h.is_one() {
            (n, g)
        } else {
            (n.exact_div(&h).unwrap(), g.exact_div(&h).unwrap())
        };
        RatX {
            num: n,
            den: &(&a * &b) * &g,
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num * &other.num);
        }
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = other.den.exact_div(&g1).unwrap();
        let n2 = other.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        let d = &d1 * &d2;
        let c = d.lc().inv();
        RatX {
            num: (&n1 * &n2).scale(&c),
            den: d.scale(&c),
        }
    }

    fn neg(&self) -> Self {
        RatX {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in K(x)");
        Self::new(self.den.clone(), self.num.clone())
    }
}

field_ops!(RatX);

impl fmt::Display for RatX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = self.num.to_string();
        let d = self.den.to_string();
        let n = if needs_parens(&n) { format!("({n})") } else { n };
        let d = if needs_parens(&d) || d.contains('/') {
            format!("({d})")
        } else {
            d
        };
        write!(f, "{n}/{d}")
    }
}

/// True if `s` is not a single factor (contains a top-level `+`, `-` or `*`).
pub(crate) fn needs_parens(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '*' | '/' if depth == 0 => return true,
            '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}
