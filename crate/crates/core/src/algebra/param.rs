use std::fmt;


use super::{field_ops, Field, PolyT, Q};

/// An element of K = ℚ(t): coprime `num/den` with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamRat {
    num: PolyT,
    den: PolyT,
}

impl ParamRat {
    /// Builds `num/den` in canonical form; panics if `den` is zero.
    pub fn new(num: PolyT, den: PolyT) -> Self {
        assert!(!den.is_zero(), "zero denominator in ParamRat");
        if num.is_zero() {
            return Self::zero_elem();
        }
        if den.is_constant() {
            let c = den.lc().recip();
            return ParamRat {
                num: num.scale(&c),
                den: PolyT::one(),
            };
        }
        let g = PolyT::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let c = den.lc().recip();
        ParamRat {
            num: num.scale(&c),
            den: den.scale(&c),
        }
    }

    fn zero_elem() -> Self {
        ParamRat {
            num: PolyT::zero(),
            den: PolyT::one(),
        }
    }

    pub fn from_poly(p: PolyT) -> Self {
        ParamRat {
            num: p,
            den: PolyT::one(),
        }
    }

    pub fn from_q(c: Q) -> Self {
        Self::from_poly(PolyT::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_q(super::q(n))
    }

    pub fn t() -> Self {
        Self::from_poly(PolyT::t())
    }

    pub fn num(&self) -> &PolyT {
        &self.num
    }

    pub fn den(&self) -> &PolyT {
        &self.den
    }

    /// True if the element lies in ℚ.
    pub fn is_rational(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.is_rational().then(|| self.num.coeff(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Derivative with respect to `t`.
    pub fn dt(&self) -> Self {
        if self.num.is_constant() && self.den.is_one() {
            return Self::zero_elem();
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Evaluates at `t = t0`; `None` at a pole.
    pub fn eval(&self, t0: &Q) -> Option<Q> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(t0) / d)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut r = Self::one();
        for _ in 0..k.unsigned_abs() {
            r = r.mul(&base);
        }
        r
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero_elem();
        }
        ParamRat {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// True if printing needs parentheses when used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        let terms = self.num.coeffs().iter().filter(|c| !c.is_zero()).count();
        terms > 1 || !self.den.is_one()
    }
}

impl Field for ParamRat {
    fn zero() -> Self {
        Self::zero_elem()
    }

    fn one() -> Self {
        Self::from_poly(PolyT::one())
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
            return Self::new(&self.num + &other.num, self.den.clone());
        }
        if self.den.is_one() {
            return ParamRat {
                num: &(&self.num * &other.den) + &other.num,
                den: other.den.clone(),
            };
        }
        if other.den.is_one() {
            return ParamRat {
                num: &self.num + &(&other.num * &self.den),
                den: self.den.clone(),
            };
        }
        let g = PolyT::gcd(&self.den, &other.den);
        let a = self.den.exact_div(&g).unwrap();
        let b = other.den.exact_div(&g).unwrap();
        let n = &(&self.num * &b) + &(&other.num * &a);
        if n.is_zero() {
            return Self::zero_elem();
        }
        let h = PolyT::gcd(&n, &g);
        let (n, g) = if h.is_one() {
            (n, g)
        } else {
            (n.exact_div(&h).unwrap(), g.exact_div(&h).unwrap())
        };
        ParamRat {
            num: n,
            den: &(&a * &b) * &g,
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero_elem();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num * &other.num);
        }
        let g1 = PolyT::gcd(&self.num, &other.den);
        let g2 = PolyT::gcd(&other.num, &self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = other.den.exact_div(&g1).unwrap();
        let n2 = other.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        ParamRat {
            num: &n1 * &n2,
            den: &d1 * &d2,
        }
    }

    fn neg(&self) -> Self {
        ParamRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in K");
        Self::new(self.den.clone(), self.num.clone())
    }
}

field_ops!(ParamRat);

impl fmt::Display for ParamRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num_terms = self.num.coeffs().iter().filter(|c| !c.is_zero()).count();
        let den_terms = self.den.coeffs().iter().filter(|c| !c.is_zero()).count();
        let n = if num_terms > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let d = if den_terms > 1 {
            format!("({})", self.den)
        } else {
            self.den.to_string()
        };
        write!(f, "{n}/{d}")
    }
}
