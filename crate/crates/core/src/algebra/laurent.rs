use std::fmt;

use super::{Field, ParamRat, PolyX, RatX};

/// Laurent polynomial `Σ_k c_k x^k` over K, stored from its lowest exponent.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<ParamRat>,
}

impl LaurentPoly {
    /// Builds `Σ_i coeffs[i] x^{low+i}`, trimming zeros at both ends.
    pub fn new(mut low: i64, mut coeffs: Vec<ParamRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        low += lead as i64;
        LaurentPoly { low, coeffs }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(c: ParamRat, k: i64) -> Self {
        Self::new(k, vec![c])
    }

    pub fn from_poly(p: &PolyX) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }

    /// Converts a rational function whose denominator is a power of `x`.
    pub fn from_rat(r: &RatX) -> Option<Self> {
        let d = r.den();
        let k = d.deg();
        if d.ord_x() != Some(k as usize) {
            return None;
        }
        Some(Self::new(-k, r.num().coeffs().to_vec()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, k: i64) -> ParamRat {
        let i = k - self.low;
        if i < 0 {
            return ParamRat::zero();
        }
        self.coeffs
            .get(i as usize)
            .cloned()
            .unwrap_or_else(ParamRat::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(other.low);
        let hi = self.high().unwrap().max(other.high().unwrap());
        Self::new(
            lo,
            (lo..=hi)
                .map(|k| self.coeff(k).add(&other.coeff(k)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ParamRat) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn mul_poly(&self, p: &PolyX) -> Self {
        let prod = &PolyX::new(self.coeffs.clone()) * p;
        Self::new(self.low, prod.coeffs().to_vec())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prod = &PolyX::new(self.coeffs.clone()) * &PolyX::new(other.coeffs.clone());
        Self::new(self.low + other.low, prod.coeffs().to_vec())
    }

    /// Derivative with respect to `x`.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.low - 1,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale_q(&super::q(self.low + i as i64)))
                .collect(),
        )
    }

    pub fn to_rat(&self) -> RatX {
        if self.is_zero() {
            return RatX::zero();
        }
        RatX::from_poly(PolyX::new(self.coeffs.clone())).mul_xpow(self.low)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(ParamRat, String)> = (0..self.coeffs.len())
            .rev()
            .map(|i| {
                let k = self.low + i as i64;
                let mono = match k {
                    0 => String::new(),
                    1 => "x".to_string(),
                    k if k < 0 => format!("x^({k})"),
                    _ => format!("x^{k}"),
                };
                (self.coeffs[i].clone(), mono)
            })
            .collect();
        let mut out = String::new();
        super::poly_x::fmt_coeff_terms(&terms, &mut out, |c| c.is_compound());
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// A vector of Laurent polynomials (an element of K[x, x^{-1}]^n).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentVec {
    pub components: Vec<LaurentPoly>,
}

impl LaurentVec {
    pub fn new(components: Vec<LaurentPoly>) -> Self {
        LaurentVec { components }
    }

    pub fn zero(n: usize) -> Self {
        LaurentVec {
            components: vec![LaurentPoly::zero(); n],
        }
    }

    /// The unit vector `e_i x^k`.
    pub fn unit(n: usize, i: usize, k: i64) -> Self {
        let mut v = Self::zero(n);
        v.components[i] = LaurentPoly::monomial(ParamRat::one(), k);
        v
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn low(&self) -> Option<i64> {
        self.components.iter().filter_map(|c| c.low()).min()
    }

    pub fn high(&self) -> Option<i64> {
        self.components.iter().filter_map(|c| c.high()).max()
    }

    pub fn coeff(&self, i: usize, k: i64) -> ParamRat {
        self.components[i].coeff(k)
    }

    pub fn add(&self, other: &Self) -> Self {
        LaurentVec::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        LaurentVec::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn scale(&self, c: &ParamRat) -> Self {
        LaurentVec::new(self.components.iter().map(|a| a.scale(c)).collect())
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentVec::new(self.components.iter().map(|a| a.shift(k)).collect())
    }

    pub fn to_rats(&self) -> Vec<RatX> {
        self.components.iter().map(|c| c.to_rat()).collect()
    }

    pub fn from_rats(v: &[RatX]) -> Option<Self> {
        v.iter()
            .map(LaurentPoly::from_rat)
            .collect::<Option<Vec<_>>>()
            .map(LaurentVec::new)
    }
}

impl fmt::Display for LaurentVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_trim() {
        let z = ParamRat::zero();
        let o = ParamRat::one();
        let p = LaurentPoly::new(-2, vec![z.clone(), o.clone(), z.clone()]);
        assert_eq!(p.low(), Some(-1));
        assert_eq!(p.high(), Some(-1));
        assert!(LaurentPoly::new(3, vec![z]).is_zero());
    }

    #[test]
    fn rat_round_trip() {
        let p = LaurentPoly::new(-2, vec![ParamRat::from_int(3), ParamRat::zero(), ParamRat::t()]);
        let r = p.to_rat();
        assert_eq!(LaurentPoly::from_rat(&r).unwrap(), p);
        assert_eq!(p.derivative().to_rat(), r.dx());
        assert_eq!(p.to_string(), "t+3*x^(-2)");
    }
}
