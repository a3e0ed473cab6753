use std::fmt;

use crate::error::{Error, Result};

use super::poly_t::{gcd_mod_prime_degree, inv_mod_prime, PRIME};
use super::{ring_ops, Field, ParamRat, PolyT, Q};

/// Dense polynomial in `x` with coefficients in K = ℚ(t).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PolyX {
    coeffs: Vec<ParamRat>,
}

impl PolyX {
    pub fn new(mut coeffs: Vec<ParamRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyX { coeffs }
    }

    pub fn from_q(coeffs: Vec<Q>) -> Self {
        Self::new(coeffs.into_iter().map(ParamRat::from_q).collect())
    }

    /// Integer coefficients, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| ParamRat::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        PolyX { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ParamRat::one())
    }

    pub fn constant(c: ParamRat) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(ParamRat::one(), 1)
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: ParamRat, k: usize) -> Self {
        let mut v = vec![ParamRat::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[ParamRat] {
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

    /// Degree with `deg 0 = -1`.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> ParamRat {
        self.coeffs.last().cloned().unwrap_or_else(ParamRat::zero)
    }

    pub fn coeff(&self, k: usize) -> ParamRat {
        self.coeffs.get(k).cloned().unwrap_or_else(ParamRat::zero)
    }

    /// Multiplicity of `x` as a factor; `None` for the zero polynomial.
    pub fn ord_x(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.add(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        PolyX {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![ParamRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &ParamRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        PolyX {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![ParamRat::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        PolyX { coeffs: v }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = r.mul_ref(self);
        }
        r
    }

    /// Euclidean division over K; panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let lc_inv = d.lc().inv();
        let mut r = self.coeffs.clone();
        let mut quo = vec![ParamRat::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = r[k + dd].mul(&lc_inv);
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    if !b.is_zero() {
                        r[k + j] = r[k + j].sub(&c.mul(b));
                    }
                }
            }
            quo[k] = c;
        }
        r.truncate(dd);
        (Self::new(quo), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
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
        self.scale(&self.lc().inv())
    }

    /// Derivative with respect to `x`.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale_q(&super::q(k as i64)))
                .collect(),
        )
    }

    /// Coefficient-wise derivative with respect to `t`.
    pub fn dt(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.dt()).collect())
    }

    pub fn eval(&self, x0: &ParamRat) -> ParamRat {
        let mut acc = ParamRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x0).add(c);
        }
        acc
    }

    /// Specializes `t = t0`; `None` if some coefficient has a pole there.
    pub fn eval_t(&self, t0: &Q) -> Option<Vec<Q>> {
        self.coeffs.iter().map(|c| c.eval(t0)).collect()
    }

    /// Writes `self = (1/den) * Σ p_k x^k` with `p_k ∈ ℚ[t]` and `den ∈ ℚ[t]` monic.
    pub fn to_bivariate(&self) -> (PolyT, Vec<PolyT>) {
        let mut den = PolyT::one();
        for c in &self.coeffs {
            if !c.den().is_one() {
                let g = PolyT::gcd(&den, c.den());
                den = &den * &c.den().exact_div(&g).unwrap();
            }
        }
        let polys = self
            .coeffs
            .iter()
            .map(|c| c.num() * &den.exact_div(c.den()).unwrap())
            .collect();
        (den, polys)
    }

    pub fn from_bivariate(polys: &[PolyT]) -> Self {
        Self::new(
            polys
                .iter()
                .map(|p| ParamRat::from_poly(p.clone()))
                .collect(),
        )
    }

    /// Scales to coprime integer coefficients in ℤ[t][x] with positive leading
    /// numeric coefficient; returns the removed factor and the result.
    pub fn primitive_form(&self) -> (ParamRat, PolyX) {
        let (c, mut v) = primitive_forms(std::slice::from_ref(self));
        (c, v.pop().unwrap())
    }
}

ring_ops!(PolyX);

/// Joint version of [`PolyX::primitive_form`]: divides every entry by the same
/// factor so that the family has coprime coefficients in ℤ[t][x] and the
/// leading numeric coefficient of the last nonzero entry is positive.
pub fn primitive_forms(ps: &[PolyX]) -> (ParamRat, Vec<PolyX>) {
    if ps.iter().all(|p| p.is_zero()) {
        return (ParamRat::one(), ps.to_vec());
    }
    let mut den = PolyT::one();
    for p in ps {
        let (d, _) = p.to_bivariate();
        let g = PolyT::gcd(&den, &d);
        den = &den * &d.exact_div(&g).unwrap();
    }
    let scaled: Vec<Vec<PolyT>> = ps
        .iter()
        .map(|p| p.scale(&ParamRat::from_poly(den.clone())).to_bivariate().1)
        .collect();
    let content = scaled
        .iter()
        .flat_map(|v| v.iter())
        .fold(PolyT::zero(), |g, c| PolyT::gcd(&g, c));
    let scaled: Vec<Vec<PolyT>> = scaled
        .iter()
        .map(|v| v.iter().map(|c| c.exact_div(&content).unwrap()).collect())
        .collect();
    // The last flattened entry is the leading numeric coefficient.
    let flat = PolyT::new(
        scaled
            .iter()
            .flat_map(|v| v.iter().flat_map(|c| c.coeffs().iter().cloned()))
            .collect(),
    );
    let (c, _) = flat.integer_primitive();
    let cinv = c.recip();
    let out = scaled
        .iter()
        .map(|v| {
            PolyX::new(
                v.iter()
                    .map(|p| ParamRat::from_poly(p.scale(&cinv)))
                    .collect(),
            )
        })
        .collect();
    (ParamRat::new(content.scale(&c), den), out)
}

fn pseudo_rem(a: &[PolyT], b: &[PolyT]) -> Vec<PolyT> {
    let mut r: Vec<PolyT> = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut steps = (a.len() as i64) - (b.len() as i64) + 1;
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        let mut next: Vec<PolyT> = r.iter().map(|c| c * &lb).collect();
        for (j, bj) in b.iter().enumerate() {
            next[j + shift] = &next[j + shift] - &(bj * &lr);
        }
        r = next;
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        steps -= 1;
    }
    if steps > 0 {
        let f = lb.pow(steps as u32);
        r = r.iter().map(|c| c * &f).collect();
    }
    r
}

fn content_t(p: &[PolyT]) -> PolyT {
    p.iter().fold(PolyT::zero(), |g, c| PolyT::gcd(&g, c))
}

fn primitive_t(p: &[PolyT]) -> Vec<PolyT> {
    let c = content_t(p);
    p.iter().map(|a| a.exact_div(&c).unwrap()).collect()
}

/// Exact sufficient test for `gcd(p, q) = 1`. At a point `t0` modulo a
/// prime where no coefficient has a pole and neither leading coefficient
/// vanishes, the gcd over K maps to a divisor of the gcd of the images with
/// the same degree.
fn coprime_by_specialization(p: &PolyX, q: &PolyX) -> bool {
    let image = |f: &PolyX, t0: u64| -> Option<Vec<u64>> {
        let v = f
            .coeffs
            .iter()
            .map(|c| {
                let n = c.num().eval_mod_prime(t0)?;
                let d = c.den().eval_mod_prime(t0)?;
                (d != 0).then(|| n * inv_mod_prime(d) % PRIME)
            })
            .collect::<Option<Vec<u64>>>()?;
        (v.last() != Some(&0)).then_some(v)
    };
    for t0 in [1_000_003u64, 2_718_281_829] {
        if let (Some(a), Some(b)) = (image(p, t0), image(q, t0)) {
            if gcd_mod_prime_degree(a, b) == 0 {
                return true;
            }
        }
    }
    false
}

/// Candidate monic gcd of primitive `a, b ∈ ℚ[t][x]` from gcds of
/// specializations at integer points. With `γ = gcd(lc a, lc b)`, the product
/// `γ · gcd` lies in ℚ[t][x] with `t`-degree at most
/// `deg γ + min(deg_t a, deg_t b)`, so its coefficients are recovered by
/// interpolation. Specializations of excess degree are discarded. The caller
/// must confirm the candidate by division.
fn gcd_by_interpolation(a: &[PolyT], b: &[PolyT]) -> Option<PolyX> {
    let (la, lb) = (a.last()?, b.last()?);
    let gamma = PolyT::gcd(la, lb);
    let deg_t = |v: &[PolyT]| v.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    let needed = gamma.degree().unwrap_or(0) + deg_t(a).min(deg_t(b)) + 1;
    let eval = |v: &[PolyT], t0: &Q| PolyT::new(v.iter().map(|c| c.eval(t0)).collect());
    let mut best = usize::MAX;
    let mut xs: Vec<Q> = Vec::new();
    let mut ys: Vec<Vec<Q>> = Vec::new();
    for j in 1..(3 * needed as i64 + 20) {
        let t0 = Q::from_integer(if j % 2 == 0 { -j / 2 } else { j / 2 + 1 }.into());
        let gt = gamma.eval(&t0);
        if la.eval(&t0).is_zero() || lb.eval(&t0).is_zero() || gt.is_zero() {
            continue;
        }
        let g = PolyT::gcd(&eval(a, &t0), &eval(b, &t0));
        let k = g.degree().unwrap_or(0);
        if k == 0 {
            return Some(PolyX::one());
        }
        if k > best {
            continue;
        }
        if k < best {
            best = k;
            xs.clear();
            ys.clear();
        }
        xs.push(t0);
        ys.push(g.scale(&gt).coeffs().to_vec());
        if xs.len() == needed {
            let coeffs: Vec<PolyT> = (0..=best)
                .map(|i| {
                    let vals: Vec<Q> = ys.iter().map(|y| y[i].clone()).collect();
                    PolyT::interpolate(&xs, &vals)
                })
                .collect();
            return Some(PolyX::from_bivariate(&coeffs).monic());
        }
    }
    None
}

/// Monic gcd over K via primitive parts and the subresultant remainder
/// sequence in ℚ[t][x]. `gcd(0, 0) = 0`.
pub fn poly_gcd(p: &PolyX, q: &PolyX) -> PolyX {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return PolyX::one();
    }
    if coprime_by_specialization(p, q) {
        return PolyX::one();
    }
    let (_, a) = p.to_bivariate();
    let (_, b) = q.to_bivariate();
    let (mut a, mut b) = (primitive_t(&a), primitive_t(&b));
    if let Some(g) = gcd_by_interpolation(&a, &b) {
        if p.exact_div(&g).is_some() && q.exact_div(&g).is_some() {
            return g;
        }
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = PolyT::one();
    let mut h = PolyT::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return PolyX::one();
        }
        a = b;
        let divisor = &g * &h.pow(delta);
        b = r.iter().map(|c| c.exact_div(&divisor).unwrap()).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).exact_div(&h.pow(delta - 1)).unwrap()
        };
    }
    PolyX::from_bivariate(&primitive_t(&b)).monic()
}

/// Extended Euclid over K: returns `(g, s, u)` with `s p + u q = g`, `g` monic.
pub fn xgcd(p: &PolyX, q: &PolyX) -> (PolyX, PolyX, PolyX) {
    let (mut r0, mut r1) = (p.clone(), q.clone());
    let (mut s0, mut s1) = (PolyX::one(), PolyX::zero());
    let (mut u0, mut u1) = (PolyX::zero(), PolyX::one());
    while !r1.is_zero() {
        let (quo, rem) = r0.div_rem(&r1);
        let s2 = &s0 - &(&quo * &s1);
        let u2 = &u0 - &(&quo * &u1);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
        u0 = u1;
        u1 = u2;
    }
    if r0.is_zero() {
        return (r0, s0, u0);
    }
    let c = r0.lc().inv();
    (r0.scale(&c), s0.scale(&c), u0.scale(&c))
}

/// Inverse of `a` modulo `v`; `None` when `gcd(a, v) != 1`.
pub fn inverse_mod(a: &PolyX, v: &PolyX) -> Option<PolyX> {
    let (g, s, _) = xgcd(&a.rem(v), v);
    g.is_one().then(|| s.rem(v))
}

/// Squarefree decomposition `p = lc(p) Π f_i^{m_i}` with monic, pairwise
/// coprime, squarefree `f_i` and strictly increasing `m_i`.
pub fn squarefree_factorization(p: &PolyX) -> Result<Vec<(PolyX, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let a = p.monic();
    let mut out = Vec::new();
    if a.is_constant() {
        return Ok(out);
    }
    let da = a.derivative();
    let g = poly_gcd(&a, &da);
    let mut b = a.exact_div(&g).unwrap();
    let mut c = da.exact_div(&g).unwrap();
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let f = poly_gcd(&b, &d);
        b = b.exact_div(&f).unwrap();
        c = d.exact_div(&f).unwrap();
        d = &c - &b.derivative();
        if !f.is_constant() {
            out.push((f, i));
        }
        i += 1;
    }
    Ok(out)
}

/// Squarefree part (monic product of the distinct factors).
pub fn squarefree_part(p: &PolyX) -> Result<PolyX> {
    Ok(squarefree_factorization(p)?
        .into_iter()
        .fold(PolyX::one(), |acc, (f, _)| &acc * &f))
}

/// Splits `h = r e + s d` with `deg r < deg d`; requires `gcd(e, d) = 1`.
pub fn diophantine_split(h: &PolyX, e: &PolyX, d: &PolyX) -> Result<(PolyX, PolyX)> {
    if d.is_zero() || e.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (g, sigma, _) = xgcd(e, d);
    if !g.is_one() {
        return Err(Error::NotCoprime(g.to_string()));
    }
    if h.is_zero() {
        return Ok((PolyX::zero(), PolyX::zero()));
    }
    let r = (h * &sigma).rem(d);
    let s = (h - &(&r * e)).exact_div(d).unwrap();
    Ok((r, s))
}

pub(crate) fn fmt_coeff_terms<F>(terms: &[(ParamRat, String)], out: &mut String, paren: F)
where
    F: Fn(&ParamRat) -> bool,
{
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let body = if mono.is_empty() {
            c.to_string()
        } else if c.is_one() {
            mono.clone()
        } else if c.neg().is_one() {
            format!("-{mono}")
        } else if paren(c) {
            format!("({c})*{mono}")
        } else {
            format!("{c}*{mono}")
        };
        if !out.is_empty() && !body.starts_with('-') {
            out.push('+');
        }
        out.push_str(&body);
    }
}

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(ParamRat, String)> = (0..self.coeffs.len())
            .rev()
            .map(|k| {
                let mono = match k {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{k}"),
                };
                (self.coeffs[k].clone(), mono)
            })
            .collect();
        let mut out = String::new();
        fmt_coeff_terms(&terms, &mut out, |c| c.is_compound());
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn px(c: &[i64]) -> PolyX {
        PolyX::from_ints(c)
    }

    fn t() -> ParamRat {
        ParamRat::t()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&px(&[-1, 0, 1]), &px(&[-1, 1])), px(&[-1, 1]));
        let a = PolyX::new(vec![t(), t()]);
        assert_eq!(poly_gcd(&a, &px(&[1, 1])), px(&[1, 1]));
        // (x^2-1)x^2 and (x-1)x^3
        let g = poly_gcd(&px(&[0, 0, -1, 0, 1]), &px(&[0, 0, 0, -1, 1]));
        assert_eq!(g, px(&[0, 0, -1, 1]));
        assert_eq!(poly_gcd(&PolyX::zero(), &PolyX::zero()), PolyX::zero());
    }

    #[test]
    fn gcd_with_parameter() {
        // (tx-1)^2 (x+t) and (tx-1)(x-1)
        let a = PolyX::new(vec![-ParamRat::one(), t()]);
        let p = &(&a * &a) * &PolyX::new(vec![t(), ParamRat::one()]);
        let qq = &a * &px(&[-1, 1]);
        assert_eq!(poly_gcd(&p, &qq), a.monic());
    }

    #[test]
    fn gcd_shared_parametric_factor() {
        // G = (x-t)^2 (tx+1) times cofactors with rational coefficients in t.
        let xt = PolyX::new(vec![-t(), ParamRat::one()]);
        let g = &xt.pow(2) * &PolyX::new(vec![ParamRat::one(), t()]);
        let inv_t = t().inv();
        let a = PolyX::new(vec![ParamRat::from_int(3), inv_t.clone(), t().mul(&t()), ParamRat::one()]);
        let b = PolyX::new(vec![t().add(&ParamRat::one()), ParamRat::from_int(-2), inv_t]);
        let got = poly_gcd(&(&a * &g), &(&b * &g));
        assert_eq!(got, g.monic());
        assert_eq!(poly_gcd(&(&a * &g), &xt.pow(5)), xt.pow(2));
    }

    #[test]
    fn squarefree_examples() {
        let sf = squarefree_factorization(&px(&[0, 0, -1, 0, 1])).unwrap();
        assert_eq!(sf, vec![(px(&[-1, 0, 1]), 1), (px(&[0, 1]), 2)]);
        let sf = squarefree_factorization(&px(&[0, -1, 0, 1])).unwrap();
        assert_eq!(sf, vec![(px(&[0, -1, 0, 1]), 1)]);
        assert!(squarefree_factorization(&PolyX::zero()).is_err());
    }

    #[test]
    fn squarefree_with_parameter() {
        let m = PolyX::new(vec![-ParamRat::one(), t()]);
        let p1 = PolyX::new(vec![ParamRat::one(), t()]);
        let p = &(&(&m.pow(3) * &p1.pow(2)) * &PolyX::x()) * &PolyX::one();
        let sf = squarefree_factorization(&p).unwrap();
        assert_eq!(
            sf,
            vec![(PolyX::x(), 1), (p1.monic(), 2), (m.monic(), 3)]
        );
    }

    #[test]
    fn diophantine_identity() {
        let h = px(&[3, 1, 4, 1, 5]);
        let e = px(&[0, -1, 0, 1]);
        let d = px(&[2, 0, 1]);
        let (r, s) = diophantine_split(&h, &e, &d).unwrap();
        assert_eq!(&(&r * &e) + &(&s * &d), h);
        assert!(r.deg() < d.deg());
        assert!(diophantine_split(&h, &px(&[0, 1]), &px(&[0, 0, 1])).is_err());
        let (r0, s0) = diophantine_split(&PolyX::zero(), &e, &d).unwrap();
        assert!(r0.is_zero() && s0.is_zero());
    }

    #[test]
    fn primitive_form_clears_content() {
        let p = PolyX::new(vec![t().scale_q(&q(2)), ParamRat::from_int(-4)]);
        let (c, pp) = p.primitive_form();
        assert_eq!(pp.scale(&c), p);
        assert_eq!(pp.to_string(), "2*x-t");
    }

    #[test]
    fn display() {
        assert_eq!(px(&[0, 0, -1, 1]).to_string(), "x^3-x^2");
        let p = PolyX::new(vec![-ParamRat::one(), t().add(&ParamRat::one()), -t()]);
        assert_eq!(p.to_string(), "-t*x^2+(t+1)*x-1");
        assert_eq!(PolyX::zero().to_string(), "0");
    }
}
