//! Linear differential operators in `∂x` over K(x) and the module
//! `A = K(x)[∂x]/⟨L⟩` with its `x`- and `t`-derivations.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{primitive_forms, Field, ParamRat, PolyX, RatX, Q};
use crate::error::{Error, Result};

/// An operator `Σ_i c_i ∂x^i` with coefficients in K(x).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct OreOp {
    coeffs: Vec<RatX>,
}

impl OreOp {
    pub fn new(mut coeffs: Vec<RatX>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        OreOp { coeffs }
    }

    pub fn zero() -> Self {
        OreOp { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rat(RatX::one())
    }

    pub fn from_rat(r: RatX) -> Self {
        Self::new(vec![r])
    }

    /// The operator `∂x`.
    pub fn d() -> Self {
        Self::new(vec![RatX::zero(), RatX::one()])
    }

    pub fn coeffs(&self) -> &[RatX] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatX {
        self.coeffs.get(i).cloned().unwrap_or_else(RatX::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> RatX {
        self.coeffs.last().cloned().unwrap_or_else(RatX::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        OreOp {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `r · self` for `r ∈ K(x)`.
    pub fn scale_left(&self, r: &RatX) -> Self {
        Self::new(self.coeffs.iter().map(|c| r.mul(c)).collect())
    }

    /// `∂x · self`, using `∂x c = c ∂x + c'`.
    pub fn d_mul(&self) -> Self {
        let mut v = vec![RatX::zero(); self.coeffs.len() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[j] = v[j].add(&c.dx());
            v[j + 1] = v[j + 1].add(c);
        }
        Self::new(v)
    }

    /// Noncommutative product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        let mut dk = other.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                dk = dk.d_mul();
            }
            if !a.is_zero() {
                acc = acc.add(&dk.scale_left(a));
            }
        }
        acc
    }

    /// Coefficient-wise derivative with respect to `t`.
    pub fn dt(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.dt()).collect())
    }

    /// Applies the operator to a function `y ∈ K(x)`.
    pub fn apply(&self, y: &RatX) -> RatX {
        let mut acc = RatX::zero();
        let mut dy = y.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                dy = dy.dx();
            }
            acc = acc.add(&c.mul(&dy));
        }
        acc
    }

    /// Operator for `y(φ(x))` where `φ(x) = (a x + b)/(c x + d)` and `y` is
    /// acted on by `self`: coefficients are composed with `φ` and `∂` becomes
    /// `(1/φ') ∂x`.
    pub fn mobius(&self, a: &ParamRat, b: &ParamRat, c: &ParamRat, d: &ParamRat) -> Self {
        let det = a.mul(d).sub(&b.mul(c));
        assert!(!det.is_zero(), "degenerate Möbius map");
        let lin = PolyX::new(vec![d.clone(), c.clone()]);
        let inv_phi_prime = RatX::from_poly(&lin * &lin).scale(&det.inv());
        let big_d = OreOp::new(vec![RatX::zero(), inv_phi_prime]);
        let mut acc = Self::zero();
        let mut power = Self::one();
        for (i, ci) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = big_d.mul(&power);
            }
            if !ci.is_zero() {
                acc = acc.add(&power.scale_left(&ci.mobius(a, b, c, d)));
            }
        }
        acc
    }

    /// Left multiple with coprime polynomial coefficients in ℤ[t][x] and
    /// positive leading numeric coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut den = PolyX::one();
        for c in &self.coeffs {
            let g = crate::algebra::poly_gcd(&den, c.den());
            den = &den * &c.den().exact_div(&g).unwrap();
        }
        let polys: Vec<PolyX> = self
            .coeffs
            .iter()
            .map(|c| c.mul_poly(&den).num().clone())
            .collect();
        let g = polys
            .iter()
            .fold(PolyX::zero(), |g, p| crate::algebra::poly_gcd(&g, p));
        let polys: Vec<PolyX> = polys.iter().map(|p| p.exact_div(&g).unwrap()).collect();
        let (_, polys) = primitive_forms(&polys);
        Self::new(polys.into_iter().map(RatX::from_poly).collect())
    }

    /// Monic multiple (leading coefficient 1).
    pub fn monic(&self) -> Self {
        self.scale_left(&self.lc().inv())
    }
}

/// Substitutes `x -> a + 1/x`, returning a content-free polynomial operator.
pub fn mobius_substitute(l: &OreOp, a: &Q) -> OreOp {
    let one = ParamRat::one();
    l.mobius(&ParamRat::from_q(a.clone()), &one, &one, &ParamRat::zero())
        .primitive()
}

impl fmt::Display for OreOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "D".to_string(),
                _ => format!("D^{i}"),
            };
            parts.push(if mono.is_empty() {
                format!("({c})")
            } else {
                format!("({c})*{mono}")
            });
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

/// The `∂t`-action on `A`, given by `∂t · 1 = U + ⟨L⟩`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TAction {
    pub u: OreOp,
}

/// The module `A = K(x)[∂x]/⟨L⟩`, optionally with a `∂t`-action.
#[derive(Debug)]
pub struct OreModule {
    l: OreOp,
    /// Coefficients `a_k` of the monic operator `∂^n + Σ a_k ∂^k`.
    monic: Vec<RatX>,
    action: Option<TAction>,
    /// `[∂^k U]` for `k < n`.
    dpow_u: Vec<Vec<RatX>>,
}

impl OreModule {
    pub fn new(l: OreOp) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::bare(l)?))
    }

    fn bare(l: OreOp) -> Result<Self> {
        let n = l.order().unwrap_or(0);
        if n == 0 {
            return Err(Error::InvalidProblem(
                "L must have order at least 1".into(),
            ));
        }
        let lc_inv = l.lc().inv();
        let monic = (0..n).map(|k| l.coeff(k).mul(&lc_inv)).collect();
        Ok(OreModule {
            l,
            monic,
            action: None,
            dpow_u: Vec::new(),
        })
    }

    /// Builds the module with the action `∂t · 1 = U` and checks that
    /// `∂t` and `∂x` commute on every power-basis element.
    pub fn with_action(l: OreOp, act: TAction) -> Result<Arc<Self>> {
        let mut m = Self::bare(l)?;
        let n = m.order();
        let mut dk = m.reduce(&act.u);
        let mut dpow_u = vec![dk.clone()];
        for _ in 1..n {
            dk = m.dx_coords(&dk);
            dpow_u.push(dk.clone());
        }
        m.dpow_u = dpow_u;
        m.action = Some(act);
        for k in 0..n {
            let e = unit(n, k);
            let a = m.dt_coords(&m.dx_coords(&e))?;
            let b = m.dx_coords(&m.dt_coords(&e)?);
            if a != b {
                return Err(Error::InconsistentAction(format!(
                    "∂t∂x and ∂x∂t differ on ∂x^{k}"
                )));
            }
        }
        Ok(Arc::new(m))
    }

    pub fn operator(&self) -> &OreOp {
        &self.l
    }

    pub fn action(&self) -> Option<&TAction> {
        self.action.as_ref()
    }

    pub fn order(&self) -> usize {
        self.monic.len()
    }

    /// Coordinates of `∂x · f`:
    /// `new_k = c_k' + c_{k-1} - c_{n-1} a_k`.
    pub fn dx_coords(&self, c: &[RatX]) -> Vec<RatX> {
        let n = self.order();
        (0..n)
            .map(|k| {
                let mut v = c[k].dx();
                if k > 0 {
                    v = v.add(&c[k - 1]);
                }
                if !c[n - 1].is_zero() && !self.monic[k].is_zero() {
                    v = v.sub(&c[n - 1].mul(&self.monic[k]));
                }
                v
            })
            .collect()
    }

    /// Coordinates of `∂t · f` (coefficient-wise `t`-derivative plus the
    /// contribution of `U`).
    pub fn dt_coords(&self, c: &[RatX]) -> Result<Vec<RatX>> {
        if self.action.is_none() {
            return Err(Error::Precondition("no ∂t-action attached to A".into()));
        }
        let mut out: Vec<RatX> = c.iter().map(|ci| ci.dt()).collect();
        for (k, ck) in c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (o, u) in out.iter_mut().zip(&self.dpow_u[k]) {
                if !u.is_zero() {
                    *o = o.add(&ck.mul(u));
                }
            }
        }
        Ok(out)
    }

    /// Coordinates of the remainder of `p` on right division by `L`.
    pub fn reduce(&self, p: &OreOp) -> Vec<RatX> {
        let n = self.order();
        let mut acc = vec![RatX::zero(); n];
        let mut dk = unit(n, 0);
        for (i, c) in p.coeffs().iter().enumerate() {
            if i > 0 {
                dk = self.dx_coords(&dk);
            }
            if c.is_zero() {
                continue;
            }
            for (a, d) in acc.iter_mut().zip(&dk) {
                if !d.is_zero() {
                    *a = a.add(&c.mul(d));
                }
            }
        }
        acc
    }
}

fn unit(n: usize, k: usize) -> Vec<RatX> {
    let mut v = vec![RatX::zero(); n];
    v[k] = RatX::one();
    v
}

/// Reduces `p` modulo `L`, returning the element of `A` it represents.
pub fn reduce_mod_l(p: &OreOp, module: &Arc<OreModule>) -> AElement {
    AElement {
        coords: module.reduce(p),
        module: module.clone(),
    }
}

/// A residue class in `A`, stored by its power-basis coordinates.
#[derive(Clone, Debug)]
pub struct AElement {
    coords: Vec<RatX>,
    module: Arc<OreModule>,
}

impl PartialEq for AElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_module(other) && self.coords == other.coords
    }
}

impl AElement {
    pub fn new(module: &Arc<OreModule>, coords: Vec<RatX>) -> Result<Self> {
        if coords.len() != module.order() {
            return Err(Error::InvalidProblem(format!(
                "expected {} coordinates, got {}",
                module.order(),
                coords.len()
            )));
        }
        Ok(AElement {
            coords,
            module: module.clone(),
        })
    }

    pub fn zero(module: &Arc<OreModule>) -> Self {
        AElement {
            coords: vec![RatX::zero(); module.order()],
            module: module.clone(),
        }
    }

    pub fn one(module: &Arc<OreModule>) -> Self {
        AElement {
            coords: unit(module.order(), 0),
            module: module.clone(),
        }
    }

    pub fn from_op(module: &Arc<OreModule>, p: &OreOp) -> Self {
        reduce_mod_l(p, module)
    }

    pub fn coords(&self) -> &[RatX] {
        &self.coords
    }

    pub fn module(&self) -> &Arc<OreModule> {
        &self.module
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn same_module(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.module, &other.module) || self.module.l == other.module.l
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_module(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_coords(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    /// Sum of two elements; panics if they live in different modules.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("elements of different modules")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("elements of different modules")
    }

    pub fn neg(&self) -> Self {
        self.with_coords(self.coords.iter().map(|c| c.neg()).collect())
    }

    /// `r · f` for `r ∈ K(x)`.
    pub fn scale(&self, r: &RatX) -> Self {
        self.with_coords(self.coords.iter().map(|c| c.mul(r)).collect())
    }

    pub fn with_coords(&self, coords: Vec<RatX>) -> Self {
        AElement {
            coords,
            module: self.module.clone(),
        }
    }

    /// The operator `P_f = Σ c_k ∂x^k`.
    pub fn to_op(&self) -> OreOp {
        OreOp::new(self.coords.clone())
    }

    /// `f' = ∂x · f`.
    pub fn x_derivative(&self) -> Self {
        self.with_coords(self.module.dx_coords(&self.coords))
    }

    /// `∂t · f`; requires a `∂t`-action on the module.
    pub fn t_derivative(&self) -> Result<Self> {
        Ok(self.with_coords(self.module.dt_coords(&self.coords)?))
    }

    /// `p · f` for an operator `p`.
    pub fn apply_op(&self, p: &OreOp) -> Self {
        self.with_coords(self.module.reduce(&p.mul(&self.to_op())))
    }
}

impl fmt::Display for AElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_op())
    }
}
