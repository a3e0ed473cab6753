//! Bases of `A`: differentiation and `t`-matrices, normalization at infinity,
//! the local frame used by polynomial reduction, and the space of
//! everywhere-integral elements.

use std::sync::Arc;

use crate::algebra::{
    determinant, inverse, left_kernel, squarefree_part, vec_mat, Field, Matrix, ParamRat, PolyX,
    RatX,
};
use crate::error::{Error, Result};
use crate::ore::{AElement, OreModule};

/// Integrality properties asserted for a frame.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tags {
    pub global_integral: bool,
    pub local_at_infinity: bool,
    pub normal_at_infinity: bool,
    pub normal_at_zero: bool,
}

/// A basis `ω_1, …, ω_n` of `A` with `e ω_i' = Σ_j m_ij ω_j`.
#[derive(Clone, Debug)]
pub struct BasisFrame {
    module: Arc<OreModule>,
    elements: Vec<AElement>,
    /// Row `i` holds the power-basis coordinates of `ω_i`.
    to_power: Matrix<RatX>,
    from_power: Matrix<RatX>,
    e: PolyX,
    m: Matrix<PolyX>,
    tm: Option<Matrix<PolyX>>,
    pub tags: Tags,
}

impl BasisFrame {
    /// Builds a frame and its differentiation data; fails if the elements do
    /// not form a K(x)-basis of `A`.
    pub fn new(elements: Vec<AElement>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::NotABasis("empty list of basis elements".into()));
        };
        let module = first.module().clone();
        let n = module.order();
        if elements.len() != n {
            return Err(Error::NotABasis(format!(
                "expected {n} elements, got {}",
                elements.len()
            )));
        }
        if elements.iter().any(|w| !Arc::ptr_eq(w.module(), &module)) {
            return Err(Error::ContextMismatch);
        }
        let to_power: Matrix<RatX> = elements.iter().map(|w| w.coords().to_vec()).collect();
        let from_power = inverse(&to_power)
            .ok_or_else(|| Error::NotABasis("change of basis to the power basis is singular".into()))?;
        let mut frame = BasisFrame {
            module,
            elements,
            to_power,
            from_power,
            e: PolyX::one(),
            m: Vec::new(),
            tm: None,
            tags: Tags::default(),
        };
        let (e, m) = frame.scaled_rows(|w| Ok(w.x_derivative()))?;
        frame.e = e;
        frame.m = m;
        if frame.module.action().is_some() {
            frame.tm = Some(frame.t_matrix()?);
        }
        Ok(frame)
    }

    /// Builds a frame from operators.
    pub fn from_ops(module: &Arc<OreModule>, ops: &[crate::ore::OreOp]) -> Result<Self> {
        Self::new(ops.iter().map(|p| AElement::from_op(module, p)).collect())
    }

    /// For each `ω_i`, the coordinates of `op(ω_i)` in this basis; returns
    /// their monic common denominator `e` and the matrix `e * coords`.
    fn scaled_rows<F>(&self, op: F) -> Result<(PolyX, Matrix<PolyX>)>
    where
        F: Fn(&AElement) -> Result<AElement>,
    {
        let rows: Vec<Vec<RatX>> = self
            .elements
            .iter()
            .map(|w| op(w).map(|d| self.coords_unchecked(&d)))
            .collect::<Result<_>>()?;
        let e = rows
            .iter()
            .flatten()
            .fold(PolyX::one(), |acc, c| lcm(&acc, c.den()));
        let m = rows
            .iter()
            .map(|r| r.iter().map(|c| c.mul_poly(&e).num().clone()).collect())
            .collect();
        Ok((e, m))
    }

    fn t_matrix(&self) -> Result<Matrix<PolyX>> {
        let rows: Vec<Vec<RatX>> = self
            .elements
            .iter()
            .map(|w| w.t_derivative().map(|d| self.coords_unchecked(&d)))
            .collect::<Result<_>>()?;
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|c| {
                        let s = c.mul_poly(&self.e);
                        if s.is_polynomial() {
                            Ok(s.num().clone())
                        } else {
                            Err(Error::InconsistentAction(format!(
                                "e * (∂t·ω) has a pole outside e: coordinate {c}"
                            )))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn module(&self) -> &Arc<OreModule> {
        &self.module
    }

    pub fn elements(&self) -> &[AElement] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn e(&self) -> &PolyX {
        &self.e
    }

    pub fn m(&self) -> &Matrix<PolyX> {
        &self.m
    }

    /// `e ∂t·ω_i = Σ_j tm_ij ω_j`, when the module carries a `∂t`-action.
    pub fn tm(&self) -> Option<&Matrix<PolyX>> {
        self.tm.as_ref()
    }

    fn coords_unchecked(&self, f: &AElement) -> Vec<RatX> {
        vec_mat(f.coords(), &self.from_power)
    }

    /// Coordinates of `f` with respect to this basis.
    pub fn coords(&self, f: &AElement) -> Result<Vec<RatX>> {
        if !Arc::ptr_eq(f.module(), &self.module) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.coords_unchecked(f))
    }

    /// The element `Σ c_i ω_i`.
    pub fn element(&self, c: &[RatX]) -> AElement {
        AElement::new(&self.module, vec_mat(c, &self.to_power)).expect("coordinate length")
    }

    /// Checks that `e` is squarefree, as it must be for a global integral basis.
    pub fn check_global_integral(&self) -> Result<()> {
        let sf = squarefree_part(&self.e)?;
        if sf != self.e {
            return Err(Error::NotSquarefree(self.e.to_string()));
        }
        Ok(())
    }

    /// Checks `deg m_ij < deg e`, as it must be for a local integral basis at infinity.
    pub fn check_local_at_infinity(&self) -> Result<()> {
        for row in &self.m {
            for c in row {
                if !c.is_zero() && c.deg() >= self.e.deg() {
                    return Err(Error::DegreeBound(format!(
                        "deg({c}) >= deg(e) = {} for a basis integral at infinity",
                        self.e.deg()
                    )));
                }
            }
        }
        Ok(())
    }
}

fn lcm(a: &PolyX, b: &PolyX) -> PolyX {
    if b.is_one() {
        return a.clone();
    }
    let g = crate::algebra::poly_gcd(a, b);
    (a * &b.exact_div(&g).unwrap()).monic()
}

/// Result of normalizing a global integral basis at infinity.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub frame: BasisFrame,
    /// `x^{τ_i} ω_i` is integral at infinity, maximal with that property.
    pub tau: Vec<i64>,
    pub iterations: usize,
    /// `τ_1 + … + τ_n` before each iteration and at the end.
    pub tau_sums: Vec<i64>,
    /// Upper bound `½ n (n-1) (N' - 1)` for the final `τ`-sum.
    pub bound: i64,
}

/// Exponents and values at infinity of the coordinates of `W` in `Nu`.
fn tau_and_lead(w: &BasisFrame, nu: &BasisFrame) -> (Vec<i64>, Matrix<ParamRat>) {
    let n = w.dim();
    let mut tau = Vec::with_capacity(n);
    let mut lead = Vec::with_capacity(n);
    for el in w.elements() {
        let row = nu.coords_unchecked(el);
        let ti = row
            .iter()
            .filter_map(|c| c.degree())
            .map(|d| -d)
            .min()
            .expect("basis element is nonzero");
        lead.push(
            row.iter()
                .map(|c| match c.degree() {
                    Some(d) if d + ti == 0 => c.leading(),
                    _ => ParamRat::zero(),
                })
                .collect(),
        );
        tau.push(ti);
    }
    (tau, lead)
}

/// Number of distinct finite singular points, counted as the degree of the
/// squarefree part of `e` times the leading coefficient of `L`.
pub fn singular_count(frame: &BasisFrame) -> Result<i64> {
    let lc = frame.module().operator().lc();
    let p = &frame.e * lc.num();
    Ok(squarefree_part(&p)?.deg())
}

/// Makes `W` normal at infinity with respect to the local basis `Nu`.
///
/// Repeatedly replaces one basis element by a combination whose exponent at
/// infinity is larger, until the values at infinity of `x^{τ_i} ω_i` are
/// linearly independent.
pub fn normalize_at_infinity(w: &BasisFrame, nu: &BasisFrame) -> Result<Normalization> {
    if !Arc::ptr_eq(w.module(), nu.module()) {
        return Err(Error::ContextMismatch);
    }
    let n = w.dim() as i64;
    let n_prime = singular_count(w)?;
    let bound = n * (n - 1) * (n_prime - 1) / 2;
    let mut frame = w.clone();
    let mut sums = Vec::new();
    let mut iterations = 0;
    loop {
        let (tau, lead) = tau_and_lead(&frame, nu);
        let sum: i64 = tau.iter().sum();
        if sums.last().is_some_and(|&s| sum <= s) {
            return Err(Error::NonTermination { bound });
        }
        sums.push(sum);
        if !determinant(&lead).is_zero() {
            if sum > bound {
                return Err(Error::NonTermination { bound });
            }
            let mut frame = frame;
            frame.tags.normal_at_infinity = true;
            return Ok(Normalization {
                frame,
                tau,
                iterations,
                tau_sums: sums,
                bound,
            });
        }
        if sum >= bound {
            return Err(Error::NonTermination { bound });
        }
        let a = left_kernel(&lead).swap_remove(0);
        let l = (0..a.len())
            .filter(|&i| !a[i].is_zero())
            .min_by_key(|&i| (tau[i], i))
            .unwrap();
        let mut coeffs = vec![RatX::zero(); a.len()];
        for (i, ai) in a.iter().enumerate() {
            if !ai.is_zero() {
                coeffs[i] = RatX::from_param(ai.clone()).mul_xpow(tau[i] - tau[l]);
            }
        }
        let replacement = frame.element(&coeffs);
        let mut elements = frame.elements.clone();
        elements[l] = replacement;
        let tags = frame.tags;
        frame = BasisFrame::new(elements)?;
        frame.tags = tags;
        iterations += 1;
    }
}

/// The frame `ν_i = x^{τ_i} ω_i` with `x^λ e ν' = B ν`.
#[derive(Clone, Debug)]
pub struct LocalFrame {
    pub frame: BasisFrame,
    pub tau: Vec<i64>,
    pub lambda: usize,
    pub e: PolyX,
    pub b: Matrix<PolyX>,
    /// `λ + deg e - 1`.
    pub delta: i64,
}

impl LocalFrame {
    /// `x^λ e`.
    pub fn a(&self) -> PolyX {
        self.e.shift(self.lambda)
    }

    pub fn deg_b(&self) -> i64 {
        self.b.iter().flatten().map(|p| p.deg()).max().unwrap_or(-1)
    }
}

/// Builds the frame `ν_i = x^{τ_i} ω_i` from a basis normal at infinity.
pub fn build_local_frame(wn: &BasisFrame, tau: &[i64]) -> Result<LocalFrame> {
    let n = wn.dim();
    let e = wn.e().clone();
    // G_ij = δ_ij τ_i / x + x^{τ_i - τ_j} m_ij / e
    let g: Matrix<RatX> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = RatX::from_poly(wn.m()[i][j].clone())
                        .div_poly(&e)
                        .mul_xpow(tau[i] - tau[j]);
                    if i == j && tau[i] != 0 {
                        v = v.add(&RatX::from_int(tau[i]).mul_xpow(-1));
                    }
                    v
                })
                .collect()
        })
        .collect();
    let mut lambda = 0usize;
    for c in g.iter().flatten() {
        // Denominator of c * e must be a power of x.
        let rest = c.mul_poly(&e);
        let d = rest.den();
        let k = d.ord_x().unwrap_or(0);
        if d.deg() as usize != k {
            return Err(Error::DegreeBound(format!(
                "ν' has a pole outside x·e: coordinate {c}"
            )));
        }
        lambda = lambda.max(k);
    }
    let a = e.shift(lambda);
    let b: Matrix<PolyX> = g
        .iter()
        .map(|r| r.iter().map(|c| c.mul_poly(&a).num().clone()).collect())
        .collect();
    let delta = lambda as i64 + e.deg() - 1;
    let elements = wn
        .elements()
        .iter()
        .zip(tau)
        .map(|(w, &t)| w.scale(&RatX::one().mul_xpow(t)))
        .collect();
    let mut frame = BasisFrame::new(elements)?;
    frame.tags.normal_at_zero = true;
    frame.tags.local_at_infinity = true;
    let lf = LocalFrame {
        frame,
        tau: tau.to_vec(),
        lambda,
        e,
        b,
        delta,
    };
    if lf.deg_b() > delta {
        return Err(Error::DegreeBound(format!(
            "deg(B) = {} exceeds λ + deg(e) - 1 = {delta}",
            lf.deg_b()
        )));
    }
    Ok(lf)
}

/// The space `V` of elements integral everywhere including infinity, and
/// the space `U = {v' : v ∈ V}`.
#[derive(Clone, Debug)]
pub struct VSpace {
    /// Pairs `(i, j)` standing for `x^j ω_i`.
    pub index: Vec<(usize, usize)>,
    pub basis: Vec<AElement>,
    pub derivative_basis: Vec<AElement>,
}

impl VSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn v_space(wn: &BasisFrame, tau: &[i64]) -> VSpace {
    let mut index = Vec::new();
    let mut basis = Vec::new();
    let mut derivative_basis = Vec::new();
    for (i, w) in wn.elements().iter().enumerate() {
        for j in 0..=tau[i] {
            let v = w.scale(&RatX::one().mul_xpow(j));
            derivative_basis.push(v.x_derivative());
            basis.push(v);
            index.push((i, j as usize));
        }
    }
    VSpace {
        index,
        basis,
        derivative_basis,
    }
}
