//! Hermite reduction with respect to a global integral basis, reduction
//! modulo the derivatives of everywhere-integral elements, and the resulting
//! integrability test.

use crate::algebra::{
    diophantine_split, rref, solve_mod_v, squarefree_factorization, Field, Matrix, ParamRat,
    PolyX, RatX,
};
use crate::basis::{BasisFrame, VSpace};
use crate::error::{Error, Result};
use crate::ore::AElement;

/// `f = g' + h` with `g = Σ g_i ω_i` and `h = Σ (h_i / D) ω_i`, `D` squarefree
/// and divisible by `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteForm {
    pub g: Vec<RatX>,
    pub h_num: Vec<PolyX>,
    pub h_den: PolyX,
    pub steps: usize,
}

impl HermiteForm {
    pub fn h_coords(&self) -> Vec<RatX> {
        self.h_num
            .iter()
            .map(|p| RatX::new(p.clone(), self.h_den.clone()))
            .collect()
    }
}

fn lcm(a: &PolyX, b: &PolyX) -> PolyX {
    let g = crate::algebra::poly_gcd(a, b);
    (a * &b.exact_div(&g).unwrap()).monic()
}

/// Coordinates of `(Σ c_i ω_i)'` in the basis.
pub fn derivative_coords(c: &[RatX], frame: &BasisFrame) -> Vec<RatX> {
    let n = c.len();
    let e = frame.e();
    (0..n)
        .map(|j| {
            let mut s = RatX::zero();
            for (i, ci) in c.iter().enumerate() {
                let m = &frame.m()[i][j];
                if !ci.is_zero() && !m.is_zero() {
                    s = s.add(&ci.mul_poly(m));
                }
            }
            c[j].dx().add(&s.div_poly(e))
        })
        .collect()
}

/// One reduction step on `Σ f_i/(u v^μ) ω_i`: returns `(g, h)` with
/// `Σ f_i/(u v^μ) ω_i = (Σ g_i/v^{μ-1} ω_i)' + Σ h_i/(u v^{μ-1}) ω_i`.
pub fn hermite_step(
    f: &[PolyX],
    v: &PolyX,
    mu: usize,
    u: &PolyX,
    frame: &BasisFrame,
) -> Result<(Vec<PolyX>, Vec<PolyX>)> {
    if mu < 2 {
        return Err(Error::Precondition("hermite_step needs multiplicity > 1".into()));
    }
    let n = f.len();
    let uv = u * v;
    let w = uv
        .exact_div(frame.e())
        .ok_or_else(|| Error::Precondition("e does not divide u v".into()))?;
    let c = u * &v.derivative().scale(&ParamRat::from_int(mu as i64 - 1));
    // S = (w M - (μ-1) u v' I)^T
    let s: Matrix<PolyX> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let mut a = &w * &frame.m()[i][j];
                    if i == j {
                        a = &a - &c;
                    }
                    a
                })
                .collect()
        })
        .collect();
    let g = solve_mod_v(&s, f, v)?;
    let h = (0..n)
        .map(|j| {
            let mut r = &f[j] - &(&uv * &g[j].derivative());
            for i in 0..n {
                r = &r - &(&s[j][i] * &g[i]);
            }
            r.exact_div(v)
                .ok_or_else(|| Error::VerificationFailed("Hermite step not exact".into()))
        })
        .collect::<Result<_>>()?;
    Ok((g, h))
}

/// Hermite reduction of `f` given by its coordinates in the basis.
pub fn hermite_reduce_coords(c: &[RatX], frame: &BasisFrame) -> Result<HermiteForm> {
    let n = c.len();
    let e = frame.e();
    let mut d = c.iter().fold(e.clone(), |acc, ci| lcm(&acc, ci.den()));
    let mut f: Vec<PolyX> = c.iter().map(|ci| ci.mul_poly(&d).num().clone()).collect();
    let mut g = vec![RatX::zero(); n];
    let mut steps = 0;
    loop {
        let factors = squarefree_factorization(&d)?;
        let Some((v, mu)) = factors
            .iter()
            .enumerate()
            .filter(|(_, (_, m))| *m > 1)
            .max_by(|(i, (a, ma)), (j, (b, mb))| {
                ma.cmp(mb)
                    .then(b.deg().cmp(&a.deg()))
                    .then(j.cmp(i))
            })
            .map(|(_, (v, m))| (v.clone(), *m))
        else {
            break;
        };
        let vmu = v.pow(mu as u32);
        let u = d.exact_div(&vmu).unwrap();
        let (gs, h) = hermite_step(&f, &v, mu, &u, frame)?;
        let vm1 = v.pow(mu as u32 - 1);
        for (gi, si) in g.iter_mut().zip(&gs) {
            if !si.is_zero() {
                *gi = gi.add(&RatX::new(si.clone(), vm1.clone()));
            }
        }
        f = h;
        d = &u * &vm1;
        steps += 1;
    }
    let form = HermiteForm {
        g,
        h_num: f,
        h_den: d,
        steps,
    };
    // f - g' - h = 0 in basis coordinates.
    let gd = derivative_coords(&form.g, frame);
    let h = form.h_coords();
    for i in 0..n {
        if !c[i].sub(&gd[i]).sub(&h[i]).is_zero() {
            return Err(Error::VerificationFailed(format!(
                "Hermite residual nonzero in coordinate {i}"
            )));
        }
    }
    Ok(form)
}

pub fn hermite_reduce(f: &AElement, frame: &BasisFrame) -> Result<HermiteForm> {
    hermite_reduce_coords(&frame.coords(f)?, frame)
}

/// Echelon data for reducing modulo `U = {v' : v ∈ V}`.
///
/// Elements with coordinates `r_i/d + s_i/e` are reduced on the polynomial
/// part `s`, whose monomials `x^k e_i` are ordered by descending `k`, then
/// ascending `i`.
#[derive(Clone, Debug)]
pub struct UReducer {
    n: usize,
    e: PolyX,
    /// Pivot position `(degree, component)` and reduced row of each pivot.
    rows: Vec<((usize, usize), Vec<PolyX>)>,
    /// Coefficients of the row in terms of the derivative basis of `V`.
    preimages: Vec<Vec<ParamRat>>,
    dim_v: usize,
}

/// Remainder after Hermite reduction and reduction modulo `U`:
/// coordinates `r_i/d + s_i/e`.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduced {
    pub r: Vec<PolyX>,
    pub d: PolyX,
    pub s: Vec<PolyX>,
    pub e: PolyX,
    /// `c` with `h = reduced + Σ c_k v_k'`.
    pub combination: Vec<ParamRat>,
}

impl Reduced {
    pub fn coords(&self) -> Vec<RatX> {
        self.r
            .iter()
            .zip(&self.s)
            .map(|(r, s)| {
                RatX::new(r.clone(), self.d.clone()).add(&RatX::new(s.clone(), self.e.clone()))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().all(|p| p.is_zero()) && self.s.iter().all(|p| p.is_zero())
    }
}

impl UReducer {
    pub fn new(frame: &BasisFrame, vs: &VSpace) -> Self {
        let n = frame.dim();
        let e = frame.e().clone();
        // Numerators over e of (x^j ω_i)' = j x^{j-1} ω_i + x^j Σ (m_il/e) ω_l.
        let nums: Vec<Vec<PolyX>> = vs
            .index
            .iter()
            .map(|&(i, j)| {
                (0..n)
                    .map(|l| {
                        let mut p = frame.m()[i][l].shift(j);
                        if l == i && j > 0 {
                            p = &p + &e.shift(j - 1).scale(&ParamRat::from_int(j as i64));
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        let top = nums
            .iter()
            .flatten()
            .map(|p| p.deg())
            .max()
            .unwrap_or(-1)
            .max(0) as usize;
        let ncols = (top + 1) * n;
        let col = |k: usize, i: usize| (top - k) * n + i;
        let k = nums.len();
        let mat: Matrix<ParamRat> = nums
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut v = vec![ParamRat::zero(); ncols + k];
                for (i, p) in row.iter().enumerate() {
                    for (deg, c) in p.coeffs().iter().enumerate() {
                        v[col(deg, i)] = c.clone();
                    }
                }
                v[ncols + r] = ParamRat::one();
                v
            })
            .collect();
        let order: Vec<usize> = (0..ncols).collect();
        let (red, pivots) = rref(&mat, Some(&order));
        let mut rows = Vec::new();
        let mut preimages = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            let (deg, comp) = (top - p / n, p % n);
            let vecs = (0..n)
                .map(|i| {
                    PolyX::new((0..=top).map(|dg| red[r][col(dg, i)].clone()).collect())
                })
                .collect();
            rows.push(((deg, comp), vecs));
            preimages.push(red[r][ncols..].to_vec());
        }
        UReducer {
            n,
            e,
            rows,
            preimages,
            dim_v: k,
        }
    }

    pub fn dim_u(&self) -> usize {
        self.rows.len()
    }

    /// Reduces a polynomial vector `s` (numerators over `e`); returns the
    /// reduced vector and the combination of derivative-basis elements removed.
    pub fn reduce_poly(&self, s: &[PolyX]) -> (Vec<PolyX>, Vec<ParamRat>) {
        let mut s = s.to_vec();
        let mut comb = vec![ParamRat::zero(); self.dim_v];
        for (((deg, comp), row), pre) in self.rows.iter().zip(&self.preimages) {
            let c = s[*comp].coeff(*deg);
            if c.is_zero() {
                continue;
            }
            for i in 0..self.n {
                s[i] = &s[i] - &row[i].scale(&c);
            }
            for (a, b) in comb.iter_mut().zip(pre) {
                *a = a.add(&b.mul(&c));
            }
        }
        (s, comb)
    }

    /// Reduces a Hermite remainder modulo `U`.
    pub fn reduce(&self, h: &HermiteForm) -> Result<Reduced> {
        let d = h
            .h_den
            .exact_div(&self.e)
            .ok_or_else(|| Error::Precondition("e does not divide the Hermite denominator".into()))?;
        let mut r = Vec::with_capacity(self.n);
        let mut s = Vec::with_capacity(self.n);
        for hi in &h.h_num {
            let (ri, si) = diophantine_split(hi, &self.e, &d)?;
            r.push(ri);
            s.push(si);
        }
        let (s, combination) = self.reduce_poly(&s);
        Ok(Reduced {
            r,
            d,
            s,
            e: self.e.clone(),
            combination,
        })
    }
}

/// Hermite reduction followed by reduction modulo `U`.
pub fn reduce_mod_u(h: &HermiteForm, reducer: &UReducer) -> Result<Reduced> {
    reducer.reduce(h)
}

/// Outcome of the integrability test.
#[derive(Clone, Debug)]
pub struct Integrability {
    pub integrable: bool,
    pub hermite: HermiteForm,
    pub reduced: Reduced,
    /// `G` with `G' = f`, in basis coordinates, when integrable.
    pub antiderivative: Option<Vec<RatX>>,
}

/// Decides whether `f` is integrable in `A`. The basis must be normal at
/// infinity and `f` must have at least a double root at infinity, which is
/// checked against the local basis `vinf`.
pub fn is_integrable(
    f: &AElement,
    frame: &BasisFrame,
    vs: &VSpace,
    reducer: &UReducer,
    vinf: &BasisFrame,
) -> Result<Integrability> {
    if !crate::telescope::check_double_root_infinity(f, vinf)? {
        return Err(Error::Precondition(
            "f does not have a double root at infinity; move an ordinary point to \
             infinity with the substitution x -> a + 1/x first"
                .into(),
        ));
    }
    let hermite = hermite_reduce(f, frame)?;
    let reduced = reducer.reduce(&hermite)?;
    let integrable = reduced.is_zero();
    let antiderivative = integrable.then(|| {
        let mut g = hermite.g.clone();
        for (c, &(i, j)) in reduced.combination.iter().zip(&vs.index) {
            if !c.is_zero() {
                g[i] = g[i].add(&RatX::from_poly(PolyX::monomial(c.clone(), j)));
            }
        }
        g
    });
    Ok(Integrability {
        integrable,
        hermite,
        reduced,
        antiderivative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_expr;
    use crate::basis::{normalize_at_infinity, v_space};
    use crate::ore::{OreModule, OreOp};

    fn op(cs: &[&str]) -> OreOp {
        OreOp::new(cs.iter().map(|s| parse_expr(s).unwrap()).collect())
    }

    fn r(s: &str) -> RatX {
        parse_expr(s).unwrap()
    }

    #[test]
    fn hr_example() {
        let l = op(&[
            "8*x^4+5*x^3-11*x^2-5*x+4",
            "(x^2-1)*(x+1)*(7*x-5)*x",
            "(x^2-1)^2*x^2",
        ]);
        let m = OreModule::new(l).unwrap();
        let w = BasisFrame::from_ops(
            &m,
            &[op(&["(x-1)*x^2"]), op(&["2*(x-1)*x^4", "(x^2-1)*(x-1)*x^3"])],
        )
        .unwrap();
        let hf = hermite_reduce(&AElement::one(&m), &w).unwrap();
        assert_eq!(hf.g, vec![r("3/x"), r("-1/x")]);
        assert_eq!(
            hf.h_coords(),
            vec![r("(-x^2-x+3)/((x^2-1)*x)"), r("-1/((x^2-1)*x)")]
        );
    }

    #[test]
    fn sec5_example() {
        let l = op(&["0", "2*(3*x^2-1)", "3*(x^3-x)"]);
        let m = OreModule::new(l).unwrap();
        let w = BasisFrame::from_ops(&m, &[op(&["1"]), op(&["0", "x^3-x"])]).unwrap();
        let v = BasisFrame::from_ops(&m, &[op(&["1"]), op(&["0", "x^2-1"])]).unwrap();
        let nz = normalize_at_infinity(&w, &v).unwrap();
        let vs = v_space(&nz.frame, &nz.tau);
        let red = UReducer::new(&nz.frame, &vs);
        let f = w.element(&[r("3/x^2"), r("2*(2*x+1)/(x^3-x)^2")]);
        let hf = hermite_reduce(&f, &w).unwrap();
        assert_eq!(hf.g, vec![r("-3/x"), r("-3*(2*x+1)/(2*(x^3-x))")]);
        assert_eq!(hf.h_coords(), vec![RatX::zero(), r("-3/(x^3-x)")]);
        let res = is_integrable(&f, &w, &vs, &red, &v).unwrap();
        assert!(res.integrable);
        assert_eq!(
            res.antiderivative.unwrap(),
            vec![r("-3*(x+1)/x"), r("-3*(2*x+1)/(2*(x^3-x))")]
        );
    }

    #[test]
    fn zero_input() {
        let l = op(&["0", "2*(3*x^2-1)", "3*(x^3-x)"]);
        let m = OreModule::new(l).unwrap();
        let w = BasisFrame::from_ops(&m, &[op(&["1"]), op(&["0", "x^3-x"])]).unwrap();
        let hf = hermite_reduce(&AElement::zero(&m), &w).unwrap();
        assert!(hf.g.iter().all(|c| c.is_zero()));
        assert!(hf.h_num.iter().all(|c| c.is_zero()));
    }
}
