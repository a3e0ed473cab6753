//! Polynomial reduction: the map `φ_V(P) = x^λ e P' + P B`, its standard
//! complement `N_V`, and the additive decomposition
//! `f = g' + (1/d) R W + (1/(x^λ e)) Q V`.

use num_traits::Signed;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    determinant, diophantine_split, inverse, rref, vec_mat, Field, LaurentPoly,
    LaurentVec, Matrix, ParamRat, PolyX, RatX, Q,
};
use crate::basis::{BasisFrame, LocalFrame};
use crate::error::{Error, Result};
use crate::hermite::{derivative_coords, hermite_reduce_coords};
use crate::ore::AElement;

/// Everything needed to evaluate `φ_V` and reduce modulo its image.
#[derive(Clone, Debug)]
pub struct PhiContext {
    pub n: usize,
    pub lambda: usize,
    pub e: PolyX,
    /// `x^λ e`.
    pub a: PolyX,
    pub b: Matrix<PolyX>,
    pub tau: Vec<i64>,
    /// `λ + deg e - 1`.
    pub delta: i64,
    /// True when `deg B = δ`.
    pub case2: bool,
    pub ell: i64,
    /// Lowest exponent of the domain window.
    pub domain_floor: i64,
    /// Lowest exponent of the codomain window.
    pub floor: i64,
    /// `ℓ + δ`, the highest exponent of the codomain window.
    pub top: i64,
    /// Reduced echelon rows over the columns `x^k e_i`, `k` from `top` down
    /// to `floor`, `i` ascending.
    pub echelon: Matrix<ParamRat>,
    pivots: Vec<usize>,
    preimages: Vec<LaurentVec>,
}

impl PhiContext {
    pub fn new(local: &LocalFrame, seed: u64) -> Result<Self> {
        let n = local.frame.dim();
        let lambda = local.lambda;
        let e = local.e.clone();
        let a = local.a();
        let b = local.b.clone();
        let delta = local.delta;
        let deg_b = local.deg_b();
        if deg_b > delta {
            return Err(Error::DegreeBound(format!(
                "deg(B) = {deg_b} exceeds λ + deg(e) - 1 = {delta}"
            )));
        }
        let case2 = deg_b == delta;
        let ell = if case2 {
            compute_ell(&e.lc(), &lc_matrix(&b, delta), seed)
        } else {
            0
        };
        let max_tau = local.tau.iter().copied().max().unwrap_or(0);
        let domain_floor = 0.min(-max_tau);
        let ord_e = e.ord_x().unwrap_or(0) as i64;
        let floor = (domain_floor + 0.min(lambda as i64 + ord_e - 1)).min(lambda as i64 - max_tau);
        let top = ell + delta;
        let mut ctx = PhiContext {
            n,
            lambda,
            e,
            a,
            b,
            tau: local.tau.clone(),
            delta,
            case2,
            ell,
            domain_floor,
            floor,
            top,
            echelon: Vec::new(),
            pivots: Vec::new(),
            preimages: Vec::new(),
        };
        ctx.build_echelon();
        Ok(ctx)
    }

    /// Number of columns `x^k e_i` with `floor <= k <= top`.
    pub fn ncols(&self) -> usize {
        ((self.top - self.floor + 1).max(0) as usize) * self.n
    }

    /// Column of `x^k e_i`.
    pub fn column(&self, k: i64, i: usize) -> usize {
        (self.top - k) as usize * self.n + i
    }

    fn column_key(&self, c: usize) -> (i64, usize) {
        (self.top - (c / self.n) as i64, c % self.n)
    }

    fn to_row(&self, v: &LaurentVec) -> Vec<ParamRat> {
        let mut row = vec![ParamRat::zero(); self.ncols()];
        for (i, comp) in v.components.iter().enumerate() {
            if let (Some(lo), Some(hi)) = (comp.low(), comp.high()) {
                for k in lo..=hi {
                    let c = comp.coeff(k);
                    if !c.is_zero() {
                        row[self.column(k, i)] = c;
                    }
                }
            }
        }
        row
    }

    fn from_row(&self, row: &[ParamRat]) -> LaurentVec {
        let mut comps = vec![LaurentPoly::zero(); self.n];
        for (c, v) in row.iter().enumerate() {
            if !v.is_zero() {
                let (k, i) = self.column_key(c);
                comps[i] = comps[i].add(&LaurentPoly::monomial(v.clone(), k));
            }
        }
        LaurentVec::new(comps)
    }

    fn build_echelon(&mut self) {
        let ncols = self.ncols();
        if ncols == 0 || self.ell < self.domain_floor {
            return;
        }
        let gens: Vec<(usize, i64)> = (self.domain_floor..=self.ell)
            .flat_map(|j| (0..self.n).map(move |i| (i, j)))
            .collect();
        let k = gens.len();
        let mat: Matrix<ParamRat> = gens
            .iter()
            .enumerate()
            .map(|(r, &(i, j))| {
                let img = phi_v(&LaurentVec::unit(self.n, i, j), self);
                let mut row = self.to_row(&img);
                row.extend((0..k).map(|c| {
                    if c == r {
                        ParamRat::one()
                    } else {
                        ParamRat::zero()
                    }
                }));
                row
            })
            .collect();
        let order: Vec<usize> = (0..ncols).collect();
        let (red, pivots) = rref(&mat, Some(&order));
        self.echelon = red[..pivots.len()]
            .iter()
            .map(|r| r[..ncols].to_vec())
            .collect();
        self.preimages = red[..pivots.len()]
            .iter()
            .map(|r| {
                let mut comps = vec![LaurentPoly::zero(); self.n];
                for (c, &(i, j)) in r[ncols..].iter().zip(&gens) {
                    if !c.is_zero() {
                        comps[i] = comps[i].add(&LaurentPoly::monomial(c.clone(), j));
                    }
                }
                LaurentVec::new(comps)
            })
            .collect();
        self.pivots = pivots;
    }

    /// Monomials `(component, exponent)` spanning the standard complement.
    pub fn complement(&self) -> Vec<(usize, i64)> {
        (0..self.ncols())
            .filter(|c| !self.pivots.contains(c))
            .map(|c| {
                let (k, i) = self.column_key(c);
                (i, k)
            })
            .collect()
    }

    pub fn dim_nv(&self) -> usize {
        self.ncols() - self.pivots.len()
    }
}

fn lc_matrix(b: &Matrix<PolyX>, delta: i64) -> Matrix<ParamRat> {
    b.iter()
        .map(|r| {
            r.iter()
                .map(|p| {
                    if p.deg() == delta {
                        p.lc()
                    } else {
                        ParamRat::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// `φ_V(P) = x^λ e P' + P B`.
pub fn phi_v(p: &LaurentVec, ctx: &PhiContext) -> LaurentVec {
    let n = ctx.n;
    LaurentVec::new(
        (0..n)
            .map(|j| {
                let mut acc = p.components[j].derivative().mul_poly(&ctx.a);
                for i in 0..n {
                    if !p.components[i].is_zero() && !ctx.b[i][j].is_zero() {
                        acc = acc.add(&p.components[i].mul_poly(&ctx.b[i][j]));
                    }
                }
                acc
            })
            .collect(),
    )
}

/// Largest nonnegative integer `s` with `det(s lc(e) I + lc(B)) = 0`, or 0.
///
/// Candidates are found from the characteristic polynomial at a random
/// rational `t0` and each is confirmed symbolically over K.
pub fn compute_ell(lc_e: &ParamRat, lc_b: &Matrix<ParamRat>, seed: u64) -> i64 {
    let n = lc_b.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries: Vec<&ParamRat> = lc_b.iter().flatten().chain(std::iter::once(lc_e)).collect();
    let t0 = loop {
        let cand = Q::new(
            rng.gen_range(-1000i64..=1000).into(),
            rng.gen_range(1i64..=1000).into(),
        );
        let ok = entries.iter().all(|c| c.eval(&cand).is_some())
            && !lc_e.eval(&cand).unwrap().is_zero();
        if ok {
            break cand;
        }
    };
    // C = lc(B)/lc(e) at t0; roots of det(s I + C) are minus eigenvalues.
    let le = lc_e.eval(&t0).unwrap();
    let c: Matrix<Q> = lc_b
        .iter()
        .map(|r| r.iter().map(|x| x.eval(&t0).unwrap() / &le).collect())
        .collect();
    let chi = char_poly(&c);
    // p(s) = χ(-s), monic up to sign.
    let p: Vec<Q> = chi
        .iter()
        .enumerate()
        .map(|(k, a)| if k % 2 == 1 { -a } else { a.clone() })
        .collect();
    let lead = p[n].clone();
    let bound = p[..n]
        .iter()
        .map(|a| (a / &lead).abs())
        .fold(Q::from_integer(0.into()), |m, a| if a > m { a } else { m });
    let bound: i64 = (bound.ceil().to_integer() + 1u32)
        .try_into()
        .unwrap_or(i64::MAX)
        .min(1 << 20);
    let mut ell = 0;
    for s in 0..=bound {
        let sq = Q::from_integer(s.into());
        let val = p.iter().rev().fold(Q::from_integer(0.into()), |acc, a| acc * &sq + a);
        if val.is_zero() {
            let m: Matrix<ParamRat> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let mut v = lc_b[i][j].clone();
                            if i == j {
                                v = v.add(&lc_e.scale_q(&sq));
                            }
                            v
                        })
                        .collect()
                })
                .collect();
            if determinant(&m).is_zero() {
                ell = s;
            }
        }
    }
    ell
}

/// Coefficients of `det(z I - C)`, ascending, via Faddeev–LeVerrier.
fn char_poly(c: &Matrix<Q>) -> Vec<Q> {
    let n = c.len();
    let mut coeffs = vec![Q::from_integer(0.into()); n + 1];
    coeffs[n] = Q::from_integer(1.into());
    let mut m: Matrix<Q> = vec![vec![Q::from_integer(0.into()); n]; n];
    for k in 1..=n {
        let cm = crate::algebra::mat_mul(c, &m);
        m = cm;
        for i in 0..n {
            m[i][i] += &coeffs[n - k + 1];
        }
        let cm = crate::algebra::mat_mul(c, &m);
        let tr: Q = (0..n).map(|i| cm[i][i].clone()).sum();
        coeffs[n - k] = -tr / Q::from_integer((k as i64).into());
    }
    coeffs
}

/// Writes `S = φ_V(P1) + S2` with `S2` in the standard complement.
pub fn nv_reduce(s: &LaurentVec, ctx: &PhiContext) -> Result<(LaurentVec, LaurentVec)> {
    let n = ctx.n;
    let mut s = s.clone();
    let mut p1 = LaurentVec::zero(n);
    // Leading terms above the window are always in the image.
    while let Some(deg) = s.high() {
        if deg <= ctx.top {
            break;
        }
        let mu = deg - ctx.delta;
        let m: Matrix<ParamRat> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = if ctx.case2 && ctx.b[i][j].deg() == ctx.delta {
                            ctx.b[i][j].lc()
                        } else {
                            ParamRat::zero()
                        };
                        if i == j {
                            v = v.add(&ctx.e.lc().scale_q(&Q::from_integer(mu.into())));
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let inv = inverse(&m).ok_or_else(|| {
            Error::VerificationFailed(format!("leading matrix singular at degree {mu}"))
        })?;
        let lc: Vec<ParamRat> = (0..n).map(|i| s.coeff(i, deg)).collect();
        let p = vec_mat(&lc, &inv);
        let step = LaurentVec::new(
            p.into_iter()
                .map(|c| LaurentPoly::monomial(c, mu))
                .collect(),
        );
        s = s.sub(&phi_v(&step, ctx));
        p1 = p1.add(&step);
    }
    if let Some(lo) = s.low() {
        if lo < ctx.floor {
            return Err(Error::Precondition(format!(
                "vector has exponent {lo} below the reduction window floor {}",
                ctx.floor
            )));
        }
    }
    for ((row, &piv), pre) in ctx.echelon.iter().zip(&ctx.pivots).zip(&ctx.preimages) {
        let (k, i) = ctx.column_key(piv);
        let c = s.coeff(i, k);
        if c.is_zero() {
            continue;
        }
        s = s.sub(&ctx.from_row(row).scale(&c));
        p1 = p1.add(&pre.scale(&c));
    }
    Ok((p1, s))
}

/// `f = g' + (1/d) R W + (1/(x^λ e)) Q V`.
#[derive(Clone, Debug)]
pub struct AdditiveDecomposition {
    /// `g` in coordinates of `W`.
    pub g: Vec<RatX>,
    pub r: Vec<PolyX>,
    pub d: PolyX,
    pub q: LaurentVec,
}

impl AdditiveDecomposition {
    /// Coordinates in `W` of the remainder `(1/d) R W + (1/(x^λ e)) Q V`.
    pub fn remainder_coords(&self, ctx: &PhiContext) -> Vec<RatX> {
        self.r
            .iter()
            .zip(&self.q.components)
            .zip(&ctx.tau)
            .map(|((r, q), &t)| {
                RatX::new(r.clone(), self.d.clone())
                    .add(&q.to_rat().mul_xpow(t).div_poly(&ctx.a))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().all(|p| p.is_zero()) && self.q.is_zero()
    }
}

/// Additive decomposition of `f` given by its coordinates in `W`.
pub fn additive_decompose_coords(
    c: &[RatX],
    w: &BasisFrame,
    ctx: &PhiContext,
) -> Result<AdditiveDecomposition> {
    let n = c.len();
    let hf = hermite_reduce_coords(c, w)?;
    let d = hf
        .h_den
        .exact_div(&ctx.e)
        .ok_or_else(|| Error::Precondition("e does not divide the Hermite denominator".into()))?;
    let mut r = Vec::with_capacity(n);
    let mut st = Vec::with_capacity(n);
    for (i, hi) in hf.h_num.iter().enumerate() {
        let (ri, si) = diophantine_split(hi, &ctx.e, &d)?;
        r.push(ri);
        st.push(LaurentPoly::from_poly(&si).shift(ctx.lambda as i64 - ctx.tau[i]));
    }
    let (p1, q) = nv_reduce(&LaurentVec::new(st), ctx)?;
    let mut g = hf.g;
    for (i, gi) in g.iter_mut().enumerate() {
        let extra = p1.components[i].to_rat().mul_xpow(ctx.tau[i]);
        *gi = gi.add(&extra);
    }
    let dec = AdditiveDecomposition { g, r, d, q };
    let gd = derivative_coords(&dec.g, w);
    let rem = dec.remainder_coords(ctx);
    for i in 0..n {
        if !c[i].sub(&gd[i]).sub(&rem[i]).is_zero() {
            return Err(Error::VerificationFailed(format!(
                "additive decomposition residual nonzero in coordinate {i}"
            )));
        }
    }
    Ok(dec)
}

pub fn additive_decompose(
    f: &AElement,
    w: &BasisFrame,
    ctx: &PhiContext,
) -> Result<AdditiveDecomposition> {
    additive_decompose_coords(&w.coords(f)?, w, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_expr;
    use crate::basis::{build_local_frame, normalize_at_infinity};
    use crate::ore::{OreModule, OreOp, TAction};

    fn op(cs: &[&str]) -> OreOp {
        OreOp::new(cs.iter().map(|s| parse_expr(s).unwrap()).collect())
    }

    fn p(s: &str) -> ParamRat {
        crate::algebra::parse_param(s).unwrap()
    }

    fn r(s: &str) -> RatX {
        parse_expr(s).unwrap()
    }

    fn sec6() -> (BasisFrame, LocalFrame, PhiContext) {
        let l = op(&[
            "8*t^4*x^4+5*t^3*x^3-11*t^2*x^2-5*t*x+4",
            "x*(t*x-1)*(t*x+1)^2*(7*t*x-5)",
            "(t^2*x^2-1)^2*x^2",
        ]);
        let u = op(&["2*t*x^2+x", "t*x^3"]);
        let m = OreModule::with_action(l, TAction { u }).unwrap();
        let w = BasisFrame::from_ops(
            &m,
            &[
                op(&["(t*x-1)*x^2"]),
                op(&["2*t^2*(t*x-1)*x^4", "(t^2*x^2-1)*(t*x-1)*x^3"]),
            ],
        )
        .unwrap();
        let v = BasisFrame::from_ops(
            &m,
            &[
                op(&["(t*x-1)*x"]),
                op(&["2*t^2*(t*x-1)*x^2", "(t^2*x^2-1)*(t*x-1)*x"]),
            ],
        )
        .unwrap();
        let nz = normalize_at_infinity(&w, &v).unwrap();
        let lf = build_local_frame(&nz.frame, &nz.tau).unwrap();
        let ctx = PhiContext::new(&lf, 7).unwrap();
        (nz.frame, lf, ctx)
    }

    #[test]
    fn sec6_echelon() {
        let (_, _, ctx) = sec6();
        assert_eq!(ctx.ell, 1);
        assert_eq!((ctx.floor, ctx.top), (0, 4));
        let z = "0";
        let expect = [
            ["1", z, z, z, z, "2/t^3", z, "4/t^4", "-4/t^4", z],
            [z, z, "1", "1/t", z, z, z, "-4/t^3", "4/t^3", z],
            [z, z, z, z, "1", "1/t", z, z, z, z],
            [z, z, z, z, z, z, "1", z, z, z],
        ];
        assert_eq!(ctx.echelon.len(), 4);
        for (row, ex) in ctx.echelon.iter().zip(expect) {
            let ex: Vec<ParamRat> = ex.iter().map(|s| p(s)).collect();
            assert_eq!(row, &ex);
        }
    }

    #[test]
    fn sec6_reduced_forms() {
        let (w, _, ctx) = sec6();
        let m = w.module().clone();
        let f0 = AElement::one(&m);
        let f1 = f0.t_derivative().unwrap();
        let f2 = f1.t_derivative().unwrap();
        // Reduced forms as W-coordinates: (1/(x e)) (q1 ν1 + q2 ν2), e = x(t²x²-1).
        let xe = "(x^2*(t^2*x^2-1))";
        let expect = |q1: &str, q2: &str| {
            vec![
                r(&format!("({q1})/{xe}/x")),
                r(&format!("({q2})/{xe}/x^2")),
            ]
        };
        for (f, q1, q2) in [
            (&f0, "0", "-x^2"),
            (&f1, "-4/t^2", "(t*x+4)*x/t^2"),
            (&f2, "-4/t^3", "2*(t*x+2)*x/t^3"),
        ] {
            let dec = additive_decompose(f, &w, &ctx).unwrap();
            assert!(dec.r.iter().all(|p| p.is_zero()));
            assert_eq!(dec.remainder_coords(&ctx), expect(q1, q2));
        }
    }

    #[test]
    fn ell_diagonal() {
        let le = ParamRat::t();
        let b = vec![
            vec![le.scale_q(&crate::algebra::q(-3)), ParamRat::zero()],
            vec![ParamRat::zero(), le.clone()],
        ];
        assert_eq!(compute_ell(&le, &b, 1), 3);
        let nil = vec![
            vec![ParamRat::zero(), ParamRat::one()],
            vec![ParamRat::zero(), ParamRat::zero()],
        ];
        assert_eq!(compute_ell(&le, &nil, 1), 0);
    }
}
