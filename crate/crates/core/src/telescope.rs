//! Telescoper search by iterated reduction of `∂t^i · f` until the
//! remainders become linearly dependent over K.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    left_kernel, poly_gcd, primitive_forms, rank, Field, Matrix, ParamRat, PolyX, RatX, Q,
};
use crate::basis::{
    build_local_frame, normalize_at_infinity, v_space, BasisFrame, LocalFrame, Normalization,
    VSpace,
};
use crate::error::{Error, Result};
use crate::hermite::{derivative_coords, hermite_reduce_coords, UReducer};
use crate::ore::{mobius_substitute, AElement, OreOp};
use crate::polyred::{additive_decompose_coords, PhiContext};

/// True iff `x² f` is integral at infinity, i.e. every coordinate of `x² f`
/// in the local basis at infinity has numerator degree at most its
/// denominator degree.
pub fn check_double_root_infinity(f: &AElement, vinf: &BasisFrame) -> Result<bool> {
    let c = vinf.coords(f)?;
    Ok(c
        .iter()
        .all(|ci| ci.mul_xpow(2).degree().is_none_or(|d| d <= 0)))
}

/// Which reduction produces the remainders.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    /// Hermite reduction followed by reduction modulo `U`.
    Canonical,
    /// Hermite reduction followed by polynomial reduction.
    Polyred,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Canonical => "canonical",
            Method::Polyred => "polyred",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(Method::Canonical),
            "polyred" => Ok(Method::Polyred),
            _ => Err(Error::Precondition(format!("unknown method '{s}'"))),
        }
    }
}

/// How the next remainder is obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// Reduce `∂t^i · f` from scratch.
    Direct,
    /// Reduce `∂t · [∂t^{i-1} · f]`.
    Iterated,
}

#[derive(Clone, Debug)]
pub struct TelescopeOptions {
    pub method: Method,
    pub strategy: Strategy,
    pub max_order: Option<usize>,
    pub certificate: bool,
    pub seed: u64,
}

impl Default for TelescopeOptions {
    fn default() -> Self {
        TelescopeOptions {
            method: Method::Polyred,
            strategy: Strategy::Iterated,
            max_order: None,
            certificate: false,
            seed: 0,
        }
    }
}

/// The precomputed frames: a normalized global integral basis `W`, the
/// local basis at infinity, and the reduction data built from them.
#[derive(Clone, Debug)]
pub struct Frames {
    pub w: BasisFrame,
    pub vinf: BasisFrame,
    pub normalization: Normalization,
    pub local: LocalFrame,
    pub vspace: VSpace,
    pub ureducer: UReducer,
    pub phi: PhiContext,
}

impl Frames {
    pub fn new(w: &BasisFrame, vinf: &BasisFrame, seed: u64) -> Result<Self> {
        let normalization = normalize_at_infinity(w, vinf)?;
        let wn = normalization.frame.clone();
        let local = build_local_frame(&wn, &normalization.tau)?;
        let vspace = v_space(&wn, &normalization.tau);
        let ureducer = UReducer::new(&wn, &vspace);
        let phi = PhiContext::new(&local, seed)?;
        Ok(Frames {
            w: wn,
            vinf: vinf.clone(),
            normalization,
            local,
            vspace,
            ureducer,
            phi,
        })
    }

    /// Writes `c = g' + rem` (coordinates in `W`) and returns `(rem, g, d)`.
    pub fn reduce(&self, c: &[RatX], method: Method) -> Result<(Vec<RatX>, Vec<RatX>, PolyX)> {
        match method {
            Method::Canonical => {
                let hf = hermite_reduce_coords(c, &self.w)?;
                let red = self.ureducer.reduce(&hf)?;
                let mut g = hf.g;
                for (k, &(i, j)) in red.combination.iter().zip(&self.vspace.index) {
                    if !k.is_zero() {
                        g[i] = g[i].add(&RatX::from_poly(PolyX::monomial(k.clone(), j)));
                    }
                }
                Ok((red.coords(), g, red.d))
            }
            Method::Polyred => {
                let dec = additive_decompose_coords(c, &self.w, &self.phi)?;
                Ok((dec.remainder_coords(&self.phi), dec.g, dec.d))
            }
        }
    }

    fn dt(&self, c: &[RatX]) -> Result<Vec<RatX>> {
        self.w.coords(&self.w.element(c).t_derivative()?)
    }
}

/// A telescoper `Σ p_i ∂t^i` with optional certificate.
#[derive(Clone, Debug)]
pub struct Telescoper {
    pub coeffs: Vec<ParamRat>,
    pub method: Method,
    /// `G` with `Σ p_i ∂t^i · f = G'`.
    pub certificate: Option<AElement>,
}

impl Telescoper {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl fmt::Display for Telescoper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "Dt".to_string(),
                _ => format!("Dt^{i}"),
            };
            parts.push(if mono.is_empty() {
                format!("({c})")
            } else {
                format!("({c})*{mono}")
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Result of a telescoper search with the intermediate remainders.
#[derive(Clone, Debug)]
pub struct TelescopeRun {
    pub telescoper: Telescoper,
    /// Coordinates in `W` of the reduced forms of `∂t^i · f`.
    pub reduced: Vec<Vec<RatX>>,
    /// `n deg(d) + dim N_V` with `d` the lcm of the remainder denominators.
    pub order_bound: usize,
}

/// Scales to coprime polynomials in ℤ[t] with positive leading numeric
/// coefficient on the last entry.
pub fn normalize_coefficients(p: &[ParamRat]) -> Vec<ParamRat> {
    let polys: Vec<PolyX> = p.iter().map(|c| PolyX::constant(c.clone())).collect();
    let (_, out) = primitive_forms(&polys);
    out.iter().map(|q| q.coeff(0)).collect()
}

/// First K-linear relation among `vecs` whose last coefficient is nonzero,
/// assuming the earlier vectors are independent.
fn dependence(vecs: &[Vec<RatX>], rng: &mut ChaCha8Rng) -> Option<Vec<ParamRat>> {
    let n = vecs[0].len();
    // Flatten numerators over a common denominator per coordinate.
    let mut rows: Matrix<ParamRat> = vec![Vec::new(); vecs.len()];
    for j in 0..n {
        let den = vecs.iter().fold(PolyX::one(), |acc, v| {
            let g = poly_gcd(&acc, v[j].den());
            &acc * &v[j].den().exact_div(&g).unwrap()
        });
        let nums: Vec<PolyX> = vecs
            .iter()
            .map(|v| v[j].mul_poly(&den).num().clone())
            .collect();
        let width = nums.iter().map(|p| p.deg() + 1).max().unwrap_or(0).max(0) as usize;
        for (row, p) in rows.iter_mut().zip(&nums) {
            row.extend((0..width).map(|k| p.coeff(k)));
        }
    }
    // Full rank at a random point proves independence.
    let t0 = loop {
        let cand = Q::new(
            rng.gen_range(-1000i64..=1000).into(),
            rng.gen_range(1i64..=1000).into(),
        );
        if rows.iter().flatten().all(|c| c.eval(&cand).is_some()) {
            break cand;
        }
    };
    let at: Matrix<Q> = rows
        .iter()
        .map(|r| r.iter().map(|c| c.eval(&t0).unwrap()).collect())
        .collect();
    if rank(&at) == vecs.len() {
        return None;
    }
    left_kernel(&rows)
        .into_iter()
        .find(|k| !k.last().unwrap().is_zero())
}

/// Minimal telescoper for `f`.
pub fn telescope(f: &AElement, frames: &Frames, opts: &TelescopeOptions) -> Result<TelescopeRun> {
    if opts.method == Method::Canonical && !check_double_root_infinity(f, &frames.vinf)? {
        return Err(Error::Precondition(
            "f does not have a double root at infinity; move an ordinary point to \
             infinity with the substitution x -> a + 1/x first"
                .into(),
        ));
    }
    let n = frames.w.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let c0 = frames.w.coords(f)?;
    let (rem, g, d) = frames.reduce(&c0, opts.method)?;
    let mut dlcm = d.clone();
    let max_order = opts
        .max_order
        .unwrap_or(n * d.deg().max(0) as usize + frames.phi.dim_nv() + 2);
    let mut reduced = vec![rem];
    let mut certs = vec![g];
    let mut current = c0;
    let mut order = 0;
    let relation = loop {
        if let Some(p) = dependence(&reduced, &mut rng) {
            break p;
        }
        if order == max_order {
            return Err(Error::Inconclusive { max_order });
        }
        order += 1;
        let (rem, g, d) = match opts.strategy {
            Strategy::Direct => {
                current = frames.dt(&current)?;
                frames.reduce(&current, opts.method)?
            }
            Strategy::Iterated => {
                let prev = frames.dt(reduced.last().unwrap())?;
                let (rem, g, d) = frames.reduce(&prev, opts.method)?;
                let g = if opts.certificate {
                    let carried = frames.dt(certs.last().unwrap())?;
                    g.iter().zip(&carried).map(|(a, b)| a.add(b)).collect()
                } else {
                    g
                };
                (rem, g, d)
            }
        };
        dlcm = &dlcm * &d.exact_div(&poly_gcd(&dlcm, &d)).unwrap();
        reduced.push(rem);
        certs.push(g);
    };
    let coeffs = normalize_coefficients(&relation);
    let certificate = opts.certificate.then(|| {
        let mut g = vec![RatX::zero(); n];
        for (p, gi) in coeffs.iter().zip(&certs) {
            for (a, b) in g.iter_mut().zip(gi) {
                *a = a.add(&b.scale(p));
            }
        }
        frames.w.element(&g)
    });
    let order_bound = n * dlcm.deg().max(0) as usize + frames.phi.dim_nv();
    Ok(TelescopeRun {
        telescoper: Telescoper {
            coeffs,
            method: opts.method,
            certificate,
        },
        reduced,
        order_bound,
    })
}

pub fn telescope_canonical(
    f: &AElement,
    frames: &Frames,
    max_order: Option<usize>,
) -> Result<TelescopeRun> {
    let opts = TelescopeOptions {
        method: Method::Canonical,
        max_order,
        ..Default::default()
    };
    telescope(f, frames, &opts)
}

pub fn telescope_polyred(
    f: &AElement,
    frames: &Frames,
    max_order: Option<usize>,
) -> Result<TelescopeRun> {
    let opts = TelescopeOptions {
        method: Method::Polyred,
        max_order,
        ..Default::default()
    };
    telescope(f, frames, &opts)
}

/// Applies `Σ p_i ∂t^i` to `f`.
pub fn apply_telescoper(coeffs: &[ParamRat], f: &AElement) -> Result<AElement> {
    let mut acc = AElement::zero(f.module());
    let mut cur = f.clone();
    for (i, p) in coeffs.iter().enumerate() {
        if i > 0 {
            cur = cur.t_derivative()?;
        }
        if !p.is_zero() {
            acc = acc.add(&cur.scale(&RatX::from_param(p.clone())));
        }
    }
    Ok(acc)
}

/// Checks that `P · f` decomposes with zero remainder, and that `G' = P · f`
/// for an attached certificate.
pub fn verify_telescoper(p: &Telescoper, f: &AElement, frames: &Frames) -> Result<()> {
    let pf = apply_telescoper(&p.coeffs, f)?;
    let c = frames.w.coords(&pf)?;
    let dec = additive_decompose_coords(&c, &frames.w, &frames.phi)?;
    if !dec.is_zero() {
        let rem: Vec<String> = dec
            .remainder_coords(&frames.phi)
            .iter()
            .map(|r| r.to_string())
            .collect();
        return Err(Error::VerificationFailed(format!(
            "telescoper leaves remainder ({})",
            rem.join(", ")
        )));
    }
    if let Some(g) = &p.certificate {
        let gc = frames.w.coords(g)?;
        let diff: Vec<RatX> = derivative_coords(&gc, &frames.w)
            .iter()
            .zip(&c)
            .map(|(a, b)| b.sub(a))
            .collect();
        if diff.iter().any(|r| !r.is_zero()) {
            return Err(Error::VerificationFailed(
                "certificate derivative differs from P · f".into(),
            ));
        }
    }
    Ok(())
}

/// Smallest nonnegative integer `a` with `e(a) lc(L)(a) != 0`.
pub fn ordinary_point(e: &PolyX, l: &OreOp) -> Q {
    let lc = l.lc();
    (0i64..)
        .map(ParamRat::from_int)
        .find(|a| {
            !e.eval(a).is_zero() && !lc.num().eval(a).is_zero() && !lc.den().eval(a).is_zero()
        })
        .and_then(|a| a.as_rational())
        .unwrap()
}

/// Data of the system after `x -> a + 1/x`.
#[derive(Clone, Debug)]
pub struct Substitution {
    pub a: Q,
    pub l: OreOp,
    pub u: Option<OreOp>,
    pub f: OreOp,
}

/// Moves the ordinary point `a` to infinity. Integral bases of the new
/// system must be recomputed externally.
pub fn suggest_substitution(f: &AElement, e: &PolyX) -> Substitution {
    let module = f.module();
    let l = module.operator();
    let a = ordinary_point(e, l);
    let ap = ParamRat::from_q(a.clone());
    let one = ParamRat::one();
    let zero = ParamRat::zero();
    let sub = |p: &OreOp| p.mobius(&ap, &one, &one, &zero);
    // dx = -dx̃/x̃², so the integrand picks up -1/x̃².
    let jac = RatX::x().pow(-2).neg();
    Substitution {
        l: mobius_substitute(l, &a),
        u: module.action().map(|act| sub(&act.u)),
        f: sub(&f.to_op()).scale_left(&jac),
        a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_expr, parse_param};
    use crate::ore::{OreModule, TAction};

    fn op(cs: &[&str]) -> OreOp {
        OreOp::new(cs.iter().map(|s| parse_expr(s).unwrap()).collect())
    }

    fn sec6() -> (Frames, AElement) {
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
                op(&["t*(t*x-1)*x^2+2*t^2*(t*x-1)*x^3", "(t^2*x^2-1)*(t*x-1)*x^2"]),
            ],
        )
        .unwrap();
        (Frames::new(&w, &v, 3).unwrap(), AElement::one(&m))
    }

    fn manin() -> (Frames, AElement) {
        let l = op(&[
            "-(3*t*x^2+2*t*x-8*x^2-10*x-3)",
            "2*x*(x+1)*(2*x+1)*(t*x-2*x-1)",
        ]);
        let u = op(&["-x/(2*(t*x-2*x-1))"]);
        let m = OreModule::with_action(l, TAction { u }).unwrap();
        let w = BasisFrame::from_ops(&m, &[op(&["(2*x+1)*(x+1)*((2-t)*x+1)/x"])]).unwrap();
        let v = BasisFrame::from_ops(&m, &[op(&["1"])]).unwrap();
        let f = AElement::from_op(&m, &op(&["-1/x^2"]));
        (Frames::new(&w, &v, 3).unwrap(), f)
    }

    fn ps(v: &[&str]) -> Vec<ParamRat> {
        v.iter().map(|s| parse_param(s).unwrap()).collect()
    }

    #[test]
    fn sec6_telescoper_both_methods() {
        let (fr, f) = sec6();
        for method in [Method::Polyred, Method::Canonical] {
            for strategy in [Strategy::Direct, Strategy::Iterated] {
                let opts = TelescopeOptions {
                    method,
                    strategy,
                    certificate: true,
                    ..Default::default()
                };
                let run = telescope(&f, &fr, &opts).unwrap();
                assert_eq!(run.telescoper.coeffs, ps(&["1", "-t", "t^2"]));
                verify_telescoper(&run.telescoper, &f, &fr).unwrap();
                assert!(run.telescoper.order() <= run.order_bound);
            }
        }
    }

    #[test]
    fn manin_canonical() {
        let (fr, f) = manin();
        let run = telescope_canonical(&f, &fr, None).unwrap();
        assert_eq!(run.telescoper.coeffs, ps(&["1", "8*t-4", "4*t^2-4*t"]));
        verify_telescoper(&run.telescoper, &f, &fr).unwrap();
    }

    #[test]
    fn perturbed_fails() {
        let (fr, f) = sec6();
        let mut p = telescope_polyred(&f, &fr, None).unwrap().telescoper;
        p.coeffs[0] = p.coeffs[0].add(&ParamRat::one());
        assert!(matches!(
            verify_telescoper(&p, &f, &fr),
            Err(Error::VerificationFailed(_))
        ));
    }

    #[test]
    fn integrable_gives_order_zero() {
        let (fr, f) = sec6();
        let g = f.x_derivative();
        let run = telescope_polyred(&g, &fr, None).unwrap();
        assert_eq!(run.telescoper.coeffs, ps(&["1"]));
    }

    #[test]
    fn double_root_check() {
        let (fr, f) = sec6();
        assert!(check_double_root_infinity(&f, &fr.vinf).unwrap());
        assert!(check_double_root_infinity(&f.t_derivative().unwrap(), &fr.vinf).unwrap());
        let xf = f.scale(&RatX::x().pow(3));
        assert!(!check_double_root_infinity(&xf, &fr.vinf).unwrap());
    }
}
