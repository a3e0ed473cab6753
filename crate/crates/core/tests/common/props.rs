//! Randomized property checks shared by the property tests and the
//! acceptance harness. Each check draws its inputs from a [`Gen`] and
//! returns a description of the failure, if any.

use ctfuchs::algebra::{poly_gcd, Field, LaurentVec, PolyX, RatX};
use ctfuchs::hermite::{hermite_reduce_coords, is_integrable};
use ctfuchs::polyred::{additive_decompose_coords, nv_reduce, phi_v};
use ctfuchs::telescope::{check_double_root_infinity, telescope, Frames, Method, TelescopeOptions};

use rand::Rng;

use super::{laurent_to_w, Gen};

pub type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: ctfuchs::Error) -> String {
    e.to_string()
}

/// `f - g' - h = 0`, recomputed in the power basis.
pub fn hermite_residual(fr: &Frames, g: &mut Gen) -> Check {
    let w = &fr.w;
    let c = g.coords(w.dim(), 1);
    let hf = hermite_reduce_coords(&c, w).map_err(err)?;
    let lhs = w.element(&c);
    let rhs = w.element(&hf.g).x_derivative().add(&w.element(&hf.h_coords()));
    ensure(lhs == rhs, || format!("hermite residual nonzero for {c:?}"))
}

/// `f - g' - R/d W - Q/(x^λ e) V = 0`, with `Q` in the complement,
/// `deg R < deg d` and `gcd(d, e) = 1`.
pub fn decomposition_residual(fr: &Frames, g: &mut Gen) -> Check {
    let w = &fr.w;
    let c = g.coords(w.dim(), 1);
    let dec = additive_decompose_coords(&c, w, &fr.phi).map_err(err)?;
    let lhs = w.element(&c);
    let rhs = w
        .element(&dec.g)
        .x_derivative()
        .add(&w.element(&dec.remainder_coords(&fr.phi)));
    ensure(lhs == rhs, || format!("decomposition residual nonzero for {c:?}"))?;
    let (p1, q2) = nv_reduce(&dec.q, &fr.phi).map_err(err)?;
    ensure(p1.is_zero() && q2 == dec.q, || "Q not in the complement".into())?;
    ensure(dec.r.iter().all(|r| r.deg() < dec.d.deg()), || {
        "deg R >= deg d".into()
    })?;
    ensure(poly_gcd(&dec.d, &fr.phi.e).is_one(), || "gcd(d, e) != 1".into())
}

/// `(P V)' = φ_V(P) V / (x^λ e)`.
pub fn phi_identity(fr: &Frames, g: &mut Gen) -> Check {
    let ctx = &fr.phi;
    let lo = ctx.domain_floor;
    let hi = ctx.ell + 2;
    let p = LaurentVec::new((0..ctx.n).map(|_| g.laurent(lo, hi)).collect());
    let img = phi_v(&p, ctx);
    let lhs = fr.w.element(&laurent_to_w(&p, &ctx.tau)).x_derivative();
    let rhs: Vec<RatX> = laurent_to_w(&img, &ctx.tau)
        .iter()
        .map(|r| r.div_poly(&ctx.a))
        .collect();
    ensure(lhs == fr.w.element(&rhs), || format!("φ_V identity fails for {p}"))
}

/// `∂t ∂x f = ∂x ∂t f`.
pub fn commutation(fr: &Frames, g: &mut Gen) -> Check {
    let f = fr.w.element(&g.coords(fr.w.dim(), 1));
    let a = f.x_derivative().t_derivative().map_err(err)?;
    let b = f.t_derivative().map_err(err)?.x_derivative();
    ensure(a == b, || format!("derivations do not commute on {f}"))
}

/// `[a f + b h] = a [f] + b [h]` for both reductions.
pub fn linearity(fr: &Frames, g: &mut Gen) -> Check {
    let n = fr.w.dim();
    let f = g.coords(n, 1);
    let h = g.coords(n, 1);
    let (a, b) = (RatX::from_param(g.param()), RatX::from_param(g.param()));
    let comb: Vec<RatX> = f
        .iter()
        .zip(&h)
        .map(|(x, y)| a.mul(x).add(&b.mul(y)))
        .collect();
    for method in [Method::Canonical, Method::Polyred] {
        let (rf, _, _) = fr.reduce(&f, method).map_err(err)?;
        let (rh, _, _) = fr.reduce(&h, method).map_err(err)?;
        let (rc, _, _) = fr.reduce(&comb, method).map_err(err)?;
        let expect: Vec<RatX> = rf
            .iter()
            .zip(&rh)
            .map(|(x, y)| a.mul(x).add(&b.mul(y)))
            .collect();
        ensure(rc == expect, || format!("{} reduction is not linear", method.name()))?;
    }
    Ok(())
}

/// Both integrability criteria agree. Returns whether the instance was
/// integrable, or `None` if it was skipped for lack of a double root.
pub fn integrability_equivalence(fr: &Frames, g: &mut Gen) -> Result<Option<bool>, String> {
    let f = if g.rng.gen_bool(0.5) {
        // Derivatives of elements vanishing at infinity.
        let c = g.coords(fr.vinf.dim(), -1);
        fr.vinf.element(&c).x_derivative()
    } else {
        g.double_root(&fr.vinf)
    };
    if !check_double_root_infinity(&f, &fr.vinf).map_err(err)? {
        return Ok(None);
    }
    let a = is_integrable(&f, &fr.w, &fr.vspace, &fr.ureducer, &fr.vinf)
        .map_err(err)?
        .integrable;
    let c = fr.w.coords(&f).map_err(err)?;
    let b = additive_decompose_coords(&c, &fr.w, &fr.phi)
        .map_err(err)?
        .is_zero();
    ensure(a == b, || format!("criteria disagree on {f}: {a} vs {b}"))?;
    Ok(Some(a))
}

/// The polyred telescoper respects `n deg(d) + dim N_V`. Coordinates are
/// drawn from ℚ(x) with small denominators, since the reduced forms of
/// `∂t^i f` grow quickly with `i`.
pub fn order_bound(fr: &Frames, g: &mut Gen) -> Check {
    let n = fr.w.dim();
    let factors = [PolyX::x(), PolyX::from_ints(&[-1, 1]), PolyX::from_ints(&[2, 1])];
    let c: Vec<RatX> = (0..n)
        .map(|_| {
            let num = PolyX::from_ints(&[g.int(-3, 3), g.int(-3, 3)]);
            let k = g.int(0, factors.len() as i64);
            let den = match k as usize {
                0 => PolyX::one(),
                i => factors[i - 1].pow(g.int(1, 2) as u32),
            };
            RatX::new(num, den)
        })
        .collect();
    let f = fr.w.element(&c);
    let opts = TelescopeOptions {
        method: Method::Polyred,
        seed: g.rng.gen(),
        ..Default::default()
    };
    let run = telescope(&f, fr, &opts).map_err(err)?;
    ensure(run.telescoper.order() <= run.order_bound, || {
        format!(
            "order {} exceeds bound {} for {f}",
            run.telescoper.order(),
            run.order_bound
        )
    })
}
