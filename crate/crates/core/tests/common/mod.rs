//! Shared fixtures, random element generators and an undetermined-coefficient
//! antiderivative oracle for the integration tests.

#![allow(dead_code)]

use std::path::Path;

use ctfuchs::algebra::{solve, Field, LaurentPoly, LaurentVec, Matrix, ParamRat, PolyX, RatX};
use ctfuchs::basis::BasisFrame;
use ctfuchs::ore::AElement;
use ctfuchs::problem::{parse_problem, Problem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub mod props;

pub fn fixture(name: &str) -> Problem {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).expect("fixture exists");
    parse_problem(&text).expect("fixture loads")
}

pub fn rat(s: &str) -> RatX {
    ctfuchs::algebra::parse_expr(s).unwrap()
}

pub fn param(s: &str) -> ParamRat {
    ctfuchs::algebra::parse_param(s).unwrap()
}

/// Random small elements over a given system.
pub struct Gen {
    pub rng: ChaCha8Rng,
    with_t: bool,
    /// Distinct factors per random denominator; kept small over ℚ(t).
    max_factors: usize,
    factors: Vec<PolyX>,
}

impl Gen {
    pub fn new(seed: u64, with_t: bool, factors: &[&str]) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            with_t,
            max_factors: if with_t { 1 } else { 2 },
            factors: factors
                .iter()
                .map(|s| ctfuchs::algebra::parse_poly_x(s).unwrap())
                .collect(),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn param(&mut self) -> ParamRat {
        let a = ParamRat::from_int(self.int(-3, 3));
        if self.with_t && self.rng.gen_bool(0.5) {
            a.add(&ParamRat::t().mul(&ParamRat::from_int(self.int(-2, 2))))
        } else {
            a
        }
    }

    pub fn nonzero_param(&mut self) -> ParamRat {
        loop {
            let p = self.param();
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn poly(&mut self, deg: usize) -> PolyX {
        PolyX::new((0..=deg).map(|_| self.param()).collect())
    }

    pub fn denominator(&mut self, max_factors: usize) -> PolyX {
        let k = self.rng.gen_range(0..=max_factors);
        let mut d = PolyX::one();
        for _ in 0..k {
            let f = self.factors[self.rng.gen_range(0..self.factors.len())].clone();
            let m = self.rng.gen_range(1..=2u32);
            d = &d * &f.pow(m);
        }
        d
    }

    /// `p/q` with `deg p - deg q <= excess`.
    pub fn rat(&mut self, excess: i64) -> RatX {
        let q = self.denominator(self.max_factors);
        let top = q.deg() + excess;
        if top < 0 {
            return RatX::zero();
        }
        let deg = self.rng.gen_range(0..=top as usize);
        RatX::new(self.poly(deg), q)
    }

    pub fn coords(&mut self, n: usize, excess: i64) -> Vec<RatX> {
        (0..n).map(|_| self.rat(excess)).collect()
    }

    /// An element whose coordinates in `vinf` vanish to order two at infinity.
    pub fn double_root(&mut self, vinf: &BasisFrame) -> AElement {
        let c = self.coords(vinf.dim(), -2);
        vinf.element(&c)
    }

    pub fn laurent(&mut self, lo: i64, hi: i64) -> LaurentPoly {
        LaurentPoly::new(lo, (lo..=hi).map(|_| self.param()).collect())
    }
}

pub fn t_system_factors() -> &'static [&'static str] {
    &["x", "x-1", "t*x-1", "t*x+1", "x+2", "x-t"]
}

pub fn plain_factors() -> &'static [&'static str] {
    &["x", "x-1", "x+1", "x-2", "2*x+1"]
}

/// Searches `G` with coordinates `P_i / (D e)` in `frame`, `deg P_i <= cap`,
/// where `D` is the common denominator of the coordinates of `f`, such that
/// `G' = f`. The returned antiderivative has been checked exactly.
pub fn ansatz_antiderivative(f: &[RatX], frame: &BasisFrame, cap: usize) -> Option<Vec<RatX>> {
    let n = frame.dim();
    let e = frame.e().clone();
    let mut q = e.clone();
    for c in f {
        let g = ctfuchs::algebra::poly_gcd(&q, c.den());
        q = &q * &c.den().exact_div(&g).unwrap();
    }
    let dq = q.derivative();
    let m = frame.m();
    // Contribution of the unknown x^k in P_i to coordinate l of Q² e G'.
    let unknowns: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..=cap).map(move |k| (i, k))).collect();
    let contrib = |i: usize, k: usize, l: usize| -> PolyX {
        let xk = PolyX::monomial(ParamRat::one(), k);
        let mut p = &(&q * &xk) * &m[i][l];
        if i == l {
            let mut d = &(&xk * &dq).scale(&ParamRat::from_int(-1)) * &e;
            if k > 0 {
                let dk = PolyX::monomial(ParamRat::from_int(k as i64), k - 1);
                d = &d + &(&(&dk * &q) * &e);
            }
            p = &p + &d;
        }
        p
    };
    let cols: Vec<Vec<PolyX>> = unknowns
        .iter()
        .map(|&(i, k)| (0..n).map(|l| contrib(i, k, l)).collect())
        .collect();
    let q2e = &(&q * &q) * &e;
    let rhs: Vec<PolyX> = f.iter().map(|c| c.mul_poly(&q2e).num().clone()).collect();
    let mut rows: Matrix<ParamRat> = Vec::new();
    let mut b = Vec::new();
    for l in 0..n {
        let top = cols
            .iter()
            .map(|c| c[l].deg())
            .chain(std::iter::once(rhs[l].deg()))
            .max()
            .unwrap()
            .max(0) as usize;
        for deg in 0..=top {
            rows.push(cols.iter().map(|c| c[l].coeff(deg)).collect());
            b.push(rhs[l].coeff(deg));
        }
    }
    let sol = solve(&rows, &b)?;
    let mut g = vec![PolyX::zero(); n];
    for (&(i, k), c) in unknowns.iter().zip(&sol) {
        if !c.is_zero() {
            g[i] = &g[i] + &PolyX::monomial(c.clone(), k);
        }
    }
    let g: Vec<RatX> = g.into_iter().map(|p| RatX::new(p, q.clone())).collect();
    assert!(
        frame.element(&g).x_derivative() == frame.element(f),
        "ansatz solution fails"
    );
    Some(g)
}

/// `Σ P_i ν_i` as coordinates in `W` given `ν_i = x^{τ_i} ω_i`.
pub fn laurent_to_w(p: &LaurentVec, tau: &[i64]) -> Vec<RatX> {
    p.components
        .iter()
        .zip(tau)
        .map(|(c, &t)| c.to_rat().mul_xpow(t))
        .collect()
}
