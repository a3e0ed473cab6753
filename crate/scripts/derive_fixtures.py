"""Independent derivation of the Manin fixtures with sympy.

Run `python3 scripts/derive_fixtures.py` to print the operator data for
y = 1/sqrt(x(x-1)(x-t)) before and after the substitution x -> 2 + 1/x,
together with checks of the invariants the library relies on.
"""

import json

import sympy as sp

x, t, X = sp.symbols("x t X")


def coeffs(exprs):
    return [str(sp.factor(e)).replace("**", "^") for e in exprs]


def order_one_data(y):
    """L = den*D - den*y'/y and U = dy/dt / y for a hyperexponential y."""
    ld = sp.cancel(sp.diff(y, x) / y)
    u = sp.cancel(sp.diff(y, t) / y)
    den = sp.denom(ld)
    l0, l1 = sp.expand(-ld * den), den
    # D_t D_x = D_x D_t on y: d/dx(u) must equal d/dt(y'/y).
    assert sp.simplify(sp.diff(u, x) - sp.diff(ld, t)) == 0
    return l0, l1, u


def exponent(y, point):
    """Puiseux exponent of y at x = point (or infinity)."""
    if point == sp.oo:
        z = sp.Symbol("z", positive=True)
        e = sp.limit(sp.log(sp.Abs(y.subs(x, 1 / z))) / sp.log(z), z, 0)
        return e
    z = sp.Symbol("z", positive=True)
    return sp.limit(sp.log(sp.Abs(y.subs(x, point + z))) / sp.log(z), z, 0)


def manin():
    y = 1 / sp.sqrt(x * (x - 1) * (x - t))
    l0, l1, u = order_one_data(y)
    raw = {
        "L": coeffs([l0, l1]),
        "U": coeffs([u]),
        # r*y integral at a finite root needs ord(r) >= 1 since y ~ (x-p)^(-1/2).
        "W": [coeffs([x * (x - 1) * (x - t)])],
        # At infinity y ~ x^(-3/2), so r = x is the largest allowed power.
        "Vinf": [coeffs([x])],
    }
    # x -> 2 + 1/X; the integrand picks up -1/X^2.
    ys = y.subs(x, 2 + 1 / X)
    ldx = sp.cancel(sp.diff(ys, X) / ys)
    us = sp.cancel(sp.diff(ys, t) / ys)
    den = sp.denom(ldx)
    sub = {
        "L": coeffs([sp.expand(-ldx * den).subs(X, x), den.subs(X, x)]),
        "U": coeffs([us.subs(X, x)]),
        "f": coeffs([-1 / x**2]),
    }
    # Integral basis after substitution: finite singularities are the images
    # of 0, 1, t and the old point at infinity (X = 0).
    poly = sp.factor((2 * X + 1) * (X + 1) * ((2 - t) * X + 1) / X)
    w = sp.simplify(poly * ys)
    for p in [sp.Rational(-1, 2), -1]:
        assert exponent(w.subs(t, sp.Rational(7, 3)), p) >= 0
    sub["W"] = [coeffs([poly.subs(X, x)])]
    sub["Vinf"] = [["1"]]
    return raw, sub, y


def check_telescoper(y):
    """P y = d/dx (r y) for P = 4t(t-1)Dt^2 + 4(2t-1)Dt + 1 with r rational."""
    py = 4 * t * (t - 1) * sp.diff(y, t, 2) + 4 * (2 * t - 1) * sp.diff(y, t) + y
    a, b, c = sp.symbols("a b c")
    r = (a * x + b) * x * (x - 1) / (x - t) ** 1 + c
    eq = sp.together(sp.simplify((sp.diff(r * y, x) - py) / y))
    sol = sp.solve(sp.Poly(sp.numer(eq), x).coeffs(), [a, b, c], dict=True)
    assert sol, "telescoper not confirmed"
    return sol[0]


if __name__ == "__main__":
    raw, sub, y = manin()
    cert = check_telescoper(y)
    print(json.dumps({"manin_raw": raw, "manin": sub, "certificate_ansatz": {str(k): str(v) for k, v in cert.items()}}, indent=2))
