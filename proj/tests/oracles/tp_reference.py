"""Reference values of g_n by exact symbolic convolution of one-sided exponentials.

Run: python3 tests/oracles/tp_reference.py
Prints C++ initializer rows {weights..., x, value} to paste into tests/reference_values.hpp.
"""
import sympy as sp

t, x = sp.symbols("t x", real=True)


def one_sided(weights):
    """Convolution of |a| e^{-|a| t} chi[0,oo), returned as an expression in t for t >= 0."""
    f = None
    for a in weights:
        h = abs(a) * sp.exp(-abs(a) * t)
        if f is None:
            f = h
            continue
        u = sp.symbols("u", positive=True)
        f = sp.simplify(sp.integrate(f.subs(t, u) * h.subs(t, t - u), (u, 0, t)))
    return f


def g(weights):
    pos = [a for a in weights if a > 0]
    neg = [a for a in weights if a < 0]
    P = one_sided(pos) if pos else None  # supported on t >= 0
    Nf = one_sided(neg) if neg else None  # N(t) = Nf(-t), supported on t <= 0
    if Nf is None:
        return lambda v: P.subs(t, v) if v >= 0 else 0
    if P is None:
        return lambda v: Nf.subs(t, -v) if v <= 0 else 0
    u = sp.symbols("u", real=True)
    # (P * N)(v) = int_{u >= max(0, v)} P(u) Nf(u - v) du
    right = sp.integrate(P.subs(t, u) * Nf.subs(t, u - x), (u, x, sp.oo), conds="none")
    left = sp.integrate(P.subs(t, u) * Nf.subs(t, u - x), (u, 0, sp.oo), conds="none")
    return lambda v: right.subs(x, v) if v >= 0 else left.subs(x, v)


SETS = [
    [sp.Integer(1)],
    [sp.Integer(1), sp.Integer(-1)],
    [sp.Integer(1), sp.Integer(2), sp.Integer(3)],
    [sp.Integer(2), sp.Integer(2), sp.Integer(-1)],
    [sp.Rational(7, 10), sp.Rational(-13, 10), sp.Rational(5, 2), sp.Rational(-31, 10)],
    [sp.Integer(1), sp.Integer(1), sp.Integer(1)],
    [sp.Rational(-1, 2), sp.Integer(-3), sp.Integer(4), sp.Integer(4), sp.Rational(3, 2)],
]
POINTS = [sp.Integer(-2), sp.Rational(-1, 2), sp.Integer(0), sp.Rational(3, 10), sp.Integer(1), sp.Rational(5, 2)]

for w in SETS:
    f = g(w)
    for p in POINTS:
        val = sp.N(f(p), 30)
        ws = ", ".join(str(float(a)) for a in w)
        print(f"    {{{{{ws}}}, {float(p)!r}, {sp.N(val, 20)}}},")
