"""Regenerate the frozen Fisher-information oracle values used in tests.

Independent route: the three score functions are obtained by symbolic
differentiation of the x-scale GEV log-density (sympy), and the expectations
E[s_a s_b] are computed by high-precision quadrature on the unit-exponential
scale t = (1 + xi z)^(-1/xi), with a t = u^12 substitution on (0, 1) to
regularize the t^(2 xi) endpoint singularity for negative xi. No algebra is
shared with the closed forms in maxstab.fisher.

Requires sympy and mpmath (dev-only). Prints one row per parameter point:
mu sigma xi and the six upper-triangle entries of K in the order
(mm, ms, mx, ss, sx, xx), scaled back to standard parameters where relevant.
"""

import mpmath as mp
import sympy as sp

mp.mp.dps = 40

_x, _mu, _sg, _xi = sp.symbols("x mu sigma xi")
_z = (_x - _mu) / _sg
_logf = (
    -sp.log(_sg)
    - (1 + 1 / _xi) * sp.log(1 + _xi * _z)
    - (1 + _xi * _z) ** (-1 / _xi)
)
_SCORES = [
    sp.lambdify((_x, _mu, _sg, _xi), sp.diff(_logf, v), modules="mpmath")
    for v in (_mu, _sg, _xi)
]

KPOW = 12


def fisher_by_quadrature(mu, sg, xi):
    mu, sg, xi = mp.mpf(mu), mp.mpf(sg), mp.mpf(xi)

    def g(t, a, b):
        if t <= 0:
            return mp.mpf(0)
        x = mu + sg * (t ** (-xi) - 1) / xi
        if 1 + xi * (x - mu) / sg <= 0:
            return mp.mpf(0)
        return _SCORES[a](x, mu, sg, xi) * _SCORES[b](x, mu, sg, xi) * mp.e ** (-t)

    out = []
    for a in range(3):
        for b in range(a, 3):
            inner = mp.quad(
                lambda u, a=a, b=b: g(u**KPOW, a, b) * KPOW * u ** (KPOW - 1),
                [0, mp.mpf("0.5"), 1],
            )
            outer = mp.quad(lambda t, a=a, b=b: g(t, a, b), [1, 5, 30, mp.inf])
            out.append(inner + outer)
    return out


CASES = [
    # xi = 1e-35 at 80-digit precision stands in for the Gumbel point: the
    # entries are analytic in xi, so the error is far below print precision
    (0, 1, "1e-35"),
    (0, 1, "-0.45"),
    (0, 1, "-0.4"),
    (0, 1, "-0.2"),
    (0, 1, "0.2"),
    (0, 1, "0.5"),
    (0, 1, "1.0"),
    ("1.5", "2.0", "0.2"),
    ("-3.0", "0.5", "-0.3"),
]

if __name__ == "__main__":
    for mu, sg, xi in CASES:
        mp.mp.dps = 80 if abs(mp.mpf(xi)) < 1e-6 else 40
        vals = fisher_by_quadrature(mu, sg, xi)
        print(f"mu={mu} sigma={sg} xi={xi}")
        print("  " + ", ".join(mp.nstr(v, 17) for v in vals), flush=True)
