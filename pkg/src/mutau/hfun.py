"""The Irwin-Hall volume function H(s, d) and the bound built from it.

``H(s, d)`` is the volume of ``{x in [0,1]^d : x_1 + ... + x_d <= s}``.
Everything here is exact over :class:`fractions.Fraction`; the Monte Carlo
estimator is only an independent cross-check.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CheckFailure, NonPositiveS


def _frac(s):
    if isinstance(s, str):
        return Fraction(s)
    return Fraction(s)


def _H(s, d):
    """Total version: 0 for s <= 0, 1 for s >= d."""
    s = _frac(s)
    if s <= 0:
        return Fraction(0)
    if s >= d:
        return Fraction(1)
    total = Fraction(0)
    for i in range(math.floor(s) + 1):
        total += (-1) ** i * math.comb(d, i) * (s - i) ** d
    return total / math.factorial(d)


def H(s, d):
    """Exact ``H(s, d)`` for rational ``s > 0`` and ``d >= 1``."""
    s = _frac(s)
    if d < 1:
        raise ValueError("d must be >= 1")
    if s <= 0:
        raise NonPositiveS(f"s must be positive, got {s}")
    return _H(s, d)


def H_prime(s, d):
    """Derivative in ``s``: ``H(s, d-1) - H(s-1, d-1)``."""
    s = _frac(s)
    if d < 2:
        raise ValueError("d must be >= 2")
    if s <= 0:
        raise NonPositiveS(f"s must be positive, got {s}")
    return _H(s, d - 1) - _H(s - 1, d - 1)


def bound(n):
    """``1 / (H((n+1)/2, n) - H((n-1)/2, n))``."""
    if n < 2:
        raise ValueError("bound needs n >= 2")
    return 1 / (_H(Fraction(n + 1, 2), n) - _H(Fraction(n - 1, 2), n))


def peak_value(n):
    """The maximum of ``t -> H(t,n) - H(t-1,n)``, attained at ``t = (n+1)/2``."""
    return _H(Fraction(n + 1, 2), n) - _H(Fraction(n - 1, 2), n)


def fmax_check(n, grid=64):
    """Grid check that ``H(t,n) - H(t-1,n)`` peaks at ``(n+1)/2`` and is symmetric.

    Grid points are ``1 + k*n/grid`` for ``0 < k < grid``; the midpoint is
    added when ``grid`` is odd. Raises :class:`CheckFailure` naming the
    offending point.
    """
    if grid < 8:
        raise ValueError("grid must be >= 8")
    if n < 2:
        raise ValueError("n must be >= 2")
    pts = {1 + Fraction(k * n, grid) for k in range(1, grid)}
    mid = Fraction(n + 1, 2)
    pts.add(mid)
    pts = sorted(pts)
    f = lambda t: _H(t, n) - _H(t - 1, n)
    vals = {t: f(t) for t in pts}
    best = max(vals.values())
    for t, v in vals.items():
        if v == best and t != mid:
            raise CheckFailure(f"maximum also attained at t={t}")
        mirror = n + 1 - t
        if f(mirror) != v:
            raise CheckFailure(f"symmetry fails at t={t}")
    if vals[mid] != best:
        raise CheckFailure(f"maximum at {max(vals, key=vals.get)}, not {mid}")
    return {"n": n, "grid": grid, "argmax": mid, "max": best, "points": len(pts), "symmetric": True}


# -- exact integration of the piecewise polynomial -------------------------------

def _piece(k, d):
    """Coefficients (ascending powers of t) of H(t, d) on [k, k+1], 0 <= k < d."""
    coeffs = [Fraction(0)] * (d + 1)
    for i in range(k + 1):
        sign = (-1) ** i * math.comb(d, i)
        # (t - i)^d expanded
        for j in range(d + 1):
            coeffs[j] += sign * math.comb(d, j) * (-i) ** (d - j)
    fact = math.factorial(d)
    return [c / fact for c in coeffs]


def _antideriv_at(coeffs, t):
    return sum(c * t ** (j + 1) / (j + 1) for j, c in enumerate(coeffs))


def integral_H(a, b, d):
    """Exact ``∫_a^b H(t, d) dt`` (with H = 0 for t <= 0 and H = 1 for t >= d)."""
    a, b = _frac(a), _frac(b)
    if b < a:
        return -integral_H(b, a, d)
    total = Fraction(0)
    lo = a
    while lo < b:
        k = math.floor(lo)
        hi = min(b, Fraction(k + 1))
        if k >= d:
            total += hi - lo
        elif k >= 0:  # H vanishes on negative arguments
            piece = [Fraction(1)] if d == 0 else _piece(k, d)
            total += _antideriv_at(piece, hi) - _antideriv_at(piece, lo)
        lo = hi
    return total


def integral_recurrence_holds(s, d):
    """``H(s, d) == ∫_{s-1}^{s} H(t, d-1) dt`` exactly."""
    s = _frac(s)
    return _H(s, d) == integral_H(s - 1, s, d - 1)


# -- Monte Carlo -----------------------------------------------------------------

@dataclass(frozen=True)
class MonteCarloEstimate:
    estimate: float
    stderr: float
    samples: int
    seed: int

    def contains(self, value, k=4.0):
        return abs(self.estimate - float(value)) < k * self.stderr if self.stderr > 0 else self.estimate == float(value)


def monte_carlo_H(s, d, samples=10 ** 5, seed=0, chunk=1 << 16):
    """Fraction of uniform points of the unit cube with coordinate sum <= s."""
    if samples < 1000:
        raise ValueError("need at least 1000 samples")
    s = float(_frac(s))
    rng = np.random.default_rng(seed)
    hits = 0
    left = samples
    while left:
        m = min(chunk, left)
        pts = rng.random((m, d))
        hits += int(np.count_nonzero(pts.sum(axis=1) <= s))
        left -= m
    p = hits / samples
    return MonteCarloEstimate(p, math.sqrt(p * (1 - p) / samples), samples, seed)


# -- bound table -------------------------------------------------------------------

class BoundTable:
    def __init__(self, n_max):
        if n_max < 2:
            raise ValueError("n_max must be >= 2")
        self.rows = [(n, bound(n)) for n in range(2, n_max + 1)]

    def to_csv(self):
        lines = ["n,bound,preview"]
        for n, b in self.rows:
            lines.append(f"{n},{fraction_str(b)},{float(b):.6f}")
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {"rows": [{"n": n, "bound": fraction_str(b), "preview": f"{float(b):.6f}"} for n, b in self.rows]}


def fraction_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
