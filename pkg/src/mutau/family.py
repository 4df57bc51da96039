"""Deformations of the Fermat form x_1^n + ... + x_d^n and the tau_min experiment.

Also hosts the lattice-point counts that predict the graded codimensions of
the Tjurina algebra of a generic deformation.
"""
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import UNKNOWN, BudgetExceeded, CheckFailure, EmptyDeformationSpace, Inconclusive
from .hfun import H, bound, fraction_str, peak_value
from .invariants import jacobian_ideal, tjurina_ideal
from .local import local_colength, truncated_colength
from .polynomial import parse_ring_spec


def count_compositions(m, d):
    """Number of ``a in N^d`` with ``sum a = m``."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if m < 0:
        return 0
    return math.comb(m + d - 1, d - 1)


def count_bounded(m, d, c, mode="eq"):
    """Compositions of ``m`` (``mode='le'``: of every m' <= m) into ``d`` parts each <= ``c``."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if mode == "le":
        return sum(count_bounded(k, d, c, "eq") for k in range(m + 1))
    if mode != "eq":
        raise ValueError(f"mode must be 'eq' or 'le', not {mode!r}")
    total = 0
    for j in range(d + 1):
        rest = m - j * (c + 1)
        if rest < 0:
            break
        total += (-1) ** j * math.comb(d, j) * math.comb(rest + d - 1, d - 1)
    return total


def asymptotic_lemma_check(d, lam, n_list, tol=Fraction(1, 20)):
    """Compare ``count_bounded(floor(lam*n), d, n, 'le') / n^d`` with ``H(lam, d)``.

    Raises :class:`CheckFailure` unless the gaps shrink along ``n_list`` and the
    last one is below ``tol``.
    """
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    target = H(lam, d)
    rows = []
    for n in n_list:
        val = Fraction(count_bounded(math.floor(lam * n), d, n, "le"), n ** d)
        rows.append({"n": n, "value": val, "gap": abs(val - target)})
    gaps = [r["gap"] for r in rows]
    if any(b > a for a, b in zip(gaps, gaps[1:])):
        raise CheckFailure(f"gaps do not shrink: {[float(g) for g in gaps]}")
    if gaps and gaps[-1] >= tol:
        raise CheckFailure(f"final gap {float(gaps[-1])} not below {float(tol)}")
    return {"d": d, "lambda": lam, "target": target, "rows": rows}


# -- deformations -------------------------------------------------------------------

@dataclass
class DeformationSpec:
    n: int
    d: int
    seed: int = 0
    coefficient_mode: str = "random_nonzero"
    degree_cap: int = None
    coefficients: dict = None
    strict: bool = False

    def __post_init__(self):
        if self.n < 3 or self.d < 2:
            raise ValueError("need n >= 3 and d >= 2")
        if self.coefficient_mode not in ("random_nonzero", "user_supplied"):
            raise ValueError(f"unknown coefficient mode {self.coefficient_mode!r}")
        if self.degree_cap is None:
            self.degree_cap = default_degree_cap(self.n, self.d)

    def monomials(self):
        """Allowed exponents: each ``a_i <= n-2`` and ``n+1 <= |a| <= degree_cap``, by degree then lex."""
        n = self.n
        out = [a for a in product(range(n - 1), repeat=self.d) if n + 1 <= sum(a) <= self.degree_cap]
        return sorted(out, key=lambda a: (sum(a), a))


def default_degree_cap(n, d):
    return n + math.ceil(Fraction((d - 1) * n, 2)) + 2


def _default_ring(d, char=0):
    names = ["x", "y", "z", "w"] if d <= 4 else [f"x{i}" for i in range(1, d + 1)]
    return parse_ring_spec(f"char={char}; vars={','.join(names[:d])}")


def fermat(ring, n):
    out = ring.zero()
    for v in ring.gens():
        out = out + v ** n
    return out


def random_deformation(spec, ring=None):
    """``f_0 + sum u_a x^a`` over the allowed monomials, coefficients seeded by ``spec.seed``."""
    ring = ring or _default_ring(spec.d)
    if ring.n != spec.d:
        raise ValueError("ring has the wrong number of variables")
    if ring.characteristic and spec.n % ring.characteristic == 0:
        raise ValueError("characteristic divides n: f_0 is not isolated")
    f = fermat(ring, spec.n)
    mons = spec.monomials()
    if not mons:
        if spec.strict:
            raise EmptyDeformationSpace(f"no allowed monomials for n={spec.n}, d={spec.d}")
        return f
    fld = ring.field
    terms = dict(f.terms)
    if spec.coefficient_mode == "user_supplied":
        coeffs = spec.coefficients or {}
        for a in mons:
            c = coeffs.get(a, 0)
            if c:
                terms[a] = fld(c)
    else:
        rng = random.Random(spec.seed)
        for a in mons:
            terms[a] = fld.random_nonzero(rng)
    return type(f)(ring, terms)


# -- graded codimension ----------------------------------------------------------------

def graded_codim(T, k):
    """``dim (T + m^k) / (T + m^(k+1))``: the degree-k piece of the associated graded quotient."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return truncated_colength(T, k + 1) - truncated_colength(T, k)


def predicted_graded_codim(n, d, k):
    """Lattice-count prediction for a generic deformation.

    Up to degree n the Fermat staircase (all exponents <= n-2) survives. In
    degree ``k = n+p+1`` each staircase monomial of degree ``p`` times the
    weighted-Euler relation kills one more basis element.
    """
    if k <= n:
        return count_bounded(k, d, n - 2)
    p = k - n - 1
    return max(0, count_bounded(k, d, n - 2) - count_bounded(p, d, n - 2))


def predicted_tau_min(n, d):
    return sum(predicted_graded_codim(n, d, k) for k in range(d * (n - 2) + 1))


# -- the experiment --------------------------------------------------------------------

@dataclass
class TrialResult:
    trial: int
    seed: object
    tau: object
    mu: object
    error: str = None


@dataclass
class FamilyReport:
    n: int
    d: int
    seed: int
    ring_spec: str
    degree_cap: int
    trials: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    @property
    def taus(self):
        return [t.tau for t in self.trials if isinstance(t.tau, int)]

    @property
    def tau_min(self):
        return min(self.taus) if self.taus else None

    @property
    def mu(self):
        return (self.n - 1) ** self.d

    @property
    def ratio(self):
        return Fraction(self.mu, self.tau_min) if self.tau_min else None

    @property
    def target(self):
        return peak_value(self.d)

    @property
    def bound(self):
        return bound(self.d)

    @property
    def normalized_tau_min(self):
        return Fraction(self.tau_min, self.n ** self.d) if self.tau_min else None

    @property
    def relative_gap(self):
        if self.tau_min is None:
            return None
        return abs(self.normalized_tau_min - self.target) / self.target

    def to_csv(self):
        rows = ["trial,seed,n,d,tau,mu,ratio"]
        for t in self.trials:
            ratio = fraction_str(Fraction(t.mu, t.tau)) if isinstance(t.tau, int) and isinstance(t.mu, int) and t.tau else ""
            rows.append(f"{t.trial},{'' if t.seed is None else t.seed},{self.n},{self.d},{t.tau},{t.mu},{ratio}")
        return "\n".join(rows) + "\n"

    def to_dict(self):
        fs = lambda x: None if x is None else fraction_str(x)
        return {
            "n": self.n, "d": self.d, "seed": self.seed, "ring": self.ring_spec,
            "degree_cap": self.degree_cap,
            "trials": [{"trial": t.trial, "seed": t.seed, "tau": _tag(t.tau), "mu": _tag(t.mu),
                        "error": t.error} for t in self.trials],
            "tau_min": self.tau_min,
            "tau_min_note": "minimum over sampled trials",
            "mu_expected": self.mu,
            "ratio": fs(self.ratio),
            "ratio_decimal_preview": None if self.ratio is None else f"{float(self.ratio):.6f}",
            "normalized_tau_min": fs(self.normalized_tau_min),
            "target": fs(self.target),
            "bound": fs(self.bound),
            "relative_gap": fs(self.relative_gap),
            "flags": list(self.flags),
        }


def _tag(v):
    return v if isinstance(v, int) or v is None else str(v)


def _trial_seed(seed, t):
    return seed * 100003 + t


def _local_or(I, default):
    try:
        return local_colength(I).value
    except Inconclusive:
        return default


def tau_min_experiment(n, d, trials=20, seed=0, char=0, degree_cap=None, ring=None, check_mu=True):
    """Min of tau over ``f_0`` (trial 0) and ``trials`` random deformations."""
    ring = ring or _default_ring(d, char)
    cap = default_degree_cap(n, d) if degree_cap is None else degree_cap
    report = FamilyReport(n, d, seed, ring.spec, cap)
    for t in range(trials + 1):
        s = None if t == 0 else _trial_seed(seed, t)
        try:
            if t == 0:
                f = fermat(ring, n)
            else:
                f = random_deformation(DeformationSpec(n, d, s, degree_cap=cap), ring)
            tau = _local_or(tjurina_ideal(f), UNKNOWN)
            mu = _local_or(jacobian_ideal(f), UNKNOWN) if check_mu else report.mu
            report.trials.append(TrialResult(t, s, tau, mu))
            if mu != report.mu:
                report.flags.append(f"trial {t}: mu={mu}, expected {report.mu}")
        except BudgetExceeded as exc:
            report.trials.append(TrialResult(t, s, UNKNOWN, UNKNOWN, str(exc)))
            report.flags.append(f"trial {t}: budget exhausted")
    return report


def cap_robustness(n, d, seed, char=0, extra=2):
    """tau of one deformation with the default cap and with ``cap + extra``; should agree."""
    ring = _default_ring(d, char)
    cap = default_degree_cap(n, d)
    a = random_deformation(DeformationSpec(n, d, seed, degree_cap=cap), ring)
    b = random_deformation(DeformationSpec(n, d, seed, degree_cap=cap + extra), ring)
    return local_colength(tjurina_ideal(a)).value, local_colength(tjurina_ideal(b)).value

