"""Milnor/Tjurina numbers and the rest of the singularity invariant stack."""
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (NOT_FOUND, UNDEFINED, UNKNOWN, AllTrialsInfinite, BudgetExceeded, Inconclusive,
                     NotInMSquared, WindowNotReached)
from .groebner import LOCAL, Ideal, power_generators
from .hfun import bound, fraction_str
from .local import local_colength
from .polynomial import change_ring, partial_derivative, unit_multiply


def _check_m2(f):
    if not f.in_m_squared():
        raise NotInMSquared(f"{f} has a constant or linear term")


def jacobian_ideal(f):
    """``(df/dx_1, ..., df/dx_n)`` with zero partials dropped."""
    _check_m2(f)
    return Ideal([partial_derivative(f, i) for i in range(f.ring.n)], f.ring)


def tjurina_ideal(f):
    """``(f, df/dx_1, ..., df/dx_n)``."""
    _check_m2(f)
    return Ideal([f] + [partial_derivative(f, i) for i in range(f.ring.n)], f.ring)


def _local_value(I, n_max=None):
    try:
        return local_colength(I, n_max)
    except Inconclusive:
        return None


def milnor(f, n_max=None):
    """Local ``dim R/j(f)``; ``UNKNOWN`` when no certificate is found."""
    res = _local_value(jacobian_ideal(f), n_max)
    return UNKNOWN if res is None else res.value


def tjurina(f, n_max=None):
    res = _local_value(tjurina_ideal(f), n_max)
    return UNKNOWN if res is None else res.value


# -- generalized Milnor number ------------------------------------------------------

@dataclass
class GeneralizedMilnor:
    value: object
    unit: tuple = None
    finite_trials: int = 0
    trials: int = 0
    e_tj: object = None
    warning: str = None


def _unit_samples(ring, trials, rng):
    # identity first, then 1 + x_i (over tiny fields random draws miss these
    # surprisingly often), then uniform random units
    fld = ring.field
    n = ring.n
    fixed = [(fld.one,) + (fld.zero,) * n]
    fixed += [(fld.one,) + tuple(fld.one if j == i else fld.zero for j in range(n)) for i in range(n)]
    for a in fixed[:trials]:
        yield a
    for _ in range(trials - len(fixed)):
        yield (fld.random_nonzero(rng),) + tuple(fld.random_element(rng) for _ in range(n))


def generalized_milnor_details(f, trials=8, seed=0, field_extension=1, cross_check=True, n_max=None,
                               hs_method="auto"):
    """Minimum of ``mu(u*f)`` over sampled linear units ``u = a_0 + sum a_i x_i``.

    The identity unit is always trial 0, followed by ``1 + x_i``. With ``field_extension=k > 1``
    coefficients are drawn from ``F_{p^k}``. Raises
    :class:`AllTrialsInfinite` when no sampled unit gives a finite value.
    """
    _check_m2(f)
    ring = f.ring
    if field_extension != 1:
        ring = ring.extend(field_extension)
        g = change_ring(f, ring)
    else:
        g = f
    rng = random.Random(seed)
    best, best_unit, finite = None, None, 0
    for a in _unit_samples(ring, max(1, trials), rng):
        res = _local_value(jacobian_ideal(unit_multiply(g, a, coerce=False)), n_max)
        if res is None:
            continue
        finite += 1
        if best is None or res.value < best:
            best, best_unit = res.value, tuple(ring.field.format(c) for c in a)
    out = GeneralizedMilnor(best, best_unit, finite, max(1, trials))
    if cross_check:
        try:
            out.e_tj = hilbert_samuel_multiplicity(tjurina_ideal(f), method=hs_method, seed=seed)
        except (Inconclusive, WindowNotReached):
            out.e_tj = UNKNOWN
        if best is not None and out.e_tj is not UNKNOWN and out.e_tj != best:
            out.warning = f"sampled minimum {best} disagrees with e(tj(f)) = {out.e_tj}"
    if best is None:
        raise AllTrialsInfinite(f"none of {out.trials} sampled units gave a finite Milnor number")
    return out


def generalized_milnor(f, trials=8, seed=0, field_extension=1, n_max=None):
    try:
        return generalized_milnor_details(f, trials, seed, field_extension, cross_check=False,
                                          n_max=n_max).value
    except AllTrialsInfinite:
        return UNKNOWN


# -- Hilbert-Samuel multiplicity -----------------------------------------------------

def local_power_colength(I, k, cert, budget=None):
    """``λ(R/I^k)`` locally, using ``m^cert ⊆ I`` so that ``m^(k*cert) ⊆ I^k``.

    Returns ``(colength, reduction_steps)``.
    """
    T = k * cert
    gens = power_generators(list(I.gens), k, T)
    gb = Ideal(gens, I.ring, T).groebner(LOCAL, budget)
    return gb.colength(), gb.steps


def hilbert_samuel_multiplicity(I, window=3, k_max=None, n_max=None, method="difference",
                                budget=None, seed=0):
    """``e(I)`` for an ideal primary to the maximal ideal.

    ``method="difference"`` takes the n-th finite difference of
    ``k -> λ(R/I^k)`` once it is constant on ``window`` consecutive k.
    ``method="reduction"`` uses ``λ(R/(g_1..g_n))`` for random combinations
    ``g_i`` of the generators (a general minimal reduction; never below
    e(I), equal for generic choices; minimum over a few draws).
    ``method="auto"`` tries the difference method within ``budget``
    reduction steps in total (default 20000) and falls back to reduction.
    """
    if method == "reduction":
        return _reduction_multiplicity(I, seed=seed, n_max=n_max)
    if method == "auto":
        try:
            return _difference_multiplicity(I, window, k_max, n_max, budget or 20_000)
        except BudgetExceeded:
            return _reduction_multiplicity(I, seed=seed, n_max=n_max)
    if method != "difference":
        raise ValueError(f"unknown method {method!r}")
    return _difference_multiplicity(I, window, k_max, n_max, budget)


def _difference_multiplicity(I, window, k_max, n_max, budget):
    res = local_colength(I, n_max)
    if res.value == 0:
        return 0
    n = I.ring.n
    cert = max(res.certificate_degree, 1)
    if k_max is None:
        k_max = n + window + 6
    lam = [0]
    diffs = []
    spent = 0
    for k in range(1, k_max + 1):
        if k == 1:
            lam.append(res.value)
        else:
            left = None if budget is None else budget - spent
            if left is not None and left <= 0:
                raise BudgetExceeded(f"multiplicity budget {budget} exhausted")
            c, steps = local_power_colength(I, k, cert, left)
            spent += steps
            lam.append(c)
        if k >= n:
            d = sum((-1) ** (n - i) * math.comb(n, i) * lam[k - n + i] for i in range(n + 1))
            diffs.append(d)
            if len(diffs) >= window and len(set(diffs[-window:])) == 1:
                return diffs[-1]
    raise WindowNotReached(k_max)


def _reduction_multiplicity(I, draws=3, seed=0, n_max=None):
    ring = I.ring
    gens = list(I.gens)
    p = ring.characteristic
    if p and p < 256:
        # tiny residue fields may have no general element at all
        k = math.ceil(math.log(256) / math.log(p))
        while p ** k > 1024:
            k -= 1
        ring = ring.extend(k)
        gens = [change_ring(g, ring) for g in gens]
    if local_colength(Ideal(gens, ring), n_max).value == 0:
        return 0
    fld = ring.field
    rng = random.Random(seed)
    best = None
    for _ in range(draws):
        combos = []
        for _ in range(ring.n):
            g = ring.zero()
            for h in gens:
                g = g + h.scale(fld.random_element(rng, 50) if p == 0 else fld.random_element(rng))
            combos.append(g)
        try:
            v = local_colength(Ideal(combos, ring), n_max).value
        except Inconclusive:
            continue
        best = v if best is None else min(best, v)
    if best is None:
        raise WindowNotReached(0)
    return best


# -- Briancon-Skoda exponent ---------------------------------------------------------

def membership_test(I, n_max=None):
    """A function deciding local membership in ``I``.

    When ``I`` has a local certificate ``m^N ⊆ I`` the test is exact
    membership in ``I + m^N``; otherwise it falls back to global membership
    (sufficient, and the only thing available for non-primary ideals).
    """
    res = _local_value(I, n_max) if I.gens else None
    if res is not None:
        N = res.certificate_degree
        gb = Ideal(I.gens, I.ring, N).groebner(LOCAL)
        return (lambda g: gb.contains(g.truncate(N))), N
    gb = I.groebner()
    return gb.contains, None


def power_membership(f, cap, n_max=None):
    """``[(e, f^e in j(f)) for e = 1..cap]``."""
    test, N = membership_test(jacobian_ideal(f), n_max)
    out = []
    p = f.ring.one()
    for e in range(1, cap + 1):
        p = p * f
        if N is not None:
            p = p.truncate(N)
        out.append((e, bool(test(p))))
    return out


def briancon_skoda_exponent(f, cap=None, n_max=None):
    """Least ``e <= cap`` with ``f^e`` in ``j(f)``; ``NOT_FOUND`` otherwise (default cap: n)."""
    cap = f.ring.n if cap is None else cap
    for e, inside in power_membership(f, cap, n_max):
        if inside:
            return e
    return NOT_FOUND


# -- the record ------------------------------------------------------------------------

def _enc(v):
    if v is None:
        return None
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return fraction_str(v)
    return str(v)


@dataclass
class SingularityRecord:
    f: object
    mu: object
    tau: object
    mu_O: object
    e_bs: object
    ratio: object
    bound: Fraction
    bound_satisfied: object
    characteristic: int
    e_tj: object = None
    certificates: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)

    def to_dict(self):
        ratio = self.ratio
        return {
            "f": str(self.f),
            "ring": self.f.ring.spec,
            "n": self.f.ring.n,
            "characteristic": self.characteristic,
            "mu": _enc(self.mu),
            "tau": _enc(self.tau),
            "mu_O": _enc(self.mu_O),
            "e_tj": _enc(self.e_tj),
            "e_bs": _enc(self.e_bs),
            "ratio": _enc(ratio),
            "ratio_decimal_preview": f"{float(ratio):.6f}" if isinstance(ratio, Fraction) else None,
            "bound": fraction_str(self.bound),
            "bound_satisfied": _enc(self.bound_satisfied),
            "certificates": dict(self.certificates),
            "flags": list(self.flags),
        }


def mu_tau_report(f, trials=8, seed=0, field_extension=1, bs_cap=None, cross_check=True, n_max=None):
    """Assemble every invariant of ``f`` and compare the ratio against ``bound(n)``."""
    _check_m2(f)
    ring = f.ring
    p = ring.characteristic
    flags = []
    certs = {}
    tj_res = _local_value(tjurina_ideal(f), n_max)
    j_res = _local_value(jacobian_ideal(f), n_max)
    tau = UNKNOWN if tj_res is None else tj_res.value
    mu = UNKNOWN if j_res is None else j_res.value
    if tj_res is not None:
        certs["tau"] = tj_res.certificate_degree
    if j_res is not None:
        certs["mu"] = j_res.certificate_degree
    mu_O, e_tj = UNKNOWN, None
    if tau is not UNKNOWN:
        try:
            gm = generalized_milnor_details(f, trials, seed, field_extension, cross_check, n_max)
            mu_O, e_tj = gm.value, gm.e_tj
            if gm.warning:
                flags.append(gm.warning)
        except AllTrialsInfinite as exc:
            flags.append(str(exc))
    else:
        flags.append("tau not certified: f may not be an isolated singularity")
    e_bs = briancon_skoda_exponent(f, bs_cap, n_max)
    flags.append("e_bs cap relies on f lying in the integral closure of j(f), which is not tested")
    top = mu_O if p else mu
    if isinstance(top, int) and isinstance(tau, int) and tau > 0:
        ratio = Fraction(top, tau)
        satisfied = ratio <= bound(ring.n)
    else:
        ratio, satisfied = UNDEFINED, UNDEFINED
    return SingularityRecord(f, mu, tau, mu_O, e_bs, ratio, bound(ring.n), satisfied, p,
                             e_tj, certs, flags)
