"""Colength of an ideal in the local ring at the origin.

We compute ``c_N = dim R/(I + m^N)`` for growing ``N``. The sequence is
non-decreasing and stabilises exactly when ``m^N`` is contained in
``I + m^{N+1}``, i.e. (Nakayama) when ``m^N`` lies in the localisation of
``I``. At that point ``c_N`` is the local colength and ``N`` certifies it.
"""
from dataclasses import dataclass, field

from .errors import UNKNOWN, Inconclusive
from .groebner import LOCAL, monomials_of_degree, standard_counts


@dataclass(frozen=True)
class LocalColengthResult:
    value: int
    certificate_degree: int
    truncation_history: tuple = field(default=())

    def to_dict(self):
        return {
            "value": self.value,
            "certificate_degree": self.certificate_degree,
            "truncation_history": [list(p) for p in self.truncation_history],
        }


def default_n_max(I):
    maxdeg = max((g.degree() for g in I.gens), default=1)
    return 4 * maxdeg + 8


def truncated_colength(I, N, budget=None, order=LOCAL):
    """``colength(I + m^N)``.

    The default order is the negative-degree one: with ``m^N`` inside the
    ideal only finitely many monomials matter, and leading with the lowest
    degree keeps rational coefficients small. ``order=DEGREVLEX`` gives the
    same number (the tests compare the two).
    """
    return I.plus_max_power(N).groebner(order, budget).colength()


def local_colength(I, n_max=None, budget=None, order=LOCAL):
    """Local colength of ``I`` at the origin with a stabilisation certificate.

    Raises :class:`Inconclusive` when no certificate appears up to ``n_max``,
    which happens when ``I`` is not primary to the maximal ideal (or when the
    bound is simply too small).
    """
    if n_max is None:
        n_max = default_n_max(I)
    if I.is_monomial() and I.mpower is None:
        return _monomial_local(I, n_max)
    history = []
    prev = None
    for N in range(0, n_max + 2):
        c = truncated_colength(I, N, budget, order)
        history.append((N, c))
        if prev is not None and c == prev:
            return LocalColengthResult(prev, N - 1, tuple(history))
        prev = c
    raise Inconclusive(n_max, tuple(history))


def _monomial_local(I, n_max):
    # local and global colength agree for monomial ideals; the truncation
    # history is read off from standard monomial counts by degree.
    lms = [next(iter(g.terms)) for g in I.gens]
    n = I.ring.n
    counts = standard_counts(lms, n, n_max + 2)
    history = []
    total = 0
    for N in range(0, n_max + 2):
        total += counts[N - 1] if 0 <= N - 1 < len(counts) else 0
        history.append((N, total))
        if N >= 1 and history[-1][1] == history[-2][1]:
            return LocalColengthResult(total, N - 1, tuple(history))
    raise Inconclusive(n_max, tuple(history))


def is_m_primary_local(I, n_max=None):
    """The certified local colength, or ``UNKNOWN`` when no certificate shows up."""
    try:
        return local_colength(I, n_max).value
    except Inconclusive:
        return UNKNOWN


def verify_certificate(I, N):
    """Check directly that every degree-``N`` monomial lies in ``I + m^{N+1}``."""
    gb = I.plus_max_power(N + 1).groebner(LOCAL)
    return all(gb.contains(I.ring.monomial(m)) for m in monomials_of_degree(I.ring.n, N))
