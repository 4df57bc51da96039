"""Frobenius powers and the finite-level Hilbert-Kunz / h_s / threshold computations.

All colengths are local. If ``m^N ⊆ I`` (the local certificate) then
``x^a ∈ (m^N)^[q] ⊆ I^[q]`` as soon as ``|a| >= qN + n(q-1)``, so every
level is a single truncated computation with no stabilisation loop.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CharZero
from .groebner import LOCAL, Ideal, power_generators
from .hfun import H, fraction_str
from .local import local_colength


def _q(ring, e):
    p = ring.characteristic
    if p == 0:
        raise CharZero("Frobenius powers need positive characteristic")
    if e < 0:
        raise ValueError("e must be >= 0")
    return p ** e


def frobenius_power(I, e):
    """``I^[q]`` generated by ``g^q`` for the generators ``g`` of ``I``, with ``q = p^e``."""
    q = _q(I.ring, e)
    if e == 0:
        return Ideal(I.explicit_generators(), I.ring)
    fld = I.ring.field
    out = []
    for g in I.explicit_generators():
        # Frobenius is additive: (sum c m)^q = sum c^q m^q
        terms = {tuple(a * q for a in m): fld.pow(c, q) for m, c in g.terms.items()}
        out.append(type(g)(I.ring, terms))
    return Ideal(out, I.ring)


def _frob_truncation(n, q, cert):
    return q * cert + n * (q - 1)


def frobenius_colength(I, e, cert=None):
    """Local ``λ(R/I^[q])``."""
    q = _q(I.ring, e)
    if cert is None:
        cert = local_colength(I).certificate_degree
    T = _frob_truncation(I.ring.n, q, cert)
    F = frobenius_power(I, e)
    if F.is_monomial():
        return F.colength()
    return Ideal(F.gens, I.ring, T).groebner(LOCAL).colength()


@dataclass(frozen=True)
class HKEntry:
    e: int
    q: int
    colength: int
    normalized: Fraction


class HKSequence:
    def __init__(self, entries, n):
        self.entries = list(entries)
        self.n = n

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def normalized(self):
        return [x.normalized for x in self.entries]

    def to_csv(self):
        rows = ["e,q,colength,normalized"]
        rows += [f"{x.e},{x.q},{x.colength},{fraction_str(x.normalized)}" for x in self.entries]
        return "\n".join(rows) + "\n"

    def to_dict(self):
        return {"n": self.n, "entries": [
            {"e": x.e, "q": x.q, "colength": x.colength, "normalized": fraction_str(x.normalized)}
            for x in self.entries]}


def hk_sequence(I, e_max):
    """Exact ``λ(R/I^[p^e])`` and ``λ/q^n`` for ``e = 0..e_max``."""
    _q(I.ring, 0)
    cert = local_colength(I).certificate_degree
    n = I.ring.n
    entries = []
    for e in range(e_max + 1):
        q = I.ring.characteristic ** e
        c = frobenius_colength(I, e, cert)
        entries.append(HKEntry(e, q, c, Fraction(c, q ** n)))
    return HKSequence(entries, n)


# -- h_s levels ------------------------------------------------------------------

@dataclass(frozen=True)
class HsLevel:
    s: Fraction
    e: int
    value: Fraction
    colength: int

    def to_dict(self):
        return {"s": fraction_str(self.s), "e": self.e, "value": fraction_str(self.value),
                "colength": self.colength}


def _is_maximal(I):
    n = I.ring.n
    mons = {next(iter(g.terms)) for g in I.gens if g.is_monomial()}
    return I.is_monomial() and all(tuple(int(i == j) for j in range(n)) in mons for i in range(n))


def _power_plus(I, k, extra, T):
    """Generators of ``I^k + extra`` with everything of degree >= T dropped."""
    if _is_maximal(I):
        return Ideal(extra, I.ring, min(k, T))
    gens = power_generators(list(I.gens), k, T) if k > 0 else [I.ring.one()]
    return Ideal(list(gens) + list(extra), I.ring, T)


def h_s_level(I, J, s, e):
    """``λ(R/(I^⌈sq⌉ + J^[q])) / q^n`` at ``q = p^e``."""
    s = Fraction(s)
    if s <= 0:
        raise ValueError("s must be positive")
    q = _q(I.ring, e)
    n = I.ring.n
    k = math.ceil(s * q)
    cert = local_colength(J).certificate_degree
    T = _frob_truncation(n, q, cert)
    Jq = frobenius_power(J, e)
    ideal = _power_plus(I, k, Jq.gens, T)
    c = ideal.groebner(LOCAL).colength()
    return HsLevel(s, e, Fraction(c, q ** n), c)


def e_s_level(I, J, s, e):
    """``h_s`` level divided by ``H(s, n)``."""
    lvl = h_s_level(I, J, s, e)
    return lvl.value / H(lvl.s, I.ring.n)


# -- thresholds --------------------------------------------------------------------

def _contained(A, B_gb, T=None):
    for g in A:
        if T is not None:
            g = g.truncate(T)
        if not B_gb.contains(g):
            return False
    return True


def threshold_levels(I, J, e, k_max=None):
    """``(nu, mu)`` at level ``q = p^e``.

    ``nu = sup{k >= 0 : I^k ⊄ J^[q]}`` (``I^0 = R``) and
    ``mu = inf{k >= 1 : J^[q] ⊄ I^k}``; containments are local.
    """
    q = _q(I.ring, e)
    n = I.ring.n
    certJ = local_colength(J).certificate_degree
    certI = local_colength(I).certificate_degree
    T = _frob_truncation(n, q, certJ)
    Jq = frobenius_power(J, e)
    Jq_gb = Ideal(Jq.gens, I.ring, T).groebner(LOCAL)
    if k_max is None:
        k_max = (n + 1) * q * max(certJ, 1) + n + 1
    nu = None
    for k in range(0, k_max + 1):
        gens = [I.ring.one()] if k == 0 else power_generators(list(I.gens), k, T)
        if _contained(gens, Jq_gb, T):
            nu = k - 1
            break
    if nu is None:
        raise ValueError(f"nu not reached by k={k_max}")
    mu = None
    for k in range(1, k_max + 1):
        Tk = k * max(certI, 1)
        Ik = Ideal(power_generators(list(I.gens), k, Tk), I.ring, Tk).groebner(LOCAL)
        if not _contained(Jq.gens, Ik, Tk):
            mu = k
            break
    if mu is None:
        raise ValueError(f"mu not reached by k={k_max}")
    return nu, mu
