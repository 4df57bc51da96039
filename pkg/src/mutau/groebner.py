"""Buchberger's algorithm, normal forms, colengths and ideal operations.

The engine works on an internal representation: each monomial is a packed
integer of exponent fields (with a guard bit per field, so divisibility is a
single subtraction) together with an integer order key. Monomial orders are
weight functionals into disjoint bit fields, which makes keys additive under
multiplication: ``key(m*t) == key(m) + key(t)``.

An :class:`Ideal` may carry ``mpower=N``, meaning the ideal additionally
contains every monomial of degree ``N``. Those generators are handled
implicitly: terms of degree ``>= N`` vanish during reduction, and the only
S-pairs they contribute are the multiples ``m * g`` whose leading term just
reaches degree ``N``.
"""
import heapq
import os
from itertools import combinations_with_replacement

from .errors import INFINITE, BudgetExceeded, ExactDivisionFailed, RingMismatch
from .polynomial import Polynomial, RingContext

KEY_BITS = 32
EXP_BITS = 20
_EXP_MASK = (1 << EXP_BITS) - 1
_DEG_MOD = (1 << EXP_BITS) - 1

DEFAULT_BUDGET = 10 ** 7


_budget_override = None


def default_budget():
    """Step budget: an explicit override, else ``$MUTAU_GB_BUDGET``, else 10^7."""
    if _budget_override is not None:
        return _budget_override
    return int(os.environ.get("MUTAU_GB_BUDGET", DEFAULT_BUDGET))


def set_default_budget(steps):
    global _budget_override
    if steps is not None and steps <= 0:
        raise ValueError("budget must be positive")
    _budget_override = steps


class MonomialOrder:
    """``DegRevLex``, a block elimination order ``BlockElim(front) > DegRevLex(back)``,
    or the local order ``NegDegRevLex`` (lowest degree leads).

    The local order is only used for ideals that contain a power of the
    maximal ideal: then only finitely many monomials survive and reduction
    terminates.
    """

    __slots__ = ("kind", "front")

    def __init__(self, kind="degrevlex", front=()):
        if kind not in ("degrevlex", "block", "negdegrevlex"):
            raise ValueError(f"unknown order kind {kind!r}")
        if kind == "block" and not front:
            raise ValueError("block order needs a nonempty front block")
        self.kind = kind
        self.front = tuple(sorted(front))

    @classmethod
    def block(cls, front):
        return cls("block", front)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.front) == (other.kind, other.front)

    def __hash__(self):
        return hash((self.kind, self.front))

    def __repr__(self):
        if self.kind == "block":
            return f"BlockElim(front={self.front})"
        return {"degrevlex": "DegRevLex", "negdegrevlex": "NegDegRevLex"}[self.kind]

    def weights(self, n):
        if self.kind == "degrevlex":
            return _grevlex_weights(list(range(n)), n)
        if self.kind == "negdegrevlex":
            top = 1 << (KEY_BITS * (n - 1) + 1)
            return tuple(w - top for w in _grevlex_weights(list(range(n)), n))
        front = [i for i in self.front if i < n]
        back = [i for i in range(n) if i not in front]
        if not back:
            return _grevlex_weights(front, n)
        wf = _grevlex_weights(front, n)
        wb = _grevlex_weights(back, n)
        shift = KEY_BITS * len(back)
        return tuple((a << shift) + b for a, b in zip(wf, wb))

    def key(self, m):
        return sum(e * w for e, w in zip(m, self.weights(len(m))))


def _grevlex_weights(block, n):
    """Weights realising degrevlex on ``block``: fields [deg, s_{k-1}, ..., s_1] of partial sums."""
    k = len(block)
    w = [0] * n
    for pos, var in enumerate(block, start=1):
        val = 1 << (KEY_BITS * (k - 1))
        for j in range(pos, k):
            val += 1 << (KEY_BITS * (j - 1))
        w[var] = val
    return tuple(w)


DEGREVLEX = MonomialOrder()
LOCAL = MonomialOrder("negdegrevlex")


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


class _Elt:
    __slots__ = ("lk", "lE", "lm", "tail", "low")

    def __init__(self, lk, lE, lm, tail):
        self.lk = lk
        self.lE = lE
        self.lm = lm
        self.tail = tail
        # lowest tail degree; decides whether truncation pairs can be nonzero
        self.low = min((sum(_unpack_cached(t[1], len(lm))) for t in tail), default=None)


def _unpack_cached(E, n):
    return tuple((E >> (EXP_BITS * i)) & _EXP_MASK for i in range(n))


class _Engine:
    def __init__(self, ring, order, mpower=None, budget=None):
        self.ring = ring
        self.n = ring.n
        self.order = order
        self.weights = order.weights(ring.n)
        self.field = ring.field
        self.mpower = mpower
        self.guard = sum(1 << (EXP_BITS * i + EXP_BITS - 1) for i in range(ring.n))
        self.budget = default_budget() if budget is None else budget
        self.steps = 0

    # -- conversions ------------------------------------------------------
    def pack(self, m):
        E = 0
        for i, e in enumerate(m):
            E |= e << (EXP_BITS * i)
        return E

    def unpack(self, E):
        return tuple((E >> (EXP_BITS * i)) & _EXP_MASK for i in range(self.n))

    def keyof(self, m):
        return sum(e * w for e, w in zip(m, self.weights))

    def to_terms(self, f):
        """Polynomial -> (acc, kE) dictionaries keyed by order key."""
        acc, kE = {}, {}
        N = self.mpower
        for m, c in f.terms.items():
            if N is not None and sum(m) >= N:
                continue
            k = self.keyof(m)
            acc[k] = c
            kE[k] = self.pack(m)
        return acc, kE

    def to_poly(self, terms):
        return Polynomial._raw(self.ring, {self.unpack(E): c for _, E, c in terms})

    def elt_to_poly(self, g):
        out = {g.lm: self.field.one}
        for _, E, c in g.tail:
            out[self.unpack(E)] = c
        return Polynomial._raw(self.ring, out)

    def make_elt(self, terms):
        """Monic element from a descending term list."""
        lk, lE, lc = terms[0]
        if lc == self.field.one:
            tail = terms[1:]
        else:
            inv = self.field.inv(lc)
            mul = self.field.mul
            tail = [(k, E, mul(inv, c)) for k, E, c in terms[1:]]
        return _Elt(lk, lE, self.unpack(lE), tail)

    # -- reduction --------------------------------------------------------
    def reduce(self, acc, kE, reducers):
        """Full reduction of ``acc`` (key -> coeff) by ``reducers``; returns descending term list."""
        heap = [-k for k in acc]
        heapq.heapify(heap)
        out = []
        GU = self.guard
        N = self.mpower
        field = self.field
        submul, neg, mul = field.submul, field.neg, field.mul
        pop, push = heapq.heappop, heapq.heappush
        remaining = self.budget - self.steps
        steps = 0
        while heap:
            k = -pop(heap)
            c = acc.pop(k, None)
            if c is None:
                continue
            E = kE[k]
            for g in reducers:
                if ((E | GU) - g.lE) & GU == GU:
                    break
            else:
                out.append((k, E, c))
                continue
            steps += 1
            if steps > remaining:
                self.steps += steps
                raise BudgetExceeded(f"Groebner step budget {self.budget} exhausted")
            qk = k - g.lk
            qE = E - g.lE
            for tk, tE, tc in g.tail:
                nE = tE + qE
                if N is not None and nE % _DEG_MOD >= N:
                    continue
                nk = tk + qk
                v = acc.get(nk)
                if v is None:
                    acc[nk] = neg(mul(c, tc))
                    kE[nk] = nE
                    push(heap, -nk)
                else:
                    v = submul(v, c, tc)
                    if v == 0:
                        del acc[nk]
                    else:
                        acc[nk] = v
        self.steps += steps
        return out

    def s_poly(self, gi, gj, lcm_m):
        """Tails of the S-polynomial of two monic elements."""
        lk = self.keyof(lcm_m)
        lE = self.pack(lcm_m)
        acc, kE = {}, {}
        N = self.mpower
        field = self.field
        for g, sign in ((gi, 1), (gj, -1)):
            qk, qE = lk - g.lk, lE - g.lE
            for tk, tE, tc in g.tail:
                nE = tE + qE
                if N is not None and nE % _DEG_MOD >= N:
                    continue
                nk = tk + qk
                v = acc.get(nk)
                c = tc if sign > 0 else field.neg(tc)
                if v is None:
                    acc[nk] = c
                    kE[nk] = nE
                else:
                    v = field.add(v, c)
                    if v == 0:
                        del acc[nk]
                    else:
                        acc[nk] = v
        return acc, kE

    def shifted_tail(self, g, m):
        """``m * tail(g)`` truncated below degree ``mpower``."""
        qk, qE = self.keyof(m), self.pack(m)
        N = self.mpower
        acc, kE = {}, {}
        for tk, tE, tc in g.tail:
            nE = tE + qE
            if nE % _DEG_MOD >= N:
                continue
            acc[tk + qk] = tc
            kE[tk + qk] = nE
        return acc, kE

    # -- Buchberger ---------------------------------------------------------
    def buchberger(self, polys):
        basis = []
        active = []
        live = {}
        heap = []

        def add(terms):
            g = self.make_elt(terms)
            idx = len(basis)
            basis.append(g)
            self._update(basis, active, live, heap, idx)
            if self.mpower is not None and g.low is not None and g.low < sum(g.lm):
                for m in monomials_of_degree(self.n, self.mpower - sum(g.lm)):
                    L = tuple(a + b for a, b in zip(m, g.lm))
                    heapq.heappush(heap, (self.keyof(L), 1, idx, m))

        inputs = []
        for f in polys:
            acc, kE = self.to_terms(f)
            if acc:
                inputs.append((acc, kE))
        inputs.sort(key=lambda t: max(t[0]))
        for acc, kE in inputs:
            h = self.reduce(acc, kE, [basis[i] for i in active])
            if h:
                add(h)
                if not sum(basis[-1].lm):
                    return [basis[-1]]

        while heap:
            _, kind, i, j = heapq.heappop(heap)
            if kind == 0:
                lcm_m = live.pop((i, j), None)
                if lcm_m is None:
                    continue
                acc, kE = self.s_poly(basis[i], basis[j], lcm_m)
            else:
                acc, kE = self.shifted_tail(basis[i], j)
            if not acc:
                continue
            h = self.reduce(acc, kE, [basis[x] for x in active])
            if h:
                add(h)
                if not sum(basis[-1].lm):
                    return [basis[-1]]

        final = [basis[i] for i in active]
        final.sort(key=lambda g: g.lk)
        reduced = []
        for idx, g in enumerate(final):
            others = final[:idx] + final[idx + 1:]
            acc = {k: c for k, _, c in g.tail}
            kE = {k: E for k, E, _ in g.tail}
            tail = self.reduce(acc, kE, others)
            reduced.append(_Elt(g.lk, g.lE, g.lm, tail))
        return reduced

    def _update(self, basis, active, live, heap, h):
        """Gebauer-Moeller installation of the new element ``h``."""
        mh = basis[h].lm
        C = list(active)
        D = []
        while C:
            g = C.pop(0)
            mg = basis[g].lm
            L = _lcm(mh, mg)
            if _coprime(mh, mg):
                D.append(g)
                continue
            if any(_divides(_lcm(mh, basis[x].lm), L) for x in C):
                continue
            if any(_divides(_lcm(mh, basis[x].lm), L) for x in D):
                continue
            D.append(g)
        new_pairs = [g for g in D if not _coprime(mh, basis[g].lm)]
        for (i, j), L in list(live.items()):
            if _divides(mh, L) and _lcm(basis[i].lm, mh) != L and _lcm(basis[j].lm, mh) != L:
                del live[(i, j)]
        for g in new_pairs:
            L = _lcm(basis[g].lm, mh)
            live[(g, h)] = L
            heapq.heappush(heap, (self.keyof(L), 0, g, h))
        active[:] = [g for g in active if not _divides(mh, basis[g].lm)] + [h]


def monomials_of_degree(n, d):
    """All exponent tuples of length ``n`` and total degree ``d`` (deterministic order)."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(n), d):
        m = [0] * n
        for v in combo:
            m[v] += 1
        out.append(tuple(m))
    return out


def power_generators(gens, k, T=None):
    """All products of ``k`` generators (with repetition), truncated below degree ``T``."""
    level = {(): gens[0].ring.one()}
    for _ in range(k):
        nxt = {}
        for combo, p in level.items():
            start = combo[-1] if combo else 0
            for i in range(start, len(gens)):
                nxt[combo + (i,)] = p * gens[i] if T is None else (p * gens[i]).truncate(T)
        level = nxt
    seen, out = set(), []
    for p in level.values():
        if p and p not in seen:
            seen.add(p)
            out.append(p)
    return out


class GroebnerBasis:
    """Reduced Groebner basis of an :class:`Ideal` for one monomial order."""

    def __init__(self, ideal, order, elts, engine):
        self.ideal = ideal
        self.order = order
        self.ring = ideal.ring
        self.mpower = ideal.mpower
        self._elts = elts
        self._engine = engine
        self.leading_monomials = tuple(g.lm for g in elts)
        self.steps = engine.steps

    @property
    def polys(self):
        """Basis polynomials (monic, ascending leading term), incl. the implicit degree-N monomials."""
        out = [self._engine.elt_to_poly(g) for g in self._elts]
        if self.mpower is not None and not self.is_unit():
            lms = self.leading_monomials
            for m in monomials_of_degree(self.ring.n, self.mpower):
                if not any(_divides(l, m) for l in lms):
                    out.append(Polynomial._raw(self.ring, {m: self.ring.field.one}))
            out.sort(key=lambda p: self.order.key(next(iter(_leading(p, self.order)))))
        return out

    def __len__(self):
        return len(self.polys)

    def is_unit(self):
        return any(not any(m) for m in self.leading_monomials)

    def is_zero_ideal(self):
        return not self._elts and self.mpower is None

    def normal_form(self, f):
        if f.ring != self.ring:
            raise RingMismatch(f"{f.ring.spec} vs {self.ring.spec}")
        eng = self._engine
        acc, kE = eng.to_terms(f)
        return eng.to_poly(eng.reduce(acc, kE, self._elts))

    def contains(self, f):
        return self.normal_form(f).is_zero()

    def standard_counts(self):
        """Number of standard monomials per total degree, or ``INFINITE``."""
        return standard_counts(self.leading_monomials, self.ring.n, self.mpower)

    def colength(self):
        counts = self.standard_counts()
        return counts if counts is INFINITE else sum(counts)

    def __repr__(self):
        return f"GroebnerBasis({[str(p) for p in self.polys]}, order={self.order!r})"


def _leading(p, order):
    k = max(p.terms, key=order.key)
    return {k: p.terms[k]}


def standard_counts(lms, n, mpower=None):
    """Counts of monomials outside the monomial ideal ``(lms)``, bucketed by degree.

    With ``mpower`` the ideal also contains all monomials of degree ``mpower``.
    Returns ``INFINITE`` when the quotient has infinite dimension.
    """
    lms = _minimalize([tuple(m) for m in lms])
    if any(not any(m) for m in lms):
        return []
    if mpower is None:
        for v in range(n):
            if not any(m[v] and not any(m[u] for u in range(n) if u != v) for m in lms):
                return INFINITE
    cap = None if mpower is None else mpower - 1
    memo = {}
    return _count_rec(tuple(sorted(lms)), n, cap, memo)


def _minimalize(lms):
    lms = sorted(set(lms), key=lambda m: (sum(m), m))
    out = []
    for m in lms:
        if not any(_divides(o, m) for o in out):
            out.append(m)
    return out


def _count_rec(lms, r, cap, memo):
    key = (lms, r, cap)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if any(not any(m) for m in lms):
        memo[key] = []
        return []
    if r == 0:
        return [1]
    bound = None
    for m in lms:
        if not any(m[1:]):
            bound = m[0] if bound is None else min(bound, m[0])
    if cap is not None:
        bound = cap + 1 if bound is None else min(bound, cap + 1)
    counts = []
    for i in range(bound):
        sub = tuple(sorted(_minimalize([m[1:] for m in lms if m[0] <= i])))
        inner = _count_rec(sub, r - 1, None if cap is None else cap - i, memo)
        if len(counts) < i + len(inner):
            counts.extend([0] * (i + len(inner) - len(counts)))
        for d, c in enumerate(inner):
            counts[i + d] += c
    memo[key] = counts
    return counts


class Ideal:
    """An ideal of ``K[x]`` given by generators, with Groebner bases cached per order.

    ``mpower=N`` adds every monomial of degree ``N`` to the ideal without
    listing them; generators are stored truncated below degree ``N``.
    """

    def __init__(self, gens, ring=None, mpower=None):
        gens = tuple(gens)
        if ring is None:
            if not gens:
                raise ValueError("ring required for an ideal without generators")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatch(f"{g.ring.spec} vs {ring.spec}")
        if mpower is not None:
            mpower = int(mpower)
            if mpower < 0:
                raise ValueError("mpower must be >= 0")
            gens = tuple(g.truncate(mpower) for g in gens)
        self.gens = tuple(g for g in gens if not g.is_zero())
        self.ring = ring
        self.mpower = mpower
        self._cache = {}

    @classmethod
    def maximal(cls, ring):
        return cls(ring.gens(), ring)

    def __repr__(self):
        extra = f" + m^{self.mpower}" if self.mpower is not None else ""
        return f"Ideal({[str(g) for g in self.gens]}{extra})"

    def explicit_generators(self):
        gens = list(self.gens)
        if self.mpower is not None:
            gens += [self.ring.monomial(m) for m in monomials_of_degree(self.ring.n, self.mpower)]
        return gens

    def is_monomial(self):
        return all(g.is_monomial() for g in self.gens)

    def plus_max_power(self, N):
        N = N if self.mpower is None else min(N, self.mpower)
        return Ideal(self.gens, self.ring, N)

    def groebner(self, order=DEGREVLEX, budget=None):
        hit = self._cache.get(order)
        if hit is not None:
            return hit
        if order == LOCAL and self.mpower is None:
            raise ValueError("the local order needs an ideal containing a power of m")
        if self.mpower is not None and order.kind == "block":
            return Ideal(self.explicit_generators(), self.ring).groebner(order, budget)
        engine = _Engine(self.ring, order, self.mpower, budget)
        if self.is_monomial():
            ms = _minimalize([next(iter(g.terms)) for g in self.gens])
            if self.mpower is not None and self.mpower == 0:
                ms = [(0,) * self.ring.n]
            elts = [_Elt(engine.keyof(m), engine.pack(m), m, []) for m in ms]
            if any(not any(m) for m in ms):
                elts = [e for e in elts if not any(e.lm)]
            elts.sort(key=lambda g: g.lk)
        elif self.mpower == 0:
            m = (0,) * self.ring.n
            elts = [_Elt(engine.keyof(m), engine.pack(m), m, [])]
        else:
            elts = engine.buchberger(self.gens)
        gb = GroebnerBasis(self, order, elts, engine)
        self._cache[order] = gb
        return gb

    def normal_form(self, f, order=DEGREVLEX):
        return self.groebner(order).normal_form(f)

    def contains(self, f):
        return self.groebner().contains(f)

    def contains_ideal(self, other):
        gb = self.groebner()
        return all(gb.contains(g) for g in other.explicit_generators())

    def colength(self, order=DEGREVLEX):
        return self.groebner(order).colength()

    def is_unit(self):
        return self.groebner().is_unit()

    # -- ideal operations -------------------------------------------------
    def __add__(self, other):
        _same_ring(self, other)
        mp = [m for m in (self.mpower, other.mpower) if m is not None]
        return Ideal(self.gens + other.gens, self.ring, min(mp) if mp else None)

    def __mul__(self, other):
        _same_ring(self, other)
        gens = _dedupe(a * b for a in self.explicit_generators() for b in other.explicit_generators())
        return Ideal(gens, self.ring)

    def power(self, k):
        if k < 1:
            raise ValueError("power must be >= 1")
        base = self.explicit_generators()
        gens = []
        for combo in combinations_with_replacement(range(len(base)), k):
            p = self.ring.one()
            for i in combo:
                p = p * base[i]
            gens.append(p)
        return Ideal(_dedupe(gens), self.ring)

    def intersection(self, other):
        return intersection(self, other)

    def colon(self, f):
        return colon_poly(self, f)


def _dedupe(polys):
    seen, out = set(), []
    for p in polys:
        if p.is_zero() or p in seen:
            continue
        seen.add(p)
        out.append(p)
    return out


def _same_ring(a, b):
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring.spec} vs {b.ring.spec}")


def _fresh_name(ring):
    name = "t"
    while name in ring.vars:
        name = "_" + name
    return name


def intersection(I, J, budget=None):
    """``I ∩ J`` by eliminating ``t`` from ``t*I + (1-t)*J``."""
    _same_ring(I, J)
    ring = I.ring
    big = RingContext((_fresh_name(ring),) + ring.vars, ring.field)
    lift = lambda p: Polynomial._raw(big, {(0,) + m: c for m, c in p.terms.items()})
    t = big.gens()[0]
    one_minus_t = big.one() - t
    gens = [t * lift(g) for g in I.explicit_generators()]
    gens += [one_minus_t * lift(g) for g in J.explicit_generators()]
    if not gens:
        return Ideal((), ring)
    gb = Ideal(gens, big).groebner(MonomialOrder.block((0,)), budget)
    keep = []
    for p in gb.polys:
        if all(m[0] == 0 for m in p.terms):
            keep.append(Polynomial._raw(ring, {m[1:]: c for m, c in p.terms.items()}))
    return Ideal(keep, ring)


def exact_divide(g, f):
    """Return ``q`` with ``g == q * f``; raises :class:`ExactDivisionFailed` otherwise."""
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    field = g.ring.field
    key = DEGREVLEX.key
    lm_f = max(f.terms, key=key)
    inv = field.inv(f.terms[lm_f])
    rem = g
    quot = {}
    while rem:
        lm = max(rem.terms, key=key)
        if not _divides(lm_f, lm):
            raise ExactDivisionFailed(f"{g} is not divisible by {f}")
        q = tuple(a - b for a, b in zip(lm, lm_f))
        c = field.mul(rem.terms[lm], inv)
        quot[q] = c
        rem = rem - f.mul_monomial(q, c)
    return Polynomial(g.ring, quot)


def colon_poly(I, f, budget=None):
    """``(I : f)``.

    Without ``mpower`` this is ``(I ∩ (f)) / f``. With ``mpower=N`` the
    quotient ``R/I`` is finite dimensional and the colon is the preimage of
    the kernel of multiplication by ``f`` there; plain linear algebra, and
    much cheaper than eliminating with every degree-N monomial listed.
    """
    if f.ring != I.ring:
        raise RingMismatch(f"{f.ring.spec} vs {I.ring.spec}")
    if f.is_zero():
        return Ideal((I.ring.one(),), I.ring, I.mpower)
    if I.mpower is not None:
        return _artinian_colon(I, f, budget)
    meet = intersection(I, Ideal((f,), I.ring), budget)
    return Ideal([exact_divide(g, f) for g in meet.gens], I.ring)


def _standard_monomials(gb):
    N = gb.ideal.mpower
    lms = gb.leading_monomials
    out = []
    for d in range(N):
        for m in monomials_of_degree(gb.ring.n, d):
            if not any(_divides(l, m) for l in lms):
                out.append(m)
    return out


def _nullspace(rows, ncols, field):
    """Basis of ``{v : sum_j rows[i][j] v_j = 0 for all i}`` by row reduction."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                k = rows[i][c]
                rows[i] = [field.submul(x, k, y) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(rows[i][fc])
        basis.append(v)
    return basis


def _artinian_colon(I, f, budget=None):
    ring = I.ring
    gb = I.groebner(LOCAL, budget)
    if gb.is_unit():
        return Ideal((ring.one(),), ring, I.mpower)
    basis = _standard_monomials(gb)
    index = {m: i for i, m in enumerate(basis)}
    # column j holds the normal form of f * basis[j]
    rows = [[ring.field.zero] * len(basis) for _ in basis]
    for j, m in enumerate(basis):
        for mm, c in gb.normal_form(f.mul_monomial(m)).terms.items():
            rows[index[mm]][j] = c
    kernel = _nullspace(rows, len(basis), ring.field)
    polys = [Polynomial(ring, {basis[j]: c for j, c in enumerate(v) if c != 0}) for v in kernel]
    return Ideal(polys + list(I.gens), ring, I.mpower)


# -- functional surface ---------------------------------------------------------

def groebner_basis(I, order=DEGREVLEX, budget=None):
    return I.groebner(order, budget)


def normal_form(f, I, order=DEGREVLEX):
    return I.normal_form(f, order)


def colength(I, order=DEGREVLEX):
    """Number of standard monomials of ``I``, or ``INFINITE``."""
    return I.colength(order)


def ideal_ops(op, I, other=None, k=None):
    """Dispatch ``sum|product|power|intersection|colon_poly``."""
    if op == "sum":
        return I + other
    if op == "product":
        return I * other
    if op == "power":
        return I.power(k if k is not None else other)
    if op == "intersection":
        return intersection(I, other)
    if op == "colon_poly":
        return colon_poly(I, other)
    raise ValueError(f"unknown ideal operation {op!r}")
