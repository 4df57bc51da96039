"""Coefficient fields: the rationals, prime fields and small extensions of them.

Elements are plain Python values so the hot loops in the Groebner engine can
work on them directly:

* ``Rationals``      -> ``gmpy2.mpq``
* ``PrimeField(p)``  -> ``int`` in ``[0, p)``
* ``ExtensionField`` -> ``int`` in ``[0, p**k)`` holding base-``p`` digits of a
  residue class in ``F_p[t]/(m(t))``.

In every field the zero element compares equal to ``0``.
"""
from fractions import Fraction
from itertools import product

import gmpy2

from .errors import NonPrimeCharacteristic

_mpq = gmpy2.mpq


def is_prime(n):
    return n >= 2 and bool(gmpy2.is_prime(n))


class Field:
    characteristic = 0
    zero = 0
    one = 1

    def __eq__(self, other):
        return type(self) is type(other) and self._ident() == other._ident()

    def __hash__(self):
        return hash((type(self).__name__, self._ident()))

    def __repr__(self):
        return f"{type(self).__name__}{self._ident()}"

    def _ident(self):
        return ()


class Rationals(Field):
    characteristic = 0
    zero = _mpq(0)
    one = _mpq(1)

    def __call__(self, value):
        if isinstance(value, Fraction):
            return _mpq(value.numerator, value.denominator)
        return _mpq(value)

    def from_fraction(self, num, den):
        return _mpq(num, den)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def submul(a, c, b):
        return a - c * b

    def pow(self, a, k):
        return a ** k

    def random_element(self, rng, bound=1000):
        return _mpq(rng.randint(-bound, bound))

    def random_nonzero(self, rng, bound=1000):
        while True:
            v = rng.randint(-bound, bound)
            if v:
                return _mpq(v)

    def format(self, c):
        return str(c)

    def to_fraction(self, c):
        return Fraction(int(c.numerator), int(c.denominator))

    @property
    def spec(self):
        return "char=0"


class PrimeField(Field):
    def __init__(self, p):
        p = int(p)
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self.zero = 0
        self.one = 1 % p

    def _ident(self):
        return (self.p,)

    def __call__(self, value):
        if isinstance(value, Fraction):
            return self.from_fraction(value.numerator, value.denominator)
        return int(value) % self.p

    def from_fraction(self, num, den):
        den %= self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator vanishes modulo {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def submul(self, a, c, b):
        return (a - c * b) % self.p

    def pow(self, a, k):
        return pow(a, k, self.p)

    def random_element(self, rng, bound=None):
        return rng.randrange(self.p)

    def random_nonzero(self, rng, bound=None):
        return rng.randrange(1, self.p)

    def format(self, c):
        return str(c)

    @property
    def spec(self):
        return f"char={self.p}"


def _poly_mulmod(a, b, mod, p):
    """Multiply digit lists ``a*b`` modulo the monic ``mod`` over F_p."""
    k = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for top in range(len(out) - 1, k - 1, -1):
        c = out[top]
        if c:
            for i in range(k + 1):
                out[top - k + i] = (out[top - k + i] - c * mod[i]) % p
    return (out + [0] * k)[:k]


def _poly_rem_is_zero(num, den, p):
    num = list(num)
    dl = len(den) - 1
    inv = pow(den[-1], -1, p)
    for top in range(len(num) - 1, dl - 1, -1):
        c = num[top] * inv % p
        if c:
            for i in range(dl + 1):
                num[top - dl + i] = (num[top - dl + i] - c * den[i]) % p
    return not any(num[:dl])


def irreducible_modulus(p, k):
    """Lexicographically first monic irreducible of degree ``k`` over F_p (low-to-high digits)."""
    for tail in product(range(p), repeat=k):
        cand = list(tail) + [1]
        if cand[0] == 0:
            continue
        ok = True
        for deg in range(1, k // 2 + 1):
            for low in product(range(p), repeat=deg):
                if not _poly_rem_is_zero(cand, list(low) + [1], p):
                    continue
                ok = False
                break
            if not ok:
                break
        if ok:
            return tuple(cand)
    raise ValueError(f"no irreducible polynomial of degree {k} over F_{p}")


class ExtensionField(Field):
    """``F_{p^k}`` with table arithmetic; intended for small ``p**k`` (at most 1024)."""

    max_order = 1024

    def __init__(self, p, k):
        base = PrimeField(p)
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        q = p ** k
        if q > self.max_order:
            raise ValueError(f"F_{p}^{k} has {q} elements; at most {self.max_order} supported")
        self.p, self.k, self.order = p, k, q
        self.characteristic = p
        self.base = base
        self.modulus = irreducible_modulus(p, k) if k > 1 else (0, 1)
        digits = [self._digits(a) for a in range(q)]
        self._add = [[self._undigits([(x + y) % p for x, y in zip(digits[a], digits[b])])
                      for b in range(q)] for a in range(q)]
        self._neg = [self._undigits([-x % p for x in digits[a]]) for a in range(q)]
        self._build_log_tables(digits)

    def _ident(self):
        return (self.p, self.k)

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _undigits(self, ds):
        v = 0
        for d in reversed(ds):
            v = v * self.p + d
        return v

    def _slow_mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        return self._undigits(_poly_mulmod(self._digits(a), self._digits(b), list(self.modulus), self.p))

    def _build_log_tables(self, digits):
        q = self.order
        for g in range(1, q):
            exp, x = [], 1
            for _ in range(q - 1):
                exp.append(x)
                x = self._slow_mul(x, g)
            if len(set(exp)) == q - 1:
                break
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self._exp = exp + exp
        self._log = log
        self.generator = g

    def __call__(self, value):
        if isinstance(value, Fraction):
            return self.from_fraction(value.numerator, value.denominator)
        return int(value) % self.p

    def from_fraction(self, num, den):
        return self.base.from_fraction(num, den)

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def submul(self, a, c, b):
        if c == 0 or b == 0:
            return a
        return self._add[a][self._neg[self._exp[self._log[c] + self._log[b]]]]

    def pow(self, a, k):
        if k == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def random_element(self, rng, bound=None):
        return rng.randrange(self.order)

    def random_nonzero(self, rng, bound=None):
        return rng.randrange(1, self.order)

    def format(self, c):
        if c < self.p:
            return str(c)
        terms = []
        for i, d in reversed(list(enumerate(self._digits(c)))):
            if d:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(mono if d == 1 and mono else (f"{d}*{mono}" if mono else str(d)))
        return "(" + "+".join(terms) + ")"

    @property
    def spec(self):
        return f"char={self.p}; ext={self.k}"


def field_from_characteristic(char, ext=1):
    char = int(char)
    if char == 0:
        if ext != 1:
            raise ValueError("field extensions are only supported in positive characteristic")
        return Rationals()
    if ext == 1:
        return PrimeField(char)
    return ExtensionField(char, ext)
