"""Sparse multivariate polynomials over exact fields, with a small text grammar.

Polynomials are immutable maps from exponent tuples to nonzero field elements.
They stand in for power series germs: every isolated singularity is finitely
determined, so a polynomial representative carries the same Milnor and
Tjurina numbers as the germ it truncates.

Grammar accepted by :func:`parse_poly` (whitespace is ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := coeff ['*'? factor]* | factor ['*'? factor]*
    factor := var ['^' natural]
    coeff  := integer | integer '/' positive-integer
"""
from fractions import Fraction
from functools import reduce

from .errors import IndexOutOfRange, NotAUnit, PolySyntaxError, RingMismatch, UnknownVariable
from .fields import ExtensionField, Field, field_from_characteristic


class RingContext:
    """Variables plus coefficient field; the ambient ring K[x_1..x_n]."""

    __slots__ = ("vars", "field", "n", "_index")

    def __init__(self, vars, field):
        vars = tuple(vars)
        if not vars:
            raise ValueError("a ring needs at least one variable")
        if len(set(vars)) != len(vars) or not all(isinstance(v, str) and v for v in vars):
            raise ValueError(f"variable names must be distinct nonempty strings: {vars!r}")
        if not isinstance(field, Field):
            raise TypeError("field must be a Field instance")
        self.vars = vars
        self.field = field
        self.n = len(vars)
        self._index = {v: i for i, v in enumerate(vars)}

    def __eq__(self, other):
        return isinstance(other, RingContext) and self.vars == other.vars and self.field == other.field

    def __hash__(self):
        return hash((self.vars, self.field))

    def __repr__(self):
        return f"RingContext({self.spec!r})"

    @property
    def characteristic(self):
        return self.field.characteristic

    @property
    def spec(self):
        return f"{self.field.spec}; vars={','.join(self.vars)}"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}; ring has {','.join(self.vars)}") from None

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field(c) if not _is_element(c) else c
        return Polynomial(self, {(0,) * self.n: c})

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.n or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps!r}")
        return Polynomial(self, {exps: self.field(coeff)})

    def gens(self):
        return tuple(self.monomial(tuple(int(i == j) for j in range(self.n))) for i in range(self.n))

    def extend(self, k):
        """Same variables over ``F_{p^k}``."""
        p = self.field.characteristic
        if p == 0:
            raise ValueError("field extensions need positive characteristic")
        return RingContext(self.vars, ExtensionField(p, k))

    def with_vars(self, vars):
        return RingContext(vars, self.field)


def _is_element(c):
    return not isinstance(c, (int, Fraction))


def parse_ring_spec(text):
    """Parse ``"char=0|<p>; vars=x,y,z"`` (optionally ``"; ext=k"``)."""
    fields = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"malformed ring spec component {part!r}")
        fields[key.strip().lower()] = value.strip()
    if "char" not in fields or "vars" not in fields:
        raise ValueError(f"ring spec needs char= and vars=: {text!r}")
    try:
        char = int(fields["char"])
        ext = int(fields.get("ext", 1))
    except ValueError:
        raise ValueError(f"bad characteristic in ring spec {text!r}") from None
    vars = [v.strip() for v in fields["vars"].split(",")]
    return RingContext(vars, field_from_characteristic(char, ext))


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # -- inspection -----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def order(self):
        """Lowest total degree of a term (the order of the germ); -1 for zero."""
        return min((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(m) for m in self.terms}) <= 1

    def is_monomial(self):
        return len(self.terms) == 1

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def constant_term(self):
        return self.coefficient((0,) * self.ring.n)

    def in_m_squared(self):
        return all(sum(m) >= 2 for m in self.terms)

    def truncate(self, degree):
        """Drop every term of total degree >= ``degree``."""
        return Polynomial._raw(self.ring, {m: c for m, c in self.terms.items() if sum(m) < degree})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring.spec} vs {other.ring.spec}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        add = self.ring.field.add
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = add(v, c)
                if v == 0:
                    del out[m]
                else:
                    out[m] = v
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial._raw(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        field = self.ring.field
        add, mul = field.add, field.mul
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = mul(c1, c2)
                v = out.get(m)
                out[m] = c if v is None else add(v, c)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c):
        mul = self.ring.field.mul
        return Polynomial(self.ring, {m: mul(c, v) for m, v in self.terms.items()})

    def mul_monomial(self, exps, coeff=None):
        mul = self.ring.field.mul
        out = {}
        for m, c in self.terms.items():
            out[tuple(a + b for a, b in zip(m, exps))] = c if coeff is None else mul(coeff, c)
        return Polynomial(self.ring, out)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a natural number")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def derivative(self, i):
        return partial_derivative(self, i)

    # -- output ---------------------------------------------------------
    def sorted_terms(self):
        """Terms in descending degree-reverse-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grevlex_key(t[0]), reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r}, ring={self.ring.spec!r})"


def _grevlex_key(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


def format_poly(f):
    """Print ``f`` in the input grammar (round-trips through :func:`parse_poly`)."""
    if not f.terms:
        return "0"
    field = f.ring.field
    pieces = []
    for m, c in f.sorted_terms():
        negative = False
        if field.characteristic == 0:
            num, den = int(c.numerator), int(c.denominator)
            negative = num < 0
            num = abs(num)
            coeff = f"{num}/{den}" if den != 1 else str(num)
            unit = num == 1 and den == 1
        else:
            coeff = field.format(c)
            unit = c == 1
        factors = []
        for name, e in zip(f.ring.vars, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            body = coeff
        elif unit:
            body = "*".join(factors)
        else:
            body = "*".join([coeff] + factors)
        pieces.append(("-" if negative else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# -- parsing ------------------------------------------------------------------

class _Lexer:
    def __init__(self, text):
        self.text = text
        self.tokens = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", text[i:j], i))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.tokens.append(("var", text[i:j], i))
                i = j
            elif ch in "+-*^/":
                self.tokens.append((ch, ch, i))
                i += 1
            else:
                raise PolySyntaxError(f"unexpected character {ch!r}", i, "term")
        self.tokens.append(("end", "", len(text)))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, what):
        tok = self.take()
        if tok[0] != kind:
            raise PolySyntaxError(f"unexpected {tok[1] or 'end of input'!r}", tok[2], what)
        return tok


def parse_poly(text, ring):
    """Parse ``text`` into a :class:`Polynomial` over ``ring``.

    Arithmetic happens in ``ring.field``, so over ``F_p`` every coefficient is
    reduced modulo ``p`` as it is read.

    >>> from mutau.polynomial import parse_ring_spec
    >>> R = parse_ring_spec("char=0; vars=x,y")
    >>> str(parse_poly("x^3 + 3*x*y - x^3", R))
    '3*x*y'
    """
    lex = _Lexer(text)
    field = ring.field
    n = ring.n
    out = {}

    def add_term(exps, coeff):
        v = out.get(exps)
        out[exps] = coeff if v is None else field.add(v, coeff)

    sign = 1
    tok = lex.peek()
    if tok[0] in "+-" and tok[0] != "end":
        lex.take()
        sign = -1 if tok[0] == "-" else 1
    while True:
        coeff, exps = _parse_term(lex, ring)
        if sign < 0:
            coeff = field.neg(coeff)
        add_term(exps, coeff)
        tok = lex.peek()
        if tok[0] == "end":
            break
        if tok[0] not in ("+", "-"):
            raise PolySyntaxError(f"unexpected {tok[1]!r}", tok[2], "'+', '-' or end of input")
        lex.take()
        sign = -1 if tok[0] == "-" else 1
    return Polynomial(ring, out)


def _parse_term(lex, ring):
    field = ring.field
    exps = [0] * ring.n
    coeff = None
    tok = lex.peek()
    if tok[0] == "int":
        lex.take()
        num = int(tok[1])
        if lex.peek()[0] == "/":
            lex.take()
            den_tok = lex.expect("int", "positive integer denominator")
            den = int(den_tok[1])
            if den == 0:
                raise PolySyntaxError("zero denominator", den_tok[2], "positive integer")
            try:
                coeff = field.from_fraction(num, den)
            except ZeroDivisionError:
                raise PolySyntaxError(
                    f"denominator {den} is not invertible in characteristic {field.characteristic}",
                    den_tok[2]) from None
        else:
            coeff = field(num)
    elif tok[0] != "var":
        raise PolySyntaxError(f"unexpected {tok[1] or 'end of input'!r}", tok[2], "coefficient or variable")
    while True:
        tok = lex.peek()
        if tok[0] == "*":
            lex.take()
            tok = lex.peek()
            if tok[0] != "var":
                raise PolySyntaxError(f"unexpected {tok[1] or 'end of input'!r}", tok[2], "variable")
        if tok[0] != "var":
            break
        lex.take()
        idx = ring.index(tok[1])
        power = 1
        if lex.peek()[0] == "^":
            lex.take()
            power = int(lex.expect("int", "natural exponent")[1])
        exps[idx] += power
    if coeff is None:
        coeff = field.one
    return coeff, tuple(exps)


# -- elementary operations ----------------------------------------------------

def poly_arith(op, a, b):
    """Dispatch ``add|sub|mul|pow``; for ``pow`` the second operand is a natural number."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f, i):
    """Formal partial derivative with respect to variable index ``i``."""
    ring = f.ring
    if not 0 <= i < ring.n:
        raise IndexOutOfRange(f"variable index {i} outside 0..{ring.n - 1}")
    field = ring.field
    out = {}
    for m, c in f.terms.items():
        e = m[i]
        if e:
            v = field.mul(c, field(e))
            if v != 0:
                out[m[:i] + (e - 1,) + m[i + 1:]] = v
    return Polynomial._raw(ring, out)


def linear_unit(ring, a, coerce=True):
    """The unit ``a_0 + a_1 x_1 + ... + a_n x_n``.

    With ``coerce=False`` the entries are taken as field elements already;
    extension-field elements are stored as ints and must not go through
    ``field(int)``, which reads an int as an integer mod p.
    """
    a = tuple(a)
    if len(a) != ring.n + 1:
        raise ValueError(f"expected {ring.n + 1} coefficients, got {len(a)}")
    field = ring.field
    if coerce:
        a = tuple(c if _is_element(c) else field(c) for c in a)
    if a[0] == 0:
        raise NotAUnit("constant coefficient a_0 must be nonzero")
    terms = {(0,) * ring.n: a[0]}
    for i, c in enumerate(a[1:]):
        if c != 0:
            terms[tuple(int(i == j) for j in range(ring.n))] = c
    return Polynomial(ring, terms)


def unit_multiply(f, a, coerce=True):
    """Return ``(a_0 + sum a_i x_i) * f``; raises :class:`NotAUnit` when ``a_0 == 0``."""
    return linear_unit(f.ring, a, coerce) * f


def change_ring(f, ring):
    """Reinterpret ``f`` over ``ring`` (same variables; coefficients mapped through integers)."""
    if ring.vars != f.ring.vars:
        raise RingMismatch("variable lists differ")
    src = f.ring.field
    dst = ring.field
    out = {}
    for m, c in f.terms.items():
        if src.characteristic == 0:
            fr = src.to_fraction(c)
            out[m] = dst.from_fraction(fr.numerator, fr.denominator) if fr.denominator != 1 else dst(fr.numerator)
        else:
            out[m] = dst(int(c)) if src.order == src.characteristic else c
    return Polynomial(ring, out)


def psum(polys, ring):
    return reduce(lambda a, b: a + b, polys, ring.zero())
