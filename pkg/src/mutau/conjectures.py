"""Batch checks of the colon-containment conjecture and related membership facts.

Only the consequence "(j(f):f) is not contained in tj(f)" is tested; the
stronger integral-closure statement is out of reach and every report says so.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import UNKNOWN, Inconclusive, MutauError
from .groebner import Ideal, colon_poly
from .invariants import (jacobian_ideal, membership_test, mu_tau_report, power_membership,
                         tjurina_ideal)
from .local import local_colength
from .polynomial import Polynomial, parse_poly, parse_ring_spec

HEADER_NOTE = ("Only the tj-containment consequence of the colon conjecture is tested; "
               "integral-closure containment is not computed. Contained instances are "
               "candidates pending manual inspection.")

BUILTIN_CORPUS = """\
# Fermat, ADE and Brieskorn-Pham forms
char=0; vars=x,y
x^2+y^2
x^3+y^3
x^4+y^4
x^2+y^5
x^3+y^4
x^3+x*y^3
x^3+y^5
x^2*y+y^4
x^2*y+y^6
# non quasi-homogeneous deformations
x^4+y^5+x^2*y^3
x^5+y^5+x^3*y^3
x^4+y^4+x^2*y^3
x^5+y^6+x^3*y^3+x^2*y^4
x^6+y^6+x^4*y^3+x^3*y^4
x^3*y+y^5+x^2*y^3
char=0; vars=x,y,z
x^2+y^2+z^2
x^3+y^3+z^3
x^2+y^3+z^4
x^3+y^3+z^4
x^2+y^3+z^5
x^4+y^4+z^4+x^2*y^2*z^2
x^3+y^4+z^4+x*y^2*z^2
# characteristic p specials
char=2; vars=x,y
x^2+y^3
x^3+y^5
x^3+y^3+x^2*y^2
char=3; vars=x,y
x^3+y^4
x^4+y^5+x^2*y^3
x^2+y^5
char=5; vars=x,y
x^5+y^6
x^3+y^4
char=3; vars=x,y,z
# not isolated here: x^3+y^3 = (x+y)^3
x^3+y^3+z^4
x^2+y^2+z^4
"""


def parse_corpus(text):
    """Yield ``(line_no, ring, polynomial_text)``; a line starting with ``char=`` switches rings."""
    ring = None
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("char="):
            ring = parse_ring_spec(line)
            continue
        if ring is None:
            raise ValueError(f"line {no}: polynomial before any ring-spec line")
        out.append((no, ring, line))
    return out


def colon_ideal(f, n_max=None):
    """``(j(f) : f)``, computed locally when j(f) has a certificate ``m^N ⊆ j(f)``."""
    j = jacobian_ideal(f)
    try:
        N = local_colength(j, n_max).certificate_degree
        base = Ideal(j.gens, f.ring, N)
        scope = "local"
    except Inconclusive:
        base, scope = j, "global"
    return colon_poly(base, f), scope


def check_colon_containment(f, n_max=None):
    """Entry with the colon generators and whether all of them lie in tj(f)."""
    colon, scope = colon_ideal(f, n_max)
    in_tj, _ = membership_test(tjurina_ideal(f), n_max)
    gens = colon.gens
    contained = all(in_tj(g) for g in gens)
    j_inside = all(colon.contains(g) for g in jacobian_ideal(f).gens)
    return {
        "colon_generators": [str(g) for g in gens],
        "colon_scope": scope,
        "colon_is_unit": colon.is_unit(),
        "contained_in_tj": contained,
        "colon_contains_j": j_inside,
    }


def check_power_membership(f, cap):
    return power_membership(f, cap)


@dataclass
class ConjectureReport:
    entries: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def summary(self):
        ok = [e for e in self.entries if not e.get("error")]
        return {
            "instances": len(self.entries),
            "errors": len(self.entries) - len(ok),
            "contained_in_tj": sum(1 for e in ok if e["contained_in_tj"]),
            "contained_in_tj_char0": sum(1 for e in ok if e["contained_in_tj"] and e["characteristic"] == 0),
            "bound_violations": sum(1 for e in ok if e["bound_satisfied"] is False),
            "ratio_defined": sum(1 for e in ok if e["ratio"] != "Undefined"),
        }

    def to_dict(self):
        return {"note": HEADER_NOTE, "config": dict(self.config), "summary": self.summary(),
                "entries": list(self.entries)}

    def table(self):
        head = f"{'#':>3}  {'ring':<22} {'f':<28} {'mu':>7} {'tau':>4} {'mu_O':>5} {'ratio':>8} {'bound':>7} {'(j:f)<=tj':>9}"
        lines = [HEADER_NOTE, head, "-" * len(head)]
        for i, e in enumerate(self.entries):
            if e.get("error"):
                lines.append(f"{i:>3}  {e['ring']:<22} {e['f']:<28} error: {e['error']}")
                continue
            lines.append(f"{i:>3}  {e['ring']:<22} {e['f']:<28} {str(e['mu']):>7} {str(e['tau']):>4} "
                         f"{str(e['mu_O']):>5} {e['ratio']:>8} {e['bound']:>7} {str(e['contained_in_tj']):>9}")
        s = self.summary()
        lines.append(f"instances={s['instances']} errors={s['errors']} contained={s['contained_in_tj']} "
                     f"(char 0: {s['contained_in_tj_char0']}) bound_violations={s['bound_violations']}")
        return "\n".join(lines) + "\n"


def check_instance(f, trials=4, seed=0, cap=None, cross_check=True, n_max=None, field_extension=1):
    # the extension only matters for unit sampling, and only in char p
    k = field_extension if f.ring.characteristic else 1
    rec = mu_tau_report(f, trials=trials, seed=seed, field_extension=k, cross_check=cross_check,
                        n_max=n_max)
    d = rec.to_dict()
    entry = {"f": str(f), "ring": f.ring.spec, "characteristic": rec.characteristic}
    if rec.tau is UNKNOWN:
        entry["error"] = "no certificate for tau: not an isolated singularity (or N_max too small)"
        return entry
    entry.update({k: d[k] for k in ("mu", "tau", "mu_O", "e_tj", "e_bs", "ratio", "bound", "bound_satisfied")})
    entry.update(check_colon_containment(f, n_max))
    cap = f.ring.n if cap is None else cap
    entry["f_power_membership"] = [[e, ok] for e, ok in check_power_membership(f, cap)]
    entry["flags"] = d["flags"]
    return entry


def corpus_run(source=None, trials=4, seed=0, cap=None, cross_check=True, n_max=None, field_extension=1):
    """Run every instance of a corpus (text, path, or ``None`` for the built-in one)."""
    if source is None:
        text = BUILTIN_CORPUS
    elif "\n" in source or source.startswith("char="):
        text = source
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    report = ConjectureReport(config={"trials": trials, "seed": seed, "cap": cap,
                                      "cross_check": cross_check, "n_max": n_max,
                                      "field_extension": field_extension})
    for idx, (no, ring, line) in enumerate(parse_corpus(text)):
        try:
            f = parse_poly(line, ring)
            report.entries.append(check_instance(f, trials, seed + idx, cap, cross_check, n_max,
                                                 field_extension))
        except MutauError as exc:
            report.entries.append({"f": line, "ring": ring.spec, "characteristic": ring.characteristic,
                                   "error": f"{type(exc).__name__}: {exc}"})
    return report


# -- random corpora ------------------------------------------------------------------------

def random_isolated(ring, rng, max_deg=6, extra_terms=3):
    """A Brieskorn-Pham form plus a few random monomials of weighted degree > 1.

    Over Q such an f is semi-quasi-homogeneous, hence isolated.
    """
    n = ring.n
    fld = ring.field
    exps = [rng.randint(2, max_deg) for _ in range(n)]
    terms = {}
    for i, a in enumerate(exps):
        terms[tuple(a if j == i else 0 for j in range(n))] = fld.one
    cands = [m for m in product(range(max_deg), repeat=n)
             if 2 <= sum(m) <= max_deg + 2 and sum(1 for v in m if v) >= 2
             and sum(Fraction(v, a) for v, a in zip(m, exps)) > 1]
    for m in rng.sample(cands, min(extra_terms, len(cands))):
        terms[m] = fld.random_nonzero(rng)
    return Polynomial(ring, terms)


def random_corpus_text(count, seed=0, chars=(0, 2, 3, 5), dims=(2, 3)):
    rng = random.Random(seed)
    lines = []
    for i in range(count):
        p = chars[i % len(chars)]
        n = dims[(i // len(chars)) % len(dims)]
        ring = parse_ring_spec(f"char={p}; vars={','.join('xyz'[:n])}")
        f = random_isolated(ring, rng, max_deg=5 if n == 3 else 6)
        lines.append(ring.spec)
        lines.append(str(f))
    return "\n".join(lines) + "\n"


def random_quasi_homogeneous(ring, rng, max_deg=6, extra_terms=2, attempts=50):
    """Random isolated quasi-homogeneous f: x_i^{a_i} plus monomials of weighted degree exactly 1.

    Weights are ``1/a_i``. Candidates that turn out non-isolated (e.g. a
    square completing to ``(x+y)^2``) are resampled.
    """
    n = ring.n
    fld = ring.field
    for _ in range(attempts):
        exps = [rng.randint(2, max_deg) for _ in range(n)]
        terms = {tuple(a if j == i else 0 for j in range(n)): fld.one for i, a in enumerate(exps)}
        cands = [m for m in product(range(max_deg + 1), repeat=n)
                 if sum(m) <= max_deg and sum(1 for v in m if v) >= 2
                 and sum(Fraction(v, a) for v, a in zip(m, exps)) == 1]
        for m in rng.sample(cands, min(extra_terms, len(cands))):
            terms[m] = fld.random_nonzero(rng)
        f = Polynomial(ring, terms)
        try:
            local_colength(tjurina_ideal(f))
        except Inconclusive:
            continue
        return f, exps
    raise RuntimeError("no isolated quasi-homogeneous sample found")
