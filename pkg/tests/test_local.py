import pytest

from mutau.errors import UNKNOWN, Inconclusive
from mutau.groebner import DEGREVLEX, Ideal
from mutau.local import (is_m_primary_local, local_colength, truncated_colength,
                         verify_certificate)
from mutau.polynomial import parse_poly, parse_ring_spec

Q2 = parse_ring_spec("char=0; vars=x,y")


def I(*gens, ring=Q2):
    return Ideal([parse_poly(g, ring) for g in gens], ring)


def test_monomial_certificate():
    res = local_colength(I("x^2", "y^3"))
    assert res.value == 6
    assert res.certificate_degree == 4
    assert res.truncation_history[-2:] == ((4, 6), (5, 6))


def test_unit_away_from_origin_is_ignored():
    # (x(1+x), y) is x*y-primary at the origin only: local colength 1, global 2
    J = I("x + x^2", "y")
    assert J.colength() == 2
    assert local_colength(J).value == 1


def test_not_m_primary():
    J = I("x^2")
    with pytest.raises(Inconclusive):
        local_colength(J, n_max=6)
    assert is_m_primary_local(J, n_max=6) is UNKNOWN


def test_non_monomial_certificate_verifies():
    J = I("3*x^2 + 2*x*y^2", "4*y^3 + 2*x^2*y")
    res = local_colength(J)
    # semi-quasi-homogeneous deformation of x^3+y^4: mu = 2*3
    assert res.value == 6
    assert verify_certificate(J, res.certificate_degree)
    # the history is non-decreasing and ends on a repeat
    vals = [c for _, c in res.truncation_history]
    assert vals == sorted(vals) and vals[-1] == vals[-2]


def test_local_agrees_with_degrevlex_run():
    J = I("x^3 - y^2 + x*y^2", "x*y - y^3")
    a = local_colength(J)
    b = local_colength(J, order=DEGREVLEX)
    assert a.value == b.value
    assert a.certificate_degree == b.certificate_degree


def test_truncated_colength_of_m_power():
    assert truncated_colength(I("x", "y"), 5) == 1
    assert truncated_colength(I("x"), 5) == 5


def test_to_dict():
    d = local_colength(I("x", "y^2")).to_dict()
    assert d["value"] == 2 and isinstance(d["truncation_history"], list)
