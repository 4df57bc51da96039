import json
import random

from mutau.conjectures import (HEADER_NOTE, check_instance, check_colon_containment, check_power_membership, colon_ideal,
                               corpus_run, parse_corpus, random_corpus_text, random_quasi_homogeneous)
from mutau.invariants import jacobian_ideal, milnor, tjurina
from mutau.polynomial import parse_poly, parse_ring_spec

Q2 = parse_ring_spec("char=0; vars=x,y")
F3 = parse_ring_spec("char=3; vars=x,y")


def test_parse_corpus():
    rows = parse_corpus("# c\nchar=5; vars=x,y\nx^2+y^3  # cusp\n\nchar=0; vars=x,y,z\nx^2+y^2+z^2\n")
    assert [(r.spec, t) for _, r, t in rows] == [("char=5; vars=x,y", "x^2+y^3"),
                                                 ("char=0; vars=x,y,z", "x^2+y^2+z^2")]


def test_corpus_without_ring_line():
    try:
        parse_corpus("x^2 + y^2\n")
    except ValueError as exc:
        assert "line 1" in str(exc)
    else:
        raise AssertionError("expected a ValueError")


def test_colon_is_unit_when_f_in_j():
    for text in ("x^2 + y^2", "x^3 + y^4"):
        entry = check_colon_containment(parse_poly(text, Q2))
        assert entry["colon_is_unit"] and not entry["contained_in_tj"] and entry["colon_contains_j"]


def test_colon_char_p_recorded():
    f = parse_poly("x^3 + y^4", F3)
    # j = (y^3) has no local certificate, so the colon falls back to global: (y^3) : f = (y^3)
    C, scope = colon_ideal(f)
    assert scope == "global"
    assert C.contains(parse_poly("y^3", F3)) and not C.contains(parse_poly("y^2", F3))
    entry = check_colon_containment(f)
    assert entry["contained_in_tj"] is True  # recorded, not a char-0 claim
    assert entry["colon_contains_j"]


def test_colon_non_quasi_homogeneous():
    f = parse_poly("x^4 + y^5 + x^2*y^3", Q2)
    entry = check_colon_containment(f)
    assert entry["contained_in_tj"] is False
    assert not entry["colon_is_unit"]
    C, _ = colon_ideal(f)
    for g in jacobian_ideal(f).gens:
        assert C.contains(g)


def test_power_membership_examples():
    assert check_power_membership(parse_poly("x^3 + y^4", Q2), 2) == [(1, True), (2, True)]
    assert check_power_membership(parse_poly("x^3 + y^4", F3), 3) == [(1, False), (2, False), (3, False)]


def test_empty_corpus():
    rep = corpus_run("char=0; vars=x,y\n")
    assert rep.entries == [] and rep.summary()["instances"] == 0


def test_non_isolated_instance_recorded():
    rep = corpus_run("char=0; vars=x,y\nx^2*y^2\nx^3+y^3\n", trials=2)
    assert rep.summary()["errors"] == 1
    assert rep.entries[1]["tau"] == 4


def test_report_reproducible():
    text = "char=0; vars=x,y\nx^4+y^5+x^2*y^3\nchar=5; vars=x,y\nx^3+y^4\n"
    a = json.dumps(corpus_run(text, trials=3, seed=2).to_dict(), sort_keys=True)
    b = json.dumps(corpus_run(text, trials=3, seed=2).to_dict(), sort_keys=True)
    assert a == b
    assert HEADER_NOTE in corpus_run(text, trials=1).table()


def test_corpus_from_file(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("char=0; vars=x,y\nx^2+y^5\n")
    rep = corpus_run(str(p), trials=1)
    assert rep.entries[0]["mu"] == 4


def test_random_corpus_is_deterministic():
    assert random_corpus_text(6, seed=4) == random_corpus_text(6, seed=4)
    assert len(parse_corpus(random_corpus_text(6, seed=4))) == 6


def test_quasi_homogeneous_sampler():
    rng = random.Random(8)
    for n in (2, 3, 2):
        ring = parse_ring_spec(f"char=0; vars={','.join('xyz'[:n])}")
        f, exps = random_quasi_homogeneous(ring, rng)
        # every term has weighted degree 1 for the weights 1/a_i
        for m in f.terms:
            assert sum(v / a for v, a in zip(m, exps)) == 1
        assert milnor(f) == tjurina(f)


def test_small_field_sampling_needs_extension():
    # over F_2 the first units miss the generic locus: mu_O stays at 16 while e(tj) = 10
    r = parse_ring_spec("char=2; vars=x,y,z")
    f = parse_poly("y^4*z^2 + z^4 + x^3 + x*y*z + y^2*z + y^2", r)
    low = check_instance(f, trials=4, seed=0)
    assert low["mu_O"] > low["e_tj"] == 10
    ext = check_instance(f, trials=8, seed=0, field_extension=4)
    assert ext["mu_O"] == ext["e_tj"] == 10
    assert ext["ratio"] == "5/4" and ext["bound_satisfied"] is True
