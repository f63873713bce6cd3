import random

import pytest

from planarskein.expr import parse_poly
from planarskein.multicurve import Multicurve
from planarskein.ncpoly import NCPoly, gen
from planarskein.presentation import (FAMILIES, build_catalog, generator_image, instantiate, mirror_poly,
                                      report_line, subset_s_element, theta_eval, verify_instance,
                                      verify_relation)
from planarskein.ring import ALPHA, BETA, ONE, Q, QBAR, scalar
from planarskein.skein import SkeinElement, element_product, mirror_element

from conftest import M


def test_s12_image():
    assert subset_s_element([1, 2]) == SkeinElement.basis(M((1, 2))) + SkeinElement.basis(M((1,), (2,)), BETA)


def test_s123_image():
    e = subset_s_element([1, 2, 3])
    assert e.terms[M((1, 2, 3))] == ONE
    for j, rest in [(1, (2, 3)), (2, (1, 3)), (3, (1, 2))]:
        assert e.terms[M((j,), rest)] == BETA
    assert e.terms[M((1,), (2,), (3,))] == BETA * BETA * 2
    assert len(e.terms) == 5


def test_s1234_image():
    e = subset_s_element([1, 2, 3, 4])
    assert e.terms[M((1, 2, 3, 4))] == ONE
    assert e.terms[M((1,), (2, 3, 4))] == BETA
    assert e.terms[M((1,), (2,), (3, 4))] == BETA * BETA
    assert e.terms[M((1,), (2,), (3,), (4,))] == BETA ** 3 * 3


def test_sii_image():
    assert theta_eval(parse_poly("s22"), 2) == SkeinElement.scalar(ALPHA) - SkeinElement.basis(M((2,), (2,)), BETA)


def test_t_central():
    assert theta_eval(parse_poly("t1*t2 - t2*t1"), 2).is_zero()


def test_reference_identity():
    assert theta_eval(parse_poly("s13*s24 - q^2*s12*s34 - qb^2*s23*s14 - a*s1234"), 4).is_zero()


@pytest.mark.parametrize("n,family,count", [(3, "COMM22_1", 3), (4, "COMM22_2", 4), (6, "TYPEI_OV3", 20 * 3 * 2),
                                            (5, "TYPEII_1", 5)])
def test_catalog_counts(n, family, count):
    assert len(build_catalog(n, [family])) == count


def test_catalog_total_n6():
    assert len(build_catalog(6)) == 1614


def test_rotation_bookkeeping():
    r = instantiate("COMM22_2", (1, 2, 3, 4), rotation=1)
    assert (gen("s", [1, 3]) * gen("s", [2, 4])).terms.keys() <= r.poly.terms.keys()
    assert verify_relation(r, 4).is_zero()


@pytest.mark.parametrize("family,idx", [("TYPEI_OV3", (1, 2, 3)), ("TYPEII_1", (1, 2, 3, 4, 5)),
                                        ("COMM23_4", (1, 2, 3, 4)), ("TYPEI_OV2_1", (1, 2, 3, 4))])
def test_instances_verify(family, idx):
    for rot in range(len(idx)):
        assert verify_relation(instantiate(family, idx, rot), len(idx)).is_zero()


def test_injected_failure():
    r = instantiate("TYPEI_OV3", (1, 2, 3))
    broken = type(r)(r.family, r.indices, r.rotation, r.mirrored, r.poly + 1)
    res = verify_relation(broken, 3)
    assert res == SkeinElement.one()


@pytest.mark.parametrize("name,n", [("AUX_2200", 4), ("AUX_1234", 4), ("AUX_2300", 5), ("AUX_EX3", 3)])
def test_aux(name, n):
    for r in build_catalog(n, [name]):
        assert verify_relation(r, n).is_zero(), r.label()


def test_ex3_uses_t_only():
    assert all(g.kind == "t" for g in parse_poly(FAMILIES["AUX_EX3"].template).generators())


def test_mirror_poly():
    assert mirror_poly(parse_poly("s12*s23")) == parse_poly("s23*s12")
    assert mirror_poly(parse_poly("q*t1")) == parse_poly("qb*t1")


def random_poly(rng, n=4, words=3, length=3):
    pool = [f"t{i}" for i in range(1, n + 1)] + [f"s{a}{b}" for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    pool += ["s123", "s234", "s124"]
    text = " + ".join(f"{rng.choice(['1', 'q', '-qb', 'B', 'v^3'])}*" + "*".join(rng.choice(pool)
                      for _ in range(rng.randint(1, length))) for _ in range(words))
    return parse_poly(text)


def test_mirror_coherence(rng):
    for _ in range(30):
        p = random_poly(rng)
        assert mirror_element(theta_eval(p, 4)) == theta_eval(mirror_poly(p), 4)


def test_theta_multiplicative(rng):
    for _ in range(20):
        p, q = random_poly(rng, words=2, length=2), random_poly(rng, words=2, length=2)
        assert theta_eval(p * q, 4) == element_product(theta_eval(p, 4), theta_eval(q, 4), 4)


def test_report_record():
    rec = verify_instance(instantiate("TYPEI_OV3", (1, 2, 3)), 3)
    assert set(rec) == {"family", "indices", "rotation", "mirrored", "ok", "residual_terms", "crossings_max", "millis"}
    assert rec["ok"] and rec["residual_terms"] == 0
    assert '"family": "TYPEI_OV3"' in report_line(rec)


def test_planar_engine_agrees_on_relation():
    r = instantiate("COMM22_2", (1, 2, 3, 4), 2)
    assert theta_eval(r.poly, 4, engine="planar").is_zero()
    p = parse_poly("s13*s24")
    assert theta_eval(p, 4, engine="planar") == theta_eval(p, 4)


def test_index_beyond_n():
    with pytest.raises(ValueError):
        theta_eval(parse_poly("s15"), 4)
