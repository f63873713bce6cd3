import random

import pytest

from planarskein.geometry import PLLoop, StackedDiagram, assemble_stacked_diagram
from planarskein.multicurve import Multicurve
from planarskein.ring import ALPHA, BETA, ONE, Q, QBAR, ScalarR, scalar
from planarskein.skein import (STATS, SkeinElement, basis_product, element_product, kauffman_resolve,
                               mirror_element, stacked_product_planar)

from conftest import M

SUBSETS4 = [(1,), (2,), (3,), (4,), (1, 2), (2, 3), (3, 4), (1, 3), (2, 4), (1, 4),
            (1, 2, 3), (2, 3, 4), (1, 2, 4), (1, 3, 4), (1, 2, 3, 4)]


def rand_basis(rng, k=2, max_crossings=12):
    """Random basis multicurves on 4 punctures whose stacked diagram stays small."""
    while True:
        out = []
        while len(out) < k:
            try:
                out.append(M(*rng.sample(SUBSETS4, rng.randint(1, 2))))
            except ValueError:
                pass
        if len(assemble_stacked_diagram(out, 4).crossings) <= max_crossings:
            return out


def test_trivial_loop():
    sq = tuple((x, y) for x, y in [(10, -1), (11, -1), (11, 1), (10, 1)])
    from fractions import Fraction
    loop = PLLoop(tuple((Fraction(x), Fraction(y)) for x, y in sq), height=1)
    e = kauffman_resolve(StackedDiagram([loop], [], 2))
    assert e == SkeinElement.scalar(-ALPHA)


def test_nested_peripheral():
    assert basis_product(M((1,)), M((1,)), 1) == SkeinElement.basis(M((1,), (1,)))


def test_disjoint_products():
    assert basis_product(M((1,)), M((2,)), 2) == SkeinElement.basis(M((1,), (2,)))
    assert basis_product(M((1, 2)), M((1, 2)), 2) == SkeinElement.basis(M((1, 2), (1, 2)))


def test_regression_12_over_23():
    e = basis_product(M((1, 2)), M((2, 3)), 3)
    assert len(e.terms) == 4
    assert e.terms[M((1,), (3,))] == ONE
    assert e.terms[M((2,), (1, 2, 3))] == ONE
    assert e.terms[M((1, 3))] == QBAR.__class__({-2: 1})
    rest = [k for k in e.terms if not k.is_standard()]
    assert len(rest) == 1 and e.terms[rest[0]] == Q


def test_13_24_has_full_curve():
    e = basis_product(M((1, 3)), M((2, 4)), 4)
    assert e.terms[M((1, 2, 3, 4))] == ALPHA
    assert e.terms[M((1, 2), (3, 4))] == Q * Q


def test_unit_and_bilinearity():
    e = basis_product(M((1, 3)), M((2, 4)), 4)
    assert element_product(e, SkeinElement.one(), 4) == e
    a, b = scalar({3: 1}), scalar({-1: 2}, 1)
    lhs = element_product(SkeinElement.basis(M((1, 2)), a), SkeinElement.basis(M((2, 3)), b), 3)
    assert lhs == basis_product(M((1, 2)), M((2, 3)), 3).scale(a * b)


def test_engines_agree(rng):
    for _ in range(25):
        m1, m2 = rand_basis(rng)
        chord = basis_product(m1, m2, 4)
        planar = stacked_product_planar([m1, m2], 4)
        assert chord == planar, (m1, m2)


def test_perturbation_independence(rng):
    for _ in range(12):
        m1, m2 = rand_basis(rng)
        base = stacked_product_planar([m1, m2], 4, perturb=0)
        assert stacked_product_planar([m1, m2], 4, perturb=3) == base


def test_associativity(rng):
    for _ in range(15):
        a, b, c = [SkeinElement.basis(m) for m in rand_basis(rng, 3)]
        assert element_product(element_product(a, b, 4), c, 4) == element_product(a, element_product(b, c, 4), 4)


def test_centrality(rng):
    for _ in range(10):
        e = SkeinElement.basis(rand_basis(rng, 1)[0])
        for i in range(1, 5):
            t = SkeinElement.basis(M((i,)))
            assert element_product(t, e, 4) == element_product(e, t, 4)
            full = stacked_product_planar([M((i,))] + list(e.terms), 4, shrink_peripheral=False)
            assert full == element_product(t, e, 4)


def test_mirror_reverses_order(rng):
    for _ in range(20):
        m1, m2 = rand_basis(rng)
        assert mirror_element(basis_product(m1, m2, 4)) == basis_product(m2, m1, 4)


def test_mirror_element_basic():
    e = SkeinElement.basis(M((1, 2)), -scalar({3: 1}))
    assert mirror_element(e) == SkeinElement.basis(M((1, 2)), -scalar({-3: 1}))
    assert mirror_element(mirror_element(e)) == e


def test_state_count():
    STATS.reset()
    stacked_product_planar([M((1, 3)), M((2, 4))], 4)
    assert STATS.states == STATS.expected_states > 0


def test_json_roundtrip():
    e = basis_product(M((1, 3)), M((2, 4)), 4)
    assert SkeinElement.from_json(e.to_json()) == e
