import pytest

from planarskein.multicurve import Multicurve, compatible
from planarskein.skein import md_profile, reduced_degree

from conftest import M


@pytest.mark.parametrize("s,t,ok", [
    ((1, 2), (1, 2, 3), True),
    ((1, 3), (2, 5), False),
    ((1, 3), (2,), True),
    ((1, 2), (3, 4), True),
    ((1, 4), (2, 3), True),
    ((1, 2), (2, 3), False),
])
def test_compatible(s, t, ok):
    assert compatible(s, t) is ok
    assert compatible(t, s) is ok


def test_canonical_keys():
    assert M((3, 4), (1, 2)) == M((1, 2), (3, 4))
    assert M() == Multicurve.empty()
    assert M((1,), (1,)).peripheral[0] == 2


def test_incompatible_family_rejected():
    with pytest.raises(ValueError):
        M((1, 3), (2, 4))


@pytest.mark.parametrize("m,prof", [
    (((1, 2), (3, 4, 5, 6)), (1, 1, 1, 1, 1, 1)),
    (((1, 2), (1, 2)), (2, 2)),
    (((2,), (1, 3)), (1, 1, 1)),
])
def test_md_profile(m, prof):
    assert md_profile(M(*m)) == prof


@pytest.mark.parametrize("m,deg", [
    (((1, 2), (3, 4, 5, 6)), 6),
    (((1,), (2,), (3,)), 0),
    (((1, 2, 3), (4, 5, 6)), 6),
])
def test_reduced_degree(m, deg):
    assert reduced_degree(M(*m)) == deg


def test_standard_roundtrip():
    for S in [(1, 2), (1, 3), (2, 4, 5), (1, 2, 3, 4, 5, 6)]:
        m = Multicurve.standard(S)
        assert m.subsets() == [S] or list(map(tuple, m.subsets())) == [S]
        m.validate()
