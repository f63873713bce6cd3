"""Acceptance criteria 1-9, exact (zero tolerance).

Run under pytest (a summary block lists one PASS/FAIL line per criterion) or
directly: ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import os
import random
import subprocess
import sys
import tempfile
import time

import pytest

from planarskein import calibration
from planarskein.classical import IDENTITIES, check_classical_identity, sample_sl2_tuple, specialize_relation_check
from planarskein.expr import parse_poly
from planarskein.multicurve import Multicurve
from planarskein.ncpoly import Generator, NCPoly
from planarskein.normalform import (LISTED_PROFILES, enumerate_profile_basis, normal_form, targets_1_6,
                                    profile_report, spanning_triangularity_check, word_measure)
from planarskein.presentation import FAMILIES, build_catalog, mirror_poly, theta_eval, verify_relation
from planarskein.ring import ScalarR
from planarskein.skein import STATS, SkeinElement, element_product, mirror_element, stacked_product_planar
from planarskein.geometry import assemble_stacked_diagram

RESULTS: dict = {}


def _record(k: int, ok: bool, detail: str) -> None:
    RESULTS[k] = (ok, detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


# ---------------------------------------------------------------------------

def criterion_1():
    rep = calibration.calibrate()
    conv = rep["conventions"]
    holds = [k for k in ("false", "true") if conv[k]["identity_holds"]]
    other = conv[str(not rep["flip"]).lower()]
    ok = len(holds) == 1 and other["conjugate_holds"]
    # persisted and stable across separate processes
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "cal.json")
        flips = []
        for _ in range(2):
            res = subprocess.run([sys.executable, "-m", "planarskein", "calibrate", "--out", path],
                                 capture_output=True, text=True, check=False)
            ok = ok and res.returncode == 0
            flips.append(json.loads(res.stdout)["flip"])
        saved = json.load(open(path))["flip"]
    ok = ok and flips[0] == flips[1] == saved == rep["flip"]
    return ok, f"flip={rep['flip']}, identity holds under one convention, conjugate under the other, stable x2"


def criterion_2():
    cat = build_catalog(6)
    fails = [r.label() for r in cat if not verify_relation(r, 6).is_zero()]
    fams = {r.family for r in cat}
    ok = not fails and fams == set(FAMILIES)
    return ok, f"{len(cat)} instances, {len(fams)} families, {len(fails)} failures {fails[:3]}"


def criterion_3():
    out = []
    for name, n in (("AUX_2200", 4), ("AUX_1234", 4), ("AUX_2300", 5), ("AUX_EX3", 3)):
        bad = [r.label() for r in build_catalog(n, [name]) if not verify_relation(r, n).is_zero()]
        out.append((name, bad))
    ok = all(not bad for _, bad in out)
    return ok, ", ".join(f"{name}@{'ok' if not bad else bad}" for name, bad in out)


def criterion_4(samples: int = 200):
    bad = {}
    for name, (_, arity) in IDENTITIES.items():
        for seed in range(samples):
            if not check_classical_identity(name, sample_sl2_tuple(seed, arity)):
                bad.setdefault(name, []).append(seed)
    # index-shuffled instances of the determinant identities too
    rng = random.Random(4)
    for seed in range(samples):
        tup = sample_sl2_tuple(1000 + seed, 8)
        for name in ("typeI", "typeII"):
            idx = rng.sample(range(1, 9), IDENTITIES[name][1])
            if not check_classical_identity(name, tup, idx):
                bad.setdefault(name + "-shuffled", []).append(seed)
    return not bad, f"{len(IDENTITIES)} identities x {samples} tuples; failures: {bad or 'none'}"


def criterion_5(samples: int = 100):
    fam2 = [f for f, x in FAMILIES.items() if x.group == "typeII"]
    fam1 = [f for f, x in FAMILIES.items() if x.group == "typeI"]
    cat2, cat1 = build_catalog(6, fam2), build_catalog(6, fam1)
    bad = []
    for seed in range(samples):
        tup = sample_sl2_tuple(seed, 6)
        bad += [r.label() for r in cat2 + cat1 if not specialize_relation_check(r, tup, 1)]
    return not bad, f"{len(cat2)} type II + {len(cat1)} type I instances x {samples} tuples at q=1; {len(bad)} nonzero"


def criterion_6():
    details, ok = [], True
    basis = enumerate_profile_basis((1,) * 6)
    targets = targets_1_6()
    ok &= len(basis) == 15 and sorted(basis) == sorted(targets)
    mons = [parse_poly(x) for x in LISTED_PROFILES[(1,) * 6]]
    rep = spanning_triangularity_check((1,) * 6, mons, targets)
    ok &= rep["triangular"] and rep["unit_diagonal"] and not rep["offenders"]
    details.append(f"(1^6): 15 targets, {rep['shape']} triangular, unit diagonal={rep['unit_diagonal']}")
    shuffled = targets[7:] + targets[:7]
    ok &= not spanning_triangularity_check((1,) * 6, mons, shuffled)["triangular"]
    for e in LISTED_PROFILES:
        if e == (1,) * 6:
            continue
        rep = profile_report(e)
        good = rep["triangular"] and rep["unit_diagonal"] and not rep["offenders"]
        if e == (2, 1, 1, 1):
            # only two top-degree curves exist; the three monomials are independent
            # in the algebra but not modulo lower degree
            good = good and rep["rank_full"] == 3 and rep["rank_top_degree"] == 2
            details.append(f"{e}: 2 targets, rank 3 in full, 2 mod lower degree")
        else:
            good = good and len(rep["monomials"]) == len(LISTED_PROFILES[e])
            details.append(f"{e}: {len(rep['monomials'])}x{len(rep['targets'])} ok={good}")
        ok &= good
    return bool(ok), "; ".join(details)


def _window_poly(rng, n=5):
    pool = [Generator("t", (i,)) for i in range(1, n + 1)]
    pool += [Generator("s", tuple(sorted(rng.sample(range(1, n + 1), r)))) for r in (2, 2, 3) for _ in range(6)]
    terms = {}
    for _ in range(rng.randint(1, 3)):
        while True:
            w = tuple(rng.choice(pool) for _ in range(rng.randint(1, 3)))
            if sum(len(g.idx) for g in w if g.kind == "s") <= 6:
                break
        terms[w] = ScalarR({rng.randint(-3, 3): rng.choice([-2, -1, 1, 2])}, rng.randint(0, 1))
    return NCPoly(terms)


def criterion_7(samples: int = 200):
    rng = random.Random(77)
    bad_theta = bad_idem = 0
    for _ in range(samples):
        p = _window_poly(rng)
        nf = normal_form(p, 5)  # asserts a strict measure drop at every step
        bad_theta += theta_eval(nf, 5) != theta_eval(p, 5)
        bad_idem += normal_form(nf, 5) != nf
    ok = not bad_theta and not bad_idem
    return ok, f"{samples} random polynomials: theta mismatches={bad_theta}, non-idempotent={bad_idem}"


_SUBSETS = [(1,), (2,), (3,), (4,), (1, 2), (2, 3), (3, 4), (1, 3), (2, 4), (1, 4),
            (1, 2, 3), (2, 3, 4), (1, 2, 4), (1, 3, 4), (1, 2, 3, 4)]


def _rand_pair(rng, max_crossings=12):
    while True:
        ms = [Multicurve.from_subsets([rng.choice(_SUBSETS)]) for _ in range(2)]
        if len(assemble_stacked_diagram(ms, 4).crossings) <= max_crossings:
            return ms


def criterion_8():
    rng = random.Random(8)
    pert_bad = 0
    for _ in range(50):
        m1, m2 = _rand_pair(rng)
        base = stacked_product_planar([m1, m2], 4, perturb=0)
        pert_bad += any(stacked_product_planar([m1, m2], 4, perturb=k) != base for k in (1, 4))
    mirror_bad = 0
    gens = ["t1", "t3", "s12", "s13", "s24", "s34", "s123", "s234", "s134"]
    for _ in range(100):
        p = parse_poly(" + ".join(rng.choice(["1", "q", "-qb^2", "B", "v"]) + "*" +
                                  "*".join(rng.choice(gens) for _ in range(rng.randint(1, 3)))
                                  for _ in range(2)))
        mirror_bad += mirror_element(theta_eval(p, 4)) != theta_eval(mirror_poly(p), 4)
    central_bad = 0
    for _ in range(10):
        m1, m2 = _rand_pair(rng, 8)
        e = element_product(SkeinElement.basis(m1), SkeinElement.basis(m2), 4)
        for i in range(1, 5):
            t = SkeinElement.basis(Multicurve.from_subsets([[i]]))
            central_bad += element_product(t, e, 4) != element_product(e, t, 4)
        # full-size peripheral squares threaded between the other curves
        for i in range(1, 5):
            t = Multicurve.from_subsets([[i]])
            central_bad += (stacked_product_planar([t, m1], 4, shrink_peripheral=False)
                            != stacked_product_planar([m1, t], 4, shrink_peripheral=False))
    invalid = 0
    for k in list(STATS.validated):
        try:
            k.validate()
        except AssertionError:
            invalid += 1
    ok = not (pert_bad or mirror_bad or central_bad or invalid) and len(STATS.validated) > 0
    return ok, (f"{len(STATS.validated)} emitted keys re-validated ({invalid} bad); perturbation 50 pairs "
                f"({pert_bad} bad); mirror 100 polys ({mirror_bad} bad); centrality ({central_bad} bad)")


def criterion_9():
    checks = []
    for a, b, n in (("s12", "s34", 4), ("s123", "s456", 6)):
        for engine in ("chord", "planar"):
            left = theta_eval(parse_poly(f"{a}*{b}"), n, engine=engine)
            right = theta_eval(parse_poly(f"{b}*{a}"), n, engine=engine)
            checks.append(left == right and not left.is_zero())
    # the commuting families are not inputs to the engine: it never consults them
    return all(checks), f"{sum(checks)}/{len(checks)} state-sum commutations agree (chord and planar engines)"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("k", range(1, 10))
def test_criterion(k):
    t0 = time.perf_counter()
    ok, detail = CRITERIA[k - 1]()
    _record(k, ok, f"{detail} [{time.perf_counter() - t0:.1f}s]")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # report, do not hide
            ok, detail = False, f"error: {exc!r}"
        _record(k, ok, f"{detail} [{time.perf_counter() - t0:.1f}s]")
        failed += not ok
    sys.exit(1 if failed else 0)
