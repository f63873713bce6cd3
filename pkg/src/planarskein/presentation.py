"""Generators, the evaluation map into the skein algebra, and the relation catalog.

``t_S`` is the standard curve around the punctures in ``S``; ``t_i`` is the
peripheral curve around ``p_i``.  The symmetrised generators are

    s_S = sum over T in S of beta^|T| c(S - T) prod_{j in T} t_j

with ``c(empty) = -alpha``, ``c({j}) = t_j`` and ``c(U) = t_U`` otherwise.

Each catalog family is a template in slots ``1..m``.  It is instantiated at
every increasing tuple ``i_1 < ... < i_m`` of punctures and every cyclic
rotation of the slots; the families that are not symmetric under mirror
images also contribute their mirrors.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .expr import parse_poly
from .multicurve import Multicurve
from .ncpoly import Generator, NCPoly, gen
from .ring import ALPHA, BETA, ONE, ScalarR
from .skein import STATS, SkeinElement, element_product, stacked_product_planar

__all__ = [
    "Generator",
    "NCPoly",
    "gen",
    "subset_s_element",
    "generator_image",
    "theta_eval",
    "FAMILIES",
    "RelationInstance",
    "build_catalog",
    "verify_relation",
    "verify_instance",
    "report_record",
    "report_line",
    "mirror_poly",
    "instantiate",
    "family_poly",
]


@lru_cache(maxsize=None)
def _s_terms(S: tuple) -> tuple:
    """``s_S`` as a tuple of (list of subsets, coefficient)."""
    out: dict = {}
    S = tuple(sorted(S))
    for r in range(len(S) + 1):
        for T in combinations(S, r):
            rest = tuple(j for j in S if j not in T)
            coeff = BETA ** r
            subsets = [(j,) for j in T]
            if not rest:
                coeff = -ALPHA * coeff
            else:
                subsets.append(rest)
            key = Multicurve.from_subsets(subsets)
            out[key] = out.get(key, ScalarR(0)) + coeff
    return tuple((k, c) for k, c in out.items() if not c.is_zero())


def subset_s_element(S: Iterable[int]) -> SkeinElement:
    S = tuple(sorted(S))
    if len(S) < 2 or len(set(S)) != len(S):
        raise ValueError(f"s needs at least two distinct indices, got {S}")
    return SkeinElement(dict(_s_terms(S)))


def generator_image(g: Generator) -> SkeinElement:
    if g.kind == "t":
        return SkeinElement.basis(Multicurve.standard(g.idx))
    return subset_s_element(g.idx)


def _check_n(p: NCPoly, n: int) -> None:
    if p.max_index() > n:
        raise ValueError(f"index {p.max_index()} exceeds n={n}")


def theta_eval(p: NCPoly, n: int, engine: str = "chord", flip: bool | None = None,
               cap: int | None = None) -> SkeinElement:
    """Image of ``p`` in the skein algebra of the n-punctured disk.

    ``engine="chord"`` multiplies generator images one at a time (with a
    prefix cache); ``engine="planar"`` expands every word into stacked
    diagrams of standard multicurves and resolves each diagram at once.
    """
    _check_n(p, n)
    if engine == "chord":
        return _theta_chord(p, n, flip, cap)
    if engine == "planar":
        return _theta_planar(p, n, flip, cap)
    raise ValueError(f"unknown engine {engine!r}")


def _theta_chord(p, n, flip, cap) -> SkeinElement:
    prefix: dict = {(): SkeinElement.one()}

    def image(word):
        hit = prefix.get(word)
        if hit is None:
            hit = element_product(image(word[:-1]), generator_image(word[-1]), n, flip=flip, cap=cap)
            prefix[word] = hit
        return hit

    out = SkeinElement()
    for w, c in p.terms.items():
        out = out + image(w).scale(c)
    return out


def _theta_planar(p, n, flip, cap) -> SkeinElement:
    out = SkeinElement()
    for w, c in p.terms.items():
        # expand each generator into standard multicurves, keep factors separate
        combos = [([], ONE)]
        for g in w:
            img = generator_image(g)
            combos = [(fs + [m], cf * c2) for fs, cf in combos for m, c2 in img.terms.items()]
        for factors, cf in combos:
            factors = [f for f in factors if not f.is_empty()]
            if not factors:
                term = SkeinElement.one()
            else:
                term = stacked_product_planar(factors, n, flip=flip, cap=cap)
            out = out + term.scale(cf * c)
    return out


# ---------------------------------------------------------------------------
# relation catalog

@dataclass(frozen=True)
class Family:
    name: str
    arity: int
    template: str
    mirrored: bool = False
    group: str = ""


_F = Family

FAMILIES: dict = {f.name: f for f in [
    # central peripheral curves
    _F("COMM_T_CENTRAL_1", 2, "t1*t2 - t2*t1", group="central"),
    _F("COMM_T_CENTRAL_2", 2, "t1*s12 - s12*t1", group="central"),
    _F("COMM_T_CENTRAL_3", 3, "t1*s23 - s23*t1", group="central"),
    _F("COMM_T_CENTRAL_4", 3, "t1*s123 - s123*t1", group="central"),
    _F("COMM_T_CENTRAL_5", 4, "t1*s234 - s234*t1", group="central"),
    # disjoint or nested supports commute
    _F("COMM_DISJ_22", 4, "s34*s12 - s12*s34", group="commuting"),
    _F("COMM_DISJ_23", 5, "s345*s12 - s12*s345", group="commuting"),
    _F("COMM_DISJ_33", 6, "s123*s456 - s456*s123", group="commuting"),
    # commutators
    _F("COMM22_1", 3, "q*s23*s12 - qb*s12*s23 - (q - qb)*(s22*s13 + t2*s123)", group="commutator"),
    _F("COMM22_2", 4, "s24*s13 - s13*s24 - (q^2 - qb^2)*(s14*s23 - s12*s34)", group="commutator"),
    _F("COMM23_1", 3, "s123*s12 - s12*s123 - (q - qb)*B*(q*t2*(s12*s13 - s11*s23 - t1*s123)"
                      " - qb*t1*(s12*s23 - s22*s13 - t2*s123))", group="commutator"),
    _F("COMM23_2", 4, "q*s234*s12 - qb*s12*s234 - (q - qb)*(s22*s134"
                      " + B*t2*(s13*s24 + (1 - q^2)*s12*s34 - qb^2*s14*s23))", group="commutator"),
    _F("COMM23_3", 4, "qb*s134*s12 - q*s12*s134 - (qb - q)*(s11*s234"
                      " + B*t1*(s13*s24 + (1 - q^2)*s12*s34 - qb^2*s14*s23))", group="commutator"),
    _F("COMM23_4", 4, "s124*s13 - s13*s124 - (q - qb)*(qb*s14*s123 - q*s12*s134 + (q - qb)*s11*s234"
                      " + B*t1*((q - qb)*s13*s24 + (q - qb - q^3)*s12*s34 + (q - qb + qb^3)*s14*s23))",
       group="commutator"),
    _F("COMM23_5", 5, "s245*s13 - s13*s245 - (q^2 - qb^2)*(s23*s145 - s12*s345)", group="commutator"),
    # type II
    _F("TYPEII_1", 5, "q^2*s15*s234 - s25*s134 + s35*s124 - qb^2*s45*s123"
                      " - (q - qb)*(qb*s12*s345 + q*s34*s125)", group="typeII"),
    _F("TYPEII_2", 4, "q^2*s12*s134 - s13*s124 + qb^2*s14*s123 - (q^2 + qb^2 - 1)*s11*s234"
                      " - (q - qb)^2*B*t1*(s13*s24 - q^2*s12*s34 - qb^2*s14*s23)", group="typeII"),
    # type I, no overlap
    _F("TYPEI_NOX_1", 6, "s24*s36*s15 - s13*s25*s46 - (a*(s234*s156 - s123*s456)"
                         " + (q^2 - qb^2)*(s23*s46*s15 - s56*s13*s24) + q^2*(s16*s24*s35 - s12*s35*s46)"
                         " + qb^2*(s34*s15*s26 - s45*s26*s13) + qb^4*(s12*s36*s45 - s16*s25*s34)"
                         " + (q^2 - qb^2)^2*(s12*s34*s56 - s16*s23*s45))", True, "typeI"),
    _F("TYPEI_NOX_2", 6, "s14*s25*s36 - (q^3 + qb^3)*s123*s456 - (qb^2*(s24*s36*s15 + s35*s14*s26)"
                         " - s34*s15*s26 - s16*s24*s35 + qb^6*s16*s25*s34"
                         " + (1 - qb^2)*(s13*s25*s46 + s45*s26*s13 - q^2*s12*s35*s46 - qb^2*s23*s46*s15)"
                         " + (q^4 - 2*q^2 + 2*qb^2 - qb^6)*s12*s34*s56"
                         " + (2 - q^2 - qb^4)*(s56*s13*s24 + s16*s23*s45)"
                         " + (q^2 + qb^4 - 2*qb^2)*(s14*s23*s56 + s12*s36*s45))", True, "typeI"),
    _F("TYPEI_NOX2_1", 6, "a*s124*s356 - (s13*s25*s46 + qb^2*(s34*s26*s15 - s23*s15*s46 - s45*s13*s26)"
                          " + qb^4*s16*s23*s45 - s16*s34*s25"
                          " + (q^2 - 1)*(a*s123*s456 + (q^2 - 1 + qb^4)*s12*s34*s56 - s12*s35*s46"
                          " - s56*s13*s24 + qb^2*(s12*s36*s45 + s56*s14*s23)))", True, "typeI"),
    _F("TYPEI_NOX2_2", 6, "a*s135*s246 - (q^2*s14*s25*s36 + (q^2 + q^4 - q^6)*s12*s34*s56 - s16*s25*s34"
                          " + (2*q^4 - 2*q^2 + 2*qb^2 - 1)*s16*s23*s45"
                          " + (1 - qb^2 - q^4)*(s14*s23*s56 + s12*s36*s45)"
                          " + (1 - q^2)*(q^2*a*s123*s456 - q^2*(s12*s35*s46 + s56*s13*s24)"
                          " + s13*s25*s46 + s23*s46*s15 + s45*s26*s13 - qb*a*s34*s15*s26))", True, "typeI"),
    # type I, one shared puncture
    _F("TYPEI_OV1_1", 5, "a*s123*s345 - (s13*s24*s35 + qb^2*(s14*s25*s33 - s13*s25*s34 - s14*s23*s35)"
                         " + qb^4*(s15*s23*s34 - s15*s24*s33) + (1 - q^2)*s33*s12*s45"
                         " + (qb^2 - 1)*t3*(s13*s245 - qb^2*s23*s145 + (q^2 - 1)*s45*s123))", True, "typeI"),
    _F("TYPEI_OV1_2", 5, "a*s135*s234 - (s13*s25*s34 - s25*s14*s33 + s35*s14*s23 - q^2*s35*s12*s34"
                         " + qb^2*(s45*s12*s33 - s45*s13*s23) + (1 - qb^2)*s33*s15*s24"
                         " + (q^2 - 1)*t3*(s34*s125 - qb^2*s23*s145 + (qb^2 - 1)*s15*s234))", True, "typeI"),
    _F("TYPEI_OV1_3", 5, "a*s134*s235 - (s13*s24*s35 + q^2*(s33*s12*s45 - s12*s34*s35 - s13*s23*s45)"
                         " + qb^2*(s15*s23*s34 - s33*s15*s24) + (1 - qb^2)*s33*s14*s25"
                         " + (1 - qb^2)*t3*(s23*s145 + q^2*s45*s123 + s134*s25))", True, "typeI"),
    # type I, two shared punctures
    _F("TYPEI_OV2_1", 4, "a*s123*s234 - (qb^2*(s12*s23*s34 - s14*s23^2 + s22*s33*s14 - s33*s12*s24)"
                         " + s23*s13*s24 + (1 - q^2 - qb^2)*s22*s13*s34"
                         " + (q^2 - 1)*t2*(s34*s123 - s33*s124 - s13*s234)"
                         " + (1 - qb^2)*t3*(s12*s234 - s22*s134)"
                         " + q^2*(q - qb)^2*B*t2*t3*s12*s34)", True, "typeI"),
    _F("TYPEI_OV2_2", 4, "a*s123*s134 - ((q^4 - q^2 + 1)*s11*s23*s34 - s11*s24*s33 + s13^2*s24"
                         " - q^4*s12*s13*s34 + s12*s14*s33 - qb^2*s13*s14*s23"
                         " + (q^2 - 1)*t1*(qb^2*s23*s134 + q^4*s34*s123 + (q^2 - q^4 - qb^2)*s33*s124)"
                         " + (q^2 - 1)*t3*(s11*s234 - s12*s134)"
                         " - (q^2 - 1)^2*B*t1*t3*((q^2 - qb^2)*(s13*s24 - qb^2*s14*s23)"
                         " + (1 + q^2 - q^4)*s12*s34))", True, "typeI"),
    # type I, three shared punctures
    _F("TYPEI_OV3", 3, "a*s123^2 - (qb*a*s12*s23*s13 + s11*s22*s33 - q^2*s11*s23^2 - qb^2*s22*s13^2"
                       " - qb^2*s33*s12^2 + (qb^2 - 1)*(q^2*t1*s23 - t2*s13 - t3*s12"
                       " - (q - qb)^2*B*t1*t2*t3)*s123 + (q - qb)^2*B*(t2*t3*s11*s23 + t1*t3*s22*s13"
                       " - qb^2*t1*t2*s33*s12 + qb*a*t1*t2*s23*s13))", True, "typeI"),
    # auxiliary identities used along the way
    _F("AUX_2200", 4, "s13*s24 - q^2*s12*s34 - qb^2*s23*s14 - a*s1234", group="aux"),
    _F("AUX_1234", 4, "s1234 - B*(s13*s24 - q^2*s12*s34 - qb^2*s23*s14)", group="aux"),
    _F("AUX_2300", 5, "s13*s245 - q^2*s12*s345 - qb^2*s23*s145 - s123*s45 - a*s12345", group="aux"),
    _F("AUX_EX3", 3, "t123^2 - (q*t13*t23*t12 + a^2 - (t1^2 + t2^2 + t3^2)"
                     " - (t1*t2*t3 + qb*t1*t23 + q*t2*t13 + q*t3*t12)*t123"
                     " - (qb*t2*t3*t23 + q*t1*t3*t13 + q*t1*t2*t12)"
                     " - (qb^2*t23^2 + q^2*t13^2 + q^2*t12^2))", group="aux"),
]}


@lru_cache(maxsize=None)
def family_poly(name: str) -> NCPoly:
    return parse_poly(FAMILIES[name].template)


@dataclass(frozen=True)
class RelationInstance:
    family: str
    indices: tuple
    rotation: int
    mirrored: bool
    poly: NCPoly

    def label(self) -> str:
        m = "~" if self.mirrored else ""
        return f"{self.family}{m}{list(self.indices)}@{self.rotation}"


def instantiate(name: str, indices: Sequence[int], rotation: int = 0, mirrored: bool = False) -> RelationInstance:
    fam = FAMILIES[name]
    m = fam.arity
    if len(indices) != m or list(indices) != sorted(set(indices)):
        raise ValueError(f"{name} needs {m} increasing indices, got {indices}")
    tup = tuple(indices)
    poly = family_poly(name).relabel(lambda j: tup[(j - 1 + rotation) % m])
    if mirrored:
        poly = poly.mirror()
    return RelationInstance(name, tup, rotation, mirrored, poly)


def build_catalog(n: int, families: Iterable[str] | None = None) -> list:
    """All instances of the chosen families inside the n-punctured disk."""
    names = list(FAMILIES) if families is None else list(families)
    out = []
    for name in names:
        if name not in FAMILIES:
            raise KeyError(f"unknown family {name!r}")
        fam = FAMILIES[name]
        for tup in combinations(range(1, n + 1), fam.arity):
            for rot in range(fam.arity):
                out.append(instantiate(name, tup, rot))
                if fam.mirrored:
                    out.append(instantiate(name, tup, rot, True))
    return out


def verify_relation(r: RelationInstance, n: int, engine: str = "chord", flip: bool | None = None,
                    cap: int | None = None) -> SkeinElement:
    """Residual of a relation instance; zero means it holds."""
    return theta_eval(r.poly, n, engine=engine, flip=flip, cap=cap)


def verify_instance(r: RelationInstance, n: int, engine: str = "chord", flip: bool | None = None,
                    cap: int | None = None) -> dict:
    """Verify one instance and return its report record."""
    STATS.peak = 0
    t0 = time.perf_counter()
    residual = verify_relation(r, n, engine=engine, flip=flip, cap=cap)
    millis = int((time.perf_counter() - t0) * 1000)
    return report_record(r, residual, STATS.peak, millis)


def report_record(r: RelationInstance, residual: SkeinElement, crossings_max: int = 0,
                  millis: int = 0) -> dict:
    return {
        "family": r.family,
        "indices": list(r.indices),
        "rotation": r.rotation,
        "mirrored": r.mirrored,
        "ok": residual.is_zero(),
        "residual_terms": len(residual.terms),
        "crossings_max": crossings_max,
        "millis": millis,
    }


def report_line(record: dict) -> str:
    return json.dumps(record)


def mirror_poly(p: NCPoly) -> NCPoly:
    """Mirror image: reverse every word and send v to 1/v."""
    return p.mirror()
