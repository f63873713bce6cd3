"""The skein algebra of the punctured disk in the multicurve basis.

Two independent product engines are available:

* ``"chord"`` (default) cuts along the rays and smooths crossings between
  chord families (:mod:`planarskein.chord`);
* ``"planar"`` embeds standard curves as exact rational polygons, finds the
  crossings geometrically and resolves them (:func:`kauffman_resolve`).

Both feed their smoothed states through the same minimal-position reduction.
The smoothing convention is fixed by :mod:`planarskein.calibration`.
"""

from __future__ import annotations

import os
import threading
from typing import Iterable, Mapping, Sequence

from . import chord
from .geometry import StackedDiagram, assemble_stacked_diagram
from .multicurve import EMPTY, Multicurve, compatible, layout
from .ring import ONE, ZERO, HalfLaurent, ScalarR

__all__ = [
    "SkeinElement",
    "basis_product",
    "element_product",
    "kauffman_resolve",
    "stacked_product_planar",
    "md_profile",
    "reduced_degree",
    "mirror_element",
    "compatible",
    "STATS",
    "crossing_cap",
]

DEFAULT_CAP = 24


def crossing_cap(cap: int | None = None) -> int:
    """Explicit cap, else ``SKEIN_CROSSING_CAP``, else 24."""
    if cap is not None:
        return cap
    env = os.environ.get("SKEIN_CROSSING_CAP")
    return int(env) if env else DEFAULT_CAP


class _Stats:
    """Counters shared by both engines (used by invariant tests)."""

    def __init__(self):
        self.lock = threading.Lock()
        self.reset()

    def reset(self):
        self.states = 0
        self.expected_states = 0
        self.validated: set = set()
        self.max_crossings = 0
        self.peak = 0

    def record(self, crossings: int, states: int):
        with self.lock:
            self.states += states
            self.expected_states += 1 << crossings
            self.max_crossings = max(self.max_crossings, crossings)

    def touch(self, crossings: int):
        """Track the largest crossing count seen since ``peak`` was last zeroed."""
        if crossings > self.peak:
            self.peak = crossings


STATS = _Stats()


def _validate_keys(keys: Iterable[Multicurve]) -> None:
    for k in keys:
        if k not in STATS.validated:
            k.validate()
            STATS.validated.add(k)


class SkeinElement:
    """Finite R-linear combination of multicurves."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Multicurve, ScalarR] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def basis(cls, m: Multicurve, coeff: ScalarR = ONE) -> "SkeinElement":
        return cls({m: coeff})

    @classmethod
    def one(cls) -> "SkeinElement":
        return cls({EMPTY: ONE})

    @classmethod
    def scalar(cls, c: ScalarR) -> "SkeinElement":
        return cls({EMPTY: c})

    @classmethod
    def from_subsets(cls, subsets: Iterable[Iterable[int]], coeff: ScalarR = ONE) -> "SkeinElement":
        return cls({Multicurve.from_subsets(subsets): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return isinstance(other, SkeinElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "SkeinElement") -> "SkeinElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return SkeinElement(out)

    def __neg__(self) -> "SkeinElement":
        return SkeinElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "SkeinElement") -> "SkeinElement":
        return self + (-other)

    def scale(self, c: ScalarR) -> "SkeinElement":
        return SkeinElement({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SkeinElement):
            return element_product(self, other)
        if isinstance(other, (ScalarR, int)):
            return self.scale(ScalarR._coerce(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (ScalarR, int)):
            return self.scale(ScalarR._coerce(other))
        return NotImplemented

    def mirror(self) -> "SkeinElement":
        return SkeinElement({k: v.mirror() for k, v in self.terms.items()})

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def max_reduced_degree(self) -> int:
        return max((k.reduced_degree() for k in self.terms), default=0)

    def to_json(self) -> dict:
        out = []
        for k, v in self.sorted_terms():
            entry = {"multicurve": k.to_json(), "coeff": v.to_json()}
            if not k.is_standard():
                entry["key"] = [list(k.peripheral), list(k.counts), list(k.partner)]
            out.append(entry)
        return {"terms": out}

    @classmethod
    def from_json(cls, obj: dict) -> "SkeinElement":
        terms = {}
        for entry in obj["terms"]:
            if "key" in entry:
                per, counts, partner = entry["key"]
                m = Multicurve(per, counts, partner)
            else:
                m = Multicurve.from_subsets(entry["multicurve"])
            terms[m] = ScalarR.from_json(entry["coeff"])
        return cls(terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, v in self.sorted_terms():
            c = repr(v)
            if " " in c:
                c = f"({c})"
            parts.append(k.name() if c == "1" else f"{c}*{k.name()}")
        return " + ".join(parts)


def _poly_to_scalar(poly: Mapping[int, int]) -> ScalarR:
    return ScalarR(HalfLaurent(poly))


# ---------------------------------------------------------------------------
# chord engine

_MEMO: dict = {}
_MEMO_LOCK = threading.Lock()


def _flip() -> bool:
    from .calibration import current_flip

    return current_flip()


def _stack(top: Multicurve, bottom: Multicurve, flip: bool, cap: int) -> dict:
    key = ("stack", top, bottom, flip)
    hit = _MEMO.get(key)
    if hit is not None:
        STATS.touch(hit[1])
        return hit[0]
    ncross = chord.crossing_count(top, bottom)
    STATS.touch(ncross)
    if ncross > cap:
        raise chord.CrossingCapExceeded(ncross, cap)
    terms, states = chord.stack_product(top, bottom, flip)
    STATS.record(ncross, states)
    _validate_keys(terms)
    res = {k: _poly_to_scalar(p) for k, p in terms.items()}
    with _MEMO_LOCK:
        _MEMO[key] = (res, ncross)
    return res


def basis_product(m1: Multicurve, m2: Multicurve, n: int | None = None, *, flip: bool | None = None,
                  cap: int | None = None) -> SkeinElement:
    """Product ``m1 * m2`` (``m1`` drawn above ``m2``) in the multicurve basis."""
    if n is not None and max(m1.max_puncture(), m2.max_puncture()) > n:
        raise ValueError(f"multicurve uses punctures beyond n={n}")
    flip = _flip() if flip is None else flip
    cap = crossing_cap(cap)
    key = ("basis", m1, m2, flip)
    hit = _MEMO.get(key)
    if hit is not None:
        STATS.touch(hit[1])
        return hit[0]
    outer_peak, STATS.peak = STATS.peak, 0
    # peripheral curves are central: factor them out
    per = [0] * max(len(m1.peripheral), len(m2.peripheral))
    for i, c in enumerate(m1.peripheral):
        per[i] += c
    for i, c in enumerate(m2.peripheral):
        per[i] += c
    current = {m2.core(): ONE}
    # a multicurve is the stacked product of its disjoint components
    for comp in reversed(m1.components()):
        nxt: dict = {}
        for k, c in current.items():
            for k2, c2 in _stack(comp, k, flip, cap).items():
                nxt[k2] = nxt.get(k2, ZERO) + c * c2
        current = nxt
    res = SkeinElement({k.with_peripheral(per): v for k, v in current.items()})
    local_peak = STATS.peak
    STATS.peak = max(outer_peak, local_peak)
    with _MEMO_LOCK:
        _MEMO[key] = (res, local_peak)
    return res


def element_product(e1: SkeinElement, e2: SkeinElement, n: int | None = None, **kw) -> SkeinElement:
    out: dict = {}
    for k1, c1 in e1.terms.items():
        for k2, c2 in e2.terms.items():
            for k, c in basis_product(k1, k2, n, **kw).terms.items():
                out[k] = out.get(k, ZERO) + c1 * c2 * c
    return SkeinElement(out)


def clear_memo() -> None:
    with _MEMO_LOCK:
        _MEMO.clear()


# ---------------------------------------------------------------------------
# planar engine


def kauffman_resolve(d: StackedDiagram, flip: bool | None = None, cap: int | None = None) -> SkeinElement:
    """Kauffman state sum of a generic stacked diagram of polygons."""
    flip = _flip() if flip is None else flip
    cap = crossing_cap(cap)
    c = len(d.crossings)
    if c > cap:
        raise chord.CrossingCapExceeded(c, cap)

    # events along each loop: ('x', crossing index, role) or ('r', ray, y, dir)
    per_loop: list[list] = [[] for _ in d.loops]
    for xi, cr in enumerate(d.crossings):
        per_loop[cr.upper].append((cr.upper_param, ("x", xi, 0)))
        per_loop[cr.lower].append((cr.lower_param, ("x", xi, 1)))
    for li, evs in enumerate(d.ray_events):
        for ei, t, v, y, sgn in evs:
            per_loop[li].append(((ei, t), ("r", v, y, sgn)))
    for evs in per_loop:
        evs.sort(key=lambda e: e[0])

    # rank ray crossings by height
    heights: dict = {}
    for evs in per_loop:
        for _, ev in evs:
            if ev[0] == "r":
                heights.setdefault(ev[1], []).append(ev[2])
    rank = {}
    counts = [0] * d.n
    for v, ys in heights.items():
        ys.sort()
        counts[v - 1] = len(ys)
        for r, y in enumerate(ys):
            rank[(v, y)] = r

    # pieces: maximal runs between crossings; ports 4x + {0: over in, 1: over out, 2: under in, 3: under out}
    pieces = []  # (start port or None, end port or None, ray events)
    closed = []  # loops without crossings: list of ray events
    for evs in per_loop:
        xs = [i for i, (_, ev) in enumerate(evs) if ev[0] == "x"]
        if not xs:
            closed.append([ev[1:] for _, ev in evs])
            continue
        m = len(evs)
        for a_i, start in enumerate(xs):
            end = xs[(a_i + 1) % len(xs)]
            rays = []
            j = (start + 1) % m
            while j != end:
                rays.append(evs[j][1][1:])
                j = (j + 1) % m
            sx, srole = evs[start][1][1], evs[start][1][2]
            ex, erole = evs[end][1][1], evs[end][1][2]
            pieces.append((4 * sx + 2 * srole + 1, 4 * ex + 2 * erole, rays))

    port_piece = {}
    for pi, (s, e, _) in enumerate(pieces):
        port_piece[s] = (pi, 0)  # leaving the crossing forward
        port_piece[e] = (pi, 1)  # arriving, so traversed backward when entered here

    # weight-v pairing per crossing before the flip: over end to under end next counterclockwise
    p_same = {1: 3, 3: 1, 0: 2, 2: 0}  # O+ U+, O- U-
    p_swap = {1: 2, 2: 1, 0: 3, 3: 0}  # O+ U-, O- U+
    plus, minus = [], []
    for cr in d.crossings:
        du, dl = cr.upper_dir, cr.lower_dir
        z = du[0] * dl[1] - du[1] * dl[0]
        a, b = (p_same, p_swap) if z > 0 else (p_swap, p_same)
        if flip:
            a, b = b, a
        plus.append(a)
        minus.append(b)

    labels, _ = layout(tuple(counts))

    def side_label(v, y, side):
        return (v - 1, side, rank[(v, y)])

    def arcs_of(cycle_events):
        """Arcs between consecutive ray crossings of one closed curve."""
        out = []
        k = len(cycle_events)
        for i in range(k):
            v1, y1, s1 = cycle_events[i]
            v2, y2, s2 = cycle_events[(i + 1) % k]
            a = side_label(v1, y1, 1 if s1 > 0 else 0)
            b = side_label(v2, y2, 0 if s2 > 0 else 1)
            out.append((a, b))
        return out

    base_loops = 0
    base_arcs = []
    for evs in closed:
        if evs:
            base_arcs.extend(arcs_of(evs))
        else:
            base_loops += 1

    terms: dict = {}
    memo: dict = {}
    for state in range(1 << c):
        e = 0
        pair = {}
        for x in range(c):
            on = (state >> x) & 1
            e += 1 if on else -1
            tab = plus[x] if on else minus[x]
            for k, v in tab.items():
                pair[4 * x + k] = 4 * x + v
        used = [False] * len(pieces)
        loops = base_loops
        arcs = list(base_arcs)
        for p0 in range(len(pieces)):
            if used[p0]:
                continue
            cyc = []
            pi, direction = p0, 0
            while not used[pi]:
                used[pi] = True
                s, t, rays = pieces[pi]
                if direction == 0:
                    cyc.extend(rays)
                    exit_port = t
                else:
                    cyc.extend((v, y, -sg) for v, y, sg in reversed(rays))
                    exit_port = s
                nxt_port = pair[exit_port]
                pi, how = port_piece[nxt_port]
                direction = how
            if cyc:
                arcs.extend(arcs_of(cyc))
            else:
                loops += 1
        partner = {}
        for a, b in arcs:
            partner[a] = b
            partner[b] = a
        mk = tuple(sorted(partner.items()))
        res = memo.get(mk)
        if res is None:
            res = Multicurve.from_labels(counts, partner)
            memo[mk] = res
        mc, extra = res
        bucket = terms.setdefault(mc, {})
        for de, cf in chord.loop_factor(loops + extra).items():
            bucket[e + de] = bucket.get(e + de, 0) + cf
    STATS.record(c, 1 << c)
    STATS.touch(c)
    _validate_keys(terms)
    return SkeinElement({k: _poly_to_scalar(p) for k, p in terms.items()})


def stacked_product_planar(factors: Sequence[Multicurve], n: int, perturb: int = 0, flip: bool | None = None,
                           cap: int | None = None, shrink_peripheral: bool = True) -> SkeinElement:
    """Theta of the stacked diagram of standard multicurves, first factor on top."""
    d = assemble_stacked_diagram(factors, n, perturb=perturb, cap=crossing_cap(cap),
                                 shrink_peripheral=shrink_peripheral)
    return kauffman_resolve(d, flip=flip, cap=cap)


# ---------------------------------------------------------------------------


def md_profile(m: Multicurve, n: int | None = None) -> tuple:
    return m.md_profile(n)


def reduced_degree(m: Multicurve) -> int:
    return m.reduced_degree()


def mirror_element(e: SkeinElement) -> SkeinElement:
    return e.mirror()
