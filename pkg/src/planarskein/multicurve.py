"""Multicurves in the punctured disk, encoded on a cut system of rays.

Each puncture ``p_v = (v, 0)`` sends a vertical ray upward to the outer
boundary.  Cutting along all rays leaves a disk; a multicurve in minimal
position with the rays becomes a non-crossing family of arcs in that disk,
glued back across the rays.  The gluing data is a complete isotopy invariant,
so the canonical key of a :class:`Multicurve` is

``(peripheral counts, points per ray, partner of every boundary point)``.

Boundary points of the cut disk are listed clockwise: for each ray ``v`` the
left side from top to bottom, then the right side from bottom to top.  A
point is labelled ``(v, side, rank)`` with ``side`` 0 (left) or 1 (right) and
``rank`` 0 nearest the puncture.  Ray indices inside this module are 0-based;
everything public speaks in 1-based puncture numbers.

Curves around a single puncture are central and carry no arcs, so they are
kept as a count per puncture (``peripheral``).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

Label = tuple  # (ray, side, rank)


def _trim(t: Sequence[int]) -> tuple:
    t = list(t)
    while t and t[-1] == 0:
        t.pop()
    return tuple(t)


@lru_cache(maxsize=None)
def layout(counts: tuple) -> tuple[tuple, dict]:
    """Return (labels by position, position by label) for a points-per-ray tuple."""
    labels = []
    for v, k in enumerate(counts):
        labels.extend((v, 0, r) for r in range(k - 1, -1, -1))
        labels.extend((v, 1, r) for r in range(k))
    return tuple(labels), {lab: i for i, lab in enumerate(labels)}


def is_noncrossing(partner: Sequence[int]) -> bool:
    stack: list[int] = []
    for i, j in enumerate(partner):
        if j > i:
            stack.append(i)
        else:
            if not stack or stack[-1] != j:
                return False
            stack.pop()
    return not stack


def reduce_matching(counts: list, partner: dict):
    """Put a glued arc family into minimal position with the rays.

    ``partner`` maps labels to labels and is consumed.  Returns
    ``(counts, partner, peripheral, trivial_loops)``.
    """
    counts = list(counts)
    peripheral = [0] * len(counts)
    loops = 0
    changed = True
    while changed:
        changed = False
        # bigons: an arc joining ranks r, r+1 on one side of a ray
        for v, k in enumerate(counts):
            hit = None
            for side in (0, 1):
                for r in range(k - 1):
                    if partner[(v, side, r)] == (v, side, r + 1):
                        hit = (side, r)
                        break
                if hit:
                    break
            if not hit:
                continue
            side, r = hit
            o1, o2 = (v, 1 - side, r), (v, 1 - side, r + 1)
            p1, p2 = partner[o1], partner[o2]
            for lab in ((v, side, r), (v, side, r + 1), o1, o2):
                del partner[lab]
            if p1 == o2:
                loops += 1
            else:
                partner[p1] = p2
                partner[p2] = p1
            partner = _drop_ranks(partner, v, r, 2)
            counts[v] -= 2
            changed = True
            break
        if changed:
            continue
        # curves around a single puncture sit at rank 0 once bigons are gone
        for v, k in enumerate(counts):
            if k and partner[(v, 0, 0)] == (v, 1, 0):
                del partner[(v, 0, 0)]
                del partner[(v, 1, 0)]
                partner = _drop_ranks(partner, v, 0, 1)
                counts[v] -= 1
                peripheral[v] += 1
                changed = True
                break
    return counts, partner, peripheral, loops


def _drop_ranks(partner: dict, v: int, r: int, width: int) -> dict:
    def f(lab):
        if lab[0] == v and lab[2] > r:
            return (v, lab[1], lab[2] - width)
        return lab

    return {f(a): f(b) for a, b in partner.items()}


def _canon_word(w: tuple) -> tuple:
    if not w:
        return w
    inv = tuple(-x for x in reversed(w))
    cands = []
    for ww in (w, inv):
        neg = sum(1 for x in ww if x < 0)
        for i in range(len(ww)):
            cands.append((neg, ww[i:] + ww[:i]))
    return min(cands)[1]


class Multicurve:
    """Isotopy class of a multicurve (possibly empty) in the punctured disk."""

    __slots__ = ("peripheral", "counts", "partner", "_hash", "_cache")

    def __init__(self, peripheral: Sequence[int], counts: Sequence[int], partner: Sequence[int]):
        self.peripheral = _trim(peripheral)
        counts = tuple(counts)
        self.counts = _trim(counts)
        self.partner = tuple(partner)
        self._hash = hash((self.peripheral, self.counts, self.partner))
        self._cache: dict = {}

    # -- construction ------------------------------------------------------
    @classmethod
    def empty(cls) -> "Multicurve":
        return cls((), (), ())

    @classmethod
    def from_labels(cls, counts: Sequence[int], partner: dict, peripheral: Sequence[int] = ()):
        """Build from a label matching, reducing to minimal position.

        Returns ``(multicurve, trivial_loops)``.
        """
        counts, partner, per, loops = reduce_matching(list(counts), dict(partner))
        per = list(per)
        for v, c in enumerate(peripheral):
            if v >= len(per):
                per.extend([0] * (v + 1 - len(per)))
            per[v] += c
        tc = _trim(counts)
        labels, _ = layout(tc)
        _, pos = layout(tc)
        pt = tuple(pos[partner[lab]] for lab in labels)
        return cls(per, tc, pt), loops

    @classmethod
    def from_subsets(cls, subsets: Iterable[Iterable[int]]) -> "Multicurve":
        """Multicurve whose components are the standard curves around each subset.

        The subsets must be pairwise compatible (see :func:`compatible`).
        """
        sets = [tuple(sorted(set(s))) for s in subsets]
        for s in sets:
            if not s or s[0] < 1:
                raise ValueError(f"bad puncture subset {s}")
        for a in range(len(sets)):
            for b in range(a + 1, len(sets)):
                if not compatible(sets[a], sets[b]):
                    raise ValueError(f"subsets {sets[a]} and {sets[b]} are not compatible")
        n = max((s[-1] for s in sets), default=0)
        peripheral = [0] * n
        big = [s for s in sets if len(s) >= 2]
        for s in sets:
            if len(s) == 1:
                peripheral[s[0] - 1] += 1
        counts = [0] * n
        rank: dict = {}
        for v in range(1, n + 1):
            on = sorted((len(s), s, c) for c, s in enumerate(big) if v in s)
            counts[v - 1] = len(on)
            for r, (_, _, c) in enumerate(on):
                rank[(c, v)] = r
        partner = {}
        for c, s in enumerate(big):
            for j in range(len(s)):
                a, b = s[j], s[(j + 1) % len(s)]
                x, y = (a - 1, 1, rank[(c, a)]), (b - 1, 0, rank[(c, b)])
                partner[x] = y
                partner[y] = x
        tc = tuple(counts)
        labels, pos = layout(tc)
        pt = [pos[partner[lab]] for lab in labels]
        if not is_noncrossing(pt):
            raise AssertionError(f"laminar embedding of {sets} crosses itself")
        m, loops = cls.from_labels(tc, {labels[i]: labels[j] for i, j in enumerate(pt)}, peripheral)
        if loops or m.total_points() != len(pt) // 2:
            raise AssertionError(f"laminar embedding of {sets} is not minimal")
        return m

    @classmethod
    def standard(cls, subset: Iterable[int]) -> "Multicurve":
        return cls.from_subsets([subset])

    # -- basic protocol ------------------------------------------------------
    @property
    def key(self) -> tuple:
        return (self.peripheral, self.counts, self.partner)

    def __eq__(self, other) -> bool:
        return isinstance(other, Multicurve) and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (Multicurve, (self.peripheral, self.counts, self.partner))

    def labels(self) -> tuple:
        return layout(self.counts)[0]

    def label_partner(self) -> dict:
        labels = self.labels()
        return {labels[i]: labels[j] for i, j in enumerate(self.partner)}

    def total_points(self) -> int:
        return sum(self.counts)

    def is_empty(self) -> bool:
        return not self.counts and not self.peripheral

    def max_puncture(self) -> int:
        return max(len(self.counts), len(self.peripheral))

    def core(self) -> "Multicurve":
        """The multicurve with its peripheral components removed."""
        return Multicurve((), self.counts, self.partner)

    def with_peripheral(self, extra: Sequence[int]) -> "Multicurve":
        n = max(len(self.peripheral), len(extra))
        per = [0] * n
        for i, c in enumerate(self.peripheral):
            per[i] += c
        for i, c in enumerate(extra):
            per[i] += c
        return Multicurve(per, self.counts, self.partner)

    # -- components ------------------------------------------------------------
    def components(self) -> tuple:
        """Non-peripheral components, each as a single-component Multicurve."""
        if "components" in self._cache:
            return self._cache["components"]
        lp = self.label_partner()
        seen: set = set()
        comps = []
        for lab in self.labels():
            if lab in seen or lab[1] != 0:
                continue
            group = []
            cur = lab
            while True:
                seen.add(cur)
                group.append(cur)
                nxt = lp[cur]
                seen.add(nxt)
                cur = (nxt[0], 1 - nxt[1], nxt[2])
                if cur == lab:
                    break
            comps.append(group)
        out = []
        for group in comps:
            pts = sorted({(l[0], l[2]) for l in group} | {(lp[l][0], lp[l][2]) for l in group})
            counts = [0] * len(self.counts)
            newrank = {}
            for v, r in pts:
                newrank[(v, r)] = counts[v]
                counts[v] += 1
            sub = {}
            for l in group:
                a = (l[0], l[1], newrank[(l[0], l[2])])
                m = lp[l]
                b = (m[0], m[1], newrank[(m[0], m[2])])
                sub[a] = b
                sub[b] = a
            tc = _trim(counts)
            labels, pos = layout(tc)
            out.append(Multicurve((), tc, tuple(pos[sub[x]] for x in labels)))
        out.sort(key=lambda m: (len(m.word()), m.word()))
        res = tuple(out)
        self._cache["components"] = res
        return res

    def word(self) -> tuple:
        """Canonical free-group word of a single-component multicurve.

        Crossing ray ``v`` left-to-right reads ``v``, right-to-left reads ``-v``.
        A standard curve around ``{i1 < ... < ir}`` reads ``(i1, ..., ir)``.
        """
        if "word" in self._cache:
            return self._cache["word"]
        lp = self.label_partner()
        labels = self.labels()
        if not labels:
            raise ValueError("word() needs a non-peripheral single component")
        start = next(l for l in labels if l[1] == 0)
        w = []
        cur = start
        while True:
            nxt = lp[cur]
            w.append(nxt[0] + 1 if nxt[1] == 0 else -(nxt[0] + 1))
            cur = (nxt[0], 1 - nxt[1], nxt[2])
            if cur == start:
                break
        if len(w) * 2 != len(labels):
            raise ValueError("word() needs a single component")
        res = _canon_word(tuple(w))
        self._cache["word"] = res
        return res

    def words(self) -> list:
        """Component words, peripheral curves included as one-letter words."""
        out = []
        for v, c in enumerate(self.peripheral):
            out.extend([(v + 1,)] * c)
        out.extend(c.word() for c in self.components())
        return sorted(out, key=lambda w: (len(w), w))

    def subsets(self):
        """Component puncture sets if every component is standard, else None."""
        ws = self.words()
        for w in ws:
            if any(x < 0 for x in w) or list(w) != sorted(set(w)):
                return None
        return [tuple(w) for w in ws]

    def is_standard(self) -> bool:
        return self.subsets() is not None

    # -- gradings ------------------------------------------------------------
    def md_profile(self, n: int | None = None) -> tuple:
        n = max(n or 0, self.max_puncture())
        return tuple(
            (self.counts[v] if v < len(self.counts) else 0)
            + (self.peripheral[v] if v < len(self.peripheral) else 0)
            for v in range(n)
        )

    def reduced_degree(self) -> int:
        return self.total_points()

    # -- checks ----------------------------------------------------------------
    def validate(self) -> None:
        """Assert the key describes a multicurve in minimal position."""
        labels, pos = layout(self.counts)
        if len(self.partner) != len(labels):
            raise AssertionError("partner length mismatch")
        for i, j in enumerate(self.partner):
            if self.partner[j] != i or i == j:
                raise AssertionError("partner is not an involution")
            a, b = labels[i], labels[j]
            if a[0] == b[0] and a[1] == b[1]:
                raise AssertionError(f"arc with both ends on one side of ray {a[0] + 1}")
        if not is_noncrossing(self.partner):
            raise AssertionError("arcs cross")
        for v, k in enumerate(self.counts):
            if k and self.partner[pos[(v, 0, 0)]] == pos[(v, 1, 0)]:
                raise AssertionError("unstripped peripheral component")
        subs = self.subsets()
        if subs is not None:
            for a in range(len(subs)):
                for b in range(a + 1, len(subs)):
                    if not compatible(subs[a], subs[b]):
                        raise AssertionError(f"incompatible components {subs[a]}, {subs[b]}")

    # -- display ---------------------------------------------------------------
    def sort_key(self) -> tuple:
        return (self.total_points(), tuple(self.words()))

    def __lt__(self, other: "Multicurve") -> bool:
        return self.sort_key() < other.sort_key()

    def name(self) -> str:
        ws = self.words()
        if not ws:
            return "1"
        parts = []
        for w in ws:
            if all(x > 0 for x in w) and list(w) == sorted(set(w)):
                parts.append("t" + ("".join(map(str, w)) if max(w) < 10 else "[" + ",".join(map(str, w)) + "]"))
            else:
                parts.append("c(" + " ".join(map(str, w)) + ")")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Multicurve<{self.name()}>"

    def to_json(self):
        return [list(w) for w in self.words()]


def compatible(s: Iterable[int], t: Iterable[int]) -> bool:
    """True iff standard curves around ``s`` and ``t`` can be made disjoint."""
    s, t = set(s), set(t)
    if s <= t or t <= s:
        return True
    if s & t:
        return False
    merged = sorted([(x, 0) for x in s] + [(x, 1) for x in t])
    tags = [g for _, g in merged]
    # an interleaving a<b<c<d alternates at least three times
    changes = sum(1 for i in range(1, len(tags)) if tags[i] != tags[i - 1])
    return changes < 3


EMPTY = Multicurve.empty()
