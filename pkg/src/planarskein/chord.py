"""Kauffman state sum for a stacked pair of multicurves, done on chords.

After cutting along the rays, the top multicurve and the bottom multicurve
are both non-crossing chord families in one disk.  Put every top point above
every bottom point on each ray; then top chords cross bottom chords exactly
when their endpoints interleave, and no three chords meet.  Smoothing all
crossings gives a new arc family, which :func:`reduce_matching` brings back
to minimal position.
"""

from __future__ import annotations

from math import comb

from .multicurve import Multicurve, layout, reduce_matching

__all__ = ["stack_product", "crossing_count"]

_LOOP_POLY: list[dict] = []


def loop_factor(k: int) -> dict:
    """(-alpha)^k as a dict of v-exponents."""
    while len(_LOOP_POLY) <= k:
        j = len(_LOOP_POLY)
        _LOOP_POLY.append({2 * j - 4 * i: (-1) ** j * comb(j, i) for i in range(j + 1)})
    return _LOOP_POLY[k]


def _combined(top: Multicurve, bottom: Multicurve):
    n = max(len(top.counts), len(bottom.counts))
    ct = list(top.counts) + [0] * (n - len(top.counts))
    cb = list(bottom.counts) + [0] * (n - len(bottom.counts))
    counts = tuple(a + b for a, b in zip(ct, cb))
    labels, pos = layout(counts)

    def chords(m: Multicurve, shift):
        out = []
        for a, b in m.label_partner().items():
            pa = pos[(a[0], a[1], a[2] + shift[a[0]])]
            pb = pos[(b[0], b[1], b[2] + shift[b[0]])]
            if pa < pb:
                out.append((pa, pb))
        return sorted(out)

    return counts, labels, chords(top, cb), chords(bottom, [0] * n)


def crossing_count(top: Multicurve, bottom: Multicurve) -> int:
    _, _, ch_t, ch_b = _combined(top, bottom)
    return sum(1 for a in ch_t for b in ch_b if (a[0] < b[0] < a[1]) != (a[0] < b[1] < a[1]))


def stack_product(top: Multicurve, bottom: Multicurve, flip: bool = False, cap: int | None = None):
    """Resolve ``top`` stacked over ``bottom``.

    Returns ``(terms, states)`` where ``terms`` maps Multicurve to a dict of
    v-exponent -> integer, trivial-loop factors already expanded.

    Without ``flip``, the smoothing of weight ``v`` joins each end of the over
    strand to the under end next to it counterclockwise.
    """
    counts, labels, ch_t, ch_b = _combined(top, bottom)
    per = [0] * max(len(top.peripheral), len(bottom.peripheral))
    for i, c in enumerate(top.peripheral):
        per[i] += c
    for i, c in enumerate(bottom.peripheral):
        per[i] += c

    crossings = []  # (top chord idx, bottom chord idx, kind)
    along_t: list[list] = [[] for _ in ch_t]
    along_b: list[list] = [[] for _ in ch_b]
    for i, (a1, a2) in enumerate(ch_t):
        for j, (b1, b2) in enumerate(ch_b):
            in1 = a1 < b1 < a2
            in2 = a1 < b2 < a2
            if in1 == in2:
                continue
            x = len(crossings)
            # kind 0: a1 < b1 < a2 < b2; kind 1: b1 < a1 < b2 < a2
            crossings.append(0 if in1 else 1)
            along_t[i].append((b1 if in1 else b2, x))
            along_b[j].append((a1 if (b1 < a1 < b2) else a2, x))
    c = len(crossings)
    if cap is not None and c > cap:
        raise CrossingCapExceeded(c, cap)

    # node ids: ports 4x+{0: top-, 1: top+, 2: bottom-, 3: bottom+}; endpoints 4c+p
    npos = len(labels)
    seg = [0] * (4 * c + npos)

    def link(u, w):
        seg[u] = w
        seg[w] = u

    for chs, along, off in ((ch_t, along_t, 0), (ch_b, along_b, 2)):
        for (p1, p2), xs in zip(chs, along):
            xs.sort()
            prev = 4 * c + p1
            for _, x in xs:
                link(prev, 4 * x + off)
                prev = 4 * x + off + 1
            link(prev, 4 * c + p2)

    # pairing receiving weight v, before the global flip:
    #   kind 0 -> (top-, bottom+), (top+, bottom-); kind 1 -> (top-, bottom-), (top+, bottom+)
    p_cross = (3, 2, 1, 0)
    p_straight = (2, 3, 0, 1)
    plus = []
    minus = []
    for kind in crossings:
        a, b = (p_cross, p_straight) if kind == 0 else (p_straight, p_cross)
        if flip:
            a, b = b, a
        plus.append(a)
        minus.append(b)

    terms: dict = {}
    memo: dict = {}
    smooth = [0] * (4 * c)
    base = 4 * c
    for state in range(1 << c):
        e = 0
        for x in range(c):
            tab = plus[x] if (state >> x) & 1 else minus[x]
            e += 1 if (state >> x) & 1 else -1
            b4 = 4 * x
            smooth[b4] = b4 + tab[0]
            smooth[b4 + 1] = b4 + tab[1]
            smooth[b4 + 2] = b4 + tab[2]
            smooth[b4 + 3] = b4 + tab[3]
        visited = bytearray(4 * c)
        match = [0] * npos
        for p in range(npos):
            if match[p]:
                continue
            node = seg[base + p]
            while node < base:
                visited[node] = 1
                node = smooth[node]
                visited[node] = 1
                node = seg[node]
            q = node - base
            match[p] = q + 1
            match[q] = p + 1
        loops = 0
        for u in range(4 * c):
            if visited[u]:
                continue
            loops += 1
            node = u
            while not visited[node]:
                visited[node] = 1
                node = smooth[node]
                visited[node] = 1
                node = seg[node]
        mk = tuple(match)
        res = memo.get(mk)
        if res is None:
            partner = {labels[i]: labels[m - 1] for i, m in enumerate(mk)}
            res = Multicurve.from_labels(counts, partner, per)
            memo[mk] = res
        mc, extra = res
        loops += extra
        bucket = terms.setdefault(mc, {})
        for de, cf in loop_factor(loops).items():
            bucket[e + de] = bucket.get(e + de, 0) + cf
    out = {}
    for mc, poly in terms.items():
        poly = {k: v for k, v in poly.items() if v}
        if poly:
            out[mc] = poly
    return out, 1 << c


class CrossingCapExceeded(RuntimeError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} crossings exceed the cap of {cap}")
        self.count = count
        self.cap = cap
