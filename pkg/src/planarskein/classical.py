"""Exact SL(2, Q) trace oracle for the commutative (q = 1) picture.

Matrices are products of elementary unimodular matrices with small integer
entries, so every determinant is exactly 1 and every trace is an integer.
The classical functions are

    t_S = -tr(x_{i1} ... x_{ir}),    s_S = -tr(x^_{i1} ... x^_{ir}),

where ``x^ = x - tr(x)/2 * e`` is the trace-free part.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Sequence

from .multicurve import Multicurve
from .ncpoly import NCPoly
from .skein import SkeinElement

__all__ = [
    "Mat2Q",
    "MatTuple",
    "sample_sl2_tuple",
    "classical_t",
    "classical_s",
    "IDENTITIES",
    "check_classical_identity",
    "eval_poly_classical",
    "eval_element_classical",
    "specialize_relation_check",
]


@dataclass(frozen=True)
class Mat2Q:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @classmethod
    def of(cls, a, b, c, d) -> "Mat2Q":
        return cls(Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    @classmethod
    def identity(cls) -> "Mat2Q":
        return cls.of(1, 0, 0, 1)

    def __matmul__(self, o: "Mat2Q") -> "Mat2Q":
        return Mat2Q(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                     self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def __add__(self, o: "Mat2Q") -> "Mat2Q":
        return Mat2Q(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: "Mat2Q") -> "Mat2Q":
        return Mat2Q(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rmul__(self, k) -> "Mat2Q":
        k = Fraction(k)
        return Mat2Q(k * self.a, k * self.b, k * self.c, k * self.d)

    def tr(self) -> Fraction:
        return self.a + self.d

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def inv(self) -> "Mat2Q":
        dt = self.det()
        return Mat2Q(self.d / dt, -self.b / dt, -self.c / dt, self.a / dt)

    def traceless(self) -> "Mat2Q":
        return self - (self.tr() / 2) * Mat2Q.identity()


E = Mat2Q.identity()


@dataclass(frozen=True)
class MatTuple:
    mats: tuple
    seed: int

    def __len__(self) -> int:
        return len(self.mats)

    def x(self, i: int) -> Mat2Q:
        """1-based access."""
        return self.mats[i - 1]


def sample_sl2_tuple(seed: int, n: int, steps: int = 4) -> MatTuple:
    if steps < 1:
        raise ValueError("steps must be at least 1")
    rng = random.Random(seed)
    choices = [k for k in range(-3, 4) if k]
    mats = []
    for _ in range(n):
        m = E
        for s in range(steps):
            k = rng.choice(choices)
            m = m @ (Mat2Q.of(1, k, 0, 1) if (s + rng.randrange(2)) % 2 == 0 else Mat2Q.of(1, 0, k, 1))
        mats.append(m)
    return MatTuple(tuple(mats), seed)


def _prod(ms) -> Mat2Q:
    out = E
    for m in ms:
        out = out @ m
    return out


def classical_t(tup: MatTuple, indices: Sequence[int]) -> Fraction:
    return -_prod(tup.x(i) for i in indices).tr()


def classical_s(tup: MatTuple, indices: Sequence[int]) -> Fraction:
    return -_prod(tup.x(i).traceless() for i in indices).tr()


# ---------------------------------------------------------------------------
# identities; each returns True when both sides agree exactly


def _r(vs: dict) -> Callable:
    def r(*idx):
        return -_prod(vs[i] for i in idx).tr()

    return r


def _vs(tup: MatTuple, idx: Sequence[int]) -> dict:
    return {k + 1: tup.x(i).traceless() for k, i in enumerate(idx)}


def _id_ab(tup, idx=(1, 2)):
    a, b = tup.x(idx[0]), tup.x(idx[1])
    # hold for arbitrary 2x2 matrices; use a non-unimodular combination too
    b = b + 2 * a.traceless()
    lhs = a @ b + b @ a
    rhs = b.tr() * a + a.tr() * b + ((a @ b).tr() - a.tr() * b.tr()) * E
    return lhs == rhs


def _id_basic_classical(tup, idx=(1, 2, 3)):
    u1, u2, u3 = (tup.x(i).traceless() for i in idx)
    lhs = 2 * (u1 @ u2 @ u3)
    rhs = ((u2 @ u3).tr() * u1 - (u1 @ u3).tr() * u2 + (u1 @ u2).tr() * u3 + (u1 @ u2 @ u3).tr() * E)
    return lhs == rhs


def _id_skew(tup, idx=(1, 2, 3)):
    u1, u2, u3 = (tup.x(i).traceless() for i in idx)
    return (u1 @ u2 @ u3).tr() + (u2 @ u1 @ u3).tr() == 0 and classical_s(tup, [idx[1], idx[0], idx[2]]) == -classical_s(tup, idx)


def _id_fundamental(tup, idx=(1, 2, 3, 4)):
    v = _vs(tup, idx)
    r = _r(v)
    lhs = r(1, 2, 3) * v[4] - r(1, 3) * (v[2] @ v[4]) + r(1, 2) * (v[3] @ v[4])
    rhs = r(2, 3, 4) * v[1] + r(3, 4) * (v[1] @ v[2]) - r(2, 4) * (v[1] @ v[3])
    return lhs == rhs


def _id_four(tup, idx=(1, 2, 3, 4)):
    r = _r(_vs(tup, idx))
    return 2 * r(1, 2, 3, 4) == r(1, 3) * r(2, 4) - r(1, 2) * r(3, 4) - r(1, 4) * r(2, 3)


def _id_trace1(tup, idx=(1, 2, 3, 4, 5, 6)):
    r = _r(_vs(tup, idx))
    lhs = 2 * (r(1, 5, 6) * r(2, 3, 4) - r(1, 2, 3) * r(4, 5, 6))
    rhs = (r(1, 6) * (r(2, 5) * r(3, 4) - r(2, 4) * r(3, 5)) + r(2, 6) * (r(1, 3) * r(4, 5) - r(1, 5) * r(3, 4))
           + r(3, 6) * (r(1, 5) * r(2, 4) - r(1, 2) * r(4, 5)) + r(4, 6) * (r(1, 2) * r(3, 5) - r(1, 3) * r(2, 5)))
    return lhs == rhs


def _id_trace2(tup, idx=(1, 2, 3, 4, 5, 6)):
    r = _r(_vs(tup, idx))
    lhs = 2 * (r(2, 5, 6) * r(1, 3, 4) + r(1, 2, 3) * r(4, 5, 6))
    rhs = (r(2, 6) * (r(1, 5) * r(3, 4) - r(1, 4) * r(3, 5)) + r(1, 6) * (r(2, 3) * r(4, 5) - r(2, 5) * r(3, 4))
           + r(3, 6) * (r(2, 5) * r(1, 4) - r(1, 2) * r(4, 5)) + r(4, 6) * (r(1, 2) * r(3, 5) - r(2, 3) * r(1, 5)))
    return lhs == rhs


def _id_trace3(tup, idx=(1, 2, 3, 4, 5, 6)):
    r = _r(_vs(tup, idx))
    lhs = 2 * (r(1, 3, 4) * r(2, 5, 6) - r(1, 5, 6) * r(2, 3, 4))
    rhs = (r(1, 6) * (r(4, 5) * r(2, 3) - r(2, 4) * r(3, 5)) + r(4, 6) * (r(1, 3) * r(2, 5) - r(1, 5) * r(2, 3))
           + r(3, 6) * (r(1, 5) * r(2, 4) - r(1, 4) * r(2, 5)) + r(2, 6) * (r(1, 4) * r(3, 5) - r(1, 3) * r(4, 5)))
    return lhs == rhs


def _id_basic(tup, idx=(1, 2)):
    a, b = tup.x(idx[0]), tup.x(idx[1])
    return a.tr() * b.tr() == (a @ b).tr() + (a @ b.inv()).tr()


def _id_sii(tup, idx=(1,)):
    i = idx[0]
    return classical_s(tup, [i, i]) == 2 - Fraction(1, 2) * classical_t(tup, [i]) ** 2


def _id_type1(tup, idx=(1, 2, 3, 4, 5, 6)):
    a, b = idx[:3], idx[3:]
    s = lambda *k: classical_s(tup, k)  # noqa: E731
    m = [[s(ai, bj) for bj in b] for ai in a]
    det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
           + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    return 2 * s(*a) * s(*b) == det


def _id_type2(tup, idx=(1, 2, 3, 4, 5)):
    a, c = idx[:4], idx[4]
    s = lambda *k: classical_s(tup, k)  # noqa: E731
    total = Fraction(0)
    for j in range(4):
        rest = [a[k] for k in range(4) if k != j]
        total += (-1) ** j * s(a[j], c) * s(*rest)
    return total == 0


IDENTITIES: dict = {
    "ab": (_id_ab, 2),
    "basic-classical-0": (_id_basic_classical, 3),
    "skew": (_id_skew, 3),
    "fundamental": (_id_fundamental, 4),
    "4-element-trace": (_id_four, 4),
    "trace-identity1": (_id_trace1, 6),
    "trace-identity2": (_id_trace2, 6),
    "trace-identity3": (_id_trace3, 6),
    "basic": (_id_basic, 2),
    "sii-0": (_id_sii, 1),
    "typeI": (_id_type1, 6),
    "typeII": (_id_type2, 5),
}


def check_classical_identity(name: str, tup: MatTuple, indices: Sequence[int] | None = None) -> bool:
    """Evaluate one named identity exactly; ``indices`` picks the matrices (1-based)."""
    if name not in IDENTITIES:
        raise KeyError(f"unknown identity {name!r}")
    fn, arity = IDENTITIES[name]
    idx = tuple(range(1, arity + 1)) if indices is None else tuple(indices)
    if len(idx) != arity:
        raise ValueError(f"{name} takes {arity} indices")
    if max(idx) > len(tup):
        raise ValueError(f"{name} needs {max(idx)} matrices, tuple has {len(tup)}")
    return fn(tup, idx)


# ---------------------------------------------------------------------------
# q = 1 specialisation


def _dyadic(x: Fraction) -> tuple | None:
    """``x = m / 2^e`` as ``(m, e)``, or None if the denominator is not a power of 2."""
    d = x.denominator
    if d & (d - 1):
        return None
    return x.numerator, d.bit_length() - 1


_VALUES: dict = {}  # id(tuple) -> (tuple, {generator: dyadic value})


def _gen_value(tup: MatTuple, kind: str, idx: tuple):
    hit = _VALUES.get(id(tup))
    if hit is None or hit[0] is not tup:
        if len(_VALUES) > 256:
            _VALUES.clear()
        hit = _VALUES[id(tup)] = (tup, {})
    cache = hit[1]
    key = (kind, idx)
    val = cache.get(key)
    if val is None:
        val = cache[key] = _dyadic(classical_t(tup, idx) if kind == "t" else classical_s(tup, idx))
    return val


@lru_cache(maxsize=1 << 14)
def _coeff_value(c, v0: int):
    return _dyadic(c.eval_at(v0))


def eval_poly_classical(p: NCPoly, tup: MatTuple, v0: int = 1) -> Fraction:
    """Coefficients at ``v = v0`` (so beta = 1/2); words evaluated commutatively.

    Integer matrices and ``v0 = +-1`` keep every quantity dyadic, so the sum is
    accumulated exactly as integer numerators over powers of two.
    """
    acc_m, acc_e = 0, 0
    for w, c in p.terms.items():
        cv = _coeff_value(c, v0)
        if cv is None:
            return _eval_fraction(p, tup, v0)
        m, e = cv
        for g in w:
            gv = _gen_value(tup, g.kind, g.idx)
            if gv is None:
                return _eval_fraction(p, tup, v0)
            m *= gv[0]
            e += gv[1]
        if e > acc_e:
            acc_m <<= e - acc_e
            acc_e = e
        acc_m += m << (acc_e - e)
    return Fraction(acc_m, 1 << acc_e)


def _eval_fraction(p: NCPoly, tup: MatTuple, v0) -> Fraction:
    total = Fraction(0)
    for w, c in p.terms.items():
        val = c.eval_at(v0)
        for g in w:
            val *= classical_t(tup, g.idx) if g.kind == "t" else classical_s(tup, g.idx)
        total += val
    return total


def _component_value(word: tuple, tup: MatTuple) -> Fraction:
    m = E
    for letter in word:
        x = tup.x(abs(letter))
        m = m @ (x if letter > 0 else x.inv())
    return -m.tr()


def eval_element_classical(e: SkeinElement, tup: MatTuple) -> Fraction:
    """Skein element at ``v = -1``: each curve becomes minus the trace of its word."""
    total = Fraction(0)
    for m, c in e.terms.items():
        val = c.eval_at(-1)
        for w in m.words():
            val *= _component_value(w, tup)
        total += val
    return total


def specialize_relation_check(r, tup: MatTuple, v0: int = 1) -> bool:
    """True iff the relation vanishes identically at ``v = v0`` on this tuple."""
    return eval_poly_classical(r.poly, tup, v0) == 0
