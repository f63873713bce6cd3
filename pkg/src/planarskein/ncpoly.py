"""Noncommutative polynomials in the generators ``t_S`` and ``s_S`` over R."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .ring import ALPHA, BETA, ONE, ZERO, ScalarR


@dataclass(frozen=True, order=True)
class Generator:
    kind: str  # "t" or "s"
    idx: tuple

    def __post_init__(self):
        if self.kind not in ("t", "s"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if not self.idx or any(b <= a for a, b in zip(self.idx, self.idx[1:])):
            raise ValueError(f"indices must be strictly increasing: {self.idx}")
        if self.kind == "s" and len(self.idx) < 2:
            raise ValueError("s needs at least two indices")
        if self.idx[0] < 1:
            raise ValueError("indices start at 1")

    def name(self) -> str:
        if all(i <= 9 for i in self.idx):
            return self.kind + "".join(map(str, self.idx))
        return f"{self.kind}[{','.join(map(str, self.idx))}]"

    def relabel(self, f: Callable[[int], int]) -> "NCPoly":
        return gen(self.kind, [f(i) for i in self.idx])

    def __repr__(self) -> str:
        return self.name()


Word = tuple  # tuple[Generator, ...]


class NCPoly:
    """Finite sum of words in the generators with coefficients in R."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, ScalarR] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def const(cls, c: ScalarR | int) -> "NCPoly":
        return cls({(): ScalarR._coerce(c)})

    @classmethod
    def word(cls, *gens: Generator, coeff: ScalarR = ONE) -> "NCPoly":
        return cls({tuple(gens): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = NCPoly.const(other)
        return isinstance(other, NCPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @staticmethod
    def _lift(x) -> "NCPoly":
        if isinstance(x, NCPoly):
            return x
        if isinstance(x, (int, ScalarR)):
            return NCPoly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return NCPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, ZERO) + c1 * c2
        return NCPoly(out)

    def __rmul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other * self

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) == 1 and () in self.terms:
                return NCPoly.const(self.terms[()] ** k)
            raise ValueError("negative powers only for scalars")
        out = NCPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def mirror(self) -> "NCPoly":
        """Reverse every word and send v to 1/v."""
        return NCPoly({tuple(reversed(w)): c.mirror() for w, c in self.terms.items()})

    def conj(self) -> "NCPoly":
        """Send v to 1/v in every coefficient, keeping word order."""
        return NCPoly({w: c.mirror() for w, c in self.terms.items()})

    def relabel(self, f: Callable[[int], int]) -> "NCPoly":
        out = NCPoly()
        for w, c in self.terms.items():
            p = NCPoly.const(c)
            for g in w:
                p = p * g.relabel(f)
            out = out + p
        return out

    def generators(self) -> set:
        return {g for w in self.terms for g in w}

    def max_index(self) -> int:
        return max((i for g in self.generators() for i in g.idx), default=0)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda wc: (len(wc[0]), wc[0]))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for w, c in self.sorted_terms():
            cs = repr(c)
            neg = False
            if " " not in cs and cs.startswith("-"):
                neg, cs = True, cs[1:]
            if not w:
                body = f"({cs})" if " " in cs else cs
            else:
                ws = "*".join(g.name() for g in w)
                if cs == "1":
                    body = ws
                else:
                    body = f"({cs})*{ws}" if " " in cs else f"{cs}*{ws}"
            if not out:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out


def gen(kind: str, indices: Iterable[int]) -> NCPoly:
    """Generator as a polynomial; ``s_ii`` expands to ``alpha - beta t_i^2``."""
    idx = tuple(sorted(indices))
    if kind == "s" and len(idx) == 2 and idx[0] == idx[1]:
        t = NCPoly.word(Generator("t", (idx[0],)))
        return NCPoly.const(ALPHA) - BETA * t * t
    if len(set(idx)) != len(idx):
        raise ValueError(f"repeated index in {kind}{list(indices)}")
    return NCPoly.word(Generator(kind, idx))
