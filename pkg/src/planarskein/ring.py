"""Exact coefficient ring R = Z[v, v^-1, beta].

Here ``v`` is a square root of ``q``, ``alpha = q + 1/q = v^2 + v^-2`` and
``beta = 1/alpha``.  Every element is stored as ``num * beta^k`` where ``num``
is an integer Laurent polynomial in ``v``.  The representative is canonical:
when ``k > 0`` the numerator is not divisible by ``alpha``.

Examples
--------
>>> from planarskein.ring import ALPHA, BETA, Q
>>> ALPHA * BETA == 1
True
>>> (Q - Q.inv_q()) * ALPHA
q^2 - q^-2
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "HalfLaurent",
    "ScalarR",
    "ZERO",
    "ONE",
    "V",
    "Q",
    "QBAR",
    "ALPHA",
    "BETA",
    "scalar",
]


def _strip(d: dict) -> dict:
    return {e: c for e, c in d.items() if c}


class HalfLaurent:
    """Integer Laurent polynomial in ``v = q^(1/2)``, immutable."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c = _strip(dict(coeffs)) if coeffs else {}
        self._hash = None

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "HalfLaurent":
        return cls({e: c})

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = HalfLaurent({0: other})
        return isinstance(other, HalfLaurent) and self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other: "HalfLaurent") -> "HalfLaurent":
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, 0) + c
        return HalfLaurent(out)

    def __neg__(self) -> "HalfLaurent":
        return HalfLaurent({e: -c for e, c in self._c.items()})

    def __sub__(self, other: "HalfLaurent") -> "HalfLaurent":
        return self + (-other)

    def __mul__(self, other: "HalfLaurent") -> "HalfLaurent":
        out: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return HalfLaurent(out)

    def mirror(self) -> "HalfLaurent":
        return HalfLaurent({-e: c for e, c in self._c.items()})

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def div_alpha(self) -> "HalfLaurent | None":
        """Exact quotient by ``alpha``, or None when alpha does not divide."""
        if not self._c:
            return self
        lo, hi = self.min_exp(), self.max_exp()
        # f = v^lo * P(v); alpha = v^-2 (v^4 + 1)
        p = [self._c.get(lo + i, 0) for i in range(hi - lo + 1)]
        if len(p) < 5:
            return None
        quot = [0] * (len(p) - 4)
        for i in range(len(p) - 1, 3, -1):
            c = p[i]
            if c:
                quot[i - 4] = c
                p[i] = 0
                p[i - 4] -= c
        if any(p[:4]):
            return None
        return HalfLaurent({lo + 2 + i: c for i, c in enumerate(quot) if c})

    def eval(self, v0: Fraction) -> Fraction:
        return sum((Fraction(c) * Fraction(v0) ** e for e, c in self._c.items()), Fraction(0))

    def __repr__(self) -> str:
        return _fmt_laurent(self._c)


def _fmt_laurent(c: Mapping[int, int]) -> str:
    if not c:
        return "0"
    even = all(e % 2 == 0 for e in c)
    var = "q" if even else "v"
    parts = []
    for e in sorted(c, reverse=True):
        coef = c[e]
        ee = e // 2 if even else e
        if ee == 0:
            mono = str(abs(coef))
        else:
            base = var if ee == 1 else f"{var}^{ee}"
            mono = base if abs(coef) == 1 else f"{abs(coef)}*{base}"
        sign = "-" if coef < 0 else "+"
        parts.append((sign, mono))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, mono in parts[1:]:
        s += f" {sign} {mono}"
    return s


_ALPHA_HL = HalfLaurent({2: 1, -2: 1})


class ScalarR:
    """Element ``num * beta^k`` of R in canonical form."""

    __slots__ = ("num", "beta_pow", "_hash")

    def __init__(self, num: HalfLaurent | Mapping[int, int] | int = 0, beta_pow: int = 0):
        if isinstance(num, int):
            num = HalfLaurent({0: num})
        elif not isinstance(num, HalfLaurent):
            num = HalfLaurent(num)
        if beta_pow < 0:
            for _ in range(-beta_pow):
                num = num * _ALPHA_HL
            beta_pow = 0
        if num.is_zero():
            beta_pow = 0
        while beta_pow > 0:
            d = num.div_alpha()
            if d is None:
                break
            num, beta_pow = d, beta_pow - 1
        self.num = num
        self.beta_pow = beta_pow
        self._hash = None

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "ScalarR":
        if isinstance(x, ScalarR):
            return x
        if isinstance(x, int):
            return ScalarR(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        k = max(self.beta_pow, other.beta_pow)
        return ScalarR(_lift(self.num, k - self.beta_pow) + _lift(other.num, k - other.beta_pow), k)

    __radd__ = __add__

    def __neg__(self):
        return ScalarR(-self.num, self.beta_pow)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ScalarR(self.num * other.num, self.beta_pow + other.beta_pow)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            inv = self.inverse()
            if inv is None:
                raise ZeroDivisionError(f"{self!r} is not a unit")
            return inv ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.beta_pow == other.beta_pow and self.num == other.num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.beta_pow))
        return self._hash

    # -- structure ---------------------------------------------------------
    def unit_decomposition(self):
        """Return ``(sign, e, m)`` with ``num = sign * v^e * alpha^m``, or None."""
        if self.is_zero():
            return None
        num, m = self.num, 0
        while True:
            d = num.div_alpha()
            if d is None:
                break
            num, m = d, m + 1
        items = num.items()
        if len(items) != 1 or abs(items[0][1]) != 1:
            return None
        return items[0][1], items[0][0], m

    def is_unit(self) -> bool:
        return self.unit_decomposition() is not None

    def inverse(self) -> "ScalarR | None":
        dec = self.unit_decomposition()
        if dec is None:
            return None
        sign, e, m = dec
        # (s v^e alpha^m beta^k)^-1 = s v^-e alpha^k beta^m
        return ScalarR(_lift(HalfLaurent({-e: sign}), self.beta_pow), m)

    def mirror(self) -> "ScalarR":
        return ScalarR(self.num.mirror(), self.beta_pow)

    def inv_q(self) -> "ScalarR":
        """Alias of :meth:`mirror`; reads naturally for ``Q.inv_q()``."""
        return self.mirror()

    def eval_at(self, v0) -> Fraction:
        v0 = Fraction(v0)
        if v0 == 0:
            raise ZeroDivisionError("v0 must be nonzero")
        a = v0 ** 2 + v0 ** -2
        return self.num.eval(v0) / a ** self.beta_pow

    # -- io ----------------------------------------------------------------
    def to_json(self) -> dict:
        return {"num": [[str(e), str(c)] for e, c in self.num.items()], "beta_pow": self.beta_pow}

    @classmethod
    def from_json(cls, obj: dict) -> "ScalarR":
        return cls(HalfLaurent({int(e): int(c) for e, c in obj["num"]}), int(obj["beta_pow"]))

    def __repr__(self) -> str:
        s = repr(self.num)
        if self.beta_pow == 0:
            return s
        b = "B" if self.beta_pow == 1 else f"B^{self.beta_pow}"
        if self.num == HalfLaurent({0: 1}):
            return b
        if self.num == HalfLaurent({0: -1}):
            return "-" + b
        return f"{b}*({s})"

    def __lt__(self, other: "ScalarR") -> bool:  # only for deterministic sorting
        return (self.beta_pow, self.num.items()) < (other.beta_pow, other.num.items())


def _lift(num: HalfLaurent, m: int) -> HalfLaurent:
    for _ in range(m):
        num = num * _ALPHA_HL
    return num


def scalar(coeffs: Mapping[int, int] | Iterable | int, beta_pow: int = 0) -> ScalarR:
    """Build a ScalarR from ``{v-exponent: coefficient}``."""
    if isinstance(coeffs, int):
        return ScalarR(coeffs, beta_pow)
    return ScalarR(HalfLaurent(dict(coeffs)), beta_pow)


def eval_at_q(a: ScalarR, v0) -> Fraction:
    return a.eval_at(v0)


def mirror_scalar(a: ScalarR) -> ScalarR:
    return a.mirror()


def is_unit(a: ScalarR) -> bool:
    return a.is_unit()


ZERO = ScalarR(0)
ONE = ScalarR(1)
V = scalar({1: 1})
Q = scalar({2: 1})
QBAR = scalar({-2: 1})
ALPHA = scalar({2: 1, -2: 1})
BETA = ScalarR(1, 1)
