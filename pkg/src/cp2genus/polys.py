"""Exact integer polynomial helpers and symmetric Laurent polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

# Dense integer polynomials are tuples of coefficients, lowest degree first.
IntPoly = tuple[int, ...]


def trim(a: Sequence[int]) -> IntPoly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def poly_divmod(a: Sequence[int], b: Sequence[int]) -> tuple[IntPoly, IntPoly]:
    """Division by a monic integer polynomial ``b``."""
    b = trim(b)
    if not b or b[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(trim(a))
    db = len(b) - 1
    if len(rem) - 1 < db:
        return (), tuple(rem)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c:
            quot[k - db] = c
            for j in range(db + 1):
                rem[k - db + j] -= c * b[j]
    return trim(quot), trim(rem[:db])


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> IntPoly:
    """The m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("cyclotomic index must be positive")
    num: IntPoly = (-1,) + (0,) * (m - 1) + (1,)
    for d in range(1, m):
        if m % d == 0:
            num, r = poly_divmod(num, cyclotomic(d))
            assert not r
    return num


@dataclass(frozen=True)
class LaurentPoly:
    """Finitely supported integer Laurent polynomial in ``t``."""

    coeffs: tuple[tuple[int, int], ...]  # sorted (exponent, coefficient), no zeros

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> LaurentPoly:
        return cls(tuple(sorted((e, c) for e, c in d.items() if c)))

    @classmethod
    def from_poly(cls, a: Sequence[int], shift: int = 0) -> LaurentPoly:
        return cls.from_dict({i + shift: c for i, c in enumerate(a)})

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls(((0, 1),))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def coef(self, k: int) -> int:
        return self.as_dict().get(k, 0)

    def dense(self) -> tuple[int, IntPoly]:
        """``(lowest exponent, coefficients)`` so that self = t^low * poly."""
        if not self.coeffs:
            return 0, ()
        low, high = self.coeffs[0][0], self.coeffs[-1][0]
        d = self.as_dict()
        return low, tuple(d.get(k, 0) for k in range(low, high + 1))

    def __call__(self, t):
        return sum(c * t ** e for e, c in self.coeffs)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(out)

    def is_symmetric(self) -> bool:
        d = self.as_dict()
        return all(d.get(-e, 0) == c for e, c in d.items())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs, key=lambda ec: -ec[0]):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, body in parts[1:]:
            text += f" {s} {body}"
        return text

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Inverse of ``str`` for the format ``t^2 - 3*t + 5 - 3*t^-1 + t^-2``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        terms: dict[int, int] = {}
        i = 0
        while i < len(s):
            sign = 1
            if s[i] in "+-":
                sign = -1 if s[i] == "-" else 1
                i += 1
            j = i
            while j < len(s) and (s[j] not in "+-" or s[j - 1] == "^"):
                j += 1
            term = s[i:j]
            i = j
            if "t" not in term:
                coef, exp = int(term), 0
            else:
                head, _, tail = term.partition("t")
                coef = int(head.rstrip("*")) if head else 1
                exp = int(tail[1:]) if tail.startswith("^") else 1
            terms[exp] = terms.get(exp, 0) + sign * coef
        return cls.from_dict(terms)
