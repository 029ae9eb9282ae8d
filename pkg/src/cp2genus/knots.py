"""Knot expressions, braid words and Seifert matrices.

Knots are immutable trees built from torus knots, braid closures, untwisted
Whitehead doubles and explicit Seifert matrices, combined by mirror image and
connected sum.  The smart constructors :func:`mirror` and :func:`connected_sum`
keep every tree in canonical form, so structurally equal knots compare equal
and print identically.

Sign conventions: ``T(p,q)`` is the closure of the positive braid
``(s_1 ... s_{p-1})^q`` on ``p`` strands, and ``seifert_matrix(-K)`` is
``-V^T`` where ``V = seifert_matrix(K)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Union

import numpy as np


class KnotError(ValueError):
    """Semantic error: the expression is well formed but names no valid knot."""


class KnotSyntaxError(KnotError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# ---------------------------------------------------------------------------
# Seifert matrices and braid words
# ---------------------------------------------------------------------------

def _det_int(rows: tuple[tuple[int, ...], ...]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SeifertMatrix:
    """Square integer matrix of even size with ``det(V - V^T) = 1``."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise KnotError("Seifert matrix must be square")
        if n % 2:
            raise KnotError(f"Seifert matrix must have even size, got {n}x{n}")
        skew = tuple(tuple(rows[i][j] - rows[j][i] for j in range(n)) for i in range(n))
        if _det_int(skew) != 1:
            raise KnotError("Seifert matrix must satisfy det(V - V^T) = 1")

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.size // 2

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.size, self.size)

    def transpose(self) -> SeifertMatrix:
        return SeifertMatrix(tuple(zip(*self.entries)))

    def mirror(self) -> SeifertMatrix:
        return SeifertMatrix(tuple(tuple(-x for x in row) for row in zip(*self.entries)))

    @classmethod
    def from_array(cls, a) -> SeifertMatrix:
        a = np.asarray(a, dtype=np.int64)
        if a.size == 0:
            return cls(())
        return cls(tuple(tuple(int(x) for x in row) for row in a.reshape(len(a), -1)))


def block_sum(*blocks: SeifertMatrix) -> SeifertMatrix:
    n = sum(b.size for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    k = 0
    for b in blocks:
        out[k:k + b.size, k:k + b.size] = b.array()
        k += b.size
    return SeifertMatrix.from_array(out)


@dataclass(frozen=True)
class BraidWord:
    """Word in the Artin generators: letter ``k`` is ``s_|k|`` with sign of ``k``."""

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(k) for k in self.letters))
        if self.strands < 2:
            raise KnotError("a braid needs at least 2 strands")
        for k in self.letters:
            if not 1 <= abs(k) <= self.strands - 1:
                raise KnotError(f"braid letter {k} out of range for {self.strands} strands")

    def permutation(self) -> list[int]:
        perm = list(range(self.strands))
        for k in self.letters:
            i = abs(k) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return perm


def braid_components(w: BraidWord) -> int:
    """Number of components of the closure (cycles of the induced permutation)."""
    perm = w.permutation()
    seen = [False] * w.strands
    cycles = 0
    for start in range(w.strands):
        if not seen[start]:
            cycles += 1
            i = start
            while not seen[i]:
                seen[i] = True
                i = perm[i]
    return cycles


def braid_seifert_matrix(w: BraidWord) -> SeifertMatrix:
    """Seifert matrix of a braid closure from Seifert's algorithm.

    The Seifert surface is a stack of one disk per strand joined by one
    half-twisted band per letter.  Consecutive bands of the same generator
    bound a loop; these loops form a basis of first homology, ordered by
    generator and then by position in the word.
    """
    used = {abs(k) for k in w.letters}
    missing = [i for i in range(1, w.strands) if i not in used]
    if missing:
        raise KnotError(f"generator(s) {missing} unused: Seifert surface is disconnected")

    # (generator, start, end, sign at start, sign at end)
    loops: list[tuple[int, int, int, int, int]] = []
    by_gen: dict[int, list[int]] = {}
    for pos, k in enumerate(w.letters):
        by_gen.setdefault(abs(k), []).append(pos)
    for i in range(1, w.strands):
        occ = by_gen[i]
        for a, b in zip(occ, occ[1:]):
            loops.append((i, a, b, _sgn(w.letters[a]), _sgn(w.letters[b])))

    n = len(loops)
    v = np.zeros((n, n), dtype=np.int64)
    for x, (gi, a, b, ea, eb) in enumerate(loops):
        v[x, x] = -(ea + eb) // 2
        for y, (gj, c, e, ec, ee) in enumerate(loops):
            if y == x:
                continue
            if gj == gi and c == b:
                # loops share the band at position b
                v[x, y] = (eb + 1) // 2
                v[y, x] = (eb - 1) // 2
            elif gj == gi + 1:
                # only interleaved loops on neighbouring generators link
                if a < c < b < e:
                    v[x, y] = -1
                elif c < a < e < b:
                    v[x, y] = 1
    return SeifertMatrix.from_array(v)


def _sgn(k: int) -> int:
    return 1 if k > 0 else -1


# ---------------------------------------------------------------------------
# Knot expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Unknot:
    pass


@dataclass(frozen=True)
class Torus:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 2 or self.q < 1:
            raise KnotError(f"torus knot T({self.p},{self.q}) needs p >= 2 and q >= 1")
        if gcd(self.p, self.q) != 1:
            raise KnotError(f"T({self.p},{self.q}) is a link: gcd(p,q) != 1")

    def braid(self) -> BraidWord:
        return BraidWord(self.p, tuple(range(1, self.p)) * self.q)


@dataclass(frozen=True)
class Mirror:
    knot: "KnotExpr"


@dataclass(frozen=True)
class Sum:
    """Connected sum of two or more prime-ish summands, canonically ordered."""

    terms: tuple["KnotExpr", ...]


@dataclass(frozen=True)
class Braid:
    word: BraidWord

    def __post_init__(self):
        if braid_components(self.word) != 1:
            raise KnotError("braid closure has more than one component")
        used = {abs(k) for k in self.word.letters}
        if len(used) != self.word.strands - 1:
            raise KnotError("braid closure has a disconnected Seifert surface "
                            "(some generator is unused)")


@dataclass(frozen=True)
class WhiteheadDouble:
    """Untwisted Whitehead double with the given clasp sign (+1 or -1)."""

    clasp: int
    companion: "KnotExpr"

    def __post_init__(self):
        if self.clasp not in (1, -1):
            raise KnotError("Whitehead double clasp must be +1 or -1")


@dataclass(frozen=True)
class SeifertGiven:
    matrix: SeifertMatrix


KnotExpr = Union[Unknot, Torus, Mirror, Sum, Braid, WhiteheadDouble, SeifertGiven]

UNKNOT = Unknot()


def mirror(k: KnotExpr) -> KnotExpr:
    """Mirror image in canonical form."""
    if isinstance(k, Unknot):
        return k
    if isinstance(k, Mirror):
        return k.knot
    if isinstance(k, Sum):
        return connected_sum(*(mirror(t) for t in k.terms))
    return Mirror(k)


def connected_sum(*knots: KnotExpr) -> KnotExpr:
    """Connected sum in canonical form: flattened, unknots dropped, sorted by text."""
    terms: list[KnotExpr] = []
    for k in knots:
        if isinstance(k, Sum):
            terms.extend(k.terms)
        elif not isinstance(k, Unknot):
            terms.append(k)
    if not terms:
        return UNKNOT
    if len(terms) == 1:
        return terms[0]
    return Sum(tuple(sorted(terms, key=print_knot)))


def canonical(k: KnotExpr) -> KnotExpr:
    """Rebuild ``k`` through the smart constructors."""
    if isinstance(k, Mirror):
        return mirror(canonical(k.knot))
    if isinstance(k, Sum):
        return connected_sum(*(canonical(t) for t in k.terms))
    if isinstance(k, WhiteheadDouble):
        return WhiteheadDouble(k.clasp, canonical(k.companion))
    return k


def print_knot(k: KnotExpr) -> str:
    if isinstance(k, Unknot):
        return "U"
    if isinstance(k, Torus):
        return f"T({k.p},{k.q})"
    if isinstance(k, Mirror):
        return "-" + print_knot(k.knot)
    if isinstance(k, Sum):
        return " # ".join(print_knot(t) for t in k.terms)
    if isinstance(k, Braid):
        return f"braid({k.word.strands}; {' '.join(str(x) for x in k.word.letters)})"
    if isinstance(k, WhiteheadDouble):
        return f"Wh{'+' if k.clasp > 0 else '-'}({print_knot(k.companion)})"
    if isinstance(k, SeifertGiven):
        rows = ",".join("[" + ",".join(str(x) for x in r) + "]" for r in k.matrix.entries)
        return f"seifert([{rows}])"
    raise TypeError(f"not a knot expression: {k!r}")


_WH_MINUS = np.array([[-1, 1], [0, 0]])
_WH_PLUS = np.array([[1, 1], [0, 0]])


@lru_cache(maxsize=4096)
def seifert_blocks(k: KnotExpr) -> tuple[SeifertMatrix, ...]:
    """Seifert matrices of the summands, whose block sum is ``seifert_matrix(k)``."""
    if isinstance(k, Unknot):
        return ()
    if isinstance(k, Sum):
        return tuple(b for t in k.terms for b in seifert_blocks(t))
    if isinstance(k, Mirror):
        return tuple(b.mirror() for b in seifert_blocks(k.knot))
    if isinstance(k, Torus):
        return (braid_seifert_matrix(k.braid()),)
    if isinstance(k, Braid):
        return (braid_seifert_matrix(k.word),)
    if isinstance(k, WhiteheadDouble):
        return (SeifertMatrix.from_array(_WH_PLUS if k.clasp > 0 else _WH_MINUS),)
    if isinstance(k, SeifertGiven):
        return (k.matrix,)
    raise TypeError(f"not a knot expression: {k!r}")


def seifert_matrix(k: KnotExpr) -> SeifertMatrix:
    return block_sum(*seifert_blocks(k))


def summands(k: KnotExpr) -> tuple[KnotExpr, ...]:
    if isinstance(k, Unknot):
        return ()
    if isinstance(k, Sum):
        return k.terms
    return (k,)


def torus_pair(k: KnotExpr) -> tuple[int, int] | None:
    """``(n, sign)`` when ``k`` is ``T(n,n-1)`` (sign +1) or its mirror (sign -1)."""
    sign = 1
    if isinstance(k, Mirror):
        k, sign = k.knot, -1
    if isinstance(k, Torus) and abs(k.p - k.q) == 1:
        return max(k.p, k.q), sign
    return None


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> KnotSyntaxError:
        return KnotSyntaxError(message, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            found = self.text[self.pos:self.pos + 1] or "end of input"
            raise self.error(f"expected {s!r}, found {found!r}")
        self.pos += len(s)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        sign = ""
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            sign = self.text[self.pos]
            self.pos += 1
            self.skip()
        digit_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[digit_start:self.pos]
        if not digits:
            self.pos = start
            raise self.error("expected an integer")
        return int(sign + digits)

    def parse(self) -> KnotExpr:
        k = self.sum()
        self.skip()
        if self.pos != len(self.text):
            raise self.error(f"unexpected trailing input {self.text[self.pos:]!r}")
        return k

    def sum(self) -> KnotExpr:
        terms = [self.unary()]
        while self.peek("#"):
            self.pos += 1
            terms.append(self.unary())
        return connected_sum(*terms)

    def unary(self) -> KnotExpr:
        if self.peek("-"):
            self.pos += 1
            return mirror(self.unary())
        return self.atom()

    def atom(self) -> KnotExpr:
        self.skip()
        start = self.pos
        try:
            if self.peek("braid"):
                return self.braid()
            if self.peek("seifert"):
                return self.seifert()
            if self.peek("Wh"):
                self.pos += 2
                if self.peek("+"):
                    clasp = 1
                elif self.peek("-"):
                    clasp = -1
                else:
                    raise self.error("expected '+' or '-' after 'Wh'")
                self.pos += 1
                self.expect("(")
                inner = self.sum()
                self.expect(")")
                return WhiteheadDouble(clasp, inner)
            if self.peek("T"):
                self.pos += 1
                self.expect("(")
                p = self.integer()
                self.expect(",")
                q = self.integer()
                self.expect(")")
                return Torus(p, q)
            if self.peek("U"):
                self.pos += 1
                return UNKNOT
        except KnotSyntaxError:
            raise
        except KnotError as exc:
            raise KnotError(f"{exc} (at position {start})") from None
        raise self.error("expected a knot (U, T(p,q), Wh+/-(...), braid(...), seifert(...))")

    def braid(self) -> Braid:
        self.pos += len("braid")
        self.expect("(")
        strands = self.integer()
        self.expect(";")
        letters = [self.integer()]
        while not self.peek(")"):
            letters.append(self.integer())
        self.expect(")")
        if any(k == 0 for k in letters):
            raise KnotError("braid letters must be nonzero")
        return Braid(BraidWord(strands, tuple(letters)))

    def seifert(self) -> SeifertGiven:
        self.pos += len("seifert")
        self.expect("(")
        self.expect("[")
        rows = [self.row()]
        while self.peek(","):
            self.pos += 1
            rows.append(self.row())
        self.expect("]")
        self.expect(")")
        return SeifertGiven(SeifertMatrix(tuple(rows)))

    def row(self) -> tuple[int, ...]:
        self.expect("[")
        vals = [self.integer()]
        while self.peek(","):
            self.pos += 1
            vals.append(self.integer())
        self.expect("]")
        return tuple(vals)


def parse_knot(text: str) -> KnotExpr:
    """Parse the knot expression language into a canonical :data:`KnotExpr`.

    >>> print_knot(parse_knot("T(3,2) # -T(3,2)"))
    '-T(3,2) # T(3,2)'
    """
    return _Parser(text).parse()
