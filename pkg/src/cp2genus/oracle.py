"""Independent cross-checks for the float signature backend and degree search.

``exact_signature`` diagonalizes the Hermitian form by congruence over the
cyclotomic field ``Q(zeta_m)`` with exact rational arithmetic, then decides
the sign of each (real) pivot with interval arithmetic at increasing
precision.  ``brute_force_lower_bound`` minimizes the row bound over a fixed
window with no early exit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from mpmath.ctx_iv import MPIntervalContext

from . import bounds, closed
from .invariants import (
    InvariantRecord,
    SingularAtOmega,
    invariant_record,
    is_singular,
    knot_alexander,
    lt_signature,
    sigma_p_turns,
)
from .knots import KnotExpr, SeifertMatrix, parse_knot, print_knot, seifert_matrix
from .polys import LaurentPoly, cyclotomic

MAX_EXACT_SIZE = 8
PRECISION_LADDER = (64, 256, 1024)
ORACLE_RADIUS_FACTOR = 3


class SizeTooLarge(ValueError):
    pass


class SignUndecided(ArithmeticError):
    pass


class CyclotomicField:
    """Q(zeta_m) with elements stored as coefficient tuples in powers of zeta."""

    def __init__(self, m: int):
        self.m = m
        self.modulus = cyclotomic(m)
        self.degree = len(self.modulus) - 1

    def reduce(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        c = list(coeffs)
        deg = self.degree
        for k in range(len(c) - 1, deg - 1, -1):
            lead = c[k]
            if lead:
                for j in range(deg + 1):
                    c[k - deg + j] -= lead * self.modulus[j]
        c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
        return tuple(c)

    def zeta_power(self, k: int) -> tuple[Fraction, ...]:
        c = [Fraction(0)] * (k % self.m + 1)
        c[-1] = Fraction(1)
        return self.reduce(c)

    def from_int(self, x) -> tuple[Fraction, ...]:
        return self.reduce([Fraction(x)])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def scale(self, a, s):
        return tuple(x * s for x in a)

    def mul(self, a, b):
        out = [Fraction(0)] * (2 * self.degree)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return self.reduce(out)

    def conj(self, a):
        out = [Fraction(0)] * self.m
        for k, x in enumerate(a):
            if x:
                out[(-k) % self.m] += x
        return self.reduce(out)

    def is_zero(self, a) -> bool:
        return not any(a)

    def inv(self, a):
        """Inverse by the extended Euclidean algorithm in Q[x]."""
        r0, r1 = [Fraction(c) for c in self.modulus], list(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            while r1 and r1[-1] == 0:
                r1.pop()
            q, r = _divmod_q(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _sub_q(s0, _mul_q(q, s1))
        # r0 is a nonzero constant
        while r0 and r0[-1] == 0:
            r0.pop()
        if len(r0) != 1:
            raise ZeroDivisionError("element is not invertible")
        return self.reduce([c / r0[0] for c in s0])

    def sign(self, a) -> int:
        """Sign of a real element, certified by interval evaluation."""
        if self.is_zero(a):
            return 0
        for prec in PRECISION_LADDER:
            iv = MPIntervalContext()
            iv.prec = prec
            two_pi = 2 * iv.pi
            val = iv.mpf(0)
            for k, c in enumerate(a):
                if c:
                    val += iv.mpf(c.numerator) / c.denominator * iv.cos(two_pi * k / self.m)
            if val.a > 0:
                return 1
            if val.b < 0:
                return -1
        raise SignUndecided("pivot sign not separated from zero at 1024 bits")


def _mul_q(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _sub_q(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _divmod_q(a, b):
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] / b[-1]
        q[k - db] = c
        if c:
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    r = a[:db]
    while r and r[-1] == 0:
        r.pop()
    return q, r


def exact_signature(v: SeifertMatrix, turns: Fraction) -> int:
    """Signature of ``(1-w)V + (1-conj w)V^T`` at ``w = e^{2 pi i turns}``, exactly."""
    n = v.size
    if n > MAX_EXACT_SIZE:
        raise SizeTooLarge(f"exact backend handles sizes <= {MAX_EXACT_SIZE}, got {n}")
    turns = Fraction(turns) % 1
    if turns == 0:
        raise ValueError("omega = 1 is excluded")
    if is_singular(v, turns):
        raise SingularAtOmega(f"Delta vanishes at omega = e^(2 pi i {turns})")
    if n == 0:
        return 0
    field = CyclotomicField(turns.denominator)
    w = field.zeta_power(turns.numerator)
    one = field.from_int(1)
    a = field.sub(one, w)
    b = field.conj(a)
    ent = v.entries
    h = [[field.add(field.scale(a, ent[i][j]), field.scale(b, ent[j][i])) for j in range(n)]
         for i in range(n)]

    sig = 0
    live = list(range(n))
    while live:
        k = next((i for i in live if not field.is_zero(h[i][i])), None)
        if k is None:
            pair = next(((i, j) for i in live for j in live if not field.is_zero(h[i][j])), None)
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            # e_i -> e_i + conj(h_ij) e_j makes the (i, i) entry 2|h_ij|^2 > 0
            c = field.conj(h[i][j])
            for r in range(n):
                h[r][i] = field.add(h[r][i], field.mul(h[r][j], c))
            cc = field.conj(c)
            for s in range(n):
                h[i][s] = field.add(h[i][s], field.mul(cc, h[j][s]))
            k = i
        piv = h[k][k]
        sig += field.sign(piv)
        inv = field.inv(piv)
        live.remove(k)
        for i in live:
            f = field.mul(h[i][k], inv)
            if field.is_zero(f):
                continue
            for j in live:
                h[i][j] = field.sub(h[i][j], field.mul(f, h[k][j]))
        for i in live:
            h[i][k] = h[k][i] = field.from_int(0)
    return sig


def brute_force_lower_bound(record: InvariantRecord, radius: int,
                            primes_at_zero=bounds.DEFAULT_PRIMES) -> int:
    if radius < 1:
        raise ValueError("radius must be at least 1")
    return min(bounds.degree_row(record, d, primes_at_zero).combined
               for d in range(-radius, radius + 1))


# ---------------------------------------------------------------------------
# Golden table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GoldenEntry:
    knot: KnotExpr
    invariant: str
    value: str
    provenance: str

    def describe(self) -> str:
        return f"{print_knot(self.knot)} {self.invariant} = {self.value}"


def default_golden_path() -> Path:
    return Path(str(resources.files("cp2genus") / "data" / "golden.txt"))


def load_golden(path: str | Path | None = None) -> list[GoldenEntry]:
    text = Path(path or default_golden_path()).read_text()
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 4 or not fields[3]:
            raise ValueError(f"golden table line {lineno}: expected 4 '|'-separated fields")
        entries.append(GoldenEntry(parse_knot(fields[0]), fields[1], fields[2], fields[3]))
    return entries


def evaluate_invariant(k: KnotExpr, name: str, overrides=None) -> str:
    """Live engine value of a golden-table invariant, rendered as text."""
    if name == "alexander":
        return str(knot_alexander(k))
    rec = invariant_record(k, overrides=overrides)
    if name == "signature":
        return str(rec.signature)
    if name == "arf":
        return str(rec.arf)
    if name == "tau":
        return "unknown" if not rec.tau.known else str(rec.tau.value)
    if name == "g4":
        lo, hi = rec.g4_lower, rec.g4_upper
        return str(lo) if lo == hi else f"[{lo},{hi}]"
    if name.startswith("sigma_"):
        return str(rec.sigma_p(int(name.split("_", 1)[1])))
    raise ValueError(f"unknown golden invariant {name!r}")


def _values_equal(name: str, expected: str, actual: str) -> bool:
    if name == "alexander":
        return LaurentPoly.parse(expected) == LaurentPoly.parse(actual)
    return expected.replace(" ", "") == actual.replace(" ", "")


def run_golden_suite(entries: list[GoldenEntry] | None = None, *, path=None,
                     overrides=None) -> list[tuple[GoldenEntry, bool, str]]:
    out = []
    for e in entries if entries is not None else load_golden(path):
        try:
            actual = evaluate_invariant(e.knot, e.invariant, overrides)
        except ArithmeticError as exc:
            actual = f"error: {exc}"
        out.append((e, _values_equal(e.invariant, e.value, actual)
                    if not actual.startswith("error") else False, actual))
    return out


# ---------------------------------------------------------------------------
# Agreement corpora
# ---------------------------------------------------------------------------

CORPUS_EXPRESSIONS = (
    "U", "T(2,3)", "-T(2,3)", "T(2,5)", "T(2,7)", "T(2,9)", "T(3,4)", "T(3,5)", "T(4,3)",
    "-T(3,4)", "braid(3; 1 2 1 2)", "braid(3; 1 -2 1 -2)", "braid(3; 1 1 1 -2 1 -2)",
    "braid(3; 1 1 1 2 -1 2)", "braid(4; 1 1 2 -1 -3 2 -3)", "braid(3; 1 1 -2 1 -2 -2)",
    "Wh-(-T(3,2))", "Wh+(T(3,2))",
    "T(2,3) # -T(2,3)", "T(2,3) # braid(3; 1 -2 1 -2)", "Wh-(U) # T(2,5)",
    "seifert([[-1,1],[0,-1]])", "seifert([[1,1],[0,-2]])",
)
AGREEMENT_PRIMES = (3, 5, 7, 11)


def corpus_matrices() -> list[tuple[str, SeifertMatrix]]:
    out = []
    for text in CORPUS_EXPRESSIONS:
        v = seifert_matrix(parse_knot(text))
        if v.size <= MAX_EXACT_SIZE:
            out.append((text, v))
    return out


def backend_agreement(primes=AGREEMENT_PRIMES) -> list[str]:
    """Disagreements between the float and exact backends (empty when all agree)."""
    failures = []
    for text, v in corpus_matrices():
        for p in primes:
            turns = sigma_p_turns(p)
            try:
                fl = lt_signature(v, turns)
            except SingularAtOmega:
                if not is_singular(v, turns):
                    failures.append(f"{text} p={p}: float backend reports singular")
                continue
            ex = exact_signature(v, turns)
            if fl != ex:
                failures.append(f"{text} p={p}: float {fl} != exact {ex}")
    return failures


def random_records(count: int = 200, seed: int = 20240531) -> list[InvariantRecord]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        sigma = {p: 2 * rng.randint(-2, 2) for p in (3, 5, 7, 11, 13)}
        out.append(InvariantRecord.synthetic(
            rng.randint(-20, 0), signature=2 * rng.randint(-2, 2),
            sigma=lambda p, s=sigma: s.get(p, 0), signature_bound=4))
    return out


def oracle_agreement(records: list[InvariantRecord] | None = None) -> list[str]:
    failures = []
    for i, rec in enumerate(records if records is not None else random_records()):
        value, window = bounds.cp2_lower_bound(rec)
        brute = brute_force_lower_bound(rec, max(1, ORACLE_RADIUS_FACTOR * window))
        if brute != value:
            failures.append(f"record {i} (tau={rec.tau.value}): windowed {value} "
                            f"!= brute force {brute}")
    return failures


def difference_identity(n_max: int = 50) -> list[str]:
    failures = []
    for n in range(1, n_max + 1):
        for d in range(n):
            achieved = closed.gtilde(n) + closed.gtilde(d) - closed.trick_genus(n, d)
            rhs, _ = closed.difference_lower_bound(n, d)
            if achieved != rhs:
                failures.append(f"(n,d)=({n},{d}): achieved {achieved} != bound {rhs}")
    return failures

