"""Genus bounds for surfaces in the punctured complex projective plane.

Lower bounds come from three inequalities relating the genus ``g`` and degree
``d`` of a surface bounded by a knot to its tau invariant, its signature
(``d`` even) and its Levine-Tristram signatures ``sigma_p`` (odd primes ``p``
dividing ``d``).  All three grow quadratically in ``|d|``, which is what makes
the minimum over every degree a finite search.

Upper bounds come from explicit surfaces: slice surfaces pushed in from the
4-ball, twisted-torus-knot surfaces for ``T(n,n-1)``, the degree-``n`` slice
disk of ``-T(n,n-1)``, and boundary connected sums of these.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .closed import trick_genus
from .invariants import (
    InvariantRecord,
    SingularAtOmega,
    invariant_record,
    is_odd_prime,
    odd_prime_factors,
)
from .knots import KnotExpr, summands, torus_pair

# The prime inequality has leading coefficient (p^2-1)/(2p^2) >= 4/9 for odd
# p, and the even one has 1/2; 4/9 bounds both from below.
GROWTH_CONSTANT = Fraction(4, 9)
DEFAULT_PRIMES = (3, 5, 7, 11, 13)


class BoundsConsistencyError(AssertionError):
    """A certified lower bound exceeds an explicit construction."""


def _genus_from_2g1(x: Fraction | int) -> int:
    """Smallest g >= 0 with 2g + 1 >= |x|."""
    return max(0, ceil((abs(Fraction(x)) - 1) / 2))


def lemma_tau_bound(tau: int, d: int) -> int:
    a = abs(d)
    return max(0, -tau + a * (1 - a) // 2)


def lemma_even_bound(sigma: int, d: int) -> int:
    if d % 2:
        raise ValueError(f"the signature bound needs an even degree, got {d}")
    return _genus_from_2g1(Fraction(d * d, 2) - 1 - sigma)


def lemma_odd_prime_bound(sigma_p: int, d: int, p: int) -> int:
    if not is_odd_prime(p) or d % p:
        raise ValueError(f"the prime bound needs an odd prime p dividing d, got p={p}, d={d}")
    return _genus_from_2g1(Fraction(p * p - 1, 2 * p * p) * d * d - 1 - sigma_p)


@dataclass(frozen=True)
class DegreeBoundRow:
    d: int
    tau_bound: int | None
    even_bound: int | None
    prime_bounds: dict[int, int]
    combined: int
    skipped_primes: tuple[int, ...] = ()

    def as_json(self) -> dict:
        return {
            "d": self.d,
            "rules": {
                "tau": self.tau_bound,
                "even": self.even_bound,
                "prime": {str(p): v for p, v in sorted(self.prime_bounds.items())},
            },
            "combined": self.combined,
        }


def degree_row(record: InvariantRecord, d: int, primes_at_zero=DEFAULT_PRIMES) -> DegreeBoundRow:
    """All lower bounds for surfaces of degree ``d``.

    Every odd prime divides 0, so the null-homologous row uses the primes in
    ``primes_at_zero``; other rows use every odd prime factor of ``d``.
    """
    tau_b = lemma_tau_bound(record.tau.value, d) if record.tau.known else None
    even_b = lemma_even_bound(record.signature, d) if d % 2 == 0 else None
    primes = sorted(primes_at_zero) if d == 0 else odd_prime_factors(d)
    prime_b: dict[int, int] = {}
    skipped = []
    for p in primes:
        try:
            prime_b[p] = lemma_odd_prime_bound(record.sigma_p(p), d, p)
        except SingularAtOmega:
            skipped.append(p)
    applied = [b for b in (tau_b, even_b) if b is not None] + list(prime_b.values())
    return DegreeBoundRow(d, tau_b, even_b, prime_b, max([0] + applied), tuple(skipped))


def _floor_bound(record: InvariantRecord, d: int) -> int:
    """Genus lower bound valid for every row of degree >= |d| > 1."""
    x = GROWTH_CONSTANT * d * d - 1 - record.signature_bound
    return _genus_from_2g1(x) if x > 0 else 0


def cp2_lower_bound(record: InvariantRecord, primes_at_zero=DEFAULT_PRIMES) -> tuple[int, int]:
    """Minimum of the combined row bound over all degrees, and the window used.

    The search walks ``|d| = 0, 1, 2, ...`` and stops once the quadratic
    floor shared by every row with ``|d| > 1`` reaches the best value found,
    so the returned minimum is exact over all integers.  If some odd prime
    ``p`` is singular for ``Delta``, degrees ``p^k`` escape every inequality
    except tau, which eventually goes negative; the minimum is then 0.
    """
    best = degree_row(record, 0, primes_at_zero).combined
    d = 0
    while best > 0 and not (d > 1 and _floor_bound(record, d) >= best):
        d += 1
        best = min(best, degree_row(record, d, primes_at_zero).combined)
    if record.singular_primes:
        return 0, d
    return best, d


class ConstructionTag(enum.Enum):
    PUSH_IN_B4 = "PushInB4"
    TRICK_EVEN = "TrickEven"
    TRICK_ODD = "TrickOdd"
    SLICE_DISK_DEGREE_N = "SliceDiskDegreeN"
    BOUNDARY_SUM = "BoundarySum"


@dataclass(frozen=True)
class SurfaceConstruction:
    tag: ConstructionTag
    degree: int
    genus: int
    parts: tuple["SurfaceConstruction", ...] = ()

    def as_json(self) -> dict:
        out = {"tag": self.tag.value, "degree": self.degree, "genus": self.genus}
        if self.parts:
            out["parts"] = [p.as_json() for p in self.parts]
        return out


def _prime_constructions(k: KnotExpr, record_upper) -> list[SurfaceConstruction]:
    out = [SurfaceConstruction(ConstructionTag.PUSH_IN_B4, 0, record_upper(k))]
    pair = torus_pair(k)
    if pair is not None:
        n, sign = pair
        if sign > 0:
            for d in range(n):
                tag = ConstructionTag.TRICK_EVEN if (n - d) % 2 == 0 else ConstructionTag.TRICK_ODD
                out.append(SurfaceConstruction(tag, d, trick_genus(n, d)))
        else:
            out.append(SurfaceConstruction(ConstructionTag.SLICE_DISK_DEGREE_N, n, 0))
    return out


def cp2_upper_bounds(k: KnotExpr) -> list[SurfaceConstruction]:
    """Every explicit surface the rule set knows for ``k``."""
    from .invariants import g4_upper

    parts = summands(k)
    out = [SurfaceConstruction(ConstructionTag.PUSH_IN_B4, 0, g4_upper(k))]
    if len(parts) <= 1:
        out.extend(c for c in _prime_constructions(k, g4_upper)
                   if c.tag is not ConstructionTag.PUSH_IN_B4)
        return out
    for i, part in enumerate(parts):
        rest = sum(g4_upper(p) for j, p in enumerate(parts) if j != i)
        for c in _prime_constructions(part, g4_upper):
            if c.tag is ConstructionTag.PUSH_IN_B4:
                continue
            ball = SurfaceConstruction(ConstructionTag.PUSH_IN_B4, 0, rest)
            out.append(SurfaceConstruction(ConstructionTag.BOUNDARY_SUM, c.degree,
                                           c.genus + rest, (c, ball)))
    return out


def topological_genus_interval(k: KnotExpr, record: InvariantRecord | None = None):
    """``((lower, upper), notes)`` for the locally flat genus in punctured CP^2."""
    arf = (record or invariant_record(k)).arf
    if arf == 0:
        return (0, 0), []
    return (0, 1), ["Arf = 1: the topological genus is at most 1, but Arf = 1 alone "
                    "does not decide it (the right-handed trefoil has Arf = 1 and "
                    "topological genus 0)"]


CONVENTIONS = {
    "torus": "T(p,q) is the closure of (s1 ... s_{p-1})^q on p strands (positive)",
    "signature": "sigma(T(2,3)) = -2",
    "tau": "tau(T(3,2)) = +1",
    "mirror": "V(-K) = -V^T; left-handed torus knot = -T(p,q)",
}


@dataclass
class BoundReport:
    knot: KnotExpr
    record: InvariantRecord
    rows: list[DegreeBoundRow]
    smooth_lower: int
    window: int
    upper_candidates: list[SurfaceConstruction]
    smooth_upper: int
    topological: tuple[int, int]
    notes: list[str] = field(default_factory=list)


def cp2_report(k: KnotExpr, *, record: InvariantRecord | None = None,
               window: int | None = None, primes_at_zero=DEFAULT_PRIMES) -> BoundReport:
    record = record or invariant_record(k)
    lower, radius = cp2_lower_bound(record, primes_at_zero)
    radius = max(radius, window or 0)
    rows = [degree_row(record, d, primes_at_zero) for d in range(radius + 1)]
    uppers = cp2_upper_bounds(k)
    upper = min(c.genus for c in uppers)
    topo, notes = topological_genus_interval(k, record)
    notes = list(notes)
    if not record.tau.known:
        notes.append("tau unknown: degree 0 and 1 rows are unconstrained by tau, "
                     "so the smooth lower bound may be 0")
    for row in rows:
        for p in row.skipped_primes:
            notes.append(f"d={row.d}: sigma_{p} skipped, Delta vanishes at the "
                         f"primitive {p}-th roots of unity")
    if record.singular_primes:
        notes.append("singular primes " + ",".join(map(str, sorted(record.singular_primes)))
                     + ": degrees that are powers of them are unconstrained, lower bound 0")
    if topo == (0, 0) and lower > 0:
        notes.append("topologically slice in CP^2 but not smoothly slice there")
    if lower > upper:
        raise BoundsConsistencyError(
            f"lower bound {lower} exceeds construction genus {upper} for this knot")
    return BoundReport(k, record, rows, lower, radius, uppers, upper, topo, notes)
