"""Closed surfaces in CP^2 and CP^2 # CP^2.

A class ``(n, d)`` in ``CP^2 # CP^2`` is ``n h1 + d h2``.  The naive surface
for it is the connected sum of the Thom-minimal surfaces in each factor; the
twisted torus knot construction beats it by ``difference_lower_bound(n, d)``.
"""

from __future__ import annotations

from dataclasses import dataclass


def thom_genus(d: int) -> int:
    """Minimal genus of a closed surface of degree ``d`` in CP^2."""
    if d == 0:
        return 0
    a = abs(d)
    return (a - 1) * (a - 2) // 2


def gtilde(k: int) -> int:
    """The polynomial (k-1)(k-2)/2; equals ``thom_genus`` except at 0."""
    if k < 0:
        raise ValueError(f"gtilde is defined for k >= 0, got {k}")
    return (k - 1) * (k - 2) // 2


def _check_pair(n: int, d: int) -> None:
    if not n > d >= 0:
        raise ValueError(f"need n > d >= 0, got (n, d) = ({n}, {d})")


def trick_genus(n: int, d: int) -> int:
    """Genus of the degree-``d`` surface bounded by ``T(n,n-1)`` in punctured CP^2.

    When ``n = d`` mod 2 the surface caps ``T(a,2a-1) # T(b,2b-1)`` with
    ``a, b = (n+d)/2, (n-d)/2``; otherwise it caps ``T(a,2a+1) # T(b,2b+1)``
    with ``a, b = (n+d-1)/2, (n-d-1)/2``.
    """
    _check_pair(n, d)
    if (n - d) % 2 == 0:
        a, b = (n + d) // 2, (n - d) // 2
        return (a - 1) ** 2 + (b - 1) ** 2
    a, b = (n + d - 1) // 2, (n - d - 1) // 2
    return a * (a - 1) + b * (b - 1)


def torus_g4(n: int) -> int:
    """Slice genus of ``T(n, n-1)``."""
    return (n - 1) * (n - 2) // 2


def corollary_difference(n: int) -> int:
    """How far the degree-0 surface for ``T(n,n-1)`` undercuts its slice genus."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return (n - 2) // 2 if n % 2 == 0 else (n - 1) // 2


def difference_lower_bound(n: int, d: int) -> tuple[int, bool]:
    """``(value, significant)``: the guaranteed gain over the naive genus.

    The value may be nonpositive, in which case it carries no information.
    """
    _check_pair(n, d)
    value = (n - 3 * d) // 2 if (n - d) % 2 == 0 else (n - 3 * d + 1) // 2
    return value, value > 0


def normalize_class(n: int, d: int) -> tuple[int, int]:
    """Representative with ``n >= d >= 0`` under sign changes and swapping factors."""
    a, b = abs(n), abs(d)
    return (a, b) if a >= b else (b, a)


@dataclass(frozen=True)
class ClosedClassReport:
    n: int
    d: int
    gtilde_sum: int
    trick_genus: int | None
    naive_upper: int
    best_upper: int
    difference_rhs: int | None
    significant: bool
    difference_achieved: int | None

    def as_json(self) -> dict:
        return {
            "class": [self.n, self.d],
            "gtilde_sum": self.gtilde_sum,
            "trick_genus": self.trick_genus,
            "naive_upper": self.naive_upper,
            "best_upper": self.best_upper,
            "difference_rhs": self.difference_rhs,
            "significant": self.significant,
            "difference_achieved": self.difference_achieved,
        }


class DifferenceIdentityError(AssertionError):
    pass


def closed_report(n: int, d: int) -> ClosedClassReport:
    n, d = normalize_class(n, d)
    g_sum = gtilde(n) + gtilde(d)
    naive = thom_genus(n) + thom_genus(d)
    if n == d:
        return ClosedClassReport(n, d, g_sum, None, naive, naive, None, False, None)
    tg = trick_genus(n, d)
    rhs, significant = difference_lower_bound(n, d)
    achieved = g_sum - tg
    if achieved != rhs:
        raise DifferenceIdentityError(f"({n},{d}): construction gains {achieved}, bound says {rhs}")
    return ClosedClassReport(n, d, g_sum, tg, naive, min(naive, tg), rhs, significant, achieved)
