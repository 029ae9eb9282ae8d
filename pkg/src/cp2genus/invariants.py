"""Abelian knot invariants from Seifert matrices, plus tau by rule.

Alexander polynomial, signature, Levine-Tristram signatures and the Arf
invariant are read off the Seifert matrix.  The tau invariant cannot be
computed from that data; it is assembled from closed-form rules for torus
knots, mirror negation, additivity under connected sum, and a small registry
of literature values.
"""

from __future__ import annotations

import cmath
import enum
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Mapping, Union

import mpmath
import numpy as np
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from .knots import (
    Braid,
    KnotExpr,
    Mirror,
    SeifertGiven,
    SeifertMatrix,
    Sum,
    Torus,
    Unknot,
    WhiteheadDouble,
    seifert_blocks,
)
from .polys import IntPoly, LaurentPoly, cyclotomic, poly_divmod

DEFAULT_TOL = 1e-8
ESCALATION_PRECISION = 256  # bits

# A point on the unit circle: either an exact root of unity e^{2 pi i x}
# given by the rational number of turns x, or a plain complex number.
Omega = Union[Fraction, complex]


class SingularAtOmega(ArithmeticError):
    """The Alexander polynomial vanishes at the requested point."""


class SignatureError(ArithmeticError):
    """Eigenvalue signs could not be resolved even after precision escalation."""


# ---------------------------------------------------------------------------
# Alexander polynomial
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1024)
def alexander_poly(v: SeifertMatrix) -> IntPoly:
    """Dense coefficients of ``det(t V - V^T)`` (lowest degree first).

    ``V - V^T`` is unimodular, so ``det(tV - V^T) = det(I + (t-1) M)`` with
    the integer matrix ``M = (V - V^T)^{-1} V``, whose characteristic
    polynomial is cheap to get exactly.
    """
    n = v.size
    if n == 0:
        return (1,)
    a = v.array()
    skew = DomainMatrix([[QQ(int(x)) for x in row] for row in a - a.T], (n, n), QQ)
    vq = DomainMatrix([[QQ(int(x)) for x in row] for row in a], (n, n), QQ)
    m = (skew.inv() * vq).convert_to(ZZ)
    charpoly = [int(c) for c in m.charpoly()]  # det(xI - M), leading coefficient first
    # det(I + sM) = sum_k e_k s^k with e_k = (-1)^k charpoly[k]
    out = [0] * (n + 1)
    for k in range(n + 1):
        e_k = (-1) ** k * charpoly[k]
        if e_k:
            # s^k = (t - 1)^k
            for j in range(k + 1):
                out[j] += e_k * comb(k, j) * (-1) ** (k - j)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def alexander(v: SeifertMatrix) -> LaurentPoly:
    """Symmetrized Alexander polynomial with ``Delta(1) = 1``."""
    a = alexander_poly(v)
    low = next(i for i, c in enumerate(a) if c)
    high = len(a) - 1
    if (low + high) % 2:
        raise ArithmeticError("Alexander polynomial of a knot must have even span")
    sign = 1 if sum(a) > 0 else -1
    return LaurentPoly.from_poly([sign * c for c in a], shift=-(low + high) // 2)


def _as_turns(omega: Omega) -> Fraction | None:
    if isinstance(omega, Fraction):
        x = omega % 1
        if x == 0:
            raise ValueError("omega = 1 is excluded")
        return x
    return None


def _omega_complex(omega: Omega) -> complex:
    x = _as_turns(omega)
    if x is not None:
        return cmath.exp(2j * cmath.pi * float(x))
    w = complex(omega)
    if abs(abs(w) - 1) > 1e-12 or abs(w - 1) < 1e-12:
        raise ValueError(f"omega must be a unit complex number other than 1, got {omega}")
    return w / abs(w)


def is_singular(v: SeifertMatrix, omega: Omega) -> bool:
    """Whether ``Delta(omega) = 0``; exact for roots of unity."""
    a = alexander_poly(v)
    x = _as_turns(omega)
    if x is not None:
        _, rem = poly_divmod(a, cyclotomic(x.denominator))
        return not rem
    with mpmath.workprec(ESCALATION_PRECISION):
        w = mpmath.mpc(_omega_complex(omega))
        val = mpmath.polyval(list(reversed(a)), w)
        return abs(val) < mpmath.mpf(2) ** (-ESCALATION_PRECISION // 2)


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------

def _hermitian_form(v: SeifertMatrix, w: complex) -> np.ndarray:
    a = v.array().astype(complex)
    return (1 - w) * a + (1 - w.conjugate()) * a.T


def _count_signs(eigs, tol: float) -> tuple[int, int]:
    pos = sum(1 for e in eigs if e > tol)
    neg = sum(1 for e in eigs if e < -tol)
    return pos, neg


def _float_signature(v: SeifertMatrix, omega: Omega, tol: float, *, nonsingular: bool) -> int:
    n = v.size
    if n == 0:
        return 0
    w = _omega_complex(omega)
    eigs = np.linalg.eigvalsh(_hermitian_form(v, w))
    pos, neg = _count_signs(eigs, tol)
    if pos + neg == n or not nonsingular:
        return pos - neg
    # small eigenvalues of a form known to be nondegenerate: redo in high precision
    x = _as_turns(omega)
    with mpmath.workprec(ESCALATION_PRECISION):
        if x is not None:
            wm = mpmath.expjpi(2 * mpmath.mpf(x.numerator) / x.denominator)
        else:
            wm = mpmath.mpc(w)
        a = mpmath.matrix(v.array().tolist())
        h = (1 - wm) * a + (1 - mpmath.conj(wm)) * a.T
        eigs = mpmath.eighe(h, eigvals_only=True)
        small = mpmath.mpf(2) ** (-ESCALATION_PRECISION // 2)
        pos, neg = _count_signs(eigs, small)
    if pos + neg != n:
        raise SignatureError("could not separate eigenvalues from zero after escalation")
    return pos - neg


def lt_signature(v: SeifertMatrix, omega: Omega, *, backend: str = "float",
                 tol: float = DEFAULT_TOL) -> int:
    """Levine-Tristram signature of ``(1-w)V + (1-conj w)V^T``.

    ``omega`` is a :class:`~fractions.Fraction` number of turns for an exact
    root of unity, or a unit complex number.  Raises :class:`SingularAtOmega`
    when the Alexander polynomial vanishes there.
    """
    if is_singular(v, omega):
        raise SingularAtOmega(f"Delta vanishes at omega = {omega}")
    if backend == "exact":
        from .oracle import exact_signature

        x = _as_turns(omega)
        if x is None:
            raise ValueError("the exact backend needs a root of unity")
        return exact_signature(v, x)
    if backend != "float":
        raise ValueError(f"unknown signature backend {backend!r}")
    return _float_signature(v, omega, tol, nonsingular=True)


def signature(v: SeifertMatrix, *, backend: str = "float", tol: float = DEFAULT_TOL) -> int:
    """Signature of ``V + V^T``; zero eigenvalues contribute nothing."""
    half = Fraction(1, 2)
    if is_singular(v, half):
        return _float_signature(v, half, tol, nonsingular=False)
    return lt_signature(v, half, backend=backend, tol=tol)


def sigma_p_turns(p: int) -> Fraction:
    """``e^{pi i (p-1)/p}`` as a number of turns (a primitive p-th root of unity)."""
    return Fraction(p - 1, 2 * p)


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    return all(p % k for k in range(3, int(p ** 0.5) + 1, 2))


def odd_prime_factors(d: int) -> list[int]:
    d = abs(d)
    out = []
    k = 3
    while d % 2 == 0 and d:
        d //= 2
    while k * k <= d:
        if d % k == 0:
            out.append(k)
            while d % k == 0:
                d //= k
        k += 2
    if d > 1:
        out.append(d)
    return out


# ---------------------------------------------------------------------------
# Knot-level invariants
# ---------------------------------------------------------------------------

def knot_alexander(k: KnotExpr) -> LaurentPoly:
    out = LaurentPoly.one()
    for b in seifert_blocks(k):
        out = out * alexander(b)
    return out


def knot_signature(k: KnotExpr, **kw) -> int:
    return sum(signature(b, **kw) for b in seifert_blocks(k))


def knot_lt_signature(k: KnotExpr, omega: Omega, **kw) -> int:
    # additive over summands; a summand singular at omega makes the sum singular
    return sum(lt_signature(b, omega, **kw) for b in seifert_blocks(k))


def sigma_p(k: KnotExpr, p: int, **kw) -> int:
    if not is_odd_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    return knot_lt_signature(k, sigma_p_turns(p), **kw)


def arf_from_alexander(delta: LaurentPoly) -> int:
    return 0 if delta(-1) % 8 in (1, 7) else 1


def arf(k: KnotExpr) -> int:
    return arf_from_alexander(knot_alexander(k))


class Provenance(enum.Enum):
    TORUS_FORMULA = "TorusFormula"
    MIRROR_RULE = "MirrorRule"
    ADDITIVITY = "Additivity"
    OVERRIDE = "Override"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class TauValue:
    value: int | None
    provenance: Provenance
    citations: tuple[str, ...] = ()

    def __post_init__(self):
        if (self.value is None) != (self.provenance is Provenance.UNKNOWN):
            raise ValueError("tau carries a value exactly when its provenance is known")

    @property
    def known(self) -> bool:
        return self.value is not None

    def describe(self) -> str:
        cites = "; ".join(self.citations)
        if self.provenance is Provenance.OVERRIDE:
            return f"Override: {cites}"
        if cites:
            return f"{self.provenance.value} (Override: {cites})"
        return self.provenance.value


TAU_UNKNOWN = TauValue(None, Provenance.UNKNOWN)


def tau_key(k: KnotExpr) -> str:
    """Registry key: printed form with torus parameters in increasing order."""
    if isinstance(k, Torus):
        p, q = sorted((k.p, k.q))
        return f"T({p},{q})"
    if isinstance(k, Mirror):
        return "-" + tau_key(k.knot)
    if isinstance(k, Sum):
        return " # ".join(sorted(tau_key(t) for t in k.terms))
    if isinstance(k, WhiteheadDouble):
        return f"Wh{'+' if k.clasp > 0 else '-'}({tau_key(k.companion)})"
    from .knots import print_knot

    return print_knot(k)


# Literature values of tau for knots no rule covers.
TAU_OVERRIDES: dict[str, tuple[int, str]] = {
    "Wh-(-T(2,3))": (-1, "Hedden, Theorem 1.5"),
}


def tau(k: KnotExpr, overrides: Mapping[str, tuple[int, str]] | None = None) -> TauValue:
    reg = TAU_OVERRIDES if overrides is None else overrides
    hit = reg.get(tau_key(k))
    if hit is not None:
        return TauValue(hit[0], Provenance.OVERRIDE, (hit[1],))
    if isinstance(k, Unknot):
        return TauValue(0, Provenance.TORUS_FORMULA)
    if isinstance(k, Torus):
        return TauValue((k.p - 1) * (k.q - 1) // 2, Provenance.TORUS_FORMULA)
    if isinstance(k, Mirror):
        inner = tau(k.knot, reg)
        if not inner.known:
            return TAU_UNKNOWN
        return TauValue(-inner.value, Provenance.MIRROR_RULE, inner.citations)
    if isinstance(k, Sum):
        parts = [tau(t, reg) for t in k.terms]
        if not all(p.known for p in parts):
            return TAU_UNKNOWN
        cites = tuple(dict.fromkeys(c for p in parts for c in p.citations))
        return TauValue(sum(p.value for p in parts), Provenance.ADDITIVITY, cites)
    return TAU_UNKNOWN


def g4_upper(k: KnotExpr) -> int:
    if isinstance(k, Unknot):
        return 0
    if isinstance(k, Torus):
        return (k.p - 1) * (k.q - 1) // 2
    if isinstance(k, Mirror):
        return g4_upper(k.knot)
    if isinstance(k, Sum):
        return sum(g4_upper(t) for t in k.terms)
    if isinstance(k, WhiteheadDouble):
        return 1
    if isinstance(k, (Braid, SeifertGiven)):
        return sum(b.genus for b in seifert_blocks(k))
    raise TypeError(f"not a knot expression: {k!r}")


def g4_interval(k: KnotExpr, overrides=None) -> tuple[int, int]:
    t = tau(k, overrides)
    lower = max(abs(t.value) if t.known else 0, abs(knot_signature(k)) // 2, 0)
    upper = g4_upper(k)
    if lower > upper:
        raise ArithmeticError(f"inconsistent slice genus interval [{lower}, {upper}]")
    return lower, upper


# ---------------------------------------------------------------------------
# Record
# ---------------------------------------------------------------------------

@dataclass
class InvariantRecord:
    """Invariants consumed by the bound engines.

    ``sigma_p`` values are filled lazily from ``sigma_source``; the cache is
    guarded so each prime is computed at most once per record.
    """

    alexander: LaurentPoly
    signature: int
    arf: int
    tau: TauValue
    g4_lower: int
    g4_upper: int
    sigma_source: Callable[[int], int] = field(repr=False, default=lambda p: 0)
    # |sigma_omega| <= signature_bound for every omega on the circle
    signature_bound: int = 0
    singular_primes: frozenset[int] = frozenset()
    _sigma_cache: dict[int, int] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def sigma_p(self, p: int) -> int:
        if p in self.singular_primes:
            raise SingularAtOmega(f"Delta vanishes at the primitive {p}-th roots of unity")
        with self._lock:
            if p in self._sigma_cache:
                return self._sigma_cache[p]
        value = self.sigma_source(p)
        with self._lock:
            return self._sigma_cache.setdefault(p, value)

    @classmethod
    def synthetic(cls, tau: int | None, *, signature: int = 0,
                  sigma: Callable[[int], int] | Mapping[int, int] | None = None,
                  signature_bound: int | None = None,
                  singular_primes=()) -> InvariantRecord:
        """Record with prescribed invariants and no underlying knot."""
        if sigma is None:
            source = lambda p: 0  # noqa: E731
        elif callable(sigma):
            source = sigma
        else:
            table = dict(sigma)
            source = lambda p: table.get(p, 0)  # noqa: E731
        tv = TAU_UNKNOWN if tau is None else TauValue(tau, Provenance.OVERRIDE, ("synthetic",))
        if signature_bound is None:
            values = [abs(signature)]
            if isinstance(sigma, Mapping):
                values += [abs(x) for x in sigma.values()]
            elif callable(sigma):
                raise ValueError("signature_bound is required with a callable sigma")
            signature_bound = max(values)
        lower = max(abs(tau) if tau is not None else 0, abs(signature) // 2)
        return cls(alexander=LaurentPoly.one(), signature=signature, arf=0, tau=tv,
                   g4_lower=lower, g4_upper=max(lower, signature_bound // 2),
                   sigma_source=source, signature_bound=signature_bound,
                   singular_primes=frozenset(singular_primes))


def singular_odd_primes(k: KnotExpr) -> frozenset[int]:
    """Odd primes p with Delta vanishing at primitive p-th roots of unity.

    ``Phi_p`` has degree ``p - 1``, so only ``p <= 2g + 1`` can occur.
    """
    out = set()
    for b in seifert_blocks(k):
        for p in range(3, b.size + 2, 2):
            if is_odd_prime(p) and is_singular(b, sigma_p_turns(p)):
                out.add(p)
    return frozenset(out)


def invariant_record(k: KnotExpr, *, overrides=None, backend: str = "float",
                     tol: float = DEFAULT_TOL) -> InvariantRecord:
    blocks = seifert_blocks(k)
    delta = knot_alexander(k)
    sig = sum(signature(b, backend=backend, tol=tol) for b in blocks)
    t = tau(k, overrides)
    lower, upper = g4_interval(k, overrides)

    def source(p: int) -> int:
        return sigma_p(k, p, backend=backend, tol=tol)

    return InvariantRecord(
        alexander=delta,
        signature=sig,
        arf=arf_from_alexander(delta),
        tau=t,
        g4_lower=lower,
        g4_upper=upper,
        sigma_source=source,
        signature_bound=sum(b.size for b in blocks),
        singular_primes=singular_odd_primes(k),
    )
