import cmath
import threading
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cp2genus.invariants import (
    Provenance,
    SingularAtOmega,
    arf,
    g4_interval,
    invariant_record,
    is_singular,
    knot_alexander,
    knot_lt_signature,
    knot_signature,
    lt_signature,
    sigma_p,
    sigma_p_turns,
    signature,
    tau,
)
from cp2genus.knots import (
    UNKNOT,
    Braid,
    BraidWord,
    Torus,
    connected_sum,
    mirror,
    parse_knot,
    seifert_blocks,
    seifert_matrix,
)
from cp2genus.polys import LaurentPoly

from conftest import SMALL_TORUS, knots, litherland_signature, torus_alexander

NEG_DOUBLE = parse_knot("Wh-(-T(3,2))")
PRIMES = (3, 5, 7, 11)


def _safe_sigma_p(k, p):
    try:
        return sigma_p(k, p)
    except SingularAtOmega:
        return None


# -- examples ---------------------------------------------------------------

def test_alexander_examples(trefoil):
    assert knot_alexander(UNKNOT) == LaurentPoly.one()
    assert str(knot_alexander(trefoil)) == "t - 1 + t^-1"
    assert knot_alexander(NEG_DOUBLE) == LaurentPoly.one()
    assert knot_alexander(parse_knot("Wh+(T(2,5))")) == LaurentPoly.one()


def test_figure_eight_alexander():
    assert str(knot_alexander(parse_knot("braid(3; 1 -2 1 -2)"))) == "-t + 3 - t^-1"


def test_signature_examples():
    assert knot_signature(UNKNOT) == 0
    assert knot_signature(Torus(2, 3)) == -2
    assert knot_signature(Torus(2, 5)) == -4
    assert knot_signature(Torus(3, 4)) == -6


def test_lt_signature_examples():
    third = Fraction(1, 3)
    assert knot_lt_signature(UNKNOT, third) == 0
    assert knot_lt_signature(Torus(2, 3), third) == -2
    for x in (Fraction(1, 7), Fraction(2, 5), Fraction(1, 2), 0.3):
        w = x if isinstance(x, Fraction) else cmath.exp(2j * cmath.pi * x)
        assert knot_lt_signature(NEG_DOUBLE, w) == 0


def test_sigma_p_examples():
    assert sigma_p(UNKNOT, 3) == 0
    assert sigma_p(Torus(2, 3), 3) == -2
    assert sigma_p(connected_sum(Torus(2, 3), mirror(Torus(2, 3))), 5) == 0
    assert sigma_p(Torus(2, 7), 3) == -4


def test_sigma_p_point_is_primitive_pth_root():
    # e^{pi i (p-1)/p} = e^{2 pi i (p-1)/(2p)}; reduced, its order is p
    for p in (3, 5, 7, 11, 13):
        assert sigma_p_turns(p).denominator in (p, 2 * p)
        w = cmath.exp(1j * cmath.pi * (p - 1) / p)
        assert abs(w ** p - 1) < 1e-12


def test_singular_point_raises():
    # Delta(T(2,3)) = Phi_6, which vanishes at e^{2 pi i / 6}
    v = seifert_matrix(Torus(2, 3))
    assert is_singular(v, Fraction(1, 6))
    with pytest.raises(SingularAtOmega):
        lt_signature(v, Fraction(1, 6))
    assert not is_singular(v, Fraction(1, 3))


def test_signature_of_sum_with_mirror_vanishes():
    assert signature(seifert_matrix(connected_sum(Torus(3, 2), mirror(Torus(3, 2))))) == 0


def test_arf_examples():
    assert arf(Torus(2, 3)) == 1
    assert arf(NEG_DOUBLE) == 0
    assert arf(Torus(2, 7)) == 0
    assert arf(UNKNOT) == 0


def test_tau_examples():
    t = tau(Torus(3, 2))
    assert (t.value, t.provenance) == (1, Provenance.TORUS_FORMULA)
    m = tau(mirror(Torus(3, 2)))
    assert (m.value, m.provenance) == (-1, Provenance.MIRROR_RULE)
    h = tau(NEG_DOUBLE)
    assert (h.value, h.provenance) == (-1, Provenance.OVERRIDE)
    assert h.describe() == "Override: Hedden, Theorem 1.5"
    five = tau(connected_sum(*[NEG_DOUBLE] * 5))
    assert (five.value, five.provenance) == (-5, Provenance.ADDITIVITY)
    assert "Hedden" in five.describe()


def test_tau_override_key_ignores_torus_parameter_order():
    assert tau(parse_knot("Wh-(-T(2,3))")).value == -1


def test_tau_unknown_absorbs():
    fig8 = parse_knot("braid(3; 1 -2 1 -2)")
    assert not tau(fig8).known
    assert not tau(connected_sum(fig8, Torus(2, 3))).known
    assert not tau(mirror(fig8)).known
    assert not tau(parse_knot("Wh+(T(2,3))")).known
    assert not tau(NEG_DOUBLE, overrides={}).known


def test_g4_interval_examples():
    assert g4_interval(Torus(4, 3)) == (3, 3)
    assert g4_interval(UNKNOT) == (0, 0)
    assert g4_interval(NEG_DOUBLE) == (1, 1)
    assert g4_interval(parse_knot("braid(3; 1 -2 1 -2)")) == (0, 1)


def test_invariant_record_examples():
    r = invariant_record(UNKNOT)
    assert (r.alexander, r.signature, r.arf, r.tau.value, r.g4_lower, r.g4_upper) == \
        (LaurentPoly.one(), 0, 0, 0, 0, 0)
    r = invariant_record(Torus(2, 3))
    assert (str(r.alexander), r.signature, r.arf, r.tau.value, r.g4_lower, r.g4_upper) == \
        ("t - 1 + t^-1", -2, 1, 1, 1, 1)
    r = invariant_record(connected_sum(Torus(2, 3), mirror(Torus(2, 3))))
    assert (r.signature, r.arf, r.tau.value) == (0, 0, 0)


def test_record_sigma_cache_is_filled_once_under_threads():
    calls = []

    def source(p):
        calls.append(p)
        return -2

    r = invariant_record(Torus(2, 3))
    r.sigma_source = source
    threads = [threading.Thread(target=r.sigma_p, args=(5,)) for _ in range(16)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert r.sigma_p(5) == -2
    assert r._sigma_cache == {5: -2}


@given(knots)
def test_knots_never_singular_at_odd_prime_roots(k):
    # Phi_p(1) = p while Delta(1) = 1, so Phi_p never divides Delta
    assert invariant_record(k).singular_primes == frozenset()


def test_synthetic_singular_prime_raises():
    from cp2genus.invariants import InvariantRecord

    r = InvariantRecord.synthetic(-3, singular_primes=(3,))
    with pytest.raises(SingularAtOmega):
        r.sigma_p(3)
    assert r.sigma_p(5) == 0


# -- oracles ----------------------------------------------------------------

_TURNS = [Fraction(a, b) for b in range(2, 14) for a in range(1, b) if Fraction(a, b).denominator == b]


@pytest.mark.parametrize("p, q", [(2, 3), (2, 5), (2, 7), (2, 9), (3, 4), (3, 5), (4, 5), (3, 7), (5, 6)])
def test_torus_signature_matches_lattice_count(p, q):
    v = seifert_matrix(Torus(p, q))
    for x in _TURNS:
        if is_singular(v, x):
            continue
        assert lt_signature(v, x) == litherland_signature(p, q, x), x


@pytest.mark.parametrize("p, q", [(2, 3), (3, 2), (2, 7), (3, 4), (4, 3), (4, 5), (5, 3), (6, 5), (7, 2)])
def test_torus_alexander_matches_product_formula(p, q):
    dense = knot_alexander(Torus(p, q)).dense()[1]
    assert dense == torus_alexander(p, q)


# -- properties -------------------------------------------------------------

@given(knots)
def test_signatures_even_and_mirror_negated(k):
    assert knot_signature(k) % 2 == 0
    assert knot_signature(mirror(k)) == -knot_signature(k)
    for p in PRIMES:
        s = _safe_sigma_p(k, p)
        if s is None:
            continue
        assert s % 2 == 0
        assert sigma_p(mirror(k), p) == -s


@given(knots, knots)
def test_signatures_additive(k1, k2):
    s = connected_sum(k1, k2)
    assert knot_signature(s) == knot_signature(k1) + knot_signature(k2)
    for p in PRIMES:
        a, b = _safe_sigma_p(k1, p), _safe_sigma_p(k2, p)
        if a is None or b is None:
            continue
        assert sigma_p(s, p) == a + b


@given(knots, knots)
def test_alexander_normalized_and_multiplicative(k1, k2):
    d1, d2 = knot_alexander(k1), knot_alexander(k2)
    for d in (d1, d2):
        assert d.is_symmetric()
        assert d(1) == 1
    assert knot_alexander(connected_sum(k1, k2)) == d1 * d2
    assert knot_alexander(mirror(k1)) == d1


@given(knots, knots)
def test_arf_additive_and_mirror_invariant(k1, k2):
    assert arf(connected_sum(k1, k2)) == arf(k1) ^ arf(k2)
    assert arf(mirror(k1)) == arf(k1)


@given(knots)
def test_tau_within_g4_interval(k):
    t = tau(k)
    lo, hi = g4_interval(k)
    assert lo <= hi
    if t.known:
        assert abs(t.value) <= hi
        assert tau(mirror(k)).value == -t.value


@given(knots, st.sampled_from(_TURNS))
def test_lt_signature_conjugation_symmetric(k, x):
    for b in seifert_blocks(k):
        if is_singular(b, x):
            continue
        assert lt_signature(b, x) == lt_signature(b, 1 - x)


def _profile(k):
    return (knot_alexander(k), knot_signature(k), arf(k),
            tuple(_safe_sigma_p(k, p) for p in PRIMES),
            tuple(knot_lt_signature(k, x) for x in (Fraction(1, 3), Fraction(2, 7), Fraction(1, 5))))


def test_presentation_independence():
    base = _profile(Torus(3, 2))
    assert _profile(Torus(2, 3)) == base
    assert _profile(Braid(BraidWord(2, (1, 1, 1)))) == base
    assert _profile(Braid(BraidWord(3, (1, 2, 1, 2)))) == base


@pytest.mark.parametrize("p, q", [pq for pq in SMALL_TORUS if min(pq) >= 2])
def test_torus_symmetry_in_parameters(p, q):
    assert _profile(Torus(p, q)) == _profile(Torus(q, p))


@pytest.mark.parametrize("strands, a, b", [
    (3, (1, 1, 1, 2, -1, 2), (2, -1, 2, 1, 1, 1)),      # conjugate
    (3, (1, 2, 1, 2), (2, 1, 2, 2)),                    # braid relation
    (4, (1, 1, 2, -1, -3, 2, -3), (-3, 1, 1, 2, -1, -3, 2)),
])
def test_braid_moves_preserve_invariants(strands, a, b):
    assert _profile(Braid(BraidWord(strands, a))) == _profile(Braid(BraidWord(strands, b)))
