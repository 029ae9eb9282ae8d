import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from cp2genus.closed import (
    closed_report,
    corollary_difference,
    difference_lower_bound,
    gtilde,
    normalize_class,
    thom_genus,
    torus_g4,
    trick_genus,
)


@pytest.mark.parametrize("d, g", [(0, 0), (3, 1), (-5, 6), (1, 0), (2, 0), (10, 36)])
def test_thom_genus(d, g):
    assert thom_genus(d) == g


@pytest.mark.parametrize("k, g", [(0, 1), (1, 0), (6, 10)])
def test_gtilde(k, g):
    assert gtilde(k) == g


def test_gtilde_rejects_negative():
    with pytest.raises(ValueError):
        gtilde(-1)


def test_thom_and_gtilde_differ_only_at_zero():
    for d in range(-30, 31):
        if d:
            assert thom_genus(d) == gtilde(abs(d))
    assert gtilde(0) - thom_genus(0) == 1


@pytest.mark.parametrize("n, d, g", [(4, 0, 2), (5, 0, 4), (6, 2, 10), (6, 0, 8), (5, 1, 5), (1, 0, 0),
                                     (5, 4, 12)])
def test_trick_genus(n, d, g):
    assert trick_genus(n, d) == g


@pytest.mark.parametrize("n, d", [(3, 3), (2, 5), (4, -1)])
def test_trick_genus_precondition(n, d):
    with pytest.raises(ValueError):
        trick_genus(n, d)


def test_trick_formulas_match_symbolic_identity():
    n, d = sympy.symbols("n d")
    even = ((n + d - 2) / 2) ** 2 + ((n - d - 2) / 2) ** 2
    odd = ((n + d - 1) / 2) * ((n + d - 3) / 2) + ((n - d - 1) / 2) * ((n - d - 3) / 2)
    gt = lambda k: (k - 1) * (k - 2) / 2  # noqa: E731
    assert sympy.expand(gt(n) + gt(d) - even - (n - 3 * d) / 2) == 0
    assert sympy.expand(gt(n) + gt(d) - odd - (n - 3 * d + 1) / 2) == 0
    for nn in range(1, 30):
        for dd in range(nn):
            ref = even if (nn - dd) % 2 == 0 else odd
            assert trick_genus(nn, dd) == ref.subs({n: nn, d: dd})


def test_difference_identity_exhaustive():
    for n in range(1, 201):
        for d in range(n):
            assert gtilde(n) + gtilde(d) - trick_genus(n, d) == difference_lower_bound(n, d)[0]


@pytest.mark.parametrize("n, d, value, significant", [(6, 0, 3, True), (5, 1, 1, True), (5, 4, -3, False),
                                                      (7, 2, 1, True), (9, 3, 0, False)])
def test_difference_lower_bound(n, d, value, significant):
    assert difference_lower_bound(n, d) == (value, significant)


def test_corollary_difference():
    assert [corollary_difference(n) for n in (4, 5, 1)] == [1, 2, 0]
    for n in range(2, 101):
        assert corollary_difference(n) == torus_g4(n) - trick_genus(n, 0)


def test_trick_genus_monotone_in_n():
    failures = [(n, d) for d in range(0, 60) for n in range(d + 1, 120)
                if trick_genus(n + 1, d) < trick_genus(n, d)]
    assert failures == []


_ints = st.integers(-80, 80)


@given(_ints, _ints)
def test_normalization_idempotent_and_symmetric(n, d):
    c = normalize_class(n, d)
    assert c[0] >= c[1] >= 0
    assert normalize_class(*c) == c
    for m in [(d, n), (-n, -d), (n, -d), (-n, d)]:
        assert normalize_class(*m) == c


@pytest.mark.parametrize("n, d, naive, trick, best, diff", [
    (6, 0, 10, 8, 8, 3),
    (5, 1, 6, 5, 5, 1),
    (1, 0, 0, 0, 0, 1),
])
def test_closed_report_examples(n, d, naive, trick, best, diff):
    r = closed_report(n, d)
    assert (r.naive_upper, r.trick_genus, r.best_upper, r.difference_achieved) == (naive, trick, best, diff)
    assert r.difference_achieved == r.difference_rhs


def test_closed_report_normalizes_and_handles_diagonal():
    assert closed_report(-1, 6) == closed_report(6, 1)
    r = closed_report(3, 3)
    assert r.trick_genus is None and r.best_upper == r.naive_upper == 2


@given(st.integers(1, 60).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1))))
def test_closed_report_invariants(nd):
    r = closed_report(*nd)
    assert r.best_upper == min(r.naive_upper, r.trick_genus)
    assert r.difference_achieved == r.gtilde_sum - r.trick_genus
