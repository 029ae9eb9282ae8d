from fractions import Fraction

import hypothesis
import pytest
from hypothesis import strategies as st

from cp2genus.knots import (
    UNKNOT,
    Braid,
    BraidWord,
    SeifertGiven,
    SeifertMatrix,
    Torus,
    WhiteheadDouble,
    connected_sum,
    mirror,
)
from cp2genus.polys import poly_divmod, poly_mul, trim

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

SMALL_TORUS = [(2, 3), (3, 2), (2, 5), (2, 7), (3, 4), (4, 3), (3, 5), (2, 1)]
SMALL_BRAIDS = [
    (3, (1, 2, 1, 2)),
    (3, (1, -2, 1, -2)),
    (3, (1, 1, 1, 2, -1, 2)),
    (3, (1, 1, -2, 1, -2, -2)),
    (4, (1, 1, 2, -1, -3, 2, -3)),
    (2, (-1, -1, -1)),
]

leaves = st.one_of(
    st.just(UNKNOT),
    st.sampled_from(SMALL_TORUS).map(lambda pq: Torus(*pq)),
    st.sampled_from(SMALL_BRAIDS).map(lambda sw: Braid(BraidWord(*sw))),
    st.tuples(st.sampled_from([1, -1]), st.sampled_from(SMALL_TORUS[:3])).map(
        lambda c: WhiteheadDouble(c[0], mirror(Torus(*c[1])))),
    st.just(SeifertGiven(SeifertMatrix(((1, 1), (0, -2))))),
)

knots = st.recursive(
    leaves,
    lambda inner: st.one_of(
        inner.map(mirror),
        st.lists(inner, min_size=2, max_size=3).map(lambda ks: connected_sum(*ks)),
    ),
    max_leaves=4,
)


def litherland_signature(p: int, q: int, turns: Fraction) -> int:
    """Levine-Tristram signature of the positive torus knot T(p,q) by lattice counting.

    Pairs (i, j) with 0 < i < p, 0 < j < q and i/p + j/q strictly inside
    (x, x + 1) count -1, the others +1.
    """
    total = 0
    for i in range(1, p):
        for j in range(1, q):
            s = Fraction(i, p) + Fraction(j, q)
            if s in (turns, turns + 1):
                raise ValueError("omega is a root of the Alexander polynomial")
            total += -1 if turns < s < turns + 1 else 1
    return total


def torus_alexander(p: int, q: int) -> tuple[int, ...]:
    """(t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)) as dense coefficients."""
    def xm1(n):
        return (-1,) + (0,) * (n - 1) + (1,)

    num = poly_mul(xm1(p * q), xm1(1))
    den = poly_mul(xm1(p), xm1(q))
    quot, rem = poly_divmod(num, den)
    assert not trim(rem)
    return quot


@pytest.fixture
def trefoil():
    return Torus(3, 2)
