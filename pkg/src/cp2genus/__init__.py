"""Certified genus bounds for knots in punctured CP^2 and for classes in CP^2 # CP^2."""

from .bounds import (
    BoundReport,
    DegreeBoundRow,
    SurfaceConstruction,
    cp2_lower_bound,
    cp2_report,
    cp2_upper_bounds,
    degree_row,
    lemma_even_bound,
    lemma_odd_prime_bound,
    lemma_tau_bound,
    topological_genus_interval,
)
from .closed import (
    closed_report,
    corollary_difference,
    difference_lower_bound,
    gtilde,
    thom_genus,
    trick_genus,
)
from .invariants import (
    InvariantRecord,
    SingularAtOmega,
    TauValue,
    alexander,
    arf,
    g4_interval,
    invariant_record,
    lt_signature,
    sigma_p,
    signature,
    tau,
)
from .knots import (
    UNKNOT,
    Braid,
    BraidWord,
    KnotError,
    KnotSyntaxError,
    Mirror,
    SeifertGiven,
    SeifertMatrix,
    Sum,
    Torus,
    WhiteheadDouble,
    braid_components,
    connected_sum,
    mirror,
    parse_knot,
    print_knot,
    seifert_matrix,
)

__version__ = "0.1.0"
