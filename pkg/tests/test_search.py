import pytest

from bulbs import formulas
from bulbs.constructions import tower
from bulbs.search import (
    BOUNDED_ONLY,
    BOUNDS_MATCH,
    EXHAUSTIVE,
    EmptyClassError,
    SearchLimitError,
    brute,
    brute_mu,
    brute_nu,
    canonical_first_columns,
    certify_mu_via_bounds,
    column_candidates,
    nu_witness_state,
    search_value,
    search_value_naive,
)
from bulbs.wiring import evaluate_M, in_class, spans_equivalent

SMALL = [(n, m) for n in range(1, 6) for m in range(1, n + 1)]


def _closed(target, n, m):
    return formulas.closed_value(target, n, m)


@pytest.mark.parametrize("n,m", SMALL)
def test_mu_matches_closed_form(n, m):
    assert brute_mu(n, m).value == _closed("mu", n, m)
    star = formulas.mu_star_closed(n, m)
    if isinstance(star, int):
        assert brute_mu(n, m, exact_degree=True).value == star


@pytest.mark.parametrize("n,m", [(n, m) for n, m in SMALL if m > 1])
def test_nu_matches_closed_form(n, m):
    assert brute_nu(n, m).value == _closed("nu", n, m)
    assert brute_nu(n, m, exact_degree=True).value == _closed("nu_star", n, m)


@pytest.mark.parametrize("target", ["mu", "mu_star", "nu", "nu_star"])
@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 5) for m in range(1, n + 1)])
def test_pruned_equals_naive(target, n, m):
    # the naive reference has no cuts, no span dedup, no canonical first column
    assert search_value(n, m, target)[0] == search_value_naive(n, m, target)


@pytest.mark.parametrize("target", ["mu", "nu_star"])
@pytest.mark.parametrize("n,m", [(4, 2), (5, 3), (5, 4)])
def test_witness_validity(target, n, m):
    R = brute(target, n, m)
    W = R.witness
    assert in_class(W, m, exact_degree=R.exact_degree)
    if target == "mu":
        assert evaluate_M(W) == R.value and R.witness_c is None
    else:
        assert evaluate_M(W, R.witness_c) == R.value
        assert nu_witness_state(W)[0] == R.value
    assert R.certification == EXHAUSTIVE and R.lower == R.upper == R.value


def test_witness_is_lexicographically_least():
    # compare against a full scan of A(3,2) in row-major order
    from itertools import product

    from bulbs.wiring import Wiring

    best = None
    for bits in product("01", repeat=9):
        rows = ["".join(bits[i * 3 : i * 3 + 3]) for i in range(3)]
        W = Wiring.from_rows(rows)
        if in_class(W, 2) and evaluate_M(W) == 2:
            best = "".join(rows)
            break
    assert "".join(brute_mu(3, 2).witness.row_strings()) == best


def test_determinism_across_workers():
    a = brute_mu(5, 3, workers=1)
    b = brute_mu(5, 3, workers=3)
    assert (a.value, a.witness, a.nodes, a.spans_deduplicated) == (b.value, b.witness, b.nodes, b.spans_deduplicated)


def test_optimal_7_4_witness_is_tower_span():
    R = brute_mu(7, 4)
    assert R.value == 4
    assert spans_equivalent(R.witness, tower(2))


def test_limits_and_empty_classes():
    with pytest.raises(SearchLimitError):
        brute_mu(8, 2)
    with pytest.raises(EmptyClassError):
        brute_mu(3, 4, exact_degree=True)
    with pytest.raises(ValueError):
        brute("bogus", 3, 3)


def test_candidates():
    assert column_candidates(3, 1, False, 2) == [0b010]
    assert all(c >> 1 & 1 and c.bit_count() == 2 for c in column_candidates(4, 2, True, 2))
    assert canonical_first_columns(4, 2, False) == [0b1, 0b11]
    assert canonical_first_columns(4, 2, True) == [0b11]


@pytest.mark.parametrize("k", range(1, 7))
def test_bounds_certify_power_family(k):
    n, m = (1 << (k + 1)) - 1, 1 << k
    R = certify_mu_via_bounds(n, m)
    assert R.certification == BOUNDS_MATCH and R.value == m and R.nodes == 0


def test_bounds_bracket_and_theorem_lift():
    R = certify_mu_via_bounds(12, 4)
    assert (R.lower, R.upper, R.certification) == (7, 8, BOUNDED_ONLY)
    R = certify_mu_via_bounds(12, 4, use_theorems=True)
    assert R.value == 8 and R.certification == BOUNDS_MATCH
    R = certify_mu_via_bounds(5, 4, brute_lower=True)
    assert R.value == 4 and R.certification == BOUNDS_MATCH
