"""Brute-force oracles for mu, mu*, nu, nu* at small n.

The search picks the columns of a wiring one at a time.  Since ``M(W, c)``
only depends on the column space, the state after ``j`` columns is the pair
``(j, span)``: states seen before are skipped, and because enlarging a span
never lowers the objective, any partial span already over the target is cut.

The minimum is found by deepening the target ``t = 1, 2, ...`` until some
wiring reaches ``f <= t``.  The first column is restricted to one
representative per orbit under simultaneous relabelling of the vertices
(``{1, .., w}`` for each allowed weight ``w``), which preserves
admissibility, degrees and every objective.

Work is split into one task per first column.  Tasks never share state, so
values, witnesses and node counts do not depend on the number of workers.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from . import formulas
from .constructions import optimal_wiring
from .gf2 import BitVec, extend_basis
from .wiring import Wiring, evaluate_M, in_class

EXHAUSTIVE_LIMIT = 7

TARGETS = ("mu", "mu_star", "nu", "nu_star")

EXHAUSTIVE = "exhaustive"
BOUNDS_MATCH = "bounds-match"
BOUNDED_ONLY = "bounded-only"


class SearchLimitError(ValueError):
    """The instance is outside the range where enumeration is exhaustive."""


class EmptyClassError(ValueError):
    """``A*(n, m)`` has no members."""


@dataclass
class SearchReport:
    target: str
    n: int
    m: int
    value: int | None
    lower: int
    upper: int
    certification: str
    witness: Wiring | None = None
    witness_c: BitVec | None = None
    nodes: int = 0
    spans_deduplicated: int = 0
    wall_time: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def exact_degree(self) -> bool:
        return self.target.endswith("_star")


# ---------------------------------------------------------------- objectives

def _elements(basis: tuple[int, ...]) -> list[int]:
    out = [0]
    for v in basis:
        out += [s ^ v for s in out]
    return out


def _f_mu(basis: tuple[int, ...], n: int) -> int:
    return max(s.bit_count() for s in _elements(basis))


def _f_nu(basis: tuple[int, ...], n: int) -> int:
    # min over cosets c + span of max |s + c|; the vectors vanishing on all
    # pivot positions are one representative per coset
    elems = _elements(basis)
    pivots = 0
    for v in basis:
        pivots |= 1 << (v.bit_length() - 1)
    free = [1 << i for i in range(n) if not pivots >> i & 1]
    best = n
    for c in _elements(tuple(free)):
        worst = max((s ^ c).bit_count() for s in elems)
        if worst < best:
            best = worst
    return best


def _objective(target: str) -> Callable[[tuple[int, ...], int], int]:
    return _f_nu if target in ("nu", "nu_star") else _f_mu


def column_candidates(n: int, m: int, exact_degree: bool, j: int) -> list[int]:
    """Columns allowed at position ``j`` (1-based): bit ``j`` set, weight <= m (or == m)."""
    others = [i for i in range(n) if i != j - 1]
    weights = [m] if exact_degree else range(1, min(m, n) + 1)
    out = []
    for w in weights:
        if w < 1 or w > n:
            continue
        for rest in combinations(others, w - 1):
            out.append((1 << (j - 1)) | sum(1 << i for i in rest))
    out.sort()
    return out


def canonical_first_columns(n: int, m: int, exact_degree: bool) -> list[int]:
    weights = [m] if exact_degree else range(1, min(m, n) + 1)
    return [(1 << w) - 1 for w in weights if 1 <= w <= n]


# ---------------------------------------------------------------- kernel

class _Kernel:
    """Feasibility search ``exists W: f(span W) <= t`` over given column candidates."""

    def __init__(self, n: int, cands: list[list[int]], target: str):
        self.n = n
        self.cands = cands
        self.f = _objective(target)
        self.cache: dict[tuple[int, ...], int] = {}
        self.nodes = 0
        self.dups = 0

    def value(self, basis: tuple[int, ...]) -> int:
        v = self.cache.get(basis)
        if v is None:
            v = self.f(basis, self.n)
            self.cache[basis] = v
        return v

    def feasible(self, t: int) -> list[int] | None:
        """Column choice reaching ``f <= t``, or None."""
        failed: set[tuple[int, tuple[int, ...]]] = set()
        chosen: list[int] = []
        n = self.n

        def rec(j: int, basis: tuple[int, ...]) -> bool:
            self.nodes += 1
            if self.value(basis) > t:
                return False
            if j == n:
                return True
            key = (j, basis)
            if key in failed:
                self.dups += 1
                return False
            for c in self.cands[j]:
                chosen.append(c)
                if rec(j + 1, extend_basis(basis, c)):
                    return True
                chosen.pop()
            failed.add(key)
            return False

        return list(chosen) if rec(0, ()) else None

    def minimum_naive(self) -> int:
        """Plain enumeration of every column tuple: no cuts, no dedup."""
        n = self.n
        best = n + 1

        def rec(j: int, basis: tuple[int, ...]) -> None:
            nonlocal best
            self.nodes += 1
            if j == n:
                best = min(best, self.value(basis))
                return
            for c in self.cands[j]:
                rec(j + 1, extend_basis(basis, c))

        rec(0, ())
        return best


def _task(args) -> tuple[bool, int, int]:
    n, m, target, first, t = args
    exact = target.endswith("_star")
    cands = [[first]] + [column_candidates(n, m, exact, j) for j in range(2, n + 1)]
    k = _Kernel(n, cands, target)
    ok = k.feasible(t) is not None
    return ok, k.nodes, k.dups


def _check_instance(n: int, m: int, target: str) -> None:
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}")
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    if n > EXHAUSTIVE_LIMIT:
        raise SearchLimitError(f"exhaustive search is limited to n <= {EXHAUSTIVE_LIMIT}, got n = {n}")
    if target.endswith("_star") and n < m:
        raise EmptyClassError(f"A*({n},{m}) is empty (needs n >= m)")


def search_value(n: int, m: int, target: str, workers: int = 1) -> tuple[int, int, int]:
    """Exact minimum of the objective over the class; returns ``(value, nodes, dups)``."""
    _check_instance(n, m, target)
    exact = target.endswith("_star")
    firsts = canonical_first_columns(n, m, exact)
    nodes = dups = 0
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for t in range(0, n + 1):
            jobs = [(n, m, target, c, t) for c in firsts]
            results = list(pool.map(_task, jobs)) if pool else [_task(j) for j in jobs]
            nodes += sum(r[1] for r in results)
            dups += sum(r[2] for r in results)
            if any(r[0] for r in results):
                return t, nodes, dups
    finally:
        if pool:
            pool.shutdown()
    raise AssertionError("objective never exceeds n; unreachable")


def search_value_naive(n: int, m: int, target: str) -> int:
    """Reference minimum by full enumeration (no cuts, no dedup, no relabelling)."""
    _check_instance(n, m, target)
    exact = target.endswith("_star")
    cands = [column_candidates(n, m, exact, j) for j in range(1, n + 1)]
    return _Kernel(n, cands, target).minimum_naive()


def lex_least_witness(n: int, m: int, target: str, value: int) -> Wiring:
    """Row-major lexicographically smallest wiring in the class with objective ``value``.

    Entries are fixed greedily in row-major order, trying 0 first and keeping
    it whenever some completion still reaches the value.
    """
    exact = target.endswith("_star")
    cands = [column_candidates(n, m, exact, j) for j in range(1, n + 1)]
    for i in range(n):
        for j in range(n):
            bit = 1 << i
            zeros = [c for c in cands[j] if not c & bit]
            ones = [c for c in cands[j] if c & bit]
            if not zeros or not ones:
                continue
            trial = cands[:j] + [zeros] + cands[j + 1 :]
            if _Kernel(n, trial, target).feasible(value) is not None:
                cands = trial
            else:
                cands = cands[:j] + [ones] + cands[j + 1 :]
    cols = [c[0] for c in cands]
    W = Wiring.from_columns(n, cols)
    if _objective(target)(W.basis.vectors, n) != value:
        raise AssertionError("witness does not reach the reported value")
    return W


def nu_witness_state(W: Wiring) -> tuple[int, BitVec]:
    """``min_c M(W, c)`` and the lexicographically smallest ``c`` attaining it."""
    n = W.n
    best, best_c = n + 1, None
    # lexicographic on c_1 c_2 .. c_n
    for idx in range(1 << n):
        s = format(idx, f"0{n}b") if n else ""
        c = BitVec.from_str(s)
        v = evaluate_M(W, c)
        if v < best:
            best, best_c = v, c
    return best, best_c


def _search(n: int, m: int, target: str, workers: int) -> SearchReport:
    start = time.perf_counter()
    value, nodes, dups = search_value(n, m, target, workers)
    W = lex_least_witness(n, m, target, value)
    c = None
    if target in ("nu", "nu_star"):
        got, c = nu_witness_state(W)
        if got != value:
            raise AssertionError("nu witness state mismatch")
    elif evaluate_M(W) != value:
        raise AssertionError("mu witness mismatch")
    if not in_class(W, m, target.endswith("_star")):
        raise AssertionError("witness outside the class")
    return SearchReport(
        target=target,
        n=n,
        m=m,
        value=value,
        lower=value,
        upper=value,
        certification=EXHAUSTIVE,
        witness=W,
        witness_c=c,
        nodes=nodes,
        spans_deduplicated=dups,
        wall_time=time.perf_counter() - start,
    )


def brute_mu(n: int, m: int, exact_degree: bool = False, workers: int = 1) -> SearchReport:
    """Exact ``mu(n, m)`` (or ``mu*(n, m)``) with the lexicographically least witness."""
    return _search(n, m, "mu_star" if exact_degree else "mu", workers)


def brute_nu(n: int, m: int, exact_degree: bool = False, workers: int = 1) -> SearchReport:
    """Exact ``nu(n, m)`` (or ``nu*(n, m)``) with witness wiring and state."""
    return _search(n, m, "nu_star" if exact_degree else "nu", workers)


def brute(target: str, n: int, m: int, workers: int = 1) -> SearchReport:
    return _search(n, m, target, workers)


def certify_mu_via_bounds(n: int, m: int, brute_lower: bool = False, use_theorems: bool = False) -> SearchReport:
    """Bracket ``mu(n, m)`` without enumerating the class.

    Lower end: ``ceil((n+1)/2)``, raised by the exhaustive oracle when
    ``brute_lower`` (n <= 7) or by a proved closed form when ``use_theorems``.
    Upper end: ``M`` of the block-diagonal tower wiring, which lies in
    ``A(n, m)`` and is evaluated directly.
    """
    start = time.perf_counter()
    notes = []
    lower = formulas.mu_lower_bound(n)
    notes.append(f"lower {lower} from the mean-weight bound")
    nodes = dups = 0
    if brute_lower:
        v, nodes, dups = search_value(n, m, "mu")
        lower = max(lower, v)
        notes.append(f"lower {v} from exhaustive search")
    if use_theorems:
        closed = formulas.mu_closed(n, m)
        if isinstance(closed, int):
            lower = max(lower, closed)
            notes.append(f"lower {closed} from the closed form")
    W = optimal_wiring(n, m)
    if not in_class(W, m):
        raise AssertionError("upper-bound wiring outside A(n, m)")
    upper = evaluate_M(W)
    notes.append(f"upper {upper} from the tower wiring (U = {formulas.u_value(n, m)})")
    if lower > upper:
        raise AssertionError(f"bounds crossed: {lower} > {upper}")
    exact = lower == upper
    return SearchReport(
        target="mu",
        n=n,
        m=m,
        value=upper if exact else None,
        lower=lower,
        upper=upper,
        certification=BOUNDS_MATCH if exact else BOUNDED_ONLY,
        witness=W,
        nodes=nodes,
        spans_deduplicated=dups,
        wall_time=time.perf_counter() - start,
        notes=notes,
    )
