"""Named wirings and sign matrices, each returned with checked certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import formulas
from .gf2 import BitMat, block_diag, kron_ones
from .wiring import (
    Membership,
    Wiring,
    class_membership,
    evaluate_M,
    pivot,
)

# above this rank the evaluator is not run while certifying
CERTIFY_MAX_RANK = 18

VERIFIED = "verified"
ASSERTED = "asserted"


class ConstructionError(RuntimeError):
    """A construction failed one of its own certificates."""


@dataclass(frozen=True)
class Claim:
    description: str
    status: str
    detail: str = ""


@dataclass(frozen=True)
class NamedConstruction:
    name: str
    payload: object
    claims: tuple[Claim, ...] = field(default_factory=tuple)

    @property
    def wiring(self) -> Wiring:
        if not isinstance(self.payload, Wiring):
            raise TypeError(f"{self.name} is not a wiring")
        return self.payload

    def summary(self) -> str:
        lines = [f"{self.name}:"]
        for c in self.claims:
            extra = f" ({c.detail})" if c.detail else ""
            lines.append(f"  [{c.status}] {c.description}{extra}")
        return "\n".join(lines)


class _Certifier:
    def __init__(self, name: str):
        self.name = name
        self.claims: list[Claim] = []

    def check(self, description: str, ok: bool, detail: str = "") -> None:
        if not ok:
            raise ConstructionError(f"{self.name}: claim failed: {description} {detail}".rstrip())
        self.claims.append(Claim(description, VERIFIED, detail))

    def assert_only(self, description: str, detail: str = "") -> None:
        self.claims.append(Claim(description, ASSERTED, detail))

    def check_M(self, W: Wiring, expected: int, relation: str = "==") -> None:
        desc = f"M(W,0) {relation} {expected}"
        if W.rank > CERTIFY_MAX_RANK:
            self.assert_only(desc, f"rank {W.rank} too high to enumerate")
            return
        got = evaluate_M(W)
        ok = got == expected if relation == "==" else got <= expected
        self.check(desc, ok, f"evaluated {got}")

    def done(self, payload: object) -> NamedConstruction:
        return NamedConstruction(self.name, payload, tuple(self.claims))


# ---------------------------------------------------------------- sign matrices

H2 = np.array([[1, 1], [1, -1]], dtype=np.int8)


def sylvester_hadamard(k: int) -> np.ndarray:
    """``H_{2^k}``, the ``k``-fold Kronecker power of ``H_2`` (read-only int8)."""
    if not 1 <= k <= 10:
        raise ValueError(f"k must be in 1..10, got {k}")
    H = H2
    for _ in range(k - 1):
        H = np.kron(H2, H)
    H = H.astype(np.int8)
    H.flags.writeable = False
    return H


PALEY_ROWS = (
    (1, 1, 1, 1, 1, 1, 1, 1),
    (-1, 1, -1, -1, 1, -1, 1, 1),
    (-1, 1, 1, -1, -1, 1, -1, 1),
    (-1, 1, 1, 1, -1, -1, 1, -1),
    (-1, -1, 1, 1, 1, -1, -1, 1),
    (-1, 1, -1, 1, 1, 1, -1, -1),
    (-1, -1, 1, -1, 1, 1, 1, -1),
    (-1, -1, -1, 1, -1, 1, 1, 1),
)


def paley() -> np.ndarray:
    P = np.array(PALEY_ROWS, dtype=np.int8)
    P.flags.writeable = False
    return P


def is_hadamard(H: np.ndarray) -> bool:
    n = H.shape[0]
    G = H.astype(np.int64) @ H.T.astype(np.int64)
    return bool(np.array_equal(G, n * np.eye(n, dtype=np.int64)))


def column_product(H: np.ndarray, cols: list[int]) -> np.ndarray:
    """Pointwise product of the given 1-based columns."""
    out = np.ones(H.shape[0], dtype=np.int8)
    for j in cols:
        out = out * H[:, j - 1]
    return out


# ---------------------------------------------------------------- wirings

def sign_to_bits(H: np.ndarray) -> BitMat:
    """Map ``+1 -> 0`` and ``-1 -> 1``."""
    rows = ["".join("1" if v < 0 else "0" for v in row) for row in H]
    return BitMat.from_rows(rows)


def hadamard_wiring(k: int) -> Wiring:
    """``W_k``: drop the first row and column of ``H_{2^(k+1)}`` and map to bits.

    Inadmissible; order ``2^(k+1) - 1``; every column has weight ``2^k``.
    """
    if not 1 <= k <= 9:
        raise ValueError(f"k must be in 1..9, got {k}")
    H = sylvester_hadamard(k + 1)
    return Wiring(sign_to_bits(H[1:, 1:]))


@dataclass(frozen=True)
class BalancedSwitchMatrix:
    """Columns ``a_1..a_n`` in F_2^N with ``|sum of any nonempty subset| = M``.

    Row block ``S_k`` (``q`` rows, ``1 <= k < 2^n``) carries the binary
    expansion of ``k``: bit ``j - 1`` of ``k`` is the entry in column ``j``.
    Padding rows are zero and come after the blocks.
    """

    n_switches: int
    q: int
    N: int
    columns: tuple[int, ...]

    @property
    def M(self) -> int:
        return (1 << (self.n_switches - 1)) * self.q

    def row_block(self, k: int) -> range:
        """0-based row indices of ``S_k``."""
        return range((k - 1) * self.q, k * self.q)

    def combination_weights(self) -> dict[int, int]:
        """``|sum_j lambda_j a_j|`` keyed by each nonzero ``lambda`` (bit ``j - 1`` = ``lambda_j``)."""
        out = {}
        s = 0
        for step in range(1, 1 << self.n_switches):
            s ^= self.columns[(step & -step).bit_length() - 1]
            out[step ^ (step >> 1)] = s.bit_count()
        return out

    def is_balanced(self, columns: tuple[int, ...] | None = None) -> bool:
        cols = self.columns if columns is None else columns
        s = 0
        target = None
        for step in range(1, 1 << len(cols)):
            s ^= cols[(step & -step).bit_length() - 1]
            w = s.bit_count()
            if target is None:
                target = w
            elif w != target:
                return False
        return True

    def without_row(self, i: int) -> tuple[int, ...]:
        """Columns after deleting 0-based row ``i``."""
        low = (1 << i) - 1
        return tuple((c & low) | ((c >> (i + 1)) << i) for c in self.columns)


def balanced_switch_matrix(n_switches: int, q: int, N: int | None = None) -> BalancedSwitchMatrix:
    if n_switches < 1 or q < 1:
        raise ValueError("n_switches and q must be positive")
    need = ((1 << n_switches) - 1) * q
    if N is None:
        N = need
    if N < need:
        raise ValueError(f"N = {N} rows is too few; need at least (2^n - 1) q = {need}")
    cols = [0] * n_switches
    for k in range(1, 1 << n_switches):
        block = ((1 << q) - 1) << ((k - 1) * q)
        for j in range(n_switches):
            if k >> j & 1:
                cols[j] |= block
    return BalancedSwitchMatrix(n_switches, q, N, tuple(cols))


def _tower_matrix(k: int) -> Wiring:
    # block j holds vertices 2^j .. 2^(j+1) - 1; a vertex in block j' < j
    # toggles the rows of block j picked out by switch j' of a balanced
    # switch matrix with one leading zero row
    n = (1 << (k + 1)) - 1
    cols = [0] * n
    for j in range(k + 1):
        start = 1 << j
        size = 1 << j
        block_mask = ((1 << size) - 1) << (start - 1)
        for v in range(start, start + size):
            cols[v - 1] |= block_mask
        if j == 0:
            continue
        switches = balanced_switch_matrix(j, 1, size - 1)
        for jp in range(j):
            links = (switches.columns[jp] << 1) << (start - 1)
            for v in range(1 << jp, 1 << (jp + 1)):
                cols[v - 1] |= links
    return Wiring.from_columns(n, cols)


def tower_blocks(k: int) -> list[range]:
    return [range(1 << j, 1 << (j + 1)) for j in range(k + 1)]


def tower(k: int) -> Wiring:
    return tower_certified(k).wiring


def tower_certified(k: int) -> NamedConstruction:
    """``V_k``: a stack of all-ones blocks of sizes 1, 2, ..., 2^k."""
    if not 0 <= k <= 9:
        raise ValueError(f"k must be in 0..9, got {k}")
    V = _tower_matrix(k)
    n = V.n
    cert = _Certifier(f"tower:{k}")
    if not V.is_admissible:
        raise ConstructionError(f"tower:{k} has a zero on the diagonal")
    cert.check(f"in A*({n},{1 << k})", class_membership(V, 1 << k) is Membership.IN_A_STAR)
    ok = True
    for blk in tower_blocks(k):
        mask = sum(1 << (v - 1) for v in blk)
        ok &= all(V.columns[v - 1] & mask == mask for v in blk)
    cert.check("diagonal blocks all ones, sizes 1,2,..,2^k", ok)
    if k >= 1:
        cols = set(hadamard_wiring(k).columns)
        cert.check("every column is a column of W_k", all(c in cols for c in V.columns))
    cert.check_M(V, 1 << k)
    return cert.done(V)


def tower_via_pivots(k: int) -> Wiring:
    """Pivot ``W_k`` into a tower.

    Full pivot about vertex 1, then repeatedly pivot about the smallest vertex
    not yet placed, relative to the vertices already placed.
    """
    W = hadamard_wiring(k)
    placed: set[int] = set()
    while len(placed) < W.n:
        i = min(set(range(1, W.n + 1)) - placed)
        W = pivot(W, i, placed)
        placed |= {j for j in range(1, W.n + 1) if W.columns[i - 1] >> (j - 1) & 1}
    return W


PERMUTED_TOWER_ORDER = (1, 2, 5, 6, 3, 4, 7)


def permuted_tower_v2() -> Wiring:
    """Columns of ``W_2`` in the order (1,2,5,6,3,4,7).

    Admissible, every degree 4, same column space as ``V_2``, and no proper
    forward-invariant vertex set.
    """
    return hadamard_wiring(2).permute_columns(PERMUTED_TOWER_ORDER)


def clone_apex(W: Wiring, mprime: int, m: int | None = None) -> Wiring:
    """``[[W (x) 1_{m'}, v], [0, 1]]`` with ``v_i = 1`` iff ``m'`` divides ``i``.

    ``m`` defaults to ``deg(W)``; requires ``m' m >= n + 1``.  The result lies
    in ``A(m' n + 1, m' m)``.
    """
    m = W.deg if m is None else m
    n = W.n
    if mprime < 1:
        raise ValueError("mprime must be positive")
    if mprime * m < n + 1:
        raise ValueError(f"clone_apex needs m' m >= n + 1, got {mprime}*{m} < {n + 1}")
    K = kron_ones(W.matrix, mprime)
    N = K.rows + 1
    apex = sum(1 << (i - 1) for i in range(mprime, K.rows + 1, mprime)) | (1 << (N - 1))
    return Wiring.from_columns(N, K.columns + (apex,))


def apex_chain(k: int) -> Wiring:
    """``k``-fold ``clone_apex(., 2)`` starting from ``I_1``: lies in ``A(2^(k+1)-1, 2^k)``."""
    W = Wiring.identity(1)
    for _ in range(k):
        W = clone_apex(W, 2)
    return W


W10_ROWS = (
    "1000000000",
    "1110000000",
    "0110000000",
    "1001110000",
    "0111110000",
    "0001110000",
    "1000001111",
    "0110001111",
    "0001111111",
    "0000001111",
)


def w10() -> Wiring:
    return Wiring.from_rows(W10_ROWS)


def optimal_blocks(n: int, m: int) -> list[int]:
    """Tower levels of the block-diagonal wiring achieving ``U(n, m)``."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    k = formulas.dyadic_level(m)
    levels: list[int] = []
    while n > 0:
        if k == 0:
            levels.extend([0] * n)
            break
        p = (1 << (k + 1)) - 1
        if n < p:
            k -= 1
            continue
        if n == p:
            levels.append(k)
            break
        d = formulas.u_of(n, 1 << k)
        levels.extend([k] * d.q)
        n = d.r
    return levels


def optimal_wiring(n: int, m: int) -> Wiring:
    levels = optimal_blocks(n, m)
    return Wiring(block_diag([_tower_matrix(j).matrix for j in levels]))


def optimal_certified(n: int, m: int) -> NamedConstruction:
    levels = optimal_blocks(n, m)
    W = optimal_wiring(n, m)
    u = formulas.u_value(n, m)
    cert = _Certifier(f"optimal:{n},{m}")
    cert.check(f"in A({n},{m})", class_membership(W, m) in (Membership.IN_A, Membership.IN_A_STAR))
    # M of a block-diagonal wiring is the sum over blocks
    per_level = {j: evaluate_M(_tower_matrix(j)) for j in set(levels)}
    block_sum = sum(per_level[j] for j in levels)
    cert.check(f"sum of block maxima = U({n},{m}) = {u}", block_sum == u, f"blocks {levels}")
    cert.check_M(W, u)
    return cert.done(W)


def w10_certified() -> NamedConstruction:
    W = w10()
    cert = _Certifier("w10")
    cert.check("in A*(10,4)", class_membership(W, 4) is Membership.IN_A_STAR)
    c = W.columns
    cert.check(
        "columns 3 = 2 and 5, 6 = 4 and 8, 9, 10 = 7",
        c[2] == c[1] and c[4] == c[3] == c[5] and c[7] == c[8] == c[9] == c[6],
    )
    cert.check("rank 4", W.rank == 4)
    cert.check_M(W, 6)
    return cert.done(W)


def hadamard_wiring_certified(k: int) -> NamedConstruction:
    W = hadamard_wiring(k)
    cert = _Certifier(f"hadamard-wiring:{k}")
    cols = set(W.columns)
    cert.check(f"every column has weight {1 << k}", all(d == 1 << k for d in W.degrees))
    closed = all((a ^ b) in cols or a == b for a in W.columns for b in W.columns) if W.n <= 255 else None
    if closed is None:
        cert.assert_only("sum of two columns is a column or zero", "too many pairs")
    else:
        cert.check("sum of two columns is a column or zero", closed)
    cert.check("not admissible", not W.is_admissible)
    cert.check_M(W, 1 << k)
    return cert.done(W)


def permuted_tower_certified() -> NamedConstruction:
    from .wiring import forward_invariant_sets, same_span

    W = permuted_tower_v2()
    cert = _Certifier("permuted-tower")
    cert.check("in A*(7,4)", class_membership(W, 4) is Membership.IN_A_STAR)
    cert.check("same column space as V_2", same_span(W, tower(2)))
    cert.check("no proper forward-invariant set", forward_invariant_sets(W) == [])
    cert.check_M(W, 4)
    return cert.done(W)


def apex_chain_certified(k: int) -> NamedConstruction:
    W = apex_chain(k)
    n, m = (1 << (k + 1)) - 1, 1 << k
    cert = _Certifier(f"apex-chain:{k}")
    cert.check(f"in A({n},{m})", class_membership(W, m) in (Membership.IN_A, Membership.IN_A_STAR))
    cert.check_M(W, m, "<=")
    return cert.done(W)


def tower_via_pivots_certified(k: int) -> NamedConstruction:
    W = tower_via_pivots(k)
    cert = _Certifier(f"tower-via-pivots:{k}")
    cert.check(f"in A*({W.n},{1 << k})", class_membership(W, 1 << k) is Membership.IN_A_STAR)
    cert.check("same column space as W_k", W.basis == hadamard_wiring(k).basis)
    cert.check_M(W, 1 << k)
    return cert.done(W)


def _parse_ints(arg: str, count: int, name: str) -> list[int]:
    try:
        vals = [int(x) for x in arg.split(",")]
    except ValueError:
        raise ValueError(f"{name}: expected {count} integer(s), got {arg!r}") from None
    if len(vals) != count:
        raise ValueError(f"{name}: expected {count} integer(s), got {arg!r}")
    return vals


def _identity(arg: str) -> NamedConstruction:
    (n,) = _parse_ints(arg, 1, "identity")
    cert = _Certifier(f"identity:{n}")
    W = Wiring.identity(n)
    cert.check(f"in A*({n},1)", class_membership(W, 1) is Membership.IN_A_STAR)
    return cert.done(W)


def _clique(arg: str) -> NamedConstruction:
    (r,) = _parse_ints(arg, 1, "clique")
    W = Wiring.clique(r)
    cert = _Certifier(f"clique:{r}")
    cert.check(f"in A*({r},{r})", class_membership(W, r) is Membership.IN_A_STAR)
    cert.check_M(W, r)
    return cert.done(W)


REGISTRY: dict[str, tuple[str, Callable[[str], NamedConstruction]]] = {
    "w10": ("", lambda _: w10_certified()),
    "permuted-tower": ("", lambda _: permuted_tower_certified()),
    "tower": ("K", lambda a: tower_certified(*_parse_ints(a, 1, "tower"))),
    "tower-via-pivots": ("K", lambda a: tower_via_pivots_certified(*_parse_ints(a, 1, "tower-via-pivots"))),
    "hadamard-wiring": ("K", lambda a: hadamard_wiring_certified(*_parse_ints(a, 1, "hadamard-wiring"))),
    "apex-chain": ("K", lambda a: apex_chain_certified(*_parse_ints(a, 1, "apex-chain"))),
    "optimal": ("N,M", lambda a: optimal_certified(*_parse_ints(a, 2, "optimal"))),
    "identity": ("N", _identity),
    "clique": ("R", _clique),
}


def available_names() -> list[str]:
    return [f"{k}:{v[0]}" if v[0] else k for k, v in REGISTRY.items()]


def construct(identifier: str) -> NamedConstruction:
    """Build a construction from an identifier such as ``tower:3`` or ``optimal:12,4``."""
    name, _, arg = identifier.partition(":")
    entry = REGISTRY.get(name)
    if entry is None:
        raise KeyError(f"unknown construction {identifier!r}; available: {', '.join(available_names())}")
    needs_arg = bool(entry[0])
    if needs_arg != bool(arg):
        raise KeyError(f"construction {name!r} expects form {name}:{entry[0]}" if needs_arg else f"{name!r} takes no argument")
    return entry[1](arg)
