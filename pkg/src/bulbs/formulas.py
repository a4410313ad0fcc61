"""Closed forms: the sequence a(n), the upper bound U(n, m), and the known
exact values of mu, mu*, nu, nu*.

``a`` is the meta-Fibonacci sequence 1, 2, 2, 3, 4, 4, 4, 5, ... (OEIS A046699
without its leading 1).  It is computed three independent ways; the tables
grow on demand and are guarded by a lock.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

METHODS = ("inductive", "recurrence", "frequency")


def _inductive_table(N: int) -> list[int]:
    # a(1) = 1, a(2^k - 1 + i) = 2^(k-1) + a(i) for 1 <= i <= 2^k - 1,
    # a(2^(k+1) - 1) = 2^k
    a = [0] * (N + 1)
    if N >= 1:
        a[1] = 1
    for n in range(2, N + 1):
        if (n + 1) & n == 0:
            a[n] = (n + 1) >> 1
        else:
            k = n.bit_length() - 1
            a[n] = (1 << (k - 1)) + a[n - (1 << k) + 1]
    return a


def _recurrence_b_table(N: int) -> list[int]:
    """b(1..N) with b(1) = b(2) = 1 and b(n) = b(n - b(n-1)) + b(n-1 - b(n-2))."""
    b = [0] * (N + 1)
    for n in range(1, min(N, 2) + 1):
        b[n] = 1
    for n in range(3, N + 1):
        b[n] = b[n - b[n - 1]] + b[n - 1 - b[n - 2]]
    return b


def _frequency_table(N: int) -> list[int]:
    # value v occurs v_2(2v) = 1 + v_2(v) times
    a = [0]
    v = 0
    while len(a) <= N:
        v += 1
        a.extend([v] * (v & -v).bit_length())
    del a[N + 1 :]
    return a


class SequenceTable:
    """Memoized ``a(1..N)`` for each method, plus the shifted ``b``."""

    def __init__(self):
        self._lock = threading.Lock()
        self._a: dict[str, list[int]] = {}
        self._b: list[int] = [0]

    @staticmethod
    def _grow(current: int, need: int) -> int:
        return max(need, 2 * current, 1024)

    def a(self, n: int, method: str = "inductive") -> int:
        if n < 1:
            raise ValueError(f"a(n) needs n >= 1, got {n}")
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
        table = self._a.get(method)
        if table is None or n >= len(table):
            with self._lock:
                table = self._a.get(method)
                if table is None or n >= len(table):
                    size = self._grow(0 if table is None else len(table), n)
                    if method == "inductive":
                        table = _inductive_table(size)
                    elif method == "frequency":
                        table = _frequency_table(size)
                    else:
                        table = [0] + self._b_table(size + 1)[2:]
                    self._a[method] = table
        return table[n]

    def _b_table(self, N: int) -> list[int]:
        if N >= len(self._b):
            self._b = _recurrence_b_table(self._grow(len(self._b), N))
        return self._b

    def b(self, n: int) -> int:
        if n < 1:
            raise ValueError(f"b(n) needs n >= 1, got {n}")
        with self._lock:
            return self._b_table(n)[n]

    def values(self, N: int, method: str = "inductive") -> list[int]:
        """``[a(1), ..., a(N)]``."""
        if N < 1:
            return []
        self.a(N, method)
        return self._a[method][1 : N + 1]


_TABLE = SequenceTable()


def a_of(n: int, method: str = "inductive") -> int:
    return _TABLE.a(n, method)


def b_of(n: int) -> int:
    return _TABLE.b(n)


def a_values(N: int, method: str = "inductive") -> list[int]:
    return _TABLE.values(N, method)


def dyadic_level(m: int) -> int:
    """The ``k`` with ``2^k <= m < 2^(k+1)``."""
    if m < 1:
        raise ValueError("m must be positive")
    return m.bit_length() - 1


@dataclass(frozen=True)
class UDecomposition:
    n: int
    m: int
    k: int
    q: int
    r: int
    value: int

    @property
    def block(self) -> int:
        return (1 << (self.k + 1)) - 1


def u_of(n: int, m: int) -> UDecomposition:
    """``U(n, m) = q 2^k + a(r)`` with ``n = (2^(k+1) - 1) q + r``, ``1 <= r <= 2^(k+1) - 1``."""
    if n < 1 or m < 1:
        raise ValueError(f"U(n, m) needs n, m >= 1, got ({n}, {m})")
    k = dyadic_level(m)
    p = (1 << (k + 1)) - 1
    q, r = divmod(n, p)
    if r == 0:
        q, r = q - 1, p
    return UDecomposition(n, m, k, q, r, (q << k) + a_of(r))


def u_value(n: int, m: int) -> int:
    return u_of(n, m).value


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def mu_lower_bound(n: int) -> int:
    """``M(W, 0) > n/2`` for every admissible ``W``."""
    return _ceil_div(n + 1, 2) if n > 0 else 0


@dataclass(frozen=True)
class Unknown:
    """No closed form; the true value lies in ``[lower, upper]``."""

    lower: int
    upper: int

    def __str__(self) -> str:
        return f"unknown [{self.lower},{self.upper}]"


def _mu_exact(n: int, m: int) -> int | None:
    if m == 1:
        return n
    if m in (2, 3):
        return _ceil_div(2 * n, 3)
    if m in (4, 5):
        v = _ceil_div(4 * n, 7)
        return v + 1 if n % 7 == 5 else v
    return None


def mu_closed(n: int, m: int) -> int | Unknown:
    """Exact ``mu(n, m)`` where known, else the bracket ``[ceil((n+1)/2), U(n, m)]``.

    ``A(n, m) = A(n, n)`` for ``m > n``, so small ``n`` is always covered.  A
    bracket that closes up is returned as its value.
    """
    if m < 1 or n < 0:
        raise ValueError(f"mu(n, m) needs n >= 0, m >= 1, got ({n}, {m})")
    if n == 0:
        return 0
    exact = _mu_exact(n, min(m, n))
    if exact is not None:
        return exact
    lo, hi = mu_lower_bound(n), u_value(n, m)
    return lo if lo == hi else Unknown(lo, hi)


def mu_star_closed(n: int, m: int) -> int | Unknown:
    if m < 1 or n < m:
        raise ValueError(f"A*(n, m) is empty unless n >= m >= 1, got ({n}, {m})")
    if m == n:
        # only the all-ones matrix has every column of weight n
        return n
    if m == 1:
        return n
    if m == 2:
        return 2 * _ceil_div(n, 3)
    if m == 3:
        return 4 * ((n + 3) // 6) - 1 if n % 6 == 3 else _ceil_div(2 * n, 3)
    if m == 4:
        return 2 * _ceil_div(2 * n, 7)
    return Unknown(mu_lower_bound(n), n)


def nu_closed(n: int, m: int, star: bool = False) -> int:
    if m <= 1:
        raise ValueError(f"closed form for nu needs m > 1, got m = {m}")
    if n < 1:
        raise ValueError(f"nu(n, m) needs n >= 1, got {n}")
    base = _ceil_div(n, 2)
    if not star:
        return base
    if n < m:
        raise ValueError(f"A*(n, m) is empty unless n >= m, got ({n}, {m})")
    return base + 1 if n % 2 == 0 and m % 2 == 1 else base


def closed_value(target: str, n: int, m: int) -> int | Unknown:
    """Dispatch on ``target`` in ``mu``, ``mu_star``, ``nu``, ``nu_star``, ``U``."""
    if target == "mu":
        return mu_closed(n, m)
    if target == "mu_star":
        return mu_star_closed(n, m)
    if target == "nu":
        return nu_closed(n, m)
    if target == "nu_star":
        return nu_closed(n, m, star=True)
    if target == "U":
        return u_value(n, m)
    raise ValueError(f"unknown target {target!r}")
