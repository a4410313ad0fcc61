"""Checks of the known relations between mu, mu*, nu, nu*, and numeric probes
of the open questions.

Values come from the exhaustive oracle for ``n <= brute_limit`` and from the
closed forms beyond that; a relation that needs a value neither source can
supply is skipped and counted, never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from . import formulas
from .formulas import Unknown
from .search import EXHAUSTIVE_LIMIT, search_value


@dataclass
class AuditEntry:
    name: str
    statement: str
    range_tested: str
    passed: bool = True
    checked: int = 0
    skipped: int = 0
    counterexample: str | None = None
    evidence_only: bool = False
    info: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.evidence_only:
            status += " (evidence only, not a proof)"
        out = f"{status} {self.name}: {self.statement} [{self.range_tested}] checked={self.checked} skipped={self.skipped}"
        if self.info:
            out += f" {self.info}"
        if self.counterexample:
            out += f" counterexample: {self.counterexample}"
        return out


@dataclass
class AuditReport:
    entries: list[AuditEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[AuditEntry]:
        return [e for e in self.entries if not e.passed]

    def __getitem__(self, name: str) -> AuditEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def text(self) -> str:
        return "\n".join(e.line() for e in self.entries) + "\n"


class ValueTable:
    """Exact values of mu, mu*, nu, nu* where obtainable, else None."""

    def __init__(self, brute_limit: int = EXHAUSTIVE_LIMIT):
        if brute_limit > EXHAUSTIVE_LIMIT:
            raise ValueError(f"brute_limit cannot exceed {EXHAUSTIVE_LIMIT}")
        self.brute_limit = brute_limit
        self._brute = lru_cache(maxsize=None)(self._brute_uncached)

    @staticmethod
    def _brute_uncached(target: str, n: int, m: int) -> int:
        return search_value(n, m, target)[0]

    def get(self, target: str, n: int, m: int) -> int | None:
        star = target.endswith("_star")
        if n < 0 or m < 1:
            return None
        if star:
            if n < m or n < 1:
                return None
        else:
            if n == 0:
                return 0 if target == "mu" else None
            m = min(m, n)
        if n <= self.brute_limit:
            return self._brute(target, n, m)
        try:
            v = formulas.closed_value(target, n, m)
        except ValueError:
            return None
        return None if isinstance(v, Unknown) else v

    def mu(self, n, m):
        return self.get("mu", n, m)

    def mu_star(self, n, m):
        return self.get("mu_star", n, m)

    def nu(self, n, m):
        return self.get("nu", n, m)

    def nu_star(self, n, m):
        return self.get("nu_star", n, m)


def _run(entry: AuditEntry, cases: Iterable[tuple[str, Callable[[], bool | None]]]) -> AuditEntry:
    for label, check in cases:
        result = check()
        if result is None:
            entry.skipped += 1
            continue
        entry.checked += 1
        if not result and entry.passed:
            entry.passed = False
            entry.counterexample = label
    return entry


def _all_known(*vals) -> bool:
    return all(v is not None for v in vals)


def audit_relations(n_max: int = EXHAUSTIVE_LIMIT, m_max: int = EXHAUSTIVE_LIMIT, values: ValueTable | None = None) -> AuditReport:
    """Check the known relations on every tuple whose arguments are all <= n_max / m_max."""
    V = values or ValueTable()
    rep = AuditReport()
    rng = f"n<={n_max}, m<={m_max}"
    ms = range(1, m_max + 1)

    def sublinear(fn_name: str):
        fn = getattr(V, fn_name)
        star = fn_name.endswith("_star")

        def cases():
            for m in ms:
                for n1 in range(1, n_max + 1):
                    for n2 in range(n1, n_max + 1 - n1):
                        if star and (n1 < m or n2 < m):
                            continue

                        def chk(n1=n1, n2=n2, m=m):
                            a, b, c = fn(n1 + n2, m), fn(n1, m), fn(n2, m)
                            return a <= b + c if _all_known(a, b, c) else None

                        yield f"{fn_name}: n1={n1} n2={n2} m={m}", chk

        return cases()

    for fn_name in ("mu", "mu_star", "nu", "nu_star"):
        rep.entries.append(
            _run(AuditEntry(f"sublinearity[{fn_name}]", f"{fn_name}(n1+n2,m) <= {fn_name}(n1,m) + {fn_name}(n2,m)", rng), sublinear(fn_name))
        )

    def alternative():
        for m in range(2, m_max + 1):
            for n in range(1, n_max + 1 - m):

                def chk(n=n, m=m):
                    a, b, c, d = V.mu(n + m, m), V.mu(n + m, m - 1), V.mu(n, m), V.nu(m, m)
                    if not _all_known(a, b, c, d):
                        return None
                    return a == b or a >= c + d

                yield f"n={n} m={m}", chk

    rep.entries.append(
        _run(
            AuditEntry("alternative", "mu(n+m,m) = mu(n+m,m-1) or mu(n+m,m) >= mu(n,m) + nu(m)", f"m>=2, n+m<={n_max}"),
            alternative(),
        )
    )

    def degree_step():
        for m in range(1, m_max):
            for n in range(m, n_max + 1):
                for k in range(1, n_max + 1 - n):

                    def chk(n=n, m=m, k=k):
                        a, b = V.mu_star(n + k, m + 1), V.mu_star(n, m)
                        return a <= b + k if _all_known(a, b) else None

                    yield f"n={n} n'={k} m={m}", chk

    rep.entries.append(
        _run(AuditEntry("degree-step", "mu*(n+n',m+1) <= mu*(n,m) + n'  (n >= m)", rng), degree_step())
    )

    def plus_one():
        for m in ms:
            for n in range(0, n_max):

                def chk(n=n, m=m):
                    a, b = V.mu(n + 1, m), V.mu(n, m)
                    return a <= b + 1 if _all_known(a, b) else None

                yield f"n={n} m={m}", chk

    rep.entries.append(_run(AuditEntry("plus-one", "mu(n+1,m) <= mu(n,m) + 1", rng), plus_one()))

    def monotone():
        for m in ms:
            for n in range(0, n_max):

                def chk(n=n, m=m):
                    a, b = V.mu(n, m), V.mu(n + 1, m)
                    return a <= b if _all_known(a, b) else None

                yield f"n={n} m={m}", chk

    rep.entries.append(_run(AuditEntry("monotone-n", "mu(n,m) <= mu(n+1,m)", rng), monotone()))

    def monotone_m():
        for m in range(1, m_max):
            for n in range(1, n_max + 1):

                def chk(n=n, m=m):
                    a, b = V.mu(n, m + 1), V.mu(n, m)
                    return a <= b if _all_known(a, b) else None

                yield f"n={n} m={m}", chk

    rep.entries.append(_run(AuditEntry("monotone-m", "mu(n,m+1) <= mu(n,m)", rng), monotone_m()))

    def equal_pairs(pairs):
        for m1, m2 in pairs:
            if max(m1, m2) > m_max:
                continue
            for n in range(1, n_max + 1):

                def chk(n=n, m1=m1, m2=m2):
                    a, b = V.mu(n, m1), V.mu(n, m2)
                    return a == b if _all_known(a, b) else None

                yield f"n={n} m={m1},{m2}", chk

    # m = 2^k - 1 versus 2^k - 2, k >= 2
    below = [((1 << k) - 1, (1 << k) - 2) for k in range(2, m_max.bit_length() + 1)]
    rep.entries.append(_run(AuditEntry("below-power-of-two", "mu(n,2^k-1) = mu(n,2^k-2), k >= 2", rng), equal_pairs(below)))
    # m = 2^k versus 2^k + 1, k >= 1
    above = [(1 << k, (1 << k) + 1) for k in range(1, m_max.bit_length() + 1)]
    rep.entries.append(_run(AuditEntry("above-power-of-two", "mu(n,2^k) = mu(n,2^k+1), k >= 1", rng), equal_pairs(above)))

    def chain():
        for m in ms:
            for n in range(max(m, 1), n_max + 1):

                def chk(n=n, m=m):
                    nu, nus, mu, mus = V.nu(n, m), V.nu_star(n, m), V.mu(n, m), V.mu_star(n, m)
                    if not _all_known(nu, nus, mu, mus):
                        return None
                    return nu <= nus <= mus and nu <= mu <= mus

                yield f"n={n} m={m}", chk

    rep.entries.append(_run(AuditEntry("trivial-chain", "nu <= nu* <= mu* and nu <= mu <= mu*  (n >= m)", rng), chain()))

    def mean_bound():
        for m in ms:
            for n in range(1, n_max + 1):

                def chk(n=n, m=m):
                    a, b = V.mu(n, m), V.nu(n, m)
                    return 2 * a > n and 2 * b >= n if _all_known(a, b) else None

                yield f"n={n} m={m}", chk

    rep.entries.append(_run(AuditEntry("mean-bound", "mu(n,m) > n/2 and nu(n,m) >= n/2", rng), mean_bound()))

    def clones():
        for m in ms:
            for n in range(m, n_max + 1):
                for k in range(2, n_max // n + 1):
                    if m * k > m_max:
                        continue

                    def chk(n=n, m=m, k=k):
                        a, b, c, d = V.mu(n * k, m * k), V.mu(n, m), V.mu_star(n * k, m * k), V.mu_star(n, m)
                        if not _all_known(a, b):
                            return None
                        ok = a <= k * b
                        if _all_known(c, d):
                            ok = ok and c <= k * d
                        return ok

                    yield f"n={n} m={m} m'={k}", chk

    rep.entries.append(_run(AuditEntry("clone-scaling", "mu(n m',m m') <= m' mu(n,m) and likewise mu*", rng), clones()))

    def apex():
        for m in ms:
            for n in range(1, n_max + 1):
                # one clone is not enough: mu(2,2) = 2 > mu(1,2) = 1
                for k in range(2, n_max + 1):
                    if k * m < n + 1 or k * n + 1 > n_max or k * m > m_max:
                        continue

                    def chk(n=n, m=m, k=k):
                        a, b = V.mu(k * n + 1, k * m), V.mu(n, m)
                        return a <= k * b if _all_known(a, b) else None

                    yield f"n={n} m={m} m'={k}", chk

    rep.entries.append(_run(AuditEntry("clone-apex", "mu(m' n+1, m' m) <= m' mu(n,m) when m' m >= n+1, m' >= 2", rng), apex()))
    return rep


def probe_open_questions(n_range: Iterable[int], m_range: Iterable[int], values: ValueTable | None = None) -> AuditReport:
    """Look for counterexamples to the open questions over small instances.

    Absence of a counterexample is evidence only; every entry says so.
    """
    V = values or ValueTable()
    ns, ms = list(n_range), list(m_range)
    rng = f"n in {ns[0]}..{ns[-1]}, m in {ms[0]}..{ms[-1]}"
    rep = AuditReport()

    def mu_eq_u():
        for m in ms:
            for n in ns:

                def chk(n=n, m=m):
                    a = V.mu(n, m)
                    return a == formulas.u_value(n, m) if a is not None else None

                yield f"n={n} m={m}", chk

    rep.entries.append(_run(AuditEntry("mu-equals-U", "mu(n,m) = U(n,m)", rng, evidence_only=True), mu_eq_u()))

    def dyadic():
        for n in ns:
            for k in range(0, max(ms).bit_length()):
                block = [m for m in range(1 << k, 1 << (k + 1)) if m in ms]
                if len(block) < 2:
                    continue

                def chk(n=n, block=tuple(block)):
                    vals = [V.mu(n, m) for m in block]
                    return len(set(vals)) == 1 if _all_known(*vals) else None

                yield f"n={n} m in {block[0]}..{block[-1]}", chk

    rep.entries.append(
        _run(AuditEntry("mu-constant-on-dyadic-blocks", "mu(n,m) independent of m within [2^k, 2^(k+1))", rng, evidence_only=True), dyadic())
    )

    def star_monotone():
        for m in ms:
            for n in ns:
                if n < m or n + 1 not in ns:
                    continue

                def chk(n=n, m=m):
                    a, b = V.mu_star(n, m), V.mu_star(n + 1, m)
                    return a <= b if _all_known(a, b) else None

                yield f"n={n} m={m}", chk

    rep.entries.append(
        _run(AuditEntry("mu-star-monotone-n", "mu*(n,m) <= mu*(n+1,m)", rng, evidence_only=True), star_monotone())
    )

    gap = AuditEntry("mu-minus-mu-star-on-blocks", "mu(n,m1) - mu*(n,m2) for m1, m2 in one dyadic block", rng, evidence_only=True)
    worst = None
    for n in ns:
        for m1 in ms:
            for m2 in ms:
                if formulas.dyadic_level(m1) != formulas.dyadic_level(m2) or n < m2:
                    continue
                a, b = V.mu(n, m1), V.mu_star(n, m2)
                if not _all_known(a, b):
                    gap.skipped += 1
                    continue
                gap.checked += 1
                d = abs(a - b)
                if worst is None or d > worst[0]:
                    worst = (d, n, m1, m2)
    if worst is not None:
        gap.info = f"largest |difference| {worst[0]} at n={worst[1]} m1={worst[2]} m2={worst[3]}"
    rep.entries.append(gap)

    def power_case():
        for k in range(1, 8):
            n, m = (1 << (k + 1)) - 1, 1 << k
            if n not in ns or m not in ms:
                continue

            def chk(n=n, m=m):
                a, b = V.mu(n, m), V.mu_star(n, m)
                return a == b == m if _all_known(a, b) else None

            yield f"n={n} m={m}", chk

    rep.entries.append(
        _run(AuditEntry("power-of-two-case", "mu(2^(k+1)-1,2^k) = mu*(2^(k+1)-1,2^k) = 2^k", rng, evidence_only=True), power_case())
    )
    return rep
