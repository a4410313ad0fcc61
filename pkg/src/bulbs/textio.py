"""Plain-text formats: wiring files, search reports, and DOT output.

A wiring file is ``n`` on the first line followed by ``n`` rows of ``0``/``1``
characters; character ``j`` of row ``i`` is ``w[i, j]``.  Every line ends in a
newline and nothing else is allowed, so parse/emit round-trips byte for byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .gf2 import BitVec
from .search import SearchReport
from .wiring import Wiring, clique_blocks


class TextFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def emit_wiring(W: Wiring) -> str:
    return f"{W.n}\n" + "".join(r + "\n" for r in W.row_strings())


def parse_wiring(text: str) -> Wiring:
    if not text.endswith("\n"):
        lines = text.split("\n")
        raise TextFormatError("missing trailing newline", len(lines), len(lines[-1]) + 1)
    lines = text[:-1].split("\n")
    head = lines[0]
    if not re.fullmatch(r"[1-9][0-9]*|0", head):
        bad = next((k for k, ch in enumerate(head) if not ch.isdigit()), 0)
        raise TextFormatError(f"expected a dimension, got {head!r}", 1, bad + 1)
    n = int(head)
    if len(lines) - 1 != n:
        # point at the first surplus row, or just past the last row present
        raise TextFormatError(f"expected {n} rows, found {len(lines) - 1}", min(len(lines), n + 1) + 1)
    for i, row in enumerate(lines[1:], start=2):
        for k, ch in enumerate(row):
            if ch not in "01":
                raise TextFormatError(f"unexpected character {ch!r}", i, k + 1)
        if len(row) != n:
            raise TextFormatError(f"expected {n} characters, found {len(row)}", i, min(len(row), n) + 1)
    if n == 0:
        return Wiring.from_columns(0, [])
    return Wiring.from_rows(lines[1:])


def read_wiring(path: str) -> Wiring:
    with open(path, encoding="ascii", newline="") as fh:
        return parse_wiring(fh.read())


def write_wiring(path: str, W: Wiring) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(emit_wiring(W))


# ---------------------------------------------------------------- reports

REPORT_KEYS = (
    "target",
    "n",
    "m",
    "exact_degree",
    "value",
    "lower",
    "upper",
    "certification",
    "nodes",
    "spans_deduplicated",
    "witness_c",
)


def _fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit_report(R: SearchReport) -> str:
    """Deterministic report text; wall time is deliberately left out."""
    fields = {
        "target": R.target,
        "n": R.n,
        "m": R.m,
        "exact_degree": R.exact_degree,
        "value": R.value,
        "lower": R.lower,
        "upper": R.upper,
        "certification": R.certification,
        "nodes": R.nodes,
        "spans_deduplicated": R.spans_deduplicated,
        "witness_c": R.witness_c,
    }
    out = [f"{k}: {_fmt(fields[k])}\n" for k in REPORT_KEYS]
    out += [f"note: {s}\n" for s in R.notes]
    if R.witness is None:
        out.append("witness: none\n")
    else:
        out.append("witness:\n")
        out.append(emit_wiring(R.witness))
    return "".join(out)


@dataclass
class ParsedReport:
    fields: dict[str, str]
    notes: list[str]
    witness: Wiring | None

    def int_field(self, key: str) -> int | None:
        v = self.fields[key]
        return None if v == "none" else int(v)

    @property
    def witness_c(self) -> BitVec | None:
        v = self.fields["witness_c"]
        return None if v == "none" else BitVec.from_str(v)


def parse_report(text: str) -> ParsedReport:
    lines = text.split("\n")
    fields: dict[str, str] = {}
    notes: list[str] = []
    for idx, line in enumerate(lines):
        lineno = idx + 1
        if line == "witness:":
            body = "\n".join(lines[idx + 1 :])
            try:
                W = parse_wiring(body)
            except TextFormatError as e:
                raise TextFormatError(f"witness: {e.args[0].split(': ', 1)[1]}", e.line + lineno, e.column) from None
            break
        if line == "witness: none":
            W = None
            if any(lines[idx + 1 :]):
                raise TextFormatError("trailing content after witness", lineno + 1)
            break
        key, sep, value = line.partition(": ")
        if not sep:
            raise TextFormatError(f"expected 'key: value', got {line!r}", lineno)
        if key == "note":
            notes.append(value)
        elif key in REPORT_KEYS:
            fields[key] = value
        else:
            raise TextFormatError(f"unknown key {key!r}", lineno)
    else:
        raise TextFormatError("missing witness section", len(lines))
    missing = [k for k in REPORT_KEYS if k not in fields]
    if missing:
        raise TextFormatError(f"missing keys: {', '.join(missing)}", 1)
    return ParsedReport(fields, notes, W)


# ---------------------------------------------------------------- DOT

def emit_dot(W: Wiring, show_loops: bool = False, collapse_cliques: bool = False) -> str:
    """Digraph with edge ``i -> j`` whenever button ``i`` toggles bulb ``j``.

    With ``collapse_cliques`` every augmented complete block becomes a single
    node and only edges between distinct blocks are drawn (once each).
    """
    out = ["digraph wiring {\n"]
    if not collapse_cliques:
        for v in range(1, W.n + 1):
            out.append(f"  {v};\n")
        for i in range(1, W.n + 1):
            col = W.columns[i - 1]
            for j in range(1, W.n + 1):
                if col >> (j - 1) & 1 and (i != j or show_loops):
                    out.append(f"  {i} -> {j};\n")
    else:
        blocks = clique_blocks(W)
        owner = {}
        names = []
        for b in blocks:
            name = "b" + "_".join(str(v) for v in sorted(b))
            names.append(name)
            for v in b:
                owner[v] = name
            label = ",".join(str(v) for v in sorted(b))
            out.append(f'  {name} [label="K{len(b)} {{{label}}}"];\n')
        seen = set()
        edges = []
        for i in range(1, W.n + 1):
            col = W.columns[i - 1]
            for j in range(1, W.n + 1):
                if not col >> (j - 1) & 1:
                    continue
                a, b = owner[i], owner[j]
                if a == b and not show_loops:
                    continue
                if (a, b) not in seen:
                    seen.add((a, b))
                    edges.append((names.index(a), names.index(b), a, b))
        for _, _, a, b in sorted(edges):
            out.append(f"  {a} -> {b};\n")
    out.append("}\n")
    return "".join(out)
