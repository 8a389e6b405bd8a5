"""Text and CSV rendering of sparse tables."""
from __future__ import annotations

import csv
import io
from typing import Sequence

from .core import Relation
from .lattice import LogicSpec


def label(e) -> str:
    if isinstance(e, tuple):
        return ":".join(map(label, e))
    return str(e)


def _csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _pretty(groups: Sequence[Sequence[str]], rows: Sequence[Sequence[str]]) -> str:
    """Columns grouped like ``A | B || C || Omega``."""
    header = [c for g in groups for c in g]
    widths = [len(h) for h in header]
    for r in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, r)]

    def line(cells):
        out, i = [], 0
        for gi, g in enumerate(groups):
            part = " | ".join(c.ljust(widths[i + j]) for j, c in enumerate(cells[i:i + len(g)]))
            out.append(part)
            i += len(g)
        return " || ".join(p for p in out if p).rstrip()

    sep = "-" * max(len(line(header)), 1)
    return "\n".join([line(header), sep] + [line(r) for r in rows]) + "\n"


def relation_rows(rel: Relation, spec: LogicSpec) -> list[list[str]]:
    return [[label(e) for e in key] + [spec.format(w)] for key, w in rel.rows()]


def render_table(rel: Relation, spec: LogicSpec, format: str = "pretty") -> str:
    """Render a relation or limit table.

    ``csv``: header of variable names then ``weight``; rows in element order;
    exact weights as ``p/q``.  ``pretty``: source and target columns and the
    truth-value column separated by ``||``.
    """
    rows = relation_rows(rel, spec)
    if format == "csv":
        return _csv(list(rel.names) + ["weight"], rows)
    groups = [list(rel.source_names), list(rel.target_names), ["Ω"]]
    return _pretty([g for g in groups if g], rows)


def render_commutativity(result, spec: LogicSpec, format: str = "pretty") -> str:
    header = list(result.sources) + ["lhs", "rhs", "biresiduum"]
    rows = [[label(e) for e in s] + [spec.format(x) for x in (lhs, rhs, b)] for s, lhs, rhs, b in result.rows]
    if format == "csv":
        return _csv(header, rows)
    return _pretty([list(result.sources), ["lhs", "rhs", "biresiduum"]], rows)


def render_records(header: Sequence[str], rows: Sequence[Sequence[str]], format: str = "pretty") -> str:
    if format == "csv":
        return _csv(header, rows)
    return _pretty([list(header)], rows)
