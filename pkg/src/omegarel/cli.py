"""Command line entry point.

Exit codes: 0 success, 2 parse error (spec file or command line),
3 semantic error, 4 evaluation error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import core, diagram, wiring
from .dsl import SpecError, SpecFile, parse_spec
from .errors import OmegaRelError
from .render import label, render_commutativity, render_records, render_table

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_EVAL = 0, 2, 3, 4


class QueryError(OmegaRelError):
    """A query names an object the spec file does not declare."""


@dataclass
class QueryResult:
    kind: str
    text: str
    csv: str
    payload: object = None
    status: int = EXIT_OK


def _lookup(table: dict, name: str, what: str):
    if name not in table:
        raise QueryError(f"unknown {what} {name!r}")
    return table[name]


def _validate(sf: SpecFile) -> QueryResult:
    spec = sf.spec
    rows = []
    for name, o in sf.omegas.items():
        rep = o.check(spec)
        for check, ok in (("reflexive", rep.reflexive), ("symmetric", rep.symmetric),
                          ("transitive", rep.transitive),
                          ("compatible", "compatibility" not in rep.failures)):
            detail = rep.failures.get({"reflexive": "reflexivity", "symmetric": "symmetry",
                                       "transitive": "transitivity", "compatible": "compatibility"}[check])
            rows.append([f"set {name}", check, str(ok).lower(), _detail(spec, detail)])
    for name, rel in sf.relations.items():
        entire, simple = core.is_map(spec, rel)
        rows.append([f"rel {name}", "entire", str(entire).lower(), ""])
        rows.append([f"rel {name}", "simple", str(simple).lower(), ""])
        srcs = [sf.omegas[s.name] for _, s in rel.source]
        tgts = [sf.omegas[s.name] for _, s in rel.target]
        rep = core.is_bimodule(spec, rel, srcs, tgts)
        rows.append([f"rel {name}", "bimodule", str(rep.valid).lower(),
                     "; ".join(f"{k} {_detail(spec, v)}" for k, v in rep.failures.items())])
    for name, D in sf.diagrams.items():
        rows.append([f"diagram {name}", "well-formed", "true",
                     f"{len(D.vertices)} vertices, {len(D.edges)} edges"])
    header = ["object", "check", "holds", "witness"]
    return QueryResult("validate", render_records(header, rows), render_records(header, rows, "csv"), rows)


def _detail(spec, witness) -> str:
    if witness is None:
        return ""
    parts = []
    for x in witness:
        if isinstance(x, tuple):
            parts.append("(" + ",".join(label(e) for e in x) + ")")
        elif isinstance(x, str):
            parts.append(x)
        else:
            parts.append(spec.format(x))
    return " ".join(parts)


def run_query(sf: SpecFile | None, command: str, args: list[str], workers: int = 1) -> QueryResult:
    """Evaluate one command against a parsed spec file."""
    if command == "glue":
        if len(args) != 2:
            raise QueryError("glue expects two words")
        w = wiring.glue(wiring.PolarizedWord.parse(args[0]), wiring.PolarizedWord.parse(args[1]))
        return QueryResult("glue", str(w) + "\n", "word\n" + str(w) + "\n", w)
    if sf is None:
        raise QueryError(f"command {command!r} needs --spec")
    spec = sf.spec
    if command == "validate":
        return _validate(sf)
    if command == "limit":
        D = _lookup(sf.diagrams, args[0], "diagram")
        lim = diagram.weighted_limit(spec, D, workers)
        return QueryResult("limit", render_table(lim, spec), render_table(lim, spec, "csv"), lim)
    if command == "commute":
        D = _lookup(sf.diagrams, args[0], "diagram")
        res = diagram.commutativity_degree(spec, D, workers)
        text = render_commutativity(res, spec) + f"degree = {spec.format(res.degree)}\n"
        return QueryResult("commute", text, render_commutativity(res, spec, "csv"), res)
    if command == "compose":
        f = _lookup(sf.relations, args[0], "relation")
        g = _lookup(sf.relations, args[1], "relation")
        h = core.compose(spec, f, g)
        return QueryResult("compose", render_table(h, spec), render_table(h, spec, "csv"), h)
    if command == "similar":
        a_name, b_name, set_name = args
        omega = _lookup(sf.omegas, set_name, "set")
        var = [(set_name, omega.support)]

        def as_element(name):
            if name in sf.relations:
                rel = sf.relations[name]
                if rel.source or [s for _, s in rel.target] != [omega.support]:
                    raise QueryError(f"relation {name!r} is not an element of {set_name}")
                return core.element(name, var, rel.table)
            if name in omega.support:
                return core.crisp_point(spec, name, var, [name])
            raise QueryError(f"{name!r} is neither an element relation nor an element of {set_name}")

        a, b = as_element(a_name), as_element(b_name)
        deg = core.element_similarity(spec, a, b, core.ProductSimilarity(spec, [omega]))
        rows = [[a_name, b_name, set_name, spec.format(deg)]]
        header = ["a", "b", "on", "similarity"]
        return QueryResult("similarity", f"[{a_name} = {b_name}]_{set_name} = {spec.format(deg)}\n",
                           render_records(header, rows, "csv"), deg)
    if command == "colimit":
        D = _lookup(sf.diagrams, args[0], "diagram")
        chi = diagram.colimit_equivalence(spec, D)
        classes = diagram.colimit_classes(D)
        text = "\n".join("{" + ", ".join(label(x) for x in c) + "}" for c in classes) + "\n"
        return QueryResult("colimit", text, render_table(chi, spec, "csv"), chi)
    raise QueryError(f"unknown command {command!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", type=Path, help="spec file")
    common.add_argument("--csv", type=Path, help="also write machine-readable CSV here")
    common.add_argument("--mode", choices=("exact", "float"), help="override the spec file's arithmetic mode")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for joins (results do not depend on it)")
    common.add_argument("--figure", type=Path, help="render a figure (limit, commute) to this file")

    p = argparse.ArgumentParser(prog="omegarel", description="Omega-valued relations, weighted limits and diagram commutativity.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check similarity axioms, maps and bimodules")
    for name, what in (("limit", "weighted limit table"), ("commute", "commutativity degree"),
                       ("colimit", "colimit equivalence classes")):
        sp = sub.add_parser(name, parents=[common], help=what)
        sp.add_argument("diagram")
    sp = sub.add_parser("compose", parents=[common], help="compose two relations (first then second)")
    sp.add_argument("f")
    sp.add_argument("g")
    sp = sub.add_parser("similar", parents=[common], help="similarity degree of two elements of a set")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("on", choices=["on"])
    sp.add_argument("set")
    sp = sub.add_parser("glue", parents=[common], help="glue two polarized words")
    sp.add_argument("w")
    sp.add_argument("w2")
    return p


def _args_for(ns) -> list[str]:
    return {
        "validate": [],
        "limit": [getattr(ns, "diagram", None)],
        "commute": [getattr(ns, "diagram", None)],
        "colimit": [getattr(ns, "diagram", None)],
        "compose": [getattr(ns, "f", None), getattr(ns, "g", None)],
        "similar": [getattr(ns, "a", None), getattr(ns, "b", None), getattr(ns, "set", None)],
        "glue": [getattr(ns, "w", None), getattr(ns, "w2", None)],
    }[ns.command]


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    sf = None
    if ns.spec is not None:
        try:
            text = ns.spec.read_text(encoding="utf-8")
        except OSError as exc:
            print(f"omegarel: cannot read {ns.spec}: {exc}", file=sys.stderr)
            return EXIT_PARSE
        try:
            sf = parse_spec(text, ns.mode)
        except SpecError as exc:
            print(f"{ns.spec}:{exc.line}:{exc.col}: {exc.message}", file=sys.stderr)
            return exc.exit_code
    elif ns.command != "glue":
        print(f"omegarel: {ns.command} needs --spec", file=sys.stderr)
        return EXIT_PARSE
    try:
        res = run_query(sf, ns.command, _args_for(ns), workers=max(1, ns.jobs))
    except QueryError as exc:
        print(f"omegarel: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except (OmegaRelError, ValueError, KeyError) as exc:
        print(f"omegarel: {ns.command} failed: {exc}", file=sys.stderr)
        return EXIT_EVAL
    sys.stdout.write(res.text)
    if ns.csv is not None:
        ns.csv.write_text(res.csv, encoding="utf-8", newline="")
    if ns.figure is not None:
        from . import plotting

        if res.kind == "limit":
            plotting.plot_limit(res.payload, ns.figure)
        elif res.kind == "commute":
            plotting.plot_commutativity(res.payload, ns.figure)
        else:
            print(f"omegarel: no figure for {res.kind}", file=sys.stderr)
    return res.status


if __name__ == "__main__":
    sys.exit(main())
