"""Line-oriented spec files describing logics, Omega-sets, relations and diagrams.

Grammar (``#`` starts a comment)::

    logic <boolean|godel|lukasiewicz|product>
    flavor <join|conorm> <tnorm|meet>
    mode <exact|float>
    set A = e1 e2 ...
    memb A : e1=w ...              # unlisted elements weigh 1
    sim A identity
    sim A : (e1,e2)=w ...          # symmetric closure, unlisted pairs weigh 0
    rel f A B -> C                 # a variable may be renamed: X:A
    a b | c = w
    end
    diagram D
    edge f g
    vertex X:A                     # optional, for vertices no edge uses
    sources A
    end

Weights are ``p/q`` fractions or decimals; decimals convert exactly in exact
mode.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .core import FiniteSet, OmegaSet, Relation
from .diagram import MultiDiagram
from .errors import OmegaRelError
from .lattice import LOGICS, MODES, PRODUCTS, SUMS, LogicSpec

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")
_PAIR = re.compile(r"\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)\s*=\s*(\S+)")


class SpecError(OmegaRelError):
    exit_code = 2

    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class ParseError(SpecError):
    """Malformed syntax."""

    exit_code = 2


class SemanticError(SpecError):
    """Well-formed text that names unknown objects or violates a type constraint."""

    exit_code = 3


@dataclass
class SpecFile:
    spec: LogicSpec
    sets: dict = field(default_factory=dict)
    omegas: dict = field(default_factory=dict)
    relations: dict = field(default_factory=dict)
    diagrams: dict = field(default_factory=dict)

    def to_text(self) -> str:
        """Serialize back to spec-file syntax."""
        sp = self.spec
        out = [f"logic {sp.logic}", f"flavor {sp.sum} {sp.prod}", f"mode {sp.mode}", ""]
        for name, s in self.sets.items():
            out.append(f"set {name} = " + " ".join(map(str, s.elements)))
        for name, o in self.omegas.items():
            memb = [(e, o.member(e, 1)) for e in o.support if o.member(e, 1) != 1]
            if memb:
                out.append(f"memb {name} : " + " ".join(f"{e}={sp.format(w)}" for e, w in memb))
            ident = {(e, e): 1 for e in o.support}
            nonzero = {k: v for k, v in o.similarity.items() if v != 0}
            if nonzero == ident:
                out.append(f"sim {name} identity")
            else:
                pairs = " ".join(f"({x},{y})={sp.format(w)}" for (x, y), w in _sorted_pairs(o, nonzero))
                out.append(f"sim {name} :" + (" " + pairs if pairs else ""))
        for rel in self.relations.values():
            out.append("")
            out.append(f"rel {rel.name} " + " ".join(_var_text(v) for v in rel.source)
                       + " -> " + " ".join(_var_text(v) for v in rel.target))
            k = len(rel.source)
            for key, w in rel.rows():
                out.append(" ".join(map(str, key[:k])) + " | " + " ".join(map(str, key[k:])) + f" = {sp.format(w)}")
            out.append("end")
        for D in self.diagrams.values():
            out.append("")
            out.append(f"diagram {D.name}")
            for n, o in D.vertices:
                out.append(f"vertex {_var_text((n, o.support))}")
            if D.edges:
                out.append("edge " + " ".join(r.name for r in D.edges))
            if D.sources:
                out.append("sources " + " ".join(D.sources))
            out.append("end")
        return "\n".join(out) + "\n"

    def equivalent(self, other: "SpecFile") -> bool:
        """Semantic equality of every declared object."""
        if self.spec != other.spec or self.sets != other.sets or self.omegas != other.omegas:
            return False
        if self.relations.keys() != other.relations.keys():
            return False
        if any(self.relations[k] != other.relations[k] for k in self.relations):
            return False
        if self.diagrams.keys() != other.diagrams.keys():
            return False
        for k, D in self.diagrams.items():
            E = other.diagrams[k]
            if D.vertex_names != E.vertex_names or D.sources != E.sources:
                return False
            if any(a != b for (_, a), (_, b) in zip(D.vertices, E.vertices)):
                return False
            if [r.name for r in D.edges] != [r.name for r in E.edges]:
                return False
        return True


def _sorted_pairs(o: OmegaSet, pairs: dict):
    idx = o.support.index
    return sorted(pairs.items(), key=lambda kv: (idx(kv[0][0]), idx(kv[0][1])))


def _var_text(var) -> str:
    name, support = var
    return name if name == support.name else f"{name}:{support.name}"


class _Parser:
    def __init__(self, text: str, mode: str | None):
        self.lines = text.splitlines()
        self.mode_override = mode
        self.logic = self.flavor = self.mode = None
        self.sets: dict[str, FiniteSet] = {}
        self.memb: dict[str, dict] = {}
        self.sim: dict[str, dict] = {}
        self.relations: dict[str, Relation] = {}
        self.diagrams: dict[str, tuple] = {}
        self.weight_lines: list[tuple[Fraction, int, int]] = []
        self.i = 0

    # helpers

    def col(self, raw: str, token: str, start: int = 0) -> int:
        pos = raw.find(token, start)
        return pos + 1 if pos >= 0 else 1

    def ident(self, tok: str, lineno: int, raw: str) -> str:
        if not _IDENT.match(tok):
            raise ParseError(f"expected an identifier, got {tok!r}", lineno, self.col(raw, tok))
        return tok

    def weight(self, tok: str, lineno: int, col: int) -> Fraction:
        try:
            w = Fraction(tok)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"malformed weight {tok!r}", lineno, col) from None
        if not 0 <= w <= 1:
            raise SemanticError(f"weight {tok} outside [0, 1]", lineno, col)
        self.weight_lines.append((w, lineno, col))
        return w

    def need_set(self, name: str, lineno: int, col: int) -> FiniteSet:
        if name not in self.sets:
            raise SemanticError(f"unknown set {name!r}", lineno, col)
        return self.sets[name]

    # directives

    def run(self) -> SpecFile:
        while self.i < len(self.lines):
            lineno = self.i + 1
            raw = self.lines[self.i]
            self.i += 1
            body = raw.split("#", 1)[0].strip()
            if not body:
                continue
            head = body.split()[0]
            handler = getattr(self, f"do_{head}", None)
            if handler is None:
                raise ParseError(f"unknown directive {head!r}", lineno, self.col(raw, head))
            handler(body, raw, lineno)
        return self.finish()

    def _once(self, attr: str, value, lineno: int, raw: str):
        if getattr(self, attr) is not None:
            raise SemanticError(f"duplicate {attr} directive", lineno, 1)
        setattr(self, attr, value)

    def do_logic(self, body, raw, lineno):
        parts = body.split()
        if len(parts) != 2 or parts[1] not in LOGICS:
            raise ParseError(f"expected 'logic <{'|'.join(LOGICS)}>'", lineno, 1)
        self._once("logic", (parts[1], lineno), lineno, raw)

    def do_flavor(self, body, raw, lineno):
        parts = body.split()
        if len(parts) != 3 or parts[1] not in SUMS or parts[2] not in PRODUCTS:
            raise ParseError("expected 'flavor <join|conorm> <tnorm|meet>'", lineno, 1)
        self._once("flavor", (parts[1], parts[2], lineno), lineno, raw)

    def do_mode(self, body, raw, lineno):
        parts = body.split()
        if len(parts) != 2 or parts[1] not in MODES:
            raise ParseError("expected 'mode <exact|float>'", lineno, 1)
        self._once("mode", parts[1], lineno, raw)

    def do_set(self, body, raw, lineno):
        m = re.match(r"^set\s+(\S+)\s*=\s*(.*)$", body)
        if not m:
            raise ParseError("expected 'set NAME = e1 e2 ...'", lineno, 1)
        name = self.ident(m.group(1), lineno, raw)
        if name in self.sets:
            raise SemanticError(f"set {name!r} declared twice", lineno, self.col(raw, name))
        elems = m.group(2).split()
        for e in elems:
            if any(c in e for c in "|=(),:"):
                raise ParseError(f"element label {e!r} contains a reserved character", lineno, self.col(raw, e))
        seen = set()
        for e in elems:
            if e in seen:
                raise SemanticError(f"element {e!r} listed twice in set {name}", lineno, self.col(raw, e))
            seen.add(e)
        self.sets[name] = FiniteSet(name, elems)

    def do_memb(self, body, raw, lineno):
        m = re.match(r"^memb\s+(\S+)\s*:\s*(.*)$", body)
        if not m:
            raise ParseError("expected 'memb SET : e=w ...'", lineno, 1)
        name = m.group(1)
        s = self.need_set(name, lineno, self.col(raw, name))
        if name in self.memb:
            raise SemanticError(f"membership of {name!r} declared twice", lineno, 1)
        table = {}
        start = raw.find(":") + 1
        for item in m.group(2).split():
            c = self.col(raw, item, start)
            if item.count("=") != 1:
                raise ParseError(f"expected e=w, got {item!r}", lineno, c)
            e, w = item.split("=")
            if e not in s:
                raise SemanticError(f"{e!r} is not an element of {name}", lineno, c)
            if e in table:
                raise SemanticError(f"membership of {e!r} given twice", lineno, c)
            table[e] = self.weight(w, lineno, c)
        self.memb[name] = table

    def do_sim(self, body, raw, lineno):
        m = re.match(r"^sim\s+(\S+)\s*(identity|:\s*(.*))$", body)
        if not m:
            raise ParseError("expected 'sim SET identity' or 'sim SET : (x,y)=w ...'", lineno, 1)
        name = m.group(1)
        s = self.need_set(name, lineno, self.col(raw, name))
        if name in self.sim:
            raise SemanticError(f"similarity of {name!r} declared twice", lineno, 1)
        if m.group(2) == "identity":
            self.sim[name] = {(e, e): Fraction(1) for e in s}
            return
        rest = m.group(3) or ""
        table = {}
        consumed = _PAIR.sub("", rest).strip()
        if consumed:
            raise ParseError(f"cannot read similarity entry near {consumed.split()[0]!r}", lineno,
                             self.col(raw, consumed.split()[0]))
        for pm in _PAIR.finditer(rest):
            x, y, wt = pm.groups()
            c = self.col(raw, pm.group(0))
            for e in (x, y):
                if e not in s:
                    raise SemanticError(f"{e!r} is not an element of {name}", lineno, c)
            w = self.weight(wt, lineno, c)
            for k in ((x, y), (y, x)):
                if k in table and table[k] != w:
                    raise SemanticError(f"conflicting similarity weights for ({x},{y})", lineno, c)
                table[k] = w
        self.sim[name] = table

    def _vars(self, tokens, raw, lineno, start):
        out = []
        for tok in tokens:
            c = self.col(raw, tok, start)
            if ":" in tok:
                vname, sname = tok.split(":", 1)
            else:
                vname = sname = tok
            self.ident(vname, lineno, raw)
            out.append((vname, self.need_set(sname, lineno, c)))
        return out

    def do_rel(self, body, raw, lineno):
        parts = body.split()
        if len(parts) < 2 or "->" not in parts:
            raise ParseError("expected 'rel NAME SRC... -> TGT...'", lineno, 1)
        name = self.ident(parts[1], lineno, raw)
        if name in self.relations:
            raise SemanticError(f"relation {name!r} declared twice", lineno, self.col(raw, name))
        arrow = parts.index("->")
        start = raw.find(name) + len(name)
        src = self._vars(parts[2:arrow], raw, lineno, start)
        tgt = self._vars(parts[arrow + 1:], raw, lineno, raw.find("->"))
        names = [n for n, _ in src + tgt]
        for n in names:
            if names.count(n) > 1:
                raise SemanticError(f"variable {n!r} used twice in relation {name}; rename one as X:{n}",
                                    lineno, self.col(raw, n))
        supports = src + tgt
        table = {}
        while True:
            if self.i >= len(self.lines):
                raise ParseError(f"relation {name} has no 'end'", lineno, 1)
            rlineno = self.i + 1
            rraw = self.lines[self.i]
            self.i += 1
            rbody = rraw.split("#", 1)[0].strip()
            if not rbody:
                continue
            if rbody == "end":
                break
            if "=" not in rbody:
                raise ParseError("expected a row 'a b | c = w' or 'end'", rlineno, 1)
            lhs, wtxt = rbody.rsplit("=", 1)
            wtxt = wtxt.strip()
            if "|" in lhs:
                left, right = lhs.split("|", 1)
                if "|" in right:
                    raise ParseError("more than one '|' in row", rlineno, self.col(rraw, "|", rraw.find("|") + 1))
                lvals, rvals = left.split(), right.split()
            elif not src:
                lvals, rvals = [], lhs.split()
            else:
                raise ParseError("row needs '|' between source and target values", rlineno, 1)
            if len(lvals) != len(src) or len(rvals) != len(tgt):
                raise SemanticError(
                    f"row has {len(lvals)}+{len(rvals)} values, relation {name} expects {len(src)}+{len(tgt)}",
                    rlineno, 1)
            key = tuple(lvals + rvals)
            pos = 0
            for e, (vname, s) in zip(key, supports):
                c = self.col(rraw, e, pos)
                pos = c
                if e not in s:
                    raise SemanticError(f"{e!r} is not an element of {s.name} (variable {vname})", rlineno, c)
            if key in table:
                raise SemanticError(f"duplicate row {' '.join(key)} in relation {name}", rlineno, 1)
            table[key] = self.weight(wtxt, rlineno, self.col(rraw, wtxt, rraw.rfind("=")))
        self.relations[name] = Relation(name, src, tgt, table)

    def do_diagram(self, body, raw, lineno):
        parts = body.split()
        if len(parts) != 2:
            raise ParseError("expected 'diagram NAME'", lineno, 1)
        name = self.ident(parts[1], lineno, raw)
        if name in self.diagrams:
            raise SemanticError(f"diagram {name!r} declared twice", lineno, self.col(raw, name))
        vertices: dict[str, tuple] = {}
        edges, sources, src_lines = [], [], {}

        def add_vertex(vname, support, l, c):
            if vname in vertices and vertices[vname][0] != support:
                raise SemanticError(f"vertex {vname!r} bound to both {vertices[vname][0].name} and {support.name}", l, c)
            vertices.setdefault(vname, (support, l))

        while True:
            if self.i >= len(self.lines):
                raise ParseError(f"diagram {name} has no 'end'", lineno, 1)
            dlineno = self.i + 1
            draw = self.lines[self.i]
            self.i += 1
            dbody = draw.split("#", 1)[0].strip()
            if not dbody:
                continue
            if dbody == "end":
                break
            words = dbody.split()
            kind, args = words[0], words[1:]
            if kind == "edge":
                for e in args:
                    c = self.col(draw, e, len("edge"))
                    if e not in self.relations:
                        raise SemanticError(f"unknown relation {e!r}", dlineno, c)
                    rel = self.relations[e]
                    for vname, s in rel.variables:
                        add_vertex(vname, s, dlineno, c)
                    edges.append(rel)
            elif kind in ("vertex", "vertices"):
                for (vname, s), tok in zip(self._vars(args, draw, dlineno, len(kind)), args):
                    add_vertex(vname, s, dlineno, self.col(draw, tok))
            elif kind == "sources":
                for s in args:
                    sources.append(s)
                    src_lines[s] = (dlineno, self.col(draw, s, len(kind)))
            else:
                raise ParseError(f"unknown diagram line {kind!r}; expected edge, vertex, sources or end",
                                 dlineno, self.col(draw, kind))
        for s in sources:
            if s not in vertices:
                raise SemanticError(f"source {s!r} is not a vertex of diagram {name}", *src_lines[s])
        self.diagrams[name] = (vertices, edges, sources, lineno)

    # assembly

    def finish(self) -> SpecFile:
        if self.logic is None:
            raise SemanticError("missing 'logic' directive", max(len(self.lines), 1), 1)
        if self.flavor is None:
            raise SemanticError("missing 'flavor' directive", max(len(self.lines), 1), 1)
        logic, llin = self.logic
        s_, p_, flin = self.flavor
        mode = self.mode_override or self.mode or "exact"
        try:
            spec = LogicSpec(logic, s_, p_, mode)
        except OmegaRelError as exc:
            raise SemanticError(str(exc), flin, 1) from None
        if logic == "boolean":
            for w, l, c in self.weight_lines:
                if w not in (0, 1):
                    raise SemanticError(f"boolean logic only admits weights 0 and 1, got {w}", l, c)
        conv = spec.value
        omegas = {}
        for name, s in self.sets.items():
            memb = {e: conv(w) for e, w in self.memb.get(name, {}).items()}
            if name in self.sim:
                sim = {k: conv(w) for k, w in self.sim[name].items()}
            else:
                sim = {(e, e): spec.top for e in s}
            omegas[name] = OmegaSet(s, memb, sim)
        relations = {
            n: Relation(n, r.source, r.target, {k: conv(w) for k, w in r.table.items()})
            for n, r in self.relations.items()
        }
        diagrams = {}
        for name, (vertices, edges, sources, lineno) in self.diagrams.items():
            try:
                diagrams[name] = MultiDiagram(
                    tuple((v, omegas[s.name]) for v, (s, _) in vertices.items()),
                    tuple(relations[r.name] for r in edges),
                    tuple(sources),
                    name,
                )
            except OmegaRelError as exc:
                raise SemanticError(str(exc), lineno, 1) from None
        return SpecFile(spec, dict(self.sets), omegas, relations, diagrams)


def parse_spec(text: str, mode: str | None = None) -> SpecFile:
    """Parse spec-file text; ``mode`` overrides the file's ``mode`` directive."""
    return _Parser(text, mode).run()
