"""Finite Omega-sets and Omega-valued relations with named variable boundaries.

A :class:`Relation` is a multi-morphism: an ordered list of source variables,
an ordered list of target variables, and a sparse table mapping full tuples
(source values then target values) to truth values.  Absent tuples weigh
bottom and bottom weights are never stored.

Variables are identified by name.  Composing ``f`` then ``g`` sums over the
variables that are targets of ``f`` and sources of ``g``; every other shared
name is joined, not summed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import BoundaryError, CompositionError, SupportError
from .lattice import LogicSpec

Var = tuple  # (name, FiniteSet)


class FiniteSet:
    """A named finite set whose element order is fixed at construction."""

    __slots__ = ("name", "elements", "_index")

    def __init__(self, name: str, elements: Iterable[Hashable]):
        self.name = name
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            seen, dup = set(), None
            for e in self.elements:
                if e in seen:
                    dup = e
                    break
                seen.add(e)
            raise SupportError(f"set {name!r} lists element {dup!r} twice")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        return e in self._index

    def index(self, e) -> int:
        return self._index[e]

    def __eq__(self, other):
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"FiniteSet({self.name!r}, {list(self.elements)!r})"


def _check_vars(variables: Sequence[Var], what: str) -> tuple[Var, ...]:
    out = []
    for v in variables:
        name, support = v
        if not isinstance(support, FiniteSet):
            raise TypeError(f"{what}: variable {name!r} must be bound to a FiniteSet")
        out.append((name, support))
    return tuple(out)


class Relation:
    """Sparse Omega-valued relation between products of finite sets.

    ``table`` maps full tuples ``(*source_values, *target_values)`` to truth
    values.  Zero weights are dropped on construction.
    """

    __slots__ = ("name", "source", "target", "table")

    def __init__(
        self,
        name: str,
        source: Sequence[Var],
        target: Sequence[Var],
        table: Mapping[tuple, object] | Iterable[tuple[tuple, object]] = (),
    ):
        self.name = name
        self.source = _check_vars(source, name)
        self.target = _check_vars(target, name)
        names = [n for n, _ in self.source + self.target]
        if len(set(names)) != len(names):
            raise BoundaryError(f"relation {name!r} repeats a variable name: {names}")
        supports = [s for _, s in self.source + self.target]
        items = table.items() if isinstance(table, Mapping) else table
        clean = {}
        for key, w in items:
            key = tuple(key)
            if len(key) != len(supports):
                raise SupportError(f"relation {name!r}: tuple {key!r} has arity {len(key)}, expected {len(supports)}")
            for e, (vname, s) in zip(key, self.source + self.target):
                if e not in s:
                    raise SupportError(f"relation {name!r}: {e!r} is not an element of {s.name} (variable {vname})")
            if not 0 <= w <= 1:
                raise SupportError(f"relation {name!r}: weight {w!r} outside [0, 1]")
            if w != 0:
                clean[key] = w
        self.table = clean

    @property
    def variables(self) -> tuple[Var, ...]:
        return self.source + self.target

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.variables)

    @property
    def source_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.source)

    @property
    def target_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.target)

    def __call__(self, *key):
        return self.table.get(tuple(key), 0)

    def weight(self, key, bottom=0):
        return self.table.get(tuple(key), bottom)

    def __len__(self):
        return len(self.table)

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.table == other.table

    __hash__ = None

    def __repr__(self):
        src = ", ".join(self.source_names)
        tgt = ", ".join(self.target_names)
        return f"Relation({self.name!r}: [{src}] -> [{tgt}], {len(self.table)} rows)"

    def sort_key(self, key: tuple) -> tuple[int, ...]:
        return tuple(s.index(e) for e, (_, s) in zip(key, self.variables))

    def rows(self) -> list[tuple[tuple, object]]:
        """Rows sorted by element order of every column."""
        return sorted(self.table.items(), key=lambda kv: self.sort_key(kv[0]))

    def is_bivalent(self) -> bool:
        return all(w == 1 for w in self.table.values())

    def renamed(self, mapping: Mapping[str, str], name: str | None = None) -> "Relation":
        src = [(mapping.get(n, n), s) for n, s in self.source]
        tgt = [(mapping.get(n, n), s) for n, s in self.target]
        return Relation(name or self.name, src, tgt, self.table)

    def reordered(self, source_names: Sequence[str], target_names: Sequence[str]) -> "Relation":
        """Same relation with variables permuted within each side."""
        if sorted(source_names) != sorted(self.source_names) or sorted(target_names) != sorted(self.target_names):
            raise BoundaryError(f"{self.name}: cannot reorder to {source_names} -> {target_names}")
        pos = {n: i for i, n in enumerate(self.names)}
        perm = [pos[n] for n in list(source_names) + list(target_names)]
        lookup = dict(self.variables)
        return Relation(
            self.name,
            [(n, lookup[n]) for n in source_names],
            [(n, lookup[n]) for n in target_names],
            {tuple(k[i] for i in perm): w for k, w in self.table.items()},
        )

    # constructors

    @classmethod
    def top(cls, spec: LogicSpec, name: str, source: Sequence[Var], target: Sequence[Var]) -> "Relation":
        vs = _check_vars(list(source) + list(target), name)
        return cls(name, source, target, {k: spec.top for k in itertools.product(*(s for _, s in vs))})

    @classmethod
    def identity(cls, spec: LogicSpec, source: Sequence[Var], target_names: Sequence[str], name: str = "1") -> "Relation":
        """Identity from ``source`` to a renamed copy of the same supports."""
        source = _check_vars(source, name)
        if len(target_names) != len(source):
            raise BoundaryError("identity needs one target name per source variable")
        target = [(t, s) for t, (_, s) in zip(target_names, source)]
        table = {k + k: spec.top for k in itertools.product(*(s for _, s in source))}
        return cls(name, source, target, table)

    @classmethod
    def graph(cls, spec: LogicSpec, name: str, source: Var, target: Var, mapping: Mapping) -> "Relation":
        """Bivalent graph of a function given as ``{x: f(x)}``."""
        return cls(name, [source], [target], {(x, y): spec.top for x, y in mapping.items()})


def element(name: str, variables: Sequence[Var], table) -> Relation:
    """A relation with empty source, i.e. a distribution over the product of ``variables``."""
    return Relation(name, [], variables, table)


def crisp_point(spec: LogicSpec, name: str, variables: Sequence[Var], point: Sequence) -> Relation:
    return element(name, variables, {tuple(point): spec.top})


def is_crisp_point(rel: Relation) -> bool:
    return not rel.source and len(rel.table) == 1 and next(iter(rel.table.values())) == 1


# Sparse semiring join machinery, shared with the diagram engine.

def natural_join(spec: LogicSpec, left_vars, left_table, right_vars, right_table):
    """Flavor-product join of two sparse tables on their common variable names.

    Output columns are ``left_vars`` followed by the right-only variables.  The
    result is keyed uniquely by (left row, right row), so no aggregation happens
    and the outcome does not depend on iteration order.
    """
    lpos = {n: i for i, (n, _) in enumerate(left_vars)}
    common = [(lpos[n], j) for j, (n, _) in enumerate(right_vars) if n in lpos]
    rest = [j for j, (n, _) in enumerate(right_vars) if n not in lpos]
    out_vars = tuple(left_vars) + tuple(right_vars[j] for j in rest)
    index: dict[tuple, list] = {}
    for key, w in right_table.items():
        index.setdefault(tuple(key[j] for _, j in common), []).append((tuple(key[j] for j in rest), w))
    out = {}
    for key, w in left_table.items():
        for tail, v in index.get(tuple(key[i] for i, _ in common), ()):
            p = spec.times(w, v)
            if p != 0:
                out[key + tail] = p
    return out_vars, out


def marginalize(spec: LogicSpec, variables, table, keep: Sequence[str]):
    """Flavor-sum out every variable not in ``keep``.

    Contributions to each kept tuple are folded in canonical order of the
    eliminated coordinates, so float results are reproducible.
    """
    pos = {n: i for i, (n, _) in enumerate(variables)}
    kept = [pos[n] for n in keep]
    dropped = [i for i in range(len(variables)) if i not in set(kept)]
    supports = [s for _, s in variables]
    parts = []
    for key, w in table.items():
        parts.append((
            tuple(key[i] for i in kept),
            tuple(supports[i].index(key[i]) for i in dropped),
            w,
        ))
    parts.sort(key=lambda t: t[1])
    out = {}
    for k, _, w in parts:
        out[k] = spec.plus(out[k], w) if k in out else w
    return tuple(variables[i] for i in kept), {k: w for k, w in out.items() if w != 0}


def compose_boundaries(f: Relation, g: Relation):
    """Boundaries of ``compose(f, g)``: (sources, targets, summed names).

    sources = src(f) + (src(g) \\ tgt(f)), targets = tgt(g) + (tgt(f) \\ src(g)).
    """
    fsrc, ftgt = f.source_names, f.target_names
    gsrc, gtgt = g.source_names, g.target_names
    summed = [n for n in ftgt if n in gsrc]
    src = list(fsrc) + [n for n in gsrc if n not in ftgt and n not in fsrc]
    tgt = list(gtgt) + [n for n in ftgt if n not in gsrc and n not in gtgt]
    return src, tgt, summed


def compose(spec: LogicSpec, f: Relation, g: Relation, name: str | None = None) -> Relation:
    """Compose ``f`` then ``g`` under the flavor of ``spec``.

    The weight of a result tuple is the flavor sum, over assignments of the
    variables that ``f`` outputs and ``g`` consumes, of the flavor product of
    the two weights.  Other variables with the same name are identified.
    """
    fv, gv = dict(f.variables), dict(g.variables)
    for n in set(fv) & set(gv):
        if fv[n] != gv[n]:
            raise CompositionError(
                f"cannot compose {f.name} with {g.name}: variable {n!r} is bound to {fv[n].name} and {gv[n].name}"
            )
    src, tgt, _ = compose_boundaries(f, g)
    clash = set(src) & set(tgt)
    if clash:
        raise CompositionError(
            f"cannot compose {f.name} with {g.name}: {sorted(clash)} would be both source and target of the result"
        )
    jv, jt = natural_join(spec, f.variables, f.table, g.variables, g.table)
    mv, mt = marginalize(spec, jv, jt, src + tgt)
    lookup = dict(mv)
    return Relation(
        name or f"{f.name};{g.name}",
        [(n, lookup[n]) for n in src],
        [(n, lookup[n]) for n in tgt],
        mt,
    )


def converse(f: Relation, name: str | None = None) -> Relation:
    k = len(f.source)
    return Relation(name or f"{f.name}°", f.target, f.source, {key[k:] + key[:k]: w for key, w in f.table.items()})


def _aligned(f: Relation, g: Relation) -> Relation:
    """``g`` reordered to ``f``'s variable order; raises if the boundaries differ."""
    if dict(f.source) != dict(g.source) or dict(f.target) != dict(g.target):
        raise BoundaryError(f"{f.name} and {g.name} do not share the same boundaries")
    if f.names == g.names:
        return g
    return g.reordered(f.source_names, f.target_names)


def leq(f: Relation, g: Relation) -> bool:
    """Pointwise order; absent tuples count as bottom."""
    g = _aligned(f, g)
    return all(w <= g.table.get(k, 0) for k, w in f.table.items())


def leq_witness(f: Relation, g: Relation):
    """First tuple (in canonical order) where ``f`` exceeds ``g``, or None."""
    g = _aligned(f, g)
    for k, w in f.rows():
        if w > g.table.get(k, 0):
            return k, w, g.table.get(k, 0)
    return None


def canonical_extension(f: Relation, extra: Sequence[Var], name: str | None = None) -> Relation:
    """Cylinder of ``f`` over ``extra`` target variables; weights ignore the new coordinates."""
    extra = _check_vars(extra, f.name)
    clash = set(f.names) & {n for n, _ in extra}
    if clash:
        raise BoundaryError(f"canonical extension of {f.name}: {sorted(clash)} already used")
    if not extra:
        return Relation(name or f.name, f.source, f.target, f.table)
    fill = list(itertools.product(*(s for _, s in extra)))
    table = {k + t: w for k, w in f.table.items() for t in fill}
    return Relation(name or f.name, f.source, f.target + extra, table)


# Omega-sets

@dataclass(frozen=True, eq=False)
class OmegaSet:
    """A finite support with an Omega-valued membership and similarity.

    ``membership`` defaults to top for missing elements; ``similarity`` is
    sparse (missing pairs are bottom).  With ``strict=True`` the similarity
    axioms and membership compatibility are enforced by :meth:`check`.
    """

    support: FiniteSet
    membership: Mapping = field(default_factory=dict)
    similarity: Mapping = field(default_factory=dict)
    strict: bool = False

    def __post_init__(self):
        for e in self.membership:
            if e not in self.support:
                raise SupportError(f"membership of {e!r}: not an element of {self.support.name}")
        for (x, y), w in self.similarity.items():
            if x not in self.support or y not in self.support:
                raise SupportError(f"similarity pair ({x!r}, {y!r}) not in {self.support.name}")
            if not 0 <= w <= 1:
                raise SupportError(f"similarity weight {w!r} outside [0, 1]")
        for w in self.membership.values():
            if not 0 <= w <= 1:
                raise SupportError(f"membership weight {w!r} outside [0, 1]")

    @classmethod
    def crisp(cls, spec: LogicSpec, support: FiniteSet) -> "OmegaSet":
        """(A, top, identity)."""
        return cls(support, {e: spec.top for e in support}, {(e, e): spec.top for e in support})

    @property
    def name(self) -> str:
        return self.support.name

    def member(self, x, top=1):
        return self.membership.get(x, top)

    def sim(self, x, y):
        return self.similarity.get((x, y), 0)

    def diagonal(self, x):
        return self.similarity.get((x, x), 0)

    def relation(self, source_name: str | None = None, target_name: str | None = None) -> Relation:
        """The similarity as a square relation between two differently named copies of the support."""
        s = source_name or self.support.name
        t = target_name or s + "'"
        return Relation(f"sim_{self.support.name}", [(s, self.support)], [(t, self.support)], self.similarity)

    def membership_element(self, spec: LogicSpec, name: str | None = None) -> Relation:
        var = name or self.support.name
        return element(f"memb_{self.support.name}", [(var, self.support)],
                       {(e,): self.member(e, spec.top) for e in self.support})

    def check(self, spec: LogicSpec) -> "SimilarityReport":
        """Similarity axioms plus membership compatibility; raises SupportError when strict and violated."""
        report = is_similarity(spec, self.relation())
        bad = compatibility_witness(spec, self)
        if bad is not None:
            report.failures["compatibility"] = bad
        if self.strict and not report.valid:
            raise SupportError(f"Omega-set {self.name} violates {', '.join(report.failures)}: {report.failures}")
        return report

    def __eq__(self, other):
        if not isinstance(other, OmegaSet):
            return NotImplemented
        top = 1
        return (
            self.support == other.support
            and all(self.member(e, top) == other.member(e, top) for e in self.support)
            and {k: v for k, v in self.similarity.items() if v != 0}
            == {k: v for k, v in other.similarity.items() if v != 0}
        )

    __hash__ = None


def compatibility_witness(spec: LogicSpec, omega: OmegaSet):
    """First y with  sum_x a(x) x alpha(x, y) > a(y), as ``(y, lhs, a(y))``; None if compatible."""
    for y in omega.support:
        lhs = spec.flavor_sum(spec.times(omega.member(x, spec.top), omega.sim(x, y)) for x in omega.support)
        if lhs > omega.member(y, spec.top):
            return y, lhs, omega.member(y, spec.top)
    return None


@dataclass
class SimilarityReport:
    reflexive: bool
    symmetric: bool
    transitive: bool
    failures: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.failures


def _square_support(alpha: Relation) -> FiniteSet:
    if len(alpha.source) != 1 or len(alpha.target) != 1 or alpha.source[0][1] != alpha.target[0][1]:
        raise BoundaryError(f"{alpha.name} is not a square relation on a single set")
    return alpha.source[0][1]


def is_similarity(spec: LogicSpec, alpha: Relation) -> SimilarityReport:
    """Check reflexivity, symmetry and alpha;alpha <= alpha, reporting a witness for each failure."""
    support = _square_support(alpha)
    (s, _), (t, _) = alpha.source[0], alpha.target[0]
    failures = {}
    reflexive = True
    for x in support:
        if alpha(x, x) != 1:
            reflexive = False
            failures["reflexivity"] = (x, x, alpha(x, x))
            break
    symmetric = True
    for x, y in itertools.product(support, repeat=2):
        if alpha(x, y) != alpha(y, x):
            symmetric = False
            failures["symmetry"] = (x, y, alpha(x, y), alpha(y, x))
            break
    # alpha;alpha over renamed copies s -> m -> t
    mid = _fresh(s + "~", {s, t})
    twice = compose(spec, alpha.renamed({t: mid}), alpha.renamed({s: mid}))
    bad = leq_witness(twice, alpha)
    transitive = bad is None
    if not transitive:
        failures["transitivity"] = bad
    return SimilarityReport(reflexive, symmetric, transitive, failures)


def _fresh(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def _primed(names: Sequence[str], taken) -> dict[str, str]:
    taken = set(taken)
    out = {}
    for n in names:
        p = _fresh(n + "'", taken)
        taken.add(p)
        out[n] = p
    return out


def is_map(spec: LogicSpec, f: Relation) -> tuple[bool, bool]:
    """(entire, simple): identity <= f;f° on the source side, f°;f <= identity on the target side."""
    ps = _primed(f.source_names, f.names)
    pt = _primed(f.target_names, f.names)
    back = converse(f).renamed(ps)            # target -> primed source
    there = compose(spec, f, back)            # source -> primed source
    ident_src = Relation.identity(spec, f.source, [ps[n] for n in f.source_names])
    entire = leq(ident_src, there)
    fwd = f.renamed(pt)                        # source -> primed target
    cotwice = compose(spec, converse(f), fwd)  # target -> primed target
    ident_tgt = Relation.identity(spec, f.target, [pt[n] for n in f.target_names])
    simple = leq(cotwice, ident_tgt)
    return entire, simple


class ProductSimilarity:
    """Componentwise flavor product of per-coordinate similarities, evaluated lazily."""

    def __init__(self, spec: LogicSpec, omegas: Sequence[OmegaSet]):
        self.spec = spec
        self.omegas = tuple(omegas)

    def __call__(self, x: tuple, y: tuple):
        acc = self.spec.top
        for o, a, b in zip(self.omegas, x, y):
            w = o.sim(a, b)
            if w == 0:
                return self.spec.bottom
            acc = self.spec.times(acc, w)
        return acc


def _relation_similarity(alpha: Relation, width: int) -> Callable:
    if len(alpha.source) != width or len(alpha.target) != width:
        raise BoundaryError(f"{alpha.name} does not match element arity {width}")
    return lambda x, y: alpha.table.get(tuple(x) + tuple(y), 0)


def directed_similarity(spec: LogicSpec, a: Mapping, b: Mapping, sim: Callable, order: Callable):
    """Scalar of a ; sim ; b°, evaluated as two successive compositions.

    ``a`` and ``b`` are sparse element tables; bottom entries never contribute.
    Inner sums run in canonical order (``order`` maps a tuple to its sort key).
    """
    a_rows = sorted(a.items(), key=lambda kv: order(kv[0]))
    total = spec.bottom
    for y, wb in sorted(b.items(), key=lambda kv: order(kv[0])):
        inner = spec.flavor_sum(spec.times(wa, sim(x, y)) for x, wa in a_rows)
        total = spec.plus(total, spec.times(inner, wb))
    return total


def symmetric_similarity(spec: LogicSpec, a: Mapping, b: Mapping, sim: Callable, order: Callable):
    return max(directed_similarity(spec, a, b, sim, order), directed_similarity(spec, b, a, sim, order))


def element_similarity(spec: LogicSpec, a: Relation, b: Relation, alpha) -> object:
    """Symmetrized similarity degree of two elements under ``alpha``.

    ``alpha`` is either a square Relation whose sources and targets match the
    elements' variables positionally, or a callable ``sim(x, y)`` on tuples
    (e.g. :class:`ProductSimilarity`).
    """
    if a.source or b.source:
        raise BoundaryError("element_similarity expects elements (relations with empty source)")
    if [s for _, s in a.target] != [s for _, s in b.target]:
        raise BoundaryError(f"{a.name} and {b.name} range over different supports")
    if isinstance(alpha, Relation):
        if [s for _, s in alpha.source] != [s for _, s in a.target] or [s for _, s in alpha.target] != [s for _, s in a.target]:
            raise BoundaryError(f"similarity {alpha.name} is not over the support of {a.name}")
        sim = _relation_similarity(alpha, len(a.target))
    else:
        sim = alpha
    return symmetric_similarity(spec, a.table, b.table, sim, a.sort_key)


def product_aggregate(spec: LogicSpec, sets: Sequence[OmegaSet], name: str | None = None) -> OmegaSet:
    """Cartesian product of Omega-sets; memberships and similarities multiply componentwise."""
    if not sets:
        raise ValueError("product_aggregate needs at least one Omega-set")
    support = FiniteSet(name or "x".join(o.name for o in sets), itertools.product(*(o.support for o in sets)))
    memb = {p: spec.flavor_prod(o.member(e, spec.top) for o, e in zip(sets, p)) for p in support}
    sim = ProductSimilarity(spec, sets)
    similarity = {}
    for p in support:
        for q in support:
            w = sim(p, q)
            if w != 0:
                similarity[p, q] = w
    return OmegaSet(support, memb, similarity)


@dataclass
class BimoduleReport:
    membership: bool
    source_absorbing: bool
    target_absorbing: bool
    failures: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.failures


def _as_list(x) -> list[OmegaSet]:
    return list(x) if isinstance(x, (list, tuple)) else [x]


def is_bimodule(spec: LogicSpec, f: Relation, src, tgt) -> BimoduleReport:
    """Check  f∘a <= b,  alpha;f <= f  and  f;beta <= f  with witnesses.

    ``src`` and ``tgt`` are an OmegaSet per source/target variable of ``f``
    (a single OmegaSet is accepted for one-variable sides).
    """
    srcs, tgts = _as_list(src), _as_list(tgt)
    if [o.support for o in srcs] != [s for _, s in f.source] or [o.support for o in tgts] != [s for _, s in f.target]:
        raise BoundaryError(f"{f.name}: Omega-sets do not match its boundary supports")
    xs = list(itertools.product(*(o.support for o in srcs)))
    ys = list(itertools.product(*(o.support for o in tgts)))
    alpha, beta = ProductSimilarity(spec, srcs), ProductSimilarity(spec, tgts)

    def a(x):
        return spec.flavor_prod(o.member(e, spec.top) for o, e in zip(srcs, x))

    def b(y):
        return spec.flavor_prod(o.member(e, spec.top) for o, e in zip(tgts, y))

    def fw(x, y):
        return f.table.get(x + y, 0)

    failures = {}
    for y in ys:
        lhs = spec.flavor_sum(spec.times(a(x), fw(x, y)) for x in xs)
        if lhs > b(y):
            failures["membership"] = (y, lhs, b(y))
            break
    for x, y in itertools.product(xs, ys):
        lhs = spec.flavor_sum(spec.times(alpha(x, x2), fw(x2, y)) for x2 in xs)
        if lhs > fw(x, y):
            failures["source_absorbing"] = (x + y, lhs, fw(x, y))
            break
    for x, y in itertools.product(xs, ys):
        lhs = spec.flavor_sum(spec.times(fw(x, y2), beta(y2, y)) for y2 in ys)
        if lhs > fw(x, y):
            failures["target_absorbing"] = (x + y, lhs, fw(x, y))
            break
    return BimoduleReport(
        "membership" not in failures,
        "source_absorbing" not in failures,
        "target_absorbing" not in failures,
        failures,
    )
