"""Multi-diagrams over finite Omega-sets: weighted limits, commutativity and colimits.

The weighted limit of a diagram is a table over the product of all vertex
supports.  Each full tuple weighs the flavor product of every edge relation
(canonically extended to all vertices) and of the diagonal self-similarity
of each vertex.  It is computed by successive sparse joins in edge order.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    FiniteSet,
    OmegaSet,
    ProductSimilarity,
    Relation,
    element,
    natural_join,
    symmetric_similarity,
)
from .errors import BoundaryError, DiagramError
from .lattice import LogicSpec


@dataclass(frozen=True, eq=False)
class MultiDiagram:
    """Named vertices bound to Omega-sets, edges bound to relations, optional sources.

    Edge variables are vertex names; a relation plugs into the diagram
    through the names of its variables.
    """

    vertices: tuple
    edges: tuple = ()
    sources: tuple = ()
    name: str = "D"

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple((n, o) for n, o in self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "sources", tuple(self.sources))
        names = [n for n, _ in self.vertices]
        if len(set(names)) != len(names):
            raise DiagramError(f"diagram {self.name}: duplicate vertex names {names}")
        lookup = dict(self.vertices)
        for rel in self.edges:
            for var, support in rel.variables:
                if var not in lookup:
                    raise DiagramError(f"diagram {self.name}: edge {rel.name} uses undeclared vertex {var!r}")
                if lookup[var].support != support:
                    raise DiagramError(
                        f"diagram {self.name}: edge {rel.name} binds {var!r} to {support.name}, "
                        f"vertex has support {lookup[var].support.name}"
                    )
        for s in self.sources:
            if s not in lookup:
                raise DiagramError(f"diagram {self.name}: source {s!r} is not a vertex")
        cyc = self.source_cycle()
        if cyc is not None:
            raise DiagramError(f"diagram {self.name}: cycle through source vertex {cyc[0]!r}: {' -> '.join(cyc)}")

    @property
    def vertex_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.vertices)

    @property
    def variables(self) -> tuple:
        return tuple((n, o.support) for n, o in self.vertices)

    def omega(self, name: str) -> OmegaSet:
        return dict(self.vertices)[name]

    def successors(self) -> dict[str, set[str]]:
        succ: dict[str, set[str]] = {n: set() for n in self.vertex_names}
        for rel in self.edges:
            for s in rel.source_names:
                succ[s].update(rel.target_names)
        return succ

    def source_cycle(self):
        """A directed cycle through some source vertex, as a vertex path, or None."""
        succ = self.successors()
        for start in self.sources:
            stack = [(v, [start, v]) for v in sorted(succ[start])]
            seen = set()
            while stack:
                v, path = stack.pop()
                if v == start:
                    return path
                if v in seen:
                    continue
                seen.add(v)
                stack.extend((w, path + [w]) for w in sorted(succ[v]))
        return None


def _diagonal_options(spec: LogicSpec, omega: OmegaSet):
    return [(e, omega.diagonal(e)) for e in omega.support if omega.diagonal(e) != 0]


def _chunks(items, n):
    k = max(1, -(-len(items) // n))
    return [items[i:i + k] for i in range(0, len(items), k)]


def _parallel_join(spec, left_vars, left_table, right_vars, right_table, workers):
    if workers <= 1 or len(left_table) < 2:
        return natural_join(spec, left_vars, left_table, right_vars, right_table)
    parts = _chunks(list(left_table.items()), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda p: natural_join(spec, left_vars, dict(p), right_vars, right_table), parts))
    out = {}
    out_vars = results[0][0]
    for _, t in results:  # keys are disjoint across chunks
        out.update(t)
    return out_vars, out


def weighted_limit(spec: LogicSpec, D: MultiDiagram, workers: int = 1) -> Relation:
    """Tabulate the weighted limit of ``D`` as an element over all vertices.

    Edges are joined in declaration order; vertices no edge touches are added
    as cylinders; finally each tuple is multiplied by the vertex diagonal
    factor.  ``workers`` splits each join across threads without changing
    the result.
    """
    cur_vars: tuple = ()
    cur = {(): spec.top}
    for rel in D.edges:
        cur_vars, cur = _parallel_join(spec, cur_vars, cur, rel.variables, rel.table, workers)
        if not cur:
            break
    present = {n for n, _ in cur_vars}
    for n, omega in D.vertices:
        if n not in present:
            opts = {(e,): w for e, w in _diagonal_options(spec, omega)}
            cur_vars, cur = natural_join(spec, cur_vars, cur, ((n, omega.support),), opts)
        else:
            # multiply in the diagonal factor of an edge-covered vertex
            i = [m for m, _ in cur_vars].index(n)
            nxt = {}
            for key, w in cur.items():
                p = spec.times(w, omega.diagonal(key[i]))
                if p != 0:
                    nxt[key] = p
            cur = nxt
    pos = {m: i for i, (m, _) in enumerate(cur_vars)}
    perm = [pos[n] for n in D.vertex_names]
    table = {tuple(k[i] for i in perm): w for k, w in cur.items()}
    return element(f"Lim {D.name}", D.variables, table)


def dense_limit(spec: LogicSpec, D: MultiDiagram) -> Relation:
    """Reference tabulation that enumerates the whole vertex product."""
    names = D.vertex_names
    pos = {n: i for i, n in enumerate(names)}
    table = {}
    for x in itertools.product(*(o.support for _, o in D.vertices)):
        w = spec.top
        for rel in D.edges:
            w = spec.times(w, rel.table.get(tuple(x[pos[n]] for n in rel.names), spec.bottom))
        for (n, o), e in zip(D.vertices, x):
            w = spec.times(w, o.diagonal(e))
        if w != 0:
            table[x] = w
    return element(f"Lim {D.name}", D.variables, table)


def limit_similarity(spec: LogicSpec, x: Relation, D: MultiDiagram, lim: Relation | None = None):
    """Symmetrized similarity between element ``x`` and the limit element of ``D``."""
    if x.source:
        raise BoundaryError(f"{x.name} is not an element")
    if dict(x.target) != dict(D.variables):
        raise BoundaryError(f"{x.name} does not range over the vertices of {D.name}")
    if x.target_names != D.vertex_names:
        x = x.reordered((), D.vertex_names)
    lim = lim if lim is not None else weighted_limit(spec, D)
    sim = ProductSimilarity(spec, [o for _, o in D.vertices])
    return symmetric_similarity(spec, x.table, lim.table, sim, lim.sort_key)


def quasi_limit_degree(spec: LogicSpec, x: Relation, D: MultiDiagram):
    """Degree to which ``x`` is a quasi-limit of ``D``."""
    return limit_similarity(spec, x, D)


def cone_element(spec: LogicSpec, R: OmegaSet, legs: Sequence[Relation], D: MultiDiagram) -> Relation:
    """The element F_top of a cone: weight(a) = sum over r of the product of leg weights."""
    by_vertex = {}
    for leg in legs:
        if len(leg.source) != 1 or len(leg.target) != 1:
            raise BoundaryError(f"leg {leg.name} must map one variable to one vertex")
        if leg.source[0][1] != R.support:
            raise BoundaryError(f"leg {leg.name} does not start at the cone vertex {R.name}")
        v = leg.target_names[0]
        if v not in D.vertex_names or D.omega(v).support != leg.target[0][1]:
            raise BoundaryError(f"leg {leg.name} does not land on a vertex of {D.name}")
        if v in by_vertex:
            raise BoundaryError(f"two legs land on vertex {v!r}")
        by_vertex[v] = leg
    if set(by_vertex) != set(D.vertex_names):
        missing = sorted(set(D.vertex_names) - set(by_vertex))
        raise BoundaryError(f"cone has no leg for vertices {missing}")
    ordered = [by_vertex[v] for v in D.vertex_names]
    acc: dict[tuple, object] = {}
    for r in R.support:
        options = []
        for leg in ordered:
            opts = [(a, leg.table[(r, a)]) for a in leg.target[0][1] if (r, a) in leg.table]
            options.append(opts)
        for combo in itertools.product(*options):
            key = tuple(a for a, _ in combo)
            w = spec.flavor_prod(w for _, w in combo)
            acc[key] = spec.plus(acc[key], w) if key in acc else w
    return element(f"F({R.name})", D.variables, acc)


def lambda_limit_degree(spec: LogicSpec, R: OmegaSet, legs: Sequence[Relation], D: MultiDiagram):
    return limit_similarity(spec, cone_element(spec, R, legs, D), D)


def lambda_limit_check(spec: LogicSpec, cone, D: MultiDiagram, lam) -> bool:
    """True when the cone ``(R, legs)`` is a lambda-limit of ``D``, i.e. its degree is at least ``lam``."""
    R, legs = cone
    return lambda_limit_degree(spec, R, legs, D) >= lam


@dataclass
class CommutativityResult:
    degree: object
    sources: tuple[str, ...]
    rows: list = field(default_factory=list)  # (source tuple, lhs, rhs, biresiduum)

    @property
    def commutative(self) -> bool:
        return self.degree == 1


def commutativity_degree(spec: LogicSpec, D: MultiDiagram, workers: int = 1,
                         lim: Relation | None = None) -> CommutativityResult:
    """Meet over source tuples of  (sum of limit weights) <-> (sum of diagonal factors).

    Both sums range over completions of the source tuple to all vertices.
    """
    if not D.sources:
        raise DiagramError(f"diagram {D.name} declares no source vertices")
    lim = lim if lim is not None else weighted_limit(spec, D, workers)
    names = D.vertex_names
    src = [n for n in names if n in D.sources]
    rest = [n for n in names if n not in D.sources]
    spos = [names.index(n) for n in src]
    rpos = [names.index(n) for n in rest]
    supports = [o.support for _, o in D.vertices]

    contributions: dict[tuple, list] = {}
    for key, w in lim.table.items():
        s = tuple(key[i] for i in spos)
        order = tuple(supports[i].index(key[i]) for i in rpos)
        contributions.setdefault(s, []).append((order, w))

    # the diagonal factor is a product over vertices, so its sum over
    # completions factorizes when the flavor distributes
    omegas = dict(D.vertices)
    if spec.is_semiring:
        rest_sum = spec.flavor_prod(
            spec.flavor_sum(omegas[n].diagonal(e) for e in omegas[n].support) for n in rest
        )
    rows = []
    degree = spec.top
    for s in itertools.product(*(omegas[n].support for n in src)):
        lhs = spec.flavor_sum(w for _, w in sorted(contributions.get(s, []), key=lambda t: t[0]))
        head = spec.flavor_prod(omegas[n].diagonal(e) for n, e in zip(src, s))
        if spec.is_semiring:
            rhs = spec.times(head, rest_sum)
        else:
            rhs = spec.flavor_sum(
                spec.times(head, spec.flavor_prod(omegas[n].diagonal(e) for n, e in zip(rest, c)))
                for c in itertools.product(*(omegas[n].support for n in rest))
            )
        b = spec.biresiduum(lhs, rhs)
        degree = min(degree, b)
        rows.append((s, lhs, rhs, b))
    return CommutativityResult(degree, tuple(src), rows)


# Colimits of crisp map diagrams

class UnionFind:
    def __init__(self, items=()):
        self.parent = {}
        self.rank = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1

    def classes(self, order) -> list[list]:
        groups: dict = {}
        for x in order:
            groups.setdefault(self.find(x), []).append(x)
        return list(groups.values())


def tagged_union(D: MultiDiagram) -> FiniteSet:
    """Disjoint union of the vertex supports; elements are ``(vertex, element)`` pairs."""
    return FiniteSet("+".join(D.vertex_names) or "0", [(n, e) for n, o in D.vertices for e in o.support])


def _map_of(rel: Relation) -> dict:
    if len(rel.source) != 1 or len(rel.target) != 1:
        raise DiagramError(f"edge {rel.name} is not a single-source single-target relation")
    if not rel.is_bivalent():
        raise DiagramError(f"edge {rel.name} is not bivalent")
    f = {}
    for x, y in rel.table:
        if x in f:
            raise DiagramError(f"edge {rel.name} relates {x!r} to both {f[x]!r} and {y!r}")
        f[x] = y
    missing = [x for x in rel.source[0][1] if x not in f]
    if missing:
        raise DiagramError(f"edge {rel.name} is not total: no image for {missing[0]!r}")
    return f


def colimit_classes(D: MultiDiagram) -> list[list]:
    """Equivalence classes of the colimit on the tagged union, in canonical order."""
    U = tagged_union(D)
    uf = UnionFind(U)
    for rel in D.edges:
        f = _map_of(rel)
        s, t = rel.source_names[0], rel.target_names[0]
        for x, y in f.items():
            uf.union((s, x), (t, y))
    return uf.classes(U)


def colimit_equivalence(spec: LogicSpec, D: MultiDiagram, name: str = "chi") -> Relation:
    """Smallest equivalence on the tagged union relating each ``x`` to ``f(x)`` along every edge."""
    U = tagged_union(D)
    table = {}
    for cls in colimit_classes(D):
        for x in cls:
            for y in cls:
                table[x, y] = spec.top
    return Relation(name, [("U", U)], [("U'", U)], table)


class _TaggedSimilarity:
    def __init__(self, spec: LogicSpec, D: MultiDiagram):
        self.spec = spec
        self.omegas = dict(D.vertices)

    def __call__(self, x, y):
        (vx, ex), (vy, ey) = x, y
        if vx != vy:
            return self.spec.bottom
        return self.omegas[vx].sim(ex, ey)


def colimit_similarity_degree(spec: LogicSpec, alpha: Relation, D: MultiDiagram):
    """Similarity between ``alpha`` and the colimit equivalence, both read as elements of U x U.

    The similarity on U relates elements of the same vertex by that vertex's
    similarity and is bottom across vertices; on U x U it is the flavor
    product of the two coordinates.
    """
    U = tagged_union(D)
    if len(alpha.source) != 1 or len(alpha.target) != 1 or alpha.source[0][1] != U or alpha.target[0][1] != U:
        raise BoundaryError(f"{alpha.name} is not a square relation on the tagged union of {D.name}")
    chi = colimit_equivalence(spec, D)
    base = _TaggedSimilarity(spec, D)

    def sim(p, q):
        w = base(p[0], q[0])
        if w == 0:
            return spec.bottom
        return spec.times(w, base(p[1], q[1]))

    return symmetric_similarity(spec, alpha.table, chi.table, sim, chi.sort_key)
