import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from omegarel import (
    FiniteSet, LogicSpec, OmegaSet, Relation, canonical_extension, compose, converse, crisp_point, element,
    element_similarity, is_bimodule, is_map, is_similarity, leq, product_aggregate,
)
from omegarel.core import ProductSimilarity, compose_boundaries, is_crisp_point
from omegarel.errors import BoundaryError, CompositionError, SupportError

import oracles

Q = Fraction


def test_relation_drops_bottom_and_typechecks(bit):
    r = Relation("r", [("X", bit)], [("Y", bit)], {("0", "1"): Q(0), ("1", "1"): Q(1, 3)})
    assert r.table == {("1", "1"): Q(1, 3)}
    with pytest.raises(SupportError):
        Relation("r", [("X", bit)], [("Y", bit)], {("2", "0"): 1})
    with pytest.raises(SupportError):
        Relation("r", [("X", bit)], [("Y", bit)], {("0", "0"): Q(3, 2)})
    with pytest.raises(BoundaryError):
        Relation("r", [("X", bit)], [("X", bit)])


def test_compose_example1_f_then_h(product, ex1):
    fh = compose(product, ex1["f"], ex1["h"])
    assert fh.source_names == ("A", "B")
    assert fh.target_names == ("E",)
    src, tgt, dense = oracles.compose_dense(product, ex1["f"], ex1["h"])
    assert (src, tgt) == (["A", "B"], ["E"])
    assert fh.table == dense
    # f(0,0,0)*h(0,0,1) v f(0,0,1)*h(0,1,1) = 1*1 v 1*0
    assert fh("0", "0", "1") == 1


def test_compose_crisp_maps_is_function_composition(product):
    A, B, C = FiniteSet("A", "abc"), FiniteSet("B", "xy"), FiniteSet("C", "pqr")
    u = {"a": "x", "b": "y", "c": "x"}
    v = {"x": "r", "y": "p"}
    f = Relation.graph(product, "u", ("A", A), ("B", B), u)
    g = Relation.graph(product, "v", ("B", B), ("C", C), v)
    fg = compose(product, f, g)
    assert fg.table == {(a, v[u[a]]): 1 for a in "abc"}


def test_compose_disjoint_boundaries_is_product(product):
    X, Y = FiniteSet("X", "01"), FiniteSet("Y", "ab")
    f = Relation("f", [("P", X)], [("Q", X)], {("0", "1"): Q(1, 2), ("1", "1"): Q(1, 3)})
    g = Relation("g", [("R", Y)], [("S", Y)], {("a", "b"): Q(1, 5)})
    fg = compose(product, f, g)
    assert fg.source_names == ("P", "R") and fg.target_names == ("S", "Q")
    assert fg.table == {("0", "a", "b", "1"): Q(1, 10), ("1", "a", "b", "1"): Q(1, 15)}


def test_compose_binding_mismatch(product, bit):
    other = FiniteSet("Tri", "012")
    f = Relation("f", [("X", bit)], [("Y", bit)])
    g = Relation("g", [("Y", other)], [("Z", bit)])
    with pytest.raises(CompositionError):
        compose(product, f, g)


def test_compose_source_target_clash(product, bit):
    f = Relation("f", [("X", bit)], [("Y", bit)])
    g = Relation("g", [("Y", bit)], [("X", bit)])
    with pytest.raises(CompositionError):
        compose(product, f, g)


def test_converse(product, bit, ex1):
    ident = Relation.identity(product, [("A", bit)], ["A'"])
    assert converse(ident).table == ident.table
    hc = converse(ex1["h"])
    assert hc.source_names == ("E",) and hc.target_names == ("A", "C")
    assert hc.table == {(e, a, c): w for (a, c, e), w in ex1["h"].table.items()}
    assert converse(converse(ex1["g"])) == ex1["g"]


def test_leq(product, ex1):
    f = ex1["f"]
    assert leq(f, f)
    assert leq(f, Relation.top(product, "top", f.source, f.target))
    lowered = dict(f.table)
    lowered[("1", "0", "0")] = Q(1, 2)
    assert not leq(f, Relation("f2", f.source, f.target, lowered))
    with pytest.raises(BoundaryError):
        leq(f, ex1["h"])


def test_leq_aligns_variable_order(bit):
    f = Relation("f", [("X", bit), ("Y", bit)], [], {("0", "1"): Q(1, 2)})
    g = Relation("g", [("Y", bit), ("X", bit)], [], {("1", "0"): Q(1, 2)})
    assert leq(f, g) and leq(g, f)


def test_canonical_extension(product, bit, ex1):
    h = ex1["h"]
    assert canonical_extension(h, []) == h
    ext = canonical_extension(h, [("B", bit), ("D", bit)])
    for b, d in itertools.product("01", repeat=2):
        assert ext("1", "0", "1", b, d) == Q(1, 2)
    pt = crisp_point(product, "p", [("A", bit)], ["1"])
    cyl = canonical_extension(pt, [("B", bit)])
    assert cyl.table == {("1", "0"): 1, ("1", "1"): 1}
    with pytest.raises(BoundaryError):
        canonical_extension(h, [("A", bit)])


def test_is_similarity_examples(product, bit):
    ident = Relation.identity(product, [("A", bit)], ["A'"])
    assert is_similarity(product, ident).valid
    top = Relation.top(product, "top", [("A", bit)], [("A'", bit)])
    assert is_similarity(product, top).valid
    bad = Relation("a", [("A", bit)], [("A'", bit)], {("0", "0"): Q(9, 10), ("1", "1"): 1})
    rep = is_similarity(product, bad)
    assert not rep.reflexive and rep.failures["reflexivity"][:2] == ("0", "0")
    with pytest.raises(BoundaryError):
        is_similarity(product, Relation("x", [("A", bit)], [("B", FiniteSet("T", "012"))]))


def test_is_map(product, ex1):
    A = FiniteSet("A", "abcd")
    B = FiniteSet("B", "xy")
    ident = Relation.identity(product, [("A", A)], ["A'"])
    assert is_map(product, ident) == (True, True)
    boolean = LogicSpec("boolean")
    surj = Relation.graph(boolean, "s", ("A", A), ("B", B), {"a": "x", "b": "x", "c": "y", "d": "y"})
    assert is_map(boolean, surj) == (True, True)
    # frozen from an exhaustive evaluation of both composites over {0,1}^3
    assert is_map(product, ex1["f"]) == (False, False)


def test_is_map_detects_partial_and_multivalued(product):
    A, B = FiniteSet("A", "ab"), FiniteSet("B", "xy")
    partial = Relation("p", [("A", A)], [("B", B)], {("a", "x"): 1})
    assert is_map(product, partial) == (False, True)
    multi = Relation("m", [("A", A)], [("B", B)], {("a", "x"): 1, ("a", "y"): 1, ("b", "x"): 1})
    assert is_map(product, multi) == (True, False)


def test_is_bimodule(product, bit, ex1):
    A, B = FiniteSet("A", "abc"), FiniteSet("B", "xy")
    fn = Relation.graph(product, "u", ("A", A), ("B", B), {"a": "x", "b": "y", "c": "x"})
    assert is_bimodule(product, fn, OmegaSet.crisp(product, A), OmegaSet.crisp(product, B)).valid

    top = Relation.top(product, "t", [("A", A)], [("B", B)])
    b = OmegaSet(B, {"x": Q(1, 2)}, {("x", "x"): 1, ("y", "y"): 1})
    rep = is_bimodule(product, top, OmegaSet.crisp(product, A), b)
    assert not rep.membership and rep.failures["membership"][0] == ("x",)

    om = ex1["omega"]
    assert is_bimodule(product, ex1["g"], [om, om], [om, om]).valid


def test_is_bimodule_oracle_random(product):
    rng = random.Random(7)
    A, B = FiniteSet("A", "abc"), FiniteSet("B", "xy")
    for _ in range(60):
        f = Relation("f", [("A", A)], [("B", B)],
                     {(a, b): oracles.rand_weight(rng) for a in A for b in B})
        sa = {(x, y): oracles.rand_weight(rng, p_zero=0.5) for x in A for y in A}
        sb = {(x, y): oracles.rand_weight(rng, p_zero=0.5) for x in B for y in B}
        ma = {x: oracles.rand_weight(rng, p_zero=0) for x in A}
        mb = {y: oracles.rand_weight(rng, p_zero=0) for y in B}
        rep = is_bimodule(product, f, OmegaSet(A, ma, sa), OmegaSet(B, mb, sb))
        fw = lambda x, y: f.table.get((x, y), 0)
        memb = all(max(product.times(ma[x], fw(x, y)) for x in A) <= mb[y] for y in B)
        left = all(max(product.times(sa.get((x, x2), 0), fw(x2, y)) for x2 in A) <= fw(x, y) for x in A for y in B)
        right = all(max(product.times(fw(x, y2), sb.get((y2, y), 0)) for y2 in B) <= fw(x, y) for x in A for y in B)
        assert (rep.membership, rep.source_absorbing, rep.target_absorbing) == (memb, left, right)


def test_element_similarity(product, bit):
    X = FiniteSet("X", ["x", "y", "z"])
    var = [("X", X)]
    ident = Relation.identity(product, var, ["X'"])
    px, py = crisp_point(product, "px", var, ["x"]), crisp_point(product, "py", var, ["y"])
    assert element_similarity(product, px, px, ident) == 1
    assert element_similarity(product, px, py, ident) == 0
    alpha = Relation("alpha", var, [("X'", X)],
                     {("x", "x"): 1, ("y", "y"): 1, ("z", "z"): 1, ("x", "y"): Q("0.6"), ("y", "x"): Q("0.6")})
    assert element_similarity(product, px, py, alpha) == Q(3, 5)


def test_element_similarity_matches_dense_oracle(product):
    rng = random.Random(11)
    X = FiniteSet("X", "abcd")
    var = [("X", X)]
    pts = [(e,) for e in X]
    for _ in range(100):
        a = element("a", var, {p: oracles.rand_weight(rng) for p in pts})
        b = element("b", var, {p: oracles.rand_weight(rng) for p in pts})
        sim = {(x, y): oracles.rand_weight(rng) for x in X for y in X}
        alpha = Relation("s", var, [("X'", X)], sim)
        got = element_similarity(product, a, b, alpha)
        want = oracles.sym_similarity_dense(product, a.table, b.table,
                                            lambda p, q: sim.get((p[0], q[0]), 0), pts)
        assert got == want
        assert got == element_similarity(product, b, a, alpha)


def test_product_aggregate(product, bit):
    A, B = FiniteSet("A", "01"), FiniteSet("B", "ab")
    agg = product_aggregate(product, [OmegaSet.crisp(product, A), OmegaSet.crisp(product, B)])
    assert agg == OmegaSet.crisp(product, agg.support)
    unit = OmegaSet.crisp(product, FiniteSet("T", ["*"]))
    xa = OmegaSet(A, {"1": Q(1, 3)}, {("0", "0"): 1, ("1", "1"): 1, ("0", "1"): Q(1, 2), ("1", "0"): Q(1, 2)})
    ux = product_aggregate(product, [unit, xa])
    assert [ux.member(p) for p in ux.support] == [xa.member(e) for e in A]
    assert all(ux.sim(p, q) == xa.sim(p[1], q[1]) for p in ux.support for q in ux.support)
    m1 = OmegaSet(A, {"0": 1, "1": Q(1, 2)}, {})
    m2 = OmegaSet(B, {"a": Q(1, 2), "b": 1}, {})
    agg = product_aggregate(product, [m1, m2])
    assert [agg.member(p) for p in agg.support] == [Q(1, 2), 1, Q(1, 4), Q(1, 2)]


def test_omega_set_strict(product, bit):
    bad = OmegaSet(bit, {}, {("0", "0"): 1}, strict=True)
    with pytest.raises(SupportError):
        bad.check(product)
    incompatible = OmegaSet(bit, {"0": 1, "1": Q(1, 4)},
                            {("0", "0"): 1, ("1", "1"): 1, ("0", "1"): Q(1, 2), ("1", "0"): Q(1, 2)})
    rep = incompatible.check(product)
    assert rep.failures["compatibility"][0] == "1"
    assert OmegaSet.crisp(product, bit).check(product).valid


# properties ----------------------------------------------------------------

def _random_relation(rng, name, src, tgt, bivalent=False):
    table = {}
    for key in itertools.product(*(s for _, s in src + tgt)):
        w = Q(rng.randint(0, 1)) if bivalent else oracles.rand_weight(rng)
        table[key] = w
    return Relation(name, src, tgt, table)


def test_compose_associative_random(product):
    rng = random.Random(3)
    S = FiniteSet("S", "012")
    for _ in range(40):
        f = _random_relation(rng, "f", [("X", S)], [("Y", S), ("P", S)])
        g = _random_relation(rng, "g", [("Y", S)], [("Z", S)])
        h = _random_relation(rng, "h", [("Z", S), ("P", S)], [("W", S)])
        left = compose(product, compose(product, f, g), h)
        right = compose(product, f, compose(product, g, h))
        assert leq(left, right) and leq(right, left)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_boundary_law_random(data):
    pool = ["a", "b", "c", "d", "e", "f"]
    S = FiniteSet("S", "01")
    fs = data.draw(st.lists(st.sampled_from(pool), unique=True, max_size=3))
    ft = data.draw(st.lists(st.sampled_from([p for p in pool if p not in fs]), unique=True, max_size=3))
    gs = data.draw(st.lists(st.sampled_from(pool), unique=True, max_size=3))
    gt = data.draw(st.lists(st.sampled_from([p for p in pool if p not in gs]), unique=True, max_size=3))
    f = Relation("f", [(n, S) for n in fs], [(n, S) for n in ft])
    g = Relation("g", [(n, S) for n in gs], [(n, S) for n in gt])
    src, tgt, summed = compose_boundaries(f, g)
    assert set(src) == set(fs) | (set(gs) - set(ft))
    assert set(tgt) == set(gt) | (set(ft) - set(gs))
    assert set(summed) == set(ft) & set(gs)
    spec = LogicSpec("product")
    if set(src) & set(tgt):
        with pytest.raises(CompositionError):
            compose(spec, f, g)
    else:
        h = compose(spec, f, g)
        assert h.source_names == tuple(src) and h.target_names == tuple(tgt)


def test_converse_reverses_composition(product):
    rng = random.Random(5)
    S = FiniteSet("S", "012")
    for _ in range(30):
        f = _random_relation(rng, "f", [("X", S)], [("Y", S)])
        g = _random_relation(rng, "g", [("Y", S)], [("Z", S)])
        lhs = converse(compose(product, f, g))
        rhs = compose(product, converse(g), converse(f))
        assert lhs == rhs


def test_similarity_axioms_match_bruteforce_size4(product):
    rng = random.Random(9)
    S = FiniteSet("S", "abcd")
    for _ in range(300):
        w = {}
        for x, y in itertools.product(S, repeat=2):
            w[x, y] = Q(1) if x == y and rng.random() < 0.8 else oracles.rand_weight(rng, p_zero=0.3)
        if rng.random() < 0.5:
            for x, y in itertools.product(S, repeat=2):
                w[y, x] = w[x, y]
        rep = is_similarity(product, Relation("s", [("S", S)], [("S'", S)], w))
        assert (rep.reflexive, rep.symmetric, rep.transitive) == oracles.similarity_axioms(product, S, w)


def test_is_crisp_point(product, bit):
    assert is_crisp_point(crisp_point(product, "p", [("A", bit)], ["0"]))
    assert not is_crisp_point(element("e", [("A", bit)], {("0",): Q(1, 2)}))


def test_product_similarity_is_lazy_product(product, bit):
    o = OmegaSet(bit, {}, {("0", "0"): 1, ("1", "1"): 1, ("0", "1"): Q(1, 2), ("1", "0"): Q(1, 2)})
    sim = ProductSimilarity(product, [o, o])
    assert sim(("0", "0"), ("1", "1")) == Q(1, 4)
    assert sim(("0", "0"), ("0", "1")) == Q(1, 2)
