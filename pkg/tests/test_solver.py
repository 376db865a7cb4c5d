import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unitdist.constructions import build
from unitdist.graph import UnitDistanceGraph, count_unit_triangles, find_h_copies, find_spindles
from unitdist.properties import triple_free_constraints
from unitdist.solver import (
    ColouringSearch,
    FixColour,
    ForbidMonoTriple,
    InvalidColouring,
    RequireNonMono,
    check_constraints,
    colouring_violations,
    constraint_from_json,
    constraint_to_json,
    enumerate_colourings,
    find_colouring,
    order_vertices,
    search,
    validate_colouring,
)


def subgraph(g: UnitDistanceGraph, keep) -> UnitDistanceGraph:
    pos = {v: i for i, v in enumerate(keep)}
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    return UnitDistanceGraph([g.vertices[v] for v in keep], {}, edges)


def grown_subgraph(g: UnitDistanceGraph, size: int, rng: random.Random, seed=()) -> UnitDistanceGraph:
    """Random connected vertex set grown from a random seed.

    Frontier vertices are weighted by the cube of their number of neighbours
    already chosen, which favours dense pieces such as spindles.
    """
    chosen = list(seed) or [rng.randrange(g.n)]
    inside = set(chosen)
    while len(chosen) < size:
        frontier = sorted({w for v in chosen for w in g.adj[v]} - inside)
        if not frontier:
            break
        weights = [sum(u in inside for u in g.adj[w]) ** 3 for w in frontier]
        v = rng.choices(frontier, weights)[0]
        chosen.append(v)
        inside.add(v)
    return subgraph(g, sorted(chosen))


def naive_colourable(g: UnitDistanceGraph, k: int, constraints=()) -> bool:
    """Plain exhaustive backtracking in index order; no propagation or ordering."""
    fixed = [(c.vertex, c.colour) for c in constraints if isinstance(c, FixColour)]
    triples = [c.vertices for c in constraints if isinstance(c, ForbidMonoTriple)]
    pairs = [c.pair for c in constraints if isinstance(c, RequireNonMono)]
    col = [0] * g.n

    def ok(v: int) -> bool:
        if any(u == v and col[v] != c for u, c in fixed):
            return False
        for u in g.adj[v]:
            if u < v and col[u] == col[v]:
                return False
        for a, b in pairs:
            if max(a, b) == v and col[a] == col[b]:
                return False
        for t in triples:
            if max(t) == v and col[t[0]] == col[t[1]] == col[t[2]]:
                return False
        return True

    def rec(v: int) -> bool:
        if v == g.n:
            return True
        for c in range(1, k + 1):
            col[v] = c
            if ok(v) and rec(v + 1):
                return True
        col[v] = 0
        return False

    return rec(0)


def chromatic_number(g: UnitDistanceGraph, colourable) -> int:
    return next(k for k in range(1, g.n + 2) if colourable(g, k))


def test_solver_matches_brute_force_on_200_subgraphs_of_m():
    m = build("M")
    spindles = find_spindles(m)
    rng = random.Random(2018)
    seen = set()
    for i in range(200):
        # every fourth sample starts from an embedded spindle, so 4-chromatic cases occur
        seed = rng.choice(spindles)[2] if i % 4 == 0 else ()
        g = grown_subgraph(m, rng.randint(7 if seed else 4, 14), rng, seed)
        expected = chromatic_number(g, naive_colourable)
        seen.add(expected)
        for k in range(1, 5):
            r = search(g, k)
            assert r.satisfiable == (k >= expected)
            if r.satisfiable:
                validate_colouring(g, r.colouring, k)
    assert seen == {2, 3, 4}


def test_constrained_search_matches_brute_force():
    j = build("J")
    rng = random.Random(5)
    triples = [t for hc in find_h_copies(j) for t in hc.triples]
    for _ in range(60):
        g = grown_subgraph(j, rng.randint(6, 12), rng)
        local = {p: i for i, p in enumerate(g.vertices)}
        cons = []
        for t in triples:
            idx = [local.get(j.vertices[v]) for v in t]
            if None not in idx:
                cons.append(ForbidMonoTriple(tuple(idx)))
        for _ in range(rng.randint(0, 2)):
            cons.append(FixColour(rng.randrange(g.n), rng.randint(1, 3)))
        for _ in range(rng.randint(0, 2)):
            a, b = rng.sample(range(g.n), 2)
            cons.append(RequireNonMono((a, b)))
        for k in (2, 3, 4):
            usable = [c for c in cons if not isinstance(c, FixColour) or c.colour <= k]
            r = search(g, k, usable)
            assert r.satisfiable == naive_colourable(g, k, usable)
            if r.satisfiable:
                validate_colouring(g, r.colouring, k, usable)


def test_backjumping_agrees_with_chronological_search():
    k = build("K")
    base = triple_free_constraints(k)
    rng = random.Random(11)
    for _ in range(20):
        keep = sorted(rng.sample(range(k.n), 40))
        g = subgraph(k, keep)
        pos = {v: i for i, v in enumerate(keep)}
        cons = [ForbidMonoTriple(tuple(pos[v] for v in c.vertices)) for c in base if all(v in pos for v in c.vertices)]
        a, b = rng.sample(range(g.n), 2)
        cons.append(RequireNonMono((a, b)))
        for colours in (3, 4):
            fast = ColouringSearch(g, colours, cons, backjump=True).run()
            slow = ColouringSearch(g, colours, cons, backjump=False).run()
            assert fast.satisfiable == slow.satisfiable


def test_verdict_independent_of_vertex_order():
    u = build("U")
    rng = random.Random(3)
    for k, expected in ((3, False), (4, True)):
        for _ in range(5):
            order = list(range(u.n))
            rng.shuffle(order)
            assert search(u, k, order=order).satisfiable is expected


@settings(max_examples=50, deadline=None)
@given(st.permutations([1, 2, 3, 4]), st.integers(0, 14))
def test_colour_permutation_invariance(perm, vertex):
    u = build("U")
    cons = [FixColour(vertex, 1), FixColour((vertex + 5) % u.n, 2)]
    r = search(u, 4, cons)
    permuted = [FixColour(c.vertex, perm[c.colour - 1]) for c in cons]
    r2 = search(u, 4, permuted)
    assert r.satisfiable == r2.satisfiable
    if r.satisfiable:
        mapped = [perm[c - 1] for c in r.colouring]
        validate_colouring(u, mapped, 4, permuted)


def test_moser_spindle_is_four_chromatic():
    g = build("MOSER")
    assert not search(g, 3).satisfiable
    r = find_colouring(g, 4)
    assert r.satisfiable and r.status == "SAT"
    validate_colouring(g, r.colouring, 4)


def test_h_colouring_counts_match_product_enumeration():
    h = build("H")
    brute = [
        list(c)
        for c in itertools.product(range(1, 5), repeat=7)
        if all(c[u] != c[v] for u, v in h.edges)
    ]
    found = enumerate_colourings(h, 4)
    assert len(found) == len(brute) == 264
    assert sorted(found) == sorted(brute)


def test_h_monochromatic_triples_are_the_stored_triples():
    h = build("H")
    (hc,) = find_h_copies(h)
    allowed = {frozenset(t) for t in hc.triples}
    for col in enumerate_colourings(h, 4):
        for trio in itertools.combinations(range(7), 3):
            if col[trio[0]] == col[trio[1]] == col[trio[2]]:
                assert frozenset(trio) in allowed


def test_enumeration_with_constraints():
    h = build("H")
    (hc,) = find_h_copies(h)
    free = enumerate_colourings(h, 4, triple_free_constraints(h))
    assert all(col[a] != col[b] or col[b] != col[c] for col in free for a, b, c in hc.triples)
    # 264 minus the colourings with a monochromatic triple
    with_triple = [
        col for col in enumerate_colourings(h, 4)
        if any(col[a] == col[b] == col[c] for a, b, c in hc.triples)
    ]
    assert len(free) + len(with_triple) == 264
    assert colouring_violations(h, free[0], 4, triple_free_constraints(h)) == []


def test_fixed_colours_conflicting_is_unsat():
    h = build("H")
    a, b = h.edges[0]
    assert not search(h, 4, [FixColour(a, 2), FixColour(b, 2)]).satisfiable
    assert not search(h, 4, [FixColour(a, 1), FixColour(a, 2)]).satisfiable


def test_search_stats_and_result_dict():
    r = search(build("U"), 4)
    d = r.as_dict()
    assert d["status"] == "SAT" and len(d["colouring"]) == 15
    assert set(d["stats"]) == {"decisions", "propagations", "backtracks", "solutions"}
    assert d["stats"]["solutions"] == 1


def test_order_vertices():
    u = build("U")
    order = order_vertices(u, [3])
    assert order[0] == 3 and sorted(order) == list(range(u.n))
    with pytest.raises(ValueError):
        order_vertices(u, [99])
    with pytest.raises(ValueError):
        ColouringSearch(u, 4, order=[0, 1])
    with pytest.raises(ValueError):
        ColouringSearch(u, 0)


def test_validator():
    h = build("H")
    good = find_colouring(h, 4).colouring
    validate_colouring(h, good, 4)
    u, v = h.edges[0]
    bad = list(good)
    bad[v] = bad[u]
    with pytest.raises(InvalidColouring):
        validate_colouring(h, bad)
    with pytest.raises(InvalidColouring):
        validate_colouring(h, good[:-1])
    with pytest.raises(InvalidColouring):
        validate_colouring(h, [0] + good[1:])
    with pytest.raises(InvalidColouring):
        validate_colouring(h, [max(good) + 1] + good[1:], k=max(good))
    with pytest.raises(InvalidColouring):
        validate_colouring(h, good, 4, [FixColour(0, good[0] % 4 + 1)])
    (hc,) = find_h_copies(h)
    a, b, c = hc.triples[0]
    with_triple = next(col for col in enumerate_colourings(h, 4) if col[a] == col[b] == col[c])
    with pytest.raises(InvalidColouring):
        validate_colouring(h, with_triple, 4, [ForbidMonoTriple((a, b, c))])
    with pytest.raises(InvalidColouring):
        validate_colouring(h, with_triple, 4, [RequireNonMono((a, b))])


def test_constraint_json_and_checks():
    cons = [FixColour(1, 2), ForbidMonoTriple((1, 2, 3)), RequireNonMono((0, 4))]
    for c in cons:
        assert constraint_from_json(constraint_to_json(c)) == c
    with pytest.raises(ValueError):
        constraint_from_json({"kind": "nope"})
    check_constraints(5, 4, cons)
    with pytest.raises(ValueError):
        check_constraints(5, 4, [FixColour(1, 5)])
    with pytest.raises(ValueError):
        check_constraints(3, 4, [ForbidMonoTriple((0, 1, 3))])
    with pytest.raises(TypeError):
        check_constraints(3, 4, ["not a constraint"])


def test_order_vertices_examples():
    moser = build("MOSER")
    order = order_vertices(moser)
    # every vertex lies on the one spindle, so degree and then triangles decide
    assert moser.degree(order[0]) == 4
    tri = count_unit_triangles(moser).per_vertex
    keys = [(-moser.degree(v), -tri[v], v) for v in order]
    assert keys == sorted(keys)
    assert [tri[v] for v in order[1:]] == [2, 2, 2, 2, 1, 1]
    empty = UnitDistanceGraph([])
    assert order_vertices(empty) == []
    m = build("M")
    init = list(m.annotations["initialising"])
    order = order_vertices(m, init)
    assert order[:7] == init and len(order) == 1345


def test_small_search_examples():
    h = build("H")
    centre = h.annotations["centre"][0]
    rim = h.annotations["hexagon"][0]
    r = search(h, 4, [FixColour(centre, 1), FixColour(rim, 2)])
    assert r.satisfiable and r.colouring[centre] == 1 and r.colouring[rim] == 2
    assert not find_colouring(h, 2).satisfiable
    assert find_colouring(UnitDistanceGraph([]), 1).colouring == []
