"""Colouring properties behind the non-4-colourability argument.

Each ``check_*`` function returns a :class:`Verdict`; a verdict that
contradicts the expected property carries a witness colouring.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .constructions import build
from .geometry import dist2
from .graph import UnitDistanceGraph, find_h_copies
from .solver import (
    Constraint,
    FixColour,
    ForbidMonoTriple,
    RequireNonMono,
    SearchResult,
    enumerate_colourings,
    search,
)

MAX_ENUMERATION_VERTICES = 40
LINKING_PATTERNS = ("a", "b", "c", "other")


class MissingAnnotation(ValueError):
    pass


class GraphTooLarge(ValueError):
    pass


class PropertyViolation(AssertionError):
    def __init__(self, message: str, witness: list[int] | None = None) -> None:
        super().__init__(message)
        self.witness = witness


@dataclass
class Verdict:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    witness: list[int] | None = None

    def as_dict(self) -> dict:
        out = {"property": self.name, "passed": self.passed, **self.details}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


# --- symmetry and colouring classes ---------------------------------------------


def symmetry_group(g: UnitDistanceGraph) -> list[tuple[int, ...]]:
    """Vertex permutations induced by plane isometries mapping the point set to itself.

    A bijection of a planar point set that preserves all pairwise distances
    extends to an isometry, so it suffices to search for distance-preserving
    permutations.
    """
    n = g.n
    if n > MAX_ENUMERATION_VERTICES:
        raise GraphTooLarge(f"{n} vertices is too many for symmetry enumeration")
    d = [[dist2(g.vertices[i], g.vertices[j]) for j in range(n)] for i in range(n)]
    perms: list[tuple[int, ...]] = []
    image = [-1] * n
    used = [False] * n

    def extend(i: int) -> None:
        if i == n:
            perms.append(tuple(image))
            return
        for cand in range(n):
            if used[cand]:
                continue
            if all(d[i][j] == d[cand][image[j]] for j in range(i)):
                image[i] = cand
                used[cand] = True
                extend(i + 1)
                used[cand] = False
        image[i] = -1

    extend(0)
    return perms


def _relabel(colouring: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(c, len(seen) + 1) for c in colouring)


@dataclass(frozen=True)
class ColouringClass:
    representative: tuple[int, ...]
    orbit_size: int


def canonical_colouring(colouring: Sequence[int], group: Iterable[Sequence[int]]) -> tuple[int, ...]:
    """Lexicographically least image under symmetries and colour permutations."""
    return min(_relabel([colouring[s[i]] for i in range(len(s))]) for s in group)


def enumerate_classes(g: UnitDistanceGraph, k: int) -> list[ColouringClass]:
    """All proper colourings with colours 1..k, grouped into essentially distinct classes."""
    if g.n > MAX_ENUMERATION_VERTICES:
        raise GraphTooLarge(f"{g.n} vertices is too many for exhaustive enumeration")
    group = symmetry_group(g)
    sizes: dict[tuple[int, ...], int] = {}
    for col in enumerate_colourings(g, k):
        key = canonical_colouring(col, group)
        sizes[key] = sizes.get(key, 0) + 1
    return [ColouringClass(rep, sizes[rep]) for rep in sorted(sizes)]


def has_mono_triple(g: UnitDistanceGraph, colouring: Sequence[int]) -> bool:
    return any(
        colouring[a] == colouring[b] == colouring[c]
        for hc in find_h_copies(g)
        for a, b, c in hc.triples
    )


def h_triple_classes(h: UnitDistanceGraph | None = None) -> list[ColouringClass]:
    """The essentially distinct 4-colourings of H that contain a monochromatic triple."""
    h = h or build("H")
    return [c for c in enumerate_classes(h, 4) if has_mono_triple(h, c.representative)]


def check_h_classes() -> Verdict:
    h = build("H")
    classes = enumerate_classes(h, 4)
    with_triple = [c for c in classes if has_mono_triple(h, c.representative)]
    return Verdict(
        "h-classes",
        len(classes) == 4 and len(with_triple) == 2,
        {
            "classes": len(classes),
            "with_triple": len(with_triple),
            "colourings": sum(c.orbit_size for c in classes),
            "representatives": [list(c.representative) for c in classes],
        },
    )


# --- J: linking vertices --------------------------------------------------------


def triple_free_constraints(g: UnitDistanceGraph, copies=None) -> list[Constraint]:
    copies = find_h_copies(g) if copies is None else copies
    return [ForbidMonoTriple(t) for hc in copies for t in hc.triples]


def _annotation(g: UnitDistanceGraph, name: str) -> tuple[int, ...]:
    try:
        return g.annotations[name]
    except KeyError:
        raise MissingAnnotation(f"graph has no {name!r} annotation") from None


def classify_linking(
    g: UnitDistanceGraph,
    colouring: Sequence[int],
    centre: str = "centre",
    linking: str = "linking",
) -> str:
    """Pattern of the six linking vertices (listed clockwise) relative to the centre colour."""
    (c,) = _annotation(g, centre)
    ring = [colouring[v] for v in _annotation(g, linking)]
    if len(ring) != 6:
        raise MissingAnnotation("expected six linking vertices")
    base = colouring[c]
    same = [x == base for x in ring]
    others = {x for x in ring if x != base}
    if all(same):
        return "a"
    if len(others) != 1:
        return "other"
    for r in range(6):
        rot = same[r:] + same[:r]
        if rot == [True] * 4 + [False] * 2:
            return "b"
    for r in range(3):
        if same[r] and same[r + 3] and sum(same) == 2:
            return "c"
    return "other"


def check_j_linking_property(
    j: UnitDistanceGraph | None = None,
    extra_constraints: Sequence[Constraint] = (),
) -> Verdict:
    j = j if j is not None else build("J")
    _annotation(j, "centre")
    _annotation(j, "linking")
    constraints = triple_free_constraints(j) + list(extra_constraints)
    counts = dict.fromkeys(LINKING_PATTERNS, 0)
    witness = None
    total = 0
    for col in enumerate_colourings(j, 4, constraints):
        total += 1
        p = classify_linking(j, col)
        counts[p] += 1
        if p == "other" and witness is None:
            witness = col
    seen = sorted(p for p in LINKING_PATTERNS if counts[p])
    return Verdict(
        "j-linking",
        witness is None,
        {"colourings": total, "patterns_seen": seen, "pattern_counts": counts},
        witness,
    )


# --- K: linking diagonals -----------------------------------------------------


def linking_diagonals(g: UnitDistanceGraph) -> list[tuple[int, int]]:
    out = []
    for name in sorted(g.annotations):
        if name.startswith("linking"):
            ring = g.annotations[name]
            out += [(ring[i], ring[i + 3]) for i in range(3)]
    return out


def _run(args) -> SearchResult:
    g, k, constraints = args
    return search(g, k, constraints)


def _map(tasks, jobs: int):
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run, tasks))
    return [_run(t) for t in tasks]


def check_k_diagonal_property(
    k_graph: UnitDistanceGraph | None = None,
    colours: int = 4,
    triple_free: bool = True,
    jobs: int = 1,
) -> Verdict:
    """Triple-free colourings of K force every linking diagonal to be monochromatic."""
    g = k_graph if k_graph is not None else build("K")
    base = triple_free_constraints(g) if triple_free else []
    diagonals = linking_diagonals(g)
    results = _map([(g, colours, base + [RequireNonMono(d)]) for d in diagonals], jobs)
    per = []
    witness = None
    for d, r in zip(diagonals, results):
        per.append({"diagonal": list(d), "status": r.status, "stats": r.stats.as_dict()})
        if r.satisfiable and witness is None:
            witness = r.colouring
    return Verdict("k-diagonals", witness is None, {"diagonals": per}, witness)


# --- L and M -------------------------------------------------------------------


def check_l_property(
    l_graph: UnitDistanceGraph | None = None,
    colours: int = 4,
    copies=None,
) -> Verdict:
    """No 4-colouring of L leaves every one of its H-copies without a monochromatic triple."""
    g = l_graph if l_graph is not None else build("L")
    copies = find_h_copies(g) if copies is None else copies
    r = search(g, colours, triple_free_constraints(g, copies))
    return Verdict(
        "l-property",
        not r.satisfiable,
        {"h_copies": len(copies), "status": r.status, "stats": r.stats.as_dict()},
        r.colouring,
    )


def initialising_constraints(m: UnitDistanceGraph, rep: Sequence[int]) -> list[Constraint]:
    """Fix M's central H to a colouring given on the canonical H build."""
    h = build("H")
    init = _annotation(m, "initialising")
    index = {m.vertices[v]: v for v in init}
    try:
        return [FixColour(index[p], c) for p, c in zip(h.vertices, rep)]
    except KeyError:
        raise MissingAnnotation("initialising vertices do not form the central H") from None


def check_m_property(m: UnitDistanceGraph | None = None, colours: int = 4, jobs: int = 1) -> Verdict:
    """Neither triple-containing colouring of the central H extends to all of ``m``."""
    m = m if m is not None else build("M")
    reps = [c.representative for c in h_triple_classes()]
    results = _map([(m, colours, initialising_constraints(m, rep)) for rep in reps], jobs)
    per = [
        {"initial": list(rep), "status": r.status, "stats": r.stats.as_dict()}
        for rep, r in zip(reps, results)
    ]
    witness = next((r.colouring for r in results if r.satisfiable), None)
    return Verdict("m-property", witness is None, {"runs": per}, witness)


def check_g_colouring(g: UnitDistanceGraph | None = None, colours: int = 5) -> Verdict:
    from .solver import validate_colouring

    g = g if g is not None else build("G")
    r = search(g, colours)
    if r.satisfiable:
        validate_colouring(g, r.colouring, colours)
    return Verdict(
        "g-5colouring",
        r.satisfiable,
        {"k": colours, "status": r.status, "stats": r.stats.as_dict()},
        r.colouring,
    )


def brute_force_colourable(g: UnitDistanceGraph, k: int) -> bool:
    """Reference oracle: try all k^n assignments."""
    for col in itertools.product(range(1, k + 1), repeat=g.n):
        if all(col[u] != col[v] for u, v in g.edges):
            return True
    return False
