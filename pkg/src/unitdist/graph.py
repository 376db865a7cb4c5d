"""Unit-distance graphs built from exact point sets.

Edges are never supplied by the caller: every pair of vertices at exact unit
distance is an edge.  Candidate pairs come from a k-d tree over float
approximations and are then confirmed exactly, so the float stage can only
cost time, never correctness (the window is far wider than float error).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .field import ONE, FieldElement
from .geometry import Isometry, Point, dist2

THREE = FieldElement.from_rational(3)
PREFILTER_TOL = 1e-6


class GraphFormatError(ValueError):
    """A serialised graph is malformed or its edge list fails re-verification."""


def _pairs_at(coords: np.ndarray, dist: float, tol: float = PREFILTER_TOL) -> np.ndarray:
    if len(coords) < 2:
        return np.empty((0, 2), dtype=np.int64)
    tree = cKDTree(coords)
    pairs = tree.query_pairs(dist + tol, output_type="ndarray")
    if len(pairs) == 0:
        return pairs.reshape(0, 2)
    d = np.linalg.norm(coords[pairs[:, 0]] - coords[pairs[:, 1]], axis=1)
    pairs = pairs[d >= dist - tol]
    pairs.sort(axis=1)
    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    return pairs[order]


def exact_pairs(points: Sequence[Point], target: FieldElement, coords: np.ndarray | None = None) -> list[tuple[int, int]]:
    """All index pairs (u < v) with dist2 exactly equal to ``target``, sorted."""
    if coords is None:
        coords = np.array([p.approx() for p in points], dtype=float).reshape(-1, 2)
    out = []
    for u, v in _pairs_at(coords, float(target) ** 0.5).tolist():
        if dist2(points[u], points[v]) == target:
            out.append((u, v))
    return out


@dataclass(frozen=True)
class HCopy:
    """A unit hexagon together with its centre; ``hexagon`` is in cyclic order."""

    centre: int
    hexagon: tuple[int, ...]

    @property
    def triples(self) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
        h = self.hexagon
        return (h[0], h[2], h[4]), (h[1], h[3], h[5])

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.centre,) + self.hexagon


@dataclass(frozen=True)
class FeatureCount:
    total: int
    per_vertex: tuple[int, ...]


class UnitDistanceGraph:
    def __init__(
        self,
        vertices: Sequence[Point],
        annotations: Mapping[str, Sequence[int]] | None = None,
        edges: Sequence[tuple[int, int]] | None = None,
    ) -> None:
        self.vertices: tuple[Point, ...] = tuple(vertices)
        self.coords = np.array([p.approx() for p in self.vertices], dtype=float).reshape(-1, 2)
        # trusted only from internal callers that already computed them
        self.edges: tuple[tuple[int, int], ...] = tuple(
            edges if edges is not None else exact_pairs(self.vertices, ONE, self.coords)
        )
        n = len(self.vertices)
        self.annotations: dict[str, tuple[int, ...]] = {}
        for name, idx in (annotations or {}).items():
            idx = tuple(int(i) for i in idx)
            if any(not 0 <= i < n for i in idx):
                raise ValueError(f"annotation {name!r} references a missing vertex")
            self.annotations[name] = idx
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._index: dict[Point, int] | None = None
        self._cache: dict[str, object] = {}

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, p: Point) -> int:
        if self._index is None:
            self._index = {q: i for i, q in enumerate(self.vertices)}
        return self._index[p]

    def get_index(self, p: Point) -> int | None:
        try:
            return self.index(p)
        except KeyError:
            return None

    def __contains__(self, p: Point) -> bool:
        return self.get_index(p) is not None

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def vertex_set(self) -> frozenset[Point]:
        return frozenset(self.vertices)

    def annotated(self, **annotations: Sequence[int]) -> UnitDistanceGraph:
        merged = dict(self.annotations)
        merged.update(annotations)
        return UnitDistanceGraph(self.vertices, merged, self.edges)

    def canonical(self) -> UnitDistanceGraph:
        """Same graph with vertices sorted by their coefficient vectors."""
        order = sorted(range(self.n), key=lambda i: self.vertices[i].sort_key())
        return self.reindexed(order)

    def reindexed(self, order: Sequence[int]) -> UnitDistanceGraph:
        pos = {old: new for new, old in enumerate(order)}
        edges = sorted(tuple(sorted((pos[u], pos[v]))) for u, v in self.edges)
        ann = {k: tuple(pos[i] for i in v) for k, v in self.annotations.items()}
        return UnitDistanceGraph([self.vertices[i] for i in order], ann, edges)

    def without(self, points: Iterable[Point]) -> UnitDistanceGraph:
        drop = {self.index(p) for p in points if p in self}
        keep = [i for i in range(self.n) if i not in drop]
        pos = {old: new for new, old in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        ann = {
            k: tuple(pos[i] for i in v if i in pos) for k, v in self.annotations.items()
        }
        return UnitDistanceGraph([self.vertices[i] for i in keep], ann, edges)

    # serialisation --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": [p.to_json() for p in self.vertices],
            "edges": [list(e) for e in self.edges],
            "annotations": {k: list(v) for k, v in sorted(self.annotations.items())},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data) -> UnitDistanceGraph:
        """Load a graph, recomputing edges exactly and rejecting any mismatch."""
        try:
            points = [Point.from_json(v) for v in data["vertices"]]
            stored = sorted(tuple(sorted((int(u), int(v)))) for u, v in data.get("edges", []))
            ann = {str(k): [int(i) for i in v] for k, v in data.get("annotations", {}).items()}
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise GraphFormatError(f"malformed graph: {exc}") from exc
        if len(set(points)) != len(points):
            raise GraphFormatError("duplicate vertices")
        try:
            g = cls(points, ann)
        except ValueError as exc:
            raise GraphFormatError(str(exc)) from exc
        if stored != list(g.edges):
            raise GraphFormatError("edge list does not match the unit-distance pairs")
        return g

    @classmethod
    def loads(cls, text: str) -> UnitDistanceGraph:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise GraphFormatError("graph JSON must be an object")
        return cls.from_json(data)

    def __repr__(self) -> str:
        return f"UnitDistanceGraph(n={self.n}, edges={len(self.edges)})"


def graph_from_points(points: Iterable[Point], annotations: Mapping[str, Sequence[Point]] | None = None) -> UnitDistanceGraph:
    """Deduplicate (first occurrence wins) and join every unit-distance pair.

    ``annotations`` name point sets; every point must be among ``points``.
    """
    index: dict[Point, int] = {}
    verts: list[Point] = []
    for p in points:
        if p not in index:
            index[p] = len(verts)
            verts.append(p)
    ann = {k: [index[p] for p in v] for k, v in (annotations or {}).items()}
    return UnitDistanceGraph(verts, ann)


def union(g1: UnitDistanceGraph, g2: UnitDistanceGraph) -> UnitDistanceGraph:
    """Graph on the merged vertex sets, with edges recomputed globally.

    Annotations of both operands are carried over; a name clash on the second
    operand gets a trailing prime (so ``B`` from the copy becomes ``B'``).
    """
    merged = list(g1.vertices) + list(g2.vertices)
    ann: dict[str, list[Point]] = {k: [g1.vertices[i] for i in v] for k, v in g1.annotations.items()}
    for k, v in g2.annotations.items():
        name = k
        while name in ann:
            name += "'"
        ann[name] = [g2.vertices[i] for i in v]
    return graph_from_points(merged, ann)


def transform(g: UnitDistanceGraph, iso: Isometry) -> UnitDistanceGraph:
    """Pointwise image; the edge set carries over unchanged."""
    return UnitDistanceGraph([iso.apply(p) for p in g.vertices], g.annotations, g.edges)


def find_h_copies(g: UnitDistanceGraph) -> list[HCopy]:
    """Every unit hexagon whose centre is also a vertex.

    Two unit neighbours of a vertex are adjacent exactly when they are 60°
    apart, so the hexagons around ``c`` are the 6-cycles of the graph induced
    on its neighbourhood, in which every vertex has degree at most 2.
    """
    if "h_copies" in g._cache:
        return g._cache["h_copies"]
    copies = []
    for c in range(g.n):
        nbrs = set(g.adj[c])
        local = {u: [w for w in g.adj[u] if w in nbrs] for u in g.adj[c]}
        seen: set[int] = set()
        for start in g.adj[c]:
            if start in seen or len(local[start]) != 2:
                continue
            cycle = [start]
            prev, cur = None, start
            while True:
                nxt = [w for w in local[cur] if w != prev]
                if len(local[cur]) != 2 or not nxt:
                    break
                prev, cur = cur, nxt[0]
                if cur == start:
                    break
                cycle.append(cur)
            seen.update(cycle)
            if cur == start and len(cycle) == 6:
                copies.append(HCopy(c, _orient_hexagon(g, c, cycle)))
    g._cache["h_copies"] = copies
    return copies


def _orient_hexagon(g: UnitDistanceGraph, c: int, cycle: list[int]) -> tuple[int, ...]:
    # start at the smallest index, proceed anticlockwise
    i = cycle.index(min(cycle))
    cyc = cycle[i:] + cycle[:i]
    cx, cy = g.coords[c]
    a = g.coords[cyc[0]] - (cx, cy)
    b = g.coords[cyc[1]] - (cx, cy)
    if a[0] * b[1] - a[1] * b[0] < 0:
        cyc = [cyc[0]] + cyc[1:][::-1]
    return tuple(cyc)


def sqrt3_pairs(g: UnitDistanceGraph) -> list[tuple[int, int]]:
    if "sqrt3_pairs" not in g._cache:
        g._cache["sqrt3_pairs"] = exact_pairs(g.vertices, THREE, g.coords)
    return g._cache["sqrt3_pairs"]


def find_spindles(g: UnitDistanceGraph) -> list[tuple[int, tuple[int, int], tuple[int, ...]]]:
    """Embedded Moser spindles as (apex, (tip1, tip2), all seven vertices).

    Two points √3 apart have exactly two common unit neighbours, so a unit
    rhombus on a √3 pair exists iff both are present.  A spindle is an apex
    with two rhombus partners that are themselves at unit distance.
    """
    if "spindles" in g._cache:
        return g._cache["spindles"]
    rhombi: dict[int, dict[int, tuple[int, int]]] = {}
    adjsets = [set(a) for a in g.adj]
    for u, v in sqrt3_pairs(g):
        common = adjsets[u] & adjsets[v]
        if len(common) == 2:
            a, b = sorted(common)
            rhombi.setdefault(u, {})[v] = (a, b)
            rhombi.setdefault(v, {})[u] = (a, b)
    found = []
    for x in sorted(rhombi):
        tips = sorted(rhombi[x])
        for i, y in enumerate(tips):
            for z in tips[i + 1:]:
                if z in adjsets[y]:
                    members = tuple(sorted({x, y, z, *rhombi[x][y], *rhombi[x][z]}))
                    found.append((x, (y, z), members))
    g._cache["spindles"] = found
    return found


def count_spindles(g: UnitDistanceGraph) -> FeatureCount:
    per = [0] * g.n
    spindles = find_spindles(g)
    for _, _, members in spindles:
        for v in members:
            per[v] += 1
    return FeatureCount(len(spindles), tuple(per))


def find_unit_triangles(g: UnitDistanceGraph) -> list[tuple[int, int, int]]:
    adjsets = [set(a) for a in g.adj]
    out = []
    for u, v in g.edges:
        for w in sorted(adjsets[u] & adjsets[v]):
            if w > v:
                out.append((u, v, w))
    return out


def count_unit_triangles(g: UnitDistanceGraph) -> FeatureCount:
    per = [0] * g.n
    tris = find_unit_triangles(g)
    for t in tris:
        for v in t:
            per[v] += 1
    return FeatureCount(len(tris), tuple(per))


@dataclass(frozen=True)
class GraphStats:
    vertices: int
    edges: int
    h_copies: int
    spindles: int
    triangles: int
    max_degree: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def stats(g: UnitDistanceGraph) -> GraphStats:
    return GraphStats(
        vertices=g.n,
        edges=len(g.edges),
        h_copies=len(find_h_copies(g)),
        spindles=count_spindles(g).total,
        triangles=count_unit_triangles(g).total,
        max_degree=max((len(a) for a in g.adj), default=0),
    )
