"""Depth-first k-colouring search with forced-colour propagation.

The vertex order is fixed up front (most spindles, then highest degree, then
most unit triangles).  After each decision, any uncoloured vertex left with a
single permissible colour receives it, repeatedly, and a vertex with none
causes a backtrack that undoes everything coloured since that decision.

Side constraints all reduce to forbidden colours:

* ``FixColour`` assigns a colour before the search starts;
* ``ForbidMonoTriple`` forbids a colour on the third vertex once two share it;
* ``RequireNonMono`` forbids a vertex's colour on its partner.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

from .graph import UnitDistanceGraph, count_spindles, count_unit_triangles


@dataclass(frozen=True)
class FixColour:
    vertex: int
    colour: int


@dataclass(frozen=True)
class ForbidMonoTriple:
    vertices: tuple[int, int, int]


@dataclass(frozen=True)
class RequireNonMono:
    pair: tuple[int, int]


Constraint = Union[FixColour, ForbidMonoTriple, RequireNonMono]


def constraint_to_json(c: Constraint) -> dict:
    if isinstance(c, FixColour):
        return {"kind": "fix-colour", "vertex": c.vertex, "colour": c.colour}
    if isinstance(c, ForbidMonoTriple):
        return {"kind": "forbid-mono-triple", "vertices": list(c.vertices)}
    return {"kind": "require-non-mono", "pair": list(c.pair)}


def constraint_from_json(data: dict) -> Constraint:
    kind = data.get("kind")
    if kind == "fix-colour":
        return FixColour(int(data["vertex"]), int(data["colour"]))
    if kind == "forbid-mono-triple":
        a, b, c = (int(v) for v in data["vertices"])
        return ForbidMonoTriple((a, b, c))
    if kind == "require-non-mono":
        a, b = (int(v) for v in data["pair"])
        return RequireNonMono((a, b))
    raise ValueError(f"unknown constraint kind {kind!r}")


def check_constraints(n: int, k: int, constraints: Iterable[Constraint]) -> None:
    for c in constraints:
        if isinstance(c, FixColour):
            idx: tuple[int, ...] = (c.vertex,)
            if not 1 <= c.colour <= k:
                raise ValueError(f"colour {c.colour} outside 1..{k}")
        elif isinstance(c, ForbidMonoTriple):
            idx = c.vertices
        elif isinstance(c, RequireNonMono):
            idx = c.pair
        else:
            raise TypeError(f"not a constraint: {c!r}")
        if any(not 0 <= v < n for v in idx):
            raise ValueError(f"constraint {c} references a missing vertex")


def order_vertices(g: UnitDistanceGraph, fixed: Sequence[int] = ()) -> list[int]:
    """Fixed vertices first, then by (spindles, degree, triangles), all decreasing."""
    fixed = list(dict.fromkeys(fixed))
    if any(not 0 <= v < g.n for v in fixed):
        raise ValueError("fixed vertex out of range")
    spindles = count_spindles(g).per_vertex
    triangles = count_unit_triangles(g).per_vertex
    taken = set(fixed)
    rest = sorted(
        (v for v in range(g.n) if v not in taken),
        key=lambda v: (-spindles[v], -len(g.adj[v]), -triangles[v], v),
    )
    return fixed + rest


@dataclass
class SearchStats:
    decisions: int = 0
    propagations: int = 0
    backtracks: int = 0
    solutions: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class SearchResult:
    satisfiable: bool
    colouring: list[int] | None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def status(self) -> str:
        return "SAT" if self.satisfiable else "UNSAT"

    def as_dict(self) -> dict:
        return {"status": self.status, "colouring": self.colouring, "stats": self.stats.as_dict()}


class _Conflict(Exception):
    def __init__(self, vertex: int) -> None:
        self.vertex = vertex


class ColouringSearch:
    """Search state for one graph, colour count and constraint list.

    With ``backjump`` (the default) a failed branch is traced back through the
    forced assignments to the decisions that actually caused it, and the
    search resumes at the latest of those instead of the latest decision
    overall.  This only skips branches that would fail the same way, so the
    verdict is unchanged; enumeration always backtracks chronologically.
    """

    def __init__(
        self,
        g: UnitDistanceGraph,
        k: int,
        constraints: Sequence[Constraint] = (),
        order: Sequence[int] | None = None,
        backjump: bool = True,
    ) -> None:
        if k < 1:
            raise ValueError("k must be at least 1")
        check_constraints(g.n, k, constraints)
        self.g = g
        self.n = n = g.n
        self.k = k
        self.adj = g.adj
        self.backjump = backjump
        self.fixed = [c for c in constraints if isinstance(c, FixColour)]
        triples: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        pairs: list[list[int]] = [[] for _ in range(n)]
        for c in constraints:
            if isinstance(c, ForbidMonoTriple):
                a, b, d = c.vertices
                triples[a].append((b, d))
                triples[b].append((a, d))
                triples[d].append((a, b))
            elif isinstance(c, RequireNonMono):
                a, b = c.pair
                pairs[a].append(b)
                pairs[b].append(a)
        self.triples = triples
        self.pairs = pairs
        if order is None:
            order = order_vertices(g, [c.vertex for c in self.fixed])
        if sorted(order) != list(range(n)):
            raise ValueError("order must be a permutation of the vertices")
        self.order = list(order)
        self.full = (1 << (k + 1)) - 2
        self.stats = SearchStats()

    # state --------------------------------------------------------------------

    def _reset(self) -> None:
        n, k = self.n, self.k
        self.colour = [0] * n
        self.level = [0] * n
        self.decided = [False] * n
        self.depth = 0
        self.count = [0] * (n * (k + 1))
        # vertex (or vertex pair) responsible for the first live forbid of (v, c)
        self.reason: list = [None] * (n * (k + 1))
        self.mask = [0] * n
        self.trail: list[int] = []  # forbid increments, encoded v*(k+1)+c
        self.assigned: list[int] = []

    def _forbid(self, w: int, c: int, why, queue: list[int]) -> None:
        idx = w * (self.k + 1) + c
        self.count[idx] += 1
        self.trail.append(idx)
        if self.count[idx] == 1:
            self.reason[idx] = why
            self.mask[w] |= 1 << c
            if not self.colour[w]:
                queue.append(w)

    def _assign(self, v: int, c: int, queue: list[int]) -> None:
        if self.mask[v] >> c & 1:
            raise _Conflict(v)
        colour = self.colour
        colour[v] = c
        self.level[v] = self.depth
        self.assigned.append(v)
        forbid = self._forbid
        for w in self.adj[v]:
            forbid(w, c, v, queue)
        for a, b in self.triples[v]:
            if colour[a] == c:
                forbid(b, c, (v, a), queue)
            if colour[b] == c:
                forbid(a, c, (v, b), queue)
        for w in self.pairs[v]:
            forbid(w, c, v, queue)

    def _propagate(self, queue: list[int]) -> None:
        colour, mask, full = self.colour, self.mask, self.full
        while queue:
            w = queue.pop()
            if colour[w]:
                continue
            m = mask[w]
            if m == full:
                raise _Conflict(w)
            free = full & ~m
            if free & (free - 1) == 0:
                self.stats.propagations += 1
                self._assign(w, free.bit_length() - 1, queue)

    def _undo_to(self, mark: tuple[int, int]) -> None:
        t_len, a_len = mark
        count, mask, trail, kk = self.count, self.mask, self.trail, self.k + 1
        while len(trail) > t_len:
            idx = trail.pop()
            count[idx] -= 1
            if count[idx] == 0:
                w, c = divmod(idx, kk)
                mask[w] &= ~(1 << c)
        colour, assigned, decided = self.colour, self.assigned, self.decided
        while len(assigned) > a_len:
            v = assigned.pop()
            colour[v] = 0
            decided[v] = False

    def _mark(self) -> tuple[int, int]:
        return len(self.trail), len(self.assigned)

    def _explain(self, v: int, colours: Iterable[int]) -> set[int]:
        """Decision levels responsible for the forbids of ``colours`` at ``v``."""
        kk = self.k + 1
        reason, level, decided, colour = self.reason, self.level, self.decided, self.colour
        levels: set[int] = set()
        seen: set[int] = set()
        stack: list[int] = []

        def push(why) -> None:
            if isinstance(why, tuple):
                stack.extend(why)
            else:
                stack.append(why)

        for c in colours:
            push(reason[v * kk + c])
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            lv = level[u]
            if lv == 0:
                continue
            if decided[u]:
                levels.add(lv)
            else:
                cu = colour[u]
                for c in range(1, kk):
                    if c != cu:
                        push(reason[u * kk + c])
        return levels

    # search ---------------------------------------------------------------------

    def run(
        self,
        on_solution: Callable[[list[int]], bool | None] | None = None,
    ) -> SearchResult:
        """Search for a colouring.

        Without ``on_solution`` the first colouring found is returned.  With it,
        every colouring is passed to the callback in turn and the search carries
        on until the tree is exhausted or the callback returns ``True``.
        """
        self._reset()
        self.stats = SearchStats()
        stats = self.stats
        queue: list[int] = []
        try:
            for fc in self.fixed:
                if self.colour[fc.vertex] not in (0, fc.colour):
                    raise _Conflict(fc.vertex)
                if not self.colour[fc.vertex]:
                    self._assign(fc.vertex, fc.colour, queue)
            self._propagate(queue)
        except _Conflict:
            return SearchResult(False, None, stats)

        jumping = self.backjump and on_solution is None
        order, colour, mask, k, n = self.order, self.colour, self.mask, self.k, self.n
        all_colours = range(1, k + 1)
        # frame: [vertex, next colour, mark, position in order, conflict levels]
        frames: list[list] = []
        pos = 0
        first: list[int] | None = None
        target = None  # level to resume at after a failure
        pending: set[int] = set()
        while True:
            if target is None:
                while pos < n and colour[order[pos]]:
                    pos += 1
                if pos == n:
                    stats.solutions += 1
                    found = list(colour)
                    if on_solution is None:
                        return SearchResult(True, found, stats)
                    if first is None:
                        first = found
                    if on_solution(found):
                        return SearchResult(True, first, stats)
                    target, pending = len(frames), set()
                else:
                    frames.append([order[pos], 1, self._mark(), pos, set()])
            if target is not None:
                # unwind to the frame at level ``target``
                if target == 0:
                    return SearchResult(first is not None, first, stats)
                del frames[target:]
                frames[-1][4] |= pending
                self._undo_to(frames[-1][2])
                target = None
            frame = frames[-1]
            v, c, mark, fpos, conf = frame
            self.depth = depth = len(frames)
            placed = False
            while c <= k:
                if not mask[v] >> c & 1:
                    stats.decisions += 1
                    queue = []
                    try:
                        self._assign(v, c, queue)
                        self.decided[v] = True
                        self._propagate(queue)
                        placed = True
                    except _Conflict as exc:
                        if jumping:
                            culprits = self._explain(exc.vertex, all_colours)
                            culprits.discard(depth)
                            conf |= culprits
                        self._undo_to(mark)
                    if placed:
                        break
                c += 1
            if placed:
                frame[1] = c + 1
                pos = fpos
                continue
            stats.backtracks += 1
            if jumping:
                culprits = conf | self._explain(v, [d for d in all_colours if mask[v] >> d & 1])
                culprits.discard(depth)
                target = max(culprits, default=0)
                pending = {lv for lv in culprits if lv != target}
            else:
                target, pending = depth - 1, set()
            frames.pop()


def search(
    g: UnitDistanceGraph,
    k: int,
    constraints: Sequence[Constraint] = (),
    order: Sequence[int] | None = None,
) -> SearchResult:
    return ColouringSearch(g, k, constraints, order).run()


def enumerate_colourings(
    g: UnitDistanceGraph,
    k: int,
    constraints: Sequence[Constraint] = (),
    order: Sequence[int] | None = None,
) -> list[list[int]]:
    """Every proper k-colouring satisfying the constraints (exhaustive, no symmetry reduction)."""
    out: list[list[int]] = []
    ColouringSearch(g, k, constraints, order).run(on_solution=out.append)
    return out


def find_colouring(g: UnitDistanceGraph, k: int) -> SearchResult:
    return search(g, k)


class InvalidColouring(ValueError):
    pass


def colouring_violations(
    g: UnitDistanceGraph,
    colouring: Sequence[int],
    k: int | None = None,
    constraints: Sequence[Constraint] = (),
) -> list[str]:
    """Independent re-check of a colouring against every edge and constraint."""
    problems = []
    if len(colouring) != g.n:
        return [f"colouring has {len(colouring)} entries for {g.n} vertices"]
    for v, c in enumerate(colouring):
        if not isinstance(c, int) or c < 1 or (k is not None and c > k):
            problems.append(f"vertex {v} has invalid colour {c!r}")
    for u, v in g.edges:
        if colouring[u] == colouring[v]:
            problems.append(f"edge ({u}, {v}) is monochromatic")
    for con in constraints:
        if isinstance(con, FixColour):
            if colouring[con.vertex] != con.colour:
                problems.append(f"vertex {con.vertex} is not colour {con.colour}")
        elif isinstance(con, ForbidMonoTriple):
            a, b, c = con.vertices
            if colouring[a] == colouring[b] == colouring[c]:
                problems.append(f"triple {con.vertices} is monochromatic")
        elif isinstance(con, RequireNonMono):
            a, b = con.pair
            if colouring[a] == colouring[b]:
                problems.append(f"pair {con.pair} is monochromatic")
    return problems


def validate_colouring(
    g: UnitDistanceGraph,
    colouring: Sequence[int],
    k: int | None = None,
    constraints: Sequence[Constraint] = (),
) -> None:
    problems = colouring_violations(g, colouring, k, constraints)
    if problems:
        more = f" (+{len(problems) - 5} more)" if len(problems) > 5 else ""
        raise InvalidColouring("; ".join(problems[:5]) + more)
