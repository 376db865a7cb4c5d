"""CNF encoding of constrained k-colourability, DIMACS output, model decoding.

Variable ``v*k + c`` (vertices 0-based, colours 1..k) means "vertex v may take
colour c".  At-most-one-colour clauses are left out: a model asserting
several colours for a vertex still yields a proper colouring by taking the
lowest one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import UnitDistanceGraph
from .solver import Constraint, FixColour, ForbidMonoTriple, RequireNonMono, check_constraints, validate_colouring


class ModelError(ValueError):
    """A model does not satisfy the formula, or decodes to an invalid colouring."""


@dataclass
class CnfFormula:
    num_vars: int
    clauses: list[list[int]]
    k: int = 0
    num_vertices: int = 0
    comments: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        for cl in self.clauses:
            if not cl:
                raise ValueError("empty clause")
            if any(lit == 0 or abs(lit) > self.num_vars for lit in cl):
                raise ValueError(f"clause {cl} references an undeclared variable")

    def var(self, vertex: int, colour: int) -> int:
        return vertex * self.k + colour

    def satisfied_by(self, true_vars: set[int]) -> bool:
        return all(any((lit > 0) == (abs(lit) in true_vars) for lit in cl) for cl in self.clauses)


def encode(g: UnitDistanceGraph, k: int, constraints: Sequence[Constraint] = ()) -> CnfFormula:
    check_constraints(g.n, k, constraints)
    var = lambda v, c: v * k + c  # noqa: E731
    colours = range(1, k + 1)
    clauses = [[var(v, c) for c in colours] for v in range(g.n)]
    for u, v in g.edges:
        clauses.extend([-var(u, c), -var(v, c)] for c in colours)
    for con in constraints:
        if isinstance(con, FixColour):
            clauses.append([var(con.vertex, con.colour)])
        elif isinstance(con, ForbidMonoTriple):
            a, b, d = con.vertices
            clauses.extend([-var(a, c), -var(b, c), -var(d, c)] for c in colours)
        elif isinstance(con, RequireNonMono):
            a, b = con.pair
            clauses.extend([-var(a, c), -var(b, c)] for c in colours)
    return CnfFormula(g.n * k, clauses, k, g.n)


def emit_dimacs(f: CnfFormula) -> str:
    lines = [f"c {c}" for c in f.comments]
    lines.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    lines.extend(" ".join(map(str, cl)) + " 0" for cl in f.clauses)
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad header: {line!r}")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if num_vars is None:
        raise ValueError("missing 'p cnf' header")
    if current:
        clauses.append(current)
    return CnfFormula(num_vars, clauses)


@dataclass
class SolverOutput:
    status: str  # SATISFIABLE, UNSATISFIABLE or UNKNOWN
    model: list[int] | None


def parse_solver_output(text: str) -> SolverOutput:
    """Read the competition format: an ``s`` status line and ``v`` model lines."""
    status = "UNKNOWN"
    lits: list[int] = []
    for line in text.splitlines():
        if line.startswith("s "):
            status = line[2:].strip()
        elif line.startswith("v "):
            lits.extend(int(t) for t in re.split(r"\s+", line[2:].strip()) if t)
    model = [lit for lit in lits if lit != 0] if status == "SATISFIABLE" else None
    return SolverOutput(status, model)


def decode_model(
    f: CnfFormula,
    model: Iterable[int],
    g: UnitDistanceGraph | None = None,
    constraints: Sequence[Constraint] = (),
) -> list[int]:
    """Lowest asserted colour per vertex, re-validated against the graph if given."""
    true_vars = {lit for lit in model if lit > 0}
    if not f.satisfied_by(true_vars):
        raise ModelError("model does not satisfy the formula")
    colouring = []
    for v in range(f.num_vertices):
        c = next((c for c in range(1, f.k + 1) if f.var(v, c) in true_vars), None)
        if c is None:
            raise ModelError(f"vertex {v} has no colour")
        colouring.append(c)
    if g is not None:
        try:
            validate_colouring(g, colouring, f.k, constraints)
        except ValueError as exc:
            raise ModelError(f"decoded colouring is invalid: {exc}") from exc
    return colouring
