"""Exact unit-distance graph constructions and 4-colourability checks."""

from .constructions import CONSTRUCTION_IDS, build
from .field import FieldElement
from .geometry import Point
from .graph import UnitDistanceGraph, graph_from_points, stats
from .solver import search

__all__ = [
    "CONSTRUCTION_IDS",
    "FieldElement",
    "Point",
    "UnitDistanceGraph",
    "build",
    "graph_from_points",
    "search",
    "stats",
]
