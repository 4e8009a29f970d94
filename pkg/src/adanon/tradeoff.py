"""Privacy-utility frontier construction and point-to-set selection.

Anonymization is per-category all-or-nothing, so the realizable states are
the nested threshold sets over normalized privacy scores. Each state gets a
2D coordinate: the share of total privacy mass anonymized (x) and the share
of total utility mass retained (y). User clicks are resolved to the nearest
realizable vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyFrontierError, TooLargeError, ZeroMassError
from .taxonomy import NormalizedScoreTable

DEFAULT_MAGNET_RADIUS = 0.03
ORACLE_MAX_CATEGORIES = 20


@dataclass(frozen=True)
class TargetPoint:
    """A clicked point on the unit square; coordinates clamp on construction."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if math.isnan(self.x) or math.isnan(self.y):
            raise ValueError("target point coordinates must be numbers")
        object.__setattr__(self, "x", min(1.0, max(0.0, float(self.x))))
        object.__setattr__(self, "y", min(1.0, max(0.0, float(self.y))))


@dataclass(frozen=True)
class FrontierVertex:
    privacy: float
    utility: float
    threshold: float
    selected: frozenset[str]


@dataclass(frozen=True)
class Frontier:
    vertices: tuple[FrontierVertex, ...]

    def validate(self) -> None:
        """Assert the structural invariants; raises AssertionError if broken."""
        vs = self.vertices
        assert vs, "frontier has no vertices"
        assert vs[0].selected == frozenset() and vs[0].privacy == 0.0 and vs[0].utility == 1.0
        assert vs[-1].privacy == 1.0
        for a, b in zip(vs, vs[1:]):
            assert a.privacy < b.privacy, "privacy must strictly increase"
            assert a.utility >= b.utility, "utility must not increase"
            assert a.selected <= b.selected, "selected sets must be nested"

    def to_json(self) -> list[dict]:
        """Vertex list for the HTTP curve endpoint; the empty-set threshold is null."""
        return [
            {
                "x": v.privacy,
                "y": v.utility,
                "threshold": None if math.isinf(v.threshold) else v.threshold,
                "categories": sorted(v.selected),
            }
            for v in self.vertices
        ]


@dataclass(frozen=True)
class SelectionPlan:
    """The concrete anonymization set chosen for a target point."""

    categories: frozenset[str]
    achieved: tuple[float, float]
    snapped_point: TargetPoint


def metrics(selected: frozenset[str] | set[str], table: NormalizedScoreTable) -> tuple[float, float]:
    """Coordinates of a category set: (privacy mass anonymized, utility mass kept).

    Sums run in the table's category order so repeated computations of the
    same set are bit-identical. A zero-mass utility axis means anonymization
    costs nothing: utility is 1.0 for every selection.
    """
    unknown = set(selected) - set(table.categories)
    if unknown:
        raise KeyError(f"unknown categories: {sorted(unknown)}")
    p_total = m_total = p_sel = m_sel = 0.0
    for c in table.categories:
        p_total += table.p_hat[c]
        m_total += table.m_hat[c]
        if c in selected:
            p_sel += table.p_hat[c]
            m_sel += table.m_hat[c]
    if p_total == 0.0:
        raise ZeroMassError("all normalized privacy scores are zero")
    utility = 1.0 if m_total == 0.0 else 1.0 - m_sel / m_total
    return p_sel / p_total, utility


def _threshold_sets(table: NormalizedScoreTable) -> list[tuple[float, frozenset[str]]]:
    """Nested sets {c : p_hat >= t} for t at +inf and each distinct p_hat, descending."""
    cuts = [math.inf] + sorted({table.p_hat[c] for c in table.categories}, reverse=True)
    return [
        (t, frozenset(c for c in table.categories if table.p_hat[c] >= t))
        for t in cuts
    ]


def build_frontier(table: NormalizedScoreTable) -> Frontier:
    """Enumerate threshold sets and keep one vertex per distinct privacy value.

    Only zero-privacy categories can leave the privacy coordinate unchanged,
    so keeping the first (smallest) set per coordinate drops exactly the
    selections that anonymize extra material without buying privacy.
    """
    vertices: list[FrontierVertex] = []
    for threshold, selected in _threshold_sets(table):
        privacy, utility = metrics(selected, table)
        if vertices and vertices[-1].privacy == privacy:
            continue
        vertices.append(FrontierVertex(privacy, utility, threshold, selected))
    frontier = Frontier(tuple(vertices))
    frontier.validate()
    return frontier


def exact_frontier_oracle(table: NormalizedScoreTable) -> Frontier:
    """Brute-force frontier for small tables; used only to cross-check results."""
    if len(table.categories) > ORACLE_MAX_CATEGORIES:
        raise TooLargeError(f"oracle limited to {ORACLE_MAX_CATEGORIES} categories")
    p_total = sum(table.p_hat[c] for c in table.categories)
    m_total = sum(table.m_hat[c] for c in table.categories)
    if p_total == 0.0:
        raise ZeroMassError("all normalized privacy scores are zero")

    cuts = [math.inf] + sorted({table.p_hat[c] for c in table.categories}, reverse=True)
    vertices: list[FrontierVertex] = []
    for cut in cuts:
        members = [c for c in table.categories if table.p_hat[c] >= cut]
        p_sel = 0.0
        m_sel = 0.0
        for c in table.categories:
            if c in members:
                p_sel += table.p_hat[c]
                m_sel += table.m_hat[c]
        privacy = p_sel / p_total
        utility = 1.0 if m_total == 0.0 else 1.0 - m_sel / m_total
        if any(v.privacy == privacy for v in vertices):
            continue
        vertices.append(FrontierVertex(privacy, utility, cut, frozenset(members)))
    return Frontier(tuple(vertices))


def tradeoff_curve_y(table: NormalizedScoreTable, p: float) -> float:
    """Curve height at privacy level p: min utility impact among categories above p.

    With no category above the level nothing needs anonymizing, so performance
    is fully preserved (1.0). Nondecreasing in p since the min runs over a
    shrinking set.
    """
    above = [table.m_hat[c] for c in table.categories if table.p_hat[c] > p]
    return min(above) if above else 1.0


def _plan(vertex: FrontierVertex) -> SelectionPlan:
    return SelectionPlan(
        categories=vertex.selected,
        achieved=(vertex.privacy, vertex.utility),
        snapped_point=TargetPoint(vertex.privacy, vertex.utility),
    )


def project(
    frontier: Frontier, point: TargetPoint, magnet_radius: float = DEFAULT_MAGNET_RADIUS
) -> SelectionPlan:
    """Snap a click to the nearest realizable vertex (Euclidean distance).

    Ties break toward the smaller selected set. ``magnet_radius`` exists for
    interface parity with the UI's magnet behavior; vertices are the only
    realizable states, so the nearest vertex wins at any distance.
    """
    if not frontier.vertices:
        raise EmptyFrontierError("cannot project onto an empty frontier")
    best = min(
        frontier.vertices,
        key=lambda v: (math.hypot(v.privacy - point.x, v.utility - point.y), len(v.selected)),
    )
    return _plan(best)


def privacy_only_select(frontier: Frontier, x: float) -> SelectionPlan:
    """Smallest vertex whose privacy meets the floor x; utility is maximal there."""
    if not frontier.vertices:
        raise EmptyFrontierError("cannot select from an empty frontier")
    for vertex in frontier.vertices:
        if vertex.privacy >= x:
            return _plan(vertex)
    return _plan(frontier.vertices[-1])


def automatic_select(frontier: Frontier) -> SelectionPlan:
    """Knee of the frontier: maximize privacy + utility, ties toward privacy."""
    if not frontier.vertices:
        raise EmptyFrontierError("cannot select from an empty frontier")
    best = max(frontier.vertices, key=lambda v: (v.privacy + v.utility, v.privacy))
    return _plan(best)
