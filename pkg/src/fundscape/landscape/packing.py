"""Hierarchical circle packing for impact clusters.

Replaces a full bubble-treemap contour with plain circles that satisfy the
same guarantees: siblings never overlap, every child lies inside its
parent's enclosure, and the cluster centroid lands on the requested anchor
point. Packing is greedy and deterministic: circles are placed largest
first, each at the feasible tangent position closest to the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import ValidationError

_EPS = 1e-9


@dataclass
class PackedCircle:
    id: str
    x: float
    y: float
    radius: float
    depth: int
    parent_id: str | None
    leaf: bool
    count: int = 0


def _tangent_candidates(r: float, placed: list[tuple[float, float, float]],
                        padding: float) -> list[tuple[float, float]]:
    """Positions where a circle of radius r touches two placed circles."""
    candidates = []
    for i in range(len(placed)):
        x1, y1, r1 = placed[i]
        for j in range(i + 1, len(placed)):
            x2, y2, r2 = placed[j]
            d1 = r1 + r + padding
            d2 = r2 + r + padding
            dx, dy = x2 - x1, y2 - y1
            d = math.hypot(dx, dy)
            if d == 0.0 or d > d1 + d2 or d < abs(d1 - d2):
                continue
            a = (d1 * d1 - d2 * d2 + d * d) / (2.0 * d)
            h_sq = d1 * d1 - a * a
            h = math.sqrt(max(h_sq, 0.0))
            mx, my = x1 + a * dx / d, y1 + a * dy / d
            candidates.append((mx + h * dy / d, my - h * dx / d))
            candidates.append((mx - h * dy / d, my + h * dx / d))
    return candidates


def _fits(x: float, y: float, r: float,
          placed: list[tuple[float, float, float]], padding: float) -> bool:
    return all(
        math.hypot(x - px, y - py) >= r + pr + padding - _EPS
        for px, py, pr in placed
    )


def pack_siblings(radii: list[float], padding: float = 0.0,
                  ) -> list[tuple[float, float]]:
    """Pack circles of the given radii around the origin without overlap.

    Placement order is by descending radius (original order breaks ties);
    each circle goes to the feasible tangency position nearest the origin,
    which keeps clusters compact and the result deterministic.
    """
    if any(r <= 0 for r in radii):
        raise ValidationError("circle radii must be positive")
    order = sorted(range(len(radii)), key=lambda i: (-radii[i], i))
    positions: list[tuple[float, float] | None] = [None] * len(radii)
    placed: list[tuple[float, float, float]] = []
    for index in order:
        r = radii[index]
        if not placed:
            spot = (0.0, 0.0)
        elif len(placed) == 1:
            px, py, pr = placed[0]
            spot = (px + pr + r + padding, py)
        else:
            best = None
            for x, y in _tangent_candidates(r, placed, padding):
                if not _fits(x, y, r, placed, padding):
                    continue
                key = (math.hypot(x, y), round(x, 9), round(y, 9))
                if best is None or key < best[0]:
                    best = (key, (x, y))
            if best is None:
                # No pairwise tangency fits (collinear degenerate case):
                # extend along +x past everything placed so far.
                reach = max(px + pr for px, py, pr in placed)
                spot = (reach + r + padding, 0.0)
            else:
                spot = best[1]
        positions[index] = spot
        placed.append((spot[0], spot[1], r))
    return [p for p in positions if p is not None]


def _enclose(circles: list[tuple[float, float, float]]) -> tuple[float, float, float]:
    """Area-weighted centroid plus the radius that covers every circle."""
    total = sum(r * r for _, _, r in circles)
    cx = sum(x * r * r for x, _, r in circles) / total
    cy = sum(y * r * r for _, y, r in circles) / total
    radius = max(math.hypot(x - cx, y - cy) + r for x, y, r in circles)
    return cx, cy, radius


def bubble_treemap_pack(hierarchy: dict, center=(0.0, 0.0),
                        radius_scale: float = 1.0,
                        padding: float = 0.0) -> list[PackedCircle]:
    """Pack a topic hierarchy into nested circles centered on ``center``.

    ``hierarchy`` is ``{"id": ..., "children": [...]}`` for internal nodes
    and ``{"id": ..., "count": n}`` for leaves; leaf radius is
    radius_scale * sqrt(count). Output lists every node with absolute
    coordinates, parents before children.
    """
    if not hierarchy:
        raise ValidationError("hierarchy must be non-empty")

    def build(node: dict, depth: int, parent: str | None) -> list[PackedCircle]:
        children = node.get("children")
        if not children:
            count = int(node.get("count", 0))
            if count < 1:
                raise ValidationError(f"{node.get('id')!r}: leaf count must be >= 1")
            radius = radius_scale * math.sqrt(count)
            return [
                PackedCircle(str(node["id"]), 0.0, 0.0, radius, depth,
                             parent, True, count)
            ]
        subtrees = [build(child, depth + 1, str(node["id"])) for child in children]
        # Each subtree's first entry is its own enclosure/leaf circle.
        spots = pack_siblings([s[0].radius for s in subtrees], padding)
        flat: list[PackedCircle] = []
        for subtree, (dx, dy) in zip(subtrees, spots):
            for circle in subtree:
                circle.x += dx
                circle.y += dy
            flat.extend(subtree)
        tops = [(s[0].x, s[0].y, s[0].radius) for s in subtrees]
        cx, cy, radius = _enclose(tops)
        for circle in flat:
            circle.x -= cx
            circle.y -= cy
        count = sum(s[0].count for s in subtrees)
        return [
            PackedCircle(str(node["id"]), 0.0, 0.0, radius, depth,
                         parent, False, count)
        ] + flat

    circles = build(hierarchy, 0, None)
    for circle in circles:
        circle.x += float(center[0])
        circle.y += float(center[1])
    return circles
