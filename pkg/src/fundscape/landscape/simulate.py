"""Anchor placement and the cooling force simulation."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..errors import LayoutError, ValidationError
from .forces import (
    ForceParams,
    collision_force,
    containment_force,
    impact_force,
    total_force,
)

NODE_KINDS = ("grant_topic", "impact_node", "entity_anchor")


@dataclass
class LayoutNode:
    id: str
    kind: str
    x: float
    y: float
    radius: float
    fixed: bool = False
    vx: float = 0.0
    vy: float = 0.0
    #: RII per impact anchor name; None = undefined (no force contribution)
    rii: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in NODE_KINDS:
            raise ValidationError(f"unknown node kind {self.kind!r}")
        if self.radius <= 0:
            raise ValidationError(f"{self.id}: radius must be positive")

    @property
    def position(self) -> np.ndarray:
        return np.array([self.x, self.y])


def entity_level_layout(entity_types, canvas_size=(1000.0, 1000.0),
                        seed: int = 0,
                        min_separation: float = 60.0) -> dict[str, tuple]:
    """Place the grant anchor at the canvas center and one anchor per
    impact entity type on a surrounding rim, evenly spaced with a seeded
    rotation. Errors out when the rim cannot hold the anchors
    ``min_separation`` apart."""
    types = sorted(set(entity_types))
    if not types:
        raise ValidationError("at least one impact entity type is required")
    width, height = float(canvas_size[0]), float(canvas_size[1])
    center = (width / 2.0, height / 2.0)
    rim = 0.85 * min(width, height) / 2.0
    if len(types) > 1:
        chord = 2.0 * rim * np.sin(np.pi / len(types))
        if chord < min_separation:
            raise ValidationError(
                f"canvas {canvas_size} too small for {len(types)} anchors "
                f"at separation >= {min_separation}"
            )
    rotation = np.random.default_rng(seed).uniform(0.0, 2.0 * np.pi)
    anchors = {"grant": center}
    for index, name in enumerate(types):
        angle = rotation + 2.0 * np.pi * index / len(types)
        anchors[name] = (
            center[0] + rim * float(np.cos(angle)),
            center[1] + rim * float(np.sin(angle)),
        )
    return anchors


def simulate_layout(nodes: list[LayoutNode], anchors: dict,
                    params: ForceParams | None = None, seed: int = 0,
                    center=None) -> tuple[list[LayoutNode], int]:
    """Run the cooling simulation on the mobile nodes.

    Per tick, each mobile node accumulates the weighted impact,
    containment, and pairwise collision forces; velocities update as
    v <- (v + alpha * F) * velocity_decay, positions integrate v, and the
    activity alpha decays toward alpha_target. The loop stops when alpha
    drops below alpha_min or the tick cap is hit. Fixed nodes never move.
    Deterministic for a fixed seed: node order is as given and the RNG is
    touched only for coincident-center tie-breaks.
    """
    params = params or ForceParams()
    if center is None:
        center = anchors.get("grant", (0.0, 0.0))
    center = np.asarray(center, dtype=float)
    impact_anchors = {k: v for k, v in anchors.items() if k != "grant"}
    rng = np.random.default_rng(seed)

    work = [replace(node) for node in nodes]
    mobile = [node for node in work if not node.fixed]
    alpha = params.alpha
    ticks = 0
    while alpha >= params.alpha_min and ticks < params.tick_cap:
        forces = {id(node): np.zeros(2) for node in mobile}
        for node in mobile:
            forces[id(node)] += total_force(
                impact_force(
                    node.position, impact_anchors, node.rii,
                    params.normalize_per_type,
                ),
                containment_force(
                    node.position, center, params.d_max, params.k_contain
                ),
                np.zeros(2),
                params,
            )
        for i, a in enumerate(mobile):
            for b in mobile[i + 1:]:
                push_a, push_b = collision_force(
                    a.position, a.radius, b.position, b.radius,
                    params.padding, params.k_collide, rng,
                )
                forces[id(a)] += params.gamma_collide * push_a
                forces[id(b)] += params.gamma_collide * push_b
        for node in mobile:
            fx, fy = forces[id(node)]
            node.vx = (node.vx + alpha * fx) * params.velocity_decay
            node.vy = (node.vy + alpha * fy) * params.velocity_decay
            node.x += node.vx
            node.y += node.vy
            if not (np.isfinite(node.x) and np.isfinite(node.y)):
                raise LayoutError(
                    f"node {node.id!r} position went non-finite at tick {ticks}"
                )
        alpha += (params.alpha_target - alpha) * params.alpha_decay
        ticks += 1
    return work, ticks


def containment_residual(nodes, center, d_max: float) -> float:
    """Worst distance beyond d_max over mobile nodes (0 when all inside)."""
    center = np.asarray(center, dtype=float)
    worst = 0.0
    for node in nodes:
        if node.fixed:
            continue
        distance = float(np.hypot(node.x - center[0], node.y - center[1]))
        worst = max(worst, distance - d_max)
    return worst


def overlap_residual(nodes, padding: float = 0.0) -> float:
    """Worst pairwise overlap beyond padding over mobile nodes."""
    mobile = [n for n in nodes if not n.fixed]
    worst = 0.0
    for i, a in enumerate(mobile):
        for b in mobile[i + 1:]:
            distance = float(np.hypot(a.x - b.x, a.y - b.y))
            worst = max(worst, a.radius + b.radius + padding - distance)
    return worst
