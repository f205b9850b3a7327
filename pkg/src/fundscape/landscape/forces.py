"""Force laws for the impact-landscape simulation.

Three forces act on a mobile grant-topic node: an impact force that
attracts it toward (or repels it from) each impact-type anchor in
proportion to how far its RII sits from 1, a containment force that pulls
it back once it strays past d_max from the view center, and a pairwise
collision force that resolves overlaps with padding. The total is their
weighted sum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError


@dataclass(frozen=True)
class ForceParams:
    """Weights, stiffnesses, and cooling schedule for the simulation.

    Defaults keep the integrator stable (alpha * beta_contain *
    velocity_decay <= 0.8 at alpha=1) while holding equilibrium residuals
    well under the audit tolerances: the strongest typical impact pull
    (alpha_impact * |F|) cannot push a node past ~1e-4 * d_max of
    containment slack nor hold overlaps beyond ~0.25.
    """

    alpha: float = 1.0
    alpha_min: float = 0.001
    alpha_decay: float = 0.0228
    alpha_target: float = 0.0
    velocity_decay: float = 0.4
    alpha_impact: float = 1e-4
    beta_contain: float = 2.0
    gamma_collide: float = 2.0
    k_contain: float = 1.0
    k_collide: float = 1.0
    d_max: float = 250.0
    padding: float = 2.0
    tick_cap: int = 1000
    normalize_per_type: bool = False

    def __post_init__(self):
        if not 0.0 < self.alpha_decay < 1.0:
            raise ValidationError("alpha_decay must be in (0, 1)")
        if not 0.0 < self.velocity_decay < 1.0:
            raise ValidationError("velocity_decay must be in (0, 1)")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValidationError("alpha must be in [0, 1]")
        if min(self.alpha_impact, self.beta_contain, self.gamma_collide) < 0:
            raise ValidationError("force weights must be non-negative")
        if min(self.k_contain, self.k_collide, self.d_max) <= 0:
            raise ValidationError("stiffness constants and d_max must be positive")
        if self.padding < 0:
            raise ValidationError("padding must be non-negative")
        if self.tick_cap < 1:
            raise ValidationError("tick_cap must be >= 1")


def impact_force(position, anchors, rii_values,
                 normalize_per_type: bool = False) -> np.ndarray:
    """Sum of per-anchor pulls: (RII-1)*d toward the anchor when RII >= 1,
    (RII-1)/d when RII < 1 (a weak push-away).

    Anchors with undefined RII (None) and coincident anchors contribute
    nothing. ``normalize_per_type`` divides each term by the anchor
    distance, removing the unit mismatch between the two branches.
    """
    position = np.asarray(position, dtype=float)
    total = np.zeros(2)
    for name, anchor in anchors.items():
        rii = rii_values.get(name)
        if rii is None:
            continue
        offset = np.asarray(anchor, dtype=float) - position
        distance = float(np.hypot(offset[0], offset[1]))
        if distance == 0.0:
            continue
        unit = offset / distance
        if rii >= 1.0:
            magnitude = (rii - 1.0) * distance
        else:
            magnitude = (rii - 1.0) / distance
        if normalize_per_type:
            magnitude /= distance
        total += magnitude * unit
    return total


def containment_force(position, center, d_max: float,
                      k_contain: float = 1.0) -> np.ndarray:
    """-k * max(0, d - d_max) along the outward radial direction."""
    offset = np.asarray(position, dtype=float) - np.asarray(center, dtype=float)
    distance = float(np.hypot(offset[0], offset[1]))
    if distance <= d_max or distance == 0.0:
        return np.zeros(2)
    return -k_contain * (distance - d_max) * (offset / distance)


def collision_force(position_a, radius_a: float, position_b, radius_b: float,
                    padding: float = 0.0, k_collide: float = 1.0,
                    rng: np.random.Generator | None = None,
                    ) -> tuple[np.ndarray, np.ndarray]:
    """Equal-and-opposite separation push of magnitude
    k * max(0, r_a + r_b + p - d); coincident centers separate along a
    seeded random direction."""
    a = np.asarray(position_a, dtype=float)
    b = np.asarray(position_b, dtype=float)
    offset = a - b
    distance = float(np.hypot(offset[0], offset[1]))
    magnitude = k_collide * max(0.0, radius_a + radius_b + padding - distance)
    if magnitude == 0.0:
        return np.zeros(2), np.zeros(2)
    if distance == 0.0:
        angle = (rng or np.random.default_rng()).uniform(0.0, 2.0 * np.pi)
        unit = np.array([np.cos(angle), np.sin(angle)])
    else:
        unit = offset / distance
    return magnitude * unit, -magnitude * unit


def total_force(impact, contain, collide, params: ForceParams) -> np.ndarray:
    """Weighted sum of the three force components."""
    return (
        params.alpha_impact * np.asarray(impact, dtype=float)
        + params.beta_contain * np.asarray(contain, dtype=float)
        + params.gamma_collide * np.asarray(collide, dtype=float)
    )
