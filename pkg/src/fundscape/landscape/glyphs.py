"""Ripple glyph geometry and edge bundling.

A grant-topic node renders as concentric ripples: a solid center disk
(area ~ grant count), then two dashed baseline circles marking the RII = 1
level for direct and broader impact. Each impact dimension occupies an
angular sector; its belt sits outside the baseline when RII > 1 and inside
when RII < 1, with thickness growing with |RII - 1|. Prediction mode hides
the belts and adds a purple ring sized by the high-score grant count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import ValidationError
from ..metrics import BROAD_IMPACT_TYPES, DIRECT_IMPACT_TYPES

MODES = ("historical", "prediction")

#: color ramp bins, dark -> light
RAMP_SIZE = 5


@dataclass(frozen=True)
class GlyphParams:
    center_scale: float = 3.0
    center_min: float = 4.0
    baseline_gap: float = 10.0
    ring_gap: float = 14.0
    t_min: float = 1.0
    t_scale: float = 3.0
    deviation_clamp: float = 4.0
    prediction_scale: float = 4.0

    def __post_init__(self):
        if min(self.center_scale, self.baseline_gap, self.ring_gap,
               self.t_min, self.t_scale, self.prediction_scale) <= 0:
            raise ValidationError("glyph scales must be positive")


@dataclass(frozen=True)
class BeltSpec:
    dimension: str
    ring: str  # "direct" | "broad"
    angle_start: float  # degrees clockwise from 12 o'clock
    angle_end: float
    offset_sign: int  # +1 outside baseline, -1 inside, 0 on it
    thickness: float
    color_index: int
    defined: bool  # False = no RII for this dimension ("no data" marker)


@dataclass(frozen=True)
class RippleGlyphSpec:
    node_id: str
    center_radius: float
    baseline_radii: tuple[float, float]  # (direct, broad)
    belts: tuple[BeltSpec, ...]
    mode: str
    prediction_ring_radius: float | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}")
        if self.mode == "historical" and self.prediction_ring_radius is not None:
            raise ValidationError("historical glyphs carry no prediction ring")
        if self.mode == "prediction" and self.belts:
            raise ValidationError("prediction glyphs hide impact belts")


def _sectors(dimensions) -> list[tuple[float, float]]:
    step = 360.0 / len(dimensions)
    return [(i * step, (i + 1) * step) for i in range(len(dimensions))]


def _belt(dimension: str, ring: str, sector, rii,
          params: GlyphParams) -> BeltSpec:
    start, end = sector
    if rii is None:
        return BeltSpec(dimension, ring, start, end, 0, params.t_min, 0, False)
    deviation = min(abs(rii - 1.0), params.deviation_clamp)
    sign = 0 if rii == 1.0 else (1 if rii > 1.0 else -1)
    color = min(int(deviation * RAMP_SIZE / params.deviation_clamp), RAMP_SIZE - 1)
    return BeltSpec(
        dimension, ring, start, end, sign,
        params.t_min + params.t_scale * deviation, color, True,
    )


def ripple_glyph(node_id: str, grant_count: int, rii_row: dict,
                 mode: str = "historical",
                 high_score_count: int | None = None,
                 params: GlyphParams | None = None) -> RippleGlyphSpec:
    """Build the glyph for one grant-topic node from its RII row.

    ``rii_row`` maps impact type -> RII (None allowed). Historical mode
    draws one belt per dimension; prediction mode requires
    ``high_score_count`` and draws the purple ring instead (radius ~
    sqrt(count), exactly proportional so count ratios survive).
    """
    params = params or GlyphParams()
    if grant_count < 0:
        raise ValidationError("grant_count must be non-negative")
    if mode not in MODES:
        raise ValidationError(f"mode must be one of {MODES}")
    center = max(params.center_min, params.center_scale * math.sqrt(grant_count))
    direct_radius = center + params.baseline_gap
    broad_radius = direct_radius + params.ring_gap

    if mode == "prediction":
        if high_score_count is None:
            raise ValidationError("prediction mode requires high_score_count")
        if high_score_count < 0:
            raise ValidationError("high_score_count must be non-negative")
        return RippleGlyphSpec(
            node_id, center, (direct_radius, broad_radius), (), mode,
            params.prediction_scale * math.sqrt(high_score_count),
        )

    belts = [
        _belt(dim, "direct", sector, rii_row.get(dim), params)
        for dim, sector in zip(DIRECT_IMPACT_TYPES, _sectors(DIRECT_IMPACT_TYPES))
    ] + [
        _belt(dim, "broad", sector, rii_row.get(dim), params)
        for dim, sector in zip(BROAD_IMPACT_TYPES, _sectors(BROAD_IMPACT_TYPES))
    ]
    return RippleGlyphSpec(
        node_id, center, (direct_radius, broad_radius), tuple(belts), mode
    )


# -- edge bundling ---------------------------------------------------------------

@dataclass(frozen=True)
class BundledEdge:
    grant_topic_id: str
    impact_node_id: str
    impact_type: str
    control_points: tuple[tuple[float, float], ...]  # start, waypoint, end
    width: float
    link_count: int


def bundle_edges(links, node_positions: dict, anchors: dict,
                 width_scale: float = 1.0) -> list[BundledEdge]:
    """Route each grant-topic -> impact-node link as a quadratic curve
    through its impact type's anchor, so same-type edges share a waypoint.

    ``links`` yields (grant_topic_id, impact_node_id, impact_type, count);
    width grows with sqrt(count).
    """
    edges = []
    for source, target, impact_type, count in links:
        if count < 1:
            raise ValidationError(f"link {source}->{target}: count must be >= 1")
        if source not in node_positions:
            raise ValidationError(f"unknown layout node {source!r}")
        if target not in node_positions:
            raise ValidationError(f"unknown layout node {target!r}")
        if impact_type not in anchors:
            raise ValidationError(f"no anchor for impact type {impact_type!r}")
        start = tuple(map(float, node_positions[source]))
        end = tuple(map(float, node_positions[target]))
        waypoint = tuple(map(float, anchors[impact_type]))
        edges.append(
            BundledEdge(
                source, target, impact_type,
                (start, waypoint, end),
                width_scale * math.sqrt(count), count,
            )
        )
    return edges
