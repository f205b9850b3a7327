"""End-to-end landscape assembly: corpus -> positioned nodes, bundled
edges, and ripple glyphs, serialized as one plain-JSON document."""

from __future__ import annotations

import math

import numpy as np

from .. import metrics
from ..atlas import aggregate_by_topic
from ..corpus import CorpusSnapshot, linked_documents
from ..errors import ValidationError
from .forces import ForceParams
from .glyphs import GlyphParams, bundle_edges, ripple_glyph
from .packing import bubble_treemap_pack
from .simulate import LayoutNode, entity_level_layout, simulate_layout

LANDSCAPE_MODES = ("direct", "broad", "prediction")

#: cluster entity -> impact type per linkage mode; direct outcomes are
#: papers/patents/trials, broader impact is paper-mediated citation
#: ("prediction" reuses the broad geometry)
_MODE_TYPES = {
    "direct": {
        "paper": "direct_paper",
        "patent": "direct_patent",
        "clinical_trial": "direct_clinical",
    },
    "broad": {
        "patent": "broad_patent",
        "clinical_trial": "broad_clinical",
        "policy": "broad_policy",
        "newsfeed": "broad_newsfeed",
    },
}
_MODE_TYPES["prediction"] = _MODE_TYPES["broad"]


def _as_path(field) -> tuple[str, ...]:
    if isinstance(field, str):
        return tuple(part for part in field.split("/") if part)
    return tuple(field)


def _score_by_grant(scores) -> dict[str, float]:
    best: dict[str, float] = {}
    if scores is None:
        return best
    if isinstance(scores, dict):
        items = scores.items()
    else:
        items = ((s.grant_id, s.score) for s in scores)
    for grant_id, score in items:
        best[grant_id] = max(best.get(grant_id, 0.0), float(score))
    return best


def build_landscape(corpus: CorpusSnapshot, mode: str = "broad",
                    field=None, seed: int = 0,
                    params: ForceParams | None = None,
                    glyph_params: GlyphParams | None = None,
                    hit_config: metrics.HitPaperConfig | None = None,
                    scores=None, threshold: float = 0.5,
                    canvas_size=(1000.0, 1000.0), doc_types=None) -> dict:
    """Produce the landscape document for one linkage mode.

    Impact clusters are packed around fixed rim anchors; grant-topic nodes
    start on an inner ring and relax under the three-force simulation.
    ``field`` narrows the view to one grant field's subtopics. Prediction
    mode needs per-grant ``scores`` and renders purple-ring glyphs.
    """
    if mode not in LANDSCAPE_MODES:
        raise ValidationError(f"mode must be one of {LANDSCAPE_MODES}")
    params = params or ForceParams()
    glyph_params = glyph_params or GlyphParams()

    if field is not None:
        prefix = _as_path(field)
        grants = [
            g for g in corpus.grants.values()
            if g.field_path[: len(prefix)] == prefix
        ]
        if not grants:
            raise ValidationError(f"no grants under field {'/'.join(prefix)!r}")
        level = len(prefix) + 1
    else:
        grants = list(corpus.grants.values())
        if not grants:
            raise ValidationError("corpus has no grants")
        level = 1
    grant_nodes = aggregate_by_topic(grants, level, corpus, hit_config)

    type_map = _MODE_TYPES[mode]
    present = sorted(
        t for t in type_map
        if (corpus.papers if t == "paper" else
            [d for d in corpus.docs.values() if d.doc_type == t])
    )
    if doc_types is not None:
        requested = set(doc_types)
        unknown = requested - set(present)
        if unknown:
            raise ValidationError(
                f"impact types {sorted(unknown)} not available in {mode} mode"
            )
        present = [t for t in present if t in requested]
    if not present:
        raise ValidationError("corpus has no impact documents for this mode")
    anchors = entity_level_layout(present, canvas_size, seed)
    center = anchors["grant"]

    # Fixed impact clusters: one packed hierarchy per entity type.
    impact_nodes: list[dict] = []
    leaf_of_doc: dict[str, dict[str, str]] = {}
    for doc_type in present:
        members = (
            list(corpus.papers.values()) if doc_type == "paper"
            else [d for d in corpus.docs.values() if d.doc_type == doc_type]
        )
        doc_groups = aggregate_by_topic(members, 1)
        hierarchy = {
            "id": doc_type,
            "children": [
                {"id": f"{doc_type}:{node.node_id}", "count": node.count}
                for node in doc_groups
            ],
        }
        packed = bubble_treemap_pack(
            hierarchy, anchors[doc_type], radius_scale=3.0, padding=1.0
        )
        leaf_of_doc[doc_type] = {}
        for node, circle in zip(doc_groups, packed[1:]):
            for member in node.member_ids:
                leaf_of_doc[doc_type][member] = circle.id
        for circle in packed:
            impact_nodes.append({
                "id": circle.id,
                "kind": "impact_node",
                "x": circle.x,
                "y": circle.y,
                "r": circle.radius,
                "leaf": circle.leaf,
                "parent": circle.parent_id,
                "count": circle.count,
                "doc_type": doc_type,
            })

    # Mobile grant-topic nodes on an inner ring, seeded rotation + jitter.
    rng = np.random.default_rng(seed)
    rotation = rng.uniform(0.0, 2.0 * np.pi)
    mobile: list[LayoutNode] = []
    ring = 0.45 * params.d_max
    for index, node in enumerate(grant_nodes):
        angle = rotation + 2.0 * np.pi * index / len(grant_nodes)
        radius = ring * (1.0 + 0.1 * rng.uniform(-1.0, 1.0))
        rii_by_anchor = {
            doc_type: node.rii.get(impact_type)
            for doc_type, impact_type in type_map.items()
            if doc_type in anchors
        }
        mobile.append(
            LayoutNode(
                id=f"grant:{node.node_id}",
                kind="grant_topic",
                x=center[0] + radius * float(np.cos(angle)),
                y=center[1] + radius * float(np.sin(angle)),
                radius=max(4.0, 3.0 * math.sqrt(node.count)),
                rii=rii_by_anchor,
            )
        )
    settled, ticks = simulate_layout(mobile, anchors, params, seed, center)
    positions = {n.id: (n.x, n.y) for n in settled}
    for entry in impact_nodes:
        positions[entry["id"]] = (entry["x"], entry["y"])

    # Bundled edges, one per (grant topic, impact leaf) with a link count.
    links = []
    for node in grant_nodes:
        node_id = f"grant:{node.node_id}"
        for doc_type, impact_type in sorted(type_map.items()):
            if doc_type not in leaf_of_doc:
                continue
            docs = linked_documents(
                corpus, node.member_ids, doc_type,
                "direct" if impact_type.startswith("direct") else "broad",
            )
            per_leaf: dict[str, int] = {}
            for doc in docs:
                member_id = getattr(doc, "doc_id", None) or doc.paper_id
                leaf = leaf_of_doc[doc_type].get(member_id)
                if leaf is not None:
                    per_leaf[leaf] = per_leaf.get(leaf, 0) + 1
            for leaf, count in sorted(per_leaf.items()):
                links.append((node_id, leaf, impact_type, count))
    anchor_by_type = {
        impact_type: anchors[doc_type]
        for doc_type, impact_type in type_map.items()
        if doc_type in anchors
    }
    edges = bundle_edges(links, positions, anchor_by_type)

    score_of = _score_by_grant(scores)
    glyphs = []
    for node in grant_nodes:
        if mode == "prediction":
            high = sum(
                1 for gid in node.member_ids if score_of.get(gid, 0.0) > threshold
            )
            glyph = ripple_glyph(
                f"grant:{node.node_id}", node.count, node.rii,
                "prediction", high, glyph_params,
            )
        else:
            glyph = ripple_glyph(
                f"grant:{node.node_id}", node.count, node.rii,
                "historical", params=glyph_params,
            )
        glyphs.append(glyph)

    nodes_json = [
        {
            "id": node.id,
            "kind": node.kind,
            "x": node.x,
            "y": node.y,
            "r": node.radius,
            "count": grant_nodes[i].count,
            "topic_path": list(grant_nodes[i].topic_path),
        }
        for i, node in enumerate(settled)
    ] + impact_nodes + [
        {
            "id": f"anchor:{name}",
            "kind": "entity_anchor",
            "x": position[0],
            "y": position[1],
            "r": 1.0,
            "entity": name,
        }
        for name, position in sorted(anchors.items())
    ]
    return {
        "snapshot_id": corpus.snapshot_id,
        "mode": mode,
        "field": "/".join(_as_path(field)) if field is not None else None,
        "seed": seed,
        "ticks": ticks,
        "canvas": [float(canvas_size[0]), float(canvas_size[1])],
        "center": [float(center[0]), float(center[1])],
        "d_max": params.d_max,
        "anchors": {
            name: [float(p[0]), float(p[1])] for name, p in sorted(anchors.items())
        },
        "nodes": nodes_json,
        "edges": [
            {
                "source": e.grant_topic_id,
                "target": e.impact_node_id,
                "impact_type": e.impact_type,
                "points": [list(pt) for pt in e.control_points],
                "width": e.width,
                "count": e.link_count,
            }
            for e in edges
        ],
        "glyphs": [
            {
                "node_id": g.node_id,
                "mode": g.mode,
                "center_radius": g.center_radius,
                "baseline_radii": list(g.baseline_radii),
                "prediction_ring_radius": g.prediction_ring_radius,
                "belts": [
                    {
                        "dimension": b.dimension,
                        "ring": b.ring,
                        "angle_start": b.angle_start,
                        "angle_end": b.angle_end,
                        "offset_sign": b.offset_sign,
                        "thickness": b.thickness,
                        "color_index": b.color_index,
                        "defined": b.defined,
                    }
                    for b in g.belts
                ],
            }
            for g in glyphs
        ],
    }
