"""Impact-landscape geometry: forces, simulation, packing, and glyphs."""

from .build import LANDSCAPE_MODES, build_landscape
from .forces import (
    ForceParams,
    collision_force,
    containment_force,
    impact_force,
    total_force,
)
from .glyphs import (
    BeltSpec,
    BundledEdge,
    GlyphParams,
    RippleGlyphSpec,
    bundle_edges,
    ripple_glyph,
)
from .packing import PackedCircle, bubble_treemap_pack, pack_siblings
from .simulate import (
    LayoutNode,
    containment_residual,
    entity_level_layout,
    overlap_residual,
    simulate_layout,
)

__all__ = [
    "LANDSCAPE_MODES",
    "BeltSpec",
    "BundledEdge",
    "ForceParams",
    "GlyphParams",
    "LayoutNode",
    "PackedCircle",
    "RippleGlyphSpec",
    "bubble_treemap_pack",
    "build_landscape",
    "bundle_edges",
    "collision_force",
    "containment_force",
    "containment_residual",
    "entity_level_layout",
    "impact_force",
    "overlap_residual",
    "pack_siblings",
    "ripple_glyph",
    "simulate_layout",
    "total_force",
]
