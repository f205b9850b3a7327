"""
Force-directed impact landscapes
================================

Topic bubbles swim inside a grant disc: anchors on the rim pull bubbles
with above-average impact (RII > 1) outward and push below-average ones
back, a containment spring keeps everything inside the disc, and a
collision force stops overlap. Baseline bubbles (RII = 1 everywhere)
feel no net anchor force at all.
"""

import numpy as np

from fundscape.landscape import (
    ForceParams,
    LayoutNode,
    bubble_treemap_pack,
    build_landscape,
    collision_force,
    containment_force,
    impact_force,
    simulate_layout,
)
from fundscape.synth import generate_synthetic_corpus

# -- the three force laws, by hand ---------------------------------------------
anchors = {"patent": (100.0, 0.0)}
print("impact force, RII 2.0:", impact_force((0, 0), anchors, {"patent": 2.0}))
print("impact force, RII 1.0:", impact_force((0, 0), anchors, {"patent": 1.0}))
print("impact force, RII 0.5:", impact_force((0, 0), anchors, {"patent": 0.5}))
print("containment at d=120, d_max=100:",
      containment_force((120.0, 0.0), (0.0, 0.0), d_max=100.0))
print("collision, two r=10 circles at d=20, padding=2:",
      collision_force((0.0, 0.0), 10.0, (20.0, 0.0), 10.0, padding=2.0))

# -- settling a cluster ---------------------------------------------------------
# Three bubbles, identical except for their patent RII. The cooling
# schedule keeps displacements gentle (a few units per run), so the
# signature to look for is the drift toward the anchor: positive and
# visible for RII 2, zero for the baseline, and negligible for RII 0.5
# whose pushback falls off as 1/distance.
params = ForceParams()
starts = {"hot": (500.0, 525.0), "avg": (475.0, 490.0),
          "cold": (525.0, 490.0)}
nodes = [
    LayoutNode(name, "grant_topic", x, y, 8.0, rii={"patent": level})
    for (name, level), (x, y) in zip(
        [("hot", 2.0), ("avg", 1.0), ("cold", 0.5)], starts.values())
]
rim = {"grant": (500.0, 500.0), "patent": (900.0, 500.0)}
settled, ticks = simulate_layout(nodes, rim, params, seed=0)
print(f"\nsettled in {ticks} ticks")
for node in settled:
    before = np.hypot(starts[node.id][0] - 900, starts[node.id][1] - 500)
    after = np.hypot(node.x - 900, node.y - 500)
    print(f"  {node.id:4s} rii={node.rii['patent']:.1f}  "
          f"drift toward anchor {before - after:+8.4f}")

# -- bubble treemaps -------------------------------------------------------------
# Sibling circles pack without overlap inside their parent; radius scales
# with sqrt(count) so area tracks the underlying tally.
hierarchy = {
    "id": "root",
    "children": [
        {"id": "A", "children": [{"id": "A1", "count": 9},
                                 {"id": "A2", "count": 4}]},
        {"id": "B", "children": [{"id": "B1", "count": 16}]},
    ],
}
for circle in bubble_treemap_pack(hierarchy, center=(0.0, 0.0)):
    print(f"  {circle.id:4s} parent={circle.parent_id!s:5s} "
          f"r={circle.radius:6.2f} at ({circle.x:+7.2f}, {circle.y:+7.2f})")

# -- a full landscape document ----------------------------------------------------
corpus = generate_synthetic_corpus(7)
scene = build_landscape(corpus, mode="broad", seed=0)
print(f"\nlandscape: {len(scene['nodes'])} nodes, {len(scene['edges'])} "
      f"bundled edges, {len(scene['glyphs'])} glyphs, "
      f"anchors {sorted(scene['anchors'])}")
