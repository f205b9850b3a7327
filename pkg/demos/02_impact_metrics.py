"""
Impact metrics end to end
=========================

From one snapshot: per-grant impact vectors over nine outcome types,
investigator profiles, hit/disruptive paper flags, and the relative
impact index (RII) that later drives the landscape layout.
"""

from collections import Counter

from fundscape import metrics
from fundscape.synth import generate_synthetic_corpus

corpus = generate_synthetic_corpus(7)

# -- per-grant impact vectors -------------------------------------------------
# Counts for the three direct types, binary flags for hit/disruptive
# papers, and fractions of funded papers with each broad outcome.
impacts = metrics.all_grant_impacts(corpus)
gid = max(impacts, key=lambda g: impacts[g].get("direct_paper"))
print(f"busiest grant {gid}:")
for impact_type in metrics.IMPACT_TYPES:
    print(f"  {impact_type:25s} {impacts[gid].get(impact_type)}")

# -- paper-level flags --------------------------------------------------------
hits = metrics.hit_paper_flags(corpus)
disruptive = metrics.disruptive_paper_flags(corpus)
print(f"\nhit papers        {sum(hits.values()):3d} / {len(hits)}")
print(f"disruptive papers {sum(disruptive.values()):3d} / {len(disruptive)}")

# Disruption is undefined for papers nobody cites; those stay None
# rather than polluting the distribution with zeros.
indices = metrics.all_disruption_indices(corpus)
defined = [d for d in indices.values() if d is not None]
print(f"disruption defined for {len(defined)} papers, "
      f"mean {sum(defined) / len(defined):+.3f}")

# -- investigator profiles ----------------------------------------------------
rows = sorted(corpus.researchers)
profiles = {rid: metrics.pi_profile(corpus, rid) for rid in rows}
top = sorted(rows, key=lambda r: -profiles[r].h_index)[:5]
print("\ntop investigators by h-index:")
for rid in top:
    p = profiles[rid]
    print(f"  {rid}  h={p.h_index:2d}  papers={p.productivity:3d}  "
          f"avg log c10={p.avg_log_c10:.2f}")

# -- relative impact index ----------------------------------------------------
# RII compares a group's outcome fraction against the whole corpus, so
# the all-grants group is exactly 1.0 wherever the metric is defined.
everyone = list(corpus.grants)
fields = Counter(g.field_path[0] for g in corpus.grants.values())
print("\nRII by top-level field (direct_patent):")
for field in sorted(fields):
    group = [g for g in everyone
             if corpus.grants[g].field_path[0] == field]
    value = metrics.rii(corpus, group, "direct_patent")
    shown = f"{value:.2f}" if value is not None else "undefined"
    print(f"  {field:15s} n={fields[field]:3d}  rii={shown}")
print(f"  {'(all grants)':15s} n={len(everyone):3d}  "
      f"rii={metrics.rii(corpus, everyone, 'direct_patent'):.2f}")
