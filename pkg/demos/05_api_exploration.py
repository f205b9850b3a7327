"""
Walking the HTTP API
====================

Everything the frontend needs comes from a handful of JSON endpoints.
This script spins the app up in-process (no network) and walks through
them; `fundscape serve` exposes the same app over uvicorn.
"""

from tempfile import TemporaryDirectory

from fastapi.testclient import TestClient

from fundscape.predictor import save_model, train_impact_models
from fundscape.service import ServiceConfig, create_app
from fundscape.synth import generate_synthetic_corpus

corpus = generate_synthetic_corpus(
    21, grants=320, papers=320, patents=90, base_patent_rate=0.0,
    marker_token="quixotic", marker_fraction=0.5, marker_patent_rate=1.0,
    marker_topic="Physics",
)

with TemporaryDirectory() as registry:
    for record in train_impact_models(corpus, "direct_patent", seed=3,
                                      min_positives=60):
        save_model(record, registry)

    app = create_app(corpus=corpus,
                     config=ServiceConfig(registry_path=registry))
    with TestClient(app) as client:
        health = client.get("/api/health").json()
        print(f"health: snapshot {health['snapshot_id']}, "
              f"{health['grants']} grants")

        fields = client.get("/api/fields", params={"level": 1}).json()
        print("\nfield bubbles:")
        for bubble in fields["fields"][:5]:
            print(f"  {'/'.join(bubble['field_path']):20s} "
                  f"count={bubble['grant_count']:4d} r={bubble['radius']:.1f}")

        pis = client.get("/api/pis", params={"rank_by": "h_index",
                                             "limit": 3}).json()
        print("\ntop investigators:")
        for row in pis["pis"]:
            print(f"  {row['researcher_id']}  h={row['h_index']}")

        # The landscape document: positioned topic bubbles, rim anchors,
        # bundled edges, and ripple glyphs, all precomputed server-side.
        scene = client.get("/api/landscape",
                           params={"mode": "broad", "seed": 0}).json()
        print(f"\nlandscape: {len(scene['nodes'])} nodes, "
              f"{len(scene['edges'])} edges, {len(scene['glyphs'])} glyphs")

        words = client.get("/api/topics/grant:Computing/keywords",
                           params={"top_n": 5}).json()
        print("\nComputing grant keywords:")
        for row in words["keywords"]:
            print(f"  {row['token']:12s} {row['total_freq']}")

        report = client.get("/api/predictions",
                            params={"impact_type": "direct_patent"}).json()
        print(f"\npredictions: {len(report['scores'])} recent grants, "
              f"high counts {report['high_counts']}")

        # Validation errors map to HTTP codes, not stack traces.
        print("\nbad requests:")
        print("  unknown mode     ->",
              client.get("/api/landscape", params={"mode": "psychic"})
              .status_code)
        print("  unknown metric   ->",
              client.get("/api/pis", params={"rank_by": "fame"}).status_code)
        print("  unknown topic    ->",
              client.get("/api/topics/grant:Alchemy/keywords").status_code)
