"""Prediction pipeline: embeddings, lags, training sets, boosting, AUC,
registry, and grant scoring."""

import json
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fundscape.embedding import (
    EMBED_DIM,
    TOKEN_LIMIT,
    HashingEmbedder,
    SubprocessEmbeddingProvider,
    embed_abstract,
)
from fundscape.errors import TrainingError, ValidationError
from fundscape.predictor import (
    LAG_PRESETS,
    BoostedStumps,
    PredictionScore,
    TopicModelRecord,
    TrainingSet,
    blob_hash,
    build_training_set,
    compute_time_lag,
    evaluate_auc,
    impact_events,
    lag_table,
    load_models,
    predict_and_highlight,
    recent_grants,
    rethreshold,
    save_model,
    score_recent_grants,
    select_topics,
    train_impact_models,
    train_topic_model,
)

import helpers
import oracles


@pytest.fixture(scope="module")
def marker_models(marker_corpus):
    return train_impact_models(marker_corpus, "direct_patent", seed=3,
                               min_positives=60)


class TestHashingEmbedder:

    def test_deterministic_and_unit_norm(self):
        a = HashingEmbedder().embed("coupled photonic lattice estimation")
        b = HashingEmbedder().embed("coupled photonic lattice estimation")
        assert np.array_equal(a, b)
        assert a.shape == (EMBED_DIM,)
        assert np.linalg.norm(a) == pytest.approx(1.0, abs=1e-12)

    def test_token_order_invariant(self):
        enc = HashingEmbedder()
        assert np.array_equal(enc.embed("alpha beta gamma"),
                              enc.embed("gamma alpha beta"))

    def test_empty_text_warns_and_zeros(self):
        with pytest.warns(UserWarning, match="empty text"):
            vec = HashingEmbedder().embed("???")
        assert not vec.any()

    def test_token_cap(self):
        enc = HashingEmbedder()
        head = " ".join(f"tok{i}" for i in range(TOKEN_LIMIT))
        padded = head + " " + " ".join(f"extra{i}" for i in range(50))
        assert np.array_equal(enc.embed(head), enc.embed(padded))

    def test_disjoint_vocabularies_nearly_orthogonal(self):
        enc = HashingEmbedder()
        a = enc.embed("membrane kinetic catalyst polymer synthesis assembly")
        b = enc.embed("coastal regional urban spatial education equity")
        assert abs(float(a @ b)) < 0.4

    def test_seed_changes_projection(self):
        text = "variational inference for graphs"
        assert not np.array_equal(HashingEmbedder(seed=0).embed(text),
                                  HashingEmbedder(seed=1).embed(text))

    def test_dim_validated(self):
        with pytest.raises(ValidationError):
            HashingEmbedder(dim=0)

    @given(st.text(max_size=120))
    def test_output_always_finite_with_norm_zero_or_one(self, text):
        import warnings
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            vec = HashingEmbedder(dim=32).embed(text)
        assert np.all(np.isfinite(vec))
        norm = float(np.linalg.norm(vec))
        assert norm == pytest.approx(0.0, abs=1e-12) \
            or norm == pytest.approx(1.0, abs=1e-12)


_ECHO_ENCODER = (
    "import sys, json\n"
    "for line in sys.stdin:\n"
    "    req = json.loads(line)\n"
    "    vec = [float(len(req['text']))] + [0.0] * 3\n"
    "    print(json.dumps({'vector': vec}), flush=True)\n"
)


class TestExternalProviders:

    def test_subprocess_round_trip(self):
        provider = SubprocessEmbeddingProvider(
            [sys.executable, "-c", _ECHO_ENCODER], dim=4
        )
        try:
            first = provider.embed("abc")
            second = provider.embed("hello world")
            assert first.tolist() == [3.0, 0.0, 0.0, 0.0]
            assert second.tolist() == [11.0, 0.0, 0.0, 0.0]
        finally:
            provider.close()

    def test_wrong_dim_rejected(self):
        provider = SubprocessEmbeddingProvider(
            [sys.executable, "-c", _ECHO_ENCODER], dim=7
        )
        try:
            with pytest.raises(ValidationError, match="shape"):
                provider.embed("abc")
        finally:
            provider.close()

    def test_embed_abstract_validates_provider_output(self):
        class Bad:
            dim = 3
            def embed(self, text):
                return np.array([1.0, np.nan, 0.0])

        with pytest.raises(ValidationError, match="non-finite"):
            embed_abstract("anything", Bad())


class TestTimeLag:

    def test_presets_cover_core_types_with_positive_lags(self):
        assert LAG_PRESETS["case1"]["direct_patent"] == 6
        assert LAG_PRESETS["case1"]["broad_policy"] == 10
        assert LAG_PRESETS["case2"]["direct_paper"] == 3
        for table in LAG_PRESETS.values():
            assert all(lag >= 1 for lag in table.values())

    def test_override_short_circuits_measurement(self, tiny):
        assert compute_time_lag(tiny, "direct_patent", {"direct_patent": 9}) == 9

    def test_override_must_be_positive(self, tiny):
        with pytest.raises(ValidationError):
            compute_time_lag(tiny, "direct_patent", {"direct_patent": 0})

    @pytest.mark.parametrize("gaps, expected", [
        ([5, 7], 6),      # mean 6.0
        ([1, 2], 2),      # mean 1.5 rounds half-up
        ([0], 1),         # clamped to one year
        ([2, 3, 3], 3),   # mean 2.67
    ])
    def test_mean_lag_rounded_half_up(self, gaps, expected):
        grants, docs, links = [], [], []
        for i, gap in enumerate(gaps):
            grants.append(helpers.make_grant(f"LG{i}", year=2005))
            docs.append(helpers.make_doc(f"LD{i}", "patent", year=2005 + gap))
            links.append(helpers.link(f"LG{i}", f"LD{i}", "grant_patent"))
        corpus = helpers.make_corpus(grants, docs=docs, links=links)
        assert compute_time_lag(corpus, "direct_patent") == expected

    def test_labeled_corpus_measures_three_years(self, labeled_corpus):
        # every positive grant's patent lands exactly three years after start
        assert compute_time_lag(labeled_corpus, "direct_patent") == 3

    def test_no_realized_pairs_points_at_presets(self, labeled_corpus):
        with pytest.raises(TrainingError, match="LAG_PRESETS"):
            compute_time_lag(labeled_corpus, "broad_policy")

    def test_lag_table_omits_unmeasurable_types(self, labeled_corpus):
        assert lag_table(labeled_corpus) == {"direct_patent": 3}

    def test_lag_table_override_fills_gaps(self, labeled_corpus):
        table = lag_table(labeled_corpus, override=LAG_PRESETS["case1"])
        assert table["broad_policy"] == 10
        assert table["direct_patent"] == 6  # override wins over measurement


class TestImpactEvents:

    @pytest.mark.parametrize("grant_id, impact_type, expected", [
        ("G1", "direct_paper",
         [(("Computing",), 2008), (("Computing",), 2010)]),
        ("G2", "direct_hit_paper", [(("Computing",), 2010)]),
        ("G1", "direct_disruptive_paper", []),
        ("G1", "direct_patent", [(("Physics",), 2012)]),
        ("G2", "direct_clinical", [(("Neoplasms",), 2013)]),
        ("G1", "broad_patent",
         [(("Physics",), 2012), (("Physics",), 2014), (("Physics",), 2014)]),
        ("G1", "broad_policy", [(("Health Policy",), 2015)]),
        ("G1", "broad_newsfeed",
         [(("unclassified",), 2016), (("unclassified",), 2018)]),
    ])
    def test_events_by_type(self, tiny, grant_id, impact_type, expected):
        assert sorted(impact_events(tiny, grant_id, impact_type)) == expected

    def test_topic_level_two_keeps_subfield(self, tiny):
        events = impact_events(tiny, "G1", "direct_paper", topic_level=2)
        assert sorted(events) == [
            (("Computing", "Machine Learning"), 2008),
            (("Computing", "Machine Learning"), 2010),
        ]

    def test_unknown_impact_type(self, tiny):
        with pytest.raises(ValidationError, match="unknown impact type"):
            impact_events(tiny, "G1", "sideways")


@pytest.fixture(scope="module")
def coverage_corpus():
    # ten impacted grants split 6/3/1 across three disjoint topics
    grants, docs, links = [], [], []
    for i in range(10):
        top = "TopA" if i < 6 else "TopB" if i < 9 else "TopC"
        grants.append(helpers.make_grant(f"CG{i}", year=2004))
        docs.append(helpers.make_doc(f"CD{i}", "patent", (top, "Sub"),
                                     year=2010))
        links.append(helpers.link(f"CG{i}", f"CD{i}", "grant_patent"))
    return helpers.make_corpus(grants, docs=docs, links=links)


class TestTopicSelection:

    def test_labeled_corpus_selects_physics(self, labeled_corpus):
        assert select_topics(labeled_corpus, "direct_patent",
                             min_positives=100) == [("Physics",)]

    def test_min_positives_can_empty_the_selection(self, labeled_corpus):
        assert select_topics(labeled_corpus, "direct_patent",
                             min_positives=150) == []

    def test_greedy_prefix_stops_at_coverage(self, coverage_corpus):
        # 0.8 coverage of 10 impacted grants is met by TopA+TopB (9)
        assert select_topics(coverage_corpus, "direct_patent",
                             min_positives=1) == [("TopA",), ("TopB",)]

    def test_full_coverage_keeps_the_tail(self, coverage_corpus):
        assert select_topics(coverage_corpus, "direct_patent", coverage=1.0,
                             min_positives=1) == [("TopA",), ("TopB",),
                                                  ("TopC",)]

    def test_min_positives_filters_after_coverage(self, coverage_corpus):
        assert select_topics(coverage_corpus, "direct_patent",
                             min_positives=4) == [("TopA",)]

    def test_no_impacts_yields_empty(self, labeled_corpus):
        assert select_topics(labeled_corpus, "broad_policy") == []

    @pytest.mark.parametrize("coverage", [0.0, 1.5])
    def test_coverage_bounds(self, labeled_corpus, coverage):
        with pytest.raises(ValidationError):
            select_topics(labeled_corpus, "direct_patent", coverage=coverage)


class TestTrainingSetConstruction:

    def test_balanced_sizes_and_split(self, labeled_corpus):
        ts = build_training_set(labeled_corpus, ("Physics",), "direct_patent",
                                lag_years=6, seed=0)
        assert ts.labels.size == 240
        assert int(ts.labels.sum()) == 120
        assert ts.train_idx.size == 192
        assert ts.test_idx.size == 48
        assert ts.meta["n_positive"] == 120
        assert ts.meta["eligible_years"] == [2000, 2015]
        assert ts.features.shape == (240, EMBED_DIM)
        # split partitions the set, stratified within each class
        merged = np.sort(np.concatenate([ts.train_idx, ts.test_idx]))
        assert np.array_equal(merged, np.arange(240))
        assert int(ts.labels[ts.train_idx].sum()) == 96
        assert int(ts.labels[ts.test_idx].sum()) == 24

    def test_late_grants_are_excluded(self):
        # positives past the lag cutoff must never enter the set
        grants, docs, links = [], [], []
        for i in range(16):
            year = 2010 if i < 8 else 2018
            gid = f"HG{i:02d}"
            grants.append(helpers.make_grant(
                gid, year=year, abstract="photonic readout arrays"))
            docs.append(helpers.make_doc(f"HD{i:02d}", "patent",
                                         ("Physics", "Optics"), year=2019))
            links.append(helpers.link(gid, f"HD{i:02d}", "grant_patent"))
        for i in range(12):
            grants.append(helpers.make_grant(
                f"HN{i:02d}", year=2010, abstract="archival curation survey"))
        corpus = helpers.make_corpus(grants, docs=docs, links=links)
        ts = build_training_set(corpus, ("Physics",), "direct_patent",
                                lag_years=6, seed=2)
        years = [corpus.grants[g].start_year for g in ts.grant_ids]
        assert max(years) <= 2015
        assert int(ts.labels.sum()) == 8

    def test_same_seed_reproduces_the_set(self, labeled_corpus):
        a = build_training_set(labeled_corpus, ("Physics",), "direct_patent",
                               6, seed=5)
        b = build_training_set(labeled_corpus, ("Physics",), "direct_patent",
                               6, seed=5)
        assert a.grant_ids == b.grant_ids
        assert np.array_equal(a.train_idx, b.train_idx)

    def test_seed_changes_the_negative_sample(self, labeled_corpus):
        a = build_training_set(labeled_corpus, ("Physics",), "direct_patent",
                               6, seed=5)
        b = build_training_set(labeled_corpus, ("Physics",), "direct_patent",
                               6, seed=6)
        assert a.grant_ids != b.grant_ids

    def test_negative_shortfall_subsamples_positives(self):
        corpus = helpers.make_labeled_corpus(n_pos=50, n_neg=20)
        ts = build_training_set(corpus, ("Physics",), "direct_patent", 6,
                                seed=1)
        assert ts.labels.size == 40
        assert int(ts.labels.sum()) == 20

    def test_lag_swallowing_the_window(self, labeled_corpus):
        with pytest.raises(TrainingError, match="no eligible years"):
            build_training_set(labeled_corpus, ("Physics",), "direct_patent",
                               lag_years=25, seed=0)

    def test_lag_must_be_positive(self, labeled_corpus):
        with pytest.raises(ValidationError):
            build_training_set(labeled_corpus, ("Physics",), "direct_patent",
                               lag_years=0, seed=0)

    def test_no_positives_for_topic(self, labeled_corpus):
        with pytest.raises(TrainingError, match="no positive"):
            build_training_set(labeled_corpus, ("Astrology",), "direct_patent",
                               6, seed=0)

    def test_no_negatives_available(self):
        corpus = helpers.make_labeled_corpus(n_pos=10, n_neg=0)
        with pytest.raises(TrainingError, match="no negative"):
            build_training_set(corpus, ("Physics",), "direct_patent", 6,
                               seed=0)

    def test_training_set_invariants(self):
        features = np.zeros((4, 2))
        ok = dict(topic=("T",), impact_type="direct_patent",
                  grant_ids=("a", "b", "c", "d"), features=features,
                  labels=np.array([1, 1, 0, 0]),
                  train_idx=np.array([0, 2]), test_idx=np.array([1, 3]),
                  lag_years=3, seed=0)
        TrainingSet(**ok)
        with pytest.raises(ValidationError, match="binary"):
            TrainingSet(**{**ok, "labels": np.array([1, 2, 0, 0])})
        with pytest.raises(ValidationError, match="overlap"):
            TrainingSet(**{**ok, "test_idx": np.array([0, 3])})
        with pytest.raises(ValidationError, match="balance"):
            TrainingSet(**{**ok, "labels": np.array([1, 1, 1, 0])})


def _blobs(seed, n=120, dim=6):
    """Two Gaussian clouds separated along the first axis."""
    rng = np.random.default_rng(seed)
    half = n // 2
    x = rng.normal(size=(n, dim))
    x[:half, 0] += 2.5
    x[half:, 0] -= 2.5
    y = np.array([1.0] * half + [0.0] * (n - half))
    return x, y


class TestBoostedStumps:

    def test_separates_gaussian_blobs(self):
        x, y = _blobs(0)
        model = BoostedStumps(n_rounds=40, seed=0).fit(x, y)
        accuracy = float(np.mean((model.predict_proba(x) > 0.5) == y))
        assert accuracy >= 0.95

    def test_probabilities_bounded(self):
        x, y = _blobs(1)
        probs = BoostedStumps(n_rounds=20, seed=1).fit(x, y).predict_proba(x)
        assert np.all((probs > 0.0) & (probs < 1.0))

    def test_fit_is_deterministic(self):
        x, y = _blobs(2)
        a = BoostedStumps(n_rounds=25, seed=7).fit(x, y).to_blob()
        b = BoostedStumps(n_rounds=25, seed=7).fit(x, y).to_blob()
        assert a == b
        assert blob_hash(a) == blob_hash(b)

    def test_seed_changes_the_model(self):
        x, y = _blobs(2)
        a = BoostedStumps(n_rounds=25, seed=7).fit(x, y).to_blob()
        b = BoostedStumps(n_rounds=25, seed=8).fit(x, y).to_blob()
        assert a != b

    def test_blob_round_trip(self):
        x, y = _blobs(3)
        model = BoostedStumps(n_rounds=15, seed=3).fit(x, y)
        clone = BoostedStumps.from_blob(model.to_blob())
        probe = np.random.default_rng(0).normal(size=(40, x.shape[1]))
        assert np.array_equal(model.decision_function(probe),
                              clone.decision_function(probe))
        assert clone.stumps == model.stumps

    def test_single_class_labels_rejected(self):
        x = np.random.default_rng(0).normal(size=(10, 3))
        with pytest.raises(TrainingError, match="both classes"):
            BoostedStumps(n_rounds=5).fit(x, np.ones(10))

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValidationError, match=r"\(n, d\)"):
            BoostedStumps().fit(np.zeros(5), np.zeros(5))

    @pytest.mark.parametrize("bad", [
        {"n_rounds": 0},
        {"learning_rate": 0.0},
        {"learning_rate": 1.5},
        {"colsample": 0.0},
    ])
    def test_hyperparameter_bounds(self, bad):
        with pytest.raises(ValidationError):
            BoostedStumps(**bad)

    def test_foreign_blob_rejected(self):
        blob = json.dumps({"kind": "pickled-forest/2"}).encode()
        with pytest.raises(ValidationError, match="blob kind"):
            BoostedStumps.from_blob(blob)


class TestAUC:

    def test_perfect_separation(self):
        scored = [(0.9, 1), (0.8, 1), (0.2, 0), (0.1, 0)]
        assert evaluate_auc(scored) == 1.0

    def test_all_tied_scores(self):
        scored = [(0.5, 1), (0.5, 1), (0.5, 0), (0.5, 0)]
        assert evaluate_auc(scored) == 0.5

    def test_three_quarters(self):
        # one of four pos/neg pairs is misordered
        scored = [(0.9, 1), (0.4, 1), (0.5, 0), (0.1, 0)]
        assert evaluate_auc(scored) == 0.75

    def test_half_credit_for_a_tie(self):
        assert evaluate_auc([(0.5, 1), (0.5, 0)]) == 0.5

    def test_single_class_rejected(self):
        with pytest.raises(ValidationError, match="both classes"):
            evaluate_auc([(0.5, 1), (0.6, 1)])

    def test_nonbinary_labels_rejected(self):
        with pytest.raises(ValidationError, match="0 or 1"):
            evaluate_auc([(0.5, 2), (0.6, 0)])

    def test_matches_trapezoid_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            n = int(rng.integers(4, 80))
            # quantized scores force ties across and within classes
            scores = np.round(rng.random(n), 2)
            labels = rng.integers(0, 2, size=n)
            if labels.sum() in (0, n):
                labels[0], labels[-1] = 0, 1
            scored = list(zip(scores.tolist(), labels.tolist()))
            assert evaluate_auc(scored) == pytest.approx(
                oracles.trapezoid_auc(scored), abs=1e-9)

    def test_affine_rescaling_is_invisible(self):
        rng = np.random.default_rng(4)
        scores = rng.random(60)
        labels = rng.integers(0, 2, size=60)
        labels[:2] = [0, 1]
        base = evaluate_auc(zip(scores, labels))
        moved = evaluate_auc(zip(3.0 * scores + 2.0, labels))
        assert moved == pytest.approx(base, abs=1e-12)

    def test_negated_scores_complement(self):
        rng = np.random.default_rng(5)
        scores = np.round(rng.random(60), 1)  # plenty of ties
        labels = rng.integers(0, 2, size=60)
        labels[:2] = [0, 1]
        forward = evaluate_auc(zip(scores, labels))
        backward = evaluate_auc(zip(-scores, labels))
        assert forward + backward == pytest.approx(1.0, abs=1e-12)


class TestTopicModelTraining:

    def test_labeled_corpus_is_learnable(self, labeled_corpus):
        ts = build_training_set(labeled_corpus, ("Physics",), "direct_patent",
                                6, seed=0)
        record = train_topic_model(ts, seed=0)
        assert record.test_auc >= 0.9
        assert record.topic == ("Physics",)
        assert record.metadata["train_size"] == 192
        assert record.metadata["test_size"] == 48
        assert record.metadata["lag_years"] == 6
        assert record.blob_hash == blob_hash(record.blob)

    def test_training_is_reproducible(self, labeled_corpus):
        ts = build_training_set(labeled_corpus, ("Physics",), "direct_patent",
                                6, seed=0)
        a = train_topic_model(ts, seed=0)
        b = train_topic_model(ts, seed=0)
        assert a.blob_hash == b.blob_hash
        assert a.test_auc == b.test_auc

    def _toy_set(self, train_idx, test_idx):
        return TrainingSet(
            topic=("T",), impact_type="direct_patent",
            grant_ids=("a", "b", "c", "d"),
            features=np.arange(8.0).reshape(4, 2),
            labels=np.array([1, 1, 0, 0]),
            train_idx=np.asarray(train_idx), test_idx=np.asarray(test_idx),
            lag_years=3, seed=0,
        )

    def test_single_class_train_split_rejected(self):
        ts = self._toy_set([0, 1], [2, 3])
        with pytest.raises(TrainingError, match="train split"):
            train_topic_model(ts)

    def test_single_class_test_split_rejected(self):
        ts = self._toy_set([0, 2, 3], [1])
        with pytest.raises(TrainingError, match="test split"):
            train_topic_model(ts)

    def test_empty_split_rejected(self):
        ts = self._toy_set([0, 1, 2, 3], [])
        with pytest.raises(TrainingError, match="empty"):
            train_topic_model(ts)

    def test_auc_bounds_enforced_on_records(self):
        with pytest.raises(ValidationError, match="test_auc"):
            TopicModelRecord(topic=("T",), impact_type="direct_patent",
                             blob=b"x", blob_hash="h", test_auc=1.2)

    def test_pipeline_trains_one_model_per_selected_topic(self, marker_corpus,
                                                          marker_models):
        assert [m.topic for m in marker_models] == [("Physics",)]
        record = marker_models[0]
        assert record.impact_type == "direct_patent"
        assert record.test_auc >= 0.9
        assert record.metadata["lag_years"] == 7  # measured, not preset
        assert record.metadata["n_positive"] == 105

    def test_pipeline_with_lag_override(self, labeled_corpus):
        models = train_impact_models(labeled_corpus, "direct_patent", seed=0,
                                     min_positives=100,
                                     lag_override={"direct_patent": 6})
        assert len(models) == 1
        assert models[0].metadata["lag_years"] == 6
        assert models[0].metadata["eligible_years"] == [2000, 2015]

    def test_pipeline_with_no_qualifying_topics(self, labeled_corpus):
        assert train_impact_models(labeled_corpus, "direct_patent",
                                   min_positives=10_000,
                                   lag_override={"direct_patent": 6}) == []


class TestRegistry:

    def test_save_and_load_round_trip(self, labeled_corpus, tmp_path):
        ts = build_training_set(labeled_corpus, ("Physics",), "direct_patent",
                                6, seed=0)
        record = train_topic_model(ts, seed=0)
        meta_path = save_model(record, tmp_path)
        assert meta_path.name == "direct_patent__Physics.json"
        assert (tmp_path / "direct_patent__Physics.blob").exists()
        loaded, = load_models(tmp_path)
        assert loaded.topic == record.topic
        assert loaded.blob == record.blob
        assert loaded.blob_hash == record.blob_hash
        assert loaded.test_auc == record.test_auc
        assert loaded.metadata == record.metadata

    def test_slug_handles_spaces_and_depth(self, tmp_path):
        record = TopicModelRecord(
            topic=("Social Sciences", "Economics"),
            impact_type="broad_policy",
            blob=BoostedStumps(n_rounds=1).to_blob(),
            blob_hash=blob_hash(BoostedStumps(n_rounds=1).to_blob()),
            test_auc=0.5,
        )
        meta_path = save_model(record, tmp_path)
        assert meta_path.name == "broad_policy__Social_Sciences--Economics.json"

    def test_impact_type_filter(self, tmp_path):
        blob = BoostedStumps(n_rounds=1).to_blob()
        for impact_type in ("direct_patent", "broad_policy"):
            save_model(TopicModelRecord(topic=("T",), impact_type=impact_type,
                                        blob=blob, blob_hash=blob_hash(blob),
                                        test_auc=0.5), tmp_path)
        assert len(load_models(tmp_path)) == 2
        only = load_models(tmp_path, impact_type="broad_policy")
        assert [m.impact_type for m in only] == ["broad_policy"]

    def test_corrupt_blob_detected(self, tmp_path):
        blob = BoostedStumps(n_rounds=1).to_blob()
        save_model(TopicModelRecord(topic=("T",), impact_type="direct_patent",
                                    blob=blob, blob_hash=blob_hash(blob),
                                    test_auc=0.5), tmp_path)
        blob_file = tmp_path / "direct_patent__T.blob"
        blob_file.write_bytes(blob_file.read_bytes() + b" ")
        with pytest.raises(ValidationError, match="hash mismatch"):
            load_models(tmp_path)

    def test_resave_overwrites_in_place(self, tmp_path):
        blob = BoostedStumps(n_rounds=1).to_blob()
        record = TopicModelRecord(topic=("T",), impact_type="direct_patent",
                                  blob=blob, blob_hash=blob_hash(blob),
                                  test_auc=0.5)
        save_model(record, tmp_path)
        save_model(record, tmp_path)
        assert len(list(tmp_path.iterdir())) == 2

    def test_missing_directory(self, tmp_path):
        with pytest.raises(ValidationError, match="does not exist"):
            load_models(tmp_path / "nowhere")


class TestScoring:

    def test_recent_grants_fall_after_the_lag_cutoff(self, marker_corpus):
        recents = recent_grants(marker_corpus, 7)
        assert len(recents) == 107
        cutoff = marker_corpus.window.year_max - 7
        assert all(marker_corpus.grants[g].start_year > cutoff
                   for g in recents)

    def test_marked_recents_score_high(self, marker_corpus, marker_models):
        scores, grant_ids = score_recent_grants(marker_corpus, marker_models)
        assert len(scores) == len(grant_ids) == 107
        marked = {g for g in grant_ids
                  if "quixotic" in marker_corpus.grants[g].abstract}
        _, _, high = rethreshold(marker_corpus, scores, 0.5)
        assert high == marked
        assert len(marked) == 60

    def test_rethreshold_counts_weakly_decrease(self, marker_corpus,
                                                marker_models):
        scores, _ = score_recent_grants(marker_corpus, marker_models)
        counts = [rethreshold(marker_corpus, scores, t)[0][("Physics",)]
                  for t in (0.1, 0.5, 0.9)]
        assert counts == sorted(counts, reverse=True)
        assert rethreshold(marker_corpus, scores, 1.0)[0] == {("Physics",): 0}

    def test_end_to_end_highlight(self, marker_corpus, marker_models):
        result = predict_and_highlight(marker_corpus, marker_models,
                                       threshold=0.5)
        assert result.impact_type == "direct_patent"
        assert result.high_counts == {("Physics",): 60}
        assert len(result.recent_grant_ids) == 107
        assert result.ranked_pis  # investigators of the 60 high grants
        values = [v for _, v in result.ranked_pis]
        assert values == sorted(values, reverse=True)

    def test_no_recent_grants_yields_empty_result(self, labeled_corpus):
        models = train_impact_models(labeled_corpus, "direct_patent", seed=0,
                                     min_positives=100,
                                     lag_override={"direct_patent": 6})
        result = predict_and_highlight(labeled_corpus, models)
        assert result.scores == ()
        assert result.recent_grant_ids == ()
        assert result.ranked_pis == ()

    def test_missing_profile_metric_ranks_last(self, tiny):
        scores = [
            PredictionScore("G1", ("Computing",), "direct_patent", 0.9),
            PredictionScore("G4", ("Computing",), "direct_patent", 0.8),
        ]
        _, ranked, _ = rethreshold(tiny, scores, 0.5, rank_by="career_age")
        # R3 has no first publication year -> metric None -> sentinel -1
        assert ranked == (("R1", 16.0), ("R3", -1.0))

    def test_below_threshold_topics_still_reported(self, tiny):
        scores = [PredictionScore("G1", ("Computing",), "direct_patent", 0.2)]
        high_counts, ranked, high = rethreshold(tiny, scores, 0.5)
        assert high_counts == {("Computing",): 0}
        assert ranked == ()
        assert high == set()

    def test_rank_metric_validated(self, tiny):
        with pytest.raises(ValidationError, match="rank_by"):
            rethreshold(tiny, [], 0.5, rank_by="charisma")

    def test_score_bounds_enforced(self):
        with pytest.raises(ValidationError):
            PredictionScore("G1", ("T",), "direct_patent", 1.5)
        with pytest.raises(ValidationError):
            PredictionScore("G1", ("T",), "direct_patent", float("nan"))

    def test_models_required_and_homogeneous(self, marker_corpus,
                                             marker_models):
        with pytest.raises(ValidationError, match="at least one"):
            score_recent_grants(marker_corpus, [])
        blob = BoostedStumps(n_rounds=1).to_blob()
        other = TopicModelRecord(topic=("T",), impact_type="broad_policy",
                                 blob=blob, blob_hash=blob_hash(blob),
                                 test_auc=0.5)
        with pytest.raises(ValidationError, match="one impact type"):
            score_recent_grants(marker_corpus, [*marker_models, other])

    def test_unreadable_blob_skipped_with_warning(self, marker_corpus,
                                                  marker_models):
        bad = TopicModelRecord(topic=("Broken",), impact_type="direct_patent",
                               blob=json.dumps({"kind": "junk"}).encode(),
                               blob_hash="ignored", test_auc=0.5,
                               metadata={"lag_years": 7})
        with pytest.warns(UserWarning, match="skipping topic"):
            scores, _ = score_recent_grants(marker_corpus,
                                            [*marker_models, bad])
        assert {s.topic for s in scores} == {("Physics",)}
