"""Native gradient-boosted decision stumps for binary classification.

Depth-1 regression trees fit to the logistic loss with Newton leaf
weights and an L2 penalty, one stump per round over a seeded random
feature subsample. Deterministic for a fixed seed, serializes to a
canonical JSON blob so identical runs hash identically.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from ..errors import TrainingError, ValidationError

_BLOB_KIND = "boosted-stumps/1"


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(z, -30.0, 30.0)))


class BoostedStumps:
    """Boosted depth-1 trees: predict_proba = sigmoid(base + sum of leaf
    values along each stump's split)."""

    def __init__(self, n_rounds: int = 200, learning_rate: float = 0.3,
                 reg_lambda: float = 1.0, colsample: float = 0.5,
                 n_cuts: int = 8, seed: int = 0):
        if n_rounds < 1:
            raise ValidationError("n_rounds must be >= 1")
        if not 0.0 < learning_rate <= 1.0:
            raise ValidationError("learning_rate must be in (0, 1]")
        if not 0.0 < colsample <= 1.0:
            raise ValidationError("colsample must be in (0, 1]")
        self.n_rounds = n_rounds
        self.learning_rate = learning_rate
        self.reg_lambda = reg_lambda
        self.colsample = colsample
        self.n_cuts = n_cuts
        self.seed = seed
        self.base_score = 0.0
        #: (feature, threshold, left_value, right_value) per round
        self.stumps: list[tuple[int, float, float, float]] = []

    def fit(self, features: np.ndarray, labels: np.ndarray) -> "BoostedStumps":
        x = np.asarray(features, dtype=float)
        y = np.asarray(labels, dtype=float)
        if x.ndim != 2 or y.shape != (x.shape[0],):
            raise ValidationError("features must be (n, d), labels (n,)")
        classes = set(np.unique(y))
        if classes - {0.0, 1.0} or len(classes) < 2:
            raise TrainingError("training labels must contain both classes")

        rng = np.random.default_rng(self.seed)
        n, d = x.shape
        p0 = float(np.clip(y.mean(), 1e-6, 1.0 - 1e-6))
        self.base_score = float(np.log(p0 / (1.0 - p0)))
        margin = np.full(n, self.base_score)
        self.stumps = []
        subset_size = max(1, int(round(self.colsample * d)))

        # Candidate splits are fixed by X alone, so enumerate them once:
        # one row per (feature, threshold), with an indicator matrix whose
        # row k marks the samples falling in the left branch. Split search
        # per round then reduces to two matrix-vector products.
        row_feature: list[int] = []
        row_threshold: list[float] = []
        quantiles = np.linspace(0.1, 0.9, self.n_cuts)
        for feature in range(d):
            for threshold in np.unique(np.quantile(x[:, feature], quantiles)):
                row_feature.append(feature)
                row_threshold.append(float(threshold))
        feature_of_row = np.array(row_feature)
        threshold_of_row = np.array(row_threshold)
        left_indicator = (
            x[:, feature_of_row].T <= threshold_of_row[:, None]
        ).astype(np.float64)

        for _ in range(self.n_rounds):
            prob = _sigmoid(margin)
            grad = prob - y  # d(logloss)/d(margin)
            hess = prob * (1.0 - prob)
            g_total, h_total = float(grad.sum()), float(hess.sum())
            parent_gain = g_total * g_total / (h_total + self.reg_lambda)

            g_left = left_indicator @ grad
            h_left = left_indicator @ hess
            g_right = g_total - g_left
            h_right = h_total - h_left
            gain = (
                g_left * g_left / (h_left + self.reg_lambda)
                + g_right * g_right / (h_right + self.reg_lambda)
                - parent_gain
            )
            chosen = np.sort(rng.choice(d, size=subset_size, replace=False))
            usable = np.zeros(d, dtype=bool)
            usable[chosen] = True
            gain = np.where(
                usable[feature_of_row] & (h_left > 0.0) & (h_right > 0.0),
                gain, -np.inf,
            )
            best = int(np.argmax(gain))  # first max: deterministic ties
            if not np.isfinite(gain[best]) or gain[best] <= 0.0:
                continue  # no useful split this round; subsample again
            left = -self.learning_rate * g_left[best] / (
                h_left[best] + self.reg_lambda
            )
            right = -self.learning_rate * g_right[best] / (
                h_right[best] + self.reg_lambda
            )
            self.stumps.append(
                (int(feature_of_row[best]), float(threshold_of_row[best]),
                 float(left), float(right))
            )
            margin = margin + np.where(
                left_indicator[best].astype(bool), left, right
            )
        return self

    def decision_function(self, features: np.ndarray) -> np.ndarray:
        x = np.asarray(features, dtype=float)
        margin = np.full(x.shape[0], self.base_score)
        for feature, threshold, left, right in self.stumps:
            margin = margin + np.where(x[:, feature] <= threshold, left, right)
        return margin

    def predict_proba(self, features: np.ndarray) -> np.ndarray:
        return _sigmoid(self.decision_function(features))

    # -- serialization ---------------------------------------------------

    def to_blob(self) -> bytes:
        payload = {
            "kind": _BLOB_KIND,
            "params": {
                "n_rounds": self.n_rounds,
                "learning_rate": self.learning_rate,
                "reg_lambda": self.reg_lambda,
                "colsample": self.colsample,
                "n_cuts": self.n_cuts,
                "seed": self.seed,
            },
            "base_score": self.base_score,
            "stumps": [list(s) for s in self.stumps],
        }
        return json.dumps(payload, sort_keys=True).encode()

    @classmethod
    def from_blob(cls, blob: bytes) -> "BoostedStumps":
        payload = json.loads(blob.decode())
        if payload.get("kind") != _BLOB_KIND:
            raise ValidationError(
                f"unsupported model blob kind {payload.get('kind')!r}"
            )
        model = cls(**payload["params"])
        model.base_score = float(payload["base_score"])
        model.stumps = [
            (int(f), float(t), float(l), float(r))
            for f, t, l, r in payload["stumps"]
        ]
        return model


def blob_hash(blob: bytes) -> str:
    return hashlib.sha256(blob).hexdigest()
