"""AUC via the rank (Mann-Whitney) formulation with tie correction."""

from __future__ import annotations

import numpy as np

from ..errors import ValidationError


def evaluate_auc(scored) -> float:
    """P(score_pos > score_neg) + 0.5 * P(tie) over all pos/neg pairs.

    ``scored`` is an iterable of (score, label) with label in {0, 1};
    both classes must be present. Computed from average ranks, so ties
    contribute exactly one half.
    """
    pairs = list(scored)
    scores = np.array([float(s) for s, _ in pairs])
    labels = np.array([int(l) for _, l in pairs])
    if set(np.unique(labels)) - {0, 1}:
        raise ValidationError("labels must be 0 or 1")
    n_pos = int(labels.sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValidationError("AUC needs both classes present")

    order = np.argsort(scores, kind="mergesort")
    ranks = np.empty(scores.size)
    sorted_scores = scores[order]
    i = 0
    while i < scores.size:
        j = i
        while j + 1 < scores.size and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0  # average 1-based rank
        i = j + 1

    rank_sum_pos = float(ranks[labels == 1].sum())
    u = rank_sum_pos - n_pos * (n_pos + 1) / 2.0
    return u / (n_pos * n_neg)
