"""Accuracy and ROC AUC."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import DimensionMismatchError, SingleClassError


def accuracy(predicted, truth) -> float:
    predicted = np.asarray(predicted)
    truth = np.asarray(truth)
    if predicted.shape != truth.shape:
        raise DimensionMismatchError(f"{predicted.shape} predictions for {truth.shape} labels")
    if truth.size == 0:
        raise DimensionMismatchError("accuracy of an empty set")
    return int(np.sum(predicted == truth)) / truth.size


def auc_exact(scores, truth) -> Fraction:
    """Mann-Whitney statistic ``P(s+ > s-) + P(s+ == s-) / 2`` as a fraction.

    Scores are sorted once; each run of tied scores credits every
    positive-negative pair inside it with one half.
    """
    scores = np.asarray(scores, dtype=np.float64)
    truth = np.asarray(truth)
    if scores.shape != truth.shape:
        raise DimensionMismatchError(f"{scores.shape} scores for {truth.shape} labels")
    n_pos = int(np.sum(truth == 1))
    n_neg = truth.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise SingleClassError("AUC needs both classes among the labels")
    order = np.argsort(scores, kind="stable")
    s = scores[order]
    t = truth[order]
    twice_u = 0  # 2 * (pairs won + half of pairs tied)
    neg_below = 0
    i = 0
    while i < s.size:
        j = i
        while j < s.size and s[j] == s[i]:
            j += 1
        pos = int(np.sum(t[i:j] == 1))
        neg = (j - i) - pos
        twice_u += pos * (2 * neg_below + neg)
        neg_below += neg
        i = j
    return Fraction(twice_u, 2 * n_pos * n_neg)


def auc(scores, truth) -> float:
    return float(auc_exact(scores, truth))
